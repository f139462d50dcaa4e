//! Semantic functors: arrow terms mapped to relations between letter
//! occurrences and to natural-number matrices. Both compose functorially
//! and serve as model-level oracles for the coherence theorems.

mod lattice;
mod schemas;

pub use lattice::lattice_reduce;
pub use schemas::{catalogue, check_equation, find_schema, run_schema, Schema, SchemaReport};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::term::{ArrowTerm, Gen};

/// A relation between the letter occurrences of two formulas, numbered
/// left to right, zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub source_size: usize,
    pub target_size: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn identity(n: usize) -> Relation {
        Relation {
            source_size: n,
            target_size: n,
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    /// Relational composition `other` after `self`.
    pub fn then(&self, other: &Relation) -> Result<Relation> {
        if self.target_size != other.source_size {
            return Err(Error::Internal("relation sizes do not compose".into()));
        }
        let mut pairs = BTreeSet::new();
        for &(i, j) in &self.pairs {
            for &(j2, k) in &other.pairs {
                if j == j2 {
                    pairs.insert((i, k));
                }
            }
        }
        Ok(Relation {
            source_size: self.source_size,
            target_size: other.target_size,
            pairs,
        })
    }

    /// Disjoint-union placement: `self` first, `other` shifted.
    pub fn beside(&self, other: &Relation) -> Relation {
        let mut pairs = self.pairs.clone();
        for &(i, j) in &other.pairs {
            pairs.insert((i + self.source_size, j + self.target_size));
        }
        Relation {
            source_size: self.source_size + other.source_size,
            target_size: self.target_size + other.target_size,
            pairs,
        }
    }

    /// A bijective function from source occurrences onto target occurrences.
    pub fn is_bijection(&self) -> bool {
        if self.source_size != self.target_size || self.pairs.len() != self.source_size {
            return false;
        }
        let srcs: BTreeSet<usize> = self.pairs.iter().map(|p| p.0).collect();
        let tgts: BTreeSet<usize> = self.pairs.iter().map(|p| p.1).collect();
        srcs.len() == self.source_size && tgts.len() == self.target_size
    }

    pub fn to_json(&self) -> String {
        let pairs: Vec<String> = self.pairs.iter().map(|(i, j)| format!("[{i},{j}]")).collect();
        format!(
            "{{\"sourceSize\":{},\"targetSize\":{},\"pairs\":[{}]}}",
            self.source_size,
            self.target_size,
            pairs.join(",")
        )
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} :", self.source_size, self.target_size)?;
        for (i, j) in &self.pairs {
            write!(f, " ({i},{j})")?;
        }
        Ok(())
    }
}

/// A natural-number matrix with `rows = n(target)` and `cols = n(source)`.
/// Zero dimensions are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigUint>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigUint::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &BigUint {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigUint) {
        self.data[r * self.cols + c] = v;
    }

    pub fn from_pairs(rows: usize, cols: usize, pairs: &BTreeSet<(usize, usize)>) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for &(src, tgt) in pairs {
            m.set(tgt, src, BigUint::one());
        }
        m
    }

    /// `other * self` as linear maps: `self` applied first.
    pub fn then(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if other.cols != self.rows {
            return Err(Error::Internal("matrix dimensions do not compose".into()));
        }
        let mut out = IntMatrix::zero(other.rows, self.cols);
        // sparse-friendly: skip zero entries of the left factor
        for r in 0..other.rows {
            for k in 0..other.cols {
                let a = other.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let b = self.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a * b);
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// A 0/1 matrix with exactly one 1 in every row and every column.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let one = BigUint::one();
        for r in 0..self.rows {
            let mut ones = 0;
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if *v != one {
                    return false;
                }
                ones += 1;
            }
            if ones != 1 {
                return false;
            }
        }
        for c in 0..self.cols {
            let mut ones = 0;
            for r in 0..self.rows {
                if !self.get(r, c).is_zero() {
                    ones += 1;
                }
            }
            if ones != 1 {
                return false;
            }
        }
        true
    }

    /// The 0/1 support as a relation (source = columns, target = rows).
    pub fn support(&self) -> Relation {
        let mut pairs = BTreeSet::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() {
                    pairs.insert((c, r));
                }
            }
        }
        Relation {
            source_size: self.cols,
            target_size: self.rows,
            pairs,
        }
    }

    pub fn max_entry(&self) -> BigUint {
        self.data.iter().cloned().max().unwrap_or_else(BigUint::zero)
    }

    pub fn to_json(&self) -> String {
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            rows.push(format!("[{}]", row.join(",")));
        }
        format!(
            "{{\"rows\":{},\"cols\":{},\"entries\":[{}]}}",
            self.rows,
            self.cols,
            rows.join(",")
        )
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

fn occ(f: &Formula) -> usize {
    f.occ_count()
}

/// The relation image of one generator. Every generator maps to a 0/1
/// matrix; multiplicities above one only arise through composition.
pub fn gen_rel(g: &Gen) -> Relation {
    let mut pairs = BTreeSet::new();
    match g {
        // associativity, unit and symmetric-unit isomorphisms do not move
        // occurrences; kappa and the unit w-arrows have no occurrences at all
        Gen::HbPlus(a, b, c) | Gen::HbMinus(a, b, c) | Gen::VbPlus(a, b, c)
        | Gen::VbMinus(a, b, c) => {
            let n = occ(a) + occ(b) + occ(c);
            return Relation::identity(n);
        }
        Gen::HdPlus(a) | Gen::HdMinus(a) | Gen::HsPlus(a) | Gen::HsMinus(a) | Gen::VdPlus(a)
        | Gen::VdMinus(a) | Gen::VsPlus(a) | Gen::VsMinus(a) => {
            return Relation::identity(occ(a));
        }
        Gen::HwBotPlus | Gen::HwBotMinus | Gen::VwTopPlus | Gen::VwTopMinus | Gen::Kappa => {
            return Relation::identity(0);
        }
        Gen::Hc(a, b) => {
            let (na, nb) = (occ(a), occ(b));
            for i in 0..na {
                pairs.insert((i, nb + i));
            }
            for j in 0..nb {
                pairs.insert((na + j, j));
            }
        }
        Gen::Vc(a, b) => {
            let (na, nb) = (occ(a), occ(b));
            for i in 0..na {
                pairs.insert((i, nb + i));
            }
            for j in 0..nb {
                pairs.insert((na + j, j));
            }
        }
        Gen::Ck(a, b, c, d) => {
            // source order A B C D, target order A C B D
            let (na, nb, nc) = (occ(a), occ(b), occ(c));
            let nd = occ(d);
            for i in 0..na {
                pairs.insert((i, i));
            }
            for i in 0..nb {
                pairs.insert((na + i, na + nc + i));
            }
            for i in 0..nc {
                pairs.insert((na + nb + i, na + i));
            }
            for i in 0..nd {
                pairs.insert((na + nb + nc + i, na + nb + nc + i));
            }
        }
        Gen::Hw(a) => {
            let n = occ(a);
            for i in 0..n {
                pairs.insert((i, i));
                pairs.insert((i, n + i));
            }
        }
        Gen::Vw(a) => {
            let n = occ(a);
            for i in 0..n {
                pairs.insert((i, i));
                pairs.insert((n + i, i));
            }
        }
        Gen::Hk1(a, _) => {
            for i in 0..occ(a) {
                pairs.insert((i, i));
            }
        }
        Gen::Hk2(a, b) => {
            let na = occ(a);
            for i in 0..occ(b) {
                pairs.insert((na + i, i));
            }
        }
        Gen::Vk1(a, _) => {
            for i in 0..occ(a) {
                pairs.insert((i, i));
            }
        }
        Gen::Vk2(a, b) => {
            let na = occ(a);
            for i in 0..occ(b) {
                pairs.insert((i, na + i));
            }
        }
    }
    Relation {
        source_size: occ(&g.source()),
        target_size: occ(&g.target()),
        pairs,
    }
}

/// The functor to relations: composition is relational composition and the
/// parallel operations are disjoint-union placement.
pub fn eval_rel(f: &ArrowTerm) -> Result<Relation> {
    f.type_of()?;
    eval_rel_unchecked(f)
}

fn eval_rel_unchecked(f: &ArrowTerm) -> Result<Relation> {
    Ok(match f {
        ArrowTerm::Id(a) => Relation::identity(occ(a)),
        ArrowTerm::Prim(g) => gen_rel(g),
        ArrowTerm::Comp(g, h) => eval_rel_unchecked(h)?.then(&eval_rel_unchecked(g)?)?,
        ArrowTerm::Conj(l, r) | ArrowTerm::Disj(l, r) => {
            eval_rel_unchecked(l)?.beside(&eval_rel_unchecked(r)?)
        }
    })
}

/// The functor to matrices: composition is matrix product, the parallel
/// operations are block-diagonal sums, and entries count paths.
pub fn eval_mat(f: &ArrowTerm) -> Result<IntMatrix> {
    f.type_of()?;
    eval_mat_unchecked(f)
}

/// Re-express a symmetric intermuting term through the lattice
/// definitional equations: every associativity, symmetry and intermutation
/// head becomes a composite of diagonals and projections (or, chosen at
/// random for intermutation, codiagonals and injections).
pub fn expand_to_lattice(
    f: &ArrowTerm,
    rng: &mut rand::rngs::StdRng,
) -> Result<ArrowTerm> {
    use crate::term::{comp, par_conj, par_disj};
    use rand::Rng;
    Ok(match f {
        ArrowTerm::Id(_) => f.clone(),
        ArrowTerm::Prim(g) => {
            let schema_name = match g.kind() {
                crate::term::GenKind::HbPlus => "def-hb-plus",
                crate::term::GenKind::HbMinus => "def-hb-minus",
                crate::term::GenKind::VbPlus => "def-vb-plus",
                crate::term::GenKind::VbMinus => "def-vb-minus",
                crate::term::GenKind::Hc => "def-hc",
                crate::term::GenKind::Vc => "def-vc",
                crate::term::GenKind::Ck => {
                    if rng.random_bool(0.5) {
                        "def-ck-meet"
                    } else {
                        "def-ck-join"
                    }
                }
                other => {
                    return Err(Error::PreconditionViolated(format!(
                        "{} has no lattice expansion",
                        Gen::token(other)
                    )))
                }
            };
            let args: Vec<Formula> = match g {
                Gen::HbPlus(a, b, c) | Gen::HbMinus(a, b, c) | Gen::VbPlus(a, b, c)
                | Gen::VbMinus(a, b, c) => vec![a.clone(), b.clone(), c.clone()],
                Gen::Hc(a, b) | Gen::Vc(a, b) => vec![a.clone(), b.clone()],
                Gen::Ck(a, b, c, d) => vec![a.clone(), b.clone(), c.clone(), d.clone()],
                _ => unreachable!(),
            };
            let (_, rhs) = schemas::find_schema(schema_name)?.build(&args)?;
            rhs
        }
        ArrowTerm::Comp(g, h) => comp(expand_to_lattice(g, rng)?, expand_to_lattice(h, rng)?),
        ArrowTerm::Conj(l, r) => par_conj(expand_to_lattice(l, rng)?, expand_to_lattice(r, rng)?),
        ArrowTerm::Disj(l, r) => par_disj(expand_to_lattice(l, rng)?, expand_to_lattice(r, rng)?),
    })
}

fn eval_mat_unchecked(f: &ArrowTerm) -> Result<IntMatrix> {
    Ok(match f {
        ArrowTerm::Id(a) => IntMatrix::identity(occ(a)),
        ArrowTerm::Prim(g) => {
            let rel = gen_rel(g);
            IntMatrix::from_pairs(rel.target_size, rel.source_size, &rel.pairs)
        }
        ArrowTerm::Comp(g, h) => eval_mat_unchecked(h)?.then(&eval_mat_unchecked(g)?)?,
        ArrowTerm::Conj(l, r) | ArrowTerm::Disj(l, r) => {
            eval_mat_unchecked(l)?.block_diag(&eval_mat_unchecked(r)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::term::{comp, par_conj, parse_arrow};

    fn pf(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn pa(s: &str) -> ArrowTerm {
        parse_arrow(s).unwrap()
    }

    fn rel_pairs(s: &str) -> BTreeSet<(usize, usize)> {
        eval_rel(&pa(s)).unwrap().pairs
    }

    #[test]
    fn ck_relation_is_the_crossing_diagram() {
        assert_eq!(
            rel_pairs("ck{p,q,r,s}"),
            [(0, 0), (1, 2), (2, 1), (3, 3)].into_iter().collect()
        );
    }

    #[test]
    fn ck_matrix_matches_displayed_permutation() {
        let m = eval_mat(&pa("ck{p,q,r,s}")).unwrap();
        let rows: Vec<Vec<u32>> = (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| if m.get(r, c).is_zero() { 0 } else { 1 })
                    .collect()
            })
            .collect();
        assert_eq!(
            rows,
            vec![
                vec![1, 0, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 1],
            ]
        );
    }

    #[test]
    fn identity_and_diagonal_relations() {
        assert_eq!(rel_pairs("id{p&q}"), [(0, 0), (1, 1)].into_iter().collect());
        assert_eq!(rel_pairs("hw{p}"), [(0, 0), (0, 1)].into_iter().collect());
        assert_eq!(rel_pairs("hk1{p,q}"), [(0, 0)].into_iter().collect());
    }

    #[test]
    fn projection_matrix_shapes() {
        let m = eval_mat(&pa("hk1{p,q}")).unwrap();
        assert_eq!((m.rows, m.cols), (1, 2));
        assert_eq!(m.to_string(), "1 0");
        let m = eval_mat(&pa("vk1{p,p}")).unwrap();
        assert_eq!((m.rows, m.cols), (2, 1));
    }

    #[test]
    fn codiagonal_after_injection_is_identity_matrix() {
        let t = comp(
            ArrowTerm::Prim(Gen::Vw(pf("p"))),
            ArrowTerm::Prim(Gen::Vk1(pf("p"), pf("p"))),
        );
        let m = eval_mat(&t).unwrap();
        assert_eq!(m, IntMatrix::identity(1));
    }

    #[test]
    fn kappa_has_zero_dimensions() {
        let m = eval_mat(&pa("kappa")).unwrap();
        assert_eq!((m.rows, m.cols), (0, 0));
        let r = eval_rel(&pa("kappa")).unwrap();
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn multiplicity_two_through_diagonal_then_codiagonal() {
        // p -> p&p -> p|p -> p counts two paths; built with one projection
        // per side to stay well-typed: hw then (vk1 . hk1) & ... simpler:
        // hw{p} then hk1 then vk1 then vw gives entry 1; instead compose
        // hw with a conj-par of injections into the same disjunction and
        // a codiagonal of the meet: use matrix arithmetic directly.
        let a = IntMatrix::from_pairs(2, 1, &[(0, 0), (0, 1)].into_iter().collect());
        let b = IntMatrix::from_pairs(1, 2, &[(0, 0), (1, 0)].into_iter().collect());
        let prod = a.then(&b).unwrap();
        assert_eq!(prod.get(0, 0).to_string(), "2");
        assert!(!prod.is_permutation());
    }

    #[test]
    fn functoriality_on_a_composite() {
        let t = pa("(hb+{p,q,r} & id{s}) . (id{p&(q&r)} & id{s})");
        let dev = crate::term::develop(&t).unwrap();
        let mut m = IntMatrix::identity(4);
        for f in dev.factors().unwrap() {
            m = m.then(&eval_mat(&f).unwrap()).unwrap();
        }
        assert_eq!(m, eval_mat(&t).unwrap());
    }

    #[test]
    fn rel_is_support_of_mat_on_sck_terms() {
        let t = pa("ck{q,p,r,s} . (hc{p,q} | id{r&s})");
        let r = eval_rel(&t).unwrap();
        let m = eval_mat(&t).unwrap();
        assert_eq!(m.support(), r);
    }

    #[test]
    fn par_blocks_shift() {
        let t = par_conj(pa("hc{p,q}"), pa("id{r}"));
        assert_eq!(
            eval_rel(&t).unwrap().pairs,
            [(0, 1), (1, 0), (2, 2)].into_iter().collect()
        );
    }
}
