//! Arrow terms of the strictified intermuting categories: identities and
//! intermutation heads over form sequences, closed under composition and
//! the two parallel operations. In sequence mode the associativity arrows
//! are identities; in set mode the symmetry arrows are identities as well,
//! so endpoints are compared as form sets.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::Rng;

use crate::error::{Error, Result};
use crate::strict::{try_delete, Conn, FormSeq};
use crate::term::{ArrowTerm, Gen};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StrictTerm {
    Id(FormSeq),
    /// `(A&B)|(C&D) -> (A|C)&(B|D)` with flattening on both sides.
    Ck {
        a: FormSeq,
        b: FormSeq,
        c: FormSeq,
        d: FormSeq,
    },
    Conj(Box<StrictTerm>, Box<StrictTerm>),
    Disj(Box<StrictTerm>, Box<StrictTerm>),
    /// `Comp(g, f)`: `f` applied first.
    Comp(Box<StrictTerm>, Box<StrictTerm>),
}

/// Which strictification discipline endpoints are compared under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// objects modulo associativity: ordered form sequences
    Seq,
    /// objects modulo associativity and commutativity: form sets
    Set,
}

pub fn st_comp(after: StrictTerm, before: StrictTerm) -> StrictTerm {
    match (&after, &before) {
        (StrictTerm::Id(_), _) => before,
        (_, StrictTerm::Id(_)) => after,
        _ => StrictTerm::Comp(Box::new(after), Box::new(before)),
    }
}

pub fn st_conj(l: StrictTerm, r: StrictTerm) -> StrictTerm {
    match (&l, &r) {
        (StrictTerm::Id(a), StrictTerm::Id(b)) => {
            StrictTerm::Id(FormSeq::node(Conn::Conj, vec![a.clone(), b.clone()]))
        }
        _ => StrictTerm::Conj(Box::new(l), Box::new(r)),
    }
}

pub fn st_disj(l: StrictTerm, r: StrictTerm) -> StrictTerm {
    match (&l, &r) {
        (StrictTerm::Id(a), StrictTerm::Id(b)) => {
            StrictTerm::Id(FormSeq::node(Conn::Disj, vec![a.clone(), b.clone()]))
        }
        _ => StrictTerm::Disj(Box::new(l), Box::new(r)),
    }
}

fn norm(x: &FormSeq, mode: Mode) -> FormSeq {
    match mode {
        Mode::Seq => x.clone(),
        Mode::Set => x.sorted(),
    }
}

fn ill(target: &FormSeq, source: &FormSeq) -> Error {
    Error::IllTyped {
        path: crate::formula::Path::root(),
        target: target.to_formula(),
        src: source.to_formula(),
    }
}

impl StrictTerm {
    pub fn ck_count(&self) -> usize {
        match self {
            StrictTerm::Id(_) => 0,
            StrictTerm::Ck { .. } => 1,
            StrictTerm::Conj(l, r) | StrictTerm::Disj(l, r) | StrictTerm::Comp(l, r) => {
                l.ck_count() + r.ck_count()
            }
        }
    }

    /// All intermutation heads, each with its term-tree address.
    pub fn ck_heads(&self) -> Vec<(Vec<u8>, [&FormSeq; 4])> {
        let mut out = Vec::new();
        self.walk_heads(&mut Vec::new(), &mut out);
        out
    }

    fn walk_heads<'a>(&'a self, at: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, [&'a FormSeq; 4])>) {
        match self {
            StrictTerm::Id(_) => {}
            StrictTerm::Ck { a, b, c, d } => out.push((at.clone(), [a, b, c, d])),
            StrictTerm::Conj(l, r) | StrictTerm::Disj(l, r) | StrictTerm::Comp(l, r) => {
                at.push(0);
                l.walk_heads(at, out);
                at.pop();
                at.push(1);
                r.walk_heads(at, out);
                at.pop();
            }
        }
    }
}

/// Source and target, with composability enforced per mode. Also checks
/// that the endpoints are diversified, the standing assumption of the
/// strict calculi.
pub fn strict_type(t: &StrictTerm, mode: Mode) -> Result<(FormSeq, FormSeq)> {
    let (src, tgt) = strict_type_inner(t, mode)?;
    src.check_diversified()?;
    Ok((src, tgt))
}

fn strict_type_inner(t: &StrictTerm, mode: Mode) -> Result<(FormSeq, FormSeq)> {
    Ok(match t {
        StrictTerm::Id(x) => {
            let x = norm(x, mode);
            (x.clone(), x)
        }
        StrictTerm::Ck { a, b, c, d } => {
            let src = FormSeq::node(
                Conn::Disj,
                vec![
                    FormSeq::node(Conn::Conj, vec![a.clone(), b.clone()]),
                    FormSeq::node(Conn::Conj, vec![c.clone(), d.clone()]),
                ],
            );
            let tgt = FormSeq::node(
                Conn::Conj,
                vec![
                    FormSeq::node(Conn::Disj, vec![a.clone(), c.clone()]),
                    FormSeq::node(Conn::Disj, vec![b.clone(), d.clone()]),
                ],
            );
            (norm(&src, mode), norm(&tgt, mode))
        }
        StrictTerm::Conj(l, r) => {
            let (ls, lt) = strict_type_inner(l, mode)?;
            let (rs, rt) = strict_type_inner(r, mode)?;
            if !ls.letters().is_disjoint(&rs.letters()) {
                return Err(Error::NotDiversified(
                    ls.letters().intersection(&rs.letters()).next().unwrap().clone(),
                ));
            }
            (
                norm(&FormSeq::node(Conn::Conj, vec![ls, rs]), mode),
                norm(&FormSeq::node(Conn::Conj, vec![lt, rt]), mode),
            )
        }
        StrictTerm::Disj(l, r) => {
            let (ls, lt) = strict_type_inner(l, mode)?;
            let (rs, rt) = strict_type_inner(r, mode)?;
            if !ls.letters().is_disjoint(&rs.letters()) {
                return Err(Error::NotDiversified(
                    ls.letters().intersection(&rs.letters()).next().unwrap().clone(),
                ));
            }
            (
                norm(&FormSeq::node(Conn::Disj, vec![ls, rs]), mode),
                norm(&FormSeq::node(Conn::Disj, vec![lt, rt]), mode),
            )
        }
        StrictTerm::Comp(g, f) => {
            let (fs, ft) = strict_type_inner(f, mode)?;
            let (gs, gt) = strict_type_inner(g, mode)?;
            if ft != gs {
                return Err(ill(&ft, &gs));
            }
            (fs, gt)
        }
    })
}

/// The positional relation of a strict term: pairs of letter-occurrence
/// positions in the (mode-normalized) endpoints. Computed functorially,
/// composing block placements positionally, so path-independence of the
/// result is a real consistency check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictRel {
    pub src: FormSeq,
    pub tgt: FormSeq,
    pub pairs: BTreeSet<(usize, usize)>,
}

pub fn strict_rel(t: &StrictTerm, mode: Mode) -> Result<StrictRel> {
    let rel = strict_rel_inner(t, mode)?;
    rel.src.check_diversified()?;
    Ok(rel)
}

fn positions(parent_row: &[String], child_row: &[String]) -> Result<Vec<usize>> {
    child_row
        .iter()
        .map(|p| {
            parent_row
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| Error::Internal(format!("letter {p} lost in placement")))
        })
        .collect()
}

fn strict_rel_inner(t: &StrictTerm, mode: Mode) -> Result<StrictRel> {
    let (src, tgt) = strict_type_inner(t, mode)?;
    let pairs = match t {
        StrictTerm::Id(_) => (0..src.occ_count()).map(|i| (i, i)).collect(),
        StrictTerm::Ck { .. } => {
            // the generator maps each letter to itself; positions come from
            // the normalized endpoint rows
            let srow = src.letter_row();
            let trow = tgt.letter_row();
            srow.iter()
                .enumerate()
                .map(|(i, p)| {
                    let j = trow
                        .iter()
                        .position(|q| q == p)
                        .ok_or_else(|| Error::Internal(format!("letter {p} vanished")))?;
                    Ok((i, j))
                })
                .collect::<Result<BTreeSet<_>>>()?
        }
        StrictTerm::Conj(l, r) | StrictTerm::Disj(l, r) => {
            let lrel = strict_rel_inner(l, mode)?;
            let rrel = strict_rel_inner(r, mode)?;
            let srow = src.letter_row();
            let trow = tgt.letter_row();
            let ls = positions(&srow, &lrel.src.letter_row())?;
            let lt = positions(&trow, &lrel.tgt.letter_row())?;
            let rs = positions(&srow, &rrel.src.letter_row())?;
            let rt = positions(&trow, &rrel.tgt.letter_row())?;
            let mut pairs = BTreeSet::new();
            for &(i, j) in &lrel.pairs {
                pairs.insert((ls[i], lt[j]));
            }
            for &(i, j) in &rrel.pairs {
                pairs.insert((rs[i], rt[j]));
            }
            pairs
        }
        StrictTerm::Comp(g, f) => {
            let frel = strict_rel_inner(f, mode)?;
            let grel = strict_rel_inner(g, mode)?;
            let mut pairs = BTreeSet::new();
            for &(i, j) in &frel.pairs {
                for &(j2, k) in &grel.pairs {
                    if j == j2 {
                        pairs.insert((i, k));
                    }
                }
            }
            pairs
        }
    };
    Ok(StrictRel { src, tgt, pairs })
}

// ---------------------------------------------------------------------------
// conversion from formula-level arrow terms

/// Interpret an ordinary arrow term in the strict category: associativity
/// arrows (and, in set mode, symmetry arrows) become identities; only
/// intermutation survives as a generator. Everything else is rejected.
pub fn strict_of_arrow(f: &ArrowTerm, mode: Mode) -> Result<StrictTerm> {
    let t = convert(f, mode)?;
    strict_type(&t, mode)?;
    Ok(t)
}

fn convert(f: &ArrowTerm, mode: Mode) -> Result<StrictTerm> {
    Ok(match f {
        ArrowTerm::Id(a) => StrictTerm::Id(FormSeq::strictify(a)?),
        ArrowTerm::Prim(Gen::Ck(a, b, c, d)) => StrictTerm::Ck {
            a: FormSeq::strictify(a)?,
            b: FormSeq::strictify(b)?,
            c: FormSeq::strictify(c)?,
            d: FormSeq::strictify(d)?,
        },
        ArrowTerm::Prim(g)
            if matches!(
                g.kind(),
                crate::term::GenKind::HbPlus
                    | crate::term::GenKind::HbMinus
                    | crate::term::GenKind::VbPlus
                    | crate::term::GenKind::VbMinus
            ) =>
        {
            StrictTerm::Id(FormSeq::strictify(&g.source())?)
        }
        ArrowTerm::Prim(g)
            if mode == Mode::Set
                && matches!(g.kind(), crate::term::GenKind::Hc | crate::term::GenKind::Vc) =>
        {
            StrictTerm::Id(FormSeq::strictify(&g.source())?)
        }
        ArrowTerm::Prim(g) => {
            return Err(Error::PreconditionViolated(format!(
                "generator {} has no strict interpretation here",
                Gen::token(g.kind())
            )))
        }
        ArrowTerm::Comp(g, h) => st_comp(convert(g, mode)?, convert(h, mode)?),
        ArrowTerm::Conj(l, r) => st_conj(convert(l, mode)?, convert(r, mode)?),
        ArrowTerm::Disj(l, r) => st_disj(convert(l, mode)?, convert(r, mode)?),
    })
}

// ---------------------------------------------------------------------------
// intermutation redexes

/// A redex in sequence mode: two adjacent conjunction children of a `|`
/// node, each split at a gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqRedex {
    /// path to the `|` node (child indices)
    pub path: Vec<usize>,
    /// index of the left conjunction child; the right one is `child + 1`
    pub child: usize,
    /// split position inside the left child (1..len)
    pub gap_l: usize,
    /// split position inside the right child
    pub gap_r: usize,
}

fn conj_children(x: &FormSeq) -> Option<&[FormSeq]> {
    match x {
        FormSeq::Node(Conn::Conj, kids) => Some(kids),
        _ => None,
    }
}

/// Every sequence-mode redex of `x`.
pub fn seq_redexes(x: &FormSeq) -> Vec<SeqRedex> {
    let mut out = Vec::new();
    walk_seq_redexes(x, &mut Vec::new(), &mut out);
    out
}

fn walk_seq_redexes(x: &FormSeq, path: &mut Vec<usize>, out: &mut Vec<SeqRedex>) {
    if let FormSeq::Node(conn, kids) = x {
        if *conn == Conn::Disj {
            for i in 0..kids.len() - 1 {
                if let (Some(l), Some(r)) = (conj_children(&kids[i]), conj_children(&kids[i + 1]))
                {
                    for gap_l in 1..l.len() {
                        for gap_r in 1..r.len() {
                            out.push(SeqRedex {
                                path: path.clone(),
                                child: i,
                                gap_l,
                                gap_r,
                            });
                        }
                    }
                }
            }
        }
        for (i, kid) in kids.iter().enumerate() {
            path.push(i);
            walk_seq_redexes(kid, path, out);
            path.pop();
        }
    }
}

fn split_at(kids: &[FormSeq], gap: usize) -> (FormSeq, FormSeq) {
    (
        FormSeq::node(Conn::Conj, kids[..gap].to_vec()),
        FormSeq::node(Conn::Conj, kids[gap..].to_vec()),
    )
}

/// Apply a redex; returns the new form sequence and the step as a strict
/// term factor on the whole object.
pub fn apply_seq_redex(x: &FormSeq, r: &SeqRedex) -> Result<(FormSeq, StrictTerm)> {
    let node = x.node_at(&r.path).ok_or(Error::BadOccurrence)?;
    let kids = match node {
        FormSeq::Node(Conn::Disj, kids) if r.child + 1 < kids.len() => kids,
        _ => return Err(Error::BadOccurrence),
    };
    let lk = conj_children(&kids[r.child]).ok_or(Error::BadOccurrence)?;
    let rk = conj_children(&kids[r.child + 1]).ok_or(Error::BadOccurrence)?;
    if r.gap_l == 0 || r.gap_l >= lk.len() || r.gap_r == 0 || r.gap_r >= rk.len() {
        return Err(Error::BadOccurrence);
    }
    let (a, b) = split_at(lk, r.gap_l);
    let (c, d) = split_at(rk, r.gap_r);
    let ck = StrictTerm::Ck {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
    };
    let new_node = FormSeq::node(
        Conn::Conj,
        vec![
            FormSeq::node(Conn::Disj, vec![a, c]),
            FormSeq::node(Conn::Disj, vec![b, d]),
        ],
    );

    // rebuild the | node with children child, child+1 replaced
    let mut new_kids = kids[..r.child].to_vec();
    new_kids.push(new_node);
    new_kids.extend_from_slice(&kids[r.child + 2..]);
    let replaced = FormSeq::node(Conn::Disj, new_kids);

    // the factor at the node: identities around the ck
    let prefix = &kids[..r.child];
    let suffix = &kids[r.child + 2..];
    let mut factor = ck;
    if !suffix.is_empty() {
        factor = st_disj(
            factor,
            StrictTerm::Id(FormSeq::node(Conn::Disj, suffix.to_vec())),
        );
    }
    if !prefix.is_empty() {
        factor = st_disj(
            StrictTerm::Id(FormSeq::node(Conn::Disj, prefix.to_vec())),
            factor,
        );
    }

    let new_x = graft(x, &r.path, replaced)?;
    let factor = wrap_factor(x, &r.path, factor)?;
    Ok((new_x, factor))
}

fn graft(x: &FormSeq, path: &[usize], repl: FormSeq) -> Result<FormSeq> {
    match path.split_first() {
        None => Ok(repl),
        Some((&i, rest)) => match x {
            FormSeq::Node(conn, kids) => {
                let mut kids = kids.clone();
                let sub = kids.get(i).ok_or(Error::BadOccurrence)?;
                kids[i] = graft(sub, rest, repl)?;
                Ok(FormSeq::node(*conn, kids))
            }
            FormSeq::Leaf(_) => Err(Error::BadOccurrence),
        },
    }
}

/// Wrap `inner` (acting at `path` in `x`) in identity context.
fn wrap_factor(x: &FormSeq, path: &[usize], inner: StrictTerm) -> Result<StrictTerm> {
    match path.split_first() {
        None => Ok(inner),
        Some((&i, rest)) => match x {
            FormSeq::Node(conn, kids) => {
                let sub = kids.get(i).ok_or(Error::BadOccurrence)?;
                let mut factor = wrap_factor(sub, rest, inner)?;
                let par = |l: StrictTerm, r: StrictTerm| match conn {
                    Conn::Conj => st_conj(l, r),
                    Conn::Disj => st_disj(l, r),
                };
                if i + 1 < kids.len() {
                    factor = par(
                        factor,
                        StrictTerm::Id(FormSeq::node(*conn, kids[i + 1..].to_vec())),
                    );
                }
                if i > 0 {
                    factor = par(
                        StrictTerm::Id(FormSeq::node(*conn, kids[..i].to_vec())),
                        factor,
                    );
                }
                Ok(factor)
            }
            FormSeq::Leaf(_) => Err(Error::BadOccurrence),
        },
    }
}

/// A redex in set mode: any two conjunction children of a `|` node, each
/// bipartitioned by a bitmask over its conjuncts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetRedex {
    pub path: Vec<usize>,
    pub child_i: usize,
    pub child_j: usize,
    pub mask_i: u32,
    pub mask_j: u32,
}

fn mask_split(kids: &[FormSeq], mask: u32) -> (FormSeq, FormSeq) {
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    for (i, k) in kids.iter().enumerate() {
        if mask & (1 << i) != 0 {
            ins.push(k.clone());
        } else {
            outs.push(k.clone());
        }
    }
    (
        FormSeq::node(Conn::Conj, ins),
        FormSeq::node(Conn::Conj, outs),
    )
}

pub fn apply_set_redex(x: &FormSeq, r: &SetRedex) -> Result<(FormSeq, StrictTerm)> {
    let node = x.node_at(&r.path).ok_or(Error::BadOccurrence)?;
    let kids = match node {
        FormSeq::Node(Conn::Disj, kids) => kids,
        _ => return Err(Error::BadOccurrence),
    };
    if r.child_i >= r.child_j || r.child_j >= kids.len() {
        return Err(Error::BadOccurrence);
    }
    let ik = conj_children(&kids[r.child_i]).ok_or(Error::BadOccurrence)?;
    let jk = conj_children(&kids[r.child_j]).ok_or(Error::BadOccurrence)?;
    let full_i = (1u32 << ik.len()) - 1;
    let full_j = (1u32 << jk.len()) - 1;
    if r.mask_i == 0 || r.mask_i >= full_i || r.mask_j == 0 || r.mask_j >= full_j {
        return Err(Error::BadOccurrence);
    }
    let (a, b) = mask_split(ik, r.mask_i);
    let (c, d) = mask_split(jk, r.mask_j);
    let ck = StrictTerm::Ck {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        d: d.clone(),
    };
    let new_node = FormSeq::node(
        Conn::Conj,
        vec![
            FormSeq::node(Conn::Disj, vec![a, c]),
            FormSeq::node(Conn::Disj, vec![b, d]),
        ],
    );
    let rest: Vec<FormSeq> = kids
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != r.child_i && *i != r.child_j)
        .map(|(_, k)| k.clone())
        .collect();
    let mut factor = ck;
    let mut new_kids = vec![new_node];
    if !rest.is_empty() {
        factor = st_disj(factor, StrictTerm::Id(FormSeq::node(Conn::Disj, rest.clone())));
        new_kids.push(FormSeq::node(Conn::Disj, rest));
    }
    let replaced = FormSeq::node(Conn::Disj, new_kids);
    let new_x = graft(x, &r.path, replaced)?.sorted();
    let factor = wrap_factor(x, &r.path, factor)?;
    Ok((new_x, factor))
}

fn walk_set_nodes(x: &FormSeq, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
    if let FormSeq::Node(conn, kids) = x {
        if *conn == Conn::Disj {
            let conj_positions: Vec<usize> = kids
                .iter()
                .enumerate()
                .filter(|(_, k)| conj_children(k).is_some())
                .map(|(i, _)| i)
                .collect();
            if conj_positions.len() >= 2 {
                out.push((path.clone(), conj_positions));
            }
        }
        for (i, kid) in kids.iter().enumerate() {
            path.push(i);
            walk_set_nodes(kid, path, out);
            path.pop();
        }
    }
}

/// Sample a random set-mode redex of `x`, when one exists.
pub fn sample_set_redex(rng: &mut StdRng, x: &FormSeq) -> Option<SetRedex> {
    let mut nodes = Vec::new();
    walk_set_nodes(x, &mut Vec::new(), &mut nodes);
    if nodes.is_empty() {
        return None;
    }
    let (path, conj_positions) = nodes[rng.random_range(0..nodes.len())].clone();
    let i = rng.random_range(0..conj_positions.len());
    let mut j = rng.random_range(0..conj_positions.len() - 1);
    if j >= i {
        j += 1;
    }
    let (ci, cj) = (
        conj_positions[i.min(j)],
        conj_positions[i.max(j)],
    );
    let node = x.node_at(&path)?;
    let kids = match node {
        FormSeq::Node(Conn::Disj, kids) => kids,
        _ => return None,
    };
    let ni = conj_children(&kids[ci])?.len();
    let nj = conj_children(&kids[cj])?.len();
    let full_i = (1u32 << ni) - 1;
    let full_j = (1u32 << nj) - 1;
    let mask_i = rng.random_range(1..full_i);
    let mask_j = rng.random_range(1..full_j);
    Some(SetRedex {
        path,
        child_i: ci,
        child_j: cj,
        mask_i,
        mask_j,
    })
}

/// A random strict set-mode term with source `x`, composed of up to
/// `steps` intermutation factors.
pub fn random_strict_set_term(rng: &mut StdRng, x: &FormSeq, steps: usize) -> StrictTerm {
    let mut cur = x.sorted();
    let mut term = StrictTerm::Id(cur.clone());
    for _ in 0..steps {
        let Some(redex) = sample_set_redex(rng, &cur) else {
            break;
        };
        let (next, factor) = apply_set_redex(&cur, &redex).expect("sampled redex applies");
        term = st_comp(factor, term);
        cur = next;
    }
    term
}

// ---------------------------------------------------------------------------
// arrow restriction

/// The condition under which restriction is defined: at every conjunction
/// node, either no child or every child has all its letters in `p`.
pub fn restriction_condition(x: &FormSeq, p: &BTreeSet<String>) -> bool {
    match x {
        FormSeq::Leaf(_) => true,
        FormSeq::Node(conn, kids) => {
            if *conn == Conn::Conj {
                let inside = kids
                    .iter()
                    .filter(|k| k.letters().is_subset(p))
                    .count();
                if inside != 0 && inside != kids.len() {
                    return false;
                }
            }
            kids.iter().all(|k| restriction_condition(k, p))
        }
    }
}

/// `f^{-P}`: delete the letters of `p` throughout a set-mode strict term.
/// Intermutation heads with a whole conjunctive block inside `p` collapse
/// to identities; parallel components entirely inside `p` are dropped.
pub fn restrict_arrow(f: &StrictTerm, p: &BTreeSet<String>) -> Result<StrictTerm> {
    let (src, _) = strict_type(f, Mode::Set)?;
    if src.letters().is_subset(p) {
        return Err(Error::PreconditionViolated(
            "restriction would delete every letter".into(),
        ));
    }
    if !restriction_condition(&src, p) {
        return Err(Error::PreconditionViolated(
            "letter set splits a conjunction block".into(),
        ));
    }
    let out = restrict_walk(f, p)?;
    strict_type(&out, Mode::Set)?;
    Ok(out)
}

/// Project one side of a conjunction-sourced term. Unlike
/// [`restrict_arrow`] this does not impose the conjunction condition: for
/// a source `x1 & x2` every intermutation head sits wholly inside one root
/// child, so deleting either side's letters is always defined.
pub fn project_component(f: &StrictTerm, p: &BTreeSet<String>) -> Result<StrictTerm> {
    let (src, _) = strict_type(f, Mode::Set)?;
    if src.letters().is_subset(p) {
        return Err(Error::PreconditionViolated(
            "projection would delete every letter".into(),
        ));
    }
    let out = restrict_walk(f, p)?;
    strict_type(&out, Mode::Set)?;
    Ok(out)
}

fn must_delete(x: &FormSeq, p: &BTreeSet<String>) -> Result<FormSeq> {
    try_delete(x, p).ok_or_else(|| Error::Internal("restriction erased a needed block".into()))
}

fn restrict_walk(f: &StrictTerm, p: &BTreeSet<String>) -> Result<StrictTerm> {
    let (src, _) = strict_type_inner(f, Mode::Set)?;
    if src.letters().is_disjoint(p) {
        return Ok(f.clone());
    }
    Ok(match f {
        StrictTerm::Id(x) => StrictTerm::Id(must_delete(x, p)?),
        StrictTerm::Ck { a, b, c, d } => {
            let left_gone = a.letters().union(&b.letters()).all(|q| p.contains(q));
            let right_gone = c.letters().union(&d.letters()).all(|q| p.contains(q));
            if left_gone || right_gone {
                StrictTerm::Id(must_delete(&src, p)?)
            } else {
                StrictTerm::Ck {
                    a: must_delete(a, p)?,
                    b: must_delete(b, p)?,
                    c: must_delete(c, p)?,
                    d: must_delete(d, p)?,
                }
            }
        }
        StrictTerm::Conj(l, r) | StrictTerm::Disj(l, r) => {
            let (ls, _) = strict_type_inner(l, Mode::Set)?;
            let (rs, _) = strict_type_inner(r, Mode::Set)?;
            let is_conj = matches!(f, StrictTerm::Conj(..));
            if ls.letters().is_subset(p) {
                restrict_walk(r, p)?
            } else if rs.letters().is_subset(p) {
                restrict_walk(l, p)?
            } else {
                let l = restrict_walk(l, p)?;
                let r = restrict_walk(r, p)?;
                if is_conj {
                    st_conj(l, r)
                } else {
                    st_disj(l, r)
                }
            }
        }
        StrictTerm::Comp(g, h) => st_comp(restrict_walk(g, p)?, restrict_walk(h, p)?),
    })
}

// ---------------------------------------------------------------------------
// printing

impl fmt::Display for StrictTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_strict(self, f, 0)
    }
}

fn write_strict(t: &StrictTerm, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let mine = match t {
        StrictTerm::Comp(..) => 0,
        StrictTerm::Conj(..) | StrictTerm::Disj(..) => 1,
        _ => 2,
    };
    let parens = mine < level;
    if parens {
        write!(f, "(")?;
    }
    match t {
        StrictTerm::Id(x) => write!(f, "id{{{x}}}")?,
        StrictTerm::Ck { a, b, c, d } => write!(f, "ck{{{a},{b},{c},{d}}}")?,
        StrictTerm::Comp(g, h) => {
            write_strict(g, f, 1)?;
            write!(f, " . ")?;
            write_strict(h, f, 0)?;
        }
        StrictTerm::Conj(l, r) => {
            write_strict(l, f, 1)?;
            write!(f, " & ")?;
            write_strict(r, f, 2)?;
        }
        StrictTerm::Disj(l, r) => {
            write_strict(l, f, 1)?;
            write!(f, " | ")?;
            write_strict(r, f, 2)?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

/// Parse through the arrow grammar and convert.
pub fn parse_strict(src: &str, mode: Mode) -> Result<StrictTerm> {
    strict_of_arrow(&crate::term::parse_arrow(src)?, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::parse_form_seq;
    use rand::SeedableRng;

    fn fs(s: &str) -> FormSeq {
        parse_form_seq(s).unwrap()
    }

    fn ck(a: &str, b: &str, c: &str, d: &str) -> StrictTerm {
        StrictTerm::Ck {
            a: fs(a),
            b: fs(b),
            c: fs(c),
            d: fs(d),
        }
    }

    #[test]
    fn ck_types_with_flattening() {
        let t = ck("p", "q&r", "s", "t");
        let (src, tgt) = strict_type(&t, Mode::Seq).unwrap();
        assert_eq!(src, fs("(p&q&r)|(s&t)"));
        assert_eq!(tgt, fs("(p|s)&((q&r)|t)"));
    }

    #[test]
    fn composition_in_seq_mode_is_order_sensitive() {
        let first = ck("p", "q", "r", "s");
        // target (p|r)&(q|s); a following id must match exactly
        let ok = StrictTerm::Comp(
            Box::new(StrictTerm::Id(fs("(p|r)&(q|s)"))),
            Box::new(first.clone()),
        );
        assert!(strict_type(&ok, Mode::Seq).is_ok());
        let bad = StrictTerm::Comp(
            Box::new(StrictTerm::Id(fs("(q|s)&(p|r)"))),
            Box::new(first.clone()),
        );
        assert!(strict_type(&bad, Mode::Seq).is_err());
        assert!(strict_type(&bad, Mode::Set).is_ok());
    }

    #[test]
    fn strict_rel_of_ck_is_the_block_crossing() {
        let t = ck("p", "q", "r", "s");
        let rel = strict_rel(&t, Mode::Seq).unwrap();
        assert_eq!(
            rel.pairs,
            [(0, 0), (1, 2), (2, 1), (3, 3)].into_iter().collect()
        );
    }

    #[test]
    fn seq_redexes_of_ck_source() {
        let x = fs("(p&q)|(r&s)");
        let rs = seq_redexes(&x);
        assert_eq!(rs.len(), 1);
        let (next, factor) = apply_seq_redex(&x, &rs[0]).unwrap();
        assert_eq!(next, fs("(p|r)&(q|s)"));
        let (src, tgt) = strict_type(&factor, Mode::Seq).unwrap();
        assert_eq!(src, x);
        assert_eq!(tgt, next);
    }

    #[test]
    fn seq_redexes_only_adjacent() {
        // middle child is a letter: the two conjunctions are not adjacent
        let x = fs("(p&q)|z|(r&s)");
        assert!(seq_redexes(&x).is_empty());
        let y = fs("(p&q)|(r&s)|z");
        assert_eq!(seq_redexes(&y).len(), 1);
    }

    #[test]
    fn seq_redex_counts_gaps() {
        // three-way conjunctions offer two gaps each
        let x = fs("(p&q&r)|(s&t)");
        assert_eq!(seq_redexes(&x).len(), 2);
    }

    #[test]
    fn redex_drops_conj_count_by_one() {
        let x = fs("(p&q&r)|(s&t)|(u&v)");
        for r in seq_redexes(&x) {
            let (next, _) = apply_seq_redex(&x, &r).unwrap();
            assert_eq!(
                next.binary_count(Conn::Conj),
                x.binary_count(Conn::Conj) - 1,
                "redex {r:?}"
            );
        }
    }

    #[test]
    fn set_redex_nonadjacent_allowed() {
        let x = fs("(p&q)|z|(r&s)").sorted();
        let mut rng = StdRng::seed_from_u64(5);
        let r = sample_set_redex(&mut rng, &x).expect("set redex exists");
        let (next, factor) = apply_set_redex(&x, &r).unwrap();
        let (src, tgt) = strict_type(&factor, Mode::Set).unwrap();
        assert_eq!(src, x.sorted());
        assert_eq!(tgt, next);
    }

    #[test]
    fn random_set_terms_type_check() {
        let mut rng = StdRng::seed_from_u64(9);
        let x = fs("(p&q&r)|(s&t)|(u&v&w)");
        for _ in 0..40 {
            let t = random_strict_set_term(&mut rng, &x, 4);
            let (src, _) = strict_type(&t, Mode::Set).unwrap();
            assert_eq!(src, x.sorted());
            let rel = strict_rel(&t, Mode::Set).unwrap();
            // letters map to themselves by name
            let srow = rel.src.letter_row();
            let trow = rel.tgt.letter_row();
            for (i, j) in rel.pairs {
                assert_eq!(srow[i], trow[j]);
            }
        }
    }

    #[test]
    fn restrict_ck_examples() {
        let t = ck("p", "q", "r", "s");
        let p: BTreeSet<String> = ["r", "s"].iter().map(|s| s.to_string()).collect();
        assert_eq!(restrict_arrow(&t, &p).unwrap(), StrictTerm::Id(fs("p&q")));
        assert_eq!(restrict_arrow(&t, &BTreeSet::new()).unwrap(), t);
    }

    #[test]
    fn restrict_parallel_component_dropped() {
        let f1 = ck("p", "q", "r", "s");
        let f2 = StrictTerm::Id(fs("u&v"));
        let t = StrictTerm::Disj(Box::new(f1.clone()), Box::new(f2));
        let p: BTreeSet<String> = ["u", "v"].iter().map(|s| s.to_string()).collect();
        assert_eq!(restrict_arrow(&t, &p).unwrap(), f1);
    }

    #[test]
    fn restrict_rejects_block_splitting_sets() {
        let t = ck("p", "q", "r", "s");
        let p: BTreeSet<String> = ["p".to_string()].into_iter().collect();
        assert!(matches!(
            restrict_arrow(&t, &p),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn restrict_type_law() {
        // f^{-P} : X^{-P} -> Y^{-P}
        let mut rng = StdRng::seed_from_u64(31);
        let x = fs("(p&q)|(r&s)|(u&v)");
        for _ in 0..30 {
            let t = random_strict_set_term(&mut rng, &x, 3);
            let (src, tgt) = strict_type(&t, Mode::Set).unwrap();
            // delete one disjunct's letters: always satisfies the condition
            let p: BTreeSet<String> = ["u", "v"].iter().map(|s| s.to_string()).collect();
            let r = restrict_arrow(&t, &p).unwrap();
            let (rs, rt) = strict_type(&r, Mode::Set).unwrap();
            assert_eq!(rs, try_delete(&src, &p).unwrap().sorted());
            assert_eq!(rt, try_delete(&tgt, &p).unwrap().sorted());
        }
    }

    #[test]
    fn strict_of_arrow_maps_b_and_c_to_id() {
        let f = crate::term::parse_arrow("ck{p,q,r,s} . vc{r&s,p&q}").unwrap();
        // vc reorders the disjuncts; in set mode this is an identity
        let t = strict_of_arrow(&f, Mode::Set).unwrap();
        assert_eq!(t.ck_count(), 1);
        assert!(strict_of_arrow(&f, Mode::Seq).is_err());
    }

    #[test]
    fn display_parses_back() {
        let t = st_comp(
            StrictTerm::Conj(
                Box::new(StrictTerm::Id(fs("p|r"))),
                Box::new(StrictTerm::Id(fs("q|s"))),
            ),
            ck("p", "q", "r", "s"),
        );
        let shown = t.to_string();
        let back = parse_strict(&shown, Mode::Seq).unwrap();
        assert_eq!(
            strict_type(&back, Mode::Seq).unwrap(),
            strict_type(&t, Mode::Seq).unwrap()
        );
    }
}
