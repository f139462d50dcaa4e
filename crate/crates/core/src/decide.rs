//! Theory-indexed decisions assembled from the coherence theorems: arrow
//! equality, arrow existence, and the purity propagation report.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Formula, Unit};
use crate::legit::check_legitimate;
use crate::sampling::moves_from;
use crate::semantics::{eval_mat, eval_rel};
use crate::strict::FormSeq;
use crate::term::{
    apply_step, develop, theory_violation, ArrowTerm, CoherenceClass, Theory,
};

/// The answer of an equality decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual(Evidence),
    OutsideFragment(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    TypeMismatch {
        left: (Formula, Formula),
        right: (Formula, Formula),
    },
    RelationsDiffer,
    MatricesDiffer,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::NotEqual(_) => "not-equal",
            Verdict::OutsideFragment(_) => "outside-fragment",
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Verdict::Equal => "{\"verdict\":\"equal\"}".into(),
            Verdict::NotEqual(e) => format!(
                "{{\"verdict\":\"not-equal\",\"reason\":\"{}\"}}",
                match e {
                    Evidence::TypeMismatch { .. } => "type mismatch",
                    Evidence::RelationsDiffer => "relations differ",
                    Evidence::MatricesDiffer => "matrices differ",
                }
            ),
            Verdict::OutsideFragment(r) => {
                format!("{{\"verdict\":\"outside-fragment\",\"reason\":\"{r}\"}}")
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "equal"),
            Verdict::NotEqual(Evidence::TypeMismatch { left, right }) => write!(
                f,
                "not equal: types differ ({} -> {} vs {} -> {})",
                left.0, left.1, right.0, right.1
            ),
            Verdict::NotEqual(Evidence::RelationsDiffer) => {
                write!(f, "not equal: the relation images differ")
            }
            Verdict::NotEqual(Evidence::MatricesDiffer) => {
                write!(f, "not equal: the matrix images differ")
            }
            Verdict::OutsideFragment(r) => write!(f, "outside the decided fragment: {r}"),
        }
    }
}

fn check_theory(f: &ArrowTerm, t: Theory) -> Result<()> {
    match theory_violation(f, t) {
        None => Ok(()),
        Some(gen) => Err(Error::GeneratorNotInTheory {
            gen,
            theory: t.name().to_string(),
        }),
    }
}

/// Decide `f = g` in theory `t`, per the coherence class of the theory.
pub fn decide_equal(f: &ArrowTerm, g: &ArrowTerm, t: Theory) -> Result<Verdict> {
    check_theory(f, t)?;
    check_theory(g, t)?;
    let tf = f.type_of()?;
    let tg = g.type_of()?;
    if tf != tg {
        return Ok(Verdict::NotEqual(Evidence::TypeMismatch {
            left: tf,
            right: tg,
        }));
    }
    let (src, tgt) = tf;
    Ok(match t.class() {
        CoherenceClass::Preorder => Verdict::Equal,
        CoherenceClass::DiversifiedPreorder => {
            let decided = src.is_diversified() && tgt.is_diversified();
            if decided || eval_rel(f)? == eval_rel(g)? {
                Verdict::Equal
            } else {
                Verdict::NotEqual(Evidence::RelationsDiffer)
            }
        }
        CoherenceClass::FaithfulRel => {
            if eval_rel(f)? != eval_rel(g)? {
                Verdict::NotEqual(Evidence::RelationsDiffer)
            } else if t == Theory::L && eval_mat(f)? != eval_mat(g)? {
                // multiplicities matter on the lattice fragment
                Verdict::NotEqual(Evidence::MatricesDiffer)
            } else {
                Verdict::Equal
            }
        }
        CoherenceClass::RestrictedByPurity => {
            let letterless = src.is_letterless() && tgt.is_letterless();
            let pure = src.is_pure() && tgt.is_pure();
            let diversified_ok = t != Theory::SCkU
                || (src.is_diversified() && tgt.is_diversified());
            if letterless || (pure && diversified_ok) {
                Verdict::Equal
            } else if !pure && !letterless {
                Verdict::OutsideFragment(
                    "coherence is proved only for pure or letterless endpoints".into(),
                )
            } else {
                Verdict::OutsideFragment(
                    "coherence is proved only for diversified pure endpoints".into(),
                )
            }
        }
    })
}

/// The answer of an existence decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Existence {
    Yes,
    No,
    OutsideFragment(String),
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Existence::Yes => write!(f, "yes"),
            Existence::No => write!(f, "no"),
            Existence::OutsideFragment(r) => write!(f, "outside the decided fragment: {r}"),
        }
    }
}

/// Decide whether some arrow `x -> y` exists in theory `t`. Complete for
/// the intermuting and biassociative intermuting theories on constant-free
/// formulas; other theories fall back to a bounded search over their
/// isomorphism generators, reported as such.
pub fn decide_exists(x: &Formula, y: &Formula, t: Theory) -> Result<Existence> {
    match t {
        Theory::ACk => {
            if !x.is_constant_free() || !y.is_constant_free() {
                return Ok(Existence::OutsideFragment(
                    "existence is decided on constant-free formulas".into(),
                ));
            }
            exists_ack(x, y)
        }
        Theory::Ck => {
            if !x.is_constant_free() || !y.is_constant_free() {
                return Ok(Existence::OutsideFragment(
                    "existence is decided on constant-free formulas".into(),
                ));
            }
            Ok(exists_ck(x, y))
        }
        _ => Ok(exists_by_iso_search(x, y, t)),
    }
}

fn exists_ack(x: &Formula, y: &Formula) -> Result<Existence> {
    // diversify the source left to right, then try every renaming of the
    // target consistent with multiplicities; the uniqueness property makes
    // at most one succeed
    let (xd, _) = x.diversify();
    let xs = FormSeq::strictify(&xd)?;
    let renamings = target_renamings(x, y);
    let Some(renamings) = renamings else {
        return Ok(Existence::OutsideFragment(
            "letter multiplicities differ".into(),
        ));
    };
    if renamings.len() > 20000 {
        return Ok(Existence::OutsideFragment(format!(
            "too many consistent renamings ({})",
            renamings.len()
        )));
    }
    for map in renamings {
        let yd = y.rename_occurrences(&map);
        let ys = FormSeq::strictify(&yd)?;
        if check_legitimate(&xs, &ys)?.is_legitimate() {
            return Ok(Existence::Yes);
        }
    }
    Ok(Existence::No)
}

/// All ways of tagging the target's repeated letters with the occurrence
/// indices used on the source side: one map per product of permutations.
/// `None` when the multisets of letters differ.
fn target_renamings(x: &Formula, y: &Formula) -> Option<Vec<Vec<String>>> {
    let mx = x.letters();
    let my = y.letters();
    if mx != my {
        return None;
    }
    // per-letter index permutations for letters with multiplicity > 1
    let repeated: Vec<(String, usize)> = mx
        .iter()
        .filter(|(_, &k)| k > 1)
        .map(|(p, &k)| (p.clone(), k))
        .collect();
    // renamings are represented by assigning, for each occurrence of a
    // repeated letter left to right, the suffix index it receives
    let row = y.letter_row();
    let mut perms_per_letter: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
    for (p, k) in &repeated {
        perms_per_letter.push((p.clone(), permutations(*k)));
    }
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    // build the renamed occurrence row for each combination
    let mut combos: Vec<BTreeMap<String, Vec<usize>>> = vec![BTreeMap::new()];
    for (p, perms) in &perms_per_letter {
        let mut next = Vec::new();
        for combo in &combos {
            for perm in perms {
                let mut c = combo.clone();
                c.insert(p.clone(), perm.clone());
                next.push(c);
            }
        }
        combos = next;
    }
    out.clear();
    let diversified_names = diversified_names(x);
    for combo in combos {
        let mut counters: BTreeMap<String, usize> = BTreeMap::new();
        let mut renamed_row = Vec::with_capacity(row.len());
        for p in &row {
            let p = p.to_string();
            if let Some(perm) = combo.get(&p) {
                let seen = counters.entry(p.clone()).or_insert(0);
                let idx = perm[*seen];
                *seen += 1;
                renamed_row.push(diversified_names[&(p.clone(), idx)].clone());
            } else {
                renamed_row.push(p);
            }
        }
        out.push(renamed_row);
    }
    Some(out)
}

/// The names the source-side diversification gives to each occurrence.
fn diversified_names(x: &Formula) -> BTreeMap<(String, usize), String> {
    let (xd, _) = x.diversify();
    let orig_row = x.letter_row();
    let div_row = xd.letter_row();
    let mut counters: BTreeMap<String, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (orig, fresh) in orig_row.iter().zip(div_row.iter()) {
        let n = counters.entry(orig.to_string()).or_insert(0);
        out.insert((orig.to_string(), *n), fresh.to_string());
        *n += 1;
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let rest = permutations(k - 1);
    for perm in rest {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

impl Formula {
    /// Rename letter occurrences left to right by the given row.
    fn rename_occurrences(&self, row: &[String]) -> Formula {
        fn walk(f: &Formula, row: &[String], i: &mut usize) -> Formula {
            match f {
                Formula::Letter(_) => {
                    let out = Formula::Letter(row[*i].clone());
                    *i += 1;
                    out
                }
                Formula::Top | Formula::Bot => f.clone(),
                Formula::Conj(a, b) => {
                    let l = walk(a, row, i);
                    let r = walk(b, row, i);
                    crate::formula::conj(l, r)
                }
                Formula::Disj(a, b) => {
                    let l = walk(a, row, i);
                    let r = walk(b, row, i);
                    crate::formula::disj(l, r)
                }
            }
        }
        walk(self, row, &mut 0)
    }
}

/// Exhaustive search over binary intermutation redexes on the raw formula
/// tree; every step removes one `&`, so the search is finite.
fn exists_ck(x: &Formula, y: &Formula) -> Existence {
    let mut seen: BTreeSet<Formula> = BTreeSet::new();
    let mut queue: VecDeque<Formula> = VecDeque::new();
    seen.insert(x.clone());
    queue.push_back(x.clone());
    while let Some(cur) = queue.pop_front() {
        if cur == *y {
            return Existence::Yes;
        }
        for next in binary_ck_steps(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Existence::No
}

fn binary_ck_steps(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    if let Formula::Disj(l, r) = f {
        if let (Formula::Conj(a, b), Formula::Conj(c, d)) = (&**l, &**r) {
            out.push(crate::formula::conj(
                crate::formula::disj((**a).clone(), (**c).clone()),
                crate::formula::disj((**b).clone(), (**d).clone()),
            ));
        }
    }
    match f {
        Formula::Conj(l, r) => {
            for nl in binary_ck_steps(l) {
                out.push(crate::formula::conj(nl, (**r).clone()));
            }
            for nr in binary_ck_steps(r) {
                out.push(crate::formula::conj((**l).clone(), nr));
            }
        }
        Formula::Disj(l, r) => {
            for nl in binary_ck_steps(l) {
                out.push(crate::formula::disj(nl, (**r).clone()));
            }
            for nr in binary_ck_steps(r) {
                out.push(crate::formula::disj((**l).clone(), nr));
            }
        }
        _ => {}
    }
    out
}

/// Bounded bidirectional-free search over the theory's invertible
/// generators, with the depth cap reported in the answer.
fn exists_by_iso_search(x: &Formula, y: &Formula, t: Theory) -> Existence {
    if t.letterless_only() && !(x.is_letterless() && y.is_letterless()) {
        return Existence::OutsideFragment(format!(
            "{t} is generated by the empty set of objects"
        ));
    }
    let cap = (2 * size_of(x)).max(2);
    let mut seen: BTreeSet<Formula> = BTreeSet::new();
    let mut frontier = vec![x.clone()];
    seen.insert(x.clone());
    for _ in 0..cap {
        let mut next = Vec::new();
        for cur in &frontier {
            if cur == y {
                return Existence::Yes;
            }
            for step in moves_from(cur, t, true) {
                if !is_invertible(&step.head) {
                    continue;
                }
                if let Ok(n) = apply_step(cur, &step) {
                    if size_of(&n) <= 2 * size_of(x) + 4 && seen.insert(n.clone()) {
                        next.push(n);
                    }
                }
            }
        }
        if frontier.iter().any(|c| c == y) {
            return Existence::Yes;
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    if seen.contains(y) {
        return Existence::Yes;
    }
    Existence::OutsideFragment(format!(
        "no path of invertible generators within depth cap {cap}; existence undecided"
    ))
}

fn is_invertible(g: &crate::term::Gen) -> bool {
    use crate::term::GenKind::*;
    matches!(
        g.kind(),
        HbPlus
            | HbMinus
            | VbPlus
            | VbMinus
            | Hc
            | Vc
            | HdPlus
            | HdMinus
            | HsPlus
            | HsMinus
            | VdPlus
            | VdMinus
            | VsPlus
            | VsMinus
            | HwBotPlus
            | HwBotMinus
            | VwTopPlus
            | VwTopMinus
    )
}

fn size_of(f: &Formula) -> usize {
    match f {
        Formula::Letter(_) | Formula::Top | Formula::Bot => 1,
        Formula::Conj(a, b) | Formula::Disj(a, b) => 1 + size_of(a) + size_of(b),
    }
}

// ---------------------------------------------------------------------------
// purity scan

#[derive(Debug, Clone)]
pub struct PurityStage {
    pub object: Formula,
    pub bot_pure: bool,
    pub top_pure: bool,
}

#[derive(Debug, Clone)]
pub struct PurityReport {
    pub stages: Vec<PurityStage>,
    pub violations: Vec<String>,
}

impl PurityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for PurityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.stages.iter().enumerate() {
            writeln!(
                f,
                "{i}: {} (F-pure: {}, T-pure: {})",
                s.object, s.bot_pure, s.top_pure
            )?;
        }
        if self.stages.iter().all(|s| s.object.is_letterless()) && !self.stages.is_empty() {
            writeln!(f, "letterless throughout; no purity claims")?;
        }
        for v in &self.violations {
            writeln!(f, "VIOLATION: {v}")?;
        }
        Ok(())
    }
}

/// Walk the developed factors of `f`, recording purity of every
/// intermediate object and flagging any failure of forward `F`-purity or
/// backward `T`-purity propagation (the unit-bearing theories admit none).
pub fn purity_scan(f: &ArrowTerm, t: Theory) -> Result<PurityReport> {
    if !matches!(t, Theory::ACkU | Theory::SCkU) {
        return Err(Error::PreconditionViolated(
            "purity propagation is stated for the unit-bearing intermuting theories".into(),
        ));
    }
    check_theory(f, t)?;
    let dev = develop(f)?;
    let objects = dev.objects()?;
    let stages: Vec<PurityStage> = objects
        .iter()
        .map(|o| PurityStage {
            object: o.clone(),
            bot_pure: o.is_zeta_pure(Unit::Bot),
            top_pure: o.is_zeta_pure(Unit::Top),
        })
        .collect();
    let mut violations = Vec::new();
    for w in stages.windows(2) {
        if w[0].bot_pure && !w[1].bot_pure {
            violations.push(format!(
                "F-purity lost from {} to {}",
                w[0].object, w[1].object
            ));
        }
        if w[1].top_pure && !w[0].top_pure {
            violations.push(format!(
                "T-purity not inherited backward from {} to {}",
                w[1].object, w[0].object
            ));
        }
    }
    Ok(PurityReport { stages, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::term::{parse_arrow, Gen};

    fn pf(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn pa(s: &str) -> ArrowTerm {
        parse_arrow(s).unwrap()
    }

    #[test]
    fn preorder_theories_equate_everything_well_typed() {
        let f = pa("hb+{p,q,r}");
        let g = pa("hb+{p,q,r} . id{p&(q&r)}");
        assert_eq!(decide_equal(&f, &g, Theory::A).unwrap(), Verdict::Equal);
    }

    #[test]
    fn sck_distinguishes_swap_from_identity() {
        let f = pa("hc{p,p}");
        let g = pa("id{p&p}");
        match decide_equal(&f, &g, Theory::SCk).unwrap() {
            Verdict::NotEqual(Evidence::RelationsDiffer) => {}
            v => panic!("expected relation evidence, got {v:?}"),
        }
    }

    #[test]
    fn letterless_kappa_terms_are_equal() {
        // two arrows F&F -> T|T in the letterless bimonoidal theory
        let f = pa("vwt- . kappa . hwb+");
        let g = pa("(kappa|kappa) . vd-{F} . hwb+");
        assert_eq!(
            f.type_of().unwrap(),
            g.type_of().unwrap(),
            "both F&F -> T|T"
        );
        assert_eq!(decide_equal(&f, &g, Theory::KA0).unwrap(), Verdict::Equal);
    }

    #[test]
    fn impure_endpoints_are_outside_the_fragment() {
        let f = pa("id{p&F}");
        match decide_equal(&f, &f, Theory::ACkU).unwrap() {
            Verdict::OutsideFragment(_) => {}
            v => panic!("expected outside-fragment, got {v:?}"),
        }
    }

    #[test]
    fn generator_not_in_theory_is_an_error() {
        let f = pa("ck{p,q,r,s}");
        assert!(matches!(
            decide_equal(&f, &f, Theory::A),
            Err(Error::GeneratorNotInTheory { .. })
        ));
    }

    #[test]
    fn exists_ack_basic() {
        assert_eq!(
            decide_exists(&pf("(p&q)|(r&s)"), &pf("(p|r)&(q|s)"), Theory::ACk).unwrap(),
            Existence::Yes
        );
        assert_eq!(
            decide_exists(&pf("(p|r)&(q|s)"), &pf("(p&q)|(r&s)"), Theory::ACk).unwrap(),
            Existence::No
        );
    }

    #[test]
    fn exists_ack_with_repeats_uses_renamings() {
        // (p&p)|(p&p) -> (p|p)&(p|p): a plain intermutation instance
        assert_eq!(
            decide_exists(&pf("(p&p)|(p&p)"), &pf("(p|p)&(p|p)"), Theory::ACk).unwrap(),
            Existence::Yes
        );
    }

    #[test]
    fn exists_ck_requires_exact_binary_shape() {
        assert_eq!(
            decide_exists(&pf("(p&q)|(r&s)"), &pf("(p|r)&(q|s)"), Theory::Ck).unwrap(),
            Existence::Yes
        );
        // reassociation is not available in the bare intermuting theory
        assert_eq!(
            decide_exists(&pf("p&(q&r)"), &pf("(p&q)&r"), Theory::Ck).unwrap(),
            Existence::No
        );
    }

    #[test]
    fn exists_na_unit_isomorphism() {
        assert_eq!(
            decide_exists(&pf("p&T"), &pf("p"), Theory::NA).unwrap(),
            Existence::Yes
        );
    }

    #[test]
    fn purity_scan_flags_nothing_on_kappa() {
        let rep = purity_scan(&pa("kappa"), Theory::ACkU).unwrap();
        assert!(rep.ok());
    }

    #[test]
    fn purity_scan_on_letterless_ck() {
        let f = ArrowTerm::Prim(Gen::Ck(
            Formula::Top,
            Formula::Bot,
            Formula::Bot,
            Formula::Top,
        ));
        let rep = purity_scan(&f, Theory::ACkU).unwrap();
        assert!(rep.ok());
        assert!(rep.stages.iter().all(|s| s.object.is_letterless()));
    }
}
