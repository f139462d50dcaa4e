//! Splitting machinery for strict symmetric terms with disjunction source
//! `X1 | X2`: classification of intermutation heads, the factorization
//! into a nonsplitting part followed by a splitting part, and the
//! canonical splitting normal form.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::sterm::{
    restrict_arrow, st_comp, st_conj, st_disj, strict_rel, strict_type, Mode, StrictTerm,
};
use crate::strict::{set_eq, try_delete, Conn, FormSeq};

/// The tag of one intermutation head relative to the source bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitClass {
    /// address in the term tree (0/1 per binary node)
    pub at: Vec<u8>,
    pub splitting: bool,
}

fn letters_subset(parts: &[&FormSeq], of: &BTreeSet<String>) -> bool {
    parts.iter().all(|x| x.letters().is_subset(of))
}

/// Tag every intermutation head of `f`: splitting when its two conjunctive
/// blocks draw their letters from different sides of the bipartition.
pub fn classify(f: &StrictTerm, x1: &FormSeq, x2: &FormSeq) -> Result<Vec<SplitClass>> {
    let (src, _) = strict_type(f, Mode::Set)?;
    let l1 = x1.letters();
    let l2 = x2.letters();
    let mut union = l1.clone();
    union.extend(l2.iter().cloned());
    if l1.len() + l2.len() != union.len() || union != src.letters() {
        return Err(Error::PreconditionViolated(
            "bipartition does not cover the source letters".into(),
        ));
    }
    Ok(f.ck_heads()
        .into_iter()
        .map(|(at, [a, b, c, d])| {
            let splitting = (letters_subset(&[a, b], &l1) && letters_subset(&[c, d], &l2))
                || (letters_subset(&[a, b], &l2) && letters_subset(&[c, d], &l1));
            SplitClass { at, splitting }
        })
        .collect())
}

pub fn is_all_splitting(f: &StrictTerm, x1: &FormSeq, x2: &FormSeq) -> Result<bool> {
    Ok(classify(f, x1, x2)?.iter().all(|c| c.splitting))
}

pub fn is_all_nonsplitting(f: &StrictTerm, x1: &FormSeq, x2: &FormSeq) -> Result<bool> {
    Ok(classify(f, x1, x2)?.iter().all(|c| !c.splitting))
}

/// Restrict a form set to the given letters (`None` when nothing is left).
fn keep_only(x: &FormSeq, keep: &BTreeSet<String>) -> Option<FormSeq> {
    let drop: BTreeSet<String> = x.letters().difference(keep).cloned().collect();
    if drop.is_empty() {
        return Some(x.sorted());
    }
    try_delete(x, &drop).map(|y| y.sorted())
}

/// The canonical chain `ck{P1..Pn, Q1..Qn}` of type
/// `(P1&..&Pn)|(Q1&..&Qn) -> (P1|Q1)&..&(Pn|Qn)` with n-1 heads,
/// right-nested.
pub fn canonical_chain(ps: &[FormSeq], qs: &[FormSeq]) -> Result<StrictTerm> {
    if ps.len() != qs.len() || ps.is_empty() {
        return Err(Error::Internal("canonical chain arity mismatch".into()));
    }
    if ps.len() == 1 {
        return Ok(StrictTerm::Id(FormSeq::node(
            Conn::Disj,
            vec![ps[0].clone(), qs[0].clone()],
        )));
    }
    let rest = canonical_chain(&ps[1..], &qs[1..])?;
    let head = StrictTerm::Ck {
        a: ps[0].clone(),
        b: FormSeq::node(Conn::Conj, ps[1..].to_vec()),
        c: qs[0].clone(),
        d: FormSeq::node(Conn::Conj, qs[1..].to_vec()),
    };
    Ok(st_comp(
        st_conj(
            StrictTerm::Id(FormSeq::node(Conn::Disj, vec![ps[0].clone(), qs[0].clone()])),
            rest,
        ),
        head,
    ))
}

/// The canonical all-splitting arrow `y1 | y2 -> y`, built by peeling the
/// head chain at prime conjuncts and distributing prime disjuncts,
/// leftmost first in canonical order.
pub fn splitting_canonical(y1: &FormSeq, y2: &FormSeq, y: &FormSeq) -> Result<StrictTerm> {
    let source = FormSeq::node(Conn::Disj, vec![y1.clone(), y2.clone()]).sorted();
    let y = y.sorted();
    if source == y {
        return Ok(StrictTerm::Id(y));
    }
    match &y {
        FormSeq::Node(Conn::Conj, zs) => {
            let l1 = y1.letters();
            let l2 = y2.letters();
            let mut ps = Vec::with_capacity(zs.len());
            let mut qs = Vec::with_capacity(zs.len());
            for z in zs {
                let p = keep_only(z, &l1).ok_or_else(|| {
                    Error::Internal(format!("conjunct {z} misses the first block"))
                })?;
                let q = keep_only(z, &l2).ok_or_else(|| {
                    Error::Internal(format!("conjunct {z} misses the second block"))
                })?;
                ps.push(p);
                qs.push(q);
            }
            // the chain source must be the given bipartition as a form set
            let chain_src = FormSeq::node(
                Conn::Disj,
                vec![
                    FormSeq::node(Conn::Conj, ps.clone()),
                    FormSeq::node(Conn::Conj, qs.clone()),
                ],
            );
            if !set_eq(&chain_src, &source) {
                return Err(Error::NotAllSplitting);
            }
            let chain = canonical_chain(&ps, &qs)?;
            let mut factors = Vec::with_capacity(zs.len());
            for ((p, q), z) in ps.iter().zip(&qs).zip(zs) {
                factors.push(splitting_canonical(p, q, z)?);
            }
            let tail = factors
                .into_iter()
                .rev()
                .reduce(|acc, x| st_conj(x, acc))
                .unwrap();
            Ok(st_comp(tail, chain))
        }
        FormSeq::Node(Conn::Disj, ws) => {
            // distribute prime disjuncts of y1 and y2 over those of y
            let mut parts = Vec::with_capacity(ws.len());
            for w in ws {
                let lw = w.letters();
                let u = keep_only(y1, &lw);
                let v = keep_only(y2, &lw);
                let part = match (u, v) {
                    (Some(u), Some(v)) => splitting_canonical(&u, &v, w)?,
                    (Some(u), None) => {
                        if !set_eq(&u, w) {
                            return Err(Error::NotAllSplitting);
                        }
                        StrictTerm::Id(w.clone())
                    }
                    (None, Some(v)) => {
                        if !set_eq(&v, w) {
                            return Err(Error::NotAllSplitting);
                        }
                        StrictTerm::Id(w.clone())
                    }
                    (None, None) => return Err(Error::Internal("empty disjunct".into())),
                };
                parts.push(part);
            }
            Ok(parts
                .into_iter()
                .rev()
                .reduce(|acc, x| st_disj(x, acc))
                .unwrap())
        }
        FormSeq::Leaf(_) => Err(Error::NotAllSplitting),
    }
}

/// Factor `f : x1 | x2 -> y` as a nonsplitting part followed by a
/// splitting part. The nonsplitting part is the pair of restrictions of
/// `f`, the splitting part the canonical normal form determined by the
/// interpolated type; the two compose to `f` up to the theory's equations,
/// certified by relation equality.
pub fn factor_split(
    f: &StrictTerm,
    x1: &FormSeq,
    x2: &FormSeq,
) -> Result<(StrictTerm, StrictTerm)> {
    let (src, tgt) = strict_type(f, Mode::Set)?;
    if !set_eq(&FormSeq::node(Conn::Disj, vec![x1.clone(), x2.clone()]), &src) {
        return Err(Error::PreconditionViolated(
            "the bipartition does not present the source as a disjunction".into(),
        ));
    }
    let classes = classify(f, x1, x2)?;
    if classes.iter().all(|c| !c.splitting) {
        return Ok((f.clone(), StrictTerm::Id(tgt)));
    }
    if classes.iter().all(|c| c.splitting) {
        return Ok((StrictTerm::Id(src), f.clone()));
    }
    let g1 = restrict_arrow(f, &x2.letters())?;
    let g2 = restrict_arrow(f, &x1.letters())?;
    let y1 = strict_type(&g1, Mode::Set)?.1;
    let y2 = strict_type(&g2, Mode::Set)?.1;
    let nonsplit = st_disj(g1, g2);
    let split = splitting_canonical(&y1, &y2, &tgt)?;
    Ok((nonsplit, split))
}

/// Split a strict term with conjunction source `x1 & x2` into a parallel
/// pair, one factor per side, certified by relation equality. No
/// intermutation head can bridge the two sides, so the projections always
/// exist.
pub fn conj_split(
    f: &StrictTerm,
    x1: &FormSeq,
    x2: &FormSeq,
) -> Result<(StrictTerm, StrictTerm)> {
    let (src, _) = strict_type(f, Mode::Set)?;
    if !set_eq(&FormSeq::node(Conn::Conj, vec![x1.clone(), x2.clone()]), &src) {
        return Err(Error::PreconditionViolated(
            "the bipartition does not present the source as a conjunction".into(),
        ));
    }
    let f1 = crate::sterm::project_component(f, &x2.letters())?;
    let f2 = crate::sterm::project_component(f, &x1.letters())?;
    let glued = st_conj(f1.clone(), f2.clone());
    if strict_rel(&glued, Mode::Set)? != strict_rel(f, Mode::Set)? {
        return Err(Error::Internal(
            "conjunction split changed the relation".into(),
        ));
    }
    Ok((f1, f2))
}

/// The canonical member of the splitting normal form class with the same
/// type as `f`. Requires `f` to be all-splitting.
pub fn splitting_normal_form(f: &StrictTerm, x1: &FormSeq, x2: &FormSeq) -> Result<StrictTerm> {
    let (_, tgt) = strict_type(f, Mode::Set)?;
    if !is_all_splitting(f, x1, x2)? {
        return Err(Error::NotAllSplitting);
    }
    // the target deletions recover the bipartition (Y^{-Xi} is X(3-i))
    let d1 = try_delete(&tgt, &x1.letters()).map(|z| z.sorted());
    let d2 = try_delete(&tgt, &x2.letters()).map(|z| z.sorted());
    if d1.as_ref() != Some(&x2.sorted()) || d2.as_ref() != Some(&x1.sorted()) {
        return Err(Error::NotAllSplitting);
    }
    let nf = splitting_canonical(&x1.sorted(), &x2.sorted(), &tgt)?;
    let a = strict_rel(&nf, Mode::Set)?;
    let b = strict_rel(f, Mode::Set)?;
    if a != b {
        return Err(Error::Internal(
            "normal form relation deviates from the input".into(),
        ));
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strict::parse_form_seq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

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
    fn classify_base_examples() {
        let t = ck("p", "q", "r", "s");
        let classes = classify(&t, &fs("p&q"), &fs("r&s")).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].splitting);

        // a head entirely inside one side is nonsplitting
        let t = st_disj(StrictTerm::Id(fs("z")), ck("a", "b", "c", "d"));
        let classes = classify(&t, &fs("a&b|(c&d)"), &fs("z")).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(!classes[0].splitting);

        // identities are vacuously both
        let t = StrictTerm::Id(fs("(p&q)|(r&s)"));
        assert!(is_all_splitting(&t, &fs("p&q"), &fs("r&s")).unwrap());
        assert!(is_all_nonsplitting(&t, &fs("p&q"), &fs("r&s")).unwrap());
    }

    #[test]
    fn factor_split_trivial_cases() {
        let t = ck("p", "q", "r", "s");
        let (f1, f2) = factor_split(&t, &fs("p&q"), &fs("r&s")).unwrap();
        assert!(matches!(f1, StrictTerm::Id(_)));
        assert_eq!(f2, t);

        let inner = ck("a", "b", "c", "d");
        let t = st_disj(StrictTerm::Id(fs("z")), inner);
        let (f1, f2) = factor_split(&t, &fs("z"), &fs("(a&b)|(c&d)")).unwrap();
        assert_eq!(f1, t);
        assert!(matches!(f2, StrictTerm::Id(_)));
    }

    #[test]
    fn ladder_normal_form_is_single_chain() {
        // (p1&p2)|(q1&q2) -> (p1|q1)&(p2|q2)
        let f = ck("p1", "p2", "q1", "q2");
        let nf = splitting_normal_form(&f, &fs("p1&p2"), &fs("q1&q2")).unwrap();
        assert_eq!(nf.ck_count(), 1);
        // one-letter chains are identities
        let id = StrictTerm::Id(fs("p|q"));
        let nf = splitting_normal_form(&id, &fs("p"), &fs("q")).unwrap();
        assert_eq!(nf, StrictTerm::Id(fs("p|q")));
    }

    #[test]
    fn mixed_composite_factors_with_equal_relation() {
        // nonsplitting inside x2, then a splitting head over the result
        let x1 = fs("p&q");
        let x2 = fs("(a&b)|(r&s)");
        // x2 first intermutes internally: (a&b)|(r&s) -> (a|r)&(b|s)
        let inner = ck("a", "b", "r", "s");
        let stage1 = st_disj(StrictTerm::Id(x1.clone()), inner);
        // now the source is (p&q)|((a|r)&(b|s)): one splitting head
        let head = ck("p", "q", "a|r", "b|s");
        let f = st_comp(head, stage1);
        let (f1, f2) = factor_split(&f, &x1, &x2).unwrap();
        assert!(is_all_nonsplitting(&f1, &x1, &x2).unwrap());
        assert!(is_all_splitting(&f2, &x1, &x2).unwrap());
        let glued = st_comp(f2.clone(), f1.clone());
        assert_eq!(
            strict_rel(&glued, Mode::Set).unwrap(),
            strict_rel(&f, Mode::Set).unwrap()
        );
        assert_eq!(f1.ck_count() + f2.ck_count(), f.ck_count());
    }

    #[test]
    fn conj_split_round_trips_on_random_terms() {
        // build terms with a conjunction source by pairing two
        // disjunction-sourced terms, then scrambling the grouping
        let mut rng = StdRng::seed_from_u64(123);
        let x1 = fs("(p&q)|(r&s)");
        let x2 = fs("(u&v)|(w&z)");
        for _ in 0..30 {
            let t1 = crate::sterm::random_strict_set_term(&mut rng, &x1, 3);
            let t2 = crate::sterm::random_strict_set_term(&mut rng, &x2, 3);
            let t = crate::sterm::st_conj(t1.clone(), t2.clone());
            let (f1, f2) = conj_split(&t, &x1, &x2).unwrap();
            assert_eq!(
                strict_rel(&f1, Mode::Set).unwrap(),
                strict_rel(&t1, Mode::Set).unwrap()
            );
            assert_eq!(
                strict_rel(&f2, Mode::Set).unwrap(),
                strict_rel(&t2, Mode::Set).unwrap()
            );
        }
        // a composite whose parallel grouping does not match the split
        let t = st_comp(
            crate::sterm::st_conj(
                StrictTerm::Id(x1.clone()),
                ck("u", "v", "w", "z"),
            ),
            StrictTerm::Id(FormSeq::node(Conn::Conj, vec![x1.clone(), x2.clone()])),
        );
        let (f1, f2) = conj_split(&t, &x1, &x2).unwrap();
        assert_eq!(f1.ck_count(), 0);
        assert_eq!(f2.ck_count(), 1);
    }

    #[test]
    fn random_terms_factor_and_normalize() {
        let mut rng = StdRng::seed_from_u64(77);
        let sources = [
            "(p&q)|(r&s)",
            "(p&q&r)|(s&t)|(u&v)",
            "(a&b)|(c&d)|(e&f)|(g&h)",
        ];
        for s in sources {
            let x = fs(s).sorted();
            let FormSeq::Node(Conn::Disj, kids) = &x else {
                panic!()
            };
            for _ in 0..30 {
                let t = crate::sterm::random_strict_set_term(&mut rng, &x, 4);
                // random bipartition of root children
                let cut = rng.random_range(1..kids.len());
                let x1 = FormSeq::node(Conn::Disj, kids[..cut].to_vec());
                let x2 = FormSeq::node(Conn::Disj, kids[cut..].to_vec());
                let (f1, f2) = factor_split(&t, &x1, &x2).unwrap();
                assert!(is_all_nonsplitting(&f1, &x1, &x2).unwrap());
                assert!(is_all_splitting(&f2, &x1, &x2).unwrap());
                let glued = st_comp(f2.clone(), f1.clone());
                assert_eq!(
                    strict_rel(&glued, Mode::Set).unwrap(),
                    strict_rel(&t, Mode::Set).unwrap()
                );
                assert_eq!(f1.ck_count() + f2.ck_count(), t.ck_count(), "{t}");
                // normal form of the splitting part is idempotent
                let tgt = strict_type(&t, Mode::Set).unwrap().1;
                let y1 = try_delete(&tgt, &x2.letters()).unwrap().sorted();
                let y2 = try_delete(&tgt, &x1.letters()).unwrap().sorted();
                let nf = splitting_normal_form(&f2, &y1, &y2).unwrap();
                let nf2 = splitting_normal_form(&nf, &y1, &y2).unwrap();
                assert_eq!(nf, nf2);
            }
        }
    }
}
