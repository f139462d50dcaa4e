//! Reduction of bijective lattice arrows to the symmetric intermuting
//! fragment. Diagonals and codiagonals are first pushed down to letter
//! indices; projections are then walked back towards the source and
//! injections forward towards the target, transforming through the
//! associativity, symmetry and intermutation heads they meet, until each
//! cancels against the diagonal or codiagonal that created its occurrences.

use crate::error::{Error, Result};
use crate::formula::{Dir, Formula, Path};
use crate::semantics::schemas::{cm_conj, cm_disj};
use crate::semantics::{eval_mat, eval_rel};
use crate::term::{
    comp, develop, par_conj, par_disj, validate_in_theory, ArrowTerm, BetaStep, Development, Gen,
    GenKind, Theory,
};

/// Rewrite a lattice arrow with bijective relation image (and 0/1
/// permutation matrix image) into an arrow of the symmetric intermuting
/// fragment with the same type and the same matrix. Returns `None` when
/// the image is not bijective or the endpoints carry constants.
pub fn lattice_reduce(f: &ArrowTerm) -> Result<Option<ArrowTerm>> {
    if !validate_in_theory(f, Theory::L) {
        return Err(Error::GeneratorNotInTheory {
            gen: "non-lattice generator".into(),
            theory: "L".into(),
        });
    }
    let (src, tgt) = f.type_of()?;
    if !src.is_constant_free() || !tgt.is_constant_free() {
        return Ok(None);
    }
    let rel = eval_rel(f)?;
    let mat = eval_mat(f)?;
    if !rel.is_bijection() || !mat.is_permutation() {
        return Ok(None);
    }

    let mut dev = develop(f)?;
    atomize_w(&mut dev)?;
    eliminate_projections(&mut dev)?;
    eliminate_injections(&mut dev)?;

    for s in &dev.steps {
        if matches!(
            s.head.kind(),
            GenKind::Hw | GenKind::Vw | GenKind::Hk1 | GenKind::Hk2 | GenKind::Vk1 | GenKind::Vk2
        ) {
            return Err(Error::Internal(format!(
                "lattice generator {} survived reduction",
                s.head
            )));
        }
    }

    let out = dev.to_term()?;
    if out.type_of()? != (src, tgt) {
        return Err(Error::Internal("reduction changed the type".into()));
    }
    if eval_mat(&out)? != mat {
        return Err(Error::Internal("reduction changed the matrix".into()));
    }
    debug_assert!(validate_in_theory(&out, Theory::SCk));
    Ok(Some(out))
}

const FUEL_LIMIT: usize = 400_000;

// ---------------------------------------------------------------------------
// phase one: diagonals and codiagonals down to letter indices

fn atomize_w(dev: &mut Development) -> Result<()> {
    let mut fuel = FUEL_LIMIT;
    loop {
        let Some(j) = dev.steps.iter().position(|s| {
            matches!(
                (&s.head, s.head.kind()),
                (Gen::Hw(a), GenKind::Hw) | (Gen::Vw(a), GenKind::Vw)
                    if !matches!(a, Formula::Letter(_))
            )
        }) else {
            return Ok(());
        };
        let step = dev.steps[j].clone();
        let expansion = match &step.head {
            Gen::Hw(x) => match x {
                Formula::Conj(a, b) => comp(
                    cm_conj(a, a, b, b),
                    par_conj(
                        ArrowTerm::Prim(Gen::Hw((**a).clone())),
                        ArrowTerm::Prim(Gen::Hw((**b).clone())),
                    ),
                ),
                Formula::Disj(a, b) => comp(
                    ArrowTerm::Prim(Gen::Ck((**a).clone(), (**a).clone(), (**b).clone(), (**b).clone())),
                    par_disj(
                        ArrowTerm::Prim(Gen::Hw((**a).clone())),
                        ArrowTerm::Prim(Gen::Hw((**b).clone())),
                    ),
                ),
                _ => return Err(Error::Internal("diagonal over a constant".into())),
            },
            Gen::Vw(x) => match x {
                Formula::Disj(a, b) => comp(
                    par_disj(
                        ArrowTerm::Prim(Gen::Vw((**a).clone())),
                        ArrowTerm::Prim(Gen::Vw((**b).clone())),
                    ),
                    cm_disj(a, b, a, b),
                ),
                Formula::Conj(a, b) => comp(
                    par_conj(
                        ArrowTerm::Prim(Gen::Vw((**a).clone())),
                        ArrowTerm::Prim(Gen::Vw((**b).clone())),
                    ),
                    ArrowTerm::Prim(Gen::Ck((**a).clone(), (**b).clone(), (**a).clone(), (**b).clone())),
                ),
                _ => return Err(Error::Internal("codiagonal over a constant".into())),
            },
            _ => unreachable!(),
        };
        let inner = develop(&expansion)?;
        let spliced: Vec<BetaStep> = inner
            .steps
            .into_iter()
            .map(|s| BetaStep {
                head: s.head,
                path: step.path.join(&s.path.0),
            })
            .collect();
        dev.steps.splice(j..=j, spliced);
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::Internal("diagonal atomization ran out of fuel".into()));
        }
    }
}

// ---------------------------------------------------------------------------
// geometry of heads: how target positions map to source positions

const L: Dir = Dir::L;
const R: Dir = Dir::R;

/// `(target_prefix, source_prefix)` for every full index of the head.
fn geometry(g: &Gen) -> Vec<(Vec<Dir>, Vec<Dir>)> {
    match g.kind() {
        GenKind::HbPlus | GenKind::VbPlus => vec![
            (vec![L, L], vec![L]),
            (vec![L, R], vec![R, L]),
            (vec![R], vec![R, R]),
        ],
        GenKind::HbMinus | GenKind::VbMinus => vec![
            (vec![L], vec![L, L]),
            (vec![R, L], vec![L, R]),
            (vec![R, R], vec![R]),
        ],
        GenKind::Hc | GenKind::Vc => vec![(vec![L], vec![R]), (vec![R], vec![L])],
        GenKind::Ck => vec![
            (vec![L, L], vec![L, L]),
            (vec![L, R], vec![R, L]),
            (vec![R, L], vec![L, R]),
            (vec![R, R], vec![R, R]),
        ],
        GenKind::Vk1 => vec![(vec![L], vec![])],
        GenKind::Vk2 => vec![(vec![R], vec![])],
        GenKind::Hk1 => vec![(vec![], vec![L])],
        GenKind::Hk2 => vec![(vec![], vec![R])],
        _ => vec![],
    }
}

/// Map a strictly-inside target position to the matching source position.
fn transport_back(g: &Gen, rel: &[Dir]) -> Option<Vec<Dir>> {
    geometry(g).into_iter().find_map(|(tgt_pfx, src_pfx)| {
        rel.strip_prefix(&tgt_pfx[..]).map(|rest| {
            let mut out = src_pfx;
            out.extend_from_slice(rest);
            out
        })
    })
}

/// Map a strictly-inside source position to the matching target position.
fn transport_forward(g: &Gen, rel: &[Dir]) -> Option<Vec<Dir>> {
    geometry(g).into_iter().find_map(|(tgt_pfx, src_pfx)| {
        rel.strip_prefix(&src_pfx[..]).map(|rest| {
            let mut out = tgt_pfx;
            out.extend_from_slice(rest);
            out
        })
    })
}

// ---------------------------------------------------------------------------
// phase two: projections pushed back to their diagonals

fn is_projection(k: GenKind) -> bool {
    matches!(k, GenKind::Hk1 | GenKind::Hk2)
}

fn is_injection(k: GenKind) -> bool {
    matches!(k, GenKind::Vk1 | GenKind::Vk2)
}

fn eliminate_projections(dev: &mut Development) -> Result<()> {
    let mut fuel = FUEL_LIMIT;
    loop {
        let Some(j) = dev.steps.iter().position(|s| is_projection(s.head.kind())) else {
            return Ok(());
        };
        if j == 0 {
            return Err(Error::Internal(
                "projection reached the source of a bijective arrow".into(),
            ));
        }
        let g = dev.steps[j - 1].clone();
        let k = dev.steps[j].clone();
        let replacement = push_projection_back(&g, &k)?;
        dev.steps.splice(j - 1..=j, replacement);
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::Internal("projection elimination ran out of fuel".into()));
        }
    }
}

/// The kept and deleted index of a projection, with the side the kept one
/// sits on.
fn projection_parts(k: &Gen) -> (Formula, Formula, Dir) {
    match k {
        Gen::Hk1(c, d) => (c.clone(), d.clone(), L),
        Gen::Hk2(d, c) => (c.clone(), d.clone(), R),
        _ => unreachable!(),
    }
}

fn mk_projection(kept: Formula, deleted: Formula, kept_side: Dir) -> Gen {
    match kept_side {
        Dir::L => Gen::Hk1(kept, deleted),
        Dir::R => Gen::Hk2(deleted, kept),
    }
}

fn push_projection_back(g: &BetaStep, k: &BetaStep) -> Result<Vec<BetaStep>> {
    let rho = &g.path;
    let pi = &k.path;
    let (kept, deleted, kept_side) = projection_parts(&k.head);

    // branches ordered by path relation
    if let Some(rel) = rho.strip_prefix(pi) {
        if rel.is_empty() {
            return projection_at_node(g, k);
        }
        // g acts inside the projection's node
        let rest = &rel[1..];
        if rel[0] == kept_side {
            // naturality: the projection slides before g
            let kept_pre = kept.replace(rest, g.head.source());
            let new_k = BetaStep {
                head: mk_projection(kept_pre, deleted.clone(), kept_side),
                path: pi.clone(),
            };
            let new_g = BetaStep {
                head: g.head.clone(),
                path: pi.join(rest),
            };
            return Ok(vec![new_k, new_g]);
        }
        // g worked inside the deleted part: absorb it
        let deleted_pre = deleted.replace(rest, g.head.source());
        return Ok(vec![BetaStep {
            head: mk_projection(kept, deleted_pre, kept_side),
            path: pi.clone(),
        }]);
    }

    if let Some(rel) = pi.strip_prefix(rho) {
        // rel nonempty here: the projection sits inside g's head target
        return projection_inside_head(g, k, rel);
    }

    // disjoint: plain swap
    Ok(vec![k.clone(), g.clone()])
}

fn step(head: Gen, path: Path) -> BetaStep {
    BetaStep { head, path }
}

/// The projection's node coincides with g's head target.
fn projection_at_node(g: &BetaStep, k: &BetaStep) -> Result<Vec<BetaStep>> {
    let rho = &g.path;
    let (_, _, kept_side) = projection_parts(&k.head);
    Ok(match &g.head {
        Gen::Hw(_) => vec![],
        Gen::Hc(a, b) => {
            // target b&a; keeping the left of it keeps b
            let h = match kept_side {
                Dir::L => Gen::Hk2(a.clone(), b.clone()),
                Dir::R => Gen::Hk1(a.clone(), b.clone()),
            };
            vec![step(h, rho.clone())]
        }
        Gen::HbPlus(p, q, r) => match kept_side {
            // keep p&q, drop r
            Dir::L => vec![step(
                Gen::Hk1(q.clone(), r.clone()),
                rho.child(R),
            )],
            // drop p&q, keep r
            Dir::R => vec![
                step(
                    Gen::Hk2(p.clone(), crate::formula::conj(q.clone(), r.clone())),
                    rho.clone(),
                ),
                step(Gen::Hk2(q.clone(), r.clone()), rho.clone()),
            ],
        },
        Gen::HbMinus(p, q, r) => match kept_side {
            // keep p, drop q&r
            Dir::L => vec![
                step(
                    Gen::Hk1(crate::formula::conj(p.clone(), q.clone()), r.clone()),
                    rho.clone(),
                ),
                step(Gen::Hk1(p.clone(), q.clone()), rho.clone()),
            ],
            // drop p, keep q&r
            Dir::R => vec![step(Gen::Hk2(p.clone(), q.clone()), rho.child(L))],
        },
        Gen::Ck(a, b, c, d) => {
            let (l, r) = match kept_side {
                Dir::L => (Gen::Hk1(a.clone(), b.clone()), Gen::Hk1(c.clone(), d.clone())),
                Dir::R => (Gen::Hk2(a.clone(), b.clone()), Gen::Hk2(c.clone(), d.clone())),
            };
            vec![step(l, rho.child(L)), step(r, rho.child(R))]
        }
        other => {
            return Err(Error::Internal(format!(
                "projection met head {other} at its own node"
            )))
        }
    })
}

/// The projection sits strictly inside g's head target.
fn projection_inside_head(g: &BetaStep, k: &BetaStep, rel: &[Dir]) -> Result<Vec<BetaStep>> {
    let rho = &g.path;
    let (kept, deleted, kept_side) = projection_parts(&k.head);

    // internal shape nodes of the reassociation heads
    if let Gen::HbPlus(p, q, r) = &g.head {
        if rel == [L] {
            // the projection splits the new p&q node
            return Ok(match kept_side {
                Dir::L => vec![step(Gen::Hk2(q.clone(), r.clone()), rho.child(R))],
                Dir::R => vec![step(
                    Gen::Hk2(p.clone(), crate::formula::conj(q.clone(), r.clone())),
                    rho.clone(),
                )],
            });
        }
    }
    if let Gen::HbMinus(p, q, r) = &g.head {
        if rel == [R] {
            // the projection splits the new q&r node
            return Ok(match kept_side {
                Dir::L => vec![step(
                    Gen::Hk1(crate::formula::conj(p.clone(), q.clone()), r.clone()),
                    rho.clone(),
                )],
                Dir::R => vec![step(Gen::Hk1(p.clone(), q.clone()), rho.child(L))],
            });
        }
    }

    // injections: absorb into the phantom or slide along the real side
    if let Gen::Vk1(c, d) = &g.head {
        return Ok(match rel[0] {
            Dir::L => {
                let new_pi = rho.join(&rel[1..]);
                let c_pre = c.replace(&rel[1..], k.head.target());
                vec![
                    step(k.head.clone(), new_pi),
                    step(Gen::Vk1(c_pre, d.clone()), rho.clone()),
                ]
            }
            Dir::R => {
                let d_post = d.replace(&rel[1..], k.head.target());
                vec![step(Gen::Vk1(c.clone(), d_post), rho.clone())]
            }
        });
    }
    if let Gen::Vk2(d, c) = &g.head {
        return Ok(match rel[0] {
            Dir::R => {
                let new_pi = rho.join(&rel[1..]);
                let c_pre = c.replace(&rel[1..], k.head.target());
                vec![
                    step(k.head.clone(), new_pi),
                    step(Gen::Vk2(d.clone(), c_pre), rho.clone()),
                ]
            }
            Dir::L => {
                let d_post = d.replace(&rel[1..], k.head.target());
                vec![step(Gen::Vk2(d_post, c.clone()), rho.clone())]
            }
        });
    }

    // everything else transports through a full index by naturality
    let _ = (kept, deleted, kept_side);
    let Some(src_rel) = transport_back(&g.head, rel) else {
        return Err(Error::Internal(format!(
            "projection could not transport through {}",
            g.head
        )));
    };
    let new_pi = rho.join(&src_rel);
    // the head survives with the projected index shrunk
    let new_src = g.head.source().replace(&src_rel, k.head.target());
    let new_head = g.head.rebuild_from_source(&new_src)?;
    Ok(vec![
        step(k.head.clone(), new_pi),
        step(new_head, rho.clone()),
    ])
}

// ---------------------------------------------------------------------------
// phase three: injections pushed forward to their codiagonals

fn eliminate_injections(dev: &mut Development) -> Result<()> {
    let mut fuel = FUEL_LIMIT;
    loop {
        let Some(j) = dev.steps.iter().rposition(|s| is_injection(s.head.kind())) else {
            return Ok(());
        };
        if j + 1 == dev.steps.len() {
            return Err(Error::Internal(
                "injection reached the target of a bijective arrow".into(),
            ));
        }
        let k = dev.steps[j].clone();
        let g = dev.steps[j + 1].clone();
        let replacement = push_injection_forward(&k, &g)?;
        dev.steps.splice(j..=j + 1, replacement);
        fuel -= 1;
        if fuel == 0 {
            return Err(Error::Internal("injection elimination ran out of fuel".into()));
        }
    }
}

fn injection_parts(k: &Gen) -> (Formula, Formula, Dir) {
    match k {
        Gen::Vk1(c, d) => (c.clone(), d.clone(), L),
        Gen::Vk2(d, c) => (c.clone(), d.clone(), R),
        _ => unreachable!(),
    }
}

fn mk_injection(kept: Formula, phantom: Formula, kept_side: Dir) -> Gen {
    match kept_side {
        Dir::L => Gen::Vk1(kept, phantom),
        Dir::R => Gen::Vk2(phantom, kept),
    }
}

fn push_injection_forward(k: &BetaStep, g: &BetaStep) -> Result<Vec<BetaStep>> {
    let pi = &k.path;
    let rho = &g.path;
    let (kept, phantom, kept_side) = injection_parts(&k.head);

    if let Some(rel) = rho.strip_prefix(pi) {
        if rel.is_empty() {
            return injection_at_node(k, g);
        }
        let rest = &rel[1..];
        if rel[0] == kept_side {
            // g slides before the injection
            let new_g = BetaStep {
                head: g.head.clone(),
                path: pi.join(rest),
            };
            let kept_post = kept.replace(rest, g.head.target());
            let new_k = BetaStep {
                head: mk_injection(kept_post, phantom.clone(), kept_side),
                path: pi.clone(),
            };
            return Ok(vec![new_g, new_k]);
        }
        // g works inside the phantom: absorb it
        let phantom_post = phantom.replace(rest, g.head.target());
        return Ok(vec![BetaStep {
            head: mk_injection(kept, phantom_post, kept_side),
            path: pi.clone(),
        }]);
    }

    if let Some(rel) = pi.strip_prefix(rho) {
        return injection_inside_head(k, g, rel);
    }

    Ok(vec![g.clone(), k.clone()])
}

/// The injection's node coincides with g's head source.
fn injection_at_node(k: &BetaStep, g: &BetaStep) -> Result<Vec<BetaStep>> {
    let rho = &g.path;
    let (_, _, kept_side) = injection_parts(&k.head);
    Ok(match &g.head {
        Gen::Vw(_) => vec![],
        Gen::Vc(a, b) => {
            let h = match kept_side {
                Dir::L => Gen::Vk2(b.clone(), a.clone()),
                Dir::R => Gen::Vk1(b.clone(), a.clone()),
            };
            vec![step(h, rho.clone())]
        }
        Gen::VbPlus(p, q, r) => match kept_side {
            // the injection supplies p, the phantom is q|r
            Dir::L => vec![
                step(Gen::Vk1(p.clone(), q.clone()), rho.clone()),
                step(
                    Gen::Vk1(crate::formula::disj(p.clone(), q.clone()), r.clone()),
                    rho.clone(),
                ),
            ],
            // the injection supplies q|r, the phantom is p
            Dir::R => vec![step(Gen::Vk2(p.clone(), q.clone()), rho.child(L))],
        },
        Gen::VbMinus(p, q, r) => match kept_side {
            Dir::L => vec![step(Gen::Vk1(q.clone(), r.clone()), rho.child(R))],
            Dir::R => vec![
                step(Gen::Vk2(q.clone(), r.clone()), rho.clone()),
                step(
                    Gen::Vk2(p.clone(), crate::formula::disj(q.clone(), r.clone())),
                    rho.clone(),
                ),
            ],
        },
        Gen::Ck(a, b, c, d) => {
            let (l, r) = match kept_side {
                Dir::L => (Gen::Vk1(a.clone(), c.clone()), Gen::Vk1(b.clone(), d.clone())),
                Dir::R => (Gen::Vk2(a.clone(), c.clone()), Gen::Vk2(b.clone(), d.clone())),
            };
            vec![step(l, rho.child(L)), step(r, rho.child(R))]
        }
        other => {
            return Err(Error::Internal(format!(
                "injection met head {other} at its own node"
            )))
        }
    })
}

/// The injection's node sits strictly inside g's head source.
fn injection_inside_head(k: &BetaStep, g: &BetaStep, rel: &[Dir]) -> Result<Vec<BetaStep>> {
    let rho = &g.path;
    let (kept, _phantom, kept_side) = injection_parts(&k.head);

    if let Gen::VbPlus(p, q, r) = &g.head {
        if rel == [R] {
            // the injection built the q|r node
            return Ok(match kept_side {
                Dir::L => vec![step(
                    Gen::Vk1(crate::formula::disj(p.clone(), q.clone()), r.clone()),
                    rho.clone(),
                )],
                Dir::R => vec![step(Gen::Vk1(p.clone(), q.clone()), rho.child(L))],
            });
        }
    }
    if let Gen::VbMinus(p, q, r) = &g.head {
        if rel == [L] {
            // the injection built the p|q node
            return Ok(match kept_side {
                Dir::L => vec![step(Gen::Vk2(q.clone(), r.clone()), rho.child(R))],
                Dir::R => vec![step(
                    Gen::Vk2(p.clone(), crate::formula::disj(q.clone(), r.clone())),
                    rho.clone(),
                )],
            });
        }
    }

    let Some(tgt_rel) = transport_forward(&g.head, rel) else {
        return Err(Error::Internal(format!(
            "injection could not transport through {}",
            g.head
        )));
    };
    // g acts first, on the object without the injection's phantom
    let pre_src = g.head.source().replace(rel, kept.clone());
    let new_head = g.head.rebuild_from_source(&pre_src)?;
    let new_pi = rho.join(&tgt_rel);
    Ok(vec![
        step(new_head, rho.clone()),
        step(k.head.clone(), new_pi),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::sampling::{random_constant_free_formula, random_term};
    use crate::term::parse_arrow;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn pa(s: &str) -> ArrowTerm {
        parse_arrow(s).unwrap()
    }

    #[test]
    fn identity_reduces_to_itself() {
        let f = pa("id{p}");
        assert_eq!(lattice_reduce(&f).unwrap(), Some(f));
    }

    #[test]
    fn plain_projection_is_not_bijective() {
        assert_eq!(lattice_reduce(&pa("hk1{p,q}")).unwrap(), None);
    }

    #[test]
    fn diagonal_then_projection_cancels() {
        let f = pa("hk1{p,p} . hw{p}");
        let out = lattice_reduce(&f).unwrap().expect("bijective");
        assert_eq!(out, pa("id{p}"));
    }

    #[test]
    fn injection_then_codiagonal_cancels() {
        let f = pa("vw{p} . vk2{p,p}");
        let out = lattice_reduce(&f).unwrap().expect("bijective");
        assert_eq!(out, pa("id{p}"));
    }

    #[test]
    fn lattice_definition_of_ck_reduces() {
        // ck at letters through the meet-side definitional equation
        let f = pa("((hk1{p,q} | hk1{r,s}) & (hk2{p,q} | hk2{r,s})) . hw{(p&q)|(r&s)}");
        let out = lattice_reduce(&f).unwrap().expect("bijective");
        assert_eq!(
            eval_mat(&out).unwrap(),
            eval_mat(&pa("ck{p,q,r,s}")).unwrap()
        );
        assert!(validate_in_theory(&out, Theory::SCk));
    }

    #[test]
    fn lattice_definition_of_hc_reduces() {
        let f = pa("(hk2{p,q} & hk1{p,q}) . hw{p&q}");
        let out = lattice_reduce(&f).unwrap().expect("bijective");
        assert_eq!(eval_mat(&out).unwrap(), eval_mat(&pa("hc{p,q}")).unwrap());
    }

    #[test]
    fn join_side_definition_of_ck_reduces() {
        let f = pa("vw{(p|r)&(q|s)} . ((vk1{p,r} & vk1{q,s}) | (vk2{p,r} & vk2{q,s}))");
        let out = lattice_reduce(&f).unwrap().expect("bijective");
        assert_eq!(
            eval_mat(&out).unwrap(),
            eval_mat(&pa("ck{p,q,r,s}")).unwrap()
        );
        assert!(validate_in_theory(&out, Theory::SCk));
    }

    #[test]
    fn random_sck_expansions_reduce() {
        let mut rng = StdRng::seed_from_u64(2024);
        let letters = ["p", "q", "r", "s"];
        let mut reduced = 0;
        for _ in 0..15 {
            let src = random_constant_free_formula(&mut rng, &letters, 5);
            let f = random_term(&mut rng, &src, Theory::SCk, 4);
            let expanded = crate::semantics::expand_to_lattice(&f, &mut rng).unwrap();
            let out = lattice_reduce(&expanded)
                .unwrap()
                .expect("expanded terms stay bijective");
            assert_eq!(eval_mat(&out).unwrap(), eval_mat(&f).unwrap());
            assert!(validate_in_theory(&out, Theory::SCk));
            reduced += 1;
        }
        assert_eq!(reduced, 15);
    }
}
