//! Seeded random generators for formulas and well-typed arrow terms.
//! Used by the axiom runner and by the randomized test suites.

use rand::rngs::StdRng;
use rand::Rng;

use crate::formula::{conj, disj, Formula, Path};
use crate::term::{beta_term, scomp, ArrowTerm, BetaStep, Gen, GenKind, Theory};

/// A random constant-free formula with up to `max_occ` letter occurrences
/// (at least one). Letters are drawn with repetition.
pub fn random_constant_free_formula(rng: &mut StdRng, letters: &[&str], max_occ: usize) -> Formula {
    let n = rng.random_range(1..=max_occ.max(1));
    random_tree(rng, letters, n, false)
}

/// A random formula that may contain `T` and `F` leaves.
pub fn random_formula(rng: &mut StdRng, letters: &[&str], max_leaves: usize) -> Formula {
    let n = rng.random_range(1..=max_leaves.max(1));
    random_tree(rng, letters, n, true)
}

fn random_tree(rng: &mut StdRng, letters: &[&str], leaves: usize, consts: bool) -> Formula {
    if leaves <= 1 {
        if consts && rng.random_bool(0.25) {
            return if rng.random_bool(0.5) {
                Formula::Top
            } else {
                Formula::Bot
            };
        }
        let p = letters[rng.random_range(0..letters.len())];
        return Formula::Letter(p.to_string());
    }
    let left = rng.random_range(1..leaves);
    let l = random_tree(rng, letters, left, consts);
    let r = random_tree(rng, letters, leaves - left, consts);
    if rng.random_bool(0.5) {
        conj(l, r)
    } else {
        disj(l, r)
    }
}

/// A random diversified constant-free formula on `n` fresh letters.
pub fn random_diversified_formula(rng: &mut StdRng, n: usize) -> Formula {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    fn build(rng: &mut StdRng, names: &[String]) -> Formula {
        if names.len() == 1 {
            return Formula::Letter(names[0].clone());
        }
        let split = rng.random_range(1..names.len());
        let l = build(rng, &names[..split]);
        let r = build(rng, &names[split..]);
        if rng.random_bool(0.5) {
            conj(l, r)
        } else {
            disj(l, r)
        }
    }
    build(rng, &names)
}

/// All single-generator moves out of `a` that stay inside theory `t`.
/// Expanding moves (which invent a `T`/`F` or a fresh index) are included
/// only when `expanders` is true.
pub fn moves_from(a: &Formula, t: Theory, expanders: bool) -> Vec<BetaStep> {
    let mut out = Vec::new();
    collect_moves(a, t, expanders, &Path::root(), &mut out);
    out
}

fn collect_moves(a: &Formula, t: Theory, expanders: bool, at: &Path, out: &mut Vec<BetaStep>) {
    use crate::formula::Dir;
    let mut push = |head: Gen| {
        if t.allows(head.kind()) && !(t.letterless_only() && !head.source().is_letterless()) {
            out.push(BetaStep {
                head,
                path: at.clone(),
            });
        }
    };
    match a {
        Formula::Conj(l, r) => {
            push(Gen::Hc((**l).clone(), (**r).clone()));
            push(Gen::Hk1((**l).clone(), (**r).clone()));
            push(Gen::Hk2((**l).clone(), (**r).clone()));
            if let Formula::Conj(rl, rr) = &**r {
                push(Gen::HbPlus((**l).clone(), (**rl).clone(), (**rr).clone()));
            }
            if let Formula::Conj(ll, lr) = &**l {
                push(Gen::HbMinus((**ll).clone(), (**lr).clone(), (**r).clone()));
            }
            if **r == Formula::Top {
                push(Gen::HdPlus((**l).clone()));
            }
            if **l == Formula::Top {
                push(Gen::HsPlus((**r).clone()));
            }
            if **l == Formula::Bot && **r == Formula::Bot {
                push(Gen::HwBotPlus);
            }
        }
        Formula::Disj(l, r) => {
            push(Gen::Vc((**l).clone(), (**r).clone()));
            if l == r {
                push(Gen::Vw((**l).clone()));
            }
            if let Formula::Disj(rl, rr) = &**r {
                push(Gen::VbPlus((**l).clone(), (**rl).clone(), (**rr).clone()));
            }
            if let Formula::Disj(ll, lr) = &**l {
                push(Gen::VbMinus((**ll).clone(), (**lr).clone(), (**r).clone()));
            }
            if **r == Formula::Bot {
                push(Gen::VdPlus((**l).clone()));
            }
            if **l == Formula::Bot {
                push(Gen::VsPlus((**r).clone()));
            }
            if **l == Formula::Top && **r == Formula::Top {
                push(Gen::VwTopPlus);
            }
            if let (Formula::Conj(s, u), Formula::Conj(v, w)) = (&**l, &**r) {
                push(Gen::Ck(
                    (**s).clone(),
                    (**u).clone(),
                    (**v).clone(),
                    (**w).clone(),
                ));
            }
        }
        Formula::Bot => {
            push(Gen::Kappa);
            push(Gen::HwBotMinus);
        }
        Formula::Top => {
            push(Gen::VwTopMinus);
        }
        Formula::Letter(_) => {}
    }
    if expanders {
        push(Gen::HdMinus(a.clone()));
        push(Gen::HsMinus(a.clone()));
        push(Gen::VdMinus(a.clone()));
        push(Gen::VsMinus(a.clone()));
        push(Gen::Hw(a.clone()));
        push(Gen::Vk1(a.clone(), Formula::Letter("z0".into())));
        push(Gen::Vk2(Formula::Letter("z0".into()), a.clone()));
    }
    if let Formula::Conj(l, r) | Formula::Disj(l, r) = a {
        collect_moves(l, t, expanders, &at.child(Dir::L), out);
        collect_moves(r, t, expanders, &at.child(Dir::R), out);
    }
}

/// A random well-typed arrow term of theory `t` starting at `source`,
/// composed of up to `steps` single-generator factors.
pub fn random_term(rng: &mut StdRng, source: &Formula, t: Theory, steps: usize) -> ArrowTerm {
    let mut term = ArrowTerm::Id(source.clone());
    let mut cur = source.clone();
    let has_expanders = t.allows(GenKind::HdMinus) || t.allows(GenKind::Hw);
    for _ in 0..steps {
        // throttle expanders so terms do not balloon
        let expanders = has_expanders && rng.random_bool(0.3) && cur.occ_count() < 10;
        let mut moves = moves_from(&cur, t, expanders);
        if moves.is_empty() && has_expanders {
            moves = moves_from(&cur, t, true);
        }
        if moves.is_empty() {
            break;
        }
        let step = moves.swap_remove(rng.random_range(0..moves.len()));
        let factor = beta_term(&cur, &step).expect("sampled step applies");
        cur = crate::term::apply_step(&cur, &step).expect("sampled step applies");
        term = scomp(factor, term);
    }
    term
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn sampled_terms_are_well_typed_in_their_theory() {
        let mut rng = StdRng::seed_from_u64(11);
        let letters = ["p", "q", "r"];
        for t in crate::term::ALL_THEORIES {
            for _ in 0..20 {
                let src = if t.letterless_only() {
                    if rng.random_bool(0.5) {
                        Formula::Top
                    } else {
                        Formula::Bot
                    }
                } else {
                    random_formula(&mut rng, &letters, 4)
                };
                let term = random_term(&mut rng, &src, t, 5);
                assert!(term.type_of().is_ok());
                assert!(
                    crate::term::validate_in_theory(&term, t),
                    "{term} escaped {t}"
                );
            }
        }
    }

    #[test]
    fn diversified_sampler_is_diversified() {
        let mut rng = StdRng::seed_from_u64(3);
        for n in 1..8 {
            let f = random_diversified_formula(&mut rng, n);
            assert!(f.is_diversified());
            assert_eq!(f.occ_count(), n);
        }
    }
}
