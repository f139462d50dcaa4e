//! The equation-schema catalogue and its model checker. A schema names an
//! equation between two arrow-term builders over metavariable formulas;
//! checking evaluates both sides to matrices and compares entrywise.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::formula::{conj, disj, Formula};
use crate::sampling::random_constant_free_formula;
use crate::semantics::eval_mat;
use crate::term::{comp, par_conj, par_disj, ArrowTerm, Gen, Theory};

type Build = fn(&[Formula]) -> (ArrowTerm, ArrowTerm);

/// One equation schema. `theory` is the smallest theory of the table that
/// contains every generator the schema mentions.
#[derive(Clone)]
pub struct Schema {
    pub name: &'static str,
    pub arity: usize,
    pub theory: Theory,
    build: Build,
}

impl Schema {
    pub fn build(&self, args: &[Formula]) -> Result<(ArrowTerm, ArrowTerm)> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch(format!(
                "schema {} expects {} formulas, got {}",
                self.name,
                self.arity,
                args.len()
            )));
        }
        Ok((self.build)(args))
    }
}

fn i(a: &Formula) -> ArrowTerm {
    ArrowTerm::Id(a.clone())
}

fn g(x: Gen) -> ArrowTerm {
    ArrowTerm::Prim(x)
}

fn and(a: &Formula, b: &Formula) -> Formula {
    conj(a.clone(), b.clone())
}

fn or(a: &Formula, b: &Formula) -> Formula {
    disj(a.clone(), b.clone())
}

/// `chain([f, g, h])` is `f . g . h`, the rightmost applied first.
fn chain(parts: Vec<ArrowTerm>) -> ArrowTerm {
    parts.into_iter().reduce(comp).expect("chain of nothing")
}

fn f2(x: &Formula) -> Formula {
    x.clone()
}

/// The derived medial for `&`: `(A&B)&(C&D) -> (A&C)&(B&D)` spelled with
/// associativity and symmetry arrows.
pub(crate) fn cm_conj(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> ArrowTerm {
    chain(vec![
        g(Gen::HbPlus(f2(a), f2(c), and(b, d))),
        par_conj(
            i(a),
            chain(vec![
                g(Gen::HbMinus(f2(c), f2(b), f2(d))),
                par_conj(g(Gen::Hc(f2(b), f2(c))), i(d)),
                g(Gen::HbPlus(f2(b), f2(c), f2(d))),
            ]),
        ),
        g(Gen::HbMinus(f2(a), f2(b), and(c, d))),
    ])
}

/// The derived medial for `|`: `(A|B)|(C|D) -> (A|C)|(B|D)`.
pub(crate) fn cm_disj(a: &Formula, b: &Formula, c: &Formula, d: &Formula) -> ArrowTerm {
    chain(vec![
        g(Gen::VbPlus(f2(a), f2(c), or(b, d))),
        par_disj(
            i(a),
            chain(vec![
                g(Gen::VbMinus(f2(c), f2(b), f2(d))),
                par_disj(g(Gen::Vc(f2(b), f2(c))), i(d)),
                g(Gen::VbPlus(f2(b), f2(c), f2(d))),
            ]),
        ),
        g(Gen::VbMinus(f2(a), f2(b), or(c, d))),
    ])
}

macro_rules! schema {
    ($name:literal, $arity:expr, $theory:expr, $build:expr) => {
        Schema {
            name: $name,
            arity: $arity,
            theory: $theory,
            build: $build,
        }
    };
}

/// Every equation schema, in catalogue order.
pub fn catalogue() -> Vec<Schema> {
    use Gen::*;
    
    vec![
        // pentagons
        schema!("pentagon-conj", 4, Theory::A, |v| {
            let [a, b, c, d] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(HbPlus(and(a, b), f2(c), f2(d))),
                    g(HbPlus(f2(a), f2(b), and(c, d))),
                ]),
                chain(vec![
                    par_conj(g(HbPlus(f2(a), f2(b), f2(c))), i(d)),
                    g(HbPlus(f2(a), and(b, c), f2(d))),
                    par_conj(i(a), g(HbPlus(f2(b), f2(c), f2(d)))),
                ]),
            )
        }),
        schema!("pentagon-disj", 4, Theory::A, |v| {
            let [a, b, c, d] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(VbPlus(or(a, b), f2(c), f2(d))),
                    g(VbPlus(f2(a), f2(b), or(c, d))),
                ]),
                chain(vec![
                    par_disj(g(VbPlus(f2(a), f2(b), f2(c))), i(d)),
                    g(VbPlus(f2(a), or(b, c), f2(d))),
                    par_disj(i(a), g(VbPlus(f2(b), f2(c), f2(d)))),
                ]),
            )
        }),
        // hexagons
        schema!("hexagon-conj", 3, Theory::S, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(Hc(f2(a), and(b, c))),
                chain(vec![
                    g(HbPlus(f2(b), f2(c), f2(a))),
                    par_conj(i(b), g(Hc(f2(a), f2(c)))),
                    g(HbMinus(f2(b), f2(a), f2(c))),
                    par_conj(g(Hc(f2(a), f2(b))), i(c)),
                    g(HbPlus(f2(a), f2(b), f2(c))),
                ]),
            )
        }),
        schema!("hexagon-disj", 3, Theory::S, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(Vc(f2(a), or(b, c))),
                chain(vec![
                    g(VbPlus(f2(b), f2(c), f2(a))),
                    par_disj(i(b), g(Vc(f2(a), f2(c)))),
                    g(VbMinus(f2(b), f2(a), f2(c))),
                    par_disj(g(Vc(f2(a), f2(b))), i(c)),
                    g(VbPlus(f2(a), f2(b), f2(c))),
                ]),
            )
        }),
        // intermutation against associativity
        schema!("ck-b-psi", 6, Theory::ACk, |v| {
            let [a1, a1p, a2, a2p, a3, a3p] = [&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]];
            (
                chain(vec![
                    g(Ck(or(a1, a2), or(a1p, a2p), f2(a3), f2(a3p))),
                    par_disj(g(Ck(f2(a1), f2(a1p), f2(a2), f2(a2p))), i(&and(a3, a3p))),
                    g(VbPlus(and(a1, a1p), and(a2, a2p), and(a3, a3p))),
                ]),
                chain(vec![
                    par_conj(
                        g(VbPlus(f2(a1), f2(a2), f2(a3))),
                        g(VbPlus(f2(a1p), f2(a2p), f2(a3p))),
                    ),
                    g(Ck(f2(a1), f2(a1p), or(a2, a3), or(a2p, a3p))),
                    par_disj(i(&and(a1, a1p)), g(Ck(f2(a2), f2(a2p), f2(a3), f2(a3p)))),
                ]),
            )
        }),
        schema!("ck-b-psibar", 6, Theory::ACk, |v| {
            let [a1, a1p, a2, a2p, a3, a3p] = [&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]];
            (
                chain(vec![
                    g(HbMinus(or(a1, a1p), or(a2, a2p), or(a3, a3p))),
                    par_conj(g(Ck(f2(a1), f2(a2), f2(a1p), f2(a2p))), i(&or(a3, a3p))),
                    g(Ck(and(a1, a2), f2(a3), and(a1p, a2p), f2(a3p))),
                ]),
                chain(vec![
                    par_conj(i(&or(a1, a1p)), g(Ck(f2(a2), f2(a3), f2(a2p), f2(a3p)))),
                    g(Ck(f2(a1), and(a2, a3), f2(a1p), and(a2p, a3p))),
                    par_disj(
                        g(HbMinus(f2(a1), f2(a2), f2(a3))),
                        g(HbMinus(f2(a1p), f2(a2p), f2(a3p))),
                    ),
                ]),
            )
        }),
        // intermutation against units
        schema!("ck-ds-delta-check", 2, Theory::ACkU, |v| {
            let [a, ap] = [&v[0], &v[1]];
            (
                g(VdPlus(and(a, ap))),
                chain(vec![
                    par_conj(g(VdPlus(f2(a))), g(VdPlus(f2(ap)))),
                    g(Ck(f2(a), f2(ap), Formula::Bot, Formula::Bot)),
                    par_disj(i(&and(a, ap)), g(HwBotMinus)),
                ]),
            )
        }),
        schema!("ck-ds-sigma-check", 2, Theory::ACkU, |v| {
            let [a, ap] = [&v[0], &v[1]];
            (
                g(VsPlus(and(a, ap))),
                chain(vec![
                    par_conj(g(VsPlus(f2(a))), g(VsPlus(f2(ap)))),
                    g(Ck(Formula::Bot, Formula::Bot, f2(a), f2(ap))),
                    par_disj(g(HwBotMinus), i(&and(a, ap))),
                ]),
            )
        }),
        schema!("ck-ds-delta-hat", 2, Theory::ACkU, |v| {
            let [a, ap] = [&v[0], &v[1]];
            (
                g(HdMinus(or(a, ap))),
                chain(vec![
                    par_conj(i(&or(a, ap)), g(VwTopPlus)),
                    g(Ck(f2(a), Formula::Top, f2(ap), Formula::Top)),
                    par_disj(g(HdMinus(f2(a))), g(HdMinus(f2(ap)))),
                ]),
            )
        }),
        schema!("ck-ds-sigma-hat", 2, Theory::ACkU, |v| {
            let [a, ap] = [&v[0], &v[1]];
            (
                g(HsMinus(or(a, ap))),
                chain(vec![
                    par_conj(g(VwTopPlus), i(&or(a, ap))),
                    g(Ck(Formula::Top, f2(a), Formula::Top, f2(ap))),
                    par_disj(g(HsMinus(f2(a))), g(HsMinus(f2(ap)))),
                ]),
            )
        }),
        // unit w-arrows against associativity
        schema!("wb-top", 0, Theory::NA, |_| {
            (
                chain(vec![
                    g(VwTopPlus),
                    par_disj(g(VwTopPlus), i(&Formula::Top)),
                    g(VbPlus(Formula::Top, Formula::Top, Formula::Top)),
                ]),
                chain(vec![g(VwTopPlus), par_disj(i(&Formula::Top), g(VwTopPlus))]),
            )
        }),
        schema!("wb-bot", 0, Theory::NA, |_| {
            (
                chain(vec![
                    g(HbMinus(Formula::Bot, Formula::Bot, Formula::Bot)),
                    par_conj(g(HwBotMinus), i(&Formula::Bot)),
                    g(HwBotMinus),
                ]),
                chain(vec![par_conj(i(&Formula::Bot), g(HwBotMinus)), g(HwBotMinus)]),
            )
        }),
        // kappa against units
        schema!("kds-delta-check", 0, Theory::K0, |_| {
            (
                g(VdPlus(Formula::Top)),
                chain(vec![g(VwTopPlus), par_disj(i(&Formula::Top), g(Kappa))]),
            )
        }),
        schema!("kds-sigma-check", 0, Theory::K0, |_| {
            (
                g(VsPlus(Formula::Top)),
                chain(vec![g(VwTopPlus), par_disj(g(Kappa), i(&Formula::Top))]),
            )
        }),
        schema!("kds-delta-hat", 0, Theory::K0, |_| {
            (
                g(HdMinus(Formula::Bot)),
                chain(vec![par_conj(i(&Formula::Bot), g(Kappa)), g(HwBotMinus)]),
            )
        }),
        schema!("kds-sigma-hat", 0, Theory::K0, |_| {
            (
                g(HsMinus(Formula::Bot)),
                chain(vec![par_conj(g(Kappa), i(&Formula::Bot)), g(HwBotMinus)]),
            )
        }),
        // the two shifts of intermutation to kappa
        schema!("ck-kappa-1", 0, Theory::ACkU, |_| {
            let t = Formula::Top;
            let f = Formula::Bot;
            (
                chain(vec![
                    g(HdPlus(t.clone())),
                    par_conj(g(VdPlus(t.clone())), g(VsPlus(t.clone()))),
                    g(Ck(t.clone(), f.clone(), f.clone(), t.clone())),
                ]),
                chain(vec![
                    g(Kappa),
                    g(VdPlus(f.clone())),
                    par_disj(g(HsPlus(f.clone())), g(HdPlus(f.clone()))),
                ]),
            )
        }),
        schema!("ck-kappa-2", 0, Theory::ACkU, |_| {
            let t = Formula::Top;
            let f = Formula::Bot;
            (
                chain(vec![
                    g(HdPlus(t.clone())),
                    par_conj(g(VsPlus(t.clone())), g(VdPlus(t.clone()))),
                    g(Ck(f.clone(), t.clone(), t.clone(), f.clone())),
                ]),
                chain(vec![
                    g(Kappa),
                    g(VdPlus(f.clone())),
                    par_disj(g(HdPlus(f.clone())), g(HsPlus(f.clone()))),
                ]),
            )
        }),
        // naturality consequences for kappa
        schema!("kappa-nat-hd", 0, Theory::K0, |_| {
            (
                par_conj(g(Kappa), i(&Formula::Top)),
                chain(vec![g(HdMinus(Formula::Top)), g(Kappa), g(HdPlus(Formula::Bot))]),
            )
        }),
        schema!("kappa-nat-hs", 0, Theory::K0, |_| {
            (
                par_conj(i(&Formula::Top), g(Kappa)),
                chain(vec![g(HsMinus(Formula::Top)), g(Kappa), g(HsPlus(Formula::Bot))]),
            )
        }),
        schema!("kappa-nat-vd", 0, Theory::K0, |_| {
            (
                par_disj(g(Kappa), i(&Formula::Bot)),
                chain(vec![g(VdMinus(Formula::Top)), g(Kappa), g(VdPlus(Formula::Bot))]),
            )
        }),
        schema!("kappa-nat-vs", 0, Theory::K0, |_| {
            (
                par_disj(i(&Formula::Bot), g(Kappa)),
                chain(vec![g(VsMinus(Formula::Top)), g(Kappa), g(VsPlus(Formula::Bot))]),
            )
        }),
        // monoidal unit equations for b
        schema!("unit-b-mid-conj", 2, Theory::NA, |v| {
            let [a, c] = [&v[0], &v[1]];
            (
                g(HbPlus(f2(a), Formula::Top, f2(c))),
                par_conj(g(HdMinus(f2(a))), g(HsPlus(f2(c)))),
            )
        }),
        schema!("unit-b-right-conj", 2, Theory::NA, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(HbPlus(f2(a), f2(b), Formula::Top)),
                chain(vec![
                    g(HdMinus(and(a, b))),
                    par_conj(i(a), g(HdPlus(f2(b)))),
                ]),
            )
        }),
        schema!("unit-b-left-conj", 2, Theory::NA, |v| {
            let [b, c] = [&v[0], &v[1]];
            (
                g(HbPlus(Formula::Top, f2(b), f2(c))),
                chain(vec![
                    par_conj(g(HsMinus(f2(b))), i(c)),
                    g(HsPlus(and(b, c))),
                ]),
            )
        }),
        schema!("unit-b-mid-disj", 2, Theory::NA, |v| {
            let [a, c] = [&v[0], &v[1]];
            (
                g(VbPlus(f2(a), Formula::Bot, f2(c))),
                par_disj(g(VdMinus(f2(a))), g(VsPlus(f2(c)))),
            )
        }),
        schema!("unit-b-right-disj", 2, Theory::NA, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(VbPlus(f2(a), f2(b), Formula::Bot)),
                chain(vec![g(VdMinus(or(a, b))), par_disj(i(a), g(VdPlus(f2(b))))]),
            )
        }),
        schema!("unit-b-left-disj", 2, Theory::NA, |v| {
            let [b, c] = [&v[0], &v[1]];
            (
                g(VbPlus(Formula::Bot, f2(b), f2(c))),
                chain(vec![par_disj(g(VsMinus(f2(b))), i(c)), g(VsPlus(or(b, c)))]),
            )
        }),
        // intermutation against symmetry
        schema!("ck-c-check", 4, Theory::SCk, |v| {
            let [a1, a1p, a2, a2p] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(Ck(f2(a2), f2(a2p), f2(a1), f2(a1p))),
                    g(Vc(and(a1, a1p), and(a2, a2p))),
                ]),
                chain(vec![
                    par_conj(g(Vc(f2(a1), f2(a2))), g(Vc(f2(a1p), f2(a2p)))),
                    g(Ck(f2(a1), f2(a1p), f2(a2), f2(a2p))),
                ]),
            )
        }),
        schema!("ck-c-hat", 4, Theory::SCk, |v| {
            let [a1, a1p, a2, a2p] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(Hc(or(a1, a1p), or(a2, a2p))),
                    g(Ck(f2(a1), f2(a2), f2(a1p), f2(a2p))),
                ]),
                chain(vec![
                    g(Ck(f2(a2), f2(a1), f2(a2p), f2(a1p))),
                    par_disj(g(Hc(f2(a1), f2(a2))), g(Hc(f2(a1p), f2(a2p)))),
                ]),
            )
        }),
        // intermutation against the derived medials
        schema!("ck-cm-check", 8, Theory::SCk, |v| {
            let [a1, a1p, a2, a2p, a3, a3p, a4, a4p] =
                [&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7]];
            (
                chain(vec![
                    g(Ck(or(a1, a3), or(a1p, a3p), or(a2, a4), or(a2p, a4p))),
                    par_disj(
                        g(Ck(f2(a1), f2(a1p), f2(a3), f2(a3p))),
                        g(Ck(f2(a2), f2(a2p), f2(a4), f2(a4p))),
                    ),
                    cm_disj(&and(a1, a1p), &and(a2, a2p), &and(a3, a3p), &and(a4, a4p)),
                ]),
                chain(vec![
                    par_conj(
                        cm_disj(a1, a2, a3, a4),
                        cm_disj(a1p, a2p, a3p, a4p),
                    ),
                    g(Ck(or(a1, a2), or(a1p, a2p), or(a3, a4), or(a3p, a4p))),
                    par_disj(
                        g(Ck(f2(a1), f2(a1p), f2(a2), f2(a2p))),
                        g(Ck(f2(a3), f2(a3p), f2(a4), f2(a4p))),
                    ),
                ]),
            )
        }),
        schema!("ck-cm-hat", 8, Theory::SCk, |v| {
            let [a1, a1p, a2, a2p, a3, a3p, a4, a4p] =
                [&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7]];
            (
                chain(vec![
                    cm_conj(&or(a1, a3), &or(a1p, a3p), &or(a2, a4), &or(a2p, a4p)),
                    par_conj(
                        g(Ck(f2(a1), f2(a1p), f2(a3), f2(a3p))),
                        g(Ck(f2(a2), f2(a2p), f2(a4), f2(a4p))),
                    ),
                    g(Ck(and(a1, a1p), and(a2, a2p), and(a3, a3p), and(a4, a4p))),
                ]),
                chain(vec![
                    par_conj(
                        g(Ck(f2(a1), f2(a2), f2(a3), f2(a4))),
                        g(Ck(f2(a1p), f2(a2p), f2(a3p), f2(a4p))),
                    ),
                    g(Ck(and(a1, a2), and(a1p, a2p), and(a3, a4), and(a3p, a4p))),
                    par_disj(
                        cm_conj(a1, a1p, a2, a2p),
                        cm_conj(a3, a3p, a4, a4p),
                    ),
                ]),
            )
        }),
        // lattice definitional equations
        schema!("def-hb-plus", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(HbPlus(f2(a), f2(b), f2(c))),
                chain(vec![
                    par_conj(
                        par_conj(i(a), g(Hk1(f2(b), f2(c)))),
                        chain(vec![
                            g(Hk2(f2(b), f2(c))),
                            g(Hk2(f2(a), and(b, c))),
                        ]),
                    ),
                    g(Hw(and(a, &and(b, c)))),
                ]),
            )
        }),
        schema!("def-hb-minus", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(HbMinus(f2(a), f2(b), f2(c))),
                chain(vec![
                    par_conj(
                        chain(vec![g(Hk1(f2(a), f2(b))), g(Hk1(and(a, b), f2(c)))]),
                        par_conj(g(Hk2(f2(a), f2(b))), i(c)),
                    ),
                    g(Hw(and(&and(a, b), c))),
                ]),
            )
        }),
        schema!("def-vb-plus", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(VbPlus(f2(a), f2(b), f2(c))),
                chain(vec![
                    g(Vw(or(&or(a, b), c))),
                    par_disj(
                        chain(vec![g(Vk1(or(a, b), f2(c))), g(Vk1(f2(a), f2(b)))]),
                        par_disj(g(Vk2(f2(a), f2(b))), i(c)),
                    ),
                ]),
            )
        }),
        schema!("def-vb-minus", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(VbMinus(f2(a), f2(b), f2(c))),
                chain(vec![
                    g(Vw(or(a, &or(b, c)))),
                    par_disj(
                        par_disj(i(a), g(Vk1(f2(b), f2(c)))),
                        chain(vec![g(Vk2(f2(a), or(b, c))), g(Vk2(f2(b), f2(c)))]),
                    ),
                ]),
            )
        }),
        schema!("def-hc", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(Hc(f2(a), f2(b))),
                chain(vec![
                    par_conj(g(Hk2(f2(a), f2(b))), g(Hk1(f2(a), f2(b)))),
                    g(Hw(and(a, b))),
                ]),
            )
        }),
        schema!("def-vc", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(Vc(f2(a), f2(b))),
                chain(vec![
                    g(Vw(or(b, a))),
                    par_disj(g(Vk2(f2(b), f2(a))), g(Vk1(f2(b), f2(a)))),
                ]),
            )
        }),
        schema!("def-ck-meet", 4, Theory::L, |v| {
            let [a, b, c, d] = [&v[0], &v[1], &v[2], &v[3]];
            (
                g(Ck(f2(a), f2(b), f2(c), f2(d))),
                chain(vec![
                    par_conj(
                        par_disj(g(Hk1(f2(a), f2(b))), g(Hk1(f2(c), f2(d)))),
                        par_disj(g(Hk2(f2(a), f2(b))), g(Hk2(f2(c), f2(d)))),
                    ),
                    g(Hw(or(&and(a, b), &and(c, d)))),
                ]),
            )
        }),
        schema!("def-ck-join", 4, Theory::L, |v| {
            let [a, b, c, d] = [&v[0], &v[1], &v[2], &v[3]];
            (
                g(Ck(f2(a), f2(b), f2(c), f2(d))),
                chain(vec![
                    g(Vw(and(&or(a, c), &or(b, d)))),
                    par_disj(
                        par_conj(g(Vk1(f2(a), f2(c))), g(Vk1(f2(b), f2(d)))),
                        par_conj(g(Vk2(f2(a), f2(c))), g(Vk2(f2(b), f2(d)))),
                    ),
                ]),
            )
        }),
        // diagonal and codiagonal pushed through both connectives
        schema!("elim-hw-conj", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(Hw(and(a, b))),
                chain(vec![
                    cm_conj(a, a, b, b),
                    par_conj(g(Hw(f2(a))), g(Hw(f2(b)))),
                ]),
            )
        }),
        schema!("elim-hw-disj", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(Hw(or(a, b))),
                chain(vec![
                    g(Ck(f2(a), f2(a), f2(b), f2(b))),
                    par_disj(g(Hw(f2(a))), g(Hw(f2(b)))),
                ]),
            )
        }),
        schema!("elim-vw-disj", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(Vw(or(a, b))),
                chain(vec![
                    par_disj(g(Vw(f2(a))), g(Vw(f2(b)))),
                    cm_disj(a, b, a, b),
                ]),
            )
        }),
        schema!("elim-vw-conj", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                g(Vw(and(a, b))),
                chain(vec![
                    par_conj(g(Vw(f2(a))), g(Vw(f2(b)))),
                    g(Ck(f2(a), f2(b), f2(a), f2(b))),
                ]),
            )
        }),
        // projection/injection index shrinking (naturality consequences)
        schema!("elim-hk1-shrink", 3, Theory::L, |v| {
            let [c, a, b] = [&v[0], &v[1], &v[2]];
            (
                g(Hk1(f2(c), and(a, b))),
                chain(vec![
                    g(Hk1(f2(c), f2(a))),
                    par_conj(i(c), g(Hk1(f2(a), f2(b)))),
                ]),
            )
        }),
        schema!("elim-hk2-shrink", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(Hk2(and(a, b), f2(c))),
                chain(vec![
                    g(Hk2(f2(b), f2(c))),
                    par_conj(g(Hk2(f2(a), f2(b))), i(c)),
                ]),
            )
        }),
        schema!("elim-vk1-shrink", 3, Theory::L, |v| {
            let [c, a, b] = [&v[0], &v[1], &v[2]];
            (
                g(Vk1(f2(c), or(a, b))),
                chain(vec![
                    par_disj(i(c), g(Vk1(f2(a), f2(b)))),
                    g(Vk1(f2(c), f2(a))),
                ]),
            )
        }),
        schema!("elim-vk2-shrink", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                g(Vk2(or(a, b), f2(c))),
                chain(vec![
                    par_disj(g(Vk2(f2(a), f2(b))), i(c)),
                    g(Vk2(f2(b), f2(c))),
                ]),
            )
        }),
        // projections through associativity
        schema!("elim-hk1-hb-keepfirst", 3, Theory::L, |v| {
            let [a, d, c] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    par_conj(g(Hk1(f2(a), f2(d))), i(c)),
                    g(HbPlus(f2(a), f2(d), f2(c))),
                ]),
                par_conj(i(a), g(Hk2(f2(d), f2(c)))),
            )
        }),
        schema!("elim-hk1-hb-assoc", 3, Theory::L, |v| {
            let [a, b, d] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(Hk1(and(a, b), f2(d))),
                    g(HbPlus(f2(a), f2(b), f2(d))),
                ]),
                par_conj(i(a), g(Hk1(f2(b), f2(d)))),
            )
        }),
        schema!("elim-hk2-hb", 3, Theory::L, |v| {
            let [d, b, c] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    par_conj(g(Hk2(f2(d), f2(b))), i(c)),
                    g(HbPlus(f2(d), f2(b), f2(c))),
                ]),
                g(Hk2(f2(d), and(b, c))),
            )
        }),
        schema!("elim-hk2-hb-root", 3, Theory::L, |v| {
            let [a, b, d] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(Hk2(and(a, b), f2(d))),
                    g(HbPlus(f2(a), f2(b), f2(d))),
                ]),
                chain(vec![g(Hk2(f2(b), f2(d))), g(Hk2(f2(a), and(b, d)))]),
            )
        }),
        schema!("elim-hk1-hbm-root", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(Hk1(f2(a), and(b, c))),
                    g(HbMinus(f2(a), f2(b), f2(c))),
                ]),
                chain(vec![g(Hk1(f2(a), f2(b))), g(Hk1(and(a, b), f2(c)))]),
            )
        }),
        schema!("elim-hk2-hbm-root", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(Hk2(f2(a), and(b, c))),
                    g(HbMinus(f2(a), f2(b), f2(c))),
                ]),
                par_conj(g(Hk2(f2(a), f2(b))), i(c)),
            )
        }),
        schema!("elim-hk1-hbm-inner", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    par_conj(i(a), g(Hk1(f2(b), f2(c)))),
                    g(HbMinus(f2(a), f2(b), f2(c))),
                ]),
                g(Hk1(and(a, b), f2(c))),
            )
        }),
        schema!("elim-hk2-hbm-inner", 3, Theory::L, |v| {
            let [a, b, c] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    par_conj(i(a), g(Hk2(f2(b), f2(c)))),
                    g(HbMinus(f2(a), f2(b), f2(c))),
                ]),
                par_conj(g(Hk1(f2(a), f2(b))), i(c)),
            )
        }),
        // injections through associativity
        schema!("elim-vk1-vb-root", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbPlus(f2(p), f2(q), f2(r))),
                    g(Vk1(f2(p), or(q, r))),
                ]),
                chain(vec![g(Vk1(or(p, q), f2(r))), g(Vk1(f2(p), f2(q)))]),
            )
        }),
        schema!("elim-vk2-vb-root", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbPlus(f2(p), f2(q), f2(r))),
                    g(Vk2(f2(p), or(q, r))),
                ]),
                par_disj(g(Vk2(f2(p), f2(q))), i(r)),
            )
        }),
        schema!("elim-vk1-vb-inner", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbPlus(f2(p), f2(q), f2(r))),
                    par_disj(i(p), g(Vk1(f2(q), f2(r)))),
                ]),
                g(Vk1(or(p, q), f2(r))),
            )
        }),
        schema!("elim-vk2-vb-inner", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbPlus(f2(p), f2(q), f2(r))),
                    par_disj(i(p), g(Vk2(f2(q), f2(r)))),
                ]),
                par_disj(g(Vk1(f2(p), f2(q))), i(r)),
            )
        }),
        schema!("elim-vk1-vbm-root", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbMinus(f2(p), f2(q), f2(r))),
                    g(Vk1(or(p, q), f2(r))),
                ]),
                par_disj(i(p), g(Vk1(f2(q), f2(r)))),
            )
        }),
        schema!("elim-vk2-vbm-root", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbMinus(f2(p), f2(q), f2(r))),
                    g(Vk2(or(p, q), f2(r))),
                ]),
                chain(vec![g(Vk2(f2(p), or(q, r))), g(Vk2(f2(q), f2(r)))]),
            )
        }),
        schema!("elim-vk1-vbm-inner", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbMinus(f2(p), f2(q), f2(r))),
                    par_disj(g(Vk1(f2(p), f2(q))), i(r)),
                ]),
                par_disj(i(p), g(Vk2(f2(q), f2(r)))),
            )
        }),
        schema!("elim-vk2-vbm-inner", 3, Theory::L, |v| {
            let [p, q, r] = [&v[0], &v[1], &v[2]];
            (
                chain(vec![
                    g(VbMinus(f2(p), f2(q), f2(r))),
                    par_disj(g(Vk2(f2(p), f2(q))), i(r)),
                ]),
                g(Vk2(f2(p), or(q, r))),
            )
        }),
        // projections and injections through symmetry
        schema!("elim-hk1-hc", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                chain(vec![g(Hk1(f2(b), f2(a))), g(Hc(f2(a), f2(b)))]),
                g(Hk2(f2(a), f2(b))),
            )
        }),
        schema!("elim-hk2-hc", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                chain(vec![g(Hk2(f2(b), f2(a))), g(Hc(f2(a), f2(b)))]),
                g(Hk1(f2(a), f2(b))),
            )
        }),
        schema!("elim-vk1-vc", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                chain(vec![g(Vc(f2(a), f2(b))), g(Vk1(f2(a), f2(b)))]),
                g(Vk2(f2(b), f2(a))),
            )
        }),
        schema!("elim-vk2-vc", 2, Theory::L, |v| {
            let [a, b] = [&v[0], &v[1]];
            (
                chain(vec![g(Vc(f2(a), f2(b))), g(Vk2(f2(a), f2(b)))]),
                g(Vk1(f2(b), f2(a))),
            )
        }),
        // projections and injections through intermutation
        schema!("elim-hk1-ck", 4, Theory::L, |v| {
            let [a, d1, b, d2] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(Hk1(or(a, b), or(d1, d2))),
                    g(Ck(f2(a), f2(d1), f2(b), f2(d2))),
                ]),
                par_disj(g(Hk1(f2(a), f2(d1))), g(Hk1(f2(b), f2(d2)))),
            )
        }),
        schema!("elim-hk2-ck", 4, Theory::L, |v| {
            let [d1, a, d2, b] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(Hk2(or(d1, d2), or(a, b))),
                    g(Ck(f2(d1), f2(a), f2(d2), f2(b))),
                ]),
                par_disj(g(Hk2(f2(d1), f2(a))), g(Hk2(f2(d2), f2(b)))),
            )
        }),
        schema!("elim-vk1-ck", 4, Theory::L, |v| {
            let [a, b, d1, d2] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(Ck(f2(a), f2(b), f2(d1), f2(d2))),
                    g(Vk1(and(a, b), and(d1, d2))),
                ]),
                par_conj(g(Vk1(f2(a), f2(d1))), g(Vk1(f2(b), f2(d2)))),
            )
        }),
        schema!("elim-vk2-ck", 4, Theory::L, |v| {
            let [d1, d2, a, b] = [&v[0], &v[1], &v[2], &v[3]];
            (
                chain(vec![
                    g(Ck(f2(d1), f2(d2), f2(a), f2(b))),
                    g(Vk2(and(d1, d2), and(a, b))),
                ]),
                par_conj(g(Vk2(f2(d1), f2(a))), g(Vk2(f2(d2), f2(b)))),
            )
        }),
        // cancellation at the diagonal and codiagonal
        schema!("elim-hk1-hw", 1, Theory::L, |v| {
            let a = &v[0];
            (
                chain(vec![g(Hk1(f2(a), f2(a))), g(Hw(f2(a)))]),
                i(a),
            )
        }),
        schema!("elim-hk2-hw", 1, Theory::L, |v| {
            let a = &v[0];
            (
                chain(vec![g(Hk2(f2(a), f2(a))), g(Hw(f2(a)))]),
                i(a),
            )
        }),
        schema!("elim-vw-vk1", 1, Theory::L, |v| {
            let a = &v[0];
            (
                chain(vec![g(Vw(f2(a))), g(Vk1(f2(a), f2(a)))]),
                i(a),
            )
        }),
        schema!("elim-vw-vk2", 1, Theory::L, |v| {
            let a = &v[0];
            (
                chain(vec![g(Vw(f2(a))), g(Vk2(f2(a), f2(a)))]),
                i(a),
            )
        }),
        // symmetry at the units
        schema!("wc-top", 0, Theory::SCkU, |_| {
            (
                chain(vec![g(VwTopPlus), g(Vc(Formula::Top, Formula::Top))]),
                g(VwTopPlus),
            )
        }),
        schema!("wc-bot", 0, Theory::SCkU, |_| {
            (
                chain(vec![g(Hc(Formula::Bot, Formula::Bot)), g(HwBotMinus)]),
                g(HwBotMinus),
            )
        }),
        schema!("c1-top", 0, Theory::SCkU, |_| {
            (
                g(Vc(Formula::Top, Formula::Top)),
                i(&or(&Formula::Top, &Formula::Top)),
            )
        }),
        schema!("c1-bot", 0, Theory::SCkU, |_| {
            (
                g(Hc(Formula::Bot, Formula::Bot)),
                i(&and(&Formula::Bot, &Formula::Bot)),
            )
        }),
    ]
}

pub fn find_schema(name: &str) -> Result<Schema> {
    catalogue()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSchema(name.to_string()))
}

/// Model-check one instantiation: both sides must be well-typed with the
/// same type and evaluate to the same matrix. This is a necessary
/// condition for derivability, used to catch implementation bugs.
pub fn check_equation(name: &str, args: &[Formula]) -> Result<bool> {
    let schema = find_schema(name)?;
    let (lhs, rhs) = schema.build(args)?;
    check_pair(&lhs, &rhs)
}

pub(crate) fn check_pair(lhs: &ArrowTerm, rhs: &ArrowTerm) -> Result<bool> {
    let tl = lhs.type_of()?;
    let tr = rhs.type_of()?;
    if tl != tr {
        return Ok(false);
    }
    Ok(eval_mat(lhs)? == eval_mat(rhs)?)
}

#[derive(Debug, Clone)]
pub struct SchemaReport {
    pub name: &'static str,
    pub trials: usize,
    pub passed: bool,
}

/// Run one schema on `trials` random letter instantiations.
pub fn run_schema(schema: &Schema, trials: usize, seed: u64) -> Result<SchemaReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let letters = ["p", "q", "r", "s", "t", "u", "v", "w"];
    for _ in 0..trials.max(1) {
        let args: Vec<Formula> = (0..schema.arity)
            .map(|_| random_constant_free_formula(&mut rng, &letters, 3))
            .collect();
        let (lhs, rhs) = schema.build(&args)?;
        if !check_pair(&lhs, &rhs)? {
            return Ok(SchemaReport {
                name: schema.name,
                trials,
                passed: false,
            });
        }
    }
    Ok(SchemaReport {
        name: schema.name,
        trials,
        passed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn pf(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn pentagon_holds_at_letters() {
        assert!(check_equation("pentagon-conj", &[pf("p"), pf("q"), pf("r"), pf("s")]).unwrap());
    }

    #[test]
    fn psi_b_check_holds_at_six_letters() {
        let args = ["p", "q", "r", "s", "t", "u"].map(pf);
        assert!(check_equation("ck-b-psi", &args).unwrap());
    }

    #[test]
    fn corrupted_pentagon_fails() {
        // swap two indices on one side: both sides still type-check to the
        // same endpoints only when the corruption keeps letters aligned, so
        // corrupt with repeated letters to keep types equal
        let a = pf("p");
        let lhs = chain(vec![
            g(Gen::HbPlus(and(&a, &a), f2(&a), f2(&a))),
            g(Gen::HbPlus(f2(&a), f2(&a), and(&a, &a))),
        ]);
        // wrong right side: reassociate in the wrong order
        let rhs = chain(vec![
            par_conj(i(&a), g(Gen::HbPlus(f2(&a), f2(&a), f2(&a)))),
            g(Gen::HbMinus(f2(&a), and(&a, &a), f2(&a))),
        ]);
        // either the types differ or the matrices do; in both cases the
        // check must not report success
        let ok = match (lhs.type_of(), rhs.type_of()) {
            (Ok(tl), Ok(tr)) if tl == tr => check_pair(&lhs, &rhs).unwrap(),
            _ => false,
        };
        assert!(!ok);
    }

    #[test]
    fn corrupted_ck_c_check_fails() {
        // genuine mutation test: distinct letters, one hc swapped
        let v = ["p", "q", "r", "s"].map(pf);
        let (lhs, _) = find_schema("ck-c-check").unwrap().build(&v).unwrap();
        let bad_rhs = chain(vec![
            par_conj(g(Gen::Vc(f2(&v[0]), f2(&v[1]))), g(Gen::Vc(f2(&v[2]), f2(&v[3])))),
            g(Gen::Ck(f2(&v[0]), f2(&v[1]), f2(&v[2]), f2(&v[3]))),
        ]);
        let ok = match (lhs.type_of(), bad_rhs.type_of()) {
            (Ok(tl), Ok(tr)) if tl == tr => check_pair(&lhs, &bad_rhs).unwrap(),
            _ => false,
        };
        assert!(!ok);
    }

    #[test]
    fn whole_catalogue_smoke() {
        for schema in catalogue() {
            let rep = run_schema(&schema, 5, 7).unwrap();
            assert!(rep.passed, "schema {} failed", schema.name);
        }
    }

    #[test]
    fn unknown_schema_is_reported() {
        assert!(matches!(
            check_equation("no-such-schema", &[]),
            Err(Error::UnknownSchema(_))
        ));
    }

    #[test]
    fn medial_composites_have_expected_types() {
        let (a, b, c, d) = (pf("a"), pf("b"), pf("c"), pf("d"));
        let t = cm_conj(&a, &b, &c, &d);
        let (src, tgt) = t.type_of().unwrap();
        assert_eq!(src, pf("(a&b)&(c&d)"));
        assert_eq!(tgt, pf("(a&c)&(b&d)"));
        let t = cm_disj(&a, &b, &c, &d);
        let (src, tgt) = t.type_of().unwrap();
        assert_eq!(src, pf("(a|b)|(c|d)"));
        assert_eq!(tgt, pf("(a|c)|(b|d)"));
    }
}
