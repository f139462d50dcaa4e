//! The morphism language: typed arrow terms over the generator alphabet,
//! the closed theory table, development into single-generator factors and
//! the shape-derived arrows.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{conj, disj, Dir, Formula, Lexer, Path};

/// A primitive arrow with its index formulas.
///
/// Naming: `h`/`v` pick the connective (`&` respectively `|`), matching the
/// vertical/horizontal reading of the rectangular grids. Signs `Plus`/`Minus`
/// are the two directions of an isomorphism pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gen {
    /// `A&(B&C) -> (A&B)&C`
    HbPlus(Formula, Formula, Formula),
    /// `(A&B)&C -> A&(B&C)`
    HbMinus(Formula, Formula, Formula),
    /// `A|(B|C) -> (A|B)|C`
    VbPlus(Formula, Formula, Formula),
    /// `(A|B)|C -> A|(B|C)`
    VbMinus(Formula, Formula, Formula),
    /// `A&B -> B&A`
    Hc(Formula, Formula),
    /// `A|B -> B|A`
    Vc(Formula, Formula),
    /// `A&T -> A`
    HdPlus(Formula),
    /// `A -> A&T`
    HdMinus(Formula),
    /// `T&A -> A`
    HsPlus(Formula),
    /// `A -> T&A`
    HsMinus(Formula),
    /// `A|F -> A`
    VdPlus(Formula),
    /// `A -> A|F`
    VdMinus(Formula),
    /// `F|A -> A`
    VsPlus(Formula),
    /// `A -> F|A`
    VsMinus(Formula),
    /// `F&F -> F`
    HwBotPlus,
    /// `F -> F&F`
    HwBotMinus,
    /// `T|T -> T`
    VwTopPlus,
    /// `T -> T|T`
    VwTopMinus,
    /// `F -> T`
    Kappa,
    /// `(A&B)|(C&D) -> (A|C)&(B|D)`, intermutation
    Ck(Formula, Formula, Formula, Formula),
    /// `A -> A&A`, the diagonal
    Hw(Formula),
    /// `A|A -> A`, the codiagonal
    Vw(Formula),
    /// `A&B -> A`
    Hk1(Formula, Formula),
    /// `A&B -> B`
    Hk2(Formula, Formula),
    /// `A -> A|B`
    Vk1(Formula, Formula),
    /// `B -> A|B`
    Vk2(Formula, Formula),
}

/// Field-free generator tags, used by the theory table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    HbPlus,
    HbMinus,
    VbPlus,
    VbMinus,
    Hc,
    Vc,
    HdPlus,
    HdMinus,
    HsPlus,
    HsMinus,
    VdPlus,
    VdMinus,
    VsPlus,
    VsMinus,
    HwBotPlus,
    HwBotMinus,
    VwTopPlus,
    VwTopMinus,
    Kappa,
    Ck,
    Hw,
    Vw,
    Hk1,
    Hk2,
    Vk1,
    Vk2,
}

impl Gen {
    pub fn kind(&self) -> GenKind {
        match self {
            Gen::HbPlus(..) => GenKind::HbPlus,
            Gen::HbMinus(..) => GenKind::HbMinus,
            Gen::VbPlus(..) => GenKind::VbPlus,
            Gen::VbMinus(..) => GenKind::VbMinus,
            Gen::Hc(..) => GenKind::Hc,
            Gen::Vc(..) => GenKind::Vc,
            Gen::HdPlus(..) => GenKind::HdPlus,
            Gen::HdMinus(..) => GenKind::HdMinus,
            Gen::HsPlus(..) => GenKind::HsPlus,
            Gen::HsMinus(..) => GenKind::HsMinus,
            Gen::VdPlus(..) => GenKind::VdPlus,
            Gen::VdMinus(..) => GenKind::VdMinus,
            Gen::VsPlus(..) => GenKind::VsPlus,
            Gen::VsMinus(..) => GenKind::VsMinus,
            Gen::HwBotPlus => GenKind::HwBotPlus,
            Gen::HwBotMinus => GenKind::HwBotMinus,
            Gen::VwTopPlus => GenKind::VwTopPlus,
            Gen::VwTopMinus => GenKind::VwTopMinus,
            Gen::Kappa => GenKind::Kappa,
            Gen::Ck(..) => GenKind::Ck,
            Gen::Hw(..) => GenKind::Hw,
            Gen::Vw(..) => GenKind::Vw,
            Gen::Hk1(..) => GenKind::Hk1,
            Gen::Hk2(..) => GenKind::Hk2,
            Gen::Vk1(..) => GenKind::Vk1,
            Gen::Vk2(..) => GenKind::Vk2,
        }
    }

    pub fn source(&self) -> Formula {
        match self {
            Gen::HbPlus(a, b, c) => conj(a.clone(), conj(b.clone(), c.clone())),
            Gen::HbMinus(a, b, c) => conj(conj(a.clone(), b.clone()), c.clone()),
            Gen::VbPlus(a, b, c) => disj(a.clone(), disj(b.clone(), c.clone())),
            Gen::VbMinus(a, b, c) => disj(disj(a.clone(), b.clone()), c.clone()),
            Gen::Hc(a, b) => conj(a.clone(), b.clone()),
            Gen::Vc(a, b) => disj(a.clone(), b.clone()),
            Gen::HdPlus(a) => conj(a.clone(), Formula::Top),
            Gen::HdMinus(a) => a.clone(),
            Gen::HsPlus(a) => conj(Formula::Top, a.clone()),
            Gen::HsMinus(a) => a.clone(),
            Gen::VdPlus(a) => disj(a.clone(), Formula::Bot),
            Gen::VdMinus(a) => a.clone(),
            Gen::VsPlus(a) => disj(Formula::Bot, a.clone()),
            Gen::VsMinus(a) => a.clone(),
            Gen::HwBotPlus => conj(Formula::Bot, Formula::Bot),
            Gen::HwBotMinus => Formula::Bot,
            Gen::VwTopPlus => disj(Formula::Top, Formula::Top),
            Gen::VwTopMinus => Formula::Top,
            Gen::Kappa => Formula::Bot,
            Gen::Ck(a, b, c, d) => disj(conj(a.clone(), b.clone()), conj(c.clone(), d.clone())),
            Gen::Hw(a) => a.clone(),
            Gen::Vw(a) => disj(a.clone(), a.clone()),
            Gen::Hk1(a, b) | Gen::Hk2(a, b) => conj(a.clone(), b.clone()),
            Gen::Vk1(a, _) => a.clone(),
            Gen::Vk2(_, b) => b.clone(),
        }
    }

    pub fn target(&self) -> Formula {
        match self {
            Gen::HbPlus(a, b, c) => conj(conj(a.clone(), b.clone()), c.clone()),
            Gen::HbMinus(a, b, c) => conj(a.clone(), conj(b.clone(), c.clone())),
            Gen::VbPlus(a, b, c) => disj(disj(a.clone(), b.clone()), c.clone()),
            Gen::VbMinus(a, b, c) => disj(a.clone(), disj(b.clone(), c.clone())),
            Gen::Hc(a, b) => conj(b.clone(), a.clone()),
            Gen::Vc(a, b) => disj(b.clone(), a.clone()),
            Gen::HdPlus(a) => a.clone(),
            Gen::HdMinus(a) => conj(a.clone(), Formula::Top),
            Gen::HsPlus(a) => a.clone(),
            Gen::HsMinus(a) => conj(Formula::Top, a.clone()),
            Gen::VdPlus(a) => a.clone(),
            Gen::VdMinus(a) => disj(a.clone(), Formula::Bot),
            Gen::VsPlus(a) => a.clone(),
            Gen::VsMinus(a) => disj(Formula::Bot, a.clone()),
            Gen::HwBotPlus => Formula::Bot,
            Gen::HwBotMinus => conj(Formula::Bot, Formula::Bot),
            Gen::VwTopPlus => Formula::Top,
            Gen::VwTopMinus => disj(Formula::Top, Formula::Top),
            Gen::Kappa => Formula::Top,
            Gen::Ck(a, b, c, d) => conj(disj(a.clone(), c.clone()), disj(b.clone(), d.clone())),
            Gen::Hw(a) => conj(a.clone(), a.clone()),
            Gen::Vw(a) => a.clone(),
            Gen::Hk1(a, _) => a.clone(),
            Gen::Hk2(_, b) => b.clone(),
            Gen::Vk1(a, b) | Gen::Vk2(a, b) => disj(a.clone(), b.clone()),
        }
    }

    /// Token used by the arrow grammar.
    pub fn token(kind: GenKind) -> &'static str {
        match kind {
            GenKind::HbPlus => "hb+",
            GenKind::HbMinus => "hb-",
            GenKind::VbPlus => "vb+",
            GenKind::VbMinus => "vb-",
            GenKind::Hc => "hc",
            GenKind::Vc => "vc",
            GenKind::HdPlus => "hd+",
            GenKind::HdMinus => "hd-",
            GenKind::HsPlus => "hs+",
            GenKind::HsMinus => "hs-",
            GenKind::VdPlus => "vd+",
            GenKind::VdMinus => "vd-",
            GenKind::VsPlus => "vs+",
            GenKind::VsMinus => "vs-",
            GenKind::HwBotPlus => "hwb+",
            GenKind::HwBotMinus => "hwb-",
            GenKind::VwTopPlus => "vwt+",
            GenKind::VwTopMinus => "vwt-",
            GenKind::Kappa => "kappa",
            GenKind::Ck => "ck",
            GenKind::Hw => "hw",
            GenKind::Vw => "vw",
            GenKind::Hk1 => "hk1",
            GenKind::Hk2 => "hk2",
            GenKind::Vk1 => "vk1",
            GenKind::Vk2 => "vk2",
        }
    }

    fn indices(&self) -> Vec<&Formula> {
        match self {
            Gen::HbPlus(a, b, c) | Gen::HbMinus(a, b, c) | Gen::VbPlus(a, b, c)
            | Gen::VbMinus(a, b, c) => vec![a, b, c],
            Gen::Hc(a, b) | Gen::Vc(a, b) | Gen::Hk1(a, b) | Gen::Hk2(a, b) | Gen::Vk1(a, b)
            | Gen::Vk2(a, b) => vec![a, b],
            Gen::HdPlus(a) | Gen::HdMinus(a) | Gen::HsPlus(a) | Gen::HsMinus(a)
            | Gen::VdPlus(a) | Gen::VdMinus(a) | Gen::VsPlus(a) | Gen::VsMinus(a)
            | Gen::Hw(a) | Gen::Vw(a) => vec![a],
            Gen::HwBotPlus | Gen::HwBotMinus | Gen::VwTopPlus | Gen::VwTopMinus | Gen::Kappa => {
                vec![]
            }
            Gen::Ck(a, b, c, d) => vec![a, b, c, d],
        }
    }

    /// Rebuild a generator of the same kind from a new source formula.
    /// `Vk1`/`Vk2` keep their phantom index from `old`, everything else
    /// reads its indices off the source shape.
    pub fn rebuild_from_source(&self, src: &Formula) -> Result<Gen> {
        use Formula::*;
        let bad = || Error::Internal(format!("cannot rebuild {:?} from {src}", self.kind()));
        Ok(match self {
            Gen::HbPlus(..) => match src {
                Conj(a, bc) => match &**bc {
                    Conj(b, c) => Gen::HbPlus((**a).clone(), (**b).clone(), (**c).clone()),
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            },
            Gen::HbMinus(..) => match src {
                Conj(ab, c) => match &**ab {
                    Conj(a, b) => Gen::HbMinus((**a).clone(), (**b).clone(), (**c).clone()),
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            },
            Gen::VbPlus(..) => match src {
                Disj(a, bc) => match &**bc {
                    Disj(b, c) => Gen::VbPlus((**a).clone(), (**b).clone(), (**c).clone()),
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            },
            Gen::VbMinus(..) => match src {
                Disj(ab, c) => match &**ab {
                    Disj(a, b) => Gen::VbMinus((**a).clone(), (**b).clone(), (**c).clone()),
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            },
            Gen::Hc(..) => match src {
                Conj(a, b) => Gen::Hc((**a).clone(), (**b).clone()),
                _ => return Err(bad()),
            },
            Gen::Vc(..) => match src {
                Disj(a, b) => Gen::Vc((**a).clone(), (**b).clone()),
                _ => return Err(bad()),
            },
            Gen::Ck(..) => match src {
                Disj(l, r) => match (&**l, &**r) {
                    (Conj(a, b), Conj(c, d)) => {
                        Gen::Ck((**a).clone(), (**b).clone(), (**c).clone(), (**d).clone())
                    }
                    _ => return Err(bad()),
                },
                _ => return Err(bad()),
            },
            Gen::Hw(..) => Gen::Hw(src.clone()),
            Gen::Vw(..) => match src {
                Disj(a, b) if a == b => Gen::Vw((**a).clone()),
                _ => return Err(bad()),
            },
            Gen::Hk1(..) => match src {
                Conj(a, b) => Gen::Hk1((**a).clone(), (**b).clone()),
                _ => return Err(bad()),
            },
            Gen::Hk2(..) => match src {
                Conj(a, b) => Gen::Hk2((**a).clone(), (**b).clone()),
                _ => return Err(bad()),
            },
            Gen::Vk1(_, phantom) => Gen::Vk1(src.clone(), phantom.clone()),
            Gen::Vk2(phantom, _) => Gen::Vk2(phantom.clone(), src.clone()),
            Gen::HdPlus(..) => match src {
                Conj(a, b) if **b == Top => Gen::HdPlus((**a).clone()),
                _ => return Err(bad()),
            },
            Gen::HdMinus(..) => Gen::HdMinus(src.clone()),
            Gen::HsPlus(..) => match src {
                Conj(a, b) if **a == Top => Gen::HsPlus((**b).clone()),
                _ => return Err(bad()),
            },
            Gen::HsMinus(..) => Gen::HsMinus(src.clone()),
            Gen::VdPlus(..) => match src {
                Disj(a, b) if **b == Bot => Gen::VdPlus((**a).clone()),
                _ => return Err(bad()),
            },
            Gen::VdMinus(..) => Gen::VdMinus(src.clone()),
            Gen::VsPlus(..) => match src {
                Disj(a, b) if **a == Bot => Gen::VsPlus((**b).clone()),
                _ => return Err(bad()),
            },
            Gen::VsMinus(..) => Gen::VsMinus(src.clone()),
            Gen::HwBotPlus | Gen::HwBotMinus | Gen::VwTopPlus | Gen::VwTopMinus | Gen::Kappa => {
                self.clone()
            }
        })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Gen::token(self.kind()))?;
        let idx = self.indices();
        if !idx.is_empty() {
            write!(f, "{{")?;
            for (i, x) in idx.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Arrow-term syntax tree. Equality is syntactic; theory-level equality
/// lives in [`crate::decide`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ArrowTerm {
    Id(Formula),
    Prim(Gen),
    /// `Comp(g, f)` is `g . f`: `f` applied first.
    Comp(Box<ArrowTerm>, Box<ArrowTerm>),
    Conj(Box<ArrowTerm>, Box<ArrowTerm>),
    Disj(Box<ArrowTerm>, Box<ArrowTerm>),
}

pub fn comp(after: ArrowTerm, before: ArrowTerm) -> ArrowTerm {
    ArrowTerm::Comp(Box::new(after), Box::new(before))
}

pub fn par_conj(l: ArrowTerm, r: ArrowTerm) -> ArrowTerm {
    ArrowTerm::Conj(Box::new(l), Box::new(r))
}

pub fn par_disj(l: ArrowTerm, r: ArrowTerm) -> ArrowTerm {
    ArrowTerm::Disj(Box::new(l), Box::new(r))
}

/// Composition that drops identity factors.
pub fn scomp(after: ArrowTerm, before: ArrowTerm) -> ArrowTerm {
    match (&after, &before) {
        (ArrowTerm::Id(_), _) => before,
        (_, ArrowTerm::Id(_)) => after,
        _ => comp(after, before),
    }
}

/// Parallel `&` that merges identities.
pub fn sconj(l: ArrowTerm, r: ArrowTerm) -> ArrowTerm {
    match (&l, &r) {
        (ArrowTerm::Id(a), ArrowTerm::Id(b)) => ArrowTerm::Id(conj(a.clone(), b.clone())),
        _ => par_conj(l, r),
    }
}

/// Parallel `|` that merges identities.
pub fn sdisj(l: ArrowTerm, r: ArrowTerm) -> ArrowTerm {
    match (&l, &r) {
        (ArrowTerm::Id(a), ArrowTerm::Id(b)) => ArrowTerm::Id(disj(a.clone(), b.clone())),
        _ => par_disj(l, r),
    }
}

impl ArrowTerm {
    /// Source and target, computed bottom-up. Reports the first composition
    /// whose inner types disagree.
    pub fn type_of(&self) -> Result<(Formula, Formula)> {
        self.type_at(&Path::root())
    }

    fn type_at(&self, at: &Path) -> Result<(Formula, Formula)> {
        match self {
            ArrowTerm::Id(a) => Ok((a.clone(), a.clone())),
            ArrowTerm::Prim(g) => Ok((g.source(), g.target())),
            ArrowTerm::Comp(g, f) => {
                let (fs, ft) = f.type_at(&at.child(Dir::R))?;
                let (gs, gt) = g.type_at(&at.child(Dir::L))?;
                if ft != gs {
                    return Err(Error::IllTyped {
                        path: at.clone(),
                        target: ft,
                        src: gs,
                    });
                }
                Ok((fs, gt))
            }
            ArrowTerm::Conj(l, r) => {
                let (ls, lt) = l.type_at(&at.child(Dir::L))?;
                let (rs, rt) = r.type_at(&at.child(Dir::R))?;
                Ok((conj(ls, rs), conj(lt, rt)))
            }
            ArrowTerm::Disj(l, r) => {
                let (ls, lt) = l.type_at(&at.child(Dir::L))?;
                let (rs, rt) = r.type_at(&at.child(Dir::R))?;
                Ok((disj(ls, rs), disj(lt, rt)))
            }
        }
    }

    pub fn source(&self) -> Result<Formula> {
        Ok(self.type_of()?.0)
    }

    pub fn target(&self) -> Result<Formula> {
        Ok(self.type_of()?.1)
    }

    /// All generator occurrences, left to right.
    pub fn generators(&self) -> Vec<&Gen> {
        let mut out = Vec::new();
        self.fold_gens(&mut out);
        out
    }

    fn fold_gens<'a>(&'a self, out: &mut Vec<&'a Gen>) {
        match self {
            ArrowTerm::Id(_) => {}
            ArrowTerm::Prim(g) => out.push(g),
            ArrowTerm::Comp(g, f) => {
                f.fold_gens(out);
                g.fold_gens(out);
            }
            ArrowTerm::Conj(l, r) | ArrowTerm::Disj(l, r) => {
                l.fold_gens(out);
                r.fold_gens(out);
            }
        }
    }

    pub fn count_kind(&self, kind: GenKind) -> usize {
        self.generators().iter().filter(|g| g.kind() == kind).count()
    }
}

// ---------------------------------------------------------------------------
// development

/// One factor of a development: a single generator applied at `path` inside
/// the running object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaStep {
    pub head: Gen,
    pub path: Path,
}

/// A factorization `f = f_n . ... . f_1 . id` in which every factor
/// contains exactly one generator. Built with categorial and bifunctorial
/// equations only, so both semantic functors are preserved.
#[derive(Debug, Clone)]
pub struct Development {
    pub source: Formula,
    pub steps: Vec<BetaStep>,
}

impl Development {
    /// Objects visited, starting with the source; `steps.len() + 1` entries.
    pub fn objects(&self) -> Result<Vec<Formula>> {
        let mut cur = self.source.clone();
        let mut out = vec![cur.clone()];
        for s in &self.steps {
            cur = apply_step(&cur, s)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn target(&self) -> Result<Formula> {
        Ok(self.objects()?.pop().unwrap())
    }

    /// Each step as a full arrow term (the head wrapped in identities).
    pub fn factors(&self) -> Result<Vec<ArrowTerm>> {
        let objects = self.objects()?;
        self.steps
            .iter()
            .zip(&objects)
            .map(|(s, obj)| beta_term(obj, s))
            .collect()
    }

    /// Recompose into a single arrow term.
    pub fn to_term(&self) -> Result<ArrowTerm> {
        let mut acc = ArrowTerm::Id(self.source.clone());
        for f in self.factors()? {
            acc = scomp(f, acc);
        }
        Ok(acc)
    }
}

/// Graft `step.head` into `obj` at `step.path`.
pub fn apply_step(obj: &Formula, step: &BetaStep) -> Result<Formula> {
    let sub = obj
        .subformula(&step.path)
        .ok_or_else(|| Error::Internal(format!("step path {} missing in {obj}", step.path)))?;
    if *sub != step.head.source() {
        return Err(Error::Internal(format!(
            "step head {} does not match subformula {sub}",
            step.head
        )));
    }
    Ok(obj.replace(&step.path.0, step.head.target()))
}

/// The step as an arrow term on the whole object.
pub fn beta_term(obj: &Formula, step: &BetaStep) -> Result<ArrowTerm> {
    fn wrap(obj: &Formula, rest: &[Dir], head: &Gen) -> Result<ArrowTerm> {
        match rest.split_first() {
            None => Ok(ArrowTerm::Prim(head.clone())),
            Some((d, tail)) => match (obj, d) {
                (Formula::Conj(a, b), Dir::L) => {
                    Ok(par_conj(wrap(a, tail, head)?, ArrowTerm::Id((**b).clone())))
                }
                (Formula::Conj(a, b), Dir::R) => {
                    Ok(par_conj(ArrowTerm::Id((**a).clone()), wrap(b, tail, head)?))
                }
                (Formula::Disj(a, b), Dir::L) => {
                    Ok(par_disj(wrap(a, tail, head)?, ArrowTerm::Id((**b).clone())))
                }
                (Formula::Disj(a, b), Dir::R) => {
                    Ok(par_disj(ArrowTerm::Id((**a).clone()), wrap(b, tail, head)?))
                }
                _ => Err(Error::Internal("beta_term: path does not resolve".into())),
            },
        }
    }
    wrap(obj, &step.path.0, &step.head)
}

/// Factorize an arrow term into single-generator steps. When both halves
/// of a parallel pair contain generators the left half's factors come
/// first; any order is equal by bifunctoriality.
pub fn develop(f: &ArrowTerm) -> Result<Development> {
    let (source, _) = f.type_of()?;
    let mut steps = Vec::new();
    collect_steps(f, &Path::root(), &mut steps);
    Ok(Development { source, steps })
}

fn collect_steps(f: &ArrowTerm, prefix: &Path, out: &mut Vec<BetaStep>) {
    match f {
        ArrowTerm::Id(_) => {}
        ArrowTerm::Prim(g) => out.push(BetaStep {
            head: g.clone(),
            path: prefix.clone(),
        }),
        ArrowTerm::Comp(g, h) => {
            collect_steps(h, prefix, out);
            collect_steps(g, prefix, out);
        }
        ArrowTerm::Conj(l, r) | ArrowTerm::Disj(l, r) => {
            collect_steps(l, &prefix.child(Dir::L), out);
            collect_steps(r, &prefix.child(Dir::R), out);
        }
    }
}

// ---------------------------------------------------------------------------
// theories

/// The closed theory table. Coherence class per theory is a proved fact,
/// not configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theory {
    /// biassociative
    A,
    /// normal biunital
    N,
    /// `N` plus kappa on letterless objects
    K0,
    /// normal bimonoidal
    NA,
    /// `NA` plus kappa on letterless objects
    KA0,
    /// intermuting
    Ck,
    /// biassociative intermuting
    ACk,
    /// bimonoidal intermuting
    ACkU,
    /// symmetric biassociative
    S,
    /// symmetric biassociative intermuting
    SCk,
    /// symmetric bimonoidal intermuting
    SCkU,
    /// lattice: `SCk` extended with diagonals, codiagonals and projections
    L,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceClass {
    Preorder,
    DiversifiedPreorder,
    RestrictedByPurity,
    FaithfulRel,
}

pub const ALL_THEORIES: [Theory; 12] = [
    Theory::A,
    Theory::N,
    Theory::K0,
    Theory::NA,
    Theory::KA0,
    Theory::Ck,
    Theory::ACk,
    Theory::ACkU,
    Theory::S,
    Theory::SCk,
    Theory::SCkU,
    Theory::L,
];

const B_KINDS: [GenKind; 4] = [
    GenKind::HbPlus,
    GenKind::HbMinus,
    GenKind::VbPlus,
    GenKind::VbMinus,
];

const N_KINDS: [GenKind; 12] = [
    GenKind::HdPlus,
    GenKind::HdMinus,
    GenKind::HsPlus,
    GenKind::HsMinus,
    GenKind::VdPlus,
    GenKind::VdMinus,
    GenKind::VsPlus,
    GenKind::VsMinus,
    GenKind::HwBotPlus,
    GenKind::HwBotMinus,
    GenKind::VwTopPlus,
    GenKind::VwTopMinus,
];

impl Theory {
    pub fn allows(self, k: GenKind) -> bool {
        let b = B_KINDS.contains(&k);
        let n = N_KINDS.contains(&k);
        let c = matches!(k, GenKind::Hc | GenKind::Vc);
        let ck = k == GenKind::Ck;
        let kappa = k == GenKind::Kappa;
        let lattice = matches!(
            k,
            GenKind::Hw | GenKind::Vw | GenKind::Hk1 | GenKind::Hk2 | GenKind::Vk1 | GenKind::Vk2
        );
        match self {
            Theory::A => b,
            Theory::N => n,
            Theory::K0 => n || kappa,
            Theory::NA => b || n,
            Theory::KA0 => b || n || kappa,
            Theory::Ck => ck,
            Theory::ACk => b || ck,
            Theory::ACkU => b || n || ck || kappa,
            Theory::S => b || c,
            Theory::SCk => b || c || ck,
            Theory::SCkU => b || c || n || ck || kappa,
            Theory::L => b || c || ck || lattice,
        }
    }

    /// `K0` and `KA0` are freely generated by the empty set of objects.
    pub fn letterless_only(self) -> bool {
        matches!(self, Theory::K0 | Theory::KA0)
    }

    pub fn class(self) -> CoherenceClass {
        match self {
            Theory::A | Theory::N | Theory::K0 | Theory::NA | Theory::KA0 | Theory::Ck
            | Theory::ACk => CoherenceClass::Preorder,
            Theory::S => CoherenceClass::DiversifiedPreorder,
            Theory::SCk | Theory::L => CoherenceClass::FaithfulRel,
            Theory::ACkU | Theory::SCkU => CoherenceClass::RestrictedByPurity,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theory::A => "A",
            Theory::N => "N",
            Theory::K0 => "K0",
            Theory::NA => "NA",
            Theory::KA0 => "KA0",
            Theory::Ck => "Ck",
            Theory::ACk => "ACk",
            Theory::ACkU => "ACkU",
            Theory::S => "S",
            Theory::SCk => "SCk",
            Theory::SCkU => "SCkU",
            Theory::L => "L",
        }
    }

    pub fn parse(s: &str) -> Option<Theory> {
        ALL_THEORIES.iter().copied().find(|t| t.name() == s)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// True iff every generator in `f` is allowed by `t` (and, for the
/// letterless theories, no letter occurs in any index).
pub fn validate_in_theory(f: &ArrowTerm, t: Theory) -> bool {
    theory_violation(f, t).is_none()
}

/// Human-readable reason why `f` does not live in `t`, if any.
pub fn theory_violation(f: &ArrowTerm, t: Theory) -> Option<String> {
    if t.letterless_only() {
        if let Ok((src, _)) = f.type_of() {
            if !src.is_letterless() {
                return Some(format!("{t} is generated by the empty set of objects"));
            }
        }
    }
    for g in f.generators() {
        if !t.allows(g.kind()) {
            return Some(Gen::token(g.kind()).to_string());
        }
        if t.letterless_only() && g.indices().iter().any(|i| !i.is_letterless()) {
            return Some(format!("{g} carries a letter index"));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// shapes and derived arrows

/// A shape over one connective and its unit; `Box` leaves are the argument
/// slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    UnitLeaf,
    Hole,
    Combine(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn arity(&self) -> usize {
        match self {
            Shape::UnitLeaf => 0,
            Shape::Hole => 1,
            Shape::Combine(a, b) => a.arity() + b.arity(),
        }
    }

    /// Instantiate over a connective: holes consume `args` left to right.
    pub fn apply(&self, is_conj: bool, unit: Formula, args: &[Formula]) -> Result<Formula> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch(format!(
                "shape of arity {} applied to {} arguments",
                self.arity(),
                args.len()
            )));
        }
        let mut rest = args;
        Ok(self.apply_walk(is_conj, &unit, &mut rest))
    }

    fn apply_walk(&self, is_conj: bool, unit: &Formula, args: &mut &[Formula]) -> Formula {
        match self {
            Shape::UnitLeaf => unit.clone(),
            Shape::Hole => {
                let (first, rest) = args.split_first().unwrap();
                *args = rest;
                first.clone()
            }
            Shape::Combine(a, b) => {
                let l = a.apply_walk(is_conj, unit, args);
                let r = b.apply_walk(is_conj, unit, args);
                if is_conj {
                    conj(l, r)
                } else {
                    disj(l, r)
                }
            }
        }
    }
}

/// `psi^M : M(A_1&A_1', ..., A_m&A_m') -> M(A...) & M(A'...)` for `M` a
/// `(|,F)`-shape. Identity factors are simplified away.
pub fn derive_psi(m: &Shape, args: &[Formula], args2: &[Formula]) -> Result<ArrowTerm> {
    if args.len() != m.arity() || args2.len() != m.arity() {
        return Err(Error::ArityMismatch(format!(
            "psi over shape of arity {} with {}/{} arguments",
            m.arity(),
            args.len(),
            args2.len()
        )));
    }
    Ok(match m {
        Shape::UnitLeaf => ArrowTerm::Prim(Gen::HwBotMinus),
        Shape::Hole => ArrowTerm::Id(conj(args[0].clone(), args2[0].clone())),
        Shape::Combine(l, r) => {
            let k = l.arity();
            let psi_l = derive_psi(l, &args[..k], &args2[..k])?;
            let psi_r = derive_psi(r, &args[k..], &args2[k..])?;
            let la = l.apply(false, Formula::Bot, &args[..k])?;
            let la2 = l.apply(false, Formula::Bot, &args2[..k])?;
            let ra = r.apply(false, Formula::Bot, &args[k..])?;
            let ra2 = r.apply(false, Formula::Bot, &args2[k..])?;
            scomp(
                ArrowTerm::Prim(Gen::Ck(la, la2, ra, ra2)),
                sdisj(psi_l, psi_r),
            )
        }
    })
}

/// `psibar^M : M(A...) | M(A'...) -> M(A_1|A_1', ...)` for `M` a
/// `(&,T)`-shape.
pub fn derive_psibar(m: &Shape, args: &[Formula], args2: &[Formula]) -> Result<ArrowTerm> {
    if args.len() != m.arity() || args2.len() != m.arity() {
        return Err(Error::ArityMismatch(format!(
            "psibar over shape of arity {} with {}/{} arguments",
            m.arity(),
            args.len(),
            args2.len()
        )));
    }
    Ok(match m {
        Shape::UnitLeaf => ArrowTerm::Prim(Gen::VwTopPlus),
        Shape::Hole => ArrowTerm::Id(disj(args[0].clone(), args2[0].clone())),
        Shape::Combine(l, r) => {
            let k = l.arity();
            let psi_l = derive_psibar(l, &args[..k], &args2[..k])?;
            let psi_r = derive_psibar(r, &args[k..], &args2[k..])?;
            let la = l.apply(true, Formula::Top, &args[..k])?;
            let la2 = l.apply(true, Formula::Top, &args2[..k])?;
            let ra = r.apply(true, Formula::Top, &args[k..])?;
            let ra2 = r.apply(true, Formula::Top, &args2[k..])?;
            scomp(
                sconj(psi_l, psi_r),
                ArrowTerm::Prim(Gen::Ck(la, ra, la2, ra2)),
            )
        }
    })
}

/// `pi_top^M : M(T,...,T) -> T` for `M` a `(|,F)`-shape.
pub fn derive_pi_top(m: &Shape) -> ArrowTerm {
    match m {
        Shape::UnitLeaf => ArrowTerm::Prim(Gen::Kappa),
        Shape::Hole => ArrowTerm::Id(Formula::Top),
        Shape::Combine(l, r) => scomp(
            ArrowTerm::Prim(Gen::VwTopPlus),
            sdisj(derive_pi_top(l), derive_pi_top(r)),
        ),
    }
}

/// `pi_bot^M : F -> M(F,...,F)` for `M` a `(&,T)`-shape.
pub fn derive_pi_bot(m: &Shape) -> ArrowTerm {
    match m {
        Shape::UnitLeaf => ArrowTerm::Prim(Gen::Kappa),
        Shape::Hole => ArrowTerm::Id(Formula::Bot),
        Shape::Combine(l, r) => scomp(
            sconj(derive_pi_bot(l), derive_pi_bot(r)),
            ArrowTerm::Prim(Gen::HwBotMinus),
        ),
    }
}

// ---------------------------------------------------------------------------
// arrow grammar

impl fmt::Display for ArrowTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_arrow(self, f, 0)
    }
}

// levels: 0 composition chain, 1 parallel chain, 2 prim
fn write_arrow(t: &ArrowTerm, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
    let mine = match t {
        ArrowTerm::Comp(..) => 0,
        ArrowTerm::Conj(..) | ArrowTerm::Disj(..) => 1,
        _ => 2,
    };
    let parens = mine < level;
    if parens {
        write!(f, "(")?;
    }
    match t {
        ArrowTerm::Id(a) => write!(f, "id{{{a}}}")?,
        ArrowTerm::Prim(g) => write!(f, "{g}")?,
        ArrowTerm::Comp(g, h) => {
            write_arrow(g, f, 1)?;
            write!(f, " . ")?;
            // left-of-'.' applied last; chains flatten without parens
            write_arrow(h, f, 0)?;
        }
        ArrowTerm::Conj(l, r) => {
            write_arrow(l, f, 1)?;
            write!(f, " & ")?;
            write_arrow(r, f, 2)?;
        }
        ArrowTerm::Disj(l, r) => {
            write_arrow(l, f, 1)?;
            write!(f, " | ")?;
            write_arrow(r, f, 2)?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

pub fn parse_arrow(src: &str) -> Result<ArrowTerm> {
    let mut lx = Lexer::new(src);
    let t = arrow(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input".into()));
    }
    Ok(t)
}

fn arrow(lx: &mut Lexer) -> Result<ArrowTerm> {
    let first = par(lx)?;
    let mut parts = vec![first];
    while lx.eat(b'.') {
        parts.push(par(lx)?);
    }
    // g . f means f first: fold from the right
    let mut acc = parts.pop().unwrap();
    while let Some(g) = parts.pop() {
        acc = comp(g, acc);
    }
    Ok(acc)
}

fn par(lx: &mut Lexer) -> Result<ArrowTerm> {
    let mut acc = prim(lx)?;
    loop {
        if lx.eat(b'&') {
            let rhs = prim(lx)?;
            acc = par_conj(acc, rhs);
        } else if lx.eat(b'|') {
            let rhs = prim(lx)?;
            acc = par_disj(acc, rhs);
        } else {
            break;
        }
    }
    Ok(acc)
}

fn prim(lx: &mut Lexer) -> Result<ArrowTerm> {
    if lx.eat(b'(') {
        let inner = arrow(lx)?;
        lx.expect(b')')?;
        return Ok(inner);
    }
    let name = gen_name(lx)?;
    if name == "id" {
        lx.expect(b'{')?;
        let a = lx.formula()?;
        lx.expect(b'}')?;
        return Ok(ArrowTerm::Id(a));
    }
    let nullary: &[(&str, Gen)] = &[
        ("hwb+", Gen::HwBotPlus),
        ("hwb-", Gen::HwBotMinus),
        ("vwt+", Gen::VwTopPlus),
        ("vwt-", Gen::VwTopMinus),
        ("kappa", Gen::Kappa),
    ];
    if let Some((_, g)) = nullary.iter().find(|(n, _)| *n == name) {
        return Ok(ArrowTerm::Prim(g.clone()));
    }
    lx.expect(b'{')?;
    let mut args = vec![lx.formula()?];
    while lx.eat(b',') {
        args.push(lx.formula()?);
    }
    lx.expect(b'}')?;
    let n_args = args.len();
    let wrong = {
        let name = name.clone();
        move |n: usize| {
            Error::ArityMismatch(format!("{name} expects {n} index formulas, got {n_args}"))
        }
    };
    let mut a = args.into_iter();
    macro_rules! take {
        () => {
            a.next().unwrap()
        };
    }
    let g = match (name.as_str(), a.len()) {
        ("hb+", 3) => Gen::HbPlus(take!(), take!(), take!()),
        ("hb-", 3) => Gen::HbMinus(take!(), take!(), take!()),
        ("vb+", 3) => Gen::VbPlus(take!(), take!(), take!()),
        ("vb-", 3) => Gen::VbMinus(take!(), take!(), take!()),
        ("hc", 2) => Gen::Hc(take!(), take!()),
        ("vc", 2) => Gen::Vc(take!(), take!()),
        ("hd+", 1) => Gen::HdPlus(take!()),
        ("hd-", 1) => Gen::HdMinus(take!()),
        ("hs+", 1) => Gen::HsPlus(take!()),
        ("hs-", 1) => Gen::HsMinus(take!()),
        ("vd+", 1) => Gen::VdPlus(take!()),
        ("vd-", 1) => Gen::VdMinus(take!()),
        ("vs+", 1) => Gen::VsPlus(take!()),
        ("vs-", 1) => Gen::VsMinus(take!()),
        ("ck", 4) => Gen::Ck(take!(), take!(), take!(), take!()),
        ("hw", 1) => Gen::Hw(take!()),
        ("vw", 1) => Gen::Vw(take!()),
        ("hk1", 2) => Gen::Hk1(take!(), take!()),
        ("hk2", 2) => Gen::Hk2(take!(), take!()),
        ("vk1", 2) => Gen::Vk1(take!(), take!()),
        ("vk2", 2) => Gen::Vk2(take!(), take!()),
        ("hb+", _) | ("hb-", _) | ("vb+", _) | ("vb-", _) => return Err(wrong(3)),
        ("hc", _) | ("vc", _) | ("hk1", _) | ("hk2", _) | ("vk1", _) | ("vk2", _) => {
            return Err(wrong(2))
        }
        ("ck", _) => return Err(wrong(4)),
        ("hd+", _) | ("hd-", _) | ("hs+", _) | ("hs-", _) | ("vd+", _) | ("vd-", _)
        | ("vs+", _) | ("vs-", _) | ("hw", _) | ("vw", _) => return Err(wrong(1)),
        _ => return Err(lx.err(format!("unknown generator `{name}`"))),
    };
    Ok(ArrowTerm::Prim(g))
}

fn gen_name(lx: &mut Lexer) -> Result<String> {
    lx.skip_ws();
    let mut name = lx.ident()?;
    if lx.eat(b'+') {
        name.push('+');
    } else if lx.peek() == Some(b'-') {
        // '-' only belongs to the name when a '{' or another token follows;
        // generator names are short so this is unambiguous
        lx.bump();
        name.push('-');
    }
    Ok(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn pf(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn pa(s: &str) -> ArrowTerm {
        parse_arrow(s).unwrap()
    }

    #[test]
    fn ck_component_type() {
        let g = Gen::Ck(pf("p"), pf("q"), pf("r"), pf("s"));
        assert_eq!(g.source(), pf("(p&q)|(r&s)"));
        assert_eq!(g.target(), pf("(p|r)&(q|s)"));
    }

    #[test]
    fn id_type() {
        let t = ArrowTerm::Id(pf("p&q"));
        assert_eq!(t.type_of().unwrap(), (pf("p&q"), pf("p&q")));
    }

    #[test]
    fn ill_typed_composition_reports_mismatch() {
        let t = comp(
            ArrowTerm::Prim(Gen::HdPlus(pf("p"))),
            ArrowTerm::Prim(Gen::Ck(pf("p"), pf("q"), pf("r"), pf("s"))),
        );
        match t.type_of() {
            Err(Error::IllTyped { target, src, .. }) => {
                assert_eq!(target, pf("(p|r)&(q|s)"));
                assert_eq!(src, pf("p&T"));
            }
            other => panic!("expected IllTyped, got {other:?}"),
        }
    }

    #[test]
    fn develop_parallel_pair_left_first() {
        let ck1 = ArrowTerm::Prim(Gen::Ck(pf("p"), pf("q"), pf("r"), pf("s")));
        let ck2 = ArrowTerm::Prim(Gen::Ck(pf("t"), pf("u"), pf("v"), pf("w")));
        let t = par_conj(ck1, ck2);
        let dev = develop(&t).unwrap();
        assert_eq!(dev.steps.len(), 2);
        assert_eq!(dev.steps[0].path, Path(vec![Dir::L]));
        assert_eq!(dev.steps[1].path, Path(vec![Dir::R]));
        let factors = dev.factors().unwrap();
        assert!(matches!(&factors[0], ArrowTerm::Conj(l, r)
            if matches!(**l, ArrowTerm::Prim(_)) && matches!(**r, ArrowTerm::Id(_))));
        assert_eq!(dev.target().unwrap(), t.target().unwrap());
    }

    #[test]
    fn develop_kappa_and_id() {
        let dev = develop(&ArrowTerm::Prim(Gen::Kappa)).unwrap();
        assert_eq!(dev.steps.len(), 1);
        let dev = develop(&ArrowTerm::Id(pf("p|q"))).unwrap();
        assert!(dev.steps.is_empty());
        assert_eq!(dev.source, pf("p|q"));
    }

    #[test]
    fn theory_membership_examples() {
        let ck = ArrowTerm::Prim(Gen::Ck(pf("p"), pf("q"), pf("r"), pf("s")));
        assert!(!validate_in_theory(&ck, Theory::A));
        let hb = ArrowTerm::Prim(Gen::HbPlus(pf("p"), pf("q"), pf("r")));
        assert!(validate_in_theory(&hb, Theory::ACk));
        let hw = ArrowTerm::Prim(Gen::Hw(pf("p")));
        assert!(!validate_in_theory(&hw, Theory::SCk));
        assert!(validate_in_theory(&hw, Theory::L));
    }

    #[test]
    fn letterless_theories_reject_letters() {
        let t = ArrowTerm::Prim(Gen::HdPlus(pf("p")));
        assert!(!validate_in_theory(&t, Theory::K0));
        let t = ArrowTerm::Prim(Gen::HdPlus(pf("F")));
        assert!(validate_in_theory(&t, Theory::K0));
    }

    #[test]
    fn psi_examples() {
        // box | box
        let m = Shape::Combine(Box::new(Shape::Hole), Box::new(Shape::Hole));
        let t = derive_psi(&m, &[pf("a"), pf("b")], &[pf("a_"), pf("b_")]).unwrap();
        assert_eq!(t, ArrowTerm::Prim(Gen::Ck(pf("a"), pf("a_"), pf("b"), pf("b_"))));
        // box
        let t = derive_psi(&Shape::Hole, &[pf("a")], &[pf("b")]).unwrap();
        assert_eq!(t, ArrowTerm::Id(pf("a&b")));
        // unit leaf
        let t = derive_psi(&Shape::UnitLeaf, &[], &[]).unwrap();
        assert_eq!(t, ArrowTerm::Prim(Gen::HwBotMinus));
    }

    #[test]
    fn pi_examples() {
        assert_eq!(derive_pi_top(&Shape::UnitLeaf), ArrowTerm::Prim(Gen::Kappa));
        assert_eq!(derive_pi_top(&Shape::Hole), ArrowTerm::Id(Formula::Top));
        let m = Shape::Combine(Box::new(Shape::Hole), Box::new(Shape::Hole));
        assert_eq!(derive_pi_top(&m), ArrowTerm::Prim(Gen::VwTopPlus));
    }

    #[test]
    fn psi_type_matches_display_for_small_shapes() {
        // psi^M : M(A_i & A_i') -> M(A) & M(A')
        let m = Shape::Combine(
            Box::new(Shape::Combine(Box::new(Shape::Hole), Box::new(Shape::UnitLeaf))),
            Box::new(Shape::Hole),
        );
        let a = [pf("p"), pf("q")];
        let a2 = [pf("r"), pf("s")];
        let t = derive_psi(&m, &a, &a2).unwrap();
        let (src, tgt) = t.type_of().unwrap();
        let lhs: Vec<Formula> = a
            .iter()
            .zip(&a2)
            .map(|(x, y)| conj(x.clone(), y.clone()))
            .collect();
        assert_eq!(src, m.apply(false, Formula::Bot, &lhs).unwrap());
        assert_eq!(
            tgt,
            conj(
                m.apply(false, Formula::Bot, &a).unwrap(),
                m.apply(false, Formula::Bot, &a2).unwrap()
            )
        );
    }

    #[test]
    fn arrow_parse_print_round_trip() {
        for s in [
            "ck{p,q,r,s}",
            "id{p&q}",
            "kappa",
            "hwb- | vwt+",
            "hb+{p,q,r} . (id{p} & hc{q,r} & id{s})",
            "(hd+{p} | hs+{q}) . vc{p&T,T&q}",
            "hk1{p,q} & vk2{r,s}",
        ] {
            let t = pa(s);
            assert_eq!(pa(&t.to_string()), t, "round trip through {s}");
        }
    }

    #[test]
    fn display_matches_spec_token_shapes() {
        let t = ArrowTerm::Prim(Gen::Ck(pf("p"), pf("q"), pf("r"), pf("s")));
        assert_eq!(t.to_string(), "ck{p,q,r,s}");
        assert_eq!(pa("ck{p,q,r,s}"), t);
    }
}
