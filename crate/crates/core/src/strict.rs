//! Strictified objects: form sequences (flattened ordered trees, objects
//! modulo associativity) and form sets (canonically sorted, objects modulo
//! associativity and commutativity), together with the letter-sequence
//! calculus read off their rectangular grids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conn {
    Conj,
    Disj,
}

impl Conn {
    pub fn dual(self) -> Conn {
        match self {
            Conn::Conj => Conn::Disj,
            Conn::Disj => Conn::Conj,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Conn::Conj => '&',
            Conn::Disj => '|',
        }
    }
}

/// A flattened constant-free tree: no child of a node carries its parent's
/// connective, and nodes have at least two children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormSeq {
    Leaf(String),
    Node(Conn, Vec<FormSeq>),
}

impl FormSeq {
    pub fn leaf(p: &str) -> FormSeq {
        FormSeq::Leaf(p.to_string())
    }

    /// Flattening constructor: children with the same connective are
    /// spliced in place, a single child collapses.
    pub fn node(conn: Conn, children: Vec<FormSeq>) -> FormSeq {
        let mut out = Vec::with_capacity(children.len());
        for c in children {
            match c {
                FormSeq::Node(k, grand) if k == conn => out.extend(grand),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            FormSeq::Node(conn, out)
        }
    }

    pub fn conj(parts: Vec<FormSeq>) -> FormSeq {
        FormSeq::node(Conn::Conj, parts)
    }

    pub fn disj(parts: Vec<FormSeq>) -> FormSeq {
        FormSeq::node(Conn::Disj, parts)
    }

    /// Collapse a constant-free formula; two formulas connected by
    /// associativity arrows collapse identically.
    pub fn strictify(a: &Formula) -> Result<FormSeq> {
        match a {
            Formula::Letter(p) => Ok(FormSeq::Leaf(p.clone())),
            Formula::Top | Formula::Bot => Err(Error::HasUnits),
            Formula::Conj(l, r) => Ok(FormSeq::node(
                Conn::Conj,
                vec![FormSeq::strictify(l)?, FormSeq::strictify(r)?],
            )),
            Formula::Disj(l, r) => Ok(FormSeq::node(
                Conn::Disj,
                vec![FormSeq::strictify(l)?, FormSeq::strictify(r)?],
            )),
        }
    }

    /// A binary formula representative (left-nested).
    pub fn to_formula(&self) -> Formula {
        match self {
            FormSeq::Leaf(p) => Formula::Letter(p.clone()),
            FormSeq::Node(conn, kids) => {
                let mut it = kids.iter().map(FormSeq::to_formula);
                let first = it.next().unwrap();
                it.fold(first, |acc, x| match conn {
                    Conn::Conj => crate::formula::conj(acc, x),
                    Conn::Disj => crate::formula::disj(acc, x),
                })
            }
        }
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            FormSeq::Leaf(p) => {
                out.insert(p.clone());
            }
            FormSeq::Node(_, kids) => kids.iter().for_each(|k| k.collect_letters(out)),
        }
    }

    /// Letter occurrences left to right.
    pub fn letter_row(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_row(&mut out);
        out
    }

    fn collect_row(&self, out: &mut Vec<String>) {
        match self {
            FormSeq::Leaf(p) => out.push(p.clone()),
            FormSeq::Node(_, kids) => kids.iter().for_each(|k| k.collect_row(out)),
        }
    }

    pub fn occ_count(&self) -> usize {
        match self {
            FormSeq::Leaf(_) => 1,
            FormSeq::Node(_, kids) => kids.iter().map(FormSeq::occ_count).sum(),
        }
    }

    pub fn is_diversified(&self) -> bool {
        let row = self.letter_row();
        let set: BTreeSet<&String> = row.iter().collect();
        set.len() == row.len()
    }

    pub fn check_diversified(&self) -> Result<()> {
        let row = self.letter_row();
        let mut seen = BTreeSet::new();
        for p in row {
            if !seen.insert(p.clone()) {
                return Err(Error::NotDiversified(p));
            }
        }
        Ok(())
    }

    /// Number of binary occurrences of `conn`: a node with k children
    /// counts k - 1.
    pub fn binary_count(&self, conn: Conn) -> usize {
        match self {
            FormSeq::Leaf(_) => 0,
            FormSeq::Node(k, kids) => {
                let own = if *k == conn { kids.len() - 1 } else { 0 };
                own + kids.iter().map(|c| c.binary_count(conn)).sum::<usize>()
            }
        }
    }

    pub fn node_at(&self, path: &[usize]) -> Option<&FormSeq> {
        let mut cur = self;
        for &i in path {
            match cur {
                FormSeq::Node(_, kids) => cur = kids.get(i)?,
                FormSeq::Leaf(_) => return None,
            }
        }
        Some(cur)
    }

    /// Canonical representative for the associativity-and-commutativity
    /// class: children sorted recursively by (least letter, size, text).
    pub fn sorted(&self) -> FormSeq {
        match self {
            FormSeq::Leaf(_) => self.clone(),
            FormSeq::Node(conn, kids) => {
                let mut sorted: Vec<FormSeq> = kids.iter().map(FormSeq::sorted).collect();
                sorted.sort_by_key(sort_key);
                FormSeq::Node(*conn, sorted)
            }
        }
    }

    /// Rename letters wherever the map is defined.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> FormSeq {
        match self {
            FormSeq::Leaf(p) => FormSeq::Leaf(map.get(p).cloned().unwrap_or_else(|| p.clone())),
            FormSeq::Node(conn, kids) => {
                FormSeq::node(*conn, kids.iter().map(|k| k.rename(map)).collect())
            }
        }
    }

    /// The structural shape with letters erased, for substitution-instance
    /// comparisons.
    pub fn skeleton(&self) -> String {
        match self {
            FormSeq::Leaf(_) => "*".into(),
            FormSeq::Node(conn, kids) => {
                let inner: Vec<String> = kids.iter().map(FormSeq::skeleton).collect();
                format!("({}{})", conn.symbol(), inner.join(","))
            }
        }
    }
}

fn sort_key(x: &FormSeq) -> (String, usize, String) {
    let least = x.letter_row().into_iter().min().unwrap_or_default();
    (least, x.occ_count(), x.to_string())
}

/// A form set: a form sequence held in canonical sorted order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormSet(FormSeq);

impl FormSet {
    pub fn new(x: FormSeq) -> FormSet {
        FormSet(x.sorted())
    }

    pub fn strictify(a: &Formula) -> Result<FormSet> {
        Ok(FormSet::new(FormSeq::strictify(a)?))
    }

    pub fn seq(&self) -> &FormSeq {
        &self.0
    }

    pub fn into_seq(self) -> FormSeq {
        self.0
    }
}

impl fmt::Display for FormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for FormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Set-equality of form sequences (associativity plus commutativity).
pub fn set_eq(a: &FormSeq, b: &FormSeq) -> bool {
    a.sorted() == b.sorted()
}

impl fmt::Display for FormSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSeq::Leaf(p) => write!(f, "{p}"),
            FormSeq::Node(conn, kids) => {
                for (i, k) in kids.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{}", conn.symbol())?;
                    }
                    // a disjunction inside a conjunction needs parentheses
                    let parens = matches!(
                        (conn, k),
                        (Conn::Conj, FormSeq::Node(Conn::Disj, _))
                    );
                    if parens {
                        write!(f, "({k})")?;
                    } else {
                        write!(f, "{k}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for FormSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn parse_form_seq(src: &str) -> Result<FormSeq> {
    let f = crate::formula::parse_formula(src)?;
    FormSeq::strictify(&f)
}

// ---------------------------------------------------------------------------
// occurrences and the T/B/L/R calculus

/// A binary occurrence of a connective: the node holding it plus the gap
/// position between two adjacent children. A node with k children carries
/// k - 1 binary occurrences of its connective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConnOcc {
    pub conn: Conn,
    pub path: Vec<usize>,
    pub gap: usize,
}

impl fmt::Display for ConnOcc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(
            f,
            "{}@[{}]#{}",
            self.conn.symbol(),
            path.join("."),
            self.gap
        )
    }
}

/// All binary occurrences of `conn`, in depth-first order.
pub fn occurrences(x: &FormSeq, conn: Conn) -> Vec<ConnOcc> {
    let mut out = Vec::new();
    walk_occ(x, conn, &mut Vec::new(), &mut out);
    out
}

fn walk_occ(x: &FormSeq, conn: Conn, path: &mut Vec<usize>, out: &mut Vec<ConnOcc>) {
    if let FormSeq::Node(k, kids) = x {
        if *k == conn {
            for gap in 0..kids.len() - 1 {
                out.push(ConnOcc {
                    conn,
                    path: path.clone(),
                    gap,
                });
            }
        }
        for (i, kid) in kids.iter().enumerate() {
            path.push(i);
            walk_occ(kid, conn, path, out);
            path.pop();
        }
    }
}

/// The four letter sequences `T`, `B`, `L`, `R` (top and bottom rows, left
/// and right columns of the grid).
pub fn tblr(x: &FormSeq) -> [Vec<String>; 4] {
    [
        seq_of(x, Side::Top),
        seq_of(x, Side::Bottom),
        seq_of(x, Side::Left),
        seq_of(x, Side::Right),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

/// `T`/`B` concatenate across `&` and pick the first/last disjunct;
/// `L`/`R` concatenate across `|` and pick the first/last conjunct.
pub fn seq_of(x: &FormSeq, side: Side) -> Vec<String> {
    match x {
        FormSeq::Leaf(p) => vec![p.clone()],
        FormSeq::Node(conn, kids) => {
            let concat_over = match side {
                Side::Top | Side::Bottom => Conn::Conj,
                Side::Left | Side::Right => Conn::Disj,
            };
            if *conn == concat_over {
                kids.iter().flat_map(|k| seq_of(k, side)).collect()
            } else {
                let pick = match side {
                    Side::Top | Side::Left => kids.first(),
                    Side::Bottom | Side::Right => kids.last(),
                };
                seq_of(pick.unwrap(), side)
            }
        }
    }
}

/// The flanking sequences of a binary occurrence: `(L_x, R_x)` for a `&`
/// occurrence, `(T_y, B_y)` for a `|` occurrence. The first component
/// flanks the gap on its right side, the second on its left.
pub fn flank(x: &FormSeq, occ: &ConnOcc) -> Result<(Vec<String>, Vec<String>)> {
    let node = x.node_at(&occ.path).ok_or(Error::BadOccurrence)?;
    match node {
        FormSeq::Node(conn, kids) if *conn == occ.conn && occ.gap + 1 < kids.len() => {
            match occ.conn {
                // L_x = L(right neighbour), R_x = R(left neighbour)
                Conn::Conj => Ok((
                    seq_of(&kids[occ.gap + 1], Side::Left),
                    seq_of(&kids[occ.gap], Side::Right),
                )),
                // T_y = T(part below), B_y = B(part above)
                Conn::Disj => Ok((
                    seq_of(&kids[occ.gap + 1], Side::Top),
                    seq_of(&kids[occ.gap], Side::Bottom),
                )),
            }
        }
        _ => Err(Error::BadOccurrence),
    }
}

// ---------------------------------------------------------------------------
// the above/beside relations, borders and transversals

/// Immediate vertical adjacency: pairs `(q, p)` with `q` just above `p`
/// (i.e. `q` in `B_y` and `p` in `T_y` for some `|` occurrence `y`).
pub fn above(x: &FormSeq) -> Result<BTreeSet<(String, String)>> {
    x.check_diversified()?;
    let mut out = BTreeSet::new();
    for occ in occurrences(x, Conn::Disj) {
        let (t, b) = flank(x, &occ)?;
        for q in &b {
            for p in &t {
                out.insert((q.clone(), p.clone()));
            }
        }
    }
    Ok(out)
}

/// Immediate horizontal adjacency: pairs `(q, p)` with `q` just left of
/// `p` (i.e. `q` in `R_x` and `p` in `L_x` for some `&` occurrence `x`).
pub fn beside(x: &FormSeq) -> Result<BTreeSet<(String, String)>> {
    x.check_diversified()?;
    let mut out = BTreeSet::new();
    for occ in occurrences(x, Conn::Conj) {
        let (l, r) = flank(x, &occ)?;
        for q in &r {
            for p in &l {
                out.insert((q.clone(), p.clone()));
            }
        }
    }
    Ok(out)
}

pub fn transitive_closure(rel: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut out = rel.clone();
    loop {
        let mut grew = false;
        let snapshot: Vec<(String, String)> = out.iter().cloned().collect();
        for (a, b) in &snapshot {
            for (c, d) in &snapshot {
                if b == c && out.insert((a.clone(), d.clone())) {
                    grew = true;
                }
            }
        }
        if !grew {
            return out;
        }
    }
}

/// The four borders, each ordered by the respective adjacency closure:
/// `[left, right, top, bottom]`. Left and right run top to bottom, top
/// and bottom run left to right.
pub fn borders(x: &FormSeq) -> Result<[Vec<String>; 4]> {
    x.check_diversified()?;
    let above_star = transitive_closure(&above(x)?);
    let beside_star = transitive_closure(&beside(x)?);

    let mut in_l: BTreeSet<String> = BTreeSet::new();
    let mut in_r: BTreeSet<String> = BTreeSet::new();
    let mut in_t: BTreeSet<String> = BTreeSet::new();
    let mut in_b: BTreeSet<String> = BTreeSet::new();
    for occ in occurrences(x, Conn::Conj) {
        let (l, r) = flank(x, &occ)?;
        in_l.extend(l);
        in_r.extend(r);
    }
    for occ in occurrences(x, Conn::Disj) {
        let (t, b) = flank(x, &occ)?;
        in_t.extend(t);
        in_b.extend(b);
    }
    let all = x.letters();
    let left: Vec<String> = all.iter().filter(|p| !in_l.contains(*p)).cloned().collect();
    let right: Vec<String> = all.iter().filter(|p| !in_r.contains(*p)).cloned().collect();
    let top: Vec<String> = all.iter().filter(|p| !in_t.contains(*p)).cloned().collect();
    let bottom: Vec<String> = all.iter().filter(|p| !in_b.contains(*p)).cloned().collect();

    Ok([
        order_chain(left, &above_star)?,
        order_chain(right, &above_star)?,
        order_chain(top, &beside_star)?,
        order_chain(bottom, &beside_star)?,
    ])
}

/// Arrange a border set into the unique chain of the given strict order;
/// consecutive members must be related.
fn order_chain(
    mut items: Vec<String>,
    rel_star: &BTreeSet<(String, String)>,
) -> Result<Vec<String>> {
    items.sort_by(|a, b| {
        if rel_star.contains(&(a.clone(), b.clone())) {
            std::cmp::Ordering::Less
        } else if rel_star.contains(&(b.clone(), a.clone())) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    for w in items.windows(2) {
        if !rel_star.contains(&(w[0].clone(), w[1].clone())) {
            return Err(Error::Internal(format!(
                "border letters {} and {} are unordered",
                w[0], w[1]
            )));
        }
    }
    Ok(items)
}

/// All horizontal transversals: sequences of `|` occurrences running from
/// a left-border letter to a right-border letter, consecutive ones chained
/// by the beside relation.
pub fn transversals(x: &FormSeq) -> Result<Vec<Vec<ConnOcc>>> {
    x.check_diversified()?;
    let [left, right, ..] = borders(x)?;
    let left: BTreeSet<&String> = left.iter().collect();
    let right: BTreeSet<&String> = right.iter().collect();
    let beside_rel = beside(x)?;

    let occs = occurrences(x, Conn::Disj);
    let mut flanks = Vec::with_capacity(occs.len());
    for occ in &occs {
        flanks.push(flank(x, occ)?);
    }

    let mut done: Vec<Vec<ConnOcc>> = Vec::new();
    // stack of partial transversals, extended rightward
    let mut stack: Vec<Vec<usize>> = (0..occs.len())
        .filter(|&i| left.contains(&flanks[i].0[0]))
        .map(|i| vec![i])
        .collect();
    while let Some(partial) = stack.pop() {
        let last = *partial.last().unwrap();
        let last_letter = flanks[last].0.last().unwrap().clone();
        if right.contains(&last_letter) {
            done.push(partial.iter().map(|&i| occs[i].clone()).collect());
            continue;
        }
        for (i, fl) in flanks.iter().enumerate() {
            if partial.contains(&i) {
                continue;
            }
            if beside_rel.contains(&(last_letter.clone(), fl.0[0].clone())) {
                let mut next = partial.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    done.sort();
    Ok(done)
}

// ---------------------------------------------------------------------------
// letter deletion

/// Delete a set of letters; the result must keep at least one letter.
pub fn delete_letters(x: &FormSeq, p: &BTreeSet<String>) -> Result<FormSeq> {
    x.check_diversified()?;
    match try_delete(x, p) {
        Some(y) => Ok(y),
        None => Err(Error::WouldEraseAll(p.iter().cloned().collect())),
    }
}

/// As `delete_letters` but total: `None` when everything is erased.
pub fn try_delete(x: &FormSeq, p: &BTreeSet<String>) -> Option<FormSeq> {
    match x {
        FormSeq::Leaf(q) => {
            if p.contains(q) {
                None
            } else {
                Some(x.clone())
            }
        }
        FormSeq::Node(conn, kids) => {
            let remaining: Vec<FormSeq> = kids.iter().filter_map(|k| try_delete(k, p)).collect();
            if remaining.is_empty() {
                None
            } else {
                Some(FormSeq::node(*conn, remaining))
            }
        }
    }
}

/// `X^{-Y}`: delete the letters of `other`.
pub fn delete_other(x: &FormSeq, other: &FormSeq) -> Result<FormSeq> {
    delete_letters(x, &other.letters())
}
