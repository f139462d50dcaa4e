//! The rectangular grid of a form sequence: `&` cuts vertically, `|` cuts
//! horizontally, recursively inside an enclosing rectangle. Coordinates
//! are exact rationals obtained by halving, so crossings are detected
//! without rounding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::strict::{Conn, ConnOcc, FormSeq};

pub type Rat = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointQ {
    pub x: Rat,
    pub y: Rat,
}

/// Axis-aligned rectangle; `y` grows downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectQ {
    pub x0: Rat,
    pub y0: Rat,
    pub x1: Rat,
    pub y1: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orient {
    Vertical,
    Horizontal,
}

/// One maximal dividing segment, tagged with the binary connective
/// occurrence it corresponds to.
#[derive(Debug, Clone)]
pub struct Segment {
    pub orient: Orient,
    pub a: PointQ,
    pub b: PointQ,
    pub tag: ConnOcc,
}

/// Direction indices attached to crossing points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DirIdx {
    Down,
    Up,
    Right,
    Left,
}

impl DirIdx {
    pub fn name(self) -> &'static str {
        match self {
            DirIdx::Down => "down",
            DirIdx::Up => "up",
            DirIdx::Right => "right",
            DirIdx::Left => "left",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub rect: RectQ,
    pub segments: Vec<Segment>,
    pub crossings: Vec<(PointQ, BTreeSet<DirIdx>)>,
    pub cells: Vec<(RectQ, String)>,
}

/// Build the grid of a form sequence. A node with k children splits its
/// rectangle by recursive halving: the j-th cut sits at `1 - 2^-j` of the
/// remaining extent.
pub fn grid(x: &FormSeq) -> Grid {
    let unit = RectQ {
        x0: Rat::zero(),
        y0: Rat::zero(),
        x1: Rat::from_integer(1),
        y1: Rat::from_integer(1),
    };
    let mut segments = Vec::new();
    let mut cells = Vec::new();
    subdivide(x, unit, &mut Vec::new(), &mut segments, &mut cells);
    let crossings = index_crossings(&segments);
    Grid {
        rect: unit,
        segments,
        crossings,
        cells,
    }
}

fn halving_cuts(lo: Rat, hi: Rat, k: usize) -> Vec<Rat> {
    // k children need k-1 cuts at lo + (hi-lo)(1 - 2^-j)
    let mut cuts = Vec::with_capacity(k.saturating_sub(1));
    let span = hi - lo;
    let mut frac = Rat::new(1, 2);
    for _ in 1..k {
        cuts.push(lo + span * (Rat::from_integer(1) - frac));
        frac /= 2;
    }
    cuts
}

fn subdivide(
    x: &FormSeq,
    rect: RectQ,
    path: &mut Vec<usize>,
    segments: &mut Vec<Segment>,
    cells: &mut Vec<(RectQ, String)>,
) {
    match x {
        FormSeq::Leaf(p) => cells.push((rect, p.clone())),
        FormSeq::Node(conn, kids) => {
            let cuts = match conn {
                Conn::Conj => halving_cuts(rect.x0, rect.x1, kids.len()),
                Conn::Disj => halving_cuts(rect.y0, rect.y1, kids.len()),
            };
            for (gap, &c) in cuts.iter().enumerate() {
                let tag = ConnOcc {
                    conn: *conn,
                    path: path.clone(),
                    gap,
                };
                let seg = match conn {
                    Conn::Conj => Segment {
                        orient: Orient::Vertical,
                        a: PointQ { x: c, y: rect.y0 },
                        b: PointQ { x: c, y: rect.y1 },
                        tag,
                    },
                    Conn::Disj => Segment {
                        orient: Orient::Horizontal,
                        a: PointQ { x: rect.x0, y: c },
                        b: PointQ { x: rect.x1, y: c },
                        tag,
                    },
                };
                segments.push(seg);
            }
            let mut bounds = vec![match conn {
                Conn::Conj => rect.x0,
                Conn::Disj => rect.y0,
            }];
            bounds.extend(cuts.iter().copied());
            bounds.push(match conn {
                Conn::Conj => rect.x1,
                Conn::Disj => rect.y1,
            });
            for (i, kid) in kids.iter().enumerate() {
                let sub = match conn {
                    Conn::Conj => RectQ {
                        x0: bounds[i],
                        x1: bounds[i + 1],
                        ..rect
                    },
                    Conn::Disj => RectQ {
                        y0: bounds[i],
                        y1: bounds[i + 1],
                        ..rect
                    },
                };
                path.push(i);
                subdivide(kid, sub, path, segments, cells);
                path.pop();
            }
        }
    }
}

/// Indices record the directions in which segments leave each endpoint.
fn index_crossings(segments: &[Segment]) -> Vec<(PointQ, BTreeSet<DirIdx>)> {
    let mut map: BTreeMap<PointQ, BTreeSet<DirIdx>> = BTreeMap::new();
    for s in segments {
        match s.orient {
            Orient::Vertical => {
                // `a` is the top endpoint: the segment hangs downward
                map.entry(s.a).or_default().insert(DirIdx::Down);
                map.entry(s.b).or_default().insert(DirIdx::Up);
            }
            Orient::Horizontal => {
                map.entry(s.a).or_default().insert(DirIdx::Right);
                map.entry(s.b).or_default().insert(DirIdx::Left);
            }
        }
    }
    map.into_iter().collect()
}

impl Grid {
    /// Every index set must be one of the seven admitted ones.
    pub fn indices_admissible(&self) -> bool {
        self.crossings.iter().all(|(_, set)| {
            matches!(set.len(), 1 | 2)
                && (set.iter().all(|d| matches!(d, DirIdx::Down | DirIdx::Up))
                    || set.iter().all(|d| matches!(d, DirIdx::Right | DirIdx::Left)))
        })
    }

    pub fn to_json(&self) -> String {
        let rat = |r: &Rat| format!("\"{}\"", r);
        let pt = |p: &PointQ| format!("[{},{}]", rat(&p.x), rat(&p.y));
        let segs: Vec<String> = self
            .segments
            .iter()
            .map(|s| {
                format!(
                    "{{\"orientation\":\"{}\",\"from\":{},\"to\":{},\"tag\":\"{}\"}}",
                    match s.orient {
                        Orient::Vertical => "v",
                        Orient::Horizontal => "h",
                    },
                    pt(&s.a),
                    pt(&s.b),
                    s.tag
                )
            })
            .collect();
        let crossings: Vec<String> = self
            .crossings
            .iter()
            .map(|(p, set)| {
                let names: Vec<String> =
                    set.iter().map(|d| format!("\"{}\"", d.name())).collect();
                format!("{{\"at\":{},\"index\":[{}]}}", pt(p), names.join(","))
            })
            .collect();
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|(r, p)| {
                format!(
                    "{{\"letter\":\"{p}\",\"rect\":[{},{},{},{}]}}",
                    rat(&r.x0),
                    rat(&r.y0),
                    rat(&r.x1),
                    rat(&r.y1)
                )
            })
            .collect();
        format!(
            "{{\"width\":\"1\",\"height\":\"1\",\"segments\":[{}],\"crossings\":[{}],\"cells\":[{}]}}",
            segs.join(","),
            crossings.join(","),
            cells.join(",")
        )
    }
}

// ---------------------------------------------------------------------------
// rendering

/// ASCII rendering with box-drawing characters. Dividing segments stop one
/// character short of the lines they abut, mirroring the convention of
/// leaving gaps at crossings that are not four-way joins (none here are).
pub fn render_ascii(g: &Grid) -> String {
    // map each distinct coordinate to a canvas line/column
    let mut xs: BTreeSet<Rat> = BTreeSet::new();
    let mut ys: BTreeSet<Rat> = BTreeSet::new();
    xs.insert(g.rect.x0);
    xs.insert(g.rect.x1);
    ys.insert(g.rect.y0);
    ys.insert(g.rect.y1);
    for s in &g.segments {
        xs.insert(s.a.x);
        xs.insert(s.b.x);
        ys.insert(s.a.y);
        ys.insert(s.b.y);
    }
    let maxlen = g.cells.iter().map(|(_, p)| p.len()).max().unwrap_or(1);
    let cw = (maxlen + 3).max(4);
    let xs: Vec<Rat> = xs.into_iter().collect();
    let ys: Vec<Rat> = ys.into_iter().collect();
    let col = |x: Rat| xs.iter().position(|&v| v == x).unwrap() * cw;
    let row = |y: Rat| ys.iter().position(|&v| v == y).unwrap() * 2;

    let width = col(g.rect.x1) + 1;
    let height = row(g.rect.y1) + 1;
    let mut canvas = vec![vec![' '; width]; height];

    // outer border
    for row_index in [0, height - 1] {
        for cell in canvas[row_index].iter_mut().take(width - 1).skip(1) {
            *cell = '─';
        }
    }
    for row_line in canvas.iter_mut().take(height - 1).skip(1) {
        row_line[0] = '│';
        row_line[width - 1] = '│';
    }
    canvas[0][0] = '┌';
    canvas[0][width - 1] = '┐';
    canvas[height - 1][0] = '└';
    canvas[height - 1][width - 1] = '┘';

    for s in &g.segments {
        match s.orient {
            Orient::Vertical => {
                let c = col(s.a.x);
                for row_line in canvas
                    .iter_mut()
                    .take(row(s.b.y))
                    .skip(row(s.a.y) + 1)
                {
                    row_line[c] = '│';
                }
            }
            Orient::Horizontal => {
                let r = row(s.a.y);
                for cell in canvas[r]
                    .iter_mut()
                    .take(col(s.b.x))
                    .skip(col(s.a.x) + 1)
                {
                    *cell = '─';
                }
            }
        }
    }

    for (rect, p) in &g.cells {
        let c0 = col(rect.x0);
        let c1 = col(rect.x1);
        let r = (row(rect.y0) + row(rect.y1)) / 2;
        let mid = (c0 + c1) / 2;
        let start = mid.saturating_sub(p.len() / 2).max(c0 + 1);
        for (i, ch) in p.chars().enumerate() {
            if start + i < c1 {
                canvas[r][start + i] = ch;
            }
        }
    }

    let mut out = String::new();
    for line in canvas {
        out.push_str(line.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

/// Minimal SVG: the outer rectangle, one line per segment and a text label
/// per cell.
pub fn render_svg(g: &Grid) -> String {
    const W: f64 = 480.0;
    const H: f64 = 320.0;
    let fx = |r: Rat| (*r.numer() as f64 / *r.denom() as f64) * W;
    let fy = |r: Rat| (*r.numer() as f64 / *r.denom() as f64) * H;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-10 -10 {} {}\">\n",
        W + 20.0,
        H + 20.0
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    for s in &g.segments {
        out.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            fx(s.a.x),
            fy(s.a.y),
            fx(s.b.x),
            fy(s.b.y)
        ));
    }
    for (rect, p) in &g.cells {
        let cx = (fx(rect.x0) + fx(rect.x1)) / 2.0;
        let cy = (fy(rect.y0) + fy(rect.y1)) / 2.0;
        out.push_str(&format!(
            "  <text x=\"{cx:.2}\" y=\"{cy:.2}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{p}</text>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, Copy)]
pub enum RenderStyle {
    Ascii,
    Svg,
}

impl fmt::Display for RenderStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderStyle::Ascii => write!(f, "ascii"),
            RenderStyle::Svg => write!(f, "svg"),
        }
    }
}

pub fn render(g: &Grid, style: RenderStyle) -> String {
    match style {
        RenderStyle::Ascii => render_ascii(g),
        RenderStyle::Svg => render_svg(g),
    }
}
