//! Planar-diagram (PD) codes: parsing, validation, crossing signs, mirrors.
//!
//! A crossing `X[i,j,k,l]` lists the four edges around it counterclockwise,
//! starting from the incoming lower strand; the under-strand runs `i -> k`.
//! Edges are numbered so that each component occupies its own integer
//! interval, traversed in ascending order except for one wrap-around.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// An arc label. Positive, unique per arc, appears in exactly two crossing slots.
pub type Edge = u32;

/// One crossing, edges counterclockwise from the incoming lower strand.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Crossing(pub [Edge; 4]);

impl Crossing {
    pub fn under_in(&self) -> Edge {
        self.0[0]
    }
    pub fn over_ccw(&self) -> Edge {
        self.0[1]
    }
    pub fn under_out(&self) -> Edge {
        self.0[2]
    }
    pub fn over_cw(&self) -> Edge {
        self.0[3]
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{},{},{}]", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i8 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PdError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty input: a diagram needs at least one crossing")]
    Empty,
    #[error("edge {edge} appears {count} times; every edge label must appear exactly twice")]
    EdgeMultiplicity { edge: Edge, count: usize },
    #[error("edge numbering violates the per-component ascending-interval convention: {detail}")]
    Numbering { detail: String },
    #[error("malformed diagram at crossing {crossing}: {detail}")]
    Succession { crossing: usize, detail: String },
}

/// Whether numbering-convention violations are fatal or merely recorded.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strictness {
    #[default]
    Strict,
    Lenient,
}

/// A validated link diagram. Immutable after construction; all queries are pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    signs: Vec<CrossingSign>,
    components: Vec<Vec<Edge>>,
    succ: BTreeMap<Edge, Edge>,
    n_plus: usize,
    n_minus: usize,
    warnings: Vec<String>,
}

impl LinkDiagram {
    pub fn parse(text: &str) -> Result<Self, PdError> {
        Self::parse_with(text, Strictness::Strict)
    }

    pub fn parse_with(text: &str, strictness: Strictness) -> Result<Self, PdError> {
        let crossings = parse_crossings(text)?;
        Self::from_crossings(crossings, strictness)
    }

    pub fn from_crossings(
        crossings: Vec<Crossing>,
        strictness: Strictness,
    ) -> Result<Self, PdError> {
        if crossings.is_empty() {
            return Err(PdError::Empty);
        }

        // Multiplicity: every label exactly twice.
        let mut mult: BTreeMap<Edge, usize> = BTreeMap::new();
        for x in &crossings {
            for &e in &x.0 {
                if e == 0 {
                    return Err(PdError::Syntax { pos: 0, msg: "edge labels start at 1".into() });
                }
                *mult.entry(e).or_insert(0) += 1;
            }
        }
        if let Some((&edge, &count)) = mult.iter().find(|(_, &c)| c != 2) {
            return Err(PdError::EdgeMultiplicity { edge, count });
        }

        // Components: union the two edges of each strand at each crossing.
        let labels: Vec<Edge> = mult.keys().copied().collect();
        let index: BTreeMap<Edge, usize> =
            labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for x in &crossings {
            uf.union(index[&x.under_in()], index[&x.under_out()]);
            uf.union(index[&x.over_ccw()], index[&x.over_cw()]);
        }
        let mut comp_edges: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
        for (i, &e) in labels.iter().enumerate() {
            comp_edges.entry(uf.find(i)).or_default().push(e);
        }
        let mut components: Vec<Vec<Edge>> = comp_edges.into_values().collect();
        components.sort_by_key(|c| c[0]);

        let mut warnings = Vec::new();
        for comp in &components {
            let span = (comp[comp.len() - 1] - comp[0] + 1) as usize;
            if span != comp.len() {
                let detail = format!(
                    "component starting at edge {} covers {} labels over the span {}..{}",
                    comp[0],
                    comp.len(),
                    comp[0],
                    comp[comp.len() - 1]
                );
                match strictness {
                    Strictness::Strict => return Err(PdError::Numbering { detail }),
                    Strictness::Lenient => warnings.push(detail),
                }
            }
        }

        // Successor of an edge in its component's cyclic (ascending) order.
        let mut succ: BTreeMap<Edge, Edge> = BTreeMap::new();
        for comp in &components {
            for w in 0..comp.len() {
                succ.insert(comp[w], comp[(w + 1) % comp.len()]);
            }
        }

        let signs = assign_signs(&crossings, &succ)?;
        let n_plus = signs.iter().filter(|s| **s == CrossingSign::Positive).count();
        let n_minus = signs.len() - n_plus;

        Ok(LinkDiagram { crossings, signs, components, succ, n_plus, n_minus, warnings })
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    pub fn crossing(&self, c: usize) -> Crossing {
        self.crossings[c]
    }
    pub fn sign(&self, c: usize) -> CrossingSign {
        self.signs[c]
    }
    pub fn n_plus(&self) -> usize {
        self.n_plus
    }
    pub fn n_minus(&self) -> usize {
        self.n_minus
    }
    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
    /// Components as cyclic edge sequences, each starting at its minimal edge.
    pub fn components(&self) -> &[Vec<Edge>] {
        &self.components
    }
    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }
    /// All edge labels in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.succ.keys().copied()
    }
    pub fn successor(&self, e: Edge) -> Edge {
        self.succ[&e]
    }
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// The mirror image: every crossing's over/under roles exchanged.
    ///
    /// Each tuple is rotated so the old over-strand's incoming edge becomes
    /// the incoming lower thread; `n_plus` and `n_minus` trade places.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(x, s)| {
                let [i, j, k, l] = x.0;
                match s {
                    // positive: over runs l -> j, so the mirror's under-strand runs l -> j
                    CrossingSign::Positive => Crossing([l, i, j, k]),
                    // negative: over runs j -> l
                    CrossingSign::Negative => Crossing([j, k, l, i]),
                }
            })
            .collect();
        LinkDiagram::from_crossings(crossings, Strictness::Lenient)
            .expect("mirror of a valid diagram is valid")
    }

    /// Canonical text form; `parse(render(d)) == d`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (w, x) in self.crossings.iter().enumerate() {
            if w > 0 {
                out.push(' ');
            }
            out.push_str(&x.to_string());
        }
        out
    }
}

/// Crossing signs, derived from where each component transition is realized.
///
/// Every component with edges `e_0 < e_1 < ... < e_{m-1}` makes the cyclic
/// transitions `e_t -> e_{t+1}`. Each under-pass realizes the transition
/// `i -> k` of its strand; the over-pass of a crossing realizes whichever of
/// its component's transitions remains, and the crossing is positive exactly
/// when the over-strand enters at `l` (runs `l -> j`).
fn assign_signs(
    crossings: &[Crossing],
    succ: &BTreeMap<Edge, Edge>,
) -> Result<Vec<CrossingSign>, PdError> {
    // transition e -> succ(e), keyed by source edge: which site realizes it
    let mut taken: BTreeSet<Edge> = BTreeSet::new();
    for (c, x) in crossings.iter().enumerate() {
        let (i, k) = (x.under_in(), x.under_out());
        if succ[&i] != k {
            return Err(PdError::Succession {
                crossing: c,
                detail: format!("under-strand {} -> {} is not a component transition", i, k),
            });
        }
        if !taken.insert(i) {
            return Err(PdError::Succession {
                crossing: c,
                detail: format!("transition {} -> {} realized twice", i, k),
            });
        }
    }

    let mut signs = vec![None; crossings.len()];
    let mut deferred = Vec::new();
    for (c, x) in crossings.iter().enumerate() {
        let (j, l) = (x.over_ccw(), x.over_cw());
        let l_to_j = succ[&l] == j && !taken.contains(&l);
        let j_to_l = succ[&j] == l && !taken.contains(&j);
        match (l_to_j, j_to_l) {
            (true, false) => {
                taken.insert(l);
                signs[c] = Some(CrossingSign::Positive);
            }
            (false, true) => {
                taken.insert(j);
                signs[c] = Some(CrossingSign::Negative);
            }
            (true, true) => deferred.push(c), // two-edge component, both passes over
            (false, false) => {
                return Err(PdError::Succession {
                    crossing: c,
                    detail: format!(
                        "over-strand {{{}, {}}} realizes no free component transition",
                        j, l
                    ),
                })
            }
        }
    }

    // A two-edge component passing over at both of its crossings leaves the
    // over-strand direction undetermined by the code alone; resolve it
    // deterministically by letting the first such crossing run l -> j.
    deferred.sort_unstable();
    for c in deferred {
        if signs[c].is_some() {
            continue;
        }
        let x = crossings[c];
        let (j, l) = (x.over_ccw(), x.over_cw());
        let (l_free, j_free) = (!taken.contains(&l), !taken.contains(&j));
        let sign = match (l_free, j_free) {
            (true, _) => {
                taken.insert(l);
                CrossingSign::Positive
            }
            (false, true) => {
                taken.insert(j);
                CrossingSign::Negative
            }
            (false, false) => {
                return Err(PdError::Succession {
                    crossing: c,
                    detail: "over-strand transitions already exhausted".into(),
                })
            }
        };
        signs[c] = Some(sign);
    }

    Ok(signs.into_iter().map(|s| s.expect("every crossing signed")).collect())
}

fn parse_crossings(text: &str) -> Result<Vec<Crossing>, PdError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(PdError::Empty);
    }
    let mut crossings = Vec::new();
    if p.peek_ident("Link") {
        p.expect_ident("Link")?;
        p.expect(b'[')?;
        loop {
            crossings.push(p.x_term()?);
            p.skip_ws();
            if p.eat(b',') {
                continue;
            }
            p.expect(b']')?;
            break;
        }
        p.skip_ws();
        if !p.at_end() {
            return Err(p.err("trailing input after Link[..]"));
        }
    } else {
        loop {
            crossings.push(p.x_term()?);
            p.skip_ws();
            if p.at_end() {
                break;
            }
        }
    }
    Ok(crossings)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PdError {
        PdError::Syntax { pos: self.pos, msg: msg.into() }
    }
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }
    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }
    fn peek_ident(&self, ident: &str) -> bool {
        self.bytes[self.pos..].starts_with(ident.as_bytes())
    }
    fn expect_ident(&mut self, ident: &str) -> Result<(), PdError> {
        if self.peek_ident(ident) {
            self.pos += ident.len();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", ident)))
        }
    }
    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if !self.at_end() && self.bytes[self.pos] == c {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: u8) -> Result<(), PdError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }
    fn int(&mut self) -> Result<Edge, PdError> {
        self.skip_ws();
        let start = self.pos;
        while !self.at_end() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: u64 = s.parse().map_err(|_| self.err("integer out of range"))?;
        if v == 0 || v > u32::MAX as u64 {
            return Err(PdError::Syntax { pos: start, msg: "edge labels are positive".into() });
        }
        Ok(v as Edge)
    }
    fn x_term(&mut self) -> Result<Crossing, PdError> {
        self.skip_ws();
        self.expect_ident("X")?;
        self.expect(b'[')?;
        let i = self.int()?;
        self.expect(b',')?;
        let j = self.int()?;
        self.expect(b',')?;
        let k = self.int()?;
        self.expect(b',')?;
        let l = self.int()?;
        self.expect(b']')?;
        Ok(Crossing([i, j, k, l]))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }
    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi as u32;
        if self.rank[ra] == self.rank[rb] {
            self.rank[hi] += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "X[1,5,2,4] X[5,3,6,2] X[3,1,4,6]";
    pub const MILLETT: &str = "X[1,10,2,11] X[9,2,10,3] X[3,7,4,6] X[15,5,16,4] X[5,17,6,16] \
         X[7,14,8,15] X[8,18,9,17] X[11,18,12,19] X[19,12,20,13] X[13,20,14,1]";

    #[test]
    fn parses_paper_trefoil() {
        let d = LinkDiagram::parse(TREFOIL).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.components()[0], vec![1, 2, 3, 4, 5, 6]);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
    }

    #[test]
    fn parses_link_form() {
        let d = LinkDiagram::parse("Link[X[1,5,2,4], X[5,3,6,2], X[3,1,4,6]]").unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
    }

    #[test]
    fn comments_and_whitespace() {
        let d = LinkDiagram::parse("# the right trefoil\nX[1,5,2,4]\n  X[5,3,6,2]\tX[3,1,4,6]\n")
            .unwrap();
        assert_eq!(d.n(), 3);
    }

    #[test]
    fn millett_unknot_shape() {
        let d = LinkDiagram::parse(MILLETT).unwrap();
        assert_eq!(d.n(), 10);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.edge_count(), 20);
        assert_eq!((d.n_plus(), d.n_minus()), (4, 6));
    }

    #[test]
    fn multiplicity_error() {
        let err = LinkDiagram::parse("X[1,5,2,4] X[1,5,2,4]").unwrap_err();
        assert_eq!(err, PdError::EdgeMultiplicity { edge: 1, count: 4 });
    }

    #[test]
    fn empty_input_error() {
        assert_eq!(LinkDiagram::parse("  # nothing\n").unwrap_err(), PdError::Empty);
        assert_eq!(LinkDiagram::parse("").unwrap_err(), PdError::Empty);
    }

    #[test]
    fn syntax_error_reports_position() {
        match LinkDiagram::parse("X[1,5,2,4] Y[5,3,6,2]").unwrap_err() {
            PdError::Syntax { pos, .. } => assert_eq!(pos, 11),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hopf_link_positive() {
        let d = LinkDiagram::parse("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.components()[0], vec![1, 2]);
        assert_eq!(d.components()[1], vec![3, 4]);
        assert_eq!((d.n_plus(), d.n_minus()), (2, 0));
    }

    #[test]
    fn kink_signs() {
        let pos = LinkDiagram::parse("X[1,1,2,2]").unwrap();
        assert_eq!((pos.n_plus(), pos.n_minus()), (1, 0));
        let neg = LinkDiagram::parse("X[1,2,2,1]").unwrap();
        assert_eq!((neg.n_plus(), neg.n_minus()), (0, 1));
    }

    #[test]
    fn mirror_swaps_handedness() {
        let d = LinkDiagram::parse(TREFOIL).unwrap();
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 3));
        // double mirror restores the diagram up to cyclic rotation of tuples
        let mm = m.mirror();
        assert_eq!(mm, d);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
    }

    #[test]
    fn render_round_trip() {
        for text in [TREFOIL, MILLETT, "X[1,3,2,4] X[3,1,4,2]", "X[1,1,2,2]"] {
            let d = LinkDiagram::parse(text).unwrap();
            let again = LinkDiagram::parse(&d.render()).unwrap();
            assert_eq!(d, again);
        }
    }

    #[test]
    fn component_edge_counts_sum_to_2n() {
        for text in [TREFOIL, MILLETT, "X[1,3,2,4] X[3,1,4,2]"] {
            let d = LinkDiagram::parse(text).unwrap();
            let total: usize = d.components().iter().map(|c| c.len()).sum();
            assert_eq!(total, 2 * d.n());
        }
    }

    #[test]
    fn numbering_violation_strict_vs_lenient() {
        // two unknotted circles clasped, second component numbered 4,6
        let text = "X[1,4,2,6] X[4,1,6,2]";
        assert!(matches!(LinkDiagram::parse(text).unwrap_err(), PdError::Numbering { .. }));
        let d = LinkDiagram::parse_with(text, Strictness::Lenient).unwrap();
        assert_eq!(d.warnings().len(), 1);
        assert_eq!(d.components()[1], vec![4, 6]);
    }

    #[test]
    fn miller_institute_knot() {
        let d = LinkDiagram::parse(
            "X[3,10,4,11] X[9,4,10,5] X[5,3,6,2] X[11,7,12,6] X[1,9,2,8] X[7,1,8,12]",
        )
        .unwrap();
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.edge_count(), 12);
        assert_eq!((d.n_plus(), d.n_minus()), (4, 2));
    }
}
