//! The n-dimensional cube of complete smoothings.
//!
//! A vertex `α ∈ {0,1}^n` replaces every crossing by its 0- or 1-smoothing,
//! leaving a union of planar cycles, each labeled by the minimal edge on it.
//! An edge of the cube (one coordinate turned from 0 to 1) either merges two
//! cycles or splits one, and carries the sign `(-1)^{Σ_{i<j} ξ_i}` where `j`
//! is the changing coordinate.
//!
//! In PD terms the 0-smoothing of `X[i,j,k,l]` joins `(i,j)` and `(k,l)`,
//! the 1-smoothing joins `(i,l)` and `(j,k)`; this is independent of the
//! crossing sign and reproduces the trefoil cube of the construction.

use std::fmt;

use crate::pdcode::{Edge, LinkDiagram, UnionFind};

/// A cube vertex: bit `c` of `mask` is the smoothing choice at crossing `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VertexKey {
    pub mask: u32,
    pub n: u8,
}

impl VertexKey {
    pub fn new(mask: u32, n: usize) -> Self {
        debug_assert!(n <= 32 && (mask as u64) < (1u64 << n));
        VertexKey { mask, n: n as u8 }
    }

    pub fn bit(&self, c: usize) -> bool {
        self.mask >> c & 1 == 1
    }

    /// The height `r = |α|`.
    pub fn height(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn with_bit(&self, c: usize) -> VertexKey {
        VertexKey { mask: self.mask | 1 << c, n: self.n }
    }

    /// Sort key putting crossing 1 most significant, so vertices print in
    /// the order `001 < 010 < 100` used throughout the demo outputs.
    pub fn display_rank(&self) -> u32 {
        let mut rank = 0;
        for c in 0..self.n as usize {
            rank = rank << 1 | (self.mask >> c & 1);
        }
        rank
    }

    /// Parse a string like `"011"` (one character per crossing).
    pub fn parse(s: &str, n: usize) -> Result<VertexKey, String> {
        if s.len() != n {
            return Err(format!("vertex `{}` must have {} characters", s, n));
        }
        let mut mask = 0;
        for (c, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mask |= 1 << c,
                _ => return Err(format!("vertex `{}` may only contain 0 and 1", s)),
            }
        }
        Ok(VertexKey::new(mask, n))
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.n as usize {
            write!(f, "{}", self.mask >> c & 1)?;
        }
        Ok(())
    }
}

/// A complete smoothing: the cycles at a vertex, sorted by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingVertex {
    pub key: VertexKey,
    /// Cycles sorted by label; each cycle's label is its minimal edge.
    pub cycles: Vec<Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub label: Edge,
    pub edges: Vec<Edge>,
}

impl SmoothingVertex {
    pub fn k(&self) -> usize {
        self.cycles.len()
    }

    pub fn labels(&self) -> Vec<Edge> {
        self.cycles.iter().map(|c| c.label).collect()
    }

    /// Position of the cycle labeled `label` in the sorted cycle list.
    pub fn position(&self, label: Edge) -> usize {
        self.cycles.binary_search_by_key(&label, |c| c.label).expect("cycle label present")
    }

    /// The label of the cycle containing `edge`.
    pub fn cycle_of(&self, edge: Edge) -> Edge {
        self.cycles
            .iter()
            .find(|c| c.edges.binary_search(&edge).is_ok())
            .expect("every edge lies on a cycle")
            .label
    }

    /// Demo-style rendering, e.g. `c[1]*c[3]`.
    pub fn render(&self) -> String {
        self.cycles.iter().map(|c| format!("c[{}]", c.label)).collect::<Vec<_>>().join("*")
    }
}

/// Smooth every crossing of `d` according to `key`.
pub fn smooth(d: &LinkDiagram, key: VertexKey) -> SmoothingVertex {
    let labels: Vec<Edge> = d.edges().collect();
    let index = |e: Edge| labels.binary_search(&e).expect("edge label");
    let mut uf = UnionFind::new(labels.len());
    for (c, x) in d.crossings().iter().enumerate() {
        let [i, j, k, l] = x.0;
        if key.bit(c) {
            uf.union(index(i), index(l));
            uf.union(index(j), index(k));
        } else {
            uf.union(index(i), index(j));
            uf.union(index(k), index(l));
        }
    }
    let mut cycles: Vec<Cycle> = Vec::new();
    let mut root_cycle: Vec<Option<usize>> = vec![None; labels.len()];
    for (w, &e) in labels.iter().enumerate() {
        let root = uf.find(w);
        match root_cycle[root] {
            Some(ci) => cycles[ci].edges.push(e),
            None => {
                root_cycle[root] = Some(cycles.len());
                cycles.push(Cycle { label: e, edges: vec![e] });
            }
        }
    }
    cycles.sort_by_key(|c| c.label);
    SmoothingVertex { key, cycles }
}

/// Cycle count only; used by the state-sum oracle.
pub fn cycle_count(d: &LinkDiagram, mask: u32) -> usize {
    let labels: Vec<Edge> = d.edges().collect();
    let index = |e: Edge| labels.binary_search(&e).expect("edge label");
    let mut uf = UnionFind::new(labels.len());
    let mut merges = 0;
    for (c, x) in d.crossings().iter().enumerate() {
        let [i, j, k, l] = x.0;
        let (p, q) = if mask >> c & 1 == 1 { ((i, l), (j, k)) } else { ((i, j), (k, l)) };
        merges += uf.union(index(p.0), index(p.1)) as usize;
        merges += uf.union(index(q.0), index(q.1)) as usize;
    }
    labels.len() - merges
}

/// What happens along a cube edge: two cycles fuse, or one divides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Cycles `a` and `b` (a < b) merge into the cycle labeled `a`.
    Merge { a: Edge, b: Edge },
    /// The cycle labeled `a` splits into cycles `a` and `b` (a < b).
    Split { a: Edge, b: Edge },
}

impl EdgeKind {
    pub fn render(&self) -> String {
        match self {
            EdgeKind::Merge { a, b } => format!("m[{},{}]", a, b),
            EdgeKind::Split { a, b } => format!("Delta[{},{}]", a, b),
        }
    }
}

/// A cube edge `ξ ∈ {0,1,*}^n` with exactly one `*` at crossing `star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub tail: VertexKey,
    pub head: VertexKey,
    pub star: usize,
    pub kind: EdgeKind,
    pub sign: i8,
}

impl CubeEdge {
    /// Render the edge spec, e.g. `0*1`.
    pub fn render_spec(&self) -> String {
        let mut s = String::new();
        for c in 0..self.tail.n as usize {
            if c == self.star {
                s.push('*');
            } else {
                s.push(if self.tail.bit(c) { '1' } else { '0' });
            }
        }
        s
    }
}

/// Parse an edge spec like `"0*1"` into (tail vertex, star position).
pub fn parse_edge_spec(s: &str, n: usize) -> Result<(VertexKey, usize), String> {
    if s.len() != n {
        return Err(format!("edge `{}` must have {} characters", s, n));
    }
    let mut mask = 0;
    let mut star = None;
    for (c, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => mask |= 1 << c,
            '*' => {
                if star.replace(c).is_some() {
                    return Err(format!("edge `{}` must have exactly one *", s));
                }
            }
            _ => return Err(format!("edge `{}` may only contain 0, 1 and *", s)),
        }
    }
    let star = star.ok_or_else(|| format!("edge `{}` must have exactly one *", s))?;
    Ok((VertexKey::new(mask, n), star))
}

/// The sign `(-1)^ξ = (-1)^{Σ_{i<j} ξ_i}`, `j` the star position.
pub fn edge_sign(tail: VertexKey, star: usize) -> i8 {
    let below = tail.mask & ((1u32 << star) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Build the cube edge with tail `tail` and star at crossing `star`.
pub fn edge_map(d: &LinkDiagram, tail: &SmoothingVertex, star: usize) -> CubeEdge {
    debug_assert!(!tail.key.bit(star));
    let head_key = tail.key.with_bit(star);
    let head = smooth(d, head_key);
    let kind = classify_edge(tail, &head, star);
    CubeEdge { tail: tail.key, head: head_key, star, kind, sign: edge_sign(tail.key, star) }
}

fn classify_edge(tail: &SmoothingVertex, head: &SmoothingVertex, star: usize) -> EdgeKind {
    let (tk, hk) = (tail.k(), head.k());
    if hk + 1 == tk {
        // merge: exactly one tail label disappears
        let hl = head.labels();
        let gone: Vec<Edge> =
            tail.labels().into_iter().filter(|l| hl.binary_search(l).is_err()).collect();
        let [b] = gone[..] else {
            panic!("cube edge at star {} is not a single merge", star);
        };
        let a = head.cycle_of(b);
        debug_assert!(a < b);
        EdgeKind::Merge { a, b }
    } else if tk + 1 == hk {
        let tl = tail.labels();
        let fresh: Vec<Edge> =
            head.labels().into_iter().filter(|l| tl.binary_search(l).is_err()).collect();
        let [b] = fresh[..] else {
            panic!("cube edge at star {} is not a single split", star);
        };
        let a = tail.cycle_of(b);
        debug_assert!(a < b);
        EdgeKind::Split { a, b }
    } else {
        panic!("cube edge at star {} changes the cycle count by {}", star, hk as i64 - tk as i64);
    }
}

/// A marking of a vertex's cycles: bit `t` set means cycle `t` (in label
/// order) is marked `v₊`, clear means `v₋`.
pub type Marking = u32;

/// Intrinsic `q`-degree of a marked smoothing: `(#v₊ - #v₋) + height`,
/// before the global `{n₊ - 2n₋}` shift.
pub fn marking_degree(k: usize, marking: Marking, height: u32) -> i32 {
    let plus = marking.count_ones() as i32;
    2 * plus - k as i32 + height as i32
}

/// Push a marked smoothing through an edge map. Output markings live on the
/// head vertex; coefficients are all `+1` (the cube commutes without signs,
/// the edge sign is applied by the differential assembly).
///
/// `v₊v₊ ↦ v₊`, `v₊v₋, v₋v₊ ↦ v₋`, `v₋v₋ ↦ 0` for a merge;
/// `v₊ ↦ v₊v₋ + v₋v₊`, `v₋ ↦ v₋v₋` for a split; identity elsewhere.
pub fn transport(
    tail: &SmoothingVertex,
    head: &SmoothingVertex,
    kind: EdgeKind,
    marking: Marking,
) -> Vec<Marking> {
    // carry the markings of the non-participating cycles across by label
    let carry = |skip: &[Edge]| -> Marking {
        let mut out = 0;
        for (t, cy) in tail.cycles.iter().enumerate() {
            if skip.contains(&cy.label) {
                continue;
            }
            if marking >> t & 1 == 1 {
                out |= 1 << head.position(cy.label);
            }
        }
        out
    };
    match kind {
        EdgeKind::Merge { a, b } => {
            let pa = marking >> tail.position(a) & 1;
            let pb = marking >> tail.position(b) & 1;
            match pa + pb {
                0 => vec![], // v₋ ⊗ v₋ ↦ 0
                1 => vec![carry(&[a, b])],
                _ => vec![carry(&[a, b]) | 1 << head.position(a)],
            }
        }
        EdgeKind::Split { a, b } => {
            let base = carry(&[a]);
            let (ha, hb) = (head.position(a), head.position(b));
            if marking >> tail.position(a) & 1 == 1 {
                vec![base | 1 << ha, base | 1 << hb]
            } else {
                vec![base]
            }
        }
    }
}

/// Render a marked smoothing the way the demo prints basis vectors,
/// `v₋` factors first, then `v₊`, each in ascending label order.
pub fn render_marking(v: &SmoothingVertex, marking: Marking) -> String {
    let mut parts = Vec::new();
    for (t, cy) in v.cycles.iter().enumerate() {
        if marking >> t & 1 == 0 {
            parts.push(format!("vm[{}]", cy.label));
        }
    }
    for (t, cy) in v.cycles.iter().enumerate() {
        if marking >> t & 1 == 1 {
            parts.push(format!("vp[{}]", cy.label));
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdcode::LinkDiagram;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse("X[1,5,2,4] X[5,3,6,2] X[3,1,4,6]").unwrap()
    }

    fn vertex(d: &LinkDiagram, s: &str) -> SmoothingVertex {
        smooth(d, VertexKey::parse(s, d.n()).unwrap())
    }

    #[test]
    fn trefoil_smoothings_match_the_cube() {
        let d = trefoil();
        assert_eq!(vertex(&d, "000").labels(), vec![1, 2]);
        assert_eq!(vertex(&d, "011").labels(), vec![1, 3]);
        assert_eq!(vertex(&d, "111").labels(), vec![1, 2, 3]);
        assert_eq!(vertex(&d, "001").labels(), vec![1]);
        assert_eq!(vertex(&d, "001").render(), "c[1]");
        assert_eq!(vertex(&d, "011").render(), "c[1]*c[3]");
    }

    #[test]
    fn trefoil_edges_match_the_cube() {
        let d = trefoil();
        // 0*1 is the split Δ^{13}
        let (tail, star) = parse_edge_spec("0*1", 3).unwrap();
        let e = edge_map(&d, &smooth(&d, tail), star);
        assert_eq!(e.kind, EdgeKind::Split { a: 1, b: 3 });
        assert_eq!(e.kind.render(), "Delta[1,3]");
        assert_eq!(e.sign, 1);
        assert_eq!(e.render_spec(), "0*1");
        // *00 is the merge m_{12}
        let (tail, star) = parse_edge_spec("*00", 3).unwrap();
        let e = edge_map(&d, &smooth(&d, tail), star);
        assert_eq!(e.kind, EdgeKind::Merge { a: 1, b: 2 });
        // 1*0 carries sign -1
        let (tail, star) = parse_edge_spec("1*0", 3).unwrap();
        assert_eq!(edge_sign(tail, star), -1);
        let e = edge_map(&d, &smooth(&d, tail), star);
        assert_eq!(e.sign, -1);
    }

    #[test]
    fn merge_rules() {
        let d = trefoil();
        let tail = vertex(&d, "000"); // cycles 1, 2
        let head = vertex(&d, "001"); // cycle 1
        let kind = EdgeKind::Merge { a: 1, b: 2 };
        // v₊v₊ ↦ v₊
        assert_eq!(transport(&tail, &head, kind, 0b11), vec![0b1]);
        // v₊v₋ and v₋v₊ ↦ v₋
        assert_eq!(transport(&tail, &head, kind, 0b01), vec![0b0]);
        assert_eq!(transport(&tail, &head, kind, 0b10), vec![0b0]);
        // v₋v₋ ↦ 0
        assert_eq!(transport(&tail, &head, kind, 0b00), Vec::<Marking>::new());
    }

    #[test]
    fn split_rules() {
        let d = trefoil();
        let tail = vertex(&d, "001"); // cycle 1
        let head = vertex(&d, "011"); // cycles 1, 3
        let kind = EdgeKind::Split { a: 1, b: 3 };
        // v₊ ↦ v₊v₋ + v₋v₊
        assert_eq!(transport(&tail, &head, kind, 0b1), vec![0b01, 0b10]);
        // v₋ ↦ v₋v₋
        assert_eq!(transport(&tail, &head, kind, 0b0), vec![0b00]);
        assert_eq!(render_marking(&head, 0b01), "vm[3]*vp[1]");
        assert_eq!(render_marking(&head, 0b10), "vm[1]*vp[3]");
    }

    #[test]
    fn edge_maps_drop_intrinsic_degree_by_one() {
        let d = LinkDiagram::parse(
            "X[1,10,2,11] X[9,2,10,3] X[3,7,4,6] X[15,5,16,4] X[5,17,6,16] \
             X[7,14,8,15] X[8,18,9,17] X[11,18,12,19] X[19,12,20,13] X[13,20,14,1]",
        )
        .unwrap();
        // sample a few edges of the 10-cube
        for mask in [0u32, 5, 129, 1000, 1023 - 64] {
            let tail = smooth(&d, VertexKey::new(mask, d.n()));
            for star in 0..d.n() {
                if tail.key.bit(star) {
                    continue;
                }
                let e = edge_map(&d, &tail, star);
                let head = smooth(&d, e.head);
                for marking in 0..1u32 << tail.k() {
                    let deg = marking_degree(tail.k(), marking, tail.key.height());
                    for out in transport(&tail, &head, e.kind, marking) {
                        // (#v₊ - #v₋) drops by 1, the height shift restores it
                        assert_eq!(marking_degree(head.k(), out, head.key.height()), deg);
                    }
                }
            }
        }
    }

    #[test]
    fn faces_commute_and_signs_anticommute() {
        for text in [
            "X[1,5,2,4] X[5,3,6,2] X[3,1,4,6]",
            "X[1,3,2,4] X[3,1,4,2]",
            "X[3,10,4,11] X[9,4,10,5] X[5,3,6,2] X[11,7,12,6] X[1,9,2,8] X[7,1,8,12]",
        ] {
            let d = LinkDiagram::parse(text).unwrap();
            let n = d.n();
            for mask in 0..1u32 << n {
                let tail = smooth(&d, VertexKey::new(mask, n));
                for s1 in 0..n {
                    for s2 in s1 + 1..n {
                        if tail.key.bit(s1) || tail.key.bit(s2) {
                            continue;
                        }
                        check_face(&d, &tail, s1, s2);
                    }
                }
            }
        }
    }

    fn check_face(d: &LinkDiagram, tail: &SmoothingVertex, s1: usize, s2: usize) {
        let e1 = edge_map(d, tail, s1);
        let e2 = edge_map(d, tail, s2);
        let mid1 = smooth(d, e1.head);
        let mid2 = smooth(d, e2.head);
        let f1 = edge_map(d, &mid1, s2);
        let f2 = edge_map(d, &mid2, s1);
        assert_eq!(f1.head, f2.head);
        let top = smooth(d, f1.head);
        // anticommutativity of the signed faces
        let product = e1.sign * f1.sign * e2.sign * f2.sign;
        assert_eq!(product, -1, "face {} {} of {}", s1, s2, tail.key);
        // commutativity of the unsigned maps
        for marking in 0..1u32 << tail.k() {
            let mut via1: Vec<Marking> = transport(tail, &mid1, e1.kind, marking)
                .into_iter()
                .flat_map(|m| transport(&mid1, &top, f1.kind, m))
                .collect();
            let mut via2: Vec<Marking> = transport(tail, &mid2, e2.kind, marking)
                .into_iter()
                .flat_map(|m| transport(&mid2, &top, f2.kind, m))
                .collect();
            via1.sort_unstable();
            via2.sort_unstable();
            assert_eq!(via1, via2, "face {} {} marking {:b}", s1, s2, marking);
        }
    }

    #[test]
    fn cycle_count_parity() {
        let d = trefoil();
        let k0 = cycle_count(&d, 0);
        for mask in 0..8u32 {
            let k = cycle_count(&d, mask);
            assert_eq!((k as u32 + mask.count_ones()) % 2, k0 as u32 % 2);
            assert_eq!(k, smooth(&d, VertexKey::new(mask, 3)).k());
        }
    }

    #[test]
    fn display_rank_orders_like_the_demo() {
        let a = VertexKey::parse("001", 3).unwrap();
        let b = VertexKey::parse("010", 3).unwrap();
        let c = VertexKey::parse("100", 3).unwrap();
        assert!(a.display_rank() < b.display_rank());
        assert!(b.display_rank() < c.display_rank());
        assert_eq!(a.to_string(), "001");
    }
}
