//! The shifted complex `C(L) = [[L]][-n₋]{n₊-2n₋}` and its graded homology.
//!
//! The differential has `q`-degree 0, so the complex splits into independent
//! blocks, one per (height `r`, degree `m`); each block's Betti number is
//! `dim C^r_m - rank d^r_m - rank d^{r-1}_m`. Heights and degrees are shifted
//! (final) coordinates everywhere in the public interface.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cube::{self, Marking, SmoothingVertex, VertexKey};
use crate::exactalg::{GradedDimension, LaurentPoly1, LaurentPoly2, Modulus, SparseMatrix};
use crate::pdcode::LinkDiagram;

/// The chain complex of a diagram, split into `(r, m)` blocks.
///
/// `differentials[(r, m)]` is the matrix of `d` from block `(r, m)` to block
/// `(r+1, m)`; columns index the source basis, rows the target basis. Blocks
/// not stored are zero-dimensional.
pub struct GradedComplex {
    pub n_plus: usize,
    pub n_minus: usize,
    pub dims: BTreeMap<(i32, i32), usize>,
    pub differentials: BTreeMap<(i32, i32), SparseMatrix>,
    /// Basis descriptors per block, in column order: (vertex, marking).
    basis: BTreeMap<(i32, i32), Vec<(VertexKey, Marking)>>,
}

impl GradedComplex {
    pub fn dim(&self, r: i32, m: i32) -> usize {
        self.dims.get(&(r, m)).copied().unwrap_or(0)
    }

    pub fn height_range(&self) -> (i32, i32) {
        (-(self.n_minus as i32), self.n_plus as i32)
    }

    pub fn differential(&self, r: i32, m: i32) -> Option<&SparseMatrix> {
        self.differentials.get(&(r, m))
    }

    pub fn basis(&self, r: i32, m: i32) -> &[(VertexKey, Marking)] {
        self.basis.get(&(r, m)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Graded dimensions of one chain height.
    pub fn chain_qdim(&self, r: i32) -> GradedDimension {
        GradedDimension::from_dims(
            self.dims.iter().filter(|((h, _), _)| *h == r).map(|(&(_, m), &d)| (m, d as u64)),
        )
    }

    /// `χ_q = Σ_r (-1)^r qdim C^r`, valid because the differential has degree 0.
    pub fn euler_characteristic(&self) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (&(r, m), &dim) in &self.dims {
            let sign = if r.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(m, sign * dim as i64);
        }
        out
    }

    /// `d ∘ d = 0` on every pair of consecutive blocks.
    pub fn d_squared_is_zero(&self) -> bool {
        self.differentials.iter().all(|(&(r, m), d)| {
            self.differentials.get(&(r + 1, m)).is_none_or(|next| d.compose(next).is_zero())
        })
    }

    /// Every basis vector sits in the block matching its recomputed shifted
    /// degree and height; since matrix entries never leave their block, this
    /// is exactly the degree-preservation of the differential.
    pub fn degrees_are_preserved(&self, d: &LinkDiagram) -> bool {
        let shift = self.n_plus as i32 - 2 * self.n_minus as i32;
        self.basis.iter().all(|(&(r, m), list)| {
            list.iter().all(|&(v, marking)| {
                let sv = cube::smooth(d, v);
                let deg = cube::marking_degree(sv.k(), marking, v.height()) + shift;
                deg == m && v.height() as i32 - self.n_minus as i32 == r
            })
        })
    }
}

/// Graded Betti numbers and the two-variable invariant assembled from them.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct KhResult {
    pub modulus: u64,
    /// `(r, m) -> dim H^r_m`, zero entries omitted.
    pub betti: BTreeMap<(i32, i32), usize>,
    /// `(r, m) -> dim C^r_m`, zero entries omitted.
    pub chain_dims: BTreeMap<(i32, i32), usize>,
    #[serde(skip)]
    pub kh: LaurentPoly2,
}

impl KhResult {
    pub fn betti_at(&self, r: i32, m: i32) -> usize {
        self.betti.get(&(r, m)).copied().unwrap_or(0)
    }

    pub fn chain_dim_at(&self, r: i32, m: i32) -> usize {
        self.chain_dims.get(&(r, m)).copied().unwrap_or(0)
    }

    /// The documented JSON rendering, rows sorted by `(r, m)`.
    pub fn render_json(&self) -> String {
        let triples = |map: &BTreeMap<(i32, i32), usize>| -> Vec<[i64; 3]> {
            map.iter().map(|(&(r, m), &d)| [r as i64, m as i64, d as i64]).collect()
        };
        let value = serde_json::json!({
            "modulus": self.modulus,
            "kh": self.kh.render(),
            "betti": triples(&self.betti),
            "chain_dims": triples(&self.chain_dims),
        });
        serde_json::to_string(&value).expect("JSON rendering")
    }

    /// Table-style grid: columns are heights, rows are degrees (descending),
    /// cells are `h/c` wherever the chain group is nontrivial.
    pub fn render_grid(&self) -> String {
        if self.chain_dims.is_empty() {
            return String::from("(empty complex)\n");
        }
        let rs: Vec<i32> = {
            let min = self.chain_dims.keys().map(|&(r, _)| r).min().unwrap();
            let max = self.chain_dims.keys().map(|&(r, _)| r).max().unwrap();
            (min..=max).collect()
        };
        let ms: Vec<i32> = {
            let min = self.chain_dims.keys().map(|&(_, m)| m).min().unwrap();
            let max = self.chain_dims.keys().map(|&(_, m)| m).max().unwrap();
            (min..=max).rev().filter(|m| (m - max).rem_euclid(2) == 0).collect()
        };
        let cell = |r: i32, m: i32| -> String {
            let c = self.chain_dim_at(r, m);
            if c == 0 {
                String::new()
            } else {
                format!("{}/{}", self.betti_at(r, m), c)
            }
        };
        let mut widths: Vec<usize> = rs.iter().map(|r| r.to_string().len()).collect();
        for (ci, &r) in rs.iter().enumerate() {
            for &m in &ms {
                widths[ci] = widths[ci].max(cell(r, m).len());
            }
        }
        let mcol = ms.iter().map(|m| m.to_string().len()).max().unwrap().max(3);
        let mut out = String::new();
        let _ = write!(out, "{:>mcol$}", "m\\r");
        for (ci, r) in rs.iter().enumerate() {
            let _ = write!(out, " | {:>w$}", r, w = widths[ci]);
        }
        out.push('\n');
        for &m in &ms {
            let _ = write!(out, "{:>mcol$}", m);
            for (ci, &r) in rs.iter().enumerate() {
                let _ = write!(out, " | {:>w$}", cell(r, m), w = widths[ci]);
            }
            out.push('\n');
        }
        out
    }
}

/// Assemble the full block decomposition of `C(L)` with its differentials.
pub fn build_complex(d: &LinkDiagram) -> GradedComplex {
    let n = d.n();
    let n_plus = d.n_plus();
    let n_minus = d.n_minus();
    let q_shift = n_plus as i32 - 2 * n_minus as i32;
    let r_shift = -(n_minus as i32);

    // vertices ordered by height, then display rank (the demo's order)
    let mut order: Vec<u32> = (0..1u32 << n).collect();
    order.sort_by_key(|&mask| {
        (mask.count_ones(), VertexKey::new(mask, n).display_rank())
    });

    let smoothings: Vec<SmoothingVertex> =
        (0..1u32 << n).map(|mask| cube::smooth(d, VertexKey::new(mask, n))).collect();

    // assign block indices
    let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut basis: BTreeMap<(i32, i32), Vec<(VertexKey, Marking)>> = BTreeMap::new();
    let mut index: HashMap<(u32, Marking), u32> = HashMap::new();
    for &mask in &order {
        let v = &smoothings[mask as usize];
        let k = v.k();
        let r = v.key.height() as i32 + r_shift;
        for marking in 0..1u32 << k {
            let m = cube::marking_degree(k, marking, v.key.height()) + q_shift;
            let slot = dims.entry((r, m)).or_insert(0);
            index.insert((mask, marking), *slot as u32);
            basis.entry((r, m)).or_default().push((v.key, marking));
            *slot += 1;
        }
    }

    // fill the block matrices edge by edge
    let mut builders: BTreeMap<(i32, i32), Vec<(u32, u32, i8)>> = BTreeMap::new();
    for &mask in &order {
        let tail = &smoothings[mask as usize];
        let r = tail.key.height() as i32 + r_shift;
        for star in 0..n {
            if tail.key.bit(star) {
                continue;
            }
            let edge = cube::edge_map_with(d, tail, star, &smoothings);
            let head = &smoothings[edge.head.mask as usize];
            for marking in 0..1u32 << tail.k() {
                let m = cube::marking_degree(tail.k(), marking, tail.key.height()) + q_shift;
                let col = index[&(mask, marking)];
                for out in cube::transport(tail, head, edge.kind, marking) {
                    let row = index[&(edge.head.mask, out)];
                    builders.entry((r, m)).or_default().push((row, col, edge.sign));
                }
            }
        }
    }

    let differentials = builders
        .into_iter()
        .map(|((r, m), entries)| {
            let rows = dims.get(&(r + 1, m)).copied().unwrap_or(0);
            let cols = dims[&(r, m)];
            ((r, m), SparseMatrix::from_entries(rows, cols, entries))
        })
        .collect();

    GradedComplex { n_plus, n_minus, dims, differentials, basis }
}

/// Betti numbers over the chosen field, and `Kh(L) = Σ t^r q^m dim H^r_m`.
pub fn compute_kh(d: &LinkDiagram, modulus: Modulus) -> KhResult {
    let complex = build_complex(d);
    kh_of_complex(&complex, modulus)
}

pub fn kh_of_complex(complex: &GradedComplex, modulus: Modulus) -> KhResult {
    let ranks: BTreeMap<(i32, i32), usize> = complex
        .differentials
        .par_iter()
        .map(|(&key, mat)| (key, mat.rank(modulus)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let rank_at = |r: i32, m: i32| ranks.get(&(r, m)).copied().unwrap_or(0);

    let mut betti = BTreeMap::new();
    let mut kh = LaurentPoly2::zero();
    for (&(r, m), &dim) in &complex.dims {
        let h = dim - rank_at(r, m) - rank_at(r - 1, m);
        if h > 0 {
            betti.insert((r, m), h);
            kh.add_term(r, m, h as i64);
        }
    }
    KhResult { modulus: modulus.0, betti, chain_dims: complex.dims.clone(), kh }
}

/// Graded dimension of `H^r` alone.
pub fn qbetti(d: &LinkDiagram, r: i32, modulus: Modulus) -> GradedDimension {
    let result = compute_kh(d, modulus);
    GradedDimension::from_dims(
        result.betti.iter().filter(|((h, _), _)| *h == r).map(|(&(_, m), &d)| (m, d as u64)),
    )
}

/// The graded Euler characteristic, from chain dimensions alone.
pub fn euler_characteristic(d: &LinkDiagram) -> LaurentPoly1 {
    build_complex(d).euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::parse("X[1,5,2,4] X[5,3,6,2] X[3,1,4,6]").unwrap()
    }

    #[test]
    fn trefoil_chain_block_dimensions() {
        let c = build_complex(&trefoil());
        // C^1_3 is the degree-0 part of [[L]]^1: three vectors v[001]vm[1] etc.
        assert_eq!(c.dim(1, 3), 3);
        let basis = c.basis(1, 3);
        let rendered: Vec<String> = basis
            .iter()
            .map(|&(v, marking)| {
                format!("v[{}]*{}", v, cube::render_marking(&cube::smooth(&trefoil(), v), marking))
            })
            .collect();
        assert_eq!(rendered, vec!["v[001]*vm[1]", "v[010]*vm[1]", "v[100]*vm[1]"]);
    }

    #[test]
    fn trefoil_kh_rational() {
        let r = compute_kh(&trefoil(), Modulus::RATIONALS);
        assert_eq!(r.kh.render(), "q + q^3 + q^5*t^2 + q^9*t^3");
    }

    #[test]
    fn trefoil_kh_f2() {
        let r = compute_kh(&trefoil(), Modulus(2));
        assert_eq!(r.kh.render(), "q + q^3 + q^5*t^2 + q^7*t^2 + q^7*t^3 + q^9*t^3");
    }

    #[test]
    fn trefoil_qbetti() {
        let d = trefoil();
        let b2 = qbetti(&d, 2, Modulus::RATIONALS);
        assert_eq!(b2.to_poly().render(), "q^5");
        assert!(qbetti(&d, 1, Modulus::RATIONALS).is_zero());
        assert!(qbetti(&d, 7, Modulus::RATIONALS).is_zero());
    }

    #[test]
    fn trefoil_euler_characteristic() {
        assert_eq!(euler_characteristic(&trefoil()).render(), "q + q^3 + q^5 - q^9");
    }

    #[test]
    fn d_squared_zero_and_degrees() {
        let c = build_complex(&trefoil());
        assert!(c.d_squared_is_zero());
        assert!(c.degrees_are_preserved());
    }
}
