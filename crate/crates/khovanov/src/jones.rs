//! Kauffman-bracket state sum: `<L>`, the unnormalized Jones polynomial
//! `Ĵ(L) = (-1)^{n₋} q^{n₊-2n₋} <L>`, and `J(L) = Ĵ(L)/(q+q⁻¹)`.
//!
//! This is the independent oracle for the homology pipeline: the graded
//! Euler characteristic of the complex must equal `Ĵ`.

use rayon::prelude::*;
use thiserror::Error;

use crate::cube;
use crate::exactalg::LaurentPoly1;
use crate::pdcode::LinkDiagram;

/// Ceiling on the `2^n` state enumeration; this module is an oracle, not a
/// production path.
pub const DEFAULT_MAX_CROSSINGS: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JonesError {
    #[error("diagram has {n} crossings, above the state-sum cap {cap} (2^n states)")]
    TooManyCrossings { n: usize, cap: usize },
}

/// `<L> = Σ_α (-1)^{|α|} q^{|α|} (q+q⁻¹)^{k(α)}` over all `2^n` smoothings.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly1, JonesError> {
    kauffman_bracket_capped(d, DEFAULT_MAX_CROSSINGS)
}

pub fn kauffman_bracket_capped(
    d: &LinkDiagram,
    cap: usize,
) -> Result<LaurentPoly1, JonesError> {
    let n = d.n();
    if n > cap || n >= 31 {
        return Err(JonesError::TooManyCrossings { n, cap });
    }
    // (q + q⁻¹)^k for every possible cycle count; cycles partition 2n edges
    let max_k = 2 * n;
    let mut powers = Vec::with_capacity(max_k + 1);
    powers.push(LaurentPoly1::one());
    for k in 1..=max_k {
        powers.push(&powers[k - 1] * &LaurentPoly1::q_plus_qinv());
    }

    let sum = (0u32..1 << n)
        .into_par_iter()
        .fold(LaurentPoly1::zero, |mut acc, mask| {
            let k = cube::cycle_count(d, mask);
            let r = mask.count_ones() as i32;
            let sign = if r % 2 == 0 { 1 } else { -1 };
            for (m, c) in powers[k].iter() {
                acc.add_term(m + r, sign * c);
            }
            acc
        })
        .reduce(LaurentPoly1::zero, |mut a, b| {
            a += &b;
            a
        });
    Ok(sum)
}

/// `Ĵ(L) = (-1)^{n₋} q^{n₊ - 2n₋} <L>`.
pub fn unnormalized_jones(d: &LinkDiagram) -> Result<LaurentPoly1, JonesError> {
    unnormalized_jones_capped(d, DEFAULT_MAX_CROSSINGS)
}

pub fn unnormalized_jones_capped(
    d: &LinkDiagram,
    cap: usize,
) -> Result<LaurentPoly1, JonesError> {
    let bracket = kauffman_bracket_capped(d, cap)?;
    let sign = if d.n_minus() % 2 == 0 { 1 } else { -1 };
    let shift = d.n_plus() as i32 - 2 * d.n_minus() as i32;
    Ok(bracket.scale(sign).shift(shift))
}

/// `J(L) = Ĵ(L)/(q+q⁻¹)`; the quotient is exact for every link.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPoly1, JonesError> {
    jones_capped(d, DEFAULT_MAX_CROSSINGS)
}

pub fn jones_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly1, JonesError> {
    let jhat = unnormalized_jones_capped(d, cap)?;
    Ok(jhat
        .divide_exact(&LaurentPoly1::q_plus_qinv())
        .expect("J^ of a link is divisible by q + q^-1"))
}
