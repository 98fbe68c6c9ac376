//! Integer-coefficient Laurent polynomials in `t` and `q`, and graded dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A Laurent polynomial over the integers in the two variables `t` and `q`.
///
/// Keys are `(r, m)` = (`t`-exponent, `q`-exponent); zero coefficients are
/// never stored, and iteration is in `(r, m)` order, which fixes the
/// canonical rendering.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(r: i32, m: i32, c: i64) -> Self {
        let mut p = Self::default();
        p.add_term(r, m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i32, i64)>) -> Self {
        let mut p = Self::default();
        for (r, m, c) in terms {
            p.add_term(r, m, c);
        }
        p
    }

    pub fn add_term(&mut self, r: i32, m: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((r, m)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(r, m));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, r: i32, m: i32) -> i64 {
        self.terms.get(&(r, m)).copied().unwrap_or(0)
    }

    /// Terms in `(r, m)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i32, i64)> + '_ {
        self.terms.iter().map(|(&(r, m), &c)| (r, m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_q_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, m)| m).min()
    }

    pub fn max_q_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, m)| m).max()
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Substitute `(t, q) -> (1/t, 1/q)`; over a field this is `Kh` of the mirror.
    pub fn invert_variables(&self) -> Self {
        Self::from_terms(self.iter().map(|(r, m, c)| (-r, -m, c)))
    }

    /// Substitute `t = t0` (with `t0 = 1` or `-1`), collecting by `q`-exponent.
    pub fn eval_t(&self, t0: i64) -> LaurentPoly1 {
        debug_assert!(t0 == 1 || t0 == -1);
        let mut out = LaurentPoly1::zero();
        for (r, m, c) in self.iter() {
            let sign = if t0 == -1 && r.rem_euclid(2) == 1 { -1 } else { 1 };
            out.add_term(m, sign * c);
        }
        out
    }

    /// Exact division: `Some(p)` with `p * divisor == self`, or `None`.
    ///
    /// Non-divisibility is a normal outcome, not an error.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (&lead_key, &lead_c) = divisor.terms.iter().next().unwrap();
        let &max_key = divisor.terms.keys().next_back().unwrap();
        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some((&(r0, m0), &c0)) = rem.terms.iter().next() {
            if c0 % lead_c != 0 {
                return None;
            }
            let (qr, qm) = (r0 - lead_key.0, m0 - lead_key.1);
            // any true quotient term tau satisfies tau + max(divisor) <= max(self)
            if let Some(&self_max) = self.terms.keys().next_back() {
                if (qr + max_key.0, qm + max_key.1) > self_max {
                    return None;
                }
            }
            let qc = c0 / lead_c;
            quotient.add_term(qr, qm, qc);
            for (dr, dm, dc) in divisor.iter() {
                rem.add_term(qr + dr, qm + dm, -qc * dc);
            }
        }
        Some(quotient)
    }

    /// Canonical rendering: terms in `(r, m)` order, `q`-factor before
    /// `t`-factor, unit coefficients and zero exponents elided.
    pub fn render(&self) -> String {
        render_terms(self.iter().map(|(r, m, c)| (c, [(QV, m), (TV, r)])))
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        for (r, m, c) in rhs.iter() {
            self.add_term(r, m, c);
        }
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (r, m, c) in rhs.iter() {
            out.add_term(r, m, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.iter().map(|(r, m, c)| (r, m, -c)))
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (r1, m1, c1) in self.iter() {
            for (r2, m2, c2) in rhs.iter() {
                out.add_term(r1 + r2, m1 + m2, c1 * c2);
            }
        }
        out
    }
}

/// A one-variable integer Laurent polynomial in `q`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(m: i32, c: i64) -> Self {
        let mut p = Self::default();
        p.add_term(m, c);
        p
    }

    /// `q + 1/q`, the graded dimension of the base space `V`.
    pub fn q_plus_qinv() -> Self {
        Self::from_terms([(-1, 1), (1, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: i32) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.iter().map(|(m, a)| (m, a * c)))
    }

    pub fn shift(&self, l: i32) -> Self {
        Self::from_terms(self.iter().map(|(m, a)| (m + l, a)))
    }

    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.iter().map(|(m, c)| (-m, c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let two = |p: &Self| LaurentPoly2::from_terms(p.iter().map(|(m, c)| (0, m, c)));
        let q = two(self).divide_exact(&two(divisor))?;
        Some(Self::from_terms(q.iter().map(|(_, m, c)| (m, c))))
    }

    pub fn render(&self) -> String {
        render_terms(self.iter().map(|(m, c)| (c, [(QV, m), (TV, 0)])))
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl AddAssign<&LaurentPoly1> for LaurentPoly1 {
    fn add_assign(&mut self, rhs: &LaurentPoly1) {
        for (m, c) in rhs.iter() {
            self.add_term(m, c);
        }
    }
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (m, c) in rhs.iter() {
            out.add_term(m, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in rhs.iter() {
                out.add_term(m1 + m2, c1 * c2);
            }
        }
        out
    }
}

/// The graded dimension of a graded vector space: `q`-degree -> dimension.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct GradedDimension {
    dims: BTreeMap<i32, u64>,
}

impl GradedDimension {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dims(dims: impl IntoIterator<Item = (i32, u64)>) -> Self {
        let mut g = Self::default();
        for (m, d) in dims {
            g.add(m, d);
        }
        g
    }

    pub fn add(&mut self, m: i32, d: u64) {
        if d == 0 {
            return;
        }
        *self.dims.entry(m).or_insert(0) += d;
    }

    pub fn dim(&self, m: i32) -> u64 {
        self.dims.get(&m).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.dims.iter().map(|(&m, &d)| (m, d))
    }

    /// The degree shift `{l}`: `qdim W{l} = q^l qdim W`.
    pub fn shift(&self, l: i32) -> Self {
        Self::from_dims(self.iter().map(|(m, d)| (m + l, d)))
    }

    pub fn to_poly(&self) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.iter().map(|(m, d)| (m, d as i64)))
    }
}

const QV: &str = "q";
const TV: &str = "t";

fn render_terms<const N: usize>(terms: impl Iterator<Item = (i64, [(&'static str, i32); N])>) -> String {
    let mut out = String::new();
    for (c, factors) in terms {
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if mag != 1 {
            parts.push(mag.to_string());
        }
        for (name, exp) in factors {
            match exp {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{}^{}", name, e)),
            }
        }
        if parts.is_empty() {
            parts.push(mag.to_string());
        }
        out.push_str(&parts.join("*"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_matches_canonical_format() {
        let kh = LaurentPoly2::from_terms([(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
        assert_eq!(kh.render(), "q + q^3 + q^5*t^2 + q^9*t^3");

        let jhat = LaurentPoly1::from_terms([(1, 1), (3, 1), (5, 1), (9, -1)]);
        assert_eq!(jhat.render(), "q + q^3 + q^5 - q^9");

        let bracket = LaurentPoly1::from_terms([(-2, 1), (0, 1), (2, 1), (6, -1)]);
        assert_eq!(bracket.render(), "q^-2 + 1 + q^2 - q^6");

        let hopf = LaurentPoly2::from_terms([(0, 0, 1), (0, 2, 1), (2, 4, 1), (2, 6, 1)]);
        assert_eq!(hopf.render(), "1 + q^2 + q^4*t^2 + q^6*t^2");

        let with_coeff = LaurentPoly2::from_terms([(-2, -5, 2), (-1, -1, 1)]);
        assert_eq!(with_coeff.render(), "2*q^-5*t^-2 + q^-1*t^-1");

        assert_eq!(LaurentPoly2::zero().render(), "0");
        assert_eq!(LaurentPoly2::monomial(0, 0, -3).render(), "-3");
        assert_eq!(LaurentPoly2::monomial(2, 0, 1).render(), "t^2");
    }

    #[test]
    fn qdim_shift() {
        // qdim V = q + q^-1
        let v = GradedDimension::from_dims([(-1, 1), (1, 1)]);
        assert_eq!(v.shift(0), v);
        assert_eq!(v.shift(2), GradedDimension::from_dims([(1, 1), (3, 1)]));
        assert_eq!(v.shift(2).to_poly().render(), "q + q^3");
    }

    #[test]
    fn eval_t_at_minus_one() {
        let kh = LaurentPoly2::from_terms([(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
        assert_eq!(kh.eval_t(-1).render(), "q + q^3 + q^5 - q^9");
        let constant = LaurentPoly2::from_terms([(0, 0, 4), (0, 2, -1)]);
        assert_eq!(constant.eval_t(-1), constant.eval_t(1));
    }

    #[test]
    fn divide_exact_basic() {
        // (q^4 t^2 + q^8 t^3) / (1 + t q^4) = q^4 t^2
        let p = LaurentPoly2::from_terms([(2, 4, 1), (3, 8, 1)]);
        let d = LaurentPoly2::from_terms([(0, 0, 1), (1, 4, 1)]);
        assert_eq!(p.divide_exact(&d), Some(LaurentPoly2::monomial(2, 4, 1)));
        assert_eq!(LaurentPoly2::one().divide_exact(&d), None);
        assert_eq!(LaurentPoly2::zero().divide_exact(&d), Some(LaurentPoly2::zero()));
    }

    #[test]
    fn divide_exact_one_variable() {
        let jhat = LaurentPoly1::from_terms([(0, 1), (2, 1), (4, 1), (6, 1)]);
        let j = jhat.divide_exact(&LaurentPoly1::q_plus_qinv()).unwrap();
        assert_eq!(j.render(), "q + q^5");
        assert_eq!(&j * &LaurentPoly1::q_plus_qinv(), jhat);
    }
}
