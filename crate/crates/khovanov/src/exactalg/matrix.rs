//! Sparse matrices over Q or a prime field, with exact rank/kernel computation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Coefficient-field selector: `0` is the rationals, a prime `p` is `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Modulus(pub u64);

impl Modulus {
    pub const RATIONALS: Modulus = Modulus(0);

    pub fn is_rationals(self) -> bool {
        self.0 == 0
    }

    /// Valid moduli are 0 (the rationals) and primes.
    pub fn validate(self) -> Result<Self, String> {
        let p = self.0;
        if p == 0 {
            return Ok(self);
        }
        if p < 2 || (p > 2 && p % 2 == 0) || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(format!("modulus {} is neither 0 nor a prime", p));
        }
        Ok(self)
    }
}

/// A sparse matrix with small integer entries (the differentials carry only
/// `-1`, `0`, `+1` at construction time).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, i8)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (u32, u32, i8)>,
    ) -> Self {
        let mut m = Self::new(rows, cols);
        for (r, c, v) in entries {
            m.push(r, c, v);
        }
        m
    }

    /// Record a nonzero entry; each `(row, col)` position at most once.
    pub fn push(&mut self, row: u32, col: u32, value: i8) {
        debug_assert!((row as usize) < self.rows && (col as usize) < self.cols);
        debug_assert!(value != 0);
        self.entries.push((row, col, value));
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, u32, i8)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact rank over the chosen field, with `rank + nullity = cols`.
    pub fn rank_kernel(&self, field: Modulus) -> (usize, usize) {
        let rank = self.rank(field);
        (rank, self.cols - rank)
    }

    pub fn rank(&self, field: Modulus) -> usize {
        match field.0 {
            0 => rank_rationals(self),
            p => rank_prime(self, p),
        }
    }

    /// The product `other * self` (apply `self`, then `other`), exact over Z.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(other.cols, self.rows, "dimension mismatch in composition");
        let mut by_col: BTreeMap<u32, Vec<(u32, i64)>> = BTreeMap::new();
        for &(r, c, v) in &other.entries {
            by_col.entry(c).or_default().push((r, v as i64));
        }
        let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for &(mid, c, v) in &self.entries {
            if let Some(rows) = by_col.get(&mid) {
                for &(r, w) in rows {
                    *acc.entry((r, c)).or_insert(0) += v as i64 * w;
                }
            }
        }
        let mut out = SparseMatrix::new(other.rows, self.cols);
        for ((r, c), v) in acc {
            if v != 0 {
                assert!(v.unsigned_abs() <= i8::MAX as u64, "composition entry overflow");
                out.push(r, c, v as i8);
            }
        }
        out
    }
}

/// Sparse elimination worklist: rows as sorted column->value maps.
struct Elim<T> {
    rows: Vec<BTreeMap<u32, T>>,
    col_count: Vec<u32>,
}

impl<T: Clone> Elim<T> {
    fn new(m: &SparseMatrix, lift: impl Fn(i8) -> T) -> Self {
        let mut rows: Vec<BTreeMap<u32, T>> = vec![BTreeMap::new(); m.rows];
        let mut col_count = vec![0u32; m.cols];
        for &(r, c, v) in &m.entries {
            let prev = rows[r as usize].insert(c, lift(v));
            debug_assert!(prev.is_none(), "duplicate entry at ({r}, {c})");
            col_count[c as usize] += 1;
        }
        Elim { rows, col_count }
    }

    /// Markowitz-style pivot: minimize (row_nnz - 1) * (col_nnz - 1),
    /// ties broken by lowest (row, col) for reproducible runs.
    fn choose_pivot(&self) -> Option<(usize, u32)> {
        let mut best: Option<(u64, usize, u32)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let rw = row.len() as u64 - 1;
            for (&c, _) in row.iter() {
                let score = rw * (self.col_count[c as usize] as u64 - 1);
                let cand = (score, r, c);
                if best.map_or(true, |b| cand < b) {
                    if score == 0 {
                        // scanning rows then columns in ascending order, the
                        // first zero-score entry is already the tie-break winner
                        return Some((r, c));
                    }
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn remove_row(&mut self, r: usize) -> BTreeMap<u32, T> {
        let row = std::mem::take(&mut self.rows[r]);
        for &c in row.keys() {
            self.col_count[c as usize] -= 1;
        }
        row
    }

    fn replace_row(&mut self, r: usize, row: BTreeMap<u32, T>) {
        debug_assert!(self.rows[r].is_empty());
        for &c in row.keys() {
            self.col_count[c as usize] += 1;
        }
        self.rows[r] = row;
    }
}

/// Rank over F_p by scaled row elimination (no inverses needed).
fn rank_prime(m: &SparseMatrix, p: u64) -> usize {
    let p128 = p as u128;
    let lift = |v: i8| -> u64 { (v as i64).rem_euclid(p as i64) as u64 };
    let mut e = Elim::new(m, lift);
    // drop entries that are 0 mod p (p = 2 turns -1 into 1, never 0; still, stay general)
    for r in 0..e.rows.len() {
        let zeros: Vec<u32> = e.rows[r].iter().filter(|(_, &v)| v == 0).map(|(&c, _)| c).collect();
        for c in zeros {
            e.rows[r].remove(&c);
            e.col_count[c as usize] -= 1;
        }
    }
    let mut rank = 0;
    while let Some((pr, pc)) = e.choose_pivot() {
        rank += 1;
        let pivot_row = e.remove_row(pr);
        let pivot = pivot_row[&pc];
        let targets: Vec<usize> = (0..e.rows.len()).filter(|&r| e.rows[r].contains_key(&pc)).collect();
        for r in targets {
            let row = e.remove_row(r);
            let factor = row[&pc];
            let mut merged: BTreeMap<u32, u64> = BTreeMap::new();
            for (&c, &v) in &row {
                let scaled = (pivot as u128 * v as u128) % p128;
                if scaled != 0 {
                    merged.insert(c, scaled as u64);
                }
            }
            for (&c, &v) in &pivot_row {
                let sub = (factor as u128 * v as u128) % p128;
                if sub == 0 {
                    continue;
                }
                let cur = merged.remove(&c).unwrap_or(0);
                let next = (cur as u128 + p128 - sub) % p128;
                if next != 0 {
                    merged.insert(c, next as u64);
                }
            }
            merged.remove(&pc);
            e.replace_row(r, merged);
        }
    }
    rank
}

/// Rank over Q by integer-preserving elimination: cross-multiplication keeps
/// every entry an integer, and dividing each updated row by its content (gcd)
/// keeps growth in check. Row scaling never changes the rank.
fn rank_rationals(m: &SparseMatrix) -> usize {
    let mut e = Elim::new(m, |v| BigInt::from(v));
    let mut rank = 0;
    while let Some((pr, pc)) = e.choose_pivot() {
        rank += 1;
        let pivot_row = e.remove_row(pr);
        let pivot = pivot_row[&pc].clone();
        let targets: Vec<usize> = (0..e.rows.len()).filter(|&r| e.rows[r].contains_key(&pc)).collect();
        for r in targets {
            let row = e.remove_row(r);
            let factor = row[&pc].clone();
            let mut merged: BTreeMap<u32, BigInt> = BTreeMap::new();
            for (&c, v) in &row {
                merged.insert(c, &pivot * v);
            }
            for (&c, v) in &pivot_row {
                let sub = &factor * v;
                let next = match merged.remove(&c) {
                    Some(cur) => cur - sub,
                    None => -sub,
                };
                if !next.is_zero() {
                    merged.insert(c, next);
                }
            }
            merged.remove(&pc);
            let content = row_content(&merged);
            if let Some(g) = content {
                if g > BigInt::from(1) {
                    for v in merged.values_mut() {
                        *v = &*v / &g;
                    }
                }
            }
            e.replace_row(r, merged);
        }
    }
    rank
}

fn row_content(row: &BTreeMap<u32, BigInt>) -> Option<BigInt> {
    let mut g: Option<BigInt> = None;
    for v in row.values() {
        g = Some(match g {
            None => v.abs(),
            Some(acc) => gcd(acc, v.abs()),
        });
        if g.as_ref().is_some_and(|g| *g == BigInt::from(1)) {
            break;
        }
    }
    g
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::new(3, 4);
        assert_eq!(m.rank_kernel(Modulus::RATIONALS), (0, 4));
        assert_eq!(m.rank_kernel(Modulus(2)), (0, 4));
    }

    #[test]
    fn all_ones_over_f2() {
        let m = SparseMatrix::from_entries(2, 2, [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert_eq!(m.rank_kernel(Modulus(2)), (1, 1));
        assert_eq!(m.rank_kernel(Modulus::RATIONALS), (1, 1));
    }

    #[test]
    fn rank_differs_by_field() {
        // [[1, 1], [1, -1]]: invertible over Q, singular over F_2
        let m = SparseMatrix::from_entries(2, 2, [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)]);
        assert_eq!(m.rank(Modulus::RATIONALS), 2);
        assert_eq!(m.rank(Modulus(2)), 1);
        assert_eq!(m.rank(Modulus(3)), 2);
    }

    #[test]
    fn composition() {
        let a = SparseMatrix::from_entries(2, 2, [(0, 0, 1), (1, 1, -1)]);
        let b = SparseMatrix::from_entries(2, 2, [(0, 1, 1), (1, 0, 1)]);
        let ba = a.compose(&b); // b * a
        assert_eq!(ba, SparseMatrix::from_entries(2, 2, [(0, 1, -1), (1, 0, 1)]));
    }

    #[test]
    fn modulus_validation() {
        assert!(Modulus(0).validate().is_ok());
        assert!(Modulus(2).validate().is_ok());
        assert!(Modulus(7).validate().is_ok());
        assert!(Modulus(1).validate().is_err());
        assert!(Modulus(9).validate().is_err());
        assert!(Modulus(12).validate().is_err());
    }
}
