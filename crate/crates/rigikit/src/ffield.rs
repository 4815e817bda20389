//! Exact scalar arithmetic and matrix rank over the prime field `F_p` with
//! `p = 2^61 - 1`, plus an arbitrary-precision rational rank routine used as an
//! independent cross-check oracle.
//!
//! The Mersenne modulus keeps products inside 128-bit intermediates and allows
//! reduction without division, which matters because a single analysis can run
//! tens of thousands of eliminations. Matrices here are small (at most a few
//! hundred rows), so both eliminations are dense with first-nonzero pivoting.

use num::{BigInt, BigRational, Integer, One, Zero};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// The Mersenne prime `2^61 - 1`.
pub const MODULUS: u64 = 2_305_843_009_213_693_951;

const MASK: u64 = MODULUS; // low 61 bits

/// An element of `F_p`, kept reduced to `[0, p)` at all times.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldScalar(u64);

impl FieldScalar {
    pub const ZERO: FieldScalar = FieldScalar(0);
    pub const ONE: FieldScalar = FieldScalar(1);

    pub fn new(value: u64) -> Self {
        FieldScalar(value % MODULUS)
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(value: i64) -> Self {
        let r = value.rem_euclid(MODULUS as i64);
        FieldScalar(r as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = FieldScalar::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    ///
    /// Panics on zero; elimination only ever inverts pivots.
    pub fn inv(self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in F_p");
        self.pow(MODULUS - 2)
    }
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        FieldScalar(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: Self) -> Self {
        let s = self.0 + MODULUS - rhs.0;
        FieldScalar(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> Self {
        FieldScalar::ZERO - self
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: Self) -> Self {
        // 2^61 = 1 (mod p), so fold the high bits back twice.
        let prod = (self.0 as u128) * (rhs.0 as u128);
        let folded = (prod & MASK as u128) as u64 + (prod >> 61) as u64;
        let folded = (folded & MASK) + (folded >> 61);
        FieldScalar(if folded >= MODULUS {
            folded - MODULUS
        } else {
            folded
        })
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldScalar>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            entries: vec![FieldScalar::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        FieldMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldScalar::ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = FieldScalar;
    fn index(&self, (i, j): (usize, usize)) -> &FieldScalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FieldMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldScalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Rank over `F_p` by Gaussian elimination on a copy; the input is not mutated.
pub fn field_rank(m: &FieldMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(rank, pivot);
        let inv = a[(rank, col)].inv();
        for i in rank + 1..rows {
            let factor = a[(i, col)] * inv;
            if factor.is_zero() {
                continue;
            }
            for j in col..cols {
                let sub = factor * a[(rank, j)];
                a[(i, j)] = a[(i, j)] - sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Dense row-major matrix over the arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integer_rows(rows: Vec<Vec<i64>>) -> Self {
        RationalMatrix::from_rows(
            rows.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Exact rank over the rationals.
///
/// Each row is scaled by the lcm of its denominators (rank-preserving) and the
/// resulting integer matrix is reduced by fraction-free elimination, so all
/// intermediate divisions are exact and no gcd churn accumulates.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut lcm = BigInt::one();
        for j in 0..m.cols {
            lcm = lcm.lcm(m[(i, j)].denom());
        }
        rows.push(
            (0..m.cols)
                .map(|j| {
                    let e = &m[(i, j)];
                    e.numer() * (&lcm / e.denom())
                })
                .collect(),
        );
    }
    bareiss_rank(rows, m.cols)
}

/// Fraction-free (Bareiss) elimination; divisions by the previous pivot are exact.
fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot_val = pivot_row[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                // Still rescale so the exact-division invariant is kept.
                for entry in &mut row[col + 1..cols] {
                    let num = &pivot_val * &*entry;
                    debug_assert!((&num % &prev).is_zero());
                    *entry = num / &prev;
                }
                continue;
            }
            let lead = row[col].clone();
            for j in col + 1..cols {
                let num = &pivot_val * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_val;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_rank() {
        assert_eq!(field_rank(&FieldMatrix::identity(3)), 3);
        assert_eq!(rational_rank(&RationalMatrix::identity(5)), 5);
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(field_rank(&FieldMatrix::zeros(4, 6)), 0);
        assert_eq!(rational_rank(&RationalMatrix::zeros(4, 6)), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = FieldMatrix::from_rows(vec![
            vec![FieldScalar::new(1), FieldScalar::new(2)],
            vec![FieldScalar::new(2), FieldScalar::new(4)],
        ]);
        assert_eq!(field_rank(&m), 1);
    }

    #[test]
    fn proportional_rational_rows() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let quarter = BigRational::new(1.into(), 4.into());
        let sixth = BigRational::new(1.into(), 6.into());
        let m = RationalMatrix::from_rows(vec![vec![half, third], vec![quarter, sixth]]);
        assert_eq!(rational_rank(&m), 1);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(field_rank(&FieldMatrix::zeros(0, 8)), 0);
        assert_eq!(field_rank(&FieldMatrix::zeros(3, 0)), 0);
    }

    fn random_integer_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| rng.gen_range(-(1 << 20)..=1 << 20))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cross_oracle_agreement_on_random_integer_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let rows = random_integer_matrix(&mut rng, 6, 8);
            let fm = FieldMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| FieldScalar::from_i64(v)).collect())
                    .collect(),
            );
            let rm = RationalMatrix::from_integer_rows(rows);
            assert_eq!(field_rank(&fm), rational_rank(&rm));
        }
    }

    #[test]
    fn cross_oracle_agreement_with_forced_dependencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let mut rows = random_integer_matrix(&mut rng, 4, 7);
            // Append linear combinations so rank deficits actually occur.
            let combo: Vec<i64> = (0..7).map(|j| 2 * rows[0][j] - 3 * rows[2][j]).collect();
            let combo2: Vec<i64> = (0..7).map(|j| rows[1][j] + rows[3][j]).collect();
            rows.push(combo);
            rows.push(combo2);
            let fm = FieldMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| FieldScalar::from_i64(v)).collect())
                    .collect(),
            );
            let rm = RationalMatrix::from_integer_rows(rows);
            let rank = rational_rank(&rm);
            assert!(rank <= 4);
            assert_eq!(field_rank(&fm), rank);
        }
    }

    fn arb_scalar() -> impl Strategy<Value = FieldScalar> {
        any::<u64>().prop_map(FieldScalar::new)
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, FieldScalar::ZERO);
            prop_assert_eq!(a + FieldScalar::ZERO, a);
            prop_assert_eq!(a * FieldScalar::ONE, a);
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv(), FieldScalar::ONE);
            }
        }

        #[test]
        fn rank_invariances(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = random_integer_matrix(&mut rng, 5, 7);
            let m = FieldMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| FieldScalar::from_i64(v)).collect())
                    .collect(),
            );
            let rank = field_rank(&m);
            prop_assert!(rank <= 5);
            prop_assert_eq!(field_rank(&m.transpose()), rank);

            // Swap two rows and scale another by a nonzero scalar.
            let mut scrambled = m.clone();
            scrambled.swap_rows(0, 3);
            let scale = FieldScalar::new(rng.gen_range(1..MODULUS));
            for j in 0..scrambled.cols() {
                scrambled[(1, j)] = scrambled[(1, j)] * scale;
            }
            prop_assert_eq!(field_rank(&scrambled), rank);
        }
    }
}
