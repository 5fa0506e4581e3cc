//! Exact integer matrix helpers: fraction-free determinants, Smith normal
//! form, and resultants of integer polynomials via the Sylvester matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPolynomial;

/// Dense matrix over `Z`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect()
    }

    /// Exact determinant by fraction-free Bareiss elimination. The 0×0
    /// determinant is 1.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Some(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Some(sign * m[n - 1][n - 1].clone())
    }

    /// Diagonal of the Smith normal form: nonnegative invariant factors
    /// `d_1 | d_2 | ...`, including unit and zero entries.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        let mut m = self.to_rows();
        let rows = self.rows;
        let cols = self.cols;
        let n = rows.min(cols);
        let mut r = 0usize;
        while r < n {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let pivot = (r..rows)
                .flat_map(|i| (r..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].abs());
            let (pi, pj) = match pivot {
                None => break,
                Some(p) => p,
            };
            m.swap(r, pi);
            for row in m.iter_mut() {
                row.swap(r, pj);
            }
            // Clear the pivot row and column; restart whenever a remainder
            // smaller than the pivot shows up.
            let mut dirty = false;
            for i in r + 1..rows {
                if m[i][r].is_zero() {
                    continue;
                }
                let q = rounded_div(&m[i][r], &m[r][r]);
                for j in r..cols {
                    let v = &m[i][j] - &q * &m[r][j];
                    m[i][j] = v;
                }
                if !m[i][r].is_zero() {
                    dirty = true;
                }
            }
            for j in r + 1..cols {
                if m[r][j].is_zero() {
                    continue;
                }
                let q = rounded_div(&m[r][j], &m[r][r]);
                for row in m.iter_mut().take(rows).skip(r) {
                    let v = &row[j] - &q * &row[r];
                    row[j] = v;
                }
                if !m[r][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide the rest of the block; if not, absorb the
            // offending row and keep reducing.
            let offender = (r + 1..rows)
                .flat_map(|i| (r + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[r][r]).is_zero());
            if let Some((i, _)) = offender {
                for j in r..cols {
                    let v = &m[r][j] + &m[i][j];
                    m[r][j] = v;
                }
                continue;
            }
            r += 1;
        }
        let mut diag: Vec<BigInt> = (0..n).map(|i| m[i][i].abs()).collect();
        diag.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => a.cmp(b),
        });
        diag
    }
}

/// Quotient rounded to nearest, so remainders satisfy `|r| ≤ |b|/2`.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// `|Res(f, t^k − 1)|` for an ordinary integer polynomial `f`, computed as
/// the Sylvester determinant over `Z`. Returns zero exactly when `f` shares
/// a root with `t^k − 1`.
pub fn resultant_with_cyclotomic(f: &LaurentPolynomial, k: u32) -> Option<BigInt> {
    debug_assert!(k >= 1);
    let coeffs = f.integer_coeff_vec()?;
    if coeffs.is_empty() {
        return Some(BigInt::zero());
    }
    let deg = f.max_exp().expect("nonzero") as usize;
    debug_assert!(f.is_ordinary());
    let mut fv = vec![BigInt::zero(); deg + 1];
    for (e, c) in coeffs {
        fv[e as usize] = c;
    }
    if deg == 0 {
        // Res(c, g) = c^{deg g}.
        return Some(fv[0].pow(k).abs());
    }
    let k = k as usize;
    // g = t^k − 1.
    let mut gv = vec![BigInt::zero(); k + 1];
    gv[k] = BigInt::one();
    gv[0] = -BigInt::one();
    let n = deg + k;
    let sylvester = IntMatrix::from_fn(n, n, |i, j| {
        if i < k {
            // Row of f coefficients, shifted by i; descending-degree layout.
            let idx = j as i64 - i as i64;
            if (0..=deg as i64).contains(&idx) {
                fv[deg - idx as usize].clone()
            } else {
                BigInt::zero()
            }
        } else {
            let i = i - k;
            let idx = j as i64 - i as i64;
            if (0..=k as i64).contains(&idx) {
                gv[k - idx as usize].clone()
            } else {
                BigInt::zero()
            }
        }
    });
    sylvester.determinant().map(|d| d.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_small_determinants() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-2));
        let m = IntMatrix::from_i64_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(5));
        assert_eq!(IntMatrix::zero(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn smith_diagonal_classic() {
        // diag(2, 6) is already in Smith form; [[2,4],[6,8]] has factors 2, 4? —
        // det = -8, gcd of entries 2, so the form is (2, 4).
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(
            m.smith_diagonal(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        let m = IntMatrix::from_i64_rows(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(m.smith_diagonal(), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn smith_diagonal_divisibility_chain() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]);
        let d = m.smith_diagonal();
        assert_eq!(d, vec![BigInt::one(), BigInt::from(2), BigInt::from(12)]);
        for w in d.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn resultant_examples() {
        // Δ(trefoil) = t² − t + 1 against t² − 1: Δ(1)·Δ(−1) = 1·3.
        let delta = LaurentPolynomial::from_int_terms(&[(2, 1), (1, -1), (0, 1)]);
        assert_eq!(resultant_with_cyclotomic(&delta, 1).unwrap(), BigInt::one());
        assert_eq!(resultant_with_cyclotomic(&delta, 2).unwrap(), BigInt::from(3));
        assert_eq!(resultant_with_cyclotomic(&delta, 3).unwrap(), BigInt::from(4));
        assert_eq!(resultant_with_cyclotomic(&delta, 4).unwrap(), BigInt::from(3));
        // t² − t + 1 divides t⁶ − 1, so the resultant vanishes.
        assert_eq!(resultant_with_cyclotomic(&delta, 6).unwrap(), BigInt::zero());
        // Constant polynomial.
        let one = LaurentPolynomial::one();
        assert_eq!(resultant_with_cyclotomic(&one, 5).unwrap(), BigInt::one());
    }
}
