//! Exact integer matrix arithmetic: determinants, unimodular inverses and ranks.
//!
//! Determinants use fraction-free (Bareiss) elimination in checked `i128`.
//! If an intermediate overflows, the determinant is recomputed modulo enough
//! 61-bit primes to exceed twice the Hadamard bound and reconstructed by CRT.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("integer overflow during elimination")]
    Overflow,
}

/// Square integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(MatrixError::NotSquare { rows: n, cols: r.len() });
        }
        Ok(IntMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(l, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix, reduced mod `m` into `0..m`.
    pub fn left_mul_mod(&self, y: &[i64], m: i64) -> Vec<i64> {
        let n = self.n;
        let mut x = vec![0i64; n];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            for j in 0..n {
                x[j] = (x[j] + yi * self.get(i, j)).rem_euclid(m);
            }
        }
        x
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_i128(self).map(BigInt::from).unwrap_or_else(|| multimodular_det(self))
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.determinant();
        d == BigInt::from(1) || d == BigInt::from(-1)
    }

    /// Exact integer inverse; `Ok(None)` when the determinant is not `±1`.
    pub fn unimodular_inverse(&self) -> Result<Option<IntMatrix>, MatrixError> {
        if !self.is_unimodular() {
            return Ok(None);
        }
        euclid_inverse(self).map(Some)
    }
}

fn bareiss_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.n;
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<i128> = m.data.iter().map(|&v| v as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..n {
        let pivot = (c..n).find(|&r| a[r * n + c] != 0);
        let Some(p) = pivot else { return Some(0) };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            sign = -sign;
        }
        let pv = a[c * n + c];
        for r in c + 1..n {
            let f = a[r * n + c];
            for j in c + 1..n {
                let num = a[r * n + j]
                    .checked_mul(pv)?
                    .checked_sub(a[c * n + j].checked_mul(f)?)?;
                a[r * n + j] = num / prev;
            }
            a[r * n + c] = 0;
        }
        prev = pv;
    }
    Some(sign * a[n * n - 1])
}

/// Primes just below 2^61.
const PRIMES: [u64; 8] = [
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
    2305843009213693613,
    2305843009213693561,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn det_mod(m: &IntMatrix, p: u64) -> u64 {
    let n = m.n;
    let mut a: Vec<u64> = m.data.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
        if piv != c {
            for j in 0..n {
                a.swap(piv * n + j, c * n + j);
            }
            det = (p - det) % p;
        }
        let pv = a[c * n + c];
        det = mulmod(det, pv, p);
        let inv = powmod(pv, p - 2, p);
        for r in c + 1..n {
            let f = mulmod(a[r * n + c], inv, p);
            if f == 0 {
                continue;
            }
            for j in c..n {
                let t = mulmod(f, a[c * n + j], p);
                a[r * n + j] = (a[r * n + j] + p - t) % p;
            }
        }
    }
    det
}

/// Bits of the Hadamard bound `∏ ‖row‖`, rounded up.
fn hadamard_bits(m: &IntMatrix) -> u64 {
    (0..m.n)
        .map(|i| {
            let sq: u128 = m.row(i).iter().map(|&v| (v as i128 * v as i128) as u128).sum();
            // ceil(log2(sqrt(sq)))
            (128 - sq.leading_zeros() as u64 + 1) / 2
        })
        .sum()
}

fn multimodular_det(m: &IntMatrix) -> BigInt {
    let needed = hadamard_bits(m) + 2;
    let count = needed.div_ceil(60) as usize;
    assert!(count <= PRIMES.len(), "matrix too large for modular determinant");
    let mut modulus = BigInt::from(1);
    let mut value = BigInt::from(0);
    for &p in &PRIMES[..count] {
        let r = det_mod(m, p);
        // value ≡ r (mod p), value ≡ old (mod modulus)
        let bp = BigInt::from(p);
        let cur = (&value % &bp + &bp) % &bp;
        let cur = u64::try_from(cur).expect("residue fits");
        let diff = (r + p - cur) % p;
        let mod_p = u64::try_from(&modulus % &bp).expect("residue fits");
        let t = mulmod(diff, powmod(mod_p, p - 2, p), p);
        value += &modulus * BigInt::from(t);
        modulus *= bp;
    }
    let half = &modulus / 2;
    if value > half {
        value - modulus
    } else {
        value
    }
}

/// Integer row reduction of `[M | I]` to `[I | M⁻¹]` by Euclidean steps.
fn euclid_inverse(m: &IntMatrix) -> Result<IntMatrix, MatrixError> {
    let n = m.n;
    let w = 2 * n;
    let mut a = vec![0i128; n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = m.get(i, j) as i128;
        }
        a[i * w + n + i] = 1;
    }
    let sub_row = |a: &mut Vec<i128>, dst: usize, src: usize, f: i128| -> Result<(), MatrixError> {
        if f == 0 {
            return Ok(());
        }
        for j in 0..w {
            let t = a[src * w + j].checked_mul(f).ok_or(MatrixError::Overflow)?;
            a[dst * w + j] = a[dst * w + j].checked_sub(t).ok_or(MatrixError::Overflow)?;
        }
        Ok(())
    };
    for c in 0..n {
        // gcd-reduce column c among rows c..n until one nonzero entry remains
        loop {
            let nz: Vec<usize> = (c..n).filter(|&r| a[r * w + c] != 0).collect();
            let Some(&best) = nz.iter().min_by_key(|&&r| a[r * w + c].abs()) else {
                return Err(MatrixError::Overflow);
            };
            if best != c {
                for j in 0..w {
                    a.swap(best * w + j, c * w + j);
                }
            }
            if nz.len() == 1 {
                break;
            }
            for r in c + 1..n {
                let f = a[r * w + c] / a[c * w + c];
                sub_row(&mut a, r, c, f)?;
            }
        }
        if a[c * w + c] < 0 {
            for j in 0..w {
                a[c * w + j] = -a[c * w + j];
            }
        }
        debug_assert_eq!(a[c * w + c], 1);
    }
    for c in (0..n).rev() {
        for r in 0..c {
            let f = a[r * w + c];
            sub_row(&mut a, r, c, f)?;
        }
    }
    let mut out = IntMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = a[i * w + n + j];
            out.set(i, j, i64::try_from(v).map_err(|_| MatrixError::Overflow)?);
        }
    }
    Ok(out)
}

/// Determinant of a 0/1 matrix given as bit-packed rows (bit `j` of row
/// `i` is entry `(i, j)`). Uses `i64` Bareiss for `k ≤ 12`, where every
/// minor is below the Hadamard bound `k^{k/2}`.
pub fn det_bitrows(rows: &[u64]) -> BigInt {
    let k = rows.len();
    if k > 12 {
        return bit_matrix(rows).determinant();
    }
    let mut a = [[0i64; 12]; 12];
    for (i, &r) in rows.iter().enumerate() {
        for (j, cell) in a[i].iter_mut().enumerate().take(k) {
            *cell = (r >> j & 1) as i64;
        }
    }
    let mut sign = 1;
    let mut prev = 1;
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| a[r][c] != 0) else { return BigInt::from(0) };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        let pv = a[c][c];
        for r in c + 1..k {
            let f = a[r][c];
            for j in c + 1..k {
                a[r][j] = (a[r][j] * pv - a[c][j] * f) / prev;
            }
            a[r][c] = 0;
        }
        prev = pv;
    }
    BigInt::from(if k == 0 { 1 } else { sign * a[k - 1][k - 1] })
}

pub fn bit_matrix(rows: &[u64]) -> IntMatrix {
    let k = rows.len();
    let mut m = IntMatrix::zeros(k);
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..k {
            m.set(i, j, (r >> j & 1) as i64);
        }
    }
    m
}

/// `|det| = 1` for bit-packed 0/1 rows, with a GF(2) rank check first.
pub fn bitrows_unimodular(rows: &[u64]) -> bool {
    if gf2_rank(rows) < rows.len() {
        return false;
    }
    let d = det_bitrows(rows);
    d == BigInt::from(1) || d == BigInt::from(-1)
}

/// Rank over the rationals of a list of integer rows (any shape).
///
/// Falls back to reporting full column rank if elimination overflows, so
/// callers using it to prune never discard a candidate wrongly.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let pv = a[rank][c];
        for r in rank + 1..a.len() {
            let f = a[r][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let v = a[r][j].checked_mul(pv).and_then(|x| {
                    a[rank][j].checked_mul(f).and_then(|y| x.checked_sub(y))
                });
                match v {
                    Some(v) => a[r][j] = v,
                    None => return cols.min(rows.len()),
                }
            }
            let g = a[r].iter().fold(0i128, |g, &x| crate::group::gcd(g.unsigned_abs() as usize, x.unsigned_abs() as usize) as i128);
            if g > 1 {
                a[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(2) of bit-packed rows.
pub fn gf2_rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hand_determinants() {
        assert_eq!(mat(&[&[1, 1], &[0, 1]]).determinant(), BigInt::from(1));
        assert_eq!(mat(&[&[1, 1], &[1, 1]]).determinant(), BigInt::from(0));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(mat(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]).determinant(), BigInt::from(1));
        assert_eq!(IntMatrix::zeros(3).determinant(), BigInt::from(0));
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::from(1));
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = mat(&[&[1, 2, 3], &[0, 1, 4], &[5, 6, 0]]);
        let inv = m.unimodular_inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
        assert_eq!(mat(&[&[2, 0], &[0, 1]]).unimodular_inverse().unwrap(), None);
    }

    #[test]
    fn modular_path_matches_bareiss() {
        // Vandermonde-like matrix with a large known determinant
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i as i64 + 2).pow(j as u32)) % 1_000_003).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let small = mat(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(multimodular_det(&small), BigInt::from(bareiss_i128(&small).unwrap()));
        // both paths must agree whenever Bareiss succeeds
        if let Some(d) = bareiss_i128(&m) {
            assert_eq!(multimodular_det(&m), BigInt::from(d));
        }
        let big = IntMatrix::from_rows(
            &(0..40)
                .map(|i| (0..40).map(|j| i64::from((i * 7 + j * 3) % 5 == 0) + i64::from(i == j)).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let d = big.determinant();
        assert!(d.bits() <= hadamard_bits(&big) + 1);
    }

    #[test]
    fn bitrow_determinant_agrees_with_general_path() {
        let rows = [0b011u64, 0b110, 0b100];
        assert_eq!(det_bitrows(&rows), bit_matrix(&rows).determinant());
        assert!(bitrows_unimodular(&rows));
        assert!(!bitrows_unimodular(&[0b011, 0b110, 0b101]));
        assert_eq!(det_bitrows(&[0b011, 0b110, 0b101]), BigInt::from(2));
    }

    #[test]
    fn ranks() {
        assert_eq!(rational_rank(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]), 2);
        assert_eq!(rational_rank(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), 3);
        // rank 3 over Q but only 2 over GF(2)
        assert_eq!(gf2_rank(&[0b011, 0b110, 0b101]), 2);
        assert_eq!(gf2_rank(&[]), 0);
        assert_eq!(rational_rank(&[]), 0);
    }
}
