//! Permutations of the coordinate positions `0..k` of a direct power `H^k`.
//!
//! A permutation `π` acts on tuples on the right: the value sitting at
//! position `j` moves to position `π(j)`. Composition follows the same
//! convention, so `a.then(&b)` is "apply `a`, then `b`".

use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoordPermutation(Vec<u8>);

impl CoordPermutation {
    pub fn identity(k: usize) -> Self {
        CoordPermutation((0..k as u8).collect())
    }

    pub fn new(images: Vec<u8>) -> Result<Self, GroupError> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            let i = i as usize;
            if i >= k || seen[i] {
                return Err(GroupError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(CoordPermutation(images))
    }

    /// `x ↦ x + shift (mod k)`, the cyclic right rotation of coordinates.
    pub fn rotation(k: usize, shift: usize) -> Self {
        CoordPermutation((0..k).map(|j| ((j + shift) % k) as u8).collect())
    }

    /// `x ↦ k − 1 − x`, reversal of the coordinate order.
    pub fn reversal(k: usize) -> Self {
        CoordPermutation((0..k).rev().map(|j| j as u8).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn image(&self, j: usize) -> usize {
        self.0[j] as usize
    }

    /// Composition: first `self`, then `other`.
    pub fn then(&self, other: &CoordPermutation) -> CoordPermutation {
        debug_assert_eq!(self.arity(), other.arity());
        CoordPermutation(self.0.iter().map(|&j| other.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> CoordPermutation {
        let mut inv = vec![0u8; self.0.len()];
        for (j, &i) in self.0.iter().enumerate() {
            inv[i as usize] = j as u8;
        }
        CoordPermutation(inv)
    }

    pub fn pow(&self, e: usize) -> CoordPermutation {
        let mut acc = CoordPermutation::identity(self.arity());
        for _ in 0..e {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &i)| j == i as usize)
    }

    pub fn fixes(&self, j: usize) -> bool {
        self.0[j] as usize == j
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// Cycle lengths in descending order (fixed points included as 1s).
    pub fn cycle_type(&self) -> Vec<usize> {
        let k = self.arity();
        let mut seen = vec![false; k];
        let mut lens = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.image(j);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// `σ⁻¹ π σ` in the "then" convention, i.e. relabel positions through `σ`.
    pub fn conjugate_by(&self, sigma: &CoordPermutation) -> CoordPermutation {
        sigma.inverse().then(self).then(sigma)
    }

    /// Move coordinates: `out[π(j)] = x[j]`.
    pub fn apply<T: Copy>(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.arity());
        let mut out = x.to_vec();
        for (j, &v) in x.iter().enumerate() {
            out[self.0[j] as usize] = v;
        }
        out
    }

    /// Same as [`apply`](Self::apply) for a 0/1 vector packed into the low `k` bits.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0;
        for (j, &i) in self.0.iter().enumerate() {
            if mask >> j & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    /// Parse 1-based cycle notation such as `(1,2,3)(4,5)` or `(1 2 3)`.
    pub fn from_cycles(k: usize, text: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Parse(format!("bad cycle notation `{text}`"));
        let mut images: Vec<u8> = (0..k as u8).collect();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if points.iter().any(|&p| p == 0 || p > k) {
                return Err(bad());
            }
            for (i, &p) in points.iter().enumerate() {
                let next = points[(i + 1) % points.len()];
                images[p - 1] = (next - 1) as u8;
            }
            rest = rest[body_end + 1..].trim_start();
        }
        CoordPermutation::new(images)
    }

    /// 1-based cycle notation without fixed points, `()` for the identity.
    pub fn to_cycles(&self) -> String {
        let k = self.arity();
        let mut seen = vec![false; k];
        let mut out = String::new();
        for start in 0..k {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push((j + 1).to_string());
                j = self.image(j);
            }
            out.push('(');
            out.push_str(&cycle.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Every permutation of `0..k` in lexicographic order of image arrays.
    pub fn all(k: usize) -> Vec<CoordPermutation> {
        let mut current: Vec<u8> = (0..k as u8).collect();
        let mut out = vec![CoordPermutation(current.clone())];
        while next_permutation(&mut current) {
            out.push(CoordPermutation(current.clone()));
        }
        out
    }
}

impl fmt::Debug for CoordPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for CoordPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_moves_last_coordinate_to_front() {
        let rho = CoordPermutation::rotation(6, 1);
        assert_eq!(rho.apply(&[1, 2, 3, 4, 5, 6]), vec![6, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn then_is_a_right_action() {
        let a = CoordPermutation::from_cycles(4, "(1,2,3)").unwrap();
        let b = CoordPermutation::from_cycles(4, "(3,4)").unwrap();
        let x = [10, 20, 30, 40];
        assert_eq!(a.then(&b).apply(&x), b.apply(&a.apply(&x)));
    }

    #[test]
    fn cycles_round_trip() {
        let p = CoordPermutation::from_cycles(5, "(1 3)(2,5,4)").unwrap();
        assert_eq!(p.to_cycles(), "(1,3)(2,5,4)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert_eq!(CoordPermutation::identity(3).to_cycles(), "()");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(CoordPermutation::new(vec![0, 0, 1]).is_err());
        assert!(CoordPermutation::new(vec![0, 3, 1]).is_err());
        assert!(CoordPermutation::from_cycles(3, "(1,4)").is_err());
    }

    #[test]
    fn all_enumerates_factorial_many() {
        assert_eq!(CoordPermutation::all(4).len(), 24);
        assert_eq!(CoordPermutation::all(1).len(), 1);
    }

    #[test]
    fn mask_application_matches_vector_application() {
        let p = CoordPermutation::from_cycles(4, "(2,4,3)").unwrap();
        // 1010 (positions 0 and 2) → positions 0 and 1
        assert_eq!(p.apply_mask(0b0101), 0b0011);
        assert_eq!(p.apply(&[1, 0, 1, 0]), vec![1, 1, 0, 0]);
    }
}
