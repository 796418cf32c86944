//! Diameter-3 generating sets for `Z_n` and `Z_n × Z_n` built from
//! balanced base-`K` digits.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::CayleyGraph;
use crate::group::{build_group, FiniteGroup, Group, GroupError, GroupSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("modulus {0} is below 6")]
    ModulusTooSmall(usize),
}

/// `S = {±1..±M, ±K..±MK, ±K²..±MK²}` in `Z_n`, with `K = ⌈n^{1/3}⌉`, `M = ⌊K/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitCover {
    pub n: usize,
    pub base: usize,
    pub digit_bound: usize,
    /// Sorted residues, duplicates mod `n` collapsed.
    pub set: Vec<usize>,
}

/// Smallest `K` with `K³ ≥ n`.
pub fn cube_root_ceil(n: usize) -> usize {
    let mut k = (n as f64).cbrt().round() as usize;
    while k * k * k < n {
        k += 1;
    }
    while k > 1 && (k - 1) * (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    k
}

pub fn zn_cover(n: usize) -> Result<DigitCover, CoverError> {
    if n < 6 {
        return Err(CoverError::ModulusTooSmall(n));
    }
    Ok(digit_cover(n))
}

/// The digit set without the `n ≥ 6` guard. Below 6 the set is still
/// symmetric and identity-free but coverage must be checked by the caller.
pub(crate) fn digit_cover(n: usize) -> DigitCover {
    let base = cube_root_ceil(n);
    let digit_bound = base / 2;
    let mut set = Vec::new();
    for scale in [1, base, base * base] {
        for d in 1..=digit_bound {
            let v = (d * scale) % n;
            set.push(v);
            set.push((n - v) % n);
        }
    }
    set.retain(|&v| v != 0);
    set.sort_unstable();
    set.dedup();
    DigitCover {
        n,
        base,
        digit_bound,
        set,
    }
}

/// `T = (S ∪ {0}) × (S ∪ {0}) \ {(0,0)}`, pairs encoded as `a + n·b`.
pub fn znzn_cover(n: usize) -> Result<Vec<(usize, usize)>, CoverError> {
    if n < 6 {
        return Err(CoverError::ModulusTooSmall(n));
    }
    Ok(pair_cover(n))
}

pub(crate) fn pair_cover(n: usize) -> Vec<(usize, usize)> {
    let mut digits = digit_cover(n).set;
    digits.insert(0, 0);
    let mut out = Vec::with_capacity(digits.len() * digits.len());
    for &a in &digits {
        for &b in &digits {
            if (a, b) != (0, 0) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn zn_graph(cover: &DigitCover) -> Result<CayleyGraph<FiniteGroup>, GroupError> {
    let g = build_group(&GroupSpec::Cyclic(cover.n))?;
    Ok(CayleyGraph::new(g, cover.set.clone(), false))
}

pub fn znzn_graph(n: usize, cover: &[(usize, usize)]) -> Result<CayleyGraph<FiniteGroup>, GroupError> {
    let g = build_group(&GroupSpec::Product(vec![GroupSpec::Cyclic(n), GroupSpec::Cyclic(n)]))?;
    let genset = cover.iter().map(|&(a, b)| a + n * b).collect();
    debug_assert!(g.order() == n * n);
    Ok(CayleyGraph::new(g, genset, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: smallest number of summands from `set` reaching each residue.
    fn sum_lengths(n: usize, set: &[usize]) -> Vec<usize> {
        let mut best = vec![usize::MAX; n];
        best[0] = 0;
        for len in 1..=3 {
            let prev: Vec<usize> = (0..n).filter(|&r| best[r] == len - 1).collect();
            for r in prev {
                for &s in set {
                    let t = (r + s) % n;
                    best[t] = best[t].min(len);
                }
            }
        }
        best
    }

    #[test]
    fn n27_is_balanced_ternary() {
        let c = zn_cover(27).unwrap();
        assert_eq!((c.base, c.digit_bound), (3, 1));
        assert_eq!(c.set, vec![1, 3, 9, 18, 24, 26]);
        assert!(sum_lengths(27, &c.set).iter().all(|&l| l <= 3));
    }

    #[test]
    fn n6_collapses_duplicates() {
        let c = zn_cover(6).unwrap();
        assert_eq!((c.base, c.digit_bound), (2, 1));
        assert_eq!(c.set, vec![1, 2, 4, 5]);
        assert!(sum_lengths(6, &c.set).iter().all(|&l| l <= 3));
    }

    #[test]
    fn symmetric_and_identity_free() {
        for n in 6..300 {
            let c = zn_cover(n).unwrap();
            assert!(!c.set.contains(&0));
            for &s in &c.set {
                assert!(c.set.contains(&((n - s) % n)), "n={n}");
            }
        }
    }

    #[test]
    fn too_small() {
        assert_eq!(zn_cover(5), Err(CoverError::ModulusTooSmall(5)));
        assert_eq!(znzn_cover(2), Err(CoverError::ModulusTooSmall(2)));
    }

    #[test]
    fn n27_pairs_cover_in_three_steps() {
        let t = znzn_cover(27).unwrap();
        assert!(!t.contains(&(0, 0)));
        for &(a, b) in &t {
            assert!(t.contains(&((27 - a) % 27, (27 - b) % 27)));
        }
        let r = znzn_graph(27, &t).unwrap().diameter().unwrap();
        assert_eq!(r.order, 729);
        assert!(r.diameter <= 3);
    }

    #[test]
    fn cube_roots() {
        assert_eq!(cube_root_ceil(27), 3);
        assert_eq!(cube_root_ceil(28), 4);
        assert_eq!(cube_root_ceil(6), 2);
        assert_eq!(cube_root_ceil(1000), 10);
        assert_eq!(cube_root_ceil(1001), 11);
    }
}
