//! Diameter-3 Cayley graphs on `UT(3, p) × Z₂`, where `UT(3, p)` is the
//! group of upper unitriangular 3×3 matrices over `GF(p)`.
//!
//! An element `((a, b, c), ε)` stands for the matrix `(1 a b; 0 1 c; 0 0 1)`
//! paired with `ε ∈ Z₂`, and multiplies as
//! `(a, b, c, ε)(a', b', c', ε') = (a + a', b + b' + a·c', c + c', ε + ε')`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::pair_cover;
use crate::cayley::{CayleyError, CayleyGraph};
use crate::group::Group;

/// Largest prime handled by the exhaustive constructions.
pub const MAX_PRIME: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("{0} is not an odd prime ≤ {MAX_PRIME}")]
    NotOddPrime(usize),
    #[error("p = {0} is too small for the full generating set (need p ≥ 5)")]
    PrimeTooSmall(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree {0} is below the smallest buildable degree {1}")]
    DegreeTooSmall(usize, usize),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub flag: bool,
}

impl HeisenbergElement {
    pub fn new(a: usize, b: usize, c: usize, flag: bool) -> Self {
        HeisenbergElement { a, b, c, flag }
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{},{}),{})", self.a, self.b, self.c, u8::from(self.flag))
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[derive(Clone, Debug)]
pub struct HeisenbergGroup {
    p: usize,
}

impl HeisenbergGroup {
    pub fn new(p: usize) -> Result<Self, HeisenbergError> {
        if p % 2 == 0 || !is_prime(p) || p > MAX_PRIME {
            return Err(HeisenbergError::NotOddPrime(p));
        }
        Ok(HeisenbergGroup { p })
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn index(&self, e: HeisenbergElement) -> usize {
        let p = self.p;
        e.a % p + p * (e.b % p) + p * p * (e.c % p) + p * p * p * usize::from(e.flag)
    }

    pub fn element(&self, i: usize) -> HeisenbergElement {
        let p = self.p;
        HeisenbergElement {
            a: i % p,
            b: i / p % p,
            c: i / (p * p) % p,
            flag: i / (p * p * p) == 1,
        }
    }

    pub fn multiply(&self, x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement {
        let p = self.p;
        HeisenbergElement {
            a: (x.a + y.a) % p,
            b: (x.b + y.b + x.a * y.c) % p,
            c: (x.c + y.c) % p,
            flag: x.flag ^ y.flag,
        }
    }

    /// `(1,0,0;0)`, `(0,0,1;0)` and `(0,0,0;1)`.
    pub fn natural_generators(&self) -> Vec<usize> {
        vec![
            self.index(HeisenbergElement::new(1, 0, 0, false)),
            self.index(HeisenbergElement::new(0, 0, 1, false)),
            self.index(HeisenbergElement::new(0, 0, 0, true)),
        ]
    }

    /// `α_x = ((x, x, 0), 0)`.
    pub fn alpha(&self, x: usize) -> HeisenbergElement {
        HeisenbergElement::new(x % self.p, x % self.p, 0, false)
    }

    /// `β_x = ((0, x, x), 1)`.
    pub fn beta(&self, x: usize) -> HeisenbergElement {
        HeisenbergElement::new(0, x % self.p, x % self.p, true)
    }

    pub fn evaluate(&self, word: &[S1Generator]) -> HeisenbergElement {
        word.iter()
            .map(|g| match *g {
                S1Generator::Alpha(x) => self.alpha(x),
                S1Generator::Beta(x) => self.beta(x),
            })
            .fold(HeisenbergElement::new(0, 0, 0, false), |acc, g| self.multiply(acc, g))
    }

    fn inv_mod(&self, x: usize) -> usize {
        // Fermat: x^{p-2}
        let p = self.p;
        (0..p - 2).fold(1, |acc, _| acc * x % p)
    }

    fn sub(&self, x: usize, y: usize) -> usize {
        (x + self.p - y % self.p) % self.p
    }

    fn div(&self, x: usize, y: usize) -> usize {
        x % self.p * self.inv_mod(y) % self.p
    }
}

impl Group for HeisenbergGroup {
    fn order(&self) -> usize {
        2 * self.p * self.p * self.p
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index(self.multiply(self.element(a), self.element(b)))
    }

    fn inv(&self, a: usize) -> usize {
        let p = self.p;
        let e = self.element(a);
        // (a,b,c)⁻¹ = (−a, −b + ac, −c)
        self.index(HeisenbergElement::new(
            (p - e.a) % p,
            (p - e.b + e.a * e.c % p) % p,
            (p - e.c) % p,
            e.flag,
        ))
    }

    fn label(&self, a: usize) -> String {
        self.element(a).to_string()
    }
}

pub fn build_heisenberg(p: usize) -> Result<HeisenbergGroup, HeisenbergError> {
    HeisenbergGroup::new(p)
}

/// A letter of `S₁`; the parameter is a nonzero residue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum S1Generator {
    Alpha(usize),
    Beta(usize),
}

impl fmt::Display for S1Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S1Generator::Alpha(x) => write!(f, "α{x}"),
            S1Generator::Beta(x) => write!(f, "β{x}"),
        }
    }
}

fn push_nonzero(word: &mut Vec<S1Generator>, g: S1Generator) {
    match g {
        S1Generator::Alpha(0) | S1Generator::Beta(0) => {}
        g => word.push(g),
    }
}

/// Word of at most three `S₁` letters for `((a,b,c),0)` with `a ≠ 0`.
pub fn express_flag0(
    group: &HeisenbergGroup,
    x: HeisenbergElement,
) -> Result<Vec<S1Generator>, HeisenbergError> {
    let g = group;
    let p = g.p;
    let (a, b, c) = (x.a % p, x.b % p, x.c % p);
    if x.flag || a == 0 {
        return Err(HeisenbergError::Precondition(format!("{x} needs ε = 0 and a ≠ 0")));
    }
    let mut word = Vec::new();
    let pick_u = || (1..p).find(|&u| u != c);
    if b == (a + c) % p {
        let u = pick_u().ok_or_else(|| HeisenbergError::Precondition("no u ∉ {0, c}".into()))?;
        push_nonzero(&mut word, S1Generator::Beta(u));
        push_nonzero(&mut word, S1Generator::Beta(g.sub(c, u)));
        push_nonzero(&mut word, S1Generator::Alpha(a));
    } else if b == (a + c + a * c) % p {
        let u = pick_u().ok_or_else(|| HeisenbergError::Precondition("no u ∉ {0, c}".into()))?;
        push_nonzero(&mut word, S1Generator::Alpha(a));
        push_nonzero(&mut word, S1Generator::Beta(u));
        push_nonzero(&mut word, S1Generator::Beta(g.sub(c, u)));
    } else {
        let q = g.div(g.sub(b, c), a);
        let xs = (c + 1 + p - q) % p;
        let zs = g.sub(q, 1);
        push_nonzero(&mut word, S1Generator::Beta(xs));
        push_nonzero(&mut word, S1Generator::Alpha(a));
        push_nonzero(&mut word, S1Generator::Beta(zs));
    }
    Ok(word)
}

/// Word of at most three `S₁` letters for `((a,b,c),1)` with `c ≠ 0`.
pub fn express_flag1(
    group: &HeisenbergGroup,
    x: HeisenbergElement,
) -> Result<Vec<S1Generator>, HeisenbergError> {
    let g = group;
    let p = g.p;
    let (a, b, c) = (x.a % p, x.b % p, x.c % p);
    if !x.flag || c == 0 {
        return Err(HeisenbergError::Precondition(format!("{x} needs ε = 1 and c ≠ 0")));
    }
    let q = g.div(g.sub(b, a), c);
    let xs = g.sub(q, 1);
    let zs = (a + 1 + p - q) % p;
    let mut word = Vec::new();
    push_nonzero(&mut word, S1Generator::Alpha(xs));
    push_nonzero(&mut word, S1Generator::Beta(c));
    push_nonzero(&mut word, S1Generator::Alpha(zs));
    Ok(word)
}

/// `S = S₁ ∪ S₂ ∪ S₃` with the three parts kept for reporting.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeisenbergGenset {
    pub p: usize,
    pub s1: Vec<HeisenbergElement>,
    pub s2: Vec<HeisenbergElement>,
    pub s3: Vec<HeisenbergElement>,
    /// Union as sorted group indices.
    pub set: Vec<usize>,
}

/// Cover of `Z_p²` used for `S₂` and `S₃`.
///
/// Below 8 the digit set of every residue is all of `Z_p*`, which makes the
/// graph diameter 2; there `{±1}` already reaches every residue in 3 steps.
fn subgroup_cover(p: usize) -> Vec<(usize, usize)> {
    if p >= 8 {
        return pair_cover(p);
    }
    let digits = [0, 1, p - 1];
    digits
        .iter()
        .flat_map(|&a| digits.iter().map(move |&b| (a, b)))
        .filter(|&pair| pair != (0, 0))
        .collect()
}

pub fn build_full_genset(p: usize) -> Result<HeisenbergGenset, HeisenbergError> {
    let g = HeisenbergGroup::new(p)?;
    if p < 5 {
        return Err(HeisenbergError::PrimeTooSmall(p));
    }
    let s1: Vec<HeisenbergElement> = (1..p)
        .flat_map(|x| [g.alpha(x), g.beta(x)])
        .collect();
    let cover = subgroup_cover(p);
    let s2: Vec<HeisenbergElement> = cover
        .iter()
        .map(|&(b, c)| HeisenbergElement::new(0, b, c, false))
        .collect();
    let s3: Vec<HeisenbergElement> = cover
        .iter()
        .flat_map(|&(a, b)| [false, true].map(|f| HeisenbergElement::new(a, b, 0, f)))
        .collect();
    let mut set: Vec<usize> = s1.iter().chain(&s2).chain(&s3).map(|&e| g.index(e)).collect();
    set.sort_unstable();
    set.dedup();
    Ok(HeisenbergGenset { p, s1, s2, s3, set })
}

pub fn heisenberg_graph(p: usize) -> Result<CayleyGraph<HeisenbergGroup>, HeisenbergError> {
    let s = build_full_genset(p)?;
    Ok(CayleyGraph::new(HeisenbergGroup::new(p)?, s.set, false))
}

/// Largest prime `p ∈ [5, MAX_PRIME]` with `|S(p)| ≤ degree`, padded to
/// exactly `degree`.
pub fn graph_for_degree(degree: usize) -> Result<CayleyGraph<HeisenbergGroup>, HeisenbergError> {
    let sizes: Vec<(usize, usize)> = (5..=MAX_PRIME)
        .filter(|&p| is_prime(p))
        .map(|p| build_full_genset(p).map(|s| (p, s.set.len())))
        .collect::<Result<_, _>>()?;
    let smallest = sizes.iter().map(|&(_, n)| n).min().unwrap_or(0);
    let p = sizes
        .iter()
        .filter(|&&(_, n)| n <= degree)
        .map(|&(p, _)| p)
        .max()
        .ok_or(HeisenbergError::DegreeTooSmall(degree, smallest))?;
    Ok(heisenberg_graph(p)?.pad(degree)?)
}
