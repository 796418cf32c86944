//! Odd diameter `k = 2q + 1 ≥ 7` over `K = D₂ₖ` with `S = {r, r⁻¹, s}`.
//!
//! Elements of `D₂ₖ` are indexed `rⁱsʲ ↦ i + k·j`. The action is
//! `φ(rⁱsʲ) = ρⁱσʲ` with `ρ: p ↦ p + 1` and `σ: p ↦ k − 1 − p` on coordinate
//! positions. A string of length `k` is good when its mapping matrix is
//! unimodular.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{CayleyError, CayleyGraph};
use crate::group::{build_group, build_semidirect, CoordPermutation, GroupError, GroupHom, GroupSpec, SemidirectGroup};
use crate::intmat::IntMatrix;

/// Largest group order `build_dihedral_graph` will tabulate arcs for.
pub const MAX_GRAPH_ORDER: u128 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DihedralError {
    #[error("k = {0} must be odd and at least 7")]
    InvalidK(usize),
    #[error("string {string} for {element} is not good")]
    NotGood { element: String, string: String },
    #[error("string {string} has value {got}, expected {element}")]
    WrongValue { element: String, string: String, got: String },
    #[error("string has length {got}, expected {k}")]
    WrongLength { k: usize, got: usize },
    #[error("cannot parse letter {0:?}")]
    BadLetter(String),
    #[error("degree {degree} is not 3m, 3m+1 or 3m+2 for m = {m}")]
    BadDegree { degree: usize, m: usize },
    #[error("group order {0} exceeds the graph budget")]
    BudgetExceeded(u128),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

/// `k`, `q = (k − 1)/2`, `t = ⌊q/2⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralParams {
    pub k: usize,
    pub q: usize,
    pub t: usize,
}

impl DihedralParams {
    pub fn new(k: usize) -> Result<Self, DihedralError> {
        if k < 7 || k % 2 == 0 {
            return Err(DihedralError::InvalidK(k));
        }
        let q = (k - 1) / 2;
        Ok(DihedralParams { k, q, t: q / 2 })
    }

    /// `k mod 4`, either 1 or 3.
    pub fn class(&self) -> usize {
        self.k % 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    R,
    RInv,
    S,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::R => Letter::RInv,
            Letter::RInv => Letter::R,
            Letter::S => Letter::S,
        }
    }

    /// Index into `S = {r, r⁻¹, s}` and into [`DihedralVectors::as_array`].
    pub fn index(self) -> usize {
        self as usize
    }

    /// `(i, j)` with the letter equal to `rⁱsʲ`.
    fn pair(self, k: usize) -> (usize, usize) {
        match self {
            Letter::R => (1, 0),
            Letter::RInv => (k - 1, 0),
            Letter::S => (0, 1),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::R => "r",
            Letter::RInv => "r⁻¹",
            Letter::S => "s",
        })
    }
}

impl FromStr for Letter {
    type Err = DihedralError;
    fn from_str(s: &str) -> Result<Self, DihedralError> {
        match s.trim() {
            "r" => Ok(Letter::R),
            "r⁻¹" | "r^-1" | "R" => Ok(Letter::RInv),
            "s" => Ok(Letter::S),
            other => Err(DihedralError::BadLetter(other.into())),
        }
    }
}

/// Comma-separated letters, e.g. `s,r,r⁻¹`.
pub fn format_string(letters: &[Letter]) -> String {
    letters.iter().map(Letter::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_string(text: &str) -> Result<Vec<Letter>, DihedralError> {
    text.split(',').map(str::parse).collect()
}

/// `y_{k−1}⁻¹, …, y₀⁻¹`.
pub fn inverse_string(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Product in `D₂ₖ` on `(i, j)` pairs.
fn dmul(k: usize, (i1, j1): (usize, usize), (i2, j2): (usize, usize)) -> (usize, usize) {
    let i = if j1 == 0 { i1 + i2 } else { i1 + k - i2 } % k;
    (i, (j1 + j2) % 2)
}

pub fn element_index(k: usize, i: usize, j: usize) -> usize {
    i % k + k * j
}

/// `r^i s^j` label matching the group tables, e.g. `r^3s`.
pub fn element_label(k: usize, e: usize) -> String {
    let (i, j) = (e % k, e / k);
    let r = match i {
        0 => String::new(),
        1 => "r".into(),
        _ => format!("r^{i}"),
    };
    let l = format!("{r}{}", if j == 1 { "s" } else { "" });
    if l.is_empty() {
        "1".into()
    } else {
        l
    }
}

/// Value of a string as an element index.
pub fn string_value(k: usize, letters: &[Letter]) -> usize {
    let (i, j) = letters.iter().fold((0, 0), |acc, l| dmul(k, acc, l.pair(k)));
    element_index(k, i, j)
}

/// `v_r`, `v_{r⁻¹}`, `v_s` as 0/1 vectors of length `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralVectors {
    pub k: usize,
    pub v_r: Vec<u8>,
    pub v_rinv: Vec<u8>,
    pub v_s: Vec<u8>,
}

impl DihedralVectors {
    pub fn as_array(&self) -> [&[u8]; 3] {
        [&self.v_r, &self.v_rinv, &self.v_s]
    }

    pub fn of(&self, l: Letter) -> &[u8] {
        self.as_array()[l.index()]
    }

    /// Positions of the 1s in `v_l`.
    pub fn support(&self, l: Letter) -> Vec<usize> {
        self.of(l).iter().enumerate().filter(|(_, &b)| b == 1).map(|(p, _)| p).collect()
    }
}

pub fn bit_string(v: &[u8]) -> String {
    v.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

pub fn dihedral_vectors(k: usize) -> Result<DihedralVectors, DihedralError> {
    let p = DihedralParams::new(k)?;
    let c = p.q.div_ceil(2);
    let unit = |pos: usize| {
        let mut v = vec![0u8; k];
        v[pos] = 1;
        v
    };
    let mut v_s = vec![0u8; k];
    for pos in [c - 1, c, k - 1 - c, k - c] {
        v_s[pos] = 1;
    }
    Ok(DihedralVectors {
        k,
        v_r: unit(c),
        v_rinv: unit(c - 1),
        v_s,
    })
}

/// Rows of the mapping matrix: row `w` is `v_{y_w}` permuted by
/// `φ(y_{w+1} ⋯ y_{k−1})`.
pub fn mapping_matrix(vectors: &DihedralVectors, letters: &[Letter]) -> IntMatrix {
    let k = vectors.k;
    let mut m = IntMatrix::zeros(k);
    let mut suffix = (0usize, 0usize);
    for w in (0..letters.len()).rev() {
        let (i, j) = suffix;
        for p in vectors.support(letters[w]) {
            let shifted = (p + i) % k;
            let col = if j == 1 { k - 1 - shifted } else { shifted };
            m.set(w, col, 1);
        }
        suffix = dmul(k, letters[w].pair(k), suffix);
    }
    m
}

/// True iff the string has length `k` and a unimodular mapping matrix.
pub fn verify_good(vectors: &DihedralVectors, letters: &[Letter]) -> bool {
    letters.len() == vectors.k && mapping_matrix(vectors, letters).is_unimodular()
}

fn rep(out: &mut Vec<Letter>, l: Letter, n: usize) {
    out.extend(std::iter::repeat(l).take(n));
}

/// `(r s r⁻¹ s)^n`.
fn block(out: &mut Vec<Letter>, n: usize) {
    for _ in 0..n {
        out.extend([Letter::R, Letter::S, Letter::RInv, Letter::S]);
    }
}

use Letter::{RInv as Ri, R, S};

/// `r^i` for `1 ≤ i ≤ q`.
fn rotation_string(p: &DihedralParams, i: usize) -> Option<Vec<Letter>> {
    let q = p.q;
    let mut o = Vec::with_capacity(p.k);
    if i % 2 == 0 && i >= 2 && (i <= q - 1 || (p.class() == 1 && i <= q)) {
        // covers the i = 2 case s r^{2q−1} s as well
        o.push(S);
        rep(&mut o, R, q + 1 - i);
        block(&mut o, (i - 2) / 2);
        rep(&mut o, R, q + 2 - i);
        o.push(S);
    } else if i % 2 == 1 && i < q {
        block(&mut o, (i - 1) / 2);
        rep(&mut o, R, q + 1 - i);
        o.push(S);
        rep(&mut o, R, q - i);
        o.push(S);
    } else if p.class() == 3 && i == q {
        o.extend([S, R, S, R]);
        block(&mut o, (q - 3) / 2);
        rep(&mut o, R, 3);
    } else {
        return None;
    }
    Some(o)
}

/// `r^e s` for a residue `e` of `Z_k`.
fn reflection_string(p: &DihedralParams, e: usize) -> Option<Vec<Letter>> {
    let (k, q) = (p.k, p.q);
    let mut o = Vec::with_capacity(k);
    let neg = (k - e) % k;
    if p.class() == 1 {
        if e % 2 == 0 && e + 2 <= q {
            block(&mut o, e / 2);
            rep(&mut o, R, q - e);
            o.push(S);
            rep(&mut o, R, q - e);
        } else if e == q {
            o.extend([R, R]);
            block(&mut o, (q - 2) / 2);
            o.extend([R, S, R]);
        } else if neg % 2 == 1 && neg < q {
            rep(&mut o, R, q + 2 - neg);
            block(&mut o, (neg - 1) / 2);
            rep(&mut o, R, q - neg);
            o.push(S);
        } else if e % 2 == 1 && e < q {
            o.push(S);
            rep(&mut o, R, q - e);
            block(&mut o, (e - 1) / 2);
            rep(&mut o, R, q + 2 - e);
        } else if neg == q {
            o.extend([R, S, R, R]);
            block(&mut o, (q - 4) / 2);
            o.extend([R, S, Ri, Ri, S]);
        } else if neg % 2 == 0 && neg >= 2 && neg + 2 <= q {
            rep(&mut o, R, q - neg);
            o.push(S);
            rep(&mut o, R, q - 1 - neg);
            block(&mut o, neg / 2);
            o.push(R);
        } else {
            return None;
        }
    } else if e % 2 == 0 && e < q {
        block(&mut o, e / 2);
        rep(&mut o, R, q - e);
        o.push(S);
        rep(&mut o, R, q - e);
    } else if neg % 2 == 1 && neg <= q {
        rep(&mut o, R, q + 1 - neg);
        block(&mut o, (neg - 1) / 2);
        rep(&mut o, R, q + 1 - neg);
        o.push(S);
    } else if e % 2 == 1 && e + 2 <= q {
        o.push(S);
        rep(&mut o, R, q - e);
        block(&mut o, (e - 1) / 2);
        rep(&mut o, R, q + 2 - e);
    } else if e == q {
        o.extend([S, R]);
        block(&mut o, (q - 1) / 2);
        o.push(R);
    } else if neg % 2 == 0 && neg >= 2 && neg < q {
        rep(&mut o, R, q + 1 - neg);
        o.push(S);
        rep(&mut o, R, q + 1 - neg);
        block(&mut o, (neg - 2) / 2);
        o.extend([R, R]);
    } else {
        return None;
    }
    Some(o)
}

/// The tabulated string for an element: `r, …, r` for the identity,
/// rotation and reflection templates keyed on `k mod 4`, and inverse strings
/// for `r^{−i}`.
pub fn good_string(k: usize, element: usize) -> Result<Vec<Letter>, DihedralError> {
    let p = DihedralParams::new(k)?;
    let (i, j) = (element % k, element / k);
    let s = if j == 1 {
        reflection_string(&p, i)
    } else if i == 0 {
        Some(vec![R; k])
    } else if i <= p.q {
        rotation_string(&p, i)
    } else {
        rotation_string(&p, k - i).map(|s| inverse_string(&s))
    };
    s.ok_or_else(|| DihedralError::NotGood {
        element: element_label(k, element),
        string: "(no template)".into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodStringEntry {
    pub element: usize,
    pub string: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodStringTable {
    pub k: usize,
    pub entries: Vec<GoodStringEntry>,
}

/// Check one entry: length `k`, value, goodness.
pub fn check_entry(vectors: &DihedralVectors, entry: &GoodStringEntry) -> Result<(), DihedralError> {
    let k = vectors.k;
    let label = || element_label(k, entry.element);
    if entry.string.len() != k {
        return Err(DihedralError::WrongLength { k, got: entry.string.len() });
    }
    let got = string_value(k, &entry.string);
    if got != entry.element {
        return Err(DihedralError::WrongValue {
            element: label(),
            string: format_string(&entry.string),
            got: element_label(k, got),
        });
    }
    if !verify_good(vectors, &entry.string) {
        return Err(DihedralError::NotGood {
            element: label(),
            string: format_string(&entry.string),
        });
    }
    Ok(())
}

/// A verified good string for every element of `D₂ₖ`, checked in parallel.
pub fn coverage(k: usize) -> Result<GoodStringTable, DihedralError> {
    let vectors = dihedral_vectors(k)?;
    let entries = (0..2 * k)
        .into_par_iter()
        .map(|e| {
            let entry = GoodStringEntry {
                element: e,
                string: good_string(k, e)?,
            };
            check_entry(&vectors, &entry)?;
            Ok(entry)
        })
        .collect::<Result<Vec<_>, DihedralError>>()?;
    Ok(GoodStringTable { k, entries })
}

/// `φ: D₂ₖ → Sym(Z_k)` with `r ↦ ρ`, `s ↦ σ`.
pub fn dihedral_hom(k: usize) -> Result<GroupHom, DihedralError> {
    let d = Arc::new(build_group(&GroupSpec::Dihedral(2 * k))?);
    let images = [CoordPermutation::rotation(k, 1), CoordPermutation::reversal(k)];
    Ok(GroupHom::from_generator_images(d, k, &[1, k], &images)?)
}

/// `Cay(Z_mᵏ ⋊ D₂ₖ, X)` with `X = {a(x), A(x), b(x)}`, padded by
/// `u = (0; rs)` and then `v = (0; r²s)` for degrees `3m + 1` and `3m + 2`.
pub fn build_dihedral_graph(
    k: usize,
    m: usize,
    target_degree: Option<usize>,
) -> Result<CayleyGraph<SemidirectGroup>, DihedralError> {
    let vectors = dihedral_vectors(k)?;
    if m < 2 {
        return Err(GroupError::ModulusTooSmall(m).into());
    }
    let order = (m as u128).checked_pow(k as u32).map(|p| p * 2 * k as u128).unwrap_or(u128::MAX);
    if order > MAX_GRAPH_ORDER {
        return Err(DihedralError::BudgetExceeded(order));
    }
    let degree = target_degree.unwrap_or(3 * m);
    if !(3 * m..=3 * m + 2).contains(&degree) {
        return Err(DihedralError::BadDegree { degree, m });
    }
    let hom = dihedral_hom(k)?;
    let g = build_semidirect(m, &hom)?;
    let mut genset = Vec::with_capacity(degree);
    for l in [R, Ri, S] {
        let (i, j) = l.pair(k);
        for x in 0..m {
            let coords: Vec<usize> = vectors.of(l).iter().map(|&b| b as usize * x).collect();
            genset.push(g.encode(&coords, element_index(k, i, j)));
        }
    }
    let zero = vec![0; k];
    for extra in [element_index(k, 1, 1), element_index(k, 2, 1)].into_iter().take(degree - 3 * m) {
        genset.push(g.encode(&zero, extra));
    }
    Ok(CayleyGraph::new(g, genset, false))
}

/// Serializable record of a dihedral coverage run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralCertificate {
    pub params: DihedralParams,
    pub vectors: DihedralVectors,
    pub table: GoodStringTable,
    /// Moduli at which the graph was built and its diameter checked.
    pub verified_m: Vec<usize>,
}

impl DihedralCertificate {
    pub fn build(k: usize) -> Result<Self, DihedralError> {
        Ok(DihedralCertificate {
            params: DihedralParams::new(k)?,
            vectors: dihedral_vectors(k)?,
            table: coverage(k)?,
            verified_m: Vec::new(),
        })
    }

    /// Re-check every entry against freshly derived vectors, and require
    /// all `2k` elements to be present.
    pub fn check(&self) -> Result<(), DihedralError> {
        let k = self.params.k;
        let fresh = dihedral_vectors(k)?;
        if fresh != self.vectors || self.params != DihedralParams::new(k)? {
            return Err(DihedralError::InvalidK(k));
        }
        let mut seen = vec![false; 2 * k];
        for e in &self.table.entries {
            if e.element >= 2 * k {
                return Err(DihedralError::InvalidK(k));
            }
            seen[e.element] = true;
            check_entry(&fresh, e)?;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(DihedralError::NotGood {
                element: element_label(k, missing),
                string: "(missing)".into(),
            });
        }
        Ok(())
    }
}
