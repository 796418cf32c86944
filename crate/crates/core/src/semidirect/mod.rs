//! Generating sets of `Z_mᵏ ⋊_φ K` built from a subset `S ⊆ K` and 0/1
//! vectors `V`, with per-element certificates valid for every modulus `m`.
//!
//! A generator is `(vᵢ(x); sᵢ)` where `vᵢ(x)` puts `x` on the support of `vᵢ`.
//! A length-`k` product `∏ (v_{u_w}(y_w); t_w)` has coordinate part `x = yM`
//! where row `w` of the mapping matrix `M` is `v_{u_w}` permuted by
//! `φ(t_{w+1} ⋯ t_k)`. If `det M = ±1` every `x` is reached for every `m`.

mod search;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cayley::{ratio, CayleyError, CayleyGraph, DiameterReport, Ratio};
use crate::group::{build_semidirect, FiniteGroup, Group, GroupError, GroupHom, GroupSpec, SemidirectGroup};
use crate::intmat::{bitrows_unimodular, IntMatrix, MatrixError};

pub use search::{enumerate_s, enumerate_v, search, SearchConfig, SearchOutcome, SearchStats, SearchTarget};

/// Longest string length handled by the engine.
pub const MAX_K: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("element {label} (index {element}) is not covered")]
    Uncovered { element: usize, label: String },
    #[error("verification failed at element {label}: {detail}")]
    Verification { label: String, detail: String },
    #[error("search space exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no certificate found")]
    NothingFound,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Mask as a bit string, character `j` = coordinate `j`.
pub fn mask_to_bits(mask: u64, k: usize) -> String {
    (0..k).map(|j| if mask >> j & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn bits_to_mask(text: &str) -> Option<u64> {
    if text.len() > 64 {
        return None;
    }
    text.chars().enumerate().try_fold(0u64, |acc, (j, c)| match c {
        '0' => Some(acc),
        '1' => Some(acc | 1 << j),
        _ => None,
    })
}

/// `(k, S, V, φ, ι)` for one candidate construction.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub k: usize,
    pub directed: bool,
    pub hom: GroupHom,
    /// Elements of `K`.
    pub s: Vec<usize>,
    /// Bit `j` of `v[i]` is coordinate `j` of `vᵢ`.
    pub v: Vec<u64>,
    /// `ι`, with `s[ι(i)] = s[i]⁻¹`. Empty for directed specs.
    pub pairing: Vec<usize>,
    pub adjacency: AdjacencyRule,
}

/// Which adjacent letter pairs a sum string may not contain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum AdjacencyRule {
    /// `t_{j+1} ≠ t_j⁻¹` as elements of `K`.
    Elements,
    /// No generator family followed by its inverse family:
    /// `s_j = s_i⁻¹` and `v_j = v_i` permuted by `φ(s_i)⁻¹`. Identical to
    /// [`Elements`](Self::Elements) for undirected specs.
    #[default]
    Generators,
    /// Experimental: no restriction.
    Off,
}

impl AdjacencyRule {
    pub fn name(self) -> &'static str {
        match self {
            AdjacencyRule::Elements => "elements",
            AdjacencyRule::Generators => "generators",
            AdjacencyRule::Off => "off",
        }
    }
}

impl std::str::FromStr for AdjacencyRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "elements" => Ok(AdjacencyRule::Elements),
            "generators" => Ok(AdjacencyRule::Generators),
            "off" => Ok(AdjacencyRule::Off),
            _ => Err(format!("unknown adjacency rule {s:?}")),
        }
    }
}

impl GeneratorSpec {
    /// Build a spec, deriving `ι` from `S` when undirected.
    pub fn new(k: usize, directed: bool, hom: GroupHom, s: Vec<usize>, v: Vec<u64>) -> Result<Self, EngineError> {
        let pairing = if directed {
            Vec::new()
        } else {
            pairing_of(hom.source(), &s).ok_or_else(|| EngineError::InvalidSpec("S is not inverse-closed".into()))?
        };
        let spec = GeneratorSpec {
            k,
            directed,
            hom,
            s,
            v,
            pairing,
            adjacency: AdjacencyRule::default(),
        };
        spec.check_structure()?;
        Ok(spec)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.hom.source()
    }

    pub fn set_size(&self) -> usize {
        self.s.len()
    }

    /// Everything except coverage: `1 ∉ S`, distinct `sᵢ`, nonzero `vᵢ` of
    /// length `k`, and the pairing constraint `v_{ι(i)} = vᵢ^{φ(sᵢ)⁻¹}`.
    pub fn check_structure(&self) -> Result<(), EngineError> {
        let k = self.k;
        let bad = |m: String| Err(EngineError::InvalidSpec(m));
        if !(2..=MAX_K).contains(&k) || self.hom.arity() != k {
            return bad(format!("k = {k} with a hom of arity {}", self.hom.arity()));
        }
        let n = self.group().order();
        if self.s.is_empty() || self.s.len() != self.v.len() {
            return bad("S and V must be nonempty and of equal size".into());
        }
        if self.s.iter().any(|&g| g >= n) {
            return bad("element of S out of range".into());
        }
        if self.s.contains(&0) {
            return bad("S contains the identity".into());
        }
        let mut sorted = self.s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.s.len() {
            return bad("S has repeated elements".into());
        }
        if let Some(i) = self.v.iter().position(|&v| v == 0 || v >> k != 0) {
            return bad(format!("v{} is zero or longer than k", i + 1));
        }
        if !self.directed {
            if self.pairing.len() != self.s.len() {
                return bad("pairing has the wrong length".into());
            }
            let g = self.group();
            for (i, &j) in self.pairing.iter().enumerate() {
                if j >= self.s.len() || self.pairing[j] != i || self.s[j] != g.inv(self.s[i]) {
                    return bad(format!("pairing fails at index {}", i + 1));
                }
                let expect = self.hom.image(self.s[i]).inverse().apply_mask(self.v[i]);
                if self.v[j] != expect {
                    return bad(format!(
                        "v{} must equal v{} permuted by φ(s{})⁻¹",
                        j + 1,
                        i + 1,
                        i + 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// First element of `K` that is not a product of exactly `k` elements
    /// of `S` (with the adjacency rule), if any.
    pub fn first_uncovered(&self) -> Option<usize> {
        first_uncovered(self.group(), &self.s, self.k, &self.forbidden_pairs())
    }

    /// `forbid[i * s + j]`: letter `j` may not follow letter `i`.
    pub fn forbidden_pairs(&self) -> Vec<bool> {
        forbidden_pairs(&self.hom, &self.s, &self.v, self.adjacency)
    }

    pub fn check_coverage(&self) -> Result<(), EngineError> {
        match self.first_uncovered() {
            None => Ok(()),
            Some(e) => Err(EngineError::Uncovered {
                element: e,
                label: self.group().label(e),
            }),
        }
    }

    /// `φ(g)` applied to every mask, as a lookup table indexed `g << k | mask`.
    fn mask_action(&self) -> Vec<u64> {
        mask_action(&self.hom, self.k)
    }

    /// Rows of the mapping matrix for index string `u`.
    pub fn mapping_rows(&self, u: &[usize]) -> Vec<u64> {
        let g = self.group();
        let k = self.k;
        let mut rows = vec![0u64; k];
        let mut suffix = 0;
        for w in (0..k).rev() {
            rows[w] = self.hom.image(suffix).apply_mask(self.v[u[w]]);
            suffix = g.mul(self.s[u[w]], suffix);
        }
        rows
    }

    pub fn mapping_matrix(&self, u: &[usize]) -> MappingMatrix {
        let rows = self.mapping_rows(u);
        let matrix = crate::intmat::bit_matrix(&rows);
        MappingMatrix {
            determinant: matrix.determinant(),
            matrix,
        }
    }

    /// `x ↦ (vᵢ(x); sᵢ)` inside `G`.
    pub fn generator(&self, g: &SemidirectGroup, i: usize, x: usize) -> usize {
        let coords: Vec<usize> = (0..self.k).map(|j| if self.v[i] >> j & 1 == 1 { x } else { 0 }).collect();
        g.encode(&coords, self.s[i])
    }

    /// The index string of the inverse product, `(ι(u_k), …, ι(u_1))`.
    pub fn inverse_string(&self, u: &[usize]) -> Option<Vec<usize>> {
        if self.directed {
            return None;
        }
        Some(u.iter().rev().map(|&i| self.pairing[i]).collect())
    }

    pub fn string_value(&self, u: &[usize]) -> usize {
        let g = self.group();
        u.iter().fold(0, |acc, &i| g.mul(acc, self.s[i]))
    }

    fn adjacent_ok(&self, u: &[usize]) -> bool {
        let forbid = self.forbidden_pairs();
        let sn = self.s.len();
        u.windows(2).all(|w| !forbid[w[0] * sn + w[1]])
    }
}

/// `ι` for an inverse-closed `S`, or `None`.
pub fn pairing_of(g: &FiniteGroup, s: &[usize]) -> Option<Vec<usize>> {
    s.iter()
        .map(|&x| s.iter().position(|&y| y == g.inv(x)))
        .collect()
}

pub(crate) fn forbidden_pairs(hom: &GroupHom, s: &[usize], v: &[u64], rule: AdjacencyRule) -> Vec<bool> {
    let g = hom.source();
    let sn = s.len();
    let mut out = vec![false; sn * sn];
    for i in 0..sn {
        for j in 0..sn {
            out[i * sn + j] = match rule {
                AdjacencyRule::Off => false,
                AdjacencyRule::Elements => s[j] == g.inv(s[i]),
                AdjacencyRule::Generators => {
                    s[j] == g.inv(s[i]) && v[j] == hom.image(s[i]).inverse().apply_mask(v[i])
                }
            };
        }
    }
    out
}

/// Forbidden pairs under `t_{j+1} ≠ t_j⁻¹` (or none).
pub(crate) fn element_pairs(g: &FiniteGroup, s: &[usize], on: bool) -> Vec<bool> {
    let sn = s.len();
    (0..sn * sn)
        .map(|x| on && s[x % sn] == g.inv(s[x / sn]))
        .collect()
}

pub(crate) fn mask_action(hom: &GroupHom, k: usize) -> Vec<u64> {
    let n = hom.source().order();
    let mut out = vec![0u64; n << k];
    for g in 0..n {
        let p = hom.image(g);
        for mask in 0..1u64 << k {
            out[g << k | mask as usize] = p.apply_mask(mask);
        }
    }
    out
}

/// Exactly-`k` coverage by dynamic programming over `(element, last letter)`.
/// `forbid[i * |S| + j]` bars letter `j` directly after letter `i`.
pub fn first_uncovered(g: &FiniteGroup, s: &[usize], k: usize, forbid: &[bool]) -> Option<usize> {
    let n = g.order();
    let sn = s.len();
    if sn == 0 {
        return (0..n).next();
    }
    // reach[e * sn + i]: e is reachable ending in letter i
    let mut reach = vec![false; n * sn];
    for (i, &x) in s.iter().enumerate() {
        reach[x * sn + i] = true;
    }
    for _ in 1..k {
        let mut next = vec![false; n * sn];
        for e in 0..n {
            for last in 0..sn {
                if !reach[e * sn + last] {
                    continue;
                }
                for (i, &x) in s.iter().enumerate() {
                    if forbid[last * sn + i] {
                        continue;
                    }
                    next[g.mul(e, x) * sn + i] = true;
                }
            }
        }
        reach = next;
    }
    (0..n).find(|&e| !reach[e * sn..(e + 1) * sn].iter().any(|&b| b))
}

/// A length-`k` string over `S` as elements `t` and indices `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumString {
    pub t: Vec<usize>,
    pub u: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingMatrix {
    pub matrix: IntMatrix,
    pub determinant: num_bigint::BigInt,
}

impl MappingMatrix {
    pub fn is_unimodular(&self) -> bool {
        self.determinant == 1.into() || self.determinant == (-1).into()
    }
}

/// All sum strings with value `target`, in lexicographic order of `u`.
pub fn sum_strings(spec: &GeneratorSpec, target: usize) -> impl Iterator<Item = SumString> + '_ {
    let sn = spec.s.len();
    let k = spec.k;
    let total = (sn as u128).pow(k as u32);
    (0..total)
        .map(move |mut code| {
            let mut u = vec![0usize; k];
            for w in (0..k).rev() {
                u[w] = (code % sn as u128) as usize;
                code /= sn as u128;
            }
            u
        })
        .filter(move |u| spec.adjacent_ok(u) && spec.string_value(u) == target)
        .map(move |u| SumString {
            t: u.iter().map(|&i| spec.s[i]).collect(),
            u,
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSolution {
    pub element: usize,
    pub u: Vec<usize>,
    pub m_inverse: IntMatrix,
}

/// First lexicographic string for `target` with a unimodular mapping matrix.
pub fn solve_element(spec: &GeneratorSpec, target: usize) -> Result<Option<ElementSolution>, EngineError> {
    let forbid = spec.forbidden_pairs();
    let table = StringTable::new(spec.group(), &spec.s, spec.k, &forbid);
    let act = spec.mask_action();
    match table.solve(target, &spec.v, &act, spec.k, &forbid) {
        Some(u) => Ok(Some(solution_for(spec, target, u)?)),
        None => Ok(None),
    }
}

fn solution_for(spec: &GeneratorSpec, target: usize, u: Vec<usize>) -> Result<ElementSolution, EngineError> {
    let mm = spec.mapping_matrix(&u);
    let inv = mm
        .matrix
        .unimodular_inverse()?
        .ok_or_else(|| EngineError::InvalidSpec("selected matrix is not unimodular".into()))?;
    Ok(ElementSolution {
        element: target,
        u,
        m_inverse: inv,
    })
}

/// Every valid string of length `k` over `S`, grouped by value.
#[derive(Clone, Debug)]
pub(crate) struct StringTable {
    k: usize,
    /// Per target: flattened `u` strings (k letters each) and the element
    /// `t_{w+1}⋯t_k` for each position.
    us: Vec<Vec<u8>>,
    suffix: Vec<Vec<u32>>,
}

impl StringTable {
    pub(crate) fn new(g: &FiniteGroup, s: &[usize], k: usize, forbid: &[bool]) -> Self {
        let n = g.order();
        let sn = s.len();
        let mut us = vec![Vec::new(); n];
        let mut suffix = vec![Vec::new(); n];
        let mut u = vec![0usize; k];
        let mut prefix = vec![0usize; k + 1];
        // iterative DFS in lexicographic order
        let mut depth = 0;
        let mut next = vec![0usize; k];
        loop {
            if depth == k {
                let target = prefix[k];
                let mut suf = 0usize;
                let base = suffix[target].len();
                suffix[target].resize(base + k, 0);
                for w in (0..k).rev() {
                    suffix[target][base + w] = suf as u32;
                    suf = g.mul(s[u[w]], suf);
                }
                us[target].extend(u.iter().map(|&i| i as u8));
                depth -= 1;
                continue;
            }
            if next[depth] == sn {
                next[depth] = 0;
                if depth == 0 {
                    break;
                }
                depth -= 1;
                continue;
            }
            let i = next[depth];
            next[depth] += 1;
            if depth > 0 && forbid[u[depth - 1] * sn + i] {
                continue;
            }
            u[depth] = i;
            prefix[depth + 1] = g.mul(prefix[depth], s[i]);
            depth += 1;
        }
        StringTable { k, us, suffix }
    }

    pub(crate) fn count(&self, target: usize) -> usize {
        self.us[target].len() / self.k.max(1)
    }

    pub(crate) fn string(&self, target: usize, idx: usize) -> Vec<usize> {
        self.us[target][idx * self.k..(idx + 1) * self.k]
            .iter()
            .map(|&i| i as usize)
            .collect()
    }

    /// Index string of the first unimodular candidate for `target` that
    /// avoids the pairs in `forbid`.
    pub(crate) fn solve(&self, target: usize, v: &[u64], act: &[u64], k: usize, forbid: &[bool]) -> Option<Vec<usize>> {
        let mut rows = [0u64; MAX_K];
        let sn = v.len();
        for idx in 0..self.count(target) {
            let us = &self.us[target][idx * k..(idx + 1) * k];
            if us.windows(2).any(|w| forbid[w[0] as usize * sn + w[1] as usize]) {
                continue;
            }
            let suf = &self.suffix[target][idx * k..(idx + 1) * k];
            for w in 0..k {
                rows[w] = act[(suf[w] as usize) << k | v[us[w] as usize] as usize];
            }
            if bitrows_unimodular(&rows[..k]) {
                return Some(self.string(target, idx));
            }
        }
        None
    }
}

/// Solutions for every element of `K` under one spec.
#[derive(Clone, Debug)]
pub struct SolutionCertificate {
    pub spec: GeneratorSpec,
    /// Canonical text of `K`, when known.
    pub group_spec: Option<GroupSpec>,
    /// Indexed by element of `K`.
    pub solutions: Vec<ElementSolution>,
}

impl SolutionCertificate {
    pub fn ratio(&self) -> Ratio {
        ratio(self.spec.group().order(), self.spec.set_size(), self.spec.k)
    }
}

/// Solve every element; undirected specs solve one of each `{g, g⁻¹}` and
/// derive the other by inverting the product.
pub fn build_certificate(spec: &GeneratorSpec, group_spec: Option<GroupSpec>) -> Result<SolutionCertificate, EngineError> {
    spec.check_structure()?;
    spec.check_coverage()?;
    let g = spec.group();
    let forbid = spec.forbidden_pairs();
    let table = StringTable::new(g, &spec.s, spec.k, &forbid);
    let act = spec.mask_action();
    let n = g.order();
    let mut found: Vec<Option<Vec<usize>>> = vec![None; n];
    for e in 0..n {
        if found[e].is_some() {
            continue;
        }
        let inv = g.inv(e);
        if !spec.directed && inv < e {
            // derived from the representative
            let u = spec.inverse_string(found[inv].as_ref().expect("representative solved"));
            found[e] = u;
            if found[e].is_some() && bitrows_unimodular(&spec.mapping_rows(found[e].as_ref().unwrap())) {
                continue;
            }
        }
        match table.solve(e, &spec.v, &act, spec.k, &forbid) {
            Some(u) => found[e] = Some(u),
            None => {
                return Err(EngineError::Uncovered {
                    element: e,
                    label: g.label(e),
                })
            }
        }
    }
    let solutions = found
        .into_iter()
        .enumerate()
        .map(|(e, u)| solution_for(spec, e, u.expect("all solved")))
        .collect::<Result<_, _>>()?;
    Ok(SolutionCertificate {
        spec: spec.clone(),
        group_spec,
        solutions,
    })
}

/// Symbolic checks only: every element present, every string valid with the
/// right value, and every stored inverse exactly inverting its matrix.
pub fn check_solutions(cert: &SolutionCertificate) -> Result<(), EngineError> {
    let spec = &cert.spec;
    spec.check_structure()?;
    let g = spec.group();
    let fail = |e: usize, detail: String| EngineError::Verification {
        label: g.label(e),
        detail,
    };
    if cert.solutions.len() != g.order() {
        return Err(EngineError::InvalidSpec(format!(
            "{} solutions for a group of order {}",
            cert.solutions.len(),
            g.order()
        )));
    }
    for (e, sol) in cert.solutions.iter().enumerate() {
        if sol.element != e {
            return Err(fail(e, format!("solution lists element {}", sol.element)));
        }
        if sol.u.len() != spec.k || sol.u.iter().any(|&i| i >= spec.s.len()) {
            return Err(fail(e, "string has the wrong length or letters".into()));
        }
        if !spec.adjacent_ok(&sol.u) {
            return Err(fail(e, "string has an adjacent inverse pair".into()));
        }
        if spec.string_value(&sol.u) != e {
            return Err(fail(e, "string value differs from the element".into()));
        }
        let m = crate::intmat::bit_matrix(&spec.mapping_rows(&sol.u));
        if sol.m_inverse.size() != spec.k || m.mul(&sol.m_inverse) != IntMatrix::identity(spec.k) {
            return Err(fail(e, "stored M⁻¹ does not invert the mapping matrix".into()));
        }
    }
    Ok(())
}

/// Expand one solution at `x` (coordinates mod `m`) inside `G` and return the product.
pub fn replay(spec: &GeneratorSpec, g: &SemidirectGroup, sol: &ElementSolution, x: &[usize]) -> usize {
    let m = g.modulus() as i64;
    let xi: Vec<i64> = x.iter().map(|&v| v as i64).collect();
    let y = sol.m_inverse.left_mul_mod(&xi, m);
    sol.u
        .iter()
        .zip(&y)
        .fold(0, |acc, (&i, &yw)| g.mul(acc, spec.generator(g, i, yw as usize)))
}

/// The generating set `X = {(vᵢ(x); sᵢ) : i, x ∈ Z_m}` in spec order.
pub fn instantiate(spec: &GeneratorSpec, m: usize) -> Result<CayleyGraph<SemidirectGroup>, EngineError> {
    let g = build_semidirect(m, &spec.hom)?;
    let genset = (0..spec.s.len())
        .flat_map(|i| (0..m).map(move |x| (i, x)))
        .map(|(i, x)| spec.generator(&g, i, x))
        .collect();
    Ok(CayleyGraph::new(g, genset, spec.directed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Skip the BFS (symbolic and replay checks only).
    pub skip_bfs: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 100,
            seed: 0x5eed,
            skip_bfs: false,
        }
    }
}

/// End-to-end check at modulus `m`: symbolic checks, sampled replay, sizes
/// and inverse-closure of `X`, and a BFS showing diameter at most `k`.
pub fn verify_certificate(cert: &SolutionCertificate, m: usize, opts: &VerifyOptions) -> Result<DiameterReport, EngineError> {
    check_solutions(cert)?;
    let spec = &cert.spec;
    let graph = instantiate(spec, m)?;
    let g = &graph.group;
    let n = spec.group().order();
    let expected = (m as u128).pow(spec.k as u32) * n as u128;
    if g.order() as u128 != expected {
        return Err(EngineError::InvalidSpec(format!("|G| = {} but mᵏn = {expected}", g.order())));
    }
    let validation = graph.validate();
    if !validation.is_valid() {
        return Err(EngineError::Verification {
            label: "X".into(),
            detail: validation.to_string(),
        });
    }
    if graph.degree() != spec.s.len() * m {
        return Err(EngineError::InvalidSpec(format!("|X| = {} but sm = {}", graph.degree(), spec.s.len() * m)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for sol in &cert.solutions {
        for _ in 0..opts.samples {
            let x: Vec<usize> = (0..spec.k).map(|_| rng.gen_range(0..m)).collect();
            let got = replay(spec, g, sol, &x);
            let want = g.encode(&x, sol.element);
            if got != want {
                return Err(EngineError::Verification {
                    label: spec.group().label(sol.element),
                    detail: format!("replay at x = {x:?} gives {} instead of {}", g.label(got), g.label(want)),
                });
            }
        }
    }
    if opts.skip_bfs {
        return Ok(DiameterReport {
            order: g.order(),
            degree: graph.degree(),
            diameter: spec.k,
            histogram: Vec::new(),
        });
    }
    let report = graph.diameter()?;
    if report.diameter > spec.k {
        return Err(EngineError::Verification {
            label: "G".into(),
            detail: format!("BFS diameter {} exceeds k = {}", report.diameter, spec.k),
        });
    }
    Ok(report)
}
