//! Exhaustive search over `(K, φ, S, V)`.
//!
//! Iteration order: groups by catalog, homomorphisms by canonical
//! representative, `S` by element index, `V` by mask value. Candidate `S`
//! lists are solved in parallel and the first success in that order wins,
//! so the result does not depend on the number of threads.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::{
    build_certificate, element_pairs, forbidden_pairs, mask_action, pairing_of, AdjacencyRule, EngineError, GeneratorSpec,
    SolutionCertificate, StringTable,
};
use crate::group::{build_group, catalog_of_order, enumerate_homs, FiniteGroup, Group, GroupHom, GroupSpec};
use crate::intmat::{gf2_rank, rational_rank};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// Every catalog group of this order.
    Order(usize),
    Group(GroupSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    pub s: usize,
    pub directed: bool,
    pub budget_groups: usize,
    pub budget_homs: usize,
    /// Raw `S` candidates examined per group (before the coverage filter).
    pub budget_sets: usize,
    /// `V` families examined per `(φ, S)` pair.
    pub budget_vectors: usize,
    pub adjacency: AdjacencyRule,
}

impl SearchConfig {
    pub fn new(k: usize, s: usize, directed: bool) -> Self {
        SearchConfig {
            k,
            s,
            directed,
            budget_groups: usize::MAX,
            budget_homs: usize::MAX,
            budget_sets: 10_000_000,
            budget_vectors: usize::MAX,
            adjacency: AdjacencyRule::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub groups: usize,
    pub homs: usize,
    pub sets: usize,
    pub vector_families: usize,
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: SolutionCertificate,
    pub stats: SearchStats,
}

/// Whether the `t_{j+1} ≠ t_j⁻¹` restriction can be applied before `V` is
/// known: always for [`AdjacencyRule::Elements`], and for
/// [`AdjacencyRule::Generators`] when undirected (the pairing makes the two
/// rules coincide).
fn element_rule_applies(rule: AdjacencyRule, directed: bool) -> bool {
    match rule {
        AdjacencyRule::Elements => true,
        AdjacencyRule::Generators => !directed,
        AdjacencyRule::Off => false,
    }
}

/// Coverage-passing `S` lists, in lexicographic order.
///
/// Directed lists are increasing; undirected lists are unions of classes
/// `{g}` (involutions) and `{g, g⁻¹}`, written `g, g⁻¹` with `g < g⁻¹`,
/// classes ordered by least element. The bool is true when the budget cut
/// the enumeration short.
pub fn enumerate_s(
    g: &FiniteGroup,
    s: usize,
    k: usize,
    directed: bool,
    adjacency: bool,
    budget: usize,
) -> (Vec<Vec<usize>>, bool) {
    let n = g.order();
    let classes: Vec<Vec<usize>> = if directed {
        (1..n).map(|x| vec![x]).collect()
    } else {
        (1..n)
            .filter(|&x| x <= g.inv(x))
            .map(|x| if g.inv(x) == x { vec![x] } else { vec![x, g.inv(x)] })
            .collect()
    };
    let mut out = Vec::new();
    let mut examined = 0usize;
    let mut truncated = false;
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        classes: &[Vec<usize>],
        start: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if need == 0 {
            return visit(chosen);
        }
        for c in start..classes.len() {
            if classes[c].len() > need {
                continue;
            }
            chosen.extend(&classes[c]);
            let go_on = rec(classes, c + 1, need - classes[c].len(), chosen, visit);
            chosen.truncate(chosen.len() - classes[c].len());
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut visit = |list: &[usize]| {
        if examined >= budget {
            truncated = true;
            return false;
        }
        examined += 1;
        if super::first_uncovered(g, list, k, &element_pairs(g, list, adjacency)).is_none() {
            out.push(list.to_vec());
        }
        true
    };
    rec(&classes, 0, s, &mut chosen, &mut visit);
    (out, truncated)
}

/// Per-index choice structure for `V` under a given `(φ, S)`.
struct VSkeleton {
    /// Indices whose vector is chosen freely (`i ≤ ι(i)` when undirected).
    free: Vec<usize>,
    /// Allowed masks per free index.
    options: Vec<Vec<u64>>,
    /// `(j, i, perm)`: `v_j` is `v_i` moved by `perm` (`φ(s_i)⁻¹`).
    derived: Vec<(usize, usize, crate::group::CoordPermutation)>,
    s_len: usize,
}

impl VSkeleton {
    fn new(hom: &GroupHom, s: &[usize], k: usize, directed: bool) -> Option<Self> {
        let full: Vec<u64> = (1..1u64 << k).collect();
        if directed {
            return Some(VSkeleton {
                free: (0..s.len()).collect(),
                options: vec![full; s.len()],
                derived: Vec::new(),
                s_len: s.len(),
            });
        }
        let pairing = pairing_of(hom.source(), s)?;
        let mut free = Vec::new();
        let mut options = Vec::new();
        let mut derived = Vec::new();
        for (i, &j) in pairing.iter().enumerate() {
            let back = hom.image(s[i]).inverse();
            if i == j {
                free.push(i);
                options.push(full.iter().copied().filter(|&m| back.apply_mask(m) == m).collect());
            } else if i < j {
                free.push(i);
                options.push(full.clone());
                derived.push((j, i, back));
            }
        }
        Some(VSkeleton {
            free,
            options,
            derived,
            s_len: s.len(),
        })
    }

    /// Visit families in lexicographic order of the free masks until `f`
    /// returns false. Returns false if stopped early.
    fn for_each(&self, mut f: impl FnMut(&[u64]) -> bool) -> bool {
        if self.options.iter().any(Vec::is_empty) {
            return true;
        }
        let mut idx = vec![0usize; self.free.len()];
        let mut v = vec![0u64; self.s_len];
        loop {
            for (slot, &i) in self.free.iter().enumerate() {
                v[i] = self.options[slot][idx[slot]];
            }
            for (j, i, p) in &self.derived {
                v[*j] = p.apply_mask(v[*i]);
            }
            if !f(&v) {
                return false;
            }
            // odometer, last slot fastest
            let mut slot = self.free.len();
            loop {
                if slot == 0 {
                    return true;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < self.options[slot].len() {
                    break;
                }
                idx[slot] = 0;
            }
        }
    }
}

fn orbit_rows(act: &[u64], n: usize, k: usize, v: &[u64]) -> Vec<u64> {
    let mut rows: Vec<u64> = v
        .iter()
        .flat_map(|&m| (0..n).map(move |g| act[g << k | m as usize]))
        .collect();
    rows.sort_unstable();
    rows.dedup();
    rows
}

fn as_int_rows(rows: &[u64], k: usize) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|&r| (0..k).map(|j| (r >> j & 1) as i64).collect())
        .collect()
}

/// All `V` families for `(φ, S)` whose `φ(K)`-orbits span `Qᵏ`, honouring
/// the pairing constraint when undirected.
pub fn enumerate_v(hom: &GroupHom, s: &[usize], k: usize, directed: bool) -> Vec<Vec<u64>> {
    let Some(skel) = VSkeleton::new(hom, s, k, directed) else {
        return Vec::new();
    };
    let act = mask_action(hom, k);
    let n = hom.source().order();
    let mut out = Vec::new();
    skel.for_each(|v| {
        if rational_rank(&as_int_rows(&orbit_rows(&act, n, k, v), k)) == k {
            out.push(v.to_vec());
        }
        true
    });
    out
}

/// Try every `V` for one `(φ, S)`; return the first family solving all of `K`.
fn solve_pair(
    hom: &GroupHom,
    s: &[usize],
    cfg: &SearchConfig,
    act: &[u64],
    families: &AtomicUsize,
    truncated: &AtomicBool,
) -> Option<Vec<u64>> {
    let g = hom.source();
    let n = g.order();
    let k = cfg.k;
    let skel = VSkeleton::new(hom, s, k, cfg.directed)?;
    let table = StringTable::new(g, s, k, &element_pairs(g, s, element_rule_applies(cfg.adjacency, cfg.directed)));
    // fewest candidate strings first, so hopeless families fail fast
    let mut targets: Vec<usize> = (0..n).filter(|&e| cfg.directed || e <= g.inv(e)).collect();
    targets.sort_by_key(|&e| (table.count(e), e));
    let mut seen = 0usize;
    let mut found = None;
    skel.for_each(|v| {
        if seen >= cfg.budget_vectors {
            truncated.store(true, Ordering::Relaxed);
            return false;
        }
        seen += 1;
        let rows = orbit_rows(act, n, k, v);
        // a unimodular M is invertible mod 2, so the orbits must span GF(2)ᵏ
        if gf2_rank(&rows) < k {
            return true;
        }
        let forbid = forbidden_pairs(hom, s, v, cfg.adjacency);
        if targets.iter().all(|&e| table.solve(e, v, act, k, &forbid).is_some()) {
            found = Some(v.to_vec());
            return false;
        }
        true
    });
    families.fetch_add(seen, Ordering::Relaxed);
    found
}

/// Search the given target for a certificate with parameters `(k, s)`.
pub fn search(target: &SearchTarget, cfg: &SearchConfig) -> Result<SearchOutcome, EngineError> {
    if cfg.k < 3 || cfg.k > 9 {
        return Err(EngineError::InvalidSpec(format!("k = {} outside 3..=9", cfg.k)));
    }
    if cfg.s == 0 {
        return Err(EngineError::InvalidSpec("s must be positive".into()));
    }
    let specs: Vec<GroupSpec> = match target {
        SearchTarget::Order(n) => catalog_of_order(*n).into_iter().map(|e| e.spec).collect(),
        SearchTarget::Group(spec) => vec![spec.clone()],
    };
    let mut stats = SearchStats::default();
    let families = AtomicUsize::new(0);
    let truncated = AtomicBool::new(false);
    if specs.len() > cfg.budget_groups {
        truncated.store(true, Ordering::Relaxed);
    }
    for spec in specs.iter().take(cfg.budget_groups) {
        let group = Arc::new(build_group(spec)?);
        stats.groups += 1;
        let mut homs = enumerate_homs(&group, cfg.k)?;
        if homs.len() > cfg.budget_homs {
            homs.truncate(cfg.budget_homs);
            truncated.store(true, Ordering::Relaxed);
        }
        let (sets, cut) = enumerate_s(
            &group,
            cfg.s,
            cfg.k,
            cfg.directed,
            element_rule_applies(cfg.adjacency, cfg.directed),
            cfg.budget_sets,
        );
        if cut {
            truncated.store(true, Ordering::Relaxed);
        }
        stats.sets += sets.len();
        for hom in &homs {
            stats.homs += 1;
            let act = mask_action(hom, cfg.k);
            let hit = sets
                .par_iter()
                .find_map_first(|s| solve_pair(hom, s, cfg, &act, &families, &truncated).map(|v| (s.clone(), v)));
            if let Some((s, v)) = hit {
                let mut gs = GeneratorSpec::new(cfg.k, cfg.directed, hom.clone(), s, v)?;
                gs.adjacency = cfg.adjacency;
                let certificate = build_certificate(&gs, Some(spec.clone()))?;
                stats.vector_families = families.load(Ordering::Relaxed);
                stats.truncated = truncated.load(Ordering::Relaxed);
                return Ok(SearchOutcome { certificate, stats });
            }
        }
    }
    if truncated.load(Ordering::Relaxed) {
        Err(EngineError::BudgetExceeded(format!(
            "no certificate within budgets after {} groups, {} homomorphisms, {} sets",
            stats.groups, stats.homs, stats.sets
        )))
    } else {
        Err(EngineError::NothingFound)
    }
}
