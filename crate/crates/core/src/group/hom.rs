//! Homomorphisms from a finite group into the coordinate permutations of `H^k`.

use std::collections::HashSet;
use std::sync::Arc;

use super::{CoordPermutation, FiniteGroup, Group, GroupError};

/// `φ: K → Sym(k)` under the right-action convention:
/// `φ(ab) = φ(a).then(φ(b))`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    arity: usize,
    images: Vec<CoordPermutation>,
}

impl GroupHom {
    /// Extend images of `gens` to all of `K`, checking the homomorphism law
    /// along every edge of the Cayley graph of `K`.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        arity: usize,
        gens: &[usize],
        images: &[CoordPermutation],
    ) -> Result<Self, GroupError> {
        if gens.len() != images.len() || images.iter().any(|p| p.arity() != arity) {
            return Err(GroupError::NotAHomomorphism("generator/image mismatch".into()));
        }
        let map = extend(&source, arity, gens, images)
            .ok_or_else(|| GroupError::NotAHomomorphism("relations not preserved".into()))?;
        if map.iter().any(Option::is_none) {
            return Err(GroupError::NotAHomomorphism("generators do not generate K".into()));
        }
        Ok(GroupHom {
            source,
            arity,
            images: map.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// The trivial homomorphism.
    pub fn trivial(source: Arc<FiniteGroup>, arity: usize) -> Self {
        let images = vec![CoordPermutation::identity(arity); source.order()];
        GroupHom { source, arity, images }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn image(&self, a: usize) -> &CoordPermutation {
        &self.images[a]
    }

    pub fn images(&self) -> &[CoordPermutation] {
        &self.images
    }

    /// Images of the source group's catalog generators.
    pub fn generator_images(&self) -> Vec<CoordPermutation> {
        self.source
            .generators()
            .iter()
            .map(|&g| self.images[g].clone())
            .collect()
    }

    /// Exhaustive check of `φ(ab) = φ(a) then φ(b)` on all pairs.
    pub fn verify(&self) -> Result<(), GroupError> {
        let k = &self.source;
        if !self.images[0].is_identity() {
            return Err(GroupError::NotAHomomorphism("identity not fixed".into()));
        }
        for a in 0..k.order() {
            for b in 0..k.order() {
                if self.images[k.mul(a, b)] != self.images[a].then(&self.images[b]) {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "fails on ({}, {})",
                        k.label(a),
                        k.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coordinates moved by some element of the image: true iff no
    /// coordinate is fixed by every permutation.
    pub fn has_no_common_fixed_point(&self) -> bool {
        (0..self.arity).all(|j| self.images.iter().any(|p| !p.fixes(j)))
    }

    /// `c ∘ φ` with `c` conjugation by `sigma`.
    pub fn conjugate_by(&self, sigma: &CoordPermutation) -> GroupHom {
        GroupHom {
            source: self.source.clone(),
            arity: self.arity,
            images: self.images.iter().map(|p| p.conjugate_by(sigma)).collect(),
        }
    }

    pub fn is_conjugate_to(&self, other: &GroupHom) -> bool {
        if self.arity != other.arity || self.images.len() != other.images.len() {
            return false;
        }
        CoordPermutation::all(self.arity)
            .iter()
            .any(|s| self.conjugate_by(s).images == other.images)
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.images == other.images
    }
}

/// Breadth-first extension of generator images; `None` on a conflict.
/// Elements outside the generated subgroup stay unassigned.
fn extend(
    k: &FiniteGroup,
    arity: usize,
    gens: &[usize],
    images: &[CoordPermutation],
) -> Option<Vec<Option<CoordPermutation>>> {
    let mut map: Vec<Option<CoordPermutation>> = vec![None; k.order()];
    map[0] = Some(CoordPermutation::identity(arity));
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        let ph = map[h].clone().unwrap();
        for (&g, pg) in gens.iter().zip(images) {
            let x = k.mul(h, g);
            let px = ph.then(pg);
            match &map[x] {
                Some(existing) if *existing != px => return None,
                Some(_) => {}
                None => {
                    map[x] = Some(px);
                    queue.push(x);
                }
            }
        }
    }
    Some(map)
}

/// All homomorphisms `K → Sym(k)` whose image has no common fixed point,
/// one per conjugacy class under `Sym(k)`.
///
/// Representatives are the lexicographically least member of their class
/// (comparing image arrays along `K`'s small generating set); the list is
/// sorted by representative.
pub fn enumerate_homs(k_group: &Arc<FiniteGroup>, arity: usize) -> Result<Vec<GroupHom>, GroupError> {
    if !(2..=9).contains(&arity) {
        return Err(GroupError::ArityOutOfRange(arity));
    }
    let gens = k_group.small_generating_set();
    let all = CoordPermutation::all(arity);
    let candidates: Vec<Vec<&CoordPermutation>> = gens
        .iter()
        .map(|&g| {
            let order = k_group.element_order(g);
            all.iter().filter(|p| order % p.order() == 0).collect()
        })
        .collect();

    let mut found: Vec<Vec<CoordPermutation>> = Vec::new();
    let mut chosen: Vec<CoordPermutation> = Vec::new();
    dfs(k_group, arity, &gens, &candidates, &mut chosen, &mut found);

    let mut seen: HashSet<Vec<CoordPermutation>> = HashSet::new();
    let mut reps: Vec<Vec<CoordPermutation>> = Vec::new();
    for imgs in found {
        if seen.contains(&imgs) {
            continue;
        }
        let mut least = imgs.clone();
        for sigma in &all {
            let conj: Vec<CoordPermutation> = imgs.iter().map(|p| p.conjugate_by(sigma)).collect();
            if conj < least {
                least = conj.clone();
            }
            seen.insert(conj);
        }
        reps.push(least);
    }
    reps.sort();

    reps.into_iter()
        .map(|imgs| GroupHom::from_generator_images(k_group.clone(), arity, &gens, &imgs))
        .filter(|h| h.as_ref().map_or(true, |h| h.has_no_common_fixed_point()))
        .collect()
}

fn dfs(
    k: &FiniteGroup,
    arity: usize,
    gens: &[usize],
    candidates: &[Vec<&CoordPermutation>],
    chosen: &mut Vec<CoordPermutation>,
    found: &mut Vec<Vec<CoordPermutation>>,
) {
    let depth = chosen.len();
    if depth == gens.len() {
        found.push(chosen.clone());
        return;
    }
    for &p in &candidates[depth] {
        chosen.push(p.clone());
        if extend(k, arity, &gens[..=depth], chosen).is_some() {
            dfs(k, arity, gens, candidates, chosen, found);
        }
        chosen.pop();
    }
}
