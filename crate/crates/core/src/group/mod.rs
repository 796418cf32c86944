//! Finite groups on index sets `0..n` (with `0` the identity), the group
//! catalog, coordinate-permutation homomorphisms and semidirect products.

mod hom;
mod perm;
mod semidirect;
mod spec;

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

pub use hom::{enumerate_homs, GroupHom};
pub use perm::CoordPermutation;
pub(crate) use perm::gcd;
pub use semidirect::{build_semidirect, SemidirectGroup};
pub use spec::{build_group, catalog, catalog_of_order, spec_name, CatalogEntry, GroupSpec};
pub(crate) use spec::superscript;

/// Largest group that [`FiniteGroup`] will tabulate.
pub const MAX_TABLE_ORDER: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("unsupported group spec: {0}")]
    UnsupportedSpec(String),
    #[error("cannot parse group spec: {0}")]
    Parse(String),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u8>),
    #[error("arity {0} out of range 2..=9")]
    ArityOutOfRange(usize),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(usize),
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("group of order {0} exceeds the table limit")]
    TooLarge(usize),
}

/// Index-based group arithmetic. Element `0` is always the identity.
pub trait Group: Sync {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    fn label(&self, a: usize) -> String {
        a.to_string()
    }

    /// Product of a sequence of elements, left to right.
    fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &g| self.mul(acc, g))
    }
}

impl<G: Group + ?Sized> Group for &G {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn label(&self, a: usize) -> String {
        (**self).label(a)
    }
}

impl<G: Group + ?Sized + Send> Group for std::sync::Arc<G> {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn label(&self, a: usize) -> String {
        (**self).label(a)
    }
}

/// An explicitly tabulated finite group.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<usize>,
    name: String,
}

impl FiniteGroup {
    /// Tabulate a group given by a multiplication closure on indices.
    ///
    /// `mul` must already be a group law with identity `0`; nothing is
    /// closed or re-indexed.
    pub fn from_law(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
        generators: Vec<usize>,
        name: impl Into<String>,
    ) -> Result<Self, GroupError> {
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut table = vec![0u32; order * order];
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                table[a * order + b] = c as u32;
                if c == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        if inverse.iter().any(|&i| i == u32::MAX) {
            return Err(GroupError::InvalidAction("element without inverse".into()));
        }
        Ok(FiniteGroup {
            order,
            table,
            inverse,
            labels,
            generators,
            name: name.into(),
        })
    }

    /// Close a set of generators under a multiplication on arbitrary values.
    ///
    /// Elements are indexed in breadth-first order from the identity, so
    /// generator words are shortlex-minimal.
    pub fn from_generators<E, M, L>(
        identity: E,
        gens: &[E],
        mul: M,
        label: L,
        name: impl Into<String>,
    ) -> Result<Self, GroupError>
    where
        E: Clone + Eq + Hash,
        M: Fn(&E, &E) -> E,
        L: Fn(&E) -> String,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<E, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            let e = elements[head].clone();
            for g in gens {
                let h = mul(&e, g);
                if !index.contains_key(&h) {
                    if elements.len() >= MAX_TABLE_ORDER {
                        return Err(GroupError::TooLarge(elements.len() + 1));
                    }
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            head += 1;
        }
        let labels = elements.iter().map(&label).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        FiniteGroup::from_law(
            elements.len(),
            |a, b| index[&mul(&elements[a], &elements[b])],
            labels,
            generators,
            name,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The constructor's natural generators; homomorphisms are recorded by
    /// their images on these.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn is_involution(&self, a: usize) -> bool {
        a != 0 && self.inv(a) == a
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = vec![0];
        while let Some(h) = queue.pop() {
            for &g in gens {
                let x = self.mul(h, g);
                if !member[x] {
                    member[x] = true;
                    queue.push(x);
                }
            }
        }
        member
    }

    /// A small generating set, chosen greedily by descending element order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        for a in by_order {
            if member.iter().all(|&m| m) {
                break;
            }
            if !member[a] {
                gens.push(a);
                member = self.generated_subgroup(&gens);
            }
        }
        gens
    }

    /// Exhaustive axiom check: associativity, identity, inverses and the
    /// Latin-square property. Returns a description of the first failure.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(format!("identity fails on {a}"));
            }
            let ai = self.inv(a);
            if self.mul(a, ai) != 0 || self.mul(ai, a) != 0 {
                return Err(format!("inverse fails on {a}"));
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.iter().chain(&col).any(|&x| !x) {
                return Err(format!("not a Latin square at {a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("associativity fails on ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Group for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

/// Tabulate any small [`Group`] (e.g. a semidirect product) for exhaustive checks.
pub fn tabulate<G: Group + ?Sized>(g: &G, name: &str) -> Result<FiniteGroup, GroupError> {
    let labels = (0..g.order()).map(|a| g.label(a)).collect();
    FiniteGroup::from_law(g.order(), |a, b| g.mul(a, b), labels, Vec::new(), name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::from_law(
            n,
            |a, b| (a + b) % n,
            (0..n).map(|i| i.to_string()).collect(),
            vec![1],
            format!("Z{n}"),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_law_and_orders() {
        let g = z(12);
        assert!(g.check_axioms().is_ok());
        assert_eq!(g.element_order(4), 3);
        assert_eq!(g.inv(5), 7);
        assert_eq!(g.small_generating_set(), vec![1]);
    }

    #[test]
    fn closure_indexes_breadth_first() {
        let g = FiniteGroup::from_generators(0u32, &[1], |a, b| (a + b) % 5, |a| a.to_string(), "Z5")
            .unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.labels(), &["0", "1", "2", "3", "4"]);
    }

    #[test]
    fn broken_law_is_reported() {
        // subtraction is not associative
        let g = FiniteGroup::from_law(
            3,
            |a, b| (a + 3 - b) % 3,
            vec!["0".into(), "1".into(), "2".into()],
            vec![],
            "bad",
        )
        .unwrap();
        assert!(g.check_axioms().is_err());
    }
}
