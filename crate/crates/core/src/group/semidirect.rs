//! `Z_m^k ⋊_φ K` with `K` acting by coordinate permutations.
//!
//! Elements are pairs `(x; y)` encoded as `y + |K|·code(x)`, where `code`
//! reads `x` as base-`m` digits (coordinate 0 least significant). The law is
//! `(x₁; y₁)(x₂; y₂) = (x₁^{φ(y₂)} + x₂; y₁y₂)`.

use std::sync::Arc;

use super::{FiniteGroup, Group, GroupError, GroupHom};

#[derive(Clone, Debug)]
pub struct SemidirectGroup {
    modulus: usize,
    arity: usize,
    acting: Arc<FiniteGroup>,
    hom: GroupHom,
    order: usize,
    /// `m^j` for each coordinate j.
    place: Vec<usize>,
}

pub fn build_semidirect(modulus: usize, hom: &GroupHom) -> Result<SemidirectGroup, GroupError> {
    if modulus < 2 {
        return Err(GroupError::ModulusTooSmall(modulus));
    }
    let k = hom.arity();
    let base = (modulus as u128).pow(k as u32) * hom.source().order() as u128;
    if base > usize::MAX as u128 / 4 {
        return Err(GroupError::TooLarge(usize::MAX));
    }
    Ok(SemidirectGroup {
        modulus,
        arity: k,
        acting: hom.source().clone(),
        hom: hom.clone(),
        order: base as usize,
        place: (0..k).map(|j| modulus.pow(j as u32)).collect(),
    })
}

impl SemidirectGroup {
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn acting(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn encode(&self, x: &[usize], y: usize) -> usize {
        debug_assert_eq!(x.len(), self.arity);
        let code: usize = x
            .iter()
            .zip(&self.place)
            .map(|(&d, &p)| (d % self.modulus) * p)
            .sum();
        y + self.acting.order() * code
    }

    pub fn decode(&self, e: usize) -> (Vec<usize>, usize) {
        let n = self.acting.order();
        let (mut code, y) = (e / n, e % n);
        let x = (0..self.arity)
            .map(|_| {
                let d = code % self.modulus;
                code /= self.modulus;
                d
            })
            .collect();
        (x, y)
    }
}

impl Group for SemidirectGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.acting.order();
        let m = self.modulus;
        let (mut ca, ya) = (a / n, a % n);
        let (mut cb, yb) = (b / n, b % n);
        let perm = self.hom.image(yb);
        let mut code = 0;
        let mut moved = [0usize; 128];
        let moved = &mut moved[..self.arity];
        for j in 0..self.arity {
            moved[perm.image(j)] = ca % m;
            ca /= m;
        }
        for (j, &v) in moved.iter().enumerate() {
            let d = (v + cb % m) % m;
            cb /= m;
            code += d * self.place[j];
        }
        self.acting.mul(ya, yb) + n * code
    }

    fn inv(&self, a: usize) -> usize {
        // (x; y)⁻¹ = (−x^{φ(y)⁻¹}; y⁻¹)
        let (x, y) = self.decode(a);
        let moved = self.hom.image(y).inverse().apply(&x);
        let neg: Vec<usize> = moved.iter().map(|&d| (self.modulus - d) % self.modulus).collect();
        self.encode(&neg, self.acting.inv(y))
    }

    fn label(&self, a: usize) -> String {
        let (x, y) = self.decode(a);
        let xs: Vec<String> = x.iter().map(|d| d.to_string()).collect();
        format!("({};{})", xs.join(","), self.acting.label(y))
    }
}
