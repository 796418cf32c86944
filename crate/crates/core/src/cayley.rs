//! Cayley graphs over index-based groups: validation, exact diameter by
//! breadth-first search, degree padding, the Moore bound and `n/sᵏ` ratios.

use std::fmt;
use std::io::{self, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Group;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("generating set is invalid: {0}")]
    InvalidGenset(String),
    #[error("graph is not strongly connected: {reached} of {order} elements reached")]
    NotStronglyConnected { reached: usize, order: usize },
    #[error("no involution available outside the generating set")]
    NoInvolutionAvailable,
    #[error("not enough elements outside the generating set to reach degree {0}")]
    NotEnoughElements(usize),
    #[error("target degree {target} is below the current degree {current}")]
    TargetBelowDegree { target: usize, current: usize },
    #[error("degree {degree} is below the minimum {minimum}")]
    DegreeBelowMinimum { degree: usize, minimum: usize },
}

/// `Cay(G, S)`: arcs `g → gs` for every `s` in the generating set.
#[derive(Clone, Debug)]
pub struct CayleyGraph<G> {
    pub group: G,
    pub genset: Vec<usize>,
    pub directed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub contains_identity: bool,
    pub duplicates: Vec<usize>,
    /// Generators whose inverse is missing (undirected graphs only).
    pub missing_inverses: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.contains_identity && self.duplicates.is_empty() && self.missing_inverses.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let mut parts = Vec::new();
        if self.contains_identity {
            parts.push("contains the identity".to_string());
        }
        if !self.duplicates.is_empty() {
            parts.push(format!("duplicates {:?}", self.duplicates));
        }
        if !self.missing_inverses.is_empty() {
            parts.push(format!("missing inverses of {:?}", self.missing_inverses));
        }
        f.write_str(&parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub order: usize,
    pub degree: usize,
    pub diameter: usize,
    /// `histogram[d]` = number of elements at distance `d` from the identity.
    pub histogram: Vec<usize>,
}

impl<G: Group> CayleyGraph<G> {
    pub fn new(group: G, genset: Vec<usize>, directed: bool) -> Self {
        CayleyGraph { group, genset, directed }
    }

    pub fn degree(&self) -> usize {
        self.genset.len()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_genset(&self.group, &self.genset, self.directed)
    }

    pub fn diameter(&self) -> Result<DiameterReport, CayleyError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(CayleyError::InvalidGenset(report.to_string()));
        }
        let dist = self.distances();
        let mut histogram = Vec::new();
        let mut reached = 0;
        for &d in &dist {
            if d == u16::MAX {
                continue;
            }
            reached += 1;
            let d = d as usize;
            if histogram.len() <= d {
                histogram.resize(d + 1, 0);
            }
            histogram[d] += 1;
        }
        if reached != self.order() {
            return Err(CayleyError::NotStronglyConnected {
                reached,
                order: self.order(),
            });
        }
        Ok(DiameterReport {
            order: self.order(),
            degree: self.degree(),
            diameter: histogram.len() - 1,
            histogram,
        })
    }

    /// Out-distance from the identity to every element (`u16::MAX` if unreachable).
    /// By vertex-transitivity this row determines the diameter.
    pub fn distances(&self) -> Vec<u16> {
        let n = self.order();
        let mut dist = vec![u16::MAX; n];
        let id = self.group.identity();
        dist[id] = 0;
        let mut frontier = vec![id];
        let mut level = 0u16;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &g in &frontier {
                for &s in &self.genset {
                    let h = self.group.mul(g, s);
                    if dist[h] == u16::MAX {
                        dist[h] = level;
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Enlarge the generating set to exactly `target` elements.
    ///
    /// Undirected graphs get the smallest-index involution first when the
    /// shortfall is odd, then smallest-index inverse pairs; directed graphs
    /// get the smallest-index elements not already present.
    pub fn pad(&self, target: usize) -> Result<CayleyGraph<G>, CayleyError>
    where
        G: Clone,
    {
        let current = self.degree();
        if target < current {
            return Err(CayleyError::TargetBelowDegree { target, current });
        }
        let n = self.order();
        let mut member = vec![false; n];
        member[self.group.identity()] = true;
        for &s in &self.genset {
            member[s] = true;
        }
        let mut genset = self.genset.clone();
        let mut need = target - current;
        if self.directed {
            for g in 0..n {
                if need == 0 {
                    break;
                }
                if !member[g] {
                    member[g] = true;
                    genset.push(g);
                    need -= 1;
                }
            }
        } else {
            if need % 2 == 1 {
                let inv = (0..n)
                    .find(|&g| !member[g] && self.group.inv(g) == g)
                    .ok_or(CayleyError::NoInvolutionAvailable)?;
                member[inv] = true;
                genset.push(inv);
                need -= 1;
            }
            for g in 0..n {
                if need == 0 {
                    break;
                }
                let gi = self.group.inv(g);
                if !member[g] && !member[gi] && gi != g {
                    member[g] = true;
                    member[gi] = true;
                    genset.extend([g, gi]);
                    need -= 2;
                }
            }
            // fall back to pairs of involutions
            for g in 0..n {
                if need == 0 {
                    break;
                }
                if !member[g] && self.group.inv(g) == g {
                    member[g] = true;
                    genset.push(g);
                    need -= 1;
                }
            }
        }
        if need > 0 {
            return Err(CayleyError::NotEnoughElements(target));
        }
        Ok(CayleyGraph {
            group: self.group.clone(),
            genset,
            directed: self.directed,
        })
    }

    /// Edge list: header `# order degree directed`, then one `u v` line per
    /// arc (undirected edges once, with `u < v`).
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# {} {} {}", self.order(), self.degree(), self.directed)?;
        for u in 0..self.order() {
            for &s in &self.genset {
                let v = self.group.mul(u, s);
                if self.directed || u < v {
                    writeln!(out, "{u} {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// Report identity membership, duplicates and (for undirected graphs)
/// missing inverses.
pub fn validate_genset<G: Group + ?Sized>(group: &G, genset: &[usize], directed: bool) -> ValidationReport {
    let mut sorted = genset.to_vec();
    sorted.sort_unstable();
    let mut duplicates: Vec<usize> = sorted.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    duplicates.dedup();
    let missing_inverses = if directed {
        Vec::new()
    } else {
        genset
            .iter()
            .copied()
            .filter(|&s| sorted.binary_search(&group.inv(s)).is_err())
            .collect()
    };
    ValidationReport {
        contains_identity: genset.contains(&group.identity()),
        duplicates,
        missing_inverses,
    }
}

/// `1 + d((d−1)ᵏ − 1)/(d − 2)` undirected, `(d^{k+1} − 1)/(d − 1)` directed.
pub fn moore_bound(degree: usize, diameter: usize, directed: bool) -> Result<BigUint, CayleyError> {
    let minimum = if directed { 2 } else { 3 };
    if degree < minimum {
        return Err(CayleyError::DegreeBelowMinimum { degree, minimum });
    }
    let d = BigUint::from(degree);
    let one = BigUint::from(1u32);
    Ok(if directed {
        (d.pow(diameter as u32 + 1) - &one) / (&d - &one)
    } else {
        let dm1 = BigUint::from(degree - 1);
        &one + &d * (dm1.pow(diameter as u32) - &one) / BigUint::from(degree - 2)
    })
}

/// The exact ratio `n/sᵏ` with its five-place decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
    #[serde(skip)]
    pub set_size: usize,
    #[serde(skip)]
    pub diameter: usize,
}

impl Ratio {
    pub fn new(order: usize, set_size: usize, diameter: usize) -> Self {
        Ratio {
            num: order as u64,
            den: (set_size as u64).pow(diameter as u32),
            set_size,
            diameter,
        }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Five decimal places, truncated (the convention of the published tables).
    pub fn decimal(&self) -> String {
        let scaled = self.num as u128 * 100_000 / self.den as u128;
        format!("{}.{:05}", scaled / 100_000, scaled % 100_000)
    }

    /// `60/5⁴ ≈ 0.09600`, or `48/4³ = 0.75000` when two decimals are exact.
    pub fn render(&self) -> String {
        let exact = (self.num as u128 * 100) % self.den as u128 == 0;
        format!(
            "{}/{}{} {} {}",
            self.num,
            self.set_size,
            crate::group::superscript(self.diameter),
            if exact { "=" } else { "≈" },
            self.decimal()
        )
    }

    /// Compare by value without rounding.
    pub fn cmp_value(&self, other: &Ratio) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

pub fn ratio(order: usize, set_size: usize, diameter: usize) -> Ratio {
    Ratio::new(order, set_size, diameter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, FiniteGroup, GroupSpec};

    fn zn(n: usize) -> FiniteGroup {
        build_group(&GroupSpec::Cyclic(n)).unwrap()
    }

    #[test]
    fn validation_examples() {
        let g = zn(6);
        assert!(validate_genset(&g, &[1, 5], false).is_valid());
        let r = validate_genset(&g, &[1], false);
        assert_eq!(r.missing_inverses, vec![1]);
        let r = validate_genset(&g, &[0, 1, 5], false);
        assert!(r.contains_identity);
        let r = validate_genset(&g, &[1, 1, 5], false);
        assert_eq!(r.duplicates, vec![1]);
        assert!(validate_genset(&g, &[1], true).is_valid());
    }

    #[test]
    fn small_diameters() {
        let g = zn(5);
        assert_eq!(CayleyGraph::new(&g, vec![1, 4], false).diameter().unwrap().diameter, 2);
        let r = CayleyGraph::new(&g, vec![1], true).diameter().unwrap();
        assert_eq!(r.diameter, 4);
        assert_eq!(r.histogram, vec![1, 1, 1, 1, 1]);
        let g4 = zn(4);
        assert_eq!(CayleyGraph::new(&g4, vec![1, 2, 3], false).diameter().unwrap().diameter, 1);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = zn(6);
        let err = CayleyGraph::new(&g, vec![2, 4], false).diameter().unwrap_err();
        assert_eq!(err, CayleyError::NotStronglyConnected { reached: 3, order: 6 });
    }

    #[test]
    fn moore_examples() {
        assert_eq!(moore_bound(3, 2, false).unwrap(), BigUint::from(10u32));
        assert_eq!(moore_bound(2, 3, true).unwrap(), BigUint::from(15u32));
        assert_eq!(moore_bound(3, 1, false).unwrap(), BigUint::from(4u32));
        assert!(moore_bound(2, 3, false).is_err());
        assert!(moore_bound(1, 3, true).is_err());
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio(36, 4, 6).decimal(), "0.00878");
        assert_eq!(ratio(120, 3, 5).decimal(), "0.49382");
        assert_eq!(ratio(60, 5, 4).render(), "60/5⁴ ≈ 0.09600");
        assert_eq!(ratio(48, 4, 3).render(), "48/4³ = 0.75000");
        assert_eq!(ratio(12, 4, 3).render(), "12/4³ ≈ 0.18750");
    }

    #[test]
    fn padding_to_current_degree_is_identity() {
        let g = zn(10);
        let c = CayleyGraph::new(&g, vec![1, 9], false);
        assert_eq!(c.pad(2).unwrap().genset, vec![1, 9]);
        let p = c.pad(3).unwrap();
        assert_eq!(p.genset, vec![1, 9, 5]);
        let p = c.pad(4).unwrap();
        assert_eq!(p.genset, vec![1, 9, 2, 8]);
        assert!(p.validate().is_valid());
        assert!(c.pad(1).is_err());
    }

    #[test]
    fn odd_padding_needs_an_involution() {
        let g = zn(7);
        let c = CayleyGraph::new(&g, vec![1, 6], false);
        assert_eq!(c.pad(3).unwrap_err(), CayleyError::NoInvolutionAvailable);
        assert_eq!(c.pad(6).unwrap().degree(), 6);
        assert_eq!(c.pad(8).unwrap_err(), CayleyError::NotEnoughElements(8));
    }

    #[test]
    fn edge_list_format() {
        let g = zn(4);
        let mut buf = Vec::new();
        CayleyGraph::new(&g, vec![1, 3], false).write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# 4 2 false\n0 1\n0 3\n1 2\n2 3\n");
    }
}
