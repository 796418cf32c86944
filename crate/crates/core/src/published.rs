//! Parameters of the best published semidirect constructions.

use crate::cayley::{ratio, Ratio};
use crate::group::{spec_name, GroupSpec};

/// One table row: diameter `k`, set size `s`, and the acting group `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishedRow {
    pub directed: bool,
    pub k: usize,
    pub s: usize,
    pub order: usize,
    pub group: GroupSpec,
}

impl PublishedRow {
    pub fn ratio(&self) -> Ratio {
        ratio(self.order, self.s, self.k)
    }

    pub fn group_name(&self) -> String {
        spec_name(&self.group)
    }

    /// `s | n | K | ratio`, with a leading `k |` column for directed rows.
    pub fn render(&self) -> String {
        let body = format!("{} | {} | {} | {}", self.s, self.order, self.group_name(), self.ratio().render());
        if self.directed {
            format!("{} | {body}", self.k)
        } else {
            body
        }
    }
}

const ROWS: [(bool, usize, usize, usize, &str); 16] = [
    (false, 3, 4, 12, "cyclic(12)"),
    (false, 3, 5, 24, "symmetric(4)"),
    (false, 3, 6, 48, "semidirect(cyclic(4)^2,cyclic(3),mat=[[0,3],[1,3]])"),
    (
        false,
        3,
        7,
        72,
        "perm(13;(1,2,3)(5,6,7,8,9,10,11,12,13);(1,2)(6,13)(7,12)(8,11)(9,10);(1,2)(3,4))",
    ),
    (false, 4, 3, 4, "cyclic(4)"),
    (false, 4, 4, 24, "symmetric(4)"),
    (false, 4, 5, 60, "semidirect(cyclic(15),cyclic(4),exp=2)"),
    (false, 5, 3, 6, "symmetric(3)"),
    (false, 5, 4, 60, "alternating(5)"),
    (false, 6, 3, 12, "alternating(4)"),
    (false, 6, 4, 78, "product(cyclic(2),semidirect(cyclic(13),cyclic(3),exp=3))"),
    (false, 7, 3, 14, "dihedral(14)"),
    (false, 7, 4, 168, "product(cyclic(8),semidirect(cyclic(7),cyclic(3),exp=2))"),
    (true, 3, 4, 48, "product(cyclic(2),symmetric(4))"),
    (true, 4, 3, 36, "product(cyclic(3),alternating(4))"),
    (true, 5, 3, 120, "symmetric(5)"),
];

/// All rows in table order: undirected by diameter, then directed.
pub fn published_rows() -> Vec<PublishedRow> {
    ROWS.iter()
        .map(|&(directed, k, s, order, spec)| PublishedRow {
            directed,
            k,
            s,
            order,
            group: spec.parse().expect("published spec parses"),
        })
        .collect()
}

/// Undirected rows of diameter `k`, or every directed row.
pub fn table_rows(k: Option<usize>, directed: bool) -> Vec<PublishedRow> {
    published_rows()
        .into_iter()
        .filter(|r| r.directed == directed && k.map_or(true, |k| r.k == k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Group};

    #[test]
    fn orders_match_groups() {
        for r in published_rows() {
            assert_eq!(build_group(&r.group).unwrap().order(), r.order, "{:?}", r.group);
        }
    }

    #[test]
    fn renders_published_rows() {
        let rows = table_rows(Some(4), false);
        assert_eq!(rows[2].render(), "5 | 60 | Z₁₅⋊Z₄ | 60/5⁴ ≈ 0.09600");
        assert_eq!(table_rows(Some(3), true)[0].render(), "3 | 4 | 48 | Z₂×S₄ | 48/4³ = 0.75000");
        assert_eq!(table_rows(Some(6), false)[0].render(), "3 | 12 | A₄ | 12/3⁶ ≈ 0.01646");
    }
}
