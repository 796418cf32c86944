//! Group specifications, their canonical text form and the group catalog.

use std::fmt;
use std::str::FromStr;

use super::{CoordPermutation, FiniteGroup, Group, GroupError};
use crate::heisenberg::HeisenbergGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given order `2k`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Product(Vec<GroupSpec>),
    /// `Z_n ⋊ Z_m`, the generator of `Z_m` acting by `x ↦ exp·x`.
    Semidirect { n: usize, m: usize, exp: usize },
    /// `Z_n^dim ⋊ Z_m`, the generator of `Z_m` acting by an integer matrix.
    SemidirectMatrix {
        n: usize,
        dim: usize,
        m: usize,
        matrix: Vec<Vec<usize>>,
    },
    /// Upper unitriangular 3×3 matrices over `GF(p)`, times `Z_2`.
    HeisenbergZ2(usize),
    /// Permutation group on `degree` points given by generators in cycle notation.
    Perm { degree: usize, gens: Vec<String> },
}

impl GroupSpec {
    /// Declared order, when it follows from the parameters alone.
    pub fn declared_order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => *n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            GroupSpec::Product(parts) => {
                let mut o = 1;
                for p in parts {
                    o *= p.declared_order()?;
                }
                o
            }
            GroupSpec::Semidirect { n, m, .. } => n * m,
            GroupSpec::SemidirectMatrix { n, dim, m, .. } => n.pow(*dim as u32) * m,
            GroupSpec::HeisenbergZ2(p) => 2 * p * p * p,
            GroupSpec::Perm { .. } => return None,
        })
    }

    /// Conventional name with subscripts, e.g. `Z₁₅⋊Z₄`.
    pub fn display_name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("Z{}", subscript(*n)),
            GroupSpec::Dihedral(n) => format!("D{}", subscript(*n)),
            GroupSpec::Symmetric(n) => format!("S{}", subscript(*n)),
            GroupSpec::Alternating(n) => format!("A{}", subscript(*n)),
            GroupSpec::Product(parts) => parts
                .iter()
                .map(|p| match p {
                    GroupSpec::Product(_)
                    | GroupSpec::Semidirect { .. }
                    | GroupSpec::SemidirectMatrix { .. } => format!("({})", p.display_name()),
                    _ => p.display_name(),
                })
                .collect::<Vec<_>>()
                .join("×"),
            GroupSpec::Semidirect { n, m, .. } => format!("Z{}⋊Z{}", subscript(*n), subscript(*m)),
            GroupSpec::SemidirectMatrix { n, dim, m, .. } => {
                let base = vec![format!("Z{}", subscript(*n)); *dim].join("×");
                format!("({base})⋊Z{}", subscript(*m))
            }
            GroupSpec::HeisenbergZ2(p) => format!("UT(3,{p})×Z₂"),
            GroupSpec::Perm { degree, .. } => format!("Perm({degree})"),
        }
    }
}

pub(crate) fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Alternating(n) => write!(f, "alternating({n})"),
            GroupSpec::Product(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "product({})", inner.join(","))
            }
            GroupSpec::Semidirect { n, m, exp } => {
                write!(f, "semidirect(cyclic({n}),cyclic({m}),exp={exp})")
            }
            GroupSpec::SemidirectMatrix { n, dim, m, matrix } => {
                let rows: Vec<String> = matrix
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                write!(f, "semidirect(cyclic({n})^{dim},cyclic({m}),mat=[{}])", rows.join(","))
            }
            GroupSpec::HeisenbergZ2(p) => write!(f, "heisenberg({p})"),
            GroupSpec::Perm { degree, gens } => write!(f, "perm({degree};{})", gens.join(";")),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> GroupError {
        GroupError::Parse(format!("{what} at byte {} in `{}`", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), GroupError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, GroupError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.err("expected identifier"));
        }
        let id = &self.rest()[..len];
        self.pos += len;
        Ok(id)
    }

    fn number(&mut self) -> Result<usize, GroupError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.err("expected number"));
        }
        let n = self.rest()[..len].parse().map_err(|_| self.err("bad number"))?;
        self.pos += len;
        Ok(n)
    }

    fn keyword_arg(&mut self, key: &str) -> Result<(), GroupError> {
        let id = self.ident()?;
        if id != key {
            return Err(self.err(&format!("expected `{key}=`")));
        }
        self.expect('=')
    }

    fn matrix(&mut self) -> Result<Vec<Vec<usize>>, GroupError> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.number()?];
            while self.eat(',') {
                row.push(self.number()?);
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn cyclic_arg(&mut self) -> Result<(usize, usize), GroupError> {
        if self.ident()? != "cyclic" {
            return Err(self.err("semidirect factors must be cyclic"));
        }
        self.expect('(')?;
        let n = self.number()?;
        self.expect(')')?;
        let dim = if self.eat('^') { self.number()? } else { 1 };
        Ok((n, dim))
    }

    fn spec(&mut self) -> Result<GroupSpec, GroupError> {
        let name = self.ident()?;
        self.expect('(')?;
        let spec = match name {
            "cyclic" => GroupSpec::Cyclic(self.number()?),
            "dihedral" => GroupSpec::Dihedral(self.number()?),
            "symmetric" => GroupSpec::Symmetric(self.number()?),
            "alternating" => GroupSpec::Alternating(self.number()?),
            "heisenberg" => GroupSpec::HeisenbergZ2(self.number()?),
            "product" => {
                let mut parts = vec![self.spec()?];
                while self.eat(',') {
                    parts.push(self.spec()?);
                }
                GroupSpec::Product(parts)
            }
            "semidirect" => {
                let (n, dim) = self.cyclic_arg()?;
                self.expect(',')?;
                let (m, one) = self.cyclic_arg()?;
                if one != 1 {
                    return Err(self.err("acting group must be cyclic"));
                }
                self.expect(',')?;
                self.skip_ws();
                if self.rest().starts_with("exp") {
                    self.keyword_arg("exp")?;
                    let exp = self.number()?;
                    if dim != 1 {
                        return Err(self.err("exp= needs a one-dimensional base"));
                    }
                    GroupSpec::Semidirect { n, m, exp }
                } else {
                    self.keyword_arg("mat")?;
                    let matrix = self.matrix()?;
                    GroupSpec::SemidirectMatrix { n, dim, m, matrix }
                }
            }
            "perm" => {
                let degree = self.number()?;
                let mut gens = Vec::new();
                while self.eat(';') {
                    self.skip_ws();
                    let mut depth = 0i32;
                    let mut len = self.rest().len();
                    for (j, c) in self.rest().char_indices() {
                        match c {
                            '(' => depth += 1,
                            ')' if depth > 0 => depth -= 1,
                            ')' | ';' => {
                                len = j;
                                break;
                            }
                            _ => {}
                        }
                    }
                    let g = self.rest()[..len].trim().to_string();
                    gens.push(CoordPermutation::from_cycles(degree, &g)?.to_cycles());
                    self.pos += len;
                }
                GroupSpec::Perm { degree, gens }
            }
            other => return Err(GroupError::UnsupportedSpec(other.to_string())),
        };
        self.expect(')')?;
        Ok(spec)
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

fn perm_group(
    degree: usize,
    gens: Vec<CoordPermutation>,
    name: String,
) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_generators(
        CoordPermutation::identity(degree),
        &gens,
        |a, b| a.then(b),
        |p| p.to_cycles(),
        name,
    )
}

fn mod_pow(a: usize, e: usize, n: usize) -> usize {
    (0..e).fold(1 % n, |acc, _| acc * a % n)
}

fn mat_mul(a: &[Vec<usize>], b: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|l| a[i][l] * b[l][j]).sum::<usize>() % n)
                .collect()
        })
        .collect()
}

fn mat_vec(a: &[Vec<usize>], x: &[usize], n: usize) -> Vec<usize> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum::<usize>() % n)
        .collect()
}

/// Expand a specification into a tabulated group.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    let name = spec.to_string();
    let group = match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n;
            if n == 0 {
                return Err(GroupError::UnsupportedSpec(name));
            }
            FiniteGroup::from_law(
                n,
                |a, b| (a + b) % n,
                (0..n).map(|i| i.to_string()).collect(),
                if n > 1 { vec![1] } else { vec![] },
                name,
            )?
        }
        GroupSpec::Dihedral(order) => {
            if *order < 4 || order % 2 != 0 {
                return Err(GroupError::UnsupportedSpec(name));
            }
            let k = order / 2;
            // r^i s^j ↦ i + k·j
            let mul = |a: usize, b: usize| {
                let (i1, j1) = (a % k, a / k);
                let (i2, j2) = (b % k, b / k);
                let i = if j1 == 0 { i1 + i2 } else { i1 + k - i2 } % k;
                i + k * ((j1 + j2) % 2)
            };
            let labels = (0..*order)
                .map(|a| {
                    let (i, j) = (a % k, a / k);
                    let r = match i {
                        0 => String::new(),
                        1 => "r".to_string(),
                        _ => format!("r^{i}"),
                    };
                    let s = if j == 1 { "s" } else { "" };
                    let l = format!("{r}{s}");
                    if l.is_empty() {
                        "1".to_string()
                    } else {
                        l
                    }
                })
                .collect();
            FiniteGroup::from_law(*order, mul, labels, vec![1, k], name)?
        }
        GroupSpec::Symmetric(n) => {
            let n = *n;
            if n == 0 {
                return Err(GroupError::UnsupportedSpec(name));
            }
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(CoordPermutation::rotation(n, 1));
            }
            if n >= 3 {
                gens.push(CoordPermutation::from_cycles(n, "(1,2)")?);
            }
            perm_group(n, gens, name)?
        }
        GroupSpec::Alternating(n) => {
            let n = *n;
            if n < 3 {
                return Err(GroupError::UnsupportedSpec(name));
            }
            let mut gens = vec![CoordPermutation::from_cycles(n, "(1,2,3)")?];
            if n >= 4 {
                let long: Vec<String> = if n % 2 == 1 {
                    (1..=n).map(|i| i.to_string()).collect()
                } else {
                    (2..=n).map(|i| i.to_string()).collect()
                };
                gens.push(CoordPermutation::from_cycles(n, &format!("({})", long.join(",")))?);
            }
            perm_group(n, gens, name)?
        }
        GroupSpec::Product(parts) => {
            let factors: Vec<FiniteGroup> = parts.iter().map(build_group).collect::<Result<_, _>>()?;
            let order: usize = factors.iter().map(|f| f.order()).product();
            if order > super::MAX_TABLE_ORDER {
                return Err(GroupError::TooLarge(order));
            }
            let split = |mut a: usize| -> Vec<usize> {
                factors
                    .iter()
                    .map(|f| {
                        let d = a % f.order();
                        a /= f.order();
                        d
                    })
                    .collect()
            };
            let join = |digits: &[usize]| -> usize {
                digits
                    .iter()
                    .zip(&factors)
                    .rev()
                    .fold(0, |acc, (d, f)| acc * f.order() + d)
            };
            let mul = |a: usize, b: usize| {
                let (da, db) = (split(a), split(b));
                let dc: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.mul(da[i], db[i]))
                    .collect();
                join(&dc)
            };
            let labels = (0..order)
                .map(|a| {
                    let parts: Vec<String> = split(a)
                        .iter()
                        .zip(&factors)
                        .map(|(&d, f)| f.label(d))
                        .collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            let mut generators = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                for &g in f.generators() {
                    let mut digits = vec![0; factors.len()];
                    digits[i] = g;
                    generators.push(join(&digits));
                }
            }
            FiniteGroup::from_law(order, mul, labels, generators, name)?
        }
        GroupSpec::Semidirect { n, m, exp } => {
            let (n, m, a) = (*n, *m, *exp % (*n).max(1));
            if n < 1 || m < 1 || super::gcd(a, n) != 1 || mod_pow(a, m, n) != 1 % n {
                return Err(GroupError::InvalidAction(format!(
                    "x ↦ {exp}x does not define an action of Z{m} on Z{n}"
                )));
            }
            // (i, j) ↦ i + n·j; (i1,j1)(i2,j2) = (i1 + a^j1·i2, j1 + j2)
            let powers: Vec<usize> = (0..m).map(|j| mod_pow(a, j, n)).collect();
            let mul = |x: usize, y: usize| {
                let (i1, j1) = (x % n, x / n);
                let (i2, j2) = (y % n, y / n);
                (i1 + powers[j1] * i2) % n + n * ((j1 + j2) % m)
            };
            let labels = (0..n * m).map(|x| format!("({},{})", x % n, x / n)).collect();
            let mut gens = Vec::new();
            if n > 1 {
                gens.push(1);
            }
            if m > 1 {
                gens.push(n);
            }
            FiniteGroup::from_law(n * m, mul, labels, gens, name)?
        }
        GroupSpec::SemidirectMatrix { n, dim, m, matrix } => {
            let (n, dim, m) = (*n, *dim, *m);
            if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) || n < 2 || dim == 0 {
                return Err(GroupError::InvalidAction("matrix shape".into()));
            }
            let ident: Vec<Vec<usize>> = (0..dim)
                .map(|i| (0..dim).map(|j| usize::from(i == j)).collect())
                .collect();
            let mut powers = vec![ident.clone()];
            for j in 1..=m {
                powers.push(mat_mul(&powers[j - 1], matrix, n));
            }
            if powers[m] != ident {
                return Err(GroupError::InvalidAction(format!(
                    "matrix does not have order dividing {m} mod {n}"
                )));
            }
            let base = n.pow(dim as u32);
            let split = |mut x: usize| -> Vec<usize> {
                (0..dim)
                    .map(|_| {
                        let d = x % n;
                        x /= n;
                        d
                    })
                    .collect()
            };
            let join = |v: &[usize]| v.iter().rev().fold(0, |acc, d| acc * n + d);
            let mul = |x: usize, y: usize| {
                let (v1, j1) = (split(x % base), x / base);
                let (v2, j2) = (split(y % base), y / base);
                let w = mat_vec(&powers[j1], &v2, n);
                let sum: Vec<usize> = v1.iter().zip(&w).map(|(a, b)| (a + b) % n).collect();
                join(&sum) + base * ((j1 + j2) % m)
            };
            let labels = (0..base * m)
                .map(|x| {
                    let v: Vec<String> = split(x % base).iter().map(|d| d.to_string()).collect();
                    format!("({};{})", v.join(","), x / base)
                })
                .collect();
            let mut gens: Vec<usize> = (0..dim).map(|i| n.pow(i as u32)).collect();
            if m > 1 {
                gens.push(base);
            }
            let g = FiniteGroup::from_law(base * m, mul, labels, gens, name)?;
            if g.inv(0) != 0 {
                return Err(GroupError::InvalidAction("matrix not invertible".into()));
            }
            g
        }
        GroupSpec::HeisenbergZ2(p) => {
            let h = HeisenbergGroup::new(*p).map_err(|e| GroupError::UnsupportedSpec(e.to_string()))?;
            let mut g = super::tabulate(&h, &name)?;
            g.generators = h.natural_generators();
            g
        }
        GroupSpec::Perm { degree, gens } => {
            let perms = gens
                .iter()
                .map(|g| CoordPermutation::from_cycles(*degree, g))
                .collect::<Result<Vec<_>, _>>()?;
            perm_group(*degree, perms, name)?
        }
    };
    if let Some(order) = spec.declared_order() {
        if group.order() != order {
            return Err(GroupError::InvalidAction(format!(
                "{spec} expanded to order {} instead of {order}",
                group.order()
            )));
        }
    }
    Ok(group)
}

/// A named catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub name: String,
}

/// Groups used by the published constructions, in catalog order.
pub fn catalog() -> Vec<CatalogEntry> {
    let named: [(&str, &str); 16] = [
        ("cyclic(4)", "Z₄"),
        ("symmetric(3)", "S₃"),
        ("cyclic(12)", "Z₁₂"),
        ("alternating(4)", "A₄"),
        ("dihedral(14)", "D₁₄"),
        ("symmetric(4)", "S₄"),
        ("cyclic(36)", "Z₃₆"),
        ("product(cyclic(3),alternating(4))", "Z₃×A₄"),
        ("semidirect(cyclic(4)^2,cyclic(3),mat=[[0,3],[1,3]])", "(Z₄×Z₄)⋊Z₃"),
        ("product(cyclic(2),symmetric(4))", "Z₂×S₄"),
        ("semidirect(cyclic(15),cyclic(4),exp=2)", "Z₁₅⋊Z₄"),
        ("alternating(5)", "A₅"),
        (
            "perm(13;(1,2,3)(5,6,7,8,9,10,11,12,13);(1,2)(6,13)(7,12)(8,11)(9,10);(1,2)(3,4))",
            "(Z₂²⋊Z₉)⋊Z₂",
        ),
        ("product(cyclic(2),semidirect(cyclic(13),cyclic(3),exp=3))", "Z₂×(Z₁₃⋊Z₃)"),
        ("symmetric(5)", "S₅"),
        ("product(cyclic(8),semidirect(cyclic(7),cyclic(3),exp=2))", "Z₈×(Z₇⋊Z₃)"),
    ];
    named
        .iter()
        .map(|(s, n)| CatalogEntry {
            spec: s.parse().expect("catalog spec parses"),
            name: n.to_string(),
        })
        .collect()
}

/// Catalog groups of order `n`: named entries first, then cyclic and
/// dihedral groups of that order when not already listed.
pub fn catalog_of_order(n: usize) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = catalog()
        .into_iter()
        .filter(|e| {
            e.spec
                .declared_order()
                .or_else(|| build_group(&e.spec).ok().map(|g| g.order()))
                == Some(n)
        })
        .collect();
    let mut extra = vec![GroupSpec::Cyclic(n)];
    if n >= 6 && n % 2 == 0 {
        extra.push(GroupSpec::Dihedral(n));
    }
    for spec in extra {
        if !out.iter().any(|e| e.spec == spec) {
            out.push(CatalogEntry {
                name: spec.display_name(),
                spec,
            });
        }
    }
    out
}

/// Name for a spec: the catalog name when listed, otherwise a generated one.
pub fn spec_name(spec: &GroupSpec) -> String {
    catalog()
        .into_iter()
        .find(|e| &e.spec == spec)
        .map(|e| e.name)
        .unwrap_or_else(|| spec.display_name())
}
