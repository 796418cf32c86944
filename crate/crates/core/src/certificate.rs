//! JSON certificates. Every document carries `format_version` and `kind`
//! (`semidirect`, `dihedral` or `heisenberg`). Reading re-derives all
//! structure (group, homomorphism, pairing, vectors) and rejects anything
//! inconsistent; the symbolic checks themselves live with each construction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::DiameterReport;
use crate::dihedral::{
    bit_string, element_label, format_string, parse_string, DihedralCertificate, DihedralError, DihedralParams,
    GoodStringEntry, GoodStringTable,
};
use crate::group::{build_group, CoordPermutation, Group, GroupError, GroupHom, GroupSpec};
use crate::heisenberg::{build_full_genset, HeisenbergError};
use crate::intmat::IntMatrix;
use crate::semidirect::{
    bits_to_mask, mask_to_bits, AdjacencyRule, ElementSolution, EngineError, GeneratorSpec, SolutionCertificate,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error(transparent)]
    Heisenberg(#[from] HeisenbergError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn schema(msg: impl Into<String>) -> CertificateError {
    CertificateError::Schema(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    /// Labels of the catalog generators of `K`.
    pub generators: Vec<String>,
    /// 1-based cycle notation of each generator's image.
    pub images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEntryJson {
    pub index: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub element: String,
    /// 0-based indices into `S`.
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    #[serde(rename = "M_inverse")]
    pub m_inverse: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioJson {
    pub num: u64,
    pub den: u64,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectJson {
    pub format_version: u32,
    pub kind: String,
    pub k: usize,
    pub directed: bool,
    pub group_spec: String,
    pub group_order: usize,
    pub hom: HomJson,
    #[serde(rename = "S")]
    pub s: Vec<SetEntryJson>,
    #[serde(rename = "V")]
    pub v: Vec<String>,
    pub pairing: Vec<usize>,
    pub adjacency: String,
    /// True when the search ran with no adjacency restriction.
    pub relaxed: bool,
    pub solutions: Vec<SolutionJson>,
    pub ratio: RatioJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub element: String,
    pub string: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralVectorsJson {
    pub v_r: String,
    pub v_rinv: String,
    pub v_s: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralJson {
    pub format_version: u32,
    pub kind: String,
    pub k: usize,
    pub q: usize,
    pub vectors: DihedralVectorsJson,
    pub table: Vec<TableEntryJson>,
    pub verified_m: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergJson {
    pub format_version: u32,
    pub kind: String,
    pub p: usize,
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub s3: Vec<String>,
    pub degree: usize,
    pub report: Option<DiameterReport>,
}

/// The diameter-3 Heisenberg construction at prime `p`, with an
/// optional BFS report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergCertificate {
    pub p: usize,
    pub report: Option<DiameterReport>,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Semidirect(SolutionCertificate),
    Dihedral(DihedralCertificate),
    Heisenberg(HeisenbergCertificate),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Semidirect(_) => "semidirect",
            Certificate::Dihedral(_) => "dihedral",
            Certificate::Heisenberg(_) => "heisenberg",
        }
    }

    pub fn to_json(&self) -> Result<String, CertificateError> {
        let value = match self {
            Certificate::Semidirect(c) => serde_json::to_value(semidirect_to_json(c)?)?,
            Certificate::Dihedral(c) => serde_json::to_value(dihedral_to_json(c))?,
            Certificate::Heisenberg(c) => serde_json::to_value(heisenberg_to_json(c)?)?,
        };
        Ok(serde_json::to_string_pretty(&value)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let version = value.get("format_version").and_then(|v| v.as_u64());
        if version != Some(FORMAT_VERSION as u64) {
            return Err(schema(format!("unsupported format_version {version:?}")));
        }
        match value.get("kind").and_then(|v| v.as_str()) {
            Some("semidirect") => Ok(Certificate::Semidirect(semidirect_from_json(&serde_json::from_value(value)?)?)),
            Some("dihedral") => Ok(Certificate::Dihedral(dihedral_from_json(&serde_json::from_value(value)?)?)),
            Some("heisenberg") => Ok(Certificate::Heisenberg(heisenberg_from_json(&serde_json::from_value(value)?)?)),
            other => Err(schema(format!("unknown kind {other:?}"))),
        }
    }
}

pub fn semidirect_to_json(c: &SolutionCertificate) -> Result<SemidirectJson, CertificateError> {
    let spec = &c.spec;
    let g = spec.group();
    let group_spec = c
        .group_spec
        .as_ref()
        .ok_or_else(|| schema("certificate has no group spec to serialize"))?;
    let gens = g.generators();
    let ratio = c.ratio();
    Ok(SemidirectJson {
        format_version: FORMAT_VERSION,
        kind: "semidirect".into(),
        k: spec.k,
        directed: spec.directed,
        group_spec: group_spec.to_string(),
        group_order: g.order(),
        hom: HomJson {
            generators: gens.iter().map(|&x| g.label(x)).collect(),
            images: gens.iter().map(|&x| spec.hom.image(x).to_cycles()).collect(),
        },
        s: spec
            .s
            .iter()
            .map(|&x| SetEntryJson {
                index: x,
                label: g.label(x),
            })
            .collect(),
        v: spec.v.iter().map(|&m| mask_to_bits(m, spec.k)).collect(),
        pairing: spec.pairing.clone(),
        adjacency: spec.adjacency.name().into(),
        relaxed: spec.adjacency == AdjacencyRule::Off,
        solutions: c
            .solutions
            .iter()
            .map(|s| SolutionJson {
                element: g.label(s.element),
                u: s.u.clone(),
                m_inverse: s.m_inverse.rows(),
            })
            .collect(),
        ratio: RatioJson {
            num: ratio.num,
            den: ratio.den,
            text: ratio.render(),
        },
    })
}

pub fn semidirect_from_json(j: &SemidirectJson) -> Result<SolutionCertificate, CertificateError> {
    if j.kind != "semidirect" {
        return Err(schema("kind must be semidirect"));
    }
    let group_spec: GroupSpec = j.group_spec.parse()?;
    let g = Arc::new(build_group(&group_spec)?);
    if g.order() != j.group_order {
        return Err(schema(format!("group order {} but stored {}", g.order(), j.group_order)));
    }
    let find = |label: &str| g.find_label(label).ok_or_else(|| schema(format!("unknown element {label}")));
    if j.hom.generators.len() != j.hom.images.len() {
        return Err(schema("hom generators and images differ in length"));
    }
    let gens = j.hom.generators.iter().map(|l| find(l)).collect::<Result<Vec<_>, _>>()?;
    let images = j
        .hom
        .images
        .iter()
        .map(|c| CoordPermutation::from_cycles(j.k, c))
        .collect::<Result<Vec<_>, _>>()?;
    let hom = GroupHom::from_generator_images(g.clone(), j.k, &gens, &images)?;
    let mut s = Vec::with_capacity(j.s.len());
    for e in &j.s {
        let idx = find(&e.label)?;
        if idx != e.index {
            return Err(schema(format!("S entry {} has index {} but label {}", e.index, idx, e.label)));
        }
        s.push(idx);
    }
    let v = j
        .v
        .iter()
        .map(|b| match bits_to_mask(b) {
            Some(m) if b.len() == j.k => Ok(m),
            _ => Err(schema(format!("bad vector {b:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut spec = GeneratorSpec::new(j.k, j.directed, hom, s, v)?;
    if spec.pairing != j.pairing {
        return Err(schema("stored pairing disagrees with S"));
    }
    spec.adjacency = j.adjacency.parse().map_err(schema)?;
    if j.relaxed != (spec.adjacency == AdjacencyRule::Off) {
        return Err(schema("relaxed flag disagrees with adjacency"));
    }
    let solutions = j
        .solutions
        .iter()
        .map(|sol| {
            Ok(ElementSolution {
                element: find(&sol.element)?,
                u: sol.u.clone(),
                m_inverse: IntMatrix::from_rows(&sol.m_inverse).map_err(EngineError::from)?,
            })
        })
        .collect::<Result<Vec<_>, CertificateError>>()?;
    let cert = SolutionCertificate {
        spec,
        group_spec: Some(group_spec),
        solutions,
    };
    let r = cert.ratio();
    if (r.num, r.den) != (j.ratio.num, j.ratio.den) {
        return Err(schema("stored ratio disagrees with the parameters"));
    }
    Ok(cert)
}

pub fn dihedral_to_json(c: &DihedralCertificate) -> DihedralJson {
    let k = c.params.k;
    DihedralJson {
        format_version: FORMAT_VERSION,
        kind: "dihedral".into(),
        k,
        q: c.params.q,
        vectors: DihedralVectorsJson {
            v_r: bit_string(&c.vectors.v_r),
            v_rinv: bit_string(&c.vectors.v_rinv),
            v_s: bit_string(&c.vectors.v_s),
        },
        table: c
            .table
            .entries
            .iter()
            .map(|e| TableEntryJson {
                element: element_label(k, e.element),
                string: format_string(&e.string),
            })
            .collect(),
        verified_m: c.verified_m.clone(),
    }
}

pub fn dihedral_from_json(j: &DihedralJson) -> Result<DihedralCertificate, CertificateError> {
    if j.kind != "dihedral" {
        return Err(schema("kind must be dihedral"));
    }
    let params = DihedralParams::new(j.k)?;
    if params.q != j.q {
        return Err(schema("q disagrees with k"));
    }
    let vectors = crate::dihedral::dihedral_vectors(j.k)?;
    let stored = [&j.vectors.v_r, &j.vectors.v_rinv, &j.vectors.v_s];
    for (want, got) in vectors.as_array().iter().zip(stored) {
        if bit_string(want) != *got {
            return Err(schema(format!("vector {got} disagrees with k = {}", j.k)));
        }
    }
    let labels: Vec<String> = (0..2 * j.k).map(|e| element_label(j.k, e)).collect();
    let entries = j
        .table
        .iter()
        .map(|e| {
            let element = labels
                .iter()
                .position(|l| *l == e.element)
                .ok_or_else(|| schema(format!("unknown element {}", e.element)))?;
            Ok(GoodStringEntry {
                element,
                string: parse_string(&e.string)?,
            })
        })
        .collect::<Result<Vec<_>, CertificateError>>()?;
    Ok(DihedralCertificate {
        params,
        vectors,
        table: GoodStringTable { k: j.k, entries },
        verified_m: j.verified_m.clone(),
    })
}

pub fn heisenberg_to_json(c: &HeisenbergCertificate) -> Result<HeisenbergJson, CertificateError> {
    let gs = build_full_genset(c.p)?;
    let show = |v: &[crate::heisenberg::HeisenbergElement]| v.iter().map(|e| e.to_string()).collect();
    Ok(HeisenbergJson {
        format_version: FORMAT_VERSION,
        kind: "heisenberg".into(),
        p: c.p,
        s1: show(&gs.s1),
        s2: show(&gs.s2),
        s3: show(&gs.s3),
        degree: gs.set.len(),
        report: c.report.clone(),
    })
}

pub fn heisenberg_from_json(j: &HeisenbergJson) -> Result<HeisenbergCertificate, CertificateError> {
    if j.kind != "heisenberg" {
        return Err(schema("kind must be heisenberg"));
    }
    let cert = HeisenbergCertificate {
        p: j.p,
        report: j.report.clone(),
    };
    let fresh = heisenberg_to_json(&cert)?;
    if fresh.s1 != j.s1 || fresh.s2 != j.s2 || fresh.s3 != j.s3 || fresh.degree != j.degree {
        return Err(schema("generating set disagrees with p"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::DihedralCertificate;
    use crate::semidirect::build_certificate;

    fn z36_example_cert() -> SolutionCertificate {
        let g = Arc::new(build_group(&GroupSpec::Cyclic(36)).unwrap());
        let hom = GroupHom::from_generator_images(g, 6, &[1], &[CoordPermutation::rotation(6, 1)]).unwrap();
        let v = ["000001", "000010", "011001", "010110"].map(|b| bits_to_mask(b).unwrap()).to_vec();
        let spec = GeneratorSpec::new(6, false, hom, vec![1, 35, 4, 32], v).unwrap();
        build_certificate(&spec, Some(GroupSpec::Cyclic(36))).unwrap()
    }

    #[test]
    fn semidirect_round_trip_is_identical() {
        let c = Certificate::Semidirect(z36_example_cert());
        let a = c.to_json().unwrap();
        let back = Certificate::from_json(&a).unwrap();
        assert_eq!(back.to_json().unwrap(), a);
        assert!(a.contains("\"kind\": \"semidirect\""));
        assert!(a.contains("\"000001\""));
    }

    #[test]
    fn dihedral_round_trip_is_identical() {
        let mut d = DihedralCertificate::build(9).unwrap();
        d.verified_m = vec![2];
        let a = Certificate::Dihedral(d).to_json().unwrap();
        let back = Certificate::from_json(&a).unwrap();
        assert_eq!(back.to_json().unwrap(), a);
        let Certificate::Dihedral(d) = back else { panic!() };
        d.check().unwrap();
    }

    #[test]
    fn heisenberg_round_trip_is_identical() {
        let c = Certificate::Heisenberg(HeisenbergCertificate { p: 5, report: None });
        let a = c.to_json().unwrap();
        assert_eq!(Certificate::from_json(&a).unwrap().to_json().unwrap(), a);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(Certificate::from_json("{"), Err(CertificateError::Json(_))));
        assert!(matches!(
            Certificate::from_json(r#"{"format_version":9,"kind":"semidirect"}"#),
            Err(CertificateError::Schema(_))
        ));
        let good = Certificate::Semidirect(z36_example_cert()).to_json().unwrap();
        let tampered = good.replacen("\"000001\"", "\"000011\"", 1);
        assert!(Certificate::from_json(&tampered).is_err());
        let wrong_kind = good.replacen("\"semidirect\"", "\"nonsense\"", 1);
        assert!(matches!(Certificate::from_json(&wrong_kind), Err(CertificateError::Schema(_))));
    }
}
