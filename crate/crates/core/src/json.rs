//! JSON interchange formats.
//!
//! All numbers serialize as decimal strings so arbitrary-precision values
//! round-trip bit-exactly. Series terms are emitted in canonical order
//! (degree, then reverse-lexicographic partitions), making output byte-stable
//! across runs.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{Partition, Rational};
use crate::error::{Error, Result};
use crate::graphcore::{Graph, MarkedGraph};
use crate::orbigraph::Orbigraph;
use crate::symfunc::{PSeries, SchurTable};
use crate::zagier::ZagierTerm;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(x: &Rational) -> Self {
        RationalJson {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational> {
        let num = BigInt::from_str(&self.num).map_err(|e| Error::Json(e.to_string()))?;
        let den = BigInt::from_str(&self.den).map_err(|e| Error::Json(e.to_string()))?;
        if den <= BigInt::from(0) {
            return Err(Error::Json("denominator must be positive".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub partition: Vec<u32>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PSeriesJson {
    pub truncation: u32,
    pub terms: Vec<SeriesTermJson>,
}

impl From<&PSeries> for PSeriesJson {
    fn from(s: &PSeries) -> Self {
        let terms = s
            .terms()
            .map(|(lambda, c)| SeriesTermJson {
                partition: lambda.parts().to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        PSeriesJson {
            truncation: s.truncation(),
            terms,
        }
    }
}

impl PSeriesJson {
    pub fn to_series(&self) -> Result<PSeries> {
        let mut out = PSeries::zero(self.truncation);
        for term in &self.terms {
            let lambda = if term.partition.is_empty() {
                Partition::empty()
            } else {
                if term.partition.contains(&0) {
                    return Err(Error::Json("zero part in partition".into()));
                }
                Partition::new(term.partition.clone())
            };
            let c = RationalJson {
                num: term.num.clone(),
                den: term.den.clone(),
            }
            .to_rational()?;
            let mono = PSeries::monomial(lambda, c, self.truncation);
            out = crate::symfunc::pseries_add(&out, &mono);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchurTableJson {
    pub n: u32,
    pub coefficients: Vec<SeriesTermJson>,
}

impl From<&SchurTable> for SchurTableJson {
    fn from(t: &SchurTable) -> Self {
        let coefficients = t
            .coefficients()
            .map(|(lambda, c)| SeriesTermJson {
                partition: lambda.parts().to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        SchurTableJson {
            n: t.n(),
            coefficients,
        }
    }
}

impl SchurTableJson {
    pub fn to_table(&self) -> Result<SchurTable> {
        let mut map = std::collections::BTreeMap::new();
        for term in &self.coefficients {
            let lambda = if term.partition.is_empty() {
                Partition::empty()
            } else {
                if term.partition.contains(&0) {
                    return Err(Error::Json("zero part in partition".into()));
                }
                Partition::new(term.partition.clone())
            };
            if lambda.n() != self.n {
                return Err(Error::Json(format!(
                    "partition {lambda} is not a partition of {}",
                    self.n
                )));
            }
            let c = RationalJson {
                num: term.num.clone(),
                den: term.den.clone(),
            }
            .to_rational()?;
            map.insert(lambda, c);
        }
        Ok(SchurTable::from_map(self.n, map))
    }
}

/// Graph interchange: index arrays for the attachment map and involution,
/// plus the marking (empty for unmarked graphs).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub half_edges: usize,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    pub marking: Vec<usize>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            vertices: g.num_vertices(),
            half_edges: g.num_half_edges(),
            s: g.raw_s().to_vec(),
            r: g.raw_r().to_vec(),
            marking: Vec::new(),
        }
    }
}

impl From<&MarkedGraph> for GraphJson {
    fn from(mg: &MarkedGraph) -> Self {
        let mut out = GraphJson::from(&mg.graph);
        out.marking = mg.marking.clone();
        out
    }
}

impl GraphJson {
    pub fn to_marked_graph(&self) -> Result<MarkedGraph> {
        if self.s.len() != self.half_edges || self.r.len() != self.half_edges {
            return Err(Error::Json("half-edge count mismatch".into()));
        }
        let graph = Graph::from_raw(self.vertices, self.r.clone(), self.s.clone())?;
        MarkedGraph::new(graph, self.marking.clone())
    }
}

/// Orbigraph interchange: the graph format extended with multiplicity
/// arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbigraphJson {
    pub vertices: usize,
    pub half_edges: usize,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    pub f_vertices: Vec<u64>,
    pub f_edges: Vec<u64>,
}

impl From<&Orbigraph> for OrbigraphJson {
    fn from(x: &Orbigraph) -> Self {
        OrbigraphJson {
            vertices: x.graph().num_vertices(),
            half_edges: x.graph().num_half_edges(),
            s: x.graph().raw_s().to_vec(),
            r: x.graph().raw_r().to_vec(),
            f_vertices: x.f_vertices().to_vec(),
            f_edges: x.f_edges().to_vec(),
        }
    }
}

impl OrbigraphJson {
    pub fn to_orbigraph(&self) -> Result<Orbigraph> {
        let graph = Graph::from_raw(self.vertices, self.r.clone(), self.s.clone())?;
        Orbigraph::new(graph, self.f_vertices.clone(), self.f_edges.clone())
    }
}

/// Audit record for one closed-formula term.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub k: u32,
    pub m: u64,
    pub r: u32,
    pub d: Vec<u64>,
    pub a: Vec<u64>,
    pub coefficient: RationalJson,
}

impl From<&ZagierTerm> for TermJson {
    fn from(t: &ZagierTerm) -> Self {
        TermJson {
            k: t.k,
            m: t.m,
            r: t.r,
            d: t.d.clone(),
            a: t.a.clone(),
            coefficient: RationalJson::from(&t.coefficient()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::symfunc::{p_power, pseries_add, pseries_mul};
    use proptest::prelude::*;

    #[test]
    fn series_roundtrip_is_bit_exact() {
        let s = pseries_mul(&p_power(2, -2, 7), &p_power(1, 3, 7)).scale(&ratio(-5, 12));
        let json = serde_json::to_string(&PSeriesJson::from(&s)).unwrap();
        let parsed: PSeriesJson = serde_json::from_str(&json).unwrap();
        let back = parsed.to_series().unwrap();
        assert_eq!(back, s);
        let json2 = serde_json::to_string(&PSeriesJson::from(&back)).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn schur_table_roundtrip() {
        let table = crate::zagier::equivariant_table(2, 3);
        let json = serde_json::to_string(&SchurTableJson::from(&table)).unwrap();
        let parsed: SchurTableJson = serde_json::from_str(&json).unwrap();
        let back = parsed.to_table().unwrap();
        assert_eq!(back, table);
        let json2 = serde_json::to_string(&SchurTableJson::from(&back)).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn graph_roundtrip() {
        let g = Graph::from_edge_list(2, &[(0, 0), (0, 1), (1, 1)]);
        let mg = MarkedGraph::new(g, vec![0, 1, 1]).unwrap();
        let json = serde_json::to_string(&GraphJson::from(&mg)).unwrap();
        let parsed: GraphJson = serde_json::from_str(&json).unwrap();
        let back = parsed.to_marked_graph().unwrap();
        assert_eq!(back, mg);
    }

    #[test]
    fn orbigraph_roundtrip() {
        let x = Orbigraph::from_labeled_edges(3, &[(0, 1, 2), (1, 2, 2)], vec![1, 1, 1]).unwrap();
        let json = serde_json::to_string(&OrbigraphJson::from(&x)).unwrap();
        let parsed: OrbigraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_orbigraph().unwrap(), x);
    }

    #[test]
    fn malformed_payloads_are_rejected() {
        let bad = PSeriesJson {
            truncation: 4,
            terms: vec![SeriesTermJson {
                partition: vec![2],
                num: "x".into(),
                den: "1".into(),
            }],
        };
        assert!(bad.to_series().is_err());
        let bad = RationalJson {
            num: "1".into(),
            den: "0".into(),
        };
        assert!(bad.to_rational().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_series_roundtrip(nums in proptest::collection::vec((-9i64..=9, 1i64..=9), 0..6)) {
            let mut s = crate::symfunc::PSeries::zero(6);
            for (i, (n, d)) in nums.iter().enumerate() {
                let part = crate::arith::partitions_of((i % 6) as u32 + 1)
                    .into_iter()
                    .next()
                    .unwrap();
                let mono = crate::symfunc::PSeries::monomial(part, ratio(*n, *d), 6);
                s = pseries_add(&s, &mono);
            }
            let json = PSeriesJson::from(&s);
            prop_assert_eq!(json.to_series().unwrap(), s);
        }
    }

    #[test]
    fn term_json_contains_exact_coefficient() {
        let t = crate::zagier::enumerate_terms(2).unwrap();
        let json = TermJson::from(&t[0]);
        assert_eq!(json.coefficient.to_rational().unwrap(), ratio(-1, 12));
        assert_eq!(RationalJson::from(&rat(3)).den, "1");
    }
}
