//! Roman labelings `V -> {0, 1, 2}` and their validity checks.
//!
//! A vertex with label at least 1 is covered on its own. A 0-labelled vertex
//! needs a label-2 neighbour (Roman domination); for global Roman domination
//! it additionally needs a label-2 vertex outside its closed neighbourhood,
//! i.e. a label-2 neighbour in the complement graph.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelingError {
    #[error("labeling has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("label {label} at vertex {vertex} is not in {{0, 1, 2}}")]
    BadLabel { vertex: usize, label: u64 },
}

/// Which domination variant a check or search refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Mode {
    #[serde(rename = "RD")]
    #[value(name = "rd")]
    Rd,
    #[serde(rename = "GRD")]
    #[value(name = "grd")]
    Grd,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Rd => "RDF",
            Mode::Grd => "GRDF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RomanLabeling {
    values: Vec<u8>,
}

impl RomanLabeling {
    pub fn new(values: Vec<u8>) -> Result<Self, LabelingError> {
        if let Some((vertex, &label)) = values.iter().enumerate().find(|(_, &l)| l > 2) {
            return Err(LabelingError::BadLabel {
                vertex,
                label: label.into(),
            });
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0; n] }
    }

    pub fn ones(n: usize) -> Self {
        Self { values: vec![1; n] }
    }

    /// 2 on `twos`, 1 on `ones`, 0 elsewhere. `twos` wins where the sets overlap.
    pub fn from_sets(n: usize, twos: impl IntoIterator<Item = usize>, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut values = vec![0; n];
        for u in ones {
            values[u] = 1;
        }
        for u in twos {
            values[u] = 2;
        }
        Self { values }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, u: usize) -> u8 {
        self.values[u]
    }

    pub fn set(&mut self, u: usize, label: u8) {
        assert!(label <= 2, "label {label} out of range");
        self.values[u] = label;
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn weight(&self) -> usize {
        self.values.iter().map(|&v| usize::from(v)).sum()
    }

    pub fn vertices_with(&self, label: u8) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(move |(_, &l)| l == label)
            .map(|(u, _)| u)
    }

    pub fn twos(&self) -> BitSet {
        BitSet::from_iter_with_capacity(self.len(), self.vertices_with(2))
    }
}

/// Where an uncovered vertex lacks its label-2 witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// No label-2 vertex in `N(u)`.
    Graph,
    /// No label-2 vertex in `V \ N[u]`.
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Violation { vertex: usize, side: Side },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_len(g: &Graph, f: &RomanLabeling) -> Result<(), LabelingError> {
    if g.n() != f.len() {
        return Err(LabelingError::LengthMismatch {
            expected: g.n(),
            got: f.len(),
        });
    }
    Ok(())
}

pub fn check_rdf(g: &Graph, f: &RomanLabeling) -> Result<Verdict, LabelingError> {
    check(g, f, Mode::Rd)
}

pub fn check_grdf(g: &Graph, f: &RomanLabeling) -> Result<Verdict, LabelingError> {
    check(g, f, Mode::Grd)
}

/// Reports the least-id uncovered vertex. For GRDF the graph side is
/// reported before the complement side.
pub fn check(g: &Graph, f: &RomanLabeling, mode: Mode) -> Result<Verdict, LabelingError> {
    check_len(g, f)?;
    let twos = f.twos();
    let total = twos.len();
    for u in f.vertices_with(0) {
        let inside = g.row(u).intersection_len(&twos);
        if inside == 0 {
            return Ok(Verdict::Violation {
                vertex: u,
                side: Side::Graph,
            });
        }
        // u itself is labelled 0, so every other 2 lies outside N[u]
        if mode == Mode::Grd && total == inside {
            return Ok(Verdict::Violation {
                vertex: u,
                side: Side::Complement,
            });
        }
    }
    Ok(Verdict::Valid)
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    n: usize,
    labels: Vec<u64>,
}

impl Serialize for RomanLabeling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LabelingJson {
            n: self.len(),
            labels: self.values.iter().map(|&v| v.into()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RomanLabeling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = LabelingJson::deserialize(d)?;
        if raw.labels.len() != raw.n {
            return Err(D::Error::custom(LabelingError::LengthMismatch {
                expected: raw.n,
                got: raw.labels.len(),
            }));
        }
        let mut values = Vec::with_capacity(raw.n);
        for (vertex, label) in raw.labels.into_iter().enumerate() {
            if label > 2 {
                return Err(D::Error::custom(LabelingError::BadLabel { vertex, label }));
            }
            values.push(label as u8);
        }
        Ok(Self { values })
    }
}
