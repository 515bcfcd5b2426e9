//! Instance constructions from the hardness reductions, with the canonical
//! labelings of their forward directions and the extractors of their
//! backward directions.
//!
//! | construction | source | target question |
//! |---|---|---|
//! | [`x3c_to_x4c`] | exact 3-cover | exact 4-cover |
//! | [`ds3reg_to_class_f`] | dominating set on a cubic graph | γ_gR ≤ 2k+2 |
//! | [`x4c_to_class_g`] | exact 4-cover | γ_R ≤ 10l+1 |
//! | [`x3c_to_split`] | exact 3-cover | γ_gR ≤ q+t+3 on a split graph |
//! | [`ds_to_tree_gadget`] | dominating set | γ_gR ≤ 3n+k |
//!
//! Role indices are 0-based, except the copy number of a class-F vertex,
//! which runs 1..=3 alongside `v1`, `v2`, `v3`.

mod class_f;
mod class_g;
mod split;
mod tree_gadget;
mod x4c;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::Graph;
use crate::labeling::{check, LabelingError, Mode, RomanLabeling};

pub use class_f::{class_f_labeling_from_ds, ds3reg_to_class_f, ds_from_grdf_class_f, source_graph_of_class_f};
pub use class_g::{class_g_canonical_grdf, class_g_canonical_rdf, class_g_sets, x4c_to_class_g};
pub use split::{cover_from_grdf_split, split_labeling_from_cover, x3c_to_split};
pub use tree_gadget::{
    ds_from_grdf_tree_gadget, ds_to_tree_gadget, source_graph_of_tree_gadget, tree_gadget_labeling_from_ds,
};
pub use x4c::{x3c_to_x4c, x4c_cover_to_x3c};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("source graph is not 3-regular")]
    NotCubic,
    #[error("malformed source instance: {0}")]
    BadInstance(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("extraction failed: {0}")]
    ExtractionFailed(String),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

/// What a vertex of a reduced graph stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    A(usize),
    B(usize),
    P(usize),
    Q1(usize),
    Q2(usize),
    R(usize),
    S(usize, usize),
    U,
    V,
    W,
    X,
    V1,
    V2,
    V3,
    /// `Copy(i, u)`: vertex `u` of the source inside complement copy `i` (1..=3).
    Copy(usize, usize),
    GadgetA(usize),
    GadgetB(usize),
    GadgetC(usize),
    GadgetD(usize),
    GadgetE(usize),
    Original(usize),
    Dummy,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::A(i) => write!(f, "A({i})"),
            Role::B(i) => write!(f, "B({i})"),
            Role::P(i) => write!(f, "P({i})"),
            Role::Q1(i) => write!(f, "Q1({i})"),
            Role::Q2(i) => write!(f, "Q2({i})"),
            Role::R(i) => write!(f, "R({i})"),
            Role::S(i, k) => write!(f, "S({i},{k})"),
            Role::U => f.write_str("u"),
            Role::V => f.write_str("v"),
            Role::W => f.write_str("w"),
            Role::X => f.write_str("x"),
            Role::V1 => f.write_str("v1"),
            Role::V2 => f.write_str("v2"),
            Role::V3 => f.write_str("v3"),
            Role::Copy(i, u) => write!(f, "copy({i},{u})"),
            Role::GadgetA(i) => write!(f, "a({i})"),
            Role::GadgetB(i) => write!(f, "b({i})"),
            Role::GadgetC(i) => write!(f, "c({i})"),
            Role::GadgetD(i) => write!(f, "d({i})"),
            Role::GadgetE(i) => write!(f, "e({i})"),
            Role::Original(i) => write!(f, "original({i})"),
            Role::Dummy => f.write_str("dummy"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown role tag {0:?}")]
pub struct RoleParseError(String);

impl FromStr for Role {
    type Err = RoleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RoleParseError(s.to_string());
        let simple = match s {
            "u" => Some(Role::U),
            "v" => Some(Role::V),
            "w" => Some(Role::W),
            "x" => Some(Role::X),
            "v1" => Some(Role::V1),
            "v2" => Some(Role::V2),
            "v3" => Some(Role::V3),
            "dummy" => Some(Role::Dummy),
            _ => None,
        };
        if let Some(r) = simple {
            return Ok(r);
        }
        let (head, rest) = s.split_once('(').ok_or_else(err)?;
        let args: Vec<usize> = rest
            .strip_suffix(')')
            .ok_or_else(err)?
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        let one = |ctor: fn(usize) -> Role| match args[..] {
            [i] => Ok(ctor(i)),
            _ => Err(err()),
        };
        match head {
            "A" => one(Role::A),
            "B" => one(Role::B),
            "P" => one(Role::P),
            "Q1" => one(Role::Q1),
            "Q2" => one(Role::Q2),
            "R" => one(Role::R),
            "a" => one(Role::GadgetA),
            "b" => one(Role::GadgetB),
            "c" => one(Role::GadgetC),
            "d" => one(Role::GadgetD),
            "e" => one(Role::GadgetE),
            "original" => one(Role::Original),
            "S" | "copy" => match args[..] {
                [i, k] if head == "S" => Ok(Role::S(i, k)),
                [i, u] => Ok(Role::Copy(i, u)),
                _ => Err(err()),
            },
            _ => Err(err()),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Role {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which construction produced an output, from what.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub reduction: String,
    /// SHA-256 of the source instance's JSON encoding, hex.
    pub digest: String,
    pub params: BTreeMap<String, usize>,
}

impl Provenance {
    fn new<T: Serialize>(reduction: &str, source: &T, params: &[(&str, usize)]) -> Self {
        let bytes = serde_json::to_vec(source).expect("source serializes");
        Self {
            reduction: reduction.to_string(),
            digest: hex::encode(Sha256::digest(&bytes)),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn param(&self, key: &str) -> Option<usize> {
        self.params.get(key).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub budget: usize,
    pub roles: Vec<Role>,
    pub source: Provenance,
}

impl ReductionOutput {
    pub fn vertex_of(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|&r| r == role)
    }

    pub fn vertices_where(&self, pred: impl Fn(Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&u| pred(self.roles[u])).collect()
    }

    pub fn count_where(&self, pred: impl Fn(Role) -> bool) -> usize {
        self.roles.iter().filter(|&&r| pred(r)).count()
    }

    /// Labels every vertex by its role.
    pub fn label_by_role(&self, label: impl Fn(Role) -> u8) -> RomanLabeling {
        RomanLabeling::new(self.roles.iter().map(|&r| label(r)).collect()).expect("labels within 0..=2")
    }

    fn require_valid(&self, f: &RomanLabeling, mode: Mode) -> Result<(), ReductionError> {
        let verdict = check(&self.graph, f, mode)?;
        if !verdict.is_valid() {
            return Err(ReductionError::Precondition(format!(
                "labeling is not a valid {mode}: {verdict:?}"
            )));
        }
        if f.weight() > self.budget {
            return Err(ReductionError::Precondition(format!(
                "labeling weight {} exceeds budget {}",
                f.weight(),
                self.budget
            )));
        }
        Ok(())
    }

    fn debug_check_roles(&self) {
        debug_assert_eq!(self.roles.len(), self.graph.n());
        debug_assert_eq!(
            self.roles.iter().collect::<std::collections::HashSet<_>>().len(),
            self.roles.len(),
            "roles must be distinct"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_role() -> impl Strategy<Value = Role> {
        let i = 0usize..50;
        prop_oneof![
            i.clone().prop_map(Role::A),
            i.clone().prop_map(Role::B),
            i.clone().prop_map(Role::P),
            i.clone().prop_map(Role::Q1),
            i.clone().prop_map(Role::Q2),
            i.clone().prop_map(Role::R),
            (i.clone(), 0usize..3).prop_map(|(a, b)| Role::S(a, b)),
            (1usize..=3, i.clone()).prop_map(|(a, b)| Role::Copy(a, b)),
            i.clone().prop_map(Role::GadgetA),
            i.clone().prop_map(Role::GadgetB),
            i.clone().prop_map(Role::GadgetC),
            i.clone().prop_map(Role::GadgetD),
            i.clone().prop_map(Role::GadgetE),
            i.prop_map(Role::Original),
            Just(Role::U),
            Just(Role::V),
            Just(Role::W),
            Just(Role::X),
            Just(Role::V1),
            Just(Role::V2),
            Just(Role::V3),
            Just(Role::Dummy),
        ]
    }

    proptest! {
        #[test]
        fn role_tags_round_trip(r in arb_role()) {
            prop_assert_eq!(r.to_string().parse::<Role>().unwrap(), r);
        }
    }

    #[test]
    fn bad_tags() {
        for s in ["", "Z(1)", "A(1,2)", "S(1)", "A(x)", "A(1"] {
            assert!(s.parse::<Role>().is_err(), "{s}");
        }
    }
}
