//! Cotree construction for cographs and the bottom-up computation of the
//! Roman and global Roman domination numbers on the cotree.
//!
//! Every node carries the parameters of its own graph *and* of its
//! complement, since a join in the graph is a union in the complement and
//! the global number of a graph equals that of its complement.

use serde::{Deserialize, Serialize};

use crate::graph::{ComponentProfile, Graph, GraphBuilder};
use crate::labeling::{check_grdf, Mode, RomanLabeling};
use crate::solver::{decide, Decision};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CographError {
    #[error("not a cograph: vertices {0:?} induce a graph that is connected in both it and its complement")]
    NotACograph(Vec<usize>),
    #[error("malformed cotree: {0}")]
    Malformed(String),
    #[error("cotree of an empty graph")]
    Empty,
    #[error("cotree value {value} not confirmed by search: {detail}")]
    WitnessMismatch { value: usize, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    Union,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub n: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub gamma_r: usize,
    /// Roman domination number of the complement of this node's graph.
    pub gamma_r_co: usize,
    pub profile: ComponentProfile,
    pub profile_co: ComponentProfile,
    pub gamma_gr: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoTree {
    pub kind: NodeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CoTree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<Annotation>,
}

impl CoTree {
    pub fn leaf(vertex: usize) -> Self {
        Self {
            kind: NodeKind::Leaf,
            vertex: Some(vertex),
            children: vec![],
            annotation: None,
        }
    }

    pub fn internal(kind: NodeKind, children: Vec<CoTree>) -> Self {
        Self {
            kind,
            vertex: None,
            children,
            annotation: None,
        }
    }

    /// Leaf vertex ids in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self.kind {
            NodeKind::Leaf => out.extend(self.vertex),
            _ => self.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Pre-order traversal with depths.
    pub fn nodes(&self) -> Vec<(usize, &CoTree)> {
        let mut out = Vec::new();
        let mut stack = vec![(0, self)];
        while let Some((d, t)) = stack.pop() {
            out.push((d, t));
            stack.extend(t.children.iter().rev().map(|c| (d + 1, c)));
        }
        out
    }

    /// Checks leaf/internal shape and canonical alternation of node kinds.
    pub fn validate(&self) -> Result<(), CographError> {
        let bad = |m: &str| Err(CographError::Malformed(m.to_string()));
        match self.kind {
            NodeKind::Leaf => {
                if self.vertex.is_none() || !self.children.is_empty() {
                    return bad("leaf must have a vertex and no children");
                }
            }
            kind => {
                if self.vertex.is_some() {
                    return bad("internal node carries a vertex");
                }
                if self.children.len() < 2 {
                    return bad("internal node with fewer than two children");
                }
                if self.children.iter().any(|c| c.kind == kind) {
                    return bad("child has the same kind as its parent");
                }
                for c in &self.children {
                    c.validate()?;
                }
            }
        }
        Ok(())
    }

    /// The graph this tree represents, on vertices `0..leaves`.
    pub fn expand(&self) -> Result<Graph, CographError> {
        self.validate()?;
        let leaves = self.leaves();
        let n = leaves.len();
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(CographError::Malformed(format!(
                    "leaf ids must be a permutation of 0..{n}"
                )));
            }
        }
        let mut b = GraphBuilder::new(n);
        self.add_join_edges(&mut b);
        Ok(b.build())
    }

    /// The graph of this subtree on its own leaves, relabelled by rank.
    pub fn node_graph(&self) -> Graph {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        let mut b = GraphBuilder::new(leaves.len());
        let rank = |v: usize| leaves.binary_search(&v).expect("leaf present");
        let mut full = GraphBuilder::new(leaves.last().map_or(0, |&m| m + 1));
        self.add_join_edges(&mut full);
        let full = full.build();
        for (u, v) in full.edges() {
            b.add_edge(rank(u), rank(v));
        }
        b.build()
    }

    fn add_join_edges(&self, b: &mut GraphBuilder) {
        if self.kind == NodeKind::Join {
            let parts: Vec<Vec<usize>> = self.children.iter().map(CoTree::leaves).collect();
            for (i, a) in parts.iter().enumerate() {
                for bpart in &parts[i + 1..] {
                    for &u in a {
                        for &v in bpart {
                            b.add_edge(u, v);
                        }
                    }
                }
            }
        }
        for c in &self.children {
            c.add_join_edges(b);
        }
    }

    pub fn annotation(&self) -> Option<&Annotation> {
        self.annotation.as_ref()
    }
}

/// Builds the canonical cotree by splitting into components, or into
/// co-components when the graph is connected.
pub fn build_cotree(g: &Graph) -> Result<CoTree, CographError> {
    if g.n() == 0 {
        return Err(CographError::Empty);
    }
    let all: Vec<usize> = (0..g.n()).collect();
    build(g, &all)
}

fn build(g: &Graph, verts: &[usize]) -> Result<CoTree, CographError> {
    if verts.len() == 1 {
        return Ok(CoTree::leaf(verts[0]));
    }
    let sub = g.induced(verts);
    let (kind, parts) = {
        let comps = sub.components();
        if comps.parts.len() > 1 {
            (NodeKind::Union, comps.parts)
        } else {
            let co = sub.complement().components();
            if co.parts.len() > 1 {
                (NodeKind::Join, co.parts)
            } else {
                return Err(CographError::NotACograph(verts.to_vec()));
            }
        }
    };
    let children = parts
        .iter()
        .map(|p| {
            let vs: Vec<usize> = p.iter().map(|&i| verts[i]).collect();
            build(g, &vs)
        })
        .collect::<Result<_, _>>()?;
    Ok(CoTree::internal(kind, children))
}

/// Roman domination number of a connected cograph from its order and
/// maximum degree: a universal vertex gives 2, a vertex missing exactly one
/// other gives 3 (2 on it, 1 on the missed vertex), anything else needs two
/// 2s, one on each side of the top join.
pub fn gamma_r_connected(n: usize, max_degree: usize) -> usize {
    debug_assert!(n >= 1 && max_degree < n);
    if n == 1 {
        1
    } else if max_degree + 1 == n {
        2
    } else if max_degree + 2 == n {
        3
    } else {
        4
    }
}

/// Global Roman domination number of a disconnected graph (or a single
/// component of order 1) from its component profile and Roman number.
pub fn union_rule(profile: ComponentProfile, gamma_r: usize) -> usize {
    let ComponentProfile { k1, k2, k3 } = profile;
    assert!(
        k1 > 0 || k2 + k3 != 1,
        "union rule applied to a connected graph with profile {profile:?}"
    );
    if k3 == 1 && k2 == 0 && k1 >= 1 {
        gamma_r + 1
    } else {
        gamma_r
    }
}

/// Fills in the annotation of every node, bottom-up.
pub fn annotate(tree: &CoTree) -> Result<CoTree, CographError> {
    tree.validate()?;
    Ok(annotate_node(tree))
}

fn annotate_node(t: &CoTree) -> CoTree {
    let children: Vec<CoTree> = t.children.iter().map(annotate_node).collect();
    let ann: Vec<Annotation> = children.iter().map(|c| c.annotation.expect("annotated")).collect();
    let a = match t.kind {
        NodeKind::Leaf => Annotation {
            n: 1,
            max_degree: 0,
            min_degree: 0,
            gamma_r: 1,
            gamma_r_co: 1,
            profile: ComponentProfile::single_component(1),
            profile_co: ComponentProfile::single_component(1),
            gamma_gr: 1,
        },
        NodeKind::Union => {
            let n: usize = ann.iter().map(|a| a.n).sum();
            let max_degree = ann.iter().map(|a| a.max_degree).max().unwrap_or(0);
            let min_degree = ann.iter().map(|a| a.min_degree).min().unwrap_or(0);
            let profile = ann.iter().fold(ComponentProfile::default(), |p, a| p + a.profile);
            let gamma_r = ann.iter().map(|a| a.gamma_r).sum();
            Annotation {
                n,
                max_degree,
                min_degree,
                gamma_r,
                gamma_r_co: gamma_r_connected(n, n - 1 - min_degree),
                profile,
                profile_co: ComponentProfile::single_component(n),
                gamma_gr: union_rule(profile, gamma_r),
            }
        }
        NodeKind::Join => {
            let n: usize = ann.iter().map(|a| a.n).sum();
            let max_degree = ann.iter().map(|a| a.max_degree + (n - a.n)).max().unwrap_or(0);
            let min_degree = ann.iter().map(|a| a.min_degree + (n - a.n)).min().unwrap_or(0);
            let profile_co = ann.iter().fold(ComponentProfile::default(), |p, a| p + a.profile_co);
            let gamma_r_co = ann.iter().map(|a| a.gamma_r_co).sum();
            let gamma_gr = if ann.iter().all(|a| a.n >= 2) {
                ann.iter().map(|a| a.gamma_r_co).sum()
            } else {
                // same value as the complement, which is a disjoint union
                union_rule(profile_co, gamma_r_co)
            };
            Annotation {
                n,
                max_degree,
                min_degree,
                gamma_r: gamma_r_connected(n, max_degree),
                gamma_r_co,
                profile: ComponentProfile::single_component(n),
                profile_co,
                gamma_gr,
            }
        }
    };
    CoTree {
        kind: t.kind,
        vertex: t.vertex,
        children,
        annotation: Some(a),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CographValues {
    pub gamma_r: usize,
    pub gamma_gr: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RomanLabeling>,
}

/// γ_R and γ_gR of a cograph from its annotated cotree. When the graph has
/// at most `witness_cap` vertices, a minimum global labeling is also found
/// by bounded search and checked.
pub fn gamma_gr_cograph(g: &Graph, witness_cap: Option<usize>) -> Result<CographValues, CographError> {
    if g.n() == 0 {
        return Ok(CographValues {
            gamma_r: 0,
            gamma_gr: 0,
            witness: witness_cap.map(|_| RomanLabeling::zeros(0)),
        });
    }
    let tree = annotate(&build_cotree(g)?)?;
    let root = tree.annotation.expect("annotated root");
    let witness = match witness_cap {
        Some(cap) if g.n() <= cap => {
            let mismatch = |detail: &str| CographError::WitnessMismatch {
                value: root.gamma_gr,
                detail: detail.to_string(),
            };
            let f = match decide(g, Mode::Grd, root.gamma_gr) {
                Decision::Yes(f) => f,
                Decision::No => return Err(mismatch("no labeling of that weight")),
            };
            if !check_grdf(g, &f).expect("lengths match").is_valid() {
                return Err(mismatch("witness failed the global check"));
            }
            Some(f)
        }
        _ => None,
    };
    Ok(CographValues {
        gamma_r: root.gamma_r,
        gamma_gr: root.gamma_gr,
        witness,
    })
}
