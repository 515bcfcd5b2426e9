//! Three complement copies of a cubic graph plus three apex vertices.
//!
//! Layout: `Copy(i, u)` is vertex `(i-1)*n + u`; `v1, v2, v3` are `3n..3n+3`.
//! Two copy vertices `u_i`, `w_j` (any copies, `u != w`) are adjacent iff
//! `uw` is a non-edge of the source, and the three copies of one source
//! vertex are pairwise non-adjacent false twins.

use crate::graph::{Graph, GraphBuilder};
use crate::labeling::{Mode, RomanLabeling};
use crate::solver::is_dominating_set;

use super::{Provenance, ReductionError, ReductionOutput, Role};

pub fn ds3reg_to_class_f(g: &Graph, k: usize) -> Result<ReductionOutput, ReductionError> {
    let n = g.n();
    if n < 4 || g.degree_stats().ok().and_then(|s| s.regular) != Some(3) {
        return Err(ReductionError::NotCubic);
    }
    let copy = |i: usize, u: usize| (i - 1) * n + u;
    let mut b = GraphBuilder::new(3 * n + 3);
    for i in 1..=3 {
        for j in i..=3 {
            for u in 0..n {
                for w in 0..n {
                    if u != w && !g.has_edge(u, w) && (i < j || u < w) {
                        b.add_edge(copy(i, u), copy(j, w));
                    }
                }
            }
        }
    }
    for apex in 3 * n..3 * n + 3 {
        for x in 0..3 * n {
            b.add_edge(apex, x);
        }
    }
    let mut roles: Vec<Role> = (1..=3).flat_map(|i| (0..n).map(move |u| Role::Copy(i, u))).collect();
    roles.extend([Role::V1, Role::V2, Role::V3]);
    let out = ReductionOutput {
        graph: b.build(),
        budget: 2 * k + 2,
        roles,
        source: Provenance::new("classF", g, &[("n", n), ("k", k)]),
    };
    out.debug_check_roles();
    Ok(out)
}

/// Recovers the cubic source graph: the complement of copy 1.
pub fn source_graph_of_class_f(out: &ReductionOutput) -> Result<Graph, ReductionError> {
    let verts = out.vertices_where(|r| matches!(r, Role::Copy(1, _)));
    if verts.is_empty() || out.source.reduction != "classF" {
        return Err(ReductionError::Precondition("not a class-F output".into()));
    }
    let mut ordered = vec![0; verts.len()];
    for v in verts {
        let Role::Copy(1, u) = out.roles[v] else { unreachable!() };
        ordered[u] = v;
    }
    Ok(out.graph.induced(&ordered).complement())
}

/// 2 on the first copy of every vertex of `s` and on `v1`, 0 elsewhere.
pub fn class_f_labeling_from_ds(out: &ReductionOutput, s: &[usize]) -> Result<RomanLabeling, ReductionError> {
    let g = source_graph_of_class_f(out)?;
    if !is_dominating_set(&g, s) {
        return Err(ReductionError::Precondition(format!(
            "{s:?} does not dominate the source graph"
        )));
    }
    Ok(out.label_by_role(|r| match r {
        Role::V1 => 2,
        Role::Copy(1, u) if s.contains(&u) => 2,
        _ => 0,
    }))
}

/// Projects a global labeling within budget to a dominating set of size at
/// most `(budget - 2) / 2`.
///
/// A source vertex is taken when one of its copies is labelled 2, or when
/// all three copies are labelled at least 1 (which costs more than a single
/// 2 would). Any other vertex has a 0-labelled copy, whose label-2
/// non-neighbour must be a copy of one of its source neighbours.
pub fn ds_from_grdf_class_f(out: &ReductionOutput, f: &RomanLabeling) -> Result<Vec<usize>, ReductionError> {
    out.require_valid(f, Mode::Grd)?;
    let g = source_graph_of_class_f(out)?;
    let n = g.n();
    let mut copies = vec![[0u8; 3]; n];
    for (v, &r) in out.roles.iter().enumerate() {
        if let Role::Copy(i, u) = r {
            copies[u][i - 1] = f.get(v);
        }
    }
    let s: Vec<usize> = (0..n)
        .filter(|&u| copies[u].contains(&2) || copies[u].iter().all(|&l| l >= 1))
        .collect();
    let limit = out.budget.saturating_sub(2) / 2;
    if !is_dominating_set(&g, &s) || s.len() > limit {
        return Err(ReductionError::ExtractionFailed(format!(
            "projected set {s:?} is not a dominating set of size at most {limit}"
        )));
    }
    Ok(s)
}
