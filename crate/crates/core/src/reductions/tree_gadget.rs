//! Attaches a five-vertex tree to every vertex of the source.
//!
//! Layout: `original(i)` is `i`; `a, b, c, d, e` of `i` follow in blocks of
//! `n`. Edges per `i`: `v–a`, `v–e`, `a–b`, `b–c`, `b–d`.

use crate::graph::{Graph, GraphBuilder};
use crate::labeling::{Mode, RomanLabeling};
use crate::solver::is_dominating_set;

use super::{Provenance, ReductionError, ReductionOutput, Role};

pub fn ds_to_tree_gadget(g: &Graph, k: usize) -> Result<ReductionOutput, ReductionError> {
    let n = g.n();
    if n == 0 {
        return Err(ReductionError::BadInstance("empty source graph".into()));
    }
    let mut b = GraphBuilder::new(6 * n);
    for (u, w) in g.edges() {
        b.add_edge(u, w);
    }
    let blk = |k: usize, i: usize| k * n + i;
    for i in 0..n {
        b.add_edge(i, blk(1, i));
        b.add_edge(i, blk(5, i));
        b.add_edge(blk(1, i), blk(2, i));
        b.add_edge(blk(2, i), blk(3, i));
        b.add_edge(blk(2, i), blk(4, i));
    }
    let ctors: [fn(usize) -> Role; 6] = [
        Role::Original,
        Role::GadgetA,
        Role::GadgetB,
        Role::GadgetC,
        Role::GadgetD,
        Role::GadgetE,
    ];
    let roles = ctors.iter().flat_map(|c| (0..n).map(c)).collect();
    let out = ReductionOutput {
        graph: b.build(),
        budget: 3 * n + k,
        roles,
        source: Provenance::new("treeGadget", g, &[("n", n), ("k", k)]),
    };
    out.debug_check_roles();
    Ok(out)
}

fn originals(out: &ReductionOutput) -> Result<Vec<usize>, ReductionError> {
    if out.source.reduction != "treeGadget" {
        return Err(ReductionError::Precondition("not a tree-gadget output".into()));
    }
    let verts = out.vertices_where(|r| matches!(r, Role::Original(_)));
    let mut ordered = vec![0; verts.len()];
    for v in verts {
        let Role::Original(i) = out.roles[v] else {
            unreachable!()
        };
        ordered[i] = v;
    }
    Ok(ordered)
}

pub fn source_graph_of_tree_gadget(out: &ReductionOutput) -> Result<Graph, ReductionError> {
    Ok(out.graph.induced(&originals(out)?))
}

/// 2 on every `b` and on the source vertices in `s`, 1 on `e(i)` for `i`
/// outside `s`. Weight `3n + |s|`.
pub fn tree_gadget_labeling_from_ds(out: &ReductionOutput, s: &[usize]) -> Result<RomanLabeling, ReductionError> {
    let g = source_graph_of_tree_gadget(out)?;
    if !is_dominating_set(&g, s) {
        return Err(ReductionError::Precondition(format!(
            "{s:?} does not dominate the source graph"
        )));
    }
    Ok(out.label_by_role(|r| match r {
        Role::GadgetB(_) => 2,
        Role::Original(i) if s.contains(&i) => 2,
        Role::GadgetE(i) if !s.contains(&i) => 1,
        _ => 0,
    }))
}

/// Every gadget costs at least 3, and at least 4 once `v(i) >= 1`,
/// `a(i) = 2` or `e(i) = 2`; those `i` form a dominating set of size at
/// most `budget - 3n`.
pub fn ds_from_grdf_tree_gadget(out: &ReductionOutput, f: &RomanLabeling) -> Result<Vec<usize>, ReductionError> {
    out.require_valid(f, Mode::Grd)?;
    let ord = originals(out)?;
    let n = ord.len();
    let mut a = vec![0u8; n];
    let mut e = vec![0u8; n];
    for (v, &r) in out.roles.iter().enumerate() {
        match r {
            Role::GadgetA(i) => a[i] = f.get(v),
            Role::GadgetE(i) => e[i] = f.get(v),
            _ => {}
        }
    }
    let s: Vec<usize> = (0..n)
        .filter(|&i| f.get(ord[i]) >= 1 || a[i] == 2 || e[i] == 2)
        .collect();
    let limit = out.budget.saturating_sub(3 * n);
    if !is_dominating_set(&out.graph.induced(&ord), &s) || s.len() > limit {
        return Err(ReductionError::ExtractionFailed(format!(
            "projected set {s:?} is not a dominating set of size at most {limit}"
        )));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::check_grdf;
    use crate::solver::{decide, solve_ds, Decision};

    #[test]
    fn shape_and_round_trip() {
        let g = Graph::path(4);
        let out = ds_to_tree_gadget(&g, 2).unwrap();
        assert_eq!(out.graph.n(), 24);
        assert_eq!(out.budget, 14);
        assert_eq!(out.graph.m(), 3 + 5 * 4);
        assert_eq!(source_graph_of_tree_gadget(&out).unwrap(), g);
        let f = tree_gadget_labeling_from_ds(&out, &[1, 2]).unwrap();
        assert_eq!(f.weight(), 14);
        assert!(check_grdf(&out.graph, &f).unwrap().is_valid());
        assert_eq!(ds_from_grdf_tree_gadget(&out, &f).unwrap(), vec![1, 2]);
    }

    #[test]
    fn solver_witness_projects() {
        for g in [Graph::path(4), Graph::star(4), Graph::path(3)] {
            let gamma = solve_ds(&g).optimum;
            let out = ds_to_tree_gadget(&g, gamma).unwrap();
            let Decision::Yes(f) = decide(&out.graph, Mode::Grd, out.budget) else {
                panic!("forward direction must give a yes");
            };
            let s = ds_from_grdf_tree_gadget(&out, &f).unwrap();
            assert!(s.len() <= gamma);
            if gamma > 1 {
                let out = ds_to_tree_gadget(&g, gamma - 1).unwrap();
                assert_eq!(decide(&out.graph, Mode::Grd, out.budget), Decision::No);
            }
        }
    }

    #[test]
    fn rejects_non_dominating() {
        let out = ds_to_tree_gadget(&Graph::path(4), 1).unwrap();
        assert!(tree_gadget_labeling_from_ds(&out, &[0]).is_err());
    }
}
