//! Exact 3-cover to a split graph.
//!
//! Layout: `A(0..t)`, `dummy` (clique), `B(0..3q)` (independent), then the
//! pendants `P(0..=t)`, where `P(t)` hangs off the dummy.
//!
//! The budget separates covers from non-covers only when every element lies
//! in some set and `t >= q + 2`. With an unused element, its isolated vertex
//! labelled 2 serves every vertex as a non-neighbour; with `t <= q + 1`,
//! labelling the whole clique 2 already fits the budget.

use crate::cover::SetCoverInstance;
use crate::graph::GraphBuilder;
use crate::labeling::{Mode, RomanLabeling};

use super::{Provenance, ReductionError, ReductionOutput, Role};

pub fn x3c_to_split(inst: &SetCoverInstance) -> Result<ReductionOutput, ReductionError> {
    if inst.ell() != 3 {
        return Err(ReductionError::BadInstance(format!(
            "expected 3-sets, got {}-sets",
            inst.ell()
        )));
    }
    let (q, t) = (inst.q(), inst.t());
    let dummy = t;
    let b_of = |i: usize| t + 1 + i;
    let p_of = |j: usize| t + 1 + 3 * q + j;
    let mut b = GraphBuilder::new(2 * (t + 1) + 3 * q);
    for j in 0..=t {
        for j2 in j + 1..=t {
            b.add_edge(j, j2);
        }
        b.add_edge(j, p_of(j));
    }
    for (j, set) in inst.sets().iter().enumerate() {
        for &e in set {
            b.add_edge(j, b_of(e));
        }
    }
    let mut roles: Vec<Role> = (0..t).map(Role::A).collect();
    roles.push(Role::Dummy);
    roles.extend((0..3 * q).map(Role::B));
    roles.extend((0..=t).map(Role::P));
    let out = ReductionOutput {
        graph: b.build(),
        budget: q + t + 3,
        roles,
        source: Provenance::new("split", inst, &[("q", q), ("t", t)]),
    };
    out.debug_check_roles();
    debug_assert_eq!(out.vertex_of(Role::Dummy), Some(dummy));
    debug_assert!(out.graph.is_split().is_some());
    Ok(out)
}

fn sets_of(out: &ReductionOutput) -> Result<SetCoverInstance, ReductionError> {
    let q = out
        .source
        .param("q")
        .filter(|_| out.source.reduction == "split")
        .ok_or_else(|| ReductionError::Precondition("not a split-reduction output".into()))?;
    let mut a: Vec<(usize, usize)> = out
        .roles
        .iter()
        .enumerate()
        .filter_map(|(v, &r)| if let Role::A(j) = r { Some((j, v)) } else { None })
        .collect();
    a.sort_unstable();
    let sets = a
        .iter()
        .map(|&(_, v)| {
            out.graph
                .neighbors(v)
                .filter_map(|y| if let Role::B(i) = out.roles[y] { Some(i) } else { None })
                .collect()
        })
        .collect();
    SetCoverInstance::new(3, q, sets).map_err(|e| ReductionError::Precondition(e.to_string()))
}

/// Weight `q + t + 3`: 2 on the cover's `A` vertices and on the dummy's
/// pendant, 1 on the dummy and on the pendants of sets outside the cover.
pub fn split_labeling_from_cover(out: &ReductionOutput, cover: &[usize]) -> Result<RomanLabeling, ReductionError> {
    let inst = sets_of(out)?;
    if !inst.is_exact_cover(cover) {
        return Err(ReductionError::Precondition(format!("{cover:?} is not an exact cover")));
    }
    let t = inst.t();
    Ok(out.label_by_role(|r| match r {
        Role::A(j) if cover.contains(&j) => 2,
        Role::P(j) if j == t => 2,
        Role::Dummy => 1,
        Role::P(j) if !cover.contains(&j) => 1,
        _ => 0,
    }))
}

/// The sets whose clique vertex carries a 2, provided they form an exact cover.
pub fn cover_from_grdf_split(out: &ReductionOutput, f: &RomanLabeling) -> Result<Vec<usize>, ReductionError> {
    out.require_valid(f, Mode::Grd)?;
    let inst = sets_of(out)?;
    let cover: Vec<usize> = out
        .roles
        .iter()
        .enumerate()
        .filter_map(|(v, &r)| match r {
            Role::A(j) if f.get(v) == 2 => Some(j),
            _ => None,
        })
        .collect();
    if !inst.is_exact_cover(&cover) {
        return Err(ReductionError::ExtractionFailed(format!(
            "{cover:?} is not an exact cover"
        )));
    }
    Ok(cover)
}
