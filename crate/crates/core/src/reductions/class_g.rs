//! The exact-4-cover gadget graph.
//!
//! Layout, in blocks: `A(0..m)`, `B(0..4l)`, `P`, `Q1`, `Q2` (each `4l`),
//! `R(i)` for even `i`, `S(i, 0..3)`, then `u, v, w, x`. Total `m + 30l + 4`.

use crate::cover::SetCoverInstance;
use crate::graph::GraphBuilder;
use crate::labeling::RomanLabeling;

use super::{Provenance, ReductionError, ReductionOutput, Role};

pub fn x4c_to_class_g(inst: &SetCoverInstance) -> Result<ReductionOutput, ReductionError> {
    if inst.ell() != 4 {
        return Err(ReductionError::BadInstance(format!(
            "expected 4-sets, got {}-sets",
            inst.ell()
        )));
    }
    let (l, m) = (inst.q(), inst.t());
    if l == 0 || m == 0 {
        return Err(ReductionError::BadInstance("need q >= 1 and at least one set".into()));
    }
    let k = 4 * l;
    let mut roles: Vec<Role> = (0..m).map(Role::A).collect();
    roles.extend((0..k).map(Role::B));
    roles.extend((0..k).map(Role::P));
    roles.extend((0..k).map(Role::Q1));
    roles.extend((0..k).map(Role::Q2));
    roles.extend((0..k).step_by(2).map(Role::R));
    roles.extend((0..k).flat_map(|i| (0..3).map(move |s| Role::S(i, s))));
    roles.extend([Role::U, Role::V, Role::W, Role::X]);

    let index: std::collections::HashMap<Role, usize> = roles.iter().enumerate().map(|(v, &r)| (r, v)).collect();
    let at = |r: Role| index[&r];
    let mut b = GraphBuilder::new(roles.len());
    for j in 0..m {
        for j2 in j + 1..m {
            b.add_edge(at(Role::A(j)), at(Role::A(j2)));
        }
        for &e in &inst.sets()[j] {
            b.add_edge(at(Role::A(j)), at(Role::B(e)));
        }
        for hub in [Role::V, Role::W, Role::X] {
            b.add_edge(at(hub), at(Role::A(j)));
        }
    }
    for hub in [Role::V, Role::W, Role::X] {
        b.add_edge(at(Role::U), at(hub));
    }
    for i in 0..k {
        let (p, q1, q2) = (at(Role::P(i)), at(Role::Q1(i)), at(Role::Q2(i)));
        b.add_edge(p, at(Role::B(i)));
        b.add_edge(p, q1);
        b.add_edge(p, q2);
        for s in 0..3 {
            for y in [p, q1, q2] {
                b.add_edge(at(Role::S(i, s)), y);
            }
        }
        if i % 2 == 0 {
            b.add_edge(at(Role::R(i)), q1);
            b.add_edge(at(Role::R(i)), q2);
        }
        b.add_edge(q2, at(Role::Q1((i + 1) % k)));
        for hub in [Role::V, Role::X] {
            for y in [p, q1, q2] {
                b.add_edge(at(hub), y);
            }
        }
    }
    let out = ReductionOutput {
        graph: b.build(),
        budget: 10 * l + 1,
        roles,
        source: Provenance::new("classG", inst, &[("l", l), ("m", m)]),
    };
    out.debug_check_roles();
    Ok(out)
}

/// Reads the 4-set collection back off the `A`–`B` adjacency.
pub fn class_g_sets(out: &ReductionOutput) -> Result<SetCoverInstance, ReductionError> {
    let l = out
        .source
        .param("l")
        .filter(|_| out.source.reduction == "classG")
        .ok_or_else(|| ReductionError::Precondition("not a class-G output".into()))?;
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
    SetCoverInstance::new(4, l, sets).map_err(|e| ReductionError::Precondition(e.to_string()))
}

fn require_cover(out: &ReductionOutput, cover: &[usize]) -> Result<(), ReductionError> {
    if !class_g_sets(out)?.is_exact_cover(cover) {
        return Err(ReductionError::Precondition(format!("{cover:?} is not an exact cover")));
    }
    Ok(())
}

/// 2 on the cover's `A` vertices and on every `Q1`, 1 on `u`. Weight `10l + 1`.
pub fn class_g_canonical_rdf(out: &ReductionOutput, cover: &[usize]) -> Result<RomanLabeling, ReductionError> {
    require_cover(out, cover)?;
    Ok(out.label_by_role(|r| match r {
        Role::A(j) if cover.contains(&j) => 2,
        Role::Q1(_) => 2,
        Role::U => 1,
        _ => 0,
    }))
}

/// Global labeling of the instance.
///
/// With a cover: 2 on `w`, the cover's `A` vertices and every `Q1`, weight
/// `10l + 2`. Without: 2 on `w` and on every `P` and `R`, weight `12l + 2`.
pub fn class_g_canonical_grdf(out: &ReductionOutput, cover: Option<&[usize]>) -> Result<RomanLabeling, ReductionError> {
    match cover {
        Some(cover) => {
            require_cover(out, cover)?;
            Ok(out.label_by_role(|r| match r {
                Role::A(j) if cover.contains(&j) => 2,
                Role::Q1(_) | Role::W => 2,
                _ => 0,
            }))
        }
        None => {
            class_g_sets(out)?;
            Ok(out.label_by_role(|r| match r {
                Role::W | Role::P(_) | Role::R(_) => 2,
                _ => 0,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{check_grdf, check_rdf};

    fn fig2() -> SetCoverInstance {
        SetCoverInstance::from_one_based(4, 2, &[&[1, 2, 3, 4], &[2, 4, 6, 7], &[3, 5, 6, 7], &[5, 6, 7, 8]]).unwrap()
    }

    #[test]
    fn sizes() {
        let out = x4c_to_class_g(&fig2()).unwrap();
        assert_eq!(out.graph.n(), 68);
        assert_eq!(out.budget, 21);
        assert_eq!(out.count_where(|r| matches!(r, Role::R(_))), 4);
        assert_eq!(out.count_where(|r| matches!(r, Role::S(..))), 24);
        assert_eq!(class_g_sets(&out).unwrap(), fig2());

        let tiny = SetCoverInstance::new(4, 1, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(x4c_to_class_g(&tiny).unwrap().graph.n(), 35);
    }

    #[test]
    fn local_structure() {
        let out = x4c_to_class_g(&fig2()).unwrap();
        let g = &out.graph;
        let at = |r| out.vertex_of(r).unwrap();
        assert!(g.has_edge(at(Role::Q2(7)), at(Role::Q1(0))));
        assert!(g.has_edge(at(Role::Q2(0)), at(Role::Q1(1))));
        assert!(!g.has_edge(at(Role::Q1(0)), at(Role::Q2(0))));
        assert_eq!(g.degree(at(Role::U)), 3);
        assert_eq!(g.degree(at(Role::W)), 4 + 1);
        assert_eq!(g.degree(at(Role::S(3, 1))), 3);
        assert_eq!(g.degree(at(Role::R(2))), 2);
        assert!(g.has_edge(at(Role::A(1)), at(Role::B(5))));
        assert!(!g.has_edge(at(Role::A(0)), at(Role::B(5))));
    }

    #[test]
    fn canonical_labelings() {
        let out = x4c_to_class_g(&fig2()).unwrap();
        let rdf = class_g_canonical_rdf(&out, &[0, 3]).unwrap();
        assert_eq!(rdf.weight(), 21);
        assert!(check_rdf(&out.graph, &rdf).unwrap().is_valid());
        let grdf = class_g_canonical_grdf(&out, Some(&[0, 3])).unwrap();
        assert_eq!(grdf.weight(), 22);
        assert!(check_grdf(&out.graph, &grdf).unwrap().is_valid());
        assert!(class_g_canonical_rdf(&out, &[0, 1]).is_err());
    }

    #[test]
    fn coverless_global_labeling_is_valid_but_heavier() {
        let no = SetCoverInstance::from_one_based(4, 2, &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 3, 7, 8]]).unwrap();
        let out = x4c_to_class_g(&no).unwrap();
        let f = class_g_canonical_grdf(&out, None).unwrap();
        assert!(check_grdf(&out.graph, &f).unwrap().is_valid());
        assert_eq!(f.weight(), 26);
    }
}
