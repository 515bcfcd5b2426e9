//! Exact ℓ-cover instances and a backtracking decision procedure.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("set size must be 3 or 4, got {0}")]
    BadEll(usize),
    #[error("set {index} has {got} distinct elements, expected {ell}")]
    WrongArity { index: usize, ell: usize, got: usize },
    #[error("set {index} contains element {element} outside universe of size {universe}")]
    OutOfUniverse {
        index: usize,
        element: usize,
        universe: usize,
    },
}

/// Universe `0..ell*q` and a collection of `ell`-element subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct SetCoverInstance {
    ell: usize,
    q: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawInstance {
    ell: usize,
    q: usize,
    sets: Vec<Vec<usize>>,
}

impl TryFrom<RawInstance> for SetCoverInstance {
    type Error = CoverError;
    fn try_from(r: RawInstance) -> Result<Self, CoverError> {
        SetCoverInstance::new(r.ell, r.q, r.sets)
    }
}

impl SetCoverInstance {
    /// Validates and stores each set sorted ascending.
    pub fn new(ell: usize, q: usize, sets: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        if !(3..=4).contains(&ell) {
            return Err(CoverError::BadEll(ell));
        }
        let universe = ell * q;
        let mut norm = Vec::with_capacity(sets.len());
        for (index, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.len() != ell {
                return Err(CoverError::WrongArity {
                    index,
                    ell,
                    got: s.len(),
                });
            }
            if let Some(&element) = s.iter().find(|&&e| e >= universe) {
                return Err(CoverError::OutOfUniverse {
                    index,
                    element,
                    universe,
                });
            }
            norm.push(s);
        }
        Ok(Self { ell, q, sets: norm })
    }

    /// Convenience for instances written with 1-based elements.
    pub fn from_one_based(ell: usize, q: usize, sets: &[&[usize]]) -> Result<Self, CoverError> {
        Self::new(
            ell,
            q,
            sets.iter()
                .map(|s| s.iter().map(|&e| e.wrapping_sub(1)).collect())
                .collect(),
        )
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn universe_size(&self) -> usize {
        self.ell * self.q
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn t(&self) -> usize {
        self.sets.len()
    }

    pub fn is_exact_cover(&self, cover: &[usize]) -> bool {
        let mut seen = BitSet::new(self.universe_size());
        for &j in cover {
            let Some(set) = self.sets.get(j) else {
                return false;
            };
            for &e in set {
                if !seen.insert(e) {
                    return false;
                }
            }
        }
        seen.len() == self.universe_size()
    }
}

/// Returns the indices (ascending) of an exact cover, or `None`.
///
/// Backtracks on the uncovered element with the fewest usable sets. Repeated
/// sets are searched once, under their first index.
pub fn solve_exact_cover(inst: &SetCoverInstance) -> Option<Vec<usize>> {
    let universe = inst.universe_size();
    let mut first_of: HashMap<&[usize], usize> = HashMap::new();
    for (j, s) in inst.sets.iter().enumerate() {
        first_of.entry(s.as_slice()).or_insert(j);
    }
    let mut distinct: Vec<usize> = first_of.into_values().collect();
    distinct.sort_unstable();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for &j in &distinct {
        for &e in &inst.sets[j] {
            containing[e].push(j);
        }
    }
    let mut covered = BitSet::new(universe);
    let mut chosen = Vec::new();
    if search(inst, &containing, &mut covered, &mut chosen) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

fn search(inst: &SetCoverInstance, containing: &[Vec<usize>], covered: &mut BitSet, chosen: &mut Vec<usize>) -> bool {
    let usable = |j: usize, covered: &BitSet| inst.sets[j].iter().all(|&e| !covered.contains(e));
    let mut pick: Option<(usize, usize)> = None;
    for e in (0..inst.universe_size()).filter(|&e| !covered.contains(e)) {
        let k = containing[e].iter().filter(|&&j| usable(j, covered)).count();
        if pick.is_none_or(|(_, best)| k < best) {
            pick = Some((e, k));
            if k == 0 {
                return false;
            }
        }
    }
    let Some((e, _)) = pick else {
        return true;
    };
    for &j in &containing[e] {
        if !usable(j, covered) {
            continue;
        }
        for &x in &inst.sets[j] {
            covered.insert(x);
        }
        chosen.push(j);
        if search(inst, containing, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &x in &inst.sets[j] {
            covered.remove(x);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn fig3() -> SetCoverInstance {
        SetCoverInstance::from_one_based(3, 2, &[&[1, 2, 4], &[2, 3, 4], &[3, 5, 6], &[4, 5, 6]]).unwrap()
    }

    #[test]
    fn covers_small_instances() {
        assert_eq!(solve_exact_cover(&fig3()), Some(vec![0, 2]));
        let fig2 =
            SetCoverInstance::from_one_based(4, 2, &[&[1, 2, 3, 4], &[2, 4, 6, 7], &[3, 5, 6, 7], &[5, 6, 7, 8]])
                .unwrap();
        assert_eq!(solve_exact_cover(&fig2), Some(vec![0, 3]));
        let empty = SetCoverInstance::new(4, 1, vec![]).unwrap();
        assert_eq!(solve_exact_cover(&empty), None);
    }

    #[test]
    fn q_zero_is_trivially_covered() {
        let inst = SetCoverInstance::new(3, 0, vec![]).unwrap();
        assert_eq!(solve_exact_cover(&inst), Some(vec![]));
    }

    #[test]
    fn duplicates_are_searched_once() {
        let inst = SetCoverInstance::new(3, 2, vec![vec![0, 1, 2], vec![2, 1, 0], vec![3, 4, 5]]).unwrap();
        assert_eq!(solve_exact_cover(&inst), Some(vec![0, 2]));
    }

    #[test]
    fn validation() {
        assert_eq!(SetCoverInstance::new(5, 1, vec![]), Err(CoverError::BadEll(5)));
        assert!(matches!(
            SetCoverInstance::new(3, 1, vec![vec![0, 0, 1]]),
            Err(CoverError::WrongArity { index: 0, .. })
        ));
        assert!(matches!(
            SetCoverInstance::new(3, 1, vec![vec![0, 1, 3]]),
            Err(CoverError::OutOfUniverse { element: 3, .. })
        ));
        let json = r#"{"ell":3,"q":1,"sets":[[2,0,1]]}"#;
        let inst: SetCoverInstance = serde_json::from_str(json).unwrap();
        assert_eq!(inst.sets(), &[vec![0, 1, 2]]);
        assert!(serde_json::from_str::<SetCoverInstance>(r#"{"ell":3,"q":1,"sets":[[0,1]]}"#).is_err());
    }

    fn brute_force(inst: &SetCoverInstance) -> bool {
        let t = inst.t();
        (0u32..1 << t).any(|mask| {
            let pick: Vec<usize> = (0..t).filter(|&j| mask >> j & 1 == 1).collect();
            inst.is_exact_cover(&pick)
        })
    }

    proptest! {
        #[test]
        fn agrees_with_subset_enumeration(
            q in 1usize..=3,
            raw in proptest::collection::vec(proptest::sample::subsequence((0..9).collect::<Vec<_>>(), 3), 0..8),
        ) {
            let universe = 3 * q;
            let sets: Vec<Vec<usize>> = raw.into_iter().filter(|s| s.iter().all(|&e| e < universe)).collect();
            let inst = SetCoverInstance::new(3, q, sets).unwrap();
            let found = solve_exact_cover(&inst);
            prop_assert_eq!(found.is_some(), brute_force(&inst));
            if let Some(c) = found {
                prop_assert!(inst.is_exact_cover(&c));
            }
        }
    }
}
