use crate::cover::SetCoverInstance;

use super::ReductionError;

/// Pads every 3-set with each of `q` fresh dummy elements `3q..4q`.
///
/// Output set `i*q + j` is `C_i ∪ {3q + j}`.
pub fn x3c_to_x4c(inst: &SetCoverInstance) -> Result<SetCoverInstance, ReductionError> {
    if inst.ell() != 3 {
        return Err(ReductionError::BadInstance(format!(
            "expected 3-sets, got {}-sets",
            inst.ell()
        )));
    }
    let q = inst.q();
    let sets = inst
        .sets()
        .iter()
        .flat_map(|s| {
            (0..q).map(move |j| {
                let mut padded = s.clone();
                padded.push(3 * q + j);
                padded
            })
        })
        .collect();
    SetCoverInstance::new(4, q, sets).map_err(|e| ReductionError::BadInstance(e.to_string()))
}

/// Maps a cover of the padded instance back to the 3-sets it was built from.
pub fn x4c_cover_to_x3c(source: &SetCoverInstance, cover: &[usize]) -> Vec<usize> {
    let q = source.q().max(1);
    let mut out: Vec<usize> = cover.iter().map(|&k| k / q).collect();
    out.sort_unstable();
    out
}
