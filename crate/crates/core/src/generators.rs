//! Seeded instance generators.
//!
//! Every generator draws from a ChaCha8 stream keyed by the seed, so a
//! [`GenSpec`] always yields the same instance.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::SetCoverInstance;
use crate::graph::{Graph, GraphBuilder};

const PAIRING_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

fn param(msg: impl Into<String>) -> GenError {
    GenError::Parameter(msg.into())
}

/// The stream for `seed`; `stream` separates independent draws under one seed.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Cubic,
    Cograph,
    Erdos,
    X3c,
    X4c,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub q: usize,
    #[serde(default)]
    pub t: usize,
    /// Edge probability for `erdos`.
    #[serde(default = "half")]
    pub p: f64,
    pub seed: u64,
    #[serde(default)]
    pub planted: bool,
}

fn half() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Graph(Graph),
    Cover(SetCoverInstance),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generated {
    pub spec: GenSpec,
    /// Set when the cubic generator gave up on the pairing model.
    #[serde(default)]
    pub fallback: bool,
    pub instance: Instance,
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    let mut fallback = false;
    let instance = match spec.kind {
        GenKind::Cubic => {
            let (g, fb) = gen_cubic_flagged(spec.n, spec.seed)?;
            fallback = fb;
            Instance::Graph(g)
        }
        GenKind::Cograph => Instance::Graph(gen_cograph(spec.n, spec.seed)?),
        GenKind::Erdos => Instance::Graph(gen_erdos(spec.n, spec.p, spec.seed)?),
        GenKind::X3c | GenKind::X4c => {
            let ell = if spec.kind == GenKind::X3c { 3 } else { 4 };
            Instance::Cover(gen_exact_cover(ell, spec.q, spec.t, spec.seed, spec.planted)?)
        }
    };
    Ok(Generated {
        spec: spec.clone(),
        fallback,
        instance,
    })
}

pub fn gen_cubic(n: usize, seed: u64) -> Result<Graph, GenError> {
    gen_cubic_flagged(n, seed).map(|(g, _)| g)
}

/// Pairing model with rejection; after the retry cap, the Möbius ladder
/// `i ~ i±1, i+n/2` is returned and the flag is set.
pub fn gen_cubic_flagged(n: usize, seed: u64) -> Result<(Graph, bool), GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(param(format!("cubic graphs need even n >= 4, got {n}")));
    }
    let mut rng = rng_for(seed, 0);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'retry: for _ in 0..PAIRING_RETRIES {
        points.shuffle(&mut rng);
        let mut b = GraphBuilder::new(n);
        for pair in points.chunks(2) {
            let (u, w) = (pair[0], pair[1]);
            if u == w || b.has_edge(u, w) {
                continue 'retry;
            }
            b.add_edge(u, w);
        }
        return Ok((b.build(), false));
    }
    log::warn!("pairing model failed {PAIRING_RETRIES} times for n={n}; using the Möbius ladder");
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        b.add_edge(i, (i + 1) % n);
        b.add_edge(i, (i + n / 2) % n);
    }
    Ok((b.build(), true))
}

/// Random cograph on `n` vertices: recursively splits a shuffled vertex
/// list into 2..=size parts, alternating union and join by level, then
/// expands.
pub fn gen_cograph(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(param("cographs need n >= 1"));
    }
    let mut rng = rng_for(seed, 0);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(&mut rng);
    let mut b = GraphBuilder::new(n);
    let join_at_root = rng.gen_bool(0.5);
    split(&verts, join_at_root, &mut rng, &mut b);
    Ok(b.build())
}

fn split(verts: &[usize], join: bool, rng: &mut ChaCha8Rng, b: &mut GraphBuilder) {
    if verts.len() < 2 {
        return;
    }
    let parts = rng.gen_range(2..=verts.len());
    let mut cuts: Vec<usize> = sample(rng, verts.len() - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(verts.len());
    let mut start = 0;
    let mut blocks = Vec::with_capacity(parts);
    for &end in &cuts {
        blocks.push(&verts[start..end]);
        start = end;
    }
    if join {
        for (i, x) in blocks.iter().enumerate() {
            for y in &blocks[i + 1..] {
                for &u in *x {
                    for &w in *y {
                        b.add_edge(u, w);
                    }
                }
            }
        }
    }
    for block in blocks {
        split(block, !join, rng, b);
    }
}

/// `G(n, p)`.
pub fn gen_erdos(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(param(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = rng_for(seed, 0);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for w in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, w);
            }
        }
    }
    Ok(b.build())
}

/// Random bipartite graph with sides `0..a`, `a..a+b` and maximum degree 3.
pub fn gen_bipartite_max3(a: usize, b: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed, 0);
    let mut g = GraphBuilder::new(a + b);
    let mut deg = vec![0usize; a + b];
    let mut pairs: Vec<(usize, usize)> = (0..a).flat_map(|u| (a..a + b).map(move |w| (u, w))).collect();
    pairs.shuffle(&mut rng);
    for (u, w) in pairs {
        if deg[u] < 3 && deg[w] < 3 && rng.gen_bool(0.5) {
            g.add_edge(u, w);
            deg[u] += 1;
            deg[w] += 1;
        }
    }
    g.build()
}

/// Exact-cover instance with universe `0..ell*q` and `t` sets.
///
/// Planted instances hide a random partition into `q` sets among `t - q`
/// random distractors, in shuffled order.
pub fn gen_exact_cover(ell: usize, q: usize, t: usize, seed: u64, planted: bool) -> Result<SetCoverInstance, GenError> {
    if !(3..=4).contains(&ell) {
        return Err(param(format!("set size must be 3 or 4, got {ell}")));
    }
    if planted && t < q {
        return Err(param(format!("planted instance needs t >= q, got t={t}, q={q}")));
    }
    let universe = ell * q;
    if universe < ell && t > 0 {
        return Err(param("cannot draw sets from an empty universe"));
    }
    let mut rng = rng_for(seed, 0);
    let mut sets = Vec::with_capacity(t);
    if planted {
        let mut elems: Vec<usize> = (0..universe).collect();
        elems.shuffle(&mut rng);
        sets.extend(elems.chunks(ell).map(<[usize]>::to_vec));
    }
    while sets.len() < t {
        sets.push(sample(&mut rng, universe, ell).into_vec());
    }
    sets.shuffle(&mut rng);
    SetCoverInstance::new(ell, q, sets).map_err(|e| param(e.to_string()))
}
