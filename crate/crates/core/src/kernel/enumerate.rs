//! Orderly generation of kernel diagrams of fixed excess.
//!
//! Diagrams are grown along the breadth-first traversal used by
//! [`KernelDiagram::canonical_code`]: the first unmatched half-edge (in
//! vertex then position order) is either paired with another unmatched
//! half-edge or with the arrival half-edge of a new vertex. Kernels have no
//! nontrivial automorphisms, so every kernel arises from exactly one
//! generation path and no deduplication is needed.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{ChainType, EdgeClass, EdgeStats, KernelDiagram, VertexKind, UNSET};
use crate::error::{Error, Result};

/// Largest excess for which kernel catalogs are produced.
pub const MAX_DELTA: usize = 3;

struct Gen<'f> {
    q: usize,
    dominant: bool,
    kinds: Vec<VertexKind>,
    offset: Vec<usize>,
    color: Vec<usize>,
    vertex: Vec<u32>,
    twin: Vec<u32>,
    budget: usize,
    white_sets: &'f [Vec<usize>],
}

impl Gen<'_> {
    fn push_vertex(&mut self, kind: VertexKind, colors: &[usize]) {
        let v = self.kinds.len() as u32;
        self.kinds.push(kind);
        self.offset.push(self.color.len());
        for &c in colors {
            self.color.push(c);
            self.vertex.push(v);
            self.twin.push(UNSET);
        }
    }

    fn pop_vertex(&mut self) {
        self.kinds.pop();
        let start = self.offset.pop().unwrap();
        self.color.truncate(start);
        self.vertex.truncate(start);
        self.twin.truncate(start);
    }

    fn link(&mut self, a: usize, b: usize) {
        self.twin[a] = b as u32;
        self.twin[b] = a as u32;
    }

    fn rec(&mut self, from: usize, visit: &mut dyn FnMut(&Gen)) {
        let Some(h) = (from..self.twin.len()).find(|&h| self.twin[h] == UNSET) else {
            if self.budget == 0 {
                visit(self);
            }
            return;
        };
        for h2 in h + 1..self.twin.len() {
            if self.twin[h2] == UNSET {
                self.link(h, h2);
                self.rec(h + 1, visit);
                self.twin[h] = UNSET;
                self.twin[h2] = UNSET;
            }
        }
        if self.budget == 0 {
            return;
        }
        let max_deg = if self.dominant { 3 } else { self.budget + 2 };
        for c in 1..=self.q {
            for d in 3..=max_deg {
                let first = self.color.len();
                self.push_vertex(VertexKind::Colored(c), &vec![c; d]);
                self.link(h, first);
                self.budget -= d - 2;
                self.rec(h + 1, visit);
                self.budget += d - 2;
                self.twin[h] = UNSET;
                self.pop_vertex();
            }
        }
        let sets = self.white_sets;
        for set in sets.iter().filter(|s| s.len() <= max_deg) {
            for (pos, _) in set.iter().enumerate() {
                let first = self.color.len();
                self.push_vertex(VertexKind::White, set);
                self.link(h, first + pos);
                self.budget -= set.len() - 2;
                self.rec(h + 1, visit);
                self.budget += set.len() - 2;
                self.twin[h] = UNSET;
                self.pop_vertex();
            }
        }
    }

    fn to_kernel(&self) -> KernelDiagram {
        let nv = self.kinds.len();
        let rotation = (0..nv)
            .map(|v| {
                let end = self.offset.get(v + 1).copied().unwrap_or(self.color.len());
                (self.offset[v] as u32..end as u32).collect()
            })
            .collect();
        KernelDiagram {
            q: self.q,
            kinds: self.kinds.clone(),
            rotation,
            he_vertex: self.vertex.clone(),
            he_color: self.color.clone(),
            he_twin: self.twin.clone(),
        }
    }

    fn stats(&self) -> EdgeStats {
        let mut s = EdgeStats {
            white_vertices: self.kinds.iter().filter(|k| k.is_white()).count(),
            colored_vertices: self.kinds.iter().filter(|k| !k.is_white()).count(),
            edges: self.twin.len() / 2,
            ..EdgeStats::default()
        };
        for h in 0..self.twin.len() {
            let t = self.twin[h] as usize;
            if h < t {
                s.bump(ChainType {
                    class: EdgeClass::of(self.kinds[self.vertex[h] as usize], self.kinds[self.vertex[t] as usize]),
                    equal: self.color[h] == self.color[t],
                });
            }
        }
        s
    }
}

fn color_sets(q: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..1 << q)
        .filter(|m| (min..=max).contains(&(m.count_ones() as usize)))
        .map(|m| (1..=q).filter(|c| m >> (c - 1) & 1 == 1).collect())
        .collect()
}

fn check_args(q: usize, delta: usize) -> Result<()> {
    if q < 3 {
        return Err(Error::UnsupportedQ { q, min: 3 });
    }
    if delta > MAX_DELTA {
        return Err(Error::UnsupportedDelta { delta, max: MAX_DELTA });
    }
    Ok(())
}

/// Root color sets to start from; each one is an independent shard.
fn root_sets(q: usize, delta: usize, dominant: bool) -> Vec<Vec<usize>> {
    if delta == 0 {
        vec![Vec::new()]
    } else if dominant {
        color_sets(q, 1, 1)
    } else {
        color_sets(q, 1, q.min(2 * delta))
    }
}

fn run_shard(q: usize, delta: usize, dominant: bool, root: &[usize], visit: &mut dyn FnMut(&Gen)) {
    let white_sets = color_sets(q, 3, q);
    let mut g = Gen {
        q,
        dominant,
        kinds: Vec::new(),
        offset: Vec::new(),
        color: Vec::new(),
        vertex: Vec::new(),
        twin: Vec::new(),
        budget: 2 * delta - root.len(),
        white_sets: &white_sets,
    };
    g.push_vertex(VertexKind::White, root);
    g.rec(0, visit);
}

/// Calls `visit` on every kernel of excess `delta` (only dominant ones if
/// `dominant_only`), each in canonical form, in a deterministic order.
pub fn for_each_kernel(q: usize, delta: usize, dominant_only: bool, mut visit: impl FnMut(&KernelDiagram)) -> Result<()> {
    check_args(q, delta)?;
    for root in root_sets(q, delta, dominant_only) {
        run_shard(q, delta, dominant_only, &root, &mut |g| visit(&g.to_kernel()));
    }
    Ok(())
}

/// All kernel diagrams of excess `delta`, one per isomorphism class.
pub fn enumerate_kernels(q: usize, delta: usize) -> Result<Vec<KernelDiagram>> {
    let mut out = Vec::new();
    for_each_kernel(q, delta, false, |k| out.push(k.clone()))?;
    Ok(out)
}

type ProfileTable = Arc<Vec<(EdgeStats, u64)>>;

fn sharded_counts(q: usize, delta: usize, dominant: bool) -> Vec<(EdgeStats, u64)> {
    let merged = root_sets(q, delta, dominant)
        .par_iter()
        .map(|root| {
            let mut local: HashMap<EdgeStats, u64> = HashMap::new();
            run_shard(q, delta, dominant, root, &mut |g| *local.entry(g.stats()).or_default() += 1);
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let sorted: BTreeMap<EdgeStats, u64> = merged.into_iter().collect();
    sorted.into_iter().collect()
}

/// Number of kernels of excess `delta` per edge-statistics profile, sorted
/// by profile. Results are cached per `(q, delta)`.
pub fn profile_counts(q: usize, delta: usize) -> Result<ProfileTable> {
    check_args(q, delta)?;
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), ProfileTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(q, delta)) {
        return Ok(t.clone());
    }
    let table = Arc::new(sharded_counts(q, delta, false));
    cache.lock().unwrap().insert((q, delta), table.clone());
    Ok(table)
}

pub fn kernel_count(q: usize, delta: usize) -> Result<u64> {
    Ok(profile_counts(q, delta)?.iter().map(|(_, c)| c).sum())
}

pub fn dominant_kernel_count(q: usize, delta: usize) -> Result<u64> {
    check_args(q, delta)?;
    Ok(sharded_counts(q, delta, true).iter().map(|(_, c)| c).sum())
}

/// Sum of `(q - 1)^(-V_white)` over dominant kernels of excess `delta`.
pub fn dominant_weighted_sum(q: usize, delta: usize) -> Result<BigRational> {
    check_args(q, delta)?;
    let base = BigInt::from(q - 1);
    let mut total = BigRational::zero();
    for (stats, count) in sharded_counts(q, delta, true) {
        let denom = num_traits::pow(base.clone(), stats.white_vertices);
        total += BigRational::new(BigInt::from(count), denom);
    }
    Ok(total)
}
