//! Exact uniform sampling of constellations and colored graphs of fixed
//! excess and size.
//!
//! A constellation of excess `delta` is a kernel diagram whose edges are
//! replaced by chains of degree-2 vertices, with trees hanging in the
//! corners. Sampling follows that decomposition: kernel profile and total
//! number of chain whites first (exact weights), then the split of chain
//! whites across kernel edges, then uniform color walks along each chain and
//! a uniform forest in the corners (cycle lemma).

mod survey;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::constellation::{psi_hat_inverse, Constellation, SignedConstellation};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::kernel::{for_each_kernel, ChainType, EdgeClass, EdgeStats, KernelDiagram, VertexKind, MAX_DELTA};
use crate::oracle::Family;
use crate::series::{binomial, chain_walks};

pub use survey::{
    certify, delete_white, handle_vertices, survey, trial_rng, white_chain_vertices, Certificates, SampleReport,
};

/// Canonical codes of the kernels of one profile, stored back to back.
#[derive(Clone, Debug, Default)]
struct CodeList {
    codes: Vec<u16>,
    starts: Vec<usize>,
}

impl CodeList {
    fn len(&self) -> usize {
        self.starts.len()
    }

    fn push(&mut self, code: &[u16]) {
        self.starts.push(self.codes.len());
        self.codes.extend_from_slice(code);
    }

    fn kernel(&self, q: usize, i: usize) -> KernelDiagram {
        let end = self.starts.get(i + 1).copied().unwrap_or(self.codes.len());
        KernelDiagram::from_code(q, &self.codes[self.starts[i]..end]).expect("stored code is valid")
    }
}

type KernelCatalog = Arc<Vec<(EdgeStats, CodeList)>>;

/// All kernels of excess `delta` grouped by edge statistics; cached.
fn kernel_catalog(q: usize, delta: usize) -> Result<KernelCatalog> {
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, usize), KernelCatalog>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(q, delta)) {
        return Ok(c.clone());
    }
    let mut grouped: BTreeMap<EdgeStats, CodeList> = BTreeMap::new();
    for_each_kernel(q, delta, false, |k| grouped.entry(k.edge_stats()).or_default().push(&k.canonical_code()))?;
    let catalog = Arc::new(grouped.into_iter().collect::<Vec<_>>());
    cache.lock().unwrap().insert((q, delta), catalog.clone());
    Ok(catalog)
}

fn type_index(t: ChainType) -> usize {
    ChainType::ALL.iter().position(|&u| u == t).unwrap()
}

/// Coefficients `0..len` of `x^shift * num(x) / den(x)`, where `den(0) = 1`
/// and the result is known to be nonnegative.
fn rational_coefficients(num: &[BigInt], den: &[BigInt], shift: usize, len: usize) -> Vec<BigUint> {
    let mut s: Vec<BigInt> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = if k >= shift {
            num.get(k - shift).cloned().unwrap_or_default()
        } else {
            BigInt::zero()
        };
        for (j, d) in den.iter().enumerate().skip(1) {
            if j <= k {
                acc -= d * &s[k - j];
            }
        }
        s.push(acc);
    }
    s.into_iter().map(|x| x.to_biguint().expect("negative count")).collect()
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Generating polynomial (by internal white count, up to `len - 1`) of the
/// chains of each type in `types`, multiplied together.
///
/// Chains of a single type have series `x / D`, `(1 - (q-2) x) / D` or
/// `(q-1) x^2 / D` with `D = (1 + x)(1 - (q-1) x)`.
fn chain_product(q: usize, types: &[ChainType], len: usize) -> Vec<BigUint> {
    let qi = q as i64;
    let den1 = vec![BigInt::one(), BigInt::from(2 - qi), BigInt::from(1 - qi)];
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    let mut shift = 0;
    for t in types {
        den = poly_mul(&den, &den1);
        match (t.class, t.equal) {
            (_, false) => shift += 1,
            (EdgeClass::ColoredColored, true) => {
                shift += 2;
                num = poly_mul(&num, &[BigInt::from(qi - 1)]);
            }
            (_, true) => num = poly_mul(&num, &[BigInt::one(), BigInt::from(2 - qi)]),
        }
    }
    rational_coefficients(&num, &den, shift, len)
}

/// `[z^m] T(z)^trees` for the tree series `T = 1 + z T^q`.
fn forest_count(q: usize, m: usize, trees: usize) -> BigUint {
    if trees == 0 {
        return if m == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let total = q * m + trees;
    let c = binomial(total, m) * BigInt::from(trees) / BigInt::from(total);
    c.to_biguint().unwrap()
}

/// Uniform integer in `0..bound`.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top = (bits % 32) as u32;
    let mask = if top == 0 { u32::MAX } else { (1u32 << top) - 1 };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(last) = digits.last_mut() {
            *last &= mask;
        }
        let x = BigUint::from_slice(&digits);
        if &x < bound {
            return x;
        }
    }
}

/// Index `i` with probability `weights[i] / sum`.
fn pick_weighted<R: RngCore + ?Sized>(rng: &mut R, weights: &[BigUint]) -> usize {
    let total: BigUint = weights.iter().sum();
    let mut u = uniform_below(rng, &total);
    for (i, w) in weights.iter().enumerate() {
        if &u < w {
            return i;
        }
        u -= w;
    }
    unreachable!("weights exhausted")
}

#[derive(Clone, Debug)]
struct ProfileTable {
    stats: EdgeStats,
    kernels: CodeList,
    /// Edge types sorted by [`ChainType::ALL`] order.
    types: Vec<ChainType>,
    /// `suffix[i]`: chain product over `types[i..]`, by internal white count.
    suffix: Vec<Vec<BigUint>>,
}

/// Exact counting tables for one `(q, delta, n)`.
#[derive(Clone, Debug)]
pub struct SamplerTables {
    q: usize,
    delta: usize,
    n: usize,
    profiles: Vec<ProfileTable>,
    /// `(profile, chain whites)` outcomes of the first sampling step.
    choices: Vec<(usize, usize)>,
    /// Running sums of the choice weights.
    cumulative: Vec<BigUint>,
    total: BigUint,
    /// Walk counts by length, for equal and unequal end colors.
    walks: [Vec<BigUint>; 2],
}

/// Builds the sampling tables; refuses `delta` outside the kernel catalog.
pub fn build_tables(q: usize, delta: usize, n: usize) -> Result<SamplerTables> {
    if q < 3 {
        return Err(Error::UnsupportedQ { q, min: 3 });
    }
    if delta > MAX_DELTA {
        return Err(Error::UnsupportedDelta { delta, max: MAX_DELTA });
    }
    let catalog = kernel_catalog(q, delta)?;
    let mut profiles = Vec::with_capacity(catalog.len());
    let mut choices = Vec::new();
    let mut cumulative = Vec::new();
    let mut total = BigUint::zero();
    // forests in the corners of a core with `s` whites
    let forests: Vec<BigUint> = (0..=n).map(|s| forest_count(q, n - s, q * s)).collect();
    for (stats, kernels) in catalog.iter() {
        let mut types: Vec<ChainType> = Vec::with_capacity(stats.edges);
        for t in ChainType::ALL {
            types.extend(std::iter::repeat_n(t, stats.count(t)));
        }
        let suffix: Vec<Vec<BigUint>> = (0..=types.len()).map(|i| chain_product(q, &types[i..], n + 1)).collect();
        let p = profiles.len();
        let mult = BigUint::from(kernels.len());
        let w0 = stats.white_vertices;
        for k in 0..(n + 1).saturating_sub(w0) {
            let weight = &mult * &suffix[0][k] * &forests[w0 + k];
            if !weight.is_zero() {
                total += weight;
                choices.push((p, k));
                cumulative.push(total.clone());
            }
        }
        profiles.push(ProfileTable {
            stats: *stats,
            kernels: kernels.clone(),
            types,
            suffix,
        });
    }
    let walks = [false, true].map(|eq| {
        (0..=n)
            .map(|k| chain_walks(q, k, eq).to_biguint().unwrap())
            .collect::<Vec<_>>()
    });
    Ok(SamplerTables {
        q,
        delta,
        n,
        profiles,
        choices,
        cumulative,
        total,
        walks,
    })
}

impl SamplerTables {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of constellations of excess `delta` with `n` whites.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Per profile: statistics, number of kernels, and the number of
    /// constellations built on any single kernel of that profile.
    pub fn profile_totals(&self) -> Vec<(EdgeStats, usize, BigUint)> {
        self.profiles
            .iter()
            .enumerate()
            .map(|(p, prof)| {
                let mut sum = BigUint::zero();
                for (i, &(pi, _)) in self.choices.iter().enumerate() {
                    if pi == p {
                        let prev = if i == 0 { BigUint::zero() } else { self.cumulative[i - 1].clone() };
                        sum += &self.cumulative[i] - prev;
                    }
                }
                (prof.stats, prof.kernels.len(), sum / BigUint::from(prof.kernels.len()))
            })
            .collect()
    }

    fn walk_count(&self, steps: usize, equal: bool) -> &BigUint {
        &self.walks[equal as usize][steps]
    }

    /// Uniform color sequence `a = c_0, ..., c_k = b` with distinct
    /// consecutive entries.
    fn sample_walk<R: RngCore + ?Sized>(&self, rng: &mut R, k: usize, a: usize, b: usize) -> Vec<usize> {
        let mut seq = Vec::with_capacity(k + 1);
        seq.push(a);
        let mut prev = a;
        for i in 1..=k {
            let rest = k - i;
            let options: Vec<usize> = (1..=self.q).filter(|&c| c != prev).collect();
            let weights: Vec<BigUint> = options.iter().map(|&c| self.walk_count(rest, c == b).clone()).collect();
            prev = options[pick_weighted(rng, &weights)];
            seq.push(prev);
        }
        debug_assert_eq!(prev, b);
        seq
    }
}

/// Builder for one sampled constellation.
struct Assembly {
    q: usize,
    num_white: u32,
    /// Colored vertices as white lists in corner order.
    cycles: Vec<(usize, Vec<u32>)>,
    /// Colors already used at each white, as bit masks.
    used: Vec<u32>,
}

impl Assembly {
    fn new_white(&mut self) -> u32 {
        self.num_white += 1;
        self.used.push(0);
        self.num_white - 1
    }

    fn edge(&mut self, white: u32, color: usize) {
        debug_assert_eq!(self.used[white as usize] >> color & 1, 0);
        self.used[white as usize] |= 1 << color;
    }
}

/// Builds the core from a kernel and per-edge chains, then fills the
/// corners with a uniform forest.
fn assemble<R: Rng + ?Sized>(tables: &SamplerTables, rng: &mut R, kernel: &KernelDiagram, lengths: &[(u32, usize)]) -> Constellation {
    let q = tables.q;
    let mut asm = Assembly {
        q,
        num_white: 0,
        cycles: Vec::new(),
        used: Vec::new(),
    };
    let nv = kernel.num_vertices();
    // kernel whites first so the root is white 0
    let mut white_id = vec![u32::MAX; nv];
    for v in 0..nv {
        if kernel.kind(v as u32).is_white() {
            white_id[v] = asm.new_white();
        }
    }
    // first white reached from each half-edge at a colored kernel vertex
    let mut next_white = vec![u32::MAX; 2 * kernel.num_edges()];
    for &(h, k) in lengths {
        let t = kernel.twin(h);
        let (a, b) = (kernel.vertex_of(h), kernel.vertex_of(t));
        let walk = tables.sample_walk(rng, k, kernel.color(h), kernel.color(t));
        let a_white = kernel.kind(a).is_white();
        let b_white = kernel.kind(b).is_white();
        let internal = 2 * k + a_white as usize + b_white as usize - 1;
        // path of whites (Some) and colored slots (None)
        let mut path: Vec<Option<u32>> = Vec::with_capacity(internal + 2);
        path.push(a_white.then(|| white_id[a as usize]));
        for i in 0..internal {
            let white = (i % 2 == 0) != a_white;
            path.push(white.then(|| asm.new_white()));
        }
        path.push(b_white.then(|| white_id[b as usize]));
        // the edge color changes exactly at internal whites
        let mut step = 0;
        for i in 0..path.len() - 1 {
            if i > 0 && path[i].is_some() {
                step += 1;
            }
            let color = walk[step];
            match (path[i], path[i + 1]) {
                (Some(w), None) | (None, Some(w)) => asm.edge(w, color),
                _ => unreachable!("path alternates"),
            }
            if i > 0 && path[i].is_none() {
                asm.cycles.push((color, vec![path[i - 1].unwrap(), path[i + 1].unwrap()]));
            }
        }
        if !a_white {
            next_white[h as usize] = path[1].unwrap();
        }
        if !b_white {
            next_white[t as usize] = path[path.len() - 2].unwrap();
        }
    }
    for v in 0..nv as u32 {
        if let VertexKind::Colored(c) = kernel.kind(v) {
            let whites: Vec<u32> = kernel.half_edges(v).iter().map(|&h| next_white[h as usize]).collect();
            asm.cycles.push((c, whites));
        }
    }
    let core_whites = asm.num_white as usize;
    let forest_whites = tables.n - core_whites;
    // slots: every corner of every core colored vertex, then every missing
    // color of every core white
    let mut slots: Vec<(usize, Slot)> = Vec::with_capacity(q * core_whites);
    for (j, (c, whites)) in asm.cycles.iter().enumerate() {
        for i in 0..whites.len() {
            slots.push((*c, Slot::Corner(j, i)));
        }
    }
    for w in 0..core_whites as u32 {
        for c in 1..=q {
            if asm.used[w as usize] >> c & 1 == 0 {
                slots.push((c, Slot::Missing(w)));
            }
        }
    }
    debug_assert_eq!(slots.len(), q * core_whites);
    let colors: Vec<usize> = slots.iter().map(|s| s.0).collect();
    let seqs = sample_forest(rng, &mut asm, forest_whites, &colors);
    let mut inserts: Vec<Vec<Vec<u32>>> = asm.cycles.iter().map(|(_, w)| vec![Vec::new(); w.len()]).collect();
    for ((c, slot), seq) in slots.into_iter().zip(seqs) {
        match slot {
            Slot::Corner(j, i) => inserts[j][i] = seq,
            Slot::Missing(w) => {
                let mut whites = vec![w];
                whites.extend(seq);
                asm.cycles.push((c, whites));
            }
        }
    }
    for (j, ins) in inserts.into_iter().enumerate() {
        let old = std::mem::take(&mut asm.cycles[j].1);
        let mut whites = Vec::with_capacity(old.len() + ins.iter().map(Vec::len).sum::<usize>());
        for (w, extra) in old.into_iter().zip(ins) {
            whites.push(w);
            whites.extend(extra);
        }
        asm.cycles[j].1 = whites;
    }
    debug_assert_eq!(asm.num_white as usize, tables.n);
    Constellation::from_cycles(q, tables.n, 0, &asm.cycles).expect("sampled constellation is valid")
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    /// Corner after position `i` of colored vertex `j`.
    Corner(usize, usize),
    /// Missing color at a core white.
    Missing(u32),
}

/// Uniform forest of `colors.len()` q-ary trees with `m` internal nodes in
/// total, decoded into white sequences (one per slot). Internal nodes become
/// whites; the first `q - 1` children of a node carry its other colors and
/// the last child continues the sequence.
fn sample_forest<R: Rng + ?Sized>(rng: &mut R, asm: &mut Assembly, m: usize, colors: &[usize]) -> Vec<Vec<u32>> {
    let q = asm.q;
    let trees = colors.len();
    if trees == 0 {
        return Vec::new();
    }
    let len = q * m + trees;
    let mut internal = vec![false; len];
    for i in rand::seq::index::sample(rng, len, m) {
        internal[i] = true;
    }
    // cycle lemma: rotations starting at a strict prefix minimum after which
    // the walk stays above that minimum minus `trees`
    let step = |b: bool| if b { q as i64 - 1 } else { -1 };
    let mut prefix = Vec::with_capacity(len);
    let mut s = 0i64;
    for &b in &internal {
        prefix.push(s);
        s += step(b);
    }
    let mut suffix_min = vec![i64::MAX; len + 1];
    for i in (0..len).rev() {
        suffix_min[i] = if i + 1 < len { prefix[i + 1].min(suffix_min[i + 1]) } else { i64::MAX };
    }
    let mut good = Vec::with_capacity(trees);
    let mut running_min = i64::MAX;
    for j in 0..len {
        if prefix[j] < running_min && suffix_min[j] > prefix[j] - trees as i64 {
            good.push(j);
        }
        running_min = running_min.min(prefix[j]);
    }
    debug_assert_eq!(good.len(), trees);
    let start = good[rng.random_range(0..good.len())];
    let word: Vec<bool> = (0..len).map(|i| internal[(start + i) % len]).collect();

    // preorder parse into child arrays
    let mut kids = vec![u32::MAX; len * q];
    let mut roots = Vec::with_capacity(trees);
    let mut pos = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for _ in 0..trees {
        roots.push(pos);
        if word[pos] {
            stack.push((pos, 0));
        }
        pos += 1;
        while let Some(top) = stack.last_mut() {
            if top.1 == q {
                stack.pop();
                continue;
            }
            kids[top.0 * q + top.1] = pos as u32;
            top.1 += 1;
            if word[pos] {
                stack.push((pos, 0));
            }
            pos += 1;
        }
    }
    debug_assert_eq!(pos, len);

    // node ids are preorder, so parents precede children
    let mut color = vec![0usize; len];
    let mut white = vec![u32::MAX; len];
    for (r, &c) in roots.iter().zip(colors) {
        color[*r] = c;
    }
    for v in 0..len {
        if !word[v] {
            continue;
        }
        white[v] = asm.new_white();
        let own = color[v];
        for (i, c) in (1..=q).filter(|&c| c != own).enumerate() {
            color[kids[v * q + i] as usize] = c;
        }
        color[kids[v * q + q - 1] as usize] = color[v];
    }
    let sequence = |mut v: usize| {
        let mut seq = Vec::new();
        while word[v] {
            seq.push(white[v]);
            v = kids[v * q + q - 1] as usize;
        }
        seq
    };
    for v in 0..len {
        if !word[v] {
            continue;
        }
        for i in 0..q - 1 {
            let child = kids[v * q + i] as usize;
            let mut whites = vec![white[v]];
            whites.extend(sequence(child));
            asm.cycles.push((color[child], whites));
        }
    }
    roots.into_iter().map(sequence).collect()
}

/// Uniform constellation of excess `delta` with `n` whites, root white 0.
/// White labels are arbitrary; use [`Constellation::canonical`] to compare.
pub fn sample_constellation<R: Rng + ?Sized>(tables: &SamplerTables, rng: &mut R) -> Result<Constellation> {
    if tables.total.is_zero() {
        return Err(Error::EmptySupport {
            delta: tables.delta,
            n: tables.n,
        });
    }
    let u = uniform_below(rng, &tables.total);
    let i = tables.cumulative.partition_point(|c| c <= &u);
    let (p, chain_whites) = tables.choices[i];
    let prof = &tables.profiles[p];
    let kernel = &prof.kernels.kernel(tables.q, rng.random_range(0..prof.kernels.len()));

    // kernel edges grouped by type in the order of `prof.types`
    let mut edges: Vec<(usize, u32)> = kernel
        .edges()
        .into_iter()
        .map(|(h, _)| (type_index(kernel.edge_type(h)), h))
        .collect();
    edges.sort();
    let mut lengths = Vec::with_capacity(edges.len());
    let mut rest = chain_whites;
    for (e, &(t, h)) in edges.iter().enumerate() {
        debug_assert_eq!(ChainType::ALL[t], prof.types[e]);
        let single = chain_product(tables.q, &prof.types[e..=e], rest + 1);
        let weights: Vec<BigUint> = (0..=rest).map(|k| &single[k] * &prof.suffix[e + 1][rest - k]).collect();
        let k = pick_weighted(rng, &weights);
        lengths.push((h, k));
        rest -= k;
    }
    debug_assert_eq!(rest, 0);
    Ok(assemble(tables, rng, kernel, &lengths))
}

/// Uniform random signs on every edge of a constellation.
pub fn random_signs<R: Rng + ?Sized>(base: Constellation, rng: &mut R) -> SignedConstellation {
    let signs = (0..base.num_edges()).map(|_| rng.random::<bool>()).collect();
    SignedConstellation::new(base, signs).expect("one sign per edge")
}

/// Uniform rooted colored graph of order `delta` on `2n` vertices, in
/// canonical labeling.
pub fn sample_graph<R: Rng + ?Sized>(tables: &SamplerTables, rng: &mut R, family: Family) -> Result<ColoredGraph> {
    let s = sample_constellation(tables, rng)?;
    Ok(match family {
        Family::Bipartite => s.psi_inverse(),
        Family::General => psi_hat_inverse(&random_signs(s, rng)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{fuss_catalan, graphs_series};

    #[test]
    fn totals_match_series() {
        for delta in 0..=2 {
            let g = graphs_series(3, delta, 12).unwrap();
            for n in 1..12 {
                let t = build_tables(3, delta, n).unwrap();
                assert_eq!(BigInt::from(t.total().clone()), g.coeff(n as i64), "delta {delta} n {n}");
            }
        }
        assert_eq!(BigInt::from(build_tables(4, 0, 5).unwrap().total().clone()), fuss_catalan(4, 5));
    }

    #[test]
    fn chain_product_matches_walks() {
        for t in ChainType::ALL {
            let p = chain_product(4, &[t], 8);
            for (k, c) in p.iter().enumerate() {
                let expect = if k == 0 && t.class == EdgeClass::ColoredColored {
                    BigInt::zero()
                } else {
                    chain_walks(4, k, t.equal)
                };
                assert_eq!(BigInt::from(c.clone()), expect);
            }
        }
    }

    #[test]
    fn samples_have_requested_excess() {
        let mut rng = trial_rng(7, 0);
        for delta in 0..=2 {
            let t = build_tables(3, delta, 30).unwrap();
            for _ in 0..50 {
                let s = sample_constellation(&t, &mut rng).unwrap();
                assert_eq!(s.num_white(), 30);
                assert_eq!(s.excess(), delta);
                let g = sample_graph(&t, &mut rng, Family::General).unwrap();
                assert_eq!(g.order(), delta);
            }
        }
    }

    #[test]
    fn empty_support_is_refused() {
        let t = build_tables(3, 2, 1).unwrap();
        assert!(t.total().is_zero());
        assert!(matches!(
            sample_constellation(&t, &mut trial_rng(1, 0)),
            Err(Error::EmptySupport { .. })
        ));
    }
}
