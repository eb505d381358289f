//! Structural statistics over many samples.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{random_signs, sample_constellation, SamplerTables};
use crate::constellation::{psi_hat_inverse_signed, Constellation, SignedConstellation};
use crate::error::Result;
use crate::graph::ColoredGraph;
use crate::kernel::core as core_diagram;
use crate::oracle::Family;

/// Per-sample structural checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificates {
    pub syk: bool,
    pub bipartite: bool,
    /// Every core chain has an internal white.
    pub chains_have_white: bool,
    /// Every core chain has internal colored vertices of all colors.
    pub chains_color_covered: bool,
    /// Deleting any one color from the constellation leaves a forest.
    pub color_deleted_forests: bool,
    /// Every residue of the graph without color 0 and one other color is
    /// melonic.
    pub residues_melonic: bool,
    /// Handle vertices removed before the excess reached 0 or no handle
    /// vertex was left.
    pub handle_steps: usize,
    /// Removal reached excess 0 after exactly `delta` steps.
    pub induction_complete: bool,
    pub gurau_degree: Rational64,
    /// Internal white count of each core chain.
    pub chain_whites: Vec<usize>,
}

impl Certificates {
    pub fn gurau_matches(&self, q: usize, delta: usize) -> bool {
        self.gurau_degree == Rational64::from_integer((q * delta) as i64)
    }

    /// Conjunction of the chain, forest, residue, induction and Gurau
    /// degree checks.
    pub fn all_hold(&self, q: usize, delta: usize) -> bool {
        self.chains_have_white
            && self.chains_color_covered
            && self.color_deleted_forests
            && self.residues_melonic
            && self.induction_complete
            && self.gurau_matches(q, delta)
    }
}

/// Whether every color-deleted sub-constellation is a forest.
fn color_deleted_forests(s: &Constellation) -> bool {
    let q = s.q();
    let n = s.num_white();
    let cycles = s.colored_cycles();
    (1..=q).all(|c| {
        // union-find over whites, then colored vertices
        let mut parent: Vec<usize> = (0..n + cycles.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (j, (color, whites)) in cycles.iter().enumerate() {
            if *color == c {
                continue;
            }
            for &w in whites {
                let (a, b) = (find(&mut parent, n + j), find(&mut parent, w as usize));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
        }
        true
    })
}

fn residues_melonic(g: &ColoredGraph) -> bool {
    let q = g.q();
    (1..=q).all(|c| {
        let colors: Vec<usize> = (1..=q).filter(|&x| x != c).collect();
        let (comp, count) = g.components_without(&[0, c]);
        let mut groups = vec![Vec::new(); count];
        for (v, &k) in comp.iter().enumerate() {
            groups[k as usize].push(v as u32);
        }
        groups.iter().all(|vs| g.is_melonic_subgraph(&colors, vs))
    })
}

/// Whether `a` and `b` lie on a common cycle of colors `i` and `j`.
fn on_common_cycle(g: &ColoredGraph, a: u32, b: u32, i: usize, j: usize) -> bool {
    let mut v = a;
    loop {
        v = g.partner(i, v);
        if v == b {
            return true;
        }
        v = g.partner(j, v);
        if v == b {
            return true;
        }
        if v == a {
            return false;
        }
    }
}

/// White chain vertices of the core with their two chain colors.
pub fn white_chain_vertices(s: &Constellation) -> Vec<(u32, usize, usize)> {
    let (c, _) = core_diagram(s);
    let mut out = Vec::new();
    for ch in c.chains() {
        for &v in ch.internal.iter().filter(|&&v| c.is_white(v)) {
            let e = c.alive_edges(v);
            out.push((v, c.edge_color(e[0]), c.edge_color(e[1])));
        }
    }
    out
}

/// White chain vertices whose two graph vertices are joined by a cycle of
/// their two chain colors.
pub fn handle_vertices(s: &SignedConstellation) -> Vec<u32> {
    let g = psi_hat_inverse_signed(s).graph;
    white_chain_vertices(&s.base)
        .into_iter()
        .filter(|&(v, i, j)| on_common_cycle(&g, 2 * v, 2 * v + 1, i, j))
        .map(|(v, _, _)| v)
        .collect()
}

/// Deletes the non-root white `v` together with every white cut off from
/// the root by its removal.
pub fn delete_white(s: &SignedConstellation, v: u32) -> Result<SignedConstellation> {
    let base = &s.base;
    let q = base.q();
    let n = base.num_white();
    let cycles = base.colored_cycles();
    let mut cycle_of = vec![0usize; q * n];
    for (j, (c, whites)) in cycles.iter().enumerate() {
        for &w in whites {
            cycle_of[w as usize * q + c - 1] = j;
        }
    }
    let mut keep = vec![false; n];
    let mut cycle_seen = vec![false; cycles.len()];
    let mut stack = vec![base.root()];
    keep[base.root() as usize] = true;
    while let Some(w) = stack.pop() {
        for c in 0..q {
            let j = cycle_of[w as usize * q + c];
            if std::mem::replace(&mut cycle_seen[j], true) {
                continue;
            }
            for &u in &cycles[j].1 {
                if u != v && !keep[u as usize] {
                    keep[u as usize] = true;
                    stack.push(u);
                }
            }
        }
    }
    let mut label = vec![u32::MAX; n];
    let mut next = 0;
    for w in 0..n {
        if keep[w] {
            label[w] = next;
            next += 1;
        }
    }
    let new_cycles: Vec<(usize, Vec<u32>)> = cycles
        .iter()
        .map(|(c, whites)| (*c, whites.iter().filter(|&&w| keep[w as usize]).map(|&w| label[w as usize]).collect::<Vec<_>>()))
        .filter(|(_, whites)| !whites.is_empty())
        .collect();
    let reduced = Constellation::from_cycles(q, next as usize, label[base.root() as usize], &new_cycles)?;
    let mut signs = vec![true; q * next as usize];
    for w in 0..n {
        if keep[w] {
            for c in 1..=q {
                signs[label[w] as usize * q + c - 1] = s.sign(w as u32, c);
            }
        }
    }
    SignedConstellation::new(reduced, signs)
}

/// Repeatedly removes a handle vertex; returns the number of removals and
/// whether excess 0 was reached after exactly `delta` of them.
fn handle_induction(s: &SignedConstellation, delta: usize) -> (usize, bool) {
    let mut cur = s.clone();
    let mut steps = 0;
    loop {
        let excess = cur.base.excess();
        if excess == 0 {
            return (steps, steps == delta);
        }
        if excess + steps != delta {
            return (steps, false);
        }
        // vertices on bridge chains disconnect the core and are skipped
        let next = handle_vertices(&cur)
            .into_iter()
            .filter_map(|v| delete_white(&cur, v).ok())
            .find(|next| next.base.excess() + 1 == excess);
        match next {
            Some(next) => cur = next,
            None => return (steps, false),
        }
        steps += 1;
    }
}

/// Runs every structural check on a signed constellation of excess `delta`
/// and its graph.
pub fn certify(s: &SignedConstellation, delta: usize) -> Certificates {
    let base = &s.base;
    let q = base.q();
    let g = psi_hat_inverse_signed(s).graph;
    let (c, _) = core_diagram(base);
    let mut have_white = true;
    let mut covered = true;
    let mut chain_whites = Vec::new();
    for ch in c.chains() {
        let whites = ch.internal.iter().filter(|&&v| c.is_white(v)).count();
        let mut colors = 0u32;
        for &v in ch.internal.iter().filter(|&&v| !c.is_white(v)) {
            colors |= 1 << c.vertex_color(v);
        }
        have_white &= whites > 0;
        covered &= colors.count_ones() as usize == q;
        chain_whites.push(whites);
    }
    let (handle_steps, induction_complete) = handle_induction(s, delta);
    Certificates {
        syk: g.is_syk(),
        bipartite: g.is_bipartite(),
        chains_have_white: have_white,
        chains_color_covered: covered,
        color_deleted_forests: color_deleted_forests(base),
        residues_melonic: residues_melonic(&g),
        handle_steps,
        induction_complete,
        gurau_degree: g.gurau_degree(),
        chain_whites,
    }
}

/// Aggregate of a sampling run. Fractions are over all trials, except the
/// bipartite fraction, which is conditioned on SYK.
#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub q: usize,
    pub delta: usize,
    pub n: usize,
    pub family: Family,
    pub seed: u64,
    pub trials: u64,
    pub syk: u64,
    pub bipartite_and_syk: u64,
    pub fraction_syk: f64,
    pub fraction_bipartite_given_syk: Option<f64>,
    /// The fields below are only filled when certificates are requested.
    pub fraction_chains_have_white: Option<f64>,
    pub fraction_chains_color_covered: Option<f64>,
    pub fraction_color_deleted_forests: Option<f64>,
    pub fraction_residues_melonic: Option<f64>,
    pub fraction_induction_complete: Option<f64>,
    pub fraction_gurau_matches: Option<f64>,
    pub fraction_all_certificates: Option<f64>,
    pub handle_count_histogram: BTreeMap<usize, u64>,
    pub gurau_degree_histogram: BTreeMap<String, u64>,
    pub chain_whites_histogram: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    trials: u64,
    syk: u64,
    bipartite_and_syk: u64,
    have_white: u64,
    covered: u64,
    forests: u64,
    melonic: u64,
    induction: u64,
    gurau: u64,
    all: u64,
    handles: BTreeMap<usize, u64>,
    gurau_degrees: BTreeMap<Rational64, u64>,
    chain_whites: BTreeMap<usize, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.syk += other.syk;
        self.bipartite_and_syk += other.bipartite_and_syk;
        self.have_white += other.have_white;
        self.covered += other.covered;
        self.forests += other.forests;
        self.melonic += other.melonic;
        self.induction += other.induction;
        self.gurau += other.gurau;
        self.all += other.all;
        for (k, v) in other.handles {
            *self.handles.entry(k).or_default() += v;
        }
        for (k, v) in other.gurau_degrees {
            *self.gurau_degrees.entry(k).or_default() += v;
        }
        for (k, v) in other.chain_whites {
            *self.chain_whites.entry(k).or_default() += v;
        }
        self
    }
}

/// Per-trial generator: the seed with the trial index as stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Samples `trials` objects of the given family and aggregates SYK and
/// bipartiteness, plus every structural certificate if `certificates`.
/// The result depends only on the arguments, not on the thread count.
pub fn survey(tables: &SamplerTables, family: Family, trials: u64, seed: u64, certificates: bool) -> Result<SampleReport> {
    let (q, delta) = (tables.q(), tables.delta());
    let tally = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Tally> {
            let mut rng = trial_rng(seed, t);
            let s = sample_constellation(tables, &mut rng)?;
            let signed = match family {
                Family::Bipartite => SignedConstellation::all_positive(s),
                Family::General => random_signs(s, &mut rng),
            };
            let mut tally = Tally {
                trials: 1,
                ..Tally::default()
            };
            let (syk, bipartite) = if certificates {
                let cert = certify(&signed, delta);
                let ok = [
                    cert.chains_have_white,
                    cert.chains_color_covered,
                    cert.color_deleted_forests,
                    cert.residues_melonic,
                    cert.induction_complete,
                    cert.gurau_matches(q, delta),
                    cert.all_hold(q, delta),
                ]
                .map(u64::from);
                tally.have_white = ok[0];
                tally.covered = ok[1];
                tally.forests = ok[2];
                tally.melonic = ok[3];
                tally.induction = ok[4];
                tally.gurau = ok[5];
                tally.all = ok[6];
                tally.handles.insert(cert.handle_steps, 1);
                tally.gurau_degrees.insert(cert.gurau_degree, 1);
                for w in &cert.chain_whites {
                    *tally.chain_whites.entry(*w).or_default() += 1;
                }
                (cert.syk, cert.bipartite)
            } else {
                let g = match family {
                    Family::Bipartite => signed.base.to_graph_raw(),
                    Family::General => psi_hat_inverse_signed(&signed).graph,
                };
                (g.is_syk(), family == Family::Bipartite || g.is_bipartite())
            };
            tally.syk = syk as u64;
            tally.bipartite_and_syk = (syk && bipartite) as u64;
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let frac = |x: u64| x as f64 / trials.max(1) as f64;
    let cert = |x: u64| certificates.then(|| frac(x));
    Ok(SampleReport {
        q,
        delta,
        n: tables.n(),
        family,
        seed,
        trials,
        syk: tally.syk,
        bipartite_and_syk: tally.bipartite_and_syk,
        fraction_syk: frac(tally.syk),
        fraction_bipartite_given_syk: (family == Family::General && tally.syk > 0)
            .then(|| tally.bipartite_and_syk as f64 / tally.syk as f64),
        fraction_chains_have_white: cert(tally.have_white),
        fraction_chains_color_covered: cert(tally.covered),
        fraction_color_deleted_forests: cert(tally.forests),
        fraction_residues_melonic: cert(tally.melonic),
        fraction_induction_complete: cert(tally.induction),
        fraction_gurau_matches: cert(tally.gurau),
        fraction_all_certificates: cert(tally.all),
        handle_count_histogram: tally.handles,
        gurau_degree_histogram: tally.gurau_degrees.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        chain_whites_histogram: tally.chain_whites,
    })
}
