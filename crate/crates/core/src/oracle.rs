//! Brute-force enumeration of rooted colored graphs.
//!
//! Bipartite graphs are enumerated as tuples of permutations (one white
//! per color-0 edge, root white 0), general graphs as tuples of perfect
//! matchings on `2n` vertices whose color-0 matching is fixed to
//! `{2k, 2k+1}` with root `(0, 1)`. A tuple is kept iff it is connected and
//! its breadth-first canonical labeling is the identity, which selects one
//! representative per rooted isomorphism class. Connected tuples are also
//! counted so the class count can be recomputed with Burnside's lemma
//! (rooted connected objects have trivial stabilizers).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

/// Tuple count above which enumeration is refused.
pub const WORK_LIMIT: f64 = 2.0e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Bipartite,
    General,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub total: u64,
    pub syk: u64,
    pub melonic: u64,
    /// Bipartite classes; only filled for the general family.
    pub bipartite: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub q: usize,
    pub n: usize,
    pub family: Family,
    pub rows: BTreeMap<usize, CountRow>,
    /// Class count obtained independently as connected tuples divided by
    /// the size of the relabeling group.
    pub burnside_total: u64,
}

impl CountTable {
    pub fn total(&self) -> u64 {
        self.rows.values().map(|r| r.total).sum()
    }

    pub fn row(&self, delta: usize) -> CountRow {
        self.rows.get(&delta).cloned().unwrap_or_default()
    }

    /// Tab-separated rows `n delta total syk melonic [bipartite]`.
    pub fn to_tsv(&self, header: bool) -> String {
        let general = self.family == Family::General;
        let mut out = String::new();
        if header {
            out.push_str("n\tdelta\ttotal\tsyk\tmelonic");
            out.push_str(if general { "\tbipartite\n" } else { "\n" });
        }
        for (d, r) in &self.rows {
            let _ = write!(out, "{}\t{}\t{}\t{}\t{}", self.n, d, r.total, r.syk, r.melonic);
            if general {
                let _ = write!(out, "\t{}", r.bipartite);
            }
            out.push('\n');
        }
        out
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn double_factorial_odd(n: usize) -> u64 {
    // (2n - 1)!!
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

fn check_work(what: &str, work: f64) -> Result<()> {
    if work > WORK_LIMIT {
        return Err(Error::SizeLimit {
            what: what.to_string(),
            work,
            limit: WORK_LIMIT,
        });
    }
    Ok(())
}

fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    fn heap(k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out
}

fn invert(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Status of a permutation tuple: `None` if disconnected, otherwise
/// whether its breadth-first labeling from white 0 is the identity.
fn tuple_status(perms: &[&[u32]], invs: &[&[u32]], n: usize, seen: &mut [bool]) -> Option<bool> {
    seen.fill(false);
    seen[0] = true;
    let mut next = 1;
    let mut identity = true;
    let mut order = Vec::with_capacity(n);
    order.push(0u32);
    let mut head = 0;
    while head < order.len() {
        let k = order[head] as usize;
        head += 1;
        for table in [perms, invs] {
            for p in table {
                let u = p[k];
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    identity &= u == next;
                    next += 1;
                    order.push(u);
                }
            }
        }
    }
    (order.len() == n).then_some(identity)
}

/// Visits every rooted bipartite class with `2n` vertices once, in
/// parallel shards; returns the number of connected tuples.
pub fn enumerate_bipartite<F>(q: usize, n: usize, visit: F) -> Result<u64>
where
    F: Fn(&ColoredGraph) + Sync,
{
    if q < 2 {
        return Err(Error::UnsupportedQ { q, min: 2 });
    }
    if n == 0 {
        return Err(Error::EmptySupport { delta: 0, n });
    }
    check_work("bipartite enumeration", (factorial(n) as f64).powi(q as i32))?;
    let perms = all_permutations(n);
    let invs: Vec<Vec<u32>> = perms.iter().map(|p| invert(p)).collect();
    let count = perms.len();
    let connected = (0..count)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; q];
            idx[0] = first;
            let mut seen = vec![false; n];
            let mut connected = 0u64;
            loop {
                let ps: Vec<&[u32]> = idx.iter().map(|&i| perms[i].as_slice()).collect();
                let is: Vec<&[u32]> = idx.iter().map(|&i| invs[i].as_slice()).collect();
                if let Some(identity) = tuple_status(&ps, &is, n, &mut seen) {
                    connected += 1;
                    if identity {
                        let s = Constellation::from_permutations_unchecked(
                            q,
                            ps.iter().map(|p| p.to_vec()).collect(),
                            0,
                        );
                        visit(&s.to_graph_raw());
                    }
                }
                // advance colors 2..q odometer-style
                let mut c = q - 1;
                loop {
                    if c == 0 {
                        return connected;
                    }
                    idx[c] += 1;
                    if idx[c] < count {
                        break;
                    }
                    idx[c] = 0;
                    c -= 1;
                }
            }
        })
        .sum();
    Ok(connected)
}

fn all_matchings(nv: usize) -> Vec<Vec<u32>> {
    fn rec(m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some(a) = m.iter().position(|&x| x == u32::MAX) else {
            out.push(m.clone());
            return;
        };
        for b in a + 1..m.len() {
            if m[b] == u32::MAX {
                m[a] = b as u32;
                m[b] = a as u32;
                rec(m, out);
                m[a] = u32::MAX;
                m[b] = u32::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![u32::MAX; nv], &mut out);
    out
}

fn is_connected(q: usize, nv: usize, flat: &[u32]) -> bool {
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut stack = vec![0u32];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for c in 0..=q {
            let u = flat[c * nv + v as usize] as usize;
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u as u32);
            }
        }
    }
    reached == nv
}

/// Visits every rooted class of (possibly non-bipartite) colored graphs
/// with `2n` vertices once; returns the number of connected tuples.
pub fn enumerate_general<F>(q: usize, n: usize, visit: F) -> Result<u64>
where
    F: Fn(&ColoredGraph) + Sync,
{
    if q < 2 {
        return Err(Error::UnsupportedQ { q, min: 2 });
    }
    if n == 0 {
        return Err(Error::EmptySupport { delta: 0, n });
    }
    let nv = 2 * n;
    check_work("general enumeration", (double_factorial_odd(n) as f64).powi(q as i32))?;
    let matchings = all_matchings(nv);
    let count = matchings.len();
    let color0: Vec<u32> = (0..nv as u32).map(|v| v ^ 1).collect();
    let identity: Vec<u32> = (0..nv as u32).collect();
    let connected = (0..count)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; q];
            idx[0] = first;
            let mut flat = vec![0u32; (q + 1) * nv];
            flat[..nv].copy_from_slice(&color0);
            let mut connected = 0u64;
            loop {
                for (c, &i) in idx.iter().enumerate() {
                    flat[(c + 1) * nv..(c + 2) * nv].copy_from_slice(&matchings[i]);
                }
                if is_connected(q, nv, &flat) {
                    connected += 1;
                    let g = ColoredGraph::from_flat_unchecked(q, nv, flat.clone(), (0, 1));
                    if g.canonical_labeling() == identity {
                        visit(&g);
                    }
                }
                let mut c = q - 1;
                loop {
                    if c == 0 {
                        return connected;
                    }
                    idx[c] += 1;
                    if idx[c] < count {
                        break;
                    }
                    idx[c] = 0;
                    c -= 1;
                }
            }
        })
        .sum();
    Ok(connected)
}

/// All bipartite classes with `2n` vertices, sorted.
pub fn bipartite_classes(q: usize, n: usize) -> Result<Vec<ColoredGraph>> {
    let found = std::sync::Mutex::new(Vec::new());
    enumerate_bipartite(q, n, |g| found.lock().unwrap().push(g.clone()))?;
    let mut v = found.into_inner().unwrap();
    v.sort();
    Ok(v)
}

/// All general classes with `2n` vertices, sorted.
pub fn general_classes(q: usize, n: usize) -> Result<Vec<ColoredGraph>> {
    let found = std::sync::Mutex::new(Vec::new());
    enumerate_general(q, n, |g| found.lock().unwrap().push(g.clone()))?;
    let mut v = found.into_inner().unwrap();
    v.sort();
    Ok(v)
}

/// Classifies every class by order, SYK, melonic and bipartite.
pub fn count_table(q: usize, n: usize, family: Family) -> Result<CountTable> {
    let colors: Vec<usize> = (0..=q).collect();
    let classes = match family {
        Family::Bipartite => bipartite_classes(q, n)?,
        Family::General => general_classes(q, n)?,
    };
    let rows_by: Vec<(usize, bool, bool, bool)> = classes
        .par_iter()
        .map(|g| (g.order(), g.is_syk(), g.is_melonic(&colors), g.is_bipartite()))
        .collect();
    let mut rows: BTreeMap<usize, CountRow> = BTreeMap::new();
    for (d, syk, mel, bip) in rows_by {
        let r = rows.entry(d).or_default();
        r.total += 1;
        r.syk += syk as u64;
        r.melonic += mel as u64;
        if family == Family::General {
            r.bipartite += bip as u64;
        }
    }
    let connected = match family {
        Family::Bipartite => enumerate_bipartite(q, n, |_| {})?,
        Family::General => enumerate_general(q, n, |_| {})?,
    };
    let group = match family {
        Family::Bipartite => factorial(n - 1),
        Family::General => factorial(n - 1) << (n - 1),
    };
    Ok(CountTable {
        q,
        n,
        family,
        rows,
        burnside_total: connected / group,
    })
}
