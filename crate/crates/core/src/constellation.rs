//! Constellations and the bijection with bipartite colored graphs.
//!
//! White vertex `k` stands for the `k`-th color-0 edge. For every color
//! `c` in `1..=q` the color-`c` edges leaving the whites are encoded by a
//! permutation `sigma_c`: the cycles of `sigma_c` are the color-`c`
//! vertices, and the cycle order is the counterclockwise corner order.
//! The half-edge of white `k` with color `c` has edge id `k * q + (c - 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredVertex {
    pub color: usize,
    /// Edge ids in counterclockwise order.
    pub corners: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constellation {
    q: usize,
    root: u32,
    /// `perms[c - 1][k]` is the white following `k` around its color-`c` vertex.
    perms: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstellationJson {
    pub q: usize,
    pub white: Vec<Vec<u32>>,
    pub colored: Vec<ColoredVertex>,
    /// `edges[e] = [white, colored vertex index]`.
    pub edges: Vec<[u32; 2]>,
    pub root: u32,
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x as usize >= p.len() || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

fn invert(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn cycle_count(p: &[u32]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
        }
    }
    count
}

/// Breadth-first labeling of whites from `root`: each white visits its
/// successors for colors `1..=q`, then its predecessors. Unreached whites
/// keep `UNSET`.
fn bfs_labeling(perms: &[Vec<u32>], inverses: &[Vec<u32>], root: u32) -> (Vec<u32>, usize) {
    let n = perms[0].len();
    let mut label = vec![UNSET; n];
    let mut order = Vec::with_capacity(n);
    label[root as usize] = 0;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let k = order[head] as usize;
        head += 1;
        for table in [perms, inverses] {
            for p in table {
                let u = p[k];
                if label[u as usize] == UNSET {
                    label[u as usize] = order.len() as u32;
                    order.push(u);
                }
            }
        }
    }
    (label, order.len())
}

impl Constellation {
    pub fn from_permutations(q: usize, perms: Vec<Vec<u32>>, root: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::UnsupportedQ { q, min: 2 });
        }
        if perms.len() != q {
            return Err(Error::InvalidConstellation(format!(
                "expected {q} permutations, found {}",
                perms.len()
            )));
        }
        let n = perms[0].len();
        if n == 0 {
            return Err(Error::InvalidConstellation("no white vertices".into()));
        }
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n || !is_permutation(p) {
                return Err(Error::InvalidConstellation(format!(
                    "color {} does not define a permutation of the {n} whites",
                    i + 1
                )));
            }
        }
        if root as usize >= n {
            return Err(Error::InvalidConstellation(format!("root {root} out of range")));
        }
        let s = Constellation { q, root, perms };
        let (_, reached) = bfs_labeling(&s.perms, &s.inverses(), root);
        if reached != n {
            return Err(Error::InvalidConstellation("disconnected".into()));
        }
        Ok(s)
    }

    pub(crate) fn from_permutations_unchecked(q: usize, perms: Vec<Vec<u32>>, root: u32) -> Self {
        Constellation { q, root, perms }
    }

    /// Builds a constellation from colored vertices given as lists of
    /// whites in corner order.
    pub fn from_cycles(q: usize, num_white: usize, root: u32, cycles: &[(usize, Vec<u32>)]) -> Result<Self> {
        let mut perms = vec![vec![UNSET; num_white]; q];
        for (color, whites) in cycles {
            if *color == 0 || *color > q {
                return Err(Error::ColorOutOfRange { color: *color, q });
            }
            let p = &mut perms[color - 1];
            for (i, &k) in whites.iter().enumerate() {
                let next = whites[(i + 1) % whites.len()];
                if k as usize >= num_white || p[k as usize] != UNSET {
                    return Err(Error::InvalidConstellation(format!(
                        "white {k} has a bad color-{color} half-edge"
                    )));
                }
                p[k as usize] = next;
            }
        }
        if perms.iter().any(|p| p.contains(&UNSET)) {
            return Err(Error::InvalidConstellation("a white lacks some color".into()));
        }
        Self::from_permutations(q, perms, root)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn num_white(&self) -> usize {
        self.perms[0].len()
    }

    pub fn permutations(&self) -> &[Vec<u32>] {
        &self.perms
    }

    #[inline]
    pub fn successor(&self, color: usize, k: u32) -> u32 {
        self.perms[color - 1][k as usize]
    }

    fn inverses(&self) -> Vec<Vec<u32>> {
        self.perms.iter().map(|p| invert(p)).collect()
    }

    pub fn edge_id(&self, white: u32, color: usize) -> u32 {
        white * self.q as u32 + (color as u32 - 1)
    }

    pub fn num_edges(&self) -> usize {
        self.q * self.num_white()
    }

    pub fn num_colored(&self) -> usize {
        self.perms.iter().map(|p| cycle_count(p)).sum()
    }

    /// Colored vertices sorted by color then smallest corner white, each
    /// rotated to start at that white. Corners are white indices.
    pub fn colored_cycles(&self) -> Vec<(usize, Vec<u32>)> {
        let n = self.num_white();
        let mut out = Vec::new();
        for c in 1..=self.q {
            let p = &self.perms[c - 1];
            let mut seen = vec![false; n];
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut cyc = Vec::new();
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    cyc.push(x as u32);
                    x = p[x] as usize;
                }
                out.push((c, cyc));
            }
        }
        out
    }

    pub fn colored_vertices(&self) -> Vec<ColoredVertex> {
        self.colored_cycles()
            .into_iter()
            .map(|(color, whites)| ColoredVertex {
                color,
                corners: whites.iter().map(|&k| self.edge_id(k, color)).collect(),
            })
            .collect()
    }

    /// `E - V + 1` with `E = qn` and `V` counting whites and colored vertices.
    pub fn excess(&self) -> usize {
        let n = self.num_white();
        self.q * n + 1 - n - self.num_colored()
    }

    pub fn is_tree(&self) -> bool {
        self.excess() == 0
    }

    /// Breadth-first white labeling from the root (`label[old] = new`).
    pub fn canonical_labeling(&self) -> Vec<u32> {
        bfs_labeling(&self.perms, &self.inverses(), self.root).0
    }

    pub fn relabel(&self, label: &[u32]) -> Constellation {
        let n = self.num_white();
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut out = vec![0; n];
                for k in 0..n {
                    out[label[k] as usize] = label[p[k] as usize];
                }
                out
            })
            .collect();
        Constellation {
            q: self.q,
            root: label[self.root as usize],
            perms,
        }
    }

    /// Representative of the rooted isomorphism class.
    pub fn canonical(&self) -> Constellation {
        self.relabel(&self.canonical_labeling())
    }

    pub fn is_canonical(&self) -> bool {
        self.root == 0 && self.canonical_labeling().iter().enumerate().all(|(i, &l)| l == i as u32)
    }

    /// The bipartite colored graph of this constellation in canonical labeling.
    pub fn psi_inverse(&self) -> ColoredGraph {
        self.to_graph_raw().canonical_form()
    }

    /// White `k` becomes the black `2k` and white `2k + 1`; no relabeling.
    pub(crate) fn to_graph_raw(&self) -> ColoredGraph {
        let n = self.num_white();
        let nv = 2 * n;
        let mut flat = vec![0u32; (self.q + 1) * nv];
        for k in 0..n as u32 {
            flat[2 * k as usize] = 2 * k + 1;
            flat[2 * k as usize + 1] = 2 * k;
        }
        for c in 1..=self.q {
            let base = c * nv;
            for k in 0..n as u32 {
                let w = 2 * self.successor(c, k) + 1;
                flat[base + 2 * k as usize] = w;
                flat[base + w as usize] = 2 * k;
            }
        }
        ColoredGraph::from_flat_unchecked(self.q, nv, flat, (2 * self.root, 2 * self.root + 1))
    }

    /// Contracts color-0 edges of a bipartite graph and subdivides each
    /// color cycle; returns the canonical constellation.
    pub fn psi(graph: &ColoredGraph) -> Result<Constellation> {
        let sides = graph.bipartition().ok_or(Error::NotBipartite)?;
        let q = graph.q();
        let nv = graph.num_vertices();
        let mut pair = vec![UNSET; nv];
        let mut count = 0u32;
        for v in 0..nv {
            if sides[v] {
                pair[v] = count;
                pair[graph.partner(0, v as u32) as usize] = count;
                count += 1;
            }
        }
        let blacks: Vec<u32> = (0..nv as u32).filter(|&v| sides[v as usize]).collect();
        let perms = (1..=q)
            .map(|c| blacks.iter().map(|&b| pair[graph.partner(c, b) as usize]).collect())
            .collect();
        let s = Constellation {
            q,
            root: pair[graph.root().0 as usize],
            perms,
        };
        Ok(s.canonical())
    }

    pub fn to_json_value(&self) -> ConstellationJson {
        let q = self.q as u32;
        let n = self.num_white() as u32;
        let colored = self.colored_vertices();
        let mut edges = vec![[0u32; 2]; self.num_edges()];
        for (i, v) in colored.iter().enumerate() {
            for &e in &v.corners {
                edges[e as usize] = [e / q, i as u32];
            }
        }
        ConstellationJson {
            q: self.q,
            white: (0..n).map(|k| (0..q).map(|c| k * q + c).collect()).collect(),
            colored,
            edges,
            root: self.root,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("constellation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ConstellationJson = serde_json::from_str(text)?;
        Self::try_from(raw)
    }
}

impl TryFrom<ConstellationJson> for Constellation {
    type Error = Error;

    fn try_from(raw: ConstellationJson) -> Result<Self> {
        let n = raw.white.len();
        let mut white_of = vec![UNSET; raw.q * n];
        for (k, hs) in raw.white.iter().enumerate() {
            for &e in hs {
                match white_of.get_mut(e as usize) {
                    Some(slot) if *slot == UNSET => *slot = k as u32,
                    _ => return Err(Error::InvalidConstellation(format!("bad edge id {e} at white {k}"))),
                }
            }
        }
        let mut cycles = Vec::with_capacity(raw.colored.len());
        for v in &raw.colored {
            let whites = v
                .corners
                .iter()
                .map(|&e| match white_of.get(e as usize) {
                    Some(&k) if k != UNSET => Ok(k),
                    _ => Err(Error::InvalidConstellation(format!("corner {e} has no white"))),
                })
                .collect::<Result<Vec<u32>>>()?;
            cycles.push((v.color, whites));
        }
        Constellation::from_cycles(raw.q, n, raw.root, &cycles)
    }
}

/// A constellation with a sign on every edge; `true` is `+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedConstellation {
    pub base: Constellation,
    signs: Vec<bool>,
}

impl SignedConstellation {
    pub fn new(base: Constellation, signs: Vec<bool>) -> Result<Self> {
        if signs.len() != base.num_edges() {
            return Err(Error::InvalidConstellation(format!(
                "{} signs for {} edges",
                signs.len(),
                base.num_edges()
            )));
        }
        Ok(SignedConstellation { base, signs })
    }

    pub fn all_positive(base: Constellation) -> Self {
        let signs = vec![true; base.num_edges()];
        SignedConstellation { base, signs }
    }

    pub fn signs(&self) -> &[bool] {
        &self.signs
    }

    #[inline]
    pub fn sign(&self, white: u32, color: usize) -> bool {
        self.signs[self.base.edge_id(white, color) as usize]
    }
}

/// A rooted colored graph with an orientation of every color-0 edge and of
/// every color-0c cycle.
///
/// `origin[v]` tells whether `v` is the origin of its color-0 edge (the
/// root origin always is). Pairs are indexed by the rank of their smaller
/// vertex. The reference direction of a color-0c cycle leaves its
/// lowest-indexed pair through the origin; `cycle_flip[c - 1][j]` reverses
/// it for the `j`-th cycle, cycles being ordered by lowest pair index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    pub graph: ColoredGraph,
    pub origin: Vec<bool>,
    pub cycle_flip: Vec<Vec<bool>>,
}

impl SignedGraph {
    fn pair_index(graph: &ColoredGraph) -> Vec<u32> {
        let nv = graph.num_vertices();
        let mut idx = vec![UNSET; nv];
        let mut count = 0;
        for v in 0..nv as u32 {
            if idx[v as usize] == UNSET {
                idx[v as usize] = count;
                idx[graph.partner(0, v) as usize] = count;
                count += 1;
            }
        }
        idx
    }

    /// Checks origin flags and cycle flag counts.
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        g.validate()?;
        if self.origin.len() != g.num_vertices() {
            return Err(Error::InvalidConstellation("origin flag count".into()));
        }
        for v in 0..g.num_vertices() as u32 {
            if self.origin[v as usize] == self.origin[g.partner(0, v) as usize] {
                return Err(Error::InvalidConstellation(format!("color-0 edge at {v} is not oriented")));
            }
        }
        if !self.origin[g.root().0 as usize] {
            return Err(Error::InvalidConstellation("root edge orientation changed".into()));
        }
        if self.cycle_flip.len() != g.q() {
            return Err(Error::InvalidConstellation("cycle flag colors".into()));
        }
        for c in 1..=g.q() {
            if self.cycle_flip[c - 1].len() != g.cycle_count(0, c)? {
                return Err(Error::InvalidConstellation(format!("color {c} cycle flag count")));
            }
        }
        Ok(())
    }

    /// Contracts color-0 edges into whites (pair order) and signs each
    /// color-`c` edge by comparing the half-edge orientation with the cycle
    /// orientation.
    pub fn psi_hat(&self) -> Result<SignedConstellation> {
        self.validate()?;
        let g = &self.graph;
        let q = g.q();
        let pair = Self::pair_index(g);
        let n = g.n();
        let mut origin_of = vec![0u32; n];
        for v in 0..g.num_vertices() {
            if self.origin[v] {
                origin_of[pair[v] as usize] = v as u32;
            }
        }
        let mut perms = vec![vec![UNSET; n]; q];
        let mut signs = vec![false; q * n];
        for c in 1..=q {
            let mut cycle = 0;
            for k0 in 0..n {
                if perms[c - 1][k0] != UNSET {
                    continue;
                }
                let o = origin_of[k0];
                let mut x = if self.cycle_flip[c - 1][cycle] { g.partner(0, o) } else { o };
                cycle += 1;
                let mut k = k0 as u32;
                loop {
                    signs[k as usize * q + c - 1] = x == origin_of[k as usize];
                    let y = g.partner(c, x);
                    let next = pair[y as usize];
                    perms[c - 1][k as usize] = next;
                    k = next;
                    x = g.partner(0, y);
                    if k as usize == k0 {
                        break;
                    }
                }
            }
        }
        let base = Constellation {
            q,
            root: pair[g.root().0 as usize],
            perms,
        };
        Ok(SignedConstellation { base, signs })
    }
}

/// Inverse of [`SignedGraph::psi_hat`]: white `k` becomes the pair
/// `(2k, 2k + 1)` with origin `2k`.
pub fn psi_hat_inverse_signed(s: &SignedConstellation) -> SignedGraph {
    let base = &s.base;
    let q = base.q();
    let n = base.num_white();
    let nv = 2 * n;
    let mut flat = vec![UNSET; (q + 1) * nv];
    for k in 0..n as u32 {
        flat[2 * k as usize] = 2 * k + 1;
        flat[2 * k as usize + 1] = 2 * k;
    }
    let mut cycle_flip = vec![Vec::new(); q];
    for c in 1..=q {
        let m = &mut flat[c * nv..(c + 1) * nv];
        let mut seen = vec![false; n];
        for k0 in 0..n as u32 {
            if seen[k0 as usize] {
                continue;
            }
            cycle_flip[c - 1].push(!s.sign(k0, c));
            let mut k = k0;
            while !seen[k as usize] {
                seen[k as usize] = true;
                let next = base.successor(c, k);
                let leave = if s.sign(k, c) { 2 * k } else { 2 * k + 1 };
                let enter = if s.sign(next, c) { 2 * next + 1 } else { 2 * next };
                m[leave as usize] = enter;
                m[enter as usize] = leave;
                k = next;
            }
        }
    }
    let graph = ColoredGraph::from_flat_unchecked(q, nv, flat, (2 * base.root(), 2 * base.root() + 1));
    let origin = (0..nv).map(|v| v % 2 == 0).collect();
    SignedGraph {
        graph,
        origin,
        cycle_flip,
    }
}

/// The colored graph of a signed constellation, in canonical labeling.
pub fn psi_hat_inverse(s: &SignedConstellation) -> ColoredGraph {
    psi_hat_inverse_signed(s).graph.canonical_form()
}
