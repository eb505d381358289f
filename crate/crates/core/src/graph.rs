//! Rooted (q+1)-edge-colored graphs.
//!
//! A graph on `2n` vertices carries one perfect matching per color
//! `0..=q`, stored as an involution array, and an oriented root edge of
//! color 0. Everything here is a pure function of an immutable graph.

use std::fmt::Write as _;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

/// First violated invariant of a candidate colored graph.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("q = {0} is below the minimum of 2")]
    TooFewColors(usize),
    #[error("vertex count {0} is not a positive even number")]
    BadVertexCount(usize),
    #[error("expected {expected} matchings, found {found}")]
    MatchingCount { expected: usize, found: usize },
    #[error("color {color}: matching has length {len}, expected {expected}")]
    MatchingLength {
        color: usize,
        len: usize,
        expected: usize,
    },
    #[error("color {color}: vertex {vertex} is matched to out-of-range vertex {partner}")]
    OutOfRange {
        color: usize,
        vertex: u32,
        partner: u32,
    },
    #[error("color {color}: fixed point at vertex {vertex}")]
    FixedPoint { color: usize, vertex: u32 },
    #[error("color {color}: not an involution at vertex {vertex}")]
    NotInvolution { color: usize, vertex: u32 },
    #[error("root ({origin}, {end}) is not a color-0 edge")]
    RootNotColor0 { origin: u32, end: u32 },
    #[error("disconnected: vertex {vertex} is unreachable from the root")]
    Disconnected { vertex: u32 },
}

/// Connected components left after deleting one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSet {
    pub color_removed: usize,
    pub components: Vec<Vec<u32>>,
}

impl ResidueSet {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredGraph {
    q: usize,
    num_vertices: usize,
    /// `matchings[c * num_vertices + v]` is the color-`c` partner of `v`.
    matchings: Vec<u32>,
    root: (u32, u32),
}

/// On-disk form: `matchings[c][v]` is the color-`c` partner of `v`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub q: usize,
    pub vertices: usize,
    pub matchings: Vec<Vec<u32>>,
    pub root: [u32; 2],
}

fn check_parts(q: usize, nv: usize, flat: &[u32], root: (u32, u32)) -> Result<(), Violation> {
    if q < 2 {
        return Err(Violation::TooFewColors(q));
    }
    if nv == 0 || nv % 2 == 1 {
        return Err(Violation::BadVertexCount(nv));
    }
    for c in 0..=q {
        let m = &flat[c * nv..(c + 1) * nv];
        for (v, &p) in m.iter().enumerate() {
            let v = v as u32;
            if p as usize >= nv {
                return Err(Violation::OutOfRange {
                    color: c,
                    vertex: v,
                    partner: p,
                });
            }
            if p == v {
                return Err(Violation::FixedPoint { color: c, vertex: v });
            }
            if m[p as usize] != v {
                return Err(Violation::NotInvolution { color: c, vertex: v });
            }
        }
    }
    let (o, e) = root;
    if o as usize >= nv || e as usize >= nv || flat[o as usize] != e {
        return Err(Violation::RootNotColor0 { origin: o, end: e });
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![o];
    seen[o as usize] = true;
    while let Some(v) = stack.pop() {
        for c in 0..=q {
            let u = flat[c * nv + v as usize];
            if !seen[u as usize] {
                seen[u as usize] = true;
                stack.push(u);
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Violation::Disconnected { vertex: v as u32 });
    }
    Ok(())
}

impl ColoredGraph {
    /// Builds and validates a graph from per-color partner arrays.
    pub fn new(q: usize, matchings: Vec<Vec<u32>>, root: (u32, u32)) -> Result<Self, Violation> {
        if matchings.len() != q + 1 {
            return Err(Violation::MatchingCount {
                expected: q + 1,
                found: matchings.len(),
            });
        }
        let nv = matchings.first().map_or(0, Vec::len);
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != nv {
                return Err(Violation::MatchingLength {
                    color: c,
                    len: m.len(),
                    expected: nv,
                });
            }
        }
        let flat: Vec<u32> = matchings.into_iter().flatten().collect();
        check_parts(q, nv, &flat, root)?;
        Ok(ColoredGraph {
            q,
            num_vertices: nv,
            matchings: flat,
            root,
        })
    }

    /// Builds a graph from a flat partner array without validation.
    ///
    /// Used on hot enumeration paths where the construction guarantees the
    /// invariants; [`ColoredGraph::validate`] re-checks them.
    pub(crate) fn from_flat_unchecked(q: usize, num_vertices: usize, matchings: Vec<u32>, root: (u32, u32)) -> Self {
        debug_assert_eq!(matchings.len(), (q + 1) * num_vertices);
        ColoredGraph {
            q,
            num_vertices,
            matchings,
            root,
        }
    }

    /// The 2-vertex graph on which every color is a single edge.
    pub fn dipole(q: usize) -> Self {
        Self::from_flat_unchecked(q, 2, [1, 0].repeat(q + 1), (0, 1))
    }

    pub fn validate(&self) -> Result<(), Violation> {
        check_parts(self.q, self.num_vertices, &self.matchings, self.root)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Half the number of vertices.
    pub fn n(&self) -> usize {
        self.num_vertices / 2
    }

    pub fn root(&self) -> (u32, u32) {
        self.root
    }

    #[inline]
    pub fn partner(&self, color: usize, v: u32) -> u32 {
        self.matchings[color * self.num_vertices + v as usize]
    }

    pub fn matching(&self, color: usize) -> &[u32] {
        &self.matchings[color * self.num_vertices..(color + 1) * self.num_vertices]
    }

    fn check_color(&self, color: usize, min: usize) -> Result<()> {
        if color < min || color > self.q {
            return Err(Error::ColorOutOfRange { color, q: self.q });
        }
        Ok(())
    }

    /// Number of connected components of the subgraph on colors `{i, j}`.
    pub fn cycle_count(&self, i: usize, j: usize) -> Result<usize> {
        self.check_color(i, 0)?;
        self.check_color(j, 0)?;
        Ok(self.cycle_count_unchecked(i, j))
    }

    fn cycle_count_unchecked(&self, i: usize, j: usize) -> usize {
        let mut seen = vec![false; self.num_vertices];
        let mut cycles = 0;
        for start in 0..self.num_vertices as u32 {
            if seen[start as usize] {
                continue;
            }
            cycles += 1;
            let mut v = start;
            loop {
                seen[v as usize] = true;
                let w = self.partner(i, v);
                seen[w as usize] = true;
                v = self.partner(j, w);
                if v == start {
                    break;
                }
            }
        }
        cycles
    }

    /// `F_{0i}`: number of cycles alternating colors 0 and `i`.
    pub fn bicolored_cycle_count(&self, i: usize) -> Result<usize> {
        self.check_color(i, 1)?;
        Ok(self.cycle_count_unchecked(0, i))
    }

    /// `F_0 = sum_i F_{0i}`.
    pub fn f0(&self) -> usize {
        (1..=self.q).map(|i| self.cycle_count_unchecked(0, i)).sum()
    }

    /// `1 + (q-1) V / 2 - F_0`.
    pub fn order(&self) -> usize {
        let value = 1 + (self.q - 1) * self.n();
        let f0 = self.f0();
        debug_assert!(f0 <= value, "negative order on a valid graph");
        value - f0
    }

    pub(crate) fn components_without(&self, removed: &[usize]) -> (Vec<u32>, usize) {
        let colors: Vec<usize> = (0..=self.q).filter(|c| !removed.contains(c)).collect();
        let mut comp = vec![UNSET; self.num_vertices];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..self.num_vertices {
            if comp[s] != UNSET {
                continue;
            }
            comp[s] = count;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for &c in &colors {
                    let u = self.partner(c, v) as usize;
                    if comp[u] == UNSET {
                        comp[u] = count;
                        stack.push(u as u32);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    /// Connected components after deleting every edge of color `c`.
    pub fn residues(&self, c: usize) -> Result<ResidueSet> {
        self.check_color(c, 0)?;
        let (comp, count) = self.components_without(&[c]);
        let mut components = vec![Vec::new(); count];
        for (v, &k) in comp.iter().enumerate() {
            components[k as usize].push(v as u32);
        }
        Ok(ResidueSet {
            color_removed: c,
            components,
        })
    }

    /// `R_c`, the number of `c`-residues.
    pub fn residue_count(&self, c: usize) -> Result<usize> {
        self.check_color(c, 0)?;
        Ok(self.components_without(&[c]).1)
    }

    pub fn is_syk(&self) -> bool {
        self.components_without(&[0]).1 == 1
    }

    /// Black/white 2-coloring with the root origin black, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.num_vertices];
        let start = self.root.0;
        side[start as usize] = Some(true);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let s = side[v as usize].unwrap();
            for c in 0..=self.q {
                let u = self.partner(c, v) as usize;
                match side[u] {
                    None => {
                        side[u] = Some(!s);
                        stack.push(u as u32);
                    }
                    Some(t) if t == s => return None,
                    _ => {}
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(true)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Whether the ends of the color-0 edge `(origin, end)` are joined by a
    /// path avoiding color 0.
    pub fn admissible_pair(&self, origin: u32, end: u32) -> Result<bool> {
        if origin as usize >= self.num_vertices || self.partner(0, origin) != end {
            return Err(Error::NotColor0Edge { origin, end });
        }
        let (comp, _) = self.components_without(&[0]);
        Ok(comp[origin as usize] == comp[end as usize])
    }

    /// Gurau degree `q + q(q-1)V/4 - sum_{i<j} F_ij` over all colors.
    pub fn gurau_degree(&self) -> Rational64 {
        let colors: Vec<usize> = (0..=self.q).collect();
        self.gurau_degree_on(&colors)
    }

    /// Gurau degree of the graph restricted to `colors`, with
    /// `D = |colors| - 1`: `D + D(D-1)V/4 - sum F_ij`.
    pub fn gurau_degree_on(&self, colors: &[usize]) -> Rational64 {
        let d = colors.len() as i64 - 1;
        let mut faces = 0i64;
        for (a, &i) in colors.iter().enumerate() {
            for &j in &colors[a + 1..] {
                faces += self.cycle_count_unchecked(i, j) as i64;
            }
        }
        Rational64::from_integer(d) + Rational64::new(d * (d - 1) * self.num_vertices as i64, 4)
            - Rational64::from_integer(faces)
    }

    /// Melonic test on the graph restricted to `colors`.
    ///
    /// Repeatedly contracts pairs of vertices sharing `|colors| - 1` edges
    /// until two vertices remain. A disconnected restriction is not melonic.
    pub fn is_melonic(&self, colors: &[usize]) -> bool {
        let all: Vec<u32> = (0..self.num_vertices as u32).collect();
        self.is_melonic_subgraph(colors, &all)
    }

    /// Melonic test on the subgraph induced by `vertices`, which must be
    /// closed under every color in `colors`.
    pub fn is_melonic_subgraph(&self, colors: &[usize], vertices: &[u32]) -> bool {
        let k = colors.len();
        let size = vertices.len();
        if k == 0 || size < 2 {
            return false;
        }
        let mut local = vec![UNSET; self.num_vertices];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        // m[c * size + i]: local partner of local vertex i in the c-th color
        let mut m = vec![0u32; k * size];
        for (ci, &c) in colors.iter().enumerate() {
            for (i, &v) in vertices.iter().enumerate() {
                let p = local[self.partner(c, v) as usize];
                if p == UNSET {
                    return false;
                }
                m[ci * size + i] = p;
            }
        }
        // connectivity of the restriction
        let mut seen = vec![false; size];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for ci in 0..k {
                let u = m[ci * size + v as usize] as usize;
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u as u32);
                }
            }
        }
        if reached != size {
            return false;
        }
        let mut alive = vec![true; size];
        let mut remaining = size;
        let mut work: Vec<u32> = (0..size as u32).collect();
        while let Some(v) = work.pop() {
            if remaining == 2 {
                break;
            }
            let v = v as usize;
            if !alive[v] {
                continue;
            }
            for ci in 0..k {
                let u = m[ci * size + v] as usize;
                let shared = (0..k).filter(|&cj| m[cj * size + v] as usize == u).count();
                if shared + 1 != k {
                    continue;
                }
                let free = (0..k).find(|&cj| m[cj * size + v] as usize != u).unwrap();
                let a = m[free * size + v] as usize;
                let b = m[free * size + u] as usize;
                m[free * size + a] = b as u32;
                m[free * size + b] = a as u32;
                alive[v] = false;
                alive[u] = false;
                remaining -= 2;
                work.push(a as u32);
                work.push(b as u32);
                break;
            }
        }
        remaining == 2
    }

    /// Relabels vertices by `perm[old] = new`.
    pub fn relabel(&self, perm: &[u32]) -> ColoredGraph {
        let nv = self.num_vertices;
        let mut flat = vec![0u32; self.matchings.len()];
        for c in 0..=self.q {
            for v in 0..nv {
                flat[c * nv + perm[v] as usize] = perm[self.matchings[c * nv + v] as usize];
            }
        }
        ColoredGraph::from_flat_unchecked(self.q, nv, flat, (perm[self.root.0 as usize], perm[self.root.1 as usize]))
    }

    /// Canonical vertex labeling: color-0 pairs numbered in breadth-first
    /// discovery order from the root edge, each pair getting labels
    /// `2k, 2k+1`. Within a pair the black vertex comes first when the graph
    /// is bipartite, otherwise the vertex through which the pair was found.
    pub fn canonical_labeling(&self) -> Vec<u32> {
        let sides = self.bipartition();
        let nv = self.num_vertices;
        let mut label = vec![UNSET; nv];
        let mut order = Vec::with_capacity(nv);
        let (o, e) = self.root;
        label[o as usize] = 0;
        label[e as usize] = 1;
        order.push(o);
        order.push(e);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for c in 1..=self.q {
                let u = self.partner(c, v);
                if label[u as usize] != UNSET {
                    continue;
                }
                let p = self.partner(0, u);
                let (first, second) = match &sides {
                    Some(s) if !s[u as usize] => (p, u),
                    _ => (u, p),
                };
                let next = order.len() as u32;
                label[first as usize] = next;
                label[second as usize] = next + 1;
                order.push(first);
                order.push(second);
            }
        }
        label
    }

    /// The representative of this rooted isomorphism class.
    pub fn canonical_form(&self) -> ColoredGraph {
        self.relabel(&self.canonical_labeling())
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            q: self.q,
            vertices: self.num_vertices,
            matchings: (0..=self.q).map(|c| self.matching(c).to_vec()).collect(),
            root: [self.root.0, self.root.1],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Self::try_from(raw)
    }

    /// Graphviz rendering, one edge per matched pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.num_vertices {
            let _ = writeln!(out, "  {v};");
        }
        for c in 0..=self.q {
            for v in 0..self.num_vertices as u32 {
                let u = self.partner(c, v);
                if v < u {
                    if c == 0 && ((v, u) == self.root || (u, v) == self.root) {
                        let _ = writeln!(out, "  {} -- {} [color={c}, root=true];", self.root.0, self.root.1);
                    } else {
                        let _ = writeln!(out, "  {v} -- {u} [color={c}];");
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl TryFrom<GraphJson> for ColoredGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let g = ColoredGraph::new(raw.q, raw.matchings, (raw.root[0], raw.root[1]))?;
        if g.num_vertices != raw.vertices {
            return Err(Violation::BadVertexCount(raw.vertices).into());
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inserts a q-dipole on the color-1 edge of the 2-vertex graph.
    pub(crate) fn melon_insertion(q: usize) -> ColoredGraph {
        // vertices 0,1 original; 2,3 inserted pair joined by all colors but 1
        let mut m = vec![vec![0u32; 4]; q + 1];
        for (c, mc) in m.iter_mut().enumerate() {
            if c == 1 {
                *mc = vec![2, 3, 0, 1];
            } else {
                *mc = vec![1, 0, 3, 2];
            }
        }
        ColoredGraph::new(q, m, (0, 1)).unwrap()
    }

    fn double_dipole(q: usize) -> ColoredGraph {
        // two q-dipoles {0,1} and {2,3}, joined only by color 0
        let mut m = vec![vec![1, 0, 3, 2]; q + 1];
        m[0] = vec![2, 3, 0, 1];
        ColoredGraph::new(q, m, (0, 2)).unwrap()
    }

    fn k33() -> ColoredGraph {
        // q = 2; black 2i joined to white 2((i+c) mod 3)+1 by color c
        let mut m = vec![vec![0u32; 6]; 3];
        for (c, mc) in m.iter_mut().enumerate() {
            for i in 0..3u32 {
                let w = 2 * ((i + c as u32) % 3) + 1;
                mc[2 * i as usize] = w;
                mc[w as usize] = 2 * i;
            }
        }
        ColoredGraph::new(2, m, (0, 1)).unwrap()
    }

    #[test]
    fn smallest_graph_is_valid() {
        let g = ColoredGraph::new(3, vec![vec![1, 0]; 4], (0, 1)).unwrap();
        assert_eq!(g, ColoredGraph::dipole(3));
        assert!(g.validate().is_ok());
    }

    #[test]
    fn fixed_point_is_reported() {
        let mut m = vec![vec![1, 0]; 4];
        m[2] = vec![0, 0];
        let err = ColoredGraph::new(3, m, (0, 1)).unwrap_err();
        assert!(matches!(err, Violation::FixedPoint { color: 2, vertex: 0 }));
        assert!(err.to_string().contains("fixed point"));
    }

    #[test]
    fn disconnected_is_reported() {
        let m = vec![vec![1, 0, 3, 2]; 4];
        let err = ColoredGraph::new(3, m, (0, 1)).unwrap_err();
        assert!(matches!(err, Violation::Disconnected { vertex: 2 }));
        assert!(err.to_string().contains("disconnected"));
    }

    #[test]
    fn root_must_be_color0_edge() {
        let g = melon_insertion(3);
        let m = (0..=3).map(|c| g.matching(c).to_vec()).collect();
        assert!(matches!(
            ColoredGraph::new(3, m, (0, 2)),
            Err(Violation::RootNotColor0 { .. })
        ));
    }

    #[test]
    fn dipole_cycles_and_order() {
        let g = ColoredGraph::dipole(3);
        for i in 1..=3 {
            assert_eq!(g.bicolored_cycle_count(i).unwrap(), 1);
        }
        assert_eq!(g.order(), 0);
        let g2 = ColoredGraph::dipole(2);
        assert_eq!(g2.bicolored_cycle_count(1).unwrap(), 1);
        assert_eq!(g2.bicolored_cycle_count(2).unwrap(), 1);
        assert_eq!(g2.f0(), 2);
        assert!(g.bicolored_cycle_count(0).is_err());
        assert!(g.bicolored_cycle_count(4).is_err());
    }

    #[test]
    fn melon_insertion_counts() {
        let g = melon_insertion(3);
        assert_eq!(g.bicolored_cycle_count(1).unwrap(), 1);
        assert_eq!(g.bicolored_cycle_count(2).unwrap(), 2);
        assert_eq!(g.bicolored_cycle_count(3).unwrap(), 2);
        assert_eq!(g.order(), 0);
        assert!(g.is_melonic(&[0, 1, 2, 3]));
        assert!(g.is_syk());
        assert_eq!(g.gurau_degree(), Rational64::from_integer(0));
    }

    #[test]
    fn residues_and_syk() {
        let g = ColoredGraph::dipole(3);
        assert_eq!(g.residues(0).unwrap().len(), 1);
        assert!(g.is_syk());
        let d = double_dipole(3);
        assert_eq!(d.residues(0).unwrap().len(), 2);
        assert!(!d.is_syk());
        assert!(!d.admissible_pair(0, 2).unwrap());
        assert!(!d.admissible_pair(1, 3).unwrap());
        assert!(g.admissible_pair(0, 1).unwrap());
        assert!(matches!(d.admissible_pair(0, 1), Err(Error::NotColor0Edge { .. })));
        assert!(d.residues(4).is_err());
    }

    #[test]
    fn bipartite_parity() {
        assert!(ColoredGraph::dipole(3).is_bipartite());
        // color 1 equals color 0; colors 2, 3 cross: 0-2, 1-3 -> 4-cycle 0-1-3-2, even
        let m = vec![vec![1, 0, 3, 2], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let g = ColoredGraph::new(3, m, (0, 1)).unwrap();
        // colors 2 and 3 close the odd cycle 0-2-1 (0-2 color 2, 2-1 color 3, 1-0 color 0)
        assert!(!g.is_bipartite());
        let m = vec![vec![1, 0, 3, 2], vec![1, 0, 3, 2], vec![3, 2, 1, 0], vec![3, 2, 1, 0]];
        let g = ColoredGraph::new(3, m, (0, 1)).unwrap();
        assert!(g.is_bipartite());
    }

    #[test]
    fn gurau_degree_of_dipole_is_zero() {
        assert_eq!(ColoredGraph::dipole(3).gurau_degree(), Rational64::from_integer(0));
    }

    #[test]
    fn k33_is_not_melonic() {
        let g = k33();
        assert!(g.is_bipartite());
        assert!(!g.is_melonic(&[0, 1, 2]));
        assert_eq!(g.gurau_degree(), Rational64::from_integer(2));
        // q = 2: order is E - V + 1 of the map with the color-0 edges as
        // edges and the bicolored cycles as vertices
        assert_eq!(g.f0(), 2);
        assert_eq!(g.order(), 3 - 2 + 1);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = melon_insertion(3);
        let perm = vec![3, 2, 0, 1];
        let h = g.relabel(&perm);
        assert_ne!(g, h);
        assert_eq!(g.canonical_form(), h.canonical_form());
        let c = g.canonical_form();
        let sides = c.bipartition().unwrap();
        for v in 0..4 {
            assert_eq!(sides[v], v % 2 == 0, "blacks sit at even labels");
        }
    }

    #[test]
    fn json_and_dot() {
        let g = melon_insertion(3);
        let back = ColoredGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        let dot = g.to_dot();
        assert!(dot.contains("root=true"));
        assert_eq!(dot.matches(" -- ").count(), 8);
        assert!(ColoredGraph::from_json(r#"{"q":3,"vertices":2,"matchings":[[1,0],[1,0],[0,0],[1,0]],"root":[0,1]}"#).is_err());
    }
}
