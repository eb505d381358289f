//! Cores, chains and kernel diagrams.
//!
//! A kernel diagram has white vertices (unembedded, at most `q` half-edges
//! of distinct colors) and colored vertices (embedded, every half-edge of
//! the vertex color). Vertex 0 is the root, which is white.

mod core;
mod enumerate;

use serde::Serialize;

use crate::error::{Error, Result};

pub use self::core::{core, reconstruct, Chain, ChainEnd, CoreDiagram, PruneStep};
pub use self::enumerate::{
    dominant_kernel_count, dominant_weighted_sum, enumerate_kernels, for_each_kernel, kernel_count, profile_counts,
    MAX_DELTA,
};

const UNSET: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "color")]
pub enum VertexKind {
    White,
    Colored(usize),
}

impl VertexKind {
    pub fn is_white(self) -> bool {
        matches!(self, VertexKind::White)
    }
}

/// Endpoint classes of a kernel edge: colored/colored, colored/white,
/// white/white.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeClass {
    ColoredColored,
    ColoredWhite,
    WhiteWhite,
}

impl EdgeClass {
    pub fn of(a: VertexKind, b: VertexKind) -> Self {
        match (a.is_white(), b.is_white()) {
            (false, false) => EdgeClass::ColoredColored,
            (true, true) => EdgeClass::WhiteWhite,
            _ => EdgeClass::ColoredWhite,
        }
    }

    pub fn whites(self) -> usize {
        match self {
            EdgeClass::ColoredColored => 0,
            EdgeClass::ColoredWhite => 1,
            EdgeClass::WhiteWhite => 2,
        }
    }
}

/// Type of a chain or kernel edge: endpoint classes and whether the two
/// end half-edges share their color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainType {
    pub class: EdgeClass,
    pub equal: bool,
}

impl ChainType {
    pub const ALL: [ChainType; 6] = [
        ChainType { class: EdgeClass::ColoredColored, equal: false },
        ChainType { class: EdgeClass::ColoredColored, equal: true },
        ChainType { class: EdgeClass::ColoredWhite, equal: false },
        ChainType { class: EdgeClass::ColoredWhite, equal: true },
        ChainType { class: EdgeClass::WhiteWhite, equal: false },
        ChainType { class: EdgeClass::WhiteWhite, equal: true },
    ];
}

/// Vertex and edge counters of a kernel diagram. Field names use `c` for
/// colored and `w` for white endpoints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeStats {
    pub white_vertices: usize,
    pub colored_vertices: usize,
    pub edges: usize,
    pub cc_equal: usize,
    pub cc_unequal: usize,
    pub cw_equal: usize,
    pub cw_unequal: usize,
    pub ww_equal: usize,
    pub ww_unequal: usize,
}

impl EdgeStats {
    pub fn cc(&self) -> usize {
        self.cc_equal + self.cc_unequal
    }

    pub fn cw(&self) -> usize {
        self.cw_equal + self.cw_unequal
    }

    pub fn ww(&self) -> usize {
        self.ww_equal + self.ww_unequal
    }

    pub fn unicolored(&self) -> usize {
        self.cc_equal + self.cw_equal + self.ww_equal
    }

    pub fn bicolored(&self) -> usize {
        self.cc_unequal + self.cw_unequal + self.ww_unequal
    }

    pub fn excess(&self) -> usize {
        self.edges + 1 - self.white_vertices - self.colored_vertices
    }

    pub fn count(&self, t: ChainType) -> usize {
        match (t.class, t.equal) {
            (EdgeClass::ColoredColored, true) => self.cc_equal,
            (EdgeClass::ColoredColored, false) => self.cc_unequal,
            (EdgeClass::ColoredWhite, true) => self.cw_equal,
            (EdgeClass::ColoredWhite, false) => self.cw_unequal,
            (EdgeClass::WhiteWhite, true) => self.ww_equal,
            (EdgeClass::WhiteWhite, false) => self.ww_unequal,
        }
    }

    fn bump(&mut self, t: ChainType) {
        let slot = match (t.class, t.equal) {
            (EdgeClass::ColoredColored, true) => &mut self.cc_equal,
            (EdgeClass::ColoredColored, false) => &mut self.cc_unequal,
            (EdgeClass::ColoredWhite, true) => &mut self.cw_equal,
            (EdgeClass::ColoredWhite, false) => &mut self.cw_unequal,
            (EdgeClass::WhiteWhite, true) => &mut self.ww_equal,
            (EdgeClass::WhiteWhite, false) => &mut self.ww_unequal,
        };
        *slot += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelDiagram {
    q: usize,
    kinds: Vec<VertexKind>,
    /// Half-edges of each vertex: by color at whites, counterclockwise at
    /// colored vertices.
    rotation: Vec<Vec<u32>>,
    he_vertex: Vec<u32>,
    he_color: Vec<usize>,
    he_twin: Vec<u32>,
}

#[derive(Serialize)]
struct HalfEdgeJson {
    vertex: u32,
    color: usize,
    twin: u32,
}

#[derive(Serialize)]
pub struct KernelJson<'a> {
    q: usize,
    vertices: &'a [VertexKind],
    half_edges: Vec<HalfEdgeJson>,
    embedding: &'a [Vec<u32>],
    stats: EdgeStats,
    dominant: bool,
}

impl KernelDiagram {
    /// The excess-0 kernel: the root alone.
    pub fn root_only(q: usize) -> Self {
        KernelDiagram {
            q,
            kinds: vec![VertexKind::White],
            rotation: vec![Vec::new()],
            he_vertex: Vec::new(),
            he_color: Vec::new(),
            he_twin: Vec::new(),
        }
    }

    /// Builds a diagram from vertex kinds and half-edges `(vertex, color)`
    /// with an explicit twin array. Rotations at colored vertices follow
    /// half-edge id order.
    pub fn from_parts(q: usize, kinds: Vec<VertexKind>, half_edges: &[(u32, usize)], twins: Vec<u32>) -> Result<Self> {
        let mut rotation = vec![Vec::new(); kinds.len()];
        for (h, &(v, _)) in half_edges.iter().enumerate() {
            rotation
                .get_mut(v as usize)
                .ok_or_else(|| Error::InvalidKernel(format!("half-edge {h} on missing vertex {v}")))?
                .push(h as u32);
        }
        let he_color: Vec<usize> = half_edges.iter().map(|&(_, c)| c).collect();
        for (v, rot) in rotation.iter_mut().enumerate() {
            if kinds[v].is_white() {
                rot.sort_by_key(|&h| he_color[h as usize]);
            }
        }
        let k = KernelDiagram {
            q,
            kinds,
            rotation,
            he_vertex: half_edges.iter().map(|&(v, _)| v).collect(),
            he_color,
            he_twin: twins,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_edges(&self) -> usize {
        self.he_vertex.len() / 2
    }

    pub fn kind(&self, v: u32) -> VertexKind {
        self.kinds[v as usize]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rotation[v as usize].len()
    }

    pub fn half_edges(&self, v: u32) -> &[u32] {
        &self.rotation[v as usize]
    }

    pub fn twin(&self, h: u32) -> u32 {
        self.he_twin[h as usize]
    }

    pub fn color(&self, h: u32) -> usize {
        self.he_color[h as usize]
    }

    pub fn vertex_of(&self, h: u32) -> u32 {
        self.he_vertex[h as usize]
    }

    /// Edges as half-edge pairs `(h, twin)` with `h < twin`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.he_vertex.len() as u32)
            .filter(|&h| h < self.he_twin[h as usize])
            .map(|h| (h, self.he_twin[h as usize]))
            .collect()
    }

    pub fn edge_type(&self, h: u32) -> ChainType {
        let t = self.twin(h);
        ChainType {
            class: EdgeClass::of(self.kind(self.vertex_of(h)), self.kind(self.vertex_of(t))),
            equal: self.color(h) == self.color(t),
        }
    }

    pub fn excess(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidKernel(m));
        if self.kinds.first() != Some(&VertexKind::White) {
            return bad("root must be a white vertex".into());
        }
        let nh = self.he_vertex.len();
        if self.he_twin.len() != nh || self.he_color.len() != nh {
            return bad("half-edge arrays disagree in length".into());
        }
        for h in 0..nh {
            let t = self.he_twin[h] as usize;
            if t >= nh || t == h || self.he_twin[t] as usize != h {
                return bad(format!("half-edge {h} has no proper twin"));
            }
            let c = self.he_color[h];
            if c == 0 || c > self.q {
                return bad(format!("half-edge {h} has color {c}"));
            }
        }
        for (v, kind) in self.kinds.iter().enumerate() {
            let rot = &self.rotation[v];
            if v > 0 && rot.len() < 3 {
                return bad(format!("vertex {v} has degree {}", rot.len()));
            }
            match *kind {
                VertexKind::White => {
                    if rot.len() > self.q || rot.windows(2).any(|w| self.he_color[w[0] as usize] >= self.he_color[w[1] as usize]) {
                        return bad(format!("white vertex {v} repeats a color"));
                    }
                }
                VertexKind::Colored(c) => {
                    if c == 0 || c > self.q || rot.iter().any(|&h| self.he_color[h as usize] != c) {
                        return bad(format!("colored vertex {v} has a half-edge of another color"));
                    }
                }
            }
        }
        let (labels, _) = self.traversal();
        if labels.contains(&UNSET) {
            return bad("disconnected".into());
        }
        Ok(())
    }

    pub fn edge_stats(&self) -> EdgeStats {
        let mut s = EdgeStats {
            white_vertices: self.kinds.iter().filter(|k| k.is_white()).count(),
            colored_vertices: self.kinds.iter().filter(|k| !k.is_white()).count(),
            edges: self.num_edges(),
            ..EdgeStats::default()
        };
        for (h, _) in self.edges() {
            s.bump(self.edge_type(h));
        }
        s
    }

    /// Root of degree 1 and every other vertex of degree 3.
    pub fn is_dominant(&self) -> bool {
        self.num_edges() > 0 && self.degree(0) == 1 && (1..self.num_vertices() as u32).all(|v| self.degree(v) == 3)
    }

    /// Breadth-first traversal from the root. Returns the label of each
    /// vertex and, per vertex, its half-edges in traversal order (starting
    /// at the arrival half-edge for colored vertices).
    fn traversal(&self) -> (Vec<u32>, Vec<Vec<u32>>) {
        let nv = self.num_vertices();
        let mut label = vec![UNSET; nv];
        let mut seq = vec![Vec::new(); nv];
        let mut order = vec![0u32];
        label[0] = 0;
        seq[0] = self.rotation[0].clone();
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            head += 1;
            for i in 0..seq[v].len() {
                let t = self.he_twin[seq[v][i] as usize];
                let u = self.he_vertex[t as usize] as usize;
                if label[u] != UNSET {
                    continue;
                }
                label[u] = order.len() as u32;
                order.push(u as u32);
                let rot = &self.rotation[u];
                seq[u] = if self.kinds[u].is_white() {
                    rot.clone()
                } else {
                    let p = rot.iter().position(|&x| x == t).unwrap();
                    rot[p..].iter().chain(&rot[..p]).copied().collect()
                };
            }
        }
        (label, seq)
    }

    /// Isomorphism-invariant serialization: vertex count, then for each
    /// vertex in traversal order its kind, degree, and for each half-edge
    /// its color and the (label, position) of its twin.
    pub fn canonical_code(&self) -> Vec<u16> {
        let (label, seq) = self.traversal();
        let nv = self.num_vertices();
        let mut pos = vec![0u16; self.he_vertex.len()];
        for s in &seq {
            for (i, &h) in s.iter().enumerate() {
                pos[h as usize] = i as u16;
            }
        }
        let mut by_label = vec![0usize; nv];
        for (v, &l) in label.iter().enumerate() {
            by_label[l as usize] = v;
        }
        let mut code = Vec::with_capacity(1 + 2 * nv + 3 * self.he_vertex.len());
        code.push(nv as u16);
        for &v in &by_label {
            code.push(match self.kinds[v] {
                VertexKind::White => 0,
                VertexKind::Colored(c) => c as u16,
            });
            code.push(seq[v].len() as u16);
            for &h in &seq[v] {
                let t = self.he_twin[h as usize];
                code.push(self.he_color[h as usize] as u16);
                code.push(label[self.he_vertex[t as usize] as usize] as u16);
                code.push(pos[t as usize]);
            }
        }
        code
    }

    /// Rebuilds the diagram described by a canonical code; half-edges are
    /// numbered by (vertex, position).
    pub fn from_code(q: usize, code: &[u16]) -> Result<Self> {
        let bad = || Error::InvalidKernel("malformed canonical code".into());
        let nv = *code.first().ok_or_else(bad)? as usize;
        let mut kinds = Vec::with_capacity(nv);
        let mut degrees = Vec::with_capacity(nv);
        let mut entries = Vec::new();
        let mut i = 1;
        for _ in 0..nv {
            let kind = *code.get(i).ok_or_else(bad)? as usize;
            let deg = *code.get(i + 1).ok_or_else(bad)? as usize;
            i += 2;
            kinds.push(if kind == 0 { VertexKind::White } else { VertexKind::Colored(kind) });
            degrees.push(deg);
            for _ in 0..deg {
                let e = code.get(i..i + 3).ok_or_else(bad)?;
                entries.push((e[0] as usize, e[1] as usize, e[2] as usize));
                i += 3;
            }
        }
        if i != code.len() {
            return Err(bad());
        }
        let mut offset = vec![0usize; nv + 1];
        for v in 0..nv {
            offset[v + 1] = offset[v] + degrees[v];
        }
        let mut half_edges = Vec::with_capacity(entries.len());
        let mut twins = Vec::with_capacity(entries.len());
        for v in 0..nv {
            for &(color, tv, tp) in &entries[offset[v]..offset[v + 1]] {
                if tv >= nv || tp >= degrees[tv] {
                    return Err(bad());
                }
                half_edges.push((v as u32, color));
                twins.push((offset[tv] + tp) as u32);
            }
        }
        let k = Self::from_parts(q, kinds, &half_edges, twins)?;
        Ok(k)
    }

    pub fn canonical(&self) -> KernelDiagram {
        Self::from_code(self.q, &self.canonical_code()).expect("canonical code of a valid kernel")
    }

    pub fn to_json_value(&self) -> KernelJson<'_> {
        KernelJson {
            q: self.q,
            vertices: &self.kinds,
            half_edges: (0..self.he_vertex.len())
                .map(|h| HalfEdgeJson {
                    vertex: self.he_vertex[h],
                    color: self.he_color[h],
                    twin: self.he_twin[h],
                })
                .collect(),
            embedding: &self.rotation,
            stats: self.edge_stats(),
            dominant: self.is_dominant(),
        }
    }
}
