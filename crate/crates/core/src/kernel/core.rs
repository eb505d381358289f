//! Leaf pruning, chain decomposition and kernel extraction.

use std::collections::{HashMap, HashSet};

use super::{ChainType, EdgeClass, KernelDiagram, VertexKind};
use crate::constellation::Constellation;
use crate::error::{Error, Result};

/// A constellation viewed as a plain graph with masks marking what
/// survives leaf pruning.
///
/// Vertex ids: whites `0..n`, then colored vertices `n..n + C` in the order
/// of [`Constellation::colored_cycles`]. Edge `k * q + (c - 1)` joins white
/// `k` to the color-`c` vertex holding it.
#[derive(Clone, Debug)]
pub struct CoreDiagram {
    q: usize,
    num_white: usize,
    root: u32,
    colored: Vec<(usize, Vec<u32>)>,
    edge_colored: Vec<u32>,
    alive_vertex: Vec<bool>,
    alive_edge: Vec<bool>,
    degree: Vec<u32>,
}

/// One pruning step: a leaf and the edge that held it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneStep {
    pub vertex: u32,
    pub edge: u32,
}

/// Where a chain meets the kernel: the kernel vertex and the edge used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainEnd {
    pub vertex: u32,
    pub edge: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: ChainEnd,
    pub end: ChainEnd,
    /// Degree-2 vertices from start to end.
    pub internal: Vec<u32>,
}

impl CoreDiagram {
    fn from_constellation(s: &Constellation) -> Self {
        let q = s.q();
        let n = s.num_white();
        let colored = s.colored_cycles();
        let mut edge_colored = vec![0u32; q * n];
        let mut degree = vec![q as u32; n];
        for (j, (c, whites)) in colored.iter().enumerate() {
            for &k in whites {
                edge_colored[k as usize * q + c - 1] = (n + j) as u32;
            }
            degree.push(whites.len() as u32);
        }
        let nv = n + colored.len();
        CoreDiagram {
            q,
            num_white: n,
            root: s.root(),
            colored,
            edge_colored,
            alive_vertex: vec![true; nv],
            alive_edge: vec![true; q * n],
            degree,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn num_white(&self) -> usize {
        self.num_white
    }

    pub fn is_white(&self, v: u32) -> bool {
        (v as usize) < self.num_white
    }

    /// Color of a colored vertex.
    pub fn vertex_color(&self, v: u32) -> usize {
        self.colored[v as usize - self.num_white].0
    }

    pub fn edge_color(&self, e: u32) -> usize {
        e as usize % self.q + 1
    }

    pub fn edge_white(&self, e: u32) -> u32 {
        e / self.q as u32
    }

    pub fn edge_colored_vertex(&self, e: u32) -> u32 {
        self.edge_colored[e as usize]
    }

    pub fn other_end(&self, e: u32, v: u32) -> u32 {
        let w = self.edge_white(e);
        if w == v {
            self.edge_colored[e as usize]
        } else {
            w
        }
    }

    pub fn is_alive(&self, v: u32) -> bool {
        self.alive_vertex[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.degree[v as usize] as usize
    }

    /// Alive edges at `v`: by color at whites, in corner order at colored
    /// vertices.
    pub fn alive_edges(&self, v: u32) -> Vec<u32> {
        let q = self.q as u32;
        if self.is_white(v) {
            (0..q).map(|c| v * q + c).filter(|&e| self.alive_edge[e as usize]).collect()
        } else {
            let (c, whites) = &self.colored[v as usize - self.num_white];
            whites
                .iter()
                .map(|&k| k * q + *c as u32 - 1)
                .filter(|&e| self.alive_edge[e as usize])
                .collect()
        }
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.alive_vertex.len() as u32).filter(|&v| self.alive_vertex[v as usize])
    }

    pub fn num_alive_vertices(&self) -> usize {
        self.alive_vertex.iter().filter(|&&a| a).count()
    }

    pub fn num_alive_edges(&self) -> usize {
        self.alive_edge.iter().filter(|&&a| a).count()
    }

    pub fn excess(&self) -> usize {
        self.num_alive_edges() + 1 - self.num_alive_vertices()
    }

    /// Kernel vertices: the root and every alive vertex of degree at least 3.
    pub fn is_kernel_vertex(&self, v: u32) -> bool {
        self.alive_vertex[v as usize] && (v == self.root || self.degree[v as usize] >= 3)
    }

    /// Maximal paths of non-root degree-2 vertices between kernel vertices.
    pub fn chains(&self) -> Vec<Chain> {
        let mut used = HashSet::new();
        let mut out = Vec::new();
        for v in self.alive_vertices().filter(|&v| self.is_kernel_vertex(v)) {
            for e in self.alive_edges(v) {
                if used.contains(&(v, e)) {
                    continue;
                }
                let mut internal = Vec::new();
                let mut edge = e;
                let mut u = self.other_end(e, v);
                while !self.is_kernel_vertex(u) {
                    internal.push(u);
                    edge = self.alive_edges(u).into_iter().find(|&f| f != edge).expect("degree-2 vertex");
                    u = self.other_end(edge, u);
                }
                used.insert((v, e));
                used.insert((u, edge));
                out.push(Chain {
                    start: ChainEnd { vertex: v, edge: e },
                    end: ChainEnd { vertex: u, edge },
                    internal,
                });
            }
        }
        out
    }

    fn kind(&self, v: u32) -> VertexKind {
        if self.is_white(v) {
            VertexKind::White
        } else {
            VertexKind::Colored(self.vertex_color(v))
        }
    }

    pub fn chain_type(&self, chain: &Chain) -> ChainType {
        ChainType {
            class: EdgeClass::of(self.kind(chain.start.vertex), self.kind(chain.end.vertex)),
            equal: self.edge_color(chain.start.edge) == self.edge_color(chain.end.edge),
        }
    }

    /// Replaces every chain by an edge keeping its end colors; returns the
    /// canonical kernel.
    pub fn kernel(&self) -> KernelDiagram {
        self.kernel_with_chains().0.canonical()
    }

    /// The kernel (not canonicalized) together with each chain and the
    /// kernel half-edge at the chain start.
    pub fn kernel_with_chains(&self) -> (KernelDiagram, Vec<(u32, Chain)>) {
        let chains = self.chains();
        let mut ids: Vec<u32> = self.alive_vertices().filter(|&v| self.is_kernel_vertex(v) && v != self.root).collect();
        ids.insert(0, self.root);
        let mut index = HashMap::new();
        for (i, &v) in ids.iter().enumerate() {
            index.insert(v, i as u32);
        }
        let kinds: Vec<VertexKind> = ids.iter().map(|&v| self.kind(v)).collect();
        let mut half_of: HashMap<(u32, u32), u32> = HashMap::new();
        let mut half_edges = Vec::with_capacity(2 * chains.len());
        let mut twins = Vec::with_capacity(2 * chains.len());
        for (i, ch) in chains.iter().enumerate() {
            let i = i as u32;
            half_of.insert((ch.start.vertex, ch.start.edge), 2 * i);
            half_of.insert((ch.end.vertex, ch.end.edge), 2 * i + 1);
            half_edges.push((index[&ch.start.vertex], self.edge_color(ch.start.edge)));
            half_edges.push((index[&ch.end.vertex], self.edge_color(ch.end.edge)));
            twins.push(2 * i + 1);
            twins.push(2 * i);
        }
        // colored vertices keep the corner order of the constellation
        let mut ordered = vec![(0u32, 0usize); half_edges.len()];
        let mut next = 0;
        for &v in &ids {
            for e in self.alive_edges(v) {
                let h = half_of[&(v, e)];
                ordered[next] = (h, half_edges[h as usize].1);
                next += 1;
            }
        }
        let mut relabel = vec![0u32; half_edges.len()];
        for (new, &(old, _)) in ordered.iter().enumerate() {
            relabel[old as usize] = new as u32;
        }
        let mut hs = vec![(0u32, 0usize); half_edges.len()];
        let mut tw = vec![0u32; half_edges.len()];
        for old in 0..half_edges.len() {
            let new = relabel[old] as usize;
            hs[new] = half_edges[old];
            tw[new] = relabel[twins[old] as usize];
        }
        let k = KernelDiagram::from_parts(self.q, kinds, &hs, tw).expect("kernel of a valid core");
        let chains = chains
            .into_iter()
            .map(|ch| (relabel[half_of[&(ch.start.vertex, ch.start.edge)] as usize], ch))
            .collect();
        (k, chains)
    }
}

/// Prunes non-root leaves until none remain.
pub fn core(s: &Constellation) -> (CoreDiagram, Vec<PruneStep>) {
    let mut c = CoreDiagram::from_constellation(s);
    let mut steps = Vec::new();
    let mut stack: Vec<u32> = (0..c.alive_vertex.len() as u32).filter(|&v| v != c.root && c.degree[v as usize] == 1).collect();
    while let Some(v) = stack.pop() {
        if !c.alive_vertex[v as usize] || c.degree[v as usize] != 1 {
            continue;
        }
        let e = c.alive_edges(v)[0];
        let u = c.other_end(e, v);
        c.alive_vertex[v as usize] = false;
        c.alive_edge[e as usize] = false;
        c.degree[v as usize] = 0;
        c.degree[u as usize] -= 1;
        steps.push(PruneStep { vertex: v, edge: e });
        if u != c.root && c.degree[u as usize] == 1 {
            stack.push(u);
        }
    }
    (c, steps)
}

/// Re-attaches pruned leaves in reverse order and returns the constellation.
pub fn reconstruct(core: &CoreDiagram, steps: &[PruneStep]) -> Result<Constellation> {
    let mut c = core.clone();
    for step in steps.iter().rev() {
        let (v, e) = (step.vertex, step.edge);
        if c.alive_vertex[v as usize] || c.alive_edge[e as usize] {
            return Err(Error::InvalidConstellation(format!("step re-adds live vertex {v}")));
        }
        let u = c.other_end(e, v);
        if !c.alive_vertex[u as usize] {
            return Err(Error::InvalidConstellation(format!("leaf {v} would hang from a pruned vertex")));
        }
        c.alive_vertex[v as usize] = true;
        c.alive_edge[e as usize] = true;
        c.degree[v as usize] = 1;
        c.degree[u as usize] += 1;
    }
    if c.alive_edge.iter().any(|a| !a) {
        return Err(Error::InvalidConstellation("record does not cover the pruned part".into()));
    }
    Constellation::from_cycles(c.q, c.num_white, c.root, &c.colored)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_core_is_root() {
        let s = Constellation::from_permutations(3, vec![vec![0, 1], vec![1, 0], vec![1, 0]], 0).unwrap();
        assert_eq!(s.excess(), 1);
        let t = Constellation::from_permutations(3, vec![vec![0]; 3], 0).unwrap();
        let (c, steps) = core(&t);
        assert_eq!(c.num_alive_vertices(), 1);
        assert_eq!(steps.len(), 3);
        assert!(c.chains().is_empty());
        assert_eq!(c.kernel(), KernelDiagram::root_only(3));
        assert_eq!(reconstruct(&c, &steps).unwrap(), t);
    }

    #[test]
    fn cycle_through_root_is_one_chain() {
        // two whites joined by color-2 and color-3 vertices of degree 2
        let s = Constellation::from_permutations(3, vec![vec![0, 1], vec![1, 0], vec![1, 0]], 0).unwrap();
        let (c, steps) = core(&s);
        assert_eq!(c.excess(), 1);
        let chains = c.chains();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].internal.len(), 3);
        let k = c.kernel();
        assert_eq!(k.num_vertices(), 1);
        assert_eq!(k.num_edges(), 1);
        assert_eq!(k.excess(), 1);
        assert_eq!(reconstruct(&c, &steps).unwrap(), s);
    }
}
