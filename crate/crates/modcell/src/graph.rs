//! Fat graphs in half-edge form.
//!
//! Half edges are the dense range `0..k`. `sigma` is one permutation of all
//! half edges whose restriction to each vertex is a single cycle, so the
//! boundary permutation is the composite `sigma[pairing[h]]`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("array lengths disagree: source {source_len}, pairing {pairing}, sigma {sigma}")]
    Length { source_len: usize, pairing: usize, sigma: usize },
    #[error("pairing is not a fixed-point-free involution at half edge {0}")]
    Pairing(usize),
    #[error("sigma is not a permutation")]
    SigmaNotPermutation,
    #[error("sigma moves half edge {0} to another vertex")]
    SigmaCrossesVertex(usize),
    #[error("sigma restricted to vertex {0} is not a single cycle")]
    SigmaNotCyclic(usize),
    #[error("vertex {0} has no half edges")]
    IsolatedVertex(usize),
    #[error("leaf vertex {0} is not univalent")]
    LeafNotUnivalent(usize),
    #[error("vertex {0} carries more than one leaf label")]
    DuplicateLeaf(usize),
    #[error("graph is disconnected: components {0:?}")]
    Disconnected(Vec<Vec<usize>>),
    #[error("genus is not integral (chi {chi}, boundary {boundary})")]
    NonIntegralGenus { chi: i64, boundary: usize },
    #[error("not a forest: edges {0:?} contain a cycle")]
    NotAForest(Vec<usize>),
    #[error("leaf collapse forbidden: edge {0}")]
    LeafCollapse(usize),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("inner vertex {0} has valence {1} < 3")]
    LowValence(usize, usize),
    #[error("boundary cycle {cycle} carries {leaves} leaves")]
    LeavesPerCycle { cycle: usize, leaves: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leaf {
    pub vertex: usize,
    pub index: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FatGraphJson", into = "FatGraphJson")]
pub struct FatGraph {
    source: Vec<usize>,
    pairing: Vec<usize>,
    sigma: Vec<usize>,
    leaves: Vec<Leaf>,
    vertex_count: usize,
}

#[derive(Serialize, Deserialize)]
struct FatGraphJson {
    half_edges: Vec<usize>,
    source: Vec<usize>,
    pairing: Vec<usize>,
    sigma: Vec<usize>,
    leaves: Vec<Leaf>,
}

impl TryFrom<FatGraphJson> for FatGraph {
    type Error = GraphError;
    fn try_from(j: FatGraphJson) -> Result<Self, GraphError> {
        if j.half_edges.iter().enumerate().any(|(k, &h)| k != h) {
            return Err(GraphError::SigmaNotPermutation);
        }
        FatGraph::new(j.source, j.pairing, j.sigma, j.leaves)
    }
}

impl From<FatGraph> for FatGraphJson {
    fn from(g: FatGraph) -> Self {
        FatGraphJson {
            half_edges: (0..g.source.len()).collect(),
            source: g.source,
            pairing: g.pairing,
            sigma: g.sigma,
            leaves: g.leaves,
        }
    }
}

/// Exact edge lengths indexed by edge id (see [`FatGraph::edges`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricAssignment {
    pub lengths: Vec<Rational64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("metric has {got} lengths for {expected} edges")]
    Arity { expected: usize, got: usize },
    #[error("edge {0} has length outside [0,1]")]
    Range(usize),
    #[error("leaf edge {0} must have length 1")]
    LeafLength(usize),
    #[error("zero-length edges {0:?} do not form a forest")]
    ZeroSetNotForest(Vec<usize>),
    #[error("collapsing zero-length edges breaks admissibility")]
    ZeroSetNotAdmissible,
    #[error("admissible cycle {cycle} has total length {sum}")]
    CycleSum { cycle: usize, sum: Rational64 },
}

impl FatGraph {
    pub fn new(
        source: Vec<usize>,
        pairing: Vec<usize>,
        sigma: Vec<usize>,
        leaves: Vec<Leaf>,
    ) -> Result<Self, GraphError> {
        let k = source.len();
        if pairing.len() != k || sigma.len() != k {
            return Err(GraphError::Length { source_len: k, pairing: pairing.len(), sigma: sigma.len() });
        }
        for h in 0..k {
            let p = pairing[h];
            if p >= k || p == h || pairing[p] != h {
                return Err(GraphError::Pairing(h));
            }
        }
        let mut hit = vec![false; k];
        for &s in &sigma {
            if s >= k || hit[s] {
                return Err(GraphError::SigmaNotPermutation);
            }
            hit[s] = true;
        }
        for h in 0..k {
            if source[sigma[h]] != source[h] {
                return Err(GraphError::SigmaCrossesVertex(h));
            }
        }
        let vertex_count = source.iter().map(|&v| v + 1).max().unwrap_or(0);
        let mut valence = vec![0usize; vertex_count];
        let mut first = vec![usize::MAX; vertex_count];
        for (h, &v) in source.iter().enumerate() {
            valence[v] += 1;
            if first[v] == usize::MAX {
                first[v] = h;
            }
        }
        for v in 0..vertex_count {
            if valence[v] == 0 {
                return Err(GraphError::IsolatedVertex(v));
            }
            let mut len = 1;
            let mut h = sigma[first[v]];
            while h != first[v] {
                len += 1;
                h = sigma[h];
            }
            if len != valence[v] {
                return Err(GraphError::SigmaNotCyclic(v));
            }
        }
        let mut seen = BTreeSet::new();
        for l in &leaves {
            if l.vertex >= vertex_count || valence[l.vertex] != 1 {
                return Err(GraphError::LeafNotUnivalent(l.vertex));
            }
            if !seen.insert(l.vertex) {
                return Err(GraphError::DuplicateLeaf(l.vertex));
            }
        }
        Ok(FatGraph { source, pairing, sigma, leaves, vertex_count })
    }

    /// Builds a graph from the ccw half-edge cycle at each vertex.
    pub fn from_rotations(
        rotations: &[Vec<usize>],
        pairing: Vec<usize>,
        leaves: Vec<Leaf>,
    ) -> Result<Self, GraphError> {
        let k = pairing.len();
        let mut source = vec![usize::MAX; k];
        let mut sigma = vec![usize::MAX; k];
        for (v, rot) in rotations.iter().enumerate() {
            for (a, &h) in rot.iter().enumerate() {
                if h >= k || source[h] != usize::MAX {
                    return Err(GraphError::SigmaNotPermutation);
                }
                source[h] = v;
                sigma[h] = rot[(a + 1) % rot.len()];
            }
        }
        if source.contains(&usize::MAX) {
            return Err(GraphError::SigmaNotPermutation);
        }
        FatGraph::new(source, pairing, sigma, leaves)
    }

    pub fn half_edge_count(&self) -> usize {
        self.source.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn edge_count(&self) -> usize {
        self.source.len() / 2
    }
    pub fn source(&self) -> &[usize] {
        &self.source
    }
    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    /// Edge `e` is the pair `(h, pairing[h])` with `h` the smaller half edge,
    /// numbered in increasing order of `h`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.source.len()).filter(|&h| h < self.pairing[h]).map(|h| (h, self.pairing[h])).collect()
    }

    pub fn edge_of_half(&self) -> Vec<usize> {
        let mut out = vec![0; self.source.len()];
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            out[a] = e;
            out[b] = e;
        }
        out
    }

    pub fn valence(&self, v: usize) -> usize {
        self.source.iter().filter(|&&s| s == v).count()
    }

    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let Some(start) = self.source.iter().position(|&s| s == v) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut h = self.sigma[start];
        while h != start {
            out.push(h);
            h = self.sigma[h];
        }
        out
    }

    pub fn leaf_at(&self, v: usize) -> Option<&Leaf> {
        self.leaves.iter().find(|l| l.vertex == v)
    }

    /// Half edges of the leaf edge, rooted at the leaf vertex.
    pub fn leaf_half(&self, leaf: &Leaf) -> usize {
        self.source.iter().position(|&s| s == leaf.vertex).expect("leaf vertex has a half edge")
    }

    /// Cycle decomposition of `omega = sigma . pairing`, each cycle starting at
    /// its least half edge, cycles ordered by that half edge.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let k = self.source.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = self.sigma[self.pairing[h]];
            }
            out.push(cyc);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for h in 0..self.source.len() {
            uf.union(self.source[h], self.source[self.pairing[h]]);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertex_count {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// `(genus, boundary_count)` of the thickened surface.
    pub fn surface_type(&self) -> Result<(usize, usize), GraphError> {
        let comps = self.components();
        if comps.len() != 1 {
            return Err(GraphError::Disconnected(comps));
        }
        let chi = self.vertex_count as i64 - self.edge_count() as i64;
        let b = self.boundary_cycles().len();
        let twice_g = 2 - chi - b as i64;
        if twice_g < 0 || twice_g % 2 != 0 {
            return Err(GraphError::NonIntegralGenus { chi, boundary: b });
        }
        Ok(((twice_g / 2) as usize, b))
    }

    fn is_leaf_edge(&self, h: usize) -> bool {
        let a = self.source[h];
        let b = self.source[self.pairing[h]];
        self.leaf_at(a).is_some() || self.leaf_at(b).is_some()
    }

    /// Contracts every edge of `forest` (edge ids), splicing rotations by the
    /// ribbon contraction rule.
    pub fn collapse_forest(&self, forest: &[usize]) -> Result<FatGraph, GraphError> {
        let edges = self.edges();
        let forest: BTreeSet<usize> = forest.iter().copied().collect();
        let mut uf = UnionFind::new(self.vertex_count);
        for &e in &forest {
            let &(a, b) = edges.get(e).ok_or(GraphError::EdgeOutOfRange(e))?;
            if self.is_leaf_edge(a) {
                return Err(GraphError::LeafCollapse(e));
            }
            if !uf.union(self.source[a], self.source[b]) {
                return Err(GraphError::NotAForest(forest.iter().copied().collect()));
            }
        }
        let mut sigma = self.sigma.clone();
        let mut alive = vec![true; self.source.len()];
        for &e in &forest {
            let (h, hp) = edges[e];
            // (h a1..ak) and (hp b1..bl) merge into (a1..ak b1..bl).
            let pred_h = pred(&sigma, h);
            let pred_hp = pred(&sigma, hp);
            let next_h = sigma[h];
            let next_hp = sigma[hp];
            sigma[pred_h] = if next_hp == hp { next_h } else { next_hp };
            sigma[pred_hp] = if next_h == h { next_hp } else { next_h };
            alive[h] = false;
            alive[hp] = false;
        }
        let keep: Vec<usize> = (0..self.source.len()).filter(|&h| alive[h]).collect();
        let mut new_index = vec![usize::MAX; self.source.len()];
        for (n, &h) in keep.iter().enumerate() {
            new_index[h] = n;
        }
        let mut vmap = BTreeMap::new();
        for &h in &keep {
            let r = uf.find(self.source[h]);
            let next = vmap.len();
            vmap.entry(r).or_insert(next);
        }
        let source = keep.iter().map(|&h| vmap[&uf.find(self.source[h])]).collect();
        let pairing = keep.iter().map(|&h| new_index[self.pairing[h]]).collect();
        let sigma = keep.iter().map(|&h| new_index[sigma[h]]).collect();
        let leaves = self.leaves.iter().map(|l| Leaf { vertex: vmap[&uf.find(l.vertex)], ..*l }).collect();
        FatGraph::new(source, pairing, sigma, leaves)
    }

    /// Checks the closed-graph conditions: inner valence at least three and
    /// exactly one leaf per boundary cycle.
    pub fn check_closed(&self) -> Result<(), GraphError> {
        for v in 0..self.vertex_count {
            let val = self.valence(v);
            if self.leaf_at(v).is_none() && val < 3 {
                return Err(GraphError::LowValence(v, val));
            }
        }
        for (c, cyc) in self.boundary_cycles().iter().enumerate() {
            let leaves = cyc.iter().filter(|&&h| self.leaf_at(self.source[h]).is_some()).count();
            if leaves != 1 {
                return Err(GraphError::LeavesPerCycle { cycle: c, leaves });
            }
        }
        Ok(())
    }

    /// Edge sets of `Gamma_l - l` for the incoming leaves, in leaf-index order.
    pub fn incoming_cycle_edges(&self) -> Vec<(Leaf, BTreeSet<usize>)> {
        let eoh = self.edge_of_half();
        let cycles = self.boundary_cycles();
        let mut incoming: Vec<Leaf> = self.leaves.iter().filter(|l| l.direction == Direction::In).copied().collect();
        incoming.sort_by_key(|l| l.index);
        incoming
            .into_iter()
            .map(|l| {
                let lh = self.leaf_half(&l);
                let leaf_edge = eoh[lh];
                let cyc = cycles.iter().find(|c| c.contains(&lh)).expect("cycle");
                let set = cyc.iter().map(|&h| eoh[h]).filter(|&e| e != leaf_edge).collect();
                (l, set)
            })
            .collect()
    }

    pub fn is_admissible(&self) -> Result<bool, GraphError> {
        self.check_closed()?;
        let edges = self.edges();
        let mut used = BTreeSet::new();
        for (_, set) in self.incoming_cycle_edges() {
            if set.is_empty() {
                return Ok(false);
            }
            let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
            let mut uf = UnionFind::new(self.vertex_count);
            for &e in &set {
                let (a, b) = edges[e];
                *deg.entry(self.source[a]).or_default() += 1;
                *deg.entry(self.source[b]).or_default() += 1;
                uf.union(self.source[a], self.source[b]);
            }
            if deg.values().any(|&d| d != 2) {
                return Ok(false);
            }
            let roots: BTreeSet<usize> = deg.keys().map(|&v| uf.find(v)).collect();
            if roots.len() != 1 {
                return Ok(false);
            }
            for &v in deg.keys() {
                if !used.insert(v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Canonical encoding: least breadth-first labelling over all seeds at
    /// leaf half edges (all half edges if the graph has no leaves).
    pub fn canonical_label(&self) -> Vec<u8> {
        let seeds: Vec<usize> = if self.leaves.is_empty() {
            (0..self.source.len()).collect()
        } else {
            self.leaves.iter().map(|l| self.leaf_half(l)).collect()
        };
        let best = seeds.into_iter().map(|s| self.encode_from(s)).min().unwrap_or_default();
        best.iter().flat_map(|w| w.to_be_bytes()).collect()
    }

    fn encode_from(&self, root: usize) -> Vec<u32> {
        let k = self.source.len();
        let mut label = vec![u32::MAX; k];
        let mut order = Vec::with_capacity(k);
        let mut queue = VecDeque::new();
        let assign = |h: usize, label: &mut Vec<u32>, order: &mut Vec<usize>, q: &mut VecDeque<usize>| {
            if label[h] == u32::MAX {
                label[h] = order.len() as u32;
                order.push(h);
                q.push_back(h);
            }
        };
        assign(root, &mut label, &mut order, &mut queue);
        while let Some(h) = queue.pop_front() {
            let mut x = self.sigma[h];
            while x != h {
                assign(x, &mut label, &mut order, &mut queue);
                x = self.sigma[x];
            }
            assign(self.pairing[h], &mut label, &mut order, &mut queue);
        }
        let mut out = vec![k as u32, self.vertex_count as u32];
        for &h in &order {
            out.push(label[self.sigma[h]]);
            out.push(label[self.pairing[h]]);
        }
        let mut leaf_tags: Vec<(u32, u32, u32)> = self
            .leaves
            .iter()
            .map(|l| {
                let dir = match l.direction {
                    Direction::In => 0,
                    Direction::Out => 1,
                };
                (label[self.leaf_half(l)], l.index as u32, dir)
            })
            .collect();
        leaf_tags.sort();
        for (a, b, c) in leaf_tags {
            out.extend([a, b, c]);
        }
        out
    }

    pub fn validate_metric(&self, m: &MetricAssignment) -> Result<(), Vec<MetricError>> {
        let edges = self.edges();
        if m.lengths.len() != edges.len() {
            return Err(vec![MetricError::Arity { expected: edges.len(), got: m.lengths.len() }]);
        }
        let mut errs = Vec::new();
        for (e, len) in m.lengths.iter().enumerate() {
            if *len < Rational64::zero() || *len > Rational64::one() {
                errs.push(MetricError::Range(e));
            }
            if self.is_leaf_edge(edges[e].0) && !len.is_one() {
                errs.push(MetricError::LeafLength(e));
            }
        }
        let zero: Vec<usize> = (0..edges.len()).filter(|&e| m.lengths[e].is_zero()).collect();
        let mut uf = UnionFind::new(self.vertex_count);
        let forest = zero.iter().all(|&e| uf.union(self.source[edges[e].0], self.source[edges[e].1]));
        if !forest {
            errs.push(MetricError::ZeroSetNotForest(zero.clone()));
        } else if !zero.is_empty() {
            match self.collapse_forest(&zero).map(|g| g.is_admissible()) {
                Ok(Ok(true)) => {}
                _ => errs.push(MetricError::ZeroSetNotAdmissible),
            }
        }
        for (c, (_, set)) in self.incoming_cycle_edges().iter().enumerate() {
            let sum: Rational64 = set.iter().map(|&e| m.lengths[e]).sum();
            if !sum.is_one() {
                errs.push(MetricError::CycleSum { cycle: c, sum });
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Admissible-cycle edges get `1/len(cycle)`, every other edge 1.
    pub fn uniform_metric(&self) -> MetricAssignment {
        let mut lengths = vec![Rational64::one(); self.edge_count()];
        for (_, set) in self.incoming_cycle_edges() {
            let n = set.len() as i64;
            for e in set {
                lengths[e] = Rational64::new(1, n);
            }
        }
        MetricAssignment { lengths }
    }

    /// Removes bivalent non-leaf vertices by joining their two edges.
    pub fn suppress_bivalent(&self) -> FatGraph {
        self.suppress_bivalent_tracked().0
    }

    /// As [`FatGraph::suppress_bivalent`], also returning for every new edge
    /// the original edge ids it is made of.
    pub fn suppress_bivalent_tracked(&self) -> (FatGraph, Vec<Vec<usize>>) {
        let mut g = self.clone();
        let eoh = self.edge_of_half();
        let mut members: Vec<Vec<usize>> = eoh.iter().map(|&e| vec![e]).collect();
        loop {
            let target = (0..g.vertex_count).find(|&v| {
                g.leaf_at(v).is_none() && g.valence(v) == 2 && {
                    let rot = g.rotation(v);
                    g.pairing[rot[0]] != rot[1]
                }
            });
            let Some(v) = target else { break };
            let rot = g.rotation(v);
            let (h1, h2) = (rot[0], rot[1]);
            let (o1, o2) = (g.pairing[h1], g.pairing[h2]);
            let mut joined = members[o1].clone();
            joined.extend(members[o2].iter().copied());
            joined.sort_unstable();
            members[o1] = joined.clone();
            members[o2] = joined;
            let mut pairing = g.pairing.clone();
            pairing[o1] = o2;
            pairing[o2] = o1;
            let keep: Vec<usize> = (0..g.source.len()).filter(|&h| h != h1 && h != h2).collect();
            let mut idx = vec![usize::MAX; g.source.len()];
            for (n, &h) in keep.iter().enumerate() {
                idx[h] = n;
            }
            let vfix = |u: usize| if u > v { u - 1 } else { u };
            let source = keep.iter().map(|&h| vfix(g.source[h])).collect();
            let pairing = keep.iter().map(|&h| idx[pairing[h]]).collect();
            let sigma = keep.iter().map(|&h| idx[g.sigma[h]]).collect();
            let leaves = g.leaves.iter().map(|l| Leaf { vertex: vfix(l.vertex), ..*l }).collect();
            members = keep.iter().map(|&h| members[h].clone()).collect();
            g = FatGraph::new(source, pairing, sigma, leaves).expect("suppression keeps validity");
        }
        let per_edge = g.edges().into_iter().map(|(a, _)| members[a].clone()).collect();
        (g, per_edge)
    }

    pub fn to_dot(&self) -> String {
        let admissible: BTreeSet<usize> = self.incoming_cycle_edges().into_iter().flat_map(|(_, s)| s).collect();
        let mut s = String::from("graph fatgraph {\n");
        for v in 0..self.vertex_count {
            match self.leaf_at(v) {
                Some(l) => {
                    let d = if l.direction == Direction::In { "in" } else { "out" };
                    let _ = writeln!(s, "  v{v} [shape=box,label=\"{d}{}\"];", l.index);
                }
                None => {
                    let rot = self.rotation(v);
                    let _ = writeln!(s, "  v{v} [shape=point,xlabel=\"{rot:?}\"];");
                }
            }
        }
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            let style = if admissible.contains(&e) { ",color=red,penwidth=2" } else { "" };
            let _ = writeln!(s, "  v{} -- v{} [label=\"e{e}:{a}/{b}\"{style}];", self.source[a], self.source[b]);
        }
        s.push_str("}\n");
        s
    }
}

fn pred(sigma: &[usize], h: usize) -> usize {
    let mut x = h;
    while sigma[x] != h {
        x = sigma[x];
    }
    x
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }
    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_eight(sigma: Vec<usize>) -> FatGraph {
        FatGraph::new(vec![0; 4], vec![1, 0, 3, 2], sigma, vec![]).unwrap()
    }

    #[test]
    fn figure_eight_planar_has_three_cycles() {
        let g = figure_eight(vec![1, 2, 3, 0]);
        assert_eq!(g.boundary_cycles(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(g.surface_type().unwrap(), (0, 3));
    }

    #[test]
    fn figure_eight_twisted_has_one_cycle() {
        // sigma = (a b abar bbar) with a=0, abar=1, b=2, bbar=3
        let g = figure_eight(vec![2, 3, 1, 0]);
        assert_eq!(g.boundary_cycles(), vec![vec![0, 3, 1, 2]]);
        assert_eq!(g.surface_type().unwrap(), (1, 1));
    }

    #[test]
    fn two_vertex_cycle_is_a_cylinder() {
        let g = FatGraph::from_rotations(&[vec![0, 3], vec![1, 2]], vec![1, 0, 3, 2], vec![]).unwrap();
        assert_eq!(g.surface_type().unwrap(), (0, 2));
    }

    #[test]
    fn theta_collapse_keeps_three_cycles() {
        let g = theta();
        assert_eq!(g.boundary_cycles().len(), 3);
        let c = g.collapse_forest(&[0]).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 2);
        assert_eq!(c.boundary_cycles().len(), 3);
        assert_eq!(c.surface_type().unwrap(), (0, 3));
    }

    pub(crate) fn theta() -> FatGraph {
        // edges (0,1), (2,3), (4,5); vertex 0 = (0 2 4), vertex 1 = (5 3 1)
        FatGraph::from_rotations(&[vec![0, 2, 4], vec![5, 3, 1]], vec![1, 0, 3, 2, 5, 4], vec![]).unwrap()
    }

    #[test]
    fn empty_forest_is_identity() {
        assert_eq!(theta().collapse_forest(&[]).unwrap(), theta());
    }

    #[test]
    fn forest_errors() {
        let g = theta();
        assert!(matches!(g.collapse_forest(&[0, 1]), Err(GraphError::NotAForest(_))));
        let p = pants();
        let leaf_edge = p.edge_of_half()[p.leaf_half(&p.leaves()[0])];
        assert_eq!(p.collapse_forest(&[leaf_edge]), Err(GraphError::LeafCollapse(leaf_edge)));
    }

    /// Circle with an incoming leaf and one chord; leaves on both outer arcs.
    pub(crate) fn pants() -> FatGraph {
        // circle vertices: b (leaf in), x, y ; chord x--y; out leaves at x and y arcs
        // half edges: circle arcs b->x (0,1), x->y (2,3), y->b (4,5)
        // chord (6,7); in leaf (8 at b, 9 at leaf); out leaves (10 at x,11), (12 at y,13)
        // rotation: (cw-arc, chords.., ccw-arc, leaf) at each circle vertex
        let rot = vec![
            vec![5, 0, 8],     // b: cw arc from y, ccw arc to x, leaf
            vec![1, 6, 10, 2], // x
            vec![3, 7, 12, 4], // y
            vec![9],
            vec![11],
            vec![13],
        ];
        let pairing = vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12];
        let leaves = vec![
            Leaf { vertex: 3, index: 0, direction: Direction::In },
            Leaf { vertex: 4, index: 0, direction: Direction::Out },
            Leaf { vertex: 5, index: 1, direction: Direction::Out },
        ];
        FatGraph::from_rotations(&rot, pairing, leaves).unwrap()
    }

    #[test]
    fn chord_with_out_leaves_is_admissible() {
        let g = pants();
        assert_eq!(g.surface_type().unwrap(), (0, 3));
        assert!(g.is_admissible().unwrap());
    }

    #[test]
    fn canonical_label_relabel_invariant() {
        let g = pants();
        let k = g.half_edge_count();
        let perm: Vec<usize> = (0..k).map(|h| (h * 5 + 3) % k).collect();
        let mut inv = vec![0; k];
        for (h, &p) in perm.iter().enumerate() {
            inv[p] = h;
        }
        let source = (0..k).map(|p| g.source()[inv[p]]).collect();
        let pairing = (0..k).map(|p| perm[g.pairing()[inv[p]]]).collect();
        let sigma = (0..k).map(|p| perm[g.sigma()[inv[p]]]).collect();
        let h = FatGraph::new(source, pairing, sigma, g.leaves().to_vec()).unwrap();
        assert_eq!(g.canonical_label(), h.canonical_label());
    }

    #[test]
    fn figure_eights_differ() {
        assert_ne!(figure_eight(vec![1, 2, 3, 0]).canonical_label(), figure_eight(vec![2, 3, 1, 0]).canonical_label());
        assert_ne!(theta().canonical_label(), theta().collapse_forest(&[0]).unwrap().canonical_label());
    }

    #[test]
    fn metric_checks() {
        let g = pants();
        let mut m = g.uniform_metric();
        assert_eq!(g.validate_metric(&m), Ok(()));
        let leaf_edge = g.edge_of_half()[g.leaf_half(&g.leaves()[1])];
        m.lengths[leaf_edge] = Rational64::new(1, 2);
        assert!(g.validate_metric(&m).unwrap_err().contains(&MetricError::LeafLength(leaf_edge)));
    }

    #[test]
    fn json_round_trip() {
        let g = pants();
        let s = serde_json::to_string(&g).unwrap();
        let back: FatGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
        assert!(g.to_dot().contains("color=red"));
    }
}
