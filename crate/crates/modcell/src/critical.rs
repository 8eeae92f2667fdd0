//! Critical graphs of radial slit types and their discrete unfoldings.
//!
//! Heights are ordinal: the inner circle is height 0, a slit on level `k`
//! reaches height `k`, and every parametrization point reaches `l + 1`.
//! Segment `y` of a stack element runs from height `y - 1` to `y`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Direction, FatGraph, GraphError, Leaf, UnionFind};
use crate::radial::{CombinatorialType, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error("invalid type: {0:?}")]
    InvalidType(Vec<TypeError>),
    #[error("a slit touches the inner boundary")]
    InnerBoundary,
    #[error("the tips of slit {0} and its partner do not close up to a single vertex")]
    Pinched(usize),
    #[error("unfolding vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("parametrization point {0} shares its top with another element")]
    SharedTop(usize),
    #[error("target is not a chamber collapse of the source")]
    NotACollapse,
    #[error("collapse set is not a leaf-free forest: {0}")]
    Forest(GraphError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Origin of an edge of `E_L` before bivalent vertices are smoothed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Piece {
    Arc { annulus: usize, index: usize },
    Segment { annulus: usize, position: usize, height: usize, elements: Vec<usize> },
    IncomingLeaf { annulus: usize },
}

/// Fat graph with the pieces making up each edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalGraph {
    pub graph: FatGraph,
    pub pieces: Vec<Vec<Piece>>,
}

impl CriticalGraph {
    /// Edges all of whose pieces satisfy `pred`.
    pub fn edges_within(&self, pred: impl Fn(&Piece) -> bool) -> Vec<usize> {
        (0..self.pieces.len()).filter(|&e| self.pieces[e].iter().all(&pred)).collect()
    }
}

/// Fold bits, one per consecutive stack pair, ordered by annulus, position
/// and pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnfoldingVector {
    pub bits: Vec<bool>,
}

impl UnfoldingVector {
    pub fn folded(t: &CombinatorialType) -> Self {
        UnfoldingVector { bits: vec![true; unfolding_length(t)] }
    }
    pub fn unfolded(t: &CombinatorialType) -> Self {
        UnfoldingVector { bits: vec![false; unfolding_length(t)] }
    }
    /// Every corner of the cube `{fold, unfold}^d`.
    pub fn corners(t: &CombinatorialType) -> Vec<Self> {
        let d = unfolding_length(t);
        (0..1usize << d).map(|code| UnfoldingVector { bits: (0..d).map(|b| code >> b & 1 == 1).collect() }).collect()
    }
}

pub fn unfolding_length(t: &CombinatorialType) -> usize {
    t.annuli.iter().flat_map(|a| &a.positions).map(|st| st.len() - 1).sum()
}

fn height(t: &CombinatorialType, x: usize) -> usize {
    if t.is_slit(x) {
        t.levels[x]
    } else {
        t.level_count() + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    Half(usize),
    Cut(usize),
}

struct Builder {
    nodes: Vec<Vec<Item>>,
    pieces: Vec<Piece>,
}

impl Builder {
    fn node(&mut self) -> usize {
        self.nodes.push(Vec::new());
        self.nodes.len() - 1
    }
    /// Half `2e` and `2e + 1` of a new edge.
    fn edge(&mut self, piece: Piece) -> (usize, usize) {
        self.pieces.push(piece);
        let e = self.pieces.len() - 1;
        (2 * e, 2 * e + 1)
    }
}

/// `E_L / ~_u` with its fat structure, bivalent vertices smoothed.
pub fn build(t: &CombinatorialType, u: &UnfoldingVector) -> Result<CriticalGraph, CriticalError> {
    t.validate().map_err(CriticalError::InvalidType)?;
    if t.at_inner {
        return Err(CriticalError::InnerBoundary);
    }
    let d = unfolding_length(t);
    if u.bits.len() != d {
        return Err(CriticalError::VectorLength { expected: d, got: u.bits.len() });
    }
    let s = t.slit_count();
    let mut b = Builder { nodes: Vec::new(), pieces: Vec::new() };
    let mut leaves: Vec<(usize, Leaf)> = Vec::new();
    let mut tip_node = vec![usize::MAX; s];
    let mut bit = 0;
    for (a, ann) in t.annuli.iter().enumerate() {
        let mut dividers: Vec<Option<(usize, &Vec<usize>)>> = Vec::new();
        if !ann.on_real_line {
            dividers.push(None);
        }
        dividers.extend(ann.positions.iter().enumerate().map(Some));
        let r = dividers.len();
        let circle: Vec<usize> = (0..r).map(|_| b.node()).collect();
        let arcs: Vec<(usize, usize)> = (0..r).map(|k| b.edge(Piece::Arc { annulus: a, index: k })).collect();
        let (leaf_half, base_half) = b.edge(Piece::IncomingLeaf { annulus: a });
        let leaf_node = b.node();
        b.nodes[leaf_node].push(Item::Half(leaf_half));
        leaves.push((leaf_node, Leaf { vertex: 0, index: a, direction: Direction::In }));
        for (k, div) in dividers.iter().enumerate() {
            let foot = circle[k];
            b.nodes[foot].push(Item::Half(arcs[(k + r - 1) % r].1));
            if let Some((p, stack)) = div {
                let ups = build_stack(
                    &mut b,
                    t,
                    a,
                    *p,
                    stack,
                    &u.bits[bit..bit + stack.len() - 1],
                    &mut tip_node,
                    &mut leaves,
                )?;
                bit += stack.len() - 1;
                b.nodes[foot].extend(ups.into_iter().map(Item::Half));
            }
            b.nodes[foot].push(Item::Half(arcs[k].0));
            if k == 0 {
                b.nodes[foot].push(Item::Half(base_half));
            }
        }
    }
    // tips of paired slits are one point; read its rotation off the cuts
    let mut uf = UnionFind::new(b.nodes.len());
    for x in 0..s {
        uf.union(tip_node[x], tip_node[t.pairing[x]]);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..b.nodes.len() {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut rotations: Vec<Vec<usize>> = Vec::new();
    let mut vertex_of_node = vec![usize::MAX; b.nodes.len()];
    for members in groups.values() {
        let has_cut = members.iter().any(|&v| b.nodes[v].iter().any(|i| matches!(i, Item::Cut(_))));
        if !has_cut {
            let v = members[0];
            vertex_of_node[v] = rotations.len();
            rotations.push(halves(&b.nodes[v]));
            continue;
        }
        let cycles = tip_walk(&b.nodes, members, &tip_node, &t.pairing)?;
        if cycles.len() != 1 {
            let x = members
                .iter()
                .flat_map(|&v| b.nodes[v].iter())
                .find_map(|i| if let Item::Cut(x) = i { Some(*x) } else { None })
                .unwrap_or(0);
            return Err(CriticalError::Pinched(x));
        }
        for &v in members {
            vertex_of_node[v] = rotations.len();
        }
        rotations.push(cycles.into_iter().next().expect("one cycle"));
    }
    let k = 2 * b.pieces.len();
    let pairing: Vec<usize> = (0..k).map(|h| h ^ 1).collect();
    let leaves: Vec<Leaf> = leaves.into_iter().map(|(node, l)| Leaf { vertex: vertex_of_node[node], ..l }).collect();
    let raw = FatGraph::from_rotations(&rotations, pairing, leaves)?;
    let (graph, members) = raw.suppress_bivalent_tracked();
    let pieces = members.into_iter().map(|es| es.into_iter().map(|e| b.pieces[e].clone()).collect()).collect();
    Ok(CriticalGraph { graph, pieces })
}

fn halves(items: &[Item]) -> Vec<usize> {
    items.iter().filter_map(|i| if let Item::Half(h) = i { Some(*h) } else { None }).collect()
}

/// Class nodes and segments over one stack; returns the up half edges at
/// the foot in stack order.
#[allow(clippy::too_many_arguments)]
fn build_stack(
    b: &mut Builder,
    t: &CombinatorialType,
    a: usize,
    p: usize,
    stack: &[usize],
    folds: &[bool],
    tip_node: &mut [usize],
    leaves: &mut Vec<(usize, Leaf)>,
) -> Result<Vec<usize>, CriticalError> {
    let s = t.slit_count();
    let hs: Vec<usize> = stack.iter().map(|&x| height(t, x)).collect();
    let top = hs.iter().copied().max().unwrap_or(0);
    // class[y][k]: node of the run holding element k at height y
    let mut class = vec![vec![usize::MAX; stack.len()]; top + 2];
    let mut runs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 2];
    for y in 1..=top {
        for k in 0..stack.len() {
            if hs[k] < y {
                continue;
            }
            let joined = k > 0 && folds[k - 1] && hs[k - 1] >= y;
            if joined {
                class[y][k] = class[y][k - 1];
                runs[y].last_mut().expect("open run").1 = k;
            } else {
                class[y][k] = b.node();
                runs[y].push((k, k));
            }
        }
    }
    // up half of each class node, keyed by node
    let mut up_half: BTreeMap<usize, usize> = BTreeMap::new();
    let mut down_half: BTreeMap<usize, usize> = BTreeMap::new();
    for y in 1..=top {
        for &(lo, hi) in &runs[y] {
            let node = class[y][lo];
            let (down, up) =
                b.edge(Piece::Segment { annulus: a, position: p, height: y, elements: stack[lo..=hi].to_vec() });
            down_half.insert(node, down);
            up_half.insert(node, up);
        }
    }
    for y in 1..=top {
        for &(lo, hi) in &runs[y] {
            let node = class[y][lo];
            let mut items = vec![Item::Half(down_half[&node])];
            for k in lo..=hi {
                if hs[k] == y {
                    let x = stack[k];
                    if x < s {
                        items.push(Item::Cut(x));
                        tip_node[x] = node;
                    } else {
                        if hi > lo {
                            return Err(CriticalError::SharedTop(x - s));
                        }
                        leaves.push((node, Leaf { vertex: 0, index: x - s, direction: Direction::Out }));
                    }
                } else if k == lo || class[y + 1][k] != class[y + 1][k - 1] {
                    items.push(Item::Half(up_half[&class[y + 1][k]]));
                }
            }
            b.nodes[node] = items;
        }
    }
    let foot_ups = if top == 0 { Vec::new() } else { runs[1].iter().map(|&(lo, _)| up_half[&class[1][lo]]).collect() };
    Ok(foot_ups)
}

/// Rotation cycles at an identified tip point: stepping onto the cut of
/// slit `z` continues just after the cut of its partner.
fn tip_walk(
    nodes: &[Vec<Item>],
    members: &[usize],
    tip_node: &[usize],
    pairing: &[usize],
) -> Result<Vec<Vec<usize>>, CriticalError> {
    let slot = |node: usize, item: Item| nodes[node].iter().position(|&i| i == item).expect("item present");
    let limit: usize = members.iter().map(|&v| nodes[v].len()).sum::<usize>() + 1;
    let advance = |node: usize, idx: usize| -> Result<(usize, usize), CriticalError> {
        let (mut nd, mut i) = (node, (idx + 1) % nodes[node].len());
        let mut steps = 0;
        while let Item::Cut(z) = nodes[nd][i] {
            let partner = pairing[z];
            let target = tip_node[partner];
            let j = slot(target, Item::Cut(partner));
            nd = target;
            i = (j + 1) % nodes[nd].len();
            steps += 1;
            if steps > limit {
                return Err(CriticalError::Pinched(z));
            }
        }
        Ok((nd, i))
    };
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut cycles = Vec::new();
    for &v in members {
        for idx in 0..nodes[v].len() {
            if matches!(nodes[v][idx], Item::Cut(_)) || seen.contains(&(v, idx)) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = (v, idx);
            while seen.insert(cur) {
                if let Item::Half(h) = nodes[cur.0][cur.1] {
                    cycle.push(h);
                }
                cur = advance(cur.0, cur.1)?;
            }
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

pub fn critical_graph(t: &CombinatorialType) -> Result<FatGraph, CriticalError> {
    Ok(build(t, &UnfoldingVector::folded(t))?.graph)
}

pub fn unfolded_graph(t: &CombinatorialType) -> Result<FatGraph, CriticalError> {
    Ok(build(t, &UnfoldingVector::unfolded(t))?.graph)
}

pub fn partial_graph(t: &CombinatorialType, u: &UnfoldingVector) -> Result<FatGraph, CriticalError> {
    Ok(build(t, u)?.graph)
}

/// Canonical labels of `Gamma_{L',u}` over the jump orbit and all corners.
pub fn corner_family(t: &CombinatorialType) -> Result<BTreeSet<Vec<u8>>, CriticalError> {
    let mut out = BTreeSet::new();
    for member in t.jump_orbit() {
        for u in UnfoldingVector::corners(&member) {
            out.insert(partial_graph(&member, &u)?.canonical_label());
        }
    }
    Ok(out)
}

fn check_forest(g: &FatGraph, forest: &[usize]) -> Result<FatGraph, CriticalError> {
    g.collapse_forest(forest).map_err(CriticalError::Forest)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnularCollapse {
    pub forest: Vec<usize>,
    pub source_graph: FatGraph,
    pub collapsed: FatGraph,
    pub target: CombinatorialType,
    pub target_graph: FatGraph,
}

impl AnnularCollapse {
    pub fn commutes(&self) -> bool {
        self.collapsed.canonical_label() == self.target_graph.canonical_label()
    }
}

/// Collapses the interior annular chambers `chambers` of `t`; the forest is
/// every critical-graph edge lying in the collapsed height bands.
pub fn annular_collapse_at(t: &CombinatorialType, chambers: &[usize]) -> Result<AnnularCollapse, CriticalError> {
    let p = t.multi_degree().annular;
    let bands: BTreeSet<usize> = chambers.iter().copied().collect();
    if bands.iter().any(|&j| j == 0 || j >= p) {
        return Err(CriticalError::NotACollapse);
    }
    let source = build(t, &UnfoldingVector::folded(t))?;
    let forest =
        source.edges_within(|piece| matches!(piece, Piece::Segment { height, .. } if bands.contains(&(height - 1))));
    let mut target = t.clone();
    for &j in bands.iter().rev() {
        target = target.face(t.n(), j).map_err(|_| CriticalError::NotACollapse)?;
    }
    let collapsed = check_forest(&source.graph, &forest)?;
    let target_graph = critical_graph(&target)?;
    Ok(AnnularCollapse { forest, source_graph: source.graph, collapsed, target, target_graph })
}

/// Forest in `critical_graph(t)` realizing the annular collapse onto `t2`.
pub fn annular_collapse(t: &CombinatorialType, t2: &CombinatorialType) -> Result<Vec<usize>, CriticalError> {
    let p = t.multi_degree().annular;
    let goal = t2.canonicalize();
    let interior: Vec<usize> = (1..p).collect();
    for mask in 0..1usize << interior.len() {
        let chambers: Vec<usize> =
            interior.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &j)| j).collect();
        let mut target = t.clone();
        for &j in chambers.iter().rev() {
            target = target.face(t.n(), j).map_err(|_| CriticalError::NotACollapse)?;
        }
        if target.canonicalize() == goal {
            return Ok(annular_collapse_at(t, &chambers)?.forest);
        }
    }
    Err(CriticalError::NotACollapse)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Zigzag {
    pub source_forest: Vec<usize>,
    pub middle_graph: FatGraph,
    pub target_forest: Vec<usize>,
    pub source_graph: FatGraph,
    pub target_graph: FatGraph,
    /// `critical_graph(t2) / target_forest`; equal to `middle_graph` up to
    /// isomorphism when the square commutes.
    pub target_middle: FatGraph,
}

impl Zigzag {
    pub fn commutes(&self) -> bool {
        self.middle_graph.canonical_label() == self.target_middle.canonical_label()
    }
}

/// The zigzag for collapsing radial chamber `j` on annulus `axis`. Both
/// critical graphs collapse onto the graph in which the merged foot has
/// absorbed the arc of the chamber and the segments of the junction pair up
/// to the height where they fold together.
pub fn radial_collapse_zigzag_at(t: &CombinatorialType, axis: usize, j: usize) -> Result<Zigzag, CriticalError> {
    if axis >= t.n() {
        return Err(CriticalError::NotACollapse);
    }
    let t2 = t.face(axis, j).map_err(|_| CriticalError::NotACollapse)?;
    let ann = &t.annuli[axis];
    let mut dividers: Vec<Vec<usize>> = Vec::new();
    if !ann.on_real_line {
        dividers.push(Vec::new());
    }
    dividers.extend(ann.positions.iter().cloned());
    let q = dividers.len() - 1;
    let (left, right) = if j < q { (&dividers[j], &dividers[j + 1]) } else { (&dividers[q], &dividers[0]) };
    let junction = match (left.last(), right.first()) {
        (Some(&a), Some(&b)) => Some((a, b, height(t, a).min(height(t, b)))),
        _ => None,
    };
    let source = build(t, &UnfoldingVector::folded(t))?;
    let target = build(&t2, &UnfoldingVector::folded(&t2))?;
    let in_run = |piece: &Piece, x: usize, cap: usize| matches!(piece, Piece::Segment { elements, height, .. } if *height <= cap && elements.contains(&x));
    let source_forest = source.edges_within(|piece| match piece {
        Piece::Arc { annulus, index } => *annulus == axis && *index == j,
        _ => junction.is_some_and(|(a, b, cap)| in_run(piece, a, cap) || in_run(piece, b, cap)),
    });
    let target_forest = match junction {
        Some((a, _, cap)) => target.edges_within(|piece| in_run(piece, a, cap)),
        None => Vec::new(),
    };
    let middle_graph = check_forest(&source.graph, &source_forest)?;
    let target_middle = check_forest(&target.graph, &target_forest)?;
    Ok(Zigzag {
        source_forest,
        middle_graph,
        target_forest,
        source_graph: source.graph,
        target_graph: target.graph,
        target_middle,
    })
}

/// The zigzag towards `t2`, found among the radial faces of `t`. A target
/// in the same cell as `t` gives empty forests.
pub fn radial_collapse_zigzag(t: &CombinatorialType, t2: &CombinatorialType) -> Result<Zigzag, CriticalError> {
    let goal = t2.canonicalize();
    if t.canonicalize() == goal {
        let g = critical_graph(t)?;
        return Ok(Zigzag {
            source_forest: Vec::new(),
            middle_graph: g.clone(),
            target_forest: Vec::new(),
            source_graph: g.clone(),
            target_graph: critical_graph(t2)?,
            target_middle: critical_graph(t2)?,
        });
    }
    for (axis, j, f) in t.faces() {
        if axis < t.n() && f.canonicalize() == goal {
            return radial_collapse_zigzag_at(t, axis, j);
        }
    }
    Err(CriticalError::NotACollapse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{enumerate_types, Annulus, Filter};

    fn cylinder(on_line: bool) -> CombinatorialType {
        CombinatorialType {
            h: 0,
            m: 1,
            annuli: vec![Annulus { on_real_line: on_line, positions: vec![vec![0]] }],
            pairing: vec![],
            levels: vec![],
            at_inner: false,
            at_outer: false,
        }
    }

    #[test]
    fn cylinder_graph_is_a_circle_with_two_leaves() {
        let g = critical_graph(&cylinder(false)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.surface_type().unwrap(), (0, 2));
        assert!(g.is_admissible().unwrap());
        let on = critical_graph(&cylinder(true)).unwrap();
        assert_eq!(on.vertex_count(), 3);
        assert!(on.is_admissible().unwrap());
    }

    fn stacked_pair() -> CombinatorialType {
        // slits 0 and 2 share a segment below their partners
        CombinatorialType {
            h: 2,
            m: 1,
            annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0, 2], vec![1], vec![4], vec![3]] }],
            pairing: vec![1, 0, 3, 2],
            levels: vec![1, 1, 2, 2],
            at_inner: false,
            at_outer: false,
        }
    }

    #[test]
    fn unfolding_a_stack_doubles_the_segment() {
        let t = stacked_pair();
        assert_eq!(t.validate(), Ok(()));
        let folded = critical_graph(&t).unwrap();
        let unfolded = unfolded_graph(&t).unwrap();
        assert_ne!(folded.canonical_label(), unfolded.canonical_label());
        let euler = |g: &FatGraph| g.vertex_count() as isize - g.edge_count() as isize;
        assert_eq!(euler(&folded), euler(&unfolded));
        for g in [&folded, &unfolded] {
            assert_eq!(g.surface_type().unwrap(), (1, 2));
            assert!(g.is_admissible().unwrap());
        }
    }

    #[test]
    fn corners_include_endpoints() {
        let t = stacked_pair();
        let fam = corner_family(&t).unwrap();
        assert!(fam.contains(&critical_graph(&t).unwrap().canonical_label()));
        let bound = t.jump_orbit().len() << unfolding_length(&t);
        assert!(fam.len() <= bound);
        assert_eq!(partial_graph(&t, &UnfoldingVector::folded(&t)).unwrap(), critical_graph(&t).unwrap());
        assert!(matches!(
            partial_graph(&t, &UnfoldingVector { bits: vec![] }),
            Err(CriticalError::VectorLength { .. })
        ));
    }

    #[test]
    fn generic_types_have_no_unfolding() {
        for t in enumerate_types(1, 1, 2, Filter::Nondegenerate).unwrap() {
            if t.jump_orbit().len() == 1 && unfolding_length(&t) == 0 {
                assert_eq!(critical_graph(&t).unwrap(), unfolded_graph(&t).unwrap());
                assert_eq!(corner_family(&t).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn critical_graph_surface_law_small() {
        for (h, n, m) in [(0, 1, 1), (1, 1, 2), (1, 2, 1)] {
            for t in enumerate_types(h, n, m, Filter::Nondegenerate).unwrap() {
                let g = critical_graph(&t).unwrap();
                let genus = crate::radial::genus(h, n, m).unwrap();
                assert_eq!(g.surface_type().unwrap(), (genus, n + m), "{}", t.to_compact());
                assert!(g.is_admissible().unwrap());
            }
        }
    }

    #[test]
    fn collapses_commute_on_small_families() {
        let mut nonempty = 0;
        for (h, n, m) in [(1, 1, 2), (1, 2, 1), (2, 1, 1)] {
            for t in enumerate_types(h, n, m, Filter::Nondegenerate).unwrap() {
                let p = t.multi_degree().annular;
                for j in 1..p {
                    if t.face(t.n(), j).unwrap().is_degenerate() {
                        continue;
                    }
                    let a = annular_collapse_at(&t, &[j]).unwrap();
                    assert!(a.commutes(), "{} chamber {j}", t.to_compact());
                    nonempty += usize::from(!a.forest.is_empty());
                }
                for (axis, j, f) in t.faces() {
                    if axis < t.n() && !f.is_degenerate() {
                        let z = radial_collapse_zigzag_at(&t, axis, j).unwrap();
                        assert!(z.commutes(), "{} axis {axis} chamber {j}", t.to_compact());
                    }
                }
            }
        }
        assert!(nonempty > 0);
    }

    #[test]
    fn inner_boundary_is_rejected() {
        let mut t = stacked_pair();
        t.at_inner = true;
        assert_eq!(critical_graph(&t), Err(CriticalError::InnerBoundary));
    }

    #[test]
    fn zigzag_and_annular_collapse_commute_on_example() {
        let t = stacked_pair();
        let a = annular_collapse_at(&t, &[1]).unwrap();
        assert!(a.commutes());
        assert_eq!(annular_collapse(&t, &t).unwrap(), Vec::<usize>::new());
        for (axis, j, f) in t.faces() {
            if axis < t.n() && !f.is_degenerate() {
                let z = radial_collapse_zigzag_at(&t, axis, j).unwrap();
                assert!(z.commutes(), "axis {axis} chamber {j}");
            }
        }
    }
}
