//! Sullivan diagrams as chord data on parametrized circles.
//!
//! A circle lists its attachment sites counterclockwise from the basepoint;
//! `at_basepoint` marks a first site sitting at the basepoint itself. Chords
//! are unordered: a two-ended chord `c` appears as `End::Chord(c)` twice,
//! and the free end of outgoing leaf `k` appears as `End::Leaf(k)` once.
//! Within a site, chord ends are listed in the order they leave the circle.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::critical::{unfolded_graph, CriticalError};
use crate::graph::{Direction, FatGraph, GraphError, Leaf};
use crate::radial::{Annulus, CombinatorialType, ParamError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Chord(usize),
    Leaf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Circle {
    pub at_basepoint: bool,
    pub sites: Vec<Vec<End>>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SullivanDiagram {
    pub circles: Vec<Circle>,
    /// Number of two-ended chords.
    pub chords: usize,
    /// Number of free ends.
    pub leaves: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("no circles")]
    NoCircles,
    #[error("circle {0} has no attachments")]
    EmptyCircle(usize),
    #[error("circle {0} has an empty site")]
    EmptySite(usize),
    #[error("chord {chord} is attached {found} times, expected 2")]
    ChordEnds { chord: usize, found: usize },
    #[error("free end {leaf} appears {found} times, expected 1")]
    FreeEnd { leaf: usize, found: usize },
    #[error("induced graph is not admissible")]
    NotAdmissible,
    #[error("induced graph: {0}")]
    Graph(#[from] GraphError),
    #[error("type is not unilevel")]
    NotUnilevel,
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error("face ({circle}, {edge}) out of range")]
    Face { circle: usize, edge: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Position of one end: circle, site, slot.
type Slot = (usize, usize, usize);

impl SullivanDiagram {
    pub fn n(&self) -> usize {
        self.circles.len()
    }

    /// Sites of circle `i` with a bare basepoint divider prepended when the
    /// basepoint carries nothing.
    fn dividers(&self, i: usize) -> Vec<Vec<End>> {
        let c = &self.circles[i];
        let mut out = Vec::new();
        if !c.at_basepoint {
            out.push(Vec::new());
        }
        out.extend(c.sites.iter().cloned());
        out
    }

    /// Admissible edges minus one, per circle.
    pub fn degrees(&self) -> Vec<usize> {
        self.circles.iter().map(|c| c.sites.len() + usize::from(!c.at_basepoint) - 1).collect()
    }

    pub fn dimension(&self) -> usize {
        self.degrees().iter().sum()
    }

    fn slots(&self) -> Vec<(End, Slot)> {
        let mut out = Vec::new();
        for (i, c) in self.circles.iter().enumerate() {
            for (s, site) in c.sites.iter().enumerate() {
                for (k, &e) in site.iter().enumerate() {
                    out.push((e, (i, s, k)));
                }
            }
        }
        out
    }

    fn check_structure(&self) -> Result<(), DiagramError> {
        if self.circles.is_empty() {
            return Err(DiagramError::NoCircles);
        }
        for (i, c) in self.circles.iter().enumerate() {
            if c.sites.is_empty() {
                return Err(DiagramError::EmptyCircle(i));
            }
            if c.sites.iter().any(Vec::is_empty) {
                return Err(DiagramError::EmptySite(i));
            }
        }
        let mut chord_count = vec![0; self.chords];
        let mut leaf_count = vec![0; self.leaves];
        for (e, _) in self.slots() {
            match e {
                End::Chord(c) if c < self.chords => chord_count[c] += 1,
                End::Leaf(k) if k < self.leaves => leaf_count[k] += 1,
                End::Chord(c) => return Err(DiagramError::ChordEnds { chord: c, found: 1 }),
                End::Leaf(k) => return Err(DiagramError::FreeEnd { leaf: k, found: 1 }),
            }
        }
        if let Some((chord, &found)) = chord_count.iter().enumerate().find(|(_, &f)| f != 2) {
            return Err(DiagramError::ChordEnds { chord, found });
        }
        if let Some((leaf, &found)) = leaf_count.iter().enumerate().find(|(_, &f)| f != 1) {
            return Err(DiagramError::FreeEnd { leaf, found });
        }
        Ok(())
    }

    /// The fat graph with chords attached outside the circles: at a site the
    /// cyclic order is incoming arc, chord ends in site order, outgoing arc,
    /// and the incoming leaf follows at the basepoint.
    pub fn induced_graph(&self) -> Result<FatGraph, DiagramError> {
        self.check_structure()?;
        let mut next_edge = 0;
        let mut new_edge = || {
            next_edge += 1;
            (2 * next_edge - 2, 2 * next_edge - 1)
        };
        let mut rotations: Vec<Vec<usize>> = Vec::new();
        let mut leaves = Vec::new();
        let mut chord_half: BTreeMap<usize, usize> = BTreeMap::new();
        let mut chord_edges: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut free: Vec<(usize, usize)> = Vec::new();
        for i in 0..self.n() {
            let dividers = self.dividers(i);
            let r = dividers.len();
            let arcs: Vec<(usize, usize)> = (0..r).map(|_| new_edge()).collect();
            let (leaf_half, base_half) = new_edge();
            leaves.push(Leaf { vertex: rotations.len(), index: i, direction: Direction::In });
            rotations.push(vec![leaf_half]);
            for (k, site) in dividers.iter().enumerate() {
                let mut rot = vec![arcs[(k + r - 1) % r].1];
                for &e in site {
                    let h = match e {
                        End::Chord(c) => {
                            let (a, b) = *chord_edges.entry(c).or_insert_with(&mut new_edge);
                            let used = chord_half.entry(c).or_insert(0);
                            *used += 1;
                            if *used == 1 {
                                a
                            } else {
                                b
                            }
                        }
                        End::Leaf(idx) => {
                            let (a, b) = new_edge();
                            free.push((idx, b));
                            a
                        }
                    };
                    rot.push(h);
                }
                rot.push(arcs[k].0);
                if k == 0 {
                    rot.push(base_half);
                }
                rotations.push(rot);
            }
        }
        for (idx, h) in free {
            leaves.push(Leaf { vertex: rotations.len(), index: idx, direction: Direction::Out });
            rotations.push(vec![h]);
        }
        let halves = 2 * next_edge;
        let pairing = (0..halves).map(|h| h ^ 1).collect();
        Ok(FatGraph::from_rotations(&rotations, pairing, leaves)?)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let g = self.induced_graph()?;
        g.check_closed()?;
        if !g.is_admissible()? {
            return Err(DiagramError::NotAdmissible);
        }
        Ok(())
    }

    /// `(g, n, m)` of the induced surface.
    pub fn topological_type(&self) -> Result<(usize, usize, usize), DiagramError> {
        let (g, _) = self.induced_graph()?.surface_type()?;
        Ok((g, self.n(), self.leaves))
    }

    /// Chords renumbered by first appearance in reading order.
    pub fn relabel(&self) -> SullivanDiagram {
        let mut map = BTreeMap::new();
        for (e, _) in self.slots() {
            if let End::Chord(c) = e {
                let fresh = map.len();
                map.entry(c).or_insert(fresh);
            }
        }
        let mut out = self.clone();
        for c in &mut out.circles {
            for site in &mut c.sites {
                for e in site.iter_mut() {
                    if let End::Chord(k) = e {
                        *k = map[k];
                    }
                }
            }
        }
        out
    }

    /// Moves the end at `from` into the site holding `anchor`, just before or
    /// after it.
    fn slid(&self, from: Slot, anchor: Slot, after: bool) -> SullivanDiagram {
        let mut d = self.clone();
        let e = d.circles[from.0].sites[from.1][from.2];
        let at = if after { anchor.2 + 1 } else { anchor.2 };
        d.circles[anchor.0].sites[anchor.1].insert(at, e);
        let shift = usize::from(anchor.0 == from.0 && anchor.1 == from.1 && at <= from.2);
        let c = &mut d.circles[from.0];
        c.sites[from.1].remove(from.2 + shift);
        if c.sites[from.1].is_empty() {
            c.sites.remove(from.1);
            if from.1 == 0 {
                c.at_basepoint = false;
            }
        }
        d
    }

    /// Diagrams one slide away: an end sharing a corner with a chord end
    /// slides along that chord to the matching corner at its other end.
    pub fn slide_neighbors(&self) -> Vec<SullivanDiagram> {
        let slots = self.slots();
        let other = |c: usize, here: Slot| {
            slots.iter().find(|(e, s)| *e == End::Chord(c) && *s != here).map(|&(_, s)| s).expect("chord has two ends")
        };
        let mut out = Vec::new();
        for (i, c) in self.circles.iter().enumerate() {
            for (s, site) in c.sites.iter().enumerate() {
                for k in 0..site.len().saturating_sub(1) {
                    let (x, y) = (site[k], site[k + 1]);
                    if x == y {
                        continue;
                    }
                    if let End::Chord(cy) = y {
                        out.push(self.slid((i, s, k), other(cy, (i, s, k + 1)), true));
                    }
                    if let End::Chord(cx) = x {
                        out.push(self.slid((i, s, k + 1), other(cx, (i, s, k)), false));
                    }
                }
            }
        }
        out
    }

    pub fn slide_orbit(&self) -> BTreeSet<SullivanDiagram> {
        let start = self.relabel();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(d) = stack.pop() {
            for nb in d.slide_neighbors() {
                let nb = nb.relabel();
                if seen.insert(nb.clone()) {
                    stack.push(nb);
                }
            }
        }
        seen
    }

    /// Least relabelled member of the slide orbit.
    pub fn canonical(&self) -> SullivanDiagram {
        self.slide_orbit().into_iter().next().expect("orbit contains self")
    }

    /// Collapses admissible edge `j` of circle `i`: the sites at its ends
    /// merge, the counterclockwise one's ends following. Merging across the
    /// basepoint keeps the merged site at the basepoint.
    pub fn face(&self, i: usize, j: usize) -> Result<SullivanDiagram, DiagramError> {
        let err = DiagramError::Face { circle: i, edge: j };
        let q = *self.degrees().get(i).ok_or(err.clone())?;
        if q == 0 || j > q {
            return Err(err);
        }
        let mut dividers = self.dividers(i);
        if j < q {
            let next = dividers.remove(j + 1);
            dividers[j].extend(next);
        } else {
            let mut last = dividers.pop().expect("dividers nonempty");
            last.extend(std::mem::take(&mut dividers[0]));
            dividers[0] = last;
        }
        let mut d = self.clone();
        d.circles[i] = Circle {
            at_basepoint: !dividers[0].is_empty(),
            sites: dividers.into_iter().filter(|s| !s.is_empty()).collect(),
        };
        Ok(d)
    }

    /// Every face as `(circle, edge, face)`.
    pub fn faces(&self) -> Vec<(usize, usize, SullivanDiagram)> {
        let mut out = Vec::new();
        for (i, &q) in self.degrees().iter().enumerate() {
            if q == 0 {
                continue;
            }
            for j in 0..=q {
                out.push((i, j, self.face(i, j).expect("in range")));
            }
        }
        out
    }

    /// One-line form: circles in brackets, `^` marks a site at the basepoint,
    /// `|` separates sites, `cK` and `pK` are chord and free ends.
    pub fn to_compact(&self) -> String {
        let mut out = String::new();
        for c in &self.circles {
            out.push('[');
            if c.at_basepoint {
                out.push('^');
            }
            let sites: Vec<String> = c
                .sites
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|e| match e {
                            End::Chord(k) => format!("c{k}"),
                            End::Leaf(k) => format!("p{k}"),
                        })
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            out.push_str(&sites.join("|"));
            out.push(']');
        }
        out
    }

    /// JSON form: sites as chord ids, chords with their attachment slots
    /// (`null` for a free end), and the chord carrying each outgoing leaf.
    pub fn to_json(&self) -> serde_json::Value {
        let slots = self.slots();
        let chord_id = |e: End| match e {
            End::Chord(c) => c,
            End::Leaf(k) => self.chords + k,
        };
        let mut ends: Vec<Vec<serde_json::Value>> = vec![Vec::new(); self.chords + self.leaves];
        for &(e, (i, s, k)) in &slots {
            ends[chord_id(e)].push(serde_json::json!({"circle": i, "site": s, "slot": k}));
        }
        for k in 0..self.leaves {
            ends[self.chords + k].push(serde_json::Value::Null);
        }
        serde_json::json!({
            "circles": self.circles.iter().map(|c| c.sites.iter()
                .map(|s| s.iter().map(|&e| chord_id(e)).collect::<Vec<_>>())
                .collect::<Vec<_>>()).collect::<Vec<_>>(),
            "basepoint": self.circles.iter().map(|c| c.at_basepoint).collect::<Vec<_>>(),
            "chords": ends.into_iter().map(|e| serde_json::json!({"ends": e})).collect::<Vec<_>>(),
            "free_order": (0..self.leaves).map(|k| self.chords + k).collect::<Vec<_>>(),
        })
    }
}

impl Serialize for SullivanDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Slides every vertex off the admissible cycles onto them and reads off the
/// chord data in canonical form.
pub fn from_admissible(g: &FatGraph) -> Result<SullivanDiagram, DiagramError> {
    if !g.is_admissible()? {
        return Err(DiagramError::NotAdmissible);
    }
    let mut g = g.clone();
    loop {
        let on_cycle = cycle_vertices(&g);
        let cycle_edges: BTreeSet<usize> = g.incoming_cycle_edges().into_iter().flat_map(|(_, s)| s).collect();
        let leafy = |v: usize| g.leaf_at(v).is_some();
        let src = g.source();
        let pick = g.edges().into_iter().enumerate().find(|&(e, (a, b))| {
            let (u, v) = (src[a], src[b]);
            !cycle_edges.contains(&e)
                && u != v
                && !leafy(u)
                && !leafy(v)
                && !(on_cycle.contains(&u) && on_cycle.contains(&v))
        });
        match pick {
            Some((e, _)) => g = g.collapse_forest(&[e])?,
            None => break,
        }
    }
    chord_data(&g).map(|d| d.canonical())
}

fn cycle_vertices(g: &FatGraph) -> BTreeSet<usize> {
    let edges = g.edges();
    g.incoming_cycle_edges()
        .into_iter()
        .flat_map(|(_, set)| set.into_iter().flat_map(|e| [edges[e].0, edges[e].1]))
        .map(|h| g.source()[h])
        .collect()
}

/// Chord data of a graph whose inner vertices all lie on admissible cycles.
fn chord_data(g: &FatGraph) -> Result<SullivanDiagram, DiagramError> {
    let pairing = g.pairing();
    let sigma = g.sigma();
    let src = g.source();
    let cycles = g.boundary_cycles();
    let on_cycle = cycle_vertices(g);
    let mut incoming: Vec<Leaf> = g.leaves().iter().filter(|l| l.direction == Direction::In).copied().collect();
    incoming.sort_by_key(|l| l.index);
    let mut chord_of_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let eoh = g.edge_of_half();
    let mut leaves = 0;
    let mut circles = Vec::new();
    for l in &incoming {
        let lh = g.leaf_half(l);
        let cyc = cycles.iter().find(|c| c.contains(&lh)).expect("leaf on a cycle");
        let at = cyc.iter().position(|&h| h == lh).expect("present");
        let walk: Vec<usize> = (0..cyc.len()).map(|t| cyc[(at + t) % cyc.len()]).collect();
        // walk = [leaf, departures..., base-side leaf half]
        let visits = walk.len() - 2;
        let mut sites: Vec<Vec<End>> = Vec::new();
        for t in 1..=visits {
            let depart = walk[t];
            let arrive = if t == 1 { pairing[walk[visits]] } else { pairing[walk[t - 1]] };
            let mut site = Vec::new();
            let mut h = sigma[depart];
            while h != arrive {
                let far = src[pairing[h]];
                let end = match g.leaf_at(far) {
                    Some(leaf) if leaf.direction == Direction::Out => {
                        leaves += 1;
                        End::Leaf(leaf.index)
                    }
                    Some(_) => return Err(DiagramError::NotAdmissible),
                    None if on_cycle.contains(&far) => {
                        let fresh = chord_of_edge.len();
                        End::Chord(*chord_of_edge.entry(eoh[h]).or_insert(fresh))
                    }
                    None => return Err(DiagramError::NotAdmissible),
                };
                site.push(end);
                h = sigma[h];
            }
            sites.push(site);
        }
        let base = sites.remove(0);
        sites.reverse();
        let at_basepoint = !base.is_empty();
        if at_basepoint {
            sites.insert(0, base);
        }
        sites.retain(|s| !s.is_empty());
        circles.push(Circle { at_basepoint, sites });
    }
    let d = SullivanDiagram { circles, chords: chord_of_edge.len(), leaves };
    d.check_structure()?;
    Ok(d)
}

/// Sullivan diagram of a unilevel type: chord data of its unfolded graph.
pub fn f_map(t: &CombinatorialType) -> Result<SullivanDiagram, DiagramError> {
    if !t.is_unilevel() {
        return Err(DiagramError::NotUnilevel);
    }
    from_admissible(&unfolded_graph(t)?)
}

/// Canonical unilevel type with positions at the sites, stacks in site
/// order, slits paired along two-ended chords.
pub fn g_map(d: &SullivanDiagram) -> Result<CombinatorialType, DiagramError> {
    d.validate()?;
    let s = 2 * d.chords;
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pairing = vec![0; s];
    let mut next = 0;
    let annuli = d
        .circles
        .iter()
        .map(|c| Annulus {
            on_real_line: c.at_basepoint,
            positions: c
                .sites
                .iter()
                .map(|site| {
                    site.iter()
                        .map(|&e| match e {
                            End::Leaf(k) => s + k,
                            End::Chord(ch) => {
                                let x = next;
                                next += 1;
                                if let Some(&y) = first.get(&ch) {
                                    pairing[x] = y;
                                    pairing[y] = x;
                                } else {
                                    first.insert(ch, x);
                                }
                                x
                            }
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    let t = CombinatorialType {
        h: d.chords,
        m: d.leaves,
        annuli,
        pairing,
        levels: vec![1; s],
        at_inner: false,
        at_outer: d.chords > 0,
    };
    Ok(t.canonicalize())
}

/// All canonical diagrams of topological type `(g, n, m)`, sorted.
pub fn enumerate_diagrams(g: usize, n: usize, m: usize) -> Result<Vec<SullivanDiagram>, DiagramError> {
    if n == 0 || m == 0 {
        return Err(ParamError::Empty { n, m }.into());
    }
    let h = 2 * g + n + m - 2;
    let total = 2 * h + m;
    let mut words = Vec::new();
    chord_words(h, m, total, &mut Vec::new(), &mut vec![0; h], &mut vec![false; m], &mut words);
    let mut shapes = Vec::new();
    for sizes in compositions(total, n) {
        circle_shapes(&sizes, &mut Vec::new(), &mut shapes);
    }
    let mut seen: HashSet<SullivanDiagram> = HashSet::new();
    let mut out = BTreeSet::new();
    for shape in &shapes {
        for word in &words {
            let mut it = word.iter().copied();
            let circles = shape
                .iter()
                .map(|(at_basepoint, parts)| Circle {
                    at_basepoint: *at_basepoint,
                    sites: parts.iter().map(|&p| it.by_ref().take(p).collect()).collect(),
                })
                .collect();
            let d = SullivanDiagram { circles, chords: h, leaves: m };
            if seen.contains(&d) || d.validate().is_err() || !matches!(d.topological_type(), Ok(tt) if tt == (g, n, m))
            {
                continue;
            }
            let orbit = d.slide_orbit();
            out.insert(orbit.iter().next().expect("nonempty").clone());
            seen.extend(orbit);
        }
    }
    Ok(out.into_iter().collect())
}

/// Reading words with chords numbered by first appearance.
fn chord_words(
    h: usize,
    m: usize,
    left: usize,
    cur: &mut Vec<End>,
    uses: &mut Vec<usize>,
    leaf_used: &mut Vec<bool>,
    out: &mut Vec<Vec<End>>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    let opened = uses.iter().filter(|&&u| u > 0).count();
    for c in 0..h.min(opened + 1) {
        if uses[c] < 2 {
            uses[c] += 1;
            cur.push(End::Chord(c));
            chord_words(h, m, left - 1, cur, uses, leaf_used, out);
            cur.pop();
            uses[c] -= 1;
        }
    }
    for k in 0..m {
        if !leaf_used[k] {
            leaf_used[k] = true;
            cur.push(End::Leaf(k));
            chord_words(h, m, left - 1, cur, uses, leaf_used, out);
            cur.pop();
            leaf_used[k] = false;
        }
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (1..=total.saturating_sub(parts - 1))
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Basepoint flag and site sizes per circle.
fn circle_shapes(sizes: &[usize], cur: &mut Vec<(bool, Vec<usize>)>, out: &mut Vec<Vec<(bool, Vec<usize>)>>) {
    let Some((&size, rest)) = sizes.split_first() else {
        out.push(cur.clone());
        return;
    };
    for k in 1..=size {
        for parts in compositions(size, k) {
            for flag in [false, true] {
                cur.push((flag, parts.clone()));
                circle_shapes(rest, cur, out);
                cur.pop();
            }
        }
    }
}
