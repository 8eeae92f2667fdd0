//! Combinatorial types of radial slit configurations.
//!
//! Indices `0..2h` are slits and `2h..2h+m` are parametrization points. Each
//! annulus lists its positions counterclockwise from angle 0; each position
//! holds a stack in successor order, clockwise-most first. On an annulus with
//! a single position the last stack element is the one whose angular
//! distance to its successor is the full turn.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Annulus {
    /// First position lies on the positive real line.
    pub on_real_line: bool,
    pub positions: Vec<Vec<usize>>,
}

impl Annulus {
    /// Successor order of the annulus, starting at angle 0.
    pub fn order(&self) -> Vec<usize> {
        self.positions.concat()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CombinatorialType {
    pub h: usize,
    pub m: usize,
    pub annuli: Vec<Annulus>,
    /// Slit pairing on `0..2h`.
    pub pairing: Vec<usize>,
    /// Level of each slit, `1..=l`, increasing radius.
    pub levels: Vec<usize>,
    pub at_inner: bool,
    pub at_outer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiDegree {
    pub radial: Vec<usize>,
    pub annular: usize,
}

impl MultiDegree {
    pub fn radial_dimension(&self) -> usize {
        self.radial.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("(i) {0}")]
    Structure(String),
    #[error("(ii) pairing is not a fixed-point-free involution at slit {0}")]
    Pairing(usize),
    #[error("(ii) paired slits {0} and {1} lie on levels {2} and {3}")]
    LevelMismatch(usize, usize, usize, usize),
    #[error("(ii) level {0} carries no slit")]
    LevelGap(usize),
    #[error("(iii) index {0} appears {1} times")]
    Occurrence(usize, usize),
    #[error("(iii) annulus {0} carries no slit or parametrization point")]
    EmptyAnnulus(usize),
    #[error("(iv) boundary permutation has {found} cycles, expected {expected}")]
    CycleCount { found: usize, expected: usize },
    #[error("(v) outgoing arc {arc} holds {points} parametrization points")]
    OutgoingArc { arc: usize, points: usize },
    #[error("(vi) annulus {0} has an empty stack")]
    EmptyStack(usize),
}

impl TypeError {
    pub fn condition(&self) -> &'static str {
        match self {
            TypeError::Structure(_) => "i",
            TypeError::Pairing(_) | TypeError::LevelMismatch(..) | TypeError::LevelGap(_) => "ii",
            TypeError::Occurrence(..) | TypeError::EmptyAnnulus(_) => "iii",
            TypeError::CycleCount { .. } => "iv",
            TypeError::OutgoingArc { .. } => "v",
            TypeError::EmptyStack(_) => "vi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("axis {axis} out of range for {annuli} annuli")]
    Axis { axis: usize, annuli: usize },
    #[error("chamber {chamber} out of range on axis {axis} of degree {degree}")]
    Chamber { axis: usize, chamber: usize, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("2h = 2(2g-2+n+m) has no solution g >= 0 for h={h}, n={n}, m={m}")]
    Inconsistent { h: usize, n: usize, m: usize },
    #[error("n and m must be at least 1 (n={n}, m={m})")]
    Empty { n: usize, m: usize },
}

/// Genus from `h = 2g - 2 + n + m`.
pub fn genus(h: usize, n: usize, m: usize) -> Result<usize, ParamError> {
    if n == 0 || m == 0 {
        return Err(ParamError::Empty { n, m });
    }
    let twice = h as i64 + 2 - n as i64 - m as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(ParamError::Inconsistent { h, n, m });
    }
    Ok((twice / 2) as usize)
}

/// `h = 2g - 2 + n + m`.
pub fn slit_pairs(g: usize, n: usize, m: usize) -> Result<usize, ParamError> {
    if n == 0 || m == 0 {
        return Err(ParamError::Empty { n, m });
    }
    Ok(2 * g + n + m - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Before,
    After,
}

impl CombinatorialType {
    pub fn n(&self) -> usize {
        self.annuli.len()
    }

    pub fn slit_count(&self) -> usize {
        2 * self.h
    }

    pub fn is_slit(&self, x: usize) -> bool {
        x < 2 * self.h
    }

    pub fn level_count(&self) -> usize {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// `(annulus, position, slot)` of every index.
    pub fn locate(&self, x: usize) -> Option<(usize, usize, usize)> {
        for (a, ann) in self.annuli.iter().enumerate() {
            for (p, stack) in ann.positions.iter().enumerate() {
                if let Some(k) = stack.iter().position(|&y| y == x) {
                    return Some((a, p, k));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<(), Vec<TypeError>> {
        let s = self.slit_count();
        let total = s + self.m;
        let mut errs = Vec::new();
        if self.pairing.len() != s || self.levels.len() != s {
            errs.push(TypeError::Structure(format!(
                "pairing/levels must have length {s}, got {}/{}",
                self.pairing.len(),
                self.levels.len()
            )));
            return Err(errs);
        }
        let mut count = vec![0usize; total];
        for (a, ann) in self.annuli.iter().enumerate() {
            if ann.positions.is_empty() {
                errs.push(TypeError::EmptyAnnulus(a));
            }
            for stack in &ann.positions {
                if stack.is_empty() {
                    errs.push(TypeError::EmptyStack(a));
                }
                for &x in stack {
                    if x >= total {
                        errs.push(TypeError::Occurrence(x, 1));
                    } else {
                        count[x] += 1;
                    }
                }
            }
        }
        for (x, &c) in count.iter().enumerate() {
            if c != 1 {
                errs.push(TypeError::Occurrence(x, c));
            }
        }
        if self.annuli.is_empty() {
            errs.push(TypeError::Structure("no annuli".into()));
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        for i in 0..s {
            let j = self.pairing[i];
            if j >= s || j == i || self.pairing[j] != i {
                errs.push(TypeError::Pairing(i));
                return Err(errs);
            }
        }
        for i in 0..s {
            let j = self.pairing[i];
            if i < j && self.levels[i] != self.levels[j] {
                errs.push(TypeError::LevelMismatch(i, j, self.levels[i], self.levels[j]));
            }
        }
        let l = self.level_count();
        let used: BTreeSet<usize> = self.levels.iter().copied().collect();
        if used.contains(&0) {
            errs.push(TypeError::Structure("levels start at 1".into()));
        }
        for lev in 1..=l {
            if !used.contains(&lev) {
                errs.push(TypeError::LevelGap(lev));
            }
        }
        if s == 0 && (self.at_inner || self.at_outer) {
            errs.push(TypeError::Structure("boundary flags need slits".into()));
        }
        if l == 1 && self.at_inner && self.at_outer {
            errs.push(TypeError::Structure("a single level cannot touch both boundaries".into()));
        }
        let arcs = self.outgoing_arcs();
        if arcs.len() != self.m {
            errs.push(TypeError::CycleCount { found: arcs.len(), expected: self.m });
        }
        for (arc, points) in arcs.iter().enumerate() {
            if points.len() != 1 {
                errs.push(TypeError::OutgoingArc { arc, points: points.len() });
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(errs)
        }
    }

    /// Successor of each slit among the slits of its annulus.
    pub fn slit_successor(&self) -> Vec<usize> {
        let mut succ = vec![usize::MAX; self.slit_count()];
        for ann in &self.annuli {
            let slits: Vec<usize> = ann.order().into_iter().filter(|&x| self.is_slit(x)).collect();
            for (k, &x) in slits.iter().enumerate() {
                succ[x] = slits[(k + 1) % slits.len()];
            }
        }
        succ
    }

    /// Parametrization points on each outgoing boundary: one entry per cycle of
    /// `pairing . slit_successor`, then one per slit-free annulus.
    pub fn outgoing_arcs(&self) -> Vec<Vec<usize>> {
        let s = self.slit_count();
        let mut arc_of = vec![Vec::new(); s];
        let mut free = Vec::new();
        for ann in &self.annuli {
            let ord = ann.order();
            let starts: Vec<usize> = (0..ord.len()).filter(|&k| ord[k] < s).collect();
            if starts.is_empty() {
                free.push(ord.clone());
                continue;
            }
            for &k in &starts {
                let mut t = (k + 1) % ord.len();
                while ord[t] >= s {
                    arc_of[ord[k]].push(ord[t]);
                    t = (t + 1) % ord.len();
                }
            }
        }
        let succ = self.slit_successor();
        let mut seen = vec![false; s];
        let mut out = Vec::new();
        for start in 0..s {
            if seen[start] {
                continue;
            }
            let mut arc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                arc.extend(&arc_of[j]);
                j = self.pairing[succ[j]];
            }
            arc.sort_unstable();
            out.push(arc);
        }
        out.extend(free);
        out
    }

    pub fn multi_degree(&self) -> MultiDegree {
        let radial = self.annuli.iter().map(|a| a.positions.len() + usize::from(!a.on_real_line) - 1).collect();
        let annular = self.level_count() - usize::from(self.at_inner) - usize::from(self.at_outer);
        MultiDegree { radial, annular }
    }

    /// Whether the glued surface is connected: annuli linked through slit
    /// pairs form one component.
    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.n());
        for x in 0..self.slit_count() {
            let (a, _, _) = self.locate(x).expect("slit present");
            let (b, _, _) = self.locate(self.pairing[x]).expect("slit present");
            uf.union(a, b);
        }
        (0..self.n()).all(|a| uf.find(a) == uf.find(0))
    }

    pub fn is_unilevel(&self) -> bool {
        self.h == 0 || (self.level_count() == 1 && self.at_outer)
    }

    fn moved(&self, x: usize, target: usize, side: Side) -> CombinatorialType {
        let mut t = self.clone();
        let (a, p, k) = t.locate(x).expect("index present");
        t.annuli[a].positions[p].remove(k);
        let (a, p, k) = t.locate(target).expect("target present");
        let at = if side == Side::After { k + 1 } else { k };
        t.annuli[a].positions[p].insert(at, x);
        t
    }

    /// Types reachable by one slit jump or parametrization-point jump, in
    /// either direction.
    pub fn jump_neighbors(&self) -> Vec<CombinatorialType> {
        let s = self.slit_count();
        let mut out = Vec::new();
        for ann in &self.annuli {
            for stack in &ann.positions {
                for w in stack.windows(2) {
                    let (x, y) = (w[0], w[1]);
                    if y < s {
                        let target = self.pairing[y];
                        if x != target && (x >= s || self.levels[x] >= self.levels[y]) {
                            out.push(self.moved(x, target, Side::After));
                        }
                    }
                    if x < s {
                        let target = self.pairing[x];
                        if y != target && (y >= s || self.levels[y] >= self.levels[x]) {
                            out.push(self.moved(y, target, Side::Before));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn jump_orbit(&self) -> BTreeSet<CombinatorialType> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(t) = queue.pop_front() {
            for u in t.jump_neighbors() {
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Renames slits in order of first appearance; parametrization points keep
    /// their labels.
    pub fn relabel(&self) -> CombinatorialType {
        let s = self.slit_count();
        let mut map = vec![usize::MAX; s];
        let mut next = 0;
        for ann in &self.annuli {
            for &x in ann.positions.iter().flatten() {
                if x < s {
                    map[x] = next;
                    next += 1;
                }
            }
        }
        let mut pairing = vec![0; s];
        let mut levels = vec![0; s];
        for i in 0..s {
            pairing[map[i]] = map[self.pairing[i]];
            levels[map[i]] = self.levels[i];
        }
        let annuli = self
            .annuli
            .iter()
            .map(|a| Annulus {
                on_real_line: a.on_real_line,
                positions: a
                    .positions
                    .iter()
                    .map(|st| st.iter().map(|&x| if x < s { map[x] } else { x }).collect())
                    .collect(),
            })
            .collect();
        CombinatorialType { annuli, pairing, levels, ..self.clone() }
    }

    pub fn canonicalize(&self) -> CombinatorialType {
        self.jump_orbit().iter().map(|t| t.relabel()).min().expect("orbit contains self")
    }

    /// Paired slits in one stack whose successor walk passes only slits at
    /// least as high; a walk may not cross the full-turn gap when every slit
    /// of the annulus shares the stack.
    pub fn has_squeezed_pair(&self) -> bool {
        let s = self.slit_count();
        for ann in &self.annuli {
            let slits: Vec<(usize, usize)> = ann
                .positions
                .iter()
                .enumerate()
                .flat_map(|(p, st)| st.iter().filter(|&&x| x < s).map(move |&x| (p, x)))
                .collect();
            if slits.is_empty() {
                continue;
            }
            let one_stack = slits.iter().all(|&(p, _)| p == slits[0].0);
            for (a, &(p, i)) in slits.iter().enumerate() {
                let j = self.pairing[i];
                let Some(b) = slits.iter().position(|&(_, x)| x == j) else { continue };
                if slits[b].0 != p {
                    continue;
                }
                if one_stack && b < a {
                    continue;
                }
                let mut t = (a + 1) % slits.len();
                let mut ok = true;
                while t != b {
                    if self.levels[slits[t].1] < self.levels[i] {
                        ok = false;
                        break;
                    }
                    t = (t + 1) % slits.len();
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }

    pub fn is_degenerate(&self) -> bool {
        self.at_inner || self.at_outer || self.jump_orbit().iter().any(|t| t.has_squeezed_pair())
    }

    /// Collapses chamber `j` on `axis`: axes `0..n` are radial, axis `n` is
    /// annular.
    pub fn face(&self, axis: usize, j: usize) -> Result<CombinatorialType, FaceError> {
        let n = self.n();
        let md = self.multi_degree();
        if axis > n {
            return Err(FaceError::Axis { axis, annuli: n });
        }
        let degree = if axis < n { md.radial[axis] } else { md.annular };
        if degree == 0 || j > degree {
            return Err(FaceError::Chamber { axis, chamber: j, degree });
        }
        let mut t = self.clone();
        if axis < n {
            let ann = &self.annuli[axis];
            let mut dividers: Vec<Vec<usize>> = Vec::new();
            if !ann.on_real_line {
                dividers.push(Vec::new());
            }
            dividers.extend(ann.positions.iter().cloned());
            if j < degree {
                let next = dividers.remove(j + 1);
                dividers[j].extend(next);
            } else {
                let mut last = dividers.pop().expect("dividers nonempty");
                last.extend(std::mem::take(&mut dividers[0]));
                dividers[0] = last;
            }
            let on_real_line = !dividers[0].is_empty();
            let positions = dividers.into_iter().filter(|d| !d.is_empty()).collect();
            t.annuli[axis] = Annulus { on_real_line, positions };
        } else {
            let l = self.level_count();
            let mut circles: Vec<Vec<usize>> = Vec::new();
            circles.push(if self.at_inner { vec![1] } else { vec![] });
            let lo = if self.at_inner { 2 } else { 1 };
            let hi = if self.at_outer { l - 1 } else { l };
            for lev in lo..=hi {
                circles.push(vec![lev]);
            }
            circles.push(if self.at_outer { vec![l] } else { vec![] });
            let next = circles.remove(j + 1);
            circles[j].extend(next);
            let last = circles.len() - 1;
            let mut map = BTreeMap::new();
            for (fresh, group) in circles.iter().filter(|g| !g.is_empty()).enumerate() {
                for &lev in group {
                    map.insert(lev, fresh + 1);
                }
            }
            t.at_inner = !circles[0].is_empty();
            t.at_outer = !circles[last].is_empty();
            t.levels = self.levels.iter().map(|l| map[l]).collect();
        }
        Ok(t)
    }

    /// All faces as `(axis, chamber, face)`, axes in order, chambers ascending.
    pub fn faces(&self) -> Vec<(usize, usize, CombinatorialType)> {
        let md = self.multi_degree();
        let mut out = Vec::new();
        for axis in 0..=self.n() {
            let degree = if axis < self.n() { md.radial[axis] } else { md.annular };
            if degree == 0 {
                continue;
            }
            for j in 0..=degree {
                out.push((axis, j, self.face(axis, j).expect("in range")));
            }
        }
        out
    }

    pub fn unilevel_projection(&self) -> CombinatorialType {
        let mut t = self.clone();
        if self.h > 0 {
            t.levels = vec![1; self.slit_count()];
            t.at_inner = false;
            t.at_outer = true;
        }
        t
    }

    /// One-line form: annuli in brackets, `^` marks a position on the real
    /// line, `|` separates positions, `pK` is a parametrization point.
    pub fn to_compact(&self) -> String {
        let s = self.slit_count();
        let mut out = String::new();
        for ann in &self.annuli {
            out.push('[');
            if ann.on_real_line {
                out.push('^');
            }
            let parts: Vec<String> = ann
                .positions
                .iter()
                .map(|st| {
                    st.iter()
                        .map(|&x| if x < s { x.to_string() } else { format!("p{}", x - s) })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            out.push_str(&parts.join("|"));
            out.push(']');
        }
        if s > 0 {
            let _ = write!(out, " pair={:?} lev={:?}", self.pairing, self.levels);
        }
        if self.at_inner {
            out.push_str(" inner");
        }
        if self.at_outer {
            out.push_str(" outer");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    Nondegenerate,
    Unilevel,
    All,
}

/// Canonical form and degeneracy of an orbit, caching every member.
struct OrbitCache {
    seen: HashSet<CombinatorialType>,
}

impl OrbitCache {
    fn new() -> Self {
        OrbitCache { seen: HashSet::new() }
    }

    fn visit(&mut self, t: CombinatorialType) -> Option<(CombinatorialType, bool)> {
        let t = t.relabel();
        if self.seen.contains(&t) {
            return None;
        }
        let orbit: BTreeSet<CombinatorialType> = t.jump_orbit().into_iter().map(|u| u.relabel()).collect();
        let degenerate = t.at_inner || t.at_outer || orbit.iter().any(|u| u.has_squeezed_pair());
        let canon = orbit.iter().next().expect("nonempty").clone();
        self.seen.extend(orbit);
        Some((canon, degenerate))
    }
}

fn arrangements(slits: usize, m: usize) -> Vec<Vec<Option<usize>>> {
    fn rec(rest_s: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if rest_s == 0 && used.iter().all(|&u| u) {
            out.push(cur.clone());
            return;
        }
        if rest_s > 0 {
            cur.push(None);
            rec(rest_s - 1, used, cur, out);
            cur.pop();
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(Some(k));
                rec(rest_s, used, cur, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(slits, &mut vec![false; m], &mut Vec::new(), &mut out);
    out
}

/// Compositions of `total` into `parts` positive parts.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Perfect matchings of `0..k` as pairing arrays.
pub(crate) fn matchings(k: usize) -> Vec<Vec<usize>> {
    fn rec(p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = p.iter().position(|&x| x == usize::MAX) else {
            out.push(p.clone());
            return;
        };
        for j in i + 1..p.len() {
            if p[j] == usize::MAX {
                p[i] = j;
                p[j] = i;
                rec(p, out);
                p[i] = usize::MAX;
                p[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; k], &mut out);
    out
}

/// Ordered set partitions of `0..k` as block index per element.
pub(crate) fn ordered_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, k: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(i + 1, k, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut set_partitions = Vec::new();
    rec(0, k, &mut Vec::new(), 0, &mut set_partitions);
    let mut out = Vec::new();
    for sp in set_partitions {
        let blocks = sp.iter().map(|&b| b + 1).max().unwrap_or(0);
        for perm in permutations(blocks) {
            out.push(sp.iter().map(|&b| perm[b]).collect());
        }
    }
    out
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn heap(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..n - 1 {
            heap(n - 1, cur, out);
            if n.is_multiple_of(2) {
                cur.swap(i, n - 1);
            } else {
                cur.swap(0, n - 1);
            }
        }
        heap(n - 1, cur, out);
    }
    heap(k, &mut cur, &mut out);
    out.sort();
    out
}

/// Level data `(levels per slit, at_inner, at_outer)` allowed by a filter.
fn level_options(pairing: &[usize], filter: Filter) -> Vec<(Vec<usize>, bool, bool)> {
    let s = pairing.len();
    if s == 0 {
        return vec![(vec![], false, false)];
    }
    if filter == Filter::Unilevel {
        return vec![(vec![1; s], false, true)];
    }
    let pairs: Vec<usize> = (0..s).filter(|&i| i < pairing[i]).collect();
    let mut out = Vec::new();
    for blocks in ordered_partitions(pairs.len()) {
        let mut levels = vec![0; s];
        for (b, &i) in blocks.iter().zip(&pairs) {
            levels[i] = b + 1;
            levels[pairing[i]] = b + 1;
        }
        let l = blocks.iter().max().map_or(0, |b| b + 1);
        let flags: &[(bool, bool)] = if filter == Filter::All {
            &[(false, false), (true, false), (false, true), (true, true)]
        } else {
            &[(false, false)]
        };
        for &(inner, outer) in flags {
            if l == 1 && inner && outer {
                continue;
            }
            out.push((levels.clone(), inner, outer));
        }
    }
    out
}

fn keep(filter: Filter, canon: &CombinatorialType, degenerate: bool) -> bool {
    match filter {
        Filter::Nondegenerate => !degenerate,
        Filter::Unilevel => canon.is_unilevel(),
        Filter::All => true,
    }
}

/// Canonical types of the given parameters, by placing unlabeled slits and
/// labeled parametrization points into stacks and positions.
pub fn enumerate_types(h: usize, n: usize, m: usize, filter: Filter) -> Result<Vec<CombinatorialType>, ParamError> {
    genus(h, n, m)?;
    let s = 2 * h;
    let total = s + m;
    let mut jobs = Vec::new();
    for seq in arrangements(s, m) {
        for comp in compositions(total, n) {
            jobs.push((seq.clone(), comp));
        }
    }
    let found = jobs
        .par_iter()
        .fold(
            || (OrbitCache::new(), BTreeSet::new()),
            |(mut cache, mut acc), (seq, comp)| {
                let mut chunks = Vec::new();
                let mut start = 0;
                for &len in comp {
                    chunks.push(&seq[start..start + len]);
                    start += len;
                }
                let cut_counts: Vec<usize> = comp.iter().map(|&len| 1usize << len).collect();
                let combos: usize = cut_counts.iter().product();
                for code in 0..combos {
                    let mut rest = code;
                    let mut annuli = Vec::new();
                    let mut next_slit = 0;
                    for (a, chunk) in chunks.iter().enumerate() {
                        let c = rest % cut_counts[a];
                        rest /= cut_counts[a];
                        let on_real_line = c & 1 == 1;
                        let cuts = c >> 1;
                        let mut positions = vec![Vec::new()];
                        for (k, tok) in chunk.iter().enumerate() {
                            if k > 0 && (cuts >> (k - 1)) & 1 == 1 {
                                positions.push(Vec::new());
                            }
                            let x = match tok {
                                None => {
                                    next_slit += 1;
                                    next_slit - 1
                                }
                                Some(p) => s + p,
                            };
                            positions.last_mut().expect("nonempty").push(x);
                        }
                        annuli.push(Annulus { on_real_line, positions });
                    }
                    for pairing in matchings(s) {
                        for (levels, at_inner, at_outer) in level_options(&pairing, filter) {
                            let t = CombinatorialType {
                                h,
                                m,
                                annuli: annuli.clone(),
                                pairing: pairing.clone(),
                                levels,
                                at_inner,
                                at_outer,
                            };
                            if t.validate().is_err() || !t.is_connected() {
                                continue;
                            }
                            if let Some((canon, degenerate)) = cache.visit(t) {
                                if keep(filter, &canon, degenerate) {
                                    acc.insert(canon);
                                }
                            }
                        }
                    }
                }
                (cache, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().collect())
}

/// Nondegenerate canonical types generated from successor permutations with
/// `n` cycles, the fixed pairing `(0 1)(2 3)...`, a choice of angular gaps
/// and the position of the real line on every annulus.
pub fn enumerate_nondegenerate_by_tuples(h: usize, n: usize, m: usize) -> Result<Vec<CombinatorialType>, ParamError> {
    genus(h, n, m)?;
    let s = 2 * h;
    let total = s + m;
    let pairing: Vec<usize> = (0..s).map(|i| i ^ 1).collect();
    let mut cycle_sets = Vec::new();
    for perm in permutations(total) {
        let mut seen = vec![false; total];
        let mut cycles = Vec::new();
        for st in 0..total {
            if seen[st] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = st;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = perm[x];
            }
            cycles.push(c);
        }
        if cycles.len() == n {
            for order in permutations(n) {
                cycle_sets.push(order.iter().map(|&k| cycles[k].clone()).collect::<Vec<_>>());
            }
        }
    }
    let found = cycle_sets
        .par_iter()
        .fold(
            || (OrbitCache::new(), BTreeSet::new()),
            |(mut cache, mut acc), cycles: &Vec<Vec<usize>>| {
                if !tuple_boundary_ok(cycles, &pairing, s, m) || !tuple_connected(cycles, &pairing) {
                    return (cache, acc);
                }
                let per_annulus: Vec<Vec<Annulus>> = cycles.iter().map(|c| annulus_choices(c)).collect();
                let mut idx = vec![0usize; n];
                loop {
                    let annuli: Vec<Annulus> = (0..n).map(|a| per_annulus[a][idx[a]].clone()).collect();
                    for (levels, _, _) in level_options(&pairing, Filter::Nondegenerate) {
                        let t = CombinatorialType {
                            h,
                            m,
                            annuli: annuli.clone(),
                            pairing: pairing.clone(),
                            levels,
                            at_inner: false,
                            at_outer: false,
                        };
                        if let Some((canon, degenerate)) = cache.visit(t) {
                            if !degenerate {
                                acc.insert(canon);
                            }
                        }
                    }
                    let mut a = 0;
                    loop {
                        if a == n {
                            return (cache, acc);
                        }
                        idx[a] += 1;
                        if idx[a] < per_annulus[a].len() {
                            break;
                        }
                        idx[a] = 0;
                        a += 1;
                    }
                }
            },
        )
        .map(|(_, acc)| acc)
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(found.into_iter().collect())
}

/// Boundary count and one point per outgoing boundary, read directly off the
/// successor cycles.
fn tuple_boundary_ok(cycles: &[Vec<usize>], pairing: &[usize], s: usize, m: usize) -> bool {
    let mut next = vec![0usize; s + m];
    for c in cycles {
        for (k, &x) in c.iter().enumerate() {
            next[x] = c[(k + 1) % c.len()];
        }
    }
    let mut slit_next = vec![0usize; s];
    let mut points_after = vec![0usize; s];
    let mut boundaries = 0;
    for c in cycles {
        if c.iter().all(|&x| x >= s) {
            if c.len() != 1 {
                return false;
            }
            boundaries += 1;
            continue;
        }
        for &x in c.iter().filter(|&&x| x < s) {
            let mut y = next[x];
            while y >= s {
                points_after[x] += 1;
                y = next[y];
            }
            slit_next[x] = y;
        }
    }
    let mut seen = vec![false; s];
    for st in 0..s {
        if seen[st] {
            continue;
        }
        boundaries += 1;
        let mut pts = 0;
        let mut x = st;
        while !seen[x] {
            seen[x] = true;
            pts += points_after[x];
            x = pairing[slit_next[x]];
        }
        if pts != 1 {
            return false;
        }
    }
    boundaries == m
}

/// Successor cycles linked by the pairing form one class.
fn tuple_connected(cycles: &[Vec<usize>], pairing: &[usize]) -> bool {
    let mut owner = vec![0; cycles.iter().map(Vec::len).sum()];
    for (c, cyc) in cycles.iter().enumerate() {
        for &x in cyc {
            owner[x] = c;
        }
    }
    let mut reached = vec![false; cycles.len()];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(c) = stack.pop() {
        for &x in cycles[c].iter().filter(|&&x| x < pairing.len()) {
            let d = owner[pairing[x]];
            if !reached[d] {
                reached[d] = true;
                stack.push(d);
            }
        }
    }
    reached.iter().all(|&r| r)
}

/// Every nonempty gap set on a successor cycle with each real-line anchor.
fn annulus_choices(cycle: &[usize]) -> Vec<Annulus> {
    let len = cycle.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << len) {
        // gap after cycle[k] when bit k is set
        let gaps: Vec<usize> = (0..len).filter(|&k| mask >> k & 1 == 1).collect();
        let runs: Vec<Vec<usize>> = gaps
            .iter()
            .enumerate()
            .map(|(r, &g)| {
                let end = gaps[(r + 1) % gaps.len()];
                let mut run = Vec::new();
                let mut k = (g + 1) % len;
                loop {
                    run.push(cycle[k]);
                    if k == end {
                        break;
                    }
                    k = (k + 1) % len;
                }
                run
            })
            .collect();
        for first in 0..runs.len() {
            let positions: Vec<Vec<usize>> = (0..runs.len()).map(|r| runs[(first + r) % runs.len()].clone()).collect();
            out.push(Annulus { on_real_line: true, positions: positions.clone() });
            out.push(Annulus { on_real_line: false, positions });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cylinder(on_line: bool) -> CombinatorialType {
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

    /// Two slits on one annulus with a point on each outgoing arc.
    fn pants(levels: usize) -> CombinatorialType {
        CombinatorialType {
            h: 1,
            m: 2,
            annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0], vec![2], vec![1], vec![3]] }],
            pairing: vec![1, 0],
            levels: vec![levels, levels],
            at_inner: false,
            at_outer: levels == 1,
        }
    }

    #[test]
    fn cylinder_is_valid() {
        assert_eq!(cylinder(false).validate(), Ok(()));
        assert_eq!(cylinder(false).multi_degree(), MultiDegree { radial: vec![1], annular: 0 });
        assert_eq!(cylinder(true).multi_degree(), MultiDegree { radial: vec![0], annular: 0 });
    }

    #[test]
    fn level_mismatch_is_condition_ii() {
        let mut t = pants(1);
        t.at_outer = false;
        t.levels = vec![1, 2];
        let errs = t.validate().unwrap_err();
        assert!(errs.iter().any(|e| e.condition() == "ii"));
    }

    #[test]
    fn too_few_cycles_is_condition_iv() {
        // both points on one arc: one boundary cycle short
        let t = CombinatorialType {
            annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0], vec![2], vec![3], vec![1]] }],
            ..pants(1)
        };
        let errs = t.validate().unwrap_err();
        assert!(errs.iter().any(|e| e.condition() == "v"));
        let mut t3 = pants(1);
        t3.m = 1;
        t3.annuli[0].positions = vec![vec![0], vec![2], vec![1]];
        let errs = t3.validate().unwrap_err();
        assert!(errs.iter().any(|e| e.condition() == "iv"), "{errs:?}");
    }

    #[test]
    fn generic_orbit_is_singleton() {
        let t = pants(1);
        assert_eq!(t.validate(), Ok(()));
        assert_eq!(t.jump_orbit().len(), 1);
    }

    #[test]
    fn slit_jump_links_both_sides() {
        // slit 2 sits just counterclockwise of slit 0 and is higher
        let t = CombinatorialType {
            h: 2,
            m: 1,
            annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0, 2], vec![1], vec![4], vec![3]] }],
            pairing: vec![1, 0, 3, 2],
            levels: vec![1, 1, 2, 2],
            at_inner: false,
            at_outer: false,
        };
        assert_eq!(t.validate(), Ok(()));
        let jumped = t.moved(2, 1, Side::Before);
        assert_eq!(jumped.annuli[0].positions, vec![vec![0], vec![2, 1], vec![4], vec![3]]);
        assert_eq!(jumped.validate(), Ok(()));
        assert!(t.jump_orbit().contains(&jumped));
        assert!(jumped.jump_orbit().contains(&t));
        assert_eq!(t.canonicalize(), jumped.canonicalize());
    }

    #[test]
    fn point_jump_links_both_sides() {
        let t = CombinatorialType {
            annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0], vec![2], vec![1, 3]] }],
            ..pants(1)
        };
        let jumped = t.moved(3, 0, Side::Before);
        assert_eq!(jumped.annuli[0].positions, vec![vec![3, 0], vec![2], vec![1]]);
        assert_eq!(jumped.validate(), Ok(()));
        assert!(t.jump_orbit().contains(&jumped));
        assert!(jumped.jump_orbit().contains(&t));
    }

    #[test]
    fn canonicalize_is_idempotent_and_relabel_invariant() {
        let t = pants(1);
        let c = t.canonicalize();
        assert_eq!(c.canonicalize(), c);
        let mut r = t.clone();
        r.pairing = vec![1, 0];
        r.annuli[0].positions = vec![vec![1], vec![2], vec![0], vec![3]];
        assert_eq!(r.canonicalize(), c);
    }

    #[test]
    fn unilevel_types_are_degenerate() {
        assert!(pants(1).is_degenerate());
        assert!(!pants(2).with_interior().is_degenerate());
    }

    impl CombinatorialType {
        fn with_interior(mut self) -> Self {
            self.levels = vec![1, 1];
            self.at_outer = false;
            self
        }
    }

    #[test]
    fn squeezed_pair_after_face() {
        // positions [0] [p0] [1] [p1]: collapsing the chamber between 1 and p1?
        // collapse chambers until 0 and 1 share a stack with p0 between them
        let t = pants(2).with_interior();
        let f = t.face(0, 1).unwrap().face(0, 1).unwrap();
        assert_eq!(f.annuli[0].positions, vec![vec![0, 2, 1], vec![3]]);
        assert!(f.has_squeezed_pair());
        assert!(f.is_degenerate());
    }

    #[test]
    fn face_drops_degree_on_axis() {
        let t = pants(2).with_interior();
        let md = t.multi_degree();
        for (axis, _, f) in t.faces() {
            let mut expected = md.clone();
            if axis < t.n() {
                expected.radial[axis] -= 1;
            } else {
                expected.annular -= 1;
            }
            assert_eq!(f.multi_degree(), expected);
            assert_eq!(f.validate(), Ok(()));
        }
    }

    #[test]
    fn wrap_face_pins_to_real_line() {
        let t = cylinder(false);
        assert_eq!(t.face(0, 1).unwrap(), cylinder(true));
        assert_eq!(t.face(0, 0).unwrap(), cylinder(true));
        assert!(cylinder(true).face(0, 0).is_err());
    }

    #[test]
    fn annular_faces_set_flags() {
        let mut t = pants(1).with_interior();
        t.h = 2;
        t.m = 1;
        t.annuli[0].positions = vec![vec![0], vec![2], vec![1], vec![4], vec![3]];
        t.pairing = vec![1, 0, 3, 2];
        t.levels = vec![1, 1, 2, 2];
        assert_eq!(t.validate(), Ok(()));
        assert_eq!(t.multi_degree().annular, 2);
        let inner = t.face(1, 0).unwrap();
        assert!(inner.at_inner && !inner.at_outer);
        let mid = t.face(1, 1).unwrap();
        assert_eq!(mid.levels, vec![1, 1, 1, 1]);
        let outer = t.face(1, 2).unwrap();
        assert!(outer.at_outer);
        assert_eq!(outer.levels, vec![1, 1, 2, 2]);
    }

    #[test]
    fn projection_is_idempotent() {
        let t = pants(2).with_interior();
        let p = t.unilevel_projection();
        assert!(p.is_unilevel());
        assert_eq!(p.unilevel_projection(), p);
        assert_eq!(p.annuli, t.annuli);
    }

    #[test]
    fn cylinder_enumeration() {
        let u = enumerate_types(0, 1, 1, Filter::Unilevel).unwrap();
        assert_eq!(u, vec![cylinder(false), cylinder(true)]);
        assert!(matches!(enumerate_types(0, 1, 2, Filter::All), Err(ParamError::Inconsistent { .. })));
    }

    #[test]
    fn helper_counts() {
        assert_eq!(matchings(4).len(), 3);
        assert_eq!(ordered_partitions(2).len(), 3);
        assert_eq!(ordered_partitions(3).len(), 13);
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn enumerators_agree_small() {
        for (h, n, m) in [(0, 1, 1), (1, 1, 2), (1, 2, 1)] {
            let a = enumerate_types(h, n, m, Filter::Nondegenerate).unwrap();
            let b = enumerate_nondegenerate_by_tuples(h, n, m).unwrap();
            assert_eq!(a, b, "({h},{n},{m})");
        }
    }
}
