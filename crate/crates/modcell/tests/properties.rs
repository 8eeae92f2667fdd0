use std::sync::OnceLock;

use modcell::critical::critical_graph;
use modcell::graph::{FatGraph, Leaf};
use modcell::homology::{build_complex, mat_mul, smith_normal_form, ChainComplex};
use modcell::radial::{enumerate_types, CombinatorialType, Filter};
use modcell::sullivan::{enumerate_diagrams, from_admissible, SullivanDiagram};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::Index;

fn nondegenerate() -> &'static [CombinatorialType] {
    static CELLS: OnceLock<Vec<CombinatorialType>> = OnceLock::new();
    CELLS.get_or_init(|| {
        let mut v = enumerate_types(2, 1, 1, Filter::Nondegenerate).expect("family");
        v.extend(enumerate_types(1, 2, 1, Filter::Nondegenerate).expect("family"));
        v
    })
}

fn diagrams() -> &'static [SullivanDiagram] {
    static CELLS: OnceLock<Vec<SullivanDiagram>> = OnceLock::new();
    CELLS.get_or_init(|| {
        let mut v = enumerate_diagrams(1, 1, 1).expect("family");
        v.extend(enumerate_diagrams(0, 1, 2).expect("family"));
        v
    })
}

fn complex() -> &'static ChainComplex {
    static C: OnceLock<ChainComplex> = OnceLock::new();
    C.get_or_init(|| build_complex(&enumerate_diagrams(0, 1, 2).expect("family")).expect("face closed"))
}

/// Relabels half edges by `halves` and vertices by `verts`.
fn relabel(g: &FatGraph, halves: &[usize], verts: &[usize]) -> FatGraph {
    let k = g.half_edge_count();
    let (mut source, mut pairing, mut sigma) = (vec![0; k], vec![0; k], vec![0; k]);
    for h in 0..k {
        source[halves[h]] = verts[g.source()[h]];
        pairing[halves[h]] = halves[g.pairing()[h]];
        sigma[halves[h]] = halves[g.sigma()[h]];
    }
    let leaves = g.leaves().iter().map(|l| Leaf { vertex: verts[l.vertex], ..*l }).collect();
    FatGraph::new(source, pairing, sigma, leaves).expect("relabelled graph")
}

fn shuffled(n: usize, seed: &[Index]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for (i, s) in seed.iter().enumerate().take(n) {
        let j = i + s.index(n - i);
        p.swap(i, j);
    }
    p
}

fn big_matrix(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_ignores_cell_order(seed in prop::collection::vec(any::<Index>(), 16)) {
        let c = complex();
        let perms: Vec<Vec<usize>> = c.cells.iter().map(|cs| shuffled(cs.len(), &seed)).collect();
        prop_assert_eq!(c.permuted(&perms).homology().unwrap(), c.homology().unwrap());
    }

    #[test]
    fn canonical_label_ignores_numbering(pick in any::<Index>(), seed in prop::collection::vec(any::<Index>(), 64)) {
        let t = pick.get(nondegenerate());
        let g = critical_graph(t).unwrap();
        let halves = shuffled(g.half_edge_count(), &seed);
        let verts = shuffled(g.vertex_count(), &seed[seed.len() / 2..]);
        prop_assert_eq!(relabel(&g, &halves, &verts).canonical_label(), g.canonical_label());
    }

    #[test]
    fn collapse_keeps_surface(pick in any::<Index>(), order in prop::collection::vec(any::<Index>(), 32)) {
        let g = critical_graph(pick.get(nondegenerate())).unwrap();
        let leafy: Vec<usize> = g.leaves().iter().map(|l| l.vertex).collect();
        let edges = g.edges();
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn root(p: &[usize], mut x: usize) -> usize {
            while p[x] != x { x = p[x]; }
            x
        }
        let mut forest = Vec::new();
        for e in shuffled(edges.len(), &order) {
            let (u, v) = (g.source()[edges[e].0], g.source()[edges[e].1]);
            if leafy.contains(&u) || leafy.contains(&v) {
                continue;
            }
            let (ru, rv) = (root(&parent, u), root(&parent, v));
            if ru != rv && forest.len() < order.len() / 4 {
                parent[ru] = rv;
                forest.push(e);
            }
        }
        let collapsed = g.collapse_forest(&forest).unwrap();
        prop_assert_eq!(collapsed.surface_type(), g.surface_type());
        prop_assert_eq!(collapsed.boundary_cycles().len(), g.boundary_cycles().len());
    }

    #[test]
    fn smith_form_factors_the_matrix(m in matrix()) {
        let a = big_matrix(&m);
        let s = smith_normal_form(&a);
        let product = mat_mul(&mat_mul(&s.left, &a), &s.right);
        for (i, row) in product.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { s.diagonal.get(i).cloned().unwrap_or_default() } else { BigInt::zero() };
                prop_assert_eq!(x, &want);
            }
        }
        let nonzero: Vec<&BigInt> = s.diagonal.iter().filter(|d| !d.is_zero()).collect();
        for w in nonzero.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero());
        }
    }

    #[test]
    fn diagram_of_graph_is_slide_invariant(pick in any::<Index>(), walk in prop::collection::vec(any::<Index>(), 6)) {
        let d = pick.get(diagrams()).clone();
        let mut cur = d.clone();
        for step in &walk {
            let nbs = cur.slide_neighbors();
            if nbs.is_empty() {
                break;
            }
            cur = step.get(&nbs).clone();
        }
        prop_assert_eq!(cur.canonical(), d.clone());
        let g = cur.induced_graph().unwrap();
        prop_assert_eq!(from_admissible(&g).unwrap(), d);
    }

    #[test]
    fn canonical_type_ignores_slit_names(pick in any::<Index>()) {
        let t = pick.get(nondegenerate());
        prop_assert_eq!(t.relabel().canonicalize(), t.canonicalize());
        for member in t.jump_orbit() {
            prop_assert_eq!(member.canonicalize(), t.canonicalize());
        }
    }
}
