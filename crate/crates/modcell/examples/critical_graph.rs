//! Critical, unfolded and partially unfolded graphs of a type with a stack.

use std::fmt::Write;

use modcell::critical::{corner_family, critical_graph, partial_graph, unfolded_graph, UnfoldingVector};
use modcell::radial::{enumerate_types, Annulus, CombinatorialType, Filter};

pub fn run_example() -> String {
    let mut out = String::new();
    let t = CombinatorialType {
        h: 2,
        m: 1,
        annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0, 2], vec![1], vec![4], vec![3]] }],
        pairing: vec![1, 0, 3, 2],
        levels: vec![1, 1, 2, 2],
        at_inner: false,
        at_outer: false,
    };
    let folded = critical_graph(&t).expect("critical graph");
    let unfolded = unfolded_graph(&t).expect("unfolded graph");
    for (name, g) in [("critical", &folded), ("unfolded", &unfolded)] {
        writeln!(
            out,
            "{name}: {} vertices, {} edges, surface {:?}, admissible {}",
            g.vertex_count(),
            g.edge_count(),
            g.surface_type().expect("connected"),
            g.is_admissible().expect("closed"),
        )
        .unwrap();
    }
    for u in UnfoldingVector::corners(&t) {
        let g = partial_graph(&t, &u).expect("corner graph");
        writeln!(out, "corner {:?}: {} edges", u.bits, g.edge_count()).unwrap();
    }
    writeln!(out, "corner family size {}", corner_family(&t).expect("family").len()).unwrap();
    let family = enumerate_types(2, 1, 1, Filter::Nondegenerate).expect("family");
    let lawful = family.iter().filter(|t| critical_graph(t).is_ok_and(|g| g.surface_type() == Ok((1, 2)))).count();
    writeln!(out, "(h,n,m) = (2,1,1): {lawful} of {} critical graphs are tori with two boundaries", family.len())
        .unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
