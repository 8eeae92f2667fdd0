//! Boundary cycles, surface type and forest collapse on small fat graphs.

use std::fmt::Write;

use modcell::graph::FatGraph;

pub fn run_example() -> String {
    let mut out = String::new();
    // one vertex, loops a = (0 1) and b = (2 3)
    for (name, sigma) in [("planar", vec![1, 2, 3, 0]), ("twisted", vec![2, 3, 1, 0])] {
        let g = FatGraph::new(vec![0; 4], vec![1, 0, 3, 2], sigma, vec![]).expect("valid graph");
        writeln!(
            out,
            "figure eight, {name}: cycles {:?}, (genus, boundaries) = {:?}",
            g.boundary_cycles(),
            g.surface_type().expect("connected"),
        )
        .unwrap();
    }
    let theta =
        FatGraph::from_rotations(&[vec![0, 2, 4], vec![5, 3, 1]], vec![1, 0, 3, 2, 5, 4], vec![]).expect("valid graph");
    let collapsed = theta.collapse_forest(&[0]).expect("single edge is a forest");
    writeln!(
        out,
        "theta: {} cycles; after collapsing one edge: {} vertex, {} cycles",
        theta.boundary_cycles().len(),
        collapsed.vertex_count(),
        collapsed.boundary_cycles().len(),
    )
    .unwrap();
    writeln!(out, "collapsing two parallel edges: {:?}", theta.collapse_forest(&[0, 1]).err()).unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
