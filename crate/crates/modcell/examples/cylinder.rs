//! The cylinder: one annulus, one parametrization point, no slits.

use std::fmt::Write;

use modcell::critical::critical_graph;
use modcell::radial::{enumerate_types, Annulus, CombinatorialType, Filter};

fn cylinder(on_real_line: bool) -> CombinatorialType {
    CombinatorialType {
        h: 0,
        m: 1,
        annuli: vec![Annulus { on_real_line, positions: vec![vec![0]] }],
        pairing: vec![],
        levels: vec![],
        at_inner: false,
        at_outer: false,
    }
}

pub fn run_example() -> String {
    let mut out = String::new();
    for on_line in [false, true] {
        let t = cylinder(on_line);
        t.validate().expect("cylinder is a valid type");
        let g = critical_graph(&t).expect("critical graph");
        writeln!(
            out,
            "{}  multi-degree {:?}  surface {:?}  admissible {}",
            t.to_compact(),
            t.multi_degree(),
            g.surface_type().expect("connected"),
            g.is_admissible().expect("closed"),
        )
        .unwrap();
    }
    let cells = enumerate_types(0, 1, 1, Filter::Unilevel).expect("family");
    writeln!(out, "unilevel cells: {}", cells.len()).unwrap();
    write!(out, "{}", critical_graph(&cylinder(false)).expect("critical graph").to_dot()).unwrap();
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
