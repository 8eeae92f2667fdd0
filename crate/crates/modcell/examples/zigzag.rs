//! Chamber collapses seen on critical graphs.

use std::fmt::Write;

use modcell::critical::{annular_collapse_at, radial_collapse_zigzag_at};
use modcell::radial::{enumerate_types, Filter};

pub fn run_example() -> String {
    let mut out = String::new();
    let family = enumerate_types(2, 1, 1, Filter::Nondegenerate).expect("family");
    let t = family.iter().find(|t| t.multi_degree().annular >= 2).expect("type with an interior chamber");
    writeln!(out, "type {}  multi-degree {:?}", t.to_compact(), t.multi_degree()).unwrap();
    for (axis, j, face) in t.faces() {
        if face.is_degenerate() {
            writeln!(out, "  face ({axis},{j}) degenerate").unwrap();
            continue;
        }
        if axis < t.n() {
            let z = radial_collapse_zigzag_at(t, axis, j).expect("zigzag");
            writeln!(
                out,
                "  radial ({axis},{j}) forests {:?} / {:?}  commutes {}",
                z.source_forest,
                z.target_forest,
                z.commutes()
            )
            .unwrap();
        } else {
            let a = annular_collapse_at(t, &[j]).expect("collapse");
            writeln!(out, "  annular ({axis},{j}) forest {:?}  commutes {}", a.forest, a.commutes()).unwrap();
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
