//! Sullivan diagrams and unilevel slit types name the same cells.

use std::fmt::Write;

use modcell::radial::{enumerate_types, Filter};
use modcell::sullivan::{enumerate_diagrams, f_map, g_map, Circle, End, SullivanDiagram};

pub fn run_example() -> String {
    let mut out = String::new();
    let pants = SullivanDiagram {
        circles: vec![Circle {
            at_basepoint: false,
            sites: vec![vec![End::Chord(0)], vec![End::Leaf(0)], vec![End::Chord(0)], vec![End::Leaf(1)]],
        }],
        chords: 1,
        leaves: 2,
    };
    pants.validate().expect("valid diagram");
    let t = g_map(&pants).expect("unilevel type");
    writeln!(out, "diagram {}  type {:?}", pants.to_compact(), pants.topological_type().expect("connected")).unwrap();
    writeln!(out, "g_map   {}", t.to_compact()).unwrap();
    writeln!(out, "f_map   {}", f_map(&t).expect("diagram").to_compact()).unwrap();
    writeln!(out, "{}", pants.to_json()).unwrap();
    for (g, n, m) in [(0, 1, 1), (0, 1, 2), (0, 2, 1), (1, 1, 1)] {
        let h = 2 * g + n + m - 2;
        let types = enumerate_types(h, n, m, Filter::Unilevel).expect("family");
        let diagrams = enumerate_diagrams(g, n, m).expect("family");
        let round_trips = diagrams.iter().filter(|d| g_map(d).and_then(|t| f_map(&t)).as_ref() == Ok(d)).count();
        writeln!(
            out,
            "(g,n,m) = ({g},{n},{m}): {} unilevel types, {} diagrams, {round_trips} round trips",
            types.len(),
            diagrams.len(),
        )
        .unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
