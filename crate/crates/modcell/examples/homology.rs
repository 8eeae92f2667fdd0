//! Cellular homology of the Sullivan-diagram and unilevel complexes.

use std::fmt::Write;

use modcell::homology::build_complex;
use modcell::radial::{enumerate_types, Filter};
use modcell::sullivan::enumerate_diagrams;

pub fn run_example() -> String {
    let mut out = String::new();
    for (g, n, m) in [(0, 1, 1), (0, 1, 2), (0, 2, 1), (1, 1, 1)] {
        let h = 2 * g + n + m - 2;
        let sd = build_complex(&enumerate_diagrams(g, n, m).expect("family")).expect("face closed");
        let uni = build_complex(&enumerate_types(h, n, m, Filter::Unilevel).expect("family")).expect("face closed");
        writeln!(out, "(g,n,m) = ({g},{n},{m})  cells {:?}  euler {}", sd.cell_counts(), sd.euler_characteristic())
            .unwrap();
        let hs = sd.homology().expect("d^2 = 0");
        let hu = uni.homology().expect("d^2 = 0");
        for (k, (a, b)) in hs.iter().zip(&hu).enumerate() {
            writeln!(out, "  H_{k}: sd {a}, unilevel {b}").unwrap();
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
