//! Slit jumps, canonical representatives and degeneracy.

use std::fmt::Write;

use modcell::radial::{Annulus, CombinatorialType};

pub fn run_example() -> String {
    let mut out = String::new();
    // slit 0 sits just below slit 2 on a shared segment
    let t = CombinatorialType {
        h: 2,
        m: 1,
        annuli: vec![Annulus { on_real_line: false, positions: vec![vec![0, 2], vec![1], vec![4], vec![3]] }],
        pairing: vec![1, 0, 3, 2],
        levels: vec![1, 1, 2, 2],
        at_inner: false,
        at_outer: false,
    };
    t.validate().expect("valid type");
    writeln!(out, "type        {}", t.to_compact()).unwrap();
    for member in t.jump_orbit() {
        writeln!(out, "  orbit     {}", member.to_compact()).unwrap();
    }
    writeln!(out, "canonical   {}", t.canonicalize().to_compact()).unwrap();
    writeln!(out, "degenerate  {}", t.is_degenerate()).unwrap();
    for (axis, j, face) in t.faces() {
        writeln!(out, "  face ({axis},{j}) {}  degenerate {}", face.to_compact(), face.is_degenerate()).unwrap();
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
