#[allow(dead_code)]
#[path = "../examples/boundary_cycles.rs"]
mod boundary_cycles;
#[allow(dead_code)]
#[path = "../examples/critical_graph.rs"]
mod critical_graph;
#[allow(dead_code)]
#[path = "../examples/cylinder.rs"]
mod cylinder;
#[allow(dead_code)]
#[path = "../examples/homology.rs"]
mod homology;
#[allow(dead_code)]
#[path = "../examples/jump_orbit.rs"]
mod jump_orbit;
#[allow(dead_code)]
#[path = "../examples/sullivan_bijection.rs"]
mod sullivan_bijection;
#[allow(dead_code)]
#[path = "../examples/zigzag.rs"]
mod zigzag;

#[test]
fn cylinder_has_two_cells() {
    let out = cylinder::run_example();
    assert!(out.contains("unilevel cells: 2"));
    assert!(out.contains("surface (0, 2)"));
}

#[test]
fn figure_eight_structures() {
    let out = boundary_cycles::run_example();
    assert!(out.contains("planar: cycles [[0, 2], [1], [3]], (genus, boundaries) = (0, 3)"));
    assert!(out.contains("twisted: cycles [[0, 3, 1, 2]], (genus, boundaries) = (1, 1)"));
    assert!(out.contains("Some(NotAForest([0, 1]))"));
}

#[test]
fn jump_orbit_shares_canonical_form() {
    let out = jump_orbit::run_example();
    assert!(out.contains("degenerate  false"));
    assert_eq!(out.matches("  orbit ").count(), 2);
}

#[test]
fn critical_graphs_are_lawful() {
    let out = critical_graph::run_example();
    assert!(out.contains("120 of 120 critical graphs"));
    assert_eq!(out.matches("surface (1, 2)").count(), 2);
}

#[test]
fn sullivan_round_trips() {
    let out = sullivan_bijection::run_example();
    for line in out.lines().filter(|l| l.starts_with("(g,n,m)")) {
        let nums: Vec<&str> = line.split(": ").nth(1).unwrap().split(' ').collect();
        assert_eq!(nums[0], nums[3]);
        assert_eq!(nums[0], nums[5]);
    }
}

#[test]
fn homology_tables_agree() {
    let out = homology::run_example();
    for line in out.lines().filter(|l| l.trim_start().starts_with("H_")) {
        let (sd, uni) = line.split_once(", unilevel ").unwrap();
        assert_eq!(sd.split("sd ").nth(1).unwrap(), uni);
    }
}

#[test]
fn zigzags_commute() {
    let out = zigzag::run_example();
    assert!(!out.contains("commutes false"));
    assert!(out.contains("commutes true"));
}
