//! Coordinate tables of the full cubic groupoids and scaleoids against the
//! printed tables. Rows that disagree with the printed ones are flagged with the
//! ledger entry that records the correction.

mod common;

use common::{degree_of_copy_of_copy, edge_outcomes, vertex_outcomes};

#[test]
fn vertex_tables() {
    let out = vertex_outcomes();
    for o in &out {
        println!("{}", o.line());
    }
    assert!(out.iter().all(|o| o.ok));
}

#[test]
fn edge_projection_tables() {
    let out = edge_outcomes();
    for o in &out {
        println!("{}", o.line());
    }
    assert!(out.iter().all(|o| o.ok));
    let flagged: Vec<&str> = out.iter().filter_map(|o| o.deviation).collect();
    assert_eq!(flagged, vec!["L4", "L5", "L6", "L3"]);
}

#[test]
fn copy_of_copy_has_degree_five() {
    assert_eq!(degree_of_copy_of_copy(), 5);
}
