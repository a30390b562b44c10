#![allow(dead_code)]

mod steinberg_dims {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/steinberg_dims.rs"));
}
mod lusztig_complexes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lusztig_complexes.rs"));
}
mod derived_limits {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/derived_limits.rs"));
}
mod resolutions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/resolutions.rs"));
}
mod ext_and_bridge {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ext_and_bridge.rs"));
}
mod steenrod_squares {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/steenrod_squares.rs"));
}
mod finite_part {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/finite_part.rs"));
}
mod steinberg_dual {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/steinberg_dual.rs"));
}

#[test]
fn steinberg_dims_example_runs() {
    assert_eq!(steinberg_dims::run_example().expect("steinberg_dims"), vec![1, 1, 2, 8, 64]);
}

#[test]
fn lusztig_complexes_example_runs() {
    assert_eq!(lusztig_complexes::run_example().expect("lusztig_complexes"), 8);
}

#[test]
fn derived_limits_example_runs() {
    assert_eq!(derived_limits::run_example().expect("derived_limits"), vec![0, 2]);
}

#[test]
fn resolutions_example_runs() {
    assert_eq!(resolutions::run_example().expect("resolutions"), 11);
}

#[test]
fn ext_and_bridge_example_runs() {
    assert_eq!(ext_and_bridge::run_example().expect("ext_and_bridge"), 5);
}

#[test]
fn steenrod_squares_example_runs() {
    assert!(steenrod_squares::run_example().expect("steenrod_squares") > 0);
}

#[test]
fn finite_part_example_runs() {
    assert_eq!(finite_part::run_example().expect("finite_part"), vec![2, 4, 3, 2, 1, 0, 0, 0, 0]);
}

#[test]
fn steinberg_dual_example_runs() {
    assert_eq!(steinberg_dual::run_example().expect("steinberg_dual"), 4);
}
