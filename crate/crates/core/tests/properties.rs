mod common;

#[test]
fn group_laws() {
    common::group_laws(512).unwrap();
}

#[test]
fn section_cocycle() {
    common::section_cocycle(512).unwrap();
}

#[test]
fn fixer_subtree() {
    common::fixer_subtree(512).unwrap();
}

#[test]
fn mean_fixed_points() {
    common::mean_fixed_points(256).unwrap();
}

#[test]
fn riemann_hurwitz() {
    common::riemann_hurwitz(256).unwrap();
}

#[test]
fn chain_rule() {
    common::chain_rule(256).unwrap();
}
