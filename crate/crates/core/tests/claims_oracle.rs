use braidcov_core::covering::psi;
use braidcov_core::enumeration::materialize;
use braidcov_core::oracles::sphere_action;
use braidcov_core::presentations::van_buskirk;
use braidcov_core::rewriting::paper_claims;

#[test]
fn claims_hold_in_the_order_16_group() {
    let t = materialize(&van_buskirk(2).unwrap(), 1000).unwrap();
    for c in paper_claims(2) {
        assert_eq!(t.element_of(&c.from), t.element_of(&c.to), "{}", c.label);
    }
}

#[test]
fn claims_hold_on_the_double_cover() {
    for n in 3..=4u32 {
        for c in paper_claims(n) {
            let w = psi(n, &c.from.concat(&c.to.invert())).unwrap().free_reduce();
            assert!(w.permutation_image(2 * n).unwrap().is_identity(), "n={n} {}", c.label);
            assert!(sphere_action(2 * n, &w).unwrap().is_inner(), "n={n} {}", c.label);
        }
    }
}
