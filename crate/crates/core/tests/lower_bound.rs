use mwc_core::graph::is_multiway_cut;
use mwc_core::instances::{generate_gn, verify_gn};
use mwc_core::relaxation::{align_embedding, volume};
use mwc_core::schemes::{round_embedding, SchemeConfig};
use mwc_core::{Rational, RngState, Scalar};

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

#[test]
fn figure_instance() {
    let rep = verify_gn(7).unwrap();
    assert_eq!(rep.volume, int(78));
    assert_eq!(rep.min_cut, int(84));
    assert_eq!(rep.ratio, Rational::new(14, 13));
}

#[test]
fn ratios_increase_toward_twelve_elevenths() {
    let mut prev = Rational::from_integer(0);
    for n in 1..=8 {
        let rep = verify_gn(n).unwrap();
        assert_eq!(rep.min_cut, int(12 * n));
        assert!(rep.ratio > prev);
        assert!(rep.ratio < Rational::new(12, 11));
        prev = rep.ratio;
    }
}

#[test]
fn largest_instance() {
    let rep = verify_gn(30).unwrap();
    assert_eq!(rep.volume, int(331));
    assert_eq!(rep.min_cut, int(360));
    assert!((Rational::new(12, 11) - rep.ratio).to_f64() < 0.015);
}

#[test]
fn canonical_embedding_volume_is_exact() {
    for n in [1, 2, 5] {
        let inst = generate_gn(n).unwrap();
        assert_eq!(volume(&inst.graph, &inst.embedding).unwrap(), int(11 * n + 1));
    }
}

#[test]
fn ball_corner_rounding_finds_the_optimum_on_g7() {
    let inst = generate_gn(7).unwrap();
    let g = inst.graph.to_f64();
    let aligned = align_embedding(&g, &inst.embedding.to_f64()).unwrap();
    let (lab, cost) = round_embedding(&SchemeConfig::ball_corner(), &aligned, &mut RngState::new(1, 0), 10_000).unwrap();
    assert_eq!(cost, 84.0);
    assert!(is_multiway_cut(&g, &lab.cut_edges(&g)).unwrap());
}
