//! Geometric predicates against the linear-algebra oracle.

use annulus_gentle::algebra::Model;
use annulus_gentle::field::Fp;
use annulus_gentle::homalg::Projectives;
use annulus_gentle::representations::string_module;
use annulus_gentle::surface::{enumerate_triangulations, parse_triangulation, AnnulusSurface, Triangulation};

fn fixture() -> Triangulation {
    parse_triangulation(include_str!("../fixtures/fixture-32.json")).unwrap()
}

fn check_three_cycles(tri: Triangulation, bound: i64) -> usize {
    let model = Model::new(tri);
    let f = Fp::default();
    let proj = Projectives::new(&model.pres, &f).unwrap();
    let arcs: Vec<_> =
        model.tri.surface.finite_arcs(bound, false).into_iter().filter(|a| !model.tri.contains(a)).collect();
    let mods: Vec<_> =
        arcs.iter().map(|a| string_module(&model.pres, &f, &model.word_of(a).unwrap()).unwrap()).collect();
    let mut checked = 0;
    for i in 0..arcs.len() {
        for j in i..arcs.len() {
            let geo = model.tri.crossings_in_3cycles_only(&arcs[i], &arcs[j]);
            let alg = proj.ext1(&mods[i], &mods[j]) == 0 && proj.ext1(&mods[j], &mods[i]) == 0;
            assert_eq!(geo, alg, "{} vs {}", arcs[i], arcs[j]);
            checked += 1;
        }
    }
    checked
}

#[test]
fn three_cycle_crossings_match_ext_on_fixture() {
    assert!(check_three_cycles(fixture(), 1) > 50);
}

#[test]
fn three_cycle_crossings_match_ext_on_small_annuli() {
    for (p, q) in [(1, 1), (2, 1), (2, 2)] {
        let s = AnnulusSurface::new(p, q).unwrap();
        for t in enumerate_triangulations(&s, 1).into_iter().take(6) {
            check_three_cycles(t, 1);
        }
    }
}
