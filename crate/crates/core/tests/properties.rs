//! Invariants checked on random inputs drawn from both fixtures.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use annulus_gentle::algebra::Model;
use annulus_gentle::cli::main_with;
use annulus_gentle::cosilting::{complete_partial, family_of, partial_rng, random_partial, ScalarSet};
use annulus_gentle::extensions::find_extensions;
use annulus_gentle::field::Fp;
use annulus_gentle::fixtures;
use annulus_gentle::homalg::ext_dim;
use annulus_gentle::kcomplex::{check_band_window, check_string_window, find_standard_maps, string_complex};
use annulus_gentle::representations::string_module;
use annulus_gentle::strings::{enumerate_strings, ArcString, Word};
use proptest::prelude::*;

struct Fixture {
    model: Model,
    words: Vec<Word>,
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        fixtures::all()
            .into_iter()
            .map(|(_, model)| {
                let words = enumerate_strings(&model.pres, 6).into_iter().filter(|w| w.is_finite()).collect();
                Fixture { model, words }
            })
            .collect()
    })
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..2usize, any::<prop::sample::Index>()).prop_map(move |(k, ix)| {
        let ws = &fixtures()[k].words;
        let short: Vec<usize> = (0..ws.len()).filter(|&i| ws[i].len() <= max_len).collect();
        (k, short[ix.index(short.len())])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_round_trip_through_text((k, i) in word_strategy(6)) {
        let fx = &fixtures()[k];
        let w = &fx.words[i];
        prop_assert_eq!(&Word::parse(&fx.model.pres, &w.render(&fx.model.pres)).unwrap(), w);
        prop_assert!(fx.model.same_module(w, &w.inverse(&fx.model.pres)));
    }

    #[test]
    fn strings_come_from_arcs_and_back((k, i) in word_strategy(6)) {
        let fx = &fixtures()[k];
        let w = &fx.words[i];
        let arc = fx.model.arc_of_string(w).unwrap();
        match fx.model.string_of_arc(&arc).unwrap() {
            ArcString::Word(back) => prop_assert!(fx.model.same_module(w, &back), "{}", arc),
            ArcString::InTriangulation(_) => prop_assert!(false, "{} lies in the triangulation", arc),
        }
    }

    #[test]
    fn string_complexes_resolve((k, i) in word_strategy(5), depth in 2usize..5) {
        let fx = &fixtures()[k];
        prop_assert!(check_string_window(&fx.model.pres, &Fp::default(), &fx.words[i], depth).unwrap());
    }

    #[test]
    fn band_complexes_resolve(k in 0..2usize, lambda in 1i64..7, n in 1usize..4) {
        let m = &fixtures()[k].model;
        prop_assert!(check_band_window(&m.pres, &Fp::default(), &m.band_of().word, lambda, n).unwrap());
    }

    #[test]
    fn extension_witnesses_count_ext((k, i) in word_strategy(5), j in any::<prop::sample::Index>()) {
        let fx = &fixtures()[k];
        let (f, pres) = (Fp::default(), &fx.model.pres);
        let short: Vec<&Word> = fx.words.iter().filter(|w| w.len() <= 5).collect();
        let (x, y) = (&fx.words[i], short[j.index(short.len())]);
        let ws = find_extensions(pres, y, x, None).unwrap();
        let e = ext_dim(&string_module(pres, &f, x).unwrap(), &string_module(pres, &f, y).unwrap(), 1).unwrap();
        prop_assert_eq!(ws.len(), e);
    }

    #[test]
    fn standard_maps_count_ext((k, i) in word_strategy(4), j in any::<prop::sample::Index>()) {
        let fx = &fixtures()[k];
        let (f, pres) = (Fp::default(), &fx.model.pres);
        let short: Vec<&Word> = fx.words.iter().filter(|w| w.len() <= 4).collect();
        let (x, y) = (&fx.words[i], short[j.index(short.len())]);
        let r = find_standard_maps(pres, &f, &string_complex(pres, x, 4, 1).unwrap(), &string_complex(pres, y, 4, 1).unwrap()).unwrap();
        let e = ext_dim(&string_module(pres, &f, x).unwrap(), &string_module(pres, &f, y).unwrap(), 1).unwrap();
        prop_assert_eq!(r.witnesses.len(), e);
        prop_assert_eq!(r.hom_dim, e);
    }

    #[test]
    fn completion_keeps_the_annihilator(k in 0..2usize, seed in any::<u64>()) {
        let m = &fixtures()[k].model;
        let partial = random_partial(m, 2, &mut partial_rng(seed));
        let full = complete_partial(m, &partial, 2).unwrap();
        let given: BTreeSet<_> = partial.arcs.iter().collect();
        prop_assert!(given.iter().all(|a| full.t.arcs.contains(a)));
        prop_assert_eq!(family_of(m, &partial).unwrap().annihilator, family_of(m, &full.t).unwrap().annihilator);
    }

    #[test]
    fn scalar_set_complements(xs in prop::collection::btree_set(-5i64..6, 0..4), cof in any::<bool>(), probe in -6i64..7) {
        let s = if cof { ScalarSet::Cofinite(xs) } else { ScalarSet::Finite(xs) };
        let c = s.complement();
        prop_assert_eq!(&c.complement(), &s);
        prop_assert!(s.is_disjoint(&c));
        if probe != 0 {
            prop_assert!(s.contains(probe) != c.contains(probe));
        } else {
            prop_assert!(!s.contains(0) && !c.contains(0));
        }
        if let Some(r) = s.representative() {
            prop_assert!(s.contains(r) || r == 0);
        }
    }

    #[test]
    fn cli_is_deterministic(outer in -3i64..4, inner in -3i64..4, fx in prop::sample::select(vec!["fixture-11", "fixture-32"])) {
        let arc = format!(r#"{{"type":"bridging","outer":{outer},"inner":{inner}}}"#);
        let args = ["annulus", "string", fx, arc.as_str(), "--format", "json", "--depth", "3"];
        let a = main_with(args);
        let b = main_with(args);
        prop_assert_eq!(a.code, b.code);
        prop_assert_eq!(a.stdout, b.stdout);
    }
}
