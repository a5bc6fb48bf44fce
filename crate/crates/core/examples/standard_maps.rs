// Projective resolutions as complexes of string type, and the standard
// maps `P_M → P_N[1]` between them. Their number matches `dim Ext¹(M, N)`.

use annulus_gentle::field::Fp;
use annulus_gentle::fixtures;
use annulus_gentle::homalg::ext_dim;
use annulus_gentle::kcomplex::{band_complex, find_standard_maps, string_complex};
use annulus_gentle::representations::{band_module_of, string_module};
use annulus_gentle::strings::Word;

pub struct MapRow {
    pub m: String,
    pub n: String,
    pub kinds: Vec<String>,
    pub ext1: usize,
}

pub fn run_example() -> (Vec<String>, Vec<MapRow>) {
    let model = fixtures::kronecker();
    let pres = &model.pres;
    let f = Fp::default();
    let words: Vec<Word> = ["e_1", "e_2", "a", "ba-", "b-a"].iter().map(|s| Word::parse(pres, s).unwrap()).collect();
    let mut pictures = Vec::new();
    let mut windows = Vec::new();
    for w in &words {
        let win = string_complex(pres, w, 4, 1).unwrap();
        pictures.push(format!("{}\n{}", w.render(pres), win.ascii(pres)));
        windows.push((w.render(pres), win, string_module(pres, &f, w).unwrap()));
    }
    let band = model.band_of().word;
    let bw = band_complex(pres, &band, 2, 1).unwrap();
    pictures.push(format!("M(2,1)\n{}", bw.ascii(pres)));
    windows.push(("M(2,1)".into(), bw, band_module_of(&model, &f, &2, 1).unwrap()));

    let mut rows = Vec::new();
    for (lm, wm, rm) in &windows {
        for (ln, wn, rn) in &windows {
            let r = find_standard_maps(pres, &f, wm, wn).unwrap();
            rows.push(MapRow {
                m: lm.clone(),
                n: ln.clone(),
                kinds: r.witnesses.iter().map(|w| format!("{:?}", w.kind)).collect(),
                ext1: ext_dim(rm, rn, 1).unwrap(),
            });
        }
    }
    (pictures, rows)
}

#[allow(dead_code)]
fn main() {
    let (pictures, rows) = run_example();
    for p in &pictures {
        println!("{p}");
    }
    for r in rows.iter().filter(|r| r.ext1 > 0 || !r.kinds.is_empty()) {
        println!("P_{} -> P_{}[1]: {:?}  (Ext¹ = {})", r.m, r.n, r.kinds, r.ext1);
    }
}
