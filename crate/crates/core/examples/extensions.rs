// Extensions between string modules found combinatorially and compared
// with `dim Ext¹` computed by linear algebra over F₇.

use annulus_gentle::extensions::find_extensions;
use annulus_gentle::field::Fp;
use annulus_gentle::fixtures;
use annulus_gentle::homalg::ext_dim;
use annulus_gentle::representations::string_module;
use annulus_gentle::strings::Word;

pub struct ExtRow {
    pub sub: String,
    pub quotient: String,
    pub witnesses: Vec<String>,
    pub ext1: usize,
}

pub fn run_example() -> Vec<ExtRow> {
    let m = fixtures::kronecker();
    let f = Fp::default();
    let words: Vec<Word> =
        ["e_1", "e_2", "a", "b", "ba-", "b-a"].iter().map(|s| Word::parse(&m.pres, s).unwrap()).collect();
    let mut rows = Vec::new();
    for x in &words {
        for y in &words {
            // Ext¹(x, y) is spanned by sequences 0 → y → E → x → 0.
            let ws = find_extensions(&m.pres, y, x, None).unwrap();
            let mx = string_module(&m.pres, &f, x).unwrap();
            let my = string_module(&m.pres, &f, y).unwrap();
            rows.push(ExtRow {
                sub: y.render(&m.pres),
                quotient: x.render(&m.pres),
                witnesses: ws.iter().map(|w| w.describe(&m.pres)).collect(),
                ext1: ext_dim(&mx, &my, 1).unwrap(),
            });
        }
    }
    rows
}

#[allow(dead_code)]
fn main() {
    for r in run_example().iter().filter(|r| r.ext1 > 0) {
        println!("Ext¹({}, {}) = {}", r.quotient, r.sub, r.ext1);
        for w in &r.witnesses {
            println!("    {w}");
        }
    }
}
