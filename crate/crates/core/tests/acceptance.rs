//! One line per acceptance criterion, always printed. Exits non-zero if any
//! criterion fails; a partial verdict carries its notes and does not fail.

use std::process::ExitCode;
use std::time::Instant;

use annulus_gentle::field::Fp;
use annulus_gentle::suites::{run_suite, SuiteConfig, Verdict, SUITES};

fn main() -> ExitCode {
    let field = Fp::default();
    let cfg = SuiteConfig::default();
    let (mut failed, mut partial) = (0, 0);
    println!("\nrunning {} acceptance criteria over F_7", SUITES.len());
    for (id, _) in SUITES {
        let t = Instant::now();
        match run_suite(id, &field, &cfg) {
            Ok(r) => {
                let line = r.line();
                let (head, rest) = line.split_once('\n').unwrap_or((&line, ""));
                println!("{head}  ({:.1}s)", t.elapsed().as_secs_f64());
                if !rest.is_empty() {
                    println!("{rest}");
                }
                match r.verdict {
                    Verdict::Fail => failed += 1,
                    Verdict::Partial => partial += 1,
                    Verdict::Pass => {}
                }
            }
            Err(e) => {
                println!("{id} FAIL error: {e}");
                failed += 1;
            }
        }
    }
    println!("acceptance: {failed} failed, {partial} partial, {} total\n", SUITES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
