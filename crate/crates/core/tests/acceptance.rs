//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use powersum::verify::{self, VerificationOutcome};

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> powersum::Result<Vec<VerificationOutcome>>,
}

fn c1() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_even_power(&[2, 3, 4, 5, 6, 7, 8], None, &[0.5, 1.0, 2.0], 1000, 1)
}

fn c2() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_even_power_sharpness(&[2, 3, 4, 5, 6, 7, 8], &[0.5, 1.0, 2.0], 1000, 2)
}

fn c3() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_regimes(&[3, 4, 5, 6], &[0.8, 1.0, 1.25], None, 1e-10)
}

fn c4() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_triangle_sharp(&[0.5, 1.0, 1.5, 4.0, 5.0, 7.0, 2.5, 3.0, 3.5, -0.5, -1.0, -3.0])
}

fn c5() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_triangle_random(1000, &verify::TRIANGLE_LAMBDAS, 5)
}

fn c6() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_inverse_square(&[3, 4, 5, 6, 7, 8], 1000, 6)
}

fn c7() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_exp_sum_roots(10_000, 6, 7)
}

fn c8() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_derivative_loci(&[3, 4, 5], &[1.0, 1.3], None)
}

fn c9() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_two_chord(1000)
}

fn c10() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_derivative(1000, 10)
}

fn c11() -> powersum::Result<Vec<VerificationOutcome>> {
    verify::check_minmax(&[-1.0, 1.0, 3.0], 8, 11)
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "even-power constancy", budget: Some(Duration::from_secs(10)), run: c1 },
    Criterion { id: 2, name: "non-constancy at k = n", budget: None, run: c2 },
    Criterion { id: 3, name: "regime agreement", budget: Some(Duration::from_secs(60)), run: c3 },
    Criterion { id: 4, name: "sharp values at the equilateral triangle", budget: None, run: c4 },
    Criterion { id: 5, name: "bound direction on random triangles", budget: None, run: c5 },
    Criterion { id: 6, name: "inverse-square bound", budget: None, run: c6 },
    Criterion { id: 7, name: "exponential-sum root count", budget: None, run: c7 },
    Criterion { id: 8, name: "derivative sign-change loci", budget: None, run: c8 },
    Criterion { id: 9, name: "two-chord lower bound", budget: None, run: c9 },
    Criterion { id: 10, name: "derivative vs finite differences", budget: None, run: c10 },
    Criterion { id: 11, name: "min-max configuration search", budget: None, run: c11 },
];

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let label = format!("criterion {:>2} ({})", c.id, c.name);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, note) = match &result {
            Ok(outs) => {
                let bad: Vec<&VerificationOutcome> = outs.iter().filter(|o| !o.passed).collect();
                let in_budget = c.budget.map_or(true, |b| elapsed <= b);
                let mut note = format!("{}/{} cases", outs.len() - bad.len(), outs.len());
                if !in_budget {
                    note.push_str(&format!(", over budget {:?}", c.budget.unwrap()));
                }
                for b in &bad {
                    note.push_str(&format!("\n    failed: {} observed={:e} {}", b.check, b.observed, b.detail));
                }
                (bad.is_empty() && in_budget, note)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "{} {label}: {note} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
