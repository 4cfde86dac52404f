//! Acceptance criteria AC1 to AC8. Prints one `[PASS]` or `[FAIL]` line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use msym::fibration::{run_suite, FibrationSuiteConfig};
use msym::genfun::{betti_sum_sym, closed_form_sym2, closed_form_sym3, Genus};
use msym::homology::{product, BettiVector, ChainComplexF2};
use msym::mcheck::{check, sweep, Verdict};
use msym::realmodels::{
    build_b, build_b_mobius_stage, build_half_surface, build_sym2_circle, build_sym3_circle, build_y, circle, disc,
    klein_bottle, point, projective_plane, real_sym2_decomposition, real_sym3_decomposition, three_torus, torus,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AC6_SAMPLES: usize = 10_000;
const AC6_ROUNDTRIP_TOL: f64 = 1e-9;
const AC6_FIBER_TOL: f64 = 1e-12;
const AC7_KUNNETH_PAIRS: usize = 20;

/// Smith pairs `(label, real, complex)` collected by every criterion.
type SmithLog = Vec<(String, BigUint, BigUint)>;

struct Outcome {
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { detail: String::new(), failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ac1(_: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    for g in 0..=30 {
        let g = Genus::new(g);
        let s2 = betti_sum_sym(g, 2);
        let s3 = betti_sum_sym(g, 3);
        o.expect(closed_form_sym2(g) == s2, || format!("g={g} n=2: closed form != {s2}"));
        match closed_form_sym3(g) {
            Ok(c) => o.expect(c == s3, || format!("g={g} n=3: closed form {c} != {s3}")),
            Err(e) => o.failures.push(format!("g={g}: {e}")),
        }
    }
    o.detail = "g = 0..30, n = 2, 3".into();
    o
}

fn ac2(log: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    for g in 0..=6u64 {
        let d = real_sym2_decomposition(Genus::new(g as u32));
        for p in &d.pieces {
            o.expect(p.complex.check_boundary_squared().is_ok(), || format!("g={g}: ∂∂ != 0 on {}", p.name));
        }
        let real = d.total_betti_sum();
        let expected = BigUint::from(3 + 3 * g + 2 * g * g);
        o.expect(real == expected, || format!("g={g}: CW sum {real} != {expected}"));
        log.push((format!("sym2 g={g}"), real, betti_sum_sym(Genus::new(g as u32), 2).into_inner()));
    }
    o.detail = "g = 0..6".into();
    o
}

fn ac3(log: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    for g in 1..=4u64 {
        let d = real_sym3_decomposition(Genus::new(g as u32));
        for p in &d.pieces {
            o.expect(p.complex.check_boundary_squared().is_ok(), || format!("g={g}: ∂∂ != 0 on {}", p.name));
        }
        let real = d.total_betti_sum();
        let numerator = 12 + 14 * g + 6 * g * g + 4 * g * g * g;
        o.expect(numerator % 3 == 0, || format!("g={g}: closed form not integral"));
        let expected = BigUint::from(numerator / 3);
        o.expect(real == expected, || format!("g={g}: CW sum {real} != {expected}"));
        log.push((format!("sym3 g={g}"), real, betti_sum_sym(Genus::new(g as u32), 3).into_inner()));
    }
    o.detail = "g = 1..4".into();
    o
}

fn ac4(_: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    for g in 1..=4usize {
        let b = build_b(Genus::new(g as u32));
        let betti = b.betti();
        o.expect(b.check_boundary_squared().is_ok(), || format!("g={g}: ∂∂ != 0"));
        o.expect(b.has_fundamental_class() && betti.get(3) == 1, || format!("g={g}: B not closed, {betti}"));
        o.expect(betti.is_palindromic(), || format!("g={g}: {betti} not palindromic"));
        o.expect(betti.get(1) == g + 1, || format!("g={g}: b1 = {}", betti.get(1)));
        o.expect(betti.sum() == 2 * (g + 2), || format!("g={g}: sum {}", betti.sum()));
        let stage = build_b_mobius_stage(Genus::new(g as u32)).betti();
        o.expect(stage.get(1) == g + 1, || format!("g={g}: intermediate b1 = {}", stage.get(1)));
    }
    o.detail = "g = 1..4".into();
    o
}

fn ac5(log: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for g in 0..=8u32 {
        let lo = (2 * g).saturating_sub(1);
        for n in lo..=2 * g + 6 {
            let expected = BigUint::from(4u32).pow(g) * BigUint::from(n + 1 - g);
            let sum = betti_sum_sym(Genus::new(g), n).into_inner();
            o.expect(sum == expected, || format!("g={g} n={n}: {sum} != {expected}"));
            match check(Genus::new(g), n) {
                Ok(r) => {
                    o.expect(r.verdict == Verdict::MVariety, || format!("g={g} n={n}: {}", r.verdict));
                    if let Some(real) = r.real_sum {
                        log.push((format!("large-n g={g} n={n}"), real.into_inner(), r.complex_sum.into_inner()));
                    }
                }
                Err(e) => o.failures.push(format!("g={g} n={n}: {e}")),
            }
            count += 1;
        }
    }
    o.detail = format!("{count} pairs");
    o
}

fn ac6(_: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    let r = run_suite(FibrationSuiteConfig {
        samples: AC6_SAMPLES,
        seed: 0,
        roundtrip_tol: AC6_ROUNDTRIP_TOL,
        fiber_tol: AC6_FIBER_TOL,
    });
    o.expect(r.max_roundtrip_error < AC6_ROUNDTRIP_TOL, || format!("round trip {:e}", r.max_roundtrip_error));
    o.expect(r.max_fiber_error < AC6_FIBER_TOL, || format!("fiber {:e}", r.max_fiber_error));
    o.expect(r.boundary_agreements == r.boundary_checks, || {
        format!("boundary {}/{}", r.boundary_agreements, r.boundary_checks)
    });
    o.expect(r.a1_meets_a2_prime == 1, || format!("|A1 ∩ A2'| = {}", r.a1_meets_a2_prime));
    o.expect(r.a1_meets_a1_prime == 2, || format!("|A1 ∩ A1'| = {}", r.a1_meets_a1_prime));
    o.detail = format!(
        "round trip {:.1e}, fiber {:.1e}, boundary {}/{}, |A1∩A2'| = {}, |A1∩A1'| = {}",
        r.max_roundtrip_error,
        r.max_fiber_error,
        r.boundary_agreements,
        r.boundary_checks,
        r.a1_meets_a2_prime,
        r.a1_meets_a1_prime
    );
    o
}

fn curated() -> Vec<(&'static str, ChainComplexF2)> {
    vec![
        ("point", point()),
        ("circle", circle()),
        ("disc", disc()),
        ("torus", torus()),
        ("klein", klein_bottle()),
        ("rp2", projective_plane()),
        ("mobius", build_sym2_circle()),
        ("solid torus", build_sym3_circle()),
        ("half g=2", build_half_surface(Genus::new(2)).complex),
        ("Y g=1", build_y(Genus::new(1))),
    ]
}

fn ac7(_: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    let oracle: [(&str, ChainComplexF2, &[usize]); 7] = [
        ("circle", circle(), &[1, 1]),
        ("torus", torus(), &[1, 2, 1]),
        ("klein", klein_bottle(), &[1, 2, 1]),
        ("rp2", projective_plane(), &[1, 1, 1]),
        ("mobius", build_sym2_circle(), &[1, 1, 0]),
        ("solid torus", build_sym3_circle(), &[1, 1, 0, 0]),
        ("3-torus", three_torus(), &[1, 3, 3, 1]),
    ];
    for (name, c, expected) in &oracle {
        let b = c.betti();
        o.expect(b == **expected, || format!("{name}: {b} != {expected:?}"));
        o.expect(c.check_boundary_squared().is_ok(), || format!("{name}: ∂∂ != 0"));
    }
    let models = curated();
    for (name, c) in &models {
        o.expect(c.check_boundary_squared().is_ok(), || format!("{name}: ∂∂ != 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..AC7_KUNNETH_PAIRS {
        let (na, a) = &models[rng.gen_range(0..models.len())];
        let (nb, b) = &models[rng.gen_range(0..models.len())];
        let p = product(a, b);
        let lhs = p.betti();
        let rhs: BettiVector = a.betti().convolve(&b.betti());
        o.expect(p.check_boundary_squared().is_ok(), || format!("{na}×{nb}: ∂∂ != 0"));
        o.expect(lhs == rhs, || format!("{na}×{nb}: {lhs} != {rhs}"));
    }
    o.detail = format!("{} oracle spaces, {AC7_KUNNETH_PAIRS} Künneth pairs", oracle.len());
    o
}

fn ac8(log: &mut SmithLog) -> Outcome {
    let mut o = Outcome::new();
    match sweep(8, 22, None) {
        Ok(rows) => {
            for r in rows {
                if let Some(real) = r.real_sum {
                    log.push((format!("sweep g={} n={}", r.g, r.n), real.into_inner(), r.complex_sum.into_inner()));
                }
            }
        }
        Err(e) => o.failures.push(format!("sweep: {e}")),
    }
    for (label, real, complex) in log.iter() {
        o.expect(real <= complex, || format!("{label}: real {real} > complex {complex}"));
    }
    o.detail = format!("{} reports", log.len());
    o
}

type Criterion = fn(&mut SmithLog) -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, &str, Criterion, Duration); 8] = [
        ("AC1", "closed forms for Sym^2 and Sym^3", ac1, secs(1)),
        ("AC2", "M-variety equality for n = 2 from CW models", ac2, secs(10)),
        ("AC3", "M-variety equality for n = 3 from CW models", ac3, secs(60)),
        ("AC4", "structure of B", ac4, secs(60)),
        ("AC5", "large-n regime", ac5, secs(5)),
        ("AC6", "fibration suite", ac6, secs(5)),
        ("AC7", "homology engine oracles", ac7, secs(60)),
        ("AC8", "Smith inequality across sweeps", ac8, secs(60)),
    ];
    let mut log = SmithLog::new();
    let mut failed = 0;
    for (id, title, run, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run(&mut log);
        let elapsed = start.elapsed();
        if elapsed > budget {
            outcome.failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] {id} {title}: {} ({elapsed:.2?} / {budget:?})", outcome.detail);
        for f in &outcome.failures {
            println!("       {f}");
        }
        failed += usize::from(!outcome.failures.is_empty());
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
