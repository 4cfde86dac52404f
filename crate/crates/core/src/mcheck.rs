//! Compares the mod-2 Betti sum of `Sym^n(X)` with that of its real locus
//! and decides whether the Smith inequality is an equality.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genfun::{betti_sum_large_n, betti_sum_sym, closed_form_sym2, closed_form_sym3, BettiSum, GenfunError, Genus};
use crate::realmodels::{real_decomposition, PieceBetti, RealLocusDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    MVariety,
    StrictInequality,
    UnsupportedRange,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MVariety => "M_VARIETY",
            Verdict::StrictInequality => "STRICT_INEQUALITY",
            Verdict::UnsupportedRange => "UNSUPPORTED_RANGE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    CwModels,
    BundleFormula,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::CwModels => "CW_MODELS",
            Method::BundleFormula => "BUNDLE_FORMULA",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CheckError {
    #[error("model error: real Betti sum {real} exceeds complex Betti sum {complex} for g={g}, n={n}")]
    SmithViolation { g: u32, n: u32, real: String, complex: String },
    #[error("cross-check failed for g={g}, n={n}: {what} gave {left} and {right}")]
    Disagreement {
        g: u32,
        n: u32,
        what: &'static str,
        left: String,
        right: String,
    },
    #[error(transparent)]
    Genfun(#[from] GenfunError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MVarietyReport {
    pub g: Genus,
    pub n: u32,
    pub complex_sum: BettiSum,
    /// `None` when the pair is outside every supported regime.
    pub real_sum: Option<BettiSum>,
    pub per_piece: Vec<PieceBetti>,
    pub verdict: Verdict,
    pub method: Option<Method>,
}

impl MVarietyReport {
    pub const CSV_HEADER: &'static str = "g,n,complex_sum,real_sum,verdict,method";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.g,
            self.n,
            self.complex_sum,
            self.real_sum.as_ref().map(ToString::to_string).unwrap_or_default(),
            self.verdict,
            self.method.map(Method::as_str).unwrap_or_default(),
        )
    }

    pub fn is_supported(&self) -> bool {
        self.verdict != Verdict::UnsupportedRange
    }
}

/// Whether `check` can decide `(g, n)`: `n ∈ {2, 3}` or `n >= 2g - 1`.
pub fn is_supported(g: Genus, n: u32) -> bool {
    n == 2 || n == 3 || i64::from(n) >= 2 * i64::from(g.get()) - 1
}

fn agree(g: Genus, n: u32, what: &'static str, left: &BigUint, right: &BigUint) -> Result<(), CheckError> {
    if left != right {
        return Err(CheckError::Disagreement {
            g: g.get(),
            n,
            what,
            left: left.to_string(),
            right: right.to_string(),
        });
    }
    Ok(())
}

/// Complex side by coefficient extraction, cross-checked against the closed
/// forms that apply.
fn complex_side(g: Genus, n: u32) -> Result<BettiSum, CheckError> {
    let sum = betti_sum_sym(g, n);
    match n {
        2 => agree(g, n, "complex sum vs closed form", sum.value(), closed_form_sym2(g).value())?,
        3 => agree(g, n, "complex sum vs closed form", sum.value(), closed_form_sym3(g)?.value())?,
        _ => {}
    }
    if let Ok(bundle) = betti_sum_large_n(g, u64::from(n)) {
        agree(g, n, "complex sum vs bundle formula", sum.value(), bundle.value())?;
    }
    Ok(sum)
}

/// Per-piece formula for the real locus: `g + 3` for `Y` plus four per
/// torus when `n = 2`; eight per 3-torus plus `2(g + 2)` per `B` when `n = 3`.
fn piece_formula(g: Genus, n: u32) -> Option<BigUint> {
    let g = u128::from(g.get());
    let total = match n {
        2 => 4 * (g * (g + 1) / 2) + g + 3,
        3 => 8 * ((g + 1) * g * g.saturating_sub(1) / 6) + 2 * (g + 2) * (g + 1),
        _ => return None,
    };
    Some(BigUint::from(total))
}

/// Real side over the bundle: `2^g` components of a real `g`-torus, each
/// carrying an `RP^{n-g}` fibre.
fn bundle_real_side(g: Genus, n: u32) -> BigUint {
    let two_g = BigUint::from(2u32).pow(g.get());
    &two_g * &two_g * BigUint::from(u64::from(n) + 1 - u64::from(g.get()))
}

fn verdict_for(g: Genus, n: u32, real: &BigUint, complex: &BigUint) -> Result<Verdict, CheckError> {
    if real > complex {
        return Err(CheckError::SmithViolation {
            g: g.get(),
            n,
            real: real.to_string(),
            complex: complex.to_string(),
        });
    }
    Ok(if real == complex { Verdict::MVariety } else { Verdict::StrictInequality })
}

/// Decides `(g, n)`. Pairs with `4 <= n <= 2g - 2` (and `n < 2` below the
/// bundle range) come back as `UNSUPPORTED_RANGE` with no real sum.
pub fn check(g: Genus, n: u32) -> Result<MVarietyReport, CheckError> {
    let complex = complex_side(g, n)?;
    if !is_supported(g, n) {
        return Ok(MVarietyReport {
            g,
            n,
            complex_sum: complex,
            real_sum: None,
            per_piece: Vec::new(),
            verdict: Verdict::UnsupportedRange,
            method: None,
        });
    }
    let bundle = (i64::from(n) >= 2 * i64::from(g.get()) - 1).then(|| bundle_real_side(g, n));

    let (real, per_piece, method) = match real_decomposition(g, n) {
        Some(decomposition) => {
            let table = decomposition.betti_table();
            let real: BigUint = table.iter().map(PieceBetti::subtotal).sum();
            let formula = piece_formula(g, n).expect("n is 2 or 3");
            agree(g, n, "real sum vs piece formula", &real, &formula)?;
            if let Some(bundle) = &bundle {
                agree(g, n, "CW models vs bundle formula", &real, bundle)?;
            }
            (real, table, Method::CwModels)
        }
        None => (bundle.expect("supported and not 2 or 3"), Vec::new(), Method::BundleFormula),
    };
    let verdict = verdict_for(g, n, &real, complex.value())?;
    Ok(MVarietyReport {
        g,
        n,
        complex_sum: complex,
        real_sum: Some(BettiSum::from(real)),
        per_piece,
        verdict,
        method: Some(method),
    })
}

/// Checks a user-supplied decomposition against the complex side of its
/// `(g, n)`. The real sum is computed from the pieces only.
pub fn check_decomposition(d: &RealLocusDecomposition) -> Result<MVarietyReport, CheckError> {
    let complex = complex_side(d.g, d.n)?;
    let table = d.betti_table();
    let real: BigUint = table.iter().map(PieceBetti::subtotal).sum();
    let verdict = verdict_for(d.g, d.n, &real, complex.value())?;
    Ok(MVarietyReport {
        g: d.g,
        n: d.n,
        complex_sum: complex,
        real_sum: Some(BettiSum::from(real)),
        per_piece: table,
        verdict,
        method: Some(Method::CwModels),
    })
}

/// `check` over `0 <= g <= gmax`, `1 <= n <= nmax`, in parallel, sorted by
/// `(g, n)`. `threads` caps the worker count.
pub fn sweep(gmax: u32, nmax: u32, threads: Option<usize>) -> Result<Vec<MVarietyReport>, CheckError> {
    let pairs: Vec<(u32, u32)> = (0..=gmax).flat_map(|g| (1..=nmax).map(move |n| (g, n))).collect();
    let run = || -> Result<Vec<MVarietyReport>, CheckError> {
        pairs.par_iter().map(|&(g, n)| check(Genus::new(g), n)).collect()
    };
    let mut rows = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(run)?,
        None => run()?,
    };
    rows.sort_by_key(|r| (r.g, r.n));
    Ok(rows)
}

/// Exit status for a batch: true iff every supported row is an M-variety.
pub fn all_supported_are_m(rows: &[MVarietyReport]) -> bool {
    rows.iter().filter(|r| r.is_supported()).all(|r| r.verdict == Verdict::MVariety)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::ChainComplexF2;
    use crate::realmodels::{torus, Piece};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = check(Genus::new(1), 2).unwrap();
        assert_eq!(r.complex_sum, 8);
        assert_eq!(r.real_sum, Some(BettiSum::from(8)));
        assert_eq!(r.verdict, Verdict::MVariety);
        assert_eq!(r.method, Some(Method::CwModels));
        assert_eq!(r.csv_row(), "1,2,8,8,M_VARIETY,CW_MODELS");

        let r = check(Genus::new(2), 3).unwrap();
        assert_eq!(r.complex_sum, 32);
        assert_eq!(r.real_sum, Some(BettiSum::from(32)));
        assert_eq!(r.verdict, Verdict::MVariety);

        // Oracle: 4^3 * (5 - 3 + 1).
        let r = check(Genus::new(3), 5).unwrap();
        assert_eq!(r.complex_sum, 192);
        assert_eq!(r.real_sum, Some(BettiSum::from(192)));
        assert_eq!(r.method, Some(Method::BundleFormula));
    }

    #[test]
    fn open_range_is_unsupported() {
        // 4 <= n <= 2g - 2 needs g >= 3.
        let r = check(Genus::new(3), 4).unwrap();
        assert_eq!(r.verdict, Verdict::UnsupportedRange);
        assert_eq!(r.real_sum, None);
        assert_eq!(r.csv_row(), "3,4,129,,UNSUPPORTED_RANGE,");
        let r = check(Genus::new(2), 4).unwrap();
        assert_eq!(r.verdict, Verdict::MVariety);
        assert_eq!(r.method, Some(Method::BundleFormula));
        assert_eq!(r.complex_sum, 48);
        assert_eq!(check(Genus::new(3), 1).unwrap().verdict, Verdict::UnsupportedRange);
        assert_eq!(check(Genus::new(1), 1).unwrap().verdict, Verdict::MVariety);
    }

    #[test]
    fn piece_formula_matches_binomials() {
        for g in 0..20u64 {
            let c2 = g * (g + 1) / 2;
            let c3 = (g + 1) * g * g.saturating_sub(1) / 6;
            let gg = Genus::new(g as u32);
            assert_eq!(piece_formula(gg, 2).unwrap(), BigUint::from(4 * c2 + g + 3));
            assert_eq!(piece_formula(gg, 3).unwrap(), BigUint::from(8 * c3 + 2 * (g + 2) * (g + 1)));
        }
    }

    #[test]
    fn both_methods_agree_for_small_genus() {
        // g = 0, 1 with n = 2 and g = 0, 1, 2 with n = 3 lie in both regimes.
        for (g, n) in [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)] {
            let r = check(Genus::new(g), n).unwrap();
            assert_eq!(r.method, Some(Method::CwModels));
            assert_eq!(r.real_sum.unwrap().into_inner(), bundle_real_side(Genus::new(g), n));
        }
    }

    #[test]
    fn sweep_sorted_and_thread_independent() {
        let a = sweep(3, 6, Some(1)).unwrap();
        let b = sweep(3, 6, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4 * 6);
        assert!(a.windows(2).all(|w| (w[0].g, w[0].n) < (w[1].g, w[1].n)));
        assert!(all_supported_are_m(&a));
        assert!(a.iter().any(|r| !r.is_supported()));
    }

    #[test]
    fn user_decomposition() {
        let strict = RealLocusDecomposition {
            g: Genus::new(1),
            n: 2,
            pieces: vec![Piece { name: "torus".into(), complex: torus(), multiplicity: 1 }],
        };
        let r = check_decomposition(&strict).unwrap();
        assert_eq!(r.verdict, Verdict::StrictInequality);

        let broken = RealLocusDecomposition {
            g: Genus::new(1),
            n: 2,
            pieces: vec![Piece { name: "too big".into(), complex: torus(), multiplicity: 3 }],
        };
        assert!(matches!(check_decomposition(&broken), Err(CheckError::SmithViolation { .. })));

        let empty = RealLocusDecomposition {
            g: Genus::new(0),
            n: 2,
            pieces: vec![Piece { name: "nothing".into(), complex: ChainComplexF2::empty(), multiplicity: 1 }],
        };
        assert_eq!(check_decomposition(&empty).unwrap().real_sum, Some(BettiSum::from(0)));
    }

    #[test]
    fn report_json_roundtrip() {
        let r = check(Genus::new(2), 2).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"M_VARIETY\""));
        assert!(text.contains("\"CW_MODELS\""));
        let back: MVarietyReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn large_n_is_m_variety(g in 0u32..12, extra in 0u32..20) {
            let n = (2 * g).saturating_sub(1) + extra;
            let r = check(Genus::new(g), n).unwrap();
            prop_assert_eq!(r.verdict, Verdict::MVariety);
            prop_assert!(r.real_sum.unwrap().value() <= r.complex_sum.value());
        }

        #[test]
        fn supported_iff_verdict(g in 0u32..10, n in 0u32..25) {
            let r = check(Genus::new(g), n).unwrap();
            prop_assert_eq!(r.is_supported(), is_supported(Genus::new(g), n));
        }
    }
}
