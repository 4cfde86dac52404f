//! The product map `θ : Sym^3(S^1) -> S^1` and the identification of its
//! fibre with the 2-simplex, in angle coordinates (`s ↦ e^{2πis}`).
//!
//! A fibre point is written `t(d1, d2) = (λ, λ e^{2πi d1}, λ e^{2πi(d1+d2)})`
//! with `λ = e^{-2πi(2d1+d2)/3}`; the inverse lifts a triple of angles to an
//! ordered triple `s1 <= s2 <= s3 <= s1 + 1` and rotates it with
//! `T(s1, s2, s3) = (s2, s3, s1 + 1)` until the lift sums to zero.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for round trips and for equality of circle points.
pub const ROUNDTRIP_TOL: f64 = 1e-9;
/// Tolerance for membership of `θ^{-1}(1)`.
pub const FIBER_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FibrationError {
    #[error("({d1}, {d2}) is not in the 2-simplex")]
    Domain { d1: f64, d2: f64 },
    #[error("triple has product angle {angle}, expected {expected} (off by {error:e})")]
    Fiber { angle: f64, expected: f64, error: f64 },
    #[error("trivialization parameter {0} is outside (-1/2, 1/2)")]
    Parameter(f64),
}

/// A point `e^{2πis}` of the unit circle, `s ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CirclePoint(f64);

impl CirclePoint {
    /// Reduces any real angle mod 1.
    pub fn new(s: f64) -> Self {
        let r = s.rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs.
        CirclePoint(if r >= 1.0 { 0.0 } else { r })
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    /// Arc distance in turns, in `[0, 1/2]`.
    pub fn distance(self, other: CirclePoint) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(1.0 - d)
    }
}

/// An unordered triple of circle points, stored sorted by angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymTriple([CirclePoint; 3]);

impl SymTriple {
    pub fn new(points: [CirclePoint; 3]) -> Self {
        let mut p = points;
        p.sort_by(|a, b| a.0.total_cmp(&b.0));
        SymTriple(p)
    }

    pub fn from_angles(a: f64, b: f64, c: f64) -> Self {
        Self::new([CirclePoint::new(a), CirclePoint::new(b), CirclePoint::new(c)])
    }

    pub fn points(&self) -> [CirclePoint; 3] {
        self.0
    }

    pub fn angles(&self) -> [f64; 3] {
        self.0.map(CirclePoint::angle)
    }

    /// Distance between multisets: the best matching of the two sorted
    /// triples over the three cyclic rotations, measured by the worst arc.
    pub fn distance(&self, other: &SymTriple) -> f64 {
        (0..3)
            .map(|r| {
                (0..3)
                    .map(|i| self.0[i].distance(other.0[(i + r) % 3]))
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest arc between two of the three points.
    pub fn min_gap(&self) -> f64 {
        let [a, b, c] = self.0;
        a.distance(b).min(b.distance(c)).min(c.distance(a))
    }
}

/// A point of the standard 2-simplex `{d1, d2 >= 0, d1 + d2 <= 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    pub d1: f64,
    pub d2: f64,
}

impl SimplexPoint {
    pub fn new(d1: f64, d2: f64) -> Result<Self, FibrationError> {
        let tol = ROUNDTRIP_TOL;
        if !(d1 >= -tol && d2 >= -tol && d1 + d2 <= 1.0 + tol) {
            return Err(FibrationError::Domain { d1, d2 });
        }
        Ok(SimplexPoint { d1, d2 })
    }

    pub fn distance(&self, other: &SimplexPoint) -> f64 {
        (self.d1 - other.d1).abs().max((self.d2 - other.d2).abs())
    }
}

/// `θ(λ1, λ2, λ3) = λ1 λ2 λ3`: the angles add.
pub fn theta(tr: &SymTriple) -> CirclePoint {
    let [a, b, c] = tr.angles();
    CirclePoint::new(a + b + c)
}

/// The parametrization `t : Δ² -> θ^{-1}(1)`.
pub fn t_map(p: &SimplexPoint) -> SymTriple {
    let shift = (2.0 * p.d1 + p.d2) / 3.0;
    SymTriple::from_angles(-shift, p.d1 - shift, p.d1 + p.d2 - shift)
}

/// One lift of a circle point: `angle + turns`, with the integer part kept
/// separately so the sum law for `T` is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Lift {
    angle: f64,
    turns: i64,
}

impl Lift {
    fn value(self) -> f64 {
        self.angle + self.turns as f64
    }
}

/// An ordered lift `s1 <= s2 <= s3 <= s1 + 1` of a triple.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OrderedLift([Lift; 3]);

impl OrderedLift {
    /// Lift of the sorted angles, starting at the smallest and wrapping
    /// around once.
    fn from_sorted(tr: &SymTriple) -> Self {
        OrderedLift(tr.angles().map(|angle| Lift { angle, turns: 0 }))
    }

    fn turns(&self) -> i64 {
        self.0.iter().map(|l| l.turns).sum()
    }

    /// `T(s1, s2, s3) = (s2, s3, s1 + 1)`.
    fn shift_up(self) -> Self {
        let [a, b, c] = self.0;
        let out = OrderedLift([b, c, Lift { turns: a.turns + 1, ..a }]);
        assert_eq!(out.turns(), self.turns() + 1, "T raises the lift sum by one");
        out
    }

    /// `T^{-1}(s1, s2, s3) = (s3 - 1, s1, s2)`.
    fn shift_down(self) -> Self {
        let [a, b, c] = self.0;
        let out = OrderedLift([Lift { turns: c.turns - 1, ..c }, a, b]);
        assert_eq!(out.turns(), self.turns() - 1, "T^-1 lowers the lift sum by one");
        out
    }

    fn differences(&self) -> (f64, f64) {
        let [a, b, c] = self.0.map(Lift::value);
        (b - a, c - b)
    }
}

/// Checks `θ(tr) = expected` within `tol`.
pub fn check_fiber(tr: &SymTriple, expected: CirclePoint, tol: f64) -> Result<(), FibrationError> {
    let angle = theta(tr);
    let error = angle.distance(expected);
    if error > tol {
        return Err(FibrationError::Fiber {
            angle: angle.angle(),
            expected: expected.angle(),
            error,
        });
    }
    Ok(())
}

/// Inverse of [`t_map`] on `θ^{-1}(1)`.
pub fn t_inverse(tr: &SymTriple) -> Result<SimplexPoint, FibrationError> {
    t_inverse_with_tol(tr, ROUNDTRIP_TOL)
}

pub fn t_inverse_with_tol(tr: &SymTriple, tol: f64) -> Result<SimplexPoint, FibrationError> {
    check_fiber(tr, CirclePoint::new(0.0), tol)?;
    let mut lift = OrderedLift::from_sorted(tr);
    // The fractional parts sum to an integer in [0, 3] up to rounding; that
    // integer is how far the lift sum sits above zero.
    let excess = tr.angles().iter().sum::<f64>().round() as i64;
    const MAX_STEPS: i64 = 5;
    assert!((0..=MAX_STEPS).contains(&excess), "lift sum {excess} out of range");
    for _ in 0..excess {
        lift = lift.shift_down();
    }
    while lift.turns() < -excess {
        lift = lift.shift_up();
    }
    debug_assert_eq!(lift.turns(), -excess);
    let (d1, d2) = lift.differences();
    // Rounding can leave the result a hair outside the simplex.
    let d1 = d1.max(0.0);
    let d2 = d2.max(0.0);
    let s = d1 + d2;
    let (d1, d2) = if s > 1.0 { (d1 / s, d2 / s) } else { (d1, d2) };
    Ok(SimplexPoint { d1, d2 })
}

/// `ψ(μ e^{2πis}, (λ1, λ2, λ3)) = (λ1 e^{2πis/3}, λ2 e^{2πis/3}, λ3 e^{2πis/3})`
/// for `tr` in the fibre over `mu` and `s ∈ (-1/2, 1/2)`.
pub fn local_trivialization(mu: CirclePoint, s: f64, tr: &SymTriple) -> Result<SymTriple, FibrationError> {
    if !(s > -0.5 && s < 0.5) {
        return Err(FibrationError::Parameter(s));
    }
    check_fiber(tr, mu, ROUNDTRIP_TOL)?;
    let [a, b, c] = tr.angles();
    Ok(SymTriple::from_angles(a + s / 3.0, b + s / 3.0, c + s / 3.0))
}

/// Whether `p` is on the boundary of the simplex, which is exactly where
/// `t(p)` has a repeated point.
pub fn is_boundary_point(p: &SimplexPoint) -> bool {
    is_boundary_point_with_tol(p, ROUNDTRIP_TOL)
}

pub fn is_boundary_point_with_tol(p: &SimplexPoint, tol: f64) -> bool {
    p.d1.abs() <= tol || p.d2.abs() <= tol || (p.d1 + p.d2 - 1.0).abs() <= tol
}

/// Angle of a circle point as an exact fraction of a turn, reduced to `[0, 1)`.
pub type ExactAngle = Ratio<i64>;

fn reduce(a: ExactAngle) -> ExactAngle {
    a - a.floor()
}

/// Exact unordered triple: sorted reduced angles.
pub type ExactTriple = [ExactAngle; 3];

pub fn exact_triple(a: ExactAngle, b: ExactAngle, c: ExactAngle) -> ExactTriple {
    let mut t = [reduce(a), reduce(b), reduce(c)];
    t.sort();
    t
}

/// Points `(λ, λ, 1)` with `λ = k/den`.
pub fn curve_a1(den: i64) -> BTreeSet<ExactTriple> {
    (0..den)
        .map(|k| {
            let l = Ratio::new(k, den);
            exact_triple(l, l, Ratio::from_integer(0))
        })
        .collect()
}

/// Points `(1, 1, λ)` with `λ = k/den`.
pub fn curve_a2_prime(den: i64) -> BTreeSet<ExactTriple> {
    (0..den)
        .map(|k| exact_triple(Ratio::from_integer(0), Ratio::from_integer(0), Ratio::new(k, den)))
        .collect()
}

/// Points `(λ, λ, μ)` with `λ^2 μ = 1`, i.e. the boundary of the fibre over
/// 1, sampled at `λ = k/den`.
pub fn curve_a1_prime(den: i64) -> BTreeSet<ExactTriple> {
    (0..den)
        .map(|k| {
            let l = Ratio::new(k, den);
            exact_triple(l, l, -l * 2)
        })
        .collect()
}

/// Membership in `A1'`: some point is repeated and the angles add to 0.
pub fn in_a1_prime(t: &ExactTriple) -> bool {
    let repeated = t[0] == t[1] || t[1] == t[2];
    repeated && reduce(t[0] + t[1] + t[2]) == Ratio::from_integer(0)
}

/// Membership in `A2'`: two of the points equal 1.
pub fn in_a2_prime(t: &ExactTriple) -> bool {
    t.iter().filter(|a| **a == Ratio::from_integer(0)).count() >= 2
}

/// Membership in `A1`: some point is repeated and the remaining one is 1.
pub fn in_a1(t: &ExactTriple) -> bool {
    let zero = Ratio::from_integer(0);
    (t[0] == t[1] && t[2] == zero)
        || (t[1] == t[2] && t[0] == zero)
        || (t[0] == t[2] && t[1] == zero)
}

/// Intersection points of `A1` with `A2'` and with `A1'`, found by
/// enumerating all points of the curves with angles in `(1/den) Z`.
pub fn intersection_counts(den: i64) -> (usize, usize) {
    let a1 = curve_a1(den);
    let with_a2p = a1.iter().filter(|t| in_a2_prime(t)).count();
    let with_a1p = a1.iter().filter(|t| in_a1_prime(t)).count();
    (with_a2p, with_a1p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FibrationSuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub roundtrip_tol: f64,
    pub fiber_tol: f64,
}

impl Default for FibrationSuiteConfig {
    fn default() -> Self {
        FibrationSuiteConfig {
            samples: 10_000,
            seed: 0,
            roundtrip_tol: ROUNDTRIP_TOL,
            fiber_tol: FIBER_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FibrationSuiteReport {
    pub config: FibrationSuiteConfig,
    /// Worst `|t'(t(p)) - p|` and `|t(t'(x)) - x|` over all samples.
    pub max_roundtrip_error: f64,
    /// Worst distance of `θ(t(p))` from 1.
    pub max_fiber_error: f64,
    /// Worst error of `θ(ψ(μ e^{2πis}, x)) = μ e^{2πis}`.
    pub max_trivialization_error: f64,
    pub boundary_agreements: usize,
    pub boundary_checks: usize,
    pub boundary_samples: usize,
    pub order_invariance_failures: usize,
    pub a1_meets_a2_prime: usize,
    pub a1_meets_a1_prime: usize,
}

impl FibrationSuiteReport {
    pub fn passed(&self) -> bool {
        self.max_roundtrip_error < self.config.roundtrip_tol
            && self.max_fiber_error < self.config.fiber_tol
            && self.max_trivialization_error < self.config.roundtrip_tol
            && self.boundary_agreements == self.boundary_checks
            && self.order_invariance_failures == 0
            && self.a1_meets_a2_prime == 1
            && self.a1_meets_a1_prime == 2
    }
}

/// Uniform point of the simplex; every fourth sample is pushed onto one of
/// the three edges so the boundary characterization is exercised.
fn sample_simplex(rng: &mut ChaCha8Rng, i: usize) -> SimplexPoint {
    let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
    if u + v > 1.0 {
        (u, v) = (1.0 - u, 1.0 - v);
    }
    if i % 4 == 3 {
        match rng.gen_range(0..3) {
            0 => u = 0.0,
            1 => v = 0.0,
            _ => v = 1.0 - u,
        }
    }
    SimplexPoint { d1: u, d2: v }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Randomized check of the bundle formulas. Deterministic in the seed.
pub fn run_suite(config: FibrationSuiteConfig) -> FibrationSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let one = CirclePoint::new(0.0);
    let mut report = FibrationSuiteReport {
        config,
        max_roundtrip_error: 0.0,
        max_fiber_error: 0.0,
        max_trivialization_error: 0.0,
        boundary_agreements: 0,
        boundary_checks: 0,
        boundary_samples: 0,
        order_invariance_failures: 0,
        a1_meets_a2_prime: 0,
        a1_meets_a1_prime: 0,
    };
    for i in 0..config.samples {
        let p = sample_simplex(&mut rng, i);
        let tr = t_map(&p);

        report.max_fiber_error = report.max_fiber_error.max(theta(&tr).distance(one));

        let roundtrip = match t_inverse_with_tol(&tr, config.roundtrip_tol) {
            Ok(back) => {
                let e1 = back.distance(&p);
                let e2 = t_map(&back).distance(&tr);
                e1.max(e2)
            }
            Err(_) => f64::INFINITY,
        };
        report.max_roundtrip_error = report.max_roundtrip_error.max(roundtrip);

        let on_edge = is_boundary_point_with_tol(&p, config.roundtrip_tol);
        let repeated = tr.min_gap() <= config.roundtrip_tol;
        report.boundary_checks += 1;
        report.boundary_samples += usize::from(on_edge);
        report.boundary_agreements += usize::from(on_edge == repeated);

        // Shuffle the points and confirm θ and t' do not notice.
        let pts = tr.points();
        let reference = t_inverse_with_tol(&tr, config.roundtrip_tol).ok();
        for perm in PERMUTATIONS {
            let shuffled = SymTriple::new(perm.map(|k| pts[k]));
            let same_theta = theta(&shuffled) == theta(&tr);
            let same_inverse = t_inverse_with_tol(&shuffled, config.roundtrip_tol).ok() == reference;
            if !(same_theta && same_inverse) {
                report.order_invariance_failures += 1;
            }
        }

        let mu: f64 = rng.gen();
        let s: f64 = rng.gen_range(-0.49..0.49);
        let base = SymTriple::from_angles(
            tr.angles()[0] + mu / 3.0,
            tr.angles()[1] + mu / 3.0,
            tr.angles()[2] + mu / 3.0,
        );
        let err = match local_trivialization(CirclePoint::new(mu), s, &base) {
            Ok(moved) => theta(&moved).distance(CirclePoint::new(mu + s)),
            Err(_) => f64::INFINITY,
        };
        report.max_trivialization_error = report.max_trivialization_error.max(err);
    }
    let (a2p, a1p) = intersection_counts(360);
    report.a1_meets_a2_prime = a2p;
    report.a1_meets_a1_prime = a1p;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triple_close(a: &SymTriple, angles: [f64; 3], tol: f64) -> bool {
        a.distance(&SymTriple::from_angles(angles[0], angles[1], angles[2])) < tol
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&SymTriple::from_angles(0.0, 0.0, 0.0)).angle(), 0.0);
        assert_eq!(theta(&SymTriple::from_angles(0.25, 0.25, 0.5)).angle(), 0.0);
        let third = 1.0 / 3.0;
        assert!(theta(&SymTriple::from_angles(third, third, third)).distance(CirclePoint::new(0.0)) < 1e-15);
    }

    #[test]
    fn t_map_examples() {
        let p = SimplexPoint::new(0.0, 0.0).unwrap();
        assert_eq!(t_map(&p).angles(), [0.0, 0.0, 0.0]);

        // Oracle values by hand:
        // -(2/3+1/3)/3 = -1/3 -> 2/3, 1/3-1/3 = 0, 2/3-1/3 = 1/3.
        let p = SimplexPoint::new(1.0 / 3.0, 1.0 / 3.0).unwrap();
        assert!(triple_close(&t_map(&p), [2.0 / 3.0, 0.0, 1.0 / 3.0], 1e-15));

        // (1, 0): -2/3, 1/3, 1/3 -> the point 1/3 three times.
        let p = SimplexPoint::new(1.0, 0.0).unwrap();
        assert!(triple_close(&t_map(&p), [1.0 / 3.0; 3], 1e-15));
        assert!(t_map(&p).min_gap() < 1e-15);
    }

    #[test]
    fn t_inverse_examples() {
        let back = t_inverse(&SymTriple::from_angles(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(back, SimplexPoint { d1: 0.0, d2: 0.0 });

        let roots = SymTriple::from_angles(0.0, 1.0 / 3.0, 2.0 / 3.0);
        let back = t_inverse(&roots).unwrap();
        assert!((back.d1 - 1.0 / 3.0).abs() < 1e-15 && (back.d2 - 1.0 / 3.0).abs() < 1e-15);

        let tr = SymTriple::from_angles(0.9, 0.9, 0.2);
        let back = t_inverse(&tr).unwrap();
        assert!(t_map(&back).distance(&tr) < 1e-9);
    }

    /// Oracle for the cube-root example: among all ordered lifts with
    /// denominators 3 in a small window, exactly one is sorted, spans at
    /// most one turn, and sums to zero.
    #[test]
    fn cube_root_lift_is_unique() {
        let mut hits = Vec::new();
        for a in -6i64..6 {
            for b in -6i64..6 {
                for c in -6i64..6 {
                    let (s1, s2, s3) = (Ratio::new(a, 3), Ratio::new(b, 3), Ratio::new(c, 3));
                    let sorted = s1 <= s2 && s2 <= s3 && s3 <= s1 + 1;
                    let roots = exact_triple(s1, s2, s3)
                        == exact_triple(Ratio::from_integer(0), Ratio::new(1, 3), Ratio::new(2, 3));
                    if sorted && roots && s1 + s2 + s3 == Ratio::from_integer(0) {
                        hits.push((s2 - s1, s3 - s2));
                    }
                }
            }
        }
        assert_eq!(hits, vec![(Ratio::new(1, 3), Ratio::new(1, 3))]);
    }

    #[test]
    fn t_inverse_off_fiber() {
        let err = t_inverse(&SymTriple::from_angles(0.1, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, FibrationError::Fiber { .. }));
    }

    #[test]
    fn simplex_domain() {
        assert!(SimplexPoint::new(0.6, 0.6).is_err());
        assert!(SimplexPoint::new(-0.1, 0.2).is_err());
        assert!(SimplexPoint::new(f64::NAN, 0.2).is_err());
        assert!(SimplexPoint::new(1.0, 0.0).is_ok());
    }

    #[test]
    fn trivialization_examples() {
        let one = CirclePoint::new(0.0);
        let base = SymTriple::from_angles(0.0, 0.0, 0.0);
        assert_eq!(local_trivialization(one, 0.0, &base).unwrap(), base);
        let moved = local_trivialization(one, 0.3, &base).unwrap();
        assert!(triple_close(&moved, [0.1; 3], 1e-15));
        assert!(theta(&moved).distance(CirclePoint::new(0.3)) < 1e-15);
        let moved = local_trivialization(one, -0.3, &base).unwrap();
        assert!(triple_close(&moved, [0.9; 3], 1e-15));
        assert!(theta(&moved).distance(CirclePoint::new(0.7)) < 1e-15);
        assert!(matches!(
            local_trivialization(one, 0.5, &base),
            Err(FibrationError::Parameter(_))
        ));
        assert!(matches!(
            local_trivialization(CirclePoint::new(0.2), 0.1, &base),
            Err(FibrationError::Fiber { .. })
        ));
    }

    #[test]
    fn boundary_examples() {
        assert!(is_boundary_point(&SimplexPoint { d1: 0.0, d2: 0.4 }));
        assert!(!is_boundary_point(&SimplexPoint { d1: 0.2, d2: 0.3 }));
        assert!(is_boundary_point(&SimplexPoint { d1: 0.5, d2: 0.5 }));
    }

    #[test]
    fn lift_shift_law() {
        let tr = SymTriple::from_angles(0.2, 0.5, 0.3);
        let lift = OrderedLift::from_sorted(&tr);
        let up = lift.shift_up();
        assert_eq!(up.turns(), 1);
        assert!((up.0.iter().map(|l| l.value()).sum::<f64>() - 2.0).abs() < 1e-15);
        assert_eq!(up.shift_down(), lift);
    }

    #[test]
    fn intersection_counts_exact() {
        for den in [2, 12, 60, 360] {
            assert_eq!(intersection_counts(den), (1, 2), "den={den}");
        }
        // The two points of A1 ∩ A1' are (1,1,1) and (-1,-1,1).
        let a1p = curve_a1_prime(360);
        let common: Vec<_> = curve_a1(360).intersection(&a1p).cloned().collect();
        assert_eq!(
            common,
            vec![
                exact_triple(Ratio::from_integer(0), Ratio::from_integer(0), Ratio::from_integer(0)),
                exact_triple(Ratio::new(1, 2), Ratio::new(1, 2), Ratio::from_integer(0)),
            ]
        );
        assert!(curve_a1_prime(360).iter().all(in_a1_prime));
        assert!(curve_a1(360).iter().all(in_a1));
    }

    #[test]
    fn suite_is_deterministic_and_passes() {
        let cfg = FibrationSuiteConfig { samples: 500, seed: 7, ..Default::default() };
        let a = run_suite(cfg);
        let b = run_suite(cfg);
        assert_eq!(a, b);
        assert!(a.passed(), "{a:?}");
        assert!(a.boundary_samples > 50);
    }

    proptest! {
        #[test]
        fn roundtrip(u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
            let (d1, d2) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
            let p = SimplexPoint { d1, d2 };
            let back = t_inverse(&t_map(&p)).unwrap();
            prop_assert!(back.distance(&p) < 1e-9, "{p:?} -> {back:?}");
        }

        #[test]
        fn fiber_roundtrip(a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let tr = SymTriple::from_angles(a, b, -a - b);
            let back = t_inverse(&tr).unwrap();
            prop_assert!(t_map(&back).distance(&tr) < 1e-9);
            prop_assert!(back.d1 >= 0.0 && back.d2 >= 0.0 && back.d1 + back.d2 <= 1.0);
        }

        #[test]
        fn boundary_iff_repeated(u in 0.0f64..=1.0, edge in 0usize..4) {
            let p = match edge {
                0 => SimplexPoint { d1: 0.0, d2: u },
                1 => SimplexPoint { d1: u, d2: 0.0 },
                2 => SimplexPoint { d1: u, d2: 1.0 - u },
                _ => SimplexPoint { d1: u * 0.5 + 0.1, d2: 0.3 },
            };
            prop_assert_eq!(is_boundary_point(&p), t_map(&p).min_gap() <= 1e-9);
        }
    }
}
