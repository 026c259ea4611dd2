//! State algebra for one and two quantum coins.
//!
//! A quantum coin is a two-level system whose measurement outcomes stand in
//! for heads and tails. Players act on their own coin with determinant-one
//! unitaries (or discard it and play a pure strategy); measuring the joint
//! state induces a probability distribution over outcome pairs. Everything
//! here is an immutable value and every function is pure.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use std::f64::consts::TAU;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (normalization, unitarity).
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Tolerance for the classicality determinant, one multiplication away
/// from the normalized amplitudes.
pub const CLASSICALITY_TOL: f64 = 1e-10;

// Amplitudes below this are treated as zero when fixing the global phase.
const PHASE_PIVOT: f64 = 1e-9;

/// A coin measurement outcome, doubling as a pure strategy label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Heads,
    Tails,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Heads, Outcome::Tails];

    /// 0 for heads, 1 for tails; the row/column index used throughout.
    pub fn index(self) -> usize {
        match self {
            Outcome::Heads => 0,
            Outcome::Tails => 1,
        }
    }

    pub fn from_index(index: usize) -> Option<Outcome> {
        match index {
            0 => Some(Outcome::Heads),
            1 => Some(Outcome::Tails),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Heads => "H",
            Outcome::Tails => "T",
        }
    }
}

/// A 2x2 determinant-one unitary, stored by its top row `(p, q)`.
///
/// The full matrix is `[[p, q], [-conj(q), conj(p)]]`, so the determinant is
/// one by construction and unitarity reduces to `|p|^2 + |q|^2 = 1`.
#[derive(Debug, Clone, Copy)]
pub struct SpecialUnitary {
    p: Complex64,
    q: Complex64,
}

impl SpecialUnitary {
    /// Builds the unitary with top row `(p, q)`; rejects rows that are not
    /// unit vectors within [`ALGEBRA_TOL`].
    pub fn new(p: Complex64, q: Complex64) -> Result<Self> {
        if !(p.re.is_finite() && p.im.is_finite() && q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::NonFinite {
                context: "special unitary entries",
            });
        }
        let norm_sqr = p.norm_sqr() + q.norm_sqr();
        if (norm_sqr - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::NotUnitary { norm_sqr });
        }
        Ok(Self { p, q })
    }

    pub fn identity() -> Self {
        Self {
            p: Complex64::new(1.0, 0.0),
            q: Complex64::new(0.0, 0.0),
        }
    }

    /// The real rotation `[[cos t, sin t], [-sin t, cos t]]`.
    pub fn rotation(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite {
                context: "rotation angle",
            });
        }
        Ok(Self {
            p: Complex64::new(theta.cos(), 0.0),
            q: Complex64::new(theta.sin(), 0.0),
        })
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// `|p|^2`, the weight this matrix puts on agreeing outcomes when it is
    /// the product `U V^T` acting in the maximally entangled environment.
    pub fn agreement_weight(&self) -> f64 {
        self.p.norm_sqr()
    }

    /// `|q|^2`, the complementary disagreement weight.
    pub fn disagreement_weight(&self) -> f64 {
        self.q.norm_sqr()
    }

    /// Entry-wise complex conjugate (still special unitary).
    pub fn conj(&self) -> Self {
        Self {
            p: self.p.conj(),
            q: self.q.conj(),
        }
    }

    /// Matrix transpose (still special unitary).
    pub fn transpose(&self) -> Self {
        Self {
            p: self.p,
            q: -self.q.conj(),
        }
    }

    /// Haar-distributed sample: `p = e^{ia} cos t`, `q = e^{ib} sin t` with
    /// `a, b` uniform on `[0, 2pi)` and `cos^2 t` uniform on `[0, 1]`.
    pub fn haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let a = rng.gen_range(0.0..TAU);
        let b = rng.gen_range(0.0..TAU);
        let t = rng.gen::<f64>().sqrt().acos();
        Self {
            p: Complex64::from_polar(t.cos(), a),
            q: Complex64::from_polar(t.sin(), b),
        }
    }

    fn renormalized(self) -> Self {
        let norm = (self.p.norm_sqr() + self.q.norm_sqr()).sqrt();
        Self {
            p: self.p / norm,
            q: self.q / norm,
        }
    }
}

impl Mul for SpecialUnitary {
    type Output = SpecialUnitary;

    /// Plain matrix product; the result is renormalized to absorb round-off.
    fn mul(self, rhs: SpecialUnitary) -> SpecialUnitary {
        SpecialUnitary {
            p: self.p * rhs.p - self.q * rhs.q.conj(),
            q: self.p * rhs.q + self.q * rhs.p.conj(),
        }
        .renormalized()
    }
}

/// Joint state of two quantum coins: amplitudes over the basis HH, HT, TH, TT.
///
/// Stored normalized. Two vectors represent the same state when one is a
/// nonzero complex multiple of the other, so comparisons go through
/// [`TwoQubitState::ray_eq`].
#[derive(Debug, Clone)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    pub fn new(a_hh: Complex64, a_ht: Complex64, a_th: Complex64, a_tt: Complex64) -> Result<Self> {
        let amps = [a_hh, a_ht, a_th, a_tt];
        for a in &amps {
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::NonFinite {
                    context: "state amplitudes",
                });
            }
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroState);
        }
        let norm = norm_sqr.sqrt();
        Ok(Self {
            amps: amps.map(|a| a / norm),
        })
    }

    /// The maximally entangled environment `HH + TT` (normalized).
    pub fn maximally_entangled() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: [
                Complex64::new(h, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(h, 0.0),
            ],
        }
    }

    /// The basis state concentrated on a single outcome pair.
    pub fn basis(first: Outcome, second: Outcome) -> Self {
        let mut amps = [Complex64::new(0.0, 0.0); 4];
        amps[first.index() * 2 + second.index()] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn amplitude(&self, first: Outcome, second: Outcome) -> Complex64 {
        self.amps[first.index() * 2 + second.index()]
    }

    /// Amplitudes in basis order HH, HT, TH, TT.
    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amps
    }

    /// Canonical representative: the first amplitude of modulus above the
    /// pivot threshold is made real and positive.
    pub fn canonicalized(&self) -> Self {
        for a in &self.amps {
            if a.norm() > PHASE_PIVOT {
                let phase = a / a.norm();
                return Self {
                    amps: self.amps.map(|x| x / phase),
                };
            }
        }
        self.clone()
    }

    /// Equality as rays: identical up to a global nonzero complex scalar.
    pub fn ray_eq(&self, other: &Self, tol: f64) -> bool {
        let a = self.canonicalized();
        let b = other.canonicalized();
        a.amps
            .iter()
            .zip(b.amps.iter())
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    fn from_raw(amps: [Complex64; 4]) -> Self {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        Self {
            amps: amps.map(|a| a / norm),
        }
    }
}

/// A player's option in a quantum environment: manipulate the coin with a
/// special unitary before measuring, or throw the coin away and play a pure
/// strategy outright.
#[derive(Debug, Clone, Copy)]
pub enum PlayerMove {
    Unitary(SpecialUnitary),
    Pure(Outcome),
}

impl PlayerMove {
    pub fn rotation(theta: f64) -> Result<Self> {
        Ok(PlayerMove::Unitary(SpecialUnitary::rotation(theta)?))
    }
}

/// Probability distribution over joint coin outcomes, ordered HH, HT, TH, TT.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    p: [f64; 4],
}

impl OutcomeDistribution {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        for v in &p {
            if !v.is_finite() || *v < -ALGEBRA_TOL {
                return Err(Error::BadDistribution {
                    reason: format!("entry {v} out of range"),
                });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::BadDistribution {
                reason: format!("sum {sum} != 1"),
            });
        }
        Ok(Self {
            p: p.map(|v| v.max(0.0)),
        })
    }

    pub fn point_mass(first: Outcome, second: Outcome) -> Self {
        let mut p = [0.0; 4];
        p[first.index() * 2 + second.index()] = 1.0;
        Self { p }
    }

    pub fn probability(&self, first: Outcome, second: Outcome) -> f64 {
        self.p[first.index() * 2 + second.index()]
    }

    /// Probabilities in order HH, HT, TH, TT.
    pub fn probabilities(&self) -> [f64; 4] {
        self.p
    }

    pub fn coin_one_marginal(&self) -> [f64; 2] {
        [self.p[0] + self.p[1], self.p[2] + self.p[3]]
    }

    pub fn coin_two_marginal(&self) -> [f64; 2] {
        [self.p[0] + self.p[2], self.p[1] + self.p[3]]
    }

    /// Probability that the two coins agree.
    pub fn agreement(&self) -> f64 {
        self.p[0] + self.p[3]
    }

    /// Probability that the two coins disagree.
    pub fn disagreement(&self) -> f64 {
        self.p[1] + self.p[2]
    }
}

// Action of a unitary on the first coin, by linear extension of
//   HH -> p HH - conj(q) TH      TH -> q HH + conj(p) TH
//   HT -> p HT - conj(q) TT      TT -> q HT + conj(p) TT
fn act_coin_one(amps: &[Complex64; 4], u: &SpecialUnitary) -> [Complex64; 4] {
    let (p, q) = (u.p, u.q);
    [
        p * amps[0] + q * amps[2],
        p * amps[1] + q * amps[3],
        -q.conj() * amps[0] + p.conj() * amps[2],
        -q.conj() * amps[1] + p.conj() * amps[3],
    ]
}

// Action of a unitary on the second coin, by linear extension of
//   HH -> p HH - conj(q) HT      HT -> q HH + conj(p) HT
//   TH -> p TH - conj(q) TT      TT -> q TH + conj(p) TT
fn act_coin_two(amps: &[Complex64; 4], v: &SpecialUnitary) -> [Complex64; 4] {
    let (p, q) = (v.p, v.q);
    [
        p * amps[0] + q * amps[1],
        -q.conj() * amps[0] + p.conj() * amps[1],
        p * amps[2] + q * amps[3],
        -q.conj() * amps[2] + p.conj() * amps[3],
    ]
}

/// The state after Player One applies `u` to the first coin and Player Two
/// applies `v` to the second, renormalized.
///
/// For the maximally entangled environment the amplitude matrix of the
/// result equals `u * v.transpose()` up to a global scalar.
pub fn apply_pair(xi: &TwoQubitState, u: &SpecialUnitary, v: &SpecialUnitary) -> TwoQubitState {
    let amps = act_coin_two(&act_coin_one(&xi.amps, u), v);
    TwoQubitState::from_raw(amps)
}

/// The measurement distribution induced by a pair of player moves.
///
/// Both unitary: squared moduli of the transformed amplitudes. One player
/// pure: that player discards their coin, so the actor's coin marginal is
/// attached to the pure player's fixed column (or row). Both pure: point
/// mass.
pub fn outcome_distribution(
    xi: &TwoQubitState,
    m1: &PlayerMove,
    m2: &PlayerMove,
) -> OutcomeDistribution {
    match (m1, m2) {
        (PlayerMove::Unitary(u), PlayerMove::Unitary(v)) => {
            let state = apply_pair(xi, u, v);
            OutcomeDistribution {
                p: state.amps.map(|a| a.norm_sqr()),
            }
        }
        (PlayerMove::Unitary(u), PlayerMove::Pure(s)) => {
            let state = apply_pair(xi, u, &SpecialUnitary::identity());
            let marginal = OutcomeDistribution {
                p: state.amps.map(|a| a.norm_sqr()),
            }
            .coin_one_marginal();
            let mut p = [0.0; 4];
            p[s.index()] = marginal[0];
            p[2 + s.index()] = marginal[1];
            OutcomeDistribution { p }
        }
        (PlayerMove::Pure(s), PlayerMove::Unitary(v)) => {
            let state = apply_pair(xi, &SpecialUnitary::identity(), v);
            let marginal = OutcomeDistribution {
                p: state.amps.map(|a| a.norm_sqr()),
            }
            .coin_two_marginal();
            let mut p = [0.0; 4];
            p[s.index() * 2] = marginal[0];
            p[s.index() * 2 + 1] = marginal[1];
            OutcomeDistribution { p }
        }
        (PlayerMove::Pure(s), PlayerMove::Pure(t)) => OutcomeDistribution::point_mass(*s, *t),
    }
}

/// Whether the environment can be mimicked by classical random variables:
/// true iff the amplitude determinant `a_hh a_tt - a_ht a_th` vanishes.
pub fn is_classical(xi: &TwoQubitState) -> bool {
    let a = &xi.amps;
    (a[0] * a[3] - a[1] * a[2]).norm() <= CLASSICALITY_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rotation_zero_is_identity() {
        let u = SpecialUnitary::rotation(0.0).unwrap();
        assert_eq!(u.p(), c(1.0, 0.0));
        assert_eq!(u.q(), c(0.0, 0.0));
    }

    #[test]
    fn rotation_angles_add_under_product() {
        for (theta, phi) in [(0.3, 1.1), (-0.7, 2.9), (5.0, -4.2)] {
            let lhs = SpecialUnitary::rotation(theta).unwrap() * SpecialUnitary::rotation(phi).unwrap();
            let rhs = SpecialUnitary::rotation(theta + phi).unwrap();
            assert_abs_diff_eq!(lhs.p().re, rhs.p().re, epsilon = 1e-12);
            assert_abs_diff_eq!(lhs.q().re, rhs.q().re, epsilon = 1e-12);
            assert_abs_diff_eq!(lhs.p().im, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(lhs.q().im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rotation_eighth_turn_entries() {
        let u = SpecialUnitary::rotation(PI / 8.0).unwrap();
        assert_abs_diff_eq!(u.p().re, 0.92388, epsilon = 1e-5);
        assert_abs_diff_eq!(u.q().re, 0.38268, epsilon = 1e-5);
        assert_abs_diff_eq!(u.p().re, (PI / 8.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(u.q().re, (PI / 8.0).sin(), epsilon = 1e-15);
    }

    #[test]
    fn rotation_rejects_non_finite() {
        assert!(SpecialUnitary::rotation(f64::NAN).is_err());
        assert!(SpecialUnitary::rotation(f64::INFINITY).is_err());
    }

    #[test]
    fn new_rejects_non_unit_rows() {
        assert!(SpecialUnitary::new(c(1.0, 0.0), c(0.5, 0.0)).is_err());
        assert!(SpecialUnitary::new(c(0.6, 0.0), c(0.8, 0.0)).is_ok());
    }

    #[test]
    fn transpose_of_rotation_flips_angle() {
        let u = SpecialUnitary::rotation(0.9).unwrap().transpose();
        let m = SpecialUnitary::rotation(-0.9).unwrap();
        assert_abs_diff_eq!(u.p().re, m.p().re, epsilon = 1e-15);
        assert_abs_diff_eq!(u.q().re, m.q().re, epsilon = 1e-15);
    }

    #[test]
    fn identity_pair_fixes_state() {
        let xi = TwoQubitState::new(c(0.3, 0.1), c(-0.2, 0.4), c(0.0, 0.0), c(0.7, -0.3)).unwrap();
        let id = SpecialUnitary::identity();
        assert!(apply_pair(&xi, &id, &id).ray_eq(&xi, 1e-12));
    }

    #[test]
    fn entangled_pair_gives_difference_rotation() {
        let xi = TwoQubitState::maximally_entangled();
        for (theta, phi) in [(0.7, 0.2), (1.9, -0.4), (0.0, 2.2)] {
            let out = apply_pair(
                &xi,
                &SpecialUnitary::rotation(theta).unwrap(),
                &SpecialUnitary::rotation(phi).unwrap(),
            );
            let d = theta - phi;
            let expect = TwoQubitState::new(
                c(d.cos(), 0.0),
                c(d.sin(), 0.0),
                c(-d.sin(), 0.0),
                c(d.cos(), 0.0),
            )
            .unwrap();
            assert!(out.ray_eq(&expect, 1e-12));
        }
    }

    #[test]
    fn rotation_on_first_coin_of_pure_state() {
        let theta = 0.8;
        let out = apply_pair(
            &TwoQubitState::basis(Outcome::Heads, Outcome::Heads),
            &SpecialUnitary::rotation(theta).unwrap(),
            &SpecialUnitary::identity(),
        );
        let expect =
            TwoQubitState::new(c(theta.cos(), 0.0), c(0.0, 0.0), c(-theta.sin(), 0.0), c(0.0, 0.0))
                .unwrap();
        assert!(out.ray_eq(&expect, 1e-12));
    }

    #[test]
    fn chsh_cell_probabilities() {
        let xi = TwoQubitState::maximally_entangled();
        let dist = outcome_distribution(
            &xi,
            &PlayerMove::rotation(-PI / 8.0).unwrap(),
            &PlayerMove::rotation(0.0).unwrap(),
        );
        let agree = (PI / 8.0).cos().powi(2) / 2.0;
        let differ = (PI / 8.0).sin().powi(2) / 2.0;
        let p = dist.probabilities();
        assert_abs_diff_eq!(p[0], agree, epsilon = 1e-12);
        assert_abs_diff_eq!(p[3], agree, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], differ, epsilon = 1e-12);
        assert_abs_diff_eq!(p[2], differ, epsilon = 1e-12);
        assert_abs_diff_eq!(p[0], 0.42678, epsilon = 1e-5);
        assert_abs_diff_eq!(p[1], 0.07322, epsilon = 1e-5);
    }

    #[test]
    fn two_pure_moves_concentrate() {
        let xi = TwoQubitState::new(c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        let dist = outcome_distribution(
            &xi,
            &PlayerMove::Pure(Outcome::Heads),
            &PlayerMove::Pure(Outcome::Tails),
        );
        assert_eq!(dist.probability(Outcome::Heads, Outcome::Tails), 1.0);
        assert_eq!(dist.probabilities().iter().sum::<f64>(), 1.0);
    }

    #[test]
    fn unitary_versus_pure_splits_evenly_in_entangled_environment() {
        let xi = TwoQubitState::maximally_entangled();
        for theta in [0.0, 0.3, 1.2, 2.8] {
            let dist = outcome_distribution(
                &xi,
                &PlayerMove::rotation(theta).unwrap(),
                &PlayerMove::Pure(Outcome::Heads),
            );
            assert_abs_diff_eq!(dist.probability(Outcome::Heads, Outcome::Heads), 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(dist.probability(Outcome::Tails, Outcome::Heads), 0.5, epsilon = 1e-12);
            // symmetric case: Player One pure, Player Two unitary
            let dist = outcome_distribution(
                &xi,
                &PlayerMove::Pure(Outcome::Heads),
                &PlayerMove::rotation(theta).unwrap(),
            );
            assert_abs_diff_eq!(dist.probability(Outcome::Heads, Outcome::Heads), 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(dist.probability(Outcome::Heads, Outcome::Tails), 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn classicality_of_reference_states() {
        assert!(!is_classical(&TwoQubitState::maximally_entangled()));
        // product state H (x) (H + T)
        let product =
            TwoQubitState::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(is_classical(&product));
        // product state (H + T) (x) (H + T)
        let uniform =
            TwoQubitState::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(is_classical(&uniform));
    }

    #[test]
    fn ray_equality_ignores_global_scalar() {
        let xi = TwoQubitState::new(c(0.3, 0.1), c(-0.2, 0.4), c(0.1, 0.0), c(0.7, -0.3)).unwrap();
        let scalar = c(-1.3, 2.1);
        let amps = xi.amplitudes();
        let scaled = TwoQubitState::new(
            amps[0] * scalar,
            amps[1] * scalar,
            amps[2] * scalar,
            amps[3] * scalar,
        )
        .unwrap();
        assert!(xi.ray_eq(&scaled, 1e-12));
        assert!(!xi.ray_eq(&TwoQubitState::maximally_entangled(), 1e-6));
    }

    #[test]
    fn zero_state_rejected() {
        assert!(TwoQubitState::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..64 {
            let u = SpecialUnitary::haar(&mut rng);
            assert_abs_diff_eq!(u.p().norm_sqr() + u.q().norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn distribution_constructor_validates() {
        assert!(OutcomeDistribution::new([0.25; 4]).is_ok());
        assert!(OutcomeDistribution::new([0.5, 0.5, 0.1, -0.1]).is_err());
        assert!(OutcomeDistribution::new([0.3, 0.3, 0.3, 0.3]).is_err());
    }
}
