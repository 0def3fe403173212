//! Cosh-normalized bond prices and curve calibration.
//!
//! For a nonnegative parameter `u` with both `u` and `-u` in the mgf domain,
//! the normalized bond price is the martingale
//!
//! ```text
//! M_t^u(x) = E[ cosh(u X_T) | X_t = x ]
//!          = ( e^{phi_{T-t}(u) + psi_{T-t}(u) x}
//!            + e^{phi_{T-t}(-u) + psi_{T-t}(-u) x} ) / 2,
//! ```
//!
//! which is >= 1 and increasing in `u`, so a non-increasing sequence
//! `u_1 >= ... >= u_N >= 0` yields monotone bond prices and nonnegative
//! forward rates for every state `x`.

use crate::curve::{DiscountCurve, TenorStructure};
use crate::error::{Error, Result};
use crate::numeric::log_add_exp;
use crate::process::AffineProcessSpec;
use crate::unimodal;

/// Relative tolerance on the calibration fit.
pub const CALIBRATION_TOL: f64 = 1e-12;

/// Precomputed exponents of one cosh martingale at a fixed evaluation time:
/// `M(x) = (e^{a0 + a1 x} + e^{b0 + b1 x}) / 2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CoshSlice {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
}

impl CoshSlice {
    pub(crate) fn new(spec: &AffineProcessSpec, u: f64, t: f64) -> Result<Self> {
        let dt = spec.horizon() - t;
        Ok(Self {
            a0: spec.phi_real(dt, u)?,
            a1: spec.psi_real(dt, u)?,
            b0: spec.phi_real(dt, -u)?,
            b1: spec.psi_real(dt, -u)?,
        })
    }

    pub(crate) fn value(&self, x: f64) -> f64 {
        0.5 * ((self.a0 + self.a1 * x).exp() + (self.b0 + self.b1 * x).exp())
    }

    /// ln M(x) by log-sum-exp; stays finite far in the tails where the
    /// direct form overflows.
    pub(crate) fn ln_value(&self, x: f64) -> f64 {
        log_add_exp(self.a0 + self.a1 * x, self.b0 + self.b1 * x) - std::f64::consts::LN_2
    }
}

fn check_symmetric_argument(spec: &AffineProcessSpec, u: f64) -> Result<()> {
    spec.check_argument(u)?;
    spec.check_argument(-u)?;
    Ok(())
}

/// `M_t^u(x)` for `u >= 0`; reduces to `cosh(u x)` at `t = T`.
pub fn martingale_value(spec: &AffineProcessSpec, u: f64, t: f64, x: f64) -> Result<f64> {
    if u < 0.0 {
        return Err(Error::Precondition(format!(
            "martingale parameter must be >= 0, got {u}"
        )));
    }
    check_symmetric_argument(spec, u)?;
    Ok(CoshSlice::new(spec, u, t)?.value(x))
}

/// `m(u) = M_0^u(x_0)`, the initial normalized bond price as a function of
/// the parameter; continuous, strictly increasing for `u >= 0`, `m(0) = 1`.
pub fn initial_normalized_bond(spec: &AffineProcessSpec, u: f64) -> Result<f64> {
    martingale_value(spec, u, 0.0, spec.x0())
}

/// A driving process, tenor structure and fitted `u`-sequence.
#[derive(Debug, Clone)]
pub struct CalibratedModel {
    spec: AffineProcessSpec,
    tenor: TenorStructure,
    curve: DiscountCurve,
    u_seq: Vec<f64>,
    fit_residuals: Vec<f64>,
}

impl CalibratedModel {
    /// Fits `u_1 >= ... >= u_N` so that `m(u_k) = P(0,T_k) / P(0,T)` for
    /// every tenor date, by bracketing and bisection on the strictly
    /// increasing map `m`.
    pub fn calibrate(
        spec: AffineProcessSpec,
        tenor: TenorStructure,
        curve: DiscountCurve,
    ) -> Result<Self> {
        Self::check_alignment(&spec, &tenor)?;
        let n = tenor.n_params();
        let mut u_seq = Vec::with_capacity(n);
        let mut fit_residuals = Vec::with_capacity(n);
        let mut prev = f64::INFINITY;
        for k in 1..=n {
            let target = curve.normalized(k);
            let mut u = solve_bond_parameter(&spec, target, k)?;
            // Bisection noise must not break monotonicity for equal targets.
            u = u.min(prev);
            prev = u;
            let residual = if target > 1.0 {
                (initial_normalized_bond(&spec, u)? - target).abs() / target
            } else {
                0.0
            };
            if residual > CALIBRATION_TOL {
                return Err(Error::Numerical(format!(
                    "calibration residual {residual:.3e} at index {k} exceeds {CALIBRATION_TOL:.0e}"
                )));
            }
            u_seq.push(u);
            fit_residuals.push(residual);
        }
        Ok(Self {
            spec,
            tenor,
            curve,
            u_seq,
            fit_residuals,
        })
    }

    /// Builds a model from an externally supplied `u`-sequence (for example
    /// a pinned calibration state). The sequence must be non-increasing and
    /// inside the symmetric mgf domain; it is *not* required to reproduce
    /// the curve, so fit residuals may be large.
    pub fn with_u_sequence(
        spec: AffineProcessSpec,
        tenor: TenorStructure,
        curve: DiscountCurve,
        u_seq: Vec<f64>,
    ) -> Result<Self> {
        Self::check_alignment(&spec, &tenor)?;
        if u_seq.len() != tenor.n_params() {
            return Err(Error::CurveValidation(format!(
                "expected {} bond parameters, got {}",
                tenor.n_params(),
                u_seq.len()
            )));
        }
        let mut prev = f64::INFINITY;
        for (i, &u) in u_seq.iter().enumerate() {
            if !(u >= 0.0) {
                return Err(Error::InvalidParameter {
                    name: "u_seq",
                    message: format!("entry {i} = {u} must be >= 0"),
                });
            }
            if u > prev {
                return Err(Error::InvalidParameter {
                    name: "u_seq",
                    message: format!("sequence increases at entry {i}"),
                });
            }
            check_symmetric_argument(&spec, u)?;
            prev = u;
        }
        let mut fit_residuals = Vec::with_capacity(u_seq.len());
        for (k, &u) in u_seq.iter().enumerate() {
            let target = curve.normalized(k + 1);
            fit_residuals.push((initial_normalized_bond(&spec, u)? - target).abs() / target);
        }
        Ok(Self {
            spec,
            tenor,
            curve,
            u_seq,
            fit_residuals,
        })
    }

    fn check_alignment(spec: &AffineProcessSpec, tenor: &TenorStructure) -> Result<()> {
        let t = tenor.horizon();
        if (t - spec.horizon()).abs() > 1e-12 * t.max(1.0) {
            return Err(Error::CurveValidation(format!(
                "tenor horizon {t} does not match process horizon {}",
                spec.horizon()
            )));
        }
        Ok(())
    }

    pub fn spec(&self) -> &AffineProcessSpec {
        &self.spec
    }

    pub fn tenor(&self) -> &TenorStructure {
        &self.tenor
    }

    pub fn curve(&self) -> &DiscountCurve {
        &self.curve
    }

    /// `u_k` for 1-based `k` in `1..=N`.
    pub fn u(&self, k: usize) -> f64 {
        self.u_seq[k - 1]
    }

    pub fn u_sequence(&self) -> &[f64] {
        &self.u_seq
    }

    pub fn fit_residuals(&self) -> &[f64] {
        &self.fit_residuals
    }

    /// Whether `u_{k-1} > u_k` strictly over `lo..=hi` (1-based).
    pub(crate) fn require_strictly_decreasing(&self, lo: usize, hi: usize) -> Result<()> {
        for k in lo..hi {
            if !(self.u_seq[k - 1] > self.u_seq[k]) {
                return Err(Error::Precondition(format!(
                    "bond parameter sequence not strictly decreasing between \
                     indices {k} and {} (u = {})",
                    k + 1,
                    self.u_seq[k - 1]
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn check_bond_index(&self, what: &'static str, k: usize, lo: usize) -> Result<()> {
        let hi = self.tenor.n_params();
        if k < lo || k > hi {
            return Err(Error::IndexOutOfRange {
                what,
                index: k,
                lo,
                hi,
            });
        }
        Ok(())
    }

    /// Martingale exponents for bond `k` evaluated at time `t`.
    pub(crate) fn slice(&self, k: usize, t: f64) -> Result<CoshSlice> {
        CoshSlice::new(&self.spec, self.u(k), t)
    }

    /// `M_t^{u_k}(x)`.
    pub fn martingale(&self, k: usize, t: f64, x: f64) -> Result<f64> {
        self.check_bond_index("k", k, 1)?;
        Ok(self.slice(k, t)?.value(x))
    }

    /// Simple forward rate `F^k(t)` as a function of the driving state:
    /// `(M_t^{u_{k-1}}(x) / M_t^{u_k}(x) - 1) / delta_k`, nonnegative for
    /// every `x` by bond monotonicity.
    ///
    /// Valid for `k = 2..=N`; the rate fixes at `T_{k-1}` and accrues over
    /// `(T_{k-1}, T_k]`.
    pub fn forward_rate(&self, t: f64, x: f64, k: usize) -> Result<f64> {
        self.check_bond_index("k", k, 2)?;
        if t > self.tenor.date(k - 1) * (1.0 + 1e-12) {
            return Err(Error::Precondition(format!(
                "forward rate {k} is fixed at {}; requested t = {t}",
                self.tenor.date(k - 1)
            )));
        }
        let prev = self.slice(k - 1, t)?;
        let next = self.slice(k, t)?;
        let ratio = (prev.ln_value(x) - next.ln_value(x)).exp();
        Ok((ratio - 1.0) / self.tenor.accrual(k))
    }

    /// Strictly positive lower bound of the forward rate `F^k` at its fixing
    /// date, obtained from the maximum of the inverted bond ratio:
    /// `((max_x M^{u_k}/M^{u_{k-1}})^{-1} - 1) / delta_k`.
    pub fn forward_rate_lower_bound(&self, k: usize) -> Result<f64> {
        self.check_bond_index("k", k, 2)?;
        if self.u(k - 1) == self.u(k) {
            return Ok(0.0);
        }
        let t = self.tenor.date(k - 1);
        let prev = self.slice(k - 1, t)?;
        let next = self.slice(k, t)?;
        let ratio_ln = |x: f64| next.ln_value(x) - prev.ln_value(x);
        let xi = unimodal::find_extremum(ratio_ln, self.spec.x0())?;
        let max_ln = ratio_ln(xi);
        Ok(((-max_ln).exp() - 1.0) / self.tenor.accrual(k))
    }

    /// `P(0, T_{N+1})`, the terminal discount factor used by all prices.
    pub fn terminal_discount(&self) -> f64 {
        self.curve.terminal()
    }
}

/// Solves `m(u) = target` on the symmetric part of the mgf domain.
fn solve_bond_parameter(spec: &AffineProcessSpec, target: f64, index: usize) -> Result<f64> {
    if target < 1.0 - 1e-12 {
        return Err(Error::CurveValidation(format!(
            "normalized bond ratio {target} < 1 at index {index}"
        )));
    }
    if target <= 1.0 {
        return Ok(0.0);
    }
    let m = |u: f64| initial_normalized_bond(spec, u);
    let cap = spec.domain().symmetric_bound();

    let mut hi = if cap.is_finite() { cap } else { 1.0 };
    if cap.is_finite() {
        let achievable = m(hi)?;
        if achievable < target {
            return Err(Error::CalibrationInfeasible {
                index,
                target,
                achievable,
            });
        }
    } else {
        let mut doublings = 0;
        // m grows without bound, so the bracket always closes; an overflow
        // to +inf also satisfies the exit condition.
        while m(hi)? < target {
            hi *= 2.0;
            doublings += 1;
            if doublings > 200 {
                return Err(Error::BracketFailure(format!(
                    "no upper bracket for bond parameter at index {index}"
                )));
            }
        }
    }

    let mut lo = 0.0;
    while hi - lo > 1e-14 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if m(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::JumpOuParams;
    use approx::assert_relative_eq;

    fn fig1_spec(horizon: f64) -> AffineProcessSpec {
        AffineProcessSpec::jump_diffusion_ou(
            JumpOuParams {
                lambda: 0.02,
                alpha_plus: 12.0,
                alpha_minus: 10.0,
                beta_plus: 50.0,
                beta_minus: 5.0,
                sigma: 0.3,
                theta: 0.5,
            },
            0.7,
            horizon,
        )
        .unwrap()
    }

    fn flat_setup(horizon_steps: usize) -> (TenorStructure, DiscountCurve) {
        let tenor = TenorStructure::regular(0.5, 0.5, horizon_steps).unwrap();
        let curve = DiscountCurve::flat_simple_per_period(0.035, &tenor).unwrap();
        (tenor, curve)
    }

    #[test]
    fn martingale_value_examples() {
        let spec = fig1_spec(10.0);
        // u = 0 gives the constant martingale 1.
        for &(t, x) in &[(0.0, 0.7), (3.0, -4.0), (10.0, 2.0)] {
            assert_relative_eq!(
                martingale_value(&spec, 0.0, t, x).unwrap(),
                1.0,
                max_relative = 1e-15
            );
        }
        // At t = T the martingale is cosh(u x).
        let v = martingale_value(&spec, 2.0, 10.0, 0.3).unwrap();
        assert_relative_eq!(v, (0.6_f64).cosh(), max_relative = 1e-13);
        // Symmetry in the sign of x for the Brownian case with x0 = 0.
        let bm = AffineProcessSpec::brownian(1.0, 0.0, 0.0, 10.0).unwrap();
        for &x in &[0.1, 1.0, 3.0] {
            assert_relative_eq!(
                martingale_value(&bm, 0.7, 4.0, x).unwrap(),
                martingale_value(&bm, 0.7, 4.0, -x).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn initial_bond_brownian_closed_form() {
        // x0 = 0, zero drift: m(u) = e^{u^2 T / 2}.
        let bm = AffineProcessSpec::brownian(1.0, 0.0, 0.0, 10.0).unwrap();
        for &u in &[0.0, 0.1, 0.5, 1.3] {
            assert_relative_eq!(
                initial_normalized_bond(&bm, u).unwrap(),
                (0.5 * u * u * 10.0).exp(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn initial_bond_strictly_increasing() {
        let spec = fig1_spec(10.0);
        let mut prev = initial_normalized_bond(&spec, 0.0).unwrap();
        assert_relative_eq!(prev, 1.0, max_relative = 1e-15);
        for i in 1..=40 {
            let u = i as f64 * 0.2;
            let v = initial_normalized_bond(&spec, u).unwrap();
            assert!(v > prev, "m not increasing at u = {u}");
            prev = v;
        }
    }

    #[test]
    fn calibrate_flat_curve() {
        let (tenor, curve) = flat_setup(20);
        let model = CalibratedModel::calibrate(fig1_spec(10.0), tenor, curve).unwrap();
        // Strictly decreasing sequence with tiny residuals.
        for w in model.u_sequence().windows(2) {
            assert!(w[0] > w[1]);
        }
        for &r in model.fit_residuals() {
            assert!(r <= CALIBRATION_TOL);
        }
        // Round trip against the curve.
        for k in 1..=model.tenor().n_params() {
            let m = initial_normalized_bond(model.spec(), model.u(k)).unwrap();
            assert_relative_eq!(m, model.curve().normalized(k), max_relative = 1e-12);
        }
    }

    #[test]
    fn calibrate_zero_rates_gives_zero_parameters() {
        let tenor = TenorStructure::regular(0.5, 0.5, 8).unwrap();
        let curve = DiscountCurve::flat_simple_per_period(0.0, &tenor).unwrap();
        let model = CalibratedModel::calibrate(fig1_spec(4.0), tenor, curve).unwrap();
        assert!(model.u_sequence().iter().all(|&u| u == 0.0));
    }

    #[test]
    fn calibrate_infeasible_curve() {
        // A jump process with a narrow domain cannot reach a huge ratio.
        let spec = AffineProcessSpec::jump_diffusion_ou(
            JumpOuParams {
                lambda: 0.02,
                alpha_plus: 0.9,
                alpha_minus: 0.8,
                beta_plus: 0.05,
                beta_minus: 0.05,
                sigma: 0.0,
                theta: 0.0,
            },
            0.0,
            2.0,
        )
        .unwrap();
        let tenor = TenorStructure::regular(1.0, 1.0, 2).unwrap();
        let curve = DiscountCurve::new(vec![0.05, 0.04], &tenor).unwrap();
        match CalibratedModel::calibrate(spec, tenor, curve) {
            Err(Error::CalibrationInfeasible { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected infeasible calibration, got {other:?}"),
        }
    }

    #[test]
    fn forward_rates_reproduce_curve_at_time_zero() {
        let (tenor, curve) = flat_setup(20);
        let model = CalibratedModel::calibrate(fig1_spec(10.0), tenor, curve).unwrap();
        for k in 2..=model.tenor().n_params() {
            let implied = model.curve().simple_forward(model.tenor(), k);
            let f = model
                .forward_rate(0.0, model.spec().x0(), k)
                .unwrap();
            assert_relative_eq!(f, implied, max_relative = 1e-11);
        }
    }

    #[test]
    fn forward_rates_nonnegative_on_wide_grid() {
        let (tenor, curve) = flat_setup(20);
        let model = CalibratedModel::calibrate(fig1_spec(10.0), tenor, curve).unwrap();
        for k in [2usize, 7, 19] {
            let t_fix = model.tenor().date(k - 1);
            for i in 0..200 {
                let x = -30.0 + 60.0 * i as f64 / 199.0;
                for &t in &[0.0, 0.5 * t_fix, t_fix] {
                    let f = model.forward_rate(t, x, k).unwrap();
                    assert!(f >= -1e-13, "negative forward {f} at k={k}, t={t}, x={x}");
                }
            }
        }
    }

    #[test]
    fn monotone_bonds_in_k() {
        let (tenor, curve) = flat_setup(20);
        let model = CalibratedModel::calibrate(fig1_spec(10.0), tenor, curve).unwrap();
        for &x in &[-6.0, 0.0, 0.7, 5.0] {
            for &t in &[0.0, 0.25] {
                let mut prev = f64::INFINITY;
                for k in 1..=model.tenor().n_params() {
                    let m = model.martingale(k, t, x).unwrap();
                    assert!(m <= prev * (1.0 + 1e-14));
                    assert!(m >= 1.0 - 1e-14);
                    prev = m;
                }
            }
        }
    }

    #[test]
    fn equal_parameters_give_zero_forward() {
        let (tenor, curve) = flat_setup(4);
        let spec = fig1_spec(2.0);
        let u = CalibratedModel::calibrate(spec, tenor.clone(), curve.clone())
            .unwrap()
            .u(1);
        let model =
            CalibratedModel::with_u_sequence(spec, tenor, curve, vec![u, u, u]).unwrap();
        for &x in &[-2.0, 0.0, 3.0] {
            assert_eq!(model.forward_rate(0.0, x, 2).unwrap(), 0.0);
        }
        assert_eq!(model.forward_rate_lower_bound(2).unwrap(), 0.0);
    }

    #[test]
    fn with_u_sequence_validates() {
        let (tenor, curve) = flat_setup(4);
        let spec = fig1_spec(2.0);
        assert!(CalibratedModel::with_u_sequence(
            spec,
            tenor.clone(),
            curve.clone(),
            vec![0.1, 0.2, 0.15]
        )
        .is_err());
        assert!(CalibratedModel::with_u_sequence(spec, tenor, curve, vec![0.3, 0.2]).is_err());
    }
}
