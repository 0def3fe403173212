//! Extremum and root finding for the unimodal ratio functions behind the
//! pricing formulas.
//!
//! Ratios of cosh martingales with a strictly larger parameter in the
//! denominator have a single interior maximum and decay to zero in both
//! tails. The payoff region of a floorlet or put swaption is therefore an
//! interval `(kappa_1, kappa_2)` around the extremum, found here by
//! expanding brackets, golden-section refinement and bisection on the
//! monotone flanks. All ratio evaluations go through log-sum-exp forms so
//! the searches stay stable arbitrarily far in the tails.

use crate::error::{Error, Result};
use crate::model::{CalibratedModel, CoshSlice};

/// Absolute x-tolerance of the bisection root refinement.
const ROOT_X_TOL: f64 = 1e-13;
/// An extremum value within this distance of the payoff level counts as a
/// degenerate (empty) region, so near-zero-width intervals never reach the
/// Fourier transform.
const DEGENERACY_TOL: f64 = 1e-14;
/// Relative accuracy of the extremum location.
const EXTREMUM_TOL: f64 = 1e-10;
const MAX_DOUBLINGS: usize = 200;

/// Boundaries of the region where an option payoff is strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffRegion {
    /// kappa_1, lower boundary.
    pub lower: f64,
    /// kappa_2, upper boundary.
    pub upper: f64,
    /// Location of the ratio extremum, always inside [lower, upper].
    pub extremum: f64,
    /// True when the payoff is zero everywhere (empty region).
    pub degenerate: bool,
}

impl PayoffRegion {
    fn degenerate_at(xi: f64) -> Self {
        Self {
            lower: xi,
            upper: xi,
            extremum: xi,
            degenerate: true,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        !self.degenerate && x > self.lower && x < self.upper
    }
}

/// Location of the maximum of a unimodal function, via an expanding bracket
/// from `seed` followed by golden-section refinement.
pub fn find_extremum<F: Fn(f64) -> f64>(f: F, seed: f64) -> Result<f64> {
    let mut step = 1.0;
    let mut a = seed - step;
    let mut m = seed;
    let mut b = seed + step;
    let mut fa = f(a);
    let mut fm = f(m);
    let mut fb = f(b);
    let mut doublings = 0;
    while !(fm >= fa && fm >= fb) {
        if fa > fm {
            b = m;
            fb = fm;
            m = a;
            fm = fa;
            step *= 2.0;
            a = m - step;
            fa = f(a);
        } else {
            a = m;
            fa = fm;
            m = b;
            fm = fb;
            step *= 2.0;
            b = m + step;
            fb = f(b);
        }
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(Error::BracketFailure(format!(
                "no extremum bracket after {MAX_DOUBLINGS} doublings from seed {seed}"
            )));
        }
    }

    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..400 {
        if b - a <= EXTREMUM_TOL * (1.0 + 0.5 * (a.abs() + b.abs())) {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    Ok(0.5 * (a + b))
}

/// Root of `f = level` on one monotone flank of a unimodal `f`, with
/// `f(xi) > level` and `f` decreasing in `direction`.
fn flank_root<F: Fn(f64) -> f64>(f: &F, level: f64, xi: f64, direction: f64) -> Result<f64> {
    let mut step = 1.0;
    let mut inner = xi;
    let mut outer = xi + direction * step;
    let mut doublings = 0;
    while f(outer) > level {
        inner = outer;
        step *= 2.0;
        outer = xi + direction * step;
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(Error::BracketFailure(format!(
                "no root bracket after {MAX_DOUBLINGS} doublings from {xi}"
            )));
        }
    }
    let mut lo = inner; // f(lo) > level
    let mut hi = outer; // f(hi) <= level
    while (hi - lo).abs() > ROOT_X_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_strike(strike: f64) -> Result<()> {
    if !strike.is_finite() || strike < 0.0 {
        return Err(Error::Precondition(format!(
            "strike must be finite and >= 0, got {strike}"
        )));
    }
    Ok(())
}

/// Payoff region of the floorlet on the forward rate `F^k` (fixing at
/// `T_{k-1}`, paying at `T_k`) with strike `K`.
///
/// The bond ratio `r(x) = M^{u_{k-1}}(x) / M^{u_k}(x)` at the fixing date
/// has a unique minimum; the payoff is positive where `r < 1 + delta_k K`.
pub fn floorlet_payoff_region(
    model: &CalibratedModel,
    k: usize,
    strike: f64,
) -> Result<PayoffRegion> {
    model.check_bond_index("k", k, 2)?;
    check_strike(strike)?;
    model.require_strictly_decreasing(k - 1, k)?;

    let t = model.tenor().date(k - 1);
    let prev = model.slice(k - 1, t)?;
    let next = model.slice(k, t)?;
    // s = -ln r is unimodal with a maximum; the payoff region is {s > level}.
    let s = |x: f64| next.ln_value(x) - prev.ln_value(x);
    let k_tilde = 1.0 + model.tenor().accrual(k) * strike;
    let level = -k_tilde.ln();

    let xi = find_extremum(&s, model.spec().x0())?;
    if s(xi) <= level + DEGENERACY_TOL {
        return Ok(PayoffRegion::degenerate_at(xi));
    }
    let lower = flank_root(&s, level, xi, -1.0)?;
    let upper = flank_root(&s, level, xi, 1.0)?;
    Ok(PayoffRegion {
        lower,
        upper,
        extremum: xi,
        degenerate: false,
    })
}

/// The unimodal left side of the put-swaption exercise condition,
/// `G(x) = M^{u_beta}/M^{u_alpha} + K sum_k delta_k M^{u_k}/M^{u_alpha}`,
/// as a closure over precomputed martingale exponents.
pub(crate) fn swaption_ratio_fn(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
) -> Result<impl Fn(f64) -> f64> {
    let t = model.tenor().date(alpha);
    let base = model.slice(alpha, t)?;
    let mut terms: Vec<(CoshSlice, f64)> = vec![(model.slice(beta, t)?, 1.0)];
    if strike > 0.0 {
        for k in alpha + 1..=beta {
            terms.push((model.slice(k, t)?, strike * model.tenor().accrual(k)));
        }
    }
    Ok(move |x: f64| {
        let base_ln = base.ln_value(x);
        terms
            .iter()
            .map(|(s, w)| w * (s.ln_value(x) - base_ln).exp())
            .sum()
    })
}

pub(crate) fn check_swaption_indices(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
) -> Result<()> {
    model.check_bond_index("alpha", alpha, 1)?;
    model.check_bond_index("beta", beta, 1)?;
    if alpha >= beta {
        return Err(Error::Precondition(format!(
            "swaption needs alpha < beta, got alpha = {alpha}, beta = {beta}"
        )));
    }
    for k in alpha + 1..=beta {
        if !(model.u(alpha) > model.u(k)) {
            return Err(Error::Precondition(format!(
                "bond parameter u_{k} must be strictly below u_{alpha}"
            )));
        }
    }
    Ok(())
}

/// Payoff region of the put swaption over `[T_alpha, T_beta]` with strike
/// `K`: the set where `G(x) > 1`, `G` being the unimodal exercise ratio.
pub fn swaption_payoff_region(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
) -> Result<PayoffRegion> {
    check_swaption_indices(model, alpha, beta)?;
    check_strike(strike)?;

    let g = swaption_ratio_fn(model, alpha, beta, strike)?;
    let xi = find_extremum(&g, model.spec().x0())?;
    if g(xi) <= 1.0 + DEGENERACY_TOL {
        return Ok(PayoffRegion::degenerate_at(xi));
    }
    let lower = flank_root(&g, 1.0, xi, -1.0)?;
    let upper = flank_root(&g, 1.0, xi, 1.0)?;
    Ok(PayoffRegion {
        lower,
        upper,
        extremum: xi,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{DiscountCurve, TenorStructure};
    use crate::process::{AffineProcessSpec, JumpOuParams};
    use approx::assert_relative_eq;

    fn fig1_model() -> CalibratedModel {
        let spec = AffineProcessSpec::jump_diffusion_ou(
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
            10.0,
        )
        .unwrap();
        let tenor = TenorStructure::regular(0.5, 0.5, 20).unwrap();
        let curve = DiscountCurve::flat_simple_per_period(0.035, &tenor).unwrap();
        CalibratedModel::calibrate(spec, tenor, curve).unwrap()
    }

    fn brownian_model() -> CalibratedModel {
        let spec = AffineProcessSpec::brownian(1.0, 0.0, 0.0, 10.0).unwrap();
        let tenor = TenorStructure::regular(1.0, 1.0, 10).unwrap();
        let curve = DiscountCurve::flat_simple_per_period(0.035, &tenor).unwrap();
        CalibratedModel::calibrate(spec, tenor, curve).unwrap()
    }

    #[test]
    fn extremum_of_quadratic() {
        let xi = find_extremum(|x| -(x - 3.0) * (x - 3.0), 0.0).unwrap();
        assert_relative_eq!(xi, 3.0, epsilon = 1e-9);
        let xi = find_extremum(|x| -(x + 250.0) * (x + 250.0), 0.0).unwrap();
        assert_relative_eq!(xi, -250.0, epsilon = 1e-6);
    }

    #[test]
    fn brownian_ratios_are_even() {
        let model = brownian_model();
        let t = model.tenor().date(3);
        let prev = model.slice(3, t).unwrap();
        let next = model.slice(4, t).unwrap();
        let s = |x: f64| next.ln_value(x) - prev.ln_value(x);
        let xi = find_extremum(s, 0.0).unwrap();
        assert!(xi.abs() < 1e-8, "extremum {xi} should sit at the origin");
    }

    #[test]
    fn floorlet_region_brackets_extremum_with_small_residual() {
        let model = fig1_model();
        for &(k, strike) in &[(2usize, 0.035), (6, 0.05), (11, 0.02)] {
            let region = floorlet_payoff_region(&model, k, strike).unwrap();
            assert!(!region.degenerate);
            assert!(region.lower < region.extremum && region.extremum < region.upper);
            // Residual of the defining equation r(kappa) = 1 + delta K.
            let t = model.tenor().date(k - 1);
            let prev = model.slice(k - 1, t).unwrap();
            let next = model.slice(k, t).unwrap();
            let k_tilde = 1.0 + model.tenor().accrual(k) * strike;
            for kappa in [region.lower, region.upper] {
                let r = (prev.ln_value(kappa) - next.ln_value(kappa)).exp();
                assert!(
                    (k_tilde - r).abs() <= 1e-12,
                    "residual {} at k={k}, K={strike}",
                    (k_tilde - r).abs()
                );
            }
        }
    }

    #[test]
    fn floorlet_region_degenerate_below_rate_bound() {
        let model = fig1_model();
        let bound = model.forward_rate_lower_bound(2).unwrap();
        assert!(bound > 0.0);
        let region = floorlet_payoff_region(&model, 2, bound * 0.5).unwrap();
        assert!(region.degenerate);
        assert_eq!(region.width(), 0.0);
    }

    #[test]
    fn brownian_region_is_symmetric() {
        let model = brownian_model();
        let region = floorlet_payoff_region(&model, 3, 0.05).unwrap();
        assert!(!region.degenerate);
        assert_relative_eq!(region.lower, -region.upper, epsilon = 1e-9);
    }

    #[test]
    fn swaption_region_matches_floorlet_for_single_period() {
        let model = fig1_model();
        let strike = 0.035;
        let alpha = 4;
        let swaption = swaption_payoff_region(&model, alpha, alpha + 1, strike).unwrap();
        let floorlet = floorlet_payoff_region(&model, alpha + 1, strike).unwrap();
        assert_relative_eq!(swaption.lower, floorlet.lower, epsilon = 1e-9);
        assert_relative_eq!(swaption.upper, floorlet.upper, epsilon = 1e-9);
    }

    #[test]
    fn swaption_region_zero_strike_is_degenerate() {
        let model = fig1_model();
        let region = swaption_payoff_region(&model, 2, 8, 0.0).unwrap();
        assert!(region.degenerate);
    }

    #[test]
    fn swaption_region_residuals() {
        let model = fig1_model();
        let alpha = 4;
        let beta = 12;
        // ATM strike from the curve.
        let annuity: f64 = (alpha + 1..=beta)
            .map(|k| model.tenor().accrual(k) * model.curve().discount(k))
            .sum();
        let atm =
            (model.curve().discount(alpha) - model.curve().discount(beta)) / annuity;
        let region = swaption_payoff_region(&model, alpha, beta, atm).unwrap();
        assert!(!region.degenerate);
        assert!(region.lower < region.extremum && region.extremum < region.upper);
        let g = swaption_ratio_fn(&model, alpha, beta, atm).unwrap();
        for kappa in [region.lower, region.upper] {
            assert!((g(kappa) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn swaption_requires_strict_parameters() {
        let model = fig1_model();
        let flat = CalibratedModel::with_u_sequence(
            *model.spec(),
            model.tenor().clone(),
            model.curve().clone(),
            vec![model.u(1); model.tenor().n_params()],
        )
        .unwrap();
        assert!(matches!(
            swaption_payoff_region(&flat, 2, 5, 0.03),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            floorlet_payoff_region(&flat, 3, 0.03),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ratio_unimodal_on_dense_grid() {
        let model = fig1_model();
        let g = swaption_ratio_fn(&model, 3, 9, 0.04).unwrap();
        let xi = find_extremum(&g, model.spec().x0()).unwrap();
        // Non-decreasing left of the extremum, non-increasing right of it,
        // up to float noise, on a wide grid.
        let span = 10.0;
        let n = 10_000;
        let mut prev = g(xi - span);
        for i in 1..=n {
            let x = xi - span + span * i as f64 / n as f64;
            let v = g(x);
            assert!(v >= prev - 1e-12 * prev.abs().max(1.0));
            prev = v;
        }
        for i in 1..=n {
            let x = xi + span * i as f64 / n as f64;
            let v = g(x);
            assert!(v <= prev + 1e-12 * prev.abs().max(1.0));
            prev = v;
        }
        // Tails decay towards zero.
        assert!(g(xi - 10.0 * span) < 0.05 * g(xi));
        assert!(g(xi + 10.0 * span) < 0.05 * g(xi));
    }
}
