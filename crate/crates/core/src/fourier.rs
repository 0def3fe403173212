//! Semi-analytic option prices by one-dimensional Fourier inversion.
//!
//! A floorlet or put-swaption payoff, restricted to its payoff region
//! `(kappa_1, kappa_2)`, is a finite sum of exponentials of the driving
//! state that vanishes at both boundaries. Its analytic Fourier transform
//! is available in closed form, and the price is
//!
//! ```text
//! price = P(0,T) / pi * int_0^inf Re( M(R + i w) * fhat(w - i R) ) dw,
//! ```
//!
//! where `M` is the conditional mgf of the driving state at the fixing
//! date and `R` a dampening shift inside the mgf domain, away from the
//! transform poles. Caplets and payer swaptions follow by parity.
//!
//! Two numerical refinements keep the inversion well conditioned:
//!
//! * for diffusion-free processes the transition law has an atom (the
//!   no-jump branch moves deterministically); its contribution is priced
//!   directly and only the remaining, decaying mgf slice is integrated;
//! * when the payoff region carries essentially the whole mass of the
//!   transition law (very deep in-the-money strikes), the indicator is
//!   dropped and the price collapses to a bond-price combination, with a
//!   Chernoff bound on the discarded tails as the error certificate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{CalibratedModel, CoshSlice};
use crate::numeric::{exp_diff_quotient, integrate_panel};
use crate::unimodal::{self, PayoffRegion};

/// Minimum distance kept between the dampening parameter and any pole
/// image of the payoff transform.
const POLE_CLEARANCE: f64 = 1e-3;

/// Price with diagnostics of the inversion that produced it.
#[derive(Debug, Clone, Copy)]
pub struct PricingResult {
    /// Price per unit notional.
    pub price: f64,
    /// Payoff region boundaries used by the transform.
    pub kappa: PayoffRegion,
    /// Dampening parameter R of the integration contour (0 when no
    /// integration was needed).
    pub dampening: f64,
    /// Accumulated quadrature error estimate, in price units.
    pub integral_error_estimate: f64,
    /// Bound on the discarded integration tail, in price units.
    pub truncation_bound: f64,
}

impl PricingResult {
    fn exact(price: f64, kappa: PayoffRegion) -> Self {
        Self {
            price,
            kappa,
            dampening: 0.0,
            integral_error_estimate: 0.0,
            truncation_bound: 0.0,
        }
    }
}

/// One exponential payoff component `coef * e^{rate * x}`.
#[derive(Debug, Clone, Copy)]
struct ExpTerm {
    coef: f64,
    rate: f64,
}

fn cosh_terms(slice: &CoshSlice, weight: f64, out: &mut Vec<ExpTerm>) {
    out.push(ExpTerm {
        coef: weight * 0.5 * slice.a0.exp(),
        rate: slice.a1,
    });
    out.push(ExpTerm {
        coef: weight * 0.5 * slice.b0.exp(),
        rate: slice.b1,
    });
}

/// Payoff components of the floorlet on `F^k`:
/// `(1 + delta_k K) M^{u_k}(x) - M^{u_{k-1}}(x)` at the fixing date.
fn floorlet_terms(model: &CalibratedModel, k: usize, strike: f64) -> Result<Vec<ExpTerm>> {
    let t = model.tenor().date(k - 1);
    let k_tilde = 1.0 + model.tenor().accrual(k) * strike;
    let mut terms = Vec::with_capacity(4);
    cosh_terms(&model.slice(k, t)?, k_tilde, &mut terms);
    cosh_terms(&model.slice(k - 1, t)?, -1.0, &mut terms);
    Ok(terms)
}

/// Payoff components of the put swaption over `[T_alpha, T_beta]`:
/// `M^{u_beta} - M^{u_alpha} + K sum_k delta_k M^{u_k}` at `T_alpha`.
fn swaption_terms(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
) -> Result<Vec<ExpTerm>> {
    let t = model.tenor().date(alpha);
    let mut terms = Vec::with_capacity(2 * (beta - alpha) + 4);
    cosh_terms(&model.slice(beta, t)?, 1.0, &mut terms);
    cosh_terms(&model.slice(alpha, t)?, -1.0, &mut terms);
    if strike != 0.0 {
        for k in alpha + 1..=beta {
            cosh_terms(
                &model.slice(k, t)?,
                strike * model.tenor().accrual(k),
                &mut terms,
            );
        }
    }
    Ok(terms)
}

fn payoff_value(terms: &[ExpTerm], region: &PayoffRegion, x: f64) -> f64 {
    if !region.contains(x) {
        return 0.0;
    }
    terms.iter().map(|t| t.coef * (t.rate * x).exp()).sum()
}

/// Analytic Fourier transform of the exponential sum restricted to the
/// payoff region, assuming the sum vanishes at both boundaries:
/// `fhat(z) = 1/(iz) sum_k C_k v_k / (v_k - iz) (e^{(v_k-iz)k2} - e^{(v_k-iz)k1})`.
///
/// Terms with `v_k = 0` drop out of this representation exactly because
/// the boundary values cancel.
fn transform_at(terms: &[ExpTerm], region: &PayoffRegion, z: Complex64) -> Complex64 {
    let iz = Complex64::new(-z.im, z.re);
    let mut sum = Complex64::new(0.0, 0.0);
    for t in terms {
        if t.coef == 0.0 || t.rate == 0.0 {
            continue;
        }
        let s = Complex64::new(t.rate, 0.0) - iz;
        sum += t.coef * t.rate * exp_diff_quotient(s, region.lower, region.upper);
    }
    sum / iz
}

/// Transform kernel of a single cosh martingale over the payoff region:
///
/// ```text
/// sum_{s = +-u} e^{phi(s)} psi(s) / (2 (z + psi(s)))
///               ( e^{(z + psi(s)) k2} - e^{(z + psi(s)) k1} ),
/// ```
///
/// exponents taken at horizon `T - t`. The removable singularity at
/// `z + psi = 0` is evaluated by series.
pub fn cosh_segment_transform(
    model: &CalibratedModel,
    t: f64,
    z: Complex64,
    u: f64,
    region: &PayoffRegion,
) -> Result<Complex64> {
    let slice = CoshSlice::new(model.spec(), u, t)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (log_c, v) in [(slice.a0, slice.a1), (slice.b0, slice.b1)] {
        if v == 0.0 {
            continue;
        }
        let s = z + v;
        sum += 0.5 * log_c.exp() * v * exp_diff_quotient(s, region.lower, region.upper);
    }
    Ok(sum)
}

/// Analytic Fourier transform of the floorlet payoff function.
pub fn floorlet_payoff_transform(
    model: &CalibratedModel,
    k: usize,
    strike: f64,
    z: Complex64,
    region: &PayoffRegion,
) -> Result<Complex64> {
    let terms = floorlet_terms(model, k, strike)?;
    Ok(transform_at(&terms, region, z))
}

/// Analytic Fourier transform of the put-swaption payoff function.
pub fn swaption_payoff_transform(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
    z: Complex64,
    region: &PayoffRegion,
) -> Result<Complex64> {
    let terms = swaption_terms(model, alpha, beta, strike)?;
    Ok(transform_at(&terms, region, z))
}

/// Pole images of the payoff transform on the dampening axis:
/// `{0} U {psi_{T - T_exp}(+-u_j)}` over the whole calibrated sequence.
fn pole_images(model: &CalibratedModel, expiry_index: usize) -> Result<Vec<f64>> {
    let dt = model.spec().horizon() - model.tenor().date(expiry_index);
    let mut poles = vec![0.0];
    for j in 1..=model.tenor().n_params() {
        let v = model.spec().psi_real(dt, model.u(j))?;
        poles.push(v);
        poles.push(-v);
    }
    Ok(poles)
}

fn min_pole_distance(poles: &[f64], r: f64) -> f64 {
    poles
        .iter()
        .map(|p| (r - p).abs())
        .fold(f64::INFINITY, f64::min)
}

/// A negative dampening parameter in the interior of the mgf domain with
/// distance at least 1e-3 from every transform pole image.
///
/// Starts from `-min(1, |domain lower bound| / 2)` and steps downward in
/// increments of 1e-3 until clear of the pole set.
pub fn choose_dampening(model: &CalibratedModel, expiry_index: usize) -> Result<f64> {
    model.check_bond_index("expiry_index", expiry_index, 1)?;
    let poles = pole_images(model, expiry_index)?;
    let lo = model.spec().domain().clipped().lo;
    let mut r = -(1.0_f64).min(0.5 * lo.abs());
    let mut steps = 0;
    while min_pole_distance(&poles, r) < POLE_CLEARANCE {
        r -= POLE_CLEARANCE;
        steps += 1;
        if r <= lo || steps > 100_000 {
            return Err(Error::NoAdmissibleDampening(format!(
                "pole set leaves no room below {r}"
            )));
        }
    }
    if r <= lo {
        return Err(Error::NoAdmissibleDampening(format!(
            "domain lower bound {lo} excludes every candidate"
        )));
    }
    Ok(r)
}

fn validate_dampening(model: &CalibratedModel, expiry_index: usize, r: f64) -> Result<()> {
    if !r.is_finite() || r >= 0.0 {
        return Err(Error::NoAdmissibleDampening(format!(
            "dampening must be a finite negative number, got {r}"
        )));
    }
    model.spec().check_argument(r)?;
    let poles = pole_images(model, expiry_index)?;
    if min_pole_distance(&poles, r) < POLE_CLEARANCE {
        return Err(Error::NoAdmissibleDampening(format!(
            "{r} is within {POLE_CLEARANCE} of a transform pole"
        )));
    }
    Ok(())
}

/// Options of the inversion integrator.
#[derive(Debug, Clone, Copy)]
pub struct InversionOptions {
    /// Target relative accuracy of the quadrature.
    pub rel_tol: f64,
    /// Tail truncation threshold relative to the running integral.
    pub trunc_tol: f64,
    /// Width of the payoff region; sets the initial panel length
    /// `50 / (width + 1)` matching the oscillation wavelength of the
    /// transform.
    pub osc_width: f64,
    /// Hard budget on integrand evaluations.
    pub max_evals: usize,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            trunc_tol: 1e-12,
            osc_width: 0.0,
            max_evals: 6_000_000,
        }
    }
}

/// Quadrature outcome of [`integrate_inversion`].
#[derive(Debug, Clone, Copy)]
pub struct InversionOutcome {
    /// `(1/pi) int_0^inf Re(mgf_slice(w) * fhat_slice(w)) dw`.
    pub value: f64,
    pub error_estimate: f64,
    pub truncation_bound: f64,
    pub omega_max: f64,
    pub evals: usize,
}

/// Fourier inversion integral over the positive half-axis.
///
/// Marches fixed-width panels (each refined adaptively with a Gauss-Kronrod
/// rule) and stops once the integrated tail beyond the last panel is
/// provably below `trunc_tol` times the running integral. Three tail bounds
/// are maintained: the `C / omega` envelope bound from the `O(w^-2)` decay
/// of the transform, an algebraic-decay fit of the panel contributions, and
/// an oscillation band once consecutive panels cancel.
pub fn integrate_inversion<M, F>(
    mgf_slice: M,
    fhat_slice: F,
    opts: &InversionOptions,
) -> Result<InversionOutcome>
where
    M: Fn(f64) -> Complex64,
    F: Fn(f64) -> Complex64,
{
    use std::cell::Cell;

    let envelope = Cell::new(0.0_f64);
    let integrand = |omega: f64| {
        let v = (mgf_slice(omega) * fhat_slice(omega)).re;
        let weighted = v.abs() * omega * omega;
        if weighted > envelope.get() {
            envelope.set(weighted);
        }
        v
    };

    let width = (50.0 / (opts.osc_width + 1.0)).clamp(0.25, 50.0);
    let window = 6usize;

    let mut acc = 0.0_f64;
    let mut acc_err = 0.0_f64;
    let mut evals = 0usize;
    let mut peak_contribution = 0.0_f64;
    let mut max_partial = 0.0_f64;
    let mut contributions: Vec<f64> = Vec::new();
    let mut partials: Vec<f64> = Vec::new();
    let mut prev_band = f64::INFINITY;

    let max_panels = 400_000usize;
    for n in 0..max_panels {
        let a = n as f64 * width;
        let b = a + width;
        let scale = acc.abs().max(peak_contribution).max(1e-300);
        let panel_tol = opts.rel_tol * scale / (8.0 * ((n + 1) * (n + 1)) as f64);
        envelope.set(0.0);
        let panel = integrate_panel(&integrand, a, b, panel_tol, 28);
        acc += panel.value;
        acc_err += panel.error;
        evals += panel.evals;
        peak_contribution = peak_contribution.max(panel.value.abs());
        max_partial = max_partial.max(acc.abs());
        contributions.push(panel.value);
        partials.push(acc);

        if evals > opts.max_evals {
            return Err(Error::IntegrationAccuracy {
                estimate: acc / std::f64::consts::PI,
                error_bound: (acc_err + envelope.get() / b) / std::f64::consts::PI,
                requested: opts.rel_tol,
            });
        }

        // Envelope bound: integrand below C / w^2 beyond b leaves C / b.
        let tail_env = envelope.get() / b;

        // Algebraic fit of |contribution| ~ w^-p over two trailing windows.
        let tail_alg = algebraic_tail(&contributions, width, window);

        // Oscillation band: once consecutive panels cancel, the limit stays
        // within the band swept by the recent partial sums.
        let tail_band = oscillation_band(&contributions, &partials, window, &mut prev_band);

        let tail = tail_env.min(tail_alg).min(tail_band);
        let target = (opts.trunc_tol * acc.abs()).max(1e-16 * max_partial);
        if n + 1 >= 4 && tail <= target {
            let pi = std::f64::consts::PI;
            let value = acc / pi;
            let error_estimate = (acc_err + tail) / pi;
            let requested = opts.rel_tol * value.abs() + 1e-15 * max_partial / pi;
            if acc_err / pi > requested {
                return Err(Error::IntegrationAccuracy {
                    estimate: value,
                    error_bound: error_estimate,
                    requested: opts.rel_tol,
                });
            }
            return Ok(InversionOutcome {
                value,
                error_estimate,
                truncation_bound: tail / pi,
                omega_max: b,
                evals,
            });
        }
    }
    Err(Error::IntegrationAccuracy {
        estimate: acc / std::f64::consts::PI,
        error_bound: f64::INFINITY,
        requested: opts.rel_tol,
    })
}

/// Tail estimate from a power-law fit of trailing panel contributions:
/// with |d_n| ~ w^-p and p > 1, the remaining mass is about
/// `|d_n| * omega_n / (width (p - 1))`.
fn algebraic_tail(contributions: &[f64], width: f64, window: usize) -> f64 {
    let n = contributions.len();
    if n < 2 * window + 2 {
        return f64::INFINITY;
    }
    let recent: f64 = contributions[n - window..]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()));
    let older: f64 = contributions[n - 2 * window..n - window]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()));
    if recent == 0.0 {
        return 0.0;
    }
    if recent >= older {
        return f64::INFINITY;
    }
    let omega_recent = (n as f64 - 0.5 * window as f64) * width;
    let omega_older = omega_recent - window as f64 * width;
    if omega_older <= 0.0 {
        return f64::INFINITY;
    }
    let p = (older / recent).ln() / (omega_recent / omega_older).ln();
    if p <= 1.2 {
        return f64::INFINITY;
    }
    5.0 * recent * (n as f64 * width) / (width * (p - 1.0))
}

/// Tail estimate for strongly cancelling contributions: when the trailing
/// window sums to a small fraction of its absolute mass and the band swept
/// by the partial sums shrinks, the limit lies within that band.
fn oscillation_band(
    contributions: &[f64],
    partials: &[f64],
    window: usize,
    prev_band: &mut f64,
) -> f64 {
    let n = contributions.len();
    if n < 2 * window + 2 {
        return f64::INFINITY;
    }
    let recent = &contributions[n - window..];
    let signed: f64 = recent.iter().sum();
    let absolute: f64 = recent.iter().map(|d| d.abs()).sum();
    if absolute == 0.0 {
        return 0.0;
    }
    if signed.abs() > 0.25 * absolute {
        return f64::INFINITY;
    }
    let band_hi = partials[n - window..]
        .iter()
        .fold(f64::NEG_INFINITY, |m, &s| m.max(s));
    let band_lo = partials[n - window..]
        .iter()
        .fold(f64::INFINITY, |m, &s| m.min(s));
    let band = band_hi - band_lo;
    if band > *prev_band {
        return f64::INFINITY;
    }
    *prev_band = band;
    let last = contributions[n - 1].abs();
    2.0 * band + 2.0 * last
}

/// Chernoff bound on the payoff-sum expectation outside the payoff region,
/// used to certify the deep in-the-money shortcut.
fn outside_region_bound(
    model: &CalibratedModel,
    t_exp: f64,
    terms: &[ExpTerm],
    region: &PayoffRegion,
) -> f64 {
    let spec = model.spec();
    let clipped = spec.domain().clipped();
    let x0 = spec.x0();
    let mut total = 0.0;
    for term in terms {
        let v = term.rate;
        let mut right = f64::INFINITY;
        let mut left = f64::INFINITY;
        for frac in [0.25, 0.5, 0.9] {
            let s_hi = if clipped.hi.is_finite() {
                frac * (clipped.hi - v)
            } else {
                frac * 80.0
            };
            if s_hi > 0.0 {
                if let (Ok(phi), Ok(psi)) =
                    (spec.phi_real(t_exp, v + s_hi), spec.psi_real(t_exp, v + s_hi))
                {
                    right = right.min((-s_hi * region.upper + phi + psi * x0).exp());
                }
            }
            let s_lo = if clipped.lo.is_finite() {
                frac * (v - clipped.lo)
            } else {
                frac * 80.0
            };
            if s_lo > 0.0 {
                if let (Ok(phi), Ok(psi)) =
                    (spec.phi_real(t_exp, v - s_lo), spec.psi_real(t_exp, v - s_lo))
                {
                    left = left.min((s_lo * region.lower + phi + psi * x0).exp());
                }
            }
        }
        total += term.coef.abs() * (right + left);
    }
    total
}

/// Shared inversion drive for floorlets and put swaptions.
fn price_with_dampening_inner(
    model: &CalibratedModel,
    expiry_index: usize,
    terms: &[ExpTerm],
    region: PayoffRegion,
    dampening: f64,
) -> Result<PricingResult> {
    let spec = model.spec();
    let t_exp = model.tenor().date(expiry_index);
    let x0 = spec.x0();
    let p_terminal = model.terminal_discount();

    // Expectation of the payoff sum without the indicator: exact by the
    // martingale property of the components.
    let mut full = 0.0;
    for term in terms {
        let phi = spec.phi_real(t_exp, term.rate)?;
        let psi = spec.psi_real(t_exp, term.rate)?;
        full += term.coef * (phi + psi * x0).exp();
    }
    let outside = outside_region_bound(model, t_exp, terms, &region);
    if full > 0.0 && outside <= 1e-9 * full {
        // The region carries essentially the whole transition mass; the
        // price is the bond combination up to the certified tail bound.
        let mut result = PricingResult::exact(p_terminal * full, region);
        result.truncation_bound = p_terminal * outside;
        result.integral_error_estimate = p_terminal * outside;
        return Ok(result);
    }

    let atom = spec.atomic_component(t_exp, x0);
    let mgf = |omega: f64| {
        let z = Complex64::new(dampening, omega);
        let m = spec.mgf_unchecked(t_exp, z, x0);
        match atom {
            Some((mass, location)) => m - mass * (z * location).exp(),
            None => m,
        }
    };
    let fhat = |omega: f64| transform_at(terms, &region, Complex64::new(omega, -dampening));

    let opts = InversionOptions {
        osc_width: region.width(),
        ..InversionOptions::default()
    };
    let outcome = integrate_inversion(mgf, fhat, &opts)?;
    let atom_value = atom
        .map(|(mass, location)| mass * payoff_value(terms, &region, location))
        .unwrap_or(0.0);

    Ok(PricingResult {
        price: p_terminal * (outcome.value + atom_value),
        kappa: region,
        dampening,
        integral_error_estimate: p_terminal * outcome.error_estimate,
        truncation_bound: p_terminal * outcome.truncation_bound,
    })
}

fn price_region_instrument(
    model: &CalibratedModel,
    expiry_index: usize,
    terms: &[ExpTerm],
    region: PayoffRegion,
    dampening: Option<f64>,
) -> Result<PricingResult> {
    if region.degenerate {
        return Ok(PricingResult::exact(0.0, region));
    }
    let r = match dampening {
        Some(r) => {
            validate_dampening(model, expiry_index, r)?;
            r
        }
        None => {
            let r0 = choose_dampening(model, expiry_index)?;
            // Cap |R| so that e^{|R| kappa} cannot blow up the cancellation
            // budget of the inversion for wide payoff regions, then step
            // away from any pole uncovered by the cap.
            let kappa_max = region.lower.abs().max(region.upper.abs());
            let cap = (4.0 / (1.0 + kappa_max)).clamp(0.02, 1.0);
            let mut r = -r0.abs().min(cap);
            let poles = pole_images(model, expiry_index)?;
            let lo = model.spec().domain().clipped().lo;
            while min_pole_distance(&poles, r) < POLE_CLEARANCE {
                r -= POLE_CLEARANCE;
                if r <= lo {
                    return Err(Error::NoAdmissibleDampening(format!(
                        "pole set leaves no room below {r}"
                    )));
                }
            }
            r
        }
    };
    price_with_dampening_inner(model, expiry_index, terms, region, r)
}

/// Floorlet (put on the simple forward rate `F^k`, fixing at `T_{k-1}`,
/// paying at `T_k`) priced at time zero.
pub fn price_floorlet(model: &CalibratedModel, k: usize, strike: f64) -> Result<PricingResult> {
    let region = unimodal::floorlet_payoff_region(model, k, strike)?;
    let terms = floorlet_terms(model, k, strike)?;
    price_region_instrument(model, k - 1, &terms, region, None)
}

/// Floorlet price with an explicitly chosen dampening parameter.
pub fn price_floorlet_with_dampening(
    model: &CalibratedModel,
    k: usize,
    strike: f64,
    dampening: f64,
) -> Result<PricingResult> {
    let region = unimodal::floorlet_payoff_region(model, k, strike)?;
    let terms = floorlet_terms(model, k, strike)?;
    price_region_instrument(model, k - 1, &terms, region, Some(dampening))
}

/// Caplet on `F^k` by put/call parity:
/// `Cpl = Flt + P(0,T_{k-1}) - (1 + delta_k K) P(0,T_k)`.
pub fn price_caplet(model: &CalibratedModel, k: usize, strike: f64) -> Result<PricingResult> {
    let floorlet = price_floorlet(model, k, strike)?;
    let k_tilde = 1.0 + model.tenor().accrual(k) * strike;
    let parity =
        model.curve().discount(k - 1) - k_tilde * model.curve().discount(k);
    Ok(PricingResult {
        price: floorlet.price + parity,
        ..floorlet
    })
}

/// Put (receiver) swaption over `[T_alpha, T_beta]` priced at time zero.
pub fn price_put_swaption(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
) -> Result<PricingResult> {
    let region = unimodal::swaption_payoff_region(model, alpha, beta, strike)?;
    let terms = swaption_terms(model, alpha, beta, strike)?;
    price_region_instrument(model, alpha, &terms, region, None)
}

/// Put swaption price with an explicitly chosen dampening parameter.
pub fn price_put_swaption_with_dampening(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
    dampening: f64,
) -> Result<PricingResult> {
    let region = unimodal::swaption_payoff_region(model, alpha, beta, strike)?;
    let terms = swaption_terms(model, alpha, beta, strike)?;
    price_region_instrument(model, alpha, &terms, region, Some(dampening))
}

/// Payer swaption by payer/receiver parity:
/// `payer = put + P(0,T_alpha) - P(0,T_beta) - K sum delta_k P(0,T_k)`.
pub fn price_payer_swaption(
    model: &CalibratedModel,
    alpha: usize,
    beta: usize,
    strike: f64,
) -> Result<PricingResult> {
    let put = price_put_swaption(model, alpha, beta, strike)?;
    let annuity: f64 = (alpha + 1..=beta)
        .map(|k| model.tenor().accrual(k) * model.curve().discount(k))
        .sum();
    let parity = model.curve().discount(alpha) - model.curve().discount(beta) - strike * annuity;
    Ok(PricingResult {
        price: put.price + parity,
        ..put
    })
}

/// Forward swap rate implied by the initial curve.
pub fn forward_swap_rate(model: &CalibratedModel, alpha: usize, beta: usize) -> Result<f64> {
    unimodal::check_swaption_indices(model, alpha, beta)?;
    let annuity: f64 = (alpha + 1..=beta)
        .map(|k| model.tenor().accrual(k) * model.curve().discount(k))
        .sum();
    Ok((model.curve().discount(alpha) - model.curve().discount(beta)) / annuity)
}
