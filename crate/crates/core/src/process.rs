//! Driving affine processes on the real line.
//!
//! Both supported families have a conditional moment generating function of
//! exponentially affine form,
//!
//! ```text
//! E[ e^{u X_{s+t}} | X_s = x ] = exp( phi_t(u) + psi_t(u) x ),
//! ```
//!
//! with characteristic exponents known in closed form:
//!
//! * Brownian motion with drift: `psi_t(u) = u`,
//!   `phi_t(u) = drift*u*t + sigma^2 u^2 t / 2`.
//! * Mean-reverting jump diffusion (OU process driven by a Brownian part
//!   plus the difference of two compound Poisson subordinators with
//!   exponential jumps, shifted to level theta): `psi_t(u) = e^{-lambda t} u`
//!   and `phi_t` is the sum of a diffusion term, two logarithmic jump terms
//!   and a linear shift term; see [`AffineProcessSpec::phi`].
//!
//! The extended mgf is finite only for arguments whose real part lies in an
//! open interval around zero; see [`AffineProcessSpec::domain`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::ln_1p_complex;

/// Relative margin kept from the mgf domain boundary; arguments closer to
/// the boundary than this are rejected as ill-conditioned.
pub const DOMAIN_MARGIN: f64 = 1e-6;

/// Brownian motion with constant drift and volatility, started at `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrownianParams {
    /// Volatility per sqrt(year), >= 0.
    pub sigma: f64,
    /// Drift per year.
    pub drift: f64,
}

/// Mean-reverting jump diffusion on the real line.
///
/// `dX = lambda (theta - X) dt + sigma dB + dJ+ - dJ-` where `J+`/`J-` are
/// compound Poisson with intensities `lambda * beta_plus` /
/// `lambda * beta_minus` and exponential jump sizes with rate parameters
/// `alpha_plus` / `alpha_minus` (mean jump 1/alpha).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpOuParams {
    /// Mean-reversion speed per year, > 0.
    pub lambda: f64,
    /// Positive-jump rate parameter, > 0 (mean positive jump 1/alpha_plus).
    pub alpha_plus: f64,
    /// Negative-jump rate parameter, > 0 (mean negative jump 1/alpha_minus).
    pub alpha_minus: f64,
    /// Positive-jump intensity scale, >= 0 (intensity lambda*beta_plus).
    pub beta_plus: f64,
    /// Negative-jump intensity scale, >= 0.
    pub beta_minus: f64,
    /// Diffusion volatility, >= 0.
    pub sigma: f64,
    /// Mean-reversion level.
    pub theta: f64,
}

/// Which family drives the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProcessKind {
    Brownian(BrownianParams),
    JumpDiffusionOu(JumpOuParams),
}

/// A validated driving process together with its start value and the
/// terminal horizon `T` of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineProcessSpec {
    kind: ProcessKind,
    x0: f64,
    horizon: f64,
}

/// Open interval of real mgf arguments; bounds may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MgfDomain {
    pub lo: f64,
    pub hi: f64,
}

impl MgfDomain {
    /// Interval shrunk by the relative ill-conditioning margin.
    pub fn clipped(&self) -> MgfDomain {
        let clip = |b: f64| {
            if b.is_finite() {
                b * (1.0 - DOMAIN_MARGIN)
            } else {
                b
            }
        };
        MgfDomain {
            lo: clip(self.lo),
            hi: clip(self.hi),
        }
    }

    pub fn contains(&self, re_u: f64) -> bool {
        re_u > self.lo && re_u < self.hi
    }

    /// Largest u with both u and -u strictly inside the clipped domain.
    pub fn symmetric_bound(&self) -> f64 {
        let c = self.clipped();
        (-c.lo).min(c.hi)
    }
}

fn require_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            message: format!("must be finite, got {v}"),
        })
    }
}

fn require_non_negative(name: &'static str, v: f64) -> Result<()> {
    require_finite(name, v)?;
    if v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            message: format!("must be >= 0, got {v}"),
        })
    }
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    require_finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            message: format!("must be > 0, got {v}"),
        })
    }
}

impl AffineProcessSpec {
    /// Validates parameters and builds a spec.
    pub fn new(kind: ProcessKind, x0: f64, horizon: f64) -> Result<Self> {
        require_finite("x0", x0)?;
        require_positive("horizon", horizon)?;
        match kind {
            ProcessKind::Brownian(p) => {
                require_non_negative("sigma", p.sigma)?;
                require_finite("drift", p.drift)?;
            }
            ProcessKind::JumpDiffusionOu(p) => {
                require_positive("lambda", p.lambda)?;
                require_non_negative("sigma", p.sigma)?;
                require_finite("theta", p.theta)?;
                require_non_negative("beta_plus", p.beta_plus)?;
                require_non_negative("beta_minus", p.beta_minus)?;
                if p.beta_plus > 0.0 || p.beta_minus > 0.0 {
                    require_positive("alpha_plus", p.alpha_plus)?;
                    require_positive("alpha_minus", p.alpha_minus)?;
                }
            }
        }
        Ok(Self { kind, x0, horizon })
    }

    /// Brownian motion with drift, started at `x0`, horizon `T`.
    pub fn brownian(sigma: f64, drift: f64, x0: f64, horizon: f64) -> Result<Self> {
        Self::new(ProcessKind::Brownian(BrownianParams { sigma, drift }), x0, horizon)
    }

    /// Jump-diffusion OU process started at `x0`, horizon `T`.
    pub fn jump_diffusion_ou(params: JumpOuParams, x0: f64, horizon: f64) -> Result<Self> {
        Self::new(ProcessKind::JumpDiffusionOu(params), x0, horizon)
    }

    pub fn kind(&self) -> &ProcessKind {
        &self.kind
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Terminal horizon `T` in years.
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Real section of the set where the extended mgf stays finite up to the
    /// horizon: all of R for Brownian motion and for an OU process without
    /// jumps, `(-alpha_minus, alpha_plus)` as soon as a jump leg is active.
    pub fn domain(&self) -> MgfDomain {
        match self.kind {
            ProcessKind::Brownian(_) => MgfDomain {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
            ProcessKind::JumpDiffusionOu(p) => {
                if p.beta_plus > 0.0 || p.beta_minus > 0.0 {
                    MgfDomain {
                        lo: -p.alpha_minus,
                        hi: p.alpha_plus,
                    }
                } else {
                    MgfDomain {
                        lo: f64::NEG_INFINITY,
                        hi: f64::INFINITY,
                    }
                }
            }
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(0.0..=self.horizon * (1.0 + 1e-12)).contains(&t) {
            return Err(Error::Precondition(format!(
                "time {t} outside [0, {}]",
                self.horizon
            )));
        }
        Ok(())
    }

    /// Rejects arguments outside the domain or too close to its boundary.
    pub(crate) fn check_argument(&self, re_u: f64) -> Result<()> {
        let d = self.domain();
        if !d.contains(re_u) {
            return Err(Error::DomainViolation {
                re_u,
                lo: d.lo,
                hi: d.hi,
            });
        }
        let c = d.clipped();
        if re_u > c.hi || re_u < c.lo {
            return Err(Error::IllConditioned {
                re_u,
                epsilon: DOMAIN_MARGIN,
            });
        }
        Ok(())
    }

    /// psi exponent: `u` for Brownian motion, `e^{-lambda t} u` for OU.
    pub fn psi(&self, t: f64, u: Complex64) -> Result<Complex64> {
        self.check_time(t)?;
        self.check_argument(u.re)?;
        Ok(self.psi_unchecked(t, u))
    }

    pub(crate) fn psi_unchecked(&self, t: f64, u: Complex64) -> Complex64 {
        match self.kind {
            ProcessKind::Brownian(_) => u,
            ProcessKind::JumpDiffusionOu(p) => (-p.lambda * t).exp() * u,
        }
    }

    /// phi exponent.
    ///
    /// For the jump-diffusion OU process this is
    ///
    /// ```text
    /// sigma^2 u^2 (1 - e^{-2 lambda t}) / (4 lambda)
    ///   + beta_plus  * ln( (alpha_plus  - e^{-lambda t} u) / (alpha_plus  - u) )
    ///   + beta_minus * ln( (alpha_minus + e^{-lambda t} u) / (alpha_minus + u) )
    ///   + theta u (1 - e^{-lambda t}),
    /// ```
    ///
    /// with each log ratio evaluated in log1p form so the value stays on the
    /// principal branch; both ratio factors lie in the right half-plane for
    /// admissible arguments.
    pub fn phi(&self, t: f64, u: Complex64) -> Result<Complex64> {
        self.check_time(t)?;
        self.check_argument(u.re)?;
        Ok(self.phi_unchecked(t, u))
    }

    pub(crate) fn phi_unchecked(&self, t: f64, u: Complex64) -> Complex64 {
        match self.kind {
            ProcessKind::Brownian(p) => {
                u * p.drift * t + u * u * (0.5 * p.sigma * p.sigma * t)
            }
            ProcessKind::JumpDiffusionOu(p) => {
                // one_m_q = 1 - e^{-lambda t}, computed without cancellation
                let one_m_q = -(-p.lambda * t).exp_m1();
                let mut phi = Complex64::new(0.0, 0.0);
                if p.sigma > 0.0 {
                    let one_m_q2 = -(-2.0 * p.lambda * t).exp_m1();
                    phi += u * u * (p.sigma * p.sigma * one_m_q2 / (4.0 * p.lambda));
                }
                if p.beta_plus > 0.0 {
                    phi += p.beta_plus * ln_1p_complex(u * one_m_q / (p.alpha_plus - u));
                }
                if p.beta_minus > 0.0 {
                    phi += p.beta_minus * ln_1p_complex(-u * one_m_q / (p.alpha_minus + u));
                }
                if p.theta != 0.0 {
                    phi += u * (p.theta * one_m_q);
                }
                phi
            }
        }
    }

    /// Conditional mgf over a time step `dt`:
    /// `E[e^{u X_{s+dt}} | X_s = x] = exp(phi_dt(u) + psi_dt(u) x)`.
    pub fn mgf(&self, dt: f64, u: Complex64, x: f64) -> Result<Complex64> {
        if dt < 0.0 {
            return Err(Error::Precondition(format!("negative time step {dt}")));
        }
        self.check_time(dt)?;
        self.check_argument(u.re)?;
        Ok(self.mgf_unchecked(dt, u, x))
    }

    pub(crate) fn mgf_unchecked(&self, dt: f64, u: Complex64, x: f64) -> Complex64 {
        (self.phi_unchecked(dt, u) + self.psi_unchecked(dt, u) * x).exp()
    }

    /// Real-argument variants; exact because every complex operation on
    /// numbers with zero imaginary part keeps the imaginary part at zero.
    pub fn phi_real(&self, t: f64, u: f64) -> Result<f64> {
        Ok(self.phi(t, Complex64::new(u, 0.0))?.re)
    }

    pub fn psi_real(&self, t: f64, u: f64) -> Result<f64> {
        Ok(self.psi(t, Complex64::new(u, 0.0))?.re)
    }

    /// Mass and location of a deterministic (atomic) transition component,
    /// when one exists over the step `dt`.
    ///
    /// A diffusion-free process conditioned on seeing no jump moves
    /// deterministically, leaving an atom in the transition law. The Fourier
    /// pricer splits this atom off so the remaining mgf slice decays in the
    /// integration variable.
    pub(crate) fn atomic_component(&self, dt: f64, x: f64) -> Option<(f64, f64)> {
        match self.kind {
            ProcessKind::Brownian(p) => {
                if p.sigma == 0.0 {
                    Some((1.0, x + p.drift * dt))
                } else {
                    None
                }
            }
            ProcessKind::JumpDiffusionOu(p) => {
                if p.sigma == 0.0 {
                    let q = (-p.lambda * dt).exp();
                    let mass = (-p.lambda * (p.beta_plus + p.beta_minus) * dt).exp();
                    Some((mass, p.theta + (x - p.theta) * q))
                } else {
                    None
                }
            }
        }
    }
}
