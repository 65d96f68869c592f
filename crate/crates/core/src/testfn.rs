//! Compactly supported continuous test functions used in correlation sums.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sinekernel::quadrature::QuadratureRule;

/// Largest arity accepted by correlation sums.
pub const MAX_ARITY: usize = 6;

/// A one-dimensional continuous profile with compact support.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// Peak `height` at `center`, falling linearly to zero at `center ± half_width`.
    Tent {
        center: f64,
        half_width: f64,
        height: f64,
    },
    /// Smooth bump `exp(1 - 1/(1 - u^2))`, `u = (x - center)/half_width`, peak value 1.
    Bump { center: f64, half_width: f64 },
    /// Continuous approximation of the indicator of `[lo, hi]`: equal to 1 on
    /// `[lo, hi]` with linear shoulders of width `shoulder` on each side.
    Plateau { lo: f64, hi: f64, shoulder: f64 },
    /// Pointwise product of profiles.
    Product(Vec<Profile>),
}

impl Profile {
    pub fn tent(center: f64, half_width: f64) -> Self {
        Profile::Tent {
            center,
            half_width,
            height: 1.0,
        }
    }

    /// Tent with unit integral.
    pub fn unit_tent(center: f64, half_width: f64) -> Self {
        Profile::Tent {
            center,
            half_width,
            height: 1.0 / half_width,
        }
    }

    pub fn bump(center: f64, half_width: f64) -> Self {
        Profile::Bump { center, half_width }
    }

    /// Tent approximation of the indicator of `[lo, hi]` with shoulder `eps`.
    pub fn indicator(lo: f64, hi: f64, eps: f64) -> Self {
        Profile::Plateau {
            lo,
            hi,
            shoulder: eps,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Profile::Tent {
                center,
                half_width,
                height,
            } => {
                let u = (x - center).abs() / half_width;
                if u < 1.0 {
                    height * (1.0 - u)
                } else {
                    0.0
                }
            }
            Profile::Bump { center, half_width } => {
                let u = (x - center) / half_width;
                let q = 1.0 - u * u;
                if q > 0.0 {
                    (1.0 - 1.0 / q).exp()
                } else {
                    0.0
                }
            }
            Profile::Plateau { lo, hi, shoulder } => {
                if x >= lo && x <= hi {
                    1.0
                } else if x < lo {
                    (1.0 - (lo - x) / shoulder).max(0.0)
                } else {
                    (1.0 - (x - hi) / shoulder).max(0.0)
                }
            }
            Profile::Product(ref parts) => parts.iter().map(|p| p.eval(x)).product(),
        }
    }

    /// Closed interval outside of which the profile vanishes.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Profile::Tent {
                center, half_width, ..
            }
            | Profile::Bump { center, half_width } => (center - half_width, center + half_width),
            Profile::Plateau { lo, hi, shoulder } => (lo - shoulder, hi + shoulder),
            Profile::Product(ref parts) => parts.iter().fold(
                (f64::NEG_INFINITY, f64::INFINITY),
                |(lo, hi), p| {
                    let (a, b) = p.support();
                    (lo.max(a), hi.min(b))
                },
            ),
        }
    }

    /// Largest `|x|` at which the profile can be nonzero.
    pub fn reach(&self) -> f64 {
        let (a, b) = self.support();
        if a > b {
            return 0.0;
        }
        a.abs().max(b.abs())
    }

    /// `∫ profile(x) dx`, exact for tents and plateaus.
    pub fn integral(&self) -> f64 {
        match *self {
            Profile::Tent {
                half_width, height, ..
            } => height * half_width,
            Profile::Plateau { lo, hi, shoulder } => (hi - lo) + shoulder,
            _ => {
                let (a, b) = self.support();
                if a >= b {
                    return 0.0;
                }
                let rule = QuadratureRule::gauss_legendre(48);
                // piecewise in 16 panels; the bump has steep flanks near its ends
                let panels = 16;
                let h = (b - a) / panels as f64;
                (0..panels)
                    .map(|i| {
                        let lo = a + i as f64 * h;
                        rule.integrate(lo, lo + h, |x| self.eval(x))
                    })
                    .sum()
            }
        }
    }
}

#[derive(Clone)]
enum Rule {
    Product(Vec<Profile>),
    Pair { window: Profile, separation: Profile },
    Custom(Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>),
}

/// Family tag of a [`TestFunction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Tent,
    Bump,
    ProductOf1d,
    Pair,
    Custom,
}

/// A continuous function on `R^k` vanishing outside the box `[-A, A]^k`.
#[derive(Clone)]
pub struct TestFunction {
    arity: usize,
    reach: f64,
    rule: Rule,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("arity", &self.arity)
            .field("reach", &self.reach)
            .field("family", &self.family())
            .finish()
    }
}

impl TestFunction {
    /// Tensor product `f(x) = Π p_i(x_i)`.
    pub fn product(profiles: Vec<Profile>) -> Result<Self> {
        let arity = profiles.len();
        check_arity(arity)?;
        let reach = profiles.iter().map(Profile::reach).fold(0.0, f64::max);
        Ok(Self {
            arity,
            reach,
            rule: Rule::Product(profiles),
        })
    }

    /// One-dimensional test function.
    pub fn single(profile: Profile) -> Self {
        let reach = profile.reach();
        Self {
            arity: 1,
            reach,
            rule: Rule::Product(vec![profile]),
        }
    }

    /// Two-point function `f(x, y) = window(x) · separation(y - x)`.
    pub fn pair(window: Profile, separation: Profile) -> Self {
        let reach = window.reach() + separation.reach();
        Self {
            arity: 2,
            reach,
            rule: Rule::Pair { window, separation },
        }
    }

    /// Arbitrary rule; values outside `[-reach, reach]^arity` are forced to zero.
    pub fn custom<F>(arity: usize, reach: f64, rule: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        check_arity(arity)?;
        if !(reach > 0.0 && reach.is_finite()) {
            return Err(Error::InvalidParameter(format!("support half-width {reach}")));
        }
        Ok(Self {
            arity,
            reach,
            rule: Rule::Custom(Arc::new(rule)),
        })
    }

    /// `a·f + b·g` on the union of supports.
    pub fn linear_combination(a: f64, f: &TestFunction, b: f64, g: &TestFunction) -> Result<Self> {
        if f.arity != g.arity {
            return Err(Error::InvalidParameter("arity mismatch".into()));
        }
        let (f, g) = (f.clone(), g.clone());
        let reach = f.reach.max(g.reach);
        Self::custom(f.arity, reach, move |x| a * f.eval(x) + b * g.eval(x))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Half-width `A` of the support box `[-A, A]^k`.
    pub fn reach(&self) -> f64 {
        self.reach
    }

    pub fn family(&self) -> Family {
        match &self.rule {
            Rule::Product(ps) if ps.iter().all(|p| matches!(p, Profile::Tent { .. })) => {
                Family::Tent
            }
            Rule::Product(ps) if ps.iter().all(|p| matches!(p, Profile::Bump { .. })) => {
                Family::Bump
            }
            Rule::Product(_) => Family::ProductOf1d,
            Rule::Pair { .. } => Family::Pair,
            Rule::Custom(_) => Family::Custom,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.arity);
        if x.iter().any(|v| v.abs() > self.reach) {
            return 0.0;
        }
        match &self.rule {
            Rule::Product(ps) => ps.iter().zip(x).map(|(p, &v)| p.eval(v)).product(),
            Rule::Pair { window, separation } => window.eval(x[0]) * separation.eval(x[1] - x[0]),
            Rule::Custom(f) => f(x),
        }
    }

    /// `∫ f` for product and pair rules (`None` for custom rules).
    pub fn lebesgue_integral(&self) -> Option<f64> {
        match &self.rule {
            Rule::Product(ps) => Some(ps.iter().map(Profile::integral).product()),
            Rule::Pair { window, separation } => Some(window.integral() * separation.integral()),
            Rule::Custom(_) => None,
        }
    }

    /// The window and separation profiles of a pair function.
    pub fn as_pair(&self) -> Option<(&Profile, &Profile)> {
        match &self.rule {
            Rule::Pair { window, separation } => Some((window, separation)),
            _ => None,
        }
    }

    /// The factors of a product function.
    pub fn as_product(&self) -> Option<&[Profile]> {
        match &self.rule {
            Rule::Product(ps) => Some(ps),
            _ => None,
        }
    }
}

pub(crate) fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_ARITY {
        return Err(Error::ArityOutOfRange {
            arity,
            max: MAX_ARITY,
        });
    }
    Ok(())
}
