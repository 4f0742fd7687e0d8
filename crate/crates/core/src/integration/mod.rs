//! Hyperbolic Riemann–Stieltjes sums and integrals.
//!
//! Everything factors through the idempotent components: the hyperbolic
//! integral of `F` against `G` is the pair of real integrals of `F1` against
//! `G1` and `F2` against `G2` on the projections of the interval.

pub mod real;

use serde::{Deserialize, Serialize};

use crate::error::{Component, Error, Result};
use crate::expr::{HyperbolicFn, Natural, NaturalFunction, RealFunction};
use crate::hyperbolic::Hyperbolic;
use crate::intervals::{uniform_grid, HInterval, StrongPartition};

pub use real::{Level, RealIntegral};

/// Where each sub-interval's tag sits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TagRule {
    Left,
    Right,
    /// Componentwise midpoint, always inside `[ρ_j, ρ_{j+1}]`.
    #[default]
    Midpoint,
}

/// How increments of the integrator enter a sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumMode {
    /// `F(γ_j)·|G(ρ_{j+1}) - G(ρ_j)|_k`, with the hyperbolic absolute value.
    #[default]
    PaperAbs,
    /// `F(γ_j)·(G(ρ_{j+1}) - G(ρ_j))`, the classical increment.
    Signed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsOptions {
    pub tol: f64,
    pub tags: TagRule,
    pub mode: SumMode,
    pub max_refinements: usize,
}

impl Default for RsOptions {
    fn default() -> Self {
        RsOptions {
            tol: 1e-6,
            tags: TagRule::Midpoint,
            mode: SumMode::PaperAbs,
            max_refinements: 22,
        }
    }
}

impl RsOptions {
    pub(crate) fn check(&self) -> Result<()> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tol
            )))
        }
    }
}

/// The Riemann–Stieltjes sum over a strong partition, computed directly on
/// hyperbolic values.
pub fn rs_sum<F, G>(
    f: &F,
    g: &G,
    partition: &StrongPartition,
    tags: TagRule,
    mode: SumMode,
) -> Result<Hyperbolic>
where
    F: HyperbolicFn + ?Sized,
    G: HyperbolicFn + ?Sized,
{
    let points = partition.points();
    let gv = points
        .iter()
        .map(|&p| g.eval(p))
        .collect::<Result<Vec<_>>>()?;
    let mut terms = Vec::with_capacity(points.len());
    for (j, w) in points.windows(2).enumerate() {
        let gamma = Hyperbolic::new(
            real::tag(tags, w[0].a1, w[1].a1),
            real::tag(tags, w[0].a2, w[1].a2),
        );
        let dg = match mode {
            SumMode::Signed => gv[j + 1] - gv[j],
            SumMode::PaperAbs => gv[j + 1].metric(gv[j]),
        };
        terms.push(f.eval(gamma)? * dg);
    }
    Ok(Hyperbolic::exact_sum(terms))
}

/// A refined hyperbolic integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: Hyperbolic,
    /// Componentwise `|S_last - S_previous|`.
    pub error_estimate: Hyperbolic,
    pub refinements: usize,
    pub converged: bool,
    pub mode: SumMode,
    pub tag_gap: Hyperbolic,
    #[serde(skip)]
    pub history: [Vec<Level>; 2],
}

/// `∫ F d_k G` over `interval`.
///
/// The components refine independently and in parallel, each exactly as
/// [`real::rs_integral`] does on its projection, so the value is
/// bit-identical to the pair of real integrals. A component that fails to
/// settle leaves `converged` false; the last sums are still reported.
pub fn rs_integral<F, G>(
    f: &F,
    g: &G,
    interval: &HInterval,
    options: &RsOptions,
) -> Result<IntegralResult>
where
    F: Natural + ?Sized,
    G: Natural + ?Sized,
{
    options.check()?;
    let (i1, i2) = interval.projections();
    let run = |c: Component, i| {
        real::rs_integral(f.component(c), g.component(c), i, options).map_err(|e| e.in_component(c))
    };
    let (r1, r2) = rayon::join(|| run(Component::E1, i1), || run(Component::E2, i2));
    let (r1, r2) = (r1?, r2?);
    Ok(IntegralResult {
        value: Hyperbolic::new(r1.value, r2.value),
        error_estimate: Hyperbolic::new(r1.error_estimate, r2.error_estimate),
        refinements: r1.refinements.max(r2.refinements),
        converged: r1.converged && r2.converged,
        mode: options.mode,
        tag_gap: Hyperbolic::new(r1.tag_gap, r2.tag_gap),
        history: [r1.history, r2.history],
    })
}

/// `∫ F d_k ξ`: the integral against the identity, always with signed
/// increments (for the identity both modes agree).
pub fn riemann_integral<F: Natural + ?Sized>(
    f: &F,
    interval: &HInterval,
    options: &RsOptions,
) -> Result<IntegralResult> {
    let options = RsOptions {
        mode: SumMode::Signed,
        ..*options
    };
    rs_integral(f, &NaturalFunction::identity(), interval, &options)
}

/// Both sides of `∫ F d_k G = ∫ F·G' d_k ξ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutionReport {
    pub lhs: Hyperbolic,
    pub rhs: Hyperbolic,
    pub difference: Hyperbolic,
    pub pass: bool,
    pub mode: SumMode,
    /// Whether both components of `G` were found nondecreasing; the absolute
    /// increments of `PaperAbs` only match `G'` in that case.
    pub g_nondecreasing: bool,
    pub lhs_converged: bool,
    pub rhs_converged: bool,
    pub threshold: f64,
}

/// Samples per component when checking that `G` is nondecreasing.
const MONOTONE_SAMPLES: usize = 1024;

/// Compares the Stieltjes integral against the Riemann integral of `F·G'`.
///
/// Passes when the difference is strictly below `10·tol` in both
/// components; in `PaperAbs` mode `G` must also be nondecreasing, which is
/// checked by sampling `G'`.
pub fn check_substitution(
    f: &NaturalFunction,
    g: &NaturalFunction,
    interval: &HInterval,
    options: &RsOptions,
) -> Result<SubstitutionReport> {
    let g_prime = g.derivative()?;
    let integrand = f.times(&g_prime);
    let lhs = rs_integral(f, g, interval, options)?;
    let rhs = riemann_integral(&integrand, interval, options)?;
    let difference = lhs.value.metric(rhs.value);
    let threshold = 10.0 * options.tol;

    let (i1, i2) = interval.projections();
    let nondecreasing = |d: &dyn RealFunction, lo: f64, hi: f64| {
        uniform_grid(lo, hi, MONOTONE_SAMPLES)
            .into_iter()
            .all(|t| matches!(d.eval(t), Ok(v) if v >= 0.0))
    };
    let g_nondecreasing =
        nondecreasing(g_prime.f1(), i1.lo, i1.hi) && nondecreasing(g_prime.f2(), i2.lo, i2.hi);

    let within = difference.strictly_precedes(Hyperbolic::real(threshold));
    let pass = within && (options.mode == SumMode::Signed || g_nondecreasing);
    Ok(SubstitutionReport {
        lhs: lhs.value,
        rhs: rhs.value,
        difference,
        pass,
        mode: options.mode,
        g_nondecreasing,
        lhs_converged: lhs.converged,
        rhs_converged: rhs.converged,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::merge_real_partitions;
    use crate::intervals::MergeMode;

    fn h(a1: f64, a2: f64) -> Hyperbolic {
        Hyperbolic::new(a1, a2)
    }

    fn signed() -> RsOptions {
        RsOptions {
            mode: SumMode::Signed,
            ..RsOptions::default()
        }
    }

    #[test]
    fn hand_sum() {
        let id = NaturalFunction::identity();
        let p = StrongPartition::uniform(HInterval::unit(), 2).unwrap();
        let s = rs_sum(&id, &id, &p, TagRule::Left, SumMode::Signed).unwrap();
        assert_eq!(s, h(0.25, 0.25));
    }

    #[test]
    fn constant_integrator_gives_zero() {
        let f = NaturalFunction::parse("x^3 + 1", "sin(y)").unwrap();
        let g = NaturalFunction::constant(h(2.0, -7.0));
        let p = StrongPartition::uniform(HInterval::unit(), 5).unwrap();
        for mode in [SumMode::Signed, SumMode::PaperAbs] {
            assert_eq!(
                rs_sum(&f, &g, &p, TagRule::Midpoint, mode).unwrap(),
                Hyperbolic::ZERO
            );
        }
    }

    #[test]
    fn sum_factors_over_projections() {
        let f = NaturalFunction::parse("x^2 - 1", "cos(y)").unwrap();
        let g = NaturalFunction::parse("sin(x)", "y^3").unwrap();
        let p = merge_real_partitions(&[0.0, 0.2, 0.7, 1.0], &[0.0, 0.5, 1.0], MergeMode::E2First)
            .unwrap();
        let (p1, p2) = p.project();
        for tags in [TagRule::Left, TagRule::Right, TagRule::Midpoint] {
            for mode in [SumMode::Signed, SumMode::PaperAbs] {
                let s = rs_sum(&f, &g, &p, tags, mode).unwrap();
                let s1 = real::rs_sum(f.f1(), g.f1(), &p1, tags, mode).unwrap();
                let s2 = real::rs_sum(f.f2(), g.f2(), &p2, tags, mode).unwrap();
                assert_eq!(s, h(s1, s2));
            }
        }
    }

    #[test]
    fn riemann_fixtures() {
        let r =
            riemann_integral(&NaturalFunction::identity(), &HInterval::unit(), &signed()).unwrap();
        assert!(r.converged);
        assert!(r
            .value
            .metric(h(0.5, 0.5))
            .strictly_precedes(Hyperbolic::real(1e-6)));

        let f = NaturalFunction::parse("x^2", "sin(y)").unwrap();
        let r = riemann_integral(&f, &HInterval::unit(), &signed()).unwrap();
        assert!(r.converged);
        let exact = h(1.0 / 3.0, 1.0 - 1f64.cos());
        assert!(r
            .value
            .metric(exact)
            .strictly_precedes(Hyperbolic::real(1e-6)));
    }

    #[test]
    fn constant_integrand() {
        let c = NaturalFunction::constant(h(3.0, -2.0));
        let i = HInterval::closed(h(1.0, -1.0), h(2.0, 3.0)).unwrap();
        let r = riemann_integral(&c, &i, &signed()).unwrap();
        assert_eq!(r.value, h(3.0, -2.0) * i.length());
    }

    #[test]
    fn substitution_passes_in_both_modes() {
        let f = NaturalFunction::identity();
        let g = NaturalFunction::parse("x^2", "y^2").unwrap();
        for mode in [SumMode::Signed, SumMode::PaperAbs] {
            let opts = RsOptions {
                mode,
                ..RsOptions::default()
            };
            let report = check_substitution(&f, &g, &HInterval::unit(), &opts).unwrap();
            assert!(report.pass, "{report:?}");
            assert!(report.g_nondecreasing);
            assert!(report
                .lhs
                .metric(h(2.0 / 3.0, 2.0 / 3.0))
                .strictly_precedes(Hyperbolic::real(1e-5)));
        }
    }

    #[test]
    fn substitution_flags_decreasing_integrator_in_abs_mode() {
        let f = NaturalFunction::identity();
        let g = NaturalFunction::parse("-x", "y").unwrap();
        let report = check_substitution(&f, &g, &HInterval::unit(), &RsOptions::default()).unwrap();
        assert!(!report.g_nondecreasing);
        assert!(!report.pass);
        let report = check_substitution(&f, &g, &HInterval::unit(), &signed()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn substitution_needs_derivative() {
        let f = NaturalFunction::identity();
        let g = NaturalFunction::parse("abs(x)", "y").unwrap();
        assert_eq!(
            check_substitution(&f, &g, &HInterval::unit(), &signed()),
            Err(Error::NotDifferentiable("abs"))
        );
    }
}
