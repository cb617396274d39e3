//! Closed-form evaluators for the explicit bounds and constants of the
//! critical-window argument. All logarithms are natural.
//!
//! Lower-order `O(m²/n)` corrections are never folded into a returned bound;
//! they are reported alongside as slack terms for the caller to apply.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2, SQRT_2};

use serde::Serialize;

use crate::enumeration::enumeration_constant;
use crate::{Error, Result};

/// Largest δ for which the lower-tail theorem is stated.
pub const DELTA_MAX: f64 = 1.0 / 800.0;

/// Tunable inputs shared by the evaluators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub lambda: f64,
    pub delta: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub epsilon: f64,
    pub r: u32,
    pub c_enum: f64,
    pub beta: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub eta: f64,
}

impl BoundParams {
    /// `β, γ` derived from `(ε, r)`, then `ζ, η` from those.
    pub fn derived(lambda: f64, delta: f64, a: f64, epsilon: f64, r: u32) -> Result<Self> {
        let (beta, gamma) = derive_beta_gamma(epsilon, r)?;
        Ok(Self::with_constants(lambda, delta, a, epsilon, r, beta, gamma))
    }

    /// The rounded constants `β = 100`, `γ = 0.06` as published.
    pub fn published(lambda: f64, delta: f64, a: f64) -> Self {
        Self::with_constants(lambda, delta, a, 0.025, 45, 100.0, 0.06)
    }

    fn with_constants(lambda: f64, delta: f64, a: f64, epsilon: f64, r: u32, beta: f64, gamma: f64) -> Self {
        let c_enum = enumeration_constant();
        BoundParams {
            lambda,
            delta,
            a,
            epsilon,
            r,
            c_enum,
            beta,
            gamma,
            zeta: 8.0 * beta * c_enum / (3.0 * gamma),
            eta: gamma / 2.0,
        }
    }
}

impl Default for BoundParams {
    fn default() -> Self {
        Self::derived(0.0, DELTA_MAX, 1.0, 0.025, 45).expect("default partition covers [0, 1]")
    }
}

/// One evaluated bound in a form suitable for JSON output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub value: f64,
    pub valid: bool,
    pub slack_terms: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(name: &str, params: &[(&str, f64)], value: f64, valid: bool) -> Self {
        BoundReport {
            name: name.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            value,
            valid,
            slack_terms: BTreeMap::new(),
        }
    }

    fn slack(mut self, key: &str, value: f64) -> Self {
        self.slack_terms.insert(key.to_string(), value);
        self
    }
}

fn check_open_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} = {x} outside (0, 1)")))
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c < SQRT_2 {
        Ok(())
    } else {
        Err(Error::param(format!("c = {c} outside (0, sqrt 2)")))
    }
}

/// `P(|C₁| < δ n^{1/3}) <= 2e δ^{1/4}`, valid when `δ <= (log 2)² / (4λ²)`.
/// Accepts `0 < δ <= 1/800`.
pub fn lower_tail_bound(delta: f64, lambda: f64) -> Result<(f64, bool)> {
    if !(delta > 0.0 && delta <= DELTA_MAX) {
        return Err(Error::param(format!("delta = {delta} outside (0, 1/800]")));
    }
    let valid = lambda == 0.0 || delta <= LN_2 * LN_2 / (4.0 * lambda * lambda);
    Ok((2.0 * E * delta.powf(0.25), valid))
}

/// `ζ e^{-η A^{3/2} + λ⁺ A}`.
pub fn upper_tail_bound(a: f64, lambda: f64, zeta: f64, eta: f64) -> f64 {
    zeta * (-eta * a.powf(1.5) + lambda.max(0.0) * a).exp()
}

/// Cycle-length window `[⌈δ n^{1/3}⌉, ⌊δ^{1/2} n^{1/3}⌋]` of the lower-tail argument.
pub fn cycle_window(delta: f64, n: u64) -> (u64, u64) {
    let cube = (n as f64).cbrt();
    let lo = (delta * cube).ceil().max(0.0) as u64;
    let hi = (delta.sqrt() * cube).floor().max(0.0) as u64;
    (lo, hi)
}

/// Lower bound on the expected number of cycles with length in the window:
/// `log(1/δ)/2`, scaled by `e^{λδ/2}` for `λ >= 0` and by `e^{2δ^{1/2}λ}`
/// for `λ < 0`.
pub fn janson_mu_lower(delta: f64, lambda: f64, n: u64) -> Result<f64> {
    check_open_unit("delta", delta)?;
    if delta * (n as f64).cbrt() < 1.0 {
        return Err(Error::param(format!("delta n^(1/3) < 1 for n = {n}")));
    }
    Ok(mu_formula(delta, lambda))
}

fn mu_formula(delta: f64, lambda: f64) -> f64 {
    let base = (1.0 / delta).ln() / 2.0;
    let factor = if lambda >= 0.0 { (lambda * delta / 2.0).exp() } else { (2.0 * delta.sqrt() * lambda).exp() };
    factor * base
}

/// Expected number of directed `m`-cycles in `D(n, p)`:
/// `C(n, m) (m-1)! p^m = (1/m) Π_{i<m} (n-i) p`.
pub fn expected_cycles_of_length(n: u64, p: f64, m: u64) -> f64 {
    if m < 2 || m > n {
        // A loop is not an arc of D(n, p); the formula still gives n p for
        // m = 1, which callers asking for the literal sum want.
        return if m == 1 && n >= 1 { n as f64 * p } else { 0.0 };
    }
    let ln: f64 = (0..m).map(|i| ((n - i) as f64 * p).ln()).sum();
    (ln - (m as f64).ln()).exp()
}

/// `Σ_{m=lo}^{hi} C(n, m)(m-1)! p^m`.
pub fn expected_cycle_count(n: u64, p: f64, lo: u64, hi: u64) -> f64 {
    (lo..=hi).map(|m| expected_cycles_of_length(n, p, m)).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JansonVariant {
    /// The expression exactly as printed.
    Literal,
    /// The quadratic summand carries its `n^{-2/3}` factor.
    NCorrected,
}

/// Upper bound on Janson's `Δ` for the cycle window:
/// `(log(4/δ)/2)(e^{432 δ^{3/2}} - 1 + 23328 e² δ² [n^{-2/3}])`, scaled by
/// `e^{2δ^{1/2}λ}` for `λ >= 0` and `e^{δλ}` for `λ < 0`.
pub fn janson_delta_upper(delta: f64, lambda: f64, n: u64, variant: JansonVariant) -> Result<f64> {
    check_open_unit("delta", delta)?;
    let prefactor = (4.0 / delta).ln() / 2.0;
    let exp_term = (432.0 * delta.powf(1.5)).exp_m1();
    let mut quad = 23328.0 * E * E * delta * delta;
    if variant == JansonVariant::NCorrected {
        if n < 1 {
            return Err(Error::param("n must be positive"));
        }
        quad *= (n as f64).powf(-2.0 / 3.0);
    }
    let factor = if lambda >= 0.0 { (2.0 * delta.sqrt() * lambda).exp() } else { (delta * lambda).exp() };
    Ok(factor * prefactor * (exp_term + quad))
}

/// `(2 - c²)² / (8c)`.
pub fn tau1_coefficient(c: f64) -> f64 {
    (2.0 - c * c).powi(2) / (8.0 * c)
}

/// `P(τ₁ < c m^{1/2} n^{1/2}) <= 2 e^{-((2-c²)²/(8c)) m^{3/2} n^{-1/2}}`.
/// Returns `(bound, m²/n)`; the second value is the unspecified-constant
/// correction in the exponent.
pub fn tau1_bound(m: u64, n: u64, c: f64) -> Result<(f64, f64)> {
    check_c(c)?;
    if m < 1 || m > n {
        return Err(Error::param(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    let (m, n) = (m as f64, n as f64);
    let exponent = tau1_coefficient(c) * m.powf(1.5) / n.sqrt();
    Ok((2.0 * (-exponent).exp(), m * m / n))
}

/// Per-`i` exponents `(i-1)ε + (2 - i²ε²)²/(8iε)` of the partition argument.
pub fn partition_exponents(epsilon: f64, r: u32) -> Vec<f64> {
    (1..=r)
        .map(|i| {
            let ie = i as f64 * epsilon;
            (i as f64 - 1.0) * epsilon + (2.0 - ie * ie).powi(2) / (8.0 * ie)
        })
        .collect()
}

/// `(β, γ)` from the partition `(ε, r)`: `γ` is the smallest exponent (the
/// tail event contributes `rε`) minus one, and `β = 2r + 1`.
pub fn derive_beta_gamma(epsilon: f64, r: u32) -> Result<(f64, f64)> {
    if !(epsilon > 0.0) || r < 1 {
        return Err(Error::param(format!("need epsilon > 0 and r >= 1, got ({epsilon}, {r})")));
    }
    let tail = r as f64 * epsilon;
    if tail < 1.0 {
        return Err(Error::param(format!("partition does not cover: r * epsilon = {tail} < 1")));
    }
    let min_term = partition_exponents(epsilon, r).into_iter().fold(tail, f64::min);
    Ok((2.0 * r as f64 + 1.0, min_term - 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentProbBound {
    pub beta: f64,
    pub gamma: f64,
    /// `β e^{-(1+γ) m^{3/2} n^{-1/2}}`.
    pub bound: f64,
    /// `m²/n`.
    pub slack: f64,
}

/// Bound on the probability that a set of `m` strongly connected vertices
/// has no back edge from the rest of its exploration.
pub fn component_prob_bound(m: u64, n: u64, epsilon: f64, r: u32) -> Result<ComponentProbBound> {
    let (beta, gamma) = derive_beta_gamma(epsilon, r)?;
    if m < 1 || n < 1 {
        return Err(Error::param("m and n must be positive"));
    }
    let (mf, nf) = (m as f64, n as f64);
    let bound = beta * (-(1.0 + gamma) * mf.powf(1.5) / nf.sqrt()).exp();
    Ok(ComponentProbBound { beta, gamma, bound, slack: mf * mf / nf })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LargeComponentsMode {
    Sum,
    Integral,
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargeComponents {
    pub value: f64,
    pub zeta: f64,
    pub eta: f64,
    /// False for the positive-λ closed form when `A` is below
    /// [`LargeComponents::knee`].
    pub valid: bool,
    /// Smallest `A` for which the positive-λ closed form holds,
    /// `(20λ/(3γ))²`; zero when `λ <= 0`.
    pub knee: f64,
}

fn large_component_integrand(x: f64, gamma: f64, lambda_plus: f64) -> f64 {
    x.sqrt() * (-gamma / 2.0 * x.powf(1.5) + lambda_plus * x).exp()
}

/// Bound on the expected number of strongly connected components with size
/// between `A n^{1/3}` and `n^{1/3} log² n`:
///
/// * `Sum`: `Σ_m (2βC m^{1/2}/n^{1/2}) e^{-γ m^{3/2} n^{-1/2}/2 + λ⁺ m n^{-1/3}}`,
/// * `Integral`: the same integrand over `[A n^{1/3}, n^{1/3} log² n + 1]`,
/// * `ClosedForm`: `(8βC/(3γ)) e^{-γA^{3/2}/2}` for `λ <= 0`, and
///   `(10βC/(3γ)) e^{-γA^{3/2}/2 + λA}` for `λ > 0`.
///
/// `ζ` and `η` are the prefactor and `γ/2` of the closed form.
pub fn expected_large_components(
    a: f64,
    n: u64,
    lambda: f64,
    beta: f64,
    gamma: f64,
    c_enum: f64,
    mode: LargeComponentsMode,
) -> Result<LargeComponents> {
    if !(a > 0.0) || !(gamma > 0.0) {
        return Err(Error::param(format!("need A > 0 and gamma > 0, got ({a}, {gamma})")));
    }
    let lambda_plus = lambda.max(0.0);
    let eta = gamma / 2.0;
    let (zeta, knee) = if lambda > 0.0 {
        (10.0 * beta * c_enum / (3.0 * gamma), (20.0 * lambda / (3.0 * gamma)).powi(2))
    } else {
        (8.0 * beta * c_enum / (3.0 * gamma), 0.0)
    };
    let needs_n = mode != LargeComponentsMode::ClosedForm;
    if needs_n && n < 3 {
        return Err(Error::param("sum and integral modes need n >= 3"));
    }
    let nf = n as f64;
    let cube = nf.cbrt();
    let upper_scaled = nf.ln().powi(2);
    let value = match mode {
        LargeComponentsMode::ClosedForm => zeta * (-eta * a.powf(1.5) + lambda_plus * a).exp(),
        LargeComponentsMode::Sum => {
            let lo = (a * cube).ceil() as u64;
            let hi = (cube * upper_scaled).floor() as u64;
            let scale = 2.0 * beta * c_enum / nf.sqrt();
            (lo.max(1)..=hi)
                .map(|m| {
                    let m = m as f64;
                    scale * m.sqrt() * (-eta * m.powf(1.5) / nf.sqrt() + lambda_plus * m / cube).exp()
                })
                .sum()
        }
        LargeComponentsMode::Integral => {
            // x = m n^{-1/3} turns the integral into 2βC ∫ x^{1/2} e^{...} dx.
            let hi = upper_scaled + 1.0 / cube;
            if hi <= a {
                0.0
            } else {
                let f = |x: f64| large_component_integrand(x, gamma, lambda_plus);
                2.0 * beta * c_enum * adaptive_simpson(&f, a, hi, 1e-10)
            }
        }
    };
    Ok(LargeComponents { value, zeta, eta, valid: a >= knee, knee })
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`. The interval is
/// first cut into 64 panels so narrow peaks are not stepped over.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == PANELS { b } else { lo + h };
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            recurse(f, lo, hi, fa, fm, fb, whole, tol / PANELS as f64, 40)
        })
        .sum()
}

/// Bound on the expected number of cycles of length at most
/// `n^{1/3} log log n`: `(1/3) log n + log log log n + 1` capped at `log n`
/// for `λ <= 0`, and `2 (log n)^{λ+1}` for `λ > 0`.
/// Takes `n` as a float so the asymptotics can be probed beyond `u64`.
pub fn harmonic_cycle_bound(n: f64, lambda: f64) -> Result<f64> {
    if !(n >= 3.0) {
        return Err(Error::param(format!("n = {n} < 3")));
    }
    let ln = n.ln();
    if lambda > 0.0 {
        Ok(2.0 * ln.powf(lambda + 1.0))
    } else {
        Ok((ln / 3.0 + ln.ln().ln() + 1.0).min(ln))
    }
}

/// Chernoff rate `g(x) = x log(x/p) + (1-x) log((1-x)/(1-p))`.
pub fn chernoff_g(x: f64, p: f64) -> Result<f64> {
    check_open_unit("x", x)?;
    check_open_unit("p", p)?;
    Ok(x * (x / p).ln() + (1.0 - x) * ((1.0 - x) / (1.0 - p)).ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    LowerTail,
    UpperTail,
    JansonMu,
    JansonDelta,
    Tau1,
    ComponentProb,
    LargeComponents,
    Harmonic,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::LowerTail,
        BoundKind::UpperTail,
        BoundKind::JansonMu,
        BoundKind::JansonDelta,
        BoundKind::Tau1,
        BoundKind::ComponentProb,
        BoundKind::LargeComponents,
        BoundKind::Harmonic,
    ];
}

/// Reports for one evaluator. `n` feeds the finite-`n` evaluators and `m`,
/// `c` the exploration bounds.
pub fn evaluate(kind: BoundKind, params: &BoundParams, n: u64, m: u64, c: f64) -> Result<Vec<BoundReport>> {
    let BoundParams { lambda, delta, a, epsilon, r, c_enum, beta, gamma, zeta, eta } = *params;
    let nf = n as f64;
    let reports = match kind {
        BoundKind::LowerTail => {
            let (lower, valid) = lower_tail_bound(delta, lambda)?;
            vec![BoundReport::new("lower_tail", &[("delta", delta), ("lambda", lambda)], lower, valid)]
        }
        BoundKind::UpperTail => vec![BoundReport::new(
            "upper_tail",
            &[("A", a), ("lambda", lambda), ("zeta", zeta), ("eta", eta)],
            upper_tail_bound(a, lambda, zeta, eta),
            true,
        )],
        BoundKind::JansonMu => {
            check_open_unit("delta", delta)?;
            let (lo, hi) = cycle_window(delta, n);
            // Reported even when the window is degenerate at this n; the flag says so.
            let mu = mu_formula(delta, lambda);
            vec![BoundReport::new("janson_mu_lower", &[("delta", delta), ("lambda", lambda), ("n", nf)], mu, lo >= 1 && lo <= hi)
                .slack("window_lo", lo as f64)
                .slack("window_hi", hi as f64)]
        }
        BoundKind::JansonDelta => [("janson_delta_literal", JansonVariant::Literal), ("janson_delta_n_corrected", JansonVariant::NCorrected)]
            .into_iter()
            .map(|(name, variant)| {
                let value = janson_delta_upper(delta, lambda, n, variant)?;
                Ok(BoundReport::new(name, &[("delta", delta), ("lambda", lambda), ("n", nf)], value, value <= LN_2))
            })
            .collect::<Result<_>>()?,
        BoundKind::Tau1 => {
            let (tau, slack) = tau1_bound(m, n, c)?;
            vec![BoundReport::new("tau1", &[("m", m as f64), ("n", nf), ("c", c)], tau, true).slack("m2_over_n", slack)]
        }
        BoundKind::ComponentProb => {
            let cp = component_prob_bound(m, n, epsilon, r)?;
            vec![BoundReport::new(
                "component_prob",
                &[("m", m as f64), ("n", nf), ("epsilon", epsilon), ("r", r as f64), ("beta", cp.beta), ("gamma", cp.gamma)],
                cp.bound,
                cp.gamma > 0.0,
            )
            .slack("m2_over_n", cp.slack)]
        }
        BoundKind::LargeComponents => [
            ("large_components_sum", LargeComponentsMode::Sum),
            ("large_components_integral", LargeComponentsMode::Integral),
            ("large_components_closed_form", LargeComponentsMode::ClosedForm),
        ]
        .into_iter()
        .map(|(name, mode)| {
            let res = expected_large_components(a, n, lambda, beta, gamma, c_enum, mode)?;
            Ok(BoundReport::new(
                name,
                &[("A", a), ("n", nf), ("lambda", lambda), ("beta", beta), ("gamma", gamma), ("C", c_enum)],
                res.value,
                res.valid,
            )
            .slack("zeta", res.zeta)
            .slack("eta", res.eta))
        })
        .collect::<Result<_>>()?,
        BoundKind::Harmonic => {
            let harmonic = harmonic_cycle_bound(nf, lambda)?;
            vec![BoundReport::new("harmonic_cycles", &[("n", nf), ("lambda", lambda)], harmonic, true)
                .slack("n_pow_1_6", nf.powf(1.0 / 6.0))]
        }
    };
    Ok(reports)
}

/// Every evaluator, in [`BoundKind::ALL`] order.
pub fn evaluate_all(params: &BoundParams, n: u64, m: u64, c: f64) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for kind in BoundKind::ALL {
        out.extend(evaluate(kind, params, n, m, c)?);
    }
    Ok(out)
}
