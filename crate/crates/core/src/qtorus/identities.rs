//! Ψ_q identities attached to a period: tropical, universal, shuffle, and the
//! dual pair.

use serde::Serialize;

use super::coeff::Coefficient;
use super::element::{format_monomial, Ctx, TorusContext, TorusElement};
use super::psi::psi_power;
use super::seeds::quantum_trajectory;
use crate::error::{Error, Result};
use crate::exchange::{require_period, sign_sequence, ExchangeMatrix, MutationSchedule};

/// Outcome of an identity check up to a truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub identity: String,
    pub order: usize,
    pub residual_terms: Vec<String>,
    pub verdict: Verdict,
    /// True when coefficients were specialized at a rational `q` (fast mode).
    pub probabilistic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Residual {
    fn from_difference<C: Coefficient>(identity: &str, diff: &TorusElement<C>) -> Self {
        let residual_terms: Vec<String> = diff
            .terms()
            .iter()
            .map(|(a, c)| format!("({c})·{}", format_monomial(a)))
            .collect();
        let verdict = if residual_terms.is_empty() { Verdict::Pass } else { Verdict::Fail };
        Residual {
            identity: identity.into(),
            order: diff.order(),
            residual_terms,
            verdict,
            probabilistic: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.residual_terms.is_empty()
    }
}

/// One factor `Ψ_s(arg)^ε` of a product.
#[derive(Clone, Debug)]
pub struct Factor<C: Coefficient> {
    pub step: usize,
    pub argument: TorusElement<C>,
    pub sign: i8,
}

/// Exponent data of one monomial factor `Ψ(Y^{ε_t α_t})^{ε_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialFactor {
    pub step: usize,
    pub exponent: Vec<i64>,
    pub sign: i8,
    /// Name of the deformation parameter of the series, `q` or `q̄`.
    pub parameter: &'static str,
}

/// Ordered product of `Ψ_s(arg)^ε` over the factors.
pub fn product<C: Coefficient>(ctx: &Ctx<C>, factors: &[Factor<C>], s: &C) -> Result<TorusElement<C>> {
    let mut acc = TorusElement::one(ctx);
    for f in factors {
        acc = acc.mul(&psi_power(&f.argument, s, f.sign)?)?;
    }
    Ok(acc)
}

/// Factors `Ψ(Y^{ε_t α_t})^{ε_t}`, `t = 1..L`, in product order.
pub fn tropical_factor_data(b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<Vec<MonomialFactor>> {
    let ss = sign_sequence(b, sched)?;
    Ok(ss
        .positive_exponents()
        .into_iter()
        .zip(&ss.signs)
        .enumerate()
        .map(|(t, (exponent, &sign))| MonomialFactor { step: t + 1, exponent, sign, parameter: "q" })
        .collect())
}

/// Factors of the dual identity: the tropical list reversed, in the dual
/// variables with parameter `q̄ = (q^∨)^{-1}`.
pub fn dual_factor_data(b: &ExchangeMatrix, sched: &MutationSchedule) -> Result<Vec<MonomialFactor>> {
    let mut f = tropical_factor_data(b, sched)?;
    f.reverse();
    for m in &mut f {
        m.parameter = "q̄";
    }
    Ok(f)
}

fn monomial_factors<C: Coefficient>(ctx: &Ctx<C>, data: &[MonomialFactor]) -> Vec<Factor<C>> {
    data.iter()
        .map(|m| Factor {
            step: m.step,
            argument: TorusElement::monomial(ctx, &m.exponent),
            sign: m.sign,
        })
        .collect()
}

/// `Y_{k_t}(t)^{ε_t}` for `t = 1..L`, in order of `t`.
pub fn universal_arguments<C: Coefficient>(ctx: &Ctx<C>, sched: &MutationSchedule) -> Result<Vec<Factor<C>>> {
    let ss = sign_sequence(ctx.matrix(), sched)?;
    let traj = quantum_trajectory(ctx, &sched.sequence)?;
    sched
        .sequence
        .iter()
        .enumerate()
        .map(|(t, &k)| {
            let y = &traj[t].y[k];
            let argument = if ss.signs[t] > 0 { y.clone() } else { y.invert()? };
            Ok(Factor { step: t + 1, argument, sign: ss.signs[t] })
        })
        .collect()
}

fn finish<C: Coefficient>(identity: &str, ctx: &Ctx<C>, lhs: &TorusElement<C>) -> Result<Residual> {
    let mut r = Residual::from_difference(identity, &lhs.sub(&TorusElement::one(ctx))?);
    r.probabilistic = !C::SYMBOLIC;
    Ok(r)
}

/// `Π_t Ψ_q(Y^{ε_t α_t})^{ε_t} = 1` in a given context.
pub fn verify_tropical_identity_in<C: Coefficient>(
    ctx: &Ctx<C>,
    sched: &MutationSchedule,
) -> Result<Residual> {
    let b = ctx.matrix();
    require_period(b, sched)?;
    let factors = monomial_factors(ctx, &tropical_factor_data(b, sched)?);
    let lhs = product(ctx, &factors, ctx.q())?;
    finish("tropical", ctx, &lhs)
}

pub fn verify_tropical_identity(b: &ExchangeMatrix, sched: &MutationSchedule, order: usize) -> Result<Residual> {
    verify_tropical_identity_in(&TorusContext::exact(b.clone(), order), sched)
}

/// `Ψ_q(Y_{k_L}(L)^{ε_L})^{ε_L} ⋯ Ψ_q(Y_{k_1}(1)^{ε_1})^{ε_1} = 1`.
pub fn verify_universal_identity_in<C: Coefficient>(
    ctx: &Ctx<C>,
    sched: &MutationSchedule,
) -> Result<Residual> {
    require_period(ctx.matrix(), sched)?;
    let mut factors = universal_arguments(ctx, sched)?;
    factors.reverse();
    let lhs = product(ctx, &factors, ctx.q())?;
    finish("universal", ctx, &lhs)
}

pub fn verify_universal_identity(b: &ExchangeMatrix, sched: &MutationSchedule, order: usize) -> Result<Residual> {
    verify_universal_identity_in(&TorusContext::exact(b.clone(), order), sched)
}

/// Shuffle formula for the first `t` steps; periodicity is not required.
pub fn verify_shuffle_in<C: Coefficient>(
    ctx: &Ctx<C>,
    sched: &MutationSchedule,
    t: usize,
) -> Result<Residual> {
    if t == 0 || t > sched.len() {
        return Err(Error::InvalidSchedule(format!("shuffle length {t} outside 1..={}", sched.len())));
    }
    let prefix = sched.prefix(t);
    let b = ctx.matrix();
    let tropical = monomial_factors(ctx, &tropical_factor_data(b, &prefix)?);
    let mut universal = universal_arguments(ctx, &prefix)?;
    universal.reverse();
    let lhs = product(ctx, &tropical, ctx.q())?;
    let rhs = product(ctx, &universal, ctx.q())?;
    let mut r = Residual::from_difference("shuffle", &lhs.sub(&rhs)?);
    r.probabilistic = !C::SYMBOLIC;
    Ok(r)
}

pub fn verify_shuffle(b: &ExchangeMatrix, sched: &MutationSchedule, t: usize, order: usize) -> Result<Residual> {
    verify_shuffle_in(&TorusContext::exact(b.clone(), order), sched, t)
}

/// Both factors of the dual pair: the `q`-identity and the reversed identity in
/// the dual variables with parameter `q̄ = r^{-1}`, where the context variable
/// plays the role of `r = q^∨`.
pub fn verify_dual_pair_in<C: Coefficient>(
    ctx: &Ctx<C>,
    sched: &MutationSchedule,
) -> Result<(Residual, Residual)> {
    let mut first = verify_tropical_identity_in(ctx, sched)?;
    first.identity = "dual".into();
    let b = ctx.matrix();
    let factors = monomial_factors(ctx, &dual_factor_data(b, sched)?);
    let qbar = ctx.q().inv().ok_or(Error::NonInvertible)?;
    let lhs = product(ctx, &factors, &qbar)?;
    Ok((first, finish("dual", ctx, &lhs)?))
}

pub fn verify_dual_pair(b: &ExchangeMatrix, sched: &MutationSchedule, order: usize) -> Result<(Residual, Residual)> {
    verify_dual_pair_in(&TorusContext::exact(b.clone(), order), sched)
}
