//! Closed-form moment formulas, each evaluated exactly as a rational
//! function for comparison against the recurrence oracle.
//!
//! Every evaluator is a literal transcription of one explicit summation
//! formula for the Askey-Wilson moments μ_n(a,b,c,d;q) (or a
//! specialization of the parameters), normalized so the return value is
//! μ_n itself — the conventional 2ⁿ or 4ⁿ factor is divided out. Sums
//! iterate exactly the stated index bounds; out-of-range binomial and
//! q-binomial coefficients contribute zero via the extended conventions in
//! [`crate::qcalc`]. No algebraic simplification is applied beyond what the
//! rational-function arithmetic performs, so a mismatch with the oracle
//! localizes a transcription bug in the one formula involved.

use crate::arith::poly::pow_gaussian;
use crate::arith::{GaussianRational, MPoly, RatFunc, Var};
use crate::error::Result;
use crate::qcalc::{ballot_diff, ballot_diff_half, binom, binom2, div_by_pochhammer, QCtx};

/// Identifies one closed-form moment formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    /// General double sum over (m, j), Laurent in a.
    DoubleSum,
    /// General triple sum over (m, s, p), Laurent in a.
    TripleSum,
    /// d = 0 polynomial formula (sum over k and u+v+w+2t = k).
    D0,
    /// c = d = 0 polynomial formula (sum over k and u+v+2t = k).
    CD0,
    /// b = q/a, c = d = 0 Laurent-polynomial formula.
    BQoverA,
    /// b = −a, c = d = 0 formula (odd moments vanish).
    BnegA,
    /// b = −a, d = −c double sum over (m, j).
    SymmCDsum,
    /// b = −a, d = −c triple sum over (m, s, p) in base q².
    SymmTriple,
    /// Symmetric formula with a free auxiliary parameter A.
    WellPoised,
    /// Its collapsed corollary at A² = q (computed in the variable A).
    WellPoisedSqrtQ,
    /// Four-index sum over matching contact counts (α, β, γ, δ).
    Main,
    /// Five-index variant with the extra index t.
    Main2,
    /// q = 0 piecewise-prefactor formula.
    Q0,
    /// c = q/a, d = q/b positivity formula.
    FlipCor,
    /// Even moments at (a, b, −b, −a).
    AntiSymABBA,
    /// Even moments at (a, b, −a, −b).
    AntiSymABAB,
    /// Rescaled symmetric polynomial τ_{2n}(a², c²).
    Tau2n,
    /// Weighted-matching polynomial P̄(n, m).
    OPbar,
}

impl FormulaId {
    pub const ALL: [FormulaId; 18] = [
        FormulaId::DoubleSum,
        FormulaId::TripleSum,
        FormulaId::D0,
        FormulaId::CD0,
        FormulaId::BQoverA,
        FormulaId::BnegA,
        FormulaId::SymmCDsum,
        FormulaId::SymmTriple,
        FormulaId::WellPoised,
        FormulaId::WellPoisedSqrtQ,
        FormulaId::Main,
        FormulaId::Main2,
        FormulaId::Q0,
        FormulaId::FlipCor,
        FormulaId::AntiSymABBA,
        FormulaId::AntiSymABAB,
        FormulaId::Tau2n,
        FormulaId::OPbar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::DoubleSum => "double-sum",
            FormulaId::TripleSum => "triple-sum",
            FormulaId::D0 => "d0",
            FormulaId::CD0 => "cd0",
            FormulaId::BQoverA => "b-q-over-a",
            FormulaId::BnegA => "b-neg-a",
            FormulaId::SymmCDsum => "symm-cd-sum",
            FormulaId::SymmTriple => "symm-triple",
            FormulaId::WellPoised => "well-poised",
            FormulaId::WellPoisedSqrtQ => "well-poised-sqrt-q",
            FormulaId::Main => "main",
            FormulaId::Main2 => "main2",
            FormulaId::Q0 => "q0",
            FormulaId::FlipCor => "flip",
            FormulaId::AntiSymABBA => "antisym-abba",
            FormulaId::AntiSymABAB => "antisym-abab",
            FormulaId::Tau2n => "tau",
            FormulaId::OPbar => "op-bar",
        }
    }
}

impl std::fmt::Display for FormulaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The two-parameter (c = d = 0) formula family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoParamVariant {
    CD0,
    BQoverA,
    BnegA,
}

/// The symmetric (b = −a, d = −c) formula pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricVariant {
    SymmCDsum,
    SymmTriple,
}

/// How the auxiliary parameter A of the well-poised formula is bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WellPoisedBinding {
    /// A stays the free symbolic variable `A`.
    Free,
    /// A is identified with the parameter a.
    A,
    /// A² = q: the whole identity is rewritten in the variable A via
    /// q ↦ A², and the collapsed single p-term corollary is used.
    SqrtQ,
}

/// The two antisymmetric specializations with even moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntiSymVariant {
    /// (a, b, −b, −a)
    ABBA,
    /// (a, b, −a, −b)
    ABAB,
}

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn sign(k: i64) -> GaussianRational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// 2^{−n} as an exact scalar.
fn half_pow(n: i64) -> GaussianRational {
    pow_gaussian(
        &GaussianRational::from_frac(1, 2),
        i32::try_from(n).expect("small moment order"),
    )
    .expect("powers of one half are exact")
}

fn qpow(e: i64) -> MPoly {
    MPoly::monomial(&[(Var::Q, e)])
}

/// The general double sum over (m, j): Laurent in a, with explicit
/// q-Pochhammer denominators.
pub fn mu_double_sum(n: u32) -> Result<RatFunc> {
    use Var::{A, B, C, D, Q};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let q = MPoly::var(Q);
    let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let mut total = RatFunc::zero();
    for m in 0..=n {
        let mut pre = RatFunc::from_poly(
            ctx.q_pochhammer_poly(&MPoly::monomial(&[(A, 1), (B, 1)]), m)?
                .mul(&ctx.q_pochhammer_poly(&MPoly::monomial(&[(A, 1), (C, 1)]), m)?)
                .mul(&ctx.q_pochhammer_poly(&MPoly::monomial(&[(A, 1), (D, 1)]), m)?)
                .mul(&qpow(m)),
        );
        pre = div_by_pochhammer(&pre, &ctx, &abcd, m)?;
        let mut inner = RatFunc::zero();
        for j in 0..=m {
            let base = MPoly::monomial(&[(A, 1), (Q, j)]).add(&MPoly::monomial(&[(A, -1), (Q, -j)]));
            let mut term = RatFunc::from_poly(
                base.pow(i32::try_from(n).expect("small moment order"))?
                    .mul(&MPoly::monomial(&[(Q, -j * j), (A, -2 * j)])),
            );
            term = div_by_pochhammer(&term, &ctx, &q, j)?;
            term = div_by_pochhammer(&term, &ctx, &MPoly::monomial(&[(Q, 1 - 2 * j), (A, -2)]), j)?;
            term = div_by_pochhammer(&term, &ctx, &q, m - j)?;
            term = div_by_pochhammer(
                &term,
                &ctx,
                &MPoly::monomial(&[(Q, 2 * j + 1), (A, 2)]),
                m - j,
            )?;
            inner = inner.add(&term);
        }
        total = total.add(&pre.mul(&inner));
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The general triple sum over (m, s, p).
pub fn mu_triple_sum(n: u32) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let mut total = RatFunc::zero();
    for m in 0..=n {
        let mut pre = RatFunc::from_poly(
            ctx.q_pochhammer_poly(&MPoly::monomial(&[(A, 1), (B, 1)]), m)?
                .mul(&ctx.q_pochhammer_poly(&MPoly::monomial(&[(A, 1), (C, 1)]), m)?)
                .mul(&ctx.q_pochhammer_poly(&MPoly::monomial(&[(A, 1), (D, 1)]), m)?)
                .mul(&qpow(m))
                .mul_scalar(&sign(m)),
        );
        pre = div_by_pochhammer(&pre, &ctx, &abcd, m)?;
        let mut sp = MPoly::zero();
        for s in 0..=n + 1 {
            let bd = ballot_diff(n, s);
            if bd == 0 {
                continue;
            }
            for p in 0..=n - 2 * s - m {
                let term = MPoly::monomial(&[(A, -n + 2 * s + 2 * p)])
                    .mul(&table.get(m + p, m))
                    .mul(&table.get(n - 2 * s - p, m))
                    .mul(&qpow((-n + 2 * s + p) * m + binom2(m)))
                    .mul_scalar(&int(bd));
                sp = sp.add(&term);
            }
        }
        total = total.add(&pre.mul_poly(&sp));
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The d = 0 polynomial formula, as 2ⁿμ_n(a,b,c,0;q) divided by 2ⁿ.
pub fn mu_d0(n: u32) -> Result<RatFunc> {
    use Var::{A, B, C};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    let mut total = MPoly::zero();
    for k in 0..=n {
        let bd = ballot_diff_half(n, k);
        if bd == 0 {
            continue;
        }
        let mut inner = MPoly::zero();
        for t in -k..=k / 2 {
            let rest = k - 2 * t;
            for u in 0..=k.min(rest) {
                for v in 0..=k.min(rest - u) {
                    let w = rest - u - v;
                    if !(0..=k).contains(&w) {
                        continue;
                    }
                    let coeff = table
                        .get(u + v + t, v)
                        .mul(&table.get(v + w + t, w))
                        .mul(&table.get(w + u + t, u));
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = MPoly::monomial(&[(A, u), (B, v), (C, w)])
                        .mul(&coeff)
                        .mul(&qpow(binom2(t + 1)))
                        .mul_scalar(&sign(t));
                    inner = inner.add(&term);
                }
            }
        }
        total = total.add(&inner.mul_scalar(&int(bd)));
    }
    Ok(RatFunc::from_poly(total).mul_scalar(&half_pow(n)))
}

/// The three two-parameter (c = d = 0) formulas.
pub fn mu_two_param(variant: TwoParamVariant, n: u32) -> Result<RatFunc> {
    use Var::{A, B, Q};
    let n = i64::from(n);
    let ctx = QCtx::q();
    match variant {
        TwoParamVariant::CD0 => {
            let mut table = ctx.binom_table();
            let mut total = MPoly::zero();
            for k in 0..=n {
                let bd = ballot_diff_half(n, k);
                if bd == 0 {
                    continue;
                }
                let mut inner = MPoly::zero();
                for t in 0..=k / 2 {
                    for u in 0..=k - 2 * t {
                        let v = k - 2 * t - u;
                        let term = table
                            .multinomial(u + v + t, &[u, v, t])?
                            .mul(&MPoly::monomial(&[(A, u), (B, v)]))
                            .mul(&qpow(binom2(t + 1)))
                            .mul_scalar(&sign(t));
                        inner = inner.add(&term);
                    }
                }
                total = total.add(&inner.mul_scalar(&int(bd)));
            }
            Ok(RatFunc::from_poly(total).mul_scalar(&half_pow(n)))
        }
        TwoParamVariant::BQoverA => {
            let mut total = MPoly::zero();
            for k in 0..=n {
                let bd = ballot_diff_half(n, k);
                if bd == 0 {
                    continue;
                }
                let mut inner = MPoly::zero();
                for i in 0..=k {
                    inner = inner.add(&MPoly::monomial(&[(A, 2 * i), (Q, i * (k - i - 1))]));
                }
                let term = MPoly::monomial(&[(Q, k), (A, -k)])
                    .mul(&inner)
                    .mul_scalar(&int(bd));
                total = total.add(&term);
            }
            Ok(RatFunc::from_poly(total).mul_scalar(&half_pow(n)))
        }
        TwoParamVariant::BnegA => {
            if n % 2 == 1 {
                return Ok(RatFunc::zero());
            }
            let half_n = n / 2;
            let ctx2 = QCtx::q2();
            let q = MPoly::var(Q);
            let mut table = ctx.binom_table();
            let mut total = MPoly::zero();
            for k in 0..=half_n {
                let bd = binom(2 * half_n, half_n - k) - binom(2 * half_n, half_n - k - 1);
                if bd == 0 {
                    continue;
                }
                let mut inner = MPoly::zero();
                for i in 0..=k {
                    let term = ctx2
                        .q_pochhammer_poly(&q, k - i)?
                        .mul(&table.get(2 * k - i, i))
                        .mul(&MPoly::monomial(&[(A, 2 * k - 2 * i), (Q, binom2(i + 1))]))
                        .mul_scalar(&sign(i));
                    inner = inner.add(&term);
                }
                total = total.add(&inner.mul_scalar(&int(bd)));
            }
            Ok(RatFunc::from_poly(total).mul_scalar(&half_pow(n)))
        }
    }
}

/// The two symmetric-case formulas; `n` is the half-index, the value is
/// μ_{2n}(a,−a,c,−c;q).
pub fn mu_symmetric(variant: SymmetricVariant, n: u32) -> Result<RatFunc> {
    use Var::{A, C, Q};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let ctx2 = QCtx::q2();
    let a2c2 = MPoly::monomial(&[(A, 2), (C, 2)]);
    let qa2c2 = MPoly::monomial(&[(A, 2), (C, 2), (Q, 1)]);
    let neg_a2 = MPoly::monomial(&[(A, 2)]).neg();
    let mut total = RatFunc::zero();
    match variant {
        SymmetricVariant::SymmCDsum => {
            for m in 0..=n {
                let mut pre = RatFunc::from_poly(
                    ctx.q_pochhammer_poly(&neg_a2, 2 * m)?
                        .mul(&ctx2.q_pochhammer_poly(&a2c2, m)?)
                        .mul(&qpow(2 * m)),
                );
                pre = div_by_pochhammer(&pre, &ctx2, &qa2c2, m)?;
                let mut inner = RatFunc::zero();
                for j in 0..=m {
                    let base =
                        MPoly::monomial(&[(A, 1), (Q, j)]).add(&MPoly::monomial(&[(A, -1), (Q, -j)]));
                    let mut term = RatFunc::from_poly(
                        base.pow(i32::try_from(2 * n).expect("small moment order"))?
                            .mul(&MPoly::monomial(&[(A, -4 * j), (Q, -2 * j * j)])),
                    );
                    let q2 = MPoly::monomial(&[(Q, 2)]);
                    term = div_by_pochhammer(&term, &ctx2, &q2, m - j)?;
                    term = div_by_pochhammer(
                        &term,
                        &ctx2,
                        &MPoly::monomial(&[(A, 4), (Q, 2 + 4 * j)]),
                        m - j,
                    )?;
                    term = div_by_pochhammer(&term, &ctx2, &q2, j)?;
                    term = div_by_pochhammer(
                        &term,
                        &ctx2,
                        &MPoly::monomial(&[(A, -4), (Q, 2 - 4 * j)]),
                        j,
                    )?;
                    inner = inner.add(&term);
                }
                total = total.add(&pre.mul(&inner));
            }
        }
        SymmetricVariant::SymmTriple => {
            let mut table2 = ctx2.binom_table();
            for m in 0..=n {
                let mut pre = RatFunc::from_poly(
                    ctx.q_pochhammer_poly(&neg_a2, 2 * m)?
                        .mul(&ctx2.q_pochhammer_poly(&a2c2, m)?)
                        .mul(&qpow(2 * m))
                        .mul_scalar(&sign(m)),
                );
                pre = div_by_pochhammer(&pre, &ctx2, &qa2c2, m)?;
                let mut sp = MPoly::zero();
                for s in 0..=2 * n + 2 {
                    let bd = binom(2 * n + 1, s) - binom(2 * n + 1, s - 1);
                    if bd == 0 {
                        continue;
                    }
                    for p in 0..=n - m - s {
                        let term = MPoly::monomial(&[(A, -2 * n + 4 * p + 2 * s)])
                            .mul(&table2.get(m + p, m))
                            .mul(&table2.get(n - p - s, m))
                            .mul(&qpow(-2 * m * (n - p - s) + m * (m - 1)))
                            .mul_scalar(&int(bd));
                        sp = sp.add(&term);
                    }
                }
                total = total.add(&pre.mul_poly(&sp));
            }
        }
    }
    Ok(total.mul_scalar(&half_pow(2 * n)))
}

/// τ_{2n}(a², c²) = 4ⁿ(qa²c²;q²)_n μ_{2n}(a,−a,c,−c;q)/(1−q)ⁿ, verified to
/// be a polynomial (an inexact quotient is an error).
pub fn tau_2n(n: u32) -> Result<MPoly> {
    use Var::{A, B, C, D, Q};
    let spec = crate::oracle::aw_spec().specialized(
        "askey-wilson at b=-a, d=-c",
        &[
            (B, RatFunc::var(A).neg()),
            (D, RatFunc::var(C).neg()),
        ]
        .into_iter()
        .collect(),
    );
    let table = crate::oracle::moment_table(&spec, 2 * n)?;
    let ctx2 = QCtx::q2();
    let poch = ctx2.q_pochhammer_poly(&MPoly::monomial(&[(A, 2), (C, 2), (Q, 1)]), i64::from(n))?;
    let one_minus_q = MPoly::one_minus_monomial(&[(Q, 1)]);
    let mut tau = table.moments[2 * n as usize]
        .mul_poly(&poch)
        .mul_scalar(&pow_gaussian(&int(4), i32::try_from(n).expect("small"))?);
    for _ in 0..n {
        tau = tau.div_by_poly(&one_minus_q)?;
    }
    tau.to_polynomial()
}

/// The symmetric-polynomial product: (aA,bA,cA,dA;q)_m · ews(m), i.e. the
/// finite j-sum form. `a_var` names the variable playing the auxiliary
/// parameter A.
pub fn ews_product(a_var: Var, m: i64) -> Result<RatFunc> {
    ews_product_mode(&WpMode::new(a_var, Var::Q, 1), m)
}

/// The very-well-poised series value ews(m) itself: [`ews_product`] divided
/// by (aA,bA,cA,dA;q)_m.
pub fn ews(a_var: Var, m: i64) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let ctx = QCtx::q();
    let mut value = ews_product(a_var, m)?;
    for v in [A, B, C, D] {
        value = div_by_pochhammer(&value, &ctx, &MPoly::monomial(&[(v, 1), (a_var, 1)]), m)?;
    }
    Ok(value)
}

/// One very-well-poised series term, bundled with its defining data.
#[derive(Debug, Clone)]
pub struct EwsTerm {
    pub a_var: Var,
    pub m: i64,
    pub value: RatFunc,
}

impl EwsTerm {
    pub fn new(a_var: Var, m: i64) -> Result<EwsTerm> {
        Ok(EwsTerm {
            a_var,
            m,
            value: ews(a_var, m)?,
        })
    }
}

/// Realization of the well-poised formula's variable bindings: which
/// variable carries the auxiliary parameter A, and how a power of q is
/// written (q itself, or A² when the identity is rewritten via q ↦ A²).
struct WpMode {
    cap: Var,
    q_var: Var,
    q_step: i64,
}

impl WpMode {
    fn new(cap: Var, q_var: Var, q_step: i64) -> WpMode {
        WpMode { cap, q_var, q_step }
    }

    fn for_binding(binding: WellPoisedBinding) -> WpMode {
        match binding {
            WellPoisedBinding::Free => WpMode::new(Var::CapA, Var::Q, 1),
            WellPoisedBinding::A => WpMode::new(Var::A, Var::Q, 1),
            WellPoisedBinding::SqrtQ => WpMode::new(Var::CapA, Var::CapA, 2),
        }
    }

    /// q^e in this mode.
    fn qp(&self, e: i64) -> (Var, i64) {
        (self.q_var, self.q_step * e)
    }

    /// Monomial `∏ pairs · q^qe` in this mode.
    fn mono(&self, pairs: &[(Var, i64)], qe: i64) -> MPoly {
        let mut all = pairs.to_vec();
        all.push(self.qp(qe));
        MPoly::monomial(&all)
    }

    fn ctx(&self) -> QCtx {
        QCtx::var_pow(self.q_var, i32::try_from(self.q_step).expect("small step"))
    }
}

/// The finite j-sum equal to (aA,bA,cA,dA;q)_m·ews(m), in the given mode.
///
/// The leading ratio (A²/q;q)_j/(1−A²/q) is transcribed in its cancelled
/// form (A²;q)_{j−1} — the divisor is literally the Pochhammer's first
/// factor — which keeps the A² = q binding meaningful (both vanish there).
fn ews_product_mode(mode: &WpMode, m: i64) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let cap = mode.cap;
    let ctx = mode.ctx();
    let mut table = ctx.binom_table();
    let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let mut total = RatFunc::zero();
    for j in 0..=m {
        let head = if j == 0 {
            RatFunc::one()
        } else {
            let num = ctx
                .q_pochhammer_poly(&mode.mono(&[(cap, 2)], 0), j - 1)?
                .mul(&MPoly::one().sub(&mode.mono(&[(cap, 2)], 2 * j - 1)));
            div_by_pochhammer(
                &RatFunc::from_poly(num),
                &ctx,
                &mode.mono(&[(cap, 2)], m),
                j,
            )?
        };
        let mut term = head
            .mul_poly(&table.get(m, j))
            .mul_scalar(&sign(j))
            .mul_poly(&mode.mono(&[], binom2(j)))
            .mul_poly(&abcd.pow(i32::try_from(j).expect("small index"))?);
        for v in [A, B, C, D] {
            term = term.mul_poly(&ctx.q_pochhammer_poly(&mode.mono(&[(cap, 1), (v, -1)], 0), j)?);
        }
        for v in [A, B, C, D] {
            term = term.mul_poly(
                &ctx.q_pochhammer_poly(&mode.mono(&[(cap, 1), (v, 1)], j), m - j)?,
            );
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// The symmetric well-poised moment formula under the chosen binding of A.
pub fn mu_well_poised(binding: WellPoisedBinding, n: u32) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let n = i64::from(n);
    let mode = WpMode::for_binding(binding);
    let ctx = mode.ctx();
    let mut table = ctx.binom_table();
    let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let cap = mode.cap;
    let mut total = RatFunc::zero();
    for m in 0..=n {
        let mut pre = ews_product_mode(&mode, m)?
            .mul_poly(&mode.mono(&[], m))
            .mul_scalar(&sign(m));
        pre = div_by_pochhammer(&pre, &ctx, &mode.mono(&[(cap, 2)], 0), m)?;
        pre = div_by_pochhammer(&pre, &ctx, &abcd, m)?;
        let mut sp = MPoly::zero();
        match binding {
            WellPoisedBinding::Free | WellPoisedBinding::A => {
                for s in 0..=n + 1 {
                    let bd = ballot_diff(n, s);
                    if bd == 0 {
                        continue;
                    }
                    for p in 0..=n - 2 * s - m {
                        let term = mode
                            .mono(&[(cap, -n + 2 * s + 2 * p)], m * (-n + 2 * s + p) + binom2(m))
                            .mul(&table.get(m + p, m))
                            .mul(&table.get(n - 2 * s - p, m))
                            .mul_scalar(&int(bd));
                        sp = sp.add(&term);
                    }
                }
            }
            WellPoisedBinding::SqrtQ => {
                for s in 0..=n + 1 {
                    let bd = ballot_diff(n, s);
                    if bd == 0 {
                        continue;
                    }
                    let term = mode
                        .mono(&[(cap, -n + 2 * s)], -n * m + 2 * s * m + binom2(m))
                        .mul(&table.get(n + m + 1 - 2 * s, 2 * m + 1))
                        .mul_scalar(&int(bd));
                    sp = sp.add(&term);
                }
            }
        }
        total = total.add(&pre.mul_poly(&sp));
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The weighted-matching polynomial P̄(n, m) = (1−q)^{(n−m)/2}P(n, m) via
/// its ballot-difference closed form; zero when n and m have different
/// parity.
pub fn op_bar(n: i64, m: i64) -> Result<MPoly> {
    if m < 0 || (n - m).rem_euclid(2) == 1 {
        return Ok(MPoly::zero());
    }
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    let mut total = MPoly::zero();
    let mut k = n.rem_euclid(2);
    while k <= n {
        let bd = ballot_diff_half(n, k);
        if bd != 0 {
            let half = (k - m) / 2;
            let term = table
                .get((k + m) / 2, half)
                .mul(&qpow(binom2(half + 1)))
                .mul_scalar(&sign(half))
                .mul_scalar(&int(bd));
            total = total.add(&term);
        }
        k += 2;
    }
    Ok(total)
}

/// The four-index contact-count formula.
pub fn mu_main(n: u32) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let ac = MPoly::monomial(&[(A, 1), (C, 1)]);
    let ad = MPoly::monomial(&[(A, 1), (D, 1)]);
    let bd = MPoly::monomial(&[(B, 1), (D, 1)]);
    let op_cache: Vec<MPoly> = (0..=n).map(|k| op_bar(n, k)).collect::<Result<_>>()?;
    let mut total = RatFunc::zero();
    for alpha in 0..=n {
        for beta in 0..=n - alpha {
            for gamma in 0..=n - alpha - beta {
                for delta in 0..=n - alpha - beta - gamma {
                    let k = alpha + beta + gamma + delta;
                    let op = &op_cache[k as usize];
                    if op.is_zero() {
                        continue;
                    }
                    let mut term = RatFunc::from_poly(
                        MPoly::monomial(&[(A, alpha), (B, beta), (C, gamma), (D, delta)])
                            .mul(op)
                            .mul(&table.multinomial(k, &[alpha, beta, gamma, delta])?)
                            .mul(&ctx.q_pochhammer_poly(&ad, beta + gamma)?)
                            .mul(&ctx.q_pochhammer_poly(&ac, beta)?)
                            .mul(&ctx.q_pochhammer_poly(&bd, gamma)?),
                    );
                    term = div_by_pochhammer(&term, &ctx, &abcd, beta + gamma)?;
                    total = total.add(&term);
                }
            }
        }
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The five-index variant with the extra index t.
pub fn mu_main2(n: u32) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let ac = MPoly::monomial(&[(A, 1), (C, 1)]);
    let bd_m = MPoly::monomial(&[(B, 1), (D, 1)]);
    let mut total = RatFunc::zero();
    for k in 0..=n {
        let bdiff = ballot_diff_half(n, k);
        if bdiff == 0 {
            continue;
        }
        let mut layer = RatFunc::zero();
        for t in -k..=k / 2 {
            let rest = k - 2 * t;
            for alpha in 0..=rest {
                for beta in 0..=rest - alpha {
                    for gamma in 0..=rest - alpha - beta {
                        let delta = rest - alpha - beta - gamma;
                        let b1 = table.get(alpha + beta + gamma + t, alpha);
                        if b1.is_zero() {
                            continue;
                        }
                        let b2 =
                            table.multinomial(beta + gamma + delta + t, &[beta, gamma, delta + t])?;
                        if b2.is_zero() {
                            continue;
                        }
                        let b3 = table.get(delta + alpha + t, delta);
                        if b3.is_zero() {
                            continue;
                        }
                        let mut term = RatFunc::from_poly(
                            MPoly::monomial(&[(A, alpha), (B, beta), (C, gamma), (D, delta)])
                                .mul(&ctx.q_pochhammer_poly(&ac, beta)?)
                                .mul(&ctx.q_pochhammer_poly(&bd_m, gamma)?)
                                .mul(&b1)
                                .mul(&b2)
                                .mul(&b3)
                                .mul(&qpow(binom2(t + 1)))
                                .mul_scalar(&sign(t)),
                        );
                        term = div_by_pochhammer(&term, &ctx, &abcd, beta + gamma)?;
                        layer = layer.add(&term);
                    }
                }
            }
        }
        total = total.add(&layer.mul_scalar(&int(bdiff)));
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The q = 0 formula with its piecewise prefactor Φ(β, γ). The result has
/// no q dependence; compare against the oracle specialized at q = 0.
pub fn mu_q0(n: u32) -> Result<RatFunc> {
    use Var::{A, B, C, D};
    let n = i64::from(n);
    let one_minus_abcd = MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
    let ac = MPoly::one_minus_monomial(&[(A, 1), (C, 1)]);
    let ad = MPoly::one_minus_monomial(&[(A, 1), (D, 1)]);
    let bd = MPoly::one_minus_monomial(&[(B, 1), (D, 1)]);
    let phi = |beta: i64, gamma: i64| -> Result<RatFunc> {
        let num = match (beta != 0, gamma != 0) {
            (true, true) => ac.mul(&bd).mul(&ad),
            (false, true) => bd.mul(&ad),
            (true, false) => ac.mul(&ad),
            (false, false) => return Ok(RatFunc::one()),
        };
        RatFunc::from_num_den(num, one_minus_abcd.clone())
    };
    let mut total = RatFunc::zero();
    for k in 0..=n {
        let bdiff = ballot_diff_half(n, k);
        if bdiff == 0 {
            continue;
        }
        let mut layer = RatFunc::zero();
        for alpha in 0..=k {
            for beta in 0..=k - alpha {
                for gamma in 0..=k - alpha - beta {
                    let delta = k - alpha - beta - gamma;
                    let term = phi(beta, gamma)?.mul_poly(&MPoly::monomial(&[
                        (A, alpha),
                        (B, beta),
                        (C, gamma),
                        (D, delta),
                    ]));
                    layer = layer.add(&term);
                }
            }
        }
        total = total.add(&layer.mul_scalar(&int(bdiff)));
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The c = q/a, d = q/b positivity formula.
pub fn mu_flip(n: u32) -> Result<RatFunc> {
    use Var::{A, B, Q};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let mut total = RatFunc::zero();
    for k in 0..=n {
        let bdiff = ballot_diff_half(n, k);
        if bdiff == 0 {
            continue;
        }
        let mut inner = MPoly::zero();
        for cap_a in -k..=k {
            for cap_b in -(k - cap_a.abs())..=k - cap_a.abs() {
                if (cap_a + cap_b - k).rem_euclid(2) != 0 {
                    continue;
                }
                inner = inner.add(&MPoly::monomial(&[
                    (A, cap_a),
                    (B, cap_b),
                    (Q, (k - cap_a - cap_b) / 2),
                ]));
            }
        }
        let layer = RatFunc::from_poly(inner.mul_scalar(&int(bdiff)))
            .div_by_poly(&ctx.q_int(k + 1)?)?;
        total = total.add(&layer);
    }
    Ok(total.mul_scalar(&half_pow(n)))
}

/// The two antisymmetric even-moment formulas; `n` is the half-index, the
/// value is μ_{2n} at (a,b,−b,−a) or (a,b,−a,−b).
pub fn mu_antisym(variant: AntiSymVariant, n: u32) -> Result<RatFunc> {
    use Var::{A, B, Q};
    let n = i64::from(n);
    let ctx = QCtx::q();
    let ctx2 = QCtx::q2();
    let q = MPoly::var(Q);
    let qa2b2 = MPoly::monomial(&[(Q, 1), (A, 2), (B, 2)]);
    let mut total = RatFunc::zero();
    match variant {
        AntiSymVariant::ABBA => {
            let mut table = ctx.binom_table();
            let neg_a2 = MPoly::monomial(&[(A, 2)]).neg();
            for alpha in 0..=n {
                for beta in 0..=n - alpha {
                    let op = op_bar(2 * n, 2 * alpha + 2 * beta)?;
                    if op.is_zero() {
                        continue;
                    }
                    let mut term = RatFunc::from_poly(
                        MPoly::monomial(&[(A, 2 * alpha), (B, 2 * beta)])
                            .mul(&op)
                            .mul(&table.get(2 * alpha + 2 * beta, 2 * alpha))
                            .mul(&ctx2.q_pochhammer_poly(&q, alpha)?)
                            .mul(&ctx2.q_pochhammer_poly(&q, beta)?)
                            .mul(&ctx.q_pochhammer_poly(&neg_a2, 2 * beta)?),
                    );
                    term = div_by_pochhammer(&term, &ctx2, &qa2b2, beta)?;
                    total = total.add(&term);
                }
            }
        }
        AntiSymVariant::ABAB => {
            let mut table2 = ctx2.binom_table();
            let neg_q = MPoly::var(Q).neg();
            for m in 0..=n {
                let op = op_bar(2 * n, 2 * m)?;
                if op.is_zero() {
                    continue;
                }
                let mut pre = RatFunc::from_poly(op.mul(&ctx2.q_pochhammer_poly(&q, m)?));
                pre = div_by_pochhammer(&pre, &ctx2, &qa2b2, m)?;
                let mut inner = MPoly::zero();
                for alpha in 0..=m {
                    for beta in 0..=m - alpha {
                        let i = m - alpha - beta;
                        let term = MPoly::monomial(&[
                            (A, 2 * alpha + 2 * i),
                            (B, 2 * beta + 2 * i),
                            (Q, binom2(i)),
                        ])
                        .mul(&ctx.q_pochhammer_poly(&neg_q, i)?)
                        .mul(&table2.multinomial(m, &[alpha, beta, i])?);
                        inner = inner.add(&term);
                    }
                }
                total = total.add(&pre.mul_poly(&inner));
            }
        }
    }
    Ok(total.mul_scalar(&half_pow(2 * n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{aw_spec, moment_table};
    use std::collections::BTreeMap;

    fn oracle_moments(n_max: u32) -> Vec<RatFunc> {
        moment_table(&aw_spec(), n_max).unwrap().moments
    }

    #[test]
    fn double_sum_matches_oracle_small() {
        let oracle = oracle_moments(3);
        for n in 0..=3u32 {
            let f = mu_double_sum(n).unwrap();
            assert!(f.equal(&oracle[n as usize]), "n={n}");
        }
    }

    #[test]
    fn triple_sum_matches_double_sum() {
        for n in 0..=3u32 {
            assert!(
                mu_triple_sum(n).unwrap().equal(&mu_double_sum(n).unwrap()),
                "n={n}"
            );
        }
    }

    #[test]
    fn d0_matches_oracle_specialization() {
        let zero_d: BTreeMap<Var, RatFunc> =
            [(Var::D, RatFunc::zero())].into_iter().collect();
        let oracle = oracle_moments(4);
        for n in 0..=4u32 {
            let direct = oracle[n as usize].substitute(&zero_d).unwrap();
            assert!(mu_d0(n).unwrap().equal(&direct), "n={n}");
        }
    }

    #[test]
    fn two_param_values() {
        use Var::{A, B};
        // k=1 term of the c=d=0 formula: μ_1 = (a+b)/2.
        let expected = RatFunc::from_poly(
            MPoly::var(A)
                .add(&MPoly::var(B))
                .mul_scalar(&GaussianRational::from_frac(1, 2)),
        );
        assert!(mu_two_param(TwoParamVariant::CD0, 1).unwrap().equal(&expected));
        // Odd moments vanish at b = −a.
        assert!(mu_two_param(TwoParamVariant::BnegA, 3).unwrap().is_zero());
        // b = q/a specialization of the c=d=0 formula.
        let sub: BTreeMap<Var, RatFunc> = [(
            Var::B,
            RatFunc::var_pow(Var::A, -1).mul(&RatFunc::var(Var::Q)),
        )]
        .into_iter()
        .collect();
        for n in 0..=4u32 {
            let specialized = mu_two_param(TwoParamVariant::CD0, n)
                .unwrap()
                .substitute(&sub)
                .unwrap();
            assert!(
                mu_two_param(TwoParamVariant::BQoverA, n).unwrap().equal(&specialized),
                "n={n}"
            );
        }
    }

    #[test]
    fn symmetric_formulas_match_oracle() {
        let bindings: BTreeMap<Var, RatFunc> = [
            (Var::B, RatFunc::var(Var::A).neg()),
            (Var::D, RatFunc::var(Var::C).neg()),
        ]
        .into_iter()
        .collect();
        let oracle = oracle_moments(4);
        for n in 0..=2u32 {
            let direct = oracle[2 * n as usize].substitute(&bindings).unwrap();
            assert!(
                mu_symmetric(SymmetricVariant::SymmCDsum, n).unwrap().equal(&direct),
                "cd-sum n={n}"
            );
            assert!(
                mu_symmetric(SymmetricVariant::SymmTriple, n).unwrap().equal(&direct),
                "triple n={n}"
            );
        }
    }

    #[test]
    fn tau_is_polynomial_with_expected_mass() {
        use num_traits::ToPrimitive;
        // τ_2 coefficient sum at a²=c²=q=1 is 2²·1!! = 4.
        let tau = tau_2n(1).unwrap();
        assert!(!tau.has_negative_exponents());
        assert!(tau.is_integer_poly());
        let sum = tau.coefficient_sum();
        assert!(sum.is_real());
        assert_eq!(sum.re.to_integer().to_i64().unwrap(), 4);
    }

    #[test]
    fn ews_product_is_symmetric_polynomial() {
        use Var::{A, B, C, D};
        for m in 0..=3 {
            let p = ews_product(Var::CapA, m).unwrap();
            assert!(p.is_polynomial(), "m={m} not polynomial");
            // Swap two parameter pairs and compare.
            for (x, y) in [(A, B), (C, D), (A, D)] {
                let swap: BTreeMap<Var, RatFunc> = [
                    (x, RatFunc::var(y)),
                    (y, RatFunc::var(x)),
                ]
                .into_iter()
                .collect();
                let swapped = p.substitute(&swap).unwrap();
                assert!(swapped.equal(&p), "m={m} swap {x:?}<->{y:?}");
            }
        }
    }

    #[test]
    fn well_poised_bindings_agree_with_triple_sum() {
        for n in 0..=3u32 {
            let triple = mu_triple_sum(n).unwrap();
            let at_a = mu_well_poised(WellPoisedBinding::A, n).unwrap();
            assert!(at_a.equal(&triple), "A binding n={n}");
            let free = mu_well_poised(WellPoisedBinding::Free, n).unwrap();
            assert!(free.equal(&triple), "free binding n={n}");
        }
    }

    #[test]
    fn well_poised_sqrt_q_matches_oracle_under_square_substitution() {
        let square: BTreeMap<Var, RatFunc> = [(
            Var::Q,
            RatFunc::var_pow(Var::CapA, 2),
        )]
        .into_iter()
        .collect();
        let oracle = oracle_moments(3);
        for n in 0..=3u32 {
            let direct = oracle[n as usize].substitute(&square).unwrap();
            let f = mu_well_poised(WellPoisedBinding::SqrtQ, n).unwrap();
            assert!(f.equal(&direct), "n={n}");
        }
    }

    #[test]
    fn op_bar_small_values() {
        // One empty matching: no factor at all.
        assert!(op_bar(3, 3).unwrap().is_one());
        // P(2,0) = 1 single edge, no crossing: P̄(2,0) = 1 − q.
        let p20 = op_bar(2, 0).unwrap();
        assert_eq!(p20, MPoly::one_minus_monomial(&[(Var::Q, 1)]));
        // Parity mismatch.
        assert!(op_bar(3, 2).unwrap().is_zero());
        // P̄(4,0) = (1−q)²·P(4,0) with P(4,0) = 2 + q: three complete
        // matchings on 4 points with 0, 0, 1 crossings.
        let p40 = op_bar(4, 0).unwrap();
        let expected = MPoly::one_minus_monomial(&[(Var::Q, 1)])
            .pow(2)
            .unwrap()
            .mul(&MPoly::int(2).add(&MPoly::var(Var::Q)));
        assert_eq!(p40, expected);
    }

    #[test]
    fn main_formulas_match_oracle_small() {
        let oracle = oracle_moments(3);
        for n in 0..=3u32 {
            assert!(mu_main(n).unwrap().equal(&oracle[n as usize]), "main n={n}");
            assert!(mu_main2(n).unwrap().equal(&oracle[n as usize]), "main2 n={n}");
        }
    }

    #[test]
    fn q0_matches_oracle_at_q_zero() {
        let q_zero: BTreeMap<Var, RatFunc> =
            [(Var::Q, RatFunc::zero())].into_iter().collect();
        let oracle = oracle_moments(3);
        for n in 0..=3u32 {
            let direct = oracle[n as usize].substitute(&q_zero).unwrap();
            assert!(mu_q0(n).unwrap().equal(&direct), "n={n}");
        }
    }

    #[test]
    fn flip_form_matches_oracle_specialization() {
        let bindings: BTreeMap<Var, RatFunc> = [
            (
                Var::C,
                RatFunc::var(Var::Q).mul(&RatFunc::var_pow(Var::A, -1)),
            ),
            (
                Var::D,
                RatFunc::var(Var::Q).mul(&RatFunc::var_pow(Var::B, -1)),
            ),
        ]
        .into_iter()
        .collect();
        let oracle = oracle_moments(3);
        for n in 0..=3u32 {
            let direct = oracle[n as usize].substitute(&bindings).unwrap();
            assert!(mu_flip(n).unwrap().equal(&direct), "n={n}");
        }
    }

    #[test]
    fn antisym_formulas_match_oracle() {
        let oracle = oracle_moments(4);
        let abba: BTreeMap<Var, RatFunc> = [
            (Var::C, RatFunc::var(Var::B).neg()),
            (Var::D, RatFunc::var(Var::A).neg()),
        ]
        .into_iter()
        .collect();
        let abab: BTreeMap<Var, RatFunc> = [
            (Var::C, RatFunc::var(Var::A).neg()),
            (Var::D, RatFunc::var(Var::B).neg()),
        ]
        .into_iter()
        .collect();
        for n in 0..=2u32 {
            let direct = oracle[2 * n as usize].substitute(&abba).unwrap();
            assert!(
                mu_antisym(AntiSymVariant::ABBA, n).unwrap().equal(&direct),
                "abba n={n}"
            );
            let direct = oracle[2 * n as usize].substitute(&abab).unwrap();
            assert!(
                mu_antisym(AntiSymVariant::ABAB, n).unwrap().equal(&direct),
                "abab n={n}"
            );
        }
    }
}
