//! Connection formulas: closed forms for the moments of four families that
//! arise from the two-parameter moments μ_n(a,b,0,0;q) by rescaling.
//!
//! Each family pairs a three-term recurrence (its oracle, defined in the
//! `oracle` module) with one or more published closed-form expressions, and
//! every closed form is verified symbolically against the recurrence:
//!
//!  * **q-Laguerre** (`b_n = [n]_q + y[n+1]_q`, `λ_n = y[n]_q²`): moments
//!    ν_n(y;q) with a binomial-difference form and an alternating
//!    q-integer-power form, plus the identity showing they agree.
//!  * **PASEP partition function** (`b_n = 1+y+(a+by)qⁿ`,
//!    `λ_n = y(1−qⁿ)(1−abq^{n−1})`): `(1−q)ⁿ Z_n(a,b,y;q)` is the moment;
//!    Z_n has a q-binomial form and a q-multinomial form.
//!  * **Shifted two-parameter moments** (`b_n = d+(a+b)qⁿ`,
//!    `λ_n = (1−qⁿ)(c−abq^{n−1})`): moments R_n(a,b,c,d;q) with a single
//!    polynomial closed form.
//!  * **(t,q)-Euler numbers**: moments of the contracted continued fraction
//!    with coefficients `[k]_q [k]_{t,q}`, with three independent closed
//!    forms (a reflection form built from the kernel polynomial T_k, a
//!    q-Pochhammer form, and a quotient form), plus the kernel identity
//!    relating the first two.
//!
//! The rescaling lemma behind all of these — if `b_n, λ_n` moments are μ_n,
//! then `c(d+b_n), c²λ_n` moments are `cⁿ Σ d^{n−m} C(n,m) μ_m` — is
//! exercised end-to-end by [`rescaling_consistency`], which rebuilds each
//! family's moments from the two-parameter table. The square roots appearing
//! in the textbook substitutions are eliminated by evaluating at `y = t²`
//! (respectively `c = t²`), keeping everything inside exact rational
//! functions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{MPoly, RatFunc, Var};
use crate::error::{AwError, Result};
use crate::oracle::{
    aw_two_param_spec, moment_table, pasep_spec, q_laguerre_spec, shifted_two_param_spec,
    tq_euler_spec, RecurrenceSpec,
};
use crate::qcalc::{binom, QCtx};
use crate::report::VerificationReport;

/// Cap for the symbolic q-Laguerre equivalence checks.
pub const MAX_LAGUERRE_CHECK_N: i64 = 8;
/// Cap for the PASEP and shifted-two-parameter symbolic checks.
pub const MAX_PARTITION_CHECK_N: i64 = 6;
/// Cap for the (t,q)-Euler reflection and Pochhammer forms.
pub const MAX_EULER_N: i64 = 6;
/// Cap for the (t,q)-Euler quotient form (its denominator products grow
/// fastest).
pub const MAX_EULER_QUOTIENT_N: i64 = 5;
/// Cap for the kernel-identity check.
pub const MAX_KERNEL_K: i64 = 8;
/// Cap for the rescaling consistency check.
pub const MAX_RESCALING_N: i64 = 6;

fn require_nonnegative(n: i64) -> Result<()> {
    if n < 0 {
        return Err(AwError::InvalidParameter(format!(
            "moment index must be nonnegative, got {n}"
        )));
    }
    Ok(())
}

fn require_at_most(n: i64, cap: i64, what: &str) -> Result<()> {
    require_nonnegative(n)?;
    if n > cap {
        return Err(AwError::InvalidParameter(format!(
            "{what} is capped at {cap}, got {n}"
        )));
    }
    Ok(())
}

fn one_minus_q_pow(n: i64) -> MPoly {
    MPoly::one_minus_monomial(&[(Var::Q, 1)])
        .pow(n as i32)
        .expect("nonnegative power")
}

fn signed(p: MPoly, negative: bool) -> MPoly {
    if negative {
        p.neg()
    } else {
        p
    }
}

/// The binomial-difference form of the q-Laguerre moment:
///
/// `ν_n = (1−q)^{-n} Σ_{k=0}^n Σ_{j=0}^{n−k} y^j (C(n,j)C(n,j+k) −
///  C(n,j−1)C(n,j+k+1)) Σ_{i=0}^k (−1)^k y^i q^{i(k+1−i)}`.
pub fn laguerre_moment_binomial_form(n: i64) -> Result<RatFunc> {
    require_nonnegative(n)?;
    let mut num = MPoly::zero();
    for k in 0..=n {
        let mut inner = MPoly::zero();
        for i in 0..=k {
            inner = inner.add(&MPoly::monomial(&[(Var::Y, i), (Var::Q, i * (k + 1 - i))]));
        }
        inner = signed(inner, k % 2 == 1);
        for j in 0..=(n - k) {
            let coeff = binom(n, j) * binom(n, j + k) - binom(n, j - 1) * binom(n, j + k + 1);
            if coeff == 0 {
                continue;
            }
            let term = inner
                .mul(&MPoly::int(coeff))
                .mul(&MPoly::var_pow(Var::Y, j as i32));
            num = num.add(&term);
        }
    }
    RatFunc::from_num_den(num, one_minus_q_pow(n))
}

/// The alternating q-integer-power form of the q-Laguerre moment:
///
/// `ν_n = Σ_{i=0}^n y^i Σ_{j=0}^i (−1)^j [i−j]_q^n q^{i(j−i)}
///  (C(n,j) q^{i−j} + C(n,j−1))`.
///
/// The `q^{i(j−i)}` factors have negative exponents; the intermediate sums
/// are Laurent polynomials that collapse to an ordinary polynomial.
pub fn laguerre_moment_alternating_form(n: i64) -> Result<RatFunc> {
    require_nonnegative(n)?;
    Ok(RatFunc::from_poly(laguerre_alternating_sum(n)?))
}

fn laguerre_alternating_sum(n: i64) -> Result<MPoly> {
    let ctx = QCtx::q();
    let mut sum = MPoly::zero();
    for i in 0..=n {
        for j in 0..=i {
            let power = ctx.q_int(i - j)?.pow(n as i32)?;
            let bracket = MPoly::int(binom(n, j))
                .mul(&MPoly::var_pow(Var::Q, (i - j) as i32))
                .add(&MPoly::int(binom(n, j - 1)));
            let mono = MPoly::monomial(&[(Var::Y, i), (Var::Q, i * (j - i))]);
            sum = sum.add(&signed(power.mul(&bracket).mul(&mono), j % 2 == 1));
        }
    }
    Ok(sum)
}

/// Verifies symbolically (in y and q) that the two q-Laguerre closed forms
/// agree: `(1−q)^n · alternating sum = binomial-difference numerator`.
pub fn laguerre_forms_equivalence(n: i64) -> Result<VerificationReport> {
    require_at_most(n, MAX_LAGUERRE_CHECK_N, "q-Laguerre equivalence check")?;
    let id = format!("related/laguerre-forms-agree/n={n}");
    let lhs = one_minus_q_pow(n).mul(&laguerre_alternating_sum(n)?);
    let binomial = laguerre_moment_binomial_form(n)?;
    let rhs = binomial.mul(&RatFunc::from_poly(one_minus_q_pow(n)));
    let rhs = rhs.to_polynomial()?;
    Ok(VerificationReport::check(id, lhs == rhs, || {
        format!("forms differ at index {n}")
    }))
}

/// The q-binomial form of the PASEP partition function `Z_n(a,b,y;q)`:
///
/// `Z_n = (1−q)^{-n} Σ_{k=0}^n Σ_{i=0}^{⌊(n−k)/2⌋} (−y)^i q^{C(i+1,2)}
///  [k+i;i]_q · Σ_j y^j (C(n,j)C(n,k+2i+j) − C(n,j−1)C(n,k+2i+j+1)) ·
///  Σ_{r=0}^k [k;r]_q a^r (yb)^{k−r}`.
pub fn pasep_partition_binomial_form(n: i64) -> Result<RatFunc> {
    require_nonnegative(n)?;
    let ctx = QCtx::q();
    let mut binoms = ctx.binom_table();
    let mut num = MPoly::zero();
    for k in 0..=n {
        let mut rsum = MPoly::zero();
        for r in 0..=k {
            rsum = rsum.add(&binoms.get(k, r).mul(&MPoly::monomial(&[
                (Var::A, r),
                (Var::Y, k - r),
                (Var::B, k - r),
            ])));
        }
        for i in 0..=((n - k) / 2) {
            let lead = MPoly::monomial(&[(Var::Y, i), (Var::Q, i * (i + 1) / 2)])
                .mul(&binoms.get(k + i, i));
            let lead = signed(lead, i % 2 == 1);
            let mut jsum = MPoly::zero();
            for j in 0..=(n - k - 2 * i) {
                let coeff = binom(n, j) * binom(n, k + 2 * i + j)
                    - binom(n, j - 1) * binom(n, k + 2 * i + j + 1);
                if coeff == 0 {
                    continue;
                }
                jsum = jsum.add(&MPoly::int(coeff).mul(&MPoly::var_pow(Var::Y, j as i32)));
            }
            num = num.add(&lead.mul(&jsum).mul(&rsum));
        }
    }
    RatFunc::from_num_den(num, one_minus_q_pow(n))
}

/// The q-multinomial form of the same partition function:
///
/// `Z_n = (1−q)^{-n} Σ_{k=0}^n Σ_j y^j (C(n,j)C(n,j+k) − C(n,j−1)C(n,j+k+1))
///  · Σ_{u+v+2t=k} a^u b^v y^{v+t} (−1)^t q^{C(t+1,2)} [u+v+t; u,v,t]_q`.
pub fn pasep_partition_multinomial_form(n: i64) -> Result<RatFunc> {
    require_nonnegative(n)?;
    let ctx = QCtx::q();
    let mut binoms = ctx.binom_table();
    let mut num = MPoly::zero();
    for k in 0..=n {
        let mut inner = MPoly::zero();
        for t in 0..=(k / 2) {
            for u in 0..=(k - 2 * t) {
                let v = k - 2 * t - u;
                let term = MPoly::monomial(&[
                    (Var::A, u),
                    (Var::B, v),
                    (Var::Y, v + t),
                    (Var::Q, t * (t + 1) / 2),
                ])
                .mul(&binoms.multinomial(u + v + t, &[u, v, t])?);
                inner = inner.add(&signed(term, t % 2 == 1));
            }
        }
        for j in 0..=(n - k) {
            let coeff = binom(n, j) * binom(n, j + k) - binom(n, j - 1) * binom(n, j + k + 1);
            if coeff == 0 {
                continue;
            }
            num = num.add(
                &inner
                    .mul(&MPoly::int(coeff))
                    .mul(&MPoly::var_pow(Var::Y, j as i32)),
            );
        }
    }
    RatFunc::from_num_den(num, one_minus_q_pow(n))
}

/// Closed form for the shifted two-parameter moment `R_n(a,b,c,d;q)`:
///
/// `R_n = Σ_{k=0}^n Σ_{m=k}^n c^{(m−k)/2} d^{n−m} C(n,m)
///  (C(m,(m−k)/2) − C(m,(m−k)/2−1)) Σ_{u+v+2t=k} a^u b^v c^t (−1)^t
///  q^{C(t+1,2)} [u+v+t; u,v,t]_q`
///
/// where only terms with `m ≡ k (mod 2)` contribute.
pub fn shifted_two_param_moment(n: i64) -> Result<RatFunc> {
    require_nonnegative(n)?;
    let ctx = QCtx::q();
    let mut binoms = ctx.binom_table();
    let mut sum = MPoly::zero();
    for k in 0..=n {
        let mut inner = MPoly::zero();
        for t in 0..=(k / 2) {
            for u in 0..=(k - 2 * t) {
                let v = k - 2 * t - u;
                let term = MPoly::monomial(&[
                    (Var::A, u),
                    (Var::B, v),
                    (Var::C, t),
                    (Var::Q, t * (t + 1) / 2),
                ])
                .mul(&binoms.multinomial(u + v + t, &[u, v, t])?);
                inner = inner.add(&signed(term, t % 2 == 1));
            }
        }
        for m in (k..=n).step_by(2) {
            let h = (m - k) / 2;
            let coeff = binom(n, m) * (binom(m, h) - binom(m, h - 1));
            if coeff == 0 {
                continue;
            }
            let mono = MPoly::monomial(&[(Var::C, h), (Var::D, n - m)]);
            sum = sum.add(&inner.mul(&mono).mul(&MPoly::int(coeff)));
        }
    }
    Ok(RatFunc::from_poly(sum))
}

/// The kernel polynomial `T_k(t,q)` appearing inside the (t,q)-Euler closed
/// forms (all inner binomials have base q²):
///
/// `T_k = Σ_{j=0}^k Σ_{i=0}^j (−1)^{j+i} t^{2i} q^{j²+i²+i} [k−j;i]_{q²}
///  ([k−i;j−i]_{q²} + t[k−i−1;j−i−1]_{q²})`.
pub fn tq_kernel(k: i64) -> Result<MPoly> {
    require_nonnegative(k)?;
    let ctx2 = QCtx::q2();
    let mut b2 = ctx2.binom_table();
    let mut sum = MPoly::zero();
    for j in 0..=k {
        for i in 0..=j {
            let mono = MPoly::monomial(&[(Var::T, 2 * i), (Var::Q, j * j + i * i + i)]);
            let bracket = b2
                .get(k - i, j - i)
                .add(&MPoly::var(Var::T).mul(&b2.get(k - i - 1, j - i - 1)));
            let term = mono.mul(&b2.get(k - j, i)).mul(&bracket);
            sum = sum.add(&signed(term, (j + i) % 2 == 1));
        }
    }
    Ok(sum)
}

/// The reflection form of the (t,q)-Euler number, built from the kernel at
/// inverted arguments:
///
/// `E_n = (1−q)^{-2n} Σ_{k=0}^n (C(2n,n−k) − C(2n,n−k−1)) t^k q^{k(k+1)}
///  T_k(t^{-1}, q^{-1})`.
pub fn tq_euler_reflection_form(n: i64) -> Result<RatFunc> {
    require_at_most(n, MAX_EULER_N, "the reflection form")?;
    let inverted: BTreeMap<Var, RatFunc> = [
        (Var::T, RatFunc::from_poly(MPoly::var_pow(Var::T, -1))),
        (Var::Q, RatFunc::from_poly(MPoly::var_pow(Var::Q, -1))),
    ]
    .into_iter()
    .collect();
    let mut sum = RatFunc::zero();
    for k in 0..=n {
        let coeff = binom(2 * n, n - k) - binom(2 * n, n - k - 1);
        if coeff == 0 {
            continue;
        }
        let kernel = RatFunc::from_poly(tq_kernel(k)?).substitute(&inverted)?;
        let mono = RatFunc::from_poly(
            MPoly::monomial(&[(Var::T, k), (Var::Q, k * (k + 1))]).mul(&MPoly::int(coeff)),
        );
        sum = sum.add(&mono.mul(&kernel));
    }
    sum.div(&RatFunc::from_poly(one_minus_q_pow(2 * n)))
}

/// The q-Pochhammer form of the (t,q)-Euler number:
///
/// `E_n = (1−q)^{-2n} Σ_{k=0}^n (C(2n,n−k) − C(2n,n−k−1)) Σ_{i=0}^k (−1)^k
///  q^{C(i+1,2)} (q;q²)_{k−i} (qt)^{k−i} [2k−i;i]_q`.
pub fn tq_euler_pochhammer_form(n: i64) -> Result<RatFunc> {
    require_at_most(n, MAX_EULER_N, "the Pochhammer form")?;
    let ctx = QCtx::q();
    let ctx2 = QCtx::q2();
    let mut binoms = ctx.binom_table();
    let q = MPoly::var(Var::Q);
    let mut num = MPoly::zero();
    for k in 0..=n {
        let coeff = binom(2 * n, n - k) - binom(2 * n, n - k - 1);
        if coeff == 0 {
            continue;
        }
        let mut inner = MPoly::zero();
        for i in 0..=k {
            let term = MPoly::monomial(&[
                (Var::Q, i * (i + 1) / 2 + (k - i)),
                (Var::T, k - i),
            ])
            .mul(&ctx2.q_pochhammer_poly(&q, k - i)?)
            .mul(&binoms.get(2 * k - i, i));
            inner = inner.add(&term);
        }
        inner = signed(inner, k % 2 == 1);
        num = num.add(&inner.mul(&MPoly::int(coeff)));
    }
    RatFunc::from_num_den(num, one_minus_q_pow(2 * n))
}

/// The quotient form of the (t,q)-Euler number:
///
/// `E_n = t^{-n} Σ_{m=0}^n Σ_{i=0}^m (−1)^{n−i} q^{2m−2in+i²−n−i}
///  [2m]_{t,q}! [2i+1]_{t,q}^{2n} / ([2i]_q!! [2m−2i]_q!!
///  Π_{k=0,k≠i}^m [2k+2i+2]_{t²,q})`.
pub fn tq_euler_quotient_form(n: i64) -> Result<RatFunc> {
    require_at_most(n, MAX_EULER_QUOTIENT_N, "the quotient form")?;
    let ctx = QCtx::q();
    let one_minus_q = MPoly::one_minus_monomial(&[(Var::Q, 1)]);
    let mut sum = RatFunc::zero();
    for m in 0..=n {
        for i in 0..=m {
            // The denominator is handed over factor by factor, so that sums
            // over (m,i) share factors structurally instead of piling up
            // expanded products. Net (1−q) bookkeeping: [2m]_{t,q}! carries
            // (1−q)^{2m}, the [2i+1]_{t,q}^{2n} power carries (1−q)^{2n}, and
            // the m inverted [·]_{t²,q} factors cancel m of them.
            let mut num_factors = vec![signed(
                MPoly::monomial(&[(Var::T, -n), (Var::Q, 2 * m - 2 * i * n + i * i - n - i)]),
                (n - i) % 2 == 1,
            )];
            for l in 1..=(2 * m) {
                num_factors.push(MPoly::one_minus_monomial(&[(Var::T, 1), (Var::Q, l)]));
            }
            num_factors.push(
                MPoly::one_minus_monomial(&[(Var::T, 1), (Var::Q, 2 * i + 1)])
                    .pow(2 * n as i32)?,
            );
            let mut den_factors = vec![one_minus_q.clone(); (m + 2 * n) as usize];
            for j in 1..=i {
                den_factors.push(ctx.q_int(2 * j)?);
            }
            for j in 1..=(m - i) {
                den_factors.push(ctx.q_int(2 * j)?);
            }
            for k in 0..=m {
                if k == i {
                    continue;
                }
                den_factors.push(MPoly::one_minus_monomial(&[
                    (Var::T, 2),
                    (Var::Q, 2 * k + 2 * i + 2),
                ]));
            }
            sum = sum.add(&RatFunc::from_factor_quotient(&num_factors, &den_factors)?);
        }
    }
    Ok(sum)
}

/// Verifies symbolically (in t and q) the kernel identity
///
/// `(−1)^k q^{k²} T_k(t, q^{-1}) = Σ_{i=0}^k q^{C(i,2)} (q;q²)_{k−i} t^i
///  [2k−i; i]_q`.
pub fn tq_euler_kernel_equivalence(k: i64) -> Result<VerificationReport> {
    require_at_most(k, MAX_KERNEL_K, "the kernel identity check")?;
    let id = format!("related/tq-euler-kernel-identity/k={k}");
    let invert_q: BTreeMap<Var, RatFunc> = [(
        Var::Q,
        RatFunc::from_poly(MPoly::var_pow(Var::Q, -1)),
    )]
    .into_iter()
    .collect();
    let mut lhs = RatFunc::from_poly(tq_kernel(k)?)
        .substitute(&invert_q)?
        .mul(&RatFunc::from_poly(MPoly::var_pow(Var::Q, (k * k) as i32)));
    if k % 2 == 1 {
        lhs = lhs.neg();
    }
    let ctx = QCtx::q();
    let ctx2 = QCtx::q2();
    let mut binoms = ctx.binom_table();
    let q = MPoly::var(Var::Q);
    let mut rhs = MPoly::zero();
    for i in 0..=k {
        let term = MPoly::monomial(&[(Var::Q, i * (i - 1) / 2), (Var::T, i)])
            .mul(&ctx2.q_pochhammer_poly(&q, k - i)?)
            .mul(&binoms.get(2 * k - i, i));
        rhs = rhs.add(&term);
    }
    let rhs = RatFunc::from_poly(rhs);
    Ok(VerificationReport::check(id, lhs.equal(&rhs), || {
        format!("kernel identity fails at k = {k}")
    }))
}

/// One of the four connection families, tying the recurrence oracle to its
/// closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConnectionFamily {
    QLaguerre,
    Pasep,
    ShiftedTwoParam,
    TqEuler,
}

impl ConnectionFamily {
    pub const ALL: [ConnectionFamily; 4] = [
        ConnectionFamily::QLaguerre,
        ConnectionFamily::Pasep,
        ConnectionFamily::ShiftedTwoParam,
        ConnectionFamily::TqEuler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConnectionFamily::QLaguerre => "q-laguerre",
            ConnectionFamily::Pasep => "pasep",
            ConnectionFamily::ShiftedTwoParam => "shifted-two-param",
            ConnectionFamily::TqEuler => "tq-euler",
        }
    }

    pub fn spec(self) -> RecurrenceSpec {
        match self {
            ConnectionFamily::QLaguerre => q_laguerre_spec(),
            ConnectionFamily::Pasep => pasep_spec(),
            ConnectionFamily::ShiftedTwoParam => shifted_two_param_spec(),
            ConnectionFamily::TqEuler => tq_euler_spec(),
        }
    }

    /// Verifies every closed form of this family against its recurrence
    /// oracle, symbolically, up to `min(n_max, family cap)`.
    pub fn verify(self, n_max: i64) -> Result<Vec<VerificationReport>> {
        require_nonnegative(n_max)?;
        let mut out = Vec::new();
        match self {
            ConnectionFamily::QLaguerre => {
                let cap = n_max.min(MAX_LAGUERRE_CHECK_N);
                let table = moment_table(&q_laguerre_spec(), cap as u32)?;
                for n in 0..=cap {
                    let oracle = table.moment(n as usize);
                    let binomial = laguerre_moment_binomial_form(n)?;
                    out.push(VerificationReport::check(
                        format!("related/laguerre-binomial-form/n={n}"),
                        binomial.equal(oracle),
                        || format!("binomial form differs from the recurrence at {n}"),
                    ));
                    let alternating = laguerre_moment_alternating_form(n)?;
                    out.push(VerificationReport::check(
                        format!("related/laguerre-alternating-form/n={n}"),
                        alternating.equal(oracle),
                        || format!("alternating form differs from the recurrence at {n}"),
                    ));
                    out.push(laguerre_forms_equivalence(n)?);
                }
            }
            ConnectionFamily::Pasep => {
                let cap = n_max.min(MAX_PARTITION_CHECK_N);
                let table = moment_table(&pasep_spec(), cap as u32)?;
                for n in 0..=cap {
                    let oracle = table.moment(n as usize);
                    let scaled = pasep_partition_binomial_form(n)?
                        .mul(&RatFunc::from_poly(one_minus_q_pow(n)));
                    out.push(VerificationReport::check(
                        format!("related/pasep-binomial-form/n={n}"),
                        scaled.equal(oracle),
                        || format!("q-binomial form differs from the recurrence at {n}"),
                    ));
                    out.push(VerificationReport::check(
                        format!("related/pasep-forms-agree/n={n}"),
                        pasep_partition_binomial_form(n)?
                            .equal(&pasep_partition_multinomial_form(n)?),
                        || format!("the two partition-function forms differ at {n}"),
                    ));
                }
            }
            ConnectionFamily::ShiftedTwoParam => {
                let cap = n_max.min(MAX_PARTITION_CHECK_N);
                let table = moment_table(&shifted_two_param_spec(), cap as u32)?;
                for n in 0..=cap {
                    out.push(VerificationReport::check(
                        format!("related/shifted-two-param-form/n={n}"),
                        shifted_two_param_moment(n)?.equal(table.moment(n as usize)),
                        || format!("closed form differs from the recurrence at {n}"),
                    ));
                }
            }
            ConnectionFamily::TqEuler => {
                let cap = n_max.min(MAX_EULER_N);
                let table = moment_table(&tq_euler_spec(), cap as u32)?;
                for n in 0..=cap {
                    let oracle = table.moment(n as usize);
                    out.push(VerificationReport::check(
                        format!("related/tq-euler-reflection-form/n={n}"),
                        tq_euler_reflection_form(n)?.equal(oracle),
                        || format!("reflection form differs from the recurrence at {n}"),
                    ));
                    out.push(VerificationReport::check(
                        format!("related/tq-euler-pochhammer-form/n={n}"),
                        tq_euler_pochhammer_form(n)?.equal(oracle),
                        || format!("Pochhammer form differs from the recurrence at {n}"),
                    ));
                    if n <= MAX_EULER_QUOTIENT_N {
                        out.push(VerificationReport::check(
                            format!("related/tq-euler-quotient-form/n={n}"),
                            tq_euler_quotient_form(n)?.equal(oracle),
                            || format!("quotient form differs from the recurrence at {n}"),
                        ));
                    }
                }
                for k in 0..=n_max.min(MAX_KERNEL_K) {
                    out.push(tq_euler_kernel_equivalence(k)?);
                }
            }
        }
        Ok(out)
    }
}

/// Verifies, for a single `n`, that rebuilding each family's moment from the
/// two-parameter moments via the rescaling sum reproduces the direct closed
/// form. The substitutions `y = t²` (q-Laguerre, PASEP) and `c = t²`
/// (shifted two-parameter) eliminate the square roots of the textbook
/// change of variables:
///
///  * `(1−q)^n ν_n|_{y=t²} = tⁿ Σ_m (t+t^{-1})^{n−m} C(n,m) ·
///    2^m μ_m(−qt, −t^{-1}, 0, 0; q)`,
///  * `(1−q)^n Z_n|_{y=t²} = tⁿ Σ_m (t+t^{-1})^{n−m} C(n,m) ·
///    2^m μ_m(a t^{-1}, b t, 0, 0; q)`,
///  * `R_n|_{c=t²} = tⁿ Σ_m (d t^{-1})^{n−m} C(n,m) ·
///    2^m μ_m(a t^{-1}, b t^{-1}, 0, 0; q)`.
pub fn rescaling_consistency(n: i64) -> Result<VerificationReport> {
    require_at_most(n, MAX_RESCALING_N, "the rescaling consistency check")?;
    let id = format!("related/rescaling/n={n}");
    let table = moment_table(&aw_two_param_spec(), n as u32)?;
    let t_pow = |e: i64| RatFunc::from_poly(MPoly::var_pow(Var::T, e as i32));
    let scaled_moment = |m: i64, a_sub: RatFunc, b_sub: RatFunc| -> Result<RatFunc> {
        let bindings: BTreeMap<Var, RatFunc> =
            [(Var::A, a_sub), (Var::B, b_sub)].into_iter().collect();
        table
            .moment(m as usize)
            .mul(&RatFunc::int(1 << m))
            .substitute(&bindings)
    };
    let rebuild = |outer: &RatFunc,
                   a_of: &dyn Fn() -> RatFunc,
                   b_of: &dyn Fn() -> RatFunc|
     -> Result<RatFunc> {
        let mut sum = RatFunc::zero();
        for m in 0..=n {
            let term = outer
                .pow((n - m) as i32)?
                .mul(&RatFunc::int(binom(n, m)))
                .mul(&scaled_moment(m, a_of(), b_of())?);
            sum = sum.add(&term);
        }
        Ok(t_pow(n).mul(&sum))
    };
    let y_to_t2: BTreeMap<Var, RatFunc> =
        [(Var::Y, t_pow(2))].into_iter().collect();
    let balanced = t_pow(1).add(&t_pow(-1));

    let laguerre_lhs = laguerre_moment_binomial_form(n)?
        .mul(&RatFunc::from_poly(one_minus_q_pow(n)))
        .substitute(&y_to_t2)?;
    let minus_qt = RatFunc::from_poly(MPoly::monomial(&[(Var::Q, 1), (Var::T, 1)]).neg());
    let minus_tinv = RatFunc::from_poly(MPoly::var_pow(Var::T, -1).neg());
    let laguerre_rhs = rebuild(&balanced, &|| minus_qt.clone(), &|| minus_tinv.clone())?;
    if !laguerre_lhs.equal(&laguerre_rhs) {
        return Ok(VerificationReport::fail(
            id,
            format!("q-Laguerre rebuild differs at {n}"),
        ));
    }

    let pasep_lhs = pasep_partition_binomial_form(n)?
        .mul(&RatFunc::from_poly(one_minus_q_pow(n)))
        .substitute(&y_to_t2)?;
    let a_over_t = RatFunc::from_poly(MPoly::monomial(&[(Var::A, 1), (Var::T, -1)]));
    let b_times_t = RatFunc::from_poly(MPoly::monomial(&[(Var::B, 1), (Var::T, 1)]));
    let pasep_rhs = rebuild(&balanced, &|| a_over_t.clone(), &|| b_times_t.clone())?;
    if !pasep_lhs.equal(&pasep_rhs) {
        return Ok(VerificationReport::fail(
            id,
            format!("partition-function rebuild differs at {n}"),
        ));
    }

    let c_to_t2: BTreeMap<Var, RatFunc> =
        [(Var::C, t_pow(2))].into_iter().collect();
    let shifted_lhs = shifted_two_param_moment(n)?.substitute(&c_to_t2)?;
    let d_over_t = RatFunc::from_poly(MPoly::monomial(&[(Var::D, 1), (Var::T, -1)]));
    let b_over_t = RatFunc::from_poly(MPoly::monomial(&[(Var::B, 1), (Var::T, -1)]));
    let shifted_rhs = rebuild(&d_over_t, &|| a_over_t.clone(), &|| b_over_t.clone())?;
    if !shifted_lhs.equal(&shifted_rhs) {
        return Ok(VerificationReport::fail(
            id,
            format!("shifted-moment rebuild differs at {n}"),
        ));
    }
    Ok(VerificationReport::pass(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::builtin_spec;

    #[test]
    fn laguerre_forms_match_the_recurrence() {
        let table = moment_table(&q_laguerre_spec(), 8).unwrap();
        assert!(laguerre_moment_binomial_form(0).unwrap().equal(&RatFunc::int(1)));
        assert!(laguerre_moment_binomial_form(1)
            .unwrap()
            .equal(&RatFunc::var(Var::Y)));
        for n in 0..=8i64 {
            let oracle = table.moment(n as usize);
            assert!(
                laguerre_moment_binomial_form(n).unwrap().equal(oracle),
                "binomial form at {n}"
            );
            assert!(
                laguerre_moment_alternating_form(n).unwrap().equal(oracle),
                "alternating form at {n}"
            );
            let report = laguerre_forms_equivalence(n).unwrap();
            assert!(report.is_pass(), "{:?}", report.witness);
        }
    }

    #[test]
    fn pasep_partition_forms_match_the_recurrence() {
        let table = moment_table(&pasep_spec(), 6).unwrap();
        // (1−q)·Z_1 = 1 + y + a + by.
        let z1 = pasep_partition_binomial_form(1)
            .unwrap()
            .mul(&RatFunc::from_poly(one_minus_q_pow(1)));
        let b0 = RatFunc::from_poly(
            MPoly::one()
                .add(&MPoly::var(Var::Y))
                .add(&MPoly::var(Var::A))
                .add(&MPoly::monomial(&[(Var::B, 1), (Var::Y, 1)])),
        );
        assert!(z1.equal(&b0));
        for n in 0..=6i64 {
            let oracle = table.moment(n as usize);
            let scaled = pasep_partition_binomial_form(n)
                .unwrap()
                .mul(&RatFunc::from_poly(one_minus_q_pow(n)));
            assert!(scaled.equal(oracle), "q-binomial form at {n}");
            assert!(
                pasep_partition_binomial_form(n)
                    .unwrap()
                    .equal(&pasep_partition_multinomial_form(n).unwrap()),
                "forms agree at {n}"
            );
        }
    }

    #[test]
    fn shifted_moments_match_the_recurrence() {
        let table = moment_table(&shifted_two_param_spec(), 6).unwrap();
        // R_1 = d + a + b.
        let r1 = RatFunc::from_poly(
            MPoly::var(Var::D)
                .add(&MPoly::var(Var::A))
                .add(&MPoly::var(Var::B)),
        );
        assert!(shifted_two_param_moment(1).unwrap().equal(&r1));
        for n in 0..=6i64 {
            assert!(
                shifted_two_param_moment(n)
                    .unwrap()
                    .equal(table.moment(n as usize)),
                "closed form at {n}"
            );
        }
    }

    #[test]
    fn euler_forms_match_the_recurrence() {
        let table = moment_table(&tq_euler_spec(), 6).unwrap();
        // E_1 = [1]_q [1]_{t,q} = (1 − tq)/(1 − q).
        let e1 = RatFunc::from_num_den(
            MPoly::one_minus_monomial(&[(Var::T, 1), (Var::Q, 1)]),
            MPoly::one_minus_monomial(&[(Var::Q, 1)]),
        )
        .unwrap();
        assert!(table.moment(1).equal(&e1));
        assert!(tq_euler_reflection_form(0).unwrap().equal(&RatFunc::int(1)));
        for n in 0..=6i64 {
            let oracle = table.moment(n as usize);
            assert!(
                tq_euler_reflection_form(n).unwrap().equal(oracle),
                "reflection form at {n}"
            );
            assert!(
                tq_euler_pochhammer_form(n).unwrap().equal(oracle),
                "Pochhammer form at {n}"
            );
            if n <= MAX_EULER_QUOTIENT_N {
                assert!(
                    tq_euler_quotient_form(n).unwrap().equal(oracle),
                    "quotient form at {n}"
                );
            }
        }
    }

    #[test]
    fn kernel_identity_holds_symbolically() {
        assert!(tq_kernel(0).unwrap().is_one());
        for k in 0..=8i64 {
            let report = tq_euler_kernel_equivalence(k).unwrap();
            assert!(report.is_pass(), "k = {k}: {:?}", report.witness);
        }
    }

    #[test]
    fn rescaling_rebuilds_every_family() {
        for n in 0..=6i64 {
            let report = rescaling_consistency(n).unwrap();
            assert!(report.is_pass(), "n = {n}: {:?}", report.witness);
        }
    }

    #[test]
    fn families_expose_their_specs_and_verify() {
        for family in ConnectionFamily::ALL {
            let by_name = builtin_spec(family.name()).unwrap();
            assert_eq!(by_name.name(), family.spec().name());
            let reports = family.verify(3).unwrap();
            assert!(!reports.is_empty());
            for r in &reports {
                assert!(r.is_pass(), "{}: {:?}", r.id, r.witness);
            }
        }
    }

    #[test]
    fn caps_and_domains_are_enforced() {
        assert!(laguerre_moment_binomial_form(-1).is_err());
        assert!(laguerre_forms_equivalence(MAX_LAGUERRE_CHECK_N + 1).is_err());
        assert!(tq_euler_quotient_form(MAX_EULER_QUOTIENT_N + 1).is_err());
        assert!(tq_euler_reflection_form(MAX_EULER_N + 1).is_err());
        assert!(tq_euler_kernel_equivalence(MAX_KERNEL_K + 1).is_err());
        assert!(rescaling_consistency(MAX_RESCALING_N + 1).is_err());
    }
}
