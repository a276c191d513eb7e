//! Ground-truth moment computation from three-term recurrences.
//!
//! Any family of monic orthogonal polynomials `p_{n+1} = (x − b_n)p_n −
//! λ_n p_{n−1}` determines a linear functional with moments μ_n = L(xⁿ),
//! μ_0 = 1. Two independent engines recover the moments exactly:
//!
//! * [`moment_table`] runs the transfer recurrence m_{n+1,k} = m_{n,k−1} +
//!   b_k·m_{n,k} + λ_{k+1}·m_{n,k+1} (the weighted-Motzkin-path sum), and
//! * [`hankel_moments`] expands the polynomials themselves and solves the
//!   triangular system L(p_k) = δ_{k,0}.
//!
//! The module also provides the Askey-Wilson recurrence coefficients (built
//! exactly from their factored product form so that removable poles cancel
//! structurally, never by expansion), the other built-in recurrences exposed
//! by name, and the binomial rescaling transform
//! μ′_n = cⁿ Σ_m d^{n−m} C(n,m) μ_m.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::arith::{GaussianRational, MPoly, RatFunc, Var};
use crate::error::{AwError, Result};
use crate::qcalc::{binom, QCtx};

type CoeffFn = Arc<dyn Fn(u32) -> Result<RatFunc> + Send + Sync>;

/// A three-term recurrence `p_{n+1} = (x − b(n))p_n − lambda(n)p_{n−1}`
/// given by its coefficient functions. `lambda` is only ever queried for
/// levels n ≥ 1.
#[derive(Clone)]
pub struct RecurrenceSpec {
    name: String,
    b_fn: CoeffFn,
    lambda_fn: CoeffFn,
    variables: BTreeSet<Var>,
}

impl RecurrenceSpec {
    pub fn new(
        name: impl Into<String>,
        variables: impl IntoIterator<Item = Var>,
        b: impl Fn(u32) -> Result<RatFunc> + Send + Sync + 'static,
        lambda: impl Fn(u32) -> Result<RatFunc> + Send + Sync + 'static,
    ) -> RecurrenceSpec {
        RecurrenceSpec {
            name: name.into(),
            b_fn: Arc::new(b),
            lambda_fn: Arc::new(lambda),
            variables: variables.into_iter().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variables(&self) -> &BTreeSet<Var> {
        &self.variables
    }

    /// The diagonal recurrence coefficient b_n, n ≥ 0.
    pub fn b(&self, n: u32) -> Result<RatFunc> {
        (self.b_fn)(n)
    }

    /// The subdiagonal recurrence coefficient λ_n, n ≥ 1.
    pub fn lambda(&self, n: u32) -> Result<RatFunc> {
        if n == 0 {
            return Err(AwError::InvalidParameter(
                "lambda is defined for levels n >= 1".into(),
            ));
        }
        (self.lambda_fn)(n)
    }

    /// A new spec whose coefficients are this spec's with the given variable
    /// bindings substituted. A binding that makes some λ_n denominator vanish
    /// surfaces as an error when that level is requested.
    pub fn specialized(
        &self,
        name: impl Into<String>,
        bindings: &BTreeMap<Var, RatFunc>,
    ) -> RecurrenceSpec {
        let mut variables: BTreeSet<Var> = self
            .variables
            .iter()
            .copied()
            .filter(|v| !bindings.contains_key(v))
            .collect();
        for value in bindings.values() {
            variables.extend(value.vars_used());
        }
        let b = Arc::clone(&self.b_fn);
        let lambda = Arc::clone(&self.lambda_fn);
        let bind_b = bindings.clone();
        let bind_l = bindings.clone();
        RecurrenceSpec {
            name: name.into(),
            b_fn: Arc::new(move |n| b(n)?.substitute(&bind_b)),
            lambda_fn: Arc::new(move |n| lambda(n)?.substitute(&bind_l)),
            variables,
        }
    }
}

impl std::fmt::Debug for RecurrenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RecurrenceSpec")
            .field("name", &self.name)
            .field("variables", &self.variables)
            .finish_non_exhaustive()
    }
}

/// Moments μ_0..μ_N of one recurrence spec, exact rational functions.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub spec_name: String,
    pub moments: Vec<RatFunc>,
}

impl MomentTable {
    /// Highest moment order stored.
    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moment(&self, n: usize) -> &RatFunc {
        &self.moments[n]
    }
}

/// Factor lists (numerator, denominator) of the raising coefficient A_n in
/// the Askey-Wilson recurrence; n may be negative (only products with other
/// factors are then meaningful).
fn raising_factors(n: i64) -> (Vec<MPoly>, Vec<MPoly>) {
    use Var::{A, B, C, D, Q};
    (
        vec![
            MPoly::one_minus_monomial(&[(A, 1), (B, 1), (Q, n)]),
            MPoly::one_minus_monomial(&[(A, 1), (C, 1), (Q, n)]),
            MPoly::one_minus_monomial(&[(A, 1), (D, 1), (Q, n)]),
            MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1), (Q, n - 1)]),
        ],
        vec![
            MPoly::monomial(&[(A, 1)]),
            MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1), (Q, 2 * n - 1)]),
            MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1), (Q, 2 * n)]),
        ],
    )
}

/// Factor lists (numerator, denominator) of the lowering coefficient C_n.
fn lowering_factors(n: i64) -> (Vec<MPoly>, Vec<MPoly>) {
    use Var::{A, B, C, D, Q};
    (
        vec![
            MPoly::monomial(&[(A, 1)]),
            MPoly::one_minus_monomial(&[(Q, n)]),
            MPoly::one_minus_monomial(&[(B, 1), (C, 1), (Q, n - 1)]),
            MPoly::one_minus_monomial(&[(B, 1), (D, 1), (Q, n - 1)]),
            MPoly::one_minus_monomial(&[(C, 1), (D, 1), (Q, n - 1)]),
        ],
        vec![
            MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1), (Q, 2 * n - 2)]),
            MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1), (Q, 2 * n - 1)]),
        ],
    )
}

/// The classical coefficient pair (A_n, C_n) of the Askey-Wilson recurrence,
/// as reduced rational functions.
pub fn aw_coefficient_pair(n: i64) -> Result<(RatFunc, RatFunc)> {
    let (rn, rd) = raising_factors(n);
    let (ln, ld) = lowering_factors(n);
    Ok((
        RatFunc::from_factor_quotient(&rn, &rd)?,
        RatFunc::from_factor_quotient(&ln, &ld)?,
    ))
}

/// Askey-Wilson recurrence coefficients: b_n = ½(a + a⁻¹ − A_n − C_n) and
/// λ_n = ¼A_{n−1}C_n. The product for λ_n is assembled from the combined
/// factor lists so that the `a` and the shared Pochhammer-style factors
/// cancel structurally (λ_n is regular wherever its reduced form is).
pub fn aw_coefficients(n: u32) -> Result<(RatFunc, RatFunc)> {
    let n = i64::from(n);
    let (a_n, c_n) = aw_coefficient_pair(n)?;
    let b_n = RatFunc::var(Var::A)
        .add(&RatFunc::var_pow(Var::A, -1))
        .sub(&a_n)
        .sub(&c_n)
        .mul_scalar(&GaussianRational::from_frac(1, 2));

    let (mut num, mut den) = raising_factors(n - 1);
    let (ln, ld) = lowering_factors(n);
    num.extend(ln);
    den.extend(ld);
    let lambda_n = RatFunc::from_factor_quotient(&num, &den)?
        .mul_scalar(&GaussianRational::from_frac(1, 4));
    Ok((b_n, lambda_n))
}

/// Names accepted by [`builtin_spec`], in display order.
pub const BUILTIN_SPEC_NAMES: [&str; 6] = [
    "askey-wilson",
    "q-laguerre",
    "pasep",
    "shifted-two-param",
    "tq-euler",
    "aw-symmetric-rescaled",
];

/// Looks up one of the built-in recurrence specs by name.
pub fn builtin_spec(name: &str) -> Result<RecurrenceSpec> {
    match name {
        "askey-wilson" => Ok(aw_spec()),
        "q-laguerre" => Ok(q_laguerre_spec()),
        "pasep" => Ok(pasep_spec()),
        "shifted-two-param" => Ok(shifted_two_param_spec()),
        "tq-euler" => Ok(tq_euler_spec()),
        "aw-symmetric-rescaled" => Ok(aw_symmetric_rescaled_spec()),
        other => Err(AwError::UnknownName(format!(
            "unknown recurrence spec '{other}' (expected one of: {})",
            BUILTIN_SPEC_NAMES.join(", ")
        ))),
    }
}

/// The full Askey-Wilson recurrence in a, b, c, d, q.
pub fn aw_spec() -> RecurrenceSpec {
    use Var::{A, B, C, D, Q};
    RecurrenceSpec::new(
        "askey-wilson",
        [A, B, C, D, Q],
        |n| Ok(aw_coefficients(n)?.0),
        |n| Ok(aw_coefficients(n)?.1),
    )
}

/// The c = d = 0 specialization of the Askey-Wilson recurrence in closed
/// form: b_n = ½qⁿ(a + b), λ_n = ¼(1 − qⁿ)(1 − abq^{n−1}). Both are
/// polynomials, which keeps two-parameter moment computations cheap.
pub fn aw_two_param_spec() -> RecurrenceSpec {
    use Var::{A, B, Q};
    RecurrenceSpec::new(
        "askey-wilson-two-param",
        [A, B, Q],
        |n| {
            let n = i64::from(n);
            let sum = MPoly::var(A).add(&MPoly::var(B));
            Ok(RatFunc::from_poly(
                sum.mul(&MPoly::monomial(&[(Q, n)]))
                    .mul_scalar(&GaussianRational::from_frac(1, 2)),
            ))
        },
        |n| {
            let n = i64::from(n);
            Ok(RatFunc::from_poly(
                MPoly::one_minus_monomial(&[(Q, n)])
                    .mul(&MPoly::one_minus_monomial(&[(A, 1), (B, 1), (Q, n - 1)]))
                    .mul_scalar(&GaussianRational::from_frac(1, 4)),
            ))
        },
    )
}

/// q-Laguerre recurrence: b_n = [n]_q + y[n+1]_q, λ_n = y[n]_q².
pub fn q_laguerre_spec() -> RecurrenceSpec {
    use Var::{Q, Y};
    RecurrenceSpec::new(
        "q-laguerre",
        [Y, Q],
        |n| {
            let ctx = QCtx::q();
            let n = i64::from(n);
            let p = ctx
                .q_int(n)?
                .add(&ctx.q_int(n + 1)?.mul(&MPoly::var(Y)));
            Ok(RatFunc::from_poly(p))
        },
        |n| {
            let ctx = QCtx::q();
            let qn = ctx.q_int(i64::from(n))?;
            Ok(RatFunc::from_poly(qn.mul(&qn).mul(&MPoly::var(Y))))
        },
    )
}

/// The partially-asymmetric-exclusion-process recurrence:
/// b_n = 1 + y + (a + by)qⁿ, λ_n = y(1 − qⁿ)(1 − abq^{n−1}).
pub fn pasep_spec() -> RecurrenceSpec {
    use Var::{A, B, Q, Y};
    RecurrenceSpec::new(
        "pasep",
        [A, B, Y, Q],
        |n| {
            let n = i64::from(n);
            let linear = MPoly::var(A).add(&MPoly::var(B).mul(&MPoly::var(Y)));
            let p = MPoly::one()
                .add(&MPoly::var(Y))
                .add(&linear.mul(&MPoly::monomial(&[(Q, n)])));
            Ok(RatFunc::from_poly(p))
        },
        |n| {
            let n = i64::from(n);
            let p = MPoly::var(Y)
                .mul(&MPoly::one_minus_monomial(&[(Q, n)]))
                .mul(&MPoly::one_minus_monomial(&[(A, 1), (B, 1), (Q, n - 1)]));
            Ok(RatFunc::from_poly(p))
        },
    )
}

/// Four-parameter variant: b_n = d + (a + b)qⁿ, λ_n = (1 − qⁿ)(c − abq^{n−1}).
pub fn shifted_two_param_spec() -> RecurrenceSpec {
    use Var::{A, B, C, D, Q};
    RecurrenceSpec::new(
        "shifted-two-param",
        [A, B, C, D, Q],
        |n| {
            let n = i64::from(n);
            let p = MPoly::var(D)
                .add(&MPoly::var(A).add(&MPoly::var(B)).mul(&MPoly::monomial(&[(Q, n)])));
            Ok(RatFunc::from_poly(p))
        },
        |n| {
            let n = i64::from(n);
            let p = MPoly::one_minus_monomial(&[(Q, n)])
                .mul(&MPoly::var(C).sub(&MPoly::monomial(&[(A, 1), (B, 1), (Q, n - 1)])));
            Ok(RatFunc::from_poly(p))
        },
    )
}

/// Coefficient c_k = [k]_q[k]_{t,q} of the (t,q)-Euler continued fraction,
/// with [k]_{t,q} = (1 − tq^k)/(1 − q).
fn tq_euler_cf(k: i64) -> Result<RatFunc> {
    use Var::{Q, T};
    let ctx = QCtx::q();
    let num = ctx.q_int(k)?.mul(&MPoly::one_minus_monomial(&[(T, 1), (Q, k)]));
    RatFunc::from_num_den(num, MPoly::one_minus_monomial(&[(Q, 1)]))
}

/// The recurrence whose moments are the (t,q)-Euler numbers: contraction of
/// the continued fraction with coefficients c_k = [k]_q[k]_{t,q}, giving
/// b_0 = c_1, b_n = c_{2n} + c_{2n+1}, λ_n = c_{2n−1}c_{2n}.
pub fn tq_euler_spec() -> RecurrenceSpec {
    use Var::{Q, T};
    RecurrenceSpec::new(
        "tq-euler",
        [T, Q],
        |n| {
            let n = i64::from(n);
            if n == 0 {
                tq_euler_cf(1)
            } else {
                Ok(tq_euler_cf(2 * n)?.add(&tq_euler_cf(2 * n + 1)?))
            }
        },
        |n| {
            let n = i64::from(n);
            Ok(tq_euler_cf(2 * n - 1)?.mul(&tq_euler_cf(2 * n)?))
        },
    )
}

/// The rescaled symmetric Askey-Wilson recurrence (b = −a, d = −c case):
/// b_n = 0 and
/// λ_n = [n]_q·(1 + a²q^{n−1})(1 + c²q^{n−1})(1 − a²c²q^{n−2}) /
///       ((1 − a²c²q^{2n−3})(1 − a²c²q^{2n−1})).
pub fn aw_symmetric_rescaled_spec() -> RecurrenceSpec {
    use Var::{A, C, Q};
    RecurrenceSpec::new(
        "aw-symmetric-rescaled",
        [A, C, Q],
        |_| Ok(RatFunc::zero()),
        |n| {
            let n = i64::from(n);
            let ctx = QCtx::q();
            let num = vec![
                MPoly::one_plus_monomial(&[(A, 2), (Q, n - 1)]),
                MPoly::one_plus_monomial(&[(C, 2), (Q, n - 1)]),
                MPoly::one_minus_monomial(&[(A, 2), (C, 2), (Q, n - 2)]),
                ctx.q_int(n)?,
            ];
            let den = vec![
                MPoly::one_minus_monomial(&[(A, 2), (C, 2), (Q, 2 * n - 3)]),
                MPoly::one_minus_monomial(&[(A, 2), (C, 2), (Q, 2 * n - 1)]),
            ];
            RatFunc::from_factor_quotient(&num, &den)
        },
    )
}

/// Runs the transfer recurrence and returns μ_0..μ_N. Row entries m_{n,k}
/// are kept only for levels that can still return to zero in the remaining
/// steps, so memory stays O(N) rational functions.
pub fn moment_table(spec: &RecurrenceSpec, n_max: u32) -> Result<MomentTable> {
    let nn = n_max as usize;
    let mut b_cache: Vec<RatFunc> = Vec::new();
    let mut lambda_cache: Vec<RatFunc> = Vec::new(); // lambda_cache[k] = λ_{k+1}
    let mut row: Vec<RatFunc> = vec![RatFunc::one()];
    let mut moments: Vec<RatFunc> = vec![RatFunc::one()];
    for n in 0..nn {
        let k_hi = (n + 1).min(nn - (n + 1));
        let mut next: Vec<RatFunc> = Vec::with_capacity(k_hi + 1);
        for k in 0..=k_hi {
            let mut v = if k >= 1 {
                row[k - 1].clone()
            } else {
                RatFunc::zero()
            };
            if let Some(mk) = row.get(k) {
                while b_cache.len() <= k {
                    b_cache.push(spec.b(b_cache.len() as u32)?);
                }
                v = v.add(&b_cache[k].mul(mk));
            }
            if let Some(mk1) = row.get(k + 1) {
                while lambda_cache.len() <= k {
                    lambda_cache.push(spec.lambda(lambda_cache.len() as u32 + 1)?);
                }
                v = v.add(&lambda_cache[k].mul(mk1));
            }
            next.push(v);
        }
        row = next;
        moments.push(row[0].clone());
    }
    Ok(MomentTable {
        spec_name: spec.name.clone(),
        moments,
    })
}

/// Binomial rescaling transform μ′_n = cⁿ Σ_{m=0}^n d^{n−m} C(n,m) μ_m.
pub fn rescale_moments(table: &MomentTable, c: &RatFunc, d: &RatFunc) -> MomentTable {
    let mut out = Vec::with_capacity(table.moments.len());
    let mut c_pow = RatFunc::one();
    for n in 0..table.moments.len() {
        let mut acc = RatFunc::zero();
        let mut d_pow = RatFunc::one();
        for m in (0..=n).rev() {
            let coeff = GaussianRational::from_int(binom(n as i64, m as i64));
            acc = acc.add(&table.moments[m].mul(&d_pow).mul_scalar(&coeff));
            if m > 0 {
                d_pow = d_pow.mul(d);
            }
        }
        out.push(acc.mul(&c_pow));
        c_pow = c_pow.mul(c);
    }
    MomentTable {
        spec_name: format!("{}/rescaled", table.spec_name),
        moments: out,
    }
}

/// Independent second oracle: expand the monic orthogonal polynomials
/// p_0..p_N from the recurrence (as coefficient vectors in x) and solve the
/// triangular linear system L(p_0) = 1, L(p_k) = 0 for k ≥ 1 for the
/// moments μ_n = L(xⁿ).
pub fn hankel_moments(spec: &RecurrenceSpec, n_max: u32) -> Result<Vec<RatFunc>> {
    let nn = n_max as usize;
    let mut polys: Vec<Vec<RatFunc>> = vec![vec![RatFunc::one()]];
    for k in 0..nn {
        let b_k = spec.b(k as u32)?;
        let prev = &polys[k];
        let mut next = vec![RatFunc::zero(); k + 2];
        for (j, coeff) in prev.iter().enumerate() {
            next[j + 1] = next[j + 1].add(coeff);
            next[j] = next[j].sub(&b_k.mul(coeff));
        }
        if k >= 1 {
            let lambda_k = spec.lambda(k as u32)?;
            for (j, coeff) in polys[k - 1].iter().enumerate() {
                next[j] = next[j].sub(&lambda_k.mul(coeff));
            }
        }
        polys.push(next);
    }
    let mut mu = vec![RatFunc::one()];
    for k in 1..=nn {
        let mut acc = RatFunc::zero();
        for (j, mu_j) in mu.iter().enumerate() {
            acc = acc.add(&polys[k][j].mul(mu_j));
        }
        mu.push(acc.neg());
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frac(n: i64, d: i64) -> RatFunc {
        RatFunc::frac(n, d)
    }

    fn zeros_abcd() -> BTreeMap<Var, RatFunc> {
        [Var::A, Var::B, Var::C, Var::D]
            .into_iter()
            .map(|v| (v, RatFunc::zero()))
            .collect()
    }

    #[test]
    fn lowering_coefficient_vanishes_at_level_zero() {
        let (_, c0) = aw_coefficient_pair(0).unwrap();
        assert!(c0.is_zero());
    }

    #[test]
    fn diagonal_coefficient_at_level_zero() {
        let (b0, _) = aw_coefficients(0).unwrap();
        use Var::{A, B, C, D};
        let prod = RatFunc::from_factor_quotient(
            &[MPoly::one_minus_monomial(&[(A, 1), (B, 1)]), MPoly::one_minus_monomial(&[(A, 1), (C, 1)]), MPoly::one_minus_monomial(&[(A, 1), (D, 1)])],
            &[MPoly::monomial(&[(A, 1)]), MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)])],
        )
        .unwrap();
        let expected = RatFunc::var(A)
            .add(&RatFunc::var_pow(A, -1))
            .sub(&prod)
            .mul_scalar(&GaussianRational::from_frac(1, 2));
        assert!(b0.equal(&expected));
        // b_0 is regular at a = b = c = d = 0 and vanishes there.
        assert!(b0.substitute(&zeros_abcd()).unwrap().is_zero());
    }

    #[test]
    fn subdiagonal_coefficient_level_one() {
        use Var::{A, B, C, D, Q};
        let (_, l1) = aw_coefficients(1).unwrap();
        // Reduced form: ¼(1−q)(1−ab)(1−ac)(1−ad)(1−bc)(1−bd)(1−cd) /
        // ((1−abcd)²(1−abcdq)).
        let expected = RatFunc::from_factor_quotient(
            &[
                MPoly::one_minus_monomial(&[(Q, 1)]),
                MPoly::one_minus_monomial(&[(A, 1), (B, 1)]),
                MPoly::one_minus_monomial(&[(A, 1), (C, 1)]),
                MPoly::one_minus_monomial(&[(A, 1), (D, 1)]),
                MPoly::one_minus_monomial(&[(B, 1), (C, 1)]),
                MPoly::one_minus_monomial(&[(B, 1), (D, 1)]),
                MPoly::one_minus_monomial(&[(C, 1), (D, 1)]),
            ],
            &[
                MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]),
                MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]),
                MPoly::one_minus_monomial(&[(A, 1), (B, 1), (C, 1), (D, 1), (Q, 1)]),
            ],
        )
        .unwrap()
        .mul_scalar(&GaussianRational::from_frac(1, 4));
        assert!(l1.equal(&expected));

        let at_zero = l1.substitute(&zeros_abcd()).unwrap();
        let quarter = MPoly::one_minus_monomial(&[(Q, 1)]).mul_scalar(&GaussianRational::from_frac(1, 4));
        assert!(at_zero.equal(&RatFunc::from_poly(quarter)));
    }

    #[test]
    fn two_param_spec_matches_general_specialization() {
        let general = aw_spec().specialized(
            "aw at c=d=0",
            &[(Var::C, RatFunc::zero()), (Var::D, RatFunc::zero())]
                .into_iter()
                .collect(),
        );
        let closed = aw_two_param_spec();
        for n in 0..5 {
            assert!(general.b(n).unwrap().equal(&closed.b(n).unwrap()), "b_{n}");
            if n >= 1 {
                assert!(
                    general.lambda(n).unwrap().equal(&closed.lambda(n).unwrap()),
                    "lambda_{n}"
                );
            }
        }
    }

    #[test]
    fn moment_table_first_entries_are_path_sums() {
        let spec = pasep_spec();
        let table = moment_table(&spec, 3).unwrap();
        assert!(table.moments[0].is_one());
        let b0 = spec.b(0).unwrap();
        let b1 = spec.b(1).unwrap();
        let l1 = spec.lambda(1).unwrap();
        assert!(table.moments[1].equal(&b0));
        assert!(table.moments[2].equal(&b0.mul(&b0).add(&l1)));
        // μ_3 = b_0³ + 2b_0λ_1 + b_1λ_1 (five Motzkin paths of length 3).
        let expected = b0
            .mul(&b0)
            .mul(&b0)
            .add(&b0.mul(&l1).mul_scalar(&GaussianRational::from_int(2)))
            .add(&b1.mul(&l1));
        assert!(table.moments[3].equal(&expected));
    }

    #[test]
    fn aw_moments_at_origin() {
        let spec = aw_spec().specialized("aw at 0", &zeros_abcd());
        let table = moment_table(&spec, 4).unwrap();
        assert!(table.moments[1].is_zero());
        let quarter_q = RatFunc::from_poly(MPoly::one_minus_monomial(&[(Var::Q, 1)]))
            .mul_scalar(&GaussianRational::from_frac(1, 4));
        assert!(table.moments[2].equal(&quarter_q));
        assert!(table.moments[3].is_zero());
    }

    #[test]
    fn q_laguerre_first_moment_is_y() {
        let table = moment_table(&q_laguerre_spec(), 2).unwrap();
        assert!(table.moments[1].equal(&RatFunc::var(Var::Y)));
        // μ_2 = b_0² + λ_1 = y² + y.
        let y = RatFunc::var(Var::Y);
        assert!(table.moments[2].equal(&y.mul(&y).add(&y)));
    }

    #[test]
    fn builtin_names_resolve() {
        for name in BUILTIN_SPEC_NAMES {
            let spec = builtin_spec(name).unwrap();
            assert_eq!(spec.name(), name);
            // Every builtin must produce a well-defined start of the table.
            let table = moment_table(&spec, 2).unwrap();
            assert!(table.moments[0].is_one());
        }
        assert!(matches!(
            builtin_spec("nope"),
            Err(AwError::UnknownName(_))
        ));
    }

    #[test]
    fn rescale_identity_and_shift() {
        let table = moment_table(&pasep_spec(), 3).unwrap();
        let same = rescale_moments(&table, &RatFunc::one(), &RatFunc::zero());
        for (a, b) in table.moments.iter().zip(&same.moments) {
            assert!(a.equal(b));
        }
        let shifted = rescale_moments(&table, &RatFunc::one(), &RatFunc::one());
        let expected = RatFunc::one().add(&table.moments[1]);
        assert!(shifted.moments[1].equal(&expected));
    }

    #[test]
    fn hankel_oracle_matches_transfer_recurrence() {
        // Symbolically for the polynomial-coefficient spec…
        let spec = pasep_spec();
        let table = moment_table(&spec, 5).unwrap();
        let hankel = hankel_moments(&spec, 5).unwrap();
        for n in 0..=5 {
            assert!(table.moments[n].equal(&hankel[n]), "pasep moment {n}");
        }
        // …and for the full Askey-Wilson spec at rational points.
        let points: [&[(Var, (i64, i64))]; 2] = [
            &[
                (Var::A, (1, 2)),
                (Var::B, (-1, 3)),
                (Var::C, (2, 5)),
                (Var::D, (3, 7)),
                (Var::Q, (1, 4)),
            ],
            &[
                (Var::A, (-2, 3)),
                (Var::B, (1, 5)),
                (Var::C, (-3, 4)),
                (Var::D, (1, 7)),
                (Var::Q, (2, 9)),
            ],
        ];
        for point in points {
            let bindings: BTreeMap<Var, RatFunc> = point
                .iter()
                .map(|&(v, (n, d))| (v, frac(n, d)))
                .collect();
            let spec = aw_spec().specialized("aw at point", &bindings);
            let table = moment_table(&spec, 6).unwrap();
            let hankel = hankel_moments(&spec, 6).unwrap();
            for n in 0..=6 {
                assert!(table.moments[n].equal(&hankel[n]), "aw moment {n}");
            }
        }
    }

    #[test]
    fn moments_times_pochhammer_prefactor_are_integer_polynomials() {
        use Var::{A, B, C, D};
        let table = moment_table(&aw_spec(), 6).unwrap();
        let ctx = QCtx::q();
        let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
        for n in 0..=6u32 {
            let poch = ctx.q_pochhammer_poly(&abcd, i64::from(n)).unwrap();
            let scaled = table.moments[n as usize]
                .mul_poly(&poch)
                .mul_scalar(&GaussianRational::from_int(1 << n));
            let poly = scaled
                .to_polynomial()
                .unwrap_or_else(|e| panic!("moment {n} not polynomial: {e}"));
            assert!(!poly.has_negative_exponents(), "moment {n} is Laurent");
            assert!(poly.is_integer_poly(), "moment {n} has non-integer coeffs");
        }
    }

    #[test]
    fn moments_symmetric_under_parameter_permutations() {
        let table = moment_table(&aw_spec(), 5).unwrap();
        let mu5 = &table.moments[5];
        let vars = [Var::A, Var::B, Var::C, Var::D];
        // All 24 permutations of (a, b, c, d), generated in-place.
        let mut perms: Vec<[usize; 4]> = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        let p = [i, j, k, l];
                        let mut seen = [false; 4];
                        p.iter().for_each(|&x| seen[x] = true);
                        if seen == [true; 4] {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        assert_eq!(perms.len(), 24);
        for p in perms {
            let bindings: BTreeMap<Var, RatFunc> = (0..4)
                .map(|i| (vars[i], RatFunc::var(vars[p[i]])))
                .collect();
            let permuted = mu5.substitute(&bindings).unwrap();
            assert!(permuted.equal(mu5), "permutation {p:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        /// The two oracles agree on arbitrary small polynomial recurrences.
        #[test]
        fn oracles_agree_on_random_specs(
            bs in prop::collection::vec((-3i64..=3, -3i64..=3), 3),
            ls in prop::collection::vec((-3i64..=3, 0i64..=3), 3),
        ) {
            let spec = RecurrenceSpec::new(
                "random",
                [Var::Y],
                move |n| {
                    let (c0, c1) = bs[(n as usize).min(2)];
                    Ok(RatFunc::int(c0).add(&RatFunc::var(Var::Y).mul_scalar(&GaussianRational::from_int(c1))))
                },
                move |n| {
                    let (c0, c1) = ls[((n - 1) as usize).min(2)];
                    Ok(RatFunc::int(c0).add(&RatFunc::var(Var::Y).mul_scalar(&GaussianRational::from_int(c1))))
                },
            );
            let table = moment_table(&spec, 5).unwrap();
            let hankel = hankel_moments(&spec, 5).unwrap();
            for n in 0..=5 {
                prop_assert!(table.moments[n].equal(&hankel[n]));
            }
        }
    }
}
