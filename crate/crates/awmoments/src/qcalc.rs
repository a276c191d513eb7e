//! q-calculus primitives (q-integers, q-Pochhammer symbols, q-binomials)
//! and the small combinatorial number families used throughout the moment
//! formulas, plus the classical q-identity checks.

use crate::arith::{MPoly, RatFunc, Var};
use crate::error::{AwError, Result};
use crate::report::VerificationReport;

/// Context fixing the base of all q-symbols, so that q- and q²-based (or
/// A²-based) symbols share one code path.
#[derive(Debug, Clone)]
pub struct QCtx {
    base: MPoly,
}

impl QCtx {
    pub fn new(base: MPoly) -> Result<QCtx> {
        if base.is_one() {
            return Err(AwError::InvalidParameter(
                "q-symbol base must not be the constant 1".to_string(),
            ));
        }
        Ok(QCtx { base })
    }

    /// Base q.
    pub fn q() -> QCtx {
        QCtx {
            base: MPoly::var(Var::Q),
        }
    }

    /// Base q².
    pub fn q2() -> QCtx {
        QCtx {
            base: MPoly::var_pow(Var::Q, 2),
        }
    }

    /// Base v^e for any variable.
    pub fn var_pow(v: Var, e: i32) -> QCtx {
        QCtx {
            base: MPoly::var_pow(v, e),
        }
    }

    pub fn base(&self) -> &MPoly {
        &self.base
    }

    pub fn base_pow(&self, i: i64) -> MPoly {
        self.base.pow(i as i32).expect("monomial or nonnegative power")
    }

    /// [n]_q = 1 + q + ... + q^{n-1}, the expanded geometric sum.
    pub fn q_int(&self, n: i64) -> Result<MPoly> {
        if n < 0 {
            return Err(AwError::InvalidParameter(format!(
                "q-integer of negative argument {n}"
            )));
        }
        let mut sum = MPoly::zero();
        let mut pw = MPoly::one();
        for _ in 0..n {
            sum = sum.add(&pw);
            pw = pw.mul(&self.base);
        }
        Ok(sum)
    }

    /// [n]_q! = [1]_q [2]_q ... [n]_q.
    pub fn q_factorial(&self, n: i64) -> Result<MPoly> {
        if n < 0 {
            return Err(AwError::InvalidParameter(format!(
                "q-factorial of negative argument {n}"
            )));
        }
        let mut prod = MPoly::one();
        for k in 1..=n {
            prod = prod.mul(&self.q_int(k)?);
        }
        Ok(prod)
    }

    /// Even q-double factorial [2i]_q!! = [2]_q [4]_q ... [2i]_q.
    pub fn q_double_factorial_even(&self, i: i64) -> Result<MPoly> {
        if i < 0 {
            return Err(AwError::InvalidParameter(format!(
                "q-double-factorial of negative argument {i}"
            )));
        }
        let mut prod = MPoly::one();
        for k in 1..=i {
            prod = prod.mul(&self.q_int(2 * k)?);
        }
        Ok(prod)
    }

    /// The factor list of (x; q)_n: [1 - x, 1 - xq, ..., 1 - xq^{n-1}].
    pub fn poch_factors(&self, x: &MPoly, n: i64) -> Result<Vec<MPoly>> {
        if n < 0 {
            return Err(AwError::InvalidParameter(format!(
                "q-Pochhammer of negative length {n}"
            )));
        }
        let mut factors = Vec::with_capacity(n as usize);
        let mut shifted = x.clone();
        for _ in 0..n {
            factors.push(MPoly::one().sub(&shifted));
            shifted = shifted.mul(&self.base);
        }
        Ok(factors)
    }

    /// (x; q)_n expanded as a polynomial (for polynomial x).
    pub fn q_pochhammer_poly(&self, x: &MPoly, n: i64) -> Result<MPoly> {
        let mut prod = MPoly::one();
        for f in self.poch_factors(x, n)? {
            prod = prod.mul(&f);
        }
        Ok(prod)
    }

    /// (x; q)_n for a rational-function argument.
    pub fn q_pochhammer(&self, x: &RatFunc, n: i64) -> Result<RatFunc> {
        if n < 0 {
            return Err(AwError::InvalidParameter(format!(
                "q-Pochhammer of negative length {n}"
            )));
        }
        let mut prod = RatFunc::one();
        let mut shifted = x.clone();
        let base = RatFunc::from_poly(self.base.clone());
        for _ in 0..n {
            prod = prod.mul(&RatFunc::one().sub(&shifted));
            shifted = shifted.mul(&base);
        }
        Ok(prod)
    }

    pub fn binom_table(&self) -> QBinomTable {
        QBinomTable {
            base: self.base.clone(),
            base_pows: vec![MPoly::one()],
            rows: vec![vec![MPoly::one()]],
        }
    }
}

/// Lazily extended Pascal table of q-binomial coefficients for one base.
/// Out-of-range arguments return the zero polynomial, matching the extended
/// convention the moment formulas rely on.
#[derive(Debug, Clone)]
pub struct QBinomTable {
    base: MPoly,
    base_pows: Vec<MPoly>,
    rows: Vec<Vec<MPoly>>,
}

impl QBinomTable {
    fn base_pow(&mut self, k: usize) -> MPoly {
        while self.base_pows.len() <= k {
            let next = self.base_pows.last().unwrap().mul(&self.base);
            self.base_pows.push(next);
        }
        self.base_pows[k].clone()
    }

    fn extend_to(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len();
            let mut row = Vec::with_capacity(m + 1);
            row.push(MPoly::one());
            for k in 1..m {
                let shift = self.base_pow(k);
                let prev = &self.rows[m - 1];
                row.push(prev[k - 1].add(&shift.mul(&prev[k])));
            }
            row.push(MPoly::one());
            self.rows.push(row);
        }
    }

    /// [n choose k]_q, with the extended convention: 0 when k < 0, k > n, or
    /// n < 0.
    pub fn get(&mut self, n: i64, k: i64) -> MPoly {
        if n < 0 || k < 0 || k > n {
            return MPoly::zero();
        }
        self.extend_to(n as usize);
        self.rows[n as usize][k as usize].clone()
    }

    /// [n choose p_1, ..., p_r]_q as a product of partial binomials. Parts
    /// must sum to n; a negative part gives 0 under the extended convention.
    pub fn multinomial(&mut self, n: i64, parts: &[i64]) -> Result<MPoly> {
        if parts.iter().sum::<i64>() != n {
            return Err(AwError::InvalidParameter(format!(
                "multinomial parts {parts:?} do not sum to {n}"
            )));
        }
        if n < 0 || parts.iter().any(|&p| p < 0) {
            return Ok(MPoly::zero());
        }
        let mut prod = MPoly::one();
        let mut prefix = 0i64;
        for &p in parts {
            prefix += p;
            prod = prod.mul(&self.get(prefix, p));
        }
        Ok(prod)
    }
}

/// Divides factor-by-factor by (x; q)_n, keeping the denominator factored.
pub fn div_by_pochhammer(r: &RatFunc, ctx: &QCtx, x: &MPoly, n: i64) -> Result<RatFunc> {
    let mut out = r.clone();
    for f in ctx.poch_factors(x, n)? {
        out = out.div_by_poly(&f)?;
    }
    Ok(out)
}

/// Ordinary binomial coefficient, 0 outside the classical support.
pub fn binom(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as i128 / i as i128;
    }
    acc as i64
}

/// binom(n, s) - binom(n, s-1), the ballot-number difference.
pub fn ballot_diff(n: i64, s: i64) -> i64 {
    binom(n, s) - binom(n, s - 1)
}

/// The half-index variant binom(n, (n-k)/2) - binom(n, (n-k)/2 - 1),
/// which is 0 when n - k is odd.
pub fn ballot_diff_half(n: i64, k: i64) -> i64 {
    if (n - k).rem_euclid(2) != 0 {
        return 0;
    }
    ballot_diff(n, (n - k) / 2)
}

pub fn factorial(n: i64) -> i64 {
    (1..=n).product::<i64>().max(1)
}

/// Odd double factorial m!! = m (m-2) (m-4) ... 1 for odd m ≥ -1.
pub fn double_factorial_odd(m: i64) -> i64 {
    let mut acc = 1i64;
    let mut k = m;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn catalan(m: i64) -> i64 {
    if m < 0 {
        return 0;
    }
    binom(2 * m, m) / (m + 1)
}

/// Cat(x) where the argument is given as 2x; half-integer arguments give 0.
pub fn catalan_half(twice_x: i64) -> i64 {
    if twice_x < 0 || twice_x % 2 != 0 {
        return 0;
    }
    catalan(twice_x / 2)
}

/// Narayana number N(n, k) = (1/n) binom(n, k) binom(n, k-1).
pub fn narayana(n: i64, k: i64) -> i64 {
    if n < 1 {
        return 0;
    }
    binom(n, k) * binom(n, k - 1) / n
}

/// binom(x, 2) = x(x-1)/2, valid for any integer, used in q-exponents.
pub fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Verifies the three classical q-identities the combinatorial proofs lean
/// on, for all admissible indices up to `n_max`:
/// the alternating sum of q-binomials, the alternating Pochhammer
/// convolution (with a free variable), and the q-Saalschütz multinomial
/// identity. Failures are reported, not thrown.
pub fn identity_checks(n_max: i64) -> Vec<VerificationReport> {
    vec![
        gaussian_alternating_check(n_max),
        alternating_pochhammer_check(n_max),
        q_saalschutz_check(n_max),
    ]
}

fn gaussian_alternating_check(n_max: i64) -> VerificationReport {
    let ctx = QCtx::q();
    let ctx2 = QCtx::q2();
    let mut table = ctx.binom_table();
    for n in 0..=n_max {
        let mut sum = MPoly::zero();
        for i in 0..=n {
            let term = table.get(n, i);
            sum = if i % 2 == 0 {
                sum.add(&term)
            } else {
                sum.sub(&term)
            };
        }
        let expected = if n % 2 == 0 {
            ctx2.q_pochhammer_poly(&MPoly::var(Var::Q), n / 2)
                .expect("nonnegative length")
        } else {
            MPoly::zero()
        };
        if sum != expected {
            return VerificationReport::fail(
                "qcalc/alternating-binomial-sum",
                format!("n={n}: got {}, expected {}", sum, expected),
            );
        }
    }
    VerificationReport::pass("qcalc/alternating-binomial-sum")
}

fn alternating_pochhammer_check(n_max: i64) -> VerificationReport {
    let ctx = QCtx::q();
    let ctx2 = QCtx::q2();
    let x = MPoly::var(Var::Y);
    let mut table = ctx.binom_table();
    for n in 0..=n_max {
        let mut sum = MPoly::zero();
        for i in 0..=n {
            let term = table
                .get(n, i)
                .mul(&ctx.q_pochhammer_poly(&x, n - i).expect("nonnegative"))
                .mul(&ctx.q_pochhammer_poly(&x, i).expect("nonnegative"));
            sum = if i % 2 == 0 {
                sum.add(&term)
            } else {
                sum.sub(&term)
            };
        }
        let expected = if n % 2 == 0 {
            ctx2.q_pochhammer_poly(&MPoly::var(Var::Q), n / 2)
                .expect("nonnegative")
                .mul(
                    &ctx2
                        .q_pochhammer_poly(&x.mul(&x), n / 2)
                        .expect("nonnegative"),
                )
        } else {
            MPoly::zero()
        };
        if sum != expected {
            return VerificationReport::fail(
                "qcalc/alternating-pochhammer-sum",
                format!("n={n}: got {}, expected {}", sum, expected),
            );
        }
    }
    VerificationReport::pass("qcalc/alternating-pochhammer-sum")
}

fn q_saalschutz_check(n_max: i64) -> VerificationReport {
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    for a in 0..=n_max {
        for b in 0..=n_max {
            for c in 0..=n_max {
                for k in 0..=n_max {
                    let lhs = table
                        .get(a + b + k, a)
                        .mul(&table.get(b + c + k, b))
                        .mul(&table.get(c + a + k, c));
                    let mut rhs = MPoly::zero();
                    for j in 0..=a.min(b).min(c) {
                        let multi = table
                            .multinomial(
                                a + b + c + k - j,
                                &[a - j, b - j, c - j, j, k + j],
                            )
                            .expect("parts sum correctly");
                        let qpow = MPoly::var_pow(Var::Q, (j * (j + k)) as i32);
                        rhs = rhs.add(&qpow.mul(&multi));
                    }
                    if lhs != rhs {
                        return VerificationReport::fail(
                            "qcalc/q-saalschutz",
                            format!("a={a} b={b} c={c} k={k}: sides differ"),
                        );
                    }
                }
            }
        }
    }
    VerificationReport::pass("qcalc/q-saalschutz")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Mono;
    use crate::GaussianRational;

    #[test]
    fn q_int_and_factorials() {
        let ctx = QCtx::q();
        assert_eq!(ctx.q_int(3).unwrap().num_terms(), 3);
        assert!(ctx.q_factorial(0).unwrap().is_one());
        assert!(ctx.q_int(-1).is_err());
        let dd = ctx.q_double_factorial_even(2).unwrap();
        let expected = ctx.q_int(2).unwrap().mul(&ctx.q_int(4).unwrap());
        assert_eq!(dd, expected);
    }

    #[test]
    fn pochhammer_values() {
        let ctx = QCtx::q();
        let y = MPoly::var(Var::Y);
        assert!(ctx.q_pochhammer_poly(&y, 0).unwrap().is_one());
        let p2 = ctx.q_pochhammer_poly(&y, 2).unwrap();
        let manual = MPoly::one().sub(&y).mul(
            &MPoly::one().sub(&y.mul(&MPoly::var(Var::Q))),
        );
        assert_eq!(p2, manual);
        let ctx2 = QCtx::q2();
        let p = ctx2.q_pochhammer_poly(&MPoly::var(Var::Q), 2).unwrap();
        let manual = MPoly::one()
            .sub(&MPoly::var(Var::Q))
            .mul(&MPoly::one().sub(&MPoly::var_pow(Var::Q, 3)));
        assert_eq!(p, manual);
    }

    #[test]
    fn binomial_golden_values() {
        let ctx = QCtx::q();
        let mut t = ctx.binom_table();
        let b42 = t.get(4, 2);
        let expected = MPoly::from_terms([
            (Mono::one(), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, 1), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, 2), GaussianRational::from_int(2)),
            (Mono::var(Var::Q, 3), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, 4), GaussianRational::from_int(1)),
        ]);
        assert_eq!(b42, expected);
        assert!(t.get(5, 0).is_one());
        assert!(t.get(3, -1).is_zero());
        assert!(t.get(3, 4).is_zero());
        assert!(t.get(-2, 0).is_zero());
        let m = t.multinomial(3, &[1, 1, 1]).unwrap();
        let expected = MPoly::from_terms([
            (Mono::one(), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, 1), GaussianRational::from_int(2)),
            (Mono::var(Var::Q, 2), GaussianRational::from_int(2)),
            (Mono::var(Var::Q, 3), GaussianRational::from_int(1)),
        ]);
        assert_eq!(m, expected);
        assert!(t.multinomial(4, &[1, 1, 1]).is_err());
        assert!(t.multinomial(1, &[2, -1]).unwrap().is_zero());
    }

    #[test]
    fn binomial_symmetry_and_pascal() {
        let ctx = QCtx::q();
        let mut t = ctx.binom_table();
        for n in 0..=12i64 {
            for k in 0..=n {
                assert_eq!(t.get(n, k), t.get(n, n - k), "symmetry at {n},{k}");
                if n > 0 {
                    let qk = MPoly::var_pow(Var::Q, k as i32);
                    let qnk = MPoly::var_pow(Var::Q, (n - k) as i32);
                    let first = t.get(n - 1, k - 1).add(&qk.mul(&t.get(n - 1, k)));
                    let second = qnk.mul(&t.get(n - 1, k - 1)).add(&t.get(n - 1, k));
                    assert_eq!(t.get(n, k), first, "pascal-1 at {n},{k}");
                    assert_eq!(t.get(n, k), second, "pascal-2 at {n},{k}");
                }
            }
        }
    }

    #[test]
    fn counting_families() {
        assert_eq!(ballot_diff(4, 1), 3);
        assert_eq!(ballot_diff(4, 0), 1);
        assert_eq!(ballot_diff_half(4, 1), 0);
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan_half(3), 0);
        assert_eq!(catalan_half(6), 5);
        assert_eq!(narayana(4, 2), 6);
        assert_eq!(double_factorial_odd(9), 945);
        assert_eq!(factorial(5), 120);
    }

    #[test]
    fn ballot_telescoping() {
        for n in 0..=10i64 {
            let mut partial = 0i64;
            for s in 0..=n + 1 {
                partial += ballot_diff(n, s);
                assert!(partial >= 0);
                assert_eq!(partial, binom(n, s));
            }
            assert_eq!(partial, 0);
        }
    }

    #[test]
    fn identity_checks_small() {
        for r in identity_checks(4) {
            assert!(r.is_pass(), "{:?}", r);
        }
    }

    #[test]
    fn base_one_rejected() {
        assert!(QCtx::new(MPoly::one()).is_err());
    }
}
