use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;
use super::mono::Mono;
use super::var::Var;
use crate::error::{AwError, Result};

/// A sparse multivariate Laurent polynomial over the Gaussian rationals.
///
/// Terms are kept in a map ordered by the canonical graded-lex monomial
/// order with no zero coefficients stored, so structural equality coincides
/// with mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, GaussianRational>,
}

pub fn pow_gaussian(base: &GaussianRational, e: i32) -> Result<GaussianRational> {
    let (b, k) = if e < 0 {
        let inv = base.inv().ok_or_else(|| {
            AwError::SingularSpecialization("negative power of zero".to_string())
        })?;
        (inv, e.unsigned_abs())
    } else {
        (base.clone(), e as u32)
    };
    let mut acc = GaussianRational::from_int(1);
    let mut sq = b;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&sq);
        }
        sq = sq.mul(&sq);
        k >>= 1;
    }
    Ok(acc)
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::int(1)
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(GaussianRational::from_int(n))
    }

    pub fn constant(c: GaussianRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(Mono::var(v, 1), GaussianRational::from_int(1))
    }

    pub fn var_pow(v: Var, e: i32) -> MPoly {
        MPoly::term(Mono::var(v, e), GaussianRational::from_int(1))
    }

    /// Laurent monomial `∏ v^e` from (variable, exponent) pairs; repeated
    /// variables accumulate their exponents.
    pub fn monomial(pairs: &[(Var, i64)]) -> MPoly {
        let mut m = Mono::one();
        for &(v, e) in pairs {
            m = m.mul(&Mono::var(
                v,
                i32::try_from(e).expect("monomial exponent fits i32"),
            ));
        }
        MPoly::mono(m)
    }

    /// `1 − monomial`.
    pub fn one_minus_monomial(pairs: &[(Var, i64)]) -> MPoly {
        MPoly::one().sub(&MPoly::monomial(pairs))
    }

    /// `1 + monomial`.
    pub fn one_plus_monomial(pairs: &[(Var, i64)]) -> MPoly {
        MPoly::one().add(&MPoly::monomial(pairs))
    }

    pub fn mono(m: Mono) -> MPoly {
        MPoly::term(m, GaussianRational::from_int(1))
    }

    pub fn term(m: Mono, c: GaussianRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, GaussianRational)>) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num_terms() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.num_terms() == 1 && self.terms.contains_key(&Mono::one()))
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            Some(GaussianRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::one()).cloned()
        } else {
            None
        }
    }

    /// True when the polynomial is a single term `c * m`.
    pub fn single_term(&self) -> Option<(Mono, GaussianRational)> {
        if self.num_terms() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((*m, c.clone()))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms from the leading (greatest) monomial downwards.
    pub fn iter_desc(&self) -> impl Iterator<Item = (&Mono, &GaussianRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Mono) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading(&self) -> Option<(&Mono, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars_used(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.vars() {
                s.insert(v);
            }
        }
        s
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.neg());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let (small, large) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        if let Some((m, c)) = small.single_term() {
            return large.mul_term(&m, &c);
        }
        let mut acc: HashMap<Mono, GaussianRational> =
            HashMap::with_capacity(self.num_terms() * other.num_terms() / 2 + 1);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &GaussianRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &GaussianRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m0, c0)| (m0.mul(m), c0.mul(c)))
                .collect(),
        }
    }

    /// Integer power. Negative powers are only defined for single-term
    /// polynomials (Laurent monomials); anything else is not invertible.
    pub fn pow(&self, k: i32) -> Result<MPoly> {
        if k < 0 {
            let (m, c) = self.single_term().ok_or_else(|| {
                AwError::InvalidParameter(
                    "not invertible: negative power of a non-monomial polynomial".to_string(),
                )
            })?;
            let cinv = c
                .inv()
                .expect("nonzero coefficient in stored term");
            return Ok(MPoly::term(m.pow(k), pow_gaussian(&cinv, -k)?));
        }
        let mut acc = MPoly::one();
        let mut sq = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = if k > 1 { sq.mul(&sq) } else { sq };
            k >>= 1;
        }
        Ok(acc)
    }

    /// Componentwise minimum of all exponent vectors: the largest Laurent
    /// monomial dividing every term. Returns 1 for the zero polynomial.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono::one(),
        };
        it.fold(first, |acc, m| acc.min_with(m))
    }

    /// Writes `self = content * primitive` where `primitive` has coprime
    /// integer coefficient parts and a leading coefficient with positive real
    /// part (or zero real part and positive imaginary part). The monomial
    /// content is not touched. Zero returns `(1, 0)`.
    pub fn normalize_primitive(&self) -> (GaussianRational, MPoly) {
        if self.is_zero() {
            return (GaussianRational::from_int(1), MPoly::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for part in [&c.re, &c.im] {
                if !part.is_zero() {
                    den_lcm = den_lcm.lcm(part.denom());
                }
            }
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            for part in [&c.re, &c.im] {
                if !part.is_zero() {
                    let scaled = part.numer() * (&den_lcm / part.denom());
                    num_gcd = num_gcd.gcd(&scaled);
                }
            }
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        let lead = self.leading().expect("nonzero").1;
        let positive = if lead.re.is_zero() {
            lead.im.is_positive()
        } else {
            lead.re.is_positive()
        };
        if !positive {
            content = -content;
        }
        let content = GaussianRational::from_rational(content);
        let inv = content.inv().expect("nonzero content");
        (content, self.mul_scalar(&inv))
    }

    /// Exact division, failing with `InexactDivision` when the divisor does
    /// not divide this polynomial in the Laurent ring.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(AwError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(MPoly::zero());
        }
        if let Some((m, c)) = d.single_term() {
            let cinv = c.inv().expect("nonzero coefficient");
            return Ok(self.mul_term(&m.inv(), &cinv));
        }
        if d.num_terms() == 2 {
            return self.div_by_binomial(d).ok_or_else(|| {
                AwError::InexactDivision(format!(
                    "{} terms not divisible by binomial {}",
                    self.num_terms(),
                    d.to_display()
                ))
            });
        }
        self.div_generic(d)
    }

    pub fn divides(&self, dividend: &MPoly) -> bool {
        dividend.div_exact(self).is_ok()
    }

    /// Exact division by a two-term divisor, decomposing the dividend into
    /// ladders along the divisor's exponent-difference direction and running
    /// synthetic division on each ladder. Linear in the number of terms.
    fn div_by_binomial(&self, d: &MPoly) -> Option<MPoly> {
        let mut it = d.terms.iter().rev();
        let (m1, c1) = it.next().unwrap();
        let (m2, c2) = it.next().unwrap();
        let dir = m1.div(m2);
        let pivot = (0..8).find(|&i| dir.0[i] != 0).expect("distinct monomials");
        let step = dir.0[pivot];

        let mut classes: HashMap<Mono, Vec<(i32, GaussianRational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let k = m.0[pivot].div_euclid(step);
            let id = m.div(&dir.pow(k));
            classes.entry(id).or_default().push((k, c.clone()));
        }

        let c1_inv = c1.inv().expect("nonzero coefficient");
        let mut quotient = MPoly::zero();
        for (id, mut ladder) in classes {
            ladder.sort_by_key(|(k, _)| *k);
            let k0 = ladder[0].0;
            let deg = (ladder.last().unwrap().0 - k0) as usize;
            if deg == 0 {
                return None;
            }
            let mut dense = vec![GaussianRational::zero(); deg + 1];
            for (k, c) in ladder {
                dense[(k - k0) as usize] = c;
            }
            let mut h = vec![GaussianRational::zero(); deg];
            h[deg - 1] = dense[deg].mul(&c1_inv);
            for t in (1..deg).rev() {
                h[t - 1] = dense[t].sub(&c2.mul(&h[t])).mul(&c1_inv);
            }
            if !dense[0].sub(&c2.mul(&h[0])).is_zero() {
                return None;
            }
            let base = id.div(m2);
            for (j, c) in h.into_iter().enumerate() {
                if !c.is_zero() {
                    quotient.add_term(base.mul(&dir.pow(k0 + j as i32)), c);
                }
            }
        }
        Some(quotient)
    }

    fn div_generic(&self, d: &MPoly) -> Result<MPoly> {
        let shift_self = self.mono_content();
        let shift_d = d.mono_content();
        let a = self.mul_term(&shift_self.inv(), &GaussianRational::from_int(1));
        let b = d.mul_term(&shift_d.inv(), &GaussianRational::from_int(1));
        let (bm, bc) = {
            let (m, c) = b.leading().expect("nonzero divisor");
            (*m, c.clone())
        };
        let bc_inv = bc.inv().expect("nonzero leading coefficient");
        let mut rem = a;
        let mut quotient = MPoly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !rm.divisible_by(&bm) {
                return Err(AwError::InexactDivision(format!(
                    "leading term {} not divisible by {}",
                    rm.to_display(),
                    bm.to_display()
                )));
            }
            let t = rm.div(&bm);
            let c = rc.mul(&bc_inv);
            quotient.add_term(t, c.clone());
            rem = rem.sub(&b.mul_term(&t, &c));
        }
        Ok(quotient.mul_term(&shift_self.div(&shift_d), &GaussianRational::from_int(1)))
    }

    /// Full numeric evaluation; every variable that occurs must be bound.
    pub fn eval(&self, point: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational> {
        let mut cache: HashMap<(Var, i32), GaussianRational> = HashMap::new();
        let mut sum = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.vars() {
                let pw = match cache.entry((v, e)) {
                    std::collections::hash_map::Entry::Occupied(o) => o.get().clone(),
                    std::collections::hash_map::Entry::Vacant(vac) => {
                        let base = point.get(&v).ok_or_else(|| {
                            AwError::InvalidParameter(format!("unbound variable {v}"))
                        })?;
                        vac.insert(pow_gaussian(base, e)?).clone()
                    }
                };
                term = term.mul(&pw);
            }
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// First term (in descending canonical order) whose coefficient is not a
    /// nonnegative real rational, if any. Used by positivity scans.
    pub fn first_negative_term(&self) -> Option<(Mono, GaussianRational)> {
        self.iter_desc()
            .find(|(_, c)| !c.is_nonnegative_real())
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Sum of all coefficients, i.e. the evaluation at every variable = 1.
    pub fn coefficient_sum(&self) -> GaussianRational {
        let mut s = GaussianRational::zero();
        for c in self.terms.values() {
            s = s.add(c);
        }
        s
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    pub fn is_integer_poly(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.im.is_zero() && c.re.denom().is_one())
    }

    pub fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.iter_desc().enumerate() {
            let (negative, abs) = if c.im.is_zero() && c.re.is_negative() {
                (true, c.neg())
            } else {
                (false, c.clone())
            };
            let body = if m.is_one() {
                abs.to_display()
            } else if abs.is_one() {
                m.to_display()
            } else if abs.is_real() {
                format!("{}*{}", abs.to_display(), m.to_display())
            } else {
                format!("({})*{}", abs.to_display(), m.to_display())
            };
            if i == 0 {
                if negative {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

impl std::fmt::Display for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_display())
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                MPoly::$method(self, rhs)
            }
        }
    };
}

impl_binop!(Add, add);
impl_binop!(Sub, sub);
impl_binop!(Mul, mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> MPoly {
        MPoly::var(Var::A)
    }
    fn b() -> MPoly {
        MPoly::var(Var::B)
    }
    fn q() -> MPoly {
        MPoly::var(Var::Q)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = (&(&a() + &b()) * &(&a() - &b())).clone();
        let rhs = &a().mul(&a()) - &b().mul(&b());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn telescoping_product() {
        let lhs = &(&MPoly::one() - &q()) * &MPoly::from_terms([
            (Mono::one(), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, 1), GaussianRational::from_int(1)),
            (Mono::var(Var::Q, 2), GaussianRational::from_int(1)),
        ]);
        let rhs = &MPoly::one() - &MPoly::var_pow(Var::Q, 3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_cancellation() {
        let qinv = MPoly::var_pow(Var::Q, -1);
        assert!(qinv.mul(&q()).is_one());
    }

    #[test]
    fn negative_power_rules() {
        assert!(MPoly::var_pow(Var::A, 2).pow(-1).is_ok());
        assert!((&a() + &b()).pow(-1).is_err());
        let m = MPoly::term(Mono::var(Var::A, 1), GaussianRational::from_frac(2, 3));
        let inv = m.pow(-1).unwrap();
        assert!(m.mul(&inv).is_one());
    }

    #[test]
    fn add_negate_cancels() {
        let p = &a().mul(&b()) + &q().pow(3).unwrap();
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn exact_division_binomial() {
        let one = MPoly::one();
        let f = &one - &q();
        let g = &one - &MPoly::var_pow(Var::Q, 5);
        let quotient = g.div_exact(&f).unwrap();
        assert_eq!(quotient.num_terms(), 5);
        assert_eq!(quotient.mul(&f), g);
        assert!((&g + &one).div_exact(&f).is_err());
    }

    #[test]
    fn exact_division_multiterm() {
        let s = &(&a() + &b()) + &q();
        let t = &a().mul(&a()) - &b().mul(&q());
        let prod = s.mul(&t);
        assert_eq!(prod.div_exact(&s).unwrap(), t);
        assert_eq!(prod.div_exact(&t).unwrap(), s);
        assert!(prod.add(&MPoly::one()).div_exact(&s).is_err());
    }

    #[test]
    fn exact_division_laurent() {
        let f = &MPoly::var_pow(Var::A, -1) - &q();
        let g = &MPoly::one() - &b();
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&f).unwrap(), g);
    }

    #[test]
    fn primitive_normalization() {
        let p = MPoly::from_terms([
            (Mono::var(Var::A, 1), GaussianRational::from_frac(-2, 3)),
            (Mono::one(), GaussianRational::from_frac(4, 9)),
        ]);
        let (content, prim) = p.normalize_primitive();
        assert_eq!(prim.mul_scalar(&content), p);
        let lead = prim.leading().unwrap().1;
        assert!(lead.re.is_positive());
        assert!(prim.is_integer_poly());
    }

    #[test]
    fn evaluation() {
        let p = &a().mul(&a()) + &MPoly::var_pow(Var::Q, -1);
        let mut point = BTreeMap::new();
        point.insert(Var::A, GaussianRational::from_int(3));
        point.insert(Var::Q, GaussianRational::from_frac(1, 2));
        assert_eq!(p.eval(&point).unwrap(), GaussianRational::from_int(11));
        point.insert(Var::Q, GaussianRational::from_int(0));
        assert!(matches!(
            p.eval(&point),
            Err(AwError::SingularSpecialization(_))
        ));
    }

    #[test]
    fn display() {
        let p = &(&a().mul(&a()) - &b()) + &MPoly::int(2);
        assert_eq!(p.to_display(), "a^2 - b + 2");
    }
}
