use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use super::gaussian::GaussianRational;
use super::mono::Mono;
use super::poly::{pow_gaussian, MPoly};
use super::var::{Var, ALL_VARS};
use crate::error::{AwError, Result};

/// An exact rational function, stored as a Laurent-polynomial numerator over
/// a multiset of denominator factors.
///
/// Keeping the denominator factored (instead of multiplied out) is what
/// makes the moment recurrences tractable: sums combine denominators by
/// factorwise least common multiple, so the denominator of a moment stays a
/// short product of q-Pochhammer-style binomials instead of exploding.
///
/// Invariants: every stored factor is primitive (integer coefficients with
/// trivial common content, sign-normalized leading coefficient), has no
/// monomial content, and is neither constant nor a single term — scalar and
/// monomial parts are folded into the numerator, which is free to be Laurent.
/// A zero numerator clears the denominator.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: MPoly,
    den: BTreeMap<MPoly, u32>,
}

/// A fixed generic rational point used to cheaply reject unequal functions
/// before the exact cross-multiplication test.
fn probe_point() -> BTreeMap<Var, GaussianRational> {
    let fracs: [(i64, i64); 8] = [
        (2, 3),
        (3, 5),
        (5, 7),
        (7, 11),
        (11, 13),
        (13, 17),
        (17, 19),
        (19, 23),
    ];
    ALL_VARS
        .iter()
        .zip(fracs)
        .map(|(&v, (n, d))| (v, GaussianRational::from_frac(n, d)))
        .collect()
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc {
            num: MPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(MPoly::one())
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from_poly(MPoly::int(n))
    }

    pub fn frac(n: i64, d: i64) -> RatFunc {
        RatFunc::from_poly(MPoly::constant(GaussianRational::from_frac(n, d)))
    }

    pub fn constant(c: GaussianRational) -> RatFunc {
        RatFunc::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(MPoly::var(v))
    }

    pub fn var_pow(v: Var, e: i32) -> RatFunc {
        RatFunc::from_poly(MPoly::var_pow(v, e))
    }

    pub fn from_poly(num: MPoly) -> RatFunc {
        RatFunc {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn from_num_den(num: MPoly, den: MPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(AwError::DivisionByZero);
        }
        let mut r = Self::normalized(num, [(den, 1)]);
        r.reduce();
        Ok(r)
    }

    /// Builds `∏ num_factors / ∏ den_factors`, cancelling structurally equal
    /// factor pairs before any multiplication. This keeps expressions like
    /// coefficient products with shared vanishing factors exact even when a
    /// lone factor would be zero or singular.
    pub fn from_factor_quotient(
        num_factors: &[MPoly],
        den_factors: &[MPoly],
    ) -> Result<RatFunc> {
        struct Part {
            content: GaussianRational,
            mono: Mono,
            prim: MPoly,
        }
        let split = |f: &MPoly| -> Part {
            let mc = f.mono_content();
            let shifted = f.mul_term(&mc.inv(), &GaussianRational::from_int(1));
            let (content, prim) = shifted.normalize_primitive();
            Part {
                content,
                mono: mc,
                prim,
            }
        };
        for f in den_factors {
            if f.is_zero() {
                return Err(AwError::DivisionByZero);
            }
        }
        if num_factors.iter().any(|f| f.is_zero()) {
            return Ok(RatFunc::zero());
        }
        let mut den_parts: Vec<Part> = den_factors.iter().map(split).collect();
        let mut scalar = GaussianRational::from_int(1);
        let mut mono = Mono::one();
        let mut remaining_num: Vec<MPoly> = Vec::new();
        for f in num_factors {
            let p = split(f);
            if let Some(i) = den_parts.iter().position(|d| d.prim == p.prim) {
                let d = den_parts.swap_remove(i);
                scalar = scalar.mul(&p.content.div(&d.content).expect("nonzero content"));
                mono = mono.mul(&p.mono.div(&d.mono));
            } else {
                scalar = scalar.mul(&p.content);
                mono = mono.mul(&p.mono);
                remaining_num.push(p.prim);
            }
        }
        let mut num = MPoly::term(mono, scalar);
        for p in remaining_num {
            num = num.mul(&p);
        }
        let mut r = Self::normalized(
            num,
            den_parts
                .into_iter()
                .map(|d| (d.prim.mul_term(&d.mono, &d.content), 1u32)),
        );
        r.reduce();
        Ok(r)
    }

    /// Restores the representation invariants from a raw numerator and factor
    /// multiset. Factors must be nonzero.
    fn normalized(num: MPoly, factors: impl IntoIterator<Item = (MPoly, u32)>) -> RatFunc {
        let mut num = num;
        let mut den: BTreeMap<MPoly, u32> = BTreeMap::new();
        for (f, m) in factors {
            if m == 0 {
                continue;
            }
            assert!(!f.is_zero(), "zero denominator factor");
            let mc = f.mono_content();
            let shifted = if mc.is_one() {
                f
            } else {
                num = num.mul_term(&mc.pow(m as i32).inv(), &GaussianRational::from_int(1));
                f.mul_term(&mc.inv(), &GaussianRational::from_int(1))
            };
            let (content, prim) = shifted.normalize_primitive();
            if !content.is_one() {
                let adjust = pow_gaussian(&content, -(m as i32)).expect("nonzero content");
                num = num.mul_scalar(&adjust);
            }
            if prim.is_one() {
                continue;
            }
            if let Some((mono, coeff)) = prim.single_term() {
                let cinv = coeff.inv().expect("nonzero coefficient");
                let adjust = pow_gaussian(&cinv, m as i32).expect("exact power");
                num = num.mul_term(&mono.pow(m as i32).inv(), &adjust);
                continue;
            }
            *den.entry(prim).or_insert(0) += m;
        }
        if num.is_zero() {
            den.clear();
        }
        RatFunc { num, den }
    }

    /// Tries to cancel denominator factors into the numerator. Exactness is
    /// never affected; this only shrinks the representation.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<(MPoly, u32)> = std::mem::take(&mut self.den).into_iter().collect();
        for (f, mut m) in factors {
            while m > 0 {
                match try_cancel(&self.num, &f) {
                    Some(q) => {
                        self.num = q;
                        m -= 1;
                        if self.num.is_zero() {
                            self.den.clear();
                            return;
                        }
                    }
                    None => break,
                }
            }
            if m > 0 {
                self.den.insert(f, m);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// True when the stored form is already polynomial (no denominator
    /// factors and no negative exponents).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty() && !self.num.has_negative_exponents()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn den_factor_list(&self) -> Vec<(MPoly, u32)> {
        self.den.iter().map(|(f, m)| (f.clone(), *m)).collect()
    }

    /// Every variable appearing in the numerator or a denominator factor.
    pub fn vars_used(&self) -> BTreeSet<Var> {
        let mut vars = self.num.vars_used();
        for f in self.den.keys() {
            vars.extend(f.vars_used());
        }
        vars
    }

    /// Materializes `(numerator, denominator)` with the denominator's leading
    /// coefficient sign-normalized (positive real part, or zero real part and
    /// positive imaginary part).
    pub fn num_den(&self) -> (MPoly, MPoly) {
        let mut den = MPoly::one();
        for (f, m) in &self.den {
            den = den.mul(&f.pow(*m as i32).expect("nonnegative power"));
        }
        if let Some((_, c)) = den.leading() {
            let positive = if c.re.is_zero() {
                c.im.is_positive()
            } else {
                c.re.is_positive()
            };
            if !positive {
                return (self.num.neg(), den.neg());
            }
        }
        (self.num.clone(), den)
    }

    /// Forces full cancellation and returns the numerator, failing when the
    /// function is genuinely non-polynomial. Negative Laurent exponents are
    /// allowed in the result.
    pub fn to_polynomial(&self) -> Result<MPoly> {
        let mut num = self.num.clone();
        for (f, m) in &self.den {
            for _ in 0..*m {
                num = num.div_exact(f)?;
            }
        }
        Ok(num)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (f, m) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let complement = |num: &MPoly, own: &BTreeMap<MPoly, u32>| -> MPoly {
            let mut n = num.clone();
            for (f, m) in &lcm {
                let have = own.get(f).copied().unwrap_or(0);
                for _ in have..*m {
                    n = n.mul(f);
                }
            }
            n
        };
        let num = complement(&self.num, &self.den).add(&complement(&other.num, &other.den));
        let mut r = Self::normalized(num, lcm);
        r.reduce();
        r
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let num = self.num.mul(&other.num);
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        let mut r = Self::normalized(num, den);
        r.reduce();
        r
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFunc {
        if p.is_zero() {
            return RatFunc::zero();
        }
        let mut r = RatFunc {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        r.reduce();
        r
    }

    pub fn mul_scalar(&self, c: &GaussianRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    pub fn div_by_poly(&self, f: &MPoly) -> Result<RatFunc> {
        if f.is_zero() {
            return Err(AwError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(RatFunc::zero());
        }
        let mut den = self.den.clone();
        *den.entry(f.clone()).or_insert(0) += 1;
        let mut r = Self::normalized(self.num.clone(), den);
        r.reduce();
        Ok(r)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(AwError::DivisionByZero);
        }
        let mut num = MPoly::one();
        for (f, m) in &self.den {
            num = num.mul(&f.pow(*m as i32).expect("nonnegative power"));
        }
        let mut r = Self::normalized(num, [(self.num.clone(), 1)]);
        r.reduce();
        Ok(r)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let mut acc = RatFunc::one();
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

    /// The equality contract of the library: exact agreement as rational
    /// functions, decided by cross-multiplication after cancelling shared
    /// denominator factors (with a cheap generic-point pre-test).
    pub fn equal(&self, other: &RatFunc) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if let (Ok(x), Ok(y)) = (self.eval(&probe_point()), other.eval(&probe_point())) {
            if x != y {
                return false;
            }
        }
        let mut only_self = self.den.clone();
        let mut only_other = other.den.clone();
        for (f, m1) in &self.den {
            if let Some(m2) = other.den.get(f) {
                let shared = (*m1).min(*m2);
                let reduce = |map: &mut BTreeMap<MPoly, u32>| {
                    let e = map.get_mut(f).unwrap();
                    *e -= shared;
                    if *e == 0 {
                        map.remove(f);
                    }
                };
                reduce(&mut only_self);
                reduce(&mut only_other);
            }
        }
        let expand = |num: &MPoly, extra: &BTreeMap<MPoly, u32>| -> MPoly {
            let mut n = num.clone();
            for (f, m) in extra {
                for _ in 0..*m {
                    n = n.mul(f);
                }
            }
            n
        };
        expand(&self.num, &only_other) == expand(&other.num, &only_self)
    }

    /// Full numeric evaluation at a rational (possibly Gaussian) point.
    pub fn eval(&self, point: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational> {
        let mut value = self.num.eval(point)?;
        for (f, m) in &self.den {
            let fv = f.eval(point)?;
            if fv.is_zero() {
                return Err(AwError::SingularSpecialization(format!(
                    "denominator factor {} vanishes at the evaluation point",
                    f.to_display()
                )));
            }
            value = value.mul(&pow_gaussian(&fv, -(*m as i32))?);
        }
        Ok(value)
    }

    /// Simultaneous substitution of rational functions for variables.
    /// Variables absent from `bindings` are left untouched.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFunc>) -> Result<RatFunc> {
        let simple: Option<BTreeMap<Var, Option<(Mono, GaussianRational)>>> = bindings
            .iter()
            .map(|(v, r)| {
                if r.is_zero() {
                    Some((*v, None))
                } else if r.den.is_empty() {
                    r.num.single_term().map(|t| (*v, Some(t)))
                } else {
                    None
                }
            })
            .collect();
        if let Some(simple) = simple {
            let num = substitute_poly_simple(&self.num, &simple)?;
            let mut factors: Vec<(MPoly, u32)> = Vec::new();
            for (f, m) in &self.den {
                let fs = substitute_poly_simple(f, &simple)?;
                if fs.is_zero() {
                    return Err(AwError::SingularSpecialization(format!(
                        "denominator factor {} vanishes under substitution",
                        f.to_display()
                    )));
                }
                factors.push((fs, *m));
            }
            let mut r = Self::normalized(num, factors);
            r.reduce();
            return Ok(r);
        }

        let mut cache: HashMap<(Var, i32), RatFunc> = HashMap::new();
        let mut subst_poly = |p: &MPoly| -> Result<RatFunc> {
            let mut acc = RatFunc::zero();
            for (m, c) in p.iter() {
                let mut term = RatFunc::constant(c.clone());
                for (v, e) in m.vars() {
                    let pw = match cache.entry((v, e)) {
                        std::collections::hash_map::Entry::Occupied(o) => o.get().clone(),
                        std::collections::hash_map::Entry::Vacant(vac) => {
                            let val = match bindings.get(&v) {
                                Some(r) => r.pow(e).map_err(|_| {
                                    AwError::SingularSpecialization(format!(
                                        "negative power of zero binding for {v}"
                                    ))
                                })?,
                                None => RatFunc::var_pow(v, e),
                            };
                            vac.insert(val).clone()
                        }
                    };
                    term = term.mul(&pw);
                }
                acc = acc.add(&term);
            }
            Ok(acc)
        };
        let mut result = subst_poly(&self.num)?;
        for (f, m) in &self.den {
            let fs = subst_poly(f)?;
            if fs.is_zero() {
                return Err(AwError::SingularSpecialization(format!(
                    "denominator factor {} vanishes under substitution",
                    f.to_display()
                )));
            }
            result = result.mul(&fs.pow(-(*m as i32)).map_err(|_| {
                AwError::SingularSpecialization("denominator vanishes under substitution".into())
            })?);
        }
        Ok(result)
    }

    pub fn to_display(&self) -> String {
        if self.den.is_empty() {
            return self.num.to_display();
        }
        let den = self
            .den
            .iter()
            .map(|(f, m)| {
                if *m == 1 {
                    format!("({})", f.to_display())
                } else {
                    format!("({})^{}", f.to_display(), m)
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        format!("({}) / ({})", self.num.to_display(), den)
    }
}

/// Substitution where every binding is zero or a single Laurent term: purely
/// term-by-term monomial rewriting, no rational-function arithmetic.
fn substitute_poly_simple(
    p: &MPoly,
    bindings: &BTreeMap<Var, Option<(Mono, GaussianRational)>>,
) -> Result<MPoly> {
    let mut out = MPoly::zero();
    'term: for (m, c) in p.iter() {
        let mut mono = Mono::one();
        let mut coeff = c.clone();
        for (v, e) in m.vars() {
            match bindings.get(&v) {
                None => mono = mono.mul(&Mono::var(v, e)),
                Some(None) => {
                    if e < 0 {
                        return Err(AwError::SingularSpecialization(format!(
                            "negative power of zero binding for {v}"
                        )));
                    }
                    continue 'term;
                }
                Some(Some((bm, bc))) => {
                    mono = mono.mul(&bm.pow(e));
                    coeff = coeff.mul(&pow_gaussian(bc, e)?);
                }
            }
        }
        out = out.add(&MPoly::term(mono, coeff));
    }
    Ok(out)
}

fn try_cancel(num: &MPoly, f: &MPoly) -> Option<MPoly> {
    if f.num_terms() == 2 {
        return num.div_exact(f).ok();
    }
    if num.num_terms() > 4096 {
        return None;
    }
    let (nm, _) = num.leading()?;
    let (fm, _) = f.leading()?;
    let shift = nm.div(&num.mono_content());
    let fshift = fm.div(&f.mono_content());
    if !shift.divisible_by(&fshift) {
        return None;
    }
    num.div_exact(f).ok()
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_display())
    }
}

impl std::ops::Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl std::ops::Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl std::ops::Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_var(v: Var) -> MPoly {
        MPoly::var(v)
    }

    fn one_minus(v: Var, e: i32) -> MPoly {
        MPoly::one().sub(&MPoly::var_pow(v, e))
    }

    #[test]
    fn reciprocal_product_is_one() {
        let a_over_b = RatFunc::from_num_den(poly_var(Var::A), poly_var(Var::B)).unwrap();
        let b_over_a = RatFunc::from_num_den(poly_var(Var::B), poly_var(Var::A)).unwrap();
        assert!(a_over_b.mul(&b_over_a).is_one());
    }

    #[test]
    fn geometric_sum_stays_reduced() {
        let den = one_minus(Var::Q, 1);
        let one_part = RatFunc::from_num_den(MPoly::one(), den.clone()).unwrap();
        let q_part = RatFunc::from_num_den(poly_var(Var::Q), den.clone()).unwrap();
        let sum = one_part.add(&q_part);
        let expected =
            RatFunc::from_num_den(MPoly::one().add(&poly_var(Var::Q)), den.clone()).unwrap();
        assert!(sum.equal(&expected));
        let squared = RatFunc::from_num_den(
            one_minus(Var::Q, 2),
            den.mul(&den),
        )
        .unwrap();
        assert!(sum.equal(&squared));
    }

    #[test]
    fn self_quotient_is_one() {
        let f = MPoly::one().sub(
            &poly_var(Var::A)
                .mul(&poly_var(Var::B))
                .mul(&poly_var(Var::C))
                .mul(&poly_var(Var::D)),
        );
        let r = RatFunc::from_num_den(f.clone(), f).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn equality_examples() {
        let lhs = RatFunc::from_num_den(one_minus(Var::Q, 2), one_minus(Var::Q, 1)).unwrap();
        let rhs = RatFunc::from_poly(MPoly::one().add(&poly_var(Var::Q)));
        assert!(lhs.equal(&rhs));
        let a_over_b = RatFunc::from_num_den(poly_var(Var::A), poly_var(Var::B)).unwrap();
        let b_over_a = RatFunc::from_num_den(poly_var(Var::B), poly_var(Var::A)).unwrap();
        assert!(!a_over_b.equal(&b_over_a));
    }

    #[test]
    fn division_by_zero_errors() {
        assert!(matches!(
            RatFunc::one().div(&RatFunc::zero()),
            Err(AwError::DivisionByZero)
        ));
        assert!(matches!(
            RatFunc::from_num_den(MPoly::one(), MPoly::zero()),
            Err(AwError::DivisionByZero)
        ));
    }

    #[test]
    fn substitute_monomial_binding() {
        let ab = RatFunc::from_poly(poly_var(Var::A).mul(&poly_var(Var::B)));
        let q_over_a = RatFunc::from_num_den(poly_var(Var::Q), poly_var(Var::A)).unwrap();
        let mut bindings = BTreeMap::new();
        bindings.insert(Var::B, q_over_a);
        let result = ab.substitute(&bindings).unwrap();
        assert!(result.equal(&RatFunc::var(Var::Q)));
    }

    #[test]
    fn substitute_singular() {
        let r = RatFunc::from_num_den(
            MPoly::one(),
            MPoly::one().sub(&poly_var(Var::A).mul(&poly_var(Var::B))),
        )
        .unwrap();
        let mut bindings = BTreeMap::new();
        bindings.insert(
            Var::B,
            RatFunc::from_num_den(MPoly::one(), poly_var(Var::A)).unwrap(),
        );
        assert!(matches!(
            r.substitute(&bindings),
            Err(AwError::SingularSpecialization(_))
        ));
    }

    #[test]
    fn substitution_composes_on_disjoint_domains() {
        let p = RatFunc::from_num_den(
            poly_var(Var::A).add(&poly_var(Var::C)),
            one_minus(Var::Q, 1),
        )
        .unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert(Var::A, RatFunc::var(Var::B));
        let mut tau = BTreeMap::new();
        tau.insert(Var::C, RatFunc::var(Var::D));
        let two_step = p.substitute(&sigma).unwrap().substitute(&tau).unwrap();
        let mut both = BTreeMap::new();
        both.insert(Var::A, RatFunc::var(Var::B));
        both.insert(Var::C, RatFunc::var(Var::D));
        let one_step = p.substitute(&both).unwrap();
        assert!(two_step.equal(&one_step));
    }

    #[test]
    fn den_sign_normalization() {
        use num_traits::Signed;
        let r = RatFunc::from_num_den(
            MPoly::one(),
            MPoly::zero().sub(&one_minus(Var::Q, 1)),
        )
        .unwrap();
        let (num, den) = r.num_den();
        assert!(den.leading().unwrap().1.re.is_positive());
        let direct = RatFunc::from_num_den(MPoly::int(-1), one_minus(Var::Q, 1)).unwrap();
        assert!(r.equal(&direct));
        assert_eq!(num, MPoly::one());
    }

    #[test]
    fn inverse_round_trip() {
        let r = RatFunc::from_num_den(
            poly_var(Var::A).add(&MPoly::one()),
            one_minus(Var::Q, 3),
        )
        .unwrap();
        assert!(r.mul(&r.inv().unwrap()).is_one());
        assert!(r.pow(-2).unwrap().mul(&r.pow(2).unwrap()).is_one());
    }

    #[test]
    fn factor_quotient_cancels_structurally() {
        let f = one_minus(Var::Q, 1);
        let g = MPoly::one().sub(
            &poly_var(Var::A)
                .mul(&poly_var(Var::B))
                .mul(&MPoly::var_pow(Var::Q, -1)),
        );
        let r = RatFunc::from_factor_quotient(
            &[f.clone(), g.clone()],
            &[g.clone(), one_minus(Var::Q, 2)],
        )
        .unwrap();
        let direct = RatFunc::from_num_den(f, one_minus(Var::Q, 2)).unwrap();
        assert!(r.equal(&direct));
        let zero_num = RatFunc::from_factor_quotient(
            &[MPoly::one().sub(&MPoly::var_pow(Var::Q, 0))],
            &[one_minus(Var::Q, 1)],
        )
        .unwrap();
        assert!(zero_num.is_zero());
    }

    #[test]
    fn zero_substitution_requires_no_pole() {
        let laurent = RatFunc::from_poly(
            MPoly::var_pow(Var::A, -1).mul(&poly_var(Var::B)),
        );
        let mut bindings = BTreeMap::new();
        bindings.insert(Var::A, RatFunc::zero());
        assert!(matches!(
            laurent.substitute(&bindings),
            Err(AwError::SingularSpecialization(_))
        ));
        bindings.insert(Var::A, RatFunc::int(2));
        bindings.insert(Var::B, RatFunc::zero());
        assert!(laurent.substitute(&bindings).unwrap().is_zero());
    }
}
