use serde::{Deserialize, Serialize};

use super::var::{Var, ALL_VARS, NUM_VARS};

/// Hard bound on the absolute value of any single exponent. A computation
/// that pushes past it aborts with a clear panic instead of silently
/// wrapping; no formula in this library comes anywhere near the bound.
pub const MAX_EXPONENT: i32 = 1_000_000;

/// A Laurent monomial: an integer exponent for each variable.
///
/// Negative exponents are first-class so that quantities like `1/a` and
/// `q^{-1}` stay exact monomials rather than forcing a denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mono(pub [i32; NUM_VARS]);

fn checked(e: i64) -> i32 {
    assert!(
        e.abs() <= MAX_EXPONENT as i64,
        "exponent overflow: |{e}| exceeds maximum {MAX_EXPONENT}"
    );
    e as i32
}

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NUM_VARS])
    }

    pub fn var(v: Var, exp: i32) -> Mono {
        checked(exp as i64);
        let mut e = [0; NUM_VARS];
        e[v.index()] = exp;
        Mono(e)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0i32; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = checked(self.0[i] as i64 + other.0[i] as i64);
        }
        Mono(e)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let mut e = [0i32; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = checked(self.0[i] as i64 - other.0[i] as i64);
        }
        Mono(e)
    }

    pub fn inv(&self) -> Mono {
        Mono::one().div(self)
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut e = [0i32; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = checked(self.0[i] as i64 * k as i64);
        }
        Mono(e)
    }

    /// True when every exponent of `other` is at most the matching exponent
    /// here, i.e. `other` divides `self` in the ordinary polynomial ring.
    pub fn divisible_by(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// Componentwise minimum.
    pub fn min_with(&self, other: &Mono) -> Mono {
        let mut e = [0i32; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = self.0[i].min(other.0[i]);
        }
        Mono(e)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        ALL_VARS
            .iter()
            .zip(self.0.iter())
            .filter(|(_, &e)| e != 0)
            .map(|(&v, &e)| (v, e))
    }

    pub fn to_display(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (v, e) in self.vars() {
            if e == 1 {
                parts.push(v.name().to_string());
            } else {
                parts.push(format!("{}^{}", v.name(), e));
            }
        }
        parts.join("*")
    }
}

/// Graded lexicographic order: total degree first, then lexicographic in the
/// canonical variable order. This makes larger monomials compare greater and
/// gives every polynomial a well-defined leading term.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Mono::var(Var::A, 1);
        let b = Mono::var(Var::B, 1);
        let a2 = Mono::var(Var::A, 2);
        let one = Mono::one();
        assert!(a > b);
        assert!(a2 > a);
        assert!(a2 > b);
        assert!(one < b);
        let ab = a.mul(&b);
        assert!(a2 > ab);
    }

    #[test]
    fn laurent_division() {
        let q = Mono::var(Var::Q, 1);
        let qinv = Mono::var(Var::Q, -1);
        assert_eq!(q.mul(&qinv), Mono::one());
        assert_eq!(Mono::one().div(&q), qinv);
        assert_eq!(q.inv(), qinv);
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_guard_mul() {
        let big = Mono::var(Var::Q, MAX_EXPONENT);
        let _ = big.mul(&Mono::var(Var::Q, 1));
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_guard_pow() {
        let big = Mono::var(Var::Q, MAX_EXPONENT);
        let _ = big.pow(2);
    }

    #[test]
    fn display() {
        let m = Mono::var(Var::A, 2).mul(&Mono::var(Var::Q, -1));
        assert_eq!(m.to_display(), "a^2*q^-1");
        assert_eq!(Mono::one().to_display(), "1");
    }
}
