//! Weighted Motzkin paths for the two-parameter moment sequence.
//!
//! A path of length `n` walks from height 0 back to height 0 with steps
//! up/down/horizontal, never dipping below the axis.  The *level* of an up or
//! down step is the height of its upper endpoint; the level of a horizontal
//! step is the height it travels at.  Every step carries one of two admissible
//! weights ("tags"):
//!
//! * up at level `i`:         `q^i`  or  `−1`
//! * down at level `i`:       `a·b·q^{i−1}`  or  `−1`
//! * horizontal at level `i`: `a·q^i`  or  `b·q^i`
//!
//! The total weight of all paths of length `n` equals `2^n μ_n(a,b,0,0;q)`.
//! The *restricted* family forbids an up step tagged `−1` from being followed
//! immediately by a down step tagged `−1`; a binomial transform (the
//! [`binomial_transform_check`] identity) reduces the full sum to restricted sums, and the
//! restricted sums have the closed forms [`mot_star_closed_form`] and, on the
//! curve `b = q/a`, [`mot_star_symmetric_closed_form`].

use serde::Serialize;

use crate::arith::{MPoly, RatFunc, Var};
use crate::error::{AwError, Result};
use crate::qcalc::{ballot_diff_half, binom2, QCtx};
use crate::report::VerificationReport;

/// Hard ceiling on path length for enumeration and weight sums.
pub const MAX_PATH_LENGTH: u32 = 14;
/// Hard ceiling for the binomial-transform identity check.
pub const MAX_TRANSFORM_LENGTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StepKind {
    Up,
    Down,
    Horizontal,
}

/// Which of the two admissible weights a step carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WeightTag {
    /// Up step at level `i` weighted `q^i`.
    QPow,
    /// Down step at level `i` weighted `a·b·q^{i−1}`.
    AbQPow,
    /// Up or down step weighted `−1`.
    MinusOne,
    /// Horizontal step at level `i` weighted `a·q^i`.
    AQPow,
    /// Horizontal step at level `i` weighted `b·q^i`.
    BQPow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Step {
    pub kind: StepKind,
    /// Height of the upper endpoint for up/down steps; travel height for
    /// horizontal steps.
    pub level: u32,
    pub tag: WeightTag,
}

impl Step {
    fn tag_legal(&self) -> bool {
        matches!(
            (self.kind, self.tag),
            (StepKind::Up, WeightTag::QPow)
                | (StepKind::Up, WeightTag::MinusOne)
                | (StepKind::Down, WeightTag::AbQPow)
                | (StepKind::Down, WeightTag::MinusOne)
                | (StepKind::Horizontal, WeightTag::AQPow)
                | (StepKind::Horizontal, WeightTag::BQPow)
        )
    }

    /// The step's weight monomial.
    pub fn weight(&self) -> MPoly {
        let i = self.level as i64;
        match self.tag {
            WeightTag::QPow => MPoly::monomial(&[(Var::Q, i)]),
            WeightTag::AbQPow => MPoly::monomial(&[(Var::A, 1), (Var::B, 1), (Var::Q, i - 1)]),
            WeightTag::MinusOne => MPoly::int(-1),
            WeightTag::AQPow => MPoly::monomial(&[(Var::A, 1), (Var::Q, i)]),
            WeightTag::BQPow => MPoly::monomial(&[(Var::B, 1), (Var::Q, i)]),
        }
    }
}

/// A validated weighted Motzkin path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MotzkinPath {
    steps: Vec<Step>,
}

impl MotzkinPath {
    /// Validates heights, levels and tag legality.
    pub fn new(steps: Vec<Step>) -> Result<MotzkinPath> {
        let mut height: u32 = 0;
        for (j, s) in steps.iter().enumerate() {
            if !s.tag_legal() {
                return Err(AwError::InvalidStructure(format!(
                    "step {j}: tag {:?} not admissible for {:?}",
                    s.tag, s.kind
                )));
            }
            let expected = match s.kind {
                StepKind::Up => {
                    height += 1;
                    height
                }
                StepKind::Down => {
                    if height == 0 {
                        return Err(AwError::InvalidStructure(format!(
                            "step {j}: path dips below the axis"
                        )));
                    }
                    let lvl = height;
                    height -= 1;
                    lvl
                }
                StepKind::Horizontal => height,
            };
            if s.level != expected {
                return Err(AwError::InvalidStructure(format!(
                    "step {j}: level {} does not match height profile (expected {expected})",
                    s.level
                )));
            }
        }
        if height != 0 {
            return Err(AwError::InvalidStructure(format!(
                "path ends at height {height}, not 0"
            )));
        }
        Ok(MotzkinPath { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// True when no up step tagged `−1` is immediately followed by a down
    /// step tagged `−1`.
    pub fn is_restricted(&self) -> bool {
        self.steps.windows(2).all(|w| {
            !(w[0].kind == StepKind::Up
                && w[0].tag == WeightTag::MinusOne
                && w[1].kind == StepKind::Down
                && w[1].tag == WeightTag::MinusOne)
        })
    }

    /// Product of the step weights: a signed Laurent monomial in `a,b,q`.
    pub fn weight(&self) -> MPoly {
        let mut w = MPoly::one();
        for s in &self.steps {
            w = w.mul(&s.weight());
        }
        w
    }
}

fn check_length(n: u32, cap: u32, what: &str) -> Result<()> {
    if n > cap {
        return Err(AwError::InvalidParameter(format!(
            "{what} supports length ≤ {cap}, got {n}"
        )));
    }
    Ok(())
}

/// All weighted Motzkin paths of length `n`; `restricted` drops the paths
/// containing an up `−1` step immediately followed by a down `−1` step.
///
/// The number of paths grows as `2^n·M_n`, so only small `n` are practical to
/// materialise; lengths beyond [`MAX_PATH_LENGTH`] are rejected.
pub fn enumerate_motzkin(n: u32, restricted: bool) -> Result<Vec<MotzkinPath>> {
    check_length(n, MAX_PATH_LENGTH, "path enumeration")?;
    let mut out = Vec::new();
    let mut prefix: Vec<Step> = Vec::with_capacity(n as usize);
    fn rec(
        remaining: u32,
        height: u32,
        prefix: &mut Vec<Step>,
        restricted: bool,
        out: &mut Vec<MotzkinPath>,
    ) {
        if remaining == 0 {
            if height == 0 {
                out.push(MotzkinPath {
                    steps: prefix.clone(),
                });
            }
            return;
        }
        if height > remaining {
            return; // cannot return to the axis in time
        }
        let after_minus_up = matches!(
            prefix.last(),
            Some(Step {
                kind: StepKind::Up,
                tag: WeightTag::MinusOne,
                ..
            })
        );
        let mut push = |kind: StepKind, level: u32, tag: WeightTag, h: u32| {
            prefix.push(Step { kind, level, tag });
            rec(remaining - 1, h, prefix, restricted, out);
            prefix.pop();
        };
        push(StepKind::Up, height + 1, WeightTag::QPow, height + 1);
        push(StepKind::Up, height + 1, WeightTag::MinusOne, height + 1);
        if height > 0 {
            push(StepKind::Down, height, WeightTag::AbQPow, height - 1);
            if !(restricted && after_minus_up) {
                push(StepKind::Down, height, WeightTag::MinusOne, height - 1);
            }
        }
        push(StepKind::Horizontal, height, WeightTag::AQPow, height);
        push(StepKind::Horizontal, height, WeightTag::BQPow, height);
    }
    rec(n, 0, &mut prefix, restricted, &mut out);
    Ok(out)
}

/// Total weight of all length-`n` paths, summed without materialising them:
/// the result equals `2^n μ_n(a,b,0,0;q)`.
///
/// The sum folds over heights step by step, combining the two tags of each
/// step kind; the fold is cross-checked against explicit enumeration in the
/// test suite.
pub fn motzkin_moment(n: u32) -> Result<RatFunc> {
    check_length(n, MAX_PATH_LENGTH, "path weight sum")?;
    let nn = n as usize;
    // layer[h] = total weight of length-j prefixes ending at height h
    let mut layer: Vec<MPoly> = vec![MPoly::zero(); nn + 2];
    layer[0] = MPoly::one();
    for j in 0..nn {
        let mut next: Vec<MPoly> = vec![MPoly::zero(); nn + 2];
        for (h, w) in layer.iter().enumerate().take(j + 1) {
            if w.is_zero() {
                continue;
            }
            let hh = h as i64;
            let up = MPoly::monomial(&[(Var::Q, hh + 1)]).sub(&MPoly::one());
            next[h + 1] = next[h + 1].add(&w.mul(&up));
            if h > 0 {
                let down =
                    MPoly::monomial(&[(Var::A, 1), (Var::B, 1), (Var::Q, hh - 1)]).sub(&MPoly::one());
                next[h - 1] = next[h - 1].add(&w.mul(&down));
            }
            let horiz = MPoly::monomial(&[(Var::A, 1), (Var::Q, hh)])
                .add(&MPoly::monomial(&[(Var::B, 1), (Var::Q, hh)]));
            next[h] = next[h].add(&w.mul(&horiz));
        }
        layer = next;
    }
    Ok(RatFunc::from_poly(layer[0].clone()))
}

/// Total weight of the restricted length-`k` paths, summed by the same
/// height-indexed fold with an extra state bit recording whether the previous
/// step was an up step tagged `−1`.
pub fn mot_star_sum(k: u32) -> Result<MPoly> {
    check_length(k, MAX_PATH_LENGTH, "restricted path weight sum")?;
    let kk = k as usize;
    // layer[h][flag] with flag = 1 when the previous step was up tagged −1
    let mut layer: Vec<[MPoly; 2]> = vec![[MPoly::zero(), MPoly::zero()]; kk + 2];
    layer[0][0] = MPoly::one();
    for j in 0..kk {
        let mut next: Vec<[MPoly; 2]> = vec![[MPoly::zero(), MPoly::zero()]; kk + 2];
        for h in 0..=j {
            let hh = h as i64;
            for flag in 0..2 {
                let w = layer[h][flag].clone();
                if w.is_zero() {
                    continue;
                }
                // up, charged
                let q_up = MPoly::monomial(&[(Var::Q, hh + 1)]);
                next[h + 1][0] = next[h + 1][0].add(&w.mul(&q_up));
                // up, −1
                next[h + 1][1] = next[h + 1][1].sub(&w);
                if h > 0 {
                    // down, charged
                    let ab = MPoly::monomial(&[(Var::A, 1), (Var::B, 1), (Var::Q, hh - 1)]);
                    next[h - 1][0] = next[h - 1][0].add(&w.mul(&ab));
                    // down, −1: forbidden right after an up −1
                    if flag == 0 {
                        next[h - 1][0] = next[h - 1][0].sub(&w);
                    }
                }
                let horiz = MPoly::monomial(&[(Var::A, 1), (Var::Q, hh)])
                    .add(&MPoly::monomial(&[(Var::B, 1), (Var::Q, hh)]));
                next[h][0] = next[h][0].add(&w.mul(&horiz));
            }
        }
        layer = next;
    }
    Ok(layer[0][0].add(&layer[0][1]))
}

/// Closed form for the restricted weight sum:
/// `Σ_{u+v+2t=k} a^u b^v (−1)^t q^{t(t+1)/2} [u+v+t; u,v,t]_q`.
pub fn mot_star_closed_form(k: u32) -> Result<MPoly> {
    let ctx = QCtx::q();
    let mut table = ctx.binom_table();
    let k = k as i64;
    let mut total = MPoly::zero();
    for t in 0..=k / 2 {
        for u in 0..=k - 2 * t {
            let v = k - 2 * t - u;
            let coeff = table.multinomial(u + v + t, &[u, v, t])?;
            let mono = MPoly::monomial(&[(Var::A, u), (Var::B, v), (Var::Q, binom2(t + 1))]);
            let signed = if t % 2 == 0 {
                mono
            } else {
                mono.mul_scalar(&crate::arith::GaussianRational::from_int(-1))
            };
            total = total.add(&signed.mul(&coeff));
        }
    }
    Ok(total)
}

/// Closed form for the restricted weight sum on the curve `b = q/a`:
/// `(q/a)^k Σ_{i=0}^k a^{2i} q^{i(k−i−1)}`, a Laurent polynomial in `a`.
pub fn mot_star_symmetric_closed_form(k: u32) -> MPoly {
    let k = k as i64;
    let mut total = MPoly::zero();
    for i in 0..=k {
        total = total.add(&MPoly::monomial(&[
            (Var::A, 2 * i - k),
            (Var::Q, k + i * (k - i - 1)),
        ]));
    }
    total
}

/// Checks the binomial transform between the full and restricted weight sums:
/// `Σ_{Mot_n} wt = Σ_k (C(n,(n−k)/2) − C(n,(n−k)/2−1)) Σ_{Mot*_k} wt`.
pub fn binomial_transform_check(n: u32) -> Result<VerificationReport> {
    check_length(n, MAX_TRANSFORM_LENGTH, "binomial-transform check")?;
    let id = format!("motzkin/binomial-transform/n={n}");
    let lhs = motzkin_moment(n)?;
    let mut rhs = MPoly::zero();
    for k in (n % 2..=n).step_by(2) {
        let c = ballot_diff_half(n as i64, k as i64);
        if c == 0 {
            continue;
        }
        rhs = rhs.add(&mot_star_sum(k)?.mul_scalar(&crate::arith::GaussianRational::from_int(c)));
    }
    let rhs = RatFunc::from_poly(rhs);
    Ok(VerificationReport::check(&id, lhs.equal(&rhs), || {
        format!("lhs {} != rhs {}", lhs.to_display(), rhs.to_display())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{aw_two_param_spec, moment_table};

    fn two_param_scaled(n_max: u32) -> Vec<RatFunc> {
        let table = moment_table(&aw_two_param_spec(), n_max).unwrap();
        (0..=n_max as usize)
            .map(|n| {
                table
                    .moment(n)
                    .mul(&RatFunc::int(1 << n))
            })
            .collect()
    }

    #[test]
    fn enumeration_counts_match_weighted_motzkin_numbers() {
        // 2^n · M_n with M = 1, 1, 2, 4, 9, 21, 51
        let expected = [1usize, 2, 8, 32, 144, 672, 3264];
        for (n, want) in expected.iter().enumerate() {
            let paths = enumerate_motzkin(n as u32, false).unwrap();
            assert_eq!(paths.len(), *want, "n={n}");
            for p in &paths {
                // round-trips through the validating constructor
                MotzkinPath::new(p.steps().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn restricted_enumeration_is_a_strict_subfamily() {
        for n in 0..=6u32 {
            let all = enumerate_motzkin(n, false).unwrap();
            let restricted = enumerate_motzkin(n, true).unwrap();
            let filtered: Vec<_> = all.iter().filter(|p| p.is_restricted()).collect();
            assert_eq!(restricted.len(), filtered.len(), "n={n}");
            if n >= 2 {
                assert!(restricted.len() < all.len(), "n={n}");
            }
        }
    }

    #[test]
    fn weight_sums_match_explicit_enumeration() {
        for n in 0..=7u32 {
            let full: MPoly = enumerate_motzkin(n, false)
                .unwrap()
                .iter()
                .fold(MPoly::zero(), |acc, p| acc.add(&p.weight()));
            assert!(motzkin_moment(n).unwrap().equal(&RatFunc::from_poly(full)), "full n={n}");

            let restricted: MPoly = enumerate_motzkin(n, true)
                .unwrap()
                .iter()
                .fold(MPoly::zero(), |acc, p| acc.add(&p.weight()));
            assert_eq!(mot_star_sum(n).unwrap(), restricted, "restricted n={n}");
        }
    }

    #[test]
    fn small_weight_sums_are_the_expected_polynomials() {
        use Var::{A, B, Q};
        // n=1: a + b
        let n1 = MPoly::var(A).add(&MPoly::var(B));
        assert!(motzkin_moment(1).unwrap().equal(&RatFunc::from_poly(n1)));
        // n=2 unrestricted: (a+b)^2 + (1−q)(1−ab)
        let ab = MPoly::var(A).add(&MPoly::var(B));
        let n2 = ab.mul(&ab).add(
            &MPoly::one_minus_monomial(&[(Q, 1)]).mul(&MPoly::one_minus_monomial(&[(A, 1), (B, 1)])),
        );
        assert!(motzkin_moment(2).unwrap().equal(&RatFunc::from_poly(n2)));
        // n=2 restricted: a² + ab(1+q) + b² − q
        let n2r = MPoly::monomial(&[(A, 2)])
            .add(&MPoly::monomial(&[(A, 1), (B, 1)]).mul(&MPoly::one_plus_monomial(&[(Q, 1)])))
            .add(&MPoly::monomial(&[(B, 2)]))
            .sub(&MPoly::var(Q));
        assert_eq!(mot_star_sum(2).unwrap(), n2r);
    }

    #[test]
    fn weight_sum_equals_scaled_two_parameter_moments() {
        let scaled = two_param_scaled(10);
        for n in 0..=10u32 {
            assert!(
                motzkin_moment(n).unwrap().equal(&scaled[n as usize]),
                "n={n}"
            );
        }
    }

    #[test]
    fn restricted_sum_matches_closed_form() {
        for k in 0..=10u32 {
            assert_eq!(mot_star_sum(k).unwrap(), mot_star_closed_form(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn restricted_sum_on_symmetric_curve_matches_closed_form() {
        use std::collections::BTreeMap;
        let q_over_a = RatFunc::var(Var::Q).div(&RatFunc::var(Var::A)).unwrap();
        for k in 0..=10u32 {
            let sum = RatFunc::from_poly(mot_star_sum(k).unwrap());
            let lhs = sum
                .substitute(&BTreeMap::from([(Var::B, q_over_a.clone())]))
                .unwrap();
            let rhs = RatFunc::from_poly(mot_star_symmetric_closed_form(k));
            assert!(lhs.equal(&rhs), "k={k}");
        }
    }

    #[test]
    fn binomial_transform_holds() {
        for n in 0..=10u32 {
            let report = binomial_transform_check(n).unwrap();
            assert!(report.is_pass(), "n={n}: {:?}", report);
        }
    }

    #[test]
    fn length_caps_are_enforced() {
        assert!(enumerate_motzkin(15, false).is_err());
        assert!(motzkin_moment(15).is_err());
        assert!(mot_star_sum(15).is_err());
        assert!(binomial_transform_check(13).is_err());
    }

    #[test]
    fn invalid_paths_are_rejected() {
        // wrong level
        let bad_level = vec![
            Step { kind: StepKind::Up, level: 2, tag: WeightTag::QPow },
            Step { kind: StepKind::Down, level: 1, tag: WeightTag::AbQPow },
        ];
        assert!(MotzkinPath::new(bad_level).is_err());
        // illegal tag for the kind
        let bad_tag = vec![Step { kind: StepKind::Horizontal, level: 0, tag: WeightTag::QPow }];
        assert!(MotzkinPath::new(bad_tag).is_err());
        // dips below the axis
        let dip = vec![Step { kind: StepKind::Down, level: 0, tag: WeightTag::AbQPow }];
        assert!(MotzkinPath::new(dip).is_err());
        // does not return to the axis
        let open = vec![Step { kind: StepKind::Up, level: 1, tag: WeightTag::QPow }];
        assert!(MotzkinPath::new(open).is_err());
    }
}
