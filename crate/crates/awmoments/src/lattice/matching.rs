//! Partial matchings of a linearly ordered point set with the crossing
//! statistic.
//!
//! A matching of `{1,…,n}` is a set of disjoint edges `(i,j)` with `i<j`; the
//! unmatched points are its fixed points.  A crossing is either a pair of
//! edges `(i₁,j₁)`, `(i₂,j₂)` with `i₁<i₂<j₁<j₂` or a pair of an edge `(i,j)`
//! and a fixed point strictly inside its span.  `P(n,m)` collects `q^cro`
//! over the matchings with exactly `m` fixed points; multiplied by
//! `(1−q)^{(n−m)/2}` it matches the ballot-style alternating sum computed by
//! [`crate::formulas::op_bar`].

use serde::Serialize;

use crate::arith::{MPoly, Var};
use crate::error::{AwError, Result};

/// Ceiling on the number of points for matching enumeration.
pub const MAX_MATCHING_POINTS: i64 = 12;

/// A partial matching of `{1,…,n}`; edges sorted by smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Matching {
    n: i64,
    edges: Vec<(i64, i64)>,
    fixed: Vec<i64>,
}

impl Matching {
    pub fn new(n: i64, mut edges: Vec<(i64, i64)>) -> Result<Matching> {
        if n < 0 {
            return Err(AwError::InvalidParameter(
                "matching size must be nonnegative".to_string(),
            ));
        }
        let mut seen = vec![false; n as usize + 1];
        for &(i, j) in &edges {
            if i < 1 || j > n || i >= j {
                return Err(AwError::InvalidStructure(format!(
                    "edge ({i},{j}) is not an increasing pair inside 1..={n}"
                )));
            }
            for p in [i, j] {
                if seen[p as usize] {
                    return Err(AwError::InvalidStructure(format!(
                        "point {p} is used by more than one edge"
                    )));
                }
                seen[p as usize] = true;
            }
        }
        edges.sort_unstable();
        let fixed = (1..=n).filter(|&p| !seen[p as usize]).collect();
        Ok(Matching { n, edges, fixed })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    pub fn fixed_points(&self) -> &[i64] {
        &self.fixed
    }
}

/// Number of crossings: edge pairs interleaving as `i₁<i₂<j₁<j₂` plus
/// (edge, fixed point) pairs with the fixed point strictly inside the span.
pub fn crossing(matching: &Matching) -> i64 {
    let edges = matching.edges();
    let mut cro = 0i64;
    for (x, &(i1, j1)) in edges.iter().enumerate() {
        for &(i2, j2) in &edges[x + 1..] {
            // edges are sorted, so i1 < i2 always
            if i2 < j1 && j1 < j2 {
                cro += 1;
            }
        }
        for &f in matching.fixed_points() {
            if i1 < f && f < j1 {
                cro += 1;
            }
        }
    }
    cro
}

/// All matchings of `{1,…,n}`, optionally restricted to a fixed-point count.
pub fn enumerate_matchings(n: i64, fixed_points: Option<i64>) -> Result<Vec<Matching>> {
    if n < 0 || n > MAX_MATCHING_POINTS {
        return Err(AwError::InvalidParameter(format!(
            "matching enumeration supports 0 ≤ n ≤ {MAX_MATCHING_POINTS}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut used = vec![false; n as usize + 1];
    let mut edges: Vec<(i64, i64)> = Vec::new();
    fn rec(
        n: i64,
        want_fixed: Option<i64>,
        fixed_so_far: i64,
        used: &mut Vec<bool>,
        edges: &mut Vec<(i64, i64)>,
        out: &mut Vec<Matching>,
    ) {
        let Some(i) = (1..=n).find(|&p| !used[p as usize]) else {
            if want_fixed.is_none_or(|f| f == fixed_so_far) {
                out.push(Matching::new(n, edges.clone()).expect("generated matching is valid"));
            }
            return;
        };
        used[i as usize] = true;
        // leave i fixed
        if want_fixed.is_none_or(|f| fixed_so_far < f) {
            rec(n, want_fixed, fixed_so_far + 1, used, edges, out);
        }
        // or pair it with a later free point
        for j in i + 1..=n {
            if !used[j as usize] {
                used[j as usize] = true;
                edges.push((i, j));
                rec(n, want_fixed, fixed_so_far, used, edges, out);
                edges.pop();
                used[j as usize] = false;
            }
        }
        used[i as usize] = false;
    }
    rec(n, fixed_points, 0, &mut used, &mut edges, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// `P(n,m) = Σ q^cro` over matchings of `{1,…,n}` with `m` fixed points;
/// zero when `m` is out of range or `n−m` is odd.
pub fn p_poly(n: i64, m: i64) -> Result<MPoly> {
    if n < 0 || n > MAX_MATCHING_POINTS {
        return Err(AwError::InvalidParameter(format!(
            "crossing polynomial supports 0 ≤ n ≤ {MAX_MATCHING_POINTS}, got {n}"
        )));
    }
    if m < 0 || m > n || (n - m).rem_euclid(2) == 1 {
        return Ok(MPoly::zero());
    }
    let mut total = MPoly::zero();
    for matching in enumerate_matchings(n, Some(m))? {
        total = total.add(&MPoly::var_pow(Var::Q, crossing(&matching) as i32));
    }
    Ok(total)
}

/// Crossing generating function for complete matchings on five consecutive
/// blocks of points `S₀,S₁,…,S₄` (in this left-to-right order) where an edge
/// may join two points of the same block only inside `S₀`.
pub fn cm_genfunc(n0: i64, n1: i64, n2: i64, n3: i64, n4: i64) -> Result<MPoly> {
    let sizes = [n0, n1, n2, n3, n4];
    if sizes.iter().any(|&s| s < 0) {
        return Err(AwError::InvalidParameter(
            "block sizes must be nonnegative".to_string(),
        ));
    }
    let total: i64 = sizes.iter().sum();
    if total > MAX_MATCHING_POINTS {
        return Err(AwError::InvalidParameter(format!(
            "block matching enumeration supports at most {MAX_MATCHING_POINTS} points, got {total}"
        )));
    }
    if total % 2 == 1 {
        return Ok(MPoly::zero());
    }
    // block[p] = which block point p belongs to, 0-indexed points
    let mut block = Vec::with_capacity(total as usize);
    for (idx, &s) in sizes.iter().enumerate() {
        block.extend(std::iter::repeat_n(idx, s as usize));
    }
    let mut out = MPoly::zero();
    let mut used = vec![false; total as usize];
    let mut edges: Vec<(i64, i64)> = Vec::new();
    fn rec(
        total: i64,
        block: &[usize],
        used: &mut Vec<bool>,
        edges: &mut Vec<(i64, i64)>,
        out: &mut MPoly,
    ) {
        let Some(i) = (0..total).find(|&p| !used[p as usize]) else {
            let m = Matching::new(
                total,
                edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect(),
            )
            .expect("generated matching is valid");
            *out = out.add(&MPoly::var_pow(Var::Q, crossing(&m) as i32));
            return;
        };
        used[i as usize] = true;
        for j in i + 1..total {
            if used[j as usize] {
                continue;
            }
            if block[i as usize] == block[j as usize] && block[i as usize] != 0 {
                continue;
            }
            used[j as usize] = true;
            edges.push((i, j));
            rec(total, block, used, edges, out);
            edges.pop();
            used[j as usize] = false;
        }
        used[i as usize] = false;
    }
    rec(total, &block, &mut used, &mut edges, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {

    use super::*;
    use crate::arith::RatFunc;
    use crate::formulas::op_bar;
    use crate::oracle::{aw_spec, aw_two_param_spec, moment_table};
    use crate::qcalc::QCtx;

    #[test]
    fn enumeration_counts_are_involution_numbers() {
        // 1, 1, 2, 4, 10, 26, 76, 232
        let expected = [1usize, 1, 2, 4, 10, 26, 76, 232];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_matchings(n as i64, None).unwrap().len(), count);
        }
        // the fixed-point filter partitions the full set
        for n in 0..=7i64 {
            let total: usize = (0..=n)
                .map(|m| enumerate_matchings(n, Some(m)).unwrap().len())
                .sum();
            assert_eq!(total, enumerate_matchings(n, None).unwrap().len());
        }
        assert!(enumerate_matchings(13, None).is_err());
    }

    #[test]
    fn crossing_counts_interleavings_and_trapped_fixed_points() {
        // edges 1–3 and 2–4 cross once
        let m = Matching::new(4, vec![(1, 3), (2, 4)]).unwrap();
        assert_eq!(crossing(&m), 1);
        // nested edges do not cross
        let m = Matching::new(4, vec![(1, 4), (2, 3)]).unwrap();
        assert_eq!(crossing(&m), 0);
        // a fixed point inside a span crosses the edge
        let m = Matching::new(3, vec![(1, 3)]).unwrap();
        assert_eq!(crossing(&m), 1);
        let m = Matching::new(3, vec![(2, 3)]).unwrap();
        assert_eq!(crossing(&m), 0);
        // duplicate endpoint rejected
        assert!(Matching::new(3, vec![(1, 2), (2, 3)]).is_err());
    }

    #[test]
    fn crossing_polynomial_small_values() {
        let q = MPoly::var(Var::Q);
        // three matchings of 3 points with one fixed point: cro = 0, 0, 1...
        // {12,3}:0  {13,2}:1  {1,23}:0 → 2 + q
        assert_eq!(p_poly(3, 1).unwrap(), MPoly::int(2).add(&q));
        for n in 0..=8i64 {
            assert_eq!(p_poly(n, n).unwrap(), MPoly::one(), "n={n}");
            if n >= 1 {
                assert_eq!(p_poly(n, n - 1).unwrap(), MPoly::zero(), "parity n={n}");
            }
        }
        assert_eq!(p_poly(4, -1).unwrap(), MPoly::zero());
    }

    #[test]
    fn scaled_crossing_polynomial_matches_ballot_alternating_sum() {
        let one_minus_q = MPoly::one_minus_monomial(&[(Var::Q, 1)]);
        for n in 0..=10i64 {
            for m in 0..=n {
                let mut lhs = p_poly(n, m).unwrap();
                if (n - m) % 2 == 0 {
                    for _ in 0..(n - m) / 2 {
                        lhs = lhs.mul(&one_minus_q);
                    }
                }
                assert_eq!(lhs, op_bar(n, m).unwrap(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn block_matching_generating_function_sanity() {
        let q = MPoly::var(Var::Q);
        assert_eq!(cm_genfunc(0, 1, 1, 0, 0).unwrap(), MPoly::one());
        assert_eq!(cm_genfunc(2, 0, 0, 0, 0).unwrap(), MPoly::one());
        assert_eq!(cm_genfunc(0, 2, 0, 0, 0).unwrap(), MPoly::zero());
        assert_eq!(cm_genfunc(0, 1, 1, 1, 1).unwrap(), MPoly::int(2).add(&q));
        assert_eq!(cm_genfunc(0, 1, 0, 0, 0).unwrap(), MPoly::zero());
        for n in 0..=8i64 {
            assert_eq!(
                cm_genfunc(n, 0, 0, 0, 0).unwrap(),
                p_poly(n, 0).unwrap(),
                "n={n}"
            );
        }
    }

    /// Σ over u,v of aᵘbᵛ·binom_q(u+v,u)·(1−q)^{(n−u−v)/2}·P(n,u+v) equals the
    /// two-parameter moment scaled by 2ⁿ.
    #[test]
    fn two_parameter_moments_rebuild_from_crossing_polynomials() {
        let spec = aw_two_param_spec();
        let table = moment_table(&spec, 8).unwrap();
        let ctx = QCtx::q();
        let mut binoms = ctx.binom_table();
        let one_minus_q = MPoly::one_minus_monomial(&[(Var::Q, 1)]);
        for n in 0..=8i64 {
            let mut total = MPoly::zero();
            for u in 0..=n {
                for v in 0..=(n - u) {
                    if (n - u - v) % 2 == 1 {
                        continue;
                    }
                    let mut term = MPoly::monomial(&[(Var::A, u), (Var::B, v)])
                        .mul(&binoms.get(u + v, u))
                        .mul(&p_poly(n, u + v).unwrap());
                    for _ in 0..(n - u - v) / 2 {
                        term = term.mul(&one_minus_q);
                    }
                    total = total.add(&term);
                }
            }
            let lhs = RatFunc::from_poly(total);
            let rhs = table.moment(n as usize).mul(&RatFunc::int(1 << n));
            assert!(lhs.equal(&rhs), "n={n}");
        }
    }

    /// The four-parameter moment scaled by 2ⁿ expands over (α,β,γ,δ) with
    /// crossing polynomials, a q-multinomial and Pochhammer corrections.
    #[test]
    fn four_parameter_moments_rebuild_from_crossing_polynomials() {
        use Var::{A, B, C, D};
        let spec = aw_spec();
        let table = moment_table(&spec, 3).unwrap();
        let ctx = QCtx::q();
        let mut binoms = ctx.binom_table();
        let one_minus_q = MPoly::one_minus_monomial(&[(Var::Q, 1)]);
        let ad = MPoly::monomial(&[(A, 1), (D, 1)]);
        let ac = MPoly::monomial(&[(A, 1), (C, 1)]);
        let bd = MPoly::monomial(&[(B, 1), (D, 1)]);
        let abcd = MPoly::monomial(&[(A, 1), (B, 1), (C, 1), (D, 1)]);
        for n in 0..=3i64 {
            let mut total = RatFunc::zero();
            for al in 0..=n {
                for be in 0..=(n - al) {
                    for ga in 0..=(n - al - be) {
                        for de in 0..=(n - al - be - ga) {
                            let k = al + be + ga + de;
                            if (n - k) % 2 == 1 {
                                continue;
                            }
                            let mut num = MPoly::monomial(&[(A, al), (B, be), (C, ga), (D, de)])
                                .mul(&p_poly(n, k).unwrap())
                                .mul(&binoms.multinomial(k, &[al, be, ga, de]).unwrap())
                                .mul(&ctx.q_pochhammer_poly(&ad, be + ga).unwrap())
                                .mul(&ctx.q_pochhammer_poly(&ac, be).unwrap())
                                .mul(&ctx.q_pochhammer_poly(&bd, ga).unwrap());
                            for _ in 0..(n - k) / 2 {
                                num = num.mul(&one_minus_q);
                            }
                            let den = ctx.q_pochhammer_poly(&abcd, be + ga).unwrap();
                            total = total.add(&RatFunc::from_num_den(num, den).unwrap());
                        }
                    }
                }
            }
            let lhs = total;
            let rhs = table.moment(n as usize).mul(&RatFunc::int(1 << n));
            assert!(lhs.equal(&rhs), "n={n}");
        }
    }

    #[test]
    fn substituting_fixed_points_recovers_moment_weights() {
        // sanity: a single edge inside S₀ between blocks contributes q^cro as
        // arranged; proportions checked against direct enumeration
        let direct = {
            let mut total = MPoly::zero();
            for m in enumerate_matchings(4, Some(0)).unwrap() {
                total = total.add(&MPoly::var_pow(Var::Q, crossing(&m) as i32));
            }
            total
        };
        assert_eq!(cm_genfunc(4, 0, 0, 0, 0).unwrap(), direct);
        let serialized = serde_json::to_string(
            &Matching::new(4, vec![(1, 3), (2, 4)]).unwrap(),
        )
        .unwrap();
        assert!(serialized.contains("\"edges\""));
    }
}
