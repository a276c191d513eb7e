//! Doubly striped skew shapes.
//!
//! A shape is a pair of partitions `μ ⊆ λ` inside an `m×n` box together with
//! two families of diagonal stripes drawn on the skew diagram `λ/μ`:
//!
//! * a **white** stripe is a maximal run of diagonally consecutive cells whose
//!   top cell hugs the inner boundary (`(r, μ_r+1)`) and whose bottom cell has
//!   no shape cell directly below it;
//! * a **black** stripe is a maximal run whose bottom cell hugs the outer
//!   boundary (`(r, λ_r)`) and whose top cell has no shape cell directly
//!   above it.
//!
//! Both boundary conditions pin a stripe completely, so a row carries at most
//! one white and at most one black candidate; the two families may overlap but
//! may not contain an identical stripe.  The weight
//!
//! ```text
//! wt(S) = (−1)^{|W|+|B|} a^{m−|W|} b^{n−|W|} q^{|λ|−|μ|−‖W‖+|W|−‖B‖}
//! ```
//!
//! (`‖·‖` = total number of cells) matches the weight of the restricted
//! Motzkin path corresponding to `S` under the bijection [`rho`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith::{GaussianRational, MPoly, RatFunc, Var};
use crate::error::{AwError, Result};
use crate::lattice::motzkin::{MotzkinPath, Step, StepKind, WeightTag};

/// `(row, column)`, both 1-indexed from the top-left corner.
pub type Cell = (i64, i64);

/// Ceiling on `m+n` for unconstrained shape enumeration.
pub const MAX_DSS_SIZE: i64 = 9;
/// Ceiling on `m+n` for the restricted family with empty inner shape and no
/// black stripes (exponentially smaller, so a larger cap is practical).
pub const MAX_PLAIN_DSS_SIZE: i64 = 12;

/// A run of diagonally consecutive cells, stored top cell first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Stripe {
    cells: Vec<Cell>,
}

impl Stripe {
    pub fn new(cells: Vec<Cell>) -> Result<Stripe> {
        if cells.is_empty() {
            return Err(AwError::InvalidStructure(
                "stripe must contain at least one cell".to_string(),
            ));
        }
        for w in cells.windows(2) {
            if w[1] != (w[0].0 + 1, w[0].1 + 1) {
                return Err(AwError::InvalidStructure(format!(
                    "stripe cells must be diagonally consecutive: {:?} then {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Stripe { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn top(&self) -> Cell {
        self.cells[0]
    }

    pub fn bottom(&self) -> Cell {
        *self.cells.last().expect("stripe is nonempty")
    }

    pub fn size(&self) -> i64 {
        self.cells.len() as i64
    }

    fn shifted(&self, cols: i64) -> Vec<Cell> {
        self.cells.iter().map(|&(r, c)| (r, c + cols)).collect()
    }
}

fn cell_in(lambda: &[i64], mu: &[i64], (r, c): Cell) -> bool {
    if r < 1 || r > lambda.len() as i64 {
        return false;
    }
    let i = (r - 1) as usize;
    c > mu[i] && c <= lambda[i]
}

fn check_partition(parts: &[i64], m: i64, n: i64, what: &str) -> Result<Vec<i64>> {
    let mut trimmed: Vec<i64> = parts.to_vec();
    while trimmed.last() == Some(&0) {
        trimmed.pop();
    }
    if trimmed.len() as i64 > m {
        return Err(AwError::InvalidStructure(format!(
            "{what} has more than {m} nonzero parts"
        )));
    }
    let mut prev = n;
    for &p in &trimmed {
        if p < 0 || p > prev {
            return Err(AwError::InvalidStructure(format!(
                "{what} is not a weakly decreasing partition inside the {m}×{n} box"
            )));
        }
        prev = p;
    }
    trimmed.resize(m as usize, 0);
    Ok(trimmed)
}

fn validate_white(lambda: &[i64], mu: &[i64], stripe: &Stripe) -> Result<()> {
    for &cell in stripe.cells() {
        if !cell_in(lambda, mu, cell) {
            return Err(AwError::InvalidStructure(format!(
                "white stripe cell {cell:?} lies outside the skew shape"
            )));
        }
    }
    let (tr, tc) = stripe.top();
    if tc != mu[(tr - 1) as usize] + 1 {
        return Err(AwError::InvalidStructure(format!(
            "white stripe top {:?} is not flush against the inner boundary",
            (tr, tc)
        )));
    }
    let (br, bc) = stripe.bottom();
    if cell_in(lambda, mu, (br + 1, bc)) {
        return Err(AwError::InvalidStructure(format!(
            "white stripe bottom {:?} has a shape cell directly below it",
            (br, bc)
        )));
    }
    Ok(())
}

fn validate_black(lambda: &[i64], mu: &[i64], stripe: &Stripe) -> Result<()> {
    for &cell in stripe.cells() {
        if !cell_in(lambda, mu, cell) {
            return Err(AwError::InvalidStructure(format!(
                "black stripe cell {cell:?} lies outside the skew shape"
            )));
        }
    }
    let (br, bc) = stripe.bottom();
    if bc != lambda[(br - 1) as usize] {
        return Err(AwError::InvalidStructure(format!(
            "black stripe bottom {:?} is not flush against the outer boundary",
            (br, bc)
        )));
    }
    let (tr, tc) = stripe.top();
    if cell_in(lambda, mu, (tr - 1, tc)) {
        return Err(AwError::InvalidStructure(format!(
            "black stripe top {:?} has a shape cell directly above it",
            (tr, tc)
        )));
    }
    Ok(())
}

/// A doubly striped skew shape, fully validated on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DsShape {
    m: i64,
    n: i64,
    /// Outer partition, zero-padded to exactly `m` parts.
    lambda: Vec<i64>,
    /// Inner partition, zero-padded to exactly `m` parts.
    mu: Vec<i64>,
    white: BTreeSet<Stripe>,
    black: BTreeSet<Stripe>,
}

impl DsShape {
    pub fn new(
        m: i64,
        n: i64,
        lambda: Vec<i64>,
        mu: Vec<i64>,
        white: BTreeSet<Stripe>,
        black: BTreeSet<Stripe>,
    ) -> Result<DsShape> {
        if m < 0 || n < 0 {
            return Err(AwError::InvalidParameter(format!(
                "box dimensions must be nonnegative, got {m}×{n}"
            )));
        }
        let lambda = check_partition(&lambda, m, n, "outer partition")?;
        let mu = check_partition(&mu, m, n, "inner partition")?;
        for i in 0..m as usize {
            if mu[i] > lambda[i] {
                return Err(AwError::InvalidStructure(format!(
                    "inner partition exceeds outer partition in row {}",
                    i + 1
                )));
            }
        }
        for s in &white {
            validate_white(&lambda, &mu, s)?;
        }
        for s in &black {
            validate_black(&lambda, &mu, s)?;
        }
        if let Some(shared) = white.intersection(&black).next() {
            return Err(AwError::InvalidStructure(format!(
                "the same stripe {:?} appears in both families",
                shared.cells()
            )));
        }
        Ok(DsShape {
            m,
            n,
            lambda,
            mu,
            white,
            black,
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Outer partition, zero-padded to `m` parts.
    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// Inner partition, zero-padded to `m` parts.
    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn white(&self) -> &BTreeSet<Stripe> {
        &self.white
    }

    pub fn black(&self) -> &BTreeSet<Stripe> {
        &self.black
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell_in(&self.lambda, &self.mu, cell)
    }

    /// Fixed points of the extended involution: empty inner shape, no blacks.
    pub fn is_plain(&self) -> bool {
        self.mu.iter().all(|&x| x == 0) && self.black.is_empty()
    }

    /// Signed weight monomial in `a`, `b`, `q`.
    pub fn weight(&self) -> MPoly {
        let w = self.white.len() as i64;
        let b = self.black.len() as i64;
        let norm_w: i64 = self.white.iter().map(Stripe::size).sum();
        let norm_b: i64 = self.black.iter().map(Stripe::size).sum();
        let area: i64 = self.lambda.iter().sum::<i64>() - self.mu.iter().sum::<i64>();
        let mono = MPoly::monomial(&[
            (Var::A, self.m - w),
            (Var::B, self.n - w),
            (Var::Q, area - norm_w + w - norm_b),
        ]);
        if (w + b) % 2 == 0 {
            mono
        } else {
            mono.mul_scalar(&GaussianRational::from_int(-1))
        }
    }
}

/// Weight with `a` and `b` specialised to arbitrary rational functions.
pub fn dss_weight(shape: &DsShape, a_val: &RatFunc, b_val: &RatFunc) -> Result<RatFunc> {
    RatFunc::from_poly(shape.weight()).substitute(&BTreeMap::from([
        (Var::A, a_val.clone()),
        (Var::B, b_val.clone()),
    ]))
}

/// Optional filters for shape enumeration; `None` leaves a component free.
#[derive(Debug, Default, Clone)]
pub struct DsConstraints {
    pub lambda: Option<Vec<i64>>,
    pub mu: Option<Vec<i64>>,
    pub white: Option<BTreeSet<Stripe>>,
    pub black: Option<BTreeSet<Stripe>>,
}

/// All partitions inside an `m×n` box, zero-padded to `m` parts, first part
/// largest first.
fn partitions_in_box(m: i64, n: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; m as usize];
    fn rec(row: usize, m: usize, maxv: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if row == m {
            out.push(cur.clone());
            return;
        }
        let mut v = maxv;
        while v >= 0 {
            cur[row] = v;
            rec(row + 1, m, v, cur, out);
            v -= 1;
        }
    }
    rec(0, m as usize, n, &mut cur, &mut out);
    if m == 0 {
        return vec![vec![]];
    }
    out
}

/// All partitions `μ` with `μ_i ≤ bound_i` rowwise.
fn partitions_below(bound: &[i64]) -> Vec<Vec<i64>> {
    let m = bound.len();
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    fn rec(row: usize, bound: &[i64], prev: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if row == bound.len() {
            out.push(cur.clone());
            return;
        }
        let mut v = prev.min(bound[row]);
        while v >= 0 {
            cur[row] = v;
            rec(row + 1, bound, v, cur, out);
            v -= 1;
        }
    }
    rec(0, bound, i64::MAX, &mut cur, &mut out);
    out
}

/// The unique white-stripe candidate rooted in row `r`, if its maximal run is
/// legal.
fn white_candidate(lambda: &[i64], mu: &[i64], r: i64) -> Option<Stripe> {
    let c = mu[(r - 1) as usize] + 1;
    if !cell_in(lambda, mu, (r, c)) {
        return None;
    }
    let mut cells = vec![(r, c)];
    while cell_in(lambda, mu, (cells.last().unwrap().0 + 1, cells.last().unwrap().1 + 1)) {
        let last = *cells.last().unwrap();
        cells.push((last.0 + 1, last.1 + 1));
    }
    let (br, bc) = *cells.last().unwrap();
    if cell_in(lambda, mu, (br + 1, bc)) {
        return None;
    }
    Some(Stripe { cells })
}

/// The unique black-stripe candidate with its bottom in row `r`, if legal.
fn black_candidate(lambda: &[i64], mu: &[i64], r: i64) -> Option<Stripe> {
    let c = lambda[(r - 1) as usize];
    if !cell_in(lambda, mu, (r, c)) {
        return None;
    }
    let mut cells = vec![(r, c)];
    while cell_in(lambda, mu, (cells[0].0 - 1, cells[0].1 - 1)) {
        let first = cells[0];
        cells.insert(0, (first.0 - 1, first.1 - 1));
    }
    let (tr, tc) = cells[0];
    if cell_in(lambda, mu, (tr - 1, tc)) {
        return None;
    }
    Some(Stripe { cells })
}

fn stripe_subsets(candidates: &[Stripe], fixed: Option<&BTreeSet<Stripe>>) -> Vec<BTreeSet<Stripe>> {
    if let Some(f) = fixed {
        return vec![f.clone()];
    }
    let mut out = Vec::with_capacity(1 << candidates.len());
    for mask in 0u32..(1 << candidates.len()) {
        let mut set = BTreeSet::new();
        for (i, s) in candidates.iter().enumerate() {
            if mask & (1 << i) != 0 {
                set.insert(s.clone());
            }
        }
        out.push(set);
    }
    out
}

/// All doubly striped skew shapes in the `m×n` box matching the constraints.
pub fn enumerate_dss(m: i64, n: i64, constraints: &DsConstraints) -> Result<Vec<DsShape>> {
    if m < 0 || n < 0 || m + n > MAX_DSS_SIZE {
        return Err(AwError::InvalidParameter(format!(
            "shape enumeration supports 0 ≤ m+n ≤ {MAX_DSS_SIZE}, got {m}×{n}"
        )));
    }
    let lambdas = match &constraints.lambda {
        Some(l) => vec![check_partition(l, m, n, "outer partition")?],
        None => partitions_in_box(m, n),
    };
    let mut out = Vec::new();
    for lambda in lambdas {
        let mus = match &constraints.mu {
            Some(u) => vec![check_partition(u, m, n, "inner partition")?],
            None => partitions_below(&lambda),
        };
        for mu in mus {
            if mu.iter().zip(&lambda).any(|(u, l)| u > l) {
                continue;
            }
            let whites: Vec<Stripe> = (1..=m)
                .filter_map(|r| white_candidate(&lambda, &mu, r))
                .collect();
            let blacks: Vec<Stripe> = (1..=m)
                .filter_map(|r| black_candidate(&lambda, &mu, r))
                .collect();
            for wset in stripe_subsets(&whites, constraints.white.as_ref()) {
                for bset in stripe_subsets(&blacks, constraints.black.as_ref()) {
                    if let Ok(shape) =
                        DsShape::new(m, n, lambda.clone(), mu.clone(), wset.clone(), bset)
                    {
                        out.push(shape);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All shapes with empty inner partition and no black stripes (the fixed
/// points of the extended involution), under the larger cap.
pub fn enumerate_plain_striped(m: i64, n: i64) -> Result<Vec<DsShape>> {
    if m < 0 || n < 0 || m + n > MAX_PLAIN_DSS_SIZE {
        return Err(AwError::InvalidParameter(format!(
            "plain striped enumeration supports 0 ≤ m+n ≤ {MAX_PLAIN_DSS_SIZE}, got {m}×{n}"
        )));
    }
    let mu = vec![0i64; m as usize];
    let mut out = Vec::new();
    for lambda in partitions_in_box(m, n) {
        let whites: Vec<Stripe> = (1..=m)
            .filter_map(|r| white_candidate(&lambda, &mu, r))
            .collect();
        for wset in stripe_subsets(&whites, None) {
            out.push(
                DsShape::new(m, n, lambda.clone(), mu.clone(), wset, BTreeSet::new())
                    .expect("generated shape must validate"),
            );
        }
    }
    Ok(out)
}

/// Role a position plays after reading the path backwards: which of the two
/// boundary words receives `N` at this position.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    /// `N` in the upper word, `E` in the lower word.
    UpperN,
    /// `E` in the upper word, `N` in the lower word.
    LowerN,
    /// `N` in both words.
    BothN,
    /// `E` in both words.
    BothE,
}

/// Weight-preserving bijection from restricted paths to doubly striped skew
/// shapes.
///
/// The path is read backwards; a down step contributes `N` to the upper
/// boundary word and `E` to the lower one (an up step the reverse), a
/// horizontal `a`-step contributes `N` to both and a horizontal `b`-step `E`
/// to both.  Reading the words with the `s`-th `N` assigned to row `m−s+1`
/// yields `μ` (upper word) and `λ` (lower word).  Each `−1`-tagged down step
/// of level `i` becomes a white stripe of `i` cells hanging from the inner
/// boundary in its row; each `−1`-tagged up step of level `i` becomes a black
/// stripe of `i` cells ending on the outer boundary in its row.
pub fn rho(path: &MotzkinPath) -> Result<DsShape> {
    if !path.is_restricted() {
        return Err(AwError::InvalidParameter(
            "the path-to-shape correspondence requires a restricted path".to_string(),
        ));
    }
    struct Mark {
        role: Role,
        minus: bool,
        level: i64,
    }
    let marks: Vec<Mark> = path
        .steps()
        .iter()
        .rev()
        .map(|s| Mark {
            role: match (s.kind, s.tag) {
                (StepKind::Down, _) => Role::UpperN,
                (StepKind::Up, _) => Role::LowerN,
                (StepKind::Horizontal, WeightTag::AQPow) => Role::BothN,
                (StepKind::Horizontal, _) => Role::BothE,
            },
            minus: s.tag == WeightTag::MinusOne,
            level: s.level as i64,
        })
        .collect();

    let mut mu_by_s: Vec<i64> = Vec::new(); // E-count before the s-th upper N
    let mut lambda_by_s: Vec<i64> = Vec::new();
    let mut white_events: Vec<(usize, i64)> = Vec::new(); // (upper-N index, size)
    let mut black_events: Vec<(usize, i64)> = Vec::new(); // (lower-N index, size)
    let (mut upper_e, mut lower_e) = (0i64, 0i64);
    for mark in &marks {
        let upper_n = matches!(mark.role, Role::UpperN | Role::BothN);
        let lower_n = matches!(mark.role, Role::LowerN | Role::BothN);
        if upper_n {
            mu_by_s.push(upper_e);
            if mark.minus {
                white_events.push((mu_by_s.len(), mark.level));
            }
        } else {
            upper_e += 1;
        }
        if lower_n {
            lambda_by_s.push(lower_e);
            if mark.minus && mark.role == Role::LowerN {
                black_events.push((lambda_by_s.len(), mark.level));
            }
        } else {
            lower_e += 1;
        }
    }
    debug_assert_eq!(mu_by_s.len(), lambda_by_s.len());
    debug_assert_eq!(upper_e, lower_e);
    let m = mu_by_s.len() as i64;
    let n = upper_e;
    let mut lambda = vec![0i64; m as usize];
    let mut mu = vec![0i64; m as usize];
    for (s, &e) in mu_by_s.iter().enumerate() {
        mu[(m as usize) - 1 - s] = e;
    }
    for (s, &e) in lambda_by_s.iter().enumerate() {
        lambda[(m as usize) - 1 - s] = e;
    }

    let mut white = BTreeSet::new();
    for &(s, size) in &white_events {
        let r = m - s as i64 + 1;
        let c = mu[(r - 1) as usize] + 1;
        let cells: Vec<Cell> = (0..size).map(|j| (r + j, c + j)).collect();
        white.insert(Stripe::new(cells)?);
    }
    let mut black = BTreeSet::new();
    for &(s, size) in &black_events {
        let r = m - s as i64 + 1;
        let c = lambda[(r - 1) as usize];
        let cells: Vec<Cell> = (0..size).map(|j| (r - size + 1 + j, c - size + 1 + j)).collect();
        black.insert(Stripe::new(cells)?);
    }
    DsShape::new(m, n, lambda, mu, white, black)
}

/// Inverse of [`rho`]; errors when the shape is not in the image.
pub fn rho_inverse(shape: &DsShape) -> Result<MotzkinPath> {
    let not_image = || {
        AwError::InvalidStructure(
            "shape is not in the image of the path correspondence".to_string(),
        )
    };
    let m = shape.m;
    let n = shape.n;
    // Boundary words read with the s-th N standing for row m−s+1; `true` = N.
    let build_word = |parts: &[i64]| -> Result<Vec<bool>> {
        let mut w = Vec::with_capacity((m + n) as usize);
        let mut prev = 0i64;
        for s in 1..=m {
            let target = parts[(m - s) as usize];
            if target < prev {
                return Err(not_image());
            }
            for _ in prev..target {
                w.push(false);
            }
            w.push(true);
            prev = target;
        }
        for _ in prev..n {
            w.push(false);
        }
        Ok(w)
    };
    let upper = build_word(&shape.mu)?;
    let lower = build_word(&shape.lambda)?;
    debug_assert_eq!(upper.len(), lower.len());

    let mut roles: Vec<(Role, i64)> = Vec::with_capacity(upper.len());
    let mut upper_n_pos: Vec<usize> = Vec::new();
    let mut lower_n_pos: Vec<usize> = Vec::new();
    let mut h = 0i64;
    for (j, (&u, &l)) in upper.iter().zip(&lower).enumerate() {
        let role = match (u, l) {
            (true, false) => Role::UpperN,
            (false, true) => Role::LowerN,
            (true, true) => Role::BothN,
            (false, false) => Role::BothE,
        };
        if u {
            upper_n_pos.push(j);
        }
        if l {
            lower_n_pos.push(j);
        }
        let level = match role {
            Role::UpperN => {
                h += 1;
                h
            }
            Role::LowerN => {
                let lvl = h;
                h -= 1;
                if h < 0 {
                    return Err(not_image());
                }
                lvl
            }
            _ => h,
        };
        roles.push((role, level));
    }
    if h != 0 {
        return Err(not_image());
    }

    let mut minus = vec![false; roles.len()];
    for w in &shape.white {
        let s = (m - w.top().0 + 1) as usize;
        let j = upper_n_pos[s - 1];
        if roles[j].0 != Role::UpperN || roles[j].1 != w.size() {
            return Err(not_image());
        }
        minus[j] = true;
    }
    for b in &shape.black {
        let s = (m - b.bottom().0 + 1) as usize;
        let j = lower_n_pos[s - 1];
        if roles[j].0 != Role::LowerN || roles[j].1 != b.size() {
            return Err(not_image());
        }
        minus[j] = true;
    }

    // Reverse back into the step menu: a backwards-read down step was an up
    // step of the original path, and vice versa.
    let mut steps: Vec<Step> = Vec::with_capacity(roles.len());
    let mut height = 0u32;
    for (j, &(role, _)) in roles.iter().enumerate().rev() {
        let step = match role {
            Role::UpperN => {
                let lvl = height;
                height = height.checked_sub(1).ok_or_else(not_image)?;
                Step {
                    kind: StepKind::Down,
                    level: lvl,
                    tag: if minus[j] {
                        WeightTag::MinusOne
                    } else {
                        WeightTag::AbQPow
                    },
                }
            }
            Role::LowerN => {
                height += 1;
                Step {
                    kind: StepKind::Up,
                    level: height,
                    tag: if minus[j] {
                        WeightTag::MinusOne
                    } else {
                        WeightTag::QPow
                    },
                }
            }
            Role::BothN => Step {
                kind: StepKind::Horizontal,
                level: height,
                tag: WeightTag::AQPow,
            },
            Role::BothE => Step {
                kind: StepKind::Horizontal,
                level: height,
                tag: WeightTag::BQPow,
            },
        };
        steps.push(step);
    }
    let path = MotzkinPath::new(steps).map_err(|_| not_image())?;
    if !path.is_restricted() {
        return Err(not_image());
    }
    if &rho(&path)? != shape {
        return Err(not_image());
    }
    Ok(path)
}

fn nonzero_rows(mu: &[i64]) -> i64 {
    mu.iter().filter(|&&x| x > 0).count() as i64
}

fn max_black_bottom(black: &BTreeSet<Stripe>) -> i64 {
    black.iter().map(|b| b.bottom().0).max().unwrap_or(0)
}

/// Candidate results of carving a new black stripe of each size `t` out of
/// the bottom `t` nonempty inner rows, validated ignoring white stripes.
fn carve_candidates(
    m: i64,
    n: i64,
    lambda: &[i64],
    mu: &[i64],
    black: &BTreeSet<Stripe>,
    r: i64,
) -> Vec<(Vec<i64>, BTreeSet<Stripe>, i64)> {
    let mut found = Vec::new();
    for t in 1..=r {
        let mut mu2 = mu.to_vec();
        for row in (r - t + 1)..=r {
            mu2[(row - 1) as usize] -= 1;
        }
        let lr = lambda[(r - 1) as usize];
        let cells: Vec<Cell> = ((r - t + 1)..=r).map(|j| (j, lr - r + j)).collect();
        let Ok(stripe) = Stripe::new(cells) else {
            continue;
        };
        if black.contains(&stripe) {
            continue;
        }
        let mut black2 = black.clone();
        black2.insert(stripe);
        if DsShape::new(m, n, lambda.to_vec(), mu2.clone(), BTreeSet::new(), black2.clone()).is_ok()
        {
            found.push((mu2, black2, t));
        }
    }
    found
}

/// Sign-reversing involution on shapes without white stripes.
///
/// With `r` the number of nonempty inner rows and `s` the lowest row carrying
/// a black cell: when `s ≥ r` the stripe ending in row `s` is removed and the
/// inner partition widened by one across its rows; when `s < r` one cell is
/// carved off each of the bottom `t` nonempty inner rows for the unique legal
/// size `t`, forming a new black stripe against the outer boundary.  Fixed
/// points are exactly the shapes with empty inner partition and no stripes.
pub fn black_stripe_involution(shape: &DsShape) -> Result<DsShape> {
    if !shape.white.is_empty() {
        return Err(AwError::InvalidParameter(
            "the black-stripe involution requires a shape without white stripes".to_string(),
        ));
    }
    let r = nonzero_rows(&shape.mu);
    let s = max_black_bottom(&shape.black);
    if r == 0 && s == 0 {
        return Ok(shape.clone());
    }
    if s >= r {
        let bottom_stripes: Vec<&Stripe> =
            shape.black.iter().filter(|b| b.bottom().0 == s).collect();
        if bottom_stripes.len() != 1 {
            return Err(AwError::InvalidStructure(format!(
                "expected exactly one black stripe ending in row {s}, found {}",
                bottom_stripes.len()
            )));
        }
        let stripe = bottom_stripes[0].clone();
        let t = stripe.size();
        let mut mu2 = shape.mu.clone();
        for row in (s - t + 1)..=s {
            mu2[(row - 1) as usize] += 1;
        }
        let mut black2 = shape.black.clone();
        black2.remove(&stripe);
        DsShape::new(shape.m, shape.n, shape.lambda.clone(), mu2, BTreeSet::new(), black2)
    } else {
        let mut found = carve_candidates(shape.m, shape.n, &shape.lambda, &shape.mu, &shape.black, r);
        if found.len() != 1 {
            return Err(AwError::InvalidStructure(format!(
                "expected exactly one legal stripe size, found {}",
                found.len()
            )));
        }
        let (mu2, black2, _) = found.pop().expect("len checked");
        DsShape::new(shape.m, shape.n, shape.lambda.clone(), mu2, BTreeSet::new(), black2)
    }
}

/// Sign-reversing involution on all shapes, extending
/// [`black_stripe_involution`] in the presence of white stripes.
///
/// The black-stripe step runs on `(λ, μ, B)` alone; every white stripe whose
/// top row lies in the block of changed inner rows then slides one column
/// (right when the block widened, left when it narrowed).  A sliding-right
/// stripe whose bottom dot has no cell to move into loses that dot and its
/// cell; a sliding-left stripe whose slid bottom acquires a shape cell
/// directly below it grows a new bottom dot on a freshly added cell.  Slides
/// are processed per row from the outer boundary inwards (rightmost bottom
/// first when sliding right, leftmost first when sliding left) so that cell
/// deletions and additions cascade correctly.  Fixed points are exactly the
/// shapes with empty inner partition and no black stripes.
pub fn extended_involution(shape: &DsShape) -> Result<DsShape> {
    let internal = |msg: String| AwError::InvalidStructure(msg);
    let r = nonzero_rows(&shape.mu);
    let s = max_black_bottom(&shape.black);
    if r == 0 && s == 0 {
        return Ok(shape.clone());
    }
    let mut lambda = shape.lambda.clone();
    let (mu2, black2, block_lo, block_hi, sliding_right);
    if s >= r {
        let bottom_stripes: Vec<&Stripe> =
            shape.black.iter().filter(|b| b.bottom().0 == s).collect();
        if bottom_stripes.len() != 1 {
            return Err(internal(format!(
                "expected exactly one black stripe ending in row {s}, found {}",
                bottom_stripes.len()
            )));
        }
        let stripe = bottom_stripes[0].clone();
        let t = stripe.size();
        let mut mu = shape.mu.clone();
        for row in (s - t + 1)..=s {
            mu[(row - 1) as usize] += 1;
        }
        let mut black = shape.black.clone();
        black.remove(&stripe);
        mu2 = mu;
        black2 = black;
        block_lo = s - t + 1;
        block_hi = s;
        sliding_right = true;
    } else {
        let mut found = carve_candidates(shape.m, shape.n, &lambda, &shape.mu, &shape.black, r);
        if found.len() != 1 {
            return Err(internal(format!(
                "expected exactly one legal stripe size, found {}",
                found.len()
            )));
        }
        let (mu, black, t) = found.pop().expect("len checked");
        mu2 = mu;
        black2 = black;
        block_lo = r - t + 1;
        block_hi = r;
        sliding_right = false;
    }

    let mut result_whites: Vec<Stripe> = Vec::new();
    let mut sliders: Vec<&Stripe> = Vec::new();
    for w in &shape.white {
        let tr = w.top().0;
        if tr >= block_lo && tr <= block_hi {
            sliders.push(w);
        } else {
            result_whites.push(w.clone());
        }
    }
    if sliding_right {
        sliders.sort_by_key(|w| (w.bottom().0, std::cmp::Reverse(w.bottom().1)));
        for w in sliders {
            let (br, bc) = w.bottom();
            if cell_in(&lambda, &mu2, (br, bc + 1)) {
                result_whites.push(Stripe::new(w.shifted(1))?);
            } else {
                if w.size() == 1 {
                    return Err(internal(
                        "white stripe would vanish while sliding right".to_string(),
                    ));
                }
                lambda[(br - 1) as usize] -= 1;
                let mut cells = w.shifted(1);
                cells.pop();
                result_whites.push(Stripe::new(cells)?);
            }
        }
    } else {
        sliders.sort_by_key(|w| (w.bottom().0, w.bottom().1));
        for w in sliders {
            let mut cells = w.shifted(-1);
            let (br, bc) = *cells.last().expect("stripe is nonempty");
            if cell_in(&lambda, &mu2, (br + 1, bc)) {
                let i = br as usize; // row br+1, 0-indexed
                if lambda[i] != bc {
                    return Err(internal(format!(
                        "cannot grow white stripe into row {}: row ends at column {}, expected {bc}",
                        br + 1,
                        lambda[i]
                    )));
                }
                lambda[i] += 1;
                cells.push((br + 1, bc + 1));
            }
            result_whites.push(Stripe::new(cells)?);
        }
    }
    DsShape::new(
        shape.m,
        shape.n,
        lambda,
        mu2,
        result_whites.into_iter().collect(),
        black2,
    )
}

/// Half-turn rotation: complements both partitions in the box, maps each cell
/// `(r,c)` to `(m+1−r, n+1−c)`, and swaps the two stripe families.
pub fn dss_rotate(shape: &DsShape) -> Result<DsShape> {
    let m = shape.m;
    let n = shape.n;
    let lambda2: Vec<i64> = (0..m as usize)
        .map(|i| n - shape.mu[m as usize - 1 - i])
        .collect();
    let mu2: Vec<i64> = (0..m as usize)
        .map(|i| n - shape.lambda[m as usize - 1 - i])
        .collect();
    let map_stripe = |s: &Stripe| -> Result<Stripe> {
        let mut cells: Vec<Cell> = s
            .cells()
            .iter()
            .map(|&(r, c)| (m + 1 - r, n + 1 - c))
            .collect();
        cells.reverse();
        Stripe::new(cells)
    };
    let white2: Result<BTreeSet<Stripe>> = shape.black.iter().map(map_stripe).collect();
    let black2: Result<BTreeSet<Stripe>> = shape.white.iter().map(map_stripe).collect();
    DsShape::new(m, n, lambda2, mu2, white2?, black2?)
}

/// Reading word of a shape with empty inner partition and no black stripes.
///
/// Rows holding a stripe top are marked; the column of each stripe bottom is
/// deleted, shortening every row that reaches past it.  Reading the shortened
/// diagram boundary bottom-up then spells one letter per row (`1` for marked
/// rows, `0` otherwise) with a `2` for every surviving column passed along the
/// way.  The resulting word `w` over `{0,1,2}` satisfies
/// `|λ| − ‖W‖ = inv(w) + t(t−1)/2` where `t` is the number of stripes.
pub fn dss_to_word(shape: &DsShape) -> Result<String> {
    if !shape.is_plain() {
        return Err(AwError::InvalidParameter(
            "the reading word requires an empty inner partition and no black stripes".to_string(),
        ));
    }
    let m = shape.m;
    let n = shape.n;
    let t = shape.white.len() as i64;
    let marked: BTreeSet<i64> = shape.white.iter().map(|w| w.top().0).collect();
    let chopped: BTreeSet<i64> = shape.white.iter().map(|w| w.bottom().1).collect();
    if marked.len() as i64 != t || chopped.len() as i64 != t {
        return Err(AwError::InvalidStructure(
            "stripe tops or bottoms collide".to_string(),
        ));
    }
    let shortened: Vec<i64> = shape
        .lambda
        .iter()
        .map(|&l| l - chopped.iter().filter(|&&c| c <= l).count() as i64)
        .collect();
    for w in shortened.windows(2) {
        if w[1] > w[0] {
            return Err(AwError::InvalidStructure(
                "column deletion broke monotonicity".to_string(),
            ));
        }
    }
    let v = n - t;
    let mut word = String::with_capacity((m + v) as usize);
    let mut prev = 0i64;
    for r in (1..=m).rev() {
        let target = shortened[(r - 1) as usize];
        for _ in prev..target {
            word.push('2');
        }
        word.push(if marked.contains(&r) { '1' } else { '0' });
        prev = target;
    }
    for _ in prev..v {
        word.push('2');
    }
    Ok(word)
}

/// Number of inversions (pairs `i<j` with `w_i > w_j`) of a word over a
/// digit alphabet.
pub fn word_inversions(word: &str) -> i64 {
    let chars: Vec<char> = word.chars().collect();
    let mut inv = 0i64;
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            if chars[i] > chars[j] {
                inv += 1;
            }
        }
    }
    inv
}
