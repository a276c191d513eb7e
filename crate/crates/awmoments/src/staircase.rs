//! Staircase tableaux: fillings of the staircase diagram (n, n-1, ..., 1)
//! with the letters α, β, γ, δ, together with the combinatorial statistics
//! that turn their generating function into a moment formula.
//!
//! A staircase tableau of size `n` places letters into the Young diagram with
//! rows of lengths n, n-1, ..., 1 (row `i` has cells `(i, 1..=n+1-i)`), so
//! that
//!
//!  * every diagonal cell `(i, n+1-i)` (the rightmost cell of its row, which
//!    is also the bottom cell of its column) holds a letter,
//!  * every cell above an α or γ in the same column is empty, and
//!  * every cell left of a β or δ in the same row is empty.
//!
//! There are exactly `4^n n!` such fillings. Each empty cell receives a
//! unique label `u` or `q`, read off from the nearest letter to its right
//! (which always exists, because rows end in a letter) and, when that letter
//! is α or γ, the nearest letter below it (which always exists, because
//! columns end in a letter):
//!
//!  * nearest right letter β → `u`, δ → `q`;
//!  * nearest right letter α or γ: nearest letter below α or δ → `u`,
//!    β or γ → `q`.
//!
//! The statistics exposed by [`TableauStats`] are the total counts of each
//! letter, the number of `q` labels, and the number of "block" diagonal
//! cells (those holding α or δ). The generating function over all tableaux
//! of size `n`, in the six variables (block marker y, the four letter
//! weights, and q), is returned by [`z_partition`] as an exact polynomial;
//! evaluated at a particular complex specialization it reproduces the
//! orthogonality-measure moments μ_n(a,b,c,d;q), which [`measure_moment_check`] and
//! [`real_part_moment_check`] verify point-wise against the recurrence oracle.
//!
//! Tableaux with no α and no β collapse to a smaller "arrow" tableau on a
//! Young shape ([`to_alternative`]); the ones whose arrows cover every cell
//! ([`AltTableau::is_catalan`]) are counted by Catalan numbers, refined by
//! Narayana numbers according to the number of blocks. Those counting facts,
//! and the Catalan values of extreme coefficients of the scaled moments, are
//! verified by [`narayana_consistency`], [`highest_coeff_check`], and
//! [`next_coeff_check`].

use std::collections::BTreeMap;
use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{pow_gaussian, GaussianRational, MPoly, Mono, RatFunc, Var};
use crate::error::{AwError, Result};
use crate::oracle::{aw_spec, moment_table};
use crate::qcalc::{catalan, catalan_half, narayana, QCtx};
use crate::report::VerificationReport;

/// Largest size accepted by the streaming enumeration (`4^7 · 7!` ≈ 8.3e7
/// fillings; anything larger is out of reach for exhaustive passes).
pub const MAX_STAIRCASE_N: i64 = 7;

/// Largest size for which [`enumerate_staircase`] will materialize the full
/// list in memory (`4^5 · 5!` = 122,880 tableaux). Larger sizes must use the
/// streaming [`for_each_staircase`].
pub const MAX_STAIRCASE_LIST_N: i64 = 5;

/// Largest size for which the point-wise moment checks run (each one streams
/// the full enumeration once to build the generating polynomial).
pub const MAX_MOMENT_CHECK_N: i64 = 6;

/// One of the four letters a staircase tableau may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Letter {
    /// Single-character form used in the compact serialized grid.
    pub fn symbol(self) -> char {
        match self {
            Letter::Alpha => 'a',
            Letter::Beta => 'b',
            Letter::Gamma => 'g',
            Letter::Delta => 'd',
        }
    }
}

/// Label attached to an empty cell by the reading rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EmptyLabel {
    U,
    Q,
}

/// Statistics of a single tableau: letter counts, `q`-label count, and the
/// number of diagonal cells holding α or δ (the "blocks").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableauStats {
    pub blocks: i64,
    pub alphas: i64,
    pub betas: i64,
    pub gammas: i64,
    pub deltas: i64,
    pub q_labels: i64,
}

impl TableauStats {
    /// Membership test for the Catalan family: no α or β anywhere, and every
    /// empty cell labelled `q` (equivalently, letters plus `q` labels fill
    /// the whole diagram of `n(n+1)/2` cells).
    pub fn is_catalan_family(&self, n: i64) -> bool {
        self.alphas == 0
            && self.betas == 0
            && self.gammas + self.deltas + self.q_labels == n * (n + 1) / 2
    }
}

/// A filling of the staircase diagram, validated against the three placement
/// rules. Rows are 1-indexed from the top; row `i` has cells `(i, j)` for
/// `1 ≤ j ≤ n+1-i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StaircaseTableau {
    n: usize,
    grid: Vec<Vec<Option<Letter>>>,
}

impl StaircaseTableau {
    /// Builds a tableau of size `n` from a list of `(row, col, letter)`
    /// entries, rejecting out-of-range cells, duplicates, empty diagonal
    /// cells, letters above an α/γ, and letters left of a β/δ.
    pub fn new(n: i64, filling: &[(i64, i64, Letter)]) -> Result<StaircaseTableau> {
        if n < 0 {
            return Err(AwError::InvalidParameter(format!(
                "tableau size must be nonnegative, got {n}"
            )));
        }
        let nu = n as usize;
        let mut grid: Vec<Vec<Option<Letter>>> =
            (0..nu).map(|i| vec![None; nu - i]).collect();
        for &(i, j, letter) in filling {
            if i < 1 || i > n || j < 1 || j > n + 1 - i {
                return Err(AwError::InvalidStructure(format!(
                    "cell ({i}, {j}) is outside the staircase of size {n}"
                )));
            }
            let slot = &mut grid[(i - 1) as usize][(j - 1) as usize];
            if slot.is_some() {
                return Err(AwError::InvalidStructure(format!(
                    "cell ({i}, {j}) is filled twice"
                )));
            }
            *slot = Some(letter);
        }
        let t = StaircaseTableau { n: nu, grid };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n as i64;
        for i in 1..=n {
            if self.letter_at(i, n + 1 - i).is_none() {
                return Err(AwError::InvalidStructure(format!(
                    "diagonal cell ({i}, {}) must hold a letter",
                    n + 1 - i
                )));
            }
        }
        for i in 1..=n {
            for j in 1..=(n + 1 - i) {
                match self.letter_at(i, j) {
                    Some(Letter::Alpha) | Some(Letter::Gamma) => {
                        for above in 1..i {
                            if self.letter_at(above, j).is_some() {
                                return Err(AwError::InvalidStructure(format!(
                                    "cell ({above}, {j}) must be empty above the letter at ({i}, {j})"
                                )));
                            }
                        }
                    }
                    Some(Letter::Beta) | Some(Letter::Delta) => {
                        for left in 1..j {
                            if self.letter_at(i, left).is_some() {
                                return Err(AwError::InvalidStructure(format!(
                                    "cell ({i}, {left}) must be empty left of the letter at ({i}, {j})"
                                )));
                            }
                        }
                    }
                    None => {}
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> i64 {
        self.n as i64
    }

    /// Letter at cell `(i, j)` (1-indexed), or `None` if the cell is empty.
    /// Panics if the cell is outside the staircase.
    pub fn letter_at(&self, i: i64, j: i64) -> Option<Letter> {
        let n = self.n as i64;
        assert!(
            i >= 1 && i <= n && j >= 1 && j <= n + 1 - i,
            "cell ({i}, {j}) outside staircase of size {n}"
        );
        self.grid[(i - 1) as usize][(j - 1) as usize]
    }

    pub fn is_diagonal(&self, i: i64, j: i64) -> bool {
        j == self.n as i64 + 1 - i
    }

    /// All filled cells in row-major order.
    pub fn filled_cells(&self) -> Vec<(i64, i64, Letter)> {
        let mut out = Vec::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Some(letter) = cell {
                    out.push((i as i64 + 1, j as i64 + 1, *letter));
                }
            }
        }
        out
    }

    /// Labels for every empty cell (entries for filled cells are `None`).
    /// The labelling is total on valid tableaux because every row and every
    /// column ends in a letter.
    pub fn labels(&self) -> Vec<Vec<Option<EmptyLabel>>> {
        let n = self.n as i64;
        let mut below: Vec<Vec<Option<Letter>>> = self
            .grid
            .iter()
            .map(|row| vec![None; row.len()])
            .collect();
        for j in 1..=n {
            let mut seen: Option<Letter> = None;
            for i in (1..=(n + 1 - j)).rev() {
                below[(i - 1) as usize][(j - 1) as usize] = seen;
                if let Some(l) = self.letter_at(i, j) {
                    seen = Some(l);
                }
            }
        }
        let mut labels: Vec<Vec<Option<EmptyLabel>>> = self
            .grid
            .iter()
            .map(|row| vec![None; row.len()])
            .collect();
        for i in 1..=n {
            let mut right: Option<Letter> = None;
            for j in (1..=(n + 1 - i)).rev() {
                match self.letter_at(i, j) {
                    Some(l) => right = Some(l),
                    None => {
                        let r = right.expect("every row ends in a letter");
                        let label = match r {
                            Letter::Beta => EmptyLabel::U,
                            Letter::Delta => EmptyLabel::Q,
                            Letter::Alpha | Letter::Gamma => {
                                let b = below[(i - 1) as usize][(j - 1) as usize]
                                    .expect("every column ends in a letter");
                                match b {
                                    Letter::Alpha | Letter::Delta => EmptyLabel::U,
                                    Letter::Beta | Letter::Gamma => EmptyLabel::Q,
                                }
                            }
                        };
                        labels[(i - 1) as usize][(j - 1) as usize] = Some(label);
                    }
                }
            }
        }
        labels
    }

    /// Letter counts, block count, and `q`-label count.
    pub fn stats(&self) -> TableauStats {
        let n = self.n as i64;
        let mut s = TableauStats {
            blocks: 0,
            alphas: 0,
            betas: 0,
            gammas: 0,
            deltas: 0,
            q_labels: 0,
        };
        for i in 1..=n {
            for j in 1..=(n + 1 - i) {
                match self.letter_at(i, j) {
                    Some(Letter::Alpha) => s.alphas += 1,
                    Some(Letter::Beta) => s.betas += 1,
                    Some(Letter::Gamma) => s.gammas += 1,
                    Some(Letter::Delta) => s.deltas += 1,
                    None => {}
                }
            }
            match self.letter_at(i, n + 1 - i) {
                Some(Letter::Alpha) | Some(Letter::Delta) => s.blocks += 1,
                _ => {}
            }
        }
        for row in self.labels() {
            for label in row.into_iter().flatten() {
                if label == EmptyLabel::Q {
                    s.q_labels += 1;
                }
            }
        }
        s
    }

    /// Number of empty cells.
    pub fn empty_count(&self) -> i64 {
        let n = self.n as i64;
        let filled = self.filled_cells().len() as i64;
        n * (n + 1) / 2 - filled
    }
}

impl Serialize for StaircaseTableau {
    /// Compact grid form: one string per row, letters as `a`/`b`/`g`/`d`,
    /// empty cells as `.`; a parallel grid with the derived `u`/`q` labels.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<String> = self
            .grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.map_or('.', Letter::symbol))
                    .collect()
            })
            .collect();
        let labels: Vec<String> = self
            .labels()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match c {
                        None => '.',
                        Some(EmptyLabel::U) => 'u',
                        Some(EmptyLabel::Q) => 'q',
                    })
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("StaircaseTableau", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("rows", &rows)?;
        st.serialize_field("labels", &labels)?;
        st.end()
    }
}

const ALL_LETTERS: [Letter; 4] = [Letter::Alpha, Letter::Beta, Letter::Gamma, Letter::Delta];

/// Streams every staircase tableau of size `n` (there are `4^n n!`) through
/// the visitor, reusing a single buffer; the visitor must not retain the
/// reference. Returning an error from the visitor aborts the stream.
pub fn for_each_staircase<F>(n: i64, visit: F) -> Result<()>
where
    F: FnMut(&StaircaseTableau) -> Result<()>,
{
    for_each_with_letters(n, &ALL_LETTERS, visit)
}

/// Same stream restricted to tableaux whose letters all come from `letters`.
fn for_each_with_letters<F>(n: i64, letters: &[Letter], mut visit: F) -> Result<()>
where
    F: FnMut(&StaircaseTableau) -> Result<()>,
{
    if n < 0 {
        return Err(AwError::InvalidParameter(format!(
            "tableau size must be nonnegative, got {n}"
        )));
    }
    if n > MAX_STAIRCASE_N {
        return Err(AwError::InvalidParameter(format!(
            "exhaustive enumeration is capped at size {MAX_STAIRCASE_N}, got {n}"
        )));
    }
    let nu = n as usize;
    let mut t = StaircaseTableau {
        n: nu,
        grid: (0..nu).map(|i| vec![None; nu - i]).collect(),
    };
    // col_closed[j] = some lower row already holds α/γ in column j, so every
    // remaining cell of that column must stay empty.
    let mut col_closed = vec![false; nu + 1];
    fill_rows(&mut t, &mut col_closed, nu, letters, &mut visit)
}

/// Fills rows `row, row-1, ..., 1` (bottom to top); `row == 0` is a leaf.
fn fill_rows<F>(
    t: &mut StaircaseTableau,
    col_closed: &mut [bool],
    row: usize,
    letters: &[Letter],
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&StaircaseTableau) -> Result<()>,
{
    if row == 0 {
        return visit(t);
    }
    let len = t.grid[row - 1].len();
    fill_cells(t, col_closed, row, len, false, letters, visit)
}

/// Fills the cells of `row` right to left starting at column `j`; the
/// rightmost cell is the diagonal one and must take a letter. `row_closed`
/// records that a β/δ was placed to the right, forcing the rest of the row
/// to stay empty.
fn fill_cells<F>(
    t: &mut StaircaseTableau,
    col_closed: &mut [bool],
    row: usize,
    j: usize,
    row_closed: bool,
    letters: &[Letter],
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&StaircaseTableau) -> Result<()>,
{
    if j == 0 {
        return fill_rows(t, col_closed, row - 1, letters, visit);
    }
    let len = t.grid[row - 1].len();
    let diagonal = j == len;
    if !diagonal {
        t.grid[row - 1][j - 1] = None;
        fill_cells(t, col_closed, row, j - 1, row_closed, letters, visit)?;
    }
    if !row_closed && !col_closed[j] {
        for &letter in letters {
            t.grid[row - 1][j - 1] = Some(letter);
            let closes_col = matches!(letter, Letter::Alpha | Letter::Gamma);
            let closes_row = matches!(letter, Letter::Beta | Letter::Delta);
            if closes_col {
                col_closed[j] = true;
            }
            fill_cells(t, col_closed, row, j - 1, closes_row, letters, visit)?;
            if closes_col {
                col_closed[j] = false;
            }
        }
        t.grid[row - 1][j - 1] = None;
    } else if diagonal {
        // A diagonal cell is the bottom of its column and the right end of
        // its row, so neither closure flag can be set when we reach it.
        unreachable!("diagonal cells always have a free choice of letter");
    }
    Ok(())
}

/// Materializes the full list of tableaux of size `n`. Capped at
/// [`MAX_STAIRCASE_LIST_N`] to bound memory; use [`for_each_staircase`] for
/// larger sizes.
pub fn enumerate_staircase(n: i64) -> Result<Vec<StaircaseTableau>> {
    if n > MAX_STAIRCASE_LIST_N {
        return Err(AwError::InvalidParameter(format!(
            "materialized enumeration is capped at size {MAX_STAIRCASE_LIST_N} \
             (stream larger sizes instead), got {n}"
        )));
    }
    let mut out = Vec::new();
    for_each_staircase(n, |t| {
        out.push(t.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Generating polynomial of all tableaux of size `n`: the sum of
/// `y^blocks · a^alphas · b^betas · c^gammas · d^deltas · q^q_labels`, using
/// the variable slots a, b, c, d for the four letter weights α, β, γ, δ.
/// One streaming pass; `Z_0 = 1`, `Z_1 = yα + β + γ + yδ`.
pub fn z_partition(n: i64) -> Result<MPoly> {
    if n > MAX_STAIRCASE_N {
        return Err(AwError::InvalidParameter(format!(
            "partition polynomial is capped at size {MAX_STAIRCASE_N}, got {n}"
        )));
    }
    let mut hist: HashMap<[i64; 6], i64> = HashMap::new();
    for_each_staircase(n, |t| {
        let s = t.stats();
        *hist
            .entry([s.blocks, s.alphas, s.betas, s.gammas, s.deltas, s.q_labels])
            .or_insert(0) += 1;
        Ok(())
    })?;
    Ok(MPoly::from_terms(hist.into_iter().map(
        |([blk, a, b, c, d, e], count)| {
            let mono = Mono::var(Var::Y, blk as i32)
                .mul(&Mono::var(Var::A, a as i32))
                .mul(&Mono::var(Var::B, b as i32))
                .mul(&Mono::var(Var::C, c as i32))
                .mul(&Mono::var(Var::D, d as i32))
                .mul(&Mono::var(Var::Q, e as i32));
            (mono, GaussianRational::from_int(count))
        },
    )))
}

/// A sample point for the moment checks: values for a, b, c, d, q, each a
/// rational in (0, 1) so that every `1 - a b c d q^j` factor is nonzero.
fn sample_point(rng: &mut ChaCha8Rng) -> [GaussianRational; 5] {
    std::array::from_fn(|_| {
        let den = rng.gen_range(2..=13i64);
        let num = rng.gen_range(1..den);
        GaussianRational::from_frac(num, den)
    })
}

/// The worked example point (a, b, c, d, q) = (1/2, 1/3, 1/5, 1/7, 1/11).
fn example_point() -> [GaussianRational; 5] {
    [
        GaussianRational::from_frac(1, 2),
        GaussianRational::from_frac(1, 3),
        GaussianRational::from_frac(1, 5),
        GaussianRational::from_frac(1, 7),
        GaussianRational::from_frac(1, 11),
    ]
}

fn moment_at_point(n: i64, point: &[GaussianRational; 5]) -> Result<GaussianRational> {
    let table = moment_table(&aw_spec(), n as u32)?;
    let vars = [Var::A, Var::B, Var::C, Var::D, Var::Q];
    let map: BTreeMap<Var, GaussianRational> =
        vars.iter().copied().zip(point.iter().cloned()).collect();
    table.moment(n as usize).eval(&map)
}

/// Verifies, at the worked example point and `points` random rational
/// points, that the evaluated generating polynomial reproduces the moment:
///
/// `μ_n = (1-q)^n Z_n(-1, α, β, γ, δ, q) / (2^n i^n Π_{j<n} (αβ - γδ q^j))`
///
/// with `α = (1-q)/((1+ai)(1+ci))`, `β = (1-q)/((1-bi)(1-di))`, `γ = ac·α`,
/// `δ = bd·β`. Every intermediate is an exact Gaussian rational.
pub fn measure_moment_check(n: i64, points: usize, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    if n < 0 || n > MAX_MOMENT_CHECK_N {
        return Err(AwError::InvalidParameter(format!(
            "moment check is capped at size {MAX_MOMENT_CHECK_N}, got {n}"
        )));
    }
    let z = z_partition(n)?;
    let id = format!("staircase/measure-moment/n={n}");
    let one = GaussianRational::from_int(1);
    let iu = GaussianRational::i();
    for trial in 0..=points {
        let pt = if trial == 0 {
            example_point()
        } else {
            sample_point(rng)
        };
        let [a, b, c, d, q] = pt.clone();
        let one_minus_q = one.sub(&q);
        let fa = one.add(&a.mul(&iu)).mul(&one.add(&c.mul(&iu)));
        let fb = one.sub(&b.mul(&iu)).mul(&one.sub(&d.mul(&iu)));
        let alpha = one_minus_q.div(&fa).expect("nonzero by construction");
        let beta = one_minus_q.div(&fb).expect("nonzero by construction");
        let gamma = a.mul(&c).mul(&alpha);
        let delta = b.mul(&d).mul(&beta);
        let eval_map: BTreeMap<Var, GaussianRational> = [
            (Var::Y, GaussianRational::from_int(-1)),
            (Var::A, alpha.clone()),
            (Var::B, beta.clone()),
            (Var::C, gamma.clone()),
            (Var::D, delta.clone()),
            (Var::Q, q.clone()),
        ]
        .into_iter()
        .collect();
        let z_val = z.eval(&eval_map)?;
        let mut denom = pow_gaussian(&GaussianRational::from_int(2), n as i32)?
            .mul(&pow_gaussian(&iu, n as i32)?);
        let mut qj = one.clone();
        for _ in 0..n {
            denom = denom.mul(&alpha.mul(&beta).sub(&gamma.mul(&delta).mul(&qj)));
            qj = qj.mul(&q);
        }
        let rhs = pow_gaussian(&one_minus_q, n as i32)?
            .mul(&z_val)
            .div(&denom)
            .ok_or(AwError::DivisionByZero)?;
        let lhs = moment_at_point(n, &pt)?;
        if !rhs.is_real() || rhs != lhs {
            return Ok(VerificationReport::fail(
                id,
                format!(
                    "point (a,b,c,d,q)=({},{},{},{},{}): tableau side {} vs moment {}",
                    a.to_display(),
                    b.to_display(),
                    c.to_display(),
                    d.to_display(),
                    q.to_display(),
                    rhs.to_display(),
                    lhs.to_display()
                ),
            ));
        }
    }
    Ok(VerificationReport::pass(id))
}

/// Verifies, point-wise, the form of the moment identity with the measure
/// denominators cleared: for each tableau term with statistics
/// (blocks, A, B, C, D, E),
///
/// `2^n (abcd; q)_n μ_n = i^{-n} Σ (-1)^blocks (1-q)^{A+B+C+D-n} q^E (ac)^C
///  (bd)^D ((1+ai)(1+ci))^{n-A-C} ((1-bi)(1-di))^{n-B-D}`
///
/// and that the right side has zero imaginary part.
pub fn real_part_moment_check(n: i64, points: usize, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    if n < 0 || n > MAX_MOMENT_CHECK_N {
        return Err(AwError::InvalidParameter(format!(
            "moment check is capped at size {MAX_MOMENT_CHECK_N}, got {n}"
        )));
    }
    let z = z_partition(n)?;
    let id = format!("staircase/real-part-moment/n={n}");
    let one = GaussianRational::from_int(1);
    let iu = GaussianRational::i();
    for trial in 0..=points {
        let pt = if trial == 0 {
            example_point()
        } else {
            sample_point(rng)
        };
        let [a, b, c, d, q] = pt.clone();
        let one_minus_q = one.sub(&q);
        let fa = one.add(&a.mul(&iu)).mul(&one.add(&c.mul(&iu)));
        let fb = one.sub(&b.mul(&iu)).mul(&one.sub(&d.mul(&iu)));
        let ac = a.mul(&c);
        let bd = b.mul(&d);
        let mut rhs = GaussianRational::from_int(0);
        for (mono, coeff) in z.iter() {
            let blocks = mono.exp(Var::Y);
            let na = mono.exp(Var::A);
            let nb = mono.exp(Var::B);
            let nc = mono.exp(Var::C);
            let nd = mono.exp(Var::D);
            let ne = mono.exp(Var::Q);
            let sign = if blocks % 2 == 0 { 1 } else { -1 };
            let term = GaussianRational::from_int(sign)
                .mul(coeff)
                .mul(&pow_gaussian(&one_minus_q, na + nb + nc + nd - n as i32)?)
                .mul(&pow_gaussian(&q, ne)?)
                .mul(&pow_gaussian(&ac, nc)?)
                .mul(&pow_gaussian(&bd, nd)?)
                .mul(&pow_gaussian(&fa, n as i32 - na - nc)?)
                .mul(&pow_gaussian(&fb, n as i32 - nb - nd)?);
            rhs = rhs.add(&term);
        }
        rhs = rhs.mul(&pow_gaussian(&iu, -(n as i32))?);
        let mut poch = one.clone();
        let abcd = a.mul(&b).mul(&c).mul(&d);
        let mut qj = one.clone();
        for _ in 0..n {
            poch = poch.mul(&one.sub(&abcd.mul(&qj)));
            qj = qj.mul(&q);
        }
        let lhs = pow_gaussian(&GaussianRational::from_int(2), n as i32)?
            .mul(&poch)
            .mul(&moment_at_point(n, &pt)?);
        if !rhs.is_real() || rhs != lhs {
            return Ok(VerificationReport::fail(
                id,
                format!(
                    "point (a,b,c,d,q)=({},{},{},{},{}): tableau side {} vs moment side {}",
                    a.to_display(),
                    b.to_display(),
                    c.to_display(),
                    d.to_display(),
                    q.to_display(),
                    rhs.to_display(),
                    lhs.to_display()
                ),
            ));
        }
    }
    Ok(VerificationReport::pass(id))
}

/// Direction of an arrow in an [`AltTableau`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Arrow {
    Up,
    Left,
}

/// An arrow tableau on a Young shape inside a `rows × cols` box (empty rows
/// and columns count toward the size `rows + cols`). An up arrow points at
/// every cell above it in its column, a left arrow at every cell left of it
/// in its row; no arrow may point at another arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltTableau {
    rows: i64,
    cols: i64,
    shape: Vec<i64>,
    arrows: Vec<(i64, i64, Arrow)>,
}

impl AltTableau {
    pub fn new(
        rows: i64,
        cols: i64,
        shape: &[i64],
        arrows: &[(i64, i64, Arrow)],
    ) -> Result<AltTableau> {
        if rows < 0 || cols < 0 {
            return Err(AwError::InvalidParameter(
                "box dimensions must be nonnegative".to_string(),
            ));
        }
        if shape.len() as i64 > rows {
            return Err(AwError::InvalidStructure(format!(
                "shape has {} parts but only {rows} rows",
                shape.len()
            )));
        }
        let mut padded: Vec<i64> = shape.to_vec();
        padded.resize(rows as usize, 0);
        for w in padded.windows(2) {
            if w[0] < w[1] {
                return Err(AwError::InvalidStructure(
                    "shape parts must be weakly decreasing".to_string(),
                ));
            }
        }
        if padded.iter().any(|&p| p < 0 || p > cols) {
            return Err(AwError::InvalidStructure(format!(
                "shape parts must lie in 0..={cols}"
            )));
        }
        let mut sorted: Vec<(i64, i64, Arrow)> = arrows.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(AwError::InvalidStructure(format!(
                    "two arrows in cell ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(r, c, _) in &sorted {
            if r < 1 || r > rows || c < 1 || c > padded[(r - 1) as usize] {
                return Err(AwError::InvalidStructure(format!(
                    "arrow cell ({r}, {c}) is outside the shape"
                )));
            }
        }
        for &(r, c, arrow) in &sorted {
            for &(r2, c2, _) in &sorted {
                let pointed_at = match arrow {
                    Arrow::Up => c2 == c && r2 < r,
                    Arrow::Left => r2 == r && c2 < c,
                };
                if pointed_at {
                    return Err(AwError::InvalidStructure(format!(
                        "arrow at ({r}, {c}) points at the arrow at ({r2}, {c2})"
                    )));
                }
            }
        }
        Ok(AltTableau {
            rows,
            cols,
            shape: padded,
            arrows: sorted,
        })
    }

    pub fn rows(&self) -> i64 {
        self.rows
    }

    pub fn cols(&self) -> i64 {
        self.cols
    }

    /// Shape padded with zeros to `rows` parts.
    pub fn shape(&self) -> &[i64] {
        &self.shape
    }

    pub fn arrows(&self) -> &[(i64, i64, Arrow)] {
        &self.arrows
    }

    /// Size of the tableau: rows plus columns of the bounding box.
    pub fn size(&self) -> i64 {
        self.rows + self.cols
    }

    /// True when every cell of the shape either holds an arrow or is pointed
    /// at by one (no "free" cells).
    pub fn is_catalan(&self) -> bool {
        for r in 1..=self.rows {
            for c in 1..=self.shape[(r - 1) as usize] {
                let mut covered = false;
                for &(r2, c2, arrow) in &self.arrows {
                    if (r2, c2) == (r, c) {
                        covered = true;
                        break;
                    }
                    let points_here = match arrow {
                        Arrow::Up => c2 == c && r2 > r,
                        Arrow::Left => r2 == r && c2 > c,
                    };
                    if points_here {
                        covered = true;
                        break;
                    }
                }
                if !covered {
                    return false;
                }
            }
        }
        true
    }
}

/// Collapses a tableau with no α and no β letters to its arrow form: each
/// diagonal δ removes its row, each diagonal γ removes its column, and the
/// surviving non-diagonal letters become arrows (γ → up, δ → left) at their
/// surviving coordinates. A tableau of size `n` with `k` blocks maps to a
/// box with `n-k` rows and `k` columns.
pub fn to_alternative(t: &StaircaseTableau) -> Result<AltTableau> {
    let s = t.stats();
    if s.alphas != 0 || s.betas != 0 {
        return Err(AwError::InvalidParameter(
            "arrow form is defined only for tableaux with no alpha or beta letters".to_string(),
        ));
    }
    let n = t.n();
    let mut removed_row = vec![false; (n + 1) as usize];
    let mut removed_col = vec![false; (n + 1) as usize];
    for i in 1..=n {
        match t.letter_at(i, n + 1 - i) {
            Some(Letter::Delta) => removed_row[i as usize] = true,
            Some(Letter::Gamma) => removed_col[(n + 1 - i) as usize] = true,
            other => {
                return Err(AwError::InvalidStructure(format!(
                    "diagonal cell ({i}, {}) holds {other:?}, expected gamma or delta",
                    n + 1 - i
                )))
            }
        }
    }
    let mut new_row = vec![0i64; (n + 1) as usize];
    let mut new_col = vec![0i64; (n + 1) as usize];
    let mut rows = 0;
    for i in 1..=n {
        if !removed_row[i as usize] {
            rows += 1;
            new_row[i as usize] = rows;
        }
    }
    let mut cols = 0;
    for j in 1..=n {
        if !removed_col[j as usize] {
            cols += 1;
            new_col[j as usize] = cols;
        }
    }
    let mut shape = Vec::new();
    for i in 1..=n {
        if !removed_row[i as usize] {
            // Cells of surviving row i are columns 1..=n-i: its diagonal
            // column n+1-i was removed along with the diagonal γ.
            let len = (1..=(n - i)).filter(|&j| !removed_col[j as usize]).count() as i64;
            shape.push(len);
        }
    }
    let mut arrows = Vec::new();
    for (i, j, letter) in t.filled_cells() {
        if t.is_diagonal(i, j) {
            continue;
        }
        if removed_row[i as usize] || removed_col[j as usize] {
            return Err(AwError::InvalidStructure(format!(
                "letter at ({i}, {j}) sits in a removed row or column"
            )));
        }
        let arrow = match letter {
            Letter::Gamma => Arrow::Up,
            Letter::Delta => Arrow::Left,
            _ => unreachable!("alpha/beta already rejected"),
        };
        arrows.push((new_row[i as usize], new_col[j as usize], arrow));
    }
    AltTableau::new(rows, cols, &shape, &arrows)
}

/// Histogram over the Catalan family of size `n`: entry `k` counts the
/// members with exactly `k` blocks. Streams only γ/δ fillings.
pub fn catalan_blk_histogram(n: i64) -> Result<Vec<i64>> {
    if n < 0 || n > MAX_STAIRCASE_N {
        return Err(AwError::InvalidParameter(format!(
            "histogram is capped at size {MAX_STAIRCASE_N}, got {n}"
        )));
    }
    let mut hist = vec![0i64; (n + 1) as usize];
    let total = n * (n + 1) / 2;
    for_each_with_letters(n, &[Letter::Gamma, Letter::Delta], |t| {
        let s = t.stats();
        if s.gammas + s.deltas + s.q_labels == total {
            hist[s.blocks as usize] += 1;
        }
        Ok(())
    })?;
    Ok(hist)
}

/// Number of Catalan-family tableaux of size `n` whose arrow form has
/// exactly `k` rows (equivalently, `n-k` blocks).
pub fn catalan_rows_count(n: i64, k: i64) -> Result<i64> {
    let hist = catalan_blk_histogram(n)?;
    if k < 0 || k > n {
        return Ok(0);
    }
    Ok(hist[(n - k) as usize])
}

/// Checks every counting fact about the Catalan family of size `n`:
/// the total is the Catalan number `Cat(n+1)`; the block counts (and the
/// row counts of the arrow forms) follow Narayana numbers; the signed block
/// count collapses to a half-index Catalan value; and the alternating
/// Narayana sums match their closed form.
pub fn narayana_consistency(n: i64) -> Result<VerificationReport> {
    let id = format!("staircase/catalan-narayana/n={n}");
    let hist = catalan_blk_histogram(n)?;
    let total: i64 = hist.iter().sum();
    if total != catalan(n + 1) {
        return Ok(VerificationReport::fail(
            id,
            format!("family size {total}, expected Cat({}) = {}", n + 1, catalan(n + 1)),
        ));
    }
    for (k, &count) in hist.iter().enumerate() {
        let expected = narayana(n + 1, k as i64 + 1);
        if count != expected {
            return Ok(VerificationReport::fail(
                id,
                format!("{count} members with {k} blocks, expected N({}, {}) = {expected}", n + 1, k + 1),
            ));
        }
    }
    for j in 0..=n {
        let by_rows = catalan_rows_count(n, j)?;
        let expected = narayana(n + 1, j + 1);
        if by_rows != expected {
            return Ok(VerificationReport::fail(
                id,
                format!("{by_rows} members with {j} rows, expected N({}, {}) = {expected}", n + 1, j + 1),
            ));
        }
    }
    let signed: i64 = hist
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
        .sum();
    let expected_signed = match n.rem_euclid(4) {
        0 => catalan_half(n),
        2 => -catalan_half(n),
        _ => 0,
    };
    if signed != expected_signed {
        return Ok(VerificationReport::fail(
            id,
            format!("signed block count {signed}, expected {expected_signed}"),
        ));
    }
    for m in 1..=(n + 2) {
        let alt: i64 = (1..=m)
            .map(|k| if k % 2 == 0 { narayana(m, k) } else { -narayana(m, k) })
            .sum();
        let expected = if m % 2 == 0 {
            0
        } else {
            let c = catalan((m - 1) / 2);
            if ((m + 1) / 2) % 2 == 0 {
                c
            } else {
                -c
            }
        };
        if alt != expected {
            return Ok(VerificationReport::fail(
                id,
                format!("alternating Narayana sum at {m} is {alt}, expected {expected}"),
            ));
        }
    }
    Ok(VerificationReport::pass(id))
}

/// The moment μ_n scaled to a Laurent polynomial:
/// `2^n · (abcd; q)_n · μ_n(a, b, c, d; q)`.
pub fn scaled_moment_poly(n: i64) -> Result<MPoly> {
    if n < 0 {
        return Err(AwError::InvalidParameter(format!(
            "moment index must be nonnegative, got {n}"
        )));
    }
    let table = moment_table(&aw_spec(), n as u32)?;
    let qc = QCtx::q();
    let abcd = RatFunc::from_poly(MPoly::monomial(&[
        (Var::A, 1),
        (Var::B, 1),
        (Var::C, 1),
        (Var::D, 1),
    ]));
    let poch = qc.q_pochhammer(&abcd, n)?;
    let scaled = RatFunc::int(1 << n).mul(&poch).mul(table.moment(n as usize));
    scaled.to_polynomial()
}

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Checks that in `2^n (abcd; q)_n μ_n` the coefficient of
/// `a^n b^n c^n d^n q^{n(n-1)/2}` is the half-index Catalan value
/// (Cat(n/2) for even n, 0 for odd n).
pub fn highest_coeff_check(n: i64) -> Result<VerificationReport> {
    if n > MAX_MOMENT_CHECK_N {
        return Err(AwError::InvalidParameter(format!(
            "coefficient check is capped at size {MAX_MOMENT_CHECK_N}, got {n}"
        )));
    }
    let id = format!("staircase/top-coefficient/n={n}");
    let poly = scaled_moment_poly(n)?;
    let mono = Mono::var(Var::A, n as i32)
        .mul(&Mono::var(Var::B, n as i32))
        .mul(&Mono::var(Var::C, n as i32))
        .mul(&Mono::var(Var::D, n as i32))
        .mul(&Mono::var(Var::Q, binom2(n) as i32));
    let got = poly.coefficient(&mono);
    let expected = GaussianRational::from_int(catalan_half(n));
    Ok(VerificationReport::check(id, got == expected, || {
        format!("coefficient {}, expected {}", got.to_display(), expected.to_display())
    }))
}

/// Checks the two coefficients just below the top one, at the same power of
/// q: the coefficient of `a^{n-1} b^n c^n d^n` is `-Cat((n+1)/2)` (0 unless
/// n is odd) and the coefficient of `a^{n-1} b^{n-1} c^n d^n` is
/// `Cat((n+2)/2) - Cat(n/2)` (0 unless n is even).
pub fn next_coeff_check(n: i64) -> Result<VerificationReport> {
    if n > MAX_MOMENT_CHECK_N {
        return Err(AwError::InvalidParameter(format!(
            "coefficient check is capped at size {MAX_MOMENT_CHECK_N}, got {n}"
        )));
    }
    let id = format!("staircase/next-coefficients/n={n}");
    let poly = scaled_moment_poly(n)?;
    let qpow = Mono::var(Var::Q, binom2(n) as i32);
    let mono_one_down = Mono::var(Var::A, n as i32 - 1)
        .mul(&Mono::var(Var::B, n as i32))
        .mul(&Mono::var(Var::C, n as i32))
        .mul(&Mono::var(Var::D, n as i32))
        .mul(&qpow);
    let got_one = poly.coefficient(&mono_one_down);
    let expected_one = GaussianRational::from_int(-catalan_half(n + 1));
    if got_one != expected_one {
        return Ok(VerificationReport::fail(
            id,
            format!(
                "coefficient one step down is {}, expected {}",
                got_one.to_display(),
                expected_one.to_display()
            ),
        ));
    }
    let mono_two_down = Mono::var(Var::A, n as i32 - 1)
        .mul(&Mono::var(Var::B, n as i32 - 1))
        .mul(&Mono::var(Var::C, n as i32))
        .mul(&Mono::var(Var::D, n as i32))
        .mul(&qpow);
    let got_two = poly.coefficient(&mono_two_down);
    let expected_two = GaussianRational::from_int(catalan_half(n + 2) - catalan_half(n));
    Ok(VerificationReport::check(id, got_two == expected_two, || {
        format!(
            "coefficient two steps down is {}, expected {}",
            got_two.to_display(),
            expected_two.to_display()
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn figure_tableau() -> StaircaseTableau {
        StaircaseTableau::new(
            7,
            &[
                (1, 3, Letter::Beta),
                (1, 7, Letter::Gamma),
                (2, 2, Letter::Gamma),
                (2, 5, Letter::Alpha),
                (2, 6, Letter::Alpha),
                (3, 5, Letter::Delta),
                (4, 2, Letter::Delta),
                (4, 4, Letter::Gamma),
                (5, 3, Letter::Beta),
                (6, 2, Letter::Delta),
                (7, 1, Letter::Beta),
            ],
        )
        .unwrap()
    }

    #[test]
    fn construction_rejects_malformed_input() {
        // Missing diagonal letter.
        assert!(StaircaseTableau::new(2, &[(1, 2, Letter::Alpha)]).is_err());
        // Out of range cell.
        assert!(StaircaseTableau::new(2, &[(2, 2, Letter::Alpha)]).is_err());
        // Duplicate cell.
        assert!(StaircaseTableau::new(
            1,
            &[(1, 1, Letter::Alpha), (1, 1, Letter::Beta)]
        )
        .is_err());
        // Letter above a gamma.
        assert!(StaircaseTableau::new(
            2,
            &[
                (1, 1, Letter::Alpha),
                (1, 2, Letter::Alpha),
                (2, 1, Letter::Gamma)
            ]
        )
        .is_err());
        // Letter left of a delta.
        assert!(StaircaseTableau::new(
            2,
            &[
                (1, 1, Letter::Alpha),
                (1, 2, Letter::Delta),
                (2, 1, Letter::Beta)
            ]
        )
        .is_err());
        // Negative size.
        assert!(StaircaseTableau::new(-1, &[]).is_err());
        // A valid filling passes.
        assert!(StaircaseTableau::new(
            2,
            &[(1, 2, Letter::Delta), (2, 1, Letter::Gamma)]
        )
        .is_ok());
    }

    #[test]
    fn figure_tableau_statistics_golden() {
        let t = figure_tableau();
        let s = t.stats();
        assert_eq!(
            s,
            TableauStats {
                blocks: 3,
                alphas: 2,
                betas: 3,
                gammas: 3,
                deltas: 3,
                q_labels: 11,
            }
        );
        // Row-by-row q-label counts.
        let labels = t.labels();
        let per_row: Vec<i64> = labels
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|l| **l == Some(EmptyLabel::Q))
                    .count() as i64
            })
            .collect();
        assert_eq!(per_row, vec![1, 3, 4, 2, 0, 1, 0]);
        assert_eq!(t.empty_count(), 17);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.starts_with(r#"{"n":7,"rows":["#));
        assert!(json.contains("\"..b...g\""));
        assert!(json.contains("\"labels\""));
    }

    #[test]
    fn enumeration_counts_match_the_product_formula() {
        for n in 0..=5i64 {
            let mut count = 0i64;
            for_each_staircase(n, |_| {
                count += 1;
                Ok(())
            })
            .unwrap();
            let expected = 4i64.pow(n as u32) * (1..=n).product::<i64>().max(1);
            assert_eq!(count, expected, "size {n}");
        }
        let listed = enumerate_staircase(3).unwrap();
        assert_eq!(listed.len(), 4 * 4 * 4 * 6);
        assert!(listed.iter().all(|t| t.n() == 3));
    }

    #[test]
    fn every_tableau_labels_completely_and_is_valid() {
        for n in 0..=4i64 {
            for_each_staircase(n, |t| {
                let labels = t.labels();
                let labelled: i64 = labels
                    .iter()
                    .map(|row| row.iter().filter(|l| l.is_some()).count() as i64)
                    .sum();
                assert_eq!(labelled, t.empty_count());
                // Enumerated tableaux satisfy the constructor's validation.
                let rebuilt = StaircaseTableau::new(t.n(), &t.filled_cells()).unwrap();
                assert_eq!(&rebuilt, t);
                Ok(())
            })
            .unwrap();
        }
    }

    #[test]
    fn partition_polynomial_small_cases() {
        assert!(z_partition(0).unwrap().is_one());
        let z1 = z_partition(1).unwrap();
        let expected = MPoly::monomial(&[(Var::Y, 1), (Var::A, 1)])
            .add(&MPoly::var(Var::B))
            .add(&MPoly::var(Var::C))
            .add(&MPoly::monomial(&[(Var::Y, 1), (Var::D, 1)]));
        assert_eq!(z1, expected);
        let z2 = z_partition(2).unwrap();
        assert_eq!(
            z2.coefficient_sum(),
            GaussianRational::from_int(32),
            "all-ones evaluation counts the tableaux"
        );
        assert!(z_partition(MAX_STAIRCASE_N + 1).is_err());
    }

    #[test]
    fn measure_moment_identity_holds_at_rational_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 0..=5i64 {
            let report = measure_moment_check(n, 5, &mut rng).unwrap();
            assert!(report.is_pass(), "size {n}: {:?}", report.witness);
        }
    }

    #[test]
    fn cleared_moment_identity_holds_at_rational_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in 0..=5i64 {
            let report = real_part_moment_check(n, 5, &mut rng).unwrap();
            assert!(report.is_pass(), "size {n}: {:?}", report.witness);
        }
    }

    #[test]
    fn moment_identities_hold_at_the_largest_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let report = measure_moment_check(MAX_MOMENT_CHECK_N, 2, &mut rng).unwrap();
        assert!(report.is_pass(), "{:?}", report.witness);
        let report = real_part_moment_check(MAX_MOMENT_CHECK_N, 2, &mut rng).unwrap();
        assert!(report.is_pass(), "{:?}", report.witness);
    }

    fn figure_arrow_staircase() -> StaircaseTableau {
        StaircaseTableau::new(
            9,
            &[
                (1, 9, Letter::Delta),
                (2, 7, Letter::Delta),
                (2, 8, Letter::Gamma),
                (3, 7, Letter::Delta),
                (4, 1, Letter::Delta),
                (4, 2, Letter::Gamma),
                (4, 5, Letter::Gamma),
                (4, 6, Letter::Gamma),
                (5, 5, Letter::Delta),
                (6, 2, Letter::Delta),
                (6, 4, Letter::Gamma),
                (7, 2, Letter::Delta),
                (7, 3, Letter::Gamma),
                (8, 2, Letter::Delta),
                (9, 1, Letter::Delta),
            ],
        )
        .unwrap()
    }

    #[test]
    fn figure_arrow_tableau_golden() {
        let t = figure_arrow_staircase();
        let s = t.stats();
        assert_eq!(s.blocks, 5);
        assert_eq!((s.alphas, s.betas), (0, 0));
        let alt = to_alternative(&t).unwrap();
        assert_eq!(alt.rows(), 4);
        assert_eq!(alt.cols(), 5);
        assert_eq!(alt.size(), 9);
        assert_eq!(alt.shape(), &[4, 3, 2, 2]);
        assert_eq!(
            alt.arrows(),
            &[
                (1, 4, Arrow::Left),
                (2, 1, Arrow::Left),
                (2, 2, Arrow::Up),
                (2, 3, Arrow::Up),
                (3, 2, Arrow::Left),
                (4, 2, Arrow::Left),
            ]
        );
        assert!(alt.is_catalan());
    }

    #[test]
    fn arrow_form_requires_gamma_delta_only() {
        let t = StaircaseTableau::new(1, &[(1, 1, Letter::Alpha)]).unwrap();
        assert!(to_alternative(&t).is_err());
        // All-delta diagonal: no surviving rows, n columns.
        let all_delta = StaircaseTableau::new(
            3,
            &[(1, 3, Letter::Delta), (2, 2, Letter::Delta), (3, 1, Letter::Delta)],
        )
        .unwrap();
        let alt = to_alternative(&all_delta).unwrap();
        assert_eq!((alt.rows(), alt.cols()), (0, 3));
        assert!(alt.is_catalan());
        // All-gamma diagonal: n empty rows, no columns.
        let all_gamma = StaircaseTableau::new(
            3,
            &[(1, 3, Letter::Gamma), (2, 2, Letter::Gamma), (3, 1, Letter::Gamma)],
        )
        .unwrap();
        let alt = to_alternative(&all_gamma).unwrap();
        assert_eq!((alt.rows(), alt.cols()), (3, 0));
        assert_eq!(alt.shape(), &[0, 0, 0]);
        assert!(alt.is_catalan());
    }

    #[test]
    fn arrow_tableau_validation_rejects_pointing_conflicts() {
        // Up arrow below another arrow in the same column.
        assert!(AltTableau::new(
            2,
            1,
            &[1, 1],
            &[(1, 1, Arrow::Left), (2, 1, Arrow::Up)]
        )
        .is_err());
        // Left arrow right of another arrow in the same row.
        assert!(AltTableau::new(
            1,
            2,
            &[2],
            &[(1, 1, Arrow::Up), (1, 2, Arrow::Left)]
        )
        .is_err());
        // Arrow outside the shape.
        assert!(AltTableau::new(2, 2, &[2, 1], &[(2, 2, Arrow::Up)]).is_err());
        // Increasing shape.
        assert!(AltTableau::new(2, 2, &[1, 2], &[]).is_err());
    }

    #[test]
    fn catalan_membership_matches_the_arrow_criterion() {
        for n in 0..=4i64 {
            let total = n * (n + 1) / 2;
            for_each_with_letters(n, &[Letter::Gamma, Letter::Delta], |t| {
                let s = t.stats();
                let by_stats = s.gammas + s.deltas + s.q_labels == total;
                assert_eq!(by_stats, s.is_catalan_family(n));
                let alt = to_alternative(t).unwrap();
                assert_eq!(
                    by_stats,
                    alt.is_catalan(),
                    "disagreement at {:?}",
                    t.filled_cells()
                );
                assert_eq!(alt.size(), n);
                assert_eq!(alt.cols(), s.blocks);
                Ok(())
            })
            .unwrap();
        }
    }

    #[test]
    fn catalan_family_counts_follow_narayana_numbers() {
        for n in 0..=6i64 {
            let hist = catalan_blk_histogram(n).unwrap();
            assert_eq!(hist.iter().sum::<i64>(), catalan(n + 1), "size {n}");
            let report = narayana_consistency(n).unwrap();
            assert!(report.is_pass(), "size {n}: {:?}", report.witness);
        }
        assert_eq!(catalan_blk_histogram(2).unwrap(), vec![1, 3, 1]);
        assert_eq!(catalan_rows_count(2, 1).unwrap(), 3);
        assert_eq!(catalan_rows_count(2, 5).unwrap(), 0);
    }

    #[test]
    fn scaled_moment_coefficients_are_catalan_values() {
        // Direct golden values at n = 2.
        let poly = scaled_moment_poly(2).unwrap();
        let coeff = |ea: i32, eb: i32| {
            poly.coefficient(
                &Mono::var(Var::A, ea)
                    .mul(&Mono::var(Var::B, eb))
                    .mul(&Mono::var(Var::C, 2))
                    .mul(&Mono::var(Var::D, 2))
                    .mul(&Mono::var(Var::Q, 1)),
            )
        };
        assert_eq!(coeff(2, 2), GaussianRational::from_int(1));
        assert_eq!(coeff(1, 2), GaussianRational::from_int(0));
        assert_eq!(coeff(1, 1), GaussianRational::from_int(1));
        for n in 0..=MAX_MOMENT_CHECK_N {
            let report = highest_coeff_check(n).unwrap();
            assert!(report.is_pass(), "size {n}: {:?}", report.witness);
            let report = next_coeff_check(n).unwrap();
            assert!(report.is_pass(), "size {n}: {:?}", report.witness);
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(for_each_staircase(MAX_STAIRCASE_N + 1, |_| Ok(())).is_err());
        assert!(for_each_staircase(-1, |_| Ok(())).is_err());
        assert!(enumerate_staircase(MAX_STAIRCASE_LIST_N + 1).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(measure_moment_check(MAX_MOMENT_CHECK_N + 1, 1, &mut rng).is_err());
        assert!(real_part_moment_check(MAX_MOMENT_CHECK_N + 1, 1, &mut rng).is_err());
        assert!(highest_coeff_check(MAX_MOMENT_CHECK_N + 1).is_err());
        assert!(next_coeff_check(MAX_MOMENT_CHECK_N + 1).is_err());
    }
}
