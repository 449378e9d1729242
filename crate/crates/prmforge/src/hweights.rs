//! Generalized Hamming weights and maximum zero counts by exact subspace
//! search, plus randomized lower-bound sampling and the Wei checks.
//!
//! The search engine maximizes, over r-dimensional subspaces of the row
//! space of a value matrix V (k rows of evaluations, one column per point),
//! the number of columns at which the whole subspace vanishes. Two exact
//! routes are used:
//!
//! * streaming: every subspace once, as a canonical reduced-row-echelon
//!   basis (pivot patterns in colexicographic order, free entries counting
//!   up) — used while [k choose r]_q * n stays under the operation cap;
//! * candidate branch-and-bound: every nonzero member of a maximizing
//!   subspace vanishes on its common zero set, so any basis consists of
//!   codewords with at least that many zeros. A greedy multi-start seed
//!   fixes a lower bound, the (few) codewords above it are enumerated, and
//!   a depth-first search over independent r-subsets of them either finds
//!   an improvement or proves the seed optimal.
//!
//! Both routes return the same value; ties on the witness are broken toward
//! the lexicographically smallest canonical (RREF) basis.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{CodeKind, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::{enumerate_monomials, evaluation_matrix, MonomialMode};
use crate::pspace::{
    enumerate_affine_points, enumerate_projective_points, unrank_projective_point,
};

/// Number of r-dimensional subspaces of GF(q)^k.
pub fn gaussian_binomial(k: u64, r: u64, q: u64) -> u128 {
    if r > k {
        return 0;
    }
    let mut acc: u128 = 1;
    let q = q as u128;
    for i in 0..r {
        acc = acc * (q.pow((k - i) as u32) - 1) / (q.pow((i + 1) as u32) - 1);
    }
    acc
}

/// r-subsets of {0..k-1} in colexicographic order.
pub fn pivot_patterns(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    // colex: order by largest element, then by the colex order of the rest
    fn colex(k: usize, r: usize, out: &mut Vec<Vec<usize>>, suffix: &mut Vec<usize>) {
        if r == 0 {
            let mut pat = suffix.clone();
            pat.reverse();
            out.push(pat);
            return;
        }
        for top in r - 1..k {
            if suffix.last().is_some_and(|&s| top >= s) {
                continue;
            }
            suffix.push(top);
            colex(top, r - 1, out, suffix);
            suffix.pop();
        }
    }
    colex(k, r, &mut out, &mut cur);
    out
}

/// Free (non-pivot, non-forced-zero) positions of the canonical RREF form
/// for a pivot pattern, in row-major order.
fn free_positions(k: usize, pattern: &[usize]) -> Vec<(usize, usize)> {
    let mut free = Vec::new();
    for (i, &p) in pattern.iter().enumerate() {
        for j in p + 1..k {
            if !pattern.contains(&j) {
                free.push((i, j));
            }
        }
    }
    free
}

/// Iterator over the canonical RREF bases for one pivot pattern.
pub struct PatternSubspaces<'a> {
    field: &'a FieldSpec,
    k: usize,
    pattern: Vec<usize>,
    free: Vec<(usize, usize)>,
    vals: Vec<Elem>,
    done: bool,
}

impl<'a> PatternSubspaces<'a> {
    pub fn new(field: &'a FieldSpec, k: usize, pattern: Vec<usize>) -> Self {
        let free = free_positions(k, &pattern);
        PatternSubspaces {
            field,
            k,
            vals: vec![0; free.len()],
            pattern,
            free,
            done: false,
        }
    }

    pub fn count(&self) -> u128 {
        (self.field.q as u128).pow(self.free.len() as u32)
    }

    fn materialize(&self) -> Matrix {
        let r = self.pattern.len();
        let mut m = Matrix::zeros(r, self.k);
        for (i, &p) in self.pattern.iter().enumerate() {
            m.set(i, p, 1);
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.vals) {
            m.set(i, j, v);
        }
        m
    }
}

impl Iterator for PatternSubspaces<'_> {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        let out = self.materialize();
        // count up, last free position fastest
        let q = self.field.q;
        let mut pos = self.vals.len();
        while pos > 0 {
            self.vals[pos - 1] += 1;
            if self.vals[pos - 1] < q {
                break;
            }
            self.vals[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            self.done = true;
        }
        Some(out)
    }
}

/// Stream every r-dimensional subspace of GF(q)^k exactly once as a
/// canonical RREF basis.
pub struct SubspaceIter<'a> {
    field: &'a FieldSpec,
    k: usize,
    patterns: std::vec::IntoIter<Vec<usize>>,
    current: Option<PatternSubspaces<'a>>,
}

impl<'a> SubspaceIter<'a> {
    fn new(field: &'a FieldSpec, k: usize, r: usize) -> Self {
        let mut patterns = pivot_patterns(k, r).into_iter();
        let current = patterns
            .next()
            .map(|p| PatternSubspaces::new(field, k, p));
        SubspaceIter {
            field,
            k,
            patterns,
            current,
        }
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        loop {
            let cur = self.current.as_mut()?;
            if let Some(m) = cur.next() {
                return Some(m);
            }
            self.current = self
                .patterns
                .next()
                .map(|p| PatternSubspaces::new(self.field, self.k, p));
        }
    }
}

pub fn enumerate_subspaces<'a>(
    field: &'a FieldSpec,
    k: usize,
    r: usize,
    cap: u128,
) -> Result<SubspaceIter<'a>> {
    assert!(r >= 1 && r <= k, "need 1 <= r <= k");
    let count = gaussian_binomial(k as u64, r as u64, field.q as u64);
    if count > cap {
        return Err(Error::SizeOverflow { needed: count, cap });
    }
    Ok(SubspaceIter::new(field, k, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized { trials: u64 },
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchMode::Exhaustive => write!(f, "exhaustive"),
            SearchMode::Randomized { trials } => write!(f, "randomized({trials})"),
        }
    }
}

/// Extremal value with a reproducible witness: an r x k coefficient matrix
/// (canonical RREF) whose rows span the extremal subspace.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub value: u64,
    pub witness: Matrix,
    pub mode: SearchMode,
    pub elapsed_sec: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Streaming is used while [k choose r]_q * n stays at or below this.
    pub op_cap: u128,
    /// Hard cap on codeword enumeration for the branch-and-bound route.
    pub codeword_cap: u128,
    /// Greedy restarts used to seed the branch-and-bound route.
    pub seed_restarts: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            op_cap: 10_000_000_000,
            codeword_cap: 1 << 26,
            seed_restarts: 16,
        }
    }
}

fn mask_words(n: usize) -> usize {
    n.div_ceil(64)
}

/// Zero mask of the combination sum(coeffs[j] * rows[j]) over the columns.
fn combination_zero_mask(
    field: &FieldSpec,
    coeffs: &[Elem],
    rows: &Matrix,
    scratch: &mut Vec<Elem>,
    mask: &mut Vec<u64>,
) -> u32 {
    let n = rows.cols;
    scratch.clear();
    scratch.resize(n, 0);
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let row = rows.row(j);
        for (acc, &v) in scratch.iter_mut().zip(row) {
            *acc = field.add(*acc, field.mul(c, v));
        }
    }
    mask.clear();
    mask.resize(mask_words(n), 0);
    let mut zc = 0u32;
    for (t, &v) in scratch.iter().enumerate() {
        if v == 0 {
            mask[t / 64] |= 1u64 << (t % 64);
            zc += 1;
        }
    }
    zc
}

fn and_popcount(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

/// Common-zero count of the subspace spanned by the rows of `basis`
/// (coefficients w.r.t. the rows of V).
pub fn subspace_zero_count(field: &FieldSpec, basis: &Matrix, value_rows: &Matrix) -> u64 {
    let mut scratch = Vec::new();
    let mut mask = vec![u64::MAX; mask_words(value_rows.cols)];
    let mut tmp = Vec::new();
    for i in 0..basis.rows {
        combination_zero_mask(field, basis.row(i), value_rows, &mut scratch, &mut tmp);
        for (m, t) in mask.iter_mut().zip(&tmp) {
            *m &= t;
        }
    }
    // clear padding bits beyond n
    let n = value_rows.cols;
    if !n.is_multiple_of(64) {
        if let Some(last) = mask.last_mut() {
            *last &= (1u64 << (n % 64)) - 1;
        }
    }
    mask.iter().map(|w| w.count_ones() as u64).sum()
}

fn better(value: u64, witness: &Matrix, best: &Option<(u64, Matrix)>) -> bool {
    match best {
        None => true,
        Some((bv, bw)) => value > *bv || (value == *bv && witness.data < bw.data),
    }
}

fn streaming_search(
    field: &FieldSpec,
    value_rows: &Matrix,
    r: usize,
) -> (u64, Matrix) {
    let k = value_rows.rows;
    let patterns = pivot_patterns(k, r);
    let best = patterns
        .into_par_iter()
        .map(|pattern| {
            let mut local: Option<(u64, Matrix)> = None;
            let mut scratch = Vec::new();
            let mut tmp = Vec::new();
            let mut acc = vec![0u64; mask_words(value_rows.cols)];
            for basis in PatternSubspaces::new(field, k, pattern) {
                for w in acc.iter_mut() {
                    *w = u64::MAX;
                }
                for i in 0..r {
                    combination_zero_mask(field, basis.row(i), value_rows, &mut scratch, &mut tmp);
                    for (m, t) in acc.iter_mut().zip(&tmp) {
                        *m &= t;
                    }
                }
                let n = value_rows.cols;
                if !n.is_multiple_of(64) {
                    if let Some(last) = acc.last_mut() {
                        *last &= (1u64 << (n % 64)) - 1;
                    }
                }
                let value: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
                if better(value, &basis, &local) {
                    local = Some((value, basis));
                }
            }
            local
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(x), Some(y)) => {
                    if better(y.0, &y.1, &Some(x.clone())) {
                        Some(y)
                    } else {
                        Some(x)
                    }
                }
            },
        );
    best.expect("at least one subspace")
}

/// Echelon-based independence bookkeeping over GF(q)^k.
#[derive(Clone)]
struct Echelon<'a> {
    field: &'a FieldSpec,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl<'a> Echelon<'a> {
    fn new(field: &'a FieldSpec) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = self.field.sub(*x, self.field.mul(c, y));
                }
            }
        }
        v
    }

    /// Insert if independent; returns false (unchanged) when v is in the span.
    fn insert(&mut self, v: &[Elem]) -> bool {
        let red = self.reduce(v);
        match red.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = self.field.inv(red[p]).expect("nonzero pivot");
                let row: Vec<Elem> = red.iter().map(|&x| self.field.mul(inv, x)).collect();
                self.rows.push((p, row));
                true
            }
        }
    }
}

struct Codewords {
    masks: Vec<u64>,
    words: usize,
    zero_counts: Vec<u32>,
}

impl Codewords {
    fn mask(&self, idx: usize) -> &[u64] {
        &self.masks[idx * self.words..(idx + 1) * self.words]
    }
}

/// Zero masks of every projective codeword (normalized coefficient vector).
fn scan_codewords(field: &FieldSpec, value_rows: &Matrix, count: u64) -> Codewords {
    let k = value_rows.rows;
    let words = mask_words(value_rows.cols);
    let results: Vec<(Vec<u64>, u32)> = (0..count)
        .into_par_iter()
        .map(|idx| {
            let coeffs = unrank_projective_point(field, k - 1, idx);
            let mut scratch = Vec::new();
            let mut mask = Vec::new();
            let zc = combination_zero_mask(field, &coeffs, value_rows, &mut scratch, &mut mask);
            (mask, zc)
        })
        .collect();
    let mut masks = Vec::with_capacity(results.len() * words);
    let mut zero_counts = Vec::with_capacity(results.len());
    for (m, z) in results {
        masks.extend_from_slice(&m);
        zero_counts.push(z);
    }
    Codewords {
        masks,
        words,
        zero_counts,
    }
}

/// Greedy construction of an r-dimensional subspace: start from a given
/// codeword, then repeatedly add the independent codeword that keeps the
/// most common zeros (ties toward the smallest index).
fn greedy_from(
    field: &FieldSpec,
    value_rows: &Matrix,
    cw: &Codewords,
    r: usize,
    start: usize,
) -> (u64, Vec<u64>) {
    let k = value_rows.rows;
    let count = cw.zero_counts.len();
    let mut chosen: Vec<u64> = vec![start as u64];
    let mut echelon = Echelon::new(field);
    echelon.insert(&unrank_projective_point(field, k - 1, start as u64));
    let mut mask = cw.mask(start).to_vec();
    while chosen.len() < r {
        let pcs: Vec<u32> = (0..count)
            .into_par_iter()
            .map(|i| and_popcount(&mask, cw.mask(i)))
            .collect();
        let mut order: Vec<u32> = (0..count as u32).collect();
        // walk candidates in descending common-zero order without a full sort
        let mut max_pc = *pcs.iter().max().unwrap();
        let mut picked = None;
        'outer: loop {
            for &i in order.iter() {
                if pcs[i as usize] != max_pc {
                    continue;
                }
                let coeffs = unrank_projective_point(field, k - 1, i as u64);
                if echelon.insert(&coeffs) {
                    picked = Some(i as u64);
                    break 'outer;
                }
            }
            if max_pc == 0 {
                break;
            }
            max_pc -= 1;
        }
        order.clear();
        let picked = picked.expect("an independent codeword always exists");
        chosen.push(picked);
        let pm = cw.mask(picked as usize);
        for (m, &w) in mask.iter_mut().zip(pm) {
            *m &= w;
        }
    }
    let value = mask.iter().map(|w| w.count_ones() as u64).sum();
    (value, chosen)
}

fn rref_of_indices(field: &FieldSpec, k: usize, indices: &[u64]) -> Matrix {
    let rows: Vec<Vec<Elem>> = indices
        .iter()
        .map(|&i| unrank_projective_point(field, k - 1, i))
        .collect();
    Matrix::from_rows(rows).row_basis(field)
}

fn branch_and_bound_search(
    field: &FieldSpec,
    value_rows: &Matrix,
    r: usize,
    opts: &SearchOptions,
) -> Result<(u64, Matrix)> {
    let k = value_rows.rows;
    let n = value_rows.cols as u128;
    let count = gaussian_binomial(k as u64, 1, field.q as u64);
    if count > opts.codeword_cap || count * n > opts.op_cap * 64 {
        return Err(Error::SizeOverflow {
            needed: count * n,
            cap: opts.op_cap * 64,
        });
    }
    let count = count as u64;
    let cw = scan_codewords(field, value_rows, count);

    // multi-start greedy seed from the highest-zero-count codewords
    let mut starts: Vec<usize> = (0..count as usize).collect();
    starts.sort_by(|&a, &b| cw.zero_counts[b].cmp(&cw.zero_counts[a]).then(a.cmp(&b)));
    starts.truncate(opts.seed_restarts.max(1));
    let mut seed: Option<(u64, Matrix)> = None;
    for &s in &starts {
        let (value, chosen) = greedy_from(field, value_rows, &cw, r, s);
        let witness = rref_of_indices(field, k, &chosen);
        if better(value, &witness, &seed) {
            seed = Some((value, witness));
        }
    }
    let (seed_value, seed_witness) = seed.expect("greedy seed");
    if seed_value >= value_rows.cols as u64 {
        return Ok((seed_value, seed_witness));
    }

    // any subspace beating the seed has every nonzero member (hence any
    // basis) among the codewords with more zeros than the seed value
    let threshold = seed_value as u32 + 1;
    let mut cands: Vec<usize> = (0..count as usize)
        .filter(|&i| cw.zero_counts[i] >= threshold)
        .collect();
    cands.sort_by(|&a, &b| cw.zero_counts[b].cmp(&cw.zero_counts[a]).then(a.cmp(&b)));
    if cands.len() < r {
        return Ok((seed_value, seed_witness));
    }
    let cand_coeffs: Vec<Vec<Elem>> = cands
        .iter()
        .map(|&i| unrank_projective_point(field, k - 1, i as u64))
        .collect();

    struct Ctx<'a> {
        field: &'a FieldSpec,
        cw: &'a Codewords,
        cands: &'a [usize],
        coeffs: &'a [Vec<Elem>],
        r: usize,
        seed_value: u64,
    }

    fn dfs(
        ctx: &Ctx,
        pos_start: usize,
        mask: &[u64],
        echelon: &Echelon,
        chosen: &mut Vec<u64>,
        best: &mut Option<(u64, Matrix)>,
    ) {
        if chosen.len() == ctx.r {
            let value: u64 = mask.iter().map(|w| w.count_ones() as u64).sum();
            let witness = rref_of_indices(ctx.field, ctx.coeffs[0].len(), chosen);
            if better(value, &witness, best) {
                *best = Some((value, witness));
            }
            return;
        }
        for pos in pos_start..ctx.cands.len() {
            if ctx.cands.len() - pos < ctx.r - chosen.len() {
                break;
            }
            let cm = ctx.cw.mask(ctx.cands[pos]);
            let pc = and_popcount(mask, cm);
            if (pc as u64) <= ctx.seed_value {
                continue;
            }
            let mut ech = echelon.clone();
            if !ech.insert(&ctx.coeffs[pos]) {
                continue;
            }
            let new_mask: Vec<u64> = mask.iter().zip(cm).map(|(a, b)| a & b).collect();
            chosen.push(ctx.cands[pos] as u64);
            dfs(ctx, pos + 1, &new_mask, &ech, chosen, best);
            chosen.pop();
        }
    }

    let ctx = Ctx {
        field,
        cw: &cw,
        cands: &cands,
        coeffs: &cand_coeffs,
        r,
        seed_value,
    };
    let improved = (0..cands.len())
        .into_par_iter()
        .map(|first| {
            let cm = ctx.cw.mask(ctx.cands[first]);
            if (cm.iter().map(|w| w.count_ones() as u64).sum::<u64>()) <= ctx.seed_value {
                return None;
            }
            let mut ech = Echelon::new(field);
            ech.insert(&ctx.coeffs[first]);
            let mut chosen = vec![ctx.cands[first] as u64];
            let mut best = None;
            dfs(&ctx, first + 1, cm, &ech, &mut chosen, &mut best);
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(x), Some(y)) => {
                    if better(y.0, &y.1, &Some(x.clone())) {
                        Some(y)
                    } else {
                        Some(x)
                    }
                }
            },
        );
    match improved {
        Some((v, w)) if v > seed_value => Ok((v, w)),
        _ => Ok((seed_value, seed_witness)),
    }
}

/// Exact maximum, over r-dimensional subspaces of the row space of
/// `value_rows`, of the number of columns where the subspace vanishes.
/// The rows of `value_rows` must be linearly independent.
pub fn max_common_zeros(
    field: &FieldSpec,
    value_rows: &Matrix,
    r: usize,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let k = value_rows.rows;
    if r < 1 || r > k {
        return Err(Error::RankOutOfRange {
            r: r as u128,
            max: k as u128,
        });
    }
    let start = Instant::now();
    let n = value_rows.cols as u128;
    let subspaces = gaussian_binomial(k as u64, r as u64, field.q as u64);
    let (value, witness) = if subspaces * n <= opts.op_cap {
        streaming_search(field, value_rows, r)
    } else {
        branch_and_bound_search(field, value_rows, r, opts)?
    };
    debug_assert_eq!(subspace_zero_count(field, &witness, value_rows), value);
    Ok(SearchResult {
        value,
        witness,
        mode: SearchMode::Exhaustive,
        elapsed_sec: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErMode {
    Projective,
    Affine,
}

/// Value matrix of the monomial basis for e_r searches: one row per basis
/// monomial, one column per point.
pub fn er_value_matrix(field: &FieldSpec, d: u32, m: usize, mode: ErMode) -> Result<Matrix> {
    if d < 1 || d as u64 >= field.q as u64 {
        return Err(Error::HypothesisViolated(format!(
            "independent monomial evaluations need 1 <= d < q (d = {d}, q = {})",
            field.q
        )));
    }
    match mode {
        ErMode::Projective => {
            let pts = enumerate_projective_points(field, m)?;
            let basis = enumerate_monomials(m, d, MonomialMode::Homogeneous);
            evaluation_matrix(&basis, &pts, field)
        }
        ErMode::Affine => {
            let pts = enumerate_affine_points(field, m)?;
            let basis = enumerate_monomials(m, d, MonomialMode::Bounded);
            evaluation_matrix(&basis, &pts, field)
        }
    }
}

/// Exact e_r(d, m) (projective) or e_r^Aff(d, m) (affine) with a witness.
pub fn er_exhaustive(
    field: &FieldSpec,
    d: u32,
    m: usize,
    r: usize,
    mode: ErMode,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let v = er_value_matrix(field, d, m, mode)?;
    max_common_zeros(field, &v, r, opts)
}

/// Best value over `trials` uniformly sampled r-dimensional subspaces
/// (projective). A lower bound on e_r(d, m); reproducible for a fixed seed.
pub fn er_random_search(
    field: &FieldSpec,
    d: u32,
    m: usize,
    r: usize,
    trials: u64,
    seed: u64,
) -> Result<SearchResult> {
    let v = er_value_matrix(field, d, m, ErMode::Projective)?;
    let k = v.rows;
    if r < 1 || r > k {
        return Err(Error::RankOutOfRange {
            r: r as u128,
            max: k as u128,
        });
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(u64, Matrix)> = None;
    for _ in 0..trials {
        // rejection sampling until the matrix has rank r
        let basis = loop {
            let rows: Vec<Vec<Elem>> = (0..r)
                .map(|_| (0..k).map(|_| rng.gen_range(0..field.q)).collect())
                .collect();
            let m = Matrix::from_rows(rows);
            let b = m.row_basis(field);
            if b.rows == r {
                break b;
            }
        };
        let value = subspace_zero_count(field, &basis, &v);
        if better(value, &basis, &best) {
            best = Some((value, basis));
        }
    }
    let (value, witness) = best.expect("trials >= 1");
    Ok(SearchResult {
        value,
        witness,
        mode: SearchMode::Randomized { trials },
        elapsed_sec: start.elapsed().as_secs_f64(),
    })
}

/// d_r = n - e_r (and back), the projective-system correspondence.
pub fn ghw_from_er(n: u64, er: u64) -> u64 {
    n - er
}

pub fn er_from_ghw(n: u64, dr: u64) -> u64 {
    n - dr
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HierarchyMethod {
    Exhaustive,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HierarchyMode {
    Exhaustive,
    Formula,
    Hybrid,
}

#[derive(Debug, Clone)]
pub struct WeightHierarchy {
    pub label: String,
    pub weights: Vec<u64>,
    pub mode: HierarchyMode,
}

/// Full hierarchy d_1..d_k: d_r = n minus the maximum number of zero
/// coordinates over r-dimensional subcodes. In Auto mode, infeasible ranks
/// of PRM codes with d < q-1 fall back to the terminal formula d_{k-s} = n-s.
pub fn weight_hierarchy(
    code: &LinearCode,
    method: HierarchyMethod,
    opts: &SearchOptions,
) -> Result<WeightHierarchy> {
    let n = code.n as u64;
    let mut weights = Vec::with_capacity(code.k);
    let mut used_formula = false;
    for r in 1..=code.k {
        match max_common_zeros(&code.field, &code.generator, r, opts) {
            Ok(res) => weights.push(n - res.value),
            Err(Error::SizeOverflow { needed, cap }) if method == HierarchyMethod::Auto => {
                let fallback = match code.kind {
                    CodeKind::Prm { d, .. }
                        if (d as u64) < code.field.q as u64 - 1 && code.k - r <= d as usize =>
                    {
                        Some(n - (code.k - r) as u64)
                    }
                    _ => None,
                };
                match fallback {
                    Some(w) => {
                        weights.push(w);
                        used_formula = true;
                    }
                    None => return Err(Error::SizeOverflow { needed, cap }),
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(WeightHierarchy {
        label: code.kind.to_string(),
        weights,
        mode: if used_formula {
            HierarchyMode::Hybrid
        } else {
            HierarchyMode::Exhaustive
        },
    })
}

/// Wei monotonicity: 1 <= d_1 < d_2 < ... < d_k <= n.
pub fn wei_monotonicity_check(weights: &[u64], n: u64) -> bool {
    if weights.is_empty() {
        return true;
    }
    weights[0] >= 1
        && *weights.last().unwrap() <= n
        && weights.windows(2).all(|w| w[0] < w[1])
}

/// Wei duality: {n+1-d_j^perp} and {d_i} partition {1..n}.
pub fn wei_duality_check(weights: &[u64], dual_weights: &[u64], n: u64) -> bool {
    if weights.len() + dual_weights.len() != n as usize {
        return false;
    }
    let mut seen = vec![false; n as usize + 1];
    for &d in weights {
        if d < 1 || d > n || seen[d as usize] {
            return false;
        }
        seen[d as usize] = true;
    }
    for &dp in dual_weights {
        if dp < 1 || dp > n {
            return false;
        }
        let reflected = n + 1 - dp;
        if seen[reflected as usize] {
            return false;
        }
        seen[reflected as usize] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{prm_code, rm_code};
    use crate::gf::make_field;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(6, 1, 4), 1365);
        assert_eq!(gaussian_binomial(6, 0, 4), 1);
        assert_eq!(gaussian_binomial(6, 3, 4), 376805);
        assert_eq!(gaussian_binomial(6, 2, 4), 93093);
        assert_eq!(gaussian_binomial(2, 1, 2), 3);
        assert_eq!(gaussian_binomial(3, 2, 2), 7);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomial() {
        for (p, e, k, r) in [
            (2u32, 1u32, 2usize, 1usize),
            (2, 1, 3, 2),
            (2, 1, 4, 2),
            (3, 1, 3, 2),
            (2, 2, 3, 1),
            (2, 2, 4, 2),
            (5, 1, 3, 2),
        ] {
            let f = make_field(p, e, None).unwrap();
            let bases: Vec<Matrix> = enumerate_subspaces(&f, k, r, 1 << 30).unwrap().collect();
            assert_eq!(
                bases.len() as u128,
                gaussian_binomial(k as u64, r as u64, f.q as u64),
                "q={} k={k} r={r}",
                f.q
            );
            // each basis is a distinct canonical RREF of full rank
            let mut seen = std::collections::HashSet::new();
            for b in &bases {
                assert_eq!(b.rank(&f), r);
                assert_eq!(b.row_basis(&f), *b, "already canonical");
                assert!(seen.insert(b.data.clone()));
            }
        }
    }

    #[test]
    fn example_table_e_r_2_2_gf4() {
        let f4 = make_field(2, 2, None).unwrap();
        let opts = SearchOptions::default();
        let expected = [9u64, 6, 5, 2, 1, 0];
        for (i, &e) in expected.iter().enumerate() {
            let res = er_exhaustive(&f4, 2, 2, i + 1, ErMode::Projective, &opts).unwrap();
            assert_eq!(res.value, e, "e_{}(2,2) at q=4", i + 1);
            assert_eq!(res.witness.rank(&f4), i + 1);
        }
    }

    #[test]
    fn streaming_and_branch_and_bound_agree() {
        let f4 = make_field(2, 2, None).unwrap();
        let streaming = SearchOptions::default();
        // small enough to push every r >= 2 onto the candidate route, large
        // enough for its codeword scan ([6 choose 1]_4 * 21 columns)
        let forced_bnb = SearchOptions {
            op_cap: 1365 * 21,
            ..SearchOptions::default()
        };
        for r in 2..=4usize {
            let a = er_exhaustive(&f4, 2, 2, r, ErMode::Projective, &streaming).unwrap();
            let b = er_exhaustive(&f4, 2, 2, r, ErMode::Projective, &forced_bnb).unwrap();
            assert_eq!(a.value, b.value, "r = {r}");
        }
        let f5 = make_field(5, 1, None).unwrap();
        let forced_bnb = SearchOptions {
            op_cap: 3906 * 25,
            ..SearchOptions::default()
        };
        for r in 2..=3usize {
            let a = er_exhaustive(&f5, 2, 2, r, ErMode::Affine, &streaming).unwrap();
            let b = er_exhaustive(&f5, 2, 2, r, ErMode::Affine, &forced_bnb).unwrap();
            assert_eq!(a.value, b.value, "affine r = {r}");
        }
    }

    #[test]
    fn affine_hp_values() {
        let f5 = make_field(5, 1, None).unwrap();
        let opts = SearchOptions::default();
        let res = er_exhaustive(&f5, 2, 2, 3, ErMode::Affine, &opts).unwrap();
        assert_eq!(res.value, 5);
        let res2 = er_exhaustive(&f5, 2, 2, 2, ErMode::Affine, &opts).unwrap();
        assert_eq!(res2.value, 6);
    }

    #[test]
    fn random_search_basics() {
        let f4 = make_field(2, 2, None).unwrap();
        let res = er_random_search(&f4, 2, 2, 2, 50, 7).unwrap();
        assert!(res.value <= 6);
        assert_eq!(res.witness.rows, 2);
        assert_eq!(res.witness.rank(&f4), 2);
        // full dimension: only the whole space, value 0
        let full = er_random_search(&f4, 2, 2, 6, 1, 7).unwrap();
        assert_eq!(full.value, 0);
        // reproducible under a fixed seed
        let again = er_random_search(&f4, 2, 2, 2, 50, 7).unwrap();
        assert_eq!(res.value, again.value);
        assert_eq!(res.witness, again.witness);
    }

    #[test]
    fn hierarchy_rm_421() {
        let f4 = make_field(2, 2, None).unwrap();
        let code = rm_code(&f4, 2, 1).unwrap();
        let h = weight_hierarchy(&code, HierarchyMethod::Exhaustive, &SearchOptions::default())
            .unwrap();
        assert_eq!(h.weights, vec![2, 3, 4]);
        assert!(wei_monotonicity_check(&h.weights, 4));
    }

    #[test]
    fn hierarchy_prm_d1() {
        let f4 = make_field(2, 2, None).unwrap();
        let code = prm_code(&f4, 1, 2).unwrap();
        let h = weight_hierarchy(&code, HierarchyMethod::Exhaustive, &SearchOptions::default())
            .unwrap();
        assert_eq!(h.weights, vec![16, 20, 21]); // d_r = p_m - p_{m-r}
    }

    #[test]
    fn monotonicity_check_cases() {
        assert!(wei_monotonicity_check(&[12, 15, 16, 19, 20, 21], 21));
        assert!(!wei_monotonicity_check(&[3, 3], 4));
        assert!(wei_monotonicity_check(&[1], 1));
    }

    #[test]
    fn duality_check_cases() {
        // complement construction is true by definition
        let h = [12u64, 15, 16, 19, 20, 21];
        let n = 21u64;
        let mut dual: Vec<u64> = (1..=n)
            .filter(|x| !h.contains(x))
            .map(|x| n + 1 - x)
            .collect();
        dual.sort();
        assert!(wei_duality_check(&h, &dual, n));
        let mut bad = dual.clone();
        bad[0] += 1;
        assert!(!wei_duality_check(&h, &bad, n));
        // full code: empty dual hierarchy
        assert!(wei_duality_check(&[1, 2, 3], &[], 3));
    }

    #[test]
    fn witness_reproduces_value() {
        let f4 = make_field(2, 2, None).unwrap();
        let v = er_value_matrix(&f4, 2, 2, ErMode::Projective).unwrap();
        for r in [1usize, 2, 3] {
            let res = max_common_zeros(&f4, &v, r, &SearchOptions::default()).unwrap();
            assert_eq!(subspace_zero_count(&f4, &res.witness, &v), res.value);
        }
    }

    #[test]
    fn er_strictly_decreasing_while_positive() {
        let f4 = make_field(2, 2, None).unwrap();
        let opts = SearchOptions::default();
        let vals: Vec<u64> = (1..=6)
            .map(|r| {
                er_exhaustive(&f4, 2, 2, r, ErMode::Projective, &opts)
                    .unwrap()
                    .value
            })
            .collect();
        for w in vals.windows(2) {
            assert!(w[0] > w[1] || (w[0] == 0 && w[1] == 0));
        }
    }
}
