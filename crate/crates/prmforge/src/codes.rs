//! Reed-Muller and projective Reed-Muller codes: construction, parameter
//! formulas, dual degree, and dual minimum distance via column dependencies.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{matrix_rank, Matrix};
use crate::poly::{binomial, enumerate_monomials, evaluation_matrix, MonomialMode};
use crate::pspace::{enumerate_affine_points, enumerate_projective_points, p_k};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Rm { d: u32, m: usize },
    Prm { d: u32, m: usize },
    Raw,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeKind::Rm { d, m } => write!(f, "RM({d},{m})"),
            CodeKind::Prm { d, m } => write!(f, "PRM({d},{m})"),
            CodeKind::Raw => write!(f, "raw"),
        }
    }
}

/// A linear [n, k]_q code presented by a full-row-rank generator matrix
/// whose columns are indexed by evaluation points.
#[derive(Debug, Clone)]
pub struct LinearCode {
    pub field: FieldSpec,
    pub kind: CodeKind,
    pub n: usize,
    pub k: usize,
    pub generator: Matrix,
    pub column_points: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    pub n: u64,
    pub k: u64,
    pub dmin: u64,
}

/// Reed-Muller code RM_q(d, m): evaluations of polynomials of degree <= d
/// at all points of A^m(F_q). Requires d < q so the monomial evaluations
/// are independent and k = C(m+d, d).
pub fn rm_code(field: &FieldSpec, d: u32, m: usize) -> Result<LinearCode> {
    if d < 1 || d as u64 >= field.q as u64 {
        return Err(Error::DegreeTooLarge {
            d: d as u64,
            why: format!("RM code needs 1 <= d < q = {}", field.q),
        });
    }
    let points = enumerate_affine_points(field, m)?;
    let basis = enumerate_monomials(m, d, MonomialMode::Bounded);
    let generator = evaluation_matrix(&basis, &points, field)?;
    let k = basis.len();
    debug_assert_eq!(matrix_rank(&generator, field), k);
    Ok(LinearCode {
        field: field.clone(),
        kind: CodeKind::Rm { d, m },
        n: points.len(),
        k,
        generator,
        column_points: points.into_iter().map(|p| p.0).collect(),
    })
}

/// Projective Reed-Muller code PRM_q(d, m) for 1 <= d <= m(q-1). For d >= q
/// the monomial evaluations are dependent and the generator is reduced to a
/// row basis.
pub fn prm_code(field: &FieldSpec, d: u32, m: usize) -> Result<LinearCode> {
    let dmax = m as u64 * (field.q as u64 - 1);
    if d < 1 || d as u64 > dmax {
        return Err(Error::DegreeTooLarge {
            d: d as u64,
            why: format!("PRM code needs 1 <= d <= m(q-1) = {dmax}"),
        });
    }
    let points = enumerate_projective_points(field, m)?;
    let basis = enumerate_monomials(m, d, MonomialMode::Homogeneous);
    let full = evaluation_matrix(&basis, &points, field)?;
    let generator = if (d as u64) < field.q as u64 {
        full
    } else {
        full.row_basis(field)
    };
    let k = generator.rows;
    debug_assert_eq!(matrix_rank(&generator, field), k);
    Ok(LinearCode {
        field: field.clone(),
        kind: CodeKind::Prm { d, m },
        n: points.len(),
        k,
        generator,
        column_points: points.into_iter().map(|p| p.0).collect(),
    })
}

/// Closed-form [n, k, d'] of PRM_q(d, m): n = p_m; k by the alternating
/// binomial sum over t = 1..d with t = d mod (q-1); d' = (q-s) q^{m-t-1}
/// where d-1 = t(q-1) + s with 0 <= s < q-1.
pub fn prm_params(field: &FieldSpec, d: u32, m: usize) -> Result<CodeParams> {
    let q = field.q as i64;
    let dmax = m as u64 * (field.q as u64 - 1);
    if d < 1 || d as u64 > dmax {
        return Err(Error::DegreeTooLarge {
            d: d as u64,
            why: format!("PRM parameters need 1 <= d <= m(q-1) = {dmax}"),
        });
    }
    let mut k: i128 = 0;
    for t in 1..=d as i64 {
        if field.q > 2 && (d as i64 - t) % (q - 1) != 0 {
            continue;
        }
        for j in 0..=(m as i64 + 1) {
            let term = binomial(m as i64 + 1, j) as i128
                * binomial(t - j * q + m as i64, t - j * q) as i128;
            if j % 2 == 0 {
                k += term;
            } else {
                k -= term;
            }
        }
    }
    let (t, s) = {
        let d1 = d as u64 - 1;
        (d1 / (field.q as u64 - 1), d1 % (field.q as u64 - 1))
    };
    let dmin = (field.q as u64 - s) * (field.q as u64).pow((m as u64 - t - 1) as u32);
    Ok(CodeParams {
        n: p_k(field.q as u64, m as i64),
        k: k as u64,
        dmin,
    })
}

/// Degree of the dual PRM code: m(q-1) - d, defined only when (q-1) does not
/// divide d.
pub fn prm_dual_degree(field: &FieldSpec, d: u32, m: usize) -> Result<u32> {
    let q1 = field.q - 1;
    let dmax = m as u32 * q1;
    if d < 1 || d > dmax {
        return Err(Error::DegreeTooLarge {
            d: d as u64,
            why: format!("dual degree needs 1 <= d <= m(q-1) = {dmax}"),
        });
    }
    if d.is_multiple_of(q1) {
        return Err(Error::DegreeDivisible { d: d as u64 });
    }
    Ok(dmax - d)
}

/// Smallest w <= limit such that some w columns of the generator matrix are
/// linearly dependent; equals the dual minimum distance when it is <= limit.
/// Returns None when every subset of <= limit columns is independent.
pub fn dual_min_distance_via_columns(code: &LinearCode, limit: usize) -> Option<usize> {
    let field = &code.field;
    let cols: Vec<Vec<Elem>> = (0..code.n).map(|c| code.generator.col(c)).collect();
    let k = code.k;

    // DFS over increasing column indices keeping the chosen set independent;
    // dependence first appears when a new column reduces to zero against the
    // echelon of the previous choices.
    struct State<'a> {
        cols: &'a [Vec<Elem>],
        field: &'a FieldSpec,
        k: usize,
    }

    fn reduce(state: &State, echelon: &[(usize, Vec<Elem>)], col: &[Elem]) -> Vec<Elem> {
        let mut v = col.to_vec();
        for (pivot, row) in echelon {
            let c = v[*pivot];
            if c != 0 {
                for i in 0..state.k {
                    v[i] = state.field.sub(v[i], state.field.mul(c, row[i]));
                }
            }
        }
        v
    }

    fn dfs(
        state: &State,
        start: usize,
        depth_left: usize,
        echelon: &mut Vec<(usize, Vec<Elem>)>,
    ) -> bool {
        for j in start..state.cols.len() {
            if state.cols.len() - j < depth_left {
                return false;
            }
            let v = reduce(state, echelon, &state.cols[j]);
            let pivot = v.iter().position(|&x| x != 0);
            match pivot {
                None => {
                    if depth_left == 1 {
                        return true;
                    }
                    // a dependent column closes a smaller dependent set; it
                    // was already covered at a smaller subset size
                }
                Some(p) => {
                    if depth_left > 1 {
                        let inv = state.field.inv(v[p]).expect("pivot nonzero");
                        let row: Vec<Elem> = v.iter().map(|&x| state.field.mul(inv, x)).collect();
                        echelon.push((p, row));
                        if dfs(state, j + 1, depth_left - 1, echelon) {
                            echelon.pop();
                            return true;
                        }
                        echelon.pop();
                    }
                }
            }
        }
        false
    }

    let state = State {
        cols: &cols,
        field,
        k,
    };
    for w in 1..=limit {
        let mut echelon = Vec::new();
        if dfs(&state, 0, w, &mut echelon) {
            return Some(w);
        }
    }
    None
}

pub use crate::linalg::matrix_rank as rank;
