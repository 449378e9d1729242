//! Points of affine and projective spaces over GF(q), hyperplanes, and the
//! point-count function p_k.
//!
//! Projective points use the normalized representative whose first nonzero
//! coordinate is 1. All enumerations are in ascending lexicographic order of
//! the encoded coordinate vectors; this order fixes the column order of every
//! generator matrix built downstream.

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};

/// Default cap on enumeration sizes (points).
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Normalized homogeneous coordinates: first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub Vec<Elem>);

/// A point of A^m(F_q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffPoint(pub Vec<Elem>);

impl ProjPoint {
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }
}

impl AffPoint {
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }
}

/// Number of points of P^k(F_q): q^k + ... + q + 1 for k >= 0, and 0 for k < 0.
pub fn p_k(q: u64, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..=k {
        total += pow;
        pow = pow.saturating_mul(q);
    }
    total
}

/// Normalize a nonzero vector so its first nonzero coordinate is 1.
/// Returns None for the zero vector.
pub fn normalize(field: &FieldSpec, coords: &[Elem]) -> Option<ProjPoint> {
    let lead = coords.iter().position(|&c| c != 0)?;
    if coords[lead] == 1 {
        return Some(ProjPoint(coords.to_vec()));
    }
    let inv = field.inv(coords[lead]).expect("nonzero lead");
    Some(ProjPoint(
        coords.iter().map(|&c| field.mul(inv, c)).collect(),
    ))
}

/// Visit the normalized points of P^m(F_q) in ascending lexicographic order
/// of coordinate vectors, without materializing the list.
pub fn for_each_projective_point<F: FnMut(&[Elem])>(field: &FieldSpec, m: usize, mut f: F) {
    let q = field.q;
    let mut coords = vec![0 as Elem; m + 1];
    // vectors with more leading zeros sort first
    for lead in (0..=m).rev() {
        for c in coords.iter_mut() {
            *c = 0;
        }
        coords[lead] = 1;
        loop {
            f(&coords);
            // odometer over positions lead+1..=m, last coordinate fastest
            let mut pos = m;
            loop {
                if pos == lead {
                    break;
                }
                coords[pos] += 1;
                if coords[pos] < q {
                    break;
                }
                coords[pos] = 0;
                pos -= 1;
            }
            if pos == lead {
                break;
            }
        }
    }
}

/// The idx-th point (0-based) in the order of [`for_each_projective_point`].
pub fn unrank_projective_point(field: &FieldSpec, m: usize, mut idx: u64) -> Vec<Elem> {
    let q = field.q as u64;
    for lead in (0..=m).rev() {
        let block = q.pow((m - lead) as u32);
        if idx < block {
            let mut coords = vec![0 as Elem; m + 1];
            coords[lead] = 1;
            for pos in (lead + 1..=m).rev() {
                coords[pos] = (idx % q) as Elem;
                idx /= q;
            }
            return coords;
        }
        idx -= block;
    }
    panic!("projective index out of range");
}

fn check_cap(needed: u64, cap: u64) -> Result<()> {
    if needed > cap {
        return Err(Error::SizeOverflow {
            needed: needed as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

pub fn enumerate_projective_points_with_cap(
    field: &FieldSpec,
    m: usize,
    cap: u64,
) -> Result<Vec<ProjPoint>> {
    check_cap(p_k(field.q as u64, m as i64), cap)?;
    let mut out = Vec::with_capacity(p_k(field.q as u64, m as i64) as usize);
    for_each_projective_point(field, m, |c| out.push(ProjPoint(c.to_vec())));
    Ok(out)
}

/// All p_m(q) normalized points of P^m(F_q), lexicographically ascending.
pub fn enumerate_projective_points(field: &FieldSpec, m: usize) -> Result<Vec<ProjPoint>> {
    enumerate_projective_points_with_cap(field, m, DEFAULT_ENUM_CAP)
}

pub fn for_each_affine_point<F: FnMut(&[Elem])>(field: &FieldSpec, m: usize, mut f: F) {
    let q = field.q;
    let mut coords = vec![0 as Elem; m];
    loop {
        f(&coords);
        let mut pos = m;
        while pos > 0 {
            coords[pos - 1] += 1;
            if coords[pos - 1] < q {
                break;
            }
            coords[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
}

/// All q^m points of A^m(F_q), lexicographically ascending.
pub fn enumerate_affine_points(field: &FieldSpec, m: usize) -> Result<Vec<AffPoint>> {
    enumerate_affine_points_with_cap(field, m, DEFAULT_ENUM_CAP)
}

pub fn enumerate_affine_points_with_cap(
    field: &FieldSpec,
    m: usize,
    cap: u64,
) -> Result<Vec<AffPoint>> {
    let n = (field.q as u64).pow(m as u32);
    check_cap(n, cap)?;
    let mut out = Vec::with_capacity(n as usize);
    for_each_affine_point(field, m, |c| out.push(AffPoint(c.to_vec())));
    Ok(out)
}

/// Hyperplanes of P^m(F_q) as normalized coefficient vectors: the hyperplane
/// of a coefficient vector h is the set of points P with h . P = 0.
pub fn enumerate_hyperplanes(field: &FieldSpec, m: usize) -> Result<Vec<ProjPoint>> {
    assert!(m >= 1, "hyperplanes need m >= 1");
    enumerate_projective_points(field, m)
}

pub fn dot(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add(acc, field.mul(x, y));
    }
    acc
}

pub fn point_on_hyperplane(field: &FieldSpec, point: &ProjPoint, hyperplane: &ProjPoint) -> bool {
    dot(field, point.coords(), hyperplane.coords()) == 0
}

/// Outcome of the incidence bound |X| <= aq + 1, where a is the maximum
/// number of points of X on a single hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZanellaCheck {
    pub a: u64,
    pub bound: u64,
    pub holds: bool,
}

/// Check the hyperplane-incidence bound for a point set X in P^m(F_q).
/// `holds` is a theorem; a false result signals an implementation bug.
pub fn zanella_set_check(field: &FieldSpec, points: &[ProjPoint], m: usize) -> Result<ZanellaCheck> {
    let mut set: Vec<&ProjPoint> = points.iter().collect();
    set.sort();
    set.dedup();
    let hyperplanes = enumerate_hyperplanes(field, m)?;
    let a = hyperplanes
        .iter()
        .map(|h| {
            set.iter()
                .filter(|pt| point_on_hyperplane(field, pt, h))
                .count() as u64
        })
        .max()
        .unwrap_or(0);
    let bound = a * field.q as u64 + 1;
    Ok(ZanellaCheck {
        a,
        bound,
        holds: set.len() as u64 <= bound,
    })
}
