//! Monomials in descending lexicographic order, sparse polynomials,
//! evaluation matrices, and zero counting over affine/projective point sets.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::Matrix;
use crate::pspace::{
    enumerate_affine_points_with_cap, enumerate_projective_points_with_cap, AffPoint, ProjPoint,
    DEFAULT_ENUM_CAP,
};

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// How a monomial basis is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialMode {
    /// m+1 variables, total degree exactly d.
    Homogeneous,
    /// m variables, total degree at most d.
    Bounded,
}

/// Sparse polynomial: monomial -> nonzero coefficient.
/// The zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Elem)>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
            if coeff != 0 {
                p.terms.insert(exps, coeff);
            }
        }
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: Elem) -> Self {
        Poly::from_terms(nvars, [(exps, coeff)])
    }

    /// A linear form c0 x_0 + ... + c_{n-1} x_{n-1}.
    pub fn linear_form(coeffs: &[Elem]) -> Self {
        let nvars = coeffs.len();
        Poly::from_terms(
            nvars,
            coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
                let mut e = vec![0u32; nvars];
                e[i] = 1;
                (e, c)
            }),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, Elem)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Common total degree if every term has it, i.e. the polynomial is
    /// homogeneous (the zero polynomial is homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let Some(first) = degs.next() else {
            return Some(0);
        };
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Poly, field: &FieldSpec) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, &c) in &other.terms {
            let v = field.add(*terms.get(e).unwrap_or(&0), c);
            if v == 0 {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), v);
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul(&self, other: &Poly, field: &FieldSpec) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Vec<u32>, Elem> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                let v = field.add(*terms.get(&exps).unwrap_or(&0), field.mul(ca, cb));
                if v == 0 {
                    terms.remove(&exps);
                } else {
                    terms.insert(exps, v);
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, c: Elem, field: &FieldSpec) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, &v)| (e.clone(), field.mul(c, v))),
        )
    }

    /// Exact evaluation at a coordinate vector (0^0 = 1).
    pub fn evaluate(&self, field: &FieldSpec, coords: &[Elem]) -> Result<Elem> {
        if coords.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables evaluated at a point with {} coordinates",
                self.nvars,
                coords.len()
            )));
        }
        let mut acc = 0;
        for (exps, &coeff) in &self.terms {
            let mut term = coeff;
            for (&c, &e) in coords.iter().zip(exps) {
                if e > 0 {
                    term = field.mul(term, field.pow(c, e as u64));
                }
            }
            acc = field.add(acc, term);
        }
        Ok(acc)
    }

    /// Coefficient vector with respect to an ordered monomial basis.
    /// Errors if some term's monomial is missing from the basis.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Result<Vec<Elem>> {
        let mut out = vec![0 as Elem; basis.len()];
        for (exps, &coeff) in &self.terms {
            let idx = basis
                .iter()
                .position(|m| &m.0 == exps)
                .ok_or_else(|| Error::DimensionMismatch("term not in basis".into()))?;
            out[idx] = coeff;
        }
        Ok(out)
    }

    /// Text format: terms `c:e0,e1,...,em` joined by `+`.
    pub fn parse(s: &str) -> Result<Poly> {
        let mut nvars = None;
        let mut terms = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (c, exps) = part
                .split_once(':')
                .ok_or_else(|| Error::ParsePoly(format!("term `{part}` missing `:`")))?;
            let coeff: Elem = c
                .trim()
                .parse()
                .map_err(|_| Error::ParsePoly(format!("bad coefficient `{c}`")))?;
            let exps: Vec<u32> = exps
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::ParsePoly(format!("bad exponent `{t}`")))
                })
                .collect::<Result<_>>()?;
            match nvars {
                None => nvars = Some(exps.len()),
                Some(n) if n != exps.len() => {
                    return Err(Error::ParsePoly("inconsistent variable counts".into()))
                }
                _ => {}
            }
            terms.push((exps, coeff));
        }
        let nvars = nvars.ok_or_else(|| Error::ParsePoly("empty polynomial".into()))?;
        Ok(Poly::from_terms(nvars, terms))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0:{}", vec!["0"; self.nvars].join(","));
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("{c}:{}", exps.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Binomial coefficient with the convention C(a,b) = 0 for a < b or b < 0.
pub fn binomial(a: i64, b: i64) -> u128 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn push_compositions_desc(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if parts == 1 {
        prefix.push(total);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        push_compositions_desc(parts - 1, total - first, prefix, out);
        prefix.pop();
    }
}

fn push_bounded_desc(parts: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if parts == 0 {
        out.push(Monomial(prefix.clone()));
        return;
    }
    for first in (0..=budget).rev() {
        prefix.push(first);
        push_bounded_desc(parts - 1, budget - first, prefix, out);
        prefix.pop();
    }
}

/// Monomial basis in descending lexicographic order of exponent vectors.
/// Homogeneous mode: m+1 variables of total degree d; bounded mode: m
/// variables of total degree <= d. Both have C(m+d, d) entries.
pub fn enumerate_monomials(m: usize, d: u32, mode: MonomialMode) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    match mode {
        MonomialMode::Homogeneous => push_compositions_desc(m + 1, d, &mut prefix, &mut out),
        MonomialMode::Bounded => push_bounded_desc(m, d, &mut prefix, &mut out),
    }
    out
}

/// The r-th (1-based) composition of d into `parts` parts, in descending
/// lexicographic order, by combinatorial unranking.
pub fn unrank_composition(r: u128, d: u32, parts: usize) -> Result<Monomial> {
    let total = binomial((d as i64) + (parts as i64) - 1, d as i64);
    if r < 1 || r > total {
        return Err(Error::RankOutOfRange { r, max: total });
    }
    let mut remaining = r - 1;
    let mut exps = Vec::with_capacity(parts);
    let mut budget = d;
    for pos in 0..parts - 1 {
        let parts_left = (parts - pos - 1) as i64;
        for first in (0..=budget).rev() {
            // compositions of budget-first into parts_left parts
            let block = binomial((budget - first) as i64 + parts_left - 1, parts_left - 1);
            if remaining < block {
                exps.push(first);
                budget -= first;
                break;
            }
            remaining -= block;
        }
    }
    exps.push(budget);
    Ok(Monomial(exps))
}

/// Row i, column j: the i-th basis monomial evaluated at the j-th point.
pub fn evaluation_matrix<P: AsRef<[Elem]>>(
    basis: &[Monomial],
    points: &[P],
    field: &FieldSpec,
) -> Result<Matrix> {
    let n = points.len();
    let mut mat = Matrix::zeros(basis.len(), n);
    for (i, mon) in basis.iter().enumerate() {
        for (j, pt) in points.iter().enumerate() {
            let coords = pt.as_ref();
            if coords.len() != mon.0.len() {
                return Err(Error::DimensionMismatch(format!(
                    "monomial in {} variables at point with {} coordinates",
                    mon.0.len(),
                    coords.len()
                )));
            }
            let mut v: Elem = 1;
            for (&c, &e) in coords.iter().zip(&mon.0) {
                if e > 0 {
                    v = field.mul(v, field.pow(c, e as u64));
                }
            }
            mat.set(i, j, v);
        }
    }
    Ok(mat)
}

impl AsRef<[Elem]> for ProjPoint {
    fn as_ref(&self) -> &[Elem] {
        &self.0
    }
}

impl AsRef<[Elem]> for AffPoint {
    fn as_ref(&self) -> &[Elem] {
        &self.0
    }
}

/// Common zeros of homogeneous polynomials among the normalized points of
/// P^m(F_q). Returns the count and the zero set.
pub fn count_projective_zeros(
    polys: &[Poly],
    field: &FieldSpec,
    m: usize,
) -> Result<(u64, Vec<ProjPoint>)> {
    for p in polys {
        if p.nvars != m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} variables, got {}",
                m + 1,
                p.nvars
            )));
        }
        if p.homogeneous_degree().is_none() {
            return Err(Error::DimensionMismatch(
                "polynomial is not homogeneous".into(),
            ));
        }
    }
    let points = enumerate_projective_points_with_cap(field, m, DEFAULT_ENUM_CAP)?;
    let mut zeros = Vec::new();
    for pt in points {
        let mut all = true;
        for p in polys {
            if p.evaluate(field, pt.coords())? != 0 {
                all = false;
                break;
            }
        }
        if all {
            zeros.push(pt);
        }
    }
    Ok((zeros.len() as u64, zeros))
}

/// Common zeros over A^m(F_q).
pub fn count_affine_zeros(polys: &[Poly], field: &FieldSpec, m: usize) -> Result<u64> {
    for p in polys {
        if p.nvars != m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} variables, got {}",
                m, p.nvars
            )));
        }
    }
    let points = enumerate_affine_points_with_cap(field, m, DEFAULT_ENUM_CAP)?;
    let mut count = 0;
    for pt in points {
        let mut all = true;
        for p in polys {
            if p.evaluate(field, pt.coords())? != 0 {
                all = false;
                break;
            }
        }
        if all {
            count += 1;
        }
    }
    Ok(count)
}
