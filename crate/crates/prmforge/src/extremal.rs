//! Explicit extremal polynomial systems (witnesses) and the Veronese
//! line-containment check.
//!
//! Every witness is validated on construction: the coefficient vectors must
//! be linearly independent and a brute-force recount over the point set must
//! match the claimed common-zero count.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::{
    binomial, count_projective_zeros, enumerate_monomials, MonomialMode, Poly,
};
use crate::pspace::{enumerate_projective_points, normalize, p_k, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Pencil,
    TwoLines,
    Custom,
}

/// A system of r linearly independent homogeneous polynomials of common
/// degree d together with its verified common-zero count.
#[derive(Debug, Clone)]
pub struct WitnessSystem {
    pub polys: Vec<Poly>,
    pub claimed_count: u64,
    pub construction: Construction,
}

impl WitnessSystem {
    /// Validate independence and recount zeros before accepting the claim.
    pub fn new(
        field: &FieldSpec,
        polys: Vec<Poly>,
        m: usize,
        claimed_count: u64,
        construction: Construction,
    ) -> Result<Self> {
        let d = polys
            .first()
            .and_then(|p| p.homogeneous_degree())
            .ok_or_else(|| Error::DimensionMismatch("empty witness system".into()))?;
        for p in &polys {
            if p.homogeneous_degree() != Some(d) {
                return Err(Error::DimensionMismatch(
                    "witness polynomials must share one homogeneous degree".into(),
                ));
            }
        }
        let basis = enumerate_monomials(m, d, MonomialMode::Homogeneous);
        let rows: Vec<Vec<Elem>> = polys
            .iter()
            .map(|p| p.coefficient_vector(&basis))
            .collect::<Result<_>>()?;
        let mat = Matrix::from_rows(rows);
        if mat.rank(field) != polys.len() {
            return Err(Error::DimensionMismatch(
                "witness polynomials are linearly dependent".into(),
            ));
        }
        let (count, _) = count_projective_zeros(&polys, field, m)?;
        if count != claimed_count {
            return Err(Error::DimensionMismatch(format!(
                "witness recount {count} does not match claimed {claimed_count}"
            )));
        }
        Ok(WitnessSystem {
            polys,
            claimed_count,
            construction,
        })
    }
}

/// x_i - c x_0 as a degree-1 homogeneous polynomial in m+1 variables.
fn linear(field: &FieldSpec, m: usize, i: usize, c: Elem) -> Poly {
    let mut coeffs = vec![0 as Elem; m + 1];
    coeffs[i] = 1;
    coeffs[0] = field.sub(coeffs[0], c);
    Poly::linear_form(&coeffs)
}

/// Pencil witness attaining (d-1)q^{m-1} + p_{m-2} + floor(q^{m-r}) common
/// zeros for 1 <= r <= m+1: with G the product of the d-1 hyperplanes
/// x_1 = alpha_j x_0 and H = x_1 - beta x_0 for a fresh scalar beta, the
/// system is F_1 = H G and F_i = L_i G, where L_i = x_i for 2 <= i <= m and
/// L_{m+1} = x_0. Its zero set is V(G) plus the linear section
/// V(H, L_2, ..., L_r) glued along a common linear subspace.
pub fn build_pencil_witness(
    field: &FieldSpec,
    d: u32,
    m: usize,
    r: usize,
) -> Result<WitnessSystem> {
    if d < 2 || d as u64 > field.q as u64 {
        return Err(Error::HypothesisViolated(format!(
            "pencil witness needs 2 <= d <= q for d distinct scalars (d = {d}, q = {})",
            field.q
        )));
    }
    if m < 2 || r < 1 || r > m + 1 {
        return Err(Error::HypothesisViolated(format!(
            "pencil witness needs m >= 2 and 1 <= r <= m+1 (m = {m}, r = {r})"
        )));
    }
    // alpha_1..alpha_{d-1} and beta: the first d elements in encoded order
    let mut g = Poly::monomial(m + 1, vec![0; m + 1], 1);
    for alpha in 0..d - 1 {
        g = g.mul(&linear(field, m, 1, alpha as Elem), field);
    }
    let h = linear(field, m, 1, (d - 1) as Elem);
    let mut polys = vec![h.mul(&g, field)];
    for i in 2..=r {
        let li = if i <= m {
            linear(field, m, i, 0)
        } else {
            linear(field, m, 0, 0) // r = m+1: the extra multiplier is x_0
        };
        polys.push(li.mul(&g, field));
    }
    let q = field.q as u64;
    let floor = if m >= r { q.pow((m - r) as u32) } else { 0 };
    let claimed = (d as u64 - 1) * q.pow((m - 1) as u32) + p_k(q, m as i64 - 2) + floor;
    WitnessSystem::new(field, polys, m, claimed, Construction::Pencil)
}

/// The five quadrics x_0^2, x_0 x_1, x_0 x_2, x_0 x_3, x_1 x_2 in P^3: the
/// degree-2 part of the ideal of two lines meeting at a point. Their common
/// zero set is those two lines, 2q+1 points — below T_5(2,3) = 2(q+1)
/// whenever the conjecture's hypothesis q > 3 holds.
pub fn build_five_quadrics_witness(field: &FieldSpec) -> Result<WitnessSystem> {
    let polys: Vec<Poly> = [
        vec![2u32, 0, 0, 0],
        vec![1, 1, 0, 0],
        vec![1, 0, 1, 0],
        vec![1, 0, 0, 1],
        vec![0, 1, 1, 0],
    ]
    .into_iter()
    .map(|e| Poly::monomial(4, e, 1))
    .collect();
    let claimed = 2 * field.q as u64 + 1;
    WitnessSystem::new(field, polys, 3, claimed, Construction::TwoLines)
}

/// Image of P^m(F_q) in P^{k-1}(F_q), k = C(m+d, d), under the degree-d
/// Veronese map (coordinates: all degree-d monomials, descending lex).
#[derive(Debug, Clone)]
pub struct VeroneseImage {
    pub q: u64,
    pub m: usize,
    pub d: u32,
    /// Projective dimension of the ambient space, k-1.
    pub ambient_dim: usize,
    pub points: Vec<ProjPoint>,
}

pub fn veronese_image(field: &FieldSpec, d: u32, m: usize) -> Result<VeroneseImage> {
    let k = binomial((m + d as usize) as i64, d as i64);
    if k > 10_000 {
        return Err(Error::SizeOverflow {
            needed: k,
            cap: 10_000,
        });
    }
    let basis = enumerate_monomials(m, d, MonomialMode::Homogeneous);
    let source = enumerate_projective_points(field, m)?;
    let mut points = Vec::with_capacity(source.len());
    for pt in &source {
        let mut coords = Vec::with_capacity(basis.len());
        for mon in &basis {
            let mut v: Elem = 1;
            for (&c, &e) in pt.coords().iter().zip(&mon.0) {
                if e > 0 {
                    v = field.mul(v, field.pow(c, e as u64));
                }
            }
            coords.push(v);
        }
        let img = normalize(field, &coords).expect("x_i^d is nonzero at the lead coordinate");
        points.push(img);
    }
    let distinct: HashSet<&ProjPoint> = points.iter().collect();
    assert_eq!(
        distinct.len(),
        points.len(),
        "the Veronese map must be injective"
    );
    Ok(VeroneseImage {
        q: field.q as u64,
        m,
        d,
        ambient_dim: k as usize - 1,
        points,
    })
}

/// Count the projective lines fully contained in the image (each line once).
/// Returns the count and, when positive, one witnessing point pair.
pub fn veronese_line_check(
    field: &FieldSpec,
    image: &VeroneseImage,
) -> (u64, Option<(ProjPoint, ProjPoint)>) {
    let member: HashSet<&ProjPoint> = image.points.iter().collect();
    let pts = &image.points;
    let found: Vec<(usize, usize)> = (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let member = &member;
            (i + 1..pts.len()).filter_map(move |j| {
                let p = pts[i].coords();
                let q = pts[j].coords();
                // the line through P and Q: Q and P + lambda Q for all lambda
                for lambda in 0..field.q {
                    let mixed: Vec<Elem> = p
                        .iter()
                        .zip(q)
                        .map(|(&a, &b)| field.add(a, field.mul(lambda, b)))
                        .collect();
                    let pt = normalize(field, &mixed).expect("P, Q independent");
                    if !member.contains(&pt) {
                        return None;
                    }
                }
                Some((i, j))
            })
        })
        .collect();
    // dedupe: one line is seen by every contained pair; canonicalize by its
    // sorted point set
    let mut lines: HashSet<Vec<ProjPoint>> = HashSet::new();
    let mut example = None;
    for (i, j) in found {
        let p = pts[i].coords();
        let q = pts[j].coords();
        let mut line: Vec<ProjPoint> = Vec::with_capacity(field.q as usize + 1);
        for lambda in 0..field.q {
            let mixed: Vec<Elem> = p
                .iter()
                .zip(q)
                .map(|(&a, &b)| field.add(a, field.mul(lambda, b)))
                .collect();
            line.push(normalize(field, &mixed).unwrap());
        }
        line.push(pts[j].clone());
        line.sort();
        if lines.insert(line) && example.is_none() {
            example = Some((pts[i].clone(), pts[j].clone()));
        }
    }
    (lines.len() as u64, example)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{tbc_bound, tbc_simplified, zanella_bound};
    use crate::gf::make_field;

    #[test]
    fn pencil_witness_example_4_8() {
        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(build_pencil_witness(&f4, 2, 2, 3).unwrap().claimed_count, 5);
        assert_eq!(build_pencil_witness(&f4, 2, 2, 1).unwrap().claimed_count, 9);
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(
            build_pencil_witness(&f5, 3, 2, 2).unwrap().claimed_count,
            12
        );
    }

    #[test]
    fn pencil_witness_attains_tbc_value() {
        // attainability half: e_r >= T_r for r <= m+1
        for (p, e) in [(2u32, 2u32), (5, 1), (7, 1)] {
            let f = make_field(p, e, None).unwrap();
            for d in 2..=3u32 {
                if d as u64 > f.q as u64 {
                    continue;
                }
                for m in 2..=3usize {
                    for r in 1..=m + 1 {
                        let w = build_pencil_witness(&f, d, m, r).unwrap();
                        assert_eq!(w.polys.len(), r);
                        assert_eq!(
                            w.claimed_count as u128,
                            tbc_simplified(f.q as u64, d, m, r as u128).unwrap(),
                            "q={} d={d} m={m} r={r}",
                            f.q
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pencil_hypotheses() {
        let f4 = make_field(2, 2, None).unwrap();
        assert!(build_pencil_witness(&f4, 5, 2, 1).is_err()); // d > q
        assert!(build_pencil_witness(&f4, 1, 2, 1).is_err());
        assert!(build_pencil_witness(&f4, 2, 2, 4).is_err()); // r > m+1
        assert!(build_pencil_witness(&f4, 2, 1, 1).is_err()); // m < 2
    }

    #[test]
    fn five_quadrics_beat_tbc() {
        for (p, e) in [(2u32, 2u32), (5, 1), (7, 1)] {
            let f = make_field(p, e, None).unwrap();
            let q = f.q as u64;
            let w = build_five_quadrics_witness(&f).unwrap();
            assert_eq!(w.claimed_count, 2 * q + 1);
            assert_eq!(w.claimed_count as u128, zanella_bound(q, 3, 5).unwrap());
            assert_eq!(tbc_bound(q, 2, 3, 5).unwrap(), 2 * (q as u128 + 1));
        }
        // small q: the construction still counts correctly even though the
        // conjecture's hypothesis q > 3 fails
        for (p, e) in [(2u32, 1u32), (3, 1)] {
            let f = make_field(p, e, None).unwrap();
            let w = build_five_quadrics_witness(&f).unwrap();
            assert_eq!(w.claimed_count, 2 * f.q as u64 + 1);
        }
    }

    #[test]
    fn five_quadrics_rank() {
        let f4 = make_field(2, 2, None).unwrap();
        let w = build_five_quadrics_witness(&f4).unwrap();
        let basis = enumerate_monomials(3, 2, MonomialMode::Homogeneous);
        let rows: Vec<Vec<Elem>> = w
            .polys
            .iter()
            .map(|p| p.coefficient_vector(&basis).unwrap())
            .collect();
        assert_eq!(Matrix::from_rows(rows).rank(&f4), 5);
    }

    #[test]
    fn veronese_cardinalities() {
        let f4 = make_field(2, 2, None).unwrap();
        let v = veronese_image(&f4, 2, 2).unwrap();
        assert_eq!(v.points.len() as u64, p_k(4, 2));
        assert_eq!(v.ambient_dim, 5);

        let f2 = make_field(2, 1, None).unwrap();
        let conic = veronese_image(&f2, 2, 1).unwrap();
        assert_eq!(conic.points.len(), 3);
        assert_eq!(conic.ambient_dim, 2);

        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(veronese_image(&f5, 2, 2).unwrap().points.len(), 31);
    }

    #[test]
    fn veronese_no_lines_for_quadratic_embedding() {
        for (p, e) in [(2u32, 2u32), (5, 1)] {
            let f = make_field(p, e, None).unwrap();
            let v = veronese_image(&f, 2, 2).unwrap();
            let (lines, example) = veronese_line_check(&f, &v);
            assert_eq!(lines, 0, "q = {}", f.q);
            assert!(example.is_none());
        }
    }

    #[test]
    fn identity_embedding_has_lines() {
        // d = 1: the image is P^2 itself, which contains p_2 lines
        let f4 = make_field(2, 2, None).unwrap();
        let v = veronese_image(&f4, 1, 2).unwrap();
        let (lines, example) = veronese_line_check(&f4, &v);
        assert_eq!(lines, p_k(4, 2)); // lines of P^2 <-> points of the dual
        assert!(example.is_some());
    }
}
