//! Seeded random elements for property checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cintersect::CompleteIntersection;
use crate::gcalg::{AlgElement, FreeGcAlgebra};
use crate::Q;

/// Coefficients are drawn from `−COEFF_RANGE..=COEFF_RANGE`.
pub const COEFF_RANGE: i64 = 9;

fn coeff<R: Rng + ?Sized>(rng: &mut R) -> Q {
    loop {
        let c: i64 = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        if c != 0 {
            return Q::from_integer(c.into());
        }
    }
}

/// Homogeneous element of degree `degree` with at most `max_terms` terms.
/// Zero when the degree is empty.
pub fn homogeneous<R: Rng + ?Sized>(
    alg: &Arc<FreeGcAlgebra>,
    degree: u32,
    max_terms: usize,
    rng: &mut R,
) -> AlgElement {
    let basis = alg.graded_basis(degree);
    let mut out = alg.zero();
    if basis.is_empty() || max_terms == 0 {
        return out;
    }
    let k = rng.gen_range(1..=max_terms.min(basis.len()));
    for m in basis.choose_multiple(rng, k) {
        out.add_term(m.clone(), coeff(rng));
    }
    out
}

/// Sum of homogeneous pieces in degrees `0..=max_degree`.
pub fn element<R: Rng + ?Sized>(
    alg: &Arc<FreeGcAlgebra>,
    max_degree: u32,
    max_terms: usize,
    rng: &mut R,
) -> AlgElement {
    let mut out = alg.zero();
    for deg in 0..=max_degree {
        if rng.gen_bool(0.5) {
            out += &homogeneous(alg, deg, max_terms, rng);
        }
    }
    out
}

/// Random module element `Σ b_i·x^{α_i}` of a complete intersection, with
/// base coefficients of degree `≤ base_degree`.
pub fn ci_element<R: Rng + ?Sized>(
    ci: &CompleteIntersection,
    base_degree: u32,
    rng: &mut R,
) -> AlgElement {
    let coords: Vec<AlgElement> = (0..ci.rank())
        .map(|_| element(ci.base(), base_degree, 3, rng))
        .collect();
    ci.from_coords(&coords)
}
