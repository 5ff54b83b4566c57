use std::collections::HashMap;

use num_traits::Zero;

use super::{AlgElement, Differential, FreeGcAlgebra, Monomial};
use crate::error::Result;
use crate::linalg::{self, Matrix};
use crate::Q;

/// Coordinate lookup for a list of monomials.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    basis: Vec<Monomial>,
    pos: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(basis: Vec<Monomial>) -> Self {
        let pos = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialIndex { basis, pos }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.pos.get(m).copied()
    }

    /// Coordinates of `e`. Panics if `e` has a term outside the basis.
    pub fn coords(&self, e: &AlgElement) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.basis.len()];
        for (m, c) in e.iter() {
            let i = self
                .position(m)
                .unwrap_or_else(|| panic!("monomial {:?} outside basis", m.0));
            v[i] = c.clone();
        }
        v
    }
}

/// Matrix (target coordinates × source basis) of a linear map between graded
/// pieces.
pub fn graded_map_matrix(
    src: &[Monomial],
    tgt: &MonomialIndex,
    alg: &std::sync::Arc<FreeGcAlgebra>,
    mut f: impl FnMut(&AlgElement) -> Result<AlgElement>,
) -> Result<Matrix> {
    let mut m = linalg::zeros(tgt.len(), src.len());
    for (j, mono) in src.iter().enumerate() {
        let img = f(&alg.term(mono.clone(), num_traits::One::one()))?;
        for (i, c) in tgt.coords(&img).into_iter().enumerate() {
            m[i][j] = c;
        }
    }
    Ok(m)
}

fn differential_rank(d: &Differential, k: u32) -> Result<usize> {
    let alg = d.algebra();
    let src = alg.graded_basis(k);
    let tgt = MonomialIndex::new(alg.graded_basis(k + 1));
    if src.is_empty() || tgt.is_empty() {
        return Ok(0);
    }
    let m = graded_map_matrix(&src, &tgt, alg, |e| d.apply(e))?;
    Ok(linalg::rank(&m))
}

/// `dim H^k` for `k = 0..=up_to`.
pub fn cohomology_dims(d: &Differential, up_to: u32) -> Result<Vec<usize>> {
    let alg = d.algebra();
    let ranks: Vec<usize> = (0..=up_to)
        .map(|k| differential_rank(d, k))
        .collect::<Result<_>>()?;
    Ok((0..=up_to)
        .map(|k| {
            let dim = alg.graded_basis(k).len();
            let prev = if k == 0 { 0 } else { ranks[k as usize - 1] };
            dim - ranks[k as usize] - prev
        })
        .collect())
}
