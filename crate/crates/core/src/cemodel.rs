//! Chevalley–Eilenberg models of universal fibrations.
//!
//! For a dg Lie algebra `L` acting on `(A, d_A)` by positive derivations the
//! base is `C*(L; ℚ)`, free on generators `y_i` of degree `|l_i| + 1`, and the
//! total space is `C*(L; A)` with
//! `D(a) = d_A(a) − Σ_i y_i · (l_i · a)` on fibre generators.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cintersect::CompleteIntersection;
use crate::derlie::{sub_dgla, DerivationLie, DgLieAlgebra};
use crate::error::{Error, Result};
use crate::gcalg::{
    cohomology_dims, graded_map_matrix, AlgElement, Derivation, Differential, FreeGcAlgebra,
    Generator, Monomial, MonomialIndex,
};
use crate::linalg;
use crate::Q;

/// `L` acting on a model through derivations.
#[derive(Debug, Clone)]
pub struct LieAction {
    lie: DgLieAlgebra,
    fibre: Differential,
    act: Vec<Derivation>,
}

impl LieAction {
    /// Checks that `act` is a map of dg Lie algebras into the derivations of
    /// the fibre.
    pub fn new(lie: DgLieAlgebra, fibre: Differential, act: Vec<Derivation>) -> Result<Self> {
        if act.len() != lie.dim() {
            return Err(Error::InvalidAction(
                "one derivation per basis element".into(),
            ));
        }
        let alg = fibre.algebra();
        for (i, a) in act.iter().enumerate() {
            if a.algebra() != alg {
                return Err(Error::AlgebraMismatch);
            }
            if a.shift() != -(lie.degree(i) as i32) && !a.is_zero() {
                return Err(Error::InvalidAction(format!(
                    "{} acts with shift {}, expected {}",
                    lie.names()[i],
                    a.shift(),
                    -(lie.degree(i) as i32)
                )));
            }
        }
        let combine = |coords: &[(usize, Q)], shift: i32| -> Result<Derivation> {
            let parts: Vec<(Q, &Derivation)> =
                coords.iter().map(|(k, c)| (c.clone(), &act[*k])).collect();
            Derivation::linear_combination(alg, shift, &parts)
        };
        for i in 0..lie.dim() {
            for j in 0..lie.dim() {
                let shift = -((lie.degree(i) + lie.degree(j)) as i32);
                let lhs = combine(lie.bracket_basis(i, j), shift)?;
                let rhs = act[i].bracket(&act[j])?;
                if !same_derivation(&lhs, &rhs) {
                    return Err(Error::InvalidAction(format!(
                        "bracket of {} and {} is not preserved",
                        lie.names()[i],
                        lie.names()[j]
                    )));
                }
            }
            let shift = 1 - lie.degree(i) as i32;
            let lhs = combine(lie.diff_basis(i), shift)?;
            let rhs = fibre.derivation().bracket(&act[i])?;
            if !same_derivation(&lhs, &rhs) {
                return Err(Error::InvalidAction(format!(
                    "differential of {} is not preserved",
                    lie.names()[i]
                )));
            }
        }
        Ok(LieAction { lie, fibre, act })
    }

    /// The tautological action of the sub dg Lie algebra of `der` spanned by
    /// `indices`.
    pub fn from_derivations(der: &DerivationLie, indices: &[usize]) -> Result<Self> {
        let lie = sub_dgla(&der.lie, indices)?;
        let act = indices
            .iter()
            .map(|&i| der.derivations[i].clone())
            .collect();
        Self::new(lie, der.differential().clone(), act)
    }

    pub fn lie(&self) -> &DgLieAlgebra {
        &self.lie
    }

    pub fn fibre(&self) -> &Differential {
        &self.fibre
    }

    pub fn derivation(&self, i: usize) -> &Derivation {
        &self.act[i]
    }
}

fn same_derivation(a: &Derivation, b: &Derivation) -> bool {
    a.images() == b.images()
}

/// Default base generator names `y_1, y_2, …`.
pub fn default_ce_names(l: &DgLieAlgebra) -> Vec<String> {
    (1..=l.dim()).map(|i| format!("y_{i}")).collect()
}

/// `C*(L; ℚ)`: generators dual to the suspended basis, linear part of the
/// differential dual to `∂`, quadratic part dual to the bracket.
pub fn ce_base(l: &DgLieAlgebra, names: &[String]) -> Result<Differential> {
    if names.len() != l.dim() {
        return Err(Error::Unsupported("one name per basis element".into()));
    }
    let gens: Vec<Generator> = names
        .iter()
        .zip(l.degrees())
        .map(|(n, &k)| Generator::new(n.clone(), k + 1))
        .collect();
    let alg = FreeGcAlgebra::new(gens)?;
    let n = l.dim();
    let mut images = vec![alg.zero(); n];
    let half = Q::new(1.into(), 2.into());
    for i in 0..n {
        let s = if l.degree(i) % 2 == 1 {
            -Q::one()
        } else {
            Q::one()
        };
        for (m, c) in l.diff_basis(i) {
            images[*m] += &alg.gen(i).scale(&(c * &s));
        }
    }
    for j in 0..n {
        for i in 0..n {
            let s = if (l.degree(i) + 1) % 2 == 1 {
                -half.clone()
            } else {
                half.clone()
            };
            let yi_yj = &alg.gen(i) * &alg.gen(j);
            if yi_yj.is_zero() {
                continue;
            }
            for (m, c) in l.bracket_basis(j, i) {
                images[*m] += &yi_yj.scale(&(c * &s));
            }
        }
    }
    Differential::new(Derivation::new(&alg, 1, images)?)
}

/// Base, total space and fibre of a relative Sullivan model. The total
/// algebra lists the base generators first, so the base inclusion is
/// structural.
#[derive(Debug, Clone)]
pub struct RelativeSullivanModel {
    base: Differential,
    total: Differential,
    fibre: Differential,
}

impl RelativeSullivanModel {
    /// Assembles and verifies a relative model from its pieces: `total`
    /// must be generated by the base generators followed by the fibre ones,
    /// restrict to `base`, square to zero and reduce to `fibre` modulo the base.
    pub fn new(base: Differential, total: Differential, fibre: Differential) -> Result<Self> {
        let nb = base.algebra().ngens();
        let tg = total.algebra().generators().to_vec();
        let expected: Vec<Generator> = base
            .algebra()
            .generators()
            .iter()
            .chain(fibre.algebra().generators())
            .cloned()
            .collect();
        if tg != expected {
            return Err(Error::Unsupported(
                "total algebra must list base then fibre generators".into(),
            ));
        }
        let m = RelativeSullivanModel { base, total, fibre };
        for i in 0..nb {
            let restricted = m.include_base(m.base.image(i));
            if &restricted != m.total.image(i) {
                return Err(Error::Unsupported(format!(
                    "total differential does not extend the base on `{}`",
                    tg[i].name
                )));
            }
        }
        if let Some(g) = m.fibre_restriction_mismatch() {
            return Err(Error::Unsupported(format!(
                "fibre restriction differs on `{g}`"
            )));
        }
        Ok(m)
    }

    pub fn base(&self) -> &Differential {
        &self.base
    }

    pub fn total(&self) -> &Differential {
        &self.total
    }

    pub fn fibre(&self) -> &Differential {
        &self.fibre
    }

    pub fn base_algebra(&self) -> &Arc<FreeGcAlgebra> {
        self.base.algebra()
    }

    pub fn total_algebra(&self) -> &Arc<FreeGcAlgebra> {
        self.total.algebra()
    }

    pub fn fibre_algebra(&self) -> &Arc<FreeGcAlgebra> {
        self.fibre.algebra()
    }

    pub fn n_base(&self) -> usize {
        self.base.algebra().ngens()
    }

    /// `π*`.
    pub fn include_base(&self, b: &AlgElement) -> AlgElement {
        let map: Vec<Option<usize>> = (0..self.n_base()).map(Some).collect();
        b.remap(self.total_algebra(), &map)
    }

    pub fn include_fibre(&self, a: &AlgElement) -> AlgElement {
        let nb = self.n_base();
        let map: Vec<Option<usize>> = (0..self.fibre_algebra().ngens())
            .map(|i| Some(nb + i))
            .collect();
        a.remap(self.total_algebra(), &map)
    }

    /// Sets the base generators to zero.
    pub fn restrict_to_fibre(&self, e: &AlgElement) -> AlgElement {
        let nb = self.n_base();
        let map: Vec<Option<usize>> = (0..self.total_algebra().ngens())
            .map(|i| i.checked_sub(nb))
            .collect();
        e.remap(self.fibre_algebra(), &map)
    }

    /// Name of the first fibre generator whose differential does not restrict
    /// to the fibre differential, if any.
    pub fn fibre_restriction_mismatch(&self) -> Option<String> {
        let nb = self.n_base();
        for (j, g) in self.fibre_algebra().generators().iter().enumerate() {
            if &self.restrict_to_fibre(self.total.image(nb + j)) != self.fibre.image(j) {
                return Some(g.name.clone());
            }
        }
        None
    }

    /// The image of `D` on a generator, by name.
    pub fn d_of(&self, name: &str) -> Option<&AlgElement> {
        self.total_algebra()
            .index_of(name)
            .map(|i| self.total.image(i))
    }
}

/// `C*(L; A)` for an action of `L` on `A`.
pub fn ce_total(action: &LieAction, base_names: &[String]) -> Result<RelativeSullivanModel> {
    let base = ce_base(&action.lie, base_names)?;
    let fib_alg = action.fibre.algebra();
    let nb = base.algebra().ngens();
    let gens: Vec<Generator> = base
        .algebra()
        .generators()
        .iter()
        .chain(fib_alg.generators())
        .cloned()
        .collect();
    let total = FreeGcAlgebra::new(gens)?;
    let base_map: Vec<Option<usize>> = (0..nb).map(Some).collect();
    let fib_map: Vec<Option<usize>> = (0..fib_alg.ngens()).map(|i| Some(nb + i)).collect();

    let mut images = Vec::with_capacity(total.ngens());
    for i in 0..nb {
        images.push(base.image(i).remap(&total, &base_map));
    }
    for j in 0..fib_alg.ngens() {
        let a = fib_alg.gen(j);
        let mut img = action.fibre.image(j).remap(&total, &fib_map);
        for (i, theta) in action.act.iter().enumerate() {
            let la = theta.apply(&a)?.remap(&total, &fib_map);
            if !la.is_zero() {
                img = &img - &(&total.gen(i) * &la);
            }
        }
        images.push(img);
    }
    let total_d = Differential::new(Derivation::new(&total, 1, images)?)?;
    RelativeSullivanModel::new(base, total_d, action.fibre.clone())
}

/// Result of comparing the `ℂPⁿ` model with its formal quotient.
#[derive(Debug)]
pub struct FormalityCheck {
    pub quotient: CompleteIntersection,
    /// `C(D(g))` reduces to zero in the quotient for every generator `g`.
    pub chain_map: bool,
    /// Degrees `0..=bound` where `C` was checked to be a cohomology isomorphism.
    pub bound: u32,
    pub cohomology_iso: bool,
    pub failures: Vec<u32>,
}

/// The map `C` from the Chevalley–Eilenberg model of `ℂPⁿ` (base
/// generators `x_2..x_{n+1}`, fibre `x, y`) to `E_n`, sending `y ↦ 0`.
pub fn formality_quotient_cpn(
    model: &RelativeSullivanModel,
    n: u32,
    bound: u32,
) -> Result<FormalityCheck> {
    let ci = CompleteIntersection::projective_space(n)?;
    let total = model.total_algebra();
    let amb = ci.ambient().clone();
    let nb = n as usize;
    if total.ngens() != nb + 2 {
        return Err(Error::InvalidSpace(
            "expected the projective space model".into(),
        ));
    }
    let mut targets: Vec<AlgElement> = (0..nb).map(|i| amb.gen(i)).collect();
    targets.push(amb.gen(nb));
    targets.push(amb.zero());
    let c = |e: &AlgElement| ci.normal_form(&e.substitute(&amb, &targets));

    let chain_map = (0..total.ngens()).all(|i| c(model.total.image(i)).is_zero());

    let mut failures = Vec::new();
    let mut prev_rank = 0usize;
    for k in 0..=bound {
        let src = total.graded_basis(k);
        let tgt = MonomialIndex::new(total.graded_basis(k + 1));
        let d = graded_map_matrix(&src, &tgt, total, |e| model.total.apply(e))?;
        let d_rank = linalg::rank(&d);
        let cycles = linalg::nullspace(&d, src.len());
        let quotient_basis: Vec<Monomial> = amb
            .graded_basis(k)
            .into_iter()
            .filter(|m| m.0[nb] <= n)
            .collect();
        let qidx = MonomialIndex::new(quotient_basis);
        let mut cols = Vec::new();
        for z in &cycles {
            let elem = total.from_terms(
                src.iter()
                    .zip(z)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c.clone())),
            );
            cols.push(qidx.coords(&c(&elem)));
        }
        let rank_c = if cols.is_empty() || qidx.is_empty() {
            0
        } else {
            linalg::rank(&linalg::transpose(&cols))
        };
        let surjective = rank_c == qidx.len();
        let injective = cycles.len() - rank_c == prev_rank;
        if !(surjective && injective) {
            failures.push(k);
        }
        prev_rank = d_rank;
    }
    Ok(FormalityCheck {
        quotient: ci,
        chain_map,
        bound,
        cohomology_iso: failures.is_empty(),
        failures,
    })
}

/// `dim H^k` of the total space for `k ≤ up_to`.
pub fn total_cohomology(model: &RelativeSullivanModel, up_to: u32) -> Result<Vec<usize>> {
    cohomology_dims(model.total(), up_to)
}
