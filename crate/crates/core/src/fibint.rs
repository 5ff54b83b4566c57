//! Chain-level fibre integration.
//!
//! `Π: B ⊗ ΛV → B` is a map of `B`-modules of degree `−d`, normalized by an
//! orientation of the fibre. Module maps follow the Koszul convention
//! `Π(b·e) = (−1)^{d|b|} b·Π(e)`, and the cycle condition reads
//! `d_B ∘ Π = (−1)^d Π ∘ D`. For even `d` both reduce to the unsigned forms.
//!
//! Three constructions are provided: the generic one for finite-dimensional
//! fibre algebras (products of odd spheres), the closed form for even
//! spheres, and the Leray–Hirsch formulas over a complete intersection.

use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

use crate::cemodel::RelativeSullivanModel;
use crate::cintersect::{ring_inverse, CompleteIntersection, RingMatrix};
use crate::error::{Error, Result};
use crate::gcalg::{AlgElement, Monomial};
use crate::linalg::{self, Matrix};
use crate::Q;

fn parity_sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

fn split(m: &Monomial, nb: usize) -> (Monomial, Monomial) {
    (Monomial(m.0[..nb].to_vec()), Monomial(m.0[nb..].to_vec()))
}

/// Fibre integration for a relative model whose fibre algebra is
/// finite-dimensional.
#[derive(Debug, Clone)]
pub struct FibreIntegration {
    model: RelativeSullivanModel,
    fibre_basis: Vec<Monomial>,
    top: Monomial,
    dim: u32,
    eps_top: Q,
}

impl FibreIntegration {
    pub fn model(&self) -> &RelativeSullivanModel {
        &self.model
    }

    /// Fibre monomials `x_S`, ordered by degree.
    pub fn fibre_basis(&self) -> &[Monomial] {
        &self.fibre_basis
    }

    pub fn top(&self) -> &Monomial {
        &self.top
    }

    /// Formal dimension `d` of the fibre.
    pub fn dimension(&self) -> u32 {
        self.dim
    }

    /// `ε` on a fibre element: the scaled coefficient of the top monomial.
    pub fn epsilon(&self, a: &AlgElement) -> Q {
        a.coeff(&self.top) * &self.eps_top
    }

    /// `ε(a·b)` for fibre monomials.
    pub fn pairing(&self, a: &Monomial, b: &Monomial) -> Q {
        match self.model.fibre_algebra().mul_monomials(a, b) {
            Some((neg, m)) if m == self.top => {
                let e = self.eps_top.clone();
                if neg {
                    -e
                } else {
                    e
                }
            }
            _ => Q::zero(),
        }
    }

    /// `Π(e)` for an element of the total algebra.
    pub fn apply(&self, e: &AlgElement) -> AlgElement {
        let base = self.model.base_algebra();
        let nb = self.model.n_base();
        let mut out = base.zero();
        for (m, c) in e.iter() {
            let (b, f) = split(m, nb);
            if f != self.top {
                continue;
            }
            let odd = self.dim % 2 == 1 && base.degree_of(&b) % 2 == 1;
            let v = c * &self.eps_top;
            out.add_term(b, if odd { -v } else { v });
        }
        out
    }

    /// First total monomial of degree `≤ bound` where `d_B Π ≠ (−1)^d Π D`.
    pub fn check_cycle(&self, bound: u32) -> Option<String> {
        let total = self.model.total_algebra();
        let s = parity_sign(self.dim % 2 == 1);
        for k in 0..=bound {
            for m in total.graded_basis(k) {
                let e = total.term(m.clone(), Q::one());
                let lhs = self
                    .model
                    .base()
                    .apply(&self.apply(&e))
                    .expect("base algebra");
                let rhs = self
                    .apply(&self.model.total().apply(&e).expect("total algebra"))
                    .scale(&s);
                if lhs != rhs {
                    return Some(format!(
                        "d_B Π ≠ (−1)^d Π D on {}: {} vs {}",
                        total.format_monomial(&m),
                        lhs,
                        rhs
                    ));
                }
            }
        }
        None
    }
}

/// Default degree bound for cycle checks: twice the fibre dimension.
pub fn default_cycle_bound(model: &RelativeSullivanModel) -> u32 {
    let d: u32 = model
        .fibre_algebra()
        .generators()
        .iter()
        .map(|g| g.degree)
        .sum();
    2 * d.max(1)
}

/// `Π` supported on the top fibre class with `Π(1⊗top) = eps_top`, verified
/// to be a cycle on all total monomials of degree `≤ bound`.
pub fn build_pi(model: &RelativeSullivanModel, eps_top: Q, bound: u32) -> Result<FibreIntegration> {
    let fibre = model.fibre_algebra();
    if fibre.generators().iter().any(|g| !g.is_odd()) {
        return Err(Error::InfiniteFibre);
    }
    if model.fibre().has_linear_part() {
        return Err(Error::Unsupported("fibre model is not minimal".into()));
    }
    if eps_top.is_zero() {
        return Err(Error::DegeneratePairing);
    }
    let dim: u32 = fibre.generators().iter().map(|g| g.degree).sum();
    let fibre_basis: Vec<Monomial> = (0..=dim).flat_map(|k| fibre.graded_basis(k)).collect();
    let top = Monomial(vec![1; fibre.ngens()]);
    let pi = FibreIntegration {
        model: model.clone(),
        fibre_basis,
        top,
        dim,
        eps_top,
    };
    if let Some(w) = pi.check_cycle(bound) {
        return Err(Error::NotACycle(w));
    }
    Ok(pi)
}

/// Degree-`p` piece of `Hom_B(E, B)` for a finite fibre: a `B`-linear map is
/// determined by its values on the fibre basis, `φ(a_s) ∈ B^{|a_s| + p}`.
struct HomPiece {
    slots: Vec<(usize, Monomial)>,
    pos: HashMap<(usize, Monomial), usize>,
}

fn hom_piece(model: &RelativeSullivanModel, fibre_basis: &[Monomial], p: i64) -> HomPiece {
    let base = model.base_algebra();
    let fib = model.fibre_algebra();
    let mut slots = Vec::new();
    for (s, a) in fibre_basis.iter().enumerate() {
        let deg = fib.degree_of(a) as i64 + p;
        if deg < 0 {
            continue;
        }
        for b in base.graded_basis(deg as u32) {
            slots.push((s, b));
        }
    }
    let pos = slots
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    HomPiece { slots, pos }
}

/// Matrix of `δφ = d_B∘φ − (−1)^p φ∘D` from degree `p` to `p + 1`.
fn hom_differential(
    model: &RelativeSullivanModel,
    fibre_basis: &[Monomial],
    p: i64,
) -> (Matrix, usize) {
    let base = model.base_algebra();
    let nb = model.n_base();
    let src = hom_piece(model, fibre_basis, p);
    let tgt = hom_piece(model, fibre_basis, p + 1);
    let index: HashMap<&Monomial, usize> = fibre_basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut mat = linalg::zeros(tgt.slots.len(), src.slots.len());
    // D(a_u) split as Σ c · b · a_t
    let d_fibre: Vec<Vec<(usize, Monomial, Q)>> = fibre_basis
        .iter()
        .map(|a| {
            let e = model.include_fibre(&model.fibre_algebra().term(a.clone(), Q::one()));
            model
                .total()
                .apply(&e)
                .expect("total algebra")
                .iter()
                .map(|(m, c)| {
                    let (b, f) = split(m, nb);
                    (index[&f], b, c.clone())
                })
                .collect()
        })
        .collect();
    let sp = parity_sign(p.rem_euclid(2) == 1);
    for (col, (t, beta)) in src.slots.iter().enumerate() {
        let beta_el = base.term(beta.clone(), Q::one());
        let mut put = |u: usize, value: &AlgElement| {
            for (m, c) in value.iter() {
                let row = tgt.pos[&(u, m.clone())];
                mat[row][col] += c;
            }
        };
        put(*t, &model.base().apply(&beta_el).expect("base algebra"));
        for (u, terms) in d_fibre.iter().enumerate() {
            for (tt, b, c) in terms {
                if tt != t {
                    continue;
                }
                let sb = parity_sign(p.rem_euclid(2) == 1 && base.degree_of(b) % 2 == 1);
                let v = (&base.term(b.clone(), Q::one()) * &beta_el).scale(&(-(&sp * &sb * c)));
                put(u, &v);
            }
        }
    }
    (mat, src.slots.len())
}

/// `dim H^p(Hom_B(E, B))` for a model with finite fibre.
pub fn hom_cohomology_dim(model: &RelativeSullivanModel, p: i64) -> Result<usize> {
    let fibre = model.fibre_algebra();
    if fibre.generators().iter().any(|g| !g.is_odd()) {
        return Err(Error::InfiniteFibre);
    }
    let dim: u32 = fibre.generators().iter().map(|g| g.degree).sum();
    let basis: Vec<Monomial> = (0..=dim).flat_map(|k| fibre.graded_basis(k)).collect();
    let (out_mat, n) = hom_differential(model, &basis, p);
    let (in_mat, _) = hom_differential(model, &basis, p - 1);
    let kernel = n - linalg::rank(&out_mat);
    Ok(kernel - linalg::rank(&in_mat))
}

/// Dimension of the space of fibre integrations up to homotopy: the
/// cohomology of `Hom_B(E, B)` in degree `−d`.
pub fn uniqueness_dimension(model: &RelativeSullivanModel) -> Result<usize> {
    let d: u32 = model
        .fibre_algebra()
        .generators()
        .iter()
        .map(|g| g.degree)
        .sum();
    hom_cohomology_dim(model, -(d as i64))
}

/// Sign convention for `bar-Π(e) = (e′ ↦ σ(e)·Π(e·e′))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BarPiConvention {
    /// `σ(e) = (−1)^{d + d|e|}`.
    #[default]
    Standard,
    /// `σ(e) = (−1)^d`, dropping the Koszul factor. Not a chain map when `d`
    /// is odd; kept to exercise the checks.
    WithoutKoszulSign,
}

impl FibreIntegration {
    fn sigma(&self, conv: BarPiConvention, deg_e: u32) -> Q {
        let d_odd = self.dim % 2 == 1;
        match conv {
            BarPiConvention::Standard => parity_sign(d_odd ^ (d_odd && deg_e % 2 == 1)),
            BarPiConvention::WithoutKoszulSign => parity_sign(d_odd),
        }
    }

    /// `bar-Π(e)(e′)` for homogeneous `e`.
    pub fn bar_pi(
        &self,
        conv: BarPiConvention,
        e: &AlgElement,
        e2: &AlgElement,
    ) -> Result<AlgElement> {
        let Some(deg) = e.homogeneous_degree()? else {
            return Ok(self.model.base_algebra().zero());
        };
        Ok(self.apply(&(e * e2)).scale(&self.sigma(conv, deg)))
    }

    /// `bar-Π` in fibre coordinates: entry `(s, u)` is `bar-Π(a_s)(a_u)`.
    pub fn bar_pi_matrix(&self, conv: BarPiConvention) -> Matrix {
        let fib = self.model.fibre_algebra();
        let n = self.fibre_basis.len();
        let mut m = linalg::zeros(n, n);
        for (s, a) in self.fibre_basis.iter().enumerate() {
            let sg = self.sigma(conv, fib.degree_of(a));
            for (u, b) in self.fibre_basis.iter().enumerate() {
                m[s][u] = self.pairing(a, b) * &sg;
            }
        }
        m
    }

    fn total_fibre_basis(&self) -> Vec<AlgElement> {
        let fib = self.model.fibre_algebra();
        self.fibre_basis
            .iter()
            .map(|a| self.model.include_fibre(&fib.term(a.clone(), Q::one())))
            .collect()
    }

    /// Checks `δ(bar-Π(e)) = bar-Π(De)` on `e = b·a_s` for base monomials `b`
    /// of degree `≤ base_bound`, evaluated on the fibre basis.
    pub fn check_bar_pi_chain_map(&self, conv: BarPiConvention, base_bound: u32) -> Option<String> {
        let base = self.model.base_algebra();
        let d = self.model.total();
        let fibre = self.total_fibre_basis();
        for k in 0..=base_bound {
            for bm in base.graded_basis(k) {
                let b = self.model.include_base(&base.term(bm, Q::one()));
                for a in &fibre {
                    let e = &b * a;
                    let Ok(Some(deg_e)) = e.homogeneous_degree() else {
                        continue;
                    };
                    let de = d.apply(&e).expect("total algebra");
                    let phi_sign = parity_sign((deg_e + self.dim) % 2 == 1);
                    for u in &fibre {
                        let phi_u = self.bar_pi(conv, &e, u).expect("homogeneous");
                        let lhs = &self.model.base().apply(&phi_u).expect("base algebra")
                            - &self
                                .bar_pi(conv, &e, &d.apply(u).expect("total algebra"))
                                .expect("homogeneous")
                                .scale(&phi_sign);
                        let rhs = self.bar_pi(conv, &de, u).expect("homogeneous");
                        if lhs != rhs {
                            return Some(format!("bar-Π is not a chain map at e = {e}, e′ = {u}"));
                        }
                    }
                }
            }
        }
        None
    }

    /// Checks `bar-Π(b·e) = b·bar-Π(e)` for base monomials `b` of degree
    /// `≤ base_bound` and fibre basis elements `e`, `e′`.
    pub fn check_bar_pi_linearity(&self, conv: BarPiConvention, base_bound: u32) -> Option<String> {
        let base = self.model.base_algebra();
        let fibre = self.total_fibre_basis();
        for k in 1..=base_bound {
            for bm in base.graded_basis(k) {
                let b_base = base.term(bm, Q::one());
                let b = self.model.include_base(&b_base);
                for a in &fibre {
                    for u in &fibre {
                        let lhs = self.bar_pi(conv, &(&b * a), u).expect("homogeneous");
                        let rhs = &b_base * &self.bar_pi(conv, a, u).expect("homogeneous");
                        if lhs != rhs {
                            return Some(format!("bar-Π is not B-linear for b = {b_base}"));
                        }
                    }
                }
            }
        }
        None
    }
}

/// `Δ_!(1)` and the fibrewise Euler class for a finite Poincaré fibre.
#[derive(Debug, Clone)]
pub struct UmkehrResult {
    /// Terms `w · a_s ⊗ a_t` of `Δ_!(1)`.
    pub delta_shriek_one: Vec<(Monomial, Monomial, Q)>,
    /// `Δ*Δ_!(1)`, in the total algebra.
    pub euler: AlgElement,
}

impl UmkehrResult {
    /// True when `Δ_!(1) = Σ_{S₁⊔S₂=F} ±x_{S₁}⊗x_{S₂}` with every splitting
    /// present exactly once.
    pub fn has_splitting_shape(&self) -> bool {
        let Some((first, _, _)) = self.delta_shriek_one.first() else {
            return false;
        };
        let m = first.0.len();
        let mut seen = std::collections::HashSet::new();
        for (a, b, w) in &self.delta_shriek_one {
            if w.abs() != Q::one() {
                return false;
            }
            if a.0.iter().zip(&b.0).any(|(x, y)| x + y != 1) {
                return false;
            }
            if !seen.insert(a.clone()) {
                return false;
            }
        }
        seen.len() == 1usize << m
    }
}

/// Solves `bar(Π⊗Π)(Δ_!(1)) = Δ*(bar-Π(1))` over `ℚ` in fibre coordinates.
pub fn umkehr_euler(pi: &FibreIntegration) -> Result<UmkehrResult> {
    let fib = pi.model.fibre_algebra();
    let basis = &pi.fibre_basis;
    let n = basis.len();
    let gram: Matrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| pi.pairing(a, b)).collect())
        .collect();
    if linalg::rank(&gram) != n {
        return Err(Error::DegeneratePairing);
    }
    let deg: Vec<u32> = basis.iter().map(|a| fib.degree_of(a)).collect();
    // unknown w_{st} at column s*n + t; equation (u, v) at row u*n + v
    let mut sys = linalg::zeros(n * n, n * n);
    let mut rhs = vec![Q::zero(); n * n];
    for u in 0..n {
        for v in 0..n {
            let row = u * n + v;
            rhs[row] = gram[u][v].clone();
            for s in 0..n {
                if gram[s][u].is_zero() {
                    continue;
                }
                for t in 0..n {
                    if gram[t][v].is_zero() {
                        continue;
                    }
                    let sg = parity_sign(deg[t] % 2 == 1 && deg[u] % 2 == 1);
                    sys[row][s * n + t] = &gram[s][u] * &gram[t][v] * sg;
                }
            }
        }
    }
    let w = linalg::solve(&sys, &rhs).ok_or(Error::DegeneratePairing)?;
    let mut terms = Vec::new();
    let mut euler_fibre = fib.zero();
    for s in 0..n {
        for t in 0..n {
            let c = &w[s * n + t];
            if c.is_zero() {
                continue;
            }
            terms.push((basis[s].clone(), basis[t].clone(), c.clone()));
            let prod =
                &fib.term(basis[s].clone(), c.clone()) * &fib.term(basis[t].clone(), Q::one());
            euler_fibre += &prod;
        }
    }
    Ok(UmkehrResult {
        delta_shriek_one: terms,
        euler: pi.model.include_fibre(&euler_fibre),
    })
}

/// Closed-form `Π` for the even-sphere model `(ℚ[z] ⊗ Λ(x, y), Dy = x² − z)`:
/// `Π(z^j·y·x^k) = 0`, `Π(z^j·x^{2k}) = 0`, `Π(z^j·x^{2k+1}) = z^{j+k}`.
#[derive(Debug, Clone)]
pub struct EvenSpherePi {
    model: RelativeSullivanModel,
}

impl EvenSpherePi {
    pub fn new(model: &RelativeSullivanModel) -> Result<Self> {
        let t = model.total_algebra();
        let ok = t.ngens() == 3
            && model.n_base() == 1
            && t.generators()[1].name == "x"
            && t.generators()[2].name == "y"
            && {
                let x = t.gen(1);
                let z = t.gen(0);
                model.total().image(2) == &(&x.pow(2) - &z)
            };
        if !ok {
            return Err(Error::Unsupported(
                "not an even-sphere universal model".into(),
            ));
        }
        Ok(EvenSpherePi {
            model: model.clone(),
        })
    }

    pub fn model(&self) -> &RelativeSullivanModel {
        &self.model
    }

    pub fn apply(&self, e: &AlgElement) -> AlgElement {
        let base = self.model.base_algebra();
        let mut out = base.zero();
        for (m, c) in e.iter() {
            let (j, k, y) = (m.0[0], m.0[1], m.0[2]);
            if y == 1 || k % 2 == 0 {
                continue;
            }
            out.add_term(Monomial(vec![j + (k - 1) / 2]), c.clone());
        }
        out
    }

    /// First total monomial of degree `≤ bound` with `Π(De) ≠ d_B Π(e)`.
    pub fn check_cycle(&self, bound: u32) -> Option<String> {
        let total = self.model.total_algebra();
        for k in 0..=bound {
            for m in total.graded_basis(k) {
                let e = total.term(m.clone(), Q::one());
                let lhs = self
                    .model
                    .base()
                    .apply(&self.apply(&e))
                    .expect("base algebra");
                let rhs = self.apply(&self.model.total().apply(&e).expect("total algebra"));
                if lhs != rhs {
                    return Some(format!("Π is not a cycle on {}", total.format_monomial(&m)));
                }
            }
        }
        None
    }
}

/// Leray–Hirsch data: a homogeneous `B`-module basis of a complete
/// intersection with a unique top-degree element.
#[derive(Debug)]
pub struct LerayHirsch<'a> {
    ci: &'a CompleteIntersection,
    basis: Vec<AlgElement>,
    degrees: Vec<u32>,
    inverse_change: RingMatrix,
    top: usize,
    eps_top: Q,
}

impl<'a> LerayHirsch<'a> {
    pub fn new(ci: &'a CompleteIntersection, basis: Vec<AlgElement>) -> Result<Self> {
        if basis.len() != ci.rank() {
            return Err(Error::Unsupported(format!(
                "basis has {} elements, the module has rank {}",
                basis.len(),
                ci.rank()
            )));
        }
        let mut degrees = Vec::new();
        for b in &basis {
            degrees.push(b.homogeneous_degree()?.ok_or(Error::NotHomogeneous)?);
        }
        let max = *degrees.iter().max().expect("nonempty basis");
        let tops: Vec<usize> = (0..basis.len()).filter(|&i| degrees[i] == max).collect();
        if tops.len() != 1 {
            return Err(Error::NonUniqueTop);
        }
        let top = tops[0];
        let nf_top = ci.normal_form(&basis[top]);
        let eps_top = nf_top.coeff(&ci.top_monomial()) * ci.epsilon_top();
        if eps_top.is_zero() {
            return Err(Error::DegeneratePairing);
        }
        let n = basis.len();
        let cols: Vec<Vec<AlgElement>> = basis.iter().map(|b| ci.module_coords(b)).collect();
        let change: RingMatrix = (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect();
        let inverse_change = ring_inverse(&change, ci.base())?;
        Ok(LerayHirsch {
            ci,
            basis,
            degrees,
            inverse_change,
            top,
            eps_top,
        })
    }

    /// The basis `1, x, …, x^{r−1}` of a single-variable complete intersection.
    pub fn power_basis(ci: &'a CompleteIntersection) -> Result<Self> {
        let basis = (0..ci.rank()).map(|i| ci.basis_element(i)).collect();
        Self::new(ci, basis)
    }

    pub fn basis(&self) -> &[AlgElement] {
        &self.basis
    }

    /// Coefficients `b_i` with `e = Σ b_i·e_i`.
    pub fn decompose(&self, e: &AlgElement) -> Vec<AlgElement> {
        let coords = self.ci.module_coords(e);
        let base = self.ci.base();
        self.inverse_change
            .iter()
            .map(|row| {
                let mut s = base.zero();
                for (a, c) in row.iter().zip(&coords) {
                    if !a.is_zero() && !c.is_zero() {
                        s += &(a * c);
                    }
                }
                s
            })
            .collect()
    }

    /// `π_!(Σ b_i e_i) = ε(e_top)·b_top`.
    pub fn fibre_integrate(&self, e: &AlgElement) -> AlgElement {
        self.decompose(e)[self.top].scale(&self.eps_top)
    }

    /// `G_{ij} = π_!(e_i·e_j)`.
    pub fn gram(&self) -> RingMatrix {
        let n = self.basis.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.fibre_integrate(&self.ci.mul(&self.basis[i], &self.basis[j])))
                    .collect()
            })
            .collect()
    }

    /// Dual basis with `π_!(e_i·e_j^#) = δ_ij`.
    pub fn dual_basis(&self) -> Result<Vec<AlgElement>> {
        let inv = ring_inverse(&self.gram(), self.ci.base())?;
        let n = self.basis.len();
        Ok((0..n)
            .map(|j| {
                let mut s = self.ci.ambient().zero();
                for k in 0..n {
                    if !inv[k][j].is_zero() {
                        s += &(&self.ci.include_base(&inv[k][j]) * &self.basis[k]);
                    }
                }
                self.ci.normal_form(&s)
            })
            .collect())
    }

    /// `Σ (−1)^{|e_i|} e_i·e_i^#`.
    pub fn euler_class(&self) -> Result<AlgElement> {
        let dual = self.dual_basis()?;
        let mut out = self.ci.ambient().zero();
        for (i, (e, f)) in self.basis.iter().zip(&dual).enumerate() {
            let p = self.ci.mul(e, f);
            if self.degrees[i] % 2 == 1 {
                out = &out - &p;
            } else {
                out += &p;
            }
        }
        Ok(out)
    }
}

/// `π_!` through a Leray–Hirsch basis.
pub fn lh_fibre_integrate(
    ci: &CompleteIntersection,
    basis: &[AlgElement],
    e: &AlgElement,
) -> Result<AlgElement> {
    Ok(LerayHirsch::new(ci, basis.to_vec())?.fibre_integrate(e))
}

/// Euler class through the dual basis of a Leray–Hirsch basis.
pub fn lh_euler_class(ci: &CompleteIntersection, basis: &[AlgElement]) -> Result<AlgElement> {
    LerayHirsch::new(ci, basis.to_vec())?.euler_class()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Space;

    #[test]
    fn even_sphere_euler_class_is_twice_x() {
        for n in 1..=3 {
            let ci = CompleteIntersection::even_sphere(n).unwrap();
            let e = lh_euler_class(&ci, &[ci.ambient().one(), ci.fibre_var(0)]).unwrap();
            assert_eq!(e, ci.fibre_var(0).scale(&Q::from_integer(2.into())));
        }
    }

    #[test]
    fn projective_euler_class_matches_jacobian() {
        for n in 1..=3 {
            let ci = CompleteIntersection::projective_space(n).unwrap();
            let lh = LerayHirsch::power_basis(&ci).unwrap();
            assert_eq!(lh.euler_class().unwrap(), ci.euler_class(), "n = {n}");
        }
        let ci = CompleteIntersection::projective_space(2).unwrap();
        let a = ci.ambient();
        let x = a.gen_named("x").unwrap();
        let expected = &x.pow(2).scale(&Q::from_integer(3.into())) - &a.gen_named("x_2").unwrap();
        assert_eq!(
            lh_euler_class(&ci, &[a.one(), x.clone(), x.pow(2)]).unwrap(),
            expected
        );
    }

    #[test]
    fn non_unique_top() {
        let ci = CompleteIntersection::projective_space(1).unwrap();
        let x = ci.fibre_var(0);
        let r = LerayHirsch::new(&ci, vec![x.clone(), x.scale(&Q::from_integer(2.into()))]);
        assert!(matches!(r, Err(Error::NonUniqueTop)), "{r:?}");
    }

    #[test]
    fn even_sphere_pi_is_a_cycle() {
        let m = Space::even_sphere(2).unwrap().universal_model().unwrap();
        let pi = EvenSpherePi::new(&m.model).unwrap();
        assert!(pi.check_cycle(40).is_none());
        let t = m.model.total_algebra();
        let x = t.gen_named("x").unwrap();
        assert_eq!(pi.apply(&x.pow(5)), m.model.base_algebra().gen(0).pow(2));
        assert!(pi.apply(&x.pow(4)).is_zero());
    }

    #[test]
    fn three_sphere_pair() {
        let m = Space::odd_product(&[3, 3])
            .unwrap()
            .universal_model()
            .unwrap();
        let pi = build_pi(&m.model, Q::one(), 12).unwrap();
        assert_eq!(uniqueness_dimension(&m.model).unwrap(), 1);
        let u = umkehr_euler(&pi).unwrap();
        assert!(u.has_splitting_shape());
        assert!(u.euler.is_zero());
    }

    #[test]
    fn dropped_koszul_sign_is_detected_for_odd_dimension() {
        let m = Space::odd_product(&[3]).unwrap().universal_model().unwrap();
        let pi = build_pi(&m.model, Q::one(), 8).unwrap();
        assert!(pi
            .check_bar_pi_chain_map(BarPiConvention::Standard, 8)
            .is_none());
        assert!(pi
            .check_bar_pi_chain_map(BarPiConvention::WithoutKoszulSign, 8)
            .is_some());
    }
}
