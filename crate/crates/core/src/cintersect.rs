//! Complete intersections `E = B[x_1..x_n]/(x_j^{m_j} − r_j)` over a
//! polynomial ring `B` in even degrees.
//!
//! Elements of `E` live in the ambient polynomial algebra on the base
//! generators followed by the fibre variables, and are kept in normal form:
//! every fibre exponent `α_j < m_j`. The rewriting order is fibre-weighted
//! degree first, then lexicographic on the fibre exponents. Each `x_j^{m_j}`
//! is the leading term of its relation in that order and the leading terms are
//! pairwise coprime, so the relations are a Gröbner basis and the reduced
//! monomials `x^α` form a free `B`-module basis.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcalg::{AlgElement, Derivation, FreeGcAlgebra, Generator, Monomial};
use crate::linalg::{self, Matrix};
use crate::Q;

/// Square matrix with entries in a commutative (even) algebra.
pub type RingMatrix = Vec<Vec<AlgElement>>;

/// How the fibre fundamental class is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `ε(x^{m−1}) = 1` on the top basis monomial.
    #[default]
    TopMonomial,
    /// `ε(det ∂f̄/∂x) = χ`, the rank of the fibre algebra.
    Jacobian,
}

#[derive(Debug)]
pub struct CompleteIntersection {
    base: Arc<FreeGcAlgebra>,
    ambient: Arc<FreeGcAlgebra>,
    n_base: usize,
    mults: Vec<u32>,
    tails: Vec<AlgElement>,
    basis: Vec<Vec<u32>>,
    basis_pos: HashMap<Vec<u32>, usize>,
    orientation: Orientation,
    eps_top: Q,
    cache: Mutex<HashMap<Vec<u32>, AlgElement>>,
}

fn lex_less(a: &[u32], b: &[u32]) -> bool {
    a < b
}

impl CompleteIntersection {
    /// `ambient` lists the base generators first (`n_base` of them) and then
    /// the fibre variables; `tails[j]` is `r_j`, an ambient element of degree
    /// `m_j·|x_j|`.
    pub fn new(
        ambient: Arc<FreeGcAlgebra>,
        n_base: usize,
        mults: Vec<u32>,
        tails: Vec<AlgElement>,
        orientation: Orientation,
    ) -> Result<Self> {
        let nf = ambient.ngens() - n_base;
        if mults.len() != nf || tails.len() != nf {
            return Err(Error::InvalidRelation(
                "one multiplicity and one relation per fibre variable".into(),
            ));
        }
        if let Some(g) = ambient.generators().iter().find(|g| g.is_odd()) {
            return Err(Error::InvalidRelation(format!(
                "generator `{}` has odd degree",
                g.name
            )));
        }
        let gens = ambient.generators();
        for j in 0..nf {
            let var = &gens[n_base + j];
            if mults[j] == 0 {
                return Err(Error::InvalidRelation(format!(
                    "multiplicity of `{}` is zero",
                    var.name
                )));
            }
            let t = &tails[j];
            if t.algebra() != &ambient {
                return Err(Error::AlgebraMismatch);
            }
            let expected = mults[j] * var.degree;
            if !t.is_homogeneous_of(expected) {
                return Err(Error::InvalidRelation(format!(
                    "relation for `{}` is not homogeneous of degree {expected}",
                    var.name
                )));
            }
            let mut lead = vec![0u32; nf];
            lead[j] = mults[j];
            for (m, _) in t.iter() {
                let fib = &m.0[n_base..];
                if fib[j] >= mults[j] {
                    return Err(Error::InvalidRelation(format!(
                        "relation for `{}` has a tail term of {}-degree ≥ {}",
                        var.name, var.name, mults[j]
                    )));
                }
                let pure = m.0[..n_base].iter().all(|&e| e == 0);
                if pure {
                    let reduced = fib.iter().zip(&mults).all(|(a, m)| a < m);
                    if !reduced || !lex_less(fib, &lead) {
                        return Err(Error::InvalidRelation(format!(
                            "pure fibre tail term {} of `{}` must be reduced and below the leading power",
                            ambient.format_monomial(m),
                            var.name
                        )));
                    }
                }
            }
        }
        let base = FreeGcAlgebra::new(gens[..n_base].to_vec())?;

        let mut basis: Vec<Vec<u32>> = vec![Vec::new()];
        for &m in &mults {
            basis = basis
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        let fdeg = |a: &[u32]| -> u32 {
            a.iter()
                .zip(&gens[n_base..])
                .map(|(e, g)| e * g.degree)
                .sum()
        };
        basis.sort_by(|a, b| fdeg(a).cmp(&fdeg(b)).then_with(|| b.cmp(a)));
        let basis_pos = basis
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();

        let mut ci = CompleteIntersection {
            base,
            ambient,
            n_base,
            mults,
            tails,
            basis,
            basis_pos,
            orientation,
            eps_top: Q::one(),
            cache: Mutex::new(HashMap::new()),
        };
        if orientation == Orientation::Jacobian {
            let det = ci.euler_class();
            let c = det.coeff(&ci.top_monomial());
            if c.is_zero() {
                return Err(Error::DegeneratePairing);
            }
            ci.eps_top = Q::from_integer(ci.rank().into()) / c;
        }
        Ok(ci)
    }

    /// `ℚ[x_2..x_{n+1}][x]/(x^{n+1} − Σ x_i x^{n+1−i})` with `|x| = 2`, `|x_i| = 2i`.
    pub fn projective_space(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("projective space needs n ≥ 1".into()));
        }
        let mut gens: Vec<Generator> = (2..=n + 1)
            .map(|i| Generator::new(format!("x_{i}"), 2 * i))
            .collect();
        gens.push(Generator::new("x", 2));
        let amb = FreeGcAlgebra::new(gens)?;
        let nb = n as usize;
        let x = amb.gen(nb);
        let mut tail = amb.zero();
        for i in 2..=n + 1 {
            tail += &(&amb.gen(i as usize - 2) * &x.pow(n + 1 - i));
        }
        Self::new(amb, nb, vec![n + 1], vec![tail], Orientation::TopMonomial)
    }

    /// `ℚ[z_{4n}][x]/(x² − z_{4n})` with `|x| = 2n`.
    pub fn even_sphere(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpace("even sphere needs n ≥ 1".into()));
        }
        let amb = FreeGcAlgebra::from_pairs(&[
            (format!("z_{}", 4 * n), 4 * n),
            ("x".to_string(), 2 * n),
        ])?;
        let z = amb.gen(0);
        Self::new(amb, 1, vec![2], vec![z], Orientation::TopMonomial)
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Result<Self> {
        Self::new(
            self.ambient.clone(),
            self.n_base,
            self.mults.clone(),
            self.tails.clone(),
            orientation,
        )
    }

    pub fn base(&self) -> &Arc<FreeGcAlgebra> {
        &self.base
    }

    pub fn ambient(&self) -> &Arc<FreeGcAlgebra> {
        &self.ambient
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn n_fibre(&self) -> usize {
        self.mults.len()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mults
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `ε` of the top basis monomial.
    pub fn epsilon_top(&self) -> &Q {
        &self.eps_top
    }

    /// Rank of `E` as a `B`-module, which is also `χ` of the fibre.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn fibre_var(&self, j: usize) -> AlgElement {
        self.ambient.gen(self.n_base + j)
    }

    /// `f_j = x_j^{m_j} − r_j`.
    pub fn relation(&self, j: usize) -> AlgElement {
        &self.fibre_var(j).pow(self.mults[j]) - &self.tails[j]
    }

    pub fn relations(&self) -> Vec<AlgElement> {
        (0..self.n_fibre()).map(|j| self.relation(j)).collect()
    }

    /// Fibre exponent vectors of the module basis, in graded order.
    pub fn module_basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> AlgElement {
        self.ambient
            .monomial(&self.with_base(&vec![0; self.n_base], &self.basis[i]))
    }

    pub fn top_monomial(&self) -> Monomial {
        let top: Vec<u32> = self.mults.iter().map(|m| m - 1).collect();
        Monomial(self.with_base(&vec![0; self.n_base], &top))
    }

    /// Degree of the fibre fundamental class.
    pub fn top_degree(&self) -> u32 {
        self.ambient.degree_of(&self.top_monomial())
    }

    fn with_base(&self, base: &[u32], fib: &[u32]) -> Vec<u32> {
        let mut v = Vec::with_capacity(base.len() + fib.len());
        v.extend_from_slice(base);
        v.extend_from_slice(fib);
        v
    }

    fn is_reduced(&self, fib: &[u32]) -> bool {
        fib.iter().zip(&self.mults).all(|(a, m)| a < m)
    }

    pub fn include_base(&self, b: &AlgElement) -> AlgElement {
        let map: Vec<Option<usize>> = (0..self.n_base).map(Some).collect();
        b.remap(&self.ambient, &map)
    }

    fn reduce_fibre(&self, fib: &[u32]) -> AlgElement {
        if let Some(hit) = self.cache.lock().unwrap().get(fib) {
            return hit.clone();
        }
        let j = (0..fib.len())
            .find(|&j| fib[j] >= self.mults[j])
            .expect("reduce_fibre called on a reduced monomial");
        let mut rest = fib.to_vec();
        rest[j] -= self.mults[j];
        let mut out = self.ambient.zero();
        for (t, c) in self.tails[j].iter() {
            let mut exps = t.0.clone();
            for (i, r) in rest.iter().enumerate() {
                exps[self.n_base + i] += r;
            }
            if self.is_reduced(&exps[self.n_base..]) {
                out.add_term(Monomial(exps), c.clone());
            } else {
                let sub = self.reduce_fibre(&exps[self.n_base..]);
                for (mm, k) in sub.iter() {
                    let mut e = mm.0.clone();
                    for i in 0..self.n_base {
                        e[i] += exps[i];
                    }
                    out.add_term(Monomial(e), c * k);
                }
            }
        }
        self.cache.lock().unwrap().insert(fib.to_vec(), out.clone());
        out
    }

    /// Unique representative with all fibre exponents below their multiplicity.
    pub fn normal_form(&self, e: &AlgElement) -> AlgElement {
        let mut out = self.ambient.zero();
        for (m, c) in e.iter() {
            let fib = &m.0[self.n_base..];
            if self.is_reduced(fib) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            for (mm, k) in self.reduce_fibre(fib).iter() {
                let mut exps = mm.0.clone();
                for i in 0..self.n_base {
                    exps[i] += m.0[i];
                }
                out.add_term(Monomial(exps), c * k);
            }
        }
        out
    }

    pub fn is_normal(&self, e: &AlgElement) -> bool {
        e.iter().all(|(m, _)| self.is_reduced(&m.0[self.n_base..]))
    }

    /// Product in `E`.
    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        self.normal_form(&(a * b))
    }

    pub fn pow(&self, a: &AlgElement, k: u32) -> AlgElement {
        let mut acc = self.ambient.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Coordinates over `B` in the module basis.
    pub fn module_coords(&self, e: &AlgElement) -> Vec<AlgElement> {
        let mut out = vec![self.base.zero(); self.rank()];
        for (m, c) in self.normal_form(e).iter() {
            let i = self.basis_pos[&m.0[self.n_base..]];
            out[i].add_term(Monomial(m.0[..self.n_base].to_vec()), c.clone());
        }
        out
    }

    pub fn from_coords(&self, coords: &[AlgElement]) -> AlgElement {
        let mut out = self.ambient.zero();
        for (i, b) in coords.iter().enumerate() {
            out += &(&self.include_base(b) * &self.basis_element(i));
        }
        out
    }

    /// Matrix of multiplication by `e` over `B`: column `j` holds the
    /// coordinates of `e·x^{β_j}`.
    pub fn multiplication_matrix(&self, e: &AlgElement) -> RingMatrix {
        let n = self.rank();
        let mut m = vec![vec![self.base.zero(); n]; n];
        for j in 0..n {
            let col = self.module_coords(&(e * &self.basis_element(j)));
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }

    /// `Tr_{E/B}(e)`.
    pub fn trace(&self, e: &AlgElement) -> AlgElement {
        let mut out = self.base.zero();
        for j in 0..self.rank() {
            out += &self.module_coords(&(e * &self.basis_element(j)))[j];
        }
        out
    }

    /// The fibre integral `π_!`: the top-basis coordinate scaled by `ε(top)`.
    pub fn fibre_integrate(&self, e: &AlgElement) -> AlgElement {
        let top = self.rank() - 1;
        self.module_coords(e)[top].scale(&self.eps_top)
    }

    /// `det(∂f_i/∂x_j)`, not reduced.
    pub fn jacobian_determinant(&self) -> AlgElement {
        let rels = self.relations();
        let n = self.n_fibre();
        let jac: RingMatrix = rels
            .iter()
            .map(|f| {
                (0..n)
                    .map(|j| {
                        Derivation::partial(&self.ambient, self.n_base + j)
                            .apply(f)
                            .expect("same algebra")
                    })
                    .collect()
            })
            .collect();
        ring_det(&jac, &self.ambient)
    }

    /// The Euler class: the Jacobian determinant in normal form.
    pub fn euler_class(&self) -> AlgElement {
        self.normal_form(&self.jacobian_determinant())
    }

    /// Gram matrix of the fibre algebra (base generators set to zero) under
    /// `(a, b) ↦ ε(ab)` in the module basis.
    pub fn fibre_gram(&self) -> Matrix {
        let n = self.rank();
        let top = self.top_monomial();
        let mut g = linalg::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let p = self.mul(&self.basis_element(i), &self.basis_element(j));
                g[i][j] = p.coeff(&top) * &self.eps_top;
            }
        }
        g
    }

    /// Checks the fibre algebra is a Poincaré duality algebra.
    pub fn check_poincare_duality(&self) -> Result<()> {
        let g = self.fibre_gram();
        if linalg::rank(&g) != self.rank() {
            return Err(Error::DegeneratePairing);
        }
        Ok(())
    }

    /// Characteristic polynomial `det(t − M_e)` of multiplication by `e`,
    /// coefficients over `B` indexed by the power of `t`. Verifies `p(e) = 0`
    /// in `E`.
    pub fn characteristic_polynomial(&self, e: &AlgElement) -> Result<Vec<AlgElement>> {
        let m = self.multiplication_matrix(e);
        let p = faddeev_leverrier(&m, &self.base);
        let value = self.evaluate_polynomial(&p, e);
        if !value.is_zero() {
            return Err(Error::InvalidRelation(format!(
                "characteristic polynomial does not vanish at the element: {value}"
            )));
        }
        Ok(p)
    }

    /// `Σ p_k e^k` in `E`, by Horner's rule.
    pub fn evaluate_polynomial(&self, p: &[AlgElement], e: &AlgElement) -> AlgElement {
        let mut acc = self.ambient.zero();
        for c in p.iter().rev() {
            acc = &self.mul(&acc, e) + &self.include_base(c);
        }
        self.normal_form(&acc)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn ring_det(m: &RingMatrix, alg: &Arc<FreeGcAlgebra>) -> AlgElement {
    let n = m.len();
    if n == 0 {
        return alg.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = alg.zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: RingMatrix = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &ring_det(&minor, alg);
        if c % 2 == 0 {
            out += &term;
        } else {
            out = &out - &term;
        }
    }
    out
}

pub fn ring_mat_mul(a: &RingMatrix, b: &RingMatrix, alg: &Arc<FreeGcAlgebra>) -> RingMatrix {
    let n = a.len();
    let k = b.len();
    let cols = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let mut s = alg.zero();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            s += &(&a[i][t] * &b[t][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `det(t·I − m)`, lowest power first.
pub fn faddeev_leverrier(m: &RingMatrix, alg: &Arc<FreeGcAlgebra>) -> Vec<AlgElement> {
    let n = m.len();
    let mut coeffs = vec![alg.zero(); n + 1];
    coeffs[n] = alg.one();
    let mut mk: RingMatrix = vec![vec![alg.zero(); n]; n];
    for k in 1..=n {
        let mut next = ring_mat_mul(m, &mk, alg);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = ring_mat_mul(m, &mk, alg);
        let mut tr = alg.zero();
        for (i, row) in am.iter().enumerate() {
            tr += &row[i];
        }
        coeffs[n - k] = tr.scale(&(-Q::one() / Q::from_integer(k.into())));
    }
    coeffs
}

/// Gauss–Jordan inverse over a polynomial ring, pivoting only on nonzero
/// constants (the units).
pub fn ring_inverse(m: &RingMatrix, alg: &Arc<FreeGcAlgebra>) -> Result<RingMatrix> {
    let n = m.len();
    let mut a: RingMatrix = m.to_vec();
    let mut inv: RingMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { alg.one() } else { alg.zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero() && a[r][c].is_constant())
            .ok_or(Error::NoUnitPivot)?;
        a.swap(c, p);
        inv.swap(c, p);
        let s = a[c][c].constant_term().recip();
        a[c] = a[c].iter().map(|x| x.scale(&s)).collect();
        inv[c] = inv[c].iter().map(|x| x.scale(&s)).collect();
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                let t = &f * &a[c][j];
                a[r][j] = &a[r][j] - &t;
                let t = &f * &inv[c][j];
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Ok(inv)
}
