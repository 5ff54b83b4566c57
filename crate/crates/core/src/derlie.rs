//! Finite-dimensional dg Lie algebras given by structure constants, and the
//! dg Lie algebra of positive derivations of a minimal model.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcalg::{Derivation, Differential, FreeGcAlgebra, Monomial};
use crate::linalg::{self, Matrix};
use crate::Q;

/// Sparse coordinate vector, sorted by basis index.
pub type SparseVec = Vec<(usize, Q)>;

pub const DEFAULT_BASIS_CAP: usize = 64;

/// A graded Lie algebra concentrated in positive degrees with a differential
/// of degree −1, stored by structure constants on a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DgLieAlgebra {
    names: Vec<String>,
    degrees: Vec<u32>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
    diff: Vec<SparseVec>,
}

fn sign(neg: bool) -> Q {
    if neg {
        -Q::one()
    } else {
        Q::one()
    }
}

fn to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl DgLieAlgebra {
    /// Builds and validates: degrees must match, and antisymmetry, Jacobi,
    /// `∂² = 0` and the derivation property of `∂` must hold exactly.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u32>,
        brackets: BTreeMap<(usize, usize), SparseVec>,
        diff: Vec<SparseVec>,
    ) -> Result<Self> {
        let l = Self::new_unchecked(names, degrees, brackets, diff)?;
        l.validate()?;
        Ok(l)
    }

    fn new_unchecked(
        names: Vec<String>,
        degrees: Vec<u32>,
        brackets: BTreeMap<(usize, usize), SparseVec>,
        diff: Vec<SparseVec>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || diff.len() != n {
            return Err(Error::InvalidLieAlgebra("inconsistent basis sizes".into()));
        }
        for (name, &d) in names.iter().zip(&degrees) {
            if d == 0 {
                return Err(Error::NonPositiveDegree {
                    name: name.clone(),
                    degree: 0,
                });
            }
        }
        let mut clean = BTreeMap::new();
        for ((i, j), v) in brackets {
            let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if v.is_empty() {
                continue;
            }
            for (k, _) in &v {
                if degrees[*k] != degrees[i] + degrees[j] {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "[{}, {}] has a component on {} of the wrong degree",
                        names[i], names[j], names[*k]
                    )));
                }
            }
            clean.insert((i, j), v);
        }
        let diff: Vec<SparseVec> = diff
            .into_iter()
            .map(|v| v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        for (j, v) in diff.iter().enumerate() {
            for (k, _) in v {
                if degrees[*k] + 1 != degrees[j] {
                    return Err(Error::InvalidLieAlgebra(format!(
                        "∂{} has a component on {} of the wrong degree",
                        names[j], names[*k]
                    )));
                }
            }
        }
        Ok(DgLieAlgebra {
            names,
            degrees,
            brackets: clean,
            diff,
        })
    }

    pub fn abelian(names: Vec<String>, degrees: Vec<u32>) -> Result<Self> {
        let n = names.len();
        Self::new(names, degrees, BTreeMap::new(), vec![Vec::new(); n])
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn basis_in_degree(&self, k: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == k).collect()
    }

    /// `[l_i, l_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        self.brackets.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `∂ l_j` in coordinates.
    pub fn diff_basis(&self, j: usize) -> &[(usize, Q)] {
        &self.diff[j]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(Vec::is_empty)
    }

    /// Bilinear extension of the bracket to dense coordinate vectors.
    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }

    pub fn apply_diff(&self, u: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (j, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, c) in &self.diff[j] {
                out[*k] += a * c;
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    fn format_vec(&self, v: &[Q]) -> String {
        let mut s = String::new();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let _ = write!(s, "{c}·{}", self.names[i]);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    /// First basis pair violating `[x,y] = −(−1)^{|x||y|}[y,x]`.
    pub fn check_antisymmetry(&self) -> Option<String> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s = sign((self.degrees[i] * self.degrees[j]) % 2 == 0);
                let lhs = self.bracket(&self.unit(i), &self.unit(j));
                let rhs: Vec<Q> = self
                    .bracket(&self.unit(j), &self.unit(i))
                    .iter()
                    .map(|c| c * &s)
                    .collect();
                if lhs != rhs {
                    return Some(format!(
                        "antisymmetry fails on ({}, {})",
                        self.names[i], self.names[j]
                    ));
                }
            }
        }
        None
    }

    /// First basis triple violating `[x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]`.
    pub fn check_jacobi(&self) -> Option<String> {
        let n = self.dim();
        let top = self.max_degree();
        let units: Vec<Vec<Q>> = (0..n).map(|i| self.unit(i)).collect();
        for x in 0..n {
            for y in 0..n {
                let xy = self.bracket(&units[x], &units[y]);
                let s = sign((self.degrees[x] * self.degrees[y]) % 2 == 1);
                for z in 0..n {
                    if self.degrees[x] + self.degrees[y] + self.degrees[z] > top {
                        continue;
                    }
                    let lhs = self.bracket(&units[x], &self.bracket(&units[y], &units[z]));
                    let a = self.bracket(&xy, &units[z]);
                    let b = self.bracket(&units[y], &self.bracket(&units[x], &units[z]));
                    let ok = lhs
                        .iter()
                        .zip(a.iter().zip(&b))
                        .all(|(l, (a, b))| *l == a + &s * b);
                    if !ok {
                        return Some(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.names[x], self.names[y], self.names[z]
                        ));
                    }
                }
            }
        }
        None
    }

    /// Checks `∂² = 0` and `∂[x,y] = [∂x,y] + (−1)^{|x|}[x,∂y]` on the basis.
    pub fn check_differential(&self) -> Option<String> {
        let n = self.dim();
        for i in 0..n {
            let dd = self.apply_diff(&self.apply_diff(&self.unit(i)));
            if dd.iter().any(|c| !c.is_zero()) {
                return Some(format!("∂² ≠ 0 on {}", self.names[i]));
            }
        }
        for i in 0..n {
            let ui = self.unit(i);
            let di = self.apply_diff(&ui);
            let s = sign(self.degrees[i] % 2 == 1);
            for j in 0..n {
                let uj = self.unit(j);
                let lhs = self.apply_diff(&self.bracket(&ui, &uj));
                let a = self.bracket(&di, &uj);
                let b = self.bracket(&ui, &self.apply_diff(&uj));
                let ok = lhs
                    .iter()
                    .zip(a.iter().zip(&b))
                    .all(|(l, (a, b))| *l == a + &s * b);
                if !ok {
                    return Some(format!(
                        "∂ is not a derivation of the bracket on ({}, {}): {} vs {} + {}",
                        self.names[i],
                        self.names[j],
                        self.format_vec(&lhs),
                        self.format_vec(&a),
                        self.format_vec(&b)
                    ));
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(w) = self
            .check_antisymmetry()
            .or_else(|| self.check_jacobi())
            .or_else(|| self.check_differential())
        {
            return Err(Error::InvalidLieAlgebra(w));
        }
        Ok(())
    }

    /// Matrix of `∂: L_k → L_{k−1}` in the bases of those degrees.
    fn diff_matrix(&self, k: u32) -> Matrix {
        let src = self.basis_in_degree(k);
        let tgt = if k == 0 {
            Vec::new()
        } else {
            self.basis_in_degree(k - 1)
        };
        let mut m = linalg::zeros(tgt.len(), src.len());
        for (c, &j) in src.iter().enumerate() {
            for (k2, v) in &self.diff[j] {
                if let Some(r) = tgt.iter().position(|t| t == k2) {
                    m[r][c] = v.clone();
                }
            }
        }
        m
    }

    /// Homology dimension in each degree `1..=max_degree`.
    pub fn homology_dims(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for k in 1..=self.max_degree() {
            let dim = self.basis_in_degree(k).len();
            let out_rank = linalg::rank(&self.diff_matrix(k));
            let in_rank = linalg::rank(&self.diff_matrix(k + 1));
            out.insert(k, dim - out_rank - in_rank);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            name: &'a str,
            degree: u32,
        }
        #[derive(Serialize)]
        struct Coord {
            index: usize,
            coeff: String,
        }
        #[derive(Serialize)]
        struct BracketEntry {
            left: usize,
            right: usize,
            value: Vec<Coord>,
        }
        #[derive(Serialize)]
        struct DiffEntry {
            index: usize,
            value: Vec<Coord>,
        }
        let coords = |v: &SparseVec| {
            v.iter()
                .map(|(k, c)| Coord {
                    index: *k,
                    coeff: c.to_string(),
                })
                .collect::<Vec<_>>()
        };
        serde_json::json!({
            "basis": self.names.iter().zip(&self.degrees)
                .map(|(n, &d)| Entry { name: n, degree: d }).collect::<Vec<_>>(),
            "brackets": self.brackets.iter()
                .map(|(&(i, j), v)| BracketEntry { left: i, right: j, value: coords(v) })
                .collect::<Vec<_>>(),
            "differential": self.diff.iter().enumerate().filter(|(_, v)| !v.is_empty())
                .map(|(i, v)| DiffEntry { index: i, value: coords(v) })
                .collect::<Vec<_>>(),
        })
    }
}

/// The sub dg Lie algebra spanned by the basis elements `indices`, in that
/// order. Fails with a witness if the span is not closed.
pub fn sub_dgla(l: &DgLieAlgebra, indices: &[usize]) -> Result<DgLieAlgebra> {
    let pos: HashMap<usize, usize> = indices.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let mut brackets = BTreeMap::new();
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            let mut v = Vec::new();
            for (k, c) in l.bracket_basis(i, j) {
                match pos.get(k) {
                    Some(&kk) => v.push((kk, c.clone())),
                    None => {
                        return Err(Error::NotClosed {
                            reason: "bracket leaves the span",
                            left: l.names[i].clone(),
                            right: l.names[j].clone(),
                        })
                    }
                }
            }
            if !v.is_empty() {
                v.sort_by_key(|(k, _)| *k);
                brackets.insert((a, b), v);
            }
        }
    }
    let mut diff = Vec::new();
    for &j in indices {
        let mut v = Vec::new();
        for (k, c) in l.diff_basis(j) {
            match pos.get(k) {
                Some(&kk) => v.push((kk, c.clone())),
                None => {
                    return Err(Error::NotClosed {
                        reason: "differential leaves the span",
                        left: l.names[j].clone(),
                        right: l.names[*k].clone(),
                    })
                }
            }
        }
        v.sort_by_key(|(k, _)| *k);
        diff.push(v);
    }
    DgLieAlgebra::new_unchecked(
        indices.iter().map(|&i| l.names[i].clone()).collect(),
        indices.iter().map(|&i| l.degrees[i]).collect(),
        brackets,
        diff,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: u32,
    pub sub_homology: usize,
    pub parent_homology: usize,
    /// Rank of the induced map on homology in this degree.
    pub induced_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeComparison>,
    pub is_quasi_isomorphism: bool,
}

/// Decides whether the inclusion of the span of `indices` induces an
/// isomorphism on homology, degree by degree.
pub fn quasi_iso_check(l: &DgLieAlgebra, indices: &[usize]) -> Result<QuasiIsoReport> {
    let sub = sub_dgla(l, indices)?;
    let sub_h = sub.homology_dims();
    let parent_h = l.homology_dims();
    let mut degrees = Vec::new();
    let mut ok = true;
    for k in 1..=l.max_degree() {
        let parent_basis = l.basis_in_degree(k);
        // boundaries in L_k, as columns in the coordinates of L_k
        let mut boundary_cols: Vec<Vec<Q>> = Vec::new();
        for j in l.basis_in_degree(k + 1) {
            let mut col = vec![Q::zero(); parent_basis.len()];
            for (t, c) in l.diff_basis(j) {
                if let Some(r) = parent_basis.iter().position(|p| p == t) {
                    col[r] = c.clone();
                }
            }
            boundary_cols.push(col);
        }
        // cycles of the subalgebra, pushed into L_k
        let sub_basis = sub.basis_in_degree(k);
        let sub_dmat = sub.diff_matrix(k);
        let cycles = linalg::nullspace(&sub_dmat, sub_basis.len());
        let mut cycle_cols = Vec::new();
        for z in cycles {
            let mut col = vec![Q::zero(); parent_basis.len()];
            for (a, c) in z.iter().enumerate() {
                let parent_idx = indices[sub_basis[a]];
                let r = parent_basis.iter().position(|p| *p == parent_idx).unwrap();
                col[r] = c.clone();
            }
            cycle_cols.push(col);
        }
        let b_rank = linalg::rank(&linalg::transpose(&boundary_cols));
        let mut all = boundary_cols.clone();
        all.extend(cycle_cols);
        let induced_rank = linalg::rank(&linalg::transpose(&all)) - b_rank;
        let sh = sub_h.get(&k).copied().unwrap_or(0);
        let ph = parent_h.get(&k).copied().unwrap_or(0);
        if !(sh == ph && ph == induced_rank) {
            ok = false;
        }
        degrees.push(DegreeComparison {
            degree: k,
            sub_homology: sh,
            parent_homology: ph,
            induced_rank,
        });
    }
    Ok(QuasiIsoReport {
        degrees,
        is_quasi_isomorphism: ok,
    })
}

/// Monomial-times-partial coordinates of derivations of one fixed shift.
#[derive(Debug, Clone)]
struct DegreeChart {
    ambient: HashMap<(usize, Monomial), usize>,
    basis: Vec<usize>,
    /// Ambient coordinates of each basis element; `None` when the basis is the
    /// full monomial basis in ambient order.
    columns: Option<Matrix>,
}

/// `Der⁺` of a model, realized as derivations together with its structure
/// constants.
#[derive(Debug, Clone)]
pub struct DerivationLie {
    pub lie: DgLieAlgebra,
    pub derivations: Vec<Derivation>,
    pub warnings: Vec<String>,
    differential: Differential,
    charts: BTreeMap<u32, DegreeChart>,
}

fn ambient_coords(chart: &DegreeChart, theta: &Derivation) -> Result<Vec<Q>> {
    let mut v = vec![Q::zero(); chart.ambient.len()];
    for (g, img) in theta.images().iter().enumerate() {
        for (m, c) in img.iter() {
            let idx = chart
                .ambient
                .get(&(g, m.clone()))
                .ok_or_else(|| Error::Unsupported("derivation outside the chart".into()))?;
            v[*idx] = c.clone();
        }
    }
    Ok(v)
}

impl DerivationLie {
    pub fn differential(&self) -> &Differential {
        &self.differential
    }

    pub fn algebra(&self) -> &Arc<FreeGcAlgebra> {
        self.differential.algebra()
    }

    /// Coordinates of a derivation of shift `−k` (`k ≥ 1`) in the basis.
    pub fn decompose(&self, theta: &Derivation) -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); self.lie.dim()];
        if theta.is_zero() {
            return Ok(out);
        }
        let k = -theta.shift();
        let chart = (k >= 1)
            .then(|| self.charts.get(&(k as u32)))
            .flatten()
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "derivation of shift {} is not positive",
                    theta.shift()
                ))
            })?;
        let v = ambient_coords(chart, theta)?;
        let coords = match &chart.columns {
            None => v,
            Some(cols) => linalg::solve(cols, &v)
                .ok_or_else(|| Error::Unsupported("derivation outside the span".into()))?,
        };
        for (c, &b) in coords.into_iter().zip(&chart.basis) {
            out[b] = c;
        }
        Ok(out)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lie.index_of(name)
    }

    /// Index of the basis element `m·∂/∂g`.
    pub fn index_of_monomial(&self, generator: &str, m: &Monomial) -> Option<usize> {
        let g = self.algebra().index_of(generator)?;
        self.derivations.iter().position(|d| {
            let img = d.image(g);
            img.len() == 1
                && img.coeff(m) == Q::one()
                && d.images()
                    .iter()
                    .enumerate()
                    .all(|(i, x)| i == g || x.is_zero())
        })
    }
}

fn basis_name(alg: &FreeGcAlgebra, g: usize, m: &Monomial) -> String {
    let gname = &alg.generators()[g].name;
    if m.is_one() {
        format!("∂/∂{gname}")
    } else {
        format!("{}·∂/∂{gname}", alg.format_monomial(m))
    }
}

/// Positive derivations of `(ΛV, d)`: the span of `m·∂/∂g` with
/// `|m| < |g|`, graded by how much they lower degree. In degree one only
/// derivations whose bracket with `d` vanishes are kept, so that the result is
/// closed under the differential.
pub fn positive_derivations(d: &Differential, cap: usize) -> Result<DerivationLie> {
    let alg = d.algebra().clone();
    let mut warnings = Vec::new();
    if d.has_linear_part() {
        warnings.push("differential has a linear part; the model is not minimal".to_string());
    }

    let mut ambient_by_degree: BTreeMap<u32, Vec<(usize, Monomial)>> = BTreeMap::new();
    for (g, gen) in alg.generators().iter().enumerate() {
        for k in 1..=gen.degree {
            for m in alg.graded_basis(gen.degree - k) {
                ambient_by_degree.entry(k).or_default().push((g, m));
            }
        }
    }
    let total: usize = ambient_by_degree.values().map(Vec::len).sum();
    if total > cap {
        return Err(Error::BasisTooLarge { size: total, cap });
    }

    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut derivations = Vec::new();
    let mut charts = BTreeMap::new();
    for (&k, ambient) in &ambient_by_degree {
        let ambient_ders: Vec<Derivation> = ambient
            .iter()
            .map(|(g, m)| Derivation::single(&alg, *g, alg.term(m.clone(), Q::one())))
            .collect::<Result<_>>()?;
        let index: HashMap<(usize, Monomial), usize> = ambient
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, key)| (key, i))
            .collect();

        let mut kept: Vec<(String, Derivation, Option<Vec<Q>>)> = Vec::new();
        let mut restricted = false;
        if k == 1 {
            let images: Vec<Derivation> = ambient_ders
                .iter()
                .map(|t| d.derivation().bracket(t))
                .collect::<Result<_>>()?;
            if images.iter().any(|t| !t.is_zero()) {
                restricted = true;
                let mut keys: Vec<(usize, Monomial)> = Vec::new();
                let mut key_pos: HashMap<(usize, Monomial), usize> = HashMap::new();
                for t in &images {
                    for (g, img) in t.images().iter().enumerate() {
                        for (m, _) in img.iter() {
                            key_pos.entry((g, m.clone())).or_insert_with(|| {
                                keys.push((g, m.clone()));
                                keys.len() - 1
                            });
                        }
                    }
                }
                let mut mat = linalg::zeros(keys.len(), images.len());
                for (c, t) in images.iter().enumerate() {
                    for (g, img) in t.images().iter().enumerate() {
                        for (m, v) in img.iter() {
                            mat[key_pos[&(g, m.clone())]][c] = v.clone();
                        }
                    }
                }
                for (i, z) in linalg::nullspace(&mat, images.len())
                    .into_iter()
                    .enumerate()
                {
                    let parts: Vec<(Q, &Derivation)> =
                        z.iter().cloned().zip(ambient_ders.iter()).collect();
                    let der = Derivation::linear_combination(&alg, -1, &parts)?;
                    kept.push((format!("ζ{}", i + 1), der, Some(z)));
                }
                warnings.push(format!(
                    "degree-1 derivations restricted to the {}-dimensional kernel of [d, -]",
                    kept.len()
                ));
            }
        }
        if !restricted {
            for ((g, m), der) in ambient.iter().zip(ambient_ders) {
                kept.push((basis_name(&alg, *g, m), der, None));
            }
        }

        let mut basis = Vec::new();
        let mut cols = Vec::new();
        for (name, der, col) in kept {
            basis.push(names.len());
            names.push(name);
            degrees.push(k);
            derivations.push(der);
            if let Some(c) = col {
                cols.push(c);
            }
        }
        charts.insert(
            k,
            DegreeChart {
                ambient: index,
                basis,
                columns: restricted.then(|| linalg::transpose(&cols)),
            },
        );
    }

    let mut out = DerivationLie {
        lie: DgLieAlgebra::new_unchecked(
            names.clone(),
            degrees.clone(),
            BTreeMap::new(),
            vec![Vec::new(); names.len()],
        )?,
        derivations,
        warnings,
        differential: d.clone(),
        charts,
    };
    let n = names.len();
    let mut brackets = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if degrees[i] + degrees[j] > out.lie.max_degree() {
                continue;
            }
            let br = out.derivations[i].bracket(&out.derivations[j])?;
            let coords = to_sparse(&out.decompose(&br)?);
            if !coords.is_empty() {
                brackets.insert((i, j), coords);
            }
        }
    }
    let mut diff = Vec::with_capacity(n);
    for i in 0..n {
        let br = d.derivation().bracket(&out.derivations[i])?;
        if degrees[i] == 1 {
            if !br.is_zero() {
                return Err(Error::InvalidLieAlgebra(format!(
                    "∂ of degree-1 element {} is nonzero",
                    names[i]
                )));
            }
            diff.push(Vec::new());
        } else {
            diff.push(to_sparse(&out.decompose(&br)?));
        }
    }
    out.lie = DgLieAlgebra::new(names, degrees, brackets, diff)?;
    Ok(out)
}
