//! Free graded-commutative algebras over the rationals.
//!
//! A [`FreeGcAlgebra`] is generated by named generators of positive cohomological
//! degree. Even generators are polynomial, odd generators are exterior. A
//! [`Monomial`] is stored as an exponent vector and always denotes the product of
//! its generators in index order, so Koszul signs only appear when two monomials
//! are multiplied and odd generators have to be moved past each other.

mod cohomology;
mod derivation;
mod element;
mod json;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use cohomology::{cohomology_dims, graded_map_matrix, MonomialIndex};
pub use derivation::{Derivation, Differential};
pub use element::{multiply, AlgElement};
pub use json::{ElementJson, TermJson};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector, one entry per generator of the parent algebra.
///
/// The derived `Ord` is plain lexicographic order on exponents and is only used
/// for map keys; presentation order is [`FreeGcAlgebra::cmp_monomials`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial(vec![0; ngens])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FreeGcAlgebra {
    gens: Vec<Generator>,
}

impl FreeGcAlgebra {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>> {
        let mut seen = HashSet::new();
        for g in &gens {
            if g.degree == 0 {
                return Err(Error::NonPositiveDegree {
                    name: g.name.clone(),
                    degree: 0,
                });
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(FreeGcAlgebra { gens }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, u32)]) -> Result<Arc<Self>> {
        Self::new(
            pairs
                .iter()
                .map(|(n, d)| Generator::new(n.as_ref(), *d))
                .collect(),
        )
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.gens).map(|(e, g)| e * g.degree).sum()
    }

    pub fn is_valid_monomial(&self, m: &Monomial) -> bool {
        m.0.len() == self.gens.len()
            && m.0
                .iter()
                .zip(&self.gens)
                .all(|(&e, g)| !g.is_odd() || e <= 1)
    }

    /// Graded-lexicographic presentation order: total degree first, then the
    /// exponent vector with earlier generators dominating.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree_of(a)
            .cmp(&self.degree_of(b))
            .then_with(|| b.0.cmp(&a.0))
    }

    /// Product of two standard-ordered monomials. Returns `None` when an odd
    /// generator would be squared, otherwise the sign (`true` = negative) and
    /// the product monomial.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut odd_in_a_after: u32 =
            a.0.iter()
                .zip(&self.gens)
                .filter(|(e, g)| g.is_odd() && **e == 1)
                .count() as u32;
        let mut swaps: u32 = 0;
        let mut out = Vec::with_capacity(a.0.len());
        for (k, g) in self.gens.iter().enumerate() {
            let (ea, eb) = (a.0[k], b.0[k]);
            if g.is_odd() {
                if ea == 1 {
                    odd_in_a_after -= 1;
                }
                if eb == 1 {
                    if ea == 1 {
                        return None;
                    }
                    swaps += odd_in_a_after;
                }
            }
            out.push(ea + eb);
        }
        Some((swaps % 2 == 1, Monomial(out)))
    }

    /// All monomials of total degree `n`, in descending lexicographic order of
    /// exponent vectors.
    pub fn graded_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.gens.len()];
        self.enumerate(0, n, &mut cur, &mut out);
        out
    }

    fn enumerate(&self, idx: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == self.gens.len() {
            if remaining == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let g = &self.gens[idx];
        let mut max = remaining / g.degree;
        if g.is_odd() {
            max = max.min(1);
        }
        for e in (0..=max).rev() {
            cur[idx] = e;
            self.enumerate(idx + 1, remaining - e * g.degree, cur, out);
        }
        cur[idx] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .zip(&self.gens)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, g)| {
                    if e == 1 {
                        g.name.clone()
                    } else if g.name.contains('^') {
                        format!("({})^{}", g.name, e)
                    } else {
                        format!("{}^{}", g.name, e)
                    }
                })
                .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for FreeGcAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", g.name, g.degree)?;
        }
        write!(f, ")")
    }
}

/// Number of monomials in each degree `0..=up_to`, from the generating function
/// `Π (1 + t^d)` over odd generators times `Π 1/(1 - t^d)` over even ones.
pub fn hilbert_series(alg: &FreeGcAlgebra, up_to: u32) -> Vec<u64> {
    let n = up_to as usize;
    let mut series = vec![0u64; n + 1];
    series[0] = 1;
    for g in alg.generators() {
        let d = g.degree as usize;
        if g.is_odd() {
            for k in (d..=n).rev() {
                series[k] += series[k - d];
            }
        } else {
            for k in d..=n {
                series[k] += series[k - d];
            }
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degree_zero_and_duplicates() {
        assert!(matches!(
            FreeGcAlgebra::from_pairs(&[("x", 0)]),
            Err(Error::NonPositiveDegree { .. })
        ));
        assert!(matches!(
            FreeGcAlgebra::from_pairs(&[("x", 2), ("x", 3)]),
            Err(Error::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn graded_basis_examples() {
        let a = FreeGcAlgebra::from_pairs(&[("x2", 4), ("x3", 6)]).unwrap();
        assert_eq!(
            a.graded_basis(12),
            vec![Monomial(vec![3, 0]), Monomial(vec![0, 2])]
        );
        assert_eq!(a.graded_basis(0), vec![Monomial(vec![0, 0])]);

        let p1 = FreeGcAlgebra::from_pairs(&[("x", 2), ("y", 3)]).unwrap();
        assert_eq!(p1.graded_basis(5), vec![Monomial(vec![1, 1])]);
        assert!(p1.graded_basis(6).contains(&Monomial(vec![3, 0])));
        assert!(!p1.graded_basis(6).contains(&Monomial(vec![0, 2])));
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = FreeGcAlgebra::from_pairs(&[("a", 3), ("b", 5)]).unwrap();
        let ea = Monomial(vec![1, 0]);
        let eb = Monomial(vec![0, 1]);
        assert_eq!(
            a.mul_monomials(&ea, &eb),
            Some((false, Monomial(vec![1, 1])))
        );
        assert_eq!(
            a.mul_monomials(&eb, &ea),
            Some((true, Monomial(vec![1, 1])))
        );
        assert_eq!(a.mul_monomials(&ea, &ea), None);
    }
}
