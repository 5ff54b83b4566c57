use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{FreeGcAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::Q;

/// Sparse element of a free graded-commutative algebra. Zero coefficients are
/// never stored.
///
/// The arithmetic operators panic when the operands live in different
/// algebras; [`multiply`] and the `try_*` methods report that as an error.
#[derive(Clone)]
pub struct AlgElement {
    alg: Arc<FreeGcAlgebra>,
    terms: BTreeMap<Monomial, Q>,
}

impl FreeGcAlgebra {
    pub fn zero(self: &Arc<Self>) -> AlgElement {
        AlgElement {
            alg: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> AlgElement {
        self.scalar(Q::one())
    }

    pub fn scalar(self: &Arc<Self>, c: Q) -> AlgElement {
        self.term(Monomial::one(self.ngens()), c)
    }

    pub fn integer(self: &Arc<Self>, n: i64) -> AlgElement {
        self.scalar(Q::from_integer(n.into()))
    }

    /// A single term. Panics if `m` has the wrong length or squares an odd
    /// generator.
    pub fn term(self: &Arc<Self>, m: Monomial, c: Q) -> AlgElement {
        assert!(self.is_valid_monomial(&m), "invalid monomial {:?}", m.0);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgElement {
            alg: self.clone(),
            terms,
        }
    }

    pub fn monomial(self: &Arc<Self>, exps: &[u32]) -> AlgElement {
        self.term(Monomial(exps.to_vec()), Q::one())
    }

    pub fn gen(self: &Arc<Self>, i: usize) -> AlgElement {
        let mut e = vec![0; self.ngens()];
        e[i] = 1;
        self.monomial(&e)
    }

    pub fn gen_named(self: &Arc<Self>, name: &str) -> Option<AlgElement> {
        self.index_of(name).map(|i| self.gen(i))
    }

    pub fn from_terms(
        self: &Arc<Self>,
        terms: impl IntoIterator<Item = (Monomial, Q)>,
    ) -> AlgElement {
        let mut out = self.zero();
        for (m, c) in terms {
            assert!(self.is_valid_monomial(&m), "invalid monomial {:?}", m.0);
            out.add_term(m, c);
        }
        out
    }
}

impl AlgElement {
    pub fn algebra(&self) -> &Arc<FreeGcAlgebra> {
        &self.alg
    }

    pub fn same_algebra(&self, other: &AlgElement) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in internal (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Terms in graded presentation order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.alg.cmp_monomials(a.0, b.0));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c * self_term * other` without allocating intermediate elements.
    pub(crate) fn add_scaled_product(&mut self, c: &Q, left: &Monomial, right: &AlgElement) {
        for (m, k) in &right.terms {
            if let Some((neg, prod)) = self.alg.mul_monomials(left, m) {
                let v = c * k;
                self.add_term(prod, if neg { -v } else { v });
            }
        }
    }

    /// Common degree of all terms; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degs = self.terms.keys().map(|m| self.alg.degree_of(m));
        let Some(first) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| self.alg.degree_of(m) == deg)
    }

    /// Parts by degree, ascending.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, AlgElement> {
        let mut out: BTreeMap<u32, AlgElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.alg.degree_of(m))
                .or_insert_with(|| self.alg.zero())
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> AlgElement {
        if c.is_zero() {
            return self.alg.zero();
        }
        AlgElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn try_mul(&self, other: &AlgElement) -> Result<AlgElement> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.alg.zero();
        for (m, c) in &self.terms {
            out.add_scaled_product(c, m, other);
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &AlgElement) -> Result<AlgElement> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> AlgElement {
        let mut acc = self.alg.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The constant coefficient, i.e. the image under the augmentation.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.alg.ngens()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Evaluates at a rational point. Only meaningful when every generator with
    /// a nonzero exponent is even.
    pub fn evaluate(&self, point: &[Q]) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    v = &v * x;
                }
            }
            total += v;
        }
        total
    }

    /// Image under the algebra map sending generator `i` to `images[i]`.
    /// Generators are substituted in index order, so odd images pick up the
    /// right Koszul signs.
    pub fn substitute(&self, target: &Arc<FreeGcAlgebra>, images: &[AlgElement]) -> AlgElement {
        assert_eq!(images.len(), self.alg.ngens());
        let mut out = target.zero();
        let mut pow_cache: Vec<Vec<AlgElement>> = images
            .iter()
            .map(|g| vec![target.one(), g.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut v = target.scalar(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pow_cache[i].len() <= e as usize {
                    let next = pow_cache[i].last().unwrap() * &images[i];
                    pow_cache[i].push(next);
                }
                v = &v * &pow_cache[i][e as usize];
                if v.is_zero() {
                    break;
                }
            }
            out = &out + &v;
        }
        out
    }

    /// Re-expresses `self` in `target` through a generator index map; terms
    /// containing a generator that maps to `None` are dropped. With an
    /// order-preserving map this is an algebra homomorphism without signs.
    pub fn remap(&self, target: &Arc<FreeGcAlgebra>, map: &[Option<usize>]) -> AlgElement {
        let mut out = target.zero();
        'terms: for (m, c) in &self.terms {
            let mut e = vec![0u32; target.ngens()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += k,
                    None => continue 'terms,
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Keeps only the constant and linear terms: reduction modulo the span of
    /// products of two positive-degree elements.
    pub fn modulo_decomposables(&self) -> AlgElement {
        AlgElement {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.length() <= 1)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest exponent of generator `i` among the terms.
    pub fn max_exponent(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Coefficient of `x_i^k` viewing `self` as a polynomial in `x_i`.
    pub fn coefficient_of_power(&self, i: usize, k: u32) -> AlgElement {
        let mut out = self.alg.zero();
        for (m, c) in &self.terms {
            if m.0[i] == k {
                let mut e = m.0.clone();
                e[i] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }
}

/// Product in the common parent algebra, with Koszul signs.
pub fn multiply(a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
    a.try_mul(b)
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl Eq for AlgElement {}

impl<'a> Add<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        self.try_add(rhs).expect("algebra mismatch in add")
    }
}

impl<'a> Sub<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        self.try_add(&-rhs).expect("algebra mismatch in sub")
    }
}

impl<'a> Mul<&'a AlgElement> for &'a AlgElement {
    type Output = AlgElement;
    fn mul(self, rhs: &AlgElement) -> AlgElement {
        self.try_mul(rhs).expect("algebra mismatch in mul")
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl AddAssign<&AlgElement> for AlgElement {
    fn add_assign(&mut self, rhs: &AlgElement) {
        assert!(self.same_algebra(rhs), "algebra mismatch in add_assign");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = self.alg.format_monomial(m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElement({self})")
    }
}
