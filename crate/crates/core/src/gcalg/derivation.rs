use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::{AlgElement, FreeGcAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::Q;

/// A derivation of cohomological degree `shift`, determined by its values on
/// generators and extended by the graded Leibniz rule.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    alg: Arc<FreeGcAlgebra>,
    shift: i32,
    images: Vec<AlgElement>,
}

impl Derivation {
    pub fn new(alg: &Arc<FreeGcAlgebra>, shift: i32, images: Vec<AlgElement>) -> Result<Self> {
        if images.len() != alg.ngens() {
            return Err(Error::Unsupported(format!(
                "derivation needs {} images, got {}",
                alg.ngens(),
                images.len()
            )));
        }
        for (g, img) in alg.generators().iter().zip(&images) {
            if img.algebra() != alg {
                return Err(Error::AlgebraMismatch);
            }
            let expected = g.degree as i64 + shift as i64;
            match img.homogeneous_degree()? {
                None => {}
                Some(found) if found as i64 == expected => {}
                Some(found) => {
                    return Err(Error::DegreeMismatch {
                        generator: g.name.clone(),
                        expected,
                        found: found as i64,
                    })
                }
            }
        }
        Ok(Derivation {
            alg: alg.clone(),
            shift,
            images,
        })
    }

    pub fn zero(alg: &Arc<FreeGcAlgebra>, shift: i32) -> Self {
        Derivation {
            alg: alg.clone(),
            shift,
            images: vec![alg.zero(); alg.ngens()],
        }
    }

    /// The derivation sending generator `i` to `image` and all others to zero.
    /// `image` must be nonzero and homogeneous; it fixes the shift.
    pub fn single(alg: &Arc<FreeGcAlgebra>, i: usize, image: AlgElement) -> Result<Self> {
        let deg = image.homogeneous_degree()?.ok_or_else(|| {
            Error::Unsupported("single-generator derivation with zero image".into())
        })?;
        let shift = deg as i32 - alg.generators()[i].degree as i32;
        let mut images = vec![alg.zero(); alg.ngens()];
        images[i] = image;
        Derivation::new(alg, shift, images)
    }

    /// `∂/∂x_i`.
    pub fn partial(alg: &Arc<FreeGcAlgebra>, i: usize) -> Self {
        Self::single(alg, i, alg.one()).expect("partial derivative is well formed")
    }

    pub fn algebra(&self) -> &Arc<FreeGcAlgebra> {
        &self.alg
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn image(&self, i: usize) -> &AlgElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[AlgElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(AlgElement::is_zero)
    }

    fn odd(&self) -> bool {
        self.shift.rem_euclid(2) == 1
    }

    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement> {
        if a.algebra() != &self.alg {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.alg.zero();
        for (m, c) in a.iter() {
            self.apply_monomial_into(m, c, &mut out);
        }
        Ok(out)
    }

    /// Adds `c * θ(m)` to `out`.
    pub(crate) fn apply_monomial_into(&self, m: &Monomial, c: &Q, out: &mut AlgElement) {
        let gens = self.alg.generators();
        let n = gens.len();
        let mut before_deg: u32 = 0;
        for i in 0..n {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            if !self.images[i].is_zero() {
                let mut left = vec![0u32; n];
                left[..i].copy_from_slice(&m.0[..i]);
                left[i] = e - 1;
                let mut right = vec![0u32; n];
                right[i + 1..].copy_from_slice(&m.0[i + 1..]);
                let right = Monomial(right);

                let mut coef = c * Q::from_integer(e.into());
                if self.odd() && before_deg % 2 == 1 {
                    coef = -coef;
                }
                let mut tmp = self.alg.zero();
                tmp.add_scaled_product(&coef, &Monomial(left), &self.images[i]);
                for (mm, k) in tmp.iter() {
                    if let Some((neg, prod)) = self.alg.mul_monomials(mm, &right) {
                        out.add_term(prod, if neg { -k.clone() } else { k.clone() });
                    }
                }
            }
            before_deg += e * gens[i].degree;
        }
    }

    /// Graded commutator `θ∘η − (−1)^{|θ||η|} η∘θ`, determined on generators.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let sign_neg = self.odd() && other.odd();
        let mut images = Vec::with_capacity(self.images.len());
        for i in 0..self.images.len() {
            let a = self.apply(&other.images[i])?;
            let b = other.apply(&self.images[i])?;
            images.push(if sign_neg { &a + &b } else { &a - &b });
        }
        Derivation::new(&self.alg, self.shift + other.shift, images)
    }

    pub fn linear_combination(
        alg: &Arc<FreeGcAlgebra>,
        shift: i32,
        parts: &[(Q, &Derivation)],
    ) -> Result<Derivation> {
        let mut images = vec![alg.zero(); alg.ngens()];
        for (c, d) in parts {
            if d.alg != *alg {
                return Err(Error::AlgebraMismatch);
            }
            if c.is_zero() || d.is_zero() {
                continue;
            }
            if d.shift != shift {
                return Err(Error::Unsupported(
                    "mixed shifts in linear combination".into(),
                ));
            }
            for (img, di) in images.iter_mut().zip(&d.images) {
                *img += &di.scale(c);
            }
        }
        Derivation::new(alg, shift, images)
    }

    pub fn scale(&self, c: &Q) -> Derivation {
        Derivation {
            alg: self.alg.clone(),
            shift: self.shift,
            images: self.images.iter().map(|i| i.scale(c)).collect(),
        }
    }

    /// Total number of terms over all generator images.
    pub fn support_size(&self) -> usize {
        self.images.iter().map(AlgElement::len).sum()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, img) in self.alg.generators().iter().zip(&self.images) {
            if img.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if img.len() == 1 {
                write!(f, "{img}·∂/∂{}", g.name)?;
            } else {
                write!(f, "({img})·∂/∂{}", g.name)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[{}]({self})", self.shift)
    }
}

/// A degree +1 derivation that squares to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Differential(Derivation);

impl Differential {
    pub fn new(d: Derivation) -> Result<Self> {
        if d.shift != 1 {
            return Err(Error::Unsupported(format!(
                "differential must have degree +1, got {}",
                d.shift
            )));
        }
        for (i, g) in d.alg.generators().iter().enumerate() {
            if !d.apply(&d.images[i])?.is_zero() {
                return Err(Error::NotSquareZero {
                    generator: g.name.clone(),
                });
            }
        }
        Ok(Differential(d))
    }

    /// Builds a differential from `(generator name, image)` pairs; unlisted
    /// generators are cycles.
    pub fn from_images(alg: &Arc<FreeGcAlgebra>, images: Vec<(&str, AlgElement)>) -> Result<Self> {
        let mut imgs = vec![alg.zero(); alg.ngens()];
        for (name, img) in images {
            let i = alg
                .index_of(name)
                .ok_or_else(|| Error::Unsupported(format!("unknown generator `{name}`")))?;
            imgs[i] = img;
        }
        Differential::new(Derivation::new(alg, 1, imgs)?)
    }

    pub fn zero(alg: &Arc<FreeGcAlgebra>) -> Self {
        Differential(Derivation::zero(alg, 1))
    }

    pub fn derivation(&self) -> &Derivation {
        &self.0
    }

    pub fn algebra(&self) -> &Arc<FreeGcAlgebra> {
        &self.0.alg
    }

    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement> {
        self.0.apply(a)
    }

    pub fn image(&self, i: usize) -> &AlgElement {
        &self.0.images[i]
    }

    /// True if some generator has a nonzero linear term in its differential.
    pub fn has_linear_part(&self) -> bool {
        self.0
            .images
            .iter()
            .any(|img| img.iter().any(|(m, _)| m.length() == 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn leibniz_examples() {
        let n = 3;
        let a = FreeGcAlgebra::from_pairs(&[("x", 2), ("y", 2 * n + 1)]).unwrap();
        let (x, y) = (a.gen(0), a.gen(1));
        let theta1 = Derivation::single(&a, 1, x.pow(n)).unwrap();
        assert_eq!(theta1.apply(&(&y * &x)).unwrap(), x.pow(n + 1));

        let d = Differential::from_images(&a, vec![("y", x.pow(n + 1))]).unwrap();
        assert!(d.apply(&(&y * &y)).unwrap().is_zero());

        let dx = Derivation::partial(&a, 0);
        assert_eq!(dx.apply(&x.pow(5)).unwrap(), x.pow(4).scale(&q(5)));
    }

    #[test]
    fn odd_derivation_sign() {
        let a = FreeGcAlgebra::from_pairs(&[("a", 3), ("b", 3)]).unwrap();
        let (ea, eb) = (a.gen(0), a.gen(1));
        let db = Derivation::partial(&a, 1);
        // ∂/∂b (a·b) = (−1)^{|a|} a
        assert_eq!(db.apply(&(&ea * &eb)).unwrap(), -&ea);
    }

    #[test]
    fn rejects_non_square_zero() {
        let a = FreeGcAlgebra::from_pairs(&[("x", 2), ("y", 3), ("w", 4)]).unwrap();
        let r = Differential::from_images(&a, vec![("x", a.gen(1)), ("y", a.gen(2))]);
        assert!(matches!(r, Err(Error::NotSquareZero { .. })));
    }

    #[test]
    fn rejects_wrong_degree_image() {
        let a = FreeGcAlgebra::from_pairs(&[("x", 2), ("y", 3)]).unwrap();
        let r = Derivation::new(&a, 1, vec![a.zero(), a.gen(0)]);
        assert!(matches!(r, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn bracket_of_partials_with_d() {
        let n = 2;
        let a = FreeGcAlgebra::from_pairs(&[("x", 2), ("y", 2 * n + 1)]).unwrap();
        let d = Differential::from_images(&a, vec![("y", a.gen(0).pow(n + 1))]).unwrap();
        let eta = Derivation::partial(&a, 0);
        let br = d.derivation().bracket(&eta).unwrap();
        let theta1 = Derivation::single(&a, 1, a.gen(0).pow(n)).unwrap();
        assert_eq!(br, theta1.scale(&q(-(n as i64 + 1))));
    }
}
