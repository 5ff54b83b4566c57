//! Hand-rolled polynomial arithmetic for cross-checking the library.
//!
//! Polynomials over ℚ in the variables `x_2, …, x_{n+1}, x` (in that order)
//! are maps from exponent vectors to coefficients. Reduction applies the
//! single rule `x^{n+1} → x_2·x^{n−1} + x_3·x^{n−2} + … + x_{n+1}` until no
//! exponent of `x` reaches `n+1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use fibrewise_core::{AlgElement, FreeGcAlgebra, Monomial, Q};

pub type Poly = BTreeMap<Vec<u32>, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn add_to(p: &mut Poly, m: Vec<u32>, c: Q) {
    let entry = p.entry(m.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&m);
    }
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        add_to(&mut out, m.clone(), c.clone());
    }
    out
}

pub fn scale(a: &Poly, c: &Q) -> Poly {
    if c.is_zero() {
        return Poly::new();
    }
    a.iter().map(|(m, v)| (m.clone(), v * c)).collect()
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add_to(&mut out, m, ca * cb);
        }
    }
    out
}

/// Model of `ℂPⁿ`: `n` base variables then `x`.
pub struct Projective {
    pub n: usize,
}

impl Projective {
    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        Poly::from([(m, Q::one())])
    }

    /// `x_i` for `2 ≤ i ≤ n+1`.
    pub fn base_var(&self, i: usize) -> Poly {
        self.var(i - 2)
    }

    pub fn x(&self) -> Poly {
        self.var(self.n)
    }

    pub fn constant(&self, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::new();
        }
        Poly::from([(vec![0; self.nvars()], c)])
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let n = self.n;
        let mut work = p.clone();
        let mut out = Poly::new();
        while let Some((m, c)) = work.pop_first() {
            if (m[n] as usize) <= n {
                add_to(&mut out, m, c);
                continue;
            }
            for i in 2..=n + 1 {
                let mut r = m.clone();
                r[n] -= i as u32;
                r[i - 2] += 1;
                add_to(&mut work, r, c.clone());
            }
        }
        out
    }

    /// `(n+1)·xⁿ − Σ_{i=2}^{n} (n+1−i)·x_i·x^{n−i}`.
    pub fn euler(&self) -> Poly {
        let n = self.n;
        let mut m = vec![0; self.nvars()];
        m[n] = n as u32;
        let mut e = Poly::from([(m, q(n as i64 + 1))]);
        for i in 2..=n {
            let mut m = vec![0; self.nvars()];
            m[i - 2] = 1;
            m[n] = (n - i) as u32;
            add_to(&mut e, m, -q((n + 1 - i) as i64));
        }
        e
    }

    /// Coefficient of `xⁿ` after reduction, as a polynomial in the base.
    pub fn integrate(&self, p: &Poly) -> Poly {
        let n = self.n;
        self.reduce(p)
            .into_iter()
            .filter(|(m, _)| m[n] as usize == n)
            .map(|(mut m, c)| {
                m[n] = 0;
                (m, c)
            })
            .collect()
    }

    /// `κ_0, …, κ_max`.
    pub fn kappas(&self, max: usize) -> Vec<Poly> {
        let e = self.euler();
        let mut power = e.clone();
        let mut out = Vec::new();
        for _ in 0..=max {
            out.push(self.integrate(&power));
            power = self.reduce(&mul(&power, &e));
        }
        out
    }

    /// Trace of multiplication by `a` on the basis `1, x, …, xⁿ`.
    pub fn trace(&self, a: &Poly) -> Poly {
        let n = self.n;
        let mut out = Poly::new();
        let mut xj = self.constant(Q::one());
        for j in 0..=n {
            let r = self.reduce(&mul(a, &xj));
            for (m, c) in r {
                if m[n] as usize == j {
                    let mut b = m.clone();
                    b[n] = 0;
                    add_to(&mut out, b, c);
                }
            }
            xj = mul(&xj, &self.x());
        }
        out
    }
}

/// Keeps terms of total exponent at most one.
pub fn modulo_decomposables(p: &Poly) -> Poly {
    p.iter()
        .filter(|(m, _)| m.iter().sum::<u32>() <= 1)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Converts to a library element, truncating exponent vectors to the
/// generators of `alg` (trailing exponents must vanish).
pub fn to_element(alg: &Arc<FreeGcAlgebra>, p: &Poly) -> AlgElement {
    let k = alg.ngens();
    alg.from_terms(p.iter().map(|(m, c)| {
        assert!(m[k..].iter().all(|&e| e == 0));
        (Monomial(m[..k].to_vec()), c.clone())
    }))
}

pub fn from_element(e: &AlgElement, nvars: usize) -> Poly {
    let mut out = Poly::new();
    for (m, c) in e.iter() {
        let mut v = m.0.clone();
        v.resize(nvars, 0);
        add_to(&mut out, v, c.clone());
    }
    out
}

pub fn evaluate(p: &Poly, point: &[Q]) -> Q {
    let mut s = Q::zero();
    for (m, c) in p {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m) {
            for _ in 0..e {
                t *= x;
            }
        }
        s += t;
    }
    s
}

pub fn partial(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        if m[i] > 0 {
            let mut r = m.clone();
            r[i] -= 1;
            add_to(&mut out, r, c * q(m[i] as i64));
        }
    }
    out
}

/// Determinant by Gaussian elimination.
pub fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// `dim` of degree-`k` polynomials in generators of degrees `4, 6, …, 2(n+1)`,
/// for `k = 0..=up_to`.
pub fn partition_counts(n: usize, up_to: usize) -> Vec<u64> {
    let mut dims = vec![0u64; up_to + 1];
    dims[0] = 1;
    for i in 2..=n + 1 {
        let d = 2 * i;
        for k in d..=up_to {
            dims[k] += dims[k - d];
        }
    }
    dims
}
