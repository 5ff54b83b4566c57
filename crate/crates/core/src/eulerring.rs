//! κ-classes `κ_i = π_!(e^{i+1})` and the ring they generate.
//!
//! For a complete intersection of rank `N` the characteristic polynomial of
//! multiplication by `e` has coefficients given by Newton's identities in the
//! power sums `Tr(e^j) = κ_j`, with `κ_0 = N`. Fibre integrating
//! `p(e)·e^k` gives one polynomial identity among the κ's for every `k`.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cintersect::{ring_det, CompleteIntersection, RingMatrix};
use crate::error::{Error, Result};
use crate::fibint::{build_pi, umkehr_euler};
use crate::gcalg::{AlgElement, Derivation, ElementJson, FreeGcAlgebra, Generator};
use crate::linalg;
use crate::spaces::Space;
use crate::Q;

/// Default seed for random evaluation points.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Retries for numerical Jacobian certificates.
pub const EVALUATION_ATTEMPTS: u32 = 5;

/// Largest number of variables handled by the symbolic determinant.
pub const SYMBOLIC_JACOBIAN_LIMIT: usize = 4;

/// κ-classes of one space.
#[derive(Debug, Clone)]
pub struct KappaTable {
    pub space: Space,
    /// Fibre dimension `d`; `κ_i` has degree `i·d`.
    pub d: u32,
    pub base: Arc<FreeGcAlgebra>,
    /// `kappas[i]` is `κ_i`, starting from `κ_0 = π_!(e)`.
    pub kappas: Vec<AlgElement>,
}

impl KappaTable {
    pub fn get(&self, i: usize) -> Option<&AlgElement> {
        self.kappas.get(i)
    }

    pub fn max_index(&self) -> usize {
        self.kappas.len() - 1
    }
}

/// `π_!(e^{i+1})` for `i = 0..=max_index`, powers taken by repeated
/// multiplication in normal form.
pub fn kappas_from_euler(
    ci: &CompleteIntersection,
    e: &AlgElement,
    max_index: usize,
) -> Vec<AlgElement> {
    let mut out = Vec::with_capacity(max_index + 1);
    let mut power = ci.normal_form(e);
    for _ in 0..=max_index {
        out.push(ci.fibre_integrate(&power));
        power = ci.mul(&power, e);
    }
    out
}

pub fn kappa_table(space: &Space, max_index: usize) -> Result<KappaTable> {
    let d = space.fibre_dimension();
    if let Some(ci) = space.complete_intersection()? {
        let kappas = kappas_from_euler(&ci, &ci.euler_class(), max_index);
        return Ok(KappaTable {
            space: space.clone(),
            d,
            base: ci.base().clone(),
            kappas,
        });
    }
    let um = space.universal_model()?;
    let pi = build_pi(&um.model, Q::one(), 2 * d)?;
    let e = umkehr_euler(&pi)?.euler;
    let mut kappas = Vec::with_capacity(max_index + 1);
    let mut power = e.clone();
    for _ in 0..=max_index {
        kappas.push(pi.apply(&power));
        power = &power * &e;
    }
    Ok(KappaTable {
        space: space.clone(),
        d,
        base: um.model.base_algebra().clone(),
        kappas,
    })
}

pub fn kappa(space: &Space, i: usize) -> Result<AlgElement> {
    Ok(kappa_table(space, i)?.kappas.pop().expect("nonempty table"))
}

/// `κ_target = expression` in the generating κ's, verified by expansion.
#[derive(Debug, Clone)]
pub struct KappaRelation {
    pub target: usize,
    pub expression: AlgElement,
}

impl std::fmt::Display for KappaRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "κ_{} = {}", self.target, self.expression)
    }
}

/// Cayley–Hamilton output for a complete intersection of rank `N`.
#[derive(Debug, Clone)]
pub struct ChRelations {
    /// Polynomial algebra on `κ_1, …, κ_{N−2}, κ_N`.
    pub symbols: Arc<FreeGcAlgebra>,
    /// Indices of the generating κ's, in the order of `symbols`.
    pub generator_indices: Vec<usize>,
    /// One relation for `κ_{N−1}` and for each `κ_{N+k−1}`, `k ≥ 2`.
    pub relations: Vec<KappaRelation>,
}

impl ChRelations {
    pub fn generator_names(&self) -> Vec<String> {
        self.symbols.names()
    }

    /// Replaces each symbol by the corresponding κ.
    pub fn expand(&self, expr: &AlgElement, kappas: &[AlgElement]) -> AlgElement {
        let images: Vec<AlgElement> = self
            .generator_indices
            .iter()
            .map(|&i| kappas[i].clone())
            .collect();
        let target = kappas[0].algebra();
        expr.substitute(target, &images)
    }
}

fn kappa_algebra(indices: &[usize], d: u32) -> Result<Arc<FreeGcAlgebra>> {
    FreeGcAlgebra::new(
        indices
            .iter()
            .map(|&i| Generator::new(format!("κ_{i}"), i as u32 * d))
            .collect(),
    )
}

/// Elementary symmetric functions `e_0..=e_n` from power sums `p_1..=p_n`.
fn newton(p: &[AlgElement], one: &AlgElement) -> Vec<AlgElement> {
    let mut e = vec![one.clone()];
    for j in 1..p.len() {
        let mut s = one.scale(&Q::zero());
        for i in 1..=j {
            let t = &e[j - i] * &p[i];
            s = if i % 2 == 1 { &s + &t } else { &s - &t };
        }
        e.push(s.scale(&Q::new(1.into(), (j as i64).into())));
    }
    e
}

/// Relations among `κ_1..=κ_max(up_to, N)` from the characteristic polynomial of `e`,
/// each checked against the computed κ's.
pub fn ch_relations(
    ci: &CompleteIntersection,
    e: &AlgElement,
    up_to_index: usize,
) -> Result<ChRelations> {
    let n = ci.rank();
    let d = ci.top_degree();
    if n < 2 {
        return Err(Error::Unsupported(
            "rank one module has no κ relations".into(),
        ));
    }
    let top = up_to_index.max(n);
    let kappas = kappas_from_euler(ci, e, top);
    let all: Vec<usize> = (1..=top).collect();
    let free = kappa_algebra(&all, d)?;
    let mut gens: Vec<usize> = (1..n - 1).collect();
    gens.push(n);
    let symbols = kappa_algebra(&gens, d)?;

    // power sums as symbols of the free algebra; p_0 = N
    let one = free.one();
    let p: Vec<AlgElement> = (0..=n)
        .map(|i| match i {
            0 => free.integer(n as i64),
            i => free.gen(i - 1),
        })
        .collect();
    let el = newton(&p, &one);
    let kap = |m: isize| -> AlgElement {
        match m {
            m if m < 0 => free.zero(),
            0 => free.integer(n as i64),
            m => free.gen(m as usize - 1),
        }
    };
    let kappa_images: Vec<AlgElement> = kappas[1..].to_vec();

    let mut expr: Vec<Option<AlgElement>> = vec![None; top + 1];
    for (pos, &g) in gens.iter().enumerate() {
        expr[g] = Some(symbols.gen(pos));
    }
    let mut relations = Vec::new();
    for k in (0..).filter(|&k| k != 1) {
        let target = n + k - 1;
        if target > top {
            break;
        }
        let mut raw = free.zero();
        for (j, ej) in el.iter().enumerate() {
            let t = ej * &kap(n as isize - j as isize + k as isize - 1);
            raw = if j % 2 == 0 { &raw + &t } else { &raw - &t };
        }
        if !raw.substitute(ci.base(), &kappa_images).is_zero() {
            return Err(Error::IdentityFailed(format!(
                "characteristic polynomial identity fails for k = {k}"
            )));
        }
        let tv = target - 1;
        if raw.max_exponent(tv) != Some(1) {
            return Err(Error::Unsupported(format!(
                "κ_{target} does not occur linearly"
            )));
        }
        let lin = raw.coefficient_of_power(tv, 1);
        if !lin.is_constant() || lin.constant_term().is_zero() {
            return Err(Error::Unsupported(format!(
                "κ_{target} has a non-constant coefficient"
            )));
        }
        let c = lin.constant_term();
        let rest = &raw - &(&free.gen(tv) * &lin);
        let images: Vec<AlgElement> = (1..=top)
            .map(|i| expr[i].clone().unwrap_or_else(|| symbols.zero()))
            .collect();
        let value = rest.substitute(&symbols, &images).scale(&(-Q::one() / c));
        expr[target] = Some(value.clone());
        relations.push(KappaRelation {
            target,
            expression: value,
        });
    }
    let out = ChRelations {
        symbols,
        generator_indices: gens,
        relations,
    };
    for r in &out.relations {
        if out.expand(&r.expression, &kappas) != kappas[r.target] {
            return Err(Error::IdentityFailed(format!(
                "relation {r} fails on expansion"
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Independent,
    /// The symbolic Jacobian determinant is the zero polynomial.
    Dependent,
    /// Every random evaluation vanished.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum Certificate {
    /// Jacobian determinant as a polynomial.
    Symbolic {
        determinant: String,
    },
    /// A point where the Jacobian determinant is nonzero.
    Evaluation {
        seed: u64,
        point: Vec<i64>,
        value: String,
    },
    None {
        seed: u64,
        attempts: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependenceCertificate {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

fn jacobian(polys: &[AlgElement], vars: &[usize]) -> Result<RingMatrix> {
    polys
        .iter()
        .map(|p| {
            vars.iter()
                .map(|&v| Derivation::partial(p.algebra(), v).apply(p))
                .collect()
        })
        .collect()
}

/// Decides algebraic independence of `polys` through `det(∂p_i/∂x_j)`,
/// `vars` being generator indices of their common algebra.
pub fn independence_certificate(
    polys: &[AlgElement],
    vars: &[usize],
    seed: u64,
) -> Result<IndependenceCertificate> {
    if polys.len() != vars.len() || polys.is_empty() {
        return Err(Error::Unsupported(
            "need as many polynomials as variables".into(),
        ));
    }
    let alg = polys[0].algebra().clone();
    if vars.iter().any(|&v| alg.generators()[v].is_odd()) {
        return Err(Error::Unsupported("odd variables".into()));
    }
    let jac = jacobian(polys, vars)?;
    if vars.len() <= SYMBOLIC_JACOBIAN_LIMIT {
        let det = ring_det(&jac, &alg);
        let verdict = if det.is_zero() {
            Verdict::Dependent
        } else {
            Verdict::Independent
        };
        return Ok(IndependenceCertificate {
            verdict,
            certificate: Certificate::Symbolic {
                determinant: det.to_string(),
            },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..EVALUATION_ATTEMPTS {
        let mut point = vec![Q::zero(); alg.ngens()];
        let mut shown = Vec::new();
        for &v in vars {
            let x: i64 = rng.gen_range(-20..=20);
            point[v] = Q::from_integer(x.into());
            shown.push(x);
        }
        let m: linalg::Matrix = jac
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(&point)).collect())
            .collect();
        let value = linalg::determinant(&m);
        if !value.is_zero() {
            return Ok(IndependenceCertificate {
                verdict: Verdict::Independent,
                certificate: Certificate::Evaluation {
                    seed,
                    point: shown,
                    value: value.to_string(),
                },
            });
        }
    }
    Ok(IndependenceCertificate {
        verdict: Verdict::Inconclusive,
        certificate: Certificate::None {
            seed,
            attempts: EVALUATION_ATTEMPTS,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingTermCheck {
    pub step: u8,
    pub index: u32,
    pub expected: String,
    pub found: String,
    pub passed: bool,
}

/// Leading terms of the κ's on `ℂPⁿ`, modulo decomposables of the base:
/// `π_!(x^{n+k}) ∼ x_k` for `2 ≤ k ≤ n+1`; the `x_{n+1}^{i−1}`-coefficient
/// of `κ_i` is `∼ i(n+1)^i(n−i)·x_{n+1−i}` for `1 ≤ i ≤ n−1`; and `κ_{n+1}`
/// contains `(n+1)^{n+2}·x_{n+1}^n`.
pub fn leading_term_checks(n: u32) -> Result<Vec<LeadingTermCheck>> {
    if n < 2 {
        return Err(Error::InvalidSpace("leading-term checks need n ≥ 2".into()));
    }
    let ci = CompleteIntersection::projective_space(n)?;
    let base = ci.base().clone();
    let x = ci.fibre_var(0);
    let xb = |i: u32| base.gen(i as usize - 2);
    let mut out = Vec::new();

    let mut power = ci.pow(&x, n + 1);
    for k in 2..=n + 1 {
        power = ci.mul(&power, &x);
        let found = ci.fibre_integrate(&power).modulo_decomposables();
        let expected = xb(k);
        out.push(LeadingTermCheck {
            step: 1,
            index: k,
            passed: found == expected,
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }

    let kappas = kappas_from_euler(&ci, &ci.euler_class(), n as usize + 1);
    let last = n as usize - 1;
    let np1 = Q::from_integer((n as i64 + 1).into());
    for i in 1..n {
        let coeff = kappas[i as usize].coefficient_of_power(last, i - 1);
        let found = coeff.modulo_decomposables();
        let c = Q::from_integer((i as i64 * (n - i) as i64).into())
            * num_traits::pow(np1.clone(), i as usize);
        let expected = xb(n + 1 - i).scale(&c);
        out.push(LeadingTermCheck {
            step: 2,
            index: i,
            passed: found == expected,
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }

    let mut exps = vec![0; base.ngens()];
    exps[last] = n;
    let mono = crate::gcalg::Monomial(exps);
    let c = num_traits::pow(np1, n as usize + 2);
    let found = kappas[n as usize + 1].coeff(&mono);
    out.push(LeadingTermCheck {
        step: 3,
        index: n + 1,
        expected: base.term(mono.clone(), c.clone()).to_string(),
        found: base.term(mono, found.clone()).to_string(),
        passed: found == c,
    });
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct KappaJson {
    pub i: usize,
    pub poly: ElementJson,
    pub text: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerRingReport {
    pub space: String,
    pub d: u32,
    pub kappas: Vec<KappaJson>,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub presentation: String,
    pub independence: Option<IndependenceCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub leading_terms: Vec<LeadingTermCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EulerRingReport {
    /// True when the independence verdict and every leading-term check hold.
    pub fn passed(&self) -> bool {
        self.independence
            .as_ref()
            .is_none_or(|c| c.verdict == Verdict::Independent)
            && self.leading_terms.iter().all(|c| c.passed)
    }
}

/// κ-table, relations, independence and presentation of the Euler ring.
/// Relations are derived up to `max(max_index, N + 3)` for rank `N`.
pub fn euler_ring_report(space: &Space, max_index: usize, seed: u64) -> Result<EulerRingReport> {
    let table = kappa_table(space, max_index)?;
    let kappas = table
        .kappas
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, k)| KappaJson {
            i,
            poly: k.to_json(),
            text: k.to_string(),
        })
        .collect();
    let mut report = EulerRingReport {
        space: space.to_string(),
        d: table.d,
        kappas,
        generators: Vec::new(),
        relations: Vec::new(),
        presentation: "ℚ".into(),
        independence: None,
        leading_terms: Vec::new(),
        notes: Vec::new(),
    };
    let Some(ci) = space.complete_intersection()? else {
        report.notes.push("e^fw = 0, so every κ_i vanishes".into());
        report
            .notes
            .push("identity component only: E*_0 = ℚ".into());
        return Ok(report);
    };
    let e = ci.euler_class();
    let ch = ch_relations(&ci, &e, max_index.max(ci.rank() + 3))?;
    report.generators = ch.generator_names();
    report.relations = ch.relations.iter().map(|r| r.to_string()).collect();
    let mut needed = ch.relations.last().map_or(0, |r| r.target);
    if let Space::EvenSphere { .. } = space {
        needed = needed.max(8);
    }
    let all = kappas_from_euler(&ci, &e, needed);
    if let Space::EvenSphere { .. } = space {
        for k in 2..=4u32 {
            let lhs = all[2].pow(k);
            let rhs = all[2 * k as usize].scale(&Q::from_integer((1i64 << (k - 1)).into()));
            if lhs != rhs {
                return Err(Error::IdentityFailed(format!(
                    "κ_2^{k} ≠ 2^{}·κ_{}",
                    k - 1,
                    2 * k
                )));
            }
            report
                .relations
                .push(format!("κ_2^{k} = {}·κ_{}", 1u32 << (k - 1), 2 * k));
        }
    }
    let polys: Vec<AlgElement> = ch
        .generator_indices
        .iter()
        .map(|&i| all[i].clone())
        .collect();
    let vars: Vec<usize> = (0..ci.base().ngens()).collect();
    report.independence = Some(independence_certificate(&polys, &vars, seed)?);
    report.presentation = format!("ℚ[{}]", report.generators.join(", "));
    if let Space::ProjectiveSpace { n } = space {
        if *n >= 2 {
            report.leading_terms = leading_term_checks(*n)?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn projective_plane_values() {
        let t = kappa_table(&Space::projective(2).unwrap(), 3).unwrap();
        let b = &t.base;
        let (x2, x3) = (b.gen(0), b.gen(1));
        assert_eq!(t.kappas[0], b.integer(3));
        assert_eq!(t.kappas[1], x2.scale(&q(3)));
        assert_eq!(t.kappas[2], x2.pow(2).scale(&q(9)));
        assert_eq!(
            t.kappas[3],
            &x2.pow(3).scale(&q(15)) + &x3.pow(2).scale(&q(81))
        );
    }

    #[test]
    fn projective_plane_relations() {
        let ci = CompleteIntersection::projective_space(2).unwrap();
        let ch = ch_relations(&ci, &ci.euler_class(), 6).unwrap();
        assert_eq!(ch.generator_names(), vec!["κ_1", "κ_3"]);
        let r = &ch.relations[0];
        assert_eq!(r.target, 2);
        assert_eq!(r.expression, ch.symbols.gen(0).pow(2));
        let targets: Vec<usize> = ch.relations.iter().map(|r| r.target).collect();
        assert_eq!(targets, vec![2, 4, 5, 6]);
    }

    #[test]
    fn jacobian_of_kappa_one_and_three() {
        let t = kappa_table(&Space::projective(2).unwrap(), 3).unwrap();
        let c = independence_certificate(&[t.kappas[1].clone(), t.kappas[3].clone()], &[0, 1], 1)
            .unwrap();
        assert_eq!(c.verdict, Verdict::Independent);
        let expected = t.base.gen(1).scale(&q(486)).to_string();
        assert_eq!(
            c.certificate,
            Certificate::Symbolic {
                determinant: expected
            }
        );
        let k1 = t.kappas[1].clone();
        let c = independence_certificate(&[k1.clone(), k1.pow(2)], &[0, 1], 1).unwrap();
        assert_eq!(c.verdict, Verdict::Dependent);
    }

    #[test]
    fn even_sphere_kappas() {
        for n in 1..=3 {
            let t = kappa_table(&Space::even_sphere(n).unwrap(), 8).unwrap();
            let z = t.base.gen(0);
            for k in 1..=4u32 {
                assert_eq!(
                    t.kappas[2 * k as usize],
                    z.pow(k).scale(&q(1 << (2 * k + 1)))
                );
                assert!(t.kappas[2 * k as usize - 1].is_zero());
            }
        }
    }

    #[test]
    fn odd_product_kappas_vanish() {
        let t = kappa_table(&Space::odd_product(&[3, 5]).unwrap(), 3).unwrap();
        assert!(t.kappas.iter().all(AlgElement::is_zero));
        let r = euler_ring_report(&Space::odd_product(&[3, 5]).unwrap(), 3, DEFAULT_SEED).unwrap();
        assert_eq!(r.presentation, "ℚ");
    }

    #[test]
    fn leading_terms_small_n() {
        for n in 2..=3 {
            let checks = leading_term_checks(n).unwrap();
            assert!(checks.iter().all(|c| c.passed), "{checks:?}");
        }
    }

    #[test]
    fn numerical_certificate_above_symbolic_limit() {
        let r = euler_ring_report(&Space::projective(5).unwrap(), 6, DEFAULT_SEED).unwrap();
        let c = r.independence.clone().unwrap();
        assert_eq!(c.verdict, Verdict::Independent);
        assert!(matches!(c.certificate, Certificate::Evaluation { .. }));
        assert!(r.passed());
    }
}
