//! End-to-end consistency checks over all supported families, grouped by
//! space so that a single group can be selected.

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cemodel::{formality_quotient_cpn, total_cohomology, RelativeSullivanModel};
use crate::cintersect::CompleteIntersection;
use crate::eulerring::{ch_relations, euler_ring_report, kappa_table, Verdict, DEFAULT_SEED};
use crate::fibint::{
    build_pi, umkehr_euler, uniqueness_dimension, BarPiConvention, EvenSpherePi, LerayHirsch,
};
use crate::gcalg::{hilbert_series, Differential};
use crate::sample;
use crate::spaces::{Space, UniversalModel};
use crate::Q;

/// Deliberate errors for exercising the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Drop the Koszul sign in `bar-Π`.
    BarPiSign,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Degree bound for chain-level checks; defaults to four times the fibre
    /// dimension.
    pub max_degree: Option<u32>,
    pub seed: u64,
    pub fault: Fault,
    /// Restrict to one group, such as `cpn:3`.
    pub only: Option<String>,
}

impl VerifyOptions {
    pub fn new() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn counts(&self) -> (usize, usize) {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        (ok, self.checks.len() - ok)
    }
}

/// Spaces covered by the default suite.
pub fn default_spaces() -> Vec<Space> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(Space::EvenSphere { n });
    }
    for n in 1..=5 {
        out.push(Space::ProjectiveSpace { n });
    }
    let dims = [3u32, 5, 7];
    for a in 0..3 {
        out.push(Space::OddProduct {
            dims: vec![dims[a]],
        });
        for b in a..3 {
            out.push(Space::OddProduct {
                dims: vec![dims[a], dims[b]],
            });
            for c in b..3 {
                out.push(Space::OddProduct {
                    dims: vec![dims[a], dims[b], dims[c]],
                });
            }
        }
    }
    out
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// First generator `g` with `D(D(g)) ≠ 0`.
pub fn square_zero_witness(d: &Differential) -> Option<String> {
    let alg = d.algebra();
    (0..alg.ngens()).find_map(|i| {
        let dd = d.apply(d.image(i)).ok()?;
        (!dd.is_zero()).then(|| format!("D²({}) = {dd}", alg.generators()[i].name))
    })
}

fn model_square_zero(m: &RelativeSullivanModel) -> Check {
    for d in [m.base(), m.total(), m.fibre()] {
        if let Some(w) = square_zero_witness(d) {
            return Err(w);
        }
    }
    ensure(m.fibre_restriction_mismatch().is_none(), || {
        "total differential does not restrict to the fibre".into()
    })
}

struct Runner<'a> {
    group: String,
    opts: &'a VerifyOptions,
    out: Vec<CheckResult>,
}

impl Runner<'_> {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Check) {
        let r = f();
        self.out.push(CheckResult {
            id: format!("{}/{name}", self.group),
            passed: r.is_ok(),
            detail: r.err(),
        });
    }

    fn bound(&self, space: &Space) -> u32 {
        self.opts.max_degree.unwrap_or(4 * space.fibre_dimension())
    }
}

fn even_sphere(r: &mut Runner, n: u32, um: &UniversalModel) {
    let space = um.space.clone();
    let seed = r.opts.seed;
    let model = &um.model;
    r.check("model/d-squared", || model_square_zero(model));
    r.check("model/total-differential", || {
        let t = model.total_algebra();
        let z = t
            .gen_named(&format!("z_{}", 4 * n))
            .ok_or("missing base generator")?;
        let expected = &t.gen_named("x").ok_or("missing x")?.pow(2) - &z;
        let found = model.d_of("y").ok_or("missing y")?;
        ensure(found == &expected, || {
            format!("D(y) = {found}, expected {expected}")
        })
    });
    r.check("model/quasi-iso", || {
        let q = um.quasi_iso.as_ref().ok_or("no comparison")?;
        ensure(q.is_quasi_isomorphism, || {
            "acting subalgebra is not quasi-isomorphic".into()
        })
    });
    let bound = r.bound(&space);
    r.check("fibint/cycle", || {
        let pi = EvenSpherePi::new(model).map_err(err)?;
        pi.check_cycle(bound).map_or(Ok(()), Err)
    });
    r.check("euler/leray-hirsch", || {
        let ci = CompleteIntersection::even_sphere(n).map_err(err)?;
        let lh = LerayHirsch::power_basis(&ci).map_err(err)?;
        let e = lh.euler_class().map_err(err)?;
        let two_x = ci.fibre_var(0).scale(&Q::from_integer(2.into()));
        ensure(e == two_x && ci.euler_class() == two_x, || {
            format!("e = {e}")
        })
    });
    r.check("kappa/powers", || {
        let t = kappa_table(&space, 8).map_err(err)?;
        for k in 1..=4u32 {
            let lhs = t.kappas[2]
                .pow(k)
                .scale(&Q::new(1.into(), (1i64 << (k - 1)).into()));
            ensure(t.kappas[2 * k as usize] == lhs, || {
                format!("κ_{} ≠ 2^(1−{k})·κ_2^{k}", 2 * k)
            })?;
        }
        for k in 0..=3usize {
            ensure(t.kappas[2 * k + 1].is_zero(), || {
                format!("κ_{} ≠ 0", 2 * k + 1)
            })?;
        }
        Ok(())
    });
    r.check("kappa/report", || {
        let rep = euler_ring_report(&space, 4, seed).map_err(err)?;
        ensure(rep.passed() && rep.generators == ["κ_2"], || {
            format!("{:?}", rep.generators)
        })
    });
}

fn projective(r: &mut Runner, n: u32, um: &UniversalModel) {
    let space = um.space.clone();
    let model = &um.model;
    let seed = r.opts.seed;
    r.check("model/d-squared", || model_square_zero(model));
    r.check("model/quasi-iso", || {
        let q = um.quasi_iso.as_ref().ok_or("no comparison")?;
        ensure(q.is_quasi_isomorphism, || {
            "acting subalgebra is not quasi-isomorphic".into()
        })
    });
    let top = 4 * (n + 1);
    r.check("model/cohomology", || {
        let found = total_cohomology(model, top).map_err(err)?;
        let b = hilbert_series(model.base_algebra(), top);
        for (k, &h) in found.iter().enumerate() {
            let expected: u64 = (0..=n as usize)
                .filter(|j| 2 * j <= k)
                .map(|j| b[k - 2 * j])
                .sum();
            ensure(h as u64 == expected, || {
                format!("dim H^{k} = {h}, expected {expected}")
            })?;
        }
        Ok(())
    });
    r.check("model/formality", || {
        let f = formality_quotient_cpn(model, n, top).map_err(err)?;
        ensure(f.chain_map && f.cohomology_iso, || {
            format!("fails in degrees {:?}", f.failures)
        })
    });
    let ci = match CompleteIntersection::projective_space(n) {
        Ok(ci) => ci,
        Err(e) => {
            r.check("ci", || Err(e.to_string()));
            return;
        }
    };
    r.check("euler/closed-form", || {
        let a = ci.ambient();
        let x = ci.fibre_var(0);
        let mut expected = x.pow(n).scale(&Q::from_integer((n as i64 + 1).into()));
        // the i = n + 1 term has coefficient zero
        for i in 2..=n {
            let xi = a
                .gen_named(&format!("x_{i}"))
                .ok_or("missing base generator")?;
            let t = (&xi * &x.pow(n - i)).scale(&Q::from_integer(((n + 1 - i) as i64).into()));
            expected = &expected - &t;
        }
        let jac = ci.euler_class();
        let lh = LerayHirsch::power_basis(&ci)
            .and_then(|l| l.euler_class())
            .map_err(err)?;
        ensure(jac == expected && lh == expected, || {
            format!("Jacobian class {jac}, Leray–Hirsch class {lh}, expected {expected}")
        })
    });
    r.check("euler/integral", || {
        let v = ci.fibre_integrate(&ci.euler_class());
        ensure(v == ci.base().integer(n as i64 + 1), || {
            format!("π_!(e) = {v}")
        })
    });
    r.check("euler/trace", || {
        let e = ci.euler_class();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let a = sample::ci_element(&ci, 2 * n, &mut rng);
            let tr = ci.trace(&a);
            let pi = ci.fibre_integrate(&ci.mul(&e, &a));
            ensure(tr == pi, || format!("Tr({a}) = {tr} but π_!(e·a) = {pi}"))?;
        }
        Ok(())
    });
    r.check("euler/dual-basis", || {
        let lh = LerayHirsch::power_basis(&ci).map_err(err)?;
        let dual = lh.dual_basis().map_err(err)?;
        for (i, ei) in lh.basis().iter().enumerate() {
            for (j, fj) in dual.iter().enumerate() {
                let v = lh.fibre_integrate(&ci.mul(ei, fj));
                let expected = if i == j {
                    ci.base().one()
                } else {
                    ci.base().zero()
                };
                ensure(v == expected, || format!("π_!(e_{i}·e_{j}^#) = {v}"))?;
            }
        }
        Ok(())
    });
    if n >= 2 {
        r.check("kappa/relations", || {
            let ch = ch_relations(&ci, &ci.euler_class(), n as usize + 4).map_err(err)?;
            let mut targets: Vec<usize> = ch.relations.iter().map(|r| r.target).collect();
            targets.sort_unstable();
            let mut expected = vec![n as usize];
            expected.extend(n as usize + 2..=n as usize + 4);
            ensure(targets == expected, || format!("relations for {targets:?}"))
        });
        r.check("kappa/leading-terms", || {
            let checks = crate::eulerring::leading_term_checks(n).map_err(err)?;
            match checks.iter().find(|c| !c.passed) {
                Some(c) => Err(format!(
                    "step {} index {}: {} vs {}",
                    c.step, c.index, c.found, c.expected
                )),
                None => Ok(()),
            }
        });
        r.check("kappa/independence", || {
            let rep = euler_ring_report(&space, n as usize + 1, seed).map_err(err)?;
            let c = rep.independence.ok_or("no certificate")?;
            ensure(c.verdict == Verdict::Independent, || {
                format!("{:?}", c.certificate)
            })
        });
    }
}

fn odd_product(r: &mut Runner, um: &UniversalModel) {
    let model = &um.model;
    let space = um.space.clone();
    let bound = r.bound(&space);
    let seed = r.opts.seed;
    let conv = match r.opts.fault {
        Fault::None => BarPiConvention::Standard,
        Fault::BarPiSign => BarPiConvention::WithoutKoszulSign,
    };
    r.check("model/d-squared", || model_square_zero(model));
    if let Space::OddProduct { dims } = &space {
        if dims.iter().all(|&d| d == 3) && dims.len() >= 2 {
            r.check("model/acyclic", || {
                let h = total_cohomology(model, 20).map_err(err)?;
                match h.iter().enumerate().skip(1).find(|(_, &v)| v != 0) {
                    Some((k, v)) => Err(format!("dim H^{k} = {v}")),
                    None => Ok(()),
                }
            });
        }
    }
    let pi = match build_pi(model, Q::one(), bound) {
        Ok(pi) => pi,
        Err(e) => {
            r.check("fibint/cycle", || Err(e.to_string()));
            return;
        }
    };
    r.check("fibint/cycle", || Ok(()));
    r.check("fibint/uniqueness", || {
        let u = uniqueness_dimension(model).map_err(err)?;
        ensure(u == 1, || format!("dimension {u}"))
    });
    r.check("fibint/push-pull", || {
        let base = model.base_algebra();
        let fibre = pi.fibre_basis().to_vec();
        for k in 0..=bound.min(12) {
            for bm in base.graded_basis(k) {
                let b = base.term(bm, Q::one());
                for a in &fibre {
                    let e = model.include_fibre(&model.fibre_algebra().term(a.clone(), Q::one()));
                    let lhs = pi.apply(&(&model.include_base(&b) * &e));
                    let odd = pi.dimension() % 2 == 1 && k % 2 == 1;
                    let mut rhs = &b * &pi.apply(&e);
                    if odd {
                        rhs = -&rhs;
                    }
                    ensure(lhs == rhs, || format!("Π({b}·e) ≠ ±b·Π(e)"))?;
                }
            }
        }
        Ok(())
    });
    r.check("fibint/bar-pi-chain-map", || {
        pi.check_bar_pi_chain_map(conv, bound).map_or(Ok(()), Err)
    });
    r.check("fibint/bar-pi-linear", || {
        pi.check_bar_pi_linearity(conv, bound).map_or(Ok(()), Err)
    });
    let umk = umkehr_euler(&pi);
    r.check("euler/umkehr-shape", || {
        let u = umk.as_ref().map_err(err)?;
        ensure(u.has_splitting_shape(), || {
            "Δ_!(1) is not a sum over splittings".into()
        })
    });
    r.check("euler/vanishes", || {
        let u = umk.as_ref().map_err(err)?;
        ensure(u.euler.is_zero(), || format!("e^fw = {}", u.euler))
    });
    r.check("kappa/vanish", || {
        let t = kappa_table(&space, 4).map_err(err)?;
        match t.kappas.iter().position(|k| !k.is_zero()) {
            Some(i) => Err(format!("κ_{i} = {}", t.kappas[i])),
            None => Ok(()),
        }
    });
    r.check("kappa/report", || {
        let rep = euler_ring_report(&space, 4, seed).map_err(err)?;
        ensure(rep.presentation == "ℚ", || rep.presentation.clone())
    });
}

/// Runs every check of the selected groups.
pub fn run_suite(opts: &VerifyOptions) -> SuiteReport {
    let spaces: Vec<Space> = default_spaces()
        .into_iter()
        .filter(|s| opts.only.as_ref().is_none_or(|o| *o == s.to_string()))
        .collect();
    let mut checks = Vec::new();
    for space in spaces {
        checks.extend(run_group(&space, opts));
    }
    SuiteReport {
        seed: opts.seed,
        checks,
    }
}

/// Checks for one space.
pub fn run_group(space: &Space, opts: &VerifyOptions) -> Vec<CheckResult> {
    let mut r = Runner {
        group: space.to_string(),
        opts,
        out: Vec::new(),
    };
    let um = match space.universal_model() {
        Ok(um) => um,
        Err(e) => {
            r.check("model/build", || Err(e.to_string()));
            return r.out;
        }
    };
    match space {
        Space::EvenSphere { n } => even_sphere(&mut r, *n, &um),
        Space::ProjectiveSpace { n } => projective(&mut r, *n, &um),
        Space::OddProduct { .. } => odd_product(&mut r, &um),
    }
    r.out
}

/// True when `only` names a group of the default suite.
pub fn is_known_group(only: &str) -> bool {
    default_spaces().iter().any(|s| s.to_string() == only)
}
