//! The three families of fibres with closed-form models: even spheres,
//! complex projective spaces and products of odd spheres.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cemodel::{ce_total, LieAction, RelativeSullivanModel};
use crate::cintersect::CompleteIntersection;
use crate::derlie::{
    positive_derivations, quasi_iso_check, DerivationLie, QuasiIsoReport, DEFAULT_BASIS_CAP,
};
use crate::error::{Error, Result};
use crate::gcalg::{Differential, FreeGcAlgebra, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Space {
    EvenSphere { n: u32 },
    ProjectiveSpace { n: u32 },
    OddProduct { dims: Vec<u32> },
}

impl Space {
    pub fn even_sphere(n: u32) -> Result<Self> {
        let s = Space::EvenSphere { n };
        s.validate()?;
        Ok(s)
    }

    pub fn projective(n: u32) -> Result<Self> {
        let s = Space::ProjectiveSpace { n };
        s.validate()?;
        Ok(s)
    }

    /// Factors are sorted by dimension.
    pub fn odd_product(dims: &[u32]) -> Result<Self> {
        let mut dims = dims.to_vec();
        dims.sort_unstable();
        let s = Space::OddProduct { dims };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Space::EvenSphere { n } | Space::ProjectiveSpace { n } if *n == 0 => {
                Err(Error::InvalidSpace(format!("{self}: n must be at least 1")))
            }
            Space::OddProduct { dims } if dims.is_empty() => Err(Error::InvalidSpace(
                "odd-product needs at least one factor".into(),
            )),
            Space::OddProduct { dims } => match dims.iter().find(|&&d| d < 3 || d % 2 == 0) {
                Some(d) => Err(Error::InvalidSpace(format!(
                    "factor dimension {d} is not an odd number ≥ 3"
                ))),
                None if dims.windows(2).any(|w| w[0] > w[1]) => Err(Error::InvalidSpace(
                    "factor dimensions must be sorted".into(),
                )),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }

    /// Formal dimension of the fibre.
    pub fn fibre_dimension(&self) -> u32 {
        match self {
            Space::EvenSphere { n } | Space::ProjectiveSpace { n } => 2 * n,
            Space::OddProduct { dims } => dims.iter().sum(),
        }
    }

    /// Euler characteristic of the fibre.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            Space::EvenSphere { .. } => 2,
            Space::ProjectiveSpace { n } => *n as i64 + 1,
            Space::OddProduct { .. } => 0,
        }
    }

    /// Minimal Sullivan model of the fibre.
    pub fn fibre_model(&self) -> Result<Differential> {
        self.validate()?;
        match self {
            Space::EvenSphere { n } => {
                let a = FreeGcAlgebra::from_pairs(&[("x", 2 * n), ("y", 4 * n - 1)])?;
                Differential::from_images(&a, vec![("y", a.gen(0).pow(2))])
            }
            Space::ProjectiveSpace { n } => {
                let a = FreeGcAlgebra::from_pairs(&[("x", 2), ("y", 2 * n + 1)])?;
                Differential::from_images(&a, vec![("y", a.gen(0).pow(n + 1))])
            }
            Space::OddProduct { dims } => {
                let pairs: Vec<(String, u32)> = dims
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| (format!("x_{}", i + 1), d))
                    .collect();
                Ok(Differential::zero(&FreeGcAlgebra::from_pairs(&pairs)?))
            }
        }
    }

    /// The formal complete-intersection model, where one exists.
    pub fn complete_intersection(&self) -> Result<Option<CompleteIntersection>> {
        self.validate()?;
        match self {
            Space::EvenSphere { n } => CompleteIntersection::even_sphere(*n).map(Some),
            Space::ProjectiveSpace { n } => CompleteIntersection::projective_space(*n).map(Some),
            Space::OddProduct { .. } => Ok(None),
        }
    }

    pub fn universal_model(&self) -> Result<UniversalModel> {
        universal_model(self, DEFAULT_BASIS_CAP)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::EvenSphere { n } => write!(f, "even-sphere:{n}"),
            Space::ProjectiveSpace { n } => write!(f, "cpn:{n}"),
            Space::OddProduct { dims } => {
                let parts: Vec<String> = dims.iter().map(u32::to_string).collect();
                write!(f, "odd-product:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    /// Parses `even-sphere:N`, `cpn:N` or `odd-product:D1,D2,…`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpace(format!("`{s}`: expected FAMILY:PARAMS")))?;
        let num = |t: &str| -> Result<u32> {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidSpace(format!("`{t}` is not a natural number")))
        };
        match family {
            "even-sphere" => Space::even_sphere(num(arg)?),
            "cpn" => Space::projective(num(arg)?),
            "odd-product" => {
                let dims = arg.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Space::odd_product(&dims)
            }
            other => Err(Error::InvalidSpace(format!("unknown family `{other}`"))),
        }
    }
}

/// The Chevalley–Eilenberg model of the universal fibration of a space,
/// together with the derivation Lie algebra it came from.
#[derive(Debug, Clone)]
pub struct UniversalModel {
    pub space: Space,
    pub derivations: DerivationLie,
    /// Basis elements of `derivations` spanning the acting Lie algebra.
    pub selected: Vec<usize>,
    pub action: LieAction,
    pub model: RelativeSullivanModel,
    /// Comparison of the acting subalgebra with all positive derivations;
    /// `None` when the full algebra acts.
    pub quasi_iso: Option<QuasiIsoReport>,
}

fn odd_product_name(der: &crate::gcalg::Derivation) -> String {
    let (f, img) = der
        .images()
        .iter()
        .enumerate()
        .find(|(_, i)| !i.is_zero())
        .expect("basis derivations are nonzero");
    let (m, _) = img.iter().next().expect("nonzero image");
    let s: Vec<String> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if s.is_empty() {
        format!("y^{}", f + 1)
    } else {
        format!("y^{}_{{{}}}", f + 1, s.join(","))
    }
}

pub fn universal_model(space: &Space, cap: usize) -> Result<UniversalModel> {
    let fibre = space.fibre_model()?;
    let der = positive_derivations(&fibre, cap)?;
    let (selected, names): (Vec<usize>, Vec<String>) = match space {
        Space::EvenSphere { n } => {
            let i = der
                .index_of_monomial("y", &Monomial::one(2))
                .ok_or_else(|| Error::InvalidSpace("missing ∂/∂y".into()))?;
            (vec![i], vec![format!("z_{}", 4 * n)])
        }
        Space::ProjectiveSpace { n } => {
            let mut sel = Vec::new();
            let mut names = Vec::new();
            for i in 2..=n + 1 {
                let idx = der
                    .index_of_monomial("y", &Monomial(vec![n + 1 - i, 0]))
                    .ok_or_else(|| Error::InvalidSpace("missing x^k·∂/∂y".into()))?;
                sel.push(idx);
                names.push(format!("x_{i}"));
            }
            (sel, names)
        }
        Space::OddProduct { .. } => {
            let sel: Vec<usize> = (0..der.lie.dim()).collect();
            let names = der.derivations.iter().map(odd_product_name).collect();
            (sel, names)
        }
    };
    let quasi_iso = match space {
        Space::OddProduct { .. } => None,
        _ => Some(quasi_iso_check(&der.lie, &selected)?),
    };
    let action = LieAction::from_derivations(&der, &selected)?;
    let model = ce_total(&action, &names)?;
    Ok(UniversalModel {
        space: space.clone(),
        derivations: der,
        selected,
        action,
        model,
        quasi_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["even-sphere:2", "cpn:3", "odd-product:3,5,7"] {
            assert_eq!(s.parse::<Space>().unwrap().to_string(), s);
        }
        assert_eq!(
            "odd-product:7,3".parse::<Space>().unwrap().to_string(),
            "odd-product:3,7"
        );
        for bad in [
            "cpn:0",
            "odd-product:4",
            "odd-product:1",
            "sphere:2",
            "cpn",
            "cpn:x",
        ] {
            assert!(
                matches!(bad.parse::<Space>(), Err(Error::InvalidSpace(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn even_sphere_model() {
        let m = Space::even_sphere(1).unwrap().universal_model().unwrap();
        let a = m.model.total_algebra().clone();
        let expected = &a.gen_named("x").unwrap().pow(2) - &a.gen_named("z_4").unwrap();
        assert_eq!(m.model.d_of("y").unwrap(), &expected);
        assert!(m.model.d_of("x").unwrap().is_zero());
        assert!(m.quasi_iso.unwrap().is_quasi_isomorphism);
    }

    #[test]
    fn odd_product_names() {
        let m = Space::odd_product(&[3, 3, 5])
            .unwrap()
            .universal_model()
            .unwrap();
        let names = m.model.base_algebra().names();
        assert!(names.contains(&"y^3_{1}".to_string()));
        assert!(names.contains(&"y^3_{2}".to_string()));
        assert!(names.contains(&"y^1".to_string()));
    }
}
