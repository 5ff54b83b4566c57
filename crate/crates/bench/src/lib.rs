//! Fixtures shared by the benchmarks.

use fibrewise_core::cintersect::CompleteIntersection;
use fibrewise_core::fibint::FibreIntegration;
use fibrewise_core::spaces::{Space, UniversalModel};
use fibrewise_core::{AlgElement, Q};

pub fn projective(n: u32) -> CompleteIntersection {
    CompleteIntersection::projective_space(n).expect("valid n")
}

/// `e^k` in the complete intersection, by repeated multiplication.
pub fn euler_power(ci: &CompleteIntersection, k: u32) -> AlgElement {
    ci.pow(&ci.euler_class(), k)
}

pub fn universal(name: &str) -> UniversalModel {
    name.parse::<Space>()
        .and_then(|s| s.universal_model())
        .expect("valid space")
}

pub fn odd_pi(name: &str) -> FibreIntegration {
    let um = universal(name);
    fibrewise_core::fibint::build_pi(&um.model, Q::from_integer(1.into()), 0).expect("finite fibre")
}
