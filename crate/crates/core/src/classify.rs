//! Classification flags: f-BC, type S, type MS, BC and the graph variants.

use num_rational::Ratio;
use serde::Serialize;

use crate::config::{AngleId, AxiomReport, Configuration};
use crate::seq::{check_type_s, SequenceIndex, TypeSWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDegree {
    pub orbit: Vec<AngleId>,
    /// Reduced fraction `d(v)/|v|` as `(numerator, denominator)`.
    pub f_degree: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub axioms: AxiomReport,
    pub is_fbc: bool,
    pub is_type_s: bool,
    /// Rendered witness pair `(p, q)` when (f7) fails.
    pub type_s_witness: Option<String>,
    pub is_type_ms: bool,
    pub is_bc: bool,
    pub is_bg: bool,
    pub is_fs_bg: bool,
    pub is_fms_bg: bool,
    pub f_degrees: Vec<OrbitDegree>,
    pub integral_f_degree: bool,
    pub f_degree_trivial: bool,
}

impl ClassificationReport {
    pub fn f_degree_of(&self, angle: &str) -> Option<Ratio<u64>> {
        self.f_degrees
            .iter()
            .find(|o| o.orbit.iter().any(|a| a.as_str() == angle))
            .map(|o| Ratio::new(o.f_degree.0, o.f_degree.1))
    }
}

/// Type-S verdict with the first failing pair, if any.
pub fn type_s(c: &Configuration) -> Result<(), TypeSWitness> {
    check_type_s(c, &SequenceIndex::new(c))
}

pub fn classify(c: &Configuration) -> ClassificationReport {
    let axioms = c.validate();
    let is_fbc = axioms.all_hold();
    let f_degrees: Vec<OrbitDegree> = c
        .orbits()
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let r = c.f_degree(i);
            OrbitDegree {
                orbit: o.iter().map(|&e| c.name(e).clone()).collect(),
                f_degree: (*r.numer(), *r.denom()),
            }
        })
        .collect();
    let integral_f_degree = f_degrees.iter().all(|o| o.f_degree.1 == 1);
    let f_degree_trivial = f_degrees.iter().all(|o| o.f_degree == (1, 1));

    let type_s_result = if is_fbc { Some(type_s(c)) } else { None };
    let is_type_s = matches!(type_s_result, Some(Ok(())));
    let type_s_witness = match &type_s_result {
        Some(Err(w)) => Some(w.render(c)),
        _ => None,
    };
    let is_type_ms = is_fbc && c.l_is_trivial();
    let polygons_sized = |k: usize| c.polygons().iter().all(|p| p.len() == k);
    let is_bc = is_type_ms
        && integral_f_degree
        && c.polygons().iter().all(|p| p.len() >= 2 && p.iter().any(|&e| c.degree(e) > 1));
    ClassificationReport {
        axioms,
        is_fbc,
        is_type_s,
        type_s_witness,
        is_type_ms,
        is_bc,
        is_bg: is_bc && polygons_sized(2),
        is_fs_bg: is_type_s && polygons_sized(2),
        is_fms_bg: is_type_ms && polygons_sized(2),
        f_degrees,
        integral_f_degree,
        f_degree_trivial,
    }
}
