//! Deterministic report structures for the command-line front end. All
//! numbers are exact: integers stay integers and rationals are rendered as
//! `p/q` strings. Serialization goes through `serde_json::Value`, whose map
//! keys are sorted, so reports are byte-identical across runs.

use crate::error::Result;
use crate::fullness::MFullVerdict;
use crate::ideal::MonomialIdeal;
use crate::normality::{Classification, ConditionReport, ConditionStatus};
use crate::parse::format_ideal;
use crate::polyhedra::{IrpVerdict, PickReport};
use crate::poly::{Ring, TermOrder};
use crate::rees::{ProbeVerdict, ReesPresentation};
use num::BigRational;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

fn rational(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Serialize)]
pub struct IdealView {
    pub text: String,
    pub generators: Vec<Vec<u64>>,
}

impl IdealView {
    pub fn new(i: &MonomialIdeal) -> Self {
        IdealView {
            text: format_ideal(i),
            generators: i.gens().iter().map(|g| g.coords().to_vec()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckView {
    pub condition: String,
    pub location: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<u128>,
}

#[derive(Serialize)]
pub struct SuiteView {
    pub suite: String,
    pub overall: bool,
    pub checks: Vec<CheckView>,
}

impl SuiteView {
    pub fn new(r: &ConditionReport) -> Self {
        SuiteView {
            suite: r.suite.to_string(),
            overall: r.overall,
            checks: r
                .checks
                .iter()
                .map(|c| CheckView {
                    condition: c.condition.to_string(),
                    location: c.location,
                    status: match c.status {
                        ConditionStatus::Pass => "pass".into(),
                        ConditionStatus::Fail => "fail".into(),
                        ConditionStatus::Vacuous => "vacuous".into(),
                    },
                    lhs: c.lhs,
                    rhs: c.rhs,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct MFullView {
    pub is_m_full: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub order: u128,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl MFullView {
    pub fn new(v: &MFullVerdict) -> Self {
        MFullView {
            is_m_full: v.is_m_full,
            k: v.k,
            order: v.witness_order,
            n: v.n,
            failure: v.failure.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct ProbeView {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient_range: Option<(i64, i64)>,
}

impl ProbeView {
    pub fn new(v: &ProbeVerdict) -> Self {
        match v {
            ProbeVerdict::AtMostOne { trial, witness } => ProbeView {
                verdict: "at-most-one".into(),
                trial: Some(*trial),
                witness: Some(witness.clone()),
                trials: None,
                coefficient_range: None,
            },
            ProbeVerdict::AtLeastTwo { trials, coeff_lo, coeff_hi } => ProbeView {
                verdict: "at-least-two".into(),
                trial: None,
                witness: None,
                trials: Some(*trials),
                coefficient_range: Some((*coeff_lo, *coeff_hi)),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ReesView {
    pub n: usize,
    pub syzygy_matrix: Vec<Vec<String>>,
    pub content: (u64, u64),
    pub jacobian_dual: Vec<Vec<String>>,
    pub jacobian_dual_mod_m: Vec<Vec<String>>,
    pub linear_forms: Vec<String>,
    pub quadrics: Vec<String>,
    pub expected_equations: ExpectedView,
    pub reduction_probe: ProbeView,
    pub fiber_mu: Vec<usize>,
    pub fiber_mu_expected_if_m_full: Vec<usize>,
    pub groebner_basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
}

#[derive(Serialize)]
pub struct ExpectedView {
    pub via_minors: bool,
    pub minors_ideal: IdealView,
    pub content_power: IdealView,
    pub via_height: bool,
    pub height: usize,
    pub cm_hypothesis_verified: bool,
}

impl ReesView {
    pub fn new(p: &ReesPresentation) -> Self {
        let n = p.staircase.n();
        let ring = Ring::rees(n);
        let order = TermOrder::DegRevLex;
        let xy = Ring::xy();
        let show = |poly: &crate::poly::Polynomial| ring.display(poly, order);
        let matrix: Vec<Vec<String>> = (0..p.syzygy.rows())
            .map(|i| {
                (0..p.syzygy.cols())
                    .map(|j| match p.syzygy.entry(i, j) {
                        None => "0".to_string(),
                        Some(sm) => {
                            let mono = crate::poly::Polynomial::monomial(
                                2,
                                vec![sm.x, sm.y],
                                if sm.negative {
                                    -num::BigRational::from_integer(1.into())
                                } else {
                                    num::BigRational::from_integer(1.into())
                                },
                            );
                            xy.display(&mono, order)
                        }
                    })
                    .collect()
            })
            .collect();
        ReesView {
            n,
            syzygy_matrix: matrix,
            content: p.dual.content,
            jacobian_dual: p.dual.b.iter().map(|row| row.iter().map(show).collect()).collect(),
            jacobian_dual_mod_m: p
                .dual
                .b0
                .iter()
                .map(|row| row.iter().map(show).collect())
                .collect(),
            linear_forms: p.linear_forms.iter().map(show).collect(),
            quadrics: p.quadrics.iter().map(show).collect(),
            expected_equations: ExpectedView {
                via_minors: p.expected.via_minors,
                minors_ideal: IdealView::new(&p.expected.minors_ideal),
                content_power: IdealView::new(&p.expected.content_power),
                via_height: p.expected.via_height,
                height: p.expected.height,
                cm_hypothesis_verified: p.expected.cm_hypothesis_verified,
            },
            reduction_probe: ProbeView::new(&p.reduction),
            fiber_mu: p.fiber_mu.clone(),
            fiber_mu_expected_if_m_full: (0..p.fiber_mu.len())
                .map(|j| crate::rees::expected_fiber_mu(n, j as u32))
                .collect(),
            groebner_basis: p.full_ideal.basis.iter().map(show).collect(),
            routes_agree: p.routes_agree,
        }
    }
}

#[derive(Serialize)]
pub struct PickView {
    pub vertices: Vec<(i128, i128)>,
    pub area: String,
    pub interior_points: u128,
    pub boundary_points: u128,
    pub total_points: u128,
    pub holds: bool,
}

impl PickView {
    pub fn new(vertices: &[(i128, i128)], r: &PickReport) -> Self {
        PickView {
            vertices: vertices.to_vec(),
            area: rational(&r.area),
            interior_points: r.interior_points,
            boundary_points: r.boundary_points,
            total_points: r.total_points,
            holds: r.holds,
        }
    }
}

#[derive(Serialize)]
pub struct IrpView {
    pub verdict: String,
    pub wbox: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_w: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_optimum: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_optimum: Option<String>,
}

impl IrpView {
    pub fn new(wbox: &[u64], v: &IrpVerdict) -> Self {
        match v {
            IrpVerdict::HoldsOnBox { wbox } => IrpView {
                verdict: "holds-on-box".into(),
                wbox: wbox.clone(),
                violating_w: None,
                integer_optimum: None,
                lp_optimum: None,
            },
            IrpVerdict::ViolatedAt { w, ip, lp } => IrpView {
                verdict: "violated".into(),
                wbox: wbox.to_vec(),
                violating_w: Some(w.clone()),
                integer_optimum: Some(*ip),
                lp_optimum: Some(rational(lp)),
            },
        }
    }
}

#[derive(Serialize)]
pub struct ClassifyView {
    pub input: IdealView,
    pub staircase_a: Vec<u64>,
    pub staircase_b: Vec<u64>,
    pub m_full: MFullView,
    pub m_full_closure: IdealView,
    pub integral_closure: IdealView,
    pub is_normal: bool,
    pub necessary: SuiteView,
    pub sufficient: SuiteView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_factor_x: Option<IdealView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight_factor_y: Option<IdealView>,
    pub consistency: Vec<(String, bool)>,
    pub consistent: bool,
}

impl ClassifyView {
    pub fn new(c: &Classification) -> Self {
        ClassifyView {
            input: IdealView::new(&c.staircase.to_ideal()),
            staircase_a: c.staircase.a().to_vec(),
            staircase_b: c.staircase.b().to_vec(),
            m_full: MFullView::new(&c.m_full),
            m_full_closure: IdealView::new(&c.m_full_closure),
            integral_closure: IdealView::new(&c.integral_closure),
            is_normal: c.normal,
            necessary: SuiteView::new(&c.necessary),
            sufficient: SuiteView::new(&c.sufficient),
            tight_factor_x: c.tight_factors.as_ref().map(|(x, _)| IdealView::new(x)),
            tight_factor_y: c.tight_factors.as_ref().map(|(_, y)| IdealView::new(y)),
            consistency: c
                .consistency
                .iter()
                .map(|r| (r.rule.to_string(), r.ok))
                .collect(),
            consistent: c.consistent(),
        }
    }
}

/// Envelope for every report the binary emits.
#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub result: T,
}

/// Canonical JSON: serialize through Value so map keys come out sorted.
pub fn to_canonical_json<T: Serialize>(report: &Report<T>) -> Result<String> {
    let value = serde_json::to_value(report)
        .map_err(|e| crate::error::Error::Internal(format!("serialization: {e}")))?;
    serde_json::to_string_pretty(&value)
        .map_err(|e| crate::error::Error::Internal(format!("serialization: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normality::classify;

    #[test]
    fn classify_report_is_deterministic_and_exact() {
        let s = MonomialIdeal::from_pairs(&[(3, 0), (2, 8), (1, 15), (0, 21)])
            .unwrap()
            .to_staircase()
            .unwrap();
        let c = classify(&s).unwrap();
        let render = |c: &crate::normality::Classification| {
            to_canonical_json(&Report {
                schema: SCHEMA_VERSION,
                command: "classify".into(),
                input: format_ideal(&s.to_ideal()),
                result: ClassifyView::new(c),
            })
            .unwrap()
        };
        let one = render(&c);
        let two = render(&classify(&s).unwrap());
        assert_eq!(one, two);
        assert!(one.contains("\"schema\": 1"));
        assert!(!one.contains('e') || !one.contains("E+"), "no float formatting");
        assert!(one.contains("x^3, x^2*y^8, x*y^15, y^21"));
    }

    #[test]
    fn irp_view_renders_exact_rationals() {
        let v = IrpVerdict::ViolatedAt {
            w: vec![2, 7],
            ip: 0,
            lp: BigRational::new(7.into(), 3.into()),
        };
        let view = IrpView::new(&[8, 8], &v);
        assert_eq!(view.lp_optimum.as_deref(), Some("7/3"));
    }
}
