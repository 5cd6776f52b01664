//! Necessary and sufficient inequality suites for normality of staircase
//! ideals, the exact normality decision, and the aggregate classification.
//!
//! The polyhedral closure is the ground truth for normality; the inequality
//! suites are reported as evidence and never override it.

use crate::error::Result;
use crate::fullness::{self, MFullVerdict};
use crate::ideal::{MonomialIdeal, StaircaseIdeal2};
use crate::polyhedra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    /// Hypothesis of a conditional check does not apply at this location.
    Vacuous,
}

/// One evaluated inequality, with the compared values when applicable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: &'static str,
    /// 1-based location index in the staircase.
    pub location: usize,
    pub status: ConditionStatus,
    pub lhs: Option<u128>,
    pub rhs: Option<u128>,
}

impl ConditionCheck {
    fn holds(&self) -> bool {
        self.status != ConditionStatus::Fail
    }
}

/// Evaluated inequality suite; `overall` is the suite verdict (all
/// necessary checks hold, resp. some sufficient branch fully holds).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub suite: &'static str,
    pub checks: Vec<ConditionCheck>,
    pub overall: bool,
}

fn ceil_avg(x: u128, y: u128) -> u128 {
    (x + y + 1) / 2
}

/// Necessary conditions for normality: the unit-gap alternatives, the
/// ceiling bounds on consecutive triples, and the existence of a split
/// index making the combined gap-and-convexity system hold.
pub fn necessary_conditions(s: &StaircaseIdeal2) -> ConditionReport {
    let n = s.n();
    let mut checks = Vec::new();

    // either the a-gap or the b-gap at i is 1
    for i in 1..n {
        let (ag, bg) = (s.a_gap(i), s.b_gap(i));
        checks.push(ConditionCheck {
            condition: "gap-alternative",
            location: i,
            status: if ag == 1 || bg == 1 { ConditionStatus::Pass } else { ConditionStatus::Fail },
            lhs: Some(ag as u128),
            rhs: Some(bg as u128),
        });
    }
    // a wide b-gap forces two unit a-gaps
    for i in 1..n {
        if s.b_gap(i) <= 1 {
            checks.push(ConditionCheck {
                condition: "wide-b-gap-forces-unit-a-gaps",
                location: i,
                status: ConditionStatus::Vacuous,
                lhs: None,
                rhs: None,
            });
            continue;
        }
        let ok = s.a_gap(i) == 1 && (i + 2 > n || s.a_gap(i + 1) == 1);
        checks.push(ConditionCheck {
            condition: "wide-b-gap-forces-unit-a-gaps",
            location: i,
            status: if ok { ConditionStatus::Pass } else { ConditionStatus::Fail },
            lhs: Some(s.a_gap(i) as u128),
            rhs: Some(1),
        });
    }
    // triple bounds: two unit b-gaps bound the middle a-exponent ...
    for i in 1..n.saturating_sub(1) {
        if s.b_gap(i) == 1 && s.b_gap(i + 1) == 1 {
            let lhs = s.a_at(i + 1) as u128;
            let rhs = ceil_avg(s.a_at(i) as u128, s.a_at(i + 2) as u128);
            checks.push(ConditionCheck {
                condition: "triple-bound-a",
                location: i,
                status: if lhs <= rhs { ConditionStatus::Pass } else { ConditionStatus::Fail },
                lhs: Some(lhs),
                rhs: Some(rhs),
            });
        } else {
            checks.push(ConditionCheck {
                condition: "triple-bound-a",
                location: i,
                status: ConditionStatus::Vacuous,
                lhs: None,
                rhs: None,
            });
        }
        // ... and symmetrically for two unit a-gaps
        if s.a_gap(i) == 1 && s.a_gap(i + 1) == 1 {
            let lhs = s.b_at(n - i) as u128;
            let rhs = ceil_avg(s.b_at(n - i - 1) as u128, s.b_at(n - i + 1) as u128);
            checks.push(ConditionCheck {
                condition: "triple-bound-b",
                location: i,
                status: if lhs <= rhs { ConditionStatus::Pass } else { ConditionStatus::Fail },
                lhs: Some(lhs),
                rhs: Some(rhs),
            });
        } else {
            checks.push(ConditionCheck {
                condition: "triple-bound-b",
                location: i,
                status: ConditionStatus::Vacuous,
                lhs: None,
                rhs: None,
            });
        }
    }

    // existence of a split index k making the combined system hold
    let split_system = |k: usize| -> Vec<ConditionCheck> {
        let mut out = Vec::new();
        for i in k..n {
            let ok = s.a_at(i) == (n - i) as u64;
            out.push(ConditionCheck {
                condition: "split-a-run",
                location: i,
                status: if ok { ConditionStatus::Pass } else { ConditionStatus::Fail },
                lhs: Some(s.a_at(i) as u128),
                rhs: Some((n - i) as u128),
            });
        }
        for j in 1..k {
            let ok = s.b_at(n - j) == j as u64;
            out.push(ConditionCheck {
                condition: "split-b-run",
                location: j,
                status: if ok { ConditionStatus::Pass } else { ConditionStatus::Fail },
                lhs: Some(s.b_at(n - j) as u128),
                rhs: Some(j as u128),
            });
        }
        for j in 2..=n.saturating_sub(k) {
            let lhs = s.b_at(j) as u128;
            let rhs = ceil_avg(s.b_at(j - 1) as u128, s.b_at(j + 1) as u128);
            out.push(ConditionCheck {
                condition: "split-b-ceiling",
                location: j,
                status: if lhs <= rhs { ConditionStatus::Pass } else { ConditionStatus::Fail },
                lhs: Some(lhs),
                rhs: Some(rhs),
            });
        }
        for j in 2..k {
            let lhs = s.a_at(j) as u128;
            let rhs = ceil_avg(s.a_at(j - 1) as u128, s.a_at(j + 1) as u128);
            out.push(ConditionCheck {
                condition: "split-a-ceiling",
                location: j,
                status: if lhs <= rhs { ConditionStatus::Pass } else { ConditionStatus::Fail },
                lhs: Some(lhs),
                rhs: Some(rhs),
            });
        }
        out
    };
    let canonical = fullness::is_m_full(s).k.unwrap_or(1);
    let mut split_checks = None;
    for k in 1..=n {
        let sys = split_system(k);
        if sys.iter().all(ConditionCheck::holds) {
            split_checks = Some(sys);
            break;
        }
    }
    let split_ok = split_checks.is_some();
    checks.extend(split_checks.unwrap_or_else(|| split_system(canonical)));

    let overall = split_ok && checks.iter().all(ConditionCheck::holds);
    ConditionReport { suite: "necessary", checks, overall }
}

/// Sufficient conditions for normality: the x-tight convexity criterion,
/// and for m-full ideals the split-relative convexity pair.
pub fn sufficient_conditions(s: &StaircaseIdeal2) -> ConditionReport {
    let n = s.n();
    let mut checks = Vec::new();

    // branch 1: x-tight plus b-convexity
    let xtight = fullness::is_x_tight(s);
    checks.push(ConditionCheck {
        condition: "xtight-hypothesis",
        location: 0,
        status: if xtight { ConditionStatus::Pass } else { ConditionStatus::Fail },
        lhs: None,
        rhs: None,
    });
    let mut branch1 = xtight;
    for j in 2..n {
        let lhs = 2 * s.b_at(j) as u128;
        let rhs = s.b_at(j - 1) as u128 + s.b_at(j + 1) as u128;
        let status = if !xtight {
            ConditionStatus::Vacuous
        } else if lhs <= rhs {
            ConditionStatus::Pass
        } else {
            ConditionStatus::Fail
        };
        branch1 &= status != ConditionStatus::Fail;
        checks.push(ConditionCheck {
            condition: "xtight-b-convexity",
            location: j,
            status,
            lhs: Some(lhs),
            rhs: Some(rhs),
        });
    }

    // branch 2: m-full with convexity on both sides of the split
    let verdict = fullness::is_m_full(s);
    let mut branch2 = verdict.is_m_full;
    match verdict.k {
        None => checks.push(ConditionCheck {
            condition: "mfull-hypothesis",
            location: 0,
            status: ConditionStatus::Fail,
            lhs: None,
            rhs: None,
        }),
        Some(k) => {
            checks.push(ConditionCheck {
                condition: "mfull-hypothesis",
                location: k,
                status: ConditionStatus::Pass,
                lhs: None,
                rhs: None,
            });
            for j in 2..=n - k {
                let lhs = 2 * s.b_at(j) as u128;
                let rhs = s.b_at(j - 1) as u128 + s.b_at(j + 1) as u128;
                let ok = lhs <= rhs;
                branch2 &= ok;
                checks.push(ConditionCheck {
                    condition: "split-b-convexity",
                    location: j,
                    status: if ok { ConditionStatus::Pass } else { ConditionStatus::Fail },
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                });
            }
            for j in 2..k {
                let lhs = 2 * s.a_at(j) as u128;
                let rhs = s.a_at(j - 1) as u128 + s.a_at(j + 1) as u128;
                let ok = lhs <= rhs;
                branch2 &= ok;
                checks.push(ConditionCheck {
                    condition: "split-a-convexity",
                    location: j,
                    status: if ok { ConditionStatus::Pass } else { ConditionStatus::Fail },
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                });
            }
        }
    }

    ConditionReport { suite: "sufficient", checks, overall: branch1 || branch2 }
}

/// Exact normality: in two variables an ideal is normal iff it equals its
/// integral closure. When it does, the closures of the small powers are
/// also compared against the powers themselves.
pub fn is_normal(s: &StaircaseIdeal2) -> Result<bool> {
    let ideal = s.to_ideal();
    let closed = polyhedra::integral_closure(&ideal)? == ideal;
    if closed {
        for m in 2..=3 {
            let lhs = polyhedra::power_closure(&ideal, m)?;
            let rhs = ideal.power(m)?;
            assert_eq!(lhs, rhs, "a closed two-variable ideal must be normal");
        }
    }
    Ok(closed)
}

/// One row of the logical consistency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyCheck {
    pub rule: &'static str,
    pub ok: bool,
}

/// Everything the library can say about one staircase ideal, plus the
/// consistency matrix tying the verdicts together.
#[derive(Clone, Debug)]
pub struct Classification {
    pub staircase: StaircaseIdeal2,
    pub m_full: MFullVerdict,
    pub m_full_closure: MonomialIdeal,
    pub integral_closure: MonomialIdeal,
    pub necessary: ConditionReport,
    pub sufficient: ConditionReport,
    pub normal: bool,
    pub tight_factors: Option<(MonomialIdeal, MonomialIdeal)>,
    pub consistency: Vec<ConsistencyCheck>,
}

impl Classification {
    pub fn consistent(&self) -> bool {
        self.consistency.iter().all(|c| c.ok)
    }
}

pub fn classify(s: &StaircaseIdeal2) -> Result<Classification> {
    let ideal = s.to_ideal();
    let m_full = fullness::is_m_full(s);
    let star = fullness::m_full_closure(&ideal)?;
    let bar = polyhedra::integral_closure(&ideal)?;
    let necessary = necessary_conditions(s);
    let sufficient = sufficient_conditions(s);
    let normal = is_normal(s)?;
    let tight_factors = m_full.is_m_full.then(|| fullness::tight_factorization(s)).transpose()?;

    let implies = |p: bool, q: bool| !p || q;
    let consistency = vec![
        ConsistencyCheck { rule: "normal => m-full", ok: implies(normal, m_full.is_m_full) },
        ConsistencyCheck { rule: "normal => necessary pass", ok: implies(normal, necessary.overall) },
        ConsistencyCheck { rule: "sufficient pass => normal", ok: implies(sufficient.overall, normal) },
        ConsistencyCheck {
            rule: "I inside m-full closure",
            ok: ideal.is_subideal_of(&star)?,
        },
        ConsistencyCheck {
            rule: "m-full closure inside integral closure",
            ok: star.is_subideal_of(&bar)?,
        },
        ConsistencyCheck {
            rule: "normal <=> closure fixed point",
            ok: normal == (bar == ideal),
        },
        ConsistencyCheck {
            rule: "tight factors multiply back",
            ok: match &tight_factors {
                None => true,
                Some((x, y)) => x.multiply(y)? == ideal,
            },
        },
    ];
    Ok(Classification {
        staircase: s.clone(),
        m_full,
        m_full_closure: star,
        integral_closure: bar,
        necessary,
        sufficient,
        normal,
        tight_factors,
        consistency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Exp;

    fn stair(pairs: &[(Exp, Exp)]) -> StaircaseIdeal2 {
        MonomialIdeal::from_pairs(pairs).unwrap().to_staircase().unwrap()
    }

    #[test]
    fn counterexample_passes_all_necessary_conditions() {
        let r = necessary_conditions(&stair(&[(3, 0), (2, 8), (1, 15), (0, 21)]));
        assert!(r.overall, "{:?}", r.checks.iter().filter(|c| !c.holds()).collect::<Vec<_>>());
    }

    #[test]
    fn two_pure_powers_fail_the_gap_alternative() {
        let r = necessary_conditions(&stair(&[(3, 0), (0, 5)]));
        assert!(!r.overall);
        let first = r
            .checks
            .iter()
            .find(|c| c.condition == "gap-alternative" && c.status == ConditionStatus::Fail)
            .unwrap();
        assert_eq!(first.location, 1);
        assert_eq!((first.lhs, first.rhs), (Some(3), Some(5)));
    }

    #[test]
    fn normal_cusp_closure_passes_necessary() {
        let r = necessary_conditions(&stair(&[(2, 0), (1, 2), (0, 3)]));
        assert!(r.overall);
    }

    #[test]
    fn sufficient_holds_for_xtight_convex_staircase() {
        let r = sufficient_conditions(&stair(&[(2, 0), (1, 3), (0, 6)]));
        assert!(r.overall);
    }

    #[test]
    fn sufficient_fails_for_normal_cusp_closure() {
        // normal, but 2*b_2 = 4 > b_1 + b_3 = 3: the hypothesis fails and
        // the suite must not contradict the normality verdict
        let s = stair(&[(2, 0), (1, 2), (0, 3)]);
        let r = sufficient_conditions(&s);
        assert!(!r.overall);
        assert!(is_normal(&s).unwrap());
    }

    #[test]
    fn sufficient_fails_for_counterexample() {
        let r = sufficient_conditions(&stair(&[(3, 0), (2, 8), (1, 15), (0, 21)]));
        assert!(!r.overall);
    }

    #[test]
    fn normality_of_paper_examples() {
        assert!(is_normal(&stair(&[(2, 0), (1, 2), (0, 3)])).unwrap());
        assert!(!is_normal(&stair(&[(3, 0), (2, 8), (1, 15), (0, 21)])).unwrap());
        assert!(is_normal(&stair(&[(3, 0), (2, 1), (1, 4), (0, 10)])).unwrap());
    }

    #[test]
    fn classify_the_counterexample() {
        let c = classify(&stair(&[(3, 0), (2, 8), (1, 15), (0, 21)])).unwrap();
        assert!(c.m_full.is_m_full);
        assert!(!c.normal);
        assert!(c.necessary.overall);
        assert_eq!(
            c.integral_closure,
            MonomialIdeal::from_pairs(&[(3, 0), (2, 7), (1, 14), (0, 21)]).unwrap()
        );
        assert!(c.consistent());
    }

    #[test]
    fn classify_powers_of_the_maximal_ideal() {
        for k in 1..=4u32 {
            let mk = MonomialIdeal::from_pairs(&[(1, 0), (0, 1)]).unwrap().power(k).unwrap();
            let c = classify(&mk.to_staircase().unwrap()).unwrap();
            assert!(c.normal && c.m_full.is_m_full && c.necessary.overall);
            assert_eq!(c.integral_closure, mk);
            assert_eq!(c.m_full_closure, mk);
            assert!(c.consistent());
        }
    }

    #[test]
    fn consistency_matrix_on_a_random_sweep() {
        for pairs in crate::testutil::random_staircase_corpus(150, 0x5ca1ab1e, 12) {
            let s = MonomialIdeal::from_pairs(&pairs).unwrap().to_staircase().unwrap();
            let c = classify(&s).unwrap();
            assert!(c.consistent(), "inconsistent on {pairs:?}: {:?}", c.consistency);
        }
    }

    #[test]
    fn normal_products_of_normal_ideals() {
        // Zariski: products of complete ideals in two variables are complete
        let samples = [
            stair(&[(2, 0), (1, 2), (0, 3)]),
            stair(&[(1, 0), (0, 1)]),
            stair(&[(3, 0), (2, 1), (1, 4), (0, 10)]),
        ];
        for s in &samples {
            for t in &samples {
                let p = s.to_ideal().multiply(&t.to_ideal()).unwrap();
                assert!(is_normal(&p.to_staircase().unwrap()).unwrap());
            }
        }
    }
}
