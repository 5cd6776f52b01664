//! Exact rational linear inequality systems, solved by Fourier-Motzkin
//! elimination. Small systems only; a row ceiling guards against blowup.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, Signed, Zero};
use std::collections::HashMap;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_u(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// One inequality sum(coeffs[i] * x_i) <= rhs.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

impl Row {
    /// Scale by the positive rational that makes all entries integer with
    /// content 1, so equal constraints compare equal.
    fn canonicalize(&mut self) {
        let mut denom_lcm = BigInt::from(1);
        let mut numer_gcd = BigInt::zero();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num::integer::gcd(numer_gcd, scaled);
        }
        if numer_gcd.is_zero() {
            return;
        }
        let scale = BigRational::new(denom_lcm, numer_gcd);
        for c in self.coeffs.iter_mut() {
            *c *= &scale;
        }
        self.rhs *= &scale;
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero()) && !self.rhs.is_negative()
    }

    fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero()) && self.rhs.is_negative()
    }
}

/// A conjunction of linear inequalities over `nvars` rational unknowns.
#[derive(Clone, Debug)]
pub struct IneqSystem {
    nvars: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(BigRational),
    Unbounded,
    Infeasible,
}

impl IneqSystem {
    pub fn new(nvars: usize) -> Self {
        IneqSystem { nvars, rows: Vec::new() }
    }

    /// sum(coeffs[i] * x_i) <= rhs
    pub fn le(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        debug_assert_eq!(coeffs.len(), self.nvars);
        let mut row = Row { coeffs, rhs };
        row.canonicalize();
        self.rows.push(row);
    }

    /// sum(coeffs[i] * x_i) >= rhs
    pub fn ge(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.le(coeffs.into_iter().map(|c| -c).collect(), -rhs);
    }

    /// sum(coeffs[i] * x_i) == rhs
    pub fn eq(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.le(coeffs.clone(), rhs.clone());
        self.ge(coeffs, rhs);
    }

    /// x_i >= 0 for every variable.
    pub fn nonnegative_all(&mut self) {
        for i in 0..self.nvars {
            let mut c = vec![BigRational::zero(); self.nvars];
            c[i] = rat(-1);
            self.le(c, BigRational::zero());
        }
    }

    /// Drop duplicate constraints, keeping the tightest rhs per coefficient
    /// vector. Returns Err on an all-zero contradictory row carried along.
    fn prune(rows: Vec<Row>) -> (Vec<Row>, bool) {
        let mut best: HashMap<Vec<BigRational>, BigRational> = HashMap::new();
        let mut contradiction = false;
        for row in rows {
            if row.is_contradiction() {
                contradiction = true;
                continue;
            }
            if row.is_trivial() {
                continue;
            }
            best.entry(row.coeffs)
                .and_modify(|r| {
                    if row.rhs < *r {
                        *r = row.rhs.clone();
                    }
                })
                .or_insert(row.rhs);
        }
        let rows = best
            .into_iter()
            .map(|(coeffs, rhs)| Row { coeffs, rhs })
            .collect();
        (rows, contradiction)
    }

    /// Project away variable `var`. `max_rows` bounds intermediate growth.
    fn eliminate(rows: &[Row], var: usize, max_rows: usize) -> Result<(Vec<Row>, bool)> {
        let mut pos: Vec<&Row> = Vec::new();
        let mut neg: Vec<&Row> = Vec::new();
        let mut out: Vec<Row> = Vec::new();
        for r in rows {
            let c = &r.coeffs[var];
            if c.is_zero() {
                out.push(r.clone());
            } else if c.is_positive() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        if out.len() + pos.len() * neg.len() > max_rows {
            return Err(Error::ResourceExceeded(format!(
                "Fourier-Motzkin row ceiling {max_rows} hit while eliminating variable {var}"
            )));
        }
        for p in &pos {
            for n in &neg {
                // multipliers -a_n > 0 and a_p > 0 cancel the column
                let ap = p.coeffs[var].clone();
                let an_neg = -n.coeffs[var].clone();
                let coeffs: Vec<BigRational> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(pc, nc)| pc * &an_neg + nc * &ap)
                    .collect();
                let rhs = &p.rhs * &an_neg + &n.rhs * &ap;
                let mut row = Row { coeffs, rhs };
                row.coeffs[var] = BigRational::zero();
                row.canonicalize();
                out.push(row);
            }
        }
        let (out, contradiction) = Self::prune(out);
        Ok((out, contradiction))
    }

    /// Exact feasibility; on success returns one feasible point.
    pub fn feasible_point(&self, max_rows: usize) -> Result<Option<Vec<BigRational>>> {
        let (initial, contradiction) = Self::prune(self.rows.clone());
        if contradiction {
            return Ok(None);
        }
        // snapshots[k] still contains variables k..nvars-1
        let mut snapshots: Vec<Vec<Row>> = vec![initial];
        for var in 0..self.nvars {
            let (next, contradiction) = Self::eliminate(snapshots.last().unwrap(), var, max_rows)?;
            if contradiction {
                return Ok(None);
            }
            snapshots.push(next);
        }
        let mut point = vec![BigRational::zero(); self.nvars];
        for var in (0..self.nvars).rev() {
            let mut lo: Option<BigRational> = None;
            let mut hi: Option<BigRational> = None;
            for row in &snapshots[var] {
                let a = &row.coeffs[var];
                if a.is_zero() {
                    continue;
                }
                let mut rest = row.rhs.clone();
                for j in var + 1..self.nvars {
                    rest -= &row.coeffs[j] * &point[j];
                }
                let bound = rest / a.clone();
                if a.is_positive() {
                    // x_var <= bound
                    hi = Some(match hi {
                        Some(h) if h <= bound => h,
                        _ => bound,
                    });
                } else {
                    // x_var >= bound
                    lo = Some(match lo {
                        Some(l) if l >= bound => l,
                        _ => bound,
                    });
                }
            }
            point[var] = match (lo, hi) {
                (Some(l), Some(h)) => {
                    debug_assert!(l <= h, "back-substitution interval is empty");
                    (l + h) / rat(2)
                }
                (Some(l), None) => l,
                (None, Some(h)) => h,
                (None, None) => BigRational::zero(),
            };
        }
        Ok(Some(point))
    }

    /// Eliminate the first `prefix` variables and return the surviving
    /// constraints over the remaining ones, or None if the system is
    /// contradictory regardless of the remaining variables.
    #[allow(clippy::type_complexity)]
    pub fn project_prefix(
        &self,
        prefix: usize,
        max_rows: usize,
    ) -> Result<Option<Vec<(Vec<BigRational>, BigRational)>>> {
        let (mut rows, contradiction) = Self::prune(self.rows.clone());
        if contradiction {
            return Ok(None);
        }
        for var in 0..prefix {
            let (next, contradiction) = Self::eliminate(&rows, var, max_rows)?;
            if contradiction {
                return Ok(None);
            }
            rows = next;
        }
        Ok(Some(
            rows.into_iter()
                .map(|r| (r.coeffs[prefix..].to_vec(), r.rhs))
                .collect(),
        ))
    }

    /// Exact maximum of `objective . x` over the system.
    pub fn maximize(&self, objective: &[BigRational], max_rows: usize) -> Result<LpOutcome> {
        debug_assert_eq!(objective.len(), self.nvars);
        // extended system over (x_0..x_{n-1}, z) with z = objective . x
        let n = self.nvars;
        let mut ext = IneqSystem::new(n + 1);
        for row in &self.rows {
            let mut coeffs = row.coeffs.clone();
            coeffs.push(BigRational::zero());
            ext.le(coeffs, row.rhs.clone());
        }
        let mut zdef: Vec<BigRational> = objective.iter().map(|c| -c.clone()).collect();
        zdef.push(rat(1));
        ext.eq(zdef, BigRational::zero());

        let (mut rows, contradiction) = Self::prune(ext.rows);
        if contradiction {
            return Ok(LpOutcome::Infeasible);
        }
        for var in 0..n {
            let (next, contradiction) = Self::eliminate(&rows, var, max_rows)?;
            if contradiction {
                return Ok(LpOutcome::Infeasible);
            }
            rows = next;
        }
        // remaining rows constrain z alone: a * z <= b
        let mut hi: Option<BigRational> = None;
        let mut lo: Option<BigRational> = None;
        for row in &rows {
            let a = &row.coeffs[n];
            if a.is_zero() {
                continue; // trivial rows were pruned; contradictions caught above
            }
            let bound = &row.rhs / a;
            if a.is_positive() {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            } else {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l > h => Ok(LpOutcome::Infeasible),
            (_, Some(h)) => Ok(LpOutcome::Optimal(h)),
            (_, None) => Ok(LpOutcome::Unbounded),
        }
    }
}
