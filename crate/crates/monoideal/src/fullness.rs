//! m-fullness of staircase ideals: the split-index criterion, the monomial
//! content of the colon by x + y, the m-full monomial closure iteration,
//! and the factorization into an x-tight and a y-tight ideal.

use crate::error::{Error, Result};
use crate::ideal::{Exp, ExponentVector, MonomialIdeal, StaircaseIdeal2};

/// Outcome of the m-fullness test on a staircase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFullVerdict {
    pub is_m_full: bool,
    /// Split index of the criterion, 1-based; present exactly when m-full.
    pub k: Option<usize>,
    /// order(I); equals n - 1 iff the ideal is m-full.
    pub witness_order: u128,
    pub n: usize,
    /// First violated condition when not m-full.
    pub failure: Option<String>,
}

/// The split index is pinned by the b-sequence: k - 1 is the length of the
/// initial run of unit gaps at the bottom of the staircase.
fn split_index(s: &StaircaseIdeal2) -> usize {
    let n = s.n();
    let mut run = 0usize;
    for i in 1..n {
        if s.b_gap(i) == 1 {
            run += 1;
        } else {
            break;
        }
    }
    run + 1
}

/// order(I) = n - 1 criterion, with the split index and the a-gap check
/// that witnesses it.
pub fn is_m_full(s: &StaircaseIdeal2) -> MFullVerdict {
    let n = s.n();
    let k = split_index(s);
    let witness_order = s.to_ideal().order();
    let mut failure = None;
    for i in k..n {
        if s.a_gap(i) != 1 {
            failure = Some(format!(
                "a_{i} - a_{} = {} but must be 1 for i >= k = {k}",
                i + 1,
                s.a_gap(i)
            ));
            break;
        }
    }
    let full = failure.is_none();
    debug_assert_eq!(full, witness_order == (n as u128) - 1);
    MFullVerdict {
        is_m_full: full,
        k: full.then_some(k),
        witness_order,
        n,
        failure,
    }
}

/// All gaps of the a-sequence equal 1.
pub fn is_x_tight(s: &StaircaseIdeal2) -> bool {
    (1..s.n()).all(|i| s.a_gap(i) == 1)
}

/// All gaps of the b-sequence equal 1.
pub fn is_y_tight(s: &StaircaseIdeal2) -> bool {
    (1..s.n()).all(|i| s.b_gap(i) == 1)
}

/// The monomial ideal M(J : (x+y)) generated by all monomials occurring in
/// elements of the colon, computed per antidiagonal: a monomial x^{e-t} y^t
/// lies in the colon closure iff some telescoping chain covers it, i.e.
/// x * x^{e-p} y^p lies in J for some p <= t and y * x^{e-q} y^q lies in J
/// for some q >= t.
pub fn colon_by_linear(j: &MonomialIdeal) -> Result<MonomialIdeal> {
    if j.dim() != 2 {
        return Err(Error::NotTwoVariables(j.dim()));
    }
    j.check_zero_dimensional()?;
    if j.is_unit() {
        return Ok(j.clone());
    }
    let s = j.to_staircase()?;
    let a1 = s.a_at(1);
    let b1 = s.b_at(1);
    let mut gens: Vec<ExponentVector> = j.gens().to_vec();
    let top = a1.checked_add(b1).expect("exponent overflow");
    for e in 0..=top {
        // reachability flags along the degree-e antidiagonal
        let len = (e + 1) as usize;
        let mut x_in = vec![false; len];
        let mut y_in = vec![false; len];
        for t in 0..=e {
            let m = ExponentVector::xy(e - t, t);
            x_in[t as usize] = j.contains(&m.sum(&ExponentVector::xy(1, 0)))?;
            y_in[t as usize] = j.contains(&m.sum(&ExponentVector::xy(0, 1)))?;
        }
        let mut seen_x = false;
        let mut suffix_y = vec![false; len + 1];
        for t in (0..len).rev() {
            suffix_y[t] = suffix_y[t + 1] || y_in[t];
        }
        for t in 0..len {
            seen_x = seen_x || x_in[t];
            if !(seen_x && suffix_y[t]) {
                continue;
            }
            let (px, py) = (e - t as u64, t as u64);
            // candidates outside the open box are dominated by the pure
            // powers already in J
            if px < a1 && py < b1 {
                gens.push(ExponentVector::xy(px, py));
            }
        }
    }
    MonomialIdeal::new(2, gens)
}

/// Smallest m-full monomial ideal containing I, by iterating the monomial
/// content of (m I : (x+y)) until it stabilizes. The iterates increase
/// strictly inside the integral closure, which bounds the step count.
pub fn m_full_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.dim() != 2 {
        return Err(Error::NotTwoVariables(ideal.dim()));
    }
    ideal.check_zero_dimensional()?;
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let closure = crate::polyhedra::integral_closure(ideal)?;
    let s = ideal.to_staircase()?;
    let (a1, b1) = (s.a_at(1), s.b_at(1));
    let mut ceiling = 1usize;
    for x in 0..=a1 {
        for y in 0..=b1 {
            let p = ExponentVector::xy(x, y);
            if closure.contains(&p)? && !ideal.contains(&p)? {
                ceiling += 1;
            }
        }
    }
    let maximal = MonomialIdeal::from_pairs(&[(1, 0), (0, 1)])?;
    let mut current = ideal.clone();
    for _ in 0..ceiling {
        let next = colon_by_linear(&current.multiply(&maximal)?)?;
        if next == current {
            debug_assert!(is_m_full(&current.to_staircase()?).is_m_full);
            return Ok(current);
        }
        current = next;
    }
    Err(Error::ResourceExceeded(format!(
        "m-full closure did not stabilize within {ceiling} steps"
    )))
}

/// Split an m-full staircase at its index k into an x-tight factor X and a
/// y-tight factor Y with X * Y = I; the trivial side is the unit ideal.
/// Y is built from the first k generators (the y-tight prefix).
pub fn tight_factorization(
    s: &StaircaseIdeal2,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let verdict = is_m_full(s);
    let k = verdict
        .k
        .ok_or_else(|| Error::NotMFull(verdict.failure.clone().unwrap_or_default()))?;
    let n = s.n();
    let shift_x = (n - k) as Exp;
    let shift_y = (k - 1) as Exp;

    // X: exponents (n-k, ..., 0) against b_j - (k-1) for j = 1..n-k+1
    let x_factor = if k == n {
        MonomialIdeal::unit(2)
    } else {
        let ax: Vec<Exp> = (0..=(n - k) as Exp).rev().collect();
        let bx: Vec<Exp> = (1..=n - k + 1).map(|j| s.b_at(j) - shift_y).collect();
        StaircaseIdeal2::new(ax, bx)?.to_ideal()
    };
    // Y: a_i - (n-k) for i = 1..k against (k-1, ..., 0)
    let y_factor = if k == 1 {
        MonomialIdeal::unit(2)
    } else {
        let ay: Vec<Exp> = (1..=k).map(|i| s.a_at(i) - shift_x).collect();
        let by: Vec<Exp> = (0..=(k - 1) as Exp).rev().collect();
        StaircaseIdeal2::new(ay, by)?.to_ideal()
    };
    debug_assert_eq!(x_factor.multiply(&y_factor).unwrap(), s.to_ideal());
    Ok((x_factor, y_factor))
}
