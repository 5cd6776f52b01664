//! Deterministic pseudo-random corpora shared by the unit tests.

use crate::fullness::is_m_full;
use crate::ideal::{Exp, StaircaseIdeal2};

pub(crate) fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

/// Random zero-dimensional staircase generator lists with small exponents.
pub(crate) fn random_staircase_corpus(count: usize, seed: u64, emax: u64) -> Vec<Vec<(Exp, Exp)>> {
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = 2 + (lcg(&mut state) % 4) as usize;
        let mut a: Vec<Exp> = (0..n).map(|_| lcg(&mut state) % (emax + 1)).collect();
        let mut b: Vec<Exp> = (0..n).map(|_| lcg(&mut state) % (emax + 1)).collect();
        a.sort_unstable_by(|p, q| q.cmp(p));
        b.sort_unstable_by(|p, q| q.cmp(p));
        a.dedup();
        b.dedup();
        let n = a.len().min(b.len());
        if n < 2 {
            continue;
        }
        a.truncate(n);
        b.truncate(n);
        *a.last_mut().unwrap() = 0;
        *b.last_mut().unwrap() = 0;
        if a.windows(2).any(|w| w[0] <= w[1]) || b.windows(2).any(|w| w[0] <= w[1]) {
            continue;
        }
        out.push((0..n).map(|i| (a[i], b[n - 1 - i])).collect());
    }
    out
}

/// Random m-full staircases built directly from the split criterion:
/// unit b-gaps below the split, unit a-gaps above it.
pub(crate) fn random_m_full_corpus(count: usize, seed: u64) -> Vec<StaircaseIdeal2> {
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = 2 + (lcg(&mut state) % 4) as usize;
        let k = 1 + (lcg(&mut state) % n as u64) as usize;
        let mut b = vec![0 as Exp; n];
        for j in 1..k {
            b[n - 1 - j] = j as Exp;
        }
        if k < n {
            let mut prev = if k >= 2 { (k - 1) as Exp } else { 0 };
            for idx in (0..n - k).rev() {
                let jump = if idx == n - k - 1 { 2 } else { 1 } + lcg(&mut state) % 4;
                prev += jump;
                b[idx] = prev;
            }
        }
        let mut a = vec![0 as Exp; n];
        for i in (k..n).rev() {
            a[i - 1] = (n - i) as Exp;
        }
        let mut prev = a[k - 1];
        for i in (0..k.saturating_sub(1)).rev() {
            prev += 1 + lcg(&mut state) % 4;
            a[i] = prev;
        }
        match StaircaseIdeal2::new(a, b) {
            Ok(s) if is_m_full(&s).is_m_full => out.push(s),
            _ => continue,
        }
    }
    out
}
