//! Sparse multivariate polynomials with exact rational coefficients, plus
//! the term orders used by the Groebner engine.

use num::{BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector of a monomial over the ambient ring's variable list.
pub type Mono = Vec<u64>;

pub fn mono_mul(a: &[u64], b: &[u64]) -> Mono {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

pub fn mono_divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// b / a, assuming divisibility.
pub fn mono_div(b: &[u64], a: &[u64]) -> Mono {
    debug_assert!(mono_divides(a, b));
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn mono_lcm(a: &[u64], b: &[u64]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_degree(a: &[u64]) -> u64 {
    a.iter().sum()
}

fn degrevlex(a: &[u64], b: &[u64]) -> Ordering {
    match mono_degree(a).cmp(&mono_degree(b)) {
        Ordering::Equal => {
            for (x, y) in a.iter().zip(b).rev() {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    // smaller exponent in the last differing position wins
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

/// A monomial order: total, multiplicative, with 1 minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Elimination order for the first `prefix` variables: the prefix block
    /// is compared by degrevlex first, then the remaining block.
    Block { prefix: usize },
}

impl TermOrder {
    pub fn cmp(&self, a: &[u64], b: &[u64]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Block { prefix } => degrevlex(&a[..*prefix], &b[..*prefix])
                .then_with(|| degrevlex(&a[*prefix..], &b[*prefix..])),
        }
    }
}

/// Ambient polynomial ring context: just the variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Self {
        Ring { vars: vars.into_iter().map(Into::into).collect() }
    }

    pub fn xy() -> Self {
        Ring::new(vec!["x", "y"])
    }

    /// The ring k[x, y, T_1..T_n] used for Rees computations.
    pub fn rees(n: usize) -> Self {
        let mut vars = vec!["x".to_string(), "y".to_string()];
        vars.extend((1..=n).map(|i| format!("T{i}")));
        Ring { vars }
    }

    /// Prepend auxiliary variables (for elimination tricks).
    pub fn with_prefix<S: Into<String>>(&self, aux: Vec<S>) -> Self {
        let mut vars: Vec<String> = aux.into_iter().map(Into::into).collect();
        vars.extend(self.vars.iter().cloned());
        Ring { vars }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> Polynomial {
        let mut mono = vec![0; self.nvars()];
        mono[i] = 1;
        Polynomial::monomial(self.nvars(), mono, BigRational::one())
    }

    pub fn display(&self, p: &Polynomial, order: TermOrder) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Mono, &BigRational)> = p.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut out = String::new();
        for (i, (mono, coeff)) in terms.iter().enumerate() {
            let mut mag = (*coeff).clone();
            if i == 0 {
                if coeff.is_negative() {
                    out.push('-');
                    mag = -mag;
                }
            } else if coeff.is_negative() {
                out.push_str(" - ");
                mag = -mag;
            } else {
                out.push_str(" + ");
            }
            let factors: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars[v].clone()
                    } else {
                        format!("{}^{}", self.vars[v], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], BigRational::one())
    }

    pub fn monomial(nvars: usize, mono: Mono, coeff: BigRational) -> Self {
        debug_assert_eq!(mono.len(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Polynomial { nvars, terms }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Mono, BigRational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u64]) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, mono: &[u64], coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(mono) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(mono);
                }
            }
            None => {
                self.terms.insert(mono.to_vec(), coeff.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, &-c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, mono: &[u64], coeff: &BigRational) -> Self {
        if coeff.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (mono_mul(m, mono), c * coeff))
            .collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &other.terms {
            for (m2, c2) in &self.terms {
                out.add_term(&mono_mul(m, m2), &(c * c2));
            }
        }
        out
    }

    /// self -= g * (coeff * x^mono), without intermediate allocation.
    pub fn sub_mul_term_in_place(&mut self, g: &Self, mono: &[u64], coeff: &BigRational) {
        debug_assert_eq!(self.nvars, g.nvars);
        for (m, c) in &g.terms {
            self.add_term(&mono_mul(m, mono), &-(c * coeff));
        }
    }

    /// Remove and return one term.
    pub fn remove_term(&mut self, mono: &[u64]) -> Option<BigRational> {
        self.terms.remove(mono)
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: TermOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Scale so all coefficients are coprime integers and the leading one
    /// (under the order) is positive. Keeps intermediate Groebner
    /// arithmetic over small integers.
    pub fn primitive(&self, order: TermOrder) -> Self {
        use num::BigInt;
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::from(1);
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut numer_gcd = BigInt::from(0);
        for c in self.terms.values() {
            numer_gcd = num::integer::gcd(numer_gcd, c.numer() * (&denom_lcm / c.denom()));
        }
        let mut scale = BigRational::new(denom_lcm, numer_gcd);
        if self.leading_term(order).unwrap().1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| mono_degree(m)).max().unwrap_or(0)
    }

    /// Maximum total exponent over the variables in [lo, hi) across terms,
    /// e.g. the T-degree of a Rees-ring element.
    pub fn degree_in_range(&self, lo: usize, hi: usize) -> u64 {
        self.terms
            .keys()
            .map(|m| m[lo..hi].iter().sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    /// Insert `k` zero exponents at the front (auxiliary elimination vars).
    pub fn extend_prefix(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mono = vec![0; k];
                mono.extend_from_slice(m);
                (mono, c.clone())
            })
            .collect();
        Polynomial { nvars: self.nvars + k, terms }
    }

    /// Drop the first `k` exponents; every term must be free of them.
    pub fn restrict_prefix(&self, k: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m[..k].iter().all(|&e| e == 0));
                (m[k..].to_vec(), c.clone())
            })
            .collect();
        Polynomial { nvars: self.nvars - k, terms }
    }

    /// The distinct monomials of the polynomial (its monomial content
    /// generators).
    pub fn monomials(&self) -> Vec<Mono> {
        self.terms.keys().cloned().collect()
    }

    /// Relabel variables: old index i becomes perm[i].
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mono = vec![0; self.nvars];
                for (i, &e) in m.iter().enumerate() {
                    mono[perm[i]] = e;
                }
                (mono, c.clone())
            })
            .collect();
        Polynomial { nvars: self.nvars, terms }
    }
}
