//! Exponent vectors, monomial ideals, and the two-variable staircase form.
//!
//! A monomial ideal is stored as the antichain of its minimal generators,
//! sorted lexicographically with `x1 > x2 > ...` (descending), so equality
//! of ideals is structural equality of the generator lists.

use crate::error::{Error, Result};
use std::fmt;

/// Stored exponent type. All additive operations are checked so overflow can
/// never pass silently; quantities that involve products of exponents
/// (geometric predicates, areas, LP data) are computed in wider or
/// arbitrary-precision types by the modules that need them.
pub type Exp = u64;

/// A lattice point a ∈ N^d, the exponent of a monomial x^a.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector {
    coords: Vec<Exp>,
}

impl ExponentVector {
    pub fn new(coords: Vec<Exp>) -> Self {
        ExponentVector { coords }
    }

    /// Convenience constructor for the two-variable case.
    pub fn xy(x: Exp, y: Exp) -> Self {
        ExponentVector { coords: vec![x, y] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Exp] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> Exp {
        self.coords[i]
    }

    /// Total degree. Widened so the sum cannot overflow.
    pub fn degree(&self) -> u128 {
        self.coords.iter().map(|&e| e as u128).sum()
    }

    /// Componentwise `self <= other`, i.e. x^self divides x^other.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Componentwise sum (monomial product).
    pub fn sum(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        ExponentVector { coords }
    }

    /// Componentwise max(self - other, 0).
    pub fn saturating_sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.saturating_sub(*b))
            .collect();
        ExponentVector { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A monomial ideal given by its minimal monomial generators.
///
/// Construction always minimalizes: the stored generator list is the
/// antichain of componentwise-minimal elements of the input, sorted
/// descending in the lexicographic order with x1 > x2 > ... (for two
/// variables this is the usual listing x^{a_1}, x^{a_2}y^{b_{n-1}}, ...,
/// y^{b_1}).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

/// Antichain of componentwise-minimal elements of `raw`.
fn minimal_elements(mut raw: Vec<ExponentVector>) -> Vec<ExponentVector> {
    raw.sort();
    raw.dedup();
    let mut keep: Vec<ExponentVector> = Vec::with_capacity(raw.len());
    'outer: for v in &raw {
        for u in &raw {
            if u != v && u.divides(v) {
                continue 'outer;
            }
        }
        keep.push(v.clone());
    }
    keep
}

impl MonomialIdeal {
    /// Minimalize `raw` and build the ideal it generates.
    pub fn new(dim: usize, raw: Vec<ExponentVector>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for v in &raw {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
        }
        let mut gens = minimal_elements(raw);
        // descending lex with x1 > x2 > ...
        gens.sort_by(|a, b| b.cmp(a));
        Ok(MonomialIdeal { dim, gens })
    }

    /// Two-variable ideal from (x-exponent, y-exponent) pairs.
    pub fn from_pairs(pairs: &[(Exp, Exp)]) -> Result<Self> {
        Self::new(2, pairs.iter().map(|&(x, y)| ExponentVector::xy(x, y)).collect())
    }

    /// The unit ideal (1) in `dim` variables. Permitted as a value (it shows
    /// up as the trivial factor of a tight factorization) but rejected by
    /// the staircase form.
    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { dim, gens: vec![ExponentVector::new(vec![0; dim])] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    /// True iff x^a lies in the ideal.
    pub fn contains(&self, a: &ExponentVector) -> Result<bool> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.dim() });
        }
        Ok(self.gens.iter().any(|g| g.divides(a)))
    }

    /// Containment of ideals: every generator of `self` lies in `other`.
    pub fn is_subideal_of(&self, other: &Self) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: other.dim, found: self.dim });
        }
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Product ideal: minimalized pairwise sums of generators.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                prods.push(g.sum(h));
            }
        }
        Self::new(self.dim, prods)
    }

    /// m-th power by iterated multiplication, m >= 1.
    pub fn power(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Colon by a monomial: (I : x^m), with generators max(g - m, 0).
    pub fn colon_monomial(&self, m: &ExponentVector) -> Result<Self> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim() });
        }
        Self::new(self.dim, self.gens.iter().map(|g| g.saturating_sub(m)).collect())
    }

    /// Minimum total degree of a generator (the order of the ideal).
    pub fn order(&self) -> u128 {
        self.gens.iter().map(|g| g.degree()).min().unwrap()
    }

    /// A zero-dimensional (m-primary) monomial ideal contains a pure power
    /// of every variable. Returns the index of a variable with no pure
    /// power on failure.
    pub fn check_zero_dimensional(&self) -> Result<()> {
        if self.is_unit() {
            return Ok(());
        }
        for i in 0..self.dim {
            let has_pure = self
                .gens
                .iter()
                .any(|g| g.coords().iter().enumerate().all(|(j, &e)| j == i || e == 0));
            if !has_pure {
                return Err(Error::NotZeroDimensional { missing: i });
            }
        }
        Ok(())
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.check_zero_dimensional().is_ok()
    }

    /// Componentwise maximum of the generators (corner of the bounding box).
    pub fn generator_bound(&self) -> ExponentVector {
        let mut maxes = vec![0; self.dim];
        for g in &self.gens {
            for (m, &e) in maxes.iter_mut().zip(g.coords()) {
                *m = (*m).max(e);
            }
        }
        ExponentVector::new(maxes)
    }

    /// Staircase normal form for zero-dimensional ideals in two variables.
    pub fn to_staircase(&self) -> Result<StaircaseIdeal2> {
        if self.dim != 2 {
            return Err(Error::NotTwoVariables(self.dim));
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        self.check_zero_dimensional()?;
        // gens are sorted descending in x, so ascending in y; the pure
        // x-power comes first and the pure y-power last.
        let a: Vec<Exp> = self.gens.iter().map(|g| g.get(0)).collect();
        let mut b: Vec<Exp> = self.gens.iter().map(|g| g.get(1)).collect();
        b.reverse();
        StaircaseIdeal2::new(a, b)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::format_ideal(self))
    }
}

/// The paper's two-variable normal form: strictly decreasing exponent
/// sequences a_1 > ... > a_n = 0 and b_1 > ... > b_n = 0, with generator i
/// equal to x^{a_i} y^{b_{n-i+1}}.
///
/// Index conventions, in one place (paper indices are 1-based):
///   - generator i (1-based) pairs `a[i-1]` with `b[n-i]` (0-based storage);
///   - `a_gap(i) = a_i - a_{i+1}` for 1 <= i <= n-1;
///   - `b_gap(i) = b_{n-i} - b_{n-i+1}` is the i-th gap counted from the
///     bottom of the staircase, so `b_gap(1) = b_{n-1} - b_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StaircaseIdeal2 {
    a: Vec<Exp>,
    b: Vec<Exp>,
}

impl StaircaseIdeal2 {
    pub fn new(a: Vec<Exp>, b: Vec<Exp>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidStaircase(format!(
                "sequence lengths differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        let n = a.len();
        if n < 2 {
            return Err(Error::InvalidStaircase("need at least two generators".into()));
        }
        for (name, s) in [("a", &a), ("b", &b)] {
            if *s.last().unwrap() != 0 {
                return Err(Error::InvalidStaircase(format!("{name} must end at 0")));
            }
            if !s.windows(2).all(|w| w[0] > w[1]) {
                return Err(Error::InvalidStaircase(format!(
                    "{name} must be strictly decreasing"
                )));
            }
        }
        Ok(StaircaseIdeal2 { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Exp] {
        &self.a
    }

    pub fn b(&self) -> &[Exp] {
        &self.b
    }

    /// a_i with the paper's 1-based index.
    pub fn a_at(&self, i: usize) -> Exp {
        self.a[i - 1]
    }

    /// b_j with the paper's 1-based index.
    pub fn b_at(&self, j: usize) -> Exp {
        self.b[j - 1]
    }

    /// a_i - a_{i+1}, for 1 <= i <= n-1.
    pub fn a_gap(&self, i: usize) -> Exp {
        self.a[i - 1] - self.a[i]
    }

    /// b_{n-i} - b_{n-i+1}, the i-th gap from the bottom, 1 <= i <= n-1.
    pub fn b_gap(&self, i: usize) -> Exp {
        let n = self.n();
        self.b[n - i - 1] - self.b[n - i]
    }

    /// Generator i (1-based): the exponent pair (a_i, b_{n-i+1}).
    pub fn generator(&self, i: usize) -> ExponentVector {
        let n = self.n();
        ExponentVector::xy(self.a[i - 1], self.b[n - i])
    }

    pub fn generators(&self) -> Vec<ExponentVector> {
        (1..=self.n()).map(|i| self.generator(i)).collect()
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(2, self.generators()).expect("staircase generators form an antichain")
    }
}

impl fmt::Display for StaircaseIdeal2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ideal())
    }
}
