//! Rees algebras of staircase ideals: the bidiagonal syzygy matrix, its
//! content and minors, the Jacobian dual, the expected-equations tests, the
//! defining ideal by elimination and by colon, the Hilbert function of the
//! special fiber, and a randomized reduction-number probe.

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, dim_of_monomial_ideal, eliminate, ideal_colon_ideal, GroebnerBasis,
    Limits,
};
use crate::ideal::{Exp, ExponentVector, MonomialIdeal, StaircaseIdeal2};
use crate::poly::{Mono, Polynomial, Ring, TermOrder};
use num::{BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A matrix entry: zero or a signed monomial in x and y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedMonomial {
    pub negative: bool,
    pub x: Exp,
    pub y: Exp,
}

/// Matrix with signed-monomial entries; the syzygy instance is the
/// n x (n-1) lower bidiagonal of the staircase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Option<SignedMonomial>>>,
}

impl MonomialMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<SignedMonomial> {
        self.entries[i][j]
    }

    /// Entry as a polynomial in the first two variables of `ring`.
    fn entry_poly(&self, ring_nvars: usize, i: usize, j: usize) -> Polynomial {
        match self.entries[i][j] {
            None => Polynomial::zero(ring_nvars),
            Some(sm) => {
                let mut mono = vec![0; ring_nvars];
                mono[0] = sm.x;
                mono[1] = sm.y;
                let c = if sm.negative {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                Polynomial::monomial(ring_nvars, mono, c)
            }
        }
    }
}

/// The n x (n-1) syzygy matrix of the staircase generators: column j holds
/// y^{b_{n-j}-b_{n-j+1}} at row j and -x^{a_j-a_{j+1}} at row j+1.
pub fn syzygy_matrix(s: &StaircaseIdeal2) -> MonomialMatrix {
    let n = s.n();
    let mut entries = vec![vec![None; n - 1]; n];
    for j in 1..n {
        entries[j - 1][j - 1] = Some(SignedMonomial { negative: false, x: 0, y: s.b_gap(j) });
        entries[j][j - 1] = Some(SignedMonomial { negative: true, x: s.a_gap(j), y: 0 });
    }
    let m = MonomialMatrix { rows: n, cols: n - 1, entries };
    debug_assert!(syzygy_product_is_zero(s, &m));
    m
}

/// [x^{a_1}, ..., y^{b_1}] . phi = 0, column by column.
pub fn syzygy_product_is_zero(s: &StaircaseIdeal2, m: &MonomialMatrix) -> bool {
    let gens = s.generators();
    (0..m.cols).all(|j| {
        let mut acc = Polynomial::zero(2);
        for (i, g) in gens.iter().enumerate() {
            let gp = Polynomial::monomial(2, vec![g.get(0), g.get(1)], BigRational::one());
            acc = acc.add(&gp.mul(&m.entry_poly(2, i, j)));
        }
        acc.is_zero()
    })
}

/// Exponent pair (r, s) with I_1(phi) = (x^r, y^s): the minimal gaps of the
/// two staircase sequences.
pub fn content_ideal(m: &MonomialMatrix) -> (Exp, Exp) {
    let mut r = Exp::MAX;
    let mut s = Exp::MAX;
    for row in &m.entries {
        for e in row.iter().flatten() {
            if e.x > 0 {
                r = r.min(e.x);
            }
            if e.y > 0 {
                s = s.min(e.y);
            }
        }
    }
    (r, s)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

fn determinant(mat: &[Vec<Polynomial>]) -> Polynomial {
    let n = mat.len();
    if n == 0 {
        return Polynomial::one(2);
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut det = Polynomial::zero(mat[0][0].nvars());
    for (i, row) in mat.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = mat
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let cofactor = row[0].mul(&determinant(&minor));
        det = if i % 2 == 0 { det.add(&cofactor) } else { det.sub(&cofactor) };
    }
    det
}

/// Ideal generated by the monomials of all k x k minors.
pub fn minors(m: &MonomialMatrix, k: usize) -> Result<MonomialIdeal> {
    if k == 0 {
        return Ok(MonomialIdeal::unit(2));
    }
    if k > m.rows.min(m.cols) {
        return Err(Error::DimensionMismatch { expected: m.rows.min(m.cols), found: k });
    }
    let mut monomials: Vec<ExponentVector> = Vec::new();
    for rows in combinations(m.rows, k) {
        for cols in combinations(m.cols, k) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m.entry_poly(2, i, j)).collect())
                .collect();
            let det = determinant(&sub);
            for mono in det.monomials() {
                monomials.push(ExponentVector::new(mono));
            }
        }
    }
    if monomials.is_empty() {
        return Err(Error::Internal("all minors vanish".into()));
    }
    MonomialIdeal::new(2, monomials)
}

/// The Jacobian dual B with T . phi = [x^r, y^s] . B, and its reduction
/// B_0 modulo (x, y). Entries live in k[x, y, T_1..T_n]; T_j is variable
/// j + 1 of the ring.
#[derive(Clone, Debug)]
pub struct JacobianDual {
    pub content: (Exp, Exp),
    pub ring: Ring,
    pub b: [Vec<Polynomial>; 2],
    pub b0: [Vec<Polynomial>; 2],
}

fn t_var(ring: &Ring, j: usize) -> Polynomial {
    ring.var(j + 1)
}

pub fn jacobian_dual(s: &StaircaseIdeal2) -> Result<JacobianDual> {
    let n = s.n();
    let phi = syzygy_matrix(s);
    let (r, sc) = content_ideal(&phi);
    let ring = Ring::rees(n);
    let nv = ring.nvars();
    let mut top = Vec::with_capacity(n - 1);
    let mut bottom = Vec::with_capacity(n - 1);
    let mut top0 = Vec::with_capacity(n - 1);
    let mut bottom0 = Vec::with_capacity(n - 1);
    for j in 1..n {
        let ax = s.a_gap(j);
        let by = s.b_gap(j);
        if ax < r || by < sc {
            return Err(Error::Internal(format!(
                "column {j} entry not divisible by the content power"
            )));
        }
        // column j of T.phi is T_j y^{b_gap} - T_{j+1} x^{a_gap}
        let mut xm = vec![0; nv];
        xm[0] = ax - r;
        let t_next = t_var(&ring, j + 1).neg();
        top.push(t_next.mul(&Polynomial::monomial(nv, xm, BigRational::one())));
        let mut ym = vec![0; nv];
        ym[1] = by - sc;
        let t_cur = t_var(&ring, j);
        bottom.push(t_cur.mul(&Polynomial::monomial(nv, ym, BigRational::one())));
        top0.push(if ax == r { t_var(&ring, j + 1).neg() } else { Polynomial::zero(nv) });
        bottom0.push(if by == sc { t_var(&ring, j) } else { Polynomial::zero(nv) });
    }
    let dual = JacobianDual {
        content: (r, sc),
        ring,
        b: [top, bottom],
        b0: [top0, bottom0],
    };
    debug_assert!(jacobian_identity_holds(s, &dual));
    Ok(dual)
}

/// T . phi = [x^r, y^s] . B as a polynomial identity, column by column.
pub fn jacobian_identity_holds(s: &StaircaseIdeal2, dual: &JacobianDual) -> bool {
    let n = s.n();
    let nv = dual.ring.nvars();
    let (r, sc) = dual.content;
    let phi = syzygy_matrix(s);
    let mut xr = vec![0; nv];
    xr[0] = r;
    let xr = Polynomial::monomial(nv, xr, BigRational::one());
    let mut ys = vec![0; nv];
    ys[1] = sc;
    let ys = Polynomial::monomial(nv, ys, BigRational::one());
    (0..n - 1).all(|j| {
        let mut col = Polynomial::zero(nv);
        for i in 0..n {
            col = col.add(&t_var(&dual.ring, i + 1).mul(&phi.entry_poly(nv, i, j)));
        }
        let rhs = xr.mul(&dual.b[0][j]).add(&ys.mul(&dual.b[1][j]));
        col == rhs
    })
}

/// The n-1 linear equations T . phi in k[x, y, T].
pub fn linear_forms(s: &StaircaseIdeal2) -> Vec<Polynomial> {
    let n = s.n();
    let ring = Ring::rees(n);
    let nv = ring.nvars();
    let phi = syzygy_matrix(s);
    (0..n - 1)
        .map(|j| {
            let mut col = Polynomial::zero(nv);
            for i in 0..n {
                col = col.add(&t_var(&ring, i + 1).mul(&phi.entry_poly(nv, i, j)));
            }
            col
        })
        .collect()
}

/// The raw 2x2 determinants of B(phi), unreduced; exact zeros are dropped.
pub fn jacobian_quadrics(dual: &JacobianDual) -> Vec<Polynomial> {
    let cols = dual.b[0].len();
    let mut out = Vec::new();
    for p in 0..cols {
        for q in p + 1..cols {
            let det = dual.b[0][p]
                .mul(&dual.b[1][q])
                .sub(&dual.b[0][q].mul(&dual.b[1][p]));
            if !det.is_zero() {
                out.push(det);
            }
        }
    }
    out
}

/// Both expected-equations tests: the minors identity, and the height of
/// I_2(B_0) in k[T]. The height route presumes a Cohen-Macaulay Rees
/// algebra; `cm_verified` records whether the caller established that.
#[derive(Clone, Debug)]
pub struct ExpectedEquations {
    pub via_minors: bool,
    pub minors_ideal: MonomialIdeal,
    pub content_power: MonomialIdeal,
    pub via_height: bool,
    pub height: usize,
    pub cm_hypothesis_verified: bool,
}

pub fn expected_equations_check(
    s: &StaircaseIdeal2,
    cm_verified: bool,
) -> Result<ExpectedEquations> {
    let n = s.n();
    let phi = syzygy_matrix(s);
    let (r, sc) = content_ideal(&phi);
    let content = MonomialIdeal::from_pairs(&[(r, 0), (0, sc)])?;
    let (minors_ideal, content_power) = if n == 2 {
        (MonomialIdeal::unit(2), MonomialIdeal::unit(2))
    } else {
        (minors(&phi, n - 2)?, content.power((n - 2) as u32)?)
    };
    let via_minors = minors_ideal == content_power;

    let dual = jacobian_dual(s)?;
    let height = n - dim_of_b0_quotient(&dual, n)?;
    let via_height = height == n.saturating_sub(2);
    Ok(ExpectedEquations {
        via_minors,
        minors_ideal,
        content_power,
        via_height,
        height,
        cm_hypothesis_verified: cm_verified,
    })
}

/// Krull dimension of k[T_1..T_n] / I_2(B_0). The entries of B_0 are
/// k-linear in T, so its minors restrict to k[T]; the dimension comes from
/// the initial ideal of a Groebner basis there.
fn dim_of_b0_quotient(dual: &JacobianDual, n: usize) -> Result<usize> {
    let cols = dual.b0[0].len();
    let mut gens: Vec<Polynomial> = Vec::new();
    for p in 0..cols {
        for q in p + 1..cols {
            let det = dual.b0[0][p]
                .mul(&dual.b0[1][q])
                .sub(&dual.b0[0][q].mul(&dual.b0[1][p]));
            if det.is_zero() {
                continue;
            }
            gens.push(Polynomial::from_terms(
                n,
                det.terms().map(|(m, c)| (m[2..].to_vec(), c.clone())).collect(),
            ));
        }
    }
    if gens.is_empty() {
        return Ok(n); // zero ideal
    }
    let gb = buchberger(&gens, TermOrder::DegRevLex, &Limits::default())?;
    if gb.basis.is_empty() {
        return Ok(n);
    }
    let leads: Vec<Mono> = gb
        .basis
        .iter()
        .map(|g| g.leading_term(TermOrder::DegRevLex).unwrap().0.clone())
        .collect();
    dim_of_monomial_ideal(&leads, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReesRoute {
    /// (T . phi) : I, valid when the Rees algebra is Cohen-Macaulay.
    Colon,
    /// Eliminate t from (T_i - f_i t); always valid.
    Elimination,
}

/// Reduced Groebner basis of the defining ideal of R[It] in
/// k[x, y, T_1..T_n] under degrevlex.
pub fn rees_ideal(
    s: &StaircaseIdeal2,
    route: ReesRoute,
    limits: &Limits,
) -> Result<GroebnerBasis> {
    let n = s.n();
    let gens = s.generators();
    match route {
        ReesRoute::Elimination => {
            // ring (t; x, y, T_1..T_n), block order eliminating t
            let nv = n + 3;
            let mut sys: Vec<Polynomial> = Vec::with_capacity(n);
            for (i, g) in gens.iter().enumerate() {
                let mut tm = vec![0; nv];
                tm[0] = 1;
                tm[1] = g.get(0);
                tm[2] = g.get(1);
                let mut ti = vec![0; nv];
                ti[3 + i] = 1;
                sys.push(
                    Polynomial::monomial(nv, ti, BigRational::one())
                        .sub(&Polynomial::monomial(nv, tm, BigRational::one())),
                );
            }
            let eliminated = eliminate(&sys, 1, limits)?;
            buchberger(&eliminated, TermOrder::DegRevLex, limits)
        }
        ReesRoute::Colon => {
            let q1 = linear_forms(s);
            let nv = n + 2;
            let i_gens: Vec<Polynomial> = gens
                .iter()
                .map(|g| {
                    let mut m = vec![0; nv];
                    m[0] = g.get(0);
                    m[1] = g.get(1);
                    Polynomial::monomial(nv, m, BigRational::one())
                })
                .collect();
            let colon = ideal_colon_ideal(&q1, &i_gens, limits)?;
            buchberger(&colon, TermOrder::DegRevLex, limits)
        }
    }
}

/// Minimal generator counts of the powers: mu(F_j) = mu(I^j) for the
/// special fiber F. Index j of the result is mu(F_j), starting at j = 0.
pub fn fiber_hilbert(s: &StaircaseIdeal2, jmax: u32) -> Result<Vec<usize>> {
    let ideal = s.to_ideal();
    let mut out = vec![1usize];
    let mut power = MonomialIdeal::unit(2);
    for _ in 1..=jmax {
        power = power.multiply(&ideal)?;
        out.push(power.num_gens());
    }
    Ok(out)
}

/// The value j(n-1) + 1 the fiber of an m-full ideal must attain.
pub fn expected_fiber_mu(n: usize, j: u32) -> usize {
    j as usize * (n - 1) + 1
}

/// Verdict of the reduction-number probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// I^2 = J I exhibited for a two-generated J; certified.
    AtMostOne { trial: usize, witness: String },
    /// Every trial failed; probabilistic, with the trial metadata.
    AtLeastTwo { trials: usize, coeff_lo: i64, coeff_hi: i64 },
}

const COEFF_LO: i64 = 1;
const COEFF_HI: i64 = 9;

/// Does I^2 = J I hold after localizing at (x, y)? By Nakayama this is
/// I^2 <= J I + (x, y) I^2: the quotient I^2 / J I vanishes locally at the
/// origin iff multiplication by the maximal ideal is onto. A plain global
/// Groebner membership test would be too strong here, because random f, g
/// share zeros away from the origin that obstruct the global identity.
fn is_local_reduction(
    ji_gens: &[Polynomial],
    i2: &MonomialIdeal,
    limits: &Limits,
) -> Result<bool> {
    let maximal = MonomialIdeal::from_pairs(&[(1, 0), (0, 1)])?;
    let m_i2 = i2.multiply(&maximal)?;
    let mut gens = ji_gens.to_vec();
    for g in m_i2.gens() {
        gens.push(Polynomial::monomial(2, vec![g.get(0), g.get(1)], BigRational::one()));
    }
    let gb = buchberger(&gens, TermOrder::DegRevLex, limits)?;
    for p in i2.gens() {
        let prod = Polynomial::monomial(2, vec![p.get(0), p.get(1)], BigRational::one());
        if !gb.contains(&prod) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Look for a two-generated reduction J with I^2 = J I in the local ring
/// at (x, y). Trial 0 tries the pure powers (x^{a_1}, y^{b_1})
/// combinatorially; the remaining trials draw random coefficient
/// combinations of the generators, deterministic from the seed, and
/// certify the local identity through colon ideals.
pub fn reduction_number_probe(
    s: &StaircaseIdeal2,
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<ProbeVerdict> {
    let ideal = s.to_ideal();
    let gens = s.generators();
    let n = gens.len();
    let i2 = ideal.power(2)?;

    // trial 0: monomial reduction by the pure powers
    let xa = ExponentVector::xy(s.a_at(1), 0);
    let yb = ExponentVector::xy(0, s.b_at(1));
    let xa_i = ideal.multiply(&MonomialIdeal::new(2, vec![xa])?)?;
    let yb_i = ideal.multiply(&MonomialIdeal::new(2, vec![yb])?)?;
    let monomial_reduction_works = {
        let mut ok = true;
        for g in i2.gens() {
            if !(xa_i.contains(g)? || yb_i.contains(g)?) {
                ok = false;
                break;
            }
        }
        ok
    };
    if monomial_reduction_works {
        return Ok(ProbeVerdict::AtMostOne {
            trial: 0,
            witness: format!("(x^{}, y^{})", s.a_at(1), s.b_at(1)),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen_polys: Vec<Polynomial> = gens
        .iter()
        .map(|g| Polynomial::monomial(2, vec![g.get(0), g.get(1)], BigRational::one()))
        .collect();
    for trial in 1..=trials {
        let draw = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            (0..n).map(|_| rng.gen_range(COEFF_LO..=COEFF_HI)).collect()
        };
        let cf = draw(&mut rng);
        let cg = draw(&mut rng);
        let combine = |coeffs: &[i64]| -> Polynomial {
            let mut p = Polynomial::zero(2);
            for (c, g) in coeffs.iter().zip(&gen_polys) {
                p = p.add(&g.scale(&crate::fm::rat(*c)));
            }
            p
        };
        let f = combine(&cf);
        let g = combine(&cg);
        let mut ji_gens: Vec<Polynomial> = Vec::with_capacity(2 * n);
        for gp in &gen_polys {
            ji_gens.push(f.mul(gp));
            ji_gens.push(g.mul(gp));
        }
        if is_local_reduction(&ji_gens, &i2, limits)? {
            return Ok(ProbeVerdict::AtMostOne {
                trial,
                witness: format!(
                    "coefficients {cf:?} and {cg:?} on the generators (identity local at (x, y))"
                ),
            });
        }
    }
    Ok(ProbeVerdict::AtLeastTwo { trials, coeff_lo: COEFF_LO, coeff_hi: COEFF_HI })
}

/// Everything the module computes about one staircase, bundled.
#[derive(Clone, Debug)]
pub struct ReesPresentation {
    pub staircase: StaircaseIdeal2,
    pub syzygy: MonomialMatrix,
    pub dual: JacobianDual,
    pub linear_forms: Vec<Polynomial>,
    pub quadrics: Vec<Polynomial>,
    pub expected: ExpectedEquations,
    pub reduction: ProbeVerdict,
    pub fiber_mu: Vec<usize>,
    pub full_ideal: GroebnerBasis,
    pub routes_agree: Option<bool>,
}

#[derive(Clone, Copy, Debug)]
pub struct ReesOptions {
    pub trials: usize,
    pub seed: u64,
    pub fiber_jmax: u32,
    /// Also run the colon route and compare with elimination.
    pub compare_routes: bool,
    pub limits: Limits,
}

impl Default for ReesOptions {
    fn default() -> Self {
        ReesOptions {
            trials: 5,
            seed: 7,
            fiber_jmax: 4,
            compare_routes: true,
            limits: Limits::default(),
        }
    }
}

pub fn presentation(s: &StaircaseIdeal2, opts: &ReesOptions) -> Result<ReesPresentation> {
    let syzygy = syzygy_matrix(s);
    let dual = jacobian_dual(s)?;
    let quadrics = jacobian_quadrics(&dual);
    let reduction = reduction_number_probe(s, opts.trials, opts.seed, &opts.limits)?;
    let cm_verified = matches!(reduction, ProbeVerdict::AtMostOne { .. });
    let expected = expected_equations_check(s, cm_verified)?;
    let fiber_mu = fiber_hilbert(s, opts.fiber_jmax)?;
    let full_ideal = rees_ideal(s, ReesRoute::Elimination, &opts.limits)?;
    let routes_agree = if opts.compare_routes {
        let colon = rees_ideal(s, ReesRoute::Colon, &opts.limits)?;
        Some(colon == full_ideal)
    } else {
        None
    };
    Ok(ReesPresentation {
        staircase: s.clone(),
        syzygy,
        dual,
        linear_forms: linear_forms(s),
        quadrics,
        expected,
        reduction,
        fiber_mu,
        full_ideal,
        routes_agree,
    })
}
