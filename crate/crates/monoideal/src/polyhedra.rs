//! Newton polytopes and polyhedra, integral closures of ideals and their
//! powers, Pick's formula, and the integer rounding desk check.
//!
//! In two variables the Newton polyhedron of a zero-dimensional ideal is
//! carried as its lower-left convex chain and all predicates are exact
//! integer arithmetic; in higher dimension membership goes through exact
//! rational linear feasibility.

use crate::error::{Error, Result};
use crate::fm::{rat, rat_u, IneqSystem, LpOutcome};
use crate::ideal::{Exp, ExponentVector, MonomialIdeal};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Row ceiling for every Fourier-Motzkin run started from this module.
const FM_ROW_CEILING: usize = 200_000;
/// Point ceiling for box enumerations (closures in d >= 3, Pick scans).
const BOX_POINT_CEILING: u128 = 4_000_000;

#[derive(Clone, Debug)]
enum Repr {
    /// Lower-left hull vertices, x strictly increasing, y strictly
    /// decreasing, from the pure y-power to the pure x-power.
    Chain2(Vec<(Exp, Exp)>),
    /// Facet inequalities over the ambient coordinates, from eliminating
    /// the convex-combination multipliers.
    Facets(Vec<(Vec<BigRational>, BigRational)>),
}

/// The polyhedron R^d_{>=0} + conv(v_1, ..., v_q) attached to a monomial
/// ideal with generator exponents v_i.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    dim: usize,
    generators: Vec<ExponentVector>,
    repr: Repr,
}

/// Exact witness that a point lies in a Newton polyhedron: multipliers of a
/// convex combination of the generators plus a non-negative slack.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    pub lambdas: Vec<BigRational>,
    pub slack: Vec<BigRational>,
}

impl MembershipCertificate {
    /// Re-check the certificate from scratch: lambda >= 0, sum lambda = 1,
    /// slack >= 0, and sum(lambda_i v_i) + slack reproduces the point.
    pub fn verify(&self, q: &NewtonPolyhedron, point: &[BigRational]) -> bool {
        if self.lambdas.len() != q.generators.len() || self.slack.len() != q.dim {
            return false;
        }
        if self.lambdas.iter().any(|l| l.is_negative()) {
            return false;
        }
        if self.slack.iter().any(|s| s.is_negative()) {
            return false;
        }
        let total: BigRational = self.lambdas.iter().cloned().sum();
        if !total.is_one() {
            return false;
        }
        for j in 0..q.dim {
            let mut acc = self.slack[j].clone();
            for (l, v) in self.lambdas.iter().zip(&q.generators) {
                acc += l * rat_u(v.get(j));
            }
            if acc != point[j] {
                return false;
            }
        }
        true
    }
}

fn lower_chain(points: &[(Exp, Exp)]) -> Vec<(Exp, Exp)> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut hull: Vec<(Exp, Exp)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            // keep strict left turns only: vertices of the lower hull
            let cross = BigInt::from(a.0 as i128 - o.0 as i128)
                * BigInt::from(p.1 as i128 - o.1 as i128)
                - BigInt::from(a.1 as i128 - o.1 as i128)
                    * BigInt::from(p.0 as i128 - o.0 as i128);
            if cross <= BigInt::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Vertices of the two-variable lower chain, if that form is in use.
    pub fn chain(&self) -> Option<&[(Exp, Exp)]> {
        match &self.repr {
            Repr::Chain2(c) => Some(c),
            Repr::Facets(_) => None,
        }
    }

    /// Smallest integer y with (p, y) in the m-fold dilation, restricted to
    /// p <= m * a_1. Chain form only.
    fn chain_min_y(chain: &[(Exp, Exp)], m: u64, p: u64) -> BigInt {
        let last = *chain.last().unwrap();
        if BigInt::from(p) >= BigInt::from(last.0) * m {
            return BigInt::zero();
        }
        let pb = BigInt::from(p);
        let mb = BigInt::from(m);
        for w in chain.windows(2) {
            let (u, v) = (w[0], w[1]);
            let ux = BigInt::from(u.0) * &mb;
            let vx = BigInt::from(v.0) * &mb;
            if pb < ux || pb > vx {
                continue;
            }
            let d = BigInt::from(v.0) - BigInt::from(u.0);
            let num = BigInt::from(u.1) * &mb * &d
                + (&pb - &ux) * (BigInt::from(v.1) - BigInt::from(u.1));
            // ceil(num / d) with num >= 0, d > 0
            return (&num + &d - BigInt::one()).div_floor(&d);
        }
        // p below the first vertex abscissa cannot happen: the chain starts
        // at the pure y-power with x = 0
        unreachable!("chain does not cover abscissa {p}");
    }

    /// Does the integer point lie in the m-fold dilation m*Q?
    pub fn contains_dilated(&self, a: &ExponentVector, m: u32) -> Result<bool> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.dim() });
        }
        match &self.repr {
            Repr::Chain2(chain) => {
                let min_y = Self::chain_min_y(chain, m as u64, a.get(0));
                Ok(BigInt::from(a.get(1)) >= min_y)
            }
            Repr::Facets(facets) => {
                let mb = rat_u(m as u64);
                for (coeffs, rhs) in facets {
                    let lhs: BigRational = coeffs
                        .iter()
                        .zip(a.coords())
                        .map(|(c, &e)| c * rat_u(e))
                        .sum();
                    if lhs > rhs * &mb {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn contains_integer(&self, a: &ExponentVector) -> Result<bool> {
        self.contains_dilated(a, 1)
    }

    /// Membership of a rational point, with an exact certificate on success.
    pub fn membership(
        &self,
        point: &[BigRational],
    ) -> Result<(bool, Option<MembershipCertificate>)> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        if point.iter().any(|c| c.is_negative()) {
            return Ok((false, None));
        }
        match &self.repr {
            Repr::Chain2(chain) => Ok(self.chain_membership(chain, point)),
            Repr::Facets(_) => self.lambda_membership(point),
        }
    }

    fn gen_index(&self, v: (Exp, Exp)) -> usize {
        self.generators
            .iter()
            .position(|g| g.get(0) == v.0 && g.get(1) == v.1)
            .expect("chain vertices are generators")
    }

    fn chain_membership(
        &self,
        chain: &[(Exp, Exp)],
        point: &[BigRational],
    ) -> (bool, Option<MembershipCertificate>) {
        let (px, py) = (&point[0], &point[1]);
        let q = self.generators.len();
        let last = *chain.last().unwrap();
        if *px >= rat_u(last.0) {
            let mut lambdas = vec![BigRational::zero(); q];
            lambdas[self.gen_index(last)] = BigRational::one();
            let slack = vec![px - rat_u(last.0), py - rat_u(last.1)];
            if slack[1].is_negative() {
                return (false, None);
            }
            return (true, Some(MembershipCertificate { lambdas, slack }));
        }
        for w in chain.windows(2) {
            let (u, v) = (w[0], w[1]);
            if *px < rat_u(u.0) || *px > rat_u(v.0) {
                continue;
            }
            let d = rat_u(v.0) - rat_u(u.0);
            let lv = (px - rat_u(u.0)) / &d;
            let lu = BigRational::one() - &lv;
            let base_y = &lu * rat_u(u.1) + &lv * rat_u(v.1);
            if *py < base_y {
                return (false, None);
            }
            let mut lambdas = vec![BigRational::zero(); q];
            lambdas[self.gen_index(u)] = lu;
            lambdas[self.gen_index(v)] += lv;
            let slack = vec![BigRational::zero(), py - base_y];
            return (true, Some(MembershipCertificate { lambdas, slack }));
        }
        (false, None)
    }

    /// Feasibility of the convex-multiplier system, with point extraction.
    fn lambda_membership(
        &self,
        point: &[BigRational],
    ) -> Result<(bool, Option<MembershipCertificate>)> {
        let q = self.generators.len();
        let mut sys = IneqSystem::new(q);
        sys.nonnegative_all();
        sys.eq(vec![BigRational::one(); q], BigRational::one());
        for j in 0..self.dim {
            let coeffs: Vec<BigRational> =
                self.generators.iter().map(|g| rat_u(g.get(j))).collect();
            sys.le(coeffs, point[j].clone());
        }
        match sys.feasible_point(FM_ROW_CEILING)? {
            None => Ok((false, None)),
            Some(lambdas) => {
                let slack: Vec<BigRational> = (0..self.dim)
                    .map(|j| {
                        let mut s = point[j].clone();
                        for (l, g) in lambdas.iter().zip(&self.generators) {
                            s -= l * rat_u(g.get(j));
                        }
                        s
                    })
                    .collect();
                Ok((true, Some(MembershipCertificate { lambdas, slack })))
            }
        }
    }
}

/// Build the Newton polyhedron of an ideal. Zero-dimensional ideals in two
/// variables get the fast chain form, everything else the facet form.
pub fn newton_polytope(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    let dim = ideal.dim();
    let generators = ideal.gens().to_vec();
    if dim == 2 && ideal.is_zero_dimensional() && !ideal.is_unit() {
        let pts: Vec<(Exp, Exp)> = generators.iter().map(|g| (g.get(0), g.get(1))).collect();
        let chain = lower_chain(&pts);
        return Ok(NewtonPolyhedron { dim, generators, repr: Repr::Chain2(chain) });
    }
    // facet form: eliminate the q multipliers from
    //   lambda >= 0, sum lambda = 1, sum lambda_i v_i[j] <= a_j
    let q = generators.len();
    let mut sys = IneqSystem::new(q + dim);
    for i in 0..q {
        let mut c = vec![BigRational::zero(); q + dim];
        c[i] = rat(-1);
        sys.le(c, BigRational::zero());
    }
    let mut ones = vec![BigRational::zero(); q + dim];
    for c in ones.iter_mut().take(q) {
        *c = BigRational::one();
    }
    sys.eq(ones, BigRational::one());
    for j in 0..dim {
        let mut c = vec![BigRational::zero(); q + dim];
        for (i, g) in generators.iter().enumerate() {
            c[i] = rat_u(g.get(j));
        }
        c[q + j] = rat(-1);
        sys.le(c, BigRational::zero());
    }
    let facets = sys
        .project_prefix(q, FM_ROW_CEILING)?
        .ok_or_else(|| Error::Internal("empty Newton polyhedron".into()))?;
    Ok(NewtonPolyhedron { dim, generators, repr: Repr::Facets(facets) })
}

/// Test membership of a point in m*Q directly from an ideal.
pub fn in_newton_polyhedron(
    q: &NewtonPolyhedron,
    point: &[BigRational],
) -> Result<(bool, Option<MembershipCertificate>)> {
    q.membership(point)
}

/// Minimal generators of the ideal of all lattice points of m*Q, which is
/// the integral closure of I^m.
pub fn power_closure(ideal: &MonomialIdeal, m: u32) -> Result<MonomialIdeal> {
    if m == 0 {
        return Err(Error::ZeroPower);
    }
    ideal.check_zero_dimensional()?;
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let q = newton_polytope(ideal)?;
    let dim = ideal.dim();
    if let Some(chain) = q.chain() {
        // column-by-column: the least lattice point over each abscissa
        let a1 = chain.last().unwrap().0;
        let top = a1.checked_mul(m as u64).expect("exponent overflow");
        let mut gens = Vec::with_capacity(top as usize + 1);
        for p in 0..=top {
            let min_y = NewtonPolyhedron::chain_min_y(chain, m as u64, p);
            let min_y: u64 = min_y.try_into().expect("chain height fits in u64");
            gens.push(ExponentVector::xy(p, min_y));
        }
        return MonomialIdeal::new(2, gens);
    }
    // general dimension: enumerate the bounding box and filter by membership.
    // A minimal generator of the closure has each coordinate at most
    // m * (max of that coordinate over the generators): decrementing a
    // coordinate above the max keeps membership.
    let bound = ideal.generator_bound();
    let limits: Vec<u64> = bound
        .coords()
        .iter()
        .map(|&e| e.checked_mul(m as u64).expect("exponent overflow"))
        .collect();
    let volume: u128 = limits.iter().map(|&b| b as u128 + 1).product();
    if volume > BOX_POINT_CEILING {
        return Err(Error::ResourceExceeded(format!(
            "closure enumeration box has {volume} points (ceiling {BOX_POINT_CEILING})"
        )));
    }
    let mut gens = Vec::new();
    let mut cursor = vec![0u64; dim];
    loop {
        let pt = ExponentVector::new(cursor.clone());
        if q.contains_dilated(&pt, m)? {
            gens.push(pt);
        }
        // odometer
        let mut i = dim;
        loop {
            if i == 0 {
                return MonomialIdeal::new(dim, gens);
            }
            i -= 1;
            if cursor[i] < limits[i] {
                cursor[i] += 1;
                break;
            }
            cursor[i] = 0;
        }
    }
}

/// The integral closure of the ideal itself (m = 1).
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    power_closure(ideal, 1)
}

/// Is the ideal normal up to the given power: closure(I^m) = I^m for all
/// m <= mmax? Returns the first failing power if any. In two variables
/// m = 1 settles normality outright; in higher dimension this is an
/// honest partial check.
pub fn normal_up_to_power(ideal: &MonomialIdeal, mmax: u32) -> Result<(bool, Option<u32>)> {
    for m in 1..=mmax.max(1) {
        if power_closure(ideal, m)? != ideal.power(m)? {
            return Ok((false, Some(m)));
        }
    }
    Ok((true, None))
}

/// An integral polytope in the plane, stored as its hull vertices in
/// counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope2 {
    vertices: Vec<(i128, i128)>,
}

fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> BigInt {
    BigInt::from(a.0 - o.0) * BigInt::from(b.1 - o.1)
        - BigInt::from(a.1 - o.1) * BigInt::from(b.0 - o.0)
}

impl LatticePolytope2 {
    /// Convex hull of the given points; errors unless the hull is honestly
    /// two-dimensional (at least three non-collinear vertices).
    pub fn from_points(points: &[(i128, i128)]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::DegeneratePolytope(format!(
                "{} distinct points",
                pts.len()
            )));
        }
        // monotone chain, strict turns so vertices are extreme points
        let mut lower: Vec<(i128, i128)> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= BigInt::zero()
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(i128, i128)> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= BigInt::zero()
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        let vertices: Vec<(i128, i128)> = lower.into_iter().chain(upper).collect();
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolytope("collinear input".into()));
        }
        Ok(LatticePolytope2 { vertices })
    }

    pub fn vertices(&self) -> &[(i128, i128)] {
        &self.vertices
    }

    /// Shoelace area, exact.
    pub fn area(&self) -> BigRational {
        let mut twice = BigInt::zero();
        let n = self.vertices.len();
        for i in 0..n {
            let (x1, y1) = self.vertices[i];
            let (x2, y2) = self.vertices[(i + 1) % n];
            twice += BigInt::from(x1) * BigInt::from(y2) - BigInt::from(x2) * BigInt::from(y1);
        }
        BigRational::new(twice, BigInt::from(2))
    }

    /// Lattice points on the boundary, via gcd of the edge vectors.
    pub fn boundary_count(&self) -> u128 {
        let n = self.vertices.len();
        let mut count = BigInt::zero();
        for i in 0..n {
            let (x1, y1) = self.vertices[i];
            let (x2, y2) = self.vertices[(i + 1) % n];
            let dx = BigInt::from((x2 - x1).abs());
            let dy = BigInt::from((y2 - y1).abs());
            count += dx.gcd(&dy);
        }
        count.try_into().expect("boundary count fits in u128")
    }

    fn contains_point(&self, p: (i128, i128)) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= BigInt::zero())
    }

    fn strictly_contains_point(&self, p: (i128, i128)) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) > BigInt::zero())
    }

    /// Exhaustive lattice counts over the bounding box: (total, interior).
    pub fn lattice_counts(&self) -> Result<(u128, u128)> {
        let xmin = self.vertices.iter().map(|v| v.0).min().unwrap();
        let xmax = self.vertices.iter().map(|v| v.0).max().unwrap();
        let ymin = self.vertices.iter().map(|v| v.1).min().unwrap();
        let ymax = self.vertices.iter().map(|v| v.1).max().unwrap();
        let volume = ((xmax - xmin + 1) as u128).saturating_mul((ymax - ymin + 1) as u128);
        if volume > BOX_POINT_CEILING {
            return Err(Error::ResourceExceeded(format!(
                "lattice scan box has {volume} points (ceiling {BOX_POINT_CEILING})"
            )));
        }
        let mut total = 0u128;
        let mut interior = 0u128;
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                if self.contains_point((x, y)) {
                    total += 1;
                    if self.strictly_contains_point((x, y)) {
                        interior += 1;
                    }
                }
            }
        }
        Ok((total, interior))
    }
}

/// Outcome of checking Pick's identity on a polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct PickReport {
    pub area: BigRational,
    pub total_points: u128,
    pub boundary_points: u128,
    pub interior_points: u128,
    pub holds: bool,
}

pub fn pick_area(p: &LatticePolytope2) -> BigRational {
    p.area()
}

/// area = total - boundary/2 - 1 = interior + boundary/2 - 1, with the
/// boundary counted by gcds of edge vectors and the other counts by an
/// exhaustive box scan.
pub fn pick_check(p: &LatticePolytope2) -> Result<PickReport> {
    let area = p.area();
    let boundary = p.boundary_count();
    let (total, interior) = p.lattice_counts()?;
    let half_boundary = BigRational::new(BigInt::from(boundary), BigInt::from(2));
    let from_total = BigRational::from_integer(BigInt::from(total)) - &half_boundary - rat(1);
    let from_interior =
        BigRational::from_integer(BigInt::from(interior)) + &half_boundary - rat(1);
    let holds =
        area == from_total && area == from_interior && total == interior + boundary;
    Ok(PickReport { area, total_points: total, boundary_points: boundary, interior_points: interior, holds })
}

/// Result of the integer rounding desk check over a box of right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub enum IrpVerdict {
    /// No violation for any integer w in [0, wbox].
    HoldsOnBox { wbox: Vec<Exp> },
    /// First w (lexicographic scan) where the integer optimum differs from
    /// the floor of the rational LP optimum.
    ViolatedAt { w: Vec<Exp>, ip: u64, lp: BigRational },
}

/// Exhaustive max of sum(y) over integer y >= 0 with sum(y_j v_j) <= w.
fn ip_max(cols: &[&ExponentVector], w: &[u64]) -> u64 {
    fn rec(cols: &[&ExponentVector], j: usize, rem: &mut Vec<u64>, best: &mut u64, picked: u64) {
        if j == cols.len() {
            *best = (*best).max(picked);
            return;
        }
        let col = cols[j];
        let mut ub = u64::MAX;
        for (i, &c) in col.coords().iter().enumerate() {
            if c > 0 {
                ub = ub.min(rem[i] / c);
            }
        }
        debug_assert!(ub < u64::MAX, "zero column would make the program unbounded");
        for y in 0..=ub {
            if y > 0 {
                for (i, &c) in col.coords().iter().enumerate() {
                    rem[i] -= c;
                }
            }
            rec(cols, j + 1, rem, best, picked + y);
        }
        for (i, &c) in col.coords().iter().enumerate() {
            rem[i] += c * ub;
        }
    }
    let mut best = 0;
    let mut rem = w.to_vec();
    rec(cols, 0, &mut rem, &mut best, 0);
    best
}

/// For every integer vector w in [0, wbox], compare the bounded integer
/// program max{<y,1> : Ay <= w, y in N^q} with the floor of its exact LP
/// relaxation; A has the generator exponents as columns. Reports the first
/// violation if one exists. Cost is exhaustive in the box volume times the
/// LP, so wbox must stay desk-sized.
pub fn integer_rounding_check(ideal: &MonomialIdeal, wbox: &[Exp]) -> Result<IrpVerdict> {
    ideal.check_zero_dimensional()?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if wbox.len() != ideal.dim() {
        return Err(Error::DimensionMismatch { expected: ideal.dim(), found: wbox.len() });
    }
    let volume: u128 = wbox.iter().map(|&b| b as u128 + 1).product();
    if volume > BOX_POINT_CEILING {
        return Err(Error::ResourceExceeded(format!(
            "integer rounding box has {volume} right-hand sides (ceiling {BOX_POINT_CEILING})"
        )));
    }
    let cols: Vec<&ExponentVector> = ideal.gens().iter().collect();
    let q = cols.len();
    let dim = ideal.dim();
    let mut w = vec![0u64; dim];
    loop {
        let ip = ip_max(&cols, &w);
        let mut sys = IneqSystem::new(q);
        sys.nonnegative_all();
        for i in 0..dim {
            let coeffs: Vec<BigRational> = cols.iter().map(|c| rat_u(c.get(i))).collect();
            sys.le(coeffs, rat_u(w[i]));
        }
        let lp = match sys.maximize(&vec![BigRational::one(); q], FM_ROW_CEILING)? {
            LpOutcome::Optimal(v) => v,
            LpOutcome::Unbounded => {
                return Err(Error::Internal("bounded program reported unbounded".into()))
            }
            LpOutcome::Infeasible => {
                return Err(Error::Internal("y = 0 is always feasible".into()))
            }
        };
        let floor_lp: BigInt = lp.floor().to_integer();
        if BigInt::from(ip) != floor_lp {
            return Ok(IrpVerdict::ViolatedAt { w, ip, lp });
        }
        // odometer over the box
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(IrpVerdict::HoldsOnBox { wbox: wbox.to_vec() });
            }
            i -= 1;
            if w[i] < wbox[i] {
                w[i] += 1;
                break;
            }
            w[i] = 0;
        }
    }
}
