//! Acceptance suite: every criterion prints one PASS line and pins its
//! expected values and runtime bounds in place.

use monoideal::fullness::{
    colon_by_linear, is_m_full, m_full_closure, tight_factorization,
};
use monoideal::groebner::{buchberger, ideal_colon, Limits};
use monoideal::ideal::{Exp, ExponentVector, MonomialIdeal, StaircaseIdeal2};
use monoideal::normality::{is_normal, necessary_conditions, sufficient_conditions};
use monoideal::parse::parse_ideal;
use monoideal::poly::{Polynomial, TermOrder};
use monoideal::polyhedra::{
    integer_rounding_check, integral_closure, pick_check, IrpVerdict, LatticePolytope2,
};
use monoideal::rees::{
    content_ideal, expected_equations_check, fiber_hilbert, jacobian_dual, jacobian_quadrics,
    linear_forms, minors, reduction_number_probe, rees_ideal, syzygy_matrix, ProbeVerdict,
    ReesRoute, SignedMonomial,
};
use num::{BigRational, One};
use std::time::{Duration, Instant};

fn ideal(pairs: &[(Exp, Exp)]) -> MonomialIdeal {
    MonomialIdeal::from_pairs(pairs).unwrap()
}

fn stair(pairs: &[(Exp, Exp)]) -> StaircaseIdeal2 {
    ideal(pairs).to_staircase().unwrap()
}

fn maximal() -> MonomialIdeal {
    ideal(&[(1, 0), (0, 1)])
}

fn lcg(state: &mut u64) -> u64 {
    *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    *state >> 33
}

/// Random zero-dimensional staircases with n generators, 2 <= n <= nmax,
/// exponents at most emax.
fn random_staircases(count: usize, seed: u64, nmax: usize, emax: u64) -> Vec<StaircaseIdeal2> {
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = 2 + (lcg(&mut state) as usize) % (nmax - 1);
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
        if let Ok(s) = StaircaseIdeal2::new(a, b) {
            out.push(s);
        }
    }
    out
}

/// Random m-full staircases, built from the split-index criterion.
fn random_m_full(count: usize, seed: u64, nmax: usize) -> Vec<StaircaseIdeal2> {
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = 2 + (lcg(&mut state) as usize) % (nmax - 1);
        let k = 1 + (lcg(&mut state) as usize) % n;
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

fn assert_within(elapsed: Duration, bound: Duration, what: &str) {
    assert!(
        elapsed <= bound,
        "{what} took {elapsed:?}, over the {bound:?} budget"
    );
}

#[test]
fn acceptance_01_integral_closure_of_the_cusp() {
    let start = Instant::now();
    let c = integral_closure(&ideal(&[(2, 0), (0, 3)])).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(c, ideal(&[(2, 0), (1, 2), (0, 3)]));
    assert_within(elapsed, Duration::from_millis(10), "criterion 1");
    println!(
        "acceptance 1: PASS - integral closure of (x^2, y^3) is (x^2, x*y^2, y^3) in {elapsed:?}"
    );
}

#[test]
fn acceptance_02_counterexample_full_profile() {
    let start = Instant::now();
    let i = ideal(&[(3, 0), (2, 8), (1, 15), (0, 21)]);
    let s = i.to_staircase().unwrap();
    let verdict = is_m_full(&s);
    let nec = necessary_conditions(&s);
    let normal = is_normal(&s).unwrap();
    let closure = integral_closure(&i).unwrap();
    let elapsed = start.elapsed();
    assert!(verdict.is_m_full);
    assert_eq!(verdict.k, Some(1));
    assert!(nec.overall);
    assert!(!normal);
    assert_eq!(closure, ideal(&[(3, 0), (2, 7), (1, 14), (0, 21)]));
    assert_within(elapsed, Duration::from_millis(100), "criterion 2");
    println!(
        "acceptance 2: PASS - (x^3, x^2y^8, xy^15, y^21) is m-full, passes every necessary \
         condition, is not normal, and closes to (x^3, x^2y^7, xy^14, y^21) in {elapsed:?}"
    );
}

#[test]
fn acceptance_03_m_full_closure_in_one_iteration() {
    let start = Instant::now();
    let i = ideal(&[(3, 0), (0, 5)]);
    let expected = ideal(&[(3, 0), (2, 3), (1, 4), (0, 5)]);
    let closure = m_full_closure(&i).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(closure, expected);
    // one iteration: the first colon already reaches the fixed point
    let one_step = colon_by_linear(&i.multiply(&maximal()).unwrap()).unwrap();
    assert_eq!(one_step, expected);
    assert_eq!(
        colon_by_linear(&one_step.multiply(&maximal()).unwrap()).unwrap(),
        expected
    );
    assert_within(elapsed, Duration::from_millis(10), "criterion 3");
    println!(
        "acceptance 3: PASS - m-full closure of (x^3, y^5) is (x^3, x^2y^3, xy^4, y^5) \
         after one iteration in {elapsed:?}"
    );
}

#[test]
fn acceptance_04_normal_despite_failed_sufficiency() {
    let s = stair(&[(2, 0), (1, 2), (0, 3)]);
    assert!(is_normal(&s).unwrap());
    let suf = sufficient_conditions(&s);
    assert!(!suf.overall, "the convexity hypothesis must fail: 2*2 > 3 + 0");
    // the failed sufficiency check reports the offending values
    let failing = suf
        .checks
        .iter()
        .find(|c| c.condition == "xtight-b-convexity" && c.location == 2)
        .unwrap();
    assert_eq!((failing.lhs, failing.rhs), (Some(4), Some(3)));
    println!(
        "acceptance 4: PASS - (x^2, xy^2, y^3) is normal while the sufficiency suite \
         honestly reports 2*b_2 = 4 > b_1 + b_3 = 3"
    );
}

#[test]
fn acceptance_05_rees_equations_of_the_product_example() {
    let start = Instant::now();
    let s = stair(&[(3, 0), (2, 1), (1, 4), (0, 10)]);
    let lim = Limits::default();

    // syzygy matrix exactly as displayed
    let phi = syzygy_matrix(&s);
    let entry = |neg: bool, x: Exp, y: Exp| Some(SignedMonomial { negative: neg, x, y });
    assert_eq!(phi.entry(0, 0), entry(false, 0, 1));
    assert_eq!(phi.entry(1, 0), entry(true, 1, 0));
    assert_eq!(phi.entry(1, 1), entry(false, 0, 3));
    assert_eq!(phi.entry(2, 1), entry(true, 1, 0));
    assert_eq!(phi.entry(2, 2), entry(false, 0, 6));
    assert_eq!(phi.entry(3, 2), entry(true, 1, 0));
    for (i, j) in [(0, 1), (0, 2), (1, 2), (2, 0), (3, 0), (3, 1)] {
        assert_eq!(phi.entry(i, j), None);
    }

    assert_eq!(content_ideal(&phi), (1, 1));
    let i2 = minors(&phi, 2).unwrap();
    assert_eq!(i2, ideal(&[(2, 0), (1, 1), (0, 4)]));
    assert_ne!(i2, maximal().power(2).unwrap());

    // the defining ideal, both routes, equals (T.phi, I_2(B), T2 T4 - y^3 T3^2)
    let elim = rees_ideal(&s, ReesRoute::Elimination, &lim).unwrap();
    let colon = rees_ideal(&s, ReesRoute::Colon, &lim).unwrap();
    assert_eq!(elim, colon);
    let extra = Polynomial::from_terms(
        6,
        vec![
            (vec![0, 0, 0, 1, 0, 1], BigRational::one()),
            (vec![0, 3, 0, 0, 2, 0], -BigRational::one()),
        ],
    );
    let mut gens = linear_forms(&s);
    gens.extend(jacobian_quadrics(&jacobian_dual(&s).unwrap()));
    gens.push(extra);
    let explicit = buchberger(&gens, TermOrder::DegRevLex, &lim).unwrap();
    assert_eq!(elim, explicit);
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(60), "criterion 5");
    println!(
        "acceptance 5: PASS - Rees ideal of (x^3, x^2y, xy^4, y^10) matches \
         (T.phi, I_2(B(phi)), T2*T4 - y^3*T3^2) by both routes in {elapsed:?}"
    );
}

#[test]
fn acceptance_06_expected_equations_on_the_product_family() {
    let start = Instant::now();
    let mut cases = 0;
    for n in [4usize, 5] {
        // exhaustive non-decreasing exponent tuples b_1 <= ... <= b_{n-1} <= 4
        let mut tuples: Vec<Vec<Exp>> = vec![vec![]];
        for _ in 0..n - 1 {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    let lo = *t.last().unwrap_or(&1);
                    (lo..=4).map(move |b| {
                        let mut t2 = t.clone();
                        t2.push(b);
                        t2
                    })
                })
                .collect();
        }
        for bs in tuples {
            let mut product = MonomialIdeal::unit(2);
            for &b in &bs {
                product = product.multiply(&ideal(&[(1, 0), (0, b)])).unwrap();
            }
            let s = product.to_staircase().unwrap();
            assert_eq!(s.n(), n, "the product family is minimally generated by n monomials");
            assert!(is_normal(&s).unwrap(), "products of complete ideals are complete");
            let all_equal = bs.iter().all(|&b| b == bs[0]);
            let check = expected_equations_check(&s, true).unwrap();
            assert_eq!(
                check.via_minors, all_equal,
                "minors route disagrees on b = {bs:?}"
            );
            assert_eq!(
                check.via_height, all_equal,
                "height route disagrees on b = {bs:?}"
            );
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(cases, 20 + 35);
    assert_within(elapsed, Duration::from_secs(60), "criterion 6");
    println!(
        "acceptance 6: PASS - expected equations hold exactly when all b_i coincide, \
         over {cases} product ideals (n = 4, 5; b_i <= 4) in {elapsed:?}"
    );
}

#[test]
fn acceptance_07_reduction_number_probe() {
    let start = Instant::now();
    let lim = Limits::default();
    let good = stair(&[(3, 0), (2, 1), (1, 4), (0, 10)]);
    match reduction_number_probe(&good, 5, 7, &lim).unwrap() {
        ProbeVerdict::AtMostOne { .. } => {}
        other => panic!("expected a certified reduction, got {other:?}"),
    }
    let bad = stair(&[(11, 0), (8, 1), (6, 2), (5, 3), (1, 4), (0, 10)]);
    match reduction_number_probe(&bad, 5, 7, &lim).unwrap() {
        ProbeVerdict::AtLeastTwo { trials, .. } => assert!(trials >= 5),
        other => panic!("expected every trial to fail, got {other:?}"),
    }
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(120), "criterion 7");
    println!(
        "acceptance 7: PASS - reduction number at most 1 for (x^3, x^2y, xy^4, y^10), \
         at least 2 (5 failed trials) for the six-generator ideal, in {elapsed:?}"
    );
}

#[test]
fn acceptance_08_fiber_hilbert_function_of_m_full_ideals() {
    let staircases = random_m_full(20, 0xfeed, 6);
    assert_eq!(staircases.len(), 20);
    for s in &staircases {
        let n = s.n();
        let mu = fiber_hilbert(s, 5).unwrap();
        for (j, &v) in mu.iter().enumerate() {
            assert_eq!(v, j * (n - 1) + 1, "mu(F_{j}) off the line for {s}");
        }
    }
    println!(
        "acceptance 8: PASS - mu(F_j) = j(n-1) + 1 for j <= 5 on 20 random m-full \
         staircases with n <= 6"
    );
}

#[test]
fn acceptance_09a_closure_operator_laws() {
    let staircases = random_staircases(200, 0xc0ffee, 5, 12);
    for s in &staircases {
        let i = s.to_ideal();
        let bar = integral_closure(&i).unwrap();
        let star = m_full_closure(&i).unwrap();
        // extensive
        assert!(i.is_subideal_of(&bar).unwrap());
        assert!(i.is_subideal_of(&star).unwrap());
        // idempotent
        assert_eq!(integral_closure(&bar).unwrap(), bar);
        assert_eq!(m_full_closure(&star).unwrap(), star);
        // sandwich I <= I* <= Ibar
        assert!(star.is_subideal_of(&bar).unwrap());
        // integrally closed ideals are m-full
        assert!(is_m_full(&bar.to_staircase().unwrap()).is_m_full);
    }
    // monotone, on nested pairs: I and I + one extra generator
    let mut state = 0xbeefu64;
    for s in random_staircases(200, 0xdead, 5, 12) {
        let i = s.to_ideal();
        let extra = ExponentVector::xy(lcg(&mut state) % 12, lcg(&mut state) % 12);
        let mut gens = i.gens().to_vec();
        gens.push(extra);
        let j = MonomialIdeal::new(2, gens).unwrap();
        assert!(i.is_subideal_of(&j).unwrap());
        assert!(integral_closure(&i)
            .unwrap()
            .is_subideal_of(&integral_closure(&j).unwrap())
            .unwrap());
        assert!(m_full_closure(&i)
            .unwrap()
            .is_subideal_of(&m_full_closure(&j).unwrap())
            .unwrap());
    }
    println!(
        "acceptance 9a: PASS - closure-operator laws (extensive, idempotent, monotone) and \
         the sandwich I <= I* <= Ibar on 200 + 200 random cases"
    );
}

#[test]
fn acceptance_09b_implication_chain() {
    let staircases = random_staircases(200, 0x5eed, 5, 10);
    let mut normals = 0;
    for s in &staircases {
        let normal = is_normal(s).unwrap();
        if normal {
            normals += 1;
            assert!(is_m_full(s).is_m_full, "normal but not m-full: {s}");
            assert!(necessary_conditions(s).overall, "normal but necessary fails: {s}");
        }
        if sufficient_conditions(s).overall {
            assert!(normal, "sufficient passes but not normal: {s}");
        }
    }
    assert!(normals > 0, "corpus never hit a normal ideal");
    // sufficiency-heavy corpus: x-tight staircases with convex b-sequence
    let mut state = 0x1234u64;
    let mut sufficient_hits = 0;
    for _ in 0..200 {
        let n = 3 + (lcg(&mut state) as usize) % 3;
        // convex gaps: non-increasing toward the top
        let mut gaps: Vec<Exp> = (0..n - 1).map(|_| 1 + lcg(&mut state) % 4).collect();
        gaps.sort_unstable();
        let mut b = vec![0 as Exp; n];
        for i in (0..n - 1).rev() {
            b[i] = b[i + 1] + gaps[n - 2 - i];
        }
        let a: Vec<Exp> = (0..n as Exp).rev().collect();
        let s = StaircaseIdeal2::new(a, b).unwrap();
        let suf = sufficient_conditions(&s);
        if suf.overall {
            sufficient_hits += 1;
            assert!(is_normal(&s).unwrap(), "sufficient passes but not normal: {s}");
        }
    }
    assert!(sufficient_hits >= 100, "convex corpus should mostly pass sufficiency");
    println!(
        "acceptance 9b: PASS - normal => m-full => necessary-pass and sufficient-pass => \
         normal on 400 cases ({normals} normal, {sufficient_hits} sufficient)"
    );
}

#[test]
fn acceptance_09c_zariski_products_of_closed_ideals() {
    let staircases = random_staircases(200, 0xabba, 4, 9);
    for pair in staircases.chunks(2) {
        if pair.len() < 2 {
            break;
        }
        let a = integral_closure(&pair[0].to_ideal()).unwrap();
        let b = integral_closure(&pair[1].to_ideal()).unwrap();
        let prod = a.multiply(&b).unwrap();
        assert_eq!(
            integral_closure(&prod).unwrap(),
            prod,
            "product of closures not closed: {a} times {b}"
        );
    }
    println!(
        "acceptance 9c: PASS - products of 100 random pairs of integrally closed ideals \
         are integrally closed"
    );
}

#[test]
fn acceptance_09d_pick_identity_on_random_triangles() {
    let mut state = 0x714eu64;
    let mut checked = 0;
    while checked < 200 {
        let mut next = || (lcg(&mut state) % 13) as i128;
        let pts = [(next(), next()), (next(), next()), (next(), next())];
        match LatticePolytope2::from_points(&pts) {
            Ok(t) => {
                let r = pick_check(&t).unwrap();
                assert!(r.holds, "Pick identity fails on {pts:?}: {r:?}");
                checked += 1;
            }
            Err(_) => continue,
        }
    }
    println!(
        "acceptance 9d: PASS - Pick identity against box-scan lattice counts on 200 random \
         lattice triangles in [0,12]^2"
    );
}

/// Monomial content of the Groebner-computed colon J : (x + y).
fn groebner_colon_content(j: &MonomialIdeal) -> MonomialIdeal {
    let lim = Limits::default();
    let gens: Vec<Polynomial> = j
        .gens()
        .iter()
        .map(|g| Polynomial::monomial(2, vec![g.get(0), g.get(1)], BigRational::one()))
        .collect();
    let xpy = Polynomial::from_terms(
        2,
        vec![
            (vec![1, 0], BigRational::one()),
            (vec![0, 1], BigRational::one()),
        ],
    );
    let colon = ideal_colon(&gens, &xpy, &lim).unwrap();
    let gb = buchberger(&colon, TermOrder::DegRevLex, &lim).unwrap();
    let mut monomials = Vec::new();
    for g in &gb.basis {
        for m in g.monomials() {
            monomials.push(ExponentVector::new(m));
        }
    }
    MonomialIdeal::new(2, monomials).unwrap()
}

#[test]
fn acceptance_09e_colon_by_linear_against_groebner() {
    let staircases = random_staircases(100, 0x90eb, 5, 10);
    for s in &staircases {
        let j = s.to_ideal().multiply(&maximal()).unwrap();
        assert_eq!(
            colon_by_linear(&j).unwrap(),
            groebner_colon_content(&j),
            "colon routes disagree on {j}"
        );
    }
    println!(
        "acceptance 9e: PASS - combinatorial colon by (x + y) equals the Groebner colon's \
         monomial content on 100 random zero-dimensional ideals"
    );
}

#[test]
fn acceptance_10_integer_rounding_desk_check() {
    let start = Instant::now();
    let normal_ideals = [
        ideal(&[(2, 0), (1, 2), (0, 3)]),
        ideal(&[(3, 0), (2, 1), (1, 4), (0, 10)]),
        ideal(&[(1, 0), (0, 1)]),
        maximal().power(3).unwrap(),
        ideal(&[(2, 0), (1, 3), (0, 6)]),
    ];
    for i in &normal_ideals {
        assert!(is_normal(&i.to_staircase().unwrap()).unwrap());
        match integer_rounding_check(i, &[8, 8]).unwrap() {
            IrpVerdict::HoldsOnBox { .. } => {}
            IrpVerdict::ViolatedAt { w, ip, lp } =>

                panic!("normal ideal {i} violates rounding at {w:?}: ip {ip}, lp {lp}"),
        }
    }
    let counterexample = ideal(&[(3, 0), (2, 8), (1, 15), (0, 21)]);
    let witness = match integer_rounding_check(&counterexample, &[8, 8]).unwrap() {
        IrpVerdict::ViolatedAt { w, ip, lp } => {
            assert_eq!(BigRational::from_integer((ip as i64).into()) != lp.clone(), true);
            (w, ip, lp)
        }
        IrpVerdict::HoldsOnBox { .. } => {
            panic!("the non-normal ideal must violate integer rounding inside the box")
        }
    };
    let elapsed = start.elapsed();
    assert_within(elapsed, Duration::from_secs(120), "criterion 10");
    println!(
        "acceptance 10: PASS - integer rounding holds on the (8,8) box for five normal \
         ideals; violated for (x^3, x^2y^8, xy^15, y^21) at w = {:?} (integer optimum {}, \
         LP optimum {}) in {elapsed:?}",
        witness.0, witness.1, witness.2
    );
}

#[test]
fn acceptance_cli_grammar_round_trip() {
    // the fixed text grammar drives every subcommand; parse the paper's
    // generator lists and a few errors
    let i = parse_ideal("x^3, x^2*y^8, x*y^15, y^21").unwrap();
    assert_eq!(i.num_gens(), 4);
    assert_eq!(parse_ideal("x, y").unwrap(), maximal());
    assert!(parse_ideal("x^-1").is_err());
    let (x, y) = tight_factorization(&i.to_staircase().unwrap()).unwrap();
    assert_eq!(x.multiply(&y).unwrap(), i);
    println!("acceptance grammar: PASS - ideal text syntax parses the paper's generator lists");
}
