use clap::{Parser, Subcommand};
use monoideal::error::Error;
use monoideal::fullness;
use monoideal::groebner::Limits;
use monoideal::ideal::{Exp, MonomialIdeal, StaircaseIdeal2};
use monoideal::normality;
use monoideal::parse::{format_ideal, parse_ideal};
use monoideal::polyhedra;
use monoideal::rees;
use monoideal::report::{
    to_canonical_json, ClassifyView, IdealView, IrpView, MFullView, PickView, Report, ReesView,
    SuiteView, SCHEMA_VERSION,
};
use rayon::prelude::*;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact computations with zero-dimensional monomial ideals in two
/// variables: closures, m-fullness, normality, and Rees algebra equations.
#[derive(Parser)]
#[command(name = "monoideal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a canonical JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Power depth for normality checks in three or more variables
    #[arg(long, global = true, default_value_t = 3)]
    power_bound: u32,

    /// Box bound per coordinate for the integer rounding check
    #[arg(long, global = true, default_value_t = 8)]
    wbox: u64,

    /// Seed for the reduction-number probe
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Trials for the reduction-number probe
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,

    /// Groebner basis size ceiling
    #[arg(long, global = true, default_value_t = 4000)]
    max_basis: usize,

    /// Groebner degree ceiling
    #[arg(long, global = true, default_value_t = 400)]
    max_degree: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Integral closure and m-full closure of an ideal
    Closure { ideal: String },
    /// m-fullness verdict and tight factorization
    Mfull { ideal: String },
    /// Normality decision with the necessary and sufficient suites
    Normal { ideal: String },
    /// Rees algebra presentation: syzygies, Jacobian dual, equations
    Rees { ideal: String },
    /// Pick's identity on the staircase polygon and its point triples
    Pick { ideal: String },
    /// Integer rounding property desk check over a box
    Irp { ideal: String },
    /// Full classification with the consistency matrix
    Classify { ideal: String },
    /// Classify every staircase with at most n generators and exponents
    /// bounded by emax; exit 2 if any consistency rule fails
    Scan {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        emax: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, report: &Report<T>, human: String) -> Result<(), Error> {
    let text = if cli.json { to_canonical_json(report)? } else { human };
    match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| Error::Internal(format!("writing {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn staircase_of(text: &str) -> Result<(MonomialIdeal, StaircaseIdeal2), Error> {
    let ideal = parse_ideal(text)?;
    let s = ideal.to_staircase()?;
    Ok((ideal, s))
}

fn limits(cli: &Cli) -> Limits {
    Limits { max_basis: cli.max_basis, max_degree: cli.max_degree }
}

#[derive(Serialize)]
struct ClosureResult {
    integral_closure: IdealView,
    is_integrally_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    m_full_closure: Option<IdealView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_m_full: Option<bool>,
}

#[derive(Serialize)]
struct NormalResult {
    is_normal: bool,
    necessary: SuiteView,
    sufficient: SuiteView,
}

#[derive(Serialize)]
struct NormalHighDimResult {
    normal_up_to_power: u32,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failing_power: Option<u32>,
}

#[derive(Serialize)]
struct MfullResult {
    verdict: MFullView,
    is_x_tight: bool,
    is_y_tight: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight_factor_x: Option<IdealView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight_factor_y: Option<IdealView>,
}

#[derive(Serialize)]
struct PickResult {
    staircase_polygon: Option<PickView>,
    triples: Vec<PickView>,
}

#[derive(Serialize)]
struct ScanResult {
    family_size: usize,
    normal_count: usize,
    m_full_count: usize,
    necessary_pass_but_not_normal: Vec<String>,
    inconsistencies: Vec<String>,
    reports: Vec<ClassifyView>,
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Closure { ideal } => {
            let i = parse_ideal(ideal)?;
            let closure = polyhedra::integral_closure(&i)?;
            let closed = closure == i;
            let (mfc, full) = if i.dim() == 2 {
                let mfc = fullness::m_full_closure(&i)?;
                let full = mfc == i;
                (Some(mfc), Some(full))
            } else {
                (None, None)
            };
            let human = {
                let mut t = format!(
                    "input:            {}\nintegral closure: {}\nintegrally closed: {closed}\n",
                    format_ideal(&i),
                    format_ideal(&closure)
                );
                if let Some(m) = &mfc {
                    t.push_str(&format!(
                        "m-full closure:   {}\nm-full already:    {}\n",
                        format_ideal(m),
                        full.unwrap()
                    ));
                }
                t
            };
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "closure".into(),
                input: format_ideal(&i),
                result: ClosureResult {
                    integral_closure: IdealView::new(&closure),
                    is_integrally_closed: closed,
                    m_full_closure: mfc.as_ref().map(IdealView::new),
                    is_m_full: full,
                },
            };
            emit(cli, &report, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mfull { ideal } => {
            let (i, s) = staircase_of(ideal)?;
            let v = fullness::is_m_full(&s);
            let factors = if v.is_m_full {
                Some(fullness::tight_factorization(&s)?)
            } else {
                None
            };
            let human = format!(
                "input:    {}\nm-full:   {}{}\norder:    {} (n = {})\nx-tight:  {}\ny-tight:  {}\n{}",
                format_ideal(&i),
                v.is_m_full,
                v.k.map(|k| format!(" (k = {k})")).unwrap_or_default(),
                v.witness_order,
                v.n,
                fullness::is_x_tight(&s),
                fullness::is_y_tight(&s),
                match &factors {
                    Some((x, y)) =>
                        format!("factors:  ({}) * ({})\n", format_ideal(x), format_ideal(y)),
                    None => format!("failure:  {}\n", v.failure.clone().unwrap_or_default()),
                }
            );
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "mfull".into(),
                input: format_ideal(&i),
                result: MfullResult {
                    verdict: MFullView::new(&v),
                    is_x_tight: fullness::is_x_tight(&s),
                    is_y_tight: fullness::is_y_tight(&s),
                    tight_factor_x: factors.as_ref().map(|(x, _)| IdealView::new(x)),
                    tight_factor_y: factors.as_ref().map(|(_, y)| IdealView::new(y)),
                },
            };
            emit(cli, &report, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Normal { ideal } => {
            let i = parse_ideal(ideal)?;
            if i.dim() != 2 {
                let (holds, first) = polyhedra::normal_up_to_power(&i, cli.power_bound)?;
                let human = format!(
                    "input: {}\nnormal up to power {}: {holds}{}\n",
                    format_ideal(&i),
                    cli.power_bound,
                    first.map(|m| format!(" (fails at power {m})")).unwrap_or_default()
                );
                let report = Report {
                    schema: SCHEMA_VERSION,
                    command: "normal".into(),
                    input: format_ideal(&i),
                    result: NormalHighDimResult {
                        normal_up_to_power: cli.power_bound,
                        holds,
                        first_failing_power: first,
                    },
                };
                emit(cli, &report, human)?;
                return Ok(ExitCode::SUCCESS);
            }
            let s = i.to_staircase()?;
            let normal = normality::is_normal(&s)?;
            let nec = normality::necessary_conditions(&s);
            let suf = normality::sufficient_conditions(&s);
            let human = format!(
                "input:      {}\nnormal:     {normal}\nnecessary:  {}\nsufficient: {}\n",
                format_ideal(&i),
                if nec.overall { "pass" } else { "fail" },
                if suf.overall { "pass" } else { "not established" },
            );
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "normal".into(),
                input: format_ideal(&i),
                result: NormalResult {
                    is_normal: normal,
                    necessary: SuiteView::new(&nec),
                    sufficient: SuiteView::new(&suf),
                },
            };
            emit(cli, &report, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rees { ideal } => {
            let (i, s) = staircase_of(ideal)?;
            let opts = rees::ReesOptions {
                trials: cli.trials,
                seed: cli.seed,
                fiber_jmax: 4,
                compare_routes: true,
                limits: limits(cli),
            };
            let p = rees::presentation(&s, &opts)?;
            let view = ReesView::new(&p);
            let human = {
                let mut t = format!("input: {}\nsyzygy matrix:\n", format_ideal(&i));
                for row in &view.syzygy_matrix {
                    t.push_str(&format!("  [{}]\n", row.join(", ")));
                }
                t.push_str(&format!(
                    "content ideal: (x^{}, y^{})\nexpected equations (minors): {}\nexpected equations (height): {} (height {})\nreduction probe: {:?}\nfiber mu: {:?}\nGroebner basis of the defining ideal:\n",
                    view.content.0,
                    view.content.1,
                    view.expected_equations.via_minors,
                    view.expected_equations.via_height,
                    view.expected_equations.height,
                    view.reduction_probe.verdict,
                    view.fiber_mu,
                ));
                for g in &view.groebner_basis {
                    t.push_str(&format!("  {g}\n"));
                }
                if let Some(agree) = view.routes_agree {
                    t.push_str(&format!("colon and elimination routes agree: {agree}\n"));
                }
                t
            };
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "rees".into(),
                input: format_ideal(&i),
                result: view,
            };
            emit(cli, &report, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pick { ideal } => {
            let (i, s) = staircase_of(ideal)?;
            let points: Vec<(i128, i128)> = s
                .generators()
                .iter()
                .map(|g| (g.get(0) as i128, g.get(1) as i128))
                .collect();
            let polygon = match polyhedra::LatticePolytope2::from_points(&points) {
                Ok(p) => {
                    let r = polyhedra::pick_check(&p)?;
                    Some(PickView::new(p.vertices(), &r))
                }
                Err(_) => None,
            };
            let mut triples = Vec::new();
            for w in points.windows(3) {
                if let Ok(t) = polyhedra::LatticePolytope2::from_points(w) {
                    let r = polyhedra::pick_check(&t)?;
                    triples.push(PickView::new(t.vertices(), &r));
                }
            }
            let human = {
                let mut t = format!("input: {}\n", format_ideal(&i));
                match &polygon {
                    Some(p) => t.push_str(&format!(
                        "staircase polygon: area {}, interior {}, boundary {}, Pick holds: {}\n",
                        p.area, p.interior_points, p.boundary_points, p.holds
                    )),
                    None => t.push_str("staircase polygon: degenerate (collinear points)\n"),
                }
                for (idx, p) in triples.iter().enumerate() {
                    t.push_str(&format!(
                        "triple {}: area {}, interior {}, boundary {}, holds {}\n",
                        idx + 1,
                        p.area,
                        p.interior_points,
                        p.boundary_points,
                        p.holds
                    ));
                }
                t
            };
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "pick".into(),
                input: format_ideal(&i),
                result: PickResult { staircase_polygon: polygon, triples },
            };
            emit(cli, &report, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Irp { ideal } => {
            let i = parse_ideal(ideal)?;
            let wbox = vec![cli.wbox; i.dim()];
            let verdict = polyhedra::integer_rounding_check(&i, &wbox)?;
            let view = IrpView::new(&wbox, &verdict);
            let human = match &verdict {
                polyhedra::IrpVerdict::HoldsOnBox { wbox } => {
                    format!(
                        "input: {}\ninteger rounding property holds for every w in {:?}\n",
                        format_ideal(&i),
                        wbox
                    )
                }
                polyhedra::IrpVerdict::ViolatedAt { w, ip, lp } => format!(
                    "input: {}\nviolated at w = {:?}: integer optimum {ip}, LP optimum {lp}\n",
                    format_ideal(&i),
                    w
                ),
            };
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "irp".into(),
                input: format_ideal(&i),
                result: view,
            };
            emit(cli, &report, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { ideal } => {
            let (i, s) = staircase_of(ideal)?;
            let c = normality::classify(&s)?;
            let view = ClassifyView::new(&c);
            let human = format!(
                "input:            {}\nm-full:           {}{}\nnormal:           {}\nnecessary suite:  {}\nsufficient suite: {}\nm-full closure:   {}\nintegral closure: {}\nconsistent:       {}\n",
                format_ideal(&i),
                c.m_full.is_m_full,
                c.m_full.k.map(|k| format!(" (k = {k})")).unwrap_or_default(),
                c.normal,
                if c.necessary.overall { "pass" } else { "fail" },
                if c.sufficient.overall { "pass" } else { "not established" },
                format_ideal(&c.m_full_closure),
                format_ideal(&c.integral_closure),
                c.consistent(),
            );
            let consistent = c.consistent();
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "classify".into(),
                input: format_ideal(&i),
                result: view,
            };
            emit(cli, &report, human)?;
            Ok(if consistent { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Scan { n, emax } => {
            let family = staircase_family(*n, *emax);
            let classifications: Vec<_> = family
                .par_iter()
                .map(normality::classify)
                .collect::<Result<Vec<_>, _>>()?;
            let mut witnesses = Vec::new();
            let mut inconsistencies = Vec::new();
            let mut normal_count = 0;
            let mut m_full_count = 0;
            for c in &classifications {
                let name = format_ideal(&c.staircase.to_ideal());
                if c.normal {
                    normal_count += 1;
                }
                if c.m_full.is_m_full {
                    m_full_count += 1;
                }
                if c.necessary.overall && !c.normal {
                    witnesses.push(name.clone());
                }
                if !c.consistent() {
                    inconsistencies.push(name);
                }
            }
            let human = format!(
                "family: staircases with n <= {n}, exponents <= {emax}\nsize: {}\nnormal: {normal_count}\nm-full: {m_full_count}\nnecessary-pass but not normal: {}\ninconsistencies: {}\n",
                classifications.len(),
                witnesses.len(),
                inconsistencies.len(),
            );
            let violation = !inconsistencies.is_empty();
            let report = Report {
                schema: SCHEMA_VERSION,
                command: "scan".into(),
                input: format!("n<={n}, emax<={emax}"),
                result: ScanResult {
                    family_size: classifications.len(),
                    normal_count,
                    m_full_count,
                    necessary_pass_but_not_normal: witnesses,
                    inconsistencies,
                    reports: classifications.iter().map(ClassifyView::new).collect(),
                },
            };
            emit(cli, &report, human)?;
            Ok(if violation { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
    }
}

/// Every staircase with at most `nmax` generators and exponents at most
/// `emax`, in deterministic order.
fn staircase_family(nmax: usize, emax: Exp) -> Vec<StaircaseIdeal2> {
    fn decreasing_sequences(len: usize, emax: Exp) -> Vec<Vec<Exp>> {
        // strictly decreasing, ending at 0, entries <= emax
        let mut out = Vec::new();
        let mut cur = vec![0; len];
        fn rec(pos: usize, len: usize, lo: Exp, emax: Exp, cur: &mut Vec<Exp>, out: &mut Vec<Vec<Exp>>) {
            if pos == 0 {
                out.push(cur.clone());
                return;
            }
            // cur is filled from the back; entries strictly increase toward
            // the front, the last is 0
            for v in (lo + 1)..=emax {
                cur[pos - 1] = v;
                rec(pos - 1, len, v, emax, cur, out);
            }
        }
        cur[len - 1] = 0;
        rec(len - 1, len, 0, emax, &mut cur, &mut out);
        out
    }
    let mut family = Vec::new();
    for n in 2..=nmax {
        let seqs = decreasing_sequences(n, emax);
        for a in &seqs {
            for b in &seqs {
                if let Ok(s) = StaircaseIdeal2::new(a.clone(), b.clone()) {
                    family.push(s);
                }
            }
        }
    }
    family
}
