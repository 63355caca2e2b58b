use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Serialize, Serializer};
use serde_json::Value;

use sprseg::polycore::{bilinear_to_s, normalize_monic};
use sprseg::sprcheck::{spr_numerator, verify_spr};
use sprseg::stability::{hurwitz_test, segment_grid_oracle, segment_stable};
use sprseg::synthesis::{synthesize, verify_certificate, SynthesisOptions, SynthesisResult};
use sprseg::{Error, Poly, Tolerances};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "sprseg",
    version,
    about = "Segment stability and common SPR synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Routh-Hurwitz test of one polynomial (--coeffs).
    CheckStability,
    /// Stability of the segment (1-λ)a + λb (--a, --b).
    CheckSegment,
    /// SPR test of c against every given denominator (--c with --a and/or --b).
    CheckSpr,
    /// Build c with c/a and c/b both SPR and emit a certificate.
    Synthesize,
    /// CSV of Re[c/a] and Re[c/b] on a log-spaced ω grid.
    PlotData(PlotArgs),
}

#[derive(Args)]
struct Common {
    /// Coefficients, highest degree first, e.g. "1,3,3,1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true, alias = "d")]
    a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    c: Option<String>,
    /// JSON object with keys among coeffs, a, b, c (c_final is read as c).
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_pos: f64,
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol_root: f64,
    #[arg(long, global = true, default_value_t = 1e-6)]
    eta: f64,
    #[arg(long, global = true, default_value_t = 200)]
    max_iters: usize,
    /// λ points for the grid cross-check / certificate sweep.
    #[arg(long, global = true, default_value_t = 101)]
    lambda_grid: usize,
    /// Inputs are discrete-time (Schur) polynomials; map them to s first.
    #[arg(long, global = true)]
    discrete: bool,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, default_value_t = 1e-3)]
    omega_min: f64,
    #[arg(long, default_value_t = 1e3)]
    omega_max: f64,
    #[arg(long, default_value_t = 1001)]
    points: usize,
}

/// Usage or numerical-diagnostic failure; exit code 2.
struct Fatal(String);

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = std::result::Result<(String, bool), Fatal>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    let result = run(&cli).and_then(|(doc, holds)| {
        emit(&cli.common.output, &doc)?;
        Ok(holds)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: &Option<PathBuf>, doc: &str) -> Result<(), Fatal> {
    match path {
        Some(p) => fs::write(p, doc).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(doc.as_bytes())
                .map_err(|e| Fatal(format!("stdout: {e}")))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let common = &cli.common;
    let tol = tolerances(common)?;
    let inputs = Inputs::load(common)?;
    match &cli.command {
        Command::CheckStability => check_stability(&inputs, &tol),
        Command::CheckSegment => check_segment(&inputs, common, &tol),
        Command::CheckSpr => check_spr(&inputs, &tol),
        Command::Synthesize => run_synthesize(&inputs, common, &tol),
        Command::PlotData(args) => plot_data(&inputs, common, args, &tol),
    }
}

fn tolerances(common: &Common) -> Result<Tolerances, Fatal> {
    for (name, v) in [
        ("--tol-pos", common.tol_pos),
        ("--tol-root", common.tol_root),
        ("--eta", common.eta),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Fatal(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    Ok(Tolerances {
        pos: common.tol_pos,
        root: common.tol_root,
        ..Tolerances::default()
    })
}

fn parse_coeffs(name: &str, text: &str) -> Result<Vec<f64>, Fatal> {
    let parsed: Result<Vec<f64>, _> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| s.trim().to_string()))
        .collect();
    match parsed {
        Ok(v) => Ok(v),
        Err(bad) => Err(Fatal(format!("{name}: invalid coefficient '{bad}'"))),
    }
}

fn json_coeffs(name: &str, v: &Value) -> Result<Vec<f64>, Fatal> {
    let arr = v
        .as_array()
        .ok_or_else(|| Fatal(format!("{name}: expected an array of numbers")))?;
    arr.iter()
        .map(|x| {
            x.as_f64()
                .ok_or_else(|| Fatal(format!("{name}: non-numeric entry {x}")))
        })
        .collect()
}

fn to_poly(name: &str, c: Vec<f64>) -> Result<Poly, Fatal> {
    if c.is_empty() {
        return Err(Fatal(format!("{name}: empty coefficient list")));
    }
    let p = Poly::try_new(c).map_err(|e| Fatal(format!("{name}: {e}")))?;
    if p.is_zero() {
        return Err(Fatal(format!("{name}: polynomial is identically zero")));
    }
    Ok(p)
}

#[derive(Default)]
struct Inputs {
    coeffs: Option<Poly>,
    a: Option<Poly>,
    b: Option<Poly>,
    c: Option<Poly>,
}

impl Inputs {
    fn load(common: &Common) -> Result<Self, Fatal> {
        let mut raw: [(&str, Option<Vec<f64>>); 4] =
            [("coeffs", None), ("a", None), ("b", None), ("c", None)];
        if let Some(path) = &common.file {
            let text =
                fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
            let obj = doc
                .as_object()
                .ok_or_else(|| Fatal(format!("{}: expected a JSON object", path.display())))?;
            for (key, slot) in raw.iter_mut() {
                let v = obj.get(*key).or_else(|| match *key {
                    "c" => obj.get("c_final"),
                    _ => None,
                });
                if let Some(v) = v {
                    *slot = Some(json_coeffs(key, v)?);
                }
            }
        }
        let inline = [&common.coeffs, &common.a, &common.b, &common.c];
        for ((key, slot), text) in raw.iter_mut().zip(inline) {
            if let Some(t) = text {
                *slot = Some(parse_coeffs(&format!("--{key}"), t)?);
            }
        }
        let mut polys = raw
            .into_iter()
            .map(|(key, c)| c.map(|c| to_poly(key, c)).transpose());
        let mut next = || polys.next().expect("four slots");
        let mut inputs = Inputs {
            coeffs: next()?,
            a: next()?,
            b: next()?,
            c: next()?,
        };
        if common.discrete {
            for p in [
                &mut inputs.coeffs,
                &mut inputs.a,
                &mut inputs.b,
                &mut inputs.c,
            ]
            .into_iter()
            .flatten()
            {
                *p = bilinear_to_s(p)?.poly;
            }
        }
        Ok(inputs)
    }

    fn need<'a>(slot: &'a Option<Poly>, name: &str) -> Result<&'a Poly, Fatal> {
        slot.as_ref()
            .ok_or_else(|| Fatal(format!("missing input {name}")))
    }

    fn endpoints(&self) -> Result<(Poly, Poly), Fatal> {
        let a = Self::need(&self.a, "--a")?;
        let b = Self::need(&self.b, "--b")?;
        Ok((normalize_monic(a)?.0, normalize_monic(b)?.0))
    }
}

fn ser_real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else if *x < 0.0 {
        s.serialize_str("-inf")
    } else {
        s.serialize_str("nan")
    }
}

fn ser_opt_real<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_real(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct ToleranceBlock {
    tol_pos: f64,
    tol_root: f64,
    tol_gcd: f64,
    eta: f64,
    max_iters: usize,
    lambda_grid: usize,
}

impl ToleranceBlock {
    fn new(common: &Common, tol: &Tolerances) -> Self {
        Self {
            tol_pos: tol.pos,
            tol_root: tol.root,
            tol_gcd: tol.gcd,
            eta: common.eta,
            max_iters: common.max_iters,
            lambda_grid: common.lambda_grid,
        }
    }
}

fn render<T: Serialize>(doc: &T) -> Result<String, Fatal> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Fatal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct StabilityDoc<'a> {
    command: &'static str,
    p: &'a [f64],
    hurwitz: bool,
}

fn check_stability(inputs: &Inputs, tol: &Tolerances) -> Outcome {
    let p = inputs
        .coeffs
        .as_ref()
        .or(inputs.a.as_ref())
        .ok_or_else(|| Fatal("missing input --coeffs".into()))?;
    let hurwitz = hurwitz_test(p, tol);
    let doc = StabilityDoc {
        command: "check-stability",
        p: p.coeffs(),
        hurwitz,
    };
    Ok((render(&doc)?, hurwitz))
}

#[derive(Serialize)]
struct SegmentDoc<'a> {
    command: &'static str,
    a: &'a [f64],
    b: &'a [f64],
    stable: bool,
    a_hurwitz: bool,
    b_hurwitz: bool,
    #[serde(serialize_with = "ser_opt_real")]
    witness_lambda: Option<f64>,
    #[serde(serialize_with = "ser_opt_real")]
    witness_omega: Option<f64>,
    grid_points: usize,
    grid_stable: bool,
}

fn check_segment(inputs: &Inputs, common: &Common, tol: &Tolerances) -> Outcome {
    let (a, b) = inputs.endpoints()?;
    if common.lambda_grid < 2 {
        return Err(Fatal("--lambda-grid must be at least 2".into()));
    }
    let v = segment_stable(&a, &b, tol)?;
    let doc = SegmentDoc {
        command: "check-segment",
        a: a.coeffs(),
        b: b.coeffs(),
        stable: v.stable,
        a_hurwitz: v.endpoint_reports.0,
        b_hurwitz: v.endpoint_reports.1,
        witness_lambda: v.witness_lambda,
        witness_omega: v.witness_omega,
        grid_points: common.lambda_grid,
        grid_stable: segment_grid_oracle(&a, &b, common.lambda_grid, tol),
    };
    Ok((render(&doc)?, v.stable))
}

#[derive(Serialize)]
struct SprCheck<'a> {
    against: &'static str,
    d: &'a [f64],
    spr: bool,
    failed_condition: Option<u8>,
    #[serde(serialize_with = "ser_real")]
    margin: f64,
    #[serde(serialize_with = "ser_opt_real")]
    t_witness: Option<f64>,
}

#[derive(Serialize)]
struct SprDoc<'a> {
    command: &'static str,
    c: &'a [f64],
    checks: Vec<SprCheck<'a>>,
    all_spr: bool,
}

fn check_spr(inputs: &Inputs, tol: &Tolerances) -> Outcome {
    let c = Inputs::need(&inputs.c, "--c")?;
    let dens: Vec<(&'static str, &Poly)> = [("a", &inputs.a), ("b", &inputs.b)]
        .into_iter()
        .filter_map(|(k, p)| p.as_ref().map(|p| (k, p)))
        .collect();
    if dens.is_empty() {
        return Err(Fatal(
            "missing denominator: give --a (or --d) and/or --b".into(),
        ));
    }
    let checks: Vec<SprCheck> = dens
        .into_iter()
        .map(|(against, d)| {
            let r = verify_spr(c, d, tol);
            SprCheck {
                against,
                d: d.coeffs(),
                spr: r.spr,
                failed_condition: r.failed.map(|f| f.index()),
                margin: r.positivity.margin,
                t_witness: r.positivity.t_witness,
            }
        })
        .collect();
    let all_spr = checks.iter().all(|c| c.spr);
    let doc = SprDoc {
        command: "check-spr",
        c: c.coeffs(),
        checks,
        all_spr,
    };
    Ok((render(&doc)?, all_spr))
}

#[derive(Serialize)]
struct Certificate<'a> {
    status: &'static str,
    degree: usize,
    a: &'a [f64],
    b: &'a [f64],
    c_final: &'a [f64],
    x: &'a [f64],
    epsilon: f64,
    delta: f64,
    h: &'a [f64],
    margin_a: f64,
    margin_b: f64,
    iterations: usize,
    segment_certified: bool,
    tool_version: &'static str,
    tolerances: ToleranceBlock,
}

#[derive(Serialize)]
struct UnstableDoc<'a> {
    status: &'static str,
    a: &'a [f64],
    b: &'a [f64],
    #[serde(serialize_with = "ser_opt_real")]
    witness_lambda: Option<f64>,
    #[serde(serialize_with = "ser_opt_real")]
    witness_omega: Option<f64>,
    tool_version: &'static str,
    tolerances: ToleranceBlock,
}

enum Synth {
    Done(SynthesisResult),
    Unstable(Option<f64>, Option<f64>),
}

fn synth(a: &Poly, b: &Poly, common: &Common, tol: &Tolerances) -> Result<Synth, Fatal> {
    let opts = SynthesisOptions {
        eta: common.eta,
        max_iters: common.max_iters,
        tol: *tol,
    };
    match synthesize(a, b, &opts) {
        Ok(r) => Ok(Synth::Done(r)),
        Err(Error::SegmentUnstable { lambda, omega }) => Ok(Synth::Unstable(lambda, omega)),
        Err(e) => Err(e.into()),
    }
}

fn run_synthesize(inputs: &Inputs, common: &Common, tol: &Tolerances) -> Outcome {
    let (a, b) = inputs.endpoints()?;
    if common.lambda_grid < 2 {
        return Err(Fatal("--lambda-grid must be at least 2".into()));
    }
    match synth(&a, &b, common, tol)? {
        Synth::Done(r) => {
            let certified = verify_certificate(&r, &a, &b, common.lambda_grid, tol);
            let doc = Certificate {
                status: "ok",
                degree: a.degree().unwrap_or(0),
                a: a.coeffs(),
                b: b.coeffs(),
                c_final: r.c_final.coeffs(),
                x: &r.x.x,
                epsilon: r.epsilon,
                delta: r.delta,
                h: r.h.coeffs(),
                margin_a: r.margin_a,
                margin_b: r.margin_b,
                iterations: r.iterations,
                segment_certified: certified,
                tool_version: VERSION,
                tolerances: ToleranceBlock::new(common, tol),
            };
            Ok((render(&doc)?, certified))
        }
        Synth::Unstable(lambda, omega) => {
            let doc = UnstableDoc {
                status: "segment_unstable",
                a: a.coeffs(),
                b: b.coeffs(),
                witness_lambda: lambda,
                witness_omega: omega,
                tool_version: VERSION,
                tolerances: ToleranceBlock::new(common, tol),
            };
            Ok((render(&doc)?, false))
        }
    }
}

fn plot_data(inputs: &Inputs, common: &Common, args: &PlotArgs, tol: &Tolerances) -> Outcome {
    let (lo, hi) = (args.omega_min, args.omega_max);
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Fatal("need 0 < --omega-min < --omega-max".into()));
    }
    if args.points < 2 {
        return Err(Fatal("--points must be at least 2".into()));
    }
    let (a, b) = inputs.endpoints()?;
    let c = match &inputs.c {
        Some(c) => c.clone(),
        None => match synth(&a, &b, common, tol)? {
            Synth::Done(r) => r.c_final,
            Synth::Unstable(..) => {
                return Err(Fatal("segment is not Hurwitz stable; no c to plot".into()))
            }
        },
    };
    let (nca, naa) = (spr_numerator(&c, &a), spr_numerator(&a, &a));
    let (ncb, nbb) = (spr_numerator(&c, &b), spr_numerator(&b, &b));
    let mut csv = String::from("omega,re_c_over_a,re_c_over_b\n");
    let last = (args.points - 1) as f64;
    for i in 0..args.points {
        let omega = lo * (hi / lo).powf(i as f64 / last);
        let t = omega * omega;
        let ra = nca.eval(t) / naa.eval(t);
        let rb = ncb.eval(t) / nbb.eval(t);
        csv.push_str(&format!("{omega:e},{ra:e},{rb:e}\n"));
    }
    Ok((csv, true))
}
