use std::fs;
use std::path::Path;

use polyrecon::arith::{parse_rational, Float, Precision, Rational, Scalar, ScalarMode};
use polyrecon::geometry::{
    check_simple, fixtures, random_simple_polytope, random_simple_polytope_with_vertices, Polytope,
};
use polyrecon::harness::{
    moments_from_json, moments_to_json, polytope_from_json, polytope_to_json, polytope_to_off,
    report_from_json, report_to_json, report_to_off, run_sweep, verify_polytope,
    vertex_set_distance, ReportFile, SweepConfig,
};
use polyrecon::matching::{
    self, choose_direction_frame, reconstruct_in_frame, DirectionFrame, ReconstructOptions,
};
use polyrecon::moments::{
    exact_moments, moment_provider, Direction, MomentRecord, PolytopeOracle, RecordedMoments,
};
use polyrecon::recovery::{Method, VertexCount};
use polyrecon::Error;

use crate::args::{
    ArithmeticArgs, ExportArgs, GenerateArgs, MethodArg, ModeArg, MomentsArgs, PolytopeSource,
    ReconstructArgs, SweepArgs, VerifyArgs,
};
use crate::Failure;

type CmdResult = Result<(), Failure>;

/// Distances above this are reported with a warning.
const DISTANCE_WARNING: f64 = 1e-3;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::from(Error::Io(format!("{}: {e}", path.display()))))
}

fn write(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .map_err(|e| Failure::from(Error::Io(format!("{}: {e}", path.display()))))
}

fn load_polytope(source: &PolytopeSource) -> Result<Option<Polytope>, Failure> {
    match (&source.fixture, &source.polytope) {
        (Some(name), _) => Ok(Some(fixtures::by_name(name)?)),
        (None, Some(path)) => Ok(Some(polytope_from_json(&read(path)?)?)),
        (None, None) => Ok(None),
    }
}

fn require_polytope(source: &PolytopeSource) -> Result<Polytope, Failure> {
    load_polytope(source)?.ok_or_else(|| Failure::usage("give --fixture or --polytope"))
}

/// Float mode exactly when a bit count is present.
fn scalar_mode(a: &ArithmeticArgs) -> Result<Option<ScalarMode>, Failure> {
    match (a.mode, a.bits) {
        (None, None) => Ok(None),
        (Some(ModeArg::Rational), None) => Ok(Some(ScalarMode::exact())),
        (Some(ModeArg::Rational), Some(_)) => {
            Err(Failure::usage("--bits only applies to --mode float"))
        }
        (Some(ModeArg::Float), None) => Err(Failure::usage("--mode float needs --bits")),
        (_, Some(bits)) => Ok(Some(ScalarMode::float(bits)?)),
    }
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Prony => Method::Prony,
        MethodArg::Pade => Method::Pade,
    }
}

fn parse_vector(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|x| parse_rational(x.trim()).map_err(|e| Failure::usage(e.to_string())))
        .collect()
}

fn parse_list(s: &str, step: usize) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("bad list {s:?}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi): (usize, usize) = (
                    lo.parse().map_err(|_| bad())?,
                    hi.parse().map_err(|_| bad())?,
                );
                if step == 0 || lo > hi {
                    return Err(bad());
                }
                out.extend((lo..=hi).step_by(step));
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn approx(v: &[Rational]) -> String {
    let xs: Vec<String> = v
        .iter()
        .map(|x| format!("{:.6}", Scalar::to_f64(x)))
        .collect();
    format!("({})", xs.join(", "))
}

fn show_direction(z: &Direction) -> String {
    let part = |v: &[Rational]| {
        v.iter()
            .map(polyrecon::arith::format_rational)
            .collect::<Vec<_>>()
            .join(", ")
    };
    match z.im() {
        Some(im) => format!("({}) + i({})", part(z.re()), part(im)),
        None => format!("({})", part(z.re())),
    }
}

pub fn generate(a: GenerateArgs) -> CmdResult {
    let p = match (a.facets, a.vertices) {
        (_, Some(n)) => random_simple_polytope_with_vertices(a.dim, n, a.seed),
        (Some(f), None) => random_simple_polytope(a.dim, f, a.seed),
        (None, None) => return Err(Failure::usage("give --facets or --vertices")),
    }
    .map_err(|e| match e {
        Error::InvalidArgument(_) => Failure::from(e),
        other => Failure {
            code: crate::EXIT_GENERATION,
            message: other.to_string(),
        },
    })?;
    println!(
        "N={} d={} facets={} simple={}",
        p.n_vertices(),
        p.dim(),
        p.facets().len(),
        if check_simple(&p) { "yes" } else { "no" }
    );
    match &a.output {
        Some(path) => write(path, &polytope_to_json(&p))?,
        None => {
            for v in p.vertices() {
                println!("  {}", approx(v));
            }
        }
    }
    Ok(())
}

fn record(
    p: &Polytope,
    dir: Direction,
    count: usize,
    mode: ScalarMode,
) -> Result<MomentRecord, Failure> {
    let values = match mode.bits() {
        None => exact_moments(p, &dir, count, None)?,
        Some(bits) => moment_provider::<Float>(p, &dir, count, Precision(bits))?
            .moments
            .iter()
            .map(|m| m.map(Scalar::to_rational))
            .collect(),
    };
    Ok(MomentRecord {
        direction: dir,
        mode,
        values,
    })
}

pub fn moments(a: MomentsArgs) -> CmdResult {
    let p = require_polytope(&a.source)?;
    let mode = scalar_mode(&a.arithmetic)?.unwrap_or_else(ScalarMode::exact);
    let count = a.count as usize;
    let directions = match (&a.z, a.frame_seed) {
        (Some(z), _) => {
            let re = parse_vector(z)?;
            vec![match &a.zim {
                Some(im) => Direction::complex(re, parse_vector(im)?)?,
                None => Direction::real(re)?,
            }]
        }
        (None, Some(seed)) => {
            let frame = choose_direction_frame(p.dim(), seed)?;
            (0..p.dim() - 1)
                .map(|j| frame.plane(j))
                .collect::<Result<_, _>>()?
        }
        (None, None) => return Err(Failure::usage("give --z or --frame-seed")),
    };
    if directions[0].dim() != p.dim() {
        return Err(Failure::usage(format!(
            "direction has length {}, polytope has dimension {}",
            directions[0].dim(),
            p.dim()
        )));
    }
    let records = directions
        .into_iter()
        .map(|dir| record(&p, dir, count, mode))
        .collect::<Result<Vec<_>, _>>()?;
    for r in &records {
        println!(
            "z = {} ({mode}), {count} moments",
            show_direction(&r.direction)
        );
        for (j, m) in r.values.iter().enumerate().take(6) {
            let (re, im) = m.to_f64_pair();
            println!("  mu_{j} = {re:.6e} {im:+.6e}i");
        }
        if count > 6 {
            println!("  ...");
        }
    }
    if let Some(path) = &a.output {
        write(path, &moments_to_json(&records))?;
    }
    Ok(())
}

/// Planes sharing one real part, as written by `moments --frame-seed`.
fn frame_from_records(records: &[MomentRecord]) -> Result<DirectionFrame, Failure> {
    let z_re = records[0].direction.re().to_vec();
    let mut z_others = Vec::new();
    for r in records {
        if r.direction.re() != z_re.as_slice() {
            return Err(Failure::usage(
                "moment records do not share a real direction",
            ));
        }
        match r.direction.im() {
            Some(im) => z_others.push(im.to_vec()),
            None => {
                return Err(Failure::usage(
                    "reconstruction from files needs complex directions",
                ))
            }
        }
    }
    Ok(DirectionFrame::new(z_re, z_others)?)
}

pub fn reconstruct(a: ReconstructArgs) -> CmdResult {
    let count = match (a.n, a.nmax) {
        (Some(n), _) => VertexCount::Known(n),
        (None, Some(n)) => VertexCount::AtMost(n),
        (None, None) => return Err(Failure::usage("give --n or --nmax")),
    };
    let opts = ReconstructOptions {
        budget: a.budget,
        ..ReconstructOptions::new(count, a.seed).method(method(a.method))
    };
    let mode = scalar_mode(&a.arithmetic)?;
    let truth = load_polytope(&a.source)?;
    let report = match &truth {
        Some(p) => matching::reconstruct(
            &PolytopeOracle::new(p.clone()),
            mode.unwrap_or_else(ScalarMode::exact),
            opts,
        ),
        None => {
            if a.moment_files.is_empty() {
                return Err(Failure::usage("give --fixture, --polytope or --moments"));
            }
            let mut records = Vec::new();
            for path in &a.moment_files {
                records.extend(moments_from_json(&read(path)?)?);
            }
            let frame = frame_from_records(&records)?;
            let mode = mode.unwrap_or(records[0].mode);
            reconstruct_in_frame(&RecordedMoments::new(records)?, &frame, mode, opts)
        }
    }
    .map_err(Failure::reconstruction)?;
    println!(
        "recovered {} vertices ({}, {:?}) after {} attempt(s), {} moments per plane",
        report.vertices.len(),
        report.mode,
        report.method,
        report.attempts.len(),
        report.moments_per_plane
    );
    for v in &report.vertices {
        println!("  {}", approx(v));
    }
    let distance = match &truth {
        Some(p) => match vertex_set_distance(&report.vertices, p.vertices()) {
            Ok(d) => Some(d.value),
            Err(Error::SizeMismatch(got, want)) => {
                eprintln!("warning: recovered {got} vertices, the polytope has {want}");
                Some(f64::INFINITY)
            }
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    if let Some(d) = distance {
        println!("vertex-set distance to the input: {d:e}");
        if d > DISTANCE_WARNING {
            eprintln!("warning: distance {d:e} exceeds {DISTANCE_WARNING:e}; try more bits");
        }
    }
    if let Some(path) = &a.output {
        // JSON has no infinity; an unmatched vertex count is left as null.
        let file = ReportFile::new(&report, distance.filter(|d| d.is_finite()));
        write(path, &report_to_json(&file))?;
    }
    Ok(())
}

pub fn sweep(a: SweepArgs) -> CmdResult {
    let config = SweepConfig {
        dim: a.dim,
        vertex_counts: parse_list(&a.n, 1)?,
        bits: parse_list(&a.bits, a.step)?,
        trials: a.trials,
        seed: a.seed,
        method: method(a.method),
        budget: a.budget,
    };
    let report = run_sweep(&config)?;
    println!(
        "minimum bits reaching each error level (median of {} trials)",
        config.trials
    );
    print!("{}", report.summary());
    if let Some(path) = &a.output {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
        write(path, &json)?;
    }
    Ok(())
}

pub fn export(a: ExportArgs) -> CmdResult {
    let off = match &a.report {
        Some(path) => report_to_off(&report_from_json(&read(path)?)?)?,
        None => polytope_to_off(&require_polytope(&a.source)?)?,
    };
    match &a.output {
        Some(path) => write(path, &off),
        None => {
            print!("{off}");
            Ok(())
        }
    }
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let p = require_polytope(&a.source)?;
    let r = verify_polytope(&p, a.directions, a.seed)?;
    println!(
        "{} vanishing identities, {} oracle comparisons",
        r.zero_identity_checks, r.oracle_checks
    );
    for f in &r.failures {
        println!("  FAIL {f}");
    }
    if r.passed() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("{} checks failed", r.failures.len()),
        })
    }
}
