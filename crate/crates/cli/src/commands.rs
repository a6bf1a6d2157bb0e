use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use rangeavoid::circuit::{
    gen_random_nc0, gen_random_poly, parse_instance, parse_poly, parse_vec, write_nc0_annotated, write_poly_annotated,
    write_vec, BooleanMap, Instance, GENERATOR_SCHEME,
};
use rangeavoid::encoding::{build_rigid_instance, build_sparse_encoder, encode_degree_d, EncodingLayout};
use rangeavoid::solvers::{brute_force_avoid, solve_degree2, Algorithm, Limits, Solution};
use rangeavoid::verify::{in_range, rigid_pipeline, PipelineSolver, DEFAULT_RIGIDITY_BUDGET};
use rangeavoid::Error;

use crate::args::{
    BenchArgs, CircuitAlg, Command, DecodeArgs, EncodeArgs, GenCommand, LimitArgs, PipelineArgs, SolveAlg, SolveArgs,
    VerifyArgs,
};
use crate::bench::{self, BenchConfig, Verified};
use crate::{CliError, Report};

type CmdResult = Result<(), CliError>;

pub(crate) fn dispatch(command: &Command, report: &mut Report) -> CmdResult {
    match command {
        Command::Solve(a) => solve(a, report),
        Command::Gen(g) => gen(g, report),
        Command::Encode(a) => encode(a, report),
        Command::Decode(a) => decode(a, report),
        Command::Verify(a) => verify(a, report),
        Command::RigidPipeline(a) => pipeline(a, report),
        Command::Bench(a) => bench_cmd(a, report),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Writes to `path`, or to standard output without one.
fn emit(path: Option<&PathBuf>, text: &str, report: &mut Report, key: &str) -> CmdResult {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|source| CliError::Io { path: p.clone(), source })?;
            report.push(key, p.display());
        }
        None => {
            print!("{text}");
            report.push(key, "-");
        }
    }
    Ok(())
}

fn limits(args: &LimitArgs) -> Result<Limits, CliError> {
    let mut l = Limits::from_env()?;
    if let Some(v) = args.limit {
        l.enumeration = v;
    }
    if let Some(v) = args.max_branches {
        l.max_branches = v;
    }
    Ok(l)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// `# generator <scheme> key=value ...` header lines of an instance file.
fn generator_header(text: &str) -> Option<&str> {
    text.lines().filter_map(|l| l.trim().strip_prefix('#')).map(str::trim).find(|l| l.starts_with("generator "))
}

fn solve(a: &SolveArgs, report: &mut Report) -> CmdResult {
    let limits = limits(&a.limits)?;
    let text = read(&a.input)?;
    let instance = parse_instance(&text)?;
    report.push("in", a.input.display());
    if a.seed_report {
        report.push("instance_source", generator_header(&text).unwrap_or("none"));
    }
    let map = instance.as_map();
    report.push("n", map.input_len());
    report.push("m", map.output_len());
    match &instance {
        Instance::Circuit(c) => report.push("k", c.k()),
        Instance::Poly(p) => report.push("d", p.d()),
    }
    report.push("alg", a.alg.to_possible_value().map_or_else(String::new, |v| v.get_name().to_string()));

    let start = Instant::now();
    let solution: Solution = match (&instance, a.alg) {
        (Instance::Circuit(c), SolveAlg::Brute) => Algorithm::Brute.solve(c, &limits)?,
        (Instance::Circuit(c), SolveAlg::Nc02) => Algorithm::Nc02.solve(c, &limits)?,
        (Instance::Circuit(c), SolveAlg::SubspaceUnion) => Algorithm::SubspaceUnion.solve(c, &limits)?,
        (Instance::Circuit(c), SolveAlg::OneSubspace) => Algorithm::OneSubspace.solve(c, &limits)?,
        (Instance::Circuit(_), SolveAlg::Degree2) => {
            return Err(Error::Parameter("degree2 expects a `.poly` instance".into()).into())
        }
        (Instance::Poly(p), SolveAlg::Brute) => brute_force_avoid(p, limits.enumeration)?,
        (Instance::Poly(p), SolveAlg::Degree2) => {
            let inner: Algorithm = a.inner.into();
            report.push("inner", inner);
            let sol = solve_degree2(p, inner, &limits)?;
            let fhat = sol.encoded.circuit();
            report.push("encoded_n", fhat.n());
            report.push("encoded_m", fhat.m());
            report.push("encoded_y", &sol.inner.y);
            Solution { y: sol.y, ..sol.inner }
        }
        (Instance::Poly(_), _) => {
            return Err(Error::Parameter(format!(
                "{} expects a `.nc0` circuit; use degree2 or brute for `.poly` input",
                report.get("alg").unwrap_or_default()
            ))
            .into())
        }
    };
    report.push("micros", start.elapsed().as_micros());
    report.push("t", opt(solution.branch_inputs));
    report.push("iterations", solution.iterations);
    report.push("y", &solution.y);
    emit(a.out.as_ref(), &write_vec(&solution.y), report, "out")?;
    if a.verify {
        if in_range(map, &solution.y, limits.enumeration)? {
            report.push("verified", "no");
            return Err(CliError::InRange(format!("{} is in the range", solution.y)));
        }
        report.push("verified", "yes");
    } else {
        report.push("verified", "skipped");
    }
    Ok(())
}

fn gen(g: &GenCommand, report: &mut Report) -> CmdResult {
    let (text, out) = match g {
        GenCommand::RandomNc0 { n, m, k, seed, out } => {
            let c = gen_random_nc0(*n, *m, *k, *seed)?;
            let header = format!("generator {GENERATOR_SCHEME} kind=random-nc0 seed={seed} n={n} m={m} k={k}");
            report.push("kind", "random-nc0");
            report.push("seed", seed);
            (write_nc0_annotated(&c, &[header]), out)
        }
        GenCommand::RandomPoly { n, m, d, seed, density, out } => {
            let p = gen_random_poly(*n, *m, *d, *density, *seed)?;
            let header = format!(
                "generator {GENERATOR_SCHEME} kind=random-poly seed={seed} n={n} m={m} d={d} density={density}"
            );
            report.push("kind", "random-poly");
            report.push("seed", seed);
            (write_poly_annotated(&p, &[header]), out)
        }
        GenCommand::SparseEncoder { n, s, d, out } => {
            let e = build_sparse_encoder(*n, *s, *d)?;
            let header = format!(
                "sparse encoder n={n} s={s} d={d} vertices={} within_hypothesis={}",
                e.vertices(),
                e.within_hypothesis()
            );
            report.push("kind", "sparse-encoder");
            report.push("within_hypothesis", e.within_hypothesis());
            (write_poly_annotated(e.poly(), &[header]), out)
        }
        GenCommand::Rigid { n, r, s, out } => {
            let inst = build_rigid_instance(*n, *r, *s)?;
            let header =
                format!("low-rank plus sparse n={n} r={r} s={s} within_hypothesis={}", inst.within_hypothesis());
            report.push("kind", "rigid");
            report.push("within_hypothesis", inst.within_hypothesis());
            (write_poly_annotated(inst.poly(), &[header]), out)
        }
    };
    let instance = parse_instance(&text)?;
    report.push("inputs", instance.as_map().input_len());
    report.push("outputs", instance.as_map().output_len());
    emit(out.as_ref(), &text, report, "out")
}

fn encode(a: &EncodeArgs, report: &mut Report) -> CmdResult {
    let p = parse_poly(&read(&a.input)?)?;
    let e = encode_degree_d(&p)?;
    let c = e.circuit();
    report.push("n", p.n());
    report.push("m", p.m());
    report.push("d", p.d());
    report.push("encoded_n", c.n());
    report.push("encoded_m", c.m());
    report.push("locality", c.k());
    let header = format!("encoding of {} (n={}, m={}, d={})", a.input.display(), p.n(), p.m(), p.d());
    emit(Some(&a.out), &write_nc0_annotated(c, &[header]), report, "out")?;
    emit(Some(&a.layout), &e.layout().to_text(), report, "layout")
}

fn decode(a: &DecodeArgs, report: &mut Report) -> CmdResult {
    let layout = EncodingLayout::from_text(&read(&a.layout)?)?;
    let yhat = parse_vec(&read(&a.input)?)?;
    let y = layout.decode(&yhat)?;
    report.push("encoded_y", &yhat);
    report.push("y", &y);
    emit(a.out.as_ref(), &write_vec(&y), report, "out")
}

fn verify(a: &VerifyArgs, report: &mut Report) -> CmdResult {
    let instance = parse_instance(&read(&a.circuit)?)?;
    let y = parse_vec(&read(&a.point)?)?;
    let limit = match a.limit {
        Some(l) => l,
        None => Limits::from_env()?.enumeration,
    };
    report.push("n", instance.as_map().input_len());
    report.push("m", instance.as_map().output_len());
    report.push("y", &y);
    let start = Instant::now();
    let hit = in_range(instance.as_map(), &y, limit)?;
    report.push("micros", start.elapsed().as_micros());
    if hit {
        report.push("verdict", "in-range");
        return Err(CliError::InRange(format!("{y} is in the range")));
    }
    report.push("verdict", "avoided");
    Ok(())
}

fn pipeline(a: &PipelineArgs, report: &mut Report) -> CmdResult {
    let limits = limits(&a.limits)?;
    let solver = match a.alg {
        CircuitAlg::Brute => PipelineSolver::Direct,
        other => PipelineSolver::Encoded(other.into()),
    };
    report.push("n", a.n);
    report.push("r", a.r);
    report.push("s", a.s);
    report.push("alg", Algorithm::from(a.alg));
    if let Ok(inst) = build_rigid_instance(a.n, a.r, a.s) {
        report.push("g_inputs", inst.poly().input_len());
        report.push("g_outputs", inst.poly().output_len());
        report.push("within_hypothesis", inst.within_hypothesis());
    }
    let start = Instant::now();
    let outcome = rigid_pipeline(a.n, a.r, a.s, solver, &limits, a.budget.unwrap_or(DEFAULT_RIGIDITY_BUDGET))?;
    report.push("micros", start.elapsed().as_micros());
    report.push("matrix", outcome.matrix.to_flat());
    report.push("verdict", if outcome.certificate.is_rigid() { "rigid" } else { "non-rigid" });
    emit(a.cert.as_ref(), &outcome.certificate.to_text(), report, "cert")
}

fn bench_cmd(a: &BenchArgs, report: &mut Report) -> CmdResult {
    let limits = limits(&a.limits)?;
    let algs = bench::split_list(&a.alg).iter().map(|s| s.parse()).collect::<Result<Vec<Algorithm>, _>>()?;
    let config = BenchConfig {
        k: a.k,
        ns: bench::parse_n_range(&a.n_range)?,
        m_rules: bench::split_list(&a.m_rule),
        seeds: a.seeds,
        algs,
        verify: a.verify,
    };
    if config.m_rules.is_empty() || config.algs.is_empty() {
        return Err(CliError::Usage("--m-rule and --alg each need at least one entry".into()));
    }
    let rows = bench::run(&config, &limits)?;
    let count = |v: Verified| rows.iter().filter(|r| r.verified == v).count();
    report.push("rows", rows.len());
    report.push("verified", count(Verified::Yes));
    report.push("rejected", count(Verified::Error));
    report.push("in_range", count(Verified::No));
    emit(a.csv.as_ref(), &bench::to_csv(&rows), report, "csv")?;
    if count(Verified::No) > 0 {
        return Err(CliError::InRange(format!("{} answers lie in the range", count(Verified::No))));
    }
    Ok(())
}
