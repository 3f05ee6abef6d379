use std::path::Path;
use std::time::Instant;

use reesdual_core::bourbaki::module_defining_ideal;
use reesdual_core::groebner::{IdealGens, Oracle};
use reesdual_core::hypotheses::{
    check_ideal_instance, check_module_instance, random_instance, random_module_instance, HypothesisReport,
};
use reesdual_core::poly::{print_poly, BiGrade, Poly};
use reesdual_core::rees::{
    diffop_iterations, fiber_by_elimination, matrix_iterations, run_defining_ideal, special_fiber, InstanceModule,
    PartialMode, Presentation,
};

use crate::instance::{self, describe, Kind, Loaded};
use crate::report::{Bourbaki, ErrorInfo, Fiber, Generator, Hypotheses, Report, Verification};
use crate::{Cli, CliError, Command, Method, Mode};

pub struct Outcome {
    pub report: Report,
    /// Human-readable lines for standard error.
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code
    }
}

struct Ctx {
    report: Report,
    summary: Vec<String>,
    oracle: Oracle,
}

pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let name = match &cli.command {
        Command::Hypotheses { .. } => "hypotheses",
        Command::Iterate { .. } => "iterate",
        Command::Verify { .. } => "verify",
        Command::Bourbaki { .. } => "bourbaki",
        Command::Random { .. } => "random",
    };
    let mut ctx = Ctx {
        report: Report { command: name.into(), ..Report::default() },
        summary: Vec::new(),
        oracle: Oracle::default(),
    };
    let result = match &cli.command {
        Command::Hypotheses { file } => hypotheses(&mut ctx, file),
        Command::Iterate { file, method, mode, verify } => iterate(&mut ctx, file, *method, *mode, *verify),
        Command::Verify { file, inject } => verify(&mut ctx, file, *inject),
        Command::Bourbaki { file, seed } => bourbaki(&mut ctx, file, *seed),
        Command::Random { d, m, seed, e, field, out } => random(&mut ctx, *d, *m, *seed, *e, field, out.as_deref()),
    };
    if let Err(e) = result {
        ctx.summary.push(format!("error ({}): {e}", e.kind()));
        ctx.report.error = Some(ErrorInfo { kind: e.kind().into(), message: e.to_string() });
        ctx.report.exit_code = e.exit_code();
    }
    if cli.timing {
        let ms = start.elapsed().as_millis();
        ctx.report.timing_ms = Some(ms);
        ctx.summary.push(format!("time: {ms} ms"));
    }
    Outcome { report: ctx.report, summary: ctx.summary }
}

fn load(ctx: &mut Ctx, file: &Path) -> Result<Loaded, CliError> {
    let (echo, loaded) = instance::read(file)?;
    ctx.report.instance = Some(echo);
    Ok(loaded)
}

fn check(ctx: &Ctx, loaded: &Loaded) -> Result<HypothesisReport, CliError> {
    Ok(match loaded {
        Loaded::Ideal(i) => check_ideal_instance(i, &ctx.oracle)?,
        Loaded::Module(m) => check_module_instance(m, &ctx.oracle)?,
    })
}

fn record_hypotheses(ctx: &mut Ctx, h: &HypothesisReport) {
    ctx.report.hypotheses = Some(Hypotheses::from(h));
    if h.passed() {
        ctx.summary.push(format!("hypotheses: pass ({})", h.scope));
    } else {
        ctx.summary.push(format!("hypotheses: fail ({}): {}", h.scope, h.failures().join("; ")));
    }
}

/// Records the hypothesis report and fails unless every condition holds.
fn gate(ctx: &mut Ctx, loaded: &Loaded) -> Result<(), CliError> {
    let h = check(ctx, loaded)?;
    record_hypotheses(ctx, &h);
    if !h.passed() {
        return Err(CliError::Hypothesis(format!("hypotheses fail: {}", h.failures().join("; "))));
    }
    Ok(())
}

fn hypotheses(ctx: &mut Ctx, file: &Path) -> Result<(), CliError> {
    let loaded = load(ctx, file)?;
    let h = check(ctx, &loaded)?;
    record_hypotheses(ctx, &h);
    if !h.passed() {
        ctx.report.exit_code = 1;
    }
    Ok(())
}

fn partial_mode(mode: Mode) -> PartialMode {
    match mode {
        Mode::Greedy => PartialMode::Greedy,
        Mode::Euler => PartialMode::Euler,
    }
}

/// `ℓ_1, …, f` followed by the remaining generators labelled by `tail`.
fn labelled(p: &Presentation, gens: &IdealGens, tail: impl Fn(usize) -> String) -> Vec<Generator> {
    let r = p.psi().cols();
    gens.gens()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let label = match k.cmp(&r) {
                std::cmp::Ordering::Less => format!("ℓ_{}", k + 1),
                std::cmp::Ordering::Equal => "f".into(),
                std::cmp::Ordering::Greater => tail(k - r - 1),
            };
            Generator::new(label, g)
        })
        .collect()
}

fn fiber(ctx: &Ctx, gens: &IdealGens) -> Result<(Poly, u32), CliError> {
    if let Ok(found) = special_fiber(gens) {
        return Ok(found);
    }
    let elim = fiber_by_elimination(gens, &ctx.oracle)?;
    match elim.gens() {
        [g] => match g.bidegree() {
            BiGrade::Homogeneous(d) => Ok((g.clone(), d.t)),
            _ => Err(CliError::CrossCheck("the fiber generator is not homogeneous".into())),
        },
        other => Err(CliError::CrossCheck(format!("the fiber has {} generators", other.len()))),
    }
}

fn record_fiber(ctx: &mut Ctx, gens: &IdealGens) -> Result<(), CliError> {
    let (g, degree) = fiber(ctx, gens)?;
    ctx.summary.push(format!("fiber: degree {degree}"));
    ctx.report.fiber = Some(Fiber { poly: print_poly(&g), degree });
    Ok(())
}

fn mjd_generators(p: &Presentation, mode: Mode) -> Result<(IdealGens, Vec<Generator>), CliError> {
    let a = run_defining_ideal(p, partial_mode(mode))?;
    let gens = a.generators().clone();
    let labels = labelled(p, &gens, |i| format!("F_{}", i + 1));
    Ok((gens, labels))
}

/// Compares `gens` with `𝓛 : (x)^∞`.
fn saturation_check(ctx: &mut Ctx, p: &Presentation, gens: &IdealGens) -> Result<Verification, CliError> {
    let (sat, index) = ctx.oracle.saturate(&p.symmetric_ideal(), &p.x_ideal())?;
    let equal = ctx.oracle.ideal_equal(gens, &sat)?;
    ctx.summary.push(format!(
        "saturation: index {index}, {}",
        if equal { "equal to the generators" } else { "differs from the generators" }
    ));
    Ok(Verification {
        equal_to_saturation: equal,
        saturation_index: index,
        index_equals_m: index == p.m() as usize,
        ..Verification::default()
    })
}

fn iterate(ctx: &mut Ctx, file: &Path, method: Method, mode: Mode, verify: bool) -> Result<(), CliError> {
    let loaded = load(ctx, file)?;
    gate(ctx, &loaded)?;
    let p = loaded.presentation();
    let (gens, labels) = match method {
        Method::Mjd => mjd_generators(p, mode)?,
        Method::Matrix => {
            let (_, gens) = matrix_iterations(p, p.m() as usize, partial_mode(mode), Some(&ctx.oracle))?;
            let labels = labelled(p, &gens, |i| format!("minor_{}", i + 1));
            (gens, labels)
        }
        Method::Diffop => {
            let gens = diffop_iterations(p)?;
            let labels = labelled(p, &gens, |i| format!("∂^{} f", i + 1));
            (gens, labels)
        }
    };
    ctx.report.method = Some(format!("{method:?}").to_lowercase());
    if method != Method::Diffop {
        ctx.report.mode = Some(format!("{mode:?}").to_lowercase());
    }
    ctx.summary.push(format!("{} generators", labels.len()));
    ctx.report.generators = Some(labels);
    record_fiber(ctx, &gens)?;
    if verify {
        let mut v = saturation_check(ctx, p, &gens)?;
        let mut ok = v.equal_to_saturation;
        if method != Method::Mjd {
            let (mjd, _) = mjd_generators(p, mode)?;
            let same = ctx.oracle.ideal_equal(&gens, &mjd)?;
            v.equal_to_mjd = Some(same);
            ok &= same;
        }
        ctx.report.verification = Some(v);
        if !ok {
            return Err(CliError::CrossCheck("the generators disagree with the oracle".into()));
        }
    }
    Ok(())
}

fn verify(ctx: &mut Ctx, file: &Path, inject: bool) -> Result<(), CliError> {
    let loaded = load(ctx, file)?;
    gate(ctx, &loaded)?;
    let p = loaded.presentation();
    let (mut gens, mut labels) = mjd_generators(p, Mode::Greedy)?;
    let mut injected = None;
    if inject {
        let mut list = gens.into_gens();
        let last = list.pop().expect("nonempty generator list");
        let x1 = Poly::var(p.ring(), p.ring().vars().x(0));
        let corrupted = &last * &x1;
        let label = labels.pop().expect("labels match generators").label;
        injected = Some(format!("{label} replaced by x1·{label}"));
        labels.push(Generator::new(format!("x1·{label}"), &corrupted));
        list.push(corrupted);
        gens = IdealGens::new(p.ring(), list);
    }
    ctx.report.method = Some("mjd".into());
    ctx.report.mode = Some("greedy".into());
    ctx.report.generators = Some(labels);
    let mut v = saturation_check(ctx, p, &gens)?;
    v.injected = injected;
    let equal = v.equal_to_saturation;
    ctx.report.verification = Some(v);
    if !equal {
        return Err(CliError::CrossCheck("the iteration disagrees with the saturation".into()));
    }
    Ok(())
}

fn bourbaki(ctx: &mut Ctx, file: &Path, seed: u64) -> Result<(), CliError> {
    let loaded = load(ctx, file)?;
    let module = match loaded {
        Loaded::Module(m) => m,
        Loaded::Ideal(i) => InstanceModule::new(1, i.f().clone(), i.psi().clone())?,
    };
    let loaded = Loaded::Module(module.clone());
    gate(ctx, &loaded)?;
    let p = module.presentation();
    let out = match module_defining_ideal(&module, seed, PartialMode::Greedy, &ctx.oracle) {
        Err(reesdual_core::rees::ReesError::CrossCheck { seed, message }) => {
            ctx.summary.push(format!("cross-check failed with seed {seed}"));
            return Err(CliError::CrossCheck(message));
        }
        other => other?,
    };
    let gens = out.defining.generators().clone();
    let labels = labelled(p, &gens, |i| format!("F_{}", i + 1));
    ctx.summary.push(format!("{} generators, cross-check passed", labels.len()));
    ctx.report.method = Some("mjd".into());
    ctx.report.mode = Some("greedy".into());
    ctx.report.generators = Some(labels);
    record_fiber(ctx, &gens)?;
    let red = &out.reduction;
    let ideal_p = red.ideal().presentation();
    let ideal_gens = run_defining_ideal(ideal_p, PartialMode::Greedy)?;
    ctx.report.bourbaki = Some(Bourbaki {
        seed: red.seed(),
        z: red.z().iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect(),
        y_forms: red.y_forms().iter().map(print_poly).collect(),
        ideal_instance: describe(ideal_p, Kind::Ideal, None),
        ideal_generators: labelled(ideal_p, ideal_gens.generators(), |i| format!("F_{}", i + 1)),
        cross_check: true,
    });
    Ok(())
}

fn random(
    ctx: &mut Ctx,
    d: usize,
    m: u32,
    seed: u64,
    e: usize,
    field: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let field = instance::parse_field(field)?;
    let loaded = if e == 1 {
        Loaded::Ideal(random_instance(d, m, seed, field, &ctx.oracle)?)
    } else {
        Loaded::Module(random_module_instance(d, e, m, seed, field, &ctx.oracle)?)
    };
    let file = match &loaded {
        Loaded::Ideal(i) => describe(i.presentation(), Kind::Ideal, None),
        Loaded::Module(md) => describe(md.presentation(), Kind::Module, Some(loaded.e())),
    };
    let h = check(ctx, &loaded)?;
    record_hypotheses(ctx, &h);
    if let Some(path) = out {
        let text = toml::to_string(&file).map_err(|e| CliError::Parse(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        ctx.summary.push(format!("instance written to {}", path.display()));
    }
    ctx.report.instance = Some(file);
    Ok(())
}
