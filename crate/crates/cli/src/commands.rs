use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context};

use chiralwalk::circuit::{apply_circuit, parse_circuit, PalindromicCircuit, Space};
use chiralwalk::properties::{run_suite, SuiteConfig};
use chiralwalk::symmetry::classify_with;
use chiralwalk::{
    circuit_sweep as sweep, parse_graph, sweep_time, three_cycle_circuit, trotter_error,
    validate_transport_csv, NumericConfig, SymmetryReport, TransportTable, WalkHamiltonian,
};

use crate::angle::parse_angle;
use crate::{
    ClassifyArgs, EvolveArgs, Failure, Fig2Args, PropertiesArgs, ReportFormat, SweepArgs,
    ThetaGrid, TrotterArgs,
};

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<WalkHamiltonian> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to `out`, or to stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    }
}

fn angle(text: &str, degrees: bool) -> anyhow::Result<f64> {
    if degrees {
        let v: f64 = text
            .trim()
            .parse()
            .map_err(|_| anyhow!("`{text}`: with --degrees angles must be plain numbers"))?;
        if !v.is_finite() {
            bail!("`{text}` is not finite");
        }
        Ok(v.to_radians())
    } else {
        parse_angle(text).map_err(|e| anyhow!(e))
    }
}

/// `min, min + step, ...` up to `max` inclusive (within rounding).
fn theta_grid(g: &ThetaGrid) -> anyhow::Result<Vec<f64>> {
    let (lo, hi, step) = (
        angle(&g.theta_min, g.degrees)?,
        angle(&g.theta_max, g.degrees)?,
        angle(&g.theta_step, g.degrees)?,
    );
    if step.is_nan() || step <= 0.0 {
        bail!("--theta-step must be positive");
    }
    if hi < lo {
        bail!("--theta-max must not be below --theta-min");
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        bail!("theta grid has {count} points");
    }
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

/// CSV with a final schema check, so every file written validates.
fn checked_csv(table: &TransportTable) -> anyhow::Result<String> {
    let csv = table.to_csv();
    validate_transport_csv(&csv).context("generated CSV failed validation")?;
    Ok(csv)
}

pub fn classify(a: &ClassifyArgs) -> CmdResult {
    let h = load_graph(&a.graph)?;
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(anyhow!("--tol must be a positive real").into());
    }
    let cfg = NumericConfig {
        pts_tol: a.tol,
        ..NumericConfig::default()
    };
    let report = classify_with(&h, &cfg);
    let text = match a.format {
        ReportFormat::Kv => report.to_key_value(),
        ReportFormat::Csv => {
            let name = a.graph.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            format!("{}\n{}\n", SymmetryReport::CSV_HEADER, report.to_csv_row(&name))
        }
    };
    emit(a.out.as_deref(), &text)?;
    Ok(())
}

pub fn evolve(a: &EvolveArgs) -> CmdResult {
    let h = load_graph(&a.graph)?;
    let t_max = angle(&a.t_max, false).context("--t-max")?;
    if t_max < 0.0 {
        return Err(anyhow!("--t-max must be non-negative").into());
    }
    let times: Vec<f64> = if t_max == 0.0 {
        vec![0.0]
    } else {
        if a.t_count == 0 {
            return Err(anyhow!("--t-count must be positive").into());
        }
        (1..=a.t_count).map(|k| k as f64 * t_max / a.t_count as f64).collect()
    };
    let table = sweep_time(&h, &times)?;
    emit(a.out.as_deref(), &checked_csv(&table)?)?;
    Ok(())
}

type Builder = Box<dyn Fn(f64, f64) -> chiralwalk::Result<PalindromicCircuit> + Sync>;

fn builder(template: Option<&Path>, fuse: bool) -> anyhow::Result<Builder> {
    Ok(match template {
        None => Box::new(move |al, th| Ok(three_cycle_circuit(al, th)?.with_fused_center(fuse))),
        Some(p) => {
            let c = parse_circuit(&read(p)?)
                .and_then(|f| f.into_circuit())
                .with_context(|| format!("parsing {}", p.display()))?;
            Box::new(move |al, th| Ok(c.at_grid_point(al, th)?.with_fused_center(fuse)))
        }
    })
}

pub fn circuit_sweep(a: &SweepArgs) -> CmdResult {
    let alphas = a
        .alpha
        .iter()
        .map(|s| angle(s, a.theta.degrees))
        .collect::<anyhow::Result<Vec<_>>>()
        .context("--alpha")?;
    let thetas = theta_grid(&a.theta)?;
    let build = builder(a.circuit.as_deref(), a.fuse_center)?;
    let table = sweep(&alphas, &thetas, build)?;
    emit(a.out.as_deref(), &checked_csv(&table)?)?;
    Ok(())
}

fn transfer(alpha: f64, theta: f64, fuse: bool) -> f64 {
    let c = three_cycle_circuit(alpha, theta).expect("valid gates").with_fused_center(fuse);
    apply_circuit(&c, Space::Node)
        .expect("node space")
        .transition_probability(0, 2)
        .expect("in range")
}

/// Shrinking local grid search for the largest transfer near a start point.
fn refine_peak(alpha: f64, theta: f64, span: f64, fuse: bool) -> (f64, f64, f64) {
    let (mut a, mut t, mut span) = (alpha, theta, span);
    let mut best = transfer(a, t, fuse);
    for _ in 0..48 {
        for i in -5..=5 {
            for j in -5..=5 {
                let (ca, ct) = (a + span * i as f64 / 5.0, t + span * j as f64 / 5.0);
                let p = transfer(ca, ct, fuse);
                if p > best {
                    best = p;
                    (a, t) = (ca, ct);
                }
            }
        }
        span *= 0.5;
    }
    (best, a, t)
}

const SLICES: [(&str, f64); 4] = [
    ("0", 0.0),
    ("pi_2", PI / 2.0),
    ("pi", PI),
    ("3pi_2", 3.0 * PI / 2.0),
];

pub fn reproduce_fig2(a: &Fig2Args) -> CmdResult {
    if a.alpha_count == 0 || a.theta_count == 0 {
        return Err(anyhow!("grid counts must be positive").into());
    }
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let fuse = a.fuse_center;
    let build = builder(None, fuse)?;

    // Surface over [0, 2 pi) x (-pi, pi], transfer 0 -> 2 only.
    let alphas: Vec<f64> = (0..a.alpha_count)
        .map(|k| k as f64 * 2.0 * PI / a.alpha_count as f64)
        .collect();
    let thetas: Vec<f64> = (0..a.theta_count)
        .map(|k| -PI + (k + 1) as f64 * 2.0 * PI / a.theta_count as f64)
        .collect();
    let surface = sweep(&alphas, &thetas, &build)?;
    let mut csv = String::from("alpha,theta,from,to,probability\n");
    let (mut best, mut best_k) = (f64::NEG_INFINITY, 0);
    for (k, (al, th)) in alphas.iter().flat_map(|&x| thetas.iter().map(move |&y| (x, y))).enumerate() {
        let p = surface.probability(k, 0, 2);
        if p > best {
            (best, best_k) = (p, k);
        }
        let _ = writeln!(csv, "{al:.16e},{th:.16e},0,2,{p:.16e}");
    }
    validate_transport_csv(&csv).context("surface CSV failed validation")?;
    fs::write(a.out.join("surface.csv"), &csv)?;

    let (best_alpha, best_theta) = (alphas[best_k / a.theta_count], thetas[best_k % a.theta_count]);
    let step = 2.0 * PI / a.alpha_count.min(a.theta_count) as f64;
    let (refined, ref_alpha, ref_theta) = refine_peak(best_alpha, best_theta, step, fuse);

    // Wrapped row alpha = 2 pi against alpha = 0.
    let wrapped = sweep(&[2.0 * PI], &thetas, &build)?;
    let first = sweep(&[0.0], &thetas, &build)?;
    let periodicity = wrapped.max_diff(&first);

    let slice_thetas = theta_grid(&a.theta)?;
    let mut summary = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(summary, "{k}={v}");
    };
    kv("surface_alpha_points", a.alpha_count.to_string());
    kv("surface_theta_points", a.theta_count.to_string());
    kv("surface_max", format!("{best:.16e}"));
    kv("surface_max_alpha", format!("{best_alpha:.16e}"));
    kv("surface_max_theta", format!("{best_theta:.16e}"));
    kv("refined_max", format!("{refined:.16e}"));
    kv("refined_max_alpha", format!("{ref_alpha:.16e}"));
    kv("refined_max_theta", format!("{ref_theta:.16e}"));
    kv("alpha_periodicity_defect", format!("{periodicity:.3e}"));
    kv("slice_theta_points", slice_thetas.len().to_string());
    for (name, alpha) in SLICES {
        let table = sweep(&[alpha], &slice_thetas, &build)?;
        fs::write(a.out.join(format!("slice_alpha_{name}.csv")), checked_csv(&table)?)?;
        let (k12, p12) = table.max_transfer(0, 1);
        let (k13, p13) = table.max_transfer(0, 2);
        kv(&format!("slice_alpha_{name}_max_p01"), format!("{p12:.16e}"));
        kv(&format!("slice_alpha_{name}_max_p01_theta"), format!("{:.16e}", slice_thetas[k12]));
        kv(&format!("slice_alpha_{name}_max_p02"), format!("{p13:.16e}"));
        kv(&format!("slice_alpha_{name}_max_p02_theta"), format!("{:.16e}", slice_thetas[k13]));
    }
    fs::write(a.out.join("summary.txt"), summary)?;
    Ok(())
}

pub fn trotter_check(a: &TrotterArgs) -> CmdResult {
    let h = match &a.graph {
        Some(p) => load_graph(p)?,
        None => WalkHamiltonian::ring(3, 1.0, 0.0)?,
    };
    let theta_max = angle(&a.theta_max, a.degrees).context("--theta-max")?;
    if a.levels == 0 {
        return Err(anyhow!("--levels must be positive").into());
    }
    let thetas: Vec<f64> = (0..=a.levels).map(|k| theta_max / 2f64.powi(k as i32)).collect();
    let errors = thetas
        .iter()
        .map(|&t| trotter_error(&h, t))
        .collect::<chiralwalk::Result<Vec<_>>>()?;
    let mut out = String::from("theta,error,ratio_to_half\n");
    for k in 0..thetas.len() {
        let ratio = match errors.get(k + 1) {
            Some(&next) if next > 0.0 => format!("{:.16e}", errors[k] / next),
            _ => "nan".into(),
        };
        let _ = writeln!(out, "{:.16e},{:.16e},{ratio}", thetas[k], errors[k]);
    }
    emit(a.out.as_deref(), &out)?;
    Ok(())
}

pub fn properties(a: &PropertiesArgs) -> CmdResult {
    let report = run_suite(SuiteConfig {
        seed: a.seed,
        trials: a.trials,
        inject_fault: a.inject_fault,
    });
    emit(a.out.as_deref(), &report.render())?;
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<_> = report.failures().map(|o| o.name).collect();
        Err(Failure::Violation(format!("property violations: {}", names.join(", "))))
    }
}
