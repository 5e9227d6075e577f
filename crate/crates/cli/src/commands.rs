//! One function per subcommand. Each reads its inputs, delegates to the core
//! crate and packs the outcome into a [`Report`].

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use minterp_core::ball::{
    default_witnesses, extension_gk, extension_report, hull_certificate, phi, scan_grid,
    sphere_sup, torus_samples, ScanOptions,
};
use minterp_core::disk::{
    extremality_certificate, minimal_norm, solve_extremal, sufficient_subsets, DiskProblem,
    DEFAULT_DELTA,
};
use minterp_core::measure::{
    kernel_eigen_residual, kernel_norm_growth, restricted_norm, MeasureSpec, TruncatedH2,
};
use minterp_core::{BiPoly, Point2, UniPoly, C64};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{verify, CliError, Report, RunConfig};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, Vec<u8>), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let value = serde_json::from_slice(&bytes).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((value, bytes))
}

fn config_bytes(cfg: &RunConfig) -> Vec<u8> {
    serde_json::to_vec(cfg).expect("configs serialize")
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn scan_opts(cfg: &RunConfig) -> ScanOptions {
    ScanOptions {
        grid_n: cfg.grid_n,
        polish: true,
    }
}

pub fn solve_disk(path: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (problem, bytes): (DiskProblem, _) = read_json(path)?;
    let m = minimal_norm(&problem, cfg.tolerances.norm)?;
    let certificate = extremality_certificate(&problem, m, DEFAULT_DELTA)?;
    let results = if problem.max_abs_value() == 0.0 {
        json!({ "m": 0.0, "blaschke": null, "certificate": certificate })
    } else {
        let sol = solve_extremal(&problem)?;
        json!({
            "m": m,
            "blaschke": {
                "zeros": sol.blaschke.zeros().iter().copied().map(pair).collect::<Vec<_>>(),
                "rotation": pair(sol.blaschke.rotation()),
            },
            "interp_residual": sol.interp_residual,
            "boundary_flatness": sol.boundary_flatness,
            "certificate": certificate,
        })
    };
    Ok(Report::new(
        "solve-disk",
        &[&bytes, &config_bytes(cfg)],
        cfg,
        results,
        true,
    ))
}

pub fn subproblems(path: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (problem, bytes): (DiskProblem, _) = read_json(path)?;
    let report = sufficient_subsets(&problem, cfg.tolerances.subset)?;
    let results = serde_json::to_value(report).expect("reports serialize");
    Ok(Report::new(
        "subproblems",
        &[&bytes, &config_bytes(cfg)],
        cfg,
        results,
        true,
    ))
}

pub fn extend(k: u32, cfg: &RunConfig) -> Result<Report, CliError> {
    let g = extension_gk(k)?;
    let target = UniPoly::monomial(k as usize, C64::new(1.0, 0.0));
    let r = extension_report(&g, &target, scan_opts(cfg))?;
    let results = serde_json::to_value(&r).expect("reports serialize");
    Ok(Report::new(
        "extend",
        &[&k.to_le_bytes(), &config_bytes(cfg)],
        cfg,
        results,
        true,
    ))
}

pub fn scan(path: &Path, cfg: &RunConfig, csv: Option<&Path>) -> Result<Report, CliError> {
    let (f, bytes): (BiPoly, _) = read_json(path)?;
    let s = sphere_sup(&f, scan_opts(cfg))?;
    if let Some(csv) = csv {
        write_scan_csv(&f, cfg.grid_n, csv)?;
    }
    let results = serde_json::to_value(&s).expect("reports serialize");
    Ok(Report::new(
        "scan",
        &[&bytes, &config_bytes(cfg)],
        cfg,
        results,
        true,
    ))
}

fn write_scan_csv(f: &BiPoly, grid_n: usize, path: &Path) -> Result<(), CliError> {
    let wrap = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let grid = scan_grid(f, grid_n)?;
    let mut out = BufWriter::new(fs::File::create(path).map_err(wrap)?);
    writeln!(out, "theta,alpha,beta,modulus").map_err(wrap)?;
    for (i, v) in grid.values().iter().enumerate() {
        let p = grid.point(i);
        writeln!(out, "{},{},{},{}", p.theta, p.alpha, p.beta, v).map_err(wrap)?;
    }
    out.flush().map_err(wrap)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SupportFile {
    Torus { torus: usize },
    Points { points: Vec<[[f64; 2]; 2]> },
}

fn point_of(p: &[[f64; 2]; 2]) -> Point2 {
    [C64::new(p[0][0], p[0][1]), C64::new(p[1][0], p[1][1])]
}

pub fn hull(point: [f64; 4], support_path: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let (support, bytes): (SupportFile, _) = read_json(support_path)?;
    let samples = match support {
        SupportFile::Torus { torus } if torus > 0 => torus_samples(torus),
        SupportFile::Torus { .. } => {
            return Err(CliError::Input("torus size must be positive".into()))
        }
        SupportFile::Points { points } => points.iter().map(point_of).collect(),
    };
    let p = [C64::new(point[0], point[1]), C64::new(point[2], point[3])];
    let verdict = hull_certificate(&p, &samples, &default_witnesses())?;
    let point_bytes: Vec<u8> = point.iter().flat_map(|x| x.to_le_bytes()).collect();
    let results = json!({
        "point": [pair(p[0]), pair(p[1])],
        "support_size": samples.len(),
        "verdict": verdict,
    });
    Ok(Report::new(
        "hull",
        &[&point_bytes, &bytes, &config_bytes(cfg)],
        cfg,
        results,
        true,
    ))
}

#[derive(Deserialize)]
struct PointsFile {
    #[serde(default)]
    zeta: Vec<[f64; 2]>,
    #[serde(default)]
    points: Vec<[[f64; 2]; 2]>,
    poly: Option<BiPoly>,
}

pub fn kernels(
    measure_path: &Path,
    points_path: &Path,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let (spec, measure_bytes): (MeasureSpec, _) = read_json(measure_path)?;
    let (file, point_bytes): (PointsFile, _) = read_json(points_path)?;
    let measure = spec.build()?;
    let points: Vec<Point2> = file
        .zeta
        .iter()
        .map(|z| phi(C64::new(z[0], z[1])))
        .chain(file.points.iter().map(point_of))
        .collect();
    if points.is_empty() {
        return Err(CliError::Input("no points given".into()));
    }
    let growth = if cfg.degrees.len() >= 3 {
        points
            .iter()
            .map(|b| kernel_norm_growth(&measure, b, &cfg.degrees).map(|g| json!(g)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let mut per_degree = Vec::new();
    for &d in &cfg.degrees {
        let space = TruncatedH2::new(&measure, d)?;
        let norms: Vec<Value> = points
            .iter()
            .map(|b| match space.kernel_at(b) {
                Ok(k) => json!(k.norm),
                Err(e) => json!({ "error": e.to_string() }),
            })
            .collect();
        let mut entry = json!({ "degree": d, "rank": space.rank(), "kernel_norms": norms });
        if let Some(f) = &file.poly {
            entry["restricted_norm"] = json!(restricted_norm(&points, f, &space)?);
            let residuals = points
                .iter()
                .map(|b| kernel_eigen_residual(f, b, &space))
                .collect::<Result<Vec<_>, _>>()?;
            entry["eigen_residuals"] = json!(residuals);
        }
        per_degree.push(entry);
    }
    let results = json!({
        "measure_nodes": measure.len(),
        "points": points.iter().map(|p| [pair(p[0]), pair(p[1])]).collect::<Vec<_>>(),
        "growth": growth,
        "growth_is_evidence_only": true,
        "degrees": per_degree,
    });
    Ok(Report::new(
        "kernels",
        &[&measure_bytes, &point_bytes, &config_bytes(cfg)],
        cfg,
        results,
        true,
    ))
}

pub fn verify(cfg: &RunConfig) -> Report {
    let criteria = verify::run_all(cfg);
    let pass = criteria.iter().all(|c| c.pass);
    let results = json!({ "criteria": criteria });
    Report::new("verify", &[&config_bytes(cfg)], cfg, results, pass)
}
