use constant_width::dual::{
    self, complete_linf_exact, complete_to_maximal, is_r_maximal, GridDomain,
};
use constant_width::error::{Error, Result};
use constant_width::export::{
    body_mesh, read_cloud_csv, write_cloud_csv, write_curve_csv, write_curve_svg, write_obj,
    write_off, ProfileSpec,
};
use constant_width::geom::{sample_sphere, DirectionSet, Norm, SphereScheme};
use constant_width::median::{
    build_body, family, r_star_refined, MonomialTerm, OddSeedFunction,
};
use constant_width::planar::{
    barbier_perimeter, containment_residual, curve_from_beta, embed_arc, ArcPiece,
    PlanarCurve,
};
use constant_width::verify::{
    verify_constant_width, verify_convexity, verify_family_continuity,
    verify_r_convexity, CheckEntry, Provenance, VerificationReport,
};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{BufWriter, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Declarative seed description: a named builtin or explicit terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SeedSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coefficient: f64,
    pub exponents: Vec<u32>,
}

impl SeedSpec {
    pub fn builtin(name: &str, eps: Option<f64>) -> Self {
        Self {
            builtin: Some(name.to_string()),
            eps,
            dimension: None,
            terms: None,
            rng_seed: None,
        }
    }

    /// Resolves to a seed, filling defaulted fields in place.
    pub fn resolve_seed(&mut self) -> Result<OddSeedFunction> {
        if let Some(name) = &self.builtin {
            return match name.as_str() {
                "cos3theta" => {
                    let eps = *self.eps.get_or_insert(1.0 / 16.0);
                    Ok(OddSeedFunction::cos3theta(eps))
                }
                "xyz" => {
                    let eps = *self.eps.get_or_insert(0.25);
                    Ok(OddSeedFunction::xyz(eps))
                }
                "random-cubic" => {
                    let eps = *self.eps.get_or_insert(0.2);
                    let rng = *self.rng_seed.get_or_insert(7);
                    Ok(OddSeedFunction::random_odd_cubic(eps, rng))
                }
                other => Err(Error::Config(format!(
                    "unknown builtin seed '{other}' (expected cos3theta, xyz or random-cubic)"
                ))),
            };
        }
        let (Some(dim), Some(terms)) = (self.dimension, &self.terms) else {
            return Err(Error::Config(
                "seed needs either a builtin name or dimension plus terms".into(),
            ));
        };
        OddSeedFunction::symbolic(
            dim,
            terms
                .iter()
                .map(|t| MonomialTerm {
                    coefficient: t.coefficient,
                    exponents: t.exponents.clone(),
                })
                .collect(),
        )
    }
}

/// One job, fully determined by this record. Unknown keys are rejected when
/// parsing from a file; defaults are filled during execution so the emitted
/// effective config reproduces the run exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct JobConfig {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<Norm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_const: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emit_config: Option<PathBuf>,
}

impl JobConfig {
    pub fn empty(command: &str) -> Self {
        Self {
            command: command.to_string(),
            seed: None,
            profile: None,
            r: None,
            k: None,
            lambdas: None,
            lambda_step: None,
            directions: None,
            steps: None,
            grid_step: None,
            norm: None,
            theta_star: None,
            rho_const: None,
            rho_csv: None,
            input: None,
            out: None,
            csv: None,
            report: None,
            tol: None,
            rng_seed: None,
            emit_config: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}

/// What a job produced: the exit status plus the report location.
pub struct Outcome {
    pub passed: bool,
    pub report_path: Option<PathBuf>,
    pub stdout: String,
}

pub fn execute(mut cfg: JobConfig) -> Result<Outcome> {
    let command = cfg.command.clone();
    let (report, stdout) = match command.as_str() {
        "reuleaux" => run_reuleaux(&mut cfg)?,
        "planar" => run_planar(&mut cfg)?,
        "rstar" => run_rstar(&mut cfg)?,
        "construct" => run_construct(&mut cfg)?,
        "family" => run_family(&mut cfg)?,
        "embed-arc" => run_embed_arc(&mut cfg)?,
        "complete" => run_complete(&mut cfg)?,
        "verify" => run_verify(&mut cfg)?,
        other => return Err(Error::Config(format!("unknown command '{other}'"))),
    };

    if let Some(path) = &cfg.emit_config {
        fs::write(path, cfg.to_toml())?;
    }
    let passed = report.as_ref().map(|r| r.passed).unwrap_or(true);
    let report_path = cfg.report.clone();
    if let (Some(report), Some(path)) = (&report, &cfg.report) {
        let combined = serde_json::json!({
            "schema_version": 1,
            "config": serde_json::to_value(&cfg).expect("config serializes"),
            "verification": report,
        });
        fs::write(path, serde_json::to_string_pretty(&combined).expect("json"))?;
    }
    Ok(Outcome {
        passed,
        report_path,
        stdout,
    })
}

fn default_directions(dim: usize, requested: Option<usize>) -> Result<DirectionSet> {
    match dim {
        2 => sample_sphere(2, requested.unwrap_or(2048), SphereScheme::UniformAngle2D),
        3 => sample_sphere(
            3,
            requested.unwrap_or(2562),
            SphereScheme::SubdividedIcosahedron,
        ),
        d => Err(Error::Config(format!("no direction sampling for dimension {d}"))),
    }
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    w.write_all(bytes)?;
    Ok(())
}

fn curve_outputs(cfg: &JobConfig, curve: &PlanarCurve) -> Result<()> {
    if let Some(out) = &cfg.out {
        let mut buf = Vec::new();
        match out.extension().and_then(|e| e.to_str()) {
            Some("svg") => write_curve_svg(&mut buf, curve)?,
            Some("csv") => write_curve_csv(&mut buf, curve)?,
            other => {
                return Err(Error::Config(format!(
                    "unsupported curve output extension {other:?} (use .svg or .csv)"
                )))
            }
        }
        write_out(out, &buf)?;
    }
    if let Some(csv) = &cfg.csv {
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, curve)?;
        write_out(csv, &buf)?;
    }
    Ok(())
}

/// Report entries shared by every planar curve command.
fn planar_checks(
    report: &mut VerificationReport,
    curve: &PlanarCurve,
    r: f64,
    dirs: &DirectionSet,
) -> Result<()> {
    report.push(
        CheckEntry::new("closure", curve.closure_residual(), curve.closure_tolerance())
            .with_witness(serde_json::json!({"endpoint": curve.points().last()})),
    );
    let perimeter = barbier_perimeter(curve)?;
    let barbier_tol = match curve.closure_tolerance() {
        t if t <= 1e-9 * r => 1e-6,
        _ => 1e-5,
    };
    report.push(
        CheckEntry::new(
            "barbier-perimeter",
            (perimeter - std::f64::consts::PI * r).abs(),
            barbier_tol,
        )
        .with_witness(serde_json::json!({"perimeter": perimeter})),
    );
    report.push(CheckEntry::new("antipodal-chord", curve.chord_residual(), 1e-8));
    let steps = curve.half().max(2) as f64;
    let sampling_bound = r * (std::f64::consts::PI / steps).powi(2) / 2.0;
    report.push(verify_constant_width(
        &curve.sample_cloud(),
        r,
        dirs,
        1e-6 + sampling_bound,
    ));
    Ok(())
}

fn run_reuleaux(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let k = cfg.k.ok_or_else(|| Error::Config("reuleaux needs --k".into()))?;
    let r = *cfg.r.get_or_insert(1.0);
    let steps = *cfg.steps.get_or_insert(4096);
    let beta = constant_width::planar::reuleaux_beta(k)?;
    cfg.profile = Some(ProfileSpec::Reuleaux { k });
    let curve = curve_from_beta(&beta, r, steps)?;
    curve_outputs(cfg, &curve)?;
    let dirs = default_directions(2, cfg.directions)?;
    cfg.directions = Some(dirs.len());
    let mut report = VerificationReport::new(
        Provenance::new()
            .record_count("curve-steps", steps as u64)
            .record_count("directions", dirs.len() as u64),
    );
    planar_checks(&mut report, &curve, r, &dirs)?;
    let summary = report.summary();
    Ok((Some(report), summary))
}

fn run_planar(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let spec = cfg
        .profile
        .clone()
        .ok_or_else(|| Error::Config("planar needs a profile".into()))?;
    let beta = spec.to_profile()?;
    let r = *cfg.r.get_or_insert(1.0);
    let steps = *cfg.steps.get_or_insert(4096);
    let curve = curve_from_beta(&beta, r, steps)?;
    curve_outputs(cfg, &curve)?;
    let dirs = default_directions(2, cfg.directions)?;
    cfg.directions = Some(dirs.len());
    let mut report = VerificationReport::new(
        Provenance::new()
            .record_count("curve-steps", steps as u64)
            .record_count("directions", dirs.len() as u64),
    );
    let [cx, cy] = beta.closure_integral();
    report.push(
        CheckEntry::new("profile-admissible", (cx * cx + cy * cy).sqrt(), 1e-7)
            .with_witness(serde_json::json!({"kind": beta.kind_name()})),
    );
    planar_checks(&mut report, &curve, r, &dirs)?;
    let summary = report.summary();
    Ok((Some(report), summary))
}

fn run_rstar(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let seed_spec = cfg
        .seed
        .as_mut()
        .ok_or_else(|| Error::Config("rstar needs --seed".into()))?;
    let seed = seed_spec.resolve_seed()?;
    let initial = *cfg.directions.get_or_insert(if seed.dim() == 2 { 4096 } else { 2562 });
    let rs = r_star_refined(&seed, initial, 1e-4, 70_000)?;
    let line = format!(
        "r_star = {:.12} at direction {:?} ({} samples)\n",
        rs.value,
        rs.worst_direction.coords(),
        rs.sample_count
    );
    let mut report = VerificationReport::new(
        Provenance::new().record_count("directions", rs.sample_count as u64),
    );
    report.push(
        CheckEntry::new("critical-width-sampled", 0.0, 0.0).with_witness(serde_json::json!({
            "r_star": rs.value,
            "direction": rs.worst_direction.coords(),
        })),
    );
    Ok((Some(report), line))
}

fn resolve_body_setup(
    cfg: &mut JobConfig,
) -> Result<(Arc<OddSeedFunction>, DirectionSet, f64)> {
    let seed_spec = cfg
        .seed
        .as_mut()
        .ok_or_else(|| Error::Config("this command needs --seed".into()))?;
    let seed = Arc::new(seed_spec.resolve_seed()?);
    let dirs = default_directions(seed.dim(), cfg.directions)?;
    cfg.directions = Some(dirs.len());
    let r = match cfg.r {
        Some(r) => r,
        None => {
            let rs = r_star_refined(&seed, dirs.len(), 1e-4, 70_000)?;
            let r = 1.05 * rs.value;
            cfg.r = Some(r);
            r
        }
    };
    Ok((seed, dirs, r))
}

fn body_outputs(cfg: &JobConfig, body: &constant_width::median::ConstantWidthBody) -> Result<()> {
    let Some(out) = &cfg.out else {
        return Ok(());
    };
    let mut buf = Vec::new();
    match out.extension().and_then(|e| e.to_str()) {
        Some("off") => {
            let (verts, faces) = body_mesh(body)?;
            write_off(&mut buf, &verts, &faces)?;
        }
        Some("obj") => {
            let (verts, faces) = body_mesh(body)?;
            write_obj(&mut buf, &verts, &faces)?;
        }
        Some("csv") => write_cloud_csv(&mut buf, &body.boundary_cloud())?,
        Some("svg") if body.dim() == 2 => {
            // order planar boundary samples by direction angle
            let dirs = body.samples().directions();
            let mut idx: Vec<usize> = (0..dirs.len()).collect();
            idx.sort_by(|&a, &b| {
                let ta = dirs[a].coords()[1].atan2(dirs[a].coords()[0]);
                let tb = dirs[b].coords()[1].atan2(dirs[b].coords()[0]);
                ta.partial_cmp(&tb).unwrap()
            });
            let pts = body.boundary_points();
            write_polygon_svg(&mut buf, &idx.iter().map(|&i| [pts[i][0], pts[i][1]]).collect::<Vec<_>>())?;
        }
        other => {
            return Err(Error::Config(format!(
                "unsupported body output extension {other:?} (use .off, .obj, .csv or .svg)"
            )))
        }
    }
    write_out(out, &buf)
}

fn write_polygon_svg<W: std::io::Write>(w: &mut W, pts: &[[f64; 2]]) -> Result<()> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for d in 0..2 {
            lo[d] = lo[d].min(p[d]);
            hi[d] = hi[d].max(p[d]);
        }
    }
    let margin = 0.05 * ((hi[0] - lo[0]).max(hi[1] - lo[1])).max(1e-9);
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        lo[0] - margin,
        -(hi[1] + margin),
        (hi[0] - lo[0]) + 2.0 * margin,
        (hi[1] - lo[1]) + 2.0 * margin
    )?;
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{cmd}{} {} ", p[0], -p[1]));
    }
    d.push('Z');
    writeln!(w, r#"  <path d="{d}" fill="none" stroke="black" stroke-width="0.002"/>"#)?;
    writeln!(w, "</svg>")?;
    Ok(())
}

fn run_construct(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let (seed, dirs, r) = resolve_body_setup(cfg)?;
    let body = build_body(&seed, r, &dirs)?;
    body_outputs(cfg, &body)?;
    let mut report = VerificationReport::new(
        Provenance::new().record_count("directions", dirs.len() as u64),
    );
    report.push(CheckEntry::new("antipodal-chord", body.chord_residual(), 1e-9));
    let cloud = body.boundary_cloud();
    report.push(verify_constant_width(&cloud, r, &dirs, 1e-6));
    report.push(verify_convexity(&cloud, 1e-6 * r));
    let summary = report.summary();
    Ok((Some(report), summary))
}

fn run_family(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let (seed, dirs, r) = resolve_body_setup(cfg)?;
    let lambdas: Vec<f64> = match (&cfg.lambdas, cfg.lambda_step) {
        (Some(ls), _) => ls.clone(),
        (None, step) => {
            let step = step.unwrap_or(0.1);
            cfg.lambda_step = Some(step);
            let n = (1.0 / step).round() as usize;
            (0..=n).map(|i| (i as f64 * step).min(1.0)).collect()
        }
    };
    cfg.lambdas = Some(lambdas.clone());
    let bodies = family(&seed, r, &lambdas, &dirs)?;
    if let Some(out) = &cfg.out {
        // one cloud per member, suffixed by the homotopy parameter
        let stem = out
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("body")
            .to_string();
        let ext = out.extension().and_then(|e| e.to_str()).unwrap_or("csv").to_string();
        let parent = out.parent().map(|p| p.to_path_buf()).unwrap_or_default();
        for (body, l) in bodies.iter().zip(&lambdas) {
            let path = parent.join(format!("{stem}-{l:.3}.{ext}"));
            let sub = JobConfig {
                out: Some(path),
                ..cfg.clone()
            };
            body_outputs(&sub, body)?;
        }
    }
    let mut report = VerificationReport::new(
        Provenance::new()
            .record_count("directions", dirs.len() as u64)
            .record_count("family-members", bodies.len() as u64),
    );
    report.push(verify_family_continuity(&bodies, &lambdas, 1e-9));
    for body in [&bodies[0], &bodies[bodies.len() - 1]] {
        report.push(verify_constant_width(
            &body.boundary_cloud(),
            r,
            &dirs,
            1e-6,
        ));
    }
    let summary = report.summary();
    Ok((Some(report), summary))
}

fn run_embed_arc(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let theta_star = cfg
        .theta_star
        .ok_or_else(|| Error::Config("embed-arc needs --theta-star".into()))?;
    let r = *cfg.r.get_or_insert(1.0);
    let steps = *cfg.steps.get_or_insert(8192);
    let piece = match (&cfg.rho_const, &cfg.rho_csv) {
        (Some(rho), None) => ArcPiece::circular(*rho, theta_star),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let mut samples = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let fields: Vec<&str> = line.split(',').map(|f| f.trim()).collect();
                if fields.len() != 2 {
                    return Err(Error::Parse(format!("rho csv line {}: need t,rho", i + 1)));
                }
                if i == 0 && fields[0].parse::<f64>().is_err() {
                    continue; // header row
                }
                let t: f64 = fields[0]
                    .parse()
                    .map_err(|_| Error::Parse(format!("rho csv line {}", i + 1)))?;
                let rho: f64 = fields[1]
                    .parse()
                    .map_err(|_| Error::Parse(format!("rho csv line {}", i + 1)))?;
                samples.push((t, rho));
            }
            ArcPiece::from_samples(samples)?
        }
        _ => {
            return Err(Error::Config(
                "embed-arc needs exactly one of --rho-const or --rho-csv".into(),
            ))
        }
    };
    let embedded = embed_arc(&piece, r, steps)?;
    curve_outputs(cfg, &embedded.curve)?;
    let dirs = default_directions(2, cfg.directions)?;
    cfg.directions = Some(dirs.len());
    let mut report = VerificationReport::new(
        Provenance::new()
            .record_count("curve-steps", steps as u64)
            .record_count("directions", dirs.len() as u64),
    );
    report.push(
        CheckEntry::new(
            "piece-containment",
            containment_residual(&piece, &embedded, 1024),
            1e-6,
        )
        .with_witness(serde_json::json!({"filler": embedded.filler})),
    );
    planar_checks(&mut report, &embedded.curve, r, &dirs)?;
    let summary = report.summary();
    Ok((Some(report), summary))
}

fn run_complete(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let input = cfg
        .input
        .clone()
        .ok_or_else(|| Error::Config("complete needs --in".into()))?;
    let r = cfg.r.ok_or_else(|| Error::Config("complete needs --r".into()))?;
    let norm = *cfg.norm.get_or_insert(Norm::Euclidean);
    let bytes = fs::read(&input)?;
    let cloud = read_cloud_csv(std::io::BufReader::new(&bytes[..]), norm)?;
    let h = match cfg.grid_step {
        Some(h) => h,
        None => {
            let per_axis = if cloud.dim() == 2 { 400 } else { 120 };
            let h = GridDomain::default_step(&cloud, r, per_axis);
            cfg.grid_step = Some(h);
            h
        }
    };
    let grid = GridDomain::from_cloud(&cloud, r, h)?;
    let completed = complete_to_maximal(&cloud, r, &grid)?;
    if let Some(out) = &cfg.out {
        let mut buf = Vec::new();
        write_cloud_csv(&mut buf, &completed)?;
        write_out(out, &buf)?;
    }
    let tol = *cfg.tol.get_or_insert(2.0 * h);
    let check = is_r_maximal(&completed, r, &grid, tol)?;
    let mut report = VerificationReport::new(
        Provenance::new()
            .with_input(&bytes)
            .record_count("grid-points", grid.len() as u64)
            .record_count("input-points", cloud.len() as u64)
            .record_count("completed-points", completed.len() as u64),
    );
    report.push(
        CheckEntry::new("maximality", check.hausdorff, check.tolerance).with_witness(
            serde_json::json!({"witness": check.witness, "grid_step": h}),
        ),
    );
    if norm == Norm::LInfinity {
        let (lo, hi) = complete_linf_exact(&cloud, r)?;
        // the grid path must agree with the closed-form box oracle
        let mut worst = 0.0f64;
        for p in completed.points() {
            for d in 0..completed.dim() {
                worst = worst.max((lo[d] - p[d]).max(p[d] - hi[d]).max(0.0));
            }
        }
        report.push(
            CheckEntry::new("box-oracle-containment", worst, 1e-9).with_witness(
                serde_json::json!({"lo": lo, "hi": hi}),
            ),
        );
    }
    let summary = report.summary();
    Ok((Some(report), summary))
}

fn run_verify(cfg: &mut JobConfig) -> Result<(Option<VerificationReport>, String)> {
    let input = cfg
        .input
        .clone()
        .ok_or_else(|| Error::Config("verify needs --in".into()))?;
    let r = cfg.r.ok_or_else(|| Error::Config("verify needs --r".into()))?;
    let norm = *cfg.norm.get_or_insert(Norm::Euclidean);
    let bytes = fs::read(&input)?;
    let cloud = read_cloud_csv(std::io::BufReader::new(&bytes[..]), norm)?;
    let dirs = default_directions(cloud.dim(), cfg.directions)?;
    cfg.directions = Some(dirs.len());
    let tol = *cfg.tol.get_or_insert(1e-4 * r);
    let rng = *cfg.rng_seed.get_or_insert(7);
    let mut report = VerificationReport::new(
        Provenance::new()
            .with_input(&bytes)
            .record_count("directions", dirs.len() as u64)
            .record_count("input-points", cloud.len() as u64),
    );
    report.push(verify_constant_width(&cloud, r, &dirs, tol));
    report.push(verify_convexity(&cloud, tol));
    let antipodal = dual::check_antipodal_condition(&cloud, r, tol.max(1e-6 * r));
    report.push(
        CheckEntry::new(
            "antipodal-condition",
            antipodal.violations.len() as f64,
            0.0,
        )
        .with_witness(serde_json::json!({
            "violations": antipodal.violations.len(),
            "first": antipodal.violations.first(),
        })),
    );
    report.push(verify_r_convexity(&cloud, r, 512, tol, rng));
    let summary = report.summary();
    Ok((Some(report), summary))
}
