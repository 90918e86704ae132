//! Analysis driver: expands a config into cases, runs them, and emits
//! CSV/JSON tables plus plot-ready profile files.
//!
//! Case iteration is sorted (model, a/h, n), so output files are
//! byte-identical for identical configs regardless of anything else.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assembly::{GlobalSystem, LoadCase, PlateProblem};
use crate::config::{AnalysisConfig, AnalysisKind};
use crate::error::{Error, Result};
use crate::golden;
use crate::material::{GradingType, HomogenizationScheme};
use crate::mesh::build_mesh;
use crate::model::ModelKind;
use crate::report::{
    frequency_parameter, measure_static, nondimensionalize_static, EvaluationPoints, Loading,
    NondimParams, NondimensionalStatic,
};
use crate::solve::{solve_modes, solve_static};
use crate::stress::{FieldEvaluator, ThermalContext};

/// Run metadata attached to every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub evaluation_points: String,
    pub thickness_points: usize,
    pub shear_integration: String,
    /// Constitutive law behind the bending/membrane block per model
    /// family; thermal comparisons depend on it.
    pub stretch_constitutive: String,
    pub ceramic_thermal_expansion: Option<f64>,
}

impl Provenance {
    fn new(config: &AnalysisConfig) -> Result<Self> {
        Ok(Provenance {
            tool: "fgplate".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_hash: config.hash(),
            evaluation_points: config.evaluation_points().describe(),
            thickness_points: config.thickness_points,
            shear_integration: format!("{:?}", config.shear_integration).to_lowercase(),
            stretch_constitutive:
                "3d-isotropic for thickness-stretch models, plane stress otherwise".into(),
            ceramic_thermal_expansion: Some(config.ceramic()?.thermal_expansion),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticRow {
    pub model: String,
    pub grading: String,
    pub ratio: String,
    pub n: f64,
    pub a_over_h: f64,
    pub mesh: String,
    pub scheme: String,
    pub loading: String,
    #[serde(flatten)]
    pub values: NondimensionalStatic,
    pub shear_correction: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalRow {
    pub model: String,
    pub grading: String,
    pub ratio: String,
    pub n: f64,
    pub a_over_h: f64,
    pub mesh: String,
    pub scheme: String,
    pub omega: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub model: String,
    pub grading: String,
    pub ratio: String,
    pub n: f64,
    pub a_over_h: f64,
    pub mesh: String,
    pub omega: Vec<f64>,
    /// |ΔΩ₁| against the previous mesh in the sequence.
    pub delta_omega1: Option<f64>,
    /// Set when refinement did not reduce Ω₁ monotonically.
    pub non_monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileTable {
    pub quantity: String,
    pub model: String,
    pub x_over_a: f64,
    pub y_over_b: f64,
    /// "static" or "mode-k".
    pub source: String,
    pub rows: Vec<ProfilePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub z_over_h: f64,
    pub layer: usize,
    pub value: f64,
}

/// The computed result of one config run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub static_rows: Vec<StaticRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modal_rows: Vec<ModalRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub convergence_rows: Vec<ConvergenceRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<ProfileTable>,
}

impl ResultTable {
    fn empty(config: &AnalysisConfig) -> Result<Self> {
        Ok(ResultTable {
            provenance: Provenance::new(config)?,
            static_rows: Vec::new(),
            modal_rows: Vec::new(),
            convergence_rows: Vec::new(),
            profiles: Vec::new(),
        })
    }
}

/// Sorted sweep cases: model (canonical order), then a/h, then n.
fn cases(config: &AnalysisConfig) -> Vec<(ModelKind, f64, f64)> {
    let mut models: Vec<ModelKind> = config
        .model
        .to_vec()
        .iter()
        .filter_map(|m| ModelKind::parse(m))
        .collect();
    models.dedup();
    let canonical = [
        ModelKind::Hsdt13,
        ModelKind::Hsdt11,
        ModelKind::Hsdt9,
        ModelKind::Fsdt5,
    ];
    models.sort_by_key(|m| canonical.iter().position(|c| c == m).unwrap_or(4));
    let mut ss = config.a_over_h.to_vec();
    ss.sort_by(f64::total_cmp);
    let mut ns = config.layup.n.to_vec();
    ns.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    for &m in &models {
        for &s in &ss {
            for &n in &ns {
                out.push((m, s, n));
            }
        }
    }
    out
}

/// Assemble one case. Geometry is normalized to unit thickness; all
/// reported quantities are nondimensional and independent of the absolute
/// plate size.
fn build_system(
    config: &AnalysisConfig,
    kind: ModelKind,
    s: f64,
    n: f64,
    nx: usize,
    ny: usize,
    load: &LoadCase,
) -> Result<(PlateProblem, GlobalSystem)> {
    let h = 1.0;
    let mesh = build_mesh(s * h, config.b_over_a * s * h, nx, ny)?;
    let layup = config.build_layup(n, h)?;
    let model = config.plate_model(kind)?;
    let problem = PlateProblem::new(mesh, model, layup, config.scheme, config.thickness_points)?
        .with_shear_integration(config.shear_integration);
    let dofs = problem.simply_supported_dofs();
    let system = problem.assemble(&dofs, load)?;
    Ok((problem, system))
}

fn load_case(config: &AnalysisConfig) -> LoadCase {
    match config.load.kind {
        Loading::Mechanical => LoadCase::Mechanical {
            q0: config.load.q0,
            shape: config.load.shape,
            surface: config.load.surface,
        },
        Loading::Thermal => LoadCase::Thermal {
            t0: config.load.t0,
            shape: config.load.shape,
        },
    }
}

fn grading_label(g: GradingType) -> &'static str {
    match g {
        GradingType::TypeA => "type_a",
        GradingType::TypeB => "type_b",
        GradingType::MonolithicFgm => "monolithic",
    }
}

fn scheme_label(s: HomogenizationScheme) -> &'static str {
    match s {
        HomogenizationScheme::RuleOfMixtures => "rule_of_mixtures",
        HomogenizationScheme::MoriTanaka => "mori_tanaka",
    }
}

fn nondim_params(config: &AnalysisConfig, s: f64) -> Result<NondimParams> {
    let metal = config.metal()?;
    Ok(NondimParams {
        s,
        h: 1.0,
        q0: config.load.q0,
        t0: config.load.t0,
        e_ref: config.e_ref(),
        stress_factor: config.nondim.stress_factor,
        e_m: metal.young_modulus,
        alpha_m: metal.thermal_expansion,
    })
}

/// Static bending table, one row per (model, a/h, n).
pub fn run_static(config: &AnalysisConfig) -> Result<ResultTable> {
    let mut table = ResultTable::empty(config)?;
    let load = load_case(config);
    let points = config.evaluation_points();
    for (kind, s, n) in cases(config) {
        let row = static_row(config, kind, s, n, config.mesh.nx, config.mesh.ny, &load, &points)?;
        table.static_rows.push(row);
    }
    Ok(table)
}

#[allow(clippy::too_many_arguments)]
fn static_row(
    config: &AnalysisConfig,
    kind: ModelKind,
    s: f64,
    n: f64,
    nx: usize,
    ny: usize,
    load: &LoadCase,
    points: &EvaluationPoints,
) -> Result<StaticRow> {
    let (problem, system) = build_system(config, kind, s, n, nx, ny, load)?;
    let solution = solve_static(&system).map_err(|e| {
        Error::Solver(format!(
            "{} {} n={n} a/h={s}: {e}",
            kind.name(),
            config.layup.ratio
        ))
    })?;
    let thermal = match *load {
        LoadCase::Thermal { t0, shape } => Some(ThermalContext { t0, shape }),
        _ => None,
    };
    let ev = FieldEvaluator {
        mesh: &problem.mesh,
        model: kind,
        layup: &problem.layup,
        scheme: problem.scheme,
        dofs: &solution.full,
        thermal,
    };
    let raw = measure_static(&ev, points)?;
    let values = nondimensionalize_static(&raw, config.load.kind, &nondim_params(config, s)?)?;
    Ok(StaticRow {
        model: kind.name().into(),
        grading: grading_label(config.layup.grading).into(),
        ratio: config.layup.ratio.clone(),
        n,
        a_over_h: s,
        mesh: format!("{nx}x{ny}"),
        scheme: scheme_label(config.scheme).into(),
        loading: match config.load.kind {
            Loading::Mechanical => "mechanical".into(),
            Loading::Thermal => "thermal".into(),
        },
        values,
        shear_correction: problem.rigidities.shear_correction[0],
        residual: solution.relative_residual,
    })
}

/// Free-vibration table: Ω₁..Ω_m per (model, a/h, n).
pub fn run_modal(config: &AnalysisConfig) -> Result<ResultTable> {
    let mut table = ResultTable::empty(config)?;
    for (kind, s, n) in cases(config) {
        let (_, system) =
            build_system(config, kind, s, n, config.mesh.nx, config.mesh.ny, &LoadCase::None)?;
        let modal = solve_modes(&system, config.modes).map_err(|e| {
            Error::Solver(format!(
                "{} {} n={n} a/h={s}: {e}",
                kind.name(),
                config.layup.ratio
            ))
        })?;
        let omega: Vec<f64> = modal
            .omegas
            .iter()
            .map(|&w| frequency_parameter(w, s, 1.0))
            .collect();
        table.modal_rows.push(ModalRow {
            model: kind.name().into(),
            grading: grading_label(config.layup.grading).into(),
            ratio: config.layup.ratio.clone(),
            n,
            a_over_h: s,
            mesh: format!("{}x{}", config.mesh.nx, config.mesh.ny),
            scheme: scheme_label(config.scheme).into(),
            omega,
        });
    }
    Ok(table)
}

/// Mesh-refinement study over `config.meshes`.
pub fn run_convergence(config: &AnalysisConfig) -> Result<ResultTable> {
    let mut table = ResultTable::empty(config)?;
    for (kind, s, n) in cases(config) {
        let mut prev: Option<f64> = None;
        let mut prev_delta: Option<f64> = None;
        for &m in &config.meshes {
            let (_, system) = build_system(config, kind, s, n, m, m, &LoadCase::None)?;
            let modal = solve_modes(&system, config.modes).map_err(|e| {
                Error::Solver(format!("{} mesh {m}x{m}: {e}", kind.name()))
            })?;
            let omega: Vec<f64> = modal
                .omegas
                .iter()
                .map(|&w| frequency_parameter(w, s, 1.0))
                .collect();
            let delta = prev.map(|p| (omega[0] - p).abs());
            // Refining meshes should not raise the frequency; flag rows
            // that do (and non-shrinking deltas on strict refinement).
            let non_monotone = match (prev, delta, prev_delta) {
                (Some(p), _, _) if omega[0] > p + 1e-12 => true,
                (_, Some(d), Some(pd)) if d > pd + 1e-12 => true,
                _ => false,
            };
            table.convergence_rows.push(ConvergenceRow {
                model: kind.name().into(),
                grading: grading_label(config.layup.grading).into(),
                ratio: config.layup.ratio.clone(),
                n,
                a_over_h: s,
                mesh: format!("{m}x{m}"),
                omega: omega.clone(),
                delta_omega1: delta,
                non_monotone,
            });
            prev_delta = delta;
            prev = Some(omega[0]);
        }
    }
    Ok(table)
}

/// Through-thickness profiles of the static solution or one mode shape.
pub fn run_profile(config: &AnalysisConfig) -> Result<ResultTable> {
    let mut table = ResultTable::empty(config)?;
    let load = load_case(config);
    for (kind, s, n) in cases(config) {
        let (problem, system) =
            build_system(config, kind, s, n, config.mesh.nx, config.mesh.ny, &load)?;
        let (full, source, thermal) = match config.profile.mode {
            None => {
                let sol = solve_static(&system)?;
                let thermal = match load {
                    LoadCase::Thermal { t0, shape } => Some(ThermalContext { t0, shape }),
                    _ => None,
                };
                (sol.full, "static".to_string(), thermal)
            }
            Some(k) => {
                if k == 0 {
                    return Err(Error::Config("profile.mode is 1-based".into()));
                }
                let modal = solve_modes(&system, k)?;
                let free = modal.modes.column(k - 1).clone_owned();
                (system.dofs.expand(&free), format!("mode-{k}"), None)
            }
        };
        let ev = FieldEvaluator {
            mesh: &problem.mesh,
            model: kind,
            layup: &problem.layup,
            scheme: problem.scheme,
            dofs: &full,
            thermal,
        };
        let x = config.profile.x_over_a * problem.mesh.a;
        let y = config.profile.y_over_b * problem.mesh.b;
        for &q in &config.profile.quantities {
            let rows = ev.through_thickness_profile(x, y, q, config.profile.samples_per_layer)?;
            table.profiles.push(ProfileTable {
                quantity: q.name().into(),
                model: kind.name().into(),
                x_over_a: config.profile.x_over_a,
                y_over_b: config.profile.y_over_b,
                source: source.clone(),
                rows: rows
                    .iter()
                    .map(|r| ProfilePoint {
                        z_over_h: r.z,
                        layer: r.layer,
                        value: r.value,
                    })
                    .collect(),
            });
        }
    }
    Ok(table)
}

pub fn run(config: &AnalysisConfig) -> Result<ResultTable> {
    match config.analysis {
        AnalysisKind::Static => run_static(config),
        AnalysisKind::Modal => run_modal(config),
        AnalysisKind::Convergence => run_convergence(config),
        AnalysisKind::Profile => run_profile(config),
    }
}

/// Deterministic base name for output files.
pub fn case_name(config: &AnalysisConfig) -> String {
    if let Some(title) = &config.title {
        let mut s: String = title
            .chars()
            .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '-' })
            .collect();
        s.make_ascii_lowercase();
        return s;
    }
    let analysis = match config.analysis {
        AnalysisKind::Static => "static",
        AnalysisKind::Modal => "modal",
        AnalysisKind::Convergence => "converge",
        AnalysisKind::Profile => "profile",
    };
    format!(
        "{analysis}-{}-{}",
        grading_label(config.layup.grading),
        config.layup.ratio
    )
}

fn fmt5(v: f64) -> String {
    format!("{v:.5}")
}

/// Write `<case>.csv`, `<case>.json` and `<case>-profile-<qty>.csv`;
/// returns the written paths.
pub fn write_outputs(
    table: &ResultTable,
    config: &AnalysisConfig,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let base = case_name(config);
    let mut written = Vec::new();

    let json_path = out_dir.join(format!("{base}.json"));
    let mut file = std::fs::File::create(&json_path)?;
    serde_json::to_writer_pretty(&mut file, table).map_err(|e| Error::Internal(e.to_string()))?;
    file.write_all(b"\n")?;
    written.push(json_path);

    let csv_path = out_dir.join(format!("{base}.csv"));
    let mut w = csv::Writer::from_path(&csv_path).map_err(csv_err)?;
    if !table.static_rows.is_empty() {
        w.write_record([
            "model", "grading", "ratio", "n", "a_over_h", "mesh", "scheme", "loading", "u", "v",
            "w", "sxx", "syy", "sxy", "sxz", "syz", "shear_correction", "eval_points",
        ])
        .map_err(csv_err)?;
        for r in &table.static_rows {
            w.write_record([
                r.model.clone(),
                r.grading.clone(),
                r.ratio.clone(),
                fmt5(r.n),
                fmt5(r.a_over_h),
                r.mesh.clone(),
                r.scheme.clone(),
                r.loading.clone(),
                fmt5(r.values.u),
                fmt5(r.values.v),
                fmt5(r.values.w),
                fmt5(r.values.sxx),
                fmt5(r.values.syy),
                fmt5(r.values.sxy),
                fmt5(r.values.sxz),
                fmt5(r.values.syz),
                fmt5(r.shear_correction),
                table.provenance.evaluation_points.clone(),
            ])
            .map_err(csv_err)?;
        }
    }
    if !table.modal_rows.is_empty() {
        let m = table.modal_rows.iter().map(|r| r.omega.len()).max().unwrap_or(1);
        let mut header = vec![
            "model".to_string(),
            "grading".into(),
            "ratio".into(),
            "n".into(),
            "a_over_h".into(),
            "mesh".into(),
            "scheme".into(),
        ];
        for i in 1..=m {
            header.push(format!("omega_{i}"));
        }
        w.write_record(&header).map_err(csv_err)?;
        for r in &table.modal_rows {
            let mut rec = vec![
                r.model.clone(),
                r.grading.clone(),
                r.ratio.clone(),
                fmt5(r.n),
                fmt5(r.a_over_h),
                r.mesh.clone(),
                r.scheme.clone(),
            ];
            for i in 0..m {
                rec.push(r.omega.get(i).map(|&v| fmt5(v)).unwrap_or_default());
            }
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    if !table.convergence_rows.is_empty() {
        let m = table
            .convergence_rows
            .iter()
            .map(|r| r.omega.len())
            .max()
            .unwrap_or(1);
        let mut header = vec![
            "model".to_string(),
            "grading".into(),
            "ratio".into(),
            "n".into(),
            "a_over_h".into(),
            "mesh".into(),
        ];
        for i in 1..=m {
            header.push(format!("omega_{i}"));
        }
        header.push("delta_omega1".into());
        header.push("non_monotone".into());
        w.write_record(&header).map_err(csv_err)?;
        for r in &table.convergence_rows {
            let mut rec = vec![
                r.model.clone(),
                r.grading.clone(),
                r.ratio.clone(),
                fmt5(r.n),
                fmt5(r.a_over_h),
                r.mesh.clone(),
            ];
            for i in 0..m {
                rec.push(r.omega.get(i).map(|&v| fmt5(v)).unwrap_or_default());
            }
            rec.push(r.delta_omega1.map(|d| format!("{d:.2e}")).unwrap_or_default());
            rec.push(if r.non_monotone { "yes" } else { "no" }.into());
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    if !table.profiles.is_empty() {
        // Summary sheet in the main CSV, one file per quantity below.
        w.write_record(["quantity", "model", "x_over_a", "y_over_b", "source", "samples"])
            .map_err(csv_err)?;
        for p in &table.profiles {
            w.write_record([
                p.quantity.clone(),
                p.model.clone(),
                fmt5(p.x_over_a),
                fmt5(p.y_over_b),
                p.source.clone(),
                p.rows.len().to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush().map_err(Error::Io)?;
    written.push(csv_path);

    for p in &table.profiles {
        let path = out_dir.join(format!("{base}-profile-{}-{}.csv", p.quantity, p.model.to_lowercase()));
        let mut w = csv::Writer::from_path(&path).map_err(csv_err)?;
        w.write_record(["z_over_h", "value", "layer", "model"]).map_err(csv_err)?;
        for r in &p.rows {
            w.write_record([
                format!("{:.6}", r.z_over_h),
                format!("{:.8e}", r.value),
                r.layer.to_string(),
                p.model.clone(),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(Error::Io)?;
        written.push(path);
    }

    Ok(written)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv write: {e}"))
}

/// Outcome of a golden-fixture comparison.
#[derive(Debug, Clone)]
pub struct GoldenReport {
    pub lines: Vec<String>,
    pub checked: usize,
    pub failed: usize,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failed == 0
    }
}

/// Compare computed rows against the bundled benchmark fixtures. Rows
/// without a matching fixture are skipped; the report says how many cells
/// were actually verified.
pub fn check_golden(table: &ResultTable, config: &AnalysisConfig) -> GoldenReport {
    let mut lines = Vec::new();
    let mut checked = 0;
    let mut failed = 0;
    let mut record = |name: String, got: f64, expect: f64, tol: f64| {
        let rel = ((got - expect) / expect).abs();
        let ok = rel <= tol;
        lines.push(format!(
            "{}: {} got {:.5} expected {:.5} ({:+.3}%, tol {:.1}%)",
            if ok { "PASS" } else { "FAIL" },
            name,
            got,
            expect,
            100.0 * (got - expect) / expect,
            100.0 * tol
        ));
        checked += 1;
        if !ok {
            failed += 1;
        }
    };

    for r in &table.modal_rows {
        let kind = ModelKind::parse(&r.model).unwrap_or_default();
        if let Some(g) = golden::find_modal(config.layup.grading, &r.ratio, r.n, r.a_over_h, kind) {
            record(
                format!("omega1 {} {} n={} a/h={}", r.model, r.ratio, r.n, r.a_over_h),
                r.omega[0],
                g.omega1,
                g.tol,
            );
        }
    }

    for r in &table.static_rows {
        let kind = ModelKind::parse(&r.model).unwrap_or_default();
        if config.layup.grading == GradingType::MonolithicFgm
            && config.scheme == HomogenizationScheme::MoriTanaka
        {
            // The Al/SiC validation plate: match by mesh and a/h.
            let nx: usize = r.mesh.split('x').next().and_then(|s| s.parse().ok()).unwrap_or(0);
            if let Some(g) = golden::VALIDATION_MECHANICAL
                .iter()
                .find(|g| (g.a_over_h - r.a_over_h).abs() < 1e-9 && g.mesh == nx)
            {
                let name = format!("validation a/h={} {}", r.a_over_h, r.mesh);
                record(format!("{name} u"), r.values.u, g.u, 0.005);
                record(format!("{name} w"), r.values.w, g.w, 0.005);
                record(format!("{name} sxz"), r.values.sxz, g.sxz, 0.05);
            }
            continue;
        }
        if let Some(g) = golden::find_static(
            config.load.kind,
            &r.ratio,
            r.n,
            r.a_over_h,
            kind,
        ) {
            let name = format!(
                "{} {} {} n={} a/h={}",
                r.loading, r.model, r.ratio, r.n, r.a_over_h
            );
            record(format!("{name} u"), r.values.u, g.u, g.disp_tol);
            record(format!("{name} w"), r.values.w, g.w, g.disp_tol);
            record(format!("{name} sxx"), r.values.sxx, g.sxx, g.stress_tol);
            record(format!("{name} sxy"), r.values.sxy, g.sxy, g.stress_tol);
            // Published thermal shear values sit at an unstated height and
            // do not correspond to the through-thickness extremum reported
            // here, so only the mechanical cells compare it.
            if g.loading == Loading::Mechanical {
                record(format!("{name} sxz"), r.values.sxz, g.sxz, g.stress_tol);
            }
        }
    }

    if !table.convergence_rows.is_empty()
        && config.layup.grading == GradingType::TypeA
        && config.layup.ratio == "2-1-2"
    {
        for r in &table.convergence_rows {
            if r.model != "HSDT13" {
                continue;
            }
            let Some(g) = golden::CONVERGENCE
                .iter()
                .find(|g| (g.n - r.n).abs() < 1e-12 && (g.a_over_h - r.a_over_h).abs() < 1e-9)
            else {
                continue;
            };
            let nx: usize = r.mesh.split('x').next().and_then(|s| s.parse().ok()).unwrap_or(0);
            if let Some(pos) = g.meshes.iter().position(|&m| m == nx) {
                record(
                    format!("converge n={} a/h={} {}", r.n, r.a_over_h, r.mesh),
                    r.omega[0],
                    g.omega1[pos],
                    0.002,
                );
                // Published rows beyond the fourth mode skip genuine
                // in-plane modes (and slot 5 of the a/h=5 row is a solver
                // artifact of the reference), so the automatic check stops
                // at four; the acceptance suite documents the full story.
                if nx == 8 && r.omega.len() >= 4 {
                    for i in 0..4.min(r.omega.len()) {
                        record(
                            format!("converge n={} a/h={} 8x8 omega{}", r.n, r.a_over_h, i + 1),
                            r.omega[i],
                            g.six_modes_8x8[i],
                            0.005,
                        );
                    }
                }
            }
        }
    }

    if checked == 0 {
        lines.push("FAIL: no bundled golden values match this configuration".into());
        failed += 1;
    }
    GoldenReport {
        lines,
        checked,
        failed,
    }
}
