use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use rayon::prelude::*;

use super::config::{ExperimentConfig, OutputFormat, OverlapSetting};
use super::plot::{PlotSpec, Series};
use super::table::{emit_csv, emit_json, emit_plot, table_row, PlotRows, Table};
use super::HarnessError;
use crate::coherence_bounds::{
    c_f, c_l1, c_re_from_measurement, exact_cf_report, exact_l1_report, exact_re_report, BoundInputs, BoundKind,
    QurReport,
};
use crate::shadows::{
    derive_seed, empirical_entropy, measure_counts, qst_counts, qst_reconstruct, repeat_purity, rng_from_seed,
    CountsTable, PuritySummary, ShadowRun,
};
use crate::statekit::{make_rho_tau, purity, MeasBasis, Pauli, QubitState};

const DOMAIN_SHADOW: u64 = 1;
const DOMAIN_QST: u64 = 2;
const DOMAIN_PROJECTIVE: u64 = 3;

/// Slack allowed when checking exact relations.
const EXACT_TOL: f64 = 1e-9;
/// Half-width of the purity acceptance window reported per row.
const PURITY_WINDOW: f64 = 0.1;
/// Overlap of the Pauli Z / X pair used by the l1 and formation experiment.
const L1_CF_OVERLAP: f64 = 0.5;

table_row! {
    /// Shadow versus tomography purity for one `(τ, n_s)` cell.
    pub struct PurityRow {
        pub experiment: &'static str,
        pub tau: f64,
        pub n_s: usize,
        pub repeats: usize,
        pub shots: u64,
        pub p_true: f64,
        pub p_cs_mean: f64,
        pub p_cs_std: f64,
        /// Fraction of repeats with `|P_cs − P_true| < 0.1`.
        pub frac_within_0_1: f64,
        pub p_qst: f64,
        pub abs_diff_qst_cs: f64,
        pub abs_err_cs: f64,
    }
}

table_row! {
    /// Relative-entropy coherence sum and its four lower bounds for one τ.
    pub struct ReQurRow {
        pub experiment: &'static str,
        pub tau: f64,
        /// Requested overlap.
        pub c: f64,
        pub theta_deg: f64,
        /// Overlap of the bases actually measured; bounds use this value.
        pub c_actual: f64,
        pub n_s: usize,
        pub repeats: usize,
        pub shots: u64,
        pub p_true: f64,
        pub p_cs_mean: f64,
        pub p_cs_std: f64,
        pub p_cs_clipped: bool,
        pub s_cs: f64,
        pub h_a: f64,
        pub h_b: f64,
        pub lhs: f64,
        pub yuan: f64,
        pub sanchez: f64,
        pub berta: f64,
        pub korzekwa: f64,
        pub yuan_clamped: f64,
        pub sanchez_clamped: f64,
        pub berta_clamped: f64,
        pub korzekwa_clamped: f64,
        pub s_exact: f64,
        pub lhs_exact: f64,
        pub yuan_exact: f64,
        pub sanchez_exact: f64,
        pub berta_exact: f64,
        pub korzekwa_exact: f64,
    }
}

table_row! {
    /// l1 and formation coherence sums in the Pauli Z and X bases for one τ.
    pub struct L1CfRow {
        pub experiment: &'static str,
        pub tau: f64,
        pub c: f64,
        pub n_s: usize,
        pub repeats: usize,
        pub shots: u64,
        pub p_true: f64,
        pub p_cs_mean: f64,
        pub p_cs_std: f64,
        pub p_cs_clipped: bool,
        pub p_qst: f64,
        pub l1_z: f64,
        pub l1_x: f64,
        pub lhs_l1: f64,
        pub bound_l1: f64,
        pub cf_z: f64,
        pub cf_x: f64,
        pub lhs_cf: f64,
        pub bound_cf: f64,
        pub lhs_l1_exact: f64,
        pub bound_l1_exact: f64,
        pub lhs_cf_exact: f64,
        pub bound_cf_exact: f64,
    }
}

fn by_tau<R>(rows: &[R], tau: impl Fn(&R) -> f64, y: impl Fn(&R) -> f64) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (tau(r), y(r))).collect()
}

impl PlotRows for PurityRow {
    fn plot_spec(rows: &[Self], title: &str) -> PlotSpec {
        let n_max = rows.iter().map(|r| r.n_s).max().unwrap_or(0);
        let rows: Vec<_> = rows.iter().filter(|r| r.n_s == n_max).cloned().collect();
        let tau = |r: &PurityRow| r.tau;
        PlotSpec {
            title: format!("{title} (n_s = {n_max})"),
            x_label: "tau".into(),
            y_label: "purity".into(),
            series: vec![
                Series::new("P_cs", by_tau(&rows, tau, |r| r.p_cs_mean)),
                Series::new("P_qst", by_tau(&rows, tau, |r| r.p_qst)),
                Series::new("P_true", by_tau(&rows, tau, |r| r.p_true)),
            ],
        }
    }
}

impl PlotRows for ReQurRow {
    fn plot_spec(rows: &[Self], title: &str) -> PlotSpec {
        let tau = |r: &ReQurRow| r.tau;
        PlotSpec {
            title: title.into(),
            x_label: "tau".into(),
            y_label: "bits".into(),
            series: vec![
                Series::new("C_re(A) + C_re(B)", by_tau(rows, tau, |r| r.lhs)),
                Series::new("yuan", by_tau(rows, tau, |r| r.yuan_clamped)),
                Series::new("sanchez", by_tau(rows, tau, |r| r.sanchez_clamped)),
                Series::new("berta", by_tau(rows, tau, |r| r.berta_clamped)),
                Series::new("korzekwa", by_tau(rows, tau, |r| r.korzekwa_clamped)),
            ],
        }
    }
}

impl PlotRows for L1CfRow {
    fn plot_spec(rows: &[Self], title: &str) -> PlotSpec {
        let tau = |r: &L1CfRow| r.tau;
        PlotSpec {
            title: title.into(),
            x_label: "tau".into(),
            y_label: "coherence".into(),
            series: vec![
                Series::new("C_l1 sum", by_tau(rows, tau, |r| r.lhs_l1)),
                Series::new("l1 bound", by_tau(rows, tau, |r| r.bound_l1)),
                Series::new("C_f sum", by_tau(rows, tau, |r| r.lhs_cf)),
                Series::new("C_f bound", by_tau(rows, tau, |r| r.bound_cf)),
            ],
        }
    }
}

fn shadow_seed(cfg: &ExperimentConfig, tau_index: usize, n_s: usize) -> u64 {
    derive_seed(cfg.seed, DOMAIN_SHADOW, ((tau_index as u64) << 32) | n_s as u64)
}

fn shadow_purity(cfg: &ExperimentConfig, tau_index: usize, rho: &QubitState, n_s: usize) -> Result<PuritySummary, HarnessError> {
    Ok(repeat_purity(rho, n_s, cfg.repeats, shadow_seed(cfg, tau_index, n_s))?)
}

fn qst_table(cfg: &ExperimentConfig, tau_index: usize, rho: &QubitState) -> Result<CountsTable, HarnessError> {
    let mut rng = rng_from_seed(derive_seed(cfg.seed, DOMAIN_QST, tau_index as u64));
    Ok(qst_counts(rho, cfg.shots_per_basis, &mut rng)?)
}

/// Plug-in entropy of `shots` projective measurements of `rho` in `basis`.
fn measured_entropy(
    cfg: &ExperimentConfig,
    index: (usize, usize, u64),
    rho: &QubitState,
    basis: &MeasBasis,
) -> Result<f64, HarnessError> {
    let (tau_index, c_index, which) = index;
    let stream = ((tau_index as u64) << 32) | ((c_index as u64) << 1) | which;
    let mut rng = rng_from_seed(derive_seed(cfg.seed, DOMAIN_PROJECTIVE, stream));
    let [n0, n1] = measure_counts(rho, basis, cfg.shots_per_basis, &mut rng);
    Ok(empirical_entropy(n0, n1)?)
}

fn states(cfg: &ExperimentConfig) -> Result<Vec<QubitState>, HarnessError> {
    cfg.tau_list.iter().map(|&t| Ok(make_rho_tau(t)?)).collect()
}

fn sorted_grid(cfg: &ExperimentConfig) -> Vec<usize> {
    let mut grid = cfg.n_s_grid.clone();
    grid.sort_unstable();
    grid.dedup();
    grid
}

/// Sorted `(τ index, τ)` pairs; row order follows increasing τ.
fn tau_order(cfg: &ExperimentConfig) -> Vec<(usize, f64)> {
    let mut order: Vec<_> = cfg.tau_list.iter().copied().enumerate().collect();
    order.sort_by(|a, b| a.1.total_cmp(&b.1));
    order
}

/// Shadow and tomography purity for every τ and every `n_s` in the grid.
pub fn run_purity_sweep(cfg: &ExperimentConfig) -> Result<Table<PurityRow>, HarnessError> {
    cfg.validate()?;
    let states = states(cfg)?;
    let p_qst: Vec<f64> = (0..states.len())
        .into_par_iter()
        .map(|i| qst_table(cfg, i, &states[i]).map(|t| purity(&qst_reconstruct(&t))))
        .collect::<Result<_, _>>()?;

    let cells: Vec<(usize, f64, usize)> = tau_order(cfg)
        .into_iter()
        .flat_map(|(i, tau)| sorted_grid(cfg).into_iter().map(move |n| (i, tau, n)))
        .collect();
    let rows = cells
        .into_par_iter()
        .map(|(i, tau, n_s)| {
            let p_true = purity(&states[i]);
            let summary = shadow_purity(cfg, i, &states[i], n_s)?;
            Ok(PurityRow {
                experiment: "purity_sweep",
                tau,
                n_s,
                repeats: cfg.repeats,
                shots: cfg.shots_per_basis,
                p_true,
                p_cs_mean: summary.mean,
                p_cs_std: summary.std,
                frac_within_0_1: summary.fraction_within(p_true, PURITY_WINDOW),
                p_qst: p_qst[i],
                abs_diff_qst_cs: (p_qst[i] - summary.mean).abs(),
                abs_err_cs: (summary.mean - p_true).abs(),
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(Table::new(format!("purity_sweep_seed{}", cfg.seed), rows))
}

fn raw(report: &QurReport, kind: BoundKind) -> f64 {
    report.get(kind).map(|b| b.raw).unwrap_or(f64::NAN)
}

fn clamped(report: &QurReport, kind: BoundKind) -> f64 {
    report.get(kind).map(|b| b.clamped).unwrap_or(f64::NAN)
}

fn re_row(
    cfg: &ExperimentConfig,
    setting: &OverlapSetting,
    c_index: usize,
    tau_index: usize,
    tau: f64,
    rho: &QubitState,
) -> Result<ReQurRow, HarnessError> {
    let (a, b) = (setting.basis_a(), setting.basis_b());
    let summary = shadow_purity(cfg, tau_index, rho, cfg.n_s)?;
    let (inputs, clipped) = BoundInputs::from_estimated_purity(summary.mean, setting.c_actual)?;
    let h_a = measured_entropy(cfg, (tau_index, c_index, 0), rho, &a)?;
    let h_b = measured_entropy(cfg, (tau_index, c_index, 1), rho, &b)?;
    let lhs = c_re_from_measurement(h_a, inputs.entropy) + c_re_from_measurement(h_b, inputs.entropy);
    let measured = QurReport::relative_entropy(lhs, inputs, clipped)?;
    let exact = exact_re_report(rho, &a, &b)?;

    use BoundKind::{Berta, Korzekwa, Sanchez, Yuan};
    Ok(ReQurRow {
        experiment: "re_bounds",
        tau,
        c: setting.c,
        theta_deg: setting.theta_deg,
        c_actual: setting.c_actual,
        n_s: cfg.n_s,
        repeats: cfg.repeats,
        shots: cfg.shots_per_basis,
        p_true: purity(rho),
        p_cs_mean: summary.mean,
        p_cs_std: summary.std,
        p_cs_clipped: clipped,
        s_cs: inputs.entropy,
        h_a,
        h_b,
        lhs,
        yuan: raw(&measured, Yuan),
        sanchez: raw(&measured, Sanchez),
        berta: raw(&measured, Berta),
        korzekwa: raw(&measured, Korzekwa),
        yuan_clamped: clamped(&measured, Yuan),
        sanchez_clamped: clamped(&measured, Sanchez),
        berta_clamped: clamped(&measured, Berta),
        korzekwa_clamped: clamped(&measured, Korzekwa),
        s_exact: exact.inputs.entropy,
        lhs_exact: exact.lhs,
        yuan_exact: raw(&exact, Yuan),
        sanchez_exact: raw(&exact, Sanchez),
        berta_exact: raw(&exact, Berta),
        korzekwa_exact: raw(&exact, Korzekwa),
    })
}

/// One relative-entropy table per requested overlap, in `c_list` order.
pub fn run_re_qur(cfg: &ExperimentConfig) -> Result<Vec<Table<ReQurRow>>, HarnessError> {
    cfg.validate()?;
    let states = states(cfg)?;
    cfg.overlap_settings()
        .iter()
        .enumerate()
        .map(|(c_index, setting)| {
            let rows = tau_order(cfg)
                .into_par_iter()
                .map(|(i, tau)| re_row(cfg, setting, c_index, i, tau, &states[i]))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Table::new(format!("re_bounds_c{:.2}_seed{}", setting.c, cfg.seed), rows))
        })
        .collect()
}

fn l1_cf_row(cfg: &ExperimentConfig, tau_index: usize, tau: f64, rho: &QubitState) -> Result<L1CfRow, HarnessError> {
    let (z, x) = (MeasBasis::pauli(Pauli::Z), MeasBasis::pauli(Pauli::X));
    let summary = shadow_purity(cfg, tau_index, rho, cfg.n_s)?;
    let (inputs, clipped) = BoundInputs::from_estimated_purity(summary.mean, L1_CF_OVERLAP)?;
    let rho_qst = qst_reconstruct(&qst_table(cfg, tau_index, rho)?);

    let (l1_z, l1_x) = (c_l1(&rho_qst, &z), c_l1(&rho_qst, &x));
    let (cf_z, cf_x) = (c_f(&rho_qst, &z), c_f(&rho_qst, &x));
    let l1 = QurReport::l1(l1_z + l1_x, inputs, clipped)?;
    let cf = QurReport::formation(cf_z + cf_x, inputs, clipped)?;
    let l1_exact = exact_l1_report(rho, &z, &x)?;
    let cf_exact = exact_cf_report(rho, &z, &x)?;

    Ok(L1CfRow {
        experiment: "l1_cf",
        tau,
        c: L1_CF_OVERLAP,
        n_s: cfg.n_s,
        repeats: cfg.repeats,
        shots: cfg.shots_per_basis,
        p_true: purity(rho),
        p_cs_mean: summary.mean,
        p_cs_std: summary.std,
        p_cs_clipped: clipped,
        p_qst: purity(&rho_qst),
        l1_z,
        l1_x,
        lhs_l1: l1.lhs,
        bound_l1: raw(&l1, BoundKind::L1),
        cf_z,
        cf_x,
        lhs_cf: cf.lhs,
        bound_cf: raw(&cf, BoundKind::Cf),
        lhs_l1_exact: l1_exact.lhs,
        bound_l1_exact: raw(&l1_exact, BoundKind::L1),
        lhs_cf_exact: cf_exact.lhs,
        bound_cf_exact: raw(&cf_exact, BoundKind::Cf),
    })
}

/// l1 and formation relations in the Pauli Z / X bases.
pub fn run_l1_cf(cfg: &ExperimentConfig) -> Result<Table<L1CfRow>, HarnessError> {
    cfg.validate()?;
    let states = states(cfg)?;
    let rows = tau_order(cfg)
        .into_par_iter()
        .map(|(i, tau)| l1_cf_row(cfg, i, tau, &states[i]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Table::new(format!("l1_cf_c{:.2}_seed{}", L1_CF_OVERLAP, cfg.seed), rows))
}

fn ensure_out_dir(cfg: &ExperimentConfig) -> Result<(), HarnessError> {
    fs::create_dir_all(&cfg.out).map_err(|source| HarnessError::Io { path: cfg.out.clone(), source })
}

/// Writes `table` in the configured format, plus an SVG when plotting is on.
pub fn write_table<R: PlotRows>(table: &Table<R>, cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, HarnessError> {
    ensure_out_dir(cfg)?;
    let data = cfg.out.join(format!("{}.{}", table.name, cfg.format.extension()));
    match cfg.format {
        OutputFormat::Csv => emit_csv(table, &data)?,
        OutputFormat::Json => emit_json(table, &data)?,
    }
    let mut written = vec![data];
    if cfg.plot {
        let svg = cfg.out.join(format!("{}.svg", table.name));
        emit_plot(table, &svg)?;
        written.push(svg);
    }
    Ok(written)
}

/// Writes the first shadow run of every τ at `n_s` in the audit format.
pub fn dump_snapshots(cfg: &ExperimentConfig) -> Result<Vec<PathBuf>, HarnessError> {
    ensure_out_dir(cfg)?;
    let states = states(cfg)?;
    tau_order(cfg)
        .into_iter()
        .map(|(i, tau)| {
            let run = ShadowRun::sample(&states[i], cfg.n_s, shadow_seed(cfg, i, cfg.n_s));
            let path = cfg.out.join(format!("snapshots_tau{tau:.2}_ns{}_seed{}.txt", cfg.n_s, cfg.seed));
            let file = File::create(&path).map_err(|source| HarnessError::Io { path: path.clone(), source })?;
            run.write_audit(BufWriter::new(file))
                .map_err(|source| HarnessError::Io { path: path.clone(), source })?;
            Ok(path)
        })
        .collect()
}

/// Outcome of one experiment: a one-line description and the files written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub line: String,
    pub files: Vec<PathBuf>,
}

fn file_list(files: &[PathBuf]) -> String {
    files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(", ")
}

pub(crate) fn purity_summary(cfg: &ExperimentConfig) -> Result<RunSummary, HarnessError> {
    let table = run_purity_sweep(cfg)?;
    let files = write_table(&table, cfg)?;
    let n_max = sorted_grid(cfg).last().copied().unwrap_or(0);
    let top: Vec<_> = table.rows.iter().filter(|r| r.n_s == n_max).collect();
    let mean = |f: fn(&PurityRow) -> f64| top.iter().map(|r| f(r)).sum::<f64>() / top.len() as f64;
    let line = format!(
        "purity-sweep: {} rows; at n_s={n_max} mean |P_cs - P_true| = {:.4}, mean |P_qst - P_cs| = {:.4} -> {}",
        table.len(),
        mean(|r| r.abs_err_cs),
        mean(|r| r.abs_diff_qst_cs),
        file_list(&files),
    );
    Ok(RunSummary { line, files })
}

pub(crate) fn re_summaries(cfg: &ExperimentConfig) -> Result<Vec<RunSummary>, HarnessError> {
    run_re_qur(cfg)?
        .iter()
        .map(|table| {
            let files = write_table(table, cfg)?;
            let exact_ok = table
                .rows
                .iter()
                .filter(|r| {
                    [r.yuan_exact, r.sanchez_exact, r.berta_exact, r.korzekwa_exact]
                        .iter()
                        .all(|&b| r.lhs_exact >= b - EXACT_TOL)
                })
                .count();
            let measured_ok = table
                .rows
                .iter()
                .filter(|r| {
                    [r.yuan_clamped, r.sanchez_clamped, r.berta_clamped, r.korzekwa_clamped]
                        .iter()
                        .all(|&b| r.lhs >= b)
                })
                .count();
            let first = &table.rows[0];
            let line = format!(
                "re-bounds c={:.2} (theta={:.2} deg, c_actual={:.6}): {} rows; exact relations hold on {exact_ok}/{n}, \
                 measured lhs above every bound on {measured_ok}/{n} -> {}",
                first.c,
                first.theta_deg,
                first.c_actual,
                table.len(),
                file_list(&files),
                n = table.len(),
            );
            Ok(RunSummary { line, files })
        })
        .collect()
}

pub(crate) fn l1_cf_summary(cfg: &ExperimentConfig) -> Result<RunSummary, HarnessError> {
    let table = run_l1_cf(cfg)?;
    let files = write_table(&table, cfg)?;
    let n = table.len();
    let exact_ok = table
        .rows
        .iter()
        .filter(|r| r.lhs_l1_exact >= r.bound_l1_exact - EXACT_TOL && r.lhs_cf_exact >= r.bound_cf_exact - EXACT_TOL)
        .count();
    let measured_ok = table
        .rows
        .iter()
        .filter(|r| r.lhs_l1 >= r.bound_l1 && r.lhs_cf >= r.bound_cf)
        .count();
    let line = format!(
        "l1-cf c={L1_CF_OVERLAP:.2}: {n} rows; exact relations hold on {exact_ok}/{n}, measured on {measured_ok}/{n} -> {}",
        file_list(&files),
    );
    Ok(RunSummary { line, files })
}

/// Runs every experiment and writes all outputs.
pub fn run_all(cfg: &ExperimentConfig) -> Result<Vec<RunSummary>, HarnessError> {
    let mut out = vec![purity_summary(cfg)?];
    out.extend(re_summaries(cfg)?);
    out.push(l1_cf_summary(cfg)?);
    if cfg.dump_snapshots {
        out.push(snapshot_summary(cfg)?);
    }
    Ok(out)
}

pub(crate) fn snapshot_summary(cfg: &ExperimentConfig) -> Result<RunSummary, HarnessError> {
    let files = dump_snapshots(cfg)?;
    Ok(RunSummary {
        line: format!("snapshots: {} files in {}", files.len(), cfg.out.display()),
        files,
    })
}
