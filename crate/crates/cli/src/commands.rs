use std::path::Path;

use plstat_core::density::estimated_risk;
use plstat_core::inference::CiMethod;
use plstat_core::landscape::{
    landscape_from_diagram, sample_from_diagrams, FunctionalSpec, Sample,
};
use plstat_core::pipeline::{
    density_files, density_stage, generate_cloud, infer, run_pipeline, summary_table,
    DensitySettings, InferenceSettings,
};
use plstat_core::rips::{
    build_rips, compute_persistence_with, distance_matrix, PersistenceDiagram,
};
use plstat_core::sampling::{load_csv, ColumnSelector, Subsample};
use plstat_core::{Error, Result, RngStream};

use crate::args::*;

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sample(a) => sample(a),
        Command::Persistence(a) => persistence(a),
        Command::Landscape(a) => landscape(a),
        Command::Ci(a) => ci(a),
        Command::Density(a) => density(a),
        Command::Risk(a) => risk(a),
        Command::Pipeline(a) => pipeline(a),
    }
}

/// Writes to `path`, or standard output when there is none.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn sample(a: SampleArgs) -> Result<()> {
    let cfg = a.config.resolve()?;
    if a.count == 0 {
        return Err(Error::domain("--count must be at least 1"));
    }
    if a.count == 1 {
        let cloud = generate_cloud(&cfg, a.index)?;
        return write_file(&a.out, &cloud.to_csv_string());
    }
    for i in a.index..a.index + a.count {
        let cloud = generate_cloud(&cfg, i).map_err(|e| Error::at_index(i as usize, e))?;
        write_file(
            &a.out.join(format!("cloud_{i:03}.csv")),
            &cloud.to_csv_string(),
        )?;
    }
    Ok(())
}

fn persistence(a: PersistenceArgs) -> Result<()> {
    // Every row is kept, so the stream is never drawn from.
    let cloud = load_csv(
        &a.input,
        &ColumnSelector::All,
        Subsample::All,
        RngStream::new(0, 0),
    )?;
    let dm = distance_matrix(&cloud)?;
    let fc = build_rips(&dm, a.max_scale, a.max_dim, a.simplex_cap)?;
    let diagram = compute_persistence_with(&fc, a.reduction.into());
    emit(a.out.as_deref(), &diagram.to_csv_string())
}

fn landscape(a: LandscapeArgs) -> Result<()> {
    let diagrams = a
        .inputs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            PersistenceDiagram::read_csv(p, a.max_scale).map_err(|e| Error::at_index(i, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = FunctionalSpec {
        dim: a.homology_dim,
        levels: a.k,
        bound: a.bound,
        t_min: a.t_min,
        t_max: a.t_max,
    };
    if let Some(path) = &a.curve_out {
        let ls = landscape_from_diagram(
            &diagrams[0],
            spec.dim,
            spec.levels,
            (spec.t_min, spec.t_max),
        )?;
        write_file(path, &ls.to_csv_string())?;
    }
    let sample = sample_from_diagrams(&diagrams, &spec)?;
    emit(a.out.as_deref(), &sample.to_csv_string())
}

fn wanted(method: MethodArg, ci: CiMethod) -> bool {
    match method {
        MethodArg::All => true,
        MethodArg::NormalTheory => ci == CiMethod::NormalTheory,
        MethodArg::Delta => ci == CiMethod::Delta,
        MethodArg::BootNormal => ci == CiMethod::BootNormal,
        MethodArg::BootPivotal => ci == CiMethod::BootPivotal,
        MethodArg::BootStudentized => ci == CiMethod::BootStudentized,
        MethodArg::BootPercentile => ci == CiMethod::BootPercentile,
    }
}

fn ci(a: CiArgs) -> Result<()> {
    let sample = Sample::read_csv(&a.input)?;
    let settings = InferenceSettings {
        alpha: a.alpha,
        bootstrap_b: a.bootstrap_b,
        mode: a.mode.into(),
        inner_b: a.inner_b,
        statistic: a.statistic.into(),
        influence: a.influence.into(),
        master_seed: a.seed,
    };
    let (mut set, run) = infer(&sample, settings)?;
    set.intervals.retain(|ci| wanted(a.method, ci.method));
    if let Some(path) = &a.replicates_out {
        write_file(path, &run.to_csv_string())?;
    }
    if let Some(path) = &a.table_out {
        write_file(path, &summary_table(&set, None))?;
    }
    emit(a.out.as_deref(), &(set.to_json() + "\n"))
}

fn density(a: DensityArgs) -> Result<()> {
    let sample = Sample::read_csv(&a.input)?;
    let settings = DensitySettings {
        kernel: a.kernel.into(),
        h_min: a.h_min,
        h_max: a.h_max,
        h_step: a.h_step,
        alpha: a.alpha,
    };
    let report = density_stage(sample.values(), settings)?;
    match &a.out_dir {
        Some(dir) => {
            for (name, text) in density_files(&report) {
                write_file(&dir.join(name), &text)?;
            }
            println!("h_cv = {}", report.risk.h_cv);
            Ok(())
        }
        None => emit(None, &(report.risk.to_json() + "\n")),
    }
}

fn risk(a: RiskArgs) -> Result<()> {
    let terms = estimated_risk(
        a.n,
        a.h,
        a.int_fprime_sq,
        a.mode.into(),
        a.kernel.map(Into::into),
        a.int_fsecond_sq,
    )?;
    println!(
        "{}",
        serde_json::to_string_pretty(&terms).expect("risk serialises")
    );
    Ok(())
}

fn pipeline(a: PipelineArgs) -> Result<()> {
    let cfg = a.config.resolve()?;
    let bundle = run_pipeline(&cfg)?;
    let s = &bundle.stats;
    println!("output: {}", bundle.output_dir.display());
    println!("sample: n = {}, mean = {}, sd = {}", s.n, s.mean, s.sd);
    print!(
        "{}",
        summary_table(&bundle.intervals, Some(bundle.kde_interval()))
    );
    Ok(())
}
