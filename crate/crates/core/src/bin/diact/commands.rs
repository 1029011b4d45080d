use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use diact::csv_format::{
    read_matrix_csv, read_vector_csv, write_matrix_csv, LabeledMatrix, ORIENTATION_COMMENT,
};
use diact::datasets::{self, regression_compare, Deviation};
use diact::heatmap::render_heatmap;
use diact::report::{round_sig, AnalysisReport, ImpactEntry, MatrixEntry};
use diact::{
    impact, legacy_indirect, requirements, subthroughflow, transactions, verify_system,
    DemandSegment, Error, Frame, ImpactKind, IoSystem, Kind, LegacyVariant, MakeUseTables, Matrix,
    SystemOptions, Vector,
};
use serde_json::json;

use crate::{
    Command, FixturesAction, FormatArg, FrameArg, ImpactArgs, ImpactKindArg, InputArgs, KindArg,
    LegacyArg, MatrixArg, RequirementsArgs, SegmentFrameArg,
};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Parse(_) | Error::Io(_) | Error::UnknownFixture(_) | Error::MissingPublished { .. } => 2,
            Error::Unsupported(_) => 4,
            Error::NoConvergence { .. } | Error::OracleMismatch(_) => 5,
            _ => 3,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Derive { input, out } => derive(&input, out.as_deref()),
        Command::Requirements(args) => requirements_cmd(&args),
        Command::Impact(args) => impact_cmd(&args),
        Command::Fixtures { action } => match action {
            FixturesAction::List => fixtures_list(),
            FixturesAction::Run { tol } => fixtures_run(tol),
        },
        Command::Oracle { input, tol, out } => oracle(&input, tol, out.as_deref()),
    }
}

fn load_system(input: &InputArgs) -> Result<IoSystem, Failure> {
    let opts = SystemOptions {
        allow_negative_demand: input.allow_negative_demand,
    };
    let demand = |labels: &[String]| -> Result<Option<Vector>, Failure> {
        let Some(path) = &input.final_demand else {
            return Ok(None);
        };
        let v = read_vector_csv(path)?;
        if v.labels != labels {
            return Err(Error::DimensionMismatch(format!(
                "final-demand labels {:?} do not match sector labels {:?}",
                v.labels, labels
            ))
            .into());
        }
        Ok(Some(v.values))
    };
    let need_demand = |f: Option<Vector>, what: &str| {
        f.ok_or_else(|| Failure::usage(format!("--final-demand is required with {what}")))
    };

    if let Some(path) = &input.transactions {
        let z = square_input(path)?;
        let f = need_demand(demand(&z.row_labels)?, "--transactions")?;
        return Ok(IoSystem::from_transactions_with(z.values, f, z.row_labels, opts)?);
    }
    if let Some(path) = &input.coefficients {
        let a = square_input(path)?;
        let f = demand(&a.row_labels)?.unwrap_or_else(|| Vector::ones(a.values.rows()));
        return Ok(IoSystem::from_coefficients_with(a.values, f, a.row_labels, opts)?);
    }
    if let (Some(u), Some(v)) = (&input.use_table, &input.make) {
        let u = read_matrix_csv(u)?;
        let v = read_matrix_csv(v)?;
        if v.col_labels != u.row_labels || v.row_labels != u.col_labels {
            return Err(Error::DimensionMismatch(
                "make table labels must mirror the use table (industries by commodities)".into(),
            )
            .into());
        }
        let tables = MakeUseTables::new(u.values, v.values, u.row_labels, u.col_labels)?;
        let f = need_demand(demand(tables.industry_names())?, "--use/--make")?;
        let a = diact::coefficients_from_make_use(&tables)?;
        return Ok(IoSystem::from_coefficients_with(
            a,
            f,
            tables.industry_names().to_vec(),
            opts,
        )?);
    }
    if let Some(name) = &input.fixture {
        let fix = datasets::load(name)?;
        let f = match demand(&fix.sector_names)? {
            Some(f) => f,
            None => fix
                .final_demand
                .clone()
                .unwrap_or_else(|| Vector::ones(fix.a.rows())),
        };
        return Ok(IoSystem::from_coefficients_with(fix.a, f, fix.sector_names, opts)?);
    }
    Err(Failure::usage(
        "an input is required: --transactions, --coefficients, --use/--make or --fixture",
    ))
}

fn square_input(path: &Path) -> Result<LabeledMatrix, Failure> {
    let m = read_matrix_csv(path)?;
    if m.values.rows() != m.values.cols() {
        return Err(Error::NotSquare {
            rows: m.values.rows(),
            cols: m.values.cols(),
        }
        .into());
    }
    if m.row_labels != m.col_labels {
        return Err(Error::Parse(format!(
            "{}: row and column sector labels differ",
            path.display()
        ))
        .into());
    }
    Ok(m)
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())).into()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Io(e.to_string()).into())
        }
    }
}

fn derive(input: &InputArgs, out: Option<&Path>) -> CmdResult {
    let sys = load_system(input)?;
    let mut report = AnalysisReport::for_system(&sys)?;
    report.matrices.extend([
        MatrixEntry::plain("transactions", sys.transactions()),
        MatrixEntry::plain("coefficients", sys.coefficients()),
        MatrixEntry::plain("leontief", sys.leontief()),
        MatrixEntry::plain("subthroughflow", &subthroughflow(&sys).values),
    ]);
    emit(out, &report.to_json()?)
}

fn kinds(arg: KindArg) -> Vec<Kind> {
    match arg {
        KindArg::Direct => vec![Kind::Direct],
        KindArg::Indirect => vec![Kind::Indirect],
        KindArg::Transfer => vec![Kind::Transfer],
        KindArg::All => Kind::ALL.to_vec(),
    }
}

fn frames(arg: FrameArg) -> Vec<Frame> {
    match arg {
        FrameArg::Simple => vec![Frame::Simple],
        FrameArg::Composite => vec![Frame::Composite],
        FrameArg::All => Frame::ALL.to_vec(),
    }
}

fn legacy_variant(arg: LegacyArg) -> LegacyVariant {
    match arg {
        LegacyArg::E1 => LegacyVariant::E1,
        LegacyArg::E2 => LegacyVariant::E2,
        LegacyArg::E3 => LegacyVariant::E3,
        LegacyArg::E4 => LegacyVariant::E4,
    }
}

struct Emitted {
    stem: String,
    entry: MatrixEntry,
    values: Matrix,
}

fn requirements_cmd(args: &RequirementsArgs) -> CmdResult {
    let sys = load_system(&args.input)?;
    let name = match args.matrix {
        MatrixArg::Requirements => "requirements",
        MatrixArg::Transactions => "transactions",
    };

    let emitted: Vec<Emitted> = match args.legacy {
        Some(arg) => {
            let variant = legacy_variant(arg);
            let values = legacy_indirect(&sys, variant);
            vec![Emitted {
                stem: format!("legacy-{variant}"),
                entry: MatrixEntry::legacy(variant, &values),
                values,
            }]
        }
        None => {
            let mut v = Vec::new();
            for frame in frames(args.frame) {
                for kind in kinds(args.kind) {
                    let values = match args.matrix {
                        MatrixArg::Requirements => requirements(&sys, kind, frame).values,
                        MatrixArg::Transactions => transactions(&sys, kind, frame).values,
                    };
                    v.push(Emitted {
                        stem: format!("{name}-{kind}-{frame}"),
                        entry: MatrixEntry::tagged(name, kind, frame, &values),
                        values,
                    });
                }
            }
            v
        }
    };

    let labels = sys.sector_names();
    let labeled = |m: &Matrix| LabeledMatrix::square(labels, m.clone());

    if let Some(dir) = &args.out_dir {
        create_dir(dir)?;
    }
    if let Some(svg) = &args.heatmap {
        for e in &emitted {
            let path = if emitted.len() == 1 {
                svg.clone()
            } else {
                suffixed(svg, &e.stem)
            };
            let text = render_heatmap(&e.stem, &labeled(&e.values)?);
            emit(Some(&path), &text)?;
        }
    }

    match (args.format, &args.out_dir) {
        (FormatArg::Json, dir) => {
            let mut report = AnalysisReport::for_system(&sys)?;
            report.matrices = emitted.into_iter().map(|e| e.entry).collect();
            let out = dir.as_ref().map(|d| d.join("report.json"));
            emit(out.as_deref().or(args.out.as_deref()), &report.to_json()?)
        }
        (FormatArg::Csv, Some(dir)) => {
            let mut files = Vec::new();
            for e in &emitted {
                let file = format!("{}.csv", e.stem);
                emit(Some(&dir.join(&file)), &csv_text(&labeled(&e.values)?)?)?;
                files.push(json!({
                    "file": file,
                    "name": e.entry.name,
                    "kind": e.entry.kind,
                    "frame": e.entry.frame,
                    "legacy": e.entry.legacy,
                }));
            }
            let manifest = json!({
                "orientation": ORIENTATION_COMMENT,
                "n": sys.n(),
                "sector_names": labels,
                "matrices": files,
            });
            let mut text = serde_json::to_string_pretty(&manifest)
                .map_err(|e| Failure::from(Error::Io(e.to_string())))?;
            text.push('\n');
            emit(Some(&dir.join("manifest.json")), &text)
        }
        (FormatArg::Csv, None) => {
            if emitted.len() != 1 {
                return Err(Failure::usage(format!(
                    "{} matrices requested; use --out-dir or --format json",
                    emitted.len()
                )));
            }
            emit(args.out.as_deref(), &csv_text(&labeled(&emitted[0].values)?)?)
        }
    }
}

fn suffixed(path: &Path, stem: &str) -> PathBuf {
    let base = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{base}-{stem}.svg"))
}

fn create_dir(dir: &Path) -> CmdResult {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())).into())
}

fn csv_text(m: &LabeledMatrix) -> Result<String, Failure> {
    let mut buf = Vec::new();
    write_matrix_csv(&mut buf, m)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()).into())
}

fn impact_cmd(args: &ImpactArgs) -> CmdResult {
    let sys = load_system(&args.input)?;
    let seg = read_vector_csv(&args.segment)?;
    if seg.labels != sys.sector_names() {
        return Err(Error::DimensionMismatch(format!(
            "segment labels {:?} do not match sector labels {:?}",
            seg.labels,
            sys.sector_names()
        ))
        .into());
    }
    let frame = match args.frame {
        SegmentFrameArg::Simple => Frame::Simple,
        SegmentFrameArg::Composite => Frame::Composite,
    };
    let kind = match args.kind {
        ImpactKindArg::Direct => ImpactKind::Direct,
        ImpactKindArg::Indirect => ImpactKind::Indirect,
        ImpactKindArg::Transfer => ImpactKind::Transfer,
        ImpactKindArg::Cumulative => ImpactKind::Cumulative,
    };
    let segment = DemandSegment::with_negative(frame, seg.values, args.allow_negative)?;
    let result = impact(&sys, &segment, kind)?;
    let mut report = AnalysisReport::for_system(&sys)?;
    report.impacts.push(ImpactEntry::new(segment.delta(), &result));
    emit(args.out.as_deref(), &report.to_json()?)
}

fn fixtures_list() -> CmdResult {
    let mut text = String::new();
    for name in datasets::catalog()? {
        text.push_str(&name);
        text.push('\n');
    }
    emit(None, &text)
}

fn check_fixture(name: &str, tol: f64) -> Result<Vec<Deviation>, Error> {
    let fix = datasets::load(name)?;
    let sys = fix.system()?;
    Kind::ALL
        .into_iter()
        .filter(|k| fix.published(*k).is_some())
        .map(|k| regression_compare(&fix, &requirements(&sys, k, Frame::Simple), tol))
        .collect()
}

fn fixtures_run(tol: f64) -> CmdResult {
    if tol.is_nan() || tol < 0.0 {
        return Err(Failure::usage("--tol must be a nonnegative number"));
    }
    let names = datasets::catalog()?;
    let results: Vec<Result<Vec<Deviation>, Error>> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| s.spawn(move || check_fixture(name, tol)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture worker panicked"))
            .collect()
    });

    let mut out = String::new();
    let mut first_failure: Option<Deviation> = None;
    for (name, result) in names.iter().zip(results) {
        let deviations = result.map_err(|e| match e {
            Error::Parse(_) | Error::Io(_) => Failure::from(e),
            other => Failure {
                code: 5,
                message: format!("fixture {name}: {other}"),
            },
        })?;
        for d in deviations {
            out.push_str(&format!(
                "{:<14} {:<9} max {:.3e}  median {:.3e}  {}\n",
                d.fixture,
                d.kind,
                d.max_abs,
                d.median_abs,
                if d.within_tolerance { "ok" } else { "FAIL" }
            ));
            if !d.within_tolerance && first_failure.is_none() {
                first_failure = Some(d);
            }
        }
    }
    emit(None, &out)?;
    match first_failure {
        None => Ok(()),
        Some(d) => Err(Failure {
            code: 5,
            message: format!(
                "regression failure: fixture {}, kind {} (simple), cell row {} col {}: computed {} vs published {}, deviation {:.3e} exceeds {:e}",
                d.fixture,
                d.kind,
                d.worst_cell.0 + 1,
                d.worst_cell.1 + 1,
                d.computed,
                d.published,
                d.max_abs,
                d.tolerance
            ),
        }),
    }
}

fn oracle(input: &InputArgs, tol: f64, out: Option<&Path>) -> CmdResult {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    let sys = load_system(input)?;
    let mut report = AnalysisReport::for_system(&sys)?;
    let mut series = verify_system(&sys, tol)?;
    series.residual_inf_norm = round_sig(series.residual_inf_norm);
    series.legacy_residual_inf_norm = round_sig(series.legacy_residual_inf_norm);
    report.oracle = Some(series);
    emit(out, &report.to_json()?)
}
