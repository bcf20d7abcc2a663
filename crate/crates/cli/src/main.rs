use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spanshadow::deformation::graph::GraphModel;
use spanshadow::deformation::table::TableModel;
use spanshadow::deformation::{
    compare_composites, derived_functor, homotopy_category, validate_deformation, Category, Functor,
    RightDeformation, Stage,
};
use spanshadow::equivariant::FinGroup;
use spanshadow::invariants::{equivariant_fix_count, fix_count, fuller_count, least_period_count, EndoMap};
use spanshadow::io;
use spanshadow::random::Bounds;
use spanshadow::suite::{run_suite, BaseChoice, SuiteConfig, SUITES};
use spanshadow::Error;

#[derive(Parser)]
#[command(name = "spanshadow", version, about = "Spans of finite sets, shadows and fixed-point counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Act with a multi-span, or test it for rigidity.
    #[command(subcommand)]
    Span(SpanCmd),
    /// Run a randomized coherence suite.
    Coherence(CoherenceArgs),
    /// Count fixed or periodic points of an endomap.
    Count(CountArgs),
    /// Deformations on the graph model or a table model.
    Deform(DeformArgs),
}

#[derive(Subcommand)]
enum SpanCmd {
    /// Apply a span to parametrized inputs, one file per input.
    Act { span: String, inputs: Vec<String> },
    /// Decide rigidity; a collision pair witnesses failure.
    Rigid { span: String },
}

#[derive(clap::Args)]
struct CoherenceArgs {
    /// Suite name; `list` prints them all.
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    /// Largest 0-cell.
    #[arg(long)]
    max_size: Option<usize>,
    /// `point`, or a file holding the base set; instances mix both by default.
    #[arg(long)]
    base: Option<String>,
    /// C2, C3, S3 or a group file.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Fix,
    Fuller,
    LeastPeriod,
    Equivariant,
}

#[derive(clap::Args)]
struct CountArgs {
    kind: CountKind,
    #[arg(long)]
    map: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    subgroup: Option<String>,
    /// Also print the bijection behind a `fuller` count.
    #[arg(long)]
    certify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeformKind {
    Validate,
    Derive,
    Compare,
    Ho,
}

#[derive(clap::Args)]
struct DeformArgs {
    kind: DeformKind,
    /// `graph` or a table-model file.
    #[arg(long, default_value = "graph")]
    model: String,
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
    /// Restrict to one functor (validate, derive).
    #[arg(long)]
    functor: Option<String>,
    /// Comma-separated functors, applied first to last (compare).
    #[arg(long)]
    list: Option<String>,
}

/// What went wrong: a counterexample or bad input.
enum Fail {
    Counterexample,
    Input(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Input(e.to_string())
    }
}

type Outcome = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Span(cmd) => span(cmd),
        Command::Coherence(args) => coherence(args),
        Command::Count(args) => count(args),
        Command::Deform(args) => deform(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Counterexample) => ExitCode::from(1),
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &str) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{path}: {e}")))
}

fn read_json(path: &str) -> Result<Value, Fail> {
    Ok(io::parse(&read(path)?)?)
}

fn emit(v: &Value) {
    println!("{v}");
}

fn span(cmd: SpanCmd) -> Outcome {
    match cmd {
        SpanCmd::Act { span, inputs } => {
            let (mut reg, span) = io::read_multispan(&read_json(&span)?)?;
            if inputs.len() != span.arity() {
                return Err(Fail::Input(format!("the span takes {} inputs, got {}", span.arity(), inputs.len())));
            }
            let mut xs = Vec::new();
            for (path, a) in inputs.iter().zip(span.inputs()) {
                let doc = read_json(path)?;
                reg.add_doc(&doc)?;
                xs.push(io::read_param_set(&reg, &doc, a)?);
            }
            let out = span.act(&xs)?;
            emit(&io::param_set_to_json(&out));
            eprintln!("action has {} elements over {}", out.len(), out.base().space().name());
            Ok(())
        }
        SpanCmd::Rigid { span } => {
            let (_, span) = io::read_multispan(&read_json(&span)?)?;
            match span.rigidity() {
                Ok(()) => {
                    emit(&json!({ "verdict": "rigid" }));
                    eprintln!("rigid");
                }
                Err((a, b)) => {
                    emit(&json!({ "verdict": "not-rigid", "witness": [io::elem_to_json(&a), io::elem_to_json(&b)] }));
                    eprintln!("not-rigid: {a} and {b} have the same image");
                }
            }
            Ok(())
        }
    }
}

fn group(spec: &str) -> Result<FinGroup, Fail> {
    Ok(io::group_from_spec(spec, |path| {
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))
    })?)
}

fn coherence(args: CoherenceArgs) -> Outcome {
    if args.suite == "list" {
        for s in SUITES {
            println!("{s}");
        }
        return Ok(());
    }
    let mut cfg = SuiteConfig::new(&args.suite);
    cfg.seed = args.seed;
    cfg.instances = args.instances;
    cfg.n = args.n;
    cfg.bounds = Bounds {
        space: args.max_size.unwrap_or(Bounds::default().space),
        ..Bounds::default()
    };
    cfg.base = match args.base.as_deref() {
        None => BaseChoice::Mixed,
        Some("point") => BaseChoice::Point,
        Some(path) => BaseChoice::Over(io::set_from_json(&read_json(path)?)?),
    };
    cfg.group = args.group.as_deref().map(group).transpose()?;
    cfg.subgroup = args.subgroup;
    let report = run_suite(&cfg).map_err(|e| match e {
        Error::UnknownDiagram(s) => Fail::Input(format!("unknown suite {s}; try `coherence list`")),
        other => other.into(),
    })?;
    println!("{}", report.to_json_line());
    eprintln!(
        "{}: {}/{} instances passed (seed {})",
        report.suite,
        report.instances - report.failures.len(),
        report.instances,
        report.seed
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Fail::Counterexample)
    }
}

fn count(args: CountArgs) -> Outcome {
    let doc = read_json(&args.map)?;
    let f = io::read_endomap(&doc)?;
    let endo = EndoMap::new(f.clone())?;
    let value = match args.kind {
        CountKind::Fix => json!(fix_count(&endo, args.n)?),
        CountKind::LeastPeriod => json!(least_period_count(&endo, args.n)?),
        CountKind::Fuller => {
            let c = fuller_count(&endo, args.n)?;
            if args.certify {
                let pairs: Vec<Value> = c
                    .bijection
                    .forward()
                    .pairs()
                    .iter()
                    .map(|(x, y)| json!([io::elem_to_json(x), io::elem_to_json(y)]))
                    .collect();
                emit(&json!({ "count": c.count, "bijection": pairs }));
                return Ok(());
            }
            json!(c.count)
        }
        CountKind::Equivariant => {
            let g = group(args.group.as_deref().ok_or_else(|| Fail::Input("--group is required".into()))?)?;
            let h = g.find_subgroup(args.subgroup.as_deref().unwrap_or("G"))?;
            let action = io::read_action(&doc, &g, f.source())?;
            json!(equivariant_fix_count(&action, &f, &h, args.n)?)
        }
    };
    emit(&value);
    Ok(())
}

/// A category with its functors and the deformation on each source.
struct Model {
    cat: Category,
    functors: Vec<Functor>,
    lookup: Box<dyn Fn(&str) -> spanshadow::Result<Functor>>,
    deform: Box<dyn Fn(&Functor) -> RightDeformation>,
    home: RightDeformation,
}

fn model(args: &DeformArgs) -> Result<Model, Fail> {
    if args.model == "graph" {
        let m = std::rc::Rc::new(GraphModel::new(args.max_vertices)?);
        let (m1, m2) = (m.clone(), m.clone());
        Ok(Model {
            cat: m.cat.clone(),
            functors: m.functors[..4].to_vec(),
            lookup: Box::new(move |name| m1.functor(name)),
            deform: Box::new(move |f| m2.deformation_for(f).clone()),
            home: m.condensation.clone(),
        })
    } else {
        let m = std::rc::Rc::new(TableModel::from_json(&read(&args.model)?)?);
        let (m1, m2) = (m.clone(), m.clone());
        Ok(Model {
            cat: m.cat.clone(),
            functors: m.functors.clone(),
            lookup: Box::new(move |name| m1.functor(name)),
            deform: Box::new(move |_| m2.deformation.clone()),
            home: m.deformation.clone(),
        })
    }
}

fn deform(args: DeformArgs) -> Outcome {
    let m = model(&args)?;
    let chosen: Vec<Functor> = match &args.functor {
        Some(name) => vec![(m.lookup)(name)?],
        None => m.functors.clone(),
    };
    match args.kind {
        DeformKind::Validate => {
            let mut ok = true;
            for f in &chosen {
                let report = validate_deformation(f, &(m.deform)(f))?;
                ok &= report.valid;
                emit(&serde_json::to_value(&report).expect("reports serialize"));
                eprintln!("{}: {}", report.checked, if report.valid { "valid" } else { "invalid" });
            }
            if ok {
                Ok(())
            } else {
                Err(Fail::Counterexample)
            }
        }
        DeformKind::Derive => {
            for f in &chosen {
                let d = (m.deform)(f);
                match derived_functor(f, &d) {
                    Ok(df) => {
                        let values: Vec<Value> = (0..m.cat.object_count())
                            .map(|a| json!([m.cat.describe(a), df.target().describe(df.on_obj(a))]))
                            .collect();
                        emit(&json!({ "functor": df.name(), "values": values }));
                        eprintln!("{}: derived on {} objects", df.name(), values.len());
                    }
                    Err(Error::InvalidDeformation(w)) => {
                        emit(&json!({ "functor": f.name(), "violation": w }));
                        return Err(Fail::Counterexample);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(())
        }
        DeformKind::Compare => {
            let list = args
                .list
                .as_deref()
                .ok_or_else(|| Fail::Input("--list is required".into()))?;
            let stages = list
                .split(',')
                .map(|name| {
                    let functor = (m.lookup)(name.trim())?;
                    let deformation = (m.deform)(&functor);
                    Ok(Stage { functor, deformation })
                })
                .collect::<spanshadow::Result<Vec<_>>>()?;
            match compare_composites(&stages) {
                Ok(cmp) => {
                    let end = stages.last().expect("nonempty list").functor.target().clone();
                    let components = (0..m.cat.object_count())
                        .map(|a| Ok(json!([m.cat.describe(a), end.describe_mor(&cmp.at(a)?)])))
                        .collect::<spanshadow::Result<Vec<_>>>()?;
                    emit(&json!({ "list": list, "all_we": true, "components": components }));
                    eprintln!("{list}: {} components, all weak equivalences", components.len());
                    Ok(())
                }
                Err(Error::InvalidDeformation(w)) => {
                    emit(&json!({ "list": list, "all_we": false, "violation": w }));
                    Err(Fail::Counterexample)
                }
                Err(e) => Err(e.into()),
            }
        }
        DeformKind::Ho => match homotopy_category(&m.home) {
            Ok(ho) => {
                let objects: Vec<String> = ho.ho.objects().iter().map(|&a| m.cat.describe(a)).collect();
                emit(&json!({ "category": ho.category.name(), "objects": objects.len(), "members": objects }));
                eprintln!("{}: {} objects", ho.category.name(), objects.len());
                Ok(())
            }
            Err(Error::InvalidDeformation(w)) => {
                emit(&json!({ "violation": w }));
                Err(Fail::Counterexample)
            }
            Err(e) => Err(e.into()),
        },
    }
}
