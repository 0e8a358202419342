use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fusionlab::check::corpus::ModuleChoice;
use fusionlab::check::io::GroupDoc;
use fusionlab::check::{self, CheckSpec, GroupSpec, Manifest, ModuleSpec};
use fusionlab::cohom::{CohomologyEngine, GroupCohomology};
use fusionlab::fusion::{CollectionKind, FusionData};
use fusionlab::nerve::{FiniteCategory, NerveComplex};
use fusionlab::stable::{stable_subspaces, Family, PairMode};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fusionlab", version, about = "Fusion systems, stable elements and nerve cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Corpus instance, e.g. S4@2.
    #[arg(long, conflicts_with_all = ["group", "prime"])]
    instance: Option<String>,
    /// Group document path or a group name (S3, A4, D8, SL(2,3), ...).
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    prime: Option<u32>,
    /// trivial, twisted (corpus only) or a module document path.
    #[arg(long)]
    module: Option<String>,
    #[arg(long = "max-degree", visible_alias = "degree", default_value_t = check::DEFAULT_DEGREE)]
    max_degree: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum StableFamily {
    Centric,
    All,
    Grodal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Category {
    Transporter,
    Linking,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroups of the Sylow subgroup with their classification flags.
    Classify(InstanceArgs),
    /// Dimensions of H^n(G, M).
    Cohomology(InstanceArgs),
    /// Cohomology of the nerve of a transporter or linking category.
    Nerve {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "centric")]
        collection: String,
        #[arg(long, value_enum, default_value = "transporter")]
        category: Category,
    },
    /// Stable elements for a family of subgroups.
    Stable {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, value_enum, default_value = "centric")]
        collection: StableFamily,
        /// Impose every morphism of every member instead of the reduced set.
        #[arg(long)]
        family_oracle: bool,
        /// Include basis vectors in the output.
        #[arg(long)]
        basis: bool,
    },
    /// Run one theorem check and print its report.
    Check {
        name: String,
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        collection: Option<String>,
    },
    /// Run a manifest of checks, or the builtin "acceptance" manifest.
    Suite {
        #[arg(long, conflicts_with = "builtin")]
        manifest: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
    },
}

fn spec_of(inst: &InstanceArgs, check: &str) -> Result<CheckSpec> {
    let group = inst.group.as_ref().map(|g| {
        let path = PathBuf::from(g);
        if path.exists() {
            GroupSpec::Path(path)
        } else {
            GroupSpec::Doc(GroupDoc::named(g))
        }
    });
    let module = inst.module.as_ref().map(|m| match m.as_str() {
        "trivial" => ModuleSpec::Choice(ModuleChoice::Trivial),
        "twisted" => ModuleSpec::Choice(ModuleChoice::Twisted),
        path => ModuleSpec::Path(PathBuf::from(path)),
    });
    let mut spec = CheckSpec {
        check: check.to_string(),
        instance: inst.instance.clone(),
        group,
        prime: inst.prime,
        module,
        max_degree: inst.max_degree,
        collection: None,
        expect: None,
    };
    spec.validate()?;
    spec.load_files(std::path::Path::new("."))?;
    Ok(spec)
}

fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

#[derive(Serialize)]
struct SubgroupRow {
    index: usize,
    order: usize,
    class: usize,
    flags: fusionlab::fusion::Flags,
    normalizer_order: usize,
    out_order: usize,
}

fn classify(inst: &InstanceArgs) -> Result<()> {
    let r = check::resolve(&spec_of(inst, "")?)?;
    let f = FusionData::build(r.group.clone(), r.p)?;
    let rows: Vec<SubgroupRow> = (0..f.subgroups().len())
        .map(|i| {
            let info = f.info(i);
            SubgroupRow {
                index: i,
                order: f.subgroup(i).order(),
                class: f.class_of(i),
                flags: info.flags,
                normalizer_order: info.normalizer.order(),
                out_order: info.out_order,
            }
        })
        .collect();
    print_json(&serde_json::json!({
        "instance": r.info,
        "sylow_order": f.sylow().order(),
        "classes": f.classes().len(),
        "essential_representatives": f.essential_subgroups(),
        "constrained": f.is_constrained(),
        "subgroups": rows,
    }))
}

fn cohomology(inst: &InstanceArgs) -> Result<()> {
    let r = check::resolve(&spec_of(inst, "")?)?;
    let gc = GroupCohomology::new(&r.module, r.n);
    let rows: Vec<_> = gc.dims().iter().enumerate().map(|(n, d)| serde_json::json!({"degree": n, "dim": d})).collect();
    print_json(&serde_json::json!({ "instance": r.info, "cohomology": rows }))
}

fn nerve(inst: &InstanceArgs, collection: &str, category: Category) -> Result<()> {
    let r = check::resolve(&spec_of(inst, "")?)?;
    let kind: CollectionKind = collection.parse()?;
    let f = FusionData::build(r.group.clone(), r.p)?;
    let coll = f.collection(kind);
    let cat = match category {
        Category::Transporter => FiniteCategory::transporter(&f, &coll)?,
        Category::Linking => FiniteCategory::linking(&f, &coll)?,
    };
    let nc = NerveComplex::new(&cat, &r.module, r.n)?;
    let rows: Vec<_> = nc.dims().iter().enumerate().map(|(n, d)| serde_json::json!({"degree": n, "dim": d})).collect();
    print_json(&serde_json::json!({
        "instance": r.info,
        "objects": cat.objects().len(),
        "morphisms": cat.morphism_count(),
        "census": nc.census(),
        "cohomology": rows,
    }))
}

#[derive(Serialize)]
struct StableRow {
    degree: usize,
    dim: usize,
    family: fusionlab::stable::FamilyDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<Vec<u32>>>,
}

fn stable(inst: &InstanceArgs, which: StableFamily, oracle: bool, basis: bool) -> Result<()> {
    let r = check::resolve(&spec_of(inst, "")?)?;
    let f = FusionData::build(r.group.clone(), r.p)?;
    let e = CohomologyEngine::with_sylow(&r.module, f.sylow(), r.n);
    let family = match which {
        StableFamily::Centric => Family::Collection(CollectionKind::Centric),
        StableFamily::All => Family::Collection(CollectionKind::All),
        StableFamily::Grodal => Family::Subgroups(f.grodal_family(&r.module)),
    };
    let mode = if oracle { PairMode::Exhaustive } else { PairMode::Reduced };
    let rows: Vec<StableRow> = stable_subspaces(&f, &e, r.n, &family, mode)?
        .into_iter()
        .map(|s| StableRow {
            degree: s.degree,
            dim: s.dim(),
            basis: basis.then(|| s.space.basis().to_vec()),
            family: s.family,
        })
        .collect();
    print_json(&rows)
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Classify(inst) => classify(inst)?,
        Command::Cohomology(inst) => cohomology(inst)?,
        Command::Nerve { inst, collection, category } => nerve(inst, collection, *category)?,
        Command::Stable { inst, collection, family_oracle, basis } => stable(inst, *collection, *family_oracle, *basis)?,
        Command::Check { name, inst, collection } => {
            let mut spec = spec_of(inst, name)?;
            spec.collection = collection.as_deref().map(str::parse).transpose()?;
            let start = Instant::now();
            let report = check::run_check(name, &spec)?;
            emit(&report.to_json())?;
            eprintln!("{} ({:.2?})", report.summary_line(), start.elapsed());
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
        Command::Suite { manifest, builtin } => {
            let m = match (manifest, builtin) {
                (Some(path), _) => Manifest::load(path).with_context(|| format!("reading {}", path.display()))?,
                (None, Some(name)) => match Manifest::builtin(name) {
                    Some(m) => m,
                    None => bail!("unknown builtin manifest {name:?}"),
                },
                (None, None) => bail!("give --manifest or --builtin"),
            };
            let start = Instant::now();
            let report = check::run_suite(&m)?;
            print_json(&report)?;
            for line in report.summary_lines() {
                eprintln!("{line}");
            }
            eprintln!("elapsed {:.2?}", start.elapsed());
            return Ok(ExitCode::from(report.exit_code as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(4)
        }
    }
}
