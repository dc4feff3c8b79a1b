//! Command line front end: file based classification, completion,
//! normalization, surveys, and enumeration.
//!
//! Exit codes: 0 for success and true verdicts, 1 for validation failures
//! and false verdicts, 2 for inconclusive results, 3 for usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context as _;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use galoiskit::algebra::{Algebra, FiniteMonoid, FiniteSemiring, Morphism, Point};
use galoiskit::classify::{
    check_homogeneous, classify_gamma_ab_normal, is_central_extension, is_normal_extension,
    is_s_special_object, is_schreier_point, is_trivial_extension, schreier_decomposition,
    special_homogeneity, Verdict,
};
use galoiskit::complete::{
    monoid_context, semiring_context, ContextId, GaloisContext, Inconclusive, Reflection,
    ToGroups,
};
use galoiskit::enumerate::{self, sections_of};
use galoiskit::error::Side;
use galoiskit::io::{self, Entity, HomFile};
use galoiskit::normalize;
use galoiskit::survey::{run_survey, SurveyError, SurveyOptions, SurveyReport, SurveyVerdict};

/// Environment override for the group completion room bound.
const GROUP_BOUND_VAR: &str = "GALOISKIT_MAX_GROUP_BOUND";

#[derive(Parser)]
#[command(
    name = "galoiskit",
    version,
    about = "Galois structures on finite monoids and semirings"
)]
struct Cli {
    /// Emit a machine readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and check the algebra or morphism laws.
    Validate {
        /// A .mon, .srng, or .hom file.
        path: PathBuf,
    },
    /// Decide an extension property.
    Classify {
        /// Property to decide.
        #[arg(long, value_enum)]
        property: Property,
        /// Galois context; needed by trivial, normal, central, s-special.
        #[arg(long, value_enum)]
        ctx: Option<Ctx>,
        /// Section file for the point properties. All sections of the
        /// morphism are swept when this is absent.
        #[arg(long)]
        section: Option<PathBuf>,
        /// Morphism file, or an algebra file for s-special.
        path: PathBuf,
    },
    /// Group completion of a monoid.
    Complete {
        /// A .mon file.
        path: PathBuf,
    },
    /// Abelian group completion of a monoid.
    Abelianize {
        /// A .mon file.
        path: PathBuf,
    },
    /// Ring completion of a semiring.
    RingComplete {
        /// A .srng file.
        path: PathBuf,
    },
    /// Normalize a surjection: its reflection among normal extensions.
    Normalize {
        #[arg(long, value_enum)]
        ctx: Ctx,
        /// A .hom file.
        path: PathBuf,
    },
    /// Run a named exhaustive survey.
    Survey {
        /// One of the shipped survey names; see the repository docs.
        name: String,
        #[arg(long, value_enum)]
        ctx: Ctx,
        /// Largest algebra order swept; each survey has its own default.
        #[arg(long)]
        max_order: Option<usize>,
        /// Order bound for probe objects in universal property checks.
        #[arg(long, default_value_t = 4)]
        probe_order: usize,
        /// Keep the sweep on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// List isomorphism classes of small algebras.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Signature::Monoid)]
        signature: Signature,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Keep only the commutative classes.
        #[arg(long)]
        commutative: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ctx {
    MonGp,
    MonAb,
    SrngRng,
}

impl Ctx {
    fn id(self) -> ContextId {
        match self {
            Ctx::MonGp => ContextId::MonGp,
            Ctx::MonAb => ContextId::MonAb,
            Ctx::SrngRng => ContextId::SRngRng,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Schreier,
    RightHomogeneous,
    LeftHomogeneous,
    Homogeneous,
    SpecialHomogeneous,
    Trivial,
    Normal,
    Central,
    SSpecial,
    GammaAbNormal,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Schreier => "schreier",
            Property::RightHomogeneous => "right-homogeneous",
            Property::LeftHomogeneous => "left-homogeneous",
            Property::Homogeneous => "homogeneous",
            Property::SpecialHomogeneous => "special-homogeneous",
            Property::Trivial => "trivial",
            Property::Normal => "normal",
            Property::Central => "central",
            Property::SSpecial => "s-special",
            Property::GammaAbNormal => "gamma-ab-normal",
        }
    }

    fn needs_section(self) -> bool {
        matches!(
            self,
            Property::Schreier
                | Property::RightHomogeneous
                | Property::LeftHomogeneous
                | Property::Homogeneous
        )
    }

    fn needs_ctx(self) -> bool {
        matches!(
            self,
            Property::Trivial | Property::Normal | Property::Central | Property::SSpecial
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Signature {
    Monoid,
    Semiring,
}

/// A failure that ends the run before a report exists.
struct CliError {
    exit: u8,
    message: String,
}

impl CliError {
    fn data(message: impl Into<String>) -> CliError {
        CliError {
            exit: 1,
            message: message.into(),
        }
    }

    fn inconclusive(reason: &Inconclusive) -> CliError {
        CliError {
            exit: 2,
            message: format!("inconclusive: {}", reason.reason),
        }
    }

    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            exit: 3,
            message: message.into(),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> CliError {
        CliError::data(format!("{e:#}"))
    }
}

/// A finished report: text and JSON renderings plus the exit code.
struct Report {
    exit: u8,
    human: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(3)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.human);
            }
            ExitCode::from(report.exit)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Validate { path } => validate(&path),
        Command::Classify {
            property,
            ctx,
            section,
            path,
        } => classify(property, ctx, section.as_deref(), &path),
        Command::Complete { path } => complete_monoid(ContextId::MonGp, "complete", &path),
        Command::Abelianize { path } => complete_monoid(ContextId::MonAb, "abelianize", &path),
        Command::RingComplete { path } => ring_complete(&path),
        Command::Normalize { ctx, path } => normalize_cmd(ctx, &path),
        Command::Survey {
            name,
            ctx,
            max_order,
            probe_order,
            sequential,
        } => survey_cmd(&name, ctx, max_order, probe_order, sequential),
        Command::Enumerate {
            signature,
            max_order,
            commutative,
        } => enumerate_cmd(signature, max_order, commutative),
    }
}

fn group_bound() -> Result<usize, CliError> {
    match std::env::var(GROUP_BOUND_VAR) {
        Err(_) => Ok(ToGroups::default().bound),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::usage(format!(
                "{GROUP_BOUND_VAR} must be a positive integer, found {raw:?}"
            ))),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    Ok(std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?)
}

fn parse_in(path: &Path, text: &str) -> Result<Entity, CliError> {
    io::parse_entity(text)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

/// The morphism named by a hom file, with its endpoint files resolved
/// next to it: `<name>.mon` for monoids, `<name>.srng` for semirings.
enum ResolvedHom {
    Monoid(Morphism<FiniteMonoid>),
    Semiring(Morphism<FiniteSemiring>),
}

fn endpoint_path(dir: &Path, name: &str, extension: &str) -> PathBuf {
    dir.join(format!("{name}.{extension}"))
}

fn resolve_hom(path: &Path, hom: &HomFile) -> Result<ResolvedHom, CliError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let monoid_source = endpoint_path(dir, &hom.source_name, "mon");
    let semiring_source = endpoint_path(dir, &hom.source_name, "srng");
    if monoid_source.exists() {
        let source = parse_monoid_file(&monoid_source)?;
        let target = parse_monoid_file(&endpoint_path(dir, &hom.target_name, "mon"))?;
        make_morphism(path, source, target, &hom.images).map(ResolvedHom::Monoid)
    } else if semiring_source.exists() {
        let source = parse_semiring_file(&semiring_source)?;
        let target = parse_semiring_file(&endpoint_path(dir, &hom.target_name, "srng"))?;
        make_morphism(path, source, target, &hom.images).map(ResolvedHom::Semiring)
    } else {
        Err(CliError::data(format!(
            "neither {} nor {} exists for the source of {}",
            monoid_source.display(),
            semiring_source.display(),
            path.display()
        )))
    }
}

fn parse_monoid_file(path: &Path) -> Result<Arc<FiniteMonoid>, CliError> {
    let text = read(path)?;
    io::parse_monoid(&text)
        .map(Arc::new)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn parse_semiring_file(path: &Path) -> Result<Arc<FiniteSemiring>, CliError> {
    let text = read(path)?;
    io::parse_semiring(&text)
        .map(Arc::new)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn make_morphism<A: Algebra>(
    path: &Path,
    source: Arc<A>,
    target: Arc<A>,
    images: &[usize],
) -> Result<Morphism<A>, CliError> {
    Morphism::new(source, target, images.to_vec())
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

fn algebra_json<A: Algebra>(a: &A) -> Value {
    let tables: Vec<Vec<usize>> = (0..A::OP_COUNT).map(|w| a.table(w).to_vec()).collect();
    json!({
        "signature": A::SIGNATURE,
        "size": a.size(),
        "neutral": a.neutral(),
        "tables": tables,
    })
}

fn images(f: &Morphism<impl Algebra>) -> String {
    let cells: Vec<String> = f.map().iter().map(|v| v.to_string()).collect();
    format!("[{}]", cells.join(" "))
}

fn validate(path: &Path) -> Result<Report, CliError> {
    let text = read(path)?;
    let entity = parse_in(path, &text)?;
    let (kind, size, json) = match &entity {
        Entity::Monoid(m) => ("monoid", m.size(), algebra_json(m)),
        Entity::Semiring(s) => ("semiring", s.size(), algebra_json(s)),
        Entity::Hom(hom) => {
            let resolved = resolve_hom(path, hom)?;
            let (signature, size) = match &resolved {
                ResolvedHom::Monoid(f) => (FiniteMonoid::SIGNATURE, f.source().size()),
                ResolvedHom::Semiring(f) => (FiniteSemiring::SIGNATURE, f.source().size()),
            };
            (
                "hom",
                size,
                json!({
                    "signature": signature,
                    "source": hom.source_name,
                    "target": hom.target_name,
                    "images": hom.images,
                }),
            )
        }
    };
    Ok(Report {
        exit: 0,
        human: format!("ok: {kind} ({size} elements)\n"),
        json: json!({"command": "validate", "valid": true, "kind": kind, "entity": json}),
    })
}

fn verdict_exit(value: Option<bool>) -> u8 {
    match value {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    }
}

fn verdict_word(value: Option<bool>) -> &'static str {
    match value {
        Some(true) => "true",
        Some(false) => "false",
        None => "inconclusive",
    }
}

/// What one property decision produced: the verdict, an optional witness
/// for a false verdict, and per-section lines for the point sweeps.
struct Decision {
    value: Option<bool>,
    witness: Option<String>,
    details: Vec<String>,
}

impl Decision {
    fn of(value: bool, witness: Option<String>) -> Decision {
        Decision {
            value: Some(value),
            witness: if value { None } else { witness },
            details: Vec::new(),
        }
    }

    fn from_verdict(v: Result<Verdict, Inconclusive>) -> Decision {
        match v {
            Ok(verdict) => Decision::of(
                verdict.holds,
                verdict.obstruction.map(|o| o.to_string()),
            ),
            Err(reason) => Decision {
                value: None,
                witness: Some(reason.reason),
                details: Vec::new(),
            },
        }
    }
}

fn classify(
    property: Property,
    ctx: Option<Ctx>,
    section: Option<&Path>,
    path: &Path,
) -> Result<Report, CliError> {
    if property.needs_ctx() && ctx.is_none() {
        return Err(CliError::usage(format!(
            "property {} needs --ctx",
            property.name()
        )));
    }
    let text = read(path)?;
    let entity = parse_in(path, &text)?;
    let decision = match (&entity, property) {
        (Entity::Monoid(m), Property::SSpecial) => {
            let id = ctx.expect("checked above").id();
            let context = monoid_context(id, group_bound()?).ok_or_else(|| {
                CliError::usage(format!("context {} does not apply to monoids", id.code()))
            })?;
            let object = Arc::new(m.clone());
            match is_s_special_object(context.as_ref(), &object) {
                Ok(value) => Decision::of(value, None),
                Err(reason) => return Err(CliError::inconclusive(&reason)),
            }
        }
        (Entity::Semiring(s), Property::SSpecial) => {
            let id = ctx.expect("checked above").id();
            let context = semiring_context(id).ok_or_else(|| {
                CliError::usage(format!("context {} does not apply to semirings", id.code()))
            })?;
            let object = Arc::new(s.clone());
            match is_s_special_object(context.as_ref(), &object) {
                Ok(value) => Decision::of(value, None),
                Err(reason) => return Err(CliError::inconclusive(&reason)),
            }
        }
        (_, Property::SSpecial) => {
            return Err(CliError::usage(
                "property s-special takes an algebra file, not a morphism",
            ))
        }
        (Entity::Hom(hom), _) => match resolve_hom(path, hom)? {
            ResolvedHom::Monoid(f) => {
                let context = match ctx {
                    None => None,
                    Some(c) => Some(
                        monoid_context(c.id(), group_bound()?).ok_or_else(|| {
                            CliError::usage(format!(
                                "context {} does not apply to monoid morphisms",
                                c.id().code()
                            ))
                        })?,
                    ),
                };
                classify_morphism(property, context.as_deref(), &f, section, path)?
            }
            ResolvedHom::Semiring(f) => {
                let context = match ctx {
                    None => None,
                    Some(c) => Some(semiring_context(c.id()).ok_or_else(|| {
                        CliError::usage(format!(
                            "context {} does not apply to semiring morphisms",
                            c.id().code()
                        ))
                    })?),
                };
                classify_morphism(property, context.as_deref(), &f, section, path)?
            }
        },
        _ => {
            return Err(CliError::usage(format!(
                "property {} takes a morphism file",
                property.name()
            )))
        }
    };
    let mut human = format!(
        "property: {}\nverdict: {}\n",
        property.name(),
        verdict_word(decision.value)
    );
    for line in &decision.details {
        human.push_str(line);
        human.push('\n');
    }
    if let Some(witness) = &decision.witness {
        human.push_str(&format!("witness: {witness}\n"));
    }
    Ok(Report {
        exit: verdict_exit(decision.value),
        human,
        json: json!({
            "command": "classify",
            "property": property.name(),
            "context": ctx.map(|c| c.id().code()),
            "verdict": verdict_word(decision.value),
            "witness": decision.witness,
            "sections": decision.details,
        }),
    })
}

fn classify_morphism<A: Algebra>(
    property: Property,
    ctx: Option<&dyn GaloisContext<A>>,
    f: &Morphism<A>,
    section: Option<&Path>,
    path: &Path,
) -> Result<Decision, CliError> {
    if !f.is_surjective() {
        return Err(CliError::data(format!(
            "{}: the morphism is not surjective, so extension properties do not apply",
            path.display()
        )));
    }
    if property.needs_section() {
        return classify_point(property, f, section, path);
    }
    Ok(match property {
        Property::SpecialHomogeneous => match special_homogeneity(f) {
            Ok(()) => Decision::of(true, None),
            Err(h) => Decision::of(false, Some(h.to_string())),
        },
        Property::GammaAbNormal => {
            let verdict = classify_gamma_ab_normal(f);
            Decision::of(verdict.holds, verdict.obstruction.map(|o| o.to_string()))
        }
        Property::Trivial => {
            Decision::from_verdict(is_trivial_extension(ctx.expect("checked above"), f))
        }
        Property::Normal => {
            Decision::from_verdict(is_normal_extension(ctx.expect("checked above"), f))
        }
        Property::Central => {
            Decision::from_verdict(is_central_extension(ctx.expect("checked above"), f))
        }
        _ => unreachable!("point and object properties are handled elsewhere"),
    })
}

fn classify_point<A: Algebra>(
    property: Property,
    f: &Morphism<A>,
    section: Option<&Path>,
    path: &Path,
) -> Result<Decision, CliError> {
    let sections = match section {
        Some(section_path) => {
            let text = read(section_path)?;
            let hom = io::parse_hom(&text)
                .map_err(|e| CliError::data(format!("{}: {e}", section_path.display())))?;
            let s = make_morphism(
                section_path,
                f.target().clone(),
                f.source().clone(),
                &hom.images,
            )?;
            vec![s]
        }
        None => sections_of(f),
    };
    if sections.is_empty() {
        return Err(CliError::data(format!(
            "{}: the morphism has no sections, so point properties do not apply",
            path.display()
        )));
    }
    let mut all = true;
    let mut witness = None;
    let mut details = Vec::new();
    for s in sections {
        let images_line = images(&s);
        let point = Point::new(f.clone(), s).map_err(|e| {
            CliError::data(format!("{}: section {images_line}: {e}", path.display()))
        })?;
        let failure: Option<String> = match property {
            Property::Schreier => schreier_decomposition(&point).err().map(|e| e.to_string()),
            Property::RightHomogeneous => check_homogeneous(&point, Side::Right)
                .err()
                .map(|e| e.to_string()),
            Property::LeftHomogeneous => check_homogeneous(&point, Side::Left)
                .err()
                .map(|e| e.to_string()),
            Property::Homogeneous => check_homogeneous(&point, Side::Right)
                .err()
                .or_else(|| check_homogeneous(&point, Side::Left).err())
                .map(|e| e.to_string()),
            _ => unreachable!("only point properties reach the section sweep"),
        };
        debug_assert_eq!(
            property == Property::Schreier && failure.is_none(),
            property == Property::Schreier && is_schreier_point(&point),
            "the decomposition and the predicate must agree"
        );
        match failure {
            None => details.push(format!("section {images_line}: true")),
            Some(reason) => {
                details.push(format!("section {images_line}: false ({reason})"));
                if witness.is_none() {
                    witness = Some(reason);
                }
                all = false;
            }
        }
    }
    Ok(Decision {
        value: Some(all),
        witness,
        details,
    })
}

fn completion_report(
    command: &str,
    input_size: usize,
    reflection: &Reflection<FiniteMonoid>,
) -> Report {
    let object = io::print_monoid(&reflection.object);
    Report {
        exit: 0,
        human: object.clone(),
        json: json!({
            "command": command,
            "input_size": input_size,
            "object": algebra_json(reflection.object.as_ref()),
            "unit": reflection.unit.map().to_vec(),
        }),
    }
}

fn complete_monoid(id: ContextId, command: &str, path: &Path) -> Result<Report, CliError> {
    let m = parse_monoid_file(path)?;
    let ctx = monoid_context(id, group_bound()?).expect("monoid context ids are covered");
    match ctx.reflect(&m) {
        Ok(reflection) => Ok(completion_report(command, m.size(), &reflection)),
        Err(reason) => Err(CliError::inconclusive(&reason)),
    }
}

fn ring_complete(path: &Path) -> Result<Report, CliError> {
    let s = parse_semiring_file(path)?;
    let ctx = semiring_context(ContextId::SRngRng).expect("the ring context exists");
    match ctx.reflect(&s) {
        Ok(reflection) => Ok(Report {
            exit: 0,
            human: io::print_semiring(&reflection.object),
            json: json!({
                "command": "ring-complete",
                "input_size": s.size(),
                "object": algebra_json(reflection.object.as_ref()),
                "unit": reflection.unit.map().to_vec(),
            }),
        }),
        Err(reason) => Err(CliError::inconclusive(&reason)),
    }
}

fn normalize_cmd(ctx: Ctx, path: &Path) -> Result<Report, CliError> {
    let text = read(path)?;
    let entity = parse_in(path, &text)?;
    let Entity::Hom(hom) = entity else {
        return Err(CliError::usage("normalize takes a morphism file"));
    };
    let id = ctx.id();
    let result = match resolve_hom(path, &hom)? {
        ResolvedHom::Monoid(f) => {
            let context = monoid_context(id, group_bound()?).ok_or_else(|| {
                CliError::usage(format!(
                    "context {} does not apply to monoid morphisms",
                    id.code()
                ))
            })?;
            if !f.is_surjective() {
                return Err(CliError::data(format!(
                    "{}: only surjections normalize",
                    path.display()
                )));
            }
            match normalize::normalize(context.as_ref(), &f) {
                Ok(n) => normalize_report(context.as_ref(), &f, &n),
                Err(reason) => return Err(CliError::inconclusive(&reason)),
            }
        }
        ResolvedHom::Semiring(f) => {
            let context = semiring_context(id).ok_or_else(|| {
                CliError::usage(format!(
                    "context {} does not apply to semiring morphisms",
                    id.code()
                ))
            })?;
            if !f.is_surjective() {
                return Err(CliError::data(format!(
                    "{}: only surjections normalize",
                    path.display()
                )));
            }
            match normalize::normalize(context.as_ref(), &f) {
                Ok(n) => normalize_report(context.as_ref(), &f, &n),
                Err(reason) => return Err(CliError::inconclusive(&reason)),
            }
        }
    };
    Ok(result)
}

fn normalize_report<A: Algebra>(
    ctx: &dyn GaloisContext<A>,
    f: &Morphism<A>,
    n: &normalize::NormalizationResult<A>,
) -> Report {
    let landing = is_normal_extension(ctx, &n.normalized)
        .map(|v| v.holds)
        .ok();
    let human = format!(
        "source: {} elements, base: {} elements\n\
         normalized object: {} elements\n\
         unit: {} (surjective: {})\n\
         normalized map: {}\n\
         normal: {}\n",
        f.source().size(),
        f.target().size(),
        n.object().size(),
        images(&n.unit),
        n.unit.is_surjective(),
        images(&n.normalized),
        verdict_word(landing),
    );
    Report {
        exit: 0,
        human,
        json: json!({
            "command": "normalize",
            "source_size": f.source().size(),
            "base_size": f.target().size(),
            "object": algebra_json(n.object().as_ref()),
            "unit": n.unit.map().to_vec(),
            "unit_surjective": n.unit.is_surjective(),
            "normalized": n.normalized.map().to_vec(),
            "normal": landing.map(|v| verdict_word(Some(v))),
        }),
    }
}

fn survey_cmd(
    name: &str,
    ctx: Ctx,
    max_order: Option<usize>,
    probe_order: usize,
    sequential: bool,
) -> Result<Report, CliError> {
    let options = SurveyOptions {
        max_order,
        probe_order_bound: probe_order,
        group_bound: group_bound()?,
        parallel: !sequential,
    };
    let report = run_survey(name, ctx.id(), &options).map_err(|e| match e {
        SurveyError::UnknownSurvey(_) | SurveyError::UnsupportedContext { .. } => {
            CliError::usage(e.to_string())
        }
    })?;
    let exit = match report.verdict {
        SurveyVerdict::Passed => 0,
        SurveyVerdict::Failed => 1,
        SurveyVerdict::Inconclusive => 2,
    };
    Ok(Report {
        exit,
        human: render_survey(&report),
        json: serde_json::to_value(&report).expect("survey reports serialize"),
    })
}

fn render_survey(report: &SurveyReport) -> String {
    let verdict = match report.verdict {
        SurveyVerdict::Passed => "passed",
        SurveyVerdict::Failed => "failed",
        SurveyVerdict::Inconclusive => "inconclusive",
    };
    let mut out = format!(
        "survey: {}\ncontext: {} ({})\nmax order: {}\ninstances: {}\nverdict: {verdict}\n",
        report.survey, report.context, report.signature, report.max_order, report.instances,
    );
    out.push_str(&format!(
        "{:<34} {:>7} {:>7} {:>13}\n",
        "property", "holds", "fails", "inconclusive"
    ));
    for tally in &report.tallies {
        let marker = if tally.invariant { "*" } else { " " };
        out.push_str(&format!(
            "{marker}{:<33} {:>7} {:>7} {:>13}\n",
            tally.property, tally.holds, tally.fails, tally.inconclusive
        ));
    }
    for line in &report.counterexamples {
        out.push_str(&format!("counterexample: {line}\n"));
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out.push_str(&format!("wall: {} ms\n", report.wall_ms));
    out
}

fn enumerate_cmd(
    signature: Signature,
    max_order: usize,
    commutative: bool,
) -> Result<Report, CliError> {
    if max_order == 0 {
        return Err(CliError::usage("--max-order must be at least one"));
    }
    let mut human = String::new();
    let mut classes = Vec::new();
    let mut count = 0usize;
    match signature {
        Signature::Monoid => {
            for order in 1..=max_order {
                for m in enumerate::monoids_up_to_iso(order).iter() {
                    if commutative && !m.is_commutative() {
                        continue;
                    }
                    count += 1;
                    classes.push(algebra_json(m.as_ref()));
                    human.push('\n');
                    human.push_str(&io::print_monoid(m));
                }
            }
        }
        Signature::Semiring => {
            for order in 1..=max_order {
                for s in enumerate::semirings_up_to_iso(order).iter() {
                    let noncommutative = s
                        .elements()
                        .any(|a| s.elements().any(|b| s.mul(a, b) != s.mul(b, a)));
                    if commutative && noncommutative {
                        continue;
                    }
                    count += 1;
                    classes.push(algebra_json(s.as_ref()));
                    human.push('\n');
                    human.push_str(&io::print_semiring(s));
                }
            }
        }
    }
    let kind = match signature {
        Signature::Monoid => "monoid",
        Signature::Semiring => "semiring",
    };
    Ok(Report {
        exit: 0,
        human: format!("{kind} classes through order {max_order}: {count}\n{human}"),
        json: json!({
            "command": "enumerate",
            "signature": kind,
            "max_order": max_order,
            "commutative": commutative,
            "count": count,
            "classes": classes,
        }),
    })
}
