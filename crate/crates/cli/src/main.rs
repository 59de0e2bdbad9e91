//! Command-line front end: `parasym <subcommand> [flags]`.
//!
//! Exit status is 0 on success, 2 when a mathematical precondition fails and 1 on
//! usage, I/O or schema errors. Errors are written to stderr as one JSON object.

use clap::{Args, Parser, Subcommand};
use parasym::emit::{self, Format, ModuleRecord, PsiRecord, Record, Table};
use parasym::extension::{self, ExtensionData};
use parasym::grading::GradedParabolic;
use parasym::kostant::{self, ComponentRecord, CurvatureComponent};
use parasym::linalg::Q;
use parasym::rootsys::Family;
use parasym::symsolve::scan::{self, LambdaRule, ScanConfig};
use parasym::symsolve::{self, FamilyRecord, RealForm};
use parasym::{Error, Result};
use rayon::prelude::*;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "parasym", version, about = "Symmetries and curvature of homogeneous parabolic geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: text, json, csv or latex.
    #[arg(long, global = true, env = "PARASYM_FORMAT", default_value = "text")]
    format: String,
    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for sweeps (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// Family: sl, so-odd (B), sp, so-even (D), g2, e6, e7 or a letter A..E.
    #[arg(long)]
    algebra: String,
    /// Rank; implied for g2, e6 and e7.
    #[arg(long)]
    rank: Option<usize>,
    /// Real form: R (split), C (complex as real) or U (quasi-split unitary).
    #[arg(long, default_value = "R")]
    real_form: String,
    /// Ξ as 1-based simple-root labels, e.g. `1,2`; primes mark the second copy.
    #[arg(long, value_delimiter = ',')]
    xi: Vec<String>,
}

#[derive(Args, Debug, Clone)]
struct ComponentArgs {
    /// Components as `a:b` or `a:b@copy` pairs of labels, e.g. `1:2,2:1`.
    #[arg(long, value_delimiter = ',')]
    components: Vec<String>,
    /// Include components of non-positive total homogeneity.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Module partition of p_+.
    Roots(AlgebraArgs),
    /// Harmonic curvature components with homogeneity and I_mu.
    Components {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        comp: ComponentArgs,
    },
    /// I_mu per component.
    Imu {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        comp: ComponentArgs,
    },
    /// Psi of a set of components.
    Psi {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        comp: ComponentArgs,
    },
    /// Symmetry families for one set of components.
    Symmetries {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        comp: ComponentArgs,
    },
    /// Components and symmetry families for every component subset; sweeps Ξ when omitted.
    Classify {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        comp: ComponentArgs,
        /// Largest component subset.
        #[arg(long, default_value_t = 2)]
        max_subset: usize,
        /// Largest Ξ in a sweep.
        #[arg(long, default_value_t = 2)]
        max_xi: usize,
    },
    /// Reduction of an extension to the grading by a smaller Ξ'.
    Reduce {
        file: PathBuf,
        /// Ξ' as 1-based labels.
        #[arg(long, value_delimiter = ',')]
        xi: Vec<usize>,
    },
    /// Validation, harmonic curvature and symmetry data of an extension.
    AnalyzeExtension { file: PathBuf },
    /// Twistor regularity for Ψ(1), the subalgebra of an extension, or a sweep.
    Twistor {
        /// Extension file; computes l = α^{-1}(p_{Ξ-Ψ(1)}).
        #[arg(long, conflicts_with = "scan")]
        extension: Option<PathBuf>,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value = "R")]
        real_form: String,
        #[arg(long, value_delimiter = ',')]
        xi: Vec<String>,
        #[command(flatten)]
        comp: ComponentArgs,
        /// Ψ(1) as 1-based labels.
        #[arg(long, value_delimiter = ',')]
        psi1: Vec<String>,
        /// Eigenvalues ±1 on Ξ of an involutive symmetry (extension mode).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        involution: Vec<String>,
        /// Sweep all gradings instead.
        #[arg(long)]
        scan: bool,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Cases with Λ = Ξ over all gradings within the bounds.
    LambdaFull {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_xi: usize,
        #[arg(long, default_value_t = 2)]
        max_subset: usize,
        /// `exists` or `all`.
        #[arg(long, default_value = "exists")]
        rule: String,
    },
}

/// What a command produces.
enum Output {
    Table(Table),
    Classify { components: Table, families: Table },
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_label(s: &str, rank: usize) -> Result<usize> {
    let t = s.trim();
    let (num, copy) = match t.strip_suffix('\'') {
        Some(n) => (n, 1),
        None => (t, 0),
    };
    let k: usize = num.parse().map_err(|_| schema(format!("not a simple-root label: {s:?}")))?;
    if k == 0 || k > rank {
        return Err(Error::Index { index: k, rank });
    }
    Ok(k - 1 + copy * rank)
}

fn family_rank(a: &AlgebraArgs) -> Result<(Family, usize, RealForm)> {
    let family: Family = a.algebra.parse()?;
    let rank = match (family.fixed_rank(), a.rank) {
        (Some(r), None) => r,
        (Some(r), Some(n)) if n != r => return Err(Error::Unsupported { family: family.to_string(), rank: n }),
        (_, Some(n)) => n,
        (None, None) => return Err(schema("--rank is required for this family")),
    };
    let form: RealForm = a.real_form.parse().map_err(|_| schema(format!("unknown real form {:?}", a.real_form)))?;
    Ok((family, rank, form))
}

/// Ξ from labels; on a doubled diagram the conjugate of each label is added.
fn grading(a: &AlgebraArgs, xi: &[usize]) -> Result<GradedParabolic> {
    let (family, rank, form) = family_rank(a)?;
    let rs = symsolve::root_system(family, rank, form)?;
    let mut xi = xi.to_vec();
    if rs.complex_as_real() {
        let conj: Vec<usize> = xi.iter().map(|&i| rs.conj(i)).collect();
        xi.extend(conj);
    }
    xi.sort_unstable();
    xi.dedup();
    GradedParabolic::new(rs, &xi)
}

fn xi_of(a: &AlgebraArgs) -> Result<Vec<usize>> {
    let (_, rank, _) = family_rank(a)?;
    if a.xi.is_empty() {
        return Err(schema("--xi is required"));
    }
    a.xi.iter().map(|s| parse_label(s, rank)).collect()
}

fn parse_components(gp: &GradedParabolic, c: &ComponentArgs) -> Result<Vec<CurvatureComponent>> {
    let rs = gp.rs();
    let all = kostant::harmonic_components(gp, !c.all);
    if c.components.is_empty() {
        return Ok(all);
    }
    let mut out = Vec::new();
    for spec in &c.components {
        let (pair, copy) = match spec.split_once('@') {
            Some((p, k)) => (p, Some(k.trim().parse::<usize>().map_err(|_| schema(format!("bad copy in {spec:?}")))?)),
            None => (spec.as_str(), None),
        };
        let (a, b) = pair.split_once(':').ok_or_else(|| schema(format!("component {spec:?} is not of the form a:b")))?;
        let (a, b) = (parse_label(a, rs.rank())?, parse_label(b, rs.rank())?);
        if a >= rs.n() || b >= rs.n() {
            return Err(Error::Index { index: a.max(b), rank: rs.rank() });
        }
        let copy = copy.unwrap_or_else(|| rs.copy_of(a));
        if !kostant::admissible(gp, a, b) || copy >= rs.copies() {
            return Err(Error::Mismatch(format!("{spec} is not a harmonic curvature component for this grading")));
        }
        let comp = kostant::component(gp, a, b, copy)?;
        if !out.contains(&comp) {
            out.push(comp);
        }
    }
    Ok(out)
}

fn components_table(gp: &GradedParabolic, cs: &[CurvatureComponent]) -> Result<Table> {
    Table::new("component", cs.iter().map(|c| Record::Component(ComponentRecord::new(c, gp))).collect())
}

fn families_for(gp: &GradedParabolic, form: RealForm, subset: &[CurvatureComponent]) -> Result<Vec<Record>> {
    let full = scan::with_conjugates(subset, gp)?;
    let cs = symsolve::constraint_system(&full, gp, form)?;
    let families = symsolve::solve_symmetries(&cs)?;
    Ok(families.iter().map(|f| Record::Family(FamilyRecord::new(f, &full, gp))).collect())
}

fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for x in items {
        let grown: Vec<Vec<T>> =
            out.iter().filter(|s| s.len() < k).map(|s| s.iter().cloned().chain([x.clone()]).collect()).collect();
        out.extend(grown);
    }
    out.retain(|s| !s.is_empty());
    out
}

fn classify(alg: &AlgebraArgs, comp: &ComponentArgs, max_subset: usize, max_xi: usize) -> Result<Output> {
    let (_, rank, form) = family_rank(alg)?;
    let xis: Vec<Vec<usize>> = if alg.xi.is_empty() {
        let mut v: Vec<Vec<usize>> = subsets(&(0..rank).collect::<Vec<_>>(), max_xi);
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    } else {
        vec![xi_of(alg)?]
    };
    let per_case: Vec<Result<(Vec<Record>, Vec<Record>)>> = xis
        .par_iter()
        .map(|xi| {
            let gp = grading(alg, xi)?;
            let cs: Vec<CurvatureComponent> =
                parse_components(&gp, comp)?.into_iter().filter(|c| !gp.rs().complex_as_real() || c.copy == 0).collect();
            let crecs = cs.iter().map(|c| Record::Component(ComponentRecord::new(c, &gp))).collect();
            let mut frecs = Vec::new();
            for s in subsets(&cs, max_subset) {
                frecs.extend(families_for(&gp, form, &s)?);
            }
            Ok((crecs, frecs))
        })
        .collect();
    let (mut crecs, mut frecs) = (Vec::new(), Vec::new());
    for r in per_case {
        let (c, f) = r?;
        crecs.extend(c);
        frecs.extend(f);
    }
    Ok(Output::Classify { components: Table::new("component", crecs)?, families: Table::new("family", frecs)? })
}

fn labels(g: &GradedParabolic, v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|&i| g.rs().label(i)).collect::<Vec<_>>().join(","))
}

fn analyze(path: &PathBuf) -> Result<Output> {
    let e = ExtensionData::load(path)?;
    let gp = &e.g.gp;
    let mut lines: Vec<(String, String)> = vec![
        ("algebra".into(), gp.rs().algebra_name()),
        ("Xi".into(), labels(gp, gp.xi())),
        ("dim k".into(), e.k.dim.to_string()),
        ("dim h".into(), e.h.len().to_string()),
    ];
    let v = extension::validate_extension(&e);
    for c in &v.conditions {
        let mut s = c.ok.to_string();
        if let Some(w) = &c.witness {
            s.push_str(&format!(" ({w})"));
        }
        lines.push((format!("condition {}", c.name), s));
    }
    lines.push(("valid".into(), v.ok().to_string()));
    if !v.ok() {
        let bad: Vec<String> = v.conditions.iter().filter(|c| !c.ok).map(|c| c.name.to_string()).collect();
        return Err(Error::Invalid(bad.join("; ")));
    }
    let t = extension::curvature(&e)?;
    let hr = extension::harmonic_decompose(&t, &e.g)?;
    lines.push(("regular".into(), hr.is_regular.to_string()));
    lines.push(("normal".into(), hr.is_normal.to_string()));
    for h in &hr.entries {
        lines.push((
            "harmonic entry".into(),
            format!("{} on ({}, {}) -> {}, weight {:?}, {}", h.coefficient, h.slot.0, h.slot.1, h.slot.2, h.weight, h.labels.join(" ")),
        ));
    }
    lines.push(("components".into(), hr.component_labels.join(", ")));
    lines.push(("second route agrees".into(), hr.second_route_agrees.to_string()));
    let sd = extension::symmetry_data_with(&e, &hr)?;
    lines.push(("Phi".into(), labels(gp, &sd.phi)));
    lines.push(("Theta".into(), labels(gp, &sd.theta)));
    lines.push(("Lambda".into(), labels(gp, &sd.lambda)));
    lines.push(("Phi in every I_mu".into(), sd.phi_in_every_i_mu().to_string()));
    lines.push(("h in q_Lambda".into(), extension::isotropy_in_q(&e, &sd.lambda).to_string()));
    let refs: Vec<(&str, String)> = lines.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    Ok(Output::Table(Table::new("report", emit::report(&refs))?))
}

fn reduce(path: &PathBuf, xi: &[usize]) -> Result<Output> {
    let e = ExtensionData::load(path)?;
    let xp = xi
        .iter()
        .map(|&l| l.checked_sub(1).ok_or_else(|| schema("labels start at 1")))
        .collect::<Result<Vec<_>>>()?;
    let r = extension::reduce_geometry(&e, &xp)?;
    let rs = e.g.gp.rs();
    let roots = |v: &[Vec<i64>]| v.iter().map(|x| rs.root_string(x, false)).collect::<Vec<_>>().join(", ");
    let lines = vec![
        ("Xi'", labels(&e.g.gp, &r.xi_prime)),
        ("vertical", roots(&r.vertical)),
        ("horizontal", roots(&r.horizontal)),
        ("congruent", r.congruent.to_string()),
    ];
    Ok(Output::Table(Table::new("report", emit::report(&lines))?))
}

fn twistor_extension(path: &PathBuf, psi1: &[String], involution: &[String]) -> Result<Output> {
    let e = ExtensionData::load(path)?;
    let rank = e.g.rank();
    let p = psi1.iter().map(|s| parse_label(s, rank)).collect::<Result<Vec<_>>>()?;
    let inv: Option<Vec<Q>> = if involution.is_empty() {
        None
    } else {
        Some(involution.iter().map(|s| extension::parse_rational(s)).collect::<Result<_>>()?)
    };
    let tw = extension::twistor_subalgebra(&e, &p, inv.as_deref())?;
    let mut lines = vec![
        ("Psi(1)", labels(&e.g.gp, &p)),
        ("dim l", tw.l_basis.len().to_string()),
        ("closed", tw.closed.to_string()),
    ];
    lines.extend(tw.l_basis.iter().map(|v| ("l basis", extension::vector_string(v, &e.k.names))));
    if let (Some(m), Some(s)) = (&tw.m_basis, tw.symmetric_pair) {
        lines.push(("dim m", m.len().to_string()));
        lines.push(("symmetric pair", s.to_string()));
    }
    Ok(Output::Table(Table::new("report", emit::report(&lines))?))
}

fn twistor_regularity(alg: &AlgebraArgs, comp: &ComponentArgs, psi1: &[String]) -> Result<Output> {
    let gp = grading(alg, &xi_of(alg)?)?;
    let cs = scan::with_conjugates(&parse_components(&gp, comp)?, &gp)?;
    let rank = gp.rs().rank();
    let p = psi1.iter().map(|s| parse_label(s, rank)).collect::<Result<Vec<_>>>()?;
    let reg = kostant::twistor_regularity(&gp, &p, &cs)?;
    let mut lines = vec![("Psi(1)", labels(&gp, &p)), ("regular", reg.regular.to_string())];
    for (c, h) in &reg.offending {
        lines.push(("offending", format!("{} {:?}", c.label(gp.rs()), h)));
    }
    Ok(Output::Table(Table::new("report", emit::report(&lines))?))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Roots(alg) => {
            let gp = grading(alg, &xi_of(alg)?)?;
            let rows = gp.plus_modules().into_iter().map(|m| Record::Module(ModuleRecord::new(m, &gp))).collect();
            Ok(Output::Table(Table::new("module", rows)?))
        }
        Command::Components { alg, comp } => {
            let gp = grading(alg, &xi_of(alg)?)?;
            Ok(Output::Table(components_table(&gp, &parse_components(&gp, comp)?)?))
        }
        Command::Imu { alg, comp } => {
            let gp = grading(alg, &xi_of(alg)?)?;
            let cs = parse_components(&gp, comp)?;
            let lines: Vec<(String, String)> =
                cs.iter().map(|c| (format!("I_mu {}", c.label(gp.rs())), labels(&gp, &kostant::i_mu(c, &gp)))).collect();
            let refs: Vec<(&str, String)> = lines.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
            Ok(Output::Table(Table::new("report", emit::report(&refs))?))
        }
        Command::Psi { alg, comp } => {
            let gp = grading(alg, &xi_of(alg)?)?;
            let cs = scan::with_conjugates(&parse_components(&gp, comp)?, &gp)?;
            let report = kostant::psi(&cs, &gp)?;
            Ok(Output::Table(Table::new("psi", vec![Record::Psi(PsiRecord::new(&report, &cs, &gp))])?))
        }
        Command::Symmetries { alg, comp } => {
            let (_, _, form) = family_rank(alg)?;
            let gp = grading(alg, &xi_of(alg)?)?;
            let cs = parse_components(&gp, comp)?;
            Ok(Output::Table(Table::new("family", families_for(&gp, form, &cs)?)?))
        }
        Command::Classify { alg, comp, max_subset, max_xi } => classify(alg, comp, *max_subset, *max_xi),
        Command::Reduce { file, xi } => reduce(file, xi),
        Command::AnalyzeExtension { file } => analyze(file),
        Command::Twistor { extension: Some(path), psi1, involution, .. } => twistor_extension(path, psi1, involution),
        Command::Twistor { scan: true, max_rank, .. } => {
            let cfg = ScanConfig::new(*max_rank, 4, 2);
            let rows = scan::twistor_scan(&cfg)?.into_iter().map(Record::Twistor).collect();
            Ok(Output::Table(Table::new("twistor", rows)?))
        }
        Command::Twistor { algebra: Some(algebra), rank, real_form, xi, comp, psi1, .. } => {
            let alg = AlgebraArgs { algebra: algebra.clone(), rank: *rank, real_form: real_form.clone(), xi: xi.clone() };
            twistor_regularity(&alg, comp, psi1)
        }
        Command::Twistor { .. } => Err(schema("twistor needs --extension, --scan or algebra flags")),
        Command::LambdaFull { max_rank, max_xi, max_subset, rule } => {
            let mut cfg = ScanConfig::new(*max_rank, *max_xi, *max_subset);
            cfg.rule = match rule.to_ascii_lowercase().as_str() {
                "exists" => LambdaRule::Exists,
                "all" => LambdaRule::All,
                _ => return Err(schema(format!("unknown rule {rule:?}"))),
            };
            let rows = scan::lambda_full_table(&cfg)?.into_iter().map(Record::Lambda).collect();
            Ok(Output::Table(Table::new("lambda", rows)?))
        }
    }
}

fn render(out: &Output, format: Format) -> Result<String> {
    match out {
        Output::Table(t) => emit::emit_table(t, format),
        Output::Classify { components, families } => match format {
            Format::Json => {
                let v = serde_json::json!({
                    "schema": "classify",
                    "components": emit::table_value(components),
                    "families": emit::table_value(families),
                });
                Ok(serde_json::to_string_pretty(&v)? + "\n")
            }
            Format::Text => Ok(format!("{}\n{}", emit::emit_table(components, format)?, emit::emit_table(families, format)?)),
            _ => emit::emit_table(families, format),
        },
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let format: Format = cli.format.parse()?;
    let out = run(cli)?;
    let text = render(&out, format)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Unsupported { .. } => "unsupported",
        Error::Index { .. } => "index",
        Error::NotARoot(_) => "not_a_root",
        Error::InvalidXi(_) => "invalid_xi",
        Error::Mismatch(_) => "mismatch",
        Error::Empty(_) => "empty",
        Error::NotInPsi { .. } => "not_in_psi",
        Error::Overflow(_) => "overflow",
        Error::Jacobi(..) => "jacobi",
        Error::Antisymmetry(..) => "antisymmetry",
        Error::Invalid(_) => "invalid",
        Error::Reduction { .. } => "reduction",
        Error::Obstruction { .. } => "obstruction",
        Error::Degenerate(_) => "degenerate",
        Error::Schema(_) => "schema",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("{}", serde_json::json!({ "error": "schema", "domain": false, "message": e.to_string() }));
            return ExitCode::from(1);
        }
    }
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let domain = e.is_domain();
            eprintln!("{}", serde_json::json!({ "error": error_kind(&e), "domain": domain, "message": e.to_string() }));
            ExitCode::from(if domain { 2 } else { 1 })
        }
    }
}
