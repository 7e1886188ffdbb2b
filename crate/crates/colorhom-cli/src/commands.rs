//! Subcommands and their JSON reports.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use colorhom::algebra::{derived_algebra, ColorHomAlgebra, GradedBasis, LieReport, Product};
use colorhom::cohomology::{cochain_basis, cohomology_group, Coboundary, CochainSpace};
use colorhom::deformation::{check_deformation, composition_deformation, first_order_class};
use colorhom::hls::hls_report;
use colorhom::morphisms::{enumerate_morphisms, twist, verify_morphism, LinearMap, DEFAULT_BUDGET};
use colorhom::representation::{adjoint, check_representation, Representation};
use colorhom::structure::{check_inclusion_lattice, map_space, MapJordanAlgebra, MapKind};
use colorhom::{GroupElement, Matrix, Scalar};

use crate::error::CliError;
use crate::format::{load_document, Entries, MapEntry, Workspace};

pub const SCHEMA: u32 = 1;
pub const BUDGET_ENV: &str = "COLORHOM_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "colorhom", version, about = "Exact computations for color Hom-Lie algebras")]
pub struct Cli {
    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Treat validation failures of loaded objects and refused preconditions as fatal.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every object in a document with its validator.
    Validate { file: PathBuf },
    /// Enumerate morphisms over an entry grid, twist by each, compare against a bundle.
    Twists(TwistsArgs),
    /// Dimensions and representatives of H^n_r per cochain degree.
    Cohomology(CohomologyArgs),
    /// Homogeneous map spaces (Der, GDer, QDer, centroid, quasi-centroid) or the inclusion lattice.
    Structure(StructureArgs),
    /// The Hom-Jordan algebra on the quasi-centroid.
    Jordan(JordanArgs),
    /// Formal deformations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// The bracket on the quotient by the annihilator of a σ-derivation.
    Hls(HlsArgs),
    /// The n-th derived Hom-algebra.
    Derived(DerivedArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraSel {
    pub file: PathBuf,
    /// Algebra name; optional when the document defines exactly one.
    #[arg(long)]
    pub algebra: Option<String>,
}

#[derive(Debug, Args)]
pub struct TwistsArgs {
    #[command(flatten)]
    pub sel: AlgebraSel,
    /// Map bundle to compare against.
    #[arg(long)]
    pub bundle: Option<String>,
    /// Entry grid for the enumeration.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1")]
    pub entries: Vec<String>,
    /// Candidate budget; overrides the environment.
    #[arg(long)]
    pub budget: Option<u128>,
    /// Skip the enumeration and only check the bundle.
    #[arg(long)]
    pub no_enumerate: bool,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub sel: AlgebraSel,
    /// Representation name; the adjoint when omitted.
    #[arg(long)]
    pub rep: Option<String>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub r: i64,
    /// Cochain degree as comma-separated components; all degrees when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct StructureArgs {
    #[command(flatten)]
    pub sel: AlgebraSel,
    /// der, gder, qder, centroid or qc.
    #[arg(long, required_unless_present = "lattice")]
    pub kind: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<i64>>,
    /// Impose [D,α] = 0 on quasi-centroid maps.
    #[arg(long)]
    pub strict_commute: bool,
    /// Check the inclusion lattice instead, for the powers in --ks.
    #[arg(long)]
    pub lattice: bool,
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub ks: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct JordanArgs {
    #[command(flatten)]
    pub sel: AlgebraSel,
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub ks: Vec<u32>,
    #[arg(long)]
    pub strict_commute: bool,
}

#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Check a truncated deformation stored in the document.
    Check {
        file: PathBuf,
        #[arg(long)]
        deformation: Option<String>,
    },
    /// [.,.]_t = α_t∘[.,.] with α_t = Id + tα₁, α₁ taken from a bundle.
    Compose {
        file: PathBuf,
        #[arg(long)]
        bundle: String,
        #[arg(long = "map")]
        map: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Use the n-th derived version α_t^{2ⁿ}.
        #[arg(long)]
        derived: Option<u32>,
    },
}

#[derive(Debug, Args)]
pub struct HlsArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub name: Option<String>,
    /// Replace the central scalar δ.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
}

#[derive(Debug, Args)]
pub struct DerivedArgs {
    #[command(flatten)]
    pub sel: AlgebraSel,
    #[arg(long)]
    pub n: u32,
}

/// Exit code plus the text destined for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    pass: bool,
    summary: String,
    body: Value,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let doc = json!({
                "schema": SCHEMA,
                "command": r.command,
                "pass": r.pass,
                "result": r.body,
            });
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize")),
                Format::Text => render_text(&doc),
            };
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            Outcome { code: if r.pass { 0 } else { 1 }, stdout, stderr: format!("{} {verdict}: {}\n", r.command, r.summary) }
        }
        Err(e) => {
            let doc = json!({ "schema": SCHEMA, "error": e.to_string(), "exit": e.exit_code() });
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize")),
                Format::Text => render_text(&doc),
            };
            Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
        }
    }
}

/// `path = value` lines in document order.
fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => {
                out.push_str(prefix);
                out.push_str(" = ");
                out.push_str(&other.to_string());
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file } => validate(&load_document(file)?),
        Command::Twists(a) => twists(a, cli.strict),
        Command::Cohomology(a) => cohomology(a, cli.strict),
        Command::Structure(a) => structure(a, cli.strict),
        Command::Jordan(a) => jordan(a, cli.strict),
        Command::Deform(DeformCommand::Check { file, deformation }) => deform_check(file, deformation.as_deref(), cli.strict),
        Command::Deform(DeformCommand::Compose { file, bundle, map, order, derived }) => {
            deform_compose(file, bundle, map, *order, *derived, cli.strict)
        }
        Command::Hls(a) => hls(a),
        Command::Derived(a) => derived(a, cli.strict),
    }
}

fn pick<'a, T>(items: &'a BTreeMap<String, T>, name: Option<&str>, what: &str) -> Result<(&'a str, &'a T), CliError> {
    match name {
        Some(n) => items
            .get_key_value(n)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| CliError::Usage(format!("no {what} named `{n}`"))),
        None if items.len() == 1 => {
            let (k, v) = items.iter().next().expect("one item");
            Ok((k.as_str(), v))
        }
        None => Err(CliError::Usage(format!(
            "the document defines {} objects of kind {what}; choose one with --{what}",
            items.len()
        ))),
    }
}

/// Loads the document and selects an algebra; with `strict` a failing validator is fatal.
fn load_algebra(sel: &AlgebraSel, strict: bool) -> Result<(Workspace, String, ColorHomAlgebra, LieReport), CliError> {
    let ws = load_document(&sel.file)?;
    let (name, a) = pick(&ws.algebras, sel.algebra.as_deref(), "algebra")?;
    let (name, a) = (name.to_string(), a.clone());
    let rep = a.check();
    if strict && !rep.is_color_hom_lie() {
        return Err(colorhom::Error::Structure(format!("algebra `{name}` fails validation")).into());
    }
    Ok((ws, name, a, rep))
}

fn element(a: &ColorHomAlgebra, comps: &[i64]) -> Result<GroupElement, CliError> {
    a.eps().group().element(comps).map_err(|e| CliError::Usage(e.to_string()))
}

fn vec_json(v: &[Scalar], basis: &GradedBasis) -> Value {
    let m: serde_json::Map<String, Value> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (basis.names()[i].clone(), Value::String(c.literal())))
        .collect();
    Value::Object(m)
}

fn pair(basis: &GradedBasis, i: usize, j: usize) -> String {
    format!("{},{}", basis.names()[i], basis.names()[j])
}

/// Upper-triangle bracket entries, zero entries included.
fn upper_table(p: &Product, basis: &GradedBasis) -> Value {
    let n = p.dim();
    let mut m = serde_json::Map::new();
    for i in 0..n {
        for j in i + 1..n {
            m.insert(pair(basis, i, j), vec_json(p.get(i, j), basis));
        }
    }
    Value::Object(m)
}

fn gamma_str(g: &GroupElement) -> String {
    g.to_string()
}

fn validate(ws: &Workspace) -> Result<Report, CliError> {
    let mut pass = true;
    let mut failed = Vec::new();
    let mut algebras = serde_json::Map::new();
    for (name, a) in &ws.algebras {
        let r = a.check();
        let ok = r.is_color_hom_lie();
        if !ok {
            failed.push(format!("algebra {name}"));
        }
        pass &= ok;
        algebras.insert(name.clone(), json!({ "color_hom_lie": ok, "multiplicative": r.multiplicative.pass, "checks": to_value(&r) }));
    }
    let mut reps = serde_json::Map::new();
    for (name, e) in &ws.representations {
        let a = ws.algebra(&e.algebra)?;
        let r = check_representation(a, &e.rep)?;
        if !r.pass() {
            failed.push(format!("representation {name}"));
        }
        pass &= r.pass();
        reps.insert(name.clone(), json!({ "pass": r.pass(), "checks": to_value(&r) }));
    }
    let mut bundles = serde_json::Map::new();
    for (name, b) in &ws.bundles {
        let a = ws.algebra(&b.algebra)?;
        let mut entries = Vec::new();
        for e in &b.entries {
            let f = LinearMap::new(a, e.matrix.clone())?;
            let ok = verify_morphism(a, &f, false);
            if !ok {
                failed.push(format!("map {name}/{}", e.name));
            }
            pass &= ok;
            entries.push(json!({ "name": e.name, "morphism": ok, "even": f.even }));
        }
        bundles.insert(name.clone(), Value::Array(entries));
    }
    let mut defs = serde_json::Map::new();
    for (name, d) in &ws.deformations {
        let a = ws.algebra(&d.algebra)?;
        let r = check_deformation(a, &d.bracket)?;
        if !r.pass() {
            failed.push(format!("deformation {name}"));
        }
        pass &= r.pass();
        defs.insert(name.clone(), json!({ "pass": r.pass(), "checks": to_value(&r) }));
    }
    let mut hls_out = serde_json::Map::new();
    for (name, h) in &ws.hls {
        let v = match hls_report(&h.algebra, &h.derivation) {
            Ok(r) => {
                if !r.pass() {
                    failed.push(format!("hls {name}"));
                }
                pass &= r.pass();
                json!({ "pass": r.pass(), "checks": to_value(&r) })
            }
            Err(e) => {
                failed.push(format!("hls {name}"));
                pass = false;
                json!({ "pass": false, "refused": e.to_string() })
            }
        };
        hls_out.insert(name.clone(), v);
    }
    let summary = if failed.is_empty() { "all objects valid".to_string() } else { format!("failing: {}", failed.join(", ")) };
    Ok(Report {
        command: "validate",
        pass,
        summary,
        body: json!({
            "algebras": algebras,
            "representations": reps,
            "maps": bundles,
            "deformations": defs,
            "hls": hls_out,
        }),
    })
}

fn budget(arg: Option<u128>) -> Result<u128, CliError> {
    if let Some(b) = arg {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be a non-negative integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Listed entries that differ from the computed product.
fn mismatches(expected: &Entries, got: &Product, basis: &GradedBasis) -> Vec<Value> {
    expected
        .iter()
        .filter(|((i, j), v)| got.get(*i, *j) != v)
        .map(|((i, j), v)| {
            json!({ "pair": pair(basis, *i, *j), "expected": vec_json(v, basis), "computed": vec_json(got.get(*i, *j), basis) })
        })
        .collect()
}

fn twists(args: &TwistsArgs, strict: bool) -> Result<Report, CliError> {
    let (ws, name, a, _) = load_algebra(&args.sel, strict)?;
    let basis = a.basis().clone();
    let mut pass = true;
    let mut body = serde_json::Map::new();
    body.insert("algebra".into(), json!(name));
    let mut found: Vec<Matrix> = Vec::new();
    if !args.no_enumerate {
        let grid: Vec<Scalar> = args
            .entries
            .iter()
            .map(|s| Scalar::parse(s, ws.root_order).map_err(|e| CliError::Usage(format!("--entries: {e}"))))
            .collect::<Result<_, _>>()?;
        let maps = enumerate_morphisms(&a, &grid, budget(args.budget)?)?;
        let mut listed = Vec::new();
        let mut twist_failures = 0usize;
        let mut reverified = true;
        for f in &maps {
            reverified &= verify_morphism(&a, f, false);
            let t = twist(&a, f)?;
            let r = t.check();
            if !r.is_color_hom_lie() {
                twist_failures += 1;
            }
            listed.push(json!({
                "matrix": to_value(&f.matrix),
                "even": f.even,
                "twisted": upper_table(t.product(), &basis),
                "twist_is_color_hom_lie": r.is_color_hom_lie(),
            }));
            found.push(f.matrix.clone());
        }
        pass &= twist_failures == 0 && reverified;
        body.insert(
            "enumeration".into(),
            json!({
                "grid": args.entries,
                "candidates": (grid.len() as u128).pow((a.dim() * a.dim()) as u32).to_string(),
                "morphisms": maps.len(),
                "all_reverified": reverified,
                "twist_failures": twist_failures,
                "maps": listed,
            }),
        );
    }
    if let Some(bname) = &args.bundle {
        let b = ws.bundles.get(bname).ok_or_else(|| CliError::Usage(format!("no map bundle named `{bname}`")))?;
        if b.algebra != name {
            return Err(CliError::Usage(format!("bundle `{bname}` belongs to algebra `{}`", b.algebra)));
        }
        let mut entries = Vec::new();
        let (mut morphisms, mut matching, mut in_enum) = (0usize, 0usize, 0usize);
        for e in &b.entries {
            let v = bundle_entry(&a, e, &found, args.no_enumerate)?;
            morphisms += usize::from(v["morphism"] == json!(true));
            matching += usize::from(v["twisted_matches"] == json!(true));
            in_enum += usize::from(v["in_enumeration"] == json!(true));
            entries.push(v);
        }
        let total = b.entries.len();
        let with_expect = b.entries.iter().filter(|e| e.twisted.is_some()).count();
        pass &= morphisms == total && matching == with_expect && (args.no_enumerate || in_enum == total);
        body.insert(
            "bundle".into(),
            json!({
                "name": bname,
                "entries": total,
                "morphisms": morphisms,
                "in_enumeration": if args.no_enumerate { Value::Null } else { json!(in_enum) },
                "twisted_matches": matching,
                "with_expected_twist": with_expect,
                "maps": entries,
            }),
        );
    }
    let summary = match (body.get("enumeration"), body.get("bundle")) {
        (Some(en), Some(bu)) => format!(
            "{} morphisms enumerated; bundle: {}/{} morphisms, {}/{} twisted tables match",
            en["morphisms"], bu["morphisms"], bu["entries"], bu["twisted_matches"], bu["with_expected_twist"]
        ),
        (Some(en), None) => format!("{} morphisms enumerated, {} twist failures", en["morphisms"], en["twist_failures"]),
        (None, Some(bu)) => format!(
            "bundle: {}/{} morphisms, {}/{} twisted tables match",
            bu["morphisms"], bu["entries"], bu["twisted_matches"], bu["with_expected_twist"]
        ),
        (None, None) => "nothing to do".into(),
    };
    Ok(Report { command: "twists", pass, summary, body: Value::Object(body) })
}

fn bundle_entry(a: &ColorHomAlgebra, e: &MapEntry, found: &[Matrix], skip: bool) -> Result<Value, CliError> {
    let basis = a.basis();
    let f = LinearMap::new(a, e.matrix.clone())?;
    let morphism = verify_morphism(a, &f, false);
    let computed = f.matrix.clone();
    let twisted = a.product().compose_left(&computed);
    let twist_ok = morphism && twist(a, &f)?.check().is_color_hom_lie();
    let (matches, diff) = match &e.twisted {
        Some(exp) => {
            let d = mismatches(exp, &twisted, basis);
            (json!(d.is_empty()), Value::Array(d))
        }
        None => (Value::Null, Value::Array(Vec::new())),
    };
    Ok(json!({
        "name": e.name,
        "morphism": morphism,
        "even": f.even,
        "in_enumeration": if skip { Value::Null } else { json!(found.contains(&e.matrix)) },
        "twisted": upper_table(&twisted, basis),
        "twist_is_color_hom_lie": twist_ok,
        "twisted_matches": matches,
        "mismatches": diff,
    }))
}

/// Nonzero values of a cochain on canonical tuples.
fn cochain_json(a: &ColorHomAlgebra, m: &Representation, space: &CochainSpace, coords: &[Scalar]) -> Value {
    let free = space.to_free(coords);
    let mut out = serde_json::Map::new();
    for t in &space.tuples {
        let v = space.eval_basis(a, &free, t);
        if v.iter().any(|c| !c.is_zero()) {
            let key: Vec<&str> = t.iter().map(|&i| a.basis().names()[i].as_str()).collect();
            out.insert(key.join(","), vec_json(&v, &m.carrier));
        }
    }
    Value::Object(out)
}

fn cohomology(args: &CohomologyArgs, strict: bool) -> Result<Report, CliError> {
    let (ws, name, a, _) = load_algebra(&args.sel, strict)?;
    let (rep_name, m) = match &args.rep {
        Some(r) => {
            let e = ws.representations.get(r).ok_or_else(|| CliError::Usage(format!("no representation named `{r}`")))?;
            if e.algebra != name {
                return Err(CliError::Usage(format!("representation `{r}` belongs to algebra `{}`", e.algebra)));
            }
            (r.clone(), e.rep.clone())
        }
        None => ("adjoint".to_string(), adjoint(&a)),
    };
    let gammas = match &args.gamma {
        Some(g) => vec![element(&a, g)?],
        None => a.eps().group().elements(),
    };
    let cb = Coboundary::new(&a, &m, args.r);
    let mut degrees = Vec::new();
    let mut squares_vanish = true;
    let mut dims = Vec::new();
    for g in &gammas {
        let h = cohomology_group(&a, &m, args.n, args.r, g)?;
        let next = cochain_basis(&a, &m, args.n + 1, g)?;
        let next2 = cochain_basis(&a, &m, args.n + 2, g)?;
        let d1 = cb.matrix(&h.space, &next)?;
        let d2 = cb.matrix(&next, &next2)?;
        let sq = next.dim() == 0 || h.space.dim() == 0 || d2.mul(&d1).is_zero();
        squares_vanish &= sq && h.b_in_z;
        let reps: Vec<Value> = h.representatives.iter().map(|c| cochain_json(&a, &m, &h.space, c)).collect();
        dims.push(format!("{}:({},{},{})", gamma_str(g), h.dim_z(), h.dim_b(), h.dim_h()));
        degrees.push(json!({
            "gamma": gamma_str(g),
            "cochains": h.space.dim(),
            "dim_z": h.dim_z(),
            "dim_b": h.dim_b(),
            "dim_h": h.dim_h(),
            "delta_squared_zero": sq && h.b_in_z,
            "representatives": reps,
        }));
    }
    Ok(Report {
        command: "cohomology",
        pass: squares_vanish,
        summary: format!("H^{} r={} (Z,B,H) per degree {}", args.n, args.r, dims.join(" ")),
        body: json!({ "algebra": name, "representation": rep_name, "n": args.n, "r": args.r, "degrees": degrees }),
    })
}

fn structure(args: &StructureArgs, strict: bool) -> Result<Report, CliError> {
    let (_, name, a, _) = load_algebra(&args.sel, strict)?;
    let gammas = match &args.gamma {
        Some(g) => vec![element(&a, g)?],
        None => a.eps().group().elements(),
    };
    if args.lattice {
        let r = check_inclusion_lattice(&a, &args.ks, &gammas)?;
        return Ok(Report {
            command: "structure",
            pass: r.pass(),
            summary: format!("inclusion lattice for k in {:?}: {}", args.ks, if r.pass() { "holds" } else { "violated" }),
            body: json!({ "algebra": name, "ks": args.ks, "lattice": to_value(&r) }),
        });
    }
    let kind_s = args.kind.as_deref().expect("clap requires --kind without --lattice");
    let kind = MapKind::parse(kind_s).ok_or_else(|| CliError::Usage(format!("unknown map kind `{kind_s}`")))?;
    let strict_commute = kind != MapKind::QCentroid || args.strict_commute;
    let mut degrees = Vec::new();
    let mut dims = Vec::new();
    for g in &gammas {
        let s = map_space(&a, kind, args.k, g, strict_commute)?;
        dims.push(format!("{}:{}", gamma_str(g), s.dim()));
        degrees.push(json!({ "gamma": gamma_str(g), "dim": s.dim(), "basis": to_value(&s.basis) }));
    }
    Ok(Report {
        command: "structure",
        pass: true,
        summary: format!("{} k={} dims {}", kind.name(), args.k, dims.join(" ")),
        body: json!({ "algebra": name, "kind": kind.name(), "k": args.k, "strict_commute": strict_commute, "degrees": degrees }),
    })
}

fn jordan(args: &JordanArgs, strict: bool) -> Result<Report, CliError> {
    let (_, name, a, _) = load_algebra(&args.sel, strict)?;
    let j = MapJordanAlgebra::quasi_centroid(&a, &args.ks, args.strict_commute)?;
    let r = j.check();
    let elements: Vec<Value> = j
        .elements
        .iter()
        .zip(&j.degrees)
        .map(|(m, g)| json!({ "gamma": gamma_str(g), "matrix": to_value(m) }))
        .collect();
    Ok(Report {
        command: "jordan",
        pass: r.pass(),
        summary: format!("quasi-centroid of dim {}; closure {}, ε-commutativity {}, Hom-Jordan identity {}", j.dim(), r.closure.pass, r.eps_commutative.pass, r.jordan_identity.pass),
        body: json!({ "algebra": name, "ks": args.ks, "dim": j.dim(), "elements": elements, "checks": to_value(&r) }),
    })
}

fn products_json(terms: &[Product], basis: &GradedBasis) -> Value {
    Value::Array(terms.iter().map(|p| upper_table(p, basis)).collect())
}

fn deform_check(file: &std::path::Path, name: Option<&str>, strict: bool) -> Result<Report, CliError> {
    let ws = load_document(file)?;
    let (dname, d) = pick(&ws.deformations, name, "deformation")?;
    let a = ws.algebra(&d.algebra)?;
    if strict && !a.check().is_color_hom_lie() {
        return Err(colorhom::Error::Structure(format!("algebra `{}` fails validation", d.algebra)).into());
    }
    let r = check_deformation(a, &d.bracket)?;
    let c = if d.bracket.order >= 1 { Some(first_order_class(a, &d.bracket)?) } else { None };
    let pass = r.pass() && c.as_ref().map_or(true, |c| c.is_cocycle);
    Ok(Report {
        command: "deform check",
        pass,
        summary: format!(
            "deformation `{dname}` to order {}: {}; first-order cocycle {}",
            d.bracket.order,
            if r.pass() { "identities hold" } else { "identities fail" },
            c.as_ref().map_or("n/a".to_string(), |c| c.is_cocycle.to_string())
        ),
        body: json!({ "deformation": dname, "algebra": d.algebra, "order": d.bracket.order, "checks": to_value(&r), "first_order": c.as_ref().map(to_value) }),
    })
}

fn deform_compose(
    file: &std::path::Path,
    bundle: &str,
    map: &str,
    order: usize,
    derived: Option<u32>,
    strict: bool,
) -> Result<Report, CliError> {
    let ws = load_document(file)?;
    let b = ws.bundles.get(bundle).ok_or_else(|| CliError::Usage(format!("no map bundle named `{bundle}`")))?;
    let e = b
        .entries
        .iter()
        .find(|e| e.name == map)
        .ok_or_else(|| CliError::Usage(format!("bundle `{bundle}` has no map `{map}`")))?;
    let l = ws.algebra(&b.algebra)?;
    if strict && !l.check().is_color_hom_lie() {
        return Err(colorhom::Error::Structure(format!("algebra `{}` fails validation", b.algebra)).into());
    }
    let alphas = vec![Matrix::identity(l.dim()), e.matrix.clone()];
    let cd = composition_deformation(l, &alphas, order, derived, strict)?;
    let base = (*l).clone();
    let r = check_deformation(&base, &cd.bracket)?;
    let c = if order >= 1 { Some(first_order_class(&base, &cd.bracket)?) } else { None };
    let pass = r.pass() && c.as_ref().map_or(true, |c| c.is_cocycle);
    let basis = l.basis();
    let stated_differs = cd.stated_terms.as_ref().map(|s| {
        let n = cd.bracket.terms.len().max(s.len());
        (0..n).any(|i| cd.bracket.terms.get(i) != s.get(i))
    });
    Ok(Report {
        command: "deform compose",
        pass,
        summary: format!(
            "alpha_t = Id + t*{map} to order {order}: deformation {}, first-order cocycle {}, endomorphism defect {}",
            if r.pass() { "passes" } else { "fails" },
            c.as_ref().map_or("n/a".to_string(), |c| c.is_cocycle.to_string()),
            cd.endomorphism_defect.map_or("none".to_string(), |o| format!("at t^{o}"))
        ),
        body: json!({
            "algebra": b.algebra,
            "map": map,
            "order": order,
            "derived": derived,
            "endomorphism_defect": cd.endomorphism_defect,
            "bracket_terms": products_json(&cd.bracket.terms, basis),
            "alpha_terms": to_value(&cd.bracket.alpha_terms),
            "stated_terms": cd.stated_terms.as_ref().map(|s| products_json(s, basis)),
            "stated_terms_differ": stated_differs,
            "checks": to_value(&r),
            "first_order": c.as_ref().map(to_value),
        }),
    })
}

fn hls(args: &HlsArgs) -> Result<Report, CliError> {
    let ws = load_document(&args.file)?;
    let (name, h) = pick(&ws.hls, args.name.as_deref(), "name")?;
    let mut d = h.derivation.clone();
    if let Some(s) = &args.delta {
        d.delta_scalar = Scalar::parse(s, ws.root_order).map_err(|e| CliError::Usage(format!("--delta: {e}")))?;
    }
    let r = hls_report(&h.algebra, &d)?;
    let hb = colorhom::hls::HlsBracket::new(&h.algebra, &d)?;
    let table: BTreeMap<String, Value> = hb
        .table()
        .iter()
        .map(|((i, j), v)| (pair(&h.algebra.basis, *i, *j), to_value(v)))
        .collect();
    let quotient_dim = hb.quotient.dim();
    let verdict = |c: bool| if c { "ok" } else { "FAIL" };
    Ok(Report {
        command: "hls",
        pass: r.pass(),
        summary: format!(
            "`{name}` delta={}: Leibniz {}, σ(Ann)⊆Ann {}, Δσ=δσΔ {}, skew {}, Jacobi {}",
            d.delta_scalar.literal(),
            verdict(r.sigma.leibniz.pass),
            verdict(r.ann_invariant),
            verdict(r.delta_sigma.pass),
            verdict(r.skew.pass),
            verdict(r.jacobi.pass)
        ),
        body: json!({
            "name": name,
            "delta": d.delta_scalar.literal(),
            "quotient_dim": quotient_dim,
            "bracket_representatives": table,
            "checks": to_value(&r),
        }),
    })
}

fn derived(args: &DerivedArgs, strict: bool) -> Result<Report, CliError> {
    let (_, name, a, _) = load_algebra(&args.sel, strict)?;
    let d = derived_algebra(&a, args.n)?;
    let r = d.check();
    Ok(Report {
        command: "derived",
        pass: r.is_color_hom_lie(),
        summary: format!("derived algebra n={} is color Hom-Lie: {}", args.n, r.is_color_hom_lie()),
        body: json!({
            "algebra": name,
            "n": args.n,
            "bracket": upper_table(d.product(), d.basis()),
            "alpha": to_value(d.alpha()),
            "checks": to_value(&r),
        }),
    })
}
