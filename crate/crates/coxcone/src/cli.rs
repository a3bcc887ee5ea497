//! The `coxcone` command line: argument parsing, input files and JSON/DOT reports.
//!
//! Reports are compact JSON with sorted keys, rationals as `"p/q"` strings and
//! 1-based indices, so identical inputs give identical bytes.

use std::io::Read;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::coxeter::CoxElem;
use crate::error::{Error, Result};
use crate::exactla::{fmt_rat, neg, parse_rat, PolyCone, Rat, RatVec};
use crate::facial::{
    enumerate_facial, facial_closure, is_facial, is_facial_by_signs, sign_vectors, subspace_sign_vectors, SignVector,
};
use crate::golden;
use crate::imagcone::ImagCone;
use crate::realization::{RootBase, SystemSpec};
use crate::subcone::{
    tits_chain_normalize, tits_cross_section, tits_interval_j, tits_renner_make, tits_renner_mul, tits_type_maps,
    CrossSection, PolySubcone, TypeData,
};
use crate::subset::Subset;
use crate::titscone::{FaceHandle, TitsCone};

#[derive(Parser, Debug)]
#[command(name = "coxcone", version, about = "Faces of Tits cones, imaginary cones and their invariant subcones")]
struct Cli {
    /// Print lattices as DOT digraphs instead of JSON.
    #[arg(long, global = true)]
    dot: bool,
    /// Word length bound for enumerations over the Coxeter group.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Step bound for searches that may not terminate.
    #[arg(long, global = true, default_value_t = 1000)]
    cap: usize,
    /// Worker threads for enumeration-heavy commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct SystemArg {
    /// System JSON file, or `-` for stdin.
    file: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Components of the GCM with their types.
    Classify(SystemArg),
    /// Facial sets.
    #[command(subcommand)]
    Facial(FacialCmd),
    /// Faces of the Tits cone, written `THETA@WORD` (e.g. `{1,2}@3,1`).
    #[command(subcommand)]
    Tits(TitsCmd),
    /// Faces of the imaginary cone, written like Tits faces.
    #[command(subcommand)]
    Imaginary(ImagCmd),
    /// Invariant subcones: the Tits cone itself (`--tits`) or `cc(W·S)` for finite `W`.
    #[command(subcommand)]
    Subcone(SubconeCmd),
    /// Checks the built-in reference values.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum FacialCmd {
    /// All facial sets.
    List(SystemArg),
    /// Facial sets that are also special.
    Special(SystemArg),
    /// Decides whether `J` is facial, by linear programming and by sign vectors.
    Test {
        #[command(flatten)]
        sys: SystemArg,
        j: String,
    },
    /// Smallest facial set containing `L`.
    Closure {
        #[command(flatten)]
        sys: SystemArg,
        l: String,
    },
    /// Sign vectors of `ker Aᵀ` and of the relation space `L_h`.
    Arrangement(SystemArg),
}

#[derive(Subcommand, Debug)]
enum TitsCmd {
    /// Hull, centralizer and normalizer of a face.
    Face {
        #[command(flatten)]
        sys: SystemArg,
        face: String,
    },
    Meet {
        #[command(flatten)]
        sys: SystemArg,
        a: String,
        b: String,
    },
    Join {
        #[command(flatten)]
        sys: SystemArg,
        a: String,
        b: String,
    },
    /// Writes a point as `σμ` with `μ` in the closed chamber.
    Normalize {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Whether a point of the Tits cone lies in its interior.
    Interior {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
enum ImagCmd {
    /// The cone `K` as generators and lineality.
    K(SystemArg),
    /// The cone `K_Θ` for one facial set.
    KTheta {
        #[command(flatten)]
        sys: SystemArg,
        theta: String,
    },
    Face {
        #[command(flatten)]
        sys: SystemArg,
        face: String,
    },
    Meet {
        #[command(flatten)]
        sys: SystemArg,
        a: String,
        b: String,
    },
    Join {
        #[command(flatten)]
        sys: SystemArg,
        a: String,
        b: String,
    },
    /// The dual cone `K∨` and the semiduality check up to `--depth`.
    Dual(SystemArg),
}

#[derive(Args, Debug)]
struct SubconeArg {
    /// System JSON file, or `-` for stdin.
    file: String,
    /// Use the Tits cone itself.
    #[arg(long, conflicts_with = "seeds")]
    tits: bool,
    /// A point of the closed chamber in `h*` coordinates; repeat for several.
    #[arg(long = "seed", value_name = "POINT", allow_hyphen_values = true)]
    seeds: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum SubconeCmd {
    /// Faces of the cone with the cross section marked.
    Build(SubconeArg),
    /// Cross section with its types and covering relations.
    CrossSection(SubconeArg),
    /// Lower and upper type of a face (`THETA@WORD` or a 1-based face index).
    Typemap {
        #[command(flatten)]
        sub: SubconeArg,
        face: String,
    },
    /// Product in the Renner monoid; elements are written `WORD/FACE`.
    RennerMul {
        #[command(flatten)]
        sub: SubconeArg,
        a: String,
        b: String,
    },
    /// The interval between two cross-section faces and its comparison with a face lattice.
    Interval {
        #[command(flatten)]
        sub: SubconeArg,
        lower: String,
        upper: String,
    },
    /// Normalizes the given chain, or checks all chains when none is given.
    Chains {
        #[command(flatten)]
        sub: SubconeArg,
        faces: Vec<String>,
    },
    /// Whether the negated dual imaginary cone lies in the subcone.
    CheckDimc(SubconeArg),
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    dot: bool,
    depth: usize,
    cap: usize,
}

enum Report {
    Json(Value),
    Dot(String),
    /// JSON that also decides the exit code.
    Failing(Value, i32),
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
    let ctx = Ctx { dot: cli.dot, depth: cli.depth, cap: cli.cap };
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(&ctx, cli.cmd)),
            Err(e) => Err(Error::Precondition(format!("--jobs {j}: {e}"))),
        },
        None => dispatch(&ctx, cli.cmd),
    };
    match result {
        Ok(Report::Json(v)) => Outcome { code: 0, stdout: format!("{v}\n"), stderr: String::new() },
        Ok(Report::Failing(v, code)) => Outcome { code, stdout: format!("{v}\n"), stderr: String::new() },
        Ok(Report::Dot(s)) => Outcome { code: 0, stdout: s, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(ctx: &Ctx, cmd: Cmd) -> Result<Report> {
    let lattice_cmd = matches!(
        cmd,
        Cmd::Facial(FacialCmd::List(_) | FacialCmd::Special(_))
            | Cmd::Subcone(SubconeCmd::Build(_) | SubconeCmd::CrossSection(_))
    );
    if ctx.dot && !lattice_cmd {
        return Err(Error::Precondition(
            "--dot applies to facial list, facial special, subcone build and subcone cross-section".into(),
        ));
    }
    match cmd {
        Cmd::Classify(sys) => classify(&sys),
        Cmd::Facial(c) => facial(ctx, c),
        Cmd::Tits(c) => tits(ctx, c),
        Cmd::Imaginary(c) => imaginary(ctx, c),
        Cmd::Subcone(c) => subcone(ctx, c),
        Cmd::Selftest => Ok(selftest()),
    }
}

// ---------------------------------------------------------------------------
// Input

fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Ok(s)
}

fn load_spec(sys: &SystemArg) -> Result<SystemSpec> {
    SystemSpec::from_json(&read_input(&sys.file)?)
}

fn load(path: &str) -> Result<RootBase> {
    SystemSpec::from_json(&read_input(path)?)?.root_base()
}

fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

fn parse_point(s: &str, dim: usize) -> Result<RatVec> {
    let v: RatVec = tokens(s).map(parse_rat).collect::<Result<_>>()?;
    if v.len() != dim {
        return Err(Error::DimensionMismatch(format!("point '{s}' has {} coordinates, expected {dim}", v.len())));
    }
    Ok(v)
}

fn parse_word(tits: &TitsCone, s: &str) -> Result<CoxElem> {
    let n = tits.rb.n();
    let letters: Vec<usize> = tokens(s)
        .map(|t| match t.parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad letter '{t}' in word '{s}', expected 1..={n}"))),
        })
        .collect::<Result<_>>()?;
    tits.group.from_word(&letters)
}

/// `THETA@WORD`, or just `THETA` for `σ = 1`.
fn parse_handle(tits: &TitsCone, s: &str) -> Result<FaceHandle> {
    let (theta, word) = s.split_once('@').unwrap_or((s, ""));
    let theta = Subset::parse_one_based(theta, tits.rb.n())?;
    tits.handle(theta, &parse_word(tits, word)?)
}

fn parse_face_index(y: &PolySubcone, s: &str) -> Result<usize> {
    match s.trim().trim_start_matches('F').parse::<usize>() {
        Ok(k) if (1..=y.num_faces()).contains(&k) => Ok(k - 1),
        _ => Err(Error::Parse(format!("bad face '{s}', expected an index in 1..={}", y.num_faces()))),
    }
}

// ---------------------------------------------------------------------------
// Output

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_rat(x))).collect())
}

fn vecs(vs: &[RatVec]) -> Value {
    Value::Array(vs.iter().map(|v| rats(v)).collect())
}

fn set(s: Subset) -> Value {
    json!(s.one_based())
}

fn sets(v: &[Subset]) -> Value {
    Value::Array(v.iter().map(|s| set(*s)).collect())
}

fn word(e: &CoxElem) -> Value {
    json!(e.word_one_based())
}

fn handle(h: &FaceHandle) -> Value {
    json!({"theta": set(h.theta), "sigma": word(&h.sigma)})
}

fn cone(c: &PolyCone) -> Value {
    json!({"dim": c.dimension(), "generators": vecs(c.generators()), "lineality": vecs(c.lineality())})
}

fn types(t: &TypeData) -> Value {
    json!({"lower": set(t.lower), "upper": set(t.upper), "type": set(t.full())})
}

fn signs(v: &[SignVector]) -> Value {
    json!({"count": v.len(), "sign_vectors": v.iter().map(|s| s.to_string()).collect::<Vec<_>>()})
}

/// Hasse diagram with edges pointing up.
fn hasse_dot(labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
    for (i, l) in labels.iter().enumerate() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "\\\"")));
    }
    for (a, b) in covers {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
}

fn subset_covers(family: &[Subset]) -> Vec<(usize, usize)> {
    let lt = |a: Subset, b: Subset| a != b && a.is_subset(b);
    let mut out = Vec::new();
    for (i, &a) in family.iter().enumerate() {
        for (j, &b) in family.iter().enumerate() {
            if lt(a, b) && !family.iter().any(|&c| lt(a, c) && lt(c, b)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn cross_section_json(cs: &CrossSection) -> Value {
    let entries: Vec<Value> = cs
        .entries
        .iter()
        .map(|e| {
            let mut v = types(&e.types);
            v["label"] = json!(e.label);
            v["dim"] = json!(e.dim);
            v
        })
        .collect();
    let covers: Vec<[usize; 2]> = cs.covers().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
    json!({"entries": entries, "covers": covers})
}

// ---------------------------------------------------------------------------
// Commands

fn classify(sys: &SystemArg) -> Result<Report> {
    let g = load_spec(sys)?.gcm()?;
    let comps: Vec<Value> = g
        .classify(g.full())
        .components
        .iter()
        .map(|(c, t)| json!({"indices": c.one_based(), "type": t}))
        .collect();
    Ok(Report::Json(json!({ "components": comps })))
}

fn facial(ctx: &Ctx, cmd: FacialCmd) -> Result<Report> {
    match cmd {
        FacialCmd::List(sys) => facial_family(ctx, &sys, false),
        FacialCmd::Special(sys) => facial_family(ctx, &sys, true),
        FacialCmd::Test { sys, j } => {
            let rb = load(&sys.file)?;
            let j = Subset::parse_one_based(&j, rb.n())?;
            let lp = is_facial(&rb, j);
            let by_signs = match sign_vectors(&rb) {
                Ok(s) => Value::Bool(is_facial_by_signs(&s, j)),
                Err(Error::DimensionBound(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            Ok(Report::Json(json!({
                "set": set(j),
                "facial": lp,
                "lp": lp,
                "sign_vectors": by_signs,
                "special": rb.gcm.is_special(j),
            })))
        }
        FacialCmd::Closure { sys, l } => {
            let rb = load(&sys.file)?;
            let l = Subset::parse_one_based(&l, rb.n())?;
            Ok(Report::Json(json!({"set": set(l), "closure": set(facial_closure(&rb, l))})))
        }
        FacialCmd::Arrangement(sys) => {
            let rb = load(&sys.file)?;
            let ker = rb.gcm.matrix().transpose().kernel_basis();
            Ok(Report::Json(json!({
                "kernel": signs(&subspace_sign_vectors(&ker, rb.n())?),
                "relations": signs(&sign_vectors(&rb)?),
            })))
        }
    }
}

fn facial_family(ctx: &Ctx, sys: &SystemArg, special: bool) -> Result<Report> {
    let rb = load(&sys.file)?;
    let fam = enumerate_facial(&rb)?;
    let list = if special { &fam.special } else { &fam.all };
    if ctx.dot {
        let labels: Vec<String> = list.iter().map(|s| s.to_string()).collect();
        return Ok(Report::Dot(hasse_dot(&labels, &subset_covers(list))));
    }
    Ok(Report::Json(json!({"count": list.len(), "sets": sets(list)})))
}

fn tits(ctx: &Ctx, cmd: TitsCmd) -> Result<Report> {
    match cmd {
        TitsCmd::Face { sys, face } => {
            let t = TitsCone::new(&load(&sys.file)?)?;
            let f = parse_handle(&t, &face)?;
            let ri = t.group.act_hstar(&t.rb, &f.sigma, &t.facet_point(f.theta)?);
            Ok(Report::Json(json!({
                "face": handle(&f),
                "dim": t.dim(&f),
                "hull": vecs(&t.hull(&f)),
                "centralizer": set(t.centralizer(&f)),
                "normalizer": set(t.normalizer(&f)),
                "ri_point": rats(&ri),
            })))
        }
        TitsCmd::Meet { sys, a, b } => {
            let t = TitsCone::new(&load(&sys.file)?)?;
            let (a, b) = (parse_handle(&t, &a)?, parse_handle(&t, &b)?);
            Ok(Report::Json(json!({"meet": handle(&t.meet(&a, &b))})))
        }
        TitsCmd::Join { sys, a, b } => {
            let t = TitsCone::new(&load(&sys.file)?)?;
            let (a, b) = (parse_handle(&t, &a)?, parse_handle(&t, &b)?);
            Ok(Report::Json(json!({"join": handle(&t.join(&a, &b)?)})))
        }
        TitsCmd::Normalize { sys, point } => {
            let t = TitsCone::new(&load(&sys.file)?)?;
            let lambda = parse_point(&point, t.rb.dim)?;
            let (sigma, mu) = t.normalize(&lambda, ctx.cap)?;
            let face = t.face_of_point(&lambda, ctx.cap)?;
            Ok(Report::Json(json!({
                "sigma": word(&sigma),
                "chamber_point": rats(&mu),
                "facet": set(t.facet_of(&mu)?),
                "face": handle(&face),
            })))
        }
        TitsCmd::Interior { sys, point } => {
            let t = TitsCone::new(&load(&sys.file)?)?;
            let lambda = parse_point(&point, t.rb.dim)?;
            let (_, mu) = t.normalize(&lambda, ctx.cap)?;
            Ok(Report::Json(json!({"interior": t.interior_test(&mu)?, "facet": set(t.facet_of(&mu)?)})))
        }
    }
}

fn imaginary(ctx: &Ctx, cmd: ImagCmd) -> Result<Report> {
    match cmd {
        ImagCmd::K(sys) => {
            let z = ImagCone::new(&load(&sys.file)?)?;
            Ok(Report::Json(json!({"k": cone(&z.k_cone()?)})))
        }
        ImagCmd::KTheta { sys, theta } => {
            let z = ImagCone::new(&load(&sys.file)?)?;
            let k = z.k_theta(Subset::parse_one_based(&theta, z.tits.rb.n())?)?;
            Ok(Report::Json(json!({"theta": set(k.theta), "nonempty": k.nonempty, "closure": cone(&k.cone)})))
        }
        ImagCmd::Face { sys, face } => {
            let z = ImagCone::new(&load(&sys.file)?)?;
            let f = parse_handle(&z.tits, &face)?;
            let ri = z.tits.group.act_h(&z.tits.rb, &f.sigma, &z.ri_point(f.theta)?);
            Ok(Report::Json(json!({
                "face": handle(&f),
                "hull": vecs(&z.hull(&f)?),
                "centralizer": set(z.centralizer(&f)),
                "ri_point": rats(&ri),
            })))
        }
        ImagCmd::Meet { sys, a, b } => {
            let z = ImagCone::new(&load(&sys.file)?)?;
            let (a, b) = (parse_handle(&z.tits, &a)?, parse_handle(&z.tits, &b)?);
            Ok(Report::Json(json!({"meet": handle(&z.meet(&a, &b)?)})))
        }
        ImagCmd::Join { sys, a, b } => {
            let z = ImagCone::new(&load(&sys.file)?)?;
            let (a, b) = (parse_handle(&z.tits, &a)?, parse_handle(&z.tits, &b)?);
            Ok(Report::Json(json!({"join": handle(&z.join(&a, &b))})))
        }
        ImagCmd::Dual(sys) => {
            let z = ImagCone::new(&load(&sys.file)?)?;
            let bad = z.semiduality_check(ctx.depth)?;
            Ok(Report::Json(json!({
                "dual_k": cone(&z.dual_k()?),
                "semiduality": {"depth": ctx.depth, "violations": bad},
            })))
        }
    }
}

enum Sub {
    Tits(Box<TitsCone>),
    Poly(Box<PolySubcone>),
}

fn load_subcone(arg: &SubconeArg) -> Result<Sub> {
    let rb = load(&arg.file)?;
    if arg.tits {
        return Ok(Sub::Tits(Box::new(TitsCone::new(&rb)?)));
    }
    if arg.seeds.is_empty() {
        return Err(Error::Parse("give --tits or at least one --seed".into()));
    }
    let seeds: Vec<RatVec> = arg.seeds.iter().map(|s| parse_point(s, rb.dim)).collect::<Result<_>>()?;
    Ok(Sub::Poly(Box::new(PolySubcone::new(&rb, &seeds)?)))
}

fn subcone(ctx: &Ctx, cmd: SubconeCmd) -> Result<Report> {
    match cmd {
        SubconeCmd::Build(arg) => match load_subcone(&arg)? {
            Sub::Tits(t) => {
                if ctx.dot {
                    return cross_section_dot(&tits_cross_section(&t));
                }
                Ok(Report::Json(json!({
                    "kind": "tits",
                    "ambient_dim": t.rb.dim,
                    "special_facial": sets(&t.family.special),
                })))
            }
            Sub::Poly(y) => {
                let nf = y.num_faces();
                if ctx.dot {
                    let labels: Vec<String> = (0..nf).map(|f| format!("F{}", f + 1)).collect();
                    let covers: Vec<(usize, usize)> = (0..nf)
                        .flat_map(|a| (0..nf).map(move |b| (a, b)))
                        .filter(|&(a, b)| y.lattice.leq(a, b) && y.face_dim(b) == y.face_dim(a) + 1)
                        .collect();
                    return Ok(Report::Dot(hasse_dot(&labels, &covers)));
                }
                let faces: Vec<Value> = (0..nf)
                    .map(|f| {
                        let mut v = cone(y.face_cone(f));
                        v["index"] = json!(f + 1);
                        v["in_cross_section"] = json!(y.in_upsilon(f));
                        v
                    })
                    .collect();
                Ok(Report::Json(json!({
                    "kind": "polyhedral",
                    "ambient_dim": y.tits.rb.dim,
                    "group_order": y.order(),
                    "coroots": vecs(&y.tits.rb.hvecs()),
                    "faces": faces,
                    "cross_section": y.upsilon.iter().map(|f| f + 1).collect::<Vec<_>>(),
                })))
            }
        },
        SubconeCmd::CrossSection(arg) => {
            let cs = match load_subcone(&arg)? {
                Sub::Tits(t) => tits_cross_section(&t),
                Sub::Poly(y) => y.cross_section(),
            };
            if ctx.dot {
                return cross_section_dot(&cs);
            }
            Ok(Report::Json(cross_section_json(&cs)))
        }
        SubconeCmd::Typemap { sub, face } => match load_subcone(&sub)? {
            Sub::Tits(t) => {
                let f = parse_handle(&t, &face)?;
                let mut v = types(&tits_type_maps(&t, f.theta)?);
                v["face"] = handle(&f);
                Ok(Report::Json(v))
            }
            Sub::Poly(y) => {
                let f = parse_face_index(&y, &face)?;
                let h = y.face_normalize(f);
                let mut v = types(&y.type_maps(h.rep)?);
                v["face"] = json!(f + 1);
                v["representative"] = json!(h.rep + 1);
                v["sigma"] = word(&h.sigma);
                Ok(Report::Json(v))
            }
        },
        SubconeCmd::RennerMul { sub, a, b } => match load_subcone(&sub)? {
            Sub::Tits(t) => {
                let parse = |s: &str| -> Result<_> {
                    let (w, f) = split_renner(s)?;
                    Ok(tits_renner_make(&t, &parse_word(&t, w)?, &parse_handle(&t, f)?))
                };
                let p = tits_renner_mul(&t, &parse(&a)?, &parse(&b)?)?;
                Ok(Report::Json(json!({"product": {"sigma": word(&p.sigma), "face": handle(&p.face)}})))
            }
            Sub::Poly(y) => {
                let r = y.renner();
                let parse = |s: &str| -> Result<_> {
                    let (w, f) = split_renner(s)?;
                    Ok(r.make(&parse_word(&y.tits, w)?, parse_face_index(&y, f)?))
                };
                let p = r.mul(parse(&a)?, parse(&b)?);
                Ok(Report::Json(json!({
                    "product": {"sigma": word(r.sigma(p)), "face": p.face + 1},
                    "idempotent": r.is_idempotent(p),
                    "unit": r.is_unit(p),
                })))
            }
        },
        SubconeCmd::Interval { sub, lower, upper } => match load_subcone(&sub)? {
            Sub::Tits(t) => {
                let n = t.rb.n();
                let (l, u) = (Subset::parse_one_based(&lower, n)?, Subset::parse_one_based(&upper, n)?);
                Ok(Report::Json(json!({"lower": set(l), "upper": set(u), "j": set(tits_interval_j(&t, l, u)?)})))
            }
            Sub::Poly(y) => {
                let (l, u) = (parse_face_index(&y, &lower)?, parse_face_index(&y, &upper)?);
                let d = y.interval(l, u)?;
                let chains: Vec<Vec<usize>> =
                    y.maximal_chains(l, u).iter().map(|c| c.iter().map(|f| f + 1).collect()).collect();
                Ok(Report::Json(json!({
                    "lower": d.lower + 1,
                    "upper": d.upper + 1,
                    "j": set(d.j),
                    "cone": cone(&d.cone),
                    "faces": d.faces.iter().map(|f| f + 1).collect::<Vec<_>>(),
                    "order_isomorphism": d.order_isomorphism,
                    "invariant": d.invariant,
                    "chamber_part": d.chamber_part,
                    "normalizer": set(d.normalizer),
                    "normalizer_ok": d.normalizer_ok,
                    "centralizer": set(d.centralizer),
                    "centralizer_ok": d.centralizer_ok,
                    "centralizer_bound": set(d.centralizer_bound),
                    "maximal_chains": chains,
                })))
            }
        },
        SubconeCmd::Chains { sub, faces } => match load_subcone(&sub)? {
            Sub::Tits(t) if faces.is_empty() => Ok(tits_chain_sweep(&t, ctx.depth)),
            Sub::Tits(t) => {
                let chain: Vec<FaceHandle> = faces.iter().map(|f| parse_handle(&t, f)).collect::<Result<_>>()?;
                let (sigma, thetas) = tits_chain_normalize(&t, &chain)?;
                Ok(Report::Json(json!({"sigma": word(&sigma), "chain": sets(&thetas)})))
            }
            Sub::Poly(y) if faces.is_empty() => {
                let r = y.chain_length_check();
                let blocks: Vec<Value> = r
                    .blocks
                    .iter()
                    .map(|(j, fs)| json!({"j": set(*j), "faces": fs.iter().map(|f| f + 1).collect::<Vec<_>>()}))
                    .collect();
                let mut violations = y.check_chains()?;
                violations.extend(r.violations);
                let code = if violations.is_empty() { 0 } else { 1 };
                let v = json!({"blocks": blocks, "pairs": r.pairs, "chains": r.chains, "violations": violations});
                Ok(if code == 0 { Report::Json(v) } else { Report::Failing(v, code) })
            }
            Sub::Poly(y) => {
                let chain: Vec<usize> = faces.iter().map(|f| parse_face_index(&y, f)).collect::<Result<_>>()?;
                let (sigma, reps) = y.chain_normalize(&chain)?;
                Ok(Report::Json(json!({
                    "sigma": word(&sigma),
                    "chain": reps.iter().map(|f| f + 1).collect::<Vec<_>>(),
                })))
            }
        },
        SubconeCmd::CheckDimc(arg) => match load_subcone(&arg)? {
            Sub::Tits(t) => {
                let z = ImagCone::from_tits(*t);
                let gens: Vec<RatVec> = z.dual_k()?.all_generators().iter().map(|g| neg(g)).collect();
                let inside = gens.iter().all(|g| z.tits.in_chamber(g));
                Ok(Report::Json(json!({"generators": vecs(&gens), "contained": if inside { "in" } else { "out" }})))
            }
            Sub::Poly(y) => {
                let r = y.contains_dual_imaginary()?;
                Ok(Report::Json(json!({
                    "faithful": r.faithful,
                    "generators": vecs(&r.generators),
                    "contained": r.contained,
                })))
            }
        },
    }
}

fn cross_section_dot(cs: &CrossSection) -> Result<Report> {
    let labels: Vec<String> = cs.entries.iter().map(|e| e.label.clone()).collect();
    Ok(Report::Dot(hasse_dot(&labels, &cs.covers())))
}

fn split_renner(s: &str) -> Result<(&str, &str)> {
    s.split_once('/').ok_or_else(|| Error::Parse(format!("Renner element '{s}' must be written WORD/FACE")))
}

/// Normalizes every two-step chain of handles with `ℓ(σ) ≤ depth` and checks
/// that the result describes the same faces.
fn tits_chain_sweep(t: &TitsCone, depth: usize) -> Report {
    let hs = t.handles_up_to(depth);
    let mut pairs = 0;
    let mut violations = Vec::new();
    for a in &hs {
        for b in &hs {
            if a == b || !t.leq(a, b) {
                continue;
            }
            pairs += 1;
            let ok = tits_chain_normalize(t, &[a.clone(), b.clone()]).and_then(|(sigma, thetas)| {
                Ok(t.handle(thetas[0], &sigma)? == *a && t.handle(thetas[1], &sigma)? == *b)
            });
            match ok {
                Ok(true) => {}
                Ok(false) => violations.push(format!("{a} ⊆ {b}")),
                Err(e) => violations.push(format!("{a} ⊆ {b}: {e}")),
            }
        }
    }
    let v = json!({"depth": depth, "pairs": pairs, "violations": violations});
    if violations_empty(&v) {
        Report::Json(v)
    } else {
        Report::Failing(v, 1)
    }
}

fn violations_empty(v: &Value) -> bool {
    v["violations"].as_array().is_some_and(|a| a.is_empty())
}

fn selftest() -> Report {
    let checks = golden::run_all();
    let failed = checks.iter().filter(|c| !c.pass).count();
    let v = json!({"checks": checks, "failed": failed});
    if failed == 0 {
        Report::Json(v)
    } else {
        Report::Failing(v, 1)
    }
}
