//! Command-line front end. `run` is the whole program; `main` only wires it
//! to the process.

use std::fmt::Display;
use std::str::FromStr;

use bsrig_core::bass_serre::{classify, common_fixed_vertex, export_ball, vertex_of, Classification};
use bsrig_core::fusion::{decompose_self_inverse, exchange_partners, RootOfUnity};
use bsrig_core::group::{abelianization_image, normalize, BsPresentation, GroupWord, NormalForm};
use bsrig_core::hecke::{
    coset_profile, double_coset, f_set, hecke_convolve, qc_member, same_double_coset, HeckeElement,
};
use bsrig_core::rigidity::{canonicalize, is_amenable, is_isomorphic, obstruction_any, sign_witness};
use bsrig_core::selftest::{run_all, run_criterion, SelftestConfig};
use bsrig_core::Error;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde_json::{json, Number, Value};

pub const GRAMMAR: &str = "\
word grammar:
  word   := term*
  term   := letter power?
  letter := 'a' | 'b' | 'A' | 'B'      (A = a^-1, B = b^-1, e = identity)
  power  := '^' '-'? digits
  terms may be separated by whitespace, e.g. \"b a^2 B\"
group: --group n,m with n, m nonzero integers, e.g. --group 2,-3
";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "bsrig", version, about = "Exact computations in Baumslag-Solitar groups BS(n,m)")]
struct Cli {
    /// Group parameters as n,m.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_pair)]
    group: Option<(i64, i64)>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Seed for the randomized self-test.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of a word.
    Reduce { word: String },
    /// Whether two words are equal in the group.
    Eq { left: String, right: String },
    /// Number of b-letters in the normal form.
    Blength { word: String },
    /// Coset profile (l, r, L) of an element.
    Profile { word: String },
    /// Membership in the quasi-centralizer of <a>.
    Qc { word: String },
    /// Elliptic or hyperbolic action on the Bass-Serre tree.
    Classify { word: String },
    /// A vertex fixed by all of the given elliptic elements.
    Fixed {
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
    /// Ball in the Bass-Serre tree, as DOT in text mode.
    TreeBall {
        #[arg(long, default_value = "e")]
        center: String,
        #[arg(long, default_value_t = 1)]
        radius: usize,
    },
    /// Canonical double coset <a> g <a>, optionally compared with a second element.
    Coset {
        word: String,
        #[arg(long)]
        same: Option<String>,
    },
    /// Convolution T_D * T_E of two double cosets.
    Convolve { left: String, right: String },
    /// Irreducible decomposition of the self-inverse bimodule of g.
    FuseSelfinv { word: String },
    /// Roots mu with omega^r(g) = mu^L(g), for omega given as p/q.
    Exchange {
        #[arg(allow_hyphen_values = true)]
        omega: String,
        word: String,
    },
    /// Structural invariants of the group.
    Invariants {
        /// Depth of the index-set enumeration.
        #[arg(long, default_value_t = 3)]
        depth: u32,
    },
    /// Isomorphism of two Baumslag-Solitar groups.
    Iso {
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        first: (i64, i64),
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        second: (i64, i64),
    },
    /// Obstruction verdict for the crossed products of two groups.
    Obstruction {
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        first: (i64, i64),
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        second: (i64, i64),
    },
    /// Sign-separating pair of roots of unity for the group.
    Witness,
    /// Run the acceptance suite.
    Selftest {
        /// Fraction of the full sample sizes to run.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Run only the criterion with this number.
        #[arg(long)]
        only: Option<u8>,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (n, m) = s
        .split_once(',')
        .ok_or_else(|| format!("expected n,m but got {s:?}"))?;
    let n: i64 = n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?;
    let m: i64 = m.trim().parse().map_err(|e| format!("{m:?}: {e}"))?;
    if n == 0 || m == 0 {
        return Err(format!("parameters must be nonzero, got {n},{m}"));
    }
    Ok((n, m))
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// What a command prints: a text rendering and a JSON document.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }
}

fn int(x: &impl Display) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

struct Ctx {
    group: Option<BsPresentation>,
    seed: Option<u64>,
}

impl Ctx {
    fn group(&self) -> Result<&BsPresentation, Failure> {
        self.group
            .as_ref()
            .ok_or_else(|| Failure::Usage("this command needs --group n,m".into()))
    }

    fn element(&self, text: &str) -> Result<NormalForm, Failure> {
        let w: GroupWord = text.parse()?;
        Ok(normalize(&w, self.group()?))
    }
}

/// Runs the program on `argv` (including the program name) and returns the
/// exit code with the bytes destined for stdout and stderr.
pub fn run<I, T>(argv: I) -> (i32, Vec<u8>, Vec<u8>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string().into_bytes(), Vec::new()),
                _ => (2, Vec::new(), format!("{e}\n{GRAMMAR}").into_bytes()),
            }
        }
    };
    let group = match cli.group {
        Some((n, m)) => match BsPresentation::new(n, m) {
            Ok(g) => Some(g),
            Err(e) => return (2, Vec::new(), format!("error: {e}\n{GRAMMAR}").into_bytes()),
        },
        None => None,
    };
    let ctx = Ctx { group, seed: cli.seed };
    match dispatch(&cli.command, &ctx) {
        Ok((code, out)) => {
            let mut stdout = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string(&out.json).expect("serializable"),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            (code, stdout.into_bytes(), Vec::new())
        }
        Err(Failure::Usage(msg)) => (2, Vec::new(), format!("error: {msg}\n{GRAMMAR}").into_bytes()),
        Err(Failure::Domain(msg)) => (1, Vec::new(), format!("error: {msg}\n").into_bytes()),
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<(i32, Output), Failure> {
    let out = match cmd {
        Command::Reduce { word } => {
            let x = ctx.element(word)?;
            Output::new(x.to_string(), json!({"normal_form": x.to_string()}))
        }
        Command::Eq { left, right } => {
            let same = ctx.element(left)? == ctx.element(right)?;
            Output::new(same.to_string(), json!({"equal": same}))
        }
        Command::Blength { word } => {
            let x = ctx.element(word)?;
            Output::new(x.b_length().to_string(), json!({"b_length": x.b_length()}))
        }
        Command::Profile { word } => {
            let p = coset_profile(&ctx.element(word)?, ctx.group()?);
            let doc = p.to_json();
            Output::new(doc.to_string(), doc)
        }
        Command::Qc { word } => {
            let q = qc_member(&ctx.element(word)?, ctx.group()?);
            Output::new(q.to_string(), json!({"qc_member": q}))
        }
        Command::Classify { word } => {
            let c = classify(&ctx.element(word)?, ctx.group()?);
            let doc = match &c {
                Classification::Elliptic { witness } => {
                    json!({"kind": "elliptic", "witness": witness.to_string()})
                }
                Classification::Hyperbolic { translation_length } => {
                    json!({"kind": "hyperbolic", "translation_length": translation_length})
                }
            };
            Output::new(c.to_string(), doc)
        }
        Command::Fixed { words, radius } => {
            let xs = words
                .iter()
                .map(|w| ctx.element(w))
                .collect::<Result<Vec<_>, _>>()?;
            match common_fixed_vertex(&xs, ctx.group()?, *radius)? {
                Some((v, g0)) => Output::new(
                    format!("vertex {v} (conjugator {g0})"),
                    json!({"vertex": v.to_string(), "conjugator": g0.to_string()}),
                ),
                None => Output::new("none", json!({"vertex": null})),
            }
        }
        Command::TreeBall { center, radius } => {
            let g = ctx.group()?;
            let v = vertex_of(&ctx.element(center)?, g);
            let ball = export_ball(&v, *radius, g);
            let mut vertices: Vec<String> = ball.vertices.iter().map(|v| v.to_string()).collect();
            vertices.sort();
            let mut edges: Vec<(String, String, String)> = ball
                .edges
                .iter()
                .map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string()))
                .collect();
            edges.sort();
            let edges: Vec<Value> = edges
                .into_iter()
                .map(|(e, s, r)| json!({"edge": e, "source": s, "range": r}))
                .collect();
            Output::new(
                ball.to_dot(),
                json!({"center": v.to_string(), "radius": radius, "vertices": vertices, "edges": edges}),
            )
        }
        Command::Coset { word, same } => {
            let g = ctx.group()?;
            let x = ctx.element(word)?;
            let d = double_coset(&x, g);
            let mut doc = json!({"representative": d.to_string(), "profile": d.profile().to_json()});
            let mut text = format!("{d} ({})", d.profile());
            if let Some(other) = same {
                let s = same_double_coset(&x, &ctx.element(other)?, g);
                doc["same"] = json!(s);
                text.push_str(&format!("\nsame: {s}"));
            }
            Output::new(text, doc)
        }
        Command::Convolve { left, right } => {
            let g = ctx.group()?;
            let x = HeckeElement::basis(double_coset(&ctx.element(left)?, g));
            let y = HeckeElement::basis(double_coset(&ctx.element(right)?, g));
            let z = hecke_convolve(&x, &y, g);
            Output::new(z.to_string(), z.to_json())
        }
        Command::FuseSelfinv { word } => {
            let s = decompose_self_inverse(&ctx.element(word)?, ctx.group()?)?;
            Output::new(
                format!("{s}\ndims: {} x {}", s.left_dim(), s.right_dim()),
                json!({"terms": s.to_json(), "left_dim": int(&s.left_dim()), "right_dim": int(&s.right_dim())}),
            )
        }
        Command::Exchange { omega, word } => {
            let w = RootOfUnity::from_str(omega)?;
            let mus = exchange_partners(&w, &ctx.element(word)?, ctx.group()?)?;
            let list: Vec<String> = mus.iter().map(|m| m.to_string()).collect();
            Output::new(list.join("\n"), json!({"omega": w.to_string(), "partners": list}))
        }
        Command::Invariants { depth } => invariants(ctx.group()?, *depth)?,
        Command::Iso { first, second } => {
            let iso = is_isomorphic(first.0, first.1, second.0, second.1)?;
            let (c1, c2) = (canonicalize(first.0, first.1)?, canonicalize(second.0, second.1)?);
            Output::new(
                iso.to_string(),
                json!({"isomorphic": iso, "canonical": [[c1.0, c1.1], [c2.0, c2.1]]}),
            )
        }
        Command::Obstruction { first, second } => {
            let v = obstruction_any(first.0, first.1, second.0, second.1)?;
            Output::new(v.to_string(), v.to_json())
        }
        Command::Witness => {
            let g = ctx.group()?;
            let w = sign_witness(g.n(), g.m())?;
            Output::new(w.to_string(), w.to_json())
        }
        Command::Selftest { scale, only } => return selftest(ctx, *scale, *only),
    };
    Ok((0, out))
}

fn invariants(g: &BsPresentation, depth: u32) -> Result<Output, Failure> {
    let (cn, cm) = canonicalize(g.n(), g.m())?;
    let amenable = is_amenable(g.n(), g.m())?;
    let ab = abelianization_image(&GroupWord::identity(), g);
    let mut doc = json!({
        "n": g.n(),
        "m": g.m(),
        "k": g.k(),
        "n0": g.n0(),
        "m0": g.m0(),
        "canonical": [cn, cm],
        "amenable": amenable,
        "abelianization_torsion": int(&ab.modulus),
        "standing_hypothesis": g.standing_hypothesis(),
    });
    let abelian = if ab.modulus.is_zero() {
        "Z x Z".to_string()
    } else if ab.modulus.is_one() {
        "Z".to_string()
    } else {
        format!("Z x Z/{}", ab.modulus)
    };
    let mut text = format!(
        "{g}\nk={} n0={} m0={}\ncanonical: BS({cn},{cm})\namenable: {amenable}\nabelianization: {abelian}",
        g.k(),
        g.n0(),
        g.m0(),
    );
    if g.standing_hypothesis() {
        let fs: Vec<_> = f_set(depth, g)?.into_iter().collect();
        text.push_str(&format!(
            "\nindex set (depth {depth}): {}",
            fs.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(" ")
        ));
        doc["index_set"] = Value::Array(fs.iter().map(int).collect());
        doc["index_set_depth"] = json!(depth);
    }
    Ok(Output::new(text, doc))
}

fn selftest(ctx: &Ctx, scale: f64, only: Option<u8>) -> Result<(i32, Output), Failure> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Failure::Usage(format!("--scale must be positive, got {scale}")));
    }
    let mut cfg = SelftestConfig { scale, ..SelftestConfig::default() };
    if let Some(seed) = ctx.seed {
        cfg.seed = seed;
    }
    let reports = match only {
        Some(id) => vec![run_criterion(id, &cfg)
            .ok_or_else(|| Failure::Usage(format!("no criterion numbered {id}")))?],
        None => run_all(&cfg),
    };
    let passed = reports.iter().filter(|r| r.passed).count();
    let mut text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    text.push(format!("{passed} of {} criteria passed", reports.len()));
    let doc = json!({
        "passed": passed,
        "total": reports.len(),
        "criteria": reports.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "elapsed_ms": r.elapsed.as_millis() as u64,
            "budget_ms": r.budget.as_millis() as u64,
        })).collect::<Vec<_>>(),
    });
    let code = if passed == reports.len() { 0 } else { 1 };
    Ok((code, Output::new(text.join("\n"), doc)))
}
