use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use gentle_core::braid::{
    apply_word, is_presilting, left_dual, orbit_explore, presilting_shift, right_dual, seed_sequence,
    sequence_from_json, sequence_to_json, serre_check, verify_braid, BraidWord, ExceptionalSequence,
    IsoOptions,
};
use gentle_core::exceptional::{
    can_complete, component_reports, cut_collection, exists_full_exceptional, gen_surface_quiver,
    koszul_dual_quiver, linear_extensions, SurfaceKind,
};
use gentle_core::ribbon::{classify_special, surface_invariants};
use gentle_core::{Field, GentleQuiver, PathAlgebra};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "gentle",
    version,
    about = "Gentle algebras, dissected surfaces and exceptional sequences"
)]
struct Cli {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = gentle_core::DEFAULT_PRIME)]
    field_prime: u64,
    /// Seed for randomized isomorphism tests and random words.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random attempts per isomorphism test.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// One boundary component with two marked points.
    T12,
    /// Two boundary components with one marked point each.
    T22,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Check the gentle axioms and global dimension.
    Validate { quiver: PathBuf },
    /// Genus, boundary components, marked points and punctures of the surface.
    Surface { quiver: PathBuf },
    /// Whether a full exceptional sequence exists.
    Exists { quiver: PathBuf },
    /// Cut the surface along a collection of arcs.
    Cut {
        quiver: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
        /// Also write the cut quiver to this file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Whether a collection of arcs extends to a full exceptional collection.
    Complete {
        quiver: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Koszul-dual quiver.
    Koszul {
        quiver: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Quiver of a dissection of a genus-g surface of a special type.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        genus: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Projective stalks in a linear-extension order.
    Seed {
        quiver: PathBuf,
        /// Vertex order; defaults to the first linear extension.
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<String>>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Apply a braid word such as "1 2 -1".
    Mutate {
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Sequence JSON; defaults to the seed.
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the braid relations and random words against their inverses.
    VerifyBraid {
        quiver: PathBuf,
        #[arg(long)]
        sequence: Option<PathBuf>,
        /// Number of random words.
        #[arg(long, default_value_t = 20)]
        words: usize,
    },
    /// Left or right dual of a full sequence.
    Dual {
        quiver: PathBuf,
        #[arg(long, value_enum, default_value = "right")]
        side: Side,
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compare the Serre functor with the square of the left dual.
    SerreCheck {
        quiver: PathBuf,
        #[arg(long)]
        sequence: Option<PathBuf>,
    },
    /// Explore the orbit under the braid group and shifts.
    Orbit {
        quiver: PathBuf,
        #[arg(long, default_value_t = 1000)]
        max: usize,
        #[arg(long)]
        sequence: Option<PathBuf>,
        /// Include every sequence of the orbit in the report.
        #[arg(long)]
        elements: bool,
    },
    /// Shifts making the sequence pre-silting.
    PresiltingShift {
        quiver: PathBuf,
        #[arg(long)]
        sequence: Option<PathBuf>,
    },
}

enum Failure {
    Input(anyhow::Error),
    Violation(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<gentle_core::Error> for Failure {
    fn from(e: gentle_core::Error) -> Self {
        match e {
            gentle_core::Error::Internal(_) => Failure::Violation(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

struct Report {
    json: Value,
    plain: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, plain: impl Into<String>) -> Self {
        Report {
            json,
            plain: plain.into(),
            ok: true,
        }
    }

    fn verdict(json: Value, plain: impl Into<String>, ok: bool) -> Self {
        Report {
            json,
            plain: plain.into(),
            ok,
        }
    }
}

type Outcome = Result<Report, Failure>;

fn read_quiver(path: &Path) -> Result<GentleQuiver, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GentleQuiver::parse(&text)
        .map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

struct Ctx {
    field: Field,
    opts: IsoOptions,
}

impl Ctx {
    fn algebra(&self, q: GentleQuiver) -> Result<PathAlgebra, Failure> {
        Ok(PathAlgebra::new(q, self.field)?)
    }

    fn sequence(&self, alg: &PathAlgebra, path: &Option<PathBuf>) -> Result<ExceptionalSequence, Failure> {
        match path {
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                let v: Value = serde_json::from_str(&text)
                    .map_err(|e| Failure::Input(anyhow!("{}: {e}", p.display())))?;
                Ok(sequence_from_json(alg, &v)?)
            }
            None => {
                let order = linear_extensions(alg.quiver(), 1)
                    .map_err(|e| Failure::Input(anyhow!("{e}; pass --sequence")))?
                    .remove(0);
                Ok(seed_sequence(alg, &order)?)
            }
        }
    }
}

fn plain_sequence(alg: &PathAlgebra, seq: &ExceptionalSequence) -> String {
    seq.items()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let terms: Vec<String> = x
                .degrees()
                .map(|d| {
                    let ids: Vec<&str> = x.term(d).iter().map(|&v| alg.vertex_id(v)).collect();
                    format!("{d}:{}", ids.join("+"))
                })
                .collect();
            format!("X{} = [{}]", i + 1, terms.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Outcome {
    let field = Field::new(cli.field_prime)
        .ok_or_else(|| anyhow!("--field-prime {} is not a prime below 2^32", cli.field_prime))?;
    let ctx = Ctx {
        field,
        opts: IsoOptions {
            trials: cli.trials,
            seed: cli.seed,
        },
    };
    match cli.command {
        Command::Validate { quiver } => {
            let q = read_quiver(&quiver)?;
            let r = q.validate();
            let ok = r.is_gentle() && r.finite_global_dimension;
            let plain = if r.is_gentle() {
                format!(
                    "gentle, {} global dimension",
                    if r.finite_global_dimension { "finite" } else { "infinite" }
                )
            } else {
                format!("not gentle:\n{}", r.violations.join("\n"))
            };
            Ok(Report::verdict(
                json!({
                    "gentle": r.is_gentle(),
                    "finite_gldim": r.finite_global_dimension,
                    "finite_dimensional": r.finite_dimensional,
                    "violations": r.violations,
                }),
                plain,
                ok,
            ))
        }
        Command::Surface { quiver } => {
            let q = read_quiver(&quiver)?;
            let inv = surface_invariants(&q)?;
            let special = classify_special(&inv).ok().and_then(|s| s.label());
            let (g, b, circ, bullet, p) = inv.tuple();
            Ok(Report::ok(
                json!({
                    "genus": g,
                    "boundaries": b,
                    "circ": circ,
                    "bullet": bullet,
                    "punctures": p,
                    "chi": inv.chi,
                    "special": special,
                }),
                format!(
                    "g={g} b={b} |M°|={circ} |M●|={bullet} |P|={p}{}",
                    special.map(|s| format!(" {s}")).unwrap_or_default()
                ),
            ))
        }
        Command::Exists { quiver } => {
            let e = exists_full_exceptional(&read_quiver(&quiver)?)?;
            let plain = match &e.reason {
                None => "a full exceptional sequence exists".to_string(),
                Some(r) => format!("no full exceptional sequence ({r})"),
            };
            Ok(Report::ok(serde_json::to_value(&e).unwrap(), plain))
        }
        Command::Cut {
            quiver,
            vertices,
            output,
        } => {
            let q = read_quiver(&quiver)?;
            let ids: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let cut = cut_collection(&q, &ids)?;
            let text = cut.to_gq();
            write_out(&output, &text)?;
            let components = component_reports(&cut)?;
            Ok(Report::ok(json!({ "gq": text, "components": components }), text))
        }
        Command::Complete { quiver, vertices } => {
            let q = read_quiver(&quiver)?;
            let ids: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let c = can_complete(&q, &ids)?;
            let plain = if c.completable {
                "completable".to_string()
            } else {
                let bad: Vec<String> = c
                    .offending
                    .iter()
                    .map(|&i| c.components[i].special.clone().unwrap_or_default())
                    .collect();
                format!("not completable: {}", bad.join(", "))
            };
            Ok(Report::ok(serde_json::to_value(&c).unwrap(), plain))
        }
        Command::Koszul { quiver, output } => {
            let text = koszul_dual_quiver(&read_quiver(&quiver)?)?.to_gq();
            write_out(&output, &text)?;
            Ok(Report::ok(json!({ "gq": text }), text))
        }
        Command::Gen {
            kind,
            genus,
            output,
        } => {
            let kind = match kind {
                Kind::T12 => SurfaceKind::OneBoundaryTwoPoints,
                Kind::T22 => SurfaceKind::TwoBoundariesTwoPoints,
            };
            let q = gen_surface_quiver(kind, genus)?;
            let text = q.to_gq();
            write_out(&output, &text)?;
            Ok(Report::ok(
                json!({
                    "gq": text,
                    "vertices": q.num_vertices(),
                    "arrows": q.num_arrows(),
                    "special": kind.special(genus as i64).label(),
                }),
                text,
            ))
        }
        Command::Seed {
            quiver,
            vertices,
            output,
        } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let order = match vertices {
                Some(ids) => ids
                    .iter()
                    .map(|id| alg.quiver().require_vertex(id))
                    .collect::<Result<Vec<_>, _>>()?,
                None => linear_extensions(alg.quiver(), 1)?.remove(0),
            };
            let seq = seed_sequence(&alg, &order)?;
            let doc = json!({
                "order": order.iter().map(|&v| alg.vertex_id(v)).collect::<Vec<_>>(),
                "presilting": is_presilting(&alg, seq.items()),
                "sequence": sequence_to_json(&alg, &seq),
            });
            write_out(&output, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(Report::ok(doc, plain_sequence(&alg, &seq)))
        }
        Command::Mutate {
            quiver,
            word,
            sequence,
            output,
        } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let mut seq = ctx.sequence(&alg, &sequence)?;
            let word: BraidWord = word.parse()?;
            word.check_range(seq.len())?;
            let mut trace = Vec::new();
            for &g in &word.0 {
                seq = apply_word(&alg, &seq, &BraidWord(vec![g]))?;
                trace.push(json!({ "generator": g, "sequence": sequence_to_json(&alg, &seq) }));
            }
            let doc = json!({
                "word": word.to_string(),
                "trace": trace,
                "sequence": sequence_to_json(&alg, &seq),
            });
            write_out(&output, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(Report::ok(doc, plain_sequence(&alg, &seq)))
        }
        Command::VerifyBraid {
            quiver,
            sequence,
            words,
        } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let seq = ctx.sequence(&alg, &sequence)?;
            let rep = verify_braid(&alg, &seq, words, ctx.opts)?;
            let failing: Vec<String> = rep
                .checks
                .iter()
                .filter(|c| !c.holds())
                .map(|c| format!("[{}] vs [{}]: {:?}", c.lhs, c.rhs, c.verdicts))
                .collect();
            let plain = if failing.is_empty() {
                format!("{} relations hold", rep.checks.len())
            } else {
                format!("{} of {} relations fail\n{}", failing.len(), rep.checks.len(), failing.join("\n"))
            };
            Ok(Report::verdict(
                json!({
                    "passed": rep.passed(),
                    "undetermined": rep.undetermined(),
                    "seed": ctx.opts.seed,
                    "trials": ctx.opts.trials,
                    "checks": rep.checks,
                }),
                plain,
                rep.passed(),
            ))
        }
        Command::Dual {
            quiver,
            side,
            sequence,
            output,
        } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let seq = ctx.sequence(&alg, &sequence)?;
            let (name, out) = match side {
                Side::Left => ("left", left_dual(&alg, &seq, ctx.opts)?),
                Side::Right => ("right", right_dual(&alg, &seq, ctx.opts)?),
            };
            let doc = json!({ "side": name, "sequence": sequence_to_json(&alg, &out) });
            write_out(&output, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(Report::ok(doc, plain_sequence(&alg, &out)))
        }
        Command::SerreCheck { quiver, sequence } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let seq = ctx.sequence(&alg, &sequence)?;
            let rep = serre_check(&alg, &seq, ctx.opts)?;
            let plain = format!(
                "{}: components {:?}, last {:?}",
                if rep.passed() { "passed" } else { "failed" },
                rep.components,
                rep.last
            );
            Ok(Report::verdict(
                json!({
                    "passed": rep.passed(),
                    "components": rep.components,
                    "last": rep.last,
                    "seed": ctx.opts.seed,
                    "trials": ctx.opts.trials,
                }),
                plain,
                rep.passed(),
            ))
        }
        Command::Orbit {
            quiver,
            max,
            sequence,
            elements,
        } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let seq = ctx.sequence(&alg, &sequence)?;
            let rep = orbit_explore(&alg, &seq, max, ctx.opts)?;
            let mut doc = json!({
                "closed": rep.closed,
                "size": rep.size,
                "max": rep.max_nodes,
                "seed": ctx.opts.seed,
                "quarantined": rep.quarantined.len(),
                "words": rep.words.iter().map(BraidWord::to_string).collect::<Vec<_>>(),
            });
            if elements {
                doc["elements"] = rep
                    .elements
                    .iter()
                    .map(|s| sequence_to_json(&alg, s))
                    .collect();
            }
            let plain = if rep.closed {
                format!("closed orbit of size {}", rep.size)
            } else {
                format!("open: more than {} sequences", rep.max_nodes)
            };
            Ok(Report::verdict(doc, plain, rep.quarantined.is_empty()))
        }
        Command::PresiltingShift { quiver, sequence } => {
            let alg = ctx.algebra(read_quiver(&quiver)?)?;
            let seq = ctx.sequence(&alg, &sequence)?;
            let shifts = presilting_shift(&alg, &seq)?;
            let shifted: Vec<Value> = seq
                .items()
                .iter()
                .zip(&shifts)
                .map(|(x, &s)| x.shift(alg.field(), s).to_json(&alg))
                .collect();
            let plain = shifts.iter().map(i32::to_string).collect::<Vec<_>>().join(" ");
            Ok(Report::ok(json!({ "shifts": shifts, "sequence": shifted }), plain))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let plain = cli.plain;
    match run(cli) {
        Ok(report) => {
            if plain {
                println!("{}", report.plain.trim_end());
            } else {
                println!("{}", serde_json::to_string_pretty(&report.json).unwrap());
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
