use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use garside::cache::{cache_dir, cache_file_name};
use garside::catalog::{self, CatalogEntry, StructureSpec};
use garside::parabolic::SampleParams;
use garside::{AtomSet, CheckMode, Element, Error, GarsideStructure, StructureCache};

mod handle;

use handle::{handle_json, parse_handle, parse_target};

#[derive(Parser)]
#[command(name = "garside", version, about = "Interval Garside structures: normal forms, conjugacy, parabolic subgroups")]
struct Cli {
    /// Cache file, a name inside $GARSIDE_CACHE_DIR, or a catalog name.
    #[arg(long, global = true)]
    structure: Option<String>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel verification.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a structure and write its cache file.
    Build {
        /// Catalog name, JSON recipe file, or generator data file.
        source: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat a data file as a dual structure (all reflections as letters).
        #[arg(long)]
        dual: bool,
        /// Skip the verification stamps.
        #[arg(long)]
        no_stamps: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List catalog names and constructors.
    List,
    /// Left normal form of a signed word.
    Nf { word: Vec<String> },
    /// Least common multiple of two positive words.
    Lcm {
        w1: String,
        w2: String,
        /// Use the suffix order.
        #[arg(long)]
        right: bool,
    },
    /// Greatest common divisor of two positive words.
    Gcd {
        w1: String,
        w2: String,
        #[arg(long)]
        right: bool,
    },
    /// Reduced fraction decomposition.
    Fraction {
        word: Vec<String>,
        #[arg(long)]
        right: bool,
    },
    /// Iterate swap until the orbit repeats.
    SwapOrbit { word: Vec<String> },
    /// Minimal positive conjugator with a given atom as prefix.
    Rho { atom: String, word: Vec<String> },
    /// Minimal positive conjugators, or the graph of positive conjugates.
    MinConj {
        word: Vec<String>,
        #[arg(long)]
        graph: bool,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    Support { word: Vec<String> },
    /// Parabolic closure as a handle.
    Pc { word: Vec<String> },
    /// z-element of an atom set or a handle.
    Z { target: Vec<String> },
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        /// Simple element, for `godelle`.
        simple: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Sampled)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        len: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    Intersect {
        h1: String,
        h2: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    Adjacent { h1: String, h2: String },
    CurveGraph {
        #[arg(long, default_value_t = 1)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sampled,
    Certificate,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Balanced,
    Lattice,
    LcmGarside,
    SupportPreserving,
    Hypdual,
    Godelle,
}

/// What a subcommand produced.
enum Outcome {
    Done { value: Value, text: String },
    /// Printed verbatim whatever the output mode.
    Raw(String),
    /// Verification failed; the value is the counterexample report.
    Failed(Value),
}

fn done(value: Value, text: impl Into<String>) -> Outcome {
    Outcome::Done { value, text: text.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Done { value, text }) => {
            if cli.json {
                println!("{}", pretty(&value));
            } else {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Ok(Outcome::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(value)) => {
            println!("{}", pretty(&value));
            ExitCode::from(1)
        }
        Err(Error::Refused(msg)) => {
            println!("{}", pretty(&json!({"passed": false, "check": "build", "reason": msg})));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json prints")
}

fn run(cli: &Cli) -> garside::Result<Outcome> {
    match &cli.cmd {
        Cmd::Build { source, out, dual, no_stamps, seed } => build(source, out.as_deref(), *dual, *no_stamps, *seed),
        Cmd::List => Ok(done(catalog::listing(), catalog::CATALOG_NAMES.join("\n"))),
        cmd => {
            let entry = load_structure(cli.structure.as_deref())?;
            query(&entry.structure, cmd)
        }
    }
}

fn build(source: &str, out: Option<&Path>, dual: bool, no_stamps: bool, seed: u64) -> garside::Result<Outcome> {
    let spec = if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source)?;
        if text.trim_start().starts_with('{') {
            serde_json::from_str::<StructureSpec>(&text).map_err(|e| Error::Parse(format!("recipe: {e}")))?
        } else {
            let name = Path::new(source).file_stem().and_then(|s| s.to_str()).unwrap_or("data").to_string();
            StructureSpec::DataFile { name, text, dual }
        }
    } else {
        catalog::lookup(source)?
    };
    let entry = catalog::build_spec(&spec)?;
    let mut cache = StructureCache::new(&entry);
    if !no_stamps {
        cache.stamp(&entry.structure, SampleParams { seed, ..SampleParams::default() });
    }
    let target = match out {
        Some(p) => Some(p.to_path_buf()),
        None => cache_dir().map(|d| d.join(cache_file_name(&entry.name))),
    };
    let s = &entry.structure;
    let summary = json!({
        "name": entry.name,
        "simples": s.num_simples(),
        "atoms": s.atom_names(),
        "delta": s.simple_name(s.delta()),
        "group_order": s.group().order(),
        "stamps": cache.stamps,
        "path": target.as_ref().map(|p| p.display().to_string()),
    });
    match target {
        Some(path) => {
            cache.save(&path)?;
            let text = format!(
                "{}: {} simples, {} atoms, Delta = {}; wrote {}",
                entry.name,
                s.num_simples(),
                s.num_atoms(),
                s.simple_name(s.delta()),
                path.display()
            );
            let failed: Vec<&String> = cache.stamps.iter().filter(|(_, st)| !st.passed).map(|(k, _)| k).collect();
            if failed.is_empty() {
                Ok(done(summary, text))
            } else {
                Ok(Outcome::Failed(json!({"passed": false, "check": "build", "failed": failed, "summary": summary})))
            }
        }
        // no destination: the cache document itself is the output
        None => Ok(Outcome::Raw(cache.to_json())),
    }
}

fn load_structure(arg: Option<&str>) -> garside::Result<CatalogEntry> {
    let arg = arg.ok_or_else(|| Error::Parse("--structure is required".into()))?;
    let direct = Path::new(arg);
    if direct.is_file() {
        return Ok(StructureCache::load(direct)?.1);
    }
    if let Some(dir) = cache_dir() {
        for cand in [dir.join(arg), dir.join(cache_file_name(arg))] {
            if cand.is_file() {
                return Ok(StructureCache::load(&cand)?.1);
            }
        }
    }
    catalog::build(arg)
}

fn joined(word: &[String]) -> String {
    word.join(" ")
}

fn positive(s: &GarsideStructure, text: &str) -> garside::Result<Element> {
    s.parse_positive(text)
}

fn names(s: &GarsideStructure, x: AtomSet) -> Value {
    json!(s.atom_set_names(x))
}

fn braces(s: &GarsideStructure, x: AtomSet) -> String {
    format!("{{{}}}", s.atom_set_names(x).join(","))
}

fn query(s: &GarsideStructure, cmd: &Cmd) -> garside::Result<Outcome> {
    match cmd {
        Cmd::Build { .. } | Cmd::List => unreachable!("handled before loading"),
        Cmd::Nf { word } => {
            let x = s.parse_element(&joined(word))?;
            let factors: Vec<String> = x.factors.iter().map(|&f| s.simple_name(f)).collect();
            let text = s.format(&x);
            Ok(done(json!({"normal_form": text, "inf": x.inf, "sup": x.sup(), "factors": factors}), text))
        }
        Cmd::Lcm { w1, w2, right } | Cmd::Gcd { w1, w2, right } => {
            let (a, b) = (positive(s, w1)?, positive(s, w2)?);
            let is_lcm = matches!(cmd, Cmd::Lcm { .. });
            let r = match (is_lcm, right) {
                (true, false) => s.join_pos(&a, &b),
                (true, true) => s.rjoin_pos(&a, &b),
                (false, false) => s.meet_pos(&a, &b),
                (false, true) => s.rmeet_pos(&a, &b),
            };
            let key = if is_lcm { "lcm" } else { "gcd" };
            let text = s.format_positive(&r);
            Ok(done(json!({key: text, "normal_form": s.format(&r), "side": if *right { "right" } else { "left" }}), text))
        }
        Cmd::Fraction { word, right } => {
            let x = s.parse_element(&joined(word))?;
            let f = if *right { s.right_fraction(&x) } else { s.left_fraction(&x) };
            let (d, n) = (s.format_positive(&f.denominator), s.format_positive(&f.numerator));
            let text = if *right { format!("({n}) ({d})^-1") } else { format!("({d})^-1 ({n})") };
            Ok(done(
                json!({"denominator": d, "numerator": n, "side": if *right { "right" } else { "left" }}),
                text,
            ))
        }
        Cmd::SwapOrbit { word } => {
            let x = s.parse_element(&joined(word))?;
            let t = s.swap_orbit(&x);
            let steps: Vec<Value> = t
                .steps
                .iter()
                .map(|st| json!({"conjugator": s.format_positive(&st.conjugator), "result": s.format(&st.result)}))
                .collect();
            let mut text = s.format(&x);
            for st in &t.steps {
                text.push_str(&format!("\n  -> {}   [by {}]", s.format(&st.result), s.format_positive(&st.conjugator)));
            }
            text.push_str(&format!("\npreperiod {} period {}", t.preperiod, t.period));
            Ok(done(
                json!({
                    "start": s.format(&x),
                    "steps": steps,
                    "preperiod": t.preperiod,
                    "period": t.period,
                    "recurrent": s.format(t.recurrent()),
                }),
                text,
            ))
        }
        Cmd::Rho { atom, word } => {
            let a = s.atom_by_name(atom).ok_or_else(|| Error::Parse(format!("unknown atom `{atom}`")))?;
            let x = positive(s, &joined(word))?;
            let (r, chain) = s.rho_chain(a, &x);
            let y = s.conj(&x, &r);
            let text = s.format_positive(&r);
            Ok(done(
                json!({
                    "rho": text,
                    "conjugate": s.format_positive(&y),
                    "chain": chain.iter().map(|c| s.format_positive(c)).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        Cmd::MinConj { word, graph, format } => {
            let x = positive(s, &joined(word))?;
            if *graph {
                let g = s.positive_conjugates_graph(&x)?;
                return Ok(match format {
                    Format::Dot => done(s.conj_graph_json(&g), s.conj_graph_dot(&g)),
                    Format::Json => {
                        let v = s.conj_graph_json(&g);
                        done(v.clone(), pretty(&v))
                    }
                });
            }
            let rows: Vec<(String, String)> = s
                .minimal_positive_conjugators(&x)
                .iter()
                .map(|u| (s.format_positive(u), s.format_positive(&s.conj(&x, u))))
                .collect();
            let text = rows.iter().map(|(u, y)| format!("{u}  ->  {y}")).collect::<Vec<_>>().join("\n");
            let v: Vec<Value> = rows.iter().map(|(u, y)| json!({"conjugator": u, "conjugate": y})).collect();
            Ok(done(json!({"conjugators": v}), text))
        }
        Cmd::Support { word } => {
            let x = s.parse_element(&joined(word))?;
            let sup = s.support(&x);
            Ok(done(json!({"support": names(s, sup)}), braces(s, sup)))
        }
        Cmd::Pc { word } => {
            let x = s.parse_element(&joined(word))?;
            let p = s.parabolic_closure(&x);
            Ok(done(handle_json(s, &p), s.handle_label(&p)))
        }
        Cmd::Z { target } => {
            let p = parse_target(s, &joined(target))?;
            let z = s.z_element(&p)?;
            let text = s.format(&z);
            Ok(done(json!({"z": text, "word": s.format_word(&z), "handle": handle_json(s, &p)}), text))
        }
        Cmd::Check { what, simple, mode, seed, len, samples } => check(s, *what, simple, *mode, *seed, *len, *samples),
        Cmd::Intersect { h1, h2, bound } => {
            let (p1, p2) = (parse_handle(s, h1)?, parse_handle(s, h2)?);
            let r = s.intersect(&p1, &p2, *bound)?;
            let text = format!("{}  [{}, {}]", s.handle_label(&r.handle), exactness(r.exactness), r.method);
            Ok(done(
                json!({"handle": handle_json(s, &r.handle), "exactness": r.exactness, "method": r.method}),
                text,
            ))
        }
        Cmd::Adjacent { h1, h2 } => {
            let (p1, p2) = (parse_handle(s, h1)?, parse_handle(s, h2)?);
            let adj = s.adjacency(&p1, &p2)?;
            Ok(done(json!({"adjacent": adj}), if adj { "adjacent" } else { "not adjacent" }))
        }
        Cmd::CurveGraph { bound, format } => {
            let g = s.curve_graph(*bound)?;
            let v = s.curve_graph_json(&g);
            Ok(match format {
                Format::Dot => done(v, s.curve_graph_dot(&g)),
                Format::Json => {
                    let t = pretty(&v);
                    done(v, t)
                }
            })
        }
    }
}

fn exactness(e: garside::Exactness) -> &'static str {
    match e {
        garside::Exactness::Exact => "exact",
        garside::Exactness::LowerBound => "lower bound",
    }
}

fn verdict(check: &str, passed: bool, mut report: Value) -> Outcome {
    report["check"] = json!(check);
    report["passed"] = json!(passed);
    if passed {
        done(report, format!("{check}: pass"))
    } else {
        Outcome::Failed(report)
    }
}

fn check(
    s: &GarsideStructure,
    what: CheckKind,
    simple: &[String],
    mode: Mode,
    seed: u64,
    len: usize,
    samples: usize,
) -> garside::Result<Outcome> {
    let iv = s.interval();
    Ok(match what {
        CheckKind::Balanced => {
            let bad: Vec<String> = (0..s.num_simples() as u32)
                .filter(|&k| s.is_prefix(k, s.delta()) != s.is_suffix(k, s.delta()))
                .map(|k| s.simple_name(k))
                .collect();
            verdict("balanced", iv.is_balanced() && bad.is_empty(), json!({"one_sided_divisors": bad}))
        }
        CheckKind::Lattice => verdict("lattice", iv.lattice_check(), json!({"simples": s.num_simples()})),
        CheckKind::LcmGarside => {
            let r = s.check_lcm_garside();
            verdict("lcm-garside", r.passed, serde_json::to_value(&r).expect("report serializes"))
        }
        CheckKind::SupportPreserving => {
            let (m, params) = match mode {
                Mode::Sampled => (CheckMode::Sampled, SampleParams { seed, len, samples }),
                Mode::Certificate => (CheckMode::Certificate, SampleParams::default()),
            };
            let r = s.check_support_preserving(m, params);
            let mut v = json!({"mode": r.mode, "checked": r.checked});
            if let Some(p) = r.params {
                v["seed"] = json!(p.seed);
                v["len"] = json!(p.len);
                v["samples"] = json!(p.samples);
            }
            if let Some(c) = &r.counterexample {
                v["counterexample"] = json!({
                    "x": s.format_positive(&c.x),
                    "conjugator": s.format_positive(&c.conjugator),
                    "support_before": names(s, c.support_before),
                    "support_after": names(s, c.support_after),
                });
            }
            if !r.failed_sets.is_empty() {
                v["failed_sets"] = json!(r.failed_sets.iter().map(|&x| s.atom_set_names(x)).collect::<Vec<_>>());
            }
            verdict("support-preserving", r.passed, v)
        }
        CheckKind::Hypdual => {
            let bad: Vec<String> = iv.hypdual_failures(s.group()).into_iter().map(|k| s.simple_name(k as u32)).collect();
            verdict("hypdual", bad.is_empty(), json!({"failures": bad}))
        }
        CheckKind::Godelle => {
            if simple.is_empty() {
                return Err(Error::Parse("godelle needs a simple element".into()));
            }
            let x = positive(s, &joined(simple))?;
            let d = match (x.inf, x.factors.as_slice()) {
                (0, []) => 0,
                (0, [f]) => *f,
                (1, []) => s.delta(),
                _ => return Err(Error::Parse(format!("`{}` is not a simple element", joined(simple)))),
            };
            let passed = s.godelle_check(d)?;
            let mut v = json!({"simple": s.simple_name(d)});
            if !passed {
                if let Some((a, b)) = godelle_witness(s, d) {
                    v["counterexample"] = json!({"x": s.simple_name(a), "y": s.simple_name(b)});
                }
            }
            verdict("godelle", passed, v)
        }
    })
}

/// First pair of divisors of `d` whose product leaves `Div(d)` in head or
/// tail.
fn godelle_witness(s: &GarsideStructure, d: u32) -> Option<(u32, u32)> {
    let divs: Vec<u32> = s.prefixes(d).iter().map(|v| v as u32).collect();
    divs.iter().find_map(|&x| {
        divs.iter()
            .find(|&&y| !s.is_prefix(s.simple_head(x, y), d) || !s.is_prefix(s.tail_simple(x, y), d))
            .map(|&y| (x, y))
    })
}
