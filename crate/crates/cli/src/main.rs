use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use linarr::catalog::{catalog_family, catalog_get, catalog_list, catalog_selfcheck};
use linarr::freeness::{is_free_with, s_membership, yoshinaga_test};
use linarr::io::{arrangement_to_json, parse_arrangement, parse_scalar};
use linarr::lattice::{compute_lattice, lattice_automorphisms};
use linarr::moduli::{classify_profiles, scan_family, ScanOptions};
use linarr::render::{render_svg, Viewport};
use linarr::search::{
    addition_candidates, default_max_size, free_additions, free_deletions, is_inductively_free,
    recursive_freeness_bounded,
};
use linarr::{Arrangement, Error, Scalar};

#[derive(Parser)]
#[command(name = "linarr", version, about = "Exact analysis of projective line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "md")]
    json: bool,
    /// Emit a Markdown report where one exists.
    #[arg(long, global = true)]
    md: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice, characteristic polynomial and freeness in one report.
    Analyze {
        input: String,
    },
    Charpoly {
        input: String,
    },
    Freeness {
        input: String,
        /// Run the restriction test on this line (1-based) instead of the
        /// default pipeline.
        #[arg(long)]
        line: Option<usize>,
    },
    Inductive {
        input: String,
    },
    Recursive {
        input: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Lines whose addition keeps the arrangement free.
    Additions {
        input: String,
        /// List every candidate, free or not.
        #[arg(long)]
        all: bool,
    },
    Deletions {
        input: String,
    },
    Aut {
        input: String,
    },
    ScanFamily {
        name: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        samples: Vec<String>,
        /// Add a row with the parameter left symbolic.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        no_recursive: bool,
        #[arg(long)]
        max_size: Option<usize>,
    },
    ClassifyProfiles {
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    Render {
        input: String,
        /// `xmin,xmax,ymin,ymax`
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        viewport: Option<Vec<f64>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Get {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        #[arg(long)]
        svg: bool,
    },
    Selfcheck {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::UnknownCatalog(_) | Error::InvalidIndex(_) => 2,
        Error::ContextMismatch | Error::BadParameter(_) | Error::BadDiscriminant(_) | Error::NotQuadratic => 3,
        Error::SelfCheck(_) => 4,
        Error::NotDrawable(_) => 5,
        _ => 1,
    }
}

fn parse_param(text: &str) -> Result<Scalar, Error> {
    parse_scalar(text).map_err(|e| match e {
        Error::Parse(m) => Error::BadParameter(format!("`{text}`: {m}")),
        other => other,
    })
}

/// Resolves `catalog:name[?lambda=value]` or a JSON file path.
fn load(input: &str) -> Result<Arrangement, Error> {
    if let Some(rest) = input.strip_prefix("catalog:") {
        let (name, query) = rest.split_once('?').unwrap_or((rest, ""));
        let mut param = None;
        for kv in query.split('&').filter(|s| !s.is_empty()) {
            match kv.split_once('=') {
                Some(("lambda" | "t", v)) => param = Some(parse_param(v)?),
                _ => return Err(Error::Parse(format!("unknown catalog query `{kv}`"))),
            }
        }
        return catalog_get(name, param.as_ref());
    }
    let text = std::fs::read_to_string(input).map_err(|e| Error::Parse(format!("cannot read {input}: {e}")))?;
    parse_arrangement(&text)
}

fn analyze(a: &Arrangement, md: bool) -> Output {
    let lat = compute_lattice(a);
    let chi = lat.char_poly();
    let r = is_free_with(a, &lat);
    let s = s_membership(&lat, &r).ok();
    if md {
        let mut t =
            "| lines | field | F | χ | free | route | exponents | S |\n|---|---|---|---|---|---|---|---|\n".to_string();
        t += &format!(
            "| {} | {} | {:?} | {} | {} | {} | {} | {} |\n",
            a.len(),
            a.ctx(),
            lat.profile,
            chi.to_string_factored(),
            r.is_free(),
            json!(r.route).as_str().unwrap_or(""),
            r.exponents.map_or("-".into(), |e| format!("{e:?}")),
            s.map_or("-".into(), |b| b.to_string()),
        );
        return Output::Text(t);
    }
    Output::Json(json!({
        "size": a.len(),
        "field": a.ctx().to_string(),
        "profile": lat.profile,
        "mu_total": lat.mu_total,
        "n_per_line": lat.lines.iter().map(|l| l.n).collect::<Vec<_>>(),
        "charpoly": {"coeffs": chi.coeffs, "factored": chi.to_string_factored()},
        "freeness": r,
        "s_membership": s,
    }))
}

fn run(cli: Cli) -> Result<Output, Error> {
    let md = cli.md;
    Ok(match cli.command {
        Command::Analyze { input } => analyze(&load(&input)?, md),
        Command::Charpoly { input } => {
            let chi = compute_lattice(&load(&input)?).char_poly();
            Output::Json(json!({
                "coeffs": chi.coeffs,
                "exponents": chi.factored,
                "factored": chi.to_string_factored(),
            }))
        }
        Command::Freeness { input, line } => {
            let a = load(&input)?;
            let lat = compute_lattice(&a);
            let r = match line {
                None => is_free_with(&a, &lat),
                Some(0) => return Err(Error::InvalidIndex(0)),
                Some(h) => yoshinaga_test(&a, &lat.char_poly(), h - 1)?,
            };
            Output::Json(json!(r))
        }
        Command::Inductive { input } => {
            let chain = is_inductively_free(&load(&input)?);
            Output::Json(json!({
                "inductively_free": chain.is_some(),
                "chain": chain.map(|c| c.to_json()),
            }))
        }
        Command::Recursive { input, max_size } => {
            let a = load(&input)?;
            let bound = max_size.unwrap_or_else(|| default_max_size(&a));
            Output::Json(recursive_freeness_bounded(&a, bound)?.to_json())
        }
        Command::Additions { input, all } => {
            let a = load(&input)?;
            let cands = if all {
                addition_candidates(&a)?
            } else {
                free_additions(&a)?
            };
            Output::Json(json!(cands))
        }
        Command::Deletions { input } => Output::Json(json!(free_deletions(&load(&input)?)?)),
        Command::Aut { input } => {
            let g = lattice_automorphisms(&compute_lattice(&load(&input)?));
            let gens: Vec<Vec<usize>> = g.generators.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect();
            Output::Json(json!({"order": g.order, "generators": gens}))
        }
        Command::ScanFamily {
            name,
            samples,
            symbolic,
            no_recursive,
            max_size,
        } => {
            let f = catalog_family(&name)?;
            let xs = samples.iter().map(|s| parse_param(s)).collect::<Result<Vec<_>, _>>()?;
            let opts = ScanOptions {
                inductive: true,
                recursive: !no_recursive,
                max_size,
                symbolic,
            };
            let t = scan_family(&f, &xs, &opts)?;
            if md {
                Output::Text(t.to_markdown())
            } else {
                Output::Json(t.to_json())
            }
        }
        Command::ClassifyProfiles { max } => {
            let ts = classify_profiles(max);
            if md {
                let mut s = "| ℓ | a | F |\n|---|---|---|\n".to_string();
                for t in &ts {
                    s += &format!("| {} | {} | {:?} |\n", t.ell, t.a, t.profile);
                }
                Output::Text(s)
            } else {
                Output::Json(json!(ts))
            }
        }
        Command::Catalog { action } => match action {
            CatalogCommand::List => Output::Json(json!(catalog_list())),
            CatalogCommand::Get { name, param, svg } => {
                let p = param.as_deref().map(parse_param).transpose()?;
                let a = catalog_get(&name, p.as_ref())?;
                if svg {
                    Output::Text(render_svg(&a, None)?)
                } else {
                    Output::Json(arrangement_to_json(&a))
                }
            }
            CatalogCommand::Selfcheck { name, param } => {
                let p = param.as_deref().map(parse_param).transpose()?;
                Output::Json(json!(catalog_selfcheck(&name, p.as_ref())?))
            }
        },
        Command::Render {
            input,
            viewport,
            output,
        } => {
            let v = match viewport.as_deref() {
                None => None,
                Some(&[xmin, xmax, ymin, ymax]) if xmin < xmax && ymin < ymax => {
                    Some(Viewport { xmin, xmax, ymin, ymax })
                }
                Some(other) => {
                    return Err(Error::Parse(format!(
                        "viewport needs xmin<xmax,ymin<ymax, got {other:?}"
                    )))
                }
            };
            let svg = render_svg(&load(&input)?, v)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &svg)
                        .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
                    Output::Json(json!({"written": path.display().to_string()}))
                }
                None => Output::Text(svg),
            }
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable report") + "\n",
                Output::Text(s) => s,
            };
            // a closed pipe (`linarr ... | head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
