use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotslope_core::slopes::{
    self, adequate_slope_matrix, all_cosets, column_sums, fit_slope_matrix, state_surface_slope,
    state_surface_slope_c_minus, DegreeSamples, Verdict,
};
use knotslope_core::torus::{self, TorusParams};
use knotslope_core::{read_diagram, skein, ColorVector, ColoredEngine, LinkDiagram, RunConfig};

#[derive(Parser)]
#[command(name = "knotslope", version, about = "Colored Jones polynomials and slope matrices of links")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Largest crossing count evaluated by full state enumeration.
    #[arg(long, global = true, default_value_t = RunConfig::default().max_bruteforce_crossings)]
    max_bruteforce_crossings: usize,
    /// Largest cut width accepted by the sweep contraction.
    #[arg(long, global = true, default_value_t = RunConfig::default().max_contract_width)]
    max_contract_width: usize,
    /// Largest color sampled when fitting degrees.
    #[arg(long, global = true, default_value_t = RunConfig::default().max_color)]
    max_color: u32,
    /// Fit on a single parity coset, e.g. "1,0" (odd, even).
    #[arg(long, global = true, value_delimiter = ',')]
    parity: Option<Vec<u32>>,
    /// Write the output document here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

impl GlobalArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            max_bruteforce_crossings: self.max_bruteforce_crossings,
            max_contract_width: self.max_contract_width,
            max_color: self.max_color,
            parity_offsets: self.parity.clone(),
            output: self.output.clone(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Auto,
    Bruteforce,
    Contract,
}

#[derive(Subcommand)]
enum Command {
    /// Kauffman bracket in A.
    Bracket {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: Engine,
    },
    /// Colored Jones polynomial in v.
    Jones {
        file: PathBuf,
        /// One color per component, comma separated.
        #[arg(long, short, value_delimiter = ',', required = true)]
        colors: Vec<u32>,
    },
    /// All-minus state and minus-adequacy.
    Adequacy { file: PathBuf },
    /// Slope matrix and state-surface slope from crossing counts.
    Slopes { file: PathBuf },
    /// Slope matrices fitted to colored Jones degrees on each parity coset.
    Fit {
        /// Diagram file, or a degree-sample document with --samples.
        file: PathBuf,
        #[arg(long)]
        samples: bool,
    },
    /// Torus link T(r, s) formulas.
    #[command(allow_negative_numbers = true)]
    Torus {
        r: i64,
        s: i64,
        #[arg(long, short, value_delimiter = ',')]
        colors: Option<Vec<u32>>,
        /// Report the top degree and the closed-form case instead.
        #[arg(long, conflicts_with = "slopes")]
        degrees: bool,
        /// Report the slope matrix and boundary slopes.
        #[arg(long)]
        slopes: bool,
        /// Multiply by ∏(-1)^{N_j-1} to match the skein convention.
        #[arg(long)]
        normalized: bool,
    },
    /// Compare fitted slope matrices with the state surface.
    Verify { file: PathBuf },
}

/// An error that maps to exit status 2.
struct Failure(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.into())
    }
}

fn load(path: &Path) -> anyhow::Result<LinkDiagram> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_diagram(&text).with_context(|| format!("parsing {}", path.display()))
}

fn colors(v: &[u32]) -> anyhow::Result<ColorVector> {
    Ok(ColorVector::new(v.to_vec())?)
}

fn emit(doc: &Value, cfg: &RunConfig) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match &cfg.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cosets(cfg: &RunConfig, len: usize) -> anyhow::Result<Vec<Vec<u32>>> {
    match &cfg.parity_offsets {
        Some(p) if p.len() != len => bail!("--parity needs {len} entries, got {}", p.len()),
        Some(p) => Ok(vec![p.iter().map(|x| x % 2).collect()]),
        None => Ok(all_cosets(len)),
    }
}

fn fit_document(samples: &DegreeSamples) -> Value {
    match fit_slope_matrix(samples) {
        Ok(m) => json!({
            "parity_offsets": samples.parity_offsets,
            "matrix": m,
            "column_sums": column_sums(&m),
        }),
        Err(e) => json!({ "parity_offsets": samples.parity_offsets, "error": e.to_string() }),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = cli.global.config();
    let skein_cfg = cfg.skein();
    let mut status = 0;
    let doc = match cli.command {
        Command::Bracket { file, engine } => {
            let d = load(&file)?;
            let p = match engine {
                Engine::Auto => skein::bracket(&d, &skein_cfg)?,
                Engine::Bruteforce => skein::bracket_bruteforce(&d, skein_cfg.max_bruteforce_crossings)?,
                Engine::Contract => skein::bracket_contract(&d, skein_cfg.max_contract_width)?,
            };
            serde_json::to_value(p)?
        }
        Command::Jones { file, colors: c } => {
            let d = load(&file)?;
            let p = ColoredEngine::new(d, skein_cfg).colored_jones(&colors(&c)?)?;
            serde_json::to_value(p)?
        }
        Command::Adequacy { file } => {
            let d = load(&file)?;
            let st = skein::all_minus_state(&d);
            let adequate = skein::is_minus_adequate(&d);
            json!({
                "adequate": adequate,
                "crossings": d.crossing_count(),
                "components": d.num_components(),
                "all_minus_circles": st.circle_count,
                "mindeg_bound": adequate.then(|| skein::adequate_mindeg(&d).ok()).flatten(),
                "crossing_stats": d.crossing_stats(),
            })
        }
        Command::Slopes { file } => {
            let d = load(&file)?;
            let st = d.crossing_stats();
            let m = adequate_slope_matrix(&st);
            json!({
                "adequate": skein::is_minus_adequate(&d),
                "formula_matrix": m,
                "column_sums": column_sums(&m),
                "surface_slope": state_surface_slope(&st),
                "surface_slope_c_minus": state_surface_slope_c_minus(&st),
            })
        }
        Command::Fit { file, samples } => {
            if samples {
                let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
                let s: DegreeSamples = serde_json::from_str(&text).context("parsing degree samples")?;
                fit_document(&s)
            } else {
                let d = load(&file)?;
                let engine = ColoredEngine::new(d.clone(), skein_cfg);
                let mut fits = Vec::new();
                for off in cosets(&cfg, d.num_components())? {
                    let s = DegreeSamples::collect(off, cfg.max_color, |n| engine.colored_jones_maxdeg(n))?;
                    let mut f = fit_document(&s);
                    f["samples"] = serde_json::to_value(&s)?["grid"].clone();
                    fits.push(f);
                }
                json!({ "max_color": cfg.max_color, "fits": fits })
            }
        }
        Command::Torus { r, s, colors: c, degrees, slopes, normalized } => {
            let t = TorusParams::new(r, s)?;
            let params = json!({ "r": r, "s": s, "g": t.g(), "a": t.a(), "b": t.b() });
            if slopes {
                let m = torus::torus_slope_matrix(&t);
                json!({
                    "params": params,
                    "slope_matrix": m,
                    "boundary_slope": torus::torus_boundary_slope(&t),
                })
            } else {
                let Some(c) = c else {
                    return Err(anyhow::anyhow!("--colors is required unless --slopes is given").into());
                };
                let n = colors(&c)?;
                if degrees {
                    let (case, value) = torus::torus_case_maxdeg(&t, &n)?;
                    json!({
                        "params": params,
                        "colors": n,
                        "maxdeg": torus::torus_predicted_maxdeg(&t, &n)?,
                        "case": case,
                        "case_formula_value": value,
                    })
                } else if normalized {
                    serde_json::to_value(torus::torus_colored_jones_normalized(&t, &n)?)?
                } else {
                    serde_json::to_value(torus::torus_colored_jones(&t, &n)?)?
                }
            }
        }
        Command::Verify { file } => {
            let d = load(&file)?;
            let report = slopes::verify_conjecture(&d, cfg.max_color, &skein_cfg)?;
            if report.verdict == Verdict::Disagree {
                status = 1;
            }
            serde_json::to_value(report)?
        }
    };
    emit(&doc, &cfg)?;
    Ok(status)
}

/// Joins the error chain, skipping causes already quoted by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !out.ends_with(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(e)) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}
