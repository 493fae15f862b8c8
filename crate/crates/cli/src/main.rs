//! `assoc`: build, verify, compare and classify associahedron realizations.
//!
//! Exit codes: 0 success, 1 a verification or check failed, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use assoc_core::atlas::{
    classify_family, count_formulas, enumerated_counts, intersection_report, AtlasReport, Family,
};
use assoc_core::genperm::{post_hrep, rss_hrep, MinkowskiWeights, RssParams};
use assoc_core::hl::{hl_embed, hl_hrep};
use assoc_core::io::{parse_points, parse_rss_params, parse_weights};
use assoc_core::polygon::{snake_triangulation, SignSequence, Triangulation};
use assoc_core::realization::{
    fans_linearly_isomorphic, normal_fan, parse_hrep, verify_realization, HPolytope, PreparedFan,
};
use assoc_core::santos::{santos_hrep_with, santos_weights, SeedFrame};
use assoc_core::secondary::{gkz_hrep, PlanarConfig};
use assoc_core::Error;

#[derive(Parser)]
#[command(name = "assoc", version, about = "Exact associahedron realizations")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class counts of both types by enumeration, next to their closed forms.
    Count {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
    /// Normal-isomorphism classes of a family.
    Classify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Write the H-representation of one realization.
    Build {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Sign word over "+-" of length n-1 (hl; default all minus).
        #[arg(long)]
        sigma: Option<String>,
        /// Seed triangulation "m: a-b, c-d, ..." (santos; default the snake).
        #[arg(long)]
        seed: Option<String>,
        /// "i j value" file: a_ij for post, g_ij for rss (default a = 1, g = g0).
        #[arg(long)]
        weights: Option<PathBuf>,
        /// "x y" file of polygon vertices (gkz; default (k, k^2)).
        #[arg(long)]
        points: Option<PathBuf>,
        /// Output file; "-" for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that an H-representation realizes the associahedron.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide whether two realizations have linearly isomorphic normal fans.
    Compare {
        #[arg(long = "in", num_args = 1, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Cross-family isomorphism matrix at dimension n.
    Atlas {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_)
            | Error::NotSimpleAt(_)
            | Error::DegenerateVertex { .. }
            | Error::NotSimplicial
            | Error::FlipClassification { .. }
            | Error::WeightCertification { .. } => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable report")
        );
    } else {
        print!("{}", text());
    }
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    type_i: u64,
    type_ii: u64,
    formula_i: u64,
    formula_ii: u64,
}

fn count(json: bool, n_max: usize) -> Outcome {
    let rows = (0..=n_max)
        .map(|n| {
            let (type_i, type_ii) = enumerated_counts(n)?;
            let (formula_i, formula_ii) = count_formulas(n);
            Ok(CountRow {
                n,
                type_i,
                type_ii,
                formula_i,
                formula_ii,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    emit(json, &rows, || {
        let mut s = format!(
            "{:>3} {:>8} {:>8} {:>10} {:>10}\n",
            "n", "I", "II", "formula I", "formula II"
        );
        for r in &rows {
            s += &format!(
                "{:>3} {:>8} {:>8} {:>10} {:>10}\n",
                r.n, r.type_i, r.type_ii, r.formula_i, r.formula_ii
            );
        }
        s
    });
    match rows
        .iter()
        .find(|r| (r.type_i, r.type_ii) != (r.formula_i, r.formula_ii))
    {
        Some(r) => Err(Failure::Check(format!(
            "enumeration disagrees with the closed form at n = {}",
            r.n
        ))),
        None => Ok(()),
    }
}

fn classify(json: bool, family: Family, n: usize) -> Outcome {
    #[derive(Serialize)]
    struct Row {
        param: String,
        size: usize,
    }
    let rows: Vec<Row> = classify_family(family, n)?
        .into_iter()
        .map(|c| Row {
            param: c.param.to_string(),
            size: c.size,
        })
        .collect();
    emit(json, &rows, || {
        let mut s = format!("{} classes for {family}, n = {n}\n", rows.len());
        for r in &rows {
            s += &format!("{}\t{}\n", r.size, r.param);
        }
        s
    });
    Ok(())
}

struct BuildArgs {
    family: Family,
    n: usize,
    sigma: Option<String>,
    seed: Option<String>,
    weights: Option<PathBuf>,
    points: Option<PathBuf>,
    out: PathBuf,
}

fn unused(flag: &str, given: bool, family: Family) -> Result<(), Failure> {
    if given {
        return Err(Failure::Input(format!(
            "--{flag} does not apply to family {family}"
        )));
    }
    Ok(())
}

fn build_polytope(a: &BuildArgs) -> Result<(HPolytope, Option<String>), Failure> {
    if a.n == 0 {
        return Err(Failure::Input("n must be at least 1".into()));
    }
    let family = a.family;
    if family != Family::Hl {
        unused("sigma", a.sigma.is_some(), family)?;
    }
    if family != Family::Santos {
        unused("seed", a.seed.is_some(), family)?;
    }
    if !matches!(family, Family::Post | Family::Rss) {
        unused("weights", a.weights.is_some(), family)?;
    }
    if family != Family::Gkz {
        unused("points", a.points.is_some(), family)?;
    }
    let h = match family {
        Family::Gkz => {
            let q = match &a.points {
                Some(p) => parse_points(&read(p)?)?,
                None => PlanarConfig::parabola(a.n + 3)?,
            };
            if q.m() != a.n + 3 {
                return Err(Failure::Input(format!(
                    "{} points given, n = {} needs {}",
                    q.m(),
                    a.n,
                    a.n + 3
                )));
            }
            gkz_hrep(&q)?
        }
        Family::Post => {
            let w = match &a.weights {
                Some(p) => parse_weights(&read(p)?, a.n)?,
                None => MinkowskiWeights::ones(a.n),
            };
            post_hrep(&w)
        }
        Family::Rss => {
            let g = match &a.weights {
                Some(p) => parse_rss_params(&read(p)?, a.n)?,
                None => RssParams::g0(a.n),
            };
            rss_hrep(&g)?
        }
        Family::Hl => {
            let sigma: SignSequence = match &a.sigma {
                Some(s) => s.parse()?,
                None => SignSequence::all_minus(a.n - 1),
            };
            if sigma.len() + 1 != a.n {
                return Err(Failure::Input(format!(
                    "sigma has length {}, n = {} needs {}",
                    sigma.len(),
                    a.n,
                    a.n - 1
                )));
            }
            hl_hrep(&hl_embed(&sigma))
        }
        Family::Santos => {
            let seed: Triangulation = match &a.seed {
                Some(s) => s.parse()?,
                None => snake_triangulation(a.n),
            };
            if seed.n() != a.n {
                return Err(Failure::Input(format!(
                    "seed lives on a {}-gon, n = {} needs {}",
                    seed.m(),
                    a.n,
                    a.n + 3
                )));
            }
            let frame = SeedFrame::new(seed);
            let w = santos_weights(&frame)?;
            let note = format!("epsilon = {} after {} halvings", w.epsilon, w.halvings);
            return Ok((santos_hrep_with(&frame, &w)?, Some(note)));
        }
    };
    Ok((h, None))
}

fn build(a: BuildArgs) -> Outcome {
    let (h, note) = build_polytope(&a)?;
    let text = h.to_hrep_string();
    if a.out.as_os_str() == "-" {
        print!("{text}");
    } else {
        fs::write(&a.out, text).map_err(|e| Failure::Input(format!("{}: {e}", a.out.display())))?;
    }
    if let Some(note) = note {
        eprintln!("{note}");
    }
    Ok(())
}

fn verify(json: bool, input: &Path) -> Outcome {
    let h = parse_hrep(&read(input)?)?;
    let report = verify_realization(&h);
    emit(json, &report, || {
        if report.is_simple_associahedron {
            format!(
                "ok: simple associahedron, {} vertices\n",
                report.vertex_count()
            )
        } else {
            let mut s = format!("FAILED: {} problems\n", report.failures.len());
            for f in &report.failures {
                s += &format!("  {f}\n");
            }
            s
        }
    });
    if report.is_simple_associahedron {
        Ok(())
    } else {
        Err(Failure::Check("not a simple associahedron".into()))
    }
}

fn compare(json: bool, inputs: &[PathBuf]) -> Outcome {
    let [a, b] = inputs else {
        return Err(Failure::Input(
            "compare needs exactly two --in files".into(),
        ));
    };
    let fans = [a, b]
        .iter()
        .map(|p| {
            let h = parse_hrep(&read(p)?)?;
            let fan = normal_fan(&h)?;
            Ok(PreparedFan::new(&fan)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let iso = fans_linearly_isomorphic(&fans[0], &fans[1]);
    #[derive(Serialize)]
    struct Verdict<'a> {
        isomorphic: bool,
        witness: Option<&'a assoc_core::realization::FanIsomorphism>,
    }
    let verdict = Verdict {
        isomorphic: iso.is_some(),
        witness: iso.as_ref(),
    };
    emit(json, &verdict, || match &iso {
        Some(w) => format!(
            "isomorphic: relabeling {}\nlinear map:\n{}\n",
            w.phi, w.matrix
        ),
        None => "not isomorphic\n".into(),
    });
    Ok(())
}

fn atlas_text(r: &AtlasReport) -> String {
    let mut s = format!("n = {}\n", r.n);
    for (f, c) in &r.class_counts {
        s += &format!("  {f}: {c} classes\n");
    }
    s += "classes (parallel pairs):\n";
    for (i, l) in r.labels.iter().enumerate() {
        let row: String = r.matrix[i]
            .iter()
            .map(|&b| if b { '1' } else { '.' })
            .collect();
        s += &format!("  {i:>3} {row}  {l} ({})\n", r.parallel_counts[i]);
    }
    s += &format!("type I / type II common classes: {:?}\n", r.common_pairs);
    s += &format!("union of type I and type II: {}\n", r.union_size);
    s += &format!(
        "only common class is (alternating, snake): {}\n",
        r.single_common_class
    );
    s
}

fn atlas(json: bool, n: usize) -> Outcome {
    let r = intersection_report(n)?;
    emit(json, &r, || atlas_text(&r));
    if r.single_common_class {
        Ok(())
    } else {
        Err(Failure::Check(
            "type I and type II intersect in an unexpected way".into(),
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = match cli.command {
        Command::Count { n_max } => count(json, n_max),
        Command::Classify { family, n } => classify(json, family, n),
        Command::Build {
            family,
            n,
            sigma,
            seed,
            weights,
            points,
            out,
        } => build(BuildArgs {
            family,
            n,
            sigma,
            seed,
            weights,
            points,
            out,
        }),
        Command::Verify { input } => verify(json, &input),
        Command::Compare { inputs } => compare(json, &inputs),
        Command::Atlas { n } => atlas(json, n),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
