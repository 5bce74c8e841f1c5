//! Command-line surface for the staeckel library: enumeration of
//! separation-coordinate classes, tree listings, span construction and
//! verification, relation checking, and numeric coordinate evaluation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use staeckel::assoc::{devadoss_read, dyslexic_canonical, enumerate_trees, face_counts_bruteforce};
use staeckel::coords::{
    orthogonality_check, tree_coords_forward, tree_coords_inverse, LabeledTree, TreeCoords,
};
use staeckel::killing::{verify_kd_relations, Bracket};
use staeckel::rat::{parse_rat, Rat};
use staeckel::spans::{gaudin_span, jm_span, staeckel_from_tree, verify_span, StaeckelSpan};

#[derive(Parser)]
#[command(name = "staeckel", version, about = "separation coordinates on spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count separation-coordinate classes per parameter number
    Enumerate(EnumerateArgs),
    /// List planar rooted trees in the bracket grammar
    Trees(TreesArgs),
    /// Construct a Stäckel span and verify it
    Staeckel {
        #[command(subcommand)]
        which: StaeckelCmd,
    },
    /// Verify a span stored as JSON
    Verify {
        /// path to a span JSON file
        file: PathBuf,
    },
    /// Check the defining relations of the generators
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "poisson")]
        bracket: Bracket,
    },
    /// Numeric coordinate maps attached to a labelled tree
    Coords {
        #[command(subcommand)]
        which: CoordsCmd,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    /// sphere dimension (counts for S^n)
    #[arg(long, conflicts_with = "leaves")]
    sphere: Option<usize>,
    /// number of tree leaves (counts by codimension)
    #[arg(long)]
    leaves: Option<usize>,
    /// cross-check against exhaustive enumeration
    #[arg(long)]
    brute_force: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TreesArgs {
    #[arg(long)]
    leaves: usize,
    /// keep only trees with this many internal nodes
    #[arg(long)]
    internal: Option<usize>,
    /// one representative per dyslexic class
    #[arg(long)]
    dyslexic: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum StaeckelCmd {
    /// Gaudin span for distinct rational parameters
    Gaudin {
        /// comma-separated rationals, e.g. 0,1,5/2
        #[arg(long)]
        z: String,
    },
    /// Jucys-Murphy span (standard spherical coordinates)
    Jm {
        #[arg(long)]
        n: usize,
    },
    /// Recursive construction from a labelled tree
    FromTree {
        /// tree in the labelled grammar, e.g. corolla{0,1/2,1}
        tree: String,
    },
}

#[derive(Subcommand)]
enum CoordsCmd {
    /// Forward map: coordinates of an ambient point
    Eval {
        #[arg(long)]
        tree: String,
        /// comma-separated components of a unit vector
        #[arg(long)]
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Inverse map: ambient point from coordinate values
    Invert {
        #[arg(long)]
        tree: String,
        /// comma-separated coordinate values, nodes in preorder
        #[arg(long)]
        coords: String,
        /// comma-separated component signs (1 or -1), default all 1
        #[arg(long)]
        signs: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Forward-inverse round trip on random points
    Roundtrip {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Jacobian orthogonality on random points
    Ortho {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, staeckel::Error> {
    match cli.command {
        Command::Enumerate(args) => enumerate(args),
        Command::Trees(args) => trees(args),
        Command::Staeckel { which } => staeckel_cmd(which),
        Command::Verify { file } => verify_file(&file),
        Command::Relations { n, bracket } => relations(n, bracket),
        Command::Coords { which } => coords_cmd(which),
    }
}

fn row_line(row: &[u64]) -> String {
    let mut out = String::new();
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    let _ = write!(out, " | total {}", row.iter().sum::<u64>());
    out
}

fn enumerate(args: EnumerateArgs) -> Result<ExitCode, staeckel::Error> {
    let (leaves, row) = match (args.sphere, args.leaves) {
        (Some(d), None) => {
            if !(2..=12).contains(&d) {
                return Err(staeckel::Error::InvalidInput(format!(
                    "--sphere supports 2..=12, got {d}"
                )));
            }
            let table = devadoss_read(d + 1)?;
            (d + 1, table.sphere_row(d))
        }
        (None, Some(m)) => {
            if !(2..=13).contains(&m) {
                return Err(staeckel::Error::InvalidInput(format!(
                    "--leaves supports 2..=13, got {m}"
                )));
            }
            let table = devadoss_read(m)?;
            (m, table.row_by_codim(m))
        }
        _ => {
            return Err(staeckel::Error::InvalidInput(
                "exactly one of --sphere and --leaves is required".into(),
            ))
        }
    };

    let oracle = if args.brute_force {
        let (_, dyslexic) = face_counts_bruteforce(leaves)?;
        Some(dyslexic)
    } else {
        None
    };
    let agrees = oracle.as_ref().map(|o| {
        let mut by_series = row.clone();
        if args.sphere.is_some() {
            // oracle counts by codimension; the sphere row is reversed
            by_series.reverse();
        }
        *o == by_series
    });

    if args.json {
        let doc = json!({
            "counts": row,
            "total": row.iter().sum::<u64>(),
            "brute_force": oracle,
            "agreement": agrees,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("{}", row_line(&row));
        if let Some(o) = &oracle {
            println!("brute force (by codim): {}", row_line(o));
            println!(
                "agreement: {}",
                if agrees == Some(true) { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(if agrees == Some(false) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn trees(args: TreesArgs) -> Result<ExitCode, staeckel::Error> {
    if !(2..=9).contains(&args.leaves) {
        return Err(staeckel::Error::InvalidInput(format!(
            "--leaves supports 2..=9, got {}",
            args.leaves
        )));
    }
    let all = enumerate_trees(args.leaves, args.internal);
    let list: Vec<String> = if args.dyslexic {
        let mut reps: Vec<String> = all
            .iter()
            .map(|t| dyslexic_canonical(t).to_grammar())
            .collect();
        reps.sort();
        reps.dedup();
        reps
    } else {
        all.iter().map(|t| t.to_grammar()).collect()
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&json!(list)).unwrap());
    } else {
        for line in &list {
            println!("{line}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_rat_list(s: &str) -> Result<Vec<Rat>, staeckel::Error> {
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, staeckel::Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| staeckel::Error::InvalidInput(format!("bad number {t:?}")))
        })
        .collect()
}

fn emit_span(span: &StaeckelSpan) -> Result<ExitCode, staeckel::Error> {
    let report = verify_span(span)?;
    println!("{}", serde_json::to_string_pretty(&span.to_json()).unwrap());
    if report.ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "verification failed: {}",
            serde_json::to_string(&report).unwrap()
        );
        Ok(ExitCode::from(1))
    }
}

fn staeckel_cmd(which: StaeckelCmd) -> Result<ExitCode, staeckel::Error> {
    let span = match which {
        StaeckelCmd::Gaudin { z } => gaudin_span(&parse_rat_list(&z)?)?,
        StaeckelCmd::Jm { n } => jm_span(n)?,
        StaeckelCmd::FromTree { tree } => staeckel_from_tree(&LabeledTree::parse(&tree)?)?,
    };
    emit_span(&span)
}

fn verify_file(file: &PathBuf) -> Result<ExitCode, staeckel::Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| staeckel::Error::InvalidInput(format!("{}: {e}", file.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| staeckel::Error::InvalidInput(format!("invalid JSON: {e}")))?;
    let span = StaeckelSpan::from_json(&value)?;
    let report = verify_span(&span)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn relations(n: usize, bracket: Bracket) -> Result<ExitCode, staeckel::Error> {
    let report = verify_kd_relations(n, bracket)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn fmt_floats(vals: &[f64]) -> String {
    vals.iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if len > 0.3 && v.iter().all(|c| c.abs() / len > 5e-2) {
            return v.iter().map(|c| c / len).collect();
        }
    }
}

fn coords_cmd(which: CoordsCmd) -> Result<ExitCode, staeckel::Error> {
    match which {
        CoordsCmd::Eval { tree, point, json } => {
            let t = LabeledTree::parse(&tree)?;
            let x = parse_f64_list(&point)?;
            let coords = tree_coords_forward(&t, &x)?;
            if json {
                let nodes: Vec<_> = coords
                    .nodes
                    .iter()
                    .map(|n| {
                        json!({
                            "path": n.path,
                            "values": n.values.iter().map(|v| format!("{v:.16e}")).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&json!(nodes)).unwrap());
            } else {
                println!("{}", fmt_floats(&coords.flatten()));
            }
            Ok(ExitCode::SUCCESS)
        }
        CoordsCmd::Invert {
            tree,
            coords,
            signs,
            json,
        } => {
            let t = LabeledTree::parse(&tree)?;
            let values = parse_f64_list(&coords)?;
            let tc = TreeCoords::from_flat(&t, &values)?;
            let signs: Vec<i8> = match signs {
                Some(s) => parse_f64_list(&s)?.iter().map(|&v| v as i8).collect(),
                None => vec![1; t.leaf_count()],
            };
            let x = tree_coords_inverse(&t, &tc, &signs)?;
            if json {
                let doc: Vec<_> = x.iter().map(|v| format!("{v:.16e}")).collect();
                println!("{}", serde_json::to_string_pretty(&json!(doc)).unwrap());
            } else {
                println!("{}", fmt_floats(&x));
            }
            Ok(ExitCode::SUCCESS)
        }
        CoordsCmd::Roundtrip {
            tree,
            seed,
            samples,
        } => {
            let t = LabeledTree::parse(&tree)?;
            let n = t.leaf_count();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = 0.0f64;
            for _ in 0..samples {
                let x = random_unit(&mut rng, n);
                let coords = tree_coords_forward(&t, &x)?;
                let signs: Vec<i8> = x.iter().map(|&v| if v < 0.0 { -1 } else { 1 }).collect();
                let back = tree_coords_inverse(&t, &coords, &signs)?;
                for (a, b) in back.iter().zip(&x) {
                    worst = worst.max((a - b).abs());
                }
            }
            println!("max roundtrip error {worst:.3e} over {samples} samples");
            Ok(if worst <= 1e-9 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        CoordsCmd::Ortho { tree, seed, samples } => {
            let t = LabeledTree::parse(&tree)?;
            let n = t.leaf_count();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = 0.0f64;
            for _ in 0..samples {
                let x = random_unit(&mut rng, n);
                worst = worst.max(orthogonality_check(&t, &x)?);
            }
            println!("max off-diagonal Gram entry {worst:.3e} over {samples} samples");
            Ok(if worst <= 1e-6 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
