//! Command-line surface for the prograph library: enumeration, counting,
//! conversions along the bijections, involutions, duality, flips and
//! rotations, posets and lattice checks, statistics, figure export and
//! the self-check battery.

mod cache;
mod checks;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use prographs::bijection::{prograph_to_tableau, tableau_to_prograph};
use prographs::duality::{
    antipodal_involution, flip_edge, prograph_to_triangulation, triangulation_to_prograph,
    Triangulation,
};
use prographs::order::{build_rotation_poset_opts, tamari, Poset, Restriction};
use prographs::prograph::{enumerate_prographs, Prograph};
use prographs::rewriting::{apply_rotation, successors_via, RotationRule};
use prographs::stats::{
    a274969, cat_poly, catalan_triangle, enumerate_trees, truncated_square_sum, BinaryTree,
};
use prographs::tableaux::{count_3d_catalan, enumerate_tableaux, StandardTableau};

#[derive(Parser)]
#[command(
    name = "prograph",
    version,
    about = "Product-coproduct prographs, 3-row tableaux and bipolar triangulations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Tableaux,
    Prographs,
    Trees,
    Triangulations,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Tikz,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RestrictArg {
    None,
    NoTypeVii,
    CoproductsFirst,
}

impl From<RestrictArg> for Restriction {
    fn from(r: RestrictArg) -> Restriction {
        match r {
            RestrictArg::None => Restriction::All,
            RestrictArg::NoTypeVii => Restriction::AvoidsTypeVii,
            RestrictArg::CoproductsFirst => Restriction::CoproductsFirst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sequence {
    /// Three-dimensional Catalan numbers.
    Threed,
    /// Classical Catalan numbers.
    Catalan,
    /// The three-binomial sequence 1, 1, 4, 21, 121, ...
    A274969,
}

#[derive(Args)]
struct InputArg {
    /// Read the input object from this file instead of stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// List every object of one family at a given size, one JSON value
    /// per line.
    Enumerate {
        #[arg(long, value_enum, default_value = "prographs")]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Restrict prographs/triangulations to a subfamily.
        #[arg(long, value_enum, default_value = "none")]
        restrict: RestrictArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Cache directory (overrides PROGRAPHS_CACHE_DIR).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Emit a single element picked by this seed instead of all.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the size of a counting sequence at n.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "threed")]
        sequence: Sequence,
    },
    /// Convert between tableau, prograph and triangulation encodings.
    Convert {
        #[arg(long, value_enum)]
        to: Family,
        #[command(flatten)]
        input: InputArg,
    },
    /// Apply the half-turn involution appropriate to the input object.
    Involution {
        #[command(flatten)]
        input: InputArg,
    },
    /// Dualize: prographs become triangulations and vice versa.
    Dual {
        #[command(flatten)]
        input: InputArg,
    },
    /// Flip one edge of a triangulation.
    Flip {
        #[arg(long)]
        edge: usize,
        #[command(flatten)]
        input: InputArg,
    },
    /// Apply one rotation rule to one edge of a prograph.
    Rotate {
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        rule: String,
        /// Use the mirrored rule orientation.
        #[arg(long)]
        mirror: bool,
        #[command(flatten)]
        input: InputArg,
    },
    /// All one-step successors of a prograph under the selected rules.
    Successors {
        #[arg(long, default_value = "A,B,C,D")]
        rules: String,
        #[arg(long)]
        mirror: bool,
        #[command(flatten)]
        input: InputArg,
    },
    /// Build the rotation poset at size n.
    Poset {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "A,B,C,D")]
        rules: String,
        #[arg(long, value_enum, default_value = "none")]
        restrict: RestrictArg,
        #[arg(long)]
        mirror: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide whether the rotation poset at size n is a lattice.
    LatticeCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "A,B,C,D")]
        rules: String,
        #[arg(long, value_enum, default_value = "none")]
        restrict: RestrictArg,
        #[arg(long)]
        mirror: bool,
    },
    /// The rotation lattice on binary trees at size n.
    Tamari {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Glue a product tree and a coproduct tree into a prograph.
    Glue {
        #[command(flatten)]
        input: InputArg,
    },
    /// Refined counting statistics.
    Stats {
        #[arg(long)]
        n: usize,
        /// Print Cat_n(q).
        #[arg(long)]
        cat_poly: bool,
        /// Print the three-binomial count.
        #[arg(long)]
        a274969: bool,
        /// Print the triangle entry C(n, k); requires --k.
        #[arg(long)]
        catalan_triangle: bool,
        #[arg(long)]
        k: Option<usize>,
        /// Print the truncated square sum of Cat_n(q).
        #[arg(long)]
        truncated_square: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the full invariant battery up to a size bound.
    CheckAll {
        #[arg(long, default_value = "3")]
        max_n: usize,
    },
    /// Emit diagram sources for object galleries and posets.
    Export {
        #[arg(long, value_enum)]
        kind: ExportKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "tikz")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    /// Every prograph of size n next to its triangulation.
    Gallery,
    /// The rotation poset of size n as a diagram.
    Poset,
}

/// Domain failures exit 1, usage failures (bad flags, malformed JSON)
/// exit 2.
enum CliError {
    Domain(String),
    Usage(String),
}

impl From<prographs::Error> for CliError {
    fn from(e: prographs::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic from println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(arg: &InputArg) -> CliResult<String> {
    match &arg.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

enum Object {
    Tableau(StandardTableau),
    Prograph(Prograph),
    Triangulation(Triangulation),
}

fn parse_object(text: &str) -> CliResult<Object> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("malformed JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Usage("expected a JSON object".into()))?;
    let parse = |what: &str, e: serde_json::Error| {
        CliError::Usage(format!("malformed {what}: {e}"))
    };
    if obj.contains_key("rows") {
        let t: StandardTableau =
            serde_json::from_value(value.clone()).map_err(|e| parse("tableau", e))?;
        if !t.validate() {
            return Err(CliError::Domain(format!("not a standard tableau: {}", t.compact())));
        }
        Ok(Object::Tableau(t))
    } else if obj.contains_key("operators") {
        let p: Prograph =
            serde_json::from_value(value.clone()).map_err(|e| parse("prograph", e))?;
        let report = p.validate();
        if !report.is_valid() {
            return Err(CliError::Domain(format!(
                "invalid prograph: {} check failed",
                report.first_failure().unwrap_or("structure")
            )));
        }
        Ok(Object::Prograph(p))
    } else if obj.contains_key("triangles") || obj.contains_key("faces") {
        let tr: Triangulation =
            serde_json::from_value(value.clone()).map_err(|e| parse("triangulation", e))?;
        if !tr.is_valid() {
            return Err(CliError::Domain("invalid triangulation".into()));
        }
        Ok(Object::Triangulation(tr))
    } else {
        Err(CliError::Usage(
            "cannot tell the object kind: expected a field `rows`, `operators` or `triangles`"
                .into(),
        ))
    }
}

fn to_prograph(obj: &Object) -> CliResult<Prograph> {
    Ok(match obj {
        Object::Tableau(t) => tableau_to_prograph(t)?,
        Object::Prograph(p) => p.clone(),
        Object::Triangulation(tr) => triangulation_to_prograph(tr)?,
    })
}

fn parse_rules(s: &str) -> CliResult<Vec<RotationRule>> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim()
                .parse::<RotationRule>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn emit_json<T: serde::Serialize>(value: &T) -> CliResult<()> {
    let s = serde_json::to_string(value)
        .map_err(|e| CliError::Domain(format!("serialization: {e}")))?;
    println!("{s}");
    Ok(())
}

fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Enumerate { family, n, restrict, format, cache_dir, seed } => {
            let dir = cache::resolve_dir(cache_dir.as_deref());
            let family_key = match (family, restrict) {
                (Family::Tableaux, _) => "tableaux".to_string(),
                (Family::Trees, _) => "trees".to_string(),
                (Family::Prographs, RestrictArg::None) => "prographs".to_string(),
                (Family::Prographs, r) => format!("prographs-{}", restrict_key(r)),
                (Family::Triangulations, RestrictArg::None) => "triangulations".to_string(),
                (Family::Triangulations, r) => format!("triangulations-{}", restrict_key(r)),
            };
            let restriction: Restriction = restrict.into();
            let lines = cache::cached(dir.as_deref(), &family_key, n, || match family {
                Family::Tableaux => enumerate_tableaux(n)
                    .iter()
                    .map(|t| serde_json::to_string(t).unwrap())
                    .collect(),
                Family::Trees => enumerate_trees(n)
                    .iter()
                    .map(|t| serde_json::to_string(t).unwrap())
                    .collect(),
                Family::Prographs => enumerate_prographs(n)
                    .iter()
                    .filter(|p| admits(restriction, p))
                    .map(|p| serde_json::to_string(p).unwrap())
                    .collect(),
                Family::Triangulations => enumerate_prographs(n)
                    .iter()
                    .filter(|p| admits(restriction, p))
                    .map(|p| {
                        serde_json::to_string(&prograph_to_triangulation(p).unwrap()).unwrap()
                    })
                    .collect(),
            });
            let selected: Vec<&String> = match seed {
                Some(seed) => {
                    if lines.is_empty() {
                        return Err(CliError::Domain("nothing to sample".into()));
                    }
                    let mut state = seed | 1;
                    let idx = (xorshift(&mut state) % lines.len() as u64) as usize;
                    vec![&lines[idx]]
                }
                None => lines.iter().collect(),
            };
            for line in selected {
                match format {
                    Format::Json => println!("{line}"),
                    Format::Text => println!("{}", summarize_line(family, line)?),
                    Format::Dot | Format::Tikz => {
                        println!("{}", render_line(family, line, format)?)
                    }
                }
            }
            Ok(())
        }
        Cmd::Count { n, sequence } => {
            let value: BigUint = match sequence {
                Sequence::Threed => count_3d_catalan(n),
                Sequence::Catalan => prographs::stats::catalan(n),
                Sequence::A274969 => a274969(n),
            };
            println!("{value}");
            Ok(())
        }
        Cmd::Convert { to, input } => {
            let obj = parse_object(&read_input(&input)?)?;
            match to {
                Family::Tableaux => emit_json(&prograph_to_tableau(&to_prograph(&obj)?)?),
                Family::Prographs => emit_json(&to_prograph(&obj)?),
                Family::Triangulations => {
                    emit_json(&prograph_to_triangulation(&to_prograph(&obj)?)?)
                }
                Family::Trees => Err(CliError::Usage(
                    "trees are not an object encoding; use glue to build prographs".into(),
                )),
            }
        }
        Cmd::Involution { input } => {
            let obj = parse_object(&read_input(&input)?)?;
            match obj {
                Object::Tableau(t) => emit_json(&t.schuetzenberger()),
                Object::Prograph(p) => emit_json(&p.schuetzenberger()),
                Object::Triangulation(tr) => emit_json(&antipodal_involution(&tr)?),
            }
        }
        Cmd::Dual { input } => {
            let obj = parse_object(&read_input(&input)?)?;
            match obj {
                Object::Tableau(t) => {
                    emit_json(&prograph_to_triangulation(&tableau_to_prograph(&t)?)?)
                }
                Object::Prograph(p) => emit_json(&prograph_to_triangulation(&p)?),
                Object::Triangulation(tr) => emit_json(&triangulation_to_prograph(&tr)?),
            }
        }
        Cmd::Flip { edge, input } => {
            let obj = parse_object(&read_input(&input)?)?;
            let Object::Triangulation(tr) = obj else {
                return Err(CliError::Usage("flip expects a triangulation".into()));
            };
            emit_json(&flip_edge(&tr, edge)?)
        }
        Cmd::Rotate { edge, rule, mirror, input } => {
            let obj = parse_object(&read_input(&input)?)?;
            let p = to_prograph(&obj)?;
            let rule: RotationRule =
                rule.parse().map_err(|e: prographs::Error| CliError::Usage(e.to_string()))?;
            let q = if mirror {
                apply_rotation(&p.mirror(), edge, rule)?.mirror()
            } else {
                apply_rotation(&p, edge, rule)?
            };
            emit_json(&q)
        }
        Cmd::Successors { rules, mirror, input } => {
            let obj = parse_object(&read_input(&input)?)?;
            let p = to_prograph(&obj)?;
            let rules = parse_rules(&rules)?;
            let succ: Vec<Prograph> = if mirror {
                successors_via(&p.mirror(), &rules).iter().map(Prograph::mirror).collect()
            } else {
                successors_via(&p, &rules)
            };
            emit_json(&succ)
        }
        Cmd::Poset { n, rules, restrict, mirror, format } => {
            let poset =
                build_rotation_poset_opts(n, &parse_rules(&rules)?, restrict.into(), mirror)?;
            emit_poset(&poset, format)
        }
        Cmd::LatticeCheck { n, rules, restrict, mirror } => {
            let poset =
                build_rotation_poset_opts(n, &parse_rules(&rules)?, restrict.into(), mirror)?;
            let check = poset.lattice_check();
            println!("lattice: {}", check.is_lattice);
            if let Some(w) = check.witness {
                let kind = match w.missing {
                    prographs::order::BoundKind::Join => "join",
                    prographs::order::BoundKind::Meet => "meet",
                };
                println!(
                    "witness: no {kind} for {} and {}",
                    poset.labels[w.pair.0], poset.labels[w.pair.1]
                );
                let names: Vec<&str> =
                    w.common_bounds.iter().map(|&i| poset.labels[i].as_str()).collect();
                println!("common bounds: {}", names.join(" "));
                let names: Vec<&str> =
                    w.extremal_bounds.iter().map(|&i| poset.labels[i].as_str()).collect();
                println!("extremal bounds: {}", names.join(" "));
            }
            Ok(())
        }
        Cmd::Tamari { n, format } => emit_poset(&tamari(n), format),
        Cmd::Glue { input } => {
            #[derive(serde::Deserialize)]
            struct GlueInput {
                product_tree: BinaryTree,
                coproduct_tree: BinaryTree,
            }
            let text = read_input(&input)?;
            let g: GlueInput = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("malformed glue input: {e}")))?;
            emit_json(&prographs::order::glue_trees(&g.product_tree, &g.coproduct_tree)?)
        }
        Cmd::Stats { n, cat_poly: poly, a274969: a, catalan_triangle: tri, k, truncated_square, format } => {
            let picked =
                usize::from(poly) + usize::from(a) + usize::from(tri) + usize::from(truncated_square);
            if picked != 1 {
                return Err(CliError::Usage(
                    "pick exactly one of --cat-poly, --a274969, --catalan-triangle, --truncated-square"
                        .into(),
                ));
            }
            if poly {
                let p = cat_poly(n);
                match format {
                    Format::Json => emit_json(&p)?,
                    _ => println!("{}", p.to_text()),
                }
            } else if a {
                println!("{}", a274969(n));
            } else if tri {
                let k = k.ok_or_else(|| {
                    CliError::Usage("--catalan-triangle needs --k".into())
                })?;
                println!("{}", catalan_triangle(n, k));
            } else {
                println!("{}", truncated_square_sum(n));
            }
            Ok(())
        }
        Cmd::CheckAll { max_n } => {
            let reports = checks::run_all(max_n);
            let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
            println!("{:<width$} result", "invariant");
            println!("{} ------", "-".repeat(width));
            let mut failures = 0;
            for r in &reports {
                match &r.outcome {
                    Ok(()) => println!("{:<width$} ok", r.name),
                    Err(msg) => {
                        println!("{:<width$} FAIL: {msg}", r.name);
                        failures += 1;
                    }
                }
            }
            if failures == 0 {
                println!("all {} checks passed (max n = {max_n})", reports.len());
                Ok(())
            } else {
                Err(CliError::Domain(format!("{failures} check(s) failed")))
            }
        }
        Cmd::Export { kind, n, format } => match kind {
            ExportKind::Gallery => {
                for p in enumerate_prographs(n) {
                    let tr = prograph_to_triangulation(&p)?;
                    match format {
                        Format::Tikz => {
                            println!("% {}", prograph_to_tableau(&p)?.compact());
                            print!("{}", render::tikz_prograph(&p));
                            print!("{}", render::tikz_triangulation(&tr));
                        }
                        Format::Dot => {
                            println!("// {}", prograph_to_tableau(&p)?.compact());
                            print!("{}", render::dot_prograph(&p));
                            print!("{}", render::dot_triangulation(&tr));
                        }
                        _ => {
                            return Err(CliError::Usage(
                                "gallery export supports dot and tikz".into(),
                            ))
                        }
                    }
                }
                Ok(())
            }
            ExportKind::Poset => {
                let poset =
                    build_rotation_poset_opts(n, &RotationRule::ALL, Restriction::All, false)?;
                match format {
                    Format::Tikz => print!("{}", render::tikz_poset(&poset)),
                    Format::Dot => print!("{}", render::dot_poset(&poset)),
                    _ => {
                        return Err(CliError::Usage("poset export supports dot and tikz".into()))
                    }
                }
                Ok(())
            }
        },
    }
}

fn restrict_key(r: RestrictArg) -> &'static str {
    match r {
        RestrictArg::None => "all",
        RestrictArg::NoTypeVii => "no-type-vii",
        RestrictArg::CoproductsFirst => "coproducts-first",
    }
}

fn admits(r: Restriction, p: &Prograph) -> bool {
    match r {
        Restriction::All => true,
        Restriction::AvoidsTypeVii => p.avoids_type_vii(),
        Restriction::CoproductsFirst => p.coproducts_first().unwrap_or(false),
    }
}

fn summarize_line(family: Family, line: &str) -> CliResult<String> {
    Ok(match family {
        Family::Tableaux => {
            let t: StandardTableau = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            t.compact()
        }
        Family::Prographs => {
            let p: Prograph = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            prograph_to_tableau(&p)?.compact()
        }
        Family::Trees => {
            let t: BinaryTree = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            t.code()
        }
        Family::Triangulations => {
            let tr: Triangulation = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            prographs::duality::dual_tableau(&tr)?.compact()
        }
    })
}

fn render_line(family: Family, line: &str, format: Format) -> CliResult<String> {
    let render_p = |p: &Prograph| match format {
        Format::Dot => render::dot_prograph(p),
        _ => render::tikz_prograph(p),
    };
    Ok(match family {
        Family::Tableaux => {
            let t: StandardTableau = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            render_p(&tableau_to_prograph(&t)?)
        }
        Family::Prographs => {
            let p: Prograph = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            render_p(&p)
        }
        Family::Trees => {
            return Err(CliError::Usage("trees have no diagram export".into()));
        }
        Family::Triangulations => {
            let tr: Triangulation = serde_json::from_str(line)
                .map_err(|e| CliError::Domain(format!("cache line: {e}")))?;
            match format {
                Format::Dot => render::dot_triangulation(&tr),
                _ => render::tikz_triangulation(&tr),
            }
        }
    })
}

fn emit_poset(poset: &Poset, format: Format) -> CliResult<()> {
    match format {
        Format::Json => emit_json(poset),
        Format::Text => {
            println!("elements: {}", poset.len());
            println!("covers: {}", poset.covers.len());
            for (u, v) in &poset.covers {
                println!("{} > {}", poset.labels[*u], poset.labels[*v]);
            }
            Ok(())
        }
        Format::Dot => {
            print!("{}", render::dot_poset(poset));
            Ok(())
        }
        Format::Tikz => {
            print!("{}", render::tikz_poset(poset));
            Ok(())
        }
    }
}
