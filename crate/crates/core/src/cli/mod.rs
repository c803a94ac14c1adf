//! Command-line front end.
//!
//! Exit codes: 0 on success or when a verdict is reached, 1 when a check
//! fails or the verdict is undetermined, 2 on input errors. Reports go to
//! the output stream, errors to the diagnostic stream.

pub mod document;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::dga::{ChekanovDga, ElementaryAutomorphism};
use crate::obstruction::{self, RefutationPlan, Verdict, Witness};
use crate::rewrite::ideal_images;
use crate::shipped;

use document::{format_dga, parse_dga, parse_map, parse_rules};

pub const EXIT_OK: u8 = 0;
pub const EXIT_UNDETERMINED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "chekanov",
    version,
    about = "Chekanov DGAs of Legendrian knots over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the degree and d^2 = 0 axioms.
    Check { file: PathBuf },
    /// Print the DGA of the Legendrian mirror.
    Mirror {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply changes of generators `g -> g + u`, left to right.
    Subst {
        file: PathBuf,
        #[arg(required = true)]
        substitutions: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Project the differential through a map file.
    Project {
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Normal form of an expression under a rules file.
    Nf {
        #[arg(long)]
        rules: PathBuf,
        expr: String,
    },
    /// Verify a unit-product witness.
    Witness {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long, value_parser = parse_degrees, allow_hyphen_values = true)]
        degrees: (i64, i64),
    },
    /// Search for a unit-product witness.
    Search {
        file: PathBuf,
        #[arg(long, value_parser = parse_degrees, allow_hyphen_values = true)]
        degrees: (i64, i64),
        #[arg(long, default_value_t = 2)]
        maxlen: usize,
    },
    /// Witness on the first DGA, projection refutation on the second.
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = parse_degrees, allow_hyphen_values = true)]
        degrees: (i64, i64),
        #[arg(long, default_value_t = 9)]
        maxlen: usize,
        /// Map file; defaults to the bundled 6_2 projection.
        #[arg(long)]
        projection: Option<PathBuf>,
    },
    /// Run the full 6_2 versus mirror computation on the bundled data.
    Reproduce,
}

fn parse_degrees(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, found {s:?}"))?;
    let p = p.trim().parse().map_err(|_| format!("bad degree {p:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad degree {q:?}"))?;
    Ok((p, q))
}

/// Input problem, reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, InputError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| InputError(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_dga(path: &Path) -> Result<ChekanovDga, InputError> {
    let text = read_input(path)?;
    parse_dga(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_plan(path: Option<&Path>, dga: &ChekanovDga) -> Result<RefutationPlan, InputError> {
    let text = match path {
        Some(p) => read_input(p)?,
        None => shipped::K6_2_MAP.to_string(),
    };
    let name = path.map_or("bundled map".into(), |p| p.display().to_string());
    let doc = parse_map(&text).map_err(|e| InputError(format!("{name}: {e}")))?;
    doc.bind(dga.algebra())
        .map_err(|e| InputError(format!("{name}: {e}")))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), InputError> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        None => out.write_all(text.as_bytes()).map_err(InputError::from),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(InputError(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, InputError> {
    match command {
        Command::Check { file } => {
            let dga = load_dga(&file)?;
            let report = dga.check_axioms();
            writeln!(out, "{report}")?;
            Ok(if report.is_ok() {
                EXIT_OK
            } else {
                EXIT_UNDETERMINED
            })
        }
        Command::Mirror { file, output } => {
            let dga = load_dga(&file)?;
            emit(&format_dga(&dga.mirror()), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Subst {
            file,
            substitutions,
            output,
        } => {
            let dga = load_dga(&file)?;
            let mut phis = Vec::new();
            for s in &substitutions {
                let (target, replacement) = s.split_once("->").ok_or_else(|| {
                    InputError(format!("expected '<gen> -> <gen> + <poly>', found {s:?}"))
                })?;
                let target = target.trim();
                let alg = dga.algebra();
                let replacement = alg.parse(replacement)?;
                let shift = replacement + alg.gen(target)?;
                phis.push(ElementaryAutomorphism::new(alg, target, shift)?);
            }
            let result = dga.apply_automorphisms(&phis)?;
            emit(&format_dga(&result), output.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Project { file, map } => {
            let dga = load_dga(&file)?;
            let plan = load_plan(Some(&map), &dga)?;
            write!(out, "{}", render_projection(&dga, &plan)?)?;
            Ok(EXIT_OK)
        }
        Command::Nf { rules, expr } => {
            let system = parse_rules(&read_input(&rules)?)
                .map_err(|e| InputError(format!("{}: {e}", rules.display())))?;
            let p = system.algebra().parse(&expr)?;
            let nf = system.normal_form(&p)?;
            writeln!(out, "{}", system.algebra().display(&nf))?;
            Ok(EXIT_OK)
        }
        Command::Witness {
            file,
            x,
            y,
            z,
            degrees: (p, q),
        } => {
            let dga = load_dga(&file)?;
            let alg = dga.algebra();
            let witness = Witness {
                x: alg.parse(&x)?,
                y: alg.parse(&y)?,
                z: alg.parse(&z)?,
                p,
                q,
            };
            let check = obstruction::verify_witness(&dga, &witness);
            writeln!(out, "{check}")?;
            Ok(if check.is_valid() {
                EXIT_OK
            } else {
                EXIT_UNDETERMINED
            })
        }
        Command::Search {
            file,
            degrees: (p, q),
            maxlen,
        } => {
            let dga = load_dga(&file)?;
            match obstruction::search_witness(&dga, p, q, maxlen)? {
                Some(w) => {
                    writeln!(out, "{}", w.render(dga.algebra()))?;
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "no witness with words of length <= {maxlen}")?;
                    Ok(EXIT_UNDETERMINED)
                }
            }
        }
        Command::Distinguish {
            first,
            second,
            degrees: (p, q),
            maxlen,
            projection,
        } => {
            let d1 = load_dga(&first)?;
            let d2 = load_dga(&second)?;
            let plan = load_plan(projection.as_deref(), &d2)?;
            let report = obstruction::distinguish(&d1, &d2, p, q, maxlen, &plan)?;
            writeln!(out, "{}", report.render())?;
            Ok(match report.verdict {
                Verdict::Nonisomorphic => EXIT_OK,
                Verdict::Undetermined => EXIT_UNDETERMINED,
            })
        }
        Command::Reproduce => {
            let (text, ok) = reproduce()?;
            write!(out, "{text}")?;
            Ok(if ok { EXIT_OK } else { EXIT_UNDETERMINED })
        }
    }
}

fn render_projection(dga: &ChekanovDga, plan: &RefutationPlan) -> Result<String, InputError> {
    let prepared = plan.prepare(dga)?;
    let alg = prepared.algebra();
    let target = plan.projection.target();
    let mut text = String::new();
    if !plan.substitutions.is_empty() {
        writeln!(text, "substitutions:")?;
        for line in plan.substitution_lines() {
            writeln!(text, "  {line}")?;
        }
    }
    writeln!(text, "projection:")?;
    for line in plan.projection.table() {
        writeln!(text, "  {line}")?;
    }
    writeln!(text, "projected differential:")?;
    for (i, boundary) in prepared.differential().iter().enumerate() {
        let image = plan.projection.project(boundary);
        writeln!(text, "  pi(d {}) = {}", alg.name(i), target.display(&image))?;
    }
    writeln!(text, "ideal generators:")?;
    for r in ideal_images(&plan.projection, &prepared)? {
        writeln!(text, "  {}", target.display(&r))?;
    }
    Ok(text)
}

/// The complete 6_2 computation. Returns the report and whether every step
/// came out as expected.
pub fn reproduce() -> Result<(String, bool), InputError> {
    let knot = shipped::k6_2();
    let mirror = knot.mirror();
    let plan = shipped::k6_2_plan();
    let mut ok = true;
    let mut text = String::new();

    let meta = knot.metadata().expect("bundled metadata");
    writeln!(
        text,
        "== {}: smooth type {}, tb {}, maslov {}",
        meta.display_name,
        meta.smooth_type.as_deref().unwrap_or("?"),
        meta.thurston_bennequin.unwrap_or_default(),
        meta.maslov_number
    )?;
    for (label, dga) in [("K", &knot), ("M(K)", &mirror)] {
        let report = dga.check_axioms();
        ok &= report.is_ok();
        writeln!(text, "axioms for {label}: {report}")?;
    }

    writeln!(text, "\n== witnesses for 1 in H_1 . H_-1 (K)")?;
    for w in shipped::k6_2_witnesses() {
        let check = obstruction::verify_witness(&knot, &w);
        ok &= check.is_valid();
        let alg = knot.algebra();
        writeln!(
            text,
            "x = {}, y = {}, z = {}: {check}",
            alg.display(&w.x),
            alg.display(&w.y),
            alg.display(&w.z)
        )?;
        let reversed = w.reversed();
        let check = obstruction::verify_witness(&mirror, &reversed);
        ok &= check.is_valid();
        writeln!(
            text,
            "  reversed on M(K) in degrees ({},{}): x = {}, y = {}, z = {}: {check}",
            reversed.p,
            reversed.q,
            alg.display(&reversed.x),
            alg.display(&reversed.y),
            alg.display(&reversed.z)
        )?;
    }

    writeln!(text, "\n== change of generators and projection (K)")?;
    let substituted = plan.prepare(&knot)?;
    write!(text, "{}", format_dga(&substituted))?;
    write!(text, "{}", render_projection(&knot, &plan)?)?;

    writeln!(text, "\n== refutation of 1 in H_-1 . H_1 (K)")?;
    let direct = obstruction::refute_unit_product(&substituted, -1, 1, &plan.projection, 9)?;
    ok &= direct.is_refuted();
    writeln!(text, "{}", direct.render())?;

    writeln!(text, "\n== K versus M(K)")?;
    let report = obstruction::distinguish(&knot, &mirror, 1, -1, 9, &plan)?;
    ok &= report.verdict == Verdict::Nonisomorphic;
    writeln!(text, "{}", report.render())?;
    Ok((text, ok))
}
