use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use threeform::exterior::{random_tensor, SpaceContext, Variance};
use threeform::formfile::{change_field, read_form_file, write_form};
use threeform::verify::{SuiteOptions, SUITES};
use threeform::{catalog, enumerative, AlternatingTensor, FieldSpec};

const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "threeform", version, about = "Line congruences of alternating 3-forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks, genericity, spans, order and degeneracy data of a form.
    Analyze {
        /// A form file, or catalog:NAME.
        #[arg(long)]
        form: String,
        /// q or p:<prime>. Catalog forms default to p:1009, files to their own field.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multidegrees and degrees of X, B, Y and the fundamental loci for n = 3..n_max.
    Tables {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a verification suite; the exit code is 0 pass, 1 fail, 2 inconclusive.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a seeded random 3-form as a form file.
    RandomForm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "p:1009")]
        field: FieldSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists the catalog, or writes one entry as a form file.
    Catalog {
        name: Option<String>,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure { code: USAGE, message: e.to_string() }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => match writeln!(std::io::stdout(), "{}", text.trim_end()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure { code: 1, message: e.to_string() }),
            _ => Ok(()),
        },
    }
}

fn load_form(source: &str, field: Option<FieldSpec>) -> Result<AlternatingTensor, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let field = field.unwrap_or(FieldSpec::Prime { p: 1009 });
        return catalog::get_in(name, field).map(|(w, _)| w).map_err(usage);
    }
    let w = read_form_file(std::path::Path::new(source)).map_err(usage)?;
    match field {
        Some(f) => change_field(&w, f).map_err(usage),
        None => Ok(w),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn tables_csv(rows: &[enumerative::TableRow]) -> String {
    let join = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut s = String::from("n,multideg_x,deg_x,multideg_b,deg_b,multideg_y,deg_y,deg_f,deg_g,deg_g0,deg_g0_cap_pi\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            join(&r.multideg_x),
            r.deg_x,
            join(&r.multideg_b),
            r.deg_b,
            join(&r.multideg_y),
            r.deg_y,
            r.deg_f,
            opt(r.deg_g),
            opt(r.deg_g0),
            opt(r.deg_g0_cap_pi)
        ));
    }
    s
}

fn execute(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze { form, field, seed, samples, out } => {
            let w = load_form(&form, field)?;
            let a = threeform::analysis::analyze(&w, samples, seed).map_err(|e| Failure { code: 1, message: e.to_string() })?;
            emit(&out, &json(&a))?;
            Ok(0)
        }
        Command::Tables { n_max, format, out } => {
            let rows = enumerative::tables(n_max).map_err(usage)?;
            let text = match format {
                Format::Json => json(&rows),
                Format::Csv => tables_csv(&rows),
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::Verify { suite, seed, samples, field, out } => {
            let opts = SuiteOptions { seed, samples, field };
            let report = threeform::verify::run(&suite, &opts).map_err(|e| Failure { code: 1, message: e.to_string() })?;
            emit(&out, &report.to_json())?;
            Ok(report.status.exit_code() as u8)
        }
        Command::RandomForm { n, field, seed, out } => {
            let ctx = SpaceContext::new(n, field).map_err(usage)?;
            let w = random_tensor(ctx, 3, Variance::Form, seed).map_err(usage)?;
            emit(&out, &write_form(&w).map_err(usage)?)?;
            Ok(0)
        }
        Command::Catalog { name: None, .. } => {
            let entries = catalog::list().into_iter().map(catalog::entry).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            let text = entries.iter().map(|e| format!("{}\tn={}", e.name, e.n)).collect::<Vec<_>>().join("\n");
            emit(&None, &text)?;
            Ok(0)
        }
        Command::Catalog { name: Some(name), field, out } => {
            let (w, _) = catalog::get_in(&name, field).map_err(usage)?;
            emit(&out, &write_form(&w).map_err(usage)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
