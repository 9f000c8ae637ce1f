//! Command-line driver: validate spherical data, build and verify the
//! attached crystal, compute graded series, the basic function, and the
//! Plancherel quadrature summary, or run the full property suite.
//!
//! Exit codes: 0 on success, 1 on validation/check failure, 2 on
//! computation or usage errors.

use std::process::ExitCode;

mod checks;

const USAGE: &str = "\
usage: satake <verb> [<datum>] [options]

verbs:
  validate    check the datum against the structural axioms
  crystal     build the crystal, run the property checks, export it
  series      graded series coefficients (CSV)
  basic       the basic-function table on antidominant coweights
  plancherel  quadrature vs Parseval summary for the density
  check       full property suite

The datum is a catalog name or a JSON file path. With no datum, the
catalog names are listed.

options:
  --bound N        grading truncation bound (default 8; plancherel 12)
  --grid N         quadrature grid per axis (default 64)
  --q Q            residue cardinality parameter (default 4)
  --seed S         seed for sampled points in `check` (default 0)
  --kind K         series kind: pushforward | asymptotics | sym
  --format F       export format: json | dot | csv
  --output PATH    write the export to PATH (alias -o)
";

#[derive(Debug, Clone)]
struct Options {
    bound: Option<i64>,
    grid: usize,
    q: f64,
    seed: u64,
    kind: String,
    format: Option<String>,
    output: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bound: None,
            grid: 64,
            q: 4.0,
            seed: 0,
            kind: "pushforward".into(),
            format: None,
            output: None,
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &[String]) -> Result<ExitCode, String> {
    let Some(verb) = args.first() else {
        print!("{USAGE}");
        return Ok(ExitCode::from(2));
    };
    if verb == "--help" || verb == "-h" || verb == "help" {
        print!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }
    let (datum_ref, options) = parse_options(&args[1..])?;
    let Some(datum_ref) = datum_ref else {
        for name in satake::catalog::names() {
            println!("{name}");
        }
        return Ok(ExitCode::SUCCESS);
    };

    match verb.as_str() {
        "validate" => cmd_validate(&datum_ref),
        "crystal" => cmd_crystal(&datum_ref, &options),
        "series" => cmd_series(&datum_ref, &options),
        "basic" => cmd_basic(&datum_ref, &options),
        "plancherel" => cmd_plancherel(&datum_ref, &options),
        "check" => cmd_check(&datum_ref, &options),
        other => Err(format!("unknown verb {other}\n{USAGE}")),
    }
}

fn parse_options(args: &[String]) -> Result<(Option<String>, Options), String> {
    let mut datum = None;
    let mut options = Options::default();
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        let mut take_value = |name: &str| -> Result<String, String> {
            it.next()
                .cloned()
                .ok_or_else(|| format!("{name} requires a value"))
        };
        match arg.as_str() {
            "--bound" => {
                options.bound = Some(
                    take_value("--bound")?
                        .parse()
                        .map_err(|_| "--bound: expected an integer".to_string())?,
                )
            }
            "--grid" => {
                options.grid = take_value("--grid")?
                    .parse()
                    .map_err(|_| "--grid: expected an integer".to_string())?
            }
            "--q" => {
                options.q = take_value("--q")?
                    .parse()
                    .map_err(|_| "--q: expected a number".to_string())?
            }
            "--seed" => {
                options.seed = take_value("--seed")?
                    .parse()
                    .map_err(|_| "--seed: expected an integer".to_string())?
            }
            "--kind" => options.kind = take_value("--kind")?,
            "--format" => options.format = Some(take_value("--format")?),
            "--output" | "-o" => options.output = Some(take_value("--output")?),
            other if other.starts_with('-') => return Err(format!("unknown option {other}")),
            _ => {
                if datum.is_some() {
                    return Err(format!("unexpected argument {arg}"));
                }
                datum = Some(arg.clone());
            }
        }
    }
    Ok((datum, options))
}

fn load(datum_ref: &str) -> Result<satake::SphericalDatum, String> {
    satake::io::load_datum(datum_ref).map_err(|e| e.to_string())
}

fn write_output(path: &str, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("{path}: {e}"))
}

fn cmd_validate(datum_ref: &str) -> Result<ExitCode, String> {
    // Distinguish "invalid datum" (exit 1) from "unreadable" (error, exit 2).
    match satake::io::load_datum(datum_ref) {
        Ok(d) => {
            println!(
                "{}: valid ({} colors, rank {})",
                d.name,
                d.colors.len(),
                d.root_datum.rank
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(satake::io::IoError::Invalid(report)) => {
            println!("{datum_ref}: INVALID");
            print!("{report}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_crystal(datum_ref: &str, options: &Options) -> Result<ExitCode, String> {
    let format = match options.format.as_deref() {
        None | Some("json") => "json",
        Some("dot") => "dot",
        Some(other) => return Err(format!("crystal: incompatible format {other}")),
    };
    let d = load(datum_ref)?;
    let bound = options.bound.unwrap_or(8);
    let x = satake::xcrystal::build_xcrystal(&d, bound).map_err(|e| e.to_string())?;
    let report = satake::xcrystal::verify_properties(&x);
    print!("{report}");
    let export = match format {
        "dot" => satake::io::xcrystal_to_dot(&x),
        _ => satake::io::xcrystal_to_json_string(&x),
    };
    match &options.output {
        Some(path) => write_output(path, &export)?,
        None => print!("{export}"),
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_series(datum_ref: &str, options: &Options) -> Result<ExitCode, String> {
    if !matches!(options.kind.as_str(), "pushforward" | "asymptotics" | "sym") {
        return Err(format!("unknown series kind {}", options.kind));
    }
    if !matches!(options.format.as_deref(), None | Some("csv")) {
        return Err(format!(
            "series: incompatible format {}",
            options.format.as_deref().unwrap()
        ));
    }
    let d = load(datum_ref)?;
    let bound = options.bound.unwrap_or(8);
    let x = satake::xcrystal::build_xcrystal(&d, bound).map_err(|e| e.to_string())?;
    let series = match options.kind.as_str() {
        "pushforward" => satake::series::pushforward_series(&x, bound),
        "asymptotics" => satake::series::asymptotics_series(&x, bound),
        _ => satake::series::sym_series(&x, bound),
    }
    .map_err(|e| e.to_string())?;
    let csv = satake::series::series_to_csv(&series, &d);
    match &options.output {
        Some(path) => write_output(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_basic(datum_ref: &str, options: &Options) -> Result<ExitCode, String> {
    let d = load(datum_ref)?;
    let bound = options.bound.unwrap_or(8);
    let x = satake::xcrystal::build_xcrystal(&d, bound).map_err(|e| e.to_string())?;
    if x.truncation_warning() {
        eprintln!("warning: saturated set may be truncated at bound {bound}");
    }
    let table = satake::series::basic_function(&x, bound).map_err(|e| e.to_string())?;
    let mut csv = String::from("coweight,value\n");
    for (key, value) in &table {
        println!("{key}  ->  {value}");
        csv.push_str(&format!("\"{key}\",\"{value}\"\n"));
    }
    if let Some(path) = &options.output {
        write_output(path, &csv)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_plancherel(datum_ref: &str, options: &Options) -> Result<ExitCode, String> {
    if !matches!(options.format.as_deref(), None | Some("json") | Some("csv")) {
        return Err(format!(
            "plancherel: incompatible format {}",
            options.format.as_deref().unwrap()
        ));
    }
    let d = load(datum_ref)?;
    let bound = options.bound.unwrap_or(12);
    let x = satake::xcrystal::build_xcrystal(&d, bound).map_err(|e| e.to_string())?;
    let summary = satake::harmonic::quadrature_norm(&x, bound, options.grid, options.q)
        .map_err(|e| e.to_string())?;
    if !summary.grid_ok {
        eprintln!(
            "warning: grid {} is too coarse for exact quadrature at bound {bound}",
            options.grid
        );
    }
    print!("{}", satake::io::quadrature_summary_json(&summary));
    if let Some(path) = &options.output {
        if options.format.as_deref() == Some("csv") {
            let csv = satake::harmonic::integrand_grid_csv(&x, bound, options.grid, options.q)
                .map_err(|e| e.to_string())?;
            write_output(path, &csv)?;
        } else {
            write_output(path, &satake::io::quadrature_summary_json(&summary))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(datum_ref: &str, options: &Options) -> Result<ExitCode, String> {
    let d = load(datum_ref)?;
    let bound = options.bound.unwrap_or(8);
    let outcome = checks::run_all(&d, bound, options.grid, options.q, options.seed)?;
    Ok(if outcome {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
