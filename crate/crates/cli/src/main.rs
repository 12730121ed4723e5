mod args;
mod commands;
mod grid;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;
use racah_core::{build_r, ParamTriple};

use args::{Cli, Command, Format};
use commands::{Outcome, UsageError};

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Construct { params, basis } => {
            commands::construct(&params.triple(), params.d, *basis)
        }
        Command::Verify {
            a,
            b,
            c,
            d,
            basis,
            input,
        } => {
            let rep = match input {
                Some(path) => commands::load_module(path)?,
                None => {
                    // clap guarantees all four are present without --input
                    let p = ParamTriple::new(
                        a.clone().unwrap(),
                        b.clone().unwrap(),
                        c.clone().unwrap(),
                    );
                    build_r(&p, d.unwrap(), *basis)
                }
            };
            commands::verify(&rep)
        }
        Command::Analyze { params } => commands::analyze_point(&params.triple(), params.d),
        Command::Sweep { grid } => commands::sweep(grid),
        Command::Intertwine {
            params,
            a2,
            b2,
            c2,
            basis,
            basis2,
        } => {
            let m1 = build_r(&params.triple(), params.d, *basis);
            let p2 = ParamTriple::new(a2.clone(), b2.clone(), c2.clone());
            let m2 = build_r(&p2, params.d, *basis2);
            commands::intertwine(&m1, &m2)
        }
        Command::Reduce { expr } => commands::reduce(expr),
        Command::Eval {
            expr,
            params,
            basis,
            central_matrices,
        } => commands::eval(
            expr,
            &build_r(&params.triple(), params.d, *basis),
            *central_matrices,
        ),
        Command::Verma {
            a,
            b,
            c,
            nu,
            d,
            cutoff,
        } => commands::verma(
            &ParamTriple::new(a.clone(), b.clone(), c.clone()),
            nu,
            *d,
            *cutoff,
        ),
        Command::Golden { negate_varphi } => commands::golden::run(*negate_varphi),
        Command::Identify { input } => commands::identify(&commands::load_module(input)?),
        Command::Diagonalizable {
            params,
            generator,
            oracle,
        } => commands::diagonalizable(&params.triple(), params.d, *generator, *oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.downcast_ref::<UsageError>().is_some() {
                2
            } else {
                1
            };
            return ExitCode::from(code);
        }
    };
    let default = match cli.command {
        Command::Reduce { .. } => Format::Text,
        _ => Format::Json,
    };
    let mut body = match cli.format.unwrap_or(default) {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("documents serialize"),
        Format::Text => outcome.text,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{body}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
