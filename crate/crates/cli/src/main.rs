mod args;
mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use psrange::Error;

use args::Cli;
use output::RunManifest;

fn fail(message: &str, code: u8) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn exit_code(err: &Error) -> u8 {
    if err.is_validation() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2));
        }
    };
    let out = cli.command.output().clone();

    let pool = match out.threads {
        Some(0) => return fail("--threads must be positive", 2),
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => return fail(&e.to_string(), 1),
    };

    let started = Instant::now();
    let run = match pool.install(|| commands::run(&cli.command)) {
        Ok(run) => run,
        Err(e) => return fail(&e.to_string(), exit_code(&e)),
    };
    let manifest = RunManifest {
        subcommand: cli.command.name().to_string(),
        params: run.params.clone(),
        seed: run.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        duration_secs: started.elapsed().as_secs_f64(),
    };
    match output::emit(&out, &manifest, &run) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e.to_string(), 1),
    }
}
