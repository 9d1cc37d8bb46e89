use std::panic;
use std::process::ExitCode;

use clap::Parser;
use gnorm_cli::error::{EXIT_LIMIT, EXIT_VALIDATION};
use gnorm_cli::{execute, Cli};
use gnorm_core::{set_spair_limit, SpairLimitExceeded};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("GNORM_MAX_SPAIRS") {
        match v.trim().parse::<u64>() {
            Ok(n) => set_spair_limit(n),
            Err(_) => {
                eprintln!("gnorm: GNORM_MAX_SPAIRS must be a nonnegative integer, got {v:?}");
                return ExitCode::from(EXIT_VALIDATION as u8);
            }
        }
    }
    let hook = panic::take_hook();
    panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<SpairLimitExceeded>().is_none() {
            hook(info);
        }
    }));
    let outcome = match panic::catch_unwind(|| execute(&cli)) {
        Ok(o) => o,
        Err(payload) => match payload.downcast_ref::<SpairLimitExceeded>() {
            Some(l) => {
                eprintln!("gnorm: limit: more than {} S-pairs reduced (GNORM_MAX_SPAIRS)", l.limit);
                return ExitCode::from(EXIT_LIMIT as u8);
            }
            None => panic::resume_unwind(payload),
        },
    };
    if let Some(r) = &outcome.report {
        if cli.text {
            print!("{}", r.to_text());
        } else {
            println!("{}", r.to_json());
        }
    }
    if let Some(e) = &outcome.error {
        eprintln!("gnorm: {}: {e}", e.kind());
    }
    ExitCode::from(outcome.exit_code() as u8)
}
