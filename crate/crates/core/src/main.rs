use std::process::ExitCode;

fn main() -> ExitCode {
    match minkowski_lattice::cli::run(std::env::args_os()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match e.downcast_ref::<clap::Error>() {
                Some(usage) => eprint!("{usage}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::FAILURE
        }
    }
}
