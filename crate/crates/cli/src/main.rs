mod commands;
mod serve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Exit;

#[derive(Debug, Parser)]
#[command(
    name = "vreud",
    version,
    about = "Build, check and simulate interactive VR scene packages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a package, including its assets.
    Validate {
        /// Package file, or a directory containing `scene.json`.
        package: PathBuf,
    },
    /// Generate `index.html` and copy the referenced assets.
    Build {
        package: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, env = "VREUD_RUNTIME_URL")]
        runtime_url: Option<String>,
        /// Inline assets as data URIs; no `assets/` directory is written.
        #[arg(long)]
        embed_assets: bool,
        #[arg(long, default_value = "VR Scene")]
        title: String,
    },
    /// Run an event script and print the final state digest.
    Simulate {
        package: PathBuf,
        /// Event script; an empty script when omitted.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Where to write the trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Apply an interactivity pattern and write the expanded package.
    Expand {
        package: PathBuf,
        #[arg(long)]
        pattern: String,
        /// Slot binding as `slot=entityId`. Repeatable.
        #[arg(long = "bind", value_name = "SLOT=ID")]
        bindings: Vec<String>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve a built scene directory read-only over HTTP.
    Serve {
        dir: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
    /// Create a starter package.
    Init { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { package } => commands::validate_package(&package),
        Command::Build {
            package,
            out,
            runtime_url,
            embed_assets,
            title,
        } => commands::build(&package, &out, runtime_url, embed_assets, title),
        Command::Simulate {
            package,
            script,
            trace,
        } => commands::simulate(&package, script.as_deref(), trace.as_deref()),
        Command::Expand {
            package,
            pattern,
            bindings,
            out,
        } => commands::expand(&package, &pattern, &bindings, out.as_deref()),
        Command::Serve { dir, port, host } => serve::serve(&dir, &host, port),
        Command::Init { path } => commands::init(&path),
    };
    let exit = match result {
        Ok(()) => Exit::Ok,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            failure.exit
        }
    };
    ExitCode::from(exit as u8)
}
