//! `mobius-tree`: conversions between node encodings, and a file-backed tree.
//!
//! Usage:
//!   mobius-tree encode (--path P | --ratio N/D | --matrix a,b,c,d)
//!   mobius-tree decode --interval "(lo, hi]"
//!   mobius-tree init FILE
//!   mobius-tree add FILE --parent P [--index N] --payload S
//!   mobius-tree mv FILE --node P --to Q [--index N]
//!   mobius-tree rm FILE --node P
//!   mobius-tree ls FILE [--node P]
//!   mobius-tree tree FILE
//!   mobius-tree ancestors FILE --node P
//!   mobius-tree descendants FILE --node P
//!   mobius-tree stats FILE
//!
//! Exit codes: 0 ok, 2 usage, 3 invalid encoding, 4 store error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use crate::commands::CliError;

#[derive(Parser)]
#[command(
    name = "mobius-tree",
    version,
    about = "Nested-interval tree encoding toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every representation of a node.
    #[command(group(ArgGroup::new("input").required(true).args(["path", "ratio", "matrix"])))]
    Encode {
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Recover the node encoded by an interval.
    Decode {
        #[arg(long)]
        interval: String,
    },
    /// Create an empty store file.
    Init { file: PathBuf },
    /// Insert a child node.
    Add {
        file: PathBuf,
        #[arg(long)]
        parent: String,
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        payload: String,
    },
    /// Move a subtree under a new parent.
    Mv {
        file: PathBuf,
        #[arg(long)]
        node: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        index: Option<String>,
    },
    /// Delete a subtree.
    Rm {
        file: PathBuf,
        #[arg(long)]
        node: String,
    },
    /// List the direct children of a node.
    Ls {
        file: PathBuf,
        #[arg(long, default_value = "root")]
        node: String,
    },
    /// Print the whole store as an indented tree.
    Tree { file: PathBuf },
    /// List a node's ancestors, top level first.
    Ancestors {
        file: PathBuf,
        #[arg(long)]
        node: String,
    },
    /// List every node below a node.
    Descendants {
        file: PathBuf,
        #[arg(long)]
        node: String,
    },
    /// Print store statistics.
    Stats { file: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Encode {
            path,
            ratio,
            matrix,
        } => commands::encode(path.as_deref(), ratio.as_deref(), matrix.as_deref()),
        Command::Decode { interval } => commands::decode(&interval),
        Command::Init { file } => commands::init(&file),
        Command::Add {
            file,
            parent,
            index,
            payload,
        } => commands::add(&file, &parent, index.as_deref(), &payload),
        Command::Mv {
            file,
            node,
            to,
            index,
        } => commands::mv(&file, &node, &to, index.as_deref()),
        Command::Rm { file, node } => commands::rm(&file, &node),
        Command::Ls { file, node } => commands::ls(&file, &node),
        Command::Tree { file } => commands::tree(&file),
        Command::Ancestors { file, node } => commands::ancestors(&file, &node),
        Command::Descendants { file, node } => commands::descendants(&file, &node),
        Command::Stats { file } => commands::stats(&file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
