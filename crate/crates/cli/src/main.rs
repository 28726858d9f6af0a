mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "wordflow", version, about = "Sentence meanings from word meanings via pregroup reductions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Lexicon file (word, type, source; TAB-separated)
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Vector space model for `vector`-sourced lexicon entries
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Dimension overrides, e.g. `n:2,s:2`
    #[arg(long, global = true)]
    pub dims: Option<String>,
    /// Emit one JSON object per result instead of text
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and inspect vector space models
    Space {
        #[command(subcommand)]
        command: SpaceCommand,
    },
    /// Check a sentence's grammar and show its reduction diagram
    Parse {
        #[arg(required = true)]
        sentence: Vec<String>,
    },
    /// Compute a sentence's meaning vector
    Meaning {
        #[arg(required = true)]
        sentence: Vec<String>,
    },
    /// Cosine similarity between two sentence meanings
    Compare { first: String, second: String },
    /// Built-in demonstrations
    Demo {
        #[command(subcommand)]
        command: DemoCommand,
    },
}

#[derive(Subcommand, Debug)]
enum SpaceCommand {
    /// Count co-occurrences in a corpus and write a model file
    Build {
        /// Number of basis (context) words
        #[arg(long, short)]
        k: usize,
        /// Co-occurrence window, in tokens on each side
        #[arg(long, default_value_t = wordflow::distributional::DEFAULT_WINDOW)]
        window: usize,
        /// Output model path
        #[arg(long, short)]
        out: PathBuf,
        /// Corpus files; blank lines separate documents
        #[arg(required = true)]
        corpus: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCommand {
    /// Check the snake identity (cap ⊗ Id)(Id ⊗ cup) = Id
    Snake {
        #[arg(default_value_t = 2)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = &cli.common;
    let result = match &cli.command {
        Command::Space {
            command:
                SpaceCommand::Build {
                    k,
                    window,
                    out,
                    corpus,
                },
        } => commands::space_build(common, corpus, *k, *window, out),
        Command::Parse { sentence } => commands::parse(common, &sentence.join(" ")),
        Command::Meaning { sentence } => commands::meaning(common, &sentence.join(" ")),
        Command::Compare { first, second } => commands::compare(common, first, second),
        Command::Demo {
            command: DemoCommand::Snake { dim },
        } => commands::demo_snake(common, *dim),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
