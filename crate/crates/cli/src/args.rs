use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pentanetz",
    version,
    about = "Contextual inversions, tile groups and their surfaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Comma-separated residues; `t` and `e` stand for 10 and 11.
    #[arg(long, global = true, default_value = "0,4,7,t,2")]
    pub segment: String,
    #[arg(long = "mod", global = true, default_value_t = 12)]
    pub modulus: u32,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Ask a running service instead of computing locally.
    #[arg(long, global = true, value_name = "URL")]
    pub server: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit of the segment under a generating set.
    Orbit {
        #[arg(long, value_enum, default_value_t = Generators::Cyclic)]
        generators: Generators,
    },
    /// Condition certificate, bases, translation subgroup and tile group.
    Group,
    /// Build a tiled surface and write it as JSON.
    Surface {
        #[arg(long, value_enum, default_value_t = Mode::Orbit)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Seeds::Single)]
        seeds: Seeds,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Counts, Euler characteristic and genus of a surface.
    Stats {
        /// Surface file; without it the surface is built from `--segment`.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Orbit)]
        mode: Mode,
    },
    /// Cayley graph of the tile group or its dihedral quotient.
    Cayley {
        #[arg(long, value_enum, default_value_t = GroupKind::Dihedral)]
        group: GroupKind,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Walks on pentachord tiles.
    Walk {
        #[command(subcommand)]
        action: WalkAction,
    },
    /// Genus formulas, either tabulated or checked on a surface.
    Formulas {
        /// Genera of the N-orbit surfaces by segment length.
        #[arg(long)]
        table1: bool,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long = "N", value_name = "N")]
        count: Option<u64>,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Orbit)]
        mode: Mode,
        /// Order of an acting group to test against the Hurwitz bound.
        #[arg(long)]
        group_order: Option<usize>,
    },
    /// The five neighbours of a pentachord tile.
    Neighbors,
    /// Walk sessions held by a running service (needs `--server`).
    Session {
        #[command(subcommand)]
        action: SessionAction,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 7423)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, value_enum, default_value_t = Mode::Cover)]
        mode: Mode,
        /// Append-only JSON-lines file that keeps sessions across restarts.
        #[arg(long, value_name = "FILE")]
        session_log: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum WalkAction {
    /// Rewrite a printed product such as `3241541451323` into normal form.
    Normalize {
        #[arg(long)]
        walk: String,
    },
    /// Apply a printed product to `--segment`.
    Eval {
        #[arg(long)]
        walk: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SessionAction {
    New,
    Show { id: String },
    Step { id: String, gen: i64 },
    Undo { id: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Generators {
    Full,
    Cyclic,
    /// Transpositions and inversions.
    Ti,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Orbit,
    Cover,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Seeds {
    Single,
    Ti,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GroupKind {
    Tile,
    Dihedral,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Dot,
    Graphml,
    Json,
}
