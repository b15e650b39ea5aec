//! File formats and the `rydhubo` command-line tool built on [`rydhubo_core`].

pub mod cli;
pub mod dot;
pub mod error;
pub mod graph_json;
pub mod report;
pub mod schedule_json;

pub use cli::{main_with_args, write_atomic, Cli};
pub use dot::write_dot;
pub use error::{CliError, ExitStatus, FormatError};
pub use graph_json::{graph_to_json, read_graph_json, write_graph_json, GraphJson, LoadedGraph};
pub use schedule_json::{read_schedule_json, write_schedule_json, ScheduleJson};
