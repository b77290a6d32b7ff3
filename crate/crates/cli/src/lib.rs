//! File formats and the `biquandle` command-line tool built on
//! `biquandle-core`.

pub mod app;
pub mod formats;

pub use app::{run, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, SCHEMA};
pub use formats::{
    matrix_rows, parse_gauss_file, parse_matrix, parse_module, parse_switch, serialize_matrix, GaussEntry,
    ParseError, ParseErrorKind, SwitchSpec,
};
