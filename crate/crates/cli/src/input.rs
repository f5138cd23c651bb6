use std::io::Read;
use std::path::Path;

use degroot::{Error, FiniteTopology, SymbolicTopology};

/// A space given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Finite(FiniteTopology),
    Symbolic(SymbolicTopology),
}

/// Accepts a path to a topology JSON file, `-` for stdin, inline JSON, or a
/// symbolic token such as `cofinite@aleph1`.
pub fn parse_space(arg: &str) -> Result<Space, Error> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        buf
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("reading {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_text(&text)
}

fn parse_text(text: &str) -> Result<Space, Error> {
    let text = text.trim();
    if text.starts_with('{') {
        FiniteTopology::from_json_str(text).map(Space::Finite)
    } else {
        text.parse().map(Space::Symbolic)
    }
}
