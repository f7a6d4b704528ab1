use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed OBJ at line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("vertex index {index} out of range ({count} vertices){}", line_suffix(*.line))]
    IndexOutOfRange {
        index: i64,
        count: usize,
        line: Option<usize>,
    },

    #[error("face {face} is invalid: {message}")]
    InvalidFace { face: usize, message: String },

    #[error("vertex {vertex} has a non-finite coordinate")]
    NonFinite { vertex: usize },

    #[error("mesh is empty")]
    Empty,

    #[error("not a closed manifold: edge ({u}, {v}) has {count} incident faces")]
    NotClosedManifold { u: usize, v: usize, count: usize },

    #[error("inconsistent orientation: both faces traverse edge ({u}, {v}) in the same direction")]
    Orientation { u: usize, v: usize },

    #[error("face {face} is degenerate (zero area)")]
    DegenerateFace { face: usize },

    #[error("vertex {vertex} has a degenerate normal (face normals cancel)")]
    DegenerateNormal { vertex: usize },

    #[error("vertex {vertex} has {edges} incident edges; at least 3 are required")]
    Topology { vertex: usize, edges: usize },

    #[error("non-positive volume {volume}; mesh is inside out or not closed")]
    NonPositiveVolume { volume: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("iteration {iteration}: {cause}")]
    AtIteration { iteration: usize, cause: Box<Error> },
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" at line {l}"),
        None => String::new(),
    }
}
