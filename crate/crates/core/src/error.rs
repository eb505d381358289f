use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid colored graph: {0}")]
    InvalidGraph(#[from] Violation),
    #[error("invalid constellation: {0}")]
    InvalidConstellation(String),
    #[error("invalid kernel diagram: {0}")]
    InvalidKernel(String),
    #[error("color {color} out of range for q = {q}")]
    ColorOutOfRange { color: usize, q: usize },
    #[error("({origin}, {end}) is not a color-0 edge")]
    NotColor0Edge { origin: u32, end: u32 },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("q = {q} is not supported here (need q >= {min})")]
    UnsupportedQ { q: usize, min: usize },
    #[error("order {delta} is not supported (maximum {max})")]
    UnsupportedDelta { delta: usize, max: usize },
    #[error("size limit exceeded: {what} needs {work} steps, limit is {limit}")]
    SizeLimit { what: String, work: f64, limit: f64 },
    #[error("no objects of order {delta} with n = {n}")]
    EmptySupport { delta: usize, n: usize },
    #[error("series error: {0}")]
    Series(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
