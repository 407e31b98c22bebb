//! Fully dynamic strongly connected components of planar digraphs.

pub mod certificates;
pub mod connectivity;
pub mod dynsc;
pub mod dynscc;
pub mod error;
pub mod graph;

pub use error::{Error, Result};
pub mod oracle;
pub mod pathnet;
pub mod piece;
pub mod rdivision;
pub mod runner;
pub mod ssr;
pub mod gen;
pub mod trace;
