//! Reading point sets and writing drawings and result payloads.

mod document;
mod ipe;
mod json;
mod parse;
mod svg;

pub use document::{Circle, Color, Document, Mark, Palette, Segment, Symbol, DEFAULT_PAGE};
pub use ipe::{write_ipe, write_ipe_with, IpeOptions};
pub use json::{write_clustering_json, write_graph_json, write_result_json, ResultPayload};
pub use parse::parse_points;
pub use svg::write_svg;

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InputFormat {
    Csv,
    Json,
    Ipe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Ipe,
    Svg,
    Json,
}

/// Lower-cased extension of `path`, if any.
fn extension(path: &str) -> Option<String> {
    let name = path.rsplit(['/', '\\']).next()?;
    let (_, ext) = name.rsplit_once('.')?;
    Some(ext.to_ascii_lowercase())
}

impl InputFormat {
    pub fn from_path(path: &str) -> Option<Self> {
        extension(path)?.parse().ok()
    }
}

impl OutputFormat {
    pub fn from_path(path: &str) -> Option<Self> {
        extension(path)?.parse().ok()
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" | "txt" => Ok(InputFormat::Csv),
            "json" => Ok(InputFormat::Json),
            "ipe" | "xml" => Ok(InputFormat::Ipe),
            _ => Err(format!("unknown input format `{s}` (expected csv, json or ipe)")),
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ipe" | "xml" => Ok(OutputFormat::Ipe),
            "svg" => Ok(OutputFormat::Svg),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown output format `{s}` (expected ipe, svg or json)")),
        }
    }
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Csv => "csv",
            InputFormat::Json => "json",
            InputFormat::Ipe => "ipe",
        })
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Ipe => "ipe",
            OutputFormat::Svg => "svg",
            OutputFormat::Json => "json",
        })
    }
}

/// Fixed six fractional digits with trailing zeros trimmed; `-0` prints as `0`.
pub fn format_coord(v: f64) -> String {
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}
