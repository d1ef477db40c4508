//! Report envelope shared by every command.

use serde::Serialize;
use serde_json::Value;

use crate::cli::Opts;
use crate::suites::Suite;

pub const TOOL: &str = "bincurve";

/// What was asked for. Thread count, output path and cache switches are
/// left out so that reports do not depend on them.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(flatten)]
    pub opts: Opts,
    /// The curve itself, whether read from a file or sampled.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_json: Option<Value>,
}

impl RunConfig {
    pub fn new(command: &str, suite: Option<Suite>, opts: Opts, curve_json: Option<&str>) -> Self {
        let curve_json = curve_json.map(|s| serde_json::from_str(s).expect("curve JSON"));
        Self { command: command.into(), suite, opts, curve_json }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub statements: &'a [&'a str],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    pub result: Value,
}

impl<'a> Report<'a> {
    pub fn new(config: &'a RunConfig, statements: &'a [&'a str], pass: Option<bool>, result: Value) -> Self {
        Self { tool: TOOL, version: bincurve_core::VERSION, config, statements, pass, result }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report JSON");
        s.push('\n');
        s
    }
}
