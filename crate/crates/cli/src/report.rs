//! JSON report plumbing: every command handler fills an [`Outcome`]; main
//! wraps it into the schema-versioned [`Report`].

use std::time::Duration;

use planelab_core::gf::FieldSpec;
use serde::Serialize;

#[derive(Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub n: u32,
    pub irr: Vec<u32>,
}

impl FieldInfo {
    pub fn of(spec: &FieldSpec) -> FieldInfo {
        FieldInfo {
            p: spec.p() as u64,
            n: spec.n(),
            irr: spec.irr().to_vec(),
        }
    }
}

/// What a handler produced, before timing is attached.
pub struct Outcome {
    pub command: &'static str,
    pub field: Option<FieldInfo>,
    pub payload: serde_json::Value,
    pub human: Vec<String>,
    pub nodes: Option<u64>,
    pub exhausted: Option<bool>,
    pub seed: Option<u64>,
    /// Exit with code 1 (verification failure) after printing the report.
    pub failed: bool,
}

impl Outcome {
    pub fn bare(command: &'static str) -> Outcome {
        Outcome {
            command,
            field: None,
            payload: serde_json::Value::Null,
            human: Vec::new(),
            nodes: None,
            exhausted: None,
            seed: None,
            failed: false,
        }
    }

    pub fn with_field(command: &'static str, spec: &FieldSpec) -> Outcome {
        let mut out = Outcome::bare(command);
        out.field = Some(FieldInfo::of(spec));
        out
    }
}

/// Schema v1: `{schema, command, field, payload, nodes?, exhausted?,
/// timing_ms, seed?}`. Everything except `timing_ms` is byte-stable for a
/// fixed seed.
#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub field: Option<FieldInfo>,
    pub payload: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<bool>,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip)]
    pub human: Vec<String>,
}

impl Report {
    pub fn finish(out: Outcome, elapsed: Duration) -> Report {
        Report {
            schema: "v1",
            command: out.command,
            field: out.field,
            payload: out.payload,
            nodes: out.nodes,
            exhausted: out.exhausted,
            timing_ms: elapsed.as_millis() as u64,
            seed: out.seed,
            human: out.human,
        }
    }
}
