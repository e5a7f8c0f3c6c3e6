// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;
use serde_json::Value;

/// Identifies an input file by path, format and content digest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub format: &'static str,
    pub zero_based: bool,
    pub sha256: String,
}

/// Everything needed to reproduce a run. Written as `manifest.json` next to
/// the files it lists; no timestamps, so identical runs give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: InputRecord,
    pub params: Value,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &'static str, input: InputRecord, params: Value) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            input,
            params,
            outputs: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest is plain data");
        s.push('\n');
        s
    }
}
