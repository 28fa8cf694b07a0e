//! Run manifest written next to every artifact.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Arguments after the program name, without the output directory.
    pub parameters: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub artifacts: BTreeMap<String, String>,
    pub timestamp: String,
    pub result: ResultSummary,
}

#[derive(Serialize)]
pub struct ResultSummary {
    pub summary: String,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `SOURCE_DATE_EPOCH` if set and numeric, the clock otherwise.
pub fn timestamp() -> String {
    let t = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(|secs| UNIX_EPOCH + Duration::from_secs(secs))
        .unwrap_or_else(SystemTime::now);
    humantime::format_rfc3339_seconds(t).to_string()
}

fn parameters(argv: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for arg in argv.iter().skip(1) {
        let arg = arg.to_string_lossy();
        if skip {
            skip = false;
            continue;
        }
        if arg == "--out" {
            skip = true;
            continue;
        }
        if arg.starts_with("--out=") {
            continue;
        }
        out.push(arg.into_owned());
    }
    out
}

impl Manifest {
    pub fn new(
        command: &str,
        argv: &[OsString],
        inputs: &BTreeMap<String, String>,
        artifacts: &[(String, String)],
        summary: &str,
        exit_code: i32,
    ) -> Manifest {
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            parameters: parameters(argv),
            inputs: inputs.clone(),
            artifacts: artifacts.iter().map(|(f, text)| (f.clone(), sha256_hex(text.as_bytes()))).collect(),
            timestamp: timestamp(),
            result: ResultSummary { summary: summary.to_string(), exit_code },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_dir_is_not_a_parameter() {
        let argv: Vec<OsString> = ["rowlab", "--out", "/tmp/x", "orbits", "--out=y", "--poset", "rect:2,2"].iter().map(OsString::from).collect();
        assert_eq!(parameters(&argv), ["orbits", "--poset", "rect:2,2"]);
    }

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
