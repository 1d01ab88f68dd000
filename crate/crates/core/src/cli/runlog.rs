use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Log file used when neither `--log` nor `CIQL_LOG` is given.
pub const DEFAULT_LOG: &str = "ciql-runs.jsonl";
pub const LOG_ENV: &str = "CIQL_LOG";

/// One line of the run log. `payload` is a pure function of the command and
/// seed; wall-clock data lives only in `timestamp` and `runtimeMs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunRecord {
    pub timestamp: u64,
    pub tool_version: String,
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub payload: Value,
    pub outcome: String,
    pub exit_code: i32,
    pub runtime_ms: u64,
}

impl RunRecord {
    pub fn new(command: Vec<String>, seed: Option<u64>, payload: Value, outcome: &str, exit_code: i32, runtime_ms: u64) -> Self {
        Self {
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            payload,
            outcome: outcome.to_string(),
            exit_code,
            runtime_ms,
        }
    }
}

/// `--log`, else `$CIQL_LOG`, else [`DEFAULT_LOG`].
pub fn resolve_log_path(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(LOG_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_LOG))
}

/// Parsed records with their 1-based line numbers, and the numbers of lines
/// that did not parse.
pub type LogContents = (Vec<(usize, RunRecord)>, Vec<usize>);

/// Appends one JSON line. Existing content is never read, so a malformed
/// earlier line does not block the append.
pub fn append_run_log(record: &RunRecord, path: &Path) -> std::io::Result<()> {
    let mut line = serde_json::to_string(record).map_err(std::io::Error::other)?;
    line.push('\n');
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(line.as_bytes())
}

/// Parsed records with their 1-based line numbers; malformed lines are
/// returned separately.
pub fn read_run_log(path: &Path) -> std::io::Result<LogContents> {
    let text = std::fs::read_to_string(path)?;
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(r) => good.push((i + 1, r)),
            Err(_) => bad.push(i + 1),
        }
    }
    Ok((good, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn appends_in_order_past_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.jsonl");
        std::fs::write(&path, "not json\n").unwrap();
        for i in 0..2 {
            let r = RunRecord::new(vec![format!("cmd{i}")], Some(i), serde_json::json!({"i": i}), "pass", 0, 1);
            append_run_log(&r, &path).unwrap();
        }
        let (good, bad) = read_run_log(&path).unwrap();
        assert_eq!(bad, vec![1]);
        assert_eq!(good.iter().map(|(_, r)| r.seed).collect::<Vec<_>>(), vec![Some(0), Some(1)]);
        assert_eq!(good[1].0, 3);
    }

    #[test]
    fn record_field_order() {
        let r = RunRecord::new(vec![], None, Value::Null, "pass", 0, 0);
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["timestamp", "toolVersion", "command", "seed", "payload", "outcome", "exitCode", "runtimeMs"]);
    }
}
