use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::CliResult;

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            // a closed downstream pipe (`| head`) is not an error
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

/// Compact single-line JSON echo of a command's arguments.
pub fn config_echo<T: Serialize>(cmd: &str, args: &T) -> String {
    let mut v = serde_json::to_value(args).unwrap_or(serde_json::Value::Null);
    if let serde_json::Value::Object(map) = &mut v {
        map.insert("command".into(), serde_json::Value::String(cmd.into()));
    }
    v.to_string()
}

/// JSON envelope shared by every JSON output.
pub fn json_envelope<T: Serialize, D: Serialize>(cmd: &str, args: &T, data: D) -> String {
    let config: serde_json::Value =
        serde_json::from_str(&config_echo(cmd, args)).unwrap_or_default();
    let mut s = serde_json::to_string_pretty(&serde_json::json!({
        "version": gzernike::VERSION,
        "config": config,
        "data": data,
    }))
    .expect("serializable output");
    s.push('\n');
    s
}
