use std::io::Write;

use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::CliError;

/// Writes `value` as pretty JSON or `rows` as CSV, to `--out` or stdout.
pub fn emit<T: Serialize>(cfg: &RunConfig, value: &T, rows: impl FnOnce() -> Vec<Vec<String>>) -> Result<(), CliError> {
    let bytes = match cfg.format() {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => csv_bytes(&rows())?,
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io("<stdout>".into(), e))
        }
    }
}

pub fn csv_bytes(rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(row).map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    }
    w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_fields_with_commas() {
        let rows = vec![vec!["label".to_string(), "value".to_string()], vec!["a,b".to_string(), "1/2".to_string()]];
        let text = String::from_utf8(csv_bytes(&rows).unwrap()).unwrap();
        assert_eq!(text, "label,value\n\"a,b\",1/2\n");
    }
}
