//! Loader for tabulated shape files: two whitespace- or comma-separated
//! columns `(x, w)`, ascending `x`, first row at `x = 0`; `#` comments and
//! blank lines allowed.

use std::path::Path;

use partialwave::TabulatedShape;

use crate::CliError;

pub fn load(path: &Path) -> Result<TabulatedShape, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
        let parse = |field: Option<&str>| -> Result<f64, CliError> {
            field
                .ok_or_else(|| {
                    CliError::config(format!("{}:{}: expected two columns", path.display(), lineno + 1))
                })?
                .parse::<f64>()
                .map_err(|e| {
                    CliError::config(format!("{}:{}: {e}", path.display(), lineno + 1))
                })
        };
        xs.push(parse(fields.next())?);
        ws.push(parse(fields.next())?);
    }
    Ok(TabulatedShape::new(xs, ws)?)
}
