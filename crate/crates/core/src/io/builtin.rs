//! The gyrogroups of orders 8, 15 and 16 used throughout the examples,
//! embedded as table files and verified on first use.

use std::sync::OnceLock;

use crate::error::{GyroError, Result};
use crate::gyrogroup::Gyrogroup;
use crate::io::table::parse_table_file;

pub const BUILTIN_NAMES: [&str; 3] = ["g8", "g15", "g16"];

const G8: &str = include_str!("../../data/g8.gyro");
const G15: &str = include_str!("../../data/g15.gyro");
const G16: &str = include_str!("../../data/g16.gyro");

pub fn builtin_text(name: &str) -> Option<&'static str> {
    match name {
        "g8" => Some(G8),
        "g15" => Some(G15),
        "g16" => Some(G16),
        _ => None,
    }
}

/// A builtin gyrogroup. The stored gyration table is cross-checked against
/// the gyrator identity during loading, so a corrupt data file panics here.
pub fn builtin(name: &str) -> Result<&'static Gyrogroup> {
    static CELLS: [OnceLock<Gyrogroup>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = BUILTIN_NAMES
        .iter()
        .position(|&n| n == name)
        .ok_or_else(|| GyroError::UnknownBuiltin(name.to_string()))?;
    Ok(CELLS[idx].get_or_init(|| {
        let text = builtin_text(name).expect("listed builtin");
        parse_table_file(text)
            .and_then(|f| f.into_gyrogroup())
            .unwrap_or_else(|e| panic!("builtin {name} is corrupt: {e}"))
    }))
}

/// Resolves `builtin:<name>` or a path to a table file.
pub fn load_source(src: &str) -> Result<Gyrogroup> {
    if let Some(name) = src.strip_prefix("builtin:") {
        return builtin(name).cloned();
    }
    let text = std::fs::read_to_string(src).map_err(|e| GyroError::Io(format!("{src}: {e}")))?;
    parse_table_file(&text)?.into_gyrogroup()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_loads() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            assert_eq!(g.name(), Some(name));
            assert_eq!(g.identity(), 0);
        }
        assert_eq!(builtin("g9"), Err(GyroError::UnknownBuiltin("g9".into())));
        assert!(load_source("/nonexistent/file.gyro").is_err());
    }
}
