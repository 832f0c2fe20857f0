//! Text formats, builtin gyrogroups and graph export.

pub mod builtin;
pub mod cycles;
pub mod export;
pub mod table;

pub use builtin::{builtin, builtin_text, load_source, BUILTIN_NAMES};
pub use cycles::parse_cycles;
pub use export::{export_graph, ExportFormat, ExportOptions};
pub use table::{parse_table_file, write_gyrogroup, write_table_file, TableFile};
