//! Reference tables compiled into the library. Callers that want to read
//! replacement files can pass their contents to the same parsers.

pub const TABLE1: &str = include_str!("../data/table1_2005.csv");
pub const TABLE1_SUMMARY: &str = include_str!("../data/table1_2005_summary.csv");
pub const TABLE_A1: &str = include_str!("../data/tableA1.csv");
pub const TABLE_A2: &str = include_str!("../data/tableA2.csv");
pub const TABLE_A3: &str = include_str!("../data/tableA3.csv");

/// File names of the bundled tables, relative to a data directory.
pub const FILES: [(&str, &str); 5] = [
    ("table1_2005.csv", TABLE1),
    ("table1_2005_summary.csv", TABLE1_SUMMARY),
    ("tableA1.csv", TABLE_A1),
    ("tableA2.csv", TABLE_A2),
    ("tableA3.csv", TABLE_A3),
];
