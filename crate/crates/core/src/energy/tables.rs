use crate::data;
use crate::error::{Error, Result};

pub const BUDGET_COLUMNS: [&str; 5] = ["quantity", "value", "unit", "scope", "source_tag"];

#[derive(Debug, Clone, PartialEq)]
pub struct BudgetEntry {
    pub quantity: String,
    /// Absent for cells marked "not used".
    pub value: Option<f64>,
    pub unit: String,
    pub scope: String,
    pub source_tag: String,
}

impl BudgetEntry {
    /// Value in watts for power entries; `None` for percentages or absent cells.
    pub fn watts(&self) -> Option<f64> {
        let scale = match self.unit.as_str() {
            "W" => 1.0,
            "GW" => 1e9,
            "TW" => 1e12,
            _ => return None,
        };
        self.value.map(|v| v * scale)
    }

    /// Percentages as fractions; `None` for other units.
    pub fn fraction(&self) -> Option<f64> {
        (self.unit == "%").then_some(self.value? / 100.0)
    }
}

/// Earth surface energy budget (A1), global consumption by source (A2) and
/// electricity generation by source (A3).
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetTables {
    pub a1: Vec<BudgetEntry>,
    pub a2: Vec<BudgetEntry>,
    pub a3: Vec<BudgetEntry>,
}

pub fn parse_budget_csv(text: &str) -> Result<Vec<BudgetEntry>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Parse {
        row: 0,
        message: e.to_string(),
    })?;
    if headers.iter().ne(BUDGET_COLUMNS.iter().copied()) {
        return Err(Error::Parse {
            row: 0,
            message: format!("header must be `{}`", BUDGET_COLUMNS.join(",")),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        let row = row.map_err(|e| Error::Parse {
            row: row_no,
            message: e.to_string(),
        })?;
        let raw = &row[1];
        let value = if raw.is_empty() {
            None
        } else {
            Some(raw.parse::<f64>().map_err(|_| Error::Parse {
                row: row_no,
                message: format!("`value` is not a number: `{raw}`"),
            })?)
        };
        out.push(BudgetEntry {
            quantity: row[0].to_string(),
            value,
            unit: row[2].to_string(),
            scope: row[3].to_string(),
            source_tag: row[4].to_string(),
        });
    }
    Ok(out)
}

impl BudgetTables {
    pub fn parse(a1: &str, a2: &str, a3: &str) -> Result<Self> {
        Ok(BudgetTables {
            a1: parse_budget_csv(a1)?,
            a2: parse_budget_csv(a2)?,
            a3: parse_budget_csv(a3)?,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&'static str, &BudgetEntry)> {
        let tag = |name: &'static str| move |e| (name, e);
        self.a1
            .iter()
            .map(tag("A1"))
            .chain(self.a2.iter().map(tag("A2")))
            .chain(self.a3.iter().map(tag("A3")))
    }

    pub fn a1_entry(&self, quantity: &str, scope: &str) -> Option<&BudgetEntry> {
        find(&self.a1, quantity, scope)
    }

    pub fn a2_entry(&self, quantity: &str, region: &str) -> Option<&BudgetEntry> {
        find(&self.a2, quantity, region)
    }

    pub fn a3_entry(&self, quantity: &str, region: &str) -> Option<&BudgetEntry> {
        find(&self.a3, quantity, region)
    }
}

fn find<'a>(entries: &'a [BudgetEntry], quantity: &str, scope: &str) -> Option<&'a BudgetEntry> {
    entries
        .iter()
        .find(|e| e.quantity == quantity && e.scope == scope)
}

/// The bundled tables.
pub fn budget_table() -> BudgetTables {
    BudgetTables::parse(data::TABLE_A1, data::TABLE_A2, data::TABLE_A3)
        .expect("bundled budget tables are well-formed")
}
