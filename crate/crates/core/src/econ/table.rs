//! Country-level energy and employment table: ingestion, validation,
//! aggregation and the sector groupings derived from it.

use std::io::{Read, Write};

use crate::error::{Error, Result};

pub const TABLE_COLUMNS: [&str; 13] = [
    "name",
    "energy_consumption_1e15btu",
    "energy_production_1e15btu",
    "population_1e3",
    "working_1e3",
    "food_pct",
    "mining_pct",
    "manuf_pct",
    "electr_pct",
    "constr_pct",
    "trade_pct",
    "transp_pct",
    "other_pct",
];

/// Half of mining and quarrying employment is assumed to produce energy.
pub const DEFAULT_ENERGY_FRACTION_OF_MINING: f64 = 0.5;
/// Splits the low-food-employment cluster from the high one.
pub const DEFAULT_FOOD_THRESHOLD: f64 = 15.0;

const SHARE_SUM_TOLERANCE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Food,
    Mining,
    Manufacturing,
    Electricity,
    Construction,
    Trade,
    Transport,
    Other,
}

impl Sector {
    pub const ALL: [Sector; 8] = [
        Sector::Food,
        Sector::Mining,
        Sector::Manufacturing,
        Sector::Electricity,
        Sector::Construction,
        Sector::Trade,
        Sector::Transport,
        Sector::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Sector::Food => "food",
            Sector::Mining => "mining",
            Sector::Manufacturing => "manuf",
            Sector::Electricity => "electr",
            Sector::Construction => "constr",
            Sector::Trade => "trade",
            Sector::Transport => "transp",
            Sector::Other => "other",
        }
    }
}

/// Employment by economic activity, percent of total employment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorShares(pub [f64; 8]);

impl SectorShares {
    pub fn get(&self, sector: Sector) -> f64 {
        self.0[sector as usize]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountryRecord {
    pub name: String,
    /// 10^15 btu per year.
    pub energy_consumption: f64,
    /// 10^15 btu per year.
    pub energy_production: f64,
    /// Thousands of people.
    pub population: f64,
    /// Thousands of working people; absent when the source has no figure.
    pub working: Option<f64>,
    pub sector_shares: Option<SectorShares>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregates {
    pub countries: usize,
    pub total_consumption: f64,
    pub total_production: f64,
    pub total_population: f64,
    /// Sum of working population over rows that report both employment and shares.
    pub total_working: f64,
    /// Employment-weighted mean of each sector share, percent.
    pub weighted_shares: Option<SectorShares>,
}

impl Aggregates {
    pub fn weighted_share(&self, sector: Sector) -> Option<f64> {
        self.weighted_shares.map(|s| s.get(sector))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestReport {
    pub records: Vec<CountryRecord>,
    pub aggregates: Aggregates,
    /// Non-fatal validation findings, each naming its row.
    pub warnings: Vec<String>,
}

pub fn ingest_str(text: &str) -> Result<IngestReport> {
    ingest_table(text.as_bytes())
}

/// Reads a table in the [`TABLE_COLUMNS`] schema. Rows are numbered from 1
/// for the first data row.
pub fn ingest_table<R: Read>(reader: R) -> Result<IngestReport> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse {
            row: 0,
            message: e.to_string(),
        })?
        .clone();
    if headers.iter().ne(TABLE_COLUMNS.iter().copied()) {
        return Err(Error::Parse {
            row: 0,
            message: format!(
                "header must be `{}`, got `{}`",
                TABLE_COLUMNS.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        let row = row.map_err(|e| Error::Parse {
            row: row_no,
            message: e.to_string(),
        })?;
        let record = parse_row(&row, row_no)?;
        if let Some(shares) = record.sector_shares {
            let sum = shares.sum();
            if (sum - 100.0).abs() > SHARE_SUM_TOLERANCE {
                warnings.push(format!(
                    "row {row_no} ({}): sector shares sum to {sum}, expected 100 +/- {SHARE_SUM_TOLERANCE}",
                    record.name
                ));
            }
        }
        records.push(record);
    }
    let aggregates = aggregate(&records);
    Ok(IngestReport {
        records,
        aggregates,
        warnings,
    })
}

fn parse_row(row: &csv::StringRecord, row_no: usize) -> Result<CountryRecord> {
    let err = |message: String| Error::Parse {
        row: row_no,
        message,
    };
    let cell = |idx: usize| -> Result<Option<f64>> {
        let raw = row.get(idx).unwrap_or("");
        if raw.is_empty() {
            return Ok(None);
        }
        let v: f64 = raw
            .parse()
            .map_err(|_| err(format!("`{}` is not a number: `{raw}`", TABLE_COLUMNS[idx])))?;
        if !v.is_finite() || v < 0.0 {
            return Err(err(format!(
                "`{}` must be finite and >= 0, got {v}",
                TABLE_COLUMNS[idx]
            )));
        }
        Ok(Some(v))
    };
    let required = |idx: usize| -> Result<f64> {
        cell(idx)?.ok_or_else(|| err(format!("`{}` is required", TABLE_COLUMNS[idx])))
    };

    if row.len() != TABLE_COLUMNS.len() {
        return Err(err(format!(
            "expected {} fields, found {}",
            TABLE_COLUMNS.len(),
            row.len()
        )));
    }
    let name = row.get(0).unwrap_or("").to_string();
    if name.is_empty() {
        return Err(err("`name` is required".into()));
    }
    let energy_consumption = required(1)?;
    let energy_production = required(2)?;
    let population = required(3)?;
    let working = cell(4)?;
    if let Some(w) = working {
        if w > population {
            return Err(err(format!(
                "working population {w} exceeds population {population}"
            )));
        }
    }

    let cells = (5..13).map(cell).collect::<Result<Vec<_>>>()?;
    let sector_shares = if cells.iter().all(Option::is_none) {
        None
    } else {
        let mut shares = [0.0; 8];
        for (k, c) in cells.iter().enumerate() {
            let v = c.ok_or_else(|| {
                err(format!(
                    "`{}` missing while other shares are present",
                    TABLE_COLUMNS[5 + k]
                ))
            })?;
            if v > 100.0 {
                return Err(err(format!("`{}` exceeds 100: {v}", TABLE_COLUMNS[5 + k])));
            }
            shares[k] = v;
        }
        Some(SectorShares(shares))
    };

    Ok(CountryRecord {
        name,
        energy_consumption,
        energy_production,
        population,
        working,
        sector_shares,
    })
}

/// Compensated (Neumaier) sum, so column totals land on the correctly
/// rounded value of the transcribed cells.
fn accurate_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if f64::abs(sum) >= f64::abs(v) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn aggregate(records: &[CountryRecord]) -> Aggregates {
    let weighted: Vec<(f64, SectorShares)> = records
        .iter()
        .filter_map(|r| Some((r.working?, r.sector_shares?)))
        .collect();
    let total_working = accurate_sum(weighted.iter().map(|(w, _)| *w));
    let weighted_shares = (total_working > 0.0).then(|| {
        let mut out = [0.0; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = accurate_sum(weighted.iter().map(|(w, s)| w * s.0[k])) / total_working;
        }
        SectorShares(out)
    });
    Aggregates {
        countries: records.len(),
        total_consumption: accurate_sum(records.iter().map(|r| r.energy_consumption)),
        total_production: accurate_sum(records.iter().map(|r| r.energy_production)),
        total_population: accurate_sum(records.iter().map(|r| r.population)),
        total_working,
        weighted_shares,
    }
}

/// Writes records back in the ingestion schema. Numbers use the shortest
/// representation that parses back to the same `f64`; absent cells are empty.
pub fn write_table<W: Write>(records: &[CountryRecord], writer: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Parse {
        row: 0,
        message: e.to_string(),
    };
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    wtr.write_record(TABLE_COLUMNS).map_err(io_err)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        let mut fields = vec![
            r.name.clone(),
            r.energy_consumption.to_string(),
            r.energy_production.to_string(),
            r.population.to_string(),
            opt(r.working),
        ];
        for k in 0..8 {
            fields.push(opt(r.sector_shares.map(|s| s.0[k])));
        }
        wtr.write_record(&fields).map_err(io_err)?;
    }
    wtr.flush().map_err(|e| Error::Parse {
        row: 0,
        message: e.to_string(),
    })?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySplit {
    /// Workers outside energy production (thousands).
    pub n1: f64,
    /// Workers producing energy (thousands).
    pub n2: f64,
    pub n1_over_n2: f64,
}

/// Splits the working population into energy producers, taken as a fraction
/// of mining and quarrying employment, and everyone else.
pub fn energy_sector_split(
    agg: &Aggregates,
    energy_fraction_of_mining: f64,
) -> Result<EnergySplit> {
    let fraction = energy_fraction_of_mining;
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::domain(
            "energy_fraction_of_mining",
            "must lie in (0, 1]",
            fraction,
        ));
    }
    let mining = agg.weighted_share(Sector::Mining).ok_or(Error::Domain {
        field: "aggregates",
        constraint: "need rows with employment and sector shares",
        value: f64::NAN,
    })?;
    let n2 = agg.total_working * mining / 100.0 * fraction;
    let n1 = agg.total_working - n2;
    Ok(EnergySplit {
        n1,
        n2,
        n1_over_n2: n1 / n2,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupStats {
    pub members: Vec<String>,
    pub count: usize,
    /// Unweighted mean of the food share across members, percent.
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl GroupStats {
    fn from_members(members: Vec<(&str, f64)>) -> Self {
        let count = members.len();
        let values: Vec<f64> = members.iter().map(|(_, v)| *v).collect();
        let mean = if count == 0 {
            f64::NAN
        } else {
            values.iter().sum::<f64>() / count as f64
        };
        GroupStats {
            members: members.iter().map(|(n, _)| n.to_string()).collect(),
            count,
            mean,
            min: values.iter().copied().fold(f64::NAN, f64::min),
            max: values.iter().copied().fold(f64::NAN, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoodGroups {
    pub threshold: f64,
    /// Food share strictly below the threshold.
    pub below: GroupStats,
    pub at_or_above: GroupStats,
}

/// Partitions countries by food-sector employment share. Rows without
/// sector shares are skipped.
pub fn food_sector_groups(records: &[CountryRecord], threshold_percent: f64) -> Result<FoodGroups> {
    if !(threshold_percent > 0.0 && threshold_percent <= 100.0) {
        return Err(Error::domain(
            "threshold_percent",
            "must lie in (0, 100]",
            threshold_percent,
        ));
    }
    let (below, above): (Vec<_>, Vec<_>) = records
        .iter()
        .filter_map(|r| Some((r.name.as_str(), r.sector_shares?.get(Sector::Food))))
        .partition(|(_, food)| *food < threshold_percent);
    Ok(FoodGroups {
        threshold: threshold_percent,
        below: GroupStats::from_members(below),
        at_or_above: GroupStats::from_members(above),
    })
}
