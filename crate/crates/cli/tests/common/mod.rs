//! Invocations shared by the golden tests and the acceptance run.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub const GOLDEN: &[(&str, &[&str])] = &[
    ("classify_fig1a.json", &["classify", "--preset", "fig1a"]),
    ("classify_fig1c.json", &["classify", "--preset", "fig1c"]),
    (
        "potential_fig1a.csv",
        &[
            "potential",
            "--preset",
            "fig1a",
            "--from",
            "0",
            "--to",
            "200",
            "--step",
            "5",
        ],
    ),
    (
        "flux_fig1b_agriculture.csv",
        &[
            "flux",
            "--preset",
            "fig1b_agriculture",
            "--from",
            "0",
            "--to",
            "8",
            "--step",
            "0.5",
        ],
    ),
    (
        "simulate_fig1a.csv",
        &[
            "simulate",
            "--preset",
            "fig1a",
            "--m0",
            "100",
            "--dt",
            "0.19",
            "--steps",
            "50",
            "--compare",
        ],
    ),
    (
        "simulate_sweep.json",
        &[
            "simulate", "--preset", "fig1a", "--sweep", "5:45:10", "--dt", "0.5", "--steps", "20",
            "--format", "json",
        ],
    ),
    (
        "price_fig2.json",
        &["price", "--preset", "fig2_relative", "--at", "0.5,2,10,50"],
    ),
    (
        "calibrate.json",
        &[
            "calibrate",
            "--d-s",
            "1",
            "--n-s",
            "100",
            "--p-s-minus",
            "8",
            "--t-minus",
            "19",
            "--gdp",
            "45e12",
            "--population",
            "6.3e9",
            "--working-fraction",
            "0.5",
            "--hours",
            "2100",
        ],
    ),
    (
        "markup_sec5.json",
        &["markup", "--preset", "sec5_oil_markup"],
    ),
    (
        "three_sector_sec6.json",
        &["three-sector", "--preset", "sec6_three_sector"],
    ),
    ("ingest.json", &["ingest"]),
    ("ingest.csv", &["ingest", "--format", "csv"]),
    ("budget.json", &["budget"]),
    (
        "convert_barrel.json",
        &[
            "convert",
            "--value",
            "1",
            "--from",
            "barrel_per_day",
            "--to",
            "kW",
        ],
    ),
    (
        "convert_btu_approx.csv",
        &[
            "convert",
            "--value",
            "1e5",
            "--from",
            "btu_per_year",
            "--to",
            "W",
            "--constants",
            "paper-approximate",
            "--format",
            "csv",
        ],
    ),
    ("preset_list.json", &["preset-list"]),
    (
        "emit_fig2_potential.csv",
        &[
            "emit",
            "--preset",
            "fig2_relative",
            "--curve",
            "potential",
            "--from",
            "0.1",
            "--to",
            "40",
            "--step",
            "0.1",
        ],
    ),
    (
        "emit_fig1a_trajectory.csv",
        &[
            "emit",
            "--preset",
            "fig1a",
            "--curve",
            "trajectory",
            "--x0",
            "100",
            "--dt",
            "0.19",
            "--steps",
            "500",
        ],
    ),
];
