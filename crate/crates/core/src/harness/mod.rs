//! Table reproduction against the embedded expectation data, and the
//! classification / lift / extension searches.

pub mod search;

pub use search::{
    classify_four_circulant_f4, extension_search, lift_search, ExtensionSearch, LiftSearch, LiftSearchMode, SearchHit,
    SearchReport,
};

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analysis::{census_for, human_seconds, pair_projection, scan_projection, DEEP_SECONDS};
use crate::binary::{classify_type, design_lambda, extract_params, pair_invariant, scan_bound, CodeType, Family};
use crate::code::RingCode;
use crate::error::{Error, Result};
use crate::spec::{parse_inline, Library};

const LIBRARY: &str = include_str!("data/library.sdf");

pub struct TableInfo {
    pub id: u8,
    pub title: &'static str,
    data: &'static str,
    /// Projected single-threaded runtime when it exceeds a few minutes.
    deep: Option<&'static str>,
}

pub const TABLES: [TableInfo; 11] = [
    TableInfo {
        id: 1,
        title: "four-circulant codes over F4",
        data: include_str!("data/t01.tsv"),
        deep: None,
    },
    TableInfo {
        id: 2,
        title: "F4+uF4 lifts, beta in W64,2",
        data: include_str!("data/t02.tsv"),
        deep: None,
    },
    TableInfo {
        id: 3,
        title: "[68,34,12] codes with gamma = 0 and gamma = 6",
        data: include_str!("data/t03.tsv"),
        deep: None,
    },
    TableInfo {
        id: 4,
        title: "[68,34,12] codes with gamma = 1",
        data: include_str!("data/t04.tsv"),
        deep: None,
    },
    TableInfo {
        id: 5,
        title: "[68,34,12] codes with gamma = 2",
        data: include_str!("data/t05.tsv"),
        deep: None,
    },
    TableInfo {
        id: 6,
        title: "[68,34,12] codes with gamma = 3 and gamma = 4",
        data: include_str!("data/t06.tsv"),
        deep: None,
    },
    TableInfo {
        id: 7,
        title: "[68,34,12] codes from the systematic extension of C64",
        data: include_str!("data/t07.tsv"),
        deep: None,
    },
    TableInfo {
        id: 8,
        title: "[68,34,12] codes from the bordered extension of C64",
        data: include_str!("data/t08.tsv"),
        deep: None,
    },
    TableInfo {
        id: 9,
        title: "doubly-even codes of lengths 80 and 88, I16",
        data: include_str!("data/t09.tsv"),
        deep: Some("about 5 minutes (24 I16 pair counts)"),
    },
    TableInfo {
        id: 10,
        title: "[40,20,8] four-circulant codes, A8 and I8",
        data: include_str!("data/t10.tsv"),
        deep: None,
    },
    TableInfo {
        id: 11,
        title: "[96,48,16] doubly-even codes, alpha",
        data: include_str!("data/t11.tsv"),
        deep: None,
    },
];

pub fn table_info(id: u8) -> Result<&'static TableInfo> {
    TABLES
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::Invalid(format!("unknown table {id}; tables are 1..=11")))
}

/// The named codes every table refers to (seed codes, lifts, C64, C88, C96).
pub fn embedded_library() -> Library {
    let mut lib = Library::new();
    lib.add_text(LIBRARY).expect("embedded library parses");
    lib
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Length(usize),
    Dimension(usize),
    Distance(usize),
    Type(CodeType),
    Family(Family),
    Beta(i64),
    Gamma(i64),
    Alpha(i64),
    Count {
        weight: usize,
        count: u64,
    },
    Pairs {
        weight: usize,
        count: u64,
    },
    /// Weight-`d` supports form a `t`-design with this λ.
    Lambda {
        t: usize,
        lambda: u64,
    },
}

fn parse_expect(token: &str) -> Result<Expect> {
    let bad = || Error::Invalid(format!("bad expectation {token:?}"));
    let (key, value) = token.split_once('=').ok_or_else(bad)?;
    let int = || value.parse::<i64>().map_err(|_| bad());
    let count = || value.parse::<u64>().map_err(|_| bad());
    let weight_of = |prefix: &str| key.strip_prefix(prefix).and_then(|w| w.parse::<usize>().ok());
    Ok(match key {
        "n" => Expect::Length(count()? as usize),
        "k" => Expect::Dimension(count()? as usize),
        "d" => Expect::Distance(count()? as usize),
        "type" => Expect::Type(match value {
            "I" => CodeType::TypeI,
            "II" => CodeType::TypeII,
            _ => return Err(bad()),
        }),
        "family" => Expect::Family(match value {
            "W64_1" => Family::W64_1,
            "W64_2" => Family::W64_2,
            "W68_1" => Family::W68_1,
            "W68_2" => Family::W68_2,
            "W80" => Family::W80,
            "W88" => Family::W88,
            "W96" => Family::W96,
            _ => return Err(bad()),
        }),
        "beta" => Expect::Beta(int()?),
        "gamma" => Expect::Gamma(int()?),
        "alpha" => Expect::Alpha(int()?),
        _ => {
            if let Some(weight) = weight_of("A") {
                Expect::Count {
                    weight,
                    count: count()?,
                }
            } else if let Some(weight) = weight_of("I") {
                Expect::Pairs {
                    weight,
                    count: count()?,
                }
            } else if let Some(t) = weight_of("lambda") {
                Expect::Lambda { t, lambda: count()? }
            } else {
                return Err(bad());
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub label: String,
    /// A library name or an inline `key=value` construction.
    pub spec: String,
    pub expect: Vec<Expect>,
    /// Transcription anomaly; flagged rows are reported but not checked.
    pub flag: Option<String>,
}

impl TableRow {
    pub fn build(&self, lib: &Library) -> Result<RingCode> {
        if self.spec.contains('=') {
            lib.build_spec(&parse_inline(&self.label, &self.spec)?)
        } else {
            lib.build(&self.spec)
        }
    }

    fn census_weight(&self) -> usize {
        let n = self.expect.iter().find_map(|e| match e {
            Expect::Length(n) => Some(*n),
            _ => None,
        });
        self.expect
            .iter()
            .map(|e| match e {
                Expect::Distance(d) => *d,
                Expect::Beta(_) | Expect::Gamma(_) | Expect::Family(_) => match n {
                    Some(64) | Some(68) => 14,
                    _ => 16,
                },
                Expect::Alpha(_) => 16,
                Expect::Count { weight, .. } | Expect::Pairs { weight, .. } => *weight,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn table_rows(id: u8) -> Result<Vec<TableRow>> {
    let info = table_info(id)?;
    let mut rows = Vec::new();
    for (i, line) in info.data.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [label, spec, expect, flag] = fields[..] else {
            return Err(Error::Invalid(format!("table {id} line {}: expected 4 fields", i + 1)));
        };
        rows.push(TableRow {
            table: id,
            label: label.to_string(),
            spec: spec.to_string(),
            expect: expect.split_whitespace().map(parse_expect).collect::<Result<_>>()?,
            flag: (flag != "-").then(|| flag.to_string()),
        });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Flagged,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub code_type: Option<CodeType>,
    pub family: Option<Family>,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
    pub alpha: Option<i64>,
    /// `full_scan` or `census`.
    pub method: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowResult {
    pub label: String,
    pub status: RowStatus,
    pub checks: Vec<Check>,
    pub measured: Measured,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct ReproduceOptions {
    pub deep: bool,
    /// Use full `2^k` scans up to the scan bound instead of the census.
    pub full_scan: bool,
    /// Completed rows are stored here and skipped on the next run.
    pub checkpoint: Option<PathBuf>,
    /// Only rows with these labels.
    pub only: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: u8,
    pub title: String,
    pub rows: Vec<RowResult>,
    pub summary: Summary,
    pub anomalies: Vec<String>,
}

impl TableReport {
    /// All non-flagged rows pass.
    pub fn ok(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }
}

fn check(checks: &mut Vec<Check>, name: &str, expected: impl ToString, found: impl ToString) {
    let (expected, found) = (expected.to_string(), found.to_string());
    checks.push(Check {
        name: name.to_string(),
        ok: expected == found,
        expected,
        found,
    });
}

fn show<T: std::fmt::Debug>(v: Option<T>) -> String {
    v.map(|x| format!("{x:?}")).unwrap_or_else(|| "none".into())
}

/// Rebuilds one row and checks every printed value. Only a refusal to run
/// without `deep` is an error; everything else is reported in the row.
pub fn reproduce_row(lib: &Library, row: &TableRow, opts: &ReproduceOptions) -> Result<RowResult> {
    let mut result = RowResult {
        label: row.label.clone(),
        status: RowStatus::Flagged,
        checks: Vec::new(),
        measured: Measured::default(),
        note: row.flag.clone(),
    };
    if row.flag.is_some() {
        return Ok(result);
    }
    match measure_row(lib, row, opts, &mut result) {
        Ok(()) => {
            result.status = if result.checks.iter().all(|c| c.ok) {
                RowStatus::Pass
            } else {
                RowStatus::Fail
            };
        }
        Err(e @ Error::NeedsDeep { .. }) => return Err(e),
        Err(e) => {
            result.status = RowStatus::Error;
            result.note = Some(e.to_string());
        }
    }
    Ok(result)
}

fn measure_row(lib: &Library, row: &TableRow, opts: &ReproduceOptions, out: &mut RowResult) -> Result<()> {
    let code = row.build(lib)?;
    let checks = &mut out.checks;
    check(checks, "self_dual", true, code.is_self_dual());
    let image = code.binary_image()?;
    let m = &mut out.measured;
    m.n = Some(image.n());
    m.k = Some(image.k());
    let wmax = row.census_weight();
    let need_words = row
        .expect
        .iter()
        .any(|e| matches!(e, Expect::Pairs { .. } | Expect::Lambda { .. }));
    let full_scan = opts.full_scan && image.k() <= scan_bound();
    let (census, method) = census_for(&image, wmax, full_scan, need_words)?;
    m.method = Some(method.into());
    if !census.complete {
        return Err(Error::IncompleteCensus(wmax));
    }
    m.d = census.min_nonzero();
    let needs_params = row.expect.iter().any(|e| {
        matches!(
            e,
            Expect::Family(_) | Expect::Beta(_) | Expect::Gamma(_) | Expect::Alpha(_)
        )
    });
    if needs_params {
        let report = extract_params(&census, image.n())?;
        m.family = report.family;
        m.beta = report.beta;
        m.gamma = report.gamma;
        m.alpha = report.alpha;
        if !report.residuals.is_empty() {
            out.note = Some(report.residuals.join("; "));
        }
    }
    for e in &row.expect {
        match e {
            Expect::Length(n) => check(checks, "n", n, image.n()),
            Expect::Dimension(k) => check(checks, "k", k, image.k()),
            Expect::Distance(d) => check(
                checks,
                "d",
                d,
                m.d.map(|d| d.to_string()).unwrap_or_else(|| format!(">{wmax}")),
            ),
            Expect::Type(t) => {
                let found = classify_type(&image);
                m.code_type = Some(found);
                check(checks, "type", format!("{t:?}"), format!("{found:?}"))
            }
            Expect::Family(f) => check(checks, "family", show(Some(f)), show(m.family)),
            Expect::Beta(b) => check(checks, "beta", b, show(m.beta)),
            Expect::Gamma(g) => check(checks, "gamma", g, show(m.gamma)),
            Expect::Alpha(a) => check(checks, "alpha", a, show(m.alpha)),
            Expect::Count { weight, count } => check(checks, &format!("A{weight}"), count, show(census.count(*weight))),
            Expect::Pairs { weight, count } => {
                if *weight >= 16 && !opts.deep {
                    return Err(Error::NeedsDeep {
                        what: format!("I{weight} for {}", row.label),
                        projected: human_seconds(pair_projection(census.count(*weight).unwrap_or(0))),
                    });
                }
                let found = pair_invariant(&census, *weight, *weight)?;
                check(checks, &format!("I{weight}"), count, found)
            }
            Expect::Lambda { t, lambda } => {
                let w = m.d.ok_or(Error::IncompleteCensus(wmax))?;
                let found = design_lambda(&census, image.n(), w, *t)?;
                check(checks, &format!("lambda{t}"), format!("{lambda} design"), {
                    if found.is_design {
                        format!("{} design", found.lambda)
                    } else {
                        format!("{} (not a design)", found.lambda)
                    }
                })
            }
        }
    }
    Ok(())
}

fn load_checkpoint(path: &PathBuf) -> Result<Vec<RowResult>> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(serde_json::from_str(&text)?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}

fn selected(opts: &ReproduceOptions, row: &TableRow) -> bool {
    opts.only.as_ref().is_none_or(|only| only.contains(&row.label))
}

/// Rebuilds and measures every row of a table. `on_row` sees each result as
/// it completes.
pub fn reproduce_table(
    id: u8,
    lib: &Library,
    opts: &ReproduceOptions,
    on_row: &mut dyn FnMut(&RowResult),
) -> Result<TableReport> {
    let info = table_info(id)?;
    if let (Some(projected), false) = (info.deep, opts.deep) {
        if opts.only.is_none() {
            return Err(Error::NeedsDeep {
                what: format!("table {id}"),
                projected: projected.into(),
            });
        }
    }
    let rows = table_rows(id)?;
    if opts.full_scan && !opts.deep {
        let mut seconds = 0.0;
        for row in rows.iter().filter(|r| r.flag.is_none() && selected(opts, r)) {
            let image = row.build(lib)?.binary_image()?;
            if image.k() > 20 && image.k() <= scan_bound() {
                seconds += scan_projection(image.n(), image.k());
            }
        }
        if seconds > DEEP_SECONDS {
            return Err(Error::NeedsDeep {
                what: format!("full scans for table {id}"),
                projected: human_seconds(seconds),
            });
        }
    }
    let mut done = match &opts.checkpoint {
        Some(p) => load_checkpoint(p)?,
        None => Vec::new(),
    };
    let mut results = Vec::new();
    for row in &rows {
        if !selected(opts, row) {
            continue;
        }
        let result = match done.iter().position(|r| r.label == row.label) {
            Some(i) => done[i].clone(),
            None => {
                let r = reproduce_row(lib, row, opts)?;
                if let Some(p) = &opts.checkpoint {
                    done.push(r.clone());
                    fs::write(p, serde_json::to_string(&done)?)?;
                }
                r
            }
        };
        on_row(&result);
        results.push(result);
    }
    let count = |s: RowStatus| results.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        pass: count(RowStatus::Pass),
        fail: count(RowStatus::Fail),
        flagged: count(RowStatus::Flagged),
        error: count(RowStatus::Error),
    };
    let mut anomalies: Vec<String> = rows
        .iter()
        .filter_map(|r| r.flag.as_ref().map(|f| format!("{}: {f}", r.label)))
        .collect();
    if (3..=8).contains(&id) {
        anomalies.push(format!(
            "table {id} has {} rows; the printed length-68 code totals disagree (178 vs 181)",
            rows.len()
        ));
    }
    Ok(TableReport {
        table: id,
        title: info.title.into(),
        rows: results,
        summary,
        anomalies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_parses_and_builds() {
        let lib = embedded_library();
        let mut total = 0;
        for t in &TABLES {
            let rows = table_rows(t.id).unwrap();
            assert!(!rows.is_empty());
            for r in rows.iter().filter(|r| r.flag.is_none()) {
                r.build(&lib).unwrap_or_else(|e| panic!("{}: {e}", r.label));
            }
            total += rows.len();
        }
        assert_eq!(total, 5 + 19 + 16 + 30 + 43 + 55 + 22 + 13 + 24 + 7 + 10);
    }

    #[test]
    fn flags() {
        let t2 = table_rows(2).unwrap();
        assert_eq!(t2.iter().filter(|r| r.flag.is_some()).count(), 1);
        assert_eq!(t2[17].flag.as_deref(), Some("duplicate:M1"));
        let t5 = table_rows(5).unwrap();
        let short: Vec<_> = t5.iter().filter(|r| r.flag.is_some()).collect();
        assert_eq!(short.len(), 1);
        assert!(short[0].spec.contains("0uuu03u303130303uu0301uu33uuu0 "));
    }

    #[test]
    fn expectation_tokens() {
        assert_eq!(
            parse_expect("A16=97565").unwrap(),
            Expect::Count {
                weight: 16,
                count: 97565
            }
        );
        assert_eq!(
            parse_expect("I8=2520").unwrap(),
            Expect::Pairs { weight: 8, count: 2520 }
        );
        assert_eq!(
            parse_expect("lambda3=665").unwrap(),
            Expect::Lambda { t: 3, lambda: 665 }
        );
        assert_eq!(parse_expect("type=II").unwrap(), Expect::Type(CodeType::TypeII));
        assert!(parse_expect("type=III").is_err());
        assert!(parse_expect("zeta=1").is_err());
    }

    #[test]
    fn table_one_reproduces() {
        let report = reproduce_table(1, &embedded_library(), &ReproduceOptions::default(), &mut |_| {}).unwrap();
        assert_eq!(report.summary.pass, 5, "{report:#?}");
        let ds: Vec<usize> = report.rows.iter().map(|r| r.measured.d.unwrap()).collect();
        assert_eq!(ds, vec![8, 6, 6, 6, 6]);
    }

    #[test]
    fn deep_tables_refuse_without_deep() {
        let err = reproduce_table(9, &embedded_library(), &ReproduceOptions::default(), &mut |_| {}).unwrap_err();
        assert!(matches!(err, Error::NeedsDeep { .. }));
        assert!(table_info(12).is_err());
    }
}
