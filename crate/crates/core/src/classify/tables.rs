//! Existence and chi checks for the rows of the chi = -2^a s^b tables.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::enumerate_triangle_pairs;
use crate::classical::GroupSpec;
use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};

const ROWS: &str = include_str!("../../data/table_rows.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tier {
    Default,
    Extended,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Tier::Default),
            "extended" => Ok(Tier::Extended),
            _ => Err(Error::GroupSpecParse(s.into(), "tier must be `default` or `extended`".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// One group, or `T` and `T.2` for a row naming only `T`.
    pub readings: Vec<String>,
    pub m: u64,
    pub n: u64,
    /// chi for `S = T`; scaled by `|S:T|` when the row names only `T`.
    pub chi: i64,
    pub t_row: bool,
    pub tier: Tier,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{},{}}}", self.readings.join("|"), self.m, self.n)
    }
}

/// `-(2^5*3)`, `2^3`, `-12`.
fn parse_factored(s: &str) -> Option<i64> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let body = body.trim_start_matches('(').trim_end_matches(')');
    let mut v: i64 = 1;
    for factor in body.split('*') {
        let (p, e) = match factor.split_once('^') {
            Some((p, e)) => (p.parse::<i64>().ok()?, e.parse::<u32>().ok()?),
            None => (factor.parse::<i64>().ok()?, 1),
        };
        v = v.checked_mul(p.checked_pow(e)?)?;
    }
    Some(if neg { -v } else { v })
}

pub fn table_rows() -> Result<Vec<TableRow>> {
    let bad = |l: &str| Error::DataFile {
        name: "table_rows".into(),
        reason: format!("malformed row `{l}`"),
    };
    ROWS.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 5 {
                return Err(bad(l));
            }
            let (t_row, chi) = match t[3].strip_prefix("T:") {
                Some(c) => (true, c),
                None => (false, t[3]),
            };
            Ok(TableRow {
                readings: t[0].split('|').map(String::from).collect(),
                m: t[1].parse().map_err(|_| bad(l))?,
                n: t[2].parse().map_err(|_| bad(l))?,
                chi: parse_factored(chi).ok_or_else(|| bad(l))?,
                t_row,
                tier: t[4].parse()?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingResult {
    pub group: String,
    pub order: u64,
    pub expected_chi: i64,
    pub chi: Option<i64>,
    pub count: u64,
    pub witness: Option<(ElemId, ElemId)>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub row: String,
    /// `PASS`, `FAIL` or `SKIP`.
    pub status: String,
    pub reason: String,
    pub readings: Vec<ReadingResult>,
}

impl fmt::Display for RowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} {}", self.row, self.status, self.reason)
    }
}

fn skip(row: &TableRow, reason: String) -> RowReport {
    RowReport {
        row: row.to_string(),
        status: "SKIP".into(),
        reason,
        readings: Vec::new(),
    }
}

/// Checks every row of the requested tier: the pair count must be positive
/// and chi must equal the table value, for each reading of a `T`-only row.
pub fn verify_table_rows(cap: u64, tier: Tier, jobs: usize) -> Result<Vec<RowReport>> {
    let mut cache: HashMap<String, FiniteGroup> = HashMap::new();
    let mut out = Vec::new();
    'rows: for row in table_rows()? {
        if row.tier == Tier::Extended && tier == Tier::Default {
            out.push(skip(&row, "extended tier".into()));
            continue;
        }
        for name in &row.readings {
            if cache.contains_key(name) {
                continue;
            }
            let built = name.parse::<GroupSpec>().and_then(|s| s.build(cap));
            match built {
                Ok(g) => {
                    cache.insert(name.clone(), g);
                }
                Err(Error::CapExceeded { cap }) => {
                    out.push(skip(&row, format!("{name} exceeds cap {cap}")));
                    continue 'rows;
                }
                Err(Error::GroupSpecParse(..)) | Err(Error::UnsupportedGroup(_)) => {
                    out.push(skip(&row, format!("no constructor for {name}")));
                    continue 'rows;
                }
                Err(e) => return Err(e),
            }
        }
        let base = cache[&row.readings[0]].order();
        let mut readings = Vec::new();
        for name in &row.readings {
            let g = &cache[name];
            let index = g.order() / base;
            let rec = enumerate_triangle_pairs(g, row.m, row.n, jobs)?;
            let expected_chi = row.chi * index as i64;
            readings.push(ReadingResult {
                group: name.clone(),
                order: g.order(),
                expected_chi,
                chi: rec.chi(),
                count: rec.count,
                witness: rec.witness,
                pass: rec.count > 0 && rec.chi() == Some(expected_chi),
            });
        }
        let pass = readings.iter().all(|r| r.pass);
        let reason = readings
            .iter()
            .map(|r| {
                let chi = r.chi.map_or("undefined".to_string(), |c| c.to_string());
                format!("{}: {} pairs, chi {chi} (table {})", r.group, r.count, r.expected_chi)
            })
            .collect::<Vec<_>>()
            .join("; ");
        out.push(RowReport {
            row: row.to_string(),
            status: if pass { "PASS" } else { "FAIL" }.into(),
            reason,
            readings,
        });
    }
    Ok(out)
}
