//! Embedded permutation-generator files for groups without a matrix
//! constructor.
//!
//! Format: an `order <N>` line, then one line per generator giving the
//! images of points `1..d`. Blank lines and `#` comments are ignored.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{self, Point};

macro_rules! embed {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../data/", $name, ".txt")))),*]
    };
}

const FILES: &[(&str, &str)] = embed![
    "PSL2_9.2^2",
    "PSL2_25.2",
    "PSL3_4.2a",
    "PSL3_4.2b",
    "SL3_3.2",
    "SU3_3.2",
    "SU3_4.2",
    "SU4_2.2",
    "Sp6_2",
    "S7",
    "S8",
    "A9",
];

/// Names of the embedded files.
pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorData {
    pub order: u64,
    pub degree: usize,
    pub generators: Vec<Vec<Point>>,
}

pub fn parse(name: &str, text: &str) -> Result<GeneratorData> {
    let err = |reason: String| Error::DataFile {
        name: name.to_string(),
        reason,
    };
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| err("empty file".into()))?;
    let order = header
        .strip_prefix("order")
        .and_then(|r| r.trim().parse::<u64>().ok())
        .ok_or_else(|| err(format!("bad header `{header}`")))?;
    let mut generators = Vec::new();
    for line in lines {
        let images: Vec<Point> = line
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 && v <= Point::MAX as usize => Ok((v - 1) as Point),
                _ => Err(err(format!("bad point `{t}`"))),
            })
            .collect::<Result<_>>()?;
        if !perm::is_permutation(&images) {
            return Err(err(format!("generator {} is not a permutation", generators.len() + 1)));
        }
        generators.push(images);
    }
    let degree = generators.first().map_or(1, |g| g.len());
    if generators.iter().any(|g| g.len() != degree) {
        return Err(err("generators act on different degrees".into()));
    }
    Ok(GeneratorData {
        order,
        degree,
        generators,
    })
}

pub fn write(order: u64, generators: &[Vec<Point>]) -> String {
    let mut s = format!("order {order}\n");
    for g in generators {
        let line: Vec<String> = g.iter().map(|&v| (v as usize + 1).to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn recorded_order(name: &str) -> Option<u64> {
    parse(name, text(name)?).ok().map(|d| d.order)
}

/// Closes the generators of an embedded file and checks the recorded order.
pub fn load(name: &str, cap: u64) -> Result<FiniteGroup> {
    let body = text(name).ok_or_else(|| Error::UnsupportedGroup(format!("data:{name}")))?;
    let d = parse(name, body)?;
    if d.order > cap {
        return Err(Error::CapExceeded { cap });
    }
    let g = FiniteGroup::generate(name, d.degree, d.generators, cap)?;
    if g.order() != d.order {
        return Err(Error::DataOrderMismatch {
            name: name.to_string(),
            expected: d.order,
            got: g.order(),
        });
    }
    Ok(g)
}
