//! The bundled example objects, embedded at compile time.
//!
//! A [`FixtureSet`] can also be read from a directory holding files with the
//! same names, which is how a modified copy is checked.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::posets::Poset;

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/paper/", $name)))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embedded![
    "specm_1.poset",
    "specm_2.poset",
    "specm_3.poset",
    "specm_4.poset",
    "specm_1_euler.mat",
    "ex_spec.poset",
    "ex_periodic.poset",
    "ex_periodic_euler.mat",
    "ex_prod_a3.poset",
    "ex_prod_d4.poset",
    "ex_prod_a3.quiver",
    "ex_prod_d4.quiver",
    "ex_prod_witness.txt",
];

/// File names of every fixture, in a fixed order.
pub fn names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|&(name, _)| name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSet {
    files: BTreeMap<String, String>,
}

impl FixtureSet {
    pub fn embedded() -> Self {
        FixtureSet {
            files: EMBEDDED
                .iter()
                .map(|&(name, text)| (name.to_string(), text.to_string()))
                .collect(),
        }
    }

    /// Reads every known fixture from `dir`; files missing there keep the
    /// embedded contents.
    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let mut set = Self::embedded();
        for name in names() {
            let path = dir.join(name);
            if path.exists() {
                set.files
                    .insert(name.to_string(), std::fs::read_to_string(path)?);
            }
        }
        Ok(set)
    }

    pub fn get(&self, name: &str) -> Result<&str> {
        self.files
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn poset(&self, name: &str) -> Result<Poset> {
        Poset::parse(self.get(name)?)
    }
}

/// Reads `name value` lines (with `#` comments) into a vector indexed like
/// `names`. Every name must appear exactly once.
pub fn parse_labeled_vector(text: &str, names: &[String]) -> Result<Vec<BigInt>> {
    let mut values: Vec<Option<BigInt>> = vec![None; names.len()];
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(label), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(
                k + 1,
                format!("expected `name value`, found `{line}`"),
            ));
        };
        let value: BigInt = value
            .parse()
            .map_err(|_| Error::parse(k + 1, format!("bad integer `{value}`")))?;
        let i = names
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))?;
        if values[i].replace(value).is_some() {
            return Err(Error::DuplicateElement(label.to_string()));
        }
    }
    values
        .into_iter()
        .zip(names)
        .map(|(v, name)| v.ok_or_else(|| Error::parse(0, format!("no value for `{name}`"))))
        .collect()
}
