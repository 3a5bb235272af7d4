//! `.alg` algebra specification files.
//!
//! A spec is a TOML document with three keys:
//!
//! ```toml
//! n = 3
//! base = 2
//! carrier = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]   # or carrier = "full"
//! ```
//!
//! Explicit sequences must have length `n` and entries below `base`;
//! duplicates are dropped on load.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use tra_core::algebra::Carrier;
use tra_core::limits::Limits;
use tra_core::seqspace::Seq;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierSpec {
    Keyword(Keyword),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub n: usize,
    pub base: usize,
    pub carrier: CarrierSpec,
}

impl AlgebraSpec {
    pub fn full(n: usize, base: usize) -> Self {
        AlgebraSpec {
            n,
            base,
            carrier: CarrierSpec::Keyword(Keyword::Full),
        }
    }

    pub fn explicit(n: usize, base: usize, seqs: impl IntoIterator<Item = Seq>) -> Self {
        AlgebraSpec {
            n,
            base,
            carrier: CarrierSpec::Explicit(seqs.into_iter().map(Seq::into_entries).collect()),
        }
    }

    /// The spec of an existing carrier, with its members listed explicitly.
    pub fn of_carrier(d: &Carrier) -> Self {
        if d.is_full() {
            AlgebraSpec::full(d.dim(), d.base())
        } else {
            AlgebraSpec::explicit(d.dim(), d.base(), d.seqs())
        }
    }

    /// Parses and validates spec text; explicit sequences come back sorted
    /// and deduplicated.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut spec: AlgebraSpec = toml::from_str(text).map_err(|e| CliError::Spec(e.to_string()))?;
        if let CarrierSpec::Explicit(seqs) = &mut spec.carrier {
            for s in seqs.iter() {
                checked_seq(s, spec.n, spec.base)?;
            }
            let unique: BTreeSet<Vec<usize>> = std::mem::take(seqs).into_iter().collect();
            *seqs = unique.into_iter().collect();
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        AlgebraSpec::parse(&text).map_err(|e| match e {
            CliError::Spec(m) => CliError::Spec(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    pub fn build(&self, limits: &Limits) -> Result<Carrier, CliError> {
        Ok(match &self.carrier {
            CarrierSpec::Keyword(Keyword::Full) => Carrier::full_capped(self.n, self.base, limits.max_carrier)?,
            CarrierSpec::Explicit(seqs) => {
                let seqs = seqs
                    .iter()
                    .map(|s| checked_seq(s, self.n, self.base))
                    .collect::<Result<Vec<_>, _>>()?;
                Carrier::from_seqs(self.n, self.base, seqs)?
            }
        })
    }
}

fn checked_seq(entries: &[usize], n: usize, base: usize) -> Result<Seq, CliError> {
    if entries.len() != n {
        return Err(CliError::Spec(format!(
            "sequence {entries:?} has length {}, expected {n}",
            entries.len()
        )));
    }
    Ok(Seq::checked(entries.to_vec(), base)?)
}
