use serde::{Deserialize, Serialize};

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// Matches a published value.
    Paper,
    /// Obtained by a documented derivation from other data in this crate.
    Derived,
    /// Produced by an engine with no external reference value.
    Computed,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Derived => "DERIVED",
            Provenance::Computed => "COMPUTED",
        })
    }
}
