//! Seed files and the built-in fixtures.
//!
//! A seed file is `{"n": 2, "B": [[0,-1],[1,0]], "sequence": [1,2,1,2,1], "nu": [2,1]}`
//! with 1-based indices and `nu` given as the image list.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::{principal_extension, ExchangeMatrix, MutationSchedule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub sequence: Vec<usize>,
    pub nu: Vec<usize>,
}

impl SeedSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("seed spec serializes")
    }

    /// Validates and converts to 0-based library types.
    pub fn resolve(&self) -> Result<(ExchangeMatrix, MutationSchedule)> {
        if self.b.len() != self.n {
            return Err(Error::Parse(format!("n = {} but B has {} rows", self.n, self.b.len())));
        }
        let b = ExchangeMatrix::new(self.b.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let sched = MutationSchedule::from_one_based(&self.sequence, &self.nu, self.n)
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok((b, sched))
    }

    pub fn from_parts(b: &ExchangeMatrix, sched: &MutationSchedule) -> Self {
        Self {
            n: b.rank(),
            b: b.rows(),
            sequence: sched.sequence_one_based(),
            nu: sched.nu_one_based(),
        }
    }
}

/// Worked examples shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    A1,
    A2,
    A2Principal,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::A1, Builtin::A2, Builtin::A2Principal];

    pub fn spec(self) -> SeedSpec {
        match self {
            Builtin::A1 => SeedSpec { n: 1, b: vec![vec![0]], sequence: vec![1, 1], nu: vec![1] },
            Builtin::A2 => SeedSpec {
                n: 2,
                b: vec![vec![0, -1], vec![1, 0]],
                sequence: vec![1, 2, 1, 2, 1],
                nu: vec![2, 1],
            },
            Builtin::A2Principal => {
                let a2 = Builtin::A2.spec();
                let b = ExchangeMatrix::new(a2.b).expect("A2 is skew-symmetric");
                SeedSpec {
                    n: 4,
                    b: principal_extension(&b).rows(),
                    sequence: a2.sequence,
                    nu: vec![2, 1, 3, 4],
                }
            }
        }
    }

    pub fn resolve(self) -> (ExchangeMatrix, MutationSchedule) {
        self.spec().resolve().expect("builtin fixtures are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::A1 => "A1",
            Builtin::A2 => "A2",
            Builtin::A2Principal => "A2-principal",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown builtin {s:?} (expected A1, A2, A2-principal)")))
    }
}
