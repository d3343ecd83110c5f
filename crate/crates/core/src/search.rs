//! Breadth-first search for periods of a tropical y-seed.
//!
//! States `(B, C)` are expanded once each in order of discovery. Every
//! generated state whose c-vectors form a permutation `ν` of the unit vectors
//! and whose matrix matches `B` under `ν` closes a period; such states are
//! reported and not expanded further.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::{period_report, ExchangeMatrix, MutationSchedule, TropicalState};

pub const MAX_RANK: usize = 4;
pub const MAX_DEPTH: usize = 12;
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundPeriod {
    /// 1-based mutation sequence.
    pub sequence: Vec<usize>,
    /// 1-based relabeling.
    pub nu: Vec<usize>,
}

impl FoundPeriod {
    pub fn schedule(&self) -> Result<MutationSchedule> {
        MutationSchedule::from_one_based(&self.sequence, &self.nu, self.nu.len())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub depth: usize,
    pub states_visited: usize,
    pub periods: Vec<FoundPeriod>,
}

pub fn search_periods(b: &ExchangeMatrix, depth: usize) -> Result<SearchReport> {
    search_periods_capped(b, depth, DEFAULT_STATE_CAP)
}

pub fn search_periods_capped(b: &ExchangeMatrix, depth: usize, state_cap: usize) -> Result<SearchReport> {
    let n = b.rank();
    if n > MAX_RANK {
        return Err(Error::ResourceLimit(format!("rank {n} exceeds {MAX_RANK}")));
    }
    if depth > MAX_DEPTH {
        return Err(Error::ResourceLimit(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    let start = TropicalState::initial(b.clone());
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::new();
    queue.push_back((start, Vec::<usize>::new()));
    let mut periods = Vec::new();
    while let Some((state, seq)) = queue.pop_front() {
        if seq.len() == depth {
            continue;
        }
        for k in 0..n {
            let next = state.mutate(k)?;
            let mut path = seq.clone();
            path.push(k);
            if let Some(nu) = next.unit_permutation() {
                if period_report(b, &next, &nu).periodic {
                    periods.push(FoundPeriod {
                        sequence: path.iter().map(|k| k + 1).collect(),
                        nu: nu.iter().map(|v| v + 1).collect(),
                    });
                    continue;
                }
            }
            if seen.insert(next.clone()) {
                if seen.len() > state_cap {
                    return Err(Error::ResourceLimit(format!("more than {state_cap} states")));
                }
                queue.push_back((next, path));
            }
        }
    }
    Ok(SearchReport { depth, states_visited: seen.len(), periods })
}
