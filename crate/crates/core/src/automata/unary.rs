use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `{n < P : n in below} ∪ {n >= P : (n - P) mod p in residues}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryEventuallyPeriodicSet {
    pub preperiod: usize,
    pub period: usize,
    pub below: BTreeSet<usize>,
    /// Offsets in `0..period`, counted from `preperiod`.
    pub residues: BTreeSet<usize>,
}

impl UnaryEventuallyPeriodicSet {
    pub fn new(preperiod: usize, period: usize, below: BTreeSet<usize>, residues: BTreeSet<usize>) -> Result<Self> {
        if period == 0 {
            return Err(Error::Precondition("period must be at least 1".into()));
        }
        if below.iter().any(|&n| n >= preperiod) || residues.iter().any(|&r| r >= period) {
            return Err(Error::Precondition("member outside its range".into()));
        }
        Ok(UnaryEventuallyPeriodicSet {
            preperiod,
            period,
            below,
            residues,
        })
    }

    pub fn finite(members: BTreeSet<usize>) -> Self {
        let preperiod = members.iter().next_back().map_or(0, |&m| m + 1);
        UnaryEventuallyPeriodicSet {
            preperiod,
            period: 1,
            below: members,
            residues: BTreeSet::new(),
        }
    }

    pub fn contains(&self, n: usize) -> bool {
        if n < self.preperiod {
            self.below.contains(&n)
        } else {
            self.residues.contains(&((n - self.preperiod) % self.period))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty() && self.residues.is_empty()
    }

    /// All naturals from 0 on.
    pub fn is_everything(&self) -> bool {
        self.below.len() == self.preperiod && self.residues.len() == self.period
    }

    pub fn members_upto(&self, limit: usize) -> BTreeSet<usize> {
        (0..=limit).filter(|&n| self.contains(n)).collect()
    }
}

/// Smallest preperiod, then smallest period, agreeing with `lengths` on
/// `[0, l_max]` with at least two full periods observed after the preperiod.
pub fn unary_fit(lengths: &BTreeSet<usize>, l_max: usize) -> Result<UnaryEventuallyPeriodicSet> {
    if lengths.iter().any(|&n| n > l_max) {
        return Err(Error::Precondition(format!("observation beyond {l_max}")));
    }
    let obs = |n: usize| lengths.contains(&n);
    for pre in 0..=l_max + 1 {
        let span = l_max + 1 - pre;
        for period in 1..=span / 2 {
            let ok = (pre + period..=l_max).all(|n| obs(n) == obs(n - period));
            if ok {
                let below = (0..pre).filter(|&n| obs(n)).collect();
                let residues = (0..period).filter(|&r| obs(pre + r)).collect();
                return UnaryEventuallyPeriodicSet::new(pre, period, below, residues);
            }
        }
    }
    Err(Error::InsufficientHorizon { horizon: l_max })
}
