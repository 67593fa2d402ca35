//! Locality-inferred value assignments built from measurement records.
//!
//! A trial in which the partner observable is measured on one side reveals,
//! assuming locality, a pre-existing value for the other side's observable.
//! Each trial seed labels one ensemble member (one emitted pair), so the
//! inferred map lives per member: seed ↦ observable ↦ value. If two records
//! for the same member and observable disagree, no single pre-existing
//! value exists and the pair is flagged as a contextuality witness.

use std::collections::BTreeMap;

use super::NogoError;
use crate::measure::EprTrialRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct ContextualityWitness {
    pub observable_id: String,
    pub seed: u64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct PartialValueMap {
    per_member: BTreeMap<u64, BTreeMap<String, f64>>,
    witnesses: Vec<ContextualityWitness>,
}

impl PartialValueMap {
    pub fn is_empty(&self) -> bool {
        self.per_member.is_empty() && self.witnesses.is_empty()
    }

    /// Inferred value of an observable for one ensemble member.
    pub fn value(&self, seed: u64, observable_id: &str) -> Option<f64> {
        self.per_member.get(&seed)?.get(observable_id).copied()
    }

    pub fn members(&self) -> impl Iterator<Item = (&u64, &BTreeMap<String, f64>)> {
        self.per_member.iter()
    }

    pub fn member_count(&self) -> usize {
        self.per_member.len()
    }

    pub fn witnesses(&self) -> &[ContextualityWitness] {
        &self.witnesses
    }

    pub fn is_contextual(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Builds the per-member value map from trial records taken on one fixed
/// entangled state. Records carrying different state fingerprints are
/// rejected.
pub fn valuemap_from_trials(records: &[EprTrialRecord]) -> Result<PartialValueMap, NogoError> {
    let mut map = PartialValueMap::default();
    let Some(first) = records.first() else {
        return Ok(map);
    };
    if records.iter().any(|r| r.state_digest != first.state_digest) {
        return Err(NogoError::InconsistentState);
    }

    let mut groups: BTreeMap<(u64, &str), Vec<f64>> = BTreeMap::new();
    for r in records {
        let bucket = groups
            .entry((r.rng_seed, r.observable_id.as_str()))
            .or_default();
        for value in [r.alice_value, r.bob_value] {
            if !bucket.contains(&value) {
                bucket.push(value);
            }
        }
    }
    for ((seed, observable), values) in groups {
        if values.len() == 1 {
            map.per_member
                .entry(seed)
                .or_default()
                .insert(observable.to_string(), values[0]);
        } else {
            map.witnesses.push(ContextualityWitness {
                observable_id: observable.to_string(),
                seed,
                values,
            });
        }
    }
    Ok(map)
}
