use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ReflectionGroup;
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A conjugation-invariant function `c` on reflections, keyed by class label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub values: BTreeMap<String, Cyclotomic>,
    /// Set for parameters drawn by the `generic` recipe.
    pub claimed_generic: bool,
}

impl Parameter {
    pub fn constant(group: &ReflectionGroup, c: Cyclotomic) -> Self {
        Parameter {
            values: group
                .reflection_classes()
                .into_iter()
                .map(|l| (l, c.clone()))
                .collect(),
            claimed_generic: false,
        }
    }

    pub fn zero(group: &ReflectionGroup) -> Self {
        Self::constant(group, Cyclotomic::zero())
    }

    /// Seeded random rationals with distinct large numerators.
    pub fn generic(group: &ReflectionGroup, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut used = BTreeSet::new();
        let mut values = BTreeMap::new();
        for label in group.reflection_classes() {
            let num = loop {
                let n: i64 = rng.gen_range(1_000..100_000);
                if used.insert(n) {
                    break n;
                }
            };
            let den: i64 = rng.gen_range(1..=97);
            values.insert(label, Cyclotomic::from_frac(num, den));
        }
        Parameter {
            values,
            claimed_generic: true,
        }
    }

    /// Parse `zero`, `generic`, `generic:SEED`, a single rational such as
    /// `3/2`, or `label=value,...` with one entry per reflection class.
    pub fn parse(group: &ReflectionGroup, spec: &str, default_seed: u64) -> Result<Self> {
        let spec = spec.trim();
        if spec == "zero" || spec == "0" {
            return Ok(Self::zero(group));
        }
        if spec == "generic" {
            return Ok(Self::generic(group, default_seed));
        }
        if let Some(seed) = spec.strip_prefix("generic:") {
            let seed = seed
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad seed in '{}'", spec)))?;
            return Ok(Self::generic(group, seed));
        }
        if !spec.contains('=') {
            return Ok(Self::constant(group, Cyclotomic::from(parse_rational(spec)?)));
        }
        let classes = group.reflection_classes();
        let mut values = BTreeMap::new();
        for entry in spec.split(',') {
            let (label, value) = entry
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected label=value, got '{}'", entry)))?;
            let label = label.trim().to_string();
            if !classes.contains(&label) {
                return Err(Error::InvalidParameter(format!(
                    "'{}' is not a reflection class (classes: {})",
                    label,
                    classes.join(", ")
                )));
            }
            values.insert(label, Cyclotomic::from(parse_rational(value)?));
        }
        if let Some(missing) = classes.iter().find(|l| !values.contains_key(*l)) {
            return Err(Error::InvalidParameter(format!("no value for class '{}'", missing)));
        }
        Ok(Parameter {
            values,
            claimed_generic: false,
        })
    }

    /// `c(s)` for the reflection stored at position `idx` in the group.
    pub fn for_reflection(&self, group: &ReflectionGroup, idx: usize) -> Cyclotomic {
        let class = &group.reflections()[idx].class;
        self.values.get(class).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// Restriction to a subgroup: each reflection class of `sub` takes the value
    /// of the ambient class containing it.
    pub fn restrict(&self, ambient: &ReflectionGroup, sub: &ReflectionGroup) -> Self {
        let mut values = BTreeMap::new();
        for r in sub.reflections() {
            let elt = ambient
                .index_of(sub.element(r.element))
                .expect("subgroup element lies in the ambient group");
            let amb_class = ambient.classes()[ambient.class_of(elt)].label.clone();
            let v = self.values.get(&amb_class).cloned().unwrap_or_else(Cyclotomic::zero);
            values.insert(r.class.clone(), v);
        }
        Parameter {
            values,
            claimed_generic: self.claimed_generic,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: '{}'", s));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}
