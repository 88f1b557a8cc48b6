use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::relations::{DescriptiveNear, DescriptiveStrong, Near, Proximity, StronglyNear};

pub type RelationConstructor = fn() -> Box<dyn Proximity>;

/// Named proximity strategies.
#[derive(Clone, Debug, Default)]
pub struct RelationRegistry {
    entries: BTreeMap<String, RelationConstructor>,
    aliases: BTreeMap<String, String>,
}

impl RelationRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// `near`, `sn`, `dnear` and `snd`, plus a few long-form aliases.
    pub fn with_builtins() -> Self {
        let mut r = Self::new();
        r.register("near", || Box::new(Near));
        r.register("sn", || Box::new(StronglyNear));
        r.register("dnear", || Box::new(DescriptiveNear));
        r.register("snd", || Box::new(DescriptiveStrong));
        r.alias("strongly_near", "sn");
        r.alias("strongly-near", "sn");
        r.alias("descriptively_near", "dnear");
        r.alias("descriptively-near", "dnear");
        r
    }

    /// Adds or replaces a relation.
    pub fn register(&mut self, name: &str, ctor: RelationConstructor) {
        self.aliases.remove(name);
        self.entries.insert(name.to_string(), ctor);
    }

    pub fn alias(&mut self, alias: &str, target: &str) {
        self.aliases.insert(alias.to_string(), target.to_string());
    }

    pub fn construct(&self, name: &str) -> Result<Box<dyn Proximity>> {
        let key = self.aliases.get(name).map(String::as_str).unwrap_or(name);
        self.entries
            .get(key)
            .map(|ctor| ctor())
            .ok_or_else(|| Error::UnknownRelation(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.construct(name).is_ok()
    }

    /// Canonical names, sorted.
    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}
