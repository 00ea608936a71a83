//! Named groups as certified permutation groups.
//!
//! Entries come from JSON files of explicit generators or from the built-in
//! constructions. Either way an entry is usable only after its generators
//! have been shown to generate a group of exactly the claimed order.

pub mod builtin;
pub mod matrix;

use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.trim()
            .parse()
            .map_err(|_| de::Error::custom(format!("not a decimal integer: {s:?}")))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_str(&x.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("not a decimal integer: {s:?}")))
                })
                .transpose()
        }
    }
}

/// Marks an entry as the natural action of `S_n` or `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaturalKind {
    Symmetric,
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    #[serde(with = "decimal")]
    pub claimed_order: BigUint,
    #[serde(default)]
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub natural: Option<NaturalKind>,
    /// Generators of a designated normal subgroup of index 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index2_subgroup: Option<Vec<Permutation>>,
    /// `|S:T|` for an almost simple group over its socle.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "decimal::option")]
    pub socle_index: Option<BigUint>,
}

impl CatalogEntry {
    pub fn matches(&self, name: &str) -> bool {
        let key = normalize_name(name);
        normalize_name(&self.name) == key || self.aliases.iter().any(|a| normalize_name(a) == key)
    }
}

pub fn normalize_name(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

/// An entry whose order claim has been verified.
#[derive(Clone, Debug)]
pub struct CertifiedGroup {
    pub entry: CatalogEntry,
    pub group: PermGroup,
    pub index2: Option<PermGroup>,
}

impl CertifiedGroup {
    pub fn name(&self) -> &str {
        &self.entry.name
    }
}

/// Checks an entry; the error text is a one-line diagnostic naming the entry.
pub fn certify(entry: CatalogEntry) -> Result<CertifiedGroup> {
    let fail = |msg: String| Error::CatalogRejected(vec![format!("{}: {msg}", entry.name)]);
    if entry.generators.is_empty() {
        return Err(fail("no generators".into()));
    }
    if let Some(g) = entry.generators.iter().find(|g| g.degree() != entry.degree) {
        return Err(fail(format!(
            "generator of degree {} in an entry of degree {}",
            g.degree(),
            entry.degree
        )));
    }
    let group = PermGroup::new(entry.generators.clone()).map_err(|e| fail(e.to_string()))?;
    if group.order() != &entry.claimed_order {
        return Err(Error::Certification {
            name: entry.name.clone(),
            computed: group.order().to_string(),
            claimed: entry.claimed_order.to_string(),
        });
    }
    if let Some(t) = &entry.socle_index {
        if t == &BigUint::from(0u32) || (group.order() % t) != BigUint::from(0u32) {
            return Err(fail(format!("socle index {t} does not divide the order")));
        }
    }
    let index2 = match &entry.index2_subgroup {
        None => None,
        Some(gens) => {
            if gens.is_empty() || gens.iter().any(|g| g.degree() != entry.degree) {
                return Err(fail("index-2 subgroup generators have the wrong degree".into()));
            }
            let sub = PermGroup::new(gens.clone()).map_err(|e| fail(e.to_string()))?;
            if sub.order() * 2u32 != *group.order() {
                return Err(fail(format!(
                    "designated subgroup has order {}, not half of {}",
                    sub.order(),
                    group.order()
                )));
            }
            if !gens.iter().all(|g| group.chain().contains(g)) {
                return Err(fail("designated subgroup is not contained in the group".into()));
            }
            // index 2 already forces normality; this re-checks it directly
            let normal = gens.iter().all(|s| {
                group
                    .generators()
                    .iter()
                    .all(|g| sub.chain().contains(&s.conjugate_by(g)))
            });
            if !normal {
                return Err(fail("designated subgroup is not normal".into()));
            }
            Some(sub)
        }
    };
    Ok(CertifiedGroup { entry, group, index2 })
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CatalogFile {
    pub entries: Vec<CatalogEntry>,
}

/// A set of certified groups.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    groups: Vec<CertifiedGroup>,
}

impl Catalog {
    /// Certifies every entry (in parallel) and fails with all diagnostics if
    /// any entry is rejected or names collide.
    pub fn from_entries(entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut problems = Vec::new();
        let mut seen: Vec<String> = Vec::new();
        for e in &entries {
            for name in std::iter::once(&e.name).chain(&e.aliases) {
                let key = normalize_name(name);
                if seen.contains(&key) {
                    problems.push(format!("{}: name {name:?} is used twice", e.name));
                }
                seen.push(key);
            }
        }
        let results: Vec<Result<CertifiedGroup>> = entries.into_par_iter().map(certify).collect();
        let mut groups = Vec::new();
        for r in results {
            match r {
                Ok(g) => groups.push(g),
                Err(Error::CatalogRejected(msgs)) => problems.extend(msgs),
                Err(e) => problems.push(e.to_string()),
            }
        }
        if problems.is_empty() {
            Ok(Catalog { groups })
        } else {
            Err(Error::CatalogRejected(problems))
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(json)?;
        Catalog::from_entries(file.entries)
    }

    pub fn groups(&self) -> &[CertifiedGroup] {
        &self.groups
    }

    pub fn find(&self, name: &str) -> Option<&CertifiedGroup> {
        self.groups.iter().find(|g| g.entry.matches(name))
    }

    pub fn entries(&self) -> Vec<CatalogEntry> {
        self.groups.iter().map(|g| g.entry.clone()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        entries_to_json(&self.entries())
    }
}

pub fn entries_to_json(entries: &[CatalogEntry]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CatalogFile {
        entries: entries.to_vec(),
    })?)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    Catalog::parse(&fs::read_to_string(path)?)
}

pub fn save_catalog(entries: &[CatalogEntry], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, entries_to_json(entries)? + "\n")?;
    Ok(())
}

/// Looks `name` up in `catalog` first, then among the built-in constructions.
pub fn resolve(name: &str, catalog: Option<&Catalog>) -> Result<CertifiedGroup> {
    if let Some(g) = catalog.and_then(|c| c.find(name)) {
        return Ok(g.clone());
    }
    match builtin::builtin_entry(name) {
        Some(entry) => certify(entry?),
        None => Err(Error::UnknownGroup(name.to_string())),
    }
}
