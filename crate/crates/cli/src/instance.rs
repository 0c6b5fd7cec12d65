//! The JSON instance format and its canonical byte form.

use std::path::Path;
use std::sync::Arc;

use helly_core::constructions::{GenSpec, Generated};
use helly_core::{
    canonical_box_system, ColorClasses, Family, HSet, HSystem, MemberId, MonotoneProperty, Rational,
};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetEntry {
    pub id: MemberId,
    pub offsets: Vec<Rational>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GenSpec>,
    #[serde(default)]
    pub version: String,
}

/// A family on disk: either `box_system` or `normals` fixes the direction system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_system: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<Vec<Rational>>>,
    pub sets: Vec<SetEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<MemberId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property: Option<MonotoneProperty>,
    #[serde(default)]
    pub meta: Meta,
}

impl Instance {
    pub fn from_family(family: &Family) -> Self {
        let system = family.system();
        let (box_system, normals) = if system.is_box_system() {
            (Some(system.dim()), None)
        } else {
            (None, Some(system.normals().to_vec()))
        };
        Instance {
            dim: system.dim(),
            box_system,
            normals,
            sets: family
                .iter()
                .map(|(id, s)| SetEntry {
                    id: id.clone(),
                    offsets: s.offsets().to_vec(),
                })
                .collect(),
            classes: None,
            property: None,
            meta: Meta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                ..Meta::default()
            },
        }
    }

    pub fn from_generated(spec: &GenSpec, generated: &Generated) -> Self {
        let mut inst = Instance::from_family(&generated.family);
        inst.classes = generated.classes.clone();
        inst.property = Some(generated.property.clone());
        inst.meta.seed = match spec {
            GenSpec::Random { seed, .. } | GenSpec::Dense { seed, .. } => Some(*seed),
            _ => None,
        };
        inst.meta.generator = Some(spec.clone());
        inst
    }

    pub fn system(&self) -> Result<Arc<HSystem>, Failure> {
        match (&self.box_system, &self.normals) {
            (Some(d), None) => {
                if *d != self.dim {
                    return Err(Failure::usage(format!(
                        "box_system {d} disagrees with dim {}",
                        self.dim
                    )));
                }
                canonical_box_system(*d).map_err(Failure::usage)
            }
            (None, Some(ns)) => Ok(Arc::new(
                HSystem::new(self.dim, ns.clone()).map_err(Failure::usage)?,
            )),
            _ => Err(Failure::usage(
                "instance needs exactly one of box_system and normals",
            )),
        }
    }

    pub fn family(&self) -> Result<Family, Failure> {
        let system = self.system()?;
        let entries = self
            .sets
            .iter()
            .map(|e| {
                Ok((
                    e.id.clone(),
                    HSet::new(Arc::clone(&system), e.offsets.clone())?,
                ))
            })
            .collect::<helly_core::Result<Vec<_>>>()
            .map_err(Failure::usage)?;
        Family::new(system, entries).map_err(Failure::usage)
    }

    /// The instance's property, `NonEmpty` when none is recorded.
    pub fn effective_property(&self) -> MonotoneProperty {
        self.property.clone().unwrap_or(MonotoneProperty::NonEmpty)
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        canonical_json(self)
    }

    /// SHA-256 of the canonical bytes, lowercase hex.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_bytes()))
    }
}

/// A parsed instance with its family materialized.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: Instance,
    pub family: Family,
    pub hash: String,
}

impl Loaded {
    pub fn new(instance: Instance) -> Result<Self, Failure> {
        let family = instance.family()?;
        if let Some(classes) = &instance.classes {
            ColorClasses::from_family(&family, classes).map_err(Failure::usage)?;
        }
        if let Some(p) = &instance.property {
            p.prepare(family.system()).map_err(Failure::usage)?;
        }
        let hash = instance.hash();
        Ok(Loaded {
            instance,
            family,
            hash,
        })
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let instance: Instance = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("malformed instance {}: {e}", path.display())))?;
        Loaded::new(instance)
    }

    pub fn classes(&self) -> Result<ColorClasses, Failure> {
        let ids = self
            .instance
            .classes
            .as_ref()
            .ok_or_else(|| Failure::usage("instance has no color classes"))?;
        ColorClasses::from_family(&self.family, ids).map_err(Failure::usage)
    }
}

fn sorted(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, sorted(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Pretty JSON with object keys sorted at every level and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> Vec<u8> {
    let value = serde_json::to_value(value).expect("serializable");
    let mut bytes = serde_json::to_vec_pretty(&sorted(value)).expect("serializable");
    bytes.push(b'\n');
    bytes
}
