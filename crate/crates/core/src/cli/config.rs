//! Job configuration files.
//!
//! ```json
//! {"preset": "qplane", "N": 3, "f_values": {"z1": 1, "z2": 2, "z21": 1}, "cutoff": 12, "commands": ["lift"]}
//! ```
//!
//! An inline datum replaces `preset`/`N` by `"datum": {...}` in the datum schema.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::cyclotomic::CycNum;
use crate::datum::{CartanDatum, DatumSpec, SlotKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum DatumSource {
    Preset { name: String, n: u32 },
    Inline(DatumSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub datum: DatumSource,
    /// Values of `f` on the `K`-generators, keyed by generator name.
    pub f_values: BTreeMap<String, CycNum>,
    pub cutoff: Option<u32>,
    pub commands: Vec<String>,
}

fn config_err(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config { pointer: pointer.into(), message: message.into() }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn field_u32(obj: &Map<String, Value>, key: &str, at: &str) -> Result<Option<u32>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .map(Some)
            .ok_or_else(|| config_err(format!("{at}/{key}"), "expected a non-negative integer")),
    }
}

impl JobConfig {
    pub fn preset(name: &str, n: u32) -> Self {
        JobConfig {
            datum: DatumSource::Preset { name: name.to_ascii_lowercase(), n },
            f_values: BTreeMap::new(),
            cutoff: None,
            commands: Vec::new(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| config_err("", "expected an object"))?;
        for key in obj.keys() {
            if !["preset", "N", "datum", "f_values", "cutoff", "commands"].contains(&key.as_str()) {
                return Err(config_err(format!("/{}", escape(key)), "unknown field"));
            }
        }
        let datum = match (obj.get("preset"), obj.get("datum")) {
            (Some(_), Some(_)) => return Err(config_err("/datum", "give either `preset` or `datum`, not both")),
            (None, None) => return Err(config_err("/preset", "missing field `preset` (or an inline `datum`)")),
            (Some(p), None) => {
                let name = p.as_str().ok_or_else(|| config_err("/preset", "expected a string"))?;
                let n = field_u32(obj, "N", "")?.ok_or_else(|| config_err("/N", "missing field `N`"))?;
                DatumSource::Preset { name: name.to_ascii_lowercase(), n }
            }
            (None, Some(d)) => {
                let dobj = d.as_object().ok_or_else(|| config_err("/datum", "expected an object"))?;
                for key in ["family", "theta", "N", "group_orders", "generator_images", "character_values"] {
                    if !dobj.contains_key(key) {
                        return Err(config_err(format!("/datum/{key}"), format!("missing field `{key}`")));
                    }
                }
                let spec: DatumSpec =
                    serde_json::from_value(d.clone()).map_err(|e| config_err("/datum", e.to_string()))?;
                DatumSource::Inline(spec)
            }
        };
        let mut f_values = BTreeMap::new();
        if let Some(f) = obj.get("f_values") {
            let fobj = f.as_object().ok_or_else(|| config_err("/f_values", "expected an object"))?;
            for (k, v) in fobj {
                let c = CycNum::from_json(v)
                    .map_err(|e| config_err(format!("/f_values/{}", escape(k)), e.to_string()))?;
                f_values.insert(k.clone(), c);
            }
        }
        let cutoff = field_u32(obj, "cutoff", "")?;
        let commands = match obj.get("commands") {
            None => Vec::new(),
            Some(Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c.as_str().map(str::to_owned).ok_or_else(|| config_err(format!("/commands/{i}"), "expected a string"))
                })
                .collect::<Result<_>>()?,
            Some(_) => return Err(config_err("/commands", "expected an array")),
        };
        Ok(JobConfig { datum, f_values, cutoff, commands })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        match &self.datum {
            DatumSource::Preset { name, n } => {
                obj.insert("preset".into(), json!(name));
                obj.insert("N".into(), json!(n));
            }
            DatumSource::Inline(spec) => {
                obj.insert("datum".into(), serde_json::to_value(spec).expect("datum specs serialize"));
            }
        }
        if !self.f_values.is_empty() {
            obj.insert("f_values".into(), serde_json::to_value(&self.f_values).expect("values serialize"));
        }
        if let Some(c) = self.cutoff {
            obj.insert("cutoff".into(), json!(c));
        }
        if !self.commands.is_empty() {
            obj.insert("commands".into(), json!(self.commands));
        }
        Value::Object(obj)
    }

    fn raw_datum(&self) -> Result<CartanDatum> {
        match &self.datum {
            DatumSource::Preset { name, n } => CartanDatum::preset(name, *n),
            DatumSource::Inline(spec) => CartanDatum::from_spec(spec),
        }
    }

    /// The datum, after the `f` values are checked for invariance and the
    /// datum itself is validated.
    pub fn datum(&self) -> Result<CartanDatum> {
        let d = self.raw_datum()?;
        self.generator_values(&d)?;
        if let Some(c) = d.validate().into_iter().find(|c| !c.pass) {
            return Err(Error::Datum(match c.witness {
                Some(w) => format!("{} fails: {w}", c.name),
                None => format!("{} fails", c.name),
            }));
        }
        Ok(d)
    }

    pub fn cutoff_for(&self, d: &CartanDatum) -> u32 {
        self.cutoff.unwrap_or_else(|| d.default_cutoff())
    }

    /// `f` on the generators of `K` in slot order; absent names are zero.
    pub fn generator_values(&self, d: &CartanDatum) -> Result<Vec<CycNum>> {
        let slots = d.slots();
        let normalize = |s: &str| s.replace('_', "");
        for key in self.f_values.keys() {
            if !slots.iter().any(|s| s.z_name == normalize(key)) {
                let names: Vec<&str> = slots.iter().map(|s| s.z_name.as_str()).collect();
                return Err(config_err(
                    format!("/f_values/{}", escape(key)),
                    format!("unknown generator; expected one of {}", names.join(", ")),
                ));
            }
        }
        let mut vals = Vec::with_capacity(slots.len());
        for slot in &slots {
            let v = self
                .f_values
                .iter()
                .find(|(k, _)| normalize(k) == slot.z_name)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(CycNum::zero);
            let deg = match slot.kind {
                SlotKind::Root => slot.deg.scaled(d.n),
                SlotKind::Linking => slot.deg.clone(),
            };
            if !v.is_zero() && !d.is_invariant(&deg) {
                let name = &slot.z_name;
                return Err(Error::Datum(format!("f({name}) ≠ 0 violates χ-invariance at generator {name}")));
            }
            vals.push(v);
        }
        Ok(vals)
    }
}

pub fn parse_config(path: &Path) -> Result<JobConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| config_err("", format!("invalid JSON: {e}")))?;
    JobConfig::from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_config_parses_and_round_trips() {
        let v = json!({"preset": "qplane", "N": 3, "f_values": {"z_1": 1, "z_2": 2, "z_21": 1}});
        let cfg = JobConfig::from_json(&v).unwrap();
        let d = cfg.datum().unwrap();
        assert_eq!(cfg.generator_values(&d).unwrap(), [1, 2, 1].map(CycNum::from_int));
        assert_eq!(JobConfig::from_json(&cfg.to_json()).unwrap(), cfg);
        let inline = JobConfig { datum: DatumSource::Inline(d.to_spec()), ..cfg.clone() };
        assert_eq!(JobConfig::from_json(&inline.to_json()).unwrap(), inline);
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let err = JobConfig::from_json(&json!({"preset": "qplane"})).unwrap_err();
        assert!(matches!(&err, Error::Config { pointer, .. } if pointer == "/N"), "{err}");
        let err = JobConfig::from_json(&json!({"datum": {"family": "A1", "theta": 1}})).unwrap_err();
        assert!(matches!(&err, Error::Config { pointer, .. } if pointer == "/datum/N"), "{err}");
        let err = JobConfig::from_json(&json!({"preset": "a1", "N": 3, "f_values": {"z": "x"}})).unwrap_err();
        assert!(matches!(&err, Error::Config { pointer, .. } if pointer == "/f_values/z"), "{err}");
        let err = JobConfig::from_json(&json!({"preset": "a1", "N": 3, "commands": [1]})).unwrap_err();
        assert!(matches!(&err, Error::Config { pointer, .. } if pointer == "/commands/0"), "{err}");
    }

    #[test]
    fn invariance_violation_names_the_generator() {
        // χ is ζ₉ on a second factor that g does not touch, so χ³ ≠ ε there
        let spec = DatumSpec {
            family: crate::datum::Family::A1,
            theta: 1,
            n: 3,
            group_orders: vec![9, 9],
            generator_images: vec![vec![1, 0]],
            character_values: vec![vec![CycNum::root_of_unity(9, 3), CycNum::root_of_unity(9, 1)]],
            linking: vec![],
        };
        let cfg = JobConfig {
            datum: DatumSource::Inline(spec),
            f_values: [("z".to_string(), CycNum::one())].into_iter().collect(),
            cutoff: None,
            commands: vec![],
        };
        let err = cfg.datum().unwrap_err();
        assert!(matches!(&err, Error::Datum(m) if m.contains("generator z")), "{err}");
        // without the offending value the datum's own defect is reported
        let ok = JobConfig { f_values: BTreeMap::new(), ..cfg };
        assert!(matches!(ok.datum().unwrap_err(), Error::Datum(m) if m.contains("chi_1^N")));
    }
}
