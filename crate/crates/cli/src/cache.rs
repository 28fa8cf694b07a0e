//! Content-addressed cache of orbit decompositions.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rowlab_core::{ElementSet, Ideal, OrbitDecomposition, Poset, RowmotionMethod};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "ROWLAB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    elements: Vec<String>,
    action: String,
    orbits: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    Invalid,
}

pub struct OrbitCache {
    dir: PathBuf,
}

pub fn action_name(method: RowmotionMethod) -> &'static str {
    match method {
        RowmotionMethod::Generators => "rowmotion",
        RowmotionMethod::Toggles => "rowmotion-toggles",
    }
}

/// SHA-256 of the poset signature and the action.
pub fn cache_key(poset: &Poset, action: &str) -> String {
    let signature = serde_json::to_string(&poset.to_spec()).expect("poset spec serializes");
    let mut h = Sha256::new();
    h.update(signature.as_bytes());
    h.update([0]);
    h.update(action.as_bytes());
    hex::encode(h.finalize())
}

impl OrbitCache {
    pub fn from_env() -> OrbitCache {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".rowlab-cache"));
        OrbitCache { dir }
    }

    pub fn at(dir: impl Into<PathBuf>) -> OrbitCache {
        OrbitCache { dir: dir.into() }
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Returns the cached orbits if the entry exists and survives validation.
    pub fn load(&self, poset: &Poset, method: RowmotionMethod) -> (Lookup, Option<OrbitDecomposition>) {
        let action = action_name(method);
        let key = cache_key(poset, action);
        let path = self.path(&key);
        let Ok(text) = fs::read_to_string(&path) else { return (Lookup::Miss, None) };
        match validate(&text, &key, action, poset, method) {
            Ok(d) => (Lookup::Hit, Some(d)),
            Err(why) => {
                eprintln!("warning: cache entry {} is invalid ({why}); recomputing", path.display());
                (Lookup::Invalid, None)
            }
        }
    }

    pub fn store(&self, poset: &Poset, method: RowmotionMethod, d: &OrbitDecomposition) -> std::io::Result<PathBuf> {
        let action = action_name(method);
        let key = cache_key(poset, action);
        let entry = Entry {
            key: key.clone(),
            elements: poset.names().to_vec(),
            action: action.to_string(),
            orbits: d.orbits.iter().map(|o| o.iter().map(|i| i.members().collect()).collect()).collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&entry).expect("entry serializes"))?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

fn validate(text: &str, key: &str, action: &str, poset: &Poset, method: RowmotionMethod) -> Result<OrbitDecomposition, String> {
    let entry: Entry = serde_json::from_str(text).map_err(|e| format!("unreadable: {e}"))?;
    if entry.key != key || entry.action != action || entry.elements != poset.names() {
        return Err("signature mismatch".into());
    }
    let n = poset.len();
    let mut seen = HashSet::new();
    let mut orbits = Vec::with_capacity(entry.orbits.len());
    for raw in &entry.orbits {
        if raw.is_empty() {
            return Err("empty orbit".into());
        }
        let mut orbit = Vec::with_capacity(raw.len());
        for members in raw {
            if members.iter().any(|&m| m >= n) {
                return Err("element index out of range".into());
            }
            let ideal = poset.ideal(ElementSet::from_indices(n, members.iter().copied())).map_err(|_| "not an order ideal")?;
            if !seen.insert(ideal.clone()) {
                return Err("ideal listed twice".into());
            }
            orbit.push(ideal);
        }
        let step: Ideal = poset.rowmotion(&orbit[0], method);
        if step != orbit[1 % orbit.len()] {
            return Err("rowmotion spot check failed".into());
        }
        orbits.push(orbit);
    }
    Ok(OrbitDecomposition { orbits })
}
