use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ChannelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmKind {
    Repetition,
    Interleaved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeEntry {
    pub signature: String,
    pub algorithm: AlgorithmKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    /// Copies per packet, refined as evidence accumulates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<u32>,
    pub epoch_learned: u64,
}

/// Lessons learned by the antifragile protocol, keyed by channel signature.
/// Entries are never removed; only their copy count is refined.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeStore {
    #[serde(default)]
    entries: Vec<KnowledgeEntry>,
}

impl KnowledgeStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[KnowledgeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, signature: &str) -> Option<&KnowledgeEntry> {
        self.entries.iter().find(|e| e.signature == signature)
    }

    /// Records an entry unless the signature is already known. Returns whether
    /// the store grew.
    pub fn learn(&mut self, entry: KnowledgeEntry) -> bool {
        if self.lookup(&entry.signature).is_some() {
            return false;
        }
        self.entries.push(entry);
        true
    }

    /// Updates the copy count of a known signature. Returns whether anything
    /// changed.
    pub fn refine(&mut self, signature: &str, copies: u32) -> bool {
        match self.entries.iter_mut().find(|e| e.signature == signature) {
            Some(e) if e.copies != Some(copies) => {
                e.copies = Some(copies);
                true
            }
            _ => false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ChannelError> {
        let store: KnowledgeStore =
            serde_json::from_str(text).map_err(|e| ChannelError::StoreCorrupt(e.to_string()))?;
        for e in &store.entries {
            if e.algorithm == AlgorithmKind::Interleaved && !e.depth.is_some_and(|d| d >= 2) {
                return Err(ChannelError::StoreCorrupt(format!(
                    "entry `{}` is interleaved without a depth of at least 2",
                    e.signature
                )));
            }
        }
        Ok(store)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("store serializes");
        s.push('\n');
        s
    }

    /// Loads a store; a missing file is an empty store.
    pub fn load(path: &Path) -> Result<Self, ChannelError> {
        match fs::read_to_string(path) {
            Ok(text) => Self::from_json(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(ChannelError::Io(e)),
        }
    }

    /// Writes the store through a temporary sibling file and a rename.
    pub fn save(&self, path: &Path) -> Result<(), ChannelError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = Path::new(&tmp);
        {
            let mut f = fs::File::create(tmp)?;
            f.write_all(self.to_json().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(sig: &str, depth: u32) -> KnowledgeEntry {
        KnowledgeEntry {
            signature: sig.into(),
            algorithm: AlgorithmKind::Interleaved,
            depth: Some(depth),
            copies: None,
            epoch_learned: 1,
        }
    }

    #[test]
    fn json_layout() {
        let mut s = KnowledgeStore::new();
        s.learn(entry("bursty-high", 4));
        let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"entries":[{"signature":"bursty-high","algorithm":"interleaved","depth":4,"epoch_learned":1}]})
        );
    }

    #[test]
    fn learning_never_shrinks_or_overwrites() {
        let mut s = KnowledgeStore::new();
        assert!(s.learn(entry("bursty-high", 4)));
        assert!(!s.learn(entry("bursty-high", 9)));
        assert_eq!(s.len(), 1);
        assert_eq!(s.lookup("bursty-high").unwrap().depth, Some(4));
    }

    #[test]
    fn save_and_reload_byte_identically() {
        let dir = std::env::temp_dir().join(format!("ks-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("store.json");
        assert!(KnowledgeStore::load(&path).unwrap().is_empty());
        let mut s = KnowledgeStore::new();
        s.learn(entry("bursty-high", 6));
        s.save(&path).unwrap();
        let first = fs::read(&path).unwrap();
        let back = KnowledgeStore::load(&path).unwrap();
        assert_eq!(back, s);
        back.save(&path).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn corrupt_stores_are_rejected() {
        assert!(matches!(
            KnowledgeStore::from_json("{\"entries\": 3}"),
            Err(ChannelError::StoreCorrupt(_))
        ));
        assert!(matches!(
            KnowledgeStore::from_json(
                r#"{"entries":[{"signature":"x","algorithm":"interleaved","epoch_learned":0}]}"#
            ),
            Err(ChannelError::StoreCorrupt(_))
        ));
        assert!(KnowledgeStore::from_json("{}").unwrap().is_empty());
    }
}
