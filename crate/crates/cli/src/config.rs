use std::collections::BTreeMap;
use std::path::Path;

pub const KEYS: [&str; 11] = [
    "j",
    "d",
    "t",
    "out",
    "seed",
    "precision",
    "threads",
    "j1",
    "j2",
    "samples",
    "id",
];

/// `key = value` pairs, one per line; `#` starts a comment.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value'", n + 1))?;
            let key = key.trim().trim_start_matches("--").to_ascii_lowercase();
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key '{key}'", n + 1));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag value if given, else the config value.
    pub fn pick(&self, flag: Option<&str>, key: &str) -> Option<String> {
        flag.or_else(|| self.get(key)).map(str::to_string)
    }
}
