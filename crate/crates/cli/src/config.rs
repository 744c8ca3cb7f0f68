//! Run configuration: defaults, config-file parsing, flag overrides.
//!
//! Config files are plain `key = value` lines with `#` comments. Recognized
//! keys: `guard`, `shards`, `output_dir`, `format`, and `field.poly.<m>`
//! (hex, overriding the default primitive polynomial for that m).

use cyclic_designs::{Error, FieldCtx, DEFAULT_GUARD};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub guard: usize,
    pub shards: usize,
    pub format: Format,
    pub output_dir: Option<PathBuf>,
    pub field_polys: BTreeMap<u32, u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            guard: DEFAULT_GUARD,
            shards: 0,
            format: Format::Text,
            output_dir: None,
            field_polys: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig::default();
        cfg.apply_file(path)?;
        Ok(cfg)
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!(
                    "{}:{}: expected key=value",
                    path.display(),
                    lineno + 1
                ))
            })?;
            self.apply_key(key.trim(), value.trim())
                .map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        }
        Ok(())
    }

    fn apply_key(&mut self, key: &str, value: &str) -> Result<(), Error> {
        let bad = |what: &str| Error::Parse(format!("bad {what} value {value:?}"));
        match key {
            "guard" => self.guard = value.parse().map_err(|_| bad("guard"))?,
            "shards" => self.shards = value.parse().map_err(|_| bad("shards"))?,
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            "format" => {
                self.format = match value {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return Err(bad("format")),
                }
            }
            _ => {
                if let Some(m) = key.strip_prefix("field.poly.") {
                    let m: u32 = m.parse().map_err(|_| bad("field.poly key"))?;
                    let hex = value.trim_start_matches("0x").trim_start_matches("0X");
                    let poly = u32::from_str_radix(hex, 16).map_err(|_| bad("field.poly"))?;
                    self.field_polys.insert(m, poly);
                } else {
                    return Err(Error::Parse(format!("unknown config key {key:?}")));
                }
            }
        }
        Ok(())
    }

    /// Field context for m, honoring a configured polynomial override.
    pub fn field_ctx(&self, m: u32) -> Result<FieldCtx, Error> {
        match self.field_polys.get(&m) {
            Some(&poly) => FieldCtx::with_poly(m, poly),
            None => FieldCtx::new(m),
        }
    }

    /// Enumeration guard clamped to the u64 message-word limit.
    pub fn guard63(&self) -> usize {
        self.guard.min(63)
    }
}
