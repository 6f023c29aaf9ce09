use std::path::{Path, PathBuf};

/// The effective run configuration: config file keys overridden by flags,
/// output directory overridable by PERMCLASS_OUT_DIR (the only environment
/// hook).
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub n_max: Option<usize>,
    pub cert_len: Option<usize>,
    pub max_deg: Option<usize>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub csv: bool,
}

/// Hard cap for factorial-scale oracles.
pub const FACTORIAL_CAP: usize = class_engine::FACTORIAL_CAP;
/// Hard cap for class enumeration.
pub const ENUMERATION_CAP: usize = class_engine::ENUMERATION_CAP;

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            for (i, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), i + 1))?;
                let value = value.trim();
                let parse_usize =
                    |v: &str| v.parse::<usize>().map_err(|_| format!("{}:{}: bad number {v:?}", path.display(), i + 1));
                match key.trim() {
                    "n" | "n_max" => cfg.n_max = Some(parse_usize(value)?),
                    "cert_len" => cfg.cert_len = Some(parse_usize(value)?),
                    "max_deg" => cfg.max_deg = Some(parse_usize(value)?),
                    "out" => cfg.out = Some(PathBuf::from(value)),
                    "workers" => cfg.workers = Some(parse_usize(value)?),
                    "csv" => cfg.csv = value == "true" || value == "1",
                    other => return Err(format!("{}:{}: unknown key {other:?}", path.display(), i + 1)),
                }
            }
        }
        Ok(cfg)
    }

    /// Apply command-line overrides (flags win) and the environment output
    /// directory.
    pub fn finalize(
        mut self,
        out: Option<PathBuf>,
        csv: bool,
        workers: Option<usize>,
    ) -> Result<RunConfig, String> {
        if out.is_some() {
            self.out = out;
        }
        if csv {
            self.csv = true;
        }
        if workers.is_some() {
            self.workers = workers;
        }
        if let Ok(dir) = std::env::var("PERMCLASS_OUT_DIR") {
            if let Some(path) = &self.out {
                let file = path.file_name().ok_or("out path has no file name")?;
                self.out = Some(PathBuf::from(dir).join(file));
            }
        }
        if self.workers == Some(0) {
            return Err("workers must be at least 1".into());
        }
        Ok(self)
    }

    pub fn validate_lengths(&self, n_max: usize, cert_len: Option<usize>) -> Result<(), String> {
        if n_max > ENUMERATION_CAP {
            return Err(format!("n {n_max} exceeds the enumeration cap {ENUMERATION_CAP}"));
        }
        if let Some(c) = cert_len {
            if c > n_max {
                return Err(format!("certification length {c} exceeds n {n_max}"));
            }
        }
        Ok(())
    }
}
