//! Flat `key = value` experiment configs and their per-scenario schemas.
//!
//! Format: one `key = value` pair per line; `#` starts a comment; blank
//! lines are ignored. Keys are lowercase kebab-case. List values are
//! comma-separated. Real values accept `a/b` fractions (useful for exact
//! decay exponents like `1/6`). Unknown or duplicate keys are config errors.

use std::collections::HashMap;

use mtm_core::weights::WeightKind;

/// Errors split by exit code: config problems exit 2, runtime failures 3.
#[derive(Debug)]
pub enum AppError {
    Config(String),
    Runtime(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 2,
            AppError::Runtime(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            AppError::Config(m) | AppError::Runtime(m) => m,
        }
    }
}

impl From<mtm_core::Error> for AppError {
    fn from(e: mtm_core::Error) -> Self {
        // Invalid parameter combinations reaching the library are config
        // mistakes (bad candidate counts, scales, grids); everything else
        // is a runtime failure.
        match e {
            mtm_core::Error::InvalidConfig(_) => AppError::Config(e.to_string()),
            _ => AppError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Runtime(e.to_string())
    }
}

fn config_err<T>(msg: impl Into<String>) -> Result<T, AppError> {
    Err(AppError::Config(msg.into()))
}

/// Parsed config file with consumption tracking: every key must be claimed
/// by the scenario schema or `finish()` reports it as unknown.
pub struct ConfigMap {
    values: HashMap<String, String>,
    claimed: Vec<String>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self, AppError> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return config_err(format!(
                    "config line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return config_err(format!("config line {}: empty key", lineno + 1));
            }
            if values.insert(key.clone(), value).is_some() {
                return config_err(format!("duplicate config key `{key}`"));
            }
        }
        Ok(ConfigMap {
            values,
            claimed: Vec::new(),
        })
    }

    fn claim(&mut self, key: &str) -> Option<String> {
        self.claimed.push(key.to_string());
        self.values.get(key).cloned()
    }

    pub fn get_str(&mut self, key: &str, default: &str) -> String {
        self.claim(key).unwrap_or_else(|| default.to_string())
    }

    pub fn get_f64(&mut self, key: &str, default: f64) -> Result<f64, AppError> {
        match self.claim(key) {
            Some(v) => parse_real(&v).map_err(|e| AppError::Config(format!("key `{key}`: {e}"))),
            None => Ok(default),
        }
    }

    pub fn get_usize(&mut self, key: &str, default: usize) -> Result<usize, AppError> {
        match self.claim(key) {
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| AppError::Config(format!("key `{key}`: `{v}` is not a count"))),
            None => Ok(default),
        }
    }

    pub fn get_f64_list(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>, AppError> {
        match self.claim(key) {
            Some(v) => {
                let items = split_list(key, &v)?;
                items
                    .iter()
                    .map(|t| {
                        parse_real(t).map_err(|e| AppError::Config(format!("key `{key}`: {e}")))
                    })
                    .collect()
            }
            None => Ok(default.to_vec()),
        }
    }

    pub fn get_usize_list(&mut self, key: &str, default: &[usize]) -> Result<Vec<usize>, AppError> {
        match self.claim(key) {
            Some(v) => {
                let items = split_list(key, &v)?;
                items
                    .iter()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| {
                            AppError::Config(format!("key `{key}`: `{t}` is not a count"))
                        })
                    })
                    .collect()
            }
            None => Ok(default.to_vec()),
        }
    }

    /// Candidate-pool list: positive integers plus the token `ideal` for the
    /// unbounded-pool scheme.
    pub fn get_pool_list(&mut self, key: &str, default: &[Pool]) -> Result<Vec<Pool>, AppError> {
        match self.claim(key) {
            Some(v) => {
                let items = split_list(key, &v)?;
                items
                    .iter()
                    .map(|t| {
                        if t.eq_ignore_ascii_case("ideal") {
                            Ok(Pool::Ideal)
                        } else {
                            t.parse::<usize>().map(Pool::Finite).map_err(|_| {
                                AppError::Config(format!(
                                    "key `{key}`: `{t}` is neither a candidate count nor `ideal`"
                                ))
                            })
                        }
                    })
                    .collect()
            }
            None => Ok(default.to_vec()),
        }
    }

    pub fn get_weights(
        &mut self,
        key: &str,
        default: &[WeightKind],
    ) -> Result<Vec<WeightKind>, AppError> {
        match self.claim(key) {
            Some(v) => {
                let items = split_list(key, &v)?;
                items.iter().map(|t| parse_weight(t)).collect()
            }
            None => Ok(default.to_vec()),
        }
    }

    pub fn get_target(&mut self, key: &str) -> Result<TargetKind, AppError> {
        match self.claim(key).as_deref() {
            None | Some("normal") => Ok(TargetKind::Normal),
            Some("laplace") => Ok(TargetKind::Laplace),
            Some(other) => config_err(format!(
                "key `{key}`: unknown target `{other}` (normal | laplace)"
            )),
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    /// Error on any key the scenario schema never claimed.
    pub fn finish(self) -> Result<(), AppError> {
        let mut unknown: Vec<&String> = self
            .values
            .keys()
            .filter(|k| !self.claimed.contains(k))
            .collect();
        unknown.sort();
        if unknown.is_empty() {
            Ok(())
        } else {
            config_err(format!(
                "unknown config key(s): {}",
                unknown
                    .iter()
                    .map(|k| format!("`{k}`"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
    }
}

fn split_list(key: &str, value: &str) -> Result<Vec<String>, AppError> {
    let items: Vec<String> = value
        .split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    if items.is_empty() {
        return config_err(format!("key `{key}`: grid must be nonempty"));
    }
    Ok(items)
}

fn parse_real(token: &str) -> Result<f64, String> {
    let value = if let Some((num, den)) = token.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("`{token}` is not a real number"))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| format!("`{token}` is not a real number"))?;
        if d == 0.0 {
            return Err(format!("`{token}` divides by zero"));
        }
        n / d
    } else {
        token
            .parse()
            .map_err(|_| format!("`{token}` is not a real number"))?
    };
    // `f64::from_str` accepts `nan`/`inf`, but no experiment parameter is
    // meaningful (or loop-safe) at those values.
    if !value.is_finite() {
        return Err(format!("`{token}` is not finite"));
    }
    Ok(value)
}

pub fn parse_weight(token: &str) -> Result<WeightKind, AppError> {
    match token {
        "gb" => Ok(WeightKind::Gb),
        "sqrt" => Ok(WeightKind::Sqrt),
        "barker" => Ok(WeightKind::Barker),
        other => config_err(format!(
            "unknown weight kind `{other}` (gb | sqrt | barker)"
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    Normal,
    Laplace,
}

impl TargetKind {
    pub fn name(self) -> &'static str {
        match self {
            TargetKind::Normal => "normal",
            TargetKind::Laplace => "laplace",
        }
    }

    pub fn build(self, dim: usize) -> mtm_core::Target {
        match self {
            TargetKind::Normal => mtm_core::Target::product_normal(dim),
            TargetKind::Laplace => mtm_core::Target::product_laplace(dim),
        }
    }
}

/// Candidate-pool size: a finite count or the unbounded-pool limit scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pool {
    Finite(usize),
    Ideal,
}
