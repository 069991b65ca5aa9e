use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use essnorm_core::bounds::SearchConfig;
use essnorm_core::exact::format_rational;
use essnorm_core::hankel::BracketConfig;
use essnorm_core::symbol::{NumberLike, SymbolJson};
use essnorm_core::verify::VerifyConfig;
use essnorm_core::{ProductDomain, Symbol};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DomainConfig {
    pub r1: NumberLike,
    pub r2: NumberLike,
}

impl Default for DomainConfig {
    fn default() -> Self {
        DomainConfig { r1: NumberLike::Text("1".into()), r2: NumberLike::Text("1".into()) }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Format,
    pub timings: bool,
}

/// One JSON document per run. Every section except `symbol` has defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub domain: DomainConfig,
    pub symbol: Option<SymbolJson>,
    pub truncation: BracketConfig,
    pub search: SearchConfig,
    pub quadrature: VerifyConfig,
    pub output: OutputConfig,
}

/// Malformed or out-of-range configuration (exit code 2).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "configuration error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<essnorm_core::Error> for ConfigError {
    fn from(e: essnorm_core::Error) -> Self {
        ConfigError(e.to_string())
    }
}

/// Validated configuration with the exact domain and symbol built.
#[derive(Clone, Debug)]
pub struct Job {
    pub config: RunConfig,
    pub domain: ProductDomain,
    pub symbol: Option<Symbol>,
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn resolve(self) -> Result<Job, ConfigError> {
        let (r1, _) = self.domain.r1.parse()?;
        let (r2, _) = self.domain.r2.parse()?;
        let domain = ProductDomain::new(r1, r2)?;
        self.truncation.validate()?;
        self.search.validate()?;
        self.quadrature.validate()?;
        let symbol = self.symbol.as_ref().map(Symbol::try_from).transpose()?;
        Ok(Job { config: self, domain, symbol })
    }
}

impl Job {
    pub fn symbol(&self) -> Result<&Symbol, ConfigError> {
        self.symbol.as_ref().ok_or_else(|| ConfigError("config has no `symbol`".into()))
    }

    pub fn domain_strings(&self) -> (String, String) {
        (format_rational(self.domain.r1()), format_rational(self.domain.r2()))
    }
}
