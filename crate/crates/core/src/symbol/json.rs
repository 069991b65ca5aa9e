use serde::{Deserialize, Serialize};

use super::Symbol;
use crate::error::{Error, Result};
use crate::exact::{c_rat, format_rational, parse_rational, rat_from_f64, Rational};

/// Coefficient given either as a string (`"p/q"`, integer, decimal) or as a
/// bare JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberLike {
    Text(String),
    Number(serde_json::Number),
}

impl Default for NumberLike {
    fn default() -> Self {
        NumberLike::Text("0".into())
    }
}

impl NumberLike {
    /// Exact value plus whether it was written as an exact rational.
    pub fn parse(&self) -> Result<(Rational, bool)> {
        match self {
            NumberLike::Text(s) => parse_rational(s),
            NumberLike::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok((Rational::from_integer(i.into()), true))
                } else {
                    let x = n.as_f64().ok_or_else(|| Error::Parse(n.to_string()))?;
                    Ok((rat_from_f64(x)?, false))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(default)]
    pub z: u32,
    #[serde(default)]
    pub zbar: u32,
    #[serde(default)]
    pub w: u32,
    #[serde(default)]
    pub wbar: u32,
    #[serde(default)]
    pub re: NumberLike,
    #[serde(default)]
    pub im: NumberLike,
}

/// Wire form `{"terms":[{"z":a,"zbar":b,"w":c,"wbar":d,"re":"p/q","im":"p/q"}, ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub terms: Vec<TermJson>,
}

impl TryFrom<&SymbolJson> for Symbol {
    type Error = Error;

    fn try_from(j: &SymbolJson) -> Result<Symbol> {
        let mut exact = true;
        let mut s = Symbol::zero();
        for t in &j.terms {
            let (re, e1) = t.re.parse()?;
            let (im, e2) = t.im.parse()?;
            exact &= e1 && e2;
            s.add_term([t.z, t.zbar, t.w, t.wbar], c_rat(re, im));
        }
        Ok(s.with_exact(exact))
    }
}

impl From<&Symbol> for SymbolJson {
    fn from(s: &Symbol) -> SymbolJson {
        SymbolJson {
            terms: s
                .terms()
                .map(|(e, c)| TermJson {
                    z: e[0],
                    zbar: e[1],
                    w: e[2],
                    wbar: e[3],
                    re: NumberLike::Text(format_rational(&c.re)),
                    im: NumberLike::Text(format_rational(&c.im)),
                })
                .collect(),
        }
    }
}

impl Symbol {
    pub fn from_json_str(text: &str) -> Result<Symbol> {
        let j: SymbolJson = serde_json::from_str(text)?;
        Symbol::try_from(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&SymbolJson::from(self)).expect("symbol json")
    }
}
