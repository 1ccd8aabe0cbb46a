use std::collections::BTreeMap;
use std::fmt::Write;

use qwalk_core::graphs::{build_graph, Graph, GraphFamily};
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Int,
    Float,
    /// comma-separated floats
    Floats,
    /// one of the listed words
    Choice(&'static [&'static str]),
    /// `auto` or a nonnegative integer
    AutoInt,
    /// `auto` or a float
    AutoFloat,
    /// family:size, e.g. `cycle:9`
    Graph,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

pub const fn p(key: &'static str, kind: Kind, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { key, kind, default, help }
}

#[derive(Debug, Clone)]
enum Parsed {
    Int(i64),
    Float(f64),
    Floats(Vec<f64>),
    Word(String),
    Auto,
}

/// Validated parameters with defaults filled in.
#[derive(Debug, Clone)]
pub struct Params {
    values: BTreeMap<&'static str, (Kind, Parsed)>,
    order: Vec<&'static str>,
}

/// `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_params_file(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(split_pair(line).map_err(|e| CliError::Param(format!("params file line {}: {e}", i + 1)))?);
    }
    Ok(out)
}

pub fn split_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, got '{s}'")),
    }
}

fn parse_value(spec: &ParamSpec, raw: &str) -> Result<Parsed, String> {
    let bad = |what: &str| format!("parameter '{}': expected {what}, got '{raw}'", spec.key);
    Ok(match spec.kind {
        Kind::Int => Parsed::Int(raw.parse().map_err(|_| bad("an integer"))?),
        Kind::Float => Parsed::Float(parse_float(raw).ok_or_else(|| bad("a number"))?),
        Kind::Floats => Parsed::Floats(
            raw.split(',')
                .map(|x| parse_float(x.trim()))
                .collect::<Option<Vec<_>>>()
                .filter(|v| !v.is_empty())
                .ok_or_else(|| bad("comma-separated numbers"))?,
        ),
        Kind::Choice(options) => {
            if !options.contains(&raw) {
                return Err(bad(&format!("one of {}", options.join("|"))));
            }
            Parsed::Word(raw.to_string())
        }
        Kind::AutoInt if raw == "auto" => Parsed::Auto,
        Kind::AutoInt => Parsed::Int(raw.parse().ok().filter(|&v: &i64| v >= 0).ok_or_else(|| bad("auto or an integer >= 0"))?),
        Kind::AutoFloat if raw == "auto" => Parsed::Auto,
        Kind::AutoFloat => Parsed::Float(parse_float(raw).ok_or_else(|| bad("auto or a number"))?),
        Kind::Graph => {
            parse_graph(raw).map_err(|e| format!("parameter '{}': {e}", spec.key))?;
            Parsed::Word(raw.to_string())
        }
    })
}

fn parse_float(s: &str) -> Option<f64> {
    match s {
        "pi" => Some(std::f64::consts::PI),
        _ => s.parse::<f64>().ok().filter(|x| x.is_finite()),
    }
}

/// line:n, cycle:n, complete:n, hypercube:d, star:n, glued:n
pub fn parse_graph(s: &str) -> Result<Graph, String> {
    let (fam, size) = s.split_once(':').ok_or_else(|| format!("graph must be family:size, got '{s}'"))?;
    let n: usize = size.parse().map_err(|_| format!("bad graph size '{size}'"))?;
    let family = match fam {
        "line" => GraphFamily::Line(n),
        "cycle" => GraphFamily::Cycle(n),
        "complete" => GraphFamily::Complete { n, loops: false },
        "hypercube" => GraphFamily::Hypercube(n),
        "star" => GraphFamily::Star(n),
        "glued" => GraphFamily::GluedTrees(n),
        _ => return Err(format!("unknown graph family '{fam}' (line, cycle, complete, hypercube, star, glued)")),
    };
    build_graph(&family).map_err(|e| e.to_string())
}

impl Params {
    /// Defaults, overridden in order by each (key, value).
    pub fn resolve(schema: &[ParamSpec], given: &[(String, String)]) -> Result<Self, CliError> {
        let mut raw: BTreeMap<&'static str, String> = schema.iter().map(|s| (s.key, s.default.to_string())).collect();
        for (k, v) in given {
            let spec = schema.iter().find(|s| s.key == k).ok_or_else(|| {
                let known: Vec<&str> = schema.iter().map(|s| s.key).collect();
                CliError::Param(format!("unknown parameter '{k}' (accepted: {})", known.join(", ")))
            })?;
            raw.insert(spec.key, v.clone());
        }
        let mut values = BTreeMap::new();
        for spec in schema {
            let parsed = parse_value(spec, &raw[spec.key]).map_err(CliError::Param)?;
            values.insert(spec.key, (spec.kind, parsed));
        }
        Ok(Params { values, order: schema.iter().map(|s| s.key).collect() })
    }

    fn get(&self, key: &str) -> &Parsed {
        &self.values.get(key).unwrap_or_else(|| panic!("parameter '{key}' missing from schema")).1
    }

    pub fn int(&self, key: &str) -> i64 {
        match self.get(key) {
            Parsed::Int(v) => *v,
            other => panic!("parameter '{key}' is {other:?}, not an integer"),
        }
    }

    /// Nonnegative integer parameter, rejected otherwise.
    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        usize::try_from(self.int(key)).map_err(|_| CliError::Param(format!("parameter '{key}' must be nonnegative")))
    }

    pub fn float(&self, key: &str) -> f64 {
        match self.get(key) {
            Parsed::Float(v) => *v,
            other => panic!("parameter '{key}' is {other:?}, not a number"),
        }
    }

    pub fn floats(&self, key: &str) -> &[f64] {
        match self.get(key) {
            Parsed::Floats(v) => v,
            other => panic!("parameter '{key}' is {other:?}, not a list"),
        }
    }

    pub fn word(&self, key: &str) -> &str {
        match self.get(key) {
            Parsed::Word(v) => v,
            other => panic!("parameter '{key}' is {other:?}, not a word"),
        }
    }

    pub fn auto_usize(&self, key: &str) -> Option<usize> {
        match self.get(key) {
            Parsed::Auto => None,
            Parsed::Int(v) => Some(*v as usize),
            other => panic!("parameter '{key}' is {other:?}"),
        }
    }

    pub fn auto_float(&self, key: &str) -> Option<f64> {
        match self.get(key) {
            Parsed::Auto => None,
            Parsed::Float(v) => Some(*v),
            other => panic!("parameter '{key}' is {other:?}"),
        }
    }

    pub fn graph(&self, key: &str) -> Result<Graph, CliError> {
        parse_graph(self.word(key)).map_err(CliError::Param)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for key in &self.order {
            let v = match &self.values[key].1 {
                Parsed::Int(v) => Value::from(*v),
                Parsed::Float(v) => Value::from(*v),
                Parsed::Floats(v) => Value::from(v.clone()),
                Parsed::Word(v) => Value::from(v.clone()),
                Parsed::Auto => Value::from("auto"),
            };
            m.insert(key.to_string(), v);
        }
        Value::Object(m)
    }
}

pub fn describe(schema: &[ParamSpec]) -> String {
    let mut s = String::new();
    for spec in schema {
        let kind = match spec.kind {
            Kind::Int => "int".to_string(),
            Kind::Float => "float".to_string(),
            Kind::Floats => "floats".to_string(),
            Kind::Choice(c) => c.join("|"),
            Kind::AutoInt => "auto|int".to_string(),
            Kind::AutoFloat => "auto|float".to_string(),
            Kind::Graph => "graph".to_string(),
        };
        let _ = writeln!(s, "    {:<12} {:<22} default {:<12} {}", spec.key, kind, spec.default, spec.help);
    }
    s
}
