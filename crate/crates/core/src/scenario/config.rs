//! Flat `key = value [unit]` scenario documents.
//!
//! ```text
//! # weigh a clock in a box
//! kind  = GEDANKEN_BOX
//! units = SI
//! output = box.csv
//! dq = 1e-6 m          # bare keys live in the kind's namespace (gedanken.dq)
//! gedanken.t = 1 s
//! gedanken.g = 9.81 m/s^2
//! ```
//!
//! Reserved keys: `kind`, `units` (`SI` | `NATURAL`, default `NATURAL`),
//! `seed` (default 0), `output`, and `sweep.param` with either
//! `sweep.values = v1, v2, ...` or `sweep.from`, `sweep.to`, `sweep.count`,
//! `sweep.spacing = linear | log`. A later line overrides an earlier one with
//! the same key.
//!
//! Untagged numbers are in the base units of the document's system (SI base
//! units, or natural units with `hbar = c = 1` and the second as base).

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::units::{convert_units, Dimension, Quantity, UnitContext, UnitSystem, C_SI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    GedankenBox,
    GedankenEfield,
    ClassicalTrajectory,
    ClassicalBrackets,
    QuantumMoments,
    QuantumBoundSweep,
    QuantumOptimize,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        Self::GedankenBox,
        Self::GedankenEfield,
        Self::ClassicalTrajectory,
        Self::ClassicalBrackets,
        Self::QuantumMoments,
        Self::QuantumBoundSweep,
        Self::QuantumOptimize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::GedankenBox => "GEDANKEN_BOX",
            Self::GedankenEfield => "GEDANKEN_EFIELD",
            Self::ClassicalTrajectory => "CLASSICAL_TRAJECTORY",
            Self::ClassicalBrackets => "CLASSICAL_BRACKETS",
            Self::QuantumMoments => "QUANTUM_MOMENTS",
            Self::QuantumBoundSweep => "QUANTUM_BOUND_SWEEP",
            Self::QuantumOptimize => "QUANTUM_OPTIMIZE",
        }
    }

    /// Namespace that bare parameter keys are placed in.
    pub fn namespace(self) -> &'static str {
        match self {
            Self::GedankenBox | Self::GedankenEfield => "gedanken",
            Self::ClassicalTrajectory | Self::ClassicalBrackets => "classical",
            _ => "quantum",
        }
    }

    /// Gedanken kinds compute in the document's units; the rest in natural units.
    pub fn computes_natively(self) -> bool {
        matches!(self, Self::GedankenBox | Self::GedankenEfield)
    }

    pub fn schema(self) -> &'static [ParamSpec] {
        use ParamUnit::*;
        use Requirement::*;
        const fn p(key: &'static str, unit: ParamUnit, req: Requirement) -> ParamSpec {
            ParamSpec { key, unit, req }
        }
        const BOX: &[ParamSpec] = &[
            p("gedanken.dq", Dim(Dimension::Length), Required),
            p("gedanken.t", Dim(Dimension::Time), Required),
            p("gedanken.g", Dim(Dimension::Acceleration), Required),
            p("gedanken.spring_k", SpringConstant, Optional),
            p("gedanken.spring_l", Dim(Dimension::Length), Optional),
        ];
        const EFIELD: &[ParamSpec] = &[
            p("gedanken.dq", Dim(Dimension::Length), Required),
            p("gedanken.t", Dim(Dimension::Time), Required),
            p("gedanken.v", Dim(Dimension::Speed), Required),
            p("gedanken.e_field", ElectricField, Default(0.0)),
            p("gedanken.charge", Charge, Default(0.0)),
        ];
        const TRAJECTORY: &[ParamSpec] = &[
            p(
                "classical.metric",
                Label(&["flat", "uniform", "isotropic"]),
                Default(0.0),
            ),
            p(
                "classical.rest_energy",
                Dim(Dimension::Energy),
                Default(1.0),
            ),
            p("classical.v", Dim(Dimension::Speed), Default(0.0)),
            p("classical.x0", Dim(Dimension::Length), Default(0.0)),
            p("classical.tau0", Dim(Dimension::Time), Default(0.0)),
            p("classical.t_end", Dim(Dimension::Time), Required),
            p("classical.dt", Dim(Dimension::Time), Default(1e-3)),
            p("classical.g", Dim(Dimension::Acceleration), Default(0.0)),
            p("classical.gm", NaturalOnly, Default(0.0)),
            p("classical.charge", NaturalOnly, Default(0.0)),
            p("classical.e_field", NaturalOnly, Default(0.0)),
            p("classical.b_field", NaturalOnly, Default(0.0)),
        ];
        const BRACKETS: &[ParamSpec] = &[
            p("classical.probes", Count, Default(50.0)),
            p(
                "classical.h_step",
                Dim(Dimension::Dimensionless),
                Default(crate::classical::brackets::DEFAULT_STEP),
            ),
        ];
        const MOMENTS: &[ParamSpec] = &[
            p("quantum.e0", Dim(Dimension::Energy), Required),
            p("quantum.sigma_e", Dim(Dimension::Energy), Required),
            p("quantum.p0", Dim(Dimension::Momentum), Default(0.0)),
            p("quantum.sigma_p", Dim(Dimension::Momentum), Required),
            p("quantum.tau0", Dim(Dimension::Time), Default(0.0)),
            p("quantum.t_max", Dim(Dimension::Time), Required),
            p("quantum.samples", Count, Default(11.0)),
            p("grid.e.n", Count, Optional),
            p("grid.p.n", Count, Optional),
            p(
                "grid.coverage",
                Dim(Dimension::Dimensionless),
                Default(12.0),
            ),
        ];
        const OPTIMIZE: &[ParamSpec] = &[
            p("quantum.e0", Dim(Dimension::Energy), Required),
            p("quantum.p0", Dim(Dimension::Momentum), Default(0.0)),
            p("quantum.sigma_p", Dim(Dimension::Momentum), Required),
            p("quantum.t", Dim(Dimension::Time), Required),
        ];
        match self {
            Self::GedankenBox => BOX,
            Self::GedankenEfield => EFIELD,
            Self::ClassicalTrajectory => TRAJECTORY,
            Self::ClassicalBrackets => BRACKETS,
            Self::QuantumMoments | Self::QuantumBoundSweep => MOMENTS,
            Self::QuantumOptimize => OPTIMIZE,
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

/// What a parameter measures, and so which unit tags it accepts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamUnit {
    Dim(Dimension),
    /// N/m
    SpringConstant,
    /// C
    Charge,
    /// V/m
    ElectricField,
    /// Natural-unit number with no SI reading (classical field strengths).
    NaturalOnly,
    /// Non-negative integer, untagged.
    Count,
    /// One of a fixed set of words; the first is the default.
    Label(&'static [&'static str]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Requirement {
    Required,
    Optional,
    Default(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpec {
    pub key: &'static str,
    pub unit: ParamUnit,
    pub req: Requirement,
}

/// A parameter exactly as written.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Number { value: f64, unit: Option<String> },
    Label(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Number {
                value,
                unit: Some(u),
            } => write!(f, "{value:e} {u}"),
            Self::Number { value, unit: None } => write!(f, "{value:e}"),
            Self::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    /// Fully qualified parameter key.
    pub param: String,
    pub values: Vec<ParamValue>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Explicitly given parameters, keyed by qualified name.
    pub params: BTreeMap<String, ParamValue>,
    pub sweep: Option<Sweep>,
    pub output: Option<PathBuf>,
    pub units: UnitSystem,
    pub seed: u64,
}

/// Parameters of one run after defaults, unit tags and system conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub kind: ScenarioKind,
    /// Numbers in the computation units (see [`ScenarioKind::computes_natively`]).
    pub values: BTreeMap<&'static str, f64>,
    pub labels: BTreeMap<&'static str, String>,
    pub units: UnitContext,
    /// The document's own system, for converting results back.
    pub io: UnitContext,
}

impl Resolved {
    pub fn get(&self, key: &str) -> f64 {
        self.values[key]
    }

    pub fn opt(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }

    pub fn count(&self, key: &str) -> usize {
        self.values[key] as usize
    }

    pub fn label(&self, key: &str) -> &str {
        &self.labels[key]
    }
}

const RESERVED: [&str; 10] = [
    "kind",
    "units",
    "seed",
    "output",
    "sweep.param",
    "sweep.values",
    "sweep.from",
    "sweep.to",
    "sweep.count",
    "sweep.spacing",
];

/// `(tag, what it measures, SI factor)`; `c` is handled separately.
const UNIT_TAGS: &[(&str, ParamUnit, f64)] = &[
    ("m", ParamUnit::Dim(Dimension::Length), 1.0),
    ("km", ParamUnit::Dim(Dimension::Length), 1e3),
    ("cm", ParamUnit::Dim(Dimension::Length), 1e-2),
    ("mm", ParamUnit::Dim(Dimension::Length), 1e-3),
    ("um", ParamUnit::Dim(Dimension::Length), 1e-6),
    ("nm", ParamUnit::Dim(Dimension::Length), 1e-9),
    ("s", ParamUnit::Dim(Dimension::Time), 1.0),
    ("ms", ParamUnit::Dim(Dimension::Time), 1e-3),
    ("us", ParamUnit::Dim(Dimension::Time), 1e-6),
    ("ns", ParamUnit::Dim(Dimension::Time), 1e-9),
    ("kg", ParamUnit::Dim(Dimension::Mass), 1.0),
    ("g", ParamUnit::Dim(Dimension::Mass), 1e-3),
    ("J", ParamUnit::Dim(Dimension::Energy), 1.0),
    ("eV", ParamUnit::Dim(Dimension::Energy), 1.602_176_634e-19),
    ("MeV", ParamUnit::Dim(Dimension::Energy), 1.602_176_634e-13),
    ("GeV", ParamUnit::Dim(Dimension::Energy), 1.602_176_634e-10),
    ("kg*m/s", ParamUnit::Dim(Dimension::Momentum), 1.0),
    ("N*s", ParamUnit::Dim(Dimension::Momentum), 1.0),
    (
        "eV/c",
        ParamUnit::Dim(Dimension::Momentum),
        1.602_176_634e-19 / C_SI,
    ),
    ("m/s", ParamUnit::Dim(Dimension::Speed), 1.0),
    ("km/s", ParamUnit::Dim(Dimension::Speed), 1e3),
    ("m/s^2", ParamUnit::Dim(Dimension::Acceleration), 1.0),
    ("1", ParamUnit::Dim(Dimension::Dimensionless), 1.0),
    ("N/m", ParamUnit::SpringConstant, 1.0),
    ("C", ParamUnit::Charge, 1.0),
    ("V/m", ParamUnit::ElectricField, 1.0),
    ("N/C", ParamUnit::ElectricField, 1.0),
];

fn split_value(text: &str) -> Result<(f64, Option<String>), String> {
    let text = text.trim();
    let (num, tag) = match text.find(char::is_whitespace) {
        Some(i) => (&text[..i], Some(text[i..].trim().to_string())),
        None => (text, None),
    };
    let value: f64 = num
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok((value, tag.filter(|t| !t.is_empty())))
}

/// Convert `value [tag]` for a parameter measured in `unit` into base units
/// of `system`.
pub(crate) fn apply_tag(
    value: f64,
    tag: Option<&str>,
    unit: ParamUnit,
    system: UnitSystem,
) -> Result<f64, String> {
    let Some(tag) = tag else {
        return Ok(value);
    };
    let ctx = UnitContext::for_system(system);
    if tag == "c" {
        return match unit {
            ParamUnit::Dim(Dimension::Speed) => Ok(value * ctx.c),
            _ => Err("unit tag `c` only applies to speeds".into()),
        };
    }
    let (_, tag_unit, factor) = UNIT_TAGS
        .iter()
        .find(|(t, _, _)| *t == tag)
        .ok_or_else(|| format!("unknown unit tag `{tag}`"))?;
    match unit {
        ParamUnit::Count | ParamUnit::Label(_) | ParamUnit::NaturalOnly => {
            return Err(format!("takes no unit tag (got `{tag}`)"))
        }
        _ if *tag_unit != unit => {
            return Err(format!(
                "unit tag mismatch: `{tag}` does not measure {}",
                describe(unit)
            ))
        }
        _ => {}
    }
    let si = value * factor;
    match (system, unit) {
        (UnitSystem::Si, _) => Ok(si),
        (UnitSystem::Natural, ParamUnit::Dim(dim)) => {
            Ok(convert_units(Quantity::new(si, dim), &UnitContext::si(), &ctx).value)
        }
        (UnitSystem::Natural, _) => Err(format!(
            "`{tag}` has no natural-unit reading; give a bare number"
        )),
    }
}

fn describe(unit: ParamUnit) -> String {
    match unit {
        ParamUnit::Dim(d) => format!("{d:?}").to_lowercase(),
        ParamUnit::SpringConstant => "force/length".into(),
        ParamUnit::Charge => "charge".into(),
        ParamUnit::ElectricField => "electric field".into(),
        ParamUnit::NaturalOnly => "a natural-unit number".into(),
        ParamUnit::Count => "a count".into(),
        ParamUnit::Label(_) => "a label".into(),
    }
}

fn resolve_one(
    spec: &ParamSpec,
    raw: &ParamValue,
    system: UnitSystem,
) -> Result<Resolution, String> {
    match (spec.unit, raw) {
        (ParamUnit::Label(words), ParamValue::Label(w)) => {
            let w = w.to_ascii_lowercase();
            if words.contains(&w.as_str()) {
                Ok(Resolution::Label(w))
            } else {
                Err(format!("`{w}` is not one of {}", words.join(", ")))
            }
        }
        (ParamUnit::Label(_), ParamValue::Number { value, .. }) => {
            Err(format!("expected a label, got {value}"))
        }
        (_, ParamValue::Label(w)) => Err(format!("`{w}` is not a number")),
        (ParamUnit::Count, ParamValue::Number { value, unit }) => {
            if unit.is_some() {
                return Err("a count takes no unit tag".into());
            }
            if *value < 0.0 || value.fract() != 0.0 || *value > 1e9 {
                return Err(format!("{value} is not a count"));
            }
            Ok(Resolution::Number(*value))
        }
        (ParamUnit::NaturalOnly, ParamValue::Number { value, unit }) => {
            if system != UnitSystem::Natural && *value != 0.0 {
                return Err("only available with `units = NATURAL`".into());
            }
            apply_tag(*value, unit.as_deref(), spec.unit, system).map(Resolution::Number)
        }
        (_, ParamValue::Number { value, unit }) => {
            apply_tag(*value, unit.as_deref(), spec.unit, system).map(Resolution::Number)
        }
    }
}

enum Resolution {
    Number(f64),
    Label(String),
}

fn parse_param(text: &str, unit: ParamUnit) -> Result<ParamValue, String> {
    if let ParamUnit::Label(_) = unit {
        return Ok(ParamValue::Label(text.trim().to_string()));
    }
    let (value, unit) = split_value(text)?;
    Ok(ParamValue::Number { value, unit })
}

/// All violations found in a document.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(e)?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

/// Parse and validate a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigErrors> {
    parse_config_with_overrides(text, &[])
}

/// As [`parse_config`], with `key=value` overrides applied after the document.
pub fn parse_config_with_overrides(
    text: &str,
    overrides: &[String],
) -> Result<ScenarioConfig, ConfigErrors> {
    let mut errors = Vec::new();
    // key -> (line label, raw value)
    let mut entries: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut order: BTreeMap<String, usize> = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => {
                let at = format!("line {}", n + 1);
                order.insert(at.clone(), order.len());
                entries.insert(k.trim().to_string(), (at, v.trim().to_string()));
            }
            _ => errors.push(format!("line {}: expected `key = value`", n + 1)),
        }
    }
    for o in overrides {
        match o.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => {
                let at = format!("--set {}", k.trim());
                order.insert(at.clone(), order.len());
                entries.insert(k.trim().to_string(), (at, v.trim().to_string()));
            }
            _ => errors.push(format!("--set `{o}`: expected `key=value`")),
        }
    }

    let kind = match entries.remove("kind") {
        Some((_, v)) => match v.parse::<ScenarioKind>() {
            Ok(k) => Some(k),
            Err(e) => {
                errors.push(e);
                None
            }
        },
        None => {
            errors.push("missing required key `kind`".into());
            None
        }
    };
    let units = match entries.remove("units") {
        Some((_, v)) => v.parse::<UnitSystem>().unwrap_or_else(|_| {
            errors.push(format!("`units`: `{v}` is not SI or NATURAL"));
            UnitSystem::Natural
        }),
        None => UnitSystem::Natural,
    };
    let seed = match entries.remove("seed") {
        Some((_, v)) => v.parse::<u64>().unwrap_or_else(|_| {
            errors.push(format!("`seed`: `{v}` is not a non-negative integer"));
            0
        }),
        None => 0,
    };
    let output = entries.remove("output").map(|(_, v)| PathBuf::from(v));
    let sweep_entries: BTreeMap<String, (String, String)> = RESERVED[4..]
        .iter()
        .filter_map(|k| entries.remove(*k).map(|v| (k.to_string(), v)))
        .collect();

    let Some(kind) = kind else {
        return Err(ConfigErrors(errors));
    };
    let qualify = |k: &str| {
        if k.contains('.') {
            k.to_string()
        } else {
            format!("{}.{k}", kind.namespace())
        }
    };
    let schema = kind.schema();
    let find = |k: &str| schema.iter().find(|s| s.key == k);

    // document order, so a qualified override beats an earlier bare key
    let mut ordered: Vec<_> = entries.into_iter().collect();
    ordered.sort_by_key(|(_, (at, _))| order[at]);
    let mut params = BTreeMap::new();
    for (key, (at, raw)) in ordered {
        let q = qualify(&key);
        match find(&q) {
            None => errors.push(format!("{at}: unknown key `{key}` for {kind}")),
            Some(spec) => match parse_param(&raw, spec.unit) {
                Ok(v) => {
                    params.insert(q, v);
                }
                Err(e) => errors.push(format!("`{q}`: {e}")),
            },
        }
    }
    for spec in schema {
        if spec.req == Requirement::Required && !params.contains_key(spec.key) {
            errors.push(format!("missing required key `{}`", spec.key));
        }
    }

    let sweep = parse_sweep(&sweep_entries, &qualify, &find, &mut errors);
    let config = ScenarioConfig {
        kind,
        params,
        sweep,
        output,
        units,
        seed,
    };
    for member in config.members() {
        if let Err(mut e) = config.resolve(&member) {
            for v in e.drain(..) {
                if !errors.contains(&v) {
                    errors.push(v);
                }
            }
        }
    }
    if errors.is_empty() {
        Ok(config)
    } else {
        Err(ConfigErrors(errors))
    }
}

fn parse_sweep<'s>(
    entries: &BTreeMap<String, (String, String)>,
    qualify: &dyn Fn(&str) -> String,
    find: &dyn Fn(&str) -> Option<&'s ParamSpec>,
    errors: &mut Vec<String>,
) -> Option<Sweep> {
    if entries.is_empty() {
        return None;
    }
    let Some((_, name)) = entries.get("sweep.param") else {
        errors.push("sweep keys given without `sweep.param`".into());
        return None;
    };
    let param = qualify(name);
    let Some(spec) = find(&param) else {
        errors.push(format!(
            "sweep parameter `{name}` does not exist for this kind"
        ));
        return None;
    };
    if let ParamUnit::Label(_) = spec.unit {
        errors.push(format!("sweep parameter `{name}` is a label"));
        return None;
    }
    let get = |k: &str| entries.get(k).map(|(_, v)| v.as_str());
    let values = match (get("sweep.values"), get("sweep.from"), get("sweep.to")) {
        (Some(list), None, None) => {
            if get("sweep.count").is_some() || get("sweep.spacing").is_some() {
                errors.push(
                    "`sweep.count`/`sweep.spacing` apply to ranges, not `sweep.values`".into(),
                );
            }
            let mut out = Vec::new();
            for item in list.split(',') {
                match split_value(item) {
                    Ok((value, unit)) => out.push(ParamValue::Number { value, unit }),
                    Err(e) => errors.push(format!("`sweep.values`: {e}")),
                }
            }
            out
        }
        (None, Some(from), Some(to)) => {
            let count = match get("sweep.count").map(str::parse::<usize>) {
                Some(Ok(n)) if n >= 1 => n,
                Some(_) => {
                    errors.push("`sweep.count` must be a positive integer".into());
                    return None;
                }
                None => {
                    errors.push("missing required key `sweep.count`".into());
                    return None;
                }
            };
            let log = match get("sweep.spacing").unwrap_or("linear") {
                "linear" => false,
                "log" => true,
                other => {
                    errors.push(format!("`sweep.spacing`: `{other}` is not linear or log"));
                    return None;
                }
            };
            let (a, b) = match (split_value(from), split_value(to)) {
                (Ok(a), Ok(b)) => (a, b),
                (a, b) => {
                    for e in [a.err(), b.err()].into_iter().flatten() {
                        errors.push(format!("sweep range: {e}"));
                    }
                    return None;
                }
            };
            if a.1 != b.1 {
                errors.push("`sweep.from` and `sweep.to` must carry the same unit tag".into());
                return None;
            }
            if log && !(a.0 > 0.0 && b.0 > 0.0) {
                errors.push("log-spaced sweep needs positive bounds".into());
                return None;
            }
            (0..count)
                .map(|i| {
                    let s = if count == 1 {
                        0.0
                    } else {
                        i as f64 / (count - 1) as f64
                    };
                    let value = if log {
                        (a.0.ln() + s * (b.0.ln() - a.0.ln())).exp()
                    } else {
                        a.0 + s * (b.0 - a.0)
                    };
                    ParamValue::Number {
                        value,
                        unit: a.1.clone(),
                    }
                })
                .collect()
        }
        _ => {
            errors.push(
                "sweep needs either `sweep.values` or both `sweep.from` and `sweep.to`".into(),
            );
            return None;
        }
    };
    if values.is_empty() {
        errors.push("sweep has no values".into());
        return None;
    }
    Some(Sweep { param, values })
}

impl ScenarioConfig {
    /// Parameter maps of every run: one per sweep value, or just `params`.
    pub fn members(&self) -> Vec<BTreeMap<String, ParamValue>> {
        match &self.sweep {
            None => vec![self.params.clone()],
            Some(s) => s
                .values
                .iter()
                .map(|v| {
                    let mut p = self.params.clone();
                    p.insert(s.param.clone(), v.clone());
                    p
                })
                .collect(),
        }
    }

    /// Apply defaults, tags and unit conversion to one member's parameters.
    pub fn resolve(&self, params: &BTreeMap<String, ParamValue>) -> Result<Resolved, Vec<String>> {
        let mut errors = Vec::new();
        let io = UnitContext::for_system(self.units);
        let units = if self.kind.computes_natively() {
            io
        } else {
            UnitContext::natural()
        };
        let mut values = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for spec in self.kind.schema() {
            match (params.get(spec.key), spec.req, spec.unit) {
                (Some(raw), _, _) => match resolve_one(spec, raw, self.units) {
                    Ok(Resolution::Number(v)) => {
                        let v = match spec.unit {
                            ParamUnit::Dim(dim) if !self.kind.computes_natively() => {
                                convert_units(Quantity::new(v, dim), &io, &units).value
                            }
                            _ => v,
                        };
                        values.insert(spec.key, v);
                    }
                    Ok(Resolution::Label(l)) => {
                        labels.insert(spec.key, l);
                    }
                    Err(e) => errors.push(format!("`{}`: {e}", spec.key)),
                },
                (None, Requirement::Default(_), ParamUnit::Label(words)) => {
                    labels.insert(spec.key, words[0].to_string());
                }
                (None, Requirement::Default(d), _) => {
                    values.insert(spec.key, d);
                }
                _ => {}
            }
        }
        check_ranges(self.kind, &values, units.c, &mut errors);
        if errors.is_empty() {
            Ok(Resolved {
                kind: self.kind,
                values,
                labels,
                units,
                io,
            })
        } else {
            Err(errors)
        }
    }
}

/// Structural limits that are cheaper to report as config errors than as
/// runtime failures.
fn check_ranges(
    kind: ScenarioKind,
    values: &BTreeMap<&'static str, f64>,
    c: f64,
    errors: &mut Vec<String>,
) {
    for (key, v) in values {
        if !v.is_finite() {
            errors.push(format!("`{key}` = {v}: must be finite"));
        }
    }
    let mut need = |key: &str, ok: &dyn Fn(f64) -> bool, what: &str| {
        if let Some(&v) = values.get(key) {
            if v.is_finite() && !ok(v) {
                errors.push(format!("`{key}` = {v}: {what}"));
            }
        }
    };
    let positive = |v: f64| v > 0.0;
    match kind {
        ScenarioKind::GedankenBox => {
            for key in [
                "gedanken.dq",
                "gedanken.t",
                "gedanken.g",
                "gedanken.spring_k",
            ] {
                need(key, &positive, "must be positive");
            }
            need("gedanken.spring_l", &|v| v >= 0.0, "must be non-negative");
        }
        ScenarioKind::GedankenEfield => {
            need("gedanken.dq", &positive, "must be positive");
            need("gedanken.t", &positive, "must be positive");
            need("gedanken.v", &|v| v > 0.0 && v < c, "must lie in (0, c)");
        }
        ScenarioKind::ClassicalBrackets => {
            need("classical.probes", &|v| v >= 1.0, "need at least one probe");
            need("classical.h_step", &positive, "must be positive");
        }
        ScenarioKind::ClassicalTrajectory => {
            need("classical.dt", &positive, "must be positive");
            need("classical.t_end", &|v| v >= 0.0, "must be non-negative");
            need("classical.rest_energy", &positive, "must be positive");
            need("classical.v", &|v| v.abs() < c, "must be slower than light");
        }
        ScenarioKind::QuantumMoments | ScenarioKind::QuantumBoundSweep => {
            need("quantum.sigma_e", &positive, "must be positive");
            need("quantum.sigma_p", &positive, "must be positive");
            need(
                "quantum.samples",
                &|v| v >= 2.0,
                "need at least two samples",
            );
            need("quantum.t_max", &positive, "must be positive");
            need(
                "grid.coverage",
                &|v| v >= 8.0,
                "windows must cover at least 8 sigma",
            );
            for key in ["grid.e.n", "grid.p.n"] {
                need(
                    key,
                    &|v| v >= 8.0 && (v as u64).is_power_of_two(),
                    "must be a power of two >= 8",
                );
            }
        }
        ScenarioKind::QuantumOptimize => {
            need("quantum.sigma_p", &positive, "must be positive");
            need("quantum.t", &positive, "must be positive");
            need("quantum.e0", &|v| v != 0.0, "must be non-zero");
        }
    }
}
