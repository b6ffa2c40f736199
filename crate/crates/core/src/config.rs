//! The system config format.
//!
//! A finite system:
//!
//! ```toml
//! label = "rotation"
//! [space]
//! points = 3
//! metric = "cycle"            # "discrete", "line", "cycle", or rows = [[...]]
//! [group]
//! kind = "free_abelian"       # or "finite"
//! abelian = true
//! generators = [[1, 2, 0]]
//! ```
//!
//! A shift space uses `[sft]` with `alphabet` and `forbidden` words, or
//! `matrix` rows (optionally with `labels`). A builtin system is written
//! `builtin = "cyclic_rotation(3)"`. Distances are integers, decimals or
//! `"p/q"` strings and are kept exact.

use std::fmt;
use std::ops::Range;
use std::path::Path;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;
use toml::de::{DeTable, DeValue};
use toml::Spanned;

use crate::group::{ActionSystem, GroupError, GroupKind, GroupSpec, Permutation};
use crate::metric::{FiniteMetricSpace, MetricError};
use crate::systems::families::{builtin_system, SystemHandle};
use crate::systems::sft::{sft_from_forbidden_words, Sft};

/// One-based line and column of a byte offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub fn of(text: &str, offset: usize) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Self { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{at}: {message}")]
    Parse { at: Location, message: String },
    #[error("{at}: missing key `{key}`")]
    Missing { at: Location, key: String },
    #[error("{at}: unknown key `{key}`")]
    UnknownKey { at: Location, key: String },
    #[error("{at}: `{key}`: {message}")]
    Invalid {
        at: Location,
        key: String,
        message: String,
    },
    #[error("{at}: generator {generator} is not a bijection: {reason}")]
    NotBijection {
        at: Location,
        generator: usize,
        reason: String,
    },
    #[error("{at}: `{key}` violates the metric axioms: {error}")]
    Metric {
        at: Location,
        key: String,
        error: MetricError,
    },
    #[error("{at}: `{key}`: {error}")]
    Group {
        at: Location,
        key: String,
        error: GroupError,
    },
    #[error("{at}: `{key}`: {message}")]
    Sft {
        at: Location,
        key: String,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Every error found in one config, in document order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl From<ConfigError> for ConfigErrors {
    fn from(e: ConfigError) -> Self {
        Self(vec![e])
    }
}

type Value<'i> = Spanned<DeValue<'i>>;

struct Cx<'t> {
    text: &'t str,
    errors: Vec<ConfigError>,
}

impl<'t> Cx<'t> {
    fn at(&self, span: Range<usize>) -> Location {
        Location::of(self.text, span.start)
    }

    fn invalid(&mut self, span: Range<usize>, key: &str, message: impl Into<String>) {
        let at = self.at(span);
        self.errors.push(ConfigError::Invalid {
            at,
            key: key.into(),
            message: message.into(),
        });
    }

    fn missing(&mut self, span: Range<usize>, key: &str) {
        let at = self.at(span);
        self.errors.push(ConfigError::Missing {
            at,
            key: key.into(),
        });
    }

    /// Rejects keys outside `allowed`.
    fn keys(&mut self, table: &DeTable<'_>, allowed: &[&str]) {
        for k in table.keys() {
            if !allowed.contains(&k.get_ref().as_ref()) {
                let at = self.at(k.span());
                self.errors.push(ConfigError::UnknownKey {
                    at,
                    key: k.get_ref().to_string(),
                });
            }
        }
    }
}

fn get<'a, 'i>(table: &'a DeTable<'i>, key: &str) -> Option<&'a Value<'i>> {
    table
        .iter()
        .find(|(k, _)| k.get_ref() == key)
        .map(|(_, v)| v)
}

fn table<'a, 'i>(cx: &mut Cx<'_>, v: &'a Value<'i>, key: &str) -> Option<&'a DeTable<'i>> {
    match v.get_ref() {
        DeValue::Table(t) => Some(t),
        _ => {
            cx.invalid(v.span(), key, "expected a table");
            None
        }
    }
}

fn integer(cx: &mut Cx<'_>, v: &Value<'_>, key: &str) -> Option<i64> {
    match v.get_ref() {
        DeValue::Integer(i) => match i64::from_str_radix(&i.as_str().replace('_', ""), i.radix()) {
            Ok(n) => Some(n),
            Err(e) => {
                cx.invalid(v.span(), key, e.to_string());
                None
            }
        },
        _ => {
            cx.invalid(v.span(), key, "expected an integer");
            None
        }
    }
}

fn string<'a>(cx: &mut Cx<'_>, v: &'a Value<'_>, key: &str) -> Option<&'a str> {
    match v.get_ref() {
        DeValue::String(s) => Some(s.as_ref()),
        _ => {
            cx.invalid(v.span(), key, "expected a string");
            None
        }
    }
}

fn boolean(cx: &mut Cx<'_>, v: &Value<'_>, key: &str) -> Option<bool> {
    match v.get_ref() {
        DeValue::Boolean(b) => Some(*b),
        _ => {
            cx.invalid(v.span(), key, "expected a boolean");
            None
        }
    }
}

fn array<'a, 'i>(cx: &mut Cx<'_>, v: &'a Value<'i>, key: &str) -> Option<&'a [Value<'i>]> {
    match v.get_ref() {
        DeValue::Array(a) => Some(a.as_ref()),
        _ => {
            cx.invalid(v.span(), key, "expected an array");
            None
        }
    }
}

/// Parses `p/q`, an integer or a plain decimal exactly.
pub fn parse_rational(text: &str) -> Result<Rational64, String> {
    let t = text.trim().replace('_', "");
    let bad = || format!("`{text}` is not a rational number");
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(format!("`{text}` has a zero denominator"));
        }
        return Ok(Rational64::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 17 {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole.is_empty() || whole == "-" || whole == "+" {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let num: i64 = frac.parse().map_err(|_| bad())?;
        let signed = if negative { -num } else { num };
        let total = whole
            .checked_mul(den)
            .and_then(|w| w.checked_add(signed))
            .ok_or_else(bad)?;
        return Ok(Rational64::new(total, den));
    }
    t.parse::<i64>()
        .map(Rational64::from_integer)
        .map_err(|_| bad())
}

fn distance(cx: &mut Cx<'_>, v: &Value<'_>) -> Option<Rational64> {
    let parsed = match v.get_ref() {
        DeValue::Integer(_) => return integer(cx, v, "rows").map(Rational64::from_integer),
        DeValue::Float(f) => parse_rational(f.as_str()),
        DeValue::String(s) => parse_rational(s),
        _ => Err("expected a number or a \"p/q\" string".into()),
    };
    match parsed {
        Ok(r) => Some(r),
        Err(e) => {
            cx.invalid(v.span(), "rows", e);
            None
        }
    }
}

fn space(cx: &mut Cx<'_>, v: &Value<'_>) -> Option<FiniteMetricSpace> {
    let t = table(cx, v, "space")?;
    cx.keys(t, &["points", "metric", "rows"]);
    let points = match get(t, "points") {
        Some(p) => integer(cx, p, "points"),
        None => {
            cx.missing(v.span(), "space.points");
            None
        }
    };
    let points = match points {
        Some(p) if (1..=4096).contains(&p) => Some(p as usize),
        Some(p) => {
            cx.invalid(
                get(t, "points")?.span(),
                "points",
                format!("{p} is not in 1..=4096"),
            );
            None
        }
        None => None,
    };
    match (get(t, "metric"), get(t, "rows")) {
        (Some(_), Some(r)) => {
            cx.invalid(r.span(), "rows", "give either `metric` or `rows`, not both");
            None
        }
        (Some(m), None) => {
            let name = string(cx, m, "metric")?;
            let n = points?;
            match name {
                "discrete" => Some(FiniteMetricSpace::discrete(n)),
                "line" => Some(FiniteMetricSpace::line(n)),
                "cycle" => Some(FiniteMetricSpace::cycle(n)),
                other => {
                    cx.invalid(m.span(), "metric", format!("unknown metric `{other}`"));
                    None
                }
            }
        }
        (None, Some(r)) => {
            let rows = array(cx, r, "rows")?;
            let mut table = Vec::with_capacity(rows.len());
            let mut ok = true;
            for row in rows {
                let Some(entries) = array(cx, row, "rows") else {
                    ok = false;
                    continue;
                };
                let parsed: Vec<Option<Rational64>> =
                    entries.iter().map(|e| distance(cx, e)).collect();
                ok &= parsed.iter().all(Option::is_some);
                table.push(parsed.into_iter().flatten().collect::<Vec<_>>());
            }
            if !ok {
                return None;
            }
            if let Some(n) = points {
                if table.len() != n {
                    cx.invalid(
                        r.span(),
                        "rows",
                        format!("{} rows for {n} points", table.len()),
                    );
                    return None;
                }
            }
            match FiniteMetricSpace::from_rows(table) {
                Ok(s) => Some(s),
                Err(error) => {
                    let at = cx.at(r.span());
                    cx.errors.push(ConfigError::Metric {
                        at,
                        key: "space.rows".into(),
                        error,
                    });
                    None
                }
            }
        }
        (None, None) => Some(FiniteMetricSpace::discrete(points?)),
    }
}

fn group(cx: &mut Cx<'_>, v: &Value<'_>, points: Option<usize>) -> Option<GroupSpec> {
    let t = table(cx, v, "group")?;
    cx.keys(t, &["kind", "abelian", "generators"]);
    let kind = match get(t, "kind") {
        None => Some(GroupKind::FreeAbelian),
        Some(k) => match string(cx, k, "kind")? {
            "free_abelian" => Some(GroupKind::FreeAbelian),
            "finite" => Some(GroupKind::Finite),
            other => {
                cx.invalid(k.span(), "kind", format!("unknown group kind `{other}`"));
                None
            }
        },
    };
    let abelian = match get(t, "abelian") {
        Some(a) => boolean(cx, a, "abelian"),
        None => Some(kind == Some(GroupKind::FreeAbelian)),
    };
    let Some(gens) = get(t, "generators") else {
        cx.missing(v.span(), "group.generators");
        return None;
    };
    let mut perms = Vec::new();
    let mut ok = true;
    for (i, g) in array(cx, gens, "generators")?.iter().enumerate() {
        let Some(images) = array(cx, g, "generators") else {
            ok = false;
            continue;
        };
        let images: Vec<Option<i64>> = images
            .iter()
            .map(|x| integer(cx, x, "generators"))
            .collect();
        let Some(images) = images.into_iter().collect::<Option<Vec<i64>>>() else {
            ok = false;
            continue;
        };
        if let Some(n) = points {
            if images.len() != n {
                cx.invalid(
                    g.span(),
                    "generators",
                    format!("generator {i} has {} images for {n} points", images.len()),
                );
                ok = false;
                continue;
            }
        }
        let images: Vec<usize> = images
            .into_iter()
            .map(|x| usize::try_from(x).unwrap_or(usize::MAX))
            .collect();
        match Permutation::new(images) {
            Ok(p) => perms.push(p),
            Err(reason) => {
                let at = cx.at(g.span());
                cx.errors.push(ConfigError::NotBijection {
                    at,
                    generator: i,
                    reason,
                });
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    match GroupSpec::new(kind?, perms, abelian?, points?) {
        Ok(g) => Some(g),
        Err(error) => {
            let at = cx.at(gens.span());
            cx.errors.push(ConfigError::Group {
                at,
                key: "group.generators".into(),
                error,
            });
            None
        }
    }
}

fn symbols(cx: &mut Cx<'_>, v: &Value<'_>, key: &str) -> Option<Vec<u8>> {
    match v.get_ref() {
        DeValue::String(s) => match s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect() {
            Some(w) => Some(w),
            None => {
                cx.invalid(v.span(), key, "words are digit strings or integer arrays");
                None
            }
        },
        DeValue::Array(a) => a
            .iter()
            .map(|x| integer(cx, x, key).and_then(|n| u8::try_from(n).ok()))
            .collect(),
        _ => {
            cx.invalid(v.span(), key, "expected a word");
            None
        }
    }
}

fn sft(cx: &mut Cx<'_>, v: &Value<'_>, label: Option<&str>) -> Option<Sft> {
    let t = table(cx, v, "sft")?;
    cx.keys(t, &["alphabet", "forbidden", "matrix", "labels", "name"]);
    let name = match get(t, "name") {
        Some(n) => Some(string(cx, n, "name")?.to_string()),
        None => label.map(str::to_string),
    };
    let err = |cx: &mut Cx<'_>, span: Range<usize>, key: &str, message: String| {
        let at = cx.at(span);
        cx.errors.push(ConfigError::Sft {
            at,
            key: key.into(),
            message,
        });
    };
    let built = match (get(t, "forbidden"), get(t, "matrix")) {
        (Some(_), Some(m)) => {
            cx.invalid(
                m.span(),
                "matrix",
                "give either `forbidden` or `matrix`, not both",
            );
            return None;
        }
        (Some(f), None) => {
            let Some(k) = get(t, "alphabet") else {
                cx.missing(v.span(), "sft.alphabet");
                return None;
            };
            let k = integer(cx, k, "alphabet")?;
            let words: Option<Vec<Vec<u8>>> = array(cx, f, "forbidden")?
                .iter()
                .map(|w| symbols(cx, w, "forbidden"))
                .collect();
            match sft_from_forbidden_words(usize::try_from(k).unwrap_or(0), &words?) {
                Ok(s) => s,
                Err(e) => {
                    err(cx, f.span(), "sft.forbidden", e.to_string());
                    return None;
                }
            }
        }
        (None, Some(m)) => {
            let rows: Option<Vec<Vec<u8>>> = array(cx, m, "matrix")?
                .iter()
                .map(|r| {
                    let entries = array(cx, r, "matrix")?;
                    entries
                        .iter()
                        .map(|x| integer(cx, x, "matrix").and_then(|n| u8::try_from(n).ok()))
                        .collect()
                })
                .collect();
            let rows = rows?;
            if let Some(k) = get(t, "alphabet") {
                let k = integer(cx, k, "alphabet")?;
                if usize::try_from(k).ok() != Some(rows.len()) {
                    cx.invalid(
                        m.span(),
                        "matrix",
                        format!("{} rows for alphabet {k}", rows.len()),
                    );
                    return None;
                }
            }
            let labels = match get(t, "labels") {
                Some(l) => Some(
                    array(cx, l, "labels")?
                        .iter()
                        .map(|w| symbols(cx, w, "labels"))
                        .collect::<Option<Vec<_>>>()?,
                ),
                None => None,
            };
            let name = name.clone().unwrap_or_else(|| "sft".into());
            let result = match labels {
                Some(l) => Sft::from_matrix_with_labels(name, &rows, l),
                None => Sft::from_matrix(name, &rows),
            };
            match result {
                Ok(s) => s,
                Err(e) => {
                    err(cx, m.span(), "sft.matrix", e.to_string());
                    return None;
                }
            }
        }
        (None, None) => {
            cx.missing(v.span(), "sft.forbidden or sft.matrix");
            return None;
        }
    };
    Some(match name {
        Some(n) => built.with_name(n),
        None => built,
    })
}

/// Parses and validates a system config, reporting every located error.
pub fn parse_config(text: &str) -> Result<SystemHandle, ConfigErrors> {
    let root = DeTable::parse(text).map_err(|e| {
        let at = Location::of(text, e.span().map_or(0, |s| s.start));
        ConfigError::Parse {
            at,
            message: e.message().trim().to_string(),
        }
    })?;
    let mut cx = Cx {
        text,
        errors: Vec::new(),
    };
    let top = root.get_ref();
    cx.keys(top, &["label", "builtin", "space", "group", "sft"]);
    let label = get(top, "label")
        .and_then(|l| string(&mut cx, l, "label"))
        .map(str::to_string);
    let handle = if let Some(b) = get(top, "builtin") {
        let expr = string(&mut cx, b, "builtin");
        match expr.map(builtin_system) {
            Some(Ok(h)) => Some(h),
            Some(Err(e)) => {
                cx.invalid(b.span(), "builtin", e.to_string());
                None
            }
            None => None,
        }
    } else if let Some(s) = get(top, "sft") {
        sft(&mut cx, s, label.as_deref()).map(SystemHandle::Shift)
    } else {
        let space = match get(top, "space") {
            Some(s) => space(&mut cx, s),
            None => {
                cx.missing(0..0, "space");
                None
            }
        };
        let points = space.as_ref().map(FiniteMetricSpace::point_count);
        let group = match get(top, "group") {
            Some(g) => group(&mut cx, g, points),
            None => {
                cx.missing(0..0, "group");
                None
            }
        };
        match (space, group) {
            (Some(space), Some(group)) => {
                let label = label.clone().unwrap_or_else(|| "system".into());
                match ActionSystem::new(label, space, group) {
                    Ok(sys) => Some(SystemHandle::Finite(sys)),
                    Err(error) => {
                        cx.errors.push(ConfigError::Group {
                            at: Location::of(text, 0),
                            key: "group".into(),
                            error,
                        });
                        None
                    }
                }
            }
            _ => None,
        }
    };
    match handle {
        Some(h) if cx.errors.is_empty() => Ok(relabel(h, label)),
        _ => Err(ConfigErrors(cx.errors)),
    }
}

fn relabel(h: SystemHandle, label: Option<String>) -> SystemHandle {
    match (h, label) {
        (SystemHandle::Finite(s), Some(l)) => SystemHandle::Finite(s.with_label(l)),
        (SystemHandle::Shift(s), Some(l)) => SystemHandle::Shift(s.with_name(l)),
        (h, _) => h,
    }
}

/// Resolves `builtin:<expr>` or a path to a config file.
pub fn load_system(source: &str) -> Result<SystemHandle, ConfigErrors> {
    if let Some(expr) = source.strip_prefix("builtin:") {
        return builtin_system(expr).map_err(|e| {
            ConfigError::Invalid {
                at: Location { line: 1, column: 1 },
                key: "builtin".into(),
                message: e.to_string(),
            }
            .into()
        });
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| ConfigError::Io {
        path: source.into(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

#[derive(Serialize)]
struct FiniteOut {
    label: String,
    space: SpaceOut,
    group: GroupOut,
}

#[derive(Serialize)]
struct SpaceOut {
    points: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct GroupOut {
    kind: GroupKind,
    abelian: bool,
    generators: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ShiftOut {
    sft: SftOut,
}

#[derive(Serialize)]
struct SftOut {
    name: String,
    alphabet: usize,
    matrix: Vec<Vec<u8>>,
    labels: Vec<Vec<u8>>,
}

/// Config text that parses back to the same system.
pub fn to_config_text(handle: &SystemHandle) -> String {
    let out = match handle {
        SystemHandle::Finite(sys) => toml::to_string(&FiniteOut {
            label: sys.label().into(),
            space: SpaceOut {
                points: sys.point_count(),
                rows: sys
                    .space()
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            },
            group: GroupOut {
                kind: sys.group().kind(),
                abelian: sys.group().is_abelian(),
                generators: sys
                    .group()
                    .generators()
                    .iter()
                    .map(|g| g.forward.images())
                    .collect(),
            },
        }),
        SystemHandle::Shift(s) => toml::to_string(&ShiftOut {
            sft: SftOut {
                name: s.name().into(),
                alphabet: s.alphabet_size(),
                matrix: s.matrix().to_rows(),
                labels: s.labels().to_vec(),
            },
        }),
    };
    out.expect("config structs serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::families::{commuting_pair, cyclic_rotation, klein_on_4};

    fn finite(text: &str) -> ActionSystem {
        match parse_config(text).unwrap() {
            SystemHandle::Finite(s) => s,
            SystemHandle::Shift(_) => panic!("expected a finite system"),
        }
    }

    #[test]
    fn two_point_discrete() {
        let s =
            finite("[space]\npoints = 2\nmetric = \"discrete\"\n[group]\ngenerators = [[1, 0]]\n");
        assert_eq!(s.point_count(), 2);
        assert_eq!(s.group().kind(), GroupKind::FreeAbelian);
    }

    #[test]
    fn non_bijection_is_located() {
        let text = "[space]\npoints = 2\n[group]\ngenerators = [[0, 0]]\n";
        let errs = parse_config(text).unwrap_err().0;
        assert_eq!(errs.len(), 1);
        match &errs[0] {
            ConfigError::NotBijection {
                at, generator: 0, ..
            } => assert_eq!(at.line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn metric_violation_is_distinct() {
        let text = "[space]\npoints = 3\nrows = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]\n[group]\ngenerators = [[0, 1, 2]]\n";
        let errs = parse_config(text).unwrap_err().0;
        assert!(
            matches!(&errs[0], ConfigError::Metric { at, .. } if at.line == 3),
            "{errs:?}"
        );
    }

    #[test]
    fn errors_accumulate() {
        let text = "[space]\npoints = 2\nrows = [[0, \"x\"], [1, 0]]\nextra = 1\n[group]\ngenerators = [[0, 0]]\n";
        let errs = parse_config(text).unwrap_err().0;
        assert_eq!(errs.len(), 3, "{errs:?}");
    }

    #[test]
    fn golden_mean_from_words() {
        match parse_config("[sft]\nalphabet = 2\nforbidden = [\"11\"]\n").unwrap() {
            SystemHandle::Shift(s) => assert_eq!(s.matrix(), Sft::golden_mean().matrix()),
            SystemHandle::Finite(_) => panic!("expected a shift"),
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2"), Ok(Rational64::new(1, 2)));
        assert_eq!(parse_rational("0.25"), Ok(Rational64::new(1, 4)));
        assert_eq!(parse_rational("-1.5"), Ok(Rational64::new(-3, 2)));
        assert_eq!(parse_rational("3"), Ok(Rational64::from_integer(3)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn round_trip() {
        for sys in [cyclic_rotation(4), klein_on_4(), commuting_pair(5)] {
            let text = to_config_text(&SystemHandle::Finite(sys.clone()));
            let back = finite(&text);
            assert_eq!(back, sys);
            assert_eq!(back.label(), sys.label());
        }
        let s = sft_from_forbidden_words(2, &[vec![1, 1, 1]]).unwrap();
        let text = to_config_text(&SystemHandle::Shift(s.clone()));
        match parse_config(&text).unwrap() {
            SystemHandle::Shift(back) => assert_eq!(back, s),
            SystemHandle::Finite(_) => panic!("expected a shift"),
        }
    }

    #[test]
    fn builtin_key() {
        let s = finite("builtin = \"cyclic_rotation(3)\"\n");
        assert_eq!(s, cyclic_rotation(3));
        assert!(parse_config("builtin = \"nope(1)\"\n").is_err());
    }
}
