//! Theorem suites: families of systems crossed with theorem ids, with
//! coverage requirements on the branches the cases exercise.
//!
//! ```toml
//! name = "default"
//! [bounds]
//! radius = 12
//! cyl_len = 3
//! cap = 12
//! [[family]]
//! name = "finite"
//! systems = ["default_finite", "file:systems/ring.toml"]
//! theorems = ["T34", "T39"]
//! substantive = ["T39"]
//! [[family.require]]
//! theorem = "T34"
//! branch = "antecedent-false"
//! scope = "some"
//! ```
//!
//! A system entry is a family name understood by `builtin_family`, a builtin
//! expression, or `file:<path>` relative to the suite file.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use super::{verify_theorem, CaseVerdict, TheoremCase, TheoremId, VerifyOptions};
use crate::checkers::report::Bounds;
use crate::config::{load_system, ConfigError, ConfigErrors, Location};
use crate::systems::families::{builtin_family, SystemHandle};

/// The suite run by `--suite default`.
pub const DEFAULT_SUITE: &str = include_str!("../../suites/default.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Some direction has a false antecedent.
    AntecedentFalse,
    /// Antecedent and consequent hold in every direction.
    BothHold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    #[default]
    Some,
    Every,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Requirement {
    pub theorem: TheoremId,
    pub branch: Branch,
    #[serde(default)]
    pub scope: Scope,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    radius: Option<u64>,
    cyl_len: Option<usize>,
    cap: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    name: String,
    systems: Vec<Spanned<String>>,
    theorems: Vec<TheoremId>,
    #[serde(default)]
    substantive: Vec<TheoremId>,
    #[serde(default)]
    require: Vec<Requirement>,
    #[serde(default)]
    allow_non_abelian: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    name: String,
    bounds: Option<RawBounds>,
    #[serde(default)]
    family: Vec<RawFamily>,
}

#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub systems: Vec<SystemHandle>,
    pub theorems: Vec<TheoremId>,
    /// Theorems that need at least one non-vacuous confirmation.
    pub substantive: Vec<TheoremId>,
    pub require: Vec<Requirement>,
    pub allow_non_abelian: bool,
}

/// A parsed suite. Bounds left out of the file are `None` and fall back to
/// the caller's defaults.
#[derive(Debug, Clone)]
pub struct Suite {
    pub name: String,
    pub radius: Option<u64>,
    pub cyl_len: Option<usize>,
    pub cap: Option<usize>,
    pub families: Vec<Family>,
}

impl Suite {
    /// `options` with the bounds the suite file sets.
    pub fn options(&self, mut options: VerifyOptions) -> VerifyOptions {
        if let Some(r) = self.radius {
            options.bounds.radius = r;
        }
        if let Some(l) = self.cyl_len {
            options.bounds.cyl_len = l;
        }
        if let Some(c) = self.cap {
            options.cap = c;
        }
        options
    }
}

/// Parses a suite, resolving `file:` systems against `base`.
pub fn parse_suite(text: &str, base: Option<&Path>) -> Result<Suite, ConfigErrors> {
    let raw: RawSuite = toml::from_str(text).map_err(|e| ConfigError::Parse {
        at: Location::of(text, e.span().map_or(0, |s| s.start)),
        message: e.message().trim().to_string(),
    })?;
    let mut errors = Vec::new();
    let mut families = Vec::new();
    for f in raw.family {
        let mut systems = Vec::new();
        for entry in &f.systems {
            let at = Location::of(text, entry.span().start);
            let resolved = match entry.get_ref().strip_prefix("file:") {
                Some(path) => {
                    let full = base.map_or_else(|| Path::new(path).to_path_buf(), |b| b.join(path));
                    load_system(&full.to_string_lossy())
                        .map(|h| vec![h])
                        .map_err(|e| e.to_string())
                }
                None => builtin_family(entry.get_ref()).map_err(|e| e.to_string()),
            };
            match resolved {
                Ok(hs) => systems.extend(hs),
                Err(message) => errors.push(ConfigError::Invalid {
                    at,
                    key: "systems".into(),
                    message,
                }),
            }
        }
        families.push(Family {
            name: f.name,
            systems,
            theorems: f.theorems,
            substantive: f.substantive,
            require: f.require,
            allow_non_abelian: f.allow_non_abelian,
        });
    }
    if !errors.is_empty() {
        return Err(ConfigErrors(errors));
    }
    let (radius, cyl_len, cap) = raw
        .bounds
        .map_or((None, None, None), |b| (b.radius, b.cyl_len, b.cap));
    Ok(Suite {
        name: raw.name,
        radius,
        cyl_len,
        cap,
        families,
    })
}

/// `default` for the builtin suite, otherwise a path.
pub fn load_suite(source: &str) -> Result<Suite, ConfigErrors> {
    if source == "default" || source == "builtin:default" {
        return parse_suite(DEFAULT_SUITE, None);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: source.into(),
        message: e.to_string(),
    })?;
    parse_suite(&text, path.parent())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Tally {
    /// Confirmed with a true antecedent somewhere.
    pub confirmed: u64,
    pub vacuous: u64,
    pub refuted: u64,
    pub rejected: u64,
}

impl Tally {
    fn add(&mut self, v: CaseVerdict) {
        match v {
            CaseVerdict::Confirmed => self.confirmed += 1,
            CaseVerdict::ConfirmedVacuously => self.vacuous += 1,
            CaseVerdict::Refuted => self.refuted += 1,
            CaseVerdict::Rejected => self.rejected += 1,
        }
    }

    fn merge(&mut self, o: &Tally) {
        self.confirmed += o.confirmed;
        self.vacuous += o.vacuous;
        self.refuted += o.refuted;
        self.rejected += o.rejected;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub theorem: TheoremId,
    pub branch: Branch,
    pub scope: Scope,
    pub met: bool,
    /// Systems whose case exercises the branch.
    pub systems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub systems: Vec<String>,
    pub passed: bool,
    pub tallies: BTreeMap<TheoremId, Tally>,
    pub coverage: Vec<Coverage>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    pub cases: Vec<TheoremCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub bounds: Bounds,
    pub cap: usize,
    pub passed: bool,
    pub totals: Tally,
    pub families: Vec<FamilyReport>,
}

/// Runs every case in parallel; the report is ordered by family, theorem id
/// and system, independent of scheduling.
pub fn run_suite(suite: &Suite, options: &VerifyOptions) -> SuiteReport {
    let jobs: Vec<(usize, TheoremId, usize)> = suite
        .families
        .iter()
        .enumerate()
        .flat_map(|(f, fam)| {
            let mut ids = fam.theorems.clone();
            ids.sort();
            ids.dedup();
            ids.into_iter()
                .flat_map(move |id| (0..fam.systems.len()).map(move |s| (f, id, s)))
        })
        .collect();
    let cases: Vec<TheoremCase> = jobs
        .par_iter()
        .map(|&(f, id, s)| {
            let fam = &suite.families[f];
            let sys = &fam.systems[s];
            let opts = VerifyOptions {
                allow_non_abelian: fam.allow_non_abelian,
                ..*options
            };
            verify_theorem(id, sys, &opts)
                .unwrap_or_else(|e| TheoremCase::rejected(id, sys.label(), e.to_string()))
        })
        .collect();
    let mut by_family: Vec<Vec<TheoremCase>> = vec![Vec::new(); suite.families.len()];
    for (&(f, _, _), case) in jobs.iter().zip(cases) {
        by_family[f].push(case);
    }
    let families: Vec<FamilyReport> = suite
        .families
        .iter()
        .zip(by_family)
        .map(|(fam, cases)| family_report(fam, cases))
        .collect();
    let mut totals = Tally::default();
    for f in &families {
        for t in f.tallies.values() {
            totals.merge(t);
        }
    }
    SuiteReport {
        name: suite.name.clone(),
        bounds: options.bounds,
        cap: options.cap,
        passed: families.iter().all(|f| f.passed),
        totals,
        families,
    }
}

fn family_report(fam: &Family, cases: Vec<TheoremCase>) -> FamilyReport {
    let mut tallies: BTreeMap<TheoremId, Tally> = BTreeMap::new();
    for c in &cases {
        tallies.entry(c.theorem).or_default().add(c.verdict);
    }
    let mut failures = Vec::new();
    for c in cases.iter().filter(|c| c.verdict == CaseVerdict::Refuted) {
        failures.push(format!("{} refuted on {}", c.theorem, c.system));
    }
    for id in &fam.substantive {
        let t = tallies.get(id).copied().unwrap_or_default();
        if t.vacuous + t.confirmed > 0 && t.confirmed == 0 {
            failures.push(format!("{id}: every case is vacuous"));
        }
    }
    let coverage: Vec<Coverage> = fam
        .require
        .iter()
        .map(|r| {
            let relevant: Vec<&TheoremCase> = cases
                .iter()
                .filter(|c| c.theorem == r.theorem && c.verdict != CaseVerdict::Rejected)
                .collect();
            let hits: Vec<String> = relevant
                .iter()
                .filter(|c| c.verdict.is_confirmed())
                .filter(|c| match r.branch {
                    Branch::AntecedentFalse => c.antecedent_false(),
                    Branch::BothHold => c.both_hold(),
                })
                .map(|c| c.system.clone())
                .collect();
            let met = match r.scope {
                Scope::Some => !hits.is_empty(),
                Scope::Every => !relevant.is_empty() && hits.len() == relevant.len(),
            };
            Coverage {
                theorem: r.theorem,
                branch: r.branch,
                scope: r.scope,
                met,
                systems: hits,
            }
        })
        .collect();
    for c in coverage.iter().filter(|c| !c.met) {
        let scope = match c.scope {
            Scope::Some => "some",
            Scope::Every => "every",
        };
        failures.push(format!(
            "{}: {:?} branch not exercised on {scope} system",
            c.theorem, c.branch
        ));
    }
    FamilyReport {
        name: fam.name.clone(),
        systems: fam.systems.iter().map(|s| s.label().to_string()).collect(),
        passed: failures.is_empty(),
        tallies,
        coverage,
        failures,
        cases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_parses() {
        let s = load_suite("default").unwrap();
        assert_eq!(s.families.len(), 3);
        assert_eq!(s.cap, Some(12));
        assert!(s.families[0].systems.len() >= 10);
    }

    #[test]
    fn empty_family_passes() {
        let s = parse_suite("name = \"e\"\n[[family]]\nname = \"none\"\nsystems = [\"empty\"]\ntheorems = [\"T34\"]\n", None)
            .unwrap();
        let r = run_suite(&s, &VerifyOptions::default());
        assert!(r.passed);
        assert!(r.families[0].cases.is_empty());
        assert_eq!(r.totals, Tally::default());
    }

    #[test]
    fn errors_are_located() {
        let e = parse_suite("name = \"x\"\n[[family]]\nname = \"f\"\nsystems = [\"nope(3)\"]\ntheorems = [\"T34\"]\n", None)
            .unwrap_err();
        assert!(
            matches!(&e.0[0], ConfigError::Invalid { at, .. } if at.line == 4),
            "{e}"
        );
        let e = parse_suite(
            "name = \"x\"\n\n[[family]]\nname = \"f\"\nsystems = []\ntheorems = [\"T99\"]\n",
            None,
        )
        .unwrap_err();
        assert!(
            matches!(&e.0[0], ConfigError::Parse { at, .. } if at.line == 6),
            "{e}"
        );
    }

    #[test]
    fn vacuous_only_substantive_fails() {
        let text = "name = \"v\"\n[[family]]\nname = \"f\"\nsystems = [\"cyclic_rotation(3)\"]\n\
                    theorems = [\"T36\"]\nsubstantive = [\"T36\"]\n";
        let r = run_suite(&parse_suite(text, None).unwrap(), &VerifyOptions::default());
        assert!(!r.passed);
        assert_eq!(r.totals.vacuous, 1);
    }
}
