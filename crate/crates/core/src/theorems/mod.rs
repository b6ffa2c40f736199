//! Executable checks of the transfer results between a system and its
//! hyperspace, both as implications between verdicts and by building the
//! explicit witnesses their proofs use.

pub mod induced;
pub mod suite;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checkers::dynamics::{Dynamics, FiniteDynamics, ShiftDynamics};
use crate::checkers::proof::{simultaneous_weak_mixing_witness, PeriodicWitness, WitnessChain};
use crate::checkers::report::{Bounds, Property, Verdict};
use crate::checkers::{bounded, finite, CheckError};
use crate::group::{ActionSystem, GroupElement};
use crate::hyperspace::{
    build_hyperspace_system, extension_members, HyperspaceError, DEFAULT_HYPERSPACE_CAP,
};
use crate::sets::PointSet;
use crate::systems::families::SystemHandle;
use crate::systems::shift::ShiftSpace;
use induced::{DomainOutcome, InducedTable, InducedWitness, CASE_WITNESS_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    P32,
    P33,
    T34,
    P35,
    T36,
    C37a,
    C37b,
    T38,
    T39,
    T310,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        Self::P32,
        Self::P33,
        Self::T34,
        Self::P35,
        Self::T36,
        Self::C37a,
        Self::C37b,
        Self::T38,
        Self::T39,
        Self::T310,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::P32 => "P32",
            Self::P33 => "P33",
            Self::T34 => "T34",
            Self::P35 => "P35",
            Self::T36 => "T36",
            Self::C37a => "C37a",
            Self::C37b => "C37b",
            Self::T38 => "T38",
            Self::T39 => "T39",
            Self::T310 => "T310",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Self::P32 => "e(U) ∩ e(V) = e(U ∩ V)",
            Self::P33 => "γ̂(e(U)) ⊆ e(γ(U))",
            Self::T34 => "hyperspace transitive ⇒ base transitive",
            Self::P35 => "base weakly mixing ⇒ one γ connects any n pairs",
            Self::T36 => "base weakly mixing ⇔ hyperspace weakly mixing",
            Self::C37a => "base weakly mixing ⇒ hyperspace transitive",
            Self::C37b => "hyperspace weakly mixing ⇒ base transitive",
            Self::T38 => "base mixing ⇔ hyperspace mixing",
            Self::T39 => "base periodic points dense ⇒ hyperspace periodic points dense",
            Self::T310 => {
                "base weakly mixing with dense periodic points ⇒ hyperspace Devaney chaotic"
            }
        }
    }

    /// Results stated under the standing assumption that the group is abelian.
    pub fn requires_abelian(self) -> bool {
        matches!(self, Self::P35 | Self::T36 | Self::T38 | Self::T310)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseVerdict {
    Confirmed,
    ConfirmedVacuously,
    /// The implication failed on this instance.
    Refuted,
    /// The instance is outside the result's hypotheses or size limits.
    Rejected,
}

impl CaseVerdict {
    pub fn is_confirmed(self) -> bool {
        matches!(self, Self::Confirmed | Self::ConfirmedVacuously)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Confirmed => "confirmed",
            Self::ConfirmedVacuously => "confirmed-vacuously",
            Self::Refuted => "refuted",
            Self::Rejected => "rejected",
        }
    }
}

impl fmt::Display for CaseVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Base,
    Hyperspace,
}

/// One side of an implication: a property at a level and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Side {
    pub level: Level,
    pub property: String,
    pub verdict: Verdict,
}

impl Side {
    fn new(level: Level, property: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            level,
            property: property.into(),
            verdict,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Direction {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antecedent: Option<Side>,
    pub consequent: Side,
    pub outcome: CaseVerdict,
    /// Antecedent false and consequent true: an instance where the converse
    /// implication fails.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub converse_fails: bool,
}

impl Direction {
    fn implication(name: &str, antecedent: Side, consequent: Side) -> Self {
        let (a, c) = (antecedent.verdict, consequent.verdict);
        let outcome = if !a.holds() || a == Verdict::VacuouslyHolds {
            CaseVerdict::ConfirmedVacuously
        } else if c.holds() {
            CaseVerdict::Confirmed
        } else {
            CaseVerdict::Refuted
        };
        Self {
            name: name.into(),
            converse_fails: !a.holds() && c.holds(),
            antecedent: Some(antecedent),
            consequent,
            outcome,
        }
    }

    fn statement(consequent: Side) -> Self {
        let outcome = if consequent.verdict.holds() {
            CaseVerdict::Confirmed
        } else {
            CaseVerdict::Refuted
        };
        Self {
            name: "statement".into(),
            antecedent: None,
            consequent,
            outcome,
            converse_fails: false,
        }
    }
}

/// Witnesses built while deciding a case. Counts and soundness cover every
/// witness built; the lists keep the first few in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CaseWitnesses {
    pub count: u64,
    pub all_sound: bool,
    /// Instances certified by the proofs' diagonal construction.
    pub diagonal_count: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vietoris: Vec<InducedWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub periodic: Vec<PeriodicWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<WitnessChain>,
}

impl CaseWitnesses {
    fn absorb(&mut self, out: &DomainOutcome) {
        self.count += out.witness_count;
        self.all_sound &= out.all_sound;
        self.diagonal_count += out.diagonal_count;
        for w in &out.vietoris {
            if self.vietoris.len() < CASE_WITNESS_CAP {
                self.vietoris.push(w.clone());
            }
        }
        for w in &out.periodic {
            if self.periodic.len() < CASE_WITNESS_CAP {
                self.periodic.push(w.clone());
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Finite system: every quantifier is decided over the whole hyperspace.
    Exact,
    /// Shift space: cylinders and exponents within the bounds.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCase {
    pub theorem: TheoremId,
    pub statement: String,
    pub system: String,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    pub verdict: CaseVerdict,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub directions: Vec<Direction>,
    /// Implications entailed by the case and checked alongside it.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub corollaries: Vec<Direction>,
    /// Direct evaluation of the composed consequent, when available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct: Option<Side>,
    pub witnesses: CaseWitnesses,
    /// The finite exclusion set `F = ⋃ F_i` of the mixing proof.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<Vec<GroupElement>>,
    /// Run outside the result's hypotheses on request; not a confirmation.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TheoremCase {
    /// A case that could not be run, with the reason.
    pub fn rejected(theorem: TheoremId, system: &str, reason: impl Into<String>) -> Self {
        Self {
            theorem,
            statement: theorem.statement().into(),
            system: system.into(),
            mode: Mode::Exact,
            bounds: None,
            verdict: CaseVerdict::Rejected,
            vacuous: false,
            reason: Some(reason.into()),
            directions: Vec::new(),
            corollaries: Vec::new(),
            direct: None,
            witnesses: CaseWitnesses {
                all_sound: true,
                ..Default::default()
            },
            excluded: None,
            informational: false,
            notes: Vec::new(),
        }
    }

    /// Antecedent and consequent both hold in every direction.
    pub fn both_hold(&self) -> bool {
        !self.directions.is_empty()
            && self.directions.iter().all(|d| {
                d.outcome == CaseVerdict::Confirmed
                    && d.antecedent.as_ref().is_none_or(|a| a.verdict.holds())
                    && d.consequent.verdict.holds()
            })
    }

    /// Some direction has a false antecedent.
    pub fn antecedent_false(&self) -> bool {
        self.directions
            .iter()
            .any(|d| d.antecedent.as_ref().is_some_and(|a| !a.verdict.holds()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("{theorem} assumes an abelian group and `{system}` is not abelian")]
    NonAbelian { theorem: TheoremId, system: String },
    #[error(transparent)]
    Hyperspace(#[from] HyperspaceError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub bounds: Bounds,
    /// Largest base accepted for the materialized hyperspace.
    pub cap: usize,
    /// Run abelian-only constructions on non-abelian groups, reported as
    /// informational.
    pub allow_non_abelian: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            bounds: Bounds::default(),
            cap: DEFAULT_HYPERSPACE_CAP,
            allow_non_abelian: false,
        }
    }
}

/// Number of pairs per tuple in the simultaneous-witness check, and the
/// largest tuple count before it drops to two pairs.
const P35_PAIRS: usize = 3;
const P35_MAX_TUPLES: usize = 250_000;
/// Largest point pool for the extension laws on a shift.
const EXTENSION_POOL: usize = 10;
/// Finite bases up to this size check the extension laws over every subset.
const EXTENSION_EXHAUSTIVE: usize = 8;

pub fn verify_theorem(
    id: TheoremId,
    system: &SystemHandle,
    options: &VerifyOptions,
) -> Result<TheoremCase, HarnessError> {
    match system {
        SystemHandle::Finite(sys) => {
            let abelian = sys.group().is_abelian();
            gate(id, sys.label(), abelian, options)?;
            let hyper = if needs_hyperspace(id) {
                Some(build_hyperspace_system(sys, options.cap)?)
            } else {
                None
            };
            let d = FiniteDynamics::new(sys);
            let mut case = Runner {
                d: &d,
                mode: Mode::Exact,
                base: &|p| finite::check(sys, p).verdict,
                hyper: hyper.as_ref().map(|h| h.system()),
                table: None,
            }
            .run(id, options)?;
            case.informational = !abelian && id.requires_abelian();
            Ok(case)
        }
        SystemHandle::Shift(sft) => {
            let d = ShiftDynamics::new(ShiftSpace::new(sft.clone()), options.bounds);
            let base = |p| bounded::check(&d, p).verdict;
            let mut case = Runner {
                d: &d,
                mode: Mode::Bounded,
                base: &base,
                hyper: None,
                table: None,
            }
            .run(id, options)?;
            case.bounds = Some(options.bounds);
            Ok(case)
        }
    }
}

fn gate(
    id: TheoremId,
    label: &str,
    abelian: bool,
    options: &VerifyOptions,
) -> Result<(), HarnessError> {
    if id.requires_abelian() && !abelian && !options.allow_non_abelian {
        return Err(HarnessError::NonAbelian {
            theorem: id,
            system: label.into(),
        });
    }
    Ok(())
}

fn needs_hyperspace(id: TheoremId) -> bool {
    !matches!(id, TheoremId::P32 | TheoremId::P33 | TheoremId::P35)
}

fn conjunction(a: Verdict, b: Verdict) -> Verdict {
    Verdict::from_outcome(a.holds() && b.holds(), a.is_bounded() || b.is_bounded())
}

/// Decides one case for either mode.
struct Runner<'a, D: Dynamics> {
    d: &'a D,
    mode: Mode,
    base: &'a (dyn Fn(Property) -> Verdict + Sync),
    /// The materialized hyperspace, in exact mode.
    hyper: Option<&'a ActionSystem>,
    table: Option<InducedTable<'a, D>>,
}

struct Acc {
    witnesses: CaseWitnesses,
    notes: Vec<String>,
    consistent: bool,
    excluded: Option<Vec<GroupElement>>,
}

impl<'a, D: Dynamics> Runner<'a, D> {
    fn base(&self, p: Property) -> Side {
        Side::new(Level::Base, p.as_str(), (self.base)(p))
    }

    /// The induced verdict: exact on a materialized hyperspace, otherwise
    /// from the witnesses over the basic domain. Both run in exact mode and
    /// must agree where the domain can decide.
    fn induced(&mut self, p: Property, acc: &mut Acc) -> Side {
        let d = self.d;
        let table = self.table.get_or_insert_with(|| InducedTable::new(d));
        let out = match p {
            Property::Transitive => table.transitivity(),
            Property::WeaklyMixing => table.weak_mixing(),
            Property::Mixing => table.mixing(),
            Property::DensePeriodicPoints => table.periodic(),
            _ => unreachable!("no induced search for {p}"),
        };
        acc.witnesses.absorb(&out);
        if !out.all_sound {
            acc.notes.push(format!("a {p} witness failed its recheck"));
        }
        if p == Property::Mixing && out.excluded.is_some() {
            acc.excluded = out.excluded.clone();
        }
        let verdict = match self.hyper {
            Some(h) => {
                let exact = finite::check(h, p).verdict;
                if exact.holds() && !out.holds {
                    acc.consistent = false;
                    acc.notes.push(format!(
                        "{p}: the hyperspace holds but the basic domain found a failure"
                    ));
                }
                exact
            }
            None if out.vacuous => Verdict::VacuouslyHolds,
            None => Verdict::from_outcome(out.holds, true),
        };
        Side::new(Level::Hyperspace, p.as_str(), verdict)
    }

    fn run(mut self, id: TheoremId, options: &VerifyOptions) -> Result<TheoremCase, HarnessError> {
        use Property::{DensePeriodicPoints as Dpp, Mixing, Transitive, WeaklyMixing as Wm};
        let mut acc = Acc {
            witnesses: CaseWitnesses {
                all_sound: true,
                ..Default::default()
            },
            notes: Vec::new(),
            consistent: true,
            excluded: None,
        };
        let mut directions = Vec::new();
        let mut corollaries = Vec::new();
        let mut direct = None;
        match id {
            TheoremId::P32 | TheoremId::P33 => {
                let verdict = self.extension_law(id);
                directions.push(Direction::statement(Side::new(
                    Level::Hyperspace,
                    extension_name(id),
                    verdict,
                )));
            }
            TheoremId::T34 => {
                let induced = self.induced(Transitive, &mut acc);
                directions.push(Direction::implication(
                    "hyperspace-to-base",
                    induced,
                    self.base(Transitive),
                ));
            }
            TheoremId::P35 => {
                let base = self.base(Wm);
                let consequent =
                    self.simultaneous(base.verdict.holds(), options.allow_non_abelian, &mut acc)?;
                directions.push(Direction::implication("forward", base, consequent));
            }
            TheoremId::T36 => {
                let (b, h) = (self.base(Wm), self.induced(Wm, &mut acc));
                directions.push(Direction::implication("forward", b.clone(), h.clone()));
                directions.push(Direction::implication("backward", h.clone(), b.clone()));
                let (bt, ht) = (self.base(Transitive), self.induced(Transitive, &mut acc));
                corollaries.push(Direction::implication("C37a", b, ht));
                corollaries.push(Direction::implication("C37b", h, bt));
            }
            TheoremId::C37a => {
                let b = self.base(Wm);
                directions.push(Direction::implication(
                    "forward",
                    b,
                    self.induced(Transitive, &mut acc),
                ));
            }
            TheoremId::C37b => {
                let h = self.induced(Wm, &mut acc);
                directions.push(Direction::implication("forward", h, self.base(Transitive)));
            }
            TheoremId::T38 => {
                let (b, h) = (self.base(Mixing), self.induced(Mixing, &mut acc));
                directions.push(Direction::implication("forward", b.clone(), h.clone()));
                directions.push(Direction::implication("backward", h, b));
            }
            TheoremId::T39 => {
                let b = self.base(Dpp);
                directions.push(Direction::implication(
                    "forward",
                    b,
                    self.induced(Dpp, &mut acc),
                ));
            }
            TheoremId::T310 => {
                let (bw, bp) = (self.base(Wm), self.base(Dpp));
                let (ht, hp) = (
                    self.induced(Transitive, &mut acc),
                    self.induced(Dpp, &mut acc),
                );
                let antecedent = Side::new(
                    Level::Base,
                    "weakly-mixing+dense-periodic-points",
                    conjunction(bw.verdict, bp.verdict),
                );
                let consequent = Side::new(
                    Level::Hyperspace,
                    Property::DevaneyChaotic.as_str(),
                    conjunction(ht.verdict, hp.verdict),
                );
                corollaries.push(Direction::implication("C37a", bw, ht));
                corollaries.push(Direction::implication("T39", bp, hp));
                if let Some(h) = self.hyper {
                    let v = finite::is_devaney_chaotic(h).verdict;
                    if v.holds() != consequent.verdict.holds() {
                        acc.consistent = false;
                        acc.notes.push(
                            "direct Devaney evaluation disagrees with the composition".into(),
                        );
                    }
                    direct = Some(Side::new(
                        Level::Hyperspace,
                        Property::DevaneyChaotic.as_str(),
                        v,
                    ));
                }
                directions.push(Direction::implication("forward", antecedent, consequent));
            }
        }
        let refuted = directions
            .iter()
            .chain(&corollaries)
            .any(|d| d.outcome == CaseVerdict::Refuted)
            || !acc.consistent
            || !acc.witnesses.all_sound;
        let verdict = if refuted {
            CaseVerdict::Refuted
        } else if directions
            .iter()
            .all(|d| d.outcome == CaseVerdict::ConfirmedVacuously)
        {
            CaseVerdict::ConfirmedVacuously
        } else {
            CaseVerdict::Confirmed
        };
        if directions.iter().any(|d| d.converse_fails) {
            acc.notes
                .push("antecedent false and consequent true: the converse fails here".into());
        }
        Ok(TheoremCase {
            theorem: id,
            statement: id.statement().into(),
            system: self.d.label().into(),
            mode: self.mode,
            bounds: None,
            verdict,
            vacuous: verdict == CaseVerdict::ConfirmedVacuously,
            reason: None,
            directions,
            corollaries,
            direct,
            witnesses: acc.witnesses,
            excluded: acc.excluded,
            informational: false,
            notes: acc.notes,
        })
    }

    /// The two extension laws. Exact mode goes through the hyperspace
    /// elements; bounded mode checks finite sets of periodic points picked
    /// from the cylinders.
    fn extension_law(&self, id: TheoremId) -> Verdict {
        if let Some(verdict) = self.exact_extension_law(id) {
            return verdict;
        }
        let d = self.d;
        let opens = d.domain_opens();
        let mut pool: Vec<D::Point> = opens.iter().filter_map(|u| d.pick_point(u)).collect();
        pool.sort();
        pool.dedup();
        pool.truncate(EXTENSION_POOL);
        let member = |u: &D::Open| -> u64 {
            pool.iter()
                .enumerate()
                .filter(|(_, x)| d.contains_point(u, x))
                .fold(0, |m, (i, _)| m | 1 << i)
        };
        let masks: Vec<u64> = opens.iter().map(member).collect();
        let subsets = 1u64..1 << pool.len();
        let holds = match id {
            TheoremId::P32 => opens.par_iter().enumerate().all(|(i, u)| {
                opens.iter().enumerate().all(|(j, v)| {
                    let meet = member(&d.meet(u, v));
                    subsets.clone().all(|a| {
                        let in_both = a & !masks[i] == 0 && a & !masks[j] == 0;
                        in_both == (a & !meet == 0)
                    })
                })
            }),
            _ => d.elements().par_iter().all(|g| {
                opens.iter().enumerate().all(|(i, u)| {
                    let image = d.act(g, u);
                    subsets.clone().filter(|a| a & !masks[i] == 0).all(|a| {
                        (0..pool.len())
                            .filter(|k| a >> k & 1 == 1)
                            .all(|k| d.contains_point(&image, &d.act_point(g, &pool[k])))
                    })
                })
            }),
        };
        Verdict::from_outcome(holds, true)
    }

    fn exact_extension_law(&self, id: TheoremId) -> Option<Verdict> {
        let sys = self.d.as_finite()?;
        let n = sys.point_count();
        if n > EXTENSION_EXHAUSTIVE {
            return None;
        }
        let masks: Vec<PointSet> = (1u64..1 << n).map(PointSet::from_mask).collect();
        let ext = |u: &PointSet| -> Vec<PointSet> {
            extension_members(u)
                .into_iter()
                .map(|k| k.into_members())
                .collect()
        };
        let holds = match id {
            TheoremId::P32 => masks.par_iter().all(|u| {
                let eu = ext(u);
                masks.iter().all(|v| {
                    let ev = ext(v);
                    let both: Vec<&PointSet> = eu.iter().filter(|k| ev.contains(k)).collect();
                    let meet = ext(&u.intersection(v));
                    both.len() == meet.len() && both.iter().all(|k| meet.contains(k))
                })
            }),
            _ => sys.image().elements().par_iter().all(|p| {
                masks.iter().all(|u| {
                    let target = u.map(|x| p.apply(x));
                    ext(u)
                        .iter()
                        .all(|k| k.map(|x| p.apply(x)).is_subset(&target))
                })
            }),
        };
        Some(Verdict::from_outcome(holds, false))
    }

    /// One element serving `n` pairs at once, over tuples of basic opens;
    /// with the antecedent, every tuple is also replayed through the proof's
    /// chain construction.
    fn simultaneous(
        &self,
        antecedent: bool,
        allow_non_abelian: bool,
        acc: &mut Acc,
    ) -> Result<Side, HarnessError> {
        let d = self.d;
        let opens = d.basic_opens();
        let pairs = if opens
            .len()
            .checked_pow(2 * P35_PAIRS as u32)
            .is_some_and(|t| t <= P35_MAX_TUPLES)
        {
            P35_PAIRS
        } else {
            2
        };
        let total = opens.len().pow(2 * pairs as u32);
        let elems = d.elements();
        // conn[g][i * m + j]: element g connects opens i and j.
        let m = opens.len();
        let conn: Vec<Vec<bool>> = elems
            .par_iter()
            .map(|g| {
                (0..m * m)
                    .map(|ij| d.connects(g, &opens[ij / m], &opens[ij % m]))
                    .collect()
            })
            .collect();
        let digits =
            |t: usize| -> Vec<usize> { (0..2 * pairs).map(|p| t / m.pow(p as u32) % m).collect() };
        let failing = (0..total).into_par_iter().find_first(|&t| {
            let ds = digits(t);
            !conn
                .iter()
                .any(|row| (0..pairs).all(|p| row[ds[2 * p] * m + ds[2 * p + 1]]))
        });
        let bounded = self.mode == Mode::Bounded;
        if let Some(t) = failing {
            let ds = digits(t);
            let desc: Vec<String> = (0..pairs)
                .map(|p| {
                    format!(
                        "({:?}, {:?})",
                        d.describe_open(&opens[ds[2 * p]]),
                        d.describe_open(&opens[ds[2 * p + 1]])
                    )
                })
                .collect();
            acc.notes
                .push(format!("no element connects the pairs {}", desc.join(", ")));
            return Ok(Side::new(
                Level::Base,
                "simultaneous-pairs",
                Verdict::from_outcome(false, bounded),
            ));
        }
        acc.notes.push(format!(
            "{total} tuples of {pairs} pairs over {m} basic opens"
        ));
        if antecedent {
            let chains: Vec<Result<WitnessChain, CheckError>> = (0..total)
                .into_par_iter()
                .map(|t| {
                    let ds = digits(t);
                    let us: Vec<D::Open> = (0..pairs).map(|p| opens[ds[2 * p]].clone()).collect();
                    let vs: Vec<D::Open> =
                        (0..pairs).map(|p| opens[ds[2 * p + 1]].clone()).collect();
                    simultaneous_weak_mixing_witness(d, &us, &vs, allow_non_abelian).map(|(c, _)| c)
                })
                .collect();
            for c in chains {
                acc.witnesses.count += 1;
                match c {
                    Ok(c) => {
                        acc.witnesses.all_sound &= c.satisfied && c.containment_holds;
                        if acc.witnesses.chains.len() < CASE_WITNESS_CAP {
                            acc.witnesses.chains.push(c);
                        }
                    }
                    Err(CheckError::Blocked { step, detail }) => {
                        acc.witnesses.all_sound = false;
                        acc.notes
                            .push(format!("chain blocked at step {step}: {detail}"));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        Ok(Side::new(
            Level::Base,
            "simultaneous-pairs",
            Verdict::from_outcome(true, bounded),
        ))
    }
}

fn extension_name(id: TheoremId) -> &'static str {
    match id {
        TheoremId::P32 => "extension-meet",
        _ => "extension-image",
    }
}
