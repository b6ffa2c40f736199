//! Induced-level searches over Vietoris basics built from a domain of base
//! opens, with the witnesses of the transfer proofs attached.
//!
//! `γ̂⟨U_1, …, U_m⟩ ∩ ⟨V_1, …, V_k⟩ ≠ ∅` holds iff every row `i` and every
//! column `j` of the table `U_i ∩ γ^{-1}(V_j) ≠ ∅` has a non-empty cell:
//! one point from each non-empty cell forms a finite member, and finite sets
//! are dense in the hyperspace. The proofs use the diagonal of this table
//! after padding both lists to a common length; that is the preferred
//! witness, and the full table is the fallback.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::checkers::bounded::mixing_pair;
use crate::checkers::dynamics::{basic_domain, pad_all, Dynamics};
use crate::checkers::proof::{
    construct_periodic_witness, construct_vietoris_proof_witness, PeriodicWitness, VietorisWitness,
};
use crate::checkers::report::OpenSet;
use crate::group::GroupElement;

/// Recorded witnesses per case; counts and soundness cover all of them.
pub const CASE_WITNESS_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// `G = ⟨U_i ∩ γ^{-1}(V_i)⟩` on the padded lists, as in the proofs.
    Diagonal,
    /// Every non-empty cell `U_i ∩ γ^{-1}(V_j)`.
    Cover,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedWitness {
    pub construction: Construction,
    #[serde(flatten)]
    pub witness: VietorisWitness,
}

/// Element sets as bit vectors over the searched elements.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Outcome of one induced-level property over the basic domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainOutcome {
    pub holds: bool,
    /// Holds only because no element of the group lies in the tail.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub vacuous: bool,
    /// Instances of the quantifier examined.
    pub instances: u64,
    pub witness_count: u64,
    /// Instances certified by the diagonal construction of the proofs.
    pub diagonal_count: u64,
    pub all_sound: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vietoris: Vec<InducedWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub periodic: Vec<PeriodicWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<DomainCounterexample>,
    /// For mixing: the union `F` of the base exclusion sets over the domain.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<Vec<GroupElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainCounterexample {
    /// Hyperspace basics, each a list of base opens.
    pub us: Vec<Vec<OpenSet>>,
    pub vs: Vec<Vec<OpenSet>>,
    pub reason: String,
}

impl DomainOutcome {
    fn new() -> Self {
        Self {
            holds: true,
            vacuous: false,
            instances: 0,
            witness_count: 0,
            diagonal_count: 0,
            all_sound: true,
            vietoris: Vec::new(),
            periodic: Vec::new(),
            counterexample: None,
            excluded: None,
        }
    }
}

/// `γ̂⟨us⟩ ∩ ⟨vs⟩ ≠ ∅`.
pub fn induced_connects<D: Dynamics>(d: &D, g: &D::Elem, us: &[D::Open], vs: &[D::Open]) -> bool {
    let cells: Vec<Vec<bool>> = us
        .iter()
        .map(|u| vs.iter().map(|v| d.connects(g, u, v)).collect())
        .collect();
    cells.iter().all(|row| row.iter().any(|&c| c))
        && (0..vs.len()).all(|j| cells.iter().any(|row| row[j]))
}

/// Membership witness from the full table of non-empty cells.
pub fn cover_witness<D: Dynamics>(
    d: &D,
    g: &D::Elem,
    us: &[D::Open],
    vs: &[D::Open],
) -> Option<VietorisWitness> {
    let cells: Vec<D::Open> = us
        .iter()
        .flat_map(|u| vs.iter().map(move |v| d.meet(u, &d.act_inverse(g, v))))
        .filter(|w| d.is_nonempty(w))
        .collect();
    let mut member = cells
        .iter()
        .map(|w| d.pick_point(w))
        .collect::<Option<Vec<_>>>()?;
    member.sort();
    member.dedup();
    let mut image: Vec<D::Point> = member.iter().map(|x| d.act_point(g, x)).collect();
    image.sort();
    Some(VietorisWitness {
        element: d.describe_elem(g),
        us: us.iter().map(|u| d.describe_open(u)).collect(),
        vs: vs.iter().map(|v| d.describe_open(v)).collect(),
        g: cells.iter().map(|w| d.describe_open(w)).collect(),
        member: member.iter().map(|x| d.describe_point(x)).collect(),
        image: image.iter().map(|x| d.describe_point(x)).collect(),
        member_in_g: d.basic_contains(&cells, &member),
        member_in_u: d.basic_contains(us, &member),
        image_in_v: d.basic_contains(vs, &image),
    })
}

/// Return sets of every ordered pair of domain basics.
pub struct InducedTable<'a, D: Dynamics> {
    d: &'a D,
    basics: Vec<Vec<D::Open>>,
    /// `exact[i * m + j]`: elements with `γ̂(B_i) ∩ B_j ≠ ∅`.
    exact: Vec<Bits>,
    /// `diagonal[i * m + j]`: elements connecting the padded lists pairwise.
    diagonal: Vec<Bits>,
}

impl<'a, D: Dynamics> InducedTable<'a, D> {
    pub fn new(d: &'a D) -> Self {
        let basics = basic_domain(d);
        let m = basics.len();
        let elems = d.elements();
        let rows: Vec<(Vec<Bits>, Vec<Bits>)> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut exact = Vec::with_capacity(m);
                let mut diagonal = Vec::with_capacity(m);
                for j in 0..m {
                    let padded = pad_all(d, &[&basics[i], &basics[j]]);
                    let mut e = Bits::new(elems.len());
                    let mut g = Bits::new(elems.len());
                    for (k, el) in elems.iter().enumerate() {
                        if padded[0]
                            .iter()
                            .zip(&padded[1])
                            .all(|(u, v)| d.connects(el, u, v))
                        {
                            g.set(k);
                            e.set(k);
                        } else if induced_connects(d, el, &basics[i], &basics[j]) {
                            e.set(k);
                        }
                    }
                    exact.push(e);
                    diagonal.push(g);
                }
                (exact, diagonal)
            })
            .collect();
        let (exact, diagonal) =
            rows.into_iter()
                .fold((Vec::new(), Vec::new()), |(mut a, mut b), (e, g)| {
                    a.extend(e);
                    b.extend(g);
                    (a, b)
                });
        Self {
            d,
            basics,
            exact,
            diagonal,
        }
    }

    pub fn basics(&self) -> &[Vec<D::Open>] {
        &self.basics
    }

    fn pair(&self, i: usize, j: usize) -> usize {
        i * self.basics.len() + j
    }

    fn describe(&self, i: usize) -> Vec<OpenSet> {
        self.basics[i]
            .iter()
            .map(|u| self.d.describe_open(u))
            .collect()
    }

    /// Builds the witness for `(B_i, B_j)` at element index `k`.
    fn witness(&self, i: usize, j: usize, k: usize) -> Option<InducedWitness> {
        let d = self.d;
        let g = &d.elements()[k];
        if self.diagonal[self.pair(i, j)].get(k) {
            let padded = pad_all(d, &[&self.basics[i], &self.basics[j]]);
            let (w, _) = construct_vietoris_proof_witness(d, g, &padded[0], &padded[1]).ok()?;
            Some(InducedWitness {
                construction: Construction::Diagonal,
                witness: w,
            })
        } else {
            let w = cover_witness(d, g, &self.basics[i], &self.basics[j])?;
            Some(InducedWitness {
                construction: Construction::Cover,
                witness: w,
            })
        }
    }

    /// Records witnesses for the `(i, j, k)` keys, in order.
    fn record(
        &self,
        out: &mut DomainOutcome,
        keys: impl IntoIterator<Item = (usize, usize, usize)>,
    ) {
        let keys: Vec<(usize, usize, usize)> = keys.into_iter().collect();
        let built: Vec<Option<InducedWitness>> = keys
            .par_iter()
            .map(|&(i, j, k)| self.witness(i, j, k))
            .collect();
        for w in built {
            out.witness_count += 1;
            match w {
                Some(w) => {
                    out.all_sound &= w.witness.sound();
                    if w.construction == Construction::Diagonal {
                        out.diagonal_count += 1;
                    }
                    if out.vietoris.len() < CASE_WITNESS_CAP {
                        out.vietoris.push(w);
                    }
                }
                None => out.all_sound = false,
            }
        }
    }

    /// Preferred element for a pair: the first diagonal one, else the first
    /// exact one.
    fn choose(&self, diagonal: &Bits, exact: &Bits) -> Option<usize> {
        diagonal.first().or_else(|| exact.first())
    }

    pub fn transitivity(&self) -> DomainOutcome {
        let m = self.basics.len();
        let mut out = DomainOutcome::new();
        let mut keys = Vec::new();
        for i in 0..m {
            for j in 0..m {
                out.instances += 1;
                let p = self.pair(i, j);
                match self.choose(&self.diagonal[p], &self.exact[p]) {
                    Some(k) => keys.push((i, j, k)),
                    None => {
                        out.holds = false;
                        out.counterexample = Some(DomainCounterexample {
                            us: vec![self.describe(i)],
                            vs: vec![self.describe(j)],
                            reason: "no searched element connects the two basics".into(),
                        });
                        break;
                    }
                }
            }
            if !out.holds {
                break;
            }
        }
        if out.holds {
            self.record(&mut out, keys);
        }
        out
    }

    /// Weak mixing over all quadruples of domain basics. Witness keys are
    /// deduplicated, so each `(pair, γ)` is built once.
    pub fn weak_mixing(&self) -> DomainOutcome {
        let m = self.basics.len();
        let results: Vec<
            Result<Vec<(usize, usize, usize, usize, usize)>, (usize, usize, usize, usize)>,
        > = (0..m)
            .into_par_iter()
            .map(|i1| {
                let mut found = Vec::new();
                for j1 in 0..m {
                    let p1 = self.pair(i1, j1);
                    for i2 in 0..m {
                        for j2 in 0..m {
                            let p2 = self.pair(i2, j2);
                            let diag = self.diagonal[p1].and(&self.diagonal[p2]);
                            let exact = self.exact[p1].and(&self.exact[p2]);
                            match self.choose(&diag, &exact) {
                                Some(k) => found.push((i1, j1, i2, j2, k)),
                                None => return Err((i1, j1, i2, j2)),
                            }
                        }
                    }
                }
                Ok(found)
            })
            .collect();
        let mut out = DomainOutcome::new();
        let mut keys = BTreeMap::new();
        for r in results {
            match r {
                Ok(found) => {
                    out.instances += found.len() as u64;
                    for (i1, j1, i2, j2, k) in found {
                        keys.insert((i1, j1, k), ());
                        keys.insert((i2, j2, k), ());
                    }
                }
                Err((i1, j1, i2, j2)) => {
                    out.instances += 1;
                    out.holds = false;
                    out.counterexample = Some(DomainCounterexample {
                        us: vec![self.describe(i1), self.describe(i2)],
                        vs: vec![self.describe(j1), self.describe(j2)],
                        reason: "no searched element connects both pairs of basics".into(),
                    });
                    break;
                }
            }
        }
        if out.holds {
            self.record(&mut out, keys.into_keys());
        }
        out
    }

    /// Mixing: for each pair, the elements that fail must avoid the tail,
    /// and must lie in the union `F` of the base exclusion sets of the padded
    /// coordinate pairs; every element outside `F` gets a diagonal witness.
    pub fn mixing(&self) -> DomainOutcome {
        let d = self.d;
        let m = self.basics.len();
        let elems = d.elements();
        let mut out = DomainOutcome::new();
        if !elems.iter().any(|g| d.in_tail(g)) {
            out.holds = d.is_exact();
            out.vacuous = out.holds;
            out.counterexample = (!out.holds).then(|| DomainCounterexample {
                us: vec![],
                vs: vec![],
                reason: "no searched element lies in the tail, so mixing cannot be certified"
                    .into(),
            });
            return out;
        }
        let mut union_f: Vec<usize> = Vec::new();
        let mut keys = Vec::new();
        for i in 0..m {
            for j in 0..m {
                out.instances += 1;
                let p = self.pair(i, j);
                if let Some(k) =
                    (0..elems.len()).find(|&k| !self.exact[p].get(k) && d.in_tail(&elems[k]))
                {
                    out.holds = false;
                    out.counterexample = Some(DomainCounterexample {
                        us: vec![self.describe(i)],
                        vs: vec![self.describe(j)],
                        reason: format!(
                            "the tail element {} does not connect the basics",
                            d.describe_elem(&elems[k])
                        ),
                    });
                    return out;
                }
                let padded = pad_all(d, &[&self.basics[i], &self.basics[j]]);
                let mut f = Vec::new();
                let mut base_mixes = true;
                for (u, v) in padded[0].iter().zip(&padded[1]) {
                    let (below, tail) = mixing_pair(d, u, v);
                    base_mixes &= tail.is_empty();
                    f.extend(
                        below
                            .iter()
                            .filter_map(|g| elems.iter().position(|e| e == g)),
                    );
                }
                if !base_mixes {
                    // The proof's hypothesis fails on this pair; only the
                    // exact exceptions above are meaningful.
                    continue;
                }
                f.sort_unstable();
                f.dedup();
                // Exceptions of the pair must lie inside F.
                if (0..elems.len()).any(|k| !self.exact[p].get(k) && f.binary_search(&k).is_err()) {
                    out.all_sound = false;
                }
                for k in 0..elems.len() {
                    if f.binary_search(&k).is_err() {
                        if self.diagonal[p].get(k) {
                            keys.push((i, j, k));
                        } else {
                            out.all_sound = false;
                        }
                    }
                }
                union_f.extend(f);
            }
        }
        union_f.sort_unstable();
        union_f.dedup();
        out.excluded = Some(
            union_f
                .iter()
                .map(|&k| d.describe_elem(&elems[k]))
                .collect(),
        );
        self.record(&mut out, keys);
        out
    }

    /// A periodic member of every domain basic.
    pub fn periodic(&self) -> DomainOutcome {
        let d = self.d;
        let built: Vec<Option<PeriodicWitness>> = self
            .basics
            .par_iter()
            .map(|b| construct_periodic_witness(d, b).ok().map(|(w, _)| w))
            .collect();
        let mut out = DomainOutcome::new();
        for (i, w) in built.into_iter().enumerate() {
            out.instances += 1;
            match w {
                Some(w) => {
                    out.witness_count += 1;
                    out.all_sound &= w.sound();
                    if out.periodic.len() < CASE_WITNESS_CAP {
                        out.periodic.push(w);
                    }
                }
                None => {
                    out.holds = false;
                    out.counterexample = Some(DomainCounterexample {
                        us: vec![self.describe(i)],
                        vs: vec![],
                        reason: "some open of the basic has no periodic point".into(),
                    });
                    break;
                }
            }
        }
        out
    }
}
