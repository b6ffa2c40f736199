//! Return sets `N(U, V)` and the constructive steps of the transfer proofs:
//! the simultaneous witness for `n` pairs, the Vietoris witness `G`, and the
//! finite periodic witness `A = {x_1, …, x_n}`.

use serde::Serialize;

use super::dynamics::{Dynamics, ShiftDynamics};
use super::report::{OpenSet, PointRepr, WITNESS_CAP};
use super::CheckError;
use crate::group::{ActionSystem, GroupElement};
use crate::sets::PointSet;
use crate::systems::shift::Pattern;

/// `N(U, V) = {γ : γ(U) ∩ V ≠ ∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NSet {
    /// The description below is the whole set, not a truncation.
    pub exact: bool,
    /// Representatives of the image elements in the set. For `Z^d` the set
    /// is the union of the cosets `rep + kernel`.
    pub cosets: Vec<GroupElement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<Vec<i64>>>,
    pub radius: u64,
    /// Members of length at most `radius`, in canonical order, capped.
    pub enumerated: Vec<GroupElement>,
    pub enumerated_count: u64,
}

impl NSet {
    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty() && self.enumerated.is_empty()
    }
}

/// Largest ball enumerated for display.
const BALL_LIMIT: usize = 1 << 20;

/// Exact return set on a finite system, as a union of fibers.
pub fn n_set(
    sys: &ActionSystem,
    u: &PointSet,
    v: &PointSet,
    radius: u64,
) -> Result<NSet, CheckError> {
    for (i, s) in [u, v].into_iter().enumerate() {
        if s.is_empty() {
            return Err(CheckError::EmptyOpen(i));
        }
        if s.bound() > sys.point_count() {
            return Err(CheckError::OutOfRange {
                point: s.bound() - 1,
                points: sys.point_count(),
            });
        }
    }
    let image = sys.image();
    let hits: Vec<bool> = image
        .elements()
        .iter()
        .map(|p| u.iter().any(|x| v.contains(p.apply(x))))
        .collect();
    let cosets = (0..image.order())
        .filter(|&g| hits[g])
        .map(|g| image.representative(g).clone())
        .collect();
    let mut enumerated = Vec::new();
    let mut enumerated_count = 0;
    for g in sys.ball(radius, BALL_LIMIT) {
        if hits[sys.element_image(&g)?] {
            enumerated_count += 1;
            if enumerated.len() < WITNESS_CAP {
                enumerated.push(g);
            }
        }
    }
    Ok(NSet {
        exact: true,
        cosets,
        kernel: image.kernel_basis().map(<[_]>::to_vec),
        radius,
        enumerated,
        enumerated_count,
    })
}

/// Return set on a shift space: exponents within the radius only.
pub fn n_set_shift(d: &ShiftDynamics, u: &Pattern, v: &Pattern) -> NSet {
    let members: Vec<GroupElement> = d
        .elements()
        .iter()
        .filter(|n| d.connects(n, u, v))
        .map(|n| d.describe_elem(n))
        .collect();
    NSet {
        exact: false,
        cosets: Vec::new(),
        kernel: None,
        radius: d.bounds().map_or(0, |b| b.radius),
        enumerated_count: members.len() as u64,
        enumerated: members.into_iter().take(WITNESS_CAP).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    /// The element `γ_k` with `γ_k(E) ∩ U_{k+1} ≠ ∅` and `γ_k(F) ∩ V_{k+1} ≠ ∅`.
    pub pivot: GroupElement,
    /// `E_k = E_{k-1} ∩ γ_k^{-1}(U_{k+1})`.
    pub e: OpenSet,
    /// `F_k = F_{k-1} ∩ γ_k^{-1}(V_{k+1})`.
    pub f: OpenSet,
    /// `N(E_k, F_k) ⊆ N(U_1, V_1) ∩ … ∩ N(U_{k+1}, V_{k+1})` over the
    /// searched elements.
    pub containment_holds: bool,
}

/// The inductive construction of one `γ` serving `n` pairs at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessChain {
    pub steps: Vec<ChainStep>,
    pub element: GroupElement,
    /// The final element connects every pair.
    pub satisfied: bool,
    pub containment_holds: bool,
    pub elements_checked: u64,
    pub exact: bool,
    /// Run on a non-abelian group: results are for exploration only.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

fn check_lists<D: Dynamics>(d: &D, us: &[D::Open], vs: &[D::Open]) -> Result<(), CheckError> {
    if us.is_empty() || us.len() != vs.len() {
        return Err(CheckError::LengthMismatch {
            us: us.len(),
            vs: vs.len(),
        });
    }
    if let Some(i) = us.iter().chain(vs).position(|u| !d.is_nonempty(u)) {
        return Err(CheckError::EmptyOpen(i));
    }
    Ok(())
}

/// Replays the induction: `E_0 = U_1`, `F_0 = V_1`, then at each step a
/// pivot from weak mixing of `(E, U_{k+1})`, `(F, V_{k+1})` shrinks both,
/// and finally any element of `N(E_{n-1}, F_{n-1})` serves all pairs.
pub fn simultaneous_weak_mixing_witness<D: Dynamics>(
    d: &D,
    us: &[D::Open],
    vs: &[D::Open],
    allow_non_abelian: bool,
) -> Result<(WitnessChain, D::Elem), CheckError> {
    if !d.is_abelian() && !allow_non_abelian {
        return Err(CheckError::NonAbelian);
    }
    check_lists(d, us, vs)?;
    let mut e = us[0].clone();
    let mut f = vs[0].clone();
    let mut steps = Vec::new();
    let mut containment_holds = true;
    for k in 1..us.len() {
        let pivot = d
            .elements()
            .iter()
            .find(|g| d.connects(g, &e, &us[k]) && d.connects(g, &f, &vs[k]))
            .ok_or_else(|| CheckError::Blocked {
                step: k,
                detail: "no element connects both (E, U) and (F, V)".into(),
            })?;
        e = d.meet(&e, &d.act_inverse(pivot, &us[k]));
        f = d.meet(&f, &d.act_inverse(pivot, &vs[k]));
        debug_assert!(d.is_nonempty(&e) && d.is_nonempty(&f));
        let contained = d
            .elements()
            .iter()
            .all(|g| !d.connects(g, &e, &f) || (0..=k).all(|i| d.connects(g, &us[i], &vs[i])));
        containment_holds &= contained;
        steps.push(ChainStep {
            pivot: d.describe_elem(pivot),
            e: d.describe_open(&e),
            f: d.describe_open(&f),
            containment_holds: contained,
        });
    }
    let last = d
        .elements()
        .iter()
        .find(|g| d.connects(g, &e, &f))
        .ok_or_else(|| CheckError::Blocked {
            step: us.len(),
            detail: "N(E, F) has no element within the bounds".into(),
        })?;
    let satisfied = us.iter().zip(vs).all(|(u, v)| d.connects(last, u, v));
    let chain = WitnessChain {
        steps,
        element: d.describe_elem(last),
        satisfied,
        containment_holds,
        elements_checked: d.elements().len() as u64,
        exact: d.is_exact(),
        informational: !d.is_abelian(),
    };
    Ok((chain, last.clone()))
}

/// The open `G = ⟨U_1 ∩ γ^{-1}(V_1), …, U_n ∩ γ^{-1}(V_n)⟩` with a finite
/// member `A` and the two membership claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VietorisWitness {
    pub element: GroupElement,
    pub us: Vec<OpenSet>,
    pub vs: Vec<OpenSet>,
    pub g: Vec<OpenSet>,
    /// `A`: one point from each `U_i ∩ γ^{-1}(V_i)`.
    pub member: Vec<PointRepr>,
    /// `γ̂(A)`.
    pub image: Vec<PointRepr>,
    pub member_in_g: bool,
    /// `A ∈ ⟨U_1, …, U_n⟩`.
    pub member_in_u: bool,
    /// `γ̂(A) ∈ ⟨V_1, …, V_n⟩`.
    pub image_in_v: bool,
}

impl VietorisWitness {
    pub fn sound(&self) -> bool {
        self.member_in_g && self.member_in_u && self.image_in_v
    }
}

/// Raw data of a Vietoris witness, for independent rechecks.
pub struct VietorisParts<D: Dynamics> {
    pub g: Vec<D::Open>,
    pub member: Vec<D::Point>,
    pub image: Vec<D::Point>,
}

pub fn construct_vietoris_proof_witness<D: Dynamics>(
    d: &D,
    gamma: &D::Elem,
    us: &[D::Open],
    vs: &[D::Open],
) -> Result<(VietorisWitness, VietorisParts<D>), CheckError> {
    check_lists(d, us, vs)?;
    let g: Vec<D::Open> = us
        .iter()
        .zip(vs)
        .map(|(u, v)| d.meet(u, &d.act_inverse(gamma, v)))
        .collect();
    if let Some(index) = g.iter().position(|w| !d.is_nonempty(w)) {
        return Err(CheckError::Precondition { index });
    }
    let mut member = Vec::with_capacity(g.len());
    for (index, w) in g.iter().enumerate() {
        member.push(
            d.pick_point(w)
                .ok_or(CheckError::NoPeriodicPoint { index })?,
        );
    }
    member.sort();
    member.dedup();
    let mut image: Vec<D::Point> = member.iter().map(|x| d.act_point(gamma, x)).collect();
    image.sort();
    let witness = VietorisWitness {
        element: d.describe_elem(gamma),
        us: us.iter().map(|u| d.describe_open(u)).collect(),
        vs: vs.iter().map(|v| d.describe_open(v)).collect(),
        g: g.iter().map(|w| d.describe_open(w)).collect(),
        member: member.iter().map(|x| d.describe_point(x)).collect(),
        image: image.iter().map(|x| d.describe_point(x)).collect(),
        member_in_g: d.basic_contains(&g, &member),
        member_in_u: d.basic_contains(us, &member),
        image_in_v: d.basic_contains(vs, &image),
    };
    Ok((witness, VietorisParts { g, member, image }))
}

/// A finite periodic point `A = {x_1, …, x_n}` of the induced action inside
/// a basic open, with the stabilizer bounds of the proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicWitness {
    pub opens: Vec<OpenSet>,
    pub member: Vec<PointRepr>,
    pub in_basic: bool,
    /// `[Γ : H_i]` for the chosen `x_i`, in the order of the opens.
    pub point_indices: Vec<u64>,
    /// `[Γ : H]` with `H = ⋂ H_i`.
    pub joint_index: u64,
    /// `∏ [Γ : H_i]`, saturating.
    pub index_product: u64,
    /// Size of the orbit of `A` under the induced action.
    pub orbit_size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_order: Option<u64>,
}

impl PeriodicWitness {
    /// `|orbit(A)| <= [Γ : H] <= ∏ [Γ : H_i]`, and `|orbit(A)|` divides
    /// `[Γ : H]` (and the image order, when finite).
    pub fn sound(&self) -> bool {
        self.in_basic
            && self.orbit_size <= self.joint_index
            && self.joint_index <= self.index_product
            && self.joint_index % self.orbit_size == 0
            && self.image_order.is_none_or(|o| o % self.orbit_size == 0)
    }
}

pub fn construct_periodic_witness<D: Dynamics>(
    d: &D,
    opens: &[D::Open],
) -> Result<(PeriodicWitness, Vec<D::Point>), CheckError> {
    if opens.is_empty() {
        return Err(CheckError::LengthMismatch { us: 0, vs: 0 });
    }
    let mut points = Vec::with_capacity(opens.len());
    for (index, u) in opens.iter().enumerate() {
        if !d.is_nonempty(u) {
            return Err(CheckError::EmptyOpen(index));
        }
        points.push(
            d.pick_point(u)
                .ok_or(CheckError::NoPeriodicPoint { index })?,
        );
    }
    let point_indices: Vec<u64> = points.iter().map(|x| d.point_index(x)).collect();
    let mut member = points;
    member.sort();
    member.dedup();
    let witness = PeriodicWitness {
        opens: opens.iter().map(|u| d.describe_open(u)).collect(),
        member: member.iter().map(|x| d.describe_point(x)).collect(),
        in_basic: d.basic_contains(opens, &member),
        index_product: point_indices.iter().fold(1u64, |a, &b| a.saturating_mul(b)),
        point_indices,
        joint_index: d.joint_index(&member),
        orbit_size: d.set_orbit_size(&member),
        image_order: d.image_order(),
    };
    Ok((witness, member))
}
