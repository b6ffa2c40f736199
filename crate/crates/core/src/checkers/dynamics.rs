//! A common view of finite systems and shift spaces for the proof replays.
//!
//! Finite systems search the whole image group and are exact. Shift spaces
//! search exponents `|n| <= radius` over cylinder patterns and are bounded.

use std::collections::BTreeSet;
use std::fmt;

use super::report::{Bounds, OpenSet, PointRepr};
use crate::group::{ActionSystem, GroupElement};
use crate::hyperspace::{vietoris_contains, VietorisBasic};
use crate::sets::PointSet;
use crate::systems::sft::cylinders_up_to;
use crate::systems::shift::{joint_period, Pattern, PeriodicPoint, ShiftSpace};

/// Base opens used to build hyperspace basics: cylinders up to this length.
pub const BASIC_CYLINDER_LEN: usize = 2;
/// Number of distinct opens per hyperspace basic.
pub const BASIC_MAX_OPENS: usize = 2;
/// Finite bases up to this size use every non-empty subset as a basic open;
/// larger ones use singletons and the whole space.
pub const FINITE_ALL_SUBSETS: usize = 3;

pub trait Dynamics: Sync {
    type Open: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Point: Clone + Ord + fmt::Debug + Send + Sync;

    fn label(&self) -> &str;
    /// Whether searches cover the whole group (through its image).
    fn is_exact(&self) -> bool;
    fn is_abelian(&self) -> bool;
    fn bounds(&self) -> Option<Bounds>;
    /// Searched group elements in canonical order.
    fn elements(&self) -> &[Self::Elem];
    /// Whether a failure at `g` rules out mixing: `g` lies in an infinite
    /// fiber, or beyond the bounded-mode tail threshold.
    fn in_tail(&self, g: &Self::Elem) -> bool;

    fn whole(&self) -> Self::Open;
    /// `γ(U)`.
    fn act(&self, g: &Self::Elem, u: &Self::Open) -> Self::Open;
    /// `γ^{-1}(U)`.
    fn act_inverse(&self, g: &Self::Elem, u: &Self::Open) -> Self::Open;
    fn meet(&self, a: &Self::Open, b: &Self::Open) -> Self::Open;
    fn is_nonempty(&self, u: &Self::Open) -> bool;
    /// `γ(U) ∩ V ≠ ∅`.
    fn connects(&self, g: &Self::Elem, u: &Self::Open, v: &Self::Open) -> bool {
        self.is_nonempty(&self.meet(&self.act(g, u), v))
    }

    /// Opens from which hyperspace basics are built.
    fn basic_opens(&self) -> Vec<Self::Open>;
    /// The full quantifier domain of base opens.
    fn domain_opens(&self) -> Vec<Self::Open>;
    /// The underlying finite system, if any.
    fn as_finite(&self) -> Option<&ActionSystem> {
        None
    }

    /// A periodic point of `U`, chosen canonically.
    fn pick_point(&self, u: &Self::Open) -> Option<Self::Point>;
    fn contains_point(&self, u: &Self::Open, x: &Self::Point) -> bool;
    fn act_point(&self, g: &Self::Elem, x: &Self::Point) -> Self::Point;
    /// Membership of the finite set `points` in `⟨U_1, …, U_n⟩`.
    fn basic_contains(&self, opens: &[Self::Open], points: &[Self::Point]) -> bool {
        points
            .iter()
            .all(|x| opens.iter().any(|u| self.contains_point(u, x)))
            && opens
                .iter()
                .all(|u| points.iter().any(|x| self.contains_point(u, x)))
    }
    /// `[Γ : Stab(x)]`.
    fn point_index(&self, x: &Self::Point) -> u64;
    /// `[Γ : ⋂ Stab(x_i)]`.
    fn joint_index(&self, xs: &[Self::Point]) -> u64;
    /// Size of the orbit of the set `{x_i}` under the induced action.
    fn set_orbit_size(&self, xs: &[Self::Point]) -> u64;
    /// Order of the image group, when finite.
    fn image_order(&self) -> Option<u64>;

    fn describe_elem(&self, g: &Self::Elem) -> GroupElement;
    fn describe_open(&self, u: &Self::Open) -> OpenSet;
    fn describe_point(&self, x: &Self::Point) -> PointRepr;
}

/// A finite system, searched exactly through its image group.
pub struct FiniteDynamics<'a> {
    sys: &'a ActionSystem,
    elements: Vec<usize>,
}

impl<'a> FiniteDynamics<'a> {
    pub fn new(sys: &'a ActionSystem) -> Self {
        Self {
            sys,
            elements: (0..sys.image().order()).collect(),
        }
    }

    pub fn system(&self) -> &ActionSystem {
        self.sys
    }

    fn pointwise_stabilizer(&self, xs: &[usize]) -> u64 {
        self.sys
            .image()
            .elements()
            .iter()
            .filter(|p| xs.iter().all(|&x| p.apply(x) == x))
            .count() as u64
    }
}

impl Dynamics for FiniteDynamics<'_> {
    type Open = PointSet;
    type Elem = usize;
    type Point = usize;

    fn label(&self) -> &str {
        self.sys.label()
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn is_abelian(&self) -> bool {
        self.sys.group().is_abelian()
    }

    fn bounds(&self) -> Option<Bounds> {
        None
    }

    fn elements(&self) -> &[usize] {
        &self.elements
    }

    fn in_tail(&self, _g: &usize) -> bool {
        self.sys.image().fibers_infinite()
    }

    fn whole(&self) -> PointSet {
        PointSet::full(self.sys.point_count())
    }

    fn act(&self, g: &usize, u: &PointSet) -> PointSet {
        let p = self.sys.image().element(*g);
        u.map(|x| p.apply(x))
    }

    fn act_inverse(&self, g: &usize, u: &PointSet) -> PointSet {
        self.act(&self.sys.image().inverse_index(*g), u)
    }

    fn meet(&self, a: &PointSet, b: &PointSet) -> PointSet {
        a.intersection(b)
    }

    fn is_nonempty(&self, u: &PointSet) -> bool {
        !u.is_empty()
    }

    fn connects(&self, g: &usize, u: &PointSet, v: &PointSet) -> bool {
        let p = self.sys.image().element(*g);
        u.iter().any(|x| v.contains(p.apply(x)))
    }

    fn basic_opens(&self) -> Vec<PointSet> {
        let n = self.sys.point_count();
        if n <= FINITE_ALL_SUBSETS {
            (1..1u64 << n).map(PointSet::from_mask).collect()
        } else {
            let mut out: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
            out.push(PointSet::full(n));
            out
        }
    }

    fn domain_opens(&self) -> Vec<PointSet> {
        let n = self.sys.point_count();
        if n <= 6 {
            (1..1u64 << n).map(PointSet::from_mask).collect()
        } else {
            self.basic_opens()
        }
    }

    fn as_finite(&self) -> Option<&ActionSystem> {
        Some(self.sys)
    }

    fn pick_point(&self, u: &PointSet) -> Option<usize> {
        u.first()
    }

    fn contains_point(&self, u: &PointSet, x: &usize) -> bool {
        u.contains(*x)
    }

    fn act_point(&self, g: &usize, x: &usize) -> usize {
        self.sys.image().element(*g).apply(*x)
    }

    fn basic_contains(&self, opens: &[PointSet], points: &[usize]) -> bool {
        match VietorisBasic::new(opens.to_vec()) {
            Ok(basic) => vietoris_contains(&basic, &points.iter().copied().collect()),
            Err(_) => false,
        }
    }

    fn point_index(&self, x: &usize) -> u64 {
        self.sys.image().order() as u64 / self.pointwise_stabilizer(&[*x])
    }

    fn joint_index(&self, xs: &[usize]) -> u64 {
        self.sys.image().order() as u64 / self.pointwise_stabilizer(xs)
    }

    fn set_orbit_size(&self, xs: &[usize]) -> u64 {
        let set: PointSet = xs.iter().copied().collect();
        let images: BTreeSet<Vec<usize>> = self
            .sys
            .image()
            .elements()
            .iter()
            .map(|p| set.map(|x| p.apply(x)).to_vec())
            .collect();
        images.len() as u64
    }

    fn image_order(&self) -> Option<u64> {
        Some(self.sys.image().order() as u64)
    }

    fn describe_elem(&self, g: &usize) -> GroupElement {
        self.sys.image().representative(*g).clone()
    }

    fn describe_open(&self, u: &PointSet) -> OpenSet {
        OpenSet::Points(u.clone())
    }

    fn describe_point(&self, x: &usize) -> PointRepr {
        PointRepr::Index(*x)
    }
}

/// A shift space searched over exponents `|n| <= radius`.
pub struct ShiftDynamics {
    space: ShiftSpace,
    bounds: Bounds,
    elements: Vec<i64>,
    tail: u64,
}

impl ShiftDynamics {
    pub fn new(space: ShiftSpace, bounds: Bounds) -> Self {
        let k = space.sft().alphabet_size() as u64;
        // Cylinders of length <= L anchored at 0 are joined by every gap of
        // at least the primitivity exponent, which is at most (k-1)^2 + 1.
        let tail = bounds.cyl_len as u64 + (k - 1) * (k - 1) + 1;
        Self {
            elements: ShiftSpace::exponents(bounds.radius),
            space,
            bounds,
            tail,
        }
    }

    pub fn space(&self) -> &ShiftSpace {
        &self.space
    }

    /// Exponents `|n| >= tail` must all connect for mixing.
    pub fn tail(&self) -> u64 {
        self.tail
    }

    /// The bounded domain of base opens: cylinders up to the bound length.
    pub fn cylinders(&self, max_len: usize) -> Vec<Pattern> {
        cylinders_up_to(self.space.sft(), max_len)
            .iter()
            .map(Pattern::from_cylinder)
            .collect()
    }
}

impl Dynamics for ShiftDynamics {
    type Open = Pattern;
    type Elem = i64;
    type Point = PeriodicPoint;

    fn label(&self) -> &str {
        self.space.name()
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn is_abelian(&self) -> bool {
        true
    }

    fn bounds(&self) -> Option<Bounds> {
        Some(self.bounds)
    }

    fn elements(&self) -> &[i64] {
        &self.elements
    }

    fn in_tail(&self, g: &i64) -> bool {
        g.unsigned_abs() >= self.tail
    }

    fn whole(&self) -> Pattern {
        Pattern::whole()
    }

    fn act(&self, g: &i64, u: &Pattern) -> Pattern {
        u.shifted(*g)
    }

    fn act_inverse(&self, g: &i64, u: &Pattern) -> Pattern {
        u.shifted(-*g)
    }

    fn meet(&self, a: &Pattern, b: &Pattern) -> Pattern {
        a.meet(b)
    }

    fn is_nonempty(&self, u: &Pattern) -> bool {
        u.is_nonempty(self.space.reach())
    }

    fn basic_opens(&self) -> Vec<Pattern> {
        self.cylinders(self.bounds.cyl_len.min(BASIC_CYLINDER_LEN))
    }

    fn domain_opens(&self) -> Vec<Pattern> {
        self.cylinders(self.bounds.cyl_len)
    }

    fn pick_point(&self, u: &Pattern) -> Option<PeriodicPoint> {
        u.periodic_point(self.space.reach())
    }

    fn contains_point(&self, u: &Pattern, x: &PeriodicPoint) -> bool {
        u.contains(x)
    }

    fn act_point(&self, g: &i64, x: &PeriodicPoint) -> PeriodicPoint {
        x.shifted(*g)
    }

    fn point_index(&self, x: &PeriodicPoint) -> u64 {
        x.period()
    }

    fn joint_index(&self, xs: &[PeriodicPoint]) -> u64 {
        joint_period(xs)
    }

    fn set_orbit_size(&self, xs: &[PeriodicPoint]) -> u64 {
        let set: BTreeSet<&PeriodicPoint> = xs.iter().collect();
        let bound = joint_period(xs);
        (1..=bound)
            .find(|&m| xs.iter().all(|x| set.contains(&x.shifted(m as i64))))
            .expect("the joint period fixes every point")
    }

    fn image_order(&self) -> Option<u64> {
        None
    }

    fn describe_elem(&self, g: &i64) -> GroupElement {
        GroupElement::Exponents(vec![*g])
    }

    fn describe_open(&self, u: &Pattern) -> OpenSet {
        match u.as_cylinder() {
            Some(c) => OpenSet::Cylinder {
                anchor: c.anchor,
                word: c.word,
            },
            None => OpenSet::Pattern(u.cells().to_vec()),
        }
    }

    fn describe_point(&self, x: &PeriodicPoint) -> PointRepr {
        PointRepr::Periodic(x.clone())
    }
}

/// Hyperspace basics `⟨W_1, …, W_m⟩` with `1 <= m <= BASIC_MAX_OPENS`
/// distinct opens from the domain, in canonical order.
pub fn basic_domain<D: Dynamics>(dynamics: &D) -> Vec<Vec<D::Open>> {
    let opens = dynamics.basic_opens();
    let mut out: Vec<Vec<D::Open>> = opens.iter().map(|u| vec![u.clone()]).collect();
    if BASIC_MAX_OPENS >= 2 {
        for i in 0..opens.len() {
            for j in i + 1..opens.len() {
                out.push(vec![opens[i].clone(), opens[j].clone()]);
            }
        }
    }
    out
}

/// Pads each family up to the longest length by repeating its last open,
/// which leaves the basic it generates unchanged.
pub fn pad_all<D: Dynamics>(dynamics: &D, families: &[&[D::Open]]) -> Vec<Vec<D::Open>> {
    let k = families.iter().map(|f| f.len()).max().unwrap_or(0);
    families
        .iter()
        .map(|f| {
            let mut v = f.to_vec();
            let last = v.last().cloned().unwrap_or_else(|| dynamics.whole());
            v.resize(k, last);
            v
        })
        .collect()
}
