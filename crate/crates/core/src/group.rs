//! Finitely generated groups acting by bijections on a finite space.
//!
//! A group is either free abelian `Z^d`, with one generator per coordinate,
//! or a finite group identified with its image in the symmetric group of the
//! points. Every question that quantifies over the whole group is answered
//! through the finite image plus the fact that, for `Z^d` with `d > 0`, every
//! fiber of the map onto the image is an infinite coset of the kernel.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice;
use crate::metric::FiniteMetricSpace;
use crate::sets::PointSet;

/// Upper bound on the order of an image group.
pub const MAX_IMAGE_ORDER: usize = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {generator} is not a bijection: {reason}")]
    NotBijection { generator: usize, reason: String },
    #[error("generator {generator} acts on {len} points, space has {points}")]
    WrongSize {
        generator: usize,
        len: usize,
        points: usize,
    },
    #[error("generators {a} and {b} do not commute at point {point}")]
    NotCommuting { a: usize, b: usize, point: usize },
    #[error("generator index {index} out of range ({count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("element has the wrong shape for this group: {0}")]
    ElementShape(String),
    #[error("point {point} is out of range for a space with {points} points")]
    PointOutOfRange { point: usize, points: usize },
    #[error("image group exceeds {MAX_IMAGE_ORDER} elements")]
    ImageTooLarge,
}

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Permutation {
    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(format!("image of {i} is {x}, outside 0..{n}"));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(format!("{x} is hit twice"));
            }
        }
        Ok(Self(images.into_iter().map(|x| x as u32).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    /// An n-cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn rotation(n: usize) -> Self {
        Self((0..n as u32).map(|i| (i + 1) % n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self(inv)
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(self.len());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn commutes_with(&self, other: &Self) -> Option<usize> {
        (0..self.len()).find(|&x| self.apply(other.apply(x)) != other.apply(self.apply(x)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// `Z^d`, one free generator per coordinate.
    FreeAbelian,
    /// A finite group identified with its image.
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub forward: Permutation,
    pub inverse: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    generators: Vec<Generator>,
    abelian: bool,
}

impl GroupSpec {
    /// Checks sizes, and pairwise commutation whenever the group is declared
    /// free abelian or flagged abelian.
    pub fn new(
        kind: GroupKind,
        generators: Vec<Permutation>,
        abelian: bool,
        points: usize,
    ) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != points {
                return Err(GroupError::WrongSize {
                    generator: i,
                    len: g.len(),
                    points,
                });
            }
        }
        let abelian = abelian || kind == GroupKind::FreeAbelian;
        if abelian {
            for a in 0..generators.len() {
                for b in a + 1..generators.len() {
                    if let Some(point) = generators[a].commutes_with(&generators[b]) {
                        return Err(GroupError::NotCommuting { a, b, point });
                    }
                }
            }
        }
        let generators = generators
            .into_iter()
            .map(|g| Generator {
                inverse: g.inverse(),
                forward: g,
            })
            .collect();
        Ok(Self {
            kind,
            generators,
            abelian,
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Whether the abstract group is finite. `Z^0` is the trivial group.
    pub fn is_finite_group(&self) -> bool {
        self.kind == GroupKind::Finite || self.generators.is_empty()
    }

    /// Generator letters in canonical order: `g0, g0^-1, g1, g1^-1, ...`.
    fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        (0..self.generators.len()).flat_map(|i| [(i, 1), (i, -1)])
    }
}

/// An element of the abstract group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupElement {
    /// Normal form in `Z^d`.
    Exponents(Vec<i64>),
    /// Reduced word `g_{i1}^{e1} ... g_{ik}^{ek}`; no two adjacent letters
    /// share a generator and no exponent is zero.
    Word(Vec<(usize, i64)>),
}

impl GroupElement {
    pub fn identity(group: &GroupSpec) -> Self {
        match group.kind {
            GroupKind::FreeAbelian => Self::Exponents(vec![0; group.generator_count()]),
            GroupKind::Finite => Self::Word(Vec::new()),
        }
    }

    pub fn generator(group: &GroupSpec, index: usize, exponent: i64) -> Self {
        match group.kind {
            GroupKind::FreeAbelian => {
                let mut v = vec![0; group.generator_count()];
                v[index] = exponent;
                Self::Exponents(v)
            }
            GroupKind::Finite => Self::word(vec![(index, exponent)]),
        }
    }

    /// Builds a word element, reducing it to normal form.
    pub fn word(letters: Vec<(usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(letters.len());
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Self::Word(out)
    }

    /// `self · other`, acting as `other` first.
    pub fn multiply(&self, other: &Self) -> Result<Self, GroupError> {
        match (self, other) {
            (Self::Exponents(a), Self::Exponents(b)) if a.len() == b.len() => Ok(Self::Exponents(
                a.iter().zip(b).map(|(x, y)| x + y).collect(),
            )),
            (Self::Word(a), Self::Word(b)) => Ok(Self::word(a.iter().chain(b).copied().collect())),
            _ => Err(GroupError::ElementShape("mismatched element kinds".into())),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Exponents(v) => Self::Exponents(v.iter().map(|x| -x).collect()),
            Self::Word(w) => Self::Word(w.iter().rev().map(|&(g, e)| (g, -e)).collect()),
        }
    }

    /// Length in the generators and their inverses.
    pub fn length(&self) -> u64 {
        match self {
            Self::Exponents(v) => v.iter().map(|x| x.unsigned_abs()).sum(),
            Self::Word(w) => w.iter().map(|(_, e)| e.unsigned_abs()).sum(),
        }
    }

    /// The letter sequence used for canonical ordering.
    fn letter_keys(&self) -> Vec<usize> {
        let mut keys = Vec::new();
        let mut push = |g: usize, e: i64| {
            let key = 2 * g + usize::from(e < 0);
            keys.extend(std::iter::repeat(key).take(e.unsigned_abs() as usize));
        };
        match self {
            Self::Exponents(v) => v.iter().enumerate().for_each(|(g, &e)| push(g, e)),
            Self::Word(w) => w.iter().for_each(|&(g, e)| push(g, e)),
        }
        keys
    }

    /// Canonical enumeration key: total length, then letters.
    pub fn canonical_key(&self) -> (u64, Vec<usize>) {
        (self.length(), self.letter_keys())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exponents(v) => write!(f, "{v:?}"),
            Self::Word(w) if w.is_empty() => write!(f, "e"),
            Self::Word(w) => {
                let parts: Vec<String> = w.iter().map(|(g, e)| format!("g{g}^{e}")).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

/// The finite image of the group in the symmetric group of the points.
#[derive(Debug, Clone)]
pub struct ImageGroup {
    elements: Vec<Permutation>,
    representatives: Vec<GroupElement>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    kernel: Option<Vec<Vec<i64>>>,
    group_finite: bool,
}

impl ImageGroup {
    fn close(group: &GroupSpec, points: usize) -> Result<Self, GroupError> {
        let id = Permutation::identity(points);
        let mut elements = vec![id.clone()];
        let mut representatives = vec![GroupElement::identity(group)];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        // Schreier vectors for the kernel of Z^d -> image.
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let letters: Vec<(usize, i64)> = group.letters().collect();
        while let Some(h) = queue.pop_front() {
            for &(g, e) in &letters {
                let gen = &group.generators[g];
                let step = if e > 0 { &gen.forward } else { &gen.inverse };
                let next = elements[h].compose(step);
                let word = representatives[h]
                    .multiply(&GroupElement::generator(group, g, e))
                    .expect("same kind");
                match index.get(&next) {
                    Some(&k) => {
                        if let (GroupElement::Exponents(a), GroupElement::Exponents(b)) =
                            (&word, &representatives[k])
                        {
                            let rel: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                            if rel.iter().any(|&x| x != 0) {
                                relations.push(rel);
                            }
                        }
                    }
                    None => {
                        if elements.len() >= MAX_IMAGE_ORDER {
                            return Err(GroupError::ImageTooLarge);
                        }
                        index.insert(next.clone(), elements.len());
                        queue.push_back(elements.len());
                        elements.push(next);
                        representatives.push(word);
                    }
                }
            }
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let kernel = (group.kind == GroupKind::FreeAbelian)
            .then(|| lattice::hermite_basis(group.generator_count(), &relations));
        Ok(Self {
            elements,
            representatives,
            index,
            inverses,
            kernel,
            group_finite: group.is_finite_group(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in shortlex order of their representatives; index 0 is the
    /// identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// The shortest (then least) group element mapping to image element `i`.
    pub fn representative(&self, i: usize) -> &GroupElement {
        &self.representatives[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of the product `a · b` (apply `b` first).
    pub fn product_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    /// Hermite basis of the kernel of `Z^d -> image`, for free abelian groups.
    pub fn kernel_basis(&self) -> Option<&[Vec<i64>]> {
        self.kernel.as_deref()
    }

    /// Whether every fiber of the map from the group onto this image is
    /// infinite. True exactly when the abstract group is infinite.
    pub fn fibers_infinite(&self) -> bool {
        !self.group_finite
    }
}

/// A finite space together with a group acting on it: the pair `(X, Γ)`.
#[derive(Debug, Clone)]
pub struct ActionSystem {
    label: String,
    space: FiniteMetricSpace,
    group: GroupSpec,
    image: ImageGroup,
}

impl PartialEq for ActionSystem {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.group == other.group
    }
}

/// Orbit and stabilizer data for a single point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Periodicity {
    pub point: usize,
    pub periodic: bool,
    pub orbit_size: usize,
    pub image_order: usize,
    pub stabilizer_order: usize,
    /// `|image| / |stabilizer in image|`.
    pub stabilizer_index: usize,
    /// Index of the stabilizer lattice in `Z^d`, computed independently from
    /// Schreier generators. `None` for finite groups.
    pub lattice_index: Option<u64>,
}

impl ActionSystem {
    pub fn new(
        label: impl Into<String>,
        space: FiniteMetricSpace,
        group: GroupSpec,
    ) -> Result<Self, GroupError> {
        let points = space.point_count();
        for (i, g) in group.generators.iter().enumerate() {
            if g.forward.len() != points {
                return Err(GroupError::WrongSize {
                    generator: i,
                    len: g.forward.len(),
                    points,
                });
            }
        }
        let image = ImageGroup::close(&group, points)?;
        Ok(Self {
            label: label.into(),
            space,
            group,
            image,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn point_count(&self) -> usize {
        self.space.point_count()
    }

    /// The image of the group in the symmetric group of the points.
    pub fn image(&self) -> &ImageGroup {
        &self.image
    }

    fn check_point(&self, x: usize) -> Result<(), GroupError> {
        if x < self.point_count() {
            Ok(())
        } else {
            Err(GroupError::PointOutOfRange {
                point: x,
                points: self.point_count(),
            })
        }
    }

    /// The bijection by which `g` acts.
    pub fn element_permutation(&self, g: &GroupElement) -> Result<Permutation, GroupError> {
        let n = self.point_count();
        let count = self.group.generator_count();
        let gen = |i: usize| {
            self.group
                .generators
                .get(i)
                .map(|g| &g.forward)
                .ok_or(GroupError::GeneratorOutOfRange { index: i, count })
        };
        match g {
            GroupElement::Exponents(v) => {
                if self.group.kind != GroupKind::FreeAbelian || v.len() != count {
                    return Err(GroupError::ElementShape(format!(
                        "expected an exponent vector of length {count}"
                    )));
                }
                let mut acc = Permutation::identity(n);
                for (i, &e) in v.iter().enumerate() {
                    acc = acc.compose(&gen(i)?.pow(e));
                }
                Ok(acc)
            }
            GroupElement::Word(w) => {
                if self.group.kind != GroupKind::Finite {
                    return Err(GroupError::ElementShape(
                        "expected an exponent vector".into(),
                    ));
                }
                let mut acc = Permutation::identity(n);
                for &(i, e) in w {
                    acc = acc.compose(&gen(i)?.pow(e));
                }
                Ok(acc)
            }
        }
    }

    /// Image index of a group element: the image map `Γ -> image`.
    pub fn element_image(&self, g: &GroupElement) -> Result<usize, GroupError> {
        let p = self.element_permutation(g)?;
        Ok(self
            .image
            .index_of(&p)
            .expect("element lies in the image closure"))
    }

    pub fn evaluate(&self, g: &GroupElement, x: usize) -> Result<usize, GroupError> {
        self.check_point(x)?;
        Ok(self.element_permutation(g)?.apply(x))
    }

    /// `γ̂(A) = {γx : x ∈ A}`.
    pub fn act_on_set(&self, g: &GroupElement, set: &PointSet) -> Result<PointSet, GroupError> {
        if set.bound() > self.point_count() {
            return Err(GroupError::PointOutOfRange {
                point: set.bound() - 1,
                points: self.point_count(),
            });
        }
        let p = self.element_permutation(g)?;
        Ok(set.map(|x| p.apply(x)))
    }

    /// Breadth-first closure of `{x}` under the generators and inverses.
    pub fn orbit(&self, x: usize) -> PointSet {
        let mut seen = PointSet::singleton(x);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for g in &self.group.generators {
                for z in [g.forward.apply(y), g.inverse.apply(y)] {
                    if !seen.contains(z) {
                        seen.insert(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        seen
    }

    /// Partition of the points into orbits, ordered by least member.
    pub fn orbits(&self) -> Vec<PointSet> {
        let mut covered = PointSet::empty();
        let mut out = Vec::new();
        for x in 0..self.point_count() {
            if !covered.contains(x) {
                let o = self.orbit(x);
                covered = covered.union(&o);
                out.push(o);
            }
        }
        out
    }

    pub fn periodicity(&self, x: usize) -> Result<Periodicity, GroupError> {
        self.check_point(x)?;
        let orbit_size = self.orbit(x).len();
        let image_order = self.image.order();
        let stabilizer_order = self
            .image
            .elements
            .iter()
            .filter(|p| p.apply(x) == x)
            .count();
        let lattice_index = (self.group.kind == GroupKind::FreeAbelian)
            .then(|| self.stabilizer_lattice(x))
            .and_then(|b| lattice::index_of(self.group.generator_count(), &b));
        Ok(Periodicity {
            point: x,
            periodic: true,
            orbit_size,
            image_order,
            stabilizer_order,
            stabilizer_index: image_order / stabilizer_order,
            lattice_index,
        })
    }

    /// Hermite basis of `{v ∈ Z^d : v·x = x}` from Schreier generators over
    /// the orbit of `x`. Only meaningful for free abelian groups.
    pub fn stabilizer_lattice(&self, x: usize) -> Vec<Vec<i64>> {
        let d = self.group.generator_count();
        let mut rep: HashMap<usize, Vec<i64>> = HashMap::from([(x, vec![0; d])]);
        let mut queue = VecDeque::from([x]);
        let mut gens = Vec::new();
        while let Some(y) = queue.pop_front() {
            for (i, g) in self.group.generators.iter().enumerate() {
                let z = g.forward.apply(y);
                let mut v = rep[&y].clone();
                v[i] += 1;
                match rep.get(&z) {
                    Some(rz) => gens.push(v.iter().zip(rz).map(|(a, b)| a - b).collect()),
                    None => {
                        rep.insert(z, v);
                        queue.push_back(z);
                    }
                }
            }
        }
        lattice::hermite_basis(d, &gens)
    }

    /// Group elements of length at most `radius`, in canonical order.
    ///
    /// For finite groups these are the image representatives within the
    /// radius. At most `limit` elements are returned.
    pub fn ball(&self, radius: u64, limit: usize) -> Vec<GroupElement> {
        match self.group.kind {
            GroupKind::Finite => self
                .image
                .representatives
                .iter()
                .filter(|g| g.length() <= radius)
                .take(limit)
                .cloned()
                .collect(),
            GroupKind::FreeAbelian => {
                free_abelian_ball(self.group.generator_count(), radius, limit)
            }
        }
    }
}

/// Exponent vectors of L1 norm at most `radius`, in canonical order.
pub fn free_abelian_ball(dim: usize, radius: u64, limit: usize) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = Vec::new();
    for len in 0..=radius {
        let mut layer = Vec::new();
        let mut v = vec![0i64; dim];
        fill_layer(&mut v, 0, len, &mut layer);
        layer.sort_by_key(GroupElement::canonical_key);
        for g in layer {
            if out.len() >= limit {
                return out;
            }
            out.push(g);
        }
    }
    out
}

fn fill_layer(v: &mut [i64], i: usize, rest: u64, out: &mut Vec<GroupElement>) {
    if i == v.len() {
        if rest == 0 {
            out.push(GroupElement::Exponents(v.to_vec()));
        }
        return;
    }
    if i + 1 == v.len() {
        for x in if rest == 0 {
            vec![0]
        } else {
            vec![rest as i64, -(rest as i64)]
        } {
            v[i] = x;
            fill_layer(v, i + 1, 0, out);
        }
        v[i] = 0;
        return;
    }
    for k in 0..=rest {
        let signs: &[i64] = if k == 0 { &[0] } else { &[1, -1] };
        for &s in signs {
            v[i] = s * k as i64;
            fill_layer(v, i + 1, rest - k, out);
        }
    }
    v[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn system(n: usize, kind: GroupKind, gens: &[&[usize]]) -> ActionSystem {
        let group = GroupSpec::new(kind, gens.iter().map(|g| perm(g)).collect(), false, n).unwrap();
        ActionSystem::new("test", FiniteMetricSpace::discrete(n), group).unwrap()
    }

    fn z(v: &[i64]) -> GroupElement {
        GroupElement::Exponents(v.to_vec())
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = perm(&[1, 2, 0]);
        assert_eq!(p.pow(2).images(), vec![2, 0, 1]);
        assert_eq!(p.pow(-1), p.inverse());
        assert!(p.pow(3).is_identity());
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn evaluate_examples() {
        let s = system(3, GroupKind::FreeAbelian, &[&[1, 2, 0]]);
        assert_eq!(s.evaluate(&z(&[0]), 1), Ok(1));
        assert_eq!(s.evaluate(&z(&[2]), 0), Ok(2));
        let g = z(&[1]);
        let gg = g.multiply(&g.inverse()).unwrap();
        for x in 0..3 {
            assert_eq!(s.evaluate(&gg, x), Ok(x));
        }
        assert!(s.evaluate(&z(&[1, 0]), 0).is_err());
        assert!(s.evaluate(&z(&[1]), 3).is_err());
    }

    #[test]
    fn word_elements() {
        let s = system(3, GroupKind::Finite, &[&[1, 0, 2], &[0, 2, 1]]);
        let w = GroupElement::word(vec![(0, 1), (0, -1), (1, 2)]);
        assert_eq!(w, GroupElement::Word(vec![(1, 2)]));
        assert!(matches!(
            s.evaluate(&GroupElement::word(vec![(5, 1)]), 0),
            Err(GroupError::GeneratorOutOfRange { index: 5, count: 2 })
        ));
        // (0 1) after (1 2): 0 -> 0 -> 1
        let w = GroupElement::word(vec![(0, 1), (1, 1)]);
        assert_eq!(s.evaluate(&w, 0), Ok(1));
        assert_eq!(s.image().order(), 6);
    }

    #[test]
    fn act_on_set_examples() {
        let s = system(3, GroupKind::FreeAbelian, &[&[1, 2, 0]]);
        let a: PointSet = [0, 1].into_iter().collect();
        assert_eq!(s.act_on_set(&z(&[1]), &a).unwrap().to_vec(), vec![1, 2]);
        assert_eq!(s.act_on_set(&z(&[0]), &a).unwrap(), a);
    }

    #[test]
    fn image_closure_examples() {
        assert_eq!(
            system(3, GroupKind::FreeAbelian, &[&[1, 2, 0]])
                .image()
                .order(),
            3
        );
        assert_eq!(
            system(3, GroupKind::FreeAbelian, &[&[0, 1, 2]])
                .image()
                .order(),
            1
        );
        let klein = system(4, GroupKind::FreeAbelian, &[&[1, 0, 2, 3], &[0, 1, 3, 2]]);
        assert_eq!(klein.image().order(), 4);
        assert_eq!(
            klein.image().kernel_basis().unwrap(),
            &[vec![2, 0], vec![0, 2]]
        );
        assert!(klein.image().fibers_infinite());
        assert_eq!(
            klein.element_image(&z(&[3, 5])),
            klein.element_image(&z(&[1, 1]))
        );
    }

    #[test]
    fn rotation_kernel() {
        let s = system(3, GroupKind::FreeAbelian, &[&[1, 2, 0]]);
        assert_eq!(s.image().kernel_basis().unwrap(), &[vec![3]]);
        assert_eq!(s.image().representative(1), &z(&[1]));
        assert_eq!(s.image().representative(2), &z(&[-1]));
    }

    #[test]
    fn orbit_examples() {
        let id = system(3, GroupKind::FreeAbelian, &[&[0, 1, 2]]);
        assert_eq!(id.orbit(1).to_vec(), vec![1]);
        let rot = system(3, GroupKind::FreeAbelian, &[&[1, 2, 0]]);
        assert_eq!(rot.orbit(0).to_vec(), vec![0, 1, 2]);
        let dbl = system(4, GroupKind::FreeAbelian, &[&[1, 0, 3, 2]]);
        assert_eq!(dbl.orbit(2).to_vec(), vec![2, 3]);
        assert_eq!(dbl.orbits().len(), 2);
    }

    #[test]
    fn periodicity_examples() {
        let rot = system(3, GroupKind::FreeAbelian, &[&[1, 2, 0]]);
        let p = rot.periodicity(0).unwrap();
        assert!(p.periodic);
        assert_eq!(
            (p.orbit_size, p.stabilizer_index, p.lattice_index),
            (3, 3, Some(3))
        );
        let id = system(2, GroupKind::FreeAbelian, &[&[0, 1]]);
        let p = id.periodicity(1).unwrap();
        assert_eq!(
            (p.orbit_size, p.stabilizer_index, p.lattice_index),
            (1, 1, Some(1))
        );
    }

    #[test]
    fn commutation_is_enforced() {
        let gens = vec![perm(&[1, 0, 2]), perm(&[0, 2, 1])];
        let e = GroupSpec::new(GroupKind::FreeAbelian, gens.clone(), false, 3).unwrap_err();
        assert!(matches!(e, GroupError::NotCommuting { a: 0, b: 1, .. }));
        assert!(GroupSpec::new(GroupKind::Finite, gens.clone(), true, 3).is_err());
        assert!(GroupSpec::new(GroupKind::Finite, gens, false, 3).is_ok());
    }

    #[test]
    fn ball_order() {
        let b = free_abelian_ball(1, 2, 100);
        assert_eq!(b, vec![z(&[0]), z(&[1]), z(&[-1]), z(&[2]), z(&[-2])]);
        let b2 = free_abelian_ball(2, 1, 100);
        assert_eq!(
            b2,
            vec![z(&[0, 0]), z(&[1, 0]), z(&[-1, 0]), z(&[0, 1]), z(&[0, -1])]
        );
        assert_eq!(
            free_abelian_ball(2, 12, usize::MAX).len(),
            2 * 144 + 2 * 12 + 1
        );
        assert_eq!(free_abelian_ball(3, 3, 4).len(), 4);
    }
}
