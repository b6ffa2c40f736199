//! Named test systems and the `name(args)` expression syntax used to refer
//! to them, e.g. `product(cyclic_rotation(2),cyclic_rotation(3))`.

use num_rational::Rational64;
use thiserror::Error;

use super::sft::{periodic_subsystem, Sft, SftError};
use crate::group::{ActionSystem, GroupError, GroupKind, GroupSpec, Permutation};
use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("builtin `{name}` expects {expected}")]
    Arity { name: String, expected: String },
    #[error("cannot parse builtin expression `{text}`: {reason}")]
    Syntax { text: String, reason: String },
    #[error("invalid parameter for `{name}`: {reason}")]
    Param { name: String, reason: String },
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Either a finite system or a shift space handled in bounded mode.
#[derive(Debug, Clone)]
pub enum SystemHandle {
    Finite(ActionSystem),
    Shift(Sft),
}

impl SystemHandle {
    pub fn label(&self) -> &str {
        match self {
            Self::Finite(s) => s.label(),
            Self::Shift(s) => s.name(),
        }
    }
}

/// Largest point count accepted by the finite constructors.
const MAX_POINTS: i64 = 4096;

fn points_arg(name: &str, n: i64) -> Result<usize, FamilyError> {
    if (1..=MAX_POINTS).contains(&n) {
        Ok(n as usize)
    } else {
        Err(FamilyError::Param {
            name: name.into(),
            reason: format!("{n} is not in 1..={MAX_POINTS}"),
        })
    }
}

fn single_generator(
    label: String,
    space: FiniteMetricSpace,
    generator: Permutation,
) -> ActionSystem {
    let n = space.point_count();
    let group =
        GroupSpec::new(GroupKind::FreeAbelian, vec![generator], true, n).expect("one generator");
    ActionSystem::new(label, space, group).expect("valid system")
}

/// `Z` acting on `n` points by the rotation `i -> i + 1 mod n`, cycle metric.
pub fn cyclic_rotation(n: usize) -> ActionSystem {
    single_generator(
        format!("cyclic_rotation({n})"),
        FiniteMetricSpace::cycle(n),
        Permutation::rotation(n),
    )
}

/// `Z` acting trivially on `n` discrete points.
pub fn identity(n: usize) -> ActionSystem {
    single_generator(
        format!("identity({n})"),
        FiniteMetricSpace::discrete(n),
        Permutation::identity(n),
    )
}

/// The Klein four-group acting regularly on 4 discrete points.
pub fn klein_on_4() -> ActionSystem {
    let gens = vec![
        Permutation::new(vec![1, 0, 3, 2]).expect("bijection"),
        Permutation::new(vec![2, 3, 0, 1]).expect("bijection"),
    ];
    let group = GroupSpec::new(GroupKind::Finite, gens, true, 4).expect("commuting");
    ActionSystem::new("klein_on_4", FiniteMetricSpace::discrete(4), group).expect("valid system")
}

/// The symmetric group on 3 points, generated by `(0 1)` and `(0 1 2)`.
/// Non-abelian.
pub fn symmetric_on_3() -> ActionSystem {
    let gens = vec![
        Permutation::new(vec![1, 0, 2]).expect("bijection"),
        Permutation::rotation(3),
    ];
    let group = GroupSpec::new(GroupKind::Finite, gens, false, 3).expect("sizes match");
    ActionSystem::new("symmetric_on_3", FiniteMetricSpace::discrete(3), group)
        .expect("valid system")
}

/// `Z^2` acting by two commuting permutations on the line with `n` points.
///
/// Even `n`: the first generator rotates each half, the second swaps the
/// halves. Odd `n`: an `n`-cycle and its square.
pub fn commuting_pair(n: usize) -> ActionSystem {
    let (a, b) = if n % 2 == 0 {
        let h = n / 2;
        let a = (0..n)
            .map(|i| {
                if i < h {
                    (i + 1) % h
                } else {
                    h + (i - h + 1) % h
                }
            })
            .collect();
        let b = (0..n).map(|i| (i + h) % n).collect();
        (a, b)
    } else {
        let a: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let b = (0..n).map(|i| (i + 2) % n).collect();
        (a, b)
    };
    let gens = vec![
        Permutation::new(a).expect("bijection"),
        Permutation::new(b).expect("bijection"),
    ];
    let group = GroupSpec::new(GroupKind::FreeAbelian, gens, true, n).expect("commuting");
    ActionSystem::new(
        format!("commuting_pair({n})"),
        FiniteMetricSpace::line(n),
        group,
    )
    .expect("valid system")
}

fn max_metric(a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> FiniteMetricSpace {
    let (na, nb) = (a.point_count(), b.point_count());
    let rows = (0..na * nb)
        .map(|p| {
            (0..na * nb)
                .map(|q| a.dist(p / nb, q / nb).max(b.dist(p % nb, q % nb)))
                .collect::<Vec<Rational64>>()
        })
        .collect();
    FiniteMetricSpace::from_rows(rows).expect("max of two metrics is a metric")
}

fn lift_first(p: &Permutation, nb: usize) -> Permutation {
    Permutation::new(
        (0..p.len() * nb)
            .map(|i| p.apply(i / nb) * nb + i % nb)
            .collect(),
    )
    .expect("bijection")
}

fn lift_second(p: &Permutation, na: usize) -> Permutation {
    let nb = p.len();
    Permutation::new(
        (0..na * nb)
            .map(|i| (i / nb) * nb + p.apply(i % nb))
            .collect(),
    )
    .expect("bijection")
}

/// Direct product: `G_A × G_B` acting coordinatewise on `X_A × X_B` with the
/// max metric. Point `(a, b)` has index `a·|X_B| + b`.
pub fn product(a: &ActionSystem, b: &ActionSystem) -> Result<ActionSystem, FamilyError> {
    let kind = a.group().kind();
    if kind != b.group().kind() {
        return Err(FamilyError::Param {
            name: "product".into(),
            reason: "factors must both be free abelian or both finite".into(),
        });
    }
    let (na, nb) = (a.point_count(), b.point_count());
    let gens: Vec<Permutation> = a
        .group()
        .generators()
        .iter()
        .map(|g| lift_first(&g.forward, nb))
        .chain(
            b.group()
                .generators()
                .iter()
                .map(|g| lift_second(&g.forward, na)),
        )
        .collect();
    let abelian = a.group().is_abelian() && b.group().is_abelian();
    let group = GroupSpec::new(kind, gens, abelian, na * nb)?;
    Ok(ActionSystem::new(
        format!("product({},{})", a.label(), b.label()),
        max_metric(a.space(), b.space()),
        group,
    )?)
}

/// The same group acting diagonally on `X × X`: `γ(x, y) = (γx, γy)`.
pub fn diagonal_square(sys: &ActionSystem) -> ActionSystem {
    let n = sys.point_count();
    let gens = sys
        .group()
        .generators()
        .iter()
        .map(|g| {
            let p = &g.forward;
            Permutation::new(
                (0..n * n)
                    .map(|i| p.apply(i / n) * n + p.apply(i % n))
                    .collect(),
            )
            .expect("bijection")
        })
        .collect();
    let group = GroupSpec::new(sys.group().kind(), gens, sys.group().is_abelian(), n * n)
        .expect("diagonal generators satisfy the same relations");
    ActionSystem::new(
        format!("diagonal_square({})", sys.label()),
        max_metric(sys.space(), sys.space()),
        group,
    )
    .expect("valid system")
}

/// `Γ × Γ` acting on `X × X` by `(γ1, γ2)(x, y) = (γ1 x, γ2 y)`.
pub fn product_group_square(sys: &ActionSystem) -> ActionSystem {
    product(sys, sys)
        .expect("same kind")
        .with_label(format!("product_group_square({})", sys.label()))
}

/// The builtin shift spaces.
pub fn builtin_sfts() -> Vec<Sft> {
    vec![
        Sft::full_shift(2).expect("valid"),
        Sft::full_shift(3).expect("valid"),
        Sft::golden_mean(),
        Sft::swap(),
        Sft::split(),
    ]
}

/// The standard finite family: every builtin system with at most 6 points
/// and an abelian group.
pub fn default_finite_family() -> Vec<ActionSystem> {
    let full2 = Sft::full_shift(2).expect("valid");
    let golden = Sft::golden_mean();
    let mut out = vec![identity(1), identity(2), identity(3)];
    out.extend((1..=6).map(cyclic_rotation));
    out.extend([
        commuting_pair(4),
        commuting_pair(5),
        commuting_pair(6),
        klein_on_4(),
    ]);
    out.push(product(&cyclic_rotation(2), &cyclic_rotation(3)).expect("same kind"));
    out.push(product(&cyclic_rotation(2), &cyclic_rotation(2)).expect("same kind"));
    for (sft, p) in [(&full2, 1), (&full2, 2), (&golden, 2), (&golden, 3)] {
        out.push(periodic_subsystem(sft, p).expect("periodic points exist"));
    }
    out
}

/// The shift spaces used by the bounded theorem suite.
pub fn default_shift_family() -> Vec<Sft> {
    vec![
        Sft::full_shift(2).expect("valid"),
        Sft::golden_mean(),
        Sft::swap(),
    ]
}

/// Parsed `name(arg, ...)` expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Call { name: String, args: Vec<Expr> },
}

pub fn parse_expr(text: &str) -> Result<Expr, FamilyError> {
    let syntax = |reason: &str| FamilyError::Syntax {
        text: text.into(),
        reason: reason.into(),
    };
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let expr = parse_at(&chars, &mut pos).map_err(|r| syntax(&r))?;
    if pos != chars.len() {
        return Err(syntax("trailing characters"));
    }
    Ok(expr)
}

fn parse_at(chars: &[char], pos: &mut usize) -> Result<Expr, String> {
    let start = *pos;
    if chars
        .get(*pos)
        .is_some_and(|c| c.is_ascii_digit() || *c == '-')
    {
        *pos += 1;
        while chars.get(*pos).is_some_and(char::is_ascii_digit) {
            *pos += 1;
        }
        let s: String = chars[start..*pos].iter().collect();
        return s
            .parse()
            .map(Expr::Int)
            .map_err(|_| format!("bad integer `{s}`"));
    }
    while chars
        .get(*pos)
        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
    {
        *pos += 1;
    }
    if *pos == start {
        return Err(format!("expected a name at offset {start}"));
    }
    let name: String = chars[start..*pos].iter().collect();
    let mut args = Vec::new();
    if chars.get(*pos) == Some(&'(') {
        *pos += 1;
        if chars.get(*pos) != Some(&')') {
            loop {
                args.push(parse_at(chars, pos)?);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(')') => break,
                    _ => return Err(format!("expected `,` or `)` at offset {pos}")),
                }
            }
        }
        *pos += 1;
    }
    Ok(Expr::Call { name, args })
}

fn int_args<const N: usize>(name: &str, args: &[Expr]) -> Result<[i64; N], FamilyError> {
    let arity = || FamilyError::Arity {
        name: name.into(),
        expected: format!("{N} integer argument(s)"),
    };
    if args.len() != N {
        return Err(arity());
    }
    let mut out = [0; N];
    for (o, a) in out.iter_mut().zip(args) {
        match a {
            Expr::Int(v) => *o = *v,
            Expr::Call { .. } => return Err(arity()),
        }
    }
    Ok(out)
}

fn eval_sft(name: &str, args: &[Expr]) -> Result<Option<Sft>, FamilyError> {
    Ok(Some(match name {
        "full_shift" => {
            let [k] = int_args::<1>(name, args)?;
            let k = usize::try_from(k).map_err(|_| SftError::AlphabetSize(0))?;
            Sft::full_shift(k)?
        }
        "golden_mean" => {
            int_args::<0>(name, args)?;
            Sft::golden_mean()
        }
        "swap_shift" => {
            int_args::<0>(name, args)?;
            Sft::swap()
        }
        "split_shift" => {
            int_args::<0>(name, args)?;
            Sft::split()
        }
        _ => return Ok(None),
    }))
}

fn expect_finite(name: &str, h: SystemHandle) -> Result<ActionSystem, FamilyError> {
    match h {
        SystemHandle::Finite(s) => Ok(s),
        SystemHandle::Shift(_) => Err(FamilyError::Param {
            name: name.into(),
            reason: "argument must be a finite system".into(),
        }),
    }
}

/// Evaluates a builtin system expression.
pub fn eval_expr(expr: &Expr) -> Result<SystemHandle, FamilyError> {
    let Expr::Call { name, args } = expr else {
        return Err(FamilyError::Syntax {
            text: format!("{expr:?}"),
            reason: "expected a system".into(),
        });
    };
    let name = name.as_str();
    if let Some(sft) = eval_sft(name, args)? {
        return Ok(SystemHandle::Shift(sft));
    }
    let sys = match name {
        "cyclic_rotation" => cyclic_rotation(points_arg(name, int_args::<1>(name, args)?[0])?),
        "identity" => identity(points_arg(name, int_args::<1>(name, args)?[0])?),
        "commuting_pair" => commuting_pair(points_arg(name, int_args::<1>(name, args)?[0])?),
        "klein_on_4" => {
            int_args::<0>(name, args)?;
            klein_on_4()
        }
        "symmetric_on_3" => {
            int_args::<0>(name, args)?;
            symmetric_on_3()
        }
        "product" | "diagonal_square" | "product_group_square" => {
            let systems = args
                .iter()
                .map(|a| eval_expr(a).and_then(|h| expect_finite(name, h)))
                .collect::<Result<Vec<_>, _>>()?;
            match (name, systems.as_slice()) {
                ("product", [a, b]) => product(a, b)?,
                ("diagonal_square", [a]) => diagonal_square(a),
                ("product_group_square", [a]) => product_group_square(a),
                _ => {
                    return Err(FamilyError::Arity {
                        name: name.into(),
                        expected: if name == "product" {
                            "two systems"
                        } else {
                            "one system"
                        }
                        .into(),
                    })
                }
            }
        }
        "periodic_subsystem" => {
            let [shift, Expr::Int(p)] = args.as_slice() else {
                return Err(FamilyError::Arity {
                    name: name.into(),
                    expected: "a shift and a period".into(),
                });
            };
            let Expr::Call {
                name: sname,
                args: sargs,
            } = shift
            else {
                return Err(FamilyError::Arity {
                    name: name.into(),
                    expected: "a shift and a period".into(),
                });
            };
            let sft = eval_sft(sname, sargs)?.ok_or_else(|| FamilyError::Unknown(sname.clone()))?;
            let p = usize::try_from(*p).map_err(|_| SftError::ZeroPeriod)?;
            periodic_subsystem(&sft, p)?
        }
        _ => return Err(FamilyError::Unknown(name.into())),
    };
    Ok(SystemHandle::Finite(sys))
}

/// Evaluates `name(args)` text to a single system.
pub fn builtin_system(text: &str) -> Result<SystemHandle, FamilyError> {
    eval_expr(&parse_expr(text)?)
}

/// A named family of systems, or a single system expression as a
/// one-element family.
pub fn builtin_family(text: &str) -> Result<Vec<SystemHandle>, FamilyError> {
    match text.trim() {
        "default_finite" => Ok(default_finite_family()
            .into_iter()
            .map(SystemHandle::Finite)
            .collect()),
        "default_shift" => Ok(default_shift_family()
            .into_iter()
            .map(SystemHandle::Shift)
            .collect()),
        "builtin_shifts" => Ok(builtin_sfts()
            .into_iter()
            .map(SystemHandle::Shift)
            .collect()),
        "empty" => Ok(Vec::new()),
        other => builtin_system(other).map(|h| vec![h]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite(text: &str) -> ActionSystem {
        match builtin_system(text).unwrap() {
            SystemHandle::Finite(s) => s,
            SystemHandle::Shift(_) => panic!("expected a finite system"),
        }
    }

    #[test]
    fn named_examples() {
        let r = finite("cyclic_rotation(3)");
        assert_eq!(r.point_count(), 3);
        assert_eq!(r.group().generators()[0].forward.images(), vec![1, 2, 0]);
        let id = finite("identity(2)");
        assert!(id.group().generators()[0].forward.is_identity());
        let p = finite("product(cyclic_rotation(2), cyclic_rotation(3))");
        assert_eq!(p.point_count(), 6);
        assert_eq!(p.group().generator_count(), 2);
        assert!(p.group().is_abelian());
        assert_eq!(p.label(), "product(cyclic_rotation(2),cyclic_rotation(3))");
        assert_eq!(p.image().order(), 6);
    }

    #[test]
    fn labels_round_trip() {
        for sys in default_finite_family() {
            assert_eq!(finite(sys.label()), sys, "{}", sys.label());
        }
        for sft in builtin_sfts() {
            let SystemHandle::Shift(s) = builtin_system(sft.name()).unwrap() else {
                panic!()
            };
            assert_eq!(s, sft);
        }
    }

    #[test]
    fn default_family_is_small_and_abelian() {
        let fam = default_finite_family();
        assert!(fam.len() >= 15);
        assert!(fam
            .iter()
            .all(|s| s.point_count() <= 6 && s.group().is_abelian()));
    }

    #[test]
    fn commuting_pairs_commute() {
        for n in 1..=8 {
            let s = commuting_pair(n);
            let g = s.group().generators();
            assert_eq!(g[0].forward.commutes_with(&g[1].forward), None);
        }
    }

    #[test]
    fn squares() {
        let r = cyclic_rotation(3);
        let d = diagonal_square(&r);
        assert_eq!(d.orbits().len(), 3);
        let pg = product_group_square(&r);
        assert_eq!(pg.orbits().len(), 1);
        assert_eq!(pg.group().generator_count(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            builtin_system("nope(1)"),
            Err(FamilyError::Unknown(_))
        ));
        assert!(matches!(
            builtin_system("cyclic_rotation(1,2)"),
            Err(FamilyError::Arity { .. })
        ));
        assert!(matches!(
            builtin_system("cyclic_rotation(0)"),
            Err(FamilyError::Param { .. })
        ));
        assert!(matches!(
            builtin_system("cyclic_rotation(3"),
            Err(FamilyError::Syntax { .. })
        ));
        assert!(matches!(
            builtin_system("product(cyclic_rotation(2),klein_on_4)"),
            Err(FamilyError::Param { .. })
        ));
        assert_eq!(builtin_family("empty").unwrap().len(), 0);
    }
}
