//! Per-move signature bounds, move-sequence verification, and the
//! unknotting-number lower bounds they imply.

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::goeritz::Goeritz;
use crate::matrix::{solve_rational, SymMatrix};
use crate::moves::{apply_move_matrix, MoveError, MoveSpec};
use crate::scalar::IntScalar;
use crate::signature::{equivariant_signature, inertia, Inertia, SignatureError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("the scale of a rank-one update must be positive")]
    NonPositiveScale,
    #[error("{which} is singular")]
    Singular { which: &'static str },
}

/// The largest change of the equivariant signature a single move permits:
/// two for single crossing changes on the axis and for axis contractions,
/// six for mirror pairs of crossing changes.
pub fn move_bound(mv: &MoveSpec) -> i64 {
    match mv {
        MoveSpec::TypeB { .. } | MoveSpec::TypeC { .. } => 2,
        MoveSpec::TypeA1 { .. } | MoveSpec::TypeA2 { .. } => 6,
    }
}

pub fn check_move_bound<T: IntScalar>(mv: &MoveSpec, delta: &T) -> bool {
    delta.abs() <= T::from(move_bound(mv))
}

/// Change of the equivariant signature across one matrix-level move.
pub fn delta_sigma<T: IntScalar>(g: &Goeritz<T>, mv: &MoveSpec) -> Result<T, BoundsError> {
    let before = equivariant_signature(g)?;
    let after = equivariant_signature(&apply_move_matrix(g, mv)?)?;
    Ok(after - before)
}

/// Lower bounds on the number of moves (or self-intersections) any
/// unknotting of the given form needs. Each bound applies only under the
/// hypothesis recorded in its caveat; the caveats are part of every report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBounds<T> {
    /// At least `ceil(|sigma~| / 3)` type A moves.
    pub type_a_min: T,
    /// At least `ceil(|sigma~| / 2)` directed type B moves.
    pub type_b_min: T,
    /// At least `ceil(|sigma~| / 2)` type C moves.
    pub type_c_min: T,
    /// At least `ceil(|sigma~| / 3)` transverse self-intersections.
    pub homotopy_self_intersections_min: T,
}

pub const TYPE_A_CAVEAT: &str =
    "holds for every directed strongly invertible knot; unknotting through type A moves alone is always possible";
pub const TYPE_B_CAVEAT: &str =
    "applies only to homotopies whose self-intersections are all directed type B moves";
pub const TYPE_C_CAVEAT: &str =
    "applies only to (1,2)-knots whose symmetry axis is a core of one handlebody of the decomposition";
pub const HOMOTOPY_CAVEAT: &str =
    "counts transverse self-intersections of an equivariant homotopy that never crosses the chosen arc";

/// The four caveats, keyed like the report fields.
pub fn lower_bound_caveats() -> [(&'static str, &'static str); 4] {
    [
        ("type_a_min", TYPE_A_CAVEAT),
        ("type_b_min", TYPE_B_CAVEAT),
        ("type_c_min", TYPE_C_CAVEAT),
        ("homotopy_self_intersections_min", HOMOTOPY_CAVEAT),
    ]
}

/// Lower bounds from a known equivariant signature. The round unknot has
/// no reduced form; its signature counts as zero and every bound is
/// vacuous.
pub fn lower_bounds_from_sigma<T: IntScalar>(sigma: &T) -> LowerBounds<T> {
    let magnitude = sigma.abs();
    let two = T::from(2);
    let three = T::from(3);
    LowerBounds {
        type_a_min: magnitude.div_ceil(&three),
        type_b_min: magnitude.div_ceil(&two),
        type_c_min: magnitude.div_ceil(&two),
        homotopy_self_intersections_min: magnitude.div_ceil(&three),
    }
}

/// Lower bounds for a Goeritz form with nonzero knot determinant.
pub fn lower_bounds<T: IntScalar>(g: &Goeritz<T>) -> Result<LowerBounds<T>, BoundsError> {
    if g.full_matrix().det().is_zero() {
        return Err(BoundsError::Singular {
            which: "the full Goeritz matrix",
        });
    }
    let sigma = equivariant_signature(g)?;
    Ok(lower_bounds_from_sigma(&sigma))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundStep<T> {
    pub move_spec: MoveSpec,
    pub sigma_before: T,
    pub sigma_after: T,
    pub delta: T,
    pub bound: i64,
    pub compliant: bool,
}

/// Per-step trace of a move sequence, with the lower bounds of the starting
/// form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport<T> {
    pub label: Option<String>,
    pub initial_sigma: T,
    pub final_sigma: T,
    pub steps: Vec<BoundStep<T>>,
    pub lower_bounds: LowerBounds<T>,
    pub compliant: bool,
}

pub fn verify_sequence<T: IntScalar>(
    g: &Goeritz<T>,
    moves: &[MoveSpec],
) -> Result<BoundReport<T>, BoundsError> {
    verify_sequence_with_bound(g, moves, None)
}

/// Like [`verify_sequence`], with every per-move bound replaced by
/// `bound_override` when given. The override exists to drive the
/// non-compliant reporting path; the real bounds cannot be violated by
/// well-formed input.
pub fn verify_sequence_with_bound<T: IntScalar>(
    g: &Goeritz<T>,
    moves: &[MoveSpec],
    bound_override: Option<i64>,
) -> Result<BoundReport<T>, BoundsError> {
    let initial = equivariant_signature(g)?;
    let mut current = g.clone();
    let mut sigma = initial.clone();
    let mut steps = Vec::with_capacity(moves.len());
    for mv in moves {
        let next = apply_move_matrix(&current, mv)?;
        let after = equivariant_signature(&next)?;
        let delta = after.clone() - sigma.clone();
        let bound = bound_override.unwrap_or_else(|| move_bound(mv));
        let compliant = delta.abs() <= T::from(bound);
        steps.push(BoundStep {
            move_spec: mv.clone(),
            sigma_before: sigma,
            sigma_after: after.clone(),
            delta,
            bound,
            compliant,
        });
        sigma = after;
        current = next;
    }
    let compliant = steps.iter().all(|s| s.compliant);
    Ok(BoundReport {
        label: g.label().map(str::to_owned),
        initial_sigma: initial.clone(),
        final_sigma: sigma,
        steps,
        lower_bounds: lower_bounds_from_sigma(&initial),
        compliant,
    })
}

/// What a positive semidefinite rank-one update does to a nonsingular
/// symmetric form: the signature moves by zero or two, the positive index
/// never drops, and the determinants are tied by an exact rational
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneDiagnostics<T> {
    pub inertia_before: Inertia,
    pub inertia_after: Inertia,
    pub delta_signature: i64,
    pub det_before: T,
    pub det_after: T,
    /// `det(M + t·u·uᵀ) == det(M)·(1 + t·uᵀ·M⁻¹·u)`, evaluated over the
    /// rationals.
    pub identity_holds: bool,
    pub delta_in_range: bool,
    pub positive_index_nondecreasing: bool,
}

pub fn rank_one_diagnostics<T: IntScalar>(
    m: &SymMatrix<T>,
    u: &[T],
    t: &T,
) -> Result<RankOneDiagnostics<T>, BoundsError> {
    if !t.is_positive() {
        return Err(BoundsError::NonPositiveScale);
    }
    assert_eq!(u.len(), m.size());
    let det_before = m.det();
    if det_before.is_zero() {
        return Err(BoundsError::Singular { which: "M" });
    }
    let perturbed = SymMatrix::from_fn(m.size(), |i, j| {
        m.get(i, j).clone() + t.clone() * u[i].clone() * u[j].clone()
    });
    let det_after = perturbed.det();
    if det_after.is_zero() {
        return Err(BoundsError::Singular {
            which: "M + t*u*u^T",
        });
    }
    let inertia_before = inertia(m);
    let inertia_after = inertia(&perturbed);
    let delta_signature = inertia_after.signature() - inertia_before.signature();
    let solution =
        solve_rational(m, u).expect("nonzero determinant guarantees a rational solution");
    let quad = u
        .iter()
        .zip(&solution)
        .fold(Ratio::zero(), |acc: Ratio<T>, (ui, xi)| {
            acc + Ratio::from_integer(ui.clone()) * xi.clone()
        });
    let rhs = Ratio::from_integer(det_before.clone())
        * (Ratio::one() + Ratio::from_integer(t.clone()) * quad);
    let identity_holds = Ratio::from_integer(det_after.clone()) == rhs;
    Ok(RankOneDiagnostics {
        delta_in_range: delta_signature == 0 || delta_signature == 2,
        positive_index_nondecreasing: inertia_after.positive >= inertia_before.positive,
        inertia_before,
        inertia_after,
        delta_signature,
        det_before,
        det_after,
        identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::diagram::CrossingColor;
    use crate::sign::Sign;
    use crate::{EquivariantGoeritz, Int};

    fn entry(name: &str) -> EquivariantGoeritz {
        corpus::matrix_entry(name).unwrap().goeritz
    }

    #[test]
    fn directed_axis_flip_on_five_one_raises_sigma_by_two() {
        let d = delta_sigma(
            &entry("5_1"),
            &MoveSpec::TypeB {
                pair: 1,
                sign: Sign::Plus,
            },
        )
        .unwrap();
        assert_eq!(d, Int::from(2));
    }

    #[test]
    fn double_crossing_change_on_nine_forty_is_tight() {
        let d = delta_sigma(
            &entry("9_40"),
            &MoveSpec::TypeA2 {
                pair_i: 1,
                pair_j: 4,
                sign: Sign::Plus,
                color: CrossingColor::Bicolored {
                    epsilon: Sign::Plus,
                },
                mixed: false,
            },
        )
        .unwrap();
        assert_eq!(d, Int::from(-6));
    }

    #[test]
    fn contraction_on_nine_forty_leaves_sigma_alone() {
        let d = delta_sigma(
            &entry("9_40"),
            &MoveSpec::TypeC {
                sign: Sign::Plus,
                bicolored: true,
            },
        )
        .unwrap();
        assert_eq!(d, Int::from(0));
    }

    #[test]
    fn bounds_per_move_kind() {
        let b = MoveSpec::TypeB {
            pair: 1,
            sign: Sign::Plus,
        };
        let a2 = MoveSpec::TypeA2 {
            pair_i: 1,
            pair_j: 2,
            sign: Sign::Minus,
            color: CrossingColor::Unicolored,
            mixed: false,
        };
        let c = MoveSpec::TypeC {
            sign: Sign::Plus,
            bicolored: false,
        };
        assert!(check_move_bound(&b, &Int::from(2)));
        assert!(check_move_bound(&a2, &Int::from(-6)));
        assert!(!check_move_bound(&c, &Int::from(4)));
    }

    #[test]
    fn lower_bounds_for_the_worked_knots() {
        let nine_forty = lower_bounds(&entry("9_40")).unwrap();
        assert_eq!(nine_forty.type_a_min, Int::from(2));
        assert_eq!(nine_forty.homotopy_self_intersections_min, Int::from(2));
        let five_one = lower_bounds(&entry("5_1")).unwrap();
        assert_eq!(five_one.type_b_min, Int::from(2));
        assert_eq!(five_one.type_c_min, Int::from(2));
    }

    #[test]
    fn vanishing_sigma_gives_vacuous_bounds() {
        let b = lower_bounds_from_sigma(&Int::from(0));
        assert_eq!(b.type_a_min, Int::from(0));
        assert_eq!(b.type_b_min, Int::from(0));
        assert_eq!(b.type_c_min, Int::from(0));
        assert_eq!(b.homotopy_self_intersections_min, Int::from(0));
    }

    #[test]
    fn bounds_are_nonnegative_and_monotone_in_magnitude() {
        let mut prev = lower_bounds_from_sigma(&Int::from(0));
        for magnitude in 0..=13i64 {
            let here = lower_bounds_from_sigma(&Int::from(magnitude));
            let mirrored = lower_bounds_from_sigma(&Int::from(-magnitude));
            assert_eq!(here, mirrored);
            assert!(here.type_a_min >= Int::from(0));
            assert!(here.type_a_min >= prev.type_a_min);
            assert!(here.type_b_min >= prev.type_b_min);
            assert!(here.type_c_min >= prev.type_c_min);
            assert!(here.homotopy_self_intersections_min >= prev.homotopy_self_intersections_min);
            prev = here;
        }
    }

    #[test]
    fn nine_forty_unknotting_trace() {
        let moves = [
            MoveSpec::TypeA2 {
                pair_i: 1,
                pair_j: 4,
                sign: Sign::Plus,
                color: CrossingColor::Bicolored {
                    epsilon: Sign::Plus,
                },
                mixed: false,
            },
            MoveSpec::TypeA1 {
                pair: 4,
                sign: Sign::Plus,
                color: CrossingColor::Unicolored,
            },
        ];
        let report = verify_sequence(&entry("9_40"), &moves).unwrap();
        assert_eq!(report.initial_sigma, Int::from(6));
        assert_eq!(
            report
                .steps
                .iter()
                .map(|s| s.sigma_after.clone())
                .collect::<Vec<_>>(),
            vec![Int::from(0), Int::from(0)]
        );
        assert!(report.compliant);
        assert_eq!(report.final_sigma, Int::from(0));
    }

    #[test]
    fn five_one_single_flip_trace() {
        let report = verify_sequence(
            &entry("5_1"),
            &[MoveSpec::TypeB {
                pair: 1,
                sign: Sign::Plus,
            }],
        )
        .unwrap();
        assert_eq!(report.initial_sigma, Int::from(-4));
        assert_eq!(report.final_sigma, Int::from(-2));
        assert!(report.compliant);
    }

    #[test]
    fn empty_sequence_reports_the_input_signature() {
        let report = verify_sequence(&entry("9_40"), &[]).unwrap();
        assert!(report.steps.is_empty());
        assert_eq!(report.final_sigma, Int::from(6));
        assert!(report.compliant);
    }

    #[test]
    fn bound_override_forces_non_compliance() {
        let report = verify_sequence_with_bound(
            &entry("5_1"),
            &[MoveSpec::TypeB {
                pair: 1,
                sign: Sign::Plus,
            }],
            Some(0),
        )
        .unwrap();
        assert!(!report.compliant);
        assert_eq!(report.steps[0].bound, 0);
    }

    #[test]
    fn rank_one_update_on_negative_plane() {
        let m = crate::SymIntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]]).unwrap();
        let u = [Int::from(1), Int::from(0)];
        let d = rank_one_diagnostics(&m, &u, &Int::from(4)).unwrap();
        assert_eq!(d.delta_signature, 2);
        assert_eq!(d.det_before, Int::from(1));
        assert_eq!(d.det_after, Int::from(-3));
        assert!(d.identity_holds);
        assert!(d.positive_index_nondecreasing);
    }

    #[test]
    fn zero_update_changes_nothing() {
        let m = crate::SymIntMatrix::from_i64_rows(&[&[2, 1], &[1, -5]]).unwrap();
        let u = [Int::from(0), Int::from(0)];
        let d = rank_one_diagnostics(&m, &u, &Int::from(4)).unwrap();
        assert_eq!(d.delta_signature, 0);
        assert!(d.identity_holds);
    }

    #[test]
    fn nine_forty_plus_part_rank_one_identity() {
        let plus = entry("9_40").plus_part();
        let u = [Int::from(1), Int::from(0), Int::from(0), Int::from(-1)];
        let d = rank_one_diagnostics(&plus, &u, &Int::from(4)).unwrap();
        assert!(d.identity_holds);
        assert!(d.delta_in_range);
    }

    #[test]
    fn non_positive_scale_is_rejected() {
        let m = crate::SymIntMatrix::identity(1);
        assert_eq!(
            rank_one_diagnostics(&m, &[Int::from(1)], &Int::from(0)).unwrap_err(),
            BoundsError::NonPositiveScale
        );
    }
}
