//! Equivariant unknotting moves, at matrix level and at diagram level.
//!
//! Matrix-level moves act on the Goeritz blocks directly and carry the
//! crossing color data the blocks cannot see, so the correction term stays
//! exact. Diagram-level moves edit crossings; projecting one to its
//! matrix-level counterpart and applying both routes must agree entrywise,
//! correction term included. That consistency is the defining contract and
//! is enforced by the test suites.

use std::fmt;

use thiserror::Error;

use crate::diagram::{Crossing, CrossingColor, DiagramError, Locus, RegionRef, SymmetricDiagram};
use crate::goeritz::{Goeritz, TypeCRecord};
use crate::matrix::SymMatrix;
use crate::scalar::IntScalar;
use crate::sign::Sign;

/// A matrix-level move.
///
/// * `TypeB`: one crossing change on the directed arc, between `a_k` and
///   `a_k'`.
/// * `TypeA1`: a mirror pair of crossing changes between `a_k` (and its
///   mirror) and the fixed region.
/// * `TypeA2`: a mirror pair of crossing changes between two distinct
///   marked regions; `mixed` selects the variant joining `a_i` to `a_j'`.
/// * `TypeC`: contraction of an axis sub-arc, creating a new region pair
///   and two new crossings of the given sign.
///
/// `sign` is the incidence number of the changed (or created) crossings
/// after the move. For the A-variants, `color` is the color of the flipped
/// crossings with their epsilon before the move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSpec {
    TypeB {
        pair: usize,
        sign: Sign,
    },
    TypeA1 {
        pair: usize,
        sign: Sign,
        color: CrossingColor,
    },
    TypeA2 {
        pair_i: usize,
        pair_j: usize,
        sign: Sign,
        color: CrossingColor,
        mixed: bool,
    },
    TypeC {
        sign: Sign,
        bicolored: bool,
    },
}

impl MoveSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MoveSpec::TypeB { .. } => "B",
            MoveSpec::TypeA1 { .. } => "A1",
            MoveSpec::TypeA2 { .. } => "A2",
            MoveSpec::TypeC { .. } => "C",
        }
    }
}

fn write_color(f: &mut fmt::Formatter<'_>, color: &CrossingColor) -> fmt::Result {
    match color {
        CrossingColor::Unicolored => write!(f, " color=unicolored"),
        CrossingColor::Bicolored { epsilon } => {
            write!(f, " color=bicolored eps={epsilon}")
        }
    }
}

impl fmt::Display for MoveSpec {
    /// Renders in the move-script statement grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSpec::TypeB { pair, sign } => write!(f, "B k={pair} sign={sign}"),
            MoveSpec::TypeA1 { pair, sign, color } => {
                write!(f, "A1 k={pair} sign={sign}")?;
                write_color(f, color)
            }
            MoveSpec::TypeA2 {
                pair_i,
                pair_j,
                sign,
                color,
                mixed,
            } => {
                write!(f, "A2 i={pair_i} j={pair_j} sign={sign}")?;
                write_color(f, color)?;
                if *mixed {
                    write!(f, " mixed=true")?;
                }
                Ok(())
            }
            MoveSpec::TypeC { sign, bicolored } => {
                let color = if *bicolored { "bicolored" } else { "unicolored" };
                write!(f, "C sign={sign} color={color}")
            }
        }
    }
}

/// A diagram-level move naming its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramMove {
    /// Flip the incidence number of one on-axis crossing on the directed
    /// arc.
    FlipB { crossing: String },
    /// Flip the incidence number of an off-axis crossing and of its mirror;
    /// bicolored targets also flip epsilon on both.
    FlipA { crossing: String },
    /// Contract an axis sub-arc inside the fixed region, splitting off a new
    /// region pair.
    ContractC { sign: Sign, bicolored: bool },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("pair index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("a double crossing change needs two distinct pair indices")]
    IndicesNotDistinct,
    #[error("no crossing with id {0}")]
    NoSuchCrossing(String),
    #[error("crossing {id}: {requirement}")]
    LocusViolation {
        id: String,
        requirement: &'static str,
    },
    #[error("crossing {id}: unsupported configuration: {why}")]
    Unsupported { id: String, why: &'static str },
    #[error("the form does not carry an axis-contraction record")]
    MissingContractionRecord,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn check_index(index: usize, n: usize) -> Result<(), MoveError> {
    if index == 0 || index > n {
        Err(MoveError::IndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

/// Shift of the correction term when a mirror pair of crossings flips:
/// zero for unicolored targets, four times the old epsilon otherwise.
fn correction_shift<T: IntScalar>(color: &CrossingColor) -> T {
    match color {
        CrossingColor::Unicolored => T::zero(),
        CrossingColor::Bicolored { epsilon } => T::from(4) * epsilon.value::<T>(),
    }
}

/// Applies a matrix-level move to the Goeritz blocks.
pub fn apply_move_matrix<T: IntScalar>(
    g: &Goeritz<T>,
    mv: &MoveSpec,
) -> Result<Goeritz<T>, MoveError> {
    let n = g.pair_count();
    let mut out = g.clone();
    out.type_c = None;
    match mv {
        MoveSpec::TypeB { pair, sign } => {
            check_index(*pair, n)?;
            let k = pair - 1;
            let step = T::from(2) * sign.value::<T>();
            out.a.bump(k, k, step.clone());
            out.b.bump(k, k, -step);
            // the flipped crossing sits on the axis, so e does not see it
        }
        MoveSpec::TypeA1 { pair, sign, color } => {
            check_index(*pair, n)?;
            let k = pair - 1;
            out.a.bump(k, k, T::from(2) * sign.value::<T>());
            out.e += correction_shift::<T>(color);
        }
        MoveSpec::TypeA2 {
            pair_i,
            pair_j,
            sign,
            color,
            mixed,
        } => {
            check_index(*pair_i, n)?;
            check_index(*pair_j, n)?;
            if pair_i == pair_j {
                return Err(MoveError::IndicesNotDistinct);
            }
            let (i, j) = (pair_i - 1, pair_j - 1);
            let step = T::from(2) * sign.value::<T>();
            out.a.bump(i, i, step.clone());
            out.a.bump(j, j, step.clone());
            if *mixed {
                out.b.bump(i, j, -step);
            } else {
                out.a.bump(i, j, -step);
            }
            out.e += correction_shift::<T>(color);
        }
        MoveSpec::TypeC { sign, bicolored } => {
            // the border is forced by the zero-row-sum closure of the full
            // unreduced matrix
            let ones = vec![T::one(); n];
            let border: Vec<T> = g
                .a
                .add(&g.b)
                .mul_vec(&ones)
                .into_iter()
                .map(|v| -v)
                .collect();
            let border_sum = border
                .iter()
                .fold(T::zero(), |acc, v| acc + v.clone());
            let corner = sign.value::<T>() - border_sum.clone();
            out.a = g.a.bordered(&border, corner);
            out.b = g.b.bordered(&vec![T::zero(); n], T::zero());
            out.n = n + 1;
            if *bicolored {
                out.e += T::from(-2) * sign.value::<T>();
            }
            out.type_c = Some(TypeCRecord {
                border,
                border_sum,
                sign: *sign,
            });
        }
    }
    Ok(out)
}

/// The Goeritz form of the split link obtained by resolving the two
/// crossings created by an axis contraction: same blocks, but the new
/// diagonal entries drop to minus the border sum. Its minus part always
/// kills the all-ones vector. The correction term of the resolved link is
/// not tracked and is stored as zero.
pub fn resolution_form<T: IntScalar>(g: &Goeritz<T>) -> Result<Goeritz<T>, MoveError> {
    let record = g
        .type_c_record()
        .ok_or(MoveError::MissingContractionRecord)?;
    let n = g.pair_count();
    let mut a = g.block_a().clone();
    a.set(n - 1, n - 1, -record.border_sum.clone());
    Ok(Goeritz {
        n,
        a,
        b: g.block_b().clone(),
        e: T::zero(),
        label: None,
        type_c: None,
    })
}

/// The full matrix of [`resolution_form`], size `2(n+1)`.
pub fn resolution_matrix<T: IntScalar>(g: &Goeritz<T>) -> Result<SymMatrix<T>, MoveError> {
    resolution_form(g).map(|f| f.full_matrix())
}

fn find_crossing<'d>(
    d: &'d SymmetricDiagram,
    id: &str,
) -> Result<&'d Crossing, MoveError> {
    d.crossing(id)
        .ok_or_else(|| MoveError::NoSuchCrossing(id.to_string()))
}

/// The mirror pair joined by a directed on-axis crossing, if it has the
/// supported shape.
fn directed_axis_pair(c: &Crossing) -> Result<usize, MoveError> {
    if c.locus != Locus::OnAxisH {
        return Err(MoveError::LocusViolation {
            id: c.id.clone(),
            requirement: "a type B move needs an on-axis crossing on the directed arc",
        });
    }
    match c.regions {
        (RegionRef::PairedPlus(i), RegionRef::PairedMinus(j))
        | (RegionRef::PairedMinus(j), RegionRef::PairedPlus(i))
            if i == j =>
        {
            Ok(i)
        }
        _ => Err(MoveError::Unsupported {
            id: c.id.clone(),
            why: "an on-axis crossing change must join a marked region to its mirror",
        }),
    }
}

fn require_off_axis(c: &Crossing) -> Result<(), MoveError> {
    if c.locus != Locus::OffAxis {
        return Err(MoveError::LocusViolation {
            id: c.id.clone(),
            requirement: "a type A move needs an off-axis crossing",
        });
    }
    Ok(())
}

fn require_ready(d: &SymmetricDiagram) -> Result<(), MoveError> {
    d.is_admissible()
        .and_then(|ok| {
            if ok {
                Ok(())
            } else {
                let offender = d
                    .crossings
                    .iter()
                    .find(|c| c.locus == Locus::OnAxisHPrime)
                    .expect("non-admissible diagram has such a crossing");
                Err(DiagramError::NotAdmissible(offender.id.clone()))
            }
        })
        .map_err(MoveError::from)
}

/// Applies a diagram-level move, producing a new diagram.
pub fn apply_move_diagram(
    d: &SymmetricDiagram,
    mv: &DiagramMove,
) -> Result<SymmetricDiagram, MoveError> {
    require_ready(d)?;
    let mut out = d.clone();
    match mv {
        DiagramMove::FlipB { crossing } => {
            let target = find_crossing(d, crossing)?;
            directed_axis_pair(target)?;
            let idx = out.crossings.iter().position(|c| c.id == *crossing).unwrap();
            out.crossings[idx].eta = out.crossings[idx].eta.flip();
        }
        DiagramMove::FlipA { crossing } => {
            let target = find_crossing(d, crossing)?;
            require_off_axis(target)?;
            let partner_id = target.partner.clone();
            find_crossing(d, &partner_id)?;
            for c in &mut out.crossings {
                if c.id == *crossing || c.id == partner_id {
                    c.eta = c.eta.flip();
                    if let CrossingColor::Bicolored { epsilon } = c.color {
                        c.color = CrossingColor::Bicolored {
                            epsilon: epsilon.flip(),
                        };
                    }
                }
            }
        }
        DiagramMove::ContractC { sign, bicolored } => {
            out = contract_axis(d, *sign, *bicolored);
        }
    }
    Ok(out)
}

fn transfer(region: RegionRef, a_side: bool, new_index: usize) -> RegionRef {
    match region {
        RegionRef::Fixed => {
            if a_side {
                RegionRef::PairedPlus(new_index)
            } else {
                RegionRef::PairedMinus(new_index)
            }
        }
        other => other,
    }
}

fn fresh_pair_ids(d: &SymmetricDiagram) -> (String, String) {
    let mut attempt = 0usize;
    loop {
        let plus = if attempt == 0 {
            "tcp".to_string()
        } else {
            format!("tcp{attempt}")
        };
        let minus = if attempt == 0 {
            "tcm".to_string()
        } else {
            format!("tcm{attempt}")
        };
        if d.crossing(&plus).is_none() && d.crossing(&minus).is_none() {
            return (plus, minus);
        }
        attempt += 1;
    }
}

/// The axis contraction at diagram level. The fixed region pinches: every
/// off-axis crossing that touched it moves in full to the new region pair
/// (the copy touching a marked plus region goes to the plus side, its mirror
/// to the minus side), while on-axis crossings with both corners in the
/// fixed region stay put, away from the contracted sub-arc. Two new mirror
/// crossings of the move's sign join the new pair to what is left of the
/// fixed region. This reproduces the matrix-level block formula exactly.
fn contract_axis(d: &SymmetricDiagram, sign: Sign, bicolored: bool) -> SymmetricDiagram {
    let new_index = d.n + 1;
    let mut crossings: Vec<Crossing> = d
        .crossings
        .iter()
        .map(|c| {
            let mut moved = c.clone();
            if c.locus == Locus::OffAxis && (c.regions.0.is_fixed() || c.regions.1.is_fixed()) {
                let other = if c.regions.0.is_fixed() {
                    c.regions.1
                } else {
                    c.regions.0
                };
                let a_side = match other {
                    RegionRef::PairedPlus(_) => true,
                    RegionRef::PairedMinus(_) => false,
                    // both corners fixed: split the mirror pair by id
                    RegionRef::Fixed => c.id <= c.partner,
                };
                moved.regions = (
                    transfer(c.regions.0, a_side, new_index),
                    transfer(c.regions.1, a_side, new_index),
                );
            }
            moved
        })
        .collect();
    let (id_plus, id_minus) = fresh_pair_ids(d);
    let color = if bicolored {
        CrossingColor::Bicolored { epsilon: sign }
    } else {
        CrossingColor::Unicolored
    };
    crossings.push(Crossing {
        id: id_plus.clone(),
        regions: (RegionRef::PairedPlus(new_index), RegionRef::Fixed),
        eta: sign,
        color,
        locus: Locus::OffAxis,
        partner: id_minus.clone(),
    });
    crossings.push(Crossing {
        id: id_minus,
        regions: (RegionRef::PairedMinus(new_index), RegionRef::Fixed),
        eta: sign,
        color,
        locus: Locus::OffAxis,
        partner: id_plus,
    });
    SymmetricDiagram::new(new_index, crossings, d.label.clone())
}

/// The matrix-level move whose block action equals the diagram-level move:
/// an off-axis flip touching the fixed region projects to `TypeA1`, any
/// other projectable off-axis flip to `TypeA2`, a directed on-axis flip to
/// `TypeB`, and a contraction to `TypeC`. The sign is the incidence number
/// the target carries after the flip.
pub fn move_projection(
    d: &SymmetricDiagram,
    mv: &DiagramMove,
) -> Result<MoveSpec, MoveError> {
    require_ready(d)?;
    match mv {
        DiagramMove::FlipB { crossing } => {
            let c = find_crossing(d, crossing)?;
            let pair = directed_axis_pair(c)?;
            Ok(MoveSpec::TypeB {
                pair,
                sign: c.eta.flip(),
            })
        }
        DiagramMove::FlipA { crossing } => {
            let c = find_crossing(d, crossing)?;
            require_off_axis(c)?;
            let sign = c.eta.flip();
            let color = c.color;
            match c.regions {
                (RegionRef::Fixed, RegionRef::Fixed) => Err(MoveError::Unsupported {
                    id: c.id.clone(),
                    why: "both corners lie in the fixed region, so the blocks do not move",
                }),
                (RegionRef::Fixed, other) | (other, RegionRef::Fixed) => Ok(MoveSpec::TypeA1 {
                    pair: other.pair_index().expect("other corner is marked"),
                    sign,
                    color,
                }),
                (RegionRef::PairedPlus(i), RegionRef::PairedPlus(j))
                | (RegionRef::PairedMinus(i), RegionRef::PairedMinus(j)) => {
                    if i == j {
                        Err(MoveError::Unsupported {
                            id: c.id.clone(),
                            why: "both corners lie in one region, so the blocks do not move",
                        })
                    } else {
                        Ok(MoveSpec::TypeA2 {
                            pair_i: i.min(j),
                            pair_j: i.max(j),
                            sign,
                            color,
                            mixed: false,
                        })
                    }
                }
                (RegionRef::PairedPlus(i), RegionRef::PairedMinus(j))
                | (RegionRef::PairedMinus(j), RegionRef::PairedPlus(i)) => {
                    if i == j {
                        Err(MoveError::Unsupported {
                            id: c.id.clone(),
                            why: "the corners lie in a region and its mirror; no single matrix \
                                  move matches a flip of this mirror pair",
                        })
                    } else {
                        Ok(MoveSpec::TypeA2 {
                            pair_i: i.min(j),
                            pair_j: i.max(j),
                            sign,
                            color,
                            mixed: true,
                        })
                    }
                }
            }
        }
        DiagramMove::ContractC { sign, bicolored } => Ok(MoveSpec::TypeC {
            sign: *sign,
            bicolored: *bicolored,
        }),
    }
}
