//! Property tests for the exact linear algebra and the move engine. The
//! determinant and rank oracles here are deliberately independent of the
//! implementation paths they check.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use equisig::diagram::{CrossingColor, RegionRef};
use equisig::goeritz::Goeritz;
use equisig::matrix::SymMatrix;
use equisig::moves::{apply_move_matrix, MoveSpec};
use equisig::selftest::consistency_diagrams;
use equisig::sign::Sign;
use equisig::signature::{inertia, signature_jones};
use equisig::{move_script_parse, parse_document, serialize_document, Document, Int, SymIntMatrix};

fn det_cofactor(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return rows[0][0];
    }
    let mut acc = 0i64;
    for (j, lead) in rows[0].iter().enumerate() {
        if *lead == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * lead * det_cofactor(&minor);
    }
    acc
}

/// Row-echelon rank over exact rationals; makes no use of symmetry.
fn rank_oracle(m: &SymIntMatrix) -> usize {
    let n = m.size();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in rank + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone() / lead.clone();
            for c in col..n {
                let sub = f.clone() * rows[rank][c].clone();
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

fn sym_rows(max_size: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_size).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * n).prop_map(move |vals| {
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in i..n {
                    rows[i][j] = vals[i * n + j];
                    rows[j][i] = vals[i * n + j];
                }
            }
            rows
        })
    })
}

fn to_matrix(rows: &[Vec<i64>]) -> SymIntMatrix {
    SymMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect(),
    )
    .expect("construction is symmetric")
}

fn sign_strategy() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn color_strategy() -> impl Strategy<Value = CrossingColor> {
    prop_oneof![
        Just(CrossingColor::Unicolored),
        sign_strategy().prop_map(|epsilon| CrossingColor::Bicolored { epsilon }),
    ]
}

fn move_strategy() -> impl Strategy<Value = MoveSpec> {
    prop_oneof![
        (1..9usize, sign_strategy()).prop_map(|(pair, sign)| MoveSpec::TypeB { pair, sign }),
        (1..9usize, sign_strategy(), color_strategy())
            .prop_map(|(pair, sign, color)| MoveSpec::TypeA1 { pair, sign, color }),
        (1..8usize, 1..9usize, sign_strategy(), color_strategy(), any::<bool>()).prop_map(
            |(i, extra, sign, color, mixed)| MoveSpec::TypeA2 {
                pair_i: i,
                pair_j: i + extra,
                sign,
                color,
                mixed,
            }
        ),
        (sign_strategy(), any::<bool>())
            .prop_map(|(sign, bicolored)| MoveSpec::TypeC { sign, bicolored }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn bareiss_agrees_with_cofactor_expansion(rows in sym_rows(5, 6)) {
        let m = to_matrix(&rows);
        prop_assert_eq!(m.det(), Int::from(det_cofactor(&rows)));
    }

    #[test]
    fn eigenspace_determinants_tie_to_the_full_form(
        a_rows in sym_rows(5, 5),
        b_vals in proptest::collection::vec(-5i64..=5, 25),
    ) {
        let n = a_rows.len();
        let a = to_matrix(&a_rows);
        let b = SymMatrix::from_fn(n, |i, j| Int::from(b_vals[i * 5 + j]));
        let g = Goeritz::new(a, b, Int::zero(), None).expect("same size");
        let report = g.check_det_identity();
        prop_assert!(report.identity_holds);
        // the parts are symmetric with even entries
        for part in [g.plus_part(), g.minus_part()] {
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(part.get(i, j), part.get(j, i));
                    prop_assert!(part.get(i, j).is_even());
                }
            }
        }
    }

    #[test]
    fn inertia_counts_add_up_and_match_rank(rows in sym_rows(6, 5)) {
        let m = to_matrix(&rows);
        let i = inertia(&m);
        prop_assert_eq!(i.positive + i.negative + i.nullity, m.size());
        prop_assert_eq!(i.rank(), rank_oracle(&m));
    }

    #[test]
    fn minor_product_route_matches_elimination(rows in sym_rows(6, 5)) {
        let m = to_matrix(&rows);
        prop_assume!(!m.det().is_zero());
        prop_assert_eq!(signature_jones(&m).expect("nonsingular"), inertia(&m).signature());
    }

    // A symmetric matrix of rank r has a nonsingular principal r x r
    // submatrix, and interlacing forces its inertia to equal the nonzero
    // inertia of the whole matrix. That makes the minor-product route an
    // oracle for singular input as well.
    #[test]
    fn singular_inertia_matches_a_maximal_nonsingular_restriction(rows in sym_rows(6, 3)) {
        let m = to_matrix(&rows);
        let i = inertia(&m);
        let n = m.size();
        // largest index set whose principal submatrix is nonsingular; the
        // empty set qualifies with determinant one
        let mut witness: Vec<usize> = Vec::new();
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
            if subset.len() > witness.len()
                && !m.principal_submatrix(&subset).det().is_zero()
            {
                witness = subset;
            }
        }
        prop_assert_eq!(witness.len(), i.rank());
        let sigma = if witness.is_empty() {
            0
        } else {
            signature_jones(&m.principal_submatrix(&witness)).expect("witness is nonsingular")
        };
        prop_assert_eq!(sigma, i.signature());
    }

    #[test]
    fn crossing_changes_invert(
        a_rows in sym_rows(5, 4),
        b_vals in proptest::collection::vec(-4i64..=4, 25),
        sign in sign_strategy(),
        color in color_strategy(),
        mixed in any::<bool>(),
        which in 0..3usize,
        raw_i in 0usize..5,
        raw_j in 0usize..5,
    ) {
        let n = a_rows.len();
        let a = to_matrix(&a_rows);
        let b = SymMatrix::from_fn(n, |i, j| Int::from(b_vals[i * 5 + j]));
        let g = Goeritz::new(a, b, Int::from(2), None).expect("same size");
        let i = raw_i % n + 1;
        let j = raw_j % n + 1;
        let forward = match which {
            0 => MoveSpec::TypeB { pair: i, sign },
            1 => MoveSpec::TypeA1 { pair: i, sign, color },
            _ => {
                prop_assume!(i != j);
                MoveSpec::TypeA2 { pair_i: i, pair_j: j, sign, color, mixed }
            }
        };
        let backward = match &forward {
            MoveSpec::TypeB { pair, sign } => MoveSpec::TypeB { pair: *pair, sign: sign.flip() },
            MoveSpec::TypeA1 { pair, sign, color } => MoveSpec::TypeA1 {
                pair: *pair,
                sign: sign.flip(),
                color: flip_color(color),
            },
            MoveSpec::TypeA2 { pair_i, pair_j, sign, color, mixed } => MoveSpec::TypeA2 {
                pair_i: *pair_i,
                pair_j: *pair_j,
                sign: sign.flip(),
                color: flip_color(color),
                mixed: *mixed,
            },
            MoveSpec::TypeC { .. } => unreachable!(),
        };
        let there = apply_move_matrix(&g, &forward).expect("indices in range");
        let back = apply_move_matrix(&there, &backward).expect("indices in range");
        prop_assert_eq!(back.block_a(), g.block_a());
        prop_assert_eq!(back.block_b(), g.block_b());
        prop_assert_eq!(back.correction(), g.correction());
    }

    #[test]
    fn scripts_round_trip_through_display(moves in proptest::collection::vec(move_strategy(), 0..6)) {
        let script = moves.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        prop_assert_eq!(move_script_parse(&script).expect("rendered scripts parse"), moves);
    }

    #[test]
    fn goeritz_documents_round_trip(
        a_rows in sym_rows(4, 9),
        b_vals in proptest::collection::vec(-9i64..=9, 16),
        e in -20i64..=20,
        label in proptest::option::of("[a-zA-Z0-9_\" \\\\/{}\n]{0,12}"),
        notes in proptest::option::of(".{0,20}"),
    ) {
        let n = a_rows.len();
        let a = to_matrix(&a_rows);
        let b = SymMatrix::from_fn(n, |i, j| Int::from(b_vals[i * 4 + j]));
        let g = Goeritz::new(a, b, Int::from(e), label).expect("same size");
        let mut doc = Document::goeritz(g);
        doc.notes = notes;
        let text = serialize_document(&doc);
        prop_assert_eq!(parse_document(&text).expect("serialized documents parse"), doc);
    }
}

fn flip_color(color: &CrossingColor) -> CrossingColor {
    match color {
        CrossingColor::Unicolored => CrossingColor::Unicolored,
        CrossingColor::Bicolored { epsilon } => CrossingColor::Bicolored {
            epsilon: epsilon.flip(),
        },
    }
}

/// Relabeling the region pairs by a permutation conjugates both blocks and
/// leaves the correction term alone.
#[test]
fn relabeling_pairs_conjugates_the_blocks() {
    let rotate = |r: RegionRef, n: usize| match r {
        RegionRef::PairedPlus(i) => RegionRef::PairedPlus(i % n + 1),
        RegionRef::PairedMinus(i) => RegionRef::PairedMinus(i % n + 1),
        RegionRef::Fixed => RegionRef::Fixed,
    };
    for (name, diagram) in consistency_diagrams() {
        let n = diagram.n;
        if n < 2 {
            continue;
        }
        let mut relabeled = diagram.clone();
        for c in &mut relabeled.crossings {
            c.regions = (rotate(c.regions.0, n), rotate(c.regions.1, n));
        }
        let before: Goeritz<Int> = diagram.goeritz().expect("fixture is admissible");
        let after: Goeritz<Int> = relabeled.goeritz().expect("relabeling preserves validity");
        // permutation sends pair index i to i % n + 1
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    after.block_a().get(perm[i], perm[j]),
                    before.block_a().get(i, j),
                    "{name} A"
                );
                assert_eq!(
                    after.block_b().get(perm[i], perm[j]),
                    before.block_b().get(i, j),
                    "{name} B"
                );
            }
        }
        assert_eq!(after.correction(), before.correction(), "{name} e");
    }
}

/// The signature engines accept the empty matrix (signature zero) so the
/// bounds layer can treat the round unknot uniformly.
#[test]
fn empty_matrix_has_zero_signature() {
    let m: SymIntMatrix = SymMatrix::zeros(0);
    assert_eq!(m.det(), Int::one());
    let i = inertia(&m);
    assert_eq!((i.positive, i.negative, i.nullity), (0, 0, 0));
    assert_eq!(signature_jones(&m).expect("nonsingular by convention"), 0);
    let bounds = equisig::bounds::lower_bounds_from_sigma(&Int::zero());
    assert!(bounds.type_a_min.is_zero());
}
