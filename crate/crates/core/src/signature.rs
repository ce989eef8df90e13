//! Exact inertia and signature by two independent routes.
//!
//! The workhorse is [`inertia`]: symmetric congruence elimination over the
//! rationals with a zero-pivot repair, so it succeeds on every symmetric
//! matrix. The cross-check is [`signature_jones`]: the signature as a sum of
//! consecutive principal-minor sign products along a sigma series. The two
//! must always agree on nonsingular input; the randomized suites hold them
//! against each other.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::goeritz::Goeritz;
use crate::matrix::SymMatrix;
use crate::scalar::IntScalar;
use crate::sign::signum_i64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("eigenspace part {part} is singular; the blocks do not come from a knot")]
    SingularEigenspacePart { part: &'static str },
    #[error("preference order must be a permutation of the row indices")]
    BadPreference,
    #[error("no sigma series found")]
    NoSeries,
}

/// Counts of positive, negative, and zero eigenvalues of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn size(&self) -> usize {
        self.positive + self.negative + self.nullity
    }

    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

/// Exact inertia by symmetric congruence elimination over the rationals.
///
/// When a diagonal pivot vanishes but its row still has a nonzero entry at
/// column `j`, we add `t` times row and column `j` into the pivot row and
/// column; the new diagonal entry is `t²·m_jj + 2t·m_kj`, and one of
/// `t = 1, 2` always makes it nonzero. Congruence preserves inertia, so the
/// final diagonal signs are the answer.
pub fn inertia<T: IntScalar>(m: &SymMatrix<T>) -> Inertia {
    let n = m.size();
    let mut w: Vec<Vec<Ratio<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Ratio::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut result = Inertia {
        positive: 0,
        negative: 0,
        nullity: 0,
    };
    for k in 0..n {
        if w[k][k].is_zero() {
            let Some(j) = (k + 1..n).find(|&j| !w[k][j].is_zero()) else {
                result.nullity += 1;
                continue;
            };
            let two = Ratio::from_integer(T::from(2));
            // t = 1 unless that still leaves the diagonal zero
            let after_one = w[j][j].clone() + two.clone() * w[k][j].clone();
            let t = if after_one.is_zero() {
                two.clone()
            } else {
                Ratio::one()
            };
            let row_j: Vec<Ratio<T>> = w[j].clone();
            for l in k..n {
                let add = t.clone() * row_j[l].clone();
                w[k][l] = w[k][l].clone() + add;
            }
            for l in k..n {
                let add = t.clone() * w[l][j].clone();
                w[l][k] = w[l][k].clone() + add;
            }
            debug_assert!(!w[k][k].is_zero());
        }
        let pivot = w[k][k].clone();
        if pivot.is_positive() {
            result.positive += 1;
        } else {
            result.negative += 1;
        }
        let pivot_row: Vec<Ratio<T>> = w[k][k..n].to_vec();
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let f = w[i][k].clone() / pivot.clone();
            for j in k + 1..n {
                let sub = f.clone() * pivot_row[j - k].clone();
                w[i][j] = w[i][j].clone() - sub;
            }
            w[i][k] = Ratio::zero();
        }
    }
    result
}

/// A nested chain of principal submatrix selections in which no two
/// consecutive members are singular; the signature falls out of the signs
/// of consecutive minor products. The empty selection opens the chain with
/// determinant one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSeries {
    order: Vec<usize>,
}

impl SigmaSeries {
    /// Indices in the order they were added.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The `i`-th selection (sorted), `i` in `1..=len`.
    pub fn selection(&self, i: usize) -> Vec<usize> {
        let mut s = self.order[..i].to_vec();
        s.sort_unstable();
        s
    }

    /// True when the chain is strictly nested inside `m` and no two
    /// consecutive selections are singular (the empty opening selection
    /// counts as nonsingular).
    pub fn is_valid_for<T: IntScalar>(&self, m: &SymMatrix<T>) -> bool {
        let mut seen = vec![false; m.size()];
        for &idx in &self.order {
            if idx >= m.size() || seen[idx] {
                return false;
            }
            seen[idx] = true;
        }
        let mut prev_nonsingular = true;
        for i in 1..=self.len() {
            let nonsingular = !m.principal_submatrix(&self.selection(i)).det().is_zero();
            if !prev_nonsingular && !nonsingular {
                return false;
            }
            prev_nonsingular = nonsingular;
        }
        true
    }
}

struct SeriesSearch<'m, T> {
    matrix: &'m SymMatrix<T>,
    preference: Vec<usize>,
    nonsingular_cache: HashMap<Vec<usize>, bool>,
    dead_ends: HashSet<Vec<usize>>,
}

impl<'m, T: IntScalar> SeriesSearch<'m, T> {
    fn is_nonsingular(&mut self, selection: &[usize]) -> bool {
        let mut key = selection.to_vec();
        key.sort_unstable();
        if let Some(&hit) = self.nonsingular_cache.get(&key) {
            return hit;
        }
        let value = !self.matrix.principal_submatrix(&key).det().is_zero();
        self.nonsingular_cache.insert(key, value);
        value
    }

    /// Depth-first extension, preferring nonsingular steps; a singular step
    /// is allowed only after a nonsingular one. Existence is guaranteed for
    /// nonsingular symmetric input, so the search only backtracks past
    /// unlucky singular choices.
    fn extend(&mut self, chosen: &mut Vec<usize>, last_nonsingular: bool) -> bool {
        if chosen.len() == self.matrix.size() {
            return true;
        }
        let mut key = chosen.clone();
        key.sort_unstable();
        if self.dead_ends.contains(&key) {
            return false;
        }
        let candidates: Vec<usize> = self
            .preference
            .iter()
            .copied()
            .filter(|c| !chosen.contains(c))
            .collect();
        let mut singular_candidates = Vec::new();
        for cand in candidates {
            chosen.push(cand);
            let ok = self.is_nonsingular(chosen);
            if ok {
                if self.extend(chosen, true) {
                    return true;
                }
            } else {
                singular_candidates.push(cand);
            }
            chosen.pop();
        }
        if last_nonsingular {
            for cand in singular_candidates {
                chosen.push(cand);
                if self.extend(chosen, false) {
                    return true;
                }
                chosen.pop();
            }
        }
        self.dead_ends.insert(key);
        false
    }
}

/// A sigma series for a nonsingular symmetric matrix, grown greedily in
/// ascending index order.
pub fn sigma_series<T: IntScalar>(m: &SymMatrix<T>) -> Result<SigmaSeries, SignatureError> {
    let order: Vec<usize> = (0..m.size()).collect();
    sigma_series_with_preference(m, &order)
}

/// Like [`sigma_series`], but candidate indices are tried in the given
/// preference order; any valid series yields the same signature.
pub fn sigma_series_with_preference<T: IntScalar>(
    m: &SymMatrix<T>,
    preference: &[usize],
) -> Result<SigmaSeries, SignatureError> {
    let n = m.size();
    {
        let mut check: Vec<usize> = preference.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(SignatureError::BadPreference);
        }
    }
    if m.det().is_zero() {
        return Err(SignatureError::SingularMatrix);
    }
    let mut search = SeriesSearch {
        matrix: m,
        preference: preference.to_vec(),
        nonsingular_cache: HashMap::new(),
        dead_ends: HashSet::new(),
    };
    let mut chosen = Vec::with_capacity(n);
    if search.extend(&mut chosen, true) {
        Ok(SigmaSeries { order: chosen })
    } else {
        Err(SignatureError::NoSeries)
    }
}

/// Sum of signs of consecutive minor determinant products along the series,
/// with `sign(0) = 0`.
pub fn jones_sum<T: IntScalar>(m: &SymMatrix<T>, series: &SigmaSeries) -> i64 {
    let mut prev_sign = 1i64;
    let mut total = 0i64;
    for i in 1..=series.len() {
        let det = m.principal_submatrix(&series.selection(i)).det();
        let sign = signum_i64(&det);
        total += prev_sign * sign;
        prev_sign = sign;
    }
    total
}

/// Signature of a nonsingular symmetric matrix via a sigma series. Kept
/// independent of [`inertia`] so the two can audit each other.
pub fn signature_jones<T: IntScalar>(m: &SymMatrix<T>) -> Result<i64, SignatureError> {
    let series = sigma_series(m)?;
    Ok(jones_sum(m, &series))
}

/// The equivariant signature: signature of the plus part, minus signature of
/// the minus part, minus the correction term. Both parts must be
/// nonsingular, which holds automatically for blocks coming from a knot.
pub fn equivariant_signature<T: IntScalar>(g: &Goeritz<T>) -> Result<T, SignatureError> {
    let plus = inertia(&g.plus_part());
    if plus.nullity > 0 {
        return Err(SignatureError::SingularEigenspacePart { part: "M+" });
    }
    let minus = inertia(&g.minus_part());
    if minus.nullity > 0 {
        return Err(SignatureError::SingularEigenspacePart { part: "M-" });
    }
    Ok(T::from(plus.signature() - minus.signature()) - g.correction().clone())
}
