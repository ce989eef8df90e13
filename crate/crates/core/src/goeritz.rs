//! The equivariant Goeritz form: mirror-pair blocks, eigenspace parts, and
//! exact determinant identities.

use num_traits::pow;
use thiserror::Error;

use crate::matrix::SymMatrix;
use crate::scalar::IntScalar;
use crate::sign::Sign;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GoeritzError {
    #[error("blocks must be square of equal size, got {a} and {b}")]
    BlockSizeMismatch { a: usize, b: usize },
    #[error("the form needs at least one region pair")]
    Empty,
}

/// Bookkeeping attached by an axis-contraction move, needed to build the
/// split-link resolution of the two crossings it created.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCRecord<T> {
    /// Border column of the new block row.
    pub border: Vec<T>,
    /// Sum of the border entries.
    pub border_sum: T,
    /// Sign of the two created crossings.
    pub sign: Sign,
}

/// The reduced Goeritz form of a symmetric diagram, stored as the two
/// symmetric blocks `A` (plus/plus pairings) and `B` (plus/minus pairings)
/// together with the correction term. The full form on the region basis
/// `a_1..a_n, a_1'..a_n'` is the block matrix `[[A, B], [B, A]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goeritz<T> {
    pub(crate) n: usize,
    pub(crate) a: SymMatrix<T>,
    pub(crate) b: SymMatrix<T>,
    pub(crate) e: T,
    pub(crate) label: Option<String>,
    pub(crate) type_c: Option<TypeCRecord<T>>,
}

/// The three exact determinant checks tying the eigenspace parts to the
/// full form. For data coming from a knot the full determinant is odd and
/// nonzero, which forces both parts to be nonsingular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetIdentityReport<T> {
    pub det_full: T,
    pub det_plus: T,
    pub det_minus: T,
    /// `det(M+)·det(M-) == 4^n·det(M)`, which holds for arbitrary symmetric
    /// blocks.
    pub identity_holds: bool,
    pub det_odd: bool,
    pub det_nonzero: bool,
}

impl<T: IntScalar> Goeritz<T> {
    pub fn new(
        a: SymMatrix<T>,
        b: SymMatrix<T>,
        e: T,
        label: Option<String>,
    ) -> Result<Self, GoeritzError> {
        if a.size() != b.size() {
            return Err(GoeritzError::BlockSizeMismatch {
                a: a.size(),
                b: b.size(),
            });
        }
        if a.size() == 0 {
            return Err(GoeritzError::Empty);
        }
        Ok(Goeritz {
            n: a.size(),
            a,
            b,
            e,
            label,
            type_c: None,
        })
    }

    /// Number of region pairs; the full form has size `2n`.
    pub fn pair_count(&self) -> usize {
        self.n
    }

    pub fn block_a(&self) -> &SymMatrix<T> {
        &self.a
    }

    pub fn block_b(&self) -> &SymMatrix<T> {
        &self.b
    }

    pub fn correction(&self) -> &T {
        &self.e
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    pub fn type_c_record(&self) -> Option<&TypeCRecord<T>> {
        self.type_c.as_ref()
    }

    /// The full form `[[A, B], [B, A]]` on the basis `a_1..a_n, a_1'..a_n'`.
    pub fn full_matrix(&self) -> SymMatrix<T> {
        let n = self.n;
        SymMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => self.a.get(i, j).clone(),
            (false, false) => self.a.get(i - n, j - n).clone(),
            (true, false) => self.b.get(i, j - n).clone(),
            (false, true) => self.b.get(i - n, j).clone(),
        })
    }

    /// Restriction to the +1 eigenspace of the involution, in the basis
    /// `a_i - a_i'`: equals `2(A - B)`.
    pub fn plus_part(&self) -> SymMatrix<T> {
        self.a.sub(&self.b).scaled(2)
    }

    /// Restriction to the -1 eigenspace, in the basis `a_i + a_i'`: equals
    /// `2(A + B)`.
    pub fn minus_part(&self) -> SymMatrix<T> {
        self.a.add(&self.b).scaled(2)
    }

    pub fn check_det_identity(&self) -> DetIdentityReport<T> {
        let det_full = self.full_matrix().det();
        let det_plus = self.plus_part().det();
        let det_minus = self.minus_part().det();
        let identity_holds =
            det_plus.clone() * det_minus.clone() == pow(T::from(4), self.n) * det_full.clone();
        DetIdentityReport {
            det_odd: det_full.is_odd(),
            det_nonzero: !det_full.is_zero(),
            det_full,
            det_plus,
            det_minus,
            identity_holds,
        }
    }
}
