use crate::laurent::LaurentPoly;

use super::{determinant, InvariantError};

/// Square integer matrix of linking numbers `a_ij = lk(α_i, α_j⁺)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, InvariantError> {
        let rows = entries.len();
        if let Some(r) = entries.iter().find(|r| r.len() != rows) {
            return Err(InvariantError::NotSquare { rows, len: r.len() });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `det(V − Vᵀ)`, which is `±1` for a knot.
    pub fn skew_det(&self) -> LaurentPoly {
        let n = self.dim();
        let m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| LaurentPoly::constant(self.entries[i][j] - self.entries[j][i])).collect())
            .collect();
        determinant(&m)
    }
}

/// `det(tV − Vᵀ)`, unnormalized.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> LaurentPoly {
    let n = v.dim();
    let m: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| (0..n).map(|j| LaurentPoly::from_int_terms([(1, v.entries[i][j]), (0, -v.entries[j][i])])).collect())
        .collect();
    determinant(&m)
}

pub fn conway_from_seifert(v: &SeifertMatrix) -> Result<LaurentPoly, InvariantError> {
    Ok(alexander_from_seifert(v).normalize_alexander()?.conway_from_alexander()?)
}
