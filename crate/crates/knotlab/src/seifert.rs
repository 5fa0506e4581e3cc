//! Seifert-matrix models of odd-dimensional knots: validation, mirror
//! inverse, connected sum, Alexander polynomial, and the presentation of the
//! Alexander module.
//!
//! A knot in `S^{2m+1}` is modeled by a square integer matrix `A` together
//! with the hermitian sign `ε = (−1)^{m+1}`. The matrix is admissible when
//! `det(A − εAᵀ) = ±1`; the Alexander module is then presented by
//! `tA − εAᵀ` and carries a nonsingular ε-hermitian linking pairing.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::laurent::{rat, LaurentPolynomial};
use crate::polymatrix::{quotient_order, PolyMatrix};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SeifertError {
    #[error("matrix is not square: {rows} rows, {cols} cols in row {row}")]
    NotSquare { rows: usize, cols: usize, row: usize },
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i64),
    #[error("Seifert matrix fails unimodularity: det(A - eps*A^T) is not a unit")]
    InvalidSeifertMatrix,
    #[error("connected sum requires matching signs")]
    SignMismatch,
}

/// Integer Seifert matrix with hermitian sign and an optional label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertKnot {
    matrix: Vec<Vec<i64>>,
    epsilon: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl SeifertKnot {
    pub fn new(
        matrix: Vec<Vec<i64>>,
        epsilon: i64,
        name: Option<String>,
    ) -> Result<Self, SeifertError> {
        let n = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(SeifertError::NotSquare {
                    rows: n,
                    cols: r.len(),
                    row,
                });
            }
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(SeifertError::BadEpsilon(epsilon));
        }
        Ok(Self {
            matrix,
            epsilon,
            name,
        })
    }

    pub fn unknot() -> Self {
        Self::new(vec![], 1, Some("unknot".into())).expect("empty matrix is square")
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Unimodularity of the intersection pairing: `det(A − εAᵀ) = ±1`.
    pub fn validate(&self) -> bool {
        let n = self.size();
        let m = IntMatrix::from_fn(n, n, |i, j| {
            (self.matrix[i][j] - self.epsilon * self.matrix[j][i]).into()
        });
        match m.determinant() {
            Some(d) => d.abs().is_one(),
            None => false,
        }
    }

    fn require_valid(&self) -> Result<(), SeifertError> {
        if self.validate() {
            Ok(())
        } else {
            Err(SeifertError::InvalidSeifertMatrix)
        }
    }

    /// The model of `−K`: the matrix `−Aᵀ` with the same sign.
    pub fn mirror_inverse(&self) -> Result<Self, SeifertError> {
        self.require_valid()?;
        let n = self.size();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| -self.matrix[j][i]).collect())
            .collect();
        let name = self.name.as_ref().map(|s| format!("-{s}"));
        Ok(Self {
            matrix,
            epsilon: self.epsilon,
            name,
        })
    }

    /// Block-diagonal sum modeling the connected sum of knots.
    pub fn connected_sum(&self, other: &Self) -> Result<Self, SeifertError> {
        if self.epsilon != other.epsilon {
            return Err(SeifertError::SignMismatch);
        }
        self.require_valid()?;
        other.require_valid()?;
        let (n, m) = (self.size(), other.size());
        let matrix = (0..n + m)
            .map(|i| {
                (0..n + m)
                    .map(|j| {
                        if i < n && j < n {
                            self.matrix[i][j]
                        } else if i >= n && j >= n {
                            other.matrix[i - n][j - n]
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}#{b}")),
            _ => None,
        };
        Ok(Self {
            matrix,
            epsilon: self.epsilon,
            name,
        })
    }

    /// Presentation `tA − εAᵀ` of the Alexander module.
    pub fn presentation_matrix(&self) -> Result<PolyMatrix, SeifertError> {
        self.require_valid()?;
        let n = self.size();
        Ok(PolyMatrix::from_fn(n, n, |i, j| {
            LaurentPolynomial::from_terms(vec![
                (1, rat(self.matrix[i][j])),
                (0, rat(-self.epsilon * self.matrix[j][i])),
            ])
        }))
    }

    /// `Δ = det(tA − εAᵀ)` in Alexander normalization; satisfies `Δ(1) = ±1`.
    pub fn alexander_polynomial(&self) -> Result<LaurentPolynomial, SeifertError> {
        let p = self.presentation_matrix()?;
        quotient_order(&p).map_err(|_| SeifertError::InvalidSeifertMatrix)
    }
}

/// Catalog entry: a named knot model with an optional pinned Alexander
/// polynomial used as a fixture.
#[derive(Clone, Debug)]
pub struct KnotCatalogEntry {
    pub name: String,
    pub seifert: SeifertKnot,
    pub expected_alexander: Option<LaurentPolynomial>,
}

/// On-disk catalog record.
#[derive(Debug, Serialize, Deserialize)]
struct CatalogRecord {
    name: String,
    epsilon: i64,
    matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog parse error: {0}")]
    Parse(String),
    #[error("entry {name:?}: {source}")]
    Entry {
        name: String,
        source: SeifertError,
    },
    #[error("entry {name:?} fails unimodularity: det(A - eps*A^T) != +-1")]
    Invalid { name: String },
}

/// A validated collection of named knot models.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<KnotCatalogEntry>,
}

impl Catalog {
    /// The built-in catalog: five classical models with pinned Alexander
    /// polynomials.
    pub fn builtin() -> Self {
        let fix = |terms: &[(i64, i64)]| Some(LaurentPolynomial::from_int_terms(terms));
        let entries = vec![
            KnotCatalogEntry {
                name: "unknot".into(),
                seifert: SeifertKnot::unknot(),
                expected_alexander: fix(&[(0, 1)]),
            },
            KnotCatalogEntry {
                name: "trefoil".into(),
                seifert: SeifertKnot::new(vec![vec![-1, 1], vec![0, -1]], 1, Some("trefoil".into()))
                    .expect("square"),
                expected_alexander: fix(&[(2, 1), (1, -1), (0, 1)]),
            },
            KnotCatalogEntry {
                name: "figure_eight".into(),
                seifert: SeifertKnot::new(
                    vec![vec![1, 1], vec![0, -1]],
                    1,
                    Some("figure_eight".into()),
                )
                .expect("square"),
                expected_alexander: fix(&[(2, 1), (1, -3), (0, 1)]),
            },
            KnotCatalogEntry {
                name: "cinquefoil".into(),
                seifert: SeifertKnot::new(
                    vec![
                        vec![-1, 1, 0, 0],
                        vec![0, -1, 1, 0],
                        vec![0, 0, -1, 1],
                        vec![0, 0, 0, -1],
                    ],
                    1,
                    Some("cinquefoil".into()),
                )
                .expect("square"),
                expected_alexander: fix(&[(4, 1), (3, -1), (2, 1), (1, -1), (0, 1)]),
            },
            KnotCatalogEntry {
                name: "three_twist".into(),
                seifert: SeifertKnot::new(
                    vec![vec![1, 1], vec![0, 2]],
                    1,
                    Some("three_twist".into()),
                )
                .expect("square"),
                // Non-monic: exercises rational coefficients downstream.
                expected_alexander: fix(&[(2, 2), (1, -3), (0, 2)]),
            },
        ];
        Self { entries }
    }

    /// Parse and validate a catalog from JSON. Parse failures and
    /// unimodularity failures are reported separately so the CLI can map
    /// them to distinct exit codes.
    pub fn from_json_str(s: &str) -> Result<Self, CatalogError> {
        let records: Vec<CatalogRecord> = serde_json::from_str(s)
            .map_err(|e| CatalogError::Parse(format!("{e} (line {}, column {})", e.line(), e.column())))?;
        let mut entries = Vec::with_capacity(records.len());
        for rec in records {
            let seifert = SeifertKnot::new(rec.matrix, rec.epsilon, Some(rec.name.clone()))
                .map_err(|source| CatalogError::Entry {
                    name: rec.name.clone(),
                    source,
                })?;
            if !seifert.validate() {
                return Err(CatalogError::Invalid { name: rec.name });
            }
            entries.push(KnotCatalogEntry {
                name: rec.name,
                seifert,
                expected_alexander: None,
            });
        }
        Ok(Self { entries })
    }

    pub fn to_json_string(&self) -> String {
        let records: Vec<CatalogRecord> = self
            .entries
            .iter()
            .map(|e| CatalogRecord {
                name: e.name.clone(),
                epsilon: e.seifert.epsilon(),
                matrix: e.seifert.matrix().to_vec(),
            })
            .collect();
        serde_json::to_string_pretty(&records).expect("serializable records")
    }

    pub fn entries(&self) -> &[KnotCatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&KnotCatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}
