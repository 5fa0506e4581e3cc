//! The Blanchfield linking pairing of a Seifert-presented knot module, with
//! values in `Q(t)/Z[t^±1]`, and metabolizer verification.
//!
//! For the presentation `σ = tA − εAᵀ` the pairing matrix is fixed once as
//!
//! ```text
//! B = (1 − t) · (σᵀ)^{-1} = (1 − t) · (tAᵀ − εA)^{-1},
//! λ(x, y) = class of xᵀ · B · involute(y).
//! ```
//!
//! This convention satisfies `σᵀB = (1−t)·I` and `B·involute(σ) =
//! −ε t^{-1}(1−t)·I`, so the pairing is well defined on the quotient with
//! both defects landing in `Z[t^±1]` exactly, and `B = ε·involute(B)ᵀ` holds
//! as an identity of matrices over `Q(t)`, not merely modulo `Z[t^±1]`.
//! Construction verifies both facts and fails loudly if a convention bug is
//! introduced.
//!
//! Isotropy of a candidate submodule is checked exactly over `Z[t^±1]`;
//! the self-annihilator condition `P = P^⊥` is checked over the PID
//! `Q[t^±1]` through canonical Hermite forms.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::laurent::{LaurentPolynomial, RationalFunction, TorsionClass};
use crate::polymatrix::{
    eq_up_to_unit, kernel_mod_delta, quotient_order, MatrixError, PolyMatrix, Submodule,
};
use crate::seifert::{SeifertError, SeifertKnot};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BlanchfieldError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("pairing convention failure: {0}")]
    ConventionFailure(&'static str),
    #[error("direct sum requires matching hermitian signs")]
    SignMismatch,
    #[error("candidate does not live on this form")]
    CandidateMismatch,
}

/// A presented torsion module together with its linking pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlanchfieldForm {
    name: String,
    presentation: PolyMatrix,
    /// `δ·B`: the pairing matrix cleared to the common denominator `δ`.
    numerator: PolyMatrix,
    pairing: Vec<Vec<TorsionClass>>,
    sign: i64,
    delta: LaurentPolynomial,
}

impl BlanchfieldForm {
    /// Build the pairing of a Seifert knot model; fails when the fixed
    /// convention does not satisfy the hermitian and well-definedness
    /// invariants (a convention bug, not a user error).
    pub fn build(knot: &SeifertKnot) -> Result<Self, BlanchfieldError> {
        let presentation = knot.presentation_matrix()?;
        let delta = knot.alexander_polynomial()?;
        let det = presentation.determinant()?;
        let unit = delta
            .div_exact(&det)
            .ok_or(BlanchfieldError::ConventionFailure("determinant is not an associate of delta"))?;
        let adj_t = presentation.transpose().adjugate()?;
        let one_minus_t = LaurentPolynomial::from_int_terms(&[(0, 1), (1, -1)]);
        let numerator = adj_t.scale(&(&one_minus_t * &unit));
        let name = knot.name().unwrap_or("unnamed").to_string();
        Self::assemble(name, presentation, numerator, knot.epsilon(), delta)
    }

    fn assemble(
        name: String,
        presentation: PolyMatrix,
        numerator: PolyMatrix,
        sign: i64,
        delta: LaurentPolynomial,
    ) -> Result<Self, BlanchfieldError> {
        let g = presentation.rows();
        let mut pairing = Vec::with_capacity(g);
        for i in 0..g {
            let mut row = Vec::with_capacity(g);
            for j in 0..g {
                let f = RationalFunction::new(numerator.at(i, j).clone(), delta.clone())
                    .expect("delta is nonzero");
                row.push(f.torsion_reduce());
            }
            pairing.push(row);
        }
        let form = Self {
            name,
            presentation,
            numerator,
            pairing,
            sign,
            delta,
        };
        if !form.hermitian_check() {
            return Err(BlanchfieldError::ConventionFailure("pairing is not eps-hermitian"));
        }
        if !form.well_defined_check() {
            return Err(BlanchfieldError::ConventionFailure(
                "pairing does not vanish on the relation submodule",
            ));
        }
        Ok(form)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.presentation.rows()
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    pub fn delta(&self) -> &LaurentPolynomial {
        &self.delta
    }

    pub fn presentation(&self) -> &PolyMatrix {
        &self.presentation
    }

    /// Pairing matrix entries as canonical torsion classes.
    pub fn pairing(&self) -> &[Vec<TorsionClass>] {
        &self.pairing
    }

    /// `δ·B` as a Laurent polynomial matrix.
    pub fn numerator_matrix(&self) -> &PolyMatrix {
        &self.numerator
    }

    /// The raw rational function `xᵀ·B·involute(y)` before reduction.
    pub fn pair_raw(
        &self,
        x: &[LaurentPolynomial],
        y: &[LaurentPolynomial],
    ) -> Result<RationalFunction, BlanchfieldError> {
        let g = self.rank();
        if x.len() != g || y.len() != g {
            return Err(MatrixError::DimensionMismatch {
                expected: format!("vectors of length {g}"),
                found: format!("{} and {}", x.len(), y.len()),
            }
            .into());
        }
        let mut num = LaurentPolynomial::zero();
        for i in 0..g {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..g {
                if y[j].is_zero() {
                    continue;
                }
                let term = &(&x[i] * self.numerator.at(i, j)) * &y[j].involute();
                num = &num + &term;
            }
        }
        Ok(RationalFunction::new(num, self.delta.clone()).expect("delta is nonzero"))
    }

    /// `λ(x, y)` as a canonical class in `Q(t)/Z[t^±1]`.
    pub fn pair_elements(
        &self,
        x: &[LaurentPolynomial],
        y: &[LaurentPolynomial],
    ) -> Result<TorsionClass, BlanchfieldError> {
        Ok(self.pair_raw(x, y)?.torsion_reduce())
    }

    /// `pairing[i][j] = ε · conjugate(pairing[j][i])` on all basis pairs.
    pub fn hermitian_check(&self) -> bool {
        let g = self.rank();
        for i in 0..g {
            for j in 0..g {
                let mut rhs = self.pairing[j][i].conjugate();
                if self.sign == -1 {
                    rhs = rhs.neg();
                }
                if self.pairing[i][j] != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The pairing vanishes against every relation column, on both sides.
    fn well_defined_check(&self) -> bool {
        let g = self.rank();
        let basis: Vec<Vec<LaurentPolynomial>> = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        if i == j {
                            LaurentPolynomial::one()
                        } else {
                            LaurentPolynomial::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..self.presentation.cols() {
            let r = self.presentation.col_vec(c);
            for e in &basis {
                let left = self.pair_raw(&r, e).expect("dimensions agree");
                let right = self.pair_raw(e, &r).expect("dimensions agree");
                if !left.lambda_membership() || !right.lambda_membership() {
                    return false;
                }
            }
        }
        true
    }

    /// `λ_f ⊕ -λ_g` on the block sum of the presentations.
    pub fn direct_sum_neg(&self, other: &Self) -> Result<Self, BlanchfieldError> {
        if self.sign != other.sign {
            return Err(BlanchfieldError::SignMismatch);
        }
        let presentation = self.presentation.block_diag(&other.presentation);
        let delta = (&self.delta * &other.delta)
            .normalize_alexander()
            .expect("deltas are nonzero");
        // δ = δ_f·δ_g exactly: both factors are ordinary with positive
        // constant term, so no unit correction is needed.
        let numerator = self
            .numerator
            .scale(&other.delta)
            .block_diag(&other.numerator.scale(&self.delta).neg());
        let name = format!("{} (+) -{}", self.name, other.name);
        Self::assemble(name, presentation, numerator, self.sign, delta)
    }

    fn check_candidate(&self, candidate: &MetabolizerCandidate) -> Result<(), BlanchfieldError> {
        if candidate.submodule.ambient_rank() != self.rank()
            || candidate.submodule.ambient() != &self.presentation
        {
            return Err(BlanchfieldError::CandidateMismatch);
        }
        Ok(())
    }

    /// `P^⊥ = {x : λ(x, w) = 0 for all w ∈ P}` over `Q[t^±1]`, computed as
    /// the kernel of `x ↦ xᵀ·(δB·involute(G)) mod δ` joined with the
    /// presentation columns.
    pub fn orthogonal_complement(
        &self,
        candidate: &MetabolizerCandidate,
    ) -> Result<Submodule, BlanchfieldError> {
        self.check_candidate(candidate)?;
        let cleared = self
            .numerator
            .mul(&candidate.submodule.generators().involute())?;
        Ok(kernel_mod_delta(&cleared, &self.delta, &self.presentation)?)
    }

    /// Nonsingularity: the complement of the full module is the zero
    /// submodule.
    pub fn is_nonsingular(&self) -> Result<bool, BlanchfieldError> {
        let full = MetabolizerCandidate::full(self, "full module");
        Ok(self.orthogonal_complement(&full)?.is_zero_submodule())
    }

    /// Decide whether a candidate is a metabolizer: exact isotropy over
    /// `Z[t^±1]` on all pairs of raw generators, and `P = P^⊥` over
    /// `Q[t^±1]`. Failures carry a witness.
    pub fn verify_metabolizer(
        &self,
        candidate: &MetabolizerCandidate,
    ) -> Result<MetabolizerVerdict, BlanchfieldError> {
        self.check_candidate(candidate)?;
        let gens = candidate.raw_generators();
        for i in 0..gens.cols() {
            let gi = gens.col_vec(i);
            for j in 0..gens.cols() {
                let gj = gens.col_vec(j);
                let raw = self.pair_raw(&gi, &gj)?;
                if !raw.lambda_membership() {
                    return Ok(MetabolizerVerdict::NotIsotropic {
                        generator_i: i,
                        generator_j: j,
                        value: raw.torsion_reduce(),
                    });
                }
            }
        }
        let complement = self.orthogonal_complement(candidate)?;
        if candidate.submodule.eq_submodule(&complement)? {
            return Ok(MetabolizerVerdict::Metabolizer);
        }
        let cgens = complement.generators();
        for j in 0..cgens.cols() {
            let v = cgens.col_vec(j);
            if !candidate.submodule.membership(&v)? {
                return Ok(MetabolizerVerdict::IsotropicNotMaximal { element: v });
            }
        }
        // Isotropy guarantees P ⊆ P^⊥, so a strict complement always yields
        // a witness above.
        unreachable!("isotropic candidate strictly contains its complement")
    }

    /// Necessary order condition for a metabolizer `P` of a form of order
    /// `Δ_H`: `o(P)·involute(o(P)) ≐ Δ_H` up to units of `Q[t^±1]`.
    pub fn order_condition(
        &self,
        candidate: &MetabolizerCandidate,
    ) -> Result<(LaurentPolynomial, bool), BlanchfieldError> {
        self.check_candidate(candidate)?;
        let order = quotient_order(candidate.submodule.generators())?;
        let product = &order * &order.involute();
        Ok((order, eq_up_to_unit(&product, &self.delta)))
    }
}

/// A candidate submodule, tagged with where it came from.
///
/// Two generator matrices are kept: the raw `Z[t^±1]`-generators as given
/// (always joined with the presentation columns), used for the exact
/// isotropy check over `Z[t^±1]`, and the canonical Hermite form used for
/// membership and equality over `Q[t^±1]`. The Hermite normalization is a
/// `Q[t^±1]`-base change, so its monic pivots may carry rational
/// coefficients and are unsuitable for the integral check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabolizerCandidate {
    pub submodule: Submodule,
    raw_generators: PolyMatrix,
    pub provenance: String,
}

impl MetabolizerCandidate {
    pub fn new(
        form: &BlanchfieldForm,
        columns: Vec<Vec<LaurentPolynomial>>,
        provenance: impl Into<String>,
    ) -> Result<Self, BlanchfieldError> {
        let presentation = form.presentation();
        let extra = PolyMatrix::from_cols(presentation.rows(), columns)?;
        let submodule = Submodule::new(presentation, &extra)?;
        let raw_generators = extra.hstack(presentation)?;
        Ok(Self {
            submodule,
            raw_generators,
            provenance: provenance.into(),
        })
    }

    /// The zero submodule of the form's module.
    pub fn zero(form: &BlanchfieldForm, provenance: impl Into<String>) -> Self {
        Self {
            submodule: Submodule::zero_submodule(form.presentation()),
            raw_generators: form.presentation().clone(),
            provenance: provenance.into(),
        }
    }

    /// The full module.
    pub fn full(form: &BlanchfieldForm, provenance: impl Into<String>) -> Self {
        let presentation = form.presentation();
        Self {
            submodule: Submodule::full(presentation),
            raw_generators: PolyMatrix::identity(presentation.rows())
                .hstack(presentation)
                .expect("matching rows"),
            provenance: provenance.into(),
        }
    }

    /// The `Z[t^±1]`-generators as given, presentation columns included.
    pub fn raw_generators(&self) -> &PolyMatrix {
        &self.raw_generators
    }

    /// `t^n · P`; the span over `Q[t^±1]` is unchanged.
    pub fn scaled(&self, n: i64, provenance: impl Into<String>) -> Self {
        let unit = LaurentPolynomial::monomial(n, crate::laurent::rat(1));
        Self {
            submodule: self.submodule.scaled(n),
            raw_generators: self.raw_generators.scale(&unit),
            provenance: provenance.into(),
        }
    }
}

/// Outcome of metabolizer verification, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetabolizerVerdict {
    Metabolizer,
    NotIsotropic {
        generator_i: usize,
        generator_j: usize,
        value: TorsionClass,
    },
    IsotropicNotMaximal {
        element: Vec<LaurentPolynomial>,
    },
}

impl MetabolizerVerdict {
    pub fn is_metabolizer(&self) -> bool {
        matches!(self, Self::Metabolizer)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Metabolizer => "Metabolizer",
            Self::NotIsotropic { .. } => "NotIsotropic",
            Self::IsotropicNotMaximal { .. } => "IsotropicNotMaximal",
        }
    }

    pub fn witness_json(&self) -> Option<serde_json::Value> {
        match self {
            Self::Metabolizer => None,
            Self::NotIsotropic {
                generator_i,
                generator_j,
                value,
            } => Some(serde_json::json!({
                "kind": "NotIsotropic",
                "generator_i": generator_i,
                "generator_j": generator_j,
                "value": value,
            })),
            Self::IsotropicNotMaximal { element } => Some(serde_json::json!({
                "kind": "IsotropicNotMaximal",
                "element": element,
            })),
        }
    }
}

/// JSON verification report for one candidate on one form.
pub struct VerificationReport<'a> {
    pub form: &'a BlanchfieldForm,
    pub candidate: &'a MetabolizerCandidate,
    pub verdict: &'a MetabolizerVerdict,
}

impl Serialize for VerificationReport<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VerificationReport", 4)?;
        s.serialize_field(
            "form",
            &serde_json::json!({
                "name": self.form.name(),
                "delta": self.form.delta(),
            }),
        )?;
        s.serialize_field(
            "candidate",
            &serde_json::json!({
                "provenance": self.candidate.provenance,
                "generators": self.candidate.submodule.generators(),
            }),
        )?;
        s.serialize_field("verdict", self.verdict.label())?;
        match self.verdict.witness_json() {
            Some(w) => s.serialize_field("witness", &w)?,
            None => s.skip_field("witness")?,
        }
        s.end()
    }
}
