//! The twist-spin metabolizer families on `λ_K ⊕ -λ_K`.
//!
//! Twist spinning a knot with parameter `k` produces two slice disks and
//! hence two metabolizers of the pairing of `K # -K`. On the block model
//! `λ ⊕ -λ` with summand basis `e_1, …, e_g`, the families built here are
//!
//! * informal: `{v ⊕ -v}` and `{v ⊕ -t^k v}`;
//! * even `k`: `{v ⊕ -t^{k/2} v}` and `{t^{k/2} v ⊕ -v}`;
//! * odd `k`, sign `ε ∈ {±1}`: `{v ⊕ -t^{(k+ε)/2} v}` and
//!   `{t^{(k-ε)/2} v ⊕ -v}`.
//!
//! For even `k` the module automorphism `Θ(a, b) = (a, t^{-k/2} b)` is an
//! isometry of `λ ⊕ -λ` carrying the informal pair onto the precise pair
//! (with the two members swapping roles); `consistency_check` verifies this
//! on canonical submodules. The `t`-power ambiguity from moving base points
//! is modeled by `scale_metabolizer`, which never changes a verdict.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::blanchfield::{
    BlanchfieldError, BlanchfieldForm, MetabolizerCandidate, MetabolizerVerdict,
};
use crate::laurent::LaurentPolynomial;
use crate::polymatrix::PolyMatrix;
use crate::seifert::SeifertKnot;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TwistSpinError {
    #[error(transparent)]
    Blanchfield(#[from] BlanchfieldError),
    #[error(transparent)]
    Matrix(#[from] crate::polymatrix::MatrixError),
    #[error("k must be {requires}, got {k}")]
    Parity { requires: &'static str, k: i64 },
    #[error("eps is required when k is odd")]
    MissingEps,
    #[error("eps is only meaningful when k is odd")]
    UnexpectedEps,
    #[error("eps must be +1 or -1, got {0}")]
    BadEps(i64),
}

/// Twist parameter, optional odd-case sign, and the knot model.
#[derive(Clone, Debug)]
pub struct TwistSpinScenario {
    knot: SeifertKnot,
    k: i64,
    eps: Option<i64>,
}

/// Which statement a metabolizer pair instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StatementTag {
    Informal,
    EvenK,
    OddK,
}

/// The two metabolizer candidates produced by one twist-spin statement,
/// living on the block form `λ ⊕ -λ`.
#[derive(Clone, Debug)]
pub struct MetabolizerPair {
    pub minus: MetabolizerCandidate,
    pub plus: MetabolizerCandidate,
    pub form: BlanchfieldForm,
    pub tag: StatementTag,
}

impl TwistSpinScenario {
    pub fn new(knot: SeifertKnot, k: i64, eps: Option<i64>) -> Result<Self, TwistSpinError> {
        match (k.rem_euclid(2), eps) {
            (1, None) => return Err(TwistSpinError::MissingEps),
            (0, Some(_)) => return Err(TwistSpinError::UnexpectedEps),
            (_, Some(e)) if e != 1 && e != -1 => return Err(TwistSpinError::BadEps(e)),
            _ => {}
        }
        Ok(Self { knot, k, eps })
    }

    pub fn knot(&self) -> &SeifertKnot {
        &self.knot
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn eps(&self) -> Option<i64> {
        self.eps
    }

    /// The block form `λ_K ⊕ -λ_K`.
    pub fn sum_form(&self) -> Result<BlanchfieldForm, TwistSpinError> {
        let f = BlanchfieldForm::build(&self.knot)?;
        Ok(f.direct_sum_neg(&f)?)
    }

    /// `{v ⊕ -v}` and `{v ⊕ -t^k v}`.
    pub fn informal_metabolizers(&self) -> Result<MetabolizerPair, TwistSpinError> {
        let form = self.sum_form()?;
        let minus = twisted_graph(&form, 0, 0, "informal-minus")?;
        let plus = twisted_graph(&form, 0, self.k, "informal-plus")?;
        Ok(MetabolizerPair {
            minus,
            plus,
            form,
            tag: StatementTag::Informal,
        })
    }

    /// `{v ⊕ -t^{k/2} v}` and `{t^{k/2} v ⊕ -v}` for even `k`.
    pub fn even_metabolizers(&self) -> Result<MetabolizerPair, TwistSpinError> {
        if self.k % 2 != 0 {
            return Err(TwistSpinError::Parity {
                requires: "even",
                k: self.k,
            });
        }
        let half = self.k / 2;
        let form = self.sum_form()?;
        let minus = twisted_graph(&form, 0, half, "even-minus")?;
        let plus = twisted_graph(&form, half, 0, "even-plus")?;
        Ok(MetabolizerPair {
            minus,
            plus,
            form,
            tag: StatementTag::EvenK,
        })
    }

    /// Odd-`k` pair for the scenario's own sign.
    pub fn odd_metabolizers(&self) -> Result<MetabolizerPair, TwistSpinError> {
        let eps = self.eps.ok_or(TwistSpinError::MissingEps)?;
        self.odd_metabolizers_for(eps)
    }

    /// `{v ⊕ -t^{(k+ε)/2} v}` and `{t^{(k-ε)/2} v ⊕ -v}` for odd `k`.
    pub fn odd_metabolizers_for(&self, eps: i64) -> Result<MetabolizerPair, TwistSpinError> {
        if self.k % 2 == 0 {
            return Err(TwistSpinError::Parity {
                requires: "odd",
                k: self.k,
            });
        }
        if eps != 1 && eps != -1 {
            return Err(TwistSpinError::BadEps(eps));
        }
        let form = self.sum_form()?;
        let minus = twisted_graph(
            &form,
            0,
            (self.k + eps) / 2,
            format!("odd-minus(eps={eps:+})"),
        )?;
        let plus = twisted_graph(
            &form,
            (self.k - eps) / 2,
            0,
            format!("odd-plus(eps={eps:+})"),
        )?;
        Ok(MetabolizerPair {
            minus,
            plus,
            form,
            tag: StatementTag::OddK,
        })
    }

    /// For even `k`: the isometry `Θ(a, b) = (a, t^{-k/2} b)` carries the
    /// informal pair onto the even-`k` pair with the two members swapped
    /// (`{v ⊕ -t^k v} ↦ {v ⊕ -t^{k/2} v}` and `{v ⊕ -v} ↦ {t^{k/2} w ⊕ -w}`),
    /// and preserves all pairing values on basis vectors.
    pub fn consistency_check(&self) -> Result<bool, TwistSpinError> {
        if self.k % 2 != 0 {
            return Err(TwistSpinError::Parity {
                requires: "even",
                k: self.k,
            });
        }
        let half = self.k / 2;
        let informal = self.informal_metabolizers()?;
        let even = self.even_metabolizers()?;
        let form = &informal.form;
        let g2 = form.rank();
        let g = g2 / 2;

        let theta_minus = apply_second_block_twist(form, &informal.minus, -half)?;
        let theta_plus = apply_second_block_twist(form, &informal.plus, -half)?;
        let matches = theta_plus
            .submodule
            .eq_submodule(&even.minus.submodule)?
            && theta_minus.submodule.eq_submodule(&even.plus.submodule)?;
        if !matches {
            return Ok(false);
        }

        // Θ is an isometry: pairing values on basis vectors are unchanged.
        let basis = |i: usize| -> Vec<LaurentPolynomial> {
            (0..g2)
                .map(|j| {
                    if i == j {
                        LaurentPolynomial::one()
                    } else {
                        LaurentPolynomial::zero()
                    }
                })
                .collect()
        };
        let theta_vec = |v: &[LaurentPolynomial]| -> Vec<LaurentPolynomial> {
            let unit = LaurentPolynomial::monomial(-half, crate::laurent::rat(1));
            v.iter()
                .enumerate()
                .map(|(row, p)| if row < g { p.clone() } else { p * &unit })
                .collect()
        };
        for i in 0..g2 {
            for j in 0..g2 {
                let a = basis(i);
                let b = basis(j);
                let lhs = form.pair_elements(&theta_vec(&a), &theta_vec(&b))?;
                let rhs = form.pair_elements(&a, &b)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Run every applicable constructor, verify all candidates, check
    /// cross-statement consistency and the order oracles, and collect the
    /// outcome.
    pub fn twist_spin_report(&self) -> Result<TwistSpinReport, TwistSpinError> {
        let mut pairs = vec![self.informal_metabolizers()?];
        let mut consistency = None;
        if self.k % 2 == 0 {
            pairs.push(self.even_metabolizers()?);
            consistency = Some(self.consistency_check()?);
        } else {
            pairs.push(self.odd_metabolizers_for(-1)?);
            pairs.push(self.odd_metabolizers_for(1)?);
        }
        let mut candidates = Vec::new();
        let mut order_checks = Vec::new();
        for pair in &pairs {
            for cand in [&pair.minus, &pair.plus] {
                let verdict = pair.form.verify_metabolizer(cand)?;
                if verdict.is_metabolizer() {
                    let (order, holds) = pair.form.order_condition(cand)?;
                    order_checks.push(OrderCheck {
                        candidate: cand.provenance.clone(),
                        order,
                        holds,
                    });
                }
                candidates.push(CandidateOutcome {
                    tag: pair.tag,
                    provenance: cand.provenance.clone(),
                    verdict,
                });
            }
        }
        Ok(TwistSpinReport {
            knot: self.knot.name().unwrap_or("unnamed").to_string(),
            k: self.k,
            eps: self.eps,
            candidates,
            consistency,
            order_checks,
        })
    }
}

/// `t^n · P`, modeling the base-point/path change ambiguity; the span over
/// `Q[t^±1]` (and hence every verdict) is unchanged.
pub fn scale_metabolizer(candidate: &MetabolizerCandidate, n: i64) -> MetabolizerCandidate {
    let provenance = format!("{} scaled by t^{n}", candidate.provenance);
    candidate.scaled(n, provenance)
}

/// Candidate generated by `{t^a e_i ⊕ -t^b e_i}` on a block form of rank
/// `2g`.
fn twisted_graph(
    form: &BlanchfieldForm,
    a: i64,
    b: i64,
    provenance: impl Into<String>,
) -> Result<MetabolizerCandidate, BlanchfieldError> {
    let g2 = form.rank();
    debug_assert!(g2.is_multiple_of(2), "block form has even rank");
    let g = g2 / 2;
    let ta = LaurentPolynomial::monomial(a, crate::laurent::rat(1));
    let tb = LaurentPolynomial::monomial(b, crate::laurent::rat(-1));
    let cols: Vec<Vec<LaurentPolynomial>> = (0..g)
        .map(|i| {
            let mut v = vec![LaurentPolynomial::zero(); g2];
            v[i] = ta.clone();
            v[g + i] = tb.clone();
            v
        })
        .collect();
    MetabolizerCandidate::new(form, cols, provenance)
}

/// Apply the isometry `(a, b) ↦ (a, t^n b)` of a block form to a
/// candidate's generators.
pub fn apply_second_block_twist(
    form: &BlanchfieldForm,
    candidate: &MetabolizerCandidate,
    n: i64,
) -> Result<MetabolizerCandidate, BlanchfieldError> {
    let g2 = form.rank();
    let g = g2 / 2;
    let unit = LaurentPolynomial::monomial(n, crate::laurent::rat(1));
    let gens = candidate.submodule.generators();
    let mapped = PolyMatrix::from_fn(gens.rows(), gens.cols(), |i, j| {
        if i < g {
            gens.at(i, j).clone()
        } else {
            gens.at(i, j) * &unit
        }
    });
    let cols = (0..mapped.cols()).map(|j| mapped.col_vec(j)).collect();
    MetabolizerCandidate::new(
        form,
        cols,
        format!("{} twisted by t^{n} in the second block", candidate.provenance),
    )
}

/// One verified (or refuted) candidate in a report.
#[derive(Clone, Debug)]
pub struct CandidateOutcome {
    pub tag: StatementTag,
    pub provenance: String,
    pub verdict: MetabolizerVerdict,
}

/// Order-oracle record for a verified metabolizer.
#[derive(Clone, Debug)]
pub struct OrderCheck {
    pub candidate: String,
    pub order: LaurentPolynomial,
    pub holds: bool,
}

/// Full outcome of a twist-spin verification run.
#[derive(Clone, Debug)]
pub struct TwistSpinReport {
    pub knot: String,
    pub k: i64,
    pub eps: Option<i64>,
    pub candidates: Vec<CandidateOutcome>,
    pub consistency: Option<bool>,
    pub order_checks: Vec<OrderCheck>,
}

impl TwistSpinReport {
    /// Every candidate verifies, consistency (when applicable) holds, and
    /// all order oracles pass.
    pub fn all_pass(&self) -> bool {
        self.candidates.iter().all(|c| c.verdict.is_metabolizer())
            && self.consistency != Some(false)
            && self.order_checks.iter().all(|c| c.holds)
    }
}

impl Serialize for CandidateOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CandidateOutcome", 4)?;
        s.serialize_field("tag", &self.tag)?;
        s.serialize_field("provenance", &self.provenance)?;
        s.serialize_field("verdict", self.verdict.label())?;
        match self.verdict.witness_json() {
            Some(w) => s.serialize_field("witness", &w)?,
            None => s.skip_field("witness")?,
        }
        s.end()
    }
}

impl Serialize for OrderCheck {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OrderCheck", 3)?;
        s.serialize_field("candidate", &self.candidate)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("holds", &self.holds)?;
        s.end()
    }
}

impl Serialize for TwistSpinReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TwistSpinReport", 6)?;
        s.serialize_field("knot", &self.knot)?;
        s.serialize_field("k", &self.k)?;
        match self.eps {
            Some(e) => s.serialize_field("eps", &e)?,
            None => s.skip_field("eps")?,
        }
        s.serialize_field("candidates", &self.candidates)?;
        match self.consistency {
            Some(c) => s.serialize_field("consistency", &c)?,
            None => s.skip_field("consistency")?,
        }
        s.serialize_field("order_checks", &self.order_checks)?;
        s.end()
    }
}
