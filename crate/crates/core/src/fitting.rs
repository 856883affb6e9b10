//! Linear least-squares fitting and polynomial algebra.
//!
//! Both fits in the toolkit (hyperelastic constants against tensile data,
//! the axial-stiffness polynomial against force-displacement data) are
//! linear in their parameters, so they share one solver: Householder QR on
//! a column-equilibrated design matrix. Normal equations are deliberately
//! avoided; the hyperelastic basis functions are strongly correlated at
//! small strains and squaring the condition number there loses digits.

use crate::error::{Error, Result};
use crate::material::{strain_invariants, HyperelasticParams, ModelFamily, UniaxialSample};
use nalgebra::{DMatrix, DVector};

/// A polynomial with coefficients stored lowest degree first, so
/// `coefficients()[k]` multiplies `y^k`. For the axial-stiffness use the
/// abscissa is displacement in mm and the value is force in N.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Wrap a coefficient vector (lowest degree first). Trailing zeros are
    /// kept: the degree is defined by the storage length.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("polynomial needs at least one coefficient".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!(
                "polynomial coefficients must be finite, got {bad}"
            )));
        }
        Ok(Self { coeffs })
    }

    /// Cubic `a y³ + b y² + c y + d` written in the conventional
    /// highest-first order.
    pub fn cubic(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(vec![d, c, b, a]).expect("finite cubic coefficients")
    }

    /// Coefficients, lowest degree first.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn evaluate(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
    }

    /// Power-rule derivative. The derivative of a constant is the zero
    /// polynomial (a single zero coefficient).
    pub fn differentiate(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { coeffs: vec![0.0] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Self { coeffs }
    }
}

/// Goodness-of-fit summary for a least-squares solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    /// Euclidean norm of the residual vector, in target units.
    pub residual_norm: f64,
    /// Coefficient of determination, ≤ 1.
    pub r_squared: f64,
    /// Ratio of the largest to smallest diagonal of R in the QR of the
    /// column-equilibrated design matrix; a cheap conditioning estimate.
    pub condition_estimate: f64,
    pub n_samples: usize,
}

/// Relative threshold on the equilibrated R diagonal below which the
/// design matrix is declared rank deficient.
const RANK_TOLERANCE: f64 = 1e-12;

/// Solve `min ‖design · x - rhs‖₂` by Householder QR after scaling each
/// column to unit norm. Returns the solution and the condition estimate.
fn solve_least_squares(design: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let (rows, cols) = design.shape();
    debug_assert!(rows >= cols && cols > 0);

    let mut scales = Vec::with_capacity(cols);
    for j in 0..cols {
        let norm = design.column(j).norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::SingularFit(format!(
                "design matrix column {j} is identically zero"
            )));
        }
        scales.push(norm);
    }
    let mut scaled = design.clone();
    for (j, &s) in scales.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / s);
    }

    let qr = scaled.qr();
    let r = qr.r();
    let mut max_diag = 0.0f64;
    let mut min_diag = f64::INFINITY;
    for j in 0..cols {
        let d = r[(j, j)].abs();
        max_diag = max_diag.max(d);
        min_diag = min_diag.min(d);
    }
    if !min_diag.is_finite() || min_diag <= max_diag * RANK_TOLERANCE {
        return Err(Error::SingularFit(format!(
            "rank-deficient design matrix (diagonal ratio {:.3e})",
            min_diag / max_diag
        )));
    }

    let qtb = qr.q().transpose() * rhs;
    // back-substitute R z = Qᵀ b, then undo the column scaling
    let mut z = DVector::zeros(cols);
    for i in (0..cols).rev() {
        let mut s = qtb[i];
        for j in i + 1..cols {
            s -= r[(i, j)] * z[j];
        }
        z[i] = s / r[(i, i)];
    }
    for (j, &s) in scales.iter().enumerate() {
        z[j] /= s;
    }
    Ok((z, max_diag / min_diag))
}

fn fit_report(
    design: &DMatrix<f64>,
    solution: &DVector<f64>,
    rhs: &DVector<f64>,
    condition_estimate: f64,
) -> FitReport {
    let residual = rhs - design * solution;
    let residual_norm = residual.norm();
    let mean = rhs.mean();
    let ss_tot: f64 = rhs.iter().map(|v| (v - mean) * (v - mean)).sum();
    let ss_res = residual_norm * residual_norm;
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res <= rhs.len() as f64 * 1e-20 {
        // constant targets reproduced (numerically) exactly
        1.0
    } else {
        0.0
    };
    FitReport {
        residual_norm,
        r_squared,
        condition_estimate,
        n_samples: rhs.len(),
    }
}

/// Per-constant nominal-stress basis functions of a family at one stretch:
/// the stress contributed by a unit value of each constant. Stacking these
/// rows gives the least-squares design matrix.
fn stress_basis(family: ModelFamily, stretch: f64) -> Result<Vec<f64>> {
    let (i1, i2) = strain_invariants(stretch)?;
    let (e1, e2) = (i1 - 3.0, i2 - 3.0);
    let pre = 2.0 * (stretch - 1.0 / (stretch * stretch));
    let li = 1.0 / stretch;
    Ok(match family {
        ModelFamily::NeoHookean => vec![pre],
        ModelFamily::MooneyRivlin2 => vec![pre, pre * li],
        ModelFamily::MooneyRivlin3 => vec![pre, pre * li, pre * (e2 + e1 * li)],
        ModelFamily::MooneyRivlin5 => vec![
            pre,
            pre * li,
            pre * 2.0 * e1,
            pre * (e2 + e1 * li),
            pre * 2.0 * e2 * li,
        ],
        ModelFamily::Yeoh3 => vec![pre, pre * 2.0 * e1, pre * 3.0 * e1 * e1],
    })
}

/// Fit the constants of a hyperelastic family to uniaxial tensile samples
/// by ordinary linear least squares on the nominal-stress residuals.
///
/// Needs at least `arity + 1` samples; a design matrix without full column
/// rank (for example every sample at the undeformed state) is a
/// [`Error::SingularFit`].
pub fn fit_hyperelastic(
    samples: &[UniaxialSample],
    family: ModelFamily,
) -> Result<(HyperelasticParams, FitReport)> {
    let arity = family.arity();
    if samples.len() < arity + 1 {
        return Err(Error::Usage(format!(
            "fitting {family} needs at least {} samples, got {}",
            arity + 1,
            samples.len()
        )));
    }
    let mut design = DMatrix::zeros(samples.len(), arity);
    let mut rhs = DVector::zeros(samples.len());
    for (i, sample) in samples.iter().enumerate() {
        let row = stress_basis(family, sample.stretch)?;
        for (j, v) in row.into_iter().enumerate() {
            design[(i, j)] = v;
        }
        if !sample.stress.is_finite() {
            return Err(Error::Domain(format!(
                "sample {i} has non-finite stress {}",
                sample.stress
            )));
        }
        rhs[i] = sample.stress;
    }
    let (solution, cond) = solve_least_squares(&design, &rhs)?;
    let report = fit_report(&design, &solution, &rhs, cond);
    let params = HyperelasticParams::new(family, solution.iter().copied().collect())?;
    Ok((params, report))
}

/// r² differences below this window count as a tie in [`rank_models`], in
/// which case the family with fewer constants wins.
pub const RANKING_TIE_WINDOW: f64 = 1e-3;

/// Fit every family and rank them by descending r², breaking near-ties
/// (within [`RANKING_TIE_WINDOW`]) in favor of fewer parameters.
pub fn rank_models(
    samples: &[UniaxialSample],
    families: &[ModelFamily],
) -> Result<Vec<(ModelFamily, FitReport)>> {
    if families.is_empty() {
        return Err(Error::Usage("rank_models needs at least one family".into()));
    }
    let mut ranked = Vec::with_capacity(families.len());
    for &family in families {
        let (_, report) = fit_hyperelastic(samples, family)?;
        ranked.push((family, report));
    }
    // quantize r² so that statistically indistinguishable fits compare
    // equal and parsimony decides
    let bucket = |r2: f64| (r2 / RANKING_TIE_WINDOW).floor();
    ranked.sort_by(|a, b| {
        bucket(b.1.r_squared)
            .partial_cmp(&bucket(a.1.r_squared))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.arity().cmp(&b.0.arity()))
    });
    Ok(ranked)
}

/// Least-squares polynomial fit of `(y, F)` samples at the given degree.
///
/// With exactly `degree + 1` samples at distinct abscissae this is exact
/// interpolation; repeated abscissae that defeat column rank are a
/// [`Error::SingularFit`].
pub fn fit_polynomial(samples: &[(f64, f64)], degree: usize) -> Result<(Polynomial, FitReport)> {
    let n_coeffs = degree + 1;
    if samples.len() < n_coeffs {
        return Err(Error::Usage(format!(
            "degree-{degree} fit needs at least {n_coeffs} samples, got {}",
            samples.len()
        )));
    }
    if let Some((y, f)) = samples.iter().find(|(y, f)| !y.is_finite() || !f.is_finite()) {
        return Err(Error::Domain(format!(
            "samples must be finite, got ({y}, {f})"
        )));
    }
    let mut design = DMatrix::zeros(samples.len(), n_coeffs);
    let mut rhs = DVector::zeros(samples.len());
    for (i, &(y, f)) in samples.iter().enumerate() {
        let mut power = 1.0;
        for j in 0..n_coeffs {
            design[(i, j)] = power;
            power *= y;
        }
        rhs[i] = f;
    }
    let (solution, cond) = solve_least_squares(&design, &rhs)?;
    let report = fit_report(&design, &solution, &rhs, cond);
    let poly = Polynomial::new(solution.iter().copied().collect())?;
    Ok((poly, report))
}
