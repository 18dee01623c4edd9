//! The `CP^1 × CP^1` family `J_{α,β}`: pure spinors, the map `f`, the
//! quadric picture (`n = 1`), bi-Hermitian structures and type stratification.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::courant::PolyForm;
use crate::double_space::{
    bfield_transform, gacs_from_spinor, make_jomega, rat, Form, GeneralizedEndomorphism,
};
use crate::error::{GctkError, Result};
use crate::hyperkahler::{HyperkahlerModel, RotationParam};
use crate::linalg::{ComplexMatrix, RatMatrix};
use crate::scalars::{ExactComplex, ParamPolynomial, Variables};

/// `(α, β) ∈ CP^1 × CP^1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyPoint {
    pub alpha: RotationParam,
    pub beta: RotationParam,
}

impl FamilyPoint {
    pub fn new(alpha: impl Into<RotationParam>, beta: impl Into<RotationParam>) -> Self {
        FamilyPoint {
            alpha: alpha.into(),
            beta: beta.into(),
        }
    }

    pub fn finite(alpha: ExactComplex, beta: ExactComplex) -> Self {
        Self::new(alpha, beta)
    }

    pub fn is_diagonal(&self) -> bool {
        self.alpha == self.beta
    }

    /// `(−1/ᾱ, −1/β̄)`.
    pub fn antipode(&self) -> Self {
        FamilyPoint {
            alpha: self.alpha.antipode(),
            beta: self.beta.antipode(),
        }
    }
}

/// `(η, ζ)`, standing for `ζ(1+|η|²) ∂/∂η`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistorFiberPoint {
    pub eta: ExactComplex,
    pub zeta: ExactComplex,
}

fn factorial(k: u32) -> ExactComplex {
    ExactComplex::from_int((1..=k as i64).product())
}

fn inv_factorial(k: u32) -> ExactComplex {
    factorial(k).inv().expect("nonzero")
}

/// `Σ_j (c)^{n-j} Y^j / j!` for `j = 0..=2n`; `c = 0` gives `Y^n / n!`.
fn cleared_exponential(n: u32, c: &ExactComplex, y: &Form) -> Result<Form> {
    if c.is_zero() {
        return Ok(y.wedge_pow(n)?.scale(&inv_factorial(n)));
    }
    let cinv = c.inv()?;
    let mut total = Form::zero(y.dim())?;
    let mut power = Form::one(y.dim())?;
    for j in 0..=2 * n {
        let coeff = if j <= n {
            c.pow(n - j)
        } else {
            cinv.pow(j - n)
        };
        total = total.add(&power.scale(&(&coeff * &inv_factorial(j))))?;
        power = power.wedge(y)?;
    }
    Ok(total)
}

/// `Φ_ζ = (2iζ)^n exp((σ + ζ²σ̄)/(2iζ))`; at `ζ = 0` the limit `σ^n/n!`.
pub fn phi_zeta(m: &HyperkahlerModel, zeta: &ExactComplex) -> Result<Form> {
    let y = m.sigma.add(&m.sigma_bar.scale(&(zeta * zeta)))?;
    let c = &ExactComplex::from_parts(0, 1, 2, 1) * zeta;
    cleared_exponential(m.n as u32, &c, &y)
}

/// `Φ_{η,ζ}`: `Φ_ζ` with `σ` replaced by `σ'_η`.
pub fn phi_eta_zeta(m: &HyperkahlerModel, p: &TwistorFiberPoint) -> Result<Form> {
    let s = m.sigma_eta_prime(&RotationParam::Finite(p.eta.clone()))?;
    let y = s.add(&s.conj().scale(&(&p.zeta * &p.zeta)))?;
    let c = &ExactComplex::from_parts(0, 1, 2, 1) * &p.zeta;
    cleared_exponential(m.n as u32, &c, &y)
}

fn quotient(num: ExactComplex, den: ExactComplex) -> RotationParam {
    if den.is_zero() {
        RotationParam::Infinity
    } else {
        RotationParam::Finite(num.checked_div(&den).expect("nonzero"))
    }
}

/// `f(η,ζ) = ((ζ+η)/(1−η̄ζ), (η−ζ)/(1+η̄ζ))`.
pub fn f_map(p: &TwistorFiberPoint) -> FamilyPoint {
    let one = ExactComplex::from_int(1);
    let ez = &p.eta.conj() * &p.zeta;
    FamilyPoint {
        alpha: quotient(&p.zeta + &p.eta, &one - &ez),
        beta: quotient(&p.eta - &p.zeta, &one + &ez),
    }
}

/// `[[1, η], [−η̄, 1]]`, the PSU(2) element without its normalizing factor.
pub fn psu2_matrix(eta: &ExactComplex) -> ComplexMatrix {
    let one = ExactComplex::from_int(1);
    ComplexMatrix::from_rows(vec![vec![one.clone(), eta.clone()], vec![-eta.conj(), one]])
        .expect("2x2")
}

/// Möbius action `p ↦ (a p + b)/(c p + d)` on `CP^1`.
pub fn mobius(a: &ComplexMatrix, p: &RotationParam) -> RotationParam {
    let (num, den) = match p {
        RotationParam::Finite(z) => (
            &(&a[(0, 0)] * z) + &a[(0, 1)],
            &(&a[(1, 0)] * z) + &a[(1, 1)],
        ),
        RotationParam::Infinity => (a[(0, 0)].clone(), a[(1, 0)].clone()),
    };
    quotient(num, den)
}

fn homogeneous(p: &RotationParam) -> (ExactComplex, ExactComplex) {
    match p {
        RotationParam::Finite(z) => (z.clone(), ExactComplex::from_int(1)),
        RotationParam::Infinity => (ExactComplex::from_int(1), ExactComplex::default()),
    }
}

/// `Φ_{α,β} = Σ_j (1/j!) (i(α−β))^{n−j} (σ − (α+β)ω_I − αβσ̄)^j`.
///
/// Evaluated in homogeneous coordinates, so the result is exactly `Φ_{α,β}`
/// at finite points and a representative of the spinor line at infinity.
pub fn phi_alpha_beta(m: &HyperkahlerModel, p: &FamilyPoint) -> Result<Form> {
    let (a0, a1) = homogeneous(&p.alpha);
    let (b0, b1) = homogeneous(&p.beta);
    let x = m
        .sigma
        .scale(&(&a1 * &b1))
        .sub(&m.omega_i.scale(&(&(&a0 * &b1) + &(&a1 * &b0))))?
        .sub(&m.sigma_bar.scale(&(&a0 * &b0)))?;
    let d = &(&a0 * &b1) - &(&a1 * &b0);
    cleared_exponential(m.n as u32, &(&ExactComplex::i() * &d), &x)
}

/// Indices of the real parameter variables `α = a1 + i a2`, `β = b1 + i b2`
/// (or `β̃ = t1 + i t2`), placed right after the model coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamVars {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
}

impl ParamVars {
    pub fn after(dim: usize) -> Self {
        ParamVars {
            a1: dim,
            a2: dim + 1,
            b1: dim + 2,
            b2: dim + 3,
        }
    }

    pub fn alpha(&self) -> ParamPolynomial {
        ParamPolynomial::complex_var(self.a1, self.a2)
    }

    pub fn beta(&self) -> ParamPolynomial {
        ParamPolynomial::complex_var(self.b1, self.b2)
    }

    /// Names `x0..x{dim-1}, a1, a2, b1, b2` (or `t1, t2` for the `β̃` chart).
    pub fn variables(&self, tilde: bool) -> Variables {
        let mut names: Vec<String> = (0..self.a1).map(|k| format!("x{k}")).collect();
        names.extend(["a1", "a2"].map(String::from));
        names.extend(if tilde { ["t1", "t2"] } else { ["b1", "b2"] }.map(String::from));
        Variables::new(names).expect("within bounds")
    }
}

/// Polynomial-coefficient versions of `ω_I`, `σ`, `σ̄`.
#[derive(Clone, Debug)]
pub struct SymbolicTriple {
    pub n: usize,
    pub omega_i: PolyForm,
    pub sigma: PolyForm,
    pub sigma_bar: PolyForm,
    /// Common scalar factor `f` of all three forms, kept apart so that the
    /// pole cancellation runs on the unscaled `X` and `(fX)^j = f^j X^j`.
    pub factor: Option<ParamPolynomial>,
}

impl SymbolicTriple {
    pub fn from_model(m: &HyperkahlerModel) -> Self {
        SymbolicTriple {
            n: m.n,
            omega_i: m.omega_i.to_polynomial(),
            sigma: m.sigma.to_polynomial(),
            sigma_bar: m.sigma_bar.to_polynomial(),
            factor: None,
        }
    }

    /// Every form multiplied by the function `f`.
    pub fn rescaled(&self, f: &ParamPolynomial) -> Self {
        let factor = match &self.factor {
            Some(g) => g * f,
            None => f.clone(),
        };
        SymbolicTriple {
            factor: Some(factor),
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.omega_i.dim()
    }
}

/// The terms `(1/j!) i^{n−j} (α−β)^{n−j} X^j`, `j = 0..=2n`, with every pole
/// cancelled by exact division. Fails with `NonCancellingPole` otherwise.
pub fn phi_alpha_beta_terms(t: &SymbolicTriple, vars: &ParamVars) -> Result<Vec<PolyForm>> {
    let n = t.n as u32;
    let (alpha, beta) = (vars.alpha(), vars.beta());
    let x = t
        .sigma
        .sub(&t.omega_i.scale(&(&alpha + &beta)))?
        .sub(&t.sigma_bar.scale(&(&alpha * &beta)))?;
    let diff = &alpha - &beta;
    let i = ExactComplex::i();
    let mut terms = Vec::with_capacity(2 * n as usize + 1);
    let mut power = PolyForm::one(t.dim())?;
    for j in 0..=2 * n {
        let base = power.scale_exact(&inv_factorial(j));
        let term = if j <= n {
            let c = diff.scale(&i).pow(n - j);
            base.scale(&c)
        } else {
            let k = j - n;
            let den = diff.pow(k);
            let ik = i.pow(k).inv()?;
            base.try_map(|p| {
                p.divide_exact(&den)
                    .map(|q| q.scale(&ik))
                    .map_err(|_| GctkError::NonCancellingPole { term: j as usize })
            })?
        };
        let term = match &t.factor {
            Some(f) => term.scale(&f.pow(j)),
            None => term,
        };
        terms.push(term);
        if j < 2 * n {
            power = power.wedge(&x)?;
        }
    }
    Ok(terms)
}

fn sum_forms(terms: &[PolyForm]) -> Result<PolyForm> {
    let dim = terms.first().map_or(4, PolyForm::dim);
    terms
        .iter()
        .try_fold(PolyForm::zero(dim)?, |acc, t| acc.add(t))
}

/// Symbolic `Φ_{α,β}` over the model coordinates, with parameter variables
/// from [`ParamVars::after`].
pub fn phi_alpha_beta_symbolic(m: &HyperkahlerModel) -> Result<PolyForm> {
    let t = SymbolicTriple::from_model(m);
    sum_forms(&phi_alpha_beta_terms(&t, &ParamVars::after(m.dim))?)
}

pub fn phi_alpha_beta_symbolic_from(t: &SymbolicTriple, vars: &ParamVars) -> Result<PolyForm> {
    sum_forms(&phi_alpha_beta_terms(t, vars)?)
}

/// `β ↦ −conj(β̃)` on a symbolic form: `b1 ↦ −t1`, `b2 ↦ t2`.
pub fn to_tilde_chart(phi: &PolyForm, vars: &ParamVars) -> PolyForm {
    let minus_t1 = -&ParamPolynomial::var(vars.b1);
    phi.map(|p| p.substitute(vars.b1, &minus_t1))
}

/// Symbolic `Φ'_{α,β̃} = Φ_{α, −conj(β̃)}`.
pub fn phi_prime_symbolic(m: &HyperkahlerModel) -> Result<PolyForm> {
    let vars = ParamVars::after(m.dim);
    Ok(to_tilde_chart(&phi_alpha_beta_symbolic(m)?, &vars))
}

/// `Φ'_{α,β̃}`, a pure spinor for `J'_{α,β}` with `β̃ = 1/β`.
pub fn phi_prime(
    m: &HyperkahlerModel,
    alpha: &RotationParam,
    beta_tilde: &RotationParam,
) -> Result<Form> {
    let beta = match beta_tilde {
        RotationParam::Finite(t) => RotationParam::Finite(-t.conj()),
        RotationParam::Infinity => RotationParam::Infinity,
    };
    phi_alpha_beta(m, &FamilyPoint::new(alpha.clone(), beta))
}

/// `X ω_I + Y ω_J + Z ω_K + U (1 − vol)` on `R^4`.
pub fn quadric_spinor(
    m: &HyperkahlerModel,
    x: &ExactComplex,
    y: &ExactComplex,
    z: &ExactComplex,
    u: &ExactComplex,
) -> Result<Form> {
    if m.n != 1 {
        return Err(GctkError::Precondition(
            "quadric spinors exist for n = 1 only".into(),
        ));
    }
    let one_minus_vol = Form::one(4)?.sub(&m.vol)?;
    m.combine_forms(x, y, z).add(&one_minus_vol.scale(u))
}

/// [`quadric_spinor`] with `X, Y, Z, U` as the variables `x4..x7`.
pub fn quadric_spinor_symbolic(m: &HyperkahlerModel) -> Result<PolyForm> {
    if m.n != 1 {
        return Err(GctkError::Precondition(
            "quadric spinors exist for n = 1 only".into(),
        ));
    }
    let one_minus_vol = Form::one(4)?.sub(&m.vol)?;
    let parts = [&m.omega_i, &m.omega_j, &m.omega_k, &one_minus_vol];
    parts
        .iter()
        .enumerate()
        .try_fold(PolyForm::zero(4)?, |acc, (k, f)| {
            acc.add(&f.to_polynomial().scale(&ParamPolynomial::var(4 + k)))
        })
}

/// Quadric coordinates `(−(α+β), 1−αβ, i(1+αβ), i(α−β))` of `Φ_{α,β}`.
pub fn quadric_coordinates(alpha: &ExactComplex, beta: &ExactComplex) -> [ExactComplex; 4] {
    let one = ExactComplex::from_int(1);
    let i = ExactComplex::i();
    let ab = alpha * beta;
    [
        -&(alpha + beta),
        &one - &ab,
        &i * &(&one + &ab),
        &i * &(alpha - beta),
    ]
}

/// Interior-product map of the Hermitian form `ω(X,Y) = g(X, I Y)`, i.e. `−I`.
pub fn hermitian_form_map(i: &RatMatrix) -> RatMatrix {
    i.neg()
}

/// The generalized almost Kähler pair of a bi-Hermitian structure
/// `(g = 1, I₊, I₋)`.
pub fn bi_hermitian_pair(
    i_plus: &RatMatrix,
    i_minus: &RatMatrix,
) -> Result<(GeneralizedEndomorphism, GeneralizedEndomorphism)> {
    let d = i_plus.rows();
    let id = RatMatrix::identity(d);
    for i in [i_plus, i_minus] {
        if i.mul(i)? != id.neg() {
            return Err(GctkError::Precondition("I² ≠ -1".into()));
        }
        if i.transpose().mul(i)? != id {
            return Err(GctkError::Precondition("I is not orthogonal for g".into()));
        }
    }
    let (wp, wm) = (hermitian_form_map(i_plus), hermitian_form_map(i_minus));
    let (wp_inv, wm_inv) = (wp.inverse()?, wm.inverse()?);
    let half = BigRational::new(1.into(), 2.into());
    let build = |sign: &BigRational| -> Result<GeneralizedEndomorphism> {
        let a = i_plus.add(&i_minus.scale(sign))?.neg();
        let p = wp_inv.sub(&wm_inv.scale(sign))?.neg();
        let q = wp.sub(&wm.scale(sign))?;
        let dd = i_plus.transpose().add(&i_minus.transpose().scale(sign))?;
        Ok(GeneralizedEndomorphism::from_blocks(&a, &p, &q, &dd)?.scale(&half))
    };
    Ok((build(&BigRational::one())?, build(&-BigRational::one())?))
}

/// `(J_{α,β}, J'_{α,β})` from the bi-Hermitian structure `(I_α, I_β)`.
pub fn family_structures(
    m: &HyperkahlerModel,
    p: &FamilyPoint,
) -> Result<(GeneralizedEndomorphism, GeneralizedEndomorphism)> {
    bi_hermitian_pair(&m.i_eta(&p.alpha), &m.i_eta(&p.beta))
}

/// `Jᵀ ⟨,⟩ J'`, the symmetric form `⟨J·, J'·⟩`.
pub fn kahler_metric(
    j: &GeneralizedEndomorphism,
    jp: &GeneralizedEndomorphism,
) -> Result<RatMatrix> {
    let g = crate::double_space::gram(j.dim());
    j.matrix().transpose().mul(&g)?.mul(jp.matrix())
}

/// Off the diagonal `Φ_{α,β} ∝ exp(B + iω)`; returns `(B, ω)` with
/// `B + iω = −i X / (α − β)`.
pub fn symplectic_data(
    m: &HyperkahlerModel,
    alpha: &ExactComplex,
    beta: &ExactComplex,
) -> Result<(Form, Form)> {
    let diff = alpha - beta;
    if diff.is_zero() {
        return Err(GctkError::Precondition(
            "diagonal point has complex type".into(),
        ));
    }
    let x = m
        .sigma
        .sub(&m.omega_i.scale(&(alpha + beta)))?
        .sub(&m.sigma_bar.scale(&(alpha * beta)))?;
    let c = (-ExactComplex::i()).checked_div(&diff)?;
    let w = x.scale(&c);
    let b = w.map(|z| ExactComplex::real(z.re.clone()));
    let om = w.map(|z| ExactComplex::real(z.im.clone()));
    Ok((b, om))
}

/// `e^{−B} J_ω e^{B}` for the data of [`symplectic_data`].
pub fn symplectic_form_of(
    m: &HyperkahlerModel,
    alpha: &ExactComplex,
    beta: &ExactComplex,
) -> Result<GeneralizedEndomorphism> {
    let (b, om) = symplectic_data(m, alpha, beta)?;
    bfield_transform(&make_jomega(&om)?, &b)
}

/// `J_{α,β}` from its pure spinor.
pub fn gacs_of_point(m: &HyperkahlerModel, p: &FamilyPoint) -> Result<GeneralizedEndomorphism> {
    gacs_from_spinor(&phi_alpha_beta(m, p)?)
}

/// One row of the type table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeRow {
    pub alpha: ExactComplex,
    pub beta: ExactComplex,
    pub chart_a: u8,
    pub chart_b: u8,
    pub point: FamilyPoint,
    pub type_: usize,
}

/// Where type is measured: on the fibre `M` alone or on `𝒳 = M × CP¹ × CP¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeScope {
    Fiber,
    Total,
}

/// Grid coordinates `t + i(1 − t)`, `t = k/(grid−1)`.
pub fn grid_coordinates(grid: usize) -> Result<Vec<ExactComplex>> {
    if grid < 2 {
        return Err(GctkError::InvalidInput("grid must be at least 2".into()));
    }
    let g = grid as i64 - 1;
    Ok((0..=g)
        .map(|k| ExactComplex::from_parts(k, g, g - k, g))
        .collect())
}

/// `type(J_{α,β})` over `grid × grid` chart coordinates for each of the four
/// chart pairs. Rows are ordered by chart pair, then `α`, then `β`.
pub fn type_map(m: &HyperkahlerModel, grid: usize, scope: TypeScope) -> Result<Vec<TypeRow>> {
    let coords = grid_coordinates(grid)?;
    let mut jobs = Vec::new();
    for (ca, cb) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        for a in &coords {
            for b in &coords {
                jobs.push((ca, cb, a.clone(), b.clone()));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(ca, cb, a, b)| {
            let point = FamilyPoint::new(
                RotationParam::from_chart(ca, a.clone()),
                RotationParam::from_chart(cb, b.clone()),
            );
            let type_ = match scope {
                TypeScope::Fiber => family_structures(m, &point)?.0.type_of()?,
                TypeScope::Total => crate::twistor::point_structures(m, &point)?.0.type_of()?,
            };
            Ok(TypeRow {
                alpha: a,
                beta: b,
                chart_a: ca,
                chart_b: cb,
                point,
                type_,
            })
        })
        .collect()
}

/// `Φ_{−1/ᾱ,−1/β̄} = ((−1)^n / (ᾱ^n β̄^n)) conj(Φ_{α,β})` and
/// `σ_{−1/η̄} = −η̄^{−2} σ̄_η` for `η ∈ {α, β}`, at every sample.
pub fn real_structure_check(
    m: &HyperkahlerModel,
    samples: &[(ExactComplex, ExactComplex)],
) -> Result<bool> {
    let n = m.n as u32;
    for (a, b) in samples {
        if a.is_zero() || b.is_zero() {
            return Err(GctkError::Precondition(
                "real structure samples must be nonzero".into(),
            ));
        }
        let p = FamilyPoint::finite(a.clone(), b.clone());
        let lhs = phi_alpha_beta(m, &p.antipode())?;
        let sign = ExactComplex::from_int(if n.is_multiple_of(2) { 1 } else { -1 });
        let factor = sign.checked_div(&(&a.conj().pow(n) * &b.conj().pow(n)))?;
        let rhs = phi_alpha_beta(m, &p)?.conj().scale(&factor);
        if lhs != rhs {
            return Ok(false);
        }
        for eta in [a, b] {
            let e = RotationParam::Finite(eta.clone());
            let lhs = m.sigma_eta(&e.antipode())?;
            let c = -(eta.conj().pow(2).inv()?);
            let rhs = m.sigma_eta(&e)?.conj().scale(&c);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `u(A·p) = Rᵀ u(p)` where `u` is the stereographic image on `S²`,
/// `A = psu2_matrix(η)` and `R = so3_matrix(η)`.
pub fn psu2_matches_so3(eta: &ExactComplex, points: &[RotationParam]) -> bool {
    let a = psu2_matrix(eta);
    let rt = crate::hyperkahler::so3_matrix(eta).transpose();
    points.iter().all(|p| {
        let lhs = mobius(&a, p).sphere_point();
        let rhs = rt.mul_vec(&p.sphere_point()).expect("3-vector");
        lhs.as_slice() == rhs.as_slice()
    })
}

/// `(ω_η, Re σ'_η, Im σ'_η) = R (ω_I, ω_J, ω_K)`.
pub fn so3_form_identity(m: &HyperkahlerModel, eta: &ExactComplex) -> Result<bool> {
    let r = crate::hyperkahler::so3_matrix(eta);
    let e = RotationParam::Finite(eta.clone());
    let sp = m.sigma_eta_prime(&e)?;
    let lhs = [
        m.omega_eta(&e)?,
        sp.map(|z| ExactComplex::real(z.re.clone())),
        sp.map(|z| ExactComplex::real(z.im.clone())),
    ];
    for (row, want) in lhs.iter().enumerate() {
        let c = |k: usize| ExactComplex::real(r[(row, k)].clone());
        if m.combine_forms(&c(0), &c(1), &c(2)) != *want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rational point `cos θ, sin θ` of the unit circle from the slope `s`.
pub fn circle_point(s: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let den = &one + s * s;
    ((&one - s * s) / &den, rat(2) * s / &den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double_space::{annihilator, is_pure, make_ji, spinor_from_gacs};
    use crate::hyperkahler::build_model;
    use crate::scalars::rational;

    fn c(re: i64, im: i64) -> ExactComplex {
        ExactComplex::from_parts(re, 1, im, 1)
    }

    fn q(a: i64, b: i64) -> ExactComplex {
        ExactComplex::from_ratio(a, b)
    }

    fn fin(z: ExactComplex) -> RotationParam {
        RotationParam::Finite(z)
    }

    #[test]
    fn phi_zeta_examples() {
        let m = build_model(1).unwrap();
        let zeta = ExactComplex::from_parts(2, 3, -1, 4);
        // σ + 2iζ(1 − ¼σσ̄) + ζ²σ̄
        let quarter = m.sigma.wedge(&m.sigma_bar).unwrap().scale(&q(1, 4));
        let want = m
            .sigma
            .add(
                &Form::one(4)
                    .unwrap()
                    .sub(&quarter)
                    .unwrap()
                    .scale(&(&c(0, 2) * &zeta)),
            )
            .unwrap()
            .add(&m.sigma_bar.scale(&(&zeta * &zeta)))
            .unwrap();
        assert_eq!(phi_zeta(&m, &zeta).unwrap(), want);
        assert_eq!(phi_zeta(&m, &c(0, 0)).unwrap(), m.sigma);
        let m2 = build_model(2).unwrap();
        let s2 = m2.sigma.wedge_pow(2).unwrap();
        assert!(phi_zeta(&m2, &c(0, 0)).unwrap().proportional(&s2).unwrap());

        // ζ = i s: exp(−cot θ ω_J − i csc θ ω_K), cos θ = (1−s²)/(1+s²)
        let s = rational(1, 2);
        let (cos, sin) = circle_point(&s);
        let cot = ExactComplex::real(&cos / &sin);
        let csc = ExactComplex::real(BigRational::one() / &sin);
        let e = m
            .omega_j
            .scale(&-cot.clone())
            .sub(&m.omega_k.scale(&(&ExactComplex::i() * &csc)))
            .unwrap()
            .exp_even()
            .unwrap();
        assert!(phi_zeta(&m, &ExactComplex::from_parts(0, 1, 1, 2))
            .unwrap()
            .proportional(&e)
            .unwrap());
        // ζ = t real: exp(cot θ ω_K − i csc θ ω_J)
        let e = m
            .omega_k
            .scale(&cot)
            .sub(&m.omega_j.scale(&(&ExactComplex::i() * &csc)))
            .unwrap()
            .exp_even()
            .unwrap();
        assert!(phi_zeta(&m, &q(1, 2)).unwrap().proportional(&e).unwrap());
    }

    #[test]
    fn f_map_examples() {
        let half = q(1, 2);
        let p = f_map(&TwistorFiberPoint {
            eta: c(0, 0),
            zeta: half.clone(),
        });
        assert_eq!(p, FamilyPoint::finite(half.clone(), -half.clone()));
        let eta = ExactComplex::from_parts(3, 4, -1, 3);
        let p = f_map(&TwistorFiberPoint {
            eta: eta.clone(),
            zeta: c(0, 0),
        });
        assert_eq!(p, FamilyPoint::finite(eta.clone(), eta.clone()));
        let p = f_map(&TwistorFiberPoint {
            eta: c(1, 0),
            zeta: c(1, 0),
        });
        assert_eq!(p, FamilyPoint::new(RotationParam::Infinity, c(0, 0)));
    }

    #[test]
    fn psu2_examples() {
        let eta = ExactComplex::from_parts(2, 5, 1, 3);
        assert_eq!(psu2_matrix(&c(0, 0)), ComplexMatrix::identity(2));
        assert_eq!(mobius(&psu2_matrix(&eta), &fin(c(0, 0))), fin(eta.clone()));
        let pts = [
            fin(c(0, 0)),
            fin(q(3, 2)),
            fin(ExactComplex::from_parts(-1, 2, 5, 7)),
            RotationParam::Infinity,
        ];
        assert!(psu2_matches_so3(&eta, &pts));
        // a wrong pairing (R instead of Rᵀ) is detected
        let a = psu2_matrix(&eta);
        let r = crate::hyperkahler::so3_matrix(&eta);
        let p = fin(q(3, 2));
        assert_ne!(
            mobius(&a, &p).sphere_point().to_vec(),
            r.mul_vec(&p.sphere_point()).unwrap()
        );
    }

    #[test]
    fn phi_eta_zeta_examples() {
        let m = build_model(1).unwrap();
        let zeta = ExactComplex::from_parts(1, 3, 2, 5);
        let p0 = TwistorFiberPoint {
            eta: c(0, 0),
            zeta: zeta.clone(),
        };
        assert_eq!(phi_eta_zeta(&m, &p0).unwrap(), phi_zeta(&m, &zeta).unwrap());
        let eta = ExactComplex::from_parts(-2, 3, 1, 2);
        let p = TwistorFiberPoint {
            eta: eta.clone(),
            zeta: c(0, 0),
        };
        let sp = m.sigma_eta_prime(&fin(eta.clone())).unwrap();
        assert!(phi_eta_zeta(&m, &p).unwrap().proportional(&sp).unwrap());
        let p = TwistorFiberPoint { eta, zeta };
        let a = phi_eta_zeta(&m, &p).unwrap();
        let b = phi_alpha_beta(&m, &f_map(&p)).unwrap();
        assert!(a.proportional(&b).unwrap());
    }

    #[test]
    fn phi_alpha_beta_examples() {
        let m = build_model(1).unwrap();
        let vars = ParamVars::after(4);
        let phi = phi_alpha_beta_symbolic(&m).unwrap();
        let (al, be) = (vars.alpha(), vars.beta());
        let i = ParamPolynomial::constant(ExactComplex::i());
        let one_minus_vol = Form::one(4).unwrap().sub(&m.vol).unwrap().to_polynomial();
        let want = m
            .sigma
            .to_polynomial()
            .sub(&m.omega_i.to_polynomial().scale(&(&al + &be)))
            .unwrap()
            .add(&one_minus_vol.scale(&(&i * &(&al - &be))))
            .unwrap()
            .sub(&m.sigma_bar.to_polynomial().scale(&(&al * &be)))
            .unwrap();
        assert_eq!(phi, want);
        let top = phi.grade_project(4);
        assert_eq!(top, m.vol.to_polynomial().scale(&-&(&i * &(&al - &be))));
        assert_eq!(
            phi_alpha_beta(&m, &FamilyPoint::finite(c(0, 0), c(0, 0))).unwrap(),
            m.sigma
        );

        // numeric agrees with symbolic
        let (a, b) = (
            ExactComplex::from_parts(1, 2, -2, 3),
            ExactComplex::from_parts(3, 1, 1, 4),
        );
        let vals = crate::twistor::patch_point(&m, &a, &b);
        let mut v = vals;
        v.truncate(8);
        assert_eq!(
            phi.eval(&v).unwrap(),
            phi_alpha_beta(&m, &FamilyPoint::finite(a, b)).unwrap()
        );

        // diagonal, n = 2
        let m2 = build_model(2).unwrap();
        let a = ExactComplex::from_parts(1, 2, 1, 3);
        let s = m2.sigma_eta(&fin(a.clone())).unwrap();
        let want = s.wedge_pow(2).unwrap().scale(&q(1, 2));
        assert_eq!(
            phi_alpha_beta(&m2, &FamilyPoint::finite(a.clone(), a)).unwrap(),
            want
        );
    }

    #[test]
    fn quadric_examples() {
        let m = build_model(1).unwrap();
        let (a, b) = (
            ExactComplex::from_parts(2, 3, -1, 2),
            ExactComplex::from_parts(-1, 5, 3, 1),
        );
        let [x, y, z, u] = quadric_coordinates(&a, &b);
        let s = quadric_spinor(&m, &x, &y, &z, &u).unwrap();
        assert_eq!(s, phi_alpha_beta(&m, &FamilyPoint::finite(a, b)).unwrap());
        let zero = c(0, 0);
        let s = quadric_spinor(&m, &zero, &c(1, 0), &c(0, 1), &zero).unwrap();
        assert_eq!(s, m.sigma);
        assert!(is_pure(&s).unwrap().pure);
        let s = quadric_spinor(&m, &c(1, 0), &zero, &zero, &zero).unwrap();
        assert_eq!(s.mukai_pair(&s).unwrap(), c(2, 0));
        assert!(!is_pure(&s).unwrap().pure);
        assert!(quadric_spinor(&build_model(2).unwrap(), &zero, &zero, &zero, &zero).is_err());
        let sym = quadric_spinor_symbolic(&m).unwrap();
        let vals = [
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero,
            x.clone(),
            y.clone(),
            z.clone(),
            u.clone(),
        ];
        assert_eq!(
            sym.eval(&vals).unwrap(),
            quadric_spinor(&m, &x, &y, &z, &u).unwrap()
        );
    }

    #[test]
    fn bi_hermitian_examples() {
        let m = build_model(1).unwrap();
        let (j, jp) = bi_hermitian_pair(&m.i, &m.i).unwrap();
        assert_eq!(j, make_ji(&m.i).unwrap());
        assert_eq!(jp, make_jomega(&m.omega_i.neg()).unwrap());
        // Kähler point: Φ' line at (0, β̃ = ∞) is exp(−iω_I)
        let e = m.omega_i.scale(&-ExactComplex::i()).exp_even().unwrap();
        assert_eq!(spinor_from_gacs(&jp).unwrap(), e);
        let pp = phi_prime(&m, &fin(c(0, 0)), &RotationParam::Infinity).unwrap();
        assert!(pp.proportional(&e).unwrap());
        let pp = phi_prime(&m, &fin(c(0, 0)), &fin(c(0, 0))).unwrap();
        assert_eq!(pp, m.sigma);

        let (a, b) = (
            ExactComplex::from_parts(1, 3, 2, 1),
            ExactComplex::from_parts(-3, 2, 1, 5),
        );
        let (ia, ib) = (m.i_eta(&fin(a.clone())), m.i_eta(&fin(b.clone())));
        let (j, jp) = bi_hermitian_pair(&ia, &ib).unwrap();
        assert!(j.is_gacs() && jp.is_gacs());
        assert!(j.commutator(&jp).unwrap().is_zero());
        let (js, jps) = bi_hermitian_pair(&ia, &ib.neg()).unwrap();
        assert_eq!((js, jps), (jp.clone(), j.clone()));
        let p = FamilyPoint::finite(a.clone(), b.clone());
        assert_eq!(gacs_of_point(&m, &p).unwrap(), j);
        assert_eq!(symplectic_form_of(&m, &a, &b).unwrap(), j);
        let bt = fin(b.inv().unwrap());
        assert_eq!(
            gacs_from_spinor(&phi_prime(&m, &fin(a), &bt).unwrap()).unwrap(),
            jp
        );
        // G = ⟨J·, J'·⟩ is the generalized metric
        assert_eq!(kahler_metric(&j, &jp).unwrap(), m.generalized_metric());
        assert!(bi_hermitian_pair(&m.i.scale(&rat(2)), &m.i).is_err());
    }

    #[test]
    fn type_map_examples() {
        let m = build_model(1).unwrap();
        let t = |a: RotationParam, b: RotationParam| {
            family_structures(&m, &FamilyPoint::new(a, b)).unwrap().0
        };
        assert_eq!(t(fin(c(0, 0)), fin(c(0, 0))).type_of().unwrap(), 2);
        assert_eq!(t(fin(c(0, 0)), fin(c(1, 0))).type_of().unwrap(), 0);
        let j = t(fin(c(0, 0)), RotationParam::Infinity);
        assert_eq!(j.type_of().unwrap(), 0);
        assert!(j.block_a().is_zero());
        let rows = type_map(&m, 3, TypeScope::Fiber).unwrap();
        assert_eq!(rows.len(), 36);
        for r in &rows {
            assert_eq!(r.type_, if r.point.is_diagonal() { 2 } else { 0 });
        }
        assert!(rows
            .iter()
            .any(|r| r.chart_a != r.chart_b && r.point.is_diagonal()));
        assert!(type_map(&m, 1, TypeScope::Fiber).is_err());
    }

    #[test]
    fn real_structure_examples() {
        let m = build_model(1).unwrap();
        assert!(real_structure_check(&m, &[(c(1, 0), c(1, 0)), (c(1, 0), c(0, 1))]).unwrap());
        let m2 = build_model(2).unwrap();
        assert!(
            real_structure_check(&m2, &[(q(2, 3), ExactComplex::from_parts(-1, 2, 1, 4))]).unwrap()
        );
        assert!(real_structure_check(&m, &[(c(0, 0), c(1, 0))]).is_err());
    }

    #[test]
    fn so3_identity() {
        let m = build_model(1).unwrap();
        for eta in [c(0, 0), c(0, 1), ExactComplex::from_parts(3, 7, -2, 5)] {
            assert!(so3_form_identity(&m, &eta).unwrap());
            let r = crate::hyperkahler::so3_matrix(&eta);
            assert_eq!(r.mul(&r.transpose()).unwrap(), RatMatrix::identity(3));
            assert_eq!(r.determinant().unwrap(), BigRational::one());
        }
    }

    #[test]
    fn annihilator_of_phi_is_dirac_of_bi_hermitian() {
        let m = build_model(1).unwrap();
        let p = FamilyPoint::finite(q(1, 2), c(0, 0));
        let (j, _) = family_structures(&m, &p).unwrap();
        let l = annihilator(&phi_alpha_beta(&m, &p).unwrap()).unwrap();
        assert!(l.same_span(&crate::double_space::dirac_of(&j).unwrap()));
    }
}
