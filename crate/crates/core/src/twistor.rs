//! The generalized twistor space `𝒳 = M × CP^1 × CP^1`: the spinors `Ψ`,
//! `Ψ'`, their closedness, and the pointwise structures `J`, `J'`.
//!
//! Coordinates on a patch of `𝒳` are `x^0..x^{4n-1}` followed by
//! `a1, a2` (`α = a1 + i a2`) and `b1, b2` (`β`), or `t1, t2` (`β̃ = 1/β`).

use crate::courant::{ext_d_all, PolyForm};
use crate::double_space::{make_ji, GeneralizedEndomorphism};
use crate::error::{GctkError, Result};
use crate::family::{
    family_structures, kahler_metric, phi_alpha_beta_symbolic_from, to_tilde_chart, FamilyPoint,
    ParamVars, SymbolicTriple,
};
use crate::hyperkahler::HyperkahlerModel;
use crate::linalg::{Inertia, RatMatrix};
use crate::scalars::{ExactComplex, ParamPolynomial};
use num_traits::Zero;

/// Deliberate corruptions used to show the closedness check is not vacuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Multiply `ω_I, ω_J, ω_K` by `1 + x^0`; the forms stay pointwise
    /// hyperkähler but are no longer closed.
    NonclosedOmega,
}

impl std::str::FromStr for Mutation {
    type Err = GctkError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonclosed-omega" => Ok(Mutation::NonclosedOmega),
            other => Err(GctkError::InvalidInput(format!(
                "unknown mutation `{other}`"
            ))),
        }
    }
}

fn triple(m: &HyperkahlerModel, mutation: Option<Mutation>) -> SymbolicTriple {
    let t = SymbolicTriple::from_model(m);
    match mutation {
        None => t,
        Some(Mutation::NonclosedOmega) => {
            t.rescaled(&(&ParamPolynomial::from_int(1) + &ParamPolynomial::var(0)))
        }
    }
}

/// `du + s·i dv` on the ambient space of dimension `dim`.
fn complex_differential(dim: usize, u: usize, v: usize, conjugate: bool) -> Result<PolyForm> {
    let i = if conjugate {
        -ExactComplex::i()
    } else {
        ExactComplex::i()
    };
    PolyForm::dx(dim, u)?.add(&PolyForm::dx(dim, v)?.scale_exact(&i))
}

/// `Ψ = Φ_{α,β} ∧ dα ∧ dβ`.
pub fn build_psi(m: &HyperkahlerModel) -> Result<PolyForm> {
    build_psi_with(m, None)
}

pub fn build_psi_with(m: &HyperkahlerModel, mutation: Option<Mutation>) -> Result<PolyForm> {
    let vars = ParamVars::after(m.dim);
    let total = m.dim + 4;
    let phi = phi_alpha_beta_symbolic_from(&triple(m, mutation), &vars)?.extend_dim(total)?;
    phi.wedge(&complex_differential(total, vars.a1, vars.a2, false)?)?
        .wedge(&complex_differential(total, vars.b1, vars.b2, false)?)
}

/// `Ψ' = Φ'_{α,β̃} ∧ dα ∧ dβ̃̄`.
pub fn build_psi_prime(m: &HyperkahlerModel) -> Result<PolyForm> {
    build_psi_prime_with(m, None)
}

pub fn build_psi_prime_with(m: &HyperkahlerModel, mutation: Option<Mutation>) -> Result<PolyForm> {
    let vars = ParamVars::after(m.dim);
    let total = m.dim + 4;
    let phi = phi_alpha_beta_symbolic_from(&triple(m, mutation), &vars)?;
    let phi = to_tilde_chart(&phi, &vars).extend_dim(total)?;
    phi.wedge(&complex_differential(total, vars.a1, vars.a2, false)?)?
        .wedge(&complex_differential(total, vars.b1, vars.b2, true)?)
}

/// `dΨ` over all `4n + 4` coordinates.
pub fn dpsi(m: &HyperkahlerModel, mutation: Option<Mutation>) -> Result<PolyForm> {
    ext_d_all(&build_psi_with(m, mutation)?)
}

pub fn dpsi_prime(m: &HyperkahlerModel, mutation: Option<Mutation>) -> Result<PolyForm> {
    ext_d_all(&build_psi_prime_with(m, mutation)?)
}

pub fn check_dpsi_zero(m: &HyperkahlerModel) -> Result<bool> {
    Ok(dpsi(m, None)?.is_zero())
}

pub fn check_dpsi_prime_zero(m: &HyperkahlerModel) -> Result<bool> {
    Ok(dpsi_prime(m, None)?.is_zero())
}

/// `σ_η^n ∧ dη` on `M × CP^1` with `η = a1 + i a2`.
pub fn twistor_line_spinor(m: &HyperkahlerModel) -> Result<PolyForm> {
    let d = m.dim;
    let total = d + 2;
    let eta = ParamPolynomial::complex_var(d, d + 1);
    let t = SymbolicTriple::from_model(m);
    let two_eta = eta.scale(&ExactComplex::from_int(2));
    let s = t
        .sigma
        .sub(&t.omega_i.scale(&two_eta))?
        .sub(&t.sigma_bar.scale(&(&eta * &eta)))?
        .extend_dim(total)?;
    s.wedge_pow(m.n as u32)?
        .wedge(&complex_differential(total, d, d + 1, false)?)
}

/// Standard complex structure on a `CP^1` chart: `∂_1 ↦ ∂_2 ↦ −∂_1`.
pub fn cp1_complex_structure() -> RatMatrix {
    let mut i = RatMatrix::zeros(2, 2);
    i[(1, 0)] = crate::double_space::rat(1);
    i[(0, 1)] = crate::double_space::rat(-1);
    i
}

/// `J = J_{α,β} × J_{I} × J_{I}` and `J' = J'_{α,β} × J_{I} × J_{−I}`.
pub fn point_structures(
    m: &HyperkahlerModel,
    p: &FamilyPoint,
) -> Result<(GeneralizedEndomorphism, GeneralizedEndomorphism)> {
    let (j, jp) = family_structures(m, p)?;
    let ic = cp1_complex_structure();
    let jc = make_ji(&ic)?;
    let jc_neg = make_ji(&ic.neg())?;
    Ok((
        GeneralizedEndomorphism::product(&[&j, &jc, &jc]),
        GeneralizedEndomorphism::product(&[&jp, &jc, &jc_neg]),
    ))
}

/// `G = ⟨J·, J'·⟩` on `E` of `𝒳`.
pub fn pseudo_kahler_metric(m: &HyperkahlerModel, p: &FamilyPoint) -> Result<RatMatrix> {
    let (j, jp) = point_structures(m, p)?;
    kahler_metric(&j, &jp)
}

/// Exact signature `(positive, negative)` of [`pseudo_kahler_metric`].
pub fn pseudo_kahler_signature(m: &HyperkahlerModel, p: &FamilyPoint) -> Result<(usize, usize)> {
    let g = pseudo_kahler_metric(m, p)?;
    let Inertia {
        positive,
        negative,
        zero,
    } = g.inertia()?;
    if zero != 0 {
        return Err(GctkError::Degenerate(format!(
            "G has a {zero}-dimensional kernel"
        )));
    }
    Ok((positive, negative))
}

/// Values of all `4n + 4` coordinates at `(α, β)` with `x = 0`. Only finite
/// points of the `(α, β)` chart are representable.
pub fn patch_point(
    m: &HyperkahlerModel,
    alpha: &ExactComplex,
    beta: &ExactComplex,
) -> Vec<ExactComplex> {
    let mut v = vec![ExactComplex::default(); m.dim];
    v.extend([
        ExactComplex::real(alpha.re.clone()),
        ExactComplex::real(alpha.im.clone()),
        ExactComplex::real(beta.re.clone()),
        ExactComplex::real(beta.im.clone()),
    ]);
    v
}

/// The antipodal involution on `(α, β)`.
pub fn real_involution(p: &FamilyPoint) -> FamilyPoint {
    FamilyPoint {
        alpha: p.alpha.antipode(),
        beta: p.beta.antipode(),
    }
}

/// Real Jacobian of `z ↦ −1/z̄` at `z ≠ 0`:
/// `[[x²−y², 2xy], [2xy, y²−x²]] / r⁴`.
fn antipodal_jacobian(z: &ExactComplex) -> Result<RatMatrix> {
    let r2 = z.norm_sqr();
    if r2.is_zero() {
        return Err(GctkError::Precondition(
            "antipodal map at the chart origin".into(),
        ));
    }
    let r4 = &r2 * &r2;
    let (x, y) = (&z.re, &z.im);
    let a = &(&(x * x) - &(y * y)) / &r4;
    let b = &(&(x * y) + &(x * y)) / &r4;
    RatMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, -a]])
}

/// Checks `τ_* J = −J` and `τ_* J' = −J'` at `p`, where `τ` acts by
/// identity on `M` and by `z ↦ −1/z̄` on both sphere factors.
pub fn involution_reverses(m: &HyperkahlerModel, p: &FamilyPoint) -> Result<bool> {
    let (Some(a), Some(b)) = (p.alpha.as_finite(), p.beta.as_finite()) else {
        return Err(GctkError::Precondition(
            "involution check needs finite chart points".into(),
        ));
    };
    let d = RatMatrix::direct_sum(&[
        &RatMatrix::identity(m.dim),
        &antipodal_jacobian(a)?,
        &antipodal_jacobian(b)?,
    ]);
    let d_inv_t = d.inverse()?.transpose();
    let push = RatMatrix::direct_sum(&[&d, &d_inv_t]);
    let pull = push.inverse()?;
    let (j, jp) = point_structures(m, p)?;
    let (tj, tjp) = point_structures(m, &real_involution(p))?;
    let conj = |x: &GeneralizedEndomorphism| push.mul(x.matrix()).and_then(|y| y.mul(&pull));
    Ok(conj(&j)? == tj.matrix().neg() && conj(&jp)? == tjp.matrix().neg())
}

/// Inertia of `G` restricted to `T ⊕ T*` of the `M` factor.
pub fn fiber_block_inertia(m: &HyperkahlerModel, p: &FamilyPoint) -> Result<Inertia> {
    let g = pseudo_kahler_metric(m, p)?;
    let d = m.dim;
    let total = d + 4;
    let idx: Vec<usize> = (0..d).chain(total..total + d).collect();
    RatMatrix::from_fn(2 * d, 2 * d, |r, c| g[(idx[r], idx[c])].clone()).inertia()
}

/// Type of `J` at `p`: `2n + 2` on the diagonal, `2` elsewhere.
pub fn expected_total_type(m: &HyperkahlerModel, p: &FamilyPoint) -> usize {
    if p.is_diagonal() {
        2 * m.n + 2
    } else {
        2
    }
}
