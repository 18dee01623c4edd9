//! Calculus on the flat model: `d` on polynomial-coefficient forms, the
//! Dorfman bracket and the spinor integrability criterion.
//!
//! Coordinates `x^0 .. x^{d-1}` are polynomial variables `0 .. d-1`.

use rand::Rng;

use crate::double_space::{is_pure, DiracBasis};
use crate::error::{GctkError, Result};
use crate::linalg::ComplexMatrix;
use crate::multivector::{EVector, Multivector};
use crate::scalars::{ExactComplex, ParamPolynomial};

pub type PolyForm = Multivector<ParamPolynomial>;
pub type PolySection = EVector<ParamPolynomial>;

/// `Σ_{v ∈ wrt} ∂_v a ∧ dx^v` (written `dx^v ∧ ∂_v a`).
pub fn ext_d(a: &PolyForm, wrt: &[usize]) -> Result<PolyForm> {
    let dim = a.dim();
    if let Some(&v) = wrt.iter().find(|&&v| v >= dim) {
        return Err(GctkError::UnknownVariable(v));
    }
    let mut out = PolyForm::zero(dim)?;
    for (mask, p) in a.terms() {
        for &v in wrt {
            if mask & (1 << v) != 0 {
                continue;
            }
            let dp = p.partial(v);
            if dp.is_zero() {
                continue;
            }
            let sign_odd = (mask & ((1u32 << v) - 1)).count_ones() % 2 == 1;
            out.add_term(mask | (1 << v), if sign_odd { -&dp } else { dp });
        }
    }
    Ok(out)
}

/// `d` with respect to every coordinate of the ambient space.
pub fn ext_d_all(a: &PolyForm) -> Result<PolyForm> {
    let all: Vec<usize> = (0..a.dim()).collect();
    ext_d(a, &all)
}

fn function_form(dim: usize, f: &ParamPolynomial) -> Result<PolyForm> {
    PolyForm::scalar(dim, f.clone())
}

fn one_form_components(f: &PolyForm) -> Vec<ParamPolynomial> {
    (0..f.dim()).map(|i| f.coefficient(1 << i)).collect()
}

/// Lie bracket of polynomial vector fields.
pub fn lie_bracket(x: &[ParamPolynomial], y: &[ParamPolynomial]) -> Vec<ParamPolynomial> {
    let d = x.len();
    (0..d)
        .map(|j| {
            let mut acc = ParamPolynomial::zero();
            for i in 0..d {
                if !x[i].is_zero() {
                    acc = &acc + &(&x[i] * &y[j].partial(i));
                }
                if !y[i].is_zero() {
                    acc = &acc - &(&y[i] * &x[j].partial(i));
                }
            }
            acc
        })
        .collect()
}

/// `[X+ξ, Y+η] = [X,Y] + ι_X dη + d(ι_X η) - ι_Y dξ`.
pub fn dorfman(e1: &PolySection, e2: &PolySection) -> Result<PolySection> {
    let dim = e1.dim();
    if e2.dim() != dim {
        return Err(GctkError::DimensionMismatch {
            expected: dim,
            found: e2.dim(),
        });
    }
    let xi = e1.cotangent_form();
    let eta = e2.cotangent_form();
    let lie_eta = ext_d_all(&eta)?
        .interior(&e1.tangent)?
        .add(&ext_d_all(&eta.interior(&e1.tangent)?)?)?;
    let cot = lie_eta.sub(&ext_d_all(&xi)?.interior(&e2.tangent)?)?;
    EVector::new(
        lie_bracket(&e1.tangent, &e2.tangent),
        one_form_components(&cot),
    )
}

/// `(e·d + d e·) Φ`.
fn d_commutator(e: &PolySection, phi: &PolyForm) -> Result<PolyForm> {
    ext_d_all(phi)?
        .clifford_act(e)?
        .add(&ext_d_all(&phi.clifford_act(e)?)?)
}

/// `[e1,e2]·Φ = [[d, e1], e2] Φ` for every test form.
pub fn derived_bracket_check(
    e1: &PolySection,
    e2: &PolySection,
    tests: &[PolyForm],
) -> Result<bool> {
    let br = dorfman(e1, e2)?;
    for phi in tests {
        let lhs = phi.clifford_act(&br)?;
        let rhs = d_commutator(e1, &phi.clifford_act(e2)?)?
            .sub(&d_commutator(e1, phi)?.clifford_act(e2)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⟨e, e⟩` as a polynomial function.
pub fn pairing(e1: &PolySection, e2: &PolySection) -> Result<ParamPolynomial> {
    e1.inner(e2)
}

/// `d f` as a section with zero tangent part.
pub fn differential(dim: usize, f: &ParamPolynomial) -> Result<PolySection> {
    let df = ext_d_all(&function_form(dim, f)?)?;
    EVector::new(vec![ParamPolynomial::zero(); dim], one_form_components(&df))
}

/// Integrability of the structure defined by `Φ`, tested pointwise:
/// `dΦ|_p` must lie in `E·Φ|_p`. `dΦ = 0` short-circuits to `true`.
///
/// `samples` are full variable assignments (coordinates first).
pub fn spinor_integrability(phi: &PolyForm, samples: &[Vec<ExactComplex>]) -> Result<bool> {
    let dphi = ext_d_all(phi)?;
    let dim = phi.dim();
    for p in samples {
        let at = phi.eval(p)?;
        if at.is_zero() || !is_pure(&at)?.pure {
            return Err(GctkError::Precondition(
                "spinor is not pure at a sample point".into(),
            ));
        }
    }
    if dphi.is_zero() {
        return Ok(true);
    }
    for p in samples {
        let at = phi.eval(p)?;
        let target = dphi.eval(p)?;
        if target.is_zero() {
            continue;
        }
        let images: Vec<Multivector<ExactComplex>> = (0..2 * dim)
            .map(|k| {
                let e = if k < dim {
                    EVector::partial(dim, k)
                } else {
                    EVector::dx(dim, k - dim)
                };
                at.clifford_act(&e)
            })
            .collect::<Result<_>>()?;
        let mut masks: Vec<u32> = images
            .iter()
            .chain(std::iter::once(&target))
            .flat_map(|f| f.terms().map(|(m, _)| *m).collect::<Vec<_>>())
            .collect();
        masks.sort_unstable();
        masks.dedup();
        let a =
            ComplexMatrix::from_fn(masks.len(), 2 * dim, |r, c| images[c].coefficient(masks[r]));
        let b: Vec<ExactComplex> = masks.iter().map(|&m| target.coefficient(m)).collect();
        if a.solve(&b)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn constant_section(e: &EVector<ExactComplex>) -> PolySection {
    EVector {
        tangent: e
            .tangent
            .iter()
            .map(|c| ParamPolynomial::constant(c.clone()))
            .collect(),
        cotangent: e
            .cotangent
            .iter()
            .map(|c| ParamPolynomial::constant(c.clone()))
            .collect(),
    }
}

/// `[L, L] ⊂ L` for a basis of constant sections.
pub fn involutivity_check(l: &DiracBasis) -> Result<bool> {
    if !l.is_isotropic() {
        return Err(GctkError::Precondition("basis is not isotropic".into()));
    }
    let secs: Vec<PolySection> = l.vectors.iter().map(constant_section).collect();
    for a in &secs {
        for b in &secs {
            let br = dorfman(a, b)?;
            let vals = br
                .to_flat()
                .iter()
                .map(|p| {
                    p.as_constant()
                        .ok_or_else(|| GctkError::Precondition("bracket is not constant".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            if !l.contains(&EVector::from_flat(&vals)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn random_coeff<R: Rng>(rng: &mut R) -> ExactComplex {
    let re = rng.gen_range(-4i64..=4);
    let im = rng.gen_range(-4i64..=4);
    ExactComplex::from_parts(re, rng.gen_range(1..=3), im, rng.gen_range(1..=3))
}

/// Random polynomial in `x^0..x^{dim-1}` of degree `<= degree`, a few terms.
pub fn random_polynomial<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> ParamPolynomial {
    let mut p = ParamPolynomial::zero();
    for _ in 0..rng.gen_range(0..=3) {
        let mut t = ParamPolynomial::constant(random_coeff(rng));
        for _ in 0..rng.gen_range(0..=degree) {
            t = &t * &ParamPolynomial::var(rng.gen_range(0..dim));
        }
        p = &p + &t;
    }
    p
}

pub fn random_section<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> PolySection {
    EVector {
        tangent: (0..dim)
            .map(|_| random_polynomial(rng, dim, degree))
            .collect(),
        cotangent: (0..dim)
            .map(|_| random_polynomial(rng, dim, degree))
            .collect(),
    }
}

/// Random form with up to four terms of arbitrary grade.
pub fn random_form<R: Rng>(rng: &mut R, dim: usize, degree: u32) -> PolyForm {
    let mut f = PolyForm::zero(dim).expect("valid dimension");
    for _ in 0..rng.gen_range(1..=4) {
        let mask = rng.gen_range(0..(1u32 << dim));
        f.add_term(mask, random_polynomial(rng, dim, degree));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double_space::{dirac_of, make_ji};
    use crate::hyperkahler::build_model;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> ParamPolynomial {
        ParamPolynomial::var(i)
    }

    fn dxp(dim: usize, i: usize) -> PolyForm {
        PolyForm::dx(dim, i).unwrap()
    }

    #[test]
    fn ext_d_examples() {
        let a = dxp(4, 1).scale(&x(0));
        assert_eq!(ext_d_all(&a).unwrap(), dxp(4, 0).wedge(&dxp(4, 1)).unwrap());
        let m = build_model(1).unwrap();
        assert!(ext_d_all(&m.omega_i.to_polynomial()).unwrap().is_zero());
        assert_eq!(ext_d(&a, &[7]), Err(GctkError::UnknownVariable(7)));
        // only the listed variables are differentiated
        assert!(ext_d(&a, &[2, 3]).unwrap().is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_form(&mut rng, 4, 3);
            assert!(ext_d_all(&ext_d_all(&f).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn dorfman_examples() {
        let zero = || vec![ParamPolynomial::zero(); 4];
        let c = |v: i64| ParamPolynomial::from_int(v);
        let e1 = EVector::new(vec![c(1), c(2), c(0), c(0)], vec![c(0), c(3), c(0), c(1)]).unwrap();
        let e2 = EVector::new(vec![c(0), c(5), c(1), c(0)], vec![c(7), c(0), c(0), c(1)]).unwrap();
        assert!(dorfman(&e1, &e2).unwrap().is_zero());

        let mut t1 = zero();
        t1[0] = c(1);
        let mut t2 = zero();
        t2[1] = x(0);
        let br = dorfman(
            &EVector::new(t1, zero()).unwrap(),
            &EVector::new(t2, zero()).unwrap(),
        )
        .unwrap();
        let mut want = zero();
        want[1] = c(1);
        assert_eq!(br, EVector::new(want, zero()).unwrap());

        let mut t = zero();
        t[0] = c(1);
        let mut xi = zero();
        xi[0] = x(1);
        let e = EVector::new(t, xi).unwrap();
        let ee = pairing(&e, &e).unwrap();
        assert_eq!(dorfman(&e, &e).unwrap(), differential(4, &ee).unwrap());
    }

    #[test]
    fn randomized_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let e1 = random_section(&mut rng, 4, 2);
            let e2 = random_section(&mut rng, 4, 2);
            let e3 = random_section(&mut rng, 4, 2);
            // Leibniz
            let lhs = dorfman(&e1, &dorfman(&e2, &e3).unwrap()).unwrap();
            let rhs = dorfman(&dorfman(&e1, &e2).unwrap(), &e3)
                .unwrap()
                .add(&dorfman(&e2, &dorfman(&e1, &e3).unwrap()).unwrap());
            assert_eq!(lhs, rhs);
            let ee = pairing(&e1, &e1).unwrap();
            assert_eq!(dorfman(&e1, &e1).unwrap(), differential(4, &ee).unwrap());
            let tests: Vec<PolyForm> = (0..4).map(|_| random_form(&mut rng, 4, 2)).collect();
            assert!(derived_bracket_check(&e1, &e2, &tests).unwrap());
        }
    }

    #[test]
    fn derived_bracket_detects_wrong_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e1 = random_section(&mut rng, 4, 2);
        let mut e2 = random_section(&mut rng, 4, 2);
        e2.tangent[0] = &e2.tangent[0] + &x(1);
        let tests = vec![PolyForm::one(4).unwrap(), dxp(4, 2)];
        // the identity is asymmetric; swapping sides of the bracket breaks it
        let swapped = dorfman(&e2, &e1).unwrap();
        let lhs = tests[1].clifford_act(&swapped).unwrap();
        let rhs = d_commutator(&e1, &tests[1].clifford_act(&e2).unwrap())
            .unwrap()
            .sub(
                &d_commutator(&e1, &tests[1])
                    .unwrap()
                    .clifford_act(&e2)
                    .unwrap(),
            )
            .unwrap();
        assert_ne!(lhs, rhs);
        assert!(derived_bracket_check(&e1, &e2, &tests).unwrap());
    }

    #[test]
    fn integrability_examples() {
        let m = build_model(1).unwrap();
        let i = ExactComplex::i();
        let pts: Vec<Vec<ExactComplex>> = vec![
            vec![
                ExactComplex::from_int(1),
                ExactComplex::from_ratio(1, 2),
                ExactComplex::from_int(3),
                ExactComplex::from_int(-1),
            ],
            vec![
                ExactComplex::from_int(0),
                ExactComplex::from_int(2),
                ExactComplex::from_ratio(-1, 3),
                ExactComplex::from_int(5),
            ],
        ];
        assert!(spinor_integrability(&m.sigma.to_polynomial(), &pts).unwrap());
        let eiw = m.omega_i.scale(&i).exp_even().unwrap().to_polynomial();
        assert!(spinor_integrability(&eiw, &pts).unwrap());

        // ω = x² dx0∧dx1 + dx2∧dx3 is not closed
        let ii = ParamPolynomial::constant(i.clone());
        let w = dxp(4, 0)
            .wedge(&dxp(4, 1))
            .unwrap()
            .scale(&(&x(2) * &ii))
            .add(&dxp(4, 2).wedge(&dxp(4, 3)).unwrap().scale(&ii))
            .unwrap();
        let phi = w.exp_even().unwrap();
        assert!(!spinor_integrability(&phi, &pts).unwrap());
        // (3 + x⁰) dx⁰∧dx¹ + dx²∧dx³ is closed although not constant
        let wc = dxp(4, 0)
            .wedge(&dxp(4, 1))
            .unwrap()
            .scale(&(&(&x(0) + &ParamPolynomial::from_int(3)) * &ii))
            .add(&dxp(4, 2).wedge(&dxp(4, 3)).unwrap().scale(&ii))
            .unwrap();
        assert!(spinor_integrability(&wc.exp_even().unwrap(), &pts).unwrap());
        assert!(spinor_integrability(&m.omega_i.to_polynomial(), &pts).is_err());
    }

    #[test]
    fn involutivity() {
        let m = build_model(1).unwrap();
        let l = dirac_of(&make_ji(&m.i).unwrap()).unwrap();
        assert!(involutivity_check(&l).unwrap());
        let mut bad = l.clone();
        bad.vectors[0] = EVector::partial(4, 0).add(&EVector::dx(4, 0));
        assert!(involutivity_check(&bad).is_err());
    }
}
