//! The verification suite behind `gctk verify`.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use gctk::courant::{
    derived_bracket_check, differential, dorfman, pairing, random_form, random_section, PolyForm,
};
use gctk::double_space::{
    annihilator, bfield_transform, form_from_matrix, gacs_from_dirac, gacs_from_spinor, is_pure,
    make_ji, make_jomega, spinor_from_gacs, Form,
};
use gctk::family::{
    bi_hermitian_pair, f_map, family_structures, phi_alpha_beta, phi_alpha_beta_symbolic,
    phi_alpha_beta_terms, phi_eta_zeta, quadric_coordinates, quadric_spinor,
    quadric_spinor_symbolic, real_structure_check, so3_form_identity, type_map, FamilyPoint,
    ParamVars, SymbolicTriple, TwistorFiberPoint, TypeScope,
};
use gctk::hyperkahler::{so3_matrix, HyperkahlerModel, RotationParam};
use gctk::linalg::{float_eigenvalues, float_inertia, RatMatrix};
use gctk::multivector::EVector;
use gctk::sampling::{
    family_points, nonzero_complex, nonzero_family_points, rational_complex, rng,
};
use gctk::scalars::{ExactComplex, ParamPolynomial};
use gctk::twistor::{
    build_psi, dpsi, dpsi_prime, involution_reverses, patch_point, point_structures,
    pseudo_kahler_metric, pseudo_kahler_signature, Mutation,
};

use crate::report::{CheckRecord, Residual, Status};

#[derive(Clone)]
pub struct Context {
    pub model: HyperkahlerModel,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub mutation: Option<Mutation>,
}

struct Outcome {
    status: Status,
    residual: Residual,
    parameters: Value,
    detail: Option<String>,
}

impl Outcome {
    fn exact(ok: bool, parameters: Value) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Residual::Exact { exact_zero: ok },
            parameters,
            detail: None,
        }
    }

    fn skip(reason: &str) -> Self {
        Outcome {
            status: Status::Skip,
            residual: Residual::None,
            parameters: json!({}),
            detail: Some(reason.into()),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

type CheckFn = fn(&Context) -> gctk::Result<Outcome>;

/// Every check in the suite, in report order.
const MANIFEST: &[(&str, CheckFn)] = &[
    ("multivector.clifford_relation", clifford_relation),
    ("double_space.spinor_dictionary", spinor_dictionary),
    ("courant.leibniz", courant_leibniz),
    ("courant.anchor", courant_anchor),
    ("courant.derived_bracket", courant_derived_bracket),
    ("hyperkahler.rotated_structures", rotated_structures),
    ("hyperkahler.so3", so3),
    ("family.n1_expansion", n1_expansion),
    ("family.three_families", three_families),
    ("family.pullback", pullback),
    ("family.pole_cancellation", pole_cancellation),
    ("family.bidegree", bidegree),
    ("family.real_structure", real_structure),
    ("family.mukai_quadric", mukai_quadric),
    ("twistor.dpsi_zero", dpsi_zero),
    ("twistor.dpsi_prime_zero", dpsi_prime_zero),
    ("twistor.pointwise_spinor", pointwise_spinor),
    ("twistor.signature", signature),
    ("twistor.type_stratification", type_stratification),
    ("twistor.real_involution", real_involution),
];

pub fn check_ids() -> Vec<&'static str> {
    MANIFEST.iter().map(|(id, _)| *id).collect()
}

pub fn run(ctx: &Context) -> Vec<CheckRecord> {
    MANIFEST
        .iter()
        .enumerate()
        .map(|(k, (id, check))| {
            let start = Instant::now();
            let out = check(&Context {
                seed: ctx.seed.wrapping_add(1000 * k as u64),
                ..ctx.clone()
            })
            .unwrap_or_else(|e| Outcome {
                status: Status::Fail,
                residual: Residual::None,
                parameters: json!({}),
                detail: Some(e.to_string()),
            });
            CheckRecord {
                check_id: id.to_string(),
                n: ctx.model.n,
                parameters: out.parameters,
                status: out.status,
                residual: out.residual,
                elapsed_ms: start.elapsed().as_millis() as u64,
                detail: out.detail,
            }
        })
        .collect()
}

/// Runs `f` over `items` in parallel; true iff every item passes.
fn all_pass<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> gctk::Result<bool> + Sync + Send,
) -> gctk::Result<bool> {
    let res: gctk::Result<Vec<bool>> = items.par_iter().map(f).collect();
    Ok(res?.into_iter().all(|b| b))
}

fn points(ctx: &Context) -> Vec<FamilyPoint> {
    family_points(ctx.seed, ctx.samples)
        .into_iter()
        .map(|(a, b)| FamilyPoint::new(a, b))
        .collect()
}

const COURANT_DIM: usize = 4;

fn sections(ctx: &Context, count: usize) -> Vec<EVector<ParamPolynomial>> {
    let mut r = rng(ctx.seed);
    (0..count)
        .map(|_| random_section(&mut r, COURANT_DIM, 2))
        .collect()
}

fn clifford_relation(ctx: &Context) -> gctk::Result<Outcome> {
    let d = ctx.model.dim;
    let mut r = rng(ctx.seed);
    let cases: Vec<_> = (0..ctx.samples)
        .map(|_| {
            (
                random_section(&mut r, d, 1),
                random_section(&mut r, d, 1),
                random_form(&mut r, d, 1),
            )
        })
        .collect();
    let ok = all_pass(&cases, |(e1, e2, phi)| {
        let lhs = phi
            .clifford_act(e2)?
            .clifford_act(e1)?
            .add(&phi.clifford_act(e1)?.clifford_act(e2)?)?;
        let two = ParamPolynomial::from_int(2);
        Ok(lhs == phi.scale(&(&two * &e1.inner(e2)?)))
    })?;
    Ok(Outcome::exact(
        ok,
        json!({ "samples": ctx.samples, "dim": d }),
    ))
}

fn spinor_dictionary(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    // exact elimination on 2^d-row systems dominates at d = 12
    let count = ctx.samples.min(if m.dim >= 12 { 3 } else { 10 });
    let mut r = rng(ctx.seed);
    let cases: Vec<_> = (0..count)
        .map(|_| {
            let eta = RotationParam::Finite(rational_complex(&mut r, 3, 4));
            let b = RatMatrix::from_fn(m.dim, m.dim, |_, _| {
                gctk::scalars::rational(r.gen_range(-2..=2), r.gen_range(1..=3))
            });
            (eta, b)
        })
        .collect();
    let ok = all_pass(&cases, |(eta, b)| {
        let b = form_from_matrix(&b.sub(&b.transpose())?)?;
        let complex = bfield_transform(&make_ji(&m.i_eta(eta))?, &b)?;
        let omega = m.omega_eta(eta)?;
        let symplectic = bfield_transform(&make_jomega(&omega)?, &b)?;
        for j in [complex, symplectic] {
            let l = annihilator(&spinor_from_gacs(&j)?)?;
            let pure = l.vectors.len() == m.dim && l.is_isotropic() && l.is_nondegenerate();
            if !(j.is_gacs() && pure && gacs_from_dirac(&l)? == j) {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    Ok(Outcome::exact(ok, json!({ "samples": count })))
}

fn courant_leibniz(ctx: &Context) -> gctk::Result<Outcome> {
    let s = sections(ctx, 3 * ctx.samples);
    let triples: Vec<_> = s.chunks(3).collect();
    let ok = all_pass(&triples, |t| {
        let lhs = dorfman(&t[0], &dorfman(&t[1], &t[2])?)?;
        let rhs =
            dorfman(&dorfman(&t[0], &t[1])?, &t[2])?.add(&dorfman(&t[1], &dorfman(&t[0], &t[2])?)?);
        Ok(lhs == rhs)
    })?;
    Ok(Outcome::exact(
        ok,
        json!({ "samples": ctx.samples, "dim": COURANT_DIM, "degree": 2 }),
    ))
}

fn courant_anchor(ctx: &Context) -> gctk::Result<Outcome> {
    let s = sections(ctx, ctx.samples);
    let ok = all_pass(&s, |e| {
        Ok(dorfman(e, e)? == differential(COURANT_DIM, &pairing(e, e)?)?)
    })?;
    Ok(Outcome::exact(
        ok,
        json!({ "samples": ctx.samples, "dim": COURANT_DIM, "degree": 2 }),
    ))
}

fn courant_derived_bracket(ctx: &Context) -> gctk::Result<Outcome> {
    let mut r = rng(ctx.seed);
    let cases: Vec<(_, _, Vec<PolyForm>)> = (0..ctx.samples)
        .map(|_| {
            (
                random_section(&mut r, COURANT_DIM, 2),
                random_section(&mut r, COURANT_DIM, 2),
                (0..2)
                    .map(|_| random_form(&mut r, COURANT_DIM, 2))
                    .collect(),
            )
        })
        .collect();
    let ok = all_pass(&cases, |(e1, e2, tests)| {
        derived_bracket_check(e1, e2, tests)
    })?;
    Ok(Outcome::exact(
        ok,
        json!({ "samples": ctx.samples, "dim": COURANT_DIM, "degree": 2 }),
    ))
}

fn rotated_structures(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let pts: Vec<RotationParam> = family_points(ctx.seed, ctx.samples)
        .into_iter()
        .map(|(a, _)| a)
        .chain([RotationParam::Infinity])
        .collect();
    let id = RatMatrix::identity(m.dim);
    let ok =
        all_pass(&pts, |eta| {
            let i = m.i_eta(eta);
            let omega = m.omega_eta(eta)?;
            Ok(i.mul(&i)? == id.neg()
                && i.transpose().mul(&i)? == id
                && make_jomega(&omega)?.is_gacs())
        })?;
    Ok(Outcome::exact(ok, json!({ "samples": pts.len() })))
}

fn so3(ctx: &Context) -> gctk::Result<Outcome> {
    let mut r = rng(ctx.seed);
    let etas: Vec<ExactComplex> = (0..ctx.samples)
        .map(|_| rational_complex(&mut r, 5, 7))
        .collect();
    let id = RatMatrix::identity(3);
    let ok = all_pass(&etas, |eta| {
        let rot = so3_matrix(eta);
        Ok(rot.mul(&rot.transpose())? == id
            && rot.determinant()? == gctk::double_space::rat(1)
            && so3_form_identity(&ctx.model, eta)?)
    })?;
    Ok(Outcome::exact(ok, json!({ "samples": ctx.samples })))
}

fn n1_expansion(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    if m.n != 1 {
        return Ok(Outcome::skip("defined for n = 1"));
    }
    let vars = ParamVars::after(m.dim);
    let (al, be) = (vars.alpha(), vars.beta());
    let i = ParamPolynomial::constant(ExactComplex::i());
    let p = |f: &Form| f.to_polynomial();
    let want = p(&m.sigma)
        .sub(&p(&m.omega_i).scale(&(&al + &be)))?
        .add(&p(&Form::one(4)?.sub(&m.vol)?).scale(&(&i * &(&al - &be))))?
        .sub(&p(&m.sigma_bar).scale(&(&al * &be)))?;
    Ok(Outcome::exact(
        phi_alpha_beta_symbolic(m)? == want,
        json!({}),
    ))
}

fn three_families(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let ok = all_pass(&points(ctx), |p| {
        let spinor = gacs_from_spinor(&phi_alpha_beta(m, p)?)?;
        let (bi, _) = bi_hermitian_pair(&m.i_eta(&p.alpha), &m.i_eta(&p.beta))?;
        let symplectic_ok = match (p.alpha.as_finite(), p.beta.as_finite()) {
            (Some(a), Some(b)) if a != b => gctk::family::symplectic_form_of(m, a, b)? == bi,
            _ => true,
        };
        Ok(spinor == bi && symplectic_ok)
    })?;
    Ok(Outcome::exact(ok, json!({ "samples": ctx.samples })))
}

fn pullback(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let mut r = rng(ctx.seed);
    let pts: Vec<TwistorFiberPoint> = (0..ctx.samples)
        .map(|_| TwistorFiberPoint {
            eta: rational_complex(&mut r, 3, 4),
            zeta: rational_complex(&mut r, 3, 4),
        })
        .collect();
    let ok = all_pass(&pts, |p| {
        let lhs = phi_eta_zeta(m, p)?;
        Ok(!lhs.is_zero() && lhs.proportional(&phi_alpha_beta(m, &f_map(p))?)?)
    })?;
    Ok(Outcome::exact(ok, json!({ "samples": ctx.samples })))
}

fn pole_cancellation(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let n = m.n as u32;
    let vars = ParamVars::after(m.dim);
    let terms = phi_alpha_beta_terms(&SymbolicTriple::from_model(m), &vars)?;
    let diff = &vars.alpha() - &vars.beta();
    let divisible = terms
        .iter()
        .enumerate()
        .filter(|(j, _)| *j as u32 != n)
        .all(|(_, t)| t.terms().all(|(_, c)| c.divide_exact(&diff).is_ok()));
    let a1 = ParamPolynomial::var(vars.a1);
    let a2 = ParamPolynomial::var(vars.a2);
    let on_diag =
        phi_alpha_beta_symbolic(m)?.map(|p| p.substitute(vars.b1, &a1).substitute(vars.b2, &a2));
    let al = vars.alpha();
    let p = |f: &Form| f.to_polynomial();
    let sigma_a = p(&m.sigma)
        .sub(&p(&m.omega_i).scale(&al.scale(&ExactComplex::from_int(2))))?
        .sub(&p(&m.sigma_bar).scale(&(&al * &al)))?;
    let fact: i64 = (1..=n as i64).product();
    let want = sigma_a
        .wedge_pow(n)?
        .scale_exact(&ExactComplex::from_ratio(1, fact));
    Ok(Outcome::exact(divisible && on_diag == want, json!({})))
}

fn bidegree(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let vars = ParamVars::after(m.dim);
    let phi = phi_alpha_beta_symbolic(m)?;
    let (mut da, mut db) = (0, 0);
    for (_, c) in phi.terms() {
        da = da.max(c.degree_in(&[vars.a1, vars.a2]).unwrap_or(0));
        db = db.max(c.degree_in(&[vars.b1, vars.b2]).unwrap_or(0));
    }
    let n = m.n as u32;
    Ok(Outcome::exact(
        da <= n && db <= n,
        json!({ "degree_alpha": da, "degree_beta": db }),
    ))
}

fn real_structure(ctx: &Context) -> gctk::Result<Outcome> {
    let pts = nonzero_family_points(ctx.seed, ctx.samples);
    let ok = all_pass(&pts, |p| {
        real_structure_check(&ctx.model, std::slice::from_ref(p))
    })?;
    Ok(Outcome::exact(ok, json!({ "samples": ctx.samples })))
}

fn mukai_quadric(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    if m.n != 1 {
        return Ok(Outcome::skip("defined for n = 1"));
    }
    let s = quadric_spinor_symbolic(m)?;
    let sq = |k| &ParamPolynomial::var(k) * &ParamPolynomial::var(k);
    let want = (&(&sq(4) + &sq(5)) + &(&sq(6) + &sq(7))).scale(&ExactComplex::from_int(2));
    let symbolic = s.mukai_pair(&s)? == want;
    let mut r = rng(ctx.seed);
    let on = (ctx.samples / 5).max(1);
    let mut samples: Vec<[ExactComplex; 4]> = (0..on)
        .map(|_| {
            quadric_coordinates(
                &rational_complex(&mut r, 3, 4),
                &rational_complex(&mut r, 3, 4),
            )
        })
        .collect();
    samples.extend((on..ctx.samples).map(|_| [(); 4].map(|_| nonzero_complex(&mut r, 3, 4))));
    let ok = all_pass(&samples, |[x, y, z, u]| {
        let q = &(&(x * x) + &(y * y)) + &(&(z * z) + &(u * u));
        Ok(is_pure(&quadric_spinor(m, x, y, z, u)?)?.pure == q.is_zero())
    })?;
    Ok(Outcome::exact(
        symbolic && ok,
        json!({ "samples": samples.len(), "on_quadric": on }),
    ))
}

fn dpsi_zero(ctx: &Context) -> gctk::Result<Outcome> {
    let d = dpsi(&ctx.model, ctx.mutation)?;
    let params = json!({ "mutation": ctx.mutation.map(|_| "nonclosed-omega") });
    let out = Outcome::exact(d.is_zero(), params);
    Ok(if d.is_zero() {
        out
    } else {
        out.with_detail(format!("{} nonzero terms", d.terms().count()))
    })
}

fn dpsi_prime_zero(ctx: &Context) -> gctk::Result<Outcome> {
    let d = dpsi_prime(&ctx.model, ctx.mutation)?;
    let params = json!({ "mutation": ctx.mutation.map(|_| "nonclosed-omega") });
    let out = Outcome::exact(d.is_zero(), params);
    Ok(if d.is_zero() {
        out
    } else {
        out.with_detail(format!("{} nonzero terms", d.terms().count()))
    })
}

fn pointwise_spinor(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let count = if m.n >= 3 {
        ctx.samples.min(3)
    } else {
        ctx.samples.min(20)
    };
    let psi = build_psi(m)?;
    let pts: Vec<(ExactComplex, ExactComplex)> =
        nonzero_family_points(ctx.seed, count).into_iter().collect();
    let ok = all_pass(&pts, |(a, b)| {
        let at = psi.eval(&patch_point(m, a, b))?;
        let (j, _) = point_structures(m, &FamilyPoint::finite(a.clone(), b.clone()))?;
        Ok(gacs_from_spinor(&at)? == j)
    })?;
    Ok(Outcome::exact(ok, json!({ "samples": count })))
}

fn signature(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let want = (8 * m.n + 4, 4);
    let pts = points(ctx);
    let res: gctk::Result<Vec<(bool, f64)>> = pts
        .par_iter()
        .map(|p| {
            let (j, jp) = point_structures(m, p)?;
            let exact = j.commutator(&jp)?.is_zero() && pseudo_kahler_signature(m, p)? == want;
            let g = pseudo_kahler_metric(m, p)?;
            let f = float_inertia(&g, ctx.tol);
            let gap = float_eigenvalues(&g)
                .iter()
                .fold(f64::INFINITY, |acc, e| acc.min(e.abs()));
            Ok((
                exact && (f.positive, f.negative, f.zero) == (want.0, want.1, 0),
                gap,
            ))
        })
        .collect();
    let res = res?;
    let ok = res.iter().all(|(b, _)| *b);
    let gap = res.iter().fold(f64::INFINITY, |acc, (_, g)| acc.min(*g));
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        residual: Residual::Float(gap),
        parameters: json!({ "samples": ctx.samples, "expected": [want.0, want.1], "tol": ctx.tol }),
        detail: Some("residual is the smallest |eigenvalue| of G".into()),
    })
}

fn type_stratification(ctx: &Context) -> gctk::Result<Outcome> {
    let m = &ctx.model;
    let n = m.n;
    let mut ok = true;
    for (scope, diag, off) in [
        (TypeScope::Fiber, 2 * n, 0),
        (TypeScope::Total, 2 * n + 2, 2),
    ] {
        for row in type_map(m, 3, scope)? {
            ok &= row.type_ == if row.point.is_diagonal() { diag } else { off };
        }
    }
    let mut r = rng(ctx.seed);
    let pts: Vec<FamilyPoint> = (0..ctx.samples.min(10))
        .map(|_| {
            let a = RotationParam::Finite(rational_complex(&mut r, 3, 4));
            FamilyPoint::new(a.clone(), a.antipode())
        })
        .collect();
    ok &= all_pass(&pts, |p| {
        let (j, _) = family_structures(m, p)?;
        Ok(j.block_a().is_zero() && j.type_of()? == 0)
    })?;
    Ok(Outcome::exact(
        ok,
        json!({ "grid": 3, "antipodal_samples": pts.len() }),
    ))
}

fn real_involution(ctx: &Context) -> gctk::Result<Outcome> {
    let pts: Vec<FamilyPoint> = nonzero_family_points(ctx.seed, ctx.samples)
        .into_iter()
        .map(|(a, b)| FamilyPoint::finite(a, b))
        .collect();
    let ok = all_pass(&pts, |p| involution_reverses(&ctx.model, p))?;
    Ok(Outcome::exact(ok, json!({ "samples": ctx.samples })))
}
