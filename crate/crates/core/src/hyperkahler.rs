//! Flat hyperkähler model `H^n ≅ R^{4n}` with the rotated structures
//! `I_η`, `σ_η`, `ω_η`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::double_space::{gram, rat, Form};
use crate::error::{GctkError, Result};
use crate::linalg::RatMatrix;
use crate::scalars::ExactComplex;

/// Point of `CP^1`: affine coordinate or the point at infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RotationParam {
    Finite(ExactComplex),
    Infinity,
}

impl RotationParam {
    pub fn finite(z: ExactComplex) -> Self {
        RotationParam::Finite(z)
    }

    /// Point with coordinate `c` in chart 0 (`η`) or chart 1 (`1/η`).
    pub fn from_chart(chart: u8, c: ExactComplex) -> Self {
        match chart {
            0 => RotationParam::Finite(c),
            _ if c.is_zero() => RotationParam::Infinity,
            _ => RotationParam::Finite(c.inv().expect("nonzero")),
        }
    }

    /// Coordinate in the given chart, if the point lies in it.
    pub fn chart_coordinate(&self, chart: u8) -> Option<ExactComplex> {
        match (self, chart) {
            (RotationParam::Finite(z), 0) => Some(z.clone()),
            (RotationParam::Finite(z), _) => z.inv().ok(),
            (RotationParam::Infinity, 0) => None,
            (RotationParam::Infinity, _) => Some(ExactComplex::default()),
        }
    }

    pub fn as_finite(&self) -> Option<&ExactComplex> {
        match self {
            RotationParam::Finite(z) => Some(z),
            RotationParam::Infinity => None,
        }
    }

    /// Antipodal point `-1/η̄`.
    pub fn antipode(&self) -> Self {
        match self {
            RotationParam::Infinity => RotationParam::Finite(ExactComplex::default()),
            RotationParam::Finite(z) if z.is_zero() => RotationParam::Infinity,
            RotationParam::Finite(z) => RotationParam::Finite(-z.conj().inv().expect("nonzero")),
        }
    }

    /// Unit vector `((1-|η|²), 2 Re η, 2 Im η) / (1+|η|²)` of `S^2 ⊂ R^3`.
    pub fn sphere_point(&self) -> [BigRational; 3] {
        match self {
            RotationParam::Infinity => [
                -BigRational::one(),
                BigRational::zero(),
                BigRational::zero(),
            ],
            RotationParam::Finite(z) => {
                let n = z.norm_sqr();
                let den = BigRational::one() + &n;
                [
                    (BigRational::one() - &n) / &den,
                    rat(2) * &z.re / &den,
                    rat(2) * &z.im / &den,
                ]
            }
        }
    }
}

impl fmt::Display for RotationParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationParam::Finite(z) => write!(f, "{z}"),
            RotationParam::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for RotationParam {
    type Err = GctkError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(RotationParam::Infinity),
            t => Ok(RotationParam::Finite(t.parse()?)),
        }
    }
}

impl From<ExactComplex> for RotationParam {
    fn from(z: ExactComplex) -> Self {
        RotationParam::Finite(z)
    }
}

/// Left multiplication by `i`, `j`, `k` on `H` with basis `(1, i, j, k)`.
fn quaternion_blocks() -> [RatMatrix; 3] {
    // images of the basis vectors, as columns
    let from_images = |imgs: [(usize, i64); 4]| {
        let mut m = RatMatrix::zeros(4, 4);
        for (col, (row, sign)) in imgs.iter().enumerate() {
            m[(*row, col)] = rat(*sign);
        }
        m
    };
    [
        from_images([(1, 1), (0, -1), (3, 1), (2, -1)]),
        from_images([(2, 1), (3, -1), (0, -1), (1, 1)]),
        from_images([(3, 1), (2, 1), (1, -1), (0, -1)]),
    ]
}

/// Real 2-form `ω_A(X,Y) = g(AX, Y)` with `g` the identity.
pub fn kahler_form(a: &RatMatrix) -> Result<Form> {
    let d = a.rows();
    let mut f = Form::zero(d)?;
    for i in 0..d {
        for j in i + 1..d {
            // g(A ∂_i, ∂_j) = A_{ji}
            f.add_term((1 << i) | (1 << j), ExactComplex::real(a[(j, i)].clone()));
        }
    }
    Ok(f)
}

/// `n` quaternionic dimensions, real dimension `4n`, flat metric.
#[derive(Clone, Debug)]
pub struct HyperkahlerModel {
    pub n: usize,
    pub dim: usize,
    pub i: RatMatrix,
    pub j: RatMatrix,
    pub k: RatMatrix,
    pub omega_i: Form,
    pub omega_j: Form,
    pub omega_k: Form,
    /// `ω_J + i ω_K`.
    pub sigma: Form,
    pub sigma_bar: Form,
    pub vol: Form,
}

pub const MAX_N: usize = 3;

pub fn build_model(n: usize) -> Result<HyperkahlerModel> {
    if n == 0 || n > MAX_N {
        return Err(GctkError::OutOfRange(format!(
            "quaternionic dimension {n} (supported: 1..={MAX_N})"
        )));
    }
    let [qi, qj, qk] = quaternion_blocks();
    let rep = |b: &RatMatrix| RatMatrix::direct_sum(&vec![b; n]);
    let (i, j, k) = (rep(&qi), rep(&qj), rep(&qk));
    let dim = 4 * n;
    let omega_i = kahler_form(&i)?;
    let omega_j = kahler_form(&j)?;
    let omega_k = kahler_form(&k)?;
    let ii = ExactComplex::i();
    let sigma = omega_j.add(&omega_k.scale(&ii))?;
    let sigma_bar = omega_j.sub(&omega_k.scale(&ii))?;
    let m = HyperkahlerModel {
        n,
        dim,
        i,
        j,
        k,
        omega_i,
        omega_j,
        omega_k,
        sigma,
        sigma_bar,
        vol: Form::volume(dim)?,
    };
    m.check_invariants()?;
    Ok(m)
}

impl HyperkahlerModel {
    fn check_invariants(&self) -> Result<()> {
        let id = RatMatrix::identity(self.dim);
        let minus = id.neg();
        let bad = |what: &str| {
            Err(GctkError::Precondition(format!(
                "model invariant failed: {what}"
            )))
        };
        for a in [&self.i, &self.j, &self.k] {
            if a.mul(a)? != minus {
                return bad("A² = -1");
            }
            // g(AX, AY) = g(X, Y)
            if a.transpose().mul(a)? != id {
                return bad("A orthogonal");
            }
        }
        if self.i.mul(&self.j)? != self.k || self.j.mul(&self.i)? != self.k.neg() {
            return bad("IJ = K = -JI");
        }
        if self.j.mul(&self.k)? != self.i || self.k.mul(&self.i)? != self.j {
            return bad("JK = I, KI = J");
        }
        // σ is (2,0) for I: ι_{IX} σ = i ι_X σ
        for c in 0..self.dim {
            let x: Vec<ExactComplex> = (0..self.dim)
                .map(|r| ExactComplex::from_int(i64::from(r == c)))
                .collect();
            let ix: Vec<ExactComplex> = self
                .i
                .column(c)
                .into_iter()
                .map(ExactComplex::real)
                .collect();
            if self.sigma.interior(&ix)? != self.sigma.interior(&x)?.scale(&ExactComplex::i()) {
                return bad("σ of type (2,0)");
            }
        }
        let top = self.omega_i.wedge_pow(self.dim as u32 / 2)?;
        if top.is_zero() {
            return bad("ω_I nondegenerate");
        }
        Ok(())
    }

    /// `I_η`; `I_∞ = -I`.
    pub fn i_eta(&self, eta: &RotationParam) -> RatMatrix {
        match eta {
            RotationParam::Infinity => self.i.neg(),
            RotationParam::Finite(z) => {
                let [a, b, c] = RotationParam::Finite(z.clone()).sphere_point();
                self.combine(&a, &b, &c)
            }
        }
    }

    /// `I_η` in the chart `v = 1/η`.
    pub fn i_eta_chart(&self, chart: u8, c: &ExactComplex) -> RatMatrix {
        self.i_eta(&RotationParam::from_chart(chart, c.clone()))
    }

    /// `a I + b J + c K`.
    pub fn combine(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> RatMatrix {
        self.i
            .scale(a)
            .add(&self.j.scale(b))
            .and_then(|m| m.add(&self.k.scale(c)))
            .expect("same shape")
    }

    /// `a ω_I + b ω_J + c ω_K`.
    pub fn combine_forms(&self, a: &ExactComplex, b: &ExactComplex, c: &ExactComplex) -> Form {
        self.omega_i
            .scale(a)
            .add(&self.omega_j.scale(b))
            .and_then(|m| m.add(&self.omega_k.scale(c)))
            .expect("same dimension")
    }

    /// `σ_η = σ - 2η ω_I - η² σ̄`.
    pub fn sigma_eta(&self, eta: &RotationParam) -> Result<Form> {
        let z = eta
            .as_finite()
            .ok_or_else(|| GctkError::Precondition("σ_η has a pole at η = ∞".into()))?;
        self.sigma
            .sub(&self.omega_i.scale(&(&ExactComplex::from_int(2) * z)))?
            .sub(&self.sigma_bar.scale(&(z * z)))
    }

    /// `σ'_η = σ_η / (1 + |η|²)`.
    pub fn sigma_eta_prime(&self, eta: &RotationParam) -> Result<Form> {
        let s = self.sigma_eta(eta)?;
        let z = eta.as_finite().expect("checked above");
        let den = ExactComplex::real(BigRational::one() + z.norm_sqr());
        Ok(s.scale(&den.inv()?))
    }

    /// Kähler form of `I_η`.
    pub fn omega_eta(&self, eta: &RotationParam) -> Result<Form> {
        kahler_form(&self.i_eta(eta))
    }

    /// `½ (g ⊕ g⁻¹)`.
    pub fn generalized_metric(&self) -> RatMatrix {
        RatMatrix::identity(2 * self.dim).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// Gram matrix of the natural pairing on `E`.
    pub fn gram(&self) -> RatMatrix {
        gram(self.dim)
    }
}

/// Rotation in SO(3) whose rows give `ω_η`, `Re σ'_η`, `Im σ'_η` in
/// terms of `(ω_I, ω_J, ω_K)`.
pub fn so3_matrix(eta: &ExactComplex) -> RatMatrix {
    let (x, y) = (&eta.re, &eta.im);
    let one = BigRational::one();
    let (x2, y2, xy) = (x * x, y * y, x * y);
    let den = &one + &x2 + &y2;
    let two = rat(2);
    let rows = vec![
        vec![&one - &x2 - &y2, &two * x, &two * y],
        vec![-(&two * x), &one - &x2 + &y2, -(&two * &xy)],
        vec![-(&two * y), -(&two * &xy), &one + &x2 - &y2],
    ];
    RatMatrix::from_rows(rows).expect("3x3").map(|v| v / &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> ExactComplex {
        ExactComplex::from_parts(re, 1, im, 1)
    }

    #[test]
    fn model_examples() {
        let m = build_model(1).unwrap();
        assert!(m.i.mul(&m.j).unwrap().sub(&m.k).unwrap().is_zero());
        let ss = m.sigma.wedge(&m.sigma_bar).unwrap();
        let w2 = m.omega_i.wedge(&m.omega_i).unwrap();
        assert_eq!(ss, w2.scale(&ExactComplex::from_int(2)));
        assert_eq!(ss, m.vol.scale(&ExactComplex::from_int(4)));
        let m2 = build_model(2).unwrap();
        let top = m2.omega_i.wedge_pow(4).unwrap();
        assert_eq!(top, m2.vol.scale(&ExactComplex::from_int(24)));
        assert!(build_model(0).is_err());
        assert!(build_model(4).is_err());
    }

    #[test]
    fn i_eta_examples() {
        let m = build_model(1).unwrap();
        assert_eq!(m.i_eta(&c(0, 0).into()), m.i);
        assert_eq!(m.i_eta(&c(1, 0).into()), m.j);
        assert_eq!(m.i_eta(&c(0, 1).into()), m.k);
        assert_eq!(m.i_eta(&RotationParam::Infinity), m.i.neg());
        let v = ExactComplex::from_parts(2, 3, -1, 5);
        assert_eq!(m.i_eta_chart(1, &v), m.i_eta(&v.inv().unwrap().into()));
        let z = ExactComplex::from_parts(3, 7, 2, 5);
        let iz = m.i_eta(&z.clone().into());
        assert_eq!(iz.mul(&iz).unwrap(), RatMatrix::identity(4).neg());
        assert_eq!(m.i_eta(&RotationParam::Finite(z).antipode()), iz.neg());
    }

    #[test]
    fn sigma_eta_examples() {
        let m = build_model(1).unwrap();
        assert_eq!(m.sigma_eta(&c(0, 0).into()).unwrap(), m.sigma);
        assert!(m.sigma_eta(&RotationParam::Infinity).is_err());
        // σ_1 = 2i(ω_K + i ω_I)
        let s1 = m.sigma_eta(&c(1, 0).into()).unwrap();
        let want = m
            .omega_k
            .add(&m.omega_i.scale(&ExactComplex::i()))
            .unwrap()
            .scale(&c(0, 2));
        assert_eq!(s1, want);
        // (2,0) for I_1 = J
        for col in 0..4 {
            let x: Vec<ExactComplex> = (0..4)
                .map(|r| ExactComplex::from_int(i64::from(r == col)))
                .collect();
            let jx: Vec<ExactComplex> =
                m.j.column(col)
                    .into_iter()
                    .map(ExactComplex::real)
                    .collect();
            assert_eq!(
                s1.interior(&jx).unwrap(),
                s1.interior(&x).unwrap().scale(&ExactComplex::i())
            );
        }
        assert_eq!(m.omega_eta(&c(0, 0).into()).unwrap(), m.omega_i);
    }

    #[test]
    fn so3_examples() {
        assert_eq!(so3_matrix(&c(0, 0)), RatMatrix::identity(3));
        let want = RatMatrix::from_rows(vec![
            vec![rat(0), rat(0), rat(1)],
            vec![rat(0), rat(1), rat(0)],
            vec![rat(-1), rat(0), rat(0)],
        ])
        .unwrap();
        assert_eq!(so3_matrix(&c(0, 1)), want);
    }

    #[test]
    fn generalized_metric_entries() {
        let m = build_model(1).unwrap();
        let g = m.generalized_metric();
        assert_eq!(g[(0, 0)], BigRational::new(1.into(), 2.into()));
        assert!(g[(0, 4)].is_zero());
    }
}
