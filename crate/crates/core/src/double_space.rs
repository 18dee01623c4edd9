//! Linear algebra of `E = T ⊕ T*` at a point, in the basis
//! `(∂_0 .. ∂_{d-1}, dx^0 .. dx^{d-1})`.

use num_rational::BigRational;

use crate::error::{GctkError, Result};
use crate::linalg::{same_span, span_rank, ComplexMatrix, Matrix, RatMatrix};
use crate::multivector::{EVector, Multivector};
use crate::scalars::ExactComplex;

pub type Form = Multivector<ExactComplex>;

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Gram matrix of `⟨,⟩`: `½ [[0, 1], [1, 0]]`.
pub fn gram(dim: usize) -> RatMatrix {
    let mut g = RatMatrix::zeros(2 * dim, 2 * dim);
    for k in 0..dim {
        g[(k, dim + k)] = half();
        g[(dim + k, k)] = half();
    }
    g
}

pub fn inner_product(
    e1: &EVector<ExactComplex>,
    e2: &EVector<ExactComplex>,
) -> Result<ExactComplex> {
    e1.inner(e2)
}

/// Matrix `W_ij = ω(∂_i, ∂_j)` of a real 2-form.
pub fn form_matrix(omega: &Form) -> Result<RatMatrix> {
    let d = omega.dim();
    let mut w = RatMatrix::zeros(d, d);
    for (mask, c) in omega.terms() {
        if mask.count_ones() != 2 {
            return Err(GctkError::InvalidInput("expected a 2-form".into()));
        }
        if !c.is_real() {
            return Err(GctkError::InvalidInput("expected a real 2-form".into()));
        }
        let i = mask.trailing_zeros() as usize;
        let j = 31 - mask.leading_zeros() as usize;
        w[(i, j)] = c.re.clone();
        w[(j, i)] = -c.re.clone();
    }
    Ok(w)
}

/// The 2-form `Σ_{i<j} W_ij dx^i∧dx^j` of a skew matrix.
pub fn form_from_matrix(w: &RatMatrix) -> Result<Form> {
    let d = w.rows();
    let mut f = Form::zero(d)?;
    for i in 0..d {
        for j in i + 1..d {
            if w[(i, j)] != -w[(j, i)].clone() {
                return Err(GctkError::InvalidInput("matrix is not skew".into()));
            }
            f.add_term((1 << i) | (1 << j), ExactComplex::real(w[(i, j)].clone()));
        }
    }
    Ok(f)
}

/// Matrix of `X ↦ ι_X ω`, i.e. the transpose of [`form_matrix`].
pub fn interior_map(omega: &Form) -> Result<RatMatrix> {
    Ok(form_matrix(omega)?.transpose())
}

/// Real endomorphism of `E` stored as one `2d x 2d` matrix with blocks
/// `[[A, P], [Q, D]]` (`A: T→T`, `P: T*→T`, `Q: T→T*`, `D: T*→T*`).
#[derive(Clone, PartialEq, Debug)]
pub struct GeneralizedEndomorphism {
    dim: usize,
    mat: RatMatrix,
}

impl GeneralizedEndomorphism {
    pub fn from_matrix(mat: RatMatrix) -> Result<Self> {
        if !mat.is_square() || mat.rows() % 2 == 1 {
            return Err(GctkError::InvalidInput(
                "generalized endomorphism needs an even square matrix".into(),
            ));
        }
        Ok(GeneralizedEndomorphism {
            dim: mat.rows() / 2,
            mat,
        })
    }

    pub fn from_blocks(a: &RatMatrix, p: &RatMatrix, q: &RatMatrix, d: &RatMatrix) -> Result<Self> {
        let n = a.rows();
        for b in [a, p, q, d] {
            if b.rows() != n || b.cols() != n {
                return Err(GctkError::DimensionMismatch {
                    expected: n,
                    found: b.rows().max(b.cols()),
                });
            }
        }
        let mut mat = RatMatrix::zeros(2 * n, 2 * n);
        mat.set_block(0, 0, a);
        mat.set_block(0, n, p);
        mat.set_block(n, 0, q);
        mat.set_block(n, n, d);
        Ok(GeneralizedEndomorphism { dim: n, mat })
    }

    pub fn identity(dim: usize) -> Self {
        GeneralizedEndomorphism {
            dim,
            mat: RatMatrix::identity(2 * dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        GeneralizedEndomorphism {
            dim,
            mat: RatMatrix::zeros(2 * dim, 2 * dim),
        }
    }

    /// Ambient dimension `d` of `T` (the matrix is `2d x 2d`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn block_a(&self) -> RatMatrix {
        self.mat.block(0, 0, self.dim, self.dim)
    }

    pub fn block_p(&self) -> RatMatrix {
        self.mat.block(0, self.dim, self.dim, self.dim)
    }

    pub fn block_q(&self) -> RatMatrix {
        self.mat.block(self.dim, 0, self.dim, self.dim)
    }

    pub fn block_d(&self) -> RatMatrix {
        self.mat.block(self.dim, self.dim, self.dim, self.dim)
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        Self::from_matrix(self.mat.mul(&rhs.mat)?)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Self::from_matrix(self.mat.add(&rhs.mat)?)
    }

    pub fn neg(&self) -> Self {
        GeneralizedEndomorphism {
            dim: self.dim,
            mat: self.mat.neg(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        GeneralizedEndomorphism {
            dim: self.dim,
            mat: self.mat.scale(s),
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Result<RatMatrix> {
        self.mat.commutator(&rhs.mat)
    }

    pub fn apply(&self, e: &EVector<ExactComplex>) -> Result<EVector<ExactComplex>> {
        let v = self.mat.to_complex().mul_vec(&e.to_flat())?;
        EVector::from_flat(&v)
    }

    /// Block sum acting on `E_1 ⊕ E_2 ⊕ ...` of the product manifold,
    /// returned in the product's `(T, T*)` basis ordering.
    pub fn product(factors: &[&Self]) -> Self {
        let dim: usize = factors.iter().map(|f| f.dim).sum();
        let mut mat = RatMatrix::zeros(2 * dim, 2 * dim);
        let mut off = 0;
        for f in factors {
            let k = f.dim;
            mat.set_block(off, off, &f.block_a());
            mat.set_block(off, dim + off, &f.block_p());
            mat.set_block(dim + off, off, &f.block_q());
            mat.set_block(dim + off, dim + off, &f.block_d());
            off += k;
        }
        GeneralizedEndomorphism { dim, mat }
    }

    /// `J² = -1` and `Jᵀ G J = G`, exactly.
    pub fn is_gacs(&self) -> bool {
        let n = 2 * self.dim;
        let Ok(sq) = self.mat.mul(&self.mat) else {
            return false;
        };
        if sq != RatMatrix::identity(n).neg() {
            return false;
        }
        let g = gram(self.dim);
        match self.mat.transpose().mul(&g).and_then(|m| m.mul(&self.mat)) {
            Ok(m) => m == g,
            Err(_) => false,
        }
    }

    /// `½ dim_R ker P`, the dimension of `T* ∩ J T*` halved.
    pub fn type_of(&self) -> Result<usize> {
        let ker = self.dim - self.block_p().rank();
        if ker % 2 == 1 {
            return Err(GctkError::Precondition(
                "odd kernel dimension: not a generalized almost complex structure".into(),
            ));
        }
        Ok(ker / 2)
    }
}

/// Floating-point GACS test for inexact inputs.
pub fn is_gacs_approx(mat: &nalgebra::DMatrix<f64>, tol: f64) -> bool {
    let n = mat.nrows();
    if n != mat.ncols() || n % 2 == 1 {
        return false;
    }
    let d = n / 2;
    let mut g = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 0..d {
        g[(k, d + k)] = 0.5;
        g[(d + k, k)] = 0.5;
    }
    let sq = mat * mat + nalgebra::DMatrix::<f64>::identity(n, n);
    let orth = mat.transpose() * &g * mat - &g;
    sq.amax() <= tol && orth.amax() <= tol
}

fn require_complex_structure(i: &RatMatrix) -> Result<()> {
    if !i.is_square() || i.mul(i)? != RatMatrix::identity(i.rows()).neg() {
        return Err(GctkError::Precondition("I² ≠ -1".into()));
    }
    Ok(())
}

/// `J_I = [[-I, 0], [0, Iᵀ]]`.
pub fn make_ji(i: &RatMatrix) -> Result<GeneralizedEndomorphism> {
    require_complex_structure(i)?;
    let z = RatMatrix::zeros(i.rows(), i.rows());
    GeneralizedEndomorphism::from_blocks(&i.neg(), &z, &z, &i.transpose())
}

/// `J_ω = [[0, -ω⁻¹], [ω, 0]]` with `ω` the map `X ↦ ι_X ω`.
pub fn make_jomega(omega: &Form) -> Result<GeneralizedEndomorphism> {
    let w = interior_map(omega)?;
    let inv = w
        .inverse()
        .map_err(|_| GctkError::Precondition("ω is degenerate".into()))?;
    let z = RatMatrix::zeros(w.rows(), w.rows());
    GeneralizedEndomorphism::from_blocks(&z, &inv.neg(), &w, &z)
}

/// `e^B = [[1, 0], [B, 1]]`, acting on spinors as `e^B ∧`.
pub fn bfield_exp(b: &Form) -> Result<GeneralizedEndomorphism> {
    let bm = interior_map(b)?;
    let d = bm.rows();
    let id = RatMatrix::identity(d);
    GeneralizedEndomorphism::from_blocks(&id, &RatMatrix::zeros(d, d), &bm, &id)
}

/// `e^{-B} J e^{B}`.
pub fn bfield_transform(j: &GeneralizedEndomorphism, b: &Form) -> Result<GeneralizedEndomorphism> {
    let e = bfield_exp(b)?;
    let einv = bfield_exp(&b.neg())?;
    einv.compose(j)?.compose(&e)
}

/// Basis of a complex subspace of `E ⊗ C`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiracBasis {
    pub dim: usize,
    pub vectors: Vec<EVector<ExactComplex>>,
}

impl DiracBasis {
    fn flat(&self) -> Vec<Vec<ExactComplex>> {
        self.vectors.iter().map(EVector::to_flat).collect()
    }

    pub fn rank(&self) -> usize {
        span_rank(&self.flat())
    }

    pub fn is_isotropic(&self) -> bool {
        self.vectors.iter().enumerate().all(|(k, a)| {
            self.vectors[k..]
                .iter()
                .all(|b| a.inner(b).map(|v| v.is_zero()).unwrap_or(false))
        })
    }

    /// Maximal isotropic: `dim_C = d` and isotropic.
    pub fn is_maximal_isotropic(&self) -> bool {
        self.rank() == self.dim && self.is_isotropic()
    }

    /// `L ∩ L̄ = 0`.
    pub fn is_nondegenerate(&self) -> bool {
        let mut all = self.flat();
        all.extend(self.vectors.iter().map(|v| v.conj().to_flat()));
        span_rank(&all) == 2 * self.rank()
    }

    pub fn same_span(&self, other: &DiracBasis) -> bool {
        self.dim == other.dim && same_span(&self.flat(), &other.flat())
    }

    pub fn contains(&self, e: &EVector<ExactComplex>) -> bool {
        let mut all = self.flat();
        let r = span_rank(&all);
        all.push(e.to_flat());
        span_rank(&all) == r
    }

    /// Canonical (row-reduced) basis of the same span.
    pub fn reduced(&self) -> DiracBasis {
        let flat = self.flat();
        if flat.is_empty() {
            return self.clone();
        }
        let m = Matrix::from_rows(flat).expect("uniform lengths");
        let e = m.rref();
        let vectors = (0..e.pivots.len())
            .map(|r| EVector::from_flat(e.reduced.row(r)).expect("even length"))
            .collect();
        DiracBasis {
            dim: self.dim,
            vectors,
        }
    }
}

/// `{e - iJe}` over the real basis of `E`, reduced to a basis.
pub fn dirac_of(j: &GeneralizedEndomorphism) -> Result<DiracBasis> {
    let n = 2 * j.dim();
    let jc: ComplexMatrix = j.matrix().to_complex();
    let i = ExactComplex::i();
    let vectors = (0..n)
        .map(|k| {
            let mut v: Vec<ExactComplex> = jc.column(k).iter().map(|x| -&(x * &i)).collect();
            v[k] = &v[k] + &ExactComplex::from_int(1);
            EVector::from_flat(&v).expect("even length")
        })
        .collect();
    let basis = DiracBasis {
        dim: j.dim(),
        vectors,
    }
    .reduced();
    if basis.vectors.len() != j.dim() {
        return Err(GctkError::Precondition(format!(
            "+i-eigenspace has dimension {} instead of {}",
            basis.vectors.len(),
            j.dim()
        )));
    }
    Ok(basis)
}

/// Kernel of `e ↦ e·Φ` on `E ⊗ C`.
pub fn annihilator(phi: &Form) -> Result<DiracBasis> {
    if phi.is_zero() {
        return Err(GctkError::Precondition(
            "annihilator of the zero form".into(),
        ));
    }
    let d = phi.dim();
    let images: Vec<Form> = (0..2 * d)
        .map(|k| {
            let e = if k < d {
                EVector::partial(d, k)
            } else {
                EVector::dx(d, k - d)
            };
            phi.clifford_act(&e)
        })
        .collect::<Result<_>>()?;
    let mut masks: Vec<u32> = images
        .iter()
        .flat_map(|f| f.terms().map(|(m, _)| *m))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    let vectors = if masks.is_empty() {
        (0..2 * d)
            .map(|k| {
                let mut v = vec![ExactComplex::default(); 2 * d];
                v[k] = ExactComplex::from_int(1);
                EVector::from_flat(&v).expect("even length")
            })
            .collect()
    } else {
        let m = ComplexMatrix::from_fn(masks.len(), 2 * d, |r, c| images[c].coefficient(masks[r]));
        m.nullspace()
            .into_iter()
            .map(|v| EVector::from_flat(&v).expect("even length"))
            .collect()
    };
    Ok(DiracBasis { dim: d, vectors }.reduced())
}

/// Outcome of [`is_pure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Purity {
    /// Annihilator is maximal isotropic.
    pub pure: bool,
    /// `L ∩ L̄ = 0`, so `Φ` determines a generalized complex structure.
    pub nondegenerate: bool,
    pub annihilator_dim: usize,
}

pub fn is_pure(phi: &Form) -> Result<Purity> {
    let l = annihilator(phi)?;
    let dim = l.vectors.len();
    let pure = dim == phi.dim() && l.is_isotropic();
    Ok(Purity {
        pure,
        nondegenerate: pure && l.is_nondegenerate(),
        annihilator_dim: dim,
    })
}

/// The real endomorphism whose `+i`-eigenspace is `L`.
pub fn gacs_from_dirac(l: &DiracBasis) -> Result<GeneralizedEndomorphism> {
    let d = l.dim;
    if l.vectors.len() != d {
        return Err(GctkError::SolutionDimension(l.vectors.len()));
    }
    // v = a + ib with J a = -b, J b = a
    let a: Vec<Vec<BigRational>> = l
        .vectors
        .iter()
        .map(|v| v.to_flat().iter().map(|c| c.re.clone()).collect())
        .collect();
    let b: Vec<Vec<BigRational>> = l
        .vectors
        .iter()
        .map(|v| v.to_flat().iter().map(|c| c.im.clone()).collect())
        .collect();
    let mut cols_r = a.clone();
    cols_r.extend(b.iter().cloned());
    let mut cols_img: Vec<Vec<BigRational>> = b
        .iter()
        .map(|v| v.iter().map(|x| -x.clone()).collect())
        .collect();
    cols_img.extend(a.iter().cloned());
    let r = Matrix::from_columns(&cols_r)?;
    let rinv = r
        .inverse()
        .map_err(|_| GctkError::Degenerate("L ∩ L̄ ≠ 0".into()))?;
    GeneralizedEndomorphism::from_matrix(Matrix::from_columns(&cols_img)?.mul(&rinv)?)
}

pub fn gacs_from_spinor(phi: &Form) -> Result<GeneralizedEndomorphism> {
    let l = annihilator(phi)?;
    if l.vectors.len() != phi.dim() || !l.is_isotropic() {
        return Err(GctkError::Precondition("spinor is not pure".into()));
    }
    gacs_from_dirac(&l)
}

/// Generator of the spinor line annihilated by `dirac_of(J)`, normalized so
/// the leading coefficient (lowest grade, smallest mask) is 1.
///
/// Elements of an isotropic `L` anticommute and square to zero under the
/// Clifford action, so `e_1 ⋯ e_d · ψ` is annihilated by all of `L`.
pub fn spinor_from_gacs(j: &GeneralizedEndomorphism) -> Result<Form> {
    let l = dirac_of(j)?;
    let d = j.dim();
    let mut masks: Vec<u32> = (0..(1u32 << d)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut psi = Form::basis(d, mask, ExactComplex::from_int(1))?;
        for e in l.vectors.iter().rev() {
            psi = psi.clifford_act(e)?;
            if psi.is_zero() {
                break;
            }
        }
        if psi.is_zero() {
            continue;
        }
        let ann = annihilator(&psi)?;
        if ann.vectors.len() != d {
            return Err(GctkError::SolutionDimension(ann.vectors.len()));
        }
        return psi.normalized();
    }
    Err(GctkError::SolutionDimension(0))
}

/// `v` as a rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Sum `Σ c_k J_k` of endomorphisms with rational weights.
pub fn linear_combination(
    terms: &[(BigRational, &GeneralizedEndomorphism)],
) -> Result<GeneralizedEndomorphism> {
    let dim = terms.first().map_or(0, |(_, j)| j.dim());
    let mut acc = GeneralizedEndomorphism::zero(dim);
    for (c, j) in terms {
        acc = acc.add(&j.scale(c))?;
    }
    Ok(acc)
}
