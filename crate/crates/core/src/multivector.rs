//! Exterior algebra `Λ•(R^d)* ⊗ S` on a bitmask basis, with the Clifford
//! action of `E = T ⊕ T*`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{GctkError, Result};
use crate::scalars::{Conjugate, ExactComplex, ParamPolynomial, Ring, Variables};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

/// Sign of moving the covectors of `b` past those of `a` in `dx^a ∧ dx^b`.
#[inline]
fn wedge_sign(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

/// Number of basis covectors of `mask` below index `i`.
#[inline]
fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim % 2 == 1 || dim > MAX_DIM {
        return Err(GctkError::OutOfRange(format!(
            "ambient dimension {dim} (must be even, 2..={MAX_DIM})"
        )));
    }
    Ok(())
}

/// Element of `Λ•(R^dim)* ⊗ S`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<S> {
    dim: usize,
    coeffs: BTreeMap<u32, S>,
}

/// Tangent plus cotangent components of a section of `E ⊗ S`.
#[derive(Clone, PartialEq, Debug)]
pub struct EVector<S> {
    pub tangent: Vec<S>,
    pub cotangent: Vec<S>,
}

impl<S: Ring> EVector<S> {
    pub fn zero(dim: usize) -> Self {
        EVector {
            tangent: vec![S::zero(); dim],
            cotangent: vec![S::zero(); dim],
        }
    }

    pub fn new(tangent: Vec<S>, cotangent: Vec<S>) -> Result<Self> {
        if tangent.len() != cotangent.len() {
            return Err(GctkError::DimensionMismatch {
                expected: tangent.len(),
                found: cotangent.len(),
            });
        }
        Ok(EVector { tangent, cotangent })
    }

    /// `∂_i`.
    pub fn partial(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.tangent[i] = S::one();
        e
    }

    /// `dx^i`.
    pub fn dx(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.cotangent[i] = S::one();
        e
    }

    /// Components in the basis `(∂_0 .. ∂_{d-1}, dx^0 .. dx^{d-1})`.
    pub fn from_flat(v: &[S]) -> Result<Self> {
        if v.len() % 2 == 1 {
            return Err(GctkError::InvalidInput("odd-length E-vector".into()));
        }
        let d = v.len() / 2;
        Ok(EVector {
            tangent: v[..d].to_vec(),
            cotangent: v[d..].to_vec(),
        })
    }

    pub fn to_flat(&self) -> Vec<S> {
        self.tangent
            .iter()
            .chain(&self.cotangent)
            .cloned()
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.tangent.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        EVector {
            tangent: self
                .tangent
                .iter()
                .zip(&rhs.tangent)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
            cotangent: self
                .cotangent
                .iter()
                .zip(&rhs.cotangent)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        EVector {
            tangent: self.tangent.iter().map(|a| a.mul_ref(s)).collect(),
            cotangent: self.cotangent.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tangent
            .iter()
            .chain(&self.cotangent)
            .all(Ring::is_zero)
    }

    /// `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
    pub fn inner(&self, rhs: &Self) -> Result<S> {
        if self.dim() != rhs.dim() {
            return Err(GctkError::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        let mut acc = S::zero();
        for k in 0..self.dim() {
            acc.add_assign_ref(&self.cotangent[k].mul_ref(&rhs.tangent[k]));
            acc.add_assign_ref(&rhs.cotangent[k].mul_ref(&self.tangent[k]));
        }
        Ok(acc.scale_exact(&ExactComplex::from_ratio(1, 2)))
    }

    /// The cotangent part as a 1-form.
    pub fn cotangent_form(&self) -> Multivector<S> {
        let mut f = Multivector::zero_unchecked(self.dim());
        for (i, c) in self.cotangent.iter().enumerate() {
            f.add_term(1 << i, c.clone());
        }
        f
    }
}

impl<S: Conjugate + Ring> EVector<S> {
    pub fn conj(&self) -> Self {
        EVector {
            tangent: self.tangent.iter().map(Conjugate::conj).collect(),
            cotangent: self.cotangent.iter().map(Conjugate::conj).collect(),
        }
    }
}

impl<S: Ring> Multivector<S> {
    fn zero_unchecked(dim: usize) -> Self {
        Multivector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::zero_unchecked(dim))
    }

    pub fn scalar(dim: usize, s: S) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        m.add_term(0, s);
        Ok(m)
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::scalar(dim, S::one())
    }

    /// `s · dx^{i_1} ∧ ... ∧ dx^{i_k}` for the bits of `mask` in ascending order.
    pub fn basis(dim: usize, mask: u32, s: S) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        if mask >> dim != 0 {
            return Err(GctkError::OutOfRange(format!(
                "mask {mask:#b} in dim {dim}"
            )));
        }
        m.add_term(mask, s);
        Ok(m)
    }

    /// `dx^i`.
    pub fn dx(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(GctkError::OutOfRange(format!("dx{i} in dim {dim}")));
        }
        Self::basis(dim, 1 << i, S::one())
    }

    /// `dx^{i_1} ∧ ... ∧ dx^{i_k}` with sign from the given index order.
    pub fn dx_product(dim: usize, idx: &[usize]) -> Result<Self> {
        let mut acc = Self::one(dim)?;
        for &i in idx {
            acc = acc.wedge(&Self::dx(dim, i)?)?;
        }
        Ok(acc)
    }

    /// Top-degree form `dx^0 ∧ ... ∧ dx^{d-1}`.
    pub fn volume(dim: usize) -> Result<Self> {
        Self::basis(dim, (1u32 << dim) - 1, S::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (u32, S)>) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        for (mask, s) in terms {
            if mask >> dim != 0 {
                return Err(GctkError::OutOfRange(format!(
                    "mask {mask:#b} in dim {dim}"
                )));
            }
            m.add_term(mask, s);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &S)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, mask: u32) -> S {
        self.coeffs.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, mask: u32, s: S) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(s);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&s);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(GctkError::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let mut out = self.clone();
        for (m, s) in &rhs.coeffs {
            out.add_term(*m, s.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let mut out = self.clone();
        for (m, s) in &rhs.coeffs {
            out.add_term(*m, s.neg_ref());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_ref)
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero_unchecked(self.dim);
        }
        self.map(|c| c.mul_ref(s))
    }

    pub fn scale_exact(&self, c: &ExactComplex) -> Self {
        if c.is_zero() {
            return Self::zero_unchecked(self.dim);
        }
        self.map(|s| s.scale_exact(c))
    }

    /// Coefficient-wise map; zero results are dropped.
    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Multivector<T> {
        let mut out = Multivector::zero_unchecked(self.dim);
        for (m, s) in &self.coeffs {
            out.add_term(*m, f(s));
        }
        out
    }

    pub fn try_map<T: Ring>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Multivector<T>> {
        let mut out = Multivector::zero_unchecked(self.dim);
        for (m, s) in &self.coeffs {
            out.add_term(*m, f(s)?);
        }
        Ok(out)
    }

    /// Same coefficients in a larger ambient space (new coordinates appended).
    pub fn extend_dim(&self, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if dim < self.dim {
            return Err(GctkError::DimensionMismatch {
                expected: self.dim,
                found: dim,
            });
        }
        Ok(Multivector {
            dim,
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn wedge(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let mut out = Self::zero_unchecked(self.dim);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &rhs.coeffs {
                if ma & mb != 0 {
                    continue;
                }
                let p = ca.mul_ref(cb);
                let p = if wedge_sign(*ma, *mb) { p.neg_ref() } else { p };
                out.add_term(ma | mb, p);
            }
        }
        Ok(out)
    }

    /// `k`-fold wedge power; `a^0 = 1`.
    pub fn wedge_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.dim)?;
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// `ι_X a`.
    pub fn interior(&self, x: &[S]) -> Result<Self> {
        if x.len() != self.dim {
            return Err(GctkError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut out = Self::zero_unchecked(self.dim);
        for (m, c) in &self.coeffs {
            let mut rest = *m;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if x[i].is_zero() {
                    continue;
                }
                let v = c.mul_ref(&x[i]);
                let v = if below(*m, i) % 2 == 1 {
                    v.neg_ref()
                } else {
                    v
                };
                out.add_term(m & !(1 << i), v);
            }
        }
        Ok(out)
    }

    /// `ξ ∧ a` for a 1-form given by components.
    pub fn wedge_covector(&self, xi: &[S]) -> Result<Self> {
        if xi.len() != self.dim {
            return Err(GctkError::DimensionMismatch {
                expected: self.dim,
                found: xi.len(),
            });
        }
        let mut out = Self::zero_unchecked(self.dim);
        for (i, s) in xi.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (m, c) in &self.coeffs {
                if m & (1 << i) != 0 {
                    continue;
                }
                let v = s.mul_ref(c);
                let v = if below(*m, i) % 2 == 1 {
                    v.neg_ref()
                } else {
                    v
                };
                out.add_term(m | (1 << i), v);
            }
        }
        Ok(out)
    }

    /// `(X+ξ)·a = ι_X a + ξ ∧ a`.
    pub fn clifford_act(&self, e: &EVector<S>) -> Result<Self> {
        if e.dim() != self.dim {
            return Err(GctkError::DimensionMismatch {
                expected: self.dim,
                found: e.dim(),
            });
        }
        self.interior(&e.tangent)?
            .add(&self.wedge_covector(&e.cotangent)?)
    }

    pub fn grade_project(&self, k: usize) -> Self {
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, s)| (*m, s.clone()))
                .collect(),
        }
    }

    /// Grades carrying nonzero terms, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self
            .coeffs
            .keys()
            .map(|m| m.count_ones() as usize)
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.grades().len() <= 1
    }

    /// `Σ_j a^j / j!` for a nilpotent even form.
    pub fn exp_even(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(GctkError::Precondition(
                "exp_even needs an even form".into(),
            ));
        }
        if self.coeffs.contains_key(&0) {
            return Err(GctkError::Precondition(
                "exp_even input has a grade-0 component".into(),
            ));
        }
        let mut total = Self::one(self.dim)?;
        let mut power = Self::one(self.dim)?;
        for j in 1.. {
            power = power
                .wedge(self)?
                .scale_exact(&ExactComplex::from_ratio(1, j));
            if power.is_zero() {
                break;
            }
            total = total.add(&power)?;
        }
        Ok(total)
    }

    /// `[a₂∧b₂ − a₀∧b₄ − a₄∧b₀]_vol` on `R^4`.
    pub fn mukai_pair(&self, rhs: &Self) -> Result<S> {
        self.check_same(rhs)?;
        if self.dim != 4 {
            return Err(GctkError::Precondition(format!(
                "Mukai pairing is implemented for dimension 4 only (got {})",
                self.dim
            )));
        }
        if !self.is_even() || !rhs.is_even() {
            return Err(GctkError::Precondition(
                "Mukai pairing needs even forms".into(),
            ));
        }
        let p = |a: &Self, k| a.grade_project(k);
        let top = p(self, 2)
            .wedge(&p(rhs, 2))?
            .sub(&p(self, 0).wedge(&p(rhs, 4))?)?
            .sub(&p(self, 4).wedge(&p(rhs, 0))?)?;
        Ok(top.coefficient(0b1111))
    }

    /// Mask of the first nonzero coefficient in (grade, mask) order.
    pub fn leading_mask(&self) -> Option<u32> {
        self.coeffs
            .keys()
            .min_by_key(|m| (m.count_ones(), **m))
            .copied()
    }

    /// Exact projective comparison: `a·c_b = b·c_a` where `c` is the
    /// coefficient at the leading mask of `a`. Zero is proportional only to zero.
    pub fn proportional(&self, rhs: &Self) -> Result<bool> {
        self.check_same(rhs)?;
        let Some(m) = self.leading_mask() else {
            return Ok(rhs.is_zero());
        };
        let ca = self.coefficient(m);
        let cb = rhs.coefficient(m);
        if cb.is_zero() {
            return Ok(false);
        }
        Ok(self.scale(&cb) == rhs.scale(&ca))
    }

    /// Render terms as `coeff * dx0^dx1`, masks ascending.
    pub fn render_with(&self, coeff: impl Fn(&S) -> String) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(m, s)| {
                let c = coeff(s);
                let c = if needs_parens(&c) {
                    format!("({c})")
                } else {
                    c
                };
                format!("{c} * {}", mask_name(*m))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn needs_parens(c: &str) -> bool {
    c.char_indices()
        .any(|(k, ch)| k > 0 && (ch == '+' || ch == '-' || ch == ' '))
}

/// `dx0^dx3` style name of a basis element; `1` for the empty mask.
pub fn mask_name(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| format!("dx{i}"))
        .collect::<Vec<_>>()
        .join("^")
}

impl<S: Ring + Conjugate> Multivector<S> {
    pub fn conj(&self) -> Self {
        self.map(Conjugate::conj)
    }
}

impl Multivector<ExactComplex> {
    /// Rescale so the leading coefficient (lowest grade, smallest mask) is 1.
    pub fn normalized(&self) -> Result<Self> {
        let m = self
            .leading_mask()
            .ok_or(GctkError::Degenerate("zero form".into()))?;
        Ok(self.scale(&self.coefficient(m).inv()?))
    }

    pub fn to_polynomial(&self) -> Multivector<ParamPolynomial> {
        self.map(|c| ParamPolynomial::constant(c.clone()))
    }
}

impl Multivector<ParamPolynomial> {
    /// Evaluate every coefficient at `values`.
    pub fn eval(&self, values: &[ExactComplex]) -> Result<Multivector<ExactComplex>> {
        self.try_map(|p| p.eval(values))
    }

    pub fn render_vars(&self, vars: &Variables) -> String {
        self.render_with(|p| p.render(vars))
    }
}

impl<S: Ring + fmt::Display> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|s| s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = Multivector<ExactComplex>;

    fn c(v: i64) -> ExactComplex {
        ExactComplex::from_int(v)
    }

    fn dx(d: usize, i: usize) -> M {
        M::dx(d, i).unwrap()
    }

    fn omega_i() -> M {
        dx(4, 0)
            .wedge(&dx(4, 1))
            .unwrap()
            .add(&dx(4, 2).wedge(&dx(4, 3)).unwrap())
            .unwrap()
    }

    #[test]
    fn wedge_examples() {
        let a = dx(4, 0).wedge(&dx(4, 1)).unwrap();
        let b = dx(4, 2).wedge(&dx(4, 3)).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), M::volume(4).unwrap());
        assert!(dx(4, 0).wedge(&dx(4, 0)).unwrap().is_zero());
        let w = omega_i();
        assert_eq!(w.wedge(&w).unwrap(), M::volume(4).unwrap().scale(&c(2)));
        assert!(dx(4, 0).wedge(&dx(6, 1)).is_err());
    }

    #[test]
    fn interior_examples() {
        let a = dx(4, 0).wedge(&dx(4, 1)).unwrap();
        let e0 = [c(1), c(0), c(0), c(0)];
        let e1 = [c(0), c(1), c(0), c(0)];
        assert_eq!(a.interior(&e0).unwrap(), dx(4, 1));
        assert_eq!(a.interior(&e1).unwrap(), dx(4, 0).neg());
    }

    #[test]
    fn clifford_and_grades() {
        let one = M::one(4).unwrap();
        let e = EVector::dx(4, 0);
        assert_eq!(one.clifford_act(&e).unwrap(), dx(4, 0));
        let i = ExactComplex::i();
        let a = one
            .add(&omega_i().scale(&i))
            .unwrap()
            .sub(&M::volume(4).unwrap())
            .unwrap();
        assert_eq!(a.grade_project(2), omega_i().scale(&i));
        assert!(omega_i().grade_project(0).is_zero());
    }

    #[test]
    fn exp_examples() {
        let i = ExactComplex::i();
        let want = M::one(4)
            .unwrap()
            .add(&omega_i().scale(&i))
            .unwrap()
            .sub(&M::volume(4).unwrap())
            .unwrap();
        assert_eq!(omega_i().scale(&i).exp_even().unwrap(), want);
        assert_eq!(M::zero(4).unwrap().exp_even().unwrap(), M::one(4).unwrap());
        assert!(M::one(4).unwrap().exp_even().is_err());
        assert!(dx(4, 0).exp_even().is_err());
        let b = dx(4, 0).wedge(&dx(4, 2)).unwrap();
        let w = omega_i().scale(&i);
        assert_eq!(
            b.add(&w).unwrap().exp_even().unwrap(),
            b.exp_even().unwrap().wedge(&w.exp_even().unwrap()).unwrap()
        );
    }

    #[test]
    fn mukai_examples() {
        let w = omega_i();
        assert_eq!(w.mukai_pair(&w).unwrap(), c(2));
        let u = M::one(4).unwrap().sub(&M::volume(4).unwrap()).unwrap();
        assert_eq!(u.mukai_pair(&u).unwrap(), c(2));
        assert!(dx(4, 0).mukai_pair(&dx(4, 0)).is_err());
        assert!(M::one(6).unwrap().mukai_pair(&M::one(6).unwrap()).is_err());
    }

    #[test]
    fn render() {
        let a = dx(4, 0)
            .wedge(&dx(4, 1))
            .unwrap()
            .scale(&ExactComplex::from_parts(1, 2, -1, 1))
            .add(&M::one(4).unwrap())
            .unwrap();
        assert_eq!(a.to_string(), "1 * 1 + (1/2-1*i) * dx0^dx1");
    }

    fn small() -> impl Strategy<Value = ExactComplex> {
        (-3i64..=3, -3i64..=3).prop_map(|(a, b)| ExactComplex::from_parts(a, 1, b, 2))
    }

    fn form(dim: usize) -> impl Strategy<Value = M> {
        proptest::collection::vec((0u32..(1 << dim), small()), 0..6)
            .prop_map(move |t| M::from_terms(dim, t).unwrap())
    }

    fn homogeneous(dim: usize) -> impl Strategy<Value = M> {
        (0usize..=dim, form(dim)).prop_map(|(k, f)| f.grade_project(k))
    }

    proptest! {
        #[test]
        fn wedge_graded_commutative(a in homogeneous(6), b in homogeneous(6), c3 in form(6)) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            let (ga, gb) = (a.grades().first().copied().unwrap_or(0), b.grades().first().copied().unwrap_or(0));
            let want = if ga * gb % 2 == 1 { ba.neg() } else { ba };
            prop_assert_eq!(ab.clone(), want);
            prop_assert_eq!(ab.wedge(&c3).unwrap(), a.wedge(&b.wedge(&c3).unwrap()).unwrap());
        }

        #[test]
        fn interior_is_derivation(a in homogeneous(6), b in form(6), x in proptest::collection::vec(small(), 6)) {
            let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
            let ga = a.grades().first().copied().unwrap_or(0);
            let t1 = a.interior(&x).unwrap().wedge(&b).unwrap();
            let t2 = a.wedge(&b.interior(&x).unwrap()).unwrap();
            let t2 = if ga % 2 == 1 { t2.neg() } else { t2 };
            prop_assert_eq!(lhs, t1.add(&t2).unwrap());
        }

        #[test]
        fn clifford_relation(a in form(4), t in proptest::collection::vec(small(), 8)) {
            let e = EVector::from_flat(&t).unwrap();
            let twice = a.clifford_act(&e).unwrap().clifford_act(&e).unwrap();
            prop_assert_eq!(twice, a.scale(&e.inner(&e).unwrap()));
        }

        #[test]
        fn mukai_symmetric(a in form(4), b in form(4)) {
            let (a, b) = (even_part(&a), even_part(&b));
            prop_assert_eq!(a.mukai_pair(&b).unwrap(), b.mukai_pair(&a).unwrap());
        }
    }

    fn even_part(a: &M) -> M {
        [0, 2, 4].iter().fold(M::zero(4).unwrap(), |acc, &k| {
            acc.add(&a.grade_project(k)).unwrap()
        })
    }
}
