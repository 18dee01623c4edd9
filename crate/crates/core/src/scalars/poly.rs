use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Conjugate, ExactComplex, Ring};
use crate::error::{GctkError, Result};

/// Maximum number of real indeterminates a polynomial can mention.
pub const MAX_VARS: usize = 24;

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered list of named real indeterminates; index `k` names variable `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(GctkError::OutOfRange(format!(
                "{} variables (max {MAX_VARS})",
                names.len()
            )));
        }
        Ok(Variables { names })
    }

    /// `x0 .. x{dim-1}`.
    pub fn coordinates(dim: usize) -> Result<Self> {
        Self::new((0..dim).map(|k| format!("x{k}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Polynomial in real indeterminates with exact complex coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPolynomial {
    terms: BTreeMap<Monomial, ExactComplex>,
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactComplex) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(ExactComplex::from_int(v))
    }

    pub fn var(v: usize) -> Self {
        assert!(v < MAX_VARS, "variable index {v} out of range");
        Self::term(Monomial::var(v), ExactComplex::from_int(1))
    }

    pub fn term(m: Monomial, c: ExactComplex) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `re_var + i * im_var`, the complex coordinate built from two real ones.
    pub fn complex_var(re_var: usize, im_var: usize) -> Self {
        &Self::var(re_var) + &Self::var(im_var).scale(&ExactComplex::i())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactComplex {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<ExactComplex> {
        match self.terms.len() {
            0 => Some(ExactComplex::default()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &ExactComplex)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest combined degree in the given variables over all terms.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v) as u32).sum())
            .max()
    }

    /// Highest variable index used plus one.
    pub fn var_span(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.0.iter().rposition(|&e| e > 0))
            .map(|k| k + 1)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                v.re += &c.re;
                v.im += &c.im;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient-wise complex conjugate (variables are real).
    pub fn conj(&self) -> Self {
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    pub fn partial(&self, v: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[v] -= 1;
            out.add_term(
                dm,
                c.scale_real(&BigRational::from_integer(BigInt::from(e))),
            );
        }
        out
    }

    /// Wirtinger derivative with respect to `z = x + i y`:
    /// `d/dz = (d/dx - i d/dy) / 2`, `d/dz̄ = (d/dx + i d/dy) / 2`.
    pub fn wirtinger(&self, x: usize, y: usize, conjugate: bool) -> Self {
        let half = ExactComplex::from_ratio(1, 2);
        let i = if conjugate {
            ExactComplex::i()
        } else {
            -ExactComplex::i()
        };
        (&self.partial(x) + &self.partial(y).scale(&i)).scale(&half)
    }

    /// Evaluate with `values[v]` substituted for variable `v`.
    pub fn eval(&self, values: &[ExactComplex]) -> Result<ExactComplex> {
        let span = self.var_span();
        if values.len() < span {
            return Err(GctkError::UnknownVariable(values.len()));
        }
        let mut powers: Vec<Vec<ExactComplex>> = vec![vec![ExactComplex::from_int(1)]; span];
        let mut acc = ExactComplex::default();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(v) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap() * &values[v];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            acc.add_assign_ref(&t);
        }
        Ok(acc)
    }

    /// Evaluate using a name → value assignment. Values must be real.
    pub fn eval_named(
        &self,
        vars: &Variables,
        assignment: &HashMap<String, ExactComplex>,
    ) -> Result<ExactComplex> {
        let span = self.var_span();
        if span > vars.len() {
            return Err(GctkError::UnknownVariable(span - 1));
        }
        let mut values = Vec::with_capacity(span);
        for v in 0..span {
            let name = vars.name(v);
            let used = self.terms.keys().any(|m| m.exponent(v) > 0);
            let val = match assignment.get(name) {
                Some(val) if !val.is_real() => {
                    return Err(GctkError::InvalidInput(format!(
                        "variable `{name}` is real but was assigned {val}"
                    )))
                }
                Some(val) => val.clone(),
                None if used => {
                    return Err(GctkError::InvalidInput(format!(
                        "no value assigned to variable `{name}`"
                    )))
                }
                None => ExactComplex::default(),
            };
            values.push(val);
        }
        self.eval(&values)
    }

    /// Substitute `replacement` for variable `v`.
    pub fn substitute(&self, v: usize, replacement: &ParamPolynomial) -> Self {
        let mut powers = vec![Self::from_int(1)];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * replacement;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[v] = 0;
            let t = Self::term(rest, c.clone());
            out = &out + &(&t * &powers[e]);
        }
        out
    }

    /// Rename variables: variable `v` becomes `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for (v, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[v]] += k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Exact quotient `self / q`, or [`GctkError::NotDivisible`].
    ///
    /// Multivariate division by leading terms in the graded order; the
    /// remainder is zero iff `q` divides `self` in the polynomial ring when
    /// the division never gets stuck on a non-divisible leading term.
    pub fn divide_exact(&self, q: &ParamPolynomial) -> Result<ParamPolynomial> {
        let Some((lm, lc)) = q.leading() else {
            return Err(GctkError::DivisionByZero);
        };
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            let Some(qm) = m.div(lm) else {
                return Err(GctkError::NotDivisible);
            };
            let qc = c * &lc_inv;
            for (m2, c2) in &q.terms {
                rem.add_term(qm.mul(m2), -(c2 * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Text form with the given variable names; terms in ascending order.
    pub fn render(&self, vars: &Variables) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                for v in 0..MAX_VARS {
                    let e = m.exponent(v);
                    if e == 0 {
                        continue;
                    }
                    let name = if v < vars.len() {
                        vars.name(v).to_string()
                    } else {
                        format!("v{v}")
                    };
                    factors.push(if e == 1 { name } else { format!("{name}^{e}") });
                }
                let coeff = format!("({c})");
                if factors.is_empty() {
                    coeff
                } else {
                    format!("{coeff}*{}", factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_VARS).map(|v| format!("v{v}")).collect();
        let vars = Variables { names };
        f.write_str(&self.render(&vars))
    }
}

impl<'a> Add<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPolynomial> for &'a ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let mut out = ParamPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Ring for ParamPolynomial {
    fn zero() -> Self {
        ParamPolynomial::zero()
    }
    fn one() -> Self {
        ParamPolynomial::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_exact(c: &ExactComplex) -> Self {
        ParamPolynomial::constant(c.clone())
    }
    fn scale_exact(&self, c: &ExactComplex) -> Self {
        self.scale(c)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Conjugate for ParamPolynomial {
    fn conj(&self) -> Self {
        ParamPolynomial::conj(self)
    }
}

impl From<ExactComplex> for ParamPolynomial {
    fn from(c: ExactComplex) -> Self {
        ParamPolynomial::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: usize) -> ParamPolynomial {
        ParamPolynomial::var(k)
    }

    #[test]
    fn eval_examples() {
        let vars = Variables::new(["a1", "a2"]).unwrap();
        let p = &(&v(0) * &v(0)) + &(&v(1) * &v(1));
        let mut asg = HashMap::new();
        asg.insert("a1".to_string(), ExactComplex::from_ratio(3, 5));
        asg.insert("a2".to_string(), ExactComplex::from_ratio(4, 5));
        assert_eq!(
            p.eval_named(&vars, &asg).unwrap(),
            ExactComplex::from_int(1)
        );
        assert_eq!(
            ParamPolynomial::zero().eval_named(&vars, &asg).unwrap(),
            ExactComplex::default()
        );
        let q = (&v(0) * &v(1)).partial(0);
        asg.insert("a1".to_string(), ExactComplex::from_int(2));
        asg.insert("a2".to_string(), ExactComplex::from_int(7));
        assert_eq!(
            q.eval_named(&vars, &asg).unwrap(),
            ExactComplex::from_int(7)
        );

        asg.remove("a2");
        assert!(matches!(
            p.eval_named(&vars, &asg),
            Err(GctkError::InvalidInput(_))
        ));
        asg.insert("a2".to_string(), ExactComplex::i());
        assert!(p.eval_named(&vars, &asg).is_err());
    }

    #[test]
    fn division_examples() {
        // a1^2 - b1^2 = (a1 - b1)(a1 + b1)
        let (a1, b1) = (v(0), v(2));
        let p = &(&a1 * &a1) - &(&b1 * &b1);
        let q = &a1 - &b1;
        assert_eq!(p.divide_exact(&q).unwrap(), &a1 + &b1);
        assert_eq!(a1.divide_exact(&b1), Err(GctkError::NotDivisible));
        assert_eq!(
            a1.divide_exact(&ParamPolynomial::zero()),
            Err(GctkError::DivisionByZero)
        );

        // complexified: alpha = a1 + i a2, beta = b1 + i b2
        let alpha = ParamPolynomial::complex_var(0, 1);
        let beta = ParamPolynomial::complex_var(2, 3);
        let diff = &alpha - &beta;
        let sum = &alpha + &beta;
        let p = &(&alpha * &alpha) - &(&beta * &beta);
        assert_eq!(p.divide_exact(&diff).unwrap(), sum);
        assert_eq!(&diff * &sum, p);
    }

    #[test]
    fn wirtinger_holomorphic() {
        let alpha = ParamPolynomial::complex_var(0, 1);
        let p = alpha.pow(3);
        assert!(p.wirtinger(0, 1, true).is_zero());
        let d = p.wirtinger(0, 1, false);
        assert_eq!(d, alpha.pow(2).scale(&ExactComplex::from_int(3)));
        assert!(!alpha.conj().wirtinger(0, 1, true).is_zero());
    }

    #[test]
    fn substitute_and_relabel() {
        let p = &(&v(0) * &v(1)) + &v(0);
        let s = p.substitute(0, &(&v(2) + &ParamPolynomial::from_int(1)));
        let want = &(&(&v(2) + &ParamPolynomial::from_int(1)) * &v(1))
            + &(&v(2) + &ParamPolynomial::from_int(1));
        assert_eq!(s, want);
        assert_eq!(p.relabel(&[3, 4]), &(&v(3) * &v(4)) + &v(3));
    }

    #[test]
    fn render_order() {
        let vars = Variables::new(["a", "b"]).unwrap();
        let p = &(&v(0) * &v(0)) + &ParamPolynomial::from_int(2);
        let p = &p - &v(1).scale(&ExactComplex::from_parts(1, 2, 1, 1));
        assert_eq!(p.render(&vars), "(2) + (-1/2-1*i)*b + (1)*a^2");
    }
}
