//! The truncated group algebra ℂπ₁(X,x)/J^{s+1} for π₁ ≅ ℤ^{2g}.
//!
//! Since the fundamental group is abelian, the quotient is the truncated
//! polynomial ring ℂ[u_1, …, u_{2g}]/(degree > s), where u_j stands for
//! g_j − 1 and g_1 … g_{2g} are the standard loops a₁ … a_g, b₁ … b_g.
//! The monomial basis {u^α : |α| ≤ s} in graded order is the coordinate
//! system for all filtration linear algebra downstream: the power J^k of
//! the augmentation ideal is literally the coordinate subspace of
//! monomials of degree ≥ k.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::Subspace;
use crate::path::PathWord;
use crate::scalar::GaussianRational;
use crate::torus::{Generator, LatticeVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("truncation orders differ ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("elements live over tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("power {k} out of range (truncation s = {s})")]
    PowerOutOfRange { k: usize, s: usize },
}

/// A monomial u^α in the 2g variables u_{a1} … u_{ag}, u_{b1} … u_{bg}.
///
/// Ordered by total degree, then by exponent vector with earlier
/// variables dominating, so the basis starts 1, u_{a1}, …, u_{bg},
/// u_{a1}², u_{a1}u_{a2}, …
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(g: usize) -> Self {
        Self {
            exps: vec![0; 2 * g],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        assert!(exps.len() % 2 == 0, "need 2g exponents");
        Self { exps }
    }

    /// The variable u_j for the generator with the given flat index.
    pub fn variable(g: usize, flat_index: usize) -> Self {
        let mut m = Self::one(g);
        m.exps[flat_index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let g = self.exps.len() / 2;
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "u_{}", Generator::from_flat_index(j, g))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree ≤ s in 2g variables, in the canonical graded
/// order. Its length is C(2g+s, s).
pub fn monomial_basis(g: usize, s: usize) -> Vec<Monomial> {
    let mut all = Vec::new();
    let mut current = vec![0u32; 2 * g];
    fn rec(all: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
        if var == current.len() {
            all.push(Monomial {
                exps: current.clone(),
            });
            return;
        }
        for e in 0..=remaining {
            current[var] = e;
            rec(all, current, var + 1, remaining - e);
        }
        current[var] = 0;
    }
    rec(&mut all, &mut current, 0, s as u32);
    all.sort();
    all
}

/// Index of each monomial in [`monomial_basis`], for coordinate vectors.
pub fn monomial_index(g: usize, s: usize) -> BTreeMap<Monomial, usize> {
    monomial_basis(g, s)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// An element of ℂπ₁(X,x)/J^{s+1} in the monomial coordinate system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    g: usize,
    s: usize,
    coeffs: BTreeMap<Monomial, GaussianRational>,
}

impl GroupAlgebraElement {
    pub fn zero(g: usize, s: usize) -> Self {
        Self {
            g,
            s,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(g: usize, s: usize) -> Self {
        let mut e = Self::zero(g, s);
        e.coeffs.insert(Monomial::one(g), GaussianRational::one());
        e
    }

    /// The generator difference u_j = g_j − 1.
    pub fn unit(g: usize, s: usize, generator: Generator) -> Self {
        let mut e = Self::zero(g, s);
        if s >= 1 {
            e.coeffs.insert(
                Monomial::variable(g, generator.flat_index(g)),
                GaussianRational::one(),
            );
        }
        e
    }

    pub fn from_terms(
        g: usize,
        s: usize,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Self {
        let mut e = Self::zero(g, s);
        for (m, c) in terms {
            e.accumulate(m, c);
        }
        e
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn truncation(&self) -> usize {
        self.s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.coeffs.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// ε: sums the group-element coefficients, i.e. reads off the
    /// degree-0 coordinate. Its kernel is the augmentation ideal J.
    pub fn augmentation(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.g))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, by: &GaussianRational) -> Self {
        let mut out = Self::zero(self.g, self.s);
        for (m, c) in &self.coeffs {
            out.accumulate(m.clone(), c * by);
        }
        out
    }

    pub fn negate(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    /// Truncated commutative product; J^a · J^b lands in J^{a+b}.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.g, self.s);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                let m = ma.mul(mb);
                if m.degree() <= self.s {
                    out.accumulate(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// The algebra embedding of a loop word: g_j ↦ 1 + u_j, inverses via
    /// the truncated geometric series. Factors through abelianization.
    pub fn embed(path: &PathWord, s: usize) -> Self {
        let g = path.g();
        let mut acc = Self::one(g, s);
        for letter in path.letters() {
            let u = Self::unit(g, s, letter.generator);
            let factor = if letter.inverse {
                // (1+u)⁻¹ = Σ (−u)^k in the truncated ring
                let mut sum = Self::one(g, s);
                let mut power = Self::one(g, s);
                let minus_u = u.negate();
                for _ in 1..=s {
                    power = power.multiply(&minus_u).expect("same truncation");
                    sum = sum.add(&power).expect("same truncation");
                }
                sum
            } else {
                Self::one(g, s).add(&u).expect("same truncation")
            };
            acc = acc.multiply(&factor).expect("same truncation");
        }
        acc
    }

    /// Rewrites the element as a formal combination of group elements,
    /// expanding every monomial ∏ (g_j − 1)^{α_j} by the binomial theorem.
    /// The lattice points all have nonnegative coordinates.
    pub fn group_element_expansion(&self) -> Vec<(LatticeVector, GaussianRational)> {
        let mut acc: BTreeMap<Vec<i64>, GaussianRational> = BTreeMap::new();
        for (m, c) in &self.coeffs {
            let alpha = m.exponents();
            // iterate over all β ≤ α componentwise
            let mut beta = vec![0u32; alpha.len()];
            loop {
                let mut coeff = c.clone();
                let mut sign_exp = 0u32;
                for (a, b) in alpha.iter().zip(&beta) {
                    sign_exp += a - b;
                    let binom = binomial(BigInt::from(*a), BigInt::from(*b));
                    coeff = coeff * GaussianRational::new(
                        BigRational::from_integer(binom),
                        BigRational::zero(),
                    );
                }
                if sign_exp % 2 == 1 {
                    coeff = -coeff;
                }
                let key: Vec<i64> = beta.iter().map(|&b| b as i64).collect();
                let slot = acc.entry(key).or_insert_with(GaussianRational::zero);
                *slot = slot.clone() + coeff;

                // advance β odometer-style
                let mut pos = 0;
                loop {
                    if pos == beta.len() {
                        break;
                    }
                    if beta[pos] < alpha[pos] {
                        beta[pos] += 1;
                        break;
                    }
                    beta[pos] = 0;
                    pos += 1;
                }
                if pos == beta.len() {
                    break;
                }
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(key, c)| {
                let (real, imag) = key.split_at(self.g);
                (
                    LatticeVector {
                        real: real.to_vec(),
                        imag: imag.to_vec(),
                    },
                    c,
                )
            })
            .collect()
    }

    /// Coordinates with respect to [`monomial_basis`] at this (g, s).
    pub fn to_coordinates(&self, index: &BTreeMap<Monomial, usize>) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); index.len()];
        for (m, c) in &self.coeffs {
            v[index[m]] = c.clone();
        }
        v
    }

    pub fn from_coordinates(
        g: usize,
        s: usize,
        basis: &[Monomial],
        coords: &[GaussianRational],
    ) -> Self {
        Self::from_terms(
            g,
            s,
            basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }

    fn accumulate(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert!(m.exponents().len() == 2 * self.g);
        debug_assert!(m.degree() <= self.s, "monomial beyond truncation");
        if c.is_zero() {
            return;
        }
        let slot = self
            .coeffs
            .entry(m.clone())
            .or_insert_with(GaussianRational::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.g != other.g {
            return Err(AlgebraError::DimensionMismatch(self.g, other.g));
        }
        if self.s != other.s {
            return Err(AlgebraError::TruncationMismatch(self.s, other.s));
        }
        Ok(())
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let basis = if m.degree() == 0 {
                String::new()
            } else {
                m.to_string()
            };
            crate::torus::write_term(f, k == 0, c, &basis)?;
        }
        Ok(())
    }
}

/// The coordinate subspace J^k ⊆ ℂπ₁/J^{s+1}: monomials of degree ≥ k.
/// `k = 0` is the full space, `k = s+1` is zero.
pub fn j_power(g: usize, s: usize, k: usize) -> Result<Subspace, AlgebraError> {
    if k > s + 1 {
        return Err(AlgebraError::PowerOutOfRange { k, s });
    }
    let basis = monomial_basis(g, s);
    let coords = basis
        .iter()
        .enumerate()
        .filter(|(_, m)| m.degree() >= k)
        .map(|(i, _)| i);
    Ok(Subspace::coordinate(basis.len(), coords))
}

/// The full J-adic chain J⁰ ⊇ J¹ ⊇ … ⊇ J^{s+1} = 0 as coordinate
/// subspaces.
#[derive(Debug, Clone)]
pub struct JFiltration {
    s: usize,
    steps: Vec<Subspace>,
}

impl JFiltration {
    pub fn new(g: usize, s: usize) -> Self {
        let steps = (0..=s + 1)
            .map(|k| j_power(g, s, k).expect("k in range"))
            .collect();
        Self { s, steps }
    }

    pub fn truncation(&self) -> usize {
        self.s
    }

    /// J^k; every k beyond the truncation is the zero space.
    pub fn step(&self, k: usize) -> &Subspace {
        &self.steps[k.min(self.s + 1)]
    }
}
