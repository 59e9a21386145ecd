//! The model space: the square complex torus X = ℂ^g/(ℤ^g + iℤ^g).
//!
//! On this torus the harmonic forms are exactly the constant-coefficient
//! forms, so harmonicity is guaranteed by construction and the usual
//! analytic conditions ∂ω = 0 and ∂̄ω = 0 hold identically. This is the
//! key modeling reduction of the whole crate: flatness of a connection
//! matrix A of constant forms reduces to A∧A = 0, with no differential
//! equations left to solve.
//!
//! The lattice is fixed to ℤ^g + iℤ^g so that all periods stay in ℚ(i).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{parse_scalar_expr, GaussianRational, ScalarError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("forms live on tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("basis index {index} out of range for g = {g}")]
    IndexOutOfRange { index: usize, g: usize },
    #[error("invalid form `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The square torus of complex dimension `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusSpace {
    g: usize,
}

impl TorusSpace {
    pub fn new(g: usize) -> Self {
        assert!(g >= 1, "complex dimension must be at least 1");
        Self { g }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// First Betti number; also the dimension of the harmonic 1-form space
    /// and the rank of the fundamental group ℤ^{2g}.
    pub fn betti_one(&self) -> usize {
        2 * self.g
    }

    /// The 2g basis letters in the canonical order dz₁ … dz_g, dz̄₁ … dz̄_g.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        let g = self.g;
        (0..g)
            .map(Letter::holomorphic)
            .chain((0..g).map(Letter::antiholomorphic))
    }

    /// The 2g lattice generators a₁ … a_g, b₁ … b_g.
    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        let g = self.g;
        (0..g)
            .map(|j| Generator {
                kind: GeneratorKind::Real,
                index: j,
            })
            .chain((0..g).map(|j| Generator {
                kind: GeneratorKind::Imaginary,
                index: j,
            }))
    }
}

/// A pure basis 1-form: `dz_j` or `dz̄_j` (0-based index, printed 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    kind: LetterKind,
    index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    Holomorphic,
    Antiholomorphic,
}

impl Letter {
    pub fn holomorphic(index: usize) -> Self {
        Self {
            kind: LetterKind::Holomorphic,
            index,
        }
    }

    pub fn antiholomorphic(index: usize) -> Self {
        Self {
            kind: LetterKind::Antiholomorphic,
            index,
        }
    }

    pub fn kind(&self) -> LetterKind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_holomorphic(&self) -> bool {
        self.kind == LetterKind::Holomorphic
    }

    /// Position in the canonical letter order (dz's first, then dz̄'s).
    pub fn flat_index(&self, g: usize) -> usize {
        match self.kind {
            LetterKind::Holomorphic => self.index,
            LetterKind::Antiholomorphic => g + self.index,
        }
    }

    pub fn from_flat_index(flat: usize, g: usize) -> Self {
        if flat < g {
            Self::holomorphic(flat)
        } else {
            Self::antiholomorphic(flat - g)
        }
    }

    /// Value of the letter on a lattice tangent vector; this is the
    /// integral of the (constant) letter along the straight segment with
    /// that displacement.
    pub fn value_on(&self, v: &LatticeVector) -> GaussianRational {
        let re = GaussianRational::from_integer(v.real[self.index]);
        let im = GaussianRational::from_integer(v.imag[self.index]);
        match self.kind {
            LetterKind::Holomorphic => re + GaussianRational::i() * im,
            LetterKind::Antiholomorphic => re - GaussianRational::i() * im,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::Holomorphic => write!(f, "dz{}", self.index + 1),
            LetterKind::Antiholomorphic => write!(f, "dzbar{}", self.index + 1),
        }
    }
}

/// A lattice generator loop based at the origin: `a_j` runs along e_j,
/// `b_j` along i·e_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    kind: GeneratorKind,
    index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    Real,
    Imaginary,
}

impl Generator {
    pub fn real(index: usize) -> Self {
        Self {
            kind: GeneratorKind::Real,
            index,
        }
    }

    pub fn imaginary(index: usize) -> Self {
        Self {
            kind: GeneratorKind::Imaginary,
            index,
        }
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Position in the canonical generator order a₁ … a_g, b₁ … b_g.
    pub fn flat_index(&self, g: usize) -> usize {
        match self.kind {
            GeneratorKind::Real => self.index,
            GeneratorKind::Imaginary => g + self.index,
        }
    }

    pub fn from_flat_index(flat: usize, g: usize) -> Self {
        if flat < g {
            Self::real(flat)
        } else {
            Self::imaginary(flat - g)
        }
    }

    pub fn displacement(&self, g: usize) -> LatticeVector {
        let mut v = LatticeVector::zero(g);
        match self.kind {
            GeneratorKind::Real => v.real[self.index] = 1,
            GeneratorKind::Imaginary => v.imag[self.index] = 1,
        }
        v
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Real => write!(f, "a{}", self.index + 1),
            GeneratorKind::Imaginary => write!(f, "b{}", self.index + 1),
        }
    }
}

/// A displacement in the lattice ℤ^g + iℤ^g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub real: Vec<i64>,
    pub imag: Vec<i64>,
}

impl LatticeVector {
    pub fn zero(g: usize) -> Self {
        Self {
            real: vec![0; g],
            imag: vec![0; g],
        }
    }

    pub fn g(&self) -> usize {
        self.real.len()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            real: self.real.iter().zip(&other.real).map(|(a, b)| a + b).collect(),
            imag: self.imag.iter().zip(&other.imag).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn negate(&self) -> LatticeVector {
        LatticeVector {
            real: self.real.iter().map(|a| -a).collect(),
            imag: self.imag.iter().map(|a| -a).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.real.iter().all(|&a| a == 0) && self.imag.iter().all(|&a| a == 0)
    }
}

/// A constant-coefficient 1-form Σ hol_j dz_j + Σ antihol_j dz̄_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicOneForm {
    g: usize,
    hol: Vec<GaussianRational>,
    antihol: Vec<GaussianRational>,
}

impl HarmonicOneForm {
    pub fn zero(g: usize) -> Self {
        Self {
            g,
            hol: vec![GaussianRational::zero(); g],
            antihol: vec![GaussianRational::zero(); g],
        }
    }

    pub fn from_parts(
        hol: Vec<GaussianRational>,
        antihol: Vec<GaussianRational>,
    ) -> Result<Self, FormError> {
        if hol.len() != antihol.len() {
            return Err(FormError::DimensionMismatch(hol.len(), antihol.len()));
        }
        Ok(Self {
            g: hol.len(),
            hol,
            antihol,
        })
    }

    pub fn letter(g: usize, letter: Letter) -> Self {
        let mut f = Self::zero(g);
        *f.coefficient_mut(letter) = GaussianRational::one();
        f
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn coefficient(&self, letter: Letter) -> &GaussianRational {
        match letter.kind {
            LetterKind::Holomorphic => &self.hol[letter.index],
            LetterKind::Antiholomorphic => &self.antihol[letter.index],
        }
    }

    pub fn coefficient_mut(&mut self, letter: Letter) -> &mut GaussianRational {
        match letter.kind {
            LetterKind::Holomorphic => &mut self.hol[letter.index],
            LetterKind::Antiholomorphic => &mut self.antihol[letter.index],
        }
    }

    /// The nonzero (letter, coefficient) terms in canonical letter order.
    pub fn terms(&self) -> Vec<(Letter, GaussianRational)> {
        TorusSpace::new(self.g)
            .letters()
            .filter_map(|l| {
                let c = self.coefficient(l);
                (!c.is_zero()).then(|| (l, c.clone()))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.hol.iter().all(GaussianRational::is_zero)
            && self.antihol.iter().all(GaussianRational::is_zero)
    }

    pub fn is_type_10(&self) -> bool {
        self.antihol.iter().all(GaussianRational::is_zero)
    }

    pub fn is_type_01(&self) -> bool {
        self.hol.iter().all(GaussianRational::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_g(other)?;
        Ok(Self {
            g: self.g,
            hol: zip_add(&self.hol, &other.hol),
            antihol: zip_add(&self.antihol, &other.antihol),
        })
    }

    pub fn scale(&self, by: &GaussianRational) -> Self {
        Self {
            g: self.g,
            hol: self.hol.iter().map(|c| c * by).collect(),
            antihol: self.antihol.iter().map(|c| c * by).collect(),
        }
    }

    /// Splits into the (1,0)-part and the (0,1)-part; the parts sum back
    /// to the form.
    pub fn type_split(&self) -> (Self, Self) {
        (
            Self {
                g: self.g,
                hol: self.hol.clone(),
                antihol: vec![GaussianRational::zero(); self.g],
            },
            Self {
                g: self.g,
                hol: vec![GaussianRational::zero(); self.g],
                antihol: self.antihol.clone(),
            },
        )
    }

    /// Value of the constant form on a lattice tangent vector. For a
    /// straight segment with displacement `v` this is ∫ of the form.
    pub fn value_on(&self, v: &LatticeVector) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (j, c) in self.hol.iter().enumerate() {
            let z = GaussianRational::from_integer(v.real[j])
                + GaussianRational::i() * GaussianRational::from_integer(v.imag[j]);
            acc = acc + c * &z;
        }
        for (j, c) in self.antihol.iter().enumerate() {
            let z = GaussianRational::from_integer(v.real[j])
                - GaussianRational::i() * GaussianRational::from_integer(v.imag[j]);
            acc = acc + c * &z;
        }
        acc
    }

    /// Period of the form against a lattice generator loop.
    pub fn period(&self, generator: Generator) -> Result<GaussianRational, FormError> {
        if generator.index >= self.g {
            return Err(FormError::IndexOutOfRange {
                index: generator.index + 1,
                g: self.g,
            });
        }
        Ok(self.value_on(&generator.displacement(self.g)))
    }

    /// Exterior product with another 1-form.
    pub fn wedge(&self, other: &Self) -> Result<HarmonicTwoForm, FormError> {
        self.check_same_g(other)?;
        let mut result = HarmonicTwoForm::zero(self.g);
        for (la, ca) in self.terms() {
            for (lb, cb) in other.terms() {
                if la == lb {
                    continue;
                }
                let coeff = &ca * &cb;
                if la < lb {
                    result.accumulate(la, lb, coeff);
                } else {
                    result.accumulate(lb, la, -coeff);
                }
            }
        }
        Ok(result)
    }

    fn check_same_g(&self, other: &Self) -> Result<(), FormError> {
        if self.g != other.g {
            return Err(FormError::DimensionMismatch(self.g, other.g));
        }
        Ok(())
    }
}

fn zip_add(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

/// A constant-coefficient 2-form, stored on the ordered-pair basis
/// (dz_j∧dz_k with j<k, then dz_j∧dz̄_k, then dz̄_j∧dz̄_k with j<k);
/// equivalently all pairs l₁ < l₂ in the canonical letter order.
/// Antisymmetry is encoded by the index normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicTwoForm {
    g: usize,
    coeffs: BTreeMap<(Letter, Letter), GaussianRational>,
}

impl HarmonicTwoForm {
    pub fn zero(g: usize) -> Self {
        Self {
            g,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(g: usize, l1: Letter, l2: Letter) -> Self {
        assert!(l1 < l2, "basis pair must be strictly increasing");
        let mut f = Self::zero(g);
        f.coeffs.insert((l1, l2), GaussianRational::one());
        f
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, l1: Letter, l2: Letter) -> GaussianRational {
        if l1 < l2 {
            self.coeffs.get(&(l1, l2)).cloned().unwrap_or_else(GaussianRational::zero)
        } else if l2 < l1 {
            -self.coefficient(l2, l1)
        } else {
            GaussianRational::zero()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Letter, Letter), &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        if self.g != other.g {
            return Err(FormError::DimensionMismatch(self.g, other.g));
        }
        let mut result = self.clone();
        for (&pair, c) in &other.coeffs {
            result.accumulate(pair.0, pair.1, c.clone());
        }
        Ok(result)
    }

    pub fn scale(&self, by: &GaussianRational) -> Self {
        let mut result = Self::zero(self.g);
        for (&(l1, l2), c) in &self.coeffs {
            result.accumulate(l1, l2, c * by);
        }
        result
    }

    fn accumulate(&mut self, l1: Letter, l2: Letter, coeff: GaussianRational) {
        debug_assert!(l1 < l2);
        let entry = self
            .coeffs
            .entry((l1, l2))
            .or_insert_with(GaussianRational::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.coeffs.remove(&(l1, l2));
        }
    }
}

impl fmt::Display for HarmonicTwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, ((l1, l2), c)) in self.coeffs.iter().enumerate() {
            let basis = format!("{l1}^{l2}");
            write_term(f, k == 0, c, &basis)?;
        }
        Ok(())
    }
}

/// Renders one `coefficient basis` term, pulling the sign out of
/// pure-real and pure-imaginary coefficients and parenthesizing mixed
/// ones; shared by 1-form, 2-form and group-algebra rendering.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &GaussianRational,
    basis: &str,
) -> fmt::Result {
    use num_traits::Signed;

    let pure_negative = (coeff.im().is_zero() && coeff.re().is_negative())
        || (coeff.re().is_zero() && coeff.im().is_negative());
    let (negative, magnitude) = if pure_negative {
        (true, -coeff.clone())
    } else {
        (false, coeff.clone())
    };
    if first {
        if negative {
            write!(f, "-")?;
        }
    } else if negative {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if basis.is_empty() {
        return write!(f, "{magnitude}");
    }
    if magnitude == GaussianRational::one() {
        write!(f, "{basis}")
    } else if magnitude.re().is_zero() || magnitude.im().is_zero() {
        write!(f, "{magnitude} {basis}")
    } else {
        write!(f, "({magnitude}) {basis}")
    }
}

impl fmt::Display for HarmonicOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (letter, coeff)) in terms.iter().enumerate() {
            write_term(f, k == 0, coeff, &letter.to_string())?;
        }
        Ok(())
    }
}

/// Parses the 1-form grammar `term (('+'|'-') term)*` with
/// `term := [scalar] ('dz'|'dzbar') index`, e.g. `dz1 + (2-3i) dzbar2`.
pub fn parse_form(g: usize, input: &str) -> Result<HarmonicOneForm, FormError> {
    let err = |reason: String| FormError::Parse {
        input: input.to_string(),
        reason,
    };
    let mut form = HarmonicOneForm::zero(g);
    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(err("empty form".into()));
    }
    if rest == "0" {
        return Ok(form);
    }
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if !first {
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                negative = true;
                rest = r.trim_start();
            } else {
                return Err(err(format!("expected `+` or `-` before `{rest}`")));
            }
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r.trim_start();
        }
        first = false;

        // optional scalar coefficient
        let mut coeff = GaussianRational::one();
        if let Some(r) = rest.strip_prefix('(') {
            let (value, r2) = parse_scalar_expr(input, r)?;
            let r2 = r2.trim_start();
            let Some(r3) = r2.strip_prefix(')') else {
                return Err(err("missing `)` after scalar".into()));
            };
            coeff = value;
            rest = r3.trim_start();
        } else if rest.starts_with(|c: char| c.is_ascii_digit()) || rest.starts_with('i') {
            // a simple unsigned scalar like `2`, `1/2`, `3i`, `i`;
            // basis tokens start with `d`, so no ambiguity
            let (value, r2) = parse_scalar_expr(input, rest)?;
            coeff = value;
            rest = r2.trim_start();
        }
        if negative {
            coeff = -coeff;
        }

        let kind = if let Some(r) = rest.strip_prefix("dzbar") {
            rest = r;
            LetterKind::Antiholomorphic
        } else if let Some(r) = rest.strip_prefix("dz") {
            rest = r;
            LetterKind::Holomorphic
        } else {
            return Err(err(format!("expected `dz` or `dzbar` at `{rest}`")));
        };
        let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(err(format!("expected basis index at `{rest}`")));
        }
        let index: usize = rest[..digits]
            .parse()
            .map_err(|_| err("basis index overflow".into()))?;
        rest = rest[digits..].trim_start();
        if index == 0 || index > g {
            return Err(FormError::IndexOutOfRange { index, g });
        }
        let letter = match kind {
            LetterKind::Holomorphic => Letter::holomorphic(index - 1),
            LetterKind::Antiholomorphic => Letter::antiholomorphic(index - 1),
        };
        let slot = form.coefficient_mut(letter);
        *slot = slot.clone() + coeff;
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::complex(a, b)
    }

    fn dz(g: usize, j: usize) -> HarmonicOneForm {
        HarmonicOneForm::letter(g, Letter::holomorphic(j))
    }

    fn dzbar(g: usize, j: usize) -> HarmonicOneForm {
        HarmonicOneForm::letter(g, Letter::antiholomorphic(j))
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = dz(1, 0);
        assert!(a.wedge(&a).unwrap().is_zero());
        let b = dzbar(1, 0);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(
            ab.coefficient(Letter::holomorphic(0), Letter::antiholomorphic(0)),
            GaussianRational::one()
        );
        assert_eq!(
            ab.coefficient(Letter::holomorphic(0), Letter::antiholomorphic(0)),
            -ba.coefficient(Letter::holomorphic(0), Letter::antiholomorphic(0))
        );
    }

    #[test]
    fn wedge_bilinear_expansion() {
        // (dz1 + i dzbar2) ∧ dz2 = dz1∧dz2 - i dz2∧dzbar2
        let f = dz(2, 0).add(&dzbar(2, 1).scale(&GaussianRational::i())).unwrap();
        let w = f.wedge(&dz(2, 1)).unwrap();
        assert_eq!(
            w.coefficient(Letter::holomorphic(0), Letter::holomorphic(1)),
            GaussianRational::one()
        );
        assert_eq!(
            w.coefficient(Letter::holomorphic(1), Letter::antiholomorphic(1)),
            -GaussianRational::i()
        );
        assert_eq!(w.terms().count(), 2);
    }

    #[test]
    fn periods_of_basis_letters() {
        let a1 = Generator::real(0);
        let b1 = Generator::imaginary(0);
        assert_eq!(dz(1, 0).period(a1).unwrap(), gr(1, 0));
        assert_eq!(dz(1, 0).period(b1).unwrap(), gr(0, 1));
        assert_eq!(dzbar(1, 0).period(b1).unwrap(), gr(0, -1));
    }

    #[test]
    fn period_is_linear() {
        // period(2 dz1 - 1/3 dzbar1, b1) = 2i + (1/3)i = 7/3 i
        let f = dz(1, 0)
            .scale(&gr(2, 0))
            .add(&dzbar(1, 0).scale(&GaussianRational::rational(-1, 3)))
            .unwrap();
        let expected = GaussianRational::i() * GaussianRational::rational(7, 3);
        assert_eq!(f.period(Generator::imaginary(0)).unwrap(), expected);
    }

    #[test]
    fn period_matrix_is_invertible() {
        use crate::linalg::ExactMatrix;
        for g in 1..=2 {
            let torus = TorusSpace::new(g);
            let letters: Vec<_> = torus.letters().collect();
            let gens: Vec<_> = torus.generators().collect();
            let m = ExactMatrix::from_fn(2 * g, 2 * g, |r, c| {
                HarmonicOneForm::letter(g, letters[r]).period(gens[c]).unwrap()
            });
            assert_eq!(m.rank(), 2 * g);
        }
    }

    #[test]
    fn type_split_recombines() {
        let f = dz(2, 0).add(&dzbar(2, 0).scale(&gr(0, 2))).unwrap();
        let (p, q) = f.type_split();
        assert!(p.is_type_10());
        assert!(q.is_type_01());
        assert_eq!(p.add(&q).unwrap(), f);
        assert_eq!(dz(1, 0).type_split().1, HarmonicOneForm::zero(1));
    }

    #[test]
    fn mismatched_g_is_an_error() {
        assert!(dz(1, 0).wedge(&dz(2, 0)).is_err());
        assert!(dz(1, 0).add(&dz(2, 0)).is_err());
    }

    #[test]
    fn parse_and_render_forms() {
        for text in [
            "dz1",
            "-dz1",
            "dz1 + dzbar1",
            "2 dz1 - 1/3 dzbar1",
            "i dz1",
            "3i dz2 + (2-3i) dzbar2",
            "(1/2+5i) dz1",
        ] {
            let g = 2;
            let f = parse_form(g, text).unwrap();
            assert_eq!(f.to_string(), text, "round trip through `{text}`");
            let again = parse_form(g, &f.to_string()).unwrap();
            assert_eq!(again, f);
        }
        assert_eq!(parse_form(1, "0").unwrap(), HarmonicOneForm::zero(1));
        // like terms merge
        assert_eq!(parse_form(1, "dz1 + dz1").unwrap(), dz(1, 0).scale(&gr(2, 0)));
    }

    #[test]
    fn parse_rejects_bad_forms() {
        assert!(parse_form(1, "dz2").is_err());
        assert!(parse_form(1, "dz0").is_err());
        assert!(parse_form(1, "dw1").is_err());
        assert!(parse_form(1, "dz1 dz1").is_err());
        assert!(parse_form(1, "(2+3i dz1").is_err());
        assert!(parse_form(1, "").is_err());
    }
}
