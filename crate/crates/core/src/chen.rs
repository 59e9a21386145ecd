//! Chen iterated integrals ∫_γ ω₁…ω_s of constant 1-forms along
//! piecewise-lattice loops.
//!
//! On a single straight segment with displacement v the integral has the
//! closed form (∏_k ω_k(v)) / s!, the ordered-simplex volume times the
//! constant letter values. A path is evaluated by dynamic programming on
//! word prefixes across its segments, which is the concatenation identity
//! ∫_{αβ} ω₁…ω_s = Σ_i ∫_α ω₁…ω_i · ∫_β ω_{i+1}…ω_s applied segment by
//! segment. Everything stays in ℚ(i); there is no quadrature.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group_algebra::GroupAlgebraElement;
use crate::path::PathWord;
use crate::scalar::GaussianRational;
use crate::torus::{HarmonicOneForm, LatticeVector, Letter};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChenError {
    #[error("word and path live on tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error(
        "word of length {len} is not a functional on a algebra truncated at s = {s}"
    )]
    WordTooLong { len: usize, s: usize },
}

/// The integrand ω₁…ω_s of an iterated integral; length 0 is the
/// constant functional 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralWord {
    g: usize,
    letters: Vec<HarmonicOneForm>,
}

impl IntegralWord {
    pub fn empty(g: usize) -> Self {
        Self {
            g,
            letters: Vec::new(),
        }
    }

    pub fn new(g: usize, letters: Vec<HarmonicOneForm>) -> Self {
        assert!(letters.iter().all(|f| f.g() == g), "mixed dimensions");
        Self { g, letters }
    }

    pub fn from_letters(g: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        Self {
            g,
            letters: letters
                .into_iter()
                .map(|l| HarmonicOneForm::letter(g, l))
                .collect(),
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[HarmonicOneForm] {
        &self.letters
    }

    pub fn reversed(&self) -> Self {
        Self {
            g: self.g,
            letters: self.letters.iter().rev().cloned().collect(),
        }
    }

    /// ∫ over the straight segment with displacement `v`:
    /// (∏_k ω_k(v)) / s!. The empty word integrates to 1.
    pub fn integrate_segment(&self, v: &LatticeVector) -> GaussianRational {
        let mut product = GaussianRational::one();
        for form in &self.letters {
            product = product * form.value_on(v);
            if product.is_zero() {
                return product;
            }
        }
        product * factorial_inverse(self.letters.len())
    }

    /// ∫ over a piecewise-lattice loop word.
    pub fn integrate_path(&self, path: &PathWord) -> Result<GaussianRational, ChenError> {
        if path.g() != self.g {
            return Err(ChenError::DimensionMismatch(self.g, path.g()));
        }
        let s = self.letters.len();
        let inverse_factorials: Vec<GaussianRational> =
            (0..=s).map(factorial_inverse).collect();
        // prefix[k] = integral of ω₁…ω_k over the path walked so far
        let mut prefix = vec![GaussianRational::zero(); s + 1];
        prefix[0] = GaussianRational::one();
        for v in path.segments() {
            let values: Vec<GaussianRational> =
                self.letters.iter().map(|f| f.value_on(&v)).collect();
            let mut next = vec![GaussianRational::zero(); s + 1];
            for j in 0..=s {
                // split at k: prefix over the old path, ω_{k+1}…ω_j over v
                let mut acc = GaussianRational::zero();
                let mut tail_product = GaussianRational::one();
                for k in (0..=j).rev() {
                    if !prefix[k].is_zero() {
                        acc = acc
                            + prefix[k].clone() * &tail_product * &inverse_factorials[j - k];
                    }
                    if k > 0 {
                        tail_product = tail_product * &values[k - 1];
                        if tail_product.is_zero() {
                            break;
                        }
                    }
                }
                next[j] = acc;
            }
            prefix = next;
        }
        Ok(prefix[s].clone())
    }

    /// Linear extension of the path integral to the truncated group
    /// algebra: monomials expand into formal combinations of group
    /// elements, each evaluated on its canonical representative loop.
    ///
    /// Well defined on ℂπ₁/J^{s+1} only for words of length ≤ s, since a
    /// word of length ℓ kills J^{ℓ+1}; longer words are rejected.
    pub fn integrate_algebra(
        &self,
        element: &GroupAlgebraElement,
    ) -> Result<GaussianRational, ChenError> {
        if element.g() != self.g {
            return Err(ChenError::DimensionMismatch(self.g, element.g()));
        }
        if self.len() > element.truncation() {
            return Err(ChenError::WordTooLong {
                len: self.len(),
                s: element.truncation(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (point, coeff) in element.group_element_expansion() {
            let value = self.integrate_path(&PathWord::canonical(&point))?;
            acc = acc + coeff * value;
        }
        Ok(acc)
    }
}

/// 1/s! as an exact scalar.
fn factorial_inverse(s: usize) -> GaussianRational {
    let mut f = BigInt::one();
    for k in 2..=s {
        f *= BigInt::from(k);
    }
    GaussianRational::new(
        BigRational::new(BigInt::one(), f),
        BigRational::zero(),
    )
}

/// All shuffles of two words: interleavings preserving the internal
/// order of each. There are C(|a|+|b|, |a|) of them, with multiplicity.
pub fn shuffles(a: &IntegralWord, b: &IntegralWord) -> Vec<IntegralWord> {
    assert_eq!(a.g(), b.g(), "mixed dimensions");
    fn rec(
        out: &mut Vec<Vec<HarmonicOneForm>>,
        current: &mut Vec<HarmonicOneForm>,
        a: &[HarmonicOneForm],
        b: &[HarmonicOneForm],
    ) {
        if a.is_empty() && b.is_empty() {
            out.push(current.clone());
            return;
        }
        if let Some((first, rest)) = a.split_first() {
            current.push(first.clone());
            rec(out, current, rest, b);
            current.pop();
        }
        if let Some((first, rest)) = b.split_first() {
            current.push(first.clone());
            rec(out, current, a, rest);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), a.letters(), b.letters());
    out.into_iter().map(|w| IntegralWord::new(a.g(), w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Generator;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::complex(a, b)
    }

    fn dz(g: usize, j: usize) -> HarmonicOneForm {
        HarmonicOneForm::letter(g, Letter::holomorphic(j))
    }

    fn dzbar(g: usize, j: usize) -> HarmonicOneForm {
        HarmonicOneForm::letter(g, Letter::antiholomorphic(j))
    }

    fn e1(g: usize) -> LatticeVector {
        let mut v = LatticeVector::zero(g);
        v.real[0] = 1;
        v
    }

    /// Independent oracle: evaluates the iterated integral by the
    /// textbook recursion I_k(t) = ∫₀ᵗ I_{k-1}(u) ω_k(γ'(u)) du with
    /// piecewise-polynomial primitives, never using the simplex closed
    /// form or the concatenation identity.
    fn oracle_integrate(word: &IntegralWord, path: &PathWord) -> GaussianRational {
        // a polynomial in the local segment time, exact coefficients
        type Poly = Vec<GaussianRational>;
        fn integrate_poly(p: &Poly) -> Poly {
            let mut out = vec![GaussianRational::zero()];
            for (k, c) in p.iter().enumerate() {
                let denom = GaussianRational::from_integer((k + 1) as i64);
                out.push(c.checked_div(&denom).unwrap());
            }
            out
        }
        fn eval_at_one(p: &Poly) -> GaussianRational {
            p.iter().cloned().sum()
        }

        let s = word.len();
        // values of I_0 … I_s at the start of the current segment
        let mut boundary: Vec<GaussianRational> = vec![GaussianRational::zero(); s + 1];
        boundary[0] = GaussianRational::one();
        for v in path.segments() {
            let mut polys: Vec<Poly> = Vec::with_capacity(s + 1);
            polys.push(vec![GaussianRational::one()]);
            for k in 1..=s {
                let c = word.letters()[k - 1].value_on(&v);
                let scaled: Poly = polys[k - 1].iter().map(|a| a * &c).collect();
                let mut integrated = integrate_poly(&scaled);
                integrated[0] = boundary[k].clone();
                polys.push(integrated);
            }
            for k in 1..=s {
                boundary[k] = eval_at_one(&polys[k]);
            }
        }
        boundary[s].clone()
    }

    #[test]
    fn segment_base_cases() {
        // period of dz1 along e1
        let w = IntegralWord::new(1, vec![dz(1, 0)]);
        assert_eq!(w.integrate_segment(&e1(1)), gr(1, 0));
        // simplex factor: ∫ dz1 dz1 over e1 = 1/2
        let w = IntegralWord::new(1, vec![dz(1, 0), dz(1, 0)]);
        assert_eq!(w.integrate_segment(&e1(1)), GaussianRational::rational(1, 2));
        // mixed types over i·e1: (i · (−i))/2 = 1/2
        let w = IntegralWord::new(1, vec![dz(1, 0), dzbar(1, 0)]);
        let mut v = LatticeVector::zero(1);
        v.imag[0] = 1;
        assert_eq!(w.integrate_segment(&v), GaussianRational::rational(1, 2));
        // empty word integrates to 1
        assert_eq!(
            IntegralWord::empty(1).integrate_segment(&e1(1)),
            GaussianRational::one()
        );
    }

    #[test]
    fn segment_agrees_with_polynomial_oracle() {
        let words = [
            IntegralWord::new(1, vec![dz(1, 0)]),
            IntegralWord::new(1, vec![dz(1, 0), dz(1, 0)]),
            IntegralWord::new(1, vec![dz(1, 0), dzbar(1, 0)]),
            IntegralWord::new(1, vec![dzbar(1, 0), dz(1, 0), dz(1, 0)]),
        ];
        for w in &words {
            for path_text in ["a1", "b1", "a1^-1"] {
                let p = PathWord::parse(1, path_text).unwrap();
                assert_eq!(
                    w.integrate_path(&p).unwrap(),
                    oracle_integrate(w, &p),
                    "word {w:?} along {path_text}"
                );
            }
        }
    }

    #[test]
    fn path_concatenation_example() {
        // ∫ dz1 dz1 over a1 b1 = 1/2 + i + i²/2 = i
        let w = IntegralWord::new(1, vec![dz(1, 0), dz(1, 0)]);
        let p = PathWord::parse(1, "a1 b1").unwrap();
        assert_eq!(w.integrate_path(&p).unwrap(), gr(0, 1));
        // the reversed path gives the same value: the symmetrized word is
        // a homotopy functional and both loops abelianize equally
        let q = PathWord::parse(1, "b1 a1").unwrap();
        assert_eq!(w.integrate_path(&q).unwrap(), gr(0, 1));
        assert_eq!(oracle_integrate(&w, &p), gr(0, 1));
    }

    #[test]
    fn inverse_path_single_letter() {
        let w = IntegralWord::new(1, vec![dz(1, 0)]);
        let p = PathWord::parse(1, "a1^-1").unwrap();
        assert_eq!(w.integrate_path(&p).unwrap(), gr(-1, 0));
    }

    #[test]
    fn two_evaluation_routes_agree() {
        // a1 a1 as one segment 2e1 versus two unit segments
        let w = IntegralWord::new(1, vec![dz(1, 0), dz(1, 0)]);
        let mut two_e1 = LatticeVector::zero(1);
        two_e1.real[0] = 2;
        let via_segment = w.integrate_segment(&two_e1);
        let via_path = w
            .integrate_path(&PathWord::parse(1, "a1 a1").unwrap())
            .unwrap();
        assert_eq!(via_segment, gr(2, 0));
        assert_eq!(via_path, via_segment);
    }

    #[test]
    fn inversion_rule() {
        // ∫_{γ⁻¹} ω₁…ω_s = (−1)^s ∫_γ ω_s…ω_1
        let w = IntegralWord::new(2, vec![dz(2, 0), dzbar(2, 1), dz(2, 1)]);
        let p = PathWord::parse(2, "a1 b2 a2^-1 b1").unwrap();
        let lhs = w.integrate_path(&p.inverse()).unwrap();
        let rhs = -w.reversed().integrate_path(&p).unwrap();
        assert_eq!(lhs, rhs);
        // and a loop against its own inverse integrates to zero
        let round_trip = p.concat(&p.inverse()).unwrap();
        assert!(w.integrate_path(&round_trip).unwrap().is_zero());
    }

    #[test]
    fn algebra_evaluation_examples() {
        // ∫ dz1 on (a1−1)(b1−1) = (1+i) − 1 − i + 0 = 0
        let w = IntegralWord::new(1, vec![dz(1, 0)]);
        let u_a = GroupAlgebraElement::unit(1, 2, Generator::real(0));
        let u_b = GroupAlgebraElement::unit(1, 2, Generator::imaginary(0));
        let product = u_a.multiply(&u_b).unwrap();
        assert!(w.integrate_algebra(&product).unwrap().is_zero());

        // the constant word reads the augmentation, which kills J
        let empty = IntegralWord::empty(1);
        assert!(empty.integrate_algebra(&u_a).unwrap().is_zero());

        // ∫ dz1 dz1 on (a1−1)² = 2 − 2·(1/2)·2 + 0 = 1
        let w2 = IntegralWord::new(1, vec![dz(1, 0), dz(1, 0)]);
        let sq = u_a.multiply(&u_a).unwrap();
        assert_eq!(w2.integrate_algebra(&sq).unwrap(), gr(1, 0));
    }

    #[test]
    fn word_longer_than_truncation_is_rejected() {
        let w = IntegralWord::new(1, vec![dz(1, 0), dz(1, 0)]);
        let u = GroupAlgebraElement::unit(1, 1, Generator::real(0));
        assert_eq!(
            w.integrate_algebra(&u),
            Err(ChenError::WordTooLong { len: 2, s: 1 })
        );
    }

    #[test]
    fn shuffle_relation_on_a_loop() {
        // ∫_γ(w₁)·∫_γ(w₂) = Σ_{shuffles} ∫_γ(shuffle)
        let w1 = IntegralWord::new(1, vec![dz(1, 0)]);
        let w2 = IntegralWord::new(1, vec![dzbar(1, 0), dz(1, 0)]);
        let p = PathWord::parse(1, "a1 b1 a1 b1^-1").unwrap();
        let lhs = w1.integrate_path(&p).unwrap() * w2.integrate_path(&p).unwrap();
        let rhs: GaussianRational = shuffles(&w1, &w2)
            .iter()
            .map(|w| w.integrate_path(&p).unwrap())
            .sum();
        assert_eq!(lhs, rhs);
        assert_eq!(shuffles(&w1, &w2).len(), 3);
    }

    #[test]
    fn j_vanishing() {
        // a word of length ℓ kills any product of ℓ+1 augmentation-ideal
        // factors
        let w = IntegralWord::new(1, vec![dz(1, 0), dzbar(1, 0)]);
        let u_a = GroupAlgebraElement::unit(1, 3, Generator::real(0));
        let u_b = GroupAlgebraElement::unit(1, 3, Generator::imaginary(0));
        let product = u_a
            .multiply(&u_a)
            .unwrap()
            .multiply(&u_b)
            .unwrap();
        assert!(w.integrate_algebra(&product).unwrap().is_zero());
    }
}
