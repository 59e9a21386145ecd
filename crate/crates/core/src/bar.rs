//! The reduced bar construction at level s, its combinatorial and
//! internal differentials, the strictly closed classes standing in for
//! H⁰(B_s), the Hodge/conjugate/weight filtrations, their duals on
//! ℂπ₁/J^{s+1} under the Chen pairing, and the ideals I and Ī.
//!
//! With translation-invariant letters every form is closed, so d_I
//! vanishes identically and homotopy functionals can be produced by
//! strict d_C-closedness alone: symmetrizing a word over all distinct
//! permutations kills every wedge pair. The symmetrized classes, one per
//! letter multiset of size ≤ s, span a space of dimension C(2g+s, s)
//! that pairs perfectly with ℂπ₁/J^{s+1} — the pairing matrix is
//! exactly invertible — so no further classes can exist and the
//! strict-closedness model of H⁰(B_s) is adequate, verified rather than
//! assumed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::chen::{ChenError, IntegralWord};
use crate::group_algebra::{monomial_basis, GroupAlgebraElement, Monomial};
use crate::linalg::{ExactMatrix, LinalgError, Subspace};
use crate::path::PathWord;
use crate::scalar::GaussianRational;
use crate::torus::{HarmonicOneForm, Letter};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BarError {
    #[error("operation requires pure 1-form letters, found a degree-{0} slot")]
    NonPureLetter(usize),
    #[error("elements live over tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("word of length {len} exceeds the bar truncation {s}")]
    TruncationExceeded { len: usize, s: usize },
    #[error(transparent)]
    Chen(#[from] ChenError),
}

/// One tensor slot of a bar word: a wedge of distinct basis letters in
/// increasing order. Degree 1 slots are the pure letters; a degree-2
/// slot is a basis 2-form produced by d_C.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarSlot {
    letters: Vec<Letter>,
}

impl BarSlot {
    pub fn one_form(letter: Letter) -> Self {
        Self {
            letters: vec![letter],
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        assert!(!letters.is_empty(), "slots have degree at least 1");
        assert!(
            letters.windows(2).all(|w| w[0] < w[1]),
            "slot letters must be strictly increasing"
        );
        Self { letters }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_one_form(&self) -> bool {
        self.letters.len() == 1
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Exterior product; `None` when a letter repeats. The sign counts
    /// the transpositions needed to sort the concatenation.
    pub fn wedge(&self, other: &BarSlot) -> Option<(BarSlot, i32)> {
        let mut inversions = 0u32;
        for x in &self.letters {
            for y in &other.letters {
                if x == y {
                    return None;
                }
                if x > y {
                    inversions += 1;
                }
            }
        }
        let mut letters: Vec<Letter> = self
            .letters
            .iter()
            .chain(&other.letters)
            .copied()
            .collect();
        letters.sort();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((BarSlot { letters }, sign))
    }
}

impl fmt::Display for BarSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "^")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A tensor word [ω₁|…|ω_s]; the empty word is the constant class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    slots: Vec<BarSlot>,
}

impl BarWord {
    pub fn empty() -> Self {
        Self { slots: Vec::new() }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Self {
            slots: letters.into_iter().map(BarSlot::one_form).collect(),
        }
    }

    pub fn from_slots(slots: Vec<BarSlot>) -> Self {
        Self { slots }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[BarSlot] {
        &self.slots
    }

    pub fn is_pure(&self) -> bool {
        self.slots.iter().all(BarSlot::is_one_form)
    }

    /// The letters of a pure word, or the degree of the first bad slot.
    pub fn pure_letters(&self) -> Result<Vec<Letter>, BarError> {
        self.slots
            .iter()
            .map(|s| {
                if s.is_one_form() {
                    Ok(s.letters[0])
                } else {
                    Err(BarError::NonPureLetter(s.degree()))
                }
            })
            .collect()
    }
}

impl fmt::Display for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "1");
        }
        write!(f, "[")?;
        for (k, s) in self.slots.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// A formal linear combination of bar words of length ≤ s over ℚ(i),
/// kept in normal form (zero coefficients pruned).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarElement {
    g: usize,
    s: usize,
    terms: BTreeMap<BarWord, GaussianRational>,
}

impl BarElement {
    pub fn zero(g: usize, s: usize) -> Self {
        Self {
            g,
            s,
            terms: BTreeMap::new(),
        }
    }

    /// The constant class 1 (the empty word).
    pub fn constant(g: usize, s: usize) -> Self {
        let mut e = Self::zero(g, s);
        e.terms.insert(BarWord::empty(), GaussianRational::one());
        e
    }

    pub fn from_word(g: usize, s: usize, word: BarWord) -> Result<Self, BarError> {
        if word.len() > s {
            return Err(BarError::TruncationExceeded { len: word.len(), s });
        }
        let mut e = Self::zero(g, s);
        e.accumulate(word, GaussianRational::one());
        Ok(e)
    }

    /// Expands a word of arbitrary constant 1-forms into pure-letter
    /// words multilinearly.
    pub fn from_forms(g: usize, s: usize, forms: &[HarmonicOneForm]) -> Result<Self, BarError> {
        if forms.len() > s {
            return Err(BarError::TruncationExceeded { len: forms.len(), s });
        }
        for f in forms {
            if f.g() != g {
                return Err(BarError::DimensionMismatch(g, f.g()));
            }
        }
        let mut e = Self::zero(g, s);
        let empty: Vec<(Vec<Letter>, GaussianRational)> =
            vec![(Vec::new(), GaussianRational::one())];
        let expanded = forms.iter().fold(empty, |acc, form| {
            let mut next = Vec::new();
            for (letters, coeff) in &acc {
                for (letter, c) in form.terms() {
                    let mut ls = letters.clone();
                    ls.push(letter);
                    next.push((ls, coeff * &c));
                }
            }
            next
        });
        for (letters, coeff) in expanded {
            e.accumulate(BarWord::from_letters(letters), coeff);
        }
        Ok(e)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn truncation(&self) -> usize {
        self.s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, BarError> {
        if self.g != other.g {
            return Err(BarError::DimensionMismatch(self.g, other.g));
        }
        let mut out = self.clone();
        out.s = self.s.max(other.s);
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, by: &GaussianRational) -> Self {
        let mut out = Self::zero(self.g, self.s);
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), c * by);
        }
        out
    }

    /// The combinatorial differential d_C, restricted to pure-letter
    /// input; it merges adjacent letters into 2-form slots. Words with a
    /// higher-degree slot are rejected — apply [`Self::d_c_total`] for
    /// the unrestricted differential.
    pub fn d_c(&self) -> Result<Self, BarError> {
        for w in self.terms.keys() {
            w.pure_letters()?;
        }
        Ok(self.d_c_total())
    }

    /// d_C on arbitrary tensor words (slots of any degree), with the
    /// involution J(ω) = (−1)^{deg ω} ω applied to the letters before the
    /// merge point. This is the map the identity d_C² = 0 lives on.
    pub fn d_c_total(&self) -> Self {
        let mut out = Self::zero(self.g, self.s);
        for (word, coeff) in &self.terms {
            let slots = word.slots();
            for j in 0..slots.len().saturating_sub(1) {
                let Some((merged, wedge_sign)) = slots[j].wedge(&slots[j + 1]) else {
                    continue;
                };
                // (−1)^{i+1} for the 1-based position, times J on every
                // slot up to and including the merge point
                let mut sign = if j % 2 == 0 { 1 } else { -1 };
                for slot in &slots[..=j] {
                    if slot.degree() % 2 == 1 {
                        sign = -sign;
                    }
                }
                sign *= wedge_sign;
                let mut new_slots: Vec<BarSlot> = Vec::with_capacity(slots.len() - 1);
                new_slots.extend_from_slice(&slots[..j]);
                new_slots.push(merged);
                new_slots.extend_from_slice(&slots[j + 2..]);
                let term = if sign < 0 {
                    -coeff.clone()
                } else {
                    coeff.clone()
                };
                out.accumulate(BarWord::from_slots(new_slots), term);
            }
        }
        out
    }

    /// The internal differential d_I applies d letterwise; every letter
    /// here is a constant-coefficient form, hence closed, so d_I is
    /// identically zero. Kept as an operation so the double-complex
    /// identities can be stated and tested.
    pub fn d_i(&self) -> Self {
        Self::zero(self.g, self.s)
    }

    /// Evaluates the element as an iterated-integral functional on a
    /// loop word. Requires pure letters.
    pub fn evaluate_on_path(&self, path: &PathWord) -> Result<GaussianRational, BarError> {
        let mut acc = GaussianRational::zero();
        for (word, coeff) in &self.terms {
            let letters = word.pure_letters()?;
            let integral = IntegralWord::from_letters(self.g, letters);
            acc = acc + coeff * &integral.integrate_path(path)?;
        }
        Ok(acc)
    }

    /// Evaluates the element on a truncated group-algebra element.
    pub fn evaluate_on_algebra(
        &self,
        element: &GroupAlgebraElement,
    ) -> Result<GaussianRational, BarError> {
        let mut acc = GaussianRational::zero();
        for (word, coeff) in &self.terms {
            let letters = word.pure_letters()?;
            let integral = IntegralWord::from_letters(self.g, letters);
            acc = acc + coeff * &integral.integrate_algebra(element)?;
        }
        Ok(acc)
    }

    fn accumulate(&mut self, word: BarWord, coeff: GaussianRational) {
        debug_assert!(word.len() <= self.s);
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(word.clone())
            .or_insert_with(GaussianRational::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }
}

impl fmt::Display for BarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            crate::torus::write_term(f, k == 0, c, &w.to_string())?;
        }
        Ok(())
    }
}

/// Sum over all distinct permutations of a pure-letter word, coefficient
/// 1 each. The output is d_C-closed: the two orders of any adjacent pair
/// cancel against each other (or wedge to zero when equal).
pub fn symmetrize(g: usize, s: usize, word: &BarWord) -> Result<BarElement, BarError> {
    let letters = word.pure_letters()?;
    if word.len() > s {
        return Err(BarError::TruncationExceeded { len: word.len(), s });
    }
    // multiset as (letter, multiplicity) pairs
    let mut counts: BTreeMap<Letter, u32> = BTreeMap::new();
    for l in letters {
        *counts.entry(l).or_insert(0) += 1;
    }
    let mut element = BarElement::zero(g, s);
    let total: u32 = counts.values().sum();
    let mut current: Vec<Letter> = Vec::with_capacity(total as usize);
    fn rec(
        element: &mut BarElement,
        counts: &mut BTreeMap<Letter, u32>,
        current: &mut Vec<Letter>,
        remaining: u32,
    ) {
        if remaining == 0 {
            element.accumulate(
                BarWord::from_letters(current.iter().copied()),
                GaussianRational::one(),
            );
            return;
        }
        let letters: Vec<Letter> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&l, _)| l)
            .collect();
        for l in letters {
            *counts.get_mut(&l).unwrap() -= 1;
            current.push(l);
            rec(element, counts, current, remaining - 1);
            current.pop();
            *counts.get_mut(&l).unwrap() += 1;
        }
    }
    rec(&mut element, &mut counts, &mut current, total);
    Ok(element)
}

/// One step of a filtration on the invariant classes, reported with its
/// label, level and the subspace in invariant-class coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationReport {
    pub label: FiltrationLabel,
    pub level: i64,
    pub space: Subspace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiltrationLabel {
    Hodge,
    ConjugateHodge,
    Weight,
}

impl fmt::Display for FiltrationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationLabel::Hodge => write!(f, "F"),
            FiltrationLabel::ConjugateHodge => write!(f, "Fbar"),
            FiltrationLabel::Weight => write!(f, "W"),
        }
    }
}

/// One basis class of the invariant space: the symmetrization of a
/// letter multiset, recorded with its multiplicity vector over the 2g
/// letters in canonical order.
#[derive(Debug, Clone)]
pub struct InvariantClass {
    multiplicities: Vec<u32>,
    element: BarElement,
}

impl InvariantClass {
    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn element(&self) -> &BarElement {
        &self.element
    }

    /// Word length of the class (size of the multiset).
    pub fn length(&self) -> usize {
        self.multiplicities.iter().map(|&m| m as usize).sum()
    }

    /// Number of holomorphic letters (dz's), counted with multiplicity.
    pub fn holomorphic_count(&self, g: usize) -> usize {
        self.multiplicities[..g].iter().map(|&m| m as usize).sum()
    }

    pub fn antiholomorphic_count(&self, g: usize) -> usize {
        self.multiplicities[g..].iter().map(|&m| m as usize).sum()
    }
}

/// The strictly closed invariant classes of length ≤ s with their Chen
/// pairing against ℂπ₁/J^{s+1}.
///
/// Rows of the pairing are indexed by the classes, columns by the
/// monomial basis of the group algebra, both in the same graded order,
/// so the matrix is square of size C(2g+s, s) and exactly invertible.
#[derive(Debug, Clone)]
pub struct BarComplex {
    g: usize,
    s: usize,
    classes: Vec<InvariantClass>,
    monomials: Vec<Monomial>,
    pairing: ExactMatrix,
}

impl BarComplex {
    pub fn new(g: usize, s: usize) -> Self {
        let monomials = monomial_basis(g, s);
        let classes: Vec<InvariantClass> = monomials
            .iter()
            .map(|m| {
                let letters = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .flat_map(|(j, &e)| {
                        std::iter::repeat_n(Letter::from_flat_index(j, g), e as usize)
                    })
                    .collect::<Vec<_>>();
                let word = BarWord::from_letters(letters);
                let element = symmetrize(g, s, &word).expect("multisets fit the truncation");
                InvariantClass {
                    multiplicities: m.exponents().to_vec(),
                    element,
                }
            })
            .collect();
        let n = classes.len();
        let pairing = ExactMatrix::from_fn(n, n, |r, c| {
            let target = GroupAlgebraElement::from_terms(
                g,
                s,
                [(monomials[c].clone(), GaussianRational::one())],
            );
            classes[r]
                .element
                .evaluate_on_algebra(&target)
                .expect("invariant classes are pure and short enough")
        });
        Self {
            g,
            s,
            classes,
            monomials,
            pairing,
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn truncation(&self) -> usize {
        self.s
    }

    /// The symmetrized-monomial basis of the invariant space, one class
    /// per letter multiset of size ≤ s; dimension C(2g+s, s).
    pub fn classes(&self) -> &[InvariantClass] {
        &self.classes
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The Chen pairing matrix: entry (k, a) is the class k integrated
    /// over the monomial u^a.
    pub fn pairing(&self) -> &ExactMatrix {
        &self.pairing
    }

    /// F^p (or conjugate 𝐅̄^p): the span of classes whose multiset
    /// contains at least p holomorphic (resp. antiholomorphic) letters.
    pub fn hodge_filtration(&self, p: i64, conjugate: bool) -> FiltrationReport {
        let coords = self.classes.iter().enumerate().filter_map(|(k, class)| {
            let count = if conjugate {
                class.antiholomorphic_count(self.g)
            } else {
                class.holomorphic_count(self.g)
            };
            (count as i64 >= p).then_some(k)
        });
        FiltrationReport {
            label: if conjugate {
                FiltrationLabel::ConjugateHodge
            } else {
                FiltrationLabel::Hodge
            },
            level: p,
            space: Subspace::coordinate(self.dim(), coords),
        }
    }

    /// W_l: the span of classes of word length at most l.
    pub fn weight_filtration(&self, l: i64) -> FiltrationReport {
        let coords = self
            .classes
            .iter()
            .enumerate()
            .filter_map(|(k, class)| (class.length() as i64 <= l).then_some(k));
        FiltrationReport {
            label: FiltrationLabel::Weight,
            level: l,
            space: Subspace::coordinate(self.dim(), coords),
        }
    }

    /// Transports a filtration step to the group-algebra side: the
    /// annihilator of the step under the Chen pairing, a subspace of
    /// ℂπ₁/J^{s+1} in monomial coordinates.
    pub fn dual_filtration(&self, report: &FiltrationReport) -> Result<Subspace, LinalgError> {
        report.space.annihilator(&self.pairing)
    }

    /// F^q(ℂπ₁/J^{s+1}) = {c | Φ(c) = 0 for all Φ ∈ F^{1−q} H⁰}.
    pub fn dual_hodge(&self, q: i64, conjugate: bool) -> Result<Subspace, LinalgError> {
        self.dual_filtration(&self.hodge_filtration(1 - q, conjugate))
    }

    /// W_l(ℂπ₁/J^{s+1}) = {c | Φ(c) = 0 for all Φ ∈ W_{−1−l} H⁰};
    /// it coincides with the J-adic filtration, W_{−m} = J^m.
    pub fn dual_weight(&self, l: i64) -> Result<Subspace, LinalgError> {
        self.dual_filtration(&self.weight_filtration(-1 - l))
    }

    /// The ideal I = Σ_{k=1}^{s} J^k ∩ F^{1−k}(ℂπ₁/J^{s+1}), or Ī with
    /// the conjugate filtration. Monodromies killing I are exactly those
    /// of connections with trivial underlying holomorphic bundle;
    /// monodromies killing Ī those with zero Higgs field.
    pub fn ideal(&self, conjugate: bool) -> Subspace {
        let n = self.dim();
        let mut acc = Subspace::zero(n);
        for k in 1..=self.s {
            let jk = crate::group_algebra::j_power(self.g, self.s, k).expect("k ≤ s");
            let dual = self
                .dual_hodge(1 - k as i64, conjugate)
                .expect("pairing dimensions match");
            let step = jk.intersect(&dual).expect("same ambient");
            acc = acc.sum(&step).expect("same ambient");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::j_power;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::complex(a, b)
    }

    fn dz(j: usize) -> Letter {
        Letter::holomorphic(j)
    }

    fn dzbar(j: usize) -> Letter {
        Letter::antiholomorphic(j)
    }

    #[test]
    fn d_c_on_short_words() {
        // length-1 words are closed
        let e = BarElement::from_word(1, 2, BarWord::from_letters([dz(0)])).unwrap();
        assert!(e.d_c().unwrap().is_zero());

        // d_C[dz1|dzbar1] = −[dz1∧dzbar1]
        let e = BarElement::from_word(1, 2, BarWord::from_letters([dz(0), dzbar(0)])).unwrap();
        let d = e.d_c().unwrap();
        let expected_word =
            BarWord::from_slots(vec![BarSlot::from_letters(vec![dz(0), dzbar(0)])]);
        let terms: Vec<_> = d.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0], (&expected_word, &gr(-1, 0)));

        // the symmetrized pair is closed
        let flipped =
            BarElement::from_word(1, 2, BarWord::from_letters([dzbar(0), dz(0)])).unwrap();
        let sym = e.add(&flipped).unwrap();
        assert!(sym.d_c().unwrap().is_zero());
    }

    #[test]
    fn d_c_rejects_two_form_slots() {
        let word = BarWord::from_slots(vec![BarSlot::from_letters(vec![dz(0), dzbar(0)])]);
        let e = BarElement::from_word(1, 2, word).unwrap();
        assert_eq!(e.d_c(), Err(BarError::NonPureLetter(2)));
    }

    #[test]
    fn d_c_squared_vanishes_on_sample_words() {
        let words = [
            vec![dz(0), dzbar(0), dz(1)],
            vec![dz(0), dz(1), dzbar(0), dzbar(1)],
            vec![dzbar(1), dz(0), dzbar(0), dz(0)],
        ];
        for letters in words {
            let e = BarElement::from_word(2, 4, BarWord::from_letters(letters)).unwrap();
            let dd = e.d_c().unwrap().d_c_total();
            assert!(dd.is_zero(), "d_C² ≠ 0 on {e}");
        }
    }

    #[test]
    fn d_i_vanishes() {
        let e = BarElement::from_word(2, 2, BarWord::from_letters([dz(0), dz(1)])).unwrap();
        assert!(e.d_i().is_zero());
        assert!(BarElement::zero(2, 2).d_i().is_zero());
    }

    #[test]
    fn symmetrize_examples() {
        let single = symmetrize(1, 1, &BarWord::from_letters([dz(0)])).unwrap();
        assert_eq!(single.terms().count(), 1);

        let pair = symmetrize(1, 2, &BarWord::from_letters([dz(0), dzbar(0)])).unwrap();
        assert_eq!(pair.terms().count(), 2);
        assert!(pair.d_c().unwrap().is_zero());

        // repeated letters: three distinct arrangements of {dz,dz,dzbar}
        let triple = symmetrize(1, 3, &BarWord::from_letters([dz(0), dz(0), dzbar(0)])).unwrap();
        assert_eq!(triple.terms().count(), 3);
        assert!(triple.d_c().unwrap().is_zero());
    }

    #[test]
    fn invariant_space_dimensions() {
        assert_eq!(BarComplex::new(1, 1).dim(), 3);
        assert_eq!(BarComplex::new(1, 2).dim(), 6);
        assert_eq!(BarComplex::new(2, 1).dim(), 5);
        for class in BarComplex::new(2, 2).classes() {
            assert!(class.element().d_c().unwrap().is_zero());
            assert!(class.element().d_i().is_zero());
        }
    }

    #[test]
    fn pairing_matrix_g1_s1() {
        let bar = BarComplex::new(1, 1);
        let expected = ExactMatrix::from_rows(vec![
            vec![gr(1, 0), gr(0, 0), gr(0, 0)],
            vec![gr(0, 0), gr(1, 0), gr(0, 1)],
            vec![gr(0, 0), gr(1, 0), gr(0, -1)],
        ]);
        assert_eq!(bar.pairing(), &expected);
    }

    #[test]
    fn pairing_is_invertible() {
        for (g, s) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
            let bar = BarComplex::new(g, s);
            assert_eq!(bar.pairing().rank(), bar.dim(), "(g, s) = ({g}, {s})");
        }
    }

    #[test]
    fn hodge_filtration_examples() {
        let bar = BarComplex::new(1, 2);
        // only [dz1|dz1] has two holomorphic letters
        let f2 = bar.hodge_filtration(2, false);
        assert_eq!(f2.space.dim(), 1);
        let class_index = bar
            .classes()
            .iter()
            .position(|c| c.multiplicities() == [2, 0])
            .unwrap();
        assert!(f2
            .space
            .contains(&unit_vector(bar.dim(), class_index)));
        // F⁰ is everything, F^{s+1} is zero
        assert_eq!(bar.hodge_filtration(0, false).space.dim(), bar.dim());
        assert!(bar.hodge_filtration(3, false).space.is_zero());

        let bar11 = BarComplex::new(1, 1);
        let fbar1 = bar11.hodge_filtration(1, true);
        assert_eq!(fbar1.space.dim(), 1);
        assert!(fbar1.space.contains(&unit_vector(3, 2)));
    }

    #[test]
    fn weight_filtration_examples() {
        let bar = BarComplex::new(1, 2);
        assert_eq!(bar.weight_filtration(0).space.dim(), 1);
        assert_eq!(bar.weight_filtration(1).space.dim(), 3);
        assert_eq!(bar.weight_filtration(2).space.dim(), 6);
        assert!(bar.weight_filtration(-1).space.is_zero());
    }

    #[test]
    fn filtrations_are_monotone() {
        let bar = BarComplex::new(2, 2);
        for p in 0..=2 {
            assert!(bar
                .hodge_filtration(p + 1, false)
                .space
                .is_subspace_of(&bar.hodge_filtration(p, false).space));
            assert!(bar
                .weight_filtration(p)
                .space
                .is_subspace_of(&bar.weight_filtration(p + 1).space));
        }
        // F^p ∩ 𝐅̄^q = 0 once p + q > s
        for (p, q) in [(2, 1), (1, 2), (2, 2)] {
            let f = bar.hodge_filtration(p, false);
            let fbar = bar.hodge_filtration(q, true);
            assert!(f.space.intersect(&fbar.space).unwrap().is_zero());
        }
    }

    #[test]
    fn dual_hodge_matches_period_kernel() {
        // F⁰(ℂπ₁/J²) = ℂ·1 ⊕ span{i·u_a1 − u_b1}: the annihilator of ∫dz1
        let bar = BarComplex::new(1, 1);
        let f0 = bar.dual_hodge(0, false).unwrap();
        let expected = Subspace::from_vectors(
            3,
            vec![
                vec![gr(1, 0), gr(0, 0), gr(0, 0)],
                vec![gr(0, 0), gr(0, 1), gr(-1, 0)],
            ],
        );
        assert_eq!(f0, expected);
        // F^{−s} is everything
        assert_eq!(bar.dual_hodge(-1, false).unwrap(), Subspace::full(3));
        // F^1 is zero: nothing in the algebra is killed by all of H⁰
        assert!(bar.dual_hodge(1, false).unwrap().is_zero());
    }

    #[test]
    fn dual_weight_equals_j_adic() {
        for (g, s) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let bar = BarComplex::new(g, s);
            for m in 0..=s {
                let dual = bar.dual_weight(-(m as i64)).unwrap();
                let jm = j_power(g, s, m).unwrap();
                assert_eq!(dual, jm, "W_{{-{m}}} vs J^{m} at (g, s) = ({g}, {s})");
            }
        }
    }

    #[test]
    fn ideals_at_g1_s1() {
        let bar = BarComplex::new(1, 1);
        let ideal_i = bar.ideal(false);
        assert_eq!(ideal_i.dim(), 1);
        assert!(ideal_i.contains(&[gr(0, 0), gr(0, 1), gr(-1, 0)]));
        let ideal_bar = bar.ideal(true);
        assert_eq!(ideal_bar.dim(), 1);
        assert!(ideal_bar.contains(&[gr(0, 0), gr(0, 1), gr(1, 0)]));
        // together with the constants they span the whole 3-space
        let with_constants = ideal_i
            .sum(&ideal_bar)
            .unwrap()
            .sum(&Subspace::coordinate(3, [0]))
            .unwrap();
        assert_eq!(with_constants.dim(), 3);
    }

    #[test]
    fn invariant_classes_are_homotopy_functionals() {
        let bar = BarComplex::new(1, 2);
        let p = PathWord::parse(1, "a1 b1 a1").unwrap();
        let q = PathWord::parse(1, "b1 a1 a1").unwrap();
        let commutator = PathWord::parse(1, "a1 b1 a1^-1 b1^-1").unwrap();
        for class in bar.classes() {
            let on_p = class.element().evaluate_on_path(&p).unwrap();
            let on_q = class.element().evaluate_on_path(&q).unwrap();
            assert_eq!(on_p, on_q, "class {} not invariant", class.element());
            if class.length() >= 1 {
                assert!(class
                    .element()
                    .evaluate_on_path(&commutator)
                    .unwrap()
                    .is_zero());
            }
        }
    }

    fn unit_vector(dim: usize, k: usize) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); dim];
        v[k] = GaussianRational::one();
        v
    }
}
