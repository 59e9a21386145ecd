//! Nilpotent flat connections on the trivial bundle over the torus:
//! flatness checking, Chen-series monodromy, the split into holomorphic
//! structure and Higgs field, sub/quotient connections, and the
//! executable equivalences between monodromy factorization and the type
//! of the connection matrix.
//!
//! A connection is a strictly upper-block-triangular matrix A of
//! constant-coefficient 1-forms. Constant coefficients make ∂A = 0 and
//! ∂̄A = 0 automatic, so flatness and the harmonic-bundle conditions
//! both reduce to the single exact check A∧A = 0.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::bar::{BarComplex, BarElement, BarError};
use crate::chen::{ChenError, IntegralWord};
use crate::group_algebra::{monomial_basis, GroupAlgebraElement, Monomial};
use crate::linalg::{ExactMatrix, LinalgError, Subspace};
use crate::path::PathWord;
use crate::scalar::GaussianRational;
use crate::torus::{parse_form, FormError, HarmonicOneForm, HarmonicTwoForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectionError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("connection is not flat: {0}")]
    NotFlat(FlatnessFailure),
    #[error("lower-triangular entry: block ({i}, {j}) is not above the diagonal")]
    LowerTriangular { i: usize, j: usize },
    #[error("entry position out of range: {0}")]
    EntryOutOfRange(String),
    #[error("duplicate entry for block ({i}, {j}) position ({row}, {col})")]
    DuplicateEntry {
        i: usize,
        j: usize,
        row: usize,
        col: usize,
    },
    #[error("truncation {truncation} is too small for nilpotency degree {s}")]
    TruncationTooSmall { s: usize, truncation: usize },
    #[error("ideal lives in a space of dimension {found}, expected {expected}")]
    IdealDimensionMismatch { expected: usize, found: usize },
    #[error("connections live over tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("a single-block connection has no sub or quotient")]
    SingleBlock,
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Chen(#[from] ChenError),
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Where and how A∧A fails to vanish: 1-based block indices and 1-based
/// position inside the block, plus the offending 2-form value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessFailure {
    pub block_row: usize,
    pub block_col: usize,
    pub row: usize,
    pub col: usize,
    pub value: HarmonicTwoForm,
}

impl fmt::Display for FlatnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(A^A) block ({}, {}) entry ({}, {}) = {}",
            self.block_row, self.block_col, self.row, self.col, self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatnessVerdict {
    Flat,
    NotFlat(FlatnessFailure),
}

impl FlatnessVerdict {
    pub fn is_flat(&self) -> bool {
        matches!(self, FlatnessVerdict::Flat)
    }
}

/// A strictly upper-block-triangular matrix of constant 1-forms, the
/// connection form of ∇ = d + A on the trivial bundle of rank Σ r_i.
/// With s+1 blocks, A^{s+1} = 0 and the monodromy factors through
/// J^{s+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    g: usize,
    block_sizes: Vec<usize>,
    entries: Vec<HarmonicOneForm>, // rank × rank, row-major
}

impl Connection {
    pub fn new(g: usize, block_sizes: Vec<usize>) -> Self {
        assert!(!block_sizes.is_empty(), "need at least one block");
        assert!(block_sizes.iter().all(|&r| r >= 1), "blocks are nonempty");
        let rank: usize = block_sizes.iter().sum();
        Self {
            g,
            block_sizes,
            entries: vec![HarmonicOneForm::zero(g); rank * rank],
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn rank(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Nilpotency degree: with s+1 blocks the Chen series stops at ∫A^s.
    pub fn nilpotency(&self) -> usize {
        self.block_sizes.len() - 1
    }

    fn block_offset(&self, block: usize) -> usize {
        self.block_sizes[..block].iter().sum()
    }

    /// The block containing a global index.
    fn block_of(&self, index: usize) -> usize {
        let mut acc = 0;
        for (b, &size) in self.block_sizes.iter().enumerate() {
            acc += size;
            if index < acc {
                return b;
            }
        }
        unreachable!("index within rank")
    }

    pub fn entry(&self, row: usize, col: usize) -> &HarmonicOneForm {
        &self.entries[row * self.rank() + col]
    }

    /// Sets an entry addressed by 0-based block indices and 0-based
    /// position within the block pair; only strictly upper blocks are
    /// writable.
    pub fn set_block_entry(
        &mut self,
        block_row: usize,
        block_col: usize,
        row: usize,
        col: usize,
        form: HarmonicOneForm,
    ) -> Result<(), ConnectionError> {
        if block_row >= self.block_sizes.len() || block_col >= self.block_sizes.len() {
            return Err(ConnectionError::EntryOutOfRange(format!(
                "block ({}, {}) with {} blocks",
                block_row + 1,
                block_col + 1,
                self.block_sizes.len()
            )));
        }
        if block_row >= block_col {
            return Err(ConnectionError::LowerTriangular {
                i: block_row + 1,
                j: block_col + 1,
            });
        }
        if row >= self.block_sizes[block_row] || col >= self.block_sizes[block_col] {
            return Err(ConnectionError::EntryOutOfRange(format!(
                "position ({}, {}) in a {}x{} block",
                row + 1,
                col + 1,
                self.block_sizes[block_row],
                self.block_sizes[block_col]
            )));
        }
        if form.g() != self.g {
            return Err(ConnectionError::DimensionMismatch(self.g, form.g()));
        }
        let r = self.block_offset(block_row) + row;
        let c = self.block_offset(block_col) + col;
        let rank = self.rank();
        self.entries[r * rank + c] = form;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HarmonicOneForm::is_zero)
    }

    /// True when every entry is of type (1,0).
    pub fn is_type_10(&self) -> bool {
        self.entries.iter().all(HarmonicOneForm::is_type_10)
    }

    /// True when every entry is of type (0,1).
    pub fn is_type_01(&self) -> bool {
        self.entries.iter().all(HarmonicOneForm::is_type_01)
    }

    /// Computes A∧A exactly and reports the first nonzero entry, if any.
    /// For constant coefficients this is the whole flatness condition
    /// dA + A∧A = 0 as well as the harmonic-pair condition
    /// ∂̄A + A∧A = 0.
    pub fn check_flat(&self) -> FlatnessVerdict {
        let rank = self.rank();
        for p in 0..rank {
            for q in 0..rank {
                let mut acc = HarmonicTwoForm::zero(self.g);
                for k in 0..rank {
                    let left = self.entry(p, k);
                    let right = self.entry(k, q);
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    let wedge = left.wedge(right).expect("same g by construction");
                    acc = acc.add(&wedge).expect("same g");
                }
                if !acc.is_zero() {
                    let bp = self.block_of(p);
                    let bq = self.block_of(q);
                    return FlatnessVerdict::NotFlat(FlatnessFailure {
                        block_row: bp + 1,
                        block_col: bq + 1,
                        row: p - self.block_offset(bp) + 1,
                        col: q - self.block_offset(bq) + 1,
                        value: acc,
                    });
                }
            }
        }
        FlatnessVerdict::Flat
    }

    fn require_flat(&self) -> Result<(), ConnectionError> {
        match self.check_flat() {
            FlatnessVerdict::Flat => Ok(()),
            FlatnessVerdict::NotFlat(failure) => Err(ConnectionError::NotFlat(failure)),
        }
    }

    /// All entry words of A^ℓ: for each pair of global indices (p, q),
    /// the chains p = k₀ → k₁ → … → k_ℓ = q through nonzero entries,
    /// each contributing the word (A_{k₀k₁}, …, A_{k_{ℓ−1}k_ℓ}).
    pub fn entry_words(&self, length: usize) -> Vec<(usize, usize, Vec<IntegralWord>)> {
        let rank = self.rank();
        let mut out = Vec::new();
        for p in 0..rank {
            for q in 0..rank {
                let mut words = Vec::new();
                let mut chain: Vec<HarmonicOneForm> = Vec::with_capacity(length);
                self.collect_chains(p, q, length, &mut chain, &mut words);
                if !words.is_empty() {
                    out.push((
                        p,
                        q,
                        words
                            .into_iter()
                            .map(|w| IntegralWord::new(self.g, w))
                            .collect(),
                    ));
                }
            }
        }
        out
    }

    /// Entry words for every power ℓ = 1 … s, computed once so repeated
    /// monodromy evaluations share them.
    fn all_entry_words(&self) -> Vec<Vec<(usize, usize, Vec<IntegralWord>)>> {
        (1..=self.nilpotency()).map(|l| self.entry_words(l)).collect()
    }

    fn collect_chains(
        &self,
        from: usize,
        to: usize,
        remaining: usize,
        chain: &mut Vec<HarmonicOneForm>,
        out: &mut Vec<Vec<HarmonicOneForm>>,
    ) {
        if remaining == 0 {
            if from == to {
                out.push(chain.clone());
            }
            return;
        }
        for k in 0..self.rank() {
            let form = self.entry(from, k);
            if form.is_zero() {
                continue;
            }
            chain.push(form.clone());
            self.collect_chains(k, to, remaining - 1, chain, out);
            chain.pop();
        }
    }

    /// Chen-series monodromy ρ(p) = E + ∫A + ∫AA + … + ∫A^s along a
    /// loop word, entry by entry through the iterated-integral
    /// evaluator. Requires flatness — otherwise the series is not a
    /// homotopy functional.
    pub fn monodromy(&self, path: &PathWord) -> Result<ExactMatrix, ConnectionError> {
        self.require_flat()?;
        self.monodromy_with_words(&self.all_entry_words(), path)
    }

    fn monodromy_with_words(
        &self,
        words_by_length: &[Vec<(usize, usize, Vec<IntegralWord>)>],
        path: &PathWord,
    ) -> Result<ExactMatrix, ConnectionError> {
        if path.g() != self.g {
            return Err(ConnectionError::DimensionMismatch(self.g, path.g()));
        }
        let mut m = ExactMatrix::identity(self.rank());
        for entries in words_by_length {
            for (p, q, words) in entries {
                let mut acc = m[(*p, *q)].clone();
                for word in words {
                    acc = acc + word.integrate_path(path)?;
                }
                m[(*p, *q)] = acc;
            }
        }
        Ok(m)
    }

    /// Linear extension ρ̄ of the monodromy to ℂπ₁/J^{s+1}: expands the
    /// element into group elements and sums their monodromies. The
    /// element's truncation must be at least the nilpotency degree.
    pub fn monodromy_on_algebra(
        &self,
        element: &GroupAlgebraElement,
    ) -> Result<ExactMatrix, ConnectionError> {
        self.require_flat()?;
        if element.g() != self.g {
            return Err(ConnectionError::DimensionMismatch(self.g, element.g()));
        }
        if element.truncation() < self.nilpotency() {
            return Err(ConnectionError::TruncationTooSmall {
                s: self.nilpotency(),
                truncation: element.truncation(),
            });
        }
        self.algebra_monodromy_with_words(&self.all_entry_words(), element, &mut BTreeMap::new())
    }

    /// Shared workhorse: the same lattice points recur across expansion
    /// terms, so their monodromies are memoized.
    fn algebra_monodromy_with_words(
        &self,
        words_by_length: &[Vec<(usize, usize, Vec<IntegralWord>)>],
        element: &GroupAlgebraElement,
        cache: &mut BTreeMap<(Vec<i64>, Vec<i64>), ExactMatrix>,
    ) -> Result<ExactMatrix, ConnectionError> {
        let mut acc = ExactMatrix::zero(self.rank(), self.rank());
        for (point, coeff) in element.group_element_expansion() {
            let key = (point.real.clone(), point.imag.clone());
            let image = match cache.get(&key) {
                Some(m) => m,
                None => {
                    let m =
                        self.monodromy_with_words(words_by_length, &PathWord::canonical(&point))?;
                    cache.entry(key).or_insert(m)
                }
            };
            acc = acc.add(&image.scale(&coeff)).expect("same rank");
        }
        Ok(acc)
    }

    /// The first basis vector of the ideal on which ρ̄ fails to vanish,
    /// or `None` when the monodromy factors through the ideal.
    pub fn factorization_violation(
        &self,
        ideal: &Subspace,
    ) -> Result<Option<GroupAlgebraElement>, ConnectionError> {
        self.require_flat()?;
        let s = self.nilpotency();
        let basis = monomial_basis(self.g, s);
        if ideal.ambient_dim() != basis.len() {
            return Err(ConnectionError::IdealDimensionMismatch {
                expected: basis.len(),
                found: ideal.ambient_dim(),
            });
        }
        let words = self.all_entry_words();
        let mut cache = BTreeMap::new();
        for vector in ideal.basis() {
            let element = GroupAlgebraElement::from_coordinates(self.g, s, &basis, vector);
            if !self
                .algebra_monodromy_with_words(&words, &element, &mut cache)?
                .is_zero()
            {
                return Ok(Some(element));
            }
        }
        Ok(None)
    }

    /// Whether ρ̄ vanishes on every basis vector of the ideal.
    pub fn factors_through(&self, ideal: &Subspace) -> Result<bool, ConnectionError> {
        Ok(self.factorization_violation(ideal)?.is_none())
    }

    /// The Simpson-side data: entrywise type split of A into the Higgs
    /// field A^{1,0} and the Dolbeault part A^{0,1} of ∂̄ + A.
    pub fn simpson_split(&self) -> Result<HiggsData, ConnectionError> {
        self.require_flat()?;
        let mut higgs = Connection::new(self.g, self.block_sizes.clone());
        let mut dbar = Connection::new(self.g, self.block_sizes.clone());
        let rank = self.rank();
        for r in 0..rank {
            for c in 0..rank {
                let (p10, p01) = self.entry(r, c).type_split();
                higgs.entries[r * rank + c] = p10;
                dbar.entries[r * rank + c] = p01;
            }
        }
        Ok(HiggsData {
            higgs_field: higgs,
            dbar_part: dbar,
        })
    }

    /// Drops the last block (sub-bundle connection) or the first block
    /// (quotient-bundle connection); both stay flat and one nilpotency
    /// step shorter.
    pub fn sub_quotient(&self, which: SubQuotient) -> Result<Connection, ConnectionError> {
        if self.block_sizes.len() < 2 {
            return Err(ConnectionError::SingleBlock);
        }
        let (kept_blocks, offset) = match which {
            SubQuotient::Sub => (&self.block_sizes[..self.block_sizes.len() - 1], 0),
            SubQuotient::Quotient => (&self.block_sizes[1..], self.block_sizes[0]),
        };
        let mut out = Connection::new(self.g, kept_blocks.to_vec());
        let new_rank = out.rank();
        for r in 0..new_rank {
            for c in 0..new_rank {
                out.entries[r * new_rank + c] = self.entry(r + offset, c + offset).clone();
            }
        }
        Ok(out)
    }

    /// Renders the connection file format; parsing the output
    /// reproduces the connection exactly.
    pub fn render(&self) -> String {
        let mut out = format!("torus g={}\n", self.g);
        out.push_str("blocks");
        for r in &self.block_sizes {
            out.push_str(&format!(" {r}"));
        }
        out.push('\n');
        for (bi, &ri) in self.block_sizes.iter().enumerate() {
            for (bj, &rj) in self.block_sizes.iter().enumerate().skip(bi + 1) {
                for row in 0..ri {
                    for col in 0..rj {
                        let form =
                            self.entry(self.block_offset(bi) + row, self.block_offset(bj) + col);
                        if form.is_zero() {
                            continue;
                        }
                        out.push_str(&format!(
                            "entry {} {} {} {} : {}\n",
                            bi + 1,
                            bj + 1,
                            row + 1,
                            col + 1,
                            form
                        ));
                    }
                }
            }
        }
        out
    }

    /// Parses the line-oriented connection grammar:
    ///
    /// ```text
    /// torus g=<int>
    /// blocks <r1> <r2> ... <rk>
    /// entry <i> <j> <row> <col> : <form-expression>
    /// ```
    ///
    /// Blank lines and `#` comments are skipped; omitted entries are 0.
    pub fn parse(text: &str) -> Result<Connection, ConnectionError> {
        let err = |line: usize, message: String| ConnectionError::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| err(0, "empty connection file".into()))?;
        let g: usize = header
            .strip_prefix("torus g=")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| err(line_no, format!("expected `torus g=<int>`, found `{header}`")))?;
        if g == 0 {
            return Err(err(line_no, "g must be at least 1".into()));
        }

        let (line_no, blocks_line) = lines
            .next()
            .ok_or_else(|| err(line_no, "missing `blocks` line".into()))?;
        let rest = blocks_line
            .strip_prefix("blocks")
            .ok_or_else(|| err(line_no, format!("expected `blocks ...`, found `{blocks_line}`")))?;
        let block_sizes: Vec<usize> = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err(line_no, "block sizes must be positive integers".into()))?;
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(err(line_no, "need at least one nonempty block".into()));
        }

        let mut connection = Connection::new(g, block_sizes);
        let mut seen: BTreeMap<(usize, usize, usize, usize), ()> = BTreeMap::new();
        for (line_no, line) in lines {
            let rest = line
                .strip_prefix("entry")
                .ok_or_else(|| err(line_no, format!("expected `entry ...`, found `{line}`")))?;
            let (head, form_text) = rest
                .split_once(':')
                .ok_or_else(|| err(line_no, "missing `:` before form expression".into()))?;
            let indices: Vec<usize> = head
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| err(line_no, "entry indices must be positive integers".into()))?;
            let [i, j, row, col] = indices[..] else {
                return Err(err(
                    line_no,
                    format!("expected `entry <i> <j> <row> <col> :`, found {} indices", indices.len()),
                ));
            };
            if i == 0 || j == 0 || row == 0 || col == 0 {
                return Err(err(line_no, "entry indices are 1-based".into()));
            }
            if seen.insert((i, j, row, col), ()).is_some() {
                return Err(ConnectionError::DuplicateEntry { i, j, row, col });
            }
            let form = parse_form(g, form_text.trim())
                .map_err(|e| err(line_no, e.to_string()))?;
            connection
                .set_block_entry(i - 1, j - 1, row - 1, col - 1, form)
                .map_err(|e| match e {
                    ConnectionError::Parse { .. } => unreachable!(),
                    other => err(line_no, other.to_string()),
                })?;
        }
        Ok(connection)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubQuotient {
    Sub,
    Quotient,
}

/// The two type-pure halves of a flat connection matrix: the Higgs
/// bundle corresponding to (V, d + A) is (⊕ 𝒜⁰, ∂̄ + A), and A splits
/// into the Higgs field A^{1,0} and the ∂̄-perturbation A^{0,1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiggsData {
    pub higgs_field: Connection,
    pub dbar_part: Connection,
}

impl HiggsData {
    /// The underlying holomorphic bundle of ∂̄ + A is trivial iff A has
    /// no (0,1)-part.
    pub fn underlying_bundle_trivial(&self) -> bool {
        self.dbar_part.is_zero()
    }

    /// The Higgs field of ∂̄ + A is zero iff A has no (1,0)-part.
    pub fn higgs_field_zero(&self) -> bool {
        self.higgs_field.is_zero()
    }
}

/// ρ̄ tabulated on the monomial basis of ℂπ₁/J^{s+1}.
#[derive(Debug, Clone)]
pub struct MonodromyRep {
    rank: usize,
    images: BTreeMap<Monomial, ExactMatrix>,
}

impl MonodromyRep {
    pub fn compute(connection: &Connection) -> Result<Self, ConnectionError> {
        let s = connection.nilpotency();
        let g = connection.g();
        let mut images = BTreeMap::new();
        for monomial in monomial_basis(g, s) {
            let element = GroupAlgebraElement::from_terms(
                g,
                s,
                [(monomial.clone(), GaussianRational::one())],
            );
            images.insert(monomial, connection.monodromy_on_algebra(&element)?);
        }
        Ok(Self {
            rank: connection.rank(),
            images,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, monomial: &Monomial) -> Option<&ExactMatrix> {
        self.images.get(monomial)
    }

    pub fn images(&self) -> impl Iterator<Item = (&Monomial, &ExactMatrix)> {
        self.images.iter()
    }
}

/// The outcome of checking both theorem equivalences plus the
/// d_C-closedness of all diagonal word sums on one flat connection.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    /// ρ̄ vanishes on I.
    pub factors_through_i: bool,
    /// A^{0,1} = 0, i.e. the underlying holomorphic bundle is trivial.
    pub bundle_trivial: bool,
    /// ρ̄ vanishes on Ī.
    pub factors_through_ibar: bool,
    /// A^{1,0} = 0, i.e. the Higgs field is zero.
    pub higgs_zero: bool,
    /// Every entry word sum of every A^ℓ is d_C-closed.
    pub word_sums_closed: bool,
    /// First I-basis vector with nonvanishing image, if any.
    pub violation_i: Option<GroupAlgebraElement>,
    /// First Ī-basis vector with nonvanishing image, if any.
    pub violation_ibar: Option<GroupAlgebraElement>,
}

impl TheoremReport {
    /// Factorization through I ⇔ trivial underlying bundle.
    pub fn theorem_one_agrees(&self) -> bool {
        self.factors_through_i == self.bundle_trivial
    }

    /// Factorization through Ī ⇔ zero Higgs field.
    pub fn theorem_two_agrees(&self) -> bool {
        self.factors_through_ibar == self.higgs_zero
    }

    pub fn all_agree(&self) -> bool {
        self.theorem_one_agrees() && self.theorem_two_agrees() && self.word_sums_closed
    }
}

/// Evaluates both sides of both theorem equivalences on a flat
/// connection, reusing a prebuilt bar complex at the connection's
/// (g, s).
pub fn verify_theorems_with(
    connection: &Connection,
    bar: &BarComplex,
) -> Result<TheoremReport, ConnectionError> {
    assert_eq!(bar.g(), connection.g(), "bar complex at the wrong g");
    assert_eq!(
        bar.truncation(),
        connection.nilpotency(),
        "bar complex at the wrong s"
    );
    let split = connection.simpson_split()?;
    let violation_i = connection.factorization_violation(&bar.ideal(false))?;
    let violation_ibar = connection.factorization_violation(&bar.ideal(true))?;
    let word_sums_closed = diagonal_word_sums_closed(connection)?;
    Ok(TheoremReport {
        factors_through_i: violation_i.is_none(),
        bundle_trivial: split.underlying_bundle_trivial(),
        factors_through_ibar: violation_ibar.is_none(),
        higgs_zero: split.higgs_field_zero(),
        word_sums_closed,
        violation_i,
        violation_ibar,
    })
}

/// As [`verify_theorems_with`], constructing the bar complex on the fly.
pub fn verify_theorems(connection: &Connection) -> Result<TheoremReport, ConnectionError> {
    let bar = BarComplex::new(connection.g(), connection.nilpotency());
    verify_theorems_with(connection, &bar)
}

/// For each ℓ and each matrix position, the sum of the entry words of
/// A^ℓ must be d_C-closed once A∧A = 0 — the bar-level reason every
/// summand ∫A^ℓ of the Chen series is separately a homotopy functional.
pub fn diagonal_word_sums_closed(connection: &Connection) -> Result<bool, ConnectionError> {
    connection.require_flat()?;
    let g = connection.g();
    let s = connection.nilpotency();
    for length in 1..=s {
        for (_, _, words) in connection.entry_words(length) {
            let mut element = BarElement::zero(g, s.max(length));
            for word in words {
                element = element.add(&BarElement::from_forms(g, s.max(length), word.letters())?)?;
            }
            if !element.d_c()?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Letter;
    use num_traits::Zero;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::complex(a, b)
    }

    fn dz1(g: usize) -> HarmonicOneForm {
        HarmonicOneForm::letter(g, Letter::holomorphic(0))
    }

    fn dzbar1(g: usize) -> HarmonicOneForm {
        HarmonicOneForm::letter(g, Letter::antiholomorphic(0))
    }

    /// The smallest interesting connection: blocks (1,1), ω₁₂ = dz1.
    fn j2_connection() -> Connection {
        let mut c = Connection::new(1, vec![1, 1]);
        c.set_block_entry(0, 1, 0, 0, dz1(1)).unwrap();
        c
    }

    fn three_block(omega12: HarmonicOneForm, omega23: HarmonicOneForm) -> Connection {
        let mut c = Connection::new(1, vec![1, 1, 1]);
        c.set_block_entry(0, 1, 0, 0, omega12).unwrap();
        c.set_block_entry(1, 2, 0, 0, omega23).unwrap();
        c
    }

    #[test]
    fn two_blocks_are_always_flat() {
        assert!(j2_connection().check_flat().is_flat());
    }

    #[test]
    fn flatness_catches_a_wedge() {
        let c = three_block(dz1(1), dzbar1(1));
        match c.check_flat() {
            FlatnessVerdict::NotFlat(failure) => {
                assert_eq!((failure.block_row, failure.block_col), (1, 3));
                assert!(!failure.value.is_zero());
            }
            FlatnessVerdict::Flat => panic!("dz1∧dzbar1 should obstruct flatness"),
        }
        // proportional columns are fine
        assert!(three_block(dz1(1), dz1(1)).check_flat().is_flat());
    }

    #[test]
    fn monodromy_of_j2() {
        let c = j2_connection();
        let a1 = PathWord::parse(1, "a1").unwrap();
        let b1 = PathWord::parse(1, "b1").unwrap();
        let rho_a = c.monodromy(&a1).unwrap();
        assert_eq!(rho_a[(0, 1)], gr(1, 0));
        let rho_b = c.monodromy(&b1).unwrap();
        assert_eq!(rho_b[(0, 1)], gr(0, 1));
        // empty word gives the identity
        let id = c.monodromy(&PathWord::empty(1)).unwrap();
        assert_eq!(id, ExactMatrix::identity(2));
    }

    #[test]
    fn monodromy_of_three_blocks() {
        let c = three_block(dz1(1), dz1(1));
        let rho = c.monodromy(&PathWord::parse(1, "a1").unwrap()).unwrap();
        assert_eq!(rho[(0, 1)], gr(1, 0));
        assert_eq!(rho[(1, 2)], gr(1, 0));
        assert_eq!(rho[(0, 2)], GaussianRational::rational(1, 2));
    }

    #[test]
    fn monodromy_requires_flatness() {
        let c = three_block(dz1(1), dzbar1(1));
        let err = c.monodromy(&PathWord::parse(1, "a1").unwrap());
        assert!(matches!(err, Err(ConnectionError::NotFlat(_))));
    }

    #[test]
    fn monodromy_is_multiplicative() {
        let c = three_block(dz1(1), dz1(1));
        let p1 = PathWord::parse(1, "a1 b1").unwrap();
        let p2 = PathWord::parse(1, "b1^-1 a1 a1").unwrap();
        let lhs = c.monodromy(&p1.concat(&p2).unwrap()).unwrap();
        let rhs = c
            .monodromy(&p1)
            .unwrap()
            .mul(&c.monodromy(&p2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn algebra_monodromy_detects_the_ideals() {
        // ρ̄(i·u_a1 − u_b1) = 0 but ρ̄(i·u_a1 + u_b1) = [[0, 2i], [0, 0]]
        let c = j2_connection();
        let bar = BarComplex::new(1, 1);
        let basis = monomial_basis(1, 1);
        let i_vec = GroupAlgebraElement::from_coordinates(
            1,
            1,
            &basis,
            &[gr(0, 0), gr(0, 1), gr(-1, 0)],
        );
        assert!(c.monodromy_on_algebra(&i_vec).unwrap().is_zero());
        let ibar_vec = GroupAlgebraElement::from_coordinates(
            1,
            1,
            &basis,
            &[gr(0, 0), gr(0, 1), gr(1, 0)],
        );
        let image = c.monodromy_on_algebra(&ibar_vec).unwrap();
        assert_eq!(image[(0, 1)], gr(0, 2));

        assert!(c.factors_through(&bar.ideal(false)).unwrap());
        assert!(!c.factors_through(&bar.ideal(true)).unwrap());
    }

    #[test]
    fn truncation_too_small_is_rejected() {
        let c = three_block(dz1(1), dz1(1));
        let small = GroupAlgebraElement::one(1, 1);
        assert!(matches!(
            c.monodromy_on_algebra(&small),
            Err(ConnectionError::TruncationTooSmall { s: 2, truncation: 1 })
        ));
    }

    #[test]
    fn simpson_split_flags() {
        let split = j2_connection().simpson_split().unwrap();
        assert!(split.underlying_bundle_trivial());
        assert!(!split.higgs_field_zero());

        let mut c = Connection::new(1, vec![1, 1]);
        c.set_block_entry(0, 1, 0, 0, dzbar1(1)).unwrap();
        let split = c.simpson_split().unwrap();
        assert!(!split.underlying_bundle_trivial());
        assert!(split.higgs_field_zero());

        let zero = Connection::new(1, vec![1, 1]);
        let split = zero.simpson_split().unwrap();
        assert!(split.underlying_bundle_trivial() && split.higgs_field_zero());
    }

    #[test]
    fn sub_and_quotient_drop_blocks() {
        let c = three_block(dz1(1), dz1(1));
        let sub = c.sub_quotient(SubQuotient::Sub).unwrap();
        assert_eq!(sub, j2_connection());
        let quotient = c.sub_quotient(SubQuotient::Quotient).unwrap();
        assert_eq!(quotient, j2_connection());
        assert!(matches!(
            j2_connection()
                .sub_quotient(SubQuotient::Sub)
                .unwrap()
                .sub_quotient(SubQuotient::Sub),
            Err(ConnectionError::SingleBlock)
        ));
    }

    #[test]
    fn zero_connection_factors_through_everything() {
        let zero = Connection::new(1, vec![1, 1]);
        let bar = BarComplex::new(1, 1);
        assert!(zero.factors_through(&bar.ideal(false)).unwrap());
        assert!(zero.factors_through(&bar.ideal(true)).unwrap());
        assert!(zero
            .factors_through(&crate::group_algebra::j_power(1, 1, 1).unwrap())
            .unwrap());
    }

    #[test]
    fn theorem_report_on_fixed_examples() {
        // pure (1,0): factors through I, bundle trivial; Higgs not zero
        let report = verify_theorems(&j2_connection()).unwrap();
        assert!(report.factors_through_i && report.bundle_trivial);
        assert!(!report.factors_through_ibar && !report.higgs_zero);
        assert!(report.all_agree());

        // mixed type: both factorizations fail
        let mut c = Connection::new(1, vec![1, 1]);
        c.set_block_entry(0, 1, 0, 0, dz1(1).add(&dzbar1(1)).unwrap())
            .unwrap();
        let report = verify_theorems(&c).unwrap();
        assert!(!report.factors_through_i && !report.bundle_trivial);
        assert!(!report.factors_through_ibar && !report.higgs_zero);
        assert!(report.all_agree());
        assert!(report.violation_i.is_some() && report.violation_ibar.is_some());
    }

    #[test]
    fn monodromy_rep_block_support() {
        let c = three_block(dz1(1), dz1(1));
        let rep = MonodromyRep::compute(&c).unwrap();
        // the identity monomial maps to the identity matrix
        assert_eq!(
            rep.image(&Monomial::one(1)).unwrap(),
            &ExactMatrix::identity(3)
        );
        // degree-k monomials are supported at least k blocks above the
        // diagonal (here all blocks have size 1)
        for (monomial, image) in rep.images() {
            let k = monomial.degree();
            for p in 0..3usize {
                for q in 0..3usize {
                    if q < p + k {
                        assert!(
                            image[(p, q)].is_zero(),
                            "u^α of degree {k} hits entry ({p}, {q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_render_round_trip() {
        let text = "torus g=1\nblocks 1 1\nentry 1 2 1 1 : dz1\n";
        let c = Connection::parse(text).unwrap();
        assert_eq!(c, j2_connection());
        assert_eq!(c.render(), text);

        // exact scalar survives
        let text = "torus g=2\nblocks 2 1\nentry 1 2 2 1 : (1/2-3i) dzbar2\n";
        let c = Connection::parse(text).unwrap();
        assert_eq!(c.render(), text);
        let reparsed = Connection::parse(&c.render()).unwrap();
        assert_eq!(reparsed, c);
    }

    #[test]
    fn parse_diagnostics() {
        // lower-triangular entry
        let text = "torus g=1\nblocks 1 1\nentry 2 1 1 1 : dz1\n";
        let err = Connection::parse(text).unwrap_err();
        assert!(err.to_string().contains("lower-triangular"), "{err}");

        // duplicate entry
        let text = "torus g=1\nblocks 1 1\nentry 1 2 1 1 : dz1\nentry 1 2 1 1 : dzbar1\n";
        assert!(matches!(
            Connection::parse(text),
            Err(ConnectionError::DuplicateEntry { .. })
        ));

        // unknown token with position
        let text = "torus g=1\nblocks 1 1\nentry 1 2 1 1 : dq1\n";
        let err = Connection::parse(text).unwrap_err();
        assert!(matches!(err, ConnectionError::Parse { line: 3, .. }), "{err}");

        // bad header
        assert!(Connection::parse("blocks 1 1\n").is_err());
        // out-of-range block index
        let text = "torus g=1\nblocks 1 1\nentry 1 3 1 1 : dz1\n";
        assert!(Connection::parse(text).is_err());
    }

    #[test]
    fn diagonal_word_sums_are_closed_on_flat_connections() {
        assert!(diagonal_word_sums_closed(&j2_connection()).unwrap());
        assert!(diagonal_word_sums_closed(&three_block(dz1(1), dz1(1))).unwrap());
        let mixed = {
            let mut c = Connection::new(1, vec![1, 1]);
            c.set_block_entry(0, 1, 0, 0, dz1(1).add(&dzbar1(1)).unwrap())
                .unwrap();
            c
        };
        assert!(diagonal_word_sums_closed(&mixed).unwrap());
    }
}
