//! Words in the lattice generator loops: piecewise-straight loops at the
//! basepoint (the lattice origin), written as sequences of `a_j`, `b_j`
//! and their inverses.

use std::fmt;

use thiserror::Error;

use crate::torus::{Generator, LatticeVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("invalid path `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("paths live on tori of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// One step of a path: a lattice generator loop or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathLetter {
    pub generator: Generator,
    pub inverse: bool,
}

impl PathLetter {
    pub fn displacement(&self, g: usize) -> LatticeVector {
        let d = self.generator.displacement(g);
        if self.inverse {
            d.negate()
        } else {
            d
        }
    }
}

impl fmt::Display for PathLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A free word in the 2g generator loops; the empty word is the constant
/// loop at the basepoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWord {
    g: usize,
    letters: Vec<PathLetter>,
}

impl PathWord {
    pub fn empty(g: usize) -> Self {
        Self {
            g,
            letters: Vec::new(),
        }
    }

    pub fn new(g: usize, letters: Vec<PathLetter>) -> Self {
        assert!(
            letters.iter().all(|l| l.generator.index() < g),
            "generator index out of range"
        );
        Self { g, letters }
    }

    pub fn single(g: usize, generator: Generator) -> Self {
        Self::new(
            g,
            vec![PathLetter {
                generator,
                inverse: false,
            }],
        )
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

    pub fn letters(&self) -> &[PathLetter] {
        &self.letters
    }

    /// Displacement of each step, in order.
    pub fn segments(&self) -> impl Iterator<Item = LatticeVector> + '_ {
        self.letters.iter().map(|l| l.displacement(self.g))
    }

    pub fn concat(&self, other: &PathWord) -> Result<PathWord, PathError> {
        if self.g != other.g {
            return Err(PathError::DimensionMismatch(self.g, other.g));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        Ok(PathWord {
            g: self.g,
            letters,
        })
    }

    pub fn inverse(&self) -> PathWord {
        PathWord {
            g: self.g,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| PathLetter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// `self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &PathWord) -> Result<PathWord, PathError> {
        self.concat(other)?
            .concat(&self.inverse())?
            .concat(&other.inverse())
    }

    /// The image in π₁ ≅ ℤ^{2g}: the signed sum of generator displacements.
    pub fn abelianization(&self) -> LatticeVector {
        self.segments()
            .fold(LatticeVector::zero(self.g), |acc, v| acc.add(&v))
    }

    /// The canonical representative loop of a lattice element: powers of
    /// a₁ … a_g followed by powers of b₁ … b_g.
    pub fn canonical(v: &LatticeVector) -> PathWord {
        let g = v.g();
        let mut letters = Vec::new();
        let mut push = |generator: Generator, count: i64| {
            for _ in 0..count.unsigned_abs() {
                letters.push(PathLetter {
                    generator,
                    inverse: count < 0,
                });
            }
        };
        for (j, &m) in v.real.iter().enumerate() {
            push(Generator::real(j), m);
        }
        for (j, &n) in v.imag.iter().enumerate() {
            push(Generator::imaginary(j), n);
        }
        PathWord { g, letters }
    }

    /// Parses whitespace-separated tokens `a<j>`, `b<j>` with optional
    /// `^-1`, e.g. `a1 b1 a1^-1 b1^-1`. The empty string is the constant
    /// loop.
    pub fn parse(g: usize, input: &str) -> Result<PathWord, PathError> {
        let err = |reason: String| PathError::Parse {
            input: input.to_string(),
            reason,
        };
        let mut letters = Vec::new();
        for token in input.split_whitespace() {
            let (body, inverse) = match token.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (token, false),
            };
            let (kind, digits) = match body.split_at(1) {
                ("a", d) => (false, d),
                ("b", d) => (true, d),
                _ => return Err(err(format!("unknown token `{token}`"))),
            };
            let index: usize = digits
                .parse()
                .map_err(|_| err(format!("bad generator index in `{token}`")))?;
            if index == 0 || index > g {
                return Err(err(format!(
                    "generator index {index} out of range for g = {g}"
                )));
            }
            let generator = if kind {
                Generator::imaginary(index - 1)
            } else {
                Generator::real(index - 1)
            };
            letters.push(PathLetter { generator, inverse });
        }
        Ok(PathWord { g, letters })
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "(constant)");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
