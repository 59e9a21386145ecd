//! Randomized flat connections for the theorem verifier.
//!
//! Flatness A∧A = 0 is enforced by construction where possible and by
//! bounded rejection sampling otherwise:
//!
//! * with two blocks nothing composes, so arbitrary entries are flat;
//! * entries confined to the first block row (or the last block column)
//!   never meet a second nonzero factor;
//! * entries all proportional to one fixed 1-form wedge to zero;
//! * otherwise entries are drawn freely and checked, falling back to the
//!   proportional construction after a bounded number of misses.
//!
//! Each draw is forced into a requested type class — pure (1,0), pure
//! (0,1), or honestly mixed — so both truth values of both theorem
//! equivalences occur across a verification run; cycling
//! [`class_for_trial`] over trial indices gives each class a third of
//! the trials.

use rand::Rng;

use crate::connection::Connection;
use crate::scalar::GaussianRational;
use crate::torus::{HarmonicOneForm, Letter};

/// Bounds for random draws. `r_max` must leave room for `s_max + 1`
/// nonempty blocks.
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub g_max: usize,
    pub s_max: usize,
    pub r_max: usize,
}

impl SamplerConfig {
    pub fn new(g_max: usize, s_max: usize, r_max: usize) -> Self {
        assert!(g_max >= 1 && s_max >= 1);
        assert!(r_max > s_max, "r_max too small for s_max + 1 blocks");
        Self {
            g_max,
            s_max,
            r_max,
        }
    }
}

/// The demanded type of the connection matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecimenClass {
    /// All entries of type (1,0): the underlying bundle must be trivial.
    Holomorphic,
    /// All entries of type (0,1): the Higgs field must be zero.
    Antiholomorphic,
    /// Both parts present somewhere: neither factorization may hold.
    Mixed,
}

/// Round-robin class schedule giving each class a third of the trials.
pub fn class_for_trial(index: usize) -> SpecimenClass {
    match index % 3 {
        0 => SpecimenClass::Holomorphic,
        1 => SpecimenClass::Antiholomorphic,
        _ => SpecimenClass::Mixed,
    }
}

#[derive(Debug, Clone, Copy)]
enum Structure {
    FirstRow,
    LastColumn,
    Proportional,
    Rejection,
}

/// Draws a random flat connection of the demanded class within the
/// configured bounds. The result always has at least one nonzero entry
/// and, for `Mixed`, both a (1,0)- and a (0,1)-part.
pub fn random_flat_connection<R: Rng>(
    rng: &mut R,
    config: &SamplerConfig,
    class: SpecimenClass,
) -> Connection {
    let g = rng.gen_range(1..=config.g_max);
    let s = rng.gen_range(1..=config.s_max);
    let block_sizes = random_blocks(rng, s, config.r_max);

    let structure = match rng.gen_range(0..4) {
        0 => Structure::FirstRow,
        1 => Structure::LastColumn,
        2 => Structure::Proportional,
        _ => Structure::Rejection,
    };

    loop {
        let candidate = match structure {
            Structure::FirstRow => sparse_connection(rng, g, &block_sizes, class, true),
            Structure::LastColumn => sparse_connection(rng, g, &block_sizes, class, false),
            Structure::Proportional => proportional_connection(rng, g, &block_sizes, class),
            Structure::Rejection => rejection_connection(rng, g, &block_sizes, class),
        };
        if class_is_honest(&candidate, class) {
            debug_assert!(candidate.check_flat().is_flat());
            return candidate;
        }
    }
}

fn random_blocks<R: Rng>(rng: &mut R, s: usize, r_max: usize) -> Vec<usize> {
    let mut blocks = vec![1usize; s + 1];
    let r_total = rng.gen_range(s + 1..=r_max);
    for _ in 0..r_total - (s + 1) {
        let b = rng.gen_range(0..blocks.len());
        blocks[b] += 1;
    }
    blocks
}

fn random_scalar<R: Rng>(rng: &mut R) -> GaussianRational {
    let part = |rng: &mut R| {
        let numer = rng.gen_range(-3i64..=3);
        let denom = rng.gen_range(1i64..=2);
        (numer, denom)
    };
    let (re_n, re_d) = part(rng);
    let (im_n, im_d) = part(rng);
    GaussianRational::rational(re_n, re_d)
        + GaussianRational::i() * GaussianRational::rational(im_n, im_d)
}

/// A random form whose letters come only from the class's pool; may be
/// zero.
fn random_form<R: Rng>(rng: &mut R, g: usize, class: SpecimenClass) -> HarmonicOneForm {
    let mut form = HarmonicOneForm::zero(g);
    let (hol, antihol) = match class {
        SpecimenClass::Holomorphic => (true, false),
        SpecimenClass::Antiholomorphic => (false, true),
        SpecimenClass::Mixed => (true, true),
    };
    for j in 0..g {
        if hol && rng.gen_bool(0.7) {
            *form.coefficient_mut(Letter::holomorphic(j)) = random_scalar(rng);
        }
        if antihol && rng.gen_bool(0.7) {
            *form.coefficient_mut(Letter::antiholomorphic(j)) = random_scalar(rng);
        }
    }
    form
}

fn nonzero_form<R: Rng>(rng: &mut R, g: usize, class: SpecimenClass) -> HarmonicOneForm {
    loop {
        let form = random_form(rng, g, class);
        let honest = match class {
            SpecimenClass::Holomorphic => !form.is_zero(),
            SpecimenClass::Antiholomorphic => !form.is_zero(),
            SpecimenClass::Mixed => !form.is_type_10() && !form.is_type_01(),
        };
        if honest {
            return form;
        }
    }
}

/// Entries only in the first block row (or last block column): no two
/// nonzero entries ever compose, so A∧A = 0 for free.
fn sparse_connection<R: Rng>(
    rng: &mut R,
    g: usize,
    blocks: &[usize],
    class: SpecimenClass,
    first_row: bool,
) -> Connection {
    let mut c = Connection::new(g, blocks.to_vec());
    let k = blocks.len();
    let targets: Vec<(usize, usize)> = if first_row {
        (1..k).map(|j| (0, j)).collect()
    } else {
        (0..k - 1).map(|i| (i, k - 1)).collect()
    };
    for (bi, bj) in targets {
        for row in 0..blocks[bi] {
            for col in 0..blocks[bj] {
                if rng.gen_bool(0.6) {
                    c.set_block_entry(bi, bj, row, col, random_form(rng, g, class))
                        .expect("upper block");
                }
            }
        }
    }
    c
}

/// Every entry a scalar multiple of one fixed form; wedges cancel
/// pairwise.
fn proportional_connection<R: Rng>(
    rng: &mut R,
    g: usize,
    blocks: &[usize],
    class: SpecimenClass,
) -> Connection {
    let base = nonzero_form(rng, g, class);
    let mut c = Connection::new(g, blocks.to_vec());
    for bi in 0..blocks.len() {
        for bj in bi + 1..blocks.len() {
            for row in 0..blocks[bi] {
                for col in 0..blocks[bj] {
                    if rng.gen_bool(0.6) {
                        let scaled = base.scale(&random_scalar(rng));
                        c.set_block_entry(bi, bj, row, col, scaled).expect("upper block");
                    }
                }
            }
        }
    }
    c
}

/// Free draws filtered by the exact flatness check; falls back to the
/// proportional construction after a bounded number of misses.
fn rejection_connection<R: Rng>(
    rng: &mut R,
    g: usize,
    blocks: &[usize],
    class: SpecimenClass,
) -> Connection {
    for _ in 0..24 {
        let mut c = Connection::new(g, blocks.to_vec());
        for bi in 0..blocks.len() {
            for bj in bi + 1..blocks.len() {
                for row in 0..blocks[bi] {
                    for col in 0..blocks[bj] {
                        if rng.gen_bool(0.5) {
                            c.set_block_entry(bi, bj, row, col, random_form(rng, g, class))
                                .expect("upper block");
                        }
                    }
                }
            }
        }
        if c.check_flat().is_flat() {
            return c;
        }
    }
    proportional_connection(rng, g, blocks, class)
}

fn class_is_honest(c: &Connection, class: SpecimenClass) -> bool {
    match class {
        SpecimenClass::Holomorphic => c.is_type_10() && !c.is_zero(),
        SpecimenClass::Antiholomorphic => c.is_type_01() && !c.is_zero(),
        SpecimenClass::Mixed => !c.is_type_10() && !c.is_type_01(),
    }
}
