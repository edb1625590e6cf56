//! Group presentations and affine monodromy representations.
//!
//! A representation assigns to each generator a triple `(T, lambda, theta)`:
//! an integer matrix `T` with determinant +-1, an integer translation
//! covector `lambda`, and a GF(2) sign covector `theta`. Covectors compose by
//! the twisted rule
//!
//! ```text
//! T(w1 w2)      = T(w2) * T(w1)
//! lambda(w1 w2) = lambda(w2) * T(w1) + lambda(w1)
//! theta(w1 w2)  = theta(w2) * (T(w1) mod 2) + theta(w1)
//! ```
//!
//! i.e. a concatenated path runs through `w1` first and transports the second
//! covector by the first matrix. [`h1_theta`] computes the space of sign
//! assignments compatible with the relations (cocycles) modulo the shifts
//! `theta(g) -> theta(g) + phi * T(g) + phi` (coboundaries), which is the
//! GF(2) group cohomology classifying the genuinely different sign data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{gf2_solve, Gf2Matrix, Gf2Vector, IntMatrix, IntVector, LinalgError};

/// Errors from presentation and representation handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("empty generator name")]
    EmptyGeneratorName,
    #[error("duplicate generator name {name:?}")]
    DuplicateGenerator { name: String },
    #[error("unknown generator {name:?}")]
    UnknownGenerator { name: String },
    #[error("letter references generator index {index}, but there are only {count} generators")]
    LetterOutOfRange { index: usize, count: usize },
    #[error("cannot parse word token {token:?} (expected \"name\" or \"name^-1\")")]
    BadToken { token: String },
    #[error("presentation has {names} generators but {triples} triples were supplied")]
    GeneratorCountMismatch { names: usize, triples: usize },
    #[error("generator {name:?} has data of the wrong rank (expected {expected})")]
    RankMismatch { name: String, expected: usize },
    #[error("generator {name:?} is invalid: {source}")]
    BadGenerator {
        name: String,
        #[source]
        source: LinalgError,
    },
    #[error("direction and conormal must pair to zero (got {pairing})")]
    ShearNotParallel { pairing: i64 },
    #[error(
        "relation {index} does not close up at the matrix level; \
         sign cohomology is only defined once the linear parts satisfy the relations"
    )]
    LinearPartBroken { index: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One letter of a word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// A word in the generators, leftmost letter traversed first.
pub type Word = Vec<Letter>;

/// A finitely presented group: named generators and relation words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Word>,
    /// True when the relations are unknown rather than empty: consumers treat
    /// the group as free but remember that this is only part of the story.
    pub partial: bool,
}

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        relations: Vec<Word>,
        partial: bool,
    ) -> Result<Self, MonodromyError> {
        let mut seen = std::collections::BTreeSet::new();
        for name in &generators {
            if name.is_empty() {
                return Err(MonodromyError::EmptyGeneratorName);
            }
            if !seen.insert(name) {
                return Err(MonodromyError::DuplicateGenerator { name: name.clone() });
            }
        }
        for relation in &relations {
            for letter in relation {
                if letter.gen >= generators.len() {
                    return Err(MonodromyError::LetterOutOfRange {
                        index: letter.gen,
                        count: generators.len(),
                    });
                }
            }
        }
        Ok(Presentation {
            generators,
            relations,
            partial,
        })
    }

    /// The fundamental group of a sphere with `k` punctures filled back in:
    /// generators `g1..gk` (one loop per marked point) subject to the single
    /// relation `g1 g2 ... gk = 1`.
    pub fn sphere_presentation(k: usize) -> Presentation {
        let generators: Vec<String> = (1..=k).map(|i| format!("g{i}")).collect();
        let relation: Word = (0..k)
            .map(|gen| Letter {
                gen,
                inverse: false,
            })
            .collect();
        Presentation {
            generators,
            relations: vec![relation],
            partial: false,
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parse tokens like `"g2"` or `"g2^-1"` into a word.
    pub fn word_from_names<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Word, MonodromyError> {
        tokens
            .iter()
            .map(|token| {
                let token = token.as_ref();
                let (name, inverse) = match token.strip_suffix("^-1") {
                    Some(name) => (name, true),
                    None => {
                        if token.contains('^') {
                            return Err(MonodromyError::BadToken {
                                token: token.to_string(),
                            });
                        }
                        (token, false)
                    }
                };
                let gen =
                    self.generator_index(name)
                        .ok_or_else(|| MonodromyError::UnknownGenerator {
                            name: name.to_string(),
                        })?;
                Ok(Letter { gen, inverse })
            })
            .collect()
    }

    /// Render a word back into tokens.
    pub fn word_to_names(&self, word: &Word) -> Vec<String> {
        word.iter()
            .map(|l| {
                let name = &self.generators[l.gen];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect()
    }
}

/// The value of a loop: matrix part, translation covector, sign covector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineTriple {
    pub t: IntMatrix,
    pub lambda: IntVector,
    pub theta: Gf2Vector,
}

impl AffineTriple {
    pub fn identity(rank: usize) -> Self {
        AffineTriple {
            t: IntMatrix::identity(rank),
            lambda: IntVector::zeros(rank),
            theta: Gf2Vector::zeros(rank),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_identity() && self.lambda.is_zero() && self.theta.is_zero()
    }

    /// Value of the concatenation "run `self` first, then `next`".
    pub fn then(&self, next: &AffineTriple) -> Result<AffineTriple, MonodromyError> {
        let t = next.t.mat_mul(&self.t)?;
        let lambda = next.lambda.mul_mat(&self.t)?.add(&self.lambda)?;
        let theta = next.theta.mul_mat(&self.t.mod2())?.add(&self.theta)?;
        Ok(AffineTriple { t, lambda, theta })
    }

    /// Value of the reversed loop.
    pub fn inverse(&self) -> Result<AffineTriple, MonodromyError> {
        let t_inv = self.t.unimodular_inverse()?;
        let lambda = self.lambda.mul_mat(&t_inv)?.neg()?;
        let theta = self.theta.mul_mat(&t_inv.mod2())?;
        Ok(AffineTriple {
            t: t_inv,
            lambda,
            theta,
        })
    }
}

/// The shear attached to a local singular fiber: identity plus the outer
/// product of the invariant `direction` (a column) with the `conormal`
/// (a row); both must be primitive and pair to zero.
pub fn focus_focus_shear(
    direction: &IntVector,
    conormal: &IntVector,
) -> Result<IntMatrix, MonodromyError> {
    if direction.len() != conormal.len() {
        return Err(MonodromyError::Linalg(LinalgError::ShapeMismatch {
            context: "shear direction vs conormal",
            left: direction.len().to_string(),
            right: conormal.len().to_string(),
        }));
    }
    for v in [direction, conormal] {
        if !v.is_primitive() {
            return Err(MonodromyError::Linalg(LinalgError::ZeroVector));
        }
    }
    let pairing = conormal.dot(direction)?;
    if pairing != 0 {
        return Err(MonodromyError::ShearNotParallel { pairing });
    }
    let outer = IntMatrix::outer(direction, conormal)?;
    Ok(IntMatrix::identity(direction.len()).add(&outer)?)
}

/// An affine monodromy representation of a presented group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRep {
    pub rank: usize,
    pub presentation: Presentation,
    /// One triple per generator, in presentation order.
    pub triples: Vec<AffineTriple>,
}

impl AffineRep {
    /// Build and validate: shapes must match `rank` and every matrix part
    /// must be unimodular (integrally invertible).
    pub fn new(
        rank: usize,
        presentation: Presentation,
        triples: Vec<AffineTriple>,
    ) -> Result<Self, MonodromyError> {
        if presentation.generators.len() != triples.len() {
            return Err(MonodromyError::GeneratorCountMismatch {
                names: presentation.generators.len(),
                triples: triples.len(),
            });
        }
        for (name, triple) in presentation.generators.iter().zip(&triples) {
            if triple.t.rows() != rank
                || triple.t.cols() != rank
                || triple.lambda.len() != rank
                || triple.theta.len() != rank
            {
                return Err(MonodromyError::RankMismatch {
                    name: name.clone(),
                    expected: rank,
                });
            }
            if let Err(source) = triple.t.unimodular_inverse() {
                return Err(MonodromyError::BadGenerator {
                    name: name.clone(),
                    source,
                });
            }
        }
        Ok(AffineRep {
            rank,
            presentation,
            triples,
        })
    }

    /// The triple of a single letter (generator or inverse).
    pub fn letter_triple(&self, letter: Letter) -> Result<AffineTriple, MonodromyError> {
        let count = self.triples.len();
        let triple = self
            .triples
            .get(letter.gen)
            .ok_or(MonodromyError::LetterOutOfRange {
                index: letter.gen,
                count,
            })?;
        if letter.inverse {
            triple.inverse()
        } else {
            Ok(triple.clone())
        }
    }

    /// Fold a word through the twisted composition rule.
    pub fn compose(&self, word: &Word) -> Result<AffineTriple, MonodromyError> {
        let mut acc = AffineTriple::identity(self.rank);
        for &letter in word {
            let step = self.letter_triple(letter)?;
            acc = acc.then(&step)?;
        }
        Ok(acc)
    }

    /// Check every relation of the presentation exactly (matrix, translation,
    /// and sign part). Collects all defects instead of stopping at the first.
    pub fn verify(&self) -> Result<VerifyReport, MonodromyError> {
        let mut defects = Vec::new();
        for (index, relation) in self.presentation.relations.iter().enumerate() {
            let composed = self.compose(relation)?;
            if !composed.is_identity() {
                defects.push(RelationDefect {
                    relation: index,
                    composed,
                });
            }
        }
        Ok(VerifyReport {
            partial: self.presentation.partial,
            defects,
        })
    }

    /// Copy of the representation with the sign covectors replaced.
    pub fn with_theta(&self, assignment: &[Gf2Vector]) -> Result<AffineRep, MonodromyError> {
        if assignment.len() != self.triples.len() {
            return Err(MonodromyError::GeneratorCountMismatch {
                names: self.triples.len(),
                triples: assignment.len(),
            });
        }
        let mut rep = self.clone();
        for (triple, (theta, name)) in rep
            .triples
            .iter_mut()
            .zip(assignment.iter().zip(&self.presentation.generators))
        {
            if theta.len() != self.rank {
                return Err(MonodromyError::RankMismatch {
                    name: name.clone(),
                    expected: self.rank,
                });
            }
            triple.theta = theta.clone();
        }
        Ok(rep)
    }
}

/// One relation whose composed value is not the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDefect {
    pub relation: usize,
    pub composed: AffineTriple,
}

/// Outcome of [`AffineRep::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Mirror of the presentation's partial flag: an empty defect list for a
    /// partial presentation only covers the listed relations.
    pub partial: bool,
    pub defects: Vec<RelationDefect>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.defects.is_empty()
    }
}

/// A sign assignment: one GF(2) covector per generator.
pub type ThetaAssignment = Vec<Gf2Vector>;

/// The sign cohomology of a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    /// Dimension of cocycles modulo coboundaries over GF(2).
    pub dimension: usize,
    /// Dimension of the cocycle space (assignments compatible with all
    /// relations).
    pub cocycle_dim: usize,
    /// Dimension of the coboundary space (shifts `phi * T + phi`).
    pub coboundary_dim: usize,
    /// One representative per class, zero class first, at most the requested
    /// cap. Representative `i` is the sum of complement basis vectors selected
    /// by the bits of `i`, so the enumeration is deterministic.
    pub representatives: Vec<ThetaAssignment>,
    /// True when `2^dimension` exceeds the cap and classes were left out.
    pub truncated: bool,
}

/// Compute the GF(2) sign cohomology of `rep`: assignments of a sign covector
/// to each generator satisfying every relation, modulo coboundary shifts.
///
/// Requires the matrix parts to satisfy the relations (otherwise coboundaries
/// would not be cocycles and the quotient would be meaningless); errors with
/// [`MonodromyError::LinearPartBroken`] if they do not. At most `max_classes`
/// class representatives are materialized.
pub fn h1_theta(rep: &AffineRep, max_classes: usize) -> Result<H1Report, MonodromyError> {
    let n = rep.rank;
    let k = rep.triples.len();
    let unknowns = k * n;

    let tbar: Vec<Gf2Matrix> = rep.triples.iter().map(|t| t.t.mod2()).collect();
    let mut tbar_inv = Vec::with_capacity(k);
    for triple in &rep.triples {
        tbar_inv.push(triple.t.unimodular_inverse()?.mod2());
    }

    // One block of n columns per relation; row (g, i) holds the image of the
    // basis covector e_i in generator block g.
    let mut columns: Vec<Vec<u8>> = vec![Vec::new(); unknowns];
    for (index, relation) in rep.presentation.relations.iter().enumerate() {
        if !rep.compose(relation)?.t.is_identity() {
            return Err(MonodromyError::LinearPartBroken { index });
        }
        // coeff[g] = sum over occurrences of g of (T_g^-1 if inverted) * prefix,
        // where prefix is the mod-2 matrix of the letters already traversed.
        let mut coeff = vec![Gf2Matrix::zeros(n, n); k];
        let mut prefix = Gf2Matrix::identity(n);
        for letter in relation {
            let summand = if letter.inverse {
                tbar_inv[letter.gen].mat_mul(&prefix)?
            } else {
                prefix.clone()
            };
            coeff[letter.gen] = coeff[letter.gen].add(&summand)?;
            let step = if letter.inverse {
                &tbar_inv[letter.gen]
            } else {
                &tbar[letter.gen]
            };
            prefix = step.mat_mul(&prefix)?;
        }
        for g in 0..k {
            for i in 0..n {
                for j in 0..n {
                    columns[g * n + i].push(coeff[g].entry(i, j));
                }
            }
        }
    }

    let system = Gf2Matrix::new(columns)?;
    let zero_rhs = Gf2Vector::zeros(system.cols());
    let solution = gf2_solve(&system, &zero_rhs)?;
    let cocycles = solution.kernel;
    let cocycle_dim = cocycles.len();

    // Coboundaries: phi -> (phi * T_g + phi)_g, flattened like the unknowns.
    let mut echelon = Echelon::new(unknowns);
    let mut coboundary_dim = 0;
    for i in 0..n {
        let phi = Gf2Vector::basis(n, i);
        let mut flat = Vec::with_capacity(unknowns);
        for t in &tbar {
            let shifted = phi.mul_mat(t)?.add(&phi)?;
            flat.extend_from_slice(shifted.bits());
        }
        if echelon.insert(flat) {
            coboundary_dim += 1;
        }
    }

    // Cocycles extending the coboundary echelon form a complement basis.
    let mut complement: Vec<Gf2Vector> = Vec::new();
    for z in &cocycles {
        if echelon.insert(z.bits().to_vec()) {
            complement.push(z.clone());
        }
    }
    let dimension = complement.len();
    debug_assert_eq!(dimension, cocycle_dim - coboundary_dim);

    let total: Option<usize> = 1usize.checked_shl(dimension as u32);
    let take = total.map_or(max_classes, |t| t.min(max_classes));
    let truncated = total.is_none_or(|t| t > max_classes);
    let mut representatives = Vec::with_capacity(take);
    for index in 0..take {
        let mut flat = vec![0u8; unknowns];
        for (b, basis_vec) in complement.iter().enumerate() {
            if (index >> b) & 1 == 1 {
                for (slot, &bit) in flat.iter_mut().zip(basis_vec.bits()) {
                    *slot ^= bit;
                }
            }
        }
        let assignment: ThetaAssignment = (0..k)
            .map(|g| {
                Gf2Vector::new(flat[g * n..(g + 1) * n].to_vec())
                    .expect("bits are 0/1 by construction")
            })
            .collect();
        representatives.push(assignment);
    }

    Ok(H1Report {
        dimension,
        cocycle_dim,
        coboundary_dim,
        representatives,
        truncated,
    })
}

/// Incremental GF(2) echelon structure for rank/complement bookkeeping.
struct Echelon {
    rows: Vec<Vec<u8>>,
    width: usize,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            width,
        }
    }

    /// Reduce `v` against the stored rows; store and report true if nonzero.
    fn insert(&mut self, mut v: Vec<u8>) -> bool {
        assert_eq!(v.len(), self.width);
        for row in &self.rows {
            let pivot = row.iter().position(|&b| b == 1).expect("rows are nonzero");
            if v[pivot] == 1 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        if v.iter().all(|&b| b == 0) {
            false
        } else {
            self.rows.push(v);
            self.rows.sort_by_key(|r| r.iter().position(|&b| b == 1));
            true
        }
    }
}
