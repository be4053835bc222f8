//! Small GF(2) linear algebra over `u64` bit-vectors.
//!
//! Every finite elementary abelian 2-group handled by this crate (block sign
//! changes, character subsets, the groups `R` themselves) is a subspace of
//! some `GF(2)^n` with `n <= 64`, so a row-echelon basis over machine words is
//! all that is needed.

/// A row-reduced basis of a subspace of `GF(2)^64`.
///
/// Alongside each pivot row the basis remembers which of the inserted vectors
/// it is a combination of, so membership queries can also return coordinates
/// with respect to the original (independent) generators.
#[derive(Clone, Debug, Default)]
pub struct Gf2Span {
    // (pivot bit, reduced row, combination of accepted generators)
    rows: Vec<(u32, u64, u64)>,
    generators: Vec<u64>,
}

impl Gf2Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = u64>>(vectors: I) -> Self {
        let mut span = Self::new();
        for v in vectors {
            span.insert(v);
        }
        span
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// combination of accepted generators that was subtracted.
    fn reduce(&self, mut v: u64) -> (u64, u64) {
        let mut combo = 0;
        for &(pivot, row, c) in &self.rows {
            if v >> pivot & 1 == 1 {
                v ^= row;
                combo ^= c;
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns `true` if it was independent of the span so far.
    pub fn insert(&mut self, v: u64) -> bool {
        let (rest, combo) = self.reduce(v);
        if rest == 0 {
            return false;
        }
        assert!(self.generators.len() < 64, "GF(2) span limited to 64 generators");
        let index = self.generators.len();
        self.generators.push(v);
        let pivot = 63 - rest.leading_zeros();
        let combo = combo | 1 << index;
        // keep rows fully reduced on their pivot column
        for row in &mut self.rows {
            if row.1 >> pivot & 1 == 1 {
                row.1 ^= rest;
                row.2 ^= combo;
            }
        }
        self.rows.push((pivot, rest, combo));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v).0 == 0
    }

    /// The accepted (independent) generators, in insertion order.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Coordinates of `v` as a bitmask over [`Self::generators`], if `v` lies
    /// in the span.
    pub fn coordinates(&self, v: u64) -> Option<u64> {
        let (rest, combo) = self.reduce(v);
        (rest == 0).then_some(combo)
    }

    /// All `2^rank` vectors of the span, sorted ascending.
    pub fn elements(&self) -> Vec<u64> {
        let gens = &self.generators;
        assert!(gens.len() < 32, "span too large to enumerate");
        let mut out: Vec<u64> = (0u64..1 << gens.len())
            .map(|mask| {
                gens.iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(0, |acc, (_, g)| acc ^ g)
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// GF(2) rank of a family of vectors.
pub fn rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    Gf2Span::from_vectors(vectors).rank()
}
