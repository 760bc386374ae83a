//! Weight systems as traces of operators on `(Q^n)^{⊗m}`.
//!
//! Independent of the split/σ pipeline: each chord acts by the quadratic
//! Casimir `Σ_{a,b} E_ab ⊗ E_ba` of `gl_n` (trace form) on every pair of
//! tensor factors lying over its two strands, and the labelling symmetriser
//! acts by permuting tensor factors. Vectors are sparse; nothing dense is
//! materialised.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::ChordWord;
use crate::error::{Error, Result};
use crate::perm::GroupAlgebraElement;
use crate::weight::Labelling;
use crate::young::labelling_symmetriser;
use crate::Rational;

type SparseVec<T> = HashMap<usize, T>;

/// Positional base-`n` encoding of basis tensors `e_{x_0} ⊗ … ⊗ e_{x_{m-1}}`.
struct TensorBasis {
    n: usize,
    powers: Vec<usize>,
}

impl TensorBasis {
    fn new(n: u32, factors: usize, max_dim: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("n must be a positive integer".into()));
        }
        let n = n as usize;
        let mut powers = Vec::with_capacity(factors + 1);
        let mut acc: usize = 1;
        powers.push(1);
        for _ in 0..factors {
            acc = acc
                .checked_mul(n)
                .filter(|&d| d <= max_dim)
                .ok_or_else(|| {
                    Error::Resource(format!(
                        "tensor dimension {n}^{factors} exceeds the limit {max_dim}"
                    ))
                })?;
            powers.push(acc);
        }
        Ok(TensorBasis { n, powers })
    }

    fn dim(&self) -> usize {
        *self.powers.last().unwrap()
    }

    fn digit(&self, x: usize, pos: usize) -> usize {
        x / self.powers[pos] % self.n
    }

    fn set_digit(&self, x: usize, pos: usize, d: usize) -> usize {
        x - self.digit(x, pos) * self.powers[pos] + d * self.powers[pos]
    }

    /// `Σ_{a,b} E_ab` on factor `p`, `E_ba` on factor `q` (0-based positions).
    fn casimir<T: Clone + Zero + std::ops::AddAssign>(&self, v: &SparseVec<T>, p: usize, q: usize, out: &mut SparseVec<T>) {
        for (&x, c) in v {
            let (xp, xq) = (self.digit(x, p), self.digit(x, q));
            for a in 0..self.n {
                for b in 0..self.n {
                    // E_ba e_{xq} = δ(a, xq) e_b ; E_ab e_{xp} = δ(b, xp) e_a
                    if a == xq && b == xp {
                        let y = self.set_digit(self.set_digit(x, q, b), p, a);
                        *out.entry(y).or_insert_with(T::zero) += c.clone();
                    }
                }
            }
        }
    }

    /// Place permutation: the factor at position `i` moves to position `g(i)`.
    fn permute(&self, x: usize, images: &[u8]) -> usize {
        let mut y = 0;
        for (i, &gi) in images.iter().enumerate() {
            y += self.digit(x, i) * self.powers[gi as usize];
        }
        y
    }
}

/// `Tr` of the chord operators of `word` on `(Q^n)^{⊗N}`; should equal `W_st`.
pub fn tensor_oracle_std(word: &ChordWord, n: u32, max_dim: usize) -> Result<BigInt> {
    let basis = TensorBasis::new(n, word.strands(), max_dim)?;
    let mut trace = BigInt::zero();
    for x in 0..basis.dim() {
        let mut v: SparseVec<BigInt> = SparseVec::from([(x, BigInt::one())]);
        for chord in word.chords() {
            let mut next = SparseVec::new();
            basis.casimir(&v, chord.i() - 1, chord.j() - 1, &mut next);
            v = next;
        }
        if let Some(c) = v.get(&x) {
            trace += c;
        }
    }
    Ok(trace)
}

/// `Tr(M(c_ρ) · W̃(word))` on `(Q^n)^{⊗|ρ|}`; should equal the labelled weight.
pub fn tensor_oracle(word: &ChordWord, labelling: &Labelling, n: u32, max_dim: usize) -> Result<Rational> {
    if word.strands() != labelling.strands() {
        return Err(Error::Dimension(format!(
            "diagram on {} strands, labelling has {} labels",
            word.strands(),
            labelling.strands()
        )));
    }
    let widths = labelling.widths();
    let m: usize = widths.iter().sum();
    let basis = TensorBasis::new(n, m, max_dim)?;
    let mut offsets = Vec::with_capacity(widths.len());
    let mut acc = 0;
    for w in &widths {
        offsets.push(acc);
        acc += w;
    }
    let positions = |strand: usize| offsets[strand - 1]..offsets[strand - 1] + widths[strand - 1];
    let projector: GroupAlgebraElement = labelling_symmetriser(labelling.labels())?;

    let mut trace = Rational::zero();
    for x in 0..basis.dim() {
        let mut v: SparseVec<BigInt> = SparseVec::from([(x, BigInt::one())]);
        for chord in word.chords() {
            let mut next = SparseVec::new();
            for p in positions(chord.i()) {
                for q in positions(chord.j()) {
                    basis.casimir(&v, p, q, &mut next);
                }
            }
            next.retain(|_, c| !c.is_zero());
            v = next;
        }
        // only the `x` component of M(c_ρ) v contributes to the trace
        for (y, c) in &v {
            for (g, cg) in projector.terms() {
                if basis.permute(*y, g.images0()) == x {
                    trace += cg * Rational::from_integer(c.clone());
                }
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_words, DiagramExpr};
    use crate::weight::{weight_std, Evaluator};

    const LIMIT: usize = 100_000;

    #[test]
    fn identity_trace() {
        assert_eq!(tensor_oracle_std(&ChordWord::identity(2), 3, LIMIT).unwrap(), BigInt::from(9));
    }

    #[test]
    fn flip_trace() {
        let w: ChordWord = "2: (1,2)".parse().unwrap();
        for n in 1..=4 {
            assert_eq!(tensor_oracle_std(&w, n, LIMIT).unwrap(), BigInt::from(n));
        }
    }

    #[test]
    fn std_oracle_matches_cycle_count() {
        for strands in 1..=3 {
            for w in enumerate_words(strands, 3) {
                for n in 1..=3 {
                    let direct = weight_std(&DiagramExpr::from_word(w.clone()), n).unwrap();
                    let traced = tensor_oracle_std(&w, n, LIMIT).unwrap();
                    assert_eq!(direct, Rational::from_integer(traced), "{w} n={n}");
                }
            }
        }
    }

    #[test]
    fn labelled_oracle_matches_pipeline() {
        for text in ["sym:2,sym:2", "ext:2,ext:2", "part:[2,1],std"] {
            let lab = Labelling::parse(text).unwrap();
            let ev = Evaluator::new(lab.clone()).unwrap();
            for w in enumerate_words(2, 2) {
                for n in [2, 3] {
                    assert_eq!(
                        tensor_oracle(&w, &lab, n, LIMIT).unwrap(),
                        ev.weight_at(&w, n).unwrap(),
                        "{text} {w} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_trace_is_rank() {
        let lab = Labelling::parse("sym:2,ext:2,std").unwrap();
        let t = tensor_oracle(&ChordWord::identity(3), &lab, 3, LIMIT).unwrap();
        assert_eq!(t, crate::weight::unit_dimension_rational(&lab, 3));
    }

    #[test]
    fn guard() {
        let lab = Labelling::parse("sym:3,sym:3").unwrap();
        assert!(matches!(
            tensor_oracle(&ChordWord::identity(2), &lab, 10, LIMIT),
            Err(Error::Resource(_))
        ));
        assert!(matches!(tensor_oracle_std(&ChordWord::identity(20), 2, LIMIT), Err(Error::Resource(_))));
    }
}
