//! `gl_n` weight systems through the symmetric-group factorisation.
//!
//! For a labelling `ρ = (λ¹,…,λᴺ)` the weight of a diagram `C` is
//! `w_st(c_ρ · σ(Δ(C)))`, where `Δ` splits strand `i` into `|λⁱ|` strands and
//! `c_ρ` is the labelling symmetriser. Results are polynomials in `n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;

use crate::diagram::{ChordWord, DiagramExpr, SplitBlocks};
use crate::error::{Error, Result};
use crate::perm::{sigma_lin, w_st_poly, CyclePoly, GroupAlgebraElement, Permutation};
use crate::young::{labelling_symmetriser, parse_labels, RepLabel};
use crate::Rational;

/// One representation label per strand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling {
    labels: Vec<RepLabel>,
}

impl Labelling {
    pub fn new(labels: Vec<RepLabel>) -> Self {
        Labelling { labels }
    }

    /// Every strand carries the defining representation.
    pub fn standard(strands: usize) -> Self {
        Labelling { labels: vec![RepLabel::Std; strands] }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Labelling { labels: parse_labels(text)? })
    }

    pub fn labels(&self) -> &[RepLabel] {
        &self.labels
    }

    pub fn strands(&self) -> usize {
        self.labels.len()
    }

    pub fn widths(&self) -> Vec<usize> {
        self.labels.iter().map(RepLabel::tensor_width).collect()
    }

    /// `|ρ|`, the strand count after splitting.
    pub fn total_width(&self) -> usize {
        self.labels.iter().map(RepLabel::tensor_width).sum()
    }

    /// Only symmetric powers, exterior powers and the defining representation.
    pub fn is_sym_ext(&self) -> bool {
        self.labels.iter().all(RepLabel::is_sym_ext)
    }

    /// `Π dim V_i` at the given `n`.
    pub fn unit_dimension(&self, n: u32) -> BigUint {
        self.labels.iter().map(|l| l.dimension(n)).product()
    }

    /// Labels whose representation vanishes at this `n` (more rows than `n`).
    pub fn zero_dimensional_at(&self, n: u32) -> Vec<&RepLabel> {
        self.labels.iter().filter(|l| l.partition().len() > n as usize).collect()
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A weight as a polynomial in `n`, with the specialisations computed so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightValue {
    pub symbolic: CyclePoly,
    pub specialised: BTreeMap<u32, Rational>,
    /// Set when some label is a zero representation at a specialised `n`.
    pub zero_dimensional: bool,
}

impl WeightValue {
    pub fn at(&self, n: u32) -> Option<&Rational> {
        self.specialised.get(&n)
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("n must be a positive integer".into()));
    }
    Ok(())
}

/// Evaluates one labelled weight system.
///
/// Holds `c_ρ` and a write-once cache of the class-like functional
/// `π ↦ w_st(c_ρ · π)`; shareable across threads.
#[derive(Debug)]
pub struct Evaluator {
    labelling: Labelling,
    blocks: SplitBlocks,
    symmetriser: GroupAlgebraElement,
    class_values: RwLock<HashMap<Permutation, CyclePoly>>,
    strict: bool,
}

impl Evaluator {
    pub fn new(labelling: Labelling) -> Result<Self> {
        let blocks = SplitBlocks::new(labelling.strands(), &labelling.widths())?;
        let symmetriser = labelling_symmetriser(labelling.labels())?;
        Ok(Evaluator {
            labelling,
            blocks,
            symmetriser,
            class_values: RwLock::new(HashMap::new()),
            strict: false,
        })
    }

    /// In strict mode, evaluating where a label is a zero representation is an error.
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn labelling(&self) -> &Labelling {
        &self.labelling
    }

    /// `c_ρ`.
    pub fn symmetriser(&self) -> &GroupAlgebraElement {
        &self.symmetriser
    }

    fn check_word(&self, word: &ChordWord) -> Result<()> {
        if word.strands() != self.labelling.strands() {
            return Err(Error::Dimension(format!(
                "diagram on {} strands, labelling has {} labels",
                word.strands(),
                self.labelling.strands()
            )));
        }
        Ok(())
    }

    /// `σ(Δ(word))`, multiplying out the lifted chords one at a time.
    pub fn split_sigma(&self, word: &ChordWord) -> Result<GroupAlgebraElement> {
        let counts = self.split_sigma_counts(word)?;
        GroupAlgebraElement::from_terms(
            self.labelling.total_width(),
            counts.into_iter().map(|(p, c)| (p, crate::int(c as i64))),
        )
    }

    fn split_sigma_counts(&self, word: &ChordWord) -> Result<HashMap<Permutation, u64>> {
        self.check_word(word)?;
        let mut current: HashMap<Permutation, u64> = HashMap::new();
        current.insert(Permutation::identity(self.labelling.total_width()), 1);
        for chord in word.chords() {
            let lifts = self.blocks.lifts(chord);
            let mut next = HashMap::with_capacity(current.len() * lifts.len());
            for (p, count) in &current {
                for l in &lifts {
                    let mut q = p.clone();
                    q.swap_values((l.i() - 1) as u8, (l.j() - 1) as u8);
                    *next.entry(q).or_insert(0u64) += count;
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// `w_st(c_ρ · π)` as a polynomial in `n`.
    pub fn class_value(&self, p: &Permutation) -> CyclePoly {
        if let Some(v) = self.class_values.read().expect("cache lock").get(p) {
            return v.clone();
        }
        let mut value = CyclePoly::zero();
        for (g, c) in self.symmetriser.terms() {
            value.add_monomial(g.compose_unchecked(p).cycle_count(), c);
        }
        self.class_values
            .write()
            .expect("cache lock")
            .entry(p.clone())
            .or_insert(value)
            .clone()
    }

    /// `w_st(c_ρ · y)` for an element of `Q[S_|ρ|]`.
    pub fn functional(&self, y: &GroupAlgebraElement) -> Result<CyclePoly> {
        if y.degree() != self.labelling.total_width() {
            return Err(Error::Dimension(format!(
                "element of degree {} for a labelling of width {}",
                y.degree(),
                self.labelling.total_width()
            )));
        }
        let mut acc = CyclePoly::zero();
        for (p, c) in y.terms() {
            acc.add_scaled(&self.class_value(p), c);
        }
        Ok(acc)
    }

    pub fn word_poly(&self, word: &ChordWord) -> Result<CyclePoly> {
        let mut acc = CyclePoly::zero();
        for (p, count) in self.split_sigma_counts(word)? {
            acc.add_scaled(&self.class_value(&p), &crate::int(count as i64));
        }
        Ok(acc)
    }

    /// The weight of `expr` as a polynomial in `n`.
    pub fn weight_poly(&self, expr: &DiagramExpr) -> Result<CyclePoly> {
        if expr.strands() != self.labelling.strands() {
            return Err(Error::Dimension(format!(
                "expression on {} strands, labelling has {} labels",
                expr.strands(),
                self.labelling.strands()
            )));
        }
        let mut acc = CyclePoly::zero();
        for (w, c) in expr.terms() {
            acc.add_scaled(&self.word_poly(w)?, c);
        }
        Ok(acc)
    }

    /// The same value computed literally: split, linearised `σ`, left
    /// multiplication by `c_ρ`, then `w_st`. No caching.
    pub fn pipeline_poly(&self, expr: &DiagramExpr) -> Result<CyclePoly> {
        let split = expr.tensor_split(&self.labelling.widths())?;
        let y = sigma_lin(&split);
        Ok(w_st_poly(&self.symmetriser.multiply(&y)?))
    }

    pub fn weight(&self, expr: &DiagramExpr, n: u32) -> Result<WeightValue> {
        check_n(n)?;
        let vanishing = self.labelling.zero_dimensional_at(n);
        if self.strict && !vanishing.is_empty() {
            let names: Vec<String> = vanishing.iter().map(ToString::to_string).collect();
            return Err(Error::ZeroDimensional(format!(
                "label(s) {} vanish at n = {n}",
                names.join(", ")
            )));
        }
        let symbolic = self.weight_poly(expr)?;
        let value = symbolic.evaluate(n as i64)?;
        Ok(WeightValue {
            symbolic,
            specialised: BTreeMap::from([(n, value)]),
            zero_dimensional: !vanishing.is_empty(),
        })
    }

    /// Shorthand for the specialised value of a single word.
    pub fn weight_at(&self, word: &ChordWord, n: u32) -> Result<Rational> {
        check_n(n)?;
        self.word_poly(word)?.evaluate(n as i64)
    }
}

/// `W_st` as a polynomial in `n`.
pub fn weight_std_poly(expr: &DiagramExpr) -> CyclePoly {
    w_st_poly(&sigma_lin(expr))
}

/// `W_st(expr)` at `n`.
pub fn weight_std(expr: &DiagramExpr, n: u32) -> Result<Rational> {
    check_n(n)?;
    weight_std_poly(expr).evaluate(n as i64)
}

/// `W_ρ(↑_N)` should equal `Π dim V_i`.
pub fn unit_value(labelling: &Labelling, n: u32) -> Result<Rational> {
    let ev = Evaluator::new(labelling.clone())?;
    ev.weight_at(&ChordWord::identity(labelling.strands()), n)
}

pub(crate) fn biguint_to_rational(v: &BigUint) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(v.clone()))
}

/// `Π dim V_i` as a rational, for comparison with weights.
pub fn unit_dimension_rational(labelling: &Labelling, n: u32) -> Rational {
    biguint_to_rational(&labelling.unit_dimension(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{all_four_t_generators, all_two_t_generators, enumerate_words, four_t_generator};

    fn q(v: i64) -> Rational {
        crate::int(v)
    }

    fn word(s: &str) -> ChordWord {
        s.parse().unwrap()
    }

    #[test]
    fn standard_weights() {
        for n in 1..5 {
            let id = DiagramExpr::one(3);
            assert_eq!(weight_std(&id, n).unwrap(), q((n as i64).pow(3)));
            let chord = DiagramExpr::from_word(word("2: (1,2)"));
            assert_eq!(weight_std(&chord, n).unwrap(), q(n as i64));
            assert!(weight_std(&four_t_generator(1, 2, 3, 3).unwrap(), n).unwrap() == q(0));
        }
        assert!(weight_std(&DiagramExpr::one(2), 0).is_err());
    }

    #[test]
    fn sym_unit_value() {
        let lab = Labelling::parse("sym:2,sym:2").unwrap();
        let ev = Evaluator::new(lab).unwrap();
        let v = ev.weight(&DiagramExpr::one(2), 2).unwrap();
        assert_eq!(v.at(2), Some(&q(9)));
        assert!(!v.zero_dimensional);
    }

    #[test]
    fn std_labelling_reduces_to_w_st() {
        let ev = Evaluator::new(Labelling::standard(3)).unwrap();
        for w in enumerate_words(3, 3) {
            let e = DiagramExpr::from_word(w);
            assert_eq!(ev.weight_poly(&e).unwrap(), weight_std_poly(&e));
        }
    }

    #[test]
    fn cached_path_matches_literal_pipeline() {
        for text in ["sym:2,ext:2", "ext:2,std,sym:2", "part:[2,1],std"] {
            let lab = Labelling::parse(text).unwrap();
            let ev = Evaluator::new(lab.clone()).unwrap();
            for w in enumerate_words(lab.strands(), 2) {
                let e = DiagramExpr::from_word(w);
                assert_eq!(ev.weight_poly(&e).unwrap(), ev.pipeline_poly(&e).unwrap(), "{text} {e}");
            }
        }
    }

    #[test]
    fn split_sigma_matches_split_then_sigma() {
        let ev = Evaluator::new(Labelling::parse("sym:2,std,ext:3").unwrap()).unwrap();
        for w in enumerate_words(3, 2) {
            let split = w.tensor_split(&ev.labelling().widths()).unwrap();
            assert_eq!(ev.split_sigma(&w).unwrap(), sigma_lin(&split));
        }
    }

    #[test]
    fn relations_vanish_for_labelled_weights() {
        for text in ["sym:2,ext:2,std", "ext:2,ext:2,sym:2", "std,sym:3,ext:2"] {
            let ev = Evaluator::new(Labelling::parse(text).unwrap()).unwrap();
            for g in all_four_t_generators(3) {
                assert!(ev.weight_poly(&g).unwrap().is_zero());
            }
        }
        let ev = Evaluator::new(Labelling::parse("sym:2,std,ext:2,std").unwrap()).unwrap();
        for g in all_two_t_generators(4).into_iter().chain(all_four_t_generators(4)) {
            assert!(ev.weight_poly(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn left_and_right_symmetriser_agree() {
        // w_st is a class function, so c·y and y·c give the same value
        let ev = Evaluator::new(Labelling::parse("part:[2,1],sym:2").unwrap()).unwrap();
        for w in enumerate_words(2, 2) {
            let y = ev.split_sigma(&w).unwrap();
            let left = w_st_poly(&ev.symmetriser().multiply(&y).unwrap());
            let right = w_st_poly(&y.multiply(ev.symmetriser()).unwrap());
            assert_eq!(left, right);
            assert_eq!(ev.functional(&y).unwrap(), left);
        }
    }

    #[test]
    fn zero_dimensional_labels() {
        let lab = Labelling::parse("ext:3,std").unwrap();
        let ev = Evaluator::new(lab.clone()).unwrap();
        let v = ev.weight(&DiagramExpr::one(2), 2).unwrap();
        assert!(v.zero_dimensional);
        assert_eq!(v.at(2), Some(&q(0)));
        let strict = Evaluator::new(lab).unwrap().strict(true);
        assert!(matches!(strict.weight(&DiagramExpr::one(2), 2), Err(Error::ZeroDimensional(_))));
        assert!(strict.weight(&DiagramExpr::one(2), 3).is_ok());
    }

    #[test]
    fn mismatched_strands() {
        let ev = Evaluator::new(Labelling::standard(2)).unwrap();
        assert!(matches!(ev.weight(&DiagramExpr::one(3), 2), Err(Error::Dimension(_))));
    }

    #[test]
    fn unit_values_are_dimension_products() {
        for text in ["sym:2,ext:2", "std,sym:3", "ext:2,ext:2,std", "part:[2,1]"] {
            let lab = Labelling::parse(text).unwrap();
            for n in 1..5 {
                assert_eq!(unit_value(&lab, n).unwrap(), unit_dimension_rational(&lab, n), "{text} n={n}");
            }
        }
    }
}
