//! Positivity of weight systems on truncated diagram bases.
//!
//! A weight system `φ` is a state when `φ(x x⋆) ≥ 0` for all `x` and
//! `φ(1) > 0`. Restricted to the span of the words with at most `d` chords,
//! the first condition is positive semidefiniteness of the Gram matrix
//! `M[i][j] = φ(C_i ∘ C_j⋆)`. The words span that filtration but are not
//! independent modulo the relations, so the matrices are usually singular.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diagram::{enumerate_words, word_count, ChordWord};
use crate::error::{Error, Result};
use crate::weight::{Evaluator, Labelling};
use crate::{Guards, Rational};

/// Truncation parameters of one Gram certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramSpec {
    pub strands: usize,
    pub depth: usize,
    pub labelling: Labelling,
    pub n: u32,
}

impl GramSpec {
    pub fn new(strands: usize, depth: usize, labelling: Labelling, n: u32) -> Result<Self> {
        if labelling.strands() != strands {
            return Err(Error::Dimension(format!(
                "{} labels for {strands} strands",
                labelling.strands()
            )));
        }
        if n == 0 {
            return Err(Error::Argument("n must be a positive integer".into()));
        }
        Ok(GramSpec { strands, depth, labelling, n })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "strands": self.strands,
            "depth": self.depth,
            "labelling": self.labelling.to_string(),
            "n": self.n,
        })
    }
}

/// A dense square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl GramMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape("matrix rows must all have length equal to the row count".into()));
        }
        Ok(GramMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and small literals.
    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| crate::int(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    /// Largest `|M[i][j] - M[j][i]|`.
    pub fn max_asymmetry(&self) -> Rational {
        let mut worst = Rational::zero();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let d = (self.get(i, j) - self.get(j, i)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        self.max_asymmetry().is_zero()
    }

    /// `(M + Mᵀ) / 2`.
    pub fn symmetrised(&self) -> GramMatrix {
        let half = Rational::new(1.into(), 2.into());
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries.push((self.get(i, j) + self.get(j, i)) * &half);
            }
        }
        GramMatrix { dim: self.dim, entries }
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Result<Rational> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} for a {0}x{0} matrix", self.dim)));
        }
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.dim {
                if !v[j].is_zero() {
                    row += self.get(i, j) * &v[j];
                }
            }
            acc += &v[i] * row;
        }
        Ok(acc)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} for a {0}x{0} matrix", self.dim)));
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// The top-left `k × k` block.
    pub fn leading_principal(&self, k: usize) -> GramMatrix {
        let k = k.min(self.dim);
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(self.get(i, j).clone());
            }
        }
        GramMatrix { dim: k, entries }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows()
                .map(|row| Value::Array(row.iter().map(|c| Value::String(c.to_string())).collect()))
                .collect(),
        )
    }
}

/// Result of the exact semidefiniteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdOutcome {
    pub psd: bool,
    /// Pivots in elimination order; a terminal all-zero block contributes zeros.
    pub pivots: Vec<Rational>,
    /// Number of strictly positive pivots.
    pub rank: usize,
    /// A vector with `vᵀ M v < 0` when `psd` is false.
    pub witness: Option<Vec<Rational>>,
    pub witness_value: Option<Rational>,
}

/// Decides whether a symmetric rational matrix is positive semidefinite.
///
/// Symmetric elimination, always pivoting on the largest remaining diagonal
/// entry (lowest index on ties). Each remaining index carries the original
/// coordinates of its reduced basis vector, so a negative diagonal entry or a
/// non-zero entry in an all-zero-diagonal block yields an explicit witness.
pub fn psd_check(m: &GramMatrix) -> Result<PsdOutcome> {
    if !m.is_symmetric() {
        return Err(Error::Shape(format!(
            "matrix is not symmetric (max deviation {})",
            m.max_asymmetry()
        )));
    }
    let dim = m.dim();
    let mut s: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    let mut basis: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rational::zero(); dim];
            e[i] = crate::int(1);
            e
        })
        .collect();
    let mut active: Vec<usize> = (0..dim).collect();
    let mut pivots = Vec::with_capacity(dim);
    let mut witness = None;

    while !active.is_empty() {
        let mut r = active[0];
        for &k in &active[1..] {
            if s[k][k] > s[r][r] {
                r = k;
            }
        }
        if s[r][r].is_positive() {
            let p = s[r][r].clone();
            active.retain(|&k| k != r);
            for &a in &active {
                let f = &s[a][r] / &p;
                if f.is_zero() {
                    continue;
                }
                for &b in &active {
                    let delta = &f * &s[r][b];
                    s[a][b] -= delta;
                }
                for t in 0..dim {
                    let delta = &f * &basis[r][t];
                    basis[a][t] -= delta;
                }
            }
            for &a in &active {
                s[a][r] = Rational::zero();
                s[r][a] = Rational::zero();
            }
            pivots.push(p);
            continue;
        }
        if let Some(&neg) = active.iter().find(|&&k| s[k][k].is_negative()) {
            witness = Some(basis[neg].clone());
            break;
        }
        // every remaining diagonal entry is zero; the block must vanish
        let mut off = None;
        'scan: for &a in &active {
            for &b in &active {
                if a != b && !s[a][b].is_zero() {
                    off = Some((a, b));
                    break 'scan;
                }
            }
        }
        match off {
            Some((a, b)) => {
                // (e_a + t e_b)ᵀ S (e_a + t e_b) = 2 t S_ab with t = -sign(S_ab)
                let t = if s[a][b].is_positive() { crate::int(-1) } else { crate::int(1) };
                witness = Some(basis[a].iter().zip(&basis[b]).map(|(x, y)| x + &t * y).collect());
            }
            None => pivots.extend(active.iter().map(|_| Rational::zero())),
        }
        break;
    }

    let rank = pivots.iter().filter(|p| p.is_positive()).count();
    match witness {
        None => Ok(PsdOutcome { psd: true, pivots, rank, witness: None, witness_value: None }),
        Some(v) => {
            let value = m.quadratic_form(&v)?;
            if !value.is_negative() {
                return Err(Error::Consistency(format!(
                    "elimination witness has non-negative value {value}"
                )));
            }
            Ok(PsdOutcome { psd: false, pivots, rank, witness: Some(v), witness_value: Some(value) })
        }
    }
}

/// Gram basis and matrix `M[i][j] = W_ρ(C_i ∘ C_j⋆)` at the spec's `n`.
pub fn gram_matrix(spec: &GramSpec, guards: &Guards) -> Result<(Vec<ChordWord>, GramMatrix)> {
    let ev = Evaluator::new(spec.labelling.clone())?;
    gram_matrix_with(&ev, spec, guards)
}

pub fn gram_matrix_with(
    ev: &Evaluator,
    spec: &GramSpec,
    guards: &Guards,
) -> Result<(Vec<ChordWord>, GramMatrix)> {
    let size = word_count(spec.strands, spec.depth);
    if size.is_none_or(|s| s > guards.max_basis) {
        return Err(Error::Resource(format!(
            "Gram basis for {} strands and depth {} has {} words, limit is {}",
            spec.strands,
            spec.depth,
            size.map_or_else(|| "too many".to_string(), |s| s.to_string()),
            guards.max_basis
        )));
    }
    let basis = enumerate_words(spec.strands, spec.depth);
    let dim = basis.len();
    let entries = (0..dim * dim)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / dim, k % dim);
            let word = basis[i].compose(&basis[j].star())?;
            ev.weight_at(&word, spec.n)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((basis, GramMatrix { dim, entries }))
}

/// Everything `verify_state` found for one truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramReport {
    pub spec: GramSpec,
    pub basis: Vec<ChordWord>,
    pub matrix: GramMatrix,
    /// `W_ρ(↑_N)`.
    pub unit_value: Rational,
    pub symmetric: bool,
    /// Largest `|M[i][j] - M[j][i]|`; zero when symmetric.
    pub asymmetry: Rational,
    /// Verdict for `matrix`, or for its symmetric part when asymmetric.
    pub psd: bool,
    pub pivots: Vec<Rational>,
    pub rank: usize,
    pub witness: Option<Vec<Rational>>,
    pub witness_value: Option<Rational>,
    /// Every label is a symmetric power, an exterior power or the defining representation.
    pub sym_ext_labelling: bool,
}

impl GramReport {
    /// The truncated state condition holds: symmetric, PSD, and positive on the unit.
    pub fn holds(&self) -> bool {
        self.symmetric && self.psd && self.unit_value.is_positive()
    }

    /// [`GramReport::holds`] for a labelling built only from std, sym:k and ext:k
    /// (symmetric and exterior powers); other labellings are exploratory.
    pub fn certificate(&self) -> bool {
        self.holds() && self.sym_ext_labelling
    }

    pub fn to_json(&self) -> Value {
        let strings = |v: &[Rational]| Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect());
        json!({
            "spec": self.spec.to_json(),
            "basis": self.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "matrix": self.matrix.to_json(),
            "unit_value": self.unit_value.to_string(),
            "symmetric": self.symmetric,
            "asymmetry": self.asymmetry.to_string(),
            "psd": self.psd,
            "rank": self.rank,
            "pivots": strings(&self.pivots),
            "witness": self.witness.as_deref().map(strings),
            "witness_value": self.witness_value.as_ref().map(ToString::to_string),
            "sym_ext_labelling": self.sym_ext_labelling,
            "certificate": self.certificate(),
        })
    }
}

/// Assembles the Gram matrix, checks symmetry and the unit value, and runs
/// [`psd_check`]. Asymmetric matrices are judged by their symmetric part and
/// never certified.
pub fn verify_state(spec: &GramSpec, guards: &Guards) -> Result<GramReport> {
    let ev = Evaluator::new(spec.labelling.clone())?;
    verify_state_with(&ev, spec, guards)
}

pub fn verify_state_with(ev: &Evaluator, spec: &GramSpec, guards: &Guards) -> Result<GramReport> {
    if ev.labelling() != &spec.labelling {
        return Err(Error::Argument("evaluator and spec use different labellings".into()));
    }
    let (basis, matrix) = gram_matrix_with(ev, spec, guards)?;
    let unit_value = ev.weight_at(&ChordWord::identity(spec.strands), spec.n)?;
    let asymmetry = matrix.max_asymmetry();
    let symmetric = asymmetry.is_zero();
    let outcome = if symmetric { psd_check(&matrix)? } else { psd_check(&matrix.symmetrised())? };
    Ok(GramReport {
        spec: spec.clone(),
        basis,
        matrix,
        unit_value,
        symmetric,
        asymmetry,
        psd: outcome.psd,
        pivots: outcome.pivots,
        rank: outcome.rank,
        witness: outcome.witness,
        witness_value: outcome.witness_value,
        sym_ext_labelling: spec.labelling.is_sym_ext(),
    })
}

/// Coefficients of `expr` over `basis` (zero outside it); errors if a term is
/// not a basis word.
pub fn coordinates(expr: &crate::DiagramExpr, basis: &[ChordWord]) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); basis.len()];
    for (w, c) in expr.terms() {
        let k = basis
            .iter()
            .position(|b| b == w)
            .ok_or_else(|| Error::Argument(format!("word `{w}` is not in the basis")))?;
        v[k] = c.clone();
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::four_t_generator;

    fn q(v: i64) -> Rational {
        crate::int(v)
    }

    #[test]
    fn two_by_two_pivots() {
        let m = GramMatrix::from_integers(&[&[4, 2], &[2, 4]]).unwrap();
        let out = psd_check(&m).unwrap();
        assert!(out.psd);
        assert_eq!(out.pivots, vec![q(4), q(3)]);
        assert_eq!(out.rank, 2);
    }

    #[test]
    fn zero_matrix_is_psd() {
        let out = psd_check(&GramMatrix::from_integers(&[&[0, 0], &[0, 0]]).unwrap()).unwrap();
        assert!(out.psd);
        assert_eq!(out.rank, 0);
        assert!(out.witness.is_none());
    }

    #[test]
    fn indefinite_matrix_has_witness() {
        let m = GramMatrix::from_integers(&[&[1, 2], &[2, 1]]).unwrap();
        let out = psd_check(&m).unwrap();
        assert!(!out.psd);
        let v = out.witness.unwrap();
        assert!(m.quadratic_form(&v).unwrap() < q(0));
        assert_eq!(out.witness_value, Some(m.quadratic_form(&v).unwrap()));
        assert_eq!(m.quadratic_form(&[q(1), q(-1)]).unwrap(), q(-2));
    }

    #[test]
    fn zero_diagonal_with_coupling() {
        let m = GramMatrix::from_integers(&[&[0, 3], &[3, 0]]).unwrap();
        let out = psd_check(&m).unwrap();
        assert!(!out.psd);
        assert_eq!(out.witness_value, Some(q(-6)));

        let m = GramMatrix::from_integers(&[&[1, 1, 1], &[1, 1, 2], &[1, 2, 1]]).unwrap();
        let out = psd_check(&m).unwrap();
        assert!(!out.psd);
        assert!(out.witness_value.unwrap() < q(0));
    }

    #[test]
    fn singular_psd() {
        // rank one: v vᵀ with v = (1, 2, -1)
        let m = GramMatrix::from_integers(&[&[1, 2, -1], &[2, 4, -2], &[-1, -2, 1]]).unwrap();
        let out = psd_check(&m).unwrap();
        assert!(out.psd);
        assert_eq!(out.rank, 1);
        assert_eq!(out.pivots, vec![q(4), q(0), q(0)]);
    }

    #[test]
    fn negative_diagonal() {
        let m = GramMatrix::from_integers(&[&[2, 0], &[0, -1]]).unwrap();
        let out = psd_check(&m).unwrap();
        assert!(!out.psd);
        assert_eq!(out.witness, Some(vec![q(0), q(1)]));
    }

    #[test]
    fn asymmetric_rejected() {
        let m = GramMatrix::from_integers(&[&[1, 2], &[0, 1]]).unwrap();
        assert!(matches!(psd_check(&m), Err(Error::Shape(_))));
        assert_eq!(m.max_asymmetry(), q(2));
        assert!(m.symmetrised().is_symmetric());
    }

    #[test]
    fn std_gram_depth_one() {
        for n in 1..5u32 {
            let spec = GramSpec::new(2, 1, Labelling::standard(2), n).unwrap();
            let (basis, m) = gram_matrix(&spec, &Guards::DEFAULT).unwrap();
            assert_eq!(basis, vec![ChordWord::identity(2), "2: (1,2)".parse().unwrap()]);
            let n2 = q((n * n) as i64);
            let n1 = q(n as i64);
            assert_eq!(m, GramMatrix::from_rows(vec![vec![n2.clone(), n1.clone()], vec![n1, n2]]).unwrap());
        }
    }

    #[test]
    fn depth_zero_is_unit() {
        let lab = Labelling::parse("sym:2,ext:2,std").unwrap();
        let spec = GramSpec::new(3, 0, lab, 3).unwrap();
        let report = verify_state(&spec, &Guards::DEFAULT).unwrap();
        assert_eq!(report.matrix.dim(), 1);
        assert_eq!(report.matrix.get(0, 0), &report.unit_value);
        assert_eq!(report.unit_value, q(6 * 3 * 3));
        assert!(report.certificate());
    }

    #[test]
    fn sym_ext_labellings_are_psd() {
        for (strands, depth, labels, n) in [
            (2, 2, "std,std", 2),
            (2, 2, "sym:2,sym:2", 2),
            (3, 2, "ext:2,ext:2,std", 3),
        ] {
            let spec = GramSpec::new(strands, depth, Labelling::parse(labels).unwrap(), n).unwrap();
            let report = verify_state(&spec, &Guards::DEFAULT).unwrap();
            assert!(report.symmetric && report.psd && report.certificate(), "{labels}");
        }
        let spec = GramSpec::new(2, 2, Labelling::parse("sym:2,sym:2").unwrap(), 2).unwrap();
        assert_eq!(verify_state(&spec, &Guards::DEFAULT).unwrap().unit_value, q(9));
    }

    #[test]
    fn four_t_is_a_null_vector() {
        let spec = GramSpec::new(3, 2, Labelling::parse("sym:2,std,ext:2").unwrap(), 3).unwrap();
        let (basis, m) = gram_matrix(&spec, &Guards::DEFAULT).unwrap();
        let g = four_t_generator(1, 2, 3, 3).unwrap();
        let v = coordinates(&g, &basis).unwrap();
        assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn resource_guard() {
        let spec = GramSpec::new(4, 4, Labelling::standard(4), 2).unwrap();
        assert!(matches!(gram_matrix(&spec, &Guards::DEFAULT), Err(Error::Resource(_))));
    }

    #[test]
    fn exploratory_labelling_is_never_certified() {
        let spec = GramSpec::new(2, 1, Labelling::parse("part:[2,1],std").unwrap(), 3).unwrap();
        let report = verify_state(&spec, &Guards::DEFAULT).unwrap();
        assert!(!report.certificate());
        assert!(!report.sym_ext_labelling);
    }
}
