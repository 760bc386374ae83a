//! Permutations, the rational group algebra `Q[S_m]`, and the cycle-counting
//! functional `w_st`.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `x` to `p(q(x))`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::diagram::{ChordWord, DiagramExpr};
use crate::error::{Error, Result};
use crate::Rational;

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = u8::MAX as usize;

/// A bijection of `{1..m}`, stored as a dense 0-based image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "permutation degree {degree} exceeds {MAX_DEGREE}");
        Permutation { images: (0..degree as u8).collect() }
    }

    /// From 1-based images: `images[x - 1]` is the image of `x`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m > MAX_DEGREE {
            return Err(Error::Argument(format!("degree {m} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; m];
        for &y in images {
            if y == 0 || y > m || std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::Argument(format!("{images:?} is not a permutation of 1..={m}")));
            }
        }
        Ok(Permutation { images: images.iter().map(|&y| (y - 1) as u8).collect() })
    }

    /// The transposition of `a` and `b` (1-based) in `S_degree`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > degree || b > degree {
            return Err(Error::Argument(format!("transposition ({a},{b}) outside 1..={degree}")));
        }
        let mut p = Self::identity(degree);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// Product of the given cycles (1-based, disjointness not required),
    /// rightmost cycle applied first.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::Argument(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut out = Self::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut seen = vec![false; degree];
            for &x in cycle {
                if x == 0 || x > degree || std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::Argument(format!("bad cycle {cycle:?} in degree {degree}")));
                }
            }
            let mut c = Self::identity(degree);
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                c.images[x - 1] = (y - 1) as u8;
            }
            out = c.compose_unchecked(&out);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 0-based image array.
    pub fn images0(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::Dimension(format!(
                "cannot compose permutations of degree {} and {}",
                self.degree(),
                q.degree()
            )));
        }
        Ok(self.compose_unchecked(q))
    }

    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        Permutation { images: q.images.iter().map(|&y| self.images[y as usize]).collect() }
    }

    /// Left-multiplies in place by the transposition of 0-based points `a`, `b`.
    pub(crate) fn swap_values(&mut self, a: u8, b: u8) {
        for y in self.images.iter_mut() {
            if *y == a {
                *y = b;
            } else if *y == b {
                *y = a;
            }
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        Permutation { images: inv }
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut count = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
            }
        }
        count
    }

    /// Cycle lengths in weakly decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles_with_fixed().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn sign(&self) -> i64 {
        if (self.degree() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Non-trivial cycles, each starting at its smallest point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Embeds into `S_degree`, moving point `x` to `x + offset`.
    pub fn embed(&self, offset: usize, degree: usize) -> Result<Permutation> {
        if offset + self.degree() > degree {
            return Err(Error::Argument(format!(
                "block {}..={} does not fit in degree {degree}",
                offset + 1,
                offset + self.degree()
            )));
        }
        let mut out = Self::identity(degree);
        for (x, &y) in self.images.iter().enumerate() {
            out.images[x + offset] = y + offset as u8;
        }
        Ok(out)
    }

    /// Parses cycle notation such as `(1 3 2)(4 5)`; `()` or the empty string is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let chars: Vec<char> = text.chars().collect();
        let mut cycles = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            match chars[pos] {
                c if c.is_whitespace() => pos += 1,
                '(' => {
                    let open = pos;
                    let close = chars[pos..]
                        .iter()
                        .position(|&c| c == ')')
                        .map(|k| k + pos)
                        .ok_or_else(|| Error::parse(open + 1, "unclosed cycle"))?;
                    let body: String = chars[pos + 1..close].iter().collect();
                    let mut cycle = Vec::new();
                    for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                        let x = tok
                            .parse::<usize>()
                            .map_err(|_| Error::parse(open + 2, format!("bad point `{tok}`")))?;
                        if x == 0 || x > degree {
                            return Err(Error::parse(open + 2, format!("point {x} outside 1..={degree}")));
                        }
                        cycle.push(x);
                    }
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                    pos = close + 1;
                }
                c => return Err(Error::parse(pos + 1, format!("unexpected `{c}` in cycle notation"))),
            }
        }
        Self::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `σ(C)`: the product of the chords' transpositions, later chords on the left.
pub fn sigma(word: &ChordWord) -> Permutation {
    let mut p = Permutation::identity(word.strands());
    for c in word.chords() {
        p.swap_values((c.i() - 1) as u8, (c.j() - 1) as u8);
    }
    p
}

/// Linear extension of [`sigma`].
pub fn sigma_lin(expr: &DiagramExpr) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(expr.strands());
    for (w, c) in expr.terms() {
        out.add_term(sigma(w), c.clone());
    }
    out
}

/// A finitely supported rational combination of permutations of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement { degree, terms: BTreeMap::new() }
    }

    /// `1·id`.
    pub fn one(degree: usize) -> Self {
        Self::from_perm(Permutation::identity(degree))
    }

    pub fn from_perm(p: Permutation) -> Self {
        let degree = p.degree();
        let mut terms = BTreeMap::new();
        terms.insert(p, Rational::one());
        GroupAlgebraElement { degree, terms }
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Permutation, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            if p.degree() != degree {
                return Err(Error::Dimension(format!(
                    "permutation {p} of degree {} in an element of degree {degree}",
                    p.degree()
                )));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, p: Permutation, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Permutation) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_degree(&self, other: &GroupAlgebraElement) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "group algebra elements of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> GroupAlgebraElement {
        let mut out = Self::zero(self.degree);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * s);
        }
        out
    }

    /// Convolution product `self · other`.
    pub fn multiply(&self, other: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check_degree(other)?;
        let mut out = Self::zero(self.degree);
        for (p, cp) in &self.terms {
            for (q, cq) in &other.terms {
                out.add_term(p.compose_unchecked(q), cp * cq);
            }
        }
        Ok(out)
    }

    /// Inverts every group element; coefficients are real.
    pub fn star(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(p, c)| (p.inverse(), c.clone())).collect(),
        }
    }

    /// Image under `S_k -> S_degree`, shifting every point by `offset`.
    pub fn embed(&self, offset: usize, degree: usize) -> Result<GroupAlgebraElement> {
        let mut out = Self::zero(degree);
        for (p, c) in &self.terms {
            out.add_term(p.embed(offset, degree)?, c.clone());
        }
        Ok(out)
    }

    /// Largest absolute coefficient difference; used to report asymmetries.
    pub fn max_abs_difference(&self, other: &GroupAlgebraElement) -> Rational {
        let mut worst = Rational::zero();
        for p in self.terms.keys().chain(other.terms.keys()) {
            let d = (self.coefficient(p) - other.coefficient(p)).abs();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// Parses one `coeff * cycles` term per line, e.g. `1/2 * (1 2)`.
    pub fn parse(text: &str, degree: usize) -> Result<GroupAlgebraElement> {
        let mut out = Self::zero(degree);
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let relocate = |e: Error| match e {
                Error::Parse { column, message, .. } => Error::Parse { line: line_no + 1, column, message },
                other => other,
            };
            let (coeff, cycles) = line.split_once('*').ok_or_else(|| Error::Parse {
                line: line_no + 1,
                column: 1,
                message: "expected `coeff * cycles`".into(),
            })?;
            let c = coeff.trim().parse::<Rational>().map_err(|_| Error::Parse {
                line: line_no + 1,
                column: 1,
                message: format!("bad coefficient `{}`", coeff.trim()),
            })?;
            let p = Permutation::parse_cycles(cycles, degree).map_err(relocate)?;
            out.add_term(p, c);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * {p}")?;
        }
        Ok(())
    }
}

/// A polynomial in the indeterminate `n` with rational coefficients,
/// `coefficients()[k]` multiplying `n^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CyclePoly {
    coeffs: Vec<Rational>,
}

impl CyclePoly {
    pub fn zero() -> Self {
        CyclePoly { coeffs: Vec::new() }
    }

    pub fn monomial(exponent: usize, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_monomial(exponent, &coeff);
        p
    }

    pub fn from_coefficients(coeffs: Vec<Rational>) -> Self {
        let mut p = CyclePoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_monomial(&mut self, exponent: usize, coeff: &Rational) {
        if self.coeffs.len() <= exponent {
            self.coeffs.resize(exponent + 1, Rational::zero());
        }
        self.coeffs[exponent] += coeff;
        self.trim();
    }

    pub fn add_scaled(&mut self, other: &CyclePoly, s: &Rational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * s;
        }
        self.trim();
    }

    pub fn scale(&self, s: &Rational) -> CyclePoly {
        Self::from_coefficients(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Specialises `n`; requires `n >= 1`.
    pub fn evaluate(&self, n: i64) -> Result<Rational> {
        if n < 1 {
            return Err(Error::Argument(format!("n must be a positive integer, got {n}")));
        }
        let n = crate::int(n);
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &n + c;
        }
        Ok(acc)
    }
}

impl fmt::Display for CyclePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            match (show_coeff, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag} n")?,
                (false, 1) => write!(f, "n")?,
                (true, _) => write!(f, "{mag} n^{k}")?,
                (false, _) => write!(f, "n^{k}")?,
            }
        }
        Ok(())
    }
}

/// `Σ z_π π ↦ Σ z_π n^{cycles(π)}`.
pub fn w_st_poly(a: &GroupAlgebraElement) -> CyclePoly {
    let mut p = CyclePoly::zero();
    for (perm, c) in a.terms() {
        p.add_monomial(perm.cycle_count(), c);
    }
    p
}

pub fn evaluate_poly(p: &CyclePoly, n: i64) -> Result<Rational> {
    p.evaluate(n)
}
