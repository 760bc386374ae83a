//! Partitions, tableaux and Young symmetrisers in `Q[S_k]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{GroupAlgebraElement, Permutation};
use crate::Rational;

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Argument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// `(k)`: a single row.
    pub fn row(k: usize) -> Self {
        Partition { parts: if k == 0 { vec![] } else { vec![k] } }
    }

    /// `(1,…,1)`: a single column of height `k`.
    pub fn column(k: usize) -> Self {
        Partition { parts: vec![1; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_row(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn is_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect(),
        }
    }

    /// Hook length of the box in row `r`, column `c` (0-based).
    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.parts[r] - c - 1;
        let leg = self.parts[r + 1..].iter().filter(|&&p| p > c).count();
        arm + leg + 1
    }

    /// Every partition of `k`, in reverse lexicographic order.
    pub fn all(k: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `[5,3,1,1]`
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(1, format!("partition `{t}` must be written as [a,b,...]")))?;
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| Error::parse(1, format!("bad part `{p}` in `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A filling of a Young diagram with `1..=size`, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let size = shape.size();
        let mut seen = vec![false; size];
        for &x in rows.iter().flatten() {
            if x == 0 || x > size || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::Argument(format!("{rows:?} is not a filling with 1..={size}")));
            }
        }
        Ok(Tableau { shape, rows })
    }

    /// Boxes filled with `size, size-1, …, 1` reading rows left to right, top to bottom.
    pub fn canonical(shape: &Partition) -> Result<Self> {
        if shape.size() == 0 {
            return Err(Error::Argument("canonical tableau of the empty partition".into()));
        }
        let mut next = shape.size();
        let rows = shape
            .parts
            .iter()
            .map(|&len| {
                (0..len)
                    .map(|_| {
                        next -= 1;
                        next + 1
                    })
                    .collect()
            })
            .collect();
        Ok(Tableau { shape: shape.clone(), rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect())
            .collect()
    }

    /// Labels strictly increase along rows and down columns.
    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }

    /// Every standard tableau of the given shape.
    pub fn standard(shape: &Partition) -> Vec<Tableau> {
        // place labels 1..=size one at a time into an addable corner
        fn go(shape: &Partition, rows: &mut Vec<Vec<usize>>, next: usize, out: &mut Vec<Tableau>) {
            if next > shape.size() {
                out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
                return;
            }
            for r in 0..shape.len() {
                let len = rows[r].len();
                let fits = len < shape.parts[r] && (r == 0 || rows[r - 1].len() > len);
                if fits {
                    rows[r].push(next);
                    go(shape, rows, next + 1, out);
                    rows[r].pop();
                }
            }
        }
        let mut out = Vec::new();
        go(shape, &mut vec![Vec::new(); shape.len()], 1, &mut out);
        out
    }

    /// Permutations preserving every row's label set.
    pub fn row_stabilizer(&self) -> Vec<Permutation> {
        stabilizer(self.size(), &self.rows)
    }

    /// Permutations preserving every column's label set.
    pub fn column_stabilizer(&self) -> Vec<Permutation> {
        stabilizer(self.size(), &self.columns())
    }

    /// `a_t · b_t` with `a_t` the row sum and `b_t` the signed column sum.
    pub fn unnormalized_symmetriser(&self) -> GroupAlgebraElement {
        let degree = self.size();
        let a = GroupAlgebraElement::from_terms(
            degree,
            self.row_stabilizer().into_iter().map(|p| (p, Rational::one())),
        )
        .expect("stabiliser degree");
        let b = GroupAlgebraElement::from_terms(
            degree,
            self.column_stabilizer()
                .into_iter()
                .map(|p| {
                    let s = crate::int(p.sign());
                    (p, s)
                }),
        )
        .expect("stabiliser degree");
        a.multiply(&b).expect("same degree")
    }

    /// The idempotent rescaling of [`Tableau::unnormalized_symmetriser`].
    pub fn symmetriser(&self) -> Result<GroupAlgebraElement> {
        let ctilde = self.unnormalized_symmetriser();
        let alpha = normalization_constant(&ctilde)?;
        Ok(ctilde.scale(&alpha.recip()))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, " / ")?;
            }
            let labels: Vec<String> = row.iter().map(usize::to_string).collect();
            write!(f, "{}", labels.join(" "))?;
        }
        Ok(())
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The direct product of the symmetric groups on each block of labels.
fn stabilizer(degree: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut images: Vec<Vec<usize>> = vec![(1..=degree).collect()];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let arrangements = permutations_of(block);
        let mut next = Vec::with_capacity(images.len() * arrangements.len());
        for img in &images {
            for arr in &arrangements {
                let mut img = img.clone();
                for (&from, &to) in block.iter().zip(arr) {
                    img[from - 1] = to;
                }
                next.push(img);
            }
        }
        images = next;
    }
    let mut out: Vec<Permutation> = images
        .iter()
        .map(|img| Permutation::from_images(img).expect("block arrangement is a bijection"))
        .collect();
    out.sort();
    out
}

/// The unique `alpha` with `ctilde² = alpha · ctilde`, found by exact multiplication.
pub fn normalization_constant(ctilde: &GroupAlgebraElement) -> Result<Rational> {
    let (p, c) = ctilde
        .terms()
        .next()
        .ok_or_else(|| Error::Consistency("symmetriser is zero".into()))?;
    let square = ctilde.multiply(ctilde)?;
    let alpha = square.coefficient(p) / c;
    if alpha <= Rational::zero() || square != ctilde.scale(&alpha) {
        return Err(Error::Consistency(format!(
            "square of the unnormalised symmetriser is not a positive multiple of it (alpha = {alpha})"
        )));
    }
    Ok(alpha)
}

/// `c_λ` for the canonical tableau, shifted to points `offset+1..=offset+|λ|` of `S_degree`.
pub fn small_symmetriser(degree: usize, offset: usize, shape: &Partition) -> Result<GroupAlgebraElement> {
    if offset + shape.size() > degree {
        return Err(Error::Argument(format!(
            "block {}..={} overflows degree {degree}",
            offset + 1,
            offset + shape.size()
        )));
    }
    if shape.size() == 0 {
        return Ok(GroupAlgebraElement::one(degree));
    }
    Tableau::canonical(shape)?.symmetriser()?.embed(offset, degree)
}

/// A strand label: the defining representation, a symmetric or exterior power
/// of it, or the Weyl module of an arbitrary partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RepLabel {
    Std,
    Sym(usize),
    Ext(usize),
    Part(Partition),
}

impl RepLabel {
    pub fn partition(&self) -> Partition {
        match self {
            RepLabel::Std => Partition::row(1),
            RepLabel::Sym(k) => Partition::row(*k),
            RepLabel::Ext(k) => Partition::column(*k),
            RepLabel::Part(p) => p.clone(),
        }
    }

    /// Number of strands this label occupies after splitting.
    pub fn tensor_width(&self) -> usize {
        match self {
            RepLabel::Std => 1,
            RepLabel::Sym(k) | RepLabel::Ext(k) => *k,
            RepLabel::Part(p) => p.size(),
        }
    }

    /// Symmetric powers, exterior powers and the defining representation.
    pub fn is_sym_ext(&self) -> bool {
        !matches!(self, RepLabel::Part(_))
    }

    /// Dimension of the labelled `gl_n` representation.
    pub fn dimension(&self, n: u32) -> BigUint {
        rep_dimension(self, n)
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Std => write!(f, "std"),
            RepLabel::Sym(k) => write!(f, "sym:{k}"),
            RepLabel::Ext(k) => write!(f, "ext:{k}"),
            RepLabel::Part(p) => write!(f, "part:{p}"),
        }
    }
}

impl FromStr for RepLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let positive = |k: &str| -> Result<usize> {
            match k.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(Error::parse(1, format!("label `{t}` needs a positive integer"))),
            }
        };
        if t == "std" {
            Ok(RepLabel::Std)
        } else if let Some(k) = t.strip_prefix("sym:") {
            Ok(RepLabel::Sym(positive(k)?))
        } else if let Some(k) = t.strip_prefix("ext:") {
            Ok(RepLabel::Ext(positive(k)?))
        } else if let Some(p) = t.strip_prefix("part:") {
            let p: Partition = p.parse()?;
            if p.size() == 0 {
                return Err(Error::parse(1, "part: label needs a non-empty partition"));
            }
            Ok(RepLabel::Part(p))
        } else {
            Err(Error::parse(1, format!("unknown label `{t}`; expected std, sym:k, ext:k or part:[...]")))
        }
    }
}

/// Splits a comma-separated label list, ignoring commas inside `[...]`.
pub fn parse_labels(text: &str) -> Result<Vec<RepLabel>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(locate(text[start..k].parse(), start)?);
                start = k + 1;
            }
            _ => {}
        }
    }
    if !text[start..].trim().is_empty() || !out.is_empty() {
        out.push(locate(text[start..].parse(), start)?);
    }
    Ok(out)
}

fn locate<T>(r: Result<T>, offset: usize) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse { line, column: column + offset, message },
        other => other,
    })
}

/// `c_ρ`: the product of the small symmetrisers of each label on consecutive blocks.
pub fn labelling_symmetriser(labels: &[RepLabel]) -> Result<GroupAlgebraElement> {
    let degree: usize = labels.iter().map(RepLabel::tensor_width).sum();
    let mut out = GroupAlgebraElement::one(degree);
    let mut offset = 0;
    for label in labels {
        let shape = label.partition();
        if shape.size() > 1 {
            out = out.multiply(&small_symmetriser(degree, offset, &shape)?)?;
        }
        offset += shape.size();
    }
    Ok(out)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Dimension of the `gl_n` representation with the given label.
///
/// `Std -> n`, `Sym(k) -> C(n+k-1, k)`, `Ext(k) -> C(n, k)`; `Part(λ)` uses
/// the hook-content formula.
pub fn rep_dimension(label: &RepLabel, n: u32) -> BigUint {
    let n = n as u64;
    match label {
        RepLabel::Std => BigUint::from(n),
        RepLabel::Sym(k) => binomial((n + *k as u64).saturating_sub(1), *k as u64),
        RepLabel::Ext(k) => binomial(n, *k as u64),
        RepLabel::Part(p) => weyl_dimension(p, n),
    }
}

/// `Π (n + content) / hook` over the boxes of `shape`.
pub fn weyl_dimension(shape: &Partition, n: u64) -> BigUint {
    if shape.len() as u64 > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (r, &len) in shape.parts.iter().enumerate() {
        for c in 0..len {
            num *= BigUint::from(n + c as u64 - r as u64);
            den *= BigUint::from(shape.hook(r, c) as u64);
        }
    }
    num / den
}

/// Number of standard tableaux of the shape, by the hook length formula.
pub fn standard_tableau_count(shape: &Partition) -> BigUint {
    let mut num = BigUint::one();
    for k in 2..=shape.size() as u64 {
        num *= BigUint::from(k);
    }
    let mut den = BigUint::one();
    for (r, &len) in shape.parts.iter().enumerate() {
        for c in 0..len {
            den *= BigUint::from(shape.hook(r, c) as u64);
        }
    }
    num / den
}
