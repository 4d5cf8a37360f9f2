//! Multidegrees, shapes and monomials for the coordinate ring of a product of
//! projective spaces `P^{n_1} x ... x P^{n_k}`.
//!
//! Factor `j` carries the variables `x_{j,0}, ..., x_{j,n_j}`, all of degree
//! `e_j`. A [`Monomial`] stores every one of these exponents, so multiplying
//! monomials is a componentwise addition.
//!
//! # Monomial order
//!
//! Monomials of a fixed multidegree `t` are enumerated in *nested per-factor
//! lex* order: within a factor, exponent tuples are listed in decreasing
//! lexicographic order (`x0^2, x0 x1, x1^2`), and factors are nested left to
//! right, factor 0 varying slowest (`x0y0, x0y1, x1y0, x1y1`). This order fixes
//! the column layout of every Macaulay matrix and the coefficient layout of
//! every form.
//!
//! # Degree-list grammar
//!
//! Lists of generator degrees are written as
//!
//! ```text
//! degrees   := "" | generator ( ";" generator )*
//! generator := tuple ( "*" count )?
//! tuple     := uint ( "," uint )*
//! count     := uint, at least 1
//! ```
//!
//! ASCII whitespace around any token is ignored. `"1,1*3;2,2"` is three
//! generators of degree `(1,1)` followed by one of degree `(2,2)`. All tuples
//! in one list must have the same length.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact binomial coefficient; zero when `k < 0`, `n < 0` or `k > n`.
///
/// Computed in checked 128-bit arithmetic; a result that does not fit in
/// `i64` is reported as [`Error::Overflow`].
pub fn binomial(n: i64, k: i64) -> Result<i64> {
    if n < 0 || k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or(Error::Overflow("binomial"))?
            / (i as i128 + 1);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

/// The factor dimensions `(n_1, ..., n_k)` of `P^{n_1} x ... x P^{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Shape {
    dims: Vec<u32>,
}

impl Shape {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::usage("shape needs at least one factor"));
        }
        if dims.contains(&0) {
            return Err(Error::usage(format!(
                "every factor dimension must be at least 1, got {}",
                join(&dims)
            )));
        }
        Ok(Shape { dims })
    }

    /// Parses `"1,1"` style text.
    pub fn parse(text: &str) -> Result<Self> {
        Shape::new(parse_tuple(text)?)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Number of factors `k`.
    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    /// Number of variables `n_j + 1` in factor `j`.
    pub fn vars_in(&self, j: usize) -> usize {
        self.dims[j] as usize + 1
    }

    /// Total number of variables across all factors.
    pub fn num_vars(&self) -> usize {
        (0..self.arity()).map(|j| self.vars_in(j)).sum()
    }

    /// True when every factor is a projective line.
    pub fn all_lines(&self) -> bool {
        self.dims.iter().all(|&n| n == 1)
    }

    /// Offset of factor `j`'s exponents inside a [`Monomial`].
    fn offset(&self, j: usize) -> usize {
        (0..j).map(|i| self.vars_in(i)).sum()
    }

    pub fn check_arity(&self, t: &MultiDegree) -> Result<()> {
        if t.arity() != self.arity() {
            return Err(Error::usage(format!(
                "degree {t} has {} components but shape {self} has {} factors",
                t.arity(),
                self.arity()
            )));
        }
        Ok(())
    }

    /// Number of monomials of multidegree `t`: `prod_j C(n_j + t_j, n_j)`.
    pub fn monomial_count(&self, t: &MultiDegree) -> Result<i64> {
        self.check_arity(t)?;
        let mut count: i64 = 1;
        for (&n, &d) in self.dims.iter().zip(t.parts()) {
            let c = binomial(n as i64 + d as i64, n as i64)?;
            count = count.checked_mul(c).ok_or(Error::Overflow("monomial count"))?;
        }
        Ok(count)
    }

    /// [`Shape::monomial_count`] as a `usize`, for sizing buffers.
    pub fn basis_len(&self, t: &MultiDegree) -> Result<usize> {
        usize::try_from(self.monomial_count(t)?).map_err(|_| Error::Overflow("monomial count"))
    }
}

impl TryFrom<Vec<u32>> for Shape {
    type Error = Error;

    fn try_from(dims: Vec<u32>) -> Result<Self> {
        Shape::new(dims)
    }
}

impl From<Shape> for Vec<u32> {
    fn from(shape: Shape) -> Self {
        shape.dims
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.dims))
    }
}

/// A degree in `Z_{>=0}^k`, one component per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(parts: Vec<u32>) -> Self {
        MultiDegree(parts)
    }

    pub fn zero(arity: usize) -> Self {
        MultiDegree(vec![0; arity])
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(MultiDegree(parse_tuple(text)?))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiDegree) -> Result<bool> {
        if self.arity() != other.arity() {
            return Err(Error::usage(format!(
                "cannot compare degrees {self} and {other} of different lengths"
            )));
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// `self - other`, or `None` if some component would be negative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        debug_assert_eq!(self.arity(), other.arity());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiDegree)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        debug_assert_eq!(self.arity(), other.arity());
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Componentwise order on multidegrees.
pub fn leq(a: &MultiDegree, b: &MultiDegree) -> Result<bool> {
    a.leq(b)
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// The finite window `{ t : 0 <= t <= bounds }` on which series are computed.
///
/// Points are visited in row-major order, factor 0 varying slowest; every
/// point's componentwise predecessors come before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeBox {
    bounds: MultiDegree,
}

impl DegreeBox {
    pub fn new(bounds: MultiDegree) -> Self {
        DegreeBox { bounds }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(DegreeBox::new(MultiDegree::parse(text)?))
    }

    pub fn bounds(&self) -> &MultiDegree {
        &self.bounds
    }

    pub fn arity(&self) -> usize {
        self.bounds.arity()
    }

    /// Number of points, `prod_j (b_j + 1)`.
    pub fn len(&self) -> usize {
        self.bounds.parts().iter().map(|&b| b as usize + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: &MultiDegree) -> bool {
        t.arity() == self.arity() && t.parts().iter().zip(self.bounds.parts()).all(|(a, b)| a <= b)
    }

    /// Row-major strides, last factor contiguous.
    pub fn strides(&self) -> Vec<usize> {
        let k = self.arity();
        let mut strides = vec![1; k];
        for j in (0..k.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * (self.bounds.parts()[j + 1] as usize + 1);
        }
        strides
    }

    pub fn index_of(&self, t: &MultiDegree) -> Option<usize> {
        if !self.contains(t) {
            return None;
        }
        Some(self.strides().iter().zip(t.parts()).map(|(s, &d)| s * d as usize).sum())
    }

    pub fn point(&self, mut index: usize) -> MultiDegree {
        let strides = self.strides();
        let mut parts = vec![0; self.arity()];
        for (j, s) in strides.iter().enumerate() {
            parts[j] = (index / s) as u32;
            index %= s;
        }
        MultiDegree(parts)
    }

    pub fn points(&self) -> impl Iterator<Item = MultiDegree> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

/// A monomial with every exponent of every factor stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial from its flat exponent vector, checked against `shape`.
    pub fn new(shape: &Shape, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != shape.num_vars() {
            return Err(Error::usage(format!(
                "monomial has {} exponents, shape {shape} has {} variables",
                exps.len(),
                shape.num_vars()
            )));
        }
        Ok(Monomial { exps })
    }

    pub fn one(shape: &Shape) -> Self {
        Monomial { exps: vec![0; shape.num_vars()] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn factor<'a>(&'a self, shape: &Shape, j: usize) -> &'a [u32] {
        let start = shape.offset(j);
        &self.exps[start..start + shape.vars_in(j)]
    }

    pub fn degree(&self, shape: &Shape) -> MultiDegree {
        MultiDegree((0..shape.arity()).map(|j| self.factor(shape, j).iter().sum()).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Human-readable form using `x, y, z, w` for the first four factors.
    pub fn render(&self, shape: &Shape) -> String {
        const LETTERS: [char; 4] = ['x', 'y', 'z', 'w'];
        let mut out = String::new();
        for j in 0..shape.arity() {
            for (i, &e) in self.factor(shape, j).iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match LETTERS.get(j) {
                    Some(c) => out.push_str(&format!("{c}{i}")),
                    None => out.push_str(&format!("v{j}_{i}")),
                }
                if e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// Number of exponent tuples of length `vars` summing to `degree`.
fn tuple_count(vars: usize, degree: u32) -> usize {
    if vars == 0 {
        return (degree == 0) as usize;
    }
    binomial(degree as i64 + vars as i64 - 1, vars as i64 - 1).expect("tuple count fits") as usize
}

/// All exponent tuples of length `vars` summing to `degree`, decreasing lex.
fn factor_tuples(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(vars: usize, rem: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(rem);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=rem).rev() {
            prefix.push(a);
            go(vars - 1, rem - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(tuple_count(vars, degree));
    go(vars, degree, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Position of `exps` among [`factor_tuples`] of the same length and sum.
pub(crate) fn factor_rank(exps: &[u32]) -> usize {
    let mut rem: u32 = exps.iter().sum();
    let mut rank = 0;
    for (i, &a) in exps.iter().enumerate().take(exps.len().saturating_sub(1)) {
        let tail = exps.len() - i - 1;
        for b in a + 1..=rem {
            rank += tuple_count(tail, rem - b);
        }
        rem -= a;
    }
    rank
}

fn factor_unrank(vars: usize, degree: u32, mut index: usize) -> Vec<u32> {
    let mut exps = Vec::with_capacity(vars);
    let mut rem = degree;
    for i in 0..vars - 1 {
        let tail = vars - i - 1;
        let mut b = rem;
        loop {
            let block = tuple_count(tail, rem - b);
            if index < block {
                break;
            }
            index -= block;
            b -= 1;
        }
        exps.push(b);
        rem -= b;
    }
    exps.push(rem);
    exps
}

/// Per-factor basis sizes for degree `t`.
fn factor_counts(shape: &Shape, t: &MultiDegree) -> Vec<usize> {
    (0..shape.arity()).map(|j| tuple_count(shape.vars_in(j), t.parts()[j])).collect()
}

fn mixed_strides(counts: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; counts.len()];
    for j in (0..counts.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * counts[j + 1];
    }
    strides
}

/// Every monomial of multidegree `t`, in nested per-factor lex order.
pub fn enumerate_monomials(shape: &Shape, t: &MultiDegree) -> Result<Vec<Monomial>> {
    let total = shape.basis_len(t)?;
    let per_factor: Vec<Vec<Vec<u32>>> =
        (0..shape.arity()).map(|j| factor_tuples(shape.vars_in(j), t.parts()[j])).collect();
    let mut out = Vec::with_capacity(total);
    let mut choice = vec![0usize; shape.arity()];
    for _ in 0..total {
        let exps = choice.iter().enumerate().flat_map(|(j, &c)| per_factor[j][c].iter().copied()).collect();
        out.push(Monomial { exps });
        for j in (0..shape.arity()).rev() {
            choice[j] += 1;
            if choice[j] < per_factor[j].len() {
                break;
            }
            choice[j] = 0;
        }
    }
    Ok(out)
}

/// Position of `m` in [`enumerate_monomials`]`(shape, t)`.
pub fn monomial_index(shape: &Shape, t: &MultiDegree, m: &Monomial) -> Result<usize> {
    shape.check_arity(t)?;
    if m.exps.len() != shape.num_vars() || m.degree(shape) != *t {
        return Err(Error::usage(format!("monomial {} does not have degree {t}", m.render(shape))));
    }
    let strides = mixed_strides(&factor_counts(shape, t));
    Ok((0..shape.arity()).map(|j| factor_rank(m.factor(shape, j)) * strides[j]).sum())
}

/// Inverse of [`monomial_index`].
pub fn monomial_at(shape: &Shape, t: &MultiDegree, index: usize) -> Result<Monomial> {
    let total = shape.basis_len(t)?;
    if index >= total {
        return Err(Error::usage(format!("monomial index {index} out of range for degree {t}")));
    }
    let counts = factor_counts(shape, t);
    let strides = mixed_strides(&counts);
    let mut rest = index;
    let mut exps = Vec::with_capacity(shape.num_vars());
    for (j, &stride) in strides.iter().enumerate() {
        let r = rest / stride;
        rest %= stride;
        exps.extend(factor_unrank(shape.vars_in(j), t.parts()[j], r));
    }
    Ok(Monomial { exps })
}

fn parse_uint(token: &str, what: &str) -> Result<u32> {
    let token = token.trim();
    token
        .parse::<u32>()
        .map_err(|_| Error::usage(format!("expected a nonnegative integer in {what}, got {token:?}")))
}

fn parse_tuple(text: &str) -> Result<Vec<u32>> {
    text.split(',').map(|t| parse_uint(t, "degree tuple")).collect()
}

/// Parses a degree list; see the module docs for the grammar.
pub fn parse_degrees(text: &str) -> Result<Vec<MultiDegree>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<MultiDegree> = Vec::new();
    for generator in text.split(';') {
        let (tuple, count) = match generator.split_once('*') {
            Some((tuple, count)) => (tuple, parse_uint(count, "repetition count")?),
            None => (generator, 1),
        };
        if count == 0 {
            return Err(Error::usage(format!("repetition count must be at least 1 in {generator:?}")));
        }
        let degree = MultiDegree::parse(tuple)?;
        if let Some(first) = out.first() {
            if first.arity() != degree.arity() {
                return Err(Error::usage(format!(
                    "degree {degree} has {} components, expected {}",
                    degree.arity(),
                    first.arity()
                )));
            }
        }
        out.extend(std::iter::repeat_n(degree, count as usize));
    }
    Ok(out)
}

/// Inverse of [`parse_degrees`], grouping consecutive repeats with `*k`.
pub fn format_degrees(degrees: &[MultiDegree]) -> String {
    let mut groups: Vec<(String, usize)> = Vec::new();
    for d in degrees {
        let text = join(d.parts());
        match groups.last_mut() {
            Some((last, n)) if *last == text => *n += 1,
            _ => groups.push((text, 1)),
        }
    }
    groups
        .into_iter()
        .map(|(t, n)| if n == 1 { t } else { format!("{t}*{n}") })
        .collect::<Vec<_>>()
        .join(";")
}

fn join(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn md(parts: &[u32]) -> MultiDegree {
        MultiDegree::new(parts.to_vec())
    }

    fn shape(dims: &[u32]) -> Shape {
        Shape::new(dims.to_vec()).unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&md(&[1, 2]), &md(&[2, 2])).unwrap());
        assert!(!leq(&md(&[2, 1]), &md(&[1, 2])).unwrap());
        assert!(!leq(&md(&[1, 2]), &md(&[2, 1])).unwrap());
        for d in [md(&[0, 0]), md(&[3, 0]), md(&[5, 7])] {
            assert!(leq(&md(&[0, 0]), &d).unwrap());
        }
        assert!(matches!(leq(&md(&[1]), &md(&[1, 1])), Err(Error::Usage(_))));
    }

    fn pascal(n: usize) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![1i64]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1i64; i + 1];
            for k in 1..i {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(-1, 0).unwrap(), 0);
        assert_eq!(binomial(4, -1).unwrap(), 0);
        let triangle = pascal(40);
        assert_eq!(triangle[10][5], 252);
        for (n, row) in triangle.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n as i64, k as i64).unwrap(), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_overflow_is_loud() {
        assert!(matches!(binomial(200, 100), Err(Error::Overflow(_))));
        assert_eq!(binomial(66, 33).unwrap(), 7219428434016265740);
    }

    #[test]
    fn monomial_count_examples() {
        assert_eq!(shape(&[1, 1]).monomial_count(&md(&[2, 3])).unwrap(), 12);
        assert_eq!(shape(&[2, 2]).monomial_count(&md(&[1, 1])).unwrap(), 9);
        assert_eq!(shape(&[1, 1, 1]).monomial_count(&md(&[0, 0, 0])).unwrap(), 1);
        assert!(shape(&[1, 1]).monomial_count(&md(&[1])).is_err());
    }

    #[test]
    fn bilinear_count_closed_form() {
        let s = shape(&[1, 1]);
        for d in 0..=50 {
            for e in 0..=50 {
                assert_eq!(s.monomial_count(&md(&[d, e])).unwrap(), (d as i64 + 1) * (e as i64 + 1));
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let s = shape(&[1, 1]);
        let names: Vec<String> =
            enumerate_monomials(&s, &md(&[1, 1])).unwrap().iter().map(|m| m.render(&s)).collect();
        assert_eq!(names, ["x0y0", "x0y1", "x1y0", "x1y1"]);

        let line = shape(&[1]);
        let names: Vec<String> =
            enumerate_monomials(&line, &md(&[2])).unwrap().iter().map(|m| m.render(&line)).collect();
        assert_eq!(names, ["x0^2", "x0x1", "x1^2"]);
    }

    /// Brute force: every exponent vector with entries up to the degree,
    /// filtered by degree, sorted by per-factor tuples in decreasing lex.
    fn brute_force(shape: &Shape, t: &MultiDegree) -> Vec<Vec<u32>> {
        let n = shape.num_vars();
        let max = *t.parts().iter().max().unwrap_or(&0);
        let mut all = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            let m = Monomial { exps: cur.clone() };
            if m.degree(shape) == *t {
                all.push(cur.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    all.sort_by(|a, b| b.cmp(a));
                    return all;
                }
                i -= 1;
                if cur[i] < max {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let cases: [(&[u32], &[u32]); 5] =
            [(&[2, 2], &[1, 1]), (&[1, 1], &[3, 2]), (&[1, 2], &[2, 2]), (&[3], &[3]), (&[1, 1, 1], &[2, 1, 2])];
        for (dims, t) in cases {
            let s = shape(dims);
            let t = md(t);
            let ours: Vec<Vec<u32>> =
                enumerate_monomials(&s, &t).unwrap().into_iter().map(|m| m.exps).collect();
            // Decreasing lex on the flat vector equals nested per-factor lex
            // order because every factor has a fixed degree.
            assert_eq!(ours, brute_force(&s, &t), "shape {s} degree {t}");
        }
        let s = shape(&[2, 2]);
        let first = &enumerate_monomials(&s, &md(&[1, 1])).unwrap()[0];
        assert_eq!(first.render(&s), "x0y0");
    }

    #[test]
    fn index_round_trip_exhaustive() {
        let s = shape(&[1, 1]);
        let t = md(&[3, 2]);
        let all = enumerate_monomials(&s, &t).unwrap();
        assert_eq!(monomial_index(&s, &t, &all[0]).unwrap(), 0);
        assert_eq!(monomial_index(&s, &t, all.last().unwrap()).unwrap(), all.len() - 1);
        for (i, m) in all.iter().enumerate() {
            assert_eq!(monomial_index(&s, &t, m).unwrap(), i);
            assert_eq!(&monomial_at(&s, &t, i).unwrap(), m);
        }
        assert!(monomial_at(&s, &t, all.len()).is_err());
        let wrong = Monomial::one(&s);
        assert!(matches!(monomial_index(&s, &t, &wrong), Err(Error::Usage(_))));
    }

    #[test]
    fn degree_grammar() {
        let d = parse_degrees("1,1*3;2,2").unwrap();
        assert_eq!(d, vec![md(&[1, 1]), md(&[1, 1]), md(&[1, 1]), md(&[2, 2])]);
        assert_eq!(format_degrees(&d), "1,1*3;2,2");
        assert_eq!(parse_degrees(" 1, 2 * 2 ; 3,0 ").unwrap(), vec![md(&[1, 2]), md(&[1, 2]), md(&[3, 0])]);
        assert!(parse_degrees("").unwrap().is_empty());
        for bad in ["1,1;2", "1,a", "1,1*0", "1,1*", ";", "1,,1", "-1,2"] {
            assert!(matches!(parse_degrees(bad), Err(Error::Usage(_))), "{bad:?}");
        }
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![1, 0]).is_err());
        assert_eq!(Shape::parse("2,2").unwrap().num_vars(), 6);
    }

    #[test]
    fn box_points_row_major() {
        let b = DegreeBox::new(md(&[1, 2]));
        let pts: Vec<MultiDegree> = b.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1], md(&[0, 1]));
        assert_eq!(pts[3], md(&[1, 0]));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(b.index_of(p), Some(i));
        }
        assert_eq!(b.index_of(&md(&[2, 0])), None);
    }

    fn small_shape_degree() -> impl Strategy<Value = (Shape, MultiDegree)> {
        prop::collection::vec((1u32..=3, 0u32..=4), 1..=3).prop_map(|pairs| {
            let dims = pairs.iter().map(|p| p.0).collect();
            let t = pairs.iter().map(|p| p.1).collect();
            (Shape::new(dims).unwrap(), MultiDegree::new(t))
        })
    }

    proptest! {
        #[test]
        fn enumeration_is_a_basis((s, t) in small_shape_degree()) {
            let count = s.monomial_count(&t).unwrap();
            prop_assume!(count <= 10_000);
            let all = enumerate_monomials(&s, &t).unwrap();
            prop_assert_eq!(all.len() as i64, count);
            let distinct: HashSet<_> = all.iter().collect();
            prop_assert_eq!(distinct.len(), all.len());
            for (i, m) in all.iter().enumerate() {
                prop_assert_eq!(&m.degree(&s), &t);
                prop_assert_eq!(monomial_index(&s, &t, m).unwrap(), i);
            }
        }

        #[test]
        fn leq_is_a_partial_order(
            a in prop::collection::vec(0u32..4, 3),
            b in prop::collection::vec(0u32..4, 3),
            c in prop::collection::vec(0u32..4, 3),
        ) {
            let (a, b, c) = (md(&a), md(&b), md(&c));
            prop_assert!(a.leq(&a).unwrap());
            if a.leq(&b).unwrap() && b.leq(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.leq(&b).unwrap() && b.leq(&c).unwrap() {
                prop_assert!(a.leq(&c).unwrap());
            }
        }

        #[test]
        fn degree_list_round_trip(list in prop::collection::vec(prop::collection::vec(0u32..5, 2), 0..8)) {
            let degrees: Vec<MultiDegree> = list.into_iter().map(MultiDegree::new).collect();
            prop_assert_eq!(parse_degrees(&format_degrees(&degrees)).unwrap(), degrees);
        }
    }
}
