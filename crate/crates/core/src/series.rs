//! Exact integer series on a degree box.
//!
//! The conjectured Hilbert series of a generic ideal with generator degrees
//! `d_1, ..., d_r` is
//!
//! ```text
//! [ prod_i (1 - u^{d_i}) / prod_j (1 - u_j)^{n_j + 1} ]_+
//! ```
//!
//! where `[.]_+` keeps a coefficient only if every coefficient at a
//! componentwise smaller-or-equal degree is strictly positive. Everything
//! here is evaluated on a finite [`DegreeBox`]. Truncation is exact on the
//! box because the predecessors of a box point lie in the box.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multidegree::{DegreeBox, MultiDegree, Shape};

/// Coefficients of a series on every point of a box, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    shape: Shape,
    window: DegreeBox,
    coeffs: Vec<i64>,
}

/// First failure of a termwise comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub at: MultiDegree,
    pub left: i64,
    pub right: i64,
}

impl IntSeries {
    pub fn from_coeffs(shape: Shape, window: DegreeBox, coeffs: Vec<i64>) -> Result<Self> {
        check_window(&shape, &window)?;
        if coeffs.len() != window.len() {
            return Err(Error::usage(format!(
                "series on box {} needs {} coefficients, got {}",
                window.bounds(),
                window.len(),
                coeffs.len()
            )));
        }
        Ok(IntSeries { shape, window, coeffs })
    }

    pub fn from_fn(shape: Shape, window: DegreeBox, f: impl FnMut(MultiDegree) -> i64) -> Result<Self> {
        check_window(&shape, &window)?;
        let coeffs = window.points().map(f).collect();
        Ok(IntSeries { shape, window, coeffs })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn window(&self) -> &DegreeBox {
        &self.window
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient at `t`, or `None` outside the box.
    pub fn get(&self, t: &MultiDegree) -> Option<i64> {
        self.window.index_of(t).map(|i| self.coeffs[i])
    }

    /// Coefficient at `t`; panics outside the box.
    pub fn at(&self, parts: &[u32]) -> i64 {
        let t = MultiDegree::new(parts.to_vec());
        self.get(&t).unwrap_or_else(|| panic!("{t} lies outside box {}", self.window.bounds()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (MultiDegree, i64)> + '_ {
        self.window.points().zip(self.coeffs.iter().copied())
    }

    fn same_domain(&self, other: &IntSeries) -> Result<()> {
        if self.shape != other.shape || self.window != other.window {
            return Err(Error::usage(format!(
                "series over shape {} box {} and shape {} box {} are not comparable",
                self.shape,
                self.window.bounds(),
                other.shape,
                other.window.bounds()
            )));
        }
        Ok(())
    }

    /// True if a zero at `t` forces zeros at every `t' >= t` in the box.
    pub fn is_staircase(&self) -> bool {
        let strides = self.window.strides();
        self.window.points().enumerate().all(|(i, t)| {
            (0..t.arity()).all(|j| t.parts()[j] == 0 || self.coeffs[i - strides[j]] != 0 || self.coeffs[i] == 0)
        })
    }

    /// Pointwise minimum of a non-empty collection of series on one domain.
    pub fn pointwise_min<'a>(series: impl IntoIterator<Item = &'a IntSeries>) -> Result<IntSeries> {
        let mut iter = series.into_iter();
        let mut acc = iter.next().ok_or_else(|| Error::usage("minimum of no series"))?.clone();
        for s in iter {
            acc.same_domain(s)?;
            for (a, b) in acc.coeffs.iter_mut().zip(&s.coeffs) {
                *a = (*a).min(*b);
            }
        }
        Ok(acc)
    }

    /// Aligned text grid: factor 0 down, factor 1 across, remaining factors
    /// as labelled slices.
    pub fn render_grid(&self) -> String {
        let bounds = self.window.bounds().parts();
        let width = self
            .coeffs
            .iter()
            .map(|c| c.to_string().len())
            .chain(bounds.iter().map(|b| b.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        if bounds.len() == 1 {
            for (t, c) in self.iter() {
                let _ = writeln!(out, "{:>w$} | {:>w$}", t.parts()[0], c, w = width);
            }
            return out;
        }
        let rest = DegreeBox::new(MultiDegree::new(bounds[2..].to_vec()));
        for (s, tail) in rest.points().enumerate() {
            if bounds.len() > 2 {
                let labels: Vec<String> =
                    tail.parts().iter().enumerate().map(|(j, v)| format!("t{}={v}", j + 3)).collect();
                if s > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "[{}]", labels.join(", "));
            }
            let _ = write!(out, "{:>w$} |", "", w = width);
            for e in 0..=bounds[1] {
                let _ = write!(out, " {:>w$}", e, w = width);
            }
            out.push('\n');
            let _ = writeln!(out, "{}", "-".repeat((width + 1) * (bounds[1] as usize + 2) + 1));
            for d in 0..=bounds[0] {
                let _ = write!(out, "{:>w$} |", d, w = width);
                for e in 0..=bounds[1] {
                    let mut parts = vec![d, e];
                    parts.extend_from_slice(tail.parts());
                    let _ = write!(out, " {:>w$}", self.at(&parts), w = width);
                }
                out.push('\n');
            }
        }
        out
    }
}

fn check_window(shape: &Shape, window: &DegreeBox) -> Result<()> {
    if window.arity() != shape.arity() {
        return Err(Error::usage(format!(
            "box {} does not match shape {shape}",
            window.bounds()
        )));
    }
    Ok(())
}

/// `1 / prod_j (1 - u_j)^{n_j+1}` on the box: the Hilbert function of the
/// polynomial ring itself.
pub fn free_series(shape: &Shape, window: &DegreeBox) -> Result<IntSeries> {
    check_window(shape, window)?;
    let coeffs = window.points().map(|t| shape.monomial_count(&t)).collect::<Result<Vec<_>>>()?;
    IntSeries::from_coeffs(shape.clone(), window.clone(), coeffs)
}

/// Multiplies by `1 - u^d`: the result at `t` is `s(t) - s(t - d)`, with
/// `s` taken as zero at degrees with a negative component.
pub fn subtract_shifted(s: &IntSeries, d: &MultiDegree) -> Result<IntSeries> {
    if d.arity() != s.shape.arity() {
        return Err(Error::usage(format!("shift {d} does not match shape {}", s.shape)));
    }
    let strides = s.window.strides();
    let offset: usize = strides.iter().zip(d.parts()).map(|(st, &p)| st * p as usize).sum();
    let mut coeffs = s.coeffs.clone();
    for (i, t) in s.window.points().enumerate() {
        if d.leq(&t)? {
            coeffs[i] = s.coeffs[i]
                .checked_sub(s.coeffs[i - offset])
                .ok_or(Error::Overflow("series coefficient"))?;
        }
    }
    Ok(IntSeries { shape: s.shape.clone(), window: s.window.clone(), coeffs })
}

/// The `[.]_+` truncation.
///
/// `ok(t) = a(t) > 0 && ok(t - e_j)` for every unit vector `e_j` with
/// `t_j > 0`; row-major order visits those predecessors first.
pub fn positive_part(s: &IntSeries) -> IntSeries {
    let strides = s.window.strides();
    let mut ok = vec![false; s.coeffs.len()];
    for (i, t) in s.window.points().enumerate() {
        ok[i] = s.coeffs[i] > 0 && (0..t.arity()).all(|j| t.parts()[j] == 0 || ok[i - strides[j]]);
    }
    let coeffs = s.coeffs.iter().zip(&ok).map(|(&c, &keep)| if keep { c } else { 0 }).collect();
    IntSeries { shape: s.shape.clone(), window: s.window.clone(), coeffs }
}

/// `prod_i (1 - u^{d_i}) / prod_j (1 - u_j)^{n_j+1}` before truncation.
pub fn raw_product_series(shape: &Shape, degrees: &[MultiDegree], window: &DegreeBox) -> Result<IntSeries> {
    let mut s = free_series(shape, window)?;
    for d in degrees {
        s = subtract_shifted(&s, d)?;
    }
    Ok(s)
}

/// The conjectured Hilbert series of a generic ideal with the given
/// generator degrees.
pub fn conjectured_series(shape: &Shape, degrees: &[MultiDegree], window: &DegreeBox) -> Result<IntSeries> {
    Ok(positive_part(&raw_product_series(shape, degrees, window)?))
}

/// Minimal degrees where a truncated series vanishes: zero at `t` while
/// every immediate predecessor `t - e_j` is nonzero.
pub fn truncation_frontier(s: &IntSeries) -> Vec<MultiDegree> {
    let strides = s.window.strides();
    s.window
        .points()
        .enumerate()
        .filter(|(i, t)| {
            s.coeffs[*i] == 0 && (0..t.arity()).all(|j| t.parts()[j] == 0 || s.coeffs[i - strides[j]] != 0)
        })
        .map(|(_, t)| t)
        .collect()
}

/// Termwise `a <= b`; on failure reports the lex-smallest violating degree.
pub fn leq_series(a: &IntSeries, b: &IntSeries) -> Result<Option<Violation>> {
    a.same_domain(b)?;
    Ok(a.iter().zip(&b.coeffs).find(|((_, x), &y)| *x > y).map(|((at, left), &right)| Violation { at, left, right }))
}

/// First degree (lex order) where `a` and `b` differ.
pub fn first_difference(a: &IntSeries, b: &IntSeries) -> Result<Option<Violation>> {
    a.same_domain(b)?;
    Ok(a.iter().zip(&b.coeffs).find(|((_, x), &y)| *x != y).map(|((at, left), &right)| Violation { at, left, right }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multidegree::binomial;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn md(parts: &[u32]) -> MultiDegree {
        MultiDegree::new(parts.to_vec())
    }

    fn shape(dims: &[u32]) -> Shape {
        Shape::new(dims.to_vec()).unwrap()
    }

    fn window(bounds: &[u32]) -> DegreeBox {
        DegreeBox::new(md(bounds))
    }

    #[test]
    fn free_series_values() {
        let s = free_series(&shape(&[1, 1]), &window(&[4, 4])).unwrap();
        assert_eq!(s.at(&[2, 3]), 12);
        assert_eq!(s.at(&[0, 0]), 1);
        let s = free_series(&shape(&[2, 2]), &window(&[2, 2])).unwrap();
        assert_eq!(s.at(&[1, 1]), 9);
        let s = free_series(&shape(&[1, 3, 2]), &window(&[1, 1, 1])).unwrap();
        assert_eq!(s.at(&[0, 0, 0]), 1);
        assert!(free_series(&shape(&[1, 1]), &window(&[3])).is_err());
    }

    #[test]
    fn subtract_shifted_bilinear() {
        let s = free_series(&shape(&[1, 1]), &window(&[7, 7])).unwrap();
        let r = subtract_shifted(&s, &md(&[1, 1])).unwrap();
        for (t, c) in r.iter() {
            let (d, e) = (t.parts()[0] as i64, t.parts()[1] as i64);
            assert_eq!(c, (d + 1) * (e + 1) - d * e);
            assert_eq!(c, d + e + 1);
        }
    }

    #[test]
    fn subtract_shifted_edge_cases() {
        let s = free_series(&shape(&[1, 1]), &window(&[3, 3])).unwrap();
        assert_eq!(subtract_shifted(&s, &md(&[4, 0])).unwrap(), s);
        let ones = IntSeries::from_fn(shape(&[1, 1]), window(&[3, 3]), |_| 1).unwrap();
        let zero = subtract_shifted(&ones, &md(&[0, 0])).unwrap();
        assert!(zero.coeffs().iter().all(|&c| c == 0));
        assert!(subtract_shifted(&s, &md(&[1])).is_err());
    }

    #[test]
    fn positive_part_trivial_cases() {
        let mut coeffs = vec![1; 16];
        coeffs[0] = 0;
        let s = IntSeries::from_coeffs(shape(&[1, 1]), window(&[3, 3]), coeffs).unwrap();
        assert!(positive_part(&s).coeffs().iter().all(|&c| c == 0));
        let s = free_series(&shape(&[1, 1]), &window(&[3, 3])).unwrap();
        assert_eq!(positive_part(&s), s);
    }

    /// Direct reading of the definition: keep `a(t)` iff `a(t') > 0` for
    /// every `t' <= t`.
    fn positive_part_by_definition(s: &IntSeries) -> IntSeries {
        IntSeries::from_fn(s.shape().clone(), s.window().clone(), |t| {
            let keep = s.iter().filter(|(p, _)| p.leq(&t).unwrap()).all(|(_, c)| c > 0);
            if keep { s.get(&t).unwrap() } else { 0 }
        })
        .unwrap()
    }

    /// Coefficient of `prod_i (1 - u^{d_i}) / prod (1-u_j)^{n_j+1}` by
    /// inclusion-exclusion over subsets of generators.
    fn raw_by_subsets(shape: &Shape, degrees: &[MultiDegree], t: &MultiDegree) -> i64 {
        let mut total = 0;
        for mask in 0u32..(1 << degrees.len()) {
            let mut shift = MultiDegree::zero(shape.arity());
            for (i, d) in degrees.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    shift = shift.add(d);
                }
            }
            if let Some(rest) = t.checked_sub(&shift) {
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                let count: i64 = shape
                    .dims()
                    .iter()
                    .zip(rest.parts())
                    .map(|(&n, &d)| binomial(n as i64 + d as i64, n as i64).unwrap())
                    .product();
                total += sign * count;
            }
        }
        total
    }

    #[test]
    fn three_bilinear_forms_truncate_at_frontier() {
        let (sh, w) = (shape(&[1, 1]), window(&[6, 6]));
        let degrees = vec![md(&[1, 1]); 3];
        let raw = raw_product_series(&sh, &degrees, &w).unwrap();
        assert_eq!(raw.at(&[2, 1]), 6 - 3 * 2);
        for (t, c) in raw.iter() {
            assert_eq!(c, raw_by_subsets(&sh, &degrees, &t));
        }
        let truncated = positive_part(&raw);
        assert_eq!(truncated, positive_part_by_definition(&raw));
        for (t, c) in truncated.iter() {
            let (d, e) = (t.parts()[0], t.parts()[1]);
            let expect = match (d, e) {
                (d, 0) => d as i64 + 1,
                (0, e) => e as i64 + 1,
                (1, 1) => 1,
                _ => 0,
            };
            assert_eq!(c, expect, "at {t}");
        }
    }

    #[test]
    fn conjectured_principal_and_two_forms() {
        let (sh, w) = (shape(&[1, 1]), window(&[8, 8]));
        let one = conjectured_series(&sh, &[md(&[1, 1])], &w).unwrap();
        for (t, c) in one.iter() {
            assert_eq!(c, t.parts()[0] as i64 + t.parts()[1] as i64 + 1);
        }
        let two = conjectured_series(&sh, &[md(&[1, 1]), md(&[1, 1])], &w).unwrap();
        for (t, c) in two.iter() {
            let (d, e) = (t.parts()[0] as i64, t.parts()[1] as i64);
            let expect = if d == 0 { e + 1 } else if e == 0 { d + 1 } else { 2 };
            assert_eq!(c, expect, "at {t}");
        }
    }

    #[test]
    fn conjectured_p2_times_p2_frontier() {
        let (sh, w) = (shape(&[2, 2]), window(&[10, 10]));
        let degrees = vec![md(&[1, 1]); 4];
        let raw = raw_product_series(&sh, &degrees, &w).unwrap();
        for d in 0..=10u32 {
            let d64 = d as i64;
            assert_eq!(raw.at(&[d, 1]), (d64 + 1) * (6 - d64) / 2, "raw at ({d},1)");
            assert_eq!(raw.at(&[d, 1]), raw_by_subsets(&sh, &degrees, &md(&[d, 1])));
        }
        let conj = positive_part(&raw);
        assert_eq!(conj, positive_part_by_definition(&raw));
        assert_eq!(conj.at(&[6, 1]), 0);
        assert_eq!(conj.at(&[1, 6]), 0);
        assert_eq!(conj.at(&[5, 5]), 6);
        assert_eq!(truncation_frontier(&conj), vec![md(&[1, 6]), md(&[6, 1])]);
        for d in 6..=10 {
            assert_eq!(conj.at(&[d, d]), 0);
            assert_eq!(raw.at(&[d, d]), 6);
        }
    }

    #[test]
    fn comparison() {
        let (sh, w) = (shape(&[1, 1]), window(&[2, 2]));
        let a = free_series(&sh, &w).unwrap();
        assert_eq!(leq_series(&a, &a).unwrap(), None);
        let ones = IntSeries::from_fn(sh.clone(), w.clone(), |_| 1).unwrap();
        let zeros = IntSeries::from_fn(sh.clone(), w.clone(), |_| 0).unwrap();
        let v = leq_series(&ones, &zeros).unwrap().unwrap();
        assert_eq!((v.at, v.left, v.right), (md(&[0, 0]), 1, 0));
        let other = free_series(&sh, &window(&[2, 3])).unwrap();
        assert!(matches!(leq_series(&a, &other), Err(Error::Usage(_))));
    }

    #[test]
    fn truncation_commutes_with_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (sh, w) = (shape(&[1, 1]), window(&[8, 8]));
        for _ in 0..1000 {
            let a = IntSeries::from_fn(sh.clone(), w.clone(), |_| rng.gen_range(-5..=5)).unwrap();
            let m = md(&[rng.gen_range(0..=9), rng.gen_range(0..=9)]);
            let lhs = positive_part(&subtract_shifted(&positive_part(&a), &m).unwrap());
            let rhs = positive_part(&subtract_shifted(&a, &m).unwrap());
            assert_eq!(lhs, rhs, "shift {m}");
        }
    }

    #[test]
    fn grid_rendering() {
        let s = free_series(&shape(&[1, 1]), &window(&[1, 2])).unwrap();
        let text = s.render_grid();
        assert_eq!(text, "  | 0 1 2\n---------\n0 | 1 2 3\n1 | 2 4 6\n");
        let s = free_series(&shape(&[1, 1, 1]), &window(&[1, 1, 1])).unwrap();
        let text = s.render_grid();
        assert!(text.starts_with("[t3=0]\n"));
        assert!(text.contains("[t3=1]\n"));
        assert!(text.contains("1 | 4 8"));
        let s = free_series(&shape(&[2]), &window(&[2])).unwrap();
        assert_eq!(s.render_grid(), "0 | 1\n1 | 3\n2 | 6\n");
    }

    fn arb_degrees(arity: usize) -> impl Strategy<Value = Vec<MultiDegree>> {
        prop::collection::vec(prop::collection::vec(0u32..=3, arity).prop_map(MultiDegree::new), 0..=6)
    }

    proptest! {
        #[test]
        fn conjecture_ignores_generator_order(mut degrees in arb_degrees(2), seed in any::<u64>()) {
            let (sh, w) = (shape(&[1, 2]), window(&[7, 7]));
            let before = conjectured_series(&sh, &degrees, &w).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..degrees.len()).rev() {
                degrees.swap(i, rng.gen_range(0..=i));
            }
            prop_assert_eq!(conjectured_series(&sh, &degrees, &w).unwrap(), before);
        }

        #[test]
        fn truncation_is_a_staircase(coeffs in prop::collection::vec(-3i64..=6, 5 * 4 * 3)) {
            let s = IntSeries::from_coeffs(shape(&[1, 1, 1]), window(&[4, 3, 2]), coeffs).unwrap();
            let p = positive_part(&s);
            prop_assert!(p.is_staircase());
            prop_assert!(p.coeffs().iter().all(|&c| c >= 0));
            prop_assert_eq!(p, positive_part_by_definition(&s));
        }

        #[test]
        fn iterated_shift_matches_inclusion_exclusion(degrees in arb_degrees(3)) {
            let (sh, w) = (shape(&[1, 1, 2]), window(&[4, 4, 4]));
            let raw = raw_product_series(&sh, &degrees, &w).unwrap();
            for (t, c) in raw.iter() {
                prop_assert_eq!(c, raw_by_subsets(&sh, &degrees, &t));
            }
        }
    }
}
