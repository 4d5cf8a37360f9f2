//! Multigraded Hilbert functions of `S/I` and conjecture verification.
//!
//! `dim (S/I)_t = #monomials(t) - rank M_t`, where `M_t` is the Macaulay
//! matrix of `I` in degree `t`. Box points are processed in levels of equal
//! total degree; points within a level run in parallel on the current rayon
//! pool. Two exact shortcuts are applied:
//!
//! * no generator of degree `<= t`: `I_t = 0` and no matrix is built;
//! * `(S/I)_{t - e_j} = 0` for some `j`: then `(S/I)_t = 0` as well, since
//!   `S_t` is spanned by variables times `S_{t - e_j}`.
//!
//! Both give the same value the rank would, so results do not depend on the
//! schedule.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{macaulay_matrix, Form, IdealSpec};
use crate::gfp::PrimeField;
use crate::multidegree::{enumerate_monomials, DegreeBox, Monomial, MultiDegree, Shape};
use crate::series::{conjectured_series, first_difference, leq_series, IntSeries, Violation};

/// Box bounds `sum_i d_ij + 2` per factor, capped at 16.
pub fn default_box(shape: &Shape, degrees: &[MultiDegree]) -> DegreeBox {
    let bounds = (0..shape.arity())
        .map(|j| (degrees.iter().map(|d| d.parts().get(j).copied().unwrap_or(0)).sum::<u32>() + 2).min(16))
        .collect();
    DegreeBox::new(MultiDegree::new(bounds))
}

/// Hilbert function of `S/I` on the box, plus the time spent per point.
#[derive(Clone, Debug)]
pub struct HilbertFunction {
    pub series: IntSeries,
    pub timings: Vec<Duration>,
}

/// Hilbert function of the quotient by the given realized forms.
pub fn hilbert_function_of_forms(
    shape: &Shape,
    field: PrimeField,
    forms: &[Form],
    window: &DegreeBox,
) -> Result<HilbertFunction> {
    if window.arity() != shape.arity() {
        return Err(Error::usage(format!("box {} does not match shape {shape}", window.bounds())));
    }
    for f in forms {
        shape.check_arity(f.degree())?;
    }
    let n = window.len();
    let strides = window.strides();
    let mut values: Vec<Option<i64>> = vec![None; n];
    let mut timings = vec![Duration::ZERO; n];

    let mut levels: Vec<Vec<usize>> = Vec::new();
    for (i, t) in window.points().enumerate() {
        let level = t.parts().iter().map(|&d| d as usize).sum::<usize>();
        if levels.len() <= level {
            levels.resize(level + 1, Vec::new());
        }
        levels[level].push(i);
    }

    for level in levels {
        let computed: Vec<(usize, Result<i64>, Duration)> = level
            .par_iter()
            .map(|&i| {
                let start = Instant::now();
                let t = window.point(i);
                let value = (|| {
                    let count = shape.monomial_count(&t)?;
                    if !forms.iter().any(|f| f.degree().leq(&t).unwrap_or(false)) {
                        return Ok(count);
                    }
                    let dead_predecessor =
                        (0..t.arity()).any(|j| t.parts()[j] > 0 && values[i - strides[j]] == Some(0));
                    if dead_predecessor {
                        return Ok(0);
                    }
                    let rank = macaulay_matrix(shape, field, forms, &t)?.into_rank();
                    Ok(count - rank as i64)
                })();
                (i, value, start.elapsed())
            })
            .collect();
        for (i, value, elapsed) in computed {
            values[i] = Some(value?);
            timings[i] = elapsed;
        }
    }

    let coeffs = values.into_iter().map(|v| v.expect("every level visited")).collect();
    Ok(HilbertFunction { series: IntSeries::from_coeffs(shape.clone(), window.clone(), coeffs)?, timings })
}

/// `t -> dim (S/I)_t` on the box for the realized ideal of `spec`.
pub fn hilbert_function(spec: &IdealSpec, window: &DegreeBox) -> Result<IntSeries> {
    let forms = spec.realize()?;
    Ok(hilbert_function_of_forms(spec.shape(), spec.field(), &forms, window)?.series)
}

/// Hilbert function of a monomial ideal by counting standard monomials.
pub fn monomial_ideal_hf(shape: &Shape, generators: &[Monomial], window: &DegreeBox) -> Result<IntSeries> {
    if window.arity() != shape.arity() {
        return Err(Error::usage(format!("box {} does not match shape {shape}", window.bounds())));
    }
    let coeffs = window
        .points()
        .map(|t| {
            Ok(enumerate_monomials(shape, &t)?
                .iter()
                .filter(|m| !generators.iter().any(|g| g.divides(m)))
                .count() as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    IntSeries::from_coeffs(shape.clone(), window.clone(), coeffs)
}

/// Checks the lower bound `actual >= conjectured`, which holds for every
/// ideal with these generator degrees.
fn check_lower_bound(conjectured: &IntSeries, actual: &IntSeries, context: &str) -> Result<()> {
    if let Some(v) = leq_series(conjectured, actual)? {
        return Err(Error::Invariant(format!(
            "{context}: Hilbert function {} at {} is below the lower bound {}",
            v.right, v.at, v.left
        )));
    }
    Ok(())
}

/// An ideal's Hilbert function next to the conjectured generic series.
#[derive(Clone, Debug)]
pub struct HilbertResult {
    pub spec: IdealSpec,
    pub actual: IntSeries,
    pub conjectured: IntSeries,
    pub timings: Vec<Duration>,
    /// First degree where `actual` and `conjectured` differ.
    pub first_difference: Option<Violation>,
}

impl HilbertResult {
    pub fn matches(&self) -> bool {
        self.first_difference.is_none()
    }
}

pub fn compute(spec: &IdealSpec, window: &DegreeBox) -> Result<HilbertResult> {
    let forms = spec.realize()?;
    let hf = hilbert_function_of_forms(spec.shape(), spec.field(), &forms, window)?;
    let conjectured = conjectured_series(spec.shape(), &spec.degrees(), window)?;
    check_lower_bound(&conjectured, &hf.series, &format!("seed {}", spec.seed()))?;
    let first_difference = first_difference(&hf.series, &conjectured)?;
    Ok(HilbertResult { spec: spec.clone(), actual: hf.series, conjectured, timings: hf.timings, first_difference })
}

/// How generators are drawn in a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generation {
    Random,
    Powers,
}

impl Generation {
    pub fn spec(self, shape: &Shape, degrees: &[MultiDegree], field: PrimeField, seed: u64) -> Result<IdealSpec> {
        match self {
            Generation::Random => IdealSpec::random(shape.clone(), degrees, field, seed),
            Generation::Powers => IdealSpec::power_products(shape.clone(), degrees, field, seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    pub shape: Shape,
    pub degrees: Vec<MultiDegree>,
    pub window: DegreeBox,
    pub field: PrimeField,
    pub seeds: Vec<u64>,
    pub generation: Generation,
}

#[derive(Clone, Debug)]
pub struct SeedRun {
    pub seed: u64,
    pub actual: IntSeries,
    pub first_difference: Option<Violation>,
    pub timings: Vec<Duration>,
}

impl SeedRun {
    pub fn matches(&self) -> bool {
        self.first_difference.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub params: VerifyParams,
    pub conjectured: IntSeries,
    pub runs: Vec<SeedRun>,
    /// Pointwise minimum over seeds: an upper estimate of the generic series.
    pub minimum: IntSeries,
    /// True iff some seed reproduces the conjectured series on the box.
    pub matched: bool,
    /// First difference between `minimum` and `conjectured`, if any.
    pub first_mismatch: Option<Violation>,
    /// Values of `minimum` along the diagonal `(d, ..., d)` inside the box.
    pub diagonal: Vec<i64>,
    /// Smallest `d` from which the diagonal stays constant to the box edge,
    /// when at least two diagonal points share that value.
    pub diagonal_stable_from: Option<u32>,
}

fn diagonal_profile(s: &IntSeries) -> (Vec<i64>, Option<u32>) {
    let top = s.window().bounds().parts().iter().copied().min().unwrap_or(0);
    let diagonal: Vec<i64> = (0..=top).map(|d| s.at(&vec![d; s.shape().arity()])).collect();
    let last = *diagonal.last().expect("diagonal has the origin");
    let start = diagonal.iter().rposition(|&v| v != last).map_or(0, |i| i + 1);
    let stable = (diagonal.len() - start >= 2).then_some(start as u32);
    (diagonal, stable)
}

pub fn verify(params: &VerifyParams) -> Result<VerifyReport> {
    if params.seeds.is_empty() {
        return Err(Error::usage("verification needs at least one seed"));
    }
    let shape = &params.shape;
    for d in &params.degrees {
        shape.check_arity(d)?;
    }
    if params.window.arity() != shape.arity() {
        return Err(Error::usage(format!("box {} does not match shape {shape}", params.window.bounds())));
    }
    let conjectured = conjectured_series(shape, &params.degrees, &params.window)?;
    let mut runs = Vec::with_capacity(params.seeds.len());
    for &seed in &params.seeds {
        let spec = params.generation.spec(shape, &params.degrees, params.field, seed)?;
        let forms = spec.realize()?;
        let hf = hilbert_function_of_forms(shape, params.field, &forms, &params.window)?;
        check_lower_bound(&conjectured, &hf.series, &format!("seed {seed}"))?;
        let first_difference = first_difference(&hf.series, &conjectured)?;
        runs.push(SeedRun { seed, actual: hf.series, first_difference, timings: hf.timings });
    }
    let minimum = IntSeries::pointwise_min(runs.iter().map(|r| &r.actual))?;
    let matched = runs.iter().any(SeedRun::matches);
    let first_mismatch = first_difference(&minimum, &conjectured)?;
    let (diagonal, diagonal_stable_from) = diagonal_profile(&minimum);
    Ok(VerifyReport {
        params: params.clone(),
        conjectured,
        runs,
        minimum,
        matched,
        first_mismatch,
        diagonal,
        diagonal_stable_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Generator;
    use crate::multidegree::monomial_at;
    use crate::series::{free_series, raw_product_series};
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

    fn mono(s: &Shape, exps: &[u32]) -> Monomial {
        Monomial::new(s, exps.to_vec()).unwrap()
    }

    #[test]
    fn empty_ideal_is_free() {
        let s = shape(&[1, 2]);
        let w = window(&[4, 3]);
        let spec = IdealSpec::random(s.clone(), &[], PrimeField::default(), 0).unwrap();
        assert_eq!(hilbert_function(&spec, &w).unwrap(), free_series(&s, &w).unwrap());
        assert_eq!(monomial_ideal_hf(&s, &[], &w).unwrap(), free_series(&s, &w).unwrap());
    }

    #[test]
    fn principal_bilinear_ideal() {
        let s = shape(&[1, 1]);
        let w = window(&[6, 6]);
        let spec = IdealSpec::random(s.clone(), &[md(&[1, 1])], PrimeField::default(), 9).unwrap();
        for (t, c) in hilbert_function(&spec, &w).unwrap().iter() {
            assert_eq!(c, (t.parts()[0] + t.parts()[1] + 1) as i64);
        }
    }

    #[test]
    fn monomial_oracle_examples() {
        let s = shape(&[1, 1]);
        let w = window(&[5, 5]);
        let hf = monomial_ideal_hf(&s, &[mono(&s, &[1, 0, 1, 0])], &w).unwrap();
        for (t, c) in hf.iter() {
            let (d, e) = (t.parts()[0] as i64, t.parts()[1] as i64);
            assert_eq!(c, (d + 1) * (e + 1) - d * e);
        }
        let hf = monomial_ideal_hf(&s, &[mono(&s, &[1, 0, 0, 0]), mono(&s, &[0, 1, 0, 0])], &w).unwrap();
        for (t, c) in hf.iter() {
            assert_eq!(c, if t.parts()[0] == 0 { t.parts()[1] as i64 + 1 } else { 0 });
        }
        let line = shape(&[1]);
        let hf = monomial_ideal_hf(&line, &[mono(&line, &[1, 0]), mono(&line, &[0, 1])], &window(&[4])).unwrap();
        assert_eq!(hf.coeffs(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn rank_and_counting_agree_on_monomial_ideals() {
        let s = shape(&[1, 1]);
        let w = window(&[6, 6]);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let gens: Vec<Monomial> = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let d = md(&[rng.gen_range(0..=3), rng.gen_range(0..=3)]);
                    let n = s.basis_len(&d).unwrap();
                    monomial_at(&s, &d, rng.gen_range(0..n)).unwrap()
                })
                .collect();
            let spec = IdealSpec::monomial(s.clone(), &gens, PrimeField::new(101).unwrap()).unwrap();
            assert_eq!(hilbert_function(&spec, &w).unwrap(), monomial_ideal_hf(&s, &gens, &w).unwrap());
        }
    }

    #[test]
    fn zero_propagation_matches_full_rank_computation() {
        // Recompute every point by rank alone and compare.
        let s = shape(&[1, 1]);
        let w = window(&[6, 6]);
        let field = PrimeField::default();
        let spec = IdealSpec::random(s.clone(), &[md(&[1, 1]), md(&[1, 2]), md(&[2, 1])], field, 4).unwrap();
        let forms = spec.realize().unwrap();
        let fast = hilbert_function(&spec, &w).unwrap();
        for (t, c) in fast.iter() {
            let rank = macaulay_matrix(&s, field, &forms, &t).unwrap().into_rank() as i64;
            assert_eq!(c, s.monomial_count(&t).unwrap() - rank, "at {t}");
        }
    }

    #[test]
    fn appending_generators_never_increases_dimensions() {
        let field = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for s in [shape(&[1, 1]), shape(&[1, 2])] {
            for seed in 0..4 {
                let w = window(&[4, 4]);
                let mut spec = IdealSpec::random(s.clone(), &[md(&[1, 1])], field, seed).unwrap();
                let mut prev = hilbert_function(&spec, &w).unwrap();
                for _ in 0..3 {
                    let coefficients = {
                        let d = md(&[rng.gen_range(0..=2), rng.gen_range(0..=2)]);
                        let n = s.basis_len(&d).unwrap();
                        (d, (0..n).map(|_| rng.gen_range(-50..50)).collect::<Vec<i64>>())
                    };
                    spec = spec.with_generator(Generator::Explicit { degree: coefficients.0, coefficients: coefficients.1 }).unwrap();
                    let next = hilbert_function(&spec, &w).unwrap();
                    assert_eq!(leq_series(&next, &prev).unwrap(), None);
                    prev = next;
                }
            }
        }
    }

    #[test]
    fn complete_intersections_follow_the_product() {
        let s = shape(&[1, 1]);
        let w = window(&[8, 8]);
        let field = PrimeField::default();
        for degrees in [vec![md(&[1, 1]), md(&[1, 2])], vec![md(&[2, 1]), md(&[1, 3])], vec![md(&[2, 2])]] {
            let spec = IdealSpec::random(s.clone(), &degrees, field, 1).unwrap();
            let actual = hilbert_function(&spec, &w).unwrap();
            let raw = raw_product_series(&s, &degrees, &w).unwrap();
            for ((t, a), (_, r)) in actual.iter().zip(raw.iter()) {
                if r > 0 {
                    assert_eq!(a, r, "degrees {degrees:?} at {t}");
                }
            }
        }
    }

    #[test]
    fn default_box_rule() {
        let degrees = [md(&[1, 2]), md(&[3, 0])];
        assert_eq!(default_box(&shape(&[1, 1]), &degrees).bounds(), &md(&[6, 4]));
        assert_eq!(default_box(&shape(&[1, 1]), &[md(&[9, 9]), md(&[9, 9])]).bounds(), &md(&[16, 16]));
        assert_eq!(default_box(&shape(&[2]), &[]).bounds(), &md(&[2]));
    }

    #[test]
    fn verify_bilinear_case() {
        let params = VerifyParams {
            shape: shape(&[1, 1]),
            degrees: vec![md(&[1, 1]); 3],
            window: window(&[8, 8]),
            field: PrimeField::default(),
            seeds: vec![0, 1, 2],
            generation: Generation::Random,
        };
        let report = verify(&params).unwrap();
        assert!(report.matched);
        assert!(report.first_mismatch.is_none());
        assert_eq!(report.runs.len(), 3);
        assert_eq!(report.minimum, report.conjectured);
        assert!(verify(&VerifyParams { seeds: vec![], ..params }).is_err());
    }

    #[test]
    fn lower_bound_violation_is_an_invariant_error() {
        let s = shape(&[1, 1]);
        let w = window(&[2, 2]);
        let conj = free_series(&s, &w).unwrap();
        let zeros = IntSeries::from_fn(s, w, |_| 0).unwrap();
        assert!(matches!(check_lower_bound(&conj, &zeros, "test"), Err(Error::Invariant(_))));
    }

    #[test]
    fn diagonal_onset() {
        let s = shape(&[1, 1]);
        let series = IntSeries::from_fn(s.clone(), window(&[4, 4]), |t| if t.parts()[0] >= 2 && t.parts()[1] >= 2 { 6 } else { 9 }).unwrap();
        assert_eq!(diagonal_profile(&series), (vec![9, 9, 6, 6, 6], Some(2)));
        let single = IntSeries::from_fn(s, window(&[2, 2]), |t| t.parts()[0] as i64).unwrap();
        assert_eq!(diagonal_profile(&single), (vec![0, 1, 2], None));
    }
}
