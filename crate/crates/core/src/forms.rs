//! Ideal generators and Macaulay matrices.
//!
//! A [`Form`] is a dense coefficient vector over the monomials of one
//! multidegree, in [`enumerate_monomials`] order. An [`IdealSpec`] lists
//! generator descriptors; [`IdealSpec::realize`] turns them into forms by
//! drawing from a single seeded stream, in generator order, coefficient by
//! coefficient in enumeration order.
//!
//! # Ideal files
//!
//! Explicit ideals are JSON documents:
//!
//! ```json
//! {
//!   "shape": [1, 1],
//!   "prime": 2147483647,
//!   "generators": [
//!     { "degree": [1, 1], "coefficients": [1, 0, 0, -1] },
//!     { "degree": [2, 0], "coefficients": [0, 1, 0] }
//!   ]
//! }
//! ```
//!
//! `prime` is optional. Coefficients are arbitrary integers, reduced mod p,
//! listed in enumeration order (`x0y0, x0y1, x1y0, x1y1` for degree (1,1)),
//! so the first generator above is `x0y0 - x1y1` and the second is `x0x1`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{seeded_stream, DenseMatrix, FieldElement, FieldStream, PrimeField};
use crate::multidegree::{binomial, enumerate_monomials, monomial_index, Monomial, MultiDegree, Shape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    shape: Shape,
    degree: MultiDegree,
    coeffs: Vec<FieldElement>,
}

impl Form {
    pub fn new(shape: Shape, degree: MultiDegree, coeffs: Vec<FieldElement>) -> Result<Self> {
        let expected = shape.basis_len(&degree)?;
        if coeffs.len() != expected {
            return Err(Error::usage(format!(
                "form of degree {degree} needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Form { shape, degree, coeffs })
    }

    /// The form `m` with coefficient one.
    pub fn monomial(shape: &Shape, m: &Monomial) -> Result<Self> {
        let degree = m.degree(shape);
        let mut coeffs = vec![FieldElement::ZERO; shape.basis_len(&degree)?];
        coeffs[monomial_index(shape, &degree, m)?] = FieldElement::ONE;
        Form::new(shape.clone(), degree, coeffs)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// A form with every coefficient drawn from `stream`.
pub fn random_form(shape: &Shape, degree: &MultiDegree, stream: &mut FieldStream) -> Result<Form> {
    let n = shape.basis_len(degree)?;
    Form::new(shape.clone(), degree.clone(), stream.take(n).collect())
}

/// `prod_j l_j^{t_j}` for one random binary linear form `l_j = a x0 + b x1`
/// per factor; `a` then `b` are drawn for each factor in order.
pub fn linear_power_product(shape: &Shape, degree: &MultiDegree, stream: &mut FieldStream) -> Result<Form> {
    shape.check_arity(degree)?;
    if !shape.all_lines() {
        return Err(Error::UnsupportedShape {
            shape: shape.to_string(),
            reason: "powers of linear forms need every factor to be a projective line".into(),
        });
    }
    let field = stream.field();
    let factors: Vec<(FieldElement, FieldElement)> =
        (0..shape.arity()).map(|_| (stream.next_element(), stream.next_element())).collect();
    power_product_from_linear(shape, degree, field, &factors)
}

/// The power product built from explicit linear forms `(a_j, b_j)`.
///
/// The coefficient of `x0^a x1^{d-a}` in `(alpha x0 + beta x1)^d` is
/// `C(d, a) alpha^a beta^(d-a)`; the full array is the outer product of the
/// per-factor coefficient vectors.
pub fn power_product_from_linear(
    shape: &Shape,
    degree: &MultiDegree,
    field: PrimeField,
    factors: &[(FieldElement, FieldElement)],
) -> Result<Form> {
    let per_factor: Vec<Vec<FieldElement>> = factors
        .iter()
        .zip(degree.parts())
        .map(|(&(alpha, beta), &d)| {
            (0..=d)
                .rev()
                .map(|a| {
                    let c = field.element(binomial(d as i64, a as i64)?);
                    Ok(field.mul(c, field.mul(field.pow(alpha, a as u64), field.pow(beta, (d - a) as u64))))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut coeffs = vec![FieldElement::ONE];
    for factor in &per_factor {
        coeffs = coeffs.iter().flat_map(|&c| factor.iter().map(move |&v| field.mul(c, v))).collect();
    }
    Form::new(shape.clone(), degree.clone(), coeffs)
}

/// `f * m` expressed in the monomial basis of degree `deg f + deg m`.
pub fn multiply_by_monomial(f: &Form, m: &Monomial) -> Result<Vec<FieldElement>> {
    let shape = &f.shape;
    let target = f.degree.add(&m.degree(shape));
    let mut row = vec![FieldElement::ZERO; shape.basis_len(&target)?];
    for (u, &c) in enumerate_monomials(shape, &f.degree)?.iter().zip(&f.coeffs) {
        if !c.is_zero() {
            row[monomial_index(shape, &target, &u.mul(m))?] = c;
        }
    }
    Ok(row)
}

/// All monomial multiples of `forms` landing in degree `target`.
///
/// Rows run over generators in order and, within a generator, over
/// multiplier monomials in enumeration order; generators whose degree is not
/// `<= target` contribute nothing. Columns are the monomials of `target`.
pub fn macaulay_matrix(shape: &Shape, field: PrimeField, forms: &[Form], target: &MultiDegree) -> Result<DenseMatrix> {
    let cols = shape.basis_len(target)?;
    let mut blocks = Vec::new();
    let mut rows = 0;
    for f in forms {
        if let Some(rest) = target.checked_sub(&f.degree) {
            let multipliers = enumerate_monomials(shape, &rest)?;
            rows += multipliers.len();
            blocks.push((f, multipliers));
        }
    }
    let mut matrix = DenseMatrix::zeros(field, rows, cols);
    let mut r = 0;
    for (f, multipliers) in blocks {
        let support: Vec<(Monomial, FieldElement)> = enumerate_monomials(shape, &f.degree)?
            .into_iter()
            .zip(f.coeffs.iter().copied())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for m in &multipliers {
            for (u, c) in &support {
                matrix.set(r, monomial_index(shape, target, &u.mul(m))?, *c);
            }
            r += 1;
        }
    }
    Ok(matrix)
}

/// How one generator of an ideal is produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    Random { degree: MultiDegree },
    PowerProduct { degree: MultiDegree },
    Explicit { degree: MultiDegree, coefficients: Vec<i64> },
}

impl Generator {
    pub fn degree(&self) -> &MultiDegree {
        match self {
            Generator::Random { degree }
            | Generator::PowerProduct { degree }
            | Generator::Explicit { degree, .. } => degree,
        }
    }
}

/// An ideal to be realized: ambient shape, generators, field and seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    shape: Shape,
    generators: Vec<Generator>,
    field: PrimeField,
    seed: u64,
}

impl IdealSpec {
    pub fn new(shape: Shape, generators: Vec<Generator>, field: PrimeField, seed: u64) -> Result<Self> {
        for g in &generators {
            shape.check_arity(g.degree())?;
            match g {
                Generator::Explicit { degree, coefficients } => {
                    let expected = shape.basis_len(degree)?;
                    if coefficients.len() != expected {
                        return Err(Error::usage(format!(
                            "explicit generator of degree {degree} needs {expected} coefficients, got {}",
                            coefficients.len()
                        )));
                    }
                }
                Generator::PowerProduct { .. } if !shape.all_lines() => {
                    return Err(Error::UnsupportedShape {
                        shape: shape.to_string(),
                        reason: "powers of linear forms need every factor to be a projective line".into(),
                    });
                }
                _ => {}
            }
        }
        Ok(IdealSpec { shape, generators, field, seed })
    }

    /// Every generator random of the given degrees.
    pub fn random(shape: Shape, degrees: &[MultiDegree], field: PrimeField, seed: u64) -> Result<Self> {
        let generators = degrees.iter().map(|d| Generator::Random { degree: d.clone() }).collect();
        IdealSpec::new(shape, generators, field, seed)
    }

    /// Every generator a product of powers of random linear forms.
    pub fn power_products(shape: Shape, degrees: &[MultiDegree], field: PrimeField, seed: u64) -> Result<Self> {
        let generators = degrees.iter().map(|d| Generator::PowerProduct { degree: d.clone() }).collect();
        IdealSpec::new(shape, generators, field, seed)
    }

    /// The monomial ideal generated by `monomials`.
    pub fn monomial(shape: Shape, monomials: &[Monomial], field: PrimeField) -> Result<Self> {
        let generators = monomials
            .iter()
            .map(|m| {
                let degree = m.degree(&shape);
                let mut coefficients = vec![0; shape.basis_len(&degree)?];
                coefficients[monomial_index(&shape, &degree, m)?] = 1;
                Ok(Generator::Explicit { degree, coefficients })
            })
            .collect::<Result<_>>()?;
        IdealSpec::new(shape, generators, field, 0)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn degrees(&self) -> Vec<MultiDegree> {
        self.generators.iter().map(|g| g.degree().clone()).collect()
    }

    /// Same generators with one more appended.
    pub fn with_generator(&self, g: Generator) -> Result<Self> {
        let mut generators = self.generators.clone();
        generators.push(g);
        IdealSpec::new(self.shape.clone(), generators, self.field, self.seed)
    }

    /// Draws every generator from one stream seeded with `seed`.
    pub fn realize(&self) -> Result<Vec<Form>> {
        let mut stream = seeded_stream(self.field, self.seed);
        self.generators
            .iter()
            .map(|g| match g {
                Generator::Random { degree } => random_form(&self.shape, degree, &mut stream),
                Generator::PowerProduct { degree } => linear_power_product(&self.shape, degree, &mut stream),
                Generator::Explicit { degree, coefficients } => Form::new(
                    self.shape.clone(),
                    degree.clone(),
                    coefficients.iter().map(|&c| self.field.element(c)).collect(),
                ),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFileGenerator {
    pub degree: MultiDegree,
    pub coefficients: Vec<i64>,
}

/// On-disk form of an explicit ideal; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub shape: Shape,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<PrimeField>,
    pub generators: Vec<IdealFileGenerator>,
}

impl IdealFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::IdealFile { path: origin.to_string(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        IdealFile::parse(&text, &path.display().to_string())
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.generators
            .iter()
            .map(|g| Generator::Explicit { degree: g.degree.clone(), coefficients: g.coefficients.clone() })
            .collect()
    }

    /// Builds the [`IdealSpec`], using `prime` from the file when present.
    pub fn to_spec(&self, default_field: PrimeField) -> Result<IdealSpec> {
        IdealSpec::new(self.shape.clone(), self.generators(), self.prime.unwrap_or(default_field), 0)
    }
}
