//! Arithmetic in GF(p) for primes below 2^31, reproducible coefficient
//! streams and dense row-echelon rank.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 2^31 - 1, the default coefficient field.
pub const DEFAULT_PRIME: u32 = 2_147_483_647;

/// A prime field `GF(p)` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u32,
}

/// Canonical representative in `[0, p)`. Elements do not carry their field;
/// operations go through [`PrimeField`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::usage(format!("prime {p} must be below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer, negative values included.
    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    /// Wraps a value already known to be canonical.
    pub fn from_canonical(&self, v: u32) -> Result<FieldElement> {
        if v >= self.p {
            return Err(Error::Domain(format!("{v} is not reduced modulo {}", self.p)));
        }
        Ok(FieldElement(v))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0;
        FieldElement(if s >= self.p { s - self.p } else { s })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(field: PrimeField) -> Self {
        field.p as u64
    }
}

/// The splitmix64 generator (Steele, Lea and Flood), with the standard
/// increment `0x9E3779B97F4A7C15` and finalizer constants
/// `0xBF58476D1CE4E5B9`, `0x94D049BB133111EB`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Uniform elements of GF(p) drawn from splitmix64.
///
/// A 64-bit draw `z` is rejected when `z >= p * floor(2^64 / p)` and
/// otherwise mapped to `z mod p`.
#[derive(Clone, Debug)]
pub struct FieldStream {
    field: PrimeField,
    rng: SplitMix64,
    limit: u128,
}

impl FieldStream {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn next_element(&mut self) -> FieldElement {
        let p = self.field.p as u128;
        loop {
            let z = self.rng.next_u64();
            if (z as u128) < self.limit {
                return FieldElement((z as u128 % p) as u32);
            }
        }
    }
}

impl Iterator for FieldStream {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        Some(self.next_element())
    }
}

pub fn seeded_stream(field: PrimeField, seed: u64) -> FieldStream {
    let p = field.p as u128;
    FieldStream { field, rng: SplitMix64::new(seed), limit: ((1u128 << 64) / p) * p }
}

/// Row-major dense matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        DenseMatrix { field, rows, cols, entries: vec![0; rows * cols] }
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::usage("matrix rows have different lengths"));
        }
        let entries = rows.iter().flatten().map(|&v| field.element(v).0).collect();
        Ok(DenseMatrix { field, rows: rows.len(), cols, entries })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        FieldElement(self.entries[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        debug_assert!(v.0 < self.field.p);
        self.entries[r * self.cols + c] = v.0;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rank(&self) -> usize {
        self.clone().into_rank()
    }

    /// Row rank by forward Gaussian elimination, taking the first row with a
    /// nonzero entry in each column as pivot.
    pub fn into_rank(mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let field = self.field;
        let kernel = RowKernel::for_field(field);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| self.entries[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                let (top, bottom) = self.entries.split_at_mut(pivot * cols);
                top[rank * cols..(rank + 1) * cols].swap_with_slice(&mut bottom[..cols]);
            }
            let (head, tail) = self.entries.split_at_mut((rank + 1) * cols);
            let pivot_row = &mut head[rank * cols..];
            let inv = field.inv(FieldElement(pivot_row[col])).expect("pivot is nonzero");
            for v in &mut pivot_row[col..] {
                *v = field.mul(FieldElement(*v), inv).0;
            }
            let pivot_tail = &pivot_row[col + 1..];
            for row in tail.chunks_exact_mut(cols) {
                let lead = row[col];
                if lead == 0 {
                    continue;
                }
                row[col] = 0;
                kernel.axpy(&mut row[col + 1..], field.p - lead, pivot_tail);
            }
            rank += 1;
        }
        rank
    }
}

/// `dst += factor * src (mod p)` specialised per modulus.
enum RowKernel {
    /// Folding reduction for `p = 2^31 - 1`.
    Mersenne31,
    /// Shoup multiplication with a precomputed quotient, for any `p < 2^31`.
    Shoup { p: u64 },
}

impl RowKernel {
    fn for_field(field: PrimeField) -> Self {
        if field.p == DEFAULT_PRIME {
            RowKernel::Mersenne31
        } else {
            RowKernel::Shoup { p: field.p as u64 }
        }
    }

    #[inline]
    fn axpy(&self, dst: &mut [u32], factor: u32, src: &[u32]) {
        match *self {
            RowKernel::Mersenne31 => {
                const P: u64 = DEFAULT_PRIME as u64;
                let f = factor as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    let x = (*d as u64).wrapping_add(f.wrapping_mul(s as u64));
                    let y = (x & P).wrapping_add(x >> 31);
                    let z = (y & P).wrapping_add(y >> 31);
                    *d = z.min(z.wrapping_sub(P)) as u32;
                }
            }
            RowKernel::Shoup { p } => {
                let f = factor as u64;
                let f_shoup = (f << 32) / p;
                for (d, &s) in dst.iter_mut().zip(src) {
                    let s = s as u64;
                    let q = f_shoup.wrapping_mul(s) >> 32;
                    let r = f.wrapping_mul(s).wrapping_sub(q.wrapping_mul(p));
                    let r = r.min(r.wrapping_sub(p));
                    let t = (*d as u64).wrapping_add(r);
                    *d = t.min(t.wrapping_sub(p)) as u32;
                }
            }
        }
    }
}
