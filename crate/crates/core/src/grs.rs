//! Generalized Reed-Solomon codes, their extensions by the point at infinity,
//! explicit Euclidean duals, and the Hermitian membership criteria.
//!
//! `GRS_k(a, v)` is the set of words `(v_1 f(a_1), ..., v_n f(a_n))` for
//! `deg f < k`. The extended code appends the coefficient `f_{k-1}`.
//! Throughout, `w_i = prod_{j != i} (a_i - a_j)^{-1}`.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Default cap on the number of codewords enumerated by brute force.
pub const BRUTE_FORCE_CAP: u128 = 1_000_000;
/// Default cap on the number of column subsets examined by the rank test.
pub const RANK_TEST_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsCode {
    field: Arc<FieldTower>,
    points: Vec<Elem>,
    multipliers: Vec<Elem>,
    dim: usize,
    extended: bool,
}

fn check_distinct(points: &[Elem]) -> Result<()> {
    let mut seen = HashMap::with_capacity(points.len());
    for (i, &a) in points.iter().enumerate() {
        if let Some(first) = seen.insert(a, i) {
            return Err(Error::DuplicatePoint { first, second: i });
        }
    }
    Ok(())
}

fn check_range(field: &FieldTower, elems: &[Elem]) -> Result<()> {
    elems.iter().try_for_each(|e| field.elem(e.code()).map(|_| ()))
}

impl GrsCode {
    pub fn new(
        field: Arc<FieldTower>,
        points: Vec<Elem>,
        multipliers: Vec<Elem>,
        dim: usize,
        extended: bool,
    ) -> Result<Self> {
        let n = points.len();
        if multipliers.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: multipliers.len() });
        }
        check_range(&field, &points)?;
        check_range(&field, &multipliers)?;
        check_distinct(&points)?;
        if let Some(i) = multipliers.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroMultiplier(i));
        }
        if dim == 0 || dim > n {
            return Err(Error::InvalidDimension { k: dim, n });
        }
        Ok(GrsCode { field, points, multipliers, dim, extended })
    }

    pub fn field(&self) -> &Arc<FieldTower> {
        &self.field
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.multipliers
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Number of evaluation points.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Block length: one more than the number of points when extended.
    pub fn length(&self) -> usize {
        self.points.len() + usize::from(self.extended)
    }

    /// Rows `v_i a_i^r` for `r < k`; the extended code adds the column
    /// `(0, ..., 0, 1)^T`.
    pub fn generator_matrix(&self) -> Matrix {
        let f = &*self.field;
        let len = self.length();
        let mut g = Matrix::zeros(self.dim, len);
        for (i, (&a, &v)) in self.points.iter().zip(&self.multipliers).enumerate() {
            let mut entry = v;
            for r in 0..self.dim {
                g.set(r, i, entry);
                entry = f.mul(entry, a);
            }
        }
        if self.extended {
            g.set(self.dim - 1, len - 1, Elem::ONE);
        }
        g
    }

    pub fn encode(&self, message: &Poly) -> Result<Vec<Elem>> {
        if let Some(d) = message.degree().filter(|&d| d >= self.dim) {
            return Err(Error::DegreeTooLarge { degree: d, k: self.dim });
        }
        let f = &*self.field;
        let mut word: Vec<Elem> = self
            .points
            .iter()
            .zip(&self.multipliers)
            .map(|(&a, &v)| f.mul(v, message.eval(f, a)))
            .collect();
        if self.extended {
            word.push(message.coeff(self.dim - 1));
        }
        Ok(word)
    }

    pub fn to_linear(&self) -> LinearCode {
        LinearCode { field: Arc::clone(&self.field), generator: self.generator_matrix() }
    }

    /// Classical parameters `[N, k, N - k + 1]` every GRS code attains.
    pub fn mds_parameters(&self) -> (usize, usize, usize) {
        let len = self.length();
        (len, self.dim, len - self.dim + 1)
    }

    /// Replaces one multiplier; used for negative controls.
    pub fn with_multiplier(&self, index: usize, value: Elem) -> Result<Self> {
        let mut v = self.multipliers.clone();
        v[index] = value;
        GrsCode::new(Arc::clone(&self.field), self.points.clone(), v, self.dim, self.extended)
    }
}

/// `w_i = prod_{j != i} (a_i - a_j)^{-1}`.
pub fn w_vector(field: &FieldTower, points: &[Elem]) -> Result<Vec<Elem>> {
    check_distinct(points)?;
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = field.product(
                points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &aj)| field.sub(ai, aj)),
            );
            field.inv(prod)
        })
        .collect())
}

/// Unique polynomial of degree below `points.len()` through the given pairs.
pub fn lagrange_interpolate(field: &FieldTower, points: &[Elem], values: &[Elem]) -> Result<Poly> {
    if points.len() != values.len() {
        return Err(Error::LengthMismatch { expected: points.len(), got: values.len() });
    }
    let w = w_vector(field, points)?;
    interpolate_with_weights(field, points, &w, values)
}

fn interpolate_with_weights(
    field: &FieldTower,
    points: &[Elem],
    w: &[Elem],
    values: &[Elem],
) -> Result<Poly> {
    let n = points.len();
    if n == 0 {
        return Ok(Poly::zero());
    }
    let master = Poly::from_roots(field, points);
    let mc = master.coeffs();
    let mut acc = vec![Elem::ZERO; n];
    for i in 0..n {
        let scale = field.mul(values[i], w[i]);
        if scale.is_zero() {
            continue;
        }
        // synthetic division of the master polynomial by (x - a_i)
        let mut carry = Elem::ZERO;
        for d in (0..n).rev() {
            carry = field.add(mc[d + 1], field.mul(carry, points[i]));
            acc[d] = field.add(acc[d], field.mul(carry, scale));
        }
    }
    Ok(Poly::from_coeffs(acc))
}

/// Rows `(w_1 a_1^j, ..., w_n a_n^j)` for `j < n - k`, spanning the Euclidean
/// dual of `GRS_k(a, 1)`. Empty when `k = n`.
pub fn grs_dual_basis(field: &FieldTower, points: &[Elem], k: usize) -> Result<Matrix> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::InvalidDimension { k, n });
    }
    let w = w_vector(field, points)?;
    let rows = (0..n - k)
        .map(|j| {
            points
                .iter()
                .zip(&w)
                .map(|(&a, &wi)| field.mul(wi, field.pow(a, j as u64)))
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(n, rows))
}

/// Rows `(w_1 a_1^j, ..., w_n a_n^j, -[j = n - k])` for `j <= n - k`,
/// spanning the Euclidean dual of `GRS_k(a, 1, inf)`.
pub fn extended_grs_dual_basis(field: &FieldTower, points: &[Elem], k: usize) -> Result<Matrix> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::InvalidDimension { k, n });
    }
    let w = w_vector(field, points)?;
    let minus_one = field.neg(Elem::ONE);
    let rows = (0..=n - k)
        .map(|j| {
            let mut row: Vec<Elem> = points
                .iter()
                .zip(&w)
                .map(|(&a, &wi)| field.mul(wi, field.pow(a, j as u64)))
                .collect();
            row.push(if j == n - k { minus_one } else { Elem::ZERO });
            row
        })
        .collect();
    Ok(Matrix::from_rows(n + 1, rows))
}

/// Interpolates the unique g of degree < n with
/// `w_i g(a_i) = v_i^(q+1) f^q(a_i)` at every point.
pub fn hermitian_partner(code: &GrsCode, message: &Poly) -> Result<Poly> {
    if let Some(d) = message.degree().filter(|&d| d >= code.dim) {
        return Err(Error::DegreeTooLarge { degree: d, k: code.dim });
    }
    let f = &*code.field;
    let w = w_vector(f, &code.points)?;
    let fq = message.frobenius(f);
    let values: Vec<Elem> = code
        .points
        .iter()
        .zip(&code.multipliers)
        .zip(&w)
        .map(|((&a, &v), &wi)| f.div(f.mul(f.norm(v), fq.eval(f, a)), wi))
        .collect();
    interpolate_with_weights(f, &code.points, &w, &values)
}

/// Whether the codeword of `message` lies in the Hermitian dual of a
/// (non-extended) GRS code: true iff the interpolated partner g has degree
/// at most `n - k - 1`.
pub fn hermitian_membership(code: &GrsCode, message: &Poly) -> Result<bool> {
    if code.extended {
        return Err(Error::OutOfRange("criterion applies to non-extended codes".into()));
    }
    let g = hermitian_partner(code, message)?;
    let (n, k) = (code.num_points(), code.dim);
    Ok(g.degree().map_or(true, |d| d + k < n))
}

/// Extended-code variant: true iff `deg g <= n - k` and
/// `g_{n-k} = -(f_{k-1})^q`.
pub fn extended_hermitian_membership(code: &GrsCode, message: &Poly) -> Result<bool> {
    if !code.extended {
        return Err(Error::OutOfRange("criterion applies to extended codes".into()));
    }
    let g = hermitian_partner(code, message)?;
    let f = &*code.field;
    let (n, k) = (code.num_points(), code.dim);
    let low_degree = g.degree().map_or(true, |d| d + k <= n);
    let top = f.neg(f.frobenius(message.coeff(k - 1)));
    Ok(low_degree && g.coeff(n - k) == top)
}

/// A pair of generator rows whose Hermitian product is nonzero:
/// `value = sum_l G[row][l]^q * G[other][l]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityWitness {
    pub row: usize,
    pub other: usize,
    pub value: Elem,
}

/// A linear code given by a full-row-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<FieldTower>,
    generator: Matrix,
}

impl LinearCode {
    pub fn new(field: Arc<FieldTower>, generator: Matrix) -> Result<Self> {
        let rank = generator.rank(&field);
        if rank != generator.rows() {
            return Err(Error::RankDeficient { rank, rows: generator.rows() });
        }
        Ok(LinearCode { field, generator })
    }

    pub fn field(&self) -> &Arc<FieldTower> {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    /// Euclidean dual `{u : u G^T = 0}` or Hermitian dual
    /// `{u : u^q G^T = 0}`, computed by elimination. The Hermitian dual is the
    /// nullspace of the entrywise Frobenius image of G.
    pub fn nullspace_dual(&self, hermitian: bool) -> LinearCode {
        let f = &*self.field;
        let basis = if hermitian {
            self.generator.frobenius(f).nullspace(f)
        } else {
            self.generator.nullspace(f)
        };
        LinearCode { field: Arc::clone(&self.field), generator: basis }
    }

    /// Membership by rank: `word` lies in the row space of G.
    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.length() {
            return false;
        }
        let stacked = self.generator.vstack(&Matrix::from_rows(word.len(), vec![word.to_vec()]));
        stacked.rank(&self.field) == self.dimension()
    }

    /// Whether every row of `other` lies in this code.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.length() == self.length()
            && self.generator.vstack(&other.generator).rank(&self.field) == self.dimension()
    }

    /// First nonzero entry of `G^(q) G^T`, if any.
    pub fn hermitian_violation(&self) -> Option<OrthogonalityWitness> {
        let f = &*self.field;
        let g = &self.generator;
        let k = g.rows();
        (0..k).cartesian_product(0..k).find_map(|(r, s)| {
            let value = f.sum(
                g.row(r).iter().zip(g.row(s)).map(|(&x, &y)| f.mul(f.frobenius(x), y)),
            );
            (!value.is_zero()).then_some(OrthogonalityWitness { row: r, other: s, value })
        })
    }

    /// `C` is contained in its Hermitian dual, i.e. `G^(q) G^T = 0`.
    pub fn is_hermitian_self_orthogonal(&self) -> bool {
        self.hermitian_violation().is_none()
    }

    /// Number of codewords, `(q^2)^k`, saturating.
    pub fn codeword_count(&self) -> u128 {
        (self.field.size() as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Minimum Hamming weight over all nonzero codewords by exhaustive
    /// enumeration. Messages are normalized so their first nonzero entry is 1;
    /// scaling does not change weight.
    pub fn min_distance_bruteforce(&self, cap: u128) -> Result<usize> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::ZeroDimensional);
        }
        let needed = self.codeword_count();
        if needed > cap {
            return Err(Error::CapExceeded { needed, cap });
        }
        let n = self.length();
        let mut best = n;
        let mut buffers = vec![vec![Elem::ZERO; n]; k + 1];
        for lead in 0..k {
            buffers[lead + 1].copy_from_slice(self.generator.row(lead));
            self.descend(lead + 1, &mut buffers, &mut best);
        }
        Ok(best)
    }

    fn descend(&self, level: usize, buffers: &mut [Vec<Elem>], best: &mut usize) {
        let f = &*self.field;
        let k = self.dimension();
        if level == k {
            let weight = buffers[level].iter().filter(|x| !x.is_zero()).count();
            *best = (*best).min(weight);
            return;
        }
        let row = self.generator.row(level);
        for c in f.elements() {
            let (head, tail) = buffers.split_at_mut(level + 1);
            let acc = &head[level];
            let next = &mut tail[0];
            for ((dst, &a), &r) in next.iter_mut().zip(acc).zip(row) {
                *dst = f.add(a, f.mul(c, r));
            }
            self.descend(level + 1, buffers, best);
        }
    }

    /// MDS test by minors: every set of k columns of G is independent.
    pub fn is_mds_by_rank(&self, cap: u128) -> Result<bool> {
        let (n, k) = (self.length(), self.dimension());
        let needed = binomial(n, k);
        if needed > cap {
            return Err(Error::CapExceeded { needed, cap });
        }
        let f = &*self.field;
        Ok((0..n)
            .combinations(k)
            .all(|cols| self.generator.select_columns(&cols).is_nonsingular(f)))
    }
}

/// How the minimum distance of a code was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Brute,
    Rank,
    ByConstruction,
}

impl DistanceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceMethod::Brute => "brute",
            DistanceMethod::Rank => "rank",
            DistanceMethod::ByConstruction => "by-construction",
        }
    }
}

/// Outcome of the distance ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MdsEvidence {
    pub method: DistanceMethod,
    /// Set when a method that actually measures the distance ran.
    pub measured_distance: Option<usize>,
    pub mds: bool,
}

/// Establishes the MDS property: brute force when `(q^2)^k <= 10^6`, the
/// k-column rank test when `C(N, k) <= 10^5`, otherwise the code's
/// GRS structure if `by_construction` holds. Errors when nothing applies.
pub fn mds_evidence(code: &LinearCode, by_construction: bool) -> Result<MdsEvidence> {
    let (n, k) = (code.length(), code.dimension());
    if k == 0 {
        return Ok(MdsEvidence { method: DistanceMethod::ByConstruction, measured_distance: None, mds: true });
    }
    if code.codeword_count() <= BRUTE_FORCE_CAP {
        let d = code.min_distance_bruteforce(BRUTE_FORCE_CAP)?;
        return Ok(MdsEvidence { method: DistanceMethod::Brute, measured_distance: Some(d), mds: d == n - k + 1 });
    }
    if binomial(n, k) <= RANK_TEST_CAP {
        let mds = code.is_mds_by_rank(RANK_TEST_CAP)?;
        return Ok(MdsEvidence {
            method: DistanceMethod::Rank,
            measured_distance: mds.then_some(n - k + 1),
            mds,
        });
    }
    if by_construction {
        return Ok(MdsEvidence { method: DistanceMethod::ByConstruction, measured_distance: None, mds: true });
    }
    Err(Error::CapExceeded { needed: binomial(n, k), cap: RANK_TEST_CAP })
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
