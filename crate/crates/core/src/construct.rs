//! Hermitian self-orthogonal GRS codes from coset evaluation sets.
//!
//! Two point designs are supported:
//!
//! * additive cosets `F_q + beta_s * alpha` of the subfield, giving GRS codes
//!   of length `tq` for `1 <= t <= q`;
//! * multiplicative cosets `beta_s <theta>` of the order-(q+1) subgroup plus
//!   zero, giving extended GRS codes of length `t(q+1) + 2` for
//!   `1 <= t <= q - 1`.
//!
//! In both designs every `w_i` has a closed form that (after a fixed
//! correction) lies in GF(q), so the column multipliers can be taken as norm
//! preimages. A Hermitian self-orthogonal `[N, k, N-k+1]` code then yields a
//! quantum `[[N, N-2k, k+1]]_q` MDS code.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::grs::{mds_evidence, GrsCode, LinearCode};
use crate::poly::{root_free_monic, Poly};

/// `(-1)^e` in the prime field.
fn minus_one_pow(field: &FieldTower, e: usize) -> Elem {
    if e % 2 == 0 { Elem::ONE } else { field.neg(Elem::ONE) }
}

/// Evaluation set `X = union_{s < t} (F_q + beta_s alpha)`.
#[derive(Clone, Debug)]
pub struct AdditiveCosets {
    field: Arc<FieldTower>,
    t: usize,
    alpha: Elem,
    betas: Vec<Elem>,
}

/// The three products over additive cosets that have closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetProduct {
    /// `prod_{h in F_q} (tau alpha - h) = tau (alpha^q - alpha)`, tau in GF(q).
    Scaled { tau: Elem },
    /// `prod_{h in F_s, h != b} (b - h) = (-1)^q`.
    WithinCoset { coset: usize, point: Elem },
    /// `prod_{h in F_j} (b - h) = (beta_s - beta_j)(alpha^q - alpha)`, b in F_s.
    AcrossCosets { coset: usize, other: usize, point: Elem },
}

impl AdditiveCosets {
    /// Uses alpha = w, which lies outside GF(q) because its order exceeds q - 1.
    pub fn new(field: Arc<FieldTower>, t: usize) -> Result<Self> {
        let alpha = field.generator();
        Self::with_alpha(field, t, alpha)
    }

    pub fn with_alpha(field: Arc<FieldTower>, t: usize, alpha: Elem) -> Result<Self> {
        let q = field.q() as usize;
        if t == 0 || t > q {
            return Err(Error::OutOfRange(format!("t = {t} must lie in 1..={q}")));
        }
        if field.is_in_subfield(alpha) {
            return Err(Error::OutOfRange(format!("alpha = {alpha} lies in GF({q})")));
        }
        let betas = field.subfield_elements();
        Ok(AdditiveCosets { field, t, alpha, betas })
    }

    pub fn field(&self) -> &Arc<FieldTower> {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    /// All of GF(q) in canonical order; the first t label the cosets in use.
    pub fn betas(&self) -> &[Elem] {
        &self.betas
    }

    pub fn len(&self) -> usize {
        self.t * self.field.q() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `alpha^q - alpha`, nonzero since alpha is not in GF(q).
    pub fn conjugate_gap(&self) -> Elem {
        self.field.sub(self.field.frobenius(self.alpha), self.alpha)
    }

    /// Coset `F_q + beta_s alpha`, subfield elements in canonical order.
    pub fn coset(&self, s: usize) -> Vec<Elem> {
        let f = &*self.field;
        let shift = f.mul(self.betas[s], self.alpha);
        self.betas.iter().map(|&x| f.add(x, shift)).collect()
    }

    /// Points ordered by coset, then by the canonical order of GF(q).
    pub fn points(&self) -> Vec<Elem> {
        (0..self.t).flat_map(|s| self.coset(s)).collect()
    }

    /// Index of the coset containing point i.
    pub fn coset_of(&self, i: usize) -> usize {
        i / self.field.q() as usize
    }

    fn in_coset(&self, s: usize, b: Elem) -> bool {
        let f = &*self.field;
        f.is_in_subfield(f.sub(b, f.mul(self.betas[s], self.alpha)))
    }

    fn check_case(&self, case: CosetProduct) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        match case {
            CosetProduct::Scaled { tau } if !self.field.is_in_subfield(tau) => {
                bad(format!("tau = {tau} is not in GF(q)"))
            }
            CosetProduct::WithinCoset { coset, .. } | CosetProduct::AcrossCosets { coset, .. }
                if coset >= self.t =>
            {
                bad(format!("coset index {coset} >= t"))
            }
            CosetProduct::AcrossCosets { coset, other, .. } if other >= self.t || other == coset => {
                bad(format!("other coset index {other} is invalid"))
            }
            CosetProduct::WithinCoset { coset, point }
            | CosetProduct::AcrossCosets { coset, point, .. }
                if !self.in_coset(coset, point) =>
            {
                bad(format!("{point} is not in coset {coset}"))
            }
            _ => Ok(()),
        }
    }

    /// Closed form of a coset product.
    pub fn coset_product(&self, case: CosetProduct) -> Result<Elem> {
        self.check_case(case)?;
        let f = &*self.field;
        Ok(match case {
            CosetProduct::Scaled { tau } => f.mul(tau, self.conjugate_gap()),
            CosetProduct::WithinCoset { .. } => minus_one_pow(f, f.q() as usize),
            CosetProduct::AcrossCosets { coset, other, .. } => {
                f.mul(f.sub(self.betas[coset], self.betas[other]), self.conjugate_gap())
            }
        })
    }

    /// The same products multiplied out term by term.
    pub fn literal_coset_product(&self, case: CosetProduct) -> Result<Elem> {
        self.check_case(case)?;
        let f = &*self.field;
        Ok(match case {
            CosetProduct::Scaled { tau } => {
                let ta = f.mul(tau, self.alpha);
                f.product(self.betas.iter().map(|&h| f.sub(ta, h)))
            }
            CosetProduct::WithinCoset { coset, point } => f.product(
                self.coset(coset).into_iter().filter(|&h| h != point).map(|h| f.sub(point, h)),
            ),
            CosetProduct::AcrossCosets { other, point, .. } => {
                f.product(self.coset(other).into_iter().map(|h| f.sub(point, h)))
            }
        })
    }

    /// Closed form of `prod_{j != i} (a_i - a_j)`:
    /// `(-1)^q (alpha^q - alpha)^(t-1) prod_{j != s} (beta_s - beta_j)`.
    pub fn difference_product(&self, i: usize) -> Result<Elem> {
        if i >= self.len() {
            return Err(Error::OutOfRange(format!("index {i} >= {}", self.len())));
        }
        let f = &*self.field;
        let s = self.coset_of(i);
        let beta_s = self.betas[s];
        let betas = f.product((0..self.t).filter(|&j| j != s).map(|j| f.sub(beta_s, self.betas[j])));
        let sign = minus_one_pow(f, f.q() as usize);
        Ok(f.mul(f.mul(sign, f.pow(self.conjugate_gap(), self.t as u64 - 1)), betas))
    }

    /// `w` from the closed forms.
    pub fn w_vector(&self) -> Vec<Elem> {
        (0..self.len())
            .map(|i| self.field.inv(self.difference_product(i).expect("index in range")))
            .collect()
    }

    /// `w_i (alpha^q - alpha)^(t-1)`, which lies in GF(q)^*.
    pub fn norm_targets(&self) -> Vec<Elem> {
        let f = &*self.field;
        let gap = f.pow(self.conjugate_gap(), self.t as u64 - 1);
        self.w_vector().into_iter().map(|w| f.mul(w, gap)).collect()
    }
}

/// Evaluation set `A = union_{s < t} beta_s <theta>` plus zero, with
/// `beta_s = w^s` and `theta = w^(q-1)`.
#[derive(Clone, Debug)]
pub struct MultiplicativeCosets {
    field: Arc<FieldTower>,
    t: usize,
    theta: Elem,
    reps: Vec<Elem>,
}

impl MultiplicativeCosets {
    pub fn new(field: Arc<FieldTower>, t: usize) -> Result<Self> {
        let q = field.q() as usize;
        if t == 0 || t + 1 > q {
            return Err(Error::OutOfRange(format!("t = {t} must lie in 1..={}", q - 1)));
        }
        let theta = field.primitive_root_of_unity(field.q() + 1)?;
        // <theta> = <w^(q-1)> has index q - 1, so w^0 .. w^(q-2) hit distinct cosets
        let reps = (0..t).map(|s| field.gen_pow(s as i64)).collect();
        Ok(MultiplicativeCosets { field, t, theta, reps })
    }

    pub fn field(&self) -> &Arc<FieldTower> {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn theta(&self) -> Elem {
        self.theta
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    /// `n = t(q+1) + 1` evaluation points; the code length is `n + 1`.
    pub fn len(&self) -> usize {
        self.t * (self.field.q() as usize + 1) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coset by coset, ascending powers of theta within each; zero last.
    pub fn points(&self) -> Vec<Elem> {
        let f = &*self.field;
        let q = f.q() as u64;
        self.reps
            .iter()
            .flat_map(|&b| (0..=q).map(move |m| f.mul(b, f.pow(self.theta, m))))
            .chain(std::iter::once(Elem::ZERO))
            .collect()
    }

    /// Coset index and theta exponent of point i, `None` for the zero point.
    pub fn position(&self, i: usize) -> Option<(usize, usize)> {
        let block = self.field.q() as usize + 1;
        (i + 1 < self.len()).then(|| (i / block, i % block))
    }

    /// Closed form of `prod_{i < n} (0 - a_i) = (-1)^(n-1+qt) prod_s beta_s^(q+1)`.
    pub fn zero_difference_product(&self) -> Elem {
        let f = &*self.field;
        let sign = minus_one_pow(f, self.len() - 1 + f.q() as usize * self.t);
        f.mul(sign, f.product(self.reps.iter().map(|&b| f.norm(b))))
    }

    /// Closed form of `prod_{j != i} (a_i - a_j)` for a nonzero point
    /// `a_i in beta_r <theta>`: `a_i^(q+1) prod_{s != r} (beta_r^(q+1) - beta_s^(q+1))`.
    pub fn difference_product(&self, i: usize) -> Result<Elem> {
        let (r, m) = self
            .position(i)
            .ok_or_else(|| Error::OutOfRange(format!("index {i} is not a nonzero point")))?;
        let f = &*self.field;
        let a = f.mul(self.reps[r], f.pow(self.theta, m as u64));
        let nr = f.norm(self.reps[r]);
        let rest = f.product(
            (0..self.t).filter(|&s| s != r).map(|s| f.sub(nr, f.norm(self.reps[s]))),
        );
        Ok(f.mul(f.norm(a), rest))
    }

    /// `w` from the closed forms, zero point last.
    pub fn w_vector(&self) -> Vec<Elem> {
        let f = &*self.field;
        (0..self.len() - 1)
            .map(|i| self.difference_product(i).expect("index in range"))
            .chain(std::iter::once(self.zero_difference_product()))
            .map(|x| f.inv(x))
            .collect()
    }

    /// `gamma_i` with `gamma_i^(q+1) = -w_i`.
    pub fn gamma_vector(&self) -> Vec<Elem> {
        let f = &*self.field;
        self.w_vector()
            .into_iter()
            .map(|w| f.solve_norm(f.neg(w)).expect("-w_i lies in GF(q)^*"))
            .collect()
    }
}

/// Which rule produced the auxiliary polynomial m(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuxiliaryKind {
    /// Monic irreducible of degree `t + 1 - k >= 2`.
    RootFree,
    /// `x - c` for the first element c outside the evaluation set.
    MissingPoint,
    /// `m = 1`.
    Constant,
    /// `x^q + x - pi` with pi outside GF(q); used when `t = k = q - 1`.
    TraceShift,
}

/// Whether the extended family is undefined at `(t, k)`: characteristic 2
/// with `t = k = q - 1`.
pub fn extended_excluded(field: &FieldTower, t: usize, k: usize) -> bool {
    let q = field.q() as usize;
    field.p() == 2 && t + 1 == q && k + 1 == q
}

/// Monic m(x) of degree `t + 1 - k` (or the trace shift in the boundary
/// case) with no zero on the evaluation set.
pub fn auxiliary_polynomial(cosets: &MultiplicativeCosets, k: usize) -> Result<(Poly, AuxiliaryKind)> {
    let f = &*cosets.field;
    let q = f.q() as usize;
    let t = cosets.t;
    if k == 0 || k > t + 1 {
        return Err(Error::OutOfRange(format!("k = {k} must lie in 1..={}", t + 1)));
    }
    if t + 1 == q && k + 1 == q {
        if f.p() == 2 {
            return Err(Error::Excluded(format!(
                "(t, k) = ({t}, {k}) with q = {q} even: the x^(q+1) cross term vanishes in characteristic 2"
            )));
        }
        let pi = f.generator();
        let mut coeffs = vec![Elem::ZERO; q + 1];
        coeffs[0] = f.neg(pi);
        coeffs[1] = Elem::ONE;
        coeffs[q] = Elem::ONE;
        return Ok((Poly::from_coeffs(coeffs), AuxiliaryKind::TraceShift));
    }
    match t + 1 - k {
        0 => Ok((Poly::one(), AuxiliaryKind::Constant)),
        1 => {
            let points = cosets.points();
            let c = f
                .elements()
                .find(|c| !points.contains(c))
                .ok_or_else(|| Error::OutOfRange("evaluation set covers the field".into()))?;
            Ok((Poly::from_coeffs(vec![f.neg(c), Elem::ONE]), AuxiliaryKind::MissingPoint))
        }
        l => Ok((root_free_monic(f, l)?, AuxiliaryKind::RootFree)),
    }
}

/// Which family and case produced a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "theorem1")]
    Additive,
    #[serde(rename = "prop1-general")]
    Extended,
    #[serde(rename = "prop1-special")]
    ExtendedBoundary,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Additive => "theorem1",
            Provenance::Extended => "prop1-general",
            Provenance::ExtendedBoundary => "prop1-special",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters `[[n, k, d]]_q` of a quantum code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub q: u32,
}

impl QuantumParams {
    /// Quantum Singleton bound met with equality: `k = n - 2d + 2`.
    pub fn meets_singleton(&self) -> bool {
        self.k + 2 * self.d == self.n + 2
    }

    /// Distance 1: the trivial code obtained from a zero-dimensional input.
    pub fn is_degenerate(&self) -> bool {
        self.d <= 1
    }

    /// `[[N, N - 2k, k + 1]]_q` from a classical `[N, k]` code; requires `2k <= N`,
    /// which every Hermitian self-orthogonal code satisfies.
    pub fn from_classical(n: usize, k: usize, q: u32) -> Self {
        QuantumParams { n, k: n - 2 * k, d: k + 1, q }
    }
}

impl fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}, {}]]_{}", self.n, self.k, self.d, self.q)
    }
}

/// Intermediate values that determine the multipliers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub w: Vec<Elem>,
    pub m_coeffs: Vec<Elem>,
    pub gamma: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub code: GrsCode,
    pub quantum: QuantumParams,
    pub provenance: Provenance,
    pub t: usize,
    pub witnesses: Witnesses,
}

impl ConstructionResult {
    /// Recomputes the column multipliers from the witnesses alone.
    pub fn reproduce_multipliers(&self) -> Result<Vec<Elem>> {
        let f = &**self.code.field();
        let w = &self.witnesses;
        match self.provenance {
            Provenance::Additive => {
                let cosets = AdditiveCosets::new(Arc::clone(self.code.field()), self.t)?;
                let gap = f.pow(cosets.conjugate_gap(), self.t as u64 - 1);
                w.w.iter().map(|&wi| f.solve_norm(f.mul(wi, gap))).collect()
            }
            Provenance::Extended | Provenance::ExtendedBoundary => {
                let m = Poly::from_coeffs(w.m_coeffs.clone());
                let scale = if self.provenance == Provenance::ExtendedBoundary {
                    f.solve_norm(f.inv(f.from_int(2)))?
                } else {
                    Elem::ONE
                };
                Ok(self
                    .code
                    .points()
                    .iter()
                    .zip(&w.gamma)
                    .map(|(&a, &g)| f.mul(scale, f.mul(m.eval(f, a), g)))
                    .collect())
            }
        }
    }
}

/// Largest k the additive family supports: `floor((tq + q - 1) / (q + 1))`.
pub fn max_additive_dimension(q: usize, t: usize) -> usize {
    (t * q + q - 1) / (q + 1)
}

fn build_additive(cosets: &AdditiveCosets, k: usize) -> Result<GrsCode> {
    let f = &*cosets.field;
    let v = cosets.norm_targets().into_iter().map(|x| f.solve_norm(x)).collect::<Result<Vec<_>>>()?;
    GrsCode::new(Arc::clone(&cosets.field), cosets.points(), v, k, false)
}

/// GRS code of length tq on additive cosets, `v_i^(q+1) = w_i (alpha^q - alpha)^(t-1)`.
/// Hermitian self-orthogonal for `1 <= k <= floor((tq + q - 1)/(q + 1))`.
pub fn additive_code(field: &Arc<FieldTower>, t: usize, k: usize) -> Result<ConstructionResult> {
    let q = field.q() as usize;
    if t == 0 || t > q {
        return Err(Error::OutOfRange(format!("t = {t} must lie in 1..={q}")));
    }
    let max_k = max_additive_dimension(q, t);
    if k == 0 || k > max_k {
        return Err(Error::OutOfRange(format!("k = {k} must lie in 1..={max_k} for q = {q}, t = {t}")));
    }
    let cosets = AdditiveCosets::new(Arc::clone(field), t)?;
    let code = build_additive(&cosets, k)?;
    Ok(ConstructionResult {
        quantum: QuantumParams::from_classical(code.length(), k, field.q()),
        code,
        provenance: Provenance::Additive,
        t,
        witnesses: Witnesses { w: cosets.w_vector(), ..Witnesses::default() },
    })
}

/// Builds the additive code one dimension past the supported range and
/// reports whether it happens to stay self-orthogonal. `None` when that
/// dimension exceeds the length.
pub fn probe_additive_bound(field: &Arc<FieldTower>, t: usize) -> Result<Option<bool>> {
    let q = field.q() as usize;
    let k = max_additive_dimension(q, t) + 1;
    if k > t * q {
        return Ok(None);
    }
    let cosets = AdditiveCosets::new(Arc::clone(field), t)?;
    Ok(Some(build_additive(&cosets, k)?.to_linear().is_hermitian_self_orthogonal()))
}

/// Extended GRS code of length `t(q+1) + 2` on multiplicative cosets with
/// `v_i = m(a_i) gamma_i` (times `theta'` with `theta'^(q+1) = 1/2` in the
/// boundary case `t = k = q - 1`).
pub fn extended_code(field: &Arc<FieldTower>, t: usize, k: usize) -> Result<ConstructionResult> {
    let cosets = MultiplicativeCosets::new(Arc::clone(field), t)?;
    let f = &**field;
    let (m, kind) = auxiliary_polynomial(&cosets, k)?;
    let points = cosets.points();
    let gamma = cosets.gamma_vector();
    let scale = if kind == AuxiliaryKind::TraceShift {
        f.solve_norm(f.inv(f.from_int(2)))?
    } else {
        Elem::ONE
    };
    let v: Vec<Elem> = points
        .iter()
        .zip(&gamma)
        .map(|(&a, &g)| f.mul(scale, f.mul(m.eval(f, a), g)))
        .collect();
    let n = points.len();
    let code = GrsCode::new(Arc::clone(field), points, v, k, true)?;
    let provenance = if kind == AuxiliaryKind::TraceShift {
        Provenance::ExtendedBoundary
    } else {
        Provenance::Extended
    };
    Ok(ConstructionResult {
        code,
        quantum: QuantumParams::from_classical(n + 1, k, f.q()),
        provenance,
        t,
        witnesses: Witnesses { w: cosets.w_vector(), m_coeffs: m.coeffs().to_vec(), gamma },
    })
}

/// Quantum parameters from a Hermitian self-orthogonal MDS `[N, k]` code
/// over GF(q^2): `[[N, N - 2k, k + 1]]_q`. Both premises are checked; the
/// MDS property goes through the distance ladder, falling back to the GRS
/// structure only when `by_construction` is set.
pub fn hermitian_quantum_params(code: &LinearCode, by_construction: bool) -> Result<QuantumParams> {
    let q = code.field().q();
    if let Some(w) = code.hermitian_violation() {
        return Err(Error::Verification(format!(
            "rows {} and {} have Hermitian product {}",
            w.row, w.other, w.value
        )));
    }
    let evidence = mds_evidence(code, by_construction)?;
    if !evidence.mds {
        return Err(Error::Verification(format!(
            "code is not MDS ({} check)",
            evidence.method.as_str()
        )));
    }
    Ok(QuantumParams::from_classical(code.length(), code.dimension(), q))
}

/// The extended code whose quantum code has distance d, i.e. dimension
/// `d - 1`, for `2 <= d <= t + 2` outside the characteristic-2 exclusion.
pub fn extended_code_for_distance(field: &Arc<FieldTower>, t: usize, d: usize) -> Result<ConstructionResult> {
    let q = field.q() as usize;
    if t == 0 || t + 1 > q {
        return Err(Error::OutOfRange(format!("t = {t} must lie in 1..={}", q - 1)));
    }
    if d < 2 || d > t + 2 {
        return Err(Error::OutOfRange(format!("d = {d} must lie in 2..={}", t + 2)));
    }
    if extended_excluded(field, t, d - 1) {
        return Err(Error::Excluded(format!(
            "(p, t, d) = (2, q - 1, q) for q = {q}; whether a length q^2 + 1 distance q code exists here is open"
        )));
    }
    extended_code(field, t, d - 1)
}

/// Parameters `[[t(q+1)+2, t(q+1)-2d+4, d]]_q` for `2 <= d <= t + 2`, backed
/// by building and checking the extended code of dimension `d - 1`.
pub fn extended_family_params(field: &Arc<FieldTower>, t: usize, d: usize) -> Result<QuantumParams> {
    let result = extended_code_for_distance(field, t, d)?;
    hermitian_quantum_params(&result.code.to_linear(), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grs::w_vector;

    fn tower(q: u64) -> Arc<FieldTower> {
        Arc::new(FieldTower::for_order(q).unwrap())
    }

    fn brute_difference_product(f: &FieldTower, points: &[Elem], i: usize) -> Elem {
        f.product(
            points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &aj)| f.sub(points[i], aj)),
        )
    }

    #[test]
    fn additive_points_examples() {
        let f = tower(2);
        let c = AdditiveCosets::new(Arc::clone(&f), 1).unwrap();
        assert_eq!(c.points(), vec![Elem::ZERO, Elem::ONE]);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = tower(q);
            for t in 1..=q as usize {
                let pts = AdditiveCosets::new(Arc::clone(&f), t).unwrap().points();
                assert_eq!(pts.len(), t * q as usize);
                let mut sorted = pts.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), pts.len());
                if t == q as usize {
                    assert_eq!(sorted, f.elements().collect::<Vec<_>>());
                }
            }
        }
        assert!(AdditiveCosets::new(Arc::clone(&f), 0).is_err());
        assert!(AdditiveCosets::new(Arc::clone(&f), 3).is_err());
        assert!(AdditiveCosets::with_alpha(Arc::clone(&f), 1, Elem::ONE).is_err());
    }

    #[test]
    fn coset_product_examples() {
        let f = tower(3);
        let c = AdditiveCosets::new(Arc::clone(&f), 2).unwrap();
        assert_eq!(c.coset_product(CosetProduct::Scaled { tau: Elem::ZERO }).unwrap(), Elem::ZERO);
        let b = c.coset(1)[2];
        let within = CosetProduct::WithinCoset { coset: 1, point: b };
        assert_eq!(c.coset_product(within).unwrap(), f.from_int(2));
        assert_eq!(c.literal_coset_product(within).unwrap(), f.from_int(2));
        for s in 0..2 {
            for b in c.coset(s) {
                let case = CosetProduct::AcrossCosets { coset: s, other: 1 - s, point: b };
                assert_eq!(c.coset_product(case).unwrap(), c.literal_coset_product(case).unwrap());
            }
        }
        assert!(c.coset_product(CosetProduct::Scaled { tau: f.generator() }).is_err());
        assert!(c
            .coset_product(CosetProduct::AcrossCosets { coset: 0, other: 0, point: Elem::ZERO })
            .is_err());
        assert!(c.coset_product(CosetProduct::WithinCoset { coset: 1, point: Elem::ZERO }).is_err());
    }

    #[test]
    fn additive_difference_product_examples() {
        for q in [2u64, 3, 4, 5] {
            let f = tower(q);
            let c = AdditiveCosets::new(Arc::clone(&f), 1).unwrap();
            let sign = if q % 2 == 1 { f.neg(Elem::ONE) } else { Elem::ONE };
            for i in 0..c.len() {
                assert_eq!(c.difference_product(i).unwrap(), sign);
            }
        }
        let f = tower(3);
        let c = AdditiveCosets::new(Arc::clone(&f), 2).unwrap();
        let pts = c.points();
        for i in 0..c.len() {
            assert_eq!(c.difference_product(i).unwrap(), brute_difference_product(&f, &pts, i));
        }
        assert_eq!(c.w_vector(), w_vector(&f, &pts).unwrap());
        assert!(c.difference_product(6).is_err());
    }

    #[test]
    fn norm_targets_lie_in_subfield() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = tower(q);
            for t in 1..=q as usize {
                let c = AdditiveCosets::new(Arc::clone(&f), t).unwrap();
                assert!(c.norm_targets().iter().all(|&x| !x.is_zero() && f.is_in_subfield(x)));
            }
        }
    }

    #[test]
    fn additive_code_examples() {
        let f3 = tower(3);
        let r = additive_code(&f3, 3, 2).unwrap();
        assert_eq!(r.quantum, QuantumParams { n: 9, k: 5, d: 3, q: 3 });
        assert!(r.code.to_linear().is_hermitian_self_orthogonal());
        assert_eq!(r.reproduce_multipliers().unwrap(), r.code.multipliers());

        let f4 = tower(4);
        let r = additive_code(&f4, 4, 3).unwrap();
        assert_eq!(r.quantum, QuantumParams { n: 16, k: 10, d: 4, q: 4 });
        assert!(r.quantum.d <= 4 && r.quantum.n == 16);

        assert!(matches!(additive_code(&f3, 3, 3), Err(Error::OutOfRange(_))));
        assert!(additive_code(&f3, 4, 1).is_err());
        assert!(additive_code(&f3, 1, 0).is_err());
    }

    #[test]
    fn multiplicative_points_examples() {
        let f = tower(3);
        let c = MultiplicativeCosets::new(Arc::clone(&f), 1).unwrap();
        let w = |j| f.gen_pow(j);
        assert_eq!(c.points(), vec![Elem::ONE, w(2), w(4), w(6), Elem::ZERO]);
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = tower(q);
            for t in 1..q as usize {
                let c = MultiplicativeCosets::new(Arc::clone(&f), t).unwrap();
                let mut pts = c.points();
                assert_eq!(pts.len(), t * (q as usize + 1) + 1);
                assert_eq!(*pts.last().unwrap(), Elem::ZERO);
                pts.sort();
                pts.dedup();
                assert_eq!(pts.len(), c.len());
                if t + 1 == q as usize {
                    assert_eq!(pts, f.elements().collect::<Vec<_>>());
                }
                let norms: Vec<_> = c.reps().iter().map(|&b| f.norm(b)).collect();
                let mut uniq = norms.clone();
                uniq.sort();
                uniq.dedup();
                assert_eq!(uniq.len(), norms.len());
            }
        }
        assert!(MultiplicativeCosets::new(Arc::clone(&f), 3).is_err());
        assert!(MultiplicativeCosets::new(Arc::clone(&f), 0).is_err());
    }

    #[test]
    fn zero_difference_product_examples() {
        let f = tower(3);
        let c = MultiplicativeCosets::new(Arc::clone(&f), 1).unwrap();
        assert_eq!(c.zero_difference_product(), f.from_int(2));
        let pts = c.points();
        assert_eq!(c.zero_difference_product(), brute_difference_product(&f, &pts, 4));
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = tower(q);
            for t in 1..q as usize {
                let c = MultiplicativeCosets::new(Arc::clone(&f), t).unwrap();
                let z = c.zero_difference_product();
                assert!(f.is_in_subfield(z));
                assert_eq!(z, brute_difference_product(&f, &c.points(), c.len() - 1));
            }
        }
    }

    #[test]
    fn multiplicative_difference_product_examples() {
        let f = tower(3);
        let c = MultiplicativeCosets::new(Arc::clone(&f), 1).unwrap();
        for (i, &a) in c.points()[..4].iter().enumerate() {
            assert_eq!(c.difference_product(i).unwrap(), f.norm(a));
        }
        assert!(c.difference_product(4).is_err());
        let c = MultiplicativeCosets::new(Arc::clone(&f), 2).unwrap();
        let pts = c.points();
        for i in 0..c.len() - 1 {
            let closed = c.difference_product(i).unwrap();
            assert_eq!(closed, brute_difference_product(&f, &pts, i));
            assert!(f.is_in_subfield(closed));
        }
    }

    #[test]
    fn gamma_vector_examples() {
        let f = tower(3);
        let c = MultiplicativeCosets::new(Arc::clone(&f), 1).unwrap();
        let gamma = c.gamma_vector();
        assert_eq!(gamma.len(), 5);
        assert!(gamma.iter().all(|g| !g.is_zero()));
        for (g, w) in gamma.iter().zip(c.w_vector()) {
            assert_eq!(f.norm(*g), f.neg(w));
        }
        assert_eq!(gamma, c.gamma_vector());
    }

    #[test]
    fn auxiliary_polynomial_cases() {
        let f = tower(3);
        let c = MultiplicativeCosets::new(Arc::clone(&f), 2).unwrap();
        assert_eq!(auxiliary_polynomial(&c, 3).unwrap(), (Poly::one(), AuxiliaryKind::Constant));
        let (m, kind) = auxiliary_polynomial(&c, 2).unwrap();
        assert_eq!(kind, AuxiliaryKind::TraceShift);
        let pi = f.generator();
        let expected = Poly::from_coeffs(vec![f.neg(pi), Elem::ONE, Elem::ZERO, Elem::ONE]);
        assert_eq!(m, expected);
        assert!(c.points().iter().all(|&a| !m.eval(&f, a).is_zero()));
        let (m, kind) = auxiliary_polynomial(&c, 1).unwrap();
        assert_eq!(kind, AuxiliaryKind::RootFree);
        assert_eq!(m.degree(), Some(2));

        let f5 = tower(5);
        let c = MultiplicativeCosets::new(Arc::clone(&f5), 2).unwrap();
        let (m, kind) = auxiliary_polynomial(&c, 2).unwrap();
        assert_eq!(kind, AuxiliaryKind::MissingPoint);
        assert_eq!(m.degree(), Some(1));
        assert!(c.points().iter().all(|&a| !m.eval(&f5, a).is_zero()));

        let f4 = tower(4);
        let c = MultiplicativeCosets::new(Arc::clone(&f4), 3).unwrap();
        assert!(matches!(auxiliary_polynomial(&c, 3), Err(Error::Excluded(_))));
        assert!(auxiliary_polynomial(&c, 5).is_err());
    }

    #[test]
    fn extended_code_examples() {
        let f = tower(3);
        let r = extended_code(&f, 2, 3).unwrap();
        assert_eq!(r.code.mds_parameters(), (10, 3, 8));
        assert_eq!(r.provenance, Provenance::Extended);
        assert!(r.code.to_linear().is_hermitian_self_orthogonal());

        let r = extended_code(&f, 2, 2).unwrap();
        assert_eq!(r.code.mds_parameters(), (10, 2, 9));
        assert_eq!(r.provenance, Provenance::ExtendedBoundary);
        assert!(r.code.to_linear().is_hermitian_self_orthogonal());
        assert_eq!(r.quantum, QuantumParams { n: 10, k: 6, d: 3, q: 3 });
        assert_eq!(r.reproduce_multipliers().unwrap(), r.code.multipliers());

        assert!(matches!(extended_code(&tower(4), 3, 3), Err(Error::Excluded(_))));
    }

    #[test]
    fn extended_family_params_examples() {
        assert_eq!(
            extended_family_params(&tower(3), 2, 4).unwrap(),
            QuantumParams { n: 10, k: 4, d: 4, q: 3 }
        );
        assert_eq!(
            extended_family_params(&tower(5), 4, 6).unwrap(),
            QuantumParams { n: 26, k: 16, d: 6, q: 5 }
        );
        assert!(matches!(extended_family_params(&tower(4), 3, 4), Err(Error::Excluded(_))));
        assert!(matches!(extended_family_params(&tower(8), 7, 8), Err(Error::Excluded(_))));
        assert!(extended_family_params(&tower(3), 2, 1).is_err());
        assert!(extended_family_params(&tower(3), 2, 5).is_err());
        assert!(extended_family_params(&tower(3), 3, 2).is_err());
        // d = 2 maps to k = 1
        assert_eq!(extended_family_params(&tower(3), 1, 2).unwrap().d, 2);
    }

    #[test]
    fn quantum_params_from_classical() {
        let f = tower(3);
        let ten_two = extended_code(&f, 2, 2).unwrap().code.to_linear();
        assert_eq!(hermitian_quantum_params(&ten_two, false).unwrap(), QuantumParams { n: 10, k: 6, d: 3, q: 3 });
        let nine_two = additive_code(&f, 3, 2).unwrap().code.to_linear();
        assert_eq!(hermitian_quantum_params(&nine_two, false).unwrap(), QuantumParams { n: 9, k: 5, d: 3, q: 3 });

        let empty = LinearCode::new(Arc::clone(&f), crate::Matrix::zeros(0, 7)).unwrap();
        let trivial = hermitian_quantum_params(&empty, false).unwrap();
        assert_eq!(trivial, QuantumParams { n: 7, k: 7, d: 1, q: 3 });
        assert!(trivial.is_degenerate() && trivial.meets_singleton());

        let f2 = tower(2);
        let ones = crate::Matrix::from_rows(5, vec![vec![Elem::ONE; 5]]);
        let ones = LinearCode::new(f2, ones).unwrap();
        assert!(matches!(hermitian_quantum_params(&ones, true), Err(Error::Verification(_))));
    }

    #[test]
    fn probe_reports_boundary_behaviour() {
        let f = tower(3);
        for t in 1..=3 {
            let probe = probe_additive_bound(&f, t).unwrap();
            assert!(probe.is_some());
        }
    }
}
