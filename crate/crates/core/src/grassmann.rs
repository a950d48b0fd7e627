//! Exact arithmetic on the Grassmann algebra G3 with generators xi_1..xi_3.
//!
//! An element is stored as eight complex coefficients indexed by bitmask:
//! bit `k` set means generator `xi_{k+1}` is present, and each monomial is the
//! product of its generators in increasing index order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{ComplexVector3, Operator2, C64, I, ONE, ZERO};
use crate::pseudoherm::Rotation3C;

/// Residual at or below which a correspondence check counts as exact.
pub const EXACT_TOL: f64 = 1e-14;

const MONOMIAL_LABELS: [&str; 8] = ["1", "x1", "x2", "x1x2", "x3", "x1x3", "x2x3", "x1x2x3"];

fn degree(mask: usize) -> u32 {
    (mask as u32).count_ones()
}

/// Sign of writing the product of monomials `a` and `b` in increasing order:
/// `(-1)^(#{(i, j): i in a, j in b, i > j})`.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0;
    for j in 0..3 {
        if b & (1 << j) != 0 {
            swaps += degree(a >> (j + 1));
        }
    }
    if swaps % 2 == 0 { 1.0 } else { -1.0 }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrassmannElement(pub [C64; 8]);

impl GrassmannElement {
    pub fn new(coefficients: [C64; 8]) -> Self {
        Self(coefficients)
    }

    pub fn zero() -> Self {
        Self([ZERO; 8])
    }

    pub fn scalar(c: C64) -> Self {
        Self::monomial(0, c)
    }

    pub fn one() -> Self {
        Self::scalar(ONE)
    }

    pub fn monomial(mask: usize, c: C64) -> Self {
        assert!(mask < 8, "monomial mask out of range");
        let mut out = Self::zero();
        out.0[mask] = c;
        out
    }

    /// Generator `xi_{k+1}`, `k` in `0..3`.
    pub fn generator(k: usize) -> Self {
        assert!(k < 3, "generator index out of range");
        Self::monomial(1 << k, ONE)
    }

    /// `H_B = -(i/2) eps_ijk xi_i xi_j B_k = -i(B1 xi2xi3 + B2 xi3xi1 + B3 xi1xi2)`.
    pub fn hamiltonian(b: &ComplexVector3) -> Self {
        let mut out = Self::zero();
        out.0[0b110] = -I * b.x;
        out.0[0b101] = I * b.y;
        out.0[0b011] = -I * b.z;
        out
    }

    pub fn coefficient(&self, mask: usize) -> C64 {
        self.0[mask]
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(self.0.map(|x| x * c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == ZERO)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Parity of a homogeneous element; `None` when both even and odd parts
    /// are present. The zero element counts as even.
    pub fn parity(&self) -> Option<u8> {
        let has = |odd: bool| (0..8).any(|m| (degree(m) % 2 == 1) == odd && self.0[m] != ZERO);
        match (has(false), has(true)) {
            (_, false) => Some(0),
            (false, true) => Some(1),
            (true, true) => None,
        }
    }

    pub fn even_part(&self) -> Self {
        let mut out = *self;
        for m in 0..8 {
            if degree(m) % 2 == 1 {
                out.0[m] = ZERO;
            }
        }
        out
    }

    pub fn odd_part(&self) -> Self {
        *self - self.even_part()
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in 0..8 {
            if self.0[a] == ZERO {
                continue;
            }
            for b in 0..8 {
                if a & b != 0 || other.0[b] == ZERO {
                    continue;
                }
                out.0[a | b] += self.0[a] * other.0[b] * reorder_sign(a, b);
            }
        }
        out
    }

    /// The `*` involution: conjugates coefficients and reverses the order of
    /// each monomial, fixing the generators.
    pub fn star(&self) -> Self {
        let mut out = Self::zero();
        for m in 0..8 {
            let k = degree(m);
            let sign = if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            out.0[m] = self.0[m].conj() * sign;
        }
        out
    }

    /// Substitutes `xi_i -> sum_k a_ik xi_k` and expands.
    pub fn substitute(&self, a: &Rotation3C) -> Self {
        let images: [Self; 3] = std::array::from_fn(|i| {
            let mut g = Self::zero();
            for k in 0..3 {
                g.0[1 << k] = a.0[i][k];
            }
            g
        });
        let mut out = Self::zero();
        for m in 0..8 {
            if self.0[m] == ZERO {
                continue;
            }
            let mut term = Self::scalar(self.0[m]);
            for (i, image) in images.iter().enumerate() {
                if m & (1 << i) != 0 {
                    term = term.product(image);
                }
            }
            out = out + term;
        }
        out
    }

    /// Right derivative with respect to `xi_{k+1}`: the generator is moved to
    /// the right end of each monomial, then removed.
    pub fn right_derivative(&self, k: usize) -> Self {
        let bit = 1 << k;
        let mut out = Self::zero();
        for m in 0..8 {
            if m & bit == 0 {
                continue;
            }
            let after = degree(m >> (k + 1));
            let sign = if after % 2 == 0 { 1.0 } else { -1.0 };
            out.0[m & !bit] += self.0[m] * sign;
        }
        out
    }

    /// Coefficients in the form `f0 + f_i xi_i + f_ij xi_i xi_j + i k eps_ijk xi_i xi_j xi_k / 3!`
    /// with `f_ij = -f_ji`.
    pub fn general_coefficients(&self) -> GeneralCoefficients {
        let mut f_ij = [[ZERO; 3]; 3];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let half = self.0[(1 << i) | (1 << j)] * 0.5;
            f_ij[i][j] = half;
            f_ij[j][i] = -half;
        }
        GeneralCoefficients {
            f0: self.0[0],
            f: [self.0[1], self.0[2], self.0[4]],
            f_ij,
            k: -I * self.0[7],
        }
    }
}

impl Default for GrassmannElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for GrassmannElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|m| self.0[m] + rhs.0[m]))
    }
}

impl Sub for GrassmannElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|m| self.0[m] - rhs.0[m]))
    }
}

impl Neg for GrassmannElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul for GrassmannElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..8)
            .filter(|&m| self.0[m] != ZERO)
            .map(|m| format!("({}){}", self.0[m], MONOMIAL_LABELS[m]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Coefficients of the general element, `f_ij` antisymmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralCoefficients {
    pub f0: C64,
    pub f: [C64; 3],
    pub f_ij: [[C64; 3]; 3],
    pub k: C64,
}

impl GeneralCoefficients {
    pub fn to_element(&self) -> GrassmannElement {
        let mut out = GrassmannElement::zero();
        out.0[0] = self.f0;
        out.0[1] = self.f[0];
        out.0[2] = self.f[1];
        out.0[4] = self.f[2];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            out.0[(1 << i) | (1 << j)] = self.f_ij[i][j] - self.f_ij[j][i];
        }
        out.0[7] = I * self.k;
        out
    }

    /// `f0, f_i, k` real and `f_ij = conj(f_ji)`.
    pub fn is_star_real(&self, tol: f64) -> bool {
        let real = |z: C64| z.im.abs() <= tol;
        real(self.f0)
            && self.f.iter().all(|&z| real(z))
            && real(self.k)
            && (0..3).all(|i| (0..3).all(|j| (self.f_ij[i][j] - self.f_ij[j][i].conj()).norm() <= tol))
    }

    /// Printed reality class of the `+` involution for `zeta = R xi`:
    /// `g0, k` real, `g1 = R R^dagger conj(g1)`, `R^T g2 R` Hermitian.
    pub fn is_plus_real(&self, r: &Rotation3C, tol: f64) -> bool {
        let real = |z: C64| z.im.abs() <= tol;
        let rrd = *r * r.dagger();
        let g1_ok = (0..3).all(|i| {
            let rhs: C64 = (0..3).map(|j| rrd.0[i][j] * self.f[j].conj()).sum();
            (self.f[i] - rhs).norm() <= tol
        });
        let g2 = Rotation3C(self.f_ij);
        let m = r.transpose() * g2 * *r;
        let herm = (0..3).all(|i| (0..3).all(|j| (m.0[i][j] - m.0[j][i].conj()).norm() <= tol));
        real(self.f0) && real(self.k) && g1_ok && herm
    }
}

/// Canonical transformation `zeta_i = R_ik xi_k` with complex orthogonal `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalMap {
    pub r: Rotation3C,
}

impl CanonicalMap {
    pub fn new(r: Rotation3C, tol: f64) -> Result<Self> {
        if !r.is_orthogonal(tol) {
            return Err(Error::InvalidParameter("canonical map must satisfy R R^T = I".into()));
        }
        Ok(Self { r })
    }

    pub fn identity() -> Self {
        Self { r: Rotation3C::identity() }
    }

    pub fn det(&self) -> C64 {
        self.r.det()
    }

    /// `f(xi) = g(zeta(xi))`.
    pub fn pullback(&self, g: &GrassmannElement) -> GrassmannElement {
        g.substitute(&self.r)
    }

    /// Inverse of `pullback`: substitutes `xi_k = R_ik zeta_i`.
    pub fn pushforward(&self, f: &GrassmannElement) -> GrassmannElement {
        f.substitute(&self.r.transpose())
    }

    /// The `+` involution on functions of `zeta`.
    pub fn plus(&self, g: &GrassmannElement) -> GrassmannElement {
        self.pushforward(&self.pullback(g).star())
    }

    /// `Q'`, realizing `zeta_k` as `(det R) sigma_k / sqrt 2`.
    pub fn quantize(&self, g: &GrassmannElement) -> Operator2 {
        let s = self.det() * std::f64::consts::FRAC_1_SQRT_2;
        quantize_with(g, &std::array::from_fn(|k| Operator2::pauli(k).scale(s)))
    }
}

/// Dirac bracket on the constraint-reduced algebra,
/// `{f, g}_D = i (-1)^{P_g} sum_k (d_R f / d xi_k)(d_R g / d xi_k)`,
/// which gives `{xi_i, xi_j}_D = -i delta_ij`.
pub fn dirac_bracket(f: &GrassmannElement, g: &GrassmannElement) -> Result<GrassmannElement> {
    f.parity().ok_or(Error::NonHomogeneous)?;
    let pg = g.parity().ok_or(Error::NonHomogeneous)?;
    let mut sum = GrassmannElement::zero();
    for k in 0..3 {
        sum = sum + f.right_derivative(k).product(&g.right_derivative(k));
    }
    let sign = if pg == 0 { 1.0 } else { -1.0 };
    Ok(sum.scale(I * sign))
}

const PERMUTATIONS_3: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
    ([1, 0, 2], -1.0),
];

fn antisymmetrized(ops: &[Operator2]) -> Operator2 {
    match ops.len() {
        0 => Operator2::identity(),
        1 => ops[0],
        2 => (ops[0] * ops[1] - ops[1] * ops[0]).scale(C64::from(0.5)),
        _ => {
            let mut acc = Operator2::zero();
            for (p, sign) in PERMUTATIONS_3 {
                acc = acc + (ops[p[0]] * ops[p[1]] * ops[p[2]]).scale(C64::from(sign));
            }
            acc.scale(C64::from(1.0 / 6.0))
        }
    }
}

/// Linear extension of the antisymmetrized monomial map with the given
/// generator images and `1 -> I`.
pub fn quantize_with(f: &GrassmannElement, generators: &[Operator2; 3]) -> Operator2 {
    let mut out = Operator2::zero();
    for m in 0..8 {
        if f.0[m] == ZERO {
            continue;
        }
        let ops: Vec<Operator2> = (0..3).filter(|k| m & (1 << k) != 0).map(|k| generators[k]).collect();
        out = out + antisymmetrized(&ops).scale(f.0[m]);
    }
    out
}

/// `Q`, with `Q(xi_k) = sigma_k / sqrt 2`.
pub fn quantize(f: &GrassmannElement) -> Operator2 {
    let s = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    quantize_with(f, &std::array::from_fn(|k| Operator2::pauli(k).scale(s)))
}

/// `A B - (-1)^{pa pb} B A`.
pub fn graded_commutator(a: &Operator2, b: &Operator2, pa: u8, pb: u8) -> Operator2 {
    if pa * pb % 2 == 1 {
        a.anticommutator(b)
    } else {
        a.commutator(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrespondenceReport {
    /// `Q({f, g}_D)`.
    pub quantized_bracket: Operator2,
    /// `(1/i)[Q(f), Q(g)]`, graded.
    pub scaled_commutator: Operator2,
    pub residual: f64,
    pub exact: bool,
}

/// Compares `Q({f, g}_D)` with `(1/i)[Q(f), Q(g)]_graded`.
pub fn verify_correspondence(f: &GrassmannElement, g: &GrassmannElement) -> Result<CorrespondenceReport> {
    let pf = f.parity().ok_or(Error::NonHomogeneous)?;
    let pg = g.parity().ok_or(Error::NonHomogeneous)?;
    let quantized_bracket = quantize(&dirac_bracket(f, g)?);
    let scaled_commutator = graded_commutator(&quantize(f), &quantize(g), pf, pg).scale(-I);
    let residual = quantized_bracket.max_abs_diff(&scaled_commutator);
    Ok(CorrespondenceReport { quantized_bracket, scaled_commutator, residual, exact: residual <= EXACT_TOL })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyEntry {
    pub f: String,
    pub g: String,
    pub report: CorrespondenceReport,
}

/// Correspondence check over every pair of basis monomials and every pair
/// `(H_B, xi_i)`, `(xi_i, H_B)`. Entries are returned whether exact or not.
pub fn correspondence_survey(b: &ComplexVector3) -> Vec<SurveyEntry> {
    let mut named: Vec<(String, GrassmannElement)> = (0..8)
        .map(|m| (MONOMIAL_LABELS[m].to_string(), GrassmannElement::monomial(m, ONE)))
        .collect();
    named.push(("H_B".to_string(), GrassmannElement::hamiltonian(b)));
    let mut out = Vec::new();
    for (i, (fl, f)) in named.iter().enumerate() {
        for (j, (gl, g)) in named.iter().enumerate() {
            let with_h = i == 8 || j == 8;
            if with_h && !(i == 8 && (1..8).contains(&j) && degree(j) == 1)
                && !(j == 8 && (1..8).contains(&i) && degree(i) == 1)
            {
                continue;
            }
            // both monomials are homogeneous and H_B is even
            let report = verify_correspondence(f, g).expect("homogeneous inputs");
            out.push(SurveyEntry { f: fl.clone(), g: gl.clone(), report });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hamiltonian_from_field, Vec3};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn xi(k: usize) -> GrassmannElement {
        GrassmannElement::generator(k)
    }

    #[test]
    fn product_examples() {
        assert!((xi(0) * xi(0)).is_zero());
        assert!((xi(0) * xi(1) + xi(1) * xi(0)).is_zero());
        let top = (xi(0) * xi(1)) * xi(2);
        assert_eq!(top, GrassmannElement::monomial(7, ONE));
        assert_eq!(xi(2) * xi(0) * xi(1), top);
        assert_eq!(xi(1) * xi(0) * xi(2), -top);
    }

    #[test]
    fn star_examples() {
        let f = GrassmannElement::monomial(0b011, I);
        assert_eq!(f.star(), f);
        let k = GrassmannElement::scalar(c(2.0, -3.0));
        assert_eq!(k.star(), GrassmannElement::scalar(c(2.0, 3.0)));
        let h = GrassmannElement::hamiltonian(&ComplexVector3::from_real(Vec3::new(0.3, -1.2, 2.0)));
        assert_eq!(h.star(), h);
        let h = GrassmannElement::hamiltonian(&ComplexVector3::new(c(0.3, 0.1), ZERO, ONE));
        assert!(h.star() != h);
        // (xi1 xi2 xi3)* = xi3 xi2 xi1 = -xi1 xi2 xi3
        assert_eq!(GrassmannElement::monomial(7, ONE).star(), GrassmannElement::monomial(7, -ONE));
    }

    #[test]
    fn right_derivative_signs() {
        let m = GrassmannElement::monomial(7, ONE);
        assert_eq!(m.right_derivative(2), GrassmannElement::monomial(0b011, ONE));
        assert_eq!(m.right_derivative(1), GrassmannElement::monomial(0b101, -ONE));
        assert_eq!(m.right_derivative(0), GrassmannElement::monomial(0b110, ONE));
        assert!(GrassmannElement::one().right_derivative(0).is_zero());
    }

    #[test]
    fn dirac_bracket_examples() {
        assert_eq!(dirac_bracket(&xi(0), &xi(0)).unwrap(), GrassmannElement::scalar(-I));
        assert!(dirac_bracket(&xi(0), &xi(1)).unwrap().is_zero());
        let b = ComplexVector3::from_real(Vec3::new(0.4, -0.7, 1.3));
        let h = GrassmannElement::hamiltonian(&b);
        let bv = b.to_array();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            // -eps_ijk xi_j B_k
            let want = xi(k).scale(bv[j]) - xi(j).scale(bv[k]);
            assert!(dirac_bracket(&xi(i), &h).unwrap().max_abs_diff(&want) < 1e-15);
        }
        let mixed = xi(0) + GrassmannElement::one();
        assert_eq!(dirac_bracket(&mixed, &xi(0)), Err(Error::NonHomogeneous));
        assert_eq!(dirac_bracket(&xi(0), &mixed), Err(Error::NonHomogeneous));
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize(&GrassmannElement::one()), Operator2::identity());
        let q12 = quantize(&GrassmannElement::monomial(0b011, ONE));
        assert!(q12.max_abs_diff(&Operator2::pauli(2).scale(I * 0.5)) < 1e-15);
        let q123 = quantize(&GrassmannElement::monomial(7, ONE));
        let want = Operator2::identity().scale(I / (2.0 * 2f64.sqrt()));
        assert!(q123.max_abs_diff(&want) < 1e-15);
        let b = ComplexVector3::new(c(0.4, 0.2), c(-0.7, 0.0), c(1.3, -0.5));
        let qh = quantize(&GrassmannElement::hamiltonian(&b));
        assert!(qh.max_abs_diff(&hamiltonian_from_field(&b)) < 1e-15);
    }

    #[test]
    fn anticommutation_relations() {
        for i in 0..3 {
            for j in 0..3 {
                let g = graded_commutator(&quantize(&xi(i)), &quantize(&xi(j)), 1, 1);
                let want = if i == j { Operator2::identity() } else { Operator2::zero() };
                assert!(g.max_abs_diff(&want) < 1e-15);
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let id = CanonicalMap::identity();
        let f = GrassmannElement::new(std::array::from_fn(|m| c(m as f64, 1.0 - m as f64)));
        assert_eq!(id.pullback(&f), f);
        assert_eq!(id.plus(&f), f.star());

        let t = 0.7f64;
        let (s, co) = t.sin_cos();
        let r = Rotation3C::from_real([[co, -s, 0.0], [s, co, 0.0], [0.0, 0.0, 1.0]]);
        let map = CanonicalMap::new(r, 1e-12).unwrap();
        let top = map.pullback(&GrassmannElement::monomial(7, ONE));
        assert!(top.max_abs_diff(&GrassmannElement::monomial(7, map.det())) < 1e-15);
        assert!(map.pushforward(&map.pullback(&f)).max_abs_diff(&f) < 1e-14);

        let bad = Rotation3C::from_real([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(CanonicalMap::new(bad, 1e-12).is_err());
    }

    #[test]
    fn general_coefficients_round_trip() {
        let f = GrassmannElement::new(std::array::from_fn(|m| c(m as f64 + 0.5, -(m as f64))));
        assert_eq!(f.general_coefficients().to_element(), f);
        let h = GrassmannElement::hamiltonian(&ComplexVector3::from_real(Vec3::new(1.0, 2.0, 3.0)));
        assert!(h.general_coefficients().is_star_real(1e-15));
    }

    #[test]
    fn generator_and_hamiltonian_correspondence_is_exact() {
        for i in 0..3 {
            for j in 0..3 {
                assert!(verify_correspondence(&xi(i), &xi(j)).unwrap().exact);
            }
        }
        let b = ComplexVector3::from_real(Vec3::new(0.4, -0.7, 1.3));
        let h = GrassmannElement::hamiltonian(&b);
        for i in 0..3 {
            assert!(verify_correspondence(&h, &xi(i)).unwrap().exact);
            assert!(verify_correspondence(&xi(i), &h).unwrap().exact);
        }
        let r = verify_correspondence(&GrassmannElement::one(), &h).unwrap();
        assert_eq!(r.quantized_bracket, Operator2::zero());
        assert_eq!(r.scaled_commutator, Operator2::zero());
    }

    #[test]
    fn survey_lists_all_pairs() {
        let b = ComplexVector3::from_real(Vec3::new(0.4, -0.7, 1.3));
        let survey = correspondence_survey(&b);
        assert_eq!(survey.len(), 64 + 6);
        assert!(survey.iter().filter(|e| e.f.starts_with('x') && e.f.len() == 2 && e.g.len() == 2
            && e.g.starts_with('x')).all(|e| e.report.exact));
    }
}
