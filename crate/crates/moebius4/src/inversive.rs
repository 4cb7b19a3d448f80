//! Exact rational kernel for the Moebius geometry of S^4 = R^4 ∪ {∞}.
//!
//! Spheres and points are represented as vectors in R^{5,1} with the Lorentz
//! form <x,y> = x1 y1 + ... + x5 y5 − x6 y6. A sphere with center c and
//! squared radius r² embeds as
//!
//!   σ = (c, (|c|² − r² − 1)/2, (|c|² − r² + 1)/2),   <σ,σ> = r²,
//!
//! a finite point p as the null vector p̂ = (p, (|p|²−1)/2, (|p|²+1)/2), and
//! ∞ as (0,0,0,0,1,1). Under this embedding <p̂,σ> = (r² − |p−c|²)/2, so a
//! point is strictly inside the ball iff the product is strictly positive.
//! Inversion in a sphere becomes the linear Lorentz reflection in σ, which
//! keeps every decision in exact rational arithmetic.

use crate::rat::{
    dist_sq, dot4, format_rat, norm_sq, push_rat_bytes, rat, rat_sign, vec4_add, vec4_scale,
    vec4_sub, Rat, Vec4,
};
use num::traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InversiveError {
    #[error("radius squared must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("coincident spheres cannot be classified")]
    CoincidentSpheres,
}

/// A round sphere in R^4 with rational center and positive rational squared
/// radius; also stands for the closed ball it bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sphere {
    center: Vec4,
    radius_sq: Rat,
}

impl Sphere {
    pub fn new(center: Vec4, radius_sq: Rat) -> Result<Self, InversiveError> {
        if !radius_sq.is_positive() {
            return Err(InversiveError::NonPositiveRadius(format_rat(&radius_sq)));
        }
        Ok(Sphere { center, radius_sq })
    }

    pub fn center(&self) -> &Vec4 {
        &self.center
    }

    pub fn radius_sq(&self) -> &Rat {
        &self.radius_sq
    }

    /// |p − c|² < r² (∞ is outside every sphere).
    pub fn strictly_contains(&self, p: &PointOrInfinity) -> bool {
        match p {
            PointOrInfinity::Infinity => false,
            PointOrInfinity::Finite(q) => dist_sq(q, &self.center) < self.radius_sq,
        }
    }

    /// |p − c|² ≤ r².
    pub fn contains_closed(&self, p: &PointOrInfinity) -> bool {
        match p {
            PointOrInfinity::Infinity => false,
            PointOrInfinity::Finite(q) => dist_sq(q, &self.center) <= self.radius_sq,
        }
    }

    /// The classical inversion x ↦ c + r²(x−c)/|x−c|², swapping inside and
    /// outside; kept next to the matrix route as its independent form.
    pub fn invert_point(&self, p: &PointOrInfinity) -> PointOrInfinity {
        match p {
            PointOrInfinity::Infinity => PointOrInfinity::Finite(self.center.clone()),
            PointOrInfinity::Finite(q) => {
                let u = vec4_sub(q, &self.center);
                let n = norm_sq(&u);
                if n.is_zero() {
                    PointOrInfinity::Infinity
                } else {
                    let s = &self.radius_sq / n;
                    PointOrInfinity::Finite(vec4_add(&self.center, &vec4_scale(&s, &u)))
                }
            }
        }
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.center;
        write!(
            f,
            "S(({},{},{},{}), r^2={})",
            format_rat(&c[0]),
            format_rat(&c[1]),
            format_rat(&c[2]),
            format_rat(&c[3]),
            format_rat(&self.radius_sq)
        )
    }
}

/// A point of S^4 = R^4 ∪ {∞}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointOrInfinity {
    Finite(Vec4),
    Infinity,
}

impl PointOrInfinity {
    pub fn finite(v: Vec4) -> Self {
        PointOrInfinity::Finite(v)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointOrInfinity::Infinity)
    }
}

impl fmt::Display for PointOrInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointOrInfinity::Infinity => write!(f, "inf"),
            PointOrInfinity::Finite(v) => write!(
                f,
                "({},{},{},{})",
                format_rat(&v[0]),
                format_rat(&v[1]),
                format_rat(&v[2]),
                format_rat(&v[3])
            ),
        }
    }
}

/// A vector of R^{5,1}: space-like for spheres, null for points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversiveVector(pub [Rat; 6]);

impl InversiveVector {
    pub fn components(&self) -> &[Rat; 6] {
        &self.0
    }
}

const LORENTZ_SIGNS: [i64; 6] = [1, 1, 1, 1, 1, -1];

/// The Lorentz product x1 y1 + ... + x5 y5 − x6 y6.
pub fn lorentz_product(x: &InversiveVector, y: &InversiveVector) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..6 {
        let term = &x.0[i] * &y.0[i];
        if LORENTZ_SIGNS[i] > 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// σ = (c, (|c|²−r²−1)/2, (|c|²−r²+1)/2); satisfies <σ,σ> = r² and
/// <p̂,σ> = (r² − |p−c|²)/2 for every finite point p.
pub fn sphere_to_inversive(s: &Sphere) -> InversiveVector {
    let a = norm_sq(&s.center) - &s.radius_sq;
    let half = rat(1, 2);
    let u = (&a - Rat::one()) * &half;
    let v = (&a + Rat::one()) * &half;
    let c = s.center.clone();
    let [c0, c1, c2, c3] = c;
    InversiveVector([c0, c1, c2, c3, u, v])
}

/// Null-vector embedding of a point; ∞ ↦ (0,0,0,0,1,1).
pub fn point_to_inversive(p: &PointOrInfinity) -> InversiveVector {
    match p {
        PointOrInfinity::Infinity => InversiveVector([
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::one(),
            Rat::one(),
        ]),
        PointOrInfinity::Finite(q) => {
            let n = norm_sq(q);
            let half = rat(1, 2);
            let u = (&n - Rat::one()) * &half;
            let v = (&n + Rat::one()) * &half;
            let [c0, c1, c2, c3] = q.clone();
            InversiveVector([c0, c1, c2, c3, u, v])
        }
    }
}

/// Recover the point of S^4 from a null vector. The class of ∞ is exactly
/// the null vectors with equal last two components.
pub fn inversive_to_point(x: &InversiveVector) -> PointOrInfinity {
    let denom = &x.0[5] - &x.0[4];
    if denom.is_zero() {
        PointOrInfinity::Infinity
    } else {
        PointOrInfinity::Finite([
            &x.0[0] / &denom,
            &x.0[1] / &denom,
            &x.0[2] / &denom,
            &x.0[3] / &denom,
        ])
    }
}

/// An element of Mob(S^4) as an exact rational Lorentz matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusMatrix {
    entries: [[Rat; 6]; 6],
}

impl MoebiusMatrix {
    pub fn identity() -> Self {
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() })
        });
        MoebiusMatrix { entries }
    }

    pub fn from_entries(entries: [[Rat; 6]; 6]) -> Self {
        MoebiusMatrix { entries }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn mul(&self, rhs: &MoebiusMatrix) -> MoebiusMatrix {
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Rat::zero();
                for k in 0..6 {
                    acc += &self.entries[i][k] * &rhs.entries[k][j];
                }
                acc
            })
        });
        MoebiusMatrix { entries }
    }

    pub fn apply(&self, x: &InversiveVector) -> InversiveVector {
        InversiveVector(std::array::from_fn(|i| {
            let mut acc = Rat::zero();
            for k in 0..6 {
                acc += &self.entries[i][k] * &x.0[k];
            }
            acc
        }))
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..6 {
            for j in 0..6 {
                let expect_one = i == j;
                let e = &self.entries[i][j];
                if expect_one && !e.is_one() {
                    return false;
                }
                if !expect_one && !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact check of MᵀJM = J with J = diag(1,1,1,1,1,−1).
    pub fn is_lorentz(&self) -> bool {
        for i in 0..6 {
            for j in i..6 {
                let mut acc = Rat::zero();
                for k in 0..6 {
                    let term = &self.entries[k][i] * &self.entries[k][j];
                    if LORENTZ_SIGNS[k] > 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                let expected = if i != j {
                    Rat::zero()
                } else if LORENTZ_SIGNS[i] > 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                if acc != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn determinant(&self) -> Rat {
        let mut m: Vec<Vec<Rat>> = self
            .entries
            .iter()
            .map(|row| row.to_vec())
            .collect();
        let mut det = Rat::one();
        for col in 0..6 {
            let pivot_row = (col..6).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot_row else {
                return Rat::zero();
            };
            if pr != col {
                m.swap(pr, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..6 {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &pivot;
                for c in col..6 {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        det
    }

    /// Canonical byte key: equal matrices always serialize identically.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(36 * 12);
        for row in &self.entries {
            for e in row {
                push_rat_bytes(&mut out, e);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MoebiusMatrix {
        // binary exponentiation; entry growth makes repeated squaring much
        // cheaper than iterated multiplication in the order checks
        let mut acc = MoebiusMatrix::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// The Lorentz reflection x ↦ x − 2(<x,σ>/<σ,σ>)σ realizing inversion in
/// the sphere; an involution with determinant −1.
pub fn reflection_matrix(s: &Sphere) -> MoebiusMatrix {
    let sigma = sphere_to_inversive(s);
    let q = lorentz_product(&sigma, &sigma);
    let scale = rat(2, 1) / q;
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let j_sign = if LORENTZ_SIGNS[j] > 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            let outer = &sigma.0[i] * &sigma.0[j] * &j_sign * &scale;
            if i == j {
                Rat::one() - outer
            } else {
                -outer
            }
        })
    });
    MoebiusMatrix { entries }
}

/// Embed, apply the matrix, and dehomogenize.
pub fn apply_to_point(m: &MoebiusMatrix, p: &PointOrInfinity) -> PointOrInfinity {
    inversive_to_point(&m.apply(&point_to_inversive(p)))
}

/// Exact relative position of two distinct spheres. `Intersecting` carries
/// the exterior-angle data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairClass {
    Disjoint,
    ExternallyTangent,
    InternallyTangent,
    Nested,
    Intersecting(Angle),
}

impl PairClass {
    /// Whether the two closed balls share at least one point.
    pub fn closed_balls_meet(&self) -> bool {
        !matches!(self, PairClass::Disjoint)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            PairClass::Disjoint => "disjoint",
            PairClass::ExternallyTangent => "externally_tangent",
            PairClass::InternallyTangent => "internally_tangent",
            PairClass::Nested => "nested",
            PairClass::Intersecting(_) => "intersecting",
        }
    }

    pub fn angle(&self) -> Option<&Angle> {
        match self {
            PairClass::Intersecting(a) => Some(a),
            _ => None,
        }
    }
}

/// Exterior-angle data of an intersecting pair, reported through the sign
/// and the exact square of cos θ = (d² − r1² − r2²)/(2 r1 r2); the cosine
/// itself may be irrational but its square never is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Angle {
    /// The exact numerator d² − r1² − r2² (carries the sign of cos θ).
    pub cos_num: Rat,
    /// cos²θ = (d² − r1² − r2²)² / (4 r1² r2²), exact.
    pub cos_sq: Rat,
    /// m when θ = π/m. Orders are searched for m ≤ 12, but cos²(π/m) is
    /// rational only for m ∈ {2,3,4,6}, so with rational inputs only those
    /// can match; any other intersecting angle reports None.
    pub coxeter_order: Option<u32>,
}

impl Angle {
    pub fn cos_sign(&self) -> i8 {
        rat_sign(&self.cos_num)
    }

    /// Human-readable angle when it is π/m.
    pub fn label(&self) -> String {
        match self.coxeter_order {
            Some(m) => format!("pi/{m}"),
            None => format!("acos(sgn {} * sqrt({}))", self.cos_sign(), format_rat(&self.cos_sq)),
        }
    }
}

fn coxeter_order_from_cos(sign: i8, cos_sq: &Rat) -> Option<u32> {
    if sign == 0 {
        return Some(2);
    }
    if sign < 0 {
        // exterior angle obtuse: never of the form π/m, m ≥ 2
        return None;
    }
    if *cos_sq == rat(1, 4) {
        Some(3)
    } else if *cos_sq == rat(1, 2) {
        Some(4)
    } else if *cos_sq == rat(3, 4) {
        Some(6)
    } else {
        None
    }
}

/// Classify two spheres exactly using only rational comparisons on d², r1²,
/// r2². Disjoint/tangent/nested tests avoid the irrational r1 r2 by
/// comparing (d² − r1² − r2²)² against 4 r1² r2².
pub fn classify_pair(s1: &Sphere, s2: &Sphere) -> Result<PairClass, InversiveError> {
    let d_sq = dist_sq(&s1.center, &s2.center);
    if d_sq.is_zero() && s1.radius_sq == s2.radius_sq {
        return Err(InversiveError::CoincidentSpheres);
    }
    let num = &d_sq - &s1.radius_sq - &s2.radius_sq;
    let num_sq = &num * &num;
    let four_r2 = rat(4, 1) * &s1.radius_sq * &s2.radius_sq;
    Ok(if num_sq < four_r2 {
        let cos_sq = num_sq / &four_r2;
        let order = coxeter_order_from_cos(rat_sign(&num), &cos_sq);
        PairClass::Intersecting(Angle {
            cos_num: num,
            cos_sq,
            coxeter_order: order,
        })
    } else if num_sq == four_r2 {
        if num.is_positive() {
            PairClass::ExternallyTangent
        } else {
            PairClass::InternallyTangent
        }
    } else if num.is_positive() {
        PairClass::Disjoint
    } else {
        PairClass::Nested
    })
}

/// Exact emptiness certificate for an intersection of closed balls: the
/// minimal value over R^4 of max_i (|x − c_i|² − r_i²), attained at
/// `witness`. The balls share a point iff `min_excess` ≤ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonPointCertificate {
    pub has_common_point: bool,
    pub min_excess: Rat,
    pub witness: Vec4,
}

/// Decide exactly whether closed balls have a common point.
///
/// The objective F(x) = max_i (|x−c_i|² − r_i²) is strictly convex; its
/// minimizer is a convex combination x = Σ λ_i c_i over some subset of
/// balls on which the excesses agree (stationarity), with every other
/// excess no larger. By Caratheodory the subset can be taken affinely
/// independent, so enumerating subsets and solving the rational linear
/// system for equal excesses finds the optimum exactly.
pub fn balls_common_point_certificate(balls: &[Sphere]) -> CommonPointCertificate {
    assert!(!balls.is_empty(), "need at least one ball");
    let k = balls.len();
    let excess = |x: &Vec4, b: &Sphere| -> Rat { dist_sq(x, &b.center) - &b.radius_sq };

    for size in 1..=k {
        'subset: for mask in 1u32..(1 << k) {
            if (mask.count_ones() as usize) != size {
                continue;
            }
            let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let base = &balls[idx[0]];
            let diffs: Vec<Vec4> = idx[1..]
                .iter()
                .map(|&i| vec4_sub(&balls[i].center, &base.center))
                .collect();
            // Solve 2 G μ = rhs, G_ab = d_a · d_b,
            // rhs_a = |d_a|² − r_a² + r_base²; singular G means affinely
            // dependent centers and some other subset covers the optimum.
            let n = diffs.len();
            let mut system: Vec<Vec<Rat>> = Vec::with_capacity(n);
            let mut rhs: Vec<Rat> = Vec::with_capacity(n);
            for a in 0..n {
                let row: Vec<Rat> = (0..n)
                    .map(|b| rat(2, 1) * dot4(&diffs[a], &diffs[b]))
                    .collect();
                system.push(row);
                rhs.push(norm_sq(&diffs[a]) - &balls[idx[a + 1]].radius_sq + &base.radius_sq);
            }
            let Some(mu) = solve_linear(system, rhs) else {
                continue 'subset;
            };
            let mut lambda_base = Rat::one();
            for m in &mu {
                lambda_base -= m;
                if m.is_negative() {
                    continue 'subset;
                }
            }
            if lambda_base.is_negative() {
                continue 'subset;
            }
            let mut x = base.center.clone();
            for (m, d) in mu.iter().zip(&diffs) {
                x = vec4_add(&x, &vec4_scale(m, d));
            }
            let val = excess(&x, base);
            debug_assert!(idx.iter().all(|&i| excess(&x, &balls[i]) == val));
            if (0..k)
                .filter(|i| mask & (1 << i) == 0)
                .any(|i| excess(&x, &balls[i]) > val)
            {
                continue 'subset;
            }
            return CommonPointCertificate {
                has_common_point: !val.is_positive(),
                min_excess: val,
                witness: x,
            };
        }
    }
    unreachable!("some affinely independent subset always certifies the optimum");
}

/// Boolean form of [`balls_common_point_certificate`].
pub fn balls_common_point(balls: &[Sphere]) -> bool {
    balls_common_point_certificate(balls).has_common_point
}

/// Exact Gaussian elimination; None when the system is singular.
fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    if n == 0 {
        return Some(Vec::new());
    }
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, col);
        b.swap(pivot_row, col);
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(
        (0..n)
            .map(|i| &b[i] / &a[i][i])
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_int, rat_to_f64, vec4_from_i64, vec4_zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sphere(center: [i64; 4], num: i64, den: i64) -> Sphere {
        Sphere::new(vec4_from_i64(center), rat(num, den)).unwrap()
    }

    fn sphere_halves(center2: [i64; 4], num: i64, den: i64) -> Sphere {
        // center given in doubled coordinates
        Sphere::new(center2.map(|x| rat(x, 2)), rat(num, den)).unwrap()
    }

    #[test]
    fn sphere_rejects_nonpositive_radius() {
        assert!(Sphere::new(vec4_zero(), rat_int(0)).is_err());
        assert!(Sphere::new(vec4_zero(), rat(-1, 6)).is_err());
    }

    #[test]
    fn unit_sphere_embedding() {
        let s = sphere([0, 0, 0, 0], 1, 1);
        let v = sphere_to_inversive(&s);
        let expected = [
            rat_int(0),
            rat_int(0),
            rat_int(0),
            rat_int(0),
            rat_int(-1),
            rat_int(0),
        ];
        assert_eq!(v.0, expected);
        assert_eq!(lorentz_product(&v, &v), rat_int(1));
    }

    #[test]
    fn small_sphere_embedding() {
        // substituting c = 0, r² = 1/6 into the embedding gives
        // u = −7/12 and v = +5/12; the self-product is r² = 1/6.
        let s = sphere([0, 0, 0, 0], 1, 6);
        let v = sphere_to_inversive(&s);
        assert_eq!(v.0[4], rat(-7, 12));
        assert_eq!(v.0[5], rat(5, 12));
        assert_eq!(lorentz_product(&v, &v), rat(1, 6));
    }

    #[test]
    fn point_embedding_is_null() {
        let p = point_to_inversive(&PointOrInfinity::finite(vec4_zero()));
        assert_eq!(p.0[4], rat(-1, 2));
        assert_eq!(p.0[5], rat(1, 2));
        assert_eq!(lorentz_product(&p, &p), rat_int(0));

        let inf = point_to_inversive(&PointOrInfinity::Infinity);
        assert_eq!(lorentz_product(&inf, &inf), rat_int(0));
        assert_eq!(inversive_to_point(&inf), PointOrInfinity::Infinity);
    }

    #[test]
    fn product_of_two_sphere_vectors() {
        // <σ1,σ2> = (r1² + r2² − d²)/2 = (1/6 + 1/6 − 1)/2 = −1/3
        let a = sphere([0, 0, 0, 0], 1, 6);
        let b = sphere([1, 0, 0, 0], 1, 6);
        let p = lorentz_product(&sphere_to_inversive(&a), &sphere_to_inversive(&b));
        assert_eq!(p, rat(-1, 3));
    }

    #[test]
    fn inside_test_sign() {
        // interior is the strictly positive side of <p̂,σ> = (r²−|p−c|²)/2
        let s = sphere([0, 0, 0, 0], 1, 1);
        let origin = point_to_inversive(&PointOrInfinity::finite(vec4_zero()));
        let sigma = sphere_to_inversive(&s);
        assert_eq!(lorentz_product(&origin, &sigma), rat(1, 2));
        assert!(s.strictly_contains(&PointOrInfinity::finite(vec4_zero())));
    }

    #[test]
    fn classify_vertex_center_pair() {
        // d² = 1/2, cos = (1/2 − 1/3)/(1/3) = 1/2, exterior angle π/3
        let vertex = sphere([0, 0, 0, 0], 1, 6);
        let center = sphere_halves([1, 1, 0, 0], 1, 6);
        let class = classify_pair(&vertex, &center).unwrap();
        let angle = class.angle().expect("intersecting");
        assert_eq!(angle.cos_num, rat(1, 6));
        assert_eq!(angle.cos_sq, rat(1, 4));
        assert_eq!(angle.coxeter_order, Some(3));
    }

    #[test]
    fn classify_midpoint_center_pair() {
        // d² = 1/4, numerator 1/4 − 1/12 − 1/6 = 0 → right angle
        let midpoint = sphere_halves([1, 0, 0, 0], 1, 12);
        let center = sphere_halves([1, 1, 0, 0], 1, 6);
        let class = classify_pair(&midpoint, &center).unwrap();
        let angle = class.angle().expect("intersecting");
        assert_eq!(angle.cos_num, rat_int(0));
        assert_eq!(angle.cos_sq, rat_int(0));
        assert_eq!(angle.coxeter_order, Some(2));
    }

    #[test]
    fn classify_midpoint_vertex_pair() {
        // exact oracle: d² = 1/4, numerator 1/4 − 1/12 − 1/6 = 0, so the
        // adjacent midpoint and vertex spheres meet at a right angle
        let midpoint = sphere_halves([1, 0, 0, 0], 1, 12);
        let vertex = sphere([0, 0, 0, 0], 1, 6);
        let class = classify_pair(&midpoint, &vertex).unwrap();
        let angle = class.angle().expect("intersecting");
        assert_eq!(angle.cos_num, rat_int(0));
        assert_eq!(angle.coxeter_order, Some(2));
    }

    #[test]
    fn classify_disjoint_vertex_pair() {
        // d² = 1 > (r1 + r2)² = 2/3
        let a = sphere([0, 0, 0, 0], 1, 6);
        let b = sphere([1, 0, 0, 0], 1, 6);
        assert_eq!(classify_pair(&a, &b).unwrap(), PairClass::Disjoint);
    }

    #[test]
    fn classify_tangent_and_nested() {
        let a = sphere([0, 0, 0, 0], 1, 1);
        let ext = sphere([3, 0, 0, 0], 4, 1); // d = 3 = 1 + 2
        assert_eq!(classify_pair(&a, &ext).unwrap(), PairClass::ExternallyTangent);
        let int = sphere([1, 0, 0, 0], 4, 1); // d = 1 = 2 − 1
        assert_eq!(classify_pair(&a, &int).unwrap(), PairClass::InternallyTangent);
        let nested = sphere([0, 0, 0, 0], 4, 1);
        assert_eq!(classify_pair(&a, &nested).unwrap(), PairClass::Nested);
        assert!(classify_pair(&a, &a).is_err());
    }

    #[test]
    fn classify_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s1 = random_sphere(&mut rng);
            let s2 = random_sphere(&mut rng);
            match (classify_pair(&s1, &s2), classify_pair(&s2, &s1)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                _ => panic!("asymmetric error"),
            }
        }
    }

    #[test]
    fn classify_agrees_with_float_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut intersecting = 0;
        for _ in 0..1000 {
            let s1 = random_sphere(&mut rng);
            let s2 = random_sphere(&mut rng);
            let Ok(class) = classify_pair(&s1, &s2) else {
                continue;
            };
            let c1 = s1.center().clone().map(|r| rat_to_f64(&r));
            let c2 = s2.center().clone().map(|r| rat_to_f64(&r));
            let d: f64 = (0..4).map(|i| (c1[i] - c2[i]).powi(2)).sum::<f64>().sqrt();
            let r1 = rat_to_f64(s1.radius_sq()).sqrt();
            let r2 = rat_to_f64(s2.radius_sq()).sqrt();
            let cos = (d * d - r1 * r1 - r2 * r2) / (2.0 * r1 * r2);
            // skip near-boundary cases where the float oracle is ambiguous
            if (cos.abs() - 1.0).abs() < 1e-9 {
                continue;
            }
            match &class {
                PairClass::Intersecting(angle) => {
                    intersecting += 1;
                    assert!(cos.abs() < 1.0);
                    let exact_cos = (angle.cos_sign() as f64)
                        * rat_to_f64(&angle.cos_sq).sqrt();
                    assert!(
                        (cos.acos() - exact_cos.acos()).abs() < 1e-9,
                        "angle mismatch: float {} vs exact {}",
                        cos.acos(),
                        exact_cos.acos()
                    );
                }
                PairClass::Disjoint => assert!(cos > 1.0),
                PairClass::Nested => assert!(cos < -1.0),
                PairClass::ExternallyTangent | PairClass::InternallyTangent => {}
            }
        }
        assert!(intersecting > 50, "oracle sample too thin: {intersecting}");
    }

    #[test]
    fn inside_predicate_agrees_with_direct_comparison() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..300 {
            let s = random_sphere(&mut rng);
            let p = random_point(&mut rng);
            let product = lorentz_product(
                &point_to_inversive(&PointOrInfinity::finite(p.clone())),
                &sphere_to_inversive(&s),
            );
            let direct = dist_sq(&p, s.center());
            assert_eq!(
                product.is_positive(),
                direct < *s.radius_sq(),
                "sign disagrees with direct comparison"
            );
            assert_eq!(product.is_zero(), direct == *s.radius_sq());
        }
    }

    #[test]
    fn reflection_is_involution_with_det_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let s = random_sphere(&mut rng);
            let r = reflection_matrix(&s);
            assert!(r.mul(&r).is_identity());
            assert!(r.is_lorentz());
            assert_eq!(r.determinant(), rat_int(-1));
        }
    }

    #[test]
    fn reflection_matches_classical_inversion() {
        let s = sphere([0, 0, 0, 0], 1, 6);
        let r = reflection_matrix(&s);
        let image = apply_to_point(&r, &PointOrInfinity::finite(vec4_from_i64([1, 0, 0, 0])));
        assert_eq!(
            image,
            PointOrInfinity::finite([rat(1, 6), rat_int(0), rat_int(0), rat_int(0)])
        );

        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let s = random_sphere(&mut rng);
            let m = reflection_matrix(&s);
            let p = PointOrInfinity::finite(random_point(&mut rng));
            assert_eq!(apply_to_point(&m, &p), s.invert_point(&p));
        }
    }

    #[test]
    fn unit_inversion_examples() {
        let r = reflection_matrix(&sphere([0, 0, 0, 0], 1, 1));
        let two = PointOrInfinity::finite(vec4_from_i64([2, 0, 0, 0]));
        let half = PointOrInfinity::finite([rat(1, 2), rat_int(0), rat_int(0), rat_int(0)]);
        assert_eq!(apply_to_point(&r, &two), half);
        assert_eq!(
            apply_to_point(&r, &PointOrInfinity::finite(vec4_zero())),
            PointOrInfinity::Infinity
        );
        assert_eq!(
            apply_to_point(&r, &PointOrInfinity::Infinity),
            PointOrInfinity::finite(vec4_zero())
        );
    }

    #[test]
    fn lorentz_matrices_preserve_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let gens: Vec<MoebiusMatrix> = (0..4)
            .map(|_| reflection_matrix(&random_sphere(&mut rng)))
            .collect();
        let mut m = MoebiusMatrix::identity();
        for _ in 0..6 {
            m = m.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        assert!(m.is_lorentz());
        let p = point_to_inversive(&PointOrInfinity::finite(random_point(&mut rng)));
        let image = m.apply(&p);
        assert_eq!(lorentz_product(&image, &image), rat_int(0));
    }

    #[test]
    fn pair_products_have_expected_orders() {
        // π/3 pair: vertex and center sphere of a unit square
        let vertex = sphere([0, 0, 0, 0], 1, 6);
        let center = sphere_halves([1, 1, 0, 0], 1, 6);
        let prod = reflection_matrix(&vertex).mul(&reflection_matrix(&center));
        assert!(!prod.is_identity());
        assert!(!prod.pow(2).is_identity());
        assert!(prod.pow(3).is_identity());

        // π/2 pair commutes
        let midpoint = sphere_halves([1, 0, 0, 0], 1, 12);
        let a = reflection_matrix(&midpoint);
        let b = reflection_matrix(&center);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert!(a.mul(&b).pow(2).is_identity());
    }

    #[test]
    fn common_point_single_and_pair() {
        let a = sphere([0, 0, 0, 0], 1, 6);
        assert!(balls_common_point(std::slice::from_ref(&a)));
        let b = sphere([1, 0, 0, 0], 1, 6);
        let cert = balls_common_point_certificate(&[a.clone(), b]);
        assert!(!cert.has_common_point);
        // min of max excess for the two vertex balls: attained at the
        // midpoint, excess = 1/4 − 1/6 = 1/12
        assert_eq!(cert.min_excess, rat(1, 12));

        let nested_outer = sphere([0, 0, 0, 0], 4, 1);
        assert!(balls_common_point(&[a, nested_outer]));
    }

    #[test]
    fn common_point_triple_near_square_corner() {
        let vertex = sphere([0, 0, 0, 0], 1, 6);
        let midpoint = sphere_halves([1, 0, 0, 0], 1, 12);
        let center = sphere_halves([1, 1, 0, 0], 1, 6);
        let balls = [vertex, midpoint, center];
        let cert = balls_common_point_certificate(&balls);
        assert!(cert.has_common_point, "excess {}", format_rat(&cert.min_excess));
        // dense-grid numeric cross-check near the square corner
        let mut best = f64::INFINITY;
        let n = 60;
        for i in 0..=n {
            for j in 0..=n {
                let x = i as f64 / n as f64;
                let y = j as f64 / n as f64;
                let excess = balls
                    .iter()
                    .map(|b| {
                        let c = b.center().clone().map(|r| rat_to_f64(&r));
                        (x - c[0]).powi(2) + (y - c[1]).powi(2) - rat_to_f64(b.radius_sq())
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                best = best.min(excess);
            }
        }
        assert!(best <= 1e-9, "numeric oracle found no common point: {best}");
        assert!((best - rat_to_f64(&cert.min_excess)).abs() < 1e-2);
    }

    #[test]
    fn common_point_matches_pair_classification() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let s1 = random_sphere(&mut rng);
            let s2 = random_sphere(&mut rng);
            let Ok(class) = classify_pair(&s1, &s2) else {
                continue;
            };
            assert_eq!(
                balls_common_point(&[s1, s2]),
                class.closed_balls_meet(),
                "pairwise common-point disagrees with classification"
            );
        }
    }

    fn random_sphere(rng: &mut ChaCha8Rng) -> Sphere {
        let center = std::array::from_fn(|_| rat(rng.gen_range(-8..=8), rng.gen_range(1..=4)));
        Sphere::new(center, rat(rng.gen_range(1..=24), rng.gen_range(1..=12))).unwrap()
    }

    fn random_point(rng: &mut ChaCha8Rng) -> Vec4 {
        std::array::from_fn(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=5)))
    }
}
