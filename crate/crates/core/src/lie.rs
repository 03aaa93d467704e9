//! Root systems of the simple Lie algebras in exact rational arithmetic.
//!
//! Every type is realized in the standard orthogonal ambient space for its
//! family. The ambient dot product is rescaled by a rational factor so that
//! long roots (equivalently: short coroots) have squared length 2.
//!
//! Two coordinate systems are used side by side:
//!
//! * [`TorusVector`]: ambient coordinates, for elements `b` of the Cartan
//!   subalgebra (identified with its dual through the invariant form).
//! * [`Weight`]: integral weights in the fundamental-weight basis (Dynkin
//!   labels). All representation-theoretic code works here.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn q_to_f64(x: Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple type such as `A2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub const MAX_RANK: usize = 8;

    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let label = format!("{family:?}{rank}");
        if !ok {
            return Err(Error::InvalidType {
                label,
                reason: "no simple Lie algebra of this family has this rank".into(),
            });
        }
        if rank > Self::MAX_RANK {
            return Err(Error::InvalidType {
                label,
                reason: format!("rank exceeds the supported maximum {}", Self::MAX_RANK),
            });
        }
        Ok(Self { family, rank })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidType {
            label: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        let mut chars = s_trim.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad("expected a family letter A-G followed by the rank")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a family letter A-G followed by the rank"))?;
        Self::new(family, rank)
    }
}

/// An element of the Cartan subalgebra in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusVector(Vec<Q>);

impl TorusVector {
    pub fn new(coords: Vec<Q>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Q::zero(); dim])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: Q) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().copied().map(q_to_f64).collect()
    }
}

impl Add for &TorusVector {
    type Output = TorusVector;
    fn add(self, rhs: &TorusVector) -> TorusVector {
        assert_eq!(self.dim(), rhs.dim(), "torus vector dimensions differ");
        TorusVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TorusVector {
    type Output = TorusVector;
    fn sub(self, rhs: &TorusVector) -> TorusVector {
        assert_eq!(self.dim(), rhs.dim(), "torus vector dimensions differ");
        TorusVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TorusVector {
    type Output = TorusVector;
    fn neg(self) -> TorusVector {
        TorusVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Integral weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A positive root with its coordinates in every basis we use.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    /// Coefficients in the basis of simple roots (all non-negative).
    pub simple_coords: Vec<i64>,
    /// Dynkin labels `<alpha, coroot_i>`.
    pub labels: Vec<i64>,
    pub vector: TorusVector,
    pub norm2: Q,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn as_weight(&self) -> Weight {
        Weight(self.labels.clone())
    }
}

/// Full root data for one simple type. Immutable after construction.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    ambient_dim: usize,
    form_scale: Q,
    simple_roots: Vec<TorusVector>,
    /// `cartan[i][j] = <coroot_i, alpha_j>`.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    fundamental_weights: Vec<TorusVector>,
    weight_gram: Vec<Vec<Q>>,
    rho: TorusVector,
    theta: usize,
    comarks: Vec<i64>,
    dual_coxeter: i64,
}

impl RootSystem {
    pub fn new(label: TypeLabel) -> Result<Self> {
        let (ambient_dim, form_scale, simple) = ambient_realization(label);
        Self::from_simple_roots(label, ambient_dim, form_scale, simple)
    }

    /// Shorthand for `RootSystem::new(label.parse()?)`.
    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(label.parse()?)
    }

    fn from_simple_roots(
        label: TypeLabel,
        ambient_dim: usize,
        form_scale: Q,
        simple_roots: Vec<TorusVector>,
    ) -> Result<Self> {
        let r = simple_roots.len();
        let dot = |x: &TorusVector, y: &TorusVector| -> Q {
            form_scale * x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum::<Q>()
        };

        let mut cartan = vec![vec![0i64; r]; r];
        for i in 0..r {
            let ni = dot(&simple_roots[i], &simple_roots[i]);
            for j in 0..r {
                let a = q(2) * dot(&simple_roots[i], &simple_roots[j]) / ni;
                if !a.is_integer() {
                    return Err(Error::Oracle(format!("non-integral Cartan entry for {label}")));
                }
                cartan[i][j] = a.to_integer();
            }
        }

        // All roots in simple-root coordinates, by closure under simple reflections.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect();
        for e in &queue {
            seen.insert(e.clone());
        }
        while let Some(beta) = queue.pop() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                let mut img = beta.clone();
                img[i] -= pairing;
                if seen.insert(img.clone()) {
                    queue.push(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let positive_roots: Vec<Root> = positive
            .into_iter()
            .map(|c| {
                let mut v = TorusVector::zeros(ambient_dim);
                for (j, &cj) in c.iter().enumerate() {
                    v = &v + &simple_roots[j].scaled(q(cj));
                }
                let labels = (0..r)
                    .map(|i| (0..r).map(|j| c[j] * cartan[i][j]).sum())
                    .collect();
                let norm2 = dot(&v, &v);
                Root {
                    simple_coords: c,
                    labels,
                    vector: v,
                    norm2,
                }
            })
            .collect();

        // omega_i = sum_k C[i][k] alpha_k with C = (A^T)^{-1}.
        let at: Vec<Vec<Q>> = (0..r)
            .map(|k| (0..r).map(|j| q(cartan[j][k])).collect())
            .collect();
        let c = invert_rational(&at).ok_or_else(|| Error::Oracle("singular Cartan matrix".into()))?;
        let fundamental_weights: Vec<TorusVector> = (0..r)
            .map(|i| {
                let mut v = TorusVector::zeros(ambient_dim);
                for k in 0..r {
                    v = &v + &simple_roots[k].scaled(c[i][k]);
                }
                v
            })
            .collect();
        let weight_gram: Vec<Vec<Q>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| dot(&fundamental_weights[i], &fundamental_weights[j]))
                    .collect()
            })
            .collect();
        let rho = fundamental_weights
            .iter()
            .fold(TorusVector::zeros(ambient_dim), |acc, w| &acc + w);

        let theta = (0..positive_roots.len())
            .max_by_key(|&i| positive_roots[i].height())
            .expect("root system has positive roots");
        let theta_vec = positive_roots[theta].vector.clone();
        let comarks: Vec<i64> = fundamental_weights
            .iter()
            .map(|w| {
                let x = dot(w, &theta_vec);
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect();
        let g = Q::one() + dot(&theta_vec, &rho);
        if !g.is_integer() {
            return Err(Error::Oracle(format!("non-integral dual Coxeter number for {label}")));
        }

        Ok(Self {
            label,
            ambient_dim,
            form_scale,
            simple_roots,
            cartan,
            positive_roots,
            fundamental_weights,
            weight_gram,
            rho,
            theta,
            comarks,
            dual_coxeter: g.to_integer(),
        })
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The rational factor multiplying the ambient dot product.
    pub fn form_scale(&self) -> Q {
        self.form_scale
    }

    pub fn simple_roots(&self) -> &[TorusVector] {
        &self.simple_roots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[TorusVector] {
        &self.fundamental_weights
    }

    pub fn weyl_vector(&self) -> &TorusVector {
        &self.rho
    }

    pub fn rho_weight(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.theta]
    }

    /// `<omega_i, theta>`, so that `<lambda, theta> = sum_i lambda_i * comark_i`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    /// `dim g = rank + 2 |R+|`.
    pub fn dimension(&self) -> usize {
        self.rank() + 2 * self.positive_roots.len()
    }

    fn check_dim(&self, x: &TorusVector) -> Result<()> {
        if x.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        Ok(())
    }

    /// The normalized invariant form.
    pub fn inner_product(&self, x: &TorusVector, y: &TorusVector) -> Result<Q> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.dot_unchecked(x, y))
    }

    fn dot_unchecked(&self, x: &TorusVector, y: &TorusVector) -> Q {
        self.form_scale * x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum::<Q>()
    }

    /// Floating-point version of [`Self::inner_product`] on ambient coordinates.
    pub fn inner_product_f64(&self, x: &[f64], y: &[f64]) -> f64 {
        assert_eq!(x.len(), self.ambient_dim);
        assert_eq!(y.len(), self.ambient_dim);
        q_to_f64(self.form_scale) * x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn coroot(&self, alpha: &TorusVector) -> TorusVector {
        let n = self.dot_unchecked(alpha, alpha);
        alpha.scaled(q(2) / n)
    }

    /// `alpha(b)` for every positive root, in the order of [`Self::positive_roots`].
    pub fn root_values(&self, b: &TorusVector) -> Result<Vec<Q>> {
        self.check_dim(b)?;
        let simple: Vec<Q> = self
            .simple_roots
            .iter()
            .map(|a| self.dot_unchecked(a, b))
            .collect();
        Ok(self.root_values_from_simple(&simple))
    }

    fn root_values_from_simple(&self, simple: &[Q]) -> Vec<Q> {
        self.positive_roots
            .iter()
            .map(|r| {
                r.simple_coords
                    .iter()
                    .zip(simple)
                    .map(|(&c, v)| v * c)
                    .sum()
            })
            .collect()
    }

    pub fn root_values_f64(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.ambient_dim, "ambient dimension mismatch");
        let scale = q_to_f64(self.form_scale);
        self.positive_roots
            .iter()
            .map(|r| {
                scale
                    * r.vector
                        .0
                        .iter()
                        .zip(b)
                        .map(|(a, x)| q_to_f64(*a) * x)
                        .sum::<f64>()
            })
            .collect()
    }

    /// `b` is regular iff no positive root takes an integer value on it.
    pub fn is_regular(&self, b: &TorusVector) -> Result<bool> {
        Ok(self.root_values(b)?.iter().all(|v| !v.is_integer()))
    }

    /// The element `b` with prescribed simple-root values `alpha_i(b)`.
    pub fn torus_from_simple_root_values(&self, values: &[Q]) -> Result<TorusVector> {
        if values.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: values.len(),
            });
        }
        let mut v = TorusVector::zeros(self.ambient_dim);
        for (i, &x) in values.iter().enumerate() {
            let n = self.positive_roots[i].norm2;
            v = &v + &self.fundamental_weights[i].scaled(x * q(2) / n);
        }
        Ok(v)
    }

    /// Floating-point ambient coordinates of the element with the given simple-root values.
    pub fn torus_from_simple_root_values_f64(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.rank());
        let mut out = vec![0.0; self.ambient_dim];
        for (i, &x) in values.iter().enumerate() {
            let c = x * 2.0 / q_to_f64(self.positive_roots[i].norm2);
            for (o, w) in out.iter_mut().zip(&self.fundamental_weights[i].0) {
                *o += c * q_to_f64(*w);
            }
        }
        out
    }

    pub fn weight_vector(&self, w: &Weight) -> Result<TorusVector> {
        self.check_rank(w)?;
        Ok(w.0
            .iter()
            .zip(&self.fundamental_weights)
            .fold(TorusVector::zeros(self.ambient_dim), |acc, (&c, om)| {
                &acc + &om.scaled(q(c))
            }))
    }

    /// Dynkin labels `<x, coroot_i>` of an ambient vector.
    pub fn labels_of(&self, x: &TorusVector) -> Result<Vec<Q>> {
        self.check_dim(x)?;
        Ok(self
            .simple_roots
            .iter()
            .enumerate()
            .map(|(i, a)| q(2) * self.dot_unchecked(x, a) / self.positive_roots[i].norm2)
            .collect())
    }

    /// The weight represented by `x`, if `x` lies in the weight lattice.
    pub fn weight_from_vector(&self, x: &TorusVector) -> Result<Option<Weight>> {
        let labels = self.labels_of(x)?;
        if labels.iter().any(|l| !l.is_integer()) {
            return Ok(None);
        }
        let w = Weight(labels.iter().map(|l| l.to_integer()).collect());
        // Reject components orthogonal to the span of the roots.
        if self.weight_vector(&w)? != *x {
            return Ok(None);
        }
        Ok(Some(w))
    }

    pub fn weight_inner(&self, a: &Weight, b: &Weight) -> Q {
        let r = self.rank();
        let mut s = Q::zero();
        for i in 0..r {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += self.weight_gram[i][j] * (a.0[i] * b.0[j]);
            }
        }
        s
    }

    /// `s_i(lambda)` on Dynkin labels.
    pub fn reflect_weight(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        let ai = &self.positive_roots[i].labels;
        Weight(w.0.iter().zip(ai).map(|(x, a)| x - c * a).collect())
    }

    /// `s_i(x)` on ambient coordinates.
    pub fn reflect(&self, i: usize, x: &TorusVector) -> TorusVector {
        let a = &self.simple_roots[i];
        let c = q(2) * self.dot_unchecked(x, a) / self.positive_roots[i].norm2;
        x - &a.scaled(c)
    }

    /// Dominant Weyl conjugate of `w` together with the sign `det(u)` of the
    /// element `u` carrying `w` to it.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, i8) {
        let mut x = w.clone();
        let mut sign = 1i8;
        while let Some(i) = x.0.iter().position(|&l| l < 0) {
            x = self.reflect_weight(i, &x);
            sign = -sign;
        }
        (x, sign)
    }

    /// Weyl orbit of an integral weight, each element tagged with the sign of
    /// a group element producing it from `w`.
    pub fn weyl_orbit_weight(&self, w: &Weight) -> Vec<(Weight, i8)> {
        let (dom, s0) = self.dominant_representative(w);
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(dom.clone());
        let mut out = vec![(dom.clone(), s0)];
        let mut frontier = vec![dom];
        let mut sign = s0;
        while !frontier.is_empty() {
            sign = -sign;
            let mut next = Vec::new();
            for x in &frontier {
                for i in 0..self.rank() {
                    // Reflecting only along positive labels walks each coset
                    // representative exactly once, so the stabilizer never
                    // needs to be materialized.
                    if x.0[i] > 0 {
                        let y = self.reflect_weight(i, x);
                        if seen.insert(y.clone()) {
                            out.push((y.clone(), sign));
                            next.push(y);
                        }
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Weyl orbit of an ambient vector with signs; see [`Self::weyl_orbit_weight`].
    pub fn weyl_orbit(&self, x: &TorusVector) -> Result<Vec<(TorusVector, i8)>> {
        self.check_dim(x)?;
        let mut cur = x.clone();
        let mut s0 = 1i8;
        loop {
            let labels = self.labels_of(&cur)?;
            match labels.iter().position(|l| l.is_negative()) {
                Some(i) => {
                    cur = self.reflect(i, &cur);
                    s0 = -s0;
                }
                None => break,
            }
        }
        let mut seen: HashSet<TorusVector> = HashSet::new();
        seen.insert(cur.clone());
        let mut out = vec![(cur.clone(), s0)];
        let mut frontier = vec![cur];
        let mut sign = s0;
        while !frontier.is_empty() {
            sign = -sign;
            let mut next = Vec::new();
            for v in &frontier {
                let labels = self.labels_of(v)?;
                for (i, l) in labels.iter().enumerate() {
                    if l.is_positive() {
                        let y = self.reflect(i, v);
                        if seen.insert(y.clone()) {
                            out.push((y.clone(), sign));
                            next.push(y);
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// `|W| = rank! * prod(marks) * det(A)`.
    pub fn weyl_group_order(&self) -> u128 {
        let r = self.rank();
        let mut order: u128 = (1..=r as u128).product();
        for &m in &self.highest_root().simple_coords {
            order *= m as u128;
        }
        let a: Vec<Vec<Q>> = self
            .cartan
            .iter()
            .map(|row| row.iter().map(|&x| q(x)).collect())
            .collect();
        let det = determinant_rational(&a);
        order * det.to_integer() as u128
    }
}

/// Standard orthogonal realizations and the scale putting long roots at length 2.
fn ambient_realization(label: TypeLabel) -> (usize, Q, Vec<TorusVector>) {
    let n = label.rank;
    let unit = |dim: usize, i: usize| {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v[j] = -Q::one();
        TorusVector(v)
    };
    let half = Q::new(1, 2);
    match label.family {
        Family::A => (n + 1, Q::one(), (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        Family::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(TorusVector(unit(n, n - 1)));
            (n, Q::one(), s)
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 1] = q(2);
            s.push(TorusVector(last));
            (n, half, s)
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 2] = Q::one();
            last[n - 1] = Q::one();
            s.push(TorusVector(last));
            (n, Q::one(), s)
        }
        Family::E => {
            // Bourbaki simple roots of E8; E6 and E7 use the first 6 and 7.
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut a2 = vec![Q::zero(); 8];
            a2[0] = Q::one();
            a2[1] = Q::one();
            let mut s = vec![TorusVector(a1), TorusVector(a2), diff(8, 1, 0)];
            for i in 2..7 {
                s.push(diff(8, i, i - 1));
            }
            s.truncate(n);
            (8, Q::one(), s)
        }
        Family::F => {
            let s = vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                TorusVector(unit(4, 3)),
                TorusVector(vec![half, -half, -half, -half]),
            ];
            (4, Q::one(), s)
        }
        Family::G => {
            let s = vec![
                diff(3, 0, 1),
                TorusVector(vec![q(-2), Q::one(), Q::one()]),
            ];
            (3, Q::new(1, 3), s)
        }
    }
}

fn invert_rational(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn determinant_rational(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
    }
    det
}
