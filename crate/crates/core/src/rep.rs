//! Irreducible representations: weight multiplicities, dimensions, characters,
//! and the alphabet of weights integrable at a given level.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::{frac, q, q_to_f64, Root, RootSystem, TorusVector, Weight, Q};

fn check_dominant(rs: &RootSystem, w: &Weight) -> Result<()> {
    if w.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: w.rank(),
        });
    }
    if !w.is_dominant() {
        return Err(Error::NotDominant {
            weight: w.to_string(),
        });
    }
    Ok(())
}

/// `<w, alpha>` for a weight in Dynkin labels and a positive root.
pub fn pair_with_root(rs: &RootSystem, w: &Weight, root: &Root) -> Q {
    root.simple_coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| rs.positive_roots()[j].norm2 * Q::new(c * w.0[j], 2))
        .sum()
}

/// Weyl dimension formula, evaluated exactly.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    check_dominant(rs, lambda)?;
    let lr = lambda + &rs.rho_weight();
    let rho = rs.rho_weight();
    let big = |x: Q| BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for a in rs.positive_roots() {
        acc *= big(pair_with_root(rs, &lr, a)) / big(pair_with_root(rs, &rho, a));
    }
    if !acc.is_integer() {
        return Err(Error::Oracle(format!("non-integral Weyl dimension for {lambda}")));
    }
    acc.to_integer()
        .to_u128()
        .ok_or_else(|| Error::Overflow(format!("dimension of {lambda} exceeds u128")))
}

/// All weights of one irreducible representation with multiplicities.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    highest: Weight,
    /// Every weight with positive multiplicity.
    mults: HashMap<Weight, u64>,
    /// The same table in sorted order, so floating sums are reproducible.
    list: Vec<(Weight, u64)>,
    dominant: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn highest_weight(&self) -> &Weight {
        &self.highest
    }

    pub fn multiplicity(&self, beta: &Weight) -> u64 {
        self.mults.get(beta).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.list.iter().map(|(w, m)| (w, *m))
    }

    /// Multiplicities of the dominant weights, sorted.
    pub fn dominant_multiplicities(&self) -> &BTreeMap<Weight, u64> {
        &self.dominant
    }

    /// Sum of all multiplicities.
    pub fn dimension(&self) -> u128 {
        self.mults.values().map(|&m| m as u128).sum()
    }

    /// Sorted list of `(weight, multiplicity)`.
    pub fn sorted(&self) -> Vec<(Weight, u64)> {
        self.list.clone()
    }
}

/// Freudenthal recursion over the dominant weights below `lambda`, extended to
/// full Weyl orbits.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<WeightSystem> {
    check_dominant(rs, lambda)?;
    let roots: Vec<Weight> = rs.positive_roots().iter().map(Root::as_weight).collect();
    let heights: Vec<i64> = rs.positive_roots().iter().map(Root::height).collect();

    // Dominant weights below lambda, found by subtracting positive roots while
    // staying dominant; keyed by depth (height of lambda - mu).
    let mut depth: HashMap<Weight, i64> = HashMap::new();
    depth.insert(lambda.clone(), 0);
    let mut stack = vec![lambda.clone()];
    while let Some(mu) = stack.pop() {
        let d = depth[&mu];
        for (r, h) in roots.iter().zip(&heights) {
            let nu = &mu - r;
            if nu.is_dominant() && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                stack.push(nu);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = depth.into_iter().map(|(w, d)| (d, w)).collect();
    order.sort();

    let lr = lambda + &rs.rho_weight();
    let norm_lr = rs.weight_inner(&lr, &lr);
    let mut dominant: BTreeMap<Weight, u64> = BTreeMap::new();
    dominant.insert(lambda.clone(), 1);
    for (_, mu) in order.iter().skip(1) {
        let mr = mu + &rs.rho_weight();
        let denom = norm_lr - rs.weight_inner(&mr, &mr);
        let mut num = Q::zero();
        for (r, root) in roots.iter().zip(rs.positive_roots()) {
            let mut x = mu + r;
            loop {
                let (dom, _) = rs.dominant_representative(&x);
                let Some(&m) = dominant.get(&dom) else { break };
                num += pair_with_root(rs, &x, root) * q(m as i64);
                x = &x + r;
            }
        }
        let m = q(2) * num / denom;
        if !m.is_integer() || m <= Q::zero() {
            return Err(Error::Oracle(format!(
                "Freudenthal produced multiplicity {m} at {mu} in V({lambda})"
            )));
        }
        dominant.insert(mu.clone(), m.to_integer() as u64);
    }

    let mut mults = HashMap::new();
    for (mu, &m) in &dominant {
        for (w, _) in rs.weyl_orbit_weight(mu) {
            mults.insert(w, m);
        }
    }
    let mut list: Vec<_> = mults.iter().map(|(w, &m)| (w.clone(), m)).collect();
    list.sort();
    Ok(WeightSystem {
        highest: lambda.clone(),
        mults,
        list,
        dominant,
    })
}

/// `sum_beta m(beta) exp(2 pi i beta(b))`, with phases reduced exactly mod 1.
pub fn character_eval(rs: &RootSystem, ws: &WeightSystem, b: &TorusVector) -> Result<Complex64> {
    let c: Vec<Q> = rs
        .fundamental_weights()
        .iter()
        .map(|w| rs.inner_product(w, b))
        .collect::<Result<_>>()?;
    let mut re = 0.0;
    let mut im = 0.0;
    for (beta, m) in ws.weights() {
        let phase: Q = beta.0.iter().zip(&c).map(|(&x, ci)| ci * x).sum();
        let t = 2.0 * PI * q_to_f64(frac(phase));
        re += m as f64 * t.cos();
        im += m as f64 * t.sin();
    }
    Ok(Complex64::new(re, im))
}

/// Floating-point version of [`character_eval`] on ambient coordinates.
pub fn character_eval_f64(rs: &RootSystem, ws: &WeightSystem, b: &[f64]) -> Complex64 {
    let c: Vec<f64> = rs
        .fundamental_weights()
        .iter()
        .map(|w| rs.inner_product_f64(&w.to_f64(), b))
        .collect();
    ws.weights()
        .map(|(beta, m)| {
            let phase: f64 = beta.0.iter().zip(&c).map(|(&x, ci)| ci * x as f64).sum();
            Complex64::from_polar(m as f64, 2.0 * PI * phase)
        })
        .sum()
}

/// Dominant weights with `<lambda, theta> <= k - g`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct LevelAlphabet {
    rs: Arc<RootSystem>,
    k: i64,
    elements: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl LevelAlphabet {
    pub fn new(rs: Arc<RootSystem>, k: i64) -> Result<Self> {
        let g = rs.dual_coxeter();
        if k <= g {
            return Err(Error::LevelBound { k, g });
        }
        let mut elements = Vec::new();
        let mut cur = vec![0i64; rs.rank()];
        fill(rs.comarks(), 0, k - g, &mut cur, &mut elements);
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(Self {
            rs,
            k,
            elements,
            index,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// The shifted level `k - g`.
    pub fn level(&self) -> i64 {
        self.k - self.rs.dual_coxeter()
    }

    pub fn elements(&self) -> &[Weight] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }

    /// Index of `w` or an [`Error::OutsideAlphabet`].
    pub fn require(&self, w: &Weight) -> Result<usize> {
        if w.rank() != self.rs.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rs.rank(),
                found: w.rank(),
            });
        }
        self.index_of(w).ok_or_else(|| Error::OutsideAlphabet {
            weight: w.to_string(),
            k: self.k,
        })
    }

    /// True when both alphabets describe the same type and level.
    pub fn same_as(&self, other: &LevelAlphabet) -> bool {
        self.k == other.k && self.rs.label() == other.rs.label()
    }
}

fn fill(comarks: &[i64], i: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if i == comarks.len() {
        out.push(Weight(cur.clone()));
        return;
    }
    let mut x = 0;
    while x * comarks[i] <= budget {
        cur[i] = x;
        fill(comarks, i + 1, budget - x * comarks[i], cur, out);
        x += 1;
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(l: &str) -> RootSystem {
        RootSystem::from_label(l).unwrap()
    }

    #[test]
    fn alphabet_examples() {
        let a1 = Arc::new(rs("A1"));
        let al = LevelAlphabet::new(a1.clone(), 4).unwrap();
        assert_eq!(al.elements(), &[Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]);
        let al3 = LevelAlphabet::new(a1.clone(), 3).unwrap();
        assert_eq!(al3.len(), 2);
        assert!(!al3.contains(&Weight(vec![2])));
        assert_eq!(
            LevelAlphabet::new(a1, 2).unwrap_err(),
            Error::LevelBound { k: 2, g: 2 }
        );
    }

    #[test]
    fn alphabet_is_exhaustive() {
        for l in ["A2", "B2", "G2", "C3"] {
            let r = Arc::new(rs(l));
            let k = r.dual_coxeter() + 4;
            let al = LevelAlphabet::new(r.clone(), k).unwrap();
            let theta = r.highest_root().vector.clone();
            // bounded box scan with the exact inner product
            let side = 6i64;
            let rank = r.rank() as u32;
            let mut count = 0;
            for code in 0..side.pow(rank) {
                let w = Weight((0..rank).map(|i| code / side.pow(i) % side).collect());
                let v = r.weight_vector(&w).unwrap();
                let inside = r.inner_product(&v, &theta).unwrap() <= q(k - r.dual_coxeter());
                assert_eq!(inside, al.contains(&w), "{l} {w}");
                count += inside as usize;
            }
            assert_eq!(count, al.len(), "{l}");
        }
    }

    #[test]
    fn multiplicity_examples() {
        let a1 = rs("A1");
        let ws = weight_multiplicities(&a1, &Weight(vec![2])).unwrap();
        assert_eq!(
            ws.sorted(),
            vec![(Weight(vec![-2]), 1), (Weight(vec![0]), 1), (Weight(vec![2]), 1)]
        );
        let a2 = rs("A2");
        let triv = weight_multiplicities(&a2, &Weight(vec![0, 0])).unwrap();
        assert_eq!(triv.sorted(), vec![(Weight(vec![0, 0]), 1)]);
        let adj = weight_multiplicities(&a2, &Weight(vec![1, 1])).unwrap();
        assert_eq!(adj.multiplicity(&Weight(vec![0, 0])), 2);
        for r in a2.positive_roots() {
            assert_eq!(adj.multiplicity(&r.as_weight()), 1);
            let neg = &Weight::zero(2) - &r.as_weight();
            assert_eq!(adj.multiplicity(&neg), 1);
        }
        assert_eq!(adj.dimension(), 8);
        assert!(matches!(
            weight_multiplicities(&a2, &Weight(vec![1, -1])),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(weyl_dimension(&rs("A1"), &Weight(vec![1])).unwrap(), 2);
        assert_eq!(weyl_dimension(&rs("A2"), &Weight(vec![0, 0])).unwrap(), 1);
        assert_eq!(weyl_dimension(&rs("A2"), &Weight(vec![1, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&rs("G2"), &Weight(vec![1, 0])).unwrap(), 7);
        assert_eq!(weyl_dimension(&rs("G2"), &Weight(vec![0, 1])).unwrap(), 14);
        assert_eq!(weyl_dimension(&rs("E8"), &Weight(vec![0, 0, 0, 0, 0, 0, 0, 1])).unwrap(), 248);
        assert_eq!(weyl_dimension(&rs("F4"), &Weight(vec![0, 0, 0, 1])).unwrap(), 26);
        assert_eq!(weyl_dimension(&rs("E6"), &Weight(vec![1, 0, 0, 0, 0, 0])).unwrap(), 27);
        assert_eq!(weyl_dimension(&rs("E7"), &Weight(vec![0, 0, 0, 0, 0, 0, 1])).unwrap(), 56);
    }

    #[test]
    fn adjoint_weight_system_matches_root_system() {
        for l in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(l);
            let ws = weight_multiplicities(&r, &r.highest_root().as_weight()).unwrap();
            assert_eq!(ws.dimension(), r.dimension() as u128, "{l}");
            assert_eq!(ws.multiplicity(&Weight::zero(r.rank())), r.rank() as u64, "{l}");
        }
    }

    #[test]
    fn character_examples() {
        let a1 = rs("A1");
        let fund = weight_multiplicities(&a1, &Weight(vec![1])).unwrap();
        let b = a1.torus_from_simple_root_values(&[Q::new(1, 2)]).unwrap();
        let v = character_eval(&a1, &fund, &b).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
        let zero = TorusVector::zeros(2);
        assert_eq!(character_eval(&a1, &fund, &zero).unwrap(), Complex64::new(2.0, 0.0));
        // a coroot lies in the lattice kernel of exp
        let coroot = a1.coroot(&a1.simple_roots()[0]);
        let v = character_eval(&a1, &fund, &coroot).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }
}
