//! Quantum dimensions and fusion coefficients at level `k - g`.
//!
//! Fusion coefficients are computed as signed sums over the quantum Weyl
//! group `W_k = { psi_k o s o psi_k^-1 : s in W_aff }` with `psi_k(b) = k b - rho`.
//! On weights this is the shifted action of the affine Weyl group at level `k`:
//! reflections `x -> w(x + rho) - rho` and translations by `k * Gamma`.
//!
//! [`VerlindeOracle`] recomputes every coefficient from the modular S-matrix
//! so the two constructions can be compared.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{frac, q, q_to_f64, RootSystem, TorusVector, Weight, Q};
use crate::rep::{pair_with_root, weight_multiplicities, LevelAlphabet, WeightSystem};

/// `prod_{alpha > 0} sin(pi <lambda + rho, alpha> / k) / sin(pi <rho, alpha> / k)`.
pub fn quantum_dimension(alphabet: &LevelAlphabet, lambda: &Weight) -> Result<f64> {
    alphabet.require(lambda)?;
    Ok(quantum_dimension_unchecked(
        alphabet.root_system(),
        alphabet.k(),
        lambda,
    ))
}

pub(crate) fn quantum_dimension_unchecked(rs: &RootSystem, k: i64, lambda: &Weight) -> f64 {
    let rho = rs.rho_weight();
    let lr = lambda + &rho;
    let mut acc = 1.0;
    for a in rs.positive_roots() {
        let num = pair_with_root(rs, &lr, a) / q(k);
        let den = pair_with_root(rs, &rho, a) / q(k);
        acc *= (PI * q_to_f64(num)).sin() / (PI * q_to_f64(den)).sin();
    }
    acc
}

/// One generator of the quantum Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Shifted simple reflection `s_i`.
    Reflection(usize),
    /// Shifted affine reflection in the wall `<x + rho, theta> = k`.
    AffineReflection,
    /// Translation by `k` times the `j`-th simple coroot.
    Translation(usize),
}

/// The quantum Weyl group at level `k - g`, represented by its generators.
#[derive(Clone, Debug)]
pub struct QuantumWeylGroup {
    rs: Arc<RootSystem>,
    k: i64,
    theta: Weight,
    coroots: Vec<Weight>,
}

impl QuantumWeylGroup {
    pub fn new(alphabet: &LevelAlphabet) -> Result<Self> {
        let rs = alphabet.root_system_arc();
        let mut coroots = Vec::with_capacity(rs.rank());
        for a in rs.simple_roots() {
            let w = rs.weight_from_vector(&rs.coroot(a))?.ok_or_else(|| {
                Error::Oracle("coroot lattice is not contained in the weight lattice".into())
            })?;
            coroots.push(w);
        }
        Ok(Self {
            theta: rs.highest_root().as_weight(),
            rs,
            k: alphabet.k(),
            coroots,
        })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// `psi_k(b) = k b - rho`.
    pub fn psi(&self, b: &TorusVector) -> TorusVector {
        &b.scaled(q(self.k)) - self.rs.weyl_vector()
    }

    pub fn psi_inv(&self, x: &TorusVector) -> TorusVector {
        (x + self.rs.weyl_vector()).scaled(Q::new(1, self.k))
    }

    /// Level `<x, theta>` of a weight.
    pub fn level_of(&self, x: &Weight) -> i64 {
        x.0.iter().zip(self.rs.comarks()).map(|(a, c)| a * c).sum()
    }

    fn reflect_shifted(&self, g: &Generator, y: &Weight) -> Weight {
        match g {
            Generator::Reflection(i) => self.rs.reflect_weight(*i, y),
            Generator::AffineReflection => {
                let t = self.level_of(y) - self.k;
                Weight(y.0.iter().zip(&self.theta.0).map(|(a, b)| a - t * b).collect())
            }
            Generator::Translation(j) => {
                let c = &self.coroots[*j];
                Weight(y.0.iter().zip(&c.0).map(|(a, b)| a + self.k * b).collect())
            }
        }
    }

    /// Action of one generator on a weight.
    pub fn apply(&self, g: &Generator, x: &Weight) -> Weight {
        let rho = self.rs.rho_weight();
        &self.reflect_shifted(g, &(x + &rho)) - &rho
    }

    /// Action of a word, rightmost generator first.
    pub fn apply_word(&self, word: &[Generator], x: &Weight) -> Weight {
        word.iter().rev().fold(x.clone(), |acc, g| self.apply(g, &acc))
    }

    /// `sgn` of a generator: the determinant of its linear part.
    pub fn generator_sign(g: &Generator) -> i8 {
        match g {
            Generator::Translation(_) => 1,
            _ => -1,
        }
    }

    pub fn word_sign(word: &[Generator]) -> i8 {
        word.iter().map(Self::generator_sign).product()
    }

    /// Finds `tau` with `tau(x)` in the alphabet and returns `(tau(x), sgn(tau))`,
    /// or `None` when `x` is fixed by a reflection of `W_k`.
    pub fn reduce(&self, x: &Weight) -> Option<(Weight, i8)> {
        let rho = self.rs.rho_weight();
        let (y, s) = self.reduce_shifted(&(x + &rho))?;
        Some((&y - &rho, s))
    }

    /// Same as [`Self::reduce`] for a weight already shifted by `rho`.
    fn reduce_shifted(&self, x: &Weight) -> Option<(Weight, i8)> {
        let mut y = x.clone();
        let mut sign = 1i8;
        loop {
            if let Some(i) = y.0.iter().position(|&l| l < 0) {
                y = self.rs.reflect_weight(i, &y);
                sign = -sign;
                continue;
            }
            let lvl = self.level_of(&y);
            if lvl > self.k {
                y = self.reflect_shifted(&Generator::AffineReflection, &y);
                sign = -sign;
                continue;
            }
            if lvl == self.k || y.0.contains(&0) {
                return None;
            }
            return Some((y, sign));
        }
    }
}

/// Dense table of fusion coefficients over one level alphabet.
#[derive(Clone, Debug)]
pub struct FusionTable {
    alphabet: Arc<LevelAlphabet>,
    weight_systems: Vec<Arc<WeightSystem>>,
    /// `coeff[(l * n + m) * n + v] = N^l_{m v}`.
    coeff: Vec<u32>,
}

impl FusionTable {
    pub fn new(alphabet: Arc<LevelAlphabet>) -> Result<Self> {
        Self::with_workers(alphabet, 1)
    }

    /// Builds the table with rows for different `mu` computed on separate threads.
    pub fn with_workers(alphabet: Arc<LevelAlphabet>, workers: usize) -> Result<Self> {
        let qwg = QuantumWeylGroup::new(&alphabet)?;
        let rs = alphabet.root_system();
        let weight_systems: Vec<Arc<WeightSystem>> = alphabet
            .elements()
            .iter()
            .map(|w| weight_multiplicities(rs, w).map(Arc::new))
            .collect::<Result<_>>()?;
        let n = alphabet.len();
        let workers = workers.max(1).min(n.max(1));

        // rows[m] holds N^l_{m v} at index l * n + v
        let compute_row = |m: usize| -> Result<Vec<u32>> {
            let mut row = vec![0i64; n * n];
            let rho = rs.rho_weight();
            for (v, nu) in alphabet.elements().iter().enumerate() {
                let nu_rho = nu + &rho;
                for (beta, mult) in weight_systems[m].weights() {
                    let x = &nu_rho - beta;
                    if let Some((y, s)) = qwg.reduce_shifted(&x) {
                        let lam = &y - &rho;
                        let l = alphabet.index_of(&lam).ok_or_else(|| {
                            Error::Oracle(format!("reduced weight {lam} outside the alphabet"))
                        })?;
                        row[l * n + v] += s as i64 * mult as i64;
                    }
                }
            }
            row.into_iter()
                .map(|c| {
                    u32::try_from(c).map_err(|_| {
                        Error::Oracle(format!("fusion coefficient {c} is not a small nonnegative integer"))
                    })
                })
                .collect()
        };

        let mut rows: Vec<Option<Result<Vec<u32>>>> = (0..n).map(|_| None).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let compute_row = &compute_row;
                    scope.spawn(move || {
                        (w..n)
                            .step_by(workers)
                            .map(|m| (m, compute_row(m)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (m, r) in h.join().expect("fusion worker panicked") {
                    rows[m] = Some(r);
                }
            }
        });

        let mut coeff = vec![0u32; n * n * n];
        for (m, r) in rows.into_iter().enumerate() {
            let r = r.expect("every row computed")?;
            for l in 0..n {
                for v in 0..n {
                    coeff[(l * n + m) * n + v] = r[l * n + v];
                }
            }
        }
        Ok(Self {
            alphabet,
            weight_systems,
            coeff,
        })
    }

    pub fn alphabet(&self) -> &LevelAlphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> Arc<LevelAlphabet> {
        Arc::clone(&self.alphabet)
    }

    pub fn weight_system(&self, i: usize) -> &WeightSystem {
        &self.weight_systems[i]
    }

    /// `N^lambda_{mu nu}` by alphabet indices.
    pub fn get(&self, lambda: usize, mu: usize, nu: usize) -> u32 {
        let n = self.alphabet.len();
        self.coeff[(lambda * n + mu) * n + nu]
    }

    /// `N^lambda_{mu nu}` by weights.
    pub fn coefficient(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u32> {
        let l = self.alphabet.require(lambda)?;
        let m = self.alphabet.require(mu)?;
        let v = self.alphabet.require(nu)?;
        Ok(self.get(l, m, v))
    }

    /// Every triple as `(lambda, mu, nu, N)` in alphabet order.
    pub fn triples(&self) -> impl Iterator<Item = (&Weight, &Weight, &Weight, u32)> + '_ {
        let el = self.alphabet.elements();
        let n = el.len();
        (0..n * n * n).map(move |i| {
            let (l, m, v) = (i / (n * n), (i / n) % n, i % n);
            (&el[l], &el[m], &el[v], self.coeff[i])
        })
    }

    /// Plain-text export, one `lambda mu nu N` line per triple.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (l, m, v, c) in self.triples() {
            let _ = writeln!(s, "{l} {m} {v} {c}");
        }
        s
    }
}

/// Single coefficient `N^lambda_{mu nu}` without building a table.
pub fn fusion_coefficient(
    qwg: &QuantumWeylGroup,
    alphabet: &LevelAlphabet,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<u32> {
    alphabet.require(lambda)?;
    alphabet.require(mu)?;
    alphabet.require(nu)?;
    if qwg.k != alphabet.k() || qwg.rs.label() != alphabet.root_system().label() {
        return Err(Error::Mismatch("quantum Weyl group and alphabet differ".into()));
    }
    let ws = weight_multiplicities(&qwg.rs, mu)?;
    let target = lambda + &qwg.rs.rho_weight();
    let nu_rho = nu + &qwg.rs.rho_weight();
    let mut acc = 0i64;
    for (beta, m) in ws.weights() {
        if let Some((y, s)) = qwg.reduce_shifted(&(&nu_rho - beta)) {
            if y == target {
                acc += s as i64 * m as i64;
            }
        }
    }
    u32::try_from(acc).map_err(|_| Error::Oracle(format!("negative fusion coefficient {acc}")))
}

/// Verlinde formula with the S-matrix built from Weyl sums.
#[derive(Clone, Debug)]
pub struct VerlindeOracle {
    alphabet: Arc<LevelAlphabet>,
    /// Normalized S-matrix, row-major.
    s: Vec<Complex64>,
}

impl VerlindeOracle {
    pub const TOLERANCE: f64 = 1e-6;

    pub fn new(alphabet: Arc<LevelAlphabet>) -> Result<Self> {
        let rs = alphabet.root_system();
        let n = alphabet.len();
        let k = alphabet.k();
        let rho = rs.rho_weight();
        let shifted: Vec<Weight> = alphabet.elements().iter().map(|w| w + &rho).collect();
        let mut s = vec![Complex64::zero(); n * n];
        for (i, li) in shifted.iter().enumerate() {
            let orbit = rs.weyl_orbit_weight(li);
            for (j, sj) in shifted.iter().enumerate() {
                let mut acc = Complex64::zero();
                for (w, sign) in &orbit {
                    let phase = frac(-rs.weight_inner(w, sj) / q(k));
                    acc += Complex64::from_polar(*sign as f64, 2.0 * PI * q_to_f64(phase));
                }
                s[i * n + j] = acc;
            }
        }
        // Unnormalized S scaled by c changes the Verlinde ratio by |c|^2, so
        // fix |c| through unitarity of the vacuum row.
        let norm2: f64 = (0..n).map(|j| s[j].norm_sqr()).sum();
        let c = 1.0 / norm2.sqrt();
        for x in &mut s {
            *x *= c;
        }
        Ok(Self { alphabet, s })
    }

    pub fn s_matrix(&self, i: usize, j: usize) -> Complex64 {
        self.s[i * self.alphabet.len() + j]
    }

    /// `sum_sigma S_{l s} S_{m s} conj(S_{v s}) / S_{0 s}` before rounding.
    pub fn raw(&self, l: usize, m: usize, v: usize) -> Complex64 {
        (0..self.alphabet.len())
            .map(|sg| {
                self.s_matrix(l, sg) * self.s_matrix(m, sg) * self.s_matrix(v, sg).conj()
                    / self.s_matrix(0, sg)
            })
            .sum()
    }

    pub fn coefficient_by_index(&self, l: usize, m: usize, v: usize) -> Result<u32> {
        let x = self.raw(l, m, v);
        let r = x.re.round();
        let residue = (x - Complex64::new(r, 0.0)).norm();
        if residue > Self::TOLERANCE || r < 0.0 {
            return Err(Error::Oracle(format!(
                "Verlinde value {x} for ({l},{m},{v}) is not a nonnegative integer"
            )));
        }
        Ok(r as u32)
    }

    pub fn coefficient(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u32> {
        let l = self.alphabet.require(lambda)?;
        let m = self.alphabet.require(mu)?;
        let v = self.alphabet.require(nu)?;
        self.coefficient_by_index(l, m, v)
    }
}

/// One-shot Verlinde coefficient.
pub fn verlinde_oracle(
    alphabet: Arc<LevelAlphabet>,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<u32> {
    VerlindeOracle::new(alphabet)?.coefficient(lambda, mu, nu)
}
