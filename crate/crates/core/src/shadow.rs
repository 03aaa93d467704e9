//! Circle diagrams on the sphere and the shadow state sum.
//!
//! A link whose projection consists of disjoint embedded circles is described
//! by its nesting forest. Face 0 is the root face (outside every top-level
//! circle); face `i + 1` is the region immediately inside circle `i`.
//!
//! Each circle carries a `positive_side` flag selecting the face `Y+` it runs
//! around positively. The gleam contribution of circle `i` is `+winding` on
//! `Y+` and `-winding` on the other adjacent face `Y-`, and its fusion factor
//! is `N^{phi(Y-)}_{color, phi(Y+)}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{quantum_dimension_unchecked, FusionTable};
use crate::lie::{frac, q, q_to_f64, RootSystem, TypeLabel, Weight};
use crate::rep::LevelAlphabet;
use crate::sum::ExactComplexSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inside,
    Outside,
}

impl Side {
    pub fn flipped(self) -> Self {
        match self {
            Side::Inside => Side::Outside,
            Side::Outside => Side::Inside,
        }
    }
}

/// Circle identifiers may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircleId {
    Int(i64),
    Str(String),
}

impl fmt::Display for CircleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleId::Int(i) => write!(f, "{i}"),
            CircleId::Str(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub id: CircleId,
    #[serde(default)]
    pub parent: Option<CircleId>,
    pub winding: i64,
    pub positive_side: Side,
    pub color: Vec<i64>,
}

/// The link file format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDescription {
    pub group: String,
    pub k: i64,
    #[serde(default)]
    pub circles: Vec<CircleSpec>,
}

impl LinkDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("link descriptions always serialize")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circle {
    pub id: String,
    pub parent: Option<usize>,
    pub winding: i64,
    pub positive_side: Side,
    pub color: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    /// Indices of the circles on the boundary of this face.
    pub boundary: Vec<usize>,
    pub chi: i64,
    pub gleam: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShadowDiagram {
    circles: Vec<Circle>,
    faces: Vec<Face>,
    /// Faces in breadth-first order of the region tree.
    order: Vec<usize>,
}

impl ShadowDiagram {
    /// Builds the diagram from circles whose `parent` indices must form a forest.
    pub fn new(circles: Vec<Circle>) -> Result<Self> {
        let n = circles.len();
        let mut ids = HashSet::new();
        for c in &circles {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::Schema(format!("duplicate circle id {:?}", c.id)));
            }
            if let Some(p) = c.parent {
                if p >= n {
                    return Err(Error::Schema(format!(
                        "circle {:?} has unknown parent index {p}",
                        c.id
                    )));
                }
            }
            if !c.color.is_dominant() {
                return Err(Error::NotDominant {
                    weight: c.color.to_string(),
                });
            }
        }
        if let Some(c) = find_cycle(&circles) {
            return Err(Error::Assumption(format!(
                "circle {:?} is contained in itself through its parent chain",
                circles[c].id
            )));
        }

        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, c) in circles.iter().enumerate() {
            children[c.parent.map_or(0, |p| p + 1)].push(i);
        }
        let mut faces: Vec<Face> = (0..=n)
            .map(|f| Face {
                id: f,
                boundary: Vec::new(),
                chi: if f == 0 { 2 } else { 1 } - children[f].len() as i64,
                gleam: 0,
            })
            .collect();
        for (i, c) in circles.iter().enumerate() {
            let (pos, neg) = Self::sides_of(c, i);
            faces[pos].gleam += c.winding;
            faces[neg].gleam -= c.winding;
            faces[i + 1].boundary.push(i);
            faces[c.parent.map_or(0, |p| p + 1)].boundary.push(i);
        }
        for f in &mut faces {
            f.boundary.sort_unstable();
        }

        let mut order = Vec::with_capacity(n + 1);
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            order.push(f);
            queue.extend(children[f].iter().map(|&c| c + 1));
        }
        Ok(Self {
            circles,
            faces,
            order,
        })
    }

    /// `(Y+, Y-)` face indices of circle `i`.
    fn sides_of(c: &Circle, i: usize) -> (usize, usize) {
        let inside = i + 1;
        let outside = c.parent.map_or(0, |p| p + 1);
        match c.positive_side {
            Side::Inside => (inside, outside),
            Side::Outside => (outside, inside),
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("the empty diagram is valid")
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_order(&self) -> &[usize] {
        &self.order
    }

    /// `(Y+, Y-)` of circle `i`.
    pub fn circle_faces(&self, i: usize) -> (usize, usize) {
        Self::sides_of(&self.circles[i], i)
    }

    pub fn face(&self, id: usize) -> Result<&Face> {
        self.faces.get(id).ok_or(Error::UnknownFace(id))
    }

    pub fn gleam_of_face(&self, id: usize) -> Result<i64> {
        Ok(self.face(id)?.gleam)
    }

    pub fn euler_characteristic(&self, id: usize) -> Result<i64> {
        Ok(self.face(id)?.chi)
    }

    /// Diagram with every positive side flipped and every winding negated.
    pub fn reversed(&self) -> Self {
        let circles = self
            .circles
            .iter()
            .map(|c| Circle {
                winding: -c.winding,
                positive_side: c.positive_side.flipped(),
                ..c.clone()
            })
            .collect();
        Self::new(circles).expect("reversal preserves validity")
    }
}

fn find_cycle(circles: &[Circle]) -> Option<usize> {
    // 0 = unvisited, 1 = on the current chain, 2 = known to reach a root
    let mut state = vec![0u8; circles.len()];
    for start in 0..circles.len() {
        let mut chain = Vec::new();
        let mut cur = Some(start);
        while let Some(c) = cur {
            match state[c] {
                2 => break,
                1 => return Some(c),
                _ => {
                    state[c] = 1;
                    chain.push(c);
                    cur = circles[c].parent;
                }
            }
        }
        for c in chain {
            state[c] = 2;
        }
    }
    None
}

/// Every schema, level, color and nesting violation in a link description.
pub fn validate(desc: &LinkDescription) -> Vec<Error> {
    let mut errors = Vec::new();
    let rs = match desc.group.parse::<TypeLabel>().and_then(RootSystem::new) {
        Ok(rs) => Some(rs),
        Err(e) => {
            errors.push(e);
            None
        }
    };
    let rank = rs.as_ref().map(RootSystem::rank);
    let alphabet = rs.map(|rs| {
        let g = rs.dual_coxeter();
        let al = LevelAlphabet::new(Arc::new(rs), desc.k);
        if al.is_err() {
            errors.push(Error::LevelBound { k: desc.k, g });
        }
        al.ok()
    });

    let mut index: HashMap<&CircleId, usize> = HashMap::new();
    for (i, c) in desc.circles.iter().enumerate() {
        if index.insert(&c.id, i).is_some() {
            errors.push(Error::Schema(format!("duplicate circle id {}", c.id)));
        }
    }
    let mut parents = Vec::with_capacity(desc.circles.len());
    for c in &desc.circles {
        let p = match &c.parent {
            None => None,
            Some(pid) if pid == &c.id => {
                errors.push(Error::Assumption(format!("circle {} is its own parent", c.id)));
                None
            }
            Some(pid) => match index.get(pid) {
                Some(&j) => Some(j),
                None => {
                    errors.push(Error::Schema(format!(
                        "circle {} refers to unknown parent {pid}",
                        c.id
                    )));
                    None
                }
            },
        };
        parents.push(p);
    }
    let probe: Vec<Circle> = desc
        .circles
        .iter()
        .zip(&parents)
        .map(|(c, &p)| Circle {
            id: c.id.to_string(),
            parent: p,
            winding: 0,
            positive_side: Side::Inside,
            color: Weight(Vec::new()),
        })
        .collect();
    let mut cyclic = HashSet::new();
    let mut remaining = probe;
    while let Some(c) = find_cycle(&remaining) {
        // Report each cycle once, then cut it to look for further cycles.
        let mut members = vec![c];
        let mut cur = remaining[c].parent;
        while let Some(x) = cur {
            if x == c {
                break;
            }
            members.push(x);
            cur = remaining[x].parent;
        }
        members.sort_unstable();
        let names: Vec<_> = members.iter().map(|&m| remaining[m].id.clone()).collect();
        if cyclic.insert(members.clone()) {
            errors.push(Error::Assumption(format!(
                "circles {} contain each other cyclically",
                names.join(", ")
            )));
        }
        remaining[c].parent = None;
    }

    for c in &desc.circles {
        let w = Weight(c.color.clone());
        if let Some(rank) = rank {
            if w.rank() != rank {
                errors.push(Error::DimensionMismatch {
                    expected: rank,
                    found: w.rank(),
                });
                continue;
            }
        }
        if !w.is_dominant() {
            errors.push(Error::NotDominant {
                weight: w.to_string(),
            });
            continue;
        }
        if let Some(Some(al)) = &alphabet {
            if !al.contains(&w) {
                errors.push(Error::OutsideAlphabet {
                    weight: w.to_string(),
                    k: desc.k,
                });
            }
        }
    }
    errors
}

/// A validated link: root system, alphabet and diagram.
#[derive(Clone, Debug)]
pub struct Link {
    pub alphabet: Arc<LevelAlphabet>,
    pub diagram: ShadowDiagram,
}

/// Validates a description and builds its diagram and alphabet. The first
/// violation found by [`validate`] is returned as the error.
pub fn build_link(desc: &LinkDescription) -> Result<Link> {
    if let Some(e) = validate(desc).into_iter().next() {
        return Err(e);
    }
    let rs = Arc::new(RootSystem::from_label(&desc.group)?);
    let alphabet = Arc::new(LevelAlphabet::new(rs, desc.k)?);
    let diagram = build_diagram(desc)?;
    Ok(Link { alphabet, diagram })
}

/// Builds the diagram of a description, checking only the nesting structure
/// and color dominance.
pub fn build_diagram(desc: &LinkDescription) -> Result<ShadowDiagram> {
    let mut index = HashMap::new();
    for (i, c) in desc.circles.iter().enumerate() {
        if index.insert(&c.id, i).is_some() {
            return Err(Error::Schema(format!("duplicate circle id {}", c.id)));
        }
    }
    let circles = desc
        .circles
        .iter()
        .map(|c| {
            let parent = match &c.parent {
                None => None,
                Some(p) if p == &c.id => {
                    return Err(Error::Assumption(format!("circle {} is its own parent", c.id)))
                }
                Some(p) => Some(*index.get(p).ok_or_else(|| {
                    Error::Schema(format!("circle {} refers to unknown parent {p}", c.id))
                })?),
            };
            Ok(Circle {
                id: c.id.to_string(),
                parent,
                winding: c.winding,
                positive_side: c.positive_side,
                color: Weight(c.color.clone()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ShadowDiagram::new(circles)
}

/// One retained coloring and its contribution.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    /// Alphabet index of the color of each face, by face id.
    pub coloring: Vec<usize>,
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateSumResult {
    pub value: Complex64,
    /// Colorings with a nonzero fusion product.
    pub colorings: u64,
    /// Size of the full coloring space.
    pub total: u128,
    pub terms: Option<Vec<Term>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateSumOptions {
    pub workers: usize,
    pub diagnostics: bool,
}

impl Default for StateSumOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            diagnostics: false,
        }
    }
}

/// Precomputed per-face factors and per-circle fusion slices.
struct Prepared<'a> {
    diagram: &'a ShadowDiagram,
    fusion: &'a FusionTable,
    n: usize,
    /// `face_factor[f][c]` for face `f` colored by alphabet element `c`.
    face_factor: Vec<Vec<Complex64>>,
    colors: Vec<usize>,
    /// Circles whose fusion factor is complete once the face at the same
    /// position of the enumeration order is colored.
    closing: Vec<Vec<usize>>,
}

impl<'a> Prepared<'a> {
    fn new(
        diagram: &'a ShadowDiagram,
        alphabet: &LevelAlphabet,
        fusion: &'a FusionTable,
    ) -> Result<Self> {
        if !fusion.alphabet().same_as(alphabet) {
            return Err(Error::Mismatch(format!(
                "fusion table is for {} at k = {}, alphabet is {} at k = {}",
                fusion.alphabet().root_system().label(),
                fusion.alphabet().k(),
                alphabet.root_system().label(),
                alphabet.k()
            )));
        }
        let rs = alphabet.root_system();
        let k = alphabet.k();
        let colors = diagram
            .circles()
            .iter()
            .map(|c| alphabet.require(&c.color))
            .collect::<Result<Vec<_>>>()?;

        let n = alphabet.len();
        let two_rho = &rs.rho_weight() + &rs.rho_weight();
        let dims: Vec<f64> = alphabet
            .elements()
            .iter()
            .map(|l| quantum_dimension_unchecked(rs, k, l))
            .collect();
        let casimir: Vec<_> = alphabet
            .elements()
            .iter()
            .map(|l| rs.weight_inner(l, &(l + &two_rho)) / q(k))
            .collect();
        let face_factor = diagram
            .faces()
            .iter()
            .map(|f| {
                (0..n)
                    .map(|c| {
                        // exp(pi i x) depends on x mod 2 only, which is exact here
                        let x = casimir[c] * q(f.gleam) / q(2);
                        let phase = PI * 2.0 * q_to_f64(frac(x));
                        Complex64::from_polar(dims[c].powi(f.chi as i32), phase)
                    })
                    .collect()
            })
            .collect();

        let mut pos = vec![0usize; diagram.faces().len()];
        for (p, &f) in diagram.face_order().iter().enumerate() {
            pos[f] = p;
        }
        let mut closing = vec![Vec::new(); diagram.faces().len()];
        for i in 0..diagram.circles().len() {
            let (a, b) = diagram.circle_faces(i);
            closing[pos[a].max(pos[b])].push(i);
        }
        Ok(Self {
            diagram,
            fusion,
            n,
            face_factor,
            colors,
            closing,
        })
    }

    fn fusion_factor(&self, i: usize, coloring: &[usize]) -> u32 {
        let (pos, neg) = self.diagram.circle_faces(i);
        self.fusion.get(coloring[neg], self.colors[i], coloring[pos])
    }

    /// The contribution of one full coloring with integer fusion product `fus`.
    /// Every enumeration strategy evaluates terms through this function so
    /// they agree bit for bit.
    fn term(&self, coloring: &[usize], fus: u64) -> Complex64 {
        let order = self.diagram.face_order();
        let mut acc = self.face_factor[order[0]][coloring[order[0]]];
        for &f in &order[1..] {
            acc *= self.face_factor[f][coloring[f]];
        }
        acc * fus as f64
    }

    fn total(&self) -> u128 {
        (self.n as u128).saturating_pow(self.diagram.faces().len() as u32)
    }
}

struct Partial {
    sum: ExactComplexSum,
    count: u64,
    terms: Vec<Term>,
}

fn dfs(
    prep: &Prepared,
    depth: usize,
    coloring: &mut Vec<usize>,
    fus: u64,
    diagnostics: bool,
    out: &mut Partial,
) {
    let order = prep.diagram.face_order();
    if depth == order.len() {
        let t = prep.term(coloring, fus);
        out.sum.add(t);
        out.count += 1;
        if diagnostics {
            out.terms.push(Term {
                coloring: coloring.clone(),
                value: t,
            });
        }
        return;
    }
    let f = order[depth];
    for c in 0..prep.n {
        coloring[f] = c;
        let mut next = fus;
        for &i in &prep.closing[depth] {
            next *= prep.fusion_factor(i, coloring) as u64;
            if next == 0 {
                break;
            }
        }
        if next != 0 {
            dfs(prep, depth + 1, coloring, next, diagnostics, out);
        }
    }
}

/// The shadow invariant by depth-first enumeration with pruning of colorings
/// whose fusion product vanishes. The value is independent of the number of
/// workers bit for bit.
pub fn state_sum(
    diagram: &ShadowDiagram,
    alphabet: &LevelAlphabet,
    fusion: &FusionTable,
    options: StateSumOptions,
) -> Result<StateSumResult> {
    let prep = Prepared::new(diagram, alphabet, fusion)?;
    let workers = options.workers.max(1).min(prep.n);
    let root = diagram.face_order()[0];
    let nfaces = diagram.faces().len();

    let partials: Vec<Partial> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let prep = &prep;
                scope.spawn(move || {
                    let mut out = Partial {
                        sum: ExactComplexSum::new(),
                        count: 0,
                        terms: Vec::new(),
                    };
                    let mut coloring = vec![0usize; nfaces];
                    for c in (w..prep.n).step_by(workers) {
                        coloring[root] = c;
                        let fus = prep.closing[0]
                            .iter()
                            .map(|&i| prep.fusion_factor(i, &coloring) as u64)
                            .product();
                        if fus != 0 {
                            dfs(prep, 1, &mut coloring, fus, options.diagnostics, &mut out);
                        }
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("state-sum worker panicked"))
            .collect()
    });

    let mut sum = ExactComplexSum::new();
    let mut count = 0;
    let mut terms = Vec::new();
    for p in partials {
        sum.merge(&p.sum);
        count += p.count;
        terms.extend(p.terms);
    }
    terms.sort_by(|a, b| a.coloring.cmp(&b.coloring));
    Ok(StateSumResult {
        value: sum.value(),
        colorings: count,
        total: prep.total(),
        terms: options.diagnostics.then_some(terms),
    })
}

/// Reference enumeration over the full product of alphabets, without pruning.
pub fn state_sum_naive(
    diagram: &ShadowDiagram,
    alphabet: &LevelAlphabet,
    fusion: &FusionTable,
) -> Result<StateSumResult> {
    let prep = Prepared::new(diagram, alphabet, fusion)?;
    let nfaces = diagram.faces().len();
    let total = prep.total();
    if total > 50_000_000 {
        return Err(Error::Overflow(format!(
            "naive enumeration of {total} colorings is too large"
        )));
    }
    let mut sum = ExactComplexSum::new();
    let mut count = 0;
    let mut coloring = vec![0usize; nfaces];
    for code in 0..total as u64 {
        let mut x = code;
        for c in coloring.iter_mut() {
            *c = (x % prep.n as u64) as usize;
            x /= prep.n as u64;
        }
        let fus: u64 = (0..diagram.circles().len())
            .map(|i| prep.fusion_factor(i, &coloring) as u64)
            .product();
        if fus != 0 {
            sum.add(prep.term(&coloring, fus));
            count += 1;
        }
    }
    Ok(StateSumResult {
        value: sum.value(),
        colorings: count,
        total,
        terms: None,
    })
}
