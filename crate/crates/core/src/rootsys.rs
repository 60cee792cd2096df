//! Root systems, Weyl groups, inversion sets and rank 2 subsystems.
//!
//! Roots are integer vectors in the basis of simple roots. Elements of the
//! Cartan subalgebra `h` ("coweights") are rational vectors holding their
//! values on the simple roots, so `β(v) = Σ β_i v_i` and the fundamental
//! coweight `t^i` is the `i`-th unit vector.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{field_pow, int, rat, Field, Rational, Scalar};
use crate::error::{Error, Result};

pub type Root = Vec<i64>;
pub type Coweight = Vec<Rational>;

/// Cartan type of a finite root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::B(n) | RootType::C(n) | RootType::D(n) => n,
            RootType::G2 => 2,
        }
    }

    /// Number of positive roots according to the classification.
    pub fn positive_root_count(self) -> usize {
        match self {
            RootType::A(n) => n * (n + 1) / 2,
            RootType::B(n) | RootType::C(n) => n * n,
            RootType::D(n) => n * (n - 1),
            RootType::G2 => 6,
        }
    }

    pub fn weyl_order(self) -> usize {
        let fact = |k: usize| (1..=k).product::<usize>();
        match self {
            RootType::A(n) => fact(n + 1),
            RootType::B(n) | RootType::C(n) => (1 << n) * fact(n),
            RootType::D(n) => (1 << (n - 1)) * fact(n),
            RootType::G2 => 12,
        }
    }

    fn supported(self) -> bool {
        matches!(
            self,
            RootType::A(1..=4) | RootType::B(2 | 3) | RootType::C(3) | RootType::D(4) | RootType::G2
        )
    }

    /// Gram matrix of the simple roots; long roots have squared length 2.
    fn gram(self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        let mut g = vec![vec![Rational::zero(); n]; n];
        let chain = |g: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
            g[i][j] = v.clone();
            g[j][i] = v;
        };
        match self {
            RootType::A(_) => {
                for i in 0..n {
                    g[i][i] = int(2);
                    if i + 1 < n {
                        chain(&mut g, i, i + 1, int(-1));
                    }
                }
            }
            RootType::B(_) => {
                for i in 0..n {
                    g[i][i] = int(2);
                    if i + 1 < n {
                        chain(&mut g, i, i + 1, int(-1));
                    }
                }
                g[n - 1][n - 1] = int(1);
            }
            RootType::C(_) => {
                for i in 0..n {
                    g[i][i] = int(1);
                    if i + 1 < n {
                        chain(&mut g, i, i + 1, rat(-1, 2));
                    }
                }
                g[n - 1][n - 1] = int(2);
                chain(&mut g, n - 2, n - 1, int(-1));
            }
            RootType::D(_) => {
                for i in 0..n {
                    g[i][i] = int(2);
                }
                for i in 0..n - 2 {
                    chain(&mut g, i, i + 1, int(-1));
                }
                chain(&mut g, n - 3, n - 1, int(-1));
            }
            RootType::G2 => {
                g[0][0] = int(2);
                g[1][1] = rat(2, 3);
                chain(&mut g, 0, 1, int(-1));
            }
        }
        g
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::B(n) => write!(f, "B{n}"),
            RootType::C(n) => write!(f, "C{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('_', "");
        let unsupported = || Error::UnsupportedType(s.to_string());
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(unsupported)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        let ty = match (letter, rank) {
            ('A', n) => RootType::A(n),
            ('B', n) => RootType::B(n),
            ('C', n) => RootType::C(n),
            ('D', n) => RootType::D(n),
            ('G', 2) => RootType::G2,
            _ => return Err(unsupported()),
        };
        if ty.supported() {
            Ok(ty)
        } else {
            Err(unsupported())
        }
    }
}

/// An element of the Weyl group with a reduced word and its integer action
/// on root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// `w = s_{word[0]} s_{word[1]} ⋯` (zero-based simple indices).
    pub word: Vec<usize>,
    /// Column `j` is `w(α_j)` in simple-root coordinates.
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, beta: &[i64]) -> Root {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
    }
}

/// A finite reduced crystallographic root system with its Weyl group.
#[derive(Clone, Debug)]
pub struct RootSystem {
    root_type: RootType,
    gram: Vec<Vec<Rational>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    root_index: HashMap<Root, usize>,
    weyl: Vec<WeylElement>,
    weyl_index: HashMap<Vec<Vec<i64>>, usize>,
    fundamental_weights: Vec<Vec<Rational>>,
}

pub fn build_root_system(label: &str) -> Result<RootSystem> {
    RootSystem::new(label.parse()?)
}

fn height(b: &[i64]) -> i64 {
    b.iter().sum()
}

impl RootSystem {
    pub fn new(root_type: RootType) -> Result<Self> {
        if !root_type.supported() {
            return Err(Error::UnsupportedType(root_type.to_string()));
        }
        let r = root_type.rank();
        let gram = root_type.gram();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let q = int(2) * &gram[i][j] / &gram[i][i];
                        assert!(q.is_integer(), "non-integral Cartan entry");
                        q.to_integer().try_into().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect();

        let simple: Vec<Root> = (0..r).map(|i| unit(r, i)).collect();
        let mut seen: HashSet<Root> = HashSet::new();
        let mut queue: VecDeque<Root> = simple.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            if !seen.insert(b.clone()) {
                continue;
            }
            for i in 0..r {
                let c: i64 = (0..r).map(|j| cartan[i][j] * b[j]).sum();
                let mut s = b.clone();
                s[i] -= c;
                if !seen.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        let mut positive: Vec<Root> = seen.into_iter().filter(|b| b.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let p = positive.len();
        let mut root_index = HashMap::new();
        for (k, b) in positive.iter().enumerate() {
            root_index.insert(b.clone(), k);
            root_index.insert(b.iter().map(|x| -x).collect(), p + k);
        }

        let fundamental_weights = {
            let inv = invert_rational(&gram);
            (0..r)
                .map(|i| {
                    let half = &gram[i][i] / int(2);
                    (0..r).map(|k| &inv[k][i] * &half).collect()
                })
                .collect()
        };

        let mut rs = Self {
            root_type,
            gram,
            cartan,
            positive,
            root_index,
            weyl: Vec::new(),
            weyl_index: HashMap::new(),
            fundamental_weights,
        };
        rs.materialize_weyl_group();
        Ok(rs)
    }

    fn materialize_weyl_group(&mut self) {
        let r = self.rank();
        let gens: Vec<Vec<Vec<i64>>> = (0..r).map(|i| self.simple_reflection_matrix(i)).collect();
        let id = WeylElement {
            word: vec![],
            matrix: (0..r).map(|i| unit(r, i)).collect(),
        };
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id.matrix.clone(), 0usize)]);
        let mut head = 0;
        while head < elems.len() {
            let w = elems[head].clone();
            head += 1;
            for (i, g) in gens.iter().enumerate() {
                let m = int_matmul(g, &w.matrix);
                if index.contains_key(&m) {
                    continue;
                }
                let mut word = vec![i];
                word.extend_from_slice(&w.word);
                index.insert(m.clone(), elems.len());
                elems.push(WeylElement { word, matrix: m });
            }
        }
        self.weyl = elems;
        self.weyl_index = index;
    }

    fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|k| {
                (0..r)
                    .map(|j| i64::from(k == j) - if k == i { self.cartan[i][j] } else { 0 })
                    .collect()
            })
            .collect()
    }

    pub fn root_type(&self) -> RootType {
        self.root_type
    }

    pub fn label(&self) -> String {
        self.root_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.root_type.rank()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `a_ij = ⟨α_i∨, α_j⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Root {
        unit(self.rank(), i)
    }

    /// Positive roots ordered by height, then by descending coordinates.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// All roots: the positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|b| neg(b)));
        out
    }

    pub fn is_root(&self, b: &[i64]) -> bool {
        self.root_index.contains_key(b)
    }

    pub fn index_of(&self, b: &[i64]) -> Option<usize> {
        self.root_index.get(b).copied()
    }

    /// Index of `±b` among the positive roots.
    pub fn positive_index(&self, b: &[i64]) -> Option<usize> {
        self.index_of(b).map(|k| k % self.positive.len())
    }

    pub fn is_positive(&self, b: &[i64]) -> bool {
        b.iter().all(|&x| x >= 0) && b.iter().any(|&x| x > 0)
    }

    /// `±1` according to whether `b ∈ ±Φ_+`.
    pub fn sign(&self, b: &[i64]) -> i64 {
        if self.is_positive(b) {
            1
        } else {
            -1
        }
    }

    pub fn is_simple(&self, b: &[i64]) -> bool {
        height(b) == 1 && self.is_positive(b)
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 && !self.gram[i][j].is_zero() {
                    acc += &self.gram[i][j] * int(x * y);
                }
            }
        }
        acc
    }

    pub fn length2(&self, b: &[i64]) -> Rational {
        self.inner(b, b)
    }

    pub fn is_long(&self, b: &[i64]) -> bool {
        self.length2(b) == int(2)
    }

    /// `⟨β∨, γ⟩ = 2(β, γ)/(β, β)`.
    pub fn coroot_pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let q = int(2) * self.inner(beta, gamma) / self.length2(beta);
        q.to_integer().try_into().expect("integral pairing")
    }

    /// `s_β(x) = x − ⟨β∨, x⟩ β`.
    pub fn reflect(&self, beta: &[i64], x: &[i64]) -> Root {
        let c = self.coroot_pairing(beta, x);
        x.iter().zip(beta).map(|(a, b)| a - c * b).collect()
    }

    /// The coroot `β∨` as an element of `h`.
    pub fn coroot(&self, beta: &[i64]) -> Coweight {
        (0..self.rank())
            .map(|j| int(self.coroot_pairing(beta, &self.simple_root(j))))
            .collect()
    }

    /// `t_β = ν^{-1}(β)`, so that `γ(t_β) = (γ, β)`.
    pub fn t_of(&self, beta: &[i64]) -> Coweight {
        (0..self.rank())
            .map(|j| self.inner(&self.simple_root(j), beta))
            .collect()
    }

    pub fn fundamental_coweight(&self, i: usize) -> Coweight {
        (0..self.rank()).map(|j| int(i64::from(i == j))).collect()
    }

    /// Fundamental weights `λ_i` in simple-root coordinates.
    pub fn fundamental_weights(&self) -> &[Vec<Rational>] {
        &self.fundamental_weights
    }

    /// `β(v)`.
    pub fn pair(&self, beta: &[i64], v: &[Rational]) -> Rational {
        beta.iter()
            .zip(v)
            .filter(|(b, _)| **b != 0)
            .map(|(b, x)| int(*b) * x)
            .sum()
    }

    /// Inner product on `h` transported from the Gram matrix.
    pub fn coweight_inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let inv = invert_rational(&self.gram);
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                acc += &u[i] * &inv[i][j] * &v[j];
            }
        }
        acc
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn identity(&self) -> &WeylElement {
        &self.weyl[0]
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElement {
        self.element_of_matrix(&self.simple_reflection_matrix(i))
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl.iter().max_by_key(|w| w.length()).expect("nonempty group")
    }

    fn element_of_matrix(&self, m: &[Vec<i64>]) -> &WeylElement {
        &self.weyl[self.weyl_index[m]]
    }

    /// The group element with the given (not necessarily reduced) word.
    pub fn element_from_word(&self, word: &[usize]) -> &WeylElement {
        let r = self.rank();
        let mut m: Vec<Vec<i64>> = (0..r).map(|i| unit(r, i)).collect();
        for &i in word {
            m = int_matmul(&m, &self.simple_reflection_matrix(i));
        }
        self.element_of_matrix(&m)
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> &WeylElement {
        self.element_of_matrix(&int_matmul(&a.matrix, &b.matrix))
    }

    pub fn inverse(&self, w: &WeylElement) -> &WeylElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.element_from_word(&rev)
    }

    /// Position of `w` in [`Self::weyl_group`].
    pub fn element_index(&self, w: &WeylElement) -> usize {
        self.weyl_index[&w.matrix]
    }

    /// The reflection `s_β`.
    pub fn reflection(&self, beta: &[i64]) -> &WeylElement {
        let r = self.rank();
        let cols: Vec<Root> = (0..r).map(|j| self.reflect(beta, &self.simple_root(j))).collect();
        let m: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect();
        self.element_of_matrix(&m)
    }

    /// Action on `h`: `α_j(w v) = (w^{-1} α_j)(v)`.
    pub fn act_coweight(&self, w: &WeylElement, v: &[Rational]) -> Coweight {
        let winv = self.inverse(w);
        (0..self.rank())
            .map(|j| self.pair(&winv.apply(&self.simple_root(j)), v))
            .collect()
    }

    /// `N(w) = {β ∈ Φ_+ | wβ ∈ Φ_-}` in root order.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|b| !self.is_positive(&w.apply(b)))
            .cloned()
            .collect()
    }

    /// Elements `w` with `w^{-1} α` simple.
    pub fn simple_lifts(&self, alpha: &[i64]) -> Vec<&WeylElement> {
        self.weyl
            .iter()
            .filter(|w| self.is_simple(&self.inverse(w).apply(alpha)))
            .collect()
    }

    /// The lifts of minimal length.
    pub fn minimal_simple_lifts(&self, alpha: &[i64]) -> Vec<&WeylElement> {
        let all = self.simple_lifts(alpha);
        let min = all.iter().map(|w| w.length()).min().unwrap_or(0);
        all.into_iter().filter(|w| w.length() == min).collect()
    }

    /// Serialisable summary: type, Cartan matrix and positive roots.
    pub fn describe(&self) -> RootSystemSummary {
        RootSystemSummary {
            root_type: self.label(),
            cartan_matrix: self.cartan.clone(),
            positive_roots: self.positive.clone(),
            weyl_order: self.weyl.len(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RootSystemSummary {
    pub root_type: String,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_roots: Vec<Root>,
    pub weyl_order: usize,
}

fn unit(r: usize, i: usize) -> Root {
    (0..r).map(|j| i64::from(i == j)).collect()
}

pub(crate) fn neg(b: &[i64]) -> Root {
    b.iter().map(|x| -x).collect()
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn invert_rational(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mat = crate::algebra::Matrix::from_rows(m.to_vec()).expect("square");
    mat.inverse().expect("nondegenerate form").rows()
}

/// Isomorphism type of a rank 2 root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RankTwoType {
    #[serde(rename = "A1xA1")]
    A1xA1,
    A2,
    B2,
    G2,
}

impl fmt::Display for RankTwoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RankTwoType::A1xA1 => "A1xA1",
            RankTwoType::A2 => "A2",
            RankTwoType::B2 => "B2",
            RankTwoType::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// A rank 2 root subsystem `Ψ`, i.e. `⟨Ψ⟩_Z ∩ Φ = Ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoSubsystem {
    /// All roots of `Ψ`, positive ones first in root order.
    pub roots: Vec<Root>,
    /// `Ψ_+ = Ψ ∩ Φ_+` in root order.
    pub positive: Vec<Root>,
    /// The two simple roots of `Ψ_+`.
    pub simple: [Root; 2],
    pub kind: RankTwoType,
    /// `⟨Ψ⟩_R ∩ Φ = Ψ`.
    pub complete: bool,
}

/// The finite group `⟨Ψ⟩̄_Z / ⟨Ψ⟩_Z` and its faithful characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentGroup {
    pub order: i64,
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<i64>,
    /// Exponents `j` of the characters `g ↦ e^{2πij/order}` with trivial
    /// kernel; empty unless the group is cyclic.
    pub faithful_characters: Vec<i64>,
}

impl RankTwoSubsystem {
    pub fn contains(&self, b: &[i64]) -> bool {
        self.roots.iter().any(|x| x == b)
    }

    pub fn is_simple(&self, b: &[i64]) -> bool {
        self.simple.iter().any(|x| x == b)
    }

    /// Elements of `W(Ψ)` as pairs (word in the simple reflections of `Ψ`,
    /// element of `W`).
    pub fn weyl_group<'a>(&self, rs: &'a RootSystem) -> Vec<(Vec<usize>, &'a WeylElement)> {
        let gens: Vec<&WeylElement> = self
            .simple
            .iter()
            .map(|b| {
                let img: Vec<Vec<i64>> = (0..rs.rank())
                    .map(|j| rs.reflect(b, &rs.simple_root(j)))
                    .collect();
                let m: Vec<Vec<i64>> = (0..rs.rank())
                    .map(|i| img.iter().map(|col| col[i]).collect())
                    .collect();
                rs.element_of_matrix(&m)
            })
            .collect();
        let mut out: Vec<(Vec<usize>, &WeylElement)> = vec![(vec![], rs.identity())];
        let mut seen: HashSet<&Vec<Vec<i64>>> = HashSet::from([&rs.identity().matrix]);
        let mut head = 0;
        while head < out.len() {
            let (word, w) = out[head].clone();
            head += 1;
            for (i, g) in gens.iter().enumerate() {
                let x = rs.compose(g, w);
                if seen.insert(&x.matrix) {
                    let mut wd = vec![i];
                    wd.extend_from_slice(&word);
                    out.push((wd, x));
                }
            }
        }
        out
    }

    /// `N_Ψ(w) = {β ∈ Ψ_+ | wβ ∈ −Ψ_+}`.
    pub fn inversion_set(&self, rs: &RootSystem, w: &WeylElement) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|b| !rs.is_positive(&w.apply(b)))
            .cloned()
            .collect()
    }

    pub fn component_group(&self) -> ComponentGroup {
        let (a, b) = (&self.simple[0], &self.simple[1]);
        let entries_gcd = a.iter().chain(b.iter()).fold(0i64, |g, &x| g.gcd(&x));
        let mut minors_gcd = 0i64;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                minors_gcd = minors_gcd.gcd(&(a[i] * b[j] - a[j] * b[i]));
            }
        }
        let d1 = entries_gcd;
        let d2 = minors_gcd / d1;
        let invariant_factors: Vec<i64> = [d1, d2].into_iter().filter(|&d| d > 1).collect();
        let order = d1 * d2;
        let faithful_characters = if d1 == 1 {
            (0..order.max(1)).filter(|j| j.gcd(&order) == 1).collect()
        } else {
            vec![]
        };
        ComponentGroup {
            order,
            invariant_factors,
            faithful_characters,
        }
    }
}

/// Solves `δ = xβ + yγ`; `None` when `δ` is outside the real span.
fn span_coefficients(beta: &[i64], gamma: &[i64], delta: &[i64]) -> Option<(Rational, Rational)> {
    let r = beta.len();
    let (i, j) = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .find(|&(i, j)| beta[i] * gamma[j] - beta[j] * gamma[i] != 0)?;
    let det = int(beta[i] * gamma[j] - beta[j] * gamma[i]);
    let x = int(delta[i] * gamma[j] - delta[j] * gamma[i]) / &det;
    let y = int(beta[i] * delta[j] - beta[j] * delta[i]) / &det;
    let ok = (0..r).all(|k| &x * int(beta[k]) + &y * int(gamma[k]) == int(delta[k]));
    ok.then_some((x, y))
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// All rank 2 root subsystems, each generated as `(Zβ + Zγ) ∩ Φ` by a pair of
/// non-proportional roots.
pub fn enumerate_rank2_subsystems(rs: &RootSystem) -> Result<Vec<RankTwoSubsystem>> {
    if rs.rank() < 2 {
        return Err(Error::Precondition(format!(
            "rank 2 subsystems need rank ≥ 2, {} has rank {}",
            rs.label(),
            rs.rank()
        )));
    }
    let roots = rs.roots();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for (bi, beta) in rs.positive_roots().iter().enumerate() {
        for gamma in &rs.positive_roots()[bi + 1..] {
            if proportional(beta, gamma) {
                continue;
            }
            let mut members = Vec::new();
            let mut complete = true;
            for (k, d) in roots.iter().enumerate() {
                match span_coefficients(beta, gamma, d) {
                    Some((x, y)) if x.is_integer() && y.is_integer() => members.push(k),
                    Some(_) => complete = false,
                    None => {}
                }
            }
            if !seen.insert(members.clone()) {
                continue;
            }
            out.push(make_subsystem(rs, &roots, &members, complete));
        }
    }
    Ok(out)
}

fn make_subsystem(rs: &RootSystem, roots: &[Root], members: &[usize], complete: bool) -> RankTwoSubsystem {
    let all: Vec<Root> = members.iter().map(|&k| roots[k].clone()).collect();
    let positive: Vec<Root> = all.iter().filter(|b| rs.is_positive(b)).cloned().collect();
    let decomposable = |b: &Root| {
        positive.iter().any(|x| {
            let d: Root = b.iter().zip(x).map(|(p, q)| p - q).collect();
            positive.contains(&d)
        })
    };
    let simple: Vec<Root> = positive.iter().filter(|b| !decomposable(b)).cloned().collect();
    assert_eq!(simple.len(), 2, "rank 2 subsystem must have two simple roots");
    let kind = match positive.len() {
        2 => RankTwoType::A1xA1,
        3 => RankTwoType::A2,
        4 => RankTwoType::B2,
        6 => RankTwoType::G2,
        k => unreachable!("rank 2 system with {k} positive roots"),
    };
    RankTwoSubsystem {
        roots: all,
        positive,
        simple: [simple[0].clone(), simple[1].clone()],
        kind,
        complete,
    }
}

/// One block `N(w^{-1}) ∩ Ψ` of the inversion-set partition.
#[derive(Clone, Debug)]
pub struct InversionPart {
    pub subsystem: RankTwoSubsystem,
    pub part: Vec<Root>,
    /// Words (in the simple reflections of `Ψ`) of all `w_Ψ ∈ W(Ψ)` with
    /// `N_Ψ(w_Ψ^{-1}) = part`.
    pub w_psi: Vec<Vec<usize>>,
}

/// The decomposition of `N(w^{-1})` along `R_2(α)`.
#[derive(Clone, Debug)]
pub struct InversionDecomposition {
    pub alpha: Root,
    pub w_word: Vec<usize>,
    pub inversion_set: Vec<Root>,
    pub parts: Vec<InversionPart>,
    /// Elements of `N(w^{-1})` lying in no `Ψ ∈ R_2(α)`.
    pub uncovered: Vec<Root>,
}

impl InversionDecomposition {
    /// Every part is nonempty, the parts partition `N(w^{-1})`, and each
    /// part is the inversion set of a unique `w_Ψ^{-1}`.
    pub fn holds(&self) -> bool {
        let covered: usize = self.parts.iter().map(|p| p.part.len()).sum();
        self.uncovered.is_empty()
            && covered == self.inversion_set.len()
            && self.parts.iter().all(|p| !p.part.is_empty() && p.w_psi.len() == 1)
    }
}

/// Complete rank 2 subsystems containing `α` as a non-simple root.
pub fn r2_of<'a>(subsystems: &'a [RankTwoSubsystem], alpha: &[i64]) -> Vec<&'a RankTwoSubsystem> {
    subsystems
        .iter()
        .filter(|s| s.complete && s.contains(alpha) && !s.is_simple(alpha))
        .collect()
}

pub fn decompose_inversion_set(
    rs: &RootSystem,
    subsystems: &[RankTwoSubsystem],
    alpha: &[i64],
    w: &WeylElement,
) -> Result<InversionDecomposition> {
    let winv = rs.inverse(w);
    if !rs.is_positive(alpha) || !rs.is_root(alpha) || !rs.is_simple(&winv.apply(alpha)) {
        return Err(Error::Precondition(format!(
            "w^-1 α is not a simple root for α = {alpha:?}, w = s{:?}",
            w.word
        )));
    }
    let n_inv = rs.inversion_set(winv);
    let mut parts = Vec::new();
    for psi in r2_of(subsystems, alpha) {
        let part: Vec<Root> = n_inv.iter().filter(|b| psi.contains(b)).cloned().collect();
        let w_psi = psi
            .weyl_group(rs)
            .into_iter()
            .filter(|(_, x)| psi.inversion_set(rs, rs.inverse(x)) == part)
            .map(|(word, _)| word)
            .collect();
        parts.push(InversionPart {
            subsystem: psi.clone(),
            part,
            w_psi,
        });
    }
    let uncovered = n_inv
        .iter()
        .filter(|b| !parts.iter().any(|p| p.part.contains(b)))
        .cloned()
        .collect();
    Ok(InversionDecomposition {
        alpha: alpha.to_vec(),
        w_word: w.word.clone(),
        inversion_set: n_inv,
        parts,
        uncovered,
    })
}

/// `η_a∧η_b − η_a∧η_{a+b} − η_{a+b}∧η_b − η_{a,b}` evaluated on the pair of
/// directions `(u, v)`.
///
/// The point is given by `x_i = e^{α_i}` and the directions by their values
/// `α_i(u)`, `α_i(v)`; weights are integer combinations of simple roots.
pub fn eta_identity_residual<F: Field>(a: &[i64], b: &[i64], x: &[F], u: &[F], v: &[F]) -> Result<F> {
    let exp = |w: &[i64]| -> Result<F> {
        let mut acc = F::one();
        for (xi, &k) in x.iter().zip(w) {
            let p = field_pow(xi, k)
                .ok_or_else(|| Error::SingularPoint("zero torus coordinate".into()))?;
            acc = acc.mul(&p);
        }
        Ok(acc)
    };
    let lin = |w: &[i64], d: &[F]| -> F {
        let mut acc = F::zero();
        for (di, &k) in d.iter().zip(w) {
            acc.add_assign(&di.mul(&F::from_rational(&int(k))));
        }
        acc
    };
    let ab: Root = a.iter().zip(b).map(|(p, q)| p + q).collect();
    let denom = |w: &[i64], name: &str| -> Result<F> {
        let d = exp(w)?.sub(&F::one());
        if near_zero(&d) {
            return Err(Error::SingularPoint(format!("e^{name} = 1")));
        }
        Ok(d)
    };
    let (da, db, dab) = (denom(a, "a")?, denom(b, "b")?, denom(&ab, "(a+b)")?);
    let wedge = lin(a, u).mul(&lin(b, v)).sub(&lin(a, v).mul(&lin(b, u)));
    let inv = |z: &F| z.inv().expect("checked nonzero");
    let total = inv(&da.mul(&db))
        .sub(&inv(&da.mul(&dab)))
        .sub(&inv(&dab.mul(&db)))
        .sub(&inv(&dab));
    Ok(wedge.mul(&total))
}

/// Exact-mode scalars reject only exact zero; floating ones use `1e-8`.
pub fn near_zero<F: Scalar>(x: &F) -> bool {
    if F::EXACT {
        x.is_zero()
    } else {
        x.magnitude() < 1e-8
    }
}

/// `Σ_{α∈Φ_+∩wΦ_-} α(v) t_α` as `(α, α(v))` pairs.
pub fn chamber_shift(rs: &RootSystem, w: &WeylElement, v: &[Rational]) -> Vec<(Root, Rational)> {
    rs.inversion_set(rs.inverse(w))
        .into_iter()
        .map(|b| {
            let c = rs.pair(&b, v);
            (b, c)
        })
        .collect()
}

/// `η_{a,b} − η_{a+b}∧db` on `(u, v)`; zero by the specialisation identity.
pub fn eta_specialization_residual<F: Field>(a: &[i64], b: &[i64], x: &[F], u: &[F], v: &[F]) -> Result<F> {
    let ab: Root = a.iter().zip(b).map(|(p, q)| p + q).collect();
    let mut e = F::one();
    for (xi, &k) in x.iter().zip(&ab) {
        e = e.mul(&field_pow(xi, k).ok_or_else(|| Error::SingularPoint("zero coordinate".into()))?);
    }
    let d = e.sub(&F::one());
    if near_zero(&d) {
        return Err(Error::SingularPoint("e^(a+b) = 1".into()));
    }
    let lin = |w: &[i64], dir: &[F]| {
        let mut acc = F::zero();
        for (di, &k) in dir.iter().zip(w) {
            acc.add_assign(&di.mul(&F::from_rational(&int(k))));
        }
        acc
    };
    let dadb = lin(a, u).mul(&lin(b, v)).sub(&lin(a, v).mul(&lin(b, u)));
    let dabdb = lin(&ab, u).mul(&lin(b, v)).sub(&lin(&ab, v).mul(&lin(b, u)));
    let dinv = d.inv().expect("checked nonzero");
    Ok(dadb.mul(&dinv).sub(&dabdb.mul(&dinv)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_counts() {
        for label in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"] {
            let rs = build_root_system(label).unwrap();
            let t = rs.root_type();
            assert_eq!(rs.positive_roots().len(), t.positive_root_count(), "{label}");
            assert_eq!(rs.weyl_group().len(), t.weyl_order(), "{label}");
        }
        assert!(matches!(build_root_system("E6"), Err(Error::UnsupportedType(_))));
        assert!(matches!(build_root_system("A7"), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn g2_positive_roots() {
        let rs = build_root_system("G2").unwrap();
        let expect: Vec<Root> = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ];
        let mut got = rs.positive_roots().to_vec();
        got.sort();
        let mut e = expect.clone();
        e.sort();
        assert_eq!(got, e);
        assert!(rs.is_long(&[1, 0]) && rs.is_long(&[2, 3]) && !rs.is_long(&[0, 1]));
    }

    #[test]
    fn a1_roots() {
        let rs = build_root_system("A1").unwrap();
        assert_eq!(rs.roots(), vec![vec![1], vec![-1]]);
    }

    #[test]
    fn b2_in_orthogonal_coordinates() {
        let rs = build_root_system("B2").unwrap();
        let (a, b) = (vec![1, 1], vec![0, 1]);
        assert!(rs.inner(&a, &b).is_zero());
        let mut set: Vec<Root> = vec![a.clone(), b.clone(), vec![1, 2], vec![1, 0]];
        set.sort();
        let mut pos = rs.positive_roots().to_vec();
        pos.sort();
        assert_eq!(set, pos);
    }

    #[test]
    fn cartan_entries_match_pairings() {
        for label in ["A3", "B3", "C3", "D4", "G2"] {
            let rs = build_root_system(label).unwrap();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    assert_eq!(
                        rs.coroot_pairing(&rs.simple_root(i), &rs.simple_root(j)),
                        rs.cartan_matrix()[i][j]
                    );
                }
            }
        }
    }

    #[test]
    fn simple_roots_come_first_in_index_order() {
        let rs = build_root_system("A3").unwrap();
        for i in 0..3 {
            assert_eq!(rs.positive_roots()[i], rs.simple_root(i));
        }
    }

    #[test]
    fn b2_long_subsystem_is_not_complete() {
        let rs = build_root_system("B2").unwrap();
        let subs = enumerate_rank2_subsystems(&rs).unwrap();
        let long = subs
            .iter()
            .find(|s| s.kind == RankTwoType::A1xA1)
            .expect("long A1xA1");
        assert!(!long.complete);
        assert!(long.positive.iter().all(|b| rs.is_long(b)));
        assert_eq!(long.component_group().order, 2);
        assert_eq!(long.component_group().faithful_characters, vec![1]);
    }

    #[test]
    fn g2_orthogonal_pairs_are_subsystems() {
        let rs = build_root_system("G2").unwrap();
        let subs = enumerate_rank2_subsystems(&rs).unwrap();
        let mut count = 0;
        for b in rs.positive_roots() {
            for c in rs.positive_roots() {
                if rs.inner(b, c).is_zero() && rs.is_long(b) && !rs.is_long(c) {
                    let s = subs
                        .iter()
                        .find(|s| s.kind == RankTwoType::A1xA1 && s.contains(b) && s.contains(c))
                        .expect("orthogonal pair subsystem");
                    assert_eq!(s.roots.len(), 4);
                    count += 1;
                }
            }
        }
        assert_eq!(count, 3);
        let long_a2 = subs.iter().find(|s| s.kind == RankTwoType::A2).unwrap();
        assert!(!long_a2.complete);
    }

    #[test]
    fn rank_one_has_no_rank_two_subsystems() {
        let rs = build_root_system("A1").unwrap();
        assert!(enumerate_rank2_subsystems(&rs).is_err());
    }

    #[test]
    fn inversion_sets_have_reduced_length() {
        for label in ["A2", "B2", "G2", "A3"] {
            let rs = build_root_system(label).unwrap();
            for w in rs.weyl_group() {
                assert_eq!(rs.inversion_set(w).len(), w.length());
            }
        }
    }

    #[test]
    fn inversion_decomposition_in_a2() {
        let rs = build_root_system("A2").unwrap();
        let subs = enumerate_rank2_subsystems(&rs).unwrap();
        let alpha = vec![1, 1];
        for (i, expected) in [(0, vec![vec![1, 0]]), (1, vec![vec![0, 1]])] {
            let w = rs.simple_reflection(i);
            let d = decompose_inversion_set(&rs, &subs, &alpha, w).unwrap();
            assert_eq!(d.inversion_set, expected);
            assert_eq!(d.parts.len(), 1);
            assert_eq!(d.parts[0].subsystem.roots.len(), 6);
            assert!(d.holds());
        }
        let s1s2 = rs.element_from_word(&[0, 1]);
        assert!(matches!(
            decompose_inversion_set(&rs, &subs, &alpha, s1s2),
            Err(Error::Precondition(_))
        ));
        let d = decompose_inversion_set(&rs, &subs, &[1, 0], rs.identity()).unwrap();
        assert!(d.parts.is_empty() && d.inversion_set.is_empty() && d.holds());
    }

    #[test]
    fn non_minimal_lift_breaks_the_partition() {
        let rs = build_root_system("A2").unwrap();
        let subs = enumerate_rank2_subsystems(&rs).unwrap();
        let w = rs.element_from_word(&[1, 0]);
        let d = decompose_inversion_set(&rs, &subs, &[1, 0], w).unwrap();
        assert_eq!(d.inversion_set.len(), 2);
        assert!(d.parts.is_empty());
        assert!(!d.holds());
    }

    #[test]
    fn chamber_shift_cases() {
        let rs = build_root_system("A2").unwrap();
        let v = rs.fundamental_coweight(0);
        assert!(chamber_shift(&rs, rs.identity(), &v).is_empty());
        let s = chamber_shift(&rs, rs.simple_reflection(0), &v);
        assert_eq!(s, vec![(vec![1, 0], int(1))]);
        assert_eq!(chamber_shift(&rs, rs.longest_element(), &v).len(), 3);
    }

    #[test]
    fn eta_identity_exact_and_proportional() {
        let x = vec![rat(3, 2), rat(-5, 7)];
        let (u, v) = (vec![int(1), rat(2, 3)], vec![rat(-1, 4), int(5)]);
        let r = eta_identity_residual(&[1, 0], &[0, 1], &x, &u, &v).unwrap();
        assert!(r.is_zero());
        let r = eta_identity_residual(&[1, 1], &[1, 1], &x, &u, &v).unwrap();
        assert!(r.is_zero());
        let s = eta_specialization_residual(&[1, 0], &[0, 1], &x, &u, &v).unwrap();
        assert!(s.is_zero());
        let bad = vec![int(1), int(2)];
        assert!(eta_identity_residual(&[1, 0], &[0, 1], &bad, &u, &v).is_err());
    }

    #[test]
    fn weyl_action_preserves_form_and_longest_negates_sign() {
        let rs = build_root_system("B3").unwrap();
        let roots = rs.roots();
        for w in rs.weyl_group().iter().step_by(5) {
            for a in &roots {
                for b in &roots {
                    assert_eq!(rs.inner(&w.apply(a), &w.apply(b)), rs.inner(a, b));
                }
            }
        }
        let w0 = rs.longest_element();
        let w0inv = rs.inverse(w0);
        for b in rs.positive_roots() {
            assert_eq!(rs.sign(&w0inv.apply(b)), -1);
        }
    }

    #[test]
    fn coweight_action_is_contragredient() {
        let rs = build_root_system("G2").unwrap();
        let v = vec![rat(1, 3), rat(-2, 5)];
        for w in rs.weyl_group() {
            let wv = rs.act_coweight(w, &v);
            for b in rs.positive_roots() {
                assert_eq!(rs.pair(&w.apply(b), &wv), rs.pair(b, &v));
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        let rs = build_root_system("C3").unwrap();
        for (i, lam) in rs.fundamental_weights().iter().enumerate() {
            for j in 0..3 {
                let a = rs.simple_root(j);
                let mut ip = Rational::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        ip += int(a[k]) * &rs.gram()[k][l] * &lam[l];
                    }
                }
                let pairing = int(2) * ip / rs.length2(&a);
                assert_eq!(pairing, int(i64::from(i == j)));
            }
        }
    }
}
