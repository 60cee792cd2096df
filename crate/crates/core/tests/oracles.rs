//! Library values compared against independent computations.

use std::collections::BTreeSet;

use casimir_core::algebra::{int, Scalar};
use casimir_core::connection::TorusPoint;
use casimir_core::glrep::GlnModule;
use casimir_core::monodromy::abelian_loop;
use casimir_core::qkz::QkzSystem;
use casimir_core::rootsys::{enumerate_rank2_subsystems, Root, RootSystem, RootType};
use casimir_core::sample::Sampler;
use casimir_core::tits::finite_tits_model;
use casimir_core::{Error, ExactMatrix, Rational};

const TYPES: [RootType; 5] = [RootType::A(2), RootType::B(2), RootType::G2, RootType::A(3), RootType::B(3)];

/// Row-echelon basis of the integer lattice spanned by `vs`.
fn lattice_basis(vs: &[Root]) -> Vec<Root> {
    let mut rows: Vec<Root> = vs.to_vec();
    let mut basis = Vec::new();
    let dim = rows.first().map_or(0, Vec::len);
    for col in 0..dim {
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let mut live: Vec<usize> = (0..rows.len()).filter(|&k| rows[k][col] != 0).collect();
            if live.len() <= 1 {
                break;
            }
            live.sort_by_key(|&k| rows[k][col].abs());
            let p = live[0];
            for &k in &live[1..] {
                let q = rows[k][col] / rows[p][col];
                let pivot = rows[p].clone();
                for (x, y) in rows[k].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        if let Some(k) = (0..rows.len()).find(|&k| rows[k][col] != 0) {
            basis.push(rows.remove(k));
        }
    }
    basis
}

fn in_lattice(basis: &[Root], v: &[i64]) -> bool {
    let mut r = v.to_vec();
    for b in basis {
        let col = b.iter().position(|&x| x != 0).expect("nonzero basis row");
        if r[col] % b[col] != 0 {
            return false;
        }
        let q = r[col] / b[col];
        for (x, y) in r.iter_mut().zip(b) {
            *x -= q * y;
        }
    }
    r.iter().all(|&x| x == 0)
}

fn real_rank(vs: &[Root]) -> usize {
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
    casimir_core::algebra::linalg::rank(&rows)
}

/// All `Ψ ⊂ Φ` of rank 2 with `⟨Ψ⟩_Z ∩ Φ = Ψ`, by scanning subsets of `Φ`,
/// tagged with completeness `⟨Ψ⟩_R ∩ Φ = Ψ`.
fn brute_force_rank2(rs: &RootSystem) -> BTreeSet<(Vec<Root>, bool)> {
    let roots = rs.roots();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << roots.len()) {
        let subset: Vec<Root> = (0..roots.len()).filter(|k| mask >> k & 1 == 1).map(|k| roots[k].clone()).collect();
        if real_rank(&subset) != 2 {
            continue;
        }
        let basis = lattice_basis(&subset);
        let closure: Vec<Root> = roots.iter().filter(|b| in_lattice(&basis, b)).cloned().collect();
        if closure != subset {
            continue;
        }
        let complete = roots.iter().all(|b| {
            let mut ext = subset.clone();
            ext.push(b.clone());
            real_rank(&ext) > 2 || subset.contains(b)
        });
        out.insert((subset, complete));
    }
    out
}

#[test]
fn rank2_subsystems_match_subset_scan() {
    for ty in [RootType::A(2), RootType::B(2), RootType::G2, RootType::A(3)] {
        let rs = RootSystem::new(ty).unwrap();
        let listed: BTreeSet<(Vec<Root>, bool)> = enumerate_rank2_subsystems(&rs)
            .unwrap()
            .into_iter()
            .map(|s| {
                let mut roots = s.roots;
                roots.sort();
                (roots, s.complete)
            })
            .collect();
        let mut oracle = brute_force_rank2(&rs);
        oracle = oracle
            .into_iter()
            .map(|(mut r, c)| {
                r.sort();
                (r, c)
            })
            .collect();
        assert_eq!(listed, oracle, "{ty}");
    }
}

#[test]
fn b2_long_roots_form_an_incomplete_subsystem() {
    let rs = RootSystem::new(RootType::B(2)).unwrap();
    let subs = enumerate_rank2_subsystems(&rs).unwrap();
    let incomplete: Vec<_> = subs.iter().filter(|s| !s.complete).collect();
    assert_eq!(incomplete.len(), 1);
    assert!(incomplete[0].positive.iter().all(|b| rs.is_long(b)));
}

/// `N(w) = {α_{ik}, s_{ik}α_{ik−1}, …}` for the reduced word `w = s_{i1}⋯s_{ik}`.
fn inversions_from_word(rs: &RootSystem, word: &[usize]) -> BTreeSet<Root> {
    let reflect = |i: usize, b: &Root| -> Root {
        let a = rs.simple_root(i);
        let c = rs.inner(b, &a) * int(2) / rs.inner(&a, &a);
        assert!(c.is_integer());
        let c = c.to_integer().try_into().unwrap_or(i64::MAX);
        b.iter().zip(&a).map(|(x, y)| x - c * y).collect()
    };
    (0..word.len())
        .map(|k| word[k + 1..].iter().fold(rs.simple_root(word[k]), |b, &i| reflect(i, &b)))
        .collect()
}

#[test]
fn inversion_sets_match_reduced_words() {
    for ty in TYPES {
        let rs = RootSystem::new(ty).unwrap();
        for w in rs.weyl_group() {
            let listed: BTreeSet<Root> = rs.inversion_set(w).into_iter().collect();
            assert_eq!(listed, inversions_from_word(&rs, &w.word), "{ty} w = s{:?}", w.word);
        }
        assert_eq!(rs.inversion_set(rs.longest_element()).len(), ty.positive_root_count());
    }
}

#[test]
fn a2_inversion_set_of_s1s2() {
    let rs = RootSystem::new(RootType::A(2)).unwrap();
    let w = rs.element_from_word(&[0, 1]);
    let set: BTreeSet<Root> = rs.inversion_set(w).into_iter().collect();
    assert_eq!(set, BTreeSet::from([vec![0, 1], vec![1, 1]]));
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

#[test]
fn zero_weight_dimension_is_multinomial() {
    for (n, m) in [(2, 2), (3, 3), (2, 4), (2, 3), (4, 4)] {
        let dim = GlnModule::new(n, m).zero_weight_basis().len();
        let oracle = if m % n == 0 { factorial(m) / factorial(m / n).pow(n as u32) } else { 0 };
        assert_eq!(dim, oracle, "n = {n}, m = {m}");
    }
}

#[test]
fn smallness_by_weight_scan() {
    for (n, m) in [(2, 2), (3, 3), (2, 4), (3, 2), (2, 3)] {
        let module = GlnModule::new(n, m);
        // Some weight equals twice a root iff one tensor index occurs
        // 2 + m/n times and another m/n − 2 times, all others m/n.
        let oracle = m % n != 0 || m / n < 2;
        let (small, witness) = module.is_small();
        assert_eq!(small, oracle, "n = {n}, m = {m}");
        assert_eq!(witness.is_some(), !small);
    }
    let (_, witness) = GlnModule::new(2, 4).is_small();
    assert!(matches!(witness.as_deref(), Some([4, 0]) | Some([0, 4])));
}

fn unit(n: usize, i: usize, j: usize) -> ExactMatrix {
    ExactMatrix::unit(n, i, j)
}

#[test]
fn casimir_on_sl2_zero_weight_space() {
    let id = ExactMatrix::identity(2);
    let delta = |x: &ExactMatrix| x.kron(&id).add_ref(&id.kron(x));
    let (e, f) = (delta(&unit(2, 0, 1)), delta(&unit(2, 1, 0)));
    let kappa = e.matmul(&f).add_ref(&f.matmul(&e));
    let module = GlnModule::new(2, 2);
    let zero = module.zero_weight_basis();
    let expected = ExactMatrix::from_i64_rows(&[&[2, 2], &[2, 2]]);
    assert_eq!(kappa.restrict(&zero), expected);
    assert_eq!(module.casimir_truncated(0, 1).unwrap().restrict(&zero), expected);
}

#[test]
fn leibniz_action_of_e12() {
    let module = GlnModule::new(2, 2);
    let e22 = module.index_of(&[1, 1]);
    let image = module.e(0, 1).mul_vec(&unit_vector(module.dim(), e22));
    let mut expected = vec![Rational::zero(); module.dim()];
    expected[module.index_of(&[0, 1])] = int(1);
    expected[module.index_of(&[1, 0])] = int(1);
    assert_eq!(image, expected);
}

fn unit_vector(dim: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[k] = int(1);
    v
}

#[test]
fn two_term_exponential_and_kron_shift() {
    let x = unit(2, 0, 1);
    assert_eq!(x.nilpotent_exp().unwrap(), ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]));
    let shift = x.kron(&ExactMatrix::identity(2));
    assert_eq!(shift.mul_vec(&unit_vector(4, 2)), unit_vector(4, 0));
}

#[test]
fn sl2_tits_generator_from_exponentials() {
    let series = |x: &ExactMatrix| ExactMatrix::identity(2).add_ref(x);
    let e = series(&unit(2, 0, 1));
    let f = series(&unit(2, 1, 0).neg_ref());
    let oracle = e.matmul(&f).matmul(&e);
    assert_eq!(oracle, ExactMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]));
    assert_eq!(finite_tits_model(2).unwrap().generators[0], oracle);
    assert_eq!(GlnModule::new(2, 1).tits_operator(0).unwrap(), oracle);
    assert_eq!(oracle.matmul(&oracle), ExactMatrix::identity(2).neg_ref());
}

#[test]
fn sl3_tits_braid_relation() {
    let model = finite_tits_model(3).unwrap();
    assert_eq!(model.word(&[0, 1, 0]), model.word(&[1, 0, 1]));
}

#[test]
fn qkz_consistency_on_random_sections() {
    let mut rng = Sampler::new(2024);
    for m in [2, 3] {
        let mut checked = 0;
        while checked < 20 {
            let a = rng.distinct_rationals(m, &[]);
            let sys = QkzSystem::new(2, a, rng.nonzero_rational()).unwrap();
            let p = TorusPoint::new(rng.regular_torus_point(2)).unwrap();
            let v = rng.rationals(sys.module().dim());
            let outcome: Result<Vec<Rational>, Error> = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .map(|(i, j)| sys.consistency_on_section(i, j, &p, &v))
                .collect();
            match outcome {
                Ok(rs) => {
                    assert!(rs.iter().all(Scalar::is_zero), "m = {m}, a = {:?}", sys.a);
                    checked += 1;
                }
                Err(Error::Singular(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn abelian_loop_matches_closed_form() {
    for c in [0.25, 0.3, -1.7] {
        let got = abelian_loop(c, 1e-12).unwrap();
        let exact = unit_circle(c);
        assert!((got.re - exact.0).abs() < 1e-9 && (got.im - exact.1).abs() < 1e-9, "c = {c}");
    }
}

fn unit_circle(c: f64) -> (f64, f64) {
    let t = std::f64::consts::TAU * c;
    (t.cos(), t.sin())
}

#[test]
fn sampler_is_deterministic() {
    let (mut x, mut y) = (Sampler::new(5), Sampler::new(5));
    assert_eq!(x.rationals(10), y.rationals(10));
}
