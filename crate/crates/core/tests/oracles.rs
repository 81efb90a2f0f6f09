//! Cross-checks of the brute-force oracles against independent
//! formulations: min-plus powering, exhaustive path enumeration, and
//! algebraic identities. The oracles anchor every other test in the crate,
//! so they get their own independent evidence here.

use qapsp::gen::{generate_instance, GenOptions};
use qapsp::graph::{InstanceKind, WeightedGraph};
use qapsp::matrix::Matrix;
use qapsp::oracle::{brute_apnp, brute_apsp, brute_distance_product, brute_minle_product};
use qapsp::weight::Weight;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(kind: InstanceKind, n: usize, seed: u64) -> WeightedGraph {
    generate_instance(kind, n, seed, &GenOptions::default()).unwrap()
}

/// All-pairs distances by repeated min-plus squaring of the weight matrix
/// with a zeroed diagonal, iterated to its fixpoint.
fn powering_fixpoint(g: &WeightedGraph) -> Matrix {
    let mut acc = Matrix::from_fn(
        g.n,
        g.n,
        |i, j| {
            if i == j {
                Weight::ZERO
            } else {
                g.weight(i, j)
            }
        },
    );
    loop {
        let next = brute_distance_product(&acc, &acc).unwrap();
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

#[test]
fn apsp_oracle_equals_the_powering_fixpoint() {
    let kinds = [
        InstanceKind::NodeWeighted,
        InstanceKind::EuclideanPlanar,
        InstanceKind::BoundedWeight,
        InstanceKind::SmallL,
        InstanceKind::General,
    ];
    let mut runs = 0;
    for kind in kinds {
        for n in [8, 17, 32] {
            for seed in 0..7 {
                let g = instance(kind, n, seed);
                assert_eq!(
                    brute_apsp(&g),
                    powering_fixpoint(&g),
                    "{} n={n} seed={seed}",
                    kind.name()
                );
                runs += 1;
            }
        }
    }
    assert!(runs >= 100);
}

/// Minimal last-edge weight over nondecreasing paths by exhaustive
/// depth-first enumeration of simple paths. Cutting a vertex repetition
/// out of a nondecreasing walk leaves it nondecreasing, so simple paths
/// realize the optimum and enumeration is complete.
fn enumerated_apnp(g: &WeightedGraph) -> Matrix {
    let n = g.n;
    let mut best = Matrix::from_fn(
        n,
        n,
        |i, j| {
            if i == j {
                Weight::NEG_INF
            } else {
                Weight::INF
            }
        },
    );
    for i in 0..n {
        let mut visited = vec![false; n];
        visited[i] = true;
        dfs(g, i, i, Weight::NEG_INF, &mut visited, &mut best);
    }
    best
}

fn dfs(
    g: &WeightedGraph,
    source: usize,
    at: usize,
    floor: Weight,
    visited: &mut Vec<bool>,
    best: &mut Matrix,
) {
    for v in 0..g.n {
        if visited[v] || v == at {
            continue;
        }
        let w = g.weight(at, v);
        if !w.is_finite() || w < floor {
            continue;
        }
        if w < best.get(source, v) {
            best.set(source, v, w);
        }
        visited[v] = true;
        dfs(g, source, v, w, visited, best);
        visited[v] = false;
    }
}

#[test]
fn apnp_oracle_equals_exhaustive_enumeration_on_small_instances() {
    for n in [4, 6, 8] {
        for seed in 0..12 {
            let g = instance(InstanceKind::Apnp, n, seed);
            assert_eq!(brute_apnp(&g), enumerated_apnp(&g), "n={n} seed={seed}");
        }
    }
}

fn random_square(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| {
        if rng.gen_bool(0.25) {
            Weight::INF
        } else {
            Weight::finite(rng.gen_range(0..100) as f64)
        }
    })
}

#[test]
fn distance_product_is_associative_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let a = random_square(&mut rng, 4);
        let b = random_square(&mut rng, 4);
        let c = random_square(&mut rng, 4);
        let left = brute_distance_product(&brute_distance_product(&a, &b).unwrap(), &c).unwrap();
        let right = brute_distance_product(&a, &brute_distance_product(&b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn threshold_product_never_drops_when_its_left_operand_rises() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(2..6);
        let x = random_square(&mut rng, n);
        let y = random_square(&mut rng, n);
        let base = brute_minle_product(&x, &y).unwrap();

        let (i, k) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut raised = x.clone();
        let bump = match raised.get(i, k) {
            w if w.is_finite() => Weight::finite(w.raw() + rng.gen_range(1..10) as f64),
            w => w,
        };
        raised.set(i, k, bump);
        let after = brute_minle_product(&raised, &y).unwrap();
        for a in 0..n {
            for b in 0..n {
                assert!(
                    after.get(a, b) >= base.get(a, b),
                    "raising X[{i}][{k}] lowered entry ({a}, {b})"
                );
            }
        }
    }
}
