use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relmod::classify::{decompose_translation, find_step, in_submodule_basis, precedes_one, separation_collisions};
use relmod::findim::{build_finite_dimensional, finite_dimensional_module, highest_weight_tableau};
use relmod::io::{graph_from_json, graph_to_json, tableau_from_json, tableau_to_json};
use relmod::sample::random_realization;
use relmod::{act, presets, Action, Generator, ModuleVector, RelationModule, ShiftVector, TriGraph};

fn random_module(g: &TriGraph, seed: u64) -> RelationModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_realization(g, &mut rng, 3).unwrap();
    RelationModule::new(g.clone(), t).unwrap()
}

fn family() -> impl Strategy<Value = (String, TriGraph)> {
    prop::sample::select(presets::family_graphs()).prop_map(|(name, g)| (name.to_owned(), g))
}

/// Every shift with coordinates in `-r..=r` below the top row.
fn cube(n: usize, r: i64) -> Vec<ShiftVector> {
    let free = n * (n - 1) / 2;
    let total = n * (n + 1) / 2;
    let side = (2 * r + 1) as usize;
    (0..side.pow(free as u32))
        .map(|mut code| {
            let mut z = vec![0; total];
            for x in z.iter_mut().take(free) {
                *x = (code % side) as i64 - r;
                code /= side;
            }
            ShiftVector::from_values(n, z).unwrap()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_realizations_realize((_, g) in family(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_realization(&g, &mut rng, 3).unwrap();
        prop_assert!(relmod::derived::is_realization(&t, &g));
    }

    #[test]
    fn window_is_the_realizing_part_of_the_cube((_, g) in family(), seed in any::<u64>()) {
        let m = random_module(&g, seed);
        let window = m.window(1);
        let mut brute: Vec<ShiftVector> = cube(4, 1)
            .into_iter()
            .filter(|z| relmod::derived::is_realization(&m.tableau(z), &g))
            .collect();
        let mut sorted = window.clone();
        sorted.sort();
        brute.sort();
        prop_assert_eq!(sorted, brute);
    }

    #[test]
    fn reduced_graphs_are_generic_and_keys_separate((_, g) in family(), seed in any::<u64>()) {
        let m = random_module(&g, seed);
        let window = m.window(1);
        for z in &window {
            prop_assert!(m.graph_at(z).difference(m.closure()).is_generic());
        }
        prop_assert_eq!(separation_collisions(&m, &window), 0);
    }

    #[test]
    fn json_round_trips((_, g) in family(), seed in any::<u64>()) {
        let m = random_module(&g, seed);
        let t = m.seed();
        let text = serde_json::to_string(&tableau_to_json(t)).unwrap();
        prop_assert_eq!(&tableau_from_json(&text).unwrap(), t);
        let text = serde_json::to_string(&graph_to_json(&g)).unwrap();
        prop_assert_eq!(graph_from_json(&text).unwrap(), g);
    }

    #[test]
    fn steps_stay_between_endpoints(pick in any::<prop::sample::Index>(), other in any::<prop::sample::Index>()) {
        let m = RelationModule::new(presets::diamond_graph(), presets::diamond_tableau()).unwrap();
        let window = m.window(2);
        let r = &window[pick.index(window.len())];
        let members: Vec<&ShiftVector> = window.iter().filter(|s| in_submodule_basis(&m, s, r).unwrap()).collect();
        let s = members[other.index(members.len())];
        let z = s - r;
        if z.is_zero() {
            prop_assert!(find_step(&m, r, &z).is_err());
            return Ok(());
        }
        let v = find_step(&m, r, &z).unwrap();
        prop_assert!(z.get(v) != 0);
        let mut here = r.clone();
        for step in decompose_translation(&m, r, &z).unwrap() {
            let next = &here + &step.to_shift(4);
            prop_assert!(in_submodule_basis(&m, &next, &here).unwrap());
            prop_assert!(in_submodule_basis(&m, s, &next).unwrap());
            prop_assert!(precedes_one(&m, &here, &next).unwrap());
            here = next;
        }
        prop_assert_eq!(&here, s);
    }
}

fn weight(m: &RelationModule, z: &ShiftVector) -> Vec<i64> {
    (1..=m.n())
        .map(|k| {
            let out = act(m, Generator::diagonal(k), &ModuleVector::basis(z.clone())).unwrap();
            match out.coefficient(z) {
                None => 0,
                Some(c) => {
                    let c = c.as_constant().expect("finite-dimensional weights are rational");
                    assert!(c.is_integer());
                    i64::try_from(c.to_integer()).unwrap()
                }
            }
        })
        .collect()
}

#[test]
fn finite_dimensional_weights_are_weyl_symmetric() {
    for lambda in [vec![2, 1, 0], vec![3, 1, 1], vec![2, 2, 0, -1], vec![1, 0, 0, 0]] {
        let m = finite_dimensional_module(&lambda).unwrap();
        let basis = build_finite_dimensional(&lambda).unwrap().basis;
        let mut mult: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for t in &basis {
            *mult.entry(weight(&m, &m.locate(t).unwrap())).or_default() += 1;
        }
        assert_eq!(mult.get(&lambda), Some(&1), "{lambda:?}");
        let n = lambda.len();
        for (w, k) in &mult {
            assert_eq!(w.iter().sum::<i64>(), lambda.iter().sum::<i64>());
            for i in 0..n - 1 {
                let mut s = w.clone();
                s.swap(i, i + 1);
                assert_eq!(mult.get(&s), Some(k), "{lambda:?}: {w:?} vs {s:?}");
            }
        }
    }
}

#[test]
fn highest_weight_vector_is_killed_by_raising() {
    let lambda = [3, 1, 0, 0];
    let m = finite_dimensional_module(&lambda).unwrap();
    let top = m.locate(&highest_weight_tableau(&lambda).unwrap()).unwrap();
    for k in 1..4 {
        assert!(m.basis_image(Generator::raising(k), &top).unwrap().is_empty());
    }
    assert_eq!(weight(&m, &top), lambda.to_vec());
}
