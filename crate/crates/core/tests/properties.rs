mod common;

use proptest::prelude::*;
use qapga::ga::{order_crossover_two_point, selection_weights, swap_mutation};
use qapga::{evaluate_cost, parse_qaplib, render_qaplib, swap_delta, Cost, Instance, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance_strategy(max_n: usize, max_entry: i64) -> impl Strategy<Value = Instance> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(0..=max_entry, n * n),
            prop::collection::vec(0..=max_entry, n * n),
        )
            .prop_map(move |(flow, dist)| Instance::new("p", n, flow, dist).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn instance_and_perm(max_n: usize) -> impl Strategy<Value = (Instance, Permutation)> {
    instance_strategy(max_n, 1000).prop_flat_map(|inst| {
        let n = inst.size();
        (Just(inst), permutation(n))
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(inst in instance_strategy(8, 1_000_000)) {
        let back = parse_qaplib(&render_qaplib(&inst)).unwrap().with_name(inst.name());
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn cost_matches_zero_one_form((inst, p) in instance_and_perm(9)) {
        let fast = evaluate_cost(&inst, &p).unwrap();
        prop_assert_eq!(i128::from(fast.get()), common::quadruple_sum(&inst, &p));
    }

    #[test]
    fn relabeling_facilities_preserves_cost(
        (inst, p) in instance_and_perm(10),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let n = inst.size();
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        // facility i becomes facility sigma[i]
        let mut flow = vec![0i64; n * n];
        let mut assign = vec![0usize; n];
        for i in 0..n {
            assign[sigma[i]] = p.as_slice()[i];
            for k in 0..n {
                flow[sigma[i] * n + sigma[k]] = inst.flow(i, k);
            }
        }
        let relabeled = Instance::new("r", n, flow, inst.dist_matrix().to_vec()).unwrap();
        let q = Permutation::new(assign).unwrap();
        prop_assert_eq!(evaluate_cost(&relabeled, &q).unwrap(), evaluate_cost(&inst, &p).unwrap());
    }

    #[test]
    fn swap_delta_matches_full((inst, p) in instance_and_perm(12), a in any::<usize>(), b in any::<usize>()) {
        let n = inst.size();
        prop_assume!(n >= 2);
        let i = a % n;
        let k = (i + 1 + b % (n - 1)) % n;
        let c = evaluate_cost(&inst, &p).unwrap();
        let mut q = p.clone();
        q.swap(i, k);
        prop_assert_eq!(swap_delta(&inst, &p, c, i, k).unwrap(), evaluate_cost(&inst, &q).unwrap());
    }

    #[test]
    fn crossover_children_are_valid(
        (p1, p2, c1, c2) in (2usize..30).prop_flat_map(|n| (permutation(n), permutation(n), 0..=n, 0..=n))
    ) {
        let (lo, hi) = (c1.min(c2), c1.max(c2));
        let (a, b) = order_crossover_two_point(&p1, &p2, lo, hi).unwrap();
        prop_assert!(Permutation::new(a.as_slice().to_vec()).is_ok());
        prop_assert!(Permutation::new(b.as_slice().to_vec()).is_ok());
        prop_assert_eq!(&a.as_slice()[lo..hi], &p1.as_slice()[lo..hi]);
        prop_assert_eq!(&b.as_slice()[lo..hi], &p2.as_slice()[lo..hi]);
        // outside the segment, genes follow the other parent's order
        let outside: Vec<usize> = a.as_slice().iter().enumerate()
            .filter(|(pos, _)| !(lo..hi).contains(pos)).map(|(_, &g)| g).collect();
        let expected: Vec<usize> = p2.as_slice().iter().copied()
            .filter(|g| !p1.as_slice()[lo..hi].contains(g)).collect();
        prop_assert_eq!(outside, expected);
    }

    #[test]
    fn mutation_changes_two_positions(p in (2usize..40).prop_flat_map(permutation), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, pos) = swap_mutation(&p, &mut rng);
        let (i, k) = pos.unwrap();
        prop_assert_ne!(i, k);
        let diff = p.as_slice().iter().zip(q.as_slice()).filter(|(x, y)| x != y).count();
        prop_assert_eq!(diff, 2);
        prop_assert!(Permutation::new(q.as_slice().to_vec()).is_ok());
    }

    #[test]
    fn weights_normalized_and_order_reversing(raw in prop::collection::vec(0i64..1_000_000_000, 1..60)) {
        let costs: Vec<Cost> = raw.iter().map(|&c| Cost::new(c).unwrap()).collect();
        let w = selection_weights(&costs).unwrap();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for i in 0..costs.len() {
            for k in 0..costs.len() {
                if costs[i] < costs[k] {
                    prop_assert!(w[i] > w[k]);
                }
            }
        }
    }
}
