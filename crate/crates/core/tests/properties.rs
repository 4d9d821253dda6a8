use proptest::prelude::*;
use revguard::circuit::{equivalent, permutation, Circuit, ToffoliGate};
use revguard::patterns::{all1_suite, onecold_suite};
use revguard::{parse_real, simulate, simulate_inverse, write_real, BitPattern};

fn gate(n: usize) -> impl Strategy<Value = ToffoliGate> {
    (0..n, proptest::collection::vec(any::<bool>(), n)).prop_map(move |(t, picks)| {
        let controls = (0..n).filter(|&l| l != t && picks[l]);
        ToffoliGate::new(controls, t).unwrap()
    })
}

fn circuit_on(n: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(gate(n), 0..20).prop_map(move |g| Circuit::new(n, g).unwrap())
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (1usize..=7).prop_flat_map(circuit_on)
}

fn circuit_pair() -> impl Strategy<Value = (Circuit, Circuit)> {
    (1usize..=7).prop_flat_map(|n| (circuit_on(n), circuit_on(n)))
}

proptest! {
    #[test]
    fn inverse_undoes_forward(c in circuit(), seed in any::<u64>()) {
        let n = c.lines();
        let p = BitPattern::new(n, seed & ((1 << n) - 1)).unwrap();
        let m = c.gate_count();
        let y = simulate(&c, p, 0, m).unwrap();
        prop_assert_eq!(simulate_inverse(&c, y, 0, m).unwrap(), p);
    }

    #[test]
    fn split_simulation_composes(c in circuit(), seed in any::<u64>(), cut in any::<prop::sample::Index>()) {
        let n = c.lines();
        let m = c.gate_count();
        let k = cut.index(m + 1);
        let p = BitPattern::new(n, seed & ((1 << n) - 1)).unwrap();
        let mid = simulate(&c, p, 0, k).unwrap();
        prop_assert_eq!(simulate(&c, mid, k, m).unwrap(), simulate(&c, p, 0, m).unwrap());
    }

    #[test]
    fn concatenation_composes_permutations((a, b) in circuit_pair()) {
        let ab = a.concat(&b).unwrap();
        let (pa, pb, pab) = (permutation(&a).unwrap(), permutation(&b).unwrap(), permutation(&ab).unwrap());
        for x in 0..1u64 << a.lines() {
            prop_assert_eq!(pab.apply(x), pb.apply(pa.apply(x)));
        }
    }

    #[test]
    fn self_inverse_doubling_is_identity(c in circuit()) {
        let mut gates = c.gates().to_vec();
        gates.extend(c.gates().iter().rev().cloned());
        let doubled = c.with_gates(gates).unwrap();
        prop_assert!(equivalent(&doubled, &Circuit::empty(c.lines()).unwrap()).unwrap());
    }

    #[test]
    fn real_round_trip(c in circuit()) {
        let back = parse_real(&write_real(&c)).unwrap();
        prop_assert_eq!(back.gates(), c.gates());
    }

    #[test]
    fn suite_bounds(c in circuit()) {
        let (n, m) = (c.lines(), c.gate_count());
        let a = all1_suite(&c);
        prop_assert!(a.len() <= m + 1);
        let o = onecold_suite(&c);
        prop_assert!(o.len() <= n * (m + 1));
        prop_assert_eq!(o.bound, n * (m + 1));
    }
}
