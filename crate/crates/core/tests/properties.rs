use diaglab::clocks::{ClockedMachine, GrowthFamily, Polynomial};
use diaglab::diagonal::{is_permutation_on, Permutation, Representation};
use diaglab::kleene::{
    encode_history, kleene_t, kleene_u, phi, unsound_total, HistoryCode, Never, TrueAt,
};
use diaglab::machine::{constant_machine, decode_machine, encode_machine};
use diaglab::verify::{
    sat_member, CnfSatVerifier, ParityVerifier, Predicates, SearchOutcome, Verifier,
};
use diaglab::words::{decode_cnf, encode_cnf, pair, unpair, BinaryWord};
use num_bigint::BigUint;
use proptest::prelude::*;

fn word() -> impl Strategy<Value = BinaryWord> {
    prop::collection::vec(any::<bool>(), 0..24).prop_map(BinaryWord::from_bits)
}

fn natural() -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u32>(), 0..5).prop_map(BigUint::new)
}

fn truth_table(x: &BinaryWord) -> bool {
    let f = decode_cnf(x);
    let vars = f.clauses.iter().flatten().map(|l| l.var).max().unwrap_or(0);
    (0u64..1 << vars).any(|a| {
        f.clauses.iter().all(|c| {
            c.iter()
                .any(|l| ((a >> (l.var - 1)) & 1 == 1) == l.positive)
        })
    })
}

proptest! {
    #[test]
    fn index_roundtrip(n in natural()) {
        prop_assert_eq!(BinaryWord::from_index(&n).index(), n);
    }

    #[test]
    fn word_roundtrip(w in word()) {
        prop_assert_eq!(BinaryWord::from_index(&w.index()), w);
    }

    #[test]
    fn index_order_is_length_monotone(n in natural()) {
        let next = &n + 1u32;
        prop_assert!(BinaryWord::from_index(&n).len() <= BinaryWord::from_index(&next).len());
    }

    #[test]
    fn pairing_roundtrip(i in natural(), n in natural()) {
        prop_assert_eq!(unpair(&pair(&i, &n)), (i, n));
    }

    #[test]
    fn unpairing_roundtrip(p in natural()) {
        let (i, n) = unpair(&p);
        prop_assert_eq!(pair(&i, &n), p);
    }

    #[test]
    fn cnf_decoding_is_total(x in prop::collection::vec(any::<bool>(), 0..200)) {
        let f = decode_cnf(&BinaryWord::from_bits(x));
        prop_assert!(!f.clauses.is_empty());
        prop_assert!(f.clauses.iter().all(|c| !c.is_empty() && c.iter().all(|l| l.var > 0)));
        let again = decode_cnf(&encode_cnf(&f).unwrap());
        prop_assert_eq!(again, f);
    }

    #[test]
    fn machine_decoding_is_stable(e in natural()) {
        let m = decode_machine(&e);
        prop_assert_eq!(decode_machine(&encode_machine(&m)), m);
    }

    #[test]
    fn halting_time_is_stable(e in 0u64..100_000, x in word(), extra in 0u64..500) {
        let m = decode_machine(&BigUint::from(e));
        let first = m.run(&x, 200);
        prop_assert_eq!(m.run(&x, 200), first.clone());
        if first.halted() {
            let later = m.run(&x, first.steps + extra);
            prop_assert_eq!(later.steps, first.steps);
            prop_assert_eq!(later.output(), first.output());
        }
    }

    #[test]
    fn constant_machines_output_their_word(s in word(), x in word()) {
        let c = constant_machine(&s);
        let out = c.machine().run(&x, c.step_bound(x.len() as u64));
        prop_assert_eq!(out.output(), Some(&s));
    }

    #[test]
    fn clock_is_invisible_to_fast_machines(e in 0u64..100_000, n in 0u64..6, x in word()) {
        let i = BigUint::from(e);
        let g = Polynomial;
        let limit = g.clock_steps(&BigUint::from(n), x.len() as u64);
        let plain = decode_machine(&i).run(&x, limit.min(100_000));
        if plain.halted() && plain.steps <= limit {
            for later in n..n + 3 {
                let clocked = ClockedMachine::from_parts(&i, &BigUint::from(later), &g).run(&x);
                prop_assert!(clocked.halted_naturally);
                prop_assert_eq!(clocked.output.as_word(), plain.output());
            }
        }
    }

    #[test]
    fn clocked_runs_respect_the_clock(p in 0u64..10_000, x in word()) {
        let m = ClockedMachine::from_code(&BigUint::from(p), &Polynomial);
        let run = m.run(&x);
        prop_assert!(run.steps <= m.step_limit(x.len() as u64).unwrap());
    }

    #[test]
    fn predicates_are_complementary(m in 0u64..5_000, x in 0u64..64) {
        let preds = Predicates::new(&ParityVerifier, &Polynomial);
        let id = Representation::identity();
        let (m, x) = (BigUint::from(m), BigUint::from(x));
        prop_assert_ne!(preds.pred_a(&id, &m, &x).unwrap(), preds.pred_p(&id, &m, &x).unwrap());
    }

    #[test]
    fn mu_search_is_minimal(m in 0u64..5_000) {
        let preds = Predicates::new(&ParityVerifier, &Polynomial);
        let id = Representation::identity();
        let m = BigUint::from(m);
        let result = preds.f_p(&id, &m, 64);
        if let SearchOutcome::Found(y) = result.outcome {
            prop_assert!(preds.pred_p(&id, &m, &BigUint::from(y)).unwrap());
            for smaller in 0..y {
                prop_assert!(!preds.pred_p(&id, &m, &BigUint::from(smaller)).unwrap());
            }
        } else {
            for y in 0..=64u64 {
                prop_assert!(!preds.pred_p(&id, &m, &BigUint::from(y)).unwrap());
            }
        }
    }

    #[test]
    fn verifier_boundary(x in word(), s in word()) {
        let verifiers: [&dyn Verifier; 2] = [&ParityVerifier, &CnfSatVerifier];
        for v in verifiers {
            prop_assert!(!v.check(&x, &BinaryWord::empty()));
            if !s.is_empty() {
                prop_assert!(v.check(&BinaryWord::empty(), &s));
            }
        }
    }

    #[test]
    fn sat_matches_the_truth_table(x in prop::collection::vec(any::<bool>(), 1..40)) {
        let x = BinaryWord::from_bits(x);
        prop_assume!(decode_cnf(&x).var_count() <= 12);
        prop_assert_eq!(sat_member(&x).unwrap(), truth_table(&x));
    }

    #[test]
    fn histories_replay(e in 0u64..100_000, x in 0u64..256) {
        let (e, x) = (BigUint::from(e), BigUint::from(x));
        let run = decode_machine(&e).run(&BinaryWord::from_index(&x), 1000);
        if let Some(h) = encode_history(&e, &x, 1000) {
            let z = h.code();
            prop_assert!(kleene_t(&e, &x, z));
            prop_assert_eq!(Some(&kleene_u(z)), run.output());
            let decoded = HistoryCode::decode(z).unwrap();
            let m = decode_machine(&e);
            let mut c = m.initial(&BinaryWord::from_index(&x));
            for config in decoded.configs() {
                prop_assert_eq!(config, &diaglab::kleene::CanonicalConfig::from_configuration(&c));
                if !c.is_halted() {
                    m.step(&mut c).unwrap();
                }
            }
            prop_assert!(!kleene_t(&e, &(&x + 1u32), z));
        } else {
            prop_assert!(!run.halted());
        }
    }

    #[test]
    fn totalized_search(e in 0u64..100_000, x in 0u64..256, y0 in 0u64..10_000) {
        let (e, x, y0) = (BigUint::from(e), BigUint::from(x), BigUint::from(y0));
        let budget = BigUint::from(1u32) << 4096u32;
        let direct = phi(&e, &x, &budget);
        prop_assert_eq!(unsound_total(&e, &Never, &x, &budget), direct.clone());
        let forced = unsound_total(&e, &TrueAt(y0.clone()), &x, &budget);
        let bound = direct.witness().map_or(y0.clone(), |w| w.min(&y0).clone());
        prop_assert_eq!(forced.witness(), Some(&bound));
    }

    #[test]
    fn transpositions_stay_permutations(swaps in prop::collection::vec((0u64..200, 0u64..200), 0..30)) {
        let mut phi = Representation::identity();
        for &(a, b) in &swaps {
            phi.transpose(a, b);
        }
        prop_assert!(is_permutation_on(&phi, 1200));
        let mut positions: Vec<_> = (0..200u64).map(|p| phi.apply_u64(p)).collect();
        positions.sort_unstable();
        prop_assert_eq!(positions, (0..200u64).collect::<Vec<_>>());
        let big = BigUint::from(1u32) << 80u32;
        prop_assert_eq!(phi.apply(&big), big.clone());
        prop_assert_eq!(phi.inverse(&big), big);
    }
}
