use opcheb::chebyshev::t_hat;
use opcheb::mapping::{
    delta_identity_check, derive_q, mapped_p, verify_rn_constant, verify_s_product, MappingBundle,
};
use opcheb::recurrence::{generate_p, generate_q, validate_tsequence, TSequence};
use opcheb::scalar::rat;
use opcheb::Error;
use proptest::prelude::*;

/// Block values (x_n, 1/2 - x_n, y_n, 1/2 - y_n) with x_0 = 0.
fn sequence(m: usize, xs: Vec<(i64, i64)>) -> TSequence {
    TSequence::from_blocks(m, move |n| {
        let (a, b) = xs[n % xs.len()];
        let x = if n == 0 { rat(0, 1) } else { rat(a, 16) };
        let y = rat(b, 16);
        let half = rat(1, 2);
        [x.clone(), &half - &x, y.clone(), &half - &y]
    })
    .unwrap()
}

fn free_values() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((1i64..8, 1i64..8), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mapped_form_matches_recurrence(m in 2usize..=4, xs in free_values()) {
        let ts = sequence(m, xs);
        prop_assert!(validate_tsequence(&ts, 3).unwrap().is_valid());
        let k = 2 * m;
        let p = generate_p(&ts, 2 * k + m + 1).unwrap();
        let q = generate_q(&derive_q(&ts), 4).unwrap();
        let bundle = MappingBundle::new(&ts);
        for n in 0..2 {
            for j in 0..k {
                let v = mapped_p(&bundle, &q, n, j).unwrap();
                prop_assert_eq!(&v, &p[k * n + m + j + 1]);
            }
        }
        for (j, pj) in p.iter().enumerate().take(m + 1) {
            prop_assert_eq!(pj, &t_hat(j as i64));
        }
    }

    #[test]
    fn block_identities_hold(m in 2usize..=3, xs in free_values()) {
        let ts = sequence(m, xs);
        for n in 0..2 {
            prop_assert!(delta_identity_check(&ts, n).unwrap().passed);
        }
        for n in 1..3 {
            prop_assert!(verify_rn_constant(&ts, n).unwrap().passed);
            prop_assert!(verify_s_product(&ts, n).unwrap().passed);
        }
    }
}

#[test]
fn perturbed_sequence_is_rejected() {
    // offset 2 of block 1 must hold 1/4 when m = 3
    let base = sequence(3, vec![(3, 5)]);
    let ts = TSequence::from_fn(3, move |i| if i == 8 { rat(1, 5) } else { base.t(i) }).unwrap();
    assert!(!validate_tsequence(&ts, 2).unwrap().is_valid());
    assert!(matches!(
        generate_p(&ts, 20),
        Err(Error::InvalidSequence(_))
    ));
}
