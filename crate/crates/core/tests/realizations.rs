use splitfield::dedekind::index_scan;
use splitfield::period::period_minimal_polynomial;
use splitfield::realizations::{bounded_realization, unbounded_realization};
use splitfield::Limits;

#[test]
fn unbounded_local_degrees_grow_at_two() {
    let probes = [2, 3, 5, 7, 11, 13];
    let mut previous = vec![1u64; probes.len()];
    let mut at_two = Vec::new();
    for k in 1..=4 {
        let r = unbounded_realization(k, &probes, Limits::default()).unwrap();
        assert!(r.all_verdicts_hold());
        for (i, p) in probes.iter().enumerate() {
            let d = r.local_degrees[p];
            assert!(d >= previous[i], "local degree at {p} dropped at depth {k}");
            previous[i] = d;
        }
        at_two.push(r.local_degrees[&2]);
    }
    assert_eq!(at_two, vec![2, 6, 30, 330]);
}

#[test]
fn bounded_depth_three() {
    let r = bounded_realization(3, &[2, 3, 5], &[7, 13], Limits::default()).unwrap();
    assert_eq!(r.compositum.degree(), 120);
    assert_eq!(r.local_degrees[&2], 1);
    assert_eq!(r.roots_of_unity, 2);
    assert!(r.all_verdicts_hold(), "{:?}", r.verdicts);
    let family: Vec<_> = r
        .components
        .iter()
        .map(|c| (c.label.clone(), period_minimal_polynomial(&c.field).unwrap()))
        .collect();
    let scan = index_scan(&family, 2, r.claimed_bounds[&2], 0).unwrap();
    assert!(scan.refutation_witnesses.is_empty());
    let u = unbounded_realization(3, &[], Limits::default()).unwrap();
    assert!(u.roots_of_unity >= 22);
}

#[test]
fn lambda_elements_have_squarefree_predecessors() {
    for lp in splitfield::realizations::lambda_primes(60) {
        assert!(splitfield::arith::is_prime(lp.q));
        let mut n = lp.q - 1;
        let mut d = 2;
        while d * d <= n {
            assert_ne!(n % (d * d), 0, "{}", lp.q);
            while n % d == 0 {
                n /= d;
            }
            d += 1;
        }
        assert_eq!(lp.factors_of_q_minus_1.iter().product::<u64>(), lp.q - 1);
    }
}

#[test]
fn truncations_up_to_depth_five() {
    let lim = Limits::default();
    let mut last = [1u64; 3];
    for k in 1..=5 {
        let u = unbounded_realization(k, &[2, 3, 5], lim).unwrap();
        assert_eq!(u.compositum.degree(), u.expected_degree);
        let q_k = *u.lambda_primes.last().unwrap() as u128;
        assert!(u.roots_of_unity >= 2 * q_k);
        for (i, p) in [2u64, 3, 5].iter().enumerate() {
            assert!(u.local_degrees[p] >= last[i]);
            last[i] = u.local_degrees[p];
        }
    }
    for k in 1..=3 {
        let b = bounded_realization(k, &[], &[], lim).unwrap();
        assert!(b.all_verdicts_hold(), "{:?}", b.verdicts);
        assert_eq!(b.roots_of_unity, 2);
        assert_eq!(b.compositum.degree(), b.expected_degree);
    }
}
