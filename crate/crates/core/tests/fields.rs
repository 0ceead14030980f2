use proptest::prelude::*;
use splitfield::arith::{gcd, is_prime, lcm, primes_up_to};
use splitfield::{AbelianField, Limits, Subgroup, UnitGroup};

fn lim() -> Limits {
    Limits::default()
}

fn random_field(m: u64, gens: &[u64]) -> AbelianField {
    let g = UnitGroup::new(m, lim()).unwrap();
    let gens: Vec<u128> = gens.iter().map(|&x| x % m).filter(|&x| gcd(x, m) == 1).map(u128::from).collect();
    AbelianField::fixed_field(Subgroup::closure(&g, &gens).unwrap()).unwrap()
}

#[test]
fn efg_equals_degree() {
    let primes = primes_up_to(100);
    for m in (1..=500u64).step_by(7) {
        for x in [2u64, 3, 5, 11] {
            let l = random_field(m, &[x]);
            for &p in &primes {
                let s = l.splitting_data(p).unwrap();
                assert_eq!(s.e * s.f * s.g, l.degree(), "{l} at {p}");
                assert_eq!(s.local_degree, s.e * s.f);
            }
        }
    }
}

#[test]
fn cyclotomic_local_degree_is_order_of_p() {
    for m in 1..=300u64 {
        let l = AbelianField::cyclotomic(m, lim()).unwrap();
        let g = UnitGroup::new(m, lim()).unwrap();
        for p in primes_up_to(50).into_iter().filter(|p| m % p != 0) {
            assert_eq!(l.local_degree(p).unwrap(), g.element_order(p % m).unwrap(), "m = {m}, p = {p}");
        }
    }
}

#[test]
fn roots_of_unity_are_maximal() {
    for m in (3..=120u64).step_by(3) {
        for x in [1u64, 2, 5, 7] {
            let l = random_field(m, &[x]);
            let n = l.roots_of_unity().unwrap() as u64;
            assert!(l.contains(&AbelianField::cyclotomic(n, lim()).unwrap()).unwrap());
            let c = l.conductor() as u64;
            for r in primes_up_to(2 * c).into_iter().filter(|r| (2 * c) % (n * r) == 0) {
                assert!(!l.contains(&AbelianField::cyclotomic(n * r, lim()).unwrap()).unwrap(), "{l}: {n} * {r}");
            }
        }
    }
}

proptest! {
    #[test]
    fn compositum_degree_formula(m1 in 1u64..=200, m2 in 1u64..=200, a in 1u64..200, b in 1u64..200) {
        let x = random_field(m1, &[a]);
        let y = random_field(m2, &[b]);
        let join = x.compositum(&y).unwrap();
        let meet = x.intersection(&y).unwrap();
        prop_assert_eq!(join.degree() * meet.degree(), x.degree() * y.degree());
        prop_assert!(join.contains(&x).unwrap() && join.contains(&y).unwrap());
        prop_assert!(x.contains(&meet).unwrap() && y.contains(&meet).unwrap());
        if x.linearly_disjoint(&y).unwrap() {
            prop_assert_eq!(join.degree(), x.degree() * y.degree());
        }
    }

    #[test]
    fn unramified_local_degrees_combine_by_lcm(m1 in 1u64..=200, m2 in 1u64..=200, a in 1u64..200, b in 1u64..200, p in 2u64..60) {
        prop_assume!(is_prime(p) && m1 % p != 0 && m2 % p != 0);
        let x = random_field(m1, &[a]);
        let y = random_field(m2, &[b]);
        let join = x.compositum(&y).unwrap();
        prop_assert_eq!(
            join.local_degree(p).unwrap(),
            lcm(x.local_degree(p).unwrap(), y.local_degree(p).unwrap())
        );
    }

    #[test]
    fn canonical_form_is_stable(m in 1u64..=150, k in 1u64..=4, a in 1u64..150) {
        let l = random_field(m, &[a]);
        let big = UnitGroup::new(m * k, lim()).unwrap();
        let lifted = AbelianField::fixed_field(l.fixing_subgroup().preimage(&big).unwrap()).unwrap();
        prop_assert_eq!(&lifted, &l);
        let again = AbelianField::from_generators(l.conductor(), &l.fixing_subgroup().generators(), lim()).unwrap();
        prop_assert_eq!(again, l);
    }
}
