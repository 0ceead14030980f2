use num_traits::ToPrimitive;
use splitfield::period::period_minimal_polynomial;
use splitfield::{AbelianField, Error, Limits, Subgroup, UnitGroup};

/// `sum_{h in H} exp(2 pi i h / m)` in floating point.
fn numeric_period(field: &AbelianField) -> (f64, f64) {
    let m = field.conductor() as f64;
    field
        .fixing_subgroup()
        .enumerate()
        .unwrap()
        .iter()
        .fold((0.0, 0.0), |(re, im), &h| {
            let t = std::f64::consts::TAU * h as f64 / m;
            (re + t.cos(), im + t.sin())
        })
}

fn eval(coeffs: &[f64], z: (f64, f64)) -> (f64, f64) {
    coeffs.iter().rev().fold((0.0, 0.0), |(re, im), &c| {
        (re * z.0 - im * z.1 + c, re * z.1 + im * z.0)
    })
}

#[test]
fn period_polynomials_vanish_at_the_period() {
    let mut degenerate = 0;
    for m in 3..=60u64 {
        let g = UnitGroup::new(m, Limits::default()).unwrap();
        for x in 1..m {
            let Ok(h) = Subgroup::closure(&g, &[x as u128]) else { continue };
            let l = AbelianField::fixed_field(h).unwrap();
            if l.degree() > 12 {
                continue;
            }
            match period_minimal_polynomial(&l) {
                Ok(f) => {
                    let c: Vec<f64> = f.coefficients().iter().map(|c| c.to_f64().unwrap()).collect();
                    let (re, im) = eval(&c, numeric_period(&l));
                    let scale: f64 = c.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
                    assert!((re * re + im * im).sqrt() < 1e-8 * scale, "{l}: {f}");
                }
                Err(Error::PeriodNotPrimitive(..)) => degenerate += 1,
                Err(e) => panic!("{l}: {e}"),
            }
        }
    }
    eprintln!("degenerate periods: {degenerate}");
}

#[test]
fn period_polynomial_factors_like_the_prime_splits() {
    use splitfield::arith::primes_up_to;
    use splitfield::dedekind::{dedekind_index_test_probed, Irreducibility};
    for m in [7u64, 11, 13, 15, 21, 28, 31, 35, 39, 45, 56, 63] {
        let g = UnitGroup::new(m, Limits::default()).unwrap();
        for x in [2u64, 4, 8, 11, 13] {
            let Ok(h) = Subgroup::closure(&g, &[x as u128]) else { continue };
            let l = AbelianField::fixed_field(h).unwrap();
            let f = period_minimal_polynomial(&l).unwrap();
            assert_eq!(f.degree(), Some(l.degree() as usize));
            let witness = primes_up_to(200)
                .into_iter()
                .filter(|p| l.conductor() % *p as u128 != 0)
                .find_map(|p| {
                    let r = dedekind_index_test_probed(&f, p, 0, Irreducibility::Probed).unwrap();
                    (!r.index_divisible).then_some((p, r))
                })
                .expect("some prime is index-free");
            let (p, r) = witness;
            let s = l.splitting_data(p).unwrap();
            assert_eq!(r.factors.len() as u64, s.g, "{l} at {p}");
            assert!(r.factors.iter().all(|fp| fp.factor.degree() == Some(s.f as usize) && fp.multiplicity == 1));
        }
    }
}
