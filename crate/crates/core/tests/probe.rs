#[test]
fn probe_p1p3() {
    use cyop_core::exact::scalar::{rat, ratio};
    use cyop_core::frobenius::holomorphic_solution;
    use cyop_core::transforms::{small_family_raw_probe, SmallFamily};
    use cyop_core::{PowerSeries, Rational};
    let order = 10;
    let (a, d, e) = (rat(3), rat(2), rat(1));
    let (al, be) = (ratio(1, 5), ratio(2, 5));
    let delta = &al * &al + &be * &be - &al - &be;
    let p1 = small_family_raw_probe(SmallFamily::P1, &[a.clone(), d.clone(), e.clone(), al.clone(), be.clone()]).unwrap();
    let y = holomorphic_solution(&p1, order).unwrap();
    let c_claim = &d * (&delta - rat(1)) / &delta;
    let variants: Vec<(&str, Rational, Rational, Rational)> = vec![
        ("claimed", -(&d + &a * &delta), c_claim.clone(), e.clone()),
        ("pre +", (&d + &a * &delta), c_claim.clone(), e.clone()),
        ("c=d(D+1)/D", -(&d + &a * &delta), &d * (&delta + rat(1)) / &delta, e.clone()),
        ("e->-e", -(&d + &a * &delta), c_claim.clone(), -&e),
        ("e->e*D", -(&d + &a * &delta), c_claim.clone(), &e * &delta),
    ];
    for (label, pre1, c3, e3) in variants {
        let mut pre = PowerSeries::zero_series(order);
        pre.set_coeff(0, delta.clone());
        pre.set_coeff(1, pre1);
        let z = pre.mul(&y).scale(&delta.recip());
        let p3 = small_family_raw_probe(SmallFamily::P3, &[c3, d.clone(), e3, &al + rat(1), &be + rat(1)]).unwrap();
        println!("P3 {label}: zero = {}", p3.apply_series(&z).is_zero_series());
    }
}
