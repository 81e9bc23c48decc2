mod common;

use common::*;
use proptest::prelude::*;
use uclab::distributions::{
    empirical_error, make_dist, true_error, LabeledAtom, LabeledDist, Sample,
};
use uclab::geometry::{
    angle_from_turns, g_coordinate, h_coordinate, Angle, Closure, Label, Semicircle,
};
use uclab::oracles2d::*;
use uclab::{Error, Rational};

fn turns(n: i128, d: i128) -> Angle {
    angle_from_turns(n, d).unwrap()
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn i0() -> Semicircle {
    Semicircle::left_open(Angle::ZERO)
}

#[test]
fn antipodal_atom_pins_the_version_space() {
    let d = make_dist(vec![
        LabeledAtom::at_angle(turns(1, 4), Label::Pos, q(1, 2)),
        LabeledAtom::at_angle(turns(3, 4), Label::Neg, q(1, 2)),
    ])
    .unwrap();
    let s = Sample::from_counts(&d, &[1, 0]).unwrap();
    let w = worst_consistent_error(&s, &d, &i0()).unwrap();
    assert_eq!(w.error, q(0, 1));
    assert_eq!(
        brute_worst_consistent(&d, &s, Closure::LeftOpenRightClosed),
        q(0, 1)
    );
}

#[test]
fn unseen_neighbour_can_be_dropped() {
    let d = make_dist(vec![
        LabeledAtom::at_angle(turns(1, 4), Label::Pos, q(1, 2)),
        LabeledAtom::at_angle(turns(3, 8), Label::Pos, q(1, 2)),
    ])
    .unwrap();
    let s = Sample::from_counts(&d, &[1, 0]).unwrap();
    let w = worst_consistent_error(&s, &d, &i0()).unwrap();
    assert_eq!(w.error, q(1, 2));
    let witness = w.arcs[0].representative();
    let h = Semicircle::left_open(witness);
    assert_eq!(true_error(&d, &h).unwrap(), q(1, 2));
    assert_eq!(empirical_error(&s, &d, &h).unwrap(), q(0, 1));
    // Shifts just below 7/8 turn keep 1/4 and drop 3/8; 7/8 itself keeps both.
    assert!(w
        .arcs
        .iter()
        .any(|a| a.contains(&turns(7, 8).checked_sub(&turns(1, 1000)).unwrap())));
    assert!(!w.arcs.iter().any(|a| a.contains(&turns(7, 8))));
}

#[test]
fn full_support_sample_gives_zero() {
    let d = LabeledDist::uniform_circle(12, &i0()).unwrap();
    let s = Sample::full_support(&d);
    assert_eq!(
        worst_consistent_error(&s, &d, &i0()).unwrap().error,
        q(0, 1)
    );
    assert_eq!(
        VersionSpaceIndex::new(&d, &i0())
            .unwrap()
            .worst_consistent_error(&s),
        q(0, 1)
    );
}

#[test]
fn non_realizable_is_rejected() {
    let d = make_dist(vec![LabeledAtom::at_angle(
        Angle::ZERO,
        Label::Pos,
        q(1, 1),
    )])
    .unwrap();
    let s = Sample::full_support(&d);
    assert!(matches!(
        worst_consistent_error(&s, &d, &i0()),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn proportional_sample_has_zero_deviation() {
    let d = LabeledDist::uniform_circle(16, &i0()).unwrap();
    let s = Sample::from_counts(&d, &[3; 16]).unwrap();
    let r = sup_deviation(&s, &d, None).unwrap();
    assert_eq!(r.max_dev, q(0, 1));
    assert_eq!(r.argmax_arcs.len(), 1);
    assert_eq!(r.argmax_arc.start, r.argmax_arc.end);
}

#[test]
fn two_positive_atoms_sampled() {
    let d = LabeledDist::uniform_circle(4, &i0()).unwrap();
    assert_eq!(
        d.labels(),
        &[Label::Neg, Label::Pos, Label::Pos, Label::Neg]
    );
    let s = Sample::from_counts(&d, &[0, 2, 2, 0]).unwrap();
    let r = sup_deviation(&s, &d, None).unwrap();
    assert_eq!(Some(r.max_dev), brute_sup_deviation(&d, &s, None));
    assert_eq!(r.max_dev, q(0, 1));
    assert_eq!(r.er_d_at_max - r.er_s_at_max, r.max_dev);
}

#[test]
fn supremum_dominates_random_shifts() {
    let mut r = rng(11);
    for _ in 0..20 {
        let d = random_dist(&mut r, 30, None);
        let s = random_sample(&mut r, &d, 30);
        let rep = sup_deviation(&s, &d, None).unwrap();
        for _ in 0..100 {
            let h = random_target(&mut r, Closure::LeftOpenRightClosed);
            let dev = true_error(&d, &h).unwrap() - empirical_error(&s, &d, &h).unwrap();
            assert!(rep.max_dev >= dev);
        }
    }
}

#[test]
fn empty_band_is_reported() {
    let d = LabeledDist::uniform_circle(4, &i0()).unwrap();
    let s = Sample::full_support(&d);
    // Disagreement wedges are symmetric, so every error here is 0, 1/2 or 1.
    assert!(sup_deviation(&s, &d, Some(2)).is_ok());
    assert!(matches!(
        sup_deviation(&s, &d, Some(3)),
        Err(Error::EmptyBand(3))
    ));
}

#[test]
fn critical_radii_examples() {
    let d = LabeledDist::uniform_circle(8, &i0()).unwrap();
    let c = critical_radii(&d, q(1, 4), &i0()).unwrap();
    assert_eq!(c.t_plus, Some(turns(1, 8)));
    let c = critical_radii(&d, q(1, 1), &i0()).unwrap();
    assert_eq!(c.t_plus, Some(turns(1, 2)));
    assert!(critical_radii(&d, q(0, 1), &i0()).is_err());
    assert_eq!(critical_radii(&d, q(3, 2), &i0()).unwrap().t_plus, None);

    // A point mass at pi enters G only at the full half turn and H immediately.
    let d = make_dist(vec![LabeledAtom::at_angle(
        turns(1, 2),
        Label::Pos,
        q(1, 1),
    )])
    .unwrap();
    let c = critical_radii(&d, q(1, 4), &i0()).unwrap();
    assert_eq!(c.t_plus, Some(turns(1, 2)));
    assert_eq!(c.t_minus, Some(Angle::ZERO));
}

#[test]
fn critical_wedge_masses() {
    let mut r = rng(5);
    for _ in 0..200 {
        let d = random_dist(&mut r, 20, None);
        let reference = random_target(&mut r, Closure::LeftOpenRightClosed);
        let eps = [q(1, 16), q(1, 8), q(1, 4), q(1, 2), q(1, 1)][r.random_range(0..5)];
        let c = critical_radii(&d, eps, &reference).unwrap();
        let tp = c.t_plus.unwrap();
        assert!(g_wedge_mass(&d, &reference, &tp, false).unwrap() >= eps);
        assert!(g_wedge_mass(&d, &reference, &tp, true).unwrap() <= eps);
        let tm = c.t_minus.unwrap();
        if !tm.is_zero() {
            assert!(h_wedge_mass(&d, &reference, &tm, true).unwrap() <= eps);
        }
    }
}

use rand::Rng;

fn rotate_dist(d: &LabeledDist, by: &Angle) -> LabeledDist {
    make_dist(
        d.atoms()
            .into_iter()
            .map(|a| LabeledAtom::at_angle(d_angle(&a).rotated_by(by).unwrap(), a.label, a.mass))
            .collect(),
    )
    .unwrap()
}

fn d_angle(a: &LabeledAtom) -> Angle {
    match a.location {
        uclab::distributions::Location::Angle(t) => t,
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn sweep_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_dist(&mut r, 25, None);
        let s = random_sample(&mut r, &d, 25);
        let band = if r.random_bool(0.5) { Some(r.random_range(1..5)) } else { None };
        let fast = sup_deviation(&s, &d, band).ok().map(|x| x.max_dev);
        prop_assert_eq!(fast, brute_sup_deviation(&d, &s, band));

        let closure = if r.random_bool(0.5) { Closure::LeftOpenRightClosed } else { Closure::LeftClosedRightOpen };
        let target = random_target(&mut r, closure);
        let d = random_dist(&mut r, 25, Some(&target));
        let s = random_sample(&mut r, &d, 25);
        let w = worst_consistent_error(&s, &d, &target).unwrap();
        prop_assert_eq!(w.error, brute_worst_consistent(&d, &s, closure));
        for arc in &w.arcs {
            let h = Semicircle::new(arc.representative(), closure);
            prop_assert_eq!(true_error(&d, &h).unwrap(), w.error);
            prop_assert_eq!(empirical_error(&s, &d, &h).unwrap(), q(0, 1));
        }
        if closure == Closure::LeftOpenRightClosed {
            prop_assert_eq!(VersionSpaceIndex::new(&d, &target).unwrap().worst_consistent_error(&s), w.error);
        }
    }

    #[test]
    fn rotation_equivariance(seed in any::<u64>(), num in 0i128..720) {
        let mut r = rng(seed);
        let by = turns(num, 720);
        let target = random_target(&mut r, Closure::LeftOpenRightClosed);
        let d = random_dist(&mut r, 25, Some(&target));
        let s = random_sample(&mut r, &d, 25);
        let rd = rotate_dist(&d, &by);
        let rs = Sample::from_counts(&rd, &s.to_counts()).unwrap();
        let rt = Semicircle::left_open(target.alpha.rotated_by(&by).unwrap());

        let a = worst_consistent_error(&s, &d, &target).unwrap();
        let b = worst_consistent_error(&rs, &rd, &rt).unwrap();
        prop_assert_eq!(a.error, b.error);
        let rotated: Vec<ShiftArc> = a.arcs.iter()
            .map(|x| ShiftArc { start: x.start.rotated_by(&by).unwrap(), end: x.end.rotated_by(&by).unwrap() })
            .collect();
        for arc in &rotated {
            prop_assert!(b.arcs.iter().any(|y| y.contains(&arc.representative())));
        }

        let a = sup_deviation(&s, &d, None).unwrap();
        let b = sup_deviation(&rs, &rd, None).unwrap();
        prop_assert_eq!(a.max_dev, b.max_dev);
    }

    #[test]
    fn localization(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_dist(&mut r, 20, None);
        let reference = random_target(&mut r, Closure::LeftOpenRightClosed);
        let eps = [q(1, 16), q(1, 8), q(1, 4), q(1, 2), q(1, 1)][r.random_range(0..5)];
        let base = true_error(&d, &reference).unwrap();
        let tp = critical_radii(&d, eps, &reference).unwrap().t_plus.unwrap();
        for alpha in candidate_shifts(&d) {
            let shift = alpha.checked_sub(&reference.alpha).unwrap();
            if shift >= tp && shift <= Angle::HALF_TURN {
                let e = true_error(&d, &Semicircle::left_open(alpha)).unwrap();
                prop_assert!(e >= eps - base);
            }
        }
    }

    #[test]
    fn band_confinement(seed in any::<u64>(), i in 3u32..7) {
        let mut r = rng(seed);
        let reference = random_target(&mut r, Closure::LeftOpenRightClosed);
        let mut d = random_dist(&mut r, 30, Some(&reference));
        if r.random_bool(0.5) {
            // Flip one light atom to add a little label noise.
            let mut atoms = d.atoms();
            let j = r.random_range(0..atoms.len());
            atoms[j].label = -atoms[j].label;
            d = make_dist(atoms).unwrap();
        }
        let eps = band_epsilon(i);
        let base = true_error(&d, &reference).unwrap();
        let upper = q(2, 1i128 << i);
        prop_assume!(base < eps - upper);
        let radii = critical_radii(&d, eps, &reference).unwrap();
        let tp = radii.t_plus.unwrap();
        let tm = radii.t_minus.unwrap();
        let mut shifts = candidate_shifts(&d);
        shifts.extend((0..64).map(|j| reference.alpha.rotated_by(&turns(j, 64)).unwrap()));
        for alpha in shifts {
            let h = Semicircle::left_open(alpha);
            let e = true_error(&d, &h).unwrap();
            if !(e > upper / 2 && e <= upper) {
                continue;
            }
            let shift = alpha.checked_sub(&reference.alpha).unwrap();
            let upper_half = shift <= Angle::HALF_TURN;
            for k in 0..d.len() {
                let theta = d.angle(k).unwrap();
                if h.classify(&theta) == reference.classify(&theta) {
                    continue;
                }
                let rel = theta.checked_sub(&reference.alpha).unwrap();
                if upper_half {
                    prop_assert!(g_coordinate(&rel) < tp);
                } else {
                    // Shifts below the reference always disagree with it at the two
                    // boundary directions, so the H side is confined to H_{t-}.
                    prop_assert!(h_coordinate(&rel) < tm);
                }
            }
        }
    }
}
