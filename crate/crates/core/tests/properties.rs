use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triram::constructors::{realize_branch_points, replay};
use triram::field::{Field, FieldElement};
use triram::io::{to_json, MapFile, ProfileReport};
use triram::poly::{
    factor_finite, poly_gcd, resultant, roots_in_field, squarefree_decomposition, Polynomial,
};
use triram::projline::{mobius_from_three, moduli_coordinates, Mobius, ProjPoint};
use triram::ramification::{ramification_profile, RamificationProfile, RationalMap};
use triram::weierstrass::{branch_divisor, fiber_analysis, j_invariant, rh_genus, singular_locus};
use triram::Error;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field(desc: &str) -> Field {
    Field::parse(desc).unwrap()
}

fn poly(k: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    Polynomial::new(k, (0..=deg).map(|_| k.random(rng)).collect())
}

fn nonzero_poly(k: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    loop {
        let p = poly(k, rng.gen_range(0..=max_deg), rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn mobius(k: &Field, rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        if let Ok(m) = Mobius::from_values(
            k,
            [k.random(rng), k.random(rng), k.random(rng), k.random(rng)],
        ) {
            return m;
        }
    }
}

fn point(k: &Field, rng: &mut ChaCha8Rng) -> ProjPoint {
    if rng.gen_ratio(1, 8) {
        ProjPoint::infinity(k)
    } else {
        ProjPoint::from_value(k, k.random(rng))
    }
}

fn random_map(k: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> Option<RationalMap> {
    let num = poly(k, rng.gen_range(0..=max_deg), rng);
    let den = poly(k, rng.gen_range(0..=max_deg), rng);
    RationalMap::new(num, den).ok()
}

const SMALL: [&str; 6] = ["F2", "F3", "F5", "F7", "F2[w]/(w^2+w+1)", "F3[a]/(a^2+1)"];
const ALL: [&str; 8] = [
    "Q",
    "F5",
    "F101",
    "F2[w]/(w^2+w+1)",
    "F7[a]/(a^3+2)",
    "Q[s]/(s^2-2)",
    "F5(u)",
    "Q(u)",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        for desc in ALL {
            let k = field(desc);
            for _ in 0..40 {
                let (a, b, c) = (k.random(&mut r), k.random(&mut r), k.random(&mut r));
                prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
                prop_assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
                prop_assert_eq!(
                    k.mul(&a, &k.add(&b, &c)),
                    k.add(&k.mul(&a, &b), &k.mul(&a, &c))
                );
                prop_assert!(k.add(&a, &k.neg(&a)).is_zero());
                if !a.is_zero() {
                    prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
                }
                let canon = k.canonical(&a).unwrap();
                prop_assert_eq!(k.canonical(&canon).unwrap(), canon);
            }
        }
    }

    #[test]
    fn gcd_of_common_multiples(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(SMALL[r.gen_range(0..SMALL.len())]);
        let f = poly(&k, r.gen_range(0..=12), &mut r);
        let g = poly(&k, r.gen_range(0..=12), &mut r);
        let h = nonzero_poly(&k, 6, &mut r);
        let lhs = poly_gcd(&(&f * &h), &(&g * &h)).unwrap();
        let rhs = &h.monic() * &poly_gcd(&f, &g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_reassembles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(SMALL[r.gen_range(0..SMALL.len())]);
        let a = nonzero_poly(&k, 4, &mut r);
        let b = nonzero_poly(&k, 3, &mut r);
        let f = &(&a * &b) * &(&b * &b);
        let d = squarefree_decomposition(&f).unwrap();
        prop_assert_eq!(d.reassemble(), f);
        let radical = d.radical();
        prop_assert_eq!(poly_gcd(&radical, &radical.derivative()).unwrap().degree(), Some(0));
    }

    #[test]
    fn factorization_is_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(SMALL[r.gen_range(0..SMALL.len())]);
        let f = nonzero_poly(&k, 12, &mut r);
        let factors = factor_finite(&f).unwrap();
        let mut product = Polynomial::one(&k);
        for (m, e) in &factors {
            prop_assert!(m.is_monic());
            product = &product * &m.pow(*e as u64);
            let deg = m.degree().unwrap();
            if (2..=3).contains(&deg) {
                prop_assert!(roots_in_field(m).unwrap().is_empty());
            }
        }
        prop_assert_eq!(product, f.monic());
    }

    #[test]
    fn resultant_detects_common_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(["F2", "F3", "F5", "Q"][r.gen_range(0..4)]);
        let mut f = nonzero_poly(&k, 5, &mut r);
        let mut g = nonzero_poly(&k, 5, &mut r);
        if r.gen_bool(0.5) {
            let h = nonzero_poly(&k, 2, &mut r);
            f = &f * &h;
            g = &g * &h;
        }
        let common = poly_gcd(&f, &g).unwrap().degree() > Some(0);
        prop_assert_eq!(resultant(&f, &g).unwrap().is_zero(), common);
    }

    #[test]
    fn mobius_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(["Q", "F101", "F2[w]/(w^2+w+1)", "F5(u)"][r.gen_range(0..4)]);
        let (phi, psi) = (mobius(&k, &mut r), mobius(&k, &mut r));
        prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
        let p = point(&k, &mut r);
        prop_assert_eq!(
            phi.compose(&psi).unwrap().apply(&p).unwrap(),
            phi.apply(&psi.apply(&p).unwrap()).unwrap()
        );
    }

    #[test]
    fn normalization_is_unique(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(["Q", "F101", "F7[a]/(a^3+2)"][r.gen_range(0..3)]);
        let pts: Vec<ProjPoint> = {
            let mut v: Vec<ProjPoint> = Vec::new();
            while v.len() < 3 {
                let p = point(&k, &mut r);
                if !v.contains(&p) { v.push(p); }
            }
            v
        };
        let m = mobius_from_three(&pts[0], &pts[1], &pts[2]).unwrap();
        let phi = mobius(&k, &mut r);
        let moved: Vec<_> = pts.iter().map(|p| phi.apply(p).unwrap()).collect();
        let n = mobius_from_three(&moved[0], &moved[1], &moved[2]).unwrap();
        // n ∘ φ fixes the normal form, so it must be m itself
        prop_assert_eq!(n.compose(&phi).unwrap(), m);
    }

    #[test]
    fn moduli_coordinates_are_invariant(seed in any::<u64>(), n in 4usize..7) {
        let mut r = rng(seed);
        let k = field(["Q", "F101", "F5(u)"][r.gen_range(0..3)]);
        let mut pts: Vec<ProjPoint> = Vec::new();
        while pts.len() < n {
            let p = point(&k, &mut r);
            if !pts.contains(&p) { pts.push(p); }
        }
        let phi = mobius(&k, &mut r);
        let moved: Vec<_> = pts.iter().map(|p| phi.apply(p).unwrap()).collect();
        prop_assert_eq!(moduli_coordinates(&pts).unwrap(), moduli_coordinates(&moved).unwrap());
    }

    #[test]
    fn riemann_hurwitz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(["F2", "F5", "F7", "F11", "F2[w]/(w^2+w+1)", "Q"][r.gen_range(0..6)]);
        let Some(f) = random_map(&k, 6, &mut r) else { return Ok(()) };
        let p = match ramification_profile(&f) {
            Ok(p) => p,
            Err(Error::Inseparable) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        check_rh(&p)?;
        let report = ProfileReport::from_profile(&p);
        prop_assert_eq!(report.to_profile().unwrap(), p);
    }

    #[test]
    fn indices_multiply_under_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(["F7", "F11", "F13"][r.gen_range(0..3)]);
        let (Some(f), Some(g)) = (random_map(&k, 3, &mut r), random_map(&k, 3, &mut r)) else {
            return Ok(());
        };
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.degree(), f.degree() * g.degree());
        let (Ok(pf), Ok(pg), Ok(pfg)) = (ramification_profile(&f), ramification_profile(&g), ramification_profile(&fg)) else {
            return Ok(());
        };
        let q = k.size_u64().unwrap();
        let all = std::iter::once(ProjPoint::infinity(&k))
            .chain((0..q).map(|i| ProjPoint::from_value(&k, k.element_at(i))));
        for x in all {
            let gx = g.eval(&x).unwrap();
            prop_assert_eq!(index(&pfg, &x), index(&pg, &x) * index(&pf, &gx), "at {}", x);
        }
    }

    #[test]
    fn maps_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(ALL[r.gen_range(0..ALL.len())]);
        let Some(f) = random_map(&k, 5, &mut r) else { return Ok(()) };
        let text = to_json(&MapFile::from_map(&f));
        let g = MapFile::parse(&text).unwrap().to_map().unwrap();
        prop_assert_eq!(to_json(&MapFile::from_map(&g)), text);
        prop_assert_eq!(g, f);
    }
}

fn index(p: &RamificationProfile, x: &ProjPoint) -> usize {
    p.entries
        .iter()
        .find(|e| e.point.contains(x))
        .map_or(1, |e| e.e)
}

fn check_rh(p: &RamificationProfile) -> Result<(), TestCaseError> {
    let target = 2 * p.degree - 2;
    let different: usize = p
        .entries
        .iter()
        .map(|x| x.residue_degree * x.different_exponent)
        .sum();
    prop_assert_eq!(different, target);
    if p.all_tame {
        prop_assert_eq!(p.tame_rh_sum(), target);
    }
    if p.triple_only {
        prop_assert_eq!(p.geometric_ramification_count(), p.degree - 1);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realized_covers(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let k = field(["F5", "F7", "F11", "F13", "F2[w]/(w^2+w+1)"][r.gen_range(0..5)]);
        let mut ys: Vec<ProjPoint> = Vec::new();
        while ys.len() < n {
            let p = point(&k, &mut r);
            if !ys.contains(&p) { ys.push(p); }
        }
        let seed = r.gen_range(0..100);
        let trace = realize_branch_points(&ys, &k, seed).unwrap();
        prop_assert_eq!(trace.map.degree(), 3usize.pow(n as u32));
        prop_assert!(trace.profile.triple_only);
        check_rh(&trace.profile)?;
        let top = trace.field().clone();
        for y in &ys {
            prop_assert!(trace.profile.is_branch_point(&y.lift(&top).unwrap()));
        }
        prop_assert_eq!(replay(&trace).unwrap(), trace.map.clone());
        prop_assert_eq!(realize_branch_points(&ys, &k, seed).unwrap(), trace);
    }

    #[test]
    fn weierstrass_fibers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(["Q", "F5", "F7", "F13", "F2"][r.gen_range(0..5)]);
        let t = FieldElement::new(k.clone(), k.random(&mut r));
        let divisor = branch_divisor(&t).unwrap();
        let finite: usize = divisor.iter().filter(|(p, _)| !p.is_infinity()).map(|(_, m)| m).sum();
        prop_assert_eq!(finite, 2);
        prop_assert_eq!(divisor.len() == 3, !t.is_zero());
        prop_assert_eq!(singular_locus(&t).unwrap().is_smooth(), j_invariant(&t).is_ok());
        if !t.is_zero() {
            prop_assert!(j_invariant(&t).unwrap().is_zero());
            prop_assert_eq!(rh_genus(&t).unwrap().geometric_genus, 1);
            for (c, _) in &divisor {
                let f = fiber_analysis(&t, c).unwrap();
                prop_assert!(f.points.len() == 1 && f.points[0].e == 3);
            }
        }
        let c = point(&k, &mut r);
        prop_assert_eq!(fiber_analysis(&t, &c).unwrap().total_degree(), 3);
    }
}

#[test]
fn characteristic_is_consistent() {
    for p in [2u64, 3, 5, 7, 101] {
        let k = Field::prime(p).unwrap();
        assert!(k.from_u64(p).is_zero());
        assert!((1..p).all(|n| !k.from_u64(n).is_zero()));
    }
}

#[test]
fn adjoined_root_satisfies_its_modulus() {
    for desc in [
        "F2[w]/(w^2+w+1)",
        "F7[a]/(a^3+2)",
        "Q[s]/(s^2-2)",
        "F2[w]/(w^4+w+1)[v]/(v^2+v+w^3)",
    ] {
        let k = field(desc);
        let g = k.generator().unwrap();
        let triram::field::FieldKind::Extension { base, modulus, .. } = k.kind() else {
            panic!("{desc} is an extension")
        };
        let m = Polynomial::new(base, modulus.clone()).lift(&k).unwrap();
        assert!(m.eval(&g).is_zero(), "{desc}");
    }
}
