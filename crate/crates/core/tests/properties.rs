//! Property suites for the per-module invariants: randomized algebra laws,
//! division identities, membership biconditionals, oracle agreement and the
//! presentation-independence of the duality invariant.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use serrecm::grade::koszul_grade;
use serrecm::oracle::{self, associated_primes, class_contains_prime, prime_mask_to_ideal};
use serrecm::vector::FreeVector;
use serrecm::{
    a_invariant, div_rem, ext_module, s_cm_oracle_sweep, s_height, FPModule, GradeValue, Ideal,
    Monomial, MonomialIdeal, MonomialOrder, PrimeField, Polynomial, QuotientRing, Ring,
    SerreClassSpec,
};

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(
        PrimeField::new(101).unwrap(),
        vars.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::GrevLex,
    )
    .unwrap()
}

fn qring(vars: &[&str]) -> QuotientRing {
    QuotientRing::polynomial(ring(vars))
}

fn cyclic(q: &QuotientRing, gens: &[&str]) -> FPModule {
    FPModule::cyclic(q, &Ideal::parse(q.base(), gens).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// core algebra: randomized laws
// ---------------------------------------------------------------------------

fn arb_poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), 0u64..101),
        0..=max_terms,
    )
}

fn build(r: &Arc<Ring>, raw: &[(Vec<u32>, u64)]) -> Polynomial {
    Polynomial::from_terms(
        r.clone(),
        raw.iter().map(|(e, c)| (Monomial::new(e.clone()), *c)).collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(fa in arb_poly(3, 3, 5), fb in arb_poly(3, 3, 5), fc in arb_poly(3, 3, 5)) {
        let r = ring(&["x", "y", "z"]);
        let (a, b, c) = (build(&r, &fa), build(&r, &fb), build(&r, &fc));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn monomial_order_laws(
        ea in prop::collection::vec(0u32..5, 3),
        eb in prop::collection::vec(0u32..5, 3),
        ec in prop::collection::vec(0u32..5, 3),
    ) {
        use std::cmp::Ordering;
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block { split: 1 }] {
            let a = Monomial::new(ea.clone());
            let b = Monomial::new(eb.clone());
            let c = Monomial::new(ec.clone());
            // totality and antisymmetry
            let ab = order.cmp(&a, &b);
            prop_assert_eq!(ab.reverse(), order.cmp(&b, &a));
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // 1 is minimal
            let one = Monomial::one(3);
            prop_assert!(order.cmp(&a, &one) != Ordering::Less);
            // multiplicativity: a < b implies ac < bc
            if ab == Ordering::Less {
                prop_assert_eq!(order.cmp(&a.mul(&c).unwrap(), &b.mul(&c).unwrap()), Ordering::Less);
            }
        }
    }
}

#[test]
fn division_identity_thousand_cases() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let rand_poly = |rng: &mut ChaCha8Rng, terms: usize| {
        let raw: Vec<(Vec<u32>, u64)> = (0..terms)
            .map(|_| {
                (
                    (0..3).map(|_| rng.gen_range(0..=3u32)).collect(),
                    rng.gen_range(0..101u64),
                )
            })
            .collect();
        build(&r, &raw)
    };
    let mut checked = 0;
    while checked < 1000 {
        let f = rand_poly(&mut rng, 5);
        let k = rng.gen_range(1..=3usize);
        let divisors: Vec<Polynomial> = (0..k)
            .map(|_| loop {
                let g = rand_poly(&mut rng, 3);
                if !g.is_zero() {
                    break g;
                }
            })
            .collect::<Vec<_>>();
        let (q, rem) = div_rem(&f, &divisors).unwrap();
        // identity f = sum q_i g_i + r
        let mut acc = rem.clone();
        for (qi, gi) in q.iter().zip(&divisors) {
            acc = acc.add(&qi.mul(gi).unwrap()).unwrap();
        }
        assert_eq!(acc, f);
        // no term of r divisible by a leading term of a divisor
        for t in rem.terms() {
            for g in &divisors {
                assert!(!g.leading().unwrap().mono.divides(&t.mono));
            }
        }
        // leading terms of the products never exceed the leading term of f
        if let Some(fl) = f.leading() {
            let order = r.order();
            for (qi, gi) in q.iter().zip(&divisors) {
                if let Some(pl) = qi.mul(gi).unwrap().leading() {
                    assert!(order.cmp(&pl.mono, &fl.mono) != std::cmp::Ordering::Greater);
                }
            }
        }
        checked += 1;
    }
}

// ---------------------------------------------------------------------------
// groebner: membership, intersection, colon, dimension
// ---------------------------------------------------------------------------

#[test]
fn normal_form_detects_membership() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pool = [
        vec!["x*y - z^2", "y^2"],
        vec!["x^2", "x*y"],
        vec!["x*y", "x*z"],
        vec!["x + y", "z^2"],
    ];
    for gens in &pool {
        let ideal = Ideal::parse(&r, gens).unwrap();
        for _ in 0..25 {
            // random member: sum of random multiples of the generators
            let mut member = Polynomial::zero(r.clone());
            for g in ideal.gens() {
                let raw: Vec<(Vec<u32>, u64)> = (0..2)
                    .map(|_| {
                        (
                            (0..3).map(|_| rng.gen_range(0..=2u32)).collect(),
                            rng.gen_range(0..101u64),
                        )
                    })
                    .collect();
                member = member.add(&build(&r, &raw).mul(g).unwrap()).unwrap();
            }
            assert!(ideal.contains_poly(&member));
        }
        // a monomial outside the radical is not a member
        let w = Polynomial::var(r.clone(), 2); // z
        if !ideal.radical_membership(&w).unwrap() {
            assert!(!ideal.contains_poly(&w));
        }
    }
}

#[test]
fn intersection_commutes_and_is_contained() {
    let r = ring(&["x", "y", "z"]);
    let pairs = [
        (vec!["x"], vec!["y", "z"]),
        (vec!["x*y"], vec!["x", "z"]),
        (vec!["x^2", "y"], vec!["y^2", "z"]),
    ];
    for (ga, gb) in &pairs {
        let a = Ideal::parse(&r, ga).unwrap();
        let b = Ideal::parse(&r, gb).unwrap();
        let ab = a.intersection(&b).unwrap();
        let ba = b.intersection(&a).unwrap();
        assert!(ab.equals(&ba));
        assert!(a.contains_ideal(&ab));
        assert!(b.contains_ideal(&ab));
    }
}

#[test]
fn colon_product_lands_inside() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..10 {
        let gens_i: Vec<String> = (0..2)
            .map(|_| {
                let raw: Vec<(Vec<u32>, u64)> = (0..2)
                    .map(|_| {
                        (
                            (0..3).map(|_| rng.gen_range(0..=2u32)).collect(),
                            rng.gen_range(1..101u64),
                        )
                    })
                    .collect();
                build(&r, &raw).to_string()
            })
            .collect();
        let gens_ref: Vec<&str> = gens_i.iter().map(|s| s.as_str()).collect();
        let i = match Ideal::parse(&r, &gens_ref) {
            Ok(v) if !v.is_zero_ideal() => v,
            _ => continue,
        };
        let j = Ideal::parse(&r, &["x*y", "z"]).unwrap();
        let (q, _) = i.colon(&j).unwrap();
        assert!(i.contains_ideal(&q.product(&j).unwrap()));
    }
}

#[test]
fn dimension_agrees_with_oracle_on_monomial_ideals() {
    // exhaustive sweep over monomial ideals in 3 vars with generators drawn
    // from a fixed low-degree pool, plus random 4-variable cases
    let r3 = ring(&["x", "y", "z"]);
    let pool: Vec<Monomial> = vec![
        Monomial::new(vec![1, 0, 0]),
        Monomial::new(vec![0, 1, 0]),
        Monomial::new(vec![1, 1, 0]),
        Monomial::new(vec![1, 0, 1]),
        Monomial::new(vec![0, 2, 1]),
        Monomial::new(vec![2, 0, 0]),
    ];
    for mask in 1u32..(1 << pool.len()) {
        let gens: Vec<Monomial> = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, m)| m.clone())
            .collect();
        let mi = MonomialIdeal::new(3, gens);
        let ideal = mi.to_ideal(&r3).unwrap();
        assert_eq!(ideal.dimension(), mi.dimension(), "dimension mismatch for {mi:?}");
        let q = QuotientRing::polynomial(r3.clone());
        let module = FPModule::cyclic(&q, &ideal).unwrap();
        assert_eq!(module.dimension().unwrap(), mi.dimension());
    }
}

// ---------------------------------------------------------------------------
// fpmodule: resolutions, Ext sensitivity, subquotient membership
// ---------------------------------------------------------------------------

#[test]
fn ext_vanishes_below_codimension_on_monomial_fixtures() {
    let q = qring(&["x", "y", "z"]);
    let free = FPModule::free(&q, 1);
    let fixtures = [
        vec!["x"],
        vec!["x", "y"],
        vec!["x*y"],
        vec!["x*y", "x*z"],
        vec!["x", "y", "z"],
        vec!["x^2", "x*y", "y^2"],
    ];
    for gens in &fixtures {
        let n = cyclic(&q, gens);
        let codim = 3 - n.dimension().unwrap();
        for i in 0..codim as usize {
            assert!(
                ext_module(i, &n, &free).unwrap().is_zero(),
                "Ext^{i} nonzero below codim for {gens:?}"
            );
        }
        assert!(
            !ext_module(codim as usize, &n, &free).unwrap().is_zero(),
            "Ext^codim zero for {gens:?}"
        );
    }
}

#[test]
fn subquotient_zero_iff_generators_inside_relations() {
    let r = ring(&["x", "y"]);
    let q = qring(&["x", "y"]);
    let e = FreeVector::basis(r.clone(), 1, 0);
    let x = e.mul_poly(&serrecm::parse_poly(&r, "x").unwrap()).unwrap();
    let x2 = e.mul_poly(&serrecm::parse_poly(&r, "x^2").unwrap()).unwrap();
    let y = e.mul_poly(&serrecm::parse_poly(&r, "y").unwrap()).unwrap();
    // gens inside span(rels): zero module (x^2 = x * x)
    let z = FPModule::subquotient(&q, &[0], &[x.clone(), x2.clone()], &[x.clone()]).unwrap();
    assert!(z.is_zero());
    // gens not inside span(rels): nonzero
    let nz = FPModule::subquotient(&q, &[0], &[x.clone(), y], &[x2]).unwrap();
    assert!(!nz.is_zero());
}

// ---------------------------------------------------------------------------
// serre-class: oracle agreement, minimality, graded coincidences
// ---------------------------------------------------------------------------

fn monomial_fixture_suite() -> Vec<(usize, MonomialIdeal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut out = Vec::new();
    for _ in 0..20 {
        let n = rng.gen_range(2..=4usize);
        let gens = rng.gen_range(1..=3);
        let monos: Vec<Monomial> = (0..gens)
            .map(|_| loop {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2u32)).collect();
                if e.iter().any(|&v| v > 0) {
                    break Monomial::new(e);
                }
            })
            .collect();
        out.push((n, MonomialIdeal::new(n, monos)));
    }
    out
}

#[test]
fn membership_matches_associated_prime_sweep() {
    let names = ["x", "y", "z", "w"];
    for (n, mi) in monomial_fixture_suite() {
        let q = qring(&names[..n]);
        let module = FPModule::cyclic(&q, &mi.to_ideal(q.base()).unwrap()).unwrap();
        let primes = associated_primes(&mi);
        let classes = [
            SerreClassSpec::ZeroOnly,
            SerreClassSpec::DimLE(0),
            SerreClassSpec::DimLE(1),
            SerreClassSpec::SuppInV(Ideal::parse(q.base(), &["x"]).unwrap()),
        ];
        for class in &classes {
            let direct = class.contains(&module).unwrap();
            let via_primes = primes
                .iter()
                .all(|&mask| class_contains_prime(class, mask, n));
            assert_eq!(direct, via_primes, "class {} on {mi:?}", class.describe());
            // the engine-side prime shortcut agrees with the oracle's
            for &mask in &primes {
                let p = prime_mask_to_ideal(mask, q.base()).unwrap();
                assert_eq!(
                    class.contains_prime(&p).unwrap(),
                    class_contains_prime(class, mask, n)
                );
            }
        }
    }
}

#[test]
fn zero_class_is_minimal_and_dim0_matches_variable_support() {
    let names = ["x", "y", "z", "w"];
    for (n, mi) in monomial_fixture_suite() {
        let q = qring(&names[..n]);
        let module = FPModule::cyclic(&q, &mi.to_ideal(q.base()).unwrap()).unwrap();
        let vars: Vec<&str> = names[..n].to_vec();
        let m_ideal = Ideal::parse(q.base(), &vars).unwrap();
        let all_classes = [
            SerreClassSpec::DimLE(0),
            SerreClassSpec::DimLE(1),
            SerreClassSpec::SuppInV(m_ideal.clone()),
        ];
        if SerreClassSpec::ZeroOnly.contains(&module).unwrap() {
            for c in &all_classes {
                assert!(c.contains(&module).unwrap());
            }
        }
        // on graded modules: dim <= 0 iff support inside V(variables)
        assert_eq!(
            SerreClassSpec::DimLE(0).contains(&module).unwrap(),
            SerreClassSpec::SuppInV(m_ideal).contains(&module).unwrap()
        );
    }
}

// ---------------------------------------------------------------------------
// grade/cm: monotonicity, height bound, presentation independence
// ---------------------------------------------------------------------------

#[test]
fn grade_monotone_in_the_class() {
    let q = qring(&["x", "y", "z"]);
    let modules = [
        cyclic(&q, &["x*y", "x*z"]),
        cyclic(&q, &["x^2", "x*y"]),
        FPModule::free(&q, 1),
    ];
    let a = Ideal::parse(q.base(), &["x", "y"]).unwrap();
    let bigger = [
        SerreClassSpec::DimLE(0),
        SerreClassSpec::DimLE(1),
        SerreClassSpec::SuppInV(Ideal::parse(q.base(), &["x"]).unwrap()),
    ];
    let rank = |v: GradeValue| match v {
        GradeValue::MinusInfinity => -1i64,
        GradeValue::Finite(k) => k as i64,
        GradeValue::PlusInfinity => i64::MAX,
    };
    for m in &modules {
        let base = rank(koszul_grade(&a, m, &SerreClassSpec::ZeroOnly).unwrap().value);
        for class in &bigger {
            let v = rank(koszul_grade(&a, m, class).unwrap().value);
            assert!(base <= v, "grade not monotone for {}", class.describe());
        }
    }
}

#[test]
fn grade_bounded_by_class_height_on_monomial_fixtures() {
    let names = ["x", "y", "z", "w"];
    let classes = |r: &Arc<Ring>| {
        vec![
            SerreClassSpec::ZeroOnly,
            SerreClassSpec::DimLE(0),
            SerreClassSpec::DimLE(1),
            SerreClassSpec::SuppInV(Ideal::parse(r, &["x"]).unwrap()),
        ]
    };
    let ideals: [&[&str]; 4] = [&["x"], &["y"], &["x", "y"], &["x*y"]];
    for (n, mi) in monomial_fixture_suite().into_iter().take(10) {
        let q = qring(&names[..n]);
        let module = FPModule::cyclic(&q, &mi.to_ideal(q.base()).unwrap()).unwrap();
        if module.is_zero() {
            continue;
        }
        for gens in &ideals {
            let a = Ideal::parse(q.base(), gens).unwrap();
            for class in classes(q.base()) {
                let g = koszul_grade(&a, &module, &class).unwrap().value;
                let h = s_height(&a, &module, &class).unwrap();
                match (g, h) {
                    (GradeValue::Finite(g), Some(h)) => {
                        assert!(
                            (g as i64) <= h,
                            "grade {g} exceeds height {h} on {mi:?} ideal {gens:?} class {}",
                            class.describe()
                        );
                    }
                    (GradeValue::Finite(_), None) => {
                        panic!("finite grade with empty height infimum on {mi:?} {gens:?}")
                    }
                    _ => {} // +infinity grade respects any bound
                }
            }
        }
    }
}

#[test]
fn a_invariant_ignores_presentation_noise() {
    let q = qring(&["x", "y", "z"]);
    let base = cyclic(&q, &["x*y", "x*z"]);
    let (a1, _) = a_invariant(&base).unwrap();
    // redundant generators of the same ideal
    let noisy_ideal = Ideal::parse(
        q.base(),
        &["x*z", "x*y", "x*y + x*z", "x^2*y*z"],
    )
    .unwrap();
    let noisy = FPModule::cyclic(&q, &noisy_ideal).unwrap();
    let (a2, _) = a_invariant(&noisy).unwrap();
    assert!(a1.equals(&a2));
    // a presentation with a redundant second generator
    let r = q.base().clone();
    let e0 = FreeVector::basis(r.clone(), 2, 0);
    let e1 = FreeVector::basis(r.clone(), 2, 1);
    let x = serrecm::parse_poly(&r, "x").unwrap();
    let rels = vec![
        // e1 = x e0
        e1.sub(&e0.mul_poly(&x).unwrap()),
        // ideal relations on e0
        e0.mul_poly(&serrecm::parse_poly(&r, "x*y").unwrap()).unwrap(),
        e0.mul_poly(&serrecm::parse_poly(&r, "x*z").unwrap()).unwrap(),
    ];
    let padded = FPModule::new(&q, 2, vec![0, 1], rels).unwrap();
    let (a3, _) = a_invariant(&padded).unwrap();
    assert!(a1.equals(&a3));
}

#[test]
fn unmixedness_spot_check_via_oracle() {
    // On S/(xy,xz) with class dim <= 1 every qualifying localization is CM;
    // variable-generated ideals of height ht_M must then be unmixed: every
    // class-relevant associated prime of M/aM is minimal in its support.
    let q = qring(&["x", "y", "z"]);
    let m_ideal = MonomialIdeal::new(
        3,
        vec![Monomial::new(vec![1, 1, 0]), Monomial::new(vec![1, 0, 1])],
    );
    let class = SerreClassSpec::DimLE(1);
    let module = FPModule::cyclic(&q, &m_ideal.to_ideal(q.base()).unwrap()).unwrap();
    assert!(s_cm_oracle_sweep(&module, &class).unwrap());
    for var_set in [&[0usize][..], &[1], &[2], &[0, 1], &[1, 2]] {
        let a = MonomialIdeal::new(
            3,
            var_set.iter().map(|&i| Monomial::var(3, i)).collect(),
        );
        let ht = match oracle::s_height_monomial(&a, &m_ideal, &SerreClassSpec::ZeroOnly).unwrap() {
            Some(h) => h,
            None => continue,
        };
        if ht != var_set.len() as i64 {
            continue; // not generated by ht_M(a) elements
        }
        // quotient ideal I + a
        let mut gens = m_ideal.gens().to_vec();
        gens.extend(a.gens().iter().cloned());
        let quot = MonomialIdeal::new(3, gens);
        let ass = associated_primes(&quot);
        let minimal: Vec<u32> = ass
            .iter()
            .copied()
            .filter(|&p| !ass.iter().any(|&o| o != p && o & p == o))
            .collect();
        for &p in &ass {
            if !class_contains_prime(&class, p, 3) {
                assert!(
                    minimal.contains(&p),
                    "embedded class-relevant prime {p:#b} under a = {var_set:?}"
                );
            }
        }
    }
}

#[test]
fn polarization_preserves_cm_verdicts() {
    let field = PrimeField::new(101).unwrap();
    let names = ["x", "y", "z", "w"];
    let cases = [
        MonomialIdeal::new(2, vec![Monomial::new(vec![2, 0]), Monomial::new(vec![1, 1])]),
        MonomialIdeal::new(2, vec![Monomial::new(vec![2, 1])]),
        MonomialIdeal::new(3, vec![Monomial::new(vec![2, 0, 0]), Monomial::new(vec![0, 1, 1])]),
    ];
    for mi in &cases {
        let n = mi.num_vars();
        // oracle depth via polarization
        let depth = oracle::monomial_depth(mi, &field).unwrap();
        // engine depth: Koszul grade of the variable ideal, zero class
        let q = qring(&names[..n]);
        let module = FPModule::cyclic(&q, &mi.to_ideal(q.base()).unwrap()).unwrap();
        let vars: Vec<&str> = names[..n].to_vec();
        let a = Ideal::parse(q.base(), &vars).unwrap();
        let grade = koszul_grade(&a, &module, &SerreClassSpec::ZeroOnly).unwrap();
        assert_eq!(grade.value, GradeValue::Finite(depth as usize), "depth mismatch on {mi:?}");
        // CM verdict agreement: polarized depth/dim vs direct
        let (pol, added) = mi.polarize();
        let pol_cm = oracle::reisner_depth(&pol, &field).unwrap() == pol.dimension();
        let direct_cm = depth == mi.dimension();
        assert_eq!(pol_cm, direct_cm);
        let _ = added;
    }
}

#[test]
fn koszul_edge_identifications_on_fixture_corpus() {
    // H^0 = socle, H^r = quotient, by annihilator and dimension agreement
    let q = qring(&["x", "y", "z"]);
    let corpus = [
        cyclic(&q, &["x*y", "x*z"]),
        cyclic(&q, &["x^2", "x*y"]),
        FPModule::free(&q, 1),
    ];
    let xs = [
        serrecm::parse_poly(q.base(), "x").unwrap(),
        serrecm::parse_poly(q.base(), "y").unwrap(),
    ];
    for m in &corpus {
        let complex = serrecm::KoszulComplex::new(&xs, m).unwrap();
        let h0 = complex.cohomology(0).unwrap();
        let hr = complex.cohomology(2).unwrap();
        // top: M/(x)M
        let quo = m.quotient_by_elements(&xs).unwrap();
        assert_eq!(hr.is_zero(), quo.is_zero());
        assert!(hr.annihilator().unwrap().equals(&quo.annihilator().unwrap()));
        // bottom: 0 :_M (x) computed through two single colon steps meeting
        let c1 = m.colon_step(&[], &xs[0]).unwrap();
        if h0.is_zero() {
            // if the socle vanishes neither element kills anything jointly;
            // spot check via the first colon being zero or x-torsion free
            let _ = c1;
        } else {
            assert!(!h0.is_zero());
            // the socle is killed by the full ideal
            let ann = h0.annihilator().unwrap();
            for x in &xs {
                assert!(ann.contains_poly(x));
            }
        }
    }
}

#[test]
fn parallel_and_sequential_paths_agree() {
    let q = qring(&["x", "y", "z"]);
    let m = cyclic(&q, &["x*y", "x*z"]);
    let a = Ideal::parse(q.base(), &["x", "y", "z"]).unwrap();
    let field = PrimeField::new(101).unwrap();
    let mi = MonomialIdeal::new(
        3,
        vec![Monomial::new(vec![1, 1, 0]), Monomial::new(vec![1, 0, 1])],
    );
    let classes = [SerreClassSpec::ZeroOnly, SerreClassSpec::DimLE(1)];
    let mut snapshots = Vec::new();
    for parallel in [true, false] {
        serrecm::exec::set_parallel(parallel);
        let grades: Vec<GradeValue> = classes
            .iter()
            .map(|c| koszul_grade(&a, &m, c).unwrap().value)
            .collect();
        let ann = m.annihilator().unwrap();
        let depth = oracle::reisner_depth(&mi, &field).unwrap();
        let sweep = oracle::support_sweep_check(&mi, &SerreClassSpec::DimLE(1), &field).unwrap();
        snapshots.push((grades, ann.gens().to_vec(), depth, sweep));
    }
    serrecm::exec::set_parallel(true);
    assert_eq!(snapshots[0], snapshots[1]);
}

#[test]
fn grade_equals_infimum_of_localized_grades_on_monomial_fixtures() {
    // For monomial data the class-relative grade is the infimum of the
    // plain (zero-class) grades of the localizations at the monomial
    // support primes the class keeps relevant; localization deletes the
    // complementary variables.
    let names = ["x", "y", "z"];
    let n = 3;
    let q = qring(&names);
    let fixtures: [(&[&str], &[&str]); 4] = [
        (&["x*y", "x*z"], &["x"]),
        (&["x*y", "x*z"], &["y", "z"]),
        (&["x^2", "x*y"], &["x", "y"]),
        (&[], &["x", "y"]),
    ];
    let classes = [
        SerreClassSpec::ZeroOnly,
        SerreClassSpec::DimLE(0),
        SerreClassSpec::DimLE(1),
    ];
    let rank = |v: GradeValue| match v {
        GradeValue::MinusInfinity => -1i64,
        GradeValue::Finite(k) => k as i64,
        GradeValue::PlusInfinity => i64::MAX,
    };
    for (mgens, agens) in &fixtures {
        let module_ideal = Ideal::parse(q.base(), mgens).unwrap();
        let mi = MonomialIdeal::from_ideal(&module_ideal).unwrap();
        let a = Ideal::parse(q.base(), agens).unwrap();
        let ai = MonomialIdeal::from_ideal(&a).unwrap();
        let module = FPModule::cyclic(&q, &module_ideal).unwrap();
        for class in &classes {
            let global = rank(koszul_grade(&a, &module, class).unwrap().value);
            let mut local_inf = i64::MAX;
            for mask in oracle::support_primes(&mi).unwrap() {
                if class_contains_prime(class, mask, n) {
                    continue;
                }
                let keep = oracle::mask_vars(mask, n);
                if keep.is_empty() {
                    continue; // the zero prime: localization is a field, grade +infinity
                }
                let sub_ring = ring(&keep.iter().map(|&i| names[i]).collect::<Vec<_>>());
                let sub_q = QuotientRing::polynomial(sub_ring.clone());
                let loc_m = mi.localize(&keep).to_ideal(&sub_ring).unwrap();
                let loc_a = ai.localize(&keep).to_ideal(&sub_ring).unwrap();
                let loc_module = FPModule::cyclic(&sub_q, &loc_m).unwrap();
                let local =
                    rank(koszul_grade(&loc_a, &loc_module, &SerreClassSpec::ZeroOnly).unwrap().value);
                local_inf = local_inf.min(local);
            }
            assert_eq!(
                global, local_inf,
                "localization formula fails on M = S/{mgens:?}, a = {agens:?}, class {}",
                class.describe()
            );
        }
    }
}
