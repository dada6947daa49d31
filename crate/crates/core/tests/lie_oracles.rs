mod common;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use common::primitive_part;
use regmap_core::classical::GroupSpec;
use regmap_core::group::DEFAULT_CAP;
use regmap_core::lie::{
    cyclotomic_eval, f_bound_check, order_formula, primitive_prime_divisors, LieFamily, LieSpec, ZsigmondyException,
};
use regmap_core::primegraph::f_lower_bound;

#[test]
fn cyclotomic_product_identity() {
    for q in 2..=9u64 {
        for n in 1..=40u32 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(BigUint::one(), |acc, d| acc * cyclotomic_eval(d, q));
            assert_eq!(prod, BigUint::from(q).pow(n) - 1u32, "q={q} n={n}");
        }
    }
}

#[test]
fn ppd_agree_with_gcd_stripping() {
    let mut incomplete = 0;
    for q in 2..=100u64 {
        for a in 1..=20u32 {
            let cert = primitive_prime_divisors(q, a);
            let part = primitive_part(q, a);
            assert_eq!(cert.exists(), !part.is_one(), "q={q} a={a}");
            let mut rest = part.clone();
            for t in &cert.primes {
                assert_eq!(t % a, BigUint::from(1u32 % a), "q={q} a={a} t={t}");
                assert!(rest.is_multiple_of(t));
                while rest.is_multiple_of(t) {
                    rest /= t;
                }
                for i in 1..a {
                    assert!(!(BigUint::from(q).pow(i) - 1u32).is_multiple_of(t));
                }
            }
            match &cert.residual {
                None => assert!(rest.is_one(), "q={q} a={a}: unexplained cofactor {rest}"),
                Some(res) => {
                    assert_eq!(&rest, res, "q={q} a={a}");
                    assert!(!regmap_core::numtheory::big_is_probable_prime(res));
                    incomplete += 1;
                }
            }
            let expected = match (a, q) {
                (6, 2) => Some(ZsigmondyException::SixTwo),
                (2, q) if (q + 1).is_power_of_two() => Some(ZsigmondyException::Mersenne),
                (1, 2) => Some(ZsigmondyException::OneTwo),
                _ => None,
            };
            assert_eq!(cert.exception, expected, "q={q} a={a}");
        }
    }
    println!("{incomplete} certificates kept an unsplit composite residual");
}

fn families() -> Vec<(LieFamily, Vec<u32>)> {
    vec![
        (LieFamily::A, (1..=8).collect()),
        (LieFamily::TwoA, (2..=8).collect()),
        (LieFamily::B, (2..=8).collect()),
        (LieFamily::C, (2..=8).collect()),
        (LieFamily::D, (4..=8).collect()),
        (LieFamily::TwoD, (4..=8).collect()),
        (LieFamily::TwoB2, vec![2]),
        (LieFamily::G2, vec![2]),
    ]
}

#[test]
fn f_bound_holds_on_covered_range() {
    let mut checked = 0;
    for (fam, ranks) in families() {
        for n in ranks {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 32, 128] {
                let Ok(spec) = LieSpec::new(fam.clone(), n, q) else { continue };
                let c = f_bound_check(&spec).unwrap();
                assert!(!c.trusted, "{spec}");
                assert!(c.ok, "{spec}: computed {:?} < claimed {}", c.computed, c.claimed);
                checked += 1;
            }
        }
    }
    assert!(checked > 300, "{checked}");
}

#[test]
fn exceptional_computed_rows() {
    for s in ["3D4:3", "3D4:4", "F4:2", "F4:3", "F4:4", "E8:2", "E8:3", "E8:4"] {
        let c = f_bound_check(&s.parse().unwrap()).unwrap();
        assert!(!c.trusted && c.ok, "{s}: {c:?}");
    }
    for s in ["3D4:2", "2G2:27", "2F4:8", "E6:2", "2E6:4", "E7:5"] {
        assert!(f_bound_check(&s.parse().unwrap()).unwrap().trusted, "{s}");
    }
}

/// Direct products of `q^i -+ 1`, independent of the cyclotomic tables.
fn direct_order(spec: &LieSpec) -> BigUint {
    let q = BigUint::from(spec.q);
    let n = spec.n;
    let qm = |i: u32| q.pow(i) - 1u32;
    let qp = |i: u32| q.pow(i) + 1u32;
    let g = |a: u64, b: &BigUint| BigUint::from(a).gcd(b);
    match &spec.family {
        LieFamily::A => {
            let p: BigUint = (2..=n + 1).map(qm).product();
            q.pow(n * (n + 1) / 2) * p / g(n as u64 + 1, &(&q - 1u32))
        }
        LieFamily::TwoA => {
            let p: BigUint = (2..=n + 1).map(|i| if i % 2 == 0 { qm(i) } else { qp(i) }).product();
            q.pow(n * (n + 1) / 2) * p / g(n as u64 + 1, &(&q + 1u32))
        }
        LieFamily::B | LieFamily::C => {
            let p: BigUint = (1..=n).map(|i| qm(2 * i)).product();
            q.pow(n * n) * p / g(2, &(&q - 1u32))
        }
        LieFamily::D => {
            let p: BigUint = (1..n).map(|i| qm(2 * i)).product();
            q.pow(n * (n - 1)) * qm(n) * p / g(4, &qm(n))
        }
        LieFamily::TwoD => {
            let p: BigUint = (1..n).map(|i| qm(2 * i)).product();
            q.pow(n * (n - 1)) * qp(n) * p / g(4, &qp(n))
        }
        LieFamily::TwoB2 => q.pow(2) * qp(2) * qm(1),
        LieFamily::G2 => q.pow(6) * qm(6) * qm(2),
        LieFamily::Data(name) => match name.as_str() {
            "3D4" => q.pow(12) * (q.pow(8) + q.pow(4) + 1u32) * qm(6) * qm(2),
            "2G2" => q.pow(3) * qp(3) * qm(1),
            "2F4" => q.pow(12) * qp(6) * qm(4) * qp(3) * qm(1),
            "F4" => q.pow(24) * qm(12) * qm(8) * qm(6) * qm(2),
            "E6" => q.pow(36) * [2, 5, 6, 8, 9, 12].map(qm).into_iter().product::<BigUint>() / g(3, &qm(1)),
            "2E6" => {
                let p: BigUint = [2, 5, 6, 8, 9, 12]
                    .map(|i| if i % 2 == 0 { qm(i) } else { qp(i) })
                    .into_iter()
                    .product();
                q.pow(36) * p / g(3, &qp(1))
            }
            "E7" => q.pow(63) * [2, 6, 8, 10, 12, 14, 18].map(qm).into_iter().product::<BigUint>() / g(2, &qm(1)),
            "E8" => q.pow(120) * [2, 8, 12, 14, 18, 20, 24, 30].map(qm).into_iter().product::<BigUint>(),
            other => panic!("no direct formula for {other}"),
        },
    }
}

#[test]
fn order_formula_matches_direct_products() {
    for (fam, ranks) in families() {
        for n in ranks {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 27, 32] {
                if let Ok(spec) = LieSpec::new(fam.clone(), n, q) {
                    assert_eq!(order_formula(&spec).unwrap().value(), direct_order(&spec), "{spec}");
                }
            }
        }
    }
    for fam in regmap_core::lie::data_families() {
        for q in [2u64, 3, 4, 5, 8, 27, 32] {
            if let Ok(spec) = format!("{fam}:{q}").parse::<LieSpec>() {
                assert_eq!(order_formula(&spec).unwrap().value(), direct_order(&spec), "{spec}");
            }
        }
    }
}

fn constructible() -> Vec<(&'static str, String)> {
    let mut v: Vec<(&str, String)> = Vec::new();
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        v.push(("A1", format!("PSL2:{q}")));
    }
    v.extend([
        ("A2:3", "PSL3:3".to_string()),
        ("A2:4", "PSL3:4".to_string()),
        ("A2:5", "PSL3:5".to_string()),
        ("2A2:3", "PSU3:3".to_string()),
        ("2A2:4", "PSU3:4".to_string()),
        ("2A3:2", "PSU4:2".to_string()),
    ]);
    v
}

fn lie_of(tag: &str, group: &str) -> LieSpec {
    if tag == "A1" {
        let q = group.split(':').nth(1).unwrap();
        format!("A1:{q}").parse().unwrap()
    } else {
        tag.parse().unwrap()
    }
}

#[test]
fn order_formula_matches_closure() {
    for (tag, group) in constructible() {
        let spec: GroupSpec = group.parse().unwrap();
        let g = spec.build(DEFAULT_CAP).unwrap();
        let lie = lie_of(tag, &group);
        assert_eq!(order_formula(&lie).unwrap().value_u64(), Some(g.order()), "{group}");
    }
}

#[test]
fn true_f_meets_claimed_bound() {
    for (tag, group) in constructible() {
        let g: GroupSpec = group.parse().unwrap();
        let g = g.build(DEFAULT_CAP).unwrap();
        let lie = lie_of(tag, &group);
        let c = f_bound_check(&lie).unwrap();
        let f = f_lower_bound(&g).unwrap();
        assert!(f >= c.claimed, "{group}: true f {f} < claimed {}", c.claimed);
        let pnc = regmap_core::primegraph::group_gk(&g).non_cyclic();
        for d in &c.pnc {
            assert!(pnc.contains(&d.prime), "{group}: {} = {} has cyclic Sylow", d.label, d.prime);
        }
    }
}
