use dunblocks::cyclotomic::{
    cyclotomic_poly, divisors, ell_divides_order, factor_order_poly, multiplicative_order, order_poly,
    phi_d_divides_order,
};
use dunblocks::{FiniteGroupSpec, SimpleFactor, WidePoly};
use num_bigint::BigInt;
use num_integer::Integer;

fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut b, m) = (1u128, u128::from(b) % u128::from(m), u128::from(m));
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn order_at(g: &str, q: i128) -> i128 {
    let g: FiniteGroupSpec = g.parse().unwrap();
    order_poly(&g).unwrap().expand::<i128>().eval(&q)
}

#[test]
fn degree_and_values() {
    for n in 1..=60u64 {
        let p = cyclotomic_poly::<BigInt>(n).unwrap();
        assert_eq!(p.degree(), Some(totient(n) as usize), "n={n}");
        for q in 2..6 {
            let floor = BigInt::from(if n == 1 { 0 } else { 1 });
            assert!(p.eval(&BigInt::from(q)) > floor, "Φ_{n}({q})");
        }
    }
    assert!(cyclotomic_poly::<i64>(0).is_err());
}

#[test]
fn divisors_sorted() {
    assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    assert_eq!(divisors(1), vec![1]);
}

#[test]
fn order_divides_ell_minus_one() {
    for ell in [3u64, 5, 7, 11, 13, 101, 65537, 1_000_000_007] {
        for q in 2..20u64 {
            if q % ell == 0 {
                continue;
            }
            let d = multiplicative_order(q, ell).unwrap();
            assert_eq!((ell - 1) % d, 0);
            assert_eq!(pow_mod(q, d, ell), 1);
            for e in divisors(d).into_iter().filter(|&e| e < d) {
                assert_ne!(pow_mod(q, e, ell), 1);
            }
        }
    }
    assert!(multiplicative_order(6, 3).is_err());
    assert!(multiplicative_order(2, 9).is_err());
}

#[test]
fn known_orders() {
    assert_eq!(order_at("A1", 3), 24);
    assert_eq!(order_at("C2", 2), 720);
    assert_eq!(order_at("2A2", 2), 216);
    assert_eq!(order_at("B2", 3), 25920 * 2);
    assert_eq!(order_at("D4", 2), 174182400);
    assert_eq!(order_at("2D4", 2), 197406720);
    assert_eq!(order_at("T2", 5), 16);
    assert_eq!(order_at("1", 7), 1);
}

#[test]
fn unitary_order_matches_direct_formula() {
    for r in 1..=7u32 {
        let f = factor_order_poly(&SimpleFactor::new("2A".parse().unwrap(), r).unwrap()).unwrap();
        let poly: WidePoly = f.expand();
        for q in [2i128, 3, 4] {
            let mut direct = q.pow(r * (r + 1) / 2);
            for j in 2..=r + 1 {
                direct *= q.pow(j) - (-1i128).pow(j);
            }
            assert_eq!(poly.eval(&q), direct, "2A{r} at q={q}");
        }
    }
}

#[test]
fn restriction_of_scalars_order() {
    // A1 over F_{q^2} has order q^2 (q^4 - 1)
    let g: FiniteGroupSpec = "A1@2".parse().unwrap();
    let poly: WidePoly = order_poly(&g).unwrap().expand();
    for q in 2..6i128 {
        assert_eq!(poly.eval(&q), q.pow(2) * (q.pow(4) - 1));
    }
}

#[test]
fn divisibility() {
    let c2: FiniteGroupSpec = "C2".parse().unwrap();
    assert!(phi_d_divides_order(&c2, 4).unwrap());
    assert!(!phi_d_divides_order(&c2, 3).unwrap());
    // |Sp4(2)| = 720 = 2^4 · 3^2 · 5
    assert!(ell_divides_order(&c2, 2, 5).unwrap());
    assert!(!ell_divides_order(&c2, 2, 7).unwrap());
    assert!(ell_divides_order(&c2, 2, 3).unwrap());
    assert!(order_poly(&"E8".parse().unwrap()).is_err());
}
