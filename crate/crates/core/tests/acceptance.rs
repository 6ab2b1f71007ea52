//! Acceptance criteria, one line per criterion.

use std::time::{Duration, Instant};

use dunblocks::blocks::{sl_block_partition, sp_block_partition, Regime, SpType, TypeLabel};
use dunblocks::cyclotomic::{compose_factorization, cyclotomic_poly, d_prime, divisors, is_prime};
use dunblocks::oracle::{
    check_block_closure, check_core_confluence_split, check_d1_minimality, check_lemmas,
    check_sc_unfolded, classical_factors, enumerate_beta_sets, enumerate_symbols,
};
use dunblocks::series::{d1_series_partition, enumerate_unipotent, k_threshold};
use dunblocks::combinatorics::beta_set_exists;
use dunblocks::{BigPoly, Family, FiniteGroupSpec, IntPoly};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(s: &str) -> FiniteGroupSpec {
    s.parse().unwrap()
}

fn count(s: &str) -> usize {
    enumerate_unipotent(&group(s)).unwrap().len()
}

fn c1_counts() -> Outcome {
    ensure(count("C2") == 6, || format!("C2 has {} labels", count("C2")))?;
    ensure(count("A4") == 7, || format!("A4 has {} labels", count("A4")))?;
    ensure(count("D2") == 4 && count("D2") == count("A1 x A1"), || format!("D2 has {} labels", count("D2")))?;
    for n in 2..=6u32 {
        let mut degenerate = 0;
        let mut total = 0;
        let mut k = 0;
        while k * k / 4 <= n {
            let list = enumerate_symbols(n, k);
            total += list.len();
            degenerate += list.iter().filter(|s| s.is_degenerate()).count();
            k += 4;
        }
        let got = count(&format!("D{n}"));
        ensure(got == total + degenerate, || format!("D{n}: {got} labels, oracle {total} + {degenerate} degenerate"))?;
        ensure(degenerate == 0 || n % 2 == 0, || format!("D{n}: degenerate symbol at odd rank"))?;
    }
    Ok("C2=6, A4=7, D2..D6 match oracle with doubled degenerate symbols".into())
}

fn c2_existence() -> Outcome {
    for m in 0..=12 {
        for k in 0..=6u32 {
            let nonempty = !enumerate_beta_sets(m, k).is_empty();
            let parity = m >= k * (k + 1) / 2 && (m - k * (k + 1) / 2) % 2 == 0;
            ensure(nonempty == parity, || format!("m={m}, k={k}: enumeration nonempty={nonempty}"))?;
            ensure(beta_set_exists(m, k) == parity, || format!("m={m}, k={k}: beta_set_exists disagrees"))?;
        }
    }
    Ok("m<=12, k<=6".into())
}

fn report(r: dunblocks::oracle::CheckReport) -> Outcome {
    if r.passed {
        Ok(r.params)
    } else {
        Err(r.to_string())
    }
}

fn c3_max() -> Outcome {
    report(check_lemmas(10, 5))
}

fn c4_confluence() -> Outcome {
    let beta = check_core_confluence_split(8, 0, 4);
    let symbols = check_core_confluence_split(0, 6, 3);
    report(beta)?;
    report(symbols)?;
    Ok("beta rank<=8 d<=4, symbol rank<=6 d<=3".into())
}

fn mobius(n: u64) -> i32 {
    let (mut m, mut mu, mut p) = (n, 1, 2);
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

fn phi_mobius(n: u64) -> IntPoly {
    let (mut num, mut den) = (IntPoly::one(), IntPoly::one());
    for d in divisors(n) {
        let f = IntPoly::x_pow_minus_one(d as usize);
        match mobius(n / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    num.exact_div(&den).expect("Möbius quotient is exact")
}

fn c5_cyclotomic() -> Outcome {
    for n in 1..=64u64 {
        let small = divisors(n).iter().fold(IntPoly::one(), |acc, &d| &acc * &cyclotomic_poly::<i64>(d).unwrap());
        ensure(small == IntPoly::x_pow_minus_one(n as usize), || format!("i64 product fails at n={n}"))?;
        let big = divisors(n).iter().fold(BigPoly::one(), |acc, &d| &acc * &cyclotomic_poly(d).unwrap());
        ensure(big == BigPoly::x_pow_minus_one(n as usize), || format!("BigInt product fails at n={n}"))?;
        ensure(cyclotomic_poly::<i64>(n).unwrap() == phi_mobius(n), || format!("Φ_{n} differs from Möbius product"))?;
    }
    for n in 1..=12u64 {
        for a in 1..=6u64 {
            let lhs = phi_mobius(n).substitute_power(a as usize);
            let f = compose_factorization(n, a);
            let rhs = f.factors.iter().fold(IntPoly::one(), |acc, (&e, &m)| {
                (0..m).fold(acc, |acc, _| &acc * &phi_mobius(e))
            });
            ensure(f.x_power == 0 && lhs == rhs, || format!("compose_factorization({n},{a}) = {f}"))?;
        }
    }
    for d in 3..=24u64 {
        let lhs = phi_mobius(d).negate_x();
        let rhs = phi_mobius(d_prime(d));
        ensure(lhs == rhs || lhs == -&rhs, || format!("Φ_{d}(-x) is not ±Φ_{}", d_prime(d)))?;
    }
    Ok("product n<=64 (i64, BigInt), compose n<=12 a<=6, Φ_d(-x) 2<d<=24".into())
}

fn c6_minimality() -> Outcome {
    let mut runs = 0;
    for factor in classical_factors(5) {
        let g = FiniteGroupSpec::new(vec![factor]);
        for d in 1..=8 {
            report(check_d1_minimality(&g, d).unwrap())?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (type, d) pairs"))
}

fn c7_sp4() -> Outcome {
    let p = d1_series_partition(&group("C2"), 2).unwrap();
    ensure(p.len() == 1 && p.num_chars() == 6, || format!("{} classes over {} characters", p.len(), p.num_chars()))?;
    let k = k_threshold(Family::C, 2, 2).unwrap();
    ensure(k == 3, || format!("k_threshold = {k}"))?;
    Ok("1 class of 6, k_threshold=3".into())
}

fn c8_sc() -> Outcome {
    for n in 1..=30u32 {
        for d in (2..=2 * u64::from(n) + 2).step_by(2) {
            report(check_sc_unfolded(n, d).unwrap())?;
        }
    }
    Ok("n<=30, even d<=2n+2".into())
}

const QS: [u64; 6] = [2, 3, 4, 5, 7, 9];

fn primes() -> impl Iterator<Item = u64> {
    (2..=23).filter(|&p| is_prime(p))
}

fn c9_blocks() -> Outcome {
    let mut runs = 0;
    for n in 1..=8 {
        for q in QS {
            for ell in primes().filter(|&l| q % l != 0) {
                report(check_block_closure(n, q, ell).unwrap())?;
                let b = sp_block_partition(n, q, ell).unwrap();
                if matches!(b.regime, Regime::DOdd | Regime::Banal) {
                    ensure(b.classes.iter().all(|c| c.len() == 1), || format!("n={n} q={q} ℓ={ell}: not all singletons"))?;
                }
                runs += 1;
            }
        }
    }
    let b = sp_block_partition(4, 3, 7).unwrap();
    let lone = vec![TypeLabel::Sp(SpType::new(1, 1))];
    ensure(b.classes.len() == 2 && b.classes.contains(&lone), || format!("(4,3,7): {:?}", b.classes))?;
    for (q, ell) in [(3, 2), (5, 3)] {
        let b = sp_block_partition(2, q, ell).unwrap();
        ensure(b.is_single_block(), || format!("(2,{q},{ell}) has {} classes", b.classes.len()))?;
    }
    ensure(sp_block_partition(3, 3, 41).unwrap().regime == Regime::Banal, || "(3,3,41) not banal".into())?;
    Ok(format!("{runs} (n, q, ℓ) triples"))
}

fn c10_sl() -> Outcome {
    for n in 1..=8 {
        for q in QS {
            for ell in primes().filter(|&l| q % l != 0) {
                let b = sl_block_partition(n, q, ell).unwrap();
                ensure(b.is_single_block(), || format!("SL_{n}, q={q}, ℓ={ell}"))?;
            }
        }
    }
    Ok("n<=8".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("1 enumeration counts", c1_counts, 1),
        ("2 existence lemma", c2_existence, 5),
        ("3 max lemmas", c3_max, 30),
        ("4 core/cocore confluence", c4_confluence, 60),
        ("5 cyclotomic identities", c5_cyclotomic, 5),
        ("6 (d,1)-minimality", c6_minimality, 60),
        ("7 Sp4 d=2", c7_sp4, 60),
        ("8 S_c equivalence", c8_sc, 10),
        ("9 block partitions", c9_blocks, 60),
        ("10 SL_n single block", c10_sl, 60),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        match (&outcome, over) {
            (Ok(detail), false) => println!("PASS {name}: {detail} ({took:.2?})"),
            (Ok(detail), true) => println!("FAIL {name}: {detail}, took {took:.2?} > {budget}s"),
            (Err(why), _) => println!("FAIL {name}: {why} ({took:.2?})"),
        }
        if outcome.is_err() || over {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
