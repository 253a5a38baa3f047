//! Frozen values cross-checked against small independent implementations.

use std::collections::{BTreeSet, HashSet, VecDeque};

use nielsen_core::library::TargetGroup;
use nielsen_core::quotient::{
    enumerate_generating_tuples, nielsen_orbit, same_orbit, SameOrbit, DEFAULT_CAP,
};
use nielsen_core::*;

// Pairs in Z/5 x Z/5 as (a, b) meaning x^a y^b, with the plain moves on
// integer vectors. No permutations involved.
type Pair = [(u8, u8); 2];

fn naive_z5_orbit(start: Pair) -> HashSet<Pair> {
    let add = |u: (u8, u8), v: (u8, u8)| ((u.0 + v.0) % 5, (u.1 + v.1) % 5);
    let neg = |u: (u8, u8)| ((5 - u.0) % 5, (5 - u.1) % 5);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some([u, v]) = queue.pop_front() {
        for next in [
            [v, u],
            [neg(u), v],
            [u, neg(v)],
            [add(u, v), v],
            [u, add(v, u)],
        ] {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn z5xz5(a: (u32, u32), b: (u32, u32)) -> TupleImage {
    let x = Permutation::parse_cycles(10, "(0 1 2 3 4)").unwrap();
    let y = Permutation::parse_cycles(10, "(5 6 7 8 9)").unwrap();
    let e = |(i, j): (u32, u32)| x.pow(i as i64).then(&y.pow(j as i64));
    TupleImage::new(vec![e(a), e(b)], 10).unwrap()
}

#[test]
fn bicyclic_orbit_sizes() {
    // Orbit of the basis: determinant +-1 matrices, 2 * 120 = 240 of them.
    let naive = naive_z5_orbit([(1, 0), (0, 1)]);
    assert_eq!(naive.len(), 240);
    assert!(!naive.contains(&[(2, 0), (0, 1)]));
    let det =
        |p: &Pair| (p[0].0 as i32 * p[1].1 as i32 - p[0].1 as i32 * p[1].0 as i32).rem_euclid(5);
    assert!(naive.iter().all(|p| det(p) == 1 || det(p) == 4));

    let o = nielsen_orbit(&z5xz5((1, 0), (0, 1)), DEFAULT_CAP);
    assert_eq!((o.size, o.truncated), (240, false));
    let o2 = nielsen_orbit(&z5xz5((2, 0), (0, 1)), DEFAULT_CAP);
    assert_eq!(o2.size, naive_z5_orbit([(2, 0), (0, 1)]).len());
    assert_eq!(
        same_orbit(&z5xz5((1, 0), (0, 1)), &z5xz5((2, 0), (0, 1)), DEFAULT_CAP).unwrap(),
        SameOrbit::No { orbit_size: 240 }
    );
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Jordan's totient J_k(n): the number of generating k-tuples of Z/n.
fn jordan(k: u32, n: usize) -> usize {
    let mut m = n;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            primes.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes
        .iter()
        .fold(n.pow(k), |acc, &p| acc / p.pow(k) * (p.pow(k) - 1))
}

#[test]
fn cyclic_census_counts() {
    for n in 1..=12usize {
        let g = TargetGroup::by_name(&format!("z{n}")).unwrap().carrier();
        let units = (1..=n).filter(|&a| gcd(a, n) == 1).count();
        let one = enumerate_generating_tuples(&g, 1, 1_000_000).unwrap();
        assert_eq!(one.generating_tuples(), if n == 1 { 1 } else { units });
        // {g, g^-1} orbits.
        let expected = if n <= 2 { 1 } else { units / 2 };
        assert_eq!(one.class_count(), expected, "z{n}");
        for k in 2..=3u32 {
            let c = enumerate_generating_tuples(&g, k as usize, 1_000_000).unwrap();
            assert_eq!(c.generating_tuples(), jordan(k, n), "z{n} arity {k}");
            // Generating tuples of a cyclic group of arity >= 2 form one class.
            assert_eq!(c.class_count(), 1, "z{n} arity {k}");
        }
    }
}

#[test]
fn s3_pairs() {
    // 18 generating pairs, all in one class.
    let s3 = TargetGroup::by_name("s3").unwrap().carrier();
    let c = enumerate_generating_tuples(&s3, 2, 1_000_000).unwrap();
    assert_eq!(c.generating_tuples(), 18);
    let naive: usize = (0..6)
        .flat_map(|a| (0..6).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let t = s3.tuple_image(&[a, b]);
            nielsen_core::quotient::generated_subgroup_order(&t) == 6
        })
        .count();
    assert_eq!(naive, 18);
    assert_eq!(c.class_count(), 1);
    let forms: BTreeSet<_> = c
        .classes
        .iter()
        .flatten()
        .map(|d| {
            nielsen_orbit(&s3.tuple_image(d), DEFAULT_CAP)
                .canonical
                .unwrap()
        })
        .collect();
    assert_eq!(forms.len(), 1);
}

#[test]
fn alternating_five_pairs_split() {
    // 19 * 120 = 2280 generating pairs in three classes, as found by a
    // separate union-find over plain permutation tuples.
    let a5 = TargetGroup::by_name("a5").unwrap().carrier();
    let c = enumerate_generating_tuples(&a5, 2, 1_000_000).unwrap();
    assert_eq!(c.generating_tuples(), 2280);
    assert_eq!(c.class_count(), 3);
}
