#![allow(dead_code)]

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::collections::HashSet;

use semistab::galois::{
    classify_point, coset_fixed_point_oracle, fixed_point_check, galois_closure, is_isomorphic, FiniteCover,
    GaloisClosure, Limits, Perm, PermGroup, SubgroupLattice,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A random integer in `1..max` coprime to 6.
pub fn coprime_to_6(rng: &mut impl Rng, max: u64) -> BigInt {
    loop {
        let u: u64 = rng.gen_range(1..max);
        if u.gcd(&6) == 1 {
            return BigInt::from(u);
        }
    }
}

/// A nonzero rational with `v_2` in `0..=2` and `v_3` in `0..=4`.
pub fn tabulated_s(rng: &mut impl Rng) -> BigRational {
    let a: u32 = rng.gen_range(0..=2);
    let b: u32 = rng.gen_range(0..=4);
    let num = coprime_to_6(rng, 2_000_000);
    let den = if rng.gen_bool(0.5) { BigInt::from(1) } else { coprime_to_6(rng, 20_000) };
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let scale = BigInt::from(2u64.pow(a) * 3u64.pow(b)) * sign;
    BigRational::new(scale * num, den)
}

fn prime_to(rng: &mut impl Rng, p: u64, max: u64) -> BigInt {
    loop {
        let u: u64 = rng.gen_range(1..max);
        if !u.is_multiple_of(p) {
            return BigInt::from(u);
        }
    }
}

/// A nonzero rational `x` with `v_p(x) = v`.
pub fn with_valuation(rng: &mut impl Rng, p: u64, v: i64) -> BigRational {
    let x = BigRational::new(prime_to(rng, p, 5_000_000), prime_to(rng, p, 5_000_000));
    let x = if rng.gen_bool(0.5) { -x } else { x };
    x * semistab::arith::pow_rational(p, v)
}

/// A random element of the ball `center + p^k Z_p`, as a rational with
/// denominator prime to `p`.
pub fn sample_ball(rng: &mut impl Rng, center: &BigInt, p: u64, k: u32) -> BigRational {
    let modulus = semistab::arith::big_pow(p, k);
    let den = prime_to(rng, p, 100_000);
    let t = BigInt::from(rng.gen_range(-1_000_000i64..1_000_000));
    // x - center = p^k t / den with den a p-adic unit
    let num = center * &den + &modulus * t;
    BigRational::new(num, den)
}

fn random_cycle(rng: &mut impl Rng, n: usize) -> Perm {
    let len = rng.gen_range(2..=n);
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    for w in 0..len {
        images[pts[w]] = pts[(w + 1) % len];
    }
    Perm::from_images(images).unwrap()
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

/// A random transitive cover of degree `2..=max_n` with one to three
/// generators, each a random cycle or a uniformly random permutation.
pub fn random_transitive_cover(rng: &mut impl Rng, max_n: usize) -> FiniteCover {
    loop {
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Perm> =
            (0..k).map(|_| if rng.gen_bool(0.6) { random_cycle(rng, n) } else { random_perm(rng, n) }).collect();
        if let Ok(c) = FiniteCover::new(n, gens) {
            return c;
        }
    }
}

/// All permutations of `0..n` (n ≤ 7).
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Perm::from_images(prefix.clone()).unwrap());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn is_transitive(perms: &[Perm], n: usize) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Exhaustive lattice checks on one deck group; returns the number of
/// `(H, I)` pairs examined.
pub fn check_lattice(g: &PermGroup) -> usize {
    let lattice = SubgroupLattice::new(g.clone(), 72).unwrap();
    let subs = lattice.subgroups();
    let m = subs.len();
    let mut admits = vec![vec![false; m]; m];
    for h in 0..m {
        for i in 0..m {
            let fixed = fixed_point_check(g, &subs[h], &subs[i]).unwrap();
            assert_eq!(fixed, coset_fixed_point_oracle(g, &subs[h], &subs[i]));
            admits[h][i] = fixed;
        }
    }

    let reps = lattice.class_representatives();
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    for (k, i) in subs.iter().enumerate() {
        let class = classify_point(&lattice, i, &reps).unwrap();
        assert!(is_isomorphic(&g.subgroup_as_group(i), &g.subgroup_as_group(&reps[class])));
        cells[class].push(k);
    }
    // cells are nonempty, disjoint and cover every subgroup
    let mut all: Vec<usize> = cells.iter().flatten().copied().collect();
    all.sort_unstable();
    assert_eq!(all, (0..m).collect::<Vec<_>>());
    assert!(cells.iter().all(|c| !c.is_empty()));

    // subtracting over all proper subgroups or over conjugacy-class
    // representatives of them selects the same minimal subgroups
    let proper: Vec<Vec<bool>> =
        (0..m).map(|h| (0..m).map(|k| subs[k].is_proper_subgroup_of(&subs[h])).collect()).collect();
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; m];
    for k in 0..m {
        if placed[k] {
            continue;
        }
        let mut members: Vec<usize> =
            (0..g.order()).map(|x| lattice.position(&g.conjugate(&subs[k], x)).unwrap()).collect();
        members.sort_unstable();
        members.dedup();
        for &j in &members {
            placed[j] = true;
        }
        class_members.push(members);
    }
    #[allow(clippy::needless_range_loop)]
    for i in 0..m {
        for below_h in &proper {
            let literal = (0..m).any(|k| below_h[k] && admits[k][i]);
            let by_class = class_members.iter().any(|c| admits[c[0]][i] && c.iter().any(|&k| below_h[k]));
            assert_eq!(literal, by_class);
        }
    }
    m * m
}

/// Galois closure of `cover` with every structural property asserted:
/// orbit size, evaluation bijection, faithful and transitive deck action.
pub fn check_closure(cover: &FiniteCover, limits: &Limits) -> GaloisClosure {
    let n = cover.degree();
    let closure = galois_closure(cover, limits).unwrap();
    closure.verify(limits).unwrap();

    let mon = PermGroup::generate(n, cover.generators(), limits.max_group_order).unwrap();
    assert_eq!(closure.orbit_size(), mon.order());
    let mut eval = closure.evaluation_map();
    eval.sort_unstable();
    assert_eq!(eval, (0..n).collect::<Vec<_>>());

    let action = closure.deck_on_projections();
    let distinct: HashSet<&Perm> = action.iter().collect();
    assert_eq!(distinct.len(), action.len(), "deck action is not faithful");
    assert!(is_transitive(action, n));
    assert_eq!(closure.deck_group().order(), closure.orbit_size());
    assert!(is_isomorphic(closure.deck_group(), &mon));

    closure
}
