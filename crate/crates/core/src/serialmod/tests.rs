use proptest::prelude::*;

use super::*;
use crate::ring::{Arith, ChainRing};

fn chain(arith: Arith, p: u32, n: u32) -> SerialBase {
    SerialBase::chain(ChainRing::new(arith, p, n).unwrap())
}

fn module(base: &SerialBase, names: &[&str]) -> SerialModule {
    SerialModule::from_names(base, names).unwrap()
}

fn mor(s: &SerialModule, t: &SerialModule, rows: Vec<Vec<Elem>>) -> SerialMorphism {
    SerialMorphism::from_rows(s, t, rows).unwrap()
}

/// Elements of a chain module as coefficient vectors, and the action of a
/// morphism on them in the quotient picture.
fn elements(base: &SerialBase, m: &SerialModule) -> Vec<Vec<Elem>> {
    let r = base.coeff();
    let mut out = vec![vec![]];
    for &a in &m.partition() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..r.pk(a)).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn apply(f: &SerialMorphism, x: &[Elem]) -> Vec<Elem> {
    let r = f.base().coeff();
    let (src, tgt) = (f.source().partition(), f.target().partition());
    tgt.iter()
        .enumerate()
        .map(|(i, &b)| {
            let mut acc = 0;
            for (j, &a) in src.iter().enumerate() {
                acc = r.add(acc, r.mul(r.shift_up(f.entry(i, j), b.saturating_sub(a)), x[j]));
            }
            r.truncate(acc, b)
        })
        .collect()
}

fn p_pow(base: &SerialBase, e: u32) -> usize {
    (base.coeff().p() as usize).pow(e)
}

#[test]
fn compose_examples() {
    let b = chain(Arith::Poly, 2, 2);
    let m2 = module(&b, &["M2"]);
    let pi = b.coeff().pi_pow(1);
    let f = mor(&m2, &m2, vec![vec![pi]]);
    assert!(f.compose(&f).unwrap().is_zero());
    let id = SerialMorphism::identity(&m2);
    assert_eq!(id.compose(&f).unwrap(), f);
    let m1 = module(&b, &["M1"]);
    let g = mor(&m1, &m2, vec![vec![1]]);
    let (sum, _, _) = SerialMorphism::direct_sum(&[&f, &g]).unwrap();
    let (sum2, _, _) = SerialMorphism::direct_sum(&[&id, &SerialMorphism::identity(&m1)]).unwrap();
    assert_eq!(sum.compose(&sum2).unwrap(), sum);
    assert!(f.compose(&g).is_ok());
    assert!(g.compose(&f).is_err());
}

#[test]
fn snf_examples() {
    let b = SerialBase::chain(ChainRing::int(2, 2).unwrap());
    let m = module(&b, &["M2"]);
    match mor(&m, &m, vec![vec![2]]).snf().unwrap() {
        Snf::Chain { exps, .. } => assert_eq!(exps, vec![1]),
        _ => unreachable!(),
    }
    let b = chain(Arith::Poly, 2, 2);
    let m = module(&b, &["M1", "M1"]);
    match mor(&m, &m, vec![vec![1, 1], vec![1, 1]]).snf().unwrap() {
        Snf::Chain { exps, .. } => assert_eq!(exps, vec![0, 2]),
        _ => unreachable!(),
    }
    let iota = mor(&module(&b, &["M1"]), &module(&b, &["M2"]), vec![vec![1]]);
    match iota.snf().unwrap() {
        Snf::Chain { exps, .. } => assert_eq!(exps, vec![1]),
        _ => unreachable!(),
    }
    assert!(iota.kernel().unwrap().0.is_zero());
}

#[test]
fn kernel_examples() {
    let b = SerialBase::chain(ChainRing::int(3, 2).unwrap());
    let m = module(&b, &["M2"]);
    let (k, incl) = mor(&m, &m, vec![vec![3]]).kernel().unwrap();
    assert_eq!(k.names(), vec!["M1"]);
    assert!(incl.is_injective_map().unwrap());

    let b = chain(Arith::Poly, 2, 3);
    let (k, incl) = mor(&module(&b, &["M3"]), &module(&b, &["M1"]), vec![vec![1]]).kernel().unwrap();
    assert_eq!(k.names(), vec!["M2"]);
    assert_eq!(incl.entry(0, 0), 1);

    let s = module(&b, &["M3", "M1"]);
    let t = module(&b, &["M2"]);
    let z = SerialMorphism::zero(&s, &t);
    assert_eq!(z.kernel().unwrap().0, s);
    assert_eq!(z.cokernel().unwrap().0, t);
}

#[test]
fn injectivity_examples() {
    let b = chain(Arith::Poly, 3, 2);
    let m1 = module(&b, &["M1"]);
    let m2 = module(&b, &["M2"]);
    let iota = mor(&m1, &m2, vec![vec![1]]);
    assert!(iota.is_injective_map().unwrap() && !iota.is_surjective_map().unwrap());
    let proj = mor(&m2, &m1, vec![vec![1]]);
    assert!(!proj.is_injective_map().unwrap() && proj.is_surjective_map().unwrap());
    let unit = mor(&m2, &m2, vec![vec![2]]);
    assert!(unit.is_iso());
}

#[test]
fn socle_and_envelope_examples() {
    let b = chain(Arith::Poly, 2, 3);
    assert_eq!(module(&b, &["M3", "M1"]).socle().unwrap().names(), vec!["M1", "M1"]);
    assert!(SerialModule::zero(&b).socle().unwrap().is_zero());
    let (j, e) = module(&b, &["M2", "M1"]).injective_envelope().unwrap();
    assert_eq!(j.names(), vec!["M3", "M3"]);
    assert_eq!(e.entries(), &Mat::from_rows(vec![vec![1, 0], vec![0, 1]]));
    let z8 = SerialBase::chain(ChainRing::int(2, 3).unwrap());
    let (j, e) = module(&z8, &["M1"]).injective_envelope().unwrap();
    assert_eq!(j.names(), vec!["M3"]);
    // the generator M1 -> M3 is multiplication by 4
    assert_eq!(apply(&e, &[1]), vec![4]);

    let n = SerialBase::rad2nak(2, 2).unwrap();
    assert_eq!(module(&n, &["P1"]).socle().unwrap().names(), vec!["S2"]);
    let (j, _) = module(&n, &["S1"]).injective_envelope().unwrap();
    assert_eq!(j.names(), vec!["P2"]);
}

#[test]
fn solve_examples() {
    let b = chain(Arith::Poly, 2, 2);
    let m1 = module(&b, &["M1"]);
    let m2 = module(&b, &["M2"]);
    let proj = mor(&m2, &m1, vec![vec![1]]);
    let id = SerialMorphism::identity(&m1);
    // the projection M2 -> M1 does not split: every M1 -> M2 lands in the radical
    assert!(proj.solve(&id).unwrap().is_none());
    let h = proj.solve(&proj).unwrap().unwrap();
    assert_eq!(proj.compose(&h).unwrap(), proj);
    let iota = mor(&m1, &m2, vec![vec![1]]);
    assert!(iota.solve(&mor(&m1, &m2, vec![vec![0]])).unwrap().is_some());
    // (x pi) o h = id on M1 has no solution
    let pi = mor(&m1, &m1, vec![vec![0]]);
    assert!(pi.solve(&id).unwrap().is_none());
    assert!(iota.solve_left(&id).unwrap().is_none());
    // extending a map along a mono into an injective
    let k = mor(&m1, &m2, vec![vec![1]]);
    let e = iota.solve_left(&k).unwrap().unwrap();
    assert_eq!(e.compose(&iota).unwrap(), k);
}

#[test]
fn hom_space_examples() {
    let b = chain(Arith::Poly, 2, 2);
    let h = module(&b, &["M1"]).hom_space(&module(&b, &["M2"]));
    assert_eq!(h.log_size(), 1);
    let z4 = SerialBase::chain(ChainRing::int(2, 2).unwrap());
    let m2 = module(&z4, &["M2"]);
    assert_eq!(m2.hom_space(&m2).log_size(), 2);
    assert_eq!(m2.hom_space(&SerialModule::zero(&z4)).log_size(), 0);
}

#[test]
fn envelope_is_left_minimal() {
    let b = chain(Arith::Poly, 2, 3);
    let m = module(&b, &["M2", "M1"]);
    let (j, e) = m.injective_envelope().unwrap();
    for k in j.hom_space(&j).elements() {
        if k[0].compose(&e).unwrap() == e {
            assert!(k[0].is_iso());
        }
    }
    let soc_j = j.socle().unwrap();
    assert_eq!(m.socle().unwrap(), soc_j);
}

fn random_chain_morphism(base: &SerialBase, seed: u64) -> SerialMorphism {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = base.num_labels();
    let s: Vec<usize> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..n)).collect();
    let t: Vec<usize> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..n)).collect();
    let s = SerialModule::new(base, s);
    let t = SerialModule::new(base, t);
    let mut f = SerialMorphism::zero(&s, &t);
    for i in 0..t.num_parts() {
        for j in 0..s.num_parts() {
            f.set(i, j, rng.gen_range(0..base.coeff().order()));
        }
    }
    f
}

fn small_base(kind: u8, p: u32, n: u32) -> SerialBase {
    match kind {
        0 => chain(Arith::Int, p, n),
        1 => chain(Arith::Poly, p, n),
        _ => SerialBase::rad2nak(n.min(3).max(2), p).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_roundtrip(kind in 0u8..2, p in prop::sample::select(vec![2u32, 3]), n in 1u32..=4, seed: u64) {
        let base = small_base(kind, p, n);
        let f = random_chain_morphism(&base, seed);
        let r = base.coeff();
        if let Snf::Chain { lift, u, exps, v } = f.snf().unwrap() {
            let d = u.mul(&r, &lift).mul(&r, &v);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    let want = if i == j { r.pi_pow(exps[i]) } else { 0 };
                    prop_assert_eq!(d.get(i, j), want);
                }
            }
        }
    }

    #[test]
    fn exactness(kind in 0u8..3, p in prop::sample::select(vec![2u32, 3]), n in 1u32..=3, seed: u64) {
        let base = small_base(kind, p, n);
        let f = random_chain_morphism(&base, seed);
        let (k, incl) = f.kernel().unwrap();
        let (im, iota) = f.image().unwrap();
        let (c, proj) = f.cokernel().unwrap();
        prop_assert!(f.compose(&incl).unwrap().is_zero());
        prop_assert!(proj.compose(&f).unwrap().is_zero());
        prop_assert!(incl.is_injective_map().unwrap());
        prop_assert!(iota.is_injective_map().unwrap());
        prop_assert!(proj.is_surjective_map().unwrap());
        prop_assert_eq!(f.source().length(), k.length() + im.length());
        prop_assert_eq!(f.target().length(), c.length() + im.length());
        let (kc, _) = proj.kernel().unwrap();
        prop_assert_eq!(kc, im);
        // f factors through its image
        prop_assert!(iota.solve(&f).unwrap().is_some());
    }

    #[test]
    fn kernel_size_matches_elements(kind in 0u8..2, p in prop::sample::select(vec![2u32, 3]), n in 1u32..=3, seed: u64) {
        let base = small_base(kind, p, n);
        let f = random_chain_morphism(&base, seed);
        if f.source().length() <= 8 {
            let zero = vec![0; f.target().num_parts()];
            let count = elements(&base, f.source()).iter().filter(|x| apply(&f, x) == zero).count();
            prop_assert_eq!(count, p_pow(&base, f.kernel().unwrap().0.length()));
        }
    }

    #[test]
    fn solve_finds_composites(kind in 0u8..3, p in prop::sample::select(vec![2u32, 3]), n in 1u32..=3, seed: u64) {
        let base = small_base(kind, p, n);
        let f = random_chain_morphism(&base, seed);
        let h = random_chain_morphism(&base, seed ^ 0x5555);
        // re-target h so that f o h is defined
        let h = SerialMorphism::new(h.source(), f.source(), Mat::from_vec(
            f.source().num_parts(), h.source().num_parts(),
            (0..f.source().num_parts() * h.source().num_parts()).map(|k| (k as u32 * 7 + seed as u32) % base.coeff().order()).collect(),
        )).unwrap();
        let g = f.compose(&h).unwrap();
        let x = f.solve(&g).unwrap().expect("solvable");
        prop_assert_eq!(f.compose(&x).unwrap(), g.clone());
        let y = h.solve_left(&g).unwrap().expect("solvable");
        prop_assert_eq!(y.compose(&h).unwrap(), g);
    }
}

