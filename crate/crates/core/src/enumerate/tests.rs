use super::*;

fn chain(arith: crate::ring::Arith, p: u32, n: u32) -> SerialBase {
    SerialBase::chain(ChainRing::new(arith, p, n).unwrap())
}

#[test]
fn modules_up_to_counts_partitions() {
    let base = chain(crate::ring::Arith::Poly, 2, 2);
    // partitions with parts at most 2 and size at most 3
    assert_eq!(modules_up_to(&base, 3).len(), 6);
    assert_eq!(modules_up_to(&base, 0).len(), 1);
}

#[test]
fn bounded_a2_over_a_field() {
    let q = Quiver::builtin("An-linear:2").unwrap();
    let base = chain(crate::ring::Arith::Poly, 2, 1);
    let r = enumerate_bounded(&q, &base, &[1, 1], false, 1 << 20).unwrap();
    assert_eq!(r.len(), 3);
    let g = enumerate_gabriel(&q, 2).unwrap();
    assert!(r.same_classes(&g).unwrap());
}

#[test]
fn zero_caps_give_nothing() {
    let q = Quiver::builtin("An-linear:2").unwrap();
    let base = chain(crate::ring::Arith::Poly, 2, 1);
    assert!(enumerate_bounded(&q, &base, &[0, 0], false, 1 << 20).unwrap().is_empty());
}

#[test]
fn budget_is_enforced() {
    let q = Quiver::builtin("An-linear:2").unwrap();
    let base = chain(crate::ring::Arith::Poly, 2, 2);
    assert!(matches!(enumerate_bounded(&q, &base, &[3, 3], false, 10), Err(Error::Budget(_))));
}

#[test]
fn gabriel_counts_match_positive_roots() {
    for (name, count) in [("An-linear:2", 3), ("An-linear:3", 6), ("A4-zigzag", 10), ("D4", 12)] {
        let q = Quiver::builtin(name).unwrap();
        let r = enumerate_gabriel(&q, 2).unwrap();
        assert_eq!(r.len(), count, "{name}");
        let dims: Vec<Vec<u32>> = r.classes.iter().map(|c| c.rep.length_vector()).collect();
        let roots: Vec<Vec<u32>> = q.positive_roots().unwrap().iter().map(|d| d.iter().map(|&x| x as u32).collect()).collect();
        assert_eq!(dims, roots);
    }
    assert!(enumerate_gabriel(&Quiver::builtin("kronecker").unwrap(), 2).is_err());
}

#[test]
fn rad2_count_agrees_with_bounded_search_on_a2() {
    let q = Quiver::builtin("An-linear:2").unwrap();
    for base in [chain(crate::ring::Arith::Poly, 2, 2), chain(crate::ring::Arith::Int, 2, 2)] {
        let r = enumerate_mono_rad2(&q, &base).unwrap();
        assert_eq!(r.counts, (2, 3));
        let b = enumerate_bounded(&q, &base, &[2, 2], true, 1 << 20).unwrap();
        assert_eq!(b.len(), 5);
        assert!(r.same_classes(&b).unwrap());
    }
}

#[test]
fn rad2_classes_are_stable_fixed_points() {
    let q = Quiver::builtin("An-linear:3").unwrap();
    let base = SerialBase::rad2nak(2, 2).unwrap();
    let r = enumerate_mono_rad2(&q, &base).unwrap();
    // two injectives at three vertices, two simples times six roots
    assert_eq!(r.counts, (6, 12));
    for c in &r.classes {
        if c.rep.injective_rep_recognize().unwrap().is_none() {
            let back = c.rep.stable_reduce().unwrap().mimo_from_stable().unwrap();
            assert!(back.is_iso(&c.rep).unwrap());
        }
    }
}
