//! Indecomposable monomorphic representations of the Kronecker quiver over
//! `F_p[x]/x^2`, built from the homogeneous polynomial model: `V_n` is the
//! space of degree `n` forms in `y, z` with monomial basis `y^(n-k) z^k`.

use serde::{Deserialize, Serialize};

use crate::base::{Backing, SerialBase};
use crate::error::{Error, Result};
use crate::mat::{self, Mat};
use crate::quiver::Quiver;
use crate::rep::Representation;
use crate::ring::{Arith, ChainRing};
use crate::serialmod::{SerialModule, SerialMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Preprojective, `V_(n-1) => V_n`.
    P,
    /// Preinjective, `V_n^* => V_(n-1)^*`.
    I,
    /// Regular, `V_(n-1) => V_n / k p^n` for `p = a y + b z`.
    R,
}

/// Multiplication by `y` (`shift = 0`) or `z` (`shift = 1`) from `V_(n-1)`
/// to `V_n`.
fn mult(n: usize, shift: usize) -> Mat {
    let mut m = Mat::zeros(n + 1, n);
    for k in 0..n {
        m.set(k + shift, k, 1);
    }
    m
}

fn neg(f: &ChainRing, m: &Mat) -> Mat {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, f.neg(m.get(i, j)));
        }
    }
    out
}

fn vstack(a: &Mat, b: &Mat) -> Mat {
    a.transpose().hcat(&b.transpose()).transpose()
}

/// A left inverse of an injective matrix.
fn retraction(f: &ChainRing, a: &Mat) -> Result<Mat> {
    let at = a.transpose();
    let mut b = Mat::zeros(a.cols(), a.rows());
    for i in 0..a.cols() {
        let e: Vec<u32> = (0..a.cols()).map(|j| u32::from(i == j)).collect();
        let row = mat::solve(f, &at, &e).ok_or_else(|| Error::Invalid("kernel map is not injective".into()))?;
        for (j, c) in row.into_iter().enumerate() {
            b.set(i, j, c);
        }
    }
    Ok(b)
}

/// Powers `p^k` of `p = a y + b z` in the monomial basis of `V_k`.
fn power(f: &ChainRing, a: u32, b: u32, k: usize) -> Vec<u32> {
    let mut v = vec![1];
    for _ in 0..k {
        let mut next = vec![0; v.len() + 1];
        for (i, &c) in v.iter().enumerate() {
            next[i] = f.add(next[i], f.mul(c, a));
            next[i + 1] = f.add(next[i + 1], f.mul(c, b));
        }
        v = next;
    }
    v
}

/// Stable data of a family member over `F_p`: the two maps `Y, Z: U -> V`
/// and an injective `A: K -> U + U` whose image is the kernel of `(Y Z)`.
struct Stable {
    y: Mat,
    z: Mat,
    kernel: Mat,
}

fn stable_data(f: &ChainRing, which: Family, n: usize, param: (u32, u32)) -> Result<Stable> {
    match which {
        Family::P => {
            let (y, z) = if n == 0 { (Mat::zeros(1, 0), Mat::zeros(1, 0)) } else { (mult(n, 0), mult(n, 1)) };
            let kernel = if n < 2 { Mat::zeros(2 * n, 0) } else { vstack(&neg(f, &mult(n - 1, 1)), &mult(n - 1, 0)) };
            Ok(Stable { y, z, kernel })
        }
        Family::I => {
            let (y, z) = if n == 0 { (Mat::zeros(0, 1), Mat::zeros(0, 1)) } else { (mult(n, 0).transpose(), mult(n, 1).transpose()) };
            let kernel = vstack(&neg(f, &mult(n + 1, 1).transpose()), &mult(n + 1, 0).transpose());
            Ok(Stable { y, z, kernel })
        }
        Family::R => {
            if n == 0 {
                return Err(Error::Invalid("regular members start at n = 1".into()));
            }
            let (a, b) = param;
            let p = f.p();
            if a >= p || b >= p || (a == 0 && b == 0) || !(a == 1 || (a == 0 && b == 1)) {
                return Err(Error::Invalid(format!("({a}:{b}) is not a normalized point of the projective line")));
            }
            let pn = power(f, a, b, n);
            let drop = pn.iter().position(|&c| c != 0).expect("nonzero power");
            let inv = f.inverse(pn[drop])?;
            // V_n -> V_n / k p^n on the monomials other than `drop`
            let mut quot = Mat::zeros(n, n + 1);
            let mut r = 0;
            for k in 0..=n {
                if k == drop {
                    continue;
                }
                quot.set(r, k, 1);
                quot.set(r, drop, f.neg(f.mul(inv, pn[k])));
                r += 1;
            }
            let y = quot.mul(f, &mult(n, 0));
            let z = quot.mul(f, &mult(n, 1));
            let pm = power(f, a, b, n - 1);
            let extra = Mat::from_cols(2 * n, &[pm.iter().map(|&c| f.mul(c, a)).chain(pm.iter().map(|&c| f.mul(c, b))).collect()]);
            let kernel = if n < 2 { extra } else { vstack(&neg(f, &mult(n - 1, 1)), &mult(n - 1, 0)).hcat(&extra) };
            Ok(Stable { y, z, kernel })
        }
    }
}

fn kronecker_base(base: &SerialBase) -> Result<ChainRing> {
    match base.backing() {
        Backing::Chain(r) if r.n() == 2 && r.arith() == Arith::Poly => Ok(ChainRing::poly(r.p(), 1)?),
        _ => Err(Error::Unsupported("the Kronecker family needs the base F_p[x]/x^2".into())),
    }
}

/// The stable representation of a family member over the stable base.
pub fn kronecker_stable(base: &SerialBase, which: Family, n: usize, param: (u32, u32)) -> Result<Representation> {
    let f = kronecker_base(base)?;
    let st = SerialBase::stable(base)?;
    let d = stable_data(&f, which, n, param)?;
    let one = st.label_by_name("M1")?;
    let u = SerialModule::new(&st, vec![one; d.y.cols()]);
    let v = SerialModule::new(&st, vec![one; d.y.rows()]);
    let q = Quiver::builtin("kronecker")?;
    let maps = vec![SerialMorphism::new(&u, &v, d.y)?, SerialMorphism::new(&u, &v, d.z)?];
    Representation::new(&q, &st, vec![u, v], maps)
}

/// The monomorphic representation `(U => V + K[x]/x^2)` with arrows
/// `(Y; x B_1)` and `(Z; x B_2)`, where `(B_1 B_2)` is a retraction of the
/// kernel map.
pub fn kronecker_family(base: &SerialBase, which: Family, n: usize, param: (u32, u32)) -> Result<Representation> {
    let f = kronecker_base(base)?;
    let d = stable_data(&f, which, n, param)?;
    let (u, v, k) = (d.y.cols(), d.y.rows(), d.kernel.cols());
    let b = retraction(&f, &d.kernel)?;
    let m1 = base.label_by_name("M1")?;
    let m2 = base.label_by_name("M2")?;
    let src = SerialModule::new(base, vec![m1; u]);
    let mut parts = vec![m2; k];
    parts.extend(vec![m1; v]);
    let tgt = SerialModule::new(base, parts);
    let mut maps = Vec::new();
    for (half, stable) in [(0, &d.y), (1, &d.z)] {
        let mut g = SerialMorphism::zero(&src, &tgt);
        for j in 0..u {
            for i in 0..k {
                g.set(i, j, b.get(i, half * u + j));
            }
            for i in 0..v {
                g.set(k + i, j, stable.get(i, j));
            }
        }
        maps.push(g);
    }
    Representation::new(&Quiver::builtin("kronecker")?, base, vec![src, tgt], maps)
}

/// Normalized points of the projective line over `F_p`: `(1:b)` and `(0:1)`.
pub fn projective_line(p: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (0..p).map(|b| (1, b)).collect();
    out.push((0, 1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(p: u32) -> SerialBase {
        SerialBase::chain(ChainRing::poly(p, 2).unwrap())
    }

    fn members(p: u32, max_n: usize) -> Vec<(Family, usize, (u32, u32))> {
        let mut out = Vec::new();
        for n in 0..=max_n {
            out.push((Family::P, n, (0, 0)));
            out.push((Family::I, n, (0, 0)));
            if n >= 1 {
                for pt in projective_line(p) {
                    out.push((Family::R, n, pt));
                }
            }
        }
        out
    }

    #[test]
    fn kernel_maps_are_exact() {
        for p in [2, 3] {
            let f = ChainRing::poly(p, 1).unwrap();
            for (which, n, pt) in members(p, 4) {
                let d = stable_data(&f, which, n, pt).unwrap();
                let yz = d.y.hcat(&d.z);
                assert!(yz.mul(&f, &d.kernel).is_zero());
                assert_eq!(d.kernel.field_rank(&f), d.kernel.cols());
                // the cokernel of the kernel map has the rank of (Y Z)
                assert_eq!(2 * d.y.cols() - d.kernel.cols(), yz.field_rank(&f), "{which:?} {n} {pt:?}");
            }
        }
    }

    #[test]
    fn small_members() {
        let b = base(2);
        let p1 = kronecker_family(&b, Family::P, 1, (0, 0)).unwrap();
        assert_eq!(p1.module(0).names(), vec!["M1"]);
        assert_eq!(p1.module(1).names(), vec!["M1", "M1"]);
        let r1 = kronecker_family(&b, Family::R, 1, (1, 0)).unwrap();
        assert_eq!(r1.module(1).names(), vec!["M2", "M1"]);
        assert!(kronecker_family(&b, Family::R, 0, (1, 0)).is_err());
        assert!(kronecker_family(&b, Family::R, 1, (1, 2)).is_err());
    }

    #[test]
    fn members_are_mono_indecomposable_and_distinct() {
        for p in [2, 3] {
            let b = base(p);
            let reps: Vec<Representation> =
                members(p, 3).into_iter().map(|(w, n, pt)| kronecker_family(&b, w, n, pt).unwrap()).collect();
            for r in &reps {
                assert!(r.is_mono().unwrap());
                assert!(r.is_indecomposable().unwrap().0);
            }
            for i in 0..reps.len() {
                for j in 0..i {
                    assert!(!reps[i].is_iso(&reps[j]).unwrap(), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn members_are_mimo_of_their_stable_part() {
        for p in [2, 3] {
            let b = base(p);
            for (w, n, pt) in members(p, 3) {
                let direct = kronecker_family(&b, w, n, pt).unwrap();
                let lifted = kronecker_stable(&b, w, n, pt).unwrap().mimo_from_stable().unwrap();
                assert!(direct.is_iso(&lifted).unwrap(), "{w:?} {n} {pt:?}");
            }
        }
    }
}
