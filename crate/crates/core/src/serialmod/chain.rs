//! Kernels, images and cokernels for modules over a chain ring, by Smith
//! normal form of free lifts.
//!
//! Two free pictures are used. In the quotient picture `M_a = R/pi^a` and the
//! generator `g_{b<-a}` lifts to multiplication by `pi^max(0, b-a)`. In the
//! envelope picture `M_a` sits inside `R` as `pi^(n-a) R` and the same
//! generator acts as multiplication by `pi^max(0, a-b)`.

use crate::mat::{kernel_generators, smith, Mat};
use crate::ring::{ChainRing, Elem};

/// A submodule of `ambient`, decomposed as `lens` with its inclusion given as
/// hom coefficients (rows: ambient parts, columns: submodule parts).
#[derive(Clone, Debug)]
pub(crate) struct Sub {
    pub lens: Vec<u32>,
    pub incl: Mat,
}

fn up(x: u32, y: u32) -> u32 {
    y.saturating_sub(x)
}

/// Quotient-picture lift of a morphism with coefficient matrix `f`.
pub(crate) fn quotient_lift(r: &ChainRing, src: &[u32], tgt: &[u32], f: &Mat) -> Mat {
    let mut out = Mat::zeros(tgt.len(), src.len());
    for (i, &b) in tgt.iter().enumerate() {
        for (j, &a) in src.iter().enumerate() {
            out.set(i, j, r.shift_up(f.get(i, j), up(a, b)));
        }
    }
    out
}

/// Coefficient of the hom `M_a -> M_b` whose quotient-picture multiplier is `m`.
pub(crate) fn from_quotient_multiplier(r: &ChainRing, a: u32, b: u32, m: Elem) -> Elem {
    debug_assert!(r.truncate(m, b) == 0 || r.valuation(r.truncate(m, b)) >= up(a, b));
    r.truncate(r.shift_down(m, up(a, b)), a.min(b))
}

/// Decompose the submodule of `R^k` spanned by the columns of `z`, where `R^k`
/// is the envelope of the ambient module with part lengths `ambient`.
pub(crate) fn envelope_span(r: &ChainRing, ambient: &[u32], z: &Mat) -> Sub {
    let n = r.n();
    let s = smith(r, z);
    let mut lens = Vec::new();
    let mut cols = Vec::new();
    for (k, &e) in s.exps.iter().enumerate() {
        if e >= n {
            continue;
        }
        let kappa = n - e;
        let w = s.u_inv.col(k);
        let col: Vec<Elem> = ambient
            .iter()
            .zip(&w)
            .map(|(&a, &x)| r.truncate(r.shift_down(x, up(a, kappa)), kappa.min(a)))
            .collect();
        lens.push(kappa);
        cols.push(col);
    }
    Sub { lens, incl: Mat::from_cols(ambient.len(), &cols) }
}

/// Envelope-picture matrix of `f` restricted to the generators `pi^(n-a)`.
fn envelope_action(r: &ChainRing, src: &[u32], tgt: &[u32], f: &Mat) -> Mat {
    let n = r.n();
    let mut g = Mat::zeros(tgt.len(), src.len());
    for (i, &b) in tgt.iter().enumerate() {
        for (j, &a) in src.iter().enumerate() {
            g.set(i, j, r.shift_up(f.get(i, j), up(b, a) + n - a));
        }
    }
    g
}

pub(crate) fn kernel(r: &ChainRing, src: &[u32], tgt: &[u32], f: &Mat) -> Sub {
    let n = r.n();
    let g = envelope_action(r, src, tgt, f);
    let mut z = kernel_generators(r, &g);
    for (i, &a) in src.iter().enumerate() {
        for j in 0..z.cols() {
            z.set(i, j, r.shift_up(z.get(i, j), n - a));
        }
    }
    envelope_span(r, src, &z)
}

pub(crate) fn image(r: &ChainRing, src: &[u32], tgt: &[u32], f: &Mat) -> Sub {
    envelope_span(r, tgt, &envelope_action(r, src, tgt, f))
}

/// Cokernel part lengths and the projection (rows: cokernel parts, columns:
/// target parts).
pub(crate) fn cokernel(r: &ChainRing, src: &[u32], tgt: &[u32], f: &Mat) -> (Vec<u32>, Mat) {
    let n = r.n();
    let l = tgt.len();
    let mut rel = Mat::zeros(l, l);
    for (i, &b) in tgt.iter().enumerate() {
        rel.set(i, i, r.pi_pow(b));
    }
    let rel = rel.hcat(&quotient_lift(r, src, tgt, f));
    let s = smith(r, &rel);
    let mut lens = Vec::new();
    let mut rows = Vec::new();
    for (k, &e) in s.exps.iter().enumerate() {
        let e = e.min(n);
        if e == 0 {
            continue;
        }
        let row: Vec<Elem> = tgt
            .iter()
            .enumerate()
            .map(|(i, &b)| from_quotient_multiplier(r, b, e, r.truncate(s.u.get(k, i), e)))
            .collect();
        lens.push(e);
        rows.push(row);
    }
    (lens, Mat::from_cols(l, &rows).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Arith;

    #[test]
    fn projection_kernel_is_multiplication_by_pi() {
        let r = ChainRing::new(Arith::Poly, 2, 3).unwrap();
        let k = kernel(&r, &[3], &[1], &Mat::from_rows(vec![vec![1]]));
        assert_eq!(k.lens, vec![2]);
        assert_eq!(k.incl, Mat::from_rows(vec![vec![1]]));
    }

    #[test]
    fn multiplication_by_p_kernel() {
        let r = ChainRing::int(3, 2).unwrap();
        let k = kernel(&r, &[2], &[2], &Mat::from_rows(vec![vec![3]]));
        assert_eq!(k.lens, vec![1]);
        let (c, _) = cokernel(&r, &[2], &[2], &Mat::from_rows(vec![vec![3]]));
        assert_eq!(c, vec![1]);
    }
}
