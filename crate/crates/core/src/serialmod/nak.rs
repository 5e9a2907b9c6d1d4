//! Linear view of modules over the cyclic Nakayama algebra with radical
//! square zero: one `F_p`-space per vertex and arrow maps `v -> v+1`.
//!
//! Each label contributes a top basis vector at its top vertex and, for the
//! projective labels, a socle vector at the next vertex. A hom coefficient
//! between parts `X -> Y` is the coordinate of the image of the top vector of
//! `X` along the basis vector of `Y` at that vertex.

use crate::base::{LabelId, SerialBase};
use crate::mat::{inverse, kernel_generators, smith, solve, Mat};
use crate::ring::{ChainRing, Elem};

/// Position of the basis vectors of a module with the given parts.
pub(crate) struct Layout {
    pub m: usize,
    pub dims: Vec<usize>,
    /// per part: (vertex, coordinate) of the top vector and, if any, the socle vector
    pub top: Vec<(usize, usize)>,
    pub soc: Vec<Option<(usize, usize)>>,
}

impl Layout {
    pub fn new(base: &SerialBase, parts: &[LabelId]) -> Self {
        let m = base.num_simples();
        let mut dims = vec![0; m];
        let mut top = Vec::with_capacity(parts.len());
        let mut soc = Vec::with_capacity(parts.len());
        for &x in parts {
            let l = base.label(x);
            top.push((l.top, dims[l.top]));
            dims[l.top] += 1;
            if l.length == 2 {
                soc.push(Some((l.socle, dims[l.socle])));
                dims[l.socle] += 1;
            } else {
                soc.push(None);
            }
        }
        Layout { m, dims, top, soc }
    }

    /// Coordinate of part `j` at vertex `v`, if it has one.
    fn at(&self, j: usize, v: usize) -> Option<usize> {
        if self.top[j].0 == v {
            Some(self.top[j].1)
        } else {
            self.soc[j].filter(|s| s.0 == v).map(|s| s.1)
        }
    }

    pub fn arrows(&self) -> Vec<Mat> {
        let m = self.m;
        let mut a: Vec<Mat> = (0..m).map(|v| Mat::zeros(self.dims[(v + 1) % m], self.dims[v])).collect();
        for (j, &(v, t)) in self.top.iter().enumerate() {
            if let Some((_, s)) = self.soc[j] {
                a[v].set(s, t, 1);
            }
        }
        a
    }
}

/// Per-vertex matrices of a morphism with coefficients `f`.
pub(crate) fn linear_maps(base: &SerialBase, src: &[LabelId], tgt: &[LabelId], f: &Mat) -> Vec<Mat> {
    let ls = Layout::new(base, src);
    let lt = Layout::new(base, tgt);
    let mut out: Vec<Mat> = (0..ls.m).map(|v| Mat::zeros(lt.dims[v], ls.dims[v])).collect();
    for (i, &y) in tgt.iter().enumerate() {
        for (j, &x) in src.iter().enumerate() {
            let c = f.get(i, j);
            if c == 0 {
                continue;
            }
            let (v, t) = ls.top[j];
            let ty = lt.at(i, v).expect("nonzero hom lands on a basis vector");
            out[v].set(ty, t, c);
            if x == y {
                if let (Some((sv, s)), Some((_, sy))) = (ls.soc[j], lt.soc[i]) {
                    out[sv].set(sy, s, c);
                }
            }
        }
    }
    out
}

/// Hom coefficients of the map sending the top vector of each source part to
/// `images[j]` (a vector at that part's top vertex, in target coordinates).
fn coefficients(base: &SerialBase, src: &[LabelId], tgt: &[LabelId], images: &[Vec<Elem>]) -> Mat {
    let ls = Layout::new(base, src);
    let lt = Layout::new(base, tgt);
    let mut f = Mat::zeros(tgt.len(), src.len());
    for (j, &x) in src.iter().enumerate() {
        let v = ls.top[j].0;
        for (i, &y) in tgt.iter().enumerate() {
            if base.hom_len(x, y) == 0 {
                continue;
            }
            if let Some(c) = lt.at(i, v) {
                f.set(i, j, images[j][c]);
            }
        }
    }
    f
}

/// A decomposed module: part labels and, per part, its top vector and optional
/// socle vector in the coordinates of the decomposed space.
struct Decomposed {
    parts: Vec<LabelId>,
    top: Vec<Vec<Elem>>,
}

fn field(base: &SerialBase) -> ChainRing {
    base.coeff()
}

fn column_basis(r: &ChainRing, a: &Mat) -> Mat {
    let s = smith(r, a);
    let keep: Vec<usize> = s.exps.iter().enumerate().filter(|(_, &e)| e == 0).map(|(k, _)| k).collect();
    s.u_inv.select_cols(&keep)
}

fn null_basis(r: &ChainRing, a: &Mat) -> Mat {
    let g = kernel_generators(r, a);
    let keep: Vec<usize> = (0..g.cols()).filter(|&j| g.col(j).iter().any(|&x| x != 0)).collect();
    g.select_cols(&keep)
}

/// Split an abstract representation of the cyclic quiver into labels.
fn decompose(base: &SerialBase, dims: &[usize], arrows: &[Mat]) -> Decomposed {
    let r = field(base);
    let m = dims.len();
    let mut parts = Vec::new();
    let mut top = Vec::new();
    let mut images: Vec<Vec<Vec<Elem>>> = vec![Vec::new(); m];
    let mut proj: Vec<(usize, Vec<Elem>)> = Vec::new();
    for v in 0..m {
        // columns with independent images give projective parts
        let a = &arrows[v];
        let mut chosen: Vec<Vec<Elem>> = Vec::new();
        for j in 0..dims[v] {
            let mut trial = chosen.clone();
            trial.push(a.col(j));
            if Mat::from_cols(a.rows(), &trial).field_rank(&r) == trial.len() {
                chosen.push(a.col(j));
                let mut e = vec![0; dims[v]];
                e[j] = 1;
                proj.push((v, e));
            }
        }
        images[(v + 1) % m] = chosen;
    }
    for v in 0..m {
        let mut span = images[v].clone();
        let ker = null_basis(&r, &arrows[v]);
        for k in 0..ker.cols() {
            let mut trial = span.clone();
            trial.push(ker.col(k));
            if Mat::from_cols(dims[v], &trial).field_rank(&r) == trial.len() {
                span = trial;
                parts.push(base.simple_label(v).expect("simple label"));
                top.push(ker.col(k));
            }
        }
    }
    for (v, e) in proj {
        parts.push(base.num_simples() + v);
        top.push(e);
    }
    Decomposed { parts, top }
}

/// Submodule given by per-vertex column bases `b` inside a module with parts
/// `ambient`; returns its labels and inclusion coefficients.
fn submodule(base: &SerialBase, ambient: &[LabelId], b: &[Mat]) -> (Vec<LabelId>, Mat) {
    let r = field(base);
    let lay = Layout::new(base, ambient);
    let arr = lay.arrows();
    let m = lay.m;
    let dims: Vec<usize> = b.iter().map(Mat::cols).collect();
    let restricted: Vec<Mat> = (0..m)
        .map(|v| {
            let w = (v + 1) % m;
            let img = arr[v].mul(&r, &b[v]);
            let cols: Vec<Vec<Elem>> = (0..img.cols())
                .map(|j| solve(&r, &b[w], &img.col(j)).expect("subspace closed under arrows"))
                .collect();
            Mat::from_cols(dims[w], &cols)
        })
        .collect();
    let d = decompose(base, &dims, &restricted);
    let images: Vec<Vec<Elem>> = d
        .parts
        .iter()
        .zip(&d.top)
        .map(|(&x, t)| b[base.label(x).top].mul_vec(&r, t))
        .collect();
    let incl = coefficients(base, &d.parts, ambient, &images);
    (d.parts, incl)
}

pub(crate) fn kernel(base: &SerialBase, src: &[LabelId], tgt: &[LabelId], f: &Mat) -> (Vec<LabelId>, Mat) {
    let r = field(base);
    let maps = linear_maps(base, src, tgt, f);
    let b: Vec<Mat> = maps.iter().map(|a| null_basis(&r, a)).collect();
    submodule(base, src, &b)
}

pub(crate) fn image(base: &SerialBase, src: &[LabelId], tgt: &[LabelId], f: &Mat) -> (Vec<LabelId>, Mat) {
    let r = field(base);
    let maps = linear_maps(base, src, tgt, f);
    let b: Vec<Mat> = maps.iter().map(|a| column_basis(&r, a)).collect();
    submodule(base, tgt, &b)
}

/// Cokernel labels and projection coefficients (rows: cokernel parts).
pub(crate) fn cokernel(base: &SerialBase, src: &[LabelId], tgt: &[LabelId], f: &Mat) -> (Vec<LabelId>, Mat) {
    let r = field(base);
    let lay = Layout::new(base, tgt);
    let arr = lay.arrows();
    let m = lay.m;
    let maps = linear_maps(base, src, tgt, f);
    // complete a basis of the image by standard vectors; project onto them
    let mut pr = Vec::with_capacity(m);
    let mut sec = Vec::with_capacity(m);
    for v in 0..m {
        let d = lay.dims[v];
        let mut basis: Vec<Vec<Elem>> = {
            let cb = column_basis(&r, &maps[v]);
            (0..cb.cols()).map(|j| cb.col(j)).collect()
        };
        let k = basis.len();
        let mut extra = Vec::new();
        for s in 0..d {
            let mut e = vec![0; d];
            e[s] = 1;
            basis.push(e.clone());
            if Mat::from_cols(d, &basis).field_rank(&r) == basis.len() {
                extra.push(e);
            } else {
                basis.pop();
            }
        }
        let inv = inverse(&r, &Mat::from_cols(d, &basis)).expect("basis");
        let rows: Vec<usize> = (k..d).collect();
        pr.push(inv.select_rows(&rows));
        sec.push(Mat::from_cols(d, &extra));
    }
    let dims: Vec<usize> = sec.iter().map(Mat::cols).collect();
    let induced: Vec<Mat> = (0..m).map(|v| pr[(v + 1) % m].mul(&r, &arr[v].mul(&r, &sec[v]))).collect();
    let dq = decompose(base, &dims, &induced);
    // change from quotient coordinates to the decomposed basis
    let ql = Layout::new(base, &dq.parts);
    let mut w: Vec<Mat> = (0..m).map(|v| Mat::zeros(dims[v], dims[v])).collect();
    for (j, t) in dq.top.iter().enumerate() {
        let (v, c) = ql.top[j];
        for (i, &x) in t.iter().enumerate() {
            w[v].set(i, c, x);
        }
        if let Some((sv, sc)) = ql.soc[j] {
            let s = induced[v].mul_vec(&r, t);
            for (i, &x) in s.iter().enumerate() {
                w[sv].set(i, sc, x);
            }
        }
    }
    let winv: Vec<Mat> = w.iter().map(|x| inverse(&r, x).expect("decomposition is a basis")).collect();
    let images: Vec<Vec<Elem>> = (0..tgt.len())
        .map(|j| {
            let (v, t) = lay.top[j];
            let mut e = vec![0; lay.dims[v]];
            e[t] = 1;
            winv[v].mul_vec(&r, &pr[v].mul_vec(&r, &e))
        })
        .collect();
    let proj = coefficients(base, tgt, &dq.parts, &images);
    (dq.parts, proj)
}
