//! Linear systems whose unknowns are morphisms.
//!
//! Every hom space is `R/pi^h`, so a block of unknown morphisms is a vector in
//! `(+) R/pi^h` and a system `sum A o X o B = C` is a map between two such
//! modules over the coefficient ring. Solving and taking kernels reduces to
//! the chain-ring engine.

use rand::Rng;

use super::chain;
use super::{SerialModule, SerialMorphism};
use crate::base::SerialBase;
use crate::error::{Error, Result};
use crate::mat::{solve, Mat};
use crate::ring::{ChainRing, Elem};

/// Coordinates of a list of hom blocks: one per entry with a nonzero hom space.
#[derive(Clone, Debug)]
pub struct Coords {
    pub blocks: Vec<(SerialModule, SerialModule)>,
    /// (block, target part, source part, hom length)
    pub entries: Vec<(usize, usize, usize, u32)>,
    offsets: Vec<Vec<Option<usize>>>,
}

impl Coords {
    pub fn new(blocks: Vec<(SerialModule, SerialModule)>) -> Self {
        let mut entries = Vec::new();
        let mut offsets = Vec::new();
        for (k, (s, t)) in blocks.iter().enumerate() {
            let base = s.base();
            let mut off = vec![None; s.num_parts() * t.num_parts()];
            for (i, &y) in t.parts().iter().enumerate() {
                for (j, &x) in s.parts().iter().enumerate() {
                    let h = base.hom_len(x, y);
                    if h > 0 {
                        off[i * s.num_parts() + j] = Some(entries.len());
                        entries.push((k, i, j, h));
                    }
                }
            }
            offsets.push(off);
        }
        Coords { blocks, entries, offsets }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lens(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.3).collect()
    }

    fn index(&self, block: usize, i: usize, j: usize) -> Option<usize> {
        let ns = self.blocks[block].0.num_parts();
        self.offsets[block][i * ns + j]
    }

    pub fn to_morphisms(&self, v: &[Elem]) -> Vec<SerialMorphism> {
        let mut out: Vec<SerialMorphism> =
            self.blocks.iter().map(|(s, t)| SerialMorphism::zero(s, t)).collect();
        for (&(k, i, j, _), &x) in self.entries.iter().zip(v) {
            out[k].set(i, j, x);
        }
        out
    }

    pub fn from_morphisms(&self, ms: &[&SerialMorphism]) -> Vec<Elem> {
        self.entries.iter().map(|&(k, i, j, _)| ms[k].entry(i, j)).collect()
    }
}

/// A subgroup of `(+) R/pi^h` with a direct-sum basis: the elements are
/// `sum y_k gens[k]` with `y_k` in `R/pi^orders[k]`.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub ring: ChainRing,
    pub lens: Vec<u32>,
    pub gens: Vec<Vec<Elem>>,
    pub orders: Vec<u32>,
}

impl Lattice {
    /// The whole of `(+) R/pi^lens`.
    pub fn full(ring: ChainRing, lens: Vec<u32>) -> Self {
        let d = lens.len();
        let gens = (0..d)
            .map(|k| {
                let mut e = vec![0; d];
                e[k] = ring.one();
                e
            })
            .collect();
        Lattice { ring, orders: lens.clone(), lens, gens }
    }

    /// `log_p` of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.orders.iter().sum()
    }

    pub fn combine(&self, ys: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        let mut v = vec![0; self.lens.len()];
        for (g, &y) in self.gens.iter().zip(ys) {
            if y == 0 {
                continue;
            }
            for (x, &gx) in v.iter_mut().zip(g) {
                *x = r.add(*x, r.mul(y, gx));
            }
        }
        for (x, &h) in v.iter_mut().zip(&self.lens) {
            *x = r.truncate(*x, h);
        }
        v
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Vec<Elem> {
        let ys: Vec<Elem> = self.orders.iter().map(|&o| rng.gen_range(0..self.ring.pk(o))).collect();
        self.combine(&ys)
    }

    /// Every element, in a fixed order. Callers bound the size first.
    pub fn elements(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let total: u64 = (self.ring.p() as u64).pow(self.log_size());
        (0..total).map(move |mut code| {
            let ys: Vec<Elem> = self
                .orders
                .iter()
                .map(|&o| {
                    let q = self.ring.pk(o) as u64;
                    let y = (code % q) as Elem;
                    code /= q;
                    y
                })
                .collect();
            self.combine(&ys)
        })
    }
}

/// One term `sign * left o X[unknown] o right` contributing to `equation`.
#[derive(Clone, Debug)]
pub struct Term {
    pub equation: usize,
    pub unknown: usize,
    pub left: Option<SerialMorphism>,
    pub right: Option<SerialMorphism>,
    pub negate: bool,
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub unknowns: Coords,
    pub equations: Coords,
    matrix: Mat,
    ring: ChainRing,
}

impl LinearSystem {
    pub fn new(base: &SerialBase, unknowns: Coords, equations: Coords, terms: &[Term]) -> Result<Self> {
        let ring = base.coeff();
        let mut matrix = Mat::zeros(equations.len(), unknowns.len());
        for t in terms {
            let (us, ut) = &unknowns.blocks[t.unknown];
            let (es, et) = &equations.blocks[t.equation];
            if let Some(l) = &t.left {
                if l.source() != ut || l.target() != et {
                    return Err(Error::ShapeMismatch("left factor does not fit".into()));
                }
            } else if ut != et {
                return Err(Error::ShapeMismatch("unknown target differs from equation target".into()));
            }
            if let Some(r) = &t.right {
                if r.source() != es || r.target() != us {
                    return Err(Error::ShapeMismatch("right factor does not fit".into()));
                }
            } else if us != es {
                return Err(Error::ShapeMismatch("unknown source differs from equation source".into()));
            }
            for &(_, k, l, _) in unknowns.entries.iter().filter(|e| e.0 == t.unknown) {
                let col = unknowns.index(t.unknown, k, l).expect("unknown coordinate");
                let (p, q) = (us.parts()[l], ut.parts()[k]);
                let rows: Vec<usize> = match &t.left {
                    Some(a) => (0..a.target().num_parts()).filter(|&i| a.entry(i, k) != 0).collect(),
                    None => vec![k],
                };
                let cols: Vec<usize> = match &t.right {
                    Some(b) => (0..b.source().num_parts()).filter(|&j| b.entry(l, j) != 0).collect(),
                    None => vec![l],
                };
                for &i in &rows {
                    let ti = et.parts()[i];
                    let a = t.left.as_ref().map_or(base.identity(q), |a| a.entry(i, k));
                    for &j in &cols {
                        let sj = es.parts()[j];
                        let Some(row) = equations.index(t.equation, i, j) else { continue };
                        let b = t.right.as_ref().map_or(base.identity(p), |b| b.entry(l, j));
                        let inner = base.compose(sj, p, q, ring.one(), b);
                        let mut m = base.compose(sj, q, ti, a, inner);
                        if t.negate {
                            m = ring.truncate(ring.neg(m), base.hom_len(sj, ti));
                        }
                        let h = base.hom_len(sj, ti);
                        let v = ring.truncate(ring.add(matrix.get(row, col), m), h);
                        matrix.set(row, col, v);
                    }
                }
            }
        }
        Ok(LinearSystem { unknowns, equations, matrix, ring })
    }

    /// Some unknown vector with `L x = rhs`, or `None`.
    pub fn solve(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        let r = &self.ring;
        let he = self.equations.lens();
        let mut rel = Mat::zeros(he.len(), he.len());
        for (i, &h) in he.iter().enumerate() {
            rel.set(i, i, r.pi_pow(h));
        }
        let a = self.matrix.hcat(&rel);
        let x = solve(r, &a, rhs)?;
        Some(
            x.iter()
                .zip(self.unknowns.lens())
                .map(|(&v, h)| r.truncate(v, h))
                .collect(),
        )
    }

    /// The solutions of `L x = 0`.
    pub fn kernel(&self) -> Lattice {
        let r = &self.ring;
        let hu = self.unknowns.lens();
        let he = self.equations.lens();
        let mut coeffs = Mat::zeros(he.len(), hu.len());
        for (i, &b) in he.iter().enumerate() {
            for (j, &a) in hu.iter().enumerate() {
                coeffs.set(i, j, chain::from_quotient_multiplier(r, a, b, self.matrix.get(i, j)));
            }
        }
        let sub = chain::kernel(r, &hu, &he, &coeffs);
        let gens = (0..sub.lens.len())
            .map(|k| {
                let kappa = sub.lens[k];
                hu.iter()
                    .enumerate()
                    .map(|(j, &a)| r.truncate(r.shift_up(sub.incl.get(j, k), a.saturating_sub(kappa)), a))
                    .collect()
            })
            .collect();
        Lattice { ring: *r, lens: hu, gens, orders: sub.lens }
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        let v = self.matrix.mul_vec(&self.ring, x);
        v.iter().zip(self.equations.lens()).map(|(&y, h)| self.ring.truncate(y, h)).collect()
    }
}
