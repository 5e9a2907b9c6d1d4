//! Modules over a serial base in normal form and morphisms between them.

mod chain;
pub mod linsys;
mod nak;

use std::fmt;

use crate::base::{Backing, LabelId, SerialBase};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::ring::Elem;

pub use linsys::{Coords, Lattice, LinearSystem, Term};

/// A finite direct sum of labels, sorted by descending length then label index.
#[derive(Clone, PartialEq, Eq)]
pub struct SerialModule {
    base: SerialBase,
    parts: Vec<LabelId>,
}

impl fmt::Debug for SerialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.parts.iter().map(|&x| self.base.label(x).name.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

impl SerialModule {
    pub fn new(base: &SerialBase, parts: Vec<LabelId>) -> Self {
        Self::sorted(base, parts).0
    }

    /// The sorted module and, for each input part, its position in it.
    pub fn sorted(base: &SerialBase, parts: Vec<LabelId>) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..parts.len()).collect();
        order.sort_by_key(|&i| (base.order_key(parts[i]), i));
        let mut pos = vec![0; parts.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let sorted = order.iter().map(|&i| parts[i]).collect();
        (SerialModule { base: base.clone(), parts: sorted }, pos)
    }

    pub fn zero(base: &SerialBase) -> Self {
        SerialModule { base: base.clone(), parts: vec![] }
    }

    pub fn from_names(base: &SerialBase, names: &[&str]) -> Result<Self> {
        let parts = names.iter().map(|n| base.label_by_name(n)).collect::<Result<_>>()?;
        Ok(Self::new(base, parts))
    }

    pub fn base(&self) -> &SerialBase {
        &self.base
    }

    pub fn parts(&self) -> &[LabelId] {
        &self.parts
    }

    pub fn names(&self) -> Vec<String> {
        self.parts.iter().map(|&x| self.base.label(x).name.clone()).collect()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn length(&self) -> u32 {
        self.parts.iter().map(|&x| self.base.label(x).length).sum()
    }

    /// Part lengths in normal-form order.
    pub fn partition(&self) -> Vec<u32> {
        self.parts.iter().map(|&x| self.base.label(x).length).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.parts.iter().all(|&x| self.base.label(x).injective)
    }

    pub fn has_injective_part(&self) -> bool {
        self.parts.iter().any(|&x| self.base.label(x).injective)
    }

    /// Direct sum with the positions of every summand's parts.
    pub fn direct_sum(base: &SerialBase, mods: &[&SerialModule]) -> DirectSum {
        let raw: Vec<LabelId> = mods.iter().flat_map(|m| m.parts.iter().copied()).collect();
        let (module, pos) = Self::sorted(base, raw);
        let mut positions = Vec::with_capacity(mods.len());
        let mut k = 0;
        for m in mods {
            positions.push(pos[k..k + m.num_parts()].to_vec());
            k += m.num_parts();
        }
        DirectSum { module, positions, summands: mods.iter().map(|m| (*m).clone()).collect() }
    }

    /// One simple per part.
    pub fn socle(&self) -> Result<SerialModule> {
        if self.base.is_stable() {
            return Err(Error::Unsupported("socle in a stable category".into()));
        }
        let parts = self
            .parts
            .iter()
            .map(|&x| {
                let s = self.base.label(x).socle;
                self.base.simple_label(s).ok_or_else(|| Error::Unsupported("no simple label".into()))
            })
            .collect::<Result<_>>()?;
        Ok(SerialModule::new(&self.base, parts))
    }

    /// Injective envelope and its monic embedding.
    pub fn injective_envelope(&self) -> Result<(SerialModule, SerialMorphism)> {
        let envs = self
            .parts
            .iter()
            .map(|&x| self.base.label(x).envelope.ok_or_else(|| Error::Unsupported("no injective envelopes".into())))
            .collect::<Result<Vec<_>>>()?;
        let (j, pos) = SerialModule::sorted(&self.base, envs);
        let mut e = SerialMorphism::zero(self, &j);
        for (k, &p) in pos.iter().enumerate() {
            e.set(p, k, 1);
        }
        Ok((j, e))
    }

    /// All morphisms to `other`.
    pub fn hom_space(&self, other: &SerialModule) -> HomSet {
        let coords = Coords::new(vec![(self.clone(), other.clone())]);
        let lattice = Lattice::full(self.base.coeff(), coords.lens());
        HomSet { coords, lattice }
    }
}

/// A direct sum together with where each summand's parts went.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: SerialModule,
    pub positions: Vec<Vec<usize>>,
    pub summands: Vec<SerialModule>,
}

impl DirectSum {
    pub fn injection(&self, k: usize) -> SerialMorphism {
        let mut f = SerialMorphism::zero(&self.summands[k], &self.module);
        for (j, &p) in self.positions[k].iter().enumerate() {
            let x = self.summands[k].parts[j];
            f.set(p, j, self.module.base.identity(x));
        }
        f
    }

    pub fn projection(&self, k: usize) -> SerialMorphism {
        let mut f = SerialMorphism::zero(&self.module, &self.summands[k]);
        for (j, &p) in self.positions[k].iter().enumerate() {
            let x = self.summands[k].parts[j];
            f.set(j, p, self.module.base.identity(x));
        }
        f
    }
}

/// A subgroup of hom blocks, e.g. all morphisms or natural transformations.
#[derive(Clone, Debug)]
pub struct HomSet {
    pub coords: Coords,
    pub lattice: Lattice,
}

impl HomSet {
    pub fn log_size(&self) -> u32 {
        self.lattice.log_size()
    }

    pub fn element(&self, v: &[Elem]) -> Vec<SerialMorphism> {
        self.coords.to_morphisms(v)
    }

    pub fn generators(&self) -> Vec<Vec<SerialMorphism>> {
        self.lattice.gens.iter().map(|g| self.element(g)).collect()
    }

    /// Every element; only for small sets.
    pub fn elements(&self) -> impl Iterator<Item = Vec<SerialMorphism>> + '_ {
        self.lattice.elements().map(|v| self.element(&v))
    }
}

/// A block matrix of hom coefficients: `entries[i][j]` lies in
/// `Hom(source.parts[j], target.parts[i])`.
#[derive(Clone, PartialEq, Eq)]
pub struct SerialMorphism {
    source: SerialModule,
    target: SerialModule,
    entries: Mat,
}

impl fmt::Debug for SerialMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} ", self.source, self.target)?;
        let rows: Vec<Vec<Elem>> = (0..self.entries.rows())
            .map(|i| (0..self.entries.cols()).map(|j| self.entries.get(i, j)).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

fn same_base(a: &SerialBase, b: &SerialBase) -> Result<()> {
    if a != b {
        return Err(Error::LabelMismatch(format!("bases differ: {a} vs {b}")));
    }
    Ok(())
}

impl SerialMorphism {
    /// Entries are reduced into their hom spaces.
    pub fn new(source: &SerialModule, target: &SerialModule, entries: Mat) -> Result<Self> {
        same_base(&source.base, &target.base)?;
        if entries.rows() != target.num_parts() || entries.cols() != source.num_parts() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} entries for {} -> {} parts",
                entries.rows(),
                entries.cols(),
                source.num_parts(),
                target.num_parts()
            )));
        }
        let ring = source.base.coeff();
        let mut f = SerialMorphism::zero(source, target);
        for i in 0..entries.rows() {
            for j in 0..entries.cols() {
                let c = entries.get(i, j);
                if !ring.contains(c) {
                    return Err(Error::Invalid(format!("coefficient {c} outside {ring}")));
                }
                f.set(i, j, c);
            }
        }
        Ok(f)
    }

    pub fn from_rows(source: &SerialModule, target: &SerialModule, rows: Vec<Vec<Elem>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != source.num_parts()) {
            return Err(Error::ShapeMismatch("ragged entry rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Self::new(source, target, Mat::from_vec(target.num_parts(), source.num_parts(), data))
    }

    pub fn zero(source: &SerialModule, target: &SerialModule) -> Self {
        SerialMorphism {
            source: source.clone(),
            target: target.clone(),
            entries: Mat::zeros(target.num_parts(), source.num_parts()),
        }
    }

    pub fn identity(m: &SerialModule) -> Self {
        let mut f = Self::zero(m, m);
        for (i, &x) in m.parts.iter().enumerate() {
            f.set(i, i, m.base.identity(x));
        }
        f
    }

    pub fn base(&self) -> &SerialBase {
        &self.source.base
    }
    pub fn source(&self) -> &SerialModule {
        &self.source
    }
    pub fn target(&self) -> &SerialModule {
        &self.target
    }
    pub fn entries(&self) -> &Mat {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.entries.get(i, j)
    }

    /// Set an entry, reducing it into its hom space.
    pub fn set(&mut self, i: usize, j: usize, c: Elem) {
        let v = self.source.base.reduce(self.source.parts[j], self.target.parts[i], c);
        self.entries.set(i, j, v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// `self o f`.
    pub fn compose(&self, f: &SerialMorphism) -> Result<SerialMorphism> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {:?} after {:?}",
                self.source, f.target
            )));
        }
        let base = self.base();
        let ring = base.coeff();
        let mut out = SerialMorphism::zero(&f.source, &self.target);
        for (i, &c) in self.target.parts.iter().enumerate() {
            for (j, &a) in f.source.parts.iter().enumerate() {
                let mut acc = 0;
                for (k, &b) in self.source.parts.iter().enumerate() {
                    let (g, h) = (self.entry(i, k), f.entry(k, j));
                    if g != 0 && h != 0 {
                        acc = ring.add(acc, base.compose(a, b, c, g, h));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn check_parallel(&self, other: &SerialMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SerialMorphism) -> Result<SerialMorphism> {
        self.check_parallel(other)?;
        let ring = self.base().coeff();
        let mut out = self.clone();
        for i in 0..self.entries.rows() {
            for j in 0..self.entries.cols() {
                out.set(i, j, ring.add(self.entry(i, j), other.entry(i, j)));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> SerialMorphism {
        let ring = self.base().coeff();
        let mut out = self.clone();
        for i in 0..self.entries.rows() {
            for j in 0..self.entries.cols() {
                out.set(i, j, ring.neg(self.entry(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, other: &SerialMorphism) -> Result<SerialMorphism> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> SerialMorphism {
        let ring = self.base().coeff();
        let mut out = self.clone();
        for i in 0..self.entries.rows() {
            for j in 0..self.entries.cols() {
                out.set(i, j, ring.mul(c, self.entry(i, j)));
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(fs: &[&SerialMorphism]) -> Result<(SerialMorphism, DirectSum, DirectSum)> {
        let base = fs.first().map(|f| f.base().clone()).ok_or_else(|| Error::Invalid("empty sum".into()))?;
        for f in fs {
            same_base(&base, f.base())?;
        }
        let s = SerialModule::direct_sum(&base, &fs.iter().map(|f| &f.source).collect::<Vec<_>>());
        let t = SerialModule::direct_sum(&base, &fs.iter().map(|f| &f.target).collect::<Vec<_>>());
        let mut out = SerialMorphism::zero(&s.module, &t.module);
        for (k, f) in fs.iter().enumerate() {
            out.place(&t.positions[k], &s.positions[k], f);
        }
        Ok((out, s, t))
    }

    /// Write `block` into the rows `rows` and columns `cols`.
    pub fn place(&mut self, rows: &[usize], cols: &[usize], block: &SerialMorphism) {
        for (bi, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                debug_assert_eq!(self.target.parts[i], block.target.parts[bi]);
                debug_assert_eq!(self.source.parts[j], block.source.parts[bj]);
                self.entries.set(i, j, block.entry(bi, bj));
            }
        }
    }

    /// The block between sub-lists of parts.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> SerialMorphism {
        let base = self.base();
        let s = SerialModule { base: base.clone(), parts: cols.iter().map(|&j| self.source.parts[j]).collect() };
        let t = SerialModule { base: base.clone(), parts: rows.iter().map(|&i| self.target.parts[i]).collect() };
        SerialMorphism { source: s, target: t, entries: self.entries.select_rows(rows).select_cols(cols) }
    }

    fn lens(m: &SerialModule) -> Vec<u32> {
        m.partition()
    }

    fn require_abelian(&self) -> Result<()> {
        if self.base().is_stable() {
            return Err(Error::Unsupported("kernels and cokernels in a stable category".into()));
        }
        Ok(())
    }

    fn sub_from_raw(&self, ambient: &SerialModule, parts: Vec<LabelId>, incl: Mat) -> (SerialModule, SerialMorphism) {
        let (sub, pos) = SerialModule::sorted(self.base(), parts);
        let mut f = SerialMorphism::zero(&sub, ambient);
        for (k, &p) in pos.iter().enumerate() {
            for i in 0..ambient.num_parts() {
                f.set(i, p, incl.get(i, k));
            }
        }
        (sub, f)
    }

    fn chain_label(lens: &[u32]) -> Vec<LabelId> {
        lens.iter().map(|&l| l as usize - 1).collect()
    }

    /// Kernel and its inclusion.
    pub fn kernel(&self) -> Result<(SerialModule, SerialMorphism)> {
        self.require_abelian()?;
        let (parts, incl) = match self.base().backing() {
            Backing::Chain(r) => {
                let s = chain::kernel(r, &Self::lens(&self.source), &Self::lens(&self.target), &self.entries);
                (Self::chain_label(&s.lens), s.incl)
            }
            Backing::Rad2Nak { .. } => nak::kernel(self.base(), &self.source.parts, &self.target.parts, &self.entries),
            Backing::Stable(_) => unreachable!(),
        };
        Ok(self.sub_from_raw(&self.source, parts, incl))
    }

    /// Image and its inclusion into the target.
    pub fn image(&self) -> Result<(SerialModule, SerialMorphism)> {
        self.require_abelian()?;
        let (parts, incl) = match self.base().backing() {
            Backing::Chain(r) => {
                let s = chain::image(r, &Self::lens(&self.source), &Self::lens(&self.target), &self.entries);
                (Self::chain_label(&s.lens), s.incl)
            }
            Backing::Rad2Nak { .. } => nak::image(self.base(), &self.source.parts, &self.target.parts, &self.entries),
            Backing::Stable(_) => unreachable!(),
        };
        Ok(self.sub_from_raw(&self.target, parts, incl))
    }

    /// Cokernel and its projection.
    pub fn cokernel(&self) -> Result<(SerialModule, SerialMorphism)> {
        self.require_abelian()?;
        let (parts, proj) = match self.base().backing() {
            Backing::Chain(r) => {
                let (lens, p) = chain::cokernel(r, &Self::lens(&self.source), &Self::lens(&self.target), &self.entries);
                (Self::chain_label(&lens), p)
            }
            Backing::Rad2Nak { .. } => {
                nak::cokernel(self.base(), &self.source.parts, &self.target.parts, &self.entries)
            }
            Backing::Stable(_) => unreachable!(),
        };
        let (q, pos) = SerialModule::sorted(self.base(), parts);
        let mut f = SerialMorphism::zero(&self.target, &q);
        for (k, &p) in pos.iter().enumerate() {
            for j in 0..self.target.num_parts() {
                f.set(p, j, proj.get(k, j));
            }
        }
        Ok((q, f))
    }

    pub fn is_injective_map(&self) -> Result<bool> {
        Ok(self.image()?.0.length() == self.source.length())
    }

    pub fn is_surjective_map(&self) -> Result<bool> {
        Ok(self.image()?.0.length() == self.target.length())
    }

    /// Iso test by the top reduction: same parts and invertible label blocks.
    pub fn is_iso(&self) -> bool {
        self.source == self.target && top_blocks_invertible(&residue_field(self.base()), &self.top_blocks())
    }

    /// Residue-field matrices of the blocks between parts of equal label.
    pub fn top_blocks(&self) -> Vec<Mat> {
        top_blocks(self)
    }

    /// Some `h` with `self o h = g`.
    pub fn solve(&self, g: &SerialMorphism) -> Result<Option<SerialMorphism>> {
        if g.target != self.target {
            return Err(Error::ShapeMismatch("right-hand side has another target".into()));
        }
        let unknowns = Coords::new(vec![(g.source.clone(), self.source.clone())]);
        let equations = Coords::new(vec![(g.source.clone(), g.target.clone())]);
        let term = Term { equation: 0, unknown: 0, left: Some(self.clone()), right: None, negate: false };
        let sys = LinearSystem::new(self.base(), unknowns, equations, &[term])?;
        let rhs = sys.equations.from_morphisms(&[g]);
        Ok(sys.solve(&rhs).map(|x| sys.unknowns.to_morphisms(&x).remove(0)))
    }

    /// Some `h` with `h o self = g`.
    pub fn solve_left(&self, g: &SerialMorphism) -> Result<Option<SerialMorphism>> {
        if g.source != self.source {
            return Err(Error::ShapeMismatch("right-hand side has another source".into()));
        }
        let unknowns = Coords::new(vec![(self.target.clone(), g.target.clone())]);
        let equations = Coords::new(vec![(g.source.clone(), g.target.clone())]);
        let term = Term { equation: 0, unknown: 0, left: None, right: Some(self.clone()), negate: false };
        let sys = LinearSystem::new(self.base(), unknowns, equations, &[term])?;
        let rhs = sys.equations.from_morphisms(&[g]);
        Ok(sys.solve(&rhs).map(|x| sys.unknowns.to_morphisms(&x).remove(0)))
    }

    /// Diagonal form of the free lift in the quotient picture.
    pub fn snf(&self) -> Result<Snf> {
        match self.base().backing() {
            Backing::Chain(r) => {
                let lift = chain::quotient_lift(r, &Self::lens(&self.source), &Self::lens(&self.target), &self.entries);
                let s = crate::mat::smith(r, &lift);
                Ok(Snf::Chain { lift, u: s.u, exps: s.exps, v: s.v })
            }
            Backing::Rad2Nak { .. } => {
                let r = self.base().coeff();
                let maps = nak::linear_maps(self.base(), &self.source.parts, &self.target.parts, &self.entries);
                let per_vertex = maps.iter().map(|m| crate::mat::smith(&r, m)).map(|s| (s.u, s.exps, s.v)).collect();
                Ok(Snf::Linear { maps, per_vertex })
            }
            Backing::Stable(_) => Err(Error::Unsupported("diagonal form in a stable category".into())),
        }
    }
}

/// Diagonalization of a morphism.
#[derive(Clone, Debug)]
pub enum Snf {
    /// `u * lift * v = diag(pi^exps)`, with `lift` the quotient-picture matrix.
    Chain { lift: Mat, u: Mat, exps: Vec<u32>, v: Mat },
    /// Per-vertex linear maps with their diagonalizations.
    Linear { maps: Vec<Mat>, per_vertex: Vec<(Mat, Vec<u32>, Mat)> },
}

pub(crate) fn top_blocks(f: &SerialMorphism) -> Vec<Mat> {
    let base = f.base();
    let ring = base.coeff();
    let mut out = Vec::new();
    for x in 0..base.num_labels() {
        let rows: Vec<usize> = (0..f.target.num_parts()).filter(|&i| f.target.parts[i] == x).collect();
        let cols: Vec<usize> = (0..f.source.num_parts()).filter(|&j| f.source.parts[j] == x).collect();
        if (rows.is_empty() && cols.is_empty()) || base.hom_len(x, x) == 0 {
            continue;
        }
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, ring.truncate(f.entry(i, j), 1));
            }
        }
        out.push(m);
    }
    out
}

/// Residue field as a ring; single digits encode its elements in either arithmetic.
pub(crate) fn residue_field(base: &SerialBase) -> crate::ring::ChainRing {
    crate::ring::ChainRing::poly(base.coeff().p(), 1).expect("prime")
}

pub(crate) fn top_blocks_invertible(field: &crate::ring::ChainRing, blocks: &[Mat]) -> bool {
    blocks.iter().all(|m| m.rows() == m.cols() && m.field_rank(field) == m.rows())
}

#[cfg(test)]
mod tests;
