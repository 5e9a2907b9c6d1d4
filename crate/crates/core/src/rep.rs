//! Representations of a quiver over a serial base and the functors on them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{Backing, LabelId, SerialBase};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::quiver::{Path, Quiver};
use crate::ring::ChainRing;
use crate::serialmod::{
    residue_field, top_blocks, top_blocks_invertible, Coords, DirectSum, HomSet, LinearSystem, SerialModule,
    SerialMorphism, Term,
};

#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    base: SerialBase,
    modules: Vec<SerialModule>,
    maps: Vec<SerialMorphism>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Rep over {} on {:?}", self.base, self.quiver)?;
        for (v, m) in self.modules.iter().enumerate() {
            writeln!(f, "  {}: {:?}", self.quiver.vertex_name(v), m)?;
        }
        for (a, m) in self.maps.iter().enumerate() {
            writeln!(f, "  {}: {:?}", self.quiver.arrow_name(a), m.entries())?;
        }
        Ok(())
    }
}

/// A natural transformation, one component per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: Representation,
    pub target: Representation,
    pub components: Vec<SerialMorphism>,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every element of the relevant residue space was examined.
    Exhaustive,
    /// A witness was found (an isomorphism or a splitting endomorphism).
    Witness,
    /// Random elements were examined without finding a witness.
    Sampled(u32),
    /// Obtained from certified decompositions.
    Decomposition,
}

/// Residue spaces up to this many elements are searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
const SAMPLES: u32 = 400;

impl Representation {
    pub fn new(quiver: &Quiver, base: &SerialBase, modules: Vec<SerialModule>, maps: Vec<SerialMorphism>) -> Result<Self> {
        if modules.len() != quiver.num_vertices() || maps.len() != quiver.num_arrows() {
            return Err(Error::ShapeMismatch("one module per vertex and one map per arrow".into()));
        }
        for m in &modules {
            if m.base() != base {
                return Err(Error::LabelMismatch("vertex module over another base".into()));
            }
        }
        for (a, f) in maps.iter().enumerate() {
            if f.source() != &modules[quiver.source(a)] || f.target() != &modules[quiver.target(a)] {
                return Err(Error::ShapeMismatch(format!("map {} has the wrong shape", quiver.arrow_name(a))));
            }
        }
        Ok(Representation { quiver: quiver.clone(), base: base.clone(), modules, maps })
    }

    pub fn zero(quiver: &Quiver, base: &SerialBase) -> Self {
        let modules = vec![SerialModule::zero(base); quiver.num_vertices()];
        let maps = (0..quiver.num_arrows()).map(|_| SerialMorphism::zero(&modules[0], &modules[0])).collect();
        Representation { quiver: quiver.clone(), base: base.clone(), modules, maps }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn base(&self) -> &SerialBase {
        &self.base
    }
    pub fn modules(&self) -> &[SerialModule] {
        &self.modules
    }
    pub fn module(&self, v: usize) -> &SerialModule {
        &self.modules[v]
    }
    pub fn maps(&self) -> &[SerialMorphism] {
        &self.maps
    }
    pub fn map(&self, a: usize) -> &SerialMorphism {
        &self.maps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(SerialModule::is_zero)
    }

    pub fn length_vector(&self) -> Vec<u32> {
        self.modules.iter().map(SerialModule::length).collect()
    }

    pub fn total_length(&self) -> u32 {
        self.length_vector().iter().sum()
    }

    pub fn partition_vector(&self) -> Result<Vec<Vec<u32>>> {
        if self.base.chain_ring().is_none() {
            return Err(Error::Unsupported("partitions need a chain ring base".into()));
        }
        Ok(self.modules.iter().map(SerialModule::partition).collect())
    }

    /// The combined map into `v` from the sources of its incoming arrows.
    pub fn in_map(&self, v: usize) -> (SerialMorphism, DirectSum) {
        let arrows = self.quiver.arrows_into(v);
        let sources: Vec<&SerialModule> = arrows.iter().map(|&a| &self.modules[self.quiver.source(a)]).collect();
        let ds = SerialModule::direct_sum(&self.base, &sources);
        let mut f = SerialMorphism::zero(&ds.module, &self.modules[v]);
        let rows: Vec<usize> = (0..self.modules[v].num_parts()).collect();
        for (k, &a) in arrows.iter().enumerate() {
            f.place(&rows, &ds.positions[k], &self.maps[a]);
        }
        (f, ds)
    }

    pub fn is_mono(&self) -> Result<bool> {
        for v in 0..self.quiver.num_vertices() {
            if !self.in_map(v).0.is_injective_map()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kernels of the in-maps with their inclusions.
    pub fn l1_kopf(&self) -> Result<Vec<(SerialModule, SerialMorphism)>> {
        (0..self.quiver.num_vertices()).map(|v| self.in_map(v).0.kernel()).collect()
    }

    /// Cokernels of the in-maps with their projections.
    pub fn kopf(&self) -> Result<Vec<(SerialModule, SerialMorphism)>> {
        (0..self.quiver.num_vertices()).map(|v| self.in_map(v).0.cokernel()).collect()
    }

    /// Vertexwise direct sum.
    pub fn direct_sum(reps: &[&Representation]) -> Result<Representation> {
        let first = reps.first().ok_or_else(|| Error::Invalid("empty sum".into()))?;
        let q = &first.quiver;
        let base = &first.base;
        for r in reps {
            if &r.quiver != q || &r.base != base {
                return Err(Error::LabelMismatch("summands over different quivers or bases".into()));
            }
        }
        let sums: Vec<DirectSum> = (0..q.num_vertices())
            .map(|v| SerialModule::direct_sum(base, &reps.iter().map(|r| &r.modules[v]).collect::<Vec<_>>()))
            .collect();
        let maps = (0..q.num_arrows())
            .map(|a| {
                let (s, t) = (&sums[q.source(a)], &sums[q.target(a)]);
                let mut f = SerialMorphism::zero(&s.module, &t.module);
                for (k, r) in reps.iter().enumerate() {
                    f.place(&t.positions[k], &s.positions[k], &r.maps[a]);
                }
                f
            })
            .collect();
        Representation::new(q, base, sums.into_iter().map(|s| s.module).collect(), maps)
    }

    /// The free representation on vertex modules `m`: vertex `k` carries
    /// one copy of `m[s(p)]` per path `p` ending at `k`.
    pub fn f_shriek(base: &SerialBase, quiver: &Quiver, m: &[SerialModule]) -> Result<Representation> {
        if m.len() != quiver.num_vertices() {
            return Err(Error::ShapeMismatch("one module per vertex".into()));
        }
        let paths: Vec<Vec<Path>> = (0..quiver.num_vertices()).map(|v| quiver.paths_into(v)).collect();
        let sums: Vec<DirectSum> = paths
            .iter()
            .map(|ps| SerialModule::direct_sum(base, &ps.iter().map(|p| &m[p.source]).collect::<Vec<_>>()))
            .collect();
        let maps = (0..quiver.num_arrows())
            .map(|b| {
                let (i, k) = (quiver.source(b), quiver.target(b));
                let mut f = SerialMorphism::zero(&sums[i].module, &sums[k].module);
                for (pi, p) in paths[i].iter().enumerate() {
                    let qi = extend_index(&paths[k], p, b);
                    f.place(&sums[k].positions[qi], &sums[i].positions[pi], &SerialMorphism::identity(&m[p.source]));
                }
                f
            })
            .collect();
        Representation::new(quiver, base, sums.into_iter().map(|s| s.module).collect(), maps)
    }

    fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver || self.base != other.base {
            return Err(Error::LabelMismatch("representations over different quivers or bases".into()));
        }
        Ok(())
    }

    /// Natural transformations `self -> other`.
    pub fn hom(&self, other: &Representation) -> Result<HomSet> {
        self.check_compatible(other)?;
        let q = &self.quiver;
        let unknowns = Coords::new(
            (0..q.num_vertices()).map(|v| (self.modules[v].clone(), other.modules[v].clone())).collect(),
        );
        let equations = Coords::new(
            (0..q.num_arrows())
                .map(|a| (self.modules[q.source(a)].clone(), other.modules[q.target(a)].clone()))
                .collect(),
        );
        let mut terms = Vec::new();
        for a in 0..q.num_arrows() {
            terms.push(Term { equation: a, unknown: q.target(a), left: None, right: Some(self.maps[a].clone()), negate: false });
            terms.push(Term { equation: a, unknown: q.source(a), left: Some(other.maps[a].clone()), right: None, negate: true });
        }
        let sys = LinearSystem::new(&self.base, unknowns, equations, &terms)?;
        let lattice = sys.kernel();
        Ok(HomSet { coords: sys.unknowns, lattice })
    }

    /// Natural maps `h: n -> p.source` together with the equations `p h = g`.
    fn post_system(n: &Representation, p: &RepMorphism) -> Result<LinearSystem> {
        n.check_compatible(&p.source)?;
        let (m, r) = (&p.source, &p.target);
        let q = &n.quiver;
        let nv = q.num_vertices();
        let unknowns = Coords::new((0..nv).map(|v| (n.modules[v].clone(), m.modules[v].clone())).collect());
        let mut eqs: Vec<(SerialModule, SerialModule)> =
            (0..q.num_arrows()).map(|a| (n.modules[q.source(a)].clone(), m.modules[q.target(a)].clone())).collect();
        eqs.extend((0..nv).map(|v| (n.modules[v].clone(), r.modules[v].clone())));
        let mut terms = Vec::new();
        for a in 0..q.num_arrows() {
            terms.push(Term { equation: a, unknown: q.target(a), left: None, right: Some(n.maps[a].clone()), negate: false });
            terms.push(Term { equation: a, unknown: q.source(a), left: Some(m.maps[a].clone()), right: None, negate: true });
        }
        for v in 0..nv {
            terms.push(Term { equation: q.num_arrows() + v, unknown: v, left: Some(p.components[v].clone()), right: None, negate: false });
        }
        LinearSystem::new(&n.base, unknowns, Coords::new(eqs), &terms)
    }

    /// Some natural `h` with `p h = g`, if one exists.
    pub fn factor_through(p: &RepMorphism, g: &RepMorphism) -> Result<Option<RepMorphism>> {
        if g.target != p.target {
            return Err(Error::ShapeMismatch("maps have different targets".into()));
        }
        let sys = Self::post_system(&g.source, p)?;
        let q = &g.source.quiver;
        let zero: Vec<SerialMorphism> = (0..q.num_arrows())
            .map(|a| SerialMorphism::zero(&g.source.modules[q.source(a)], &p.source.modules[q.target(a)]))
            .collect();
        let blocks: Vec<&SerialMorphism> = zero.iter().chain(g.components.iter()).collect();
        let rhs = sys.equations.from_morphisms(&blocks);
        Ok(sys.solve(&rhs).map(|x| RepMorphism::unchecked(&g.source, &p.source, sys.unknowns.to_morphisms(&x))))
    }

    /// Natural maps `h: n -> p.source` with `p h = 0`.
    pub fn post_kernel(n: &Representation, p: &RepMorphism) -> Result<HomSet> {
        let sys = Self::post_system(n, p)?;
        let lattice = sys.kernel();
        Ok(HomSet { coords: sys.unknowns, lattice })
    }

    pub fn identity(&self) -> RepMorphism {
        RepMorphism {
            source: self.clone(),
            target: self.clone(),
            components: self.modules.iter().map(SerialMorphism::identity).collect(),
        }
    }

    /// Search for an isomorphism `self -> other`.
    pub fn find_iso(&self, other: &Representation) -> Result<(Option<RepMorphism>, Certificate)> {
        self.check_compatible(other)?;
        if self.modules != other.modules {
            return Ok((None, Certificate::Exhaustive));
        }
        let hom = self.hom(other)?;
        let space = TopSpace::new(&hom, self.base());
        let found = space.search(|t| space.all_invertible(t), 0x150);
        match found {
            Search::Found(c) => Ok((Some(RepMorphism::unchecked(self, other, space.element(&hom, &c))), Certificate::Witness)),
            Search::Exhausted => Ok((None, Certificate::Exhaustive)),
            Search::Sampled(n) => {
                if self.base.is_abelian() {
                    let a = self.decompose()?;
                    let b = other.decompose()?;
                    let same = same_multiset(&a.pieces, &b.pieces)?;
                    debug_assert!(!same, "decompositions agree but no isomorphism was sampled");
                    Ok((None, Certificate::Decomposition))
                } else {
                    Ok((None, Certificate::Sampled(n)))
                }
            }
        }
    }

    pub fn is_iso(&self, other: &Representation) -> Result<bool> {
        Ok(self.find_iso(other)?.0.is_some())
    }

    /// Isomorphism test for two indecomposables: they are isomorphic iff some
    /// composite of generators `self -> other -> self` is invertible.
    pub fn is_iso_indecomposable(&self, other: &Representation) -> Result<bool> {
        self.check_compatible(other)?;
        if self.modules != other.modules {
            return Ok(false);
        }
        let there = self.hom(other)?.generators();
        let back = other.hom(self)?.generators();
        let field = residue_field(&self.base);
        for g in &there {
            for h in &back {
                let blocks: Vec<Mat> = (0..self.modules.len())
                    .flat_map(|v| top_blocks(&h[v].compose(&g[v]).expect("composable")))
                    .collect();
                if top_blocks_invertible(&field, &blocks) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Whether the endomorphism ring is local, with a certificate; a
    /// splitting endomorphism is returned when it is not.
    pub fn local_endomorphisms(&self) -> Result<(Option<RepMorphism>, Certificate)> {
        if self.is_zero() {
            return Err(Error::Invalid("the zero representation".into()));
        }
        let hom = self.hom(self)?;
        let space = TopSpace::new(&hom, self.base());
        let field = residue_field(&self.base);
        let split = |t: &[Mat]| !space.all_invertible(t) && !t.iter().all(|m| is_nilpotent(&field, m));
        match space.search(split, 0x10ca1) {
            Search::Found(c) => Ok((Some(RepMorphism::unchecked(self, self, space.element(&hom, &c))), Certificate::Witness)),
            Search::Exhausted => Ok((None, Certificate::Exhaustive)),
            Search::Sampled(n) => Ok((None, Certificate::Sampled(n))),
        }
    }

    pub fn is_indecomposable(&self) -> Result<(bool, Certificate)> {
        if self.is_zero() {
            return Ok((false, Certificate::Exhaustive));
        }
        let (split, cert) = self.local_endomorphisms()?;
        Ok((split.is_none(), cert))
    }

    /// Krull-Schmidt decomposition by Fitting splittings.
    pub fn decompose(&self) -> Result<Decomposition> {
        if !self.base.is_abelian() {
            return Err(Error::Unsupported("decomposition needs kernels".into()));
        }
        let mut todo = vec![self.clone()];
        let mut done: Vec<(Representation, Certificate)> = Vec::new();
        while let Some(r) = todo.pop() {
            if r.is_zero() {
                continue;
            }
            match r.local_endomorphisms()? {
                (Some(phi), _) => {
                    let (k, i) = r.fitting_split(&phi)?;
                    todo.push(k);
                    todo.push(i);
                }
                (None, cert) => done.push((r, cert)),
            }
        }
        let mut pieces: Vec<(Representation, usize)> = Vec::new();
        let mut certificates = Vec::new();
        'next: for (r, cert) in done {
            for (p, mult) in pieces.iter_mut() {
                if p.is_iso_indecomposable(&r)? {
                    *mult += 1;
                    continue 'next;
                }
            }
            pieces.push((r, 1));
            certificates.push(cert);
        }
        Ok(Decomposition { pieces, certificates })
    }

    /// `self = ker phi^N (+) im phi^N` as representations.
    fn fitting_split(&self, phi: &RepMorphism) -> Result<(Representation, Representation)> {
        let mut psi = phi.clone();
        let mut n = 1;
        while n < self.total_length().max(1) {
            psi = psi.compose(&psi)?;
            n *= 2;
        }
        let mut ker = Vec::new();
        let mut img = Vec::new();
        for c in &psi.components {
            ker.push(c.kernel()?);
            img.push(c.image()?);
        }
        Ok((self.subrepresentation(&ker)?, self.subrepresentation(&img)?))
    }

    /// The subrepresentation on submodules given by their inclusions.
    pub fn subrepresentation(&self, subs: &[(SerialModule, SerialMorphism)]) -> Result<Representation> {
        let q = &self.quiver;
        let maps = (0..q.num_arrows())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                let rhs = self.maps[a].compose(&subs[s].1)?;
                subs[t].1.solve(&rhs)?.ok_or_else(|| Error::Invalid("submodules are not closed under the arrows".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(q, &self.base, subs.iter().map(|s| s.0.clone()).collect(), maps)
    }

    /// The monomorphic approximation built from injective data `(J_i, e_i)`
    /// with `e_i` defined on the source of the in-map at `i`.
    pub fn mo(&self, data: &[(SerialModule, SerialMorphism)]) -> Result<(Representation, RepMorphism)> {
        let q = &self.quiver;
        if data.len() != q.num_vertices() {
            return Err(Error::ShapeMismatch("one envelope per vertex".into()));
        }
        let ins: Vec<(SerialMorphism, DirectSum)> = (0..q.num_vertices()).map(|v| self.in_map(v)).collect();
        for (v, (j, e)) in data.iter().enumerate() {
            if !j.is_injective() {
                return Err(Error::Invalid(format!("module at vertex {} is not injective", q.vertex_name(v))));
            }
            if e.source() != ins[v].0.source() || e.target() != j {
                return Err(Error::ShapeMismatch("envelope map has the wrong shape".into()));
            }
            let (_, kappa) = ins[v].0.kernel()?;
            if !e.compose(&kappa)?.is_injective_map()? {
                return Err(Error::Invalid(format!("map at vertex {} is not monic on the kernel", q.vertex_name(v))));
            }
        }
        let paths: Vec<Vec<Path>> = (0..q.num_vertices()).map(|v| q.paths_into(v)).collect();
        let sums: Vec<DirectSum> = (0..q.num_vertices())
            .map(|v| {
                let mut parts = vec![&self.modules[v]];
                parts.extend(paths[v].iter().map(|p| &data[p.source].0));
                SerialModule::direct_sum(&self.base, &parts)
            })
            .collect();
        let maps = (0..q.num_arrows())
            .map(|b| {
                let (i, k) = (q.source(b), q.target(b));
                let (si, sk) = (&sums[i], &sums[k]);
                let mut f = SerialMorphism::zero(&si.module, &sk.module);
                f.place(&sk.positions[0], &si.positions[0], &self.maps[b]);
                for (pi, p) in paths[i].iter().enumerate() {
                    let qi = extend_index(&paths[k], p, b);
                    f.place(&sk.positions[1 + qi], &si.positions[1 + pi], &SerialMorphism::identity(&data[p.source].0));
                }
                let slot = q.arrows_into(k).iter().position(|&a| a == b).expect("arrow into its target");
                let e_inj = data[k].1.compose(&ins[k].1.injection(slot))?;
                let trivial = paths[k].iter().position(|p| p.is_trivial()).expect("trivial path");
                f.place(&sk.positions[1 + trivial], &si.positions[0], &e_inj);
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Representation::new(q, &self.base, sums.iter().map(|s| s.module.clone()).collect(), maps)?;
        let p = RepMorphism::unchecked(&m, self, sums.iter().map(|s| s.projection(0)).collect());
        Ok((m, p))
    }

    /// Minimal envelope data: `e_i` extends an injective envelope of the
    /// kernel of the in-map at `i`.
    pub fn mimo_data(&self) -> Result<Vec<(SerialModule, SerialMorphism)>> {
        if !self.base.is_abelian() {
            return Err(Error::Unsupported("Mimo needs kernels".into()));
        }
        (0..self.quiver.num_vertices())
            .map(|v| {
                let (k, kappa) = self.in_map(v).0.kernel()?;
                let (j, jm) = k.injective_envelope()?;
                let e = kappa.solve_left(&jm)?.ok_or_else(|| Error::Invalid("no extension to the envelope".into()))?;
                Ok((j, e))
            })
            .collect()
    }

    /// Minimal right approximation by a monomorphic representation.
    pub fn mimo(&self) -> Result<(Representation, RepMorphism)> {
        self.mo(&self.mimo_data()?)
    }

    /// Drop the injective parts of every vertex module.
    pub fn strip_injective_summands(&self) -> Result<(Representation, Vec<SerialModule>)> {
        if !self.base.is_abelian() {
            return Err(Error::Unsupported("injective parts of a stable base".into()));
        }
        let q = &self.quiver;
        let keep: Vec<Vec<usize>> = self
            .modules
            .iter()
            .map(|m| (0..m.num_parts()).filter(|&j| !self.base.label(m.parts()[j]).injective).collect())
            .collect();
        let injectives = self
            .modules
            .iter()
            .map(|m| {
                SerialModule::new(&self.base, m.parts().iter().copied().filter(|&x| self.base.label(x).injective).collect())
            })
            .collect();
        let maps = (0..q.num_arrows())
            .map(|a| self.maps[a].block(&keep[q.target(a)], &keep[q.source(a)]))
            .collect();
        let modules = (0..q.num_vertices())
            .map(|v| SerialModule::new(&self.base, keep[v].iter().map(|&j| self.modules[v].parts()[j]).collect()))
            .collect();
        Ok((Representation::new(q, &self.base, modules, maps)?, injectives))
    }

    /// Image in the representations over the injectively stable base.
    pub fn stable_reduce(&self) -> Result<Representation> {
        let (hat, _) = self.strip_injective_summands()?;
        let st = SerialBase::stable(&self.base)?;
        let modules: Vec<SerialModule> = hat.modules.iter().map(|m| to_stable_module(&st, m)).collect();
        let maps = (0..self.quiver.num_arrows())
            .map(|a| {
                let q = &self.quiver;
                transport(&modules[q.source(a)], &modules[q.target(a)], hat.maps[a].entries())
            })
            .collect();
        Representation::new(&self.quiver, &st, modules, maps)
    }

    /// Lift from the stable base by the minimal-digit section.
    pub fn stable_lift(&self) -> Result<Representation> {
        let parent = self.base.parent().ok_or_else(|| Error::Unsupported("not over a stable base".into()))?.clone();
        let modules: Vec<SerialModule> = self
            .modules
            .iter()
            .map(|m| SerialModule::new(&parent, m.parts().iter().map(|&x| self.base.parent_label(x)).collect()))
            .collect();
        let q = &self.quiver;
        let maps = (0..q.num_arrows())
            .map(|a| transport(&modules[q.source(a)], &modules[q.target(a)], self.maps[a].entries()))
            .collect();
        Representation::new(q, &parent, modules, maps)
    }

    pub fn mimo_from_stable(&self) -> Result<Representation> {
        Ok(self.stable_lift()?.mimo()?.0)
    }

    /// `J` with `self = f_!(J)`, when `self` is monomorphic with injective
    /// vertex modules.
    pub fn injective_rep_recognize(&self) -> Result<Option<Vec<SerialModule>>> {
        if !self.modules.iter().all(SerialModule::is_injective) || !self.is_mono()? {
            return Ok(None);
        }
        Ok(Some(self.kopf()?.into_iter().map(|(m, _)| m).collect()))
    }

    /// The same data over another base with identical label and hom tables.
    pub fn relabel(&self, base: &SerialBase) -> Result<Representation> {
        if base.num_labels() != self.base.num_labels() {
            return Err(Error::LabelMismatch(format!("{} and {} have different labels", self.base, base)));
        }
        self.map_labels(base, |x| x)
    }

    /// Replace every label `x` by `f(x)` over `base`, keeping coefficients.
    /// Hom lengths must agree on every pair that occurs.
    pub fn map_labels(&self, base: &SerialBase, f: impl Fn(LabelId) -> LabelId) -> Result<Representation> {
        let q = &self.quiver;
        let mut modules = Vec::new();
        let mut perms = Vec::new();
        for m in &self.modules {
            let (sorted, pos) = SerialModule::sorted(base, m.parts().iter().map(|&x| f(x)).collect());
            modules.push(sorted);
            perms.push(pos);
        }
        let mut maps = Vec::new();
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            let old = &self.maps[a];
            let mut g = SerialMorphism::zero(&modules[s], &modules[t]);
            for i in 0..old.target().num_parts() {
                for j in 0..old.source().num_parts() {
                    let (x, y) = (old.source().parts()[j], old.target().parts()[i]);
                    if self.base.hom_len(x, y) != base.hom_len(f(x), f(y)) {
                        return Err(Error::LabelMismatch(format!("hom lengths differ between {} and {}", self.base, base)));
                    }
                    g.set(perms[t][i], perms[s][j], old.entry(i, j));
                }
            }
            maps.push(g);
        }
        Representation::new(q, base, modules, maps)
    }

    /// Move an indecomposable monomorphic representation to a chain ring of
    /// the same Loewy length (at most 3) and residue field.
    pub fn transfer(&self, target: ChainRing) -> Result<Representation> {
        let Backing::Chain(src) = self.base.backing() else {
            return Err(Error::Unsupported("transfer needs a chain ring base".into()));
        };
        if src.n() != target.n() || src.p() != target.p() {
            return Err(Error::Unsupported("rings differ in length or residue field".into()));
        }
        if src.n() > 3 {
            return Err(Error::Unsupported("stable categories differ beyond Loewy length 3".into()));
        }
        let gamma = SerialBase::chain(target);
        if let Some(j) = self.injective_rep_recognize()? {
            let j: Vec<SerialModule> = j.iter().map(|m| SerialModule::new(&gamma, m.parts().to_vec())).collect();
            return Representation::f_shriek(&gamma, &self.quiver, &j);
        }
        if !self.is_mono()? {
            return Err(Error::Invalid("transfer needs a monomorphic representation".into()));
        }
        if !self.is_indecomposable()?.0 {
            return Err(Error::Invalid("transfer needs an indecomposable representation".into()));
        }
        let st = self.stable_reduce()?;
        let st_gamma = SerialBase::stable(&gamma)?;
        st.relabel(&st_gamma)?.mimo_from_stable()
    }
}

/// Index of the path `b p` among `paths`.
fn extend_index(paths: &[Path], p: &Path, b: usize) -> usize {
    let mut arrows = p.arrows.clone();
    arrows.push(b);
    paths.iter().position(|x| x.arrows == arrows && x.source == p.source).expect("extended path exists")
}

fn to_stable_module(st: &SerialBase, m: &SerialModule) -> SerialModule {
    SerialModule::new(st, m.parts().iter().map(|&x| st.stable_label_of(x).expect("non-injective label")).collect())
}

/// Morphism between modules over another base with the same part order.
fn transport(s: &SerialModule, t: &SerialModule, entries: &Mat) -> SerialMorphism {
    let mut f = SerialMorphism::zero(s, t);
    for i in 0..entries.rows() {
        for j in 0..entries.cols() {
            f.set(i, j, entries.get(i, j));
        }
    }
    f
}

fn same_multiset(a: &[(Representation, usize)], b: &[(Representation, usize)]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for (x, m) in a {
        let mut hit = false;
        for (k, (y, n)) in b.iter().enumerate() {
            if !used[k] && m == n && x.is_iso_indecomposable(y)? {
                used[k] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_nilpotent(field: &ChainRing, m: &Mat) -> bool {
    if m.rows() == 0 {
        return true;
    }
    let mut x = m.clone();
    let mut k = 1;
    while k < m.rows() {
        x = x.mul(field, &x);
        k *= 2;
    }
    x.is_zero()
}

/// Krull-Schmidt pieces with multiplicities and the certificate of each
/// piece's indecomposability.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pieces: Vec<(Representation, usize)>,
    pub certificates: Vec<Certificate>,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.pieces.iter().map(|p| p.1).sum()
    }
}

enum Search {
    Found(Vec<u32>),
    Exhausted,
    Sampled(u32),
}

/// The residue-field image of a hom set: top blocks of a basis of generators.
struct TopSpace {
    p: u32,
    basis: Vec<usize>,
    tops: Vec<Vec<Mat>>,
    zero: Vec<Mat>,
    field: ChainRing,
}

impl TopSpace {
    fn new(hom: &HomSet, base: &SerialBase) -> Self {
        let field = residue_field(base);
        let gens = hom.generators();
        let all: Vec<Vec<Mat>> = gens.iter().map(|g| g.iter().flat_map(top_blocks).collect()).collect();
        let mut basis = Vec::new();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (k, t) in all.iter().enumerate() {
            let flat: Vec<u32> = t.iter().flat_map(|m| m.data().iter().copied()).collect();
            if flat.iter().all(|&x| x == 0) {
                continue;
            }
            rows.push(flat);
            let width = rows[0].len();
            let m = Mat::from_vec(rows.len(), width, rows.concat());
            if m.field_rank(&field) == rows.len() {
                basis.push(k);
            } else {
                rows.pop();
            }
        }
        let tops = basis.iter().map(|&k| all[k].clone()).collect();
        let zero = hom.element(&vec![0; hom.coords.len()]).iter().flat_map(top_blocks).collect();
        TopSpace { p: base.coeff().p(), basis, tops, zero, field }
    }

    fn combine(&self, c: &[u32]) -> Vec<Mat> {
        let mut out = self.zero.clone();
        for (t, &ck) in self.tops.iter().zip(c) {
            if ck == 0 {
                continue;
            }
            for (o, m) in out.iter_mut().zip(t) {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        o.set(i, j, (o.get(i, j) + ck * m.get(i, j)) % self.p);
                    }
                }
            }
        }
        out
    }

    fn all_invertible(&self, t: &[Mat]) -> bool {
        top_blocks_invertible(&self.field, t)
    }

    fn search(&self, pred: impl Fn(&[Mat]) -> bool, seed: u64) -> Search {
        let d = self.basis.len() as u32;
        if self.tops.is_empty() {
            return if pred(&self.zero) { Search::Found(vec![]) } else { Search::Exhausted };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLES.min(64) {
            let c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..self.p)).collect();
            if pred(&self.combine(&c)) {
                return Search::Found(c);
            }
        }
        let total = (self.p as u64).checked_pow(d);
        match total {
            Some(total) if total <= EXHAUSTIVE_LIMIT => {
                for code in 0..total {
                    let mut x = code;
                    let c: Vec<u32> = (0..d)
                        .map(|_| {
                            let v = (x % self.p as u64) as u32;
                            x /= self.p as u64;
                            v
                        })
                        .collect();
                    if pred(&self.combine(&c)) {
                        return Search::Found(c);
                    }
                }
                Search::Exhausted
            }
            _ => {
                for _ in 0..SAMPLES {
                    let c: Vec<u32> = (0..d).map(|_| rng.gen_range(0..self.p)).collect();
                    if pred(&self.combine(&c)) {
                        return Search::Found(c);
                    }
                }
                Search::Sampled(SAMPLES + 64)
            }
        }
    }

    /// The hom element `sum c_k gen_{basis[k]}`.
    fn element(&self, hom: &HomSet, c: &[u32]) -> Vec<SerialMorphism> {
        let mut ys = vec![0; hom.lattice.gens.len()];
        for (&k, &ck) in self.basis.iter().zip(c) {
            ys[k] = ck;
        }
        hom.element(&hom.lattice.combine(&ys))
    }
}

impl RepMorphism {
    /// Checks naturality.
    pub fn new(source: &Representation, target: &Representation, components: Vec<SerialMorphism>) -> Result<Self> {
        source.check_compatible(target)?;
        let q = &source.quiver;
        if components.len() != q.num_vertices() {
            return Err(Error::ShapeMismatch("one component per vertex".into()));
        }
        for (v, c) in components.iter().enumerate() {
            if c.source() != &source.modules[v] || c.target() != &target.modules[v] {
                return Err(Error::ShapeMismatch(format!("component at {} has the wrong shape", q.vertex_name(v))));
            }
        }
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            let lhs = components[t].compose(&source.maps[a])?;
            let rhs = target.maps[a].compose(&components[s])?;
            if lhs != rhs {
                return Err(Error::NotNatural(format!("square for arrow {} does not commute", q.arrow_name(a))));
            }
        }
        Ok(Self::unchecked(source, target, components))
    }

    fn unchecked(source: &Representation, target: &Representation, components: Vec<SerialMorphism>) -> Self {
        RepMorphism { source: source.clone(), target: target.clone(), components }
    }

    pub fn compose(&self, f: &RepMorphism) -> Result<RepMorphism> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch("morphisms are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&f.components)
            .map(|(g, h)| g.compose(h))
            .collect::<Result<_>>()?;
        Ok(Self::unchecked(&f.source, &self.target, components))
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(SerialMorphism::is_iso)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SerialMorphism::is_zero)
    }

    /// Induced map on the cokernels of the in-maps.
    pub fn kopf(&self) -> Result<Vec<SerialMorphism>> {
        let (ks, kt) = (self.source.kopf()?, self.target.kopf()?);
        (0..self.components.len())
            .map(|v| {
                let g = kt[v].1.compose(&self.components[v])?;
                ks[v].1.solve_left(&g)?.ok_or_else(|| Error::Invalid("map does not descend to the cokernels".into()))
            })
            .collect()
    }

    /// Induced map on stable reductions.
    pub fn stable_reduce(&self) -> Result<RepMorphism> {
        let s = self.source.stable_reduce()?;
        let t = self.target.stable_reduce()?;
        let base = &self.source.base;
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(v, c)| {
                let rows: Vec<usize> = (0..c.target().num_parts()).filter(|&i| !base.label(c.target().parts()[i]).injective).collect();
                let cols: Vec<usize> = (0..c.source().num_parts()).filter(|&j| !base.label(c.source().parts()[j]).injective).collect();
                transport(&s.modules[v], &t.modules[v], c.block(&rows, &cols).entries())
            })
            .collect();
        Ok(Self::unchecked(&s, &t, components))
    }
}

/// Random representation with at most `max_parts` parts per vertex.
pub fn random_representation<R: Rng>(
    quiver: &Quiver,
    base: &SerialBase,
    max_parts: usize,
    allow_injective: bool,
    rng: &mut R,
) -> Representation {
    let labels: Vec<usize> =
        (0..base.num_labels()).filter(|&x| allow_injective || !base.label(x).injective).collect();
    let modules: Vec<SerialModule> = (0..quiver.num_vertices())
        .map(|_| {
            let k = rng.gen_range(0..=max_parts);
            SerialModule::new(base, (0..k).map(|_| labels[rng.gen_range(0..labels.len())]).collect())
        })
        .collect();
    let q = base.coeff().order();
    let maps = (0..quiver.num_arrows())
        .map(|a| {
            let (s, t) = (&modules[quiver.source(a)], &modules[quiver.target(a)]);
            let mut f = SerialMorphism::zero(s, t);
            for i in 0..t.num_parts() {
                for j in 0..s.num_parts() {
                    f.set(i, j, rng.gen_range(0..q));
                }
            }
            f
        })
        .collect();
    Representation::new(quiver, base, modules, maps).expect("shapes match")
}
