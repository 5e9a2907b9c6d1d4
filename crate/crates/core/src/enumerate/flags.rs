//! Monomorphic representations of a linear quiver as chains of submodules,
//! classified by orbits of the automorphism group of the top module.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use serde::Serialize;

use super::orbit::automorphism_generators;
use super::{Class, ClassCertificate};
use crate::base::SerialBase;
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rep::Representation;
use crate::ring::{ChainRing, Elem};
use crate::serialmod::{SerialModule, SerialMorphism};

/// The elements of a module over a chain ring, encoded in mixed radix.
pub struct Elements {
    ring: ChainRing,
    lens: Vec<u32>,
    radix: Vec<u32>,
    size: usize,
}

pub type Perm = Vec<u32>;

impl Elements {
    pub fn new(m: &SerialModule) -> Result<Self> {
        let ring = m.base().chain_ring().ok_or_else(|| Error::Unsupported("element model needs a chain ring".into()))?;
        let lens = m.partition();
        let radix: Vec<u32> = lens.iter().map(|&l| ring.pk(l)).collect();
        let size = radix.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r as usize));
        match size {
            Some(size) if size <= 1 << 24 => Ok(Elements { ring, lens, radix, size }),
            _ => Err(Error::Budget("module has too many elements".into())),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn decode(&self, mut c: usize) -> Vec<Elem> {
        self.radix
            .iter()
            .map(|&r| {
                let x = (c % r as usize) as Elem;
                c /= r as usize;
                x
            })
            .collect()
    }

    pub fn encode(&self, x: &[Elem]) -> usize {
        x.iter().zip(&self.radix).rev().fold(0, |acc, (&v, &r)| acc * r as usize + v as usize)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let z: Vec<Elem> =
            x.iter().zip(&y).zip(&self.lens).map(|((&u, &v), &l)| self.ring.truncate(self.ring.add(u, v), l)).collect();
        self.encode(&z)
    }

    fn pi(&self, a: usize) -> usize {
        let x = self.decode(a);
        let z: Vec<Elem> = x.iter().zip(&self.lens).map(|(&u, &l)| self.ring.truncate(self.ring.shift_up(u, 1), l)).collect();
        self.encode(&z)
    }

    /// Permutation of the elements induced by an endomorphism.
    pub fn perm(&self, g: &SerialMorphism) -> Perm {
        let r = &self.ring;
        (0..self.size)
            .map(|c| {
                let x = self.decode(c);
                let y: Vec<Elem> = self
                    .lens
                    .iter()
                    .enumerate()
                    .map(|(i, &li)| {
                        let mut acc = 0;
                        for (j, &lj) in self.lens.iter().enumerate() {
                            let coeff = r.shift_up(g.entry(i, j), li.saturating_sub(lj));
                            acc = r.add(acc, r.mul(coeff, x[j]));
                        }
                        r.truncate(acc, li)
                    })
                    .collect();
                self.encode(&y) as u32
            })
            .collect()
    }

    /// `s + R w` for a submodule `s` and an element `w` with `pi w` in `s`.
    fn extend(&self, s: &FixedBitSet, w: usize) -> FixedBitSet {
        let members: Vec<usize> = s.ones().collect();
        let mut out = s.clone();
        let mut mw = w;
        while !s.contains(mw) {
            for &u in &members {
                out.insert(self.add(u, mw));
            }
            mw = self.add(mw, w);
        }
        out
    }

    /// Submodule generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size);
        s.insert(0);
        for &g in gens {
            let mut chain = vec![g];
            while let Some(&last) = chain.last() {
                let next = self.pi(last);
                if next == last || chain.contains(&next) {
                    break;
                }
                chain.push(next);
            }
            for &w in chain.iter().rev() {
                if !s.contains(w) {
                    s = self.extend(&s, w);
                }
            }
        }
        s
    }

    /// All submodules of `ambient` with at most `max_len` composition factors,
    /// grouped by length.
    pub fn submodules(&self, ambient: &FixedBitSet, max_len: u32) -> Vec<Vec<FixedBitSet>> {
        let mut zero = FixedBitSet::with_capacity(self.size);
        zero.insert(0);
        let mut layers = vec![vec![zero]];
        for _ in 0..max_len {
            let mut next: HashMap<FixedBitSet, ()> = HashMap::new();
            for s in layers.last().expect("nonempty") {
                let mut covered = s.clone();
                for v in ambient.ones() {
                    if covered.contains(v) || !s.contains(self.pi(v)) {
                        continue;
                    }
                    let t = self.extend(s, v);
                    covered.union_with(&t);
                    next.entry(t).or_insert(());
                }
            }
            if next.is_empty() {
                break;
            }
            let mut layer: Vec<FixedBitSet> = next.into_keys().collect();
            layer.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
            layers.push(layer);
        }
        layers
    }

    /// A submodule as a module with its inclusion into `m`.
    pub fn realize(&self, m: &SerialModule, s: &FixedBitSet) -> Result<(SerialModule, SerialMorphism)> {
        let base = m.base();
        let mut gens = Vec::new();
        let mut cur = self.span(&[]);
        for v in s.ones() {
            if !cur.contains(v) {
                gens.push(v);
                cur = self.span(&gens);
            }
        }
        let n = self.ring.n();
        let top = base.label_by_name(&format!("M{n}"))?;
        let free = SerialModule::new(base, vec![top; gens.len()]);
        let mut f = SerialMorphism::zero(&free, m);
        for (k, &g) in gens.iter().enumerate() {
            for (i, x) in self.decode(g).into_iter().enumerate() {
                f.set(i, k, x);
            }
        }
        f.image()
    }
}

fn apply(p: &Perm, s: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(s.len());
    for x in s.ones() {
        out.insert(p[x] as usize);
    }
    out
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Orbits of `gens` on `sets`, each with the stabilizer of its first member
/// given by Schreier generators.
fn orbits_with_stabilizers(
    gens: &[Perm],
    sets: &[FixedBitSet],
    mut on_stabilizer: impl FnMut(usize, &mut dyn Iterator<Item = Perm>),
) -> Vec<usize> {
    let index: HashMap<&FixedBitSet, usize> = sets.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut seen = vec![false; sets.len()];
    let mut reps = Vec::new();
    for start in 0..sets.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        reps.push(start);
        let n = gens.first().map_or(0, |g| g.len());
        let mut transversal: HashMap<usize, Perm> = HashMap::new();
        transversal.insert(start, (0..n as u32).collect());
        let mut queue = vec![start];
        let mut schreier = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let k = queue[head];
            head += 1;
            for g in gens {
                let img = apply(g, &sets[k]);
                let j = index[&img];
                let gt = compose(g, &transversal[&k]);
                if let Some(tj) = transversal.get(&j) {
                    schreier.push(compose(&invert(tj), &gt));
                } else {
                    seen[j] = true;
                    transversal.insert(j, gt);
                    queue.push(j);
                }
            }
        }
        on_stabilizer(start, &mut schreier.into_iter());
    }
    reps
}

/// One monomorphic representation of the linear quiver per isomorphism class
/// of chains `U_1 <= ... <= U_{k} <= M` with `M` of length at most
/// `caps[k]` and `U_i` of length at most `caps[i-1]`. Supports chains of
/// two or three vertices.
pub fn mono_chain_classes(q: &Quiver, base: &SerialBase, caps: &[u32]) -> Result<Vec<Representation>> {
    if base.chain_ring().is_none() {
        return Err(Error::Unsupported("chains of submodules need a chain ring".into()));
    }
    if !(2..=3).contains(&caps.len()) || q.num_vertices() != caps.len() {
        return Err(Error::Unsupported("chains of two or three vertices".into()));
    }
    let mut out = Vec::new();
    let top_cap = caps[caps.len() - 1];
    for m in super::modules_up_to(base, top_cap) {
        if m.is_zero() {
            continue;
        }
        let el = Elements::new(&m)?;
        let all = el.span(&(0..el.size()).collect::<Vec<_>>());
        let gens: Vec<Perm> = automorphism_generators(&m).iter().map(|g| el.perm(&g.g)).collect();
        let cap_mid = caps[caps.len() - 2].min(m.length());
        let layers = el.submodules(&all, cap_mid);
        let realize_top = (m.clone(), SerialMorphism::identity(&m));
        for layer in &layers {
            if caps.len() == 2 {
                for k in orbits_with_stabilizers(&gens, layer, |_, _| {}) {
                    let (u, iu) = el.realize(&m, &layer[k])?;
                    out.push(Representation::new(q, base, vec![u, realize_top.0.clone()], vec![iu])?);
                }
                continue;
            }
            let mut pending = Vec::new();
            orbits_with_stabilizers(&gens, layer, |k, stab| {
                let inner = el.submodules(&layer[k], caps[0]);
                let flat: Vec<FixedBitSet> = inner.into_iter().flatten().collect();
                let index: HashMap<&FixedBitSet, usize> = flat.iter().enumerate().map(|(i, s)| (s, i)).collect();
                let mut uf = UnionFind((0..flat.len()).collect());
                for s in stab {
                    for (i, u) in flat.iter().enumerate() {
                        uf.union(i, index[&apply(&s, u)]);
                    }
                }
                let reps: Vec<FixedBitSet> =
                    (0..flat.len()).filter(|&i| uf.find(i) == i).map(|i| flat[i].clone()).collect();
                pending.push((k, reps));
            });
            for (k, reps) in pending {
                let (u2, i2) = el.realize(&m, &layer[k])?;
                for u1 in reps {
                    let (u1m, i1) = el.realize(&m, &u1)?;
                    let f = i2.solve(&i1)?.ok_or_else(|| Error::Invalid("chain is not nested".into()))?;
                    out.push(Representation::new(q, base, vec![u1m, u2.clone(), m.clone()], vec![f, i2.clone()])?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Unique,
    Missing,
    Multiple(usize),
}

#[derive(Clone, Debug)]
pub struct TableVerdict {
    pub caps: Vec<u32>,
    pub vectors: Vec<(Vec<u32>, Verdict)>,
    /// Unlisted length vectors within the caps that carry indecomposables.
    pub extras: Vec<(Vec<u32>, usize)>,
    pub classes: Vec<Class>,
}

impl TableVerdict {
    pub fn passed(&self) -> bool {
        self.extras.is_empty() && self.vectors.iter().all(|(_, v)| *v == Verdict::Unique)
    }
}

/// Checks that each listed length vector carries exactly one indecomposable
/// monomorphic representation of the linear quiver, searching every chain of
/// submodules within the table's hull widened by `margin`.
pub fn verify_length_vector_table(q: &Quiver, base: &SerialBase, table: &[Vec<u32>], margin: u32) -> Result<TableVerdict> {
    let k = q.num_vertices();
    let linear = q.num_arrows() + 1 == k && (0..q.num_arrows()).all(|a| q.source(a) + 1 == q.target(a));
    if !linear {
        return Err(Error::Unsupported("length vector tables need a linearly oriented quiver".into()));
    }
    if table.is_empty() {
        return Ok(TableVerdict { caps: vec![0; k], vectors: Vec::new(), extras: Vec::new(), classes: Vec::new() });
    }
    if table.iter().any(|v| v.len() != k) {
        return Err(Error::ShapeMismatch(format!("table vectors must have {k} entries")));
    }
    let caps: Vec<u32> = (0..k).map(|v| table.iter().map(|t| t[v]).max().unwrap_or(0) + margin).collect();
    let mut classes = Vec::new();
    for rep in mono_chain_classes(q, base, &caps)? {
        let (ind, cert) = rep.is_indecomposable()?;
        if ind {
            classes.push(Class { rep, certificate: ClassCertificate::PerVector, indecomposable: cert });
        }
    }
    let count = |v: &[u32]| classes.iter().filter(|c| c.rep.length_vector() == v).count();
    let vectors = table
        .iter()
        .map(|v| {
            let verdict = match count(v) {
                0 => Verdict::Missing,
                1 => Verdict::Unique,
                n => Verdict::Multiple(n),
            };
            (v.clone(), verdict)
        })
        .collect();
    let mut extras: Vec<(Vec<u32>, usize)> = Vec::new();
    for c in &classes {
        let v = c.rep.length_vector();
        if !table.contains(&v) && !extras.iter().any(|(w, _)| *w == v) {
            let n = count(&v);
            extras.push((v, n));
        }
    }
    extras.sort();
    Ok(TableVerdict { caps, vectors, extras, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Arith;

    fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn submodule_counts_of_semisimple_modules() {
        let base = SerialBase::chain(ChainRing::poly(2, 3).unwrap());
        let m = SerialModule::from_names(&base, &["M1", "M1", "M1", "M1"]).unwrap();
        let el = Elements::new(&m).unwrap();
        let all = el.span(&(0..el.size()).collect::<Vec<_>>());
        assert_eq!(all.count_ones(..), 16);
        let layers = el.submodules(&all, 4);
        for (k, layer) in layers.iter().enumerate() {
            assert_eq!(layer.len() as u64, gaussian_binomial(4, k as u32, 2));
        }
    }

    #[test]
    fn submodules_of_cyclic_modules_form_a_chain() {
        for arith in [Arith::Int, Arith::Poly] {
            let base = SerialBase::chain(ChainRing::new(arith, 3, 3).unwrap());
            let m = SerialModule::from_names(&base, &["M3"]).unwrap();
            let el = Elements::new(&m).unwrap();
            let all = el.span(&[1]);
            assert_eq!(all.count_ones(..), 27);
            let layers = el.submodules(&all, 3);
            assert_eq!(layers.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        }
    }

    #[test]
    fn realized_submodule_has_the_right_size() {
        let base = SerialBase::chain(ChainRing::int(2, 3).unwrap());
        let m = SerialModule::from_names(&base, &["M3", "M1"]).unwrap();
        let el = Elements::new(&m).unwrap();
        let all = el.span(&(0..el.size()).collect::<Vec<_>>());
        for layer in el.submodules(&all, 4) {
            for s in layer {
                let (u, i) = el.realize(&m, &s).unwrap();
                assert_eq!(2usize.pow(u.length()), s.count_ones(..));
                assert!(i.is_injective_map().unwrap());
            }
        }
    }

    #[test]
    fn a2_chains_over_z8_give_the_listed_indecomposables() {
        let base = SerialBase::chain(ChainRing::int(2, 3).unwrap());
        let q = Quiver::builtin("An-linear:2").unwrap();
        let reps = mono_chain_classes(&q, &base, &[3, 4]).unwrap();
        let mut vectors: Vec<Vec<u32>> =
            reps.iter().filter(|r| r.is_indecomposable().unwrap().0).map(|r| r.length_vector()).collect();
        vectors.sort();
        let mut expected: Vec<Vec<u32>> = (0..=3u32).flat_map(|j| (0..=j).map(move |i| vec![i, j])).filter(|v| v[1] > 0).collect();
        expected.push(vec![2, 4]);
        expected.sort();
        assert_eq!(vectors, expected);
    }
}
