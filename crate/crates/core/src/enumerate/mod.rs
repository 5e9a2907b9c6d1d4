//! Enumeration of indecomposable representations.

pub mod flags;
pub mod kronecker;
pub mod orbit;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::base::{Backing, LabelId, SerialBase};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rep::{Certificate, Representation};
use crate::ring::ChainRing;
use crate::serialmod::SerialModule;

pub use flags::{verify_length_vector_table, TableVerdict, Verdict};
pub use orbit::{automorphism_generators, MapSpace};

/// How a class was shown to be complete and distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassCertificate {
    /// Orbit enumeration over every module tuple within the caps.
    Exhaustive,
    /// Search restricted to one length or dimension vector.
    PerVector,
    /// Explicit construction from a classification.
    Family,
}

#[derive(Clone, Debug)]
pub struct Class {
    pub rep: Representation,
    pub certificate: ClassCertificate,
    pub indecomposable: Certificate,
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub base: SerialBase,
    pub quiver: Quiver,
    pub caps: Vec<u32>,
    pub classes: Vec<Class>,
    /// (injective, non-injective)
    pub counts: (usize, usize),
}

impl EnumerationReport {
    fn new(base: &SerialBase, quiver: &Quiver, caps: Vec<u32>, classes: Vec<Class>) -> Result<Self> {
        let mut inj = 0;
        for c in &classes {
            if c.rep.injective_rep_recognize()?.is_some() {
                inj += 1;
            }
        }
        let counts = (inj, classes.len() - inj);
        Ok(EnumerationReport { base: base.clone(), quiver: quiver.clone(), caps, classes, counts })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether both reports list the same classes up to isomorphism.
    pub fn same_classes(&self, other: &EnumerationReport) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        let mut used = vec![false; other.len()];
        for c in &self.classes {
            let mut hit = false;
            for (k, d) in other.classes.iter().enumerate() {
                if !used[k] && c.rep.is_iso_indecomposable(&d.rep)? {
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
}

/// Every module with at most `cap` composition factors, zero first.
pub fn modules_up_to(base: &SerialBase, cap: u32) -> Vec<SerialModule> {
    fn go(base: &SerialBase, from: LabelId, left: u32, parts: &mut Vec<LabelId>, out: &mut Vec<SerialModule>) {
        out.push(SerialModule::new(base, parts.clone()));
        for a in from..base.num_labels() {
            let l = base.label(a).length;
            if l <= left {
                parts.push(a);
                go(base, a, left - l, parts, out);
                parts.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(base, 0, cap, &mut Vec::new(), &mut out);
    out
}

fn support_connected(q: &Quiver, modules: &[SerialModule]) -> bool {
    let live: Vec<usize> = (0..modules.len()).filter(|&v| !modules[v].is_zero()).collect();
    let Some(&start) = live.first() else { return false };
    let mut seen = vec![false; modules.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            for (x, y) in [(s, t), (t, s)] {
                if x == v && !seen[y] && !modules[y].is_zero() {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    live.iter().all(|&v| seen[v])
}

/// Necessary condition for a monomorphic in-map at every vertex: the socles
/// of the sources fit into the socle of the target.
fn socles_fit(q: &Quiver, modules: &[SerialModule]) -> Result<bool> {
    let base = modules[0].base();
    for v in 0..modules.len() {
        let mut need = vec![0usize; base.num_labels()];
        let mut len = 0;
        for a in q.arrows_into(v) {
            let s = &modules[q.source(a)];
            len += s.length();
            for &x in s.socle()?.parts() {
                need[x] += 1;
            }
        }
        if len > modules[v].length() {
            return Ok(false);
        }
        let mut have = vec![0usize; base.num_labels()];
        for &x in modules[v].socle()?.parts() {
            have[x] += 1;
        }
        if need.iter().zip(&have).any(|(n, h)| n > h) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tuples(choices: &[Vec<SerialModule>]) -> Vec<Vec<SerialModule>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out.into_iter().flat_map(|t| c.iter().map(move |m| [t.clone(), vec![m.clone()]].concat())).collect();
    }
    out
}

/// Indecomposable representations with vertex lengths bounded by `caps`, one
/// per isomorphism class. With fixed vertex modules the classes are the
/// orbits of the product of the vertex automorphism groups on the arrow
/// maps. `budget` bounds the total number of arrow-map tuples visited.
pub fn enumerate_bounded(
    q: &Quiver,
    base: &SerialBase,
    caps: &[u32],
    mono_only: bool,
    budget: u64,
) -> Result<EnumerationReport> {
    if caps.len() != q.num_vertices() {
        return Err(Error::ShapeMismatch(format!("{} caps for {} vertices", caps.len(), q.num_vertices())));
    }
    let choices: Vec<Vec<SerialModule>> = caps.iter().map(|&c| modules_up_to(base, c)).collect();
    let mut left = budget;
    let mut classes = Vec::new();
    for modules in tuples(&choices) {
        if !support_connected(q, &modules) || (mono_only && !socles_fit(q, &modules)?) {
            continue;
        }
        let space = MapSpace::new(q, base, modules.clone());
        let size = space.size().filter(|&s| s <= left).ok_or_else(|| {
            Error::Budget(format!("more than {budget} representations within caps {caps:?}"))
        })?;
        left -= size;
        for (x, _) in space.orbits(size)? {
            let rep = Representation::new(q, base, modules.clone(), space.maps(&x))?;
            if mono_only && !rep.is_mono()? {
                continue;
            }
            let (ind, cert) = rep.is_indecomposable()?;
            if ind {
                classes.push(Class { rep, certificate: ClassCertificate::Exhaustive, indecomposable: cert });
            }
        }
    }
    EnumerationReport::new(base, q, caps.to_vec(), classes)
}

/// An indecomposable with the given vertex modules: random maps first, then
/// every orbit.
fn indecomposable_with_modules(q: &Quiver, base: &SerialBase, modules: Vec<SerialModule>, seed: u64) -> Result<Option<Class>> {
    let space = MapSpace::new(q, base, modules.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lens = space.coords.lens();
    let ring = base.coeff();
    for _ in 0..64 {
        let x: Vec<_> = lens.iter().map(|&h| ring.truncate(rng.gen_range(0..ring.order()), h)).collect();
        let rep = Representation::new(q, base, modules.clone(), space.maps(&x))?;
        if let (true, cert) = rep.is_indecomposable()? {
            return Ok(Some(Class { rep, certificate: ClassCertificate::PerVector, indecomposable: cert }));
        }
    }
    for (x, _) in space.orbits(1 << 24)? {
        let rep = Representation::new(q, base, modules.clone(), space.maps(&x))?;
        if let (true, cert) = rep.is_indecomposable()? {
            return Ok(Some(Class { rep, certificate: ClassCertificate::PerVector, indecomposable: cert }));
        }
    }
    Ok(None)
}

/// One indecomposable representation over `F_p` per positive root of a
/// Dynkin quiver, found by search within each dimension vector.
pub fn enumerate_gabriel(q: &Quiver, p: u32) -> Result<EnumerationReport> {
    let roots = q.positive_roots()?;
    let base = SerialBase::chain(ChainRing::poly(p, 1)?);
    let simple = base.label_by_name("M1")?;
    let mut classes = Vec::new();
    for (k, d) in roots.iter().enumerate() {
        let modules: Vec<SerialModule> =
            d.iter().map(|&x| SerialModule::new(&base, vec![simple; x as usize])).collect();
        let class = indecomposable_with_modules(q, &base, modules, k as u64)?
            .ok_or_else(|| Error::Invalid(format!("no indecomposable of dimension {d:?}")))?;
        classes.push(class);
    }
    let caps = (0..q.num_vertices()).map(|v| roots.iter().map(|d| d[v] as u32).max().unwrap_or(0)).collect();
    EnumerationReport::new(&base, q, caps, classes)
}

/// The indecomposable monomorphic representations of a Dynkin quiver over
/// a base with radical square zero: `f_!` of each indecomposable injective
/// at each vertex, and the lifts of the indecomposables over the stable
/// base, which is a product of copies of `F_p`.
pub fn enumerate_mono_rad2(q: &Quiver, base: &SerialBase) -> Result<EnumerationReport> {
    match base.backing() {
        Backing::Chain(r) if r.n() == 2 => {}
        Backing::Rad2Nak { .. } => {}
        _ => return Err(Error::Unsupported("needs a chain ring of length 2 or a radical-square-zero Nakayama base".into())),
    }
    if q.dynkin_type()?.is_none() {
        return Err(Error::Invalid("quiver is not of Dynkin type".into()));
    }
    let mut classes = Vec::new();
    for j in base.injective_labels() {
        for v in 0..q.num_vertices() {
            let mut at = vec![SerialModule::zero(base); q.num_vertices()];
            at[v] = SerialModule::new(base, vec![j]);
            let rep = Representation::f_shriek(base, q, &at)?;
            let (_, cert) = rep.is_indecomposable()?;
            classes.push(Class { rep, certificate: ClassCertificate::Family, indecomposable: cert });
        }
    }
    let stable = SerialBase::stable(base)?;
    let gabriel = enumerate_gabriel(q, base.coeff().p())?;
    for s in 0..stable.num_labels() {
        for g in &gabriel.classes {
            let lifted = g.rep.map_labels(&stable, |_| s)?.mimo_from_stable()?;
            let (ind, cert) = lifted.is_indecomposable()?;
            if !ind {
                return Err(Error::Invalid("lift of an indecomposable decomposed".into()));
            }
            classes.push(Class { rep: lifted, certificate: ClassCertificate::Family, indecomposable: cert });
        }
    }
    let caps = (0..q.num_vertices())
        .map(|v| classes.iter().map(|c| c.rep.module(v).length()).max().unwrap_or(0))
        .collect();
    let report = EnumerationReport::new(base, q, caps, classes)?;
    let (m, t) = (base.injective_labels().len(), stable.num_labels());
    let expected = m * q.num_vertices() + t * q.positive_roots()?.len();
    if report.len() != expected {
        return Err(Error::Invalid(format!("found {} classes, expected {expected}", report.len())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
