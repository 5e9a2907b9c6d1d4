//! Orbits of vertex automorphism groups on spaces of arrow maps.

use fixedbitset::FixedBitSet;

use crate::base::SerialBase;
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::ring::{Arith, Elem};
use crate::serialmod::{Coords, SerialModule, SerialMorphism};

/// An automorphism and its inverse.
#[derive(Clone, Debug)]
pub struct AutGen {
    pub g: SerialMorphism,
    pub inv: SerialMorphism,
}

/// Generators of `Aut(m)`: unit rescalings of single parts and elementary
/// transvections `1 + c e_ij` with `c` running over additive generators of
/// the hom group.
pub fn automorphism_generators(m: &SerialModule) -> Vec<AutGen> {
    let base = m.base();
    let ring = base.coeff();
    let parts = m.parts();
    let mut out = Vec::new();
    let id = SerialMorphism::identity(m);
    for (i, &x) in parts.iter().enumerate() {
        let h = base.hom_len(x, x);
        let mut seen = Vec::new();
        for u in ring.unit_generators() {
            let u = ring.truncate(u, h);
            if u == ring.truncate(ring.one(), h) || seen.contains(&u) {
                continue;
            }
            seen.push(u);
            let inv = ring.truncate(ring.inverse(u).expect("unit generator"), h);
            let mut g = id.clone();
            g.set(i, i, u);
            let mut gi = id.clone();
            gi.set(i, i, inv);
            out.push(AutGen { g, inv: gi });
        }
    }
    for (i, &y) in parts.iter().enumerate() {
        for (j, &x) in parts.iter().enumerate() {
            if i == j {
                continue;
            }
            let h = base.hom_len(x, y);
            let steps: Vec<u32> = match ring.arith() {
                Arith::Int => (0..h.min(1)).collect(),
                Arith::Poly => (0..h).collect(),
            };
            for k in steps {
                let c = ring.pi_pow(k);
                let mut g = id.clone();
                g.set(i, j, c);
                let mut gi = id.clone();
                gi.set(i, j, ring.neg(c));
                out.push(AutGen { g, inv: gi });
            }
        }
    }
    out
}

/// The arrow maps of representations with fixed vertex modules, as a
/// coordinate vector.
pub struct MapSpace {
    pub quiver: Quiver,
    pub base: SerialBase,
    pub modules: Vec<SerialModule>,
    pub coords: Coords,
    radix: Vec<u64>,
    ranges: Vec<std::ops::Range<usize>>,
}

/// How one automorphism generator acts on the coordinates.
struct Action {
    /// (coordinate range of a block, images of that block's unit vectors)
    blocks: Vec<(std::ops::Range<usize>, Vec<Vec<Elem>>)>,
}

impl MapSpace {
    pub fn new(quiver: &Quiver, base: &SerialBase, modules: Vec<SerialModule>) -> Self {
        let blocks: Vec<(SerialModule, SerialModule)> = (0..quiver.num_arrows())
            .map(|a| (modules[quiver.source(a)].clone(), modules[quiver.target(a)].clone()))
            .collect();
        let coords = Coords::new(blocks);
        let p = base.coeff().p() as u64;
        let radix = coords.lens().iter().map(|&h| p.pow(h)).collect();
        let mut ranges = vec![0..0; quiver.num_arrows()];
        for (e, &(k, ..)) in coords.entries.iter().enumerate() {
            if ranges[k].is_empty() {
                ranges[k] = e..e + 1;
            } else {
                ranges[k].end = e + 1;
            }
        }
        MapSpace { quiver: quiver.clone(), base: base.clone(), modules, coords, radix, ranges }
    }

    /// Number of points, if it fits in `u64`.
    pub fn size(&self) -> Option<u64> {
        self.radix.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r))
    }

    pub fn decode(&self, mut code: u64) -> Vec<Elem> {
        self.radix
            .iter()
            .map(|&r| {
                let x = (code % r) as Elem;
                code /= r;
                x
            })
            .collect()
    }

    pub fn encode(&self, x: &[Elem]) -> u64 {
        let mut code = 0u64;
        for (&v, &r) in x.iter().zip(&self.radix).rev() {
            code = code * r + v as u64;
        }
        code
    }

    pub fn maps(&self, x: &[Elem]) -> Vec<SerialMorphism> {
        self.coords.to_morphisms(x)
    }

    fn unit_image(&self, a: usize, e: usize, f: impl Fn(&SerialMorphism) -> SerialMorphism) -> Vec<Elem> {
        let (_, i, j, _) = self.coords.entries[e];
        let (s, t) = &self.coords.blocks[a];
        let mut m = SerialMorphism::zero(s, t);
        m.set(i, j, self.base.coeff().one());
        let img = f(&m);
        self.ranges[a].clone().map(|c| {
            let (_, ii, jj, _) = self.coords.entries[c];
            img.entry(ii, jj)
        }).collect()
    }

    fn action(&self, v: usize, gen: &AutGen) -> Action {
        let q = &self.quiver;
        let mut blocks = Vec::new();
        for a in q.arrows_into(v) {
            let imgs = self.ranges[a].clone().map(|e| self.unit_image(a, e, |m| gen.g.compose(m).expect("shapes"))).collect();
            blocks.push((self.ranges[a].clone(), imgs));
        }
        for a in q.arrows_from(v) {
            let imgs = self.ranges[a].clone().map(|e| self.unit_image(a, e, |m| m.compose(&gen.inv).expect("shapes"))).collect();
            blocks.push((self.ranges[a].clone(), imgs));
        }
        Action { blocks }
    }

    fn apply(&self, act: &Action, x: &[Elem], out: &mut Vec<Elem>) {
        let ring = self.base.coeff();
        out.clear();
        out.extend_from_slice(x);
        for (range, imgs) in &act.blocks {
            for (k, f) in range.clone().enumerate() {
                let h = self.coords.entries[f].3;
                let mut acc = 0;
                for (l, e) in range.clone().enumerate() {
                    if x[e] != 0 && imgs[l][k] != 0 {
                        acc = ring.add(acc, ring.mul(x[e], imgs[l][k]));
                    }
                }
                out[f] = ring.truncate(acc, h);
            }
        }
    }

    /// Orbit representatives (smallest code in each orbit) with orbit sizes.
    pub fn orbits(&self, budget: u64) -> Result<Vec<(Vec<Elem>, u64)>> {
        let total = self.size().filter(|&t| t <= budget).ok_or(Error::Budget(format!(
            "map space of {} representations exceeds the budget {budget}",
            self.size().map_or("too many".to_string(), |t| t.to_string())
        )))?;
        let mut acts = Vec::new();
        for (v, m) in self.modules.iter().enumerate() {
            for gen in automorphism_generators(m) {
                let act = self.action(v, &gen);
                if !act.blocks.is_empty() {
                    acts.push(act);
                }
            }
        }
        let mut seen = FixedBitSet::with_capacity(total as usize);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut buf = Vec::new();
        for code in 0..total {
            if seen.contains(code as usize) {
                continue;
            }
            seen.insert(code as usize);
            let rep = self.decode(code);
            let mut size = 1;
            stack.push(rep.clone());
            while let Some(x) = stack.pop() {
                for act in &acts {
                    self.apply(act, &x, &mut buf);
                    let c = self.encode(&buf) as usize;
                    if !seen.contains(c) {
                        seen.insert(c);
                        size += 1;
                        stack.push(buf.clone());
                    }
                }
            }
            out.push((rep, size));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ChainRing;

    /// Order of `Aut` of a module over a chain ring with residue field `F_q`:
    /// `|End| * prod over lengths l of prod_{i<=m_l} (1 - q^-i)`.
    fn aut_order_formula(q: u64, lens: &[u32]) -> u64 {
        let mut end_exp = 0u32;
        for &a in lens {
            for &b in lens {
                end_exp += a.min(b);
            }
        }
        let mut num = q.pow(end_exp) as f64;
        let mut distinct: Vec<u32> = lens.to_vec();
        distinct.dedup();
        for l in distinct {
            let m = lens.iter().filter(|&&x| x == l).count() as i32;
            for i in 1..=m {
                num *= 1.0 - (q as f64).powi(-i);
            }
        }
        num.round() as u64
    }

    /// Closure of the generators under composition, as entry matrices.
    fn generated_group_order(m: &SerialModule) -> u64 {
        let gens = automorphism_generators(m);
        let id = SerialMorphism::identity(m);
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.entries().clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = g.g.compose(&x).unwrap();
                if seen.insert(y.entries().clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len() as u64
    }

    #[test]
    fn generators_generate_the_full_automorphism_group() {
        for (arith, p, n) in [(Arith::Int, 2, 3), (Arith::Poly, 2, 3), (Arith::Int, 3, 2), (Arith::Poly, 3, 2)] {
            let base = SerialBase::chain(ChainRing::new(arith, p, n).unwrap());
            for names in [vec!["M1", "M1"], vec!["M2", "M1"], vec![&format!("M{n}")[..], "M1", "M1"], vec!["M2", "M2"]] {
                let m = SerialModule::from_names(&base, &names).unwrap();
                let lens = m.partition();
                assert_eq!(generated_group_order(&m), aut_order_formula(p as u64, &lens), "{base} {names:?}");
            }
        }
    }

    #[test]
    fn generators_are_inverse_pairs() {
        let base = SerialBase::rad2nak(2, 3).unwrap();
        let m = SerialModule::from_names(&base, &["P1", "S2", "S2", "P2"]).unwrap();
        for g in automorphism_generators(&m) {
            assert_eq!(g.g.compose(&g.inv).unwrap(), SerialMorphism::identity(&m));
        }
    }

    #[test]
    fn orbit_sizes_sum_to_space() {
        let base = SerialBase::chain(ChainRing::int(2, 2).unwrap());
        let q = Quiver::builtin("An-linear:2").unwrap();
        let m = vec![
            SerialModule::from_names(&base, &["M2", "M1"]).unwrap(),
            SerialModule::from_names(&base, &["M2", "M1"]).unwrap(),
        ];
        let space = MapSpace::new(&q, &base, m);
        let orbits = space.orbits(1 << 20).unwrap();
        assert_eq!(orbits.iter().map(|o| o.1).sum::<u64>(), space.size().unwrap());
        for (x, _) in &orbits {
            assert_eq!(space.encode(x), space.encode(&space.decode(space.encode(x))));
        }
    }
}
