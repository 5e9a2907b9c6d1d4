//! Named acceptance checks, shared by `verify-suite` and the acceptance test.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::base::{SerialBase, NEVER};
use crate::enumerate::flags::mono_chain_classes;
use crate::enumerate::kronecker::{kronecker_family, kronecker_stable, projective_line, Family};
use crate::enumerate::{
    automorphism_generators, enumerate_bounded, enumerate_mono_rad2, verify_length_vector_table, EnumerationReport,
    TableVerdict,
};
use crate::error::{Error, Result};
use crate::io::{parse_length_table, RepDoc};
use crate::quiver::Quiver;
use crate::rep::{random_representation, RepMorphism, Representation};
use crate::ring::{Arith, ChainRing, Elem};
use crate::serialmod::{SerialModule, SerialMorphism};

pub const CRITERIA: [&str; 11] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "P1", "P2", "P3", "P4"];

pub const LENGTH_TABLE: &str = include_str!("../data/a3_length_vectors.json");
pub const ZIGZAG_GOLDEN: &str = include_str!("../data/zigzag_f2x2.json");
pub const KRONECKER_GOLDEN: &str = include_str!("../data/kronecker_golden.json");

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub budget: u64,
    /// Run the length-vector table at the hull plus one, not only the smoke caps.
    pub full_table: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 1, budget: 1 << 24, full_table: true }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn value(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "summary": self.summary,
            "details": self.details,
            "seconds": self.elapsed.as_secs_f64(),
        })
    }
}

type Check = (bool, String, Value);

/// Run one named check. Besides the criteria this knows `rad2-count`, which
/// needs a quiver and base.
pub fn run(name: &str, opts: &SuiteOptions) -> Result<Outcome> {
    let start = Instant::now();
    let (passed, summary, details) = match name {
        "A1" => a1(opts)?,
        "A2" => a2()?,
        "A3" => a3()?,
        "A4" => a4(opts)?.0,
        "A5" => a5()?,
        "A6" => a6(opts)?,
        "A7" => a7()?,
        "P1" => p1()?,
        "P2" => p2(opts)?,
        "P3" => p3(opts)?,
        "P4" => p4(opts)?,
        _ => return Err(Error::Invalid(format!("unknown suite {name:?}"))),
    };
    Ok(Outcome { name: name.to_string(), passed, summary, details, elapsed: start.elapsed() })
}

/// Count the indecomposable monomorphic representations over a base with
/// radical square zero and compare with `m |Q0| + t |Phi+|`.
pub fn rad2_count(q: &Quiver, base: &SerialBase) -> Result<Outcome> {
    let start = Instant::now();
    let r = enumerate_mono_rad2(q, base)?;
    let m = base.injective_labels().len();
    let t = SerialBase::stable(base)?.num_labels();
    let roots = q.positive_roots()?.len();
    let expected = m * q.num_vertices() + t * roots;
    Ok(Outcome {
        name: "rad2-count".into(),
        passed: r.len() == expected,
        summary: format!("{} classes ({} injective + {} non-injective), expected {expected}", r.len(), r.counts.0, r.counts.1),
        details: json!({ "classes": r.len(), "injective": r.counts.0, "non_injective": r.counts.1, "expected": expected }),
        elapsed: start.elapsed(),
    })
}

fn chain(arith: Arith, p: u32, n: u32) -> Result<SerialBase> {
    Ok(SerialBase::chain(ChainRing::new(arith, p, n)?))
}

fn reps_from(v: &Value) -> Result<Vec<Representation>> {
    let arr = v.as_array().ok_or_else(|| Error::Invalid("expected an array of representations".into()))?;
    arr.iter()
        .map(|x| {
            let doc: RepDoc = serde_json::from_value(x.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
            doc.build()
        })
        .collect()
}

/// Whether two lists of indecomposables agree up to isomorphism and order.
fn same_indecomposables(a: &[Representation], b: &[Representation]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut hit = false;
        for (k, y) in b.iter().enumerate() {
            if !used[k] && x.is_iso_indecomposable(y)? {
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

fn split_injective(r: &EnumerationReport) -> Result<(Vec<Representation>, Vec<Representation>)> {
    let mut inj = Vec::new();
    let mut non = Vec::new();
    for c in &r.classes {
        if c.rep.injective_rep_recognize()?.is_some() {
            inj.push(c.rep.clone());
        } else {
            non.push(c.rep.clone());
        }
    }
    Ok((inj, non))
}

fn a1(o: &SuiteOptions) -> Result<Check> {
    let q = Quiver::builtin("An-linear:3")?;
    let base = chain(Arith::Poly, 2, 2)?;
    let r = enumerate_mono_rad2(&q, &base)?;
    let b = enumerate_bounded(&q, &base, &[3, 3, 3], true, o.budget)?;
    let same = r.same_classes(&b)?;
    let passed = r.counts == (3, 6) && b.len() == 9 && same;
    let summary = format!(
        "formula {} = {} + {}, bounded search within (3,3,3) {}, same classes {same}",
        r.len(),
        r.counts.0,
        r.counts.1,
        b.len()
    );
    Ok((passed, summary, json!({ "rad2": r.len(), "bounded": b.len(), "same_classes": same })))
}

/// `0 -> ... -> 0 -> L -> ... -> L -> I(L) -> ... -> I(L)` on the linear
/// quiver with `zeros`, `simples` and `rest` vertices of each kind.
fn linear_shape(q: &Quiver, base: &SerialBase, zeros: usize, simples: usize) -> Result<Representation> {
    let one = base.label_by_name("M1")?;
    let two = base.label_by_name("M2")?;
    let k = q.num_vertices();
    let modules: Vec<SerialModule> = (0..k)
        .map(|v| {
            if v < zeros {
                SerialModule::zero(base)
            } else if v < zeros + simples {
                SerialModule::new(base, vec![one])
            } else {
                SerialModule::new(base, vec![two])
            }
        })
        .collect();
    let maps = (0..q.num_arrows())
        .map(|a| {
            let (s, t) = (&modules[q.source(a)], &modules[q.target(a)]);
            let mut f = SerialMorphism::zero(s, t);
            if !s.is_zero() && !t.is_zero() {
                f.set(0, 0, 1);
            }
            f
        })
        .collect();
    Representation::new(q, base, modules, maps)
}

fn a2() -> Result<Check> {
    let q = Quiver::builtin("An-linear:4")?;
    let base = chain(Arith::Poly, 2, 2)?;
    let r = enumerate_mono_rad2(&q, &base)?;
    let (_, non) = split_injective(&r)?;
    let mut shapes = Vec::new();
    for zeros in 0..4 {
        for simples in 1..=4 - zeros {
            shapes.push(linear_shape(&q, &base, zeros, simples)?);
        }
    }
    let same = same_indecomposables(&non, &shapes)?;
    let vectors: Vec<Vec<u32>> = non.iter().map(Representation::length_vector).collect();
    let passed = non.len() == 10 && same;
    let summary = format!("{} non-injective classes, all of the form 0..0 L..L I(L)..I(L): {same}", non.len());
    Ok((passed, summary, json!({ "length_vectors": vectors })))
}

fn a3() -> Result<Check> {
    let golden: Value = serde_json::from_str(ZIGZAG_GOLDEN).map_err(|e| Error::Invalid(e.to_string()))?;
    let inj_gold = reps_from(&golden["injective"])?;
    let non_gold = reps_from(&golden["non_injective"])?;
    let q = Quiver::builtin("A4-zigzag")?;
    let base = chain(Arith::Poly, 2, 2)?;
    let r = enumerate_mono_rad2(&q, &base)?;
    let (inj, non) = split_injective(&r)?;
    let same_inj = same_indecomposables(&inj, &inj_gold)?;
    let same_non = same_indecomposables(&non, &non_gold)?;
    let passed = inj.len() == 4 && non.len() == 10 && same_inj && same_non;
    let summary = format!("{} + {} classes; injectives match {same_inj}, non-injectives match {same_non}", inj.len(), non.len());
    Ok((passed, summary, json!({ "injective": inj.len(), "non_injective": non.len() })))
}

fn table_details(t: &TableVerdict) -> Value {
    json!({
        "caps": t.caps,
        "not_unique": t.vectors.iter().filter(|(_, v)| *v != crate::enumerate::Verdict::Unique).map(|(v, x)| json!([v, x])).collect::<Vec<_>>(),
        "extras": t.extras.iter().map(|(v, n)| json!([v, n])).collect::<Vec<_>>(),
    })
}

fn fmt_vectors(vs: &[(Vec<u32>, usize)]) -> String {
    vs.iter().map(|(v, _)| v.iter().map(|x| x.to_string()).collect::<String>()).collect::<Vec<_>>().join(",")
}

/// Returns the check and the classes found within the table's hull.
fn a4(o: &SuiteOptions) -> Result<(Check, TableVerdict)> {
    let table = parse_length_table(LENGTH_TABLE)?;
    let q = Quiver::builtin("An-linear:3")?;
    let base = chain(Arith::Poly, 2, 3)?;
    let small: Vec<Vec<u32>> = table.iter().filter(|v| v.iter().all(|&x| x <= 3)).cloned().collect();
    let smoke = verify_length_vector_table(&q, &base, &small, 0)?;
    let hull = verify_length_vector_table(&q, &base, &table, 0)?;
    let full = if o.full_table { Some(verify_length_vector_table(&q, &base, &table, 1)?) } else { None };
    let unique = |t: &TableVerdict| t.vectors.iter().filter(|(_, v)| *v == crate::enumerate::Verdict::Unique).count();
    let mut summary = format!(
        "smoke {}/{} unique, extras [{}]",
        unique(&smoke),
        small.len(),
        fmt_vectors(&smoke.extras)
    );
    if let Some(f) = &full {
        summary.push_str(&format!("; caps {:?}: {}/{} unique, extras [{}]", f.caps, unique(f), table.len(), fmt_vectors(&f.extras)));
    }
    let passed = smoke.passed() && full.as_ref().is_none_or(|f| f.passed());
    let details = json!({
        "smoke": table_details(&smoke),
        "full": full.as_ref().map(table_details),
    });
    Ok(((passed, summary, details), hull))
}

fn a5() -> Result<Check> {
    let (_, hull) = a4(&SuiteOptions { full_table: false, ..Default::default() })?;
    let mut reps: Vec<Representation> = hull.classes.iter().map(|c| c.rep.clone()).collect();
    let z8 = chain(Arith::Int, 2, 3)?;
    let a2 = Quiver::builtin("An-linear:2")?;
    for r in mono_chain_classes(&a2, &z8, &[3, 4])? {
        if r.is_indecomposable()?.0 {
            reps.push(r);
        }
    }
    let mut failures = Vec::new();
    for r in &reps {
        let Some(src) = r.base().chain_ring() else { continue };
        let partner = ChainRing::new(
            match src.arith() {
                Arith::Int => Arith::Poly,
                Arith::Poly => Arith::Int,
            },
            src.p(),
            src.n(),
        )?;
        let t = r.transfer(partner)?;
        let back = t.transfer(src)?;
        let ok = t.is_indecomposable()?.0
            && t.is_mono()?
            && t.partition_vector()? == r.partition_vector()?
            && back.is_iso_indecomposable(r)?;
        if !ok {
            failures.push(json!({ "length_vector": r.length_vector(), "base": r.base().to_string() }));
        }
    }
    let summary = format!("{} classes transferred, {} failures", reps.len(), failures.len());
    Ok((failures.is_empty(), summary, json!({ "classes": reps.len(), "failures": failures })))
}

/// The listed indecomposables over `Z/p^3`: the embeddings of `Z/p^i` into
/// `Z/p^j` for `0 <= i <= j <= 3`, `j > 0`, and `(pi', iota')`.
fn z8_list(base: &SerialBase) -> Result<Vec<Representation>> {
    let q = Quiver::builtin("An-linear:2")?;
    let mut out = Vec::new();
    let label = |k: u32| base.label_by_name(&format!("M{k}"));
    for j in 1..=3 {
        for i in 0..=j {
            let s = if i == 0 { SerialModule::zero(base) } else { SerialModule::new(base, vec![label(i)?]) };
            let t = SerialModule::new(base, vec![label(j)?]);
            let mut f = SerialMorphism::zero(&s, &t);
            if i > 0 {
                f.set(0, 0, 1);
            }
            out.push(Representation::new(&q, base, vec![s, t], vec![f])?);
        }
    }
    let s = SerialModule::new(base, vec![label(2)?]);
    let t = SerialModule::new(base, vec![label(3)?, label(1)?]);
    let f = SerialMorphism::from_rows(&s, &t, vec![vec![1], vec![1]])?;
    out.push(Representation::new(&q, base, vec![s, t], vec![f])?);
    Ok(out)
}

fn a6(o: &SuiteOptions) -> Result<Check> {
    let q = Quiver::builtin("An-linear:2")?;
    let base = chain(Arith::Int, 2, 3)?;
    let listed = z8_list(&base)?;
    let stated = enumerate_bounded(&q, &base, &[3, 3], true, o.budget)?;
    let stated_reps: Vec<Representation> = stated.classes.iter().map(|c| c.rep.clone()).collect();
    let wide = enumerate_bounded(&q, &base, &[3, 4], true, o.budget)?;
    let wide_reps: Vec<Representation> = wide.classes.iter().map(|c| c.rep.clone()).collect();
    let stated_match = same_indecomposables(&stated_reps, &listed)?;
    let wide_match = same_indecomposables(&wide_reps, &listed)?;
    let summary = format!(
        "caps (3,3): {} classes, matches list {stated_match}; caps (3,4): {} classes, matches list {wide_match}",
        stated.len(),
        wide.len()
    );
    let details = json!({
        "caps_3_3": stated_reps.iter().map(Representation::length_vector).collect::<Vec<_>>(),
        "caps_3_4": wide_reps.iter().map(Representation::length_vector).collect::<Vec<_>>(),
    });
    Ok((stated.len() == 10 && stated_match, summary, details))
}

fn a7() -> Result<Check> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in [2u32, 3] {
        let base = chain(Arith::Poly, p, 2)?;
        let mut members = Vec::new();
        for n in 0..=3usize {
            members.push((Family::P, n, (0, 0)));
            members.push((Family::I, n, (0, 0)));
            if n >= 1 {
                for pt in projective_line(p) {
                    members.push((Family::R, n, pt));
                }
            }
        }
        let mut reps = Vec::new();
        for (w, n, pt) in members {
            let family = kronecker_family(&base, w, n, pt)?;
            let lifted = kronecker_stable(&base, w, n, pt)?.mimo_from_stable()?;
            checked += 1;
            if !lifted.is_iso(&family)? {
                failures.push(format!("{w:?}{n} {pt:?} over F{p}"));
            }
            reps.push(family);
        }
        let q = Quiver::builtin("kronecker")?;
        let big = base.label_by_name("M2")?;
        let mut injectives = Vec::new();
        for v in 0..2 {
            let mut at = vec![SerialModule::zero(&base); 2];
            at[v] = SerialModule::new(&base, vec![big]);
            injectives.push(Representation::f_shriek(&base, &q, &at)?);
        }
        for r in &reps {
            if r.injective_rep_recognize()?.is_some() {
                failures.push(format!("family member recognized as injective over F{p}"));
            }
        }
        for r in &injectives {
            if r.injective_rep_recognize()?.is_none() || !r.is_indecomposable()?.0 {
                failures.push(format!("f_! of a free module not recognized over F{p}"));
            }
        }
        if injectives[0].module(1).partition() != vec![2, 2] {
            failures.push("f_!(Lambda at 1) should carry Lambda^2 at vertex 2".into());
        }
    }
    let golden: Value = serde_json::from_str(KRONECKER_GOLDEN).map_err(|e| Error::Invalid(e.to_string()))?;
    for m in golden["members"].as_array().into_iter().flatten() {
        let rep = reps_from(&json!([m["rep"]]))?.remove(0);
        let w: Family = serde_json::from_value(m["family"].clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let n = m["n"].as_u64().unwrap_or(0) as usize;
        let pt = (m["param"][0].as_u64().unwrap_or(0) as u32, m["param"][1].as_u64().unwrap_or(0) as u32);
        checked += 1;
        if !kronecker_family(rep.base(), w, n, pt)?.is_iso(&rep)? {
            failures.push(format!("golden {w:?}{n} {pt:?}"));
        }
    }
    let summary = format!("{checked} comparisons, {} failures", failures.len());
    Ok((failures.is_empty(), summary, json!({ "failures": failures })))
}

// ---- base calculus oracle ----

/// Plain arithmetic in `R/pi^n` on digit vectors.
struct Oracle {
    arith: Arith,
    p: u32,
    n: u32,
}

impl Oracle {
    fn digits(&self, mut x: u64) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = (x % self.p as u64) as u32;
                x /= self.p as u64;
                d
            })
            .collect()
    }

    fn value(&self, d: &[u32]) -> u64 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p as u64 + x as u64)
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        match self.arith {
            Arith::Int => {
                let m = (self.p as u64).pow(self.n);
                self.digits(self.value(a) * self.value(b) % m)
            }
            Arith::Poly => {
                let mut out = vec![0; self.n as usize];
                for (i, &x) in a.iter().enumerate() {
                    for (j, &y) in b.iter().enumerate() {
                        if i + j < out.len() {
                            out[i + j] = (out[i + j] + x * y) % self.p;
                        }
                    }
                }
                out
            }
        }
    }

    fn pi_pow(&self, k: u32) -> Vec<u32> {
        (0..self.n).map(|i| u32::from(i == k)).collect()
    }

    /// Reduction modulo `pi^k`: digits from `k` on vanish.
    fn trunc(&self, mut d: Vec<u32>, k: u32) -> Vec<u32> {
        for x in d.iter_mut().skip(k as usize) {
            *x = 0;
        }
        d
    }

    /// Image of the generator of `R/pi^a` under the map with coefficient `c`
    /// into `R/pi^b`.
    fn image(&self, a: u32, b: u32, c: &[u32]) -> Vec<u32> {
        self.trunc(self.mul(c, &self.pi_pow(b.saturating_sub(a))), b)
    }
}

fn chain_oracle_mismatches(arith: Arith, p: u32, n: u32) -> Result<usize> {
    let base = chain(arith, p, n)?;
    let o = Oracle { arith, p, n };
    let mut bad = 0;
    let size = (p as u64).pow(n);
    for a in 1..=n {
        for b in 1..=n {
            // R-linear maps out of R/pi^a are the elements killed by pi^a
            let count = (0..size).filter(|&y| o.trunc(o.mul(&o.digits(y), &o.pi_pow(a)), b).iter().all(|&d| d == 0)).count()
                as u64;
            let count = count / (p as u64).pow(n - b);
            if count != base.hom_order((a - 1) as usize, (b - 1) as usize) {
                bad += 1;
            }
        }
    }
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                let (la, lb, lc) = ((a - 1) as usize, (b - 1) as usize, (c - 1) as usize);
                for f in 0..base.hom_order(la, lb) {
                    for g in 0..base.hom_order(lb, lc) {
                        let y = o.image(a, b, &o.digits(f));
                        let z = o.trunc(o.mul(&y, &o.image(b, c, &o.digits(g))), c);
                        let h = base.compose(la, lb, lc, g as Elem, f as Elem);
                        if o.image(a, c, &o.digits(h as u64)) != z {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(bad)
}

/// A module over the cyclic quiver with radical square zero: the vertex of
/// each basis vector and the matrix of the arrows.
struct NakModule {
    vertex: Vec<usize>,
    arrow: Vec<Vec<u32>>,
}

fn nak_module(base: &SerialBase, x: usize, m: usize) -> NakModule {
    let l = base.label(x);
    if l.length == 1 {
        NakModule { vertex: vec![l.top], arrow: vec![vec![0]] }
    } else {
        debug_assert_eq!(l.socle, (l.top + 1) % m);
        NakModule { vertex: vec![l.top, l.socle], arrow: vec![vec![0, 0], vec![1, 0]] }
    }
}

fn matmul(p: u32, a: &[Vec<u32>], b: &[Vec<u32>], inner: usize) -> Vec<Vec<u32>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<u32>() % p).collect())
        .collect()
}

/// Canonical generator: the identity, or top of `x` onto the socle of `y`.
fn nak_generator(base: &SerialBase, x: usize, y: usize, m: usize) -> Option<Vec<Vec<u32>>> {
    let (mx, my) = (nak_module(base, x, m), nak_module(base, y, m));
    let mut g = vec![vec![0; mx.vertex.len()]; my.vertex.len()];
    if x == y {
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 1;
        }
        return Some(g);
    }
    if base.label(x).top == base.label(y).socle {
        let sy = my.vertex.len() - 1;
        g[sy][0] = 1;
        return Some(g);
    }
    None
}

fn nak_oracle_mismatches(m: u32, p: u32) -> Result<usize> {
    let base = SerialBase::rad2nak(m, p)?;
    let mm = m as usize;
    let l = base.num_labels();
    let mut bad = 0;
    for x in 0..l {
        for y in 0..l {
            let (mx, my) = (nak_module(&base, x, mm), nak_module(&base, y, mm));
            let (dx, dy) = (mx.vertex.len(), my.vertex.len());
            let mut count = 0u64;
            for code in 0..(p as u64).pow((dx * dy) as u32) {
                let mut c = code;
                let f: Vec<Vec<u32>> = (0..dy)
                    .map(|_| {
                        (0..dx)
                            .map(|_| {
                                let d = (c % p as u64) as u32;
                                c /= p as u64;
                                d
                            })
                            .collect()
                    })
                    .collect();
                let graded = (0..dy).all(|i| (0..dx).all(|j| f[i][j] == 0 || my.vertex[i] == mx.vertex[j]));
                if graded && matmul(p, &f, &mx.arrow, dx) == matmul(p, &my.arrow, &f, dy) {
                    count += 1;
                }
            }
            if count != base.hom_order(x, y) {
                bad += 1;
            }
        }
    }
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                let (Some(gab), Some(gbc)) = (nak_generator(&base, a, b, mm), nak_generator(&base, b, c, mm)) else {
                    continue;
                };
                let db = nak_module(&base, b, mm).vertex.len();
                let prod = matmul(p, &gbc, &gab, db);
                let h = base.compose(a, b, c, 1, 1);
                let expected = match nak_generator(&base, a, c, mm) {
                    Some(gac) => gac.iter().map(|r| r.iter().map(|&v| v * h % p).collect()).collect(),
                    None => vec![vec![0; prod.first().map_or(0, Vec::len)]; prod.len()],
                };
                let zero_expected = base.delta(a, b, c) == NEVER || base.hom_len(a, c) == 0;
                if prod != expected || (zero_expected && prod.iter().flatten().any(|&v| v != 0)) {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

/// The stable category of a chain ring of length three: hom spaces
/// `M_i -> M_j` one-dimensional, both mixed composites zero.
fn stable_three_presentation(arith: Arith, p: u32) -> Result<bool> {
    let st = SerialBase::stable(&chain(arith, p, 3)?)?;
    let (m1, m2) = (st.label_by_name("M1")?, st.label_by_name("M2")?);
    let homs_ok = [(m1, m1), (m1, m2), (m2, m1), (m2, m2)].iter().all(|&(a, b)| st.hom_len(a, b) == 1);
    let mixed_zero = st.compose(m1, m2, m1, 1, 1) == 0 && st.compose(m2, m1, m2, 1, 1) == 0;
    let ids = st.compose(m1, m1, m2, 1, 1) == 1 && st.compose(m1, m2, m2, 1, 1) == 1;
    Ok(st.num_labels() == 2 && homs_ok && mixed_zero && ids)
}

fn p1() -> Result<Check> {
    let mut bad = Vec::new();
    let mut rings = 0;
    for arith in [Arith::Int, Arith::Poly] {
        for p in [2, 3] {
            for n in 1..=4 {
                rings += 1;
                let k = chain_oracle_mismatches(arith, p, n)?;
                if k > 0 {
                    bad.push(format!("chain {arith:?} p={p} n={n}: {k}"));
                }
            }
        }
    }
    for m in [2, 3] {
        for p in [2, 3] {
            let k = nak_oracle_mismatches(m, p)?;
            if k > 0 {
                bad.push(format!("rad2nak m={m} p={p}: {k}"));
            }
        }
    }
    let mut stable_ok = true;
    for arith in [Arith::Int, Arith::Poly] {
        for p in [2, 3] {
            stable_ok &= stable_three_presentation(arith, p)?;
        }
    }
    let summary = format!("{rings} chain rings and 4 Nakayama bases exhaustively, {} mismatches; stable n=3 presentation {stable_ok}", bad.len());
    Ok((bad.is_empty() && stable_ok, summary, json!({ "mismatches": bad })))
}

// ---- sampled properties ----

fn p_configs() -> Result<Vec<(SerialBase, Quiver)>> {
    Ok(vec![
        (chain(Arith::Poly, 2, 2)?, Quiver::builtin("An-linear:3")?),
        (chain(Arith::Int, 2, 2)?, Quiver::builtin("kronecker")?),
        (chain(Arith::Poly, 2, 3)?, Quiver::builtin("An-linear:2")?),
        (chain(Arith::Int, 3, 2)?, Quiver::builtin("A4-zigzag")?),
        (SerialBase::rad2nak(2, 2)?, Quiver::builtin("An-linear:2")?),
    ])
}

fn label(base: &SerialBase) -> String {
    base.to_string()
}

fn has_section(f: &SerialMorphism) -> Result<bool> {
    Ok(f.solve_left(&SerialMorphism::identity(f.source()))?.is_some())
}

fn p2(o: &SuiteOptions) -> Result<Check> {
    let mut bad = Vec::new();
    let mut total = 0;
    let mut non_mono = 0;
    for (k, (base, q)) in p_configs()?.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ (0x9200 + k as u64));
        let zero = Representation::zero(&q, &base);
        if !zero.kopf()?.iter().all(|(m, _)| m.is_zero()) {
            bad.push(format!("{}: Kopf of zero", label(&base)));
        }
        for _ in 0..500 {
            total += 1;
            let r = random_representation(&q, &base, 2, true, &mut rng);
            let l1_zero = r.l1_kopf()?.iter().all(|(m, _)| m.is_zero());
            non_mono += usize::from(!l1_zero);
            if r.is_mono()? != l1_zero {
                bad.push(format!("{}: mono vs L1Kopf", label(&base)));
            }
            if r.kopf()?.iter().all(|(m, _)| m.is_zero()) && !r.is_zero() {
                bad.push(format!("{}: Kopf vanishes on a nonzero representation", label(&base)));
            }
            let f = Representation::f_shriek(&base, &q, r.modules())?;
            let kopf: Vec<SerialModule> = f.kopf()?.into_iter().map(|(m, _)| m).collect();
            if kopf != r.modules() {
                bad.push(format!("{}: Kopf of f_! differs", label(&base)));
            }
            if !f.is_mono()? {
                bad.push(format!("{}: f_! not mono", label(&base)));
            }
            for v in 0..q.num_vertices() {
                if !has_section(&f.in_map(v).0)? {
                    bad.push(format!("{}: in-map of f_! not split", label(&base)));
                }
            }
        }
    }
    bad.dedup();
    let summary = format!("{total} representations ({non_mono} not mono), {} failing properties", bad.len());
    Ok((bad.is_empty(), summary, json!({ "failures": bad, "non_mono": non_mono })))
}

fn random_morphism<R: Rng>(s: &SerialModule, t: &SerialModule, rng: &mut R) -> SerialMorphism {
    let base = s.base();
    let order = base.coeff().order();
    let mut f = SerialMorphism::zero(s, t);
    for i in 0..t.num_parts() {
        for j in 0..s.num_parts() {
            f.set(i, j, base.reduce(s.parts()[j], t.parts()[i], rng.gen_range(0..order)));
        }
    }
    f
}

const EXHAUST_LOG: u32 = 10;

fn p3(o: &SuiteOptions) -> Result<Check> {
    let configs = vec![
        (chain(Arith::Poly, 2, 2)?, Quiver::builtin("An-linear:3")?),
        (chain(Arith::Int, 2, 3)?, Quiver::builtin("An-linear:2")?),
        (chain(Arith::Int, 3, 2)?, Quiver::builtin("kronecker")?),
        (SerialBase::rad2nak(2, 2)?, Quiver::builtin("An-linear:2")?),
    ];
    let mut bad = Vec::new();
    let mut total = 0;
    let mut exhausted = 0;
    for (k, (base, q)) in configs.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ (0x9300 + k as u64));
        for _ in 0..200 {
            total += 1;
            let r = random_representation(&q, &base, 2, false, &mut rng);
            let (m, p) = r.mimo()?;
            if !m.is_mono()? {
                bad.push(format!("{}: Mimo not mono", label(&base)));
            }
            // every map from a monomorphic representation factors through p
            let n = random_representation(&q, &base, 2, true, &mut rng).mimo()?.0;
            let hom = n.hom(&r)?;
            let gs: Vec<Vec<SerialMorphism>> = if hom.log_size() <= EXHAUST_LOG {
                exhausted += 1;
                hom.elements().collect()
            } else {
                (0..16).map(|_| hom.element(&hom.lattice.random(&mut rng))).collect()
            };
            for g in gs {
                let g = RepMorphism::new(&n, &r, g)?;
                match Representation::factor_through(&p, &g)? {
                    Some(h) if p.compose(&h)? == g => {}
                    _ => bad.push(format!("{}: approximation misses a map", label(&base))),
                }
            }
            // endomorphisms over p are automorphisms
            let ker = Representation::post_kernel(&m, &p)?;
            let psis: Vec<Vec<SerialMorphism>> = if ker.log_size() <= EXHAUST_LOG {
                ker.elements().collect()
            } else {
                (0..16).map(|_| ker.element(&ker.lattice.random(&mut rng))).collect()
            };
            for psi in psis {
                let phi = m.identity().components.iter().zip(&psi).map(|(i, s)| i.add(s)).collect::<Result<Vec<_>>>()?;
                if !RepMorphism::new(&m, &m, phi)?.is_iso() {
                    bad.push(format!("{}: Mimo not minimal", label(&base)));
                }
            }
            if base.is_abelian() {
                for (piece, _) in m.decompose()?.pieces {
                    if piece.injective_rep_recognize()?.is_some() {
                        bad.push(format!("{}: Mimo has an f_!(injective) summand", label(&base)));
                    }
                }
            }
            // another extension of the envelope gives an isomorphic result
            let data = r.mimo_data()?;
            let moved = data
                .iter()
                .enumerate()
                .map(|(v, (j, e))| {
                    let inv = r.in_map(v).0;
                    let y = random_morphism(r.module(v), j, &mut rng);
                    Ok((j.clone(), e.add(&y.compose(&inv)?)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let (m2, _) = r.mo(&moved)?;
            if !m2.is_iso(&m)? {
                bad.push(format!("{}: Mimo depends on the envelope extension", label(&base)));
            }
        }
    }
    bad.dedup();
    let summary = format!("{total} representations ({exhausted} hom sets exhausted), {} failing properties", bad.len());
    Ok((bad.is_empty(), summary, json!({ "failures": bad })))
}

fn random_automorphism<R: Rng>(m: &SerialModule, rng: &mut R) -> Result<(SerialMorphism, SerialMorphism)> {
    let gens = automorphism_generators(m);
    let mut g = SerialMorphism::identity(m);
    let mut inv = SerialMorphism::identity(m);
    if gens.is_empty() {
        return Ok((g, inv));
    }
    for _ in 0..4 {
        let x = &gens[rng.gen_range(0..gens.len())];
        g = x.g.compose(&g)?;
        inv = inv.compose(&x.inv)?;
    }
    Ok((g, inv))
}

fn conjugate<R: Rng>(r: &Representation, rng: &mut R) -> Result<Representation> {
    let q = r.quiver();
    let autos = r.modules().iter().map(|m| random_automorphism(m, rng)).collect::<Result<Vec<_>>>()?;
    let maps = (0..q.num_arrows())
        .map(|a| autos[q.target(a)].0.compose(&r.map(a).compose(&autos[q.source(a)].1)?))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, r.base(), r.modules().to_vec(), maps)
}

fn p4(o: &SuiteOptions) -> Result<Check> {
    let configs = vec![
        (chain(Arith::Poly, 2, 2)?, Quiver::builtin("An-linear:3")?),
        (chain(Arith::Int, 2, 2)?, Quiver::builtin("kronecker")?),
        (chain(Arith::Poly, 2, 3)?, Quiver::builtin("An-linear:2")?),
        (chain(Arith::Int, 2, 3)?, Quiver::builtin("An-linear:2")?),
    ];
    let mut bad = Vec::new();
    let mut pairs = 0;
    let mut iso_pairs = 0;
    for (k, (base, q)) in configs.into_iter().enumerate() {
        let st = SerialBase::stable(&base)?;
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ (0x9400 + k as u64));
        let injective: Vec<_> = base.injective_labels();
        for i in 0..200 {
            pairs += 1;
            let r = random_representation(&q, &base, 2, false, &mut rng).mimo()?.0;
            let rr = r.stable_reduce()?;
            match i % 4 {
                0 => {
                    let c = conjugate(&r, &mut rng)?;
                    if !c.is_iso(&r)? || !c.stable_reduce()?.is_iso(&rr)? {
                        bad.push(format!("{}: conjugate pair", label(&base)));
                    }
                }
                1 => {
                    if !rr.mimo_from_stable()?.is_iso(&r)? {
                        bad.push(format!("{}: lift of the reduction", label(&base)));
                    }
                }
                2 => {
                    let at: Vec<SerialModule> = (0..q.num_vertices())
                        .map(|_| {
                            let n = rng.gen_range(0..2);
                            SerialModule::new(&base, (0..n).map(|_| injective[rng.gen_range(0..injective.len())]).collect())
                        })
                        .collect();
                    let extra = Representation::f_shriek(&base, &q, &at)?;
                    let s = Representation::direct_sum(&[&r, &extra])?;
                    let reduced_same = s.stable_reduce()?.is_iso(&rr)?;
                    let lifted_same = s.is_iso(&r)?;
                    if !reduced_same || lifted_same != extra.is_zero() {
                        bad.push(format!("{}: injective summand pair", label(&base)));
                    }
                }
                _ => {
                    let s = random_representation(&q, &base, 2, false, &mut rng).mimo()?.0;
                    let iso = s.is_iso(&r)?;
                    iso_pairs += usize::from(iso);
                    if iso != s.stable_reduce()?.is_iso(&rr)? {
                        bad.push(format!("{}: reduction does not reflect isomorphism", label(&base)));
                    }
                }
            }
            let x = random_representation(&q, &st, 2, true, &mut rng);
            if !x.mimo_from_stable()?.stable_reduce()?.is_iso(&x)? {
                bad.push(format!("{}: stable representation not reached", label(&base)));
            }
        }
    }
    bad.dedup();
    let summary = format!("{pairs} pairs ({iso_pairs} independent pairs isomorphic), {} failing properties", bad.len());
    Ok((bad.is_empty(), summary, json!({ "failures": bad, "isomorphic_independent_pairs": iso_pairs })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_catches_a_wrong_exponent() {
        // the oracle agrees with the base tables
        assert_eq!(chain_oracle_mismatches(Arith::Int, 2, 3).unwrap(), 0);
        // and would see a composite that skipped the pi power
        let o = Oracle { arith: Arith::Int, p: 2, n: 3 };
        assert_ne!(o.image(1, 3, &o.digits(1)), o.image(3, 3, &o.digits(1)));
    }

    #[test]
    fn nakayama_matrix_model_matches() {
        assert_eq!(nak_oracle_mismatches(2, 2).unwrap(), 0);
    }

    #[test]
    fn stable_presentation() {
        assert!(stable_three_presentation(Arith::Poly, 2).unwrap());
        assert!(stable_three_presentation(Arith::Int, 3).unwrap());
    }

    #[test]
    fn listed_z8_objects_are_indecomposable_monos() {
        let base = chain(Arith::Int, 2, 3).unwrap();
        let list = z8_list(&base).unwrap();
        assert_eq!(list.len(), 10);
        for r in &list {
            assert!(r.is_mono().unwrap() && r.is_indecomposable().unwrap().0);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run("A9", &SuiteOptions::default()).is_err());
    }
}
