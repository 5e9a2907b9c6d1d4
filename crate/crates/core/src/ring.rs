//! Arithmetic in the finite chain rings `Z/p^n` and `F_p[x]/x^n`.
//!
//! Elements are encoded as the integer `sum d_k p^k` of their little-endian
//! digit vector, so that `pi^k * e`, `e mod pi^h` and the valuation are the
//! same integer operations for both kinds. Only addition and multiplication
//! differ: the integer kind carries between digits, the polynomial kind
//! does not.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Encoded ring element, `0 <= e < p^n`.
pub type Elem = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arith {
    Int,
    Poly,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainRing {
    arith: Arith,
    p: u32,
    n: u32,
    q: u32,
}

impl fmt::Debug for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.arith {
            Arith::Int => write!(f, "Z/{}^{}", self.p, self.n),
            Arith::Poly => write!(f, "F{}[x]/x^{}", self.p, self.n),
        }
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl ChainRing {
    pub fn new(arith: Arith, p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::Invalid("Loewy length must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q <= 1 << 24);
        let Some(q) = q else {
            return Err(Error::Invalid(format!("{p}^{n} is too large")));
        };
        Ok(ChainRing { arith, p, n, q: q as u32 })
    }

    pub fn int(p: u32, n: u32) -> Result<Self> {
        Self::new(Arith::Int, p, n)
    }

    pub fn poly(p: u32, n: u32) -> Result<Self> {
        Self::new(Arith::Poly, p, n)
    }

    pub fn arith(&self) -> Arith {
        self.arith
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    /// Loewy length.
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Cardinality `p^n`.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// `p^k` as an integer (not a ring element when `k >= n`).
    pub fn pk(&self, k: u32) -> u32 {
        self.p.pow(k.min(self.n))
    }

    pub fn zero(&self) -> Elem {
        0
    }
    pub fn one(&self) -> Elem {
        1 % self.q
    }

    pub fn contains(&self, e: Elem) -> bool {
        e < self.q
    }

    pub fn digits(&self, e: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut v = e;
        for _ in 0..self.n {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.n as usize {
            return Err(Error::Invalid(format!(
                "{} digits for a ring of length {}",
                digits.len(),
                self.n
            )));
        }
        let mut e = 0u32;
        for &d in digits.iter().rev() {
            if d >= self.p {
                return Err(Error::Invalid(format!("digit {d} out of range for p={}", self.p)));
            }
            e = e * self.p + d;
        }
        Ok(e)
    }

    /// Image of an integer under `Z -> R`.
    pub fn from_int(&self, c: i64) -> Elem {
        match self.arith {
            Arith::Int => c.rem_euclid(self.q as i64) as Elem,
            Arith::Poly => c.rem_euclid(self.p as i64) as Elem,
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match self.arith {
            Arith::Int => {
                let s = a + b;
                if s >= self.q {
                    s - self.q
                } else {
                    s
                }
            }
            Arith::Poly if self.p == 2 => a ^ b,
            Arith::Poly => {
                let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
                while a > 0 || b > 0 {
                    out += ((a % self.p + b % self.p) % self.p) * w;
                    a /= self.p;
                    b /= self.p;
                    w *= self.p;
                }
                out
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match self.arith {
            Arith::Int => (self.q - a) % self.q,
            Arith::Poly if self.p == 2 => a,
            Arith::Poly => {
                let (mut a, mut out, mut w) = (a, 0, 1);
                while a > 0 {
                    out += ((self.p - a % self.p) % self.p) * w;
                    a /= self.p;
                    w *= self.p;
                }
                out
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match self.arith {
            Arith::Int => ((a as u64 * b as u64) % self.q as u64) as Elem,
            Arith::Poly => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let n = self.n as usize;
                let da = self.digits(a);
                let db = self.digits(b);
                let mut prod = vec![0u32; n];
                for (i, &x) in da.iter().enumerate().filter(|(_, &x)| x != 0) {
                    for (j, &y) in db.iter().enumerate().take(n - i) {
                        prod[i + j] = (prod[i + j] + x * y) % self.p;
                    }
                }
                prod.iter().rev().fold(0, |acc, &d| acc * self.p + d)
            }
        }
    }

    /// Multiplication by the integer `c` (repeated addition).
    pub fn scale_int(&self, c: i64, a: Elem) -> Elem {
        self.mul(self.from_int(c), a)
    }

    /// `pi`-adic valuation; `n` for zero.
    pub fn valuation(&self, e: Elem) -> u32 {
        if e == 0 {
            return self.n;
        }
        let mut v = 0;
        let mut e = e;
        while e.is_multiple_of(self.p) {
            e /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, e: Elem) -> bool {
        !e.is_multiple_of(self.p)
    }

    /// `pi^k * e`.
    pub fn shift_up(&self, e: Elem, k: u32) -> Elem {
        if k >= self.n {
            return 0;
        }
        ((e as u64 * self.pk(k) as u64) % self.q as u64) as Elem
    }

    /// Exact division by `pi^k`, reduced modulo `pi^(n-k)`: returns the
    /// representative with digits `k..n` of `e` moved down.
    pub fn shift_down(&self, e: Elem, k: u32) -> Elem {
        debug_assert!(k == 0 || self.valuation(e) >= k);
        e / self.pk(k)
    }

    /// Canonical representative of `e mod pi^h`.
    pub fn truncate(&self, e: Elem, h: u32) -> Elem {
        if h >= self.n {
            e
        } else {
            e % self.pk(h)
        }
    }

    pub fn pi_pow(&self, k: u32) -> Elem {
        self.shift_up(self.one(), k)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit(format!("{:?} in {self}", self.digits(a))));
        }
        // the unit group has order q - q/p
        let order = (self.q - self.q / self.p) as u64;
        Ok(self.pow(a, order - 1))
    }

    /// Solve `a * x = b`, returning the solution with minimal encoding.
    pub fn divide(&self, b: Elem, a: Elem) -> Option<Elem> {
        let va = self.valuation(a);
        let vb = self.valuation(b);
        if vb < va {
            return None;
        }
        if b == 0 {
            return Some(0);
        }
        let u = self.shift_down(a, va);
        let w = self.shift_down(b, va);
        let x = self.mul(w, self.inverse(u).ok()?);
        Some(self.truncate(x, self.n - va))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    /// A set of units generating the unit group.
    pub fn unit_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = (2..self.p).map(|c| self.from_int(c as i64)).collect();
        for k in 1..self.n {
            for c in 1..self.p {
                gens.push(self.add(self.one(), self.shift_up(c, k)));
            }
        }
        gens.retain(|&u| u != self.one());
        gens.sort_unstable();
        gens.dedup();
        gens
    }
}
