//! Dense matrices over a chain ring and their Smith normal form.

use crate::ring::{ChainRing, Elem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: &ChainRing, n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Elem> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat { rows: r, cols: c, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, ring: &ChainRing, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = ring.add(out.get(i, j), ring.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: &ChainRing, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, k| ring.add(acc, ring.mul(self.get(i, k), v[k])))
            })
            .collect()
    }

    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j));
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Elem>]) -> Mat {
        let mut out = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    /// Rank when the ring is a field.
    pub fn field_rank(&self, ring: &ChainRing) -> usize {
        debug_assert_eq!(ring.n(), 1);
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(rank, piv);
            let inv = ring.inverse(m.get(rank, c)).expect("field");
            m.scale_row(ring, rank, inv);
            for i in rank + 1..m.rows {
                let x = m.get(i, c);
                if x != 0 {
                    m.add_row(ring, i, rank, ring.neg(x));
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, ring: &ChainRing, dst: usize, src: usize, f: Elem) {
        if f == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = ring.add(self.get(dst, j), ring.mul(f, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, ring: &ChainRing, dst: usize, src: usize, f: Elem) {
        if f == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = ring.add(self.get(i, dst), ring.mul(f, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, ring: &ChainRing, r: usize, f: Elem) {
        for j in 0..self.cols {
            let v = ring.mul(f, self.get(r, j));
            self.set(r, j, v);
        }
    }

    fn scale_col(&mut self, ring: &ChainRing, c: usize, f: Elem) {
        for i in 0..self.rows {
            let v = ring.mul(f, self.get(i, c));
            self.set(i, c, v);
        }
    }
}

/// `u * a * v = diag(pi^exps[k])` with `u`, `v` invertible.
///
/// `exps` has length `min(rows, cols)` and is non-decreasing; an exponent of
/// `n` stands for a zero diagonal entry.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub exps: Vec<u32>,
}

pub fn smith(ring: &ChainRing, a: &Mat) -> Smith {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Mat::identity(ring, r);
    let mut u_inv = Mat::identity(ring, r);
    let mut v = Mat::identity(ring, c);
    let mut v_inv = Mat::identity(ring, c);
    let n = ring.n();
    let mut exps = Vec::with_capacity(r.min(c));

    for t in 0..r.min(c) {
        // minimal valuation in the trailing block, first in row-major order
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for i in t..r {
            for j in t..c {
                let val = ring.valuation(d.get(i, j));
                if val < n && best.is_none_or(|(bv, _, _)| val < bv) {
                    best = Some((val, i, j));
                    if val == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((e, pi, pj)) = best else {
            exps.extend(std::iter::repeat_n(n, r.min(c) - t));
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        let unit = ring.shift_down(d.get(t, t), e);
        let inv = ring.inverse(unit).expect("pivot unit part");
        d.scale_row(ring, t, inv);
        u.scale_row(ring, t, inv);
        u_inv.scale_col(ring, t, unit);

        for i in t + 1..r {
            let x = d.get(i, t);
            if x == 0 {
                continue;
            }
            let f = ring.neg(ring.shift_down(x, e));
            d.add_row(ring, i, t, f);
            u.add_row(ring, i, t, f);
            u_inv.add_col(ring, t, i, ring.neg(f));
        }
        for j in t + 1..c {
            let x = d.get(t, j);
            if x == 0 {
                continue;
            }
            let f = ring.neg(ring.shift_down(x, e));
            d.add_col(ring, j, t, f);
            v.add_col(ring, j, t, f);
            v_inv.add_row(ring, t, j, ring.neg(f));
        }
        exps.push(e);
    }
    Smith { u, u_inv, v, v_inv, exps }
}

/// Generators of `{x : a x = 0}` as the columns of the returned matrix.
pub fn kernel_generators(ring: &ChainRing, a: &Mat) -> Mat {
    let s = smith(ring, a);
    let n = ring.n();
    let c = a.cols;
    let mut gens = Mat::zeros(c, c);
    for k in 0..c {
        let e = s.exps.get(k).copied().unwrap_or(0);
        // y_k ranges over ann(pi^e) = pi^(n-e) R; columns past the rows are free
        let shift = if k < s.exps.len() { n - e } else { 0 };
        for i in 0..c {
            gens.set(i, k, ring.shift_up(s.v.get(i, k), shift));
        }
    }
    gens
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(ring: &ChainRing, a: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, a.cols);
    let s = smith(ring, a);
    if s.exps.iter().any(|&e| e != 0) {
        return None;
    }
    Some(s.v.mul(ring, &s.u))
}

/// Some `y` with `a y = b`, or `None`.
pub fn solve(ring: &ChainRing, a: &Mat, b: &[Elem]) -> Option<Vec<Elem>> {
    assert_eq!(a.rows, b.len());
    let s = smith(ring, a);
    let ub = s.u.mul_vec(ring, b);
    let mut z = vec![0; a.cols];
    for (k, &w) in ub.iter().enumerate() {
        match s.exps.get(k) {
            Some(&e) => {
                if e >= ring.n() {
                    if w != 0 {
                        return None;
                    }
                } else {
                    z[k] = ring.divide(w, ring.pi_pow(e))?;
                }
            }
            None => {
                if w != 0 {
                    return None;
                }
            }
        }
    }
    Some(s.v.mul_vec(ring, &z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(ring: &ChainRing, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Mat {
        let data = (0..r * c).map(|_| rng.gen_range(0..ring.order())).collect();
        Mat::from_vec(r, c, data)
    }

    #[test]
    fn smith_roundtrip_and_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ring in [
            ChainRing::int(2, 3).unwrap(),
            ChainRing::poly(2, 3).unwrap(),
            ChainRing::int(3, 2).unwrap(),
            ChainRing::poly(3, 4).unwrap(),
        ] {
            for _ in 0..200 {
                let r = rng.gen_range(0..5);
                let c = rng.gen_range(0..5);
                let a = random_mat(&ring, &mut rng, r, c);
                let s = smith(&ring, &a);
                let d = s.u.mul(&ring, &a).mul(&ring, &s.v);
                for i in 0..r {
                    for j in 0..c {
                        let want = if i == j { ring.pi_pow(s.exps[i]) } else { 0 };
                        assert_eq!(d.get(i, j), want);
                    }
                }
                assert_eq!(s.u.mul(&ring, &s.u_inv), Mat::identity(&ring, r));
                assert_eq!(s.v_inv.mul(&ring, &s.v), Mat::identity(&ring, c));
                assert!(s.exps.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn spec_smith_examples() {
        let z4 = ChainRing::int(2, 2).unwrap();
        let s = smith(&z4, &Mat::from_rows(vec![vec![2]]));
        assert_eq!(s.exps, vec![1]);
        let f2 = ChainRing::poly(2, 2).unwrap();
        let s = smith(&f2, &Mat::from_rows(vec![vec![1, 1], vec![1, 1]]));
        assert_eq!(s.exps, vec![0, 2]);
    }

    #[test]
    fn kernel_and_solve_exhaustive_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ring = ChainRing::int(2, 2).unwrap();
        for _ in 0..100 {
            let r = rng.gen_range(1..3);
            let c = rng.gen_range(1..3);
            let a = random_mat(&ring, &mut rng, r, c);
            let gens = kernel_generators(&ring, &a);
            // brute force kernel and span of generators agree
            let all: Vec<Vec<Elem>> = (0..ring.order().pow(c as u32))
                .map(|mut x| {
                    (0..c)
                        .map(|_| {
                            let d = x % ring.order();
                            x /= ring.order();
                            d
                        })
                        .collect()
                })
                .collect();
            let ker: Vec<&Vec<Elem>> =
                all.iter().filter(|x| a.mul_vec(&ring, x).iter().all(|&e| e == 0)).collect();
            let span: std::collections::HashSet<Vec<Elem>> =
                all.iter().map(|coef| gens.mul_vec(&ring, coef)).collect();
            assert_eq!(span.len(), ker.len());
            for x in &ker {
                assert!(span.contains(*x));
            }
            for x in &all {
                let b = a.mul_vec(&ring, x);
                let y = solve(&ring, &a, &b).expect("solvable");
                assert_eq!(a.mul_vec(&ring, &y), b);
            }
        }
        // unsolvable: 2y = 1 in Z/4
        assert!(solve(&ring, &Mat::from_rows(vec![vec![2]]), &[1]).is_none());
    }
}
