//! Finite acyclic quivers, their paths and Dynkin types.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// JSON form of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

#[derive(Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
    topo: Vec<usize>,
    builtin: Option<String>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = &self.builtin {
            return write!(f, "{b}");
        }
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|(n, s, t)| format!("{n}:{}->{}", self.vertices[*s], self.vertices[*t]))
            .collect();
        write!(f, "Quiver[{}]", arrows.join(", "))
    }
}

/// A path: the arrows in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(k) => write!(f, "A{k}"),
            DynkinType::D(k) => write!(f, "D{k}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(k) | DynkinType::D(k) => k,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        match *self {
            DynkinType::A(k) => k * (k + 1) / 2,
            DynkinType::D(k) => k * (k - 1),
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
        }
    }

    /// Edges of the standard diagram on vertices `0..rank`.
    fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.rank();
        match *self {
            DynkinType::A(_) => (1..k).map(|i| (i - 1, i)).collect(),
            DynkinType::D(_) => {
                let mut e: Vec<(usize, usize)> = (1..k - 1).map(|i| (i - 1, i)).collect();
                e.push((k - 3, k - 1));
                e
            }
            _ => {
                // chain 0..k-1 with the branch at vertex 2 carrying vertex k-1
                let mut e: Vec<(usize, usize)> = (1..k - 1).map(|i| (i - 1, i)).collect();
                e.push((2, k - 1));
                e
            }
        }
    }

    /// Positive roots on the standard diagram.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        root_closure(self.rank(), &self.edges())
    }
}

/// Closure of the simple roots under simple reflections, positive part only.
fn root_closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            let pairing = 2 * r[i] - adj[i].iter().map(|&j| r[j]).sum::<i64>();
            if pairing == 0 {
                continue;
            }
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    roots
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for v in &vertices {
            if !names.insert(v.clone()) {
                return Err(Error::Invalid(format!("duplicate vertex {v:?}")));
            }
        }
        let idx = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex {v:?}")))
        };
        let mut seen = BTreeSet::new();
        let mut arr = Vec::with_capacity(arrows.len());
        for a in &arrows {
            if !seen.insert(a.name.clone()) {
                return Err(Error::Invalid(format!("duplicate arrow {:?}", a.name)));
            }
            arr.push((a.name.clone(), idx(&a.from)?, idx(&a.to)?));
        }
        let topo = topological_order(vertices.len(), &arr)
            .ok_or_else(|| Error::Invalid("quiver has an oriented cycle".into()))?;
        Ok(Quiver { vertices, arrows: arr, topo, builtin: None })
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        Self::new(spec.vertices.clone(), spec.arrows.clone())
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|(n, s, t)| Arrow { name: n.clone(), from: self.vertices[*s].clone(), to: self.vertices[*t].clone() })
                .collect(),
        }
    }

    fn numbered(k: usize, arrows: Vec<(String, usize, usize)>, name: String) -> Result<Self> {
        let vertices: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
        let arrows = arrows
            .into_iter()
            .map(|(n, s, t)| Arrow { name: n, from: vertices[s].clone(), to: vertices[t].clone() })
            .collect();
        let mut q = Self::new(vertices, arrows)?;
        q.builtin = Some(name);
        Ok(q)
    }

    /// `An-linear:k`, `An:<pattern>` with one `>` or `<` per arrow, `Dk`,
    /// `kronecker` or `A4-zigzag`.
    pub fn builtin(name: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown quiver {name:?}"));
        if let Some(k) = name.strip_prefix("An-linear:") {
            let k: usize = k.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            let arrows = (1..k).map(|i| (format!("a{i}"), i - 1, i)).collect();
            return Self::numbered(k, arrows, name.to_string());
        }
        if let Some(pat) = name.strip_prefix("An:") {
            let mut arrows = Vec::new();
            for (i, c) in pat.chars().enumerate() {
                let a = format!("a{}", i + 1);
                match c {
                    '>' => arrows.push((a, i, i + 1)),
                    '<' => arrows.push((a, i + 1, i)),
                    _ => return Err(bad()),
                }
            }
            return Self::numbered(pat.len() + 1, arrows, name.to_string());
        }
        match name {
            "kronecker" => Self::numbered(2, vec![("a".into(), 0, 1), ("b".into(), 0, 1)], name.into()),
            "A4-zigzag" => Self::numbered(
                4,
                vec![("a".into(), 0, 1), ("b".into(), 2, 1), ("c".into(), 2, 3)],
                name.into(),
            ),
            _ => {
                let k: usize = name.strip_prefix('D').and_then(|k| k.parse().ok()).ok_or_else(bad)?;
                if k < 4 {
                    return Err(bad());
                }
                // 1 -> 3, 2 -> 3, 3 -> 4 -> ... -> k
                let mut arrows = vec![("a1".to_string(), 0, 2), ("a2".to_string(), 1, 2)];
                for i in 3..k {
                    arrows.push((format!("a{i}"), i - 1, i));
                }
                Self::numbered(k, arrows, name.into())
            }
        }
    }

    /// Builtin name or JSON text.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            let spec: QuiverSpec = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
            Self::from_spec(&spec)
        } else {
            Self::builtin(s)
        }
    }

    pub fn builtin_name(&self) -> Option<&str> {
        self.builtin.as_deref()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|x| x == name).ok_or_else(|| Error::Invalid(format!("unknown vertex {name:?}")))
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].0
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|x| x.0 == name).ok_or_else(|| Error::Invalid(format!("unknown arrow {name:?}")))
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].1
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].2
    }

    /// Arrows ending at `v`, in arrow order.
    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].2 == v).collect()
    }

    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].1 == v).collect()
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// All paths, by length and then by arrow names; trivial paths in vertex order.
    pub fn paths(&self) -> Vec<Path> {
        let mut out: Vec<Path> =
            (0..self.vertices.len()).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
        let mut layer: Vec<Path> = out.clone();
        loop {
            let mut next = Vec::new();
            for p in &layer {
                for a in self.arrows_from(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { source: p.source, target: self.target(a), arrows });
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|x, y| self.path_names(x).cmp(&self.path_names(y)));
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn path_names<'a>(&'a self, p: &Path) -> Vec<&'a str> {
        p.arrows.iter().map(|&a| self.arrow_name(a)).collect()
    }

    /// Paths ending at `v`, in the order of [`Quiver::paths`].
    pub fn paths_into(&self, v: usize) -> Vec<Path> {
        self.paths().into_iter().filter(|p| p.target == v).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (_, s, t) in &self.arrows {
                for (x, y) in [(*s, *t), (*t, *s)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Type of the underlying graph, if it is a simply-laced Dynkin diagram.
    pub fn dynkin_type(&self) -> Result<Option<DynkinType>> {
        if !self.is_connected() {
            return Err(Error::Invalid("quiver is not connected".into()));
        }
        let n = self.vertices.len();
        if n == 0 || self.arrows.len() != n - 1 {
            return Ok(None);
        }
        let mut pairs = BTreeSet::new();
        let mut deg = vec![0usize; n];
        for (_, s, t) in &self.arrows {
            if !pairs.insert(((*s).min(*t), (*s).max(*t))) {
                return Ok(None);
            }
            deg[*s] += 1;
            deg[*t] += 1;
        }
        let branches: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
        if deg.iter().any(|&d| d > 3) || branches.len() > 1 {
            return Ok(None);
        }
        let Some(&c) = branches.first() else { return Ok(Some(DynkinType::A(n))) };
        let mut arms: Vec<usize> = self
            .neighbours(c)
            .into_iter()
            .map(|start| {
                let (mut prev, mut cur, mut len) = (c, start, 1);
                loop {
                    let next: Vec<usize> = self.neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                    match next.as_slice() {
                        [x] => {
                            prev = cur;
                            cur = *x;
                            len += 1;
                        }
                        _ => break len,
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        Ok(match arms.as_slice() {
            [1, 1, _] => Some(DynkinType::D(n)),
            [1, 2, 2] => Some(DynkinType::E6),
            [1, 2, 3] => Some(DynkinType::E7),
            [1, 2, 4] => Some(DynkinType::E8),
            _ => None,
        })
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (_, s, t) in &self.arrows {
            if *s == v {
                out.push(*t);
            } else if *t == v {
                out.push(*s);
            }
        }
        out
    }

    /// Positive roots as dimension vectors indexed by this quiver's vertices.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        if self.dynkin_type()?.is_none() {
            return Err(Error::Invalid("quiver is not of Dynkin type".into()));
        }
        let edges: Vec<(usize, usize)> = self.arrows.iter().map(|(_, s, t)| (*s, *t)).collect();
        Ok(root_closure(self.vertices.len(), &edges))
    }
}

fn topological_order(n: usize, arrows: &[(String, usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0; n];
    for (_, _, t) in arrows {
        indeg[*t] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for (_, s, t) in arrows {
            if *s == v {
                indeg[*t] -= 1;
                if indeg[*t] == 0 {
                    ready.insert(*t);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_examples() {
        let a2 = Quiver::builtin("An-linear:2").unwrap();
        assert_eq!(a2.paths().len(), 3);
        let k = Quiver::builtin("kronecker").unwrap();
        let names: Vec<Vec<&str>> = k.paths().iter().map(|p| k.path_names(p)).collect();
        assert_eq!(names, vec![vec![], vec![], vec!["a"], vec!["b"]]);
        assert_eq!(Quiver::builtin("An-linear:3").unwrap().paths().len(), 6);
    }

    #[test]
    fn paths_factor_uniquely() {
        for name in ["An-linear:5", "D5", "A4-zigzag", "An:<><>"] {
            let q = Quiver::builtin(name).unwrap();
            let paths = q.paths();
            let set: BTreeSet<Vec<usize>> = paths.iter().map(|p| p.arrows.clone()).collect();
            for p in paths.iter().filter(|p| p.len() > 0) {
                let last = *p.arrows.last().unwrap();
                let shorter = &p.arrows[..p.len() - 1];
                assert!(shorter.is_empty() || set.contains(shorter));
                assert_eq!(q.target(last), p.target);
            }
        }
    }

    #[test]
    fn dynkin_examples() {
        let a3 = Quiver::builtin("An-linear:3").unwrap();
        assert_eq!(a3.dynkin_type().unwrap(), Some(DynkinType::A(3)));
        assert_eq!(a3.positive_roots().unwrap().len(), 6);
        let d4 = Quiver::builtin("D4").unwrap();
        assert_eq!(d4.dynkin_type().unwrap(), Some(DynkinType::D(4)));
        assert_eq!(d4.positive_roots().unwrap().len(), 12);
        let cyc = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                Arrow { name: "a".into(), from: "1".into(), to: "2".into() },
                Arrow { name: "b".into(), from: "2".into(), to: "3".into() },
                Arrow { name: "c".into(), from: "1".into(), to: "3".into() },
            ],
        )
        .unwrap();
        assert_eq!(cyc.dynkin_type().unwrap(), None);
        assert_eq!(Quiver::builtin("kronecker").unwrap().dynkin_type().unwrap(), None);
        let two = Quiver::new(vec!["1".into(), "2".into()], vec![]).unwrap();
        assert!(two.dynkin_type().is_err());
    }

    #[test]
    fn root_counts_match() {
        for k in 1..=8 {
            assert_eq!(DynkinType::A(k).positive_roots().len(), k * (k + 1) / 2);
        }
        for t in [DynkinType::D(4), DynkinType::D(6), DynkinType::E6, DynkinType::E7, DynkinType::E8] {
            assert_eq!(t.positive_roots().len(), t.positive_root_count(), "{t}");
        }
    }

    #[test]
    fn cycles_are_rejected() {
        let r = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                Arrow { name: "a".into(), from: "1".into(), to: "2".into() },
                Arrow { name: "b".into(), from: "2".into(), to: "1".into() },
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::builtin("A4-zigzag").unwrap();
        let json = serde_json::to_string(&q.to_spec()).unwrap();
        let back = Quiver::parse(&json).unwrap();
        assert_eq!(back.to_spec(), q.to_spec());
    }
}
