//! Finite root systems built from Cartan types.
//!
//! Simple roots follow Bourbaki numbering. The invariant form is normalized so
//! that long roots of every simple component have squared length 2; every
//! quantity used downstream (coroot pairings, reflections) is independent of
//! that normalization.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weight::{Weight, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    /// Number of positive roots of the simple system of this type and rank.
    pub fn positive_root_count(self, n: usize) -> usize {
        match self {
            CartanType::A => n * (n + 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
            CartanType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            CartanType::F => 24,
            CartanType::G => 6,
        }
    }
}

/// One simple component, e.g. `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSpec {
    pub kind: CartanType,
    pub rank: usize,
}

impl SimpleSpec {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let s = SimpleSpec { kind, rank };
        let reason = match kind {
            CartanType::A if rank < 1 => Some("type A requires rank >= 1"),
            CartanType::B if rank < 2 => Some("type B requires rank >= 2"),
            CartanType::C if rank < 2 => Some("type C requires rank >= 2"),
            CartanType::D if rank < 4 => Some("type D requires rank >= 4"),
            CartanType::E if !(6..=8).contains(&rank) => Some("type E requires rank 6, 7 or 8"),
            CartanType::F if rank != 4 => Some("type F requires rank 4"),
            CartanType::G if rank != 2 => Some("type G requires rank 2"),
            _ => None,
        };
        match reason {
            Some(r) => Err(Error::InadmissibleType {
                label: s.to_string(),
                reason: r.to_string(),
            }),
            None => Ok(s),
        }
    }

    /// Gram matrix of the simple roots under the normalized invariant form.
    fn gram(&self) -> Vec<Vec<Q>> {
        let n = self.rank;
        let mut g = vec![vec![Q::zero(); n]; n];
        let two = Q::from_integer(2);
        let one = Q::one();
        let half = Q::new(1, 2);
        let link = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.kind {
            CartanType::A | CartanType::B | CartanType::D => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = two;
                }
                let chain = if self.kind == CartanType::D { n - 1 } else { n };
                for i in 0..chain.saturating_sub(1) {
                    link(&mut g, i, i + 1, -one);
                }
                if self.kind == CartanType::B {
                    g[n - 1][n - 1] = one;
                }
                if self.kind == CartanType::D {
                    link(&mut g, n - 3, n - 1, -one);
                }
            }
            CartanType::C => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = one;
                }
                for i in 0..n - 1 {
                    link(&mut g, i, i + 1, -half);
                }
                g[n - 1][n - 1] = two;
                link(&mut g, n - 2, n - 1, -one);
            }
            CartanType::E => {
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = two;
                }
                link(&mut g, 0, 2, -one);
                link(&mut g, 1, 3, -one);
                for i in 2..n - 1 {
                    link(&mut g, i, i + 1, -one);
                }
            }
            CartanType::F => {
                g[0][0] = two;
                g[1][1] = two;
                g[2][2] = one;
                g[3][3] = one;
                link(&mut g, 0, 1, -one);
                link(&mut g, 1, 2, -one);
                link(&mut g, 2, 3, -half);
            }
            CartanType::G => {
                g[0][0] = Q::new(2, 3);
                g[1][1] = two;
                link(&mut g, 0, 1, -one);
            }
        }
        g
    }
}

impl fmt::Display for SimpleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

/// A semisimple Cartan type as a direct sum of simple components, e.g. `A1xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    components: Vec<SimpleSpec>,
}

impl RootSystemSpec {
    pub fn new(components: Vec<SimpleSpec>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InadmissibleType {
                label: String::new(),
                reason: "at least one simple component is required".into(),
            });
        }
        Ok(RootSystemSpec { components })
    }

    pub fn simple(kind: CartanType, rank: usize) -> Result<Self> {
        Self::new(vec![SimpleSpec::new(kind, rank)?])
    }

    pub fn components(&self) -> &[SimpleSpec] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut comps = Vec::new();
        for part in s.trim().split(['x', 'X', '+']) {
            let part = part.trim();
            let mut chars = part.chars();
            let kind = chars
                .next()
                .and_then(CartanType::from_letter)
                .ok_or_else(|| Error::Parse(format!("unknown Cartan type {part:?} in {s:?}")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("missing or invalid rank in {part:?}")))?;
            comps.push(SimpleSpec::new(kind, rank)?);
        }
        RootSystemSpec::new(comps)
    }
}

/// A root in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug)]
struct RootEntry {
    root: Root,
    /// The root written in the fundamental-weight basis.
    weight: Vec<i64>,
    /// The coroot in the simple-coroot basis.
    coroot: Vec<i64>,
}

/// Identifies the root system an element was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemTag(u64);

/// A finite root system with a fixed positive system.
///
/// Roots are addressed by index: `0..n` are the positive roots sorted by height
/// (the first `rank` of them are the simple roots in Bourbaki order) and
/// `n..2n` their negatives, with `neg(i) = i + n`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    rank: usize,
    gram: Vec<Vec<Q>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<RootEntry>,
    n_pos: usize,
    by_weight: HashMap<Vec<i64>, usize>,
    by_coords: HashMap<Vec<i64>, usize>,
    tag: SystemTag,
}

impl RootSystem {
    pub fn new(spec: &RootSystemSpec) -> Self {
        let rank = spec.rank();
        let mut gram = vec![vec![Q::zero(); rank]; rank];
        let mut off = 0;
        for comp in spec.components() {
            let g = comp.gram();
            for i in 0..comp.rank {
                for j in 0..comp.rank {
                    gram[off + i][off + j] = g[i][j];
                }
            }
            off += comp.rank;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = Q::from_integer(2) * gram[i][j] / gram[i][i];
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();

        // Every root is W-conjugate to a simple root: close the simple roots
        // under simple reflections.
        let unit = |i: usize| {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            v
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = (0..rank).map(unit).collect();
        for r in &queue {
            seen.insert(r.clone());
        }
        while let Some(r) = queue.pop_front() {
            for (i, row) in cartan.iter().enumerate() {
                let p: i64 = row.iter().zip(&r).map(|(a, c)| a * c).sum();
                if p == 0 {
                    continue;
                }
                let mut s = r.clone();
                s[i] -= p;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut positives: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = positives.len();

        let sq_len = |c: &[i64]| -> Q {
            let mut s = Q::zero();
            for i in 0..rank {
                for j in 0..rank {
                    s += gram[i][j] * Q::from_integer(c[i] * c[j]);
                }
            }
            s
        };
        let make = |c: Vec<i64>| -> RootEntry {
            let weight = (0..rank)
                .map(|i| (0..rank).map(|j| cartan[i][j] * c[j]).sum())
                .collect();
            let len = sq_len(&c);
            let coroot = (0..rank)
                .map(|j| {
                    let d = Q::from_integer(c[j]) * gram[j][j] / len;
                    debug_assert!(d.is_integer());
                    d.to_integer()
                })
                .collect();
            RootEntry {
                root: Root(c),
                weight,
                coroot,
            }
        };
        let mut roots: Vec<RootEntry> = positives.iter().cloned().map(make).collect();
        for i in 0..n_pos {
            let e = &roots[i];
            let neg = RootEntry {
                root: Root(e.root.0.iter().map(|c| -c).collect()),
                weight: e.weight.iter().map(|c| -c).collect(),
                coroot: e.coroot.iter().map(|c| -c).collect(),
            };
            roots.push(neg);
        }
        let by_weight = roots
            .iter()
            .enumerate()
            .map(|(i, e)| (e.weight.clone(), i))
            .collect();
        let by_coords = roots
            .iter()
            .enumerate()
            .map(|(i, e)| (e.root.0.clone(), i))
            .collect();
        let mut h = DefaultHasher::new();
        spec.hash(&mut h);
        RootSystem {
            spec: spec.clone(),
            rank,
            gram,
            cartan,
            roots,
            n_pos,
            by_weight,
            by_coords,
            tag: SystemTag(h.finish()),
        }
    }

    /// Parses a type label such as `"B3"` or `"A1xA1"` and builds the system.
    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(&label.parse()?))
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    /// `cartan[i][j] = <coroot_i, alpha_j>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix of the simple roots under the normalized invariant form.
    pub fn form(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.n_pos
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx].root
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[i].root
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots[..self.rank].iter().map(|e| &e.root)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots[..self.n_pos].iter().map(|e| &e.root)
    }

    pub fn all_roots(&self) -> impl Iterator<Item = &Root> + '_ {
        self.roots.iter().map(|e| &e.root)
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx < self.n_pos
    }

    pub fn neg_index(&self, idx: usize) -> usize {
        if idx < self.n_pos {
            idx + self.n_pos
        } else {
            idx - self.n_pos
        }
    }

    /// Index of the positive root among `{beta, -beta}`.
    pub fn abs_index(&self, idx: usize) -> usize {
        idx % self.n_pos
    }

    pub fn root_index(&self, root: &Root) -> Option<usize> {
        self.by_coords.get(&root.0).copied()
    }

    pub(crate) fn index_of_weight(&self, w: &[i64]) -> Option<usize> {
        self.by_weight.get(w).copied()
    }

    pub(crate) fn root_weight_coords(&self, idx: usize) -> &[i64] {
        &self.roots[idx].weight
    }

    pub(crate) fn coroot_coords(&self, idx: usize) -> &[i64] {
        &self.roots[idx].coroot
    }

    fn lookup(&self, root: &Root) -> Result<usize> {
        self.root_index(root)
            .ok_or_else(|| Error::NotARoot(root.to_string()))
    }

    /// The root as an element of the weight lattice.
    pub fn root_as_weight(&self, root: &Root) -> Result<Weight> {
        Ok(self.root_weight(self.lookup(root)?))
    }

    pub fn root_weight(&self, idx: usize) -> Weight {
        Weight::from_ints(&self.roots[idx].weight)
    }

    /// `<coroot(beta), mu>`.
    pub fn pairing(&self, beta: &Root, mu: &Weight) -> Result<Q> {
        mu.check_rank(self.rank)?;
        Ok(self.pairing_idx(self.lookup(beta)?, mu))
    }

    pub fn pairing_idx(&self, idx: usize, mu: &Weight) -> Q {
        mu.dot_int(&self.roots[idx].coroot)
    }

    /// `s_beta(mu) = mu - <coroot(beta), mu> beta`.
    pub fn reflect(&self, beta: &Root, mu: &Weight) -> Result<Weight> {
        mu.check_rank(self.rank)?;
        Ok(self.reflect_idx(self.lookup(beta)?, mu))
    }

    pub fn reflect_idx(&self, idx: usize, mu: &Weight) -> Weight {
        let p = self.pairing_idx(idx, mu);
        if p.is_zero() {
            return mu.clone();
        }
        mu.sub_scaled_int(p, &self.roots[idx].weight)
    }

    /// Dominance in the weak sense: no positive root pairs with `lambda` to a
    /// negative integer. Non-integral negative pairings are allowed.
    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        (0..self.n_pos).all(|i| {
            let p = self.pairing_idx(i, lambda);
            !(p.is_integer() && p < Q::zero())
        })
    }

    /// Half the sum of the positive roots: every fundamental coordinate is 1.
    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank])
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank)
    }

    /// Converts a weight to simple-root coordinates (inverse Cartan transpose).
    pub fn weight_to_root_coords(&self, mu: &Weight) -> Vec<Q> {
        // Solve sum_j cartan[i][j] x_j = mu_i by Gauss-Jordan elimination.
        let n = self.rank;
        let mut a: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q> = self.cartan[i].iter().map(|&c| Q::from_integer(c)).collect();
                row.push(mu.coords()[i]);
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("Cartan matrix is invertible");
            a.swap(col, piv);
            let p = a[col][col];
            for x in a[col].iter_mut() {
                *x /= p;
            }
            let pivot = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col];
                    for (x, v) in row.iter_mut().zip(&pivot).skip(col) {
                        *x -= f * v;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[n]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn small_systems() {
        let a1 = rs("A1");
        assert_eq!(
            a1.positive_roots().cloned().collect::<Vec<_>>(),
            vec![Root(vec![1])]
        );
        let a2 = rs("A2");
        let pos: Vec<_> = a2.positive_roots().cloned().collect();
        assert_eq!(
            pos,
            vec![Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1])]
        );
        let b2 = rs("B2");
        let pos: HashSet<_> = b2.positive_roots().cloned().collect();
        let want: HashSet<_> = [vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]
            .into_iter()
            .map(Root)
            .collect();
        assert_eq!(pos, want);
    }

    #[test]
    fn bourbaki_cartan_matrices() {
        assert_eq!(rs("B2").cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(rs("C2").cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(rs("G2").cartan_matrix(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(
            rs("F4").cartan_matrix(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2]
            ]
        );
        let e6 = rs("E6");
        assert_eq!(e6.cartan_matrix()[1][3], -1);
        assert_eq!(e6.cartan_matrix()[0][2], -1);
        assert_eq!(e6.cartan_matrix()[1][2], 0);
    }

    #[test]
    fn positive_root_counts() {
        for label in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "E6", "E7",
            "E8", "F4", "G2",
        ] {
            let spec: RootSystemSpec = label.parse().unwrap();
            let c = spec.components()[0];
            assert_eq!(
                rs(label).num_positive(),
                c.kind.positive_root_count(c.rank),
                "{label}"
            );
        }
        assert_eq!(rs("A1xA1").num_positive(), 2);
        assert_eq!(rs("A2xB2").num_positive(), 7);
    }

    #[test]
    fn inadmissible_types() {
        for bad in ["D3", "G3", "E5", "F3", "B1", "A0", "Q2", "A", ""] {
            assert!(bad.parse::<RootSystemSpec>().is_err(), "{bad}");
        }
        let err = "D3".parse::<RootSystemSpec>().unwrap_err();
        assert!(err.to_string().contains("rank >= 4"));
    }

    #[test]
    fn label_round_trip() {
        for l in ["A2", "A1xA1", "B3xG2"] {
            assert_eq!(l.parse::<RootSystemSpec>().unwrap().to_string(), l);
        }
    }

    #[test]
    fn pairing_examples() {
        let a2 = rs("A2");
        for r in a2.all_roots() {
            let as_w = a2.root_as_weight(r).unwrap();
            assert_eq!(a2.pairing(r, &as_w).unwrap(), Q::from_integer(2));
        }
        // fundamental weight duality
        assert_eq!(
            a2.pairing(&Root(vec![1, 0]), &w("(0,1)")).unwrap(),
            Q::zero()
        );
        assert_eq!(
            a2.pairing(&Root(vec![1, 1]), &w("(-1,-1)")).unwrap(),
            Q::from_integer(-2)
        );
        assert!(matches!(
            a2.pairing(&Root(vec![2, 1]), &w("(0,0)")),
            Err(Error::NotARoot(_))
        ));
        assert!(matches!(
            a2.pairing(&Root(vec![1, 0]), &w("(0,0,0)")),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn g2_coroots_are_integral_and_pair_to_two() {
        let g2 = rs("G2");
        for i in 0..g2.num_roots() {
            assert_eq!(g2.pairing_idx(i, &g2.root_weight(i)), Q::from_integer(2));
        }
    }

    #[test]
    fn reflect_examples() {
        let a2 = rs("A2");
        let a1 = Root(vec![1, 0]);
        assert_eq!(a2.reflect(&a1, &w("(-1,-1)")).unwrap(), w("(1,-2)"));
        assert_eq!(a2.reflect(&a1, &w("(0,5/3)")).unwrap(), w("(0,5/3)"));
        let mu = w("(1/2,-3)");
        let once = a2.reflect(&a1, &mu).unwrap();
        assert_eq!(a2.reflect(&a1, &once).unwrap(), mu);
    }

    #[test]
    fn dominance() {
        for label in ["A1", "A3", "B2", "G2", "C3", "A1xA1"] {
            let r = rs(label);
            assert!(r.is_dominant(&r.rho()));
            assert!(!r.is_dominant(&-&r.rho()));
        }
        let a1 = rs("A1");
        assert!(a1.is_dominant(&w("(-1/2)")));
        assert!(!a1.is_dominant(&w("(-1)")));
        assert_eq!(rs("A2").rho(), w("(1,1)"));
        assert_eq!(rs("B2").rho(), w("(1,1)"));
        assert_eq!(a1.rho(), w("(1)"));
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for label in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let r = rs(label);
            let mut sum = r.zero_weight();
            for i in 0..r.num_positive() {
                sum = &sum + &r.root_weight(i);
            }
            assert_eq!(sum.scale(Q::new(1, 2)), r.rho(), "{label}");
        }
    }

    #[test]
    fn weight_to_root_coords_inverts_root_as_weight() {
        let b3 = rs("B3");
        for i in 0..b3.num_roots() {
            let c = b3.weight_to_root_coords(&b3.root_weight(i));
            let want: Vec<Q> = b3.root(i).0.iter().map(|&x| Q::from_integer(x)).collect();
            assert_eq!(c, want);
        }
    }
}
