//! Permutations on small point sets, closures, set orbits and Steiner systems.
//!
//! Points are 0-based. In 11-point cycle notation the point 10 prints as `X`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default bound on the size of an exhaustive closure.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000_000;

const SAMPLE_SEED: u64 = 0x7065_726d_6772_7073;

/// A cycle type, parts sorted in decreasing order with fixed points as 1s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleShape(pub Vec<usize>);

impl CycleShape {
    pub fn new(mut parts: Vec<usize>) -> CycleShape {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleShape(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Order of any permutation with this shape.
    pub fn order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &p| {
            let g = gcd(acc, p as u64);
            acc / g * p as u64
        })
    }

    /// Whether permutations of this shape are even.
    pub fn is_even(&self) -> bool {
        self.0.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0
    }

    /// Exponent form such as `[5^2 1]`.
    pub fn to_power_text(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(self.0[i].to_string());
            } else {
                parts.push(format!("{}^{}", self.0[i], j - i));
            }
            i = j;
        }
        format!("[{}]", parts.join(" "))
    }

    /// Parses `[2,2,1]`, `2,2,1` or `[5^2 1]`.
    pub fn parse(src: &str) -> Result<CycleShape> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("{msg} in cycle shape {src:?}"),
        };
        let body = src.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (base, rep) = match tok.split_once('^') {
                Some((b, r)) => (b, r.parse::<usize>().map_err(|_| bad("bad repetition"))?),
                None => (tok, 1),
            };
            let b: usize = base.parse().map_err(|_| bad("bad part"))?;
            if b == 0 {
                return Err(bad("zero part"));
            }
            parts.extend(std::iter::repeat(b).take(rep));
        }
        if parts.is_empty() {
            return Err(bad("empty shape"));
        }
        Ok(CycleShape::new(parts))
    }
}

impl fmt::Display for CycleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for CycleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A bijection of {0, …, n-1}; `images[i]` is the image of i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n > 255 {
            return Err(Error::Permutation(format!("{n} points exceed the limit of 255")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Permutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Permutation {
        assert!(n <= 255, "at most 255 points");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// The permutation with the given cycles on n points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (j, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(Error::Permutation(format!("point {a} outside 0..{n}")));
                }
                if used[a] {
                    return Err(Error::Permutation(format!("point {a} appears twice")));
                }
                used[a] = true;
                images[a] = c[(j + 1) % c.len()];
            }
        }
        Permutation::new(images)
    }

    /// Parses cycle notation: `(0123456789X)` with one character per point
    /// (for n ≤ 11), or `(0,1,2)(3,4)` with commas. `()` is the identity.
    pub fn parse(src: &str, n: usize) -> Result<Permutation> {
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let mut cycles = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c != '(' {
                return Err(err(i, "expected '('"));
            }
            let close = chars[i..]
                .iter()
                .position(|&d| d == ')')
                .map(|d| d + i)
                .ok_or_else(|| err(i, "unclosed cycle"))?;
            let body: String = chars[i + 1..close].iter().collect();
            let body = body.trim();
            let points: Vec<usize> = if body.is_empty() {
                Vec::new()
            } else if body.contains(',') {
                body.split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| err(i + 1, "bad point")))
                    .collect::<Result<_>>()?
            } else {
                if n > 11 {
                    return Err(err(i + 1, "digit form needs n <= 11; use commas"));
                }
                body.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0'..='9' => Ok(c as usize - '0' as usize),
                        'X' | 'x' => Ok(10),
                        _ => Err(err(i + 1, "bad point")),
                    })
                    .collect::<Result<_>>()?
            };
            if !points.is_empty() {
                cycles.push(points);
            }
            i = close + 1;
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// p.compose(q) maps i to p(q(i)).
    pub fn compose(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Permutation {
            images: q.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.apply(s);
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn cycle_shape(&self) -> CycleShape {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.apply(j);
            }
            parts.push(len);
        }
        CycleShape::new(parts)
    }

    pub fn order(&self) -> u64 {
        self.cycle_shape().order()
    }

    /// Image of a point set, sorted.
    pub fn apply_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&i| self.apply(i)).collect();
        v.sort_unstable();
        v
    }
}

fn point_text(i: usize, n: usize) -> String {
    if n == 11 && i == 10 {
        "X".into()
    } else {
        i.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|&i| point_text(i, n)).collect();
            if n <= 11 {
                write!(f, "({})", pts.concat())?;
            } else {
                write!(f, "({})", pts.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermOp {
    Compose,
    Invert,
    CycleShape,
    Print,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermValue {
    Perm(Permutation),
    Shape(CycleShape),
    Text(String),
}

/// Checked permutation operations; `Compose` needs `q` of the same degree.
pub fn perm_ops(p: &Permutation, q: Option<&Permutation>, op: PermOp) -> Result<PermValue> {
    Ok(match op {
        PermOp::Compose => {
            let q = q.ok_or_else(|| Error::InvalidArgument("compose needs two permutations".into()))?;
            if q.degree() != p.degree() {
                return Err(Error::Permutation(format!(
                    "degrees differ: {} vs {}",
                    p.degree(),
                    q.degree()
                )));
            }
            PermValue::Perm(p.compose(q))
        }
        PermOp::Invert => PermValue::Perm(p.inverse()),
        PermOp::CycleShape => PermValue::Shape(p.cycle_shape()),
        PermOp::Print => PermValue::Text(p.to_string()),
    })
}

fn check_gens(gens: &[Permutation]) -> Result<usize> {
    let n = gens.first().map_or(0, |g| g.degree());
    if gens.iter().any(|g| g.degree() != n) {
        return Err(Error::Permutation("generators act on different point sets".into()));
    }
    Ok(n)
}

/// All elements of ⟨gens⟩ by breadth-first closure, in discovery order.
pub fn closure(gens: &[Permutation], bound: usize) -> Result<Vec<Permutation>> {
    let n = check_gens(gens)?;
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id);
    let mut head = 0;
    while head < order.len() {
        let g = order[head].clone();
        head += 1;
        for s in gens {
            let h = g.compose(s);
            if !seen.contains(&h) {
                if order.len() >= bound {
                    return Err(Error::GroupOverflow(bound));
                }
                seen.insert(h.clone());
                order.push(h);
            }
        }
    }
    Ok(order)
}

/// |⟨gens⟩|, or `GroupOverflow` past `bound`.
pub fn group_order(gens: &[Permutation], bound: usize) -> Result<u64> {
    Ok(closure(gens, bound)?.len() as u64)
}

/// A set of equal-size blocks on n points, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockSet {
    n: usize,
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockSet {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<BlockSet> {
        let k = blocks.first().map_or(0, |b| b.len());
        let mut set = BTreeSet::new();
        for b in blocks {
            let mut b = b;
            b.sort_unstable();
            if b.len() != k {
                return Err(Error::InvalidArgument(format!("block {b:?} does not have size {k}")));
            }
            if b.windows(2).any(|w| w[0] == w[1]) || b.iter().any(|&i| i >= n) {
                return Err(Error::InvalidArgument(format!("block {b:?} is not a subset of 0..{n}")));
            }
            if !set.insert(b.clone()) {
                return Err(Error::InvalidArgument(format!("block {b:?} repeated")));
            }
        }
        Ok(BlockSet {
            n,
            k,
            blocks: set.into_iter().collect(),
        })
    }

    /// Parses the JSON list-of-lists form.
    pub fn from_json(n: usize, v: &Value) -> Result<BlockSet> {
        let blocks: Vec<Vec<usize>> = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidArgument(format!("block list: {e}")))?;
        BlockSet::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, block: &[usize]) -> bool {
        let mut b = block.to_vec();
        b.sort_unstable();
        self.blocks.binary_search(&b).is_ok()
    }

    pub fn without(&self, block: &[usize]) -> BlockSet {
        let mut b = block.to_vec();
        b.sort_unstable();
        BlockSet {
            n: self.n,
            k: self.k,
            blocks: self.blocks.iter().filter(|x| **x != b).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.blocks)
    }

    /// Blocks written with one character per point, e.g. `{X8267}` as `2678X`.
    pub fn block_text(&self, block: &[usize]) -> String {
        block.iter().map(|&i| point_text(i, self.n)).collect::<Vec<_>>().concat()
    }
}

impl fmt::Debug for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockSet(n={}, k={}, {} blocks)", self.n, self.k, self.blocks.len())
    }
}

/// Orbit of a point set together with, for each block, a word (generator
/// indices, applied left to right) carrying the seed to it.
pub fn orbit_with_witnesses(gens: &[Permutation], seed: &[usize]) -> Result<(BlockSet, Vec<Vec<usize>>)> {
    let n = check_gens(gens)?;
    let mut start = seed.to_vec();
    start.sort_unstable();
    let mut words: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    words.insert(start.clone(), Vec::new());
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let c = g.apply_set(&b);
            if !words.contains_key(&c) {
                let mut w = words[&b].clone();
                w.push(gi);
                words.insert(c.clone(), w);
                queue.push_back(c);
            }
        }
    }
    let blocks = BlockSet::new(n, words.keys().cloned().collect())?;
    let witnesses = blocks.blocks().iter().map(|b| words[b].clone()).collect();
    Ok((blocks, witnesses))
}

pub fn orbit_of_set(gens: &[Permutation], seed: &[usize]) -> Result<BlockSet> {
    Ok(orbit_with_witnesses(gens, seed)?.0)
}

/// Outcome of a Steiner-system check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerVerdict {
    pub ok: bool,
    pub subsets_checked: usize,
    pub uncovered: Vec<Vec<usize>>,
    pub multiply_covered: Vec<(Vec<usize>, usize)>,
}

impl SteinerVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok,
            "subsets_checked": self.subsets_checked,
            "uncovered": self.uncovered,
            "multiply_covered": self.multiply_covered
                .iter()
                .map(|(s, c)| json!({"subset": s, "count": c}))
                .collect::<Vec<_>>(),
        })
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Whether every t-subset of 0..n lies in exactly one block.
pub fn is_steiner(blocks: &BlockSet, t: usize, k: usize, n: usize) -> SteinerVerdict {
    let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let shape_ok = blocks.n() == n && (blocks.is_empty() || blocks.block_size() == k);
    for b in blocks.blocks() {
        for s in k_subsets(b.len(), t) {
            let sub: Vec<usize> = s.iter().map(|&i| b[i]).collect();
            *count.entry(sub).or_default() += 1;
        }
    }
    let all = k_subsets(n, t);
    let uncovered: Vec<Vec<usize>> = all.iter().filter(|s| !count.contains_key(*s)).cloned().collect();
    let multiply_covered: Vec<(Vec<usize>, usize)> =
        count.into_iter().filter(|(_, c)| *c > 1).collect();
    SteinerVerdict {
        ok: shape_ok && uncovered.is_empty() && multiply_covered.is_empty(),
        subsets_checked: all.len(),
        uncovered,
        multiply_covered,
    }
}

/// Cycle shapes of the elements of ⟨gens⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeCensus {
    pub shapes: BTreeSet<CycleShape>,
    /// True when the whole group was enumerated.
    pub exhaustive: bool,
    /// Group order when exhaustive, otherwise the number of sampled elements.
    pub count: usize,
}

/// Every cycle shape when |⟨gens⟩| ≤ budget; otherwise the shapes of
/// `budget` random products from a fixed seed.
pub fn element_shapes(gens: &[Permutation], budget: usize) -> Result<ShapeCensus> {
    match closure(gens, budget) {
        Ok(all) => Ok(ShapeCensus {
            shapes: all.iter().map(|g| g.cycle_shape()).collect(),
            exhaustive: true,
            count: all.len(),
        }),
        Err(Error::GroupOverflow(_)) => {
            let n = check_gens(gens)?;
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let mut shapes = BTreeSet::new();
            let mut g = Permutation::identity(n);
            for _ in 0..budget.min(200_000) {
                g = g.compose(&gens[rng.gen_range(0..gens.len())]);
                shapes.insert(g.cycle_shape());
            }
            Ok(ShapeCensus {
                shapes,
                exhaustive: false,
                count: budget.min(200_000),
            })
        }
        Err(e) => Err(e),
    }
}

/// α = (0123456789X) and σ = (36)(40)(5X)(89) on 11 points.
pub fn m11_generators() -> [Permutation; 2] {
    [
        Permutation::parse("(0123456789X)", 11).expect("valid cycle"),
        Permutation::parse("(36)(40)(5X)(89)", 11).expect("valid cycle"),
    ]
}

/// The 66 blocks of the Steiner system S(4,5,11): the orbit of {X,8,2,6,7}.
pub fn steiner11_blocks() -> BlockSet {
    orbit_of_set(&m11_generators(), &[10, 8, 2, 6, 7]).expect("valid generators")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_parsing() {
        let [a, s] = m11_generators();
        assert_eq!(s.cycle_shape().0, vec![2, 2, 2, 2, 1, 1, 1]);
        assert_eq!(a.cycle_shape().0, vec![11]);
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.to_string(), "(0123456789X)");
        assert_eq!(s.to_string(), "(04)(36)(5X)(89)");
        let c = Permutation::parse("(0,12)(3,4,5)", 13).unwrap();
        assert_eq!(c.to_string(), "(0,12)(3,4,5)");
        assert!(Permutation::parse("(0,1)(1,2)", 3).is_err());
        assert!(Permutation::parse("(0,5)", 3).is_err());
        assert_eq!(CycleShape::parse("[5^2 1]").unwrap().0, vec![5, 5, 1]);
        assert_eq!(CycleShape::new(vec![1, 5, 5]).to_power_text(), "[5^2 1]");
    }

    #[test]
    fn closure_orders() {
        let [a, s] = m11_generators();
        assert_eq!(group_order(&[a.clone(), s.clone()], DEFAULT_CLOSURE_BOUND).unwrap(), 7920);
        assert_eq!(group_order(&[s.clone(), a.clone()], DEFAULT_CLOSURE_BOUND).unwrap(), 7920);
        assert_eq!(group_order(&[a.clone()], 100).unwrap(), 11);
        let t = Permutation::parse("(01)", 2).unwrap();
        assert_eq!(group_order(&[t], 10).unwrap(), 2);
        assert_eq!(group_order(&[a, s], 1000), Err(Error::GroupOverflow(1000)));
    }

    #[test]
    fn subsets_enumerate() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(11, 5).len(), 462);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(k_subsets(2, 3).is_empty());
    }

    #[test]
    fn steiner_system() {
        let b = steiner11_blocks();
        assert_eq!(b.len(), 66);
        let v = is_steiner(&b, 4, 5, 11);
        assert!(v.ok);
        assert_eq!(v.subsets_checked, 330);
        let dropped = b.without(&b.blocks()[0].clone());
        let v = is_steiner(&dropped, 4, 5, 11);
        assert!(!v.ok);
        assert_eq!(v.uncovered.len(), 5);
        let singles = BlockSet::new(4, (0..4).map(|i| vec![i]).collect()).unwrap();
        assert!(is_steiner(&singles, 1, 1, 4).ok);
    }

    #[test]
    fn orbit_witnesses_replay() {
        let gens = m11_generators();
        let seed = [10, 8, 2, 6, 7];
        let (blocks, words) = orbit_with_witnesses(&gens, &seed).unwrap();
        for (b, w) in blocks.blocks().iter().zip(&words) {
            let mut cur = seed.to_vec();
            cur.sort_unstable();
            for &g in w {
                cur = gens[g].apply_set(&cur);
            }
            assert_eq!(&cur, b);
        }
        let single = orbit_of_set(&gens[..1], &[3]).unwrap();
        assert_eq!(single.len(), 11);
        let id = Permutation::identity(11);
        assert_eq!(orbit_of_set(&[id], &seed).unwrap().len(), 1);
    }

    #[test]
    fn m11_shapes() {
        let census = element_shapes(&m11_generators(), DEFAULT_CLOSURE_BOUND).unwrap();
        assert!(census.exhaustive);
        for s in ["[5,5,1]", "[6,3,2]", "[8,2,1]", "[11]"] {
            assert!(census.shapes.contains(&CycleShape::parse(s).unwrap()), "{s}");
        }
        let a = &m11_generators()[0];
        let c = element_shapes(std::slice::from_ref(a), 100).unwrap();
        assert_eq!(c.shapes.len(), 2);
    }
}
