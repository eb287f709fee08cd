//! Noncrossing partition lattices: type A, k-divisible, and type B, with
//! refinement order, maximal chains, flag vectors, and the chain symmetric
//! function.
//!
//! Type B lives on the signed ground set {1..n, -1..-n}. Its noncrossing
//! predicate is taken with respect to the circular order 1, 2, ..., n, -1,
//! -2, ..., -n; crossing quadruples are invariant under rotating the circle,
//! so the test cuts the circle once and checks the linear condition at the
//! positions above. The convention is validated by the n^n maximal-chain
//! count and the central-binomial cardinality, both exercised in tests.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Family, GradedPoly, Monomial};
use crate::rational::Rational;
use crate::symfunc::{identify_symmetric, SymFunc};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Ground {
    /// The set [n].
    Positive(u32),
    /// The set {1..n} union {-1..-n}.
    Signed(u32),
}

impl Ground {
    /// Elements in the order used for positions: 1..n, then -1..-n.
    pub fn elements(self) -> Vec<i64> {
        match self {
            Ground::Positive(n) => (1..=n as i64).collect(),
            Ground::Signed(n) => {
                let mut v: Vec<i64> = (1..=n as i64).collect();
                v.extend((1..=n as i64).map(|e| -e));
                v
            }
        }
    }

    pub fn size(self) -> usize {
        match self {
            Ground::Positive(n) => n as usize,
            Ground::Signed(n) => 2 * n as usize,
        }
    }
}

/// A set partition in canonical form: elements ascending inside each block,
/// blocks ordered by their minimum element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SetPartition {
    ground: Ground,
    blocks: Vec<Vec<i64>>,
}

impl SetPartition {
    pub fn new(ground: Ground, mut blocks: Vec<Vec<i64>>) -> Self {
        let mut seen: Vec<i64> = Vec::new();
        for block in &mut blocks {
            assert!(!block.is_empty(), "blocks are nonempty");
            block.sort_unstable();
            seen.extend_from_slice(block);
        }
        seen.sort_unstable();
        let mut expected = ground.elements();
        expected.sort_unstable();
        assert!(seen == expected, "blocks must partition the ground set");
        blocks.sort_by_key(|b| b[0]);
        SetPartition { ground, blocks }
    }

    /// All singletons: the minimum of the refinement order.
    pub fn bottom(ground: Ground) -> Self {
        SetPartition::new(ground, ground.elements().into_iter().map(|e| vec![e]).collect())
    }

    /// One block: the maximum of the refinement order.
    pub fn top(ground: Ground) -> Self {
        SetPartition::new(ground, vec![ground.elements()])
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Position of an element in the linear cut of the ground order.
    fn position(&self, e: i64) -> usize {
        match self.ground {
            Ground::Positive(_) => (e - 1) as usize,
            Ground::Signed(n) => {
                if e > 0 {
                    (e - 1) as usize
                } else {
                    n as usize + (-e - 1) as usize
                }
            }
        }
    }

    /// No two blocks interleave: there is no h < l < k < m (in ground
    /// positions) with h, k in one block and l, m in another.
    pub fn is_noncrossing(&self) -> bool {
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            let mut pos: Vec<usize> = block.iter().map(|&e| self.position(e)).collect();
            pos.sort_unstable();
            for i in 0..pos.len() {
                for j in i + 1..pos.len() {
                    pairs.push((pos[i], pos[j], b));
                }
            }
        }
        for &(h, k, b) in &pairs {
            for &(l, m, b2) in &pairs {
                if b != b2 && h < l && l < k && k < m {
                    return false;
                }
            }
        }
        true
    }

    /// Every block maps onto a block under negation (signed grounds only).
    pub fn is_sign_invariant(&self) -> bool {
        assert!(
            matches!(self.ground, Ground::Signed(_)),
            "sign invariance concerns signed ground sets"
        );
        self.blocks.iter().all(|block| {
            let mut negated: Vec<i64> = block.iter().map(|&e| -e).collect();
            negated.sort_unstable();
            self.blocks.binary_search_by(|b| b[0].cmp(&negated[0])).map_or(false, |i| self.blocks[i] == negated)
        })
    }

    /// Refinement: every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        Ok(self.blocks.iter().all(|block| {
            other
                .blocks
                .iter()
                .any(|candidate| block.iter().all(|e| candidate.contains(e)))
        }))
    }

    /// Graded rank in the lattice on [n]: n minus the number of blocks.
    pub fn rank(&self) -> u32 {
        match self.ground {
            Ground::Positive(n) => n - self.num_blocks() as u32,
            Ground::Signed(_) => panic!("rank is used on positive ground sets"),
        }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// All set partitions of the ground set, by restricted growth over the
/// ground's element order.
pub fn enumerate_set_partitions(ground: Ground) -> Vec<SetPartition> {
    let elements = ground.elements();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<i64>> = Vec::new();
    fn go(idx: usize, elements: &[i64], blocks: &mut Vec<Vec<i64>>, out: &mut Vec<SetPartition>, ground: Ground) {
        if idx == elements.len() {
            out.push(SetPartition::new(ground, blocks.clone()));
            return;
        }
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(vec![elements[idx]]);
            } else {
                blocks[b].push(elements[idx]);
            }
            go(idx + 1, elements, blocks, out, ground);
            if b == blocks.len() - 1 && blocks[b].len() == 1 {
                blocks.pop();
            } else {
                blocks[b].pop();
            }
        }
    }
    go(0, &elements, &mut blocks, &mut out, ground);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NcKind {
    /// Noncrossing partitions of [n].
    A,
    /// Noncrossing partitions of [kn] with all block sizes divisible by k.
    KDivisible(u32),
    /// Sign-invariant noncrossing partitions of the signed set.
    B,
}

/// Enumerate the noncrossing family, in the set-partition generation order.
pub fn enumerate_nc(n: u32, kind: NcKind) -> Vec<SetPartition> {
    assert!(n >= 1);
    match kind {
        NcKind::A => enumerate_set_partitions(Ground::Positive(n))
            .into_iter()
            .filter(SetPartition::is_noncrossing)
            .collect(),
        NcKind::KDivisible(k) => {
            assert!(k >= 1);
            enumerate_set_partitions(Ground::Positive(k * n))
                .into_iter()
                .filter(|p| {
                    p.is_noncrossing()
                        && p.blocks().iter().all(|b| b.len() % k as usize == 0)
                })
                .collect()
        }
        NcKind::B => enumerate_set_partitions(Ground::Signed(n))
            .into_iter()
            .filter(|p| p.is_sign_invariant() && p.is_noncrossing())
            .collect(),
    }
}

/// A strictly increasing chain in the refinement order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NCChain {
    steps: Vec<SetPartition>,
}

impl NCChain {
    pub fn new(steps: Vec<SetPartition>) -> Self {
        assert!(!steps.is_empty());
        for w in steps.windows(2) {
            assert!(
                w[0].refines(&w[1]).expect("same ground") && w[0] != w[1],
                "chain must strictly increase"
            );
        }
        NCChain { steps }
    }

    pub fn steps(&self) -> &[SetPartition] {
        &self.steps
    }

    /// Ranks of the interior elements (positive grounds).
    pub fn interior_rank_set(&self) -> Vec<u32> {
        self.steps[1..self.steps.len() - 1]
            .iter()
            .map(SetPartition::rank)
            .collect()
    }
}

/// The lattice as an explicit element list with comparability and covers.
struct Poset {
    elems: Vec<SetPartition>,
    less: Vec<Vec<bool>>,
    covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl Poset {
    fn build(elems: Vec<SetPartition>) -> Poset {
        let v = elems.len();
        let mut less = vec![vec![false; v]; v];
        for i in 0..v {
            for j in 0..v {
                if i != j
                    && elems[i].refines(&elems[j]).expect("one ground")
                    && elems[i] != elems[j]
                {
                    less[i][j] = true;
                }
            }
        }
        let mut covers = vec![Vec::new(); v];
        for i in 0..v {
            for j in 0..v {
                if less[i][j] && !(0..v).any(|t| less[i][t] && less[t][j]) {
                    covers[i].push(j);
                }
            }
        }
        let bottom = (0..v).position(|i| !(0..v).any(|j| less[j][i])).expect("bottom");
        let top = (0..v).position(|i| !(0..v).any(|j| less[i][j])).expect("top");
        Poset {
            elems,
            less,
            covers,
            bottom,
            top,
        }
    }

    /// Number of saturated chains from bottom to top.
    fn maximal_chain_count(&self) -> u64 {
        let mut ways = vec![0u64; self.elems.len()];
        // Process in an order where successors are done first: repeated
        // passes suffice at this scale, but a reverse topological order by
        // out-degree of `less` is direct: sort by number of elements above.
        let mut order: Vec<usize> = (0..self.elems.len()).collect();
        order.sort_by_key(|&i| self.less[i].iter().filter(|&&b| b).count());
        for &i in &order {
            if i == self.top {
                ways[i] = 1;
            } else {
                ways[i] = self.covers[i].iter().map(|&j| ways[j]).sum();
            }
        }
        ways[self.bottom]
    }

    fn maximal_chain_list(&self) -> Vec<NCChain> {
        let mut out = Vec::new();
        let mut current = vec![self.bottom];
        fn go(poset: &Poset, current: &mut Vec<usize>, out: &mut Vec<NCChain>) {
            let last = *current.last().expect("nonempty");
            if last == poset.top {
                out.push(NCChain::new(
                    current.iter().map(|&i| poset.elems[i].clone()).collect(),
                ));
                return;
            }
            for &j in &poset.covers[last] {
                current.push(j);
                go(poset, current, out);
                current.pop();
            }
        }
        go(self, &mut current, &mut out);
        out
    }
}

fn nc_poset(n: u32, kind: NcKind) -> Poset {
    Poset::build(enumerate_nc(n, kind))
}

/// Count of maximal chains of the type A or type B lattice.
pub fn maximal_chain_count(n: u32, kind: NcKind) -> u64 {
    assert!(!matches!(kind, NcKind::KDivisible(_)));
    nc_poset(n, kind).maximal_chain_count()
}

/// The maximal chains themselves (desk scale only).
pub fn maximal_chain_list(n: u32, kind: NcKind) -> Vec<NCChain> {
    assert!(!matches!(kind, NcKind::KDivisible(_)));
    nc_poset(n, kind).maximal_chain_list()
}

/// Chain counts of the lattice on [n+1] by interior rank set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagVectors {
    n: u32,
    alpha: BTreeMap<Vec<u32>, u64>,
    beta: BTreeMap<Vec<u32>, u64>,
}

impl FlagVectors {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Chains with interior rank set exactly `s`.
    pub fn alpha(&self, s: &[u32]) -> u64 {
        self.alpha[s]
    }

    /// Alternating-sum transform of alpha over subsets.
    pub fn beta(&self, s: &[u32]) -> u64 {
        self.beta[s]
    }

    /// Subsets of [n-1] with their values, by subset bitmask.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &u64, &u64)> {
        self.subsets().map(move |s| {
            let (k, a) = self.alpha.get_key_value(&s).expect("all subsets present");
            (k, a, &self.beta[&s])
        })
    }

    fn subsets(&self) -> impl Iterator<Item = Vec<u32>> {
        let n = self.n;
        (0u32..(1 << (n - 1))).map(move |mask| {
            (1..n).filter(|r| mask >> (r - 1) & 1 == 1).collect()
        })
    }
}

fn subset_from_mask(mask: u32, n: u32) -> Vec<u32> {
    (1..n).filter(|r| mask >> (r - 1) & 1 == 1).collect()
}

/// Flag f- and h-vectors of the noncrossing lattice on [n+1]: alpha(S)
/// counts bottom-to-top chains whose interior ranks form exactly S, and
/// beta(S) is the inclusion-exclusion transform over subsets T of S.
pub fn flag_vectors(n: u32) -> FlagVectors {
    assert!(n >= 1);
    let poset = nc_poset(n + 1, NcKind::A);
    let v = poset.elems.len();
    let mut by_rank: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for i in 0..v {
        by_rank.entry(poset.elems[i].rank()).or_default().push(i);
    }

    let mut alpha = BTreeMap::new();
    for mask in 0u32..(1 << (n - 1)) {
        let s = subset_from_mask(mask, n);
        // Count chains layer by layer through the ranks in s.
        let mut current: Vec<(usize, u64)> = vec![(poset.bottom, 1)];
        for &r in &s {
            let mut next: Vec<(usize, u64)> = Vec::new();
            for &j in &by_rank[&r] {
                let total: u64 = current
                    .iter()
                    .filter(|(i, _)| poset.less[*i][j])
                    .map(|(_, w)| w)
                    .sum();
                if total > 0 {
                    next.push((j, total));
                }
            }
            current = next;
        }
        let count: u64 = current
            .iter()
            .filter(|(i, _)| poset.less[*i][poset.top])
            .map(|(_, w)| w)
            .sum();
        alpha.insert(s, count);
    }

    let mut beta = BTreeMap::new();
    for mask in 0u32..(1 << (n - 1)) {
        let s = subset_from_mask(mask, n);
        let mut value: i64 = 0;
        let mut sub = mask;
        loop {
            let t = subset_from_mask(sub, n);
            let sign = if (s.len() - t.len()) % 2 == 0 { 1 } else { -1 };
            value += sign * alpha[&t] as i64;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        assert!(value >= 0, "flag h-entries of these lattices are nonnegative");
        beta.insert(s, value as u64);
    }

    FlagVectors { n, alpha, beta }
}

/// Gessel's quasisymmetric function Q_S in m variables: the sum over
/// weakly increasing words i_1 <= ... <= i_n from [m], strict at the
/// positions in S.
pub fn gessel_q(s: &[u32], n: u32, m: usize) -> GradedPoly {
    assert!(s.iter().all(|&r| r >= 1 && r < n.max(1)), "S lies inside [n-1]");
    let mut acc = GradedPoly::zero();
    let mut exps = vec![0u32; m];
    fn go(
        pos: u32,
        lo: usize,
        n: u32,
        s: &[u32],
        exps: &mut Vec<u32>,
        acc: &mut GradedPoly,
    ) {
        if pos == n {
            *acc = &*acc
                + &GradedPoly::monomial(
                    Family::Vars,
                    Monomial::from_exponents(exps.clone()),
                    Rational::one(),
                );
            return;
        }
        for v in lo..exps.len() {
            exps[v] += 1;
            // Position pos (1-based) demands strict growth when in S.
            let next_lo = if s.contains(&(pos + 1)) { v + 1 } else { v };
            go(pos + 1, next_lo, n, s, exps, acc);
            exps[v] -= 1;
        }
    }
    go(0, 0, n, s, &mut exps, &mut acc);
    acc
}

/// The chain symmetric function of the lattice on [n+1]: the beta-weighted
/// sum of Gessel functions, expanded in n variables, certified symmetric,
/// and identified in the h-basis.
pub fn chain_symfunc(n: u32) -> Result<SymFunc> {
    let flags = flag_vectors(n);
    let mut acc = GradedPoly::zero();
    for (s, _, beta) in flags.entries() {
        if *beta == 0 {
            continue;
        }
        let q = gessel_q(s, n, n as usize);
        acc = &acc + &q.scale(&Rational::from(*beta as i64));
    }
    identify_symmetric(&acc, n as usize)
}
