//! Noncrossing partitions, the block-size-restricted families `NC_s(k)`, and
//! the color-balanced families used for the hyperoctahedral moment formula.
//!
//! Points are labelled `1..=m`. Enumeration follows the first-block
//! decomposition: the block containing the smallest point of a region splits
//! the rest of the region into independent gaps, each partitioned on its own.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{binomial, integer, Rational, Scalar};

/// Default maximum number of ground points for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 14;

/// A set partition of `{1, ..., m}` in canonical form: blocks sorted by their
/// minimum, elements ascending within each block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes.
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > ground_size {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} outside 1..={ground_size}"
                    )));
                }
                if seen[e] {
                    return Err(Error::InvalidPartition(format!("element {e} repeated")));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = (1..=ground_size).find(|&e| !seen[e]) {
            return Err(Error::InvalidPartition(format!("element {missing} not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { ground_size, blocks })
    }

    /// Assumes canonical, valid input.
    fn from_canonical_blocks(ground_size: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { ground_size, blocks }
    }

    pub fn singletons(ground_size: usize) -> Self {
        Self {
            ground_size,
            blocks: (1..=ground_size).map(|e| vec![e]).collect(),
        }
    }

    pub fn single_block(ground_size: usize) -> Self {
        if ground_size == 0 {
            return Self::empty();
        }
        Self {
            ground_size,
            blocks: vec![(1..=ground_size).collect()],
        }
    }

    /// The unique partition of the empty set.
    pub fn empty() -> Self {
        Self {
            ground_size: 0,
            blocks: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every element, indexed by `element - 1`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground_size];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = i;
            }
        }
        labels
    }

    /// No `a < x < b < y` with `a ~ b`, `x ~ y` and `a !~ x`.
    pub fn is_noncrossing(&self) -> bool {
        let labels = self.labels();
        let m = self.ground_size;
        for a in 0..m {
            for x in a + 1..m {
                if labels[x] == labels[a] {
                    continue;
                }
                for b in x + 1..m {
                    if labels[b] != labels[a] {
                        continue;
                    }
                    if (b + 1..m).any(|y| labels[y] == labels[x]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let elems: Vec<String> = block.iter().map(|e| e.to_string()).collect();
            write!(f, "{{{}}}", elems.join(","))?;
        }
        write!(f, "}}")
    }
}

/// A letter of a colored word: `U` or its conjugate `Ū`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    U,
    Ubar,
}

/// A word over `{U, Ū}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ColoredWord(pub Vec<Color>);

impl ColoredWord {
    pub fn new(letters: Vec<Color>) -> Self {
        Self(letters)
    }

    /// `U^k`.
    pub fn uniform(k: usize) -> Self {
        Self(vec![Color::U; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Color] {
        &self.0
    }

    /// Counts `(#U, #Ū)` over the given 1-based positions.
    fn count(&self, positions: &[usize]) -> (usize, usize) {
        positions.iter().fold((0, 0), |(u, ub), &p| match self.0[p - 1] {
            Color::U => (u + 1, ub),
            Color::Ubar => (u, ub + 1),
        })
    }

    /// `#U ≡ #Ū (mod s)` over the given positions.
    pub fn is_balanced_on(&self, s: usize, positions: &[usize]) -> bool {
        let (u, ub) = self.count(positions);
        (u as i64 - ub as i64).rem_euclid(s as i64) == 0
    }
}

impl FromStr for ColoredWord {
    type Err = Error;

    /// Accepts `U`/`1` for `U` and `u`/`*`/`Ū`/`B` for `Ū`; whitespace and
    /// commas are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for c in s.chars() {
            match c {
                'U' | '1' => letters.push(Color::U),
                'u' | '*' | 'Ū' | 'B' | 'b' => letters.push(Color::Ubar),
                ' ' | ',' => {}
                '\u{0304}' => {
                    // Combining macron: turn the previous U into Ū.
                    match letters.last_mut() {
                        Some(last @ Color::U) => *last = Color::Ubar,
                        _ => return Err(Error::Parse(format!("stray macron in word {s:?}"))),
                    }
                }
                other => return Err(Error::Parse(format!("unexpected letter {other:?} in word"))),
            }
        }
        Ok(Self(letters))
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            match c {
                Color::U => write!(f, "U")?,
                Color::Ubar => write!(f, "Ū")?,
            }
        }
        Ok(())
    }
}

/// Which blocks an enumeration admits. Every rule is additive: a disjoint
/// union of admissible blocks is admissible, so a gap that fails the rule
/// cannot be partitioned and is pruned.
#[derive(Debug, Clone, Copy)]
enum BlockRule<'a> {
    SizeMultiple(usize),
    Balanced { s: usize, word: &'a ColoredWord },
}

impl BlockRule<'_> {
    fn admits(&self, elements: &[usize]) -> bool {
        match self {
            BlockRule::SizeMultiple(s) => elements.len() % s == 0,
            BlockRule::Balanced { s, word } => word.is_balanced_on(*s, elements),
        }
    }
}

/// Calls `visit` on every noncrossing partition of `{1..m}` whose blocks all
/// satisfy `rule`. Blocks are handed over in discovery order (not canonical).
fn visit_noncrossing(m: usize, rule: BlockRule<'_>, visit: &mut dyn FnMut(&[Vec<usize>])) {
    let mut pending = vec![(1, m + 1)];
    let mut blocks = Vec::new();
    visit_regions(&mut pending, &mut blocks, rule, visit);
}

fn visit_regions(
    pending: &mut Vec<(usize, usize)>,
    blocks: &mut Vec<Vec<usize>>,
    rule: BlockRule<'_>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    let Some((lo, hi)) = pending.pop() else {
        visit(blocks);
        return;
    };
    if lo == hi {
        visit_regions(pending, blocks, rule, visit);
        pending.push((lo, hi));
        return;
    }
    let rest = hi - lo - 1;
    // Subsets of (lo, hi) joined to lo form the first block.
    'subsets: for mask in 0u64..(1u64 << rest) {
        let mut block = Vec::with_capacity(mask.count_ones() as usize + 1);
        block.push(lo);
        block.extend((0..rest).filter(|i| mask >> i & 1 == 1).map(|i| lo + 1 + i));
        if !rule.admits(&block) {
            continue;
        }
        let mut gaps = Vec::with_capacity(block.len());
        for w in block.windows(2) {
            if w[1] > w[0] + 1 {
                gaps.push((w[0] + 1, w[1]));
            }
        }
        let last = *block.last().unwrap();
        if last + 1 < hi {
            gaps.push((last + 1, hi));
        }
        for &(a, b) in &gaps {
            let gap: Vec<usize> = (a..b).collect();
            if !rule.admits(&gap) {
                continue 'subsets;
            }
        }
        let depth = pending.len();
        pending.extend(gaps.iter().copied());
        blocks.push(block);
        visit_regions(pending, blocks, rule, visit);
        blocks.pop();
        pending.truncate(depth);
    }
    pending.push((lo, hi));
}

fn check_bound(points: usize, bound: usize) -> Result<()> {
    if points > bound {
        Err(Error::BoundExceeded {
            requested: points,
            limit: bound,
        })
    } else {
        Ok(())
    }
}

/// `NC_s(k)`: noncrossing partitions of `{1..sk}` with every block size a
/// multiple of `s`, under the default bound.
pub fn enumerate_nc_s(s: usize, k: usize) -> Result<Vec<SetPartition>> {
    enumerate_nc_s_bounded(s, k, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_nc_s_bounded(s: usize, k: usize, bound: usize) -> Result<Vec<SetPartition>> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let m = s * k;
    check_bound(m, bound)?;
    let mut out = Vec::new();
    visit_noncrossing(m, BlockRule::SizeMultiple(s), &mut |blocks| {
        out.push(SetPartition::from_canonical_blocks(m, blocks.to_vec()));
    });
    out.sort();
    Ok(out)
}

/// All noncrossing partitions of `{1..m}`.
pub fn enumerate_noncrossing(m: usize) -> Result<Vec<SetPartition>> {
    enumerate_nc_s(1, m)
}

/// Block-count histogram of `NC_s(k)`: entry `b` counts partitions with `b`
/// blocks. Does not materialize the partitions.
pub fn nc_s_block_histogram(s: usize, k: usize, bound: usize) -> Result<Vec<u64>> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    check_bound(s * k, bound)?;
    let mut hist = vec![0u64; k + 1];
    visit_noncrossing(s * k, BlockRule::SizeMultiple(s), &mut |blocks| {
        hist[blocks.len()] += 1;
    });
    Ok(hist)
}

/// `P_h^s(a)`: noncrossing partitions of the positions of `word` in which
/// every block has as many `U` as `Ū` modulo `s`.
pub fn enumerate_balanced(s: usize, word: &ColoredWord) -> Result<Vec<SetPartition>> {
    enumerate_balanced_bounded(s, word, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_balanced_bounded(
    s: usize,
    word: &ColoredWord,
    bound: usize,
) -> Result<Vec<SetPartition>> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let m = word.len();
    check_bound(m, bound)?;
    let mut out = Vec::new();
    visit_noncrossing(m, BlockRule::Balanced { s, word }, &mut |blocks| {
        out.push(SetPartition::from_canonical_blocks(m, blocks.to_vec()));
    });
    out.sort();
    Ok(out)
}

/// `Σ_{p ∈ P_h^s(a)} t^{|p|}`.
pub fn star_moment<T: Scalar>(s: usize, t: &T, word: &ColoredWord) -> Result<T> {
    let parts = enumerate_balanced(s, word)?;
    Ok(parts.iter().fold(T::zero(), |acc, p| {
        acc + num_traits::pow(t.clone(), p.num_blocks())
    }))
}

/// Fuss-Catalan number `(1/(sk+1)) binom(sk+k, k)`, computed through the
/// product form `(sk+2)(sk+3)...(sk+k)/k!` so it is defined for every `s`.
pub fn fuss_catalan<T: Scalar>(s: &T, k: usize) -> T {
    if k == 0 {
        return T::one();
    }
    let sk = s.clone() * <T as Scalar>::from_i64(k as i64);
    let mut acc = T::one();
    for j in 2..=k {
        acc = acc * (sk.clone() + <T as Scalar>::from_i64(j as i64));
    }
    for j in 1..=k {
        acc = acc / <T as Scalar>::from_i64(j as i64);
    }
    acc
}

/// Coefficient of `t^b` in the Fuss-Narayana polynomial:
/// `(1/b) binom(k-1, b-1) binom(sk, b-1)`.
pub fn fuss_narayana_coefficient<T: Scalar>(s: &T, k: usize, b: usize) -> T {
    if b == 0 || b > k {
        return T::zero();
    }
    let sk = s.clone() * <T as Scalar>::from_i64(k as i64);
    binomial(&<T as Scalar>::from_i64(k as i64 - 1), b - 1) * binomial(&sk, b - 1)
        / <T as Scalar>::from_i64(b as i64)
}

/// Fuss-Narayana polynomial in `t` for integer `s`.
pub fn fuss_narayana_poly(s: usize, k: usize) -> Polynomial<Rational> {
    let s = integer(s as i64);
    Polynomial::new(
        (0..=k)
            .map(|b| fuss_narayana_coefficient(&s, k, b))
            .collect(),
    )
}

/// Lattice join: the finest partition coarser than both (union-find closure).
pub fn join(p: &SetPartition, q: &SetPartition) -> Result<SetPartition> {
    if p.ground_size != q.ground_size {
        return Err(Error::GroundSizeMismatch {
            left: p.ground_size,
            right: q.ground_size,
        });
    }
    let m = p.ground_size;
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for block in p.blocks.iter().chain(q.blocks.iter()) {
        let root = find(&mut parent, block[0] - 1);
        for &e in &block[1..] {
            let r = find(&mut parent, e - 1);
            if r != root {
                parent[r] = root;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in 0..m {
        let r = find(&mut parent, e);
        groups.entry(r).or_default().push(e + 1);
    }
    Ok(SetPartition::from_canonical_blocks(m, groups.into_values().collect()))
}

/// Number of blocks of `p ∨ q`.
pub fn join_block_count(p: &SetPartition, q: &SetPartition) -> Result<usize> {
    join(p, q).map(|j| j.num_blocks())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn part(m: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(m, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(!part(4, &[&[1, 3], &[2, 4]]).is_noncrossing());
        assert!(part(4, &[&[1, 4], &[2, 3]]).is_noncrossing());
        assert!(part(4, &[&[1, 2, 3, 4]]).is_noncrossing());
    }

    #[test]
    fn rejects_invalid_partitions() {
        assert!(SetPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(SetPartition::new(2, vec![vec![1, 2], vec![]]).is_err());
        assert!(SetPartition::new(2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn canonical_form() {
        let p = part(4, &[&[4, 2], &[3, 1]]);
        assert_eq!(p.blocks(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(p.to_string(), "{{1,3},{2,4}}");
    }

    #[test]
    fn table_counts() {
        assert_eq!(enumerate_nc_s(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_nc_s(3, 4).unwrap().len(), 140);
        assert_eq!(enumerate_nc_s(1, 3).unwrap().len(), 5);
        let empty = enumerate_nc_s(3, 0).unwrap();
        assert_eq!(empty, vec![SetPartition::empty()]);
    }

    #[test]
    fn bound_is_enforced() {
        let err = enumerate_nc_s(3, 5).unwrap_err();
        assert_eq!(err, Error::BoundExceeded { requested: 15, limit: 14 });
        assert_eq!(enumerate_nc_s_bounded(1, 5, 4).unwrap_err(), Error::BoundExceeded { requested: 5, limit: 4 });
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(fuss_catalan(&integer(2), 3), integer(12));
        assert_eq!(fuss_catalan(&integer(1), 4), integer(14));
        assert_eq!(fuss_catalan(&ratio(1, 2), 2), ratio(3, 2));
        assert_eq!(fuss_catalan(&integer(5), 0), integer(1));
        assert!((fuss_catalan(&2.0f64, 4) - 55.0).abs() < 1e-12);
    }

    #[test]
    fn fuss_narayana_small() {
        let t = |c: Vec<i64>| Polynomial::new(c.into_iter().map(integer).collect());
        assert_eq!(fuss_narayana_poly(1, 2), t(vec![0, 1, 1]));
        assert_eq!(fuss_narayana_poly(2, 2), t(vec![0, 1, 2]));
        for s in 1..5 {
            assert_eq!(fuss_narayana_poly(s, 1), t(vec![0, 1]));
        }
    }

    #[test]
    fn balanced_examples() {
        let w: ColoredWord = "UŪ".parse().unwrap();
        assert_eq!(enumerate_balanced(2, &w).unwrap(), vec![part(2, &[&[1, 2]])]);

        let w: ColoredWord = "UUŪŪ".parse().unwrap();
        let got = enumerate_balanced(2, &w).unwrap();
        let mut want = vec![
            part(4, &[&[1, 2, 3, 4]]),
            part(4, &[&[1, 2], &[3, 4]]),
            part(4, &[&[1, 4], &[2, 3]]),
        ];
        want.sort();
        assert_eq!(got, want);

        let w: ColoredWord = "UuUuU".parse().unwrap();
        assert_eq!(enumerate_balanced(1, &w).unwrap().len(), 42);
    }

    #[test]
    fn star_moment_examples() {
        let t = ratio(2, 7);
        let w: ColoredWord = "UŪ".parse().unwrap();
        assert_eq!(star_moment(2, &t, &w).unwrap(), t.clone());
        let w: ColoredWord = "UUŪŪ".parse().unwrap();
        assert_eq!(
            star_moment(2, &t, &w).unwrap(),
            t.clone() + integer(2) * t.clone() * t.clone()
        );
        assert_eq!(star_moment(1, &integer(1), &ColoredWord::uniform(3)).unwrap(), integer(5));
        assert_eq!(star_moment(3, &t, &ColoredWord::default()).unwrap(), integer(1));
    }

    #[test]
    fn join_examples() {
        let p = part(4, &[&[1, 2], &[3, 4]]);
        let q = part(4, &[&[2, 3], &[1], &[4]]);
        assert_eq!(join(&p, &q).unwrap(), part(4, &[&[1, 2, 3, 4]]));
        assert_eq!(join(&p, &p).unwrap(), p);
        assert_eq!(join(&SetPartition::singletons(4), &q).unwrap(), q);
        assert!(matches!(
            join(&p, &SetPartition::singletons(3)),
            Err(Error::GroundSizeMismatch { .. })
        ));
    }

    #[test]
    fn word_parsing() {
        let w: ColoredWord = "U*u1".parse().unwrap();
        assert_eq!(w.letters(), &[Color::U, Color::Ubar, Color::Ubar, Color::U]);
        let w: ColoredWord = "UU\u{0304}".parse().unwrap();
        assert_eq!(w.letters(), &[Color::U, Color::Ubar]);
        assert_eq!(w.to_string(), "UŪ");
        assert!("UX".parse::<ColoredWord>().is_err());
    }
}
