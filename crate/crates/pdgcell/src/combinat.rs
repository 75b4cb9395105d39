//! Index combinatorics: 0/1 multipartitions, permutations, tableaux in their two
//! partial orders, multi-standard tableaux and decompositions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An `l`-tuple of 0/1 entries summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    entries: Vec<u8>,
    boxes: Vec<usize>,
}

impl Multipartition {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::Malformed(format!("entries must be 0/1: {entries:?}")));
        }
        let boxes = entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(i, _)| i + 1)
            .collect();
        Ok(Self { entries, boxes })
    }

    /// Partition with boxes at the given 1-based positions.
    pub fn from_boxes(l: usize, boxes: &[usize]) -> Result<Self> {
        let mut entries = vec![0u8; l];
        for &j in boxes {
            if j == 0 || j > l || entries[j - 1] == 1 {
                return Err(Error::Malformed(format!("bad box positions {boxes:?} for l={l}")));
            }
            entries[j - 1] = 1;
        }
        Self::new(entries)
    }

    pub fn n(&self) -> usize {
        self.boxes.len()
    }

    pub fn l(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Box positions `j_1 < ... < j_n`, 1-based.
    pub fn boxes(&self) -> &[usize] {
        &self.boxes
    }

    /// Exponents `l - j_k` of the staircase generator `y^lambda`.
    pub fn y_exponents(&self) -> Vec<usize> {
        self.boxes.iter().map(|j| self.l() - j).collect()
    }

    /// Grading shift `-nl + j_1 + ... + j_n` of the cyclic module `G(lambda)`.
    pub fn shift(&self) -> i64 {
        -((self.n() * self.l()) as i64) + self.boxes.iter().sum::<usize>() as i64
    }

    /// The decomposition with `b_j = lambda^j`.
    pub fn to_decomposition(&self) -> Decomposition {
        Decomposition::new(self.entries.iter().map(|&e| e as usize).collect())
    }

    fn prefix_sums(&self) -> Vec<usize> {
        self.entries
            .iter()
            .scan(0usize, |acc, &e| {
                *acc += e as usize;
                Some(*acc)
            })
            .collect()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Multipartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Malformed(format!("partition string {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(entries)
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Result of comparing two partitions in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

fn check_params(n: usize, l: usize) -> Result<()> {
    if n > l {
        return Err(Error::InvalidParameters { n, l, reason: "need n <= l".into() });
    }
    Ok(())
}

/// All `C(l, n)` partitions, in decreasing lexicographic order of entries.
///
/// Lexicographic order refines dominance, so the first element is the maximum.
pub fn enumerate_partitions(n: usize, l: usize) -> Result<Vec<Multipartition>> {
    check_params(n, l)?;
    let mut out = Vec::new();
    fn rec(l: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Multipartition>) {
        if cur.len() == l {
            if left == 0 {
                out.push(Multipartition::new(cur.clone()).expect("0/1 entries"));
            }
            return;
        }
        if l - cur.len() < left {
            return;
        }
        for e in [1u8, 0] {
            if e == 1 && left == 0 {
                continue;
            }
            cur.push(e);
            rec(l, left - e as usize, cur, out);
            cur.pop();
        }
    }
    rec(l, n, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn dominance_compare(a: &Multipartition, b: &Multipartition) -> Result<Dominance> {
    if a.n() != b.n() || a.l() != b.l() {
        return Err(Error::ShapeMismatch(format!("{a} vs {b}")));
    }
    let (pa, pb) = (a.prefix_sums(), b.prefix_sums());
    let ge = pa.iter().zip(&pb).all(|(x, y)| x >= y);
    let le = pa.iter().zip(&pb).all(|(x, y)| x <= y);
    Ok(match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Greater,
        (false, true) => Dominance::Less,
        (false, false) => Dominance::Incomparable,
    })
}

/// `a >= b` in dominance.
pub fn dominates(a: &Multipartition, b: &Multipartition) -> bool {
    matches!(dominance_compare(a, b), Ok(Dominance::Greater | Dominance::Equal))
}

/// `a > b` in dominance.
pub fn strictly_dominates(a: &Multipartition, b: &Multipartition) -> bool {
    matches!(dominance_compare(a, b), Ok(Dominance::Greater))
}

/// Permutation of `{0, .., n-1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Malformed(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Simple transposition `s_i` swapping `i-1` and `i` (generators are 1-based).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, i);
        Self(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| v[i] > v[j])
            .count()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        Self(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Lexicographically minimal reduced word `(i_1, .., i_k)` with
    /// `w = s_{i_1} ∘ ... ∘ s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        while !w.is_identity() {
            let inv = w.inverse();
            // s_i is a left descent iff i+1 appears before i in one-line notation
            let i = (1..w.n()).find(|&i| inv.0[i - 1] > inv.0[i]).expect("descent exists");
            word.push(i);
            w = Perm::simple(w.n(), i).compose(&w);
        }
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::simple(n, i)))
    }

    /// Longest element of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self((0..n).rev().collect())
    }

    /// All permutations in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// A filling of the boxes of `shape` by `1..=n`.
///
/// `word` sends `k-1` to the rank (among the boxes of `shape`, left to right) of the
/// box containing `k`; it is the identity exactly for the standard tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Multipartition,
    word: Perm,
}

impl Tableau {
    pub fn new(shape: Multipartition, word: Perm) -> Result<Self> {
        if shape.n() != word.n() {
            return Err(Error::ShapeMismatch(format!("{shape} with {word}")));
        }
        Ok(Self { shape, word })
    }

    pub fn standard(shape: &Multipartition) -> Self {
        Self { shape: shape.clone(), word: Perm::identity(shape.n()) }
    }

    /// Tableau whose `r`-th box (left to right) contains `contents[r]` (1-based entries).
    pub fn from_contents(shape: &Multipartition, contents: &[usize]) -> Result<Self> {
        let perm = Perm::new(contents.iter().map(|c| c.wrapping_sub(1)).collect())?;
        Self::new(shape.clone(), perm.inverse())
    }

    /// All `n!` tableaux of the given shape.
    pub fn all(shape: &Multipartition) -> Vec<Tableau> {
        Perm::all(shape.n())
            .into_iter()
            .map(|w| Tableau { shape: shape.clone(), word: w })
            .collect()
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    /// The permutation `w_t` in position convention.
    pub fn word(&self) -> &Perm {
        &self.word
    }

    /// The permutation reading entries box by box: `r -> (entry in box r) - 1`.
    pub fn entry_perm(&self) -> Perm {
        self.word.inverse()
    }

    /// Box contents left to right, 1-based.
    pub fn contents(&self) -> Vec<usize> {
        self.word.inverse().0.iter().map(|x| x + 1).collect()
    }

    /// Column (1-based position in the `l`-tuple) of the box holding entry `k` (1-based).
    pub fn column(&self, k: usize) -> usize {
        self.shape.boxes[self.word.0[k - 1]]
    }

    /// `self >= other`: at every entry `k`, `k` sits weakly left in `self`.
    pub fn ge(&self, other: &Tableau) -> bool {
        self.shape.n() == other.shape.n()
            && (1..=self.shape.n()).all(|k| self.column(k) <= other.column(k))
    }

    /// `nl - (j_1 + .. + j_n) - 2 l(w_t)`.
    pub fn degree(&self) -> i64 {
        -self.shape.shift() - 2 * self.word.length() as i64
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let contents = self.contents();
        let mut parts = Vec::new();
        let mut r = 0;
        for &e in self.shape.entries() {
            if e == 1 {
                parts.push(contents[r].to_string());
                r += 1;
            } else {
                parts.push("-".into());
            }
        }
        write!(f, "({})", parts.join(","))
    }
}

/// `Tab^lambda(mu)`: tableaux of shape `mu` with `t >= t^lambda`.
pub fn tab_upper(lambda: &Multipartition, mu: &Multipartition) -> Vec<Tableau> {
    let std = Tableau::standard(lambda);
    Tableau::all(mu).into_iter().filter(|t| t.ge(&std)).collect()
}

/// `Tab_lambda(mu)`: tableaux of shape `mu` with `t^lambda >= t`.
pub fn tab_lower(lambda: &Multipartition, mu: &Multipartition) -> Vec<Tableau> {
    let std = Tableau::standard(lambda);
    Tableau::all(mu).into_iter().filter(|t| std.ge(t)).collect()
}

/// `(Tab^mu(lambda), Tab_lambda(mu))`.
pub fn tableau_sets(
    lambda: &Multipartition,
    mu: &Multipartition,
) -> Result<(Vec<Tableau>, Vec<Tableau>)> {
    if lambda.n() != mu.n() || lambda.l() != mu.l() {
        return Err(Error::ShapeMismatch(format!("{lambda} vs {mu}")));
    }
    Ok((tab_upper(mu, lambda), tab_lower(lambda, mu)))
}

/// `T_lambda`: the disjoint union of `Tab_lambda(mu)` over all `mu`, in partition order.
pub fn t_lower(lambda: &Multipartition) -> Vec<Tableau> {
    enumerate_partitions(lambda.n(), lambda.l())
        .expect("valid shape")
        .iter()
        .flat_map(|mu| tab_lower(lambda, mu))
        .collect()
}

/// `T^lambda`: the disjoint union of `Tab^lambda(mu)` over all `mu`.
pub fn t_upper(lambda: &Multipartition) -> Vec<Tableau> {
    enumerate_partitions(lambda.n(), lambda.l())
        .expect("valid shape")
        .iter()
        .flat_map(|mu| tab_upper(lambda, mu))
        .collect()
}

/// Permissible permutations `w_t` for `t` in `Tab_beta(alpha)`.
pub fn permissible_permutations(alpha: &Multipartition, beta: &Multipartition) -> Result<Vec<Perm>> {
    let (_, lower) = tableau_sets(beta, alpha)?;
    let mut out: Vec<Perm> = lower.into_iter().map(|t| t.word).collect();
    out.sort();
    Ok(out)
}

/// Decomposition of `n` into an `l`-tuple of nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    parts: Vec<usize>,
}

impl Decomposition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn l(&self) -> usize {
        self.parts.len()
    }

    /// The idempotent `eps(b)` is nonzero iff `b_1 + .. + b_k <= k` for every `k`.
    pub fn is_nonzero(&self) -> bool {
        let mut acc = 0;
        self.parts.iter().enumerate().all(|(k, &b)| {
            acc += b;
            acc <= k + 1
        })
    }

    /// Staircase exponents of `y^b`: strands in group `k` carry `l - k`.
    pub fn y_exponents(&self) -> Vec<usize> {
        let l = self.l();
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(k, &b)| std::iter::repeat_n(l - k - 1, b))
            .collect()
    }

    /// Strand ranges `(start, size)` of each group, 0-based starts.
    pub fn groups(&self) -> Vec<(usize, usize)> {
        let mut start = 0;
        self.parts
            .iter()
            .map(|&b| {
                let g = (start, b);
                start += b;
                g
            })
            .collect()
    }

    pub fn as_partition(&self) -> Option<Multipartition> {
        if self.parts.iter().all(|&b| b <= 1) {
            Multipartition::new(self.parts.iter().map(|&b| b as u8).collect()).ok()
        } else {
            None
        }
    }

    /// Grading shift generalizing `-nl + sum j_k`: half the negated degree of `y^b`.
    pub fn shift(&self) -> i64 {
        -(self.y_exponents().iter().sum::<usize>() as i64)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

pub fn idempotent_nonzero(b: &Decomposition) -> bool {
    b.is_nonzero()
}

/// All decompositions of `n` into `l` parts, in decreasing lexicographic order.
pub fn enumerate_decompositions(n: usize, l: usize) -> Vec<Decomposition> {
    let mut out = Vec::new();
    fn rec(l: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Decomposition>) {
        if cur.len() + 1 == l {
            cur.push(left);
            out.push(Decomposition::new(cur.clone()));
            cur.pop();
            return;
        }
        for b in (0..=left).rev() {
            cur.push(b);
            rec(l, left - b, cur, out);
            cur.pop();
        }
    }
    if l == 0 {
        if n == 0 {
            out.push(Decomposition::new(Vec::new()));
        }
        return out;
    }
    rec(l, n, &mut Vec::new(), &mut out);
    out
}

pub fn nonzero_decompositions(n: usize, l: usize) -> Vec<Decomposition> {
    enumerate_decompositions(n, l).into_iter().filter(|b| b.is_nonzero()).collect()
}

/// Letter `a_i`: the `a`-th letter (1-based) of the `i`-th alphabet (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub alphabet: usize,
    pub index: usize,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.index, self.alphabet)
    }
}

/// A multi-standard tableau: one letter per box of `shape`, listed by box rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiTableau {
    shape: Multipartition,
    letters: Vec<Letter>,
}

impl MultiTableau {
    pub fn new(shape: Multipartition, letters: Vec<Letter>) -> Result<Self> {
        if letters.len() != shape.n() {
            return Err(Error::ShapeMismatch(format!("{} letters for {shape}", letters.len())));
        }
        let l = shape.l();
        for (r, letter) in letters.iter().enumerate() {
            if letter.alphabet == 0 || letter.alphabet > l || letter.alphabet < shape.boxes()[r] {
                return Err(Error::Malformed(format!("letter {letter} in box {}", shape.boxes()[r])));
            }
        }
        for i in 1..=l {
            let mut used: Vec<usize> =
                letters.iter().filter(|x| x.alphabet == i).map(|x| x.index).collect();
            used.sort();
            if used.iter().enumerate().any(|(k, &a)| a != k + 1) {
                return Err(Error::Malformed(format!("gap or repeat in alphabet {i}")));
            }
        }
        Ok(Self { shape, letters })
    }

    pub fn standard(shape: &Multipartition) -> Self {
        let letters = shape.boxes().iter().map(|&j| Letter { alphabet: j, index: 1 }).collect();
        Self { shape: shape.clone(), letters }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_restricted(&self) -> bool {
        self.letters.iter().all(|x| x.index == 1)
    }

    /// `b_i` = number of letters from the `i`-th alphabet.
    pub fn decomposition(&self) -> Decomposition {
        let mut parts = vec![0; self.shape.l()];
        for x in &self.letters {
            parts[x.alphabet - 1] += 1;
        }
        Decomposition::new(parts)
    }

    /// Entry sequence: `None` for a red dot, `Some(j)` for a black dot labelled by box `j`.
    pub fn entry_sequence(&self) -> Vec<Option<usize>> {
        let mut seq = Vec::new();
        for i in 1..=self.shape.l() {
            seq.push(None);
            let mut group: Vec<(usize, usize)> = self
                .letters
                .iter()
                .enumerate()
                .filter(|(_, x)| x.alphabet == i)
                .map(|(r, x)| (x.index, self.shape.boxes()[r]))
                .collect();
            group.sort();
            seq.extend(group.into_iter().map(|(_, j)| Some(j)));
        }
        seq
    }

    /// Black-strand matching: bottom box rank `k` goes to the top black position
    /// carrying the same box label.
    pub fn strand_perm(&self) -> Perm {
        let top: Vec<usize> = self.entry_sequence().into_iter().flatten().collect();
        let images = self
            .shape
            .boxes()
            .iter()
            .map(|j| top.iter().position(|x| x == j).expect("label present"))
            .collect();
        Perm::new(images).expect("matching is a bijection")
    }

    /// For restricted tableaux, the corresponding element of `T_lambda`.
    pub fn to_tableau(&self) -> Option<Tableau> {
        if !self.is_restricted() {
            return None;
        }
        let mu = Multipartition::from_boxes(
            self.shape.l(),
            &{
                let mut v: Vec<usize> = self.letters.iter().map(|x| x.alphabet).collect();
                v.sort();
                v
            },
        )
        .ok()?;
        // entry k (the k-th box of the shape) sits in the box of mu at column alphabet(k)
        let images = self
            .letters
            .iter()
            .map(|x| mu.boxes().iter().position(|&j| j == x.alphabet).expect("box of mu"))
            .collect();
        Tableau::new(mu, Perm::new(images).ok()?).ok()
    }
}

impl fmt::Display for MultiTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut r = 0;
        for &e in self.shape.entries() {
            if e == 1 {
                parts.push(self.letters[r].to_string());
                r += 1;
            } else {
                parts.push("-".into());
            }
        }
        write!(f, "({})", parts.join(","))
    }
}

/// `T'_lambda`, or `T''_lambda` (letters `1_i` only) when `restricted`.
pub fn multistandard(lambda: &Multipartition, restricted: bool) -> Vec<MultiTableau> {
    let n = lambda.n();
    let mut out = Vec::new();
    // first choose an alphabet for every box, then order letters within each alphabet
    let mut alphabets = vec![0usize; n];
    fn choose(
        lambda: &Multipartition,
        r: usize,
        alphabets: &mut Vec<usize>,
        restricted: bool,
        out: &mut Vec<MultiTableau>,
    ) {
        let n = lambda.n();
        let l = lambda.l();
        if r == n {
            let groups: Vec<Vec<usize>> = (1..=l)
                .map(|i| (0..n).filter(|&k| alphabets[k] == i).collect())
                .collect();
            if restricted && groups.iter().any(|g| g.len() > 1) {
                return;
            }
            let mut letters = vec![Letter { alphabet: 0, index: 0 }; n];
            fill(&groups, 0, &mut letters, lambda, out);
            return;
        }
        for i in lambda.boxes()[r]..=l {
            alphabets[r] = i;
            choose(lambda, r + 1, alphabets, restricted, out);
        }
    }
    fn fill(
        groups: &[Vec<usize>],
        g: usize,
        letters: &mut Vec<Letter>,
        lambda: &Multipartition,
        out: &mut Vec<MultiTableau>,
    ) {
        if g == groups.len() {
            out.push(MultiTableau { shape: lambda.clone(), letters: letters.clone() });
            return;
        }
        for perm in Perm::all(groups[g].len()) {
            for (slot, &box_rank) in groups[g].iter().enumerate() {
                letters[box_rank] = Letter { alphabet: g + 1, index: perm.apply(slot) + 1 };
            }
            fill(groups, g + 1, letters, lambda, out);
        }
    }
    choose(lambda, 0, &mut alphabets, restricted, &mut out);
    out.sort_by(compare_multi);
    out
}

fn compare_multi(a: &MultiTableau, b: &MultiTableau) -> Ordering {
    let key = |t: &MultiTableau| -> Vec<(usize, usize)> {
        t.letters.iter().map(|x| (x.alphabet, x.index)).collect()
    };
    key(a).cmp(&key(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn partitions_23() {
        let ps = enumerate_partitions(2, 3).unwrap();
        let names: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["110", "101", "011"]);
        assert_eq!(enumerate_partitions(0, 4).unwrap().len(), 1);
        assert_eq!(enumerate_partitions(2, 4).unwrap().len(), 6);
        assert!(enumerate_partitions(3, 2).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance_compare(&mp("110"), &mp("011")).unwrap(), Dominance::Greater);
        assert_eq!(dominance_compare(&mp("101"), &mp("101")).unwrap(), Dominance::Equal);
        assert_eq!(dominance_compare(&mp("1001"), &mp("0110")).unwrap(), Dominance::Incomparable);
        assert!(dominance_compare(&mp("110"), &mp("1100")).is_err());
    }

    #[test]
    fn dominance_is_partial_order() {
        for l in 1..=5 {
            for n in 0..=l.min(3) {
                let ps = enumerate_partitions(n, l).unwrap();
                for a in &ps {
                    for b in &ps {
                        if dominates(a, b) && dominates(b, a) {
                            assert_eq!(a, b);
                        }
                        for c in &ps {
                            if dominates(a, b) && dominates(b, c) {
                                assert!(dominates(a, c));
                            }
                        }
                    }
                }
                // the all-right partition is the unique minimum
                let min = ps.last().unwrap();
                assert!(ps.iter().all(|a| dominates(a, min)));
                // lexicographic order refines dominance
                for (i, a) in ps.iter().enumerate() {
                    for b in &ps[i + 1..] {
                        assert!(!strictly_dominates(b, a));
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_matches_standard_tableau_order() {
        for l in 1..=5 {
            for n in 0..=l.min(3) {
                let ps = enumerate_partitions(n, l).unwrap();
                for a in &ps {
                    for b in &ps {
                        let ta = Tableau::standard(a);
                        let tb = Tableau::standard(b);
                        assert_eq!(dominates(a, b), ta.ge(&tb), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_words() {
        for n in 0..=4 {
            for w in Perm::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Perm::from_word(n, &word), w);
            }
        }
        // s_2 s_1 on three letters sends 0 -> 2
        let w = Perm::new(vec![2, 0, 1]).unwrap();
        assert_eq!(w.reduced_word(), vec![2, 1]);
        assert_eq!(Perm::longest(3).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn example_tableau_sets_n3() {
        let lam = mp("1110");
        let mu = mp("0111");
        let (upper, lower) = tableau_sets(&lam, &mu).unwrap();
        let mut up: Vec<Vec<usize>> = upper.iter().map(|t| t.contents()).collect();
        up.sort();
        assert_eq!(up, vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![3, 1, 2]]);
        let mut low: Vec<Vec<usize>> = lower.iter().map(|t| t.contents()).collect();
        low.sort();
        assert_eq!(low, vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1]]);
        // permissible permutations from both sides agree
        let a: std::collections::BTreeSet<Perm> = lower.iter().map(|t| t.word().clone()).collect();
        let b: std::collections::BTreeSet<Perm> = upper.iter().map(|t| t.entry_perm()).collect();
        assert_eq!(a, b);
        assert_eq!(permissible_permutations(&mu, &lam).unwrap().len(), 4);
    }

    #[test]
    fn tableau_set_examples_23() {
        let lam = mp("110");
        let nu = mp("011");
        assert_eq!(tab_upper(&nu, &lam).len(), 2);
        assert_eq!(tab_lower(&lam, &lam), vec![Tableau::standard(&lam)]);
        assert_eq!(tab_upper(&lam, &lam), vec![Tableau::standard(&lam)]);
        assert!(tab_lower(&nu, &lam).is_empty());
        let sizes: Vec<usize> = enumerate_partitions(2, 3)
            .unwrap()
            .iter()
            .map(|l| t_lower(l).len())
            .collect();
        assert_eq!(sizes, [4, 2, 1]);
        assert_eq!(permissible_permutations(&lam, &lam).unwrap(), vec![Perm::identity(2)]);
    }

    #[test]
    fn t_tables_two_four() {
        let sizes: Vec<usize> = enumerate_partitions(2, 4)
            .unwrap()
            .iter()
            .map(|l| t_lower(l).len())
            .collect();
        assert_eq!(sizes, [9, 6, 3, 4, 2, 1]);
        // T_{lambda_1}: columns of entries 1 and 2
        let lam1 = mp("1100");
        let mut cols: Vec<(usize, usize)> =
            t_lower(&lam1).iter().map(|t| (t.column(1), t.column(2))).collect();
        cols.sort();
        let mut expected =
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (3, 2), (2, 4), (4, 2), (3, 4), (4, 3)];
        expected.sort();
        assert_eq!(cols, expected);
    }

    #[test]
    fn bijection_counts() {
        for l in 1..=5 {
            for n in 0..=l.min(3) {
                let ps = enumerate_partitions(n, l).unwrap();
                for a in &ps {
                    for b in &ps {
                        assert_eq!(tab_upper(a, b).len(), tab_lower(b, a).len());
                        let pa: std::collections::BTreeSet<Perm> =
                            tab_lower(b, a).iter().map(|t| t.word().clone()).collect();
                        let pb: std::collections::BTreeSet<Perm> =
                            tab_upper(a, b).iter().map(|t| t.entry_perm()).collect();
                        assert_eq!(pa, pb, "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Tableau::standard(&mp("110")).degree(), 3);
        assert_eq!(Tableau::standard(&mp("01")).degree(), 0);
        let t = Tableau::from_contents(&mp("110"), &[2, 1]).unwrap();
        assert_eq!(t.degree(), 1);
    }

    #[test]
    fn multistandard_example() {
        let lam = mp("110");
        let full = multistandard(&lam, false);
        assert_eq!(full.len(), 8);
        let restricted = multistandard(&lam, true);
        assert_eq!(restricted.len(), 4);
        assert_eq!(multistandard(&mp("101"), false).len(), 4);
        assert_eq!(multistandard(&mp("011"), false).len(), 3);
        assert_eq!(multistandard(&mp("000"), false).len(), 1);
        // (1_3, 1_2): b = (0,1,1), top blacks labelled 2 then 1
        let r6 = MultiTableau::new(
            lam.clone(),
            vec![Letter { alphabet: 3, index: 1 }, Letter { alphabet: 2, index: 1 }],
        )
        .unwrap();
        assert_eq!(r6.decomposition().parts(), &[0, 1, 1]);
        assert_eq!(r6.entry_sequence(), vec![None, None, Some(2), None, Some(1)]);
        assert_eq!(r6.strand_perm(), Perm::new(vec![1, 0]).unwrap());
        // (2_3, 1_3): b = (0,0,2), top blacks labelled 2 then 1
        let r8 = MultiTableau::new(
            lam.clone(),
            vec![Letter { alphabet: 3, index: 2 }, Letter { alphabet: 3, index: 1 }],
        )
        .unwrap();
        assert_eq!(r8.decomposition().parts(), &[0, 0, 2]);
        assert_eq!(r8.entry_sequence(), vec![None, None, None, Some(2), Some(1)]);
        // standard filling reproduces the shape sequence
        let st = MultiTableau::standard(&lam);
        assert_eq!(st.entry_sequence(), vec![None, Some(1), None, Some(2), None]);
        assert!(st.strand_perm().is_identity());
        assert!(MultiTableau::new(lam, vec![Letter { alphabet: 1, index: 1 }; 2]).is_err());
    }

    #[test]
    fn restricted_bijection() {
        for l in 1..=5 {
            for n in 0..=l.min(3) {
                for lam in enumerate_partitions(n, l).unwrap() {
                    let r: std::collections::BTreeSet<Tableau> = multistandard(&lam, true)
                        .iter()
                        .map(|t| t.to_tableau().unwrap())
                        .collect();
                    let t: std::collections::BTreeSet<Tableau> = t_lower(&lam).into_iter().collect();
                    assert_eq!(r, t, "{lam}");
                }
            }
        }
    }

    #[test]
    fn decompositions() {
        let all = enumerate_decompositions(2, 3);
        assert_eq!(all.len(), 6);
        assert!(!Decomposition::new(vec![2, 0, 0]).is_nonzero());
        assert!(Decomposition::new(vec![0, 0, 3]).is_nonzero());
        let nz = nonzero_decompositions(2, 3);
        assert_eq!(nz.len(), 5);
        assert_eq!(Decomposition::new(vec![0, 2, 1]).y_exponents(), vec![1, 1, 0]);
        // partitions are exactly the nonzero 0/1 decompositions
        assert_eq!(mp("1100").to_decomposition().y_exponents(), mp("1100").y_exponents());
    }

    #[test]
    fn webster_census_23() {
        let total: usize = enumerate_partitions(2, 3)
            .unwrap()
            .iter()
            .map(|l| multistandard(l, false).len().pow(2))
            .sum();
        assert_eq!(total, 89);
    }
}
