//! Balanced presentations and Andrews–Curtis moves.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_core::matrix::IntegerMatrix;
use crate::surface_core::word::{generator_of, letter_for, letter_rank, Letter, Word};

/// `n` generators and exactly `n` freely reduced relators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Word>", into = "Vec<Word>")]
pub struct BalancedPresentation {
    relators: Vec<Word>,
}

impl TryFrom<Vec<Word>> for BalancedPresentation {
    type Error = Error;

    fn try_from(relators: Vec<Word>) -> Result<Self> {
        BalancedPresentation::new(relators)
    }
}

impl From<BalancedPresentation> for Vec<Word> {
    fn from(p: BalancedPresentation) -> Self {
        p.relators
    }
}

impl BalancedPresentation {
    /// The generator count is the relator count.
    pub fn new(relators: Vec<Word>) -> Result<Self> {
        let n = relators.len();
        if let Some(g) = relators.iter().filter_map(Word::max_generator).max() {
            if g >= n {
                return Err(Error::InvalidPresentation(format!(
                    "generator x{} used but the presentation is balanced on {n}",
                    g + 1
                )));
            }
        }
        Ok(BalancedPresentation { relators })
    }

    /// `⟨x1…xn | x1, …, xn⟩`.
    pub fn trivial(n: usize) -> Self {
        BalancedPresentation {
            relators: (0..n).map(Word::generator).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.relators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Parses relators separated by `;`, with letters `x1 X1 x2 …`
    /// (`x y z` abbreviate `x1 x2 x3`; capitals are inverses).
    pub fn parse(text: &str) -> Result<Self> {
        let relators = text
            .split(';')
            .map(|r| {
                let letters = r.split_whitespace().map(parse_letter).collect::<Result<Vec<_>>>()?;
                Word::new(letters)
            })
            .collect::<Result<Vec<_>>>()?;
        BalancedPresentation::new(relators)
    }

    pub fn is_trivial(&self) -> bool {
        canonical_key(self) == canonical_key(&BalancedPresentation::trivial(self.n()))
    }
}

pub fn letter_token(l: Letter) -> String {
    let c = if l < 0 { 'X' } else { 'x' };
    format!("{c}{}", generator_of(l) + 1)
}

fn parse_letter(tok: &str) -> Result<Letter> {
    let bad = || Error::InvalidWord(format!("bad presentation letter `{tok}`"));
    let mut chars = tok.chars();
    let c = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    let (gen, inverse) = match (c, rest) {
        ('x' | 'X', "") => (0, c == 'X'),
        ('y' | 'Y', "") => (1, c == 'Y'),
        ('z' | 'Z', "") => (2, c == 'Z'),
        ('x' | 'X', digits) => {
            let k: usize = digits.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            (k - 1, c == 'X')
        }
        _ => return Err(bad()),
    };
    Ok(letter_for(gen, inverse))
}

impl fmt::Display for BalancedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                if r.is_empty() {
                    "1".to_string()
                } else {
                    r.letters()
                        .iter()
                        .map(|&l| letter_token(l))
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        f.write_str(&rels.join(" ; "))
    }
}

/// The Akbulut–Kirby presentations `⟨x, y | yxy = xyx, x^{n+1} = y^n⟩`.
pub fn ak_presentation(n: usize) -> Result<BalancedPresentation> {
    if n < 1 {
        return Err(Error::InvalidPresentation("AK(n) needs n ≥ 1".into()));
    }
    let (x, y) = (letter_for(0, false), letter_for(1, false));
    let r1 = Word::new([y, x, y, -x, -y, -x])?;
    let r2 = Word::power(0, n as i64 + 1).concat(&Word::power(1, -(n as i64)));
    BalancedPresentation::new(vec![r1, r2])
}

/// Determinant of the exponent-sum matrix; `±1` is necessary for presenting the trivial group.
pub fn ab_det(p: &BalancedPresentation) -> BigInt {
    let n = p.n();
    let mut m = IntegerMatrix::zeros(n, n);
    for (i, r) in p.relators.iter().enumerate() {
        for g in 0..n {
            m.set(i, g, r.exponent_sum(g).into());
        }
    }
    m.determinant()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AcMove {
    InvertRelator(usize),
    /// `r_target ← r_target · r_source`.
    MultiplyRelators {
        target: usize,
        source: usize,
    },
    /// `r ← c r c⁻¹` with `c = x_generator`, or `c = x_generator⁻¹` when `inverse`.
    ConjugateRelator {
        relator: usize,
        generator: usize,
        inverse: bool,
    },
    /// Adds generator `x_{n+1}` with relator `x_{n+1}`.
    StabilizeAC,
    /// Removes relator `relator` = `x_k^{±1}` together with `x_k`, which must occur nowhere else.
    DestabilizeAC {
        relator: usize,
    },
}

impl fmt::Display for AcMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AcMove::InvertRelator(i) => write!(f, "invert r{}", i + 1),
            AcMove::MultiplyRelators { target, source } => {
                write!(f, "r{} ← r{} · r{}", target + 1, target + 1, source + 1)
            }
            AcMove::ConjugateRelator {
                relator,
                generator,
                inverse,
            } => {
                let c = letter_token(letter_for(generator, inverse));
                write!(f, "conjugate r{} by {c}", relator + 1)
            }
            AcMove::StabilizeAC => f.write_str("stabilize"),
            AcMove::DestabilizeAC { relator } => write!(f, "destabilize r{}", relator + 1),
        }
    }
}

/// The single generator a relator consists of, if it is `x_k^{±1}` and `x_k` occurs in no other relator.
fn free_pair(p: &BalancedPresentation, relator: usize) -> Option<usize> {
    let r = p.relators.get(relator)?;
    if r.len() != 1 {
        return None;
    }
    let g = generator_of(r.letters()[0]);
    let elsewhere = p
        .relators
        .iter()
        .enumerate()
        .any(|(i, w)| i != relator && w.occurrences(g) > 0);
    (!elsewhere).then_some(g)
}

pub fn apply_ac_move(p: &BalancedPresentation, m: &AcMove) -> Result<BalancedPresentation> {
    let n = p.n();
    let check = |i: usize| {
        if i < n {
            Ok(())
        } else {
            Err(Error::InvalidMove(format!("relator {} out of range 1..={n}", i + 1)))
        }
    };
    let mut relators = p.relators.clone();
    match *m {
        AcMove::InvertRelator(i) => {
            check(i)?;
            relators[i] = relators[i].inverse();
        }
        AcMove::MultiplyRelators { target, source } => {
            check(target)?;
            check(source)?;
            if target == source {
                return Err(Error::InvalidMove("a relator cannot multiply itself".into()));
            }
            relators[target] = relators[target].concat(&relators[source]);
        }
        AcMove::ConjugateRelator {
            relator,
            generator,
            inverse,
        } => {
            check(relator)?;
            if generator >= n {
                return Err(Error::InvalidMove(format!("no generator x{}", generator + 1)));
            }
            let c = Word::new([letter_for(generator, inverse)])?;
            relators[relator] = relators[relator].conjugate_by(&c);
        }
        AcMove::StabilizeAC => relators.push(Word::generator(n)),
        AcMove::DestabilizeAC { relator } => {
            check(relator)?;
            let g = free_pair(p, relator).ok_or_else(|| {
                Error::InvalidMove(format!(
                    "r{} is not a single generator appearing nowhere else",
                    relator + 1
                ))
            })?;
            relators.remove(relator);
            for r in &mut relators {
                *r = r.drop_generator(g);
            }
        }
    }
    BalancedPresentation::new(relators)
}

/// Moves undoing `m` up to canonical key (applied to the presentation `m` produced).
pub fn inverse_moves(p: &BalancedPresentation, m: &AcMove) -> Vec<AcMove> {
    match *m {
        AcMove::InvertRelator(i) => vec![AcMove::InvertRelator(i)],
        // r_t r_s → invert, multiply, giving r_s⁻¹ r_t⁻¹ r_s, a conjugate of r_t⁻¹
        AcMove::MultiplyRelators { target, source } => vec![
            AcMove::InvertRelator(target),
            AcMove::MultiplyRelators { target, source },
        ],
        AcMove::ConjugateRelator {
            relator,
            generator,
            inverse,
        } => vec![AcMove::ConjugateRelator {
            relator,
            generator,
            inverse: !inverse,
        }],
        AcMove::StabilizeAC => vec![AcMove::DestabilizeAC {
            relator: p.n().saturating_sub(1),
        }],
        AcMove::DestabilizeAC { relator } => {
            // the removed pair comes back last; restore its slot by relabeling
            // is not an AC move, so the inverse holds up to canonical key
            let _ = relator;
            vec![AcMove::StabilizeAC]
        }
    }
}

/// Stable byte encoding of the presentation up to relator order, cyclic
/// rotation, relator inversion, generator permutation and generator inversion.
pub fn canonical_key(p: &BalancedPresentation) -> Vec<u8> {
    KeyCache::new(p).key()
}

/// Per-symmetry canonical relators of one presentation, so the keys of
/// presentations differing in a single relator come cheaply.
pub(crate) struct KeyCache {
    n: usize,
    symmetries: Vec<(Vec<usize>, u64)>,
    /// `[symmetry][relator]` canonical bytes.
    relators: Vec<Vec<Vec<u8>>>,
    scratch: Scratch,
}

#[derive(Default)]
struct Scratch {
    fwd: Vec<u8>,
    inv: Vec<u8>,
    word: Vec<u8>,
    key: Vec<u8>,
}

fn ranks_of(w: &Word) -> Vec<u8> {
    w.cyclically_reduced()
        .letters()
        .iter()
        .map(|&l| letter_rank(l) as u8)
        .collect()
}

impl KeyCache {
    pub(crate) fn new(p: &BalancedPresentation) -> Self {
        let n = p.n();
        let mut symmetries = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            for flips in 0..(1u64 << n.min(63)) {
                symmetries.push((perm.clone(), flips));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut scratch = Scratch::default();
        let ranks: Vec<Vec<u8>> = p.relators.iter().map(ranks_of).collect();
        let relators = symmetries
            .iter()
            .map(|(perm, flips)| {
                ranks
                    .iter()
                    .map(|r| {
                        scratch.canonical(r, perm, *flips);
                        scratch.word.clone()
                    })
                    .collect()
            })
            .collect();
        KeyCache {
            n,
            symmetries,
            relators,
            scratch,
        }
    }

    pub(crate) fn key(&mut self) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for rels in &self.relators {
            let mut refs: Vec<&[u8]> = rels.iter().map(Vec::as_slice).collect();
            encode(self.n, &mut refs, &mut self.scratch.key);
            if best.as_ref().is_none_or(|b| self.scratch.key < *b) {
                best = Some(self.scratch.key.clone());
            }
        }
        best.unwrap_or_else(|| vec![0])
    }

    /// Key of the presentation with relator `i` replaced by `w`.
    pub(crate) fn key_replacing(&mut self, i: usize, w: &Word) -> Vec<u8> {
        let ranks = ranks_of(w);
        let mut best: Option<Vec<u8>> = None;
        for (k, (perm, flips)) in self.symmetries.iter().enumerate() {
            self.scratch.canonical(&ranks, perm, *flips);
            let rels = &self.relators[k];
            let mut refs: Vec<&[u8]> = rels
                .iter()
                .enumerate()
                .map(|(j, r)| {
                    if j == i {
                        self.scratch.word.as_slice()
                    } else {
                        r.as_slice()
                    }
                })
                .collect();
            let mut key = std::mem::take(&mut self.scratch.key);
            encode(self.n, &mut refs, &mut key);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key.clone());
            }
            self.scratch.key = key;
        }
        best.unwrap_or_else(|| vec![0])
    }
}

fn encode(n: usize, words: &mut [&[u8]], out: &mut Vec<u8>) {
    words.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.clear();
    out.push(n as u8);
    for w in words.iter() {
        out.extend_from_slice(w);
        out.push(0);
    }
}

impl Scratch {
    /// Least rotation of the relator or its inverse after the symmetry, shifted by one so 0 separates.
    fn canonical(&mut self, ranks: &[u8], perm: &[usize], flips: u64) {
        self.fwd.clear();
        self.fwd.extend(ranks.iter().map(|&x| {
            let g = usize::from(x >> 1);
            (2 * perm[g]) as u8 + ((x & 1) ^ (flips >> g & 1) as u8)
        }));
        let len = self.fwd.len();
        self.inv.clear();
        self.inv.extend(self.fwd.iter().rev().map(|&x| x ^ 1));
        self.fwd.extend_from_within(..);
        self.inv.extend_from_within(..);
        let a = least_rotation(&self.fwd);
        let b = least_rotation(&self.inv);
        let (fa, fb) = (&self.fwd[a..a + len], &self.inv[b..b + len]);
        self.word.clear();
        self.word.extend(fa.min(fb).iter().map(|x| x + 1));
    }
}

/// Start of the least rotation of `s`, given doubled as `ss = s s`
/// (two-pointer minimum expression).
fn least_rotation(ss: &[u8]) -> usize {
    let n = ss.len() / 2;
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (ss[i + k], ss[j + k]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
