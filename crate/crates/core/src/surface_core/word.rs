//! Words in free groups and on the model surface.
//!
//! A [`Letter`] is a non-zero integer: `g + 1` stands for generator `g`
//! and `-(g + 1)` for its inverse. Every [`Word`] is kept freely reduced.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_core::homology::HomologyClass;

pub type Letter = i32;

#[inline]
pub fn generator_of(letter: Letter) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

#[inline]
pub fn letter_for(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

/// Total order on letters: `g0 < g0^-1 < g1 < g1^-1 < ...`.
#[inline]
pub fn letter_rank(letter: Letter) -> u32 {
    2 * generator_of(letter) as u32 + u32::from(letter < 0)
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from raw letters, freely reducing it. Zero letters are rejected.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(Error::InvalidWord("letter 0 is not a generator".into()));
            }
            push_reduced(&mut out, l);
        }
        Ok(Word(out))
    }

    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        Word(letters)
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![letter_for(g, false)])
    }

    pub fn power(g: usize, exp: i64) -> Self {
        let l = letter_for(g, exp < 0);
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut out = self.0.clone();
        out.reserve(other.len());
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Conjugate `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &Word) -> Self {
        c.concat(self).concat(&c.inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != -self.0[self.0.len() - 1]
    }

    pub fn cyclically_reduced(&self) -> Self {
        let s = &self.0;
        let (mut i, mut j) = (0usize, s.len());
        while j - i >= 2 && s[i] == -s[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Rotation moving the first `k` letters to the end. Only meaningful on
    /// cyclically reduced words.
    pub fn rotate_left(&self, k: usize) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Least rotation under [`letter_rank`] order, for a cyclically reduced word.
    pub fn least_rotation(&self) -> Self {
        let ranks: Vec<u32> = self.0.iter().map(|&l| letter_rank(l)).collect();
        let k = least_rotation_index(&ranks);
        self.rotate_left(k)
    }

    /// Canonical representative of the cyclic word up to rotation and inversion.
    pub fn cyclic_canonical(&self) -> Self {
        let w = self.cyclically_reduced();
        let a = w.least_rotation();
        let b = w.inverse().least_rotation();
        if rank_cmp(&b, &a).is_lt() {
            b
        } else {
            a
        }
    }

    /// Whether the two words are equal as unoriented cyclic words.
    pub fn cyclically_equivalent(&self, other: &Word) -> bool {
        self.len() == other.len() && self.cyclic_canonical() == other.cyclic_canonical()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .filter(|&&l| generator_of(l) == g)
            .map(|&l| if l > 0 { 1 } else { -1 })
            .sum()
    }

    /// Number of letters equal to `g` or `g⁻¹`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|&&l| generator_of(l) == g).count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&l| generator_of(l)).max()
    }

    /// Replaces every occurrence of generator `g` by `replacement` (and `g⁻¹` by its inverse).
    pub fn substitute(&self, g: usize, replacement: &Word) -> Self {
        let inv = replacement.inverse();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if generator_of(l) == g {
                let r = if l > 0 { replacement } else { &inv };
                for &m in &r.0 {
                    push_reduced(&mut out, m);
                }
            } else {
                push_reduced(&mut out, l);
            }
        }
        Word(out)
    }

    /// Applies a letter map (e.g. a generator permutation with sign flips).
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Self {
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            push_reduced(&mut out, f(l));
        }
        Word(out)
    }

    /// Removes generator `g` (which must not occur) and shifts higher generators down.
    pub fn drop_generator(&self, g: usize) -> Self {
        debug_assert_eq!(self.occurrences(g), 0);
        self.map_letters(|l| {
            let h = generator_of(l);
            if h > g {
                letter_for(h - 1, l < 0)
            } else {
                l
            }
        })
    }
}

/// Length of the cyclic reduction of `rot(t, a) · rot(s, b)` for cyclically
/// reduced `t`, `s`, given as doubled letter arrays `tt = t t`, `ss = s s`.
pub(crate) fn cyclic_product_length(tt: &[Letter], a: usize, ss: &[Letter], b: usize) -> usize {
    let (lt, ls) = (tt.len() / 2, ss.len() / 2);
    let t = &tt[a..a + lt];
    let s = &ss[b..b + ls];
    let mut k = 0;
    while k < lt.min(ls) && t[lt - 1 - k] == -s[k] {
        k += 1;
    }
    let len = lt + ls - 2 * k;
    let at = |i: usize| if i < lt - k { t[i] } else { s[i - (lt - k) + k] };
    let mut c = 0;
    while len - 2 * c >= 2 && at(c) == -at(len - 1 - c) {
        c += 1;
    }
    len - 2 * c
}

pub(crate) fn rank_cmp(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.0.iter()
        .map(|&l| letter_rank(l))
        .cmp(b.0.iter().map(|&l| letter_rank(l)))
}

#[inline]
fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Booth's algorithm: start index of the lexicographically least rotation.
fn least_rotation_index(s: &[u32]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// A cyclically reduced word on the genus-`g` surface, over `x1…xg, y1…yg`.
///
/// Generator `x_i` is free-group generator `2(i-1)`, `y_i` is `2(i-1)+1`.
/// The surface relator is not quotiented here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceWord {
    genus: usize,
    word: Word,
}

impl SurfaceWord {
    pub fn new(genus: usize, word: Word) -> Result<Self> {
        if let Some(g) = word.max_generator() {
            if g >= 2 * genus {
                return Err(Error::InvalidWord(format!(
                    "generator {} out of range for genus {genus}",
                    token(letter_for(g, false))
                )));
            }
        }
        Ok(SurfaceWord {
            genus,
            word: word.cyclically_reduced(),
        })
    }

    pub fn empty(genus: usize) -> Self {
        SurfaceWord {
            genus,
            word: Word::identity(),
        }
    }

    pub fn x(genus: usize, handle: usize) -> Letter {
        debug_assert!(handle >= 1 && handle <= genus);
        letter_for(2 * (handle - 1), false)
    }

    pub fn y(genus: usize, handle: usize) -> Letter {
        debug_assert!(handle >= 1 && handle <= genus);
        letter_for(2 * (handle - 1) + 1, false)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Parses whitespace-separated tokens like `x1 Y2 X1`.
    pub fn parse(genus: usize, text: &str) -> Result<Self> {
        SurfaceWord::new(genus, parse_path(genus, text)?)
    }

    /// Handles (1-based) whose generators occur in the word.
    pub fn support(&self) -> Vec<usize> {
        let mut hs: Vec<usize> = self.word.letters().iter().map(|&l| generator_of(l) / 2 + 1).collect();
        hs.sort_unstable();
        hs.dedup();
        hs
    }

    pub fn inverse(&self) -> Self {
        SurfaceWord {
            genus: self.genus,
            word: self.word.inverse(),
        }
    }

    /// Re-indexes handles through `map` (old 1-based handle → new 1-based handle).
    pub fn reindex(&self, new_genus: usize, map: impl Fn(usize) -> usize) -> Self {
        let word = self.word.map_letters(|l| {
            let g = generator_of(l);
            let h = map(g / 2 + 1);
            letter_for(2 * (h - 1) + g % 2, l < 0)
        });
        SurfaceWord { genus: new_genus, word }
    }

    pub fn abelianize(&self) -> HomologyClass {
        abelianize(self)
    }
}

/// Exponent-sum homology class: `x_i ↦ a_i`, `y_i ↦ b_i`.
pub fn abelianize(w: &SurfaceWord) -> HomologyClass {
    let mut coeffs = vec![0i64; 2 * w.genus];
    for &l in w.word.letters() {
        coeffs[generator_of(l)] += if l > 0 { 1 } else { -1 };
    }
    HomologyClass::from_i64(w.genus, &coeffs).expect("length matches genus")
}

/// The surface relator `[x1,y1]…[xg,yg]` as a free-group word.
pub fn surface_relator(genus: usize) -> Word {
    let mut v = Vec::with_capacity(4 * genus);
    for h in 0..genus {
        let x = letter_for(2 * h, false);
        let y = letter_for(2 * h + 1, false);
        v.extend_from_slice(&[x, y, -x, -y]);
    }
    Word::from_reduced(v)
}

/// Parses surface tokens (`x1 Y2 …`) into a freely reduced word without
/// cyclic reduction, as needed for paths such as slide guides.
pub fn parse_path(genus: usize, text: &str) -> Result<Word> {
    let letters = text
        .split_whitespace()
        .map(|tok| parse_token(tok, genus))
        .collect::<Result<Vec<_>>>()?;
    Word::new(letters)
}

/// Surface tokens of a word, space separated.
pub fn format_path(w: &Word) -> String {
    w.letters().iter().map(|&l| token(l)).collect::<Vec<_>>().join(" ")
}

pub fn token(l: Letter) -> String {
    let g = generator_of(l);
    let base = if g.is_multiple_of(2) { 'x' } else { 'y' };
    let c = if l < 0 { base.to_ascii_uppercase() } else { base };
    format!("{c}{}", g / 2 + 1)
}

fn parse_token(tok: &str, genus: usize) -> Result<Letter> {
    let mut chars = tok.chars();
    let c = chars.next().ok_or_else(|| Error::InvalidWord("empty token".into()))?;
    let rest: &str = chars.as_str();
    let handle: usize = rest
        .parse()
        .map_err(|_| Error::InvalidWord(format!("bad token `{tok}`")))?;
    if handle == 0 || handle > genus {
        return Err(Error::InvalidWord(format!(
            "token `{tok}` references handle {handle} outside 1..={genus}"
        )));
    }
    let (offset, inverse) = match c {
        'x' => (0, false),
        'X' => (0, true),
        'y' => (1, false),
        'Y' => (1, true),
        _ => return Err(Error::InvalidWord(format!("bad token `{tok}`"))),
    };
    Ok(letter_for(2 * (handle - 1) + offset, inverse))
}

impl fmt::Display for SurfaceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.word.letters().iter().map(|&l| token(l)).collect();
        write!(f, "{}", toks.join(" "))
    }
}


#[cfg(test)]
mod product_length_tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn cyclic_product_length_matches_products() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..3000 {
            let rand_word = |rng: &mut rand::rngs::StdRng| loop {
                let n = rng.gen_range(1..8);
                let w = Word::new((0..n).map(|_| {
                    let g = rng.gen_range(1..=3);
                    if rng.gen_bool(0.5) {
                        g
                    } else {
                        -g
                    }
                }))
                .unwrap()
                .cyclically_reduced();
                if !w.is_empty() {
                    return w;
                }
            };
            let t = rand_word(&mut rng);
            let s = rand_word(&mut rng);
            let tt = [t.letters(), t.letters()].concat();
            let ss = [s.letters(), s.letters()].concat();
            for a in 0..t.len() {
                for b in 0..s.len() {
                    let direct = t.rotate_left(a).concat(&s.rotate_left(b)).cyclically_reduced().len();
                    assert_eq!(cyclic_product_length(&tt, a, &ss, b), direct, "{t:?} {a} {s:?} {b}");
                }
            }
        }
    }
}
