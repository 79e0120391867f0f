//! Canonical forms for "equal up to diagram isomorphism".
//!
//! Template diagrams (one template per handle in every system) reduce to a
//! sorted list of per-handle keys: each handle's slope triple is moved by
//! `SL₂(Z)` so that `α = (1,0)`, then sheared and sign-normalized. Curve
//! orientations are free; the orientation of the surface is not, so `CP²`
//! and `-CP²` stay distinct.

use serde::{Deserialize, Serialize};

use crate::diagram::{SlopeTemplate, System, TrisectionDiagram};
use crate::surface_core::word::{generator_of, letter_for, rank_cmp, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CanonicalForm {
    /// Sorted handle keys `[1, 0, β_x, β_y, γ_x, γ_y]`.
    Template(Vec<[i64; 6]>),
    /// Fallback for diagrams with word curves: per-system sorted cyclic words,
    /// minimized over handle permutations and per-handle sign flips when the
    /// genus is small.
    Words { genus: usize, systems: Vec<Vec<Word>> },
}

pub fn canonical_form(t: &TrisectionDiagram) -> CanonicalForm {
    match handle_triples(t) {
        Some(triples) => {
            let mut keys: Vec<[i64; 6]> = triples.into_iter().map(|[a, b, c]| handle_key(a, b, c)).collect();
            keys.sort_unstable();
            CanonicalForm::Template(keys)
        }
        None => word_form(t),
    }
}

/// Slope triples per handle, if every system has exactly one template on each handle.
fn handle_triples(t: &TrisectionDiagram) -> Option<Vec<[(i64, i64); 3]>> {
    let g = t.genus();
    let mut out = vec![[None; 3]; g];
    for (k, s) in System::ALL.into_iter().enumerate() {
        for c in t.system(s).curves() {
            let tpl: &SlopeTemplate = c.template()?;
            let slot = &mut out[tpl.handle() - 1][k];
            if slot.is_some() {
                return None;
            }
            *slot = Some(tpl.slope());
        }
    }
    out.into_iter().map(|[a, b, c]| Some([a?, b?, c?])).collect()
}

/// Extended Euclid: `(u, v)` with `p·u + q·v = 1` for coprime `p, q`.
fn bezout(p: i64, q: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (p, q);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 < 0 {
        (-s0, -t0)
    } else {
        (s0, t0)
    }
}

fn sign_normalized((x, y): (i64, i64)) -> (i64, i64) {
    if x < 0 || (x == 0 && y < 0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// Normal form of one handle's `(α, β, γ)` slopes.
pub fn handle_key(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> [i64; 6] {
    let (p, q) = a;
    let (s, minus_r) = bezout(p, q);
    // M = [[s, -r], [-q, p]] has det 1 and sends (p, q) to (1, 0).
    let apply = |(x, y): (i64, i64)| (s * x + minus_r * y, -q * x + p * y);
    let (mut b, mut c) = (apply(b), apply(c));
    let pivot_is_b = b.1 != 0;
    let pivot = if pivot_is_b { b } else { c };
    if pivot.1 != 0 {
        let flip = pivot.1 < 0;
        let (px, py) = if flip { (-pivot.0, -pivot.1) } else { pivot };
        let n = -px.div_euclid(py);
        let shear = |(x, y): (i64, i64)| (x + n * y, y);
        if pivot_is_b {
            b = shear(if flip { (-b.0, -b.1) } else { b });
            c = sign_normalized(shear(c));
        } else {
            c = shear(if flip { (-c.0, -c.1) } else { c });
            b = sign_normalized(shear(b));
        }
    } else {
        b = sign_normalized(b);
        c = sign_normalized(c);
    }
    [1, 0, b.0, b.1, c.0, c.1]
}

const WORD_PERMUTATION_LIMIT: usize = 5;

fn word_form(t: &TrisectionDiagram) -> CanonicalForm {
    let g = t.genus();
    let words: Vec<Vec<Word>> = System::ALL
        .iter()
        .map(|&s| t.system(s).curves().iter().map(|c| c.word().word().clone()).collect())
        .collect();
    let encode = |perm: &[usize], flips: u32| -> Vec<Vec<Word>> {
        words
            .iter()
            .map(|sys| {
                let mut v: Vec<Word> = sys
                    .iter()
                    .map(|w| {
                        w.map_letters(|l| {
                            let gen = generator_of(l);
                            let h = gen / 2;
                            let flip = flips >> h & 1 == 1;
                            letter_for(2 * perm[h] + gen % 2, (l < 0) != flip)
                        })
                        .cyclic_canonical()
                    })
                    .collect();
                v.sort_by(rank_cmp);
                v
            })
            .collect()
    };
    let cmp = |a: &Vec<Vec<Word>>, b: &Vec<Vec<Word>>| {
        a.iter()
            .flatten()
            .map(|w| w.len())
            .cmp(b.iter().flatten().map(|w| w.len()))
            .then_with(|| {
                a.iter()
                    .flatten()
                    .zip(b.iter().flatten())
                    .map(|(x, y)| rank_cmp(x, y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    };
    let identity: Vec<usize> = (0..g).collect();
    let mut best = encode(&identity, 0);
    if g <= WORD_PERMUTATION_LIMIT {
        let mut perm = identity;
        loop {
            for flips in 0..(1u32 << g) {
                let cand = encode(&perm, flips);
                if cmp(&cand, &best).is_lt() {
                    best = cand;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    CanonicalForm::Words {
        genus: g,
        systems: best,
    }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalog::CatalogEntry;

    fn apply(m: [[i64; 2]; 2], (x, y): (i64, i64)) -> (i64, i64) {
        (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)
    }

    #[test]
    fn bezout_identity() {
        for (p, q) in [(1, 0), (0, 1), (0, -1), (-1, 0), (3, 5), (-7, 4), (13, -8)] {
            let (u, v) = bezout(p, q);
            assert_eq!(p * u + q * v, 1, "{p} {q}");
        }
    }

    #[test]
    fn sl2_invariance() {
        let mats = [
            [[1, 1], [0, 1]],
            [[1, 0], [1, 1]],
            [[0, -1], [1, 0]],
            [[2, 1], [1, 1]],
            [[-1, 0], [0, -1]],
        ];
        for e in CatalogEntry::ALL {
            let [a, b, c] = e.slopes();
            let base = handle_key(a, b, c);
            for m in mats {
                assert_eq!(handle_key(apply(m, a), apply(m, b), apply(m, c)), base, "{e:?}");
            }
            let neg = |(x, y): (i64, i64)| (-x, -y);
            assert_eq!(handle_key(neg(a), b, neg(c)), base);
        }
    }

    #[test]
    fn catalog_keys_distinct() {
        let mut keys: Vec<_> = CatalogEntry::ALL.iter().map(|e| canonical_form(&e.diagram())).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 6);
    }
}
