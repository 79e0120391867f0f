//! Handleslides of one curve over another within a cut system.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{CutSystem, System, TrisectionDiagram};
use crate::error::{Error, Result};
use crate::surface_core::word::{format_path, SurfaceWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Slide curve `from` over curve `over` (0-based) of `system` along `guide`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slide {
    pub system: System,
    pub from: usize,
    pub over: usize,
    pub sign: Sign,
    pub guide: Word,
}

impl Slide {
    pub fn new(system: System, from: usize, over: usize, sign: Sign) -> Self {
        Slide {
            system,
            from,
            over,
            sign,
            guide: Word::identity(),
        }
    }

    /// The slide that undoes this one at the level of homology.
    pub fn inverse(&self) -> Slide {
        Slide {
            sign: self.sign.flipped(),
            ..self.clone()
        }
    }
}

impl fmt::Display for Slide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.system, self.from + 1, self.sign, self.over + 1)?;
        if !self.guide.is_empty() {
            write!(f, " along {}", format_path(&self.guide))?;
        }
        Ok(())
    }
}

/// `curve_i ↦ curve_i · guide · curve_j^{±1} · guide⁻¹`, cyclically reduced.
/// The template of the slid curve is dropped.
/// The guide is a path, so it is only freely reduced.
pub fn handleslide(cs: &CutSystem, i: usize, j: usize, sign: Sign, guide: &Word) -> Result<CutSystem> {
    let g = cs.genus();
    if i == j || i >= cs.len() || j >= cs.len() {
        return Err(Error::InvalidMove(format!(
            "cannot slide curve {} over curve {} in a system of {}",
            i + 1,
            j + 1,
            cs.len()
        )));
    }
    if guide.max_generator().is_some_and(|m| m >= 2 * g) {
        return Err(Error::InvalidWord(format!("guide leaves the genus-{g} surface")));
    }
    let wi = cs.curves()[i].word().word();
    let wj = cs.curves()[j].word().word();
    let wj = match sign {
        Sign::Plus => wj.clone(),
        Sign::Minus => wj.inverse(),
    };
    let word = wi.concat(&wj.conjugate_by(guide));
    let curve = crate::diagram::Curve::from_word(SurfaceWord::new(g, word)?);
    cs.with_curve(i, curve)
}

pub fn apply_slide(t: &TrisectionDiagram, s: &Slide) -> Result<TrisectionDiagram> {
    let cs = handleslide(t.system(s.system), s.from, s.over, s.sign, &s.guide)?;
    t.with_system(s.system, cs)
}

/// `n` random empty-guide slides, each inside one system. Genus-one diagrams
/// admit none and are returned unchanged.
pub fn random_slides<R: Rng>(t: &TrisectionDiagram, n: usize, rng: &mut R) -> (TrisectionDiagram, Vec<Slide>) {
    let g = t.genus();
    let mut cur = t.clone();
    let mut slides = Vec::new();
    if g < 2 {
        return (cur, slides);
    }
    for _ in 0..n {
        let system = System::ALL[rng.gen_range(0..3)];
        let from = rng.gen_range(0..g);
        let mut over = rng.gen_range(0..g - 1);
        if over >= from {
            over += 1;
        }
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let s = Slide::new(system, from, over, sign);
        cur = apply_slide(&cur, &s).expect("slides preserve cut systems");
        slides.push(s);
    }
    (cur, slides)
}
