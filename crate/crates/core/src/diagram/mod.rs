//! Cut systems, Heegaard diagrams and trisection diagrams on the model surface.

pub mod canonical;
pub mod catalog;
pub mod invariants;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_core::homology::{lagrangian_failure, HomologyClass};
use crate::surface_core::word::{letter_for, SurfaceWord, Word};

pub use canonical::{canonical_form, CanonicalForm};
pub use catalog::CatalogEntry;
pub use invariants::{
    detect_k, euler_characteristic, geometric_intersection, heegaard_h1, is_standard_pair, pi1_presentation,
    printed_euler_characteristic, trisection_params, Intersection,
};

/// The simple closed curve of slope `p·a_h + q·b_h` inside handle `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, i64, i64)", into = "(usize, i64, i64)")]
pub struct SlopeTemplate {
    handle: usize,
    p: i64,
    q: i64,
}

impl SlopeTemplate {
    pub fn new(handle: usize, p: i64, q: i64) -> Result<Self> {
        if handle == 0 {
            return Err(Error::InvalidTemplate("handles are numbered from 1".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidTemplate(format!(
                "slope ({p},{q}) on handle {handle} is not primitive"
            )));
        }
        Ok(SlopeTemplate { handle, p, q })
    }

    pub fn handle(&self) -> usize {
        self.handle
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn slope(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    pub fn reversed(&self) -> Self {
        SlopeTemplate {
            handle: self.handle,
            p: -self.p,
            q: -self.q,
        }
    }

    pub fn on_handle(&self, handle: usize) -> Self {
        SlopeTemplate { handle, ..*self }
    }

    /// Same unoriented curve.
    pub fn same_curve(&self, other: &SlopeTemplate) -> bool {
        self.handle == other.handle
            && ((self.p, self.q) == (other.p, other.q) || (self.p, self.q) == (-other.p, -other.q))
    }

    /// Signed intersection `⟨self, other⟩`; zero across different handles.
    pub fn pairing(&self, other: &SlopeTemplate) -> i64 {
        if self.handle != other.handle {
            0
        } else {
            self.p * other.q - self.q * other.p
        }
    }

    /// Minimal geometric intersection number, exact for templates.
    pub fn intersection(&self, other: &SlopeTemplate) -> u64 {
        self.pairing(other).unsigned_abs()
    }

    pub fn homology(&self, genus: usize) -> HomologyClass {
        HomologyClass::slope(genus, self.handle, self.p, self.q)
    }

    /// The Christoffel word of the slope on `x_h, y_h`; capitals for negative coordinates.
    pub fn word(&self, genus: usize) -> Result<SurfaceWord> {
        if self.handle > genus {
            return Err(Error::InvalidTemplate(format!(
                "handle {} out of range for genus {genus}",
                self.handle
            )));
        }
        let (a, b) = (self.p.unsigned_abs(), self.q.unsigned_abs());
        let n = a + b;
        let x = letter_for(2 * (self.handle - 1), self.p < 0);
        let y = letter_for(2 * (self.handle - 1) + 1, self.q < 0);
        let letters = (1..=n).map(|i| if i * b / n > (i - 1) * b / n { y } else { x });
        SurfaceWord::new(genus, Word::new(letters)?)
    }
}

impl TryFrom<(usize, i64, i64)> for SlopeTemplate {
    type Error = Error;
    fn try_from((h, p, q): (usize, i64, i64)) -> Result<Self> {
        SlopeTemplate::new(h, p, q)
    }
}

impl From<SlopeTemplate> for (usize, i64, i64) {
    fn from(t: SlopeTemplate) -> Self {
        (t.handle, t.p, t.q)
    }
}

impl fmt::Display for SlopeTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}({},{})", self.handle, self.p, self.q)
    }
}

/// A curve on the surface: word, homology class and optional exact template.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CurveData")]
pub struct Curve {
    word: SurfaceWord,
    homology: HomologyClass,
    template: Option<SlopeTemplate>,
}

#[derive(Deserialize)]
struct CurveData {
    word: SurfaceWord,
    homology: HomologyClass,
    template: Option<SlopeTemplate>,
}

impl TryFrom<CurveData> for Curve {
    type Error = Error;
    fn try_from(d: CurveData) -> Result<Self> {
        let c = match d.template {
            Some(t) => Curve::with_template(d.word, t)?,
            None => Curve::from_word(d.word),
        };
        if c.homology != d.homology {
            return Err(Error::InvalidCurve("homology does not match the word".into()));
        }
        Ok(c)
    }
}

impl Curve {
    pub fn from_template(genus: usize, template: SlopeTemplate) -> Result<Self> {
        let word = template.word(genus)?;
        Ok(Curve {
            homology: word.abelianize(),
            word,
            template: Some(template),
        })
    }

    pub fn from_word(word: SurfaceWord) -> Self {
        Curve {
            homology: word.abelianize(),
            word,
            template: None,
        }
    }

    /// A word together with a claimed template; they must describe the same cyclic word.
    pub fn with_template(word: SurfaceWord, template: SlopeTemplate) -> Result<Self> {
        let expected = template.word(word.genus())?;
        if !expected.word().cyclically_equivalent(word.word()) || expected.abelianize() != word.abelianize() {
            return Err(Error::InvalidCurve(format!(
                "word `{word}` is not the template {template}"
            )));
        }
        Ok(Curve {
            homology: word.abelianize(),
            word,
            template: Some(template),
        })
    }

    pub fn genus(&self) -> usize {
        self.word.genus()
    }

    pub fn word(&self) -> &SurfaceWord {
        &self.word
    }

    pub fn homology(&self) -> &HomologyClass {
        &self.homology
    }

    pub fn template(&self) -> Option<&SlopeTemplate> {
        self.template.as_ref()
    }

    pub fn support(&self) -> Vec<usize> {
        self.word.support()
    }

    pub fn reversed(&self) -> Self {
        Curve {
            word: self.word.inverse(),
            homology: -&self.homology,
            template: self.template.map(|t| t.reversed()),
        }
    }

    /// Attaches a template when the word is literally a slope word on one handle.
    pub fn recognized(&self) -> Self {
        if self.template.is_some() {
            return self.clone();
        }
        match recognize(&self.word) {
            Some(t) => Curve {
                template: Some(t),
                ..self.clone()
            },
            None => self.clone(),
        }
    }

    pub fn without_template(&self) -> Self {
        Curve {
            template: None,
            ..self.clone()
        }
    }

    /// Re-indexes handles; `map` sends old 1-based handles to new ones.
    pub fn reindexed(&self, new_genus: usize, map: impl Fn(usize) -> usize + Copy) -> Self {
        Curve {
            word: self.word.reindex(new_genus, map),
            homology: self.homology.reindex(new_genus, map),
            template: self.template.map(|t| t.on_handle(map(t.handle))),
        }
    }
}

fn recognize(word: &SurfaceWord) -> Option<SlopeTemplate> {
    let support = word.support();
    let [h] = support[..] else { return None };
    let class = word.abelianize();
    let (p, q) = class.handle_coeffs(h);
    let t = SlopeTemplate::new(h, i64::try_from(p).ok()?, i64::try_from(q).ok()?).ok()?;
    let expected = t.word(word.genus()).ok()?;
    expected.word().cyclically_equivalent(word.word()).then_some(t)
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.template {
            Some(t) => write!(f, "{t}"),
            None if self.word.is_empty() => write!(f, "1"),
            None => write!(f, "{}", self.word),
        }
    }
}

/// `g` curves whose classes span a Lagrangian direct summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CutSystemData")]
pub struct CutSystem {
    genus: usize,
    curves: Vec<Curve>,
}

#[derive(Deserialize)]
struct CutSystemData {
    genus: usize,
    curves: Vec<Curve>,
}

impl TryFrom<CutSystemData> for CutSystem {
    type Error = Error;
    fn try_from(d: CutSystemData) -> Result<Self> {
        CutSystem::new(d.genus, d.curves)
    }
}

impl CutSystem {
    pub fn new(genus: usize, curves: Vec<Curve>) -> Result<Self> {
        for c in &curves {
            if c.genus() != genus {
                return Err(Error::GenusMismatch {
                    expected: genus,
                    found: c.genus(),
                });
            }
        }
        let classes: Vec<HomologyClass> = curves.iter().map(|c| c.homology.clone()).collect();
        if let Some(f) = lagrangian_failure(genus, &classes)? {
            return Err(Error::InvalidCutSystem(f.to_string()));
        }
        Ok(CutSystem { genus, curves })
    }

    pub fn from_templates(genus: usize, templates: &[SlopeTemplate]) -> Result<Self> {
        let curves = templates
            .iter()
            .map(|&t| Curve::from_template(genus, t))
            .collect::<Result<Vec<_>>>()?;
        CutSystem::new(genus, curves)
    }

    /// Builds from `(handle, p, q)` triples.
    pub fn from_slopes(genus: usize, slopes: &[(usize, i64, i64)]) -> Result<Self> {
        let templates = slopes
            .iter()
            .map(|&(h, p, q)| SlopeTemplate::new(h, p, q))
            .collect::<Result<Vec<_>>>()?;
        CutSystem::from_templates(genus, &templates)
    }

    pub fn empty() -> Self {
        CutSystem {
            genus: 0,
            curves: Vec::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn classes(&self) -> Vec<HomologyClass> {
        self.curves.iter().map(|c| c.homology.clone()).collect()
    }

    /// All templates, if every curve carries one.
    pub fn templates(&self) -> Option<Vec<SlopeTemplate>> {
        self.curves.iter().map(|c| c.template).collect()
    }

    pub fn is_template(&self) -> bool {
        self.curves.iter().all(|c| c.template.is_some())
    }

    pub fn recognized(&self) -> Self {
        CutSystem {
            genus: self.genus,
            curves: self.curves.iter().map(Curve::recognized).collect(),
        }
    }

    /// Replaces curve `i`, re-checking the Lagrangian condition.
    pub fn with_curve(&self, i: usize, curve: Curve) -> Result<Self> {
        let mut curves = self.curves.clone();
        curves[i] = curve;
        CutSystem::new(self.genus, curves)
    }

    pub fn reindexed(&self, new_genus: usize, map: impl Fn(usize) -> usize + Copy) -> Self {
        CutSystem {
            genus: new_genus,
            curves: self.curves.iter().map(|c| c.reindexed(new_genus, map)).collect(),
        }
    }

    /// Disjoint union on the connected-sum surface: `other`'s handles shift up by `self.genus`.
    pub fn juxtaposed(&self, other: &CutSystem) -> CutSystem {
        let genus = self.genus + other.genus;
        let shift = self.genus;
        let mut curves: Vec<Curve> = self.curves.iter().map(|c| c.reindexed(genus, |h| h)).collect();
        curves.extend(other.curves.iter().map(|c| c.reindexed(genus, |h| h + shift)));
        CutSystem { genus, curves }
    }

    /// The curves whose support lies in `handles` (sorted, 1-based), re-indexed onto `1..=len`.
    pub(crate) fn restricted(&self, handles: &[usize]) -> Self {
        let genus = handles.len();
        let map = |h: usize| handles.binary_search(&h).expect("handle in group") + 1;
        let curves = self
            .curves
            .iter()
            .filter(|c| c.support().iter().all(|h| handles.binary_search(h).is_ok()))
            .map(|c| c.reindexed(genus, map))
            .collect();
        CutSystem { genus, curves }
    }
}

impl fmt::Display for CutSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.curves.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    Alpha,
    Beta,
    Gamma,
}

impl System {
    pub const ALL: [System; 3] = [System::Alpha, System::Beta, System::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            System::Alpha => "alpha",
            System::Beta => "beta",
            System::Gamma => "gamma",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for System {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(System::Alpha),
            "beta" => Ok(System::Beta),
            "gamma" => Ok(System::Gamma),
            _ => Err(Error::InvalidDiagram(format!("unknown system `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeegaardDiagram {
    pub alpha: CutSystem,
    pub beta: CutSystem,
}

impl HeegaardDiagram {
    pub fn new(alpha: CutSystem, beta: CutSystem) -> Result<Self> {
        if alpha.genus != beta.genus {
            return Err(Error::GenusMismatch {
                expected: alpha.genus,
                found: beta.genus,
            });
        }
        Ok(HeegaardDiagram { alpha, beta })
    }

    /// The `(g,k)`-standard diagram of `#^k(S¹×S²)`: `α_i = @i(1,0)`,
    /// `β_i = α_i` for `i ≤ k` and `@i(0,1)` otherwise.
    pub fn standard(genus: usize, k: usize) -> Result<Self> {
        if k > genus {
            return Err(Error::InvalidDiagram(format!("k = {k} exceeds genus {genus}")));
        }
        let alpha: Vec<_> = (1..=genus).map(|h| (h, 1, 0)).collect();
        let beta: Vec<_> = (1..=genus)
            .map(|h| if h <= k { (h, 1, 0) } else { (h, 0, 1) })
            .collect();
        HeegaardDiagram::new(
            CutSystem::from_slopes(genus, &alpha)?,
            CutSystem::from_slopes(genus, &beta)?,
        )
    }

    pub fn genus(&self) -> usize {
        self.alpha.genus
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrisectionParams {
    pub g: usize,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl TrisectionParams {
    pub fn new(g: usize, k1: usize, k2: usize, k3: usize) -> Result<Self> {
        if k1 > g || k2 > g || k3 > g {
            return Err(Error::InvalidDiagram(format!(
                "parameters ({g};{k1},{k2},{k3}) need every k_i ≤ g"
            )));
        }
        Ok(TrisectionParams { g, k1, k2, k3 })
    }

    pub fn ks(&self) -> [usize; 3] {
        [self.k1, self.k2, self.k3]
    }

    pub fn k(&self, i: usize) -> usize {
        self.ks()[i - 1]
    }

    pub fn is_balanced(&self) -> bool {
        self.k1 == self.k2 && self.k2 == self.k3
    }

    /// Componentwise sum, as under connected sum.
    pub fn plus(&self, other: &TrisectionParams) -> TrisectionParams {
        TrisectionParams {
            g: self.g + other.g,
            k1: self.k1 + other.k1,
            k2: self.k2 + other.k2,
            k3: self.k3 + other.k3,
        }
    }
}

impl fmt::Display for TrisectionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{},{})", self.g, self.k1, self.k2, self.k3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TrisectionData")]
pub struct TrisectionDiagram {
    alpha: CutSystem,
    beta: CutSystem,
    gamma: CutSystem,
    declared_params: Option<TrisectionParams>,
}

#[derive(Deserialize)]
struct TrisectionData {
    alpha: CutSystem,
    beta: CutSystem,
    gamma: CutSystem,
    declared_params: Option<TrisectionParams>,
}

impl TryFrom<TrisectionData> for TrisectionDiagram {
    type Error = Error;
    fn try_from(d: TrisectionData) -> Result<Self> {
        TrisectionDiagram::new(d.alpha, d.beta, d.gamma, d.declared_params)
    }
}

impl TrisectionDiagram {
    pub fn new(
        alpha: CutSystem,
        beta: CutSystem,
        gamma: CutSystem,
        declared_params: Option<TrisectionParams>,
    ) -> Result<Self> {
        let g = alpha.genus;
        for s in [&beta, &gamma] {
            if s.genus != g {
                return Err(Error::GenusMismatch {
                    expected: g,
                    found: s.genus,
                });
            }
        }
        if let Some(p) = declared_params {
            if p.g != g {
                return Err(Error::InvalidDiagram(format!(
                    "declared genus {} but the systems have genus {g}",
                    p.g
                )));
            }
        }
        Ok(TrisectionDiagram {
            alpha,
            beta,
            gamma,
            declared_params,
        })
    }

    /// Template diagram from `(handle, p, q)` slopes for each system.
    pub fn from_slopes(
        genus: usize,
        alpha: &[(usize, i64, i64)],
        beta: &[(usize, i64, i64)],
        gamma: &[(usize, i64, i64)],
    ) -> Result<Self> {
        TrisectionDiagram::new(
            CutSystem::from_slopes(genus, alpha)?,
            CutSystem::from_slopes(genus, beta)?,
            CutSystem::from_slopes(genus, gamma)?,
            None,
        )
    }

    /// The genus-zero trisection of `S⁴`.
    pub fn genus_zero() -> Self {
        TrisectionDiagram {
            alpha: CutSystem::empty(),
            beta: CutSystem::empty(),
            gamma: CutSystem::empty(),
            declared_params: Some(TrisectionParams {
                g: 0,
                k1: 0,
                k2: 0,
                k3: 0,
            }),
        }
    }

    pub fn genus(&self) -> usize {
        self.alpha.genus
    }

    pub fn alpha(&self) -> &CutSystem {
        &self.alpha
    }

    pub fn beta(&self) -> &CutSystem {
        &self.beta
    }

    pub fn gamma(&self) -> &CutSystem {
        &self.gamma
    }

    pub fn system(&self, s: System) -> &CutSystem {
        match s {
            System::Alpha => &self.alpha,
            System::Beta => &self.beta,
            System::Gamma => &self.gamma,
        }
    }

    pub fn declared_params(&self) -> Option<TrisectionParams> {
        self.declared_params
    }

    pub fn with_declared_params(&self, params: Option<TrisectionParams>) -> Result<Self> {
        TrisectionDiagram::new(self.alpha.clone(), self.beta.clone(), self.gamma.clone(), params)
    }

    pub fn with_system(&self, s: System, cs: CutSystem) -> Result<Self> {
        let mut systems = [self.alpha.clone(), self.beta.clone(), self.gamma.clone()];
        systems[s as usize] = cs;
        let [alpha, beta, gamma] = systems;
        TrisectionDiagram::new(alpha, beta, gamma, self.declared_params)
    }

    /// The boundary Heegaard pair `(first, second)`.
    pub fn pair(&self, first: System, second: System) -> HeegaardDiagram {
        HeegaardDiagram {
            alpha: self.system(first).clone(),
            beta: self.system(second).clone(),
        }
    }

    /// The three boundary pairs in parameter order: `(α,β)`, `(β,γ)`, `(γ,α)`.
    pub fn boundary_pairs(&self) -> [HeegaardDiagram; 3] {
        [
            self.pair(System::Alpha, System::Beta),
            self.pair(System::Beta, System::Gamma),
            self.pair(System::Gamma, System::Alpha),
        ]
    }

    pub fn is_template(&self) -> bool {
        System::ALL.iter().all(|&s| self.system(s).is_template())
    }

    pub fn recognized(&self) -> Self {
        TrisectionDiagram {
            alpha: self.alpha.recognized(),
            beta: self.beta.recognized(),
            gamma: self.gamma.recognized(),
            declared_params: self.declared_params,
        }
    }

    /// Reassigns the roles of the three systems: the new `α, β, γ` are the old
    /// `order[0], order[1], order[2]`. Declared parameters are permuted to
    /// match. Odd permutations reverse the orientation of the 4-manifold.
    pub fn relabel(&self, order: [System; 3]) -> Result<Self> {
        let mut sorted = order;
        sorted.sort();
        if sorted != System::ALL {
            return Err(Error::InvalidDiagram("relabeling must be a permutation".into()));
        }
        let params = self.declared_params.map(|p| {
            // k of the pair (s, t) in the old labeling
            let k_of = |s: System, t: System| {
                let ks = p.ks();
                match (s, t) {
                    (System::Alpha, System::Beta) | (System::Beta, System::Alpha) => ks[0],
                    (System::Beta, System::Gamma) | (System::Gamma, System::Beta) => ks[1],
                    _ => ks[2],
                }
            };
            TrisectionParams {
                g: p.g,
                k1: k_of(order[0], order[1]),
                k2: k_of(order[1], order[2]),
                k3: k_of(order[2], order[0]),
            }
        });
        TrisectionDiagram::new(
            self.system(order[0]).clone(),
            self.system(order[1]).clone(),
            self.system(order[2]).clone(),
            params,
        )
    }
}

impl fmt::Display for TrisectionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trisection genus={}", self.genus())?;
        if let Some(p) = self.declared_params {
            write!(f, " params=({},{},{})", p.k1, p.k2, p.k3)?;
        }
        writeln!(f)?;
        for s in System::ALL {
            writeln!(f, "{}: {}", s, self.system(s))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn christoffel_words() {
        let w = |p, q| SlopeTemplate::new(1, p, q).unwrap().word(1).unwrap().to_string();
        assert_eq!(w(1, 0), "x1");
        assert_eq!(w(0, 1), "y1");
        assert_eq!(w(1, 1), "x1 y1");
        assert_eq!(w(2, 1), "x1 x1 y1");
        assert_eq!(w(1, 2), "x1 y1 y1");
        assert_eq!(w(1, -1), "x1 Y1");
        assert_eq!(w(-3, 2), "X1 X1 y1 X1 y1");
        assert_eq!(w(-3, -2), "X1 X1 Y1 X1 Y1");
    }

    #[test]
    fn template_word_homology_matches() {
        for (p, q) in [(1, 0), (0, 1), (3, 2), (-5, 3), (2, -7), (-1, -1)] {
            let t = SlopeTemplate::new(2, p, q).unwrap();
            let c = Curve::from_template(3, t).unwrap();
            assert_eq!(c.homology(), &t.homology(3));
            assert_eq!(c.word().len() as i64, p.abs() + q.abs());
        }
    }

    #[test]
    fn non_primitive_slope_rejected() {
        assert!(SlopeTemplate::new(1, 2, 4).is_err());
        assert!(SlopeTemplate::new(1, 0, 0).is_err());
        assert!(SlopeTemplate::new(0, 1, 0).is_err());
    }

    #[test]
    fn recognition_round_trips() {
        let t = SlopeTemplate::new(2, 3, -2).unwrap();
        let c = Curve::from_template(2, t).unwrap();
        let bare = c.without_template();
        assert_eq!(bare.recognized().template(), Some(&t));
        let rotated = Curve::from_word(SurfaceWord::new(2, c.word().word().rotate_left(2)).unwrap());
        assert_eq!(rotated.recognized().template(), Some(&t));
        let two_handles = Curve::from_word(SurfaceWord::parse(2, "x1 x2").unwrap());
        assert!(two_handles.recognized().template().is_none());
    }

    #[test]
    fn cut_system_rejects_non_lagrangian() {
        assert!(CutSystem::from_slopes(2, &[(1, 1, 0), (1, 0, 1)]).is_err());
        assert!(CutSystem::from_slopes(2, &[(1, 1, 0), (2, 1, 0)]).is_ok());
    }

    #[test]
    fn relabel_permutes_params() {
        let t = TrisectionDiagram::from_slopes(1, &[(1, 1, 0)], &[(1, 1, 0)], &[(1, 0, 1)])
            .unwrap()
            .with_declared_params(Some(TrisectionParams::new(1, 1, 0, 0).unwrap()))
            .unwrap();
        let r = t.relabel([System::Beta, System::Gamma, System::Alpha]).unwrap();
        assert_eq!(r.declared_params().unwrap().ks(), [0, 0, 1]);
    }
}
