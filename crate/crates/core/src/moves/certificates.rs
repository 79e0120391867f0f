//! Reducing and stabilization certificates, and the splits they license.
//!
//! Disk-bounding is witnessed combinatorially: a curve bounds in a handlebody
//! when it is a member of that handlebody's cut system, possibly after a few
//! recorded handleslides.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::catalog::CatalogEntry;
use crate::diagram::{Curve, CutSystem, SlopeTemplate, System, TrisectionDiagram, TrisectionParams};
use crate::error::{Error, Result};
use crate::moves::slide::{apply_slide, Sign, Slide};
use crate::surface_core::word::{surface_relator, SurfaceWord};

/// A separating curve `δ` bounding in all three handlebodies, splitting the
/// handles into `handles` and `rest`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducingCertificate {
    pub delta: Curve,
    pub handles: Vec<usize>,
    pub rest: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationEvidence {
    /// Slides applied before `ω` shows up as a common member.
    pub slides: Vec<Slide>,
    /// The two members equal to `ω` (system, 0-based index).
    pub omega_in: [(System, usize); 2],
    /// The member of the third system meeting `ω` once.
    pub dual_in: (System, usize),
    pub intersection: u64,
}

/// `ω` bounds in the two handlebodies prescribed by `index` and meets a curve
/// of the third system exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationCertificate {
    pub index: usize,
    pub handle: usize,
    pub omega: Curve,
    pub dual: Curve,
    pub evidence: StabilizationEvidence,
}

/// Systems `(ω, ω, dual)` for each stabilization index.
pub fn index_systems(index: usize) -> Option<(System, System, System)> {
    match index {
        1 => Some((System::Alpha, System::Beta, System::Gamma)),
        2 => Some((System::Beta, System::Gamma, System::Alpha)),
        3 => Some((System::Gamma, System::Alpha, System::Beta)),
        _ => None,
    }
}

/// Connected components of handles linked by curve supports, ordered by least handle.
pub(crate) fn handle_components(t: &TrisectionDiagram) -> Vec<Vec<usize>> {
    let g = t.genus();
    let mut parent: Vec<usize> = (0..g).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for s in System::ALL {
        for c in t.system(s).curves() {
            let sup = c.support();
            for w in sup.windows(2) {
                let (a, b) = (find(&mut parent, w[0] - 1), find(&mut parent, w[1] - 1));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_index = vec![usize::MAX; g];
    for h in 0..g {
        let r = find(&mut parent, h);
        if root_index[r] == usize::MAX {
            root_index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_index[r]].push(h + 1);
    }
    groups
}

fn commutator_curve(genus: usize, handles: &[usize]) -> Curve {
    let mut word = crate::surface_core::word::Word::identity();
    for &h in handles {
        let one = surface_relator(1).map_letters(|l| {
            let gen = crate::surface_core::word::generator_of(l);
            crate::surface_core::word::letter_for(2 * (h - 1) + gen, l < 0)
        });
        word = word.concat(&one);
    }
    Curve::from_word(SurfaceWord::new(genus, word).expect("handles in range"))
}

fn curves_within(cs: &CutSystem, handles: &[usize]) -> usize {
    cs.curves()
        .iter()
        .filter(|c| c.support().iter().all(|h| handles.binary_search(h).is_ok()))
        .count()
}

/// Splits off the component containing handle 1 when the supports of all
/// curves fall into at least two groups. Absence proves nothing.
pub fn find_reducing_certificate(t: &TrisectionDiagram) -> Option<ReducingCertificate> {
    let comps = handle_components(t);
    if comps.len() < 2 {
        return None;
    }
    let handles = comps[0].clone();
    let mut rest: Vec<usize> = comps[1..].iter().flatten().copied().collect();
    rest.sort_unstable();
    let balanced = System::ALL
        .iter()
        .all(|&s| curves_within(t.system(s), &handles) == handles.len());
    balanced.then(|| ReducingCertificate {
        delta: commutator_curve(t.genus(), &handles),
        handles,
        rest,
    })
}

fn restrict(t: &TrisectionDiagram, handles: &[usize]) -> Result<TrisectionDiagram> {
    let g = handles.len();
    let sys = |s: System| CutSystem::new(g, t.system(s).restricted(handles).curves().to_vec());
    TrisectionDiagram::new(sys(System::Alpha)?, sys(System::Beta)?, sys(System::Gamma)?, None)
}

/// The two summands of a reducing certificate, handles renumbered from 1.
pub fn split(t: &TrisectionDiagram, cert: &ReducingCertificate) -> Result<(TrisectionDiagram, TrisectionDiagram)> {
    let g = t.genus();
    let mut all: Vec<usize> = cert.handles.iter().chain(&cert.rest).copied().collect();
    all.sort_unstable();
    if cert.handles.is_empty() || cert.rest.is_empty() || all != (1..=g).collect::<Vec<_>>() {
        return Err(Error::InvalidCertificate(
            "handle groups must partition the handles into two non-empty parts".into(),
        ));
    }
    let (mut handles, mut rest) = (cert.handles.clone(), cert.rest.clone());
    handles.sort_unstable();
    rest.sort_unstable();
    if cert.delta != commutator_curve(g, &handles) {
        return Err(Error::InvalidCertificate(
            "δ is not the boundary of the handle group".into(),
        ));
    }
    for s in System::ALL {
        for (i, c) in t.system(s).curves().iter().enumerate() {
            let sup = c.support();
            let inside = sup.iter().all(|h| handles.binary_search(h).is_ok());
            let outside = sup.iter().all(|h| rest.binary_search(h).is_ok());
            if !inside && !outside {
                return Err(Error::InvalidCertificate(format!("{s} curve {} crosses δ", i + 1)));
            }
        }
        if curves_within(t.system(s), &handles) != handles.len() {
            return Err(Error::InvalidCertificate(format!(
                "{s} does not restrict to a cut system on either side of δ"
            )));
        }
    }
    Ok((restrict(t, &handles)?, restrict(t, &rest)?))
}

/// Default number of exposing handleslides.
pub const DEFAULT_EXPOSURE_DEPTH: usize = 3;
const EXPOSURE_STATE_CAP: usize = 5_000;

fn slope_order(t: &SlopeTemplate) -> (i64, i64, i64) {
    (t.p().abs() + t.q().abs(), t.p(), t.q())
}

/// `(index, handle, ω members, dual member)` of a stabilization found by a scan.
type Hit = (usize, usize, [(System, usize); 2], (System, usize));

/// Scans a diagram as it stands, in index, handle, slope order. Only handles
/// already split off from the others qualify, so every hit destabilizes.
fn scan(t: &TrisectionDiagram) -> Option<Hit> {
    scan_handles(t, |_| true)
}

fn scan_handles(t: &TrisectionDiagram, wanted: impl Fn(usize) -> bool) -> Option<Hit> {
    let singles: Vec<usize> = handle_components(t)
        .into_iter()
        .filter(|c| c.len() == 1 && wanted(c[0]))
        .map(|c| c[0])
        .collect();
    for index in 1..=3 {
        let (s, u, d) = index_systems(index).expect("index in range");
        let expected = CatalogEntry::stabilization(index).expect("index in range");
        for &handle in &singles {
            if restrict(t, &[handle]).ok().and_then(|p| CatalogEntry::classify(&p)) != Some(expected) {
                continue;
            }
            let on_handle = |sys: System| -> Vec<(usize, SlopeTemplate)> {
                let mut v: Vec<(usize, SlopeTemplate)> = t
                    .system(sys)
                    .curves()
                    .iter()
                    .enumerate()
                    .filter_map(|(i, c)| c.template().filter(|tp| tp.handle() == handle).map(|&tp| (i, tp)))
                    .collect();
                v.sort_by_key(|(_, tp)| slope_order(tp));
                v
            };
            for (i, omega) in on_handle(s) {
                let Some(&(j, _)) = on_handle(u).iter().find(|(_, tp)| tp.same_curve(&omega)) else {
                    continue;
                };
                if let Some(&(l, _)) = on_handle(d).iter().find(|(_, tp)| tp.intersection(&omega) == 1) {
                    return Some((index, handle, [(s, i), (u, j)], (d, l)));
                }
            }
        }
    }
    None
}

fn certificate_from(
    t: &TrisectionDiagram,
    slides: Vec<Slide>,
    (index, handle, omega_in, dual_in): Hit,
) -> StabilizationCertificate {
    let omega = t.system(omega_in[0].0).curves()[omega_in[0].1].clone();
    let dual = t.system(dual_in.0).curves()[dual_in.1].clone();
    StabilizationCertificate {
        index,
        handle,
        evidence: StabilizationEvidence {
            slides,
            omega_in,
            dual_in,
            intersection: 1,
        },
        omega,
        dual,
    }
}

/// First certificate in the deterministic order, allowing up to
/// [`DEFAULT_EXPOSURE_DEPTH`] exposing slides. Absence proves nothing.
pub fn find_stabilization_certificate(t: &TrisectionDiagram) -> Option<StabilizationCertificate> {
    find_stabilization_certificate_within(t, DEFAULT_EXPOSURE_DEPTH)
}

/// A certificate on the given (1-based) handle as the diagram stands.
pub fn stabilization_certificate_at(t: &TrisectionDiagram, handle: usize) -> Option<StabilizationCertificate> {
    let start = t.recognized();
    scan_handles(&start, |h| h == handle).map(|hit| certificate_from(&start, Vec::new(), hit))
}

pub fn find_stabilization_certificate_within(t: &TrisectionDiagram, depth: usize) -> Option<StabilizationCertificate> {
    let start = t.recognized();
    if let Some(hit) = scan(&start) {
        return Some(certificate_from(&start, Vec::new(), hit));
    }
    let g = t.genus();
    let mut seen: HashSet<TrisectionDiagram> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, Vec::<Slide>::new())]);
    while let Some((cur, path)) = queue.pop_front() {
        if path.len() >= depth {
            continue;
        }
        for system in System::ALL {
            for from in 0..g {
                for over in (0..g).filter(|&o| o != from) {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let slide = Slide::new(system, from, over, sign);
                        let Ok(next) = apply_slide(&cur, &slide) else { continue };
                        let next = next.recognized();
                        if !seen.insert(next.clone()) {
                            continue;
                        }
                        let mut p = path.clone();
                        p.push(slide);
                        if let Some(hit) = scan(&next) {
                            return Some(certificate_from(&next, p, hit));
                        }
                        if seen.len() >= EXPOSURE_STATE_CAP {
                            return None;
                        }
                        queue.push_back((next, p));
                    }
                }
            }
        }
    }
    None
}

/// Applies the recorded slides and checks every condition of the certificate,
/// returning the diagram it speaks about.
pub fn check_stabilization_certificate(
    t: &TrisectionDiagram,
    cert: &StabilizationCertificate,
) -> Result<TrisectionDiagram> {
    let bad = |m: String| Err(Error::InvalidCertificate(m));
    let Some((s, u, d)) = index_systems(cert.index) else {
        return bad(format!("index {} is not 1, 2 or 3", cert.index));
    };
    let ev = &cert.evidence;
    if ev.omega_in[0].0 != s || ev.omega_in[1].0 != u || ev.dual_in.0 != d {
        return bad(format!("systems do not match index {}", cert.index));
    }
    let mut cur = t.recognized();
    for slide in &ev.slides {
        cur = apply_slide(&cur, slide)?.recognized();
    }
    let member = |(sys, i): (System, usize)| -> Result<Curve> {
        cur.system(sys)
            .curves()
            .get(i)
            .cloned()
            .ok_or_else(|| Error::InvalidCertificate(format!("{sys} has no curve {}", i + 1)))
    };
    let tpl = |c: &Curve, what: &str| -> Result<SlopeTemplate> {
        c.template()
            .copied()
            .ok_or_else(|| Error::InvalidCertificate(format!("{what} is not a template curve")))
    };
    let omega = tpl(&cert.omega, "ω")?;
    let dual = tpl(&cert.dual, "dual")?;
    for at in ev.omega_in {
        let m = member(at)?;
        if !tpl(&m, "ω member")?.same_curve(&omega) {
            return bad(format!("{} curve {} is not ω", at.0, at.1 + 1));
        }
    }
    if tpl(&member(ev.dual_in)?, "dual member")? != dual {
        return bad(format!("{} curve {} is not the dual", d, ev.dual_in.1 + 1));
    }
    if omega.handle() != cert.handle || dual.handle() != cert.handle {
        return bad(format!("ω and dual must lie on handle {}", cert.handle));
    }
    let count = omega.intersection(&dual);
    if count != 1 || ev.intersection != 1 {
        return bad(format!("ω meets the dual {count} times, not once"));
    }
    Ok(cur)
}

/// Removes the summand exposed by the certificate. The removed genus-one
/// piece is the `index`-th unbalanced diagram of `S⁴`.
pub fn destabilize(t: &TrisectionDiagram, cert: &StabilizationCertificate) -> Result<TrisectionDiagram> {
    Ok(destabilize_parts(t, cert)?.0)
}

pub(crate) fn destabilize_parts(
    t: &TrisectionDiagram,
    cert: &StabilizationCertificate,
) -> Result<(TrisectionDiagram, TrisectionDiagram)> {
    let cur = check_stabilization_certificate(t, cert)?;
    let comps = handle_components(&cur);
    if !comps.iter().any(|c| c == &vec![cert.handle]) {
        return Err(Error::InvalidCertificate(format!(
            "handle {} is not split off from the others",
            cert.handle
        )));
    }
    let g = cur.genus();
    let rest: Vec<usize> = (1..=g).filter(|&h| h != cert.handle).collect();
    let piece = restrict(&cur, &[cert.handle])?;
    let expected = CatalogEntry::stabilization(cert.index).expect("index checked");
    if CatalogEntry::classify(&piece) != Some(expected) {
        return Err(Error::InvalidCertificate(format!(
            "the summand on handle {} is not the {}",
            cert.handle,
            expected.name()
        )));
    }
    let mut remaining = restrict(&cur, &rest)?;
    if let Some(p) = t.declared_params() {
        let mut ks = p.ks();
        if ks[cert.index - 1] == 0 {
            return Err(Error::InvalidCertificate(format!(
                "declared k{} is already 0",
                cert.index
            )));
        }
        ks[cert.index - 1] -= 1;
        remaining = remaining.with_declared_params(Some(TrisectionParams::new(g - 1, ks[0], ks[1], ks[2])?))?;
    }
    Ok((remaining, piece))
}
