//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trisect::diagram::{
    canonical_form, euler_characteristic, heegaard_h1, trisection_params, CatalogEntry, HeegaardDiagram, SlopeTemplate,
    TrisectionDiagram, TrisectionParams,
};
use trisect::gprc_ac::{
    ab_det, ac_search, ak_presentation, apply_ac_move, canonical_key, replay_path, AcMove, AcSearchConfig,
    AcSearchResult, BalancedPresentation,
};
use trisect::kirby::{
    gprc_necessary_check, hk_to_trisection, matrix_handleslide, max_primitive_system, stabilize_link, surgery_h1,
    trisection_to_hk, FramedComponent, HeegaardKirbyDiagram, LinkStabilization, LinkingMatrix,
};
use trisect::moves::{
    connected_sum, destabilize, i_stabilize, random_slides, stabilization_certificate_at, standardize, Sign,
    StandardizeConfig,
};
use trisect::replay::check_verdict;
use trisect::surface_core::word::{generator_of, Word};
use trisect::surface_core::TietzeConfig;
use trisect::{Verdict, VerdictStatus, Witness};

struct Outcome {
    pass: bool,
    detail: String,
}

/// Every verdict produced along the way, for the soundness guard.
type Ledger = Vec<(String, Verdict)>;

type Criterion = fn(&mut Ledger) -> Outcome;

fn sum(entries: &[CatalogEntry]) -> TrisectionDiagram {
    entries
        .iter()
        .map(|e| e.diagram())
        .reduce(|a, b| connected_sum(&a, &b))
        .unwrap_or_else(TrisectionDiagram::genus_zero)
}

/// All multisets of catalog entries of size `1..=max`, as sorted lists.
fn multisets(max: usize) -> Vec<Vec<CatalogEntry>> {
    fn go(start: usize, left: usize, cur: &mut Vec<CatalogEntry>, out: &mut Vec<Vec<CatalogEntry>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..CatalogEntry::ALL.len() {
            cur.push(CatalogEntry::ALL[i]);
            go(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, max, &mut Vec::new(), &mut out);
    out
}

fn params(g: usize, k1: usize, k2: usize, k3: usize) -> TrisectionParams {
    TrisectionParams { g, k1, k2, k3 }
}

/// χ from a handle count: one 0-handle, k1 1-handles, g−k2 2-handles,
/// k3 3-handles and one 4-handle.
fn chi_oracle(p: &TrisectionParams) -> i64 {
    1 - p.k1 as i64 + (p.g - p.k2) as i64 - p.k3 as i64 + 1
}

fn criterion_1(ledger: &mut Ledger) -> Outcome {
    let start = Instant::now();
    let expected = [
        ("CP²", params(1, 0, 0, 0)),
        ("-CP²", params(1, 0, 0, 0)),
        ("S¹×S³", params(1, 1, 1, 1)),
        ("S⁴ (1-stabilization)", params(1, 1, 0, 0)),
        ("S⁴ (2-stabilization)", params(1, 0, 1, 0)),
        ("S⁴ (3-stabilization)", params(1, 0, 0, 1)),
    ];
    let mut bad = Vec::new();
    for (entry, (name, want)) in CatalogEntry::ALL.into_iter().zip(expected) {
        let t = entry.diagram();
        let (got, v) = trisection_params(&t, TietzeConfig::default());
        if !v.is_verified() || got != want || entry.name() != name || CatalogEntry::classify(&t) != Some(entry) {
            bad.push(format!("{name}: {got} ({})", v.status));
        }
        ledger.push((format!("catalog {name}"), v));
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: bad.is_empty() && elapsed < Duration::from_secs(1),
        detail: format!("6 diagrams, {} mismatches {bad:?}, {elapsed:.2?} (< 1 s)", bad.len()),
    }
}

fn criterion_2(ledger: &mut Ledger) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let chi_of = |e: &CatalogEntry| chi_oracle(&e.params());
    for entries in multisets(4) {
        let t = sum(&entries);
        let (p, v) = trisection_params(&t, TietzeConfig::default());
        let summed = entries.iter().fold(params(0, 0, 0, 0), |acc, e| acc.plus(&e.params()));
        let chi = euler_characteristic(&p);
        // χ(A # B) = χ(A) + χ(B) − 2
        let additive = entries.iter().map(chi_of).sum::<i64>() - 2 * (entries.len() as i64 - 1);
        let s4_shape = p.g == p.k1 + p.k2 + p.k3;
        if !v.is_verified() || p != summed || chi != chi_oracle(&p) || chi != additive || (chi == 2) != s4_shape {
            bad.push(format!("{entries:?}: {p} χ={chi}"));
        }
        ledger.push((format!("χ {entries:?}"), v));
        checked += 1;
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{checked} sums up to genus 4, {} mismatches {bad:?}", bad.len()),
    }
}

fn criterion_3(ledger: &mut Ledger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let config = StandardizeConfig::default();
    let (mut recovered, mut unknown, mut wrong) = (0, 0, Vec::new());
    let mut slowest = Duration::ZERO;
    for case in 0..100 {
        // at most one summand without an α = β handle keeps k1 ≥ g − 1
        let g = rng.gen_range(2..=4);
        let mut entries: Vec<CatalogEntry> = Vec::new();
        let loose = rng.gen_range(0..=1);
        for i in 0..g {
            let pool: &[CatalogEntry] = if i < loose {
                &[
                    CatalogEntry::Cp2,
                    CatalogEntry::Cp2Bar,
                    CatalogEntry::Stab2,
                    CatalogEntry::Stab3,
                ]
            } else {
                &[CatalogEntry::S1xS3, CatalogEntry::Stab1]
            };
            entries.push(pool[rng.gen_range(0..pool.len())]);
        }
        let t = sum(&entries);
        let (scrambled, _) = random_slides(&t, rng.gen_range(1..=20), &mut rng);
        let start = Instant::now();
        let result = standardize(&scrambled, &config);
        slowest = slowest.max(start.elapsed());
        let mut want = entries.clone();
        want.sort();
        match result {
            Ok(s) if s.verdict.is_verified() => {
                let mut got = s.summands.clone();
                got.sort();
                if got == want {
                    recovered += 1;
                } else {
                    wrong.push(format!("case {case}: {want:?} → {got:?}"));
                }
                ledger.push((format!("standardize case {case}"), s.verdict));
            }
            Ok(s) if s.verdict.is_unknown() => unknown += 1,
            Ok(s) => {
                wrong.push(format!("case {case}: {want:?} refuted: {}", s.verdict.reason));
                ledger.push((format!("standardize case {case}"), s.verdict));
            }
            Err(e) => wrong.push(format!("case {case}: {want:?} error: {e}")),
        }
    }
    Outcome {
        pass: recovered >= 95 && wrong.is_empty() && slowest < Duration::from_secs(10),
        detail: format!(
            "{recovered}/100 recovered (≥ 95), {unknown} unknown, {} wrong {wrong:?}, slowest {slowest:.2?} (< 10 s)",
            wrong.len()
        ),
    }
}

fn criterion_4(ledger: &mut Ledger) -> Outcome {
    let config = StandardizeConfig::default();
    let (mut violations, mut refuted, mut checked) = (0, 0, 0);
    let mut bad = Vec::new();
    for g in 1..=4usize {
        let base = sum(&vec![CatalogEntry::Cp2; g]);
        for k1 in [g, g - 1] {
            for k2 in 0..=g {
                for k3 in 0..=g {
                    let p = params(g, k1, k2, k3);
                    let violates = if k1 == g { k2 != k3 } else { k3 + 1 < k2 || k3 > k2 + 1 };
                    let t = base.with_declared_params(Some(p)).expect("valid params");
                    let s = match standardize(&t, &config) {
                        Ok(s) => s,
                        Err(e) => {
                            bad.push(format!("{p}: {e}"));
                            continue;
                        }
                    };
                    let constraint_refuted =
                        s.verdict.is_refuted() && matches!(s.verdict.witness, Some(Witness::ParamConstraint { .. }));
                    checked += 1;
                    if violates {
                        violations += 1;
                        if constraint_refuted {
                            refuted += 1;
                        } else {
                            bad.push(format!("{p}: {}", s.verdict.status));
                        }
                    }
                    ledger.push((format!("constraint {p}"), s.verdict));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty() && refuted == violations,
        detail: format!("{checked} parameter sets, {refuted}/{violations} violations refuted, misses {bad:?}"),
    }
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let (mut checked, mut bad) = (0, Vec::new());
    for entry in CatalogEntry::ALL {
        let t = entry.diagram();
        let base = entry.params();
        for i in 1..=3 {
            let s = i_stabilize(&t, i).expect("index in range");
            let (p, v) = trisection_params(&s, TietzeConfig::default());
            let mut want = [base.k1, base.k2, base.k3];
            want[i - 1] += 1;
            if p != params(base.g + 1, want[0], want[1], want[2]) {
                bad.push(format!("{entry} stabilized {i}: {p}"));
            }
            ledger.push((format!("{entry} {i}-stabilized"), v));

            let undone = stabilization_certificate_at(&s, base.g + 1)
                .filter(|c| c.index == i)
                .and_then(|c| destabilize(&s, &c).ok());
            match undone {
                Some(d) if canonical_form(&d) == canonical_form(&t) => {}
                _ => bad.push(format!("{entry}: destabilizing the {i}-stabilization failed")),
            }
            for j in 1..=3 {
                let ij = i_stabilize(&s, j).expect("index in range");
                let ji = i_stabilize(&i_stabilize(&t, j).expect("index in range"), i).expect("index in range");
                if canonical_form(&ij) != canonical_form(&ji) {
                    bad.push(format!("{entry}: {i},{j} stabilizations do not commute"));
                }
                checked += 1;
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("6 entries × 3 indices, {checked} commutation pairs, failures {bad:?}"),
    }
}

/// `c`-component unlink on the `(c+k, k)`-standard background.
fn unlink(c: usize, k: usize) -> HeegaardKirbyDiagram {
    let g = c + k;
    let link = (k + 1..=g)
        .map(|h| {
            let curve = trisect::diagram::Curve::from_template(g, SlopeTemplate::new(h, 1, 0).unwrap()).unwrap();
            FramedComponent::surface(curve)
        })
        .collect();
    HeegaardKirbyDiagram::new(HeegaardDiagram::standard(g, k).unwrap(), link, g).unwrap()
}

fn criterion_6(ledger: &mut Ledger) -> Outcome {
    let config = TietzeConfig::default();
    let mut inputs: Vec<(String, HeegaardKirbyDiagram)> = Vec::new();
    for g in 1..=4 {
        for c in 0..=g {
            inputs.push((format!("unlink c={c} k={}", g - c), unlink(c, g - c)));
        }
    }
    let (mut round_trips, mut slowest) = (0, Duration::ZERO);
    let mut bad = Vec::new();
    for entries in multisets(3) {
        let t = sum(&entries);
        let picks = max_primitive_system(&t);
        let full = picks.len() == t.genus() - t.declared_params().expect("catalog sums declare params").k2;
        let start = Instant::now();
        let (h, v) = match trisection_to_hk(&t, &picks, config) {
            Ok(x) => x,
            Err(e) => {
                bad.push(format!("{entries:?}: {e}"));
                continue;
            }
        };
        ledger.push((format!("tri→hk {entries:?}"), v));
        if full {
            let (back, v) = hk_to_trisection(&h, config);
            slowest = slowest.max(start.elapsed());
            match back {
                Some(b) if v.is_verified() && canonical_form(&b) == canonical_form(&t) => round_trips += 1,
                _ => bad.push(format!("{entries:?}: round trip failed ({})", v.reason)),
            }
            ledger.push((format!("hk→tri {entries:?}"), v));
        }
        inputs.push((format!("{entries:?}"), h));
    }
    let mut emitted = 0;
    for (name, h) in &inputs {
        let (t, v) = hk_to_trisection(h, config);
        let n = heegaard_h1(h.background()).free_rank;
        let want = params(h.genus(), n, h.genus() - h.components(), h.target());
        match t.and_then(|t| t.declared_params()) {
            Some(p) if v.is_verified() && p == want => emitted += 1,
            got => bad.push(format!("{name}: {got:?} vs {want}")),
        }
        ledger.push((format!("hk→tri {name}"), v));
    }
    Outcome {
        pass: bad.is_empty() && slowest < Duration::from_secs(1),
        detail: format!(
            "{emitted}/{} inputs emit (g;n,g−c,m), {round_trips} round trips, slowest {slowest:.2?} (< 1 s), failures {bad:?}",
            inputs.len()
        ),
    }
}

/// Fraction-free elimination over i128.
fn det_oracle(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let (mut sign, mut prev) = (1i128, 1i128);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn as_rows(m: &LinkingMatrix) -> Vec<Vec<i128>> {
    let n = m.components();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i128::try_from(m.get(i, j)).expect("small entries"))
                .collect()
        })
        .collect()
}

#[allow(clippy::needless_range_loop)]
fn criterion_7(ledger: &mut Ledger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for trial in 0..100 {
        let n = rng.gen_range(1..=6);
        let mut rows = vec![vec![0i64; n]; n];
        let sparse = rng.gen_bool(0.2);
        for i in 0..n {
            for j in i..n {
                let v = if sparse { 0 } else { rng.gen_range(-3..=3) };
                (rows[i][j], rows[j][i]) = (v, v);
            }
        }
        let m = LinkingMatrix::from_rows(&rows).expect("symmetric");
        let h1 = surgery_h1(&m);
        let det = det_oracle(&as_rows(&m));
        let mut cur = m.clone();
        if n > 1 {
            for _ in 0..rng.gen_range(1..=6) {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                cur = matrix_handleslide(&cur, i, j, sign).expect("distinct components");
            }
        }
        if surgery_h1(&cur) != h1 || det_oracle(&as_rows(&cur)) != det {
            bad.push(format!("trial {trial}: slides changed H1"));
        }
        let v = gprc_necessary_check(&cur);
        if v.is_verified() != rows.iter().flatten().all(|&x| x == 0) {
            bad.push(format!("trial {trial}: gprc check {} on {rows:?}", v.status));
        }
        ledger.push((format!("gprc trial {trial}"), v));
        if surgery_h1(&stabilize_link(&cur, LinkStabilization::HopfPair)) != h1 {
            bad.push(format!("trial {trial}: Hopf pair changed H1"));
        }
    }
    for n in 0..=6 {
        let v = gprc_necessary_check(&LinkingMatrix::zero(n));
        if !v.is_verified() {
            bad.push(format!("zero {n}×{n} not verified"));
        }
        ledger.push((format!("gprc zero {n}"), v));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("100 random matrices up to 6×6 plus 7 zero matrices, failures {bad:?}"),
    }
}

fn exponent_sums(w: &Word, n: usize) -> Vec<i128> {
    let mut out = vec![0; n];
    for &l in w.letters() {
        out[generator_of(l)] += if l > 0 { 1 } else { -1 };
    }
    out
}

fn random_move<R: Rng>(p: &BalancedPresentation, rng: &mut R) -> AcMove {
    let n = p.n();
    match rng.gen_range(0..3) {
        0 => AcMove::InvertRelator(rng.gen_range(0..n)),
        1 if n > 1 => {
            let target = rng.gen_range(0..n);
            AcMove::MultiplyRelators {
                target,
                source: (target + rng.gen_range(1..n)) % n,
            }
        }
        _ => AcMove::ConjugateRelator {
            relator: rng.gen_range(0..n),
            generator: rng.gen_range(0..n),
            inverse: rng.gen_bool(0.5),
        },
    }
}

fn criterion_8(ledger: &mut Ledger) -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=10 {
        let p = ak_presentation(n).expect("n ≥ 1");
        let e: Vec<Vec<i128>> = p.relators().iter().map(|r| exponent_sums(r, 2)).collect();
        let oracle = e[0][0] * e[1][1] - e[0][1] * e[1][0];
        if ab_det(&p) != (-1).into() || oracle != -1 {
            bad.push(format!("P_{n}: ab_det {} oracle {oracle}", ab_det(&p)));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seq in 0..1000 {
        let start = if seq % 2 == 0 {
            ak_presentation(rng.gen_range(1..=10)).expect("n ≥ 1")
        } else {
            let rel = |rng: &mut ChaCha8Rng| {
                let len = rng.gen_range(1..=6);
                Word::new((0..len).map(|_| {
                    let g = rng.gen_range(1..=2);
                    if rng.gen_bool(0.5) {
                        g
                    } else {
                        -g
                    }
                }))
                .expect("non-zero letters")
            };
            BalancedPresentation::new(vec![rel(&mut rng), rel(&mut rng)]).expect("balanced")
        };
        let det = ab_det(&start).magnitude().clone();
        let mut cur = start;
        for _ in 0..rng.gen_range(1..=20) {
            let m = random_move(&cur, &mut rng);
            cur = apply_ac_move(&cur, &m).expect("moves in range");
        }
        if *ab_det(&cur).magnitude() != det {
            bad.push(format!("sequence {seq}: |ab_det| changed"));
        }
    }

    let config = AcSearchConfig::new(32, 20);
    let p1 = ak_presentation(1).expect("n ≥ 1");
    let start = Instant::now();
    let outcome = ac_search(&p1, &config);
    let p1_time = start.elapsed();
    let p1_ok = match &outcome.result {
        AcSearchResult::Trivialized { path, .. } => replay_path(&p1, path)
            .map(|end| canonical_key(&end) == canonical_key(&BalancedPresentation::trivial(end.n())))
            .unwrap_or(false),
        _ => false,
    };
    if !p1_ok || p1_time > Duration::from_secs(60) {
        bad.push(format!("P_1: {:?} in {p1_time:.2?}", outcome.result));
    }
    ledger.push(("ac P_1".into(), outcome.verdict()));

    let p3 = ak_presentation(3).expect("n ≥ 1");
    let start = Instant::now();
    let outcome = ac_search(&p3, &config);
    let p3_time = start.elapsed();
    if !matches!(outcome.result, AcSearchResult::Exhausted(_)) {
        bad.push(format!("P_3: {:?}", outcome.result));
    }
    ledger.push(("ac P_3".into(), outcome.verdict()));
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "P_1..P_10 det −1, 1000 move sequences, P_1 trivialized in {p1_time:.2?} (< 60 s), P_3 {:?} in {p3_time:.2?}, failures {bad:?}",
            outcome.result
        ),
    }
}

fn criterion_9(ledger: &Ledger) -> Outcome {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut violations = Vec::new();
    for (name, v) in ledger {
        *counts.entry(v.status.to_string()).or_default() += 1;
        let missing = v.status != VerdictStatus::Unknown && v.witness.is_none();
        if missing {
            violations.push(format!("{name}: {} without witness", v.status));
        } else if let Err(e) = check_verdict(v) {
            violations.push(format!("{name}: {e}"));
        }
    }
    Outcome {
        pass: violations.is_empty(),
        detail: format!(
            "{} verdicts replayed {counts:?}, {} violations {violations:?}",
            ledger.len(),
            violations.len()
        ),
    }
}

fn main() {
    let mut ledger = Ledger::new();
    let criteria: [(&str, Criterion); 8] = [
        ("genus-one catalog", criterion_1),
        ("Euler characteristic", criterion_2),
        ("standardization", criterion_3),
        ("parameter constraints", criterion_4),
        ("stabilization algebra", criterion_5),
        ("Heegaard-Kirby bridge", criterion_6),
        ("linking matrices", criterion_7),
        ("Andrews-Curtis", criterion_8),
    ];
    let mut failed = 0;
    let mut report = |i: usize, name: &str, o: Outcome, took: Duration| {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {i} [{tag}] {name}: {} ({took:.2?})", o.detail);
        if !o.pass {
            failed += 1;
        }
    };
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = f(&mut ledger);
        report(i + 1, name, o, start.elapsed());
    }
    let start = Instant::now();
    let o = criterion_9(&ledger);
    report(9, "soundness guard", o, start.elapsed());
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
