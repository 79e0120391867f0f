use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trisect::cli::format::{parse_diagram, DiagramFile};
use trisect::cli::report::Report;
use trisect::diagram::{
    canonical_form, detect_k, heegaard_h1, CatalogEntry, HeegaardDiagram, System, TrisectionDiagram,
};
use trisect::gprc_ac::{ab_det, apply_ac_move, canonical_key, AcMove, BalancedPresentation};
use trisect::kirby::{gprc_necessary_check, matrix_handleslide, surgery_h1, LinkingMatrix};
use trisect::moves::{connected_sum, random_slides, Sign};
use trisect::surface_core::word::letter_for;
use trisect::surface_core::{
    abelianize, algebraic_intersection, lagrangian_verdict, tietze_simplify, GroupPresentation, HomologyClass,
    IntegerMatrix, SurfaceWord, TietzeConfig, Word,
};
use trisect::{Verdict, VerdictStatus, Witness};

fn entry() -> impl Strategy<Value = CatalogEntry> {
    (0..6usize).prop_map(|i| CatalogEntry::ALL[i])
}

fn sum(entries: &[CatalogEntry]) -> TrisectionDiagram {
    entries
        .iter()
        .map(|e| e.diagram())
        .reduce(|a, b| connected_sum(&a, &b))
        .unwrap_or_else(TrisectionDiagram::genus_zero)
}

fn word(generators: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::new(ls.into_iter().map(|(g, inv)| letter_for(g, inv))).unwrap())
}

fn class(genus: usize) -> impl Strategy<Value = HomologyClass> {
    prop::collection::vec(-4i64..=4, 2 * genus).prop_map(move |c| HomologyClass::from_i64(genus, &c).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, cols), rows)
        .prop_map(|r| IntegerMatrix::from_rows(&r).unwrap())
}

fn symmetric(max: usize) -> impl Strategy<Value = LinkingMatrix> {
    (1..=max)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n * n)))
        .prop_map(|(n, v)| {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| v[i.min(j) * n + i.max(j)]).collect())
                .collect();
            LinkingMatrix::from_rows(&rows).unwrap()
        })
}

fn slides(n: usize) -> impl Strategy<Value = Vec<(usize, usize, bool)>> {
    prop::collection::vec((0..n, 1..n.max(2), any::<bool>()), 0..8)
}

fn apply_matrix_slides(m: &LinkingMatrix, ops: &[(usize, usize, bool)]) -> LinkingMatrix {
    let n = m.components();
    let mut cur = m.clone();
    if n < 2 {
        return cur;
    }
    for &(i, d, plus) in ops {
        let j = (i + d % (n - 1) + 1) % n;
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        cur = matrix_handleslide(&cur, i % n, j, sign).unwrap();
    }
    cur
}

fn ac_move(n: usize) -> impl Strategy<Value = AcMove> {
    prop_oneof![
        (0..n).prop_map(AcMove::InvertRelator),
        (0..n, 1..n.max(2)).prop_map(move |(t, d)| AcMove::MultiplyRelators {
            target: t,
            source: (t + d) % n
        }),
        (0..n, 0..n, any::<bool>()).prop_map(|(relator, generator, inverse)| AcMove::ConjugateRelator {
            relator,
            generator,
            inverse
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_antisymmetric((u, v) in (1..=3usize).prop_flat_map(|g| (class(g), class(g)))) {
        let uv = algebraic_intersection(&u, &v).unwrap();
        let vu = algebraic_intersection(&v, &u).unwrap();
        prop_assert_eq!(uv, -vu);
    }

    #[test]
    fn abelianize_is_a_homomorphism((g, a, b) in (1..=3usize).prop_flat_map(|g| (Just(g), word(2 * g, 12), word(2 * g, 12)))) {
        let sa = SurfaceWord::new(g, a.clone()).unwrap();
        let sb = SurfaceWord::new(g, b.clone()).unwrap();
        let sab = SurfaceWord::new(g, a.concat(&b)).unwrap();
        prop_assert_eq!(abelianize(&sab), abelianize(&sa).checked_add(&abelianize(&sb)).unwrap());
        prop_assert!(abelianize(&SurfaceWord::new(g, a.concat(&a.inverse())).unwrap()).is_zero());
    }

    #[test]
    fn smith_form_recomposes(m in (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| matrix(r, c))) {
        let snf = m.smith_normal_form();
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert_eq!(snf.u.determinant().magnitude().clone(), 1u32.into());
        prop_assert_eq!(snf.v.determinant().magnitude().clone(), 1u32.into());
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]) == 0.into());
        }
    }

    #[test]
    fn lagrangian_test_ignores_basis_changes(
        (g, classes, i, d, plus) in (1..=3usize).prop_flat_map(|g| {
            (Just(g), prop::collection::vec(class(g), g), 0..g, 1..g.max(2), any::<bool>())
        })
    ) {
        let before = lagrangian_verdict(&classes, g).unwrap().status;
        let mut moved = classes.clone();
        if g > 1 {
            let j = (i + d) % g;
            let other = if plus { classes[j].clone() } else { classes[j].scale(&(-1).into()) };
            moved[i] = moved[i].checked_add(&other).unwrap();
        }
        moved.swap(0, g - 1);
        prop_assert_eq!(lagrangian_verdict(&moved, g).unwrap().status, before);
    }

    #[test]
    fn tietze_preserves_abelianization(
        (n, rels) in (1..=3usize).prop_flat_map(|n| (Just(n), prop::collection::vec(word(n, 8), 0..=3)))
    ) {
        let p = GroupPresentation::new(n, rels).unwrap();
        let out = tietze_simplify(&p, TietzeConfig::default());
        prop_assert_eq!(out.presentation.abelianization(), p.abelianization());
        if out.verdict.is_verified() {
            let ab = p.abelianization();
            prop_assert!(ab.torsion.is_empty());
            prop_assert_eq!(out.presentation.relators().len(), 0);
            prop_assert_eq!(out.presentation.num_generators(), ab.free_rank);
        }
    }

    #[test]
    fn connected_sum_is_associative_with_unit(a in entry(), b in entry(), c in entry()) {
        let (a, b, c) = (a.diagram(), b.diagram(), c.diagram());
        let left = connected_sum(&connected_sum(&a, &b), &c);
        let right = connected_sum(&a, &connected_sum(&b, &c));
        prop_assert_eq!(canonical_form(&left), canonical_form(&right));
        let unit = TrisectionDiagram::genus_zero();
        prop_assert_eq!(canonical_form(&connected_sum(&a, &unit)), canonical_form(&a));
        prop_assert_eq!(canonical_form(&connected_sum(&unit, &a)), canonical_form(&a));
    }

    #[test]
    fn slides_preserve_boundary_homology(entries in prop::collection::vec(entry(), 2..=3), seed in any::<u64>(), n in 1..12usize) {
        let t = sum(&entries);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, _) = random_slides(&t, n, &mut rng);
        for (x, y) in t.boundary_pairs().iter().zip(s.boundary_pairs().iter()) {
            prop_assert_eq!(heegaard_h1(x), heegaard_h1(y));
        }
    }

    #[test]
    fn canonical_key_symmetries(rels in prop::collection::vec(word(2, 6), 2), rot in 0..6usize) {
        let p = BalancedPresentation::new(rels.clone()).unwrap();
        let key = canonical_key(&p);
        let swapped = BalancedPresentation::new(vec![rels[1].clone(), rels[0].clone()]).unwrap();
        prop_assert_eq!(canonical_key(&swapped), key.clone());
        let inverted = BalancedPresentation::new(vec![rels[0].inverse(), rels[1].clone()]).unwrap();
        prop_assert_eq!(canonical_key(&inverted), key.clone());
        let rotated = BalancedPresentation::new(vec![rels[0].cyclically_reduced().rotate_left(rot), rels[1].clone()]).unwrap();
        prop_assert_eq!(canonical_key(&rotated), canonical_key(&BalancedPresentation::new(vec![rels[0].cyclically_reduced(), rels[1].clone()]).unwrap()));
        let renamed = BalancedPresentation::new(rels.iter().map(|r| r.map_letters(|l| if l.abs() == 1 { l.signum() * 2 } else { l.signum() })).collect()).unwrap();
        prop_assert_eq!(canonical_key(&renamed), key);
    }

    #[test]
    fn ab_det_magnitude_is_invariant(rels in prop::collection::vec(word(2, 6), 2), moves in prop::collection::vec(ac_move(2), 0..12)) {
        let p = BalancedPresentation::new(rels).unwrap();
        let det = ab_det(&p).magnitude().clone();
        let mut cur = p;
        for m in &moves {
            cur = apply_ac_move(&cur, m).unwrap();
        }
        prop_assert_eq!(ab_det(&cur).magnitude().clone(), det);
    }

    #[test]
    fn matrix_slides_preserve_surgery((m, ops) in symmetric(6).prop_flat_map(|m| { let n = m.components(); (Just(m), slides(n)) })) {
        let slid = apply_matrix_slides(&m, &ops);
        prop_assert_eq!(surgery_h1(&slid), surgery_h1(&m));
        prop_assert_eq!(gprc_necessary_check(&slid).status, gprc_necessary_check(&m).status);
    }

    #[test]
    fn printed_diagrams_parse_back(entries in prop::collection::vec(entry(), 1..=3), seed in any::<u64>(), n in 0..6usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, _) = random_slides(&sum(&entries), n, &mut rng);
        let text = DiagramFile::Trisection(t.clone()).to_string();
        let DiagramFile::Trisection(back) = parse_diagram(&text).unwrap() else { panic!("kind changed") };
        for s in System::ALL {
            let words = |d: &TrisectionDiagram| d.system(s).curves().iter().map(|c| c.word().clone()).collect::<Vec<_>>();
            prop_assert_eq!(words(&back), words(&t));
        }
        prop_assert_eq!(back.declared_params(), t.declared_params());
        prop_assert_eq!(DiagramFile::Trisection(back).to_string(), text);
    }

    #[test]
    fn exit_code_depends_only_on_the_verdict(status in 0..4usize, fields in prop::collection::vec(("[a-z]{1,6}", "[ -~]{0,12}"), 0..4)) {
        let verdict = match status {
            0 => Some(Verdict::verified("v", Witness::ZeroMatrix { matrix: IntegerMatrix::zeros(1, 1) })),
            1 => Some(Verdict::refuted("r", Witness::ZeroMatrix { matrix: IntegerMatrix::identity(1) })),
            2 => Some(Verdict::unknown("u")),
            _ => None,
        };
        let mut r = Report::new("op");
        for (k, v) in &fields {
            r.field(k, v);
        }
        r.verdict = verdict.clone();
        let want = verdict.map_or(0, |v| match v.status {
            VerdictStatus::Verified => 0,
            VerdictStatus::Refuted => 1,
            VerdictStatus::Unknown => 2,
        });
        prop_assert_eq!(r.exit_code(), want);
    }
}

#[test]
fn standard_diagrams_detect_their_rank() {
    for g in 0..=4 {
        for k in 0..=g {
            let (found, v) = detect_k(&HeegaardDiagram::standard(g, k).unwrap(), TietzeConfig::default());
            assert_eq!(found, k, "({g},{k})");
            assert!(v.is_verified(), "({g},{k}): {}", v.reason);
        }
    }
}
