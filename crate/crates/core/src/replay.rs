//! Re-derives verdicts from witnesses alone, without repeating any search.

use num_traits::Signed;

use crate::diagram::invariants::{heegaard_pi1, pairing_ok, standard_matching};
use crate::error::{Error, Result};
use crate::gprc_ac::{ab_det, canonical_key, replay_path, BalancedPresentation};
use crate::kirby::hk::{primitive_matching, primitive_pattern_ok};
use crate::moves::standardize::{apply_step, check_param_constraints, classify_pieces};
use crate::surface_core::homology::lagrangian_failure;
use crate::surface_core::tietze::apply_tietze_step;
use crate::verdict::{HomologyClaim, Verdict, VerdictStatus, Witness};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

/// The status a witness demonstrates on its own. Errors mean the witness does
/// not certify anything (malformed, or its claim fails to check).
pub fn replay(w: &Witness) -> Result<VerdictStatus> {
    use VerdictStatus::*;
    match w {
        Witness::Lagrangian { genus, classes } => Ok(match lagrangian_failure(*genus, classes)? {
            None => Verified,
            Some(_) => Refuted,
        }),
        Witness::Homology { matrix, claim } => {
            let group = matrix.cokernel();
            let holds = match claim {
                HomologyClaim::FreeOfRank(r) => group.is_free() && group.free_rank == *r,
                HomologyClaim::Free => group.is_free(),
            };
            Ok(if holds { Verified } else { Refuted })
        }
        Witness::Tietze { start, steps, rank } => {
            let end = steps.iter().try_fold(start.clone(), |p, s| apply_tietze_step(&p, s))?;
            if end.relators().is_empty() && end.num_generators() == *rank {
                Ok(Verified)
            } else {
                Err(invalid(format!(
                    "Tietze steps end with {} generators and {} relators, not a free group of rank {rank}",
                    end.num_generators(),
                    end.relators().len()
                )))
            }
        }
        Witness::StandardPairing { alpha, beta, matching } => {
            if pairing_ok(alpha, beta, matching) {
                Ok(Verified)
            } else {
                Err(invalid("matching does not show the standard pattern"))
            }
        }
        Witness::NoStandardPairing { alpha, beta } => match standard_matching(alpha, beta) {
            None => Ok(Refuted),
            Some(_) => Err(invalid("a standard pairing exists")),
        },
        Witness::Params {
            diagram,
            params,
            evidence,
        } => {
            if params.g != diagram.genus() || evidence.len() != 3 {
                return Err(invalid("parameter witness has the wrong shape"));
            }
            for ((pair, w), k) in diagram.boundary_pairs().iter().zip(evidence).zip(params.ks()) {
                let Witness::Tietze { start, rank, .. } = w else {
                    return Err(invalid("boundary evidence must be Tietze reductions"));
                };
                if *start != heegaard_pi1(pair).normalized() || *rank != k || replay(w)? != Verified {
                    return Err(invalid("boundary evidence does not match the diagram"));
                }
            }
            Ok(Verified)
        }
        Witness::All(parts) => {
            for p in parts {
                if replay(p)? != Verified {
                    return Err(invalid("a conjunct does not replay to Verified"));
                }
            }
            Ok(Verified)
        }
        Witness::ParamConstraint { params } => match check_param_constraints(params) {
            Err(_) => Ok(Refuted),
            Ok(()) => Err(invalid(format!("{params} satisfies the constraints"))),
        },
        Witness::Decomposition { input, steps, summands } => {
            let mut pieces = vec![input.recognized()];
            for s in steps {
                apply_step(&mut pieces, s)?;
            }
            match classify_pieces(&pieces) {
                Some(found) if found == *summands => Ok(Verified),
                _ => Err(invalid("steps do not end at the listed genus-one summands")),
            }
        }
        Witness::Stuck { .. } => Ok(Unknown),
        Witness::AcPath { start, moves } => {
            let end = replay_path(start, moves)?;
            if canonical_key(&end) == canonical_key(&BalancedPresentation::trivial(end.n())) {
                Ok(Verified)
            } else {
                Err(invalid("the moves do not end at a trivial presentation"))
            }
        }
        Witness::AbelianObstruction { presentation, det } => {
            let actual = ab_det(presentation);
            if actual != *det {
                Err(invalid(format!("determinant is {actual}, not {det}")))
            } else if det.abs() == 1.into() {
                Err(invalid("a unit determinant obstructs nothing"))
            } else {
                Ok(Refuted)
            }
        }
        Witness::Primitive { link, beta, matching } => match matching {
            Some(m) if primitive_pattern_ok(link, beta, m) => Ok(Verified),
            Some(_) => Err(invalid("matching is not primitive")),
            None => match primitive_matching(link, beta) {
                None => Ok(Refuted),
                Some(_) => Err(invalid("a primitive matching exists")),
            },
        },
        Witness::ZeroMatrix { matrix } => Ok(if matrix.is_zero() { Verified } else { Refuted }),
    }
}

/// Soundness of a verdict: a `Verified` or `Refuted` verdict must carry a
/// witness that replays to the same status. `Unknown` always passes.
pub fn check_verdict(v: &Verdict) -> Result<()> {
    if v.status == VerdictStatus::Unknown {
        return Ok(());
    }
    let w = v
        .witness
        .as_ref()
        .ok_or_else(|| invalid(format!("{} verdict without a witness", v.status)))?;
    let replayed = replay(w)?;
    if replayed == v.status {
        Ok(())
    } else {
        Err(invalid(format!(
            "verdict says {} but the witness shows {replayed}",
            v.status
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::catalog::CatalogEntry;
    use crate::diagram::{detect_k, trisection_params, HeegaardDiagram};
    use crate::gprc_ac::{ac_search, ak_presentation, AcSearchConfig};
    use crate::kirby::{gprc_necessary_check, LinkingMatrix};
    use crate::moves::{standardize, StandardizeConfig};
    use crate::surface_core::matrix::IntegerMatrix;
    use crate::surface_core::tietze::TietzeConfig;

    #[test]
    fn engine_verdicts_replay() {
        let config = TietzeConfig::default();
        for e in CatalogEntry::ALL {
            let (_, v) = trisection_params(&e.diagram(), config);
            check_verdict(&v).unwrap();
            let s = standardize(&e.diagram(), &StandardizeConfig::default()).unwrap();
            check_verdict(&s.verdict).unwrap();
        }
        let (_, v) = detect_k(&HeegaardDiagram::standard(3, 1).unwrap(), config);
        check_verdict(&v).unwrap();
        let out = ac_search(&ak_presentation(1).unwrap(), &AcSearchConfig::new(32, 20));
        check_verdict(&out.verdict()).unwrap();
        for m in [LinkingMatrix::zero(2), LinkingMatrix::from_rows(&[vec![1]]).unwrap()] {
            check_verdict(&gprc_necessary_check(&m)).unwrap();
        }
    }

    #[test]
    fn tampered_witnesses_fail() {
        let matrix = IntegerMatrix::from_rows(&[vec![2]]).unwrap();
        let v = Verdict::verified(
            "claims Z",
            Witness::Homology {
                matrix,
                claim: HomologyClaim::FreeOfRank(1),
            },
        );
        assert!(check_verdict(&v).is_err());
        assert!(check_verdict(&Verdict {
            witness: None,
            ..Verdict::unknown("x")
        })
        .is_ok());
        let bare = Verdict {
            status: VerdictStatus::Refuted,
            reason: "no evidence".into(),
            witness: None,
        };
        assert!(check_verdict(&bare).is_err());
        let obstruction = Witness::AbelianObstruction {
            presentation: ak_presentation(2).unwrap(),
            det: 3.into(),
        };
        assert!(replay(&obstruction).is_err());
    }

    #[test]
    fn decomposition_of_word_curves_replays() {
        let text = "trisection genus=4\n\
                    alpha: @1(1,0) ; @2(1,0) ; @3(1,0) ; @4(1,0)\n\
                    beta: x1 ; @2(1,0) ; x3 X4 ; x4 X2\n\
                    gamma: @1(1,0) ; @2(0,1) ; @3(1,0) ; @4(1,0)\n";
        let crate::cli::format::DiagramFile::Trisection(t) = crate::cli::format::parse_diagram(text).unwrap() else {
            panic!("trisection expected");
        };
        let d = crate::moves::decompose(&t, &StandardizeConfig::default());
        assert!(d.verdict.is_verified());
        check_verdict(&d.verdict).unwrap();
    }
}
