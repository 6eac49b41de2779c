mod common;

use common::{oracle_special_class_count, rs};
use num_traits::One;
use oscox::matroid::Word;
use oscox::verify::{element_rank, top_degree_check, verify, Verifier, FULL_VERIFY_GUARD, TOP_DEGREE_GUARD};
use oscox::{Error, Scalar};

fn verifier(t: &str) -> Verifier {
    Verifier::from_type(&t.parse().unwrap(), FULL_VERIFY_GUARD).unwrap()
}

#[test]
fn top_degree_examples() {
    for (t, expected) in [("A1", true), ("F4", true), ("A3", false), ("I2(6)", true), ("I2(5)", false)] {
        let r = top_degree_check(&rs(t), TOP_DEGREE_GUARD).unwrap();
        assert_eq!((r.minus_one, r.av_nonzero), (expected, expected), "{t}");
        assert!(r.pass);
    }
    // w_S of A2 is a reflection: it passes the projection test, but the
    // (-1)-condition fails
    let a2 = top_degree_check(&rs("A2"), TOP_DEGREE_GUARD).unwrap();
    assert!(a2.w_s_special && !a2.minus_one && !a2.av_nonzero);
    assert!(matches!(top_degree_check(&rs("H4"), TOP_DEGREE_GUARD), Err(Error::GroupTooLarge { .. })));
}

#[test]
fn special_class_counts() {
    for (t, m) in [("A1", 2), ("A2", 2), ("B2", 4), ("A3", 2)] {
        assert_eq!(verifier(t).special_classes().unwrap().len(), m, "{t}");
        assert_eq!(oracle_special_class_count(&rs(t)), m, "{t}");
    }
}

#[test]
fn basis_examples() {
    let v = verifier("A2");
    let basis = v.invariant_basis().unwrap();
    assert_eq!(basis.len(), 2);
    let alg = v.algebra();
    assert_eq!(basis[0].element, alg.one());
    let deg1 = &basis[1].element;
    assert_eq!(deg1.degree(), Some(1));
    // the orbit of a reflection is all three reflections, each with weight 1/3
    let third = Scalar::from_ratio(1, 3).unwrap();
    for r in 1..=3u16 {
        assert_eq!(deg1.coefficient(&Word::from([r])), third);
    }

    let b3 = verifier("B3");
    let basis = b3.invariant_basis().unwrap();
    let dims: usize = b3.invariant_dimensions().unwrap().iter().sum();
    assert_eq!(basis.len(), dims);
    let elements: Vec<_> = basis.iter().map(|b| &b.element).collect();
    assert_eq!(element_rank(&elements), dims);
}

#[test]
fn invariant_dimensions() {
    assert_eq!(verifier("A2").invariant_dimensions().unwrap(), vec![1, 1, 0]);
    assert_eq!(verifier("B2").invariant_dimensions().unwrap().iter().sum::<usize>(), 4);
    for t in ["A3", "H3", "I2(7)"] {
        assert_eq!(verifier(t).invariant_dimension(0).unwrap(), 1);
    }
}

#[test]
fn invariants_by_linear_algebra() {
    // kernel of (x -> x.s - x) over all generators, degree by degree
    for t in ["A3", "B3", "I2(6)"] {
        let v = verifier(t);
        let alg = v.algebra();
        let r = v.root_system();
        for p in 0..=r.rank() {
            let words: Vec<Word> = alg.graph().enumerate(Some(p)).collect();
            let n = words.len();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for s in r.simple_reflections() {
                let images: Vec<_> = words
                    .iter()
                    .map(|w| alg.act(&alg.basis_monomial(w).unwrap(), s).unwrap())
                    .collect();
                for (i, target) in words.iter().enumerate() {
                    let row = (0..n)
                        .map(|j| {
                            let c = images[j].coefficient(target);
                            if i == j { &c - &Scalar::one() } else { c }
                        })
                        .collect();
                    rows.push(row);
                }
            }
            let kernel = n - oscox::linalg::rank(&rows);
            assert_eq!(kernel, v.invariant_dimension(p).unwrap(), "{t} degree {p}");
        }
    }
}

#[test]
fn audit_examples() {
    let v = verifier("A3");
    let a = v.audit_shape(&[0, 2]).unwrap();
    assert_eq!(a.fixed_dim, 0);
    assert_eq!(a.normalizer_order, 8);
    let b2 = verifier("B2");
    assert!(b2.decomposition_audit().unwrap().iter().all(|a| a.fixed_dim == 1));
    let a2 = verifier("A2");
    let dims: Vec<usize> = a2.decomposition_audit().unwrap().iter().map(|a| a.fixed_dim).collect();
    assert_eq!(dims, vec![1, 1, 0]);
}

#[test]
fn flag_equivalence() {
    for t in ["B3", "D4", "H3", "A3"] {
        let v = verifier(t);
        for rec in v.shape_records().unwrap() {
            assert!(rec.flags_constant, "{t}");
            if rec.minus_one {
                let audit = v.audit_shape(&rec.representative).unwrap();
                assert_eq!(rec.special, audit.fixed_dim == 1, "{t} {:?}", rec.representative);
            }
        }
    }
}

#[test]
fn conjugate_representatives_agree_up_to_sign() {
    for t in ["B3", "A3", "H3"] {
        let v = verifier(t);
        for rec in v.special_classes().unwrap() {
            let base = v.invariant_element(&rec.representative).unwrap().element;
            for m in &rec.members {
                let other = v.invariant_element(m).unwrap().element;
                assert!(other == base || other == base.neg(), "{t} {m:?}");
            }
        }
    }
}

#[test]
fn full_reports() {
    for t in ["A2", "H3", "I2(5)", "B2xA1"] {
        let rep = verify(&t.parse().unwrap(), FULL_VERIFY_GUARD).unwrap();
        assert!(rep.pass, "{t}: {:?}", rep.failed_checks());
    }
    let h3 = verify(&"H3".parse().unwrap(), FULL_VERIFY_GUARD).unwrap();
    assert!(h3.top_degree.av_nonzero);
    let i25 = verify(&"I2(5)".parse().unwrap(), FULL_VERIFY_GUARD).unwrap();
    assert!(!i25.top_degree.av_nonzero);
    assert_eq!(verify(&"A2".parse().unwrap(), FULL_VERIFY_GUARD).unwrap().m, 2);

    let json = serde_json::to_value(&h3).unwrap();
    for key in ["type", "degrees", "shapes", "basis", "checks", "timings"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    for key in ["rep", "minus_one", "special", "fixed_dim"] {
        assert!(json["shapes"][0].get(key).is_some(), "{key}");
    }
    for key in ["shape", "support_size", "nonzero"] {
        assert!(json["basis"][0].get(key).is_some(), "{key}");
    }
    assert!(matches!(
        verify(&"A6".parse().unwrap(), FULL_VERIFY_GUARD),
        Err(Error::GroupTooLarge { .. })
    ));
}
