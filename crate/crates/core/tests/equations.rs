use quadword::doc::{implied_spec, solution_from_json, solution_to_json, spec_from_json, spec_to_json};
use quadword::equation::{min_h_bound, min_h_family, root_report, torus_conjugators};
use quadword::solvers::{lemma_l2_solution, solve_asymmetric, solve_power_lift, solve_torus_min_index, solve_torus_primitive, BaseSolution};
use quadword::{basic_commutator, build_rhs, classify, verify, EquationSpec, Error, Family, IndexValue, Solution, Word};

fn w(s: &str) -> Word {
    Word::parse(s, 1).unwrap()
}

fn terms(t: &[(&str, i64)]) -> EquationSpec {
    EquationSpec::new(1, t.iter().map(|(s, c)| (w(s), *c)).collect()).unwrap()
}

#[test]
fn rhs_examples() {
    assert_eq!(build_rhs(&terms(&[("1", 1), ("y1", 1)])), w("x1 y1^2 x1^-1 y1^-2"));
    let b = basic_commutator(1).unwrap();
    assert_eq!(build_rhs(&terms(&[("1", 5)])), b.pow(5));
    assert!(EquationSpec::new(1, vec![(w("y1"), 0)]).is_err());
    assert!(EquationSpec::new(1, vec![]).is_err());
    assert!(EquationSpec::new(2, vec![(w("y1"), 1)]).is_err());
    assert_eq!(torus_conjugators(1, 3), vec![w("1"), w("y1"), w("y1^2")]);
}

#[test]
fn bound_examples() {
    assert_eq!(min_h_bound(&terms(&[("1", 1), ("y1", 1)])).unwrap(), 1);
    assert_eq!(min_h_bound(&terms(&[("1", 4), ("y1", 2)])).unwrap(), 3);
    for l in 1..=6u32 {
        for c in 1..=6i64 {
            let h = min_h_bound(&EquationSpec::torus(l, c).unwrap()).unwrap();
            // smallest h with h >= l(c-1)/2 + 1
            let want = (l as i64 * (c - 1) + 1).div_euclid(2) + 1;
            assert_eq!(h as i64, want.max(1), "l={l} c={c}");
            assert_eq!(min_h_family(1, l, c as u32), h);
        }
    }
    assert_eq!(min_h_family(1, 1, 1), 1);
    assert_eq!(min_h_family(1, 2, 2), 2);
    assert_eq!(min_h_family(2, 1, 1), 2);
    assert_eq!(min_h_bound(&terms(&[("1", 1), ("y1", -1)])), Err(Error::MixedSigns));
}

#[test]
fn verify_examples() {
    let s = Solution::new(1, vec![(w("x1"), w("y1^2"))], Family::External);
    assert!(verify(&s, &terms(&[("1", 1), ("y1", 1)])).unwrap());
    assert!(verify(&lemma_l2_solution(), &terms(&[("1", 2), ("y1", 2)])).unwrap());
    let s = Solution::new(1, vec![(w("x1"), w("y1"))], Family::External);
    assert!(!verify(&s, &terms(&[("1", 2)])).unwrap());
    let spec2 = EquationSpec::new(2, vec![(Word::identity(2), 1)]).unwrap();
    assert!(matches!(verify(&s, &spec2), Err(Error::RankMismatch { .. })));
}

#[test]
fn classify_examples() {
    assert_eq!(classify(&solve_torus_min_index(3, 1).unwrap()), IndexValue::finite(3));
    assert!(classify(&solve_torus_primitive(3, 2).unwrap()).is_one());
    assert!(classify(&solve_asymmetric(2, 1).unwrap()).is_one());
}

#[test]
fn report_examples() {
    let spec = EquationSpec::torus(2, 2).unwrap();
    let r = root_report(&solve_torus_min_index(2, 2).unwrap(), &spec).unwrap();
    assert_eq!((r.degree, r.index.clone(), r.nr, r.mr, r.wecken, r.h), (4, IndexValue::finite(2), 2, Some(2), Some(true), 2));
    let r = root_report(&solve_torus_primitive(2, 2).unwrap(), &spec).unwrap();
    assert_eq!((r.nr, r.mr, r.wecken), (1, Some(2), Some(false)));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["NR"], 1);
    assert_eq!(json["MR"], 2);
    assert_eq!(json["wecken"], false);
    for k in 2..=5 {
        let s = solve_asymmetric(k, 0).unwrap();
        let spec = implied_spec(&s).unwrap();
        let r = root_report(&s, &spec).unwrap();
        assert_eq!((r.degree, r.nr, r.mr), (2 * k as i64, 1, Some(2)));
    }
    let bad = Solution::new(1, vec![(w("x1"), w("y1"))], Family::External);
    assert!(matches!(root_report(&bad, &spec), Err(Error::Unverified(_))));
}

#[test]
fn report_zero_degree_and_infinite_index() {
    let spec = terms(&[("1", 1), ("1", -1)]);
    let s = Solution::new(1, vec![(w("x1"), w("x1^2"))], Family::External);
    let r = root_report(&s, &spec).unwrap();
    assert_eq!((r.nr, r.mr, r.wecken), (0, None, None));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["MR"], "not computed");
    assert_eq!(json["index"], "infinite");
}

#[test]
fn nr_never_exceeds_mr() {
    for l in 1..=5 {
        for c in 1..=4 {
            let spec = EquationSpec::torus(l, c as i64).unwrap();
            let mut sols = vec![solve_torus_min_index(l, c).unwrap()];
            if c >= 2 || l == 1 {
                sols.push(solve_torus_primitive(l, c).unwrap());
            }
            for s in sols {
                let r = root_report(&s, &spec).unwrap();
                assert!(r.nr as i64 <= r.mr.unwrap());
                assert_eq!(r.wecken, Some(r.nr as i64 == r.mr.unwrap()));
            }
        }
    }
}

#[test]
fn documents_roundtrip() {
    let base = BaseSolution::torus(2, 3).unwrap();
    let sol = solve_power_lift(&base, 3).unwrap();
    let text = solution_to_json(&sol);
    let back = solution_from_json(&text).unwrap();
    assert_eq!(back, sol);
    assert_eq!(solution_to_json(&back), text);
    let spec = implied_spec(&sol).unwrap();
    assert!(verify(&sol, &spec).unwrap());
    assert_eq!(spec_from_json(&spec_to_json(&spec)).unwrap(), spec);
    assert!(spec_from_json(r#"{"g":1,"terms":[["1",0]]}"#).is_err());
    assert!(solution_from_json(r#"{"g":1,"family":"nope","params":{},"pairs":[]}"#).is_err());
}
