use proptest::prelude::*;
use quadword::abelian::SubgroupImage;
use quadword::equation::{min_h_bound, min_h_family};
use quadword::solvers::{
    asymmetric_factors, express_commutator_power, l2_c_step, lemma_l2_solution, normalize_negative_c,
    p2_prefix, p3_prefix, solve_asymmetric, solve_power_lift, solve_power_lift_traced,
    solve_torus_min_index, solve_torus_primitive, BaseSolution, Relabeling, Source,
};
use quadword::oracle::{witness_pair, wicks_is_commutator};
use quadword::{basic_commutator, classify, verify, EquationSpec, Error, Family, IndexValue, Solution, Word};

fn w(s: &str) -> Word {
    Word::parse(s, 1).unwrap()
}

fn product(pairs: &[(Word, Word)], rank: u32) -> Word {
    pairs
        .iter()
        .fold(Word::identity(rank), |acc, (u, v)| acc.mul(&u.commutator(v)))
}

#[test]
fn power_lift_examples() {
    let base = BaseSolution::new(
        Solution::new(1, vec![(w("x1"), w("y1"))], Family::External),
        vec![Word::identity(1)],
    )
    .unwrap();
    let sol = solve_power_lift(&base, 3).unwrap();
    assert_eq!(sol.h(), 2);
    assert_eq!(product(&sol.pairs, 1), basic_commutator(1).unwrap().pow(3));

    let torus = BaseSolution::torus(1, 2).unwrap();
    let sol = solve_power_lift(&torus, 2).unwrap();
    assert_eq!(sol.h(), 2);
    assert!(verify(&sol, &EquationSpec::torus(2, 2).unwrap()).unwrap());
    assert_eq!(classify(&sol), IndexValue::finite(2));
    assert!(classify(&lemma_l2_solution()).is_one());

    let g2 = BaseSolution::new(
        Solution::new(
            2,
            vec![(Word::x(2, 1), Word::y(2, 1)), (Word::x(2, 2), Word::y(2, 2))],
            Family::External,
        ),
        vec![Word::identity(2)],
    )
    .unwrap();
    let sol = solve_power_lift(&g2, 1).unwrap();
    assert_eq!(sol.pairs, g2.solution().pairs);
}

#[test]
fn base_is_checked() {
    let wrong = Solution::new(1, vec![(w("x1"), w("y1^2"))], Family::External);
    assert!(BaseSolution::new(wrong, vec![Word::identity(1)]).is_err());
    assert!(solve_power_lift(&BaseSolution::torus(1, 2).unwrap(), 0).is_err());
}

#[test]
fn lifted_grid_counts_and_lattice() {
    for g in 1..=3 {
        for l in 1..=5 {
            let base = BaseSolution::torus(g, l).unwrap();
            let lattice = SubgroupImage::of_words(g, base.solution().words()).hnf();
            for c in 1..=5 {
                let (sol, trace) = solve_power_lift_traced(&base, c).unwrap();
                assert_eq!(sol.h() as u64, min_h_family(g, l, c), "g={g} l={l} c={c}");
                let spec = EquationSpec::uniform(g, base.conjugators(), c as i64).unwrap();
                assert!(verify(&sol, &spec).unwrap());
                assert_eq!(SubgroupImage::of_words(g, sol.words()).hnf(), lattice);
                let longest = sol.words().map(Word::len).max().unwrap();
                assert!(longest < 1_000_000);
                if l % 2 == 0 && c > 1 {
                    // one step in c adds l(2g-1)/2 pairs
                    let step = min_h_family(g, l, c) - min_h_family(g, l, c - 1);
                    assert_eq!(step, (l * (2 * g - 1) / 2) as u64);
                    assert_eq!(trace.count(c, Source::Peeled), (l as usize - 2) / 2);
                }
                if l % 2 == 1 && l > 1 && c > 2 {
                    let step = min_h_family(g, l, c) - min_h_family(g, l, c - 2);
                    assert_eq!(step, (l * (2 * g - 1)) as u64);
                    assert_eq!(
                        trace.count(c, Source::Peeled) + trace.count(c, Source::Closing),
                        l as usize - 2
                    );
                }
                if l % 2 == 1 && l > 1 && c == 2 {
                    assert_eq!(trace.count(2, Source::Peeled), (l as usize - 1) / 2);
                }
            }
        }
    }
}

#[test]
fn base_pairs_lead_odd_lifts() {
    // the first l(g-1)+1 pairs solve the c = 1 equation when the odd-l step
    // or the even-c single block puts the base first
    for g in 1..=2 {
        for (l, c) in [(3, 2), (3, 3), (5, 4), (1, 2), (1, 4)] {
            let base = BaseSolution::torus(g, l).unwrap();
            let sol = solve_power_lift(&base, c).unwrap();
            let k = base.solution().h();
            let head = Solution::new(g, sol.pairs[..k].to_vec(), Family::External);
            let spec = EquationSpec::uniform(g, base.conjugators(), 1).unwrap();
            assert!(verify(&head, &spec).unwrap(), "g={g} l={l} c={c}");
        }
    }
}

#[test]
fn commutator_power_examples() {
    assert_eq!(express_commutator_power(1).unwrap().pairs, vec![(w("x1"), w("y1"))]);
    assert_eq!(express_commutator_power(2).unwrap().h(), 2);
    let b = basic_commutator(1).unwrap();
    for n in 1..=12 {
        let sol = express_commutator_power(n).unwrap();
        assert_eq!(sol.h(), (n as usize + 2) / 2);
        assert_eq!(product(&sol.pairs, 1), b.pow(n as i64));
    }
}

#[test]
fn torus_min_examples() {
    assert_eq!(solve_torus_min_index(2, 1).unwrap().pairs, vec![(w("x1"), w("y1^2"))]);
    assert_eq!(solve_torus_min_index(1, 2).unwrap().h(), 2);
    assert_eq!(classify(&solve_torus_min_index(3, 2).unwrap()), IndexValue::finite(3));
    assert_eq!(solve_torus_min_index(3, 2).unwrap().family, Family::TorusMinIndex);
}

#[test]
fn l2_family_steps() {
    let lemma = lemma_l2_solution();
    assert_eq!(lemma.h(), 2);
    assert!(verify(&lemma, &EquationSpec::torus(2, 2).unwrap()).unwrap());
    let three = l2_c_step(&lemma).unwrap();
    assert_eq!(three.h(), 3);
    assert!(verify(&three, &EquationSpec::torus(2, 3).unwrap()).unwrap());
    let four = l2_c_step(&three).unwrap();
    assert_eq!(four.h(), 4);
    assert!(verify(&four, &EquationSpec::torus(2, 4).unwrap()).unwrap());
    let (u, v) = &four.pairs[3];
    assert_eq!(quadword::abelianize(u).coords, vec![1, 0]);
    assert_eq!(quadword::abelianize(v).coords, vec![0, 2]);
    let mut broken = lemma.clone();
    broken.pairs.pop();
    assert!(l2_c_step(&broken).is_err());
}

#[test]
fn torus_primitive_examples() {
    assert_eq!(solve_torus_primitive(2, 2).unwrap().pairs, lemma_l2_solution().pairs);
    let s = solve_torus_primitive(4, 2).unwrap();
    assert_eq!(s.h(), 3);
    assert!(classify(&s).is_one());
    let s = solve_torus_primitive(3, 3).unwrap();
    assert_eq!(s.h(), 4);
    assert!(classify(&s).is_one());
    assert!(matches!(solve_torus_primitive(2, 1), Err(Error::InvalidParameter(_))));
    assert!(solve_torus_primitive(2, 0).is_err());
}

#[test]
fn torus_primitive_wide_grid() {
    for l in 1..=9 {
        for c in 2..=6 {
            let sol = solve_torus_primitive(l, c).unwrap();
            assert!(classify(&sol).is_one(), "l={l} c={c}");
            assert_eq!(sol.h() as u64, min_h_family(1, l, c));
        }
    }
}

#[test]
fn asymmetric_examples() {
    let s = solve_asymmetric(1, 0).unwrap();
    assert_eq!(s.h(), 1);
    let b = basic_commutator(1).unwrap();
    assert_eq!(product(&s.pairs, 1), b.mul(&b.conjugate(&w("y1"))));
    let s = solve_asymmetric(2, 1).unwrap();
    assert_eq!(s.h(), 2);
    assert!(classify(&s).is_one());
    let f = asymmetric_factors(3, 2).unwrap();
    for t in 1..=2 {
        assert_eq!(p2_prefix(t, 3, 2).unwrap(), product(&f[..t as usize], 1));
    }
    for (k, l) in [(2, 1), (5, 3), (4, 1)] {
        let f = asymmetric_factors(k, l).unwrap();
        assert_eq!(p2_prefix(1, k, l).unwrap(), product(&f[..1], 1));
    }
    let f = asymmetric_factors(4, 1).unwrap();
    assert_eq!(p3_prefix(2, 4, 1).unwrap(), product(&f[1..3], 1));
    assert!(p3_prefix(3, 4, 1).is_err());
    assert!(solve_asymmetric(3, 3).is_err());
}

#[test]
fn asymmetric_matches_bound() {
    for k in 1..=7 {
        for l in 0..k {
            let spec = EquationSpec::new(
                1,
                vec![(Word::identity(1), (k + l) as i64), (w("y1"), (k - l) as i64)],
            )
            .unwrap();
            assert_eq!(min_h_bound(&spec).unwrap(), k as u64);
            assert_eq!(solve_asymmetric(k, l).unwrap().h(), k as usize);
        }
    }
}

#[test]
fn negative_exponents() {
    let spec = EquationSpec::new(1, vec![(Word::identity(1), -1)]).unwrap();
    let (pos, relabel) = normalize_negative_c(&spec).unwrap();
    assert_eq!(pos.terms, vec![(Word::identity(1), 1)]);
    assert_eq!(Relabeling::new(2).apply(&Word::x(2, 1)).unwrap(), Word::y(2, 2));
    let mixed = EquationSpec::new(1, vec![(Word::identity(1), -1), (w("y1"), -2)]).unwrap();
    assert_eq!(normalize_negative_c(&mixed), Err(Error::NonuniformExponents));

    let sol = Solution::new(1, vec![(w("x1"), w("y1"))], Family::External);
    assert!(verify(&sol, &pos).unwrap());
    assert!(verify(&relabel.apply_solution(&sol).unwrap(), &spec).unwrap());

    // relabeled products of three or more blocks are no longer single commutators
    for l in 1..=2 {
        let (pos1, _) = normalize_negative_c(&EquationSpec::torus(l, -1).unwrap()).unwrap();
        let rhs = quadword::build_rhs(&pos1);
        let wit = wicks_is_commutator(&rhs).expect("one commutator");
        let found = Solution::new(1, vec![witness_pair(&rhs, &wit)], Family::External);
        let conj: Vec<Word> = pos1.terms.iter().map(|(w, _)| w.clone()).collect();
        let base = BaseSolution::new(found, conj).unwrap();
        for c in 1..=3 {
            let spec = EquationSpec::torus(l, -(c as i64)).unwrap();
            let (pos, relabel) = normalize_negative_c(&spec).unwrap();
            let sol = solve_power_lift(&base, c).unwrap();
            assert!(verify(&sol, &pos).unwrap());
            let back = relabel.apply_solution(&sol).unwrap();
            assert!(verify(&back, &spec).unwrap(), "l={l} c={c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_family_verifies(l in 1u32..6, c in 2u32..6, k in 1u32..6) {
        let t = EquationSpec::torus(l, c as i64).unwrap();
        let a = solve_torus_min_index(l, c).unwrap();
        prop_assert!(verify(&a, &t).unwrap());
        prop_assert!(min_h_bound(&t).unwrap() <= a.h() as u64);
        let b = solve_torus_primitive(l, c).unwrap();
        prop_assert!(verify(&b, &t).unwrap());
        prop_assert!(classify(&b).at_most(l as u64));
        let lo = k.saturating_sub(c % k + 1);
        let s = solve_asymmetric(k, lo).unwrap();
        prop_assert!(classify(&s).at_most(2));
    }
}
