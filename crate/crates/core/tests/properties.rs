use facloc::instances::{metric_closure, ConstructionName, PaperConstruction};
use facloc::mechanisms::{dictatorship, leftmost_closest, two_extremes};
use facloc::model::{agent_cost, cost, expected_cost, max_cost, social_cost, DistanceMatrix};
use facloc::scalar::{frac, int};
use facloc::solver::{optimal, Ratio};
use facloc::verify::{check_anonymity, find_group_deviation, find_unilateral_deviation, MisreportSet};
use facloc::{AgentId, CandidateId, Instance, Lottery, Mechanism, Objective, Outcome, Point, Scalar, Selection};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Half-integer coordinates in [0, 5]; small enough that ties are common.
fn coords(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((0i64..=10).prop_map(|h| frac(h, 2)), len)
}

fn line_instance(k: usize) -> impl Strategy<Value = Instance> {
    (coords(1..6), coords(1..5)).prop_map(move |(a, c)| Instance::line(a, c, k).unwrap())
}

fn raw_matrix(size: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(0i64..8, size * size).prop_map(move |w| {
        let mut m = vec![vec![int(0); size]; size];
        for i in 0..size {
            for j in i + 1..size {
                m[i][j] = int(w[i * size + j]);
                m[j][i] = int(w[i * size + j]);
            }
        }
        m
    })
}

fn metric_instance() -> impl Strategy<Value = Instance> {
    (1usize..4, 1usize..4)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), raw_matrix(n + m)))
        .prop_map(|(n, m, raw)| {
            let matrix = DistanceMatrix::new(metric_closure(&raw)).unwrap();
            Instance::metric(matrix, (0..n).collect(), (n..n + m).collect(), 1).unwrap()
        })
}

fn selections(inst: &Instance) -> Vec<Selection> {
    (0..inst.candidate_count())
        .combinations_with_replacement(inst.facilities())
        .map(|ids| Selection::new(ids.into_iter().map(CandidateId::from_index).collect()))
        .collect()
}

/// Optimum over ordered tuples, with costs recomputed from coordinates.
fn brute_force_optimum(inst: &Instance, objective: Objective) -> Scalar {
    let xs: Vec<&Scalar> = inst.agents().iter().map(|p| p.coordinate().unwrap()).collect();
    let ys: Vec<&Scalar> = inst.candidates().iter().map(|p| p.coordinate().unwrap()).collect();
    let tuples = (0..inst.facilities()).map(|_| 0..ys.len()).multi_cartesian_product();
    tuples
        .map(|t| {
            let costs = xs.iter().map(|x| {
                t.iter()
                    .map(|&j| (*x - ys[j]).abs())
                    .min()
                    .unwrap()
            });
            match objective {
                Objective::Social => costs.sum(),
                Objective::Maximum => costs.max().unwrap(),
            }
        })
        .min()
        .unwrap()
}

const ANONYMOUS_K1: [Mechanism; 3] = [Mechanism::LeftmostClosest, Mechanism::Median, Mechanism::RandomDictatorship];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn social_and_max_cost_bracket_each_other(inst in line_instance(2)) {
        for s in selections(&inst) {
            let sc = social_cost(&inst, &s).unwrap();
            let mc = max_cost(&inst, &s).unwrap();
            prop_assert!(mc <= sc);
            prop_assert!(sc <= mc * int(inst.agent_count() as i64));
        }
    }

    #[test]
    fn adding_a_facility_never_hurts(inst in line_instance(1), extra in 0usize..4) {
        let extra = CandidateId::from_index(extra % inst.candidate_count());
        for s in selections(&inst) {
            let more = s.with(extra);
            for a in inst.agent_ids() {
                prop_assert!(agent_cost(&inst, &more, a).unwrap() <= agent_cost(&inst, &s, a).unwrap());
            }
        }
    }

    #[test]
    fn point_mass_expectation_is_exact(inst in line_instance(2)) {
        for s in selections(&inst) {
            let lottery = Lottery::point_mass(s.clone());
            for objective in [Objective::Social, Objective::Maximum] {
                prop_assert_eq!(expected_cost(&inst, &lottery, objective).unwrap(), cost(&inst, &s, objective).unwrap());
            }
        }
    }

    #[test]
    fn closure_is_a_metric_and_idempotent(raw in (1usize..6).prop_flat_map(raw_matrix)) {
        let closed = metric_closure(&raw);
        prop_assert!(DistanceMatrix::new(closed.clone()).is_ok());
        prop_assert_eq!(metric_closure(&closed), closed.clone());
        for (row_raw, row_closed) in raw.iter().zip(&closed) {
            for (r, c) in row_raw.iter().zip(row_closed) {
                prop_assert!(c <= r);
            }
        }
    }

    #[test]
    fn solver_matches_ordered_tuple_enumeration(inst in line_instance(2), k1 in line_instance(1)) {
        for objective in [Objective::Social, Objective::Maximum] {
            prop_assert_eq!(optimal(&inst, objective).unwrap().value, brute_force_optimum(&inst, objective));
            prop_assert_eq!(optimal(&k1, objective).unwrap().value, brute_force_optimum(&k1, objective));
        }
    }

    #[test]
    fn every_optimum_attains_the_value(inst in line_instance(2)) {
        let opt = optimal(&inst, Objective::Maximum).unwrap();
        prop_assert!(opt.value >= Scalar::zero());
        for s in &opt.all {
            prop_assert_eq!(&max_cost(&inst, s).unwrap(), &opt.value);
        }
    }

    #[test]
    fn optimum_ignores_agent_order_and_candidate_labels(inst in line_instance(2), seed in any::<u64>()) {
        let mut agents = inst.agents().to_vec();
        let shift = (seed as usize) % agents.len();
        agents.rotate_left(shift);
        let mut candidates = inst.candidates().to_vec();
        candidates.reverse();
        let shuffled = Instance::new(inst.space().clone(), agents, candidates, 2).unwrap();
        for objective in [Objective::Social, Objective::Maximum] {
            let a = optimal(&inst, objective).unwrap();
            let b = optimal(&shuffled, objective).unwrap();
            prop_assert_eq!(&a.value, &b.value);
            prop_assert_eq!(a.all.len(), b.all.len());
        }
    }

    #[test]
    fn two_facilities_never_worse_than_one(inst in line_instance(1)) {
        let two = Instance::new(inst.space().clone(), inst.agents().to_vec(), inst.candidates().to_vec(), 2).unwrap();
        for objective in [Objective::Social, Objective::Maximum] {
            prop_assert!(optimal(&two, objective).unwrap().value <= optimal(&inst, objective).unwrap().value);
        }
    }

    #[test]
    fn mechanisms_never_beat_the_optimum(k1 in line_instance(1), k2 in line_instance(2), metric in metric_instance()) {
        let weights = vec![frac(1, k1.agent_count() as i64); k1.agent_count()];
        let k1_mechs = [
            Mechanism::LeftmostClosest,
            Mechanism::Median,
            Mechanism::RandomDictatorship,
            Mechanism::ClosestToMean,
            Mechanism::Dictatorship(AgentId::new(1).unwrap()),
            Mechanism::Wpv(weights),
        ];
        for objective in [Objective::Social, Objective::Maximum] {
            for mech in &k1_mechs {
                prop_assert!(facloc::solver::ratio(&k1, mech, objective).unwrap() >= Ratio::Finite(int(1)));
            }
            prop_assert!(facloc::solver::ratio(&k2, &Mechanism::TwoExtremes, objective).unwrap() >= Ratio::Finite(int(1)));
            let dictator = Mechanism::Dictatorship(AgentId::new(1).unwrap());
            prop_assert!(facloc::solver::ratio(&metric, &dictator, objective).unwrap() >= Ratio::Finite(int(1)));
        }
    }

    #[test]
    fn outcomes_are_valid(k1 in line_instance(1), k2 in line_instance(2)) {
        for mech in ANONYMOUS_K1 {
            match mech.apply(&k1).unwrap() {
                Outcome::Deterministic(s) => prop_assert!(s.facilities().iter().all(|c| c.get() <= k1.candidate_count())),
                Outcome::Randomized(l) => {
                    let total: Scalar = l.support().iter().map(|(_, p)| p.clone()).sum();
                    prop_assert_eq!(total, int(1));
                }
            }
        }
        let s = two_extremes(&k2).unwrap();
        prop_assert_eq!(s.len(), 2);
    }

    #[test]
    fn anonymous_mechanisms_ignore_identities(k1 in line_instance(1), k2 in line_instance(2)) {
        for mech in ANONYMOUS_K1 {
            prop_assert_eq!(check_anonymity(&k1, &mech, 0, 0).unwrap(), None);
        }
        prop_assert_eq!(check_anonymity(&k2, &Mechanism::TwoExtremes, 0, 0).unwrap(), None);
    }

    #[test]
    fn reported_profiles_match_rebuilt_instances(k1 in line_instance(1), k2 in line_instance(2), shift in 0usize..5) {
        for inst in [&k1, &k2] {
            let mut reports = inst.agents().to_vec();
            let n = reports.len();
            reports.rotate_left(shift % n);
            reports[0] = inst.candidates()[0].clone();
            let rebuilt = inst.with_agents(reports.clone()).unwrap();
            let mechs = if inst.facilities() == 2 {
                vec![Mechanism::TwoExtremes]
            } else {
                vec![Mechanism::LeftmostClosest, Mechanism::Median, Mechanism::RandomDictatorship, Mechanism::ClosestToMean]
            };
            for m in mechs {
                prop_assert_eq!(m.apply_to_reports(inst, &reports).unwrap(), m.apply(&rebuilt).unwrap());
            }
        }
    }

    #[test]
    fn leftmost_matches_dictatorship_of_leftmost_agent_without_ties(inst in line_instance(1)) {
        let xs: Vec<&Scalar> = inst.agents().iter().map(|p| p.coordinate().unwrap()).collect();
        let (pos, xl) = xs.iter().enumerate().min_by_key(|(_, x)| **x).unwrap();
        let mut distances: Vec<Scalar> = inst
            .candidates()
            .iter()
            .map(|y| (*xl - y.coordinate().unwrap()).abs())
            .collect();
        distances.sort();
        prop_assume!(distances.len() == 1 || distances[0] != distances[1]);
        prop_assert_eq!(leftmost_closest(&inst).unwrap(), dictatorship(&inst, AgentId::from_index(pos)).unwrap());
    }

    #[test]
    fn two_extremes_serves_each_extreme_optimally(inst in line_instance(2)) {
        let s = two_extremes(&inst).unwrap();
        let xs: Vec<&Scalar> = inst.agents().iter().map(|p| p.coordinate().unwrap()).collect();
        let xl = xs.iter().min().unwrap();
        let xr = xs.iter().max().unwrap();
        let dist = |x: &Scalar, c: CandidateId| (x - inst.candidates()[c.index()].coordinate().unwrap()).abs();
        let best = |x: &Scalar| inst.candidate_ids().map(|c| dist(x, c)).min().unwrap();
        prop_assert_eq!(dist(xl, s.facilities()[0]), best(xl));
        prop_assert_eq!(dist(xr, s.facilities()[1]), best(xr));
    }

    #[test]
    fn truthful_mechanisms_resist_unilateral_deviation(k1 in line_instance(1), k2 in line_instance(2), metric in metric_instance()) {
        let set = MisreportSet::new(&k1, 11);
        for mech in ANONYMOUS_K1.into_iter().chain([Mechanism::Dictatorship(AgentId::new(1).unwrap())]) {
            prop_assert_eq!(find_unilateral_deviation(&k1, &mech, &set).unwrap(), None, "{}", mech);
        }
        let set2 = MisreportSet::new(&k2, 11);
        prop_assert_eq!(find_unilateral_deviation(&k2, &Mechanism::TwoExtremes, &set2).unwrap(), None);
        let mset = MisreportSet::new(&metric, 0);
        for mech in [Mechanism::Dictatorship(AgentId::new(1).unwrap()), Mechanism::RandomDictatorship] {
            prop_assert_eq!(find_unilateral_deviation(&metric, &mech, &mset).unwrap(), None);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn two_extremes_resists_coalitions(inst in (coords(1..5), coords(1..4)).prop_map(|(a, c)| Instance::line(a, c, 2).unwrap())) {
        let set = MisreportSet::new(&inst, 5);
        let max = inst.agent_count().min(3);
        prop_assert_eq!(find_group_deviation(&inst, &Mechanism::TwoExtremes, &set, max).unwrap(), None);
        let one = Instance::new(inst.space().clone(), inst.agents().to_vec(), inst.candidates().to_vec(), 1).unwrap();
        prop_assert_eq!(find_group_deviation(&one, &Mechanism::LeftmostClosest, &set, max).unwrap(), None);
    }

    #[test]
    fn no_wpv_beats_three_on_the_remark_instance(raw in prop::collection::vec(0i64..100, 2)) {
        let eps = frac(1, 100);
        let inst = PaperConstruction::new(ConstructionName::WpvRemark, eps.clone()).build().unwrap();
        let total: i64 = raw.iter().sum::<i64>().max(1);
        let w0 = if raw.iter().sum::<i64>() == 0 { int(1) } else { frac(raw[0], total) };
        let weights = vec![w0.clone(), int(1) - w0];
        let r = facloc::solver::ratio(&inst, &Mechanism::Wpv(weights), Objective::Maximum).unwrap();
        prop_assert_eq!(r, Ratio::Finite(int(3) - eps));
    }
}

#[test]
fn metric_instances_reject_line_points() {
    let m = DistanceMatrix::new(vec![vec![int(0)]]).unwrap();
    assert!(Instance::new(facloc::Space::finite(m), vec![Point::Line(int(0))], vec![Point::Node(0)], 1).is_err());
}
