mod common;

use csd_core::generate::{
    cycle_instance, gen_fig1_graph, gen_star_of_lines, gen_three_partition_tree, path_instance,
};
use csd_core::ratio::ratio;
use csd_core::solver::maxmin_probability;
use csd_core::subgraphs::DEFAULT_THETA_CAP;
use csd_core::Rational;

use common::three_partition_brute;

fn pstar(g: &csd_core::Graph, lambda: usize) -> Rational {
    maxmin_probability(g, lambda, DEFAULT_THETA_CAP).unwrap().pstar
}

#[test]
fn path_and_cycle_predictions_hold() {
    for n in 1..=12 {
        for lambda in 1..=n {
            let p = path_instance(n, lambda).unwrap();
            if let Some(pred) = &p.predicted_pstar {
                assert_eq!(&pstar(&p.graph, lambda), pred, "path {n} λ={lambda}");
            }
            if n >= 3 {
                let c = cycle_instance(n, lambda).unwrap();
                assert_eq!(&pstar(&c.graph, lambda), c.predicted_pstar.as_ref().unwrap());
            }
        }
    }
}

#[test]
fn star_of_lines_predictions_hold_at_every_boundary() {
    for n in 3..=16 {
        for lambda in 2..n {
            let inst = gen_star_of_lines(n, lambda).unwrap();
            let p = pstar(&inst.graph, lambda);
            assert_eq!(Some(&p), inst.predicted_pstar.as_ref(), "n={n} λ={lambda}");
            let dr = p.recip();
            let (n1, l) = (n - 1, lambda);
            let floor = if l % 2 == 0 { 2 * n1 / l } else { 2 * n1 / (l + 1) };
            assert!(dr >= Rational::from_integer(floor.into()), "n={n} λ={lambda}");
            let lower = Rational::from_integer((2 * n1 / (l + 1)).into());
            let upper = Rational::new((2 * n1 + l - 1).into(), l.into());
            assert!(lower <= dr && dr <= upper, "sandwich n={n} λ={lambda}");
        }
    }
}

#[test]
fn fig1_prediction_holds() {
    let f = gen_fig1_graph();
    assert_eq!(Some(&pstar(&f.graph, f.lambda)), f.predicted_pstar.as_ref());
    assert_eq!(f.metadata()["predicted_pstar"], "3/7");
}

#[test]
fn three_partition_trees_respect_the_threshold() {
    let cases: [(&[usize], usize); 4] = [
        (&[2, 2, 2, 2, 2, 2], 2),
        (&[1, 2, 3, 1, 2, 3, 1, 2, 3], 3),
        (&[4, 4, 4, 4, 4, 6], 2),
        (&[3, 3, 4, 3, 3, 4], 2),
    ];
    for (a, m) in cases {
        let inst = gen_three_partition_tree(a, m).unwrap();
        let p = pstar(&inst.graph, inst.lambda);
        let threshold = inst.threshold.clone().unwrap();
        assert!(p <= threshold, "{a:?}: every subgraph contains the center");
        assert_eq!(p >= threshold, three_partition_brute(a, m), "{a:?}");
    }
    assert_eq!(
        pstar(&gen_three_partition_tree(&[2; 6], 2).unwrap().graph, 7),
        ratio(1, 2)
    );
}

#[test]
fn brute_force_oracle_sanity() {
    assert!(three_partition_brute(&[1, 2, 3, 1, 2, 3, 1, 2, 3], 3));
    assert!(!three_partition_brute(&[1, 1, 1, 3, 3, 3], 2));
    assert!(!three_partition_brute(&[4, 4, 4, 4, 4, 6], 2));
    assert!(three_partition_brute(&[5, 4, 4, 4, 4, 5], 2));
}
