//! Geometric and combinatorial routines against independent oracles.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use pareto_lab::enumeration::trees::{edge_count, edge_endpoints};
use pareto_lab::enumeration::{is_pareto_optimal, Budget, FeasibleSet};
use pareto_lab::geometry::{
    binomial, cone_meets_negative_orthant, hull_vertices, hull_vertices_with, origin_in_hull,
    origin_membership, rational_to_f64, wendel_probability, Arithmetic, Membership,
};
use pareto_lab::harness::{run_experiment, ExperimentConfig, Family};
use pareto_lab::{Domain, DominanceOrder, ObjectiveMatrix, RandomStream, Solution};

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; strict vertices only.
fn monotone_chain(points: &[[i64; 2]]) -> BTreeSet<[i64; 2]> {
    let mut p: Vec<[i64; 2]> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p.into_iter().collect();
    }
    let mut hull: Vec<[i64; 2]> = Vec::new();
    for _ in 0..2 {
        let start = hull.len();
        for &q in &p {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
        p.reverse();
    }
    hull.into_iter().collect()
}

fn as_f64(points: &[[i64; 2]]) -> Vec<Vec<f64>> {
    points.iter().map(|p| vec![p[0] as f64, p[1] as f64]).collect()
}

fn random_grid(rng: &mut impl Rng, m: usize, r: i64) -> Vec<[i64; 2]> {
    (0..m).map(|_| [rng.random_range(-r..=r), rng.random_range(-r..=r)]).collect()
}

#[test]
fn planar_hull_matches_monotone_chain() {
    let mut rng = RandomStream::new(1).rng();
    for case in 0..400 {
        let m = rng.random_range(1..40);
        let r = if case % 2 == 0 { 3 } else { 1000 };
        let pts = random_grid(&mut rng, m, r);
        let got = hull_vertices(&as_f64(&pts)).unwrap();
        let got_coords: BTreeSet<[i64; 2]> = got.iter().map(|&i| pts[i]).collect();
        assert_eq!(got_coords, monotone_chain(&pts), "case {case}: {pts:?}");
        assert_eq!(got_coords.len(), got.len());
        for &i in &got {
            assert_eq!(pts.iter().position(|p| *p == pts[i]), Some(i), "not the first occurrence");
        }
        let exact = hull_vertices_with(&as_f64(&pts), Arithmetic::Exact).unwrap();
        assert_eq!(got, exact);
    }
}

#[test]
fn planar_zonotope_has_two_n_vertices() {
    // integer generators with no two parallel
    let mut rng = RandomStream::new(2).rng();
    for _ in 0..30 {
        let n = rng.random_range(2..9usize);
        let mut gens: Vec<[i64; 2]> = Vec::new();
        while gens.len() < n {
            let g = [rng.random_range(-9..=9), rng.random_range(-9..=9)];
            if g != [0, 0] && gens.iter().all(|h| g[0] * h[1] != g[1] * h[0]) {
                gens.push(g);
            }
        }
        let pts: Vec<[i64; 2]> = (0..1u32 << n)
            .map(|mask| {
                (0..n).filter(|j| mask >> j & 1 == 1).fold([0, 0], |acc, j| {
                    [acc[0] + gens[j][0], acc[1] + gens[j][1]]
                })
            })
            .collect();
        assert_eq!(monotone_chain(&pts).len(), 2 * n);
        assert_eq!(hull_vertices(&as_f64(&pts)).unwrap().len(), 2 * n);
    }
}

/// Origin in the closed hull of planar integer points, by Caratheodory:
/// it lies in the hull of at most three of them.
fn origin_in_hull_oracle(pts: &[[i64; 2]]) -> bool {
    let o = [0, 0];
    if pts.contains(&o) {
        return true;
    }
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            if cross(o, a, b) == 0 && a[0] * b[0] + a[1] * b[1] <= 0 {
                return true;
            }
        }
    }
    for (i, &a) in pts.iter().enumerate() {
        for (j, &b) in pts.iter().enumerate().skip(i + 1) {
            for &c in &pts[j + 1..] {
                let s = [cross(o, a, b), cross(o, b, c), cross(o, c, a)];
                let nondegenerate = s.iter().any(|&x| x != 0);
                if nondegenerate && (s.iter().all(|&x| x >= 0) || s.iter().all(|&x| x <= 0)) {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn planar_origin_test_matches_caratheodory() {
    let mut rng = RandomStream::new(3).rng();
    let mut inside = 0;
    for case in 0..600 {
        let m = rng.random_range(1..12);
        let pts = random_grid(&mut rng, m, if case % 3 == 0 { 2 } else { 50 });
        let expected = origin_in_hull_oracle(&pts);
        inside += expected as u32;
        let cloud = as_f64(&pts);
        assert_eq!(origin_in_hull(&cloud).unwrap(), expected, "case {case}: {pts:?}");
        if let Membership::Outside(u) = origin_membership(&cloud, Arithmetic::Exact).unwrap() {
            assert!(!expected);
            for p in &cloud {
                assert!(p[0] * u[0] + p[1] * u[1] > 0.0, "direction does not separate");
            }
        }
    }
    assert!(inside > 100 && inside < 500);
}

#[test]
fn sphere_points_are_vertices_and_averages_are_not() {
    let mut rng = RandomStream::new(4).rng();
    for d in 2..=4usize {
        for _ in 0..10 {
            let k = rng.random_range(d + 1..20);
            let mut pts: Vec<Vec<f64>> = (0..k)
                .map(|_| {
                    let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    v.iter().map(|x| x / norm).collect()
                })
                .collect();
            for _ in 0..30 {
                let picks = rand::seq::index::sample(&mut rng, k, d + 1).into_vec();
                let avg: Vec<f64> = (0..d)
                    .map(|c| picks.iter().map(|&i| pts[i][c]).sum::<f64>() / picks.len() as f64)
                    .collect();
                pts.push(avg);
            }
            let got = hull_vertices(&pts).unwrap();
            assert_eq!(got, (0..k).collect::<Vec<_>>(), "d={d} k={k}");
        }
    }
}

#[test]
fn wendel_frequency_matches_formula() {
    for (n, d, dist) in [(5usize, 3usize, None), (7, 2, Some("symuniform:1")), (4, 4, None)] {
        let mut cfg = ExperimentConfig::new(Family::Wendel, n, d, 20_000, 9);
        cfg.dist = dist.map(String::from);
        let s = run_experiment(&cfg).unwrap().summary.unwrap();
        let exact = rational_to_f64(&wendel_probability(n as u64, d as u64).unwrap());
        if exact == 1.0 {
            assert_eq!(s.mean, 1.0);
        } else {
            assert!(s.within(exact, 4.0), "n={n} d={d}: {} vs {exact}", s.mean);
        }
    }
}

#[test]
fn avoiding_cone_makes_all_ones_pareto_optimal() {
    let mut rng = RandomStream::new(5).rng();
    let budget = Budget::default();
    let (mut avoided, mut met) = (0, 0);
    for _ in 0..300 {
        let d = rng.random_range(1..=3usize);
        let n = rng.random_range(1..=9usize);
        let bias = rng.random_range(0.0..1.0);
        let columns: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0) + bias).collect())
            .collect();
        let v = ObjectiveMatrix::from_columns(&columns).unwrap();
        let ones = Solution::all_ones(n, Domain::ZeroOne);
        let optimal = is_pareto_optimal(
            &v,
            &FeasibleSet::FullCube(n),
            &DominanceOrder::maximize_all(d),
            &ones,
            &budget,
        )
        .unwrap();
        if cone_meets_negative_orthant(&columns).unwrap() {
            met += 1;
        } else {
            avoided += 1;
            assert!(optimal, "{columns:?}");
        }
    }
    assert!(avoided > 30 && met > 30);
}

#[test]
fn spanning_trees_are_distinct_and_complete() {
    for m in 2..=6usize {
        let fs = FeasibleSet::SpanningTreesComplete(m);
        let trees = fs.enumerate(&Budget::default()).unwrap();
        assert_eq!(trees.len() as u64, (m as u64).pow(m as u32 - 2));
        let distinct: HashSet<Vec<bool>> = trees.iter().map(|t| t.bits().to_vec()).collect();
        assert_eq!(distinct.len(), trees.len());
        let edges: Vec<(usize, usize)> = (0..edge_count(m)).map(|e| edge_endpoints(m, e)).collect();
        for t in &trees {
            assert_eq!(t.ones(), m - 1);
            // connected by flood fill over the chosen edges
            let mut seen = vec![false; m];
            seen[0] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for (e, &(a, b)) in edges.iter().enumerate() {
                    if t.bits()[e] && seen[a] != seen[b] {
                        seen[a] = true;
                        seen[b] = true;
                        changed = true;
                    }
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}

#[test]
fn fixed_cardinality_counts() {
    for n in 1..=10usize {
        for k in 0..=n {
            let fs = FeasibleSet::FixedCardinality { n, k };
            let all = fs.enumerate(&Budget::default()).unwrap();
            assert_eq!(all.len().to_string(), binomial(n as u64, k as u64).to_string());
            assert!(all.iter().all(|s| s.ones() == k));
        }
    }
}
