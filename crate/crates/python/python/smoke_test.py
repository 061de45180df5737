"""Quick check that the extension module loads and agrees with known values."""

import json
from fractions import Fraction

import pareto_lab as pl


def main():
    assert pl.wendel_probability(6, 2) == Fraction(3, 16)
    assert pl.zonotope_vertex_count(10, 2) == 20
    assert pl.lower_bound_basic(12, 2) == 6
    assert pl.lower_bound_restricted(10, 2, 252) == Fraction(2520, 2048)

    assert pl.dominates([2.0, 1.0], [1.0, 1.0])
    assert not pl.dominates([1.0, 1.0], [1.0, 1.0])
    assert pl.dominates([1.0, 0.0], [1.0, 1.0], senses=["max", "min"])
    pts = [[1.0, 0.0], [0.0, 1.0], [0.5, 0.5], [0.2, 0.2]]
    assert pl.pareto_filter(pts) == [0, 1, 2] == pl.pareto_maxima_dc(pts)

    v = pl.ObjectiveMatrix([[1.0, 0.0], [0.0, 1.0]])
    assert (v.d, v.n) == (2, 2)
    assert v.evaluate([1, 1]) == [1.0, 1.0]
    assert pl.count_pareto(v) == 1
    assert pl.pareto_set(v) == [([1, 1], [1.0, 1.0], 1)]

    g = pl.DistributionSpec("gaussian:1")
    a = g.sample_matrix(3, 8, seed=7)
    b = g.sample_matrix(3, 8, seed=7)
    assert a.rows() == b.rows()
    assert pl.count_pareto(a) == pl.count_pareto(a, feasible="cube")
    assert pl.DistributionSpec("symuniform:1").phi == 0.5

    square = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.5, 0.5]]
    assert pl.hull_vertices(square) == [0, 1, 2, 3] == pl.hull_vertices(square, exact=True)
    assert pl.origin_in_hull([[1.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]])
    assert not pl.origin_in_hull([[1.0, 1.0], [2.0, 0.5]])
    assert pl.bentley_cover_check(square)
    assert pl.cone_meets_negative_orthant([[1.0, -2.0], [-1.0, 1.0]])
    assert not pl.cone_meets_negative_orthant([[1.0, 1.0], [2.0, -1.0]])

    p = pl.br_parameters(100, 2, 16.0)
    assert abs(p.bound_value - 56.5685) < 1e-3 and p.n_p == 50

    cfg = {"family": "basic-cube", "n": 8, "d": 2, "trials": 40, "seed": 1}
    out = json.loads(pl.run_experiment(json.dumps(cfg)))
    assert set(out) == {"config", "records", "summary"}
    assert len(out["records"]) == 40
    assert out["summary"]["verdict"] == "PASS"
    assert pl.run_experiment(json.dumps(cfg), threads=1) == pl.run_experiment(json.dumps(cfg))

    try:
        pl.br_parameters(10, 2, 16.0)
    except ValueError as e:
        assert "n >= 16 d^2 violated" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
