import json

import pytest
from hypothesis import given

from graphstab import stability
from graphstab.cnf import CnfFormula
from graphstab.graph import complete, cycle, empty, path
from graphstab.solvers import graph_number
from graphstab.verify import families, oracles
from graphstab.verify.laws import LAWS, REQUIRED_CLAIMS, law_ids, replay, run_law, uncovered_claims

from conftest import graphs

# Written out independently of REQUIRED_CLAIMS so a dropped registration is caught twice.
EXPECTED_CLAIMS = (
    ["obs1", "obs2", "obs3", "obs4"]
    + [f"prop1.{i}" for i in range(1, 8)]
    + ["prop2", "lem3", "lem4", "lem5", "lem6", "lem7", "lem9", "lem13"]
    + ["thm3", "thm4", "thm5", "thm6", "thm7"]
    + [f"thm{i}" for i in range(9, 16)]
    + ["cor2", "plan"]
)


def _covered(claim):
    return any(i == claim or i.startswith(claim + ".") for i in law_ids())


class TestRegistry:
    def test_every_claim_has_a_law(self):
        assert uncovered_claims() == []
        assert [c for c in EXPECTED_CLAIMS if not _covered(c)] == []
        assert set(EXPECTED_CLAIMS) <= set(REQUIRED_CLAIMS)

    def test_ids_unique_and_laws_complete(self):
        ids = law_ids()
        assert len(ids) == len(set(ids))
        for law in LAWS.values():
            assert law.claim and law.oracle in ("brute-force", "main-solver")
            assert "seed" in law.defaults

    def test_unknown_law(self):
        with pytest.raises(KeyError):
            run_law("obs99")


class TestRunLaw:
    def test_obs1_covers_every_graph_up_to_five(self):
        r = run_law("obs1")
        assert r.passed and r.instances == 1100

    def test_cover_gadget_shift(self):
        r = run_law("lem9.shift")
        assert r.passed and r.instances == 100

    def test_pair_law_is_capped(self):
        r = run_law("thm9.sizes", {"max_n": 5})
        assert r.passed and r.config["max_n"] == 3

    def test_irrelevant_overrides_are_ignored(self):
        r = run_law("thm13", {"max_n": 2, "samples": 4, "seed": 1})
        assert "max_n" not in r.config and "samples" not in r.config

    def test_deterministic_json(self):
        a = json.dumps(run_law("lem13.p2", {"seed": 5}).to_json(), sort_keys=True)
        b = json.dumps(run_law("lem13.p2", {"seed": 5}).to_json(), sort_keys=True)
        assert a == b and "elapsed" not in a
        assert "elapsed" in run_law("obs2", {"max_n": 3}).to_json(timings=True)

    def test_seed_drives_random_families(self):
        law = LAWS["lem9.shift"]
        cfg = dict(law.defaults, samples=5)
        same = list(law.instances(dict(cfg, seed=1))), list(law.instances(dict(cfg, seed=1)))
        other = list(law.instances(dict(cfg, seed=2)))
        assert same[0] == same[1] != other


class TestMutations:
    """A deliberately broken component must turn the matching law red."""

    def test_wrong_closed_form_is_caught_and_replayable(self, monkeypatch):
        broken = dict(stability.CLOSED_FORM_PREDICATES)
        broken["beta-vertex-stable"] = lambda g: g.n <= 1
        monkeypatch.setattr(stability, "CLOSED_FORM_PREDICATES", broken)
        r = run_law("thm10", {"max_n": 3})
        assert not r.passed
        first = r.violations[0]
        assert first["index"] == min(v["index"] for v in r.violations)
        payload = json.loads(json.dumps(first["instance"]))
        assert families.load_graph(payload["graph"]) == empty(2)
        assert replay("thm10", payload) is not None
        monkeypatch.setattr(stability, "CLOSED_FORM_PREDICATES", dict(broken, **{"beta-vertex-stable": lambda g: g.m == 0}))
        assert replay("thm10", payload) is None

    def test_wrong_solver_is_caught(self, monkeypatch):
        from graphstab.verify import laws

        real = laws.graph_number

        def off_by_one(g, xi, budget=None):
            result = real(g, xi, budget)
            if xi == "omega" and g.n == 4 and g.m == 6:
                return type(result)(result.value + 1, result.witness, result.stats)
            return result

        monkeypatch.setattr(laws, "graph_number", off_by_one)
        r = run_law("solvers", {"max_n": 4})
        assert r.violation_count == 1
        assert families.load_graph(r.violations[0]["instance"]["graph"]) == complete(4)


class TestOracles:
    def test_examples(self):
        assert oracles.brute_force_number(cycle(5), "chi") == 3
        assert oracles.brute_force_number(path(3), "beta") == 1
        assert oracles.brute_force_number(empty(0), "omega") == 0

    def test_limits(self):
        with pytest.raises(oracles.OracleLimit):
            oracles.brute_force_number(empty(9), "chi")
        with pytest.raises(oracles.OracleLimit):
            oracles.brute_force_number(empty(11), "beta")
        with pytest.raises(oracles.OracleLimit):
            oracles.brute_force_satisfiable(CnfFormula(17, []))

    def test_optimal_colourings_of_p3(self):
        found = {frozenset(c) for c in oracles.optimal_colorings(path(3))}
        assert found == {frozenset({frozenset({0, 2}), frozenset({1})})}

    def test_formula_oracle(self):
        sat, per = oracles.brute_force_stability(CnfFormula(1, [(1,), (-1,)]))
        assert not sat and per == [True, True]

    @given(graphs(max_n=7))
    def test_oracle_matches_solvers(self, g):
        for xi in ("alpha", "beta", "chi", "omega"):
            assert oracles.brute_force_number(g, xi) == graph_number(g, xi).value


class TestFamilies:
    def test_exhaustive_counts(self):
        assert [sum(1 for _ in families.enumerate_graphs(n)) for n in range(6)] == [1, 1, 2, 8, 64, 1024]
        with pytest.raises(ValueError):
            next(families.enumerate_graphs(8))

    def test_random_graph_is_seeded(self):
        assert families.random_graph(6, 0.5, 9) == families.random_graph(6, 0.5, 9)
        with pytest.raises(ValueError):
            families.random_graph(3, 1.5, 0)

    def test_corpora_are_seeded_and_exact(self):
        a = list(families.mixed_3cnf_corpus(40, 3))
        assert a == list(families.mixed_3cnf_corpus(40, 3))
        assert all(phi.is_exact(3) and phi.num_vars <= 4 for phi in a)
        assert any(not oracles.brute_force_satisfiable(phi) for phi in a)
        b = list(families.exact3_corpus(10, 0))
        assert len(b) == 10 and b[0].m == 8

    def test_random_cnf_widths_capped(self):
        phi = families.random_cnf(2, 10, 5, 0)
        assert max(len(c) for c in phi.clauses) <= 2

    def test_payload_round_trips(self):
        g = cycle(5)
        assert families.load_graph(json.loads(json.dumps(families.graph_payload(g)))) == g
        phi = CnfFormula(3, [(1, -2, 3)])
        assert families.load_formula(json.loads(json.dumps(families.formula_payload(phi)))) == phi
