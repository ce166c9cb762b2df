"""Simplification, reconstruction and unit resolution."""

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_assignments, formula_holds, random_formula
from gf2sat.formula import Assignment, CnfFormula, Literal
from gf2sat.simplify import (Equiv, Fixed, ReconstructionMap, reconstruct,
                             simplify, unit_resolution)


class TestSimplify:
    def test_unit_chain(self):
        f = CnfFormula.from_ints(2, [[1], [-1, 2]])
        g, m, conflict = simplify(f)
        assert not conflict
        assert len(g.clauses) == 0
        assert list(m) == [Fixed(1, True), Fixed(2, True)]

    def test_equivalency_substitution(self):
        f = CnfFormula.from_ints(3, [[-1, 2], [1, -2], [1, 3]])
        g, m, conflict = simplify(f)
        assert not conflict
        # Lower-numbered variable is the representative.
        assert Equiv(2, Literal(1)) in list(m)
        assert len(g.clauses) == 1
        assert g.clauses[0].to_ints() == (1, 3)

    def test_contradiction_sets_conflict(self):
        f = CnfFormula.from_ints(1, [[1], [-1]])
        _, _, conflict = simplify(f)
        assert conflict

    def test_clause_ids_preserved(self):
        f = CnfFormula.from_ints(4, [[1, 2, 3], [4], [1, 2]])
        g, _, _ = simplify(f)
        assert {c.id for c in g.clauses} <= {0, 1, 2}

    def test_occurrence_consistency(self, rng):
        for _ in range(30):
            f = random_formula(rng, rng.randint(2, 8), rng.randint(1, 18))
            g, _, conflict = simplify(f)
            if not conflict:
                assert g.occ == g.recount_occurrences()

    def test_soundness_exhaustive(self, rng):
        """Models of the simplified formula map exactly onto models of the
        original through the reconstruction map, and vice versa."""
        for _ in range(40):
            f = random_formula(rng, rng.randint(2, 9), rng.randint(1, 16))
            g, m, conflict = simplify(f)
            if conflict:
                assert not any(
                    formula_holds(f, a)
                    for a in all_assignments(range(1, f.num_vars + 1))
                )
                continue
            substituted = {r.var for r in m}
            universe = [v for v in range(1, f.num_vars + 1)
                        if v not in substituted]
            for b in all_assignments(universe):
                full = reconstruct(b, m)
                assert formula_holds(g, b) == formula_holds(f, full)


class TestReconstruct:
    def test_fixed(self):
        m = ReconstructionMap([Fixed(1, True)])
        assert reconstruct(Assignment(), m) == {1: True}

    def test_negated_representative(self):
        m = ReconstructionMap([Equiv(2, Literal(1, True))])
        out = reconstruct(Assignment({1: False}), m)
        assert out == {1: False, 2: True}

    def test_missing_representative_rejected(self):
        m = ReconstructionMap([Equiv(2, Literal(1))])
        with pytest.raises(ValueError, match="unassigned"):
            reconstruct(Assignment(), m)

    def test_round_trip_solving_simplified(self, rng):
        """Any model of the simplified formula reconstructs to a model."""
        hits = 0
        for _ in range(100):
            f = random_formula(rng, rng.randint(2, 7), rng.randint(1, 12))
            g, m, conflict = simplify(f)
            if conflict:
                continue
            substituted = {r.var for r in m}
            universe = [v for v in range(1, f.num_vars + 1)
                        if v not in substituted]
            model = next(
                (b for b in all_assignments(universe) if formula_holds(g, b)),
                None,
            )
            if model is None:
                continue
            hits += 1
            assert formula_holds(f, reconstruct(model, m))
        assert hits > 30  # the sweep actually exercised reconstruction


class TestUnitResolution:
    def test_unit_chain(self):
        f = CnfFormula.from_ints(2, [[1], [-1, 2]])
        out, conflict = unit_resolution(f, Assignment())
        assert not conflict
        assert out == {1: True, 2: True}

    def test_forced_second_literal(self):
        f = CnfFormula.from_ints(2, [[1, 2]])
        out, conflict = unit_resolution(f, Assignment({1: False}))
        assert not conflict
        assert out == {1: False, 2: True}

    def test_conflict_by_hand_propagation(self):
        # -2 forces 2=F, then clause (1 2) forces 1=T and (-1 2) goes empty.
        f = CnfFormula.from_ints(2, [[1, 2], [-1, 2], [-2]])
        _, conflict = unit_resolution(f, Assignment())
        assert conflict

    def test_monotone_and_fixpoint(self, rng):
        for _ in range(40):
            f = random_formula(rng, rng.randint(2, 8), rng.randint(1, 14))
            seed_vars = rng.sample(range(1, f.num_vars + 1),
                                   rng.randint(0, f.num_vars // 2))
            v = Assignment({s: rng.random() < 0.5 for s in seed_vars})
            out, conflict = unit_resolution(f, v)
            assert all(out[k] == v[k] for k in v)  # input contained in output
            if not conflict:
                again, conflict2 = unit_resolution(f, out)
                assert not conflict2
                assert again == out  # fixpoint

    def test_soundness_by_brute_force(self, rng):
        """Every forced literal holds in all satisfying total extensions."""
        for _ in range(40):
            nv = rng.randint(2, 8)
            f = random_formula(rng, nv, rng.randint(1, 14))
            seed_vars = rng.sample(range(1, nv + 1), rng.randint(0, nv // 2))
            v = Assignment({s: rng.random() < 0.5 for s in seed_vars})
            out, conflict = unit_resolution(f, v)
            extensions = [
                a for a in all_assignments(range(1, nv + 1))
                if all(a[k] == v[k] for k in v) and formula_holds(f, a)
            ]
            if conflict:
                assert not extensions
                continue
            for var, value in out.items():
                if var in v:
                    continue
                assert all(a[var] == value for a in extensions)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**30), st.integers(2, 7), st.integers(1, 12))
def test_unit_resolution_properties(seed, nv, nc):
    rng = random.Random(seed)
    f = random_formula(rng, nv, nc)
    v = Assignment(
        {s: rng.random() < 0.5
         for s in rng.sample(range(1, nv + 1), rng.randint(0, nv))}
    )
    out, conflict = unit_resolution(f, v)
    assert set(v).issubset(set(out))
    if not conflict:
        again, _ = unit_resolution(f, out)
        assert again == out
