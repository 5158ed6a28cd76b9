from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flopcalc.bwb import line_bundle, normalize
from flopcalc.homalg import (
    ChaseInconsistencyError,
    ChaseSystem,
    ChaseTerm,
    ChaseUnderdeterminedError,
    DegeneracyUnjustifiedError,
    SpectralPage,
    chase_solve,
    ext2_ideal_self,
    ext2_ideal_self_trace,
    ext_centre_vs_ideal_system,
    ext_locally_free_vs_ideal,
    ext_OY_structure,
    ext_table_OY,
    ideal_cohomology_system,
    koszul_resolution,
    local_ext_page,
    reference_chase_systems,
    restriction_chase_system,
)


def system(*dims, name="test"):
    terms = tuple(
        ChaseTerm(f"T{i}", d) for i, d in enumerate(dims)
    )
    return ChaseSystem(name, terms)


class TestChaseSolve:
    def test_two_term_exactness(self):
        sol = chase_solve(system(0, None, 5, 0))
        assert sol.values["T1"] == 5
        assert sol.fully_solved

    def test_flanked_by_zeros(self):
        sol = chase_solve(system(0, None, 0))
        assert sol.values["T1"] == 0
        assert sol.trace[0][1] == "flanked-by-zeros"

    def test_four_term_chase(self):
        # 0 -> Ext2(O,I) -> Ext2(I,I) -> Ext3(O_Y,I) -> 0 with outer terms known
        sol = chase_solve(system(0, 0, None, 1, 0))
        assert sol.values["T2"] == 1

    def test_cascading(self):
        # solving one unknown splits a segment and unlocks the next
        sol = chase_solve(system(0, None, 3, 0, 2, None, 0))
        assert sol.values["T1"] == 3 and sol.values["T5"] == 2

    def test_underdetermined_reported(self):
        sol = chase_solve(system(0, None, 4, None, 0))
        assert set(sol.unsolved) == {"T1", "T3"}
        with pytest.raises(ChaseUnderdeterminedError):
            sol.require("T1")

    def test_inconsistent_known_segment(self):
        with pytest.raises(ChaseInconsistencyError):
            chase_solve(system(0, 2, 1, 0))

    def test_negative_solution_is_inconsistent(self):
        # 3 - 1 + x = 0 would force x = -2
        with pytest.raises(ChaseInconsistencyError):
            chase_solve(system(0, 3, 1, None, 0, name="neg"))
        # a fully-known singleton segment with nonzero dimension
        with pytest.raises(ChaseInconsistencyError):
            chase_solve(system(0, None, 0, 5, 0))

    def test_unbounded_ends_stay_unknown(self):
        sol = chase_solve(system(None, 3, 0))
        assert sol.unsolved == ("T0",)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError):
            ChaseSystem("dup", (ChaseTerm("A", 0), ChaseTerm("A", 1)))

    def test_negative_dimension_rejected(self):
        with pytest.raises(ValueError):
            ChaseTerm("A", -1)

    @given(
        st.lists(st.integers(0, 5), min_size=0, max_size=6),
        st.sets(st.integers(1, 8)),
    )
    @settings(max_examples=300)
    def test_sound_on_exact_complexes(self, kernels, hidden):
        # dims of an exact complex are sums of consecutive kernel dimensions
        ks = [0] + kernels + [0]
        truth = [0] + [a + b for a, b in zip(ks, ks[1:])] + [0]
        masked = [
            None if i in hidden and 0 < i < len(truth) - 1 else d
            for i, d in enumerate(truth)
        ]
        sol = chase_solve(system(*masked, name="hyp"))
        for i, d in enumerate(truth):
            got = sol.values[f"T{i}"]
            assert got is None or got == d

    def test_rule_order_independence_on_reference_systems(self):
        for sysm in reference_chase_systems(2):
            fwd = chase_solve(sysm)
            bwd = chase_solve(sysm, reverse=True)
            assert fwd.values == bwd.values
            assert set(fwd.unsolved) == set(bwd.unsolved)


class TestKoszulResolution:
    def test_terms_for_n2(self):
        res = koszul_resolution(2)
        assert [t.p for t in res.terms] == [2, 1]
        assert [t.line_class.j for t in res.terms] == [-2, -1]
        # Wedge^2 Theta on P^2 is O(3)
        assert normalize(res.terms[0].theta_wedge) == line_bundle(2, 3)
        assert res.terms[1].theta_wedge.literal() == "1,0|-1"

    @pytest.mark.parametrize("n", range(2, 7))
    def test_rank_invariants(self, n):
        res = koszul_resolution(n)
        assert [t.rank for t in res.terms] == [comb(n, p) for p in range(n, 0, -1)]
        assert res.alternating_rank_sum() == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_euler_consistency_with_the_ideal(self, n):
        # chi(I) = chi(O_X) - chi(O_Y) = 1 - 1 = 0
        assert koszul_resolution(n).alternating_euler_sum() == 0

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            koszul_resolution(1)


class TestSpectralPage:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_checkerboard_vanishing(self, n):
        assert local_ext_page(n).off_diagonal() == []

    def test_bad_entries_rejected(self):
        with pytest.raises(ValueError):
            SpectralPage.from_dict({(-1, 0): 1}, 4)
        with pytest.raises(ValueError):
            SpectralPage.from_dict({(3, 3): 1}, 4)

    def test_antidiagonal_totals(self):
        page = SpectralPage.from_dict({(0, 0): 1, (1, 1): 2, (0, 2): 3}, 4)
        assert page.antidiagonal_totals().dims() == {0: 1, 2: 5}


class TestExtTableOfTheCentre:
    @pytest.mark.parametrize(
        "n,expected",
        [
            (2, {0: 1, 2: 1, 4: 1}),
            (3, {0: 1, 2: 1, 4: 1, 6: 1}),
        ],
    )
    def test_small_tables(self, n, expected):
        assert ext_table_OY(n).dims() == expected

    @pytest.mark.parametrize("n", range(2, 6))
    def test_odd_degrees_absent(self, n):
        table = ext_table_OY(n)
        assert all(i % 2 == 0 for i in table.dims())
        assert table.dims() == {i: 1 for i in range(0, 2 * n + 1, 2)}

    def test_degeneracy_guard_raises_on_bad_page(self, monkeypatch):
        bad_page = SpectralPage.from_dict({(0, 0): 1, (0, 1): 1}, 4)
        monkeypatch.setattr("flopcalc.homalg.local_ext_page", lambda n: bad_page)
        with pytest.raises(DegeneracyUnjustifiedError):
            ext_table_OY(2)


class TestExtAgainstStructure:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_concentrated_at_the_top(self, n):
        assert ext_OY_structure(n).dims() == {2 * n: 1}


class TestFirstRouteExt:
    def test_wedge2_term_has_one_dimensional_ext1(self):
        table = ext_locally_free_vs_ideal(2, 2)
        assert table.get(1) == 1 and table.is_known(1)

    def test_wedge1_term_ext1_is_honestly_unknown(self):
        table = ext_locally_free_vs_ideal(1, 2)
        assert not table.is_known(1)
        assert table.get(1) is None

    def test_known_zero_entries(self):
        t1 = ext_locally_free_vs_ideal(1, 2)
        t2 = ext_locally_free_vs_ideal(2, 2)
        assert t1.get(0) == 1
        assert t1.get(3) == 0 and t1.get(4) == 0
        assert t2.get(0) == 0 and t2.get(4) == 0
        assert not t2.is_known(2)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            restriction_chase_system(0, 2)
        with pytest.raises(ValueError):
            restriction_chase_system(3, 2)


class TestIdealSelfExt:
    def test_value(self):
        assert ext2_ideal_self(2) == 1

    def test_restricted_to_n2(self):
        with pytest.raises(ValueError):
            ext2_ideal_self(3)

    def test_ideal_cohomology_intermediates(self):
        sol = chase_solve(ideal_cohomology_system(2))
        assert sol.values["h^2(I)"] == 0
        assert sol.values["h^3(I)"] == 0
        assert set(sol.unsolved) == {"h^0(I)", "h^1(I)"}

    def test_centre_ext_intermediates(self):
        sol = chase_solve(ext_centre_vs_ideal_system(2))
        assert sol.fully_solved
        assert sol.values["Ext^2(O_Y,I)"] == 0
        assert sol.values["Ext^3(O_Y,I)"] == 1

    def test_perturbed_input_is_inconsistent(self):
        bad = ideal_cohomology_system(2).with_dim("h^4(O_Y)", 1)
        with pytest.raises(ChaseInconsistencyError):
            chase_solve(bad)
        with pytest.raises(ChaseInconsistencyError):
            chase_solve(bad, reverse=True)

    def test_traces_name_the_solved_terms(self):
        traces = dict(ext2_ideal_self_trace(2))
        steps = traces["ext-ideal-self-n2"]
        assert ("Ext^2(I,I)", "alternating-sum", 1) in steps
