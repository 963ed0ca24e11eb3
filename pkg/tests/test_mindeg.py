from __future__ import annotations

import itertools

import numpy as np
import pytest

from sgmindeg import builders
from sgmindeg.congruence import rm_irreducible_classes
from sgmindeg.core import from_table, greens, rees_coordinatize
from sgmindeg.errors import NotIrreducible, NotRhodesSemisimple
from sgmindeg.grouptheory import (
    GroupTable,
    coproduct_group_actions,
    coset_action,
    subgroup_classes,
)
from sgmindeg.mindeg import (
    dj,
    left_degrees,
    min_partial_degree,
    tensor_quotient_size,
)


def dj_of(s, j=None, force_general=False):
    g = greens(s)
    rep = rm_irreducible_classes(s, g)
    if j is None:
        (j,) = rep.irreducible_ids()
    r = rees_coordinatize(s, g, j)
    return dj(s, g, r, rep, force_general=force_general)


def test_dj_b2(b2):
    res = dj_of(b2)
    assert res.d == 3 and res.fast_path == "aggm"


def test_dj_m2f3():
    s = builders.matrix_monoid(2, 3).semigroup
    res = dj_of(s)
    assert res.d == 8 and res.fast_path == "column_condition"


def test_dj_sigma_transposition():
    s = builders.sigma_square(3, (1, 0, 2)).semigroup
    res = dj_of(s)
    assert res.d == 5 and res.fast_path == "general_search"


def test_dj_rejects_reducible(sim2):
    g = greens(sim2)
    rep = rm_irreducible_classes(sim2, g)
    reducible = [j for j in rep.per_class if not rep.per_class[j].rm_irreducible][0]
    r = rees_coordinatize(sim2, g, reducible)
    with pytest.raises(NotIrreducible):
        dj(sim2, g, r, rep)


def test_fast_path_consistency_with_general_search():
    cases = [
        builders.binary_relations(2).semigroup,
        builders.matrix_monoid(2, 2).semigroup,
        builders.matrix_monoid(2, 3).semigroup,
        builders.symmetric_inverse(2).semigroup,
        builders.symmetric_inverse(3).semigroup,
    ]
    for s in cases:
        g = greens(s)
        rep = rm_irreducible_classes(s, g)
        for j in rep.irreducible_ids():
            r = rees_coordinatize(s, g, j)
            fast = dj(s, g, r, rep)
            slow = dj(s, g, r, rep, force_general=True)
            assert fast.d == slow.d
            assert fast.fast_path in ("aggm", "column_condition")
            assert slow.fast_path == "general_search"


def test_dj_matches_multiset_search_on_tiny_instances():
    # unrestricted search allowing repeated orbit types never beats the set search
    cases = [
        builders.sigma_square(3, (1, 0, 2)).semigroup,
        builders.sigma_square(3, (1, 2, 0)).semigroup,
        builders.matrix_monoid(2, 3).semigroup,
    ]
    for s in cases:
        g = greens(s)
        rep = rm_irreducible_classes(s, g)
        (j,) = rep.irreducible_ids()
        r = rees_coordinatize(s, g, j)
        res = dj(s, g, r, rep)
        gt = GroupTable.of_rees(r)
        lat = subgroup_classes(gt)
        gpos = {el: i for i, el in enumerate(r.group)}
        mpos = [gpos[el] for el in rep.per_class[j].mj]
        k = len(lat.classes)
        best = None
        for mult in itertools.product(range(3), repeat=k):  # multiplicities 0..2
            if not any(mult):
                continue
            inter = set(range(gt.order))
            for ci in range(k):
                if mult[ci]:
                    inter &= set(lat.classes[ci].core)
            if not (inter & set(mpos)) <= {0}:
                continue
            actions = []
            for ci in range(k):
                for _ in range(mult[ci]):
                    actions.append(coset_action(gt, lat.classes[ci].rep))
            cost = tensor_quotient_size(coproduct_group_actions(actions), r)
            best = cost if best is None else min(best, cost)
        assert res.d == best


def test_min_partial_degree_m2f2(m2f2):
    rep = min_partial_degree(m2f2)
    assert rep.m == 3
    assert rep.witness.degree == 3
    assert rep.total.exact == 4  # zero element


def test_min_partial_degree_sim2(sim2):
    rep = min_partial_degree(sim2)
    assert rep.m == 2
    # inverse semigroup: witness acts by partial bijections
    assert rep.witness.restriction_is_injective()


def test_min_partial_degree_chain3():
    s = builders.chain_semilattice(3).semigroup
    rep = min_partial_degree(s)
    assert rep.m == 2
    assert [c.d for c in rep.per_class] == [1, 1]


def test_min_partial_degree_rejects_non_semisimple(t2):
    with pytest.raises(NotRhodesSemisimple) as exc:
        min_partial_degree(t2)
    assert any(len(c) > 1 for c in exc.value.classes)


def test_min_partial_degree_trivial():
    s = from_table([[0]])
    rep = min_partial_degree(s)
    assert rep.m == 0
    assert rep.witness.degree == 0
    assert rep.total.exact == 0  # the empty action is total on zero points


def test_jobs_flag_deterministic():
    s = builders.symmetric_inverse(3).semigroup
    a = min_partial_degree(s, jobs=1)
    b = min_partial_degree(s, jobs=4)
    assert a.m == b.m
    assert np.array_equal(a.witness.maps, b.witness.maps)
    assert a.to_json() == b.to_json()


def test_left_degrees_aggm_example():
    s = builders.aggm_01(2, 3, [frozenset({0, 1})]).semigroup
    lr = left_degrees(s)
    assert lr.right_m == 2
    assert lr.left.m == 3
    assert lr.bound_ok


def test_left_degrees_inverse_symmetric(sim2):
    lr = left_degrees(sim2)
    assert lr.left.m == 2 and lr.right_m == 2


def test_left_degrees_commutative_identical():
    s = builders.cyclic(6).semigroup
    lr = left_degrees(s)
    right = min_partial_degree(s)
    assert lr.left.m == right.m == 5
    assert lr.left.to_json() == right.to_json()


def test_left_degrees_oracle_fallback():
    # S_2 x RB(2,2) is not Rhodes semisimple on either side; m(S) is unknown,
    # so an explicit cap is required, and the oracle resolves the left degree
    s = builders.rectangular_group(builders.cyclic(2).semigroup, 2, 2).semigroup
    with pytest.raises(NotRhodesSemisimple):
        left_degrees(s)
    lr = left_degrees(s, oracle_max_degree=4)
    assert lr.left.source == "oracle"
    # the semigroup is isomorphic to its opposite; the oracle refutes degree 3
    assert lr.left.m == 4
    assert lr.right_m is None and lr.bound_ok is None


def clifford_c4_over_c2():
    """Chain of groups C_4 -> C_2 with linking map a -> a mod 2."""
    n = 6
    t = np.zeros((n, n), dtype=int)
    for a in range(4):
        for b in range(4):
            t[a, b] = (a + b) % 4
        for h in range(2):
            t[a, 4 + h] = 4 + (a + h) % 2
            t[4 + h, a] = 4 + (h + a) % 2
    for h in range(2):
        for k in range(2):
            t[4 + h, 4 + k] = 4 + (h + k) % 2
    return from_table(t)


def test_clifford_chain_with_proper_invisible_subgroup():
    # the top class has M_J = ker(C_4 -> C_2), a proper nontrivial normal
    # subgroup: the C_2-stabilizer orbit is inadmissible (its core meets M_J)
    # and the regular orbit is forced, giving d = 4; the bottom group adds 2
    from sgmindeg.oracle import OracleQuery, brute_min_degree

    s = clifford_c4_over_c2()
    g = greens(s)
    rep = rm_irreducible_classes(s, g)
    assert rep.irreducible_ids() == [0, 1]
    top = rep.per_class[0]
    assert len(top.mj) == 2 and len(g.hclasses[g.hclass_of[top.e]]) == 4
    r = min_partial_degree(s)
    assert r.m == 6
    assert [c.d for c in r.per_class] == [4, 2]
    res = brute_min_degree(OracleQuery(semigroup=s, mode="partial", min_n=1, max_n=6, budget_secs=200))
    assert res.status == "found" and res.degree == 6


def test_brandt_over_c2_theory_and_oracle_agree():
    # inverse semigroup with a nontrivial maximal subgroup in its irreducible
    # class: m = l_J * n_J = 2 * 2, confirmed by the oracle
    from sgmindeg.congruence import is_inverse_semigroup
    from sgmindeg.oracle import OracleQuery, brute_min_degree

    s = builders.rees_matrix(
        builders.cyclic(2).semigroup, [[1, 0], [0, 1]], adjoin_zero=True
    ).semigroup
    assert is_inverse_semigroup(s)
    rep = min_partial_degree(s)
    assert rep.m == 4
    assert rep.per_class[0].fast_path == "column_condition"
    assert rep.witness.restriction_is_injective()
    res = brute_min_degree(OracleQuery(semigroup=s, mode="partial", min_n=1, max_n=4))
    assert res.status == "found" and res.degree == 4


def test_total_degree_interval_and_oracle_resolution():
    # no zero, partial witness: the total degree is only bracketed by theory
    s = builders.direct_product(
        builders.cyclic(2).semigroup, builders.chain_semilattice(2).semigroup
    )
    rep = min_partial_degree(s)
    assert rep.m == 3
    assert rep.total.exact is None
    assert (rep.total.lower, rep.total.upper) == (3, 4)
    resolved = min_partial_degree(s, resolve_total_with_oracle=True)
    assert resolved.total.exact is not None


def test_witness_action_verified(builder_corpus):
    from sgmindeg.action import check_compatibility, is_faithful

    for b in builder_corpus.values():
        s = b.semigroup
        try:
            rep = min_partial_degree(s)
        except NotRhodesSemisimple:
            continue
        assert rep.witness.degree == rep.m
        assert is_faithful(s, rep.witness)[0]
        assert check_compatibility(s, rep.witness)


def test_monotone_sanity_group_bound(builder_corpus):
    # m(S) >= classical minimal faithful degree of G_J whenever M_J = G_J
    from sgmindeg.grouptheory import min_degree_faithful_on

    for b in builder_corpus.values():
        s = b.semigroup
        try:
            rep = min_partial_degree(s)
        except NotRhodesSemisimple:
            continue
        g = greens(s)
        irr = rm_irreducible_classes(s, g)
        for j in irr.irreducible_ids():
            r = rees_coordinatize(s, g, j)
            if len(irr.per_class[j].mj) != r.group_order or r.group_order == 1:
                continue
            gt = GroupTable.of_rees(r)
            lat = subgroup_classes(gt)
            deg, _ = min_degree_faithful_on(gt, tuple(range(gt.order)), lat)
            assert rep.m >= deg
