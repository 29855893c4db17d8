import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlat import counting
from modlat.counting import (
    ColoringBound,
    DominationFacts,
    chromatic_formula,
    chromatic_upper_bound,
    complement_bijection,
    count_by_length,
    count_complements,
    count_intersecting,
    count_maximal,
    count_maximal_homogeneous,
    domination_formula,
    gaussian_binomial,
    half_pairing,
    strata_counts,
)
from modlat.enumeration import complements_of, enumerate_submodules, enumerate_subspaces
from modlat.errors import UnsupportedCase
from modlat.field import field_of_size
from modlat.graph import build_graph, chromatic_number
from modlat.linalg import subspace_meet_join

from conftest import brute_subspaces, ex, ss


def test_gaussian_binomial_examples():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35 == len(enumerate_subspaces(field_of_size(2), 4, 2))
    assert all(gaussian_binomial(n, 0, d) == 1 for n in range(5) for d in (2, 3))
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3, 2)
    with pytest.raises(ValueError):
        gaussian_binomial(2, 1, 1)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gaussian_symmetry_and_recurrence(d):
    for n in range(9):
        for m in range(n + 1):
            assert gaussian_binomial(n, m, d) == gaussian_binomial(n, n - m, d)
            if 0 < m < n:
                # q-Pascal rule, an independent identity
                assert gaussian_binomial(n, m, d) == gaussian_binomial(n - 1, m - 1, d) + d**m * gaussian_binomial(
                    n - 1, m, d
                )
        if n >= 1:
            assert count_maximal_homogeneous(n + 1, d) == 1 + d * count_maximal_homogeneous(n, d)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_gaussian_vs_brute_subspaces(q, n):
    subs = brute_subspaces(q, n)
    for m in range(n + 1):
        assert sum(len(s) == q**m for s in subs) == gaussian_binomial(n, m, q)


def test_count_maximal_examples():
    assert count_maximal_homogeneous(3, 2) == 7
    assert count_maximal_homogeneous(2, 3) == 4
    assert all(count_maximal_homogeneous(1, d) == 1 for d in (2, 3, 7))
    assert count_maximal(ss(("S", 2, 2), ("T", 1, 2))) == 4
    assert count_maximal(ss(("S", 3, 2))) == 7
    assert count_maximal(ss(("S", 1, 2), ("T", 1, 3), ("U", 1, 5))) == 3


@pytest.mark.parametrize(
    "spec",
    [ss(("S", 2, 2), ("T", 1, 2)), ss(("S", 3, 2)), ss(("S", 2, 3), ("T", 2, 2)), ss(("S", 2, 4), ("T", 1, 3))],
    ids=str,
)
def test_count_maximal_vs_lattice(spec):
    L = enumerate_submodules(spec)
    assert count_maximal(spec) == len(L.strata[L.length - 1])


def test_count_by_length_examples():
    assert count_by_length(ss(("S", 2, 2), ("T", 1, 2)), 1) == 4
    assert count_by_length(ss(("S", 2, 2), ("T", 1, 2), ("U", 1, 2)), 2) == 8
    assert count_by_length(ss(("S", 3, 3)), 0) == 1
    with pytest.raises(ValueError):
        count_by_length(ss(("S", 2, 2)), 3)


@pytest.mark.parametrize(
    "spec",
    [
        ss(("S", 2, 2), ("T", 1, 2)),
        ss(("S", 2, 2), ("T", 1, 2), ("U", 1, 2)),
        ss(("S", 3, 3)),
        ss(("S", 2, 3), ("T", 2, 2)),
        ss(("S", 4, 2)),
    ],
    ids=str,
)
def test_strata_and_complements_vs_lattice(spec):
    L = enumerate_submodules(spec)
    mu = strata_counts(spec)
    assert mu == [len(s) for s in L.strata]
    assert mu == mu[::-1] and mu[0] == mu[-1] == 1
    for X in L.members:
        mults = [len(rows) for rows in X.key]
        assert count_complements(spec, mults) == len(complements_of(L, X))


def test_count_complements_examples():
    spec = ss(("S", 2, 2), ("T", 1, 2))
    assert count_complements(spec, [1, 0]) == 2
    assert count_complements(spec, [0, 0]) == 1
    assert count_complements(ss(("S", 2, 3)), [1]) == 3
    with pytest.raises(ValueError):
        count_complements(spec, [3, 0])
    with pytest.raises(ValueError):
        count_complements(spec, [1])


def test_count_intersecting_examples():
    assert count_intersecting(3, 2, 1, 2, 0) == 4
    assert count_intersecting(2, 2, 1, 1, 0) == 2
    assert all(count_intersecting(4, 3, j, j, j) == 1 for j in range(5))
    with pytest.raises(ValueError):
        count_intersecting(3, 2, 1, 1, 2)
    with pytest.raises(ValueError):
        count_intersecting(3, 2, 2, 3, 1)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_count_intersecting_brute_force(q, n):
    F = field_of_size(q)
    subs = enumerate_subspaces(F, n)
    for U in subs:
        j = U.nrows
        tally = {}
        for W in subs:
            key = (W.nrows, subspace_meet_join(U, W)[0].nrows)
            tally[key] = tally.get(key, 0) + 1
        for i in range(n + 1):
            total = 0
            for m in range(min(i, j) + 1):
                if i - m > n - j:
                    assert tally.get((i, m), 0) == 0
                    continue
                c = count_intersecting(n, q, j, i, m)
                assert c == tally.get((i, m), 0)
                total += c
            assert total == gaussian_binomial(n, i, q)
        assert tally.get((n - j, 0), 0) == q ** ((n - j) * j)


@pytest.mark.parametrize(
    "spec",
    [ss(("S", 2, 2)), ss(("S", 3, 2)), ss(("S", 2, 2), ("T", 1, 2)), ss(("S", 2, 3), ("T", 1, 5)), ss(("S", 4, 2))],
    ids=str,
)
def test_complement_bijection(spec):
    L = enumerate_submodules(spec)
    phi = complement_bijection(L)
    assert sorted(phi.values()) == list(range(len(L)))
    assert phi[L.bottom] == L.top
    for x, y in phi.items():
        assert L.meet(x, y) == L.bottom and L.join(x, y) == L.top
        assert L.lengths[x] + L.lengths[y] == L.length


def test_half_pairing_cases():
    L = enumerate_submodules(ss(("S", 1, 2), ("T", 1, 2)))
    hp = half_pairing(L, 1)
    assert len(hp.A) == len(hp.B) == 1 and {hp.A[0], hp.B[0]} == set(L.strata[1])

    L = enumerate_submodules(ss(("S", 2, 2), ("T", 1, 2), ("U", 1, 2)))
    hp = half_pairing(L, 2)
    assert len(hp.A) == len(hp.B) == 4
    assert sorted(hp.A + hp.B) == list(L.strata[2])
    assert all(L.meet(a, b) == L.bottom for a, b in hp.alpha.items())

    # all multiplicities even, some field odd: a perfect matching
    L = enumerate_submodules(ss(("S", 2, 3)))
    hp = half_pairing(L, 1)
    assert len(hp.A) == len(hp.B) == 2 and hp.excluded is None

    # all multiplicities and fields even: no guarantee unless a vertex is excluded
    L = enumerate_submodules(ss(("S", 2, 2)))
    with pytest.raises(UnsupportedCase):
        half_pairing(L, 1)
    hp = half_pairing(L, 1, excluded_vertex=True)
    assert len(hp.A) == len(hp.B) == 1 and hp.excluded is not None
    assert L.meet(hp.A[0], hp.B[0]) == L.bottom

    with pytest.raises(ValueError):
        half_pairing(enumerate_submodules(ss(("S", 3, 2))), 1)


def test_domination_formula():
    assert domination_formula(DominationFacts(True, True, True, 2)) == 0
    assert domination_formula(DominationFacts(False, False, False)) == 1
    assert domination_formula(DominationFacts(False, True, False)) == 2
    assert domination_formula(DominationFacts(False, True, True, 2)) == 3
    assert domination_formula(DominationFacts(False, True, True, 3)) == 4
    with pytest.raises(ValueError):
        domination_formula(DominationFacts(False, True, True))


def test_chromatic_formula_examples():
    assert chromatic_formula(ss(("S", 3, 2))) == 7
    assert chromatic_formula(ss(("S", 2, 2), ("T", 1, 2), ("U", 1, 2))) == 9
    with pytest.raises(UnsupportedCase):
        chromatic_formula(ss(("S", 2, 2), ("T", 2, 2)))
    with pytest.raises(ValueError):
        chromatic_formula(ss(("S", 2, 2)))
    # bare profiles are accepted too
    assert chromatic_formula([(3, 2)]) == 7


@pytest.mark.parametrize(
    "spec,expected",
    [(ex([4, 2]), 4), (ex([8]), 2), (ex([9]), 1), (ex([8, 2]), None), (ex([9, 3]), None)],
    ids=str,
)
def test_chromatic_upper_bound(spec, expected):
    b = chromatic_upper_bound(spec)
    assert isinstance(b, ColoringBound)
    chi = chromatic_number(build_graph(enumerate_submodules(spec)))
    if expected is not None:
        assert chi == expected
    assert chi <= b.value


def test_chromatic_upper_bound_needs_proper_socle():
    with pytest.raises(ValueError):
        chromatic_upper_bound(ss(("S", 3, 2)))


@st.composite
def profiles(draw):
    k = draw(st.integers(1, 3))
    return [(draw(st.integers(1, 4)), draw(st.sampled_from([2, 3, 4, 5]))) for _ in range(k)]


@settings(max_examples=200, deadline=None)
@given(profiles())
def test_profile_identities(prof):
    mu = strata_counts(prof)
    n = sum(m for m, _ in prof)
    assert len(mu) == n + 1 and mu == mu[::-1]
    total = 1
    for m, d in prof:
        total *= sum(gaussian_binomial(m, j, d) for j in range(m + 1))
    assert sum(mu) == total
    assert mu[n - 1] == count_maximal(prof)
