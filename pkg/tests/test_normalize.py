import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paucity import CapacityExceeded, DegenerateSystem, InvalidMinpoly
from paucity.census import naive_census
from paucity.normalize import (
    NonlinearSystem,
    NormalizedSystem,
    SymmetricSystem,
    capacity_bound,
    capacity_check,
    gen_corollary_system,
    gen_theta_system,
    h_box,
    normalize,
)
from paucity.symcore import poly_from_roots
from paucity.verify import SplitMix64


def test_already_triangular():
    n = normalize(SymmetricSystem(3, [[0, 1, 0], [0, 0, 1]]))
    assert (n.degrees, n.leading, dict(n.offdiag)) == ((2, 3), (1, 1), {})
    assert (n.R, n.w, n.A) == ((1,), 1, 1)
    assert n.summary() == "k=3 degrees=[2,3] R=[1] w=1 A=1"


def test_single_monomial_row_is_made_primitive():
    n = normalize(SymmetricSystem(4, [[3, 0, 0, 0]]))
    assert n.degrees == (1,)
    assert n.leading == (1,)
    assert n.R == (2, 3, 4)
    assert n.w == 9


def test_rank_deficient_rows_are_dropped():
    n = normalize(SymmetricSystem(3, [[1, 1, 0], [1, 0, 1], [2, 1, 1]]))
    assert n.r == 2
    assert n.degrees == (2, 3)
    assert n.R == (1,)
    assert n.w == 1


def test_offdiagonal_coefficients():
    # phi_1 = sigma_2 - 2 sigma_1, phi_2 = sigma_3
    n = normalize(SymmetricSystem(3, [[-2, 1, 0], [0, 0, 1]]))
    assert n.offdiag == {(0, 1): 2}
    assert n.rows() == ((-2, 1, 0), (0, 0, 1))


def test_all_zero_system_is_degenerate():
    with pytest.raises(DegenerateSystem):
        normalize(SymmetricSystem(2, [[0, 0], [0, 0]]))


def test_system_shape_validation():
    with pytest.raises(ValueError):
        SymmetricSystem(2, [[1, 2, 3]])
    with pytest.raises(ValueError):
        SymmetricSystem(2, [[1, 0], [0, 1], [1, 1]])
    with pytest.raises(ValueError):
        SymmetricSystem(17, [[1] * 17])
    assert SymmetricSystem(2, [[0, 0], [1, 0]]).rows == ((1, 0),)


def test_normalized_system_validation():
    with pytest.raises(ValueError):
        NormalizedSystem(3, (3, 2), (1, 1))
    with pytest.raises(ValueError):
        NormalizedSystem(3, (2,), (0,))
    with pytest.raises(ValueError):
        NormalizedSystem(3, (2, 3), (1, 1), {(0, 2): 1})  # 2 is not in R
    with pytest.raises(ValueError):
        NormalizedSystem(3, (1, 3), (1, 1), {(0, 2): 1})  # l must be below k_j
    with pytest.raises(DegenerateSystem):
        NormalizedSystem(3, (), ())


def test_cofactors():
    n = NormalizedSystem(3, (2, 3), (2, 3))
    assert n.A == 6
    assert n.cofactors == (3, 2)
    assert all(a * c == n.A for a, c in zip(n.leading, n.cofactors))


def test_nonlinear_system_validation():
    with pytest.raises(ValueError):
        NonlinearSystem(3, (2, 3), (1, 1), (((1, (2, 1)),), ()))  # exponent vector too long
    with pytest.raises(ValueError):
        NonlinearSystem(3, (2, 3), (1, 1), (((1, (-1,)),), ()))
    ns = NonlinearSystem(3, (2, 3), (1, 1), (((1, (2,)),), ()))
    assert ns.R == (1,)
    assert ns.values((1, 2, 3)) == (11 - 36, 6)
    assert ns.summary().endswith("nonlinear")


def test_capacity_examples():
    assert capacity_check(normalize(SymmetricSystem(2, [[0, 1]])), 6) < 1 << 120
    with pytest.raises(CapacityExceeded):
        capacity_check(normalize(SymmetricSystem(16, [[0] * 15 + [1]])), 10**6)
    bound = capacity_check(normalize(SymmetricSystem(3, [[0, 1, 0], [0, 0, 1]])), 32)
    assert bound >= 64**3 * 4 == 1048576
    assert capacity_bound(normalize(SymmetricSystem(3, [[0, 1, 0], [0, 0, 1]])), 32) == 1048576


def test_capacity_nonlinear(nonlinear_system):
    assert capacity_check(nonlinear_system, 10) > 0
    with pytest.raises(CapacityExceeded):
        capacity_check(nonlinear_system, 10**12)


def test_h_box():
    n = normalize(gen_theta_system((1, 0, 1), 4))
    assert h_box(n, 3) == (16 * 3, 16 * 9)


def test_corollary_examples():
    n = normalize(gen_corollary_system(4, 2, 0))
    assert n.degrees == (3, 4)
    assert n.w == 3
    full = normalize(gen_corollary_system(3, 3))
    assert full.degrees == (1, 2, 3)
    assert full.R == ()
    assert full.w == 0
    rng = SplitMix64(7)
    a = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(3)]
    n = normalize(gen_corollary_system(5, 3, a))
    assert n.degrees == (3, 4, 5)
    assert n.w == 3


def test_corollary_dimension_mismatch():
    with pytest.raises(ValueError):
        gen_corollary_system(4, 2, [[1, 2, 3]])
    with pytest.raises(ValueError):
        gen_corollary_system(3, 4)


@given(st.data())
def test_corollary_weight(data):
    k = data.draw(st.integers(1, 6))
    r = data.draw(st.integers(1, k))
    a = data.draw(
        st.lists(st.lists(st.integers(-3, 3), min_size=k - r, max_size=k - r), min_size=r, max_size=r)
    )
    assert normalize(gen_corollary_system(k, r, a)).w == (k - r) * (k - r + 1) // 2


def test_theta_examples():
    assert set(gen_theta_system((1, 0, 1), 4).rows) == {(0, -1, 0, 1), (-1, 0, 1, 0)}
    assert set(gen_theta_system((1, 0, 1), 2).rows) == {(0, 1), (1, 0)}
    assert gen_theta_system((1, -2), 2).rows == ((2, 1),)
    with pytest.raises(InvalidMinpoly):
        gen_theta_system((2, 0, 1), 3)
    with pytest.raises(ValueError):
        gen_theta_system((1, 0, 0, 1), 2)


def _theta_residue(z, minpoly):
    """prod(z_i + theta) reduced modulo minpoly, by polynomial long division."""
    p = list(poly_from_roots(z).coeffs)  # low to high, in theta
    mono = list(reversed(minpoly))  # low to high
    d = len(mono) - 1
    while len(p) > d:
        lead = p.pop()
        for i in range(d):
            p[len(p) - d + i] -= lead * mono[i]
    return tuple(p + [0] * (d - len(p)))


@pytest.mark.parametrize("minpoly", [(1, 0, 1), (1, 1, 1), (1, -2), (1, 0, -2), (1, 3)])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_theta_system_matches_modular_product(minpoly, k):
    system = gen_theta_system(minpoly, k)
    rng = SplitMix64(1000 * k + len(minpoly))
    pts = [rng.tuple(k, 1, 10) for _ in range(40)]
    for x, y in itertools.product(pts[:20], pts[20:]):
        same = _theta_residue(x, minpoly) == _theta_residue(y, minpoly)
        assert (system.values(x) == system.values(y)) == same
    # an explicit solution: a permutation always works
    x = pts[0]
    assert system.values(x) == system.values(tuple(reversed(x)))


def random_system(rng, k):
    r = rng.randint(1, k)
    while True:
        rows = [rng.tuple(k, -3, 3) for _ in range(r)]
        if any(any(row) for row in rows):
            return SymmetricSystem(k, rows)


def test_normalize_preserves_solution_sets():
    rng = SplitMix64(2024)
    for _ in range(50):
        k = rng.randint(1, 4)
        raw = random_system(rng, k)
        norm = normalize(raw)
        tuples = list(itertools.product(range(1, 6), repeat=k))
        raw_keys = {z: raw.values(z) for z in tuples}
        norm_keys = {z: norm.values(z) for z in tuples}
        for x in tuples:
            for y in tuples:
                assert (raw_keys[x] == raw_keys[y]) == (norm_keys[x] == norm_keys[y])


def test_normalize_preserves_solution_sets_through_census():
    rng = SplitMix64(99)
    for _ in range(5):
        raw = random_system(rng, 3)
        a, b = naive_census(raw, 5), naive_census(normalize(raw), 5)
        assert a.row() == b.row() and a.solutions == b.solutions


@given(st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(-5, 5), min_size=k, max_size=k), min_size=1, max_size=k)
))
@settings(max_examples=200)
def test_normal_form_invariants(rows):
    k = len(rows[0])
    raw = SymmetricSystem(k, rows)
    if raw.r == 0:
        return
    n = normalize(raw)
    assert sum(n.R) == n.w
    assert len(n.R) + n.r == k
    assert all(b > a for a, b in zip(n.degrees, n.degrees[1:]))
    assert all(a > 0 for a in n.leading)
    assert normalize(n.to_symmetric()) == n
