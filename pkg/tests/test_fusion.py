import itertools

import pytest

from so3rigid import fusion
from so3rigid.cyclo import Cyclotomic, Embedding, embed

z5 = Cyclotomic.zeta(5)


def test_colors():
    assert fusion.colors(5) == [0, 2]
    assert fusion.colors(7) == [0, 2, 4]
    assert fusion.colors(11) == [0, 2, 4, 6, 8]


def test_admissible():
    assert fusion.admissible(2, 2, 2, 5)
    assert not fusion.admissible(0, 0, 2, 5)
    assert all(fusion.admissible(0, 0, 0, level) for level in (5, 7, 9))


def test_twist_values():
    assert fusion.twist(0, 5) == 1
    assert fusion.twist(2, 5) == Cyclotomic.zeta(5, 3)
    assert fusion.twist(4, 7) == Cyclotomic.zeta(7, 3)


@pytest.mark.parametrize("level", [5, 7, 9, 11, 13])
def test_twist_order(level):
    for lam in fusion.colors(level):
        assert fusion.twist(lam, level) ** level == 1


def test_properties():
    for level in (5, 7):
        p = fusion.check_properties(level)
        assert p["I"] and p["II"] and p["III"]
    p9 = fusion.check_properties(9)
    # exponents 0, 8, 6, 3 mod 9 are distinct, so (III) holds although 9 is not prime
    assert p9["twist_exponents"] == {"0": 0, "2": 8, "4": 6, "6": 3}
    assert p9["III"] and not p9["prime"]


def test_quantum_integers():
    assert fusion.quantum_int(0, 5) == 0
    assert fusion.quantum_int(1, 5) == 1
    oracle = (z5 ** 2 - z5 ** 3) / (z5 - z5 ** 4)
    assert fusion.quantum_int(2, 5) == oracle
    assert fusion.quantum_int(2, 5) == Cyclotomic(5, [-1, 0, -1, -1])
    assert fusion.quantum_int(5, 5) == 0


def test_theta_unit_nonzero():
    for level in (5, 7, 9):
        for b in fusion.colors(level):
            assert fusion.theta(0, b, b, level)


def test_sixj_inadmissible_zero():
    assert fusion.sixj(0, 0, 2, 2, 0, 2, 5) == 0
    assert fusion.sixj(2, 2, 2, 2, 0, 4, 7) != 0
    assert fusion.sixj(0, 2, 2, 2, 2, 4, 5) == 0


@pytest.mark.parametrize("level", [5, 7])
def test_tet_symmetries(level):
    cols = fusion.colors(level)
    for a, b, e, c, d, f in itertools.product(cols, repeat=6):
        t = fusion.tet(a, b, e, c, d, f, level)
        # swapping the pair of opposite edges (e, f) and relabeling keeps the network
        assert t == fusion.tet(a, d, f, c, b, e, level)
        assert t == fusion.tet(b, a, e, d, c, f, level)


@pytest.mark.parametrize("level", [5, 7])
def test_f_inverse_relation(level):
    cols = fusion.colors(level)
    for a, b, c, d in itertools.product(cols, repeat=4):
        for i, j in itertools.product(cols, repeat=2):
            s = sum((fusion.sixj(b, c, d, a, j, k, level) * fusion.sixj(a, b, c, d, k, i, level)
                     for k in cols), Cyclotomic.zero(level))
            admissible = fusion.admissible(a, b, i, level) and fusion.admissible(c, d, i, level)
            assert s == (1 if (i == j and admissible) else 0)


def test_fibonacci_f():
    F = [[fusion.sixj(2, 2, 2, 2, i, j, 5) for j in (0, 2)] for i in (0, 2)]
    assert F[0][0] == Cyclotomic(5, [-1, 0, -1, -1])
    assert F[0][1] == Cyclotomic(5, [-3, 0, -2, -2])
    assert F[1][0] == Cyclotomic(5, [1, 0, -1, -1])
    assert F[1][1] == Cyclotomic(5, [1, 0, 1, 1])


@pytest.mark.parametrize("level", [5, 7])
@pytest.mark.parametrize("boundary", [0, 2])
def test_s_matrix_relations(level, boundary):
    S = fusion.s_matrix(level, boundary)
    T = fusion_t(level, boundary)
    S2 = S @ S
    assert S2.scalar_value() is not None
    ST = S @ T
    assert (ST @ ST @ ST) == S2.scale(((ST @ ST @ ST).entries[0]) / S2.entries[0])
    assert S2 @ T == T @ S2


def fusion_t(level, boundary):
    from so3rigid.cyclo import CMatrix
    return CMatrix.diag([fusion.twist(m, level) for m in fusion.torus_colors(level, boundary)], level)


def test_s_matrix_level5():
    S = fusion.s_matrix(5)
    assert S.shape == (2, 2)
    assert all(S.entries)
    assert S.transpose() == S


def test_loop_value_positive_at_unitary_embedding():
    for level, k in ((5, 1), (7, 2)):
        e = Embedding(level, k)
        assert all(embed(fusion.loop_value(c, level), e).real > 0 for c in fusion.colors(level))
