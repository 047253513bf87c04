"""Sanity checks of the reference oracles on groups with known cohomology."""
import random

from so3rigid import coh
from so3rigid.cyclo import ModP

import oracles


def test_trivial_module_mod_p():
    # H^1(C_n, F_p) = Hom(C_n, F_p): one-dimensional exactly when p divides n
    for n, p in ((6, 3), (6, 5), (10, 5), (7, 7), (4, 3)):
        g = oracles.Cyclic(n)
        expected = 1 if n % p == 0 else 0
        assert oracles.brute_h1(g, {"a": [[1]]}, [1], p) == expected
        pres = coh.Presentation(("a",), (f"a^{n}",))
        mod = coh.Module(1, {"a": ((ModP(1, p),),)}, ModP(0, p), ModP(1, p))
        assert coh.h1_presented(pres, mod).h1 == expected


def test_dihedral_rational_is_zero():
    g = oracles.Dihedral(5)
    R = [[int(j == (i + 1) % 5) for j in range(5)] for i in range(5)]
    S = [[int(j == (-i) % 5) for j in range(5)] for i in range(5)]
    assert oracles.brute_h1(g, {"r": R, "s": S}, [(1, 0), (0, 1)], None) == 0


def test_random_instances_small_batch():
    rng = random.Random(99)
    for _ in range(20):
        group, base, pres, gens, p = oracles.random_instance(rng)
        mod = oracles.library_module(group, base, gens, p)
        report = coh.h1_presented(pres, mod)
        assert report.h1 == oracles.brute_h1(group, base, list(gens.values()), p)
        assert report.b1 == report.b1_from_invariants
