import random
from fractions import Fraction

import pytest

from bigbracket.bracket import mc_check
from bigbracket.lie import (
    BUILTIN_LIE,
    JacobiError,
    LieAlgebraData,
    builtin_lie,
    jacobiator,
    lambda_element,
    satisfies_jacobi,
)


def random_constants(d, rng, density):
    out = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            for k in range(1, d + 1):
                if rng.random() < density:
                    out.append((i, j, k, rng.randint(-2, 2)))
    return out


def test_builtins_satisfy_jacobi():
    for name in BUILTIN_LIE:
        g = builtin_lie(name)
        assert satisfies_jacobi(g)
        assert mc_check(lambda_element(g))[1]


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin_lie("e8")


def test_antisymmetry_normalization():
    g = LieAlgebraData(2, [(2, 1, 2, -1)])
    assert g.bracket(1, 2) == {2: Fraction(1)}
    assert g.bracket(2, 1) == {2: Fraction(-1)}
    assert g.bracket(1, 1) == {}


def test_corrupted_constants_rejected_at_construction():
    with pytest.raises(JacobiError):
        LieAlgebraData(3, [(1, 2, 3, 1), (1, 3, 1, 1)])


def test_jacobiator_of_corrupted_constants_is_nonzero():
    g = LieAlgebraData(3, [(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 1, -1)], check=False)
    assert any(jacobiator(g).values())


def test_lambda_encodes_structure_constants():
    g = builtin_lie("nonabelian2")
    lam = lambda_element(g)
    assert lam.degree() == 3 and lam == lam.project(1, 2)


@pytest.mark.parametrize("d", [2, 3])
def test_jacobi_iff_mc(d):
    rng = random.Random(100 + d)
    seen = {True: 0, False: 0}
    for density in (0.15, 0.3, 0.6):
        for _ in range(40):
            g = LieAlgebraData(d, random_constants(d, rng, density), check=False)
            jac = satisfies_jacobi(g)
            assert mc_check(lambda_element(g))[1] == jac
            seen[jac] += 1
    assert seen[True]
    if d == 3:
        assert seen[False]
