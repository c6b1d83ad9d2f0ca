import random
from fractions import Fraction

import pytest

from bigbracket.gs import (
    BUILTIN_BIALGEBRAS,
    DEFAULT_SIGNS,
    AxiomError,
    FiniteBialgebra,
    GSCochain,
    GSSignError,
    SignConvention,
    bialgebra_from_json,
    builtin_bialgebra,
    check_square_zero,
    d1_matrix,
    d2_matrix,
    gs_cohomology,
    gs_d1,
    gs_d2,
    gs_differential,
    total_complex,
)
from bigbracket.linalg import RationalMatrix


def random_cochain(A, p, q, rng):
    ent = {}
    for r in range(A.n**q):
        for c in range(A.n**p):
            if rng.random() < 0.4:
                ent[r, c] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return GSCochain(p, q, RationalMatrix(A.n**q, A.n**p, ent))


class TestBuiltins:
    @pytest.mark.parametrize("name", sorted(BUILTIN_BIALGEBRAS))
    def test_axioms(self, name):
        A = builtin_bialgebra(name)
        A.verify()
        assert FiniteBialgebra(A.n, A.mu, A.delta, A.unit, A.counit).n == A.n

    def test_sizes(self):
        assert builtin_bialgebra("trivial").n == 1
        assert builtin_bialgebra("group_z2").n == 2
        assert builtin_bialgebra("sweedler4").n == 4

    def test_group_like(self):
        A = builtin_bialgebra("group_z2")
        g = {1: Fraction(1)}
        assert A.mult(g, g) == {0: Fraction(1)}
        assert A.comult(g) == {(1, 1): Fraction(1)}

    def test_unknown(self):
        with pytest.raises(ValueError):
            builtin_bialgebra("quaternions")

    def test_json_round_trip(self):
        for name in BUILTIN_BIALGEBRAS:
            A = builtin_bialgebra(name)
            B = bialgebra_from_json(A.to_json())
            assert (B.mu, B.delta, B.unit, B.counit) == (A.mu, A.delta, A.unit, A.counit)


class TestAxiomViolations:
    def _z2_json(self):
        return builtin_bialgebra("group_z2").to_json()

    def test_non_multiplicative_coproduct(self):
        obj = self._z2_json()
        obj["delta"][1] = [["0", "1"], ["0", "0"]]  # Delta(g) = 1 (x) g
        with pytest.raises(AxiomError) as info:
            bialgebra_from_json(obj)
        assert info.value.axiom in {"counit", "compatibility", "coassociativity"}

    def test_incompatible_product(self):
        obj = self._z2_json()
        obj["mu"][1][1] = ["1", "1"]  # g g = 1 + g
        with pytest.raises(AxiomError) as info:
            bialgebra_from_json(obj)
        assert info.value.axiom == "compatibility"

    def test_non_associative_product(self):
        # three elements so that the unit axiom can hold while associativity fails
        mu = {(0, j): {j: 1} for j in range(3)} | {(j, 0): {j: 1} for j in range(3)}
        mu |= {(1, 1): {2: 1}, (1, 2): {}, (2, 1): {1: 1}, (2, 2): {}}
        delta = {i: {(i, i): 1} for i in range(3)}
        with pytest.raises(AxiomError) as info:
            FiniteBialgebra(3, mu, delta, {0: 1}, [1, 1, 1])
        assert info.value.axiom == "associativity"

    def test_bad_unit(self):
        obj = self._z2_json()
        obj["unit"] = ["0", "1"]
        with pytest.raises(AxiomError) as info:
            bialgebra_from_json(obj)
        assert info.value.axiom == "unit"


class TestDifferentials:
    def test_trivial_d1_hand_values(self):
        # a phi(b) - phi(ab) + phi(a) b on the 1-dim algebra, generalised: 1 + sum (-1)^i + (-1)^{p+1}
        T = builtin_bialgebra("trivial")
        for p in range(1, 4):
            for q in range(1, 4):
                expect = 1 + sum((-1) ** i for i in range(1, p + 1)) + (-1) ** (p + 1)
                assert d1_matrix(T, p, q).to_dense() == [[expect]]

    def test_trivial_d2_hand_values(self):
        T = builtin_bialgebra("trivial")
        for p in range(1, 4):
            for q in range(1, 4):
                inner = 1 + sum((-1) ** i for i in range(1, q + 1)) + (-1) ** (q + 1)
                assert d2_matrix(T, p, q).to_dense() == [[(-1) ** p * inner]]

    def test_trivial_identity_cochain(self):
        T = builtin_bialgebra("trivial")
        c = GSCochain(1, 1, RationalMatrix.identity(1))
        a, b = gs_differential(c, T)
        assert (a.p, a.q, a.phi.to_dense()) == (2, 1, [[1]])
        assert (b.p, b.q, b.phi.to_dense()) == (1, 2, [[-1]])

    def test_zero_maps_to_zero(self):
        A = builtin_bialgebra("sweedler4")
        z = GSCochain(2, 1, RationalMatrix.zeros(4, 16))
        assert gs_d1(z, A).phi.is_zero() and gs_d2(z, A).phi.is_zero()

    def test_counit_like_map_d1_squared(self):
        A = builtin_bialgebra("group_z2")
        phi = RationalMatrix(2, 2, {(0, c): A.counit[c] for c in range(2)})
        c = GSCochain(1, 1, phi)
        assert gs_d1(gs_d1(c, A), A).phi.is_zero()

    def test_identity_d2_squared(self):
        A = builtin_bialgebra("group_z2")
        c = GSCochain(1, 1, RationalMatrix.identity(2))
        assert gs_d2(gs_d2(c, A), A).phi.is_zero()

    @pytest.mark.parametrize("name", ["group_z2", "sweedler4"])
    def test_linearity(self, name):
        A = builtin_bialgebra(name)
        rng = random.Random(9)
        for p, q in [(1, 1), (1, 2), (2, 1)]:
            x, y = random_cochain(A, p, q, rng), random_cochain(A, p, q, rng)
            s = Fraction(-2, 3)
            comb = GSCochain(p, q, x.phi.scale(s) + y.phi)
            for op in (gs_d1, gs_d2):
                assert op(comb, A).phi == op(x, A).phi.scale(s) + op(y, A).phi

    def test_shape_check(self):
        A = builtin_bialgebra("group_z2")
        with pytest.raises(ValueError):
            gs_d1(GSCochain(1, 1, RationalMatrix.identity(3)), A)

    def test_edge_cochains_excluded(self):
        with pytest.raises(ValueError):
            GSCochain(0, 1, RationalMatrix.zeros(2, 1))


class TestSquareZero:
    @pytest.mark.parametrize("name,top", [("trivial", 4), ("group_z2", 4), ("dual_group_z2", 4), ("group_z3", 4), ("sweedler4", 3)])
    def test_all_identities(self, name, top):
        res = check_square_zero(builtin_bialgebra(name), top)
        assert res.ok, res.failures
        assert res.checked == 3 * sum(t - 1 for t in range(2, top + 1))

    def test_alternative_last_sign_fails(self):
        res = check_square_zero(builtin_bialgebra("group_z2"), 3, SignConvention(last="p"))
        assert not res.ok

    def test_convention_search_is_unique(self):
        good = []
        for off in (0, 1):
            for last in ("q", "p"):
                for twist in ("none", "p", "q"):
                    s = SignConvention(off, last, twist)
                    if all(check_square_zero(builtin_bialgebra(n), 3, s).ok for n in ("trivial", "group_z2")):
                        good.append(s)
        assert good == [DEFAULT_SIGNS]


class TestCohomology:
    def test_trivial_complex_dims(self):
        C = total_complex(builtin_bialgebra("trivial"), 5)
        assert C.dims == {2: 1, 3: 2, 4: 3, 5: 4}

    def test_trivial(self):
        dims = gs_cohomology(builtin_bialgebra("trivial"), 4)
        assert set(dims) == {0, 1, 2, 3}
        assert dims[0] <= 1

    def test_group_algebras_are_rigid(self):
        for name in ("group_z2", "group_z3", "dual_group_z2"):
            dims = gs_cohomology(builtin_bialgebra(name), 4)
            assert all(v == 0 for v in dims.values())

    def test_sweedler(self):
        assert gs_cohomology(builtin_bialgebra("sweedler4"), 4) == {0: 0, 1: 0, 2: 1, 3: 0}

    def test_sign_bug_names_block(self):
        with pytest.raises(GSSignError) as info:
            gs_cohomology(builtin_bialgebra("group_z2"), 4, SignConvention(last="p"))
        assert "block" in str(info.value)

    def test_range(self):
        with pytest.raises(ValueError):
            gs_cohomology(builtin_bialgebra("trivial"), 1)
