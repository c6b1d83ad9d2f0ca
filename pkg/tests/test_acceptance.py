"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are printed at the end of every pytest run (see conftest.py) and
when this file is executed directly:

    python tests/test_acceptance.py
"""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
import time
from itertools import product
from pathlib import Path

import pytest

from bigbracket.bracket import ProtoStructure, ad_unchecked, bracket, bracket_oracle, mc_check, pairing_gram, random_degree3, verify_poisson
from bigbracket.formality import boundary_construct, degree_census, h1_vanishing_check, invariant_form_space, proportionality, random_symmetric
from bigbracket.graded import Element, dim_by_degree, full_basis
from bigbracket.gs import builtin_bialgebra, check_square_zero
from bigbracket.lie import JacobiError, LieAlgebraData, abelian, lambda_element, nonabelian2, satisfies_jacobi
from bigbracket.linalg import cohomology_dims
from bigbracket.tetra import (
    abelian_transport_check,
    coinduced_complex,
    h_from_hom,
    hom_complex,
    hom_from_h,
    induced_complex,
    yoneda_product,
)

RESULTS: list[str] = []
HERE = Path(__file__).parent


def record(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def basis(d):
    return [Element({m: 1}) for m in full_basis(d)]


def test_01_poisson_verification():
    limits = {1: 1.0, 2: 30.0, 3: 600.0}
    parts, ok = [], True
    for d in (1, 2, 3):
        t0 = time.perf_counter()
        rep = verify_poisson(d)  # d = 3: all pairs plus 10^4 random triples
        dt = time.perf_counter() - t0
        ok &= rep.ok and dt < limits[d]
        if d == 3:
            ok &= rep.checked["jacobi"] == 10_000
        parts.append(f"d={d} violations={len(rep.violations)} triples={rep.checked['jacobi']} {dt:.2f}s")
    record(1, "Poisson identities", ok, "; ".join(parts))


def test_02_bracket_oracle():
    pairs, bad = 0, 0
    for d in (1, 2, 3):
        B = basis(d)
        for a, b in product(B, repeat=2):
            pairs += 1
            bad += bracket(a, b) != bracket_oracle(a, b)
    record(2, "bracket = bracket_oracle", bad == 0, f"{pairs} basis pairs over d<=3, {bad} mismatches")


def _d_squared_zero(h: Element, d: int) -> bool:
    return ad_unchecked(ProtoStructure(h, d)).is_square_zero()


def test_03_mc_iff_d_squared():
    rng = random.Random(20240)
    counts = {(True, True): 0, (False, False): 0, (True, False): 0, (False, True): 0}
    low = 0
    for d, density in [(1, 1.0)] * 20 + [(2, 1.0)] * 50 + [(2, 0.3)] * 50:
        h = random_degree3(d, rng, density=density)
        counts[mc_check(ProtoStructure(h, d))[1], _d_squared_zero(h, d)] += 1
        low += 1
    # every degree-3 element is MC when d <= 2, so the converse direction is witnessed at d = 3
    for density in [0.05, 0.1, 0.3] * 20:
        h = random_degree3(3, rng, density=density)
        counts[mc_check(ProtoStructure(h, 3))[1], _d_squared_zero(h, 3)] += 1
    ok = low >= 100 and counts[True, False] == 0 and counts[False, True] == 0
    ok &= counts[True, True] > 0 and counts[False, False] > 0
    record(
        3,
        "MC <=> d_h^2 = 0",
        ok,
        f"{low} samples at d<=2 and 60 at d=3; MC&d2=0: {counts[True, True]}, notMC&d2!=0: {counts[False, False]}, disagreements: {counts[True, False] + counts[False, True]}",
    )


def test_04_gs_square_zero():
    t0 = time.perf_counter()
    parts, ok = [], True
    for name, top in [("trivial", 4), ("group_z2", 4), ("group_z3", 4), ("dual_group_z2", 4), ("sweedler4", 3)]:
        res = check_square_zero(builtin_bialgebra(name), top)
        ok &= res.ok
        parts.append(f"{name}(p+q<={top}): {res.checked - len(res.failures)}/{res.checked}")
    dt = time.perf_counter() - t0
    ok &= dt < 300
    record(4, "GS d1^2 = d2^2 = d1d2+d2d1 = 0", ok, ", ".join(parts) + f", {dt:.1f}s")


def test_05_abelian_hom_complex():
    parts, ok = [], True
    for d in (1, 2, 3):
        C = hom_complex(abelian(d))
        zero = all(C.differential(n).is_zero() for n in C.dims)
        dims = cohomology_dims(C)
        expect = [dim_by_degree(d, n) for n in range(2 * d + 1)]
        got = [dims[n] for n in range(2 * d + 1)]
        ok &= zero and got == expect
        parts.append(f"d={d} dims={got}")
    record(5, "abelian hom-complex = H", ok, "; ".join(parts))


def test_06_yoneda_is_wedge():
    pairs, bad = 0, 0
    for d in (1, 2):
        g = abelian(d)
        for a, b in product(basis(d), repeat=2):
            pairs += 1
            bad += h_from_hom(yoneda_product(hom_from_h(a, d), hom_from_h(b, d), g)) != a * b
    record(6, "Yoneda product = product in H", bad == 0, f"{pairs} class pairs over d<=2, {bad} mismatches")


def test_07_resolution_differentials():
    ok, checked = True, 0
    for g in (abelian(1), abelian(2), nonabelian2()):
        for cap in (1, 2, 3):
            ok &= induced_complex(g, cap).is_square_zero() and coinduced_complex(g, cap).is_square_zero()
            checked += 2
    transports = []
    for d, cap in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        rep = abelian_transport_check(d, cap)
        ok &= rep.ok
        transports.append(f"({d},{cap})")
    record(7, "resolution differentials", ok, f"{checked} truncated complexes square to zero; transport zero at (d,cap) in {' '.join(transports)}")


def test_08_formality_core():
    t0 = time.perf_counter()
    ok = all(degree_census(p)["vanishes"] == (p > 1) for p in range(10))
    forms = 0
    for d in (1, 2, 3, 4):
        rng = random.Random(1000 + d)
        for _ in range(50):
            boundary_construct(random_symmetric(d, rng), d)  # raises unless substitution checks out
            forms += 1
        ok &= h1_vanishing_check(d).ok
    dt = time.perf_counter() - t0
    ok &= dt < 10
    record(8, "formality core", ok, f"census ok, {forms} boundaries verified, h1 check d=1..4, {dt:.2f}s")


def test_09_invariant_forms():
    parts, ok = [], True
    for d in (1, 2, 3):
        dim, basis_ = invariant_form_space(d)
        c = proportionality(basis_[0], pairing_gram(d)) if dim == 1 else None
        ok &= dim == 1 and c is not None and c != 0
        parts.append(f"d={d} dim={dim} ratio={c}")
    record(9, "gl(V)-invariant forms", ok, "; ".join(parts))


def test_10_jacobi_iff_mc():
    rng = random.Random(77)
    agree = {True: 0, False: 0}
    bad = 0
    rejected = 0
    for d in (2, 3):
        for density in (0.15, 0.3, 0.6) * 20:
            c = [(i, j, k, rng.randint(-2, 2)) for i in range(1, d + 1) for j in range(i + 1, d + 1) for k in range(1, d + 1) if rng.random() < density]
            g = LieAlgebraData(d, c, check=False)
            jac = satisfies_jacobi(g)
            bad += mc_check(ProtoStructure(lambda_element(g), d))[1] != jac
            agree[jac] += 1
            if not jac:
                try:
                    LieAlgebraData(d, c)
                except JacobiError:
                    rejected += 1
    ok = bad == 0 and agree[True] > 0 and agree[False] > 0 and rejected == agree[False]
    record(10, "Jacobi <=> [lambda, lambda] = 0", ok, f"{agree[True]} valid, {agree[False]} corrupted (all rejected: {rejected == agree[False]}), {bad} disagreements")


_DRIVER = """
import json, sys, os
from bigbracket.cli import dispatch
from bigbracket.serialize import dumps
os.chdir(sys.argv[1])
out = {}
for name, argv in json.loads(sys.argv[2]).items():
    report, _ = dispatch(argv)
    out[name] = dumps(report.to_json())
sys.stdout.write(json.dumps(out, sort_keys=True))
"""


def test_11_determinism():
    sys.path.insert(0, str(HERE))
    from test_cli import CASES

    argvs = json.dumps({k: v[0] for k, v in CASES.items()})
    runs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [sys.executable, "-c", _DRIVER, str(HERE / "fixtures"), argvs],
            capture_output=True, text=True, env=env, check=True,
        )
        runs.append(json.loads(proc.stdout))
    differ = [k for k in runs[0] if runs[0][k] != runs[1][k]]
    golden_mismatch = [k for k in runs[0] if (HERE / "golden" / f"{k}.json").read_text(encoding="utf-8") != runs[0][k]]
    ok = not differ and not golden_mismatch and len(runs[0]) == len(CASES)
    record(11, "byte-identical reports", ok, f"{len(CASES)} cases across all 11 subcommands, 2 processes with different hash seeds; {len(differ)} differ, {len(golden_mismatch)} off golden")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
