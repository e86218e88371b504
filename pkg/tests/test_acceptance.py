"""Acceptance criteria 1-8, exact-zero tolerance, one verdict line each."""

import random
import time

import pytest

from recenters.baxterize import RATIONAL, TRIGONOMETRIC, CurrentR, check_qybe, current_inverse, random_triples
from recenters.birank import birank_from_series, compute_birank
from recenters.rs_algebra import (
    QUADRATIC,
    LINEAR,
    AlgebraSpec,
    centrality_condition,
    check_first_central,
    check_higher_central,
    check_push_through,
    commutator_coefficient,
    commutator_identity_parts,
    critical_charge,
    engine_soundness,
    generic_points,
    random_noncritical_charge,
)
from recenters.scalars import ONE, ZERO, random_scalar
from recenters.symmetry import check_suite, from_name
from recenters.tensor import identity

SEED = 2024

SYMMETRY_SUITE = [
    "flip:2", "flip:3", "superflip:1|1", "superflip:2|1",
    "dj:2:3/2", "dj:2:2", "dj:3:3/2", "dj:3:2", "qsuper:1|1:2",
]
TRIG_CENTRAL = ["dj:2:2", "dj:3:3/2", "qsuper:1|1:2"]
RAT_CENTRAL = ["flip:2", "flip:3", "superflip:1|1"]


def _pairs(spec, tag: str, count: int = 3, k: int = 1):
    rng = random.Random(f"{SEED}:{tag}")
    return [tuple(generic_points(spec, 2, rng, k)) for _ in range(count)]


def _charges(b, flavor):
    crit = critical_charge(b, flavor)
    rng = random.Random(f"{SEED}:charge:{b.name}")
    out = [("critical", crit)]
    if crit != ONE:
        out.append(("one", ONE))
    out.append(("random", random_noncritical_charge(b, flavor, rng)))
    return out


def _centrality_combos():
    """(spec, tag, k) for every algebra used by criteria 4-7."""
    combos = []
    for names, flavor in ((TRIG_CENTRAL, TRIGONOMETRIC), (RAT_CENTRAL, RATIONAL)):
        for name in names:
            b = from_name(name)
            for label, c in _charges(b, flavor):
                combos.append((AlgebraSpec(b, flavor, c), f"c4:{name}:{label}", 1))
    dj = from_name("dj:2:2")
    for label, c in (("critical", critical_charge(dj)), ("generic", _generic_charge(dj))):
        for k in (2, 3):
            combos.append((AlgebraSpec(dj, TRIGONOMETRIC, c), f"c5:{label}:{k}", k))
    for name in ("dj:2:2", "qsuper:1|1:2"):
        for k in (1, 2, 3):
            combos.append((AlgebraSpec(from_name(name), TRIGONOMETRIC, ONE), f"c6:{name}:{k}", k))
    for name, c in (("qsuper:1|1:2", ONE), ("superflip:1|1", ZERO)):
        for k in (1, 2, 3):
            combos.append((AlgebraSpec(from_name(name), None, c), f"c7:{name}:{k}", k))
    return combos


def _generic_charge(b):
    return random_noncritical_charge(b, TRIGONOMETRIC, random.Random(f"{SEED}:generic"))


def test_criterion_1_symmetry_suite(verdict):
    t = time.perf_counter()
    failures = {}
    for name in SYMMETRY_SUITE:
        res = check_suite(from_name(name))
        bad = [k for k, ok in res.items() if not ok]
        if bad:
            failures[name] = bad
    dt = time.perf_counter() - t
    ok = not failures and dt < 30
    verdict("1 symmetry suite", ok, f"{len(SYMMETRY_SUITE)} braidings, {dt:.1f}s" + (f", failures {failures}" if failures else ""))
    assert ok


def test_criterion_2_birank(verdict):
    t = time.perf_counter()
    expected = {
        "flip:2": (2, 0), "flip:3": (3, 0), "dj:2:2": (2, 0), "dj:2:3/2": (2, 0), "dj:3:3/2": (3, 0),
        "superflip:1|1": (1, 1), "superflip:2|1": (2, 1), "superflip:1|2": (1, 2), "qsuper:1|1:2": (1, 1),
    }
    got = {name: compute_birank(from_name(name)).pair for name in expected}
    series = {N: birank_from_series([1, N, 1, 0, 0]).pair for N in (2, 3, 5)}
    dt = time.perf_counter() - t
    ok = got == expected and all(p == (2, 0) for p in series.values()) and dt < 10
    verdict("2 bi-rank", ok, f"{len(expected)} braidings and series 1+Nt+t^2, {dt:.1f}s")
    assert ok


def test_criterion_3_baxterization(verdict):
    t = time.perf_counter()
    rat = ["flip:2", "flip:3", "superflip:1|1", "superflip:2|1"]
    trig = ["dj:2:3/2", "dj:2:2", "dj:3:3/2", "qsuper:1|1:2"]
    qybe_ok = True
    for i, name in enumerate(rat + trig):
        flavor = RATIONAL if name in rat else TRIGONOMETRIC
        fam = CurrentR(from_name(name), flavor)
        for triple in random_triples(5, SEED + i):
            qybe_ok &= check_qybe(fam, [triple], SEED).is_zero()
    b = from_name("flip:2")
    control = check_qybe(lambda u, v: b.R + identity(2, 2) * (1 / (u - v) ** 2), random_triples(5, SEED))
    rng = random.Random(SEED)
    inv_ok = True
    for name in ("dj:2:2", "qsuper:1|1:2", "flip:3"):
        bb = from_name(name)
        I = identity(bb.N, 2)
        for _ in range(5):
            g = random_scalar(rng, signed=True)
            inv_ok &= ((bb.R + I * g) @ current_inverse(bb, g)) == I
    dt = time.perf_counter() - t
    ok = qybe_ok and not control.is_zero() and inv_ok and dt < 30
    verdict("3 baxterization", ok, f"QYBE {qybe_ok}, control nonzero {not control.is_zero()}, inverse {inv_ok}, {dt:.1f}s")
    assert ok


def test_criterion_4_critical_charge_iff(verdict):
    t = time.perf_counter()
    problems = []
    cases = 0
    for spec, tag, _ in _centrality_combos():
        if not tag.startswith("c4:"):
            continue
        crit = spec.charge == critical_charge(spec.braiding, spec.flavor)
        for u, v in _pairs(spec, tag):
            cases += 1
            res = check_first_central(spec, u, v)
            cond_zero = centrality_condition(spec, u, v) == (ZERO, ZERO)
            if res.is_zero() != crit or cond_zero != res.is_zero():
                problems.append((tag, str(u), str(v)))
    dt = time.perf_counter() - t
    ok = not problems and dt < 300
    verdict("4 critical-charge iff", ok, f"{cases} cases, {dt:.1f}s" + (f", mismatches {problems}" if problems else ""))
    assert ok


def test_criterion_5_push_through(verdict):
    t = time.perf_counter()
    problems = []
    cases = 0
    for spec, tag, k in _centrality_combos():
        if not tag.startswith("c5:"):
            continue
        for u, v in _pairs(spec, tag, k=k):
            cases += 1
            if not check_push_through(spec, k, u, v).is_zero():
                problems.append(tag)
    dt = time.perf_counter() - t
    ok = not problems and dt < 120
    verdict("5 push-through", ok, f"{cases} cases (k = 2, 3), {dt:.1f}s")
    assert ok


def test_criterion_6_commutator_identity(verdict):
    t = time.perf_counter()
    problems = []
    linear_zero = []
    cases = 0
    for spec, tag, k in _centrality_combos():
        if not tag.startswith("c6:"):
            continue
        alpha_zero = spec.alpha() == 0
        for u, v in _pairs(spec, tag, k=k):
            cases += 1
            lhs, comm = commutator_identity_parts(spec, k, u, v)
            res = lhs - comm.scale(commutator_coefficient(spec, u, v, QUADRATIC))
            linear = lhs - comm.scale(commutator_coefficient(spec, u, v, LINEAR))
            linear_zero.append(linear.is_zero())
            # alpha != 0: commutator of the power sum is nonzero; alpha = 0: it vanishes
            if not res.is_zero() or lhs.is_zero() != alpha_zero:
                problems.append(tag)
    dt = time.perf_counter() - t
    ok = not problems and dt < 300
    verdict(
        "6 commutator identity at c = 1",
        ok,
        f"{cases} cases, {dt:.1f}s; coefficient -a*lam^2*uv/(u-v)^2"
        f" (a*lam*uv/(u-v)^2 zero in {sum(linear_zero)}/{cases})",
    )
    assert ok


def test_criterion_7_mm_centrality(verdict):
    t = time.perf_counter()
    problems = []
    cases = 0
    for spec, tag, k in _centrality_combos():
        if not tag.startswith("c7:"):
            continue
        for u, v in _pairs(spec, tag, k=k):
            cases += 1
            if not check_higher_central(spec, k, u, v).is_zero():
                problems.append(tag)
    dt = time.perf_counter() - t
    ok = not problems and dt < 300
    verdict("7 (m|m) centrality", ok, f"{cases} cases (k = 1, 2, 3), {dt:.1f}s")
    assert ok


def test_criterion_8_engine_soundness(verdict):
    t = time.perf_counter()
    problems = []
    runs = 0
    seen = set()
    for spec, tag, k in _centrality_combos():
        rng = random.Random(f"{SEED}:third:{tag}")
        for u, v in _pairs(spec, tag, k=k):
            # each sampled pair with every quantum-power partner, plus a fresh third point
            partners = {spec.shift(v, j) for j in range(k)}
            for p in sorted(partners):
                key = (spec.describe(), u, p)
                if key in seen:
                    continue
                seen.add(key)
                w = _third_point(spec, rng, (u, v, *partners), k)
                runs += 1
                rep = engine_soundness(spec, u, p, w)
                if not rep.ok:
                    problems.append((tag, rep))
    dt = time.perf_counter() - t
    ok = not problems and dt < 120
    verdict("8 engine soundness", ok, f"{runs} point triples, exhaustive degree-3 confluence, {dt:.1f}s")
    assert ok


def _third_point(spec, rng, taken, k):
    while True:
        (w,) = generic_points(spec, 1, rng, k)
        if all(spec.shift(w, j) != x for x in taken for j in range(-k - 1, k + 2)):
            return w


@pytest.mark.parametrize("name", TRIG_CENTRAL)
def test_condition_closed_form(name):
    """The condition forces c = 1/(1 - a lam), which equals the critical charge."""
    b = from_name(name)
    assert 1 / (1 - b.alpha * b.lam) == critical_charge(b)
