"""Acceptance criteria, one test each. Every test prints one PASS/FAIL line.

Run as a script for the lines alone: ``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from spectral_extremal.analysis import complete_minus_edge_scaled, gap_row, limit_report, sandwich  # noqa: E402
from spectral_extremal.certificates import (  # noqa: E402
    PATTERNS,
    audit_forbidden,
    demo_host,
    polynomial_suite,
    replacement_delta,
)
from spectral_extremal.analysis import cioaba_check  # noqa: E402
from spectral_extremal.config import Config  # noqa: E402
from spectral_extremal.constructions import extremal_delta3, extremal_delta4  # noqa: E402
from spectral_extremal.graph import complete_minus_edge, is_connected, is_isomorphic, path_graph  # noqa: E402
from spectral_extremal.oracle import enumerate_extremal  # noqa: E402
from spectral_extremal.spectral import gap_identities_residual, perron  # noqa: E402
from spectral_extremal.switching import (  # noqa: E402
    RotationMove,
    is_proper_switch,
    iter_switches,
    local_switch,
    rotate,
)

from conftest import random_connected  # noqa: E402

PI2 = math.pi**2
RESULTS: list[str] = []


def report(num: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}"
    RESULTS.append(line)
    print(line)


def test_01_path_eigenvalue():
    t = time.time()
    err = max(abs(perron(path_graph(n), 1e-13).lambda1 - 2 * math.cos(math.pi / (n + 1))) for n in range(2, 51))
    dt = time.time() - t
    ok = err <= 1e-10 and dt < 1
    report(1, ok, f"max |lambda1(P_n) - 2cos(pi/(n+1))| = {err:.2e} for n=2..50, {dt:.2f}s")
    assert ok


def test_02_complete_minus_edge():
    t = time.time()
    err = max(
        abs(perron(complete_minus_edge(n), 1e-13).lambda1 - (n - 3 + math.sqrt(n * n + 2 * n - 7)) / 2)
        for n in range(4, 13)
    )
    scaled = complete_minus_edge_scaled(2000)
    dt = time.time() - t
    ok = err <= 1e-9 and abs(scaled - 2) / 2 <= 0.01 and dt < 30
    report(2, ok, f"formula error {err:.2e} for n=4..12; n=2000 normalized gap {scaled:.6f} vs 2; {dt:.1f}s")
    assert ok


def test_03_cubic_oracle_uniqueness():
    t = time.time()
    notes = []
    ok = True
    for n in (8, 9, 10):
        rep = enumerate_extremal(n, 3)
        ref = extremal_delta3(n)
        same = len(rep.witnesses) == 1 and is_isomorphic(rep.witnesses[0].graph, ref)
        close = abs(rep.lambda_max - perron(ref, 1e-13).lambda1) <= 1e-9
        ok &= same and close
        notes.append(f"n={n}:{'unique' if same else 'MISMATCH'}")
    for n in range(5, 11):
        rep = enumerate_extremal(n, 3)
        want = (3,) * (n - 1) + ((2,) if n % 2 else (1,))
        good = all(p == want for p in rep.degree_profiles)
        ok &= good
        if not good:
            notes.append(f"profile n={n}: {rep.degree_profiles}")
    dt = time.time() - t
    ok &= dt < 600
    report(3, ok, f"{', '.join(notes)}; profiles (3,...,3,2/1) for n=5..10; {dt:.1f}s")
    assert ok


def test_04_quartic_degree_sequence():
    t = time.time()
    ok = True
    notes = []
    for n in (6, 7, 8):
        rep = enumerate_extremal(n, 4)
        want = (4,) * (n - 1) + (2,)
        good = all(p == want for p in rep.degree_profiles)
        ok &= good
        notes.append(f"n={n}: {len(rep.witnesses)} witness(es){'' if good else ' ' + str(rep.degree_profiles)}")
    dt = time.time() - t
    ok &= dt < 1800
    report(4, ok, f"profile (4,...,4,2): {'; '.join(notes)}; {dt:.1f}s")
    assert ok


def test_05_limits():
    t = time.time()
    r3 = limit_report(3, (201, 401, 801, 1601))
    r4 = limit_report(4, (200, 400, 800, 1600))
    dt = time.time() - t
    ok = r3.verdict and r4.verdict and dt < 900
    report(
        5, ok,
        f"delta=3 n^2(3-l1)={r3.rows[-1].scaled_gap:.6f} (err {r3.rows[-1].rel_err:.2%}, monotone={r3.monotone}); "
        f"delta=4 n^2(4-l1)={r4.rows[-1].scaled_gap:.6f} (err {r4.rows[-1].rel_err:.2%}, monotone={r4.monotone}); {dt:.1f}s",
    )
    assert ok


def test_06_limsup_bounds():
    t = time.time()
    band = Config().bands.limsup
    vals = {d: gap_row(d, 2000).normalized for d in (5, 6, 7)}
    bounds = {5: PI2 / 4, 6: PI2 / 2, 7: PI2 / 4}
    dt = time.time() - t
    ok = all(vals[d] <= bounds[d] * (1 + band) for d in vals) and dt < 900
    report(6, ok, "; ".join(f"delta={d}: {vals[d]:.6f} <= {bounds[d] * (1 + band):.6f}" for d in vals) + f"; {dt:.1f}s")
    assert ok


def test_07_sandwich():
    c = Config().sandwich_c
    band = Config().bands.sandwich_ratio
    ok = True
    parts = []
    for d in (3, 4, 5):
        rows = sandwich(d, (10, 20, 40), c)
        ok &= all(r.holds for r in rows) and abs(rows[-1].ratio - 1) <= band
        parts.append(f"delta={d} ratio@k=40 {rows[-1].ratio:.4f}, holds={all(r.holds for r in rows)}")
    report(7, ok, f"slack {c}/n^3; " + "; ".join(parts))
    assert ok


def test_08_switching():
    t = time.time()
    rng = random.Random(7)
    # degree preservation over 10^4 random valid switches
    preserved = 0
    g = random_connected(rng, 16, 0.25)
    for i in range(10_000):
        if i % 100 == 0:
            g = random_connected(rng, rng.randint(8, 20), 0.25)
        moves = list(iter_switches(g))
        m = rng.choice(moves)
        h = local_switch(g, m)
        preserved += h.degrees() == g.degrees()
        g = h
    # proper switches with connected results do not lower lambda_1
    proper_ok = proper_n = 0
    while proper_n < 1000:
        g = random_connected(rng, rng.randint(8, 20), 0.25)
        pd = perron(g, 1e-13)
        moves = [m for m in iter_switches(g) if is_proper_switch(pd, m)]
        if not moves:
            continue
        h = local_switch(g, rng.choice(moves))
        if not is_connected(h):
            continue
        proper_n += 1
        proper_ok += perron(h, 1e-13).lambda1 >= pd.lambda1 - 1e-9
    # rotations toward a larger Perron component raise lambda_1 strictly
    rot_ok = rot_n = 0
    while rot_n < 1000:
        g = random_connected(rng, rng.randint(8, 20), 0.25)
        x = perron(g, 1e-13).x
        lam = np.linalg.eigvalsh(g.adjacency_matrix())[-1]
        u = rng.randrange(g.n)
        cands = [(v, w) for v in g.adj[u] for w in range(g.n)
                 if w != u and w != v and not g.has_edge(u, w) and x[w] >= x[v] + 1e-9]
        if not cands:
            continue
        v, w = rng.choice(cands)
        h = rotate(g, RotationMove(u, v, w))
        rot_n += 1
        rot_ok += np.linalg.eigvalsh(h.adjacency_matrix())[-1] > lam
    dt = time.time() - t
    ok = preserved == 10_000 and proper_ok == 1000 and rot_ok == 1000 and dt < 300
    report(8, ok, f"degrees kept {preserved}/10000; proper no-loss {proper_ok}/1000; rotation gain {rot_ok}/1000; {dt:.1f}s")
    assert ok


def test_09_identity_residuals():
    rng = random.Random(11)
    worst = 0.0
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 40), rng.uniform(0.03, 0.3))
        pd = perron(g, 1e-12)
        worst = max(worst, *gap_identities_residual(g, pd, g.max_degree()))
    ok = worst <= 1e-8
    report(9, ok, f"max residual of the energy and sum identities over 100 graphs: {worst:.2e}")
    assert ok


def test_10_certificates():
    t = time.time()
    suite = polynomial_suite()
    failed = [r.claim for r in suite if not r.claim_holds]
    dirty = [("d3", n) for n in range(8, 61) if audit_forbidden(extremal_delta3(n), 3)]
    dirty += [("d4", n) for n in range(10, 61) if audit_forbidden(extremal_delta4(n), 4)]
    gains = {}
    for name, spec in PATTERNS.items():
        if spec.replacement is not None:
            host, emb = demo_host(name)
            gains[name] = replacement_delta(host, emb, spec)
    low = [k for k, v in gains.items() if not v > 1e-8]
    dt = time.time() - t
    ok = not failed and not dirty and not low and dt < 600
    report(
        10, ok,
        f"{len(suite) - len(failed)}/{len(suite)} sign claims; audits clean for n<=60: {not dirty}; "
        f"min replacement gain {min(gains.values()):.2e} ({min(gains, key=gains.get)}); {dt:.1f}s",
    )
    assert ok, (failed, dirty, low)


def test_11_counterexample():
    t = time.time()
    found = None
    for k in range(2, 501):
        rep = cioaba_check(53, k)
        if rep.violated:
            found = rep
            break
    dt = time.time() - t
    ok = found is not None and found.diameter_ok and dt < 1200
    if found is None:
        report(11, False, f"no violation for k <= 500; {dt:.1f}s")
    else:
        report(
            11, ok,
            f"delta=53 first violation at k={found.k} (n={found.n}, D={found.diameter} <= {found.diameter_bound}, "
            f"gap {found.gap:.4e} < {found.rhs:.4e}); {dt:.1f}s",
        )
    assert ok


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
