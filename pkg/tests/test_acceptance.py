"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each test collects every violation it finds and fails with the full list, so
a red criterion shows exactly which (n, m, k) instances break it.
"""
import json
import re
import time

import pytest

from sqfd.cli import main
from sqfd.extbinom import ext_binom, ext_binom_ie
from sqfd.hilbert import alpha_from_beta, beta_from_alpha, chu_vandermonde
from sqfd.ideals import (
    PathFamily,
    RunSequence,
    alpha_path_quotient,
    alpha_vector,
    monomial_to_seq,
    seq_to_monomial,
)
from sqfd.verify import (
    check_cor21,
    check_cor22,
    check_oracle,
    check_qdepth_bounds,
    check_t31,
    check_t33,
)

criterion = pytest.mark.criterion


def _failed(results):
    return [r for r in results if r.failed]


def _describe(bad, limit=12):
    head = [f"{r.id} {r.params}: {r.lhs} {r.relation} {r.rhs} is false" for r in bad[:limit]]
    more = f" ... and {len(bad) - limit} more" if len(bad) > limit else ""
    return "\n".join(head) + more


@criterion(1, "golden value ext_binom(4,3,4) = alpha_4(S/I_7,3) = 19")
def test_golden_value():
    assert ext_binom(4, 3, 4) == alpha_path_quotient(7, 3, 4) == 19


@criterion(2, "golden bijection (0,1,1,2) <-> {2,4,6,7} at n=7, m=3")
def test_golden_bijection():
    a = RunSequence((0, 1, 1, 2), 7, 3)
    assert seq_to_monomial(a) == frozenset({2, 4, 6, 7})
    assert monomial_to_seq({2, 4, 6, 7}, PathFamily(7, 3)) == a


@criterion(3, "closed-form alpha equals enumeration for 2 <= n <= 18, all m, all k (< 5 min)")
def test_oracle_equivalence():
    start = time.perf_counter()
    results = [r for n in range(2, 19) for m in range(1, n + 1) for r in check_oracle(n, m)]
    elapsed = time.perf_counter() - start
    corrected = [r for r in results if r.blocking]
    assert {r.id for r in corrected} == {
        "oracle.path-quotient", "oracle.path-ideal",
        "oracle.cycle-quotient", "oracle.cycle-ideal", "oracle.cycle-rel",
    }
    bad = _failed(results)
    assert not bad, _describe(bad)
    assert elapsed < 300


@criterion(4, "identity suites exact on full ranges (< 1 min)")
def test_identity_suites():
    start = time.perf_counter()
    bad = []
    for N in range(41):
        for m in range(1, 9):
            for k in range(N * (m - 1) + 1):
                v = ext_binom(N, m, k)
                if v != ext_binom_ie(N, m, k):
                    bad.append(("kruk", N, m, k))
                if N >= 1 and v != sum(ext_binom(N - 1, m, k - i) for i in range(m)):
                    bad.append(("re4", N, m, k))
    for n in range(101):
        for d in range(n + 1):
            for k in range(d + 1):
                lhs, rhs = chu_vandermonde(n, d, k)
                if lhs != rhs:
                    bad.append(("chuv", n, d, k))
    for n in range(1, 19):
        tags = ["path-quotient", "path-ideal"]
        for m in range(1, n + 1):
            vectors = [alpha_vector(t, n, m) for t in tags]
            if n > m >= 2:
                vectors += [alpha_vector(t, n, m, v)
                            for t in ("cycle-quotient", "cycle-ideal", "cycle-rel")
                            for v in ("corrected", "printed")]
            for alpha in vectors:
                for d in range(n + 1):
                    if alpha_from_beta(beta_from_alpha(alpha, d)) != alpha.values[: d + 1]:
                        bad.append(("roundtrip", alpha.source, n, m, d))
    elapsed = time.perf_counter() - start
    assert not bad, bad[:20]
    assert elapsed < 60


@criterion(5, "t31 items 1-3 for 1 <= m <= n <= 60; caz2-1, caz2-2 for n <= 200 (< 2 min)")
def test_path_theorems_and_m2_corollaries():
    start = time.perf_counter()
    results = [r for n in range(1, 61) for m in range(1, n + 1) for r in check_t31(n, m)]
    results += [r for n in range(2, 201) for r in check_cor21(n)]
    results += [r for n in range(3, 201) for r in check_cor22(n)]
    elapsed = time.perf_counter() - start
    assert {r.id.split(".")[0] for r in results} == {"t31", "caz2-1", "caz2-2"}
    bad = _failed(results)
    assert not bad, _describe(bad)
    assert elapsed < 120


@criterion(6, "t33 items 1-3, corrected alpha, for 2 <= m < n <= 40 (< 2 min)")
def test_cycle_theorem():
    # Item 2 claims beta_k^d(J/I) >= 0 at d = phi(n-1,m) + m - 1, which is
    # false for most (n, m) with m >= 3: the oracle-validated alpha(J/I)
    # has a negative beta there. Smallest instance: n=4, m=3, where
    # alpha(J/I) = (0,0,0,2,0) and beta_4^4 = -2.
    start = time.perf_counter()
    results = [r for n in range(3, 41) for m in range(2, n) for r in check_t33(n, m, "corrected")]
    elapsed = time.perf_counter() - start
    bad = _failed(results)
    assert not bad, f"{len(bad)} failures in {sorted({r.id for r in bad})}\n" + _describe(bad)
    assert elapsed < 120


@criterion(7, "printed J/I alpha at (8,3,4) differs from the oracle; both variants agree for m=2, n <= 18")
def test_errata_detection(capsys):
    code = main(["sweep", "--n", "8", "--m", "3", "--checks", "oracle,jpei", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["summary"]["fail"] == 0
    rows = {(r["id"], r["params"].get("variant"), r["params"]["k"]): r for r in doc["results"]}
    printed = rows[("oracle.cycle-rel", "printed", 4)]
    corrected = rows[("oracle.cycle-rel", "corrected", 4)]
    assert (printed["lhs"], printed["rhs"], printed["holds"], printed["blocking"]) == ("5", "7", False, False)
    assert printed in doc["discrepancies"]
    assert corrected["lhs"] == corrected["rhs"] == "7" and corrected["holds"]
    assert all(r["holds"] for r in doc["results"]
               if r["id"].startswith("oracle.") and r["params"].get("variant") != "printed")

    code = main(["sweep", "--n-min", "3", "--n-max", "18", "--m", "2",
                 "--checks", "oracle,jpei", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["discrepancies"] == [] and doc["summary"]["fail"] == 0
    assert any(r["params"].get("variant") == "printed" for r in doc["results"])


@criterion(8, "qdepth >= known lower bounds: path m <= n <= 60, cycle families m < n <= 40 (< 2 min)")
def test_qdepth_bounds():
    # The J/I bound phi(n-1,m) + m - 1 exceeds the Hilbert depth of the
    # oracle-validated poset for most (n, m) with m >= 3 (first at n=4, m=3:
    # qdepth 3 < 4). Since sdepth <= qdepth, that bound cannot hold there.
    start = time.perf_counter()
    results = [r for n in range(1, 61) for m in range(1, n + 1)
               for r in check_qdepth_bounds(n, m) if not r.id.startswith("qdepth.cycle")]
    results += [r for n in range(3, 41) for m in range(2, n)
                for r in check_qdepth_bounds(n, m, "corrected") if r.id.startswith("qdepth.cycle")]
    elapsed = time.perf_counter() - start
    assert {r.id for r in results} == {
        "qdepth.path-quotient", "qdepth.path-ideal",
        "qdepth.cycle-quotient", "qdepth.cycle-rel", "qdepth.cycle-ideal",
    }
    bad = _failed(results)
    assert not bad, f"{len(bad)} failures in {sorted({r.id for r in bad})}\n" + _describe(bad)
    assert elapsed < 120


_TIMING = re.compile(r'"timing": \{[^{}]*\}')


@criterion(9, "sweep JSON identical for --jobs 1 and --jobs 2, timing excluded")
def test_determinism(tmp_path):
    texts = []
    for jobs in ("1", "2"):
        out = tmp_path / f"jobs{jobs}.json"
        main(["sweep", "--n-max", "10", "--oracle-n-max", "10", "--format", "json",
              "--jobs", jobs, "--out", str(out)])
        texts.append(out.read_text())
    assert all(len(_TIMING.findall(t)) == 1 for t in texts)
    assert _TIMING.sub("", texts[0]) == _TIMING.sub("", texts[1])
