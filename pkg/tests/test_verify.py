import csv
import io
import json

import pytest

from sqfd.verify import (
    CheckResult,
    SweepGrid,
    check_cor21,
    check_cor22,
    check_identities,
    check_jpei,
    check_oracle,
    check_qdepth_bounds,
    check_t31,
    check_t33,
    errata_findings,
    sweep,
)


def pick(results, id, **params):
    hits = [r for r in results if r.id == id and all(r.params.get(k) == v for k, v in params.items())]
    assert len(hits) == 1, (id, params, hits)
    return hits[0]


def test_check_result_relations():
    assert CheckResult.make("x", {}, 3, 3, "=").holds
    assert not CheckResult.make("x", {}, 2, 3, ">=").holds
    r = CheckResult.make("x", {"n": 1}, 4, 3, "<=", blocking=False)
    assert r.discrepancy and not r.failed
    assert r.to_dict()["lhs"] == "4"


class TestPathChecks:
    def test_t31_examples(self):
        res = check_t31(7, 3)
        r = pick(res, "t31.2", k=3)
        assert (r.lhs, r.holds) == (5, True)
        r = pick(res, "t31.1", k=0)
        assert (r.lhs, r.rhs) == (1, 1)
        r = pick(res, "t31.3", k=0)
        assert (r.lhs, r.rhs, r.holds) == (1, 1, True)
        assert all(r.holds for r in res)
        # k ranges: 0..d for items 1-2 and 0..d+1 for item 3, with d = 4
        assert sum(r.id == "t31.3" for r in res) == 6

    def test_cor21(self):
        res = check_cor21(4)
        assert pick(res, "caz2-1.d").lhs == 2
        assert pick(res, "caz2-1.2", k=2).lhs == 0  # beta^2 of (1,4,3) = (1,2,0)
        assert all(r.holds for r in check_cor21(2))
        assert all(pick(check_cor21(n), "caz2-1.2", k=0).lhs == 1 for n in range(2, 30))

    def test_cor21_domain(self):
        with pytest.raises(ValueError):
            check_cor21(1)


class TestCycleChecks:
    def test_t33_item2_at_5_3(self):
        res = check_t33(5, 3)
        assert pick(res, "t33.d").holds
        assert pick(res, "t33.2", k=3).lhs == 2
        r = pick(res, "t33.2", k=4)
        assert (r.lhs, r.holds, r.blocking) == (-1, False, True)

    def test_t33_item1_k0(self):
        for n, m in [(6, 2), (9, 4), (12, 5)]:
            r = pick(check_t33(n, m), "t33.1", k=0)
            assert r.lhs == 1 and r.holds

    def test_printed_variant_is_non_blocking(self):
        res = check_t33(8, 3, "printed")
        assert not any(r.blocking for r in res if r.id != "t33.d")

    def test_t33_variants_differ_at_8_3(self):
        printed = check_jpei(8, 3)
        r = pick(printed, "jpei.printed-vs-corrected", k=4)
        assert (r.lhs, r.rhs, r.discrepancy) == (5, 7, True)
        b_p = pick(check_t33(8, 3, "printed"), "t33.2", k=4).lhs
        b_c = pick(check_t33(8, 3, "corrected"), "t33.2", k=4).lhs
        assert b_p != b_c

    def test_m2_cycle_checks_hold(self):
        for n in range(3, 40):
            assert all(r.holds for r in check_t33(n, 2))

    def test_cor22_examples(self):
        res = check_cor22(3)
        assert pick(res, "caz2-2.2", k=2).lhs == 1
        assert all(pick(check_cor22(n), "caz2-2.1", k=0).rhs == 0 for n in range(3, 20))
        r = pick(check_cor22(4), "caz2-2.3", k=0)
        assert (r.lhs, r.rhs, r.holds) == (0, 0, True)
        assert all(r.holds for r in res if r.id == "caz2-2.d")


class TestIdentitiesAndOracle:
    def test_identity_examples(self):
        res = check_identities(7, 3)
        r = pick(res, "kruk", k=4)
        assert (r.lhs, r.rhs) == (19, 19)
        r = pick(check_identities(5, 3), "chuv", d=3, k=2)
        assert (r.lhs, r.rhs) == (3, 3)
        assert all(r.holds for r in res)

    def test_re4_pascal(self):
        r = pick(check_identities(6, 2), "re4", k=2)
        assert r.params["N"] == 5 and (r.lhs, r.rhs) == (10, 10)

    def test_chuv_only_once_per_n(self):
        assert not any(r.id == "chuv" for r in check_identities(6, 2, chuv=False))

    def test_oracle_examples(self):
        res = check_oracle(7, 3)
        assert all(r.holds for r in res if r.id == "oracle.path-quotient")
        res = check_oracle(8, 3)
        r = pick(res, "oracle.cycle-rel", k=4, variant="printed")
        assert (r.lhs, r.rhs, r.discrepancy) == (5, 7, True)
        assert all(r.holds for r in res if r.params.get("variant") != "printed")

    def test_qdepth_bounds(self):
        res = check_qdepth_bounds(7, 3)
        r = pick(res, "qdepth.path-quotient")
        assert (r.lhs, r.rhs) == (4, 4)
        r = pick(check_qdepth_bounds(5, 3), "qdepth.cycle-rel")
        assert (r.lhs, r.rhs, r.holds) == (3, 4, False)
        r = pick(check_qdepth_bounds(6, 1), "qdepth.path-quotient")
        assert (r.lhs, r.rhs) == (0, 0)


class TestSweep:
    def test_small_grid(self):
        report = sweep(SweepGrid(n_max=6))
        keys = [r.sort_key() for r in report.results]
        assert keys == sorted(keys)
        fails = {r.id for r in report.failures}
        assert fails == {"t33.2", "qdepth.cycle-rel"}
        assert report.failures == [r for r in report.results if r.failed]

    def test_printed_empty_vector_is_a_discrepancy(self):
        r = pick(check_qdepth_bounds(4, 3, "printed"), "qdepth.cycle-rel")
        assert (r.lhs, r.discrepancy, r.failed) == (-1, True, False)

    def test_m2_grid_is_clean(self):
        report = sweep(SweepGrid(n_max=60, m_values=(2,), checks=("t31", "cor21", "t33", "cor22", "qdepth", "jpei")),
                       errata=False)
        assert report.ok and not report.discrepancies

    def test_empty_grid(self):
        with pytest.raises(ValueError, match="empty"):
            sweep(SweepGrid(n_min=5, n_max=4))

    def test_unknown_group(self):
        with pytest.raises(ValueError):
            SweepGrid(checks=("nope",))

    def test_json_and_csv(self):
        report = sweep(SweepGrid(n_min=8, n_max=8, m_values=(3,), checks=("oracle", "jpei")))
        doc = json.loads(report.to_json())
        assert set(doc) >= {"meta", "ranges", "results", "discrepancies", "summary", "errata"}
        assert doc["summary"]["fail"] == 0 and doc["summary"]["disc"] == len(doc["discrepancies"]) > 0
        row = doc["results"][0]
        assert set(row) == {"id", "params", "lhs", "rhs", "relation", "holds", "blocking"}
        assert isinstance(row["lhs"], str)
        rows = list(csv.DictReader(io.StringIO(report.to_csv())))
        assert len(rows) == len(doc["results"])
        assert rows[0]["lhs"] == row["lhs"]

    def test_big_integers_survive_csv(self):
        report = sweep(SweepGrid(n_min=60, n_max=60, m_values=(30,), checks=("identities",)), errata=False)
        big = max(report.results, key=lambda r: abs(r.lhs))
        assert abs(big.lhs) > 2 ** 53  # past exact float range
        assert str(big.lhs) in report.to_csv()


def test_errata_findings():
    found = {e["id"]: e for e in errata_findings()}
    assert found["example-run-sequence"]["evidence"]["support_in_path_ideal"] is True
    assert found["example-run-sequence"]["evidence"]["sequence_valid"] is False
    assert found["inverse-slot-index"]["evidence"]["mismatches"] > 0
    ev = found["reconstruction-subscript"]["evidence"]
    assert ev["with_beta_j"] == ev["alpha"] != ev["with_beta_k"]
    ev = found["cycle-rel-exponent"]["evidence"]
    assert (ev["printed"], ev["corrected"], ev["oracle"]) == (5, 7, 7)
    assert found["cycle-rel-depth-bound"]["evidence"]["qdepth"] == 3
    json.dumps(list(found.values()))
