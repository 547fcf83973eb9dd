import json
import os

import numpy as np
import pytest

from netforge import (EmpiricalParseError, ExperimentSpec, SpecError,
                      empirical_ingest, export_results, export_sweep, gini,
                      hybrid_sweep, run_batch, small_world_scaling)


def spec(**kw):
    base = dict(model="matthew", n=60, m_cap=3, runs=3, seed_base=5)
    base.update(kw)
    return ExperimentSpec(**base)


class TestSpec:
    def test_from_dict_round_trip(self):
        s = spec()
        assert ExperimentSpec.from_dict(s.to_dict()) == s

    def test_unknown_key_rejected(self):
        with pytest.raises(SpecError, match="unknown spec keys"):
            ExperimentSpec.from_dict({"model": "matthew", "n": 10, "bogus": 1})

    def test_bad_runs(self):
        with pytest.raises(SpecError):
            spec(runs=0)

    def test_bad_model_params(self):
        with pytest.raises(SpecError):
            spec(model="hybrid")            # p missing, no sweep
        with pytest.raises(SpecError):
            spec(model="er_directed")       # density missing
        with pytest.raises(SpecError):
            spec(model="nope")

    def test_hybrid_sweep_spec_without_p(self):
        s = spec(model="hybrid", sweep=[0.0, 0.5, 1.0])
        assert s.p is None

    def test_sweep_p_out_of_range(self):
        with pytest.raises(SpecError):
            spec(model="hybrid", sweep=[0.5, 1.5])

    def test_seeds(self):
        s = spec()
        assert [s.config_for_run(r).seed for r in range(3)] == [5, 6, 7]


class TestRunBatch:
    def test_shapes_and_aggregation(self):
        rs = run_batch(spec())
        assert len(rs.reports) == 3
        assert rs.mean_rank_curve.shape == (60,)
        assert rs.per_node_mean_indegree.shape == (60,)
        # both aggregations conserve total edge mass
        assert rs.mean_rank_curve.sum() == pytest.approx(180.0)
        assert rs.per_node_mean_indegree.sum() == pytest.approx(180.0)
        assert np.all(np.diff(rs.mean_rank_curve) <= 0)
        assert rs.provenance["seeds"] == [5, 6, 7]

    def test_deterministic(self):
        a = json.dumps(run_batch(spec()).to_dict(), sort_keys=True)
        b = json.dumps(run_batch(spec()).to_dict(), sort_keys=True)
        assert a == b

    def test_single_run_curves_match_report(self):
        rs = run_batch(spec(runs=1))
        assert rs.mean_rank_curve.tolist() == rs.reports[0].rank_curve

    def test_scalar_stats(self):
        rs = run_batch(spec())
        assert rs.scalar_stats["gini"]["count"] == 3
        per_run = [r.gini for r in rs.reports]
        assert rs.scalar_stats["gini"]["mean"] == pytest.approx(np.mean(per_run))

    def test_full_metrics_adds_paths(self):
        rs = run_batch(spec(runs=1, full_metrics=True))
        assert rs.reports[0].diameter is not None


class TestExports:
    def test_files_and_formats(self, tmp_path):
        rs = run_batch(spec(emit_plots=True))
        written = export_results(rs, str(tmp_path))
        names = sorted(os.path.basename(p) for p in written)
        assert names == ["degree_ccdf.csv", "degree_ccdf.svg", "metrics.json",
                         "rank_curve.csv", "rank_curve.svg"]
        rank = (tmp_path / "rank_curve.csv").read_text().splitlines()
        assert rank[0] == "rank,mean_indegree"
        assert rank[1].startswith("1,")
        assert len(rank) == 61
        ccdf = (tmp_path / "degree_ccdf.csv").read_text().splitlines()
        assert ccdf[0] == "indegree,ccdf"
        meta = json.loads((tmp_path / "metrics.json").read_text())
        assert "created_at" not in json.dumps(meta)
        assert meta["provenance"]["spec"]["model"] == "matthew"

    def test_byte_identical_reexport(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        export_results(run_batch(spec()), str(d1))
        export_results(run_batch(spec()), str(d2))
        for name in ("metrics.json", "rank_curve.csv", "degree_ccdf.csv"):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    def test_export_sweep(self, tmp_path):
        s = spec(model="hybrid", n=40, m_cap=2, runs=2, sweep=[0.0, 1.0])
        rows = hybrid_sweep(s)
        written = export_sweep(rows, str(tmp_path))
        assert os.path.join(str(tmp_path), "sweep_gini.csv") in written
        lines = (tmp_path / "sweep_gini.csv").read_text().splitlines()
        assert lines[0].startswith("p,gini_expected_curve")
        assert len(lines) == 3
        assert (tmp_path / "rank_curve_p0.csv").exists()
        assert (tmp_path / "rank_curve_p1.csv").exists()


class TestSweep:
    def test_rows_match_direct_batches(self):
        s = spec(model="hybrid", n=40, m_cap=2, runs=2, sweep=[0.0, 1.0])
        rows = hybrid_sweep(s)
        assert [row.p for row in rows] == [0.0, 1.0]
        for row in rows:
            direct = run_batch(ExperimentSpec(model="hybrid", n=40, m_cap=2,
                                              runs=2, seed_base=5, p=row.p))
            assert np.allclose(row.result.per_node_mean_indegree,
                               direct.per_node_mean_indegree)
            assert row.gini_expected_curve == pytest.approx(
                gini(direct.per_node_mean_indegree))

    def test_requires_p_values(self):
        with pytest.raises(SpecError):
            hybrid_sweep(spec(model="hybrid", p=0.5))


class TestSmallWorldScaling:
    def test_smoke(self):
        rows = small_world_scaling("matthew", [50, 100], m_cap=3, runs=2)
        assert [r.n for r in rows] == [50, 100]
        for r in rows:
            assert r.mean_apl <= r.mean_diameter
            assert r.log2_n == pytest.approx(np.log2(r.n))

    def test_requires_ascending(self):
        with pytest.raises(SpecError):
            small_world_scaling("matthew", [100, 50], m_cap=3, runs=1)


class TestEmpiricalIngest:
    def test_plain_counts(self):
        res = empirical_ingest("10\n5\n5\n", target_mean=5.0)
        assert np.allclose(res.normalized_counts, [7.5, 3.75, 3.75])
        assert res.n == 3
        assert res.gini == pytest.approx(gini([10, 5, 5]))

    def test_csv_rows_and_header(self):
        text = "user_id,followers\nalice,10\nbob,5\ncarol,5\n"
        res = empirical_ingest(text, target_mean=5.0)
        assert np.allclose(res.normalized_counts, [7.5, 3.75, 3.75])

    def test_scaling_preserves_gini(self):
        a = empirical_ingest("3\n1\n8\n", target_mean=1.0)
        b = empirical_ingest("3\n1\n8\n", target_mean=100.0)
        assert a.gini == b.gini
        assert np.mean(b.normalized_counts) == pytest.approx(100.0)

    def test_blank_lines_skipped(self):
        res = empirical_ingest("\n2\n\n4\n", target_mean=3.0)
        assert res.n == 2

    def test_errors(self):
        with pytest.raises(EmpiricalParseError, match="line 2"):
            empirical_ingest("1\nabc\n", target_mean=1.0)
        with pytest.raises(EmpiricalParseError, match="negative"):
            empirical_ingest("1\n-2\n", target_mean=1.0)
        with pytest.raises(EmpiricalParseError):
            empirical_ingest("", target_mean=1.0)
        with pytest.raises(EmpiricalParseError, match="zero"):
            empirical_ingest("0\n0\n", target_mean=1.0)
