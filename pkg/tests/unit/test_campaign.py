"""
Unit tests for fuzz campaigns.
"""

import json
from unittest.mock import patch

import pytest

from modules.campaign import REPORT_SCHEMA, CampaignReport, FuzzCampaign, TrialRecord
from modules.errors import HypothesisViolated
from modules.generator import FuzzConfig

RESOLUTION = 4096


@pytest.fixture
def small_campaign(mock_config):
    return FuzzCampaign(mock_config, FuzzConfig(seed=1, trials=4, n_max=4), workers=1, oracle_resolution=RESOLUTION)


class TestTrialRecord:
    """Test cases for TrialRecord serialization."""

    def test_passing_record_omits_arrangement(self):
        """Passing trials do not repeat their arrangement."""
        record = TrialRecord(index=0, n=3, vertex_count=3, passed=True, arrangement={"a0": 1.0})
        data = record.to_dict()
        assert data["pass"] is True
        assert "arrangement" not in data
        assert "error" not in data

    def test_failing_record_includes_arrangement(self):
        """Failing trials carry everything needed to reproduce them."""
        record = TrialRecord(index=3, n=3, vertex_count=2, flags=("x",), arrangement={"a0": 1.0})
        data = record.to_dict()
        assert data["pass"] is False
        assert data["arrangement"] == {"a0": 1.0}
        assert data["flags"] == ["x"]

    def test_infinite_distance_is_null(self):
        """An unmatched oracle distance serializes as null."""
        assert TrialRecord(index=0, oracle_distance=float("inf")).to_dict()["oracle_distance"] is None


class TestFuzzCampaign:
    """Test cases for FuzzCampaign."""

    def test_small_campaign_passes(self, small_campaign):
        """A handful of random arrangements all pass."""
        report = small_campaign.run()
        assert len(report.records) == 4
        assert report.passed
        for record in report.records:
            assert record.vertex_count == record.n
            assert record.oracle_count == record.n
            assert 2 <= record.n <= 4

    def test_report_is_deterministic(self, small_campaign):
        """Two runs with the same seed produce byte-identical JSON."""
        assert small_campaign.run().to_json() == small_campaign.run().to_json()

    def test_workers_match_sequential(self, mock_config, small_campaign):
        """Process-pool results equal the sequential ones, in trial order."""
        parallel = FuzzCampaign(mock_config, small_campaign.fuzz_config, workers=2, oracle_resolution=RESOLUTION)
        assert parallel.run().to_json() == small_campaign.run().to_json()

    def test_replay(self, small_campaign):
        """Replaying trial k reproduces its record without the others."""
        report = small_campaign.run()
        assert small_campaign.replay(2) == report.records[2]

    def test_replay_out_of_range(self, small_campaign):
        """Only existing trials can be replayed."""
        with pytest.raises(IndexError):
            small_campaign.replay(4)

    def test_geometry_error_fails_trial(self, small_campaign):
        """A kernel error becomes a failed record instead of aborting the campaign."""
        with patch("modules.campaign.verify_theorem", side_effect=HypothesisViolated("redundant", "translate 2")):
            report = small_campaign.run()
        assert report.failures == 4
        data = report.records[0].to_dict()
        assert data["error"] == "HypothesisViolated: redundant: translate 2"
        assert "arrangement" in data

    def test_defaults_from_config(self, mock_config):
        """Trial count and resolution fall back to the configuration."""
        campaign = FuzzCampaign(mock_config)
        assert campaign.fuzz_config.trials == 4
        assert campaign.resolution == 1024
        assert campaign.workers == 1


class TestCampaignReport:
    """Test cases for CampaignReport summaries."""

    def test_document_layout(self, small_campaign):
        """The report carries schema, config, summary and trials."""
        data = json.loads(small_campaign.run().to_json())
        assert data["schema"] == REPORT_SCHEMA
        assert data["oracle_resolution"] == RESOLUTION
        assert data["config"]["seed"] == 1
        assert data["summary"]["trials"] == 4
        assert data["summary"]["passes"] == 4
        assert sum(v["trials"] for v in data["summary"]["by_n"].values()) == 4
        assert [t["index"] for t in data["trials"]] == [0, 1, 2, 3]

    def test_margins_are_positive(self, small_campaign):
        """Worst-case margins of a passing campaign stay positive."""
        summary = small_campaign.run().summary()
        assert summary["min_normal_margin"] > 0.0
        assert summary["min_edge_margin"] > 0.0
        assert summary["min_outside_margin"] > 0.0
        assert summary["max_partition_residual"] < 1e-6

    def test_empty_report(self):
        """An empty campaign summarizes without margins."""
        report = CampaignReport(FuzzConfig(trials=0), RESOLUTION, ())
        summary = report.summary()
        assert summary["trials"] == 0
        assert summary["min_normal_margin"] is None
        assert summary["by_n"] == {}
        assert report.passed


@pytest.mark.slow
class TestFullCampaign:
    """The standard 200-trial campaign."""

    def test_default_campaign(self, mock_config):
        """Seed 1 with 200 trials over n in [2, 7] has no failures."""
        campaign = FuzzCampaign(mock_config, FuzzConfig(seed=1, trials=200), workers=1, oracle_resolution=RESOLUTION)
        report = campaign.run()
        assert report.failures == 0
        assert set(report.frame()["n"]) <= set(range(2, 8))
