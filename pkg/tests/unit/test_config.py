"""Unit tests for configuration management."""

import pytest

from src.utils.config import AuditConfig, SearchConfig, ToleranceConfig, get_config


@pytest.mark.unit
class TestSearchConfig:
    """Test cases for SearchConfig."""

    def test_default_values(self):
        """Test default search settings."""
        config = SearchConfig()

        assert config.density == 48
        assert config.polish_starts == 10
        assert config.polish_tol == 1e-10
        assert config.polish is True

    def test_invalid_values(self):
        """Test that a non-positive density is rejected."""
        with pytest.raises(ValueError):
            SearchConfig(density=0)
        with pytest.raises(ValueError):
            SearchConfig(polish_starts=-1)


@pytest.mark.unit
class TestToleranceConfig:
    """Test cases for ToleranceConfig."""

    def test_default_values(self):
        """Test default tolerances."""
        config = ToleranceConfig()

        assert config.rank_tol == 1e-10
        assert config.slack == 1e-9
        assert config.doublet_threshold == 1e-3

    def test_negative_threshold(self):
        """Test that a negative doublet threshold is rejected."""
        with pytest.raises(ValueError):
            ToleranceConfig(doublet_threshold=-1.0)


@pytest.mark.unit
class TestAuditConfig:
    """Test cases for AuditConfig."""

    def test_from_env_default(self, monkeypatch):
        """Test creating config from environment with defaults."""
        for name in ("RFA_DENSITY", "RFA_DOUBLET_THRESHOLD", "RFA_WORKERS", "RFA_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)

        config = AuditConfig.from_env()

        assert isinstance(config.search, SearchConfig)
        assert isinstance(config.tolerances, ToleranceConfig)
        assert config.ells == (1,)
        assert config.workers == 4
        assert config.log_level == "INFO"

    def test_from_env_custom(self, monkeypatch):
        """Test creating config from custom environment variables."""
        monkeypatch.setenv("RFA_DENSITY", "24")
        monkeypatch.setenv("RFA_DOUBLET_THRESHOLD", "1e-6")
        monkeypatch.setenv("RFA_WORKERS", "1")
        monkeypatch.setenv("RFA_LOG_LEVEL", "debug")

        config = AuditConfig.from_env()

        assert config.search.density == 24
        assert config.tolerances.doublet_threshold == 1e-6
        assert config.workers == 1
        assert config.log_level == "DEBUG"

    def test_empty_variable_falls_back(self, monkeypatch):
        """Test that an empty variable means the default."""
        monkeypatch.setenv("RFA_DENSITY", "")

        assert AuditConfig.from_env().search.density == 48

    @pytest.mark.parametrize(
        "name,value",
        [("RFA_DENSITY", "many"), ("RFA_DOUBLET_THRESHOLD", "small"), ("RFA_WORKERS", "0")],
    )
    def test_invalid_environment(self, monkeypatch, name, value):
        """Test that malformed or out-of-range variables raise ValueError."""
        monkeypatch.setenv(name, value)

        with pytest.raises(ValueError):
            AuditConfig.from_env()

    def test_invalid_ell(self):
        """Test that negative ell values are rejected."""
        with pytest.raises(ValueError):
            AuditConfig(ells=(1, -1))

    def test_to_dict(self):
        """Test the configuration echo in reports."""
        payload = AuditConfig().to_dict()

        assert payload["density"] == 48
        assert payload["ells"] == [1]
        assert payload["doublet_threshold"] == 1e-3

    def test_get_config(self, monkeypatch):
        """Test get_config function."""
        monkeypatch.setenv("RFA_WORKERS", "3")

        config = get_config()

        assert isinstance(config, AuditConfig)
        assert config.workers == 3
