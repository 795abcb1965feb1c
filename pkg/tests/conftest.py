import json
import os
import sys
from pathlib import Path
from types import SimpleNamespace

import pytest

# Keep stdout free of colour codes and logs quiet during tests.
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ["PARAHORIC_COLOR"] = "0"

from parahoric.services.cohomology_service import get_cohomology_service
from parahoric.services.packet_service import get_packet_service
from parahoric.services.repdims_service import get_repdims_service
from parahoric.utils import logging_config
from parahoric.utils.logging_config import configure_from_env


class _CurrentStderr:
    """Resolve sys.stderr at write time so cached loggers follow capsys swaps."""

    def write(self, s):
        return sys.stderr.write(s)

    def flush(self):
        sys.stderr.flush()


logging_config.sys = SimpleNamespace(stderr=_CurrentStderr())

configure_from_env()


@pytest.fixture(scope="session")
def repdims():
    return get_repdims_service()


@pytest.fixture(scope="session")
def packets():
    return get_packet_service()


@pytest.fixture(scope="session")
def cohomology():
    return get_cohomology_service()


@pytest.fixture
def fixtures_file(tmp_path: Path):
    """Pinned newform counts for weights 12 and 14."""
    records = [
        {"r": 12, "tau1": 1, "tau2": 0, "tau4": 1, "tauPlus": 0, "tauMinus": 0},
        {"r": 14, "tau1": 0, "tau2": 2, "tau4": 1, "tauPlus": 1, "tauMinus": 1},
    ]
    path = tmp_path / "fixtures.json"
    path.write_text(json.dumps(records), encoding="utf-8")
    return path


@pytest.fixture
def config_file(tmp_path: Path):
    path = tmp_path / "parahoric.yaml"
    path.write_text("rmax: 12\nq_values: [2, 3]\noutput_format: tsv\n", encoding="utf-8")
    return path
