from itertools import product
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from resurgence.fatpoints import parse_scheme

ROOT = Path(__file__).resolve().parent.parent
FLEET_DIR = ROOT / "fleet"
DATA_DIR = ROOT / "data"

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def fleet_paths():
    lines = (FLEET_DIR / "fleet.txt").read_text().splitlines()
    return [FLEET_DIR / s.strip() for s in lines if s.strip() and not s.startswith("#")]


def fleet_schemes():
    return {p.stem: parse_scheme(p.read_text()) for p in fleet_paths()}


FLEET = fleet_schemes()


@pytest.fixture(params=sorted(FLEET), ids=sorted(FLEET))
def fleet_scheme(request):
    return FLEET[request.param]


def monomials_up_to(n, d):
    """All exponent vectors in n variables of total degree <= d."""
    return [a for a in product(range(d + 1), repeat=n) if sum(a) <= d]


# acceptance results, filled by tests/test_acceptance.py and printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        status, seconds, budget, note = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {status}  ({seconds:.1f}s of {budget}s)  {note}")
