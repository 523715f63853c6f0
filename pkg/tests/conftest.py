import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def acceptance_line(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def emit(criterion: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, f"{criterion} failed: {detail}"

    return emit
