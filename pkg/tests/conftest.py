"""Shared test helpers: an in-process CLI runner and a check adapter."""

import contextlib
import io

import pytest

from magfriction import cli as _cli_module

try:
    from hypothesis import HealthCheck, settings

    settings.register_profile(
        "repo",
        deadline=None,
        derandomize=True,
        suppress_health_check=[HealthCheck.too_slow],
    )
    settings.load_profile("repo")
except ImportError:
    pass


def assert_check(fn, *args, **kwargs):
    """Run a verification check function and assert it passed."""
    ok, detail = fn(*args, **kwargs)
    assert ok, detail


@pytest.fixture
def cli():
    """Invoke the CLI in process; returns (exit_code, stdout_text)."""

    def run(*args):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = _cli_module.main([str(a) for a in args])
        return code, buf.getvalue()

    return run
