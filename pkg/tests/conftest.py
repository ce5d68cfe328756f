import os
import subprocess
import sys

import numpy as np
import pytest


@pytest.fixture
def run_cli():
    """Invoke the installed CLI in a subprocess and capture everything."""

    def _run(*args, env_overrides=None, cwd=None):
        env = os.environ.copy()
        if env_overrides:
            env.update(env_overrides)
        return subprocess.run(
            [sys.executable, "-m", "qecorr", *args],
            capture_output=True,
            text=True,
            env=env,
            cwd=cwd,
        )

    return _run


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
