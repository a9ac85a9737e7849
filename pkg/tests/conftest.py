import os
import subprocess
import sys

SRC = os.path.join(os.path.dirname(__file__), "..", "src")
if SRC not in sys.path:
    sys.path.insert(0, os.path.abspath(SRC))


def run_cli(*args, env_extra=None):
    """Run the CLI in a subprocess with the src tree importable."""
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.abspath(SRC) + os.pathsep + env.get("PYTHONPATH", "")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "rootpade", *args],
        capture_output=True, text=True, env=env, timeout=600)
