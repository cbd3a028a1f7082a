"""Run every golden CLI case plus a seeded selftest; print all outputs."""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from cli_cases import CASES, run  # noqa: E402

if __name__ == "__main__":
    for name, argv, _ in CASES + [("selftest_3", ["selftest", "--count", "3"], 0)]:
        code, out, err = run(argv)
        sys.stdout.write(f"## {name} exit={code}\n{out}# {err}")
