"""Rewrite tests/data/golden/*.out from the current CLI."""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from cli_cases import CASES, GOLDEN, run  # noqa: E402

if __name__ == "__main__":
    os.environ.setdefault("TROPSYM_SEED", "20240611")
    GOLDEN.mkdir(exist_ok=True)
    for name, argv, want in CASES:
        code, out, _ = run(argv)
        if code != want:
            sys.exit(f"{name}: exit {code}, expected {want}\n{out}")
        (GOLDEN / f"{name}.out").write_text(out, encoding="utf-8")
    print(f"wrote {len(CASES)} transcripts")
