"""
The command line end to end
===========================

Everything the library does is reachable through the `divsel` entry
point; this script drives the same code in-process and shows the JSON
each subcommand emits.
"""

import contextlib
import io
import json
import sys

from divsel.cli import run


def capture(argv, stdin_text=None):
    out = io.StringIO()
    saved = sys.stdin
    if stdin_text is not None:
        sys.stdin = io.StringIO(stdin_text)
    try:
        with contextlib.redirect_stdout(out):
            code = run(argv)
    finally:
        sys.stdin = saved
    return code, out.getvalue()


# equivalent of: divsel gen-synth --seed 0 | divsel select --labels 8 --k 10 --mode distributed
code, csv_text = capture(["gen-synth", "--seed", "0"])
assert code == 0
code, report = capture(
    ["select", "--input", "-", "--labels", "8", "--binning", "none", "--k", "10", "--mode", "distributed"],
    stdin_text=csv_text,
)
assert code == 0
doc = json.loads(report)
print("selected:", doc["selected_ids"])
print("objective:", {k: round(v, 4) for k, v in doc["objective"].items()})
print("machines:", doc["plan"]["m"], "sizes:", doc["plan"]["sizes"][:5], "...")

# the oracle subcommand refuses work that would enumerate too many subsets
code, _ = capture(
    ["oracle", "--input", "-", "--labels", "8", "--binning", "none", "--k", "10", "--budget", "1000"],
    stdin_text=csv_text,
)
print("oracle over budget -> exit", code)
