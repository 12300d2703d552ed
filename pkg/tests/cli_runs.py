"""Run every CLI command over the bundled corpus and print the outputs as JSON.

Used by the determinism check, which runs this script in separate processes
with different hash seeds and compares the bytes.
"""

from __future__ import annotations

import json
import sys
from importlib import resources

from click.testing import CliRunner

from irrtopo.cli import main
from irrtopo.spaces import RationalSpace, VSpace, load_space


def invocations(path: str, S) -> list[list[str]]:
    reps = [r for _, rs in S.point_schemas() for r in rs]
    x, y = S.fmt_point(reps[0]), S.fmt_point(reps[-1])
    up = S.fmt_set(S.up_set(S.singleton(reps[0])))
    if isinstance(S, VSpace):
        net = f"interleave(chain({S.chains[0]}),const({y}))"
    elif isinstance(S, RationalSpace):
        net = f"ratascent({y})"
    else:
        net = f"explicit{{i0:{x}, i1:{y}}}"
    # "--" keeps negative points such as -2 from reading as options
    cmds = [
        ["space"], ["space", "--set", up], ["irr", "--set", up], ["sup", "--set", up],
        ["si"], ["si", "--iterate", "--bound", "4"], ["si", "--set", up], ["sober"],
        ["waybelow", "--", x, y], ["belowset", "--", y], ["continuity"], ["interpolate", "--", x, y],
        ["converge", "--net", net, "--to", y], ["converge", "--net", net, "--to", y, "--level", "1"],
        ["kelley", "--seed", "7"], ["verdict", "--seed", "7"],
    ]
    return [[c[0], path, "--json", *c[1:]] for c in cmds]


def run_all(repeat: int = 1) -> dict:
    runner = CliRunner()
    out = {}
    base = resources.files("irrtopo").joinpath("corpus")
    for p in sorted(base.iterdir(), key=lambda p: p.name):
        if not p.name.endswith(".space"):
            continue
        S = load_space(p.read_text(encoding="utf-8"))
        for argv in invocations(str(p), S):
            key = " ".join(argv)
            for _ in range(repeat):
                r = runner.invoke(main, argv)
                text = f"exit={r.exit_code}\n" + r.stdout
                if out.setdefault(key, text) != text:
                    out[key] = "NONDETERMINISTIC"
    return out


if __name__ == "__main__":
    json.dump(run_all(int(sys.argv[1]) if len(sys.argv) > 1 else 1), sys.stdout, sort_keys=True)
