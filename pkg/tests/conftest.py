from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations

import networkx as nx
import pytest

from irrtopo.spaces import load_space

CORPUS = sorted(
    p.name[: -len(".space")]
    for p in resources.files("irrtopo").joinpath("corpus").iterdir()
    if p.name.endswith(".space")
)

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def corpus_text(name: str) -> str:
    return resources.files("irrtopo").joinpath("corpus", f"{name}.space").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def corpus(name: str):
    return load_space(corpus_text(name))


@pytest.fixture
def space():
    return corpus


def poset_text(n: int, less: set) -> str:
    """Finite space file for the strict order ``less`` on points p0..p{n-1}."""
    lines = ["space finite", "points " + " ".join(f"p{i}" for i in range(n))]
    lines += [f"rel p{i} <= p{j}" for i, j in sorted(less)]
    lines.append("topology alexandroff")
    return "\n".join(lines) + "\n"


def _downsets(n: int, less: set) -> list[frozenset]:
    out = []
    for r in range(n + 1):
        for D in combinations(range(n), r):
            D = frozenset(D)
            if all(i in D for i, j in less if j in D):
                out.append(D)
    return out


@lru_cache(maxsize=None)
def posets(n: int) -> tuple:
    """All posets on n points up to isomorphism, as frozensets of strict pairs.

    Each poset of size n arises from one of size n-1 by adding a maximal
    element above some down-set; duplicates are removed by isomorphism."""
    if n == 0:
        return (frozenset(),)
    buckets: dict[str, list] = {}
    out = []
    for less in posets(n - 1):
        for D in _downsets(n - 1, less):
            new = frozenset(less | {(i, n - 1) for i in D})
            g = nx.DiGraph()
            g.add_nodes_from(range(n))
            g.add_edges_from(new)
            key = nx.weisfeiler_lehman_graph_hash(g)
            seen = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(g, h) for h in seen):
                continue
            seen.append(g)
            out.append(new)
    return tuple(out)


def all_small_posets(max_n: int = 6):
    for n in range(1, max_n + 1):
        for less in posets(n):
            yield n, less


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
