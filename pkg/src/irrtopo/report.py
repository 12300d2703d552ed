"""Report documents and their canonical serialisations."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .verdict import Verdict

SCHEMA = "irrtopo-report/1"


def verdict_dict(v: Verdict) -> dict:
    d = {"status": v.status}
    if v.certificate:
        d["certificate"] = v.certificate
    if v.witness is not None:
        d["witness"] = str(v.witness)
    if v.bound:
        d["bound"] = v.bound
    return d


def space_fingerprint(canonical_text: str) -> str:
    return "sha256:" + hashlib.sha256(canonical_text.encode("utf-8")).hexdigest()


@dataclass
class ReportDocument:
    command: str
    space: dict
    results: dict
    seed: int = 0
    budgets: dict = field(default_factory=dict)
    version: str = __version__

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "space": self.space,
            "results": self.results,
            "seed": self.seed,
            "budgets": self.budgets,
            "version": self.version,
        }


def _text_lines(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and item:
                out.append(f"{pad}-")
                out.extend(_text_lines(item, indent + 1))
            else:
                out.append(f"{pad}- {_scalar(item)}")
    else:
        out.append(pad + _scalar(obj))
    return out


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v == [] or v == {}:
        return "(none)"
    return str(v)


def emit_report(doc: ReportDocument, fmt: str = "text") -> bytes:
    d = doc.as_dict()
    if fmt == "json":
        return (json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n").encode("utf-8")
    head = [f"{doc.command}: {doc.space.get('name') or doc.space.get('kind')}  ({doc.space['fingerprint'][:19]})"]
    return ("\n".join(head + _text_lines(doc.results, 1)) + "\n").encode("utf-8")


def lookup(results: dict, key: str):
    """Find ``key`` (dotted path, or a bare key searched depth-first) in results."""
    node = results
    try:
        for part in key.split("."):
            node = node[part]
        return node
    except (KeyError, TypeError):
        pass

    def dfs(obj):
        if isinstance(obj, dict):
            if key in obj:
                return obj[key]
            for k in sorted(obj):
                hit = dfs(obj[k])
                if hit is not None:
                    return hit
        return None

    return dfs(results)


def headline(results: dict):
    """The main verdict of a report: ``theorem_conclusion`` if present, or else the first
    status-bearing entry in key order."""
    if "theorem_conclusion" in results:
        return results["theorem_conclusion"]
    for k in sorted(results):
        v = results[k]
        if isinstance(v, dict) and "status" in v:
            return v
    return None


def matches(value, expected: str) -> bool:
    if isinstance(value, dict):
        for k in ("status", "theorem_conclusion"):
            if k in value:
                value = value[k]
                break
    if isinstance(value, bool):
        value = "true" if value else "false"
    return str(value).strip().lower() == expected.strip().lower()


def contains_unknown(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("status") == "unknown":
            return True
        return any(contains_unknown(v) for v in obj.values())
    if isinstance(obj, list):
        return any(contains_unknown(v) for v in obj)
    return False
