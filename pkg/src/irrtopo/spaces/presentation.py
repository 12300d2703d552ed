"""Line-oriented space files: parsing and canonical emission.

Grammar (``#`` starts a comment)::

    space (finite|vspace|rational) [name "<str>"]
    points <id>+
    chain <id>
    rel <elem> <= <elem>          # elem := <id> | <id>@<nat>
    rel chain_below <id> <id>
    sup <chain-id> = <id>
    interval <lo> (open|closed|unbounded) <hi> (open|closed|unbounded)
    topology (alexandroff|scott|upper)
    topology derived (alexandroff|scott|upper) <nat>
    open <id>*                    # finite spaces only; optional explicit opens
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from fractions import Fraction

from ..verdict import ParseError

KINDS = ("finite", "vspace", "rational")
BASES = ("alexandroff", "scott", "upper")
BOUND_KINDS = ("open", "closed", "unbounded")

_ID = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_ELEM = re.compile(r"^(?P<id>[A-Za-z_][A-Za-z0-9_]*)(?:@(?P<idx>\d+))?$")


@dataclass(frozen=True)
class Topology:
    """Base topology, optionally SI-derived ``level`` times."""

    base: str = "alexandroff"
    level: int = 0

    def derived(self) -> "Topology":
        return Topology(self.base, self.level + 1)

    def __str__(self):
        if self.level == 0:
            return self.base
        return f"derived {self.base} {self.level}"


# Order relations, as tagged tuples:
#   ("pp", p, q)             p <= q
#   ("pc", p, cell, k)       p <= cell@k
#   ("cp", cell, k, p)       cell@k <= p
#   ("cc", c, k, d, m)       c@k <= d@m   (only c == d is meaningful without points)
#   ("chain_below", cell, p) every cell@k <= p
Relation = tuple


@dataclass(frozen=True)
class SpacePresentation:
    kind: str
    name: str = ""
    points: tuple[str, ...] = ()
    chains: tuple[str, ...] = ()
    relations: tuple[Relation, ...] = ()
    sups: tuple[tuple[str, str], ...] = ()
    interval: tuple | None = None  # (lo, lo_kind, hi, hi_kind)
    topology: Topology = field(default_factory=Topology)
    opens: tuple[frozenset, ...] | None = None

    def with_topology(self, topology: Topology) -> "SpacePresentation":
        return SpacePresentation(
            self.kind, self.name, self.points, self.chains, self.relations,
            self.sups, self.interval, topology, self.opens,
        )


def _elem(tok: str, lineno: int):
    m = _ELEM.match(tok)
    if not m:
        raise ParseError(lineno, "element <id> or <id>@<nat>", tok)
    return (m["id"], int(m["idx"])) if m["idx"] is not None else m["id"]


def _ident(tok: str, lineno: int) -> str:
    if not _ID.match(tok):
        raise ParseError(lineno, "identifier", tok)
    return tok


def _bound_value(tok: str, kind: str, lineno: int):
    if kind == "unbounded":
        return None
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, "rational endpoint", tok) from None


def parse_presentation_text(text: str) -> SpacePresentation:
    """Parse a space file into an (unvalidated) presentation."""
    kind = None
    name = ""
    points: list[str] = []
    chains: list[str] = []
    relations: list[Relation] = []
    sups: list[tuple[str, str]] = []
    interval = None
    topology = None
    opens: list[frozenset] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            toks = shlex.split(line)
        except ValueError:
            raise ParseError(lineno, "balanced quotes", line) from None
        head, args = toks[0], toks[1:]
        if kind is None and head != "space":
            raise ParseError(lineno, "'space' header", head)
        if head == "space":
            if kind is not None:
                raise ParseError(lineno, "a single 'space' header", line)
            if not args or args[0] not in KINDS:
                raise ParseError(lineno, "space kind finite|vspace|rational", line)
            kind = args[0]
            if len(args) == 3 and args[1] == "name":
                name = args[2]
            elif len(args) != 1:
                raise ParseError(lineno, 'optional name "<str>"', line)
        elif head == "points":
            if not args:
                raise ParseError(lineno, "at least one point", line)
            points.extend(_ident(a, lineno) for a in args)
        elif head == "chain":
            if kind != "vspace":
                raise ParseError(lineno, "'chain' only in vspace files", line)
            if len(args) != 1:
                raise ParseError(lineno, "chain <id>", line)
            chains.append(_ident(args[0], lineno))
        elif head == "rel":
            if len(args) == 3 and args[0] == "chain_below":
                relations.append(("chain_below", _ident(args[1], lineno), _ident(args[2], lineno)))
            elif len(args) == 3 and args[1] == "<=":
                a, b = _elem(args[0], lineno), _elem(args[2], lineno)
                if isinstance(a, str) and isinstance(b, str):
                    relations.append(("pp", a, b))
                elif isinstance(a, str):
                    relations.append(("pc", a, b[0], b[1]))
                elif isinstance(b, str):
                    relations.append(("cp", a[0], a[1], b))
                else:
                    relations.append(("cc", a[0], a[1], b[0], b[1]))
            else:
                raise ParseError(lineno, "rel <elem> <= <elem> | rel chain_below <id> <id>", line)
        elif head == "sup":
            if len(args) != 3 or args[1] != "=":
                raise ParseError(lineno, "sup <chain-id> = <id>", line)
            sups.append((_ident(args[0], lineno), _ident(args[2], lineno)))
        elif head == "interval":
            if len(args) != 4 or args[1] not in BOUND_KINDS or args[3] not in BOUND_KINDS:
                raise ParseError(lineno, "interval <lo> (open|closed|unbounded) <hi> (open|closed|unbounded)", line)
            interval = (
                _bound_value(args[0], args[1], lineno), args[1],
                _bound_value(args[2], args[3], lineno), args[3],
            )
        elif head == "topology":
            if len(args) == 1 and args[0] in BASES:
                topology = Topology(args[0], 0)
            elif len(args) == 3 and args[0] == "derived" and args[1] in BASES and args[2].isdigit():
                topology = Topology(args[1], int(args[2]))
            else:
                raise ParseError(lineno, "topology (alexandroff|scott|upper)", line)
        elif head == "open":
            if opens is None:
                opens = []
            opens.append(frozenset(_ident(a, lineno) for a in args))
        else:
            raise ParseError(lineno, "a directive (space/points/chain/rel/sup/interval/topology/open)", head)

    if kind is None:
        raise ParseError(1, "'space' header", text[:20])
    if topology is None:
        raise ParseError(len(text.splitlines()), "a 'topology' line")
    if kind == "rational" and interval is None:
        raise ParseError(len(text.splitlines()), "an 'interval' line for rational spaces")
    return SpacePresentation(
        kind=kind, name=name, points=tuple(points), chains=tuple(chains),
        relations=tuple(relations), sups=tuple(sups), interval=interval,
        topology=topology, opens=tuple(opens) if opens is not None else None,
    )


def _fmt_elem(e) -> str:
    return e if isinstance(e, str) else f"{e[0]}@{e[1]}"


def emit_presentation(pres: SpacePresentation) -> str:
    """Canonical text form; ``parse(emit(p))`` reproduces ``p`` up to ordering."""
    out = [f"space {pres.kind}" + (f' name "{pres.name}"' if pres.name else "")]
    if pres.points:
        out.append("points " + " ".join(sorted(pres.points)))
    for c in sorted(pres.chains):
        out.append(f"chain {c}")
    rels = []
    for r in pres.relations:
        tag = r[0]
        if tag == "pp":
            rels.append(f"rel {r[1]} <= {r[2]}")
        elif tag == "pc":
            rels.append(f"rel {r[1]} <= {_fmt_elem((r[2], r[3]))}")
        elif tag == "cp":
            rels.append(f"rel {_fmt_elem((r[1], r[2]))} <= {r[3]}")
        elif tag == "cc":
            rels.append(f"rel {_fmt_elem((r[1], r[2]))} <= {_fmt_elem((r[3], r[4]))}")
        else:
            rels.append(f"rel chain_below {r[1]} {r[2]}")
    out.extend(sorted(set(rels)))
    for c, p in sorted(set(pres.sups)):
        out.append(f"sup {c} = {p}")
    if pres.interval is not None:
        lo, lk, hi, hk = pres.interval
        out.append(
            f"interval {'-inf' if lo is None else lo} {lk} {'inf' if hi is None else hi} {hk}"
        )
    out.append(f"topology {pres.topology}")
    if pres.opens is not None:
        for o in sorted(" ".join(sorted(o)) for o in pres.opens):
            out.append(f"open {o}".rstrip())
    return "\n".join(out) + "\n"


def canonical(pres: SpacePresentation) -> SpacePresentation:
    return parse_presentation_text(emit_presentation(pres))
