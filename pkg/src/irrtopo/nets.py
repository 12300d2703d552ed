"""Schematic nets and subnets, and the two convergence deciders.

A net over ``omega`` is a value term composed with an affine reindexing
``k -> a*k + b``; a net over a finite directed preorder is an explicit table.
Both deciders reduce to two symbolic quantities:

* the set ``L`` of eventual lower bounds (points below the net from some
  index on), which decides Irr-convergence against the witness family;
* eventual membership in one critical open neighbourhood of the limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .spaces import ChainPoint, FiniteSpace, RationalSpace, RSet, Space, VSpace
from .spaces.rational import Pos
from .verdict import IndexOutOfRange, IrrTopoError, ParseError, Verdict, proven, refuted


class NotInWitnessFamily(IrrTopoError):
    pass


class NotASubnet(IrrTopoError):
    pass


# -- index orders -----------------------------------------------------------
@dataclass(frozen=True)
class Omega:
    def __str__(self):
        return "omega"


@dataclass(frozen=True)
class FinitePreorder:
    elements: tuple
    le: frozenset  # reflexive-transitive set of pairs

    @classmethod
    def make(cls, elements, pairs=()) -> "FinitePreorder":
        elements = tuple(dict.fromkeys(elements))
        le = {(i, i) for i in elements} | set(pairs)
        for i, j in le:
            if i not in elements or j not in elements:
                raise IndexOutOfRange(f"{i} or {j}")
        changed = True
        while changed:
            new = {(i, l) for i, j in le for k, l in le if j == k} - le
            le |= new
            changed = bool(new)
        return cls(elements, frozenset(le))

    @classmethod
    def chain(cls, elements) -> "FinitePreorder":
        elements = tuple(elements)
        return cls.make(elements, [(a, b) for n, a in enumerate(elements) for b in elements[n:]])

    def leq(self, i, j) -> bool:
        return (i, j) in self.le

    def top(self) -> tuple:
        return tuple(t for t in self.elements if all((i, t) in self.le for i in self.elements))

    def is_directed(self) -> bool:
        return bool(self.elements) and all(
            any((i, k) in self.le and (j, k) in self.le for k in self.elements)
            for i in self.elements for j in self.elements
        )

    def __str__(self):
        rel = sorted(f"{i}<={j}" for i, j in self.le if i != j)
        return "{" + ", ".join(map(str, self.elements)) + ("; " + ", ".join(rel) if rel else "") + "}"


# -- value terms ------------------------------------------------------------
@dataclass(frozen=True)
class Const:
    point: object


@dataclass(frozen=True)
class ChainAscent:
    cell: str


@dataclass(frozen=True)
class RationalAscent:
    target: Fraction


@dataclass(frozen=True)
class Interleave:
    first: object
    second: object


@dataclass(frozen=True)
class Explicit:
    table: tuple  # ((index, point), ...)

    def value(self, i):
        for k, v in self.table:
            if k == i:
                return v
        raise IndexOutOfRange(str(i))


@dataclass(frozen=True)
class NetSpec:
    index: object
    term: object
    a: int = 1
    b: int = 0


# -- subnets ----------------------------------------------------------------
@dataclass(frozen=True)
class Affine:
    a: int
    b: int = 0


@dataclass(frozen=True)
class Parity:
    which: str  # even | odd


@dataclass(frozen=True)
class Composition:
    parts: tuple


@dataclass(frozen=True)
class ExplicitMonotoneCofinal:
    domain: FinitePreorder
    table: tuple  # ((k, j), ...)


def _affine(sub):
    if isinstance(sub, Affine):
        return sub.a, sub.b
    if isinstance(sub, Parity):
        return 2, (0 if sub.which == "even" else 1)
    return None


def check_subnet(net: NetSpec, sub) -> None:
    """Raise unless ``sub`` is monotone with cofinal image for ``net``'s index."""
    if isinstance(sub, Composition):
        cur = net
        for part in sub.parts:
            check_subnet(cur, part)
            cur = apply_subnet(cur, part)
        return
    ab = _affine(sub)
    if ab is not None:
        if not isinstance(net.index, Omega):
            raise NotASubnet("affine reindexing needs an omega-indexed net")
        if ab[0] < 1 or ab[1] < 0:
            raise NotASubnet("affine(a,b) needs a >= 1 and b >= 0")
        if isinstance(sub, Parity) and sub.which not in ("even", "odd"):
            raise NotASubnet(sub.which)
        return
    if isinstance(sub, ExplicitMonotoneCofinal):
        J, K = net.index, sub.domain
        if not isinstance(J, FinitePreorder):
            raise NotASubnet("explicit subnets need a finite index")
        f = dict(sub.table)
        if set(f) != set(K.elements) or not set(f.values()) <= set(J.elements):
            raise NotASubnet("table must map the whole domain into the index")
        if not K.is_directed():
            raise NotASubnet("domain not directed")
        for k1, k2 in K.le:
            if not J.leq(f[k1], f[k2]):
                raise NotASubnet(f"not monotone at {k1} <= {k2}")
        for j in J.elements:
            if not any(J.leq(j, f[k]) for k in K.elements):
                raise NotASubnet(f"image not cofinal above {j}")
        return
    raise NotASubnet(repr(sub))


def apply_subnet(net: NetSpec, sub) -> NetSpec:
    if isinstance(sub, Composition):
        for part in sub.parts:
            net = apply_subnet(net, part)
        return net
    ab = _affine(sub)
    if ab is not None:
        c, d = ab
        return NetSpec(net.index, net.term, net.a * c, net.a * d + net.b)
    f = dict(sub.table)
    vals = tuple((k, net.term.value(f[k])) for k in sub.domain.elements)
    return NetSpec(sub.domain, Explicit(vals))


def subnet(net: NetSpec, sub) -> NetSpec:
    check_subnet(net, sub)
    return apply_subnet(net, sub)


def top_class_subnet(net: NetSpec) -> ExplicitMonotoneCofinal:
    """Restriction of a finitely indexed net to its top class."""
    top = net.index.top()
    dom = FinitePreorder.make(top, [(i, j) for i in top for j in top])
    return ExplicitMonotoneCofinal(dom, tuple((t, t) for t in top))


# -- evaluation -------------------------------------------------------------
def _term_value(S: Space, term, m: int):
    if isinstance(term, Const):
        return term.point
    if isinstance(term, ChainAscent):
        return ChainPoint(term.cell, m)
    if isinstance(term, RationalAscent):
        return S.ascent_value(term.target, m)
    if isinstance(term, Interleave):
        return _term_value(S, term.first, m // 2) if m % 2 == 0 else _term_value(S, term.second, (m - 1) // 2)
    raise IndexOutOfRange("explicit terms need a finite index")


def net_value(S: Space, n: NetSpec, i):
    if isinstance(n.index, Omega):
        if not isinstance(i, int) or isinstance(i, bool) or i < 0:
            raise IndexOutOfRange(str(i))
        return _term_value(S, n.term, n.a * i + n.b)
    if i not in n.index.elements:
        raise IndexOutOfRange(str(i))
    return n.term.value(i) if isinstance(n.term, Explicit) else _term_value(S, n.term, 0)


def validate_net(S: Space, n: NetSpec) -> None:
    def walk(t):
        if isinstance(t, Const):
            S.leq(t.point, t.point)
        elif isinstance(t, ChainAscent):
            if not isinstance(S, VSpace) or t.cell not in S.chains:
                raise IndexOutOfRange(f"no chain {t.cell}")
        elif isinstance(t, RationalAscent):
            if not isinstance(S, RationalSpace):
                raise IndexOutOfRange("ratascent needs a rational space")
            S.leq(t.target, t.target)
        elif isinstance(t, Interleave):
            walk(t.first), walk(t.second)
        elif isinstance(t, Explicit):
            if not isinstance(n.index, FinitePreorder):
                raise IndexOutOfRange("explicit terms need a finite index")
            for _, v in t.table:
                S.leq(v, v)
            if {k for k, _ in t.table} != set(n.index.elements):
                raise IndexOutOfRange("explicit table must cover the index")

    if isinstance(n.index, FinitePreorder) and not n.index.is_directed():
        raise IndexOutOfRange("finite net index must be directed")
    walk(n.term)


# -- eventual lower bounds and eventual membership --------------------------
def _lower_omega(S: Space, term, a: int, b: int):
    if isinstance(term, Const):
        return S.down_set(S.singleton(term.point))
    if isinstance(term, ChainAscent):
        return S.down_chain(term.cell)
    if isinstance(term, RationalAscent):
        q = term.target
        return S.singleton(q) if S.is_min(q) else RSet(((S.cL, Pos(Fraction(q), 0)),))
    if isinstance(term, Interleave):
        acc = S.whole
        for r in (0, 1):
            m0 = a * r + b
            sub = term.first if m0 % 2 == 0 else term.second
            acc = acc & _lower_omega(S, sub, a, m0 // 2)
        return acc
    raise IndexOutOfRange("explicit terms need a finite index")


def eventual_lower_bounds(S: Space, n: NetSpec):
    """Points ``e`` with ``e <= x_i`` for all ``i`` past some index."""
    if isinstance(n.index, Omega):
        return _lower_omega(S, n.term, n.a, n.b)
    acc = S.whole
    for t in n.index.top():
        acc = acc & S.down_set(S.singleton(net_value(S, n, t)))
    return acc


def _in_omega(S: Space, term, a: int, b: int, U) -> bool:
    if isinstance(term, Const):
        return S.member(U, term.point)
    if isinstance(term, ChainAscent):
        return U.part(term.cell).infinite
    if isinstance(term, RationalAscent):
        q = Fraction(term.target)
        if S.is_min(q):
            return S.member(U, q)
        p = Pos(q, 0)
        return any(L < p <= R for L, R in U.intervals)
    if isinstance(term, Interleave):
        for r in (0, 1):
            m0 = a * r + b
            sub = term.first if m0 % 2 == 0 else term.second
            if not _in_omega(S, sub, a, m0 // 2, U):
                return False
        return True
    raise IndexOutOfRange("explicit terms need a finite index")


def eventually_in(S: Space, n: NetSpec, U) -> bool:
    if isinstance(n.index, Omega):
        return _in_omega(S, n.term, n.a, n.b, U)
    return all(S.member(U, net_value(S, n, t)) for t in n.index.top())


def net_hints(n: NetSpec) -> list:
    out = []

    def walk(t):
        if isinstance(t, Const):
            out.append(t.point)
        elif isinstance(t, RationalAscent):
            out.append(t.target)
        elif isinstance(t, Interleave):
            walk(t.first), walk(t.second)
        elif isinstance(t, Explicit):
            out.extend(v for _, v in t.table)

    walk(n.term)
    return out


# -- convergence ------------------------------------------------------------
@dataclass(frozen=True)
class ConvergenceJudgment:
    verdict: Verdict
    witness: object = None
    lower_bounds: object = None

    def __bool__(self):
        return self.verdict.proven


def pick_point(S: Space, E):
    """Some concrete element of a nonempty set (deterministic)."""
    if isinstance(S, FiniteSpace):
        return min(E)
    if isinstance(S, VSpace):
        if E.points:
            return min(E.points)
        c, n = E.parts[0]
        return ChainPoint(c, n.min())
    return _rational_in(*E.intervals[0])


def _rational_in(L: Pos, R: Pos) -> Fraction:
    if L.v is not None and not _is_surd(L.v) and L.e == 0:
        return L.v
    if L.v is None:
        base = R.v if not _is_surd(R.v) else Fraction(int(float(R.v)))
        return Fraction(base) - 1 if R.v is not None else Fraction(0)
    if R.v is None:
        return Fraction(int(float(L.v))) + 1
    den = 1
    while True:
        lo = int(float(L.v) * den) - 1
        for num in range(lo, lo + 4):
            q = Fraction(num, den)
            if L <= Pos(q, 0) < R:
                return q
        den *= 2


def _is_surd(v) -> bool:
    return v is not None and not isinstance(v, (int, Fraction))


def judge_lower_bounds(S: Space, L, y) -> ConvergenceJudgment:
    """Irr-convergence to ``y`` of any net whose eventual lower bounds are ``L``."""
    fy = S.fmt_point(y)
    up_y = S.up_set(S.singleton(y))
    hit = L & up_y
    if not S.is_empty(hit):
        e = pick_point(S, hit)
        return ConvergenceJudgment(
            proven(f"E = {{{S.fmt_point(e)}}}, sup {S.fmt_point(e)} >= {fy}; eventual lower bound"),
            S.singleton(e), L,
        )
    if isinstance(S, VSpace):
        for c, s in S.chains_with_sup():
            if L.part(c).full and S.leq(y, s):
                return ConvergenceJudgment(
                    proven(f"E = chain({c}), sup {S.fmt_point(s)} >= {fy}; k({c}@j) = eventual index of {c}@j"),
                    S.chain_set(c), L,
                )
    if isinstance(S, RationalSpace) and not S.is_empty(L):
        R = L.intervals[-1][1]
        if R.v is not None and not _is_surd(R.v) and R.e == 0 and S.contains(R.v) and y <= R.v:
            E = S.interval(S.approach_start(R.v), False, R.v, False)
            return ConvergenceJudgment(
                proven(f"E = {S.fmt_set(E)}, sup {R.v} >= {fy}; k(e) = first index with x_k >= e"), E, L,
            )
    return ConvergenceJudgment(
        refuted(
            f"no witness set above {fy} inside eventual lower bounds {S.fmt_set(L)}",
            "exhausted singletons and witness-family schemas",
        ),
        None, L,
    )


def irr_converges(S: Space, n: NetSpec, y) -> ConvergenceJudgment:
    validate_net(S, n)
    return judge_lower_bounds(S, eventual_lower_bounds(S, n), y)


def topo_converges(S: Space, n: NetSpec, y, level: int = 0) -> Verdict:
    validate_net(S, n)
    T = S
    for _ in range(level):
        T = T.derive()
    U = T.critical_open(y, net_hints(n))
    if eventually_in(T, n, U):
        return proven(f"eventually inside {T.fmt_set(U)}, which lies inside every open set containing {T.fmt_point(y)} on this net")
    return refuted(T.fmt_set(U), "open neighbourhood never entered for good")


def canonical_net(S: Space, E, y) -> NetSpec:
    s = S.sup(E) if not S.is_empty(E) else None
    if s is None or not s.exists or not S.leq(y, s.point):
        raise NotInWitnessFamily("sup E must exist and lie above y")
    if isinstance(S, FiniteSpace):
        if not S.is_directed(E):
            raise NotInWitnessFamily(S.fmt_set(E))
        elems = tuple(sorted(E))
        if len(elems) == 1:
            return NetSpec(Omega(), Const(elems[0]))
        order = FinitePreorder.make(elems, [(a, b) for a in elems for b in elems if S.leq(a, b)])
        return NetSpec(order, Explicit(tuple((e, e) for e in elems)))
    if isinstance(S, VSpace):
        if E.points and not E.parts and len(E.points) == 1:
            return NetSpec(Omega(), Const(next(iter(E.points))))
        if not E.points and len(E.parts) == 1 and E.parts[0][1].full:
            return NetSpec(Omega(), ChainAscent(E.parts[0][0]))
        if not E.points and len(E.parts) == 1 and len(E.parts[0][1].finite) == 1 and not E.parts[0][1].infinite:
            c, part = E.parts[0]
            return NetSpec(Omega(), Const(ChainPoint(c, part.min())))
        raise NotInWitnessFamily(S.fmt_set(E))
    if len(E.intervals) == 1:
        L, R = E.intervals[0]
        if L.v == R.v and L.e == 0 and R.e == 1:
            return NetSpec(Omega(), Const(L.v))
        if R.e == 0 and not _is_surd(R.v) and R.v is not None:
            return NetSpec(Omega(), RationalAscent(R.v))
    raise NotInWitnessFamily(S.fmt_set(E))


def way_below_via_nets(S: Space, x, y, battery=()) -> Verdict:
    """Cross-check ``x << y`` against its net form: every net Irr-converging to
    ``y`` is eventually above ``x``."""
    from .waybelow import way_below

    direct = way_below(S, x, y)
    nets = list(battery)
    for E in S.critical_family(y, x):
        s = S.sup(E)
        if s.exists and S.leq(y, s.point):
            nets.append(canonical_net(S, E, y))
    counter = None
    for n in nets:
        if irr_converges(S, n, y) and not S.member(eventual_lower_bounds(S, n), x):
            counter = n
            break
    via_nets = counter is None
    fx, fy = S.fmt_point(x), S.fmt_point(y)
    if via_nets == bool(direct):
        note = f"both say {fx} {'<<' if via_nets else 'is not way below'} {fy}"
        if counter is not None:
            note += f"; net {format_net(S, counter)} converges to {fy} but is not eventually above {fx}"
        return proven(note)
    return refuted(format_net(S, counter) if counter else fx, "net form and direct decision disagree")


# -- text form --------------------------------------------------------------
def format_term(S: Space, t) -> str:
    if isinstance(t, Const):
        return f"const({S.fmt_point(t.point)})"
    if isinstance(t, ChainAscent):
        return f"chain({t.cell})"
    if isinstance(t, RationalAscent):
        return f"ratascent({t.target})"
    if isinstance(t, Interleave):
        return f"interleave({format_term(S, t.first)},{format_term(S, t.second)})"
    return "explicit{" + ", ".join(f"{k}:{S.fmt_point(v)}" for k, v in t.table) + "}"


def format_net(S: Space, n: NetSpec) -> str:
    if isinstance(n.index, FinitePreorder):
        body = ", ".join(f"{k}:{S.fmt_point(v)}" for k, v in n.term.table)
        rel = sorted(f"{i}<={j}" for i, j in n.index.le if i != j)
        return "explicit{" + body + "; " + ", ".join(rel) + "}" if rel else "explicit{" + body + "}"
    txt = format_term(S, n.term)
    return txt if (n.a, n.b) == (1, 0) else f"{txt} @affine({n.a},{n.b})"


def format_subnet(sub) -> str:
    if isinstance(sub, Affine):
        return f"affine({sub.a},{sub.b})"
    if isinstance(sub, Parity):
        return f"parity({sub.which})"
    if isinstance(sub, Composition):
        return " then ".join(format_subnet(p) for p in sub.parts)
    return f"explicit-subnet{dict(sub.table)}"


def _split_args(body: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return out


def parse_term(S: Space, text: str):
    text = text.strip()
    m = re.fullmatch(r"(const|chain|ratascent|interleave)\((.*)\)", text)
    if not m:
        raise ParseError(1, "const(p) | chain(A) | ratascent(q) | interleave(t1,t2)", text)
    kind, body = m[1], m[2]
    if kind == "const":
        return Const(S.parse_point(body))
    if kind == "chain":
        return ChainAscent(body.strip())
    if kind == "ratascent":
        return RationalAscent(S.parse_point(body))
    args = _split_args(body)
    if len(args) != 2:
        raise ParseError(1, "interleave(t1,t2)", text)
    return Interleave(parse_term(S, args[0]), parse_term(S, args[1]))


def parse_net(S: Space, text: str) -> NetSpec:
    """``const(p)``, ``chain(A)``, ``ratascent(q)``, ``interleave(t1,t2)``, optionally
    followed by ``@affine(a,b)``; or ``explicit{i1:p1, ...[; i<=j, ...]}``
    (listing order is the index order when no relations are given)."""
    text = text.strip()
    if text.startswith("explicit{") and text.endswith("}"):
        body = text[len("explicit{"):-1]
        table_txt, _, rel_txt = body.partition(";")
        table = []
        for entry in _split_args(table_txt):
            k, sep, v = entry.partition(":")
            if not sep:
                raise ParseError(1, "index:point", entry)
            table.append((k.strip(), S.parse_point(v)))
        keys = [k for k, _ in table]
        if rel_txt.strip():
            pairs = []
            for r in rel_txt.split(","):
                i, sep, j = r.partition("<=")
                if not sep:
                    raise ParseError(1, "i<=j", r)
                pairs.append((i.strip(), j.strip()))
            order = FinitePreorder.make(keys, pairs)
        else:
            order = FinitePreorder.chain(keys)
        n = NetSpec(order, Explicit(tuple(table)))
    else:
        # "@" also occurs inside chain points, so split only before a reindexing
        term_txt, *rest = re.split(r"\s*@\s*(?=(?:affine|parity)\()", text, maxsplit=1)
        re_txt = rest[0] if rest else ""
        n = NetSpec(Omega(), parse_term(S, term_txt))
        if re_txt.strip():
            n = subnet(n, parse_subnet(re_txt))
    validate_net(S, n)
    return n


def parse_subnet(text: str):
    parts = [p.strip() for p in text.split(" then ")]
    subs = []
    for p in parts:
        m = re.fullmatch(r"affine\(\s*(\d+)\s*,\s*(\d+)\s*\)", p)
        if m:
            subs.append(Affine(int(m[1]), int(m[2])))
            continue
        m = re.fullmatch(r"parity\(\s*(even|odd)\s*\)", p)
        if m:
            subs.append(Parity(m[1]))
            continue
        raise ParseError(1, "affine(a,b) | parity(even|odd)", p)
    return subs[0] if len(subs) == 1 else Composition(tuple(subs))
