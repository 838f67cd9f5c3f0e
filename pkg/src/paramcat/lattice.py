"""Finite meet-semilattices and lattice-enriched graphs.

A meet-semilattice has no useful points, so families cannot be evaluated.
The parameterized category is computed directly instead: for a truth value
``p`` it keeps the edge ``X -> Y`` exactly when ``p <= hom(X, Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional


class LatticeError(ValueError):
    """Raised for malformed input or when validation finds violations."""

    def __init__(self, message: str, violations: Iterable["Violation"] = ()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple

    def __str__(self):
        return f"{self.kind}: witness ({', '.join(map(str, self.witness))})"


@dataclass
class MeetSemilattice:
    """A finite poset with binary meets and a top element.

    ``leq`` is the full order relation as a set of pairs. ``meet`` maps
    ordered pairs to elements. Use :meth:`build` to derive whichever of the
    two is missing.
    """

    elements: tuple
    leq: frozenset
    meet: dict
    top: str

    @classmethod
    def build(cls, elements, top=None, leq=None, meet=None,
              close: bool = False) -> "MeetSemilattice":
        """Assemble a semilattice from an order, a meet table, or both.

        With ``close=True`` the given ``leq`` pairs are treated as generators
        and closed reflexively and transitively.
        """
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise LatticeError("duplicate element names")
        known = set(elements)
        if leq is None and meet is None:
            raise LatticeError("need an order (leq) or a meet table")
        meet_table = None
        if meet is not None:
            meet_table = {}
            for (a, b), c in dict(meet).items():
                for e in (a, b, c):
                    if e not in known:
                        raise LatticeError(f"unknown element {e!r} in meet table")
                meet_table[(a, b)] = c
            missing = [p for p in product(elements, repeat=2)
                       if p not in meet_table]
            if missing:
                raise LatticeError(f"meet table missing entry {missing[0]}")
        if leq is not None:
            pairs = set()
            for a, b in leq:
                if a not in known or b not in known:
                    raise LatticeError(f"unknown element in order pair ({a}, {b})")
                pairs.add((a, b))
            if close:
                pairs = _reflexive_transitive_closure(elements, pairs)
        else:
            pairs = {(a, b) for a, b in product(elements, repeat=2)
                     if meet_table[(a, b)] == a}
        if meet_table is None:
            meet_table = {}
            for a, b in product(elements, repeat=2):
                g = _glb(elements, pairs, a, b)
                if g is None:
                    raise LatticeError(
                        f"no greatest lower bound for ({a}, {b})",
                        [Violation("no greatest lower bound", (a, b))])
                meet_table[(a, b)] = g
        if top is None:
            tops = [t for t in elements if all((e, t) in pairs for e in elements)]
            if len(tops) != 1:
                raise LatticeError("no unique top element")
            top = tops[0]
        if top not in known:
            raise LatticeError(f"unknown top element {top!r}")
        return cls(elements, frozenset(pairs), meet_table, top)

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def __contains__(self, a) -> bool:
        return a in self.elements

    def wedge(self, a, b):
        return self.meet[(a, b)]


def _reflexive_transitive_closure(elements, pairs):
    rel = set(pairs) | {(e, e) for e in elements}
    for k in elements:
        for i in elements:
            if (i, k) in rel:
                for j in elements:
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def _glb(elements, leq, a, b):
    lower = [c for c in elements if (c, a) in leq and (c, b) in leq]
    best = [c for c in lower if all((d, c) in leq for d in lower)]
    return best[0] if len(best) == 1 else None


def validate_semilattice(lat: MeetSemilattice) -> list:
    """Check every order and meet axiom by exhaustion.

    Returns a list of :class:`Violation`; empty means valid.
    """
    out = []
    els = lat.elements
    le = lat.le
    for a in els:
        if not le(a, a):
            out.append(Violation("order not reflexive", (a,)))
    for a, b in product(els, repeat=2):
        if a != b and le(a, b) and le(b, a):
            out.append(Violation("order not antisymmetric", (a, b)))
    for a, b, c in product(els, repeat=3):
        if le(a, b) and le(b, c) and not le(a, c):
            out.append(Violation("order not transitive", (a, b, c)))
    for a, b in product(els, repeat=2):
        m = lat.wedge(a, b)
        if not (le(m, a) and le(m, b)):
            out.append(Violation("meet not a lower bound", (a, b)))
        elif any(le(c, a) and le(c, b) and not le(c, m) for c in els):
            out.append(Violation("meet not greatest lower bound", (a, b)))
        if m != lat.wedge(b, a):
            out.append(Violation("meet not commutative", (a, b)))
    for a in els:
        if lat.wedge(a, a) != a:
            out.append(Violation("meet not idempotent", (a,)))
        if lat.wedge(a, lat.top) != a:
            out.append(Violation("top not a unit for meet", (a,)))
        if not le(a, lat.top):
            out.append(Violation("top not greatest", (a,)))
    for a, b, c in product(els, repeat=3):
        w = lat.wedge
        if w(w(a, b), c) != w(a, w(b, c)):
            out.append(Violation("meet not associative", (a, b, c)))
    return out


@dataclass
class EnrichedGraph:
    """Objects with a lattice-valued label on every ordered pair."""

    objects: tuple
    hom: dict = field(default_factory=dict)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        missing = [p for p in product(self.objects, repeat=2)
                   if p not in self.hom]
        if missing:
            raise LatticeError(f"hom table missing entry {missing[0]}")


def validate_enriched_graph(lat: MeetSemilattice, g: EnrichedGraph) -> list:
    out = []
    for (x, y), v in sorted(g.hom.items()):
        if v not in lat:
            out.append(Violation(f"unknown lattice element {v!r}", (x, y)))
    if out:
        return out
    for x in g.objects:
        if not lat.le(lat.top, g.hom[(x, x)]):
            out.append(Violation("identity not labeled top", (x,)))
    for x, y, z in product(g.objects, repeat=3):
        if not lat.le(lat.wedge(g.hom[(y, z)], g.hom[(x, y)]), g.hom[(x, z)]):
            out.append(Violation("composition bound violated", (x, y, z)))
    return out


def _require_valid(lat, g):
    bad = validate_semilattice(lat)
    if bad:
        raise LatticeError("invalid semilattice", bad)
    bad = validate_enriched_graph(lat, g)
    if bad:
        raise LatticeError("invalid enriched graph", bad)


def param_graph(lat: MeetSemilattice, g: EnrichedGraph, p,
                validate: bool = True) -> tuple:
    """Edges entailed by ``p``: every ``(X, Y)`` with ``p <= hom(X, Y)``.

    Edges come back sorted by object name.
    """
    if p not in lat:
        raise LatticeError(f"unknown lattice element {p!r}")
    if validate:
        _require_valid(lat, g)
    return tuple(sorted((x, y) for (x, y), v in g.hom.items() if lat.le(p, v)))


def underlying_graph(lat: MeetSemilattice, g: EnrichedGraph,
                     validate: bool = True) -> tuple:
    return param_graph(lat, g, lat.top, validate)


def format_edges(edges) -> str:
    return "".join(f"{x} -> {y}\n" for x, y in edges)


# spec file -------------------------------------------------------------------

SECTIONS = ("elements", "leq", "meet", "objects", "hom")


def parse_spec(text: str):
    """Parse a lattice/graph spec file into ``(MeetSemilattice, EnrichedGraph)``.

    Format: ``[section]`` headers followed by whitespace-separated rows::

        [elements]
        bot
        1
        top *        # '*' marks the top element
        [leq]        # pairs a b meaning a <= b; closed reflexively/transitively
        bot 1
        1 top
        [objects]    # optional; defaults to the objects named in [hom]
        A B
        [hom]
        A B top

    A ``[meet]`` section of ``a b a^b`` rows may replace or accompany
    ``[leq]``; when both are present they must agree.
    """
    rows: dict[str, list] = {}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in SECTIONS:
                raise LatticeError(f"line {lineno}: unknown section [{current}]")
            if current in rows:
                raise LatticeError(f"line {lineno}: duplicate section [{current}]")
            rows[current] = []
            continue
        if current is None:
            raise LatticeError(f"line {lineno}: content before first section")
        rows[current].append((lineno, line.split()))

    if "elements" not in rows:
        raise LatticeError("missing [elements] section")
    if "hom" not in rows:
        raise LatticeError("missing [hom] section")
    elements, top = [], None
    for lineno, toks in rows["elements"]:
        for tok in toks:
            if tok == "*":
                if not elements:
                    raise LatticeError(f"line {lineno}: '*' before any element")
                if top is not None:
                    raise LatticeError(f"line {lineno}: more than one top marked")
                top = elements[-1]
            else:
                elements.append(tok)

    def arity_rows(name, n):
        for lineno, toks in rows.get(name, []):
            if len(toks) != n:
                raise LatticeError(
                    f"line {lineno}: [{name}] rows need {n} fields")
            yield tuple(toks)

    leq = list(arity_rows("leq", 2)) if "leq" in rows else None
    meet = ({(a, b): c for a, b, c in arity_rows("meet", 3)}
            if "meet" in rows else None)
    lat = MeetSemilattice.build(elements, top=top, leq=leq, meet=meet,
                                close=True)
    if leq is not None and meet is not None:
        derived = {(a, b) for (a, b), c in meet.items() if c == a}
        if derived != set(lat.leq):
            diff = sorted(derived ^ set(lat.leq))
            raise LatticeError("meet table disagrees with order",
                               [Violation("meet disagrees with leq", diff[0])])

    hom = {}
    for x, y, v in arity_rows("hom", 3):
        if (x, y) in hom:
            raise LatticeError(f"duplicate hom entry ({x}, {y})")
        hom[(x, y)] = v
    if "objects" in rows:
        objects = [tok for _, toks in rows["objects"] for tok in toks]
    else:
        objects = sorted({x for x, _ in hom} | {y for _, y in hom})
    unknown = {o for pair in hom for o in pair} - set(objects)
    if unknown:
        raise LatticeError(f"hom mentions undeclared object {sorted(unknown)[0]}")
    return lat, EnrichedGraph(objects, hom)


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
