"""Parameterized morphisms over a strict symmetric monoidal base category.

A :class:`Param` instance is the category whose morphisms ``X -> Y`` are
families ``theta |-> f(theta)`` of base morphisms indexed by points of a
:class:`ParamSpace`. Because copying a point and discarding a point are the
only structure the construction needs from the parameter object, every
operation here acts pointwise:

* ``compose(g, f)(theta) = g(theta) . f(theta)``
* ``tensor(f, g)(theta) = f(theta) (x) g(theta)``
* identities and structural isomorphisms are constant families.

Equality of families is checked by sampling (:func:`check_equiv`). An
``inequivalent`` verdict carries a concrete witness; ``equivalent`` only
means no sampled point disagreed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Protocol, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

#: default tolerance for composite law checks
LAW_TOL = 1e-10
#: default tolerance for single-operation identities
OP_TOL = 1e-12


class ParamError(Exception):
    """Base class for errors raised by the parameterized-morphism engine."""


class CompositionError(ParamError):
    pass


class EvaluationError(ParamError):
    pass


class ArityError(EvaluationError):
    pass


class InversionError(ParamError):
    pass


class Backend(Protocol):
    """Operational presentation of a strict symmetric monoidal category.

    Objects and morphisms are opaque to the engine; only these methods touch
    them.
    """

    name: str

    def check_object(self, x: Any) -> Any: ...

    def unit(self) -> Any: ...

    def tensor_obj(self, x: Any, y: Any) -> Any: ...

    def dom(self, m: Any) -> Any: ...

    def cod(self, m: Any) -> Any: ...

    def compose(self, g: Any, f: Any) -> Any: ...

    def identity(self, x: Any) -> Any: ...

    def tensor(self, f: Any, g: Any) -> Any: ...

    def associator(self, x: Any, y: Any, z: Any) -> Any: ...

    def associator_inv(self, x: Any, y: Any, z: Any) -> Any: ...

    def left_unitor(self, x: Any) -> Any: ...

    def left_unitor_inv(self, x: Any) -> Any: ...

    def right_unitor(self, x: Any) -> Any: ...

    def right_unitor_inv(self, x: Any) -> Any: ...

    def braiding(self, x: Any, y: Any) -> Any: ...

    def deviation(self, a: Any, b: Any) -> float: ...


Point = tuple  # tuple[float, ...]


@dataclass(frozen=True)
class ParamSpace:
    """A real parameter space of fixed arity, sampled from ``[0, 2*pi)``."""

    arity: int
    low: float = 0.0
    high: float = TWO_PI

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"arity must be >= 0, got {self.arity}")
        if not self.low < self.high:
            raise ValueError("sampling range is empty")

    def point(self, coords: Sequence[float]) -> Point:
        """Validate ``coords`` and return it as a point of this space."""
        pt = tuple(float(c) for c in coords)
        if len(pt) != self.arity:
            raise ArityError(
                f"expected {self.arity} parameter(s), got {len(pt)}")
        if not all(math.isfinite(c) for c in pt):
            raise ArityError(f"non-finite parameter in {pt}")
        return pt

    def zero(self) -> Point:
        return (0.0,) * self.arity

    def sample(self, rng: np.random.Generator) -> Point:
        return tuple(float(v) for v in
                     rng.uniform(self.low, self.high, size=self.arity))

    def sampler(self, seed: int):
        """Yield an endless seed-deterministic stream of points."""
        rng = np.random.default_rng(seed)
        while True:
            yield self.sample(rng)

    @staticmethod
    def duplicate(theta: Point) -> tuple[Point, Point]:
        return theta, theta

    @staticmethod
    def discard(theta: Point) -> tuple:
        return ()


@dataclass(frozen=True, eq=False)
class ParamMor:
    """A family of base morphisms ``dom -> cod`` indexed by parameter points.

    ``fn`` must be pure. Shapes are only checked when the family is evaluated.
    """

    dom: Any
    cod: Any
    fn: Callable[[Point], Any]
    category: "Param" = field(repr=False)
    constant: bool = field(default=False, repr=False)

    def __call__(self, theta: Sequence[float]) -> Any:
        return self.category.eval_at(self, theta)

    def then(self, other: "ParamMor") -> "ParamMor":
        return self.category.compose(other, self)

    def __rshift__(self, other: "ParamMor") -> "ParamMor":
        return self.then(other)

    def __matmul__(self, other: "ParamMor") -> "ParamMor":
        return self.category.tensor(self, other)


@dataclass
class EquivVerdict:
    status: str  # "equivalent" | "inequivalent" | "dimension-mismatch"
    samples: int
    tol: float
    counterexample: Optional[Point] = None
    deviation: Optional[float] = None
    max_deviation: float = 0.0
    reason: str = ""

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "samples": self.samples,
            "tol": self.tol,
            "max_deviation": self.max_deviation,
            "counterexample": (None if self.counterexample is None
                               else list(self.counterexample)),
            "deviation": self.deviation,
            "reason": self.reason,
        }


class Param:
    """The category of ``space``-indexed families over ``backend``."""

    def __init__(self, space: ParamSpace, backend: Backend):
        self.space = space
        self.backend = backend

    def __repr__(self):
        return f"Param(arity={self.space.arity}, backend={self.backend.name})"

    def __eq__(self, other):
        return (isinstance(other, Param) and self.space == other.space
                and type(self.backend) is type(other.backend))

    def __hash__(self):
        return hash((self.space, type(self.backend)))

    # -- construction -----------------------------------------------------

    def make(self, dom, cod, fn: Callable[[Point], Any]) -> ParamMor:
        b = self.backend
        return ParamMor(b.check_object(dom), b.check_object(cod), fn, self)

    def include(self, m) -> ParamMor:
        """The constant family at base morphism ``m``."""
        b = self.backend
        return ParamMor(b.dom(m), b.cod(m), lambda theta: m, self,
                        constant=True)

    def identity(self, x) -> ParamMor:
        return self.include(self.backend.identity(self.backend.check_object(x)))

    def associator(self, x, y, z) -> ParamMor:
        return self.include(self.backend.associator(x, y, z))

    def associator_inv(self, x, y, z) -> ParamMor:
        return self.include(self.backend.associator_inv(x, y, z))

    def left_unitor(self, x) -> ParamMor:
        return self.include(self.backend.left_unitor(x))

    def left_unitor_inv(self, x) -> ParamMor:
        return self.include(self.backend.left_unitor_inv(x))

    def right_unitor(self, x) -> ParamMor:
        return self.include(self.backend.right_unitor(x))

    def right_unitor_inv(self, x) -> ParamMor:
        return self.include(self.backend.right_unitor_inv(x))

    def braiding(self, x, y) -> ParamMor:
        return self.include(self.backend.braiding(x, y))

    # -- operations -------------------------------------------------------

    def _own(self, *mors: ParamMor):
        for m in mors:
            if m.category != self:
                raise CompositionError(
                    f"morphism belongs to {m.category!r}, not {self!r}")

    def compose(self, g: ParamMor, f: ParamMor) -> ParamMor:
        """``g`` after ``f``, evaluated pointwise on a duplicated point."""
        self._own(g, f)
        if f.cod != g.dom:
            raise CompositionError(
                f"cannot compose: codomain {f.cod!r} of first morphism "
                f"does not match domain {g.dom!r} of second")
        compose = self.backend.compose

        def fn(theta):
            t1, t2 = ParamSpace.duplicate(theta)
            return compose(g.fn(t1), f.fn(t2))

        return ParamMor(f.dom, g.cod, fn, self,
                        constant=f.constant and g.constant)

    def tensor(self, f: ParamMor, g: ParamMor) -> ParamMor:
        self._own(f, g)
        b = self.backend

        def fn(theta):
            t1, t2 = ParamSpace.duplicate(theta)
            return b.tensor(f.fn(t1), g.fn(t2))

        return ParamMor(b.tensor_obj(f.dom, g.dom), b.tensor_obj(f.cod, g.cod),
                        fn, self, constant=f.constant and g.constant)

    def eval_at(self, f: ParamMor, theta: Sequence[float]):
        self._own(f)
        pt = self.space.point(theta)
        m = f.fn(pt)
        b = self.backend
        try:
            d, c = b.dom(m), b.cod(m)
        except Exception as exc:
            raise EvaluationError(f"family returned a non-morphism: {exc}")
        if d != f.dom or c != f.cod:
            raise EvaluationError(
                f"family declared {f.dom!r} -> {f.cod!r} but produced "
                f"{d!r} -> {c!r} at {pt}")
        return m

    def const_at(self, f: ParamMor, theta: Sequence[float]) -> ParamMor:
        return self.include(self.eval_at(f, theta))

    def invert_included(self, m, m_inv, tol: float = OP_TOL):
        """Return ``(include(m), include(m_inv))`` after checking inverses."""
        b = self.backend
        if b.dom(m) != b.cod(m_inv) or b.cod(m) != b.dom(m_inv):
            raise InversionError("morphisms are not of opposite types")
        dev = max(b.deviation(b.compose(m_inv, m), b.identity(b.dom(m))),
                  b.deviation(b.compose(m, m_inv), b.identity(b.cod(m))))
        if dev > tol:
            raise InversionError(
                f"morphisms are not mutually inverse (deviation {dev:.3e})")
        return self.include(m), self.include(m_inv)

    def check_equiv(self, f: ParamMor, g: ParamMor, samples: int = 100,
                    seed: int = 0, tol: float = LAW_TOL,
                    normalize: Optional[Callable[[Any], Any]] = None
                    ) -> EquivVerdict:
        """Compare two families at the zero point and ``samples`` seeded points.

        ``normalize`` is applied to both evaluations before comparing, e.g. to
        quotient out a global phase.
        """
        if samples < 1:
            raise ValueError("samples must be >= 1")
        if not tol > 0:
            raise ValueError("tol must be > 0")
        self._own(f, g)
        if f.dom != g.dom or f.cod != g.cod:
            return EquivVerdict(
                "dimension-mismatch", 0, tol,
                reason=f"{f.dom!r} -> {f.cod!r} vs {g.dom!r} -> {g.cod!r}")
        dev_fn = self.backend.deviation
        points = self.space.sampler(seed)
        worst = 0.0
        for k in range(samples + 1):
            theta = self.space.zero() if k == 0 else next(points)
            a, c = self.eval_at(f, theta), self.eval_at(g, theta)
            if normalize is not None:
                a, c = normalize(a), normalize(c)
            dev = dev_fn(a, c)
            worst = max(worst, dev)
            if not dev <= tol:
                return EquivVerdict("inequivalent", k + 1, tol, theta, dev,
                                    worst)
        return EquivVerdict("equivalent", samples + 1, tol, max_deviation=worst)


# free-function surface -------------------------------------------------------

def compose(g: ParamMor, f: ParamMor) -> ParamMor:
    return g.category.compose(g, f)


def tensor(f: ParamMor, g: ParamMor) -> ParamMor:
    return f.category.tensor(f, g)


def eval_at(f: ParamMor, theta: Sequence[float]):
    return f.category.eval_at(f, theta)


def const_at(f: ParamMor, theta: Sequence[float]) -> ParamMor:
    return f.category.const_at(f, theta)


def check_equiv(f: ParamMor, g: ParamMor, samples: int = 100, seed: int = 0,
                tol: float = LAW_TOL, normalize=None) -> EquivVerdict:
    return f.category.check_equiv(f, g, samples, seed, tol, normalize)
