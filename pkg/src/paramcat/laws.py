"""Executable law suite for :class:`~paramcat.core.Param`.

Each law draws random objects and random families from the backend,
evaluates both sides of an equation at a sampled point and records the
largest deviation. Law ``k`` uses its own generator seeded with
``(seed, k)``, so reports depend only on the seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import LAW_TOL, Param, ParamSpace


@dataclass
class LawResult:
    name: str
    trials: int
    max_deviation: float
    tol: float
    counterexample: Optional[tuple] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol

    def to_dict(self) -> dict:
        return {
            "law": self.name,
            "trials": self.trials,
            "max_deviation": self.max_deviation,
            "tol": self.tol,
            "passed": self.passed,
            "counterexample": (None if self.counterexample is None
                               else list(self.counterexample)),
        }


@dataclass
class LawReport:
    backend: str
    arity: int
    seed: int
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "arity": self.arity,
            "seed": self.seed,
            "passed": self.passed,
            "laws": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = (f"{status}  {r.name:<34} trials={r.trials:<4d} "
                    f"max_dev={r.max_deviation:.3e}")
            if not r.passed and r.counterexample is not None:
                pt = ",".join(f"{c:.17g}" for c in r.counterexample)
                line += f"  counterexample=({pt})"
            lines.append(line)
        total = len(self.results)
        bad = len(self.failures())
        lines.append(f"{total - bad}/{total} laws passed")
        return "\n".join(lines)


class _Trial:
    """Random data for one trial of one law."""

    def __init__(self, cat: Param, rng: np.random.Generator, max_dim: int):
        self.cat = cat
        self.b = cat.backend
        self.rng = rng
        self.max_dim = max_dim
        self.theta = cat.space.sample(rng)

    def obj(self, max_dim=None):
        return self.b.random_object(self.rng, max_dim or self.max_dim)

    def objs(self, k, max_dim=None):
        return [self.obj(max_dim) for _ in range(k)]

    def mor(self, dom, cod):
        fn = self.b.random_family(self.rng, dom, cod, self.cat.space.arity)
        return self.cat.make(dom, cod, fn)

    def base(self, dom, cod):
        return self.b.random_morphism(self.rng, dom, cod)

    def ev(self, f):
        return self.cat.eval_at(f, self.theta)

    def dev(self, a, b):
        return self.b.deviation(a, b)

    def pdev(self, f, g):
        """Pointwise deviation of two families at this trial's point."""
        return self.dev(self.ev(f), self.ev(g))


# laws: each takes a _Trial and returns a deviation --------------------------

def law_assoc(t):
    w, x, y, z = t.objs(4)
    f, g, h = t.mor(w, x), t.mor(x, y), t.mor(y, z)
    c = t.cat
    return t.pdev(c.compose(c.compose(h, g), f), c.compose(h, c.compose(g, f)))


def law_unit(t):
    x, y = t.objs(2)
    f = t.mor(x, y)
    c = t.cat
    return max(t.pdev(c.compose(c.identity(y), f), f),
               t.pdev(c.compose(f, c.identity(x)), f))


def law_tensor_identity(t):
    x, y = t.objs(2)
    c = t.cat
    return t.pdev(c.tensor(c.identity(x), c.identity(y)),
                  c.identity(t.b.tensor_obj(x, y)))


def law_interchange(t):
    x, y, z, x2, y2, z2 = t.objs(6)
    f, g = t.mor(x, y), t.mor(y, z)
    f2, g2 = t.mor(x2, y2), t.mor(y2, z2)
    c = t.cat
    lhs = c.compose(c.tensor(g, g2), c.tensor(f, f2))
    rhs = c.tensor(c.compose(g, f), c.compose(g2, f2))
    return t.pdev(lhs, rhs)


def law_associator_natural(t):
    x, y, z, x2, y2, z2 = t.objs(6, 3)
    f, g, h = t.mor(x, x2), t.mor(y, y2), t.mor(z, z2)
    c = t.cat
    lhs = c.compose(c.associator(x2, y2, z2),
                    c.tensor(c.tensor(f, g), h))
    rhs = c.compose(c.tensor(f, c.tensor(g, h)), c.associator(x, y, z))
    return t.pdev(lhs, rhs)


def law_unitors_natural(t):
    x, y = t.objs(2)
    f = t.mor(x, y)
    c = t.cat
    u = c.identity(t.b.unit())
    left = t.pdev(c.compose(c.left_unitor(y), c.tensor(u, f)),
                  c.compose(f, c.left_unitor(x)))
    right = t.pdev(c.compose(c.right_unitor(y), c.tensor(f, u)),
                   c.compose(f, c.right_unitor(x)))
    return max(left, right)


def law_braiding_natural(t):
    x, y, x2, y2 = t.objs(4)
    f, g = t.mor(x, x2), t.mor(y, y2)
    c = t.cat
    return t.pdev(c.compose(c.braiding(x2, y2), c.tensor(f, g)),
                  c.compose(c.tensor(g, f), c.braiding(x, y)))


def law_structural_invertible(t):
    """Included structural isomorphisms are invertible in Param."""
    x, y, z = t.objs(3)
    c = t.cat
    b = t.b
    pairs = [
        (b.associator(x, y, z), b.associator_inv(x, y, z)),
        (b.left_unitor(x), b.left_unitor_inv(x)),
        (b.right_unitor(x), b.right_unitor_inv(x)),
        (b.braiding(x, y), b.braiding(y, x)),
    ]
    worst = 0.0
    for m, m_inv in pairs:
        fwd, back = c.include(m), c.include(m_inv)
        worst = max(worst,
                    t.pdev(c.compose(back, fwd), c.identity(fwd.dom)),
                    t.pdev(c.compose(fwd, back), c.identity(fwd.cod)))
    return worst


def law_pentagon(t):
    w, x, y, z = t.objs(4, min(t.max_dim, 3))
    c = t.cat
    T = t.b.tensor_obj
    a = c.associator
    i = c.identity
    lhs = c.compose(c.tensor(i(w), a(x, y, z)),
                    c.compose(a(w, T(x, y), z), c.tensor(a(w, x, y), i(z))))
    rhs = c.compose(a(w, x, T(y, z)), a(T(w, x), y, z))
    return t.pdev(lhs, rhs)


def law_triangle(t):
    x, y = t.objs(2)
    c = t.cat
    u = t.b.unit()
    lhs = c.compose(c.tensor(c.identity(x), c.left_unitor(y)),
                    c.associator(x, u, y))
    rhs = c.tensor(c.right_unitor(x), c.identity(y))
    return t.pdev(lhs, rhs)


def law_hexagon_1(t):
    x, y, z = t.objs(3)
    c = t.cat
    T = t.b.tensor_obj
    b, a, i = c.braiding, c.associator, c.identity
    lhs = c.compose(a(y, z, x), c.compose(b(x, T(y, z)), a(x, y, z)))
    rhs = c.compose(c.tensor(i(y), b(x, z)),
                    c.compose(a(y, x, z), c.tensor(b(x, y), i(z))))
    return t.pdev(lhs, rhs)


def law_hexagon_2(t):
    x, y, z = t.objs(3)
    c = t.cat
    T = t.b.tensor_obj
    b, ai, i = c.braiding, c.associator_inv, c.identity
    lhs = c.compose(ai(z, x, y), c.compose(b(T(x, y), z), ai(x, y, z)))
    rhs = c.compose(c.tensor(b(x, z), i(y)),
                    c.compose(ai(x, z, y), c.tensor(i(x), b(y, z))))
    return t.pdev(lhs, rhs)


def law_braiding_symmetric(t):
    x, y = t.objs(2)
    c = t.cat
    return t.pdev(c.compose(c.braiding(y, x), c.braiding(x, y)),
                  c.identity(t.b.tensor_obj(x, y)))


def law_eval_functor(t):
    x, y, z = t.objs(3)
    f, g = t.mor(x, y), t.mor(y, z)
    c, b = t.cat, t.b
    return max(t.dev(t.ev(c.compose(g, f)), b.compose(t.ev(g), t.ev(f))),
               t.dev(t.ev(c.identity(x)), b.identity(x)))


def law_eval_monoidal(t):
    x, y, z, x2 = t.objs(4)
    f, g = t.mor(x, y), t.mor(z, x2)
    c, b = t.cat, t.b
    return max(
        t.dev(t.ev(c.tensor(f, g)), b.tensor(t.ev(f), t.ev(g))),
        t.dev(t.ev(c.associator(x, y, z)), b.associator(x, y, z)),
        t.dev(t.ev(c.left_unitor(x)), b.left_unitor(x)),
        t.dev(t.ev(c.right_unitor(x)), b.right_unitor(x)),
    )


def law_eval_braided(t):
    x, y = t.objs(2)
    return t.dev(t.ev(t.cat.braiding(x, y)), t.b.braiding(x, y))


def law_include_functor(t):
    x, y, z = t.objs(3)
    f, g = t.base(x, y), t.base(y, z)
    c, b = t.cat, t.b
    return max(t.pdev(c.include(b.compose(g, f)),
                      c.compose(c.include(g), c.include(f))),
               t.pdev(c.include(b.identity(x)), c.identity(x)))


def law_include_monoidal(t):
    x, y, z, w = t.objs(4)
    f, g = t.base(x, y), t.base(z, w)
    c, b = t.cat, t.b
    return max(
        t.pdev(c.include(b.tensor(f, g)), c.tensor(c.include(f), c.include(g))),
        t.pdev(c.include(b.associator(x, y, z)), c.associator(x, y, z)),
        t.pdev(c.include(b.left_unitor(x)), c.left_unitor(x)),
        t.pdev(c.include(b.right_unitor(x)), c.right_unitor(x)),
        t.pdev(c.include(b.braiding(x, y)), c.braiding(x, y)),
    )


def law_retraction(t):
    x, y = t.objs(2)
    m = t.base(x, y)
    return t.dev(t.ev(t.cat.include(m)), m)


def law_const(t):
    x, y = t.objs(2)
    f = t.mor(x, y)
    kappa = t.cat.space.sample(t.rng)
    fixed = t.cat.const_at(f, t.theta)
    return t.dev(t.cat.eval_at(fixed, kappa), t.ev(f))


def law_include_faithful(t):
    """Included morphisms that agree at a point agree as base morphisms."""
    x, y = t.objs(2)
    m1, m2 = t.base(x, y), t.base(x, y)
    c = t.cat
    # equal inputs must stay equal; distinct inputs must stay equally distinct
    d_base = t.dev(m1, m2)
    d_incl = t.pdev(c.include(m1), c.include(m2))
    return max(abs(d_incl - d_base), t.pdev(c.include(m1), c.include(m1)))


def law_zero_arity(t):
    """Over the one-point space, Param operations are the base operations."""
    b = t.b
    c0 = Param(ParamSpace(0), b)
    x, y, z, w = t.objs(4)
    f, g, h = t.base(x, y), t.base(y, z), t.base(z, w)
    pf, pg, ph = c0.include(f), c0.include(g), c0.include(h)
    ev = lambda m: c0.eval_at(m, ())  # noqa: E731
    return max(
        t.dev(ev(c0.compose(pg, pf)), b.compose(g, f)),
        t.dev(ev(c0.tensor(pf, ph)), b.tensor(f, h)),
        t.dev(ev(c0.identity(x)), b.identity(x)),
    )


LAWS: dict[str, Callable] = {
    "compose.associativity": law_assoc,
    "compose.unitality": law_unit,
    "tensor.identity": law_tensor_identity,
    "tensor.interchange": law_interchange,
    "associator.naturality": law_associator_natural,
    "unitors.naturality": law_unitors_natural,
    "braiding.naturality": law_braiding_natural,
    "structural.invertible": law_structural_invertible,
    "coherence.pentagon": law_pentagon,
    "coherence.triangle": law_triangle,
    "coherence.hexagon1": law_hexagon_1,
    "coherence.hexagon2": law_hexagon_2,
    "braiding.symmetric": law_braiding_symmetric,
    "eval.functor": law_eval_functor,
    "eval.strict_monoidal": law_eval_monoidal,
    "eval.braided": law_eval_braided,
    "include.functor": law_include_functor,
    "include.strict_braided_monoidal": law_include_monoidal,
    "include.faithful": law_include_faithful,
    "eval_include.retraction": law_retraction,
    "const.coherence": law_const,
    "zero_arity.base_category": law_zero_arity,
}


def check_laws(space: ParamSpace, backend, trials: int = 25, seed: int = 0,
               tol: float = LAW_TOL, max_dim: int = 4,
               laws: Optional[list] = None) -> LawReport:
    """Run every law ``trials`` times and collect a :class:`LawReport`."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cat = Param(space, backend)
    report = LawReport(backend.name, space.arity, seed)
    for k, (name, law) in enumerate(LAWS.items()):
        if laws is not None and name not in laws:
            continue
        rng = np.random.default_rng([seed, k])
        worst, witness = 0.0, None
        for _ in range(trials):
            trial = _Trial(cat, rng, max_dim)
            dev = float(law(trial))
            if not dev <= tol and witness is None:
                witness = trial.theta
            worst = max(worst, dev)
        report.results.append(LawResult(name, trials, worst, tol, witness))
    return report
