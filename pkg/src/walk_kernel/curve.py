"""Exact points on the kernel curve in P^1 x P^1 and the QRT dynamics on it.

Every map here is exact; two points are equal iff their canonical projective
coordinates are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .arith import ProjPoint, Rat, quad_field_solve
from .kernel import Kernel, eval_bihom, x_fiber, y_fiber


class DegenerateFiber(ArithmeticError):
    """A ruling of P^1 x P^1 lies inside the curve; only possible on a singular curve."""


@dataclass(frozen=True)
class CurvePoint:
    px: ProjPoint
    py: ProjPoint

    @classmethod
    def of(cls, x, y) -> "CurvePoint":
        """Build from ``(c0, c1)`` pairs or affine values."""
        return cls(_proj(x), _proj(y))

    def is_rational(self) -> bool:
        return self.px.is_rational() and self.py.is_rational()

    def to_json(self) -> dict:
        return {"x": self.px.to_json(), "y": self.py.to_json()}

    def __str__(self) -> str:
        return f"({self.px},{self.py})"


def _proj(v) -> ProjPoint:
    if isinstance(v, ProjPoint):
        return v
    if isinstance(v, tuple):
        return ProjPoint.of(*v)
    return ProjPoint.affine(v)


def on_curve(k: Kernel, P: CurvePoint) -> bool:
    return not eval_bihom(k, (P.px, P.py))


def _partner(A, B, C, r: ProjPoint) -> ProjPoint:
    """Second root of ``A*u0^2 + B*u0*u1 + C*u1^2`` given the root ``r``.

    Tried in order: the Vieta product, the Vieta sum, and the Vieta sum in
    the chart at infinity. The first one that is not ``[0:0]`` is correct.
    """
    u0, u1 = r.c0, r.c1
    candidates = (
        lambda: (C * u1, A * u0),
        lambda: (-B * u1 - A * u0, A * u1),
        lambda: (C * u0, -B * u0 - C * u1),
    )
    for make in candidates:
        c0, c1 = make()
        if c0 or c1:
            return ProjPoint.of(c0, c1)
    raise DegenerateFiber(f"fiber through {r} is identically zero")


def iota1(k: Kernel, P: CurvePoint) -> CurvePoint:
    """Swap the two ``y``-values over ``P.px``."""
    A, B, C = x_fiber(k, P.px)
    return CurvePoint(P.px, _partner(A, B, C, P.py))


def iota2(k: Kernel, P: CurvePoint) -> CurvePoint:
    """Swap the two ``x``-values over ``P.py``."""
    A, B, C = y_fiber(k, P.py)
    return CurvePoint(_partner(A, B, C, P.px), P.py)


def sigma(k: Kernel, P: CurvePoint) -> CurvePoint:
    return iota2(k, iota1(k, P))


def sigma_inv(k: Kernel, P: CurvePoint) -> CurvePoint:
    return iota1(k, iota2(k, P))


def sigma_pow(k: Kernel, P: CurvePoint, n: int) -> CurvePoint:
    step = sigma if n >= 0 else sigma_inv
    for _ in range(abs(n)):
        P = step(k, P)
    return P


def fiber_points(k: Kernel, x: ProjPoint) -> tuple[CurvePoint, CurvePoint]:
    """The two curve points over ``x`` (equal when the fiber ramifies).

    The ``y``-values live in Q or in Q(sqrt(D)) with ``D`` the fiber
    discriminant.
    """
    A, B, C = x_fiber(k, x)
    if A:
        r1, r2 = quad_field_solve(A, B, C)
        return CurvePoint(x, ProjPoint.affine(r1)), CurvePoint(x, ProjPoint.affine(r2))
    if not B and not C:
        raise DegenerateFiber(f"the fiber over x = {x} is identically zero")
    inf = CurvePoint(x, ProjPoint.infinity())
    if not B:
        return inf, inf
    return inf, CurvePoint(x, ProjPoint.of(-C, B))


def fiber_discriminant(k: Kernel, x: ProjPoint):
    A, B, C = x_fiber(k, x)
    return B * B - 4 * A * C


def orbit_trace(k: Kernel, P: CurvePoint, steps: int) -> list[tuple[str, CurvePoint]]:
    """``P`` followed by alternating iota1/iota2 images: ``2*steps`` maps in
    all, so every second entry is ``sigma^m(P)``. Negative ``steps`` walks
    backwards (iota2 first)."""
    first, second = (iota1, iota2) if steps >= 0 else (iota2, iota1)
    names = ("iota1", "iota2") if steps >= 0 else ("iota2", "iota1")
    out = [("identity", P)]
    for _ in range(abs(steps)):
        P = first(k, P)
        out.append((names[0], P))
        P = second(k, P)
        out.append((names[1], P))
    return out


def trace_to_json(trace: list[tuple[str, CurvePoint]]) -> list[dict]:
    return [
        {"step": n, "map": name, "x": P.px.to_json(), "y": P.py.to_json()}
        for n, (name, P) in enumerate(trace)
    ]


# ---------------------------------------------------------------------------
# poles of y


@dataclass(frozen=True)
class PoleData:
    """Poles of the ``y`` coordinate on the transformed curve.

    ``case`` is ``"double"`` (a single double pole ``p1``) or ``"simple"``
    (two simple poles). ``preimages`` maps labels such as ``"sigma^-2(P1)"``
    to points.
    """

    case: str
    p1: CurvePoint
    p2: CurvePoint | None
    preimages: dict[str, CurvePoint] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "p1": self.p1.to_json(),
            "p2": self.p2.to_json() if self.p2 is not None else None,
        }


def poles_of_y(k: Kernel) -> PoleData:
    """Solve ``Kbar(x0, x1, 1, 0) = 0``: ``t*x0*(d01*x1 + d11*x0) = 0`` in
    the transformed weights."""
    if not k.transformed:
        raise ValueError("poles_of_y expects the transformed kernel")
    d = k.weights.d
    inf = ProjPoint.infinity()
    p1 = CurvePoint(ProjPoint.of(0, 1), inf)
    if d[(0, 1)] == 0:
        case, p2 = "double", None
    else:
        case, p2 = "simple", CurvePoint(ProjPoint.of(-d[(0, 1)], d[(1, 1)]), inf)
    pre = {}
    for label, P in (("P1", p1), ("P2", p2)):
        if P is None:
            continue
        q = sigma_inv(k, P)
        pre[f"sigma^-1({label})"] = q
        pre[f"sigma^-2({label})"] = sigma_inv(k, q)
    return PoleData(case, p1, p2, pre)


# ---------------------------------------------------------------------------
# orbit searches


def orbit_offset(k: Kernel, A: CurvePoint, B: CurvePoint, n_max: int, parity: int | None = None) -> int | None:
    """Smallest ``|n| <= n_max`` with ``sigma^n(B) == A``; positive ``n``
    wins ties. ``parity`` restricts ``n`` to even (0) or odd (1) values."""
    ok = (lambda n: True) if parity is None else (lambda n: n % 2 == parity)
    if ok(0) and A == B:
        return 0
    fwd = bwd = B
    for n in range(1, n_max + 1):
        fwd = sigma(k, fwd)
        if ok(n) and fwd == A:
            return n
        bwd = sigma_inv(k, bwd)
        if ok(n) and bwd == A:
            return -n
    return None


def orbit_relation(k: Kernel, A: CurvePoint, B: CurvePoint, k_max: int) -> int | None:
    """Smallest ``|j| <= k_max`` with ``sigma^(2j)(B) == A`` (``j`` signed)."""
    n = orbit_offset(k, A, B, 2 * k_max, parity=0)
    return None if n is None else n // 2


def generic_x_values() -> Iterator[Rat]:
    """2, 3/2, 5/3, 8/5, ...: ratios of consecutive Fibonacci numbers."""
    a, b = 2, 1
    while True:
        yield Rat(a, b)
        a, b = a + b, a


def generic_points(k: Kernel, count: int = 1) -> list[CurvePoint]:
    """Deterministic generic curve points, one per unramified fiber with a
    finite, nonzero ``y``."""
    out = []
    for x in generic_x_values():
        px = ProjPoint.affine(x)
        A, B, C = x_fiber(k, px)
        if not A or not C or not (B * B - 4 * A * C):
            continue
        out.append(fiber_points(k, px)[0])
        if len(out) == count:
            return out
    raise AssertionError("unreachable")  # pragma: no cover


def closure_order(k: Kernel, Q: CurvePoint, n_max: int) -> int | None:
    """Least ``1 <= n <= n_max`` with ``sigma^n(Q) == Q``.

    Walks forwards and backwards at once: ``sigma^n(Q) == Q`` iff
    ``sigma^ceil(n/2)(Q) == sigma^-floor(n/2)(Q)``, which halves the size of
    the exact coordinates involved.
    """
    fwd = [Q]
    bwd = [Q]
    for n in range(1, n_max + 1):
        hi, lo = (n + 1) // 2, n // 2
        if len(fwd) <= hi:
            fwd.append(sigma(k, fwd[-1]))
        if len(bwd) <= lo:
            bwd.append(sigma_inv(k, bwd[-1]))
        if fwd[hi] == bwd[lo]:
            return n
    return None


def group_order_probe(k: Kernel, n_max: int, point: CurvePoint | None = None) -> int | None:
    """Order of ``sigma`` if it closes up within ``n_max`` steps on a generic
    point, else ``None`` (no closure observed)."""
    Q = point if point is not None else generic_points(k, 1)[0]
    return closure_order(k, Q, n_max)
