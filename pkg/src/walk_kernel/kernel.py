"""The kernel polynomial of a walk at a fixed rational ``t``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import RATIONAL_TYPES, LaurentPoly, ProjPoint, Rat, Scalar, format_rat, rat
from .model import StepWeights, check_a2, phi_transform


class UPoly:
    """Dense univariate polynomial, coefficients listed from degree 0 up."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar] = ()) -> None:
        cs = [Rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Rat, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Rat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Rat(0)

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self[k] - other[k] for k in range(n)])

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, RATIONAL_TYPES):
            return UPoly([c * other for c in self.coeffs])
        out = [Rat(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, v):
        acc = Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def homogeneous(self, v0, v1, degree: int = 2):
        """``v1**degree * p(v0/v1)`` evaluated without division."""
        acc = Rat(0)
        for k in range(degree + 1):
            c = self[k]
            if c:
                acc = acc + c * (v0**k) * (v1 ** (degree - k))
        return acc

    def to_str(self, var: str = "x") -> str:
        return str(LaurentPoly({(k, 0): c for k, c in enumerate(self.coeffs)})).replace("x", var)

    def __repr__(self) -> str:
        return f"UPoly({[format_rat(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class Kernel:
    """``K(x, y) = x*y*(t * sum d[i,j] x^i y^j - 1)`` at a fixed ``t``.

    ``weights`` are the weights the polynomial is built from (the remapped
    ones when ``transformed``); ``source`` is always the original model.
    """

    source: StepWeights
    weights: StepWeights
    transformed: bool
    t: Rat
    a: UPoly
    b: UPoly
    c: UPoly
    ahat: UPoly
    bhat: UPoly
    chat: UPoly
    dx: UPoly
    dy: UPoly
    bihom: tuple[tuple[Rat, ...], ...]

    def laurent(self) -> LaurentPoly:
        """``K`` as a Laurent polynomial in ``x, y``."""
        d = self.weights.d
        terms = {(i + 1, j + 1): self.t * w for (i, j), w in d.items() if w}
        return LaurentPoly(terms) - LaurentPoly.monomial(1, 1)

    def __str__(self) -> str:
        return str(self.laurent())


def build_kernel(w: StepWeights, t: Scalar | str, transformed: bool = False) -> Kernel:
    t = rat(t)
    if not 0 < t < 1:
        raise ValueError(f"t = {t} must lie strictly between 0 and 1")
    d = phi_transform(w) if transformed else w
    dd = d.d

    def row(j: int, shift: UPoly | None = None) -> UPoly:
        p = UPoly([t * dd[(i, j)] for i in (-1, 0, 1)])
        return p - shift if shift is not None else p

    x_lin = UPoly([0, 1])
    # coefficients of y^2, y^1, y^0
    a = row(1)
    b = row(0, x_lin)
    c = row(-1)

    def col(i: int, shift: UPoly | None = None) -> UPoly:
        p = UPoly([t * dd[(i, j)] for j in (-1, 0, 1)])
        return p - shift if shift is not None else p

    ahat = col(1)
    bhat = col(0, x_lin)
    chat = col(-1)

    grid = tuple(
        tuple(
            t * dd[(i - 1, j - 1)] - (1 if (i, j) == (1, 1) else 0)
            for j in range(3)
        )
        for i in range(3)
    )
    return Kernel(
        source=w,
        weights=d,
        transformed=transformed,
        t=t,
        a=a,
        b=b,
        c=c,
        ahat=ahat,
        bhat=bhat,
        chat=chat,
        dx=b * b - a * c * 4,
        dy=bhat * bhat - ahat * chat * 4,
        bihom=grid,
    )


def eval_bihom(k: Kernel, P: tuple[ProjPoint, ProjPoint]):
    """Value of the bihomogenized kernel at canonical representatives."""
    px, py = P
    x0, x1 = px.c0, px.c1
    y0, y1 = py.c0, py.c1
    xs = (x1 * x1, x0 * x1, x0 * x0)
    ys = (y1 * y1, y0 * y1, y0 * y0)
    total = Rat(0)
    for i in range(3):
        for j in range(3):
            coef = k.bihom[i][j]
            if coef:
                total = total + coef * xs[i] * ys[j]
    return total


def x_fiber(k: Kernel, px: ProjPoint):
    """``(A, B, C)`` with ``Kbar = A*y0^2 + B*y0*y1 + C*y1^2`` over ``px``."""
    x0, x1 = px.c0, px.c1
    xs = (x1 * x1, x0 * x1, x0 * x0)
    return tuple(
        sum((k.bihom[i][j] * xs[i] for i in range(3) if k.bihom[i][j]), Rat(0))
        for j in (2, 1, 0)
    )


def y_fiber(k: Kernel, py: ProjPoint):
    """``(A, B, C)`` with ``Kbar = A*x0^2 + B*x0*x1 + C*x1^2`` over ``py``."""
    y0, y1 = py.c0, py.c1
    ys = (y1 * y1, y0 * y1, y0 * y0)
    return tuple(
        sum((k.bihom[i][j] * ys[j] for j in range(3) if k.bihom[i][j]), Rat(0))
        for i in (2, 1, 0)
    )


def f_poly(k: Kernel) -> UPoly:
    """``f(x) = t*d[-1,0] + t*x*d[-1,-1]`` in the original weights."""
    d = k.source.d
    return UPoly([k.t * d[(-1, 0)], k.t * d[(-1, -1)]])


def g_poly(k: Kernel) -> LaurentPoly:
    """``g(x, y)``: the diagonal-series coefficient, a polynomial in ``x, y``.

    Written out, ``g = y/2 - t/2 (d11 y^2 + d00 y + d-1-1) - t x (d0-1 y + d10 y^2)``
    in the original weights.
    """
    d = k.source.d
    t = k.t
    half = Rat(1, 2)
    return LaurentPoly(
        {
            (0, 1): half - half * t * d[(0, 0)],
            (0, 2): -half * t * d[(1, 1)],
            (0, 0): -half * t * d[(-1, -1)],
            (1, 1): -t * d[(0, -1)],
            (1, 2): -t * d[(1, 0)],
        }
    )


def is_elliptic(w: StepWeights) -> bool:
    """The kernel curve of ``w`` is elliptic iff no closed half-plane through
    the origin contains the step set."""
    return check_a2(w)


def describe(k: Kernel) -> str:
    label = "K_phi" if k.transformed else "K"
    lines = [
        f"{label}(x,y) = {k}   at t = {format_rat(k.t)}",
        f"  a(x) = {k.a.to_str('x')}",
        f"  b(x) = {k.b.to_str('x')}",
        f"  c(x) = {k.c.to_str('x')}",
        f"  ahat(y) = {k.ahat.to_str('y')}",
        f"  bhat(y) = {k.bhat.to_str('y')}",
        f"  chat(y) = {k.chat.to_str('y')}",
        f"  d(x) = {k.dx.to_str('x')}",
        f"  dhat(y) = {k.dy.to_str('y')}",
    ]
    return "\n".join(lines)
