"""Truncated-series checks of the functional equations.

The equations are identities in the counting variable ``t``. Each check
substitutes ``t -> t0*s`` for the sampled rational ``t0`` and compares the
two sides as power series in ``s`` up to order ``N``. A correct table gives
an identically zero residual; the first nonzero term localizes a fault.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import LaurentPoly, Rat, TruncSeries, rat
from .model import ModelError, StepWeights, check_a1, phi_transform
from .series import WalkTable, enumerate_walks, scale_t, section

DEFAULT_ORDER = 8

HALF = Rat(1, 2)


def _lin(order: int, const: LaurentPoly, slope: LaurentPoly, t: Rat) -> TruncSeries:
    """``const + t0*s*slope`` as a truncated series in ``s``."""
    return TruncSeries(order, [const, slope * t])


def _kernel_series(w: StepWeights, t: Rat, order: int) -> TruncSeries:
    steps = LaurentPoly({(i + 1, j + 1): c for (i, j), c in w.d.items() if c})
    return _lin(order, -LaurentPoly.monomial(1, 1), steps, t)


def _c_x(w: StepWeights) -> LaurentPoly:
    # c(x) / t: coefficient of y^0 in the kernel
    return LaurentPoly({(i + 1, 0): w[(i, -1)] for i in (-1, 0, 1)})


def _chat_y(w: StepWeights) -> LaurentPoly:
    return LaurentPoly({(0, j + 1): w[(-1, j)] for j in (-1, 0, 1)})


def _sections(w: StepWeights, t: Rat, order: int, table: WalkTable | None):
    if table is None:
        table = enumerate_walks(w, order)
    if table.order < order:
        raise ValueError(f"table has order {table.order} < {order}")

    def get(name: str) -> TruncSeries:
        s = section(table, name)
        if s.order != order:
            s = TruncSeries(order, s.coeffs)
        return scale_t(s, t)

    return get


def check_plane_equation(
    w: StepWeights, t, N: int = DEFAULT_ORDER, table: WalkTable | None = None
) -> TruncSeries:
    """Residual of ``K C = c(x) C_-0(1/x) + chat(y) C_0-(1/y) + t d-1-1 C00 - xy``.

    The identity needs ``d[1,-1] == d[-1,1] == 0``: with anti-diagonal steps
    the moves between ``(-1, 0)`` and ``(0, -1)`` stay inside the region, so
    the boundary terms over-correct and the residual is nonzero.
    """
    if N < 1:
        raise ValueError("order must be at least 1")
    t = rat(t)
    get = _sections(w, t, N, table)
    zero = LaurentPoly()
    K = _kernel_series(w, t, N)
    c = _lin(N, zero, _c_x(w), t)
    chat = _lin(N, zero, _chat_y(w), t)
    rhs = (
        c * get("Cminus0")
        + chat * get("C0minus")
        + get("C00").shift(1) * (t * w[(-1, -1)])
        - LaurentPoly.monomial(1, 1)
    )
    return K * get("C") - rhs


def _require_a1(w: StepWeights) -> None:
    if not check_a1(w):
        raise ModelError("this equation needs A1 (diagonal symmetry, no anti-diagonal steps)")


def check_sym_equation(
    w: StepWeights, t, N: int = DEFAULT_ORDER, table: WalkTable | None = None
) -> TruncSeries:
    """Residual of the lower-cone equation in ``L`` and the diagonal ``D``."""
    _require_a1(w)
    t = rat(t)
    get = _sections(w, t, N, table)
    zero = LaurentPoly()
    xy = LaurentPoly.monomial(1, 1)
    K = _kernel_series(w, t, N)
    chat = _lin(N, zero, _chat_y(w), t)
    inner = LaurentPoly(
        {
            (1, 1): HALF * w[(1, 1)],
            (0, 0): HALF * w[(0, 0)],
            (-1, -1): HALF * w[(-1, -1)],
            (0, -1): w[(0, -1)],
            (1, 0): w[(1, 0)],
        }
    )
    # -xy * (-1/2 + t * inner)
    diag_coeff = _lin(N, xy * HALF, -(xy * inner), t)
    rhs = (
        -(xy * HALF)
        + chat * get("C0minus")
        + get("C00").shift(1) * (HALF * t * w[(-1, -1)])
        + diag_coeff * get("D")
    )
    return K * get("L") - rhs


def check_octant_equation(
    w: StepWeights, t, N: int = DEFAULT_ORDER, table: WalkTable | None = None
) -> TruncSeries:
    """Residual of the quadrant-like equation after ``(x, y) -> (x*y, 1/x)``."""
    _require_a1(w)
    t = rat(t)
    get = _sections(w, t, N, table)
    zero = LaurentPoly()
    x = LaurentPoly.monomial(1, 0)
    K_phi = _kernel_series(phi_transform(w), t, N)
    f = _lin(N, zero, LaurentPoly({(0, 0): w[(-1, 0)], (1, 0): w[(-1, -1)]}), t)
    g = _lin(
        N,
        LaurentPoly.monomial(0, 1, HALF),
        LaurentPoly(
            {
                (0, 2): -HALF * w[(1, 1)],
                (0, 1): -HALF * w[(0, 0)],
                (0, 0): -HALF * w[(-1, -1)],
                (1, 1): -w[(0, -1)],
                (1, 2): -w[(1, 0)],
            }
        ),
        t,
    )
    rhs = (
        f * get("C0minus_x")
        + (g * get("Dphi")) * x
        + get("C00").shift(1) * (x * (HALF * t * w[(-1, -1)]))
        - LaurentPoly.monomial(1, 1, HALF)
    )
    return K_phi * get("Lphi") - rhs


def phi_residual(res: TruncSeries) -> TruncSeries:
    """``x * R(x*y, 1/x)`` applied coefficientwise."""
    x = LaurentPoly.monomial(1, 0)
    return res.map_coeffs(
        lambda p: p.substitute_monomials(lambda k, l: k - l, lambda k, l: k) * x
    )


@dataclass(frozen=True)
class VerifyResult:
    equation: str
    residual: TruncSeries

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()

    def first_offender(self):
        return self.residual.first_nonzero()


EQUATIONS = {
    "plane": check_plane_equation,
    "sym": check_sym_equation,
    "octant": check_octant_equation,
}


def verify_all(w: StepWeights, t, N: int = DEFAULT_ORDER, table: WalkTable | None = None) -> list[VerifyResult]:
    """Every equation that applies to ``w`` (the last two need A1)."""
    table = table if table is not None else enumerate_walks(w, N)
    names = ["plane"] + (["sym", "octant"] if check_a1(w) else [])
    return [VerifyResult(name, EQUATIONS[name](w, t, N, table)) for name in names]
