"""Weighted enumeration of walks confined to the three-quarter plane
``{i >= 0 or j >= 0}`` and the sectional generating series built from it."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterator, TextIO

from .arith import LaurentPoly, Rat, TruncSeries, format_rat
from .model import DIRECTIONS, StepWeights


def in_region(i: int, j: int) -> bool:
    return i >= 0 or j >= 0


@dataclass(frozen=True)
class WalkTable:
    """``counts[n][(i, j)]`` is the total weight of ``n``-step walks from the
    origin ending at ``(i, j)``."""

    weights: StepWeights
    counts: tuple[dict[tuple[int, int], Rat], ...]

    @property
    def order(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n: int) -> dict[tuple[int, int], Rat]:
        return self.counts[n]

    def coeff(self, n: int, i: int, j: int) -> Rat:
        return self.counts[n].get((i, j), Rat(0))

    def mass(self, n: int) -> Rat:
        return sum(self.counts[n].values(), Rat(0))

    def rows(self) -> Iterator[tuple[int, int, int, Rat]]:
        for n, layer in enumerate(self.counts):
            for (i, j) in sorted(layer):
                yield n, i, j, layer[(i, j)]

    def write_csv(self, fh: TextIO) -> None:
        """Rows ``n,i,j,"p/q"`` without a header; only the coefficient is quoted."""
        writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        for n, i, j, c in self.rows():
            writer.writerow([n, i, j, format_rat(c)])

    def with_count(self, n: int, i: int, j: int, value: Rat) -> "WalkTable":
        """Copy with one entry replaced (for mutation tests)."""
        counts = [dict(layer) for layer in self.counts]
        if value:
            counts[n][(i, j)] = Rat(value)
        else:
            counts[n].pop((i, j), None)
        return WalkTable(self.weights, tuple(counts))


def enumerate_walks(w: StepWeights, N: int) -> WalkTable:
    """Walk weights up to length ``N``. Walks stepping outside the region are
    killed; the stay-put weight ``d[0,0]`` counts as a step."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    steps = [(p, q, w[(p, q)]) for (p, q) in DIRECTIONS if w[(p, q)]]
    layer: dict[tuple[int, int], Rat] = {(0, 0): Rat(1)}
    counts = [layer]
    for _ in range(N):
        nxt: dict[tuple[int, int], Rat] = {}
        for (i, j), c in layer.items():
            for p, q, d in steps:
                target = (i + p, j + q)
                if in_region(*target):
                    nxt[target] = nxt.get(target, Rat(0)) + d * c
        layer = {k: v for k, v in nxt.items() if v}
        counts.append(layer)
    return WalkTable(w, tuple(counts))


SECTIONS = ("C", "L", "D", "U", "C0minus", "Cminus0", "C00", "Dphi", "Lphi", "C0minus_x")


def section(table: WalkTable, which: str) -> TruncSeries:
    """One of the sectional series, with its variable change applied.

    ``C0minus`` is in ``1/y``, ``Cminus0`` in ``1/x``, ``C0minus_x`` is the
    same data in ``x``; ``Dphi`` and ``Lphi`` are the diagonal and lower
    cone after ``(x, y) -> (x*y, 1/x)``.
    """
    try:
        pick = _PICKERS[which]
    except KeyError:
        raise ValueError(f"unknown section {which!r}; expected one of {SECTIONS}") from None
    out = []
    for layer in table.counts:
        terms = {}
        for (i, j), c in layer.items():
            key = pick(i, j)
            if key is not None:
                terms[key] = c
        out.append(LaurentPoly(terms))
    return TruncSeries(table.order, out)


def _lower(i, j):
    return (i, j) if i >= 0 and j <= i - 1 else None


def _upper(i, j):
    return (i, j) if j >= 0 and i <= j - 1 else None


def _lphi(i, j):
    # x^i y^j  ->  (xy)^i x^-j = x^(i-j) y^i
    return (i - j, i) if i >= 0 and j <= i - 1 else None


_PICKERS = {
    "C": lambda i, j: (i, j),
    "L": _lower,
    "D": lambda i, j: (i, j) if i == j else None,
    "U": _upper,
    "C0minus": lambda i, j: (0, j) if i == 0 and j < 0 else None,
    "Cminus0": lambda i, j: (i, 0) if j == 0 and i < 0 else None,
    "C00": lambda i, j: (0, 0) if i == 0 and j == 0 else None,
    "Dphi": lambda i, j: (0, i) if i == j else None,
    "Lphi": _lphi,
    "C0minus_x": lambda i, j: (-j, 0) if i == 0 and j < 0 else None,
}


def scale_t(s: TruncSeries, t: Rat) -> TruncSeries:
    """Coefficient of ``t**n`` multiplied by ``t0**n``, i.e. ``t -> t0*t``."""
    out, factor = [], Rat(1)
    for c in s.coeffs:
        out.append(c * factor)
        factor *= t
    return TruncSeries(s.order, out)
