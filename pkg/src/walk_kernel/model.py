"""Step weights, the standing assumptions on them, and the weight remap
induced by the coordinate change ``(x, y) -> (x*y, 1/x)``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .arith import Rat, Scalar, format_rat, rat

DIRECTIONS: tuple[tuple[int, int], ...] = tuple(
    (i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)
)
STEPS = tuple(d for d in DIRECTIONS if d != (0, 0))

COMPASS: dict[str, tuple[int, int]] = {
    "E": (1, 0),
    "NE": (1, 1),
    "N": (0, 1),
    "NW": (-1, 1),
    "W": (-1, 0),
    "SW": (-1, -1),
    "S": (0, -1),
    "SE": (1, -1),
}
COMPASS_NAME = {v: k for k, v in COMPASS.items()}
# counter-clockwise angular index in units of pi/4
_ANGLE = {step: k for k, step in enumerate(COMPASS.values())}


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class StepWeights:
    """Weights ``d[i, j]`` for ``(i, j)`` in ``{-1, 0, 1}**2``; they sum to one."""

    d: Mapping[tuple[int, int], Rat]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        full = {}
        for key in self.d:
            if key not in DIRECTIONS:
                raise ModelError(f"step {key} is not a small step")
        total = Rat(0)
        for key in DIRECTIONS:
            w = Rat(self.d.get(key, 0))
            if not 0 <= w <= 1:
                raise ModelError(f"weight d{key} = {w} outside [0, 1]")
            full[key] = w
            total += w
        if total != 1:
            raise ModelError(f"weights sum to {total}, expected 1")
        object.__setattr__(self, "d", full)

    @classmethod
    def uniform(cls, steps: Iterable[str | tuple[int, int]], name: str | None = None) -> "StepWeights":
        """Unweighted model: each listed step gets ``1/|S|``."""
        keys = {COMPASS[s] if isinstance(s, str) else tuple(s) for s in steps}
        if not keys:
            raise ModelError("no steps")
        if (0, 0) in keys:
            raise ModelError("an unweighted model has no stay-put step")
        w = Rat(1, len(keys))
        return cls({k: w for k in keys}, name=name)

    @classmethod
    def from_compass(cls, weights: Mapping[str, Scalar], name: str | None = None) -> "StepWeights":
        d = {}
        for key, w in weights.items():
            d[(0, 0) if key == "0" else COMPASS[key]] = Rat(w)
        return cls(d, name=name)

    def __getitem__(self, key: tuple[int, int]) -> Rat:
        return self.d[key]

    @property
    def support(self) -> frozenset[tuple[int, int]]:
        """The step set: nonzero-weight directions other than ``(0, 0)``."""
        return frozenset(k for k in STEPS if self.d[k])

    def reflect(self) -> "StepWeights":
        """Diagonal reflection ``(i, j) -> (j, i)``."""
        return StepWeights({(j, i): w for (i, j), w in self.d.items()}, name=self.name)

    def is_unweighted(self) -> bool:
        S = self.support
        return self.d[(0, 0)] == 0 and all(self.d[k] == Rat(1, len(S)) for k in S)

    def label(self) -> str:
        if self.name:
            return self.name
        return "{" + ",".join(
            f"{COMPASS_NAME[k]}:{format_rat(self.d[k])}" for k in sorted(self.support)
        ) + "}"

    def to_json(self) -> dict:
        doc: dict = {
            "d": {f"{i},{j}": format_rat(w) for (i, j), w in sorted(self.d.items()) if w}
        }
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "StepWeights":
        if "d" not in doc or not isinstance(doc["d"], Mapping):
            raise ModelError('model file needs a "d" object')
        d = {}
        for key, w in doc["d"].items():
            try:
                i, j = (int(part) for part in key.split(","))
            except ValueError:
                raise ModelError(f"bad step key {key!r}; expected 'i,j'") from None
            if isinstance(w, float):
                raise ModelError(f"weight for {key} must be an exact 'p/q' string")
            d[(i, j)] = rat(w)
        return cls(d, name=doc.get("name"))

    def __repr__(self) -> str:
        return f"StepWeights({self.label()})"


@dataclass(frozen=True)
class AssumptionReport:
    a1: bool
    a2: bool
    diagnostic: str


def check_a1(w: StepWeights) -> bool:
    """Diagonal symmetry with both anti-diagonal weights zero."""
    if w[(1, -1)] or w[(-1, 1)]:
        return False
    return all(w[(i, j)] == w[(j, i)] for (i, j) in DIRECTIONS)


def _max_angular_gap(steps: Iterable[tuple[int, int]]) -> int:
    angles = sorted(_ANGLE[s] for s in steps)
    if not angles:
        raise ModelError("no steps")
    gaps = [b - a for a, b in zip(angles, angles[1:])]
    gaps.append(angles[0] + 8 - angles[-1])
    return max(gaps)


def check_a2(w: StepWeights) -> bool:
    """True iff the step set lies in no closed half-plane through the origin.

    A closed half-plane holds every step exactly when two angularly adjacent
    steps are at least pi apart.
    """
    return _max_angular_gap(w.support) < 4


def in_upper_antidiagonal_halfplane(w: StepWeights) -> bool:
    """All steps satisfy ``i + j >= 0``: such walks can never leave the
    three-quarter plane."""
    return all(i + j >= 0 for (i, j) in w.support)


def assumptions(w: StepWeights) -> AssumptionReport:
    a1, a2 = check_a1(w), check_a2(w)
    notes = []
    if w[(1, -1)] or w[(-1, 1)]:
        notes.append("anti-diagonal steps present")
    asym = [(i, j) for (i, j) in DIRECTIONS if i < j and w[(i, j)] != w[(j, i)]]
    if asym:
        notes.append("not diagonally symmetric at " + ", ".join(map(str, asym)))
    if not a2:
        notes.append("step set lies in a closed half-plane through the origin")
    return AssumptionReport(a1, a2, "; ".join(notes) or "ok")


# (target in transformed model) <- (source step in original model)
PHI_REMAP: dict[tuple[int, int], tuple[int, int]] = {
    (0, 1): (1, 1),
    (1, 1): (1, 0),
    (-1, 0): (0, 1),
    (0, 0): (0, 0),
    (1, 0): (0, -1),
    (-1, -1): (-1, 0),
    (0, -1): (-1, -1),
}


def phi_transform(w: StepWeights) -> StepWeights:
    """Weights of the kernel ``x*K(x*y, 1/x)``.

    The monomial ``x^i y^j`` becomes ``x^(i-j) y^i``; anti-diagonal steps
    would become large steps, so they are rejected.
    """
    if not check_a1(w):
        raise ModelError(
            "model violates A1: an anti-diagonal step would create a large step"
        )
    d = {target: w[source] for target, source in PHI_REMAP.items()}
    name = f"phi({w.name})" if w.name else None
    return StepWeights(d, name=name)


# ---------------------------------------------------------------------------
# built-in models


def _example_47(lam: Rat) -> StepWeights:
    mu = (1 - lam) / 4
    if not (0 < lam < 1):
        raise ModelError("example-4.7 needs 0 < lambda < 1")
    return StepWeights(
        {(1, 0): mu, (-1, 0): mu, (0, 1): mu, (0, -1): mu, (1, 1): lam},
        name=f"example-4.7({format_rat(lam)})",
    )


BUILTIN_DESCRIPTIONS = {
    "simple-ne": "N,S,E,W,NE uniform (D-algebraic)",
    "ne-kite": "N,NE,E,SW uniform",
    "sw-corner": "W,NE,S,SW uniform",
    "simple-sw": "N,S,E,W,SW uniform",
    "example-4.7": "axis steps mu, NE step lambda, lambda + 4 mu = 1 (default lambda = 1/5; 'example-4.7:p/q')",
    "example-4.10": "axis steps 1/6, SW step 1/3",
    "example-4.14": "N,E,NE 1/5, SW 2/5",
    "simple": "N,S,E,W uniform (finite group)",
}

# The four diagonally symmetric infinite-group models, in the order of the
# classification table.
THEOREM_MODELS = ("ne-kite", "sw-corner", "simple-sw", "simple-ne")


def builtin_model(name: str) -> StepWeights:
    """Look up a built-in model; ``example-4.7`` accepts ``:lambda``."""
    base, _, param = name.partition(":")
    if base.startswith("example-4.7(") and base.endswith(")"):
        base, param = "example-4.7", base[len("example-4.7(") : -1]
    if param and base != "example-4.7":
        raise ModelError(f"model {base!r} takes no parameter")
    if base == "simple-ne":
        return StepWeights.uniform(["N", "S", "E", "W", "NE"], name=base)
    if base == "ne-kite":
        return StepWeights.uniform(["N", "NE", "E", "SW"], name=base)
    if base == "sw-corner":
        return StepWeights.uniform(["W", "NE", "S", "SW"], name=base)
    if base == "simple-sw":
        return StepWeights.uniform(["N", "S", "E", "W", "SW"], name=base)
    if base == "simple":
        return StepWeights.uniform(["N", "S", "E", "W"], name=base)
    if base == "example-4.7":
        return _example_47(rat(param) if param else Rat(1, 5))
    if base == "example-4.10":
        sixth = Rat(1, 6)
        return StepWeights(
            {(1, 0): sixth, (-1, 0): sixth, (0, 1): sixth, (0, -1): sixth, (-1, -1): Rat(1, 3)},
            name=base,
        )
    if base == "example-4.14":
        fifth = Rat(1, 5)
        return StepWeights(
            {(1, 0): fifth, (0, 1): fifth, (1, 1): fifth, (-1, -1): 2 * fifth},
            name=base,
        )
    raise ModelError(f"unknown model {name!r}; known: {', '.join(BUILTIN_DESCRIPTIONS)}")


def builtin_names() -> list[str]:
    return list(BUILTIN_DESCRIPTIONS)


def load_model(spec: str) -> StepWeights:
    """A built-in name, or a path to a JSON model file."""
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        with open(path) as fh:
            return StepWeights.from_json(json.load(fh))
    return builtin_model(spec)
