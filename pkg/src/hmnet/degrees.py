"""Sampling, validation and summary statistics of node degree lists.

A node degree list (ndl) gives the degree of node ``i`` at index ``i``.
Values stay in generator order; they are never sorted.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from .errors import InvalidSpecError, NDLError, ParseError, SamplingError
from .graph import format_header, parse_header

PARITY_RETRIES = 100
SAMPLE_RETRIES = 10_000


@dataclass(frozen=True)
class Normal:
    mean: float
    stddev: float

    def describe(self) -> str:
        return f"normal:{self.mean:g},{self.stddev:g}"


@dataclass(frozen=True)
class PowerLaw:
    gamma: float
    xmin: int

    def describe(self) -> str:
        return f"powerlaw:{self.gamma:g},{self.xmin}"


@dataclass(frozen=True)
class DegreeDistributionSpec:
    kind: Normal | PowerLaw
    deg_min: int = 3
    deg_max_cap: Optional[int] = None  # None -> floor(n / 3)

    def __post_init__(self):
        if self.deg_min < 1:
            raise InvalidSpecError("deg_min must be positive")
        if self.deg_max_cap is not None and self.deg_max_cap < self.deg_min:
            raise InvalidSpecError(f"deg_min {self.deg_min} > deg_max_cap {self.deg_max_cap}")
        if isinstance(self.kind, PowerLaw):
            if self.kind.gamma <= 1:
                raise InvalidSpecError(f"power-law exponent must exceed 1, got {self.kind.gamma}")
            if self.kind.xmin < self.deg_min:
                raise InvalidSpecError("power-law xmin must be >= deg_min")
        elif self.kind.stddev <= 0:
            raise InvalidSpecError("normal stddev must be positive")

    def cap(self, n: int) -> int:
        return self.deg_max_cap if self.deg_max_cap is not None else n // 3

    def describe(self) -> str:
        return f"{self.kind.describe()};degmin={self.deg_min}"


def parse_dist(text: str) -> Normal | PowerLaw:
    """Parse ``normal:<mean>,<sd>`` or ``powerlaw:<gamma>[,<xmin>]``."""
    name, _, args = text.partition(":")
    try:
        vals = [float(a) for a in args.split(",")] if args else []
        if name == "normal" and len(vals) == 2:
            return Normal(vals[0], vals[1])
        if name == "powerlaw" and len(vals) in (1, 2):
            xmin = int(vals[1]) if len(vals) == 2 else 3
            return PowerLaw(vals[0], xmin)
    except ValueError:
        pass
    raise InvalidSpecError(f"cannot parse distribution {text!r}")


def powerlaw_inverse(r: float, gamma: float, xmin: float) -> int:
    """Inverse-transform a uniform ``r`` in [0, 1) and round to nearest."""
    if gamma <= 1:
        raise InvalidSpecError(f"power-law exponent must exceed 1, got {gamma}")
    x = xmin * (1.0 - r) ** (-1.0 / (gamma - 1.0))
    return math.floor(x + 0.5)


def sample_powerlaw_value(gamma: float, xmin: int, rng: random.Random) -> int:
    return powerlaw_inverse(rng.random(), gamma, xmin)


def _drawer(spec: DegreeDistributionSpec, n: int) -> Callable[[random.Random], int]:
    lo, hi = spec.deg_min, spec.cap(n)
    kind = spec.kind
    if isinstance(kind, Normal):
        def draw(rng):
            x = math.floor(rng.normalvariate(kind.mean, kind.stddev) + 0.5)
            return min(max(x, lo), hi)
        return draw

    def draw(rng):
        for _ in range(SAMPLE_RETRIES):
            x = sample_powerlaw_value(kind.gamma, kind.xmin, rng)
            if lo <= x <= hi:
                return x
        raise SamplingError(f"no power-law draw fell inside [{lo}, {hi}]")
    return draw


def fix_parity(
    values: list[int],
    draw: Callable[[random.Random], int],
    cap: int,
    rng: random.Random,
) -> None:
    """Make ``sum(values)`` even in place, touching at most one element.

    One uniformly chosen element is redrawn until its parity flips; if
    that fails within the retry budget it keeps its value and one element
    below ``cap`` is incremented instead.
    """
    if sum(values) % 2 == 0:
        return
    i = rng.randrange(len(values))
    for _ in range(PARITY_RETRIES):
        x = draw(rng)
        if (x - values[i]) % 2:
            values[i] = x
            return
    room = [j for j, v in enumerate(values) if v < cap]
    if not room:
        raise SamplingError("condition (i): cannot make the degree sum even below the cap")
    values[rng.choice(room)] += 1


def sample_ndl(spec: DegreeDistributionSpec, n: int, rng: random.Random) -> list[int]:
    if n < 2:
        raise InvalidSpecError("need at least two nodes")
    if spec.deg_min > spec.cap(n):
        raise SamplingError(f"condition (iii): deg_min {spec.deg_min} exceeds cap {spec.cap(n)}")
    draw = _drawer(spec, n)
    values = [draw(rng) for _ in range(n)]
    fix_parity(values, draw, spec.cap(n), rng)
    return values


def validate_ndl(ndl: Sequence[int], n: int, spec: DegreeDistributionSpec | None = None) -> None:
    """Raise :class:`NDLError` naming the first violated condition.

    (i) even sum; (ii) positive integers no smaller than ``deg_min``;
    (iii) no element above the degree cap.
    """
    deg_min = spec.deg_min if spec else 1
    cap = spec.cap(n) if spec else n - 1
    if len(ndl) != n:
        raise NDLError("length", f"expected {n} entries, got {len(ndl)}")
    if sum(ndl) % 2:
        raise NDLError("i", f"degree sum {sum(ndl)} is odd")
    for i, k in enumerate(ndl):
        if not isinstance(k, int) or k < max(deg_min, 1):
            raise NDLError("ii", f"node {i} has degree {k} < {max(deg_min, 1)}")
    for i, k in enumerate(ndl):
        if k > cap:
            raise NDLError("iii", f"node {i} has degree {k} > cap {cap}")


@dataclass(frozen=True)
class NDLStats:
    min: int
    max: int
    mean: float
    stddev: float
    mode: int
    median: float
    m: int

    def row(self) -> str:
        """Tab-separated summary in the order Min Max Mean Std.dev Mode Median M."""
        return (f"{self.min}\t{self.max}\t{self.mean:.2f}\t{self.stddev:.4f}\t"
                f"{self.mode}\t{self.median:g}\t{self.m}")


def ndl_stats(ndl: Sequence[int]) -> NDLStats:
    if not ndl:
        raise ValueError("empty degree list")
    total = sum(ndl)
    return NDLStats(
        min=min(ndl),
        max=max(ndl),
        mean=total / len(ndl),
        # sample standard deviation; ties in the mode go to the smallest value
        stddev=statistics.stdev(ndl) if len(ndl) > 1 else 0.0,
        mode=min(statistics.multimode(ndl)),
        median=statistics.median(ndl),
        m=total // 2,
    )


def write_ndl(path: str | Path, ndl: Sequence[int], dist: str, seed: int) -> None:
    lines = [format_header({"n": len(ndl), "dist": dist, "seed": seed})]
    lines.extend(str(k) for k in ndl)
    Path(path).write_text("\n".join(lines) + "\n")


def read_ndl(path: str | Path) -> tuple[list[int], dict[str, str]]:
    fields: dict[str, str] = {}
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields.update(parse_header(line))
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: not an integer degree: {line!r}") from None
    if "n" in fields and int(fields["n"]) != len(out):
        raise ParseError(f"{path}: header n={fields['n']} but {len(out)} degrees read")
    return out, fields
