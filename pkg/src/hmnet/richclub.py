"""Rich-club conditioning: steer degree assortativity through hub links.

A set R of nodes (normally the highest-degree ones) either gets random
protected links among its members, which survive randomization and
modularization, or has all internal links forbidden.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .construction import ConstraintSet
from .errors import InvalidSpecError

LINK_PROB = "link_prob"
FORBID = "forbid"
TOP_DEGREE = "top_degree"
UNIFORM_RANDOM = "uniform_random"


@dataclass(frozen=True)
class RichClubSpec:
    size: int = 10
    mode: str = LINK_PROB
    p: float = 0.0
    selection: str = TOP_DEGREE

    def __post_init__(self):
        if self.size < 1:
            raise InvalidSpecError("rich club size must be positive")
        if self.mode not in (LINK_PROB, FORBID):
            raise InvalidSpecError(f"unknown rich club mode {self.mode!r}")
        if self.selection not in (TOP_DEGREE, UNIFORM_RANDOM):
            raise InvalidSpecError(f"unknown selection {self.selection!r}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidSpecError(f"link probability {self.p} outside [0, 1]")

    @property
    def label(self) -> str:
        prefix = "top" if self.selection == TOP_DEGREE else "random"
        p = 0.0 if self.mode == FORBID else self.p
        return f"{prefix}{self.size}:{p:.2f}"


_CONDITION = re.compile(r"^(top|random)(\d+):([0-9.]+)$")


def parse_condition(text: str) -> Optional[RichClubSpec]:
    """Parse ``none``, ``top<k>:<p>`` or ``random<k>:<p>``.

    ``p == 0`` selects the forbid mode: no links at all inside R.
    """
    if text == "none":
        return None
    match = _CONDITION.match(text)
    if not match:
        raise InvalidSpecError(f"cannot parse rich-club condition {text!r}")
    which, size, p = match.groups()
    try:
        prob = float(p)
    except ValueError:
        raise InvalidSpecError(f"bad probability in {text!r}") from None
    return RichClubSpec(
        size=int(size),
        mode=FORBID if prob == 0 else LINK_PROB,
        p=prob,
        selection=TOP_DEGREE if which == "top" else UNIFORM_RANDOM,
    )


def select_rich_club(ndl: Sequence[int], spec: RichClubSpec, rng: random.Random) -> list[int]:
    """Members of R in ascending label order.

    ``top_degree`` takes the ``size`` largest degrees, ties going to the
    smaller label; ``uniform_random`` samples without replacement.
    """
    n = len(ndl)
    if spec.size > n:
        raise InvalidSpecError(f"rich club of {spec.size} nodes on a graph of {n}")
    if spec.selection == TOP_DEGREE:
        ranked = sorted(range(n), key=lambda i: (-ndl[i], i))
        return sorted(ranked[: spec.size])
    return sorted(rng.sample(range(n), spec.size))


def build_constraints(members: Sequence[int], spec: RichClubSpec, rng: random.Random) -> ConstraintSet:
    pairs = list(itertools.combinations(sorted(members), 2))
    if spec.mode == FORBID:
        return ConstraintSet(forbidden=frozenset(pairs))
    return ConstraintSet(protected=frozenset(e for e in pairs if rng.random() < spec.p))
