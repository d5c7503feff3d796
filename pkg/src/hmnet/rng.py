"""Seed derivation: one 64-bit run seed, independent labelled streams."""

import hashlib
import random

U64 = (1 << 64) - 1


def derive_seed(seed: int, *labels: object) -> int:
    key = "/".join([str(seed & U64), *map(str, labels)]).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def stream(seed: int, *labels: object) -> random.Random:
    """A generator that depends only on ``seed`` and the stage labels.

    Adding a new stage with a new label never shifts the draws of
    existing stages.
    """
    return random.Random(derive_seed(seed, *labels))
