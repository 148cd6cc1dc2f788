"""Shared test utilities: frozen oracle loading and seeded random elements."""

import json
import os
from fractions import Fraction

from qsetalg.perfinite import decode
from qsetalg.qset import Multivector

ORACLE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "oracles")


def load_oracle(name: str):
    with open(os.path.join(ORACLE_DIR, f"{name}.json"), "r", encoding="utf-8") as fh:
        return json.load(fh)


def rand_label(rng, frame):
    """Uniform basis blade label of the frame."""
    return decode(rng.randrange(1 << frame.n))


def rand_mv(rng, frame, terms=4) -> Multivector:
    """Sparse multivector with small rational coefficients."""
    mv = Multivector.zero()
    for _ in range(terms):
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        mv = mv + Multivector.blade(rand_label(rng, frame), c)
    return mv
