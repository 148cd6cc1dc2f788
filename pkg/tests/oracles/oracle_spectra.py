#!/usr/bin/env python3
"""Eigenvalue spectra of Kronecker-sum step accumulations, by brute force.

Builds the two-level step matrices directly (no package imports), forms the
n-fold Kronecker sum, and reads multiplicities off numpy eigenvalues. The
binomial pattern the package predicts in closed form is frozen alongside.
"""

import json
import os
from math import comb

import numpy as np

STEP_PLUS = np.array([[0.0, 1.0], [1.0, 0.0]])
STEP_MINUS = np.array([[0.0, 1.0], [-1.0, 0.0]])


def kron_sum(step, n):
    dim = 1 << n
    out = np.zeros((dim, dim))
    for k in range(n):
        out += np.kron(np.kron(np.eye(1 << k), step), np.eye(1 << (n - k - 1)))
    return out


def levels(step, n, square):
    m = kron_sum(step, n)
    if square == 1:
        vals = np.linalg.eigvalsh(m)
    else:
        ev = np.linalg.eigvals(m)
        assert np.abs(ev.real).max() < 1e-9
        vals = ev.imag
    rounded = np.round(vals).astype(int)
    assert np.abs(vals - rounded).max() < 1e-9
    uniq, counts = np.unique(rounded, return_counts=True)
    return sorted(zip(uniq.tolist(), counts.tolist()), reverse=True)


def main() -> None:
    out = {}
    for n in range(1, 9):
        plus = levels(STEP_PLUS, n, 1)
        minus = levels(STEP_MINUS, n, -1)
        binomial = [[n - 2 * j, comb(n, j)] for j in range(n + 1)]
        assert [list(t) for t in plus] == binomial
        assert [list(t) for t in minus] == binomial
        out[str(n)] = binomial
        print(f"n={n}: {binomial}")
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "oracle_spectra.json"), "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=1)


if __name__ == "__main__":
    main()
