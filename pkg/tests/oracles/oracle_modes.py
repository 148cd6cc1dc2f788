#!/usr/bin/env python3
"""Float ladder algebra for capped oscillator modes, built from scratch.

Constructs the integer raising/lowering ladders directly in numpy, scales by
1/sqrt(N), and freezes the commutator diagonals, the deviation-from-bosonic
values, their halving ratios, and the exclusion cutoff norms.
"""

import json
import os

import numpy as np


def ladders(two_j: int):
    n = two_j
    dim = n + 1
    raise_op = np.zeros((dim, dim))
    lower_op = np.zeros((dim, dim))
    for k in range(n):
        raise_op[k + 1, k] = n - k
        lower_op[k, k + 1] = k + 1
    s = 1.0 / np.sqrt(n)
    return raise_op * s, lower_op * s


def main() -> None:
    out = {"commutator_diag": {}, "deviation_at_1": {}, "exclusion": {}}
    for two_j in (2, 3, 4, 6):
        up, down = ladders(two_j)
        diag = np.diag(down @ up - up @ down)
        out["commutator_diag"][str(two_j)] = [round(float(d), 12) for d in diag]
        print(f"two_j={two_j}: [a,adag] diag {np.round(diag, 6).tolist()}")
    for two_j in (16, 32, 64, 128):
        up, down = ladders(two_j)
        diag = np.diag(down @ up - up @ down)
        dev = 1.0 - float(diag[1])
        out["deviation_at_1"][str(two_j)] = dev
    devs = [out["deviation_at_1"][k] for k in ("16", "32", "64", "128")]
    out["halving_ratios"] = [devs[i + 1] / devs[i] for i in range(3)]
    print(f"deviation at level 1: {devs}, ratios {out['halving_ratios']}")
    for two_j in (4, 6, 16):
        up, _ = ladders(two_j)
        unscaled = up * np.sqrt(two_j)
        power = np.linalg.matrix_power(unscaled, two_j)
        beyond = unscaled @ power
        out["exclusion"][str(two_j)] = {
            "norm_at_capacity": float(np.abs(power).max()),
            "norm_beyond": float(np.abs(beyond).max()),
        }
        print(
            f"two_j={two_j}: |adag^{two_j}| = {np.abs(power).max()}, "
            f"|adag^{two_j + 1}| = {np.abs(beyond).max()}"
        )
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "oracle_modes.json"), "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=1)


if __name__ == "__main__":
    main()
