#!/usr/bin/env python3
"""Oscillators with a ceiling, and tensor networks made of gamma vertices.

A mode that can hold at most 2j quanta is almost bosonic near the bottom:
the ground commutator is exactly 1 and the deviation grows linearly with the
level, vanishing as the ceiling rises. Networks wire gamma vertices into
traces that land back on the direction metric.
"""

import json

import numpy as np

from qsetalg.palev import NCPolynomial, PalevMode, bose_deviation, normal_order
from qsetalg.vertexnet import GammaVertex, VertexNetwork, dense_oracle

print("== a mode with capacity 6 ==")
mode = PalevMode(6)
print("[a, adag] diagonal:", ", ".join(str(d) for d in mode.ladder_commutator_diagonal()))
print("ground value is exactly 1; deviation at level n is n/j:")
for n in range(mode.dim):
    print(f"  level {n}: {mode.bose_deviation(n)}")
at_n, beyond = mode.exclusion_report()
print(f"adag^6 has largest entry {at_n}; adag^7 is identically {beyond}")

print()
print("== the deviation halves as the capacity doubles ==")
for two_j in (16, 32, 64, 128):
    print(f"  capacity {two_j:3d}: deviation at level 1 = {bose_deviation(two_j, 1)}")

print()
print("== normal ordering in the nilpotent system ==")
poly = NCPolynomial.word("p", "q", "q")
print("p*q*q  ->", normal_order(poly, "h1"))

print()
print("== a gamma loop returns the direction metric ==")
net = VertexNetwork(
    [GammaVertex(2, 1), GammaVertex(2, 1)],
    edges=[((0, "spinor"), (1, "dual")), ((1, "spinor"), (0, "dual"))],
    open_legs=[(0, "vector"), (1, "vector")],
)
arr = net.contract()
print(np.array2string(arr))
print("matches the dense einsum oracle:", np.allclose(arr.astype(float), dense_oracle(net)))
print("parity check:", "clean" if net.parity_check().ok else "flagged")
print()
print("the same network as portable JSON:")
print(json.dumps(net.to_json())[:120] + " ...")
