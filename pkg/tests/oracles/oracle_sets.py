#!/usr/bin/env python3
"""Independent derivation of the binary set codes.

Builds hereditarily finite sets as raw frozensets, codes them with a direct
recursion, and freezes the resulting tables. No package imports: agreement
with qsetalg.perfinite is checked by the tests, not here.
"""

import json
import os


def powerset(xs):
    xs = list(xs)
    out = [frozenset()]
    for x in xs:
        out += [s | frozenset([x]) for s in out]
    return out


_code_memo = {}


def code(x) -> int:
    if x not in _code_memo:
        _code_memo[x] = sum(1 << code(e) for e in x)
    return _code_memo[x]


def grade(x) -> int:
    return len(x)


def rank(x) -> int:
    return 0 if not x else 1 + max(rank(e) for e in x)


def text(x) -> str:
    return "{" + ",".join(text(e) for e in sorted(x, key=code)) + "}"


def main() -> None:
    tiers = [frozenset()]
    counts = [1]
    for _ in range(4):
        tiers = powerset(tiers)
        counts.append(len(tiers))
    # tiers now holds every set of rank <= 4
    codes = sorted(code(x) for x in tiers)
    bijective = codes == list(range(len(tiers)))

    by_code = {code(x): x for x in tiers}
    table16 = [
        {
            "code": c,
            "text": text(by_code[c]),
            "grade": grade(by_code[c]),
            "rank": rank(by_code[c]),
        }
        for c in range(16)
    ]

    spot = {}
    for c in (0, 1, 3, 6, 11, 15, 100, 2026, 65535):
        spot[str(c)] = text(by_code[c])

    out = {
        "rank_counts": counts,
        "codes_cover_range": bijective,
        "max_code_plus_one": len(tiers),
        "table16": table16,
        "decode_spot": spot,
    }
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "oracle_sets.json"), "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=1)
    print(f"rank counts {counts}, bijection over 0..{len(tiers)-1}: {bijective}")


if __name__ == "__main__":
    main()
