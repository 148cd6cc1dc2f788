"""Hereditarily finite sets with exact Ackermann coding.

The code of a set is sum(2**code(e) for e in elements), with the empty set at
0. That map is a bijection between naturals and hereditarily finite sets, and
the codes 0..T(k)-1 (T the iterated-exponential tower 1, 2, 4, 16, 65536, ...)
are exactly the sets of rank <= k. Canonical element order everywhere is
ascending code.

Two binary operations matter downstream:

    xor_union   symmetric difference; the empty set is the unit and every set
                is its own inverse (x ^ x is empty)
    por         union when the operands are disjoint, else the absorbing
                sentinel OM -- a genuine "undefined", distinct from the empty
                set

Codes of rank-5 sets already need tens of kilobits and rank 7 is not
representable at all (a rank-6 element would need a code with 2**65536 bits),
so enumeration is guarded; nothing in this package needs rank above 4.
"""

from __future__ import annotations

_TOWER = [1, 2, 4, 16, 65536]


class _OmType:
    """Absorbing 'undefined' produced by a clashing partial-or."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OM"

    def __xor__(self, other):
        return self

    __rxor__ = __xor__

    def __or__(self, other):
        return self

    __ror__ = __or__


OM = _OmType()


class PerfiniteSet:
    """Immutable hereditarily finite set, elements kept in ascending code order."""

    __slots__ = ("_elems", "_code", "_rank", "_hash")

    def __init__(self, elems=()):
        items = []
        for e in elems:
            if not isinstance(e, PerfiniteSet):
                raise TypeError(f"elements must be PerfiniteSet, got {type(e).__name__}")
            items.append(e)
        items.sort(key=lambda e: e.code)
        unique = []
        last_code = None
        for e in items:
            if last_code is None or e.code != last_code:
                unique.append(e)
                last_code = e.code
        self._elems = tuple(unique)
        self._code = None
        self._rank = None
        self._hash = None

    @property
    def code(self) -> int:
        if self._code is None:
            self._code = sum(1 << e.code for e in self._elems)
        return self._code

    @property
    def grade(self) -> int:
        """Cardinality; doubles as the grading that drives exchange parity."""
        return len(self._elems)

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = 0 if not self._elems else 1 + max(e.rank for e in self._elems)
        return self._rank

    def __iter__(self):
        return iter(self._elems)

    def __len__(self):
        return len(self._elems)

    def __contains__(self, item):
        if not isinstance(item, PerfiniteSet):
            return False
        c = item.code
        return any(e.code == c for e in self._elems)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PerfiniteSet):
            return NotImplemented
        return self._elems == other._elems

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._elems)
        return self._hash

    def __xor__(self, other):
        return xor_union(self, other)

    def __or__(self, other):
        return por(self, other)

    def isdisjoint(self, other: "PerfiniteSet") -> bool:
        mine = {e.code for e in self._elems}
        return not any(e.code in mine for e in other._elems)

    def __str__(self):
        return format_set_text(self)

    def __repr__(self):
        return f"PerfiniteSet({format_set_text(self)!r})"


EMPTY = PerfiniteSet()


def empty() -> PerfiniteSet:
    return EMPTY


def iota(x: PerfiniteSet) -> PerfiniteSet:
    """Singleton brace: x -> {x}. Raises rank by exactly one."""
    if not isinstance(x, PerfiniteSet):
        raise TypeError("iota takes a PerfiniteSet")
    return PerfiniteSet((x,))


def xor_union(x, y):
    """Symmetric difference. Empty set is the unit; x ^ x is empty. OM absorbs."""
    if x is OM or y is OM:
        return OM
    ex, ey = list(x), list(y)
    out = []
    i = j = 0
    while i < len(ex) and j < len(ey):
        cx, cy = ex[i].code, ey[j].code
        if cx == cy:
            i += 1
            j += 1
        elif cx < cy:
            out.append(ex[i])
            i += 1
        else:
            out.append(ey[j])
            j += 1
    out.extend(ex[i:])
    out.extend(ey[j:])
    return PerfiniteSet(out)


def por(x, y):
    """Partial or: union if disjoint, else the absorbing OM sentinel."""
    if x is OM or y is OM:
        return OM
    if not x.isdisjoint(y):
        return OM
    return PerfiniteSet(tuple(x) + tuple(y))


def code(x: PerfiniteSet) -> int:
    return x.code


_decode_cache: dict[int, PerfiniteSet] = {0: EMPTY}


def decode(n: int) -> PerfiniteSet:
    """Inverse Ackermann coding: the unique set with code n."""
    if n < 0:
        raise ValueError("codes are non-negative")
    cached = _decode_cache.get(n)
    if cached is not None:
        return cached
    elems = []
    m = n
    while m:
        low = m & -m
        elems.append(decode(low.bit_length() - 1))
        m ^= low
    s = PerfiniteSet(elems)
    _decode_cache[n] = s
    return s


def enumerate_rank(max_rank: int, *, allow_large: bool = False) -> tuple:
    """All sets of rank <= max_rank in code order (codes 0 .. T(max_rank)-1).

    Growth is a power tower, so max_rank <= 3 (16 sets) by default; max_rank 4
    (65536 sets) needs allow_large=True; max_rank >= 5 is refused outright.
    """
    if max_rank < 0:
        raise ValueError("rank is non-negative")
    if max_rank >= 5:
        raise ValueError("rank >= 5 enumeration is astronomically large; refusing")
    if max_rank == 4 and not allow_large:
        raise ValueError(
            "rank 4 enumerates 65536 sets; pass allow_large=True if you mean it"
        )
    count = _TOWER[max_rank]
    return tuple(decode(c) for c in range(count))


def format_set_text(x: PerfiniteSet) -> str:
    """Brace text, elements in code order: {}, {{}}, {{},{{}}} ..."""
    if not isinstance(x, PerfiniteSet):
        raise TypeError("format_set_text takes a PerfiniteSet")
    return "{" + ",".join(format_set_text(e) for e in x) + "}"


def parse_set_text(text: str) -> PerfiniteSet:
    """Parse brace text. Whitespace is tolerated; output of format round-trips."""
    s = text
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def parse() -> PerfiniteSet:
        nonlocal pos
        skip_ws()
        if pos >= len(s) or s[pos] != "{":
            raise ValueError(f"expected '{{' at position {pos} in {text!r}")
        pos += 1
        skip_ws()
        elems = []
        if pos < len(s) and s[pos] == "}":
            pos += 1
            return EMPTY
        while True:
            elems.append(parse())
            skip_ws()
            if pos >= len(s):
                raise ValueError(f"unterminated set in {text!r}")
            if s[pos] == ",":
                pos += 1
                continue
            if s[pos] == "}":
                pos += 1
                return PerfiniteSet(elems)
            raise ValueError(f"expected ',' or '}}' at position {pos} in {text!r}")

    result = parse()
    skip_ws()
    if pos != len(s):
        raise ValueError(f"trailing input at position {pos} in {text!r}")
    return result
