"""Sets as increasing integer tuples, the shift order, ij-compression and the
generation relation.

Elements are 1-based. A set is a strictly increasing tuple of positive ints;
its bitmask puts element ``k`` on bit ``k - 1``. The engine never handles a
ground set larger than ``MAX_N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_N = 64

RSet = tuple[int, ...]


@dataclass(frozen=True)
class Params:
    """Ground set size ``n`` and uniform set size ``r``."""

    n: int
    r: int

    def __post_init__(self):
        if not (1 <= self.r <= self.n <= MAX_N):
            raise ValueError(f"need 1 <= r <= n <= {MAX_N}, got n={self.n}, r={self.r}")

    @property
    def wide(self) -> bool:
        return self.n >= 2 * self.r

    def require_wide(self) -> None:
        if not self.wide:
            raise ValueError(f"need n >= 2r, got n={self.n}, r={self.r}")


def rset(elements: Iterable[int], n: int | None = None) -> RSet:
    """Validate ``elements`` and return them as a sorted tuple."""
    out = tuple(sorted(elements))
    if not out:
        raise ValueError("empty set")
    if len(set(out)) != len(out):
        raise ValueError(f"repeated element in {out}")
    if out[0] < 1:
        raise ValueError(f"elements must be >= 1: {out}")
    top = MAX_N if n is None else n
    if out[-1] > top:
        raise ValueError(f"element {out[-1]} exceeds {top}")
    return out


def generator(elements: Iterable[int], r: int) -> RSet:
    """A generator is a set inside [1, 2r] with at most r elements."""
    g = rset(elements, 2 * r)
    if len(g) > r:
        raise ValueError(f"generator {g} longer than r={r}")
    return g


def to_mask(a: Iterable[int]) -> int:
    m = 0
    for x in a:
        m |= 1 << (x - 1)
    return m


def from_mask(mask: int) -> RSet:
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def compress_set(a: RSet, i: int, j: int, n: int | None = None) -> RSet:
    """Replace ``j`` by ``i`` when ``j`` is in ``a`` and ``i`` is not."""
    top = MAX_N if n is None else n
    if not (1 <= i < j <= top):
        raise ValueError(f"need 1 <= i < j <= {top}, got i={i}, j={j}")
    if j in a and i not in a:
        return tuple(sorted(i if x == j else x for x in a))
    return a


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Shift order: ``a_k <= b_k`` at every position."""
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def generates(g: Sequence[int], a: Sequence[int]) -> bool:
    """True iff ``a`` is generated by ``g``.

    Positions of ``g`` beyond its length count as +infinity, so only the
    first ``len(g)`` entries of ``a`` are compared.
    """
    if len(g) > len(a):
        return False
    return all(x <= y for x, y in zip(a, g))


def complement(a: RSet, within: int) -> RSet:
    if a and a[-1] > within:
        raise ValueError(f"{a} is not inside [1, {within}]")
    s = set(a)
    return tuple(x for x in range(1, within + 1) if x not in s)


def format_set(a: Iterable[int]) -> str:
    return ",".join(str(x) for x in a)


def parse_set(text: str, n: int | None = None) -> RSet:
    """Parse a literal like ``"2,5,8"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty set literal")
    try:
        items = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed set literal {text!r}") from None
    if any(b <= a for a, b in zip(items, items[1:])):
        raise ValueError(f"set literal must be strictly increasing: {text!r}")
    return rset(items, n)


def format_family(sets: Iterable[Iterable[int]]) -> str:
    return ";".join(format_set(a) for a in sets)


def parse_family(text: str, n: int | None = None) -> list[RSet]:
    text = text.strip()
    if not text:
        return []
    return [parse_set(tok, n) for tok in text.split(";")]
