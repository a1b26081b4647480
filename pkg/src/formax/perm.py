"""Permutations of {1..n} backed by immutable byte strings.

A permutation of degree n is stored as a ``bytes`` object of length n whose
i-th byte is the image of point i (0-based internally).  Composition is
left to right everywhere in this package: ``(a * b)`` applies ``a`` first,
then ``b``, which is exactly ``a.translate(b)`` and therefore runs at C
speed.  Text I/O uses 1-based cycle notation such as ``"(1 2 3)(4 5)"``;
the identity is written ``"()"``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

MAX_DEGREE = 256

_FULL_RANGE = bytes(range(256))


def as_table(b: bytes) -> bytes:
    """Pad a permutation to a 256-byte translation table (identity beyond its degree)."""
    return b + _FULL_RANGE[len(b):]


class DegreeMismatch(ValueError):
    """Operands act on different point sets."""


class PermParseError(ValueError):
    """Cycle-notation text could not be parsed."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class Permutation(bytes):
    """A bijection of {0..degree-1}; byte i holds the image of point i."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] | bytes) -> "Permutation":
        p = super().__new__(cls, bytes(images))
        n = len(p)
        if n > MAX_DEGREE:
            raise ValueError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
        if n and (len(set(p)) != n or max(p) != n - 1):
            raise ValueError("images do not form a bijection of 0..n-1")
        return p

    # -- construction ----------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return bytes.__new__(cls, bytes(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int = 0) -> "Permutation":
        """Parse 1-based cycle notation, e.g. ``"(1 2 3)(4 5)"``.

        Points not mentioned are fixed.  ``degree`` pads with extra fixed
        points; otherwise the degree is the largest point mentioned.
        """
        cycles = _parse_cycle_text(text)
        n = degree
        for cyc in cycles:
            n = max(n, max(cyc))
        images = list(range(n))
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise PermParseError(f"repeated point in cycle {cyc}")
            for a, b in zip(cyc, cyc[1:]):
                images[a - 1] = b - 1
            images[cyc[-1] - 1] = cyc[0] - 1
        seen = set()
        flat = [pt for cyc in cycles for pt in cyc]
        for pt in flat:
            if pt in seen:
                raise PermParseError(f"point {pt} appears in two cycles")
            seen.add(pt)
        return cls(images)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def apply(self, point: int) -> int:
        """Image of a 0-based point."""
        return self[point]

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self) if i != j]

    def order(self) -> int:
        n = 1
        for cyc in self.cycles():
            n = _lcm(n, len(cyc))
        return n

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other: "Permutation") -> "Permutation":  # type: ignore[override]
        if len(self) != len(other):
            raise DegreeMismatch(f"degree {len(self)} != {len(other)}")
        return bytes.__new__(Permutation, self.translate(as_table(other)))

    def inverse(self) -> "Permutation":
        inv = bytearray(len(self))
        for i, j in enumerate(self):
            inv[j] = i
        return bytes.__new__(Permutation, bytes(inv))

    def __pow__(self, k: int) -> "Permutation":  # type: ignore[override]
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugated_by(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    # -- formatting ---------------------------------------------------------

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles as 0-based tuples, each starting at its least point."""
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            j = self[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def cycle_text(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(pt + 1) for pt in cyc) + ")" for cyc in cycs)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_text()}]"

    def __str__(self) -> str:
        return self.cycle_text()


_CYCLE_RE = re.compile(r"\(([0-9,\s]*)\)")


def _parse_cycle_text(text: str) -> list[list[int]]:
    stripped = text.strip()
    if not stripped:
        raise PermParseError("empty permutation text")
    cycles = []
    pos = 0
    for match in _CYCLE_RE.finditer(stripped):
        between = stripped[pos:match.start()]
        if between.strip():
            raise PermParseError(f"unexpected text {between.strip()!r}", pos)
        body = match.group(1).strip()
        if body:
            points = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
            if any(pt < 1 for pt in points):
                raise PermParseError("points are 1-based and must be positive", match.start())
            if len(points) > 1:
                cycles.append(points)
        pos = match.end()
    if stripped[pos:].strip():
        raise PermParseError(f"unexpected trailing text {stripped[pos:].strip()!r}", pos)
    if pos == 0:
        raise PermParseError("no cycles found", 0)
    return cycles


def parse_perm(text: str, degree: int = 0) -> Permutation:
    """Module-level alias for :meth:`Permutation.from_cycles`."""
    return Permutation.from_cycles(text, degree)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def compose(*perms: Permutation) -> Permutation:
    """Left-to-right product of one or more permutations."""
    it: Iterator[Permutation] = iter(perms)
    out = next(it)
    for p in it:
        out = out * p
    return out
