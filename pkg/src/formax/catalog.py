"""Named group constructors, group files, and the default verification corpus.

Constructor specs: ``sym(n)``, ``alt(n)``, ``cyclic(n)``, ``dihedral(2n)``
(parameter is the order), ``psl2(q)`` acting on the q+1 projective points,
``mathieu11``, and ``product(a, b)``.  ``n <= 12`` and prime powers
``q <= 32`` are supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .group import Group, GroupError, prime_factors
from .perm import Permutation, parse_perm

MAX_N = 12
MAX_Q = 32


class SpecError(GroupError):
    """Unsupported or malformed named-group spec."""


# ---------------------------------------------------------------------------
# small finite fields (for psl2)
# ---------------------------------------------------------------------------

_IRREDUCIBLE = {
    # q -> coefficients of a monic irreducible polynomial, low degree first,
    # omitting the leading 1 (so GF(4): x^2 + x + 1 -> (1, 1)).
    4: (1, 1),
    8: (1, 1, 0),
    9: (1, 0),
    16: (1, 1, 0, 0),
    25: (1, 1),
    27: (1, 2, 0),
    32: (1, 0, 1, 0, 0),
}


class _GF:
    """Arithmetic in GF(p^e) with elements encoded as base-p integers."""

    def __init__(self, q: int):
        ps = prime_factors(q)
        if len(ps) != 1:
            raise SpecError(f"{q} is not a prime power")
        self.q = q
        self.p = ps[0]
        self.e = 0
        n = q
        while n > 1:
            n //= self.p
            self.e += 1
        self.poly = _IRREDUCIBLE.get(q)
        if self.e > 1 and self.poly is None:
            raise SpecError(f"no field table for q={q}")

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds: list[int]) -> int:
        out = 0
        for d in reversed(ds):
            out = out * self.p + d
        return out

    def add(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        # reduce modulo the defining polynomial
        for k in range(len(prod) - 1, self.e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j, coeff in enumerate(self.poly):  # type: ignore[arg-type]
                    prod[k - self.e + j] = (prod[k - self.e + j] - c * coeff) % self.p
        return self._undigits(prod[: self.e])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        # q is tiny; a^(q-2) works everywhere
        out, base, k = 1, a, self.q - 2
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def primitive(self) -> int:
        for a in range(2, self.q):
            if self.element_order(a) == self.q - 1:
                return a
        raise SpecError(f"no primitive element found for q={self.q}")


def _psl2(q: int) -> Group:
    """PSL(2,q) acting on the projective line: infinity plus GF(q)."""
    if q < 2 or q > MAX_Q:
        raise SpecError(f"psl2({q}) out of supported range")
    f = _GF(q)
    # point 0 is infinity; point 1+a is the field element a
    n = q + 1

    def moebius(fun) -> Permutation:
        images = bytearray(n)
        inf_img = fun(None)
        images[0] = 0 if inf_img is None else 1 + inf_img
        for a in range(q):
            img = fun(a)
            images[1 + a] = 0 if img is None else 1 + img
        return Permutation(bytes(images))

    shift = moebius(lambda z: None if z is None else f.add(z, 1))
    # z -> -1/z, sending 0 <-> infinity
    def invneg(z):
        if z is None:
            return 0
        if z == 0:
            return None
        return f.neg(f.inv(z))

    flip = moebius(invneg)
    gens = [shift, flip]
    if q > 3:
        zeta = f.primitive()
        scale_by = f.mul(zeta, zeta) if q % 2 else zeta  # a square, so inside PSL
        if scale_by != 1:
            gens.append(moebius(lambda z: None if z is None else f.mul(scale_by, z)))
    g = Group(gens, name=f"psl2({q})")
    expected = q * (q * q - 1) // gcd(2, q - 1)
    if g.order != expected:
        raise SpecError(f"psl2({q}) construction gave order {g.order}, expected {expected}")
    return g


# ---------------------------------------------------------------------------
# the elementary families
# ---------------------------------------------------------------------------

def _sym(n: int) -> Group:
    if n < 1 or n > MAX_N:
        raise SpecError(f"sym({n}) out of supported range")
    if n == 1:
        return Group([Permutation.identity(1)], name="sym(1)")
    gens = [Permutation.from_cycles("(1 2)", n)]
    if n > 2:
        gens.append(Permutation(bytes(list(range(1, n)) + [0])))
    return Group(gens, name=f"sym({n})")


def _alt(n: int) -> Group:
    if n < 1 or n > MAX_N:
        raise SpecError(f"alt({n}) out of supported range")
    if n <= 2:
        return Group([Permutation.identity(max(n, 1))], name=f"alt({n})")
    if n == 3:
        return Group([Permutation.from_cycles("(1 2 3)")], name="alt(3)")
    three = Permutation.from_cycles("(1 2 3)", n)
    if n % 2:
        big = Permutation(bytes(list(range(1, n)) + [0]))  # the n-cycle, even
    else:
        big = Permutation(bytes([0] + list(range(2, n)) + [1]))  # (2 3 ... n)
    return Group([three, big], name=f"alt({n})")


def _cyclic(n: int) -> Group:
    if n < 1 or n > MAX_N:
        raise SpecError(f"cyclic({n}) out of supported range")
    if n == 1:
        return Group([Permutation.identity(1)], name="cyclic(1)")
    return Group([Permutation(bytes(list(range(1, n)) + [0]))], name=f"cyclic({n})")


def _dihedral(order: int) -> Group:
    if order % 2 or order < 2 or order > 2 * MAX_N:
        raise SpecError(f"dihedral({order}) needs an even order up to {2 * MAX_N}")
    n = order // 2
    if n == 1:
        return Group([Permutation.from_cycles("(1 2)")], name="dihedral(2)")
    if n == 2:
        return Group([parse_perm("(1 2)", 4), parse_perm("(3 4)", 4)], name="dihedral(4)")
    rot = Permutation(bytes(list(range(1, n)) + [0]))
    refl = Permutation(bytes([0] + list(range(n - 1, 0, -1))))
    return Group([rot, refl], name=f"dihedral({order})")


def _mathieu11() -> Group:
    a = parse_perm("(1 2 3 4 5 6 7 8 9 10 11)")
    b = parse_perm("(3 7 11 8)(4 10 5 6)", 11)
    g = Group([a, b], name="mathieu11")
    if g.order != 7920:
        raise SpecError(f"mathieu11 construction gave order {g.order}")
    return g


def _product(a: Group, b: Group, name: str) -> Group:
    n = a.degree + b.degree
    gens = []
    for g in a.generators:
        gens.append(Permutation(bytes(g) + bytes(range(a.degree, n))))
    for g in b.generators:
        gens.append(Permutation(bytes(range(a.degree)) + bytes(x + a.degree for x in g)))
    return Group(gens, name=name)


_SPEC_RE = re.compile(r"^([a-z0-9]+)\s*(?:\((.*)\))?$")


def named_group(spec: str) -> Group:
    """Build a group from a constructor spec such as ``sym(5)`` or ``mathieu11``."""
    spec = spec.strip()
    m = _SPEC_RE.match(spec)
    if not m:
        raise SpecError(f"cannot parse group spec {spec!r}")
    head, args = m.group(1), m.group(2)
    if head == "mathieu11":
        if args:
            raise SpecError("mathieu11 takes no arguments")
        return _mathieu11()
    if head == "product":
        if not args:
            raise SpecError("product needs two component specs")
        left, right = _split_product_args(args)
        return _product(named_group(left), named_group(right), name=f"product({left},{right})")
    if args is None or not args.strip():
        raise SpecError(f"{head} needs an argument")
    try:
        n = int(args)
    except ValueError:
        raise SpecError(f"bad numeric argument in {spec!r}") from None
    if head == "sym":
        return _sym(n)
    if head == "alt":
        return _alt(n)
    if head == "cyclic":
        return _cyclic(n)
    if head == "dihedral":
        return _dihedral(n)
    if head == "psl2":
        return _psl2(n)
    raise SpecError(f"unknown constructor {head!r}")


def _split_product_args(args: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(args):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return args[:i].strip(), args[i + 1:].strip()
    raise SpecError(f"product args {args!r} need a top-level comma")


# ---------------------------------------------------------------------------
# group files and corpus records
# ---------------------------------------------------------------------------

@dataclass
class GroupRecord:
    """One corpus entry: a named constructor or an explicit generator list."""

    name: str
    spec: str | None = None
    degree: int | None = None
    generator_text: list[str] = field(default_factory=list)
    expected_order: int | None = None
    tags: set[str] = field(default_factory=set)
    _group: Group | None = field(default=None, repr=False)

    def build(self) -> Group:
        if self._group is None:
            if self.spec is not None:
                g = named_group(self.spec)
            else:
                if not self.generator_text or self.degree is None:
                    raise SpecError(f"group record {self.name!r} lacks generators or degree")
                gens = [parse_perm(t, self.degree) for t in self.generator_text]
                gens = [Permutation(bytes(p) + bytes(range(len(p), self.degree))) for p in gens]
                g = Group(gens, name=self.name)
            if self.expected_order is not None and g.order != self.expected_order:
                raise SpecError(
                    f"group {self.name!r}: built order {g.order} != declared {self.expected_order}")
            g.name = self.name
            self._group = g
        return self._group


def parse_group_file(text: str, source: str = "<string>") -> GroupRecord:
    """Line-oriented group file: name / degree / gen (several) / order / tag."""
    rec = GroupRecord(name="")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        key = parts[0]
        value = parts[1].strip() if len(parts) > 1 else ""
        if key == "name":
            rec.name = value
        elif key == "degree":
            rec.degree = int(value)
        elif key == "gen":
            rec.generator_text.append(value)
        elif key == "order":
            rec.expected_order = int(value)
        elif key == "tag":
            rec.tags.add(value)
        else:
            raise SpecError(f"{source}:{lineno}: unknown directive {key!r}")
    if not rec.name:
        raise SpecError(f"{source}: group file lacks a name")
    return rec


def load_corpus_manifest(text: str, base_dir=None) -> list[GroupRecord]:
    """Manifest lines are constructor specs, or ``file <path>`` for group files."""
    from pathlib import Path

    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("file "):
            path = Path(line[5:].strip())
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            records.append(parse_group_file(path.read_text(), source=str(path)))
        else:
            records.append(GroupRecord(name=line, spec=line))
    return records


def default_corpus() -> list[GroupRecord]:
    """The built-in corpus: small symmetric-family groups, PSL(2,q), M11, products."""
    specs: list[str] = []
    specs += [f"sym({n})" for n in range(2, 9)]
    specs += [f"alt({n})" for n in range(3, 9)]
    specs += [f"cyclic({n})" for n in range(2, 9)]
    specs += [f"dihedral({2 * n})" for n in range(2, 9)]
    specs += [f"psl2({q})" for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)]
    specs += ["mathieu11"]
    specs += [
        "product(alt(5),cyclic(2))",
        "product(alt(5),cyclic(3))",
        "product(alt(5),cyclic(5))",
        "product(alt(5),sym(3))",
        "product(alt(5),dihedral(10))",
        "product(alt(5),alt(4))",
        "product(alt(5),sym(4))",
        "product(psl2(7),cyclic(2))",
        "product(psl2(7),sym(3))",
        "product(sym(4),sym(4))",
        "product(alt(4),alt(4))",
        "product(sym(3),sym(3))",
        "product(sym(4),cyclic(2))",
        "product(dihedral(10),cyclic(3))",
        "product(alt(4),cyclic(4))",
        "product(dihedral(8),dihedral(8))",
    ]
    return [GroupRecord(name=s, spec=s) for s in specs]
