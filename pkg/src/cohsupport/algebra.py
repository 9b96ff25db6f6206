"""Prime fields and weighted-graded multivariate polynomials.

A :class:`PolyRing` fixes the characteristic, the variable names, their
weights and the monomial order (weighted degree-reverse-lexicographic).
:class:`Poly` values are immutable and always kept in canonical form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Exps = Tuple[int, ...]


class InhomogeneousError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@lru_cache(maxsize=None)
def _inverse_table(p: int) -> Tuple[int, ...]:
    if p > 1 << 16:
        return ()
    return (0,) + tuple(pow(a, p - 2, p) for a in range(1, p))


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    table = _inverse_table(p)
    return table[a] if table else pow(a, p - 2, p)


@dataclass(frozen=True)
class PolyRing:
    characteristic: int
    variables: Tuple[str, ...]
    weights: Tuple[int, ...] = ()
    order: str = "degrevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * len(self.variables))
        object.__setattr__(self, "weights", tuple(self.weights))
        if not is_prime(self.characteristic):
            raise ValueError("characteristic %d is not prime" % self.characteristic)
        if self.characteristic >= 1 << 31:
            raise ValueError("characteristic must be below 2**31")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        if len(self.weights) != len(self.variables) or min(self.weights, default=1) < 1:
            raise ValueError("one positive weight per variable required")
        if self.order != "degrevlex":
            raise ValueError("unsupported monomial order %r" % self.order)

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def wdeg(self, exps: Exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def sort_key(self, exps: Exps):
        """Larger key means larger monomial."""
        return (self.wdeg(exps), tuple(-e for e in reversed(exps)))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Poly":
        return Poly(self, {tuple(exps): coeff})

    def monomials_of_degree(self, d: int) -> Tuple[Exps, ...]:
        """All exponent vectors of weighted degree d, in decreasing order."""
        return _monomials(self.weights, d)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def with_characteristic(self, p: int) -> "PolyRing":
        return PolyRing(p, self.variables, self.weights, self.order)


@lru_cache(maxsize=None)
def _monomials(weights: Tuple[int, ...], d: int) -> Tuple[Exps, ...]:
    out = []

    def rec(i, left, acc):
        if i == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // weights[i], -1, -1):
            acc.append(e)
            rec(i + 1, left - e * weights[i], acc)
            acc.pop()

    if d >= 0:
        rec(0, d, [])
    key = lambda m: tuple(-e for e in reversed(m))
    return tuple(sorted(out, key=key, reverse=True))


def monomial_compare(ring: PolyRing, m1: Exps, m2: Exps) -> int:
    """Return 1, 0 or -1 as m1 is greater, equal or smaller than m2."""
    k1, k2 = ring.sort_key(m1), ring.sort_key(m2)
    return (k1 > k2) - (k1 < k2)


def divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Poly:
    """Immutable polynomial: a map from exponent tuples to nonzero residues."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exps, int] = None, _clean: bool = False):
        self.ring = ring
        if _clean:
            self._terms = dict(terms)
        else:
            p = ring.p
            n = ring.nvars
            clean: Dict[Exps, int] = {}
            for e, c in (terms or {}).items():
                if len(e) != n:
                    raise ValueError("exponent vector %r has wrong length for %d variables" % (e, n))
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent in %r" % (e,))
                c %= p
                if c:
                    clean[tuple(e)] = c
            self._terms = clean
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, pairs: Iterable[Tuple[Sequence[int], int]]) -> "Poly":
        """Normalize a raw list of (exponents, coefficient) pairs."""
        acc: Dict[Exps, int] = {}
        n = ring.nvars
        for e, c in pairs:
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent vector %r has wrong length for %d variables" % (e, n))
            acc[e] = acc.get(e, 0) + c
        return cls(ring, acc)

    # -- inspection ------------------------------------------------------
    @property
    def terms(self) -> Tuple[Tuple[Exps, int], ...]:
        if self._sorted is None:
            key = self.ring.sort_key
            self._sorted = tuple(sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True))
        return self._sorted

    def term_dict(self) -> Dict[Exps, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[Tuple[Exps, int]]:
        return iter(self.terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def coeff(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def lead(self) -> Tuple[Exps, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def degree(self):
        """Common weighted degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        degs = {self.ring.wdeg(e) for e in self._terms}
        if len(degs) != 1:
            raise InhomogeneousError("%s is not homogeneous" % self)
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(e) for e in self._terms}) <= 1

    def max_degree(self) -> int:
        return max((self.ring.wdeg(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((self.ring.wdeg(e) for e in self._terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self._terms.items() if self.ring.wdeg(e) == d}, _clean=True)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(int(other))
        if other.ring != self.ring:
            raise ValueError("ring mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.p
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {e: p - c for e, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: v * c % p for e, v in self._terms.items()}, _clean=True)

    def mul_monomial(self, exps: Exps, c: int = 1) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): v * c % p
                                for e, v in self._terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        p = self.ring.p
        out: Dict[Exps, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return Poly(self.ring, {e: c for e, c in out.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "Poly":
        if not self._terms:
            return self
        return self.scale(inv_mod(self.lead()[1], self.ring.p))

    def mod_maximal(self) -> int:
        """Image in the residue field (the constant term)."""
        return self.constant_term()

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, p) % p
            total += v
        return total % p

    # -- comparison / printing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


def format_monomial(ring: PolyRing, exps: Exps) -> str:
    parts = []
    for name, e in zip(ring.variables, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Print with coefficients in the symmetric range (-p/2, p/2]."""
    if f.is_zero():
        return "0"
    p = f.ring.p
    out = []
    for exps, c in f.terms:
        s = c if c <= p // 2 else c - p
        mono = format_monomial(f.ring, exps)
        sign = "-" if s < 0 else "+"
        a = abs(s)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = "%d*%s" % (a, mono)
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += " %s %s" % (sign, body)
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


class PolyParseError(ValueError):
    def __init__(self, msg, column=None):
        super().__init__(msg if column is None else "%s (column %d)" % (msg, column + 1))
        self.column = column


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse +, -, *, ^ (or **), parentheses, integers and variable names."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError("unexpected character %r" % text[pos:pos + 1].strip(), pos)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        tokens.append(("num", int(num), start) if num else ("name", name, start) if name else ("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take():
        t = tokens[idx[0]]
        idx[0] += 1
        return t

    def expr():
        sign = 1
        if peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[:2] in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while True:
            t = peek()
            if t[:2] == ("op", "*"):
                take()
                acc = acc * power()
            elif t[0] in ("num", "name") or t[:2] == ("op", "("):
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        if peek()[:2] in (("op", "^"), ("op", "**")):
            take()
            t = take()
            if t[0] != "num":
                raise PolyParseError("exponent must be a non-negative integer", t[2])
            return base ** t[1]
        return base

    def atom():
        t = take()
        if t[0] == "num":
            return ring.const(t[1])
        if t[0] == "name":
            if t[1] not in ring.variables:
                raise PolyParseError("unknown variable %r" % t[1], t[2])
            return ring.gen(t[1])
        if t[:2] == ("op", "("):
            v = expr()
            close = take()
            if close[:2] != ("op", ")"):
                raise PolyParseError("expected ')'", close[2])
            return v
        if t[0] == "end":
            raise PolyParseError("unexpected end of input", t[2])
        raise PolyParseError("unexpected %r" % t[1], t[2])

    value = expr()
    t = peek()
    if t[0] != "end":
        raise PolyParseError("unexpected %r" % (t[1],), t[2])
    return value


def operator_ring(n: int, p: int) -> PolyRing:
    """The ring k[chi1..chin] with every variable in degree 2."""
    return PolyRing(p, tuple("chi%d" % (i + 1) for i in range(n)), (2,) * n)
