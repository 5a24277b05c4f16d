"""Exact Laurent polynomials in x1..x6, y1..y6 with integer coefficients.

Exponent vectors are 12-tuples (x's first, then y's) at the API boundary.
Internally each monomial is packed into one Python int holding the exponents as
biased fixed-width fields, most significant first.  Multiplying two monomials
is then one integer addition, and integer order agrees with lex order on the
exponent vectors.  Coefficients are Python ints, so they never overflow.
"""

from __future__ import annotations

import heapq
import re
from collections.abc import Iterable, Mapping

NVARS = 12
VAR_NAMES = tuple([f"x{i}" for i in range(1, 7)] + [f"y{i}" for i in range(1, 7)])
_VAR_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}

Monomial = tuple  # 12 signed exponents

ONE_MONO: Monomial = (0,) * NVARS

_BITS = 24
_BIAS = 1 << (_BITS - 1)
_FIELD = (1 << _BITS) - 1
_SHIFTS = tuple(_BITS * (NVARS - 1 - i) for i in range(NVARS))
_ZERO = sum(_BIAS << s for s in _SHIFTS)  # packed form of the unit monomial
_Y_MASK = sum(_FIELD << s for s in _SHIFTS[6:])
_Y_ZERO = _ZERO & _Y_MASK


class NotDivisible(ArithmeticError):
    """Raised when an exact Laurent division has a nonzero remainder."""


class NonUnitIntoNegativeExponent(ValueError):
    """Raised when a non-monomial is substituted into a negative power."""


def pack(m: Monomial) -> int:
    if len(m) != NVARS:
        raise ValueError("monomial must have 12 exponents")
    out = 0
    for e in m:
        e = int(e)
        if not -_BIAS <= e < _BIAS:
            raise OverflowError(f"exponent {e} out of range")
        out = (out << _BITS) | (e + _BIAS)
    return out


def unpack(k: int) -> Monomial:
    return tuple(((k >> s) & _FIELD) - _BIAS for s in _SHIFTS)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def var_index(name: str) -> int:
    try:
        return _VAR_INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}") from None


class LaurentPoly:
    """Immutable Laurent polynomial; equality is structural on the term map."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict = {}
        if terms:
            for m, c in terms.items():
                if c:
                    k = pack(m)
                    s = clean.get(k, 0) + int(c)
                    if s:
                        clean[k] = s
                    else:
                        clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # packed keys, no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({_ZERO: int(c)}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        e = [0] * NVARS
        e[var_index(name)] = power
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | Monomial, coeff: int = 1) -> "LaurentPoly":
        if isinstance(exps, Mapping):
            e = [0] * NVARS
            for name, p in exps.items():
                e[var_index(name)] += p
            exps = tuple(e)
        return cls({tuple(exps): coeff})

    @classmethod
    def x(cls, i: int) -> "LaurentPoly":
        return cls.var(f"x{i}")

    @classmethod
    def y(cls, i: int) -> "LaurentPoly":
        return cls.var(f"y{i}")

    # -- basic protocol -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return {unpack(k): c for k, c in self._terms.items()}

    def items(self):
        return [(unpack(k), c) for k, c in self._terms.items()]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for +-(Laurent monomial), the units of the Laurent ring."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def sorted_terms(self) -> list:
        return [(unpack(k), c) for k, c in sorted(self._terms.items(), reverse=True)]

    def leading(self):
        k = max(self._terms)
        return unpack(k), self._terms[k]

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            shift = mb - _ZERO
            for ma, ca in a.items():
                m = ma + shift
                out[m] = get(m, 0) + ca * cb
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise NotDivisible("negative power of a non-unit")
            (m, c), = self._terms.items()
            return LaurentPoly({tuple(e * n for e in unpack(m)): c ** abs(n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def div_exact(self, den: "LaurentPoly") -> "LaurentPoly":
        return lp_div_exact(self, den)

    def __truediv__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return lp_div_exact(self, other)

    def substitute(self, assignment: Mapping[str, "LaurentPoly | int"]) -> "LaurentPoly":
        return lp_substitute(self, assignment)

    # -- inspection -----------------------------------------------------------
    def y_free_part(self) -> "LaurentPoly":
        """Terms with no y variable at all."""
        return LaurentPoly._raw({m: c for m, c in self._terms.items() if m & _Y_MASK == _Y_ZERO})

    def has_negative_y(self) -> bool:
        return any(e < 0 for m in self._terms for e in unpack(m)[6:])

    def denominator(self) -> Monomial:
        """Least monomial D with D * self a polynomial."""
        if not self._terms:
            return ONE_MONO
        monos = [unpack(m) for m in self._terms]
        return tuple(max(0, -min(m[v] for m in monos)) for v in range(NVARS))

    def coefficients(self) -> list:
        return [c for _, c in self.sorted_terms()]

    def evaluate(self, values: Mapping[str, int] | Iterable[int]):
        """Evaluate at exact values (ints or Fractions); used only for spot checks."""
        from fractions import Fraction

        if isinstance(values, Mapping):
            vals = [values.get(n, 1) for n in VAR_NAMES]
        else:
            vals = list(values)
        total = Fraction(0)
        for m, c in self.items():
            t = Fraction(c)
            for v, e in zip(vals, m):
                if e:
                    t *= Fraction(v) ** e
            total += t
        return total

    # -- text -----------------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def _format_mono(m: Monomial) -> str:
    parts = []
    for name, e in zip(VAR_NAMES, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    """Canonical rendering, terms in descending lex order of exponent vectors."""
    if not p:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        body = _format_mono(m)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


_FACTOR_RE = re.compile(r"^(?:(\d+)|([xy][1-6])(?:\^(-?\d+))?)$")


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly` (accepts any term order and spacing)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly()
    terms: dict = {}
    # split on +/- that are not part of an exponent
    tokens = re.split(r"(?<!\^)([+-])", s.replace(" ", ""))
    sign = 1
    for tok in tokens:
        if tok == "":
            continue
        if tok in "+-":
            sign = -1 if tok == "-" else 1
            continue
        coeff = sign
        exps = [0] * NVARS
        for factor in tok.split("*"):
            mt = _FACTOR_RE.match(factor)
            if not mt:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
            if mt.group(1) is not None:
                coeff *= int(mt.group(1))
            else:
                exps[var_index(mt.group(2))] += int(mt.group(3) or 1)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
        sign = 1
    return LaurentPoly(terms)


# -- module-level operations ----------------------------------------------------


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_div_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Quotient q with q * den == num, by leading-term elimination in lex order.

    Raises NotDivisible when no such Laurent polynomial exists.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    if not num:
        return LaurentPoly()
    dterms = den._terms
    if len(dterms) == 1:
        (dm, dc), = dterms.items()
        shift = _ZERO - dm
        out = {}
        for m, c in num._terms.items():
            q, r = divmod(c, dc)
            if r:
                raise NotDivisible(f"coefficient {c} not divisible by {dc}")
            out[m + shift] = q
        return LaurentPoly._raw(out)

    dlist = sorted(dterms.items(), reverse=True)
    dlead_m, dlead_c = dlist[0]
    dlow_m = dlist[-1][0]
    dshift = [(m - _ZERO, c) for m, c in dlist]
    # every quotient term lies between lt(num)/lt(den) and min(num)/min(den)
    floor = min(num._terms) - dlow_m + _ZERO
    rem = dict(num._terms)
    heap = [-m for m in rem]  # max-heap of candidate leading monomials, stale entries skipped
    heapq.heapify(heap)
    quot = {}
    while rem:
        lm = -heapq.heappop(heap)
        lc = rem.get(lm)
        if lc is None:
            continue
        qm = lm - dlead_m + _ZERO
        if qm < floor:
            raise NotDivisible("nonzero remainder")
        qc, r = divmod(lc, dlead_c)
        if r:
            raise NotDivisible("leading coefficient not divisible")
        quot[qm] = qc
        for s, c in dshift:
            t = qm + s
            old = rem.get(t)
            if old is None:
                rem[t] = -qc * c
                heapq.heappush(heap, -t)
            elif old == qc * c:
                del rem[t]
            else:
                rem[t] = old - qc * c
    return LaurentPoly._raw(quot)


def lp_substitute(p: LaurentPoly, assignment: Mapping[str, "LaurentPoly | int"]) -> LaurentPoly:
    """Simultaneously replace variables by Laurent polynomials.

    A variable appearing with a negative exponent may only be replaced by a
    unit (a signed monomial with coefficient +-1).
    """
    subs = {}
    for name, val in assignment.items():
        if isinstance(val, int):
            val = LaurentPoly.const(val)
        subs[var_index(name)] = val
    if not subs:
        return p
    cache: dict = {}

    def power(v: int, e: int) -> LaurentPoly:
        key = (v, e)
        if key not in cache:
            val = subs[v]
            if e < 0 and not val.is_unit():
                raise NonUnitIntoNegativeExponent(
                    f"{VAR_NAMES[v]} occurs with exponent {e} but is replaced by {val}"
                )
            cache[key] = val ** e
        return cache[key]

    total = LaurentPoly()
    for m, c in p.items():
        keep = tuple(0 if i in subs else e for i, e in enumerate(m))
        term = LaurentPoly({keep: c})
        for v in subs:
            if m[v]:
                term = term * power(v, m[v])
        total = total + term
    return total


def product(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for f in factors:
        out = out * f
    return out
