"""Exact polynomial arithmetic over Python integers.

Three value types live here:

* :class:`UniPoly` -- dense univariate polynomial in ``x``.
* :class:`BiPoly` -- sparse bivariate polynomial in ``x`` and ``y``.
* :class:`TriPoly` -- sparse trivariate polynomial in ``x``, ``y`` and ``z``.

All of them are immutable and hashable, so they can be used as dictionary
keys (the distinguishing search groups graphs by polynomial).  Coefficients
are plain ``int`` so nothing ever overflows.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .errors import DivisibilityError, ParseError

NEG_INF = float("-inf")

#: Multiplication switches to dense row convolution above this fill ratio.
DENSE_THRESHOLD = 0.25


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, int):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly((1,)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def eval(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def __str__(self):
        return _format_terms(((i,), c) for i, c in enumerate(self.coeffs) if c) if self.coeffs else "0"


def _format_monomial(exps: tuple[int, ...], names: str) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_terms(items: Iterable[tuple[tuple[int, ...], int]], names: str = "x") -> str:
    out = []
    for exps, c in items:
        mono = _format_monomial(exps, names)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(out) if out else "0"


class _SparsePoly:
    """Sparse multivariate polynomial keyed by exponent tuples."""

    __slots__ = ("_terms", "_hash")
    NVARS = 0
    NAMES = ""

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        if terms:
            self._terms = {k: int(v) for k, v in terms.items() if v}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict):
        # terms must already be free of zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int):
        return cls._wrap({(0,) * cls.NVARS: int(c)} if c else {})

    @classmethod
    def monomial(cls, *exps: int, coeff: int = 1):
        if len(exps) != cls.NVARS:
            raise ValueError(f"expected {cls.NVARS} exponents")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        return cls._wrap({tuple(exps): int(coeff)} if coeff else {})

    @classmethod
    def var(cls, name: str):
        exps = [0] * cls.NVARS
        exps[cls.NAMES.index(name)] = 1
        return cls._wrap({tuple(exps): 1})

    # --- container protocol ---------------------------------------------

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms sorted by exponent tuple."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], int]]:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.const(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def degree(self, var: int) -> int | float:
        if not self._terms:
            return NEG_INF
        return max(k[var] for k in self._terms)

    # --- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if type(other) is type(self):
            return other
        if isinstance(other, int):
            return self.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int):
        c = int(c)
        if not c:
            return self._wrap({})
        return self._wrap({k: v * c for k, v in self._terms.items()})

    def _mul_sparse(self, other):
        out: dict = {}
        get = out.get
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = get(k, 0) + ca * cb
        return self._wrap({k: v for k, v in out.items() if v})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return self._wrap({})
        return self._mul_sparse(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.const(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, *exps: int):
        """Multiply by the monomial with the given exponents."""
        return self._wrap(
            {tuple(a + b for a, b in zip(k, exps)): c for k, c in self._terms.items()}
        )

    def exact_div_monomial(self, *exps: int):
        """Divide by a monomial, requiring every term to be divisible."""
        out = {}
        for k, c in self._terms.items():
            q = tuple(a - b for a, b in zip(k, exps))
            if min(q, default=0) < 0:
                raise DivisibilityError(
                    f"term {_format_monomial(k, self.NAMES) or '1'} is not divisible by "
                    f"{_format_monomial(tuple(exps), self.NAMES) or '1'}"
                )
            out[q] = c
        return self._wrap(out)

    def coeff(self, *exps: int) -> int:
        return self._terms.get(tuple(exps), 0)

    def substitute(self, *values):
        """Substitute ring elements (polynomials or ints) for every variable."""
        if len(values) != self.NVARS:
            raise ValueError(f"expected {self.NVARS} values")
        power_cache: list[dict[int, object]] = [{0: 1} for _ in values]

        def power(var, e):
            cache = power_cache[var]
            if e not in cache:
                cache[e] = values[var] ** e
            return cache[e]

        total = 0
        for exps, c in self._terms.items():
            term = c
            for var, e in enumerate(exps):
                if e:
                    term = power(var, e) * term
            total = total + term
        return total

    def eval(self, *point) -> Fraction:
        return Fraction(self.substitute(*(_as_fraction(p) for p in point)))

    # --- rendering ---------------------------------------------------------

    def __str__(self):
        return _format_terms(self.items(), self.NAMES)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"

    def to_dict(self) -> dict:
        return {
            "terms": [[*k, str(c)] for k, c in self.items()],
        }


class BiPoly(_SparsePoly):
    """Bivariate polynomial ``sum c[i, j] x**i y**j`` with integer coefficients."""

    __slots__ = ()
    NVARS = 2
    NAMES = "xy"

    @classmethod
    def x(cls) -> "BiPoly":
        return cls._wrap({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls._wrap({(0, 1): 1})

    @classmethod
    def from_univariate_x(cls, p: UniPoly) -> "BiPoly":
        return cls._wrap({(i, 0): c for i, c in enumerate(p.coeffs) if c})

    @property
    def deg_x(self) -> int | float:
        return self.degree(0)

    @property
    def deg_y(self) -> int | float:
        return self.degree(1)

    def coeff_of_y(self, j: int) -> UniPoly:
        """``[y^j] p`` as a polynomial in ``x``."""
        row = {i: c for (i, jj), c in self._terms.items() if jj == j}
        if not row:
            return UniPoly()
        out = [0] * (max(row) + 1)
        for i, c in row.items():
            out[i] = c
        return UniPoly(out)

    def coeff_of_x(self, i: int) -> UniPoly:
        """``[x^i] p`` as a polynomial in ``y``."""
        col = {j: c for (ii, j), c in self._terms.items() if ii == i}
        if not col:
            return UniPoly()
        out = [0] * (max(col) + 1)
        for j, c in col.items():
            out[j] = c
        return UniPoly(out)

    def _mul_sparse(self, other):
        a, b = self._terms, other._terms
        ax, ay = self.deg_x, self.deg_y
        bx, by = other.deg_x, other.deg_y
        fill_a = len(a) / ((ax + 1) * (ay + 1))
        fill_b = len(b) / ((bx + 1) * (by + 1))
        if min(fill_a, fill_b) <= DENSE_THRESHOLD:
            return super()._mul_sparse(other)
        # dense: rows indexed by x-power, each row a list over y-powers
        rows_a = [[0] * (ay + 1) for _ in range(ax + 1)]
        for (i, j), c in a.items():
            rows_a[i][j] = c
        rows_b = [[0] * (by + 1) for _ in range(bx + 1)]
        for (i, j), c in b.items():
            rows_b[i][j] = c
        out = [[0] * (ay + by + 1) for _ in range(ax + bx + 1)]
        for i, ra in enumerate(rows_a):
            for jj, ca in enumerate(ra):
                if not ca:
                    continue
                for k, rb in enumerate(rows_b):
                    target = out[i + k]
                    for l, cb in enumerate(rb):
                        if cb:
                            target[jj + l] += ca * cb
        return self._wrap(
            {(i, j): c for i, row in enumerate(out) for j, c in enumerate(row) if c}
        )

    def eval(self, x, y) -> Fraction:
        """Exact evaluation, Horner in ``y`` inside Horner in ``x``."""
        x, y = _as_fraction(x), _as_fraction(y)
        if not self._terms:
            return Fraction(0)
        acc = Fraction(0)
        for i in range(self.deg_x, -1, -1):
            row = self.coeff_of_x(i)
            inner = Fraction(0)
            for c in reversed(row.coeffs):
                inner = inner * y + c
            acc = acc * x + inner
        return acc

    def eval_float(self, x: float, y: float) -> float:
        total = 0.0
        for (i, j), c in self._terms.items():
            total += c * (x ** i) * (y ** j)
        return total

    def to_dict(self) -> dict:
        degx = self.deg_x
        return {
            "degx": None if degx == NEG_INF else degx,
            "terms": [[i, j, str(c)] for (i, j), c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "BiPoly":
        try:
            terms = {}
            for i, j, c in data["terms"]:
                i, j = int(i), int(j)
                if i < 0 or j < 0 or (i, j) in terms:
                    raise ParseError(f"bad or duplicate exponent pair ({i}, {j})")
                terms[(i, j)] = int(c)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        poly = cls(terms)
        degx = data.get("degx")
        if degx is not None and poly and degx != poly.deg_x:
            raise ParseError(f"declared degx {degx} does not match terms ({poly.deg_x})")
        return poly

    @classmethod
    def from_json(cls, text: str) -> "BiPoly":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


class TriPoly(_SparsePoly):
    """Trivariate polynomial in ``x``, ``y``, ``z``."""

    __slots__ = ()
    NVARS = 3
    NAMES = "xyz"


X = BiPoly.x()
Y = BiPoly.y()
ONE = BiPoly.const(1)
