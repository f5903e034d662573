"""Exact sparse Laurent polynomials with integer-polynomial coefficients.

Every object in this package lives in a ring of the form

    Z[lam, mu, y1..y8, x0][z1^{+-1}, ..., zd^{+-1}]

so coefficients are integer polynomials in a fixed global list of parameters.
Internally a :class:`LaurentPoly` is one flat ``dict`` whose keys concatenate the
z exponent vector with the parameter exponent vector; this keeps multiplication
and division as plain tuple arithmetic.  The public view (:attr:`LaurentPoly.terms`)
groups those keys back into ``{z_exponent: ParamPoly}``.

No floating point appears anywhere; all coefficients are Python ints.
"""

from __future__ import annotations

import re
from operator import add, sub
from typing import Iterable, Iterator, Mapping, Sequence, Union

PARAMS: tuple[str, ...] = ("lam", "mu") + tuple(f"y{i}" for i in range(1, 9)) + ("x0",)
NP = len(PARAMS)
_PARAM_INDEX = {name: i for i, name in enumerate(PARAMS)}
_PZERO: tuple[int, ...] = (0,) * NP


def _vadd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(add, a, b))


def _vsub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(sub, a, b))


# ---------------------------------------------------------------------------
# Parameter polynomials
# ---------------------------------------------------------------------------


class ParamPoly:
    """An element of Z[lam, mu, y1..y8, x0], stored as ``{exponents: int}``."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple[int, ...], int] | int = 0) -> None:
        if isinstance(terms, int):
            self._t = {_PZERO: terms} if terms else {}
        else:
            self._t = {tuple(k): int(v) for k, v in terms.items() if v}

    @classmethod
    def param(cls, name: str) -> ParamPoly:
        if name not in _PARAM_INDEX:
            raise KeyError(f"unknown parameter {name!r}")
        e = [0] * NP
        e[_PARAM_INDEX[name]] = 1
        return cls({tuple(e): 1})

    @classmethod
    def coerce(cls, value: ParamPoly | int) -> ParamPoly:
        return value if isinstance(value, ParamPoly) else cls(int(value))

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(k == _PZERO for k in self._t)

    def constant_value(self) -> int:
        """The integer value of a constant; raises if parameters occur."""
        if not self.is_constant():
            raise ValueError(f"coefficient {self.to_text()} is not an integer")
        return self._t.get(_PZERO, 0)

    def used_params(self) -> set[str]:
        return {PARAMS[i] for k in self._t for i, e in enumerate(k) if e}

    def __add__(self, other: ParamPoly | int) -> ParamPoly:
        other = ParamPoly.coerce(other)
        out = dict(self._t)
        for k, v in other._t.items():
            out[k] = out.get(k, 0) + v
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self) -> ParamPoly:
        return ParamPoly({k: -v for k, v in self._t.items()})

    def __sub__(self, other: ParamPoly | int) -> ParamPoly:
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other: ParamPoly | int) -> ParamPoly:
        return ParamPoly.coerce(other) - self

    def __mul__(self, other: ParamPoly | int) -> ParamPoly:
        other = ParamPoly.coerce(other)
        out: dict[tuple[int, ...], int] = {}
        for k1, v1 in self._t.items():
            for k2, v2 in other._t.items():
                k = _vadd(k1, k2)
                out[k] = out.get(k, 0) + v1 * v2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ParamPoly:
        if n < 0:
            raise ValueError("negative powers of parameter polynomials are not defined")
        result = ParamPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ParamPoly(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __bool__(self) -> bool:
        return bool(self._t)

    def evaluate(self, assignment: Mapping[str, ParamPoly | int]) -> ParamPoly:
        """Substitute some parameters; the others are left symbolic."""
        out = ParamPoly(0)
        for k, v in self._t.items():
            term = ParamPoly(v)
            rest = list(k)
            for name, value in assignment.items():
                i = _PARAM_INDEX[name]
                if rest[i]:
                    term = term * ParamPoly.coerce(value) ** rest[i]
                    rest[i] = 0
            out = out + term * ParamPoly({tuple(rest): 1})
        return out

    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for k in sorted(self._t, reverse=True):
            v = self._t[k]
            mono = _mono_text(k, PARAMS)
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return _join_signed(parts)

    @classmethod
    def parse(cls, text: str) -> ParamPoly:
        poly = LaurentPoly.parse(text, 0)
        return poly.coeff(())

    def __repr__(self) -> str:
        return f"ParamPoly({self.to_text()!r})"


def _mono_text(exps: Sequence[int], names: Sequence[str]) -> str:
    out = []
    for name, e in zip(names, exps):
        if e == 1:
            out.append(name)
        elif e:
            out.append(f"{name}^{e}")
    return "*".join(out)


def _join_signed(parts: list[str]) -> str:
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

Coefficient = Union[ParamPoly, int]


class LaurentPoly:
    """A sparse Laurent polynomial in ``dim`` variables z1..zd.

    Instances are immutable by convention; every operation returns a new object.
    """

    __slots__ = ("dim", "_t")

    def __init__(self, dim: int, flat: dict[tuple[int, ...], int] | None = None) -> None:
        self.dim = dim
        self._t = {k: v for k, v in flat.items() if v} if flat else {}

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping[Sequence[int], Coefficient]) -> LaurentPoly:
        flat: dict[tuple[int, ...], int] = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise ValueError(f"exponent {exp} does not have length {dim}")
            for pk, v in ParamPoly.coerce(c)._t.items():
                key = exp + pk
                flat[key] = flat.get(key, 0) + v
        return cls(dim, flat)

    @classmethod
    def constant(cls, dim: int, c: Coefficient = 1) -> LaurentPoly:
        return cls.from_terms(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Coefficient = 1) -> LaurentPoly:
        return cls.from_terms(len(exp), {tuple(exp): c})

    @classmethod
    def var(cls, i: int, dim: int) -> LaurentPoly:
        """The coordinate z_{i+1} (0-based index ``i``)."""
        e = [0] * dim
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def param(cls, name: str, dim: int) -> LaurentPoly:
        return cls.constant(dim, ParamPoly.param(name))

    @classmethod
    def coerce(cls, value: LaurentPoly | Coefficient, dim: int) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            if value.dim != dim:
                raise ValueError(f"dimension mismatch: {value.dim} != {dim}")
            return value
        return cls.constant(dim, value)

    # -- views -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], ParamPoly]:
        grouped: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        d = self.dim
        for k, v in self._t.items():
            grouped.setdefault(k[:d], {})[k[d:]] = v
        return {z: ParamPoly(p) for z, p in grouped.items()}

    def coeff(self, exp: Sequence[int]) -> ParamPoly:
        exp = tuple(exp)
        d = self.dim
        return ParamPoly({k[d:]: v for k, v in self._t.items() if k[:d] == exp})

    def support(self) -> set[tuple[int, ...]]:
        d = self.dim
        return {k[:d] for k in self._t}

    def constant_term(self) -> ParamPoly:
        return self.coeff((0,) * self.dim)

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self.support()) == 1

    def is_unit(self) -> bool:
        """True for monomials with coefficient +1 or -1, the units of the ring."""
        if len(self._t) != 1:
            return False
        (k, v), = self._t.items()
        return abs(v) == 1 and k[self.dim:] == _PZERO

    def used_params(self) -> set[str]:
        d = self.dim
        return {PARAMS[i] for k in self._t for i, e in enumerate(k[d:]) if e}

    def to_int_dict(self) -> dict[tuple[int, ...], int]:
        """``{z_exponent: int}``; raises if any coefficient involves parameters."""
        d = self.dim
        out: dict[tuple[int, ...], int] = {}
        for k, v in self._t.items():
            if any(k[d:]):
                raise ValueError("polynomial has parameter-dependent coefficients")
            out[k[:d]] = v
        return out

    def __len__(self) -> int:
        return len(self.support())

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], ParamPoly]]:
        return iter(sorted(self.terms.items()))

    # -- arithmetic ------------------------------------------------------

    def _other(self, other: LaurentPoly | Coefficient) -> LaurentPoly:
        return LaurentPoly.coerce(other, self.dim)

    def __add__(self, other: LaurentPoly | Coefficient) -> LaurentPoly:
        other = self._other(other)
        out = dict(self._t)
        for k, v in other._t.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.dim, {k: -v for k, v in self._t.items()})

    def __sub__(self, other: LaurentPoly | Coefficient) -> LaurentPoly:
        return self + (-self._other(other))

    def __rsub__(self, other: LaurentPoly | Coefficient) -> LaurentPoly:
        return self._other(other) - self

    def __mul__(self, other: LaurentPoly | Coefficient) -> LaurentPoly:
        other = self._other(other)
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out: dict[tuple[int, ...], int] = {}
        get = out.get
        for kb, vb in b.items():
            for ka, va in a.items():
                k = tuple(map(add, ka, kb))
                out[k] = get(k, 0) + va * vb
        return LaurentPoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = LaurentPoly.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def unit_inverse(self) -> LaurentPoly:
        if not self.is_unit():
            raise ValueError(f"{self.to_text()} is not a unit of the Laurent ring")
        (k, v), = self._t.items()
        d = self.dim
        return LaurentPoly(d, {tuple(-e for e in k[:d]) + _PZERO: v})

    def shift(self, exp: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial z^exp."""
        pad = tuple(exp) + _PZERO
        return LaurentPoly(self.dim, {_vadd(k, pad): v for k, v in self._t.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.dim, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._t.items())))

    def __bool__(self) -> bool:
        return bool(self._t)

    # -- evaluation ------------------------------------------------------

    def substitute(self, images: Sequence[LaurentPoly | LaurentFraction]) -> LaurentFraction:
        return lp_substitute(self, images)

    def eval_params(self, assignment: Mapping[str, ParamPoly | int], partial: bool = False) -> LaurentPoly:
        return param_eval(self, assignment, partial)

    def with_dim(self, dim: int, positions: Sequence[int]) -> LaurentPoly:
        """Re-embed into ``dim`` variables, sending z_{i+1} to z_{positions[i]+1}."""
        d = self.dim
        out: dict[tuple[int, ...], int] = {}
        for k, v in self._t.items():
            e = [0] * dim
            for i, p in enumerate(positions):
                e[p] += k[i]
            key = tuple(e) + k[d:]
            out[key] = out.get(key, 0) + v
        return LaurentPoly(dim, out)

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        names = [f"z{i + 1}" for i in range(self.dim)]
        terms = self.terms
        if not terms:
            return "0"
        parts = []
        for exp in sorted(terms, reverse=True):
            c = terms[exp]
            mono = _mono_text(exp, names)
            ctext = c.to_text()
            if not mono:
                parts.append(ctext if len(c._t) == 1 else f"({ctext})")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif len(c._t) == 1:
                parts.append(f"{ctext}*{mono}")
            else:
                parts.append(f"({ctext})*{mono}")
        return _join_signed(parts)

    def to_json(self) -> dict:
        terms = self.terms
        return {
            "dim": self.dim,
            "terms": [{"exp": list(e), "coeff": terms[e].to_text()} for e in sorted(terms)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LaurentPoly:
        dim = int(data["dim"])
        return cls.from_terms(dim, {tuple(t["exp"]): ParamPoly.parse(str(t["coeff"])) for t in data["terms"]})

    @classmethod
    def parse(cls, text: str, dim: int) -> LaurentPoly:
        return _Parser(text, dim).parse()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dim}, {self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def _min_corner(t: Mapping[tuple[int, ...], int]) -> tuple[int, ...]:
    keys = iter(t)
    lo = list(next(keys))
    for k in keys:
        for i, e in enumerate(k):
            if e < lo[i]:
                lo[i] = e
    return tuple(lo)


def _max_corner(t: Iterable[tuple[int, ...]]) -> tuple[int, ...]:
    keys = iter(t)
    hi = list(next(keys))
    for k in keys:
        for i, e in enumerate(k):
            if e > hi[i]:
                hi[i] = e
    return tuple(hi)


def lp_exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly | None:
    """Return ``num / den`` if the quotient is a Laurent polynomial, else ``None``.

    Both operands are shifted into the polynomial ring (parameters included) and
    divided by leading-term elimination under lexicographic order.  Any
    non-integral leading quotient or out-of-range exponent proves that no exact
    quotient exists.
    """
    if num.dim != den.dim:
        raise ValueError("dimension mismatch in division")
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if num.is_zero():
        return LaurentPoly(num.dim)
    d = num.dim
    lo_n, lo_d = _min_corner(num._t), _min_corner(den._t)
    offset = _vsub(lo_n, lo_d)
    if any(e < 0 for e in offset[d:]):
        return None
    if len(den._t) == 1:
        (kd, vd), = den._t.items()
        out = {}
        for k, v in num._t.items():
            q, r = divmod(v, vd)
            if r:
                return None
            out[_vsub(k, kd)] = q
        return LaurentPoly(d, out)
    nt = {_vsub(k, lo_n): v for k, v in num._t.items()}
    dt = {_vsub(k, lo_d): v for k, v in den._t.items()}
    bound = _vsub(_max_corner(nt), _max_corner(dt))
    if any(b < 0 for b in bound):
        return None
    lead = max(dt)
    lead_c = dt[lead]
    rest = [(k, v) for k, v in dt.items() if k != lead]
    quot: dict[tuple[int, ...], int] = {}
    rem = nt
    while rem:
        top = max(rem)
        e = _vsub(top, lead)
        if any(x < 0 or x > b for x, b in zip(e, bound)):
            return None
        c, r = divmod(rem[top], lead_c)
        if r:
            return None
        quot[e] = c
        del rem[top]
        for k, v in rest:
            kk = tuple(map(add, k, e))
            nv = rem.get(kk, 0) - c * v
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
    return LaurentPoly(d, {_vadd(k, offset): v for k, v in quot.items()})


def param_eval(p: LaurentPoly, assignment: Mapping[str, ParamPoly | int], partial: bool = False) -> LaurentPoly:
    """Substitute values for parameters.

    Unless ``partial`` is set, every parameter occurring in ``p`` must be assigned.
    """
    if not partial:
        missing = p.used_params() - set(assignment)
        if missing:
            raise KeyError(f"unassigned parameters: {sorted(missing)}")
    d = p.dim
    out: dict[tuple[int, ...], int] = {}
    idx = {_PARAM_INDEX[name]: ParamPoly.coerce(v) for name, v in assignment.items()}
    cache: dict[tuple[int, int], ParamPoly] = {}
    for k, v in p._t.items():
        z, pk = k[:d], list(k[d:])
        coeff = ParamPoly(v)
        for i, value in idx.items():
            if pk[i]:
                key = (i, pk[i])
                if key not in cache:
                    cache[key] = value ** pk[i]
                coeff = coeff * cache[key]
                pk[i] = 0
        base = tuple(pk)
        for ck, cv in coeff._t.items():
            kk = z + _vadd(base, ck)
            out[kk] = out.get(kk, 0) + cv
    return LaurentPoly(d, out)


# ---------------------------------------------------------------------------
# Fractions with factored denominators
# ---------------------------------------------------------------------------


class LaurentFraction:
    """``num / prod(f**k for f, k in den)`` with the denominator kept factored.

    Unit monomials are always absorbed into the numerator, so the denominator
    only contains genuine polynomial factors.  Equality is decided by
    cross-multiplication.
    """

    __slots__ = ("num", "den")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, num: LaurentPoly, den: Iterable[tuple[LaurentPoly, int]] = ()) -> None:
        merged: dict[LaurentPoly, int] = {}
        for f, k in den:
            if f.dim != num.dim:
                raise ValueError("dimension mismatch in fraction")
            if f.is_zero():
                raise ZeroDivisionError("zero factor in denominator")
            if k < 0:
                raise ValueError("denominator powers must be non-negative")
            if k == 0:
                continue
            if f.is_unit():
                num = num * f.unit_inverse() ** k
                continue
            merged[f] = merged.get(f, 0) + k
        self.num = num
        self.den = tuple(sorted(merged.items(), key=lambda fk: fk[0].to_text()))

    @classmethod
    def of(cls, value: LaurentPoly | LaurentFraction) -> LaurentFraction:
        return value if isinstance(value, LaurentFraction) else cls(value)

    @property
    def dim(self) -> int:
        return self.num.dim

    def denominator(self) -> LaurentPoly:
        out = LaurentPoly.constant(self.dim, 1)
        for f, k in self.den:
            out = out * f ** k
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_laurent(self) -> LaurentPoly | None:
        """The Laurent polynomial equal to this fraction, or ``None``."""
        result: LaurentPoly | None = self.num
        for f, k in self.den:
            for _ in range(k):
                result = lp_exact_div(result, f)
                if result is None:
                    return None
        return result

    def _coerce(self, other: LaurentFraction | LaurentPoly | Coefficient) -> LaurentFraction:
        if isinstance(other, LaurentFraction):
            return other
        return LaurentFraction(LaurentPoly.coerce(other, self.dim))

    def __mul__(self, other: LaurentFraction | LaurentPoly | Coefficient) -> LaurentFraction:
        other = self._coerce(other)
        return LaurentFraction(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def inverse(self) -> LaurentFraction:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return LaurentFraction(self.denominator(), [(self.num, 1)])

    def __truediv__(self, other: LaurentFraction | LaurentPoly | Coefficient) -> LaurentFraction:
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int) -> LaurentFraction:
        if n < 0:
            return self.inverse() ** (-n)
        return LaurentFraction(self.num ** n, [(f, k * n) for f, k in self.den])

    def __neg__(self) -> LaurentFraction:
        return LaurentFraction(-self.num, self.den)

    def __add__(self, other: LaurentFraction | LaurentPoly | Coefficient) -> LaurentFraction:
        other = self._coerce(other)
        mine, theirs = dict(self.den), dict(other.den)
        common = {f: max(mine.get(f, 0), theirs.get(f, 0)) for f in set(mine) | set(theirs)}

        def lift(frac: LaurentFraction, have: dict[LaurentPoly, int]) -> LaurentPoly:
            out = frac.num
            for f, k in common.items():
                if k > have.get(f, 0):
                    out = out * f ** (k - have.get(f, 0))
            return out

        return LaurentFraction(lift(self, mine) + lift(other, theirs), common.items())

    __radd__ = __add__

    def __sub__(self, other: LaurentFraction | LaurentPoly | Coefficient) -> LaurentFraction:
        return self + (-self._coerce(other))

    def __rsub__(self, other: LaurentFraction | LaurentPoly | Coefficient) -> LaurentFraction:
        return self._coerce(other) - self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (LaurentPoly, int)):
            other = self._coerce(other)
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return self.num * other.denominator() == other.num * self.denominator()

    def eval_params(self, assignment: Mapping[str, ParamPoly | int], partial: bool = False) -> LaurentFraction:
        return LaurentFraction(param_eval(self.num, assignment, partial),
                               [(param_eval(f, assignment, partial), k) for f, k in self.den])

    def to_text(self) -> str:
        if not self.den:
            return self.num.to_text()
        den = " * ".join(f"({f.to_text()})" + (f"^{k}" if k > 1 else "") for f, k in self.den)
        return f"({self.num.to_text()}) / ({den})"

    def __repr__(self) -> str:
        return f"LaurentFraction({self.to_text()!r})"


def lp_substitute(p: LaurentPoly, images: Sequence[LaurentPoly | LaurentFraction]) -> LaurentFraction:
    """Substitute ``z_i -> images[i]`` into ``p``; parameters are left untouched.

    Negative exponents require the corresponding image to be non-zero.  The
    result has a common denominator built from the image denominators and, for
    negative exponents, the image numerators.
    """
    if len(images) != p.dim:
        raise ValueError(f"expected {p.dim} images, got {len(images)}")
    fr = [LaurentFraction.of(im) for im in images]
    if not fr:
        return LaurentFraction(p)
    dim = fr[0].dim
    if any(f.dim != dim for f in fr):
        raise ValueError("images live in different rings")
    d = p.dim
    terms = p._t
    pos = [max((max(k[i], 0) for k in terms), default=0) for i in range(d)]
    neg = [max((max(-k[i], 0) for k in terms), default=0) for i in range(d)]
    for i in range(d):
        if neg[i] and fr[i].num.is_zero():
            raise ZeroDivisionError(f"image of z{i + 1} is zero but appears with a negative power")
    nums = [f.num for f in fr]
    dens = [f.denominator() for f in fr]
    pow_cache: dict[tuple[str, int, int], LaurentPoly] = {}

    def pw(kind: str, i: int, e: int) -> LaurentPoly:
        key = (kind, i, e)
        if key not in pow_cache:
            base = nums[i] if kind == "n" else dens[i]
            pow_cache[key] = base ** e
        return pow_cache[key]

    total = LaurentPoly(dim)
    for k, v in terms.items():
        coeff = LaurentPoly(dim, {(0,) * dim + k[d:]: v})
        term = coeff
        for i in range(d):
            e = k[i]
            if e >= 0:
                n_exp, d_exp = e + neg[i], pos[i] - e
            else:
                n_exp, d_exp = neg[i] + e, pos[i] - e
            if n_exp:
                term = term * pw("n", i, n_exp)
            if d_exp:
                term = term * pw("d", i, d_exp)
        total = total + term
    den: list[tuple[LaurentPoly, int]] = []
    for i in range(d):
        den.extend((f, k * pos[i]) for f, k in fr[i].den)
        if neg[i]:
            den.append((nums[i], neg[i]))
    return LaurentFraction(total, den)


def substitute_laurent(p: LaurentPoly, images: Sequence[LaurentPoly | LaurentFraction]) -> LaurentPoly:
    """Like :func:`lp_substitute` but insists that the result is Laurent."""
    result = lp_substitute(p, images).to_laurent()
    if result is None:
        raise ValueError("substitution does not produce a Laurent polynomial")
    return result


# ---------------------------------------------------------------------------
# Text parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    """Recursive-descent parser for ``+ - * ^ ( )`` expressions over z1..zd and parameters."""

    def __init__(self, text: str, dim: int) -> None:
        self.dim = dim
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif name is not None:
                self.tokens.append(("name", name))
            elif sym is not None:
                self.tokens.append(("sym", sym))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            raise ValueError("empty expression")
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self) -> LaurentPoly:
        value = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.unary()
        while self.peek() == ("sym", "*"):
            self.take()
            value = value * self.unary()
        return value

    def unary(self) -> LaurentPoly:
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            sign = 1
            if self.peek() == ("sym", "-"):
                self.take()
                sign = -1
            kind, tok = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            return base ** (sign * int(tok))
        return base

    def atom(self) -> LaurentPoly:
        kind, tok = self.take()
        if kind == "num":
            return LaurentPoly.constant(self.dim, int(tok))
        if kind == "name":
            m = re.fullmatch(r"z(\d+)", tok)
            if m:
                i = int(m.group(1))
                if not 1 <= i <= self.dim:
                    raise ValueError(f"variable {tok} out of range for dimension {self.dim}")
                return LaurentPoly.var(i - 1, self.dim)
            if tok in _PARAM_INDEX:
                return LaurentPoly.param(tok, self.dim)
            raise ValueError(f"unknown symbol {tok!r}")
        if tok == "(":
            value = self.expr()
            if self.take() != ("sym", ")"):
                raise ValueError("missing closing parenthesis")
            return value
        raise ValueError(f"unexpected token {tok!r}")
