"""Exact sparse bivariate and dense univariate polynomial algebra.

Coefficients are :class:`~newton_atlas.gaussian.GaussianRational` values.
The bivariate type :class:`SparsePolynomial` maps exponent pairs ``(l, m)``
to coefficients of ``z**l * w**m``; the univariate type
:class:`UnivariatePolynomial` stores a dense coefficient tuple, lowest degree
first.

Resultant convention
--------------------
``resultant(p, q)`` is the determinant of the Sylvester matrix whose first
``deg q`` rows carry shifted copies of ``p`` and whose last ``deg p`` rows
carry shifted copies of ``q``, each row listing coefficients from the highest
power down.  With this ordering ``Res(y - a, y - b) = a - b`` and
``Res(2z, 3w**2)`` with respect to ``w`` is ``4 z**2``.  Degrees are the
formal degrees in the eliminated variable, so the result specialises
correctly under evaluation of the other variable.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gaussian import ONE, ZERO, GaussianRational

Exponent = Tuple[int, int]


class PolynomialError(ValueError):
    """Raised for invalid polynomial operations (zero input, bad division)."""


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------


class UnivariatePolynomial:
    """Dense univariate polynomial over the Gaussian rationals.

    Parameters
    ----------
    coeffs : iterable
        Coefficients, lowest degree first.  Trailing zeros are stripped so the
        leading coefficient is nonzero unless the polynomial is zero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UnivariatePolynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "UnivariatePolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __eq__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePolynomial({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UnivariatePolynomial([x + b[i] if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self):
        return UnivariatePolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UnivariatePolynomial):
            c = GaussianRational.coerce(other)
            return UnivariatePolynomial([x * c for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UnivariatePolynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UnivariatePolynomial(out)

    __rmul__ = __mul__

    def divmod(self, other: "UnivariatePolynomial"):
        """Euclidean division ``self = q*other + r`` with ``deg r < deg other``."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UnivariatePolynomial(), self
        inv = other.leading().inverse()
        quo = [ZERO] * (dq + 1)
        n = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = rem[k + n - 1] * inv
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * y
        return UnivariatePolynomial(quo), UnivariatePolynomial(rem[: n - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial([c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UnivariatePolynomial":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UnivariatePolynomial([c * inv for c in self.coeffs])

    def __call__(self, x):
        """Exact Horner evaluation at a Gaussian rational."""
        acc = ZERO
        x = GaussianRational.coerce(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex(self) -> List[complex]:
        """Coefficients as Python complex floats, lowest degree first."""
        return [complex(c) for c in self.coeffs]

    def trailing_zero_order(self) -> int:
        """Multiplicity of the root ``0``."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def shift_down(self, k: int) -> "UnivariatePolynomial":
        """Divide by ``y**k`` (the caller guarantees exactness)."""
        return UnivariatePolynomial(self.coeffs[k:])


def univariate_gcd(p: UnivariatePolynomial, q: UnivariatePolynomial) -> UnivariatePolynomial:
    """Monic greatest common divisor over the Gaussian rationals.

    Raises
    ------
    PolynomialError
        If both inputs are zero.

    Examples
    --------
    >>> p = UnivariatePolynomial([1, 2, 1]); q = UnivariatePolynomial([2, 2])
    >>> univariate_gcd(p, q).coeffs == UnivariatePolynomial([1, 1]).coeffs
    True
    """
    if p.is_zero() and q.is_zero():
        raise PolynomialError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
        # keep the remainder sequence small
        b = b.monic()
    return a.monic()


def is_square_free(p: UnivariatePolynomial) -> bool:
    """True iff ``p`` has no repeated root, i.e. ``gcd(p, p')`` is constant.

    Raises
    ------
    PolynomialError
        If ``p`` is the zero polynomial.
    """
    if p.is_zero():
        raise PolynomialError("square-freeness of the zero polynomial is undefined")
    if p.degree <= 1:
        return True
    return univariate_gcd(p, p.derivative()).degree == 0


def square_free_part(p: UnivariatePolynomial) -> UnivariatePolynomial:
    """``p / gcd(p, p')`` made monic; the product of the distinct root factors."""
    if p.degree <= 0:
        return UnivariatePolynomial([1])
    g = univariate_gcd(p, p.derivative())
    return (p // g).monic()


def repeated_roots_factor(p: UnivariatePolynomial) -> UnivariatePolynomial:
    """``gcd(p, p')``: vanishes exactly at the repeated roots of ``p``."""
    return univariate_gcd(p, p.derivative())


def _det(matrix: List[List[GaussianRational]]) -> GaussianRational:
    """Exact determinant by Gaussian elimination over the field."""
    n = len(matrix)
    if n == 0:
        return ONE
    a = [row[:] for row in matrix]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                row_r, row_c = a[r], a[col]
                for k in range(col, n):
                    if row_c[k]:
                        row_r[k] = row_r[k] - factor * row_c[k]
    return det


def sylvester_matrix(p: Sequence, q: Sequence) -> List[list]:
    """Sylvester matrix of coefficient lists (lowest degree first).

    The formal degrees are ``len(p) - 1`` and ``len(q) - 1``; leading entries
    may be zero.  Rows of ``p`` come first.
    """
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def univariate_resultant(p: UnivariatePolynomial, q: UnivariatePolynomial) -> GaussianRational:
    """Resultant of two nonzero univariate polynomials (Sylvester convention).

    Examples
    --------
    >>> a, b = 3, 5
    >>> univariate_resultant(UnivariatePolynomial([-a, 1]), UnivariatePolynomial([-b, 1]))
    GaussianRational(-2, 0)
    """
    if p.is_zero() or q.is_zero():
        raise PolynomialError("resultant with a zero polynomial")
    if p.degree == 0 and q.degree == 0:
        raise PolynomialError("resultant of two constants is degenerate")
    return _det(sylvester_matrix(list(p.coeffs), list(q.coeffs)))


def discriminant_resultant(p: UnivariatePolynomial) -> GaussianRational:
    """``Res(p, p')``; equals the discriminant up to a nonzero factor."""
    if p.degree < 1:
        raise PolynomialError("discriminant needs degree >= 1")
    if p.degree == 1:
        return p.leading()
    return univariate_resultant(p, p.derivative())


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------


class SparsePolynomial:
    """Sparse polynomial in ``z`` and ``w`` with Gaussian-rational coefficients.

    Parameters
    ----------
    terms : mapping
        ``{(l, m): coefficient}``.  Zero coefficients are dropped; negative
        exponents are rejected.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, object]] = None):
        clean: Dict[Exponent, GaussianRational] = {}
        for (l, m), c in (terms or {}).items():
            if l < 0 or m < 0:
                raise PolynomialError(f"negative exponent in term ({l}, {m})")
            c = GaussianRational.coerce(c)
            if c:
                clean[(int(l), int(m))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePolynomial is immutable")

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "SparsePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def z(cls) -> "SparsePolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def w(cls) -> "SparsePolynomial":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, l: int, m: int, c=1) -> "SparsePolynomial":
        return cls({(l, m): c})

    # basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> List[Exponent]:
        return sorted(self.terms)

    def coefficient(self, l: int, m: int) -> GaussianRational:
        return self.terms.get((l, m), ZERO)

    def degree(self, variable: str) -> int:
        """Degree in ``'z'`` or ``'w'``; ``-1`` for the zero polynomial."""
        idx = _var_index(variable)
        return max((e[idx] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((l + m for l, m in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        from .parser import render

        return f"SparsePolynomial({render(self)!r})"

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            return other
        return SparsePolynomial.constant(GaussianRational.coerce(other))

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, ZERO) + c
        return SparsePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: Dict[Exponent, GaussianRational] = {}
        for (l1, m1), c1 in self.terms.items():
            for (l2, m2), c2 in o.terms.items():
                e = (l1 + l2, m1 + m2)
                out[e] = out.get(e, ZERO) + c1 * c2
        return SparsePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("polynomial powers need a non-negative integer exponent")
        result = SparsePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "SparsePolynomial":
        c = GaussianRational.coerce(c)
        return SparsePolynomial({e: v * c for e, v in self.terms.items()})

    def shift(self, a: int, b: int) -> "SparsePolynomial":
        """Multiply by the monomial ``z**a * w**b`` (exponents may be negative
        provided the result stays a polynomial)."""
        return SparsePolynomial({(l + a, m + b): c for (l, m), c in self.terms.items()})

    def swap_variables(self) -> "SparsePolynomial":
        return SparsePolynomial({(m, l): c for (l, m), c in self.terms.items()})

    def restrict(self, exponents: Iterable[Exponent]) -> "SparsePolynomial":
        keep = set(exponents)
        return SparsePolynomial({e: c for e, c in self.terms.items() if e in keep})

    def monomial_content(self) -> Exponent:
        """Largest ``(a, b)`` such that ``z**a w**b`` divides the polynomial."""
        if not self.terms:
            return (0, 0)
        return (min(l for l, _ in self.terms), min(m for _, m in self.terms))

    def strip_monomial(self) -> "SparsePolynomial":
        a, b = self.monomial_content()
        return self.shift(-a, -b)

    # views --------------------------------------------------------------

    def coefficients_in(self, variable: str) -> List[UnivariatePolynomial]:
        """Coefficients with respect to ``variable`` as univariate polynomials in
        the other variable, lowest power first."""
        idx = _var_index(variable)
        deg = self.degree(variable)
        buckets: List[Dict[int, GaussianRational]] = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            buckets[e[idx]][e[1 - idx]] = c
        out = []
        for b in buckets:
            top = max(b, default=-1)
            out.append(UnivariatePolynomial([b.get(k, ZERO) for k in range(top + 1)]))
        return out

    @classmethod
    def from_coefficients_in(cls, variable: str, coeffs: Sequence[UnivariatePolynomial]) -> "SparsePolynomial":
        idx = _var_index(variable)
        terms = {}
        for k, u in enumerate(coeffs):
            for j, c in enumerate(u.coeffs):
                if c:
                    terms[(k, j) if idx == 0 else (j, k)] = c
        return cls(terms)

    def to_univariate(self, variable: str) -> UnivariatePolynomial:
        """View a polynomial in one variable as a :class:`UnivariatePolynomial`.

        Raises
        ------
        PolynomialError
            If the polynomial involves the other variable.
        """
        idx = _var_index(variable)
        if any(e[1 - idx] for e in self.terms):
            raise PolynomialError(f"polynomial is not univariate in {variable}")
        deg = self.degree(variable)
        return UnivariatePolynomial([self.terms.get((k, 0) if idx == 0 else (0, k), ZERO)
                                     for k in range(deg + 1)])

    @classmethod
    def from_univariate(cls, p: UnivariatePolynomial, variable: str) -> "SparsePolynomial":
        idx = _var_index(variable)
        return cls({((k, 0) if idx == 0 else (0, k)): c for k, c in enumerate(p.coeffs)})

    def substitute(self, variable: str, value) -> UnivariatePolynomial:
        """Exact specialisation of one variable; returns a polynomial in the other."""
        idx = _var_index(variable)
        value = GaussianRational.coerce(value)
        other = "w" if idx == 0 else "z"
        coeffs = self.coefficients_in(other)
        return UnivariatePolynomial([c(value) if not c.is_zero() else ZERO for c in coeffs])

    def exact_value(self, z, w) -> GaussianRational:
        z = GaussianRational.coerce(z)
        w = GaussianRational.coerce(w)
        return sum((c * z ** l * w ** m for (l, m), c in self.terms.items()), ZERO)


def _var_index(variable: str) -> int:
    if variable == "z":
        return 0
    if variable == "w":
        return 1
    raise ValueError(f"unknown variable {variable!r}; expected 'z' or 'w'")


def partial_derivative(f: SparsePolynomial, variable: str) -> SparsePolynomial:
    """Exact formal partial derivative with respect to ``'z'`` or ``'w'``.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> partial_derivative(parse_polynomial("z^2+w^3"), "w") == parse_polynomial("3*w^2")
    True
    """
    idx = _var_index(variable)
    out = {}
    for (l, m), c in f.terms.items():
        k = (l, m)[idx]
        if k:
            out[(l - 1, m) if idx == 0 else (l, m - 1)] = c * k
    return SparsePolynomial(out)


# floating evaluation -----------------------------------------------------


def _horner_table(f: SparsePolynomial, convert: Callable) -> List[Tuple[int, List]]:
    """Dense per-``w``-power coefficient rows for two-level Horner evaluation."""
    rows: Dict[int, Dict[int, object]] = {}
    for (l, m), c in f.terms.items():
        rows.setdefault(m, {})[l] = convert(c)
    table = []
    for m in sorted(rows, reverse=True):
        r = rows[m]
        top = max(r)
        table.append((m, [r.get(k, 0) for k in range(top + 1)]))
    return table


def _horner_eval(table, z, w, zero):
    acc = zero
    prev_m = None
    for m, row in table:
        inner = zero
        for c in reversed(row):
            inner = inner * z + c
        if prev_m is None:
            acc = inner
        else:
            acc = acc * w ** (prev_m - m) + inner
        prev_m = m
    if prev_m:
        acc = acc * w ** prev_m
    return acc


def evaluate(f: SparsePolynomial, z: complex, w: complex) -> complex:
    """Floating-point value of ``f`` at ``(z, w)``.

    Coefficients are converted to complex floats and the polynomial is
    evaluated by Horner's rule in ``z`` inside Horner's rule in ``w``.
    Overflow yields an infinite result instead of raising.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> evaluate(parse_polynomial("z*w"), 2, 3 + 4j)
    (6+8j)
    """
    if f.is_zero():
        return 0j
    table = _horner_table(f, complex)
    try:
        value = complex(_horner_eval(table, complex(z), complex(w), 0j))
    except OverflowError:
        return complex(math.inf, math.inf)
    if not cmath.isfinite(value):
        return complex(math.inf, math.inf)
    return value


class CompiledPolynomial:
    """Reusable evaluator of ``f`` for complex or mpmath arguments.

    The mpmath path converts coefficients with exact rational parts at the
    working precision current at call time.
    """

    def __init__(self, f: SparsePolynomial):
        self.poly = f
        self._float = _horner_table(f, complex)
        self._terms = [(l, m, c) for (l, m), c in f.terms.items()]

    def __call__(self, z, w):
        return _horner_eval(self._float, z, w, 0j)

    def mp(self, z, w):
        import mpmath

        table = _horner_table(self.poly, lambda c: mpmath.mpc(mpmath.mpf(c.re), mpmath.mpf(c.im)))
        return _horner_eval(table, z, w, mpmath.mpc(0))


# division, content and gcd in Q(i)[z][w] --------------------------------


def exact_divide(f: SparsePolynomial, g: SparsePolynomial) -> SparsePolynomial:
    """Quotient ``f / g`` when the division is exact.

    Uses multivariate division with the lexicographic order ``w > z``.

    Raises
    ------
    PolynomialError
        If ``g`` is zero or does not divide ``f``.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    key = lambda e: (e[1], e[0])  # noqa: E731
    lead_g = max(g.terms, key=key)
    inv = g.terms[lead_g].inverse()
    rem = dict(f.terms)
    quo: Dict[Exponent, GaussianRational] = {}
    while rem:
        lead = max(rem, key=key)
        dl, dm = lead[0] - lead_g[0], lead[1] - lead_g[1]
        if dl < 0 or dm < 0:
            raise PolynomialError("polynomial division is not exact")
        c = rem[lead] * inv
        quo[(dl, dm)] = c
        for (l, m), gc in g.terms.items():
            e = (l + dl, m + dm)
            v = rem.get(e, ZERO) - c * gc
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return SparsePolynomial(quo)


def _content_w(f: SparsePolynomial) -> UnivariatePolynomial:
    """Monic gcd of the ``w``-coefficients (polynomials in ``z``)."""
    g = UnivariatePolynomial()
    for c in f.coefficients_in("w"):
        if not c.is_zero():
            g = c.monic() if g.is_zero() else univariate_gcd(g, c)
            if g.degree == 0:
                break
    return g


def _pseudo_remainder(a: List[UnivariatePolynomial], b: List[UnivariatePolynomial]) -> List[UnivariatePolynomial]:
    """Pseudo-remainder of dense ``w``-coefficient lists over ``Q(i)[z]``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[j + shift] = r[j + shift] - bc * lr
        while r and r[-1].is_zero():
            r.pop()
    return r


def _primitive_list(a: List[UnivariatePolynomial]) -> List[UnivariatePolynomial]:
    g = UnivariatePolynomial()
    for c in a:
        if not c.is_zero():
            g = c.monic() if g.is_zero() else univariate_gcd(g, c)
    if g.is_zero() or g.degree == 0:
        lead = a[-1].leading() if a else ONE
        return [c * lead.inverse() for c in a]
    out = [c // g for c in a]
    lead = out[-1].leading()
    return [c * lead.inverse() for c in out]


def bivariate_gcd(f: SparsePolynomial, g: SparsePolynomial) -> SparsePolynomial:
    """Greatest common divisor in ``Q(i)[z, w]``, normalised as follows.

    The result is primitive in ``w`` times the monic content gcd, with the
    ``w``-leading coefficient of the primitive part having leading
    ``z``-coefficient one.  Computed by the primitive polynomial remainder
    sequence.
    """
    if f.is_zero():
        if g.is_zero():
            raise PolynomialError("gcd of two zero polynomials is undefined")
        return bivariate_gcd(g, g)
    if g.is_zero():
        return bivariate_gcd(f, f)
    cf, cg = _content_w(f), _content_w(g)
    content = univariate_gcd(cf, cg)
    a = _primitive_list([c // cf for c in f.coefficients_in("w")])
    b = _primitive_list([c // cg for c in g.coefficients_in("w")])
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _pseudo_remainder(a, b)
        if not r:
            a = b
            b = []
            break
        a, b = b, _primitive_list(r)
    if len(b) == 1:
        # b is a nonzero constant in w: the primitive gcd is 1
        prim = [UnivariatePolynomial([1])]
    else:
        prim = a
    result = SparsePolynomial.from_coefficients_in("w", prim)
    return result * SparsePolynomial.from_univariate(content, "z")


# resultants ---------------------------------------------------------------


def _interpolate(xs: Sequence[int], ys: Sequence[GaussianRational]) -> UnivariatePolynomial:
    """Exact Newton interpolation through ``(xs[k], ys[k])``."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = UnivariatePolynomial([dd[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UnivariatePolynomial([-xs[i], 1]) + UnivariatePolynomial([dd[i]])
    return poly


def resultant(p, q, eliminate: str = "w"):
    """Resultant of two polynomials with respect to one variable.

    Parameters
    ----------
    p, q : SparsePolynomial or UnivariatePolynomial
        Inputs.  For univariate inputs ``eliminate`` is ignored and a
        :class:`GaussianRational` is returned.
    eliminate : {'z', 'w'}
        Variable to eliminate from bivariate inputs.

    Returns
    -------
    SparsePolynomial
        A polynomial in the remaining variable (exact).

    Raises
    ------
    PolynomialError
        If an input is zero, or both inputs are free of the eliminated
        variable.

    Notes
    -----
    The determinant is computed by evaluating the remaining variable at
    integer nodes and interpolating.  The number of nodes exceeds the degree
    bound ``deg q * deg_other(p) + deg p * deg_other(q)``, so the result is
    exact.
    """
    if isinstance(p, UnivariatePolynomial):
        return univariate_resultant(p, q)
    if p.is_zero() or q.is_zero():
        raise PolynomialError("resultant with a zero polynomial")
    other = "z" if eliminate == "w" else "w"
    m, n = p.degree(eliminate), q.degree(eliminate)
    if m == 0 and n == 0:
        raise PolynomialError("both polynomials are free of the eliminated variable")
    pc = p.coefficients_in(eliminate)
    qc = q.coefficients_in(eliminate)
    bound = n * max(p.degree(other), 0) + m * max(q.degree(other), 0)
    xs = list(range(bound + 1))
    ys = []
    for x in xs:
        pv = [c(x) for c in pc]
        qv = [c(x) for c in qc]
        ys.append(_det(sylvester_matrix(pv, qv)))
    return SparsePolynomial.from_univariate(_interpolate(xs, ys), other)


def discriminant_in(f: SparsePolynomial, variable: str) -> SparsePolynomial:
    """``Res_variable(f, df/dvariable)`` as a polynomial in the other variable."""
    return resultant(f, partial_derivative(f, variable), eliminate=variable)


def complex_roots_of(p: UnivariatePolynomial) -> List[complex]:
    """Convenience: numeric roots of an exact polynomial (see :mod:`roots`)."""
    from .roots import polynomial_roots

    if p.degree < 1:
        return []
    return polynomial_roots(p.to_complex())


__all__ = [
    "CompiledPolynomial",
    "PolynomialError",
    "SparsePolynomial",
    "UnivariatePolynomial",
    "bivariate_gcd",
    "discriminant_in",
    "discriminant_resultant",
    "evaluate",
    "exact_divide",
    "is_square_free",
    "partial_derivative",
    "repeated_roots_factor",
    "resultant",
    "square_free_part",
    "sylvester_matrix",
    "univariate_gcd",
    "univariate_resultant",
]
