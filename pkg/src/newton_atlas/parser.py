"""Text syntax for bivariate polynomials.

Grammar (whitespace is insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' nat)?
    base    := 'z' | 'w' | literal | '(' expr ')'
    literal := rational | rational? 'i'
    rational:= digits ('/' digits | '.' digits)?

A parenthesised Gaussian literal such as ``(1+2i)`` is an ordinary
parenthesised expression.  Implicit multiplication is rejected (``2z`` is an
error, write ``2*z``), with one convenience: a run of variable letters such
as ``zw`` is read as the product ``z*w``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .gaussian import GaussianRational, format_scalar
from .poly import SparsePolynomial


class ParseError(ValueError):
    """Polynomial text could not be parsed.

    Attributes
    ----------
    offset : int
        Byte offset (in the UTF-8 encoding of the input) of the offending
        character.
    kind : str
        One of ``'syntax'``, ``'negative-exponent'`` or ``'literal'``.
    """

    def __init__(self, message: str, text: str, index: int, kind: str = "syntax"):
        self.offset = len(text[:index].encode("utf-8"))
        self.kind = kind
        super().__init__(f"{message} at byte {self.offset}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, kind="syntax", index=None):
        raise ParseError(message, self.text, self.pos if index is None else index, kind)

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> SparsePolynomial:
        if not self.peek():
            self.error("empty input")
        result = self.expr()
        if self.peek():
            self.error(f"unexpected character {self.peek()!r}")
        return result

    def expr(self) -> SparsePolynomial:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-") and self.peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> SparsePolynomial:
        acc = self.factor()
        while True:
            if self.take("*"):
                acc = acc * self.factor()
            elif self.pos < len(self.text) and self.text[self.pos] in "zw":
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> SparsePolynomial:
        base = self.base()
        if self.take("^"):
            self.skip()
            start = self.pos
            if self.peek() == "-":
                self.error("negative exponent", kind="negative-exponent")
            digits = self._digits()
            if not digits:
                self.error("expected a natural-number exponent", index=start)
            return base ** int(digits)
        return base

    def _digits(self) -> str:
        t = self.text
        start = self.pos
        while self.pos < len(t) and t[self.pos].isdigit():
            self.pos += 1
        return t[start:self.pos]

    def base(self) -> SparsePolynomial:
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return inner
        if ch.isdigit() or ch == "." or ch == "i":
            return self.literal()
        if ch.isalpha() or ch == "_":
            return self.variables()
        self.error(f"unexpected character {ch!r}")

    def variables(self) -> SparsePolynomial:
        t = self.text
        start = self.pos
        end = start
        while end < len(t) and t[end].isascii() and (t[end].isalnum() or t[end] == "_"):
            end += 1
        word = t[start:end]
        if not word or any(c not in "zw" for c in word):
            self.error(f"unknown identifier {word!r} is not a Gaussian-rational literal",
                       kind="literal", index=start)
        # one letter at a time; term() multiplies juxtaposed letters
        self.pos = start + 1
        return SparsePolynomial.z() if word[0] == "z" else SparsePolynomial.w()

    def literal(self) -> SparsePolynomial:
        t = self.text
        start = self.pos
        value = Fraction(1)
        if t[self.pos] != "i":
            whole = self._digits()
            if self.pos < len(t) and t[self.pos] == ".":
                self.pos += 1
                frac = self._digits()
                if not whole and not frac:
                    self.error("malformed number", kind="literal", index=start)
                value = Fraction(f"{whole or '0'}.{frac or '0'}")
            elif self.pos < len(t) and t[self.pos] == "/":
                self.pos += 1
                den = self._digits()
                if not den or int(den) == 0:
                    self.error("malformed rational denominator", kind="literal", index=start)
                value = Fraction(int(whole), int(den))
            else:
                value = Fraction(int(whole))
        imag = False
        if self.pos < len(t) and t[self.pos] == "i":
            self.pos += 1
            imag = True
        if self.pos < len(t) and (t[self.pos].isalnum() or t[self.pos] in "._"):
            if t[self.pos] in "zw" and not (t[self.pos + 1:self.pos + 2].isalnum()):
                self.error("implicit multiplication is not allowed; use '*'")
            self.error("not a Gaussian-rational literal", kind="literal", index=start)
        c = GaussianRational(0, value) if imag else GaussianRational(value, 0)
        return SparsePolynomial.constant(c)


def parse_polynomial(text: str) -> SparsePolynomial:
    """Parse polynomial text into a fully expanded :class:`SparsePolynomial`.

    Raises
    ------
    ParseError
        With the byte offset of the problem and an error ``kind``.

    Examples
    --------
    >>> sorted(parse_polynomial("z^2 + w^3 - 1").terms)
    [(0, 0), (0, 3), (2, 0)]
    >>> parse_polynomial("(1+2i)*z*w").coefficient(1, 1)
    GaussianRational(1, 2)
    """
    if not isinstance(text, str):
        raise TypeError("parse_polynomial expects a string")
    return _Parser(text).parse()


def _monomial_text(l: int, m: int) -> str:
    parts = []
    if l:
        parts.append("z" if l == 1 else f"z^{l}")
    if m:
        parts.append("w" if m == 1 else f"w^{m}")
    return "*".join(parts)


def render(f: SparsePolynomial) -> str:
    """Canonical text for ``f``; ``parse_polynomial(render(f)) == f``.

    Terms are ordered by total degree, then by the ``z`` exponent, both
    descending.
    """
    if f.is_zero():
        return "0"
    pieces: List[str] = []
    for (l, m) in sorted(f.terms, key=lambda e: (e[0] + e[1], e[0]), reverse=True):
        c = f.terms[(l, m)]
        mono = _monomial_text(l, m)
        negative = (not c.im and c.re < 0) or (not c.re and c.im < 0)
        mag = -c if negative else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_scalar(mag)}*{mono}"
        else:
            body = format_scalar(mag)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
