"""Text form of separated polynomials.

Grammar, whitespace free between tokens:

    poly   := [sign] term (sign term)*
    term   := factor ('*' factor)*
    factor := INT | VAR ['^' INT] | INT '^' INT

Variables are x1/x2, with x/y accepted as aliases. A term may contain any
number of integer factors but at most one variable factor; two different
variables in one term is not a separated polynomial and is rejected, the
same variable twice is a syntax error (write x1^2). Offsets in errors are
0-based positions into the input string.

The printer emits the canonical form: nonnegative residues, descending
powers of x1, then descending powers of x2, then the constant. Parsing a
printed curve reproduces it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from ppcount.errors import NotSeparated, PolySyntaxError, UnknownVariable
from ppcount.modarith import PrimePowerCtx
from ppcount.curve import SeparatedCurve, normalize
from ppcount.unipoly import UniPoly

_VARS = {"x1": 1, "x": 1, "x2": 2, "y": 2}
_MAX_EXPONENT = 10**6


@dataclass(frozen=True)
class PolyExpr:
    """Raw parsed coefficients, ascending, not yet reduced into any ring."""

    g_coeffs: tuple[int, ...]
    h_coeffs: tuple[int, ...]


def _lex(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*^":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise PolySyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_int(self) -> int:
        kind, value, offset = self.take()
        if kind != "int":
            raise PolySyntaxError(f"expected a number, found {value or 'end of input'!r}", offset)
        return int(value)

    def factor(self) -> tuple[int, int | None, int]:
        """Returns (integer value, axis or None, exponent)."""
        kind, value, offset = self.take()
        if kind == "int":
            base = int(value)
            if self.peek()[0] == "^":
                self.take()
                exp = self.expect_int()
                self._check_exponent(exp, offset)
                base = base**exp
            return base, None, 0
        if kind == "name":
            if value not in _VARS:
                raise UnknownVariable(f"unknown variable {value!r}, use x1/x2 or x/y", offset)
            exp = 1
            if self.peek()[0] == "^":
                self.take()
                exp = self.expect_int()
                self._check_exponent(exp, offset)
            return 1, _VARS[value], exp
        raise PolySyntaxError(
            f"expected a number or variable, found {value or 'end of input'!r}", offset
        )

    @staticmethod
    def _check_exponent(exp: int, offset: int) -> None:
        if exp > _MAX_EXPONENT:
            raise PolySyntaxError(f"exponent {exp} exceeds the limit {_MAX_EXPONENT}", offset)

    def term(self) -> tuple[int, int | None, int]:
        coeff, axis, exp = self.factor()
        while self.peek()[0] == "*":
            self.take()
            offset = self.peek()[2]
            c2, axis2, exp2 = self.factor()
            coeff *= c2
            if axis2 is not None:
                if axis is None:
                    axis, exp = axis2, exp2
                elif axis == axis2:
                    raise PolySyntaxError(
                        "variable repeated within one term, write a power instead", offset
                    )
                else:
                    raise NotSeparated(
                        "term mixes x1 and x2; only sums g(x1) + h(x2) are supported", offset
                    )
        if axis is not None and exp == 0:
            axis = None
        return coeff, axis, exp

    def poly(self) -> PolyExpr:
        g: dict[int, int] = {}
        h: dict[int, int] = {}
        first = True
        while True:
            kind, value, offset = self.peek()
            if kind == "end":
                if first:
                    raise PolySyntaxError("empty polynomial", offset)
                break
            sign = 1
            if kind in "+-":
                self.take()
                sign = -1 if kind == "-" else 1
            elif not first:
                raise PolySyntaxError(f"expected '+' or '-', found {value!r}", offset)
            coeff, axis, exp = self.term()
            coeff *= sign
            target = h if axis == 2 else g
            key = exp if axis is not None else 0
            target[key] = target.get(key, 0) + coeff
            first = False
        return PolyExpr(g_coeffs=_dense(g), h_coeffs=_dense(h))


def _dense(terms: dict[int, int]) -> tuple[int, ...]:
    if not terms:
        return ()
    out = [0] * (max(terms) + 1)
    for e, c in terms.items():
        out[e] = c
    return tuple(out)


def parse_poly(text: str) -> PolyExpr:
    return _Parser(text).poly()


def build_curve(expr: PolyExpr, ctx: PrimePowerCtx) -> SeparatedCurve:
    m = ctx.modulus
    return normalize(UniPoly.make(expr.g_coeffs, m), UniPoly.make(expr.h_coeffs, m), ctx)


def curve_from_text(text: str, ctx: PrimePowerCtx) -> SeparatedCurve:
    return build_curve(parse_poly(text), ctx)


def _term_str(c: int, var: str, e: int) -> str:
    if e == 0:
        return str(c)
    head = "" if c == 1 else f"{c}*"
    tail = var if e == 1 else f"{var}^{e}"
    return head + tail


def pretty(curve: SeparatedCurve) -> str:
    """Canonical text form; parsing it back reproduces the curve."""
    parts = []
    for poly, var in ((curve.g, "x1"), (curve.h, "x2")):
        for e in range(len(poly.coeffs) - 1, 0, -1):
            if poly.coeffs[e]:
                parts.append(_term_str(poly.coeffs[e], var, e))
    if curve.g.constant():
        parts.append(str(curve.g.constant()))
    return " + ".join(parts) if parts else "0"
