"""Exact bivariate polynomials in x and q over the rationals.

Everything downstream (matrix factorizations, morphism spaces, mutation
chains) is built on this module, so the arithmetic here is exact by
construction: coefficients are ``fractions.Fraction`` and no floating point
ever enters.

A polynomial is stored sparsely as a map from exponent pairs ``(a, b)``
(meaning ``x^a * q^b``) to nonzero rational coefficients.  The canonical
term order is graded lexicographic with x before q: higher total degree
first, ties broken by higher x-exponent.  Printing and parsing use that
order, so ``poly_parse(str(p)) == p`` for every polynomial ``p``.

Both variables carry weight 1, so a polynomial is homogeneous of twist t
exactly when every monomial has total degree t.  The zero polynomial is
homogeneous of every twist; ``homogeneous_twist`` returns the ``ANY_TWIST``
marker for it so callers of the grading checks never have to special-case
zero matrix entries.
"""

from __future__ import annotations

from fractions import Fraction


class PolySyntaxError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _AnyTwist:
    """Marker: the zero polynomial is homogeneous of every twist."""

    __slots__ = ()

    def __repr__(self):
        return "ANY_TWIST"


ANY_TWIST = _AnyTwist()


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _term_order(monomial):
    # graded lex, x before q, descending
    a, b = monomial
    return (-(a + b), -a)


class BivariatePolynomial:
    """Sparse exact polynomial in x and q; immutable by convention."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (a, b), c in terms.items():
                c = _coerce(c)
                if c == 0:
                    continue
                if a < 0 or b < 0:
                    raise ValueError("negative exponent")
                clean[(a, b)] = c
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "BivariatePolynomial":
        return cls({(0, 0): _coerce(c)})

    @classmethod
    def monomial(cls, c, a: int, b: int) -> "BivariatePolynomial":
        return cls({(a, b): _coerce(c)})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self):
        """Terms in canonical (graded-lex descending) order."""
        return sorted(self._terms.items(), key=lambda kv: _term_order(kv[0]))

    def coefficient(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(a + b for a, b in self._terms)

    def homogeneous_twist(self):
        """Twist t if every term has total degree t.

        Returns ``ANY_TWIST`` for the zero polynomial and ``None`` when the
        terms have mixed total degrees.
        """
        if not self._terms:
            return ANY_TWIST
        degrees = {a + b for a, b in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def is_homogeneous_of(self, t: int) -> bool:
        if not self._terms:
            return True
        return all(a + b == t for a, b in self._terms)

    def as_constant(self):
        """The rational value if this is a constant polynomial, else None."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {(0, 0)}:
            return self._terms[(0, 0)]
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "BivariatePolynomial":
        c = _coerce(c)
        if c == 0:
            return ZERO
        return BivariatePolynomial({m: c * v for m, v in self._terms.items()})

    def derivative(self, var: str) -> "BivariatePolynomial":
        """Partial derivative with respect to 'x' or 'q'."""
        if var not in ("x", "q"):
            raise ValueError("variable must be 'x' or 'q'")
        out = {}
        for (a, b), c in self._terms.items():
            if var == "x" and a > 0:
                out[(a - 1, b)] = c * a
            elif var == "q" and b > 0:
                out[(a, b - 1)] = c * b
        return BivariatePolynomial(out)

    def leading_monomial(self) -> tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self._terms, key=_term_order)

    def divexact(self, divisor: "BivariatePolynomial"):
        """Exact quotient self/divisor, or None when not divisible.

        Single-divisor reduction by the graded-lex leading term; for exact
        multiples the reduction always terminates with remainder zero.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        dm = divisor.leading_monomial()
        dc = divisor._terms[dm]
        rem = dict(self._terms)
        out: dict[tuple[int, int], Fraction] = {}
        while rem:
            m = min(rem, key=_term_order)
            a, b = m[0] - dm[0], m[1] - dm[1]
            if a < 0 or b < 0:
                return None
            k = rem[m] / dc
            out[(a, b)] = out.get((a, b), Fraction(0)) + k
            for (da, db), dcoef in divisor._terms.items():
                mm = (a + da, b + db)
                s = rem.get(mm, Fraction(0)) - k * dcoef
                if s == 0:
                    rem.pop(mm, None)
                else:
                    rem[mm] = s
        return BivariatePolynomial(out)

    def substitute_q1(self) -> list[Fraction]:
        """Coefficient list of p(x, 1), lowest degree first."""
        if not self._terms:
            return []
        deg = max(a for a, _ in self._terms)
        coeffs = [Fraction(0)] * (deg + 1)
        for (a, _), c in self._terms.items():
            coeffs[a] += c
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def evaluate(self, x_val, q_val) -> Fraction:
        x_val, q_val = _coerce(x_val), _coerce(q_val)
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            total += c * x_val**a * q_val**b
        return total

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == BivariatePolynomial.constant(other)._terms
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for i, ((a, b), c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            mono = []
            if a == 1:
                mono.append("x")
            elif a > 1:
                mono.append(f"x^{a}")
            if b == 1:
                mono.append("q")
            elif b > 1:
                mono.append(f"q^{b}")
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = "*".join([str(mag)] + mono)
            if i == 0:
                pieces.append(body if sign == "+" else "-" + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self):
        return f"poly({str(self)!r})"


ZERO = BivariatePolynomial()
ONE = BivariatePolynomial.constant(1)
X = BivariatePolynomial.monomial(1, 1, 0)
Q = BivariatePolynomial.monomial(1, 0, 1)


def _as_poly(value) -> BivariatePolynomial:
    if isinstance(value, BivariatePolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return BivariatePolynomial.constant(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to a polynomial")


# --------------------------------------------------------------------------
# parser: expressions over x, q with + - * ^ and parentheses
# --------------------------------------------------------------------------

_TOK_NUM, _TOK_X, _TOK_Q, _TOK_OP, _TOK_LP, _TOK_RP, _TOK_END = range(7)


def _tokenize(text: str):
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
            num = int(text[i:j])
            if j < n and text[j] == "/":
                k = j + 1
                if k >= n or not text[k].isdigit():
                    raise PolySyntaxError("expected digits after '/'", j)
                m = k
                while m < n and text[m].isdigit():
                    m += 1
                den = int(text[k:m])
                if den == 0:
                    raise PolySyntaxError("zero denominator", k)
                tokens.append((_TOK_NUM, Fraction(num, den), i))
                i = m
            else:
                tokens.append((_TOK_NUM, Fraction(num), i))
                i = j
            continue
        if ch == "x":
            tokens.append((_TOK_X, None, i))
        elif ch == "q":
            tokens.append((_TOK_Q, None, i))
        elif ch in "+-*^":
            tokens.append((_TOK_OP, ch, i))
        elif ch == "(":
            tokens.append((_TOK_LP, None, i))
        elif ch == ")":
            tokens.append((_TOK_RP, None, i))
        elif ch.isalpha():
            raise PolySyntaxError(f"unknown identifier {ch!r}", i)
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i)
        i += 1
    tokens.append((_TOK_END, None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> BivariatePolynomial:
        value = self.expression()
        kind, _, at = self.peek()
        if kind != _TOK_END:
            raise PolySyntaxError("unexpected trailing input", at)
        return value

    def expression(self) -> BivariatePolynomial:
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self) -> BivariatePolynomial:
        value = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val == "*":
                self.advance()
                value = value * self.factor()
            elif kind in (_TOK_X, _TOK_Q, _TOK_LP):
                # juxtaposition such as "2x", "x q", "x(x+q)"
                value = value * self.factor()
            else:
                return value

    def factor(self) -> BivariatePolynomial:
        kind, val, at = self.peek()
        if kind == _TOK_OP and val in "+-":
            self.advance()
            inner = self.factor()
            return inner if val == "+" else -inner
        return self.power()

    def power(self) -> BivariatePolynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == _TOK_OP and val == "^":
            self.advance()
            ekind, evalue, eat = self.advance()
            if ekind != _TOK_NUM or evalue.denominator != 1 or evalue < 0:
                raise PolySyntaxError("exponent must be a nonnegative integer", eat)
            return base ** int(evalue)
        return base

    def atom(self) -> BivariatePolynomial:
        kind, val, at = self.advance()
        if kind == _TOK_NUM:
            return BivariatePolynomial.constant(val)
        if kind == _TOK_X:
            return X
        if kind == _TOK_Q:
            return Q
        if kind == _TOK_LP:
            inner = self.expression()
            ckind, _, cat = self.advance()
            if ckind != _TOK_RP:
                raise PolySyntaxError("expected ')'", cat)
            return inner
        raise PolySyntaxError("expected a number, variable or '('", at)


def poly_parse(text: str) -> BivariatePolynomial:
    """Parse a polynomial expression in x and q with exact coefficients."""
    return _Parser(text).parse()


def poly_print(p: BivariatePolynomial) -> str:
    """Canonical string form (graded-lex order, explicit '*' and '^')."""
    return str(p)
