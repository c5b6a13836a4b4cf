"""Minimal exact computer algebra for multivariate rational functions.

Expressions are immutable trees over arbitrary-precision rationals
(`fractions.Fraction`).  Every expression has a canonical form: a pair of
fully expanded multivariate polynomials (numerator, denominator) with a
graded-lexicographic monomial order and a content-normalized denominator.
Equality of rational functions is decided by comparing cross-multiplied
canonical numerators, so no polynomial GCD is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "ExprError",
    "ExprSyntaxError",
    "UnboundVariableError",
    "DivisionByZeroError",
    "NotPolynomialError",
    "DegreeError",
    "Poly",
    "RatExpr",
    "rat",
    "var",
    "parse_expr",
    "print_expr",
    "eval_rational",
    "expr_equal",
    "is_zero_expr",
    "substitute",
    "substitute_many",
    "poly_coeffs_in",
    "load_definitions",
]

Rationalish = Union[int, Fraction]

_MAX_EXPONENT = 10**6


class ExprError(Exception):
    """Base class for expression errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnboundVariableError(ExprError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable: {name}")
        self.name = name


class DivisionByZeroError(ExprError):
    def __init__(self, subexpr: "RatExpr"):
        super().__init__(f"division by zero in sub-expression: {print_expr(subexpr)}")
        self.subexpr = subexpr


class NotPolynomialError(ExprError):
    pass


class DegreeError(ExprError):
    pass


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials over Fraction.
#
# A monomial is a tuple of (variable name, positive exponent) pairs sorted by
# name; the empty tuple is the constant monomial.  The monomial order is
# graded lexicographic with variables compared by name.
# ---------------------------------------------------------------------------

Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    """Expanded multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def constant(c: Rationalish) -> "Poly":
        c = Fraction(c)
        return Poly({(): c} if c else {})

    @staticmethod
    def variable(name: str) -> "Poly":
        return Poly({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out)

    def scale(self, c: Fraction) -> "Poly":
        if not c:
            return Poly()
        return Poly({m: v * c for m, v in self.terms.items()})

    def pow(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def variables(self) -> set:
        names = set()
        for m in self.terms:
            for name, _ in m:
                names.add(name)
        return names

    def leading_monomial(self) -> Monomial:
        names = sorted(self.variables())

        def key(m: Monomial):
            d = dict(m)
            return (sum(d.values()), tuple(d.get(nm, 0) for nm in names))

        return max(self.terms, key=key)

    def signed_content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive, signed so that
        dividing by it makes the leading coefficient positive."""
        if not self.terms:
            return Fraction(1)
        g = 0
        lcm = 1
        for c in self.terms.values():
            g = gcd(g, abs(c.numerator))
            d = c.denominator
            lcm = lcm * d // gcd(lcm, d)
        content = Fraction(g, lcm)
        if self.terms[self.leading_monomial()] < 0:
            content = -content
        return content

    def evaluate(self, bindings: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                v *= bindings[name] ** e
            total += v
        return total

    def coeff_split(self, name: str) -> dict:
        """Split into {exponent of `name`: Poly in the remaining variables}."""
        out: dict = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(name, 0)
            rest = tuple(sorted(d.items()))
            bucket = out.setdefault(e, {})
            s = bucket.get(rest, 0) + c
            if s:
                bucket[rest] = s
            else:
                bucket.pop(rest, None)
        return {e: Poly(t) for e, t in out.items() if t}


# ---------------------------------------------------------------------------
# Expression trees.
# ---------------------------------------------------------------------------

_KINDS = ("const", "var", "add", "mul", "pow", "div")


class RatExpr:
    """Immutable rational-function expression tree."""

    __slots__ = ("kind", "args", "_canon")

    def __init__(self, kind: str, args: tuple):
        assert kind in _KINDS
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatExpr is immutable")

    # Arithmetic sugar; accepts ints and Fractions on either side.
    def __add__(self, other):
        return RatExpr("add", (self, as_expr(other)))

    def __radd__(self, other):
        return RatExpr("add", (as_expr(other), self))

    def __sub__(self, other):
        return RatExpr("add", (self, -as_expr(other)))

    def __rsub__(self, other):
        return RatExpr("add", (as_expr(other), -self))

    def __mul__(self, other):
        return RatExpr("mul", (self, as_expr(other)))

    def __rmul__(self, other):
        return RatExpr("mul", (as_expr(other), self))

    def __truediv__(self, other):
        return RatExpr("div", (self, as_expr(other)))

    def __rtruediv__(self, other):
        return RatExpr("div", (as_expr(other), self))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        return RatExpr("pow", (self, k))

    def __neg__(self):
        return RatExpr("mul", (rat(-1), self))

    def __repr__(self):
        return f"RatExpr({print_expr(self)})"

    def canonical(self) -> tuple:
        """Return the canonical (numerator, denominator) Poly pair."""
        cached = self._canon
        if cached is None:
            cached = _normalize_pair(*_canon_pair(self))
            object.__setattr__(self, "_canon", cached)
        return cached

    def variables(self) -> set:
        if self.kind == "const":
            return set()
        if self.kind == "var":
            return {self.args[0]}
        if self.kind == "pow":
            return self.args[0].variables()
        out = set()
        for ch in self.args:
            out |= ch.variables()
        return out


def rat(x: Rationalish) -> RatExpr:
    return RatExpr("const", (Fraction(x),))


def var(name: str) -> RatExpr:
    return RatExpr("var", (name,))


ZERO = rat(0)
ONE = rat(1)


def as_expr(x) -> RatExpr:
    if isinstance(x, RatExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return rat(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RatExpr")


def _flatten(e: RatExpr, kind: str) -> list:
    out = []
    stack = list(reversed(e.args))
    while stack:
        ch = stack.pop()
        if ch.kind == kind:
            stack.extend(reversed(ch.args))
        else:
            out.append(ch)
    return out


def _canon_pair(e: RatExpr) -> tuple:
    if e.kind == "const":
        return Poly.constant(e.args[0]), Poly.constant(1)
    if e.kind == "var":
        return Poly.variable(e.args[0]), Poly.constant(1)
    if e.kind == "add":
        # Flatten nested sums, then collect over a common denominator with
        # equal denominators deduplicated, so long sums of quotients sharing
        # a few denominators do not inflate the pair.
        pairs = [_normalize_pair(*_canon_pair(ch)) for ch in _flatten(e, "add")]
        distinct: list = []
        index = []
        for _, q in pairs:
            for j, dq in enumerate(distinct):
                if dq == q:
                    index.append(j)
                    break
            else:
                index.append(len(distinct))
                distinct.append(q)
        den = Poly.constant(1)
        for dq in distinct:
            den = den * dq
        num = Poly()
        for (p, _), j in zip(pairs, index):
            t = p
            for jj, dq in enumerate(distinct):
                if jj != j:
                    t = t * dq
            num = num + t
        return num, den
    if e.kind == "mul":
        num = Poly.constant(1)
        den = Poly.constant(1)
        for ch in _flatten(e, "mul"):
            p, q = _canon_pair(ch)
            num = num * p
            den = den * q
        return num, den
    if e.kind == "pow":
        base, k = e.args
        p, q = _normalize_pair(*_canon_pair(base))
        if k >= 0:
            return p.pow(k), q.pow(k)
        if p.is_zero():
            raise DivisionByZeroError(base)
        return q.pow(-k), p.pow(-k)
    if e.kind == "div":
        a, b = e.args
        pa, qa = _canon_pair(a)
        pb, qb = _canon_pair(b)
        if pb.is_zero():
            raise DivisionByZeroError(b)
        return pa * qb, qa * pb
    raise AssertionError(e.kind)


def _normalize_pair(num: Poly, den: Poly) -> tuple:
    if den.is_zero():
        raise DivisionByZeroError(ZERO)
    if num.is_zero():
        return Poly(), Poly.constant(1)
    c = den.signed_content()
    inv = 1 / c
    return num.scale(inv), den.scale(inv)


def canonical_pair(e: RatExpr) -> tuple:
    return e.canonical()


def expr_equal(a: RatExpr, b: RatExpr) -> bool:
    """Exact rational-function equality via cross-multiplied canonical numerators."""
    pa, qa = a.canonical()
    pb, qb = b.canonical()
    return pa * qb == pb * qa


def is_zero_expr(e: RatExpr) -> bool:
    p, _ = e.canonical()
    return p.is_zero()


def eval_rational(e: RatExpr, bindings: Mapping[str, Rationalish]) -> Fraction:
    """Evaluate the expression tree exactly at rational bindings."""
    frozen = {k: Fraction(v) for k, v in bindings.items()}
    return _eval(e, frozen)


def _eval(e: RatExpr, b: Mapping[str, Fraction]) -> Fraction:
    if e.kind == "const":
        return e.args[0]
    if e.kind == "var":
        name = e.args[0]
        if name not in b:
            raise UnboundVariableError(name)
        return b[name]
    if e.kind == "add":
        return sum((_eval(ch, b) for ch in e.args), Fraction(0))
    if e.kind == "mul":
        out = Fraction(1)
        for ch in e.args:
            out *= _eval(ch, b)
        return out
    if e.kind == "pow":
        base, k = e.args
        v = _eval(base, b)
        if k < 0 and v == 0:
            raise DivisionByZeroError(base)
        return v**k
    if e.kind == "div":
        a, d = e.args
        dv = _eval(d, b)
        if dv == 0:
            raise DivisionByZeroError(d)
        return _eval(a, b) / dv
    raise AssertionError(e.kind)


def substitute(e: RatExpr, name: str, replacement: RatExpr) -> RatExpr:
    """Replace every occurrence of a variable; absent variable is a no-op."""
    if e.kind == "const":
        return e
    if e.kind == "var":
        return replacement if e.args[0] == name else e
    if e.kind == "pow":
        base, k = e.args
        nb = substitute(base, name, replacement)
        return e if nb is base else RatExpr("pow", (nb, k))
    children = tuple(substitute(ch, name, replacement) for ch in e.args)
    if all(nc is oc for nc, oc in zip(children, e.args)):
        return e
    return RatExpr(e.kind, children)


def substitute_many(e: RatExpr, repl: Mapping[str, RatExpr]) -> RatExpr:
    for name, r in repl.items():
        e = substitute(e, name, r)
    return e


def _poly_to_expr(p: Poly) -> RatExpr:
    if p.is_zero():
        return ZERO
    names = sorted(p.variables())

    def key(item):
        m, _ = item
        d = dict(m)
        return (sum(d.values()), tuple(d.get(nm, 0) for nm in names))

    terms = []
    for m, c in sorted(p.terms.items(), key=key, reverse=True):
        factors = [rat(c)]
        for nm, ex in m:
            factors.append(var(nm) if ex == 1 else var(nm) ** ex)
        t = factors[0]
        for f in factors[1:]:
            t = t * f
        terms.append(t)
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def pair_to_expr(num: Poly, den: Poly) -> RatExpr:
    if den == Poly.constant(1):
        return _poly_to_expr(num)
    return _poly_to_expr(num) / _poly_to_expr(den)


def canon_expr(e: RatExpr) -> RatExpr:
    """Rebuild the expression from its canonical pair (idempotent)."""
    return pair_to_expr(*e.canonical())


def poly_coeffs_in(e: RatExpr, name: str, max_deg: int) -> list:
    """Coefficients c_0..c_max_deg with e = sum c_i * name**i.

    The canonical denominator must be free of the expansion variable and the
    numerator degree must not exceed max_deg.
    """
    num, den = e.canonical()
    if name in den.variables():
        raise NotPolynomialError(
            f"expression is not polynomial in {name}: denominator contains it"
        )
    split = num.coeff_split(name)
    top = max(split) if split else 0
    if top > max_deg:
        raise DegreeError(f"degree {top} in {name} exceeds max_deg {max_deg}")
    return [pair_to_expr(split.get(i, Poly()), den) for i in range(max_deg + 1)]


# ---------------------------------------------------------------------------
# Printing.
# ---------------------------------------------------------------------------


def print_expr(e: RatExpr) -> str:
    return _print(e, 0)


# precedence: add=1, mul/div=2, pow=3, atom=4
def _print(e: RatExpr, parent_prec: int) -> str:
    if e.kind == "const":
        c = e.args[0]
        s = str(c)
        prec = 4 if c >= 0 and c.denominator == 1 else 2
        if c < 0:
            prec = 0
        return _wrap(s, prec, parent_prec)
    if e.kind == "var":
        return e.args[0]
    if e.kind == "add":
        s = " + ".join(_print(ch, 1) for ch in e.args)
        return _wrap(s, 1, parent_prec)
    if e.kind == "mul":
        s = "*".join(_print(ch, 2) for ch in e.args)
        return _wrap(s, 2, parent_prec)
    if e.kind == "div":
        a, b = e.args
        s = f"{_print(a, 2)}/{_print(b, 3)}"
        return _wrap(s, 2, parent_prec)
    if e.kind == "pow":
        base, k = e.args
        s = f"{_print(base, 4)}^{k}"
        return _wrap(s, 3, parent_prec)
    raise AssertionError(e.kind)


def _wrap(s: str, prec: int, parent_prec: int) -> str:
    return f"({s})" if prec < parent_prec else s


# ---------------------------------------------------------------------------
# Recursive-descent parser for the bundled expression grammar:
#
#   expr   := term (("+"|"-") term)*
#   term   := unary (("*"|"/") unary)*
#   unary  := "-" unary | factor
#   factor := base ("^" integer)?
#   base   := rational | identifier | "(" expr ")"
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ExprSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def parse(self) -> RatExpr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.text[self.pos]!r}")
        return e

    def expr(self) -> RatExpr:
        e = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.take()
                e = e + self.term()
            elif ch == "-":
                self.take()
                e = e - self.term()
            else:
                return e

    def term(self) -> RatExpr:
        e = self.unary()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take()
                e = e * self.unary()
            elif ch == "/":
                self.take()
                e = e / self.unary()
            else:
                return e

    def unary(self) -> RatExpr:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.factor()

    def factor(self) -> RatExpr:
        e = self.base()
        if self.peek() == "^":
            self.take()
            k = self.integer(signed=True)
            e = e**k
        return e

    def base(self) -> RatExpr:
        ch = self.peek()
        if ch == "(":
            self.take()
            e = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return e
        if ch.isdigit():
            return rat(self.integer(signed=False))
        if ch.isalpha() or ch == "_":
            return var(self.identifier())
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unknown character {ch!r}")

    def integer(self, signed: bool) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected integer")
        value = int(self.text[start : self.pos])
        if abs(value) > _MAX_EXPONENT:
            self.pos = start
            self.error("integer exponent overflow")
        return value

    def identifier(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]


def parse_expr(text: str) -> RatExpr:
    return _Parser(text).parse()


def load_definitions(lines: Iterable[str]) -> dict:
    """Load a "NAME := expression" corpus.

    Later definitions may reference earlier names; the references are
    resolved by substitution so every returned expression is closed over the
    base variables only.  '#' starts a comment.
    """
    defs: dict = {}
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":=" not in line:
            raise ExprSyntaxError(f"missing ':=' in definition line: {line!r}", 0)
        name, body = line.split(":=", 1)
        name = name.strip()
        e = parse_expr(body.strip())
        for prev, prev_e in defs.items():
            e = substitute(e, prev, prev_e)
        defs[name] = e
    return defs
