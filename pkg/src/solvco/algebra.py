"""Exact scalars and a sign-correct sparse exterior algebra.

Scalars are Gaussian rationals.  Coefficients of forms are Laurent
polynomials over the Gaussian rationals in a handful of formal real
symbols (the eigenvalue logarithms), so identities such as ``d(theta) = phi``
with ``theta`` carrying ``1/lam`` stay exact.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


def parse_rational(value) -> Fraction:
    """Parse ``"1/2"``, ``"-3"``, ints or Fractions into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Gaussian:
    """Element re + i*im of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, x) -> Gaussian:
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x, 0)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot coerce {x!r} to Gaussian")

    @classmethod
    def parse(cls, text: str) -> Gaussian:
        """Parse strings such as ``"1/2"``, ``"3i"``, ``"-1/2+2/3i"``, ``"i"``."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty Gaussian literal")
        if not s.endswith("i"):
            return cls(parse_rational(s), 0)
        body = s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        while cut > 0 and body[cut - 1] in "eE":
            cut = max(body.rfind("+", 0, cut), body.rfind("-", 0, cut))
        re_part, im_part = (body[:cut], body[cut:]) if cut > 0 else ("", body)
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        re_val = parse_rational(re_part) if re_part else Fraction(0)
        return cls(re_val, parse_rational(im_part))

    def __add__(self, other):
        if not isinstance(other, Gaussian):
            if isinstance(other, (int, Fraction)):
                return Gaussian(self.re + other, self.im)
            return NotImplemented
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, Gaussian):
            if isinstance(other, (int, Fraction)):
                return Gaussian(self.re - other, self.im)
            return NotImplemented
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Gaussian):
            if isinstance(other, (int, Fraction)):
                return Gaussian(self.re * other, self.im * other)
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return Gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> Gaussian:
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("Gaussian division by zero")
            return Gaussian(self.re / other, self.im / other)
        if isinstance(other, Gaussian):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return Gaussian.coerce(other) * self.inverse()

    def conjugate(self) -> Gaussian:
        return Gaussian(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __repr__(self):
        return f"Gaussian({self})"

    def __str__(self):
        if self.im == 0:
            return _frac_str(self.re)
        im = "" if abs(self.im) == 1 else _frac_str(abs(self.im))
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{_frac_str(self.re)}{'-' if self.im < 0 else '+'}{im}i"


ZERO = Gaussian(0)
ONE = Gaussian(1)
I = Gaussian(0, 1)


class Coeff:
    """Laurent polynomial over Q(i) in formal real symbols.

    ``terms`` maps a sorted tuple of ``(symbol, exponent)`` pairs to a nonzero
    Gaussian.  The empty tuple is the constant term.
    """

    __slots__ = ("terms",)

    def __init__(self, value=None):
        if value is None:
            self.terms = {}
        elif isinstance(value, Coeff):
            self.terms = value.terms
        else:
            g = Gaussian.coerce(value)
            self.terms = {(): g} if g else {}

    @classmethod
    def _raw(cls, terms: dict) -> Coeff:
        c = cls.__new__(cls)
        c.terms = terms
        return c

    @classmethod
    def coerce(cls, x) -> Coeff:
        return x if isinstance(x, Coeff) else cls(x)

    @classmethod
    def symbol(cls, name: str, exp: int = 1, scale=1) -> Coeff:
        g = Gaussian.coerce(scale)
        if not g:
            return cls()
        key = ((name, exp),) if exp else ()
        return cls._raw({key: g})

    @classmethod
    def linear(cls, coords: Sequence, symbols: Sequence[str]) -> Coeff:
        """The linear form sum(coords[t] * symbols[t])."""
        terms = {}
        for c, s in zip(coords, symbols):
            g = Gaussian.coerce(c)
            if g:
                terms[((s, 1),)] = g
        return cls._raw(terms)

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant(self) -> Gaussian:
        if not self.is_constant():
            raise ValueError(f"coefficient {self} is not constant")
        return self.terms.get((), ZERO)

    def symbols(self) -> set:
        return {s for key in self.terms for s, _ in key}

    def __add__(self, other):
        other = _as_coeff(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return Coeff._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Coeff._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = _as_coeff(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Gaussian)) and not isinstance(other, bool):
            g = Gaussian.coerce(other)
            if not g:
                return Coeff()
            return Coeff._raw({k: v * g for k, v in self.terms.items()})
        other = _as_coeff(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = _mul_keys(k1, k2)
                v = v1 * v2
                w = out.get(k)
                if w is not None:
                    v = w + v
                if v:
                    out[k] = v
                elif w is not None:
                    del out[k]
        return Coeff._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar or by a single Laurent monomial."""
        if isinstance(other, (int, Fraction, Gaussian)):
            return self * Gaussian.coerce(other).inverse()
        other = _as_coeff(other)
        if other is None:
            return NotImplemented
        if len(other.terms) != 1:
            raise ValueError(f"cannot divide by non-monomial {other}")
        ((key, g),) = other.terms.items()
        inv = Coeff._raw({tuple((s, -e) for s, e in key): g.inverse()})
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            return Coeff(1) / (self ** (-k))
        out = Coeff(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> Coeff:
        return Coeff._raw({k: v.conjugate() for k, v in self.terms.items()})

    def ratio(self, other: Coeff):
        """Return the Gaussian g with self == g * other, or None."""
        if not other.terms:
            return None
        if not self.terms:
            return ZERO
        if len(self.terms) != len(other.terms):
            return None
        key = next(iter(other.terms))
        if key not in self.terms:
            return None
        g = self.terms[key] / other.terms[key]
        for k, v in other.terms.items():
            if self.terms.get(k) != v * g:
                return None
        return g

    def __eq__(self, other):
        other = _as_coeff(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Coeff({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            g = self.terms[key]
            mono = "*".join(s if e == 1 else f"{s}^{e}" for s, e in key)
            if not mono:
                parts.append(str(g))
            elif g == 1:
                parts.append(mono)
            elif g == -1:
                parts.append("-" + mono)
            else:
                gs = str(g)
                if g.re != 0 and g.im != 0:
                    gs = f"({gs})"
                parts.append(f"{gs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_coeff(x):
    if isinstance(x, Coeff):
        return x
    if isinstance(x, (int, Fraction, Gaussian)) and not isinstance(x, bool):
        return Coeff(x)
    return None


def _mul_keys(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        e2 = d.get(s, 0) + e
        if e2:
            d[s] = e2
        else:
            d.pop(s, None)
    return tuple(sorted(d.items()))


class Weight:
    """Rational vector in the weight space of eigenvalue logarithms."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(parse_rational(c) if not isinstance(c, Fraction) else c
                            for c in coords)

    @classmethod
    def parse(cls, items) -> Weight:
        if isinstance(items, (int, str, Fraction)):
            items = [items]
        return cls(parse_rational(x) for x in items)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: Weight):
        if len(self.coords) != len(other.coords):
            raise ValueError("weights live in different weight spaces")

    def __add__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: Weight) -> Weight:
        self._check(other)
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> Weight:
        return Weight(-a for a in self.coords)

    def scale(self, q) -> Weight:
        q = parse_rational(q) if not isinstance(q, Fraction) else q
        return Weight(q * a for a in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    @classmethod
    def zero(cls, dim: int) -> Weight:
        return cls([Fraction(0)] * dim)

    def to_coeff(self, symbols: Sequence[str]) -> Coeff:
        return Coeff.linear(self.coords, symbols)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Weight(" + ", ".join(_frac_str(c) for c in self.coords) + ")"


class QuadNumber:
    """a + b*sqrt(d) with a, b rational and d a square-free integer >= 2."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 5):
        if not isinstance(d, int) or d < 2 or not _squarefree(d):
            raise ValueError(f"discriminant tag must be a square-free integer >= 2, got {d!r}")
        self.a = a if type(a) is Fraction else parse_rational(a)
        self.b = b if type(b) is Fraction else parse_rational(b)
        self.d = d

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> QuadNumber:
        """Evaluate strings such as ``"(-sqrt(5)-3)/2"`` or ``"(√5+3)/2"`` exactly."""
        src = text.replace("√", "sqrt").replace("−", "-").strip()
        import re
        src = re.sub(r"sqrt(\d+)", r"sqrt(\1)", src)
        src = re.sub(r"(\d|\))\s*sqrt", r"\1*sqrt", src)
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"bad quadratic literal {text!r}") from exc
        found = {int(node.args[0].value) for node in ast.walk(tree)
                 if isinstance(node, ast.Call) and node.args
                 and isinstance(node.args[0], ast.Constant)}
        if d is None:
            if len(found) > 1:
                raise ValueError(f"mixed discriminants in {text!r}")
            d = found.pop() if found else 5
        elif found - {d}:
            raise ValueError(f"discriminant mismatch in {text!r}")
        return _eval_quad(tree.body, d)

    def _other(self, other) -> QuadNumber | None:
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise ValueError(f"discriminant mismatch: sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadNumber(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a * o.a + self.d * self.b * o.b,
                          self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> QuadNumber:
        return QuadNumber(self.a, -self.b, self.d)

    def inverse(self) -> QuadNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadNumber division by zero")
        return QuadNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        return o * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = QuadNumber(1, 0, self.d)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d*b^2
        diff = self.a * self.a - self.d * self.b * self.b
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadNumber({self})"

    def __str__(self):
        if self.b == 0:
            return _frac_str(self.a)
        b = "" if abs(self.b) == 1 else _frac_str(abs(self.b)) + "*"
        root = f"{b}sqrt({self.d})"
        if self.a == 0:
            return ("-" if self.b < 0 else "") + root
        return f"{_frac_str(self.a)}{'-' if self.b < 0 else '+'}{root}"


def _squarefree(d: int) -> bool:
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _eval_quad(node, d: int) -> QuadNumber:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return QuadNumber(node.value, 0, d)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_quad(node.operand, d)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        lhs, rhs = _eval_quad(node.left, d), _eval_quad(node.right, d)
        if isinstance(node.op, ast.Add):
            return lhs + rhs
        if isinstance(node.op, ast.Sub):
            return lhs - rhs
        if isinstance(node.op, ast.Mult):
            return lhs * rhs
        if isinstance(node.op, ast.Div):
            return lhs / rhs
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id == "sqrt" and len(node.args) == 1
            and isinstance(node.args[0], ast.Constant) and node.args[0].value == d):
        return QuadNumber(0, 1, d)
    raise ValueError(f"unsupported quadratic expression: {ast.dump(node)}")


def quad_arith(a: QuadNumber, b: QuadNumber, op: str) -> QuadNumber:
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# --- exterior algebra -------------------------------------------------------

def wedge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of bitmask monomials a and b (a & b == 0)."""
    s = 0
    while b:
        low = b & -b
        s += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if s & 1 else 1


def sort_sign(seq: Sequence[int]) -> int:
    """Parity of the permutation sorting a sequence of distinct integers."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


def mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class GeneratorSet:
    """Ordered exterior generators with a conjugation involution.

    ``kinds`` holds ``"10"``, ``"01"`` or ``"real"`` per generator.  The list
    order is the canonical order used for every monomial.
    """

    def __init__(self, names: Sequence[str], conj: Sequence[int], kinds: Sequence[str]):
        if len(names) != len(set(names)):
            raise ValueError("duplicate generator names")
        n = len(names)
        if sorted(conj) != list(range(n)) or any(conj[conj[i]] != i for i in range(n)):
            raise ValueError("conjugation must be an involution on the generators")
        for i, k in enumerate(kinds):
            if k == "real" and conj[i] != i:
                raise ValueError(f"real generator {names[i]} must be self-conjugate")
            if k in ("10", "01") and kinds[conj[i]] != ("01" if k == "10" else "10"):
                raise ValueError(f"generator {names[i]} has a partner of the wrong type")
        self.names = tuple(names)
        self.conj = tuple(conj)
        self.kinds = tuple(kinds)
        self._index = {name: i for i, name in enumerate(names)}
        self.holo_mask = sum(1 << i for i, k in enumerate(kinds) if k == "10")
        self.anti_mask = sum(1 << i for i, k in enumerate(kinds) if k == "01")
        self._conj_cache: dict[int, tuple[int, int]] = {}

    @classmethod
    def holomorphic(cls, names: Sequence[str], bar_names: Sequence[str] | None = None) -> GeneratorSet:
        """(1,0) generators followed by their conjugates in the same order."""
        if bar_names is None:
            bar_names = [bar_name(s) for s in names]
        n = len(names)
        conj = [i + n for i in range(n)] + list(range(n))
        return cls(list(names) + list(bar_names), conj, ["10"] * n + ["01"] * n)

    @classmethod
    def real(cls, names: Sequence[str]) -> GeneratorSet:
        return cls(names, list(range(len(names))), ["real"] * len(names))

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and (
            self is other or (self.names == other.names and self.conj == other.conj
                              and self.kinds == other.kinds))

    def __hash__(self):
        return hash(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def monomial(self, names: Sequence[str]) -> tuple[int, int]:
        """(sign, mask) of the wedge of the named generators in the given order."""
        idx = [self.index(s) for s in names]
        if len(set(idx)) != len(idx):
            return 0, 0
        return sort_sign(idx), sum(1 << i for i in idx)

    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    def bidegree(self, mask: int) -> tuple[int, int]:
        return (mask & self.holo_mask).bit_count(), (mask & self.anti_mask).bit_count()

    def conj_mask(self, mask: int) -> tuple[int, int]:
        hit = self._conj_cache.get(mask)
        if hit is None:
            img = [self.conj[i] for i in mask_indices(mask)]
            hit = (sort_sign(img), sum(1 << i for i in img))
            self._conj_cache[mask] = hit
        return hit

    def label(self, mask: int) -> str:
        return "".join(self.names[i] for i in mask_indices(mask)) or "1"

    def masks_of_degree(self, k: int) -> list[int]:
        """All monomials of degree k in lexicographic order of index tuples."""
        return [sum(1 << i for i in c) for c in combinations(range(len(self.names)), k)]


def bar_name(name: str) -> str:
    """Default conjugate name: ``phi1 -> phib1``."""
    head = name.rstrip("0123456789")
    return head + "b" + name[len(head):]


# characters are tuples (a_1..a_r, b_1..b_r) of Fractions; () is the identity

def char_add(x: tuple, y: tuple) -> tuple:
    if not x:
        return y
    if not y:
        return x
    s = tuple(a + b for a, b in zip(x, y))
    return s if any(s) else ()


def char_neg(x: tuple) -> tuple:
    return tuple(-a for a in x)


def char_conj(x: tuple) -> tuple:
    if not x:
        return x
    r = len(x) // 2
    return x[r:] + x[:r]


def normalize_char(x) -> tuple:
    if not x:
        return ()
    x = tuple(parse_rational(a) if not isinstance(a, Fraction) else a for a in x)
    return x if any(x) else ()


class Form:
    """Sparse element of the (character-weighted) exterior algebra.

    ``terms`` maps ``(character, mask)`` to a nonzero Coeff.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms: dict | None = None):
        self.gens = gens
        self.terms = terms if terms is not None else {}

    # construction
    @classmethod
    def zero(cls, gens: GeneratorSet) -> Form:
        return cls(gens, {})

    @classmethod
    def scalar(cls, gens: GeneratorSet, c=1, char=()) -> Form:
        c = Coeff.coerce(c)
        return cls(gens, {(normalize_char(char), 0): c} if c else {})

    @classmethod
    def monomial(cls, gens: GeneratorSet, names: Sequence[str], coeff=1, char=()) -> Form:
        """Wedge of named generators in the order given, times coeff and a character."""
        sign, mask = gens.monomial(names)
        c = Coeff.coerce(coeff) * sign
        if not c:
            return cls(gens, {})
        return cls(gens, {(normalize_char(char), mask): c})

    @classmethod
    def from_mask(cls, gens: GeneratorSet, mask: int, coeff=1, char=()) -> Form:
        c = Coeff.coerce(coeff)
        return cls(gens, {(normalize_char(char), mask): c} if c else {})

    @classmethod
    def gen(cls, gens: GeneratorSet, name: str, coeff=1) -> Form:
        return cls.monomial(gens, [name], coeff)

    # queries
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def degrees(self) -> set:
        return {m.bit_count() for _, m in self.terms}

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero form has no degree")
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(ds)}")
        return ds.pop()

    def bidegrees(self) -> set:
        return {self.gens.bidegree(m) for _, m in self.terms}

    def component(self, p: int, q: int) -> Form:
        bd = self.gens.bidegree
        return Form(self.gens, {k: v for k, v in self.terms.items() if bd(k[1]) == (p, q)})

    def degree_part(self, k: int) -> Form:
        return Form(self.gens, {key: v for key, v in self.terms.items() if key[1].bit_count() == k})

    def coefficient(self, names: Sequence[str] | int, char=()) -> Coeff:
        """Coefficient of a monomial given as names (any order) or mask."""
        if isinstance(names, int):
            sign, mask = 1, names
        else:
            sign, mask = self.gens.monomial(names)
        c = self.terms.get((normalize_char(char), mask))
        return c * sign if c is not None else Coeff()

    def symbols(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.symbols()
        return out

    # arithmetic
    def _check(self, other: Form):
        if other.gens is not self.gens and other.gens != self.gens:
            raise ValueError("forms live over different generator sets")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return Form(self.gens, out)

    def __neg__(self):
        return Form(self.gens, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Form):
            return NotImplemented
        c = Coeff.coerce(scalar)
        if not c:
            return Form(self.gens, {})
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w:
                out[k] = w
        return Form(self.gens, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Form(self.gens, {k: v / scalar for k, v in self.terms.items()})

    def wedge(self, other: Form) -> Form:
        self._check(other)
        out: dict = {}
        for (c1, m1), v1 in self.terms.items():
            for (c2, m2), v2 in other.terms.items():
                if m1 & m2:
                    continue
                key = (char_add(c1, c2), m1 | m2)
                v = v1 * v2
                if wedge_sign(m1, m2) < 0:
                    v = -v
                w = out.get(key)
                if w is not None:
                    v = w + v
                if v:
                    out[key] = v
                elif w is not None:
                    del out[key]
        return Form(self.gens, out)

    def __xor__(self, other):
        return self.wedge(other)

    def power(self, k: int) -> Form:
        out = Form.scalar(self.gens, 1)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def conjugate(self) -> Form:
        out = {}
        for (c, m), v in self.terms.items():
            sign, m2 = self.gens.conj_mask(m)
            w = v.conjugate()
            out[(char_conj(c), m2)] = w if sign > 0 else -w
        return Form(self.gens, out)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Form({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (c, m) in sorted(self.terms, key=_term_order):
            v = self.terms[(c, m)]
            ch = "" if not c else "chi(" + ",".join(_frac_str(x) for x in c) + ")*"
            parts.append(f"({v})*{ch}{self.gens.label(m)}")
        return " + ".join(parts)


def _term_order(key):
    c, m = key
    return (m.bit_count(), mask_indices(m), c)


def wedge(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def conjugate(a: Form) -> Form:
    return a.conjugate()


def substitute(form: Form, images: Sequence[Form], target: GeneratorSet) -> Form:
    """Pull a form back along generator images (one 1-form per source generator)."""
    out = Form.zero(target)
    cache: dict[int, Form] = {0: Form.scalar(target, 1)}
    for (c, m), v in form.terms.items():
        img = cache.get(m)
        if img is None:
            img = Form.scalar(target, 1)
            for i in mask_indices(m):
                img = img.wedge(images[i])
            cache[m] = img
        if c:
            img = Form(target, {(char_add(c, k[0]), k[1]): w for k, w in img.terms.items()})
        out = out + img * v
    return out


def real_frame(gens: GeneratorSet):
    """Real generator set plus the image of each original generator in it.

    A complex pair (g, gbar) becomes (Re_g, Im_g) with g = X + iY, gbar = X - iY.
    Real generator sets are returned unchanged.
    """
    if all(k == "real" for k in gens.kinds):
        return gens, [Form.gen(gens, s) for s in gens.names]
    holo = [i for i, k in enumerate(gens.kinds) if k == "10"]
    names = []
    for i in holo:
        names += [f"Re_{gens.names[i]}", f"Im_{gens.names[i]}"]
    real = GeneratorSet.real(names)
    images: list = [None] * len(gens)
    for i in holo:
        x = Form.gen(real, f"Re_{gens.names[i]}")
        y = Form.gen(real, f"Im_{gens.names[i]}")
        images[i] = x + y * I
        images[gens.conj[i]] = x - y * I
    return real, images


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
