"""Sparse exact polynomials over a weighted generator registry.

Generators come in four kinds:

* structure functions ``h2, h3, ...`` and their conjugates ``hm2, hm3,
  ...`` (weight = signed index),
* section coefficients (``p*``, ``q*``, ``r*`` families) carrying the
  weight and reality pairing installed by the frame-section builder,
* auxiliaries ``a, b, m, J`` and the rotation symbols ``c, s`` (weight
  0), optionally subject to a power rule such as ``m^2 -> h2*hm2``,
* coordinates ``x0..x3`` for polynomials on Euclidean 4-space.

A monomial is a dense exponent tuple over the frozen registry; the
monomial order is degree-lexicographic with generators sorted by
(kind, |index|, sign).  Coefficients are QZ8 elements, so arithmetic is
exact and canonical: power rules are applied eagerly, zero coefficients
are never stored, and two equal ring elements compare equal.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .coeffs import I, ONE, QZ8, Z8, ZERO

KIND_STRUCTURE = 0
KIND_SECTION = 1
KIND_AUX = 2
KIND_COORD = 3


class Generator:
    __slots__ = ("name", "kind", "weight", "conj_name", "sort_key", "struct_index")

    def __init__(self, name, kind, weight, conj_name, sort_key, struct_index=None):
        self.name = name
        self.kind = kind
        self.weight = weight
        self.conj_name = conj_name
        self.sort_key = sort_key
        self.struct_index = struct_index

    def __repr__(self):
        return "Generator(%s)" % self.name


def h_name(j: int) -> str:
    """Canonical token for the structure function of signed index j."""
    if j == 0 or abs(j) < 2:
        raise ValueError("structure function index must satisfy |j| >= 2")
    return "h%d" % j if j > 0 else "hm%d" % (-j)


class Registry:
    """Session-wide generator table; frozen before any polynomial exists."""

    def __init__(self):
        self._pending = []
        self._frozen = False
        self._reg_counter = 0
        self.gens = ()
        self.index = {}
        self._weights = ()
        self._conj_perm = ()
        self._rules = []
        self.hmax = 0

    # -- construction -------------------------------------------------

    def _add(self, gen: Generator):
        if self._frozen:
            raise RuntimeError("registry is frozen")
        if any(g.name == gen.name for g in self._pending):
            raise ValueError("duplicate generator %s" % gen.name)
        self._pending.append(gen)

    def add_structure_functions(self, jmax: int):
        """Register h2..h{jmax} together with their conjugates."""
        self.hmax = max(self.hmax, jmax)
        for j in range(2, jmax + 1):
            self._add(
                Generator(h_name(j), KIND_STRUCTURE, j, h_name(-j),
                          (KIND_STRUCTURE, j, 0), struct_index=j)
            )
            self._add(
                Generator(h_name(-j), KIND_STRUCTURE, -j, h_name(j),
                          (KIND_STRUCTURE, j, 1), struct_index=-j)
            )

    def add_section_coeff(self, name: str, weight: int, conj_name: str):
        self._reg_counter += 1
        self._add(
            Generator(name, KIND_SECTION, weight, conj_name,
                      (KIND_SECTION, self._reg_counter, 0))
        )

    def add_aux(self, name: str, conj_name=None):
        self._reg_counter += 1
        self._add(
            Generator(name, KIND_AUX, 0, conj_name or name,
                      (KIND_AUX, self._reg_counter, 0))
        )

    def add_coords(self, names=("x0", "x1", "x2", "x3")):
        for k, name in enumerate(names):
            self._add(Generator(name, KIND_COORD, 0, name, (KIND_COORD, k, 0)))

    def freeze(self) -> "Registry":
        gens = sorted(self._pending, key=lambda g: g.sort_key)
        self.gens = tuple(gens)
        self.index = {g.name: i for i, g in enumerate(gens)}
        self._weights = tuple(g.weight for g in gens)
        perm = []
        for g in gens:
            perm.append(self.index.get(g.conj_name, -1))
        self._conj_perm = tuple(perm)
        self._frozen = True
        return self

    def add_power_rule(self, name: str, power: int, image: "Poly"):
        """Install the ring rule name^power -> image (image free of name)."""
        gi = self.index[name]
        if any(m[gi] for m in image.d):
            raise ValueError("power rule image may not contain %s" % name)
        self._rules.append((gi, power, image))

    # -- queries -------------------------------------------------------

    def gen_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError("unknown generator name %r" % name) from None

    def weight_of(self, mono) -> int:
        w = 0
        for e, gw in zip(mono, self._weights):
            if e:
                w += e * gw
        return w

    def conj_mono(self, mono):
        out = [0] * len(mono)
        for i, e in enumerate(mono):
            if e:
                j = self._conj_perm[i]
                if j < 0:
                    raise ValueError(
                        "generator %s has no registered conjugation partner"
                        % self.gens[i].name
                    )
                out[j] = e
        return tuple(out)

    def mono_of(self, pairs) -> tuple:
        m = [0] * len(self.gens)
        for name, e in pairs.items():
            m[self.gen_index(name)] += e
        return tuple(m)


def _mono_key(mono):
    return (sum(mono), mono)


class Poly:
    """Sparse polynomial over a registry with QZ8 coefficients."""

    __slots__ = ("reg", "d")

    def __init__(self, reg: Registry, d: dict):
        self.reg = reg
        self.d = d

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, reg):
        return cls(reg, {})

    @classmethod
    def const(cls, reg, c):
        if not isinstance(c, QZ8):
            c = QZ8.rational(c)
        if c.is_zero():
            return cls(reg, {})
        return cls(reg, {(0,) * len(reg.gens): c})

    @classmethod
    def gen(cls, reg, name, exp=1, coeff=None):
        c = ONE if coeff is None else coeff
        if not isinstance(c, QZ8):
            c = QZ8.rational(c)
        m = [0] * len(reg.gens)
        m[reg.gen_index(name)] = exp
        p = cls(reg, {tuple(m): c})
        return p._ruled()

    @classmethod
    def monomial(cls, reg, pairs, coeff=1):
        c = coeff if isinstance(coeff, QZ8) else QZ8.rational(coeff)
        if c.is_zero():
            return cls(reg, {})
        p = cls(reg, {reg.mono_of(pairs): c})
        return p._ruled()

    # -- power rules ---------------------------------------------------

    def _ruled(self) -> "Poly":
        rules = self.reg._rules
        if not rules:
            return self
        hit = False
        for mono in self.d:
            for gi, k, _ in rules:
                if mono[gi] >= k:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return self
        out = {}
        work = list(self.d.items())
        while work:
            mono, c = work.pop()
            applied = False
            for gi, k, image in rules:
                if mono[gi] >= k:
                    base = list(mono)
                    base[gi] -= k
                    for im, ic in image.d.items():
                        nm = tuple(a + b for a, b in zip(base, im))
                        work.append((nm, c * ic))
                    applied = True
                    break
            if not applied:
                prev = out.get(mono)
                s = c if prev is None else prev + c
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Poly(self.reg, out)

    # -- ring operations -----------------------------------------------

    def _check(self, other: "Poly"):
        if self.reg is not other.reg:
            raise ValueError("operands built over different registries")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not other.d:
            return self
        if not self.d:
            return other
        d = dict(self.d)
        for m, c in other.d.items():
            prev = d.get(m)
            s = c if prev is None else prev + c
            if s.is_zero():
                d.pop(m, None)
            else:
                d[m] = s
        return Poly(self.reg, d)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.reg, {m: -c for m, c in self.d.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.d or not other.d:
            return Poly(self.reg, {})
        a, b = self.d, other.d
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c = c1 * c2
                prev = out.get(m)
                s = c if prev is None else prev + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(self.reg, out)._ruled()

    def scaled(self, c) -> "Poly":
        if not isinstance(c, QZ8):
            c = QZ8.rational(c)
        if c.is_zero():
            return Poly(self.reg, {})
        return Poly(self.reg, {m: v * c for m, v in self.d.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(self.reg, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.reg is other.reg and self.d == other.d

    def __hash__(self):
        return hash(frozenset(self.d.items()))

    def is_zero(self) -> bool:
        return not self.d

    # -- structure -----------------------------------------------------

    def conj(self) -> "Poly":
        reg = self.reg
        out = {}
        for m, c in self.d.items():
            out[reg.conj_mono(m)] = c.conj()
        return Poly(reg, out)._ruled()

    def weights(self):
        return {self.reg.weight_of(m) for m in self.d}

    def weight(self):
        """Common weight of all monomials, or None when inhomogeneous."""
        ws = self.weights()
        if not ws:
            return 0
        if len(ws) > 1:
            return None
        return ws.pop()

    def is_weight_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def total_degree(self) -> int:
        return max((sum(m) for m in self.d), default=0)

    def leading(self):
        """(monomial, coefficient) maximal in the fixed order."""
        if not self.d:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.d, key=_mono_key)
        return m, self.d[m]

    def terms_sorted(self):
        return sorted(self.d.items(), key=lambda kv: _mono_key(kv[0]), reverse=True)

    def degree_in(self, name: str) -> int:
        gi = self.reg.gen_index(name)
        return max((m[gi] for m in self.d), default=0)

    def coefficient_of(self, name: str, exp: int = 1) -> "Poly":
        """Coefficient polynomial of name^exp (monomials with that exact power)."""
        gi = self.reg.gen_index(name)
        out = {}
        for m, c in self.d.items():
            if m[gi] == exp:
                mm = list(m)
                mm[gi] = 0
                out[tuple(mm)] = c
        return Poly(self.reg, out)

    def drop_generator(self, name: str) -> "Poly":
        """Monomials not containing the generator at all."""
        gi = self.reg.gen_index(name)
        return Poly(self.reg, {m: c for m, c in self.d.items() if m[gi] == 0})

    def contains(self, name: str) -> bool:
        gi = self.reg.gen_index(name)
        return any(m[gi] for m in self.d)

    def generators_used(self):
        used = set()
        for m in self.d:
            for i, e in enumerate(m):
                if e:
                    used.add(self.reg.gens[i].name)
        return used

    # -- division ------------------------------------------------------

    def exact_divide(self, d: "Poly"):
        """Quotient q with self = d*q, or None when no exact quotient exists.

        Leading-term division under the fixed monomial order; valid in the
        free ring (callers keep rule-bearing generators out of the divisor).
        """
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly(self.reg, {})
        dm, dc = d.leading()
        dcinv = dc.inverse()
        q = {}
        r = dict(self.d)
        while r:
            rm = max(r, key=_mono_key)
            rc = r[rm]
            qm = tuple(a - b for a, b in zip(rm, dm))
            if any(e < 0 for e in qm):
                return None
            qc = rc * dcinv
            q[qm] = qc
            for m2, c2 in d.d.items():
                m = tuple(a + b for a, b in zip(qm, m2))
                c = c2 * qc
                prev = r.get(m)
                s = (-c) if prev is None else prev - c
                if s.is_zero():
                    r.pop(m, None)
                else:
                    r[m] = s
        return Poly(self.reg, q)

    def divisible_by(self, d: "Poly") -> bool:
        return self.exact_divide(d) is not None

    # -- normalization ---------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer components."""
        nums = []
        dens = []
        for c in self.d.values():
            for f in c.c:
                if f != 0:
                    nums.append(abs(f.numerator))
                    dens.append(f.denominator)
        if not nums:
            return Fraction(1)
        gn = 0
        for n in nums:
            gn = math.gcd(gn, n)
        ld = 1
        for dd in dens:
            ld = ld * dd // math.gcd(ld, dd)
        return Fraction(gn, ld)

    def normalized_with_scale(self, ledger_atoms=()):
        """(canonical form, scale poly) with self = scale * canonical.

        Canonical: ledger-atom monomial factors stripped, content 1, and the
        leading coefficient's first nonzero component positive.  Idempotent
        and invariant under rescaling by nonzero rationals or ledger
        monomials; the zero polynomial maps to itself.
        """
        if not self.d:
            return self, Poly.const(self.reg, 1)
        p = self
        strip = {}
        for name in ledger_atoms:
            gi = self.reg.gen_index(name)
            e = min(m[gi] for m in p.d)
            if e > 0:
                nd = {}
                for m, c in p.d.items():
                    mm = list(m)
                    mm[gi] -= e
                    nd[tuple(mm)] = c
                p = Poly(self.reg, nd)
                strip[name] = e
        cont = p.content()
        _, lead = p.leading()
        first = next(f for f in lead.c if f != 0)
        if first < 0:
            cont = -cont
        p = p.scaled(QZ8.rational(1 / cont))
        return p, Poly.monomial(self.reg, strip, cont)

    def normalized(self, ledger_atoms=()):
        return self.normalized_with_scale(ledger_atoms)[0]

    def unit_normalized(self):
        """(canonical, scalar) with self = scalar * canonical, scalar rational."""
        if not self.d:
            return self, ONE
        cont = self.content()
        _, lead = self.leading()
        first = next(f for f in lead.c if f != 0)
        if first < 0:
            cont = -cont
        return self.scaled(QZ8.rational(1 / cont)), QZ8.rational(cont)

    # -- calculus helpers ------------------------------------------------

    def partial(self, name: str) -> "Poly":
        """Formal partial derivative with respect to one generator."""
        gi = self.reg.gen_index(name)
        out = {}
        for m, c in self.d.items():
            e = m[gi]
            if e:
                mm = list(m)
                mm[gi] = e - 1
                mm = tuple(mm)
                add = c.scaled(e)
                prev = out.get(mm)
                s = add if prev is None else prev + add
                if s.is_zero():
                    out.pop(mm, None)
                else:
                    out[mm] = s
        return Poly(self.reg, out)

    def substitute_gen(self, name: str, value: "Poly") -> "Poly":
        """Replace one generator by a polynomial (plain, no denominators)."""
        gi = self.reg.gen_index(name)
        out = Poly.zero(self.reg)
        powers = {0: Poly.const(self.reg, 1)}
        for m, c in self.d.items():
            e = m[gi]
            if e not in powers:
                powers[e] = value ** e
            mm = list(m)
            mm[gi] = 0
            out = out + Poly(self.reg, {tuple(mm): c}) * powers[e]
        return out

    def evaluate(self, env, embed):
        """Map the polynomial through generator values in another algebra.

        env: name -> value, embed: QZ8 -> value.  Returns embed(0) for the
        zero polynomial.
        """
        total = None
        for m, c in self.d.items():
            term = embed(c)
            for i, e in enumerate(m):
                if e:
                    v = env(self.reg.gens[i].name)
                    for _ in range(e):
                        term = term * v
            total = term if total is None else total + term
        if total is None:
            return embed(ZERO)
        return total

    # -- text ------------------------------------------------------------

    def serialize(self) -> str:
        return serialize(self)

    def __repr__(self):
        return "Poly(%s)" % serialize(self)


# ---------------------------------------------------------------------------
# factored rational expressions
# ---------------------------------------------------------------------------


class FactoredDen:
    """Denominator kept as a product of canonical polynomial factors."""

    __slots__ = ("factors",)

    def __init__(self, factors=None):
        self.factors = dict(factors or {})

    @classmethod
    def one(cls):
        return cls()

    def is_one(self) -> bool:
        return not self.factors

    def copy(self) -> "FactoredDen":
        return FactoredDen(self.factors)

    def mul_factor(self, poly: Poly, exp: int = 1) -> "FactoredDen":
        """Multiply by poly^exp; poly must already be canonical."""
        key = serialize(poly)
        f = dict(self.factors)
        if key in f:
            p, e = f[key]
            f[key] = (p, e + exp)
        else:
            f[key] = (poly, exp)
        return FactoredDen(f)

    def mul(self, other: "FactoredDen") -> "FactoredDen":
        out = self
        for _, (p, e) in sorted(other.factors.items()):
            out = out.mul_factor(p, e)
        return out

    def lcm(self, other: "FactoredDen") -> "FactoredDen":
        keys = sorted(set(self.factors) | set(other.factors))
        f = {}
        for k in keys:
            p1, e1 = self.factors.get(k, (None, 0))
            p2, e2 = other.factors.get(k, (None, 0))
            f[k] = (p1 if p1 is not None else p2, max(e1, e2))
        return FactoredDen(f)

    def ratio_to(self, target: "FactoredDen", reg: Registry) -> Poly:
        """Polynomial target/self (requires self to divide target factorwise)."""
        out = Poly.const(reg, 1)
        for k, (p, e) in sorted(target.factors.items()):
            have = self.factors.get(k, (None, 0))[1]
            if e - have < 0:
                raise ValueError("denominator is not a sub-product of the target")
            if e - have > 0:
                out = out * p ** (e - have)
        for k, (_, e) in self.factors.items():
            if e > target.factors.get(k, (None, 0))[1]:
                raise ValueError("denominator is not a sub-product of the target")
        return out

    def expand(self, reg: Registry) -> Poly:
        out = Poly.const(reg, 1)
        for _, (p, e) in sorted(self.factors.items()):
            out = out * p ** e
        return out

    def conj(self, reg: Registry) -> tuple:
        """(conjugated denominator, scalar s) with conj(expand) = s * expand'."""
        out = FactoredDen()
        scalar = ONE
        for _, (p, e) in sorted(self.factors.items()):
            pn, sc = p.conj().unit_normalized()
            for _ in range(e):
                scalar = scalar * sc
            out = out.mul_factor(pn, e)
        return out, scalar

    def __repr__(self):
        bits = []
        for k, (_, e) in sorted(self.factors.items()):
            bits.append(k if e == 1 else "(%s)^%d" % (k, e))
        return " * ".join(bits) if bits else "1"


class RationalExpr:
    """num / den with a factored denominator of declared-nonzero pieces."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: FactoredDen = None):
        self.num = num
        self.den = den or FactoredDen.one()

    @classmethod
    def of(cls, p: Poly) -> "RationalExpr":
        return cls(p, FactoredDen.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reg(self):
        return self.num.reg

    def __add__(self, other: "RationalExpr") -> "RationalExpr":
        den = self.den.lcm(other.den)
        a = self.num * self.den.ratio_to(den, self.num.reg)
        b = other.num * other.den.ratio_to(den, other.num.reg)
        return RationalExpr(a + b, den).simplified()

    def __sub__(self, other: "RationalExpr") -> "RationalExpr":
        return self + (-other)

    def __neg__(self) -> "RationalExpr":
        return RationalExpr(-self.num, self.den)

    def __mul__(self, other: "RationalExpr") -> "RationalExpr":
        return RationalExpr(self.num * other.num, self.den.mul(other.den)).simplified()

    def scaled(self, c) -> "RationalExpr":
        return RationalExpr(self.num.scaled(c), self.den)

    def conj(self) -> "RationalExpr":
        den, scalar = self.den.conj(self.num.reg)
        num = self.num.conj().scaled(scalar.inverse())
        return RationalExpr(num, den)

    def simplified(self) -> "RationalExpr":
        if self.num.is_zero():
            return RationalExpr(self.num, FactoredDen.one())
        num = self.num
        f = {}
        for k, (p, e) in self.den.factors.items():
            while e > 0:
                q = num.exact_divide(p)
                if q is None:
                    break
                num = q
                e -= 1
            if e > 0:
                f[k] = (p, e)
        return RationalExpr(num, FactoredDen(f))

    def as_pair(self):
        return self.num, self.den.expand(self.num.reg)

    def __eq__(self, other):
        if not isinstance(other, RationalExpr):
            return NotImplemented
        a = self.num * other.den.expand(self.num.reg)
        b = other.num * self.den.expand(self.num.reg)
        return a == b

    def __repr__(self):
        if self.den.is_one():
            return "Rational(%s)" % serialize(self.num)
        return "Rational((%s) / (%r))" % (serialize(self.num), self.den)


# ---------------------------------------------------------------------------
# grammar: parse / serialize
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9_]*)|([+\-*^]))")


class ParseError(ValueError):
    def __init__(self, text, pos, message):
        super().__init__("%s at position %d in %r" % (message, pos, text))
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        mobj = _TOKEN.match(text, pos)
        if mobj is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(text, pos, "unexpected character %r" % text[pos])
        num, ident, op = mobj.groups()
        if num is not None:
            tokens.append(("num", num, mobj.start(1)))
        elif ident is not None:
            tokens.append(("ident", ident, mobj.start(2)))
        else:
            tokens.append(("op", op, mobj.start(3)))
        pos = mobj.end()
    return tokens


def parse(reg: Registry, text: str) -> Poly:
    """Parse an expression in the relation grammar over a registry.

    expr := term (('+'|'-') term)* ; term := [rational] ('*' factor)* ;
    factor := gen ('^' nat)? ; the coefficient units I and Z8 are accepted
    as factors.  Unknown generator names are reported by name.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError(text, 0, "empty expression")
    result = Poly.zero(reg)
    k = 0
    nt = len(tokens)

    def take_factor(k, coeff, mono_pairs):
        typ, val, pos = tokens[k]
        if typ != "ident":
            raise ParseError(text, pos, "expected a generator name")
        k += 1
        exp = 1
        if k < nt and tokens[k][0] == "op" and tokens[k][1] == "^":
            if k + 1 >= nt or tokens[k + 1][0] != "num" or "/" in tokens[k + 1][1]:
                raise ParseError(text, pos, "expected a natural exponent")
            exp = int(tokens[k + 1][1])
            k += 2
        if val == "I":
            coeff = coeff * _pow(I, exp)
        elif val == "Z8":
            coeff = coeff * _pow(Z8, exp)
        else:
            if val not in reg.index:
                raise ParseError(text, pos, "unknown generator name %r" % val)
            mono_pairs[val] = mono_pairs.get(val, 0) + exp
        return k, coeff

    first = True
    while k < nt:
        sign = 1
        typ, val, pos = tokens[k]
        if typ == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            k += 1
        elif not first:
            raise ParseError(text, pos, "expected '+' or '-'")
        first = False
        if k >= nt:
            raise ParseError(text, len(text), "dangling sign")
        coeff = QZ8.rational(sign)
        mono_pairs = {}
        typ, val, pos = tokens[k]
        if typ == "num":
            if "/" in val:
                a, b = val.split("/")
                coeff = coeff.scaled(Fraction(int(a), int(b)))
            else:
                coeff = coeff.scaled(int(val))
            k += 1
        else:
            k, coeff = take_factor(k, coeff, mono_pairs)
        while k < nt and tokens[k][0] == "op" and tokens[k][1] == "*":
            k += 1
            if k >= nt:
                raise ParseError(text, len(text), "dangling '*'")
            k, coeff = take_factor(k, coeff, mono_pairs)
        result = result + Poly.monomial(reg, mono_pairs, coeff)
    return result


def _pow(c: QZ8, n: int) -> QZ8:
    out = ONE
    for _ in range(n):
        out = out * c
    return out


_UNIT_TOKENS = (("", 0), ("Z8", 1), ("I", 2), ("I*Z8", 3))


def serialize(p: Poly) -> str:
    """Canonical text form; parse(serialize(p)) == p."""
    if not p.d:
        return "0"
    pieces = []
    for mono, coeff in p.terms_sorted():
        for unit, ci in _UNIT_TOKENS:
            f = coeff.c[ci]
            if f == 0:
                continue
            bits = []
            if f < 0:
                sign = "-"
                f = -f
            else:
                sign = "+"
            if f != 1 or (not unit and not any(mono)):
                bits.append(str(f))
            if unit:
                bits.append(unit)
            for i, e in enumerate(mono):
                if e:
                    name = p.reg.gens[i].name
                    bits.append(name if e == 1 else "%s^%d" % (name, e))
            pieces.append((sign, "*".join(bits) if bits else "1"))
    first_sign, first_body = pieces[0]
    out = [first_body if first_sign == "+" else "-" + first_body]
    for sign, body in pieces[1:]:
        out.append(" %s %s" % (sign, body))
    return "".join(out)


def parse_relation_file(reg: Registry, text: str):
    """One relation per line; '#' starts a comment; blank lines skipped."""
    out = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            out.append(parse(reg, body))
    return out
