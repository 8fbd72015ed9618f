"""Exact arithmetic for Laurent polynomials and factored rational functions.

Every generating function handled by this package is a rational function
whose denominator is a product of factors (1 - Z^alpha) for nonnegative
integer exponent vectors alpha.  This module keeps that factored shape:
denominators are never expanded, and all coefficients are exact rationals.

Variable arenas are tuples of variable names, e.g. ("q", "t") or
("X1", "X2", "Y1", "Z1").  An exponent vector is a plain tuple of ints of
the arena's length.
"""

from __future__ import annotations

from fractions import Fraction


class NotDivisible(Exception):
    """Raised when an exact polynomial division does not come out even."""


class SingularSubstitution(Exception):
    """Raised when a substitution maps a denominator factor to (1 - 1) = 0."""


class ArenaMismatch(Exception):
    """Raised when operands live in different variable arenas."""


def _check_same_arena(a, b):
    if a.vars != b.vars:
        raise ArenaMismatch(f"arenas differ: {a.vars} vs {b.vars}")


class LaurentPolynomial:
    """A finite sum of terms coeff * Z^e with exact rational coefficients.

    terms maps exponent tuples (possibly with negative entries) to nonzero
    coefficients (int or Fraction).  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        clean = {}
        for e, c in terms.items():
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def constant(cls, vars, c):
        if not c:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def one(cls, vars):
        return cls.constant(vars, 1)

    @classmethod
    def monomial(cls, vars, e, c=1):
        return cls(vars, {tuple(e): c})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        z = (0,) * len(self.vars)
        return len(self.terms) == 1 and self.terms.get(z) == 1

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        _check_same_arena(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return LaurentPolynomial(self.vars, terms)

    def __neg__(self):
        return LaurentPolynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return LaurentPolynomial.zero(self.vars)
        return LaurentPolynomial(self.vars, {e: c * x for e, x in self.terms.items()})

    def shift(self, e):
        """Multiply by the monomial Z^e."""
        e = tuple(e)
        return LaurentPolynomial(
            self.vars,
            {tuple(a + b for a, b in zip(t, e)): c for t, c in self.terms.items()})

    def invert_vars(self):
        """Substitute every variable by its reciprocal."""
        return LaurentPolynomial(
            self.vars, {tuple(-x for x in e): c for e, c in self.terms.items()})

    def substitute_monomials(self, images, new_vars):
        """Map variable i to the monomial with exponent images[i] in new_vars."""
        if len(images) != len(self.vars):
            raise ArenaMismatch("one image per source variable required")
        k = len(new_vars)
        terms = {}
        for e, c in self.terms.items():
            img = [0] * k
            for exp, image in zip(e, images):
                if exp:
                    for j in range(k):
                        img[j] += exp * image[j]
            key = tuple(img)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return LaurentPolynomial(new_vars, terms)

    def evaluate(self, values):
        """Evaluate at exact rational values, one per variable."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for exp, val in zip(e, values):
                if exp:
                    v *= Fraction(val) ** exp
            total += v
        return total

    def min_exponents(self):
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.vars)))

    def degree_in(self, i):
        if not self.terms:
            return None
        return max(e[i] for e in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(f"{v}^{x}" for v, x in zip(self.vars, e) if x)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def poly_mul(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    _check_same_arena(a, b)
    terms = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            s = terms.get(key, 0) + c1 * c2
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
    return LaurentPolynomial(a.vars, terms)


def poly_exact_div(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Return q with a = q*b, or raise NotDivisible.

    Classic single-divisor division with lexicographic leading terms, after
    shifting both operands into nonnegative exponents.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPolynomial.zero(a.vars)
    _check_same_arena(a, b)
    sa = a.min_exponents()
    sb = b.min_exponents()
    ra = {tuple(x - y for x, y in zip(e, sa)): c for e, c in a.terms.items()}
    rb = {tuple(x - y for x, y in zip(e, sb)): c for e, c in b.terms.items()}
    lead_b = max(rb)
    cb = rb[lead_b]
    quot = {}
    while ra:
        lead_a = max(ra)
        diff = tuple(x - y for x, y in zip(lead_a, lead_b))
        if any(x < 0 for x in diff):
            raise NotDivisible
        c = Fraction(ra[lead_a], cb) if not isinstance(cb, Fraction) \
            else Fraction(ra[lead_a]) / cb
        if c.denominator == 1:
            c = int(c)
        quot[diff] = c
        for e, cf in rb.items():
            key = tuple(x + y for x, y in zip(diff, e))
            s = ra.get(key, 0) - c * cf
            if s:
                ra[key] = s
            elif key in ra:
                del ra[key]
    shift = tuple(x - y for x, y in zip(sa, sb))
    return LaurentPolynomial(a.vars, quot).shift(shift)


def _binomial_poly(vars, e):
    """The polynomial 1 - Z^e."""
    one = (0,) * len(vars)
    if tuple(e) == one:
        raise ValueError("(1 - 1) is not a valid factor")
    return LaurentPolynomial(vars, {one: 1, tuple(e): -1})


class FactoredRationalFunction:
    """numerator / product over factors (1 - Z^e)^mult.

    den maps exponent tuples (all entries >= 0, not all zero) to positive
    multiplicities.  Factors whose raw exponent has nonpositive entries are
    canonicalized through (1 - Z^-g) = -Z^-g (1 - Z^g).
    """

    __slots__ = ("vars", "num", "den")

    def __init__(self, num: LaurentPolynomial, den=None):
        self.vars = num.vars
        den = dict(den or {})
        zero = (0,) * len(self.vars)
        fixed = {}
        for e, m in den.items():
            e = tuple(e)
            if m <= 0:
                continue
            if e == zero:
                raise ZeroDivisionError("denominator factor (1 - 1)")
            if any(x < 0 for x in e):
                if any(x > 0 for x in e):
                    raise ValueError(f"mixed-sign denominator exponent {e}")
                g = tuple(-x for x in e)
                sign = -1 if m % 2 else 1
                num = num.shift(tuple(x * m for x in g)).scale(sign)
                e = g
            fixed[e] = fixed.get(e, 0) + m
        if num.is_zero():
            fixed = {}
        self.num = num
        self.den = fixed

    @classmethod
    def zero(cls, vars):
        return cls(LaurentPolynomial.zero(vars))

    @classmethod
    def one(cls, vars):
        return cls(LaurentPolynomial.one(vars))

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def den_sorted(self):
        return sorted(self.den.items())

    def __repr__(self):
        den = " * ".join(f"(1-Z^{list(e)})^{m}" for e, m in self.den_sorted())
        return f"({self.num!r}) / ({den or '1'})"

    def den_poly(self):
        p = LaurentPolynomial.one(self.vars)
        for e, m in self.den.items():
            f = _binomial_poly(self.vars, e)
            for _ in range(m):
                p = poly_mul(p, f)
        return p

    def to_json_obj(self):
        num = []
        for e in sorted(self.num.terms):
            c = Fraction(self.num.terms[e])
            num.append([str(c.numerator), str(c.denominator), *e])
        den = [[m, *e] for e, m in self.den_sorted()]
        return {"vars": list(self.vars), "num": num, "den": den}

    @classmethod
    def from_json_obj(cls, obj):
        vars = tuple(obj["vars"])
        terms = {}
        for row in obj["num"]:
            cn, cd, e = int(row[0]), int(row[1]), tuple(int(x) for x in row[2:])
            c = Fraction(cn, cd)
            terms[e] = int(c) if c.denominator == 1 else c
        den = {}
        for row in obj["den"]:
            den[tuple(int(x) for x in row[1:])] = int(row[0])
        return cls(LaurentPolynomial(vars, terms), den)


def rf_normalize(f: FactoredRationalFunction) -> FactoredRationalFunction:
    """Cancel denominator factors that exactly divide the numerator."""
    if f.num.is_zero():
        return FactoredRationalFunction.zero(f.vars)
    num = f.num
    den = {}
    for e, m in f.den_sorted():
        factor = _binomial_poly(f.vars, e)
        while m > 0:
            try:
                num = poly_exact_div(num, factor)
            except NotDivisible:
                break
            m -= 1
        if m:
            den[e] = m
    return FactoredRationalFunction(num, den)


def rf_mul_poly(f: FactoredRationalFunction, p: LaurentPolynomial):
    return FactoredRationalFunction(poly_mul(f.num, p), f.den)


def rf_mul(f: FactoredRationalFunction, g: FactoredRationalFunction):
    _check_same_arena(f, g)
    den = dict(f.den)
    for e, m in g.den.items():
        den[e] = den.get(e, 0) + m
    return FactoredRationalFunction(poly_mul(f.num, g.num), den)


def rf_add(f: FactoredRationalFunction, g: FactoredRationalFunction,
           normalize=True) -> FactoredRationalFunction:
    """Add on the factor-wise least common denominator."""
    _check_same_arena(f, g)
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    lcm = dict(f.den)
    for e, m in g.den.items():
        if lcm.get(e, 0) < m:
            lcm[e] = m
    nf = f.num
    for e, m in lcm.items():
        extra = m - f.den.get(e, 0)
        if extra:
            factor = _binomial_poly(f.vars, e)
            for _ in range(extra):
                nf = poly_mul(nf, factor)
    ng = g.num
    for e, m in lcm.items():
        extra = m - g.den.get(e, 0)
        if extra:
            factor = _binomial_poly(g.vars, e)
            for _ in range(extra):
                ng = poly_mul(ng, factor)
    out = FactoredRationalFunction(nf + ng, lcm)
    return rf_normalize(out) if normalize else out


def rf_sum(terms, vars=None):
    """Associative tree reduction; rf_equal-deterministic result."""
    terms = list(terms)
    if not terms:
        if vars is None:
            raise ValueError("empty sum needs an explicit arena")
        return FactoredRationalFunction.zero(vars)
    while len(terms) > 1:
        nxt = []
        for i in range(0, len(terms) - 1, 2):
            nxt.append(rf_add(terms[i], terms[i + 1]))
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0]


def rf_sum_common(terms, vars=None, normalize=True):
    """Sum over one factor-wise common denominator, normalizing once.

    Equal (as a rational function) to rf_sum, but much faster for many
    terms drawn from a shared denominator-factor pool, as in the piece
    sums of one cone region.
    """
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        if vars is None:
            raise ValueError("empty sum needs an explicit arena")
        return FactoredRationalFunction.zero(vars)
    vars = terms[0].vars
    # terms with identical denominators add numerator-to-numerator first
    groups = {}
    lcm = {}
    for t in terms:
        _check_same_arena(terms[0], t)
        sig = frozenset(t.den.items())
        acc = groups.get(sig)
        if acc is None:
            groups[sig] = [dict(t.num.terms), t.den]
        else:
            a = acc[0]
            for e, c in t.num.terms.items():
                a[e] = a.get(e, 0) + c
        for e, m in t.den.items():
            if lcm.get(e, 0) < m:
                lcm[e] = m
    acc = {}
    for num_terms, den in groups.values():
        num = LaurentPolynomial(vars, {e: c for e, c in num_terms.items()
                                       if c})
        for e, m in lcm.items():
            extra = m - den.get(e, 0)
            if extra:
                factor = _binomial_poly(vars, e)
                for _ in range(extra):
                    num = poly_mul(num, factor)
        for e, c in num.terms.items():
            acc[e] = acc.get(e, 0) + c
    out = FactoredRationalFunction(
        LaurentPolynomial(vars, {e: c for e, c in acc.items() if c}), lcm)
    return rf_normalize(out) if normalize else out


def rf_equal(f: FactoredRationalFunction, g: FactoredRationalFunction) -> bool:
    """Exact equality as rational functions, by cross-multiplication."""
    _check_same_arena(f, g)
    fden = dict(f.den)
    gden = dict(g.den)
    for e in list(fden):
        if e in gden:
            m = min(fden[e], gden[e])
            fden[e] -= m
            gden[e] -= m
            if not fden[e]:
                del fden[e]
            if not gden[e]:
                del gden[e]
    left = f.num
    for e, m in gden.items():
        factor = _binomial_poly(f.vars, e)
        for _ in range(m):
            left = poly_mul(left, factor)
    right = g.num
    for e, m in fden.items():
        factor = _binomial_poly(g.vars, e)
        for _ in range(m):
            right = poly_mul(right, factor)
    return left == right


def rf_with_denominator(f: FactoredRationalFunction, den):
    """Numerator of f written over the prescribed denominator multiset.

    den maps exponent vectors e to multiplicities of factors (1 - x^e).
    Raises NotDivisible if f cannot be written over that denominator.
    """
    den = dict(den)
    extra = dict(f.den)
    for e in list(extra):
        if e in den:
            m = min(extra[e], den[e])
            extra[e] -= m
            den[e] -= m
            if not extra[e]:
                del extra[e]
            if not den[e]:
                del den[e]
    num = f.num
    for e, m in den.items():
        factor = _binomial_poly(f.vars, e)
        for _ in range(m):
            num = poly_mul(num, factor)
    for e, m in extra.items():
        factor = _binomial_poly(f.vars, e)
        for _ in range(m):
            num = poly_exact_div(num, factor)
    return num


def rf_substitute(f: FactoredRationalFunction, images, new_vars):
    """Map each source variable to a monomial in new_vars.

    images is one exponent vector per source variable.  A denominator factor
    whose image exponent vanishes raises SingularSubstitution.
    """
    images = [tuple(i) for i in images]
    num = f.num.substitute_monomials(images, new_vars)
    k = len(new_vars)
    den = {}
    for e, m in f.den.items():
        img = [0] * k
        for exp, image in zip(e, images):
            if exp:
                for j in range(k):
                    img[j] += exp * image[j]
        img = tuple(img)
        if not any(img):
            raise SingularSubstitution(f"factor exponent {e} maps to zero")
        den[img] = den.get(img, 0) + m
    return rf_normalize(FactoredRationalFunction(num, den))


def rf_invert_vars(f: FactoredRationalFunction) -> FactoredRationalFunction:
    """f with every variable replaced by its reciprocal.

    Uses 1/(1 - Z^-e) = -Z^e/(1 - Z^e) per denominator factor, keeping the
    canonical factored form.
    """
    num = f.num.invert_vars()
    total_shift = [0] * len(f.vars)
    sign = 1
    for e, m in f.den.items():
        if m % 2:
            sign = -sign
        for i, x in enumerate(e):
            total_shift[i] += m * x
    num = num.shift(tuple(total_shift)).scale(sign)
    return FactoredRationalFunction(num, f.den)


def rf_series_coeffs(f: FactoredRationalFunction, q_value, order):
    """Power-series coefficients of t^0..t^order after evaluating q.

    The arena must be (q, t), in that variable order.  Denominator factors
    (1 - q^a) constant in t are divided out numerically.
    """
    if len(f.vars) != 2:
        raise ArenaMismatch("series expansion expects a (q, t) arena")
    scale = Fraction(1)
    geom = []
    for (a, b), m in f.den.items():
        if b == 0:
            val = 1 - Fraction(q_value) ** a
            if val == 0:
                raise ZeroDivisionError(f"pole: factor (1 - q^{a}) vanishes at q={q_value}")
            scale /= val ** m
        else:
            for _ in range(m):
                geom.append((Fraction(q_value) ** a, b))
    series = {}
    for (a, b), c in f.num.terms.items():
        v = Fraction(c) * Fraction(q_value) ** a * scale
        series[b] = series.get(b, 0) + v
    for ratio, b in geom:
        new = {}
        for deg, c in series.items():
            power = Fraction(1)
            k = deg
            while k <= order:
                new[k] = new.get(k, 0) + c * power
                power *= ratio
                k += b
        series = new
    out = []
    for deg, c in series.items():
        if deg < 0 and c:
            raise ValueError("series has a genuine pole in t at 0")
    for n in range(order + 1):
        out.append(series.get(n, Fraction(0)))
    return out


# ---------------------------------------------------------------------------
# Univariate polynomials over Q (little-endian coefficient lists) and rational
# functions with linear denominator factors (b*s - a), the carrier for
# topological zeta values.

def upoly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def upoly_add(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
           for i in range(n)]
    return upoly_trim(out)


def upoly_scale(p, c):
    if not c:
        return []
    return [c * x for x in p]


def upoly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return upoly_trim(out)


def upoly_eval(p, x):
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def upoly_div_linear(p, b, a):
    """Exact division of p by (b*s - a); raise NotDivisible otherwise."""
    if not p:
        return []
    out = [0] * (len(p) - 1)
    rem = list(p)
    for i in range(len(p) - 1, 0, -1):
        c = Fraction(rem[i]) / b
        out[i - 1] = c
        rem[i] = 0
        rem[i - 1] += c * a
    if rem[0]:
        raise NotDivisible
    return upoly_trim([int(c) if isinstance(c, Fraction) and c.denominator == 1
                       else c for c in out])


class LinearFactoredFunction:
    """numerator polynomial / product over (b*s - a)^mult, in one variable s."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = upoly_trim(list(num))
        den = dict(den or {})
        self.den = {}
        if self.num:
            for (b, a), m in den.items():
                if m > 0:
                    self.den[(b, a)] = self.den.get((b, a), 0) + m

    @classmethod
    def zero(cls):
        return cls([])

    def is_zero(self):
        return not self.num

    def den_poly(self):
        p = [1]
        for (b, a), m in self.den.items():
            for _ in range(m):
                p = upoly_mul(p, [-a, b])
        return p

    def normalize(self):
        num = self.num
        den = {}
        for (b, a), m in sorted(self.den.items()):
            while m > 0:
                try:
                    num = upoly_div_linear(num, b, a)
                except NotDivisible:
                    break
                m -= 1
            if m:
                den[(b, a)] = m
        return LinearFactoredFunction(num, den)

    def degree(self):
        """Degree as a rational function of s."""
        if self.is_zero():
            raise ValueError("the zero function has no degree")
        return (len(self.num) - 1) - sum(self.den.values())

    def to_json_obj(self):
        num = []
        for i, c in enumerate(self.num):
            c = Fraction(c)
            num.append([str(c.numerator), str(c.denominator), i])
        den = [[m, b, a] for (b, a), m in sorted(self.den.items())]
        return {"vars": ["s"], "num": num, "den": den}

    def __repr__(self):
        den = " * ".join(f"({b}s-{a})^{m}" for (b, a), m in sorted(self.den.items()))
        return f"({self.num}) / ({den or '1'})"


def lff_add(f: LinearFactoredFunction, g: LinearFactoredFunction):
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    lcm = dict(f.den)
    for k, m in g.den.items():
        if lcm.get(k, 0) < m:
            lcm[k] = m
    nf = f.num
    ng = g.num
    for (b, a), m in lcm.items():
        for _ in range(m - f.den.get((b, a), 0)):
            nf = upoly_mul(nf, [-a, b])
        for _ in range(m - g.den.get((b, a), 0)):
            ng = upoly_mul(ng, [-a, b])
    return LinearFactoredFunction(upoly_add(nf, ng), lcm).normalize()


def lff_sum(terms):
    terms = list(terms)
    total = LinearFactoredFunction.zero()
    while len(terms) > 1:
        nxt = []
        for i in range(0, len(terms) - 1, 2):
            nxt.append(lff_add(terms[i], terms[i + 1]))
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0] if terms else total


def lff_equal(f: LinearFactoredFunction, g: LinearFactoredFunction) -> bool:
    left = upoly_mul(f.num, g.den_poly())
    right = upoly_mul(g.num, f.den_poly())
    return upoly_trim([Fraction(a) - Fraction(b) for a, b in
                       zip(left + [0] * len(right), right + [0] * len(left))]) == []
