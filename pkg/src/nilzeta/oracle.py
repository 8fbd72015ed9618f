"""Independent brute-force subalgebra counts for cross-checking.

Counts finite-index subalgebras of the free class-2-nilpotent Lie ring on d
generators by enumerating sublattices in Hermite normal form and testing
bracket closure directly against the structure constants.  A second route
sums products of subgroup-counting polynomials over pairs of partition
types.  Both are slow and exact, and exist only to validate the generating
function machinery on small coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .combinat import alpha_count, index_b, mu_of_lambda, partitions_upto


class CapacityExceeded(Exception):
    """The requested brute-force enumeration is larger than the guard."""


def _dprime(d):
    return d * (d - 1) // 2


class StructureConstants:
    """Bracket table of the free class-2-nilpotent Lie ring on d generators.

    Basis: x_1..x_d then y_(i,j) for i < j, with [x_i, x_j] = y_(i,j).
    """

    def __init__(self, d):
        self.d = d
        self.rank = d + _dprime(d)
        self.pair_col = {}
        for i in range(1, d):
            for j in range(i + 1, d + 1):
                self.pair_col[(i, j)] = d + index_b(d, i, j) - _dprime(d) - 1

    def bracket(self, u, v):
        out = [0] * self.rank
        d = self.d
        for i in range(d):
            if not u[i]:
                continue
            for j in range(d):
                if not v[j] or i == j:
                    continue
                if i < j:
                    out[self.pair_col[(i + 1, j + 1)]] += u[i] * v[j]
                else:
                    out[self.pair_col[(j + 1, i + 1)]] -= u[i] * v[j]
        return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def hnf_count(n, index_exp, p):
    """Number of upper-triangular Hermite normal forms of determinant
    p^index_exp in rank n."""
    total = 0
    for diag in _compositions(index_exp, n):
        total += p ** sum(diag[i] * (n - 1 - i) for i in range(n))
    return total


def _hnf_lattices(n, index_exp, p, guard):
    """Yield column bases (upper triangular, diag p^a_i, row i entries
    reduced modulo the row's diagonal) of all sublattices of the given
    index."""
    if hnf_count(n, index_exp, p) > guard:
        raise CapacityExceeded(
            f"{hnf_count(n, index_exp, p)} Hermite normal forms exceed the "
            f"guard of {guard}")
    for diag in _compositions(index_exp, n):
        dvals = [p ** a for a in diag]
        free = [(i, j) for j in range(n) for i in range(j) if dvals[i] > 1]
        ranges = [range(dvals[i]) for (i, j) in free]
        for fill in product(*ranges):
            cols = [[0] * n for _ in range(n)]
            for j in range(n):
                cols[j][j] = dvals[j]
            for (i, j), val in zip(free, fill):
                cols[j][i] = val
            yield cols


def _in_lattice(vec, cols, dvals):
    """Membership in the lattice spanned by upper-triangular columns."""
    v = list(vec)
    for j in range(len(cols) - 1, -1, -1):
        if v[j] % dvals[j]:
            return False
        c = v[j] // dvals[j]
        if c:
            for i in range(j + 1):
                v[i] -= c * cols[j][i]
    return True


def count_subalgebras(d, p, index_exp, guard=10 ** 7):
    """Number of subalgebras of index p^index_exp, by direct enumeration."""
    sc = StructureConstants(d)
    n = sc.rank
    total = 0
    for cols in _hnf_lattices(n, index_exp, p, guard):
        dvals = [cols[j][j] for j in range(n)]
        ok = True
        for a in range(n):
            for b in range(a + 1, n):
                w = sc.bracket(cols[a], cols[b])
                if not _in_lattice(w, cols, dvals):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            total += 1
    return total


def subalgebra_series(d, p, order, guard=10 ** 7):
    """Coefficients [c_0..c_order] of the subalgebra zeta function at p."""
    return [count_subalgebras(d, p, k, guard) for k in range(order + 1)]


def _eval_at_p(poly, p):
    """Evaluate a polynomial in q at q = p, as an integer."""
    val = poly.evaluate((Fraction(p),))
    assert val.denominator == 1
    return int(val)


def gss_partial(d, p, order):
    """The same coefficients via the two-step count over partition types.

    A subalgebra splits as a sublattice of the abelianization with cotype
    lambda, a sublattice of the centre with cotype nu containing the
    pairwise-sum lattice of lambda (cotype mu(lambda)), and one of p^(d|nu|)
    lifts of the generators; the lattice counts per type are Hall-Butler
    subgroup counts.
    """
    dp = _dprime(d)
    out = [0] * (order + 1)
    for lam in partitions_upto(d, order):
        lam_d = (lam + (0,) * d)[:d]
        mu = mu_of_lambda(lam_d)
        rect = (lam_d[0],) * d
        a_lam = _eval_at_p(alpha_count(rect, lam_d), p)
        for nu in partitions_upto(dp, order - sum(lam)):
            nu_full = (nu + (0,) * dp)[:dp]
            if any(nu_full[i] > mu[i] for i in range(dp)):
                continue
            a_nu = _eval_at_p(alpha_count(mu, nu_full), p)
            out[sum(lam) + sum(nu)] += a_lam * a_nu * p ** (d * sum(nu))
    return out


class RouteReport:
    """Three-way comparison of series coefficients."""

    def __init__(self, d, p, order, series, gss, brute):
        self.d, self.p, self.order = d, p, order
        self.series, self.gss, self.brute = series, gss, brute

    @property
    def ok(self):
        return self.series == self.gss == self.brute

    @property
    def first_mismatch(self):
        for n in range(self.order + 1):
            if not (self.series[n] == self.gss[n] == self.brute[n]):
                return n
        return None

    def to_json_obj(self):
        return {
            "d": self.d, "p": self.p, "order": self.order,
            "series": self.series, "gss": self.gss, "brute": self.brute,
            "ok": self.ok, "first_mismatch": self.first_mismatch,
        }

    def text(self):
        lines = [f"routes for d={self.d}, p={self.p}:",
                 f"{'n':>3} {'series':>14} {'gss':>14} {'brute':>14}"]
        for n in range(self.order + 1):
            mark = "" if self.series[n] == self.gss[n] == self.brute[n] \
                else "  <- mismatch"
            lines.append(f"{n:>3} {self.series[n]:>14} {self.gss[n]:>14} "
                         f"{self.brute[n]:>14}{mark}")
        lines.append("agree" if self.ok else
                     f"FIRST MISMATCH at n={self.first_mismatch}")
        return "\n".join(lines)


def compare_routes(d, p, order, guard=10 ** 7):
    """Compare the assembled zeta function's series with both brute-force
    routes up to t^order."""
    from .arith import rf_series_coeffs
    from .zeta import zeta_padic
    series = [int(c) for c in
              rf_series_coeffs(zeta_padic(d).value, p, order)]
    gss = gss_partial(d, p, order)
    brute = subalgebra_series(d, p, order, guard)
    return RouteReport(d, p, order, series, gss, brute)
