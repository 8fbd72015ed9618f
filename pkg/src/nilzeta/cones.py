"""Rational polyhedral cones attached to linear Diophantine systems.

A DiophantineMonoid is the set of nonnegative integer solutions of a
homogeneous linear system A x = 0.  Its real span is a pointed rational cone
inside the nonnegative orthant; this module computes its extreme rays
(double description), its face lattice (unions of ray supports), pulling
triangulations of its faces, and the multivariate generating function of any
"region": the solutions whose support contains a prescribed set A and is
contained in a prescribed set C.

All arithmetic is exact, over int and Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import FactoredRationalFunction, LaurentPolynomial, rf_sum


# ---------------------------------------------------------------------------
# Exact linear algebra helpers.


def matrix_rank(rows):
    """Rank over Q of a list of integer/Fraction row vectors.

    Integer input is reduced fraction-free (cross-multiplication), which is
    much faster than Fraction arithmetic.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    if any(isinstance(x, Fraction) for r in rows for x in r):
        rows = [[Fraction(x) for x in r] for r in rows]
        exact = False
    else:
        exact = True
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        pc = pr[col]
        for i in range(rank + 1, len(rows)):
            ric = rows[i][col]
            if ric:
                if exact:
                    g = gcd(pc, ric)
                    fp, fi = pc // g, ric // g
                    rows[i] = [fp * a - fi * b for a, b in zip(rows[i], pr)]
                else:
                    f = ric / pc
                    rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g in (0, 1):
        return tuple(vec)
    return tuple(x // g for x in vec)


def smith_normal_form(M):
    """Return (diag, U, V) with U M V in Smith normal form.

    M is a list of rows of an m x k integer matrix; U is m x m, V is k x k,
    both unimodular; diag lists the nonzero invariant factors.
    """
    m = len(M)
    k = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row i += c * row j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col i += c * col j
        for r in A:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]

    def diagonalize():
        t = 0
        while t < min(m, k):
            pos = None
            for i in range(t, m):
                for j in range(t, k):
                    if A[i][j]:
                        if pos is None or abs(A[i][j]) < abs(A[pos[0]][pos[1]]):
                            pos = (i, j)
            if pos is None:
                break
            swap_rows(t, pos[0])
            swap_cols(t, pos[1])
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        add_row(i, t, -(A[i][t] // A[t][t]))
                        if A[i][t]:
                            swap_rows(t, i)
                        dirty = True
                for j in range(t + 1, k):
                    if A[t][j]:
                        add_col(j, t, -(A[t][j] // A[t][t]))
                        if A[t][j]:
                            swap_cols(t, j)
                        dirty = True
                if not dirty:
                    break
            if A[t][t] < 0:
                A[t] = [-x for x in A[t]]
                U[t] = [-x for x in U[t]]
            t += 1
        return t

    t = diagonalize()
    # enforce divisibility of successive diagonal entries: mixing a violating
    # column pair reintroduces off-diagonal entries, then re-diagonalizing
    # replaces the pair by (gcd, lcm)
    while True:
        bad = next((i for i in range(t - 1) if A[i + 1][i + 1] % A[i][i]),
                   None)
        if bad is None:
            break
        add_col(bad, bad + 1, 1)
        t = diagonalize()
    diag = [A[i][i] for i in range(t) if A[i][i]]
    return diag, U, V


# ---------------------------------------------------------------------------
# Feasibility of rational linear inequality systems (Fourier-Motzkin).


def feasible(ineqs, num_vars):
    """Decide whether {x in R^n : c . x >= b for all (c, b)} is nonempty.

    ineqs is a list of pairs (coeffs, bound).  Exact elimination; intended
    for the small systems arising from cone membership tests.
    """
    system = [(tuple(map(Fraction, c)), Fraction(b)) for c, b in ineqs]
    for v in range(num_vars):
        pos, neg, rest = [], [], []
        for c, b in system:
            if c[v] > 0:
                pos.append((c, b))
            elif c[v] < 0:
                neg.append((c, b))
            else:
                rest.append((c, b))
        new = rest
        for cp, bp in pos:
            for cn, bn in neg:
                # eliminate x_v between cp.x >= bp and cn.x >= bn
                a, b2 = cp[v], -cn[v]
                c = tuple(b2 * x + a * y for x, y in zip(cp, cn))
                new.append((c, b2 * bp + a * bn))
        seen = set()
        system = []
        for c, b in new:
            key = (c, b)
            if key not in seen:
                seen.add(key)
                system.append((c, b))
    return all(b <= 0 for _, b in system)


# ---------------------------------------------------------------------------
# Double description: extreme rays of {x >= 0 : A x = 0}.


def extreme_rays(equations, num_vars):
    """Primitive extreme rays of the cone {x in R^n_{>=0} : a . x = 0 for a in equations}.

    Double description starting from the orthant's unit rays, with the
    combinatorial adjacency test (valid because the cone is pointed).
    """
    rays = [tuple(int(i == j) for j in range(num_vars)) for i in range(num_vars)]
    for a in equations:
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        pos = [(r, v) for r, v in zip(rays, vals) if v > 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        supports = [frozenset(i for i, x in enumerate(r) if x) for r in rays]
        new = list(zero)
        for rp, vp in pos:
            sp = frozenset(i for i, x in enumerate(rp) if x)
            for rn, vn in neg:
                sn = frozenset(i for i, x in enumerate(rn) if x)
                union = sp | sn
                adjacent = True
                for r, s in zip(rays, supports):
                    if r is rp or r is rn:
                        continue
                    if s <= union:
                        adjacent = False
                        break
                if adjacent:
                    # vp > 0 > vn, so vp * rn - vn * rp is nonnegative
                    comb = tuple(vp * y + (-vn) * x for x, y in zip(rp, rn))
                    new.append(_primitive(comb))
        rays = []
        seen = set()
        for r in new:
            r = _primitive(r)
            if r not in seen:
                seen.add(r)
                rays.append(r)
    return sorted(rays)


def minimal_supports(rays):
    """Inclusion-minimal supports among a set of rays."""
    supports = {frozenset(i for i, x in enumerate(r) if x) for r in rays}
    return sorted((s for s in supports
                   if not any(t < s for t in supports)),
                  key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# Box points of a simplicial cone.


def box_count(rays):
    """Number of lattice points Sum a_i r_i with a_i in (0, 1]."""
    if not rays:
        return 1
    cols = list(rays)
    M = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
    diag, _, _ = smith_normal_form(M)
    if len(diag) != len(cols):
        raise ValueError("rays are not linearly independent")
    out = 1
    for s in diag:
        out *= s
    return out


def box_points(rays):
    """Lattice points Sum a_i r_i with every a_i in (0, 1], as tuples.

    Computed through the Smith normal form of the matrix whose columns are
    the (linearly independent) rays: residue classes of the quotient lattice
    give one representative each, folded into the half-open box.
    """
    if not rays:
        return [()]
    k = len(rays)
    m = len(rays[0])
    M = [[rays[j][i] for j in range(k)] for i in range(m)]
    diag, U, V = smith_normal_form(M)
    if len(diag) != k:
        raise ValueError("rays are not linearly independent")
    points = []
    lcm = 1
    for s in diag:
        lcm = lcm // gcd(lcm, s) * s
    mult = [lcm // s for s in diag]
    # a_j (numerator over lcm) ranges over V . (c / diag); fold each into
    # (0, 1]: numerators shifted to {1, ..., lcm}, integers mapping to 1
    scaled_V = [[V[i][j] * mult[j] for j in range(k)] for i in range(k)]

    def rec(idx, c):
        if idx == k:
            a = [(sum(scaled_V[i][j] * c[j] for j in range(k)) - 1) % lcm + 1
                 for i in range(k)]
            x = []
            for i in range(m):
                v = sum(rays[j][i] * a[j] for j in range(k))
                assert v % lcm == 0
                x.append(v // lcm)
            points.append(tuple(x))
            return
        for ci in range(diag[idx]):
            rec(idx + 1, c + [ci])

    rec(0, [])
    assert len(set(points)) == len(points)
    return sorted(points)


# ---------------------------------------------------------------------------
# The monoid, its faces, and region decompositions.


class SimplicialPiece:
    """An open simplicial cone: relint of the cone on linearly independent rays.

    Its lattice-point generating function is
    (sum over box points Z^beta) / prod over rays (1 - Z^ray).
    """

    __slots__ = ("rays", "_box")

    def __init__(self, rays):
        self.rays = tuple(tuple(r) for r in rays)
        self._box = None

    @property
    def dim(self):
        return len(self.rays)

    def box(self):
        if self._box is None:
            self._box = box_points(self.rays)
        return self._box

    def count_box(self):
        return box_count(self.rays)

    def __repr__(self):
        return f"SimplicialPiece(rays={self.rays})"


class DiophantineMonoid:
    """Nonnegative integer solutions of a homogeneous system A x = 0.

    ray_order_key, if given, fixes the total order of the extreme rays used
    by the pulling triangulation (smaller key pulled first).
    """

    def __init__(self, num_vars, equations, ray_order_key=None):
        self.num_vars = num_vars
        self.equations = [tuple(e) for e in equations]
        self._rays = None
        self._faces = None
        self._cells = {}
        self._tri = {}
        self._fdim = {}
        self._supports = {}
        self._ray_order_key = ray_order_key

    def rays(self):
        if self._rays is None:
            rays = extreme_rays(self.equations, self.num_vars)
            if self._ray_order_key is not None:
                rays = sorted(rays, key=self._ray_order_key)
            self._rays = rays
        return self._rays

    def contains(self, x):
        return (all(v >= 0 for v in x)
                and all(sum(a * b for a, b in zip(e, x)) == 0
                        for e in self.equations))

    def support(self, ray):
        s = self._supports.get(ray)
        if s is None:
            s = frozenset(i for i, x in enumerate(ray) if x)
            self._supports[ray] = s
        return s

    def face_lattice(self):
        """All faces, encoded by their support sets (unions of ray supports)."""
        if self._faces is None:
            supports = [self.support(r) for r in self.rays()]
            faces = {frozenset()}
            frontier = {frozenset()}
            while frontier:
                nxt = set()
                for B in frontier:
                    for s in supports:
                        B2 = B | s
                        if B2 not in faces:
                            faces.add(B2)
                            nxt.add(B2)
                frontier = nxt
            self._faces = sorted(faces, key=lambda s: (len(s), sorted(s)))
        return self._faces

    def face_rays(self, B):
        return [r for r in self.rays() if self.support(r) <= B]

    def face_dim(self, B):
        B = frozenset(B)
        if B not in self._fdim:
            self._fdim[B] = matrix_rank(self.face_rays(B))
        return self._fdim[B]

    def triangulation(self, B):
        """Pulling triangulation of the face with support B.

        Returns a list of maximal simplices, each a tuple of rays.  The
        first ray of the face in the monoid's ray order is pulled; the
        simplices are that ray joined with the triangulations of the facets
        not containing it.
        """
        B = frozenset(B)
        if B in self._tri:
            return self._tri[B]
        rays = self.face_rays(B)
        if not rays:
            out = []
        else:
            d = matrix_rank(rays)
            if len(rays) == d:
                out = [tuple(rays)]
            else:
                v = rays[0]
                sv = self.support(v)
                facets = [F for F in self.face_lattice()
                          if F < B and self.face_dim(F) == d - 1]
                # keep only maximal ones (true geometric facets)
                facets = [F for F in facets
                          if not any(F < G for G in facets if G != F)]
                out = []
                for F in facets:
                    if sv <= F:
                        continue
                    for simplex in self.triangulation(F):
                        out.append((v,) + simplex)
        self._tri[B] = out
        return out

    def cells(self, B):
        """Open simplicial pieces whose disjoint union is relint of face B.

        These are the faces of the pulling triangulation of B that are not
        contained in the boundary, i.e. the subsets of maximal simplices
        whose ray supports cover all of B.
        """
        B = frozenset(B)
        if B in self._cells:
            return self._cells[B]
        if not B:
            out = [SimplicialPiece(())]
        else:
            seen = set()
            out = []
            for simplex in self.triangulation(B):
                n = len(simplex)
                for mask in range(1, 1 << n):
                    subset = tuple(simplex[i] for i in range(n)
                                   if mask >> i & 1)
                    if subset in seen:
                        continue
                    seen.add(subset)
                    cover = frozenset()
                    for r in subset:
                        cover |= self.support(r)
                    if cover == B:
                        out.append(SimplicialPiece(subset))
        self._cells[B] = out
        return out


def decompose_region(monoid: DiophantineMonoid, A, C):
    """Open simplicial pieces whose disjoint union is the region.

    The region collects the monoid elements x with x_i > 0 for i in A and
    x_i = 0 outside C.  Such x lie in the relative interior of the face
    supp(x), so the region is the disjoint union of the relints of the faces
    B with A <= B <= C.
    """
    pieces = []
    for B, cells in decompose_region_by_face(monoid, A, C):
        pieces.extend(cells)
    return pieces


def decompose_region_by_face(monoid: DiophantineMonoid, A, C):
    """Like decompose_region, but keeps each face's cells together.

    Summing a face's cells first is much cheaper than summing all pieces
    at once, because cells of one face draw their denominator factors from
    that face's small ray pool.
    """
    A = frozenset(A)
    C = frozenset(C)
    out = []
    for B in monoid.face_lattice():
        if A <= B <= C:
            out.append((B, monoid.cells(B)))
    return out


def genfun_piece(piece: SimplicialPiece, vars):
    num = LaurentPolynomial(vars, {})
    terms = {}
    for b in piece.box():
        terms[b] = terms.get(b, 0) + 1
    num = LaurentPolynomial(vars, terms) if piece.rays else \
        LaurentPolynomial.one(vars)
    den = {}
    for r in piece.rays:
        den[r] = den.get(r, 0) + 1
    return FactoredRationalFunction(num, den)


def genfun_region(monoid: DiophantineMonoid, A, C, vars=None):
    """Multivariate generating function Sum over region of Z^x."""
    if vars is None:
        vars = tuple(f"z{i+1}" for i in range(monoid.num_vars))
    pieces = decompose_region(monoid, A, C)
    return rf_sum([genfun_piece(p, vars) for p in pieces], vars=vars)


def region_dump(monoid: DiophantineMonoid, A, C):
    """Debug text for a region: one line per piece, "dim; quasigens; #box".

    Deterministic across runs for fixed inputs and ray ordering, so the
    output is suitable as a golden-file fixture.
    """
    lines = []
    for piece in decompose_region(monoid, A, C):
        gens = ",".join(str(tuple(r)) for r in piece.rays)
        lines.append(f"{piece.dim}; {gens}; {piece.count_box()}")
    return "\n".join(lines)
