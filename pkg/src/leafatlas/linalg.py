"""Exact rational linear algebra.

Everything downstream needs exact zeros, so matrices are tuples of tuples of
``Fraction`` and all elimination is done over Q (or fraction-free over Z).
No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries) -> Vector:
    return tuple(frac(x) for x in entries)


def mat(rows) -> Matrix:
    m = tuple(tuple(frac(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zero_matrix(m: int, n: int) -> Matrix:
    zero = Fraction(0)
    return tuple((zero,) * n for _ in range(m))


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise ValueError("shape mismatch in matmul")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v) -> Vector:
    if shape(a)[1] != len(v):
        raise ValueError("shape mismatch in matvec")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def msub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mscale(c, a: Matrix) -> Matrix:
    c = frac(c)
    return tuple(tuple(c * x for x in row) for row in a)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise ValueError("length mismatch in dot")
    return sum((frac(x) * frac(y) for x, y in zip(u, v)), Fraction(0))


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def _int_rows(a: Matrix) -> list[list[int]]:
    # scale each row to integers; row scaling preserves rank
    out = []
    for row in a:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
    return out


def rank(a: Matrix) -> int:
    """Rank via fraction-free (Bareiss) elimination on a row-scaled copy."""
    if not a or not a[0]:
        return 0
    m = _int_rows(a)
    rows, cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def rref(a: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    rows = [list(row) for row in a]
    nr, nc = len(rows), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def solve(a: Matrix, b) -> Vector | None:
    """One solution of a·x = b, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    nr, nc = shape(a)
    aug = tuple(tuple(row) + (frac(bi),) for row, bi in zip(a, b))
    r, pivots = rref(aug)
    if nc in pivots:
        return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        x[c] = r[i][nc]
    return tuple(x)


def nullspace(a: Matrix) -> tuple[Vector, ...]:
    """Canonical basis of the right kernel (free variable = 1 pattern)."""
    nr, nc = shape(a)
    if nc == 0:
        return ()
    if nr == 0:
        return tuple(identity(nc))
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(nc):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * nc
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r[i][free]
        basis.append(tuple(v))
    return tuple(basis)


def inverse(a: Matrix) -> Matrix:
    n, m = shape(a)
    if n != m:
        raise ValueError("inverse of non-square matrix")
    aug = tuple(row + iden for row, iden in zip(a, identity(n)))
    r, pivots = rref(aug)
    if tuple(range(n)) != pivots[:n] or len(pivots) != n:
        raise ValueError("singular matrix")
    return tuple(row[n:] for row in r)


def det(a: Matrix) -> Fraction:
    n, m = shape(a)
    if n != m:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return Fraction(1)
    rows = [list(row) for row in a]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        result *= rows[c][c]
        inv = Fraction(1) / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result * sign


class Subspace:
    """Rational subspace of Q^ambient with a canonical reduced basis.

    The basis is stored as a matrix whose columns span the subspace; it is
    canonicalized through row reduction of the transposed generator list, so
    equal subspaces compare equal.
    """

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, vectors=()):
        self.ambient = ambient
        rows = [vec(v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        if rows:
            r, pivots = rref(tuple(rows))
            rows = [r[i] for i in range(len(pivots))]
        self.basis: Matrix = transpose(tuple(rows)) if rows else tuple(() for _ in range(ambient))

    @property
    def dim(self) -> int:
        return len(self.basis[0]) if self.ambient and self.basis else 0

    def vectors(self) -> tuple[Vector, ...]:
        """Basis as a tuple of column vectors."""
        return tuple(zip(*self.basis)) if self.dim else ()

    def contains(self, v) -> bool:
        if self.dim == 0:
            return all(frac(x) == 0 for x in v)
        return solve(self.basis, v) is not None

    def coords(self, v) -> Vector:
        c = solve(self.basis, v)
        if c is None:
            raise ValueError("vector not in subspace")
        return c

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace(self.ambient, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient)
        # columns of [U | -V] kernel give U-coordinates of intersection vectors
        stacked = tuple(
            tuple(self.basis[i]) + tuple(-x for x in other.basis[i])
            for i in range(self.ambient)
        )
        sols = nullspace(stacked)
        vecs = [matvec(self.basis, s[: self.dim]) for s in sols]
        return Subspace(self.ambient, vecs)

    def perp(self, gram: Matrix) -> "Subspace":
        """Orthogonal complement in the ambient space w.r.t. the form gram."""
        if self.dim == 0:
            return Subspace(self.ambient, tuple(identity(self.ambient)))
        return Subspace(self.ambient, nullspace(matmul(transpose(self.basis), gram)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def full_space(ambient: int) -> Subspace:
    return Subspace(ambient, tuple(identity(ambient)))


def subspace_from_columns(a: Matrix) -> Subspace:
    return Subspace(len(a), tuple(zip(*a)) if a and a[0] else ())


def map_rank_on(a: Matrix, sub: Subspace) -> int:
    """Rank of the linear map a restricted to the subspace (image dimension)."""
    if sub.dim == 0:
        return 0
    return rank(matmul(a, sub.basis))


# ---------------------------------------------------------------------------
# integer lattices


def _int_matrix(rows) -> list[list[int]]:
    out = [[int(x) for x in row] for row in rows]
    for row, orig in zip(out, rows):
        for x, y in zip(row, orig):
            if x != y:
                raise ValueError("non-integer entry in lattice data")
    return out


def row_hnf(rows) -> list[list[int]]:
    """Canonical row-style Hermite normal form; zero rows dropped.

    Pivots positive, entries above a pivot reduced into [0, pivot).
    """
    work = [list(r) for r in _int_matrix(rows)]
    if not work:
        return []
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        # gcd elimination below row r in column c
        while True:
            live = [i for i in range(r, len(work)) if work[i][c] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(work[i][c]))
            p = live[0]
            for i in live[1:]:
                q = work[i][c] // work[p][c]
                work[i] = [x - q * y for x, y in zip(work[i], work[p])]
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        if work[r][c] < 0:
            work[r] = [-x for x in work[r]]
        for i in range(r):
            q = work[i][c] // work[r][c]
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[r])]
        r += 1
    return [row for row in work[:r]]


def smith_normal_form(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (U, D, V) with U·a·V = D.

    U and V are unimodular; D is diagonal with d_i | d_{i+1}, d_i >= 0.
    """
    d = [list(r) for r in _int_matrix(a)]
    m = len(d)
    n = len(d[0]) if d else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        d[dst] = [x - q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal absolute value in the working block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, q)
                    if d[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, q)
                    if d[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # enforce divisibility of the remaining block by the pivot
        stuck = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    stuck = i
                    break
            if stuck is not None:
                break
        if stuck is not None:
            add_row(stuck, t, -1)
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


class Lattice:
    """Integer lattice in Z^ambient given by independent basis columns.

    The basis is canonicalized with a Hermite normal form so equal lattices
    compare equal.
    """

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient: int, columns=()):
        self.ambient = ambient
        rows = row_hnf([list(c) for c in columns])
        for r in rows:
            if len(r) != ambient:
                raise ValueError("lattice vector length mismatch")
        self.basis: Matrix = (
            transpose(mat(rows)) if rows else tuple(() for _ in range(ambient))
        )

    @property
    def rank(self) -> int:
        return len(self.basis[0]) if self.ambient and self.basis else 0

    def columns(self) -> tuple[Vector, ...]:
        return tuple(zip(*self.basis)) if self.rank else ()

    def contains(self, v) -> bool:
        if self.rank == 0:
            return all(frac(x) == 0 for x in v)
        c = solve(self.basis, v)
        return c is not None and all(x.denominator == 1 for x in c)

    def sum(self, other: "Lattice") -> "Lattice":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Lattice(self.ambient, self.columns() + other.columns())

    def intersection(self, other: "Lattice") -> "Lattice":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        if self.rank == 0 or other.rank == 0:
            return Lattice(self.ambient)
        a, b = self.basis, other.basis
        stacked = [
            [int(a[i][j]) for j in range(self.rank)]
            + [-int(b[i][j]) for j in range(other.rank)]
            for i in range(self.ambient)
        ]
        kernel = integer_kernel(stacked)
        cols = [matvec(a, k[: self.rank]) for k in kernel]
        return Lattice(self.ambient, cols)

    def rational_span(self) -> Subspace:
        return Subspace(self.ambient, self.columns())

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Lattice(ambient={self.ambient}, rank={self.rank})"


def integer_kernel(a) -> list[list[int]]:
    """Basis of the integer solution lattice of a·x = 0."""
    rows = _int_matrix(a)
    n = len(rows[0]) if rows else 0
    if n == 0:
        return []
    if not rows:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    u, d, v = smith_normal_form(rows)
    m = len(rows)
    kernel = []
    for j in range(n):
        diag = d[j][j] if j < min(m, n) else 0
        if diag == 0:
            kernel.append([v[i][j] for i in range(n)])
    return kernel


def quotient_invariants(sup: Lattice, sub: Lattice) -> tuple[tuple[int, ...], int]:
    """Invariant factors of sup/sub for sub a sublattice of sup.

    Returns (torsion factors > 1, free rank). Raises if sub is not contained
    in sup.
    """
    if sub.rank == 0:
        return ((), sup.rank)
    coords = []
    for c in sub.columns():
        x = solve(sup.basis, c)
        if x is None or any(e.denominator != 1 for e in x):
            raise ValueError("second lattice is not a sublattice of the first")
        coords.append([int(e) for e in x])
    # columns of the coordinate matrix express sub in the basis of sup
    a = [[coords[j][i] for j in range(len(coords))] for i in range(sup.rank)]
    _, d, _ = smith_normal_form(a)
    k = min(len(a), len(a[0]) if a else 0)
    diag = [d[i][i] for i in range(k) if d[i][i] != 0]
    free = sup.rank - len(diag)
    return tuple(x for x in diag if x > 1), free
