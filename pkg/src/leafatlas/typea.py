"""Exact matrix layer for sl(n+1) / SL(n+1).

Chevalley conventions: the root vector for the interval root eps_i - eps_j
is the matrix unit E_ij, the coroot of the i-th simple root is
E_ii - E_{i+1,i+1}, and the invariant form is the trace form.  Everything
is exact rational: tensors are sparse dictionaries over matrix-unit pairs,
group elements carry a det = 1 constraint, algebra elements trace = 0.

Weyl representatives are permutation matrices, with a -1 placed in the
first moved column whenever the permutation is odd, so that every
representative has determinant one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bdtriple import BDTriple, CartanTerm, partial_order_pairs
from .decomp import Decomposition
from .leafclass import NotMinimalRep
from .linalg import (
    Matrix,
    det,
    frac,
    identity,
    inverse,
    mat,
    matmul,
    matvec,
    rank,
    transpose,
)
from .rootsys import RootSystem, build_root_system
from .weyl import (
    ParabolicSubgroup,
    WeylElement,
    compose,
    decompose_min,
    make_element,
    right_descent,
)

__all__ = [
    "MatrixElement",
    "TensorElement",
    "TwistAutomorphism",
    "ThetaPrime",
    "ParabolicBlocks",
    "SubalgebraNotPreserved",
    "NotInLevi",
    "matrix_element",
    "matrix_from_text",
    "matrix_to_text",
    "realize_r",
    "casimir_tensor",
    "check_cybe",
    "check_symmetric_part",
    "weyl_to_perm",
    "perm_to_weyl",
    "wdot_matrix",
    "bruhat_decompose",
    "build_theta_prime",
    "conjugation_twist",
    "identity_twist",
    "chain_twist",
    "tc_orbit_dim",
    "normalize_coset",
    "cg_sigma",
    "cg_orbit_correspondence",
]


class SubalgebraNotPreserved(ValueError):
    pass


class NotInLevi(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix and tensor containers


@dataclass(frozen=True)
class MatrixElement:
    """Square rational matrix with an exact group or algebra constraint."""

    entries: Matrix
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "entries", mat(self.entries))
        if self.kind == "group":
            if det(self.entries) != 1:
                raise ValueError("group element must have determinant 1")
        elif self.kind == "algebra":
            tr = sum(self.entries[i][i] for i in range(len(self.entries)))
            if tr != 0:
                raise ValueError("algebra element must be traceless")
        else:
            raise ValueError(f"unknown kind: {self.kind!r}")

    @property
    def size(self) -> int:
        return len(self.entries)


def matrix_element(rows, kind: str) -> MatrixElement:
    return MatrixElement(entries=mat(rows), kind=kind)


def matrix_from_text(text: str, kind: str) -> MatrixElement:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(tuple(Fraction(tok) for tok in line.split()))
    return matrix_element(rows, kind)


def matrix_to_text(m: MatrixElement | Matrix) -> str:
    entries = m.entries if isinstance(m, MatrixElement) else m
    return "\n".join(" ".join(str(x) for x in row) for row in entries)


class TensorElement:
    """Sparse tensor over matrix-unit bases of gl(size)^{arity}.

    Keys are tuples of (i, j) index pairs, one per leg; values rational.
    """

    __slots__ = ("size", "arity", "coefficients")

    def __init__(self, size: int, arity: int, coefficients=None):
        self.size = size
        self.arity = arity
        self.coefficients: dict = {}
        if coefficients:
            for key, val in coefficients.items():
                self.add_term(key, val)

    def add_term(self, key, coeff) -> None:
        coeff = frac(coeff)
        if coeff == 0:
            return
        cur = self.coefficients.get(key)
        new = coeff if cur is None else cur + coeff
        if new == 0:
            self.coefficients.pop(key, None)
        else:
            self.coefficients[key] = new

    def is_zero(self) -> bool:
        return not self.coefficients

    def swap_legs(self) -> "TensorElement":
        if self.arity != 2:
            raise ValueError("swap_legs needs arity 2")
        out = TensorElement(self.size, 2)
        for (a, b), val in self.coefficients.items():
            out.add_term((b, a), val)
        return out

    def legs_traceless(self) -> bool:
        for leg in range(self.arity):
            sums: dict = {}
            for key, val in self.coefficients.items():
                i, j = key[leg]
                if i != j:
                    continue
                rest = key[:leg] + key[leg + 1:]
                sums[rest] = sums.get(rest, Fraction(0)) + val
            if any(v != 0 for v in sums.values()):
                return False
        return True

    def as_matrix(self) -> Matrix:
        """Dense (size^arity) x (size^arity)... for arity 2: size^2 square."""
        if self.arity != 2:
            raise ValueError("dense form implemented for arity 2 only")
        n = self.size
        rows = [[Fraction(0)] * (n * n) for _ in range(n * n)]
        for ((a, b), (c, d)), val in self.coefficients.items():
            rows[a * n + b][c * n + d] = val
        return tuple(tuple(row) for row in rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.size == other.size
            and self.arity == other.arity
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return (
            f"TensorElement(size={self.size}, arity={self.arity}, "
            f"terms={len(self.coefficients)})"
        )


# ---------------------------------------------------------------------------
# roots as intervals, diagonals as coroot coordinates


def root_to_interval(root) -> tuple[int, int]:
    """Interval (i, j) with the root vector E_ij; negatives give j < i."""
    if all(x >= 0 for x in root):
        support = [t for t, x in enumerate(root) if x != 0]
        lo, hi = support[0], support[-1]
        if any(root[t] != 1 for t in range(lo, hi + 1)):
            raise ValueError("not an interval root")
        return lo, hi + 1
    neg = tuple(-x for x in root)
    i, j = root_to_interval(neg)
    return j, i


def coroot_matrix(size: int, i: int) -> Matrix:
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[i][i] = Fraction(1)
    rows[i + 1][i + 1] = Fraction(-1)
    return tuple(tuple(r) for r in rows)


def unit_matrix(size: int, i: int, j: int) -> Matrix:
    rows = [[Fraction(0)] * size for _ in range(size)]
    rows[i][j] = Fraction(1)
    return tuple(tuple(r) for r in rows)


def diag_to_coroot_coords(diag) -> tuple[Fraction, ...]:
    acc = Fraction(0)
    out = []
    for x in diag[:-1]:
        acc += frac(x)
        out.append(acc)
    return tuple(out)


def coroot_coords_to_diag(coords) -> tuple[Fraction, ...]:
    prev = Fraction(0)
    out = []
    for c in coords:
        out.append(frac(c) - prev)
        prev = frac(c)
    out.append(-prev)
    return tuple(out)


# ---------------------------------------------------------------------------
# r-matrix realization and the classical Yang-Baxter check


def _cartan_tensor_terms(t: TensorElement, m: Matrix) -> None:
    n = len(m)
    for k in range(n):
        for l in range(n):
            if m[k][l] == 0:
                continue
            for ka, ks in (((k, k), 1), ((k + 1, k + 1), -1)):
                for la, ls in (((l, l), 1), ((l + 1, l + 1), -1)):
                    t.add_term((ka, la), m[k][l] * ks * ls)


def realize_r(n: int, triple: BDTriple, r0: CartanTerm) -> TensorElement:
    """Assemble the r-matrix tensor on sl(n+1) from a triple and r0."""
    rs = build_root_system(f"A{n}")
    for idx in triple.gamma1 + triple.gamma2:
        if idx >= n:
            raise ValueError("triple does not fit in A_n")
    t = TensorElement(n + 1, 2)
    _cartan_tensor_terms(t, r0.r0)
    for alpha in rs.positive_roots:
        i, j = root_to_interval(alpha)
        t.add_term(((j, i), (i, j)), 1)
    for alpha, beta in partial_order_pairs(rs, triple):
        i, j = root_to_interval(alpha)
        p, q = root_to_interval(beta)
        t.add_term(((j, i), (p, q)), 1)
        t.add_term(((p, q), (j, i)), -1)
    return t


def casimir_tensor(n: int) -> TensorElement:
    rs = build_root_system(f"A{n}")
    t = TensorElement(n + 1, 2)
    for i in range(n + 1):
        for j in range(n + 1):
            if i != j:
                t.add_term(((i, j), (j, i)), 1)
    _cartan_tensor_terms(t, inverse(rs.gram))
    return t


def check_symmetric_part(r: TensorElement) -> bool:
    total = TensorElement(r.size, 2, r.coefficients)
    for key, val in r.swap_legs().coefficients.items():
        total.add_term(key, val)
    return total == casimir_tensor(r.size - 1)


def _bracket_units(a: tuple[int, int], b: tuple[int, int]):
    """[E_a, E_b] expanded in matrix units: delta terms with signs."""
    out = []
    if a[1] == b[0]:
        out.append(((a[0], b[1]), 1))
    if b[1] == a[0]:
        out.append(((b[0], a[1]), -1))
    return out


def check_cybe(r: TensorElement) -> TensorElement:
    """Residual of the classical Yang-Baxter equation, arity-3 tensor."""
    res = TensorElement(r.size, 3)
    items = list(r.coefficients.items())
    for (a, b), x in items:
        for (c, d), y in items:
            coeff = x * y
            # [r_12, r_13]: bracket in leg 1
            for (u, s) in _bracket_units(a, c):
                res.add_term((u, b, d), coeff * s)
            # [r_12, r_23]: bracket in leg 2
            for (u, s) in _bracket_units(b, c):
                res.add_term((a, u, d), coeff * s)
            # [r_13, r_23]: bracket in leg 3
            for (u, s) in _bracket_units(b, d):
                res.add_term((a, c, u), coeff * s)
    return res


# ---------------------------------------------------------------------------
# permutations and Weyl representatives


def weyl_to_perm(w: WeylElement) -> tuple[int, ...]:
    """Permutation p with w(eps_i) = eps_{p(i)}, from the root-coordinate matrix."""
    n = len(w.matrix)
    cols = [tuple(w.matrix[r][i] for r in range(n)) for i in range(n)]

    def eps_vector(c):
        u = [c[0]]
        for t in range(1, n):
            u.append(c[t] - c[t - 1])
        u.append(-c[n - 1])
        return u

    perm = [None] * (n + 1)
    partial = [0] * n
    for i in range(n):
        partial = [x + y for x, y in zip(partial, cols[i])]
        u = eps_vector(partial)
        if i == 0:
            perm[0] = u.index(1)
        perm[i + 1] = u.index(-1)
    return tuple(perm)


def perm_to_weyl(rs: RootSystem, perm) -> WeylElement:
    n = rs.rank
    perm = tuple(perm)

    def root_coords(a: int, b: int):
        if a < b:
            return tuple(1 if a <= t < b else 0 for t in range(n))
        return tuple(-1 if b <= t < a else 0 for t in range(n))

    cols = [root_coords(perm[i], perm[i + 1]) for i in range(n)]
    m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return make_element(rs, m)


def wdot_matrix(w: WeylElement) -> Matrix:
    """Determinant-one permutation-matrix representative."""
    perm = weyl_to_perm(w)
    size = len(perm)
    sign = 1
    seen = [False] * size
    for i in range(size):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    rows = [[Fraction(0)] * size for _ in range(size)]
    flip = next((i for i in range(size) if perm[i] != i), None)
    for i in range(size):
        val = Fraction(-1) if (sign < 0 and i == flip) else Fraction(1)
        rows[perm[i]][i] = val
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# Bruhat decomposition for standard parabolic pairs


@dataclass(frozen=True)
class ParabolicBlocks:
    """Standard parabolic: block triangular for a simple-root index set."""

    indices: frozenset[int]
    lower: bool = False

    @staticmethod
    def upper(indices) -> "ParabolicBlocks":
        return ParabolicBlocks(indices=frozenset(indices), lower=False)

    @staticmethod
    def lower_of(indices) -> "ParabolicBlocks":
        return ParabolicBlocks(indices=frozenset(indices), lower=True)


def block_labels(indices, size: int) -> tuple[int, ...]:
    labels = [0]
    for i in range(size - 1):
        labels.append(labels[-1] if i in indices else labels[-1] + 1)
    return tuple(labels)


def levi_projection(m: Matrix, indices, size: int) -> Matrix:
    labels = block_labels(indices, size)
    return tuple(
        tuple(
            m[r][c] if labels[r] == labels[c] else Fraction(0)
            for c in range(size)
        )
        for r in range(size)
    )


_RS_CACHE: dict[int, RootSystem] = {}


def _type_a(n: int) -> RootSystem:
    if n not in _RS_CACHE:
        _RS_CACHE[n] = build_root_system(f"A{n}")
    return _RS_CACHE[n]


def _add_row(work: list[list[Fraction]], dst: int, src: int, lam: Fraction):
    work[dst] = [x + lam * y for x, y in zip(work[dst], work[src])]


def _bruhat_core(g: Matrix, left_idx, right_idx):
    """g = p1 * wdot * p2 with both parabolics block upper triangular.

    Returns (p1, wdot, p2, w_min) with w_min the abstract minimal-length
    double-coset representative of the Borel-level permutation.
    """
    size = len(g)
    rs = _type_a(size - 1)
    work = [list(row) for row in g]
    p1 = [list(row) for row in identity(size)]
    p2 = [list(row) for row in identity(size)]
    assigned = [False] * size
    for c in range(size):
        pivot = None
        for r in range(size - 1, -1, -1):
            if not assigned[r] and work[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        assigned[pivot] = True
        for i in range(pivot):
            if not assigned[i] and work[i][c] != 0:
                lam = work[i][c] / work[pivot][c]
                _add_row(work, i, pivot, -lam)
                # g = p1 W p2 stays true: p1 <- p1 * (row op inverse)
                for r in range(size):
                    p1[r][pivot] += lam * p1[r][i]
        for c2 in range(c + 1, size):
            if work[pivot][c2] != 0:
                lam = work[pivot][c2] / work[pivot][c]
                for r in range(size):
                    work[r][c2] -= lam * work[r][c]
                for cc in range(size):
                    p2[c][cc] += lam * p2[c2][cc]

    monomial = tuple(tuple(row) for row in work)
    perm = [0] * size
    for c in range(size):
        perm[c] = next(r for r in range(size) if monomial[r][c] != 0)
    n = rs.rank

    def root_coords(a, b):
        if a < b:
            return tuple(1 if a <= t < b else 0 for t in range(n))
        return tuple(-1 if b <= t < a else 0 for t in range(n))

    cols = [root_coords(perm[i], perm[i + 1]) for i in range(n)]
    w_borel = make_element(
        rs, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    )

    # split monomial into the sign-convention representative times a diagonal
    wb = wdot_matrix(w_borel)
    diag = matmul(transpose(wb), monomial)
    p2m = matmul(diag, mat(p2))

    w1, w_min, w2 = decompose_min(
        rs,
        w_borel,
        ParabolicSubgroup.of(left_idx),
        ParabolicSubgroup.of(right_idx),
    )
    m1 = wdot_matrix(w1)
    mmin = wdot_matrix(w_min)
    p1m = matmul(mat(p1), m1)
    rest = matmul(transpose(mmin), matmul(transpose(m1), wb))
    p2m = matmul(rest, p2m)
    return p1m, mmin, p2m, w_min


_J_CACHE: dict[int, Matrix] = {}


def _antidiag(size: int) -> Matrix:
    if size not in _J_CACHE:
        _J_CACHE[size] = tuple(
            tuple(Fraction(1) if r + c == size - 1 else Fraction(0) for c in range(size))
            for r in range(size)
        )
    return _J_CACHE[size]


def bruhat_decompose(
    g: MatrixElement, left: ParabolicBlocks, right: ParabolicBlocks
) -> tuple[MatrixElement, MatrixElement, MatrixElement]:
    """Exact decomposition g = p1 * wdot * p2 for a standard parabolic pair."""
    if left.lower != right.lower:
        raise ValueError("mixed parabolic orientations are not supported")
    size = g.size
    if not left.lower:
        p1, wd, p2, _ = _bruhat_core(g.entries, left.indices, right.indices)
    else:
        j = _antidiag(size)
        rev = lambda s: frozenset(size - 2 - i for i in s)
        p1j, wdj, p2j, _ = _bruhat_core(
            matmul(j, matmul(g.entries, j)), rev(left.indices), rev(right.indices)
        )
        p1 = matmul(j, matmul(p1j, j))
        wd_raw = matmul(j, matmul(wdj, j))
        p2 = matmul(j, matmul(p2j, j))
        # restore the sign convention, folding the correction into p2
        rs = _type_a(size - 1)
        perm = [next(r for r in range(size) if wd_raw[r][c] != 0) for c in range(size)]
        n = rs.rank

        def root_coords(a, b):
            if a < b:
                return tuple(1 if a <= t < b else 0 for t in range(n))
            return tuple(-1 if b <= t < a else 0 for t in range(n))

        cols = [root_coords(perm[i], perm[i + 1]) for i in range(n)]
        w_abs = make_element(
            rs, tuple(tuple(cols[q][i] for q in range(n)) for i in range(n))
        )
        wd = wdot_matrix(w_abs)
        p2 = matmul(matmul(transpose(wd), wd_raw), p2)
    return (
        MatrixElement(p1, "group"),
        MatrixElement(wd, "group"),
        MatrixElement(p2, "group"),
    )


# ---------------------------------------------------------------------------
# the Levi isomorphism induced by tau, and twist automorphisms


@dataclass(frozen=True, eq=False)
class ThetaPrime:
    """Exact realization of the Levi isomorphism on sl(n+1).

    Root vectors map by the tau-interval with a bracket-consistent sign;
    the diagonal part maps through the Cartan Cayley-transform matrix in
    coroot coordinates.
    """

    size: int
    root_images: dict
    cartan: Matrix
    cartan_inverse: Matrix

    def _apply(self, x: Matrix, direction: int) -> Matrix:
        size = self.size
        images = self.root_images if direction > 0 else self._inverse_images()
        cart = self.cartan if direction > 0 else self.cartan_inverse
        out = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(size):
                if i == j or x[i][j] == 0:
                    continue
                hit = images.get((i, j))
                if hit is None:
                    raise SubalgebraNotPreserved(
                        f"entry ({i}, {j}) outside the isomorphism domain"
                    )
                (p, q), s = hit
                out[p][q] += x[i][j] * s
        diag = [x[i][i] for i in range(size)]
        if any(d != 0 for d in diag):
            coords = diag_to_coroot_coords(diag)
            new_diag = coroot_coords_to_diag(matvec(cart, coords))
            for i in range(size):
                out[i][i] += new_diag[i]
        return tuple(tuple(row) for row in out)

    def _inverse_images(self) -> dict:
        inv = {}
        for (i, j), ((p, q), s) in self.root_images.items():
            inv[(p, q)] = ((i, j), s)
        return inv

    def apply(self, x: Matrix) -> Matrix:
        return self._apply(x, 1)

    def apply_inverse(self, x: Matrix) -> Matrix:
        return self._apply(x, -1)


def build_theta_prime(rs: RootSystem, triple: BDTriple, d: Decomposition) -> ThetaPrime:
    size = rs.rank + 1
    tmap = triple.tau_map
    images: dict = {}
    # simple roots first, then longer intervals by bracket induction
    pos = sorted(
        (root_to_interval(a) for a in d.levi1_roots if all(x >= 0 for x in a)),
        key=lambda ij: ij[1] - ij[0],
    )
    for i, j in pos:
        if j == i + 1:
            t = tmap[i]
            images[(i, j)] = ((t, t + 1), 1)
        else:
            (p1, q1), s1 = images[(i, j - 1)]
            (p2, q2), s2 = images[(j - 1, j)]
            terms = _bracket_units((p1, q1), (p2, q2))
            if len(terms) != 1:
                raise AssertionError("interval image bracket is not a single unit")
            (u, s) = terms[0]
            images[(i, j)] = (u, s1 * s2 * s)
    for (i, j), ((p, q), s) in list(images.items()):
        images[(j, i)] = ((q, p), s)
    tp = ThetaPrime(
        size=size,
        root_images=images,
        cartan=d.theta_cartan,
        cartan_inverse=inverse(d.theta_cartan),
    )
    _validate_theta_prime(rs, d, tp)
    return tp


def _validate_theta_prime(rs: RootSystem, d: Decomposition, tp: ThetaPrime):
    """Bracket preservation over all pairs of Levi root vectors."""
    size = tp.size
    units = [
        root_to_interval(a) for a in d.levi1_roots
    ]
    mats = {ij: unit_matrix(size, *ij) for ij in units}

    def bracket(a: Matrix, b: Matrix) -> Matrix:
        return tuple(
            tuple(x - y for x, y in zip(ra, rb))
            for ra, rb in zip(matmul(a, b), matmul(b, a))
        )

    for ij in units:
        for kl in units:
            lhs = bracket(mats[ij], mats[kl])
            if not _in_domain(lhs, tp):
                raise AssertionError("Levi bracket left the isomorphism domain")
            got = tp.apply(lhs)
            want = bracket(tp.apply(mats[ij]), tp.apply(mats[kl]))
            if got != want:
                raise AssertionError(
                    f"bracket preservation fails on {ij}, {kl}"
                )


def _in_domain(x: Matrix, tp: ThetaPrime) -> bool:
    for i in range(tp.size):
        for j in range(tp.size):
            if i != j and x[i][j] != 0 and (i, j) not in tp.root_images:
                return False
    return True


@dataclass(frozen=True, eq=False)
class TwistAutomorphism:
    """Composition of conjugations and Levi-isomorphism applications."""

    steps: tuple

    def apply(self, x: Matrix) -> Matrix:
        cur = mat(x)
        for step in self.steps:
            if step[0] == "ad":
                _, g, g_inv = step
                cur = matmul(g, matmul(cur, g_inv))
            else:
                _, tp, direction = step
                cur = tp.apply(cur) if direction > 0 else tp.apply_inverse(cur)
        return cur


def identity_twist() -> TwistAutomorphism:
    return TwistAutomorphism(steps=())


def conjugation_twist(g: MatrixElement | Matrix) -> TwistAutomorphism:
    m = g.entries if isinstance(g, MatrixElement) else mat(g)
    return TwistAutomorphism(steps=(("ad", m, inverse(m)),))


def chain_twist(
    v1dot: Matrix, v2dot: Matrix, tp: ThetaPrime
) -> TwistAutomorphism:
    """x -> Ad_{v1dot} theta'^{-1} Ad_{v2dot} theta' (x)."""
    return TwistAutomorphism(
        steps=(
            ("theta", tp, 1),
            ("ad", mat(v2dot), inverse(mat(v2dot))),
            ("theta", tp, -1),
            ("ad", mat(v1dot), inverse(mat(v1dot))),
        )
    )


# ---------------------------------------------------------------------------
# twisted-conjugation orbit dimension


def _flatten(m: Matrix) -> tuple[Fraction, ...]:
    return tuple(x for row in m for x in row)


def tc_orbit_dim(f: MatrixElement, twist: TwistAutomorphism, subalgebra_roots) -> int:
    """Rank of x -> f twist(x) f^{-1} - x over the stable subalgebra span.

    The span is the full Cartan plus the root vectors of the given roots;
    central directions therefore contribute alongside the derived part.
    """
    size = f.size
    fm = f.entries
    fi = inverse(fm)
    basis: list[Matrix] = [coroot_matrix(size, i) for i in range(size - 1)]
    for root in subalgebra_roots:
        i, j = root_to_interval(root)
        basis.append(unit_matrix(size, i, j))
    images = []
    for b in basis:
        y = matmul(fm, matmul(twist.apply(b), fi))
        images.append(tuple(p - q for p, q in zip(_flatten(y), _flatten(b))))
    span_cols = [_flatten(b) for b in basis]
    span_rank = rank(transpose(mat(span_cols)))
    both = rank(transpose(mat(span_cols + images)))
    if both > span_rank:
        raise SubalgebraNotPreserved("twisted image leaves the subalgebra span")
    img_m = transpose(mat(images))
    return rank(img_m)


# ---------------------------------------------------------------------------
# the iterative coset normalization


def _signed_root_set(rs: RootSystem, indices) -> set:
    s = set(indices)
    out = set()
    for a in rs.positive_roots:
        if all(x == 0 for t, x in enumerate(a) if t not in s):
            out.add(a)
            out.add(tuple(-x for x in a))
    return out


def _stable_simple_set(rs: RootSystem, c: WeylElement, s_cur: frozenset) -> frozenset:
    """Simple indices spanning the roots of the current block whose whole
    forward c-orbit stays inside the block; c permutes that root set."""
    delta = _signed_root_set(rs, s_cur)
    guard = 4 * len(rs.positive_roots) + 4
    stable = set()
    for a in delta:
        seen = {a}
        cur = a
        ok = True
        for _ in range(guard):
            cur = c(cur)
            if cur not in delta:
                ok = False
                break
            if cur in seen:
                break
            seen.add(cur)
        else:
            raise AssertionError("orbit walk did not close")
        if ok:
            stable.add(a)
    s_next = frozenset(
        i
        for i in s_cur
        if tuple(1 if t == i else 0 for t in range(rs.rank)) in stable
    )
    for a in stable:
        if any(x != 0 for t, x in enumerate(a) if t not in s_next):
            raise AssertionError("stable root set is not parabolic")
    return s_next


def normalize_coset(
    l: MatrixElement, w: WeylElement, triple: BDTriple, d: Decomposition
) -> tuple[WeylElement, MatrixElement]:
    """Push (l, w) to the stable form (v, gK) by iterated Bruhat splitting.

    Each pass keeps only the block roots with full forward orbit inside the
    block (a set the accumulated element permutes, so both parabolics of
    the Bruhat step are standard), then splits off the minimal Weyl part
    and pushes the Levi factors back into the element.
    """
    size = l.size
    rs = _type_a(size - 1)
    labels = block_labels(frozenset(triple.gamma1), size)
    for r in range(size):
        for c in range(size):
            if labels[r] != labels[c] and l.entries[r][c] != 0:
                raise NotInLevi(f"entry ({r}, {c}) outside the Levi block pattern")
    if right_descent(rs, w, triple.gamma1) is not None:
        raise NotMinimalRep("w must be minimal in its right coset")

    s_cur = frozenset(triple.gamma1)
    g = l.entries
    c = w
    for _ in range(50):
        s_next = _stable_simple_set(rs, c, s_cur)
        if s_next == s_cur:
            break

        next_labels = block_labels(s_next, size)
        if all(
            g[r][cc] == 0
            for r in range(size)
            for cc in range(size)
            if next_labels[r] != next_labels[cc]
        ):
            # already inside the finer block: nothing to absorb, the
            # minimal Weyl part is trivial, so keep the representative
            s_cur = s_next
            continue

        p1, _, p2, wmin = _bruhat_core(g, s_next, s_next)
        gp = levi_projection(p1, s_next, size)
        gpp = levi_projection(p2, s_next, size)
        cmat = wdot_matrix(c)
        g = matmul(
            matmul(inverse(cmat), matmul(inverse(gpp), cmat)), gp
        )
        c = compose(rs, wmin, c)
        s_cur = s_next
    else:
        raise AssertionError("normalization did not terminate")

    if right_descent(rs, c, triple.gamma1) is not None:
        raise AssertionError("normalized representative is not coset-minimal")
    final_labels = block_labels(s_cur, size)
    for r in range(size):
        for cc in range(size):
            if final_labels[r] != final_labels[cc] and g[r][cc] != 0:
                raise AssertionError("stabilized element left its Levi block")
    return c, MatrixElement(g, "group")


# ---------------------------------------------------------------------------
# Cremmer-Gervais fixtures


def cg_sigma(rs: RootSystem, j: int) -> WeylElement:
    """Minimal representative with stable block gl(j): fixes 0..j-1, shifts
    the rest cyclically."""
    n = rs.rank
    perm = [0] * (n + 1)
    for i in range(n + 1):
        if i < j:
            perm[i] = i
        elif i < n:
            perm[i] = i + 1
        else:
            perm[i] = j
    return perm_to_weyl(rs, perm)


def cg_orbit_correspondence(n: int, j: int, b: MatrixElement | None):
    """Orbit dimension of the embedded block element versus plain gl(j)
    conjugation; their difference must equal n - j."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    rs = _type_a(n)
    size = n + 1
    if j == 0:
        f_entries = identity(size)
        gl_dim = 0
    else:
        bm = b.entries if isinstance(b, MatrixElement) else mat(b)
        if len(bm) != j:
            raise ValueError("block size mismatch")
        bdet = det(bm)
        if bdet == 0:
            raise ValueError("block must be invertible")
        rows = [[Fraction(0)] * size for _ in range(size)]
        for r in range(j):
            for c in range(j):
                rows[r][c] = bm[r][c]
        for t in range(j, size - 1):
            rows[t][t] = Fraction(1)
        rows[size - 1][size - 1] = 1 / bdet
        f_entries = tuple(tuple(r) for r in rows)
        bi = inverse(bm)
        images = []
        for p in range(j):
            for q in range(j):
                x = unit_matrix(j, p, q)
                y = matmul(bm, matmul(x, bi))
                images.append(
                    tuple(u - v for u, v in zip(_flatten(y), _flatten(x)))
                )
        gl_dim = rank(transpose(mat(images)))
    v = cg_sigma(rs, j)
    twist = conjugation_twist(wdot_matrix(v))
    roots = []
    for a in rs.positive_roots:
        if all(x == 0 for t, x in enumerate(a) if t >= j - 1):
            roots.append(a)
            roots.append(tuple(-x for x in a))
    f = MatrixElement(f_entries, "group")
    tc_dim = tc_orbit_dim(f, twist, roots)
    if tc_dim - gl_dim != n - j:
        raise AssertionError(
            f"correspondence gap {tc_dim - gl_dim} != {n - j}"
        )
    return tc_dim, gl_dim
