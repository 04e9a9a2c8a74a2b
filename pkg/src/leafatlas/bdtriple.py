"""Belavin-Drinfeld triples: validation, the induced partial order on
positive roots, the Cartan r0 solver, abstract r-matrix assembly, and the
Levi induction chain.

The r0 conventions: r0 is a rational matrix in the basis dual to the simple
roots under the invariant form; the symmetric part of any admissible r0 is
half the Cartan Casimir block.  The constraint system coming from the triple
is solved exactly; the canonical solution zeroes the lexicographically first
free parameters of the skew part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    identity,
    inverse,
    mat,
    matmul,
    matvec,
    msub,
    rref,
    transpose,
    vec,
)
from .rootsys import RootSystem, form_pairing

__all__ = [
    "BDTriple",
    "CartanTerm",
    "AbstractRMatrix",
    "InductionChain",
    "TripleError",
    "NotBijective",
    "NotIsometry",
    "NotNilpotent",
    "Infeasible",
    "TargetThetaNotIsometry",
    "validate_triple",
    "partial_order_pairs",
    "solve_r0",
    "assemble_r",
    "induction_chain",
    "omega0_matrix",
    "check_cartan_term",
    "tau_linear_matrix",
    "enumerate_valid_triples",
    "cg_triple",
    "cg_theta_target",
]


class TripleError(ValueError):
    pass


class NotBijective(TripleError):
    pass


class NotIsometry(TripleError):
    pass


class NotNilpotent(TripleError):
    pass


class Infeasible(ValueError):
    pass


class TargetThetaNotIsometry(ValueError):
    pass


@dataclass(frozen=True)
class BDTriple:
    """Validated triple: two simple-root index sets and a nilpotent isometry."""

    gamma1: tuple[int, ...]
    gamma2: tuple[int, ...]
    tau: tuple[tuple[int, int], ...]
    ord_tau: int

    @property
    def tau_map(self) -> dict[int, int]:
        return dict(self.tau)

    @property
    def tau_inv_map(self) -> dict[int, int]:
        return {j: i for i, j in self.tau}


@dataclass(frozen=True)
class CartanTerm:
    """Rational matrix of r0 on h in the simple-root-dual basis.

    Constructed through solve_r0 (validated) or directly (unvalidated, for
    deliberately degenerate fixtures); check_cartan_term re-validates.
    """

    r0: Matrix


@dataclass(frozen=True)
class AbstractRMatrix:
    """Basis-free r-matrix data: Cartan part, diagonal pairs, wedge pairs."""

    cartan: CartanTerm
    diagonal_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    wedge_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


@dataclass(frozen=True)
class InductionChain:
    """Sequence of (ambient simple-root index set, triple) down to empty."""

    steps: tuple[tuple[frozenset[int], BDTriple], ...]


def _as_tau_pairs(tau) -> tuple[tuple[int, int], ...]:
    if isinstance(tau, dict):
        items = tau.items()
    else:
        items = tau
    return tuple(sorted((int(i), int(j)) for i, j in items))


def validate_triple(rs: RootSystem, gamma1, gamma2, tau) -> BDTriple:
    """Check bijectivity, isometry and nilpotency; compute ord_tau."""
    g1 = tuple(sorted(int(i) for i in gamma1))
    g2 = tuple(sorted(int(i) for i in gamma2))
    pairs = _as_tau_pairs(tau)
    for idx in g1 + g2:
        if not 0 <= idx < rs.rank:
            raise TripleError(f"simple-root index out of range: {idx}")

    domain = [i for i, _ in pairs]
    image = [j for _, j in pairs]
    if sorted(domain) != list(g1) or len(set(domain)) != len(domain):
        raise NotBijective("tau domain does not match gamma1")
    if sorted(image) != list(g2) or len(set(image)) != len(image):
        raise NotBijective("tau image does not match gamma2")

    tmap = dict(pairs)
    simple = rs.simple_roots
    for a in g1:
        for b in g1:
            lhs = form_pairing(rs, simple[tmap[a]], simple[tmap[b]])
            rhs = form_pairing(rs, simple[a], simple[b])
            if lhs != rhs:
                raise NotIsometry(
                    f"pairing of (alpha_{a + 1}, alpha_{b + 1}) not preserved: "
                    f"{rhs} -> {lhs}"
                )

    g1set, g2set = set(g1), set(g2)
    ord_tau = 0
    for start in g1:
        cur = start
        seen = [start]
        n = 0
        while True:
            cur = tmap[cur]
            n += 1
            if cur in g2set and cur not in g1set:
                break
            if cur in seen:
                cycle = seen[seen.index(cur):] + [cur]
                names = " -> ".join(f"alpha_{c + 1}" for c in cycle)
                raise NotNilpotent(f"tau cycles: {names}")
            seen.append(cur)
        ord_tau = max(ord_tau, n)
    return BDTriple(gamma1=g1, gamma2=g2, tau=pairs, ord_tau=ord_tau)


def tau_linear_matrix(rs: RootSystem, triple: BDTriple) -> Matrix:
    """Linear extension of tau to root coordinates (e_i -> e_tau(i)).

    Only meaningful on vectors supported on gamma1.
    """
    k = rs.cartan_rank
    cols = []
    tmap = triple.tau_map
    for j in range(k):
        if j in tmap:
            cols.append(tuple(1 if t == tmap[j] else 0 for t in range(k)))
        else:
            cols.append(tuple(0 for _ in range(k)))
    return mat(tuple(tuple(cols[j][t] for j in range(k)) for t in range(k)))


def _supported_on(v, indices: set[int]) -> bool:
    return all(x == 0 for t, x in enumerate(v) if t not in indices)


def levi_positive_roots(rs: RootSystem, indices) -> tuple[tuple[int, ...], ...]:
    s = set(indices)
    return tuple(a for a in rs.positive_roots if _supported_on(a, s))


def partial_order_pairs(rs: RootSystem, triple: BDTriple):
    """All related pairs (alpha, beta), alpha < beta, over the positive roots.

    beta runs over the successive tau-images of alpha; the chain continues
    while the current root stays inside the gamma1-generated subsystem.
    """
    tlin = tau_linear_matrix(rs, triple)
    g1 = set(triple.gamma1)
    pairs = []
    for alpha in levi_positive_roots(rs, g1):
        cur = alpha
        while _supported_on(cur, g1):
            nxt = tuple(int(x) for x in matvec(tlin, vec(cur)))
            if not rs.is_positive_root(nxt):
                raise AssertionError("tau image of a positive root is not a root")
            pairs.append((alpha, nxt))
            cur = nxt
    return sorted(pairs)


def omega0_matrix(rs: RootSystem) -> Matrix:
    """Cartan block of the Casimir for the invariant form: gram^{-1}."""
    return inverse(rs.gram)


def check_cartan_term(rs: RootSystem, triple: BDTriple, term: CartanTerm) -> None:
    """Raise Infeasible unless both r0 constraints hold exactly."""
    m = term.r0
    if msub(madd_t(m), omega0_matrix(rs)) != zero_like(m):
        raise Infeasible("r0 + r0^T does not equal the Cartan Casimir block")
    g = rs.gram
    for a_idx, t_idx in triple.tau:
        a = vec(rs.simple_roots[a_idx])
        t = vec(rs.simple_roots[t_idx])
        lhs = [
            x + y
            for x, y in zip(
                matvec(transpose(m), matvec(g, t)), matvec(m, matvec(g, a))
            )
        ]
        if any(x != 0 for x in lhs):
            raise Infeasible(
                f"r0 violates the slot constraint for alpha_{a_idx + 1}"
            )


def madd_t(m: Matrix) -> Matrix:
    return tuple(
        tuple(m[i][j] + m[j][i] for j in range(len(m))) for i in range(len(m))
    )


def zero_like(m: Matrix) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in row) for row in m)


def solve_r0(
    rs: RootSystem,
    triple: BDTriple,
    mode: str = "canonical",
    *,
    matrix: Matrix | None = None,
    theta_target: Matrix | None = None,
) -> CartanTerm:
    """Solve the two r0 constraints exactly.

    canonical: symmetric part = half the Cartan Casimir, skew part from
    deterministic pivoting with the lexicographically first free variables
    set to zero.  match_theta: additionally pins the Cayley transform on h
    to the supplied isometry.  from_file: validates a supplied matrix.
    """
    k = rs.cartan_rank
    g = rs.gram
    omega = omega0_matrix(rs)

    if mode == "from_file":
        if matrix is None:
            raise ValueError("from_file mode needs a matrix")
        term = CartanTerm(r0=mat(matrix))
        check_cartan_term(rs, triple, term)
        return term

    if mode == "match_theta":
        if theta_target is None:
            raise ValueError("match_theta mode needs a target matrix")
        t = mat(theta_target)
        if matmul(matmul(transpose(t), g), t) != g:
            raise TargetThetaNotIsometry("target does not preserve the form")
        t_minus_1 = msub(t, identity(k))
        try:
            inv = inverse(t_minus_1)
        except ValueError:
            raise TargetThetaNotIsometry(
                "target has fixed vectors; the Cayley transform is undefined"
            ) from None
        m = matmul(matmul(t, inv), omega)
        term = CartanTerm(r0=m)
        try:
            check_cartan_term(rs, triple, term)
        except Infeasible as e:
            raise Infeasible(f"target theta incompatible with the triple: {e}") from None
        return term

    if mode != "canonical":
        raise ValueError(f"unknown r0 mode: {mode!r}")

    # unknowns: entries s_ij (i<j) of the skew part S; r0 = omega/2 + S
    unknowns = [(i, j) for i in range(k) for j in range(i + 1, k)]
    index = {p: t for t, p in enumerate(unknowns)}
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for a_idx, t_idx in triple.tau:
        a = vec(rs.simple_roots[a_idx])
        t = vec(rs.simple_roots[t_idx])
        d = matvec(g, tuple(x - y for x, y in zip(a, t)))
        target = tuple(-(x + y) / 2 for x, y in zip(a, t))
        # S·d = target, with S skew built from the unknowns
        for r in range(k):
            row = [Fraction(0)] * len(unknowns)
            for c in range(k):
                if r == c:
                    continue
                coeff = d[c]
                if coeff == 0:
                    continue
                if r < c:
                    row[index[(r, c)]] += coeff
                else:
                    row[index[(c, r)]] -= coeff
            rows.append(row)
            rhs.append(target[r])

    if unknowns:
        aug = tuple(tuple(row) + (b,) for row, b in zip(rows, rhs))
        red, pivots = rref(aug)
        if len(unknowns) in pivots:
            raise Infeasible("r0 constraint system inconsistent")
        sol = [Fraction(0)] * len(unknowns)
        for i, c in enumerate(pivots):
            sol[c] = red[i][len(unknowns)]
    else:
        if any(b != 0 for b in rhs):
            raise Infeasible("r0 constraint system inconsistent")
        sol = []

    s = [[Fraction(0)] * k for _ in range(k)]
    for (i, j), val in zip(unknowns, sol):
        s[i][j] = val
        s[j][i] = -val
    half = mscale_half(omega)
    m = tuple(
        tuple(half[i][j] + s[i][j] for j in range(k)) for i in range(k)
    )
    term = CartanTerm(r0=m)
    check_cartan_term(rs, triple, term)
    return term


def mscale_half(m: Matrix) -> Matrix:
    return tuple(tuple(x / 2 for x in row) for row in m)


def assemble_r(rs: RootSystem, triple: BDTriple, r0: CartanTerm) -> AbstractRMatrix:
    diag = tuple(
        (tuple(-x for x in alpha), alpha) for alpha in rs.positive_roots
    )
    wedge = tuple(
        (tuple(-x for x in alpha), beta)
        for alpha, beta in partial_order_pairs(rs, triple)
    )
    return AbstractRMatrix(cartan=r0, diagonal_pairs=diag, wedge_pairs=wedge)


def induction_chain(rs: RootSystem, triple: BDTriple) -> InductionChain:
    """Iterated restriction to the Levi of gamma2 until gamma1 is empty."""
    steps = [(frozenset(range(rs.rank)), triple)]
    cur = triple
    while cur.gamma1:
        ambient = frozenset(cur.gamma2)
        core = sorted(set(cur.gamma1) & set(cur.gamma2))
        tmap = cur.tau_map
        new_tau = {i: tmap[i] for i in core}
        nxt = validate_triple(rs, core, sorted(new_tau.values()), new_tau)
        if nxt.ord_tau != cur.ord_tau - 1:
            raise AssertionError(
                "induction step did not decrement ord by exactly 1"
            )
        steps.append((ambient, nxt))
        cur = nxt
    return InductionChain(steps=tuple(steps))


def cg_triple(rs: RootSystem) -> BDTriple:
    """The shift triple on A_n: gamma1 = first n-1 simple roots, tau(i) = i+1."""
    n = rs.rank
    return validate_triple(
        rs,
        range(n - 1),
        range(1, n),
        {i: i + 1 for i in range(n - 1)},
    )


def cg_theta_target(rs: RootSystem) -> Matrix:
    """Cayley-transform target on h for the shift triple on A_n.

    Sends the i-th coroot to the (i+1)-st and the last one to minus the sum
    of all of them (the block-swap action on diagonal matrices).
    """
    n = rs.rank
    cols = []
    for i in range(n):
        if i < n - 1:
            cols.append([1 if t == i + 1 else 0 for t in range(n)])
        else:
            cols.append([-1] * n)
    return mat([[cols[j][i] for j in range(n)] for i in range(n)])


def _isometry_bijections(rs: RootSystem, g1: tuple[int, ...], g2: tuple[int, ...]):
    """All isometric bijections g1 -> g2 (backtracking on pair constraints)."""
    g1 = list(g1)
    out: list[dict[int, int]] = []

    def extend(pos: int, used: set[int], acc: dict[int, int]):
        if pos == len(g1):
            out.append(dict(acc))
            return
        a = g1[pos]
        for b in g2:
            if b in used:
                continue
            ok = True
            for a2, b2 in acc.items():
                if form_pairing(
                    rs, rs.simple_roots[b], rs.simple_roots[b2]
                ) != form_pairing(rs, rs.simple_roots[a], rs.simple_roots[a2]):
                    ok = False
                    break
            if ok and form_pairing(
                rs, rs.simple_roots[b], rs.simple_roots[b]
            ) == form_pairing(rs, rs.simple_roots[a], rs.simple_roots[a]):
                acc[a] = b
                extend(pos + 1, used | {b}, acc)
                del acc[a]

    extend(0, set(), {})
    return out


def enumerate_valid_triples(rs: RootSystem) -> tuple[BDTriple, ...]:
    """Every valid triple on the root system (exhaustive; small ranks only)."""
    from itertools import combinations

    n = rs.rank
    found = []
    indices = range(n)
    for size in range(n + 1):
        for g1 in combinations(indices, size):
            for g2 in combinations(indices, size):
                for tmap in _isometry_bijections(rs, g1, g2):
                    try:
                        found.append(validate_triple(rs, g1, g2, tmap))
                    except TripleError:
                        continue
    return tuple(found)
