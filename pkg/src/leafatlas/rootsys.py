"""Reduced reductive root systems in simple-root coordinates.

A root system is specified by a label such as ``"A3"``, ``"B2xA1"`` or
``"A2+T1"`` (``T`` = central torus rank).  Roots are integer vectors in
simple-root coordinates; the invariant form is carried entirely by the gram
matrix, normalized so long roots have squared length 2 in every simple
component.  The central torus contributes an identity gram block and no
roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Lattice, Matrix, Subspace, frac, mat, matvec, vec

__all__ = [
    "RootSystem",
    "build_root_system",
    "form_pairing",
    "exp_kernel_lattice",
    "Lattice",
    "Subspace",
]

_LETTER_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 1,
    "C": lambda n: n >= 1,
    "D": lambda n: n >= 2,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class RootSystem:
    """Immutable root system data.

    type_label: the normalized input label.
    components: parsed (letter, rank) pairs for the simple factors.
    torus_rank: rank of the central torus summand.
    simple_roots: unit vectors, one per simple root, length cartan_rank.
    positive_roots: all positive roots as integer vectors.
    gram: matrix of the invariant form on simple-root coordinates.
    cartan_rank: dim h = semisimple rank + torus rank.
    """

    type_label: str
    components: tuple[tuple[str, int], ...]
    torus_rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    gram: Matrix
    cartan_rank: int

    @property
    def rank(self) -> int:
        """Number of simple roots (semisimple rank)."""
        return len(self.simple_roots)

    @property
    def all_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.positive_roots + tuple(
            tuple(-x for x in r) for r in self.positive_roots
        )

    def is_positive_root(self, v) -> bool:
        return tuple(v) in self._pos_set()

    def is_root(self, v) -> bool:
        t = tuple(v)
        return t in self._pos_set() or tuple(-x for x in t) in self._pos_set()

    def _pos_set(self) -> frozenset:
        cached = getattr(self, "_pos_cache", None)
        if cached is None:
            cached = frozenset(self.positive_roots)
            object.__setattr__(self, "_pos_cache", cached)
        return cached

    def coroot(self, alpha) -> tuple[Fraction, ...]:
        """2·alpha/(alpha,alpha) in the same coordinates."""
        norm = form_pairing(self, alpha, alpha)
        return tuple(Fraction(2, 1) * frac(x) / norm for x in alpha)

    def reflect(self, i: int, v) -> tuple[int, ...]:
        """Reflection of v through the i-th simple root."""
        alpha = self.simple_roots[i]
        c = 2 * form_pairing(self, v, alpha) / form_pairing(self, alpha, alpha)
        if c.denominator != 1:
            raise ValueError("reflection of a non-root produced non-integer pairing")
        c = int(c)
        return tuple(int(x) - c * int(a) for x, a in zip(v, alpha))


def _parse_label(label: str) -> tuple[tuple[tuple[str, int], ...], int]:
    text = label.strip().upper().replace(" ", "")
    if not text:
        raise ValueError("empty root-system label")
    components: list[tuple[str, int]] = []
    torus = 0
    for part in text.split("+"):
        for piece in part.split("X"):
            m = re.fullmatch(r"([A-GT])(\d+)", piece)
            if not m:
                raise ValueError(f"unrecognized root-system label piece: {piece!r}")
            letter, rank = m.group(1), int(m.group(2))
            if letter == "T":
                torus += rank
                continue
            if rank < 1 or not _LETTER_RANKS[letter](rank):
                raise ValueError(f"rank {rank} not valid for type {letter}")
            components.append((letter, rank))
    return tuple(components), torus


def _component_gram(letter: str, n: int) -> list[list[Fraction]]:
    """Symmetrized Cartan matrix with long roots of squared length 2."""
    g = [[Fraction(0)] * n for _ in range(n)]
    two = Fraction(2)

    def chain(pairs, lengths):
        for i in range(n):
            g[i][i] = lengths[i]
        for i, j, v in pairs:
            g[i][j] = v
            g[j][i] = v

    if letter == "A":
        chain([(i, i + 1, Fraction(-1)) for i in range(n - 1)], [two] * n)
    elif letter == "B":
        # last simple root short
        lengths = [two] * (n - 1) + [Fraction(1)]
        chain([(i, i + 1, Fraction(-1)) for i in range(n - 1)], lengths)
    elif letter == "C":
        # last simple root long
        lengths = [Fraction(1)] * (n - 1) + [two]
        pairs = [(i, i + 1, Fraction(-1, 2)) for i in range(n - 2)]
        if n >= 2:
            pairs.append((n - 2, n - 1, Fraction(-1)))
        chain(pairs, lengths)
    elif letter == "D":
        pairs = [(i, i + 1, Fraction(-1)) for i in range(n - 2)]
        if n >= 3:
            pairs.append((n - 3, n - 1, Fraction(-1)))
        chain(pairs, [two] * n)
    elif letter == "E":
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        chain([(i, j, Fraction(-1)) for i, j in edges], [two] * n)
    elif letter == "F":
        lengths = [two, two, Fraction(1), Fraction(1)]
        chain(
            [(0, 1, Fraction(-1)), (1, 2, Fraction(-1)), (2, 3, Fraction(-1, 2))],
            lengths,
        )
    elif letter == "G":
        chain([(0, 1, Fraction(-1))], [Fraction(2, 3), two])
    else:  # pragma: no cover
        raise ValueError(letter)
    return g


def build_root_system(type_label: str) -> RootSystem:
    """Construct a root system from a label like "A3", "A2xA1" or "A2+T1"."""
    components, torus = _parse_label(type_label)
    ranks = [n for _, n in components]
    rank = sum(ranks)
    cartan_rank = rank + torus

    gram_rows = [[Fraction(0)] * cartan_rank for _ in range(cartan_rank)]
    offset = 0
    for letter, n in components:
        block = _component_gram(letter, n)
        for i in range(n):
            for j in range(n):
                gram_rows[offset + i][offset + j] = block[i][j]
        offset += n
    for i in range(rank, cartan_rank):
        gram_rows[i][i] = Fraction(1)
    gram = mat(gram_rows)

    simple = tuple(
        tuple(1 if j == i else 0 for j in range(cartan_rank)) for i in range(rank)
    )

    rs = RootSystem(
        type_label=type_label.strip().replace(" ", ""),
        components=components,
        torus_rank=torus,
        simple_roots=simple,
        positive_roots=(),
        gram=gram,
        cartan_rank=cartan_rank,
    )

    # closure generation: reflect known roots through simple roots until stable
    known = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                w = rs.reflect(i, v)
                if all(x >= 0 for x in w) and w not in known:
                    known.add(w)
                    nxt.append(w)
        frontier = nxt
    positive = tuple(sorted(known, key=lambda v: (sum(v), v)))
    return RootSystem(
        type_label=rs.type_label,
        components=components,
        torus_rank=torus,
        simple_roots=simple,
        positive_roots=positive,
        gram=gram,
        cartan_rank=cartan_rank,
    )


def form_pairing(rs: RootSystem, x, y) -> Fraction:
    """(x, y) = x^T · gram · y in simple-root coordinates."""
    if len(x) != rs.cartan_rank or len(y) != rs.cartan_rank:
        raise ValueError("vector dimension does not match cartan_rank")
    return dot_form(rs.gram, x, y)


def dot_form(gram: Matrix, x, y) -> Fraction:
    gy = matvec(gram, vec(y))
    return sum((frac(a) * b for a, b in zip(x, gy)), Fraction(0))


def exp_kernel_lattice(rs: RootSystem, user_kernel: Lattice | None = None) -> Lattice:
    """Kernel of the exponential map on h, up to a global scalar unit.

    For a semisimple simply connected group this is the lattice spanned by
    the simple coroots.  A central torus has no canonical kernel, so it must
    be supplied by the caller (and is then returned unchanged).
    """
    if user_kernel is not None:
        if user_kernel.ambient != rs.cartan_rank:
            raise ValueError("supplied kernel has wrong ambient dimension")
        return user_kernel
    if rs.torus_rank > 0:
        raise ValueError(
            "central torus present: exp kernel must be supplied explicitly"
        )
    cols = []
    for alpha in rs.simple_roots:
        c = rs.coroot(alpha)
        if any(x.denominator != 1 for x in c):
            raise ValueError("coroot with non-integer coordinates")
        cols.append([int(x) for x in c])
    return Lattice(rs.cartan_rank, cols)
