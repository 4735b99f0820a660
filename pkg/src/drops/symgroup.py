"""Symmetric-group machinery: permutations, Young tableaux, projectors.

Group-algebra elements carry exact ``Fraction`` coefficients so that
idempotency and the sign bookkeeping of the symmetrized tensor
construction hold exactly; floats only appear when an element acts on
an operator.

Conventions: permutations are bijections of ``{1..g}``, composition is
right-to-left (``(s2*s1)(p) = s2(s1(p))``), and cycles are parsed left
to right.  Tableaux of one size are totally ordered by shape
(descending) and then by filling pattern (ascending).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "Permutation",
    "Partition",
    "StandardTableau",
    "GroupAlgebraElement",
    "partitions",
    "standard_tableaux",
    "all_standard_tableaux",
    "young_symmetrizer",
    "young_projector",
    "act",
    "permutation_matrix_index",
]


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..g}, stored as the image tuple (sigma(1), ..., sigma(g))."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(self.images)}: {self.images}")

    @staticmethod
    def identity(g: int) -> "Permutation":
        return Permutation(tuple(range(1, g + 1)))

    @staticmethod
    def from_cycles(g: int, *cycles) -> "Permutation":
        images = list(range(1, g + 1))
        for cyc in cycles:
            for i, p in enumerate(cyc):
                images[p - 1] = cyc[(i + 1) % len(cyc)]
        return Permutation(tuple(images))

    @staticmethod
    def transposition(g: int, a: int, b: int) -> "Permutation":
        return Permutation.from_cycles(g, (a, b))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self*other)(p) = self(other(p))
        return Permutation(tuple(self.images[q - 1] for q in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for p, q in enumerate(self.images, start=1):
            inv[q - 1] = p
        return Permutation(tuple(inv))

    def sign(self) -> int:
        """Parity (-1)**(minimal number of transpositions)."""
        seen = [False] * self.degree
        sign = 1
        for p in range(1, self.degree + 1):
            if seen[p - 1]:
                continue
            length = 0
            q = p
            while not seen[q - 1]:
                seen[q - 1] = True
                q = self(q)
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def cycles(self) -> list:
        """Disjoint cycle decomposition, fixed points omitted."""
        seen = [False] * self.degree
        out = []
        for p in range(1, self.degree + 1):
            if seen[p - 1]:
                continue
            cyc = [p]
            seen[p - 1] = True
            q = self(p)
            while q != p:
                cyc.append(q)
                seen[q - 1] = True
                q = self(q)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        return "e" if not cyc else "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


Partition = tuple  # non-increasing positive integers


def partitions(g: int, max_part: int | None = None):
    """All partitions of g in descending lexicographic order."""
    if max_part is None:
        max_part = g
    if g == 0:
        yield ()
        return
    for first in range(min(g, max_part), 0, -1):
        for rest in partitions(g - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class StandardTableau:
    """Standard Young tableau: rows strictly increasing left-right and top-down."""

    rows: tuple  # tuple of tuples of entries

    def __post_init__(self):
        entries = [e for row in self.rows for e in row]
        if sorted(entries) != sorted(set(entries)):
            raise ValueError("duplicate entries in tableau")
        for row in self.rows:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                raise ValueError(f"row not increasing: {row}")
        for r in range(len(self.rows) - 1):
            upper, lower = self.rows[r], self.rows[r + 1]
            if len(lower) > len(upper):
                raise ValueError("shape is not a partition")
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                raise ValueError("column not increasing")

    @property
    def shape(self) -> Partition:
        return tuple(len(row) for row in self.rows)

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    @property
    def entries(self) -> tuple:
        return tuple(sorted(e for row in self.rows for e in row))

    def filling(self) -> tuple:
        """Row-major word w(tau) used for the total order."""
        return tuple(e for row in self.rows for e in row)

    def position(self, entry: int) -> tuple:
        """(row, column) of an entry, 1-based."""
        for r, row in enumerate(self.rows, start=1):
            for c, e in enumerate(row, start=1):
                if e == entry:
                    return (r, c)
        raise KeyError(entry)

    def relabel(self, mapping: dict) -> "StandardTableau":
        return StandardTableau(tuple(tuple(mapping[e] for e in row) for row in self.rows))

    def __repr__(self):
        return "[" + ", ".join(" ".join(map(str, row)) for row in self.rows) + "]"


def _shape_key(shape: Partition) -> tuple:
    # descending order on zero-padded part lists == ascending on negated parts
    return tuple(-p for p in shape)


def standard_tableaux(shape: Partition, entries=None) -> list:
    """All standard tableaux of a shape, ordered by filling pattern."""
    g = sum(shape)
    if g < 1:
        raise ValueError("shape must have at least one box")
    if entries is None:
        entries = tuple(range(1, g + 1))
    entries = tuple(sorted(entries))
    results = []

    def extend(grid, used):
        if used == g:
            results.append(StandardTableau(tuple(tuple(row) for row in grid)))
            return
        value = entries[used]
        for r in range(len(shape)):
            c = len(grid[r])
            if c >= shape[r]:
                continue
            if r > 0 and len(grid[r - 1]) <= c:
                continue
            grid[r].append(value)
            extend(grid, used + 1)
            grid[r].pop()

    extend([[] for _ in shape], 0)
    results.sort(key=lambda t: t.filling())
    return results


@lru_cache(maxsize=None)
def all_standard_tableaux(g: int) -> tuple:
    """Tableaux of size g across all shapes, in the global total order."""
    out = []
    for shape in sorted(partitions(g), key=_shape_key):
        out.extend(standard_tableaux(shape))
    return tuple(out)


class GroupAlgebraElement:
    """Rational linear combination of permutations of one S_g."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None):
        self.degree = degree
        self.terms = {}
        if terms:
            for perm, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    self.terms[perm] = coeff

    @staticmethod
    def identity(degree: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement(degree, {Permutation.identity(degree): Fraction(1)})

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        terms = dict(self.terms)
        for perm, coeff in other.terms.items():
            terms[perm] = terms.get(perm, Fraction(0)) + coeff
        return GroupAlgebraElement(self.degree, terms)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + other.scaled(-1)

    def scaled(self, scalar) -> "GroupAlgebraElement":
        scalar = Fraction(scalar)
        return GroupAlgebraElement(self.degree, {p: c * scalar for p, c in self.terms.items()})

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        terms: dict = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                prod = p1 * p2
                terms[prod] = terms.get(prod, Fraction(0)) + c1 * c2
        return GroupAlgebraElement(self.degree, terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"{c}*{p!r}" for p, c in sorted(self.terms.items(), key=lambda t: t[0].images)]
        return " + ".join(bits)


def _subset_permutations(g: int, subset) -> list:
    """Permutations of S_g moving only the given subset."""
    subset = tuple(subset)
    perms = []
    for images in itertools.permutations(subset):
        full = list(range(1, g + 1))
        for src, dst in zip(subset, images):
            full[src - 1] = dst
        perms.append(Permutation(tuple(full)))
    return perms


def young_symmetrizer(tableau: StandardTableau) -> GroupAlgebraElement:
    """Idempotent e = f * (row sum) * (signed column sum)."""
    g = max(tableau.entries)
    rows = [tuple(row) for row in tableau.rows]
    ncols = len(rows[0])
    cols = [tuple(row[c] for row in rows if len(row) > c) for c in range(ncols)]

    h = GroupAlgebraElement(g)
    for combo in itertools.product(*[_subset_permutations(g, r) for r in rows]):
        perm = Permutation.identity(g)
        for p in combo:
            perm = perm * p
        h.terms[perm] = h.terms.get(perm, Fraction(0)) + 1

    v = GroupAlgebraElement(g)
    for combo in itertools.product(*[_subset_permutations(g, c) for c in cols]):
        perm = Permutation.identity(g)
        sign = 1
        for p in combo:
            perm = perm * p
            sign *= p.sign()
        v.terms[perm] = v.terms.get(perm, Fraction(0)) + sign

    n_tab = len(standard_tableaux(tableau.shape))
    f = Fraction(n_tab, _factorial(g))
    return (h * v).scaled(f)


def _factorial(g: int) -> int:
    out = 1
    for k in range(2, g + 1):
        out *= k
    return out


def _axial_distance(tableau: StandardTableau, a: int, b: int) -> int:
    """Signed steps from box a to box b: down/left positive, up/right negative."""
    ra, ca = tableau.position(a)
    rb, cb = tableau.position(b)
    return (rb - ra) - (cb - ca)


def _swap_related(t1: StandardTableau, t2: StandardTableau) -> tuple | None:
    """Consecutive labels (a, a+1) whose swap maps t1 to t2, if any."""
    if t1.shape != t2.shape:
        return None
    diff = [e for e in t1.entries if t1.position(e) != t2.position(e)]
    if len(diff) != 2 or diff[1] != diff[0] + 1:
        return None
    a, b = diff
    if t1.position(a) == t2.position(b) and t1.position(b) == t2.position(a):
        return (a, b)
    return None


@lru_cache(maxsize=None)
def _projectors_for_size(g: int) -> dict:
    """Orthogonalized projectors for every standard tableau of S_g.

    The first tableau of each shape gets its Young symmetrizer; each
    later tableau is built from an earlier same-shape tableau that
    differs by one swap of consecutive labels (smallest such index
    wins), with the normalization fixed by exact idempotency.
    """
    ordered = all_standard_tableaux(g)
    projectors: dict = {}
    by_shape: dict = {}
    for tab in ordered:
        same_shape = by_shape.setdefault(tab.shape, [])
        if not same_shape:
            projectors[tab] = young_symmetrizer(tab)
        else:
            built = None
            for earlier in same_shape:
                pair = _swap_related(earlier, tab)
                if pair is None:
                    continue
                a, b = pair
                d = _axial_distance(earlier, a, b)
                swap = GroupAlgebraElement(
                    g, {Permutation.transposition(g, a, b): Fraction(d)}
                ) + GroupAlgebraElement.identity(g)
                built = _rescale_idempotent(swap * projectors[earlier])
                if built is not None:
                    break
                # the primary step can produce a nilpotent element (first
                # seen for one shape-(3,1,1) tableau of S_5); the image
                # update of the seminormal representation steps in then
                alt = GroupAlgebraElement(
                    g, {Permutation.transposition(g, a, b): Fraction(1)}
                ) + GroupAlgebraElement.identity(g).scaled(Fraction(-1, d))
                built = _rescale_idempotent(alt * projectors[earlier])
                if built is not None:
                    break
            if built is None:
                raise RuntimeError(f"projector normalization failed for {tab!r}")
            projectors[tab] = built
        same_shape.append(tab)
    return projectors


def _rescale_idempotent(x: GroupAlgebraElement) -> GroupAlgebraElement | None:
    """f*x with f fixed by idempotency, or None when x*x is not an exact
    rational multiple of x."""
    xx = x * x
    c = None
    for perm, coeff in x.terms.items():
        ratio = xx.terms.get(perm, Fraction(0)) / coeff
        if c is None:
            c = ratio
        elif ratio != c:
            return None
    if c is None or c == 0 or set(xx.terms) - set(x.terms):
        return None
    return x.scaled(1 / c)


def young_projector(tableau: StandardTableau) -> GroupAlgebraElement:
    g = max(tableau.entries)
    if tableau.entries != tuple(range(1, g + 1)):
        raise ValueError("projectors are defined for tableaux filled with 1..g")
    return _projectors_for_size(g)[tableau]


@lru_cache(maxsize=None)
def permutation_matrix_index(images: tuple, n: int) -> np.ndarray:
    """Basis-index permutation of the qubit-swap unitary on n spins.

    Entry ``out[i]`` is the computational-basis index whose bit string is
    that of ``i`` with tensor factors moved by the permutation, i.e. the
    unitary P satisfies ``(P A P^dagger)[i, j] = A[out[i], out[j]]``.
    """
    perm = Permutation(images)
    if perm.degree > n:
        raise ValueError(f"permutation degree {perm.degree} exceeds spin count {n}")
    # moving factor p to slot sigma(p) conjugates matrix elements by the
    # inverse index map: (P A P^dagger)[i, j] = A[out[i], out[j]] with the
    # bit at slot k of out[i] read from slot sigma(k) of i
    out = np.empty(2**n, dtype=np.intp)
    for i in range(2**n):
        bits = [(i >> (n - 1 - k)) & 1 for k in range(n)]
        moved = bits[:]
        for k in range(perm.degree):
            moved[k] = bits[perm(k + 1) - 1]
        j = 0
        for bit in moved:
            j = (j << 1) | bit
        out[i] = j
    out.setflags(write=False)
    return out


def act(x, a: np.ndarray, n: int) -> np.ndarray:
    """Apply a permutation or group-algebra element to operator tensor factors.

    A permutation moves factor p to slot sigma(p) (conjugation by the
    qubit-swap unitary); group-algebra elements act by linearity.
    """
    if isinstance(x, Permutation):
        x = GroupAlgebraElement(x.degree, {x: Fraction(1)})
    a = np.asarray(a, dtype=complex)
    if a.shape[0] != 2**n:
        raise ValueError(f"operator dimension {a.shape[0]} != 2**{n}")
    out = np.zeros_like(a)
    for perm, coeff in x.terms.items():
        idx = permutation_matrix_index(perm.images, n)
        # (P A P^dagger)[i, j] = A[idx[i], idx[j]]
        out += float(coeff) * a[np.ix_(idx, idx)]
    return out
