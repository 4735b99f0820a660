"""Multipole tensor operators built on coupled angular-momentum states.

The state space of n spins 1/2 is organized into blocks |kappa, j> of
total angular momentum j (kappa distinguishes blocks of equal j by the
parent rank of the recursive coupling).  A multipole tensor of rank j
transfers one block into another with Clebsch-Gordan weights; all ranks
of one transition share a droplet.  Unlike the linearity-sorted basis,
these operators have no defined particle number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .tensorbasis import cg_coefficient

__all__ = [
    "StateBlock",
    "CoupledBasis",
    "MultipoleLabel",
    "MultipoleBasis",
    "coupled_basis",
    "multipole_tensor",
    "build_multipole_basis",
    "multipole_droplet_count",
    "transition_ranks",
    "decomposition_rows",
]


@dataclass(frozen=True)
class StateBlock:
    """One angular-momentum multiplet: states |kappa, j, m>, m = j..-j."""

    kappa: Fraction | None  # parent rank, None when unambiguous
    j: Fraction
    states: tuple  # 2j+1 kets (amplitude tuples), ordered m = +j .. -j

    def ket(self, m) -> np.ndarray:
        idx = int(self.j - Fraction(m))
        return np.array(self.states[idx], dtype=complex)

    def key(self) -> tuple:
        return (self.kappa, self.j)


@dataclass
class CoupledBasis:
    n: int
    blocks: list


@dataclass(frozen=True)
class MultipoleLabel:
    """Droplet label: transition from one state block into another."""

    from_block: tuple  # (kappa | None, j)
    to_block: tuple

    @property
    def spins(self) -> tuple:
        # multipole tensors have no defined particle number; rank
        # conditions use the total angular momentum
        return ()

    def to_json(self) -> dict:
        def enc(block):
            kappa, j = block
            return [None if kappa is None else float(kappa), float(j)]

        return {"from": enc(self.from_block), "to": enc(self.to_block)}

    def __repr__(self):
        def name(block):
            kappa, j = block
            core = f"{j}" if kappa is None else f"k{kappa},{j}"
            return "|" + core + ">"

        return f"{name(self.from_block)}->{name(self.to_block)}"


@dataclass
class MultipoleBasis:
    n: int
    tensors: list
    droplets: dict

    @property
    def labels(self) -> list:
        return list(self.droplets.keys())


def coupled_basis(n: int) -> CoupledBasis:
    """Recursively coupled angular-momentum eigenbasis for n <= 3 spins.

    Each step attaches one spin 1/2 as the rightmost tensor factor with
    Condon-Shortley Clebsch-Gordan amplitudes, so the highest-m state of
    every block is real and positive.  Kappa records the parent block's
    rank where two blocks share a j value.
    """
    if not 1 <= n <= 3:
        raise ValueError("coupled basis is constructed for 1..3 spins")
    half = Fraction(1, 2)
    up, down = (1.0, 0.0), (0.0, 1.0)
    blocks = [StateBlock(None, half, (up, down))]
    for level in range(2, n + 1):
        parents = blocks
        children = []
        for parent in parents:
            for j2 in (parent.j + half, parent.j - half):
                if j2 < 0:
                    continue
                states = []
                m2 = j2
                while m2 >= -j2:
                    amp = np.zeros(2**level, dtype=complex)
                    for ms, spinor in ((half, up), (-half, down)):
                        m1 = m2 - ms
                        if abs(m1) > parent.j:
                            continue
                        c = cg_coefficient(parent.j, m1, half, ms, j2, m2)
                        if c:
                            amp += c * np.kron(parent.ket(m1), np.array(spinor))
                    states.append(tuple(amp))
                    m2 -= 1
                children.append(StateBlock(parent.j, j2, tuple(states)))
        # blocks with a unique j drop the parent label
        j_counts: dict = {}
        for b in children:
            j_counts[b.j] = j_counts.get(b.j, 0) + 1
        blocks = [
            b if j_counts[b.j] > 1 else StateBlock(None, b.j, b.states)
            for b in children
        ]
        # highest total angular momentum first, then by descending kappa
        blocks.sort(key=lambda b: (-b.j, -(b.kappa if b.kappa is not None else b.j)))
    return CoupledBasis(n, blocks)


def transition_ranks(from_block: StateBlock, to_block: StateBlock) -> list:
    """Integer ranks compatible with a transition (triangle rule)."""
    lo = abs(to_block.j - from_block.j)
    hi = to_block.j + from_block.j
    return [int(j) for j in range(int(math.ceil(lo)), int(hi) + 1)]


def multipole_tensor(
    basis: CoupledBasis, from_key: tuple, to_key: tuple, j: int
) -> dict:
    """Components m -> matrix of the rank-j transition tensor.

    The transfer weights are Clebsch-Gordan coefficients coupling the
    source block with the rank, normalized to unit Frobenius norm.
    """
    lookup = {b.key(): b for b in basis.blocks}
    src, dst = lookup[from_key], lookup[to_key]
    if j not in transition_ranks(src, dst):
        raise ValueError(f"rank {j} incompatible with {from_key}->{to_key}")
    dim = 2**basis.n
    comps = {}
    norm = math.sqrt((2 * j + 1) / float(2 * dst.j + 1))
    for m in range(-j, j + 1):
        mat = np.zeros((dim, dim), dtype=complex)
        m1 = src.j
        while m1 >= -src.j:
            m2 = m1 + m
            if abs(m2) <= dst.j:
                c = cg_coefficient(src.j, m1, j, m, dst.j, m2)
                if c:
                    mat += norm * c * np.outer(dst.ket(m2), src.ket(m1).conj())
            m1 -= 1
        comps[m] = mat
    return comps


def build_multipole_basis(n: int) -> MultipoleBasis:
    """Complete orthonormal multipole basis (n <= 3), grouped by transition."""
    from .tensorbasis import LabeledTensorOp

    cb = coupled_basis(n)
    keys = [b.key() for b in cb.blocks]
    lookup = {b.key(): b for b in cb.blocks}
    # diagonal transitions first, then off-diagonal pairs in block order
    ordered = [(k, k) for k in keys]
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            ordered.append((a, b))
            ordered.append((b, a))
    tensors = []
    droplets: dict = {}
    for from_key, to_key in ordered:
        label = MultipoleLabel(from_key, to_key)
        for j in transition_ranks(lookup[from_key], lookup[to_key]):
            comps = multipole_tensor(cb, from_key, to_key, j)
            tensors.append(LabeledTensorOp(label, j, comps))
            droplets.setdefault(label, []).append(j)
    return MultipoleBasis(n, tensors, droplets)


# --------------------------------------------------------------------------
# decomposition of the three-spin multipole tensors over the
# linearity-sorted tensors; keys are ('id',), ('lin', k),
# ('bil', (k, l), j), ('tri', tableau index, j)

def decomposition_rows() -> list:
    """Rows (from_block, to_block, rank, [(coeff, tensor key)]).

    Every row is unit-normalized and reproduces the constructed tensor;
    where a published form of this table conflicts with the trilinear
    transform tables on the sign of the i-carrying terms, the transform
    tables win (see the repository notes).
    """
    s = math.sqrt
    half = Fraction(1, 2)
    k32, k1, k2 = (None, Fraction(3, 2)), (Fraction(1), half), (Fraction(0), half)
    return [
        (k32, k32, 0, [(1 / s(6), ("bil", (1, 2), 0)), (1 / s(6), ("bil", (1, 3), 0)),
                       (1 / s(6), ("bil", (2, 3), 0)), (s(3) / s(6), ("id",))]),
        (k32, k32, 1, [(s(10) / 6, ("lin", 1)), (s(10) / 6, ("lin", 2)),
                       (s(10) / 6, ("lin", 3)), (s(10) / 6 * s(3) / s(5), ("tri", 1, 1))]),
        (k32, k32, 2, [(1 / s(3), ("bil", (1, 2), 2)), (1 / s(3), ("bil", (1, 3), 2)),
                       (1 / s(3), ("bil", (2, 3), 2))]),
        (k32, k32, 3, [(1.0, ("tri", 1, 3))]),
        (k1, k1, 0, [(s(3) / 6, ("bil", (1, 2), 0)), (-s(3) / 3, ("bil", (1, 3), 0)),
                     (-s(3) / 3, ("bil", (2, 3), 0)), (0.5, ("id",))]),
        (k1, k1, 1, [(1 / 3, ("lin", 1)), (1 / 3, ("lin", 2)), (-1 / 6, ("lin", 3)),
                     (-s(15) / 6, ("tri", 1, 1)), (-s(3) / 3, ("tri", 2, 1))]),
        (k2, k2, 0, [(-s(3) / 2, ("bil", (1, 2), 0)), (0.5, ("id",))]),
        (k2, k2, 1, [(0.5, ("lin", 3)), (-s(15) / 6, ("tri", 1, 1)),
                     (s(3) / 3, ("tri", 2, 1))]),
        (k32, k1, 1, [(-s(2) / 6, ("lin", 1)), (-s(2) / 6, ("lin", 2)),
                      (s(2) / 3, ("lin", 3)), (0.5j, ("bil", (1, 3), 1)),
                      (0.5j, ("bil", (2, 3), 1)), (-s(6) / 6, ("tri", 2, 1))]),
        (k32, k1, 2, [(-s(3) / 3, ("bil", (1, 2), 2)), (s(3) / 6, ("bil", (1, 3), 2)),
                      (s(3) / 6, ("bil", (2, 3), 2)), (-s(2) / 2 * 1j, ("tri", 2, 2))]),
        (k1, k32, 1, [(s(2) / 6, ("lin", 1)), (s(2) / 6, ("lin", 2)),
                      (-s(2) / 3, ("lin", 3)), (0.5j, ("bil", (1, 3), 1)),
                      (0.5j, ("bil", (2, 3), 1)), (s(6) / 6, ("tri", 2, 1))]),
        (k1, k32, 2, [(s(3) / 3, ("bil", (1, 2), 2)), (-s(3) / 6, ("bil", (1, 3), 2)),
                      (-s(3) / 6, ("bil", (2, 3), 2)), (-s(2) / 2 * 1j, ("tri", 2, 2))]),
        (k32, k2, 1, [(-s(2) / (2 * s(3)), ("lin", 1)), (s(2) / (2 * s(3)), ("lin", 2)),
                      (1j / s(3), ("bil", (1, 2), 1)), (0.5j / s(3), ("bil", (1, 3), 1)),
                      (-0.5j / s(3), ("bil", (2, 3), 1)),
                      (-s(2) / (2 * s(3)), ("tri", 3, 1))]),
        (k32, k2, 2, [(-0.5, ("bil", (1, 3), 2)), (0.5, ("bil", (2, 3), 2)),
                      (-s(2) / 2 * 1j, ("tri", 3, 2))]),
        (k2, k32, 1, [(s(2) / (2 * s(3)), ("lin", 1)), (-s(2) / (2 * s(3)), ("lin", 2)),
                      (1j / s(3), ("bil", (1, 2), 1)), (0.5j / s(3), ("bil", (1, 3), 1)),
                      (-0.5j / s(3), ("bil", (2, 3), 1)),
                      (s(2) / (2 * s(3)), ("tri", 3, 1))]),
        (k2, k32, 2, [(0.5, ("bil", (1, 3), 2)), (-0.5, ("bil", (2, 3), 2)),
                      (-s(2) / 2 * 1j, ("tri", 3, 2))]),
        (k1, k2, 0, [(-0.5, ("bil", (1, 3), 0)), (0.5, ("bil", (2, 3), 0)),
                     (s(2) / 2 * 1j, ("tri", 4, 0))]),
        (k1, k2, 1, [(-1 / (2 * s(3)), ("lin", 1)), (1 / (2 * s(3)), ("lin", 2)),
                     (s(2) / (2 * s(3)) * 1j, ("bil", (1, 2), 1)),
                     (-s(2) / (2 * s(3)) * 1j, ("bil", (1, 3), 1)),
                     (s(2) / (2 * s(3)) * 1j, ("bil", (2, 3), 1)),
                     (1 / s(3), ("tri", 3, 1))]),
        (k2, k1, 0, [(-0.5, ("bil", (1, 3), 0)), (0.5, ("bil", (2, 3), 0)),
                     (-s(2) / 2 * 1j, ("tri", 4, 0))]),
        (k2, k1, 1, [(-1 / (2 * s(3)), ("lin", 1)), (1 / (2 * s(3)), ("lin", 2)),
                     (-s(2) / (2 * s(3)) * 1j, ("bil", (1, 2), 1)),
                     (s(2) / (2 * s(3)) * 1j, ("bil", (1, 3), 1)),
                     (-s(2) / (2 * s(3)) * 1j, ("bil", (2, 3), 1)),
                     (1 / s(3), ("tri", 3, 1))]),
    ]


def _state_multiplicities(n: int) -> dict:
    """j -> multiplicity of the spin-j multiplet in the n-spin state space."""
    half = Fraction(1, 2)
    mult = {half: 1}
    for _ in range(n - 1):
        nxt: dict = {}
        for j, count in mult.items():
            for j2 in (j + half, j - half):
                if j2 >= 0:
                    nxt[j2] = nxt.get(j2, 0) + count
        mult = nxt
    return mult


def multipole_droplet_count(n: int) -> int:
    """Square of the number of state-space multiplets (with multiplicity)."""
    if not 1 <= n <= 8:
        raise ValueError("supported spin counts are 1..8")
    return sum(_state_multiplicities(n).values()) ** 2
