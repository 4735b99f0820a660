"""Operator expression grammar for CLI and service inputs.

Sums of products: each term multiplies scalars (``2``, ``0.5i``),
Cartesian factors (``I1z``), named states (``GHZ``), identities
(``Id``), and tensor components (``T[1,0]{1}``; trilinear symmetry
types select with a trailing ``tau<k>``, e.g. ``T[3,0]{1,2,3}tau1``).
Parse errors carry the byte offset of the offending token.
"""

from __future__ import annotations

import re

import numpy as np

from . import cartesian, dynamics
from .symgroup import all_standard_tableaux
from .tensorbasis import build_lisa_basis

__all__ = ["ExpressionError", "parse_operator"]

NAMED_STATES = {
    "GHZ": 3,
    "W": 3,
    "Phi+": 2,
    "Phi-": 2,
    "Psi+": 2,
    "Psi-": 2,
    "zero-product": None,
    "partial-entangled-example": 2,
}


class ExpressionError(ValueError):
    """Unparseable operator expression; ``offset`` is a byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"byte {offset}: {message}")
        self.offset = offset


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?i?)
  | (?P<tensor>T\[\s*(?P<tj>\d+)\s*,\s*(?P<tm>-?\d+)\s*\]\{(?P<tg>\d+(?:\s*,\s*\d+)*)\}(?:tau(?P<ttau>\d+))?)
  | (?P<cart>I(?P<ck>\d+)(?P<cax>[xyz]))
  | (?P<name>[A-Za-z][A-Za-z0-9+-]*)
  | (?P<op>[+\-*])
""",
    re.VERBOSE,
)

_KINDS = ("ws", "number", "tensor", "cart", "name", "op")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
        kind = next(k for k in _KINDS if match.group(k) is not None)
        if kind != "ws":
            out.append((kind, match, pos))
        pos = match.end()
    return out


def _factor_value(kind: str, match, offset: int, n: int) -> np.ndarray | complex:
    if kind == "number":
        text = match.group("number")
        if text.endswith("i"):
            return complex(0.0, float(text[:-1] or "1"))
        return complex(float(text))
    if kind == "cart":
        k = int(match.group("ck"))
        if not 1 <= k <= n:
            raise ExpressionError(f"spin {k} outside 1..{n}", offset)
        return cartesian.product_op({k: match.group("cax")}, n)
    if kind == "tensor":
        j, m = int(match.group("tj")), int(match.group("tm"))
        spins = tuple(int(s) for s in match.group("tg").split(","))
        tau = match.group("ttau")
        if any(k < 1 or k > n for k in spins):
            raise ExpressionError(f"subsystem {spins} outside 1..{n}", offset)
        if abs(m) > j:
            raise ExpressionError(f"order {m} exceeds rank {j}", offset)
        basis = build_lisa_basis(n)
        for tensor in basis.tensors:
            if tensor.label.spins != spins or tensor.j != j:
                continue
            if len(spins) >= 3:
                if tau is None:
                    raise ExpressionError(
                        "symmetry type required, append tau<k>", offset
                    )
                order = all_standard_tableaux(len(spins))
                base = tensor.label.tableau.relabel(
                    {e: i + 1 for i, e in enumerate(tensor.label.tableau.entries)}
                )
                if order.index(base) + 1 != int(tau):
                    continue
            return np.array(tensor.components[m])
        raise ExpressionError(
            f"no tensor with rank {j} on subsystem {spins}"
            + (f" and symmetry tau{tau}" if tau else ""),
            offset,
        )
    if kind == "name":
        name = match.group("name")
        if name == "Id":
            return np.eye(2**n, dtype=complex)
        if name in NAMED_STATES:
            wants = NAMED_STATES[name]
            if wants is not None and wants != n:
                raise ExpressionError(
                    f"state {name} needs {wants} spins, expression context has {n}",
                    offset,
                )
            return dynamics.named_state(name, n)
        raise ExpressionError(f"unknown name {name!r}", offset)
    raise ExpressionError("unexpected token", offset)


def parse_operator(text: str, n: int) -> np.ndarray:
    """Evaluate an operator expression on n spins."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression", 0)
    dim = 2**n
    total = np.zeros((dim, dim), dtype=complex)
    sign = 1.0
    term: np.ndarray | None = None
    scalar = complex(1.0)
    expect_factor = True

    def flush(offset):
        nonlocal term, scalar, sign, total
        if expect_factor:
            raise ExpressionError("dangling operator", offset)
        total = total + sign * scalar * (term if term is not None else np.eye(dim))
        term, scalar, sign = None, complex(1.0), 1.0

    for kind, match, offset in tokens:
        if kind == "op":
            symbol = match.group("op")
            if symbol == "*":
                if expect_factor:
                    raise ExpressionError("misplaced '*'", offset)
                expect_factor = True
            else:
                if expect_factor and term is None and scalar == 1.0:
                    # leading sign of a term
                    if symbol == "-":
                        sign = -sign
                    continue
                flush(offset)
                sign = -1.0 if symbol == "-" else 1.0
                expect_factor = True
        else:
            if not expect_factor:
                raise ExpressionError("missing operator between factors", offset)
            value = _factor_value(kind, match, offset, n)
            if isinstance(value, complex):
                scalar *= value
            elif term is None:
                term = value
            else:
                term = term @ value
            expect_factor = False
    flush(len(text))
    return total
