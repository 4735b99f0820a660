"""Cartesian product operators and exact transforms to the tensor basis.

Product operators carry the conventional prefactor 2**(d-1) for d
non-identity factors.  The linear (3x3), bilinear (9x9) and trilinear
transform tables are stored here entry by entry; they double as the
primary numeric oracle for the constructed basis and are shipped as a
versioned JSON fixture that regeneration must reproduce bit-exactly.
"""

from __future__ import annotations

import importlib.resources
import json
import math

import numpy as np

from . import opalg

__all__ = [
    "AXES",
    "single_axis",
    "product_op",
    "linear_transform",
    "bilinear_transform",
    "trilinear_tables",
    "trilinear_scale",
    "tables_as_json",
    "load_table_fixture",
    "BILINEAR_CART_ORDER",
    "BILINEAR_TENSOR_ORDER",
]

AXES = ("x", "y", "z")

_IX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
_IY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
_IZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
_SINGLE = {"x": _IX, "y": _IY, "z": _IZ}


def single_axis(axis: str) -> np.ndarray:
    return _SINGLE[axis].copy()


def product_op(factors: dict, n: int) -> np.ndarray:
    """Cartesian product operator 2**(d-1) * prod_k I_{k,axis}.

    ``factors`` maps spin index (1-based) to an axis; unlisted spins get
    identity factors.
    """
    if not factors:
        raise ValueError("at least one spin factor required")
    if len(set(factors)) != len(factors):
        raise ValueError("duplicate spin index")
    if any(k < 1 or k > n for k in factors):
        raise ValueError(f"spin indices must lie in 1..{n}")
    out = np.array([[1.0 + 0j]])
    for k in range(1, n + 1):
        factor = _SINGLE[factors[k]] if k in factors else np.eye(2)
        out = opalg.kron(out, factor)
    return 2.0 ** (len(factors) - 1) * out


_SQ2 = math.sqrt(2.0)
_SQ3 = math.sqrt(3.0)
_SQ5 = math.sqrt(5.0)
_SQ6 = math.sqrt(6.0)


def _lin_to_lisa() -> np.ndarray:
    # rows T_{1,-1}, T_{1,0}, T_{1,1}; columns I_x, I_y, I_z
    return np.array(
        [
            [1, -1j, 0],
            [0, 0, _SQ2],
            [-1, -1j, 0],
        ],
        dtype=complex,
    )


def _lin_from_lisa() -> np.ndarray:
    return np.array(
        [
            [0.5, 0, -0.5],
            [0.5j, 0, 0.5j],
            [0, 1 / _SQ2, 0],
        ],
        dtype=complex,
    )


def linear_transform(direction: str, k: int, n: int) -> np.ndarray:
    """3x3 transform between (I_kx, I_ky, I_kz) and (T_{1,-1}, T_{1,0}, T_{1,1})."""
    if not 1 <= k <= n:
        raise ValueError(f"spin {k} outside 1..{n}")
    if direction == "to_lisa":
        return (1 / _SQ2) ** (n - 1) * _lin_to_lisa()
    if direction == "from_lisa":
        return _SQ2 ** (n - 1) * _lin_from_lisa()
    raise ValueError(f"unknown direction {direction!r}")


# orderings shared by the bilinear matrices and their tests
BILINEAR_CART_ORDER = tuple((a, b) for a in AXES for b in AXES)
BILINEAR_TENSOR_ORDER = ((0, 0),) + tuple((1, m) for m in (-1, 0, 1)) + tuple(
    (2, m) for m in (-2, -1, 0, 1, 2)
)


def _bil_to_lisa() -> np.ndarray:
    # rows follow BILINEAR_TENSOR_ORDER, columns 2 I_{k a} I_{l b} in
    # BILINEAR_CART_ORDER
    s3, s2, s6 = 1 / _SQ3, 1 / _SQ2, 1 / _SQ6
    return np.array(
        [
            [s3, 0, 0, 0, s3, 0, 0, 0, s3],
            [0, 0, 0.5j, 0, 0, 0.5, -0.5j, -0.5, 0],
            [0, s2, 0, -s2, 0, 0, 0, 0, 0],
            [0, 0, 0.5j, 0, 0, -0.5, -0.5j, 0.5, 0],
            [0.5, -0.5j, 0, -0.5j, -0.5, 0, 0, 0, 0],
            [0, 0, 0.5, 0, 0, -0.5j, 0.5, -0.5j, 0],
            [-s6, 0, 0, 0, -s6, 0, 0, 0, 2 * s6],
            [0, 0, -0.5, 0, 0, -0.5j, -0.5, -0.5j, 0],
            [0.5, 0.5j, 0, 0.5j, -0.5, 0, 0, 0, 0],
        ],
        dtype=complex,
    )


def _bil_from_lisa() -> np.ndarray:
    s3, s2, s6 = 1 / _SQ3, 1 / _SQ2, 1 / _SQ6
    return np.array(
        [
            [s3, 0, 0, 0, 0.5, 0, -s6, 0, 0.5],
            [0, 0, s2, 0, 0.5j, 0, 0, 0, -0.5j],
            [0, -0.5j, 0, -0.5j, 0, 0.5, 0, -0.5, 0],
            [0, 0, -s2, 0, 0.5j, 0, 0, 0, -0.5j],
            [s3, 0, 0, 0, -0.5, 0, -s6, 0, -0.5],
            [0, 0.5, 0, -0.5, 0, 0.5j, 0, 0.5j, 0],
            [0, 0.5j, 0, 0.5j, 0, 0.5, 0, -0.5, 0],
            [0, -0.5, 0, 0.5, 0, 0.5j, 0, 0.5j, 0],
            [s3, 0, 0, 0, 0, 0, _SQ2 / _SQ3, 0, 0],
        ],
        dtype=complex,
    )


def bilinear_transform(direction: str, pair: tuple, n: int) -> np.ndarray:
    """9x9 transform between bilinear products and the rank-0/1/2 tensors."""
    k, l = pair
    if not (1 <= k < l <= n):
        raise ValueError(f"need 1 <= k < l <= n, got {pair} with n={n}")
    if direction == "to_lisa":
        return (1 / _SQ2) ** (n - 2) * _bil_to_lisa()
    if direction == "from_lisa":
        return _SQ2 ** (n - 2) * _bil_from_lisa()
    raise ValueError(f"unknown direction {direction!r}")


# --------------------------------------------------------------------------
# trilinear decomposition tables
#
# Keys on the tensor side are (tau, j, m) with tau the 1-based index of
# the symmetry type in the total tableau order of size three; keys on
# the Cartesian side are axis words 'abc' meaning I_{1a} I_{2b} I_{3c}.
# Values are valid for three spins; see trilinear_scale for n > 3.

def _tensor_to_cartesian_table() -> dict:
    s = math.sqrt
    t: dict = {}

    # fully symmetric type, rank 1
    t[(1, 1, -1)] = [
        (6 / s(15), "xxx"), (-6j / s(15), "yyy"),
        (-2j / s(15), "xxy"), (-2j / s(15), "xyx"), (-2j / s(15), "yxx"),
        (2 / s(15), "xyy"), (2 / s(15), "yxy"), (2 / s(15), "yyx"),
        (2 / s(15), "xzz"), (2 / s(15), "zxz"), (2 / s(15), "zzx"),
        (-2j / s(15), "yzz"), (-2j / s(15), "zyz"), (-2j / s(15), "zzy"),
    ]
    t[(1, 1, 0)] = [
        (s(8 / 15), "xxz"), (s(8 / 15), "xzx"), (s(8 / 15), "zxx"),
        (s(8 / 15), "yyz"), (s(8 / 15), "yzy"), (s(8 / 15), "zyy"),
        (3 * s(8 / 15), "zzz"),
    ]
    t[(1, 1, 1)] = [
        (-2j / s(15), "xxy"), (-2j / s(15), "xyx"), (-2j / s(15), "yxx"),
        (-2 / s(15), "xyy"), (-2 / s(15), "yxy"), (-2 / s(15), "yyx"),
        (-2 / s(15), "xzz"), (-2 / s(15), "zxz"), (-2 / s(15), "zzx"),
        (-2j / s(15), "yzz"), (-2j / s(15), "zyz"), (-2j / s(15), "zzy"),
        (-6 / s(15), "xxx"), (-6j / s(15), "yyy"),
    ]
    # fully symmetric type, rank 3
    t[(1, 3, -3)] = [
        (1, "xxx"), (1j, "yyy"),
        (-1j, "xxy"), (-1j, "xyx"), (-1j, "yxx"),
        (-1, "xyy"), (-1, "yxy"), (-1, "yyx"),
    ]
    t[(1, 3, -2)] = [
        (s(2 / 3), "xxz"), (s(2 / 3), "xzx"), (s(2 / 3), "zxx"),
        (-s(2 / 3), "yyz"), (-s(2 / 3), "yzy"), (-s(2 / 3), "zyy"),
        (-1j * s(2 / 3), "xyz"), (-1j * s(2 / 3), "xzy"), (-1j * s(2 / 3), "yxz"),
        (-1j * s(2 / 3), "yzx"), (-1j * s(2 / 3), "zxy"), (-1j * s(2 / 3), "zyx"),
    ]
    t[(1, 3, -1)] = [
        (-3 / s(15), "xxx"), (3j / s(15), "yyy"),
        (1j / s(15), "xxy"), (1j / s(15), "xyx"), (1j / s(15), "yxx"),
        (-1 / s(15), "xyy"), (-1 / s(15), "yxy"), (-1 / s(15), "yyx"),
        (4 / s(15), "xzz"), (4 / s(15), "zxz"), (4 / s(15), "zzx"),
        (-4j / s(15), "yzz"), (-4j / s(15), "zyz"), (-4j / s(15), "zzy"),
    ]
    t[(1, 3, 0)] = [
        (-2 / s(5), "xxz"), (-2 / s(5), "xzx"), (-2 / s(5), "zxx"),
        (-2 / s(5), "yyz"), (-2 / s(5), "yzy"), (-2 / s(5), "zyy"),
        (4 / s(5), "zzz"),
    ]
    t[(1, 3, 1)] = [
        (3 / s(15), "xxx"), (3j / s(15), "yyy"),
        (1j / s(15), "xxy"), (1j / s(15), "xyx"), (1j / s(15), "yxx"),
        (1 / s(15), "xyy"), (1 / s(15), "yxy"), (1 / s(15), "yyx"),
        (-4 / s(15), "xzz"), (-4 / s(15), "zxz"), (-4 / s(15), "zzx"),
        (-4j / s(15), "yzz"), (-4j / s(15), "zyz"), (-4j / s(15), "zzy"),
    ]
    t[(1, 3, 2)] = [
        (s(2 / 3), "xxz"), (s(2 / 3), "xzx"), (s(2 / 3), "zxx"),
        (-s(2 / 3), "yyz"), (-s(2 / 3), "yzy"), (-s(2 / 3), "zyy"),
        (1j * s(2 / 3), "xyz"), (1j * s(2 / 3), "xzy"), (1j * s(2 / 3), "yxz"),
        (1j * s(2 / 3), "yzx"), (1j * s(2 / 3), "zxy"), (1j * s(2 / 3), "zyx"),
    ]
    t[(1, 3, 3)] = [
        (-1, "xxx"), (1j, "yyy"),
        (-1j, "xxy"), (-1j, "xyx"), (-1j, "yxx"),
        (1, "xyy"), (1, "yxy"), (1, "yyx"),
    ]

    # mixed type tau2 = [1 2 | 3]
    t[(2, 1, -1)] = [
        (-1j / s(3), "yxx"), (-1j / s(3), "xyx"), (2j / s(3), "xxy"),
        (-1j / s(3), "yzz"), (-1j / s(3), "zyz"), (2j / s(3), "zzy"),
        (1 / s(3), "xyy"), (1 / s(3), "yxy"), (-2 / s(3), "yyx"),
        (1 / s(3), "xzz"), (1 / s(3), "zxz"), (-2 / s(3), "zzx"),
    ]
    t[(2, 1, 0)] = [
        (-2 * s(2 / 3), "xxz"), (-2 * s(2 / 3), "yyz"),
        (s(2 / 3), "zxx"), (s(2 / 3), "xzx"),
        (s(2 / 3), "zyy"), (s(2 / 3), "yzy"),
    ]
    t[(2, 1, 1)] = [
        (-1 / s(3), "xyy"), (-1 / s(3), "yxy"), (2 / s(3), "yyx"),
        (-1 / s(3), "xzz"), (-1 / s(3), "zxz"), (2 / s(3), "zzx"),
        (-1j / s(3), "yxx"), (-1j / s(3), "xyx"), (2j / s(3), "xxy"),
        (-1j / s(3), "yzz"), (-1j / s(3), "zyz"), (2j / s(3), "zzy"),
    ]
    t[(2, 2, -2)] = [
        (1 / s(3), "yzx"), (1 / s(3), "zyx"),
        (1 / s(3), "xzy"), (1 / s(3), "zxy"),
        (-2 / s(3), "xyz"), (-2 / s(3), "yxz"),
        (-2j / s(3), "xxz"), (1j / s(3), "xzx"), (1j / s(3), "zxx"),
        (2j / s(3), "yyz"), (-1j / s(3), "yzy"), (-1j / s(3), "zyy"),
    ]
    t[(2, 2, -1)] = [
        (-2 / s(3), "xxy"), (1 / s(3), "xyx"), (1 / s(3), "yxx"),
        (-2j / s(3), "yyx"), (1j / s(3), "yxy"), (1j / s(3), "xyy"),
        (2j / s(3), "zzx"), (-1j / s(3), "zxz"), (-1j / s(3), "xzz"),
        (2 / s(3), "zzy"), (-1 / s(3), "zyz"), (-1 / s(3), "yzz"),
    ]
    t[(2, 2, 0)] = [
        (s(2), "yzx"), (s(2), "zyx"), (-s(2), "xzy"), (-s(2), "zxy"),
    ]
    t[(2, 2, 1)] = [
        (2 / s(3), "xxy"), (-1 / s(3), "xyx"), (-1 / s(3), "yxx"),
        (-2 / s(3), "zzy"), (1 / s(3), "zyz"), (1 / s(3), "yzz"),
        (2j / s(3), "zzx"), (-1j / s(3), "zxz"), (-1j / s(3), "xzz"),
        (-2j / s(3), "yyx"), (1j / s(3), "yxy"), (1j / s(3), "xyy"),
    ]
    t[(2, 2, 2)] = [
        (-2 / s(3), "xyz"), (1 / s(3), "xzy"), (1 / s(3), "zxy"),
        (-2 / s(3), "yxz"), (1 / s(3), "yzx"), (1 / s(3), "zyx"),
        (2j / s(3), "xxz"), (-1j / s(3), "xzx"), (-1j / s(3), "zxx"),
        (-2j / s(3), "yyz"), (1j / s(3), "yzy"), (1j / s(3), "zyy"),
    ]

    # mixed type tau3 = [1 3 | 2]
    t[(3, 1, -1)] = [
        (1, "xyy"), (-1, "yxy"), (1, "xzz"), (-1, "zxz"),
        (-1j, "yxx"), (1j, "xyx"), (-1j, "yzz"), (1j, "zyz"),
    ]
    t[(3, 1, 0)] = [
        (s(2), "zxx"), (-s(2), "xzx"), (s(2), "zyy"), (-s(2), "yzy"),
    ]
    t[(3, 1, 1)] = [
        (-1, "xyy"), (1, "yxy"), (-1, "xzz"), (1, "zxz"),
        (-1j, "yxx"), (1j, "xyx"), (-1j, "yzz"), (1j, "zyz"),
    ]
    t[(3, 2, -2)] = [
        (1, "zxy"), (-1, "xzy"), (1, "zyx"), (-1, "yzx"),
        (1j, "zxx"), (-1j, "xzx"), (1j, "yzy"), (-1j, "zyy"),
    ]
    t[(3, 2, -1)] = [
        (1, "yxx"), (-1, "xyx"), (1j, "xyy"), (-1j, "yxy"),
        (1j, "zxz"), (-1j, "xzz"), (1, "zyz"), (-1, "yzz"),
    ]
    t[(3, 2, 0)] = [
        (-2 * s(2 / 3), "xyz"), (-s(2 / 3), "xzy"), (s(2 / 3), "zxy"),
        (2 * s(2 / 3), "yxz"), (s(2 / 3), "yzx"), (-s(2 / 3), "zyx"),
    ]
    t[(3, 2, 1)] = [
        (1, "xyx"), (-1, "yxx"), (1, "yzz"), (-1, "zyz"),
        (1j, "xyy"), (-1j, "yxy"), (1j, "zxz"), (-1j, "xzz"),
    ]
    t[(3, 2, 2)] = [
        (1, "zxy"), (-1, "xzy"), (1, "zyx"), (-1, "yzx"),
        (1j, "xzx"), (-1j, "zxx"), (1j, "zyy"), (-1j, "yzy"),
    ]

    # antisymmetric type tau4, rank 0
    t[(4, 0, 0)] = [
        (2 / s(3), "xyz"), (-2 / s(3), "xzy"), (-2 / s(3), "yxz"),
        (2 / s(3), "yzx"), (2 / s(3), "zxy"), (-2 / s(3), "zyx"),
    ]
    return t


def _cartesian_to_tensor_table() -> dict:
    """Expansion of each 4 I_{1a} I_{2b} I_{3c} over the trilinear tensors."""
    s = math.sqrt
    t: dict = {}

    def pm(tau, j, c, sign=-1):
        """coefficient c on T_{j,-1} and sign*c on T_{j,+1} (|m| = 1)."""
        return [((tau, j, -1), c), ((tau, j, 1), sign * c)]

    def pm2(tau, j, mm, c, sign=1):
        return [((tau, j, -mm), c), ((tau, j, mm), sign * c)]

    t["xxx"] = (
        pm(1, 1, 2 * s(15) / 10) + pm(1, 3, -s(15) / 10) + pm2(1, 3, 3, 5 / 10, -1)
    )
    t["xxy"] = (
        pm(1, 1, 2j * s(15) / 30, +1) + pm(1, 3, -1j * s(15) / 30, +1)
        + pm2(1, 3, 3, 15j / 30) + pm(2, 1, -10j * s(3) / 30, +1)
        + pm(2, 2, -10 * s(3) / 30)
    )
    t["xxz"] = (
        [((1, 1, 0), s(2) / s(15)), ((1, 3, 0), -1 / s(5)), ((2, 1, 0), -s(2) / s(3))]
        + pm2(1, 3, 2, 1 / s(6)) + pm2(2, 2, 2, 1j / s(3), -1)
    )
    t["xyx"] = (
        pm(1, 1, 2j * s(15) / 30, +1) + pm(1, 3, -1j * s(15) / 30, +1)
        + pm2(1, 3, 3, 15j / 30) + pm(2, 1, 5j * s(3) / 30, +1)
        + pm(2, 2, 5 * s(3) / 30) + pm(3, 1, -15j / 30, +1) + pm(3, 2, -15 / 30)
    )
    t["xyy"] = (
        pm(1, 1, 2 * s(15) / 30) + pm(1, 3, -s(15) / 30) + pm2(1, 3, 3, -15 / 30, -1)
        + pm(2, 1, 5 * s(3) / 30) + pm(2, 2, -5j * s(3) / 30, +1)
        + pm(3, 1, 15 / 30) + pm(3, 2, -15j / 30, +1)
    )
    t["xyz"] = (
        pm2(1, 3, 2, 1j * s(2) / (2 * s(3)), -1)
        + [((3, 2, 0), -2 * s(2) / (2 * s(3))), ((4, 0, 0), 2 / (2 * s(3)))]
        + pm2(2, 2, 2, -2 / (2 * s(3)))
    )
    t["xzx"] = (
        [((1, 1, 0), 2 * s(30) / 30), ((1, 3, 0), -6 * s(5) / 30),
         ((2, 1, 0), 5 * s(6) / 30), ((3, 1, 0), -15 * s(2) / 30)]
        + pm2(1, 3, 2, 5 * s(6) / 30) + pm2(2, 2, 2, -5j * s(3) / 30, -1)
        + pm2(3, 2, 2, 15j / 30, -1)
    )
    t["xzy"] = (
        pm2(1, 3, 2, 1j * s(6) / 6, -1)
        + [((2, 2, 0), -3 * s(2) / 6), ((3, 2, 0), -s(6) / 6), ((4, 0, 0), -2 * s(3) / 6)]
        + pm2(2, 2, 2, s(3) / 6) + pm2(3, 2, 2, -3 / 6)
    )
    t["xzz"] = (
        pm(1, 1, 2 * s(15) / 30) + pm(1, 3, 4 * s(15) / 30)
        + pm(2, 1, 5 * s(3) / 30) + pm(2, 2, 5j * s(3) / 30, +1)
        + pm(3, 1, 15 / 30) + pm(3, 2, 15j / 30, +1)
    )
    t["yxx"] = (
        pm(1, 1, 2j * s(15) / 30, +1) + pm(1, 3, -1j * s(15) / 30, +1)
        + pm2(1, 3, 3, 15j / 30) + pm(2, 1, 5j * s(3) / 30, +1)
        + pm(2, 2, 5 * s(3) / 30) + pm(3, 1, 15j / 30, +1) + pm(3, 2, 15 / 30)
    )
    t["yxy"] = (
        pm(1, 1, 2 * s(15) / 30) + pm(1, 3, -s(15) / 30) + pm2(1, 3, 3, -15 / 30, -1)
        + pm(2, 1, 5 * s(3) / 30) + pm(2, 2, -5j * s(3) / 30, +1)
        + pm(3, 1, -15 / 30) + pm(3, 2, 15j / 30, +1)
    )
    t["yxz"] = (
        pm2(1, 3, 2, 1j * s(2) / (2 * s(3)), -1)
        + [((3, 2, 0), 2 * s(2) / (2 * s(3))), ((4, 0, 0), -2 / (2 * s(3)))]
        + pm2(2, 2, 2, -2 / (2 * s(3)))
    )
    t["yyx"] = (
        pm(1, 1, 2 * s(15) / 30) + pm(1, 3, -s(15) / 30) + pm2(1, 3, 3, -15 / 30, -1)
        + pm(2, 1, -10 * s(3) / 30) + pm(2, 2, 10j * s(3) / 30, +1)
    )
    t["yyy"] = (
        pm(1, 1, 2j * s(15) / 10, +1) + pm(1, 3, -1j * s(15) / 10, +1)
        + pm2(1, 3, 3, -5j / 10)
    )
    t["yyz"] = (
        [((1, 1, 0), 2 * s(30) / 30), ((1, 3, 0), -6 * s(5) / 30),
         ((2, 1, 0), -10 * s(6) / 30)]
        + pm2(1, 3, 2, -5 * s(6) / 30) + pm2(2, 2, 2, -10j * s(3) / 30, -1)
    )
    t["yzx"] = (
        pm2(1, 3, 2, 1j * s(6) / 6, -1)
        + [((2, 2, 0), 3 * s(2) / 6), ((3, 2, 0), s(6) / 6), ((4, 0, 0), 2 * s(3) / 6)]
        + pm2(2, 2, 2, s(3) / 6) + pm2(3, 2, 2, -3 / 6)
    )
    t["yzy"] = (
        [((1, 1, 0), 2 * s(30) / 30), ((1, 3, 0), -6 * s(5) / 30),
         ((2, 1, 0), 5 * s(6) / 30), ((3, 1, 0), -15 * s(2) / 30)]
        + pm2(1, 3, 2, -5 * s(6) / 30) + pm2(2, 2, 2, 5j * s(3) / 30, -1)
        + pm2(3, 2, 2, -15j / 30, -1)
    )
    t["yzz"] = (
        pm(1, 1, 2j * s(15) / 30, +1) + pm(1, 3, 4j * s(15) / 30, +1)
        + pm(2, 1, 5j * s(3) / 30, +1) + pm(2, 2, -5 * s(3) / 30)
        + pm(3, 1, 15j / 30, +1) + pm(3, 2, -15 / 30)
    )
    t["zxx"] = (
        [((1, 1, 0), 2 * s(30) / 30), ((1, 3, 0), -6 * s(5) / 30),
         ((2, 1, 0), 5 * s(6) / 30), ((3, 1, 0), 15 * s(2) / 30)]
        + pm2(1, 3, 2, 5 * s(6) / 30) + pm2(2, 2, 2, -5j * s(3) / 30, -1)
        + pm2(3, 2, 2, -15j / 30, -1)
    )
    t["zxy"] = (
        pm2(1, 3, 2, 1j * s(6) / 6, -1)
        + [((2, 2, 0), -3 * s(2) / 6), ((3, 2, 0), s(6) / 6), ((4, 0, 0), 2 * s(3) / 6)]
        + pm2(2, 2, 2, s(3) / 6) + pm2(3, 2, 2, 3 / 6)
    )
    t["zxz"] = (
        pm(1, 1, 2 * s(15) / 30) + pm(1, 3, 4 * s(15) / 30)
        + pm(2, 1, 5 * s(3) / 30) + pm(2, 2, 5j * s(3) / 30, +1)
        + pm(3, 1, -15 / 30) + pm(3, 2, -15j / 30, +1)
    )
    t["zyx"] = (
        pm2(1, 3, 2, 1j * s(6) / 6, -1)
        + [((2, 2, 0), 3 * s(2) / 6), ((3, 2, 0), -s(6) / 6), ((4, 0, 0), -2 * s(3) / 6)]
        + pm2(2, 2, 2, s(3) / 6) + pm2(3, 2, 2, 3 / 6)
    )
    t["zyy"] = (
        [((1, 1, 0), 2 * s(30) / 30), ((1, 3, 0), -6 * s(5) / 30),
         ((2, 1, 0), 5 * s(6) / 30), ((3, 1, 0), 15 * s(2) / 30)]
        + pm2(1, 3, 2, -5 * s(6) / 30) + pm2(2, 2, 2, 5j * s(3) / 30, -1)
        + pm2(3, 2, 2, 15j / 30, -1)
    )
    t["zyz"] = (
        pm(1, 1, 2j * s(15) / 30, +1) + pm(1, 3, 4j * s(15) / 30, +1)
        + pm(2, 1, 5j * s(3) / 30, +1) + pm(2, 2, -5 * s(3) / 30)
        + pm(3, 1, -15j / 30, +1) + pm(3, 2, 15 / 30)
    )
    t["zzx"] = (
        pm(1, 1, s(5) / (5 * s(3))) + pm(1, 3, 2 * s(5) / (5 * s(3)))
        + pm(2, 1, -5 / (5 * s(3))) + pm(2, 2, -5j / (5 * s(3)), +1)
    )
    t["zzy"] = (
        pm(1, 1, 1j * s(5) / (5 * s(3)), +1) + pm(1, 3, 2j * s(5) / (5 * s(3)), +1)
        + pm(2, 1, -5j / (5 * s(3)), +1) + pm(2, 2, 5 / (5 * s(3)))
    )
    t["zzz"] = [((1, 1, 0), s(6) / s(5)), ((1, 3, 0), 2 / s(5))]
    return t


def trilinear_tables() -> tuple:
    """Both trilinear coefficient maps at three-spin scale.

    Returns ``(tensor_to_cartesian, cartesian_to_tensor)``: the first
    maps (tau, j, m) to ``[(axis word, coeff)]``, the second maps an
    axis word to the expansion of 4 I_abc over ``((tau, j, m), coeff)``.
    """
    return _tensor_to_cartesian_table(), _cartesian_to_tensor_table()


def trilinear_scale(n: int, direction: str) -> float:
    """Caption scaling for embedding the three-spin tables in n spins."""
    if n < 3:
        raise ValueError("trilinear tables need n >= 3")
    if direction == "to_cartesian":
        return (1 / _SQ2) ** (n - 3)  # multiplies the tensor side
    if direction == "from_cartesian":
        return _SQ2 ** (n - 3)  # multiplies 4 I_abc
    raise ValueError(f"unknown direction {direction!r}")


# --------------------------------------------------------------------------
# fixture plumbing

def _complex_pair(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def tables_as_json() -> dict:
    tens2cart, cart2tens = trilinear_tables()
    return {
        "version": 1,
        "linear_to_lisa": [[_complex_pair(z) for z in row] for row in _lin_to_lisa()],
        "linear_from_lisa": [[_complex_pair(z) for z in row] for row in _lin_from_lisa()],
        "bilinear_to_lisa": [[_complex_pair(z) for z in row] for row in _bil_to_lisa()],
        "bilinear_from_lisa": [[_complex_pair(z) for z in row] for row in _bil_from_lisa()],
        "trilinear_tensor_to_cartesian": [
            {
                "tau": tau,
                "j": j,
                "m": m,
                "terms": [{"axes": abc, "c": _complex_pair(c)} for c, abc in terms],
            }
            for (tau, j, m), terms in sorted(tens2cart.items())
        ],
        "trilinear_cartesian_to_tensor": [
            {
                "axes": abc,
                "terms": [
                    {"tau": tau, "j": j, "m": m, "c": _complex_pair(c)}
                    for (tau, j, m), c in terms
                ],
            }
            for abc, terms in sorted(cart2tens.items())
        ],
    }


def load_table_fixture() -> dict:
    path = importlib.resources.files("drops") / "tables" / "trilinear_tables.json"
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)
