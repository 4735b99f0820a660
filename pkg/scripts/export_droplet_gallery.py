#!/usr/bin/env python3
"""Export a gallery of characteristic droplet scenes.

Covers the named pure states, the standard coupling Hamiltonians, and a
few Cartesian product operators, in both basis choices where available.
"""

import argparse
import pathlib

from drops import dropsmap as dm
from drops import dynamics as dy
from drops import multipole as mp
from drops import scene as sc
from drops import tensorbasis as tb
from drops.expr import parse_operator

GALLERY = [
    ("bell_phi_plus", 2, "Phi+"),
    ("product_00", 2, "zero-product"),
    ("w_state", 3, "W"),
    ("ghz_state", 3, "GHZ"),
    ("thermal_z", 3, "I1z+I2z+I3z"),
    ("antiphase", 2, "2*I1x*I2y"),
    ("triple_x", 3, "4*I1x*I2x*I3x"),
]

HAMILTONIANS = [
    ("ising_zz", 0.0, 1.0),
    ("isotropic", 1.0, 1.0),
    ("planar", 1.0, 0.0),
    ("dipolar", 1.0, -2.0),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="gallery")
    parser.add_argument("--grid", type=int, nargs=2, default=[32, 64])
    args = parser.parse_args()
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = tuple(args.grid)

    for name, n, expression in GALLERY:
        basis = tb.build_lisa_basis(n)
        op = parse_operator(expression, n)
        scene = sc.build_scene(dm.decompose(op, basis), basis, grid=grid)
        (outdir / f"{name}_lisa.json").write_text(sc.scene_dumps(scene))
        if n <= 3:
            mbasis = mp.build_multipole_basis(n)
            scene = sc.build_scene(
                dm.decompose(op, mbasis), mbasis, kind="multipole", grid=grid
            )
            (outdir / f"{name}_multipole.json").write_text(sc.scene_dumps(scene))

    basis2 = tb.build_lisa_basis(2)
    for name, a, b in HAMILTONIANS:
        h = dy.coupling_hamiltonian(2, {(1, 2): 1.0}, a, b)
        scene = sc.build_scene(dm.decompose(h, basis2), basis2, grid=grid)
        (outdir / f"coupling_{name}.json").write_text(sc.scene_dumps(scene))

    print(f"wrote gallery to {outdir}")


if __name__ == "__main__":
    main()
