"""Scene export: droplet meshes on layout anchors, ready for a viewer.

A scene samples every droplet of a spectrum on a regular closed grid
(radius = |f|, phase in (-pi, pi]) and attaches 2D anchor positions:
for three spins the identity sits at the centroid of a triangle whose
vertices carry the linear droplets, bilinear droplets sit on the edge
midpoints, and the four trilinear symmetry types form a row above.
Serialization is canonical (sorted structure, compact separators) so
equal scenes are byte-equal.
"""

from __future__ import annotations

import colorsys
import json
import math

import numpy as np

from .dropsmap import DropletSpectrum, eval_droplet

__all__ = [
    "DEFAULT_GRID",
    "layout_positions",
    "build_scene",
    "scene_dumps",
    "scene_loads",
    "scene_to_obj",
    "phase_to_rgb",
]

DEFAULT_GRID = (64, 128)

_TRIANGLE = {
    (): (0.0, 0.0),
    (1,): (0.0, 1.0),
    (2,): (-0.866, -0.5),
    (3,): (0.866, -0.5),
    (1, 2): (-0.433, 0.25),
    (1, 3): (0.433, 0.25),
    (2, 3): (0.0, -0.5),
}


def layout_positions(basis) -> dict:
    """Anchor coordinates per droplet label."""
    labels = list(basis.droplets.keys())
    n = basis.n
    positions: dict = {}
    if hasattr(labels[0], "spins") and not hasattr(labels[0], "from_block"):
        if n == 1:
            table = {(): (0.0, 0.0), (1,): (0.0, 1.0)}
            return {lab: table[lab.spins] for lab in labels}
        if n == 2:
            table = {(): (0.0, 0.0), (1,): (-1.0, 0.0), (2,): (1.0, 0.0), (1, 2): (0.0, 1.0)}
            return {lab: table[lab.spins] for lab in labels}
        if n == 3:
            tri = [lab for lab in labels if lab.g == 3]
            for lab in labels:
                if lab.g < 3:
                    positions[lab] = _TRIANGLE[lab.spins]
            for i, lab in enumerate(tri):
                positions[lab] = (-1.5 + i * 1.0, 2.0)
            return positions
        # generic fallback: one row per linearity
        by_g: dict = {}
        for lab in labels:
            by_g.setdefault(lab.g, []).append(lab)
        for g, group in by_g.items():
            for i, lab in enumerate(group):
                positions[lab] = (i - (len(group) - 1) / 2.0, 1.5 * g)
        return positions
    # multipole labels: block-index grid, diagonal on the lower row
    keys: list = []
    for lab in labels:
        for block in (lab.from_block, lab.to_block):
            if block not in keys:
                keys.append(block)
    for lab in labels:
        i, j = keys.index(lab.from_block), keys.index(lab.to_block)
        positions[lab] = (float(i - j), 1.5 * (i + j) / 2.0)
    return positions


def build_scene(
    spectrum: DropletSpectrum,
    basis,
    kind: str = "lisa",
    grid: tuple = DEFAULT_GRID,
    step: int = 0,
) -> dict:
    """Sample all droplets into a serializable scene."""
    n_theta, n_phi = grid
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    anchors = layout_positions(basis)
    droplets = []
    for label in basis.droplets:
        values = eval_droplet(spectrum, label, tt, pp)
        radius = np.abs(values)
        phase = np.angle(values)
        phase[radius < 1e-14] = 0.0
        label_json = label.to_json() if hasattr(label, "to_json") else label
        droplets.append(
            {
                "label": label_json,
                "anchor": [float(anchors[label][0]), float(anchors[label][1])],
                "radius": [[float(v) for v in row] for row in radius],
                "phase": [[float(v) for v in row] for row in phase],
            }
        )
    return {
        "basis": kind,
        "n": spectrum.n,
        "step": step,
        "grid": {"n_theta": n_theta, "n_phi": n_phi},
        "droplets": droplets,
    }


def scene_dumps(scene: dict) -> str:
    """Canonical byte-stable serialization."""
    return json.dumps(scene, separators=(",", ":"), ensure_ascii=False)


def scene_loads(text: str) -> dict:
    return json.loads(text)


def phase_to_rgb(phase: float) -> tuple:
    """Hue wheel with red at phase 0 and cyan at phase pi."""
    hue = (phase % (2 * math.pi)) / (2 * math.pi)
    return colorsys.hsv_to_rgb(hue, 1.0, 1.0)


def scene_to_obj(scene: dict, droplet_scale: float = 1.0) -> str:
    """ASCII triangle mesh (Wavefront style, vertex colors appended).

    Vertices are written as ``v x y z r g b``; the droplet anchor sets
    the x/y offset and the azimuthal seam is stitched closed.
    """
    lines = ["# droplet scene mesh"]
    offset = 0
    for rec in scene["droplets"]:
        n_theta = scene["grid"]["n_theta"]
        n_phi = scene["grid"]["n_phi"]
        ax, ay = rec["anchor"]
        for it in range(n_theta):
            theta = math.pi * it / (n_theta - 1)
            for ip in range(n_phi):
                phi = 2 * math.pi * ip / n_phi
                r = rec["radius"][it][ip] * droplet_scale
                x = ax + r * math.sin(theta) * math.cos(phi)
                y = ay + r * math.sin(theta) * math.sin(phi)
                z = r * math.cos(theta)
                red, green, blue = phase_to_rgb(rec["phase"][it][ip])
                lines.append(
                    f"v {x:.6f} {y:.6f} {z:.6f} {red:.4f} {green:.4f} {blue:.4f}"
                )

        def vid(it, ip):
            return offset + it * n_phi + (ip % n_phi) + 1

        for it in range(n_theta - 1):
            for ip in range(n_phi):
                a = vid(it, ip)
                b = vid(it, ip + 1)
                c = vid(it + 1, ip)
                d = vid(it + 1, ip + 1)
                lines.append(f"f {a} {b} {d}")
                lines.append(f"f {a} {d} {c}")
        offset += n_theta * n_phi
    return "\n".join(lines) + "\n"
