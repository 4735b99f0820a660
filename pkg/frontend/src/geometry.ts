/**
 * Droplet surface tessellation.
 *
 * Vertices mirror the server grid 1:1 (no client resampling): vertex
 * (it, ip) sits at radius[it][ip] along the unit direction of
 * theta = pi * it / (n_theta - 1), phi = 2 pi * ip / n_phi, offset by
 * the droplet anchor. The azimuthal seam wraps around; triangles tile
 * the quads between neighbouring grid lines.
 */

import { DropletMesh, Scene, SceneGrid } from "./types.js";
import { phaseToRgb } from "./colormap.js";

export interface SurfaceData {
  positions: Float32Array; // xyz per vertex
  colors: Float32Array; // rgb per vertex
  indices: Uint32Array; // triangle list
  grid: SceneGrid;
  anchor: [number, number];
}

export function dropletSurface(
  droplet: DropletMesh,
  grid: SceneGrid,
  scale = 1.0,
): SurfaceData {
  const { n_theta, n_phi } = grid;
  const positions = new Float32Array(n_theta * n_phi * 3);
  const colors = new Float32Array(n_theta * n_phi * 3);
  const [ax, ay] = droplet.anchor;
  for (let it = 0; it < n_theta; it++) {
    const theta = (Math.PI * it) / (n_theta - 1);
    for (let ip = 0; ip < n_phi; ip++) {
      const phi = (2 * Math.PI * ip) / n_phi;
      const r = droplet.radius[it][ip] * scale;
      const v = (it * n_phi + ip) * 3;
      positions[v] = ax + r * Math.sin(theta) * Math.cos(phi);
      positions[v + 1] = ay + r * Math.sin(theta) * Math.sin(phi);
      positions[v + 2] = r * Math.cos(theta);
      const [red, green, blue] = phaseToRgb(droplet.phase[it][ip]);
      colors[v] = red;
      colors[v + 1] = green;
      colors[v + 2] = blue;
    }
  }
  const quads = (n_theta - 1) * n_phi;
  const indices = new Uint32Array(quads * 6);
  let w = 0;
  for (let it = 0; it < n_theta - 1; it++) {
    for (let ip = 0; ip < n_phi; ip++) {
      const a = it * n_phi + ip;
      const b = it * n_phi + ((ip + 1) % n_phi);
      const c = (it + 1) * n_phi + ip;
      const d = (it + 1) * n_phi + ((ip + 1) % n_phi);
      indices[w++] = a;
      indices[w++] = b;
      indices[w++] = d;
      indices[w++] = a;
      indices[w++] = d;
      indices[w++] = c;
    }
  }
  return { positions, colors, indices, grid, anchor: droplet.anchor };
}

export function sceneSurfaces(scene: Scene, scale = 1.0): SurfaceData[] {
  return scene.droplets.map((droplet) => dropletSurface(droplet, scene.grid, scale));
}

export interface VertexPick {
  thetaIndex: number;
  phiIndex: number;
  radius: number;
  color: [number, number, number];
}

/** Vertex with the largest radius of one droplet surface. */
export function maxRadiusVertex(droplet: DropletMesh, grid: SceneGrid): VertexPick {
  let best: VertexPick = {
    thetaIndex: 0,
    phiIndex: 0,
    radius: -1,
    color: [0, 0, 0],
  };
  for (let it = 0; it < grid.n_theta; it++) {
    for (let ip = 0; ip < grid.n_phi; ip++) {
      const r = droplet.radius[it][ip];
      if (r > best.radius) {
        best = {
          thetaIndex: it,
          phiIndex: ip,
          radius: r,
          color: phaseToRgb(droplet.phase[it][ip]),
        };
      }
    }
  }
  return best;
}
