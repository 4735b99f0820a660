/**
 * Payload shapes exchanged with the droplet service.
 *
 * The frontend never computes physics: these are pure views of what the
 * server sends, and every mutation goes through a POST.
 */

export interface SceneGrid {
  n_theta: number;
  n_phi: number;
}

export type DropletLabel =
  | { G: number[]; tau: number[][] | null }
  | { from: [number | null, number]; to: [number | null, number] };

export interface DropletMesh {
  label: DropletLabel;
  anchor: [number, number];
  radius: number[][];
  phase: number[][];
}

export interface Scene {
  basis: "lisa" | "multipole";
  n: number;
  step: number;
  grid: SceneGrid;
  droplets: DropletMesh[];
}

export interface CouplingEntry {
  pair: [number, number];
  j_hz: number;
}

export interface Segment {
  kind: "pulse" | "delay";
  duration: number;
  amplitude?: number;
  phase?: "x" | "y" | "z";
  couplings?: CouplingEntry[];
  a?: number;
  b?: number;
  couplings_during_pulse?: boolean;
}

export class SceneFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SceneFormatError";
  }
}

/** Validate a parsed payload as a Scene; throws SceneFormatError. */
export function assertScene(data: unknown): Scene {
  const scene = data as Scene;
  if (typeof scene !== "object" || scene === null) {
    throw new SceneFormatError("scene payload is not an object");
  }
  if (scene.basis !== "lisa" && scene.basis !== "multipole") {
    throw new SceneFormatError(`unknown basis ${String(scene.basis)}`);
  }
  if (!Number.isInteger(scene.n) || scene.n < 1) {
    throw new SceneFormatError("bad spin count");
  }
  if (
    typeof scene.grid !== "object" ||
    !Number.isInteger(scene.grid.n_theta) ||
    !Number.isInteger(scene.grid.n_phi)
  ) {
    throw new SceneFormatError("bad grid description");
  }
  if (!Array.isArray(scene.droplets)) {
    throw new SceneFormatError("missing droplet list");
  }
  const { n_theta, n_phi } = scene.grid;
  for (const droplet of scene.droplets) {
    if (!Array.isArray(droplet.anchor) || droplet.anchor.length !== 2) {
      throw new SceneFormatError("droplet without anchor");
    }
    for (const key of ["radius", "phase"] as const) {
      const rows = droplet[key];
      if (!Array.isArray(rows) || rows.length !== n_theta) {
        throw new SceneFormatError(`${key} grid has wrong row count`);
      }
      for (const row of rows) {
        if (!Array.isArray(row) || row.length !== n_phi) {
          throw new SceneFormatError(`${key} grid has wrong column count`);
        }
      }
    }
  }
  return scene;
}
