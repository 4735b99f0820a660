/**
 * Three.js rendering of droplet surfaces. Geometry comes straight from
 * geometry.ts (server grid 1:1); this module only wraps it into meshes
 * and a scene graph.
 */

import * as THREE from "three";

import { Scene } from "./types.js";
import { sceneSurfaces, SurfaceData } from "./geometry.js";

export function surfaceToMesh(surface: SurfaceData): THREE.Mesh {
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(surface.positions, 3));
  geometry.setAttribute("color", new THREE.BufferAttribute(surface.colors, 3));
  geometry.setIndex(new THREE.BufferAttribute(surface.indices, 1));
  geometry.computeVertexNormals();
  const material = new THREE.MeshLambertMaterial({
    vertexColors: true,
    side: THREE.DoubleSide,
  });
  return new THREE.Mesh(geometry, material);
}

export function buildSceneGraph(scene: Scene, scale = 1.0): THREE.Group {
  const group = new THREE.Group();
  for (const surface of sceneSurfaces(scene, scale)) {
    group.add(surfaceToMesh(surface));
  }
  return group;
}

export interface Renderer {
  replaceScene(scene: Scene): void;
  dispose(): void;
}

/** Canvas-bound renderer; requires a WebGL context (browser only). */
export function createRenderer(canvas: HTMLCanvasElement): Renderer {
  const renderer = new THREE.WebGLRenderer({ canvas, antialias: true });
  const camera = new THREE.PerspectiveCamera(45, canvas.width / canvas.height, 0.01, 100);
  camera.position.set(0, -5, 3);
  camera.lookAt(0, 0.5, 0);
  const root = new THREE.Scene();
  root.background = new THREE.Color(0xffffff);
  root.add(new THREE.AmbientLight(0xffffff, 0.7));
  const sun = new THREE.DirectionalLight(0xffffff, 0.8);
  sun.position.set(2, -4, 6);
  root.add(sun);
  let group: THREE.Group | null = null;

  function draw() {
    renderer.render(root, camera);
  }

  return {
    replaceScene(scene: Scene) {
      if (group) root.remove(group);
      group = buildSceneGraph(scene);
      root.add(group);
      draw();
    },
    dispose() {
      renderer.dispose();
    },
  };
}
