/**
 * View state: what the explorer currently shows. Scenes are stored as
 * raw payloads (server truth, byte for byte); the playback position
 * scrubs through that history without re-running any physics.
 */

import { Scene } from "./types.js";
import { ScenePayload } from "./api.js";

export interface ColorSettings {
  zeroPhaseHue: number; // red
  piPhaseHue: number; // cyan
}

export interface CameraState {
  azimuth: number;
  elevation: number;
  distance: number;
}

export class ViewState {
  sessionId: string | null = null;
  selectedDroplet: number | null = null;
  camera: CameraState = { azimuth: 0.6, elevation: 0.35, distance: 6 };
  colors: ColorSettings = { zeroPhaseHue: 0.0, piPhaseHue: 0.5 };
  private history: ScenePayload[] = [];
  private cursor = -1;

  pushScene(payload: ScenePayload): void {
    // a new server truth truncates anything scrubbed past
    this.history = this.history.slice(0, this.cursor + 1);
    this.history.push(payload);
    this.cursor = this.history.length - 1;
  }

  resetHistory(payload: ScenePayload): void {
    this.history = [payload];
    this.cursor = 0;
  }

  get current(): ScenePayload | null {
    return this.cursor >= 0 ? this.history[this.cursor] : null;
  }

  get currentScene(): Scene | null {
    return this.current?.scene ?? null;
  }

  get length(): number {
    return this.history.length;
  }

  get position(): number {
    return this.cursor;
  }

  scrubTo(position: number): ScenePayload {
    if (position < 0 || position >= this.history.length) {
      throw new RangeError(`history position ${position} out of range`);
    }
    this.cursor = position;
    return this.history[position];
  }
}
