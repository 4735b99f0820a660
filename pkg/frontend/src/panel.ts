/**
 * Control-panel actions: build segment payloads from panel inputs and
 * drive them through the service in order. The panel never renders
 * anything it computed itself; every action returns the server's scene
 * and appends it to the view history.
 */

import { DropsClient, ScenePayload, ServiceError } from "./api.js";
import { Segment, CouplingEntry } from "./types.js";
import { ViewState } from "./state.js";

export interface PulseInputs {
  axis: "x" | "y" | "z";
  amplitudeHz: number;
  durationS: number;
}

export interface DelayInputs {
  durationS: number;
  couplings: CouplingEntry[];
  a: number;
  b: number;
}

export function buildPulseSegment(inputs: PulseInputs): Segment {
  return {
    kind: "pulse",
    duration: inputs.durationS,
    amplitude: inputs.amplitudeHz,
    phase: inputs.axis,
  };
}

export function buildDelaySegment(inputs: DelayInputs): Segment {
  return {
    kind: "delay",
    duration: inputs.durationS,
    couplings: inputs.couplings,
    a: inputs.a,
    b: inputs.b,
  };
}

/** Uniform coupling matrix helper for the delay builder. */
export function uniformCouplings(n: number, jHz: number): CouplingEntry[] {
  const entries: CouplingEntry[] = [];
  for (let k = 1; k <= n; k++) {
    for (let l = k + 1; l <= n; l++) {
      entries.push({ pair: [k, l], j_hz: jHz });
    }
  }
  return entries;
}

export type PanelError = { kind: "service" | "format"; message: string };

export class ControlPanel {
  lastError: PanelError | null = null;

  constructor(
    private client: DropsClient,
    private view: ViewState,
  ) {}

  private async guarded(action: () => Promise<ScenePayload>): Promise<ScenePayload | null> {
    try {
      const payload = await action();
      this.lastError = null;
      return payload;
    } catch (err) {
      if (err instanceof ServiceError) {
        // validation failures surface inline instead of mutating state
        this.lastError = { kind: "service", message: err.detail };
        return null;
      }
      throw err;
    }
  }

  async connect(
    n: number,
    basis: "lisa" | "multipole" = "lisa",
    grid?: [number, number],
    state?: string,
  ): Promise<void> {
    this.view.sessionId = await this.client.createSession(n, basis, grid, state);
    const payload = await this.client.getScene(this.view.sessionId);
    this.view.resetHistory(payload);
  }

  private get sessionId(): string {
    if (this.view.sessionId === null) {
      throw new Error("panel is not connected to a session");
    }
    return this.view.sessionId;
  }

  async applyPulse(inputs: PulseInputs): Promise<ScenePayload | null> {
    const payload = await this.guarded(() =>
      this.client.applySegment(this.sessionId, buildPulseSegment(inputs)),
    );
    if (payload) this.view.pushScene(payload);
    return payload;
  }

  async applyDelay(inputs: DelayInputs): Promise<ScenePayload | null> {
    const payload = await this.guarded(() =>
      this.client.applySegment(this.sessionId, buildDelaySegment(inputs)),
    );
    if (payload) this.view.pushScene(payload);
    return payload;
  }

  async rotateSlider(axis: "x" | "y" | "z", angle: number): Promise<ScenePayload | null> {
    const payload = await this.guarded(() =>
      this.client.rotate(this.sessionId, axis, angle),
    );
    if (payload) this.view.pushScene(payload);
    return payload;
  }

  async resetState(state: string): Promise<ScenePayload | null> {
    const payload = await this.guarded(() => this.client.reset(this.sessionId, state));
    if (payload) this.view.resetHistory(payload);
    return payload;
  }

  scrub(position: number): ScenePayload {
    return this.view.scrubTo(position);
  }

  /** Replay a list of prepared segments in order; returns the payloads. */
  async replay(segments: Segment[]): Promise<ScenePayload[]> {
    const payloads: ScenePayload[] = [];
    for (const segment of segments) {
      const payload = await this.client.applySegment(this.sessionId, segment);
      this.view.pushScene(payload);
      payloads.push(payload);
    }
    return payloads;
  }
}
