/**
 * Service client. Every call returns the raw response text alongside
 * the parsed scene so callers can keep byte-exact payload history.
 */

import { Scene, Segment, assertScene } from "./types.js";

export class ServiceError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`service ${status}: ${detail}`);
    this.name = "ServiceError";
  }
}

export interface ScenePayload {
  scene: Scene;
  raw: string;
}

async function checked(response: Response): Promise<string> {
  const text = await response.text();
  if (!response.ok) {
    let detail = text;
    try {
      detail = JSON.parse(text).detail ?? text;
    } catch {
      // leave raw body as detail
    }
    throw new ServiceError(response.status, String(detail));
  }
  return text;
}

function scenePayload(text: string): ScenePayload {
  return { scene: assertScene(JSON.parse(text)), raw: text };
}

export class DropsClient {
  constructor(private baseUrl: string) {}

  async createSession(
    n: number,
    basis: "lisa" | "multipole" = "lisa",
    grid?: [number, number],
    state?: string,
  ): Promise<string> {
    const body: Record<string, unknown> = { n, basis };
    if (grid) body.grid = grid;
    if (state !== undefined) body.state = state;
    const text = await checked(
      await fetch(`${this.baseUrl}/session`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
    return (JSON.parse(text) as { id: string }).id;
  }

  async getScene(sessionId: string): Promise<ScenePayload> {
    const text = await checked(
      await fetch(`${this.baseUrl}/session/${sessionId}/scene`),
    );
    return scenePayload(text);
  }

  private async post(path: string, body: unknown): Promise<ScenePayload> {
    const text = await checked(
      await fetch(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
    return scenePayload(text);
  }

  applySegment(sessionId: string, segment: Segment): Promise<ScenePayload> {
    return this.post(`/session/${sessionId}/apply`, segment);
  }

  rotate(sessionId: string, axis: "x" | "y" | "z", angle: number): Promise<ScenePayload> {
    return this.post(`/session/${sessionId}/rotate`, { axis, angle });
  }

  reset(sessionId: string, state: string): Promise<ScenePayload> {
    return this.post(`/session/${sessionId}/reset`, { state });
  }

  async basisLabels(n: number, basis = "lisa"): Promise<unknown> {
    const text = await checked(
      await fetch(`${this.baseUrl}/basis/${n}/labels?basis=${basis}`),
    );
    return JSON.parse(text);
  }
}
