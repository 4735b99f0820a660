/**
 * Explorer entry point: wires the control panel DOM to the service
 * client and the renderer. All physics lives behind the POSTs.
 */

import { DropsClient } from "./api.js";
import { ControlPanel, uniformCouplings } from "./panel.js";
import { ViewState } from "./state.js";
import { createRenderer } from "./render.js";
import { SceneFormatError } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showBanner(message: string | null) {
  const banner = el<HTMLDivElement>("error-banner");
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";
}

export async function boot(baseUrl: string): Promise<void> {
  const client = new DropsClient(baseUrl);
  const view = new ViewState();
  const panel = new ControlPanel(client, view);
  const renderer = createRenderer(el<HTMLCanvasElement>("viewport"));

  function refresh() {
    const scene = view.currentScene;
    if (!scene) return;
    try {
      renderer.replaceScene(scene);
    } catch (err) {
      if (err instanceof SceneFormatError) {
        showBanner(`malformed scene: ${err.message}`);
        return;
      }
      throw err;
    }
    el<HTMLSpanElement>("step-label").textContent = `step ${scene.step}`;
    const scrubber = el<HTMLInputElement>("history-scrubber");
    scrubber.max = String(view.length - 1);
    scrubber.value = String(view.position);
    showBanner(panel.lastError ? panel.lastError.message : null);
  }

  async function act(run: () => Promise<unknown>) {
    await run();
    if (panel.lastError) showBanner(panel.lastError.message);
    refresh();
  }

  el<HTMLButtonElement>("pulse-apply").onclick = () =>
    act(() =>
      panel.applyPulse({
        axis: el<HTMLSelectElement>("pulse-axis").value as "x" | "y" | "z",
        amplitudeHz: Number(el<HTMLInputElement>("pulse-amplitude").value),
        durationS: Number(el<HTMLInputElement>("pulse-duration").value),
      }),
    );

  el<HTMLButtonElement>("delay-apply").onclick = () =>
    act(() =>
      panel.applyDelay({
        durationS: Number(el<HTMLInputElement>("delay-duration").value),
        couplings: uniformCouplings(
          view.currentScene?.n ?? 2,
          Number(el<HTMLInputElement>("delay-j").value),
        ),
        a: Number(el<HTMLInputElement>("model-a").value),
        b: Number(el<HTMLInputElement>("model-b").value),
      }),
    );

  for (const axis of ["x", "y", "z"] as const) {
    el<HTMLInputElement>(`rotate-${axis}`).onchange = (event) =>
      act(() =>
        panel.rotateSlider(axis, Number((event.target as HTMLInputElement).value)),
      );
  }

  el<HTMLButtonElement>("state-reset").onclick = () =>
    act(() => panel.resetState(el<HTMLInputElement>("state-input").value));

  el<HTMLInputElement>("history-scrubber").oninput = (event) => {
    panel.scrub(Number((event.target as HTMLInputElement).value));
    refresh();
  };

  await panel.connect(Number(el<HTMLSelectElement>("spin-count").value));
  refresh();
}
