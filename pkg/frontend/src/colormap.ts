/**
 * Phase-to-color mapping: hue wheel with red at phase 0 and cyan at
 * phase pi, matching the server-side key. Saturation and value stay at
 * one so Hermitian operators render in exactly two colors.
 */

const TWO_PI = 2 * Math.PI;

export function phaseToHue(phase: number): number {
  return (((phase % TWO_PI) + TWO_PI) % TWO_PI) / TWO_PI;
}

/** HSV (s = v = 1) to RGB in [0, 1]. */
export function hueToRgb(hue: number): [number, number, number] {
  const h = ((hue % 1) + 1) % 1;
  const sector = Math.floor(h * 6);
  const f = h * 6 - sector;
  switch (sector % 6) {
    case 0:
      return [1, f, 0];
    case 1:
      return [1 - f, 1, 0];
    case 2:
      return [0, 1, f];
    case 3:
      return [0, 1 - f, 1];
    case 4:
      return [f, 0, 1];
    default:
      return [1, 0, 1 - f];
  }
}

export function phaseToRgb(phase: number): [number, number, number] {
  return hueToRgb(phaseToHue(phase));
}
