import type { Pt } from "./types.js";

/**
 * Map a click in display space onto image space. The scanner service
 * expects image coordinates; the preview canvas may be shown at any
 * CSS size, so clicks scale by (imageSize / displaySize) exactly.
 */
export function displayToImage(
  p: Pt,
  displayW: number,
  displayH: number,
  imageW: number,
  imageH: number,
): Pt {
  return { x: (p.x * imageW) / displayW, y: (p.y * imageH) / displayH };
}

/** Inverse of displayToImage, used to place overlay markers. */
export function imageToDisplay(
  p: Pt,
  displayW: number,
  displayH: number,
  imageW: number,
  imageH: number,
): Pt {
  return { x: (p.x * displayW) / imageW, y: (p.y * displayH) / imageH };
}

/** Clamp a point into the image's valid pixel range. */
export function clampToImage(p: Pt, imageW: number, imageH: number): Pt {
  return {
    x: Math.min(Math.max(p.x, 0), imageW - 1),
    y: Math.min(Math.max(p.y, 0), imageH - 1),
  };
}
