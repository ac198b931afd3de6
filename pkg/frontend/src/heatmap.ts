// Attention-heatmap rendering helpers: bilinear upsampling of the model's
// coarse grid and a blue-to-red colormap (red = highest attention).

export function bilinearUpsample(
  grid: number[][],
  outW: number,
  outH: number,
): Float64Array {
  const gh = grid.length;
  const gw = grid[0].length;
  const out = new Float64Array(outW * outH);
  for (let y = 0; y < outH; y++) {
    // map pixel center into grid-cell-center coordinates
    const gy = ((y + 0.5) / outH) * gh - 0.5;
    const y0 = Math.max(0, Math.min(gh - 1, Math.floor(gy)));
    const y1 = Math.min(gh - 1, y0 + 1);
    const fy = Math.max(0, Math.min(1, gy - y0));
    for (let x = 0; x < outW; x++) {
      const gx = ((x + 0.5) / outW) * gw - 0.5;
      const x0 = Math.max(0, Math.min(gw - 1, Math.floor(gx)));
      const x1 = Math.min(gw - 1, x0 + 1);
      const fx = Math.max(0, Math.min(1, gx - x0));
      const top = grid[y0][x0] * (1 - fx) + grid[y0][x1] * fx;
      const bottom = grid[y1][x0] * (1 - fx) + grid[y1][x1] * fx;
      out[y * outW + x] = top * (1 - fy) + bottom * fy;
    }
  }
  return out;
}

// t in [0, 1]: 0 = blue (cold), 1 = red (hot).
export function blueRed(t: number): [number, number, number] {
  const c = Math.max(0, Math.min(1, t));
  return [Math.round(255 * c), 0, Math.round(255 * (1 - c))];
}

// RGBA pixels for an ImageData overlay at the given opacity.
export function heatmapPixels(
  grid: number[][],
  outW: number,
  outH: number,
  alpha = 0.4,
): Uint8ClampedArray<ArrayBuffer> {
  const values = bilinearUpsample(grid, outW, outH);
  const rgba = new Uint8ClampedArray(new ArrayBuffer(outW * outH * 4));
  const a = Math.round(255 * alpha);
  for (let i = 0; i < values.length; i++) {
    const [r, g, b] = blueRed(values[i]);
    rgba[i * 4] = r;
    rgba[i * 4 + 1] = g;
    rgba[i * 4 + 2] = b;
    rgba[i * 4 + 3] = a;
  }
  return rgba;
}
