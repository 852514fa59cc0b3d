/** Inverse mapping from viewport pixels to matrix cell indices.
 *
 * The engine's protocol addresses regions by row/column index, but the scene
 * only carries painted geometry. The base matrix cells (z = 0 rects) reveal
 * the axis boundaries, so the client can translate a pointer position back
 * into indices without any layout recomputation of its own.
 */

import { Mark, PixelRect, Scene } from './protocol.js';

export interface CellAddress {
  row: number;
  col: number;
}

export class GridIndex {
  private constructor(
    readonly rowStarts: number[],
    readonly colStarts: number[],
    private readonly rowEnd: number,
    private readonly colEnd: number,
  ) {}

  static fromScene(scene: Scene): GridIndex {
    const ys = new Set<number>();
    const xs = new Set<number>();
    let rowEnd = -Infinity;
    let colEnd = -Infinity;
    for (const m of scene.marks) {
      if (m.z !== 0 || m.kind !== 'rect') continue;
      ys.add(m.y!);
      xs.add(m.x!);
      rowEnd = Math.max(rowEnd, m.y! + m.h!);
      colEnd = Math.max(colEnd, m.x! + m.w!);
    }
    const rows = Array.from(ys).sort((a, b) => a - b);
    const cols = Array.from(xs).sort((a, b) => a - b);
    return new GridIndex(rows, cols, rowEnd, colEnd);
  }

  get rowCount(): number {
    return this.rowStarts.length;
  }

  get colCount(): number {
    return this.colStarts.length;
  }

  cellAt(x: number, y: number): CellAddress | null {
    const row = lastStartAtOrBefore(this.rowStarts, y, this.rowEnd);
    const col = lastStartAtOrBefore(this.colStarts, x, this.colEnd);
    if (row === null || col === null) return null;
    return { row, col };
  }

  /** Index region covered by a pixel rectangle (both corners inclusive). */
  regionFor(a: { x: number; y: number }, b: { x: number; y: number }): PixelRegion | null {
    const c1 = this.cellAt(Math.min(a.x, b.x), Math.min(a.y, b.y));
    const c2 = this.cellAt(Math.max(a.x, b.x), Math.max(a.y, b.y));
    if (!c1 || !c2) return null;
    return {
      row0: c1.row,
      col0: c1.col,
      rows: c2.row - c1.row + 1,
      cols: c2.col - c1.col + 1,
    };
  }
}

export interface PixelRegion {
  row0: number;
  col0: number;
  rows: number;
  cols: number;
}

function lastStartAtOrBefore(starts: number[], v: number, end: number): number | null {
  if (starts.length === 0 || v < starts[0] || v >= end) return null;
  let lo = 0;
  let hi = starts.length - 1;
  while (lo < hi) {
    const mid = (lo + hi + 1) >> 1;
    if (starts[mid] <= v) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

export function pointInRect(x: number, y: number, r: PixelRect): boolean {
  return x >= r.x && x < r.x + r.w && y >= r.y && y < r.y + r.h;
}

/** Topmost mark carrying an edit handle under the pointer. */
export function editHandleAt(scene: Scene, x: number, y: number, slop = 4): Mark | null {
  for (let i = scene.marks.length - 1; i >= 0; i--) {
    const m = scene.marks[i];
    if (!m.edit) continue;
    if (hitMark(m, x, y, slop)) return m;
  }
  return null;
}

function hitMark(m: Mark, x: number, y: number, slop: number): boolean {
  switch (m.kind) {
    case 'rect':
      return x >= m.x! - slop && x <= m.x! + m.w! + slop && y >= m.y! - slop && y <= m.y! + m.h! + slop;
    case 'circle': {
      const dx = x - m.cx!;
      const dy = y - m.cy!;
      const r = m.r! + slop;
      return dx * dx + dy * dy <= r * r;
    }
    case 'path': {
      // hatch placeholder: hit-test its bounding box
      const coords = Array.from((m.d ?? '').matchAll(/([-\d.]+),([-\d.]+)/g));
      if (coords.length === 0) return false;
      const xs = coords.map((c) => parseFloat(c[1]));
      const ys = coords.map((c) => parseFloat(c[2]));
      return (
        x >= Math.min(...xs) - slop &&
        x <= Math.max(...xs) + slop &&
        y >= Math.min(...ys) - slop &&
        y <= Math.max(...ys) + slop
      );
    }
    default:
      return false;
  }
}
