/** Translates pointer and keyboard input into protocol commands.
 *
 * Gestures, matching the engine's interaction repertoire:
 * - click / drag a rectangle on the matrix     -> create_rmc (shift: unit grid)
 * - mouse wheel over a focus cell              -> scale_rmc (ctrl: x-only, meta: y-only)
 * - alt+drag from inside a focus cell          -> resize_region on the nearest edge
 * - drag an edit handle                        -> begin_edit / preview_edit / commit_edit
 *                                                 (previews coalesced to one per frame)
 * - space / tab over a cell                    -> toggle_where / switch_what
 * - delete or backspace over a cell            -> dismiss_rmc
 * - arrow left/right over a cell               -> set_vis cycling the chart kinds
 * - typed number committed via numericEntry()  -> commit_edit (numeric-entry)
 */

import { editHandleAt, GridIndex, pointInRect } from './grid.js';
import { EditHandle, PixelRect } from './protocol.js';
import { ClientSession, FrameScheduler } from './session.js';

export interface PointerLike {
  x: number;
  y: number;
  shiftKey?: boolean;
  altKey?: boolean;
  ctrlKey?: boolean;
  metaKey?: boolean;
}

export interface WheelLike extends PointerLike {
  deltaY: number;
}

export interface KeyLike {
  key: string;
}

const VIS_CYCLE = ['bar', 'star', 'grouped-bar', 'overlaid-star', 'diff-bar', 'parallel-coordinates', 'node-link'];
const CLICK_SLOP_PX = 3;
const WHEEL_STEP_PX = 24;

export class InputController {
  private anchor: PointerLike | null = null;
  private cursor: PointerLike = { x: 0, y: 0 };
  private editing: { handle: EditHandle; startY: number } | null = null;
  private pendingPreview: number | null = null;
  private previewScheduled = false;
  private resize: { id: string; edge: 'top' | 'bottom' | 'left' | 'right' } | null = null;
  private visIndex = 0;

  constructor(
    private readonly session: ClientSession,
    private readonly scheduler: FrameScheduler,
  ) {}

  pointerDown(e: PointerLike): void {
    this.cursor = e;
    const scene = this.session.lastScene;
    if (!scene) return;
    if (e.altKey) {
      const hit = this.rmcAt(e.x, e.y);
      if (hit) {
        this.session.mode = 'resizing-region';
        this.resize = { id: hit.id, edge: nearestEdge(e, hit.rect) };
        this.anchor = e;
        return;
      }
    }
    const handleMark = editHandleAt(scene, e.x, e.y);
    if (handleMark?.edit) {
      this.session.mode = 'editing';
      this.editing = { handle: handleMark.edit, startY: e.y };
      this.session.send('begin_edit', { target: targetOf(handleMark.edit) });
      return;
    }
    this.session.mode = 'dragging-roi';
    this.anchor = e;
  }

  pointerMove(e: PointerLike): void {
    this.cursor = e;
    if (this.session.mode === 'editing' && this.editing) {
      // dragging up increases the value; coalesce to one preview per frame
      this.pendingPreview = this.editing.startY - e.y;
      if (!this.previewScheduled) {
        this.previewScheduled = true;
        this.scheduler.request(() => this.flushPreview());
      }
    }
  }

  pointerUp(e: PointerLike): void {
    this.cursor = e;
    const mode = this.session.mode;
    this.session.mode = 'idle';
    if (mode === 'editing' && this.editing) {
      this.flushPreview();
      this.session.send('commit_edit', { source: 'drag' });
      this.editing = null;
      return;
    }
    if (mode === 'resizing-region' && this.resize && this.anchor) {
      this.finishResize(e);
      return;
    }
    if (mode === 'dragging-roi' && this.anchor && this.session.lastScene) {
      const grid = GridIndex.fromScene(this.session.lastScene);
      const a = this.anchor;
      const moved = Math.abs(e.x - a.x) > CLICK_SLOP_PX || Math.abs(e.y - a.y) > CLICK_SLOP_PX;
      const region = moved ? grid.regionFor(a, e) : regionOfCell(grid, a);
      this.anchor = null;
      if (!region) return;
      this.session.send('create_rmc', { region, asUnitGrid: !!a.shiftKey });
    }
  }

  wheel(e: WheelLike): void {
    this.cursor = e;
    const hit = this.rmcAt(e.x, e.y);
    if (!hit) return;
    const step = e.deltaY < 0 ? WHEEL_STEP_PX : -WHEEL_STEP_PX;
    const axisMode = e.ctrlKey ? 'x-only' : e.metaKey ? 'y-only' : 'both';
    this.session.mode = 'scaling-rmc';
    this.session.send('scale_rmc', { id: hit.id, delta: [step, step], axisMode });
    this.session.mode = 'idle';
  }

  key(e: KeyLike): void {
    const hit = this.rmcAt(this.cursor.x, this.cursor.y);
    if (!hit) return;
    switch (e.key) {
      case ' ':
        this.session.send('toggle_where', { id: hit.id });
        break;
      case 'Tab':
        this.session.send('switch_what', { id: hit.id });
        break;
      case 'Delete':
      case 'Backspace':
        this.session.send('dismiss_rmc', { id: hit.id });
        break;
      case 'ArrowRight':
        this.visIndex = (this.visIndex + 1) % VIS_CYCLE.length;
        this.session.send('set_vis', { id: hit.id, kind: VIS_CYCLE[this.visIndex] });
        break;
      case 'ArrowLeft':
        this.visIndex = (this.visIndex + VIS_CYCLE.length - 1) % VIS_CYCLE.length;
        this.session.send('set_vis', { id: hit.id, kind: VIS_CYCLE[this.visIndex] });
        break;
    }
  }

  /** Keyboard entry of an exact value for a visible handle's target. */
  numericEntry(handle: EditHandle, value: number): void {
    this.session.send('commit_edit', {
      target: targetOf(handle),
      value,
      source: 'numeric-entry',
    });
  }

  private flushPreview(): void {
    this.previewScheduled = false;
    if (this.pendingPreview === null || !this.editing) return;
    const pixelDelta = this.pendingPreview;
    this.pendingPreview = null;
    this.session.send('preview_edit', { pixelDelta });
  }

  private finishResize(e: PointerLike): void {
    const scene = this.session.lastScene;
    const resize = this.resize!;
    const anchor = this.anchor!;
    this.resize = null;
    this.anchor = null;
    if (!scene) return;
    const grid = GridIndex.fromScene(scene);
    const from = grid.cellAt(anchor.x, anchor.y);
    const to = grid.cellAt(e.x, e.y);
    if (!from || !to) return;
    let delta: number;
    switch (resize.edge) {
      case 'top':
        delta = from.row - to.row;
        break;
      case 'bottom':
        delta = to.row - from.row;
        break;
      case 'left':
        delta = from.col - to.col;
        break;
      case 'right':
        delta = to.col - from.col;
        break;
    }
    if (delta !== 0) {
      this.session.send('resize_region', { id: resize.id, edge: resize.edge, deltaCells: delta });
    }
  }

  private rmcAt(x: number, y: number): { id: string; rect: PixelRect } | null {
    for (const [id, rect] of this.session.rmcRects) {
      if (pointInRect(x, y, rect)) return { id, rect };
    }
    return null;
  }
}

function targetOf(handle: EditHandle): Record<string, unknown> {
  return {
    objectKind: handle.objectKind,
    objectId: handle.objectId,
    attribute: handle.attribute,
  };
}

function regionOfCell(grid: GridIndex, p: PointerLike) {
  const cell = grid.cellAt(p.x, p.y);
  if (!cell) return null;
  return { row0: cell.row, col0: cell.col, rows: 1, cols: 1 };
}

function nearestEdge(p: PointerLike, r: PixelRect): 'top' | 'bottom' | 'left' | 'right' {
  const candidates: ['top' | 'bottom' | 'left' | 'right', number][] = [
    ['top', Math.abs(p.y - r.y)],
    ['bottom', Math.abs(r.y + r.h - p.y)],
    ['left', Math.abs(p.x - r.x)],
    ['right', Math.abs(r.x + r.w - p.x)],
  ];
  candidates.sort((a, b) => a[1] - b[1]);
  return candidates[0][0];
}
