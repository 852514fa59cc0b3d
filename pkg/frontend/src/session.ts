/** Client session: command sequencing, scene bookkeeping, frame-paced painting.
 *
 * The client renders only scenes the engine acknowledged, in sequence order,
 * and keeps no derived data of its own: the scene plus the rects the engine
 * reports for focus cells are all it knows.
 */

import { Canvas2DLike, renderScene } from './renderer.js';
import {
  applySceneUpdate,
  Command,
  decodeEvent,
  encodeCommand,
  EngineEvent,
  PixelRect,
  Scene,
  SceneUpdatePayload,
} from './protocol.js';
import { Transport } from './transport.js';

export type InteractionMode = 'idle' | 'dragging-roi' | 'scaling-rmc' | 'resizing-region' | 'editing';

export interface FrameScheduler {
  request(cb: () => void): void;
}

export const rafScheduler: FrameScheduler = {
  request: (cb) => requestAnimationFrame(() => cb()),
};

export interface ClientSessionOptions {
  ctx?: Canvas2DLike | null;
  scheduler?: FrameScheduler;
  onEvent?: (ev: EngineEvent) => void;
  onPaint?: (scene: Scene) => void;
}

export class ClientSession {
  lastScene: Scene | null = null;
  digest: string | null = null;
  mode: InteractionMode = 'idle';
  /** oldest command still awaiting its reply, if any */
  pendingSeq: number | null = null;
  readonly rmcRects = new Map<string, PixelRect>();
  paintCount = 0;

  private seq = 0;
  private appliedSeq = 0;
  private inFlight = new Set<number>();
  private sentKinds = new Map<number, string>();
  private dirty = false;
  private paintScheduled = false;
  private readonly ctx: Canvas2DLike | null;
  private readonly scheduler: FrameScheduler;
  private readonly onEvent?: (ev: EngineEvent) => void;
  private readonly onPaint?: (scene: Scene) => void;

  constructor(private readonly transport: Transport, options: ClientSessionOptions = {}) {
    this.ctx = options.ctx ?? null;
    this.scheduler = options.scheduler ?? rafScheduler;
    this.onEvent = options.onEvent;
    this.onPaint = options.onPaint;
    transport.onLine((line) => this.handleLine(line));
  }

  send(kind: string, payload: Record<string, unknown> = {}): number {
    const cmd: Command = { seq: ++this.seq, kind, payload };
    this.inFlight.add(cmd.seq);
    this.sentKinds.set(cmd.seq, kind);
    if (this.pendingSeq === null) this.pendingSeq = cmd.seq;
    this.transport.send(encodeCommand(cmd));
    return cmd.seq;
  }

  close(): void {
    this.transport.close();
  }

  private handleLine(line: string): void {
    let ev: EngineEvent;
    try {
      ev = decodeEvent(line);
    } catch {
      return;
    }
    this.handleEvent(ev);
  }

  private handleEvent(ev: EngineEvent): void {
    if (typeof ev.inReplyTo === 'number') {
      this.settle(ev);
    }
    if (ev.kind === 'scene_update' || ev.kind === 'highlight_update') {
      const seq = ev.inReplyTo ?? 0;
      if (seq >= this.appliedSeq) {
        // in-order application; a stale reply never overwrites a newer scene
        this.lastScene = applySceneUpdate(this.lastScene, ev.payload as SceneUpdatePayload);
        this.digest = (ev.payload as SceneUpdatePayload).digest;
        this.appliedSeq = seq;
        this.requestPaint();
      }
    }
    this.onEvent?.(ev);
  }

  private settle(ev: EngineEvent): void {
    const seq = ev.inReplyTo as number;
    if (ev.kind !== 'ack' && ev.kind !== 'error' && ev.kind !== 'stats') return;
    const cmdKind = this.sentKinds.get(seq);
    this.sentKinds.delete(seq);
    this.inFlight.delete(seq);
    this.pendingSeq = this.inFlight.size ? Math.min(...this.inFlight) : null;
    if (ev.kind !== 'ack') return;
    if (cmdKind === 'dismiss_rmc') {
      this.rmcRects.delete(ev.payload?.rmcId);
    } else if (cmdKind === 'reset' || cmdKind === 'load_dataset') {
      this.rmcRects.clear();
    } else if (ev.payload?.rmcId && ev.payload?.rect) {
      this.rmcRects.set(ev.payload.rmcId, ev.payload.rect as PixelRect);
    }
  }

  private requestPaint(): void {
    this.dirty = true;
    if (this.paintScheduled) return;
    this.paintScheduled = true;
    this.scheduler.request(() => this.paintNow());
  }

  private paintNow(): void {
    this.paintScheduled = false;
    if (!this.dirty || !this.lastScene) return;
    this.dirty = false;
    if (this.ctx) renderScene(this.ctx, this.lastScene);
    this.paintCount++;
    this.onPaint?.(this.lastScene);
  }
}
