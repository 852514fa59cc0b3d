import { Canvas2DLike } from '../src/renderer.js';
import { Mark, Scene } from '../src/protocol.js';
import { FrameScheduler } from '../src/session.js';
import { Transport } from '../src/transport.js';

/** Deterministic frame pump: callbacks run only when the test ticks. */
export class ManualScheduler implements FrameScheduler {
  private queue: (() => void)[] = [];
  ticks = 0;

  request(cb: () => void): void {
    this.queue.push(cb);
  }

  tick(): void {
    this.ticks++;
    const batch = this.queue;
    this.queue = [];
    for (const cb of batch) cb();
  }

  get pending(): number {
    return this.queue.length;
  }
}

/** Transport double: records outgoing frames, lets tests inject events. */
export class FakeTransport implements Transport {
  sent: string[] = [];
  private lineHandler: (line: string) => void = () => {};

  send(line: string): void {
    this.sent.push(line);
  }

  onLine(handler: (line: string) => void): void {
    this.lineHandler = handler;
  }

  onClose(): void {}

  close(): void {}

  emit(event: unknown): void {
    this.lineHandler(JSON.stringify(event));
  }

  sentCommands(): { seq: number; kind: string; payload: any }[] {
    return this.sent.map((l) => JSON.parse(l));
  }

  lastCommand(): { seq: number; kind: string; payload: any } {
    return JSON.parse(this.sent[this.sent.length - 1]);
  }
}

/** Records every draw call the renderer makes. */
export class FakeContext implements Canvas2DLike {
  fillStyle: string = '#000000';
  strokeStyle: string = '#000000';
  lineWidth = 1;
  globalAlpha = 1;
  font = '';
  textAlign = '';
  textBaseline = '';
  ops: any[] = [];

  clearRect(x: number, y: number, w: number, h: number): void {
    this.ops.push({ op: 'clearRect', x, y, w, h });
  }
  beginPath(): void {
    this.ops.push({ op: 'beginPath' });
  }
  rect(x: number, y: number, w: number, h: number): void {
    this.ops.push({ op: 'rect', x, y, w, h });
  }
  moveTo(x: number, y: number): void {
    this.ops.push({ op: 'moveTo', x, y });
  }
  lineTo(x: number, y: number): void {
    this.ops.push({ op: 'lineTo', x, y });
  }
  closePath(): void {
    this.ops.push({ op: 'closePath' });
  }
  arc(x: number, y: number, r: number): void {
    this.ops.push({ op: 'arc', x, y, r });
  }
  fill(): void {
    this.ops.push({ op: 'fill', style: this.fillStyle, alpha: this.globalAlpha });
  }
  stroke(): void {
    this.ops.push({ op: 'stroke', style: this.strokeStyle, width: this.lineWidth, alpha: this.globalAlpha });
  }
  fillText(text: string, x: number, y: number): void {
    this.ops.push({ op: 'fillText', text, x, y, style: this.fillStyle, font: this.font, align: this.textAlign });
  }
}

/** Uniform n x n cell grid scene, cellPx pixels per cell, origin at 0,0. */
export function gridScene(n: number, cellPx: number, extra: Mark[] = []): Scene {
  const marks: Mark[] = [];
  for (let r = 0; r < n; r++) {
    for (let c = 0; c < n; c++) {
      marks.push({ kind: 'rect', z: 0, x: c * cellPx, y: r * cellPx, w: cellPx, h: cellPx, fill: '#ffffff' });
    }
  }
  marks.push(...extra);
  return {
    digestSeed: 1,
    marks,
    viewport: { width: n * cellPx, height: n * cellPx, minContextExtent: 1 },
  };
}

export function sceneEvent(seq: number, scene: Scene, digest = 'd' + seq): any {
  return {
    kind: 'scene_update',
    inReplyTo: seq,
    payload: { mode: 'full', digest, scene },
  };
}

export function ackEvent(seq: number, payload: any = {}): any {
  return { kind: 'ack', inReplyTo: seq, payload };
}
