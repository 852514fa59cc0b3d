/** Wire types for the engine's newline-delimited JSON session protocol.
 *
 * The engine is the single source of truth: everything on screen comes from
 * a Scene it sent. The client creates commands, applies scene updates (full
 * or index-diff), and never recomputes similarity or layout on its own.
 */

export type MarkKind = 'rect' | 'line' | 'polyline' | 'circle' | 'text' | 'path';

export interface EditHandle {
  objectKind: 'node' | 'edge';
  objectId: string;
  attribute: string;
  /** value delta per upward pixel of drag */
  pixelToValue: number;
}

export interface Mark {
  kind: MarkKind;
  z: number;
  // rect
  x?: number;
  y?: number;
  w?: number;
  h?: number;
  // line
  x1?: number;
  y1?: number;
  x2?: number;
  y2?: number;
  // circle
  cx?: number;
  cy?: number;
  r?: number;
  // polyline
  points?: [number, number][];
  closed?: boolean;
  // path (subset of SVG "d": M/L pairs)
  d?: string;
  // text
  text?: string;
  anchor?: 'start' | 'middle' | 'end';
  // style
  fill?: string;
  stroke?: string;
  strokeWidth?: number;
  fontSize?: number;
  opacity?: number;
  /** node or edge id this mark encodes */
  ref?: string;
  edit?: EditHandle;
}

export interface Viewport {
  width: number;
  height: number;
  minContextExtent: number;
}

export interface Scene {
  digestSeed: number;
  marks: Mark[];
  viewport: Viewport;
}

export interface Command {
  seq: number;
  kind: string;
  payload: Record<string, unknown>;
}

export type EventKind = 'ack' | 'error' | 'scene_update' | 'highlight_update' | 'stats';

export interface EngineEvent {
  kind: EventKind;
  inReplyTo: number | null;
  payload: any;
}

export interface SceneUpdatePayload {
  mode: 'full' | 'diff';
  digest: string;
  scene?: Scene;
  changes?: [number, Mark][];
  length?: number;
  base?: string;
  highlight?: { nodes: string[]; edges: string[] };
}

export interface PixelRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function encodeCommand(cmd: Command): string {
  return JSON.stringify(cmd);
}

export function decodeEvent(line: string): EngineEvent {
  const obj = JSON.parse(line);
  if (typeof obj !== 'object' || obj === null || typeof obj.kind !== 'string') {
    throw new Error(`malformed event frame: ${line.slice(0, 120)}`);
  }
  return obj as EngineEvent;
}

/** Apply a full or diff scene payload on top of the previous scene. */
export function applySceneUpdate(prev: Scene | null, payload: SceneUpdatePayload): Scene {
  if (payload.mode === 'full') {
    if (!payload.scene) throw new Error('full scene update without a scene');
    return payload.scene;
  }
  if (!prev) throw new Error('diff scene update without a previous scene');
  if (payload.length !== prev.marks.length) {
    throw new Error(`diff length ${payload.length} does not match previous scene (${prev.marks.length})`);
  }
  const marks = prev.marks.slice();
  for (const [index, mark] of payload.changes ?? []) {
    marks[index] = mark;
  }
  return { digestSeed: prev.digestSeed, viewport: prev.viewport, marks };
}
