import { describe, expect, it } from 'vitest';

import { applySceneUpdate, decodeEvent, Scene } from '../src/protocol.js';
import { renderScene } from '../src/renderer.js';
import { GridIndex } from '../src/grid.js';
import { FakeContext, gridScene } from './helpers.js';

describe('renderer', () => {
  it('paints a single rect at its pixel rect', () => {
    const ctx = new FakeContext();
    const scene: Scene = {
      digestSeed: 1,
      viewport: { width: 100, height: 80, minContextExtent: 1 },
      marks: [{ kind: 'rect', z: 0, x: 10, y: 20, w: 30, h: 40, fill: '#123456' }],
    };
    renderScene(ctx, scene);
    expect(ctx.ops[0]).toEqual({ op: 'clearRect', x: 0, y: 0, w: 100, h: 80 });
    const rect = ctx.ops.find((o) => o.op === 'rect');
    expect(rect).toEqual({ op: 'rect', x: 10, y: 20, w: 30, h: 40 });
    const fill = ctx.ops.find((o) => o.op === 'fill');
    expect(fill.style).toBe('#123456');
  });

  it('clears the canvas for an empty scene', () => {
    const ctx = new FakeContext();
    renderScene(ctx, { digestSeed: 1, viewport: { width: 50, height: 50, minContextExtent: 1 }, marks: [] });
    expect(ctx.ops).toEqual([{ op: 'clearRect', x: 0, y: 0, w: 50, h: 50 }]);
  });

  it('paints marks in list order (z-sorted by the engine)', () => {
    const ctx = new FakeContext();
    const scene: Scene = {
      digestSeed: 1,
      viewport: { width: 10, height: 10, minContextExtent: 1 },
      marks: [
        { kind: 'rect', z: 0, x: 0, y: 0, w: 5, h: 5, fill: '#111111' },
        { kind: 'rect', z: 3, x: 1, y: 1, w: 5, h: 5, fill: '#222222' },
      ],
    };
    renderScene(ctx, scene);
    const fills = ctx.ops.filter((o) => o.op === 'fill').map((o) => o.style);
    expect(fills).toEqual(['#111111', '#222222']);
  });

  it('draws every mark kind', () => {
    const ctx = new FakeContext();
    const scene: Scene = {
      digestSeed: 1,
      viewport: { width: 200, height: 200, minContextExtent: 1 },
      marks: [
        { kind: 'rect', z: 0, x: 0, y: 0, w: 10, h: 10, fill: '#aaaaaa' },
        { kind: 'line', z: 2, x1: 0, y1: 0, x2: 5, y2: 5, stroke: '#bbbbbb' },
        { kind: 'polyline', z: 4, points: [[0, 0], [3, 4], [6, 0]], closed: true, stroke: '#cccccc' },
        { kind: 'circle', z: 4, cx: 5, cy: 5, r: 2, fill: '#dddddd' },
        { kind: 'text', z: 5, x: 1, y: 1, text: 'hi', fontSize: 8, fill: '#eeeeee', anchor: 'middle' },
        { kind: 'path', z: 4, d: 'M0,1L2,3M4,5L6,7', stroke: '#999999' },
      ],
    };
    renderScene(ctx, scene);
    expect(ctx.ops.filter((o) => o.op === 'rect')).toHaveLength(1);
    expect(ctx.ops.filter((o) => o.op === 'arc')).toHaveLength(1);
    expect(ctx.ops.find((o) => o.op === 'fillText')).toMatchObject({ text: 'hi', align: 'middle' });
    expect(ctx.ops.filter((o) => o.op === 'closePath')).toHaveLength(1);
    // path: two M/L pairs -> two moveTo + two lineTo beyond the polyline's
    expect(ctx.ops.filter((o) => o.op === 'moveTo').length).toBeGreaterThanOrEqual(3);
  });

  it('honors opacity and resets it', () => {
    const ctx = new FakeContext();
    renderScene(ctx, {
      digestSeed: 1,
      viewport: { width: 10, height: 10, minContextExtent: 1 },
      marks: [{ kind: 'rect', z: 0, x: 0, y: 0, w: 5, h: 5, fill: '#111111', opacity: 0.25 }],
    });
    const fill = ctx.ops.find((o) => o.op === 'fill');
    expect(fill.alpha).toBe(0.25);
    expect(ctx.globalAlpha).toBe(1);
  });
});

describe('protocol', () => {
  it('decodes events and rejects junk', () => {
    const ev = decodeEvent('{"kind":"ack","inReplyTo":3,"payload":{}}');
    expect(ev.kind).toBe('ack');
    expect(() => decodeEvent('42')).toThrow();
  });

  it('applies full and diff updates', () => {
    const base = gridScene(2, 10);
    const full = applySceneUpdate(null, { mode: 'full', digest: 'a', scene: base });
    expect(full.marks).toHaveLength(4);
    const patched = applySceneUpdate(full, {
      mode: 'diff',
      digest: 'b',
      length: 4,
      changes: [[1, { kind: 'rect', z: 0, x: 10, y: 0, w: 10, h: 10, fill: '#ff0000' }]],
    });
    expect(patched.marks[1].fill).toBe('#ff0000');
    expect(patched.marks[0]).toEqual(full.marks[0]);
    expect(() => applySceneUpdate(full, { mode: 'diff', digest: 'c', length: 99, changes: [] })).toThrow();
  });
});

describe('grid index', () => {
  it('maps pixels back to cell indices', () => {
    const grid = GridIndex.fromScene(gridScene(4, 25));
    expect(grid.rowCount).toBe(4);
    expect(grid.cellAt(0, 0)).toEqual({ row: 0, col: 0 });
    expect(grid.cellAt(26, 51)).toEqual({ row: 2, col: 1 });
    expect(grid.cellAt(99.9, 99.9)).toEqual({ row: 3, col: 3 });
    expect(grid.cellAt(120, 10)).toBeNull();
  });

  it('computes index regions from pixel rectangles', () => {
    const grid = GridIndex.fromScene(gridScene(4, 25));
    expect(grid.regionFor({ x: 30, y: 5 }, { x: 80, y: 40 })).toEqual({
      row0: 0,
      col0: 1,
      rows: 2,
      cols: 3,
    });
  });

  it('handles non-uniform extents (bifocal layout)', () => {
    // rows at 0, 10, 60 (a 50px focus row), cols uniform
    const scene = gridScene(1, 1);
    scene.marks = [];
    for (const [y, h] of [
      [0, 10],
      [10, 50],
      [60, 10],
    ] as [number, number][]) {
      for (let c = 0; c < 3; c++) {
        scene.marks.push({ kind: 'rect', z: 0, x: c * 20, y, w: 20, h, fill: '#fff' });
      }
    }
    const grid = GridIndex.fromScene(scene);
    expect(grid.cellAt(5, 35)).toEqual({ row: 1, col: 0 });
    expect(grid.cellAt(45, 65)).toEqual({ row: 2, col: 2 });
  });
});
