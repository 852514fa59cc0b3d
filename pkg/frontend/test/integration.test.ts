/** End-to-end: real engine process, real TCP stream, scripted pointer input.
 * Covers the full UI loop: drag-rect -> create_rmc -> scene painted within
 * two frames, and drag-editing streaming one preview per frame with a final
 * commit. */

import { ChildProcess, spawn } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { InputController } from '../src/input.js';
import { EngineEvent } from '../src/protocol.js';
import { ClientSession } from '../src/session.js';
import { TcpTransport } from '../src/tcp.js';
import { FakeContext, ManualScheduler } from './helpers.js';

const PYTHON = process.env.PYTHON ?? 'python3';

function dataset(n = 9) {
  const nodes = Array.from({ length: n }, (_, i) => ({
    id: `n${i}`,
    label: `N${i}`,
    attrs: { x: i, y: (i * 3) % 7, zz: n - i },
  }));
  const edges = Array.from({ length: n - 1 }, (_, i) => ({
    source: `n${i}`,
    target: `n${i + 1}`,
    weight: 1 + (i % 3),
  }));
  return { nodes, edges };
}

let proc: ChildProcess;
let port: number;

beforeAll(async () => {
  proc = spawn(PYTHON, ['-m', 'matrixlens.cli', '--serve', '--port', '0'], {
    stdio: ['ignore', 'pipe', 'pipe'],
  });
  port = await new Promise<number>((resolve, reject) => {
    let out = '';
    proc.stdout!.on('data', (chunk) => {
      out += String(chunk);
      const m = out.match(/listening on [\d.]+:(\d+)/);
      if (m) resolve(Number(m[1]));
    });
    proc.on('exit', (code) => reject(new Error(`engine exited early (${code})`)));
    setTimeout(() => reject(new Error('engine did not start')), 15000);
  });
}, 20000);

afterAll(() => {
  proc?.kill();
});

interface Harness {
  session: ClientSession;
  input: InputController;
  scheduler: ManualScheduler;
  ctx: FakeContext;
  events: EngineEvent[];
  waitFor(pred: (ev: EngineEvent) => boolean, timeoutMs?: number): Promise<EngineEvent>;
  close(): void;
}

async function connect(): Promise<Harness> {
  const transport = await TcpTransport.connect('127.0.0.1', port);
  const scheduler = new ManualScheduler();
  const ctx = new FakeContext();
  const events: EngineEvent[] = [];
  const waiters: { pred: (ev: EngineEvent) => boolean; resolve: (ev: EngineEvent) => void }[] = [];
  const session = new ClientSession(transport, {
    ctx,
    scheduler,
    onEvent: (ev) => {
      events.push(ev);
      for (let i = waiters.length - 1; i >= 0; i--) {
        if (waiters[i].pred(ev)) {
          waiters[i].resolve(ev);
          waiters.splice(i, 1);
        }
      }
    },
  });
  const input = new InputController(session, scheduler);
  return {
    session,
    input,
    scheduler,
    ctx,
    events,
    waitFor(pred, timeoutMs = 10000) {
      const hit = events.find(pred);
      if (hit) return Promise.resolve(hit);
      return new Promise((resolve, reject) => {
        waiters.push({ pred, resolve });
        setTimeout(() => reject(new Error('timed out waiting for event')), timeoutMs);
      });
    },
    close: () => transport.close(),
  };
}

describe('engine integration over TCP', () => {
  it('loads a dataset and paints the acknowledged scene', async () => {
    const h = await connect();
    const seq = h.session.send('load_dataset', {
      dataset: dataset(),
      viewport: { width: 360, height: 360 },
    });
    const ack = await h.waitFor((ev) => ev.kind === 'ack' && ev.inReplyTo === seq);
    expect(ack.payload.nodeCount).toBe(9);
    await h.waitFor((ev) => ev.kind === 'scene_update' && ev.inReplyTo === seq);
    expect(h.session.paintCount).toBe(0);
    h.scheduler.tick();
    expect(h.session.paintCount).toBe(1);
    expect(h.session.lastScene!.marks.length).toBe(9 * 9 + 18);
    h.close();
  }, 20000);

  it('drag-rect creates a focus cell painted within two frames', async () => {
    const h = await connect();
    const seq = h.session.send('load_dataset', { dataset: dataset(), viewport: { width: 360, height: 360 } });
    await h.waitFor((ev) => ev.kind === 'scene_update' && ev.inReplyTo === seq);
    h.scheduler.tick();

    // 40px cells: drag from cell (1,5) to (2,6) in the similarity half
    h.input.pointerDown({ x: 5 * 40 + 8, y: 1 * 40 + 8 });
    h.input.pointerMove({ x: 6 * 40 + 20, y: 2 * 40 + 20 });
    h.input.pointerUp({ x: 6 * 40 + 20, y: 2 * 40 + 20 });

    const ack = await h.waitFor((ev) => ev.kind === 'ack' && ev.payload?.rmcId === 'rmc1');
    expect(ack.payload.what).toBe('nodes');
    await h.waitFor((ev) => ev.kind === 'scene_update' && ev.inReplyTo === ack.inReplyTo);

    const paintsBefore = h.session.paintCount;
    h.scheduler.tick();
    h.scheduler.tick(); // two frames are all the budget the client gets
    expect(h.session.paintCount).toBeGreaterThan(paintsBefore);
    const focusMarks = h.session.lastScene!.marks.filter((m) => m.z >= 3);
    expect(focusMarks.length).toBeGreaterThan(0);
    expect(h.session.rmcRects.has('rmc1')).toBe(true);
    h.close();
  }, 20000);

  it('drag-editing streams one preview per frame and commits on release', async () => {
    const h = await connect();
    const seq = h.session.send('load_dataset', { dataset: dataset(), viewport: { width: 360, height: 360 } });
    await h.waitFor((ev) => ev.kind === 'scene_update' && ev.inReplyTo === seq);
    h.scheduler.tick();

    // open a pair cell and zoom it to an editable size
    const create = h.session.send('create_rmc', { region: { row0: 2, col0: 6 } });
    await h.waitFor((ev) => ev.kind === 'scene_update' && ev.inReplyTo === create);
    const scale = h.session.send('scale_rmc', { id: 'rmc1', absolute: [170, 170] });
    await h.waitFor((ev) => ev.kind === 'scene_update' && ev.inReplyTo === scale);
    h.scheduler.tick();

    const handle = h.session.lastScene!.marks.find(
      (m) => m.edit && m.edit.objectId === 'n6' && m.edit.attribute === 'x' && m.kind === 'rect',
    );
    expect(handle).toBeTruthy();
    const grabX = handle!.x! + handle!.w! / 2;
    const grabY = handle!.y! + 1;

    h.input.pointerDown({ x: grabX, y: grabY });
    const began = await h.waitFor((ev) => ev.kind === 'ack' && ev.payload?.target?.objectId === 'n6');
    expect(began.payload.oldValue).toBe(6);

    // two frames of dragging -> exactly two previews, newest delta wins
    for (let i = 1; i <= 6; i++) h.input.pointerMove({ x: grabX, y: grabY - i });
    h.scheduler.tick();
    for (let i = 7; i <= 12; i++) h.input.pointerMove({ x: grabX, y: grabY - i });
    h.scheduler.tick();
    const preview2 = await h.waitFor(
      (ev) => ev.kind === 'ack' && typeof ev.payload?.value === 'number' && ev.payload.value !== began.payload.oldValue,
    );
    expect(preview2).toBeTruthy();

    h.input.pointerUp({ x: grabX, y: grabY - 12 });
    const committed = await h.waitFor((ev) => ev.kind === 'ack' && ev.payload?.target && 'oldValue' in ev.payload && ev.inReplyTo! > began.inReplyTo!);
    expect(committed.payload.value).not.toBe(6);

    const undo = h.session.send('undo', {});
    const undone = await h.waitFor((ev) => ev.kind === 'ack' && ev.inReplyTo === undo);
    expect(undone.payload.value).toBe(6);
    h.close();
  }, 20000);

  it('server keeps sessions isolated', async () => {
    const h1 = await connect();
    const h2 = await connect();
    const s1 = h1.session.send('load_dataset', { dataset: dataset(5) });
    await h1.waitFor((ev) => ev.kind === 'ack' && ev.inReplyTo === s1);
    const s2 = h2.session.send('query_stats', {});
    const err = await h2.waitFor((ev) => ev.inReplyTo === s2);
    expect(err.kind).toBe('error');
    expect(err.payload.code).toBe('E_STATE');
    h1.close();
    h2.close();
  }, 20000);
});
