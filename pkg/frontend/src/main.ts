/** Browser entry: wires a canvas, the WebSocket transport (via bridge.mjs),
 * and the input bindings together. Everything drawn comes from engine scenes. */

import { InputController } from './input.js';
import { ClientSession, rafScheduler } from './session.js';
import { WebSocketTransport } from './transport.js';

function statusLine(text: string): void {
  const el = document.getElementById('status');
  if (el) el.textContent = text;
}

export function start(): void {
  const canvas = document.getElementById('view') as HTMLCanvasElement;
  const ctx = canvas.getContext('2d');
  if (!ctx) throw new Error('canvas 2d context unavailable');

  const wsUrl = `ws://${location.host}/session`;
  const socket = new WebSocket(wsUrl);
  socket.addEventListener('open', () => {
    statusLine('connected; loading dataset…');
    session.send('load_dataset', {
      path: 'data/walkthrough.json',
      viewport: { width: canvas.width, height: canvas.height },
    });
    session.send('set_similarity_attributes', { attributes: ['minutes', 'appearances', 'shots', 'goals'] });
    session.send('set_ordering', { strategy: 'cluster:club' });
  });

  const transport = new WebSocketTransport(socket);
  const session = new ClientSession(transport, {
    ctx,
    scheduler: rafScheduler,
    onEvent: (ev) => {
      if (ev.kind === 'error') statusLine(`error ${ev.payload.code}: ${ev.payload.message}`);
      else if (ev.kind === 'ack') statusLine(`ok #${ev.inReplyTo} (${session.rmcRects.size} focus cells)`);
    },
  });
  const input = new InputController(session, rafScheduler);

  const pos = (e: MouseEvent) => {
    const b = canvas.getBoundingClientRect();
    return {
      x: e.clientX - b.left,
      y: e.clientY - b.top,
      shiftKey: e.shiftKey,
      altKey: e.altKey,
      ctrlKey: e.ctrlKey,
      metaKey: e.metaKey,
    };
  };

  canvas.addEventListener('mousedown', (e) => input.pointerDown(pos(e)));
  canvas.addEventListener('mousemove', (e) => input.pointerMove(pos(e)));
  canvas.addEventListener('mouseup', (e) => input.pointerUp(pos(e)));
  canvas.addEventListener('wheel', (e) => {
    e.preventDefault();
    input.wheel({ ...pos(e), deltaY: e.deltaY });
  });
  window.addEventListener('keydown', (e) => {
    if (e.key === 'Tab') e.preventDefault();
    input.key({ key: e.key });
  });
}

start();
