/** Paints a scene onto a 2D canvas context. Marks arrive pre-sorted by
 * (z, construction order); painting them in sequence reproduces the engine's
 * intended stacking exactly. */

import { Mark, Scene } from './protocol.js';

/** The structural subset of CanvasRenderingContext2D the renderer needs, so
 * tests can substitute a recording fake. */
export interface Canvas2DLike {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: string;
  textBaseline: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  rect(x: number, y: number, w: number, h: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

export function renderScene(ctx: Canvas2DLike, scene: Scene): void {
  ctx.clearRect(0, 0, scene.viewport.width, scene.viewport.height);
  for (const mark of scene.marks) {
    drawMark(ctx, mark);
  }
}

export function drawMark(ctx: Canvas2DLike, m: Mark): void {
  ctx.globalAlpha = m.opacity ?? 1.0;
  switch (m.kind) {
    case 'rect':
      ctx.beginPath();
      ctx.rect(m.x!, m.y!, m.w!, m.h!);
      fillStroke(ctx, m);
      break;
    case 'line':
      ctx.beginPath();
      ctx.moveTo(m.x1!, m.y1!);
      ctx.lineTo(m.x2!, m.y2!);
      strokeOnly(ctx, m, '#000000');
      break;
    case 'polyline': {
      const pts = m.points ?? [];
      if (pts.length === 0) break;
      ctx.beginPath();
      ctx.moveTo(pts[0][0], pts[0][1]);
      for (let i = 1; i < pts.length; i++) ctx.lineTo(pts[i][0], pts[i][1]);
      if (m.closed) ctx.closePath();
      fillStroke(ctx, m, undefined, '#000000');
      break;
    }
    case 'circle':
      ctx.beginPath();
      ctx.arc(m.cx!, m.cy!, m.r!, 0, Math.PI * 2);
      fillStroke(ctx, m, '#000000');
      break;
    case 'text':
      ctx.font = `${m.fontSize ?? 10}px sans-serif`;
      ctx.textAlign = m.anchor ?? 'start';
      ctx.textBaseline = 'alphabetic';
      ctx.fillStyle = m.fill ?? '#000000';
      ctx.fillText(m.text ?? '', m.x!, m.y!);
      break;
    case 'path':
      tracePath(ctx, m.d ?? '');
      strokeOnly(ctx, m, '#000000');
      break;
  }
  ctx.globalAlpha = 1.0;
}

function fillStroke(ctx: Canvas2DLike, m: Mark, defaultFill?: string, defaultStroke?: string): void {
  const fill = m.fill ?? defaultFill;
  const stroke = m.stroke ?? defaultStroke;
  if (fill) {
    ctx.fillStyle = fill;
    ctx.fill();
  }
  if (stroke) {
    ctx.strokeStyle = stroke;
    ctx.lineWidth = m.strokeWidth ?? 1;
    ctx.stroke();
  }
}

function strokeOnly(ctx: Canvas2DLike, m: Mark, fallback: string): void {
  ctx.strokeStyle = m.stroke ?? fallback;
  ctx.lineWidth = m.strokeWidth ?? 1;
  ctx.stroke();
}

/** Engine paths use only absolute M/L segments (hatch placeholders). */
function tracePath(ctx: Canvas2DLike, d: string): void {
  ctx.beginPath();
  const re = /([ML])([-\d.]+),([-\d.]+)/g;
  let match: RegExpExecArray | null;
  while ((match = re.exec(d)) !== null) {
    const x = parseFloat(match[2]);
    const y = parseFloat(match[3]);
    if (match[1] === 'M') ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  }
}
