/** Transports deliver newline-delimited frames to and from the engine. */

export interface Transport {
  send(line: string): void;
  onLine(handler: (line: string) => void): void;
  onClose(handler: () => void): void;
  close(): void;
}

/** Splits an incoming byte/text stream into complete lines. */
export class LineSplitter {
  private buffer = '';

  constructor(private readonly emit: (line: string) => void) {}

  push(chunk: string): void {
    this.buffer += chunk;
    let idx: number;
    while ((idx = this.buffer.indexOf('\n')) >= 0) {
      const line = this.buffer.slice(0, idx).trim();
      this.buffer = this.buffer.slice(idx + 1);
      if (line) this.emit(line);
    }
  }
}

/** Browser transport: one WebSocket message per frame (see bridge.mjs). */
export class WebSocketTransport implements Transport {
  private lineHandler: (line: string) => void = () => {};
  private closeHandler: () => void = () => {};

  constructor(private readonly socket: WebSocket) {
    socket.addEventListener('message', (ev) => {
      const splitter = new LineSplitter(this.lineHandler);
      splitter.push(String(ev.data) + '\n');
    });
    socket.addEventListener('close', () => this.closeHandler());
  }

  send(line: string): void {
    this.socket.send(line);
  }

  onLine(handler: (line: string) => void): void {
    this.lineHandler = handler;
  }

  onClose(handler: () => void): void {
    this.closeHandler = handler;
  }

  close(): void {
    this.socket.close();
  }
}
