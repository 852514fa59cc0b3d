/** Node-only TCP transport; used by the test suite and the WebSocket bridge.
 * Browsers use WebSocketTransport instead. */

import * as net from 'node:net';

import { LineSplitter, Transport } from './transport.js';

export class TcpTransport implements Transport {
  private lineHandler: (line: string) => void = () => {};
  private closeHandler: () => void = () => {};
  private splitter = new LineSplitter((line) => this.lineHandler(line));

  private constructor(private readonly socket: net.Socket) {
    socket.setEncoding('utf-8');
    socket.on('data', (chunk: string) => this.splitter.push(chunk));
    socket.on('close', () => this.closeHandler());
    socket.on('error', () => this.closeHandler());
  }

  static connect(host: string, port: number): Promise<TcpTransport> {
    return new Promise((resolve, reject) => {
      const socket = net.createConnection({ host, port }, () => resolve(new TcpTransport(socket)));
      socket.once('error', reject);
    });
  }

  send(line: string): void {
    this.socket.write(line + '\n');
  }

  onLine(handler: (line: string) => void): void {
    this.lineHandler = handler;
  }

  onClose(handler: () => void): void {
    this.closeHandler = handler;
  }

  close(): void {
    this.socket.destroy();
  }
}
