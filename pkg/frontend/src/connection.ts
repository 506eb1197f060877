// WebSocket transport: one session per connection, one request in
// flight at a time (the protocol answers every request with exactly one
// response, so a FIFO queue is all the bookkeeping needed).

import type { Request, Response } from "./protocol"

type Pending = {
	resolve: (r: Response) => void
	reject: (e: Error) => void
}

export class ProtocolConnection {
	private ws: WebSocket
	private queue: Pending[] = []
	private buffer = ""
	public onClose: (() => void) | null = null

	private constructor(ws: WebSocket) {
		this.ws = ws
		ws.onmessage = (ev) => this.receive(String(ev.data))
		ws.onclose = () => {
			for (const p of this.queue.splice(0)) {
				p.reject(new Error("connection closed"))
			}
			if (this.onClose) this.onClose()
		}
	}

	static connect(url: string): Promise<ProtocolConnection> {
		return new Promise((resolve, reject) => {
			const ws = new WebSocket(url)
			ws.onopen = () => resolve(new ProtocolConnection(ws))
			ws.onerror = () => reject(new Error(`cannot connect to ${url}`))
		})
	}

	send(request: Request): Promise<Response> {
		return new Promise((resolve, reject) => {
			this.queue.push({ resolve, reject })
			this.ws.send(JSON.stringify({ v: 1, ...request }))
		})
	}

	private receive(data: string) {
		this.buffer += data
		let nl
		while ((nl = this.buffer.indexOf("\n")) >= 0) {
			const line = this.buffer.slice(0, nl).trim()
			this.buffer = this.buffer.slice(nl + 1)
			if (!line) continue
			const pending = this.queue.shift()
			if (pending) pending.resolve(JSON.parse(line) as Response)
		}
	}

	close() {
		this.ws.close()
	}
}
