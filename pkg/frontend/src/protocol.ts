// Record types of the v1 step protocol (one JSON record per message).

export const PROTOCOL_VERSION = 1

export type RequestKind =
	| "load"
	| "step_forward"
	| "step_back"
	| "run_to_end"
	| "get_state"
	| "render"

export type Request = {
	v?: number
	kind: RequestKind
	source?: string
	path?: string
	level?: number
}

export type Span = {
	line: number
	col: number
	end_line: number
	end_col: number
}

export type StateView = {
	v: number
	kind: "state_view"
	accepted_line: number
	cursor: number
	total_steps: number
	variables: { name: string; sort: string }[]
	hypotheses: { name: string; statement: string }[]
	goals: string[]
	open_goals: number
	proof_open: boolean
}

export type Accepted = {
	v: number
	kind: "accepted"
	line: number
	state: StateView
}

export type ProtocolError = {
	v: number
	kind: "error"
	code: string
	span: Span
	message: string
}

export type DocumentBlock = {
	depth: number
	marker: string | null
	text: string
	nodes: number[]
}

export type RenderedDocument = {
	v: number
	kind: "document"
	level: number
	blocks: DocumentBlock[]
}

export type Response = StateView | Accepted | ProtocolError | RenderedDocument

export function isError(r: Response): r is ProtocolError {
	return r.kind === "error"
}
