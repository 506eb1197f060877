// The client's entire state as a pure function of the protocol transcript.
//
// `applyExchange` folds one request/response pair into the view model;
// replaying a recorded transcript therefore reproduces the exact view a
// live session produced.  Nothing in here mutates proof state: the
// accepted boundary, the state pane, and the error pane all come from
// server responses verbatim.

import type {
	ProtocolError,
	RenderedDocument,
	Request,
	Response,
	StateView,
} from "./protocol"

export type ViewModel = {
	script: string
	acceptedLine: number // source line of the last accepted step (0 = none)
	state: StateView | null
	lastError: ProtocolError | null
	document: RenderedDocument | null
	level: number
}

export function initialViewModel(): ViewModel {
	return {
		script: "",
		acceptedLine: 0,
		state: null,
		lastError: null,
		document: null,
		level: 3,
	}
}

export function applyExchange(vm: ViewModel, request: Request, response: Response): ViewModel {
	if (response.kind === "error") {
		// an error never advances the boundary; it only fills the error pane
		return { ...vm, lastError: response }
	}
	if (request.kind === "load" && response.kind === "state_view") {
		return {
			...initialViewModel(),
			script: request.source ?? "",
			level: vm.level,
			state: response,
		}
	}
	if (response.kind === "accepted") {
		return {
			...vm,
			acceptedLine: response.line,
			state: response.state,
			lastError: null,
		}
	}
	if (response.kind === "state_view") {
		return { ...vm, state: response }
	}
	if (response.kind === "document") {
		// rendering never moves the step boundary
		return { ...vm, document: response, level: response.level, lastError: null }
	}
	return vm
}

export function replayTranscript(
	exchanges: { request: Request; response: Response }[],
): ViewModel {
	let vm = initialViewModel()
	for (const { request, response } of exchanges) {
		vm = applyExchange(vm, request, response)
	}
	return vm
}

// ---------------------------------------------------------------- panes
//
// Projections of the view model into plain data the DOM layer prints.
// Tests assert on these, so the display logic is covered without a DOM.

export type StatePane = {
	above: string[] // variables and hypotheses, one line each
	below: string[] // goal targets; the first is the focused one
	openGoals: number
	note: string | null // "and k further goals" when some are parked
}

export function statePane(vm: ViewModel): StatePane {
	const s = vm.state
	if (s === null || !s.proof_open) {
		return { above: [], below: [], openGoals: 0, note: null }
	}
	const above = [
		...s.variables.map((v) => `${v.name} : ${v.sort}`),
		...s.hypotheses.map((h) => `${h.name} : ${h.statement}`),
	]
	const hidden = s.open_goals - s.goals.length
	return {
		above,
		below: [...s.goals],
		openGoals: s.open_goals,
		note: hidden > 0 ? `and ${hidden} further goal(s)` : null,
	}
}

export type ScriptLine = {
	text: string
	accepted: boolean
	error: boolean
}

export function scriptPane(vm: ViewModel): ScriptLine[] {
	const errorLine = vm.lastError ? vm.lastError.span.line : -1
	return vm.script.split("\n").map((text, i) => ({
		text,
		accepted: i + 1 <= vm.acceptedLine,
		error: i + 1 === errorLine,
	}))
}

export function errorPane(vm: ViewModel): string | null {
	const e = vm.lastError
	if (!e) return null
	return `${e.span.line}:${e.span.col} [${e.code}] ${e.message}`
}

export function renderPane(vm: ViewModel): string[] {
	if (!vm.document) return []
	return vm.document.blocks.map((b) => {
		const indent = "  ".repeat(b.depth)
		const marker = b.marker ? `${b.marker} ` : ""
		return `${indent}${marker}${b.text}`
	})
}
