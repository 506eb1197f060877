import { readFileSync } from "node:fs"
import { dirname, join } from "node:path"
import { fileURLToPath } from "node:url"
import { describe, expect, it } from "vitest"

import type { Request, Response, StateView } from "../src/protocol"
import {
	applyExchange,
	errorPane,
	initialViewModel,
	renderPane,
	replayTranscript,
	scriptPane,
	statePane,
} from "../src/viewmodel"

type Exchange = { request: Request; response: Response }
type Transcript = { script: string; exchanges: Exchange[] }

const here = dirname(fileURLToPath(import.meta.url))

function fixture(name: string): Transcript {
	const raw = readFileSync(join(here, "..", "fixtures", `${name}.json`), "utf-8")
	return JSON.parse(raw) as Transcript
}

describe("stepping transcript replay", () => {
	const transcript = fixture("and_comm_stepping")

	it("replays to the final view model deterministically", () => {
		const a = replayTranscript(transcript.exchanges)
		const b = replayTranscript(transcript.exchanges)
		expect(a).toEqual(b)
		expect(a.script).toBe(transcript.script)
	})

	it("shows hypotheses above the rule and goals below at every step", () => {
		let vm = initialViewModel()
		for (const { request, response } of transcript.exchanges) {
			vm = applyExchange(vm, request, response)
			if (response.kind !== "accepted") continue
			const state = response.state as StateView
			if (!state.proof_open) continue
			const pane = statePane(vm)
			const expectedAbove = [
				...state.variables.map((v) => `${v.name} : ${v.sort}`),
				...state.hypotheses.map((h) => `${h.name} : ${h.statement}`),
			]
			expect(pane.above).toEqual(expectedAbove)
			expect(pane.below).toEqual(state.goals)
		}
	})

	it("advances the green region with each accepted step", () => {
		let vm = initialViewModel()
		let lastAccepted = 0
		for (const { request, response } of transcript.exchanges) {
			vm = applyExchange(vm, request, response)
			if (response.kind === "accepted" && request.kind === "step_forward") {
				expect(response.line).toBeGreaterThanOrEqual(lastAccepted)
				lastAccepted = response.line
				const lines = scriptPane(vm)
				expect(lines.filter((l) => l.accepted).length).toBe(vm.acceptedLine)
				expect(vm.acceptedLine).toBeLessThanOrEqual(lines.length)
			}
		}
	})

	it("after three steps the state pane shows the split context", () => {
		// load + theorem open + prove_imp + use_and + prove_and
		const vm = replayTranscript(transcript.exchanges.slice(0, 5))
		const pane = statePane(vm)
		expect(pane.above).toEqual(["H : A ∧ B", "HA : A", "HB : B"])
		expect(pane.below).toEqual(["B", "A"])
		expect(pane.openGoals).toBe(2)
	})

	it("goals parked behind a bullet show up as a note", () => {
		// after the first bulleted closer, one sibling goal awaits its bullet
		const vm = replayTranscript(transcript.exchanges.slice(0, 6))
		const pane = statePane(vm)
		expect(pane.below).toEqual([])
		expect(pane.openGoals).toBe(1)
		expect(pane.note).toBe("and 1 further goal(s)")
	})

	it("rendering fills the document pane without moving the boundary", () => {
		const before = replayTranscript(
			transcript.exchanges.filter((e) => e.request.kind !== "render"),
		)
		const after = replayTranscript(transcript.exchanges)
		expect(renderPane(after).length).toBeGreaterThan(0)
		expect(renderPane(after)[0]).toMatch(/^Theorem: /)
		// the render happened before the final step_back; boundaries agree
		expect(after.acceptedLine).toBe(before.acceptedLine)
	})

	it("step_back retreats the green region", () => {
		const all = replayTranscript(transcript.exchanges)
		const beforeBack = replayTranscript(transcript.exchanges.slice(0, -1))
		expect(all.acceptedLine).toBeLessThan(beforeBack.acceptedLine)
	})
})

describe("wrong-start transcript replay", () => {
	const transcript = fixture("wrong_start")

	it("shows the error with a highlight on the offending line", () => {
		const vm = replayTranscript(transcript.exchanges)
		expect(vm.lastError).not.toBeNull()
		expect(vm.lastError!.code).toBe("GOAL_NOT_CONJUNCTION")
		const lines = scriptPane(vm)
		const errorLines = lines
			.map((l, i) => ({ ...l, n: i + 1 }))
			.filter((l) => l.error)
		expect(errorLines.map((l) => l.n)).toEqual([vm.lastError!.span.line])
		expect(errorLines[0]!.text).toBe("prove_and.")
		expect(errorPane(vm)).toContain("prove_and expects the current goal")
	})

	it("an error never advances the boundary", () => {
		let vm = initialViewModel()
		for (const { request, response } of transcript.exchanges) {
			const before = vm.acceptedLine
			vm = applyExchange(vm, request, response)
			if (response.kind === "error") {
				expect(vm.acceptedLine).toBe(before)
			}
		}
	})

	it("error pane and green advance are mutually exclusive per step", () => {
		let vm = initialViewModel()
		for (const { request, response } of transcript.exchanges) {
			const before = vm.acceptedLine
			vm = applyExchange(vm, request, response)
			const advanced = vm.acceptedLine > before
			const errored = vm.lastError !== null
			expect(advanced && errored).toBe(false)
		}
	})
})

describe("reconnect semantics", () => {
	it("a fresh load resets the boundary to zero", () => {
		const stepping = fixture("and_comm_stepping")
		const again = replayTranscript([
			...stepping.exchanges,
			...stepping.exchanges.slice(0, 1), // reconnect: fresh load
		])
		expect(again.acceptedLine).toBe(0)
		expect(again.lastError).toBeNull()
		expect(again.document).toBeNull()
	})
})
