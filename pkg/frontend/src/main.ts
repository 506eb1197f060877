// DOM wiring: four panes (script, state, error, rendering) around the
// pure view model.  Every transition round-trips through the protocol.

import { ProtocolConnection } from "./connection"
import type { Request, Response } from "./protocol"
import {
	ViewModel,
	applyExchange,
	errorPane,
	initialViewModel,
	renderPane,
	scriptPane,
	statePane,
} from "./viewmodel"

const $ = (id: string) => document.getElementById(id) as HTMLElement

let vm: ViewModel = initialViewModel()
let connection: ProtocolConnection | null = null

function setBanner(text: string | null) {
	const el = $("banner")
	el.textContent = text ?? ""
	el.style.display = text ? "block" : "none"
}

async function exchange(request: Request): Promise<Response | null> {
	if (!connection) {
		setBanner("Not connected — is `fpf serve` running?")
		return null
	}
	const response = await connection.send(request)
	vm = applyExchange(vm, request, response)
	draw()
	return response
}

function draw() {
	const script = $("script-pane")
	script.innerHTML = ""
	for (const line of scriptPane(vm)) {
		const div = document.createElement("div")
		div.className =
			"line" + (line.accepted ? " accepted" : "") + (line.error ? " error-line" : "")
		div.textContent = line.text || " "
		script.appendChild(div)
	}

	const pane = statePane(vm)
	const above = $("state-above")
	above.innerHTML = ""
	for (const entry of pane.above) {
		const div = document.createElement("div")
		div.textContent = entry
		above.appendChild(div)
	}
	const below = $("state-below")
	below.innerHTML = ""
	pane.below.forEach((goal, i) => {
		const div = document.createElement("div")
		div.className = i === 0 ? "goal focused" : "goal"
		div.textContent = goal
		below.appendChild(div)
	})
	if (pane.note) {
		const div = document.createElement("div")
		div.className = "note"
		div.textContent = pane.note
		below.appendChild(div)
	}
	$("goal-count").textContent = vm.state
		? `${pane.openGoals} open goal(s)`
		: ""

	$("error-pane").textContent = errorPane(vm) ?? ""

	const doc = $("render-pane")
	doc.innerHTML = ""
	for (const line of renderPane(vm)) {
		const div = document.createElement("div")
		div.textContent = line
		doc.appendChild(div)
	}
}

async function connect() {
	const url = ($("endpoint") as HTMLInputElement).value
	try {
		connection = await ProtocolConnection.connect(url)
		connection.onClose = () => {
			connection = null
			setBanner("Connection lost — reconnect to start a fresh session.")
		}
		setBanner(null)
		vm = initialViewModel()
		const source = ($("source") as HTMLTextAreaElement).value
		await exchange({ kind: "load", source })
	} catch (e) {
		setBanner(String(e))
	}
}

function wire() {
	$("connect").onclick = () => void connect()
	$("step-forward").onclick = () => void exchange({ kind: "step_forward" })
	$("step-back").onclick = () => void exchange({ kind: "step_back" })
	$("run-to-end").onclick = () => void exchange({ kind: "run_to_end" })
	$("render").onclick = () => {
		const level = Number(($("level") as HTMLSelectElement).value)
		void exchange({ kind: "render", level })
	}
	draw()
}

wire()
