"""The formality compiler: trace -> natural-language document.

Level 0 echoes the checked script with per-line state digests.  Level 1
is one rule-register comment per tactic node.  Level 2 weakens level 1:
runs of the same intro/elimination kind are condensed, the intuitive
register is used, trivial endings are folded into the preceding block,
repeated formulas become "it", and analogous sibling branches are
replaced by one analogy comment.  Level 3 keeps the proof's tree shape:
bullets by depth, equational chains with hint-only justifications, and
forward-derived facts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import terms as T
from ..kernel.state import BULLET_CYCLE
from ..kernel.trace import ProofTrace, TraceNode
from ..printer import pretty, pretty_sort, pretty_term
from . import analogy as analogy_mod
from .catalog import CommentTemplateCatalog, fill, load_catalog
from .chains import goal_chains, hint_for, hyp_chain
from .document import Block, FormalityLevel, RenderedDocument

GROUPABLE = ("prove_all", "prove_imp", "use_all", "use_and")
CLOSER_KINDS = ("assumption", "reflexivity", "use_false")


# ------------------------------------------------------------- item model


@dataclass
class Single:
    node: TraceNode


@dataclass
class Group:
    kind: str
    nodes: list[TraceNode]


@dataclass
class Intro:
    all_nodes: list[TraceNode]  # leading prove_all run
    imp_nodes: list[TraceNode]  # following prove_imp run


@dataclass
class RewriteRun:
    nodes: list[TraceNode]
    closer: TraceNode | None  # reflexivity absorbed into the chain block


@dataclass
class HypRun:
    nodes: list[TraceNode]


@dataclass
class SeededRun:
    thm_node: TraceNode  # use_theorem introducing the implication
    imp_node: TraceNode  # use_imp deriving the equality
    rewrites: list[TraceNode]


@dataclass
class Fact:
    node: TraceNode  # standalone use_theorem


@dataclass
class Contradiction:
    imp_node: TraceNode  # use_imp deriving False
    false_node: TraceNode


@dataclass
class BranchItem:
    node: TraceNode
    children: list[list]


Item = object


def _tactics(seq) -> list[TraceNode]:
    return [n for n in seq if not n.is_bullet_event]


def _is_goal_rw(n: TraceNode) -> bool:
    return (
        n.kind in ("rewrite", "unfold")
        and n.rewrite is not None
        and n.rewrite.target_hyp is None
        and n.rewrite.slot in ("lhs", "rhs")
        and n.subgoals == 1
    )


def _is_hyp_rw(n: TraceNode) -> bool:
    return (
        n.kind in ("rewrite", "unfold")
        and n.rewrite is not None
        and n.rewrite.target_hyp is not None
        and n.subgoals == 1
    )


def build_items(seq, *, chains: bool, fuse_intro: bool) -> list[Item]:
    """Group a branch sequence for presentation (condensation rule)."""
    nodes = _tactics(seq)
    items: list[Item] = []
    i = 0
    if fuse_intro:
        alls: list[TraceNode] = []
        imps: list[TraceNode] = []
        j = i
        while j < len(nodes) and nodes[j].kind == "prove_all":
            alls.append(nodes[j])
            j += 1
        while j < len(nodes) and nodes[j].kind == "prove_imp":
            imps.append(nodes[j])
            j += 1
        if alls or imps:
            items.append(Intro(alls, imps))
            i = j
    while i < len(nodes):
        n = nodes[i]
        if n.subgoals is not None and n.subgoals >= 2:
            items.append(
                BranchItem(
                    n,
                    [
                        build_items(c, chains=chains, fuse_intro=False)
                        for c in n.children
                    ],
                )
            )
            i += 1
            continue
        if chains and _is_goal_rw(n):
            run = [n]
            i += 1
            while i < len(nodes) and _is_goal_rw(nodes[i]):
                run.append(nodes[i])
                i += 1
            closer = None
            if i < len(nodes) and nodes[i].kind == "reflexivity":
                closer = nodes[i]
                i += 1
            items.append(RewriteRun(run, closer))
            continue
        if chains and _is_hyp_rw(n):
            hyp = n.rewrite.target_hyp
            run = [n]
            i += 1
            while (
                i < len(nodes)
                and _is_hyp_rw(nodes[i])
                and nodes[i].rewrite.target_hyp == hyp
            ):
                run.append(nodes[i])
                i += 1
            items.append(HypRun(run))
            continue
        if chains and n.kind == "use_theorem":
            nxt = nodes[i + 1] if i + 1 < len(nodes) else None
            if (
                nxt is not None
                and nxt.kind == "use_imp"
                and nxt.line.names[0] == n.new_hyps[0][0]
                and isinstance(nxt.new_hyps[0][1], T.Eq)
            ):
                derived = nxt.new_hyps[0][0]
                rewrites: list[TraceNode] = []
                j = i + 2
                while (
                    j < len(nodes)
                    and _is_hyp_rw(nodes[j])
                    and nodes[j].rewrite.target_hyp == derived
                ):
                    rewrites.append(nodes[j])
                    j += 1
                items.append(SeededRun(n, nxt, rewrites))
                i = j
                continue
            items.append(Fact(n))
            i += 1
            continue
        if (
            n.kind == "use_imp"
            and isinstance(n.new_hyps[0][1], T.Falsity)
            and i + 1 < len(nodes)
            and nodes[i + 1].kind == "use_false"
            and nodes[i + 1].line.names[0] == n.new_hyps[0][0]
        ):
            items.append(Contradiction(n, nodes[i + 1]))
            i += 2
            continue
        if n.kind in GROUPABLE:
            run = [n]
            i += 1
            while i < len(nodes) and nodes[i].kind == n.kind:
                run.append(nodes[i])
                i += 1
            items.append(Group(n.kind, run) if len(run) > 1 else Single(run[0]))
            continue
        items.append(Single(n))
        i += 1
    return items


def condense_runs(trace: ProofTrace) -> list[Item]:
    """The grouped presentation of a trace (condensation rule only)."""
    return build_items(trace.roots, chains=False, fuse_intro=False)


# ----------------------------------------------------------- node fields


def node_fields(node: TraceNode, cat: CommentTemplateCatalog):
    """(fields, formula field names, citations) for one tactic node."""
    g = node.goal_before
    k = node.kind
    f: dict[str, str] = {}
    formulas: tuple[str, ...] = ()
    citations: tuple[str, ...] = ()
    if k == "prove_imp":
        f = {"h": node.line.names[0], "A": pretty(g.target.left), "B": pretty(g.target.right)}
        formulas = ("A", "B")
    elif k == "prove_all":
        f = {
            "x": node.line.names[0],
            "sort_phrase": cat.sort_phrase(g.target.sort, plural=False),
            "body": pretty(node.state_after.focused.target),
        }
        formulas = ("body",)
    elif k == "prove_not":
        f = {"h": node.line.names[0], "A": pretty(g.target.body)}
        formulas = ("A",)
    elif k == "prove_and":
        f = {
            "goal": pretty(g.target),
            "A": pretty(g.target.left),
            "B": pretty(g.target.right),
        }
        formulas = ("goal", "A", "B")
    elif k in ("prove_or_left", "prove_or_right"):
        f = {
            "goal": pretty(g.target),
            "A": pretty(g.target.left),
            "B": pretty(g.target.right),
        }
        formulas = ("goal", "A", "B")
    elif k == "prove_exists":
        f = {
            "goal": pretty(g.target),
            "t": pretty_term(node.line.term_args[0]),
            "body": pretty(node.state_after.focused.target),
        }
        formulas = ("goal", "body")
    elif k == "use_and":
        h = node.line.names[0]
        f = {
            "h": h,
            "conj": pretty(g.context.hyp(h)),
            "A": pretty(node.new_hyps[0][1]),
            "B": pretty(node.new_hyps[1][1]),
            "h1": node.new_hyps[0][0],
            "h2": node.new_hyps[1][0],
        }
        formulas = ("conj", "A", "B")
    elif k == "use_or":
        h = node.line.names[0]
        d = g.context.hyp(h)
        f = {"h": h, "disj": pretty(d), "A": pretty(d.left), "B": pretty(d.right)}
        formulas = ("disj", "A", "B")
    elif k == "use_exists":
        h = node.line.names[0]
        ex = g.context.hyp(h)
        f = {
            "h": h,
            "ex": pretty(ex),
            "x": node.new_vars[0][0],
            "sort": pretty_sort(node.new_vars[0][1]),
            "body": pretty(node.new_hyps[0][1]),
            "hx": node.new_hyps[0][0],
        }
        formulas = ("ex", "body")
    elif k == "use_all":
        h = node.line.names[0]
        f = {
            "h": h,
            "all": pretty(g.context.hyp(h)),
            "t": pretty_term(node.line.term_args[0]),
            "inst": pretty(node.new_hyps[0][1]),
            "h2": node.new_hyps[0][0],
        }
        formulas = ("all", "inst")
    elif k == "use_imp":
        (h, fh), (ha, fa) = node.used_hyps
        f = {
            "h": h,
            "himp": pretty(fh),
            "ha": ha,
            "premise": pretty(fa),
            "conclusion": pretty(node.new_hyps[0][1]),
            "h2": node.new_hyps[0][0],
        }
        formulas = ("himp", "premise", "conclusion")
    elif k == "use_false":
        f = {"h": node.line.names[0] if node.line.names else node.used_hyps[0][0]}
    elif k == "use_theorem":
        terms = ", ".join(pretty_term(t) for t in node.line.term_args)
        f = {
            "name": node.theorem_used,
            "terms": terms,
            "inst": pretty(node.new_hyps[0][1]),
            "h2": node.new_hyps[0][0],
        }
        formulas = ("inst",)
        citations = (node.theorem_used,) + tuple(
            pretty_term(t) for t in node.line.term_args
        )
    elif k in ("rewrite", "unfold"):
        rw = node.rewrite
        name = hint_for(node) if rw.is_hypothesis else rw.justification
        where = f"in {rw.target_hyp}" if rw.target_hyp else "in the goal"
        cond_tail = ""
        if rw.conditions:
            conds = " and ".join(pretty(c) for c in rw.conditions)
            cond_tail = f" This leaves the additional goal {conds}."
        f = {
            "name": name,
            "f": rw.justification,
            "eq": pretty(rw.equation),
            "redex": pretty_term(rw.redex),
            "repl": pretty_term(rw.replacement),
            "where": where,
            "result": pretty(rw.formula_after),
            "cond_tail": cond_tail,
        }
        formulas = ("result",)
        citations = (name, f["redex"], f["repl"])
    elif k == "case":
        f = {
            "x": node.line.names[0],
            "patterns": ", ".join(pretty_term(b.pattern) for b in node.branches),
        }
    elif k == "induction":
        f = {
            "x": node.line.names[0],
            "patterns": ", ".join(pretty_term(b.pattern) for b in node.branches),
        }
    elif k == "assumption":
        f = {"goal": pretty(g.target), "h": node.used_hyps[0][0]}
        formulas = ("goal",)
    elif k == "reflexivity":
        f = {"goal": pretty(g.target)}
        formulas = ("goal",)
    else:
        raise ValueError(k)
    return f, formulas, citations


# --------------------------------------------------------------- level 0


def render_level0(trace: ProofTrace, cat: CommentTemplateCatalog) -> RenderedDocument:
    blocks = [
        Block(f"Theorem {trace.name} : {pretty(trace.statement)}.", sources=())
    ]
    for n in trace.nodes:
        after = n.state_after
        if after.complete:
            digest = "proof complete"
        else:
            k = after.open_goal_count
            focus = pretty(after.focused.target) if after.focused else "next goal unfocused"
            digest = f"{k} goal(s), focus: {focus}"
        blocks.append(Block(f"{n.line.text}  (* {digest} *)", sources=(n.index,)))
    blocks.append(Block("Qed."))
    return RenderedDocument(FormalityLevel.SCRIPT, trace.name, tuple(blocks))


# --------------------------------------------------------------- level 1


def _comment(node: TraceNode, register: str, cat: CommentTemplateCatalog,
             prev: tuple[str, ...] = (), lookback: int = 0) -> Block:
    fields, formulas, citations = node_fields(node, cat)
    text, printed = fill(
        cat.template(node.kind, register), fields, formulas, prev, lookback,
        cat.pronoun_min_length,
    )
    return Block(text, sources=(node.index,), formulas=printed, citations=citations)


def render_level1(trace: ProofTrace, cat: CommentTemplateCatalog) -> RenderedDocument:
    blocks = tuple(_comment(n, "rule", cat) for n in trace.tactic_nodes)
    return RenderedDocument(FormalityLevel.LINE_BY_LINE, trace.name, blocks)


def render_level1_nodes(
    nodes, cat: CommentTemplateCatalog
) -> list[Block]:
    """Rule-register comments for a node sequence (analogy reversal)."""
    out = []
    for n in nodes:
        if n.is_bullet_event:
            continue
        out.append(_comment(n, "rule", cat))
        for child in n.children:
            out.extend(render_level1_nodes(child, cat))
    return out


# --------------------------------------------------------------- level 2


class _Writer:
    def __init__(self, cat: CommentTemplateCatalog, level3: bool):
        self.cat = cat
        self.level3 = level3
        self.blocks: list[Block] = []
        self.chrome = 0  # leading header blocks never receive suffixes
        self.floor = 0  # suffixes never attach to blocks outside the branch

    @property
    def prev_formulas(self) -> tuple[str, ...]:
        return self.blocks[-1].formulas if self.blocks else ()

    def add(self, block: Block):
        self.blocks.append(block)

    def add_chrome(self, block: Block):
        self.blocks.append(block)
        self.chrome = len(self.blocks)

    def elide(self, kind: str, sources: tuple[int, ...], conditional: bool = False,
              fallback: str | None = None):
        suffix = self.cat.suffix(kind, level3=self.level3, conditional=conditional)
        if len(self.blocks) <= max(self.chrome, self.floor):
            self.add(Block(fallback or suffix.lstrip(", ."), sources=sources))
            return
        last = self.blocks[-1]
        if last.text.endswith(suffix.lstrip(", ") if suffix.startswith(",") else suffix):
            self.blocks[-1] = Block(
                last.text, last.depth, last.marker, last.sources + sources,
                last.formulas, last.citations,
            )
            return
        self.blocks[-1] = last.with_suffix(suffix, sources)


def _intro_block(item: Intro, w: _Writer) -> Block:
    cat = w.cat
    var_groups: list[tuple[T.Sort, list[str]]] = []
    for n in item.all_nodes:
        sort = n.new_vars[0][1]
        name = n.new_vars[0][0]
        if var_groups and var_groups[-1][0] == sort:
            var_groups[-1][1].append(name)
        else:
            var_groups.append((sort, [name]))
    parts = []
    for sort, names in var_groups:
        phrase = cat.sort_phrase(sort, plural=len(names) > 1)
        parts.append(f"{_listing(names)} be {phrase}")
    vars_text = ", ".join(parts)
    assumptions = " and ".join(pretty(n.new_hyps[0][1]) for n in item.imp_nodes)
    last = (item.imp_nodes or item.all_nodes)[-1]
    goal = pretty(last.state_after.focused.target)
    if item.all_nodes and item.imp_nodes:
        template = cat.phrase("intro", "fused")
    elif item.all_nodes:
        template = cat.phrase("intro", "vars_only")
    else:
        template = cat.phrase("intro", "assumptions_only")
    text, printed = fill(
        template,
        {"vars": vars_text, "assumptions": assumptions, "goal": goal},
        ("assumptions", "goal"),
    )
    sources = tuple(n.index for n in item.all_nodes + item.imp_nodes)
    return Block(text, sources=sources, formulas=printed + (assumptions,))


def _listing(names: list[str]) -> str:
    if len(names) == 1:
        return names[0]
    return ", ".join(names[:-1]) + " and " + names[-1]


def _group_block(item: Group, w: _Writer) -> Block:
    texts, sources, formulas, citations = [], [], [], []
    prev = w.prev_formulas
    for n in item.nodes:
        b = _comment(n, "intuitive", w.cat, prev, w.cat.pronoun_lookback if not w.level3 else 0)
        prev = b.formulas
        texts.append(b.text)
        sources.extend(b.sources)
        formulas.extend(b.formulas)
        citations.extend(b.citations)
    return Block(
        " ".join(texts),
        sources=tuple(sources),
        formulas=tuple(formulas),
        citations=tuple(citations),
    )


def _analogy_block(
    report: analogy_mod.AnalogyReport, ref_ordinal: int, nodes: tuple[int, ...],
    cat: CommentTemplateCatalog,
) -> Block:
    a = cat.data["analogy"]
    text = a["block"].format(ref=a["ordinals"][ref_ordinal])
    for frm, to in report.display:
        text += a["subst"].format(frm=frm, to=to)
        if report.preserved:
            text += a["except"].format(
                formulas=" and ".join(pretty(p) for p in report.preserved)
            )
    swaps = dict(report.swaps)
    if ("prove_or_left", "prove_or_right") in report.swaps:
        text += a["swap_right"]
    elif ("prove_or_right", "prove_or_left") in report.swaps:
        text += a["swap_left"]
    if not text.endswith("."):
        text += "."
    return Block(text, sources=nodes)


def _branch_node_ids(items: list[Item]) -> tuple[int, ...]:
    out: list[int] = []
    for it in items:
        if isinstance(it, Single):
            out.append(it.node.index)
        elif isinstance(it, (Group,)):
            out.extend(n.index for n in it.nodes)
        elif isinstance(it, Intro):
            out.extend(n.index for n in it.all_nodes + it.imp_nodes)
        elif isinstance(it, RewriteRun):
            out.extend(n.index for n in it.nodes)
            if it.closer:
                out.append(it.closer.index)
        elif isinstance(it, HypRun):
            out.extend(n.index for n in it.nodes)
        elif isinstance(it, SeededRun):
            out.extend(
                [it.thm_node.index, it.imp_node.index]
                + [n.index for n in it.rewrites]
            )
        elif isinstance(it, Fact):
            out.append(it.node.index)
        elif isinstance(it, Contradiction):
            out.extend([it.imp_node.index, it.false_node.index])
        elif isinstance(it, BranchItem):
            out.append(it.node.index)
            for c in it.children:
                out.extend(_branch_node_ids(c))
    return tuple(out)


def _sibling_analogies(node: TraceNode):
    """For each child index, (reference index, report) when analogous to
    an earlier sibling; replaced branches are not used as references."""
    found: dict[int, tuple[int, analogy_mod.AnalogyReport]] = {}
    for j in range(1, len(node.children)):
        for i in range(j):
            if i in found:
                continue
            rep = analogy_mod.detect_analogy(node.children[i], node.children[j])
            if rep is not None:
                found[j] = (i, rep)
                break
    return found


def _render_items_l2(items: list[Item], w: _Writer):
    for it in items:
        if isinstance(it, Intro):
            w.add(_intro_block(it, w))
        elif isinstance(it, Group):
            w.add(_group_block(it, w))
        elif isinstance(it, Contradiction):
            w.elide(
                "use_false",
                (it.imp_node.index, it.false_node.index),
                fallback=_comment(it.false_node, "intuitive", w.cat).text,
            )
        elif isinstance(it, Single):
            n = it.node
            if n.kind in CLOSER_KINDS:
                w.elide(n.kind, (n.index,), fallback=_comment(n, "intuitive", w.cat).text)
            else:
                w.add(
                    _comment(n, "intuitive", w.cat, w.prev_formulas, w.cat.pronoun_lookback)
                )
        elif isinstance(it, BranchItem):
            w.add(
                _comment(
                    it.node, "intuitive", w.cat, w.prev_formulas, w.cat.pronoun_lookback
                )
            )
            analogies = _sibling_analogies(it.node)
            for j, child in enumerate(it.children):
                if j in analogies:
                    i, rep = analogies[j]
                    w.add(_analogy_block(rep, i, _branch_node_ids(child), w.cat))
                else:
                    _render_items_l2(child, w)
        else:
            raise TypeError(it)


def render_level2(trace: ProofTrace, cat: CommentTemplateCatalog) -> RenderedDocument:
    items = build_items(trace.roots, chains=False, fuse_intro=True)
    w = _Writer(cat, level3=False)
    _render_items_l2(items, w)
    return RenderedDocument(FormalityLevel.WEAKENED, trace.name, tuple(w.blocks))


# --------------------------------------------------------------- level 3


def _chain_block(run: RewriteRun, w: _Writer) -> Block:
    cat = w.cat
    chains = goal_chains(run.nodes)
    by_side = {c.side: c for c in chains}
    if "lhs" in by_side and "rhs" in by_side:
        text = cat.phrase("level3", "chain_both").format(
            lhs=by_side["lhs"].render(), rhs=by_side["rhs"].render()
        )
    elif "lhs" in by_side:
        text = cat.phrase("level3", "chain_lhs").format(lhs=by_side["lhs"].render())
    else:
        text = cat.phrase("level3", "chain_rhs").format(rhs=by_side["rhs"].render())
    text += "."
    sources = tuple(n.index for n in run.nodes)
    citations = tuple(h for c in chains for h in c.hints)
    return Block(text, sources=sources, citations=citations)


def _render_items_l3(items: list[Item], w: _Writer, depth: int,
                     pending_marker: list, in_conditional_main: bool):
    cat = w.cat

    def add(block: Block):
        marker = None
        if pending_marker and pending_marker[0]:
            marker = pending_marker[0]
            pending_marker[0] = None
        w.add(
            Block(
                block.text, depth, marker, block.sources, block.formulas, block.citations
            )
        )

    for it in items:
        if isinstance(it, Intro):
            add(_intro_block(it, w))
        elif isinstance(it, Group):
            add(_group_block(it, w))
        elif isinstance(it, RewriteRun):
            add(_chain_block(it, w))
            if it.closer is not None:
                w.elide(
                    "reflexivity",
                    (it.closer.index,),
                    conditional=in_conditional_main,
                )
        elif isinstance(it, HypRun):
            chain = hyp_chain(it.nodes)
            if chain is None:
                for n in it.nodes:
                    add(_comment(n, "intuitive", cat))
            else:
                add(
                    Block(
                        cat.phrase("level3", "chain_forward").format(chain=chain.render())
                        + ".",
                        sources=tuple(n.index for n in it.nodes),
                        citations=chain.hints,
                    )
                )
        elif isinstance(it, SeededRun):
            chain = hyp_chain(
                it.rewrites, seed=it.imp_node, seed_hint=it.thm_node.theorem_used
            )
            if chain is None:
                for n in (it.thm_node, it.imp_node, *it.rewrites):
                    add(_comment(n, "intuitive", cat))
            else:
                ha, fa = it.imp_node.used_hyps[1]
                text = cat.phrase("level3", "chain_seeded").format(
                    premise=pretty(fa), ha=ha, chain=chain.render()
                )
                add(
                    Block(
                        text + ".",
                        sources=(
                            it.thm_node.index,
                            it.imp_node.index,
                            *(n.index for n in it.rewrites),
                        ),
                        citations=chain.hints,
                    )
                )
        elif isinstance(it, Fact):
            n = it.node
            fields, _, _ = node_fields(n, cat)
            text, printed = fill(
                cat.phrase("level3", "fact"), fields, ("inst",)
            )
            add(
                Block(
                    text,
                    sources=(n.index,),
                    formulas=printed,
                    citations=(n.theorem_used,),
                )
            )
        elif isinstance(it, Contradiction):
            w.elide(
                "use_false",
                (it.imp_node.index, it.false_node.index),
                fallback=_comment(it.false_node, "intuitive", cat).text,
            )
        elif isinstance(it, Single):
            n = it.node
            if n.kind in CLOSER_KINDS:
                w.elide(
                    n.kind,
                    (n.index,),
                    conditional=in_conditional_main and n.kind == "reflexivity",
                    fallback=cat.phrase("level3", "pure_computation")
                    if n.kind == "reflexivity"
                    else _comment(n, "intuitive", cat).text,
                )
            else:
                add(_comment(n, "intuitive", cat))
        elif isinstance(it, BranchItem):
            _render_branch_l3(it, w, depth, add)
        else:
            raise TypeError(it)


def _render_branch_l3(it: BranchItem, w: _Writer, depth: int, add):
    cat = w.cat
    node = it.node
    conditional = node.kind in ("rewrite", "unfold") and node.rewrite is not None
    if not conditional:
        add(_comment(node, "intuitive", cat))
    analogies = _sibling_analogies(node)
    child_depth = depth + 1
    marker = BULLET_CYCLE[(child_depth - 1) % 3]
    for j, child in enumerate(it.children):
        pending = [marker]
        if j in analogies:
            i, rep = analogies[j]
            b = _analogy_block(rep, i, _branch_node_ids(child), cat)
            w.add(Block(b.text, child_depth, marker, b.sources, b.formulas, b.citations))
            continue
        outer = w.floor
        w.floor = len(w.blocks)
        opening, op_sources, op_citations = _branch_opening(node, j, cat)
        if opening is not None:
            w.add(
                Block(
                    opening,
                    child_depth,
                    marker,
                    op_sources,
                    citations=op_citations,
                )
            )
            pending = [None]
        _render_items_l3(
            child,
            w,
            child_depth,
            pending,
            in_conditional_main=conditional and j == 0,
        )
        w.floor = outer


def _branch_opening(node: TraceNode, j: int, cat: CommentTemplateCatalog):
    """Opening sentence of the j-th subproof of a branching node."""
    info = node.branches[j] if j < len(node.branches) else None
    if info is None:
        return None, (), ()
    if info.kind == "or":
        hyp = pretty(info.hyps[0][1])
        goal = pretty(node.goal_before.target)
        return (
            cat.phrase("level3", "or_branch").format(hyp=hyp, goal=goal),
            (),
            (),
        )
    if info.kind == "case":
        return (
            cat.phrase("level3", "case_branch").format(
                x=node.line.names[0], pattern=pretty_term(info.pattern)
            ),
            (),
            (),
        )
    if info.kind == "ind":
        if info.ihs:
            ihs = " and ".join(f"{n} : {pretty(f)}" for n, f in info.ihs)
            text = cat.phrase("level3", "ind_step").format(
                x=node.line.names[0], pattern=pretty_term(info.pattern), ihs=ihs
            )
        else:
            text = cat.phrase("level3", "ind_base").format(
                x=node.line.names[0], pattern=pretty_term(info.pattern)
            )
        return text, (), ()
    if info.kind == "subgoal":
        return (
            cat.phrase("level3", "subgoal_branch").format(goal=pretty(info.target)),
            (),
            (),
        )
    if info.kind == "main":
        rw = node.rewrite
        cond = pretty(rw.conditions[0])
        hint = hint_for(node)
        step = f"{pretty_term(rw.side_before)} ={{{hint}}}= {pretty_term(rw.side_after)}"
        text = cat.phrase("level3", "conditional_main").format(cond=cond, step=step)
        return text, (node.index,), (hint,)
    if info.kind == "condition":
        return (
            cat.phrase("level3", "conditional_side").format(cond=pretty(info.condition)),
            (),
            (),
        )
    return None, (), ()


def render_level3(trace: ProofTrace, cat: CommentTemplateCatalog) -> RenderedDocument:
    items = build_items(trace.roots, chains=True, fuse_intro=True)
    w = _Writer(cat, level3=True)
    w.add_chrome(
        Block(cat.phrase("level3", "theorem").format(statement=pretty(trace.statement)))
    )
    w.add_chrome(Block(cat.phrase("level3", "proof")))
    _render_items_l3(items, w, 0, [None], in_conditional_main=False)
    w.add(Block(cat.phrase("level3", "qed")))
    return RenderedDocument(FormalityLevel.STRUCTURE_FAITHFUL, trace.name, tuple(w.blocks))


# -------------------------------------------------------------- dispatch


def render(
    level: FormalityLevel | int,
    trace: ProofTrace,
    cat: CommentTemplateCatalog | None = None,
) -> RenderedDocument:
    """Render a checked trace at the requested formality level."""
    cat = cat or load_catalog()
    level = FormalityLevel(level)
    fn = {
        FormalityLevel.SCRIPT: render_level0,
        FormalityLevel.LINE_BY_LINE: render_level1,
        FormalityLevel.WEAKENED: render_level2,
        FormalityLevel.STRUCTURE_FAITHFUL: render_level3,
    }[level]
    return fn(trace, cat)
