from fpf.kernel.checker import check_script
from fpf.parser import parse_script
from fpf.render.levels import Group, Single, condense_runs, render_level1, render_level2


def _trace(text):
    return check_script(parse_script(text)).traces[0]


def test_three_consecutive_prove_all_form_one_group():
    trace = _trace(
        """
Theorem t : ∀ x : ℕ, ∀ y : ℕ, ∀ z : ℕ, x ⊕ (y ⊖ z) = x ⊕ (y ⊖ z).
prove_all x.
prove_all y.
prove_all z.
reflexivity.
Qed.
"""
    )
    items = condense_runs(trace)
    groups = [it for it in items if isinstance(it, Group)]
    assert len(groups) == 1
    assert groups[0].kind == "prove_all"
    assert len(groups[0].nodes) == 3


def test_alternating_kinds_do_not_group():
    trace = _trace(
        """
Theorem t : ∀ x : ℕ, x = x → ∀ y : ℕ, y = y → x = x.
prove_all x.
prove_imp h1.
prove_all y.
prove_imp h2.
assumption.
Qed.
"""
    )
    items = condense_runs(trace)
    assert all(isinstance(it, Single) for it in items)
    assert len(items) == 5


def test_fig4_first_four_steps_merge_into_one_block(exists_or_trace, catalog):
    doc = render_level2(exists_or_trace, catalog)
    intro = doc.blocks[0]
    assert intro.sources == (0, 1, 2, 3)
    assert intro.text == (
        "Let A be a type, P and Q be propositional functions over A, "
        "and let furthermore (∃ a : A, P a) ∨ (∃ a : A, Q a) be assumed. "
        "We have to show ∃ a : A, P a ∨ Q a."
    )


def test_unmerging_groups_reconstructs_level1(exists_or_trace, sub_suc_trace, catalog):
    """Condensation is information-preserving: rendering each member of a
    merged block with the rule register reproduces the level-1 blocks."""
    from fpf.render.levels import _comment

    for trace in (exists_or_trace, sub_suc_trace):
        level1 = {b.sources[0]: b.text for b in render_level1(trace, catalog).blocks}
        doc = render_level2(trace, catalog)
        for block in doc.blocks:
            if len(block.sources) <= 1:
                continue
            for idx in block.sources:
                node = trace.nodes[idx]
                assert _comment(node, "rule", catalog).text == level1[idx]
