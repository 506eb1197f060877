import pytest

from fpf.errors import KernelError
from fpf.kernel.checker import check_script
from fpf.parser import parse_script


def check(text: str):
    return check_script(parse_script(text))


GOOD = """
Theorem t : A ∧ B → B ∧ A.
prove_imp H.
use_and H HA HB.
prove_and.
+ assumption.
+ assumption.
Qed.
"""


def test_accepted_bullets():
    check(GOOD)


def test_wrong_marker_at_depth_one():
    bad = GOOD.replace("+ assumption.\n+ assumption.", "* assumption.\n* assumption.")
    with pytest.raises(KernelError) as e:
        check(bad)
    assert e.value.code == "BULLET_WRONG_MARKER"
    assert "'+'" in e.value.message


def test_new_sibling_requires_closed_subtree():
    bad = """
Theorem t : A → (B ∧ C) ∧ B → (B ∧ C) ∧ B.
prove_imp HA.
prove_imp H.
prove_and.
+ use_and H HB HC.
+ assumption.
+ assumption.
Qed.
"""
    with pytest.raises(KernelError) as e:
        check(bad)
    assert e.value.code == "BULLET_SIBLING_OPEN"


def test_tactic_without_bullet_after_close_is_rejected():
    bad = GOOD.replace("+ assumption.\n+ assumption.", "+ assumption.\nassumption.")
    with pytest.raises(KernelError) as e:
        check(bad)
    assert e.value.code == "BULLET_EXPECTED"


def test_marker_cycle_by_depth(sub_suc_trace):
    markers = [n.line.bullet for n in sub_suc_trace.nodes if n.line.bullet]
    assert markers == ["+", "*", "*", "-", "-", "+"]


def test_unbulleted_branching_is_legal():
    check(
        """
Theorem t : A ∧ B → B ∧ A.
prove_imp H.
use_and H HA HB.
prove_and.
assumption.
assumption.
Qed.
"""
    )


def test_bare_bullet_lines():
    check(
        """
Theorem t : A ∧ B → B ∧ A.
prove_imp H.
use_and H HA HB.
prove_and.
+
assumption.
+
assumption.
Qed.
"""
    )


def test_depth_cycle_reuses_plus_at_depth_four(stdlib):
    # four nested conjunctions force depths 1..4; depth 4 cycles back to '+'
    text = """
Theorem t : A → (A ∧ A) ∧ (A ∧ A) → ((A ∧ A) ∧ (A ∧ A)) ∧ A.
prove_imp HA.
prove_imp H.
prove_and.
+ prove_and.
  * prove_and.
    - assumption.
    - assumption.
  * prove_and.
    - assumption.
    - assumption.
+ assumption.
Qed.
"""
    check(text)
