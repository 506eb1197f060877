import random

from fpf import terms as T
from fpf.parser import parse_formula
from fpf.printer import pretty, pretty_term

from .oracles import random_formula


def test_conjunction_under_implication_no_extra_parens():
    f = T.Imp(T.And(T.Atom("A"), T.Atom("B")), T.And(T.Atom("B"), T.Atom("A")))
    assert pretty(f) == "A ∧ B → B ∧ A"


def test_subtraction_equation():
    f = parse_formula("Suc n ⊖ m = Suc (n ⊖ m)")
    assert pretty(f) == "Suc n ⊖ m = Suc (n ⊖ m)"


def test_quantifier_needs_parens_as_operand():
    f = parse_formula("(∃ a : ℕ, a = 0) ∨ (∃ a : ℕ, a = 1)")
    assert pretty(f) == "(∃ a : ℕ, a = 0) ∨ (∃ a : ℕ, a = 1)"


def test_right_associativity_minimal_parens():
    assert pretty(parse_formula("A → B → C")) == "A → B → C"
    assert pretty(parse_formula("(A → B) → C")) == "(A → B) → C"
    assert pretty(parse_formula("A ∧ (B ∧ C)")) == "A ∧ B ∧ C"
    assert pretty(parse_formula("(A ∧ B) ∧ C")) == "(A ∧ B) ∧ C"


def test_numeral_resugaring():
    assert pretty_term(T.num(2)) == "2"
    assert pretty_term(T.App("Suc", (T.Var("n"),))) == "Suc n"
    assert pretty_term(T.App(T.SUB, (T.num(1), T.Var("n")))) == "1 ⊖ n"


def test_negated_equality_prints_as_disequality():
    assert pretty(parse_formula("x ≠ 0")) == "x ≠ 0"


def test_roundtrip_500_random_formulas():
    rng = random.Random(20240817)
    for _ in range(500):
        f = random_formula(rng, depth=3)
        printed = pretty(f)
        again = parse_formula(printed)
        assert T.alpha_eq(f, again), f"round-trip failed: {printed!r}"


def test_determinism():
    rng = random.Random(7)
    fs = [random_formula(rng, depth=3) for _ in range(50)]
    assert [pretty(f) for f in fs] == [pretty(f) for f in fs]
