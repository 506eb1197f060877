import pytest

from fpf import terms as T
from fpf.kernel.checker import replay
from fpf.kernel.theorems import AXIOMATIZED, PROVED
from fpf.parser import parse_formula
from fpf.printer import pretty
from fpf.stdlib import eval_closed, load_stdlib

from .oracles import bounded_eval

REQUIRED = {
    "n_sub_0": "∀ n : ℕ, n ⊖ 0 = n",
    "n_sub_suc_m": "∀ n : ℕ, ∀ m : ℕ, n ⊖ Suc m = pred (n ⊖ m)",
    "suc_n_sub_suc_m": "∀ n : ℕ, ∀ m : ℕ, Suc n ⊖ Suc m = n ⊖ m",
    "suc_pred_n": "∀ n : ℕ, n ≠ 0 → Suc (pred n) = n",
    "pred_0": "pred 0 = 0",
    "n_sub_n": "∀ n : ℕ, n ⊖ n = 0",
    "n_add_m_sub_n": "∀ n : ℕ, ∀ m : ℕ, (n ⊕ m) ⊖ n = m",
    "add_comm": "∀ n : ℕ, ∀ m : ℕ, n ⊕ m = m ⊕ n",
    "I_add_n": "∀ n : ℕ, Suc n = 1 ⊕ n",
}


def test_catalog_contains_required_theorems(stdlib):
    _, db = stdlib
    for name, stmt in REQUIRED.items():
        rec = db.lookup(name)
        assert rec is not None, name
        assert T.alpha_eq(rec.statement, parse_formula(stmt)), name
    assert db.lookup("equ_fct") is not None
    assert db.lookup("equ_fct").schematic_fun == "f"


def test_lookup_examples(stdlib):
    _, db = stdlib
    assert pretty(db.lookup("pred_0").statement) == "pred 0 = 0"
    assert pretty(db.lookup("add_comm").statement) == "∀ n : ℕ, ∀ m : ℕ, n ⊕ m = m ⊕ n"
    assert db.lookup("nonsense") is None


def test_statuses(stdlib):
    _, db = stdlib
    assert db.lookup("n_sub_0").status == PROVED
    assert db.lookup("suc_n_sub_suc_m").status == PROVED
    assert db.lookup("n_sub_n").status == PROVED
    assert db.lookup("add_comm").status == AXIOMATIZED


def test_proved_records_carry_replayable_traces(stdlib):
    _, db = stdlib
    for name, rec in db.records.items():
        if rec.status == PROVED:
            assert rec.trace is not None, name
            assert replay(rec.trace), name


def test_axioms_true_in_model_up_to_16(stdlib):
    _, db = stdlib
    for name, rec in db.records.items():
        if rec.schematic_fun is not None:
            continue
        if T.formula_vars(rec.statement) - {"n", "m", "l", "xs", "t"}:
            continue
        if _arithmetic_only(rec.statement):
            assert bounded_eval(rec.statement, {}, bound=16), name


def _arithmetic_only(f) -> bool:
    if isinstance(f, (T.Forall, T.Exists)):
        return f.sort == T.NAT_SORT and _arithmetic_only(f.body)
    if isinstance(f, T.Not):
        return _arithmetic_only(f.body)
    if isinstance(f, (T.And, T.Or, T.Imp)):
        return _arithmetic_only(f.left) and _arithmetic_only(f.right)
    if isinstance(f, T.Eq):
        return True
    if isinstance(f, T.Falsity):
        return True
    return False


def test_eval_examples():
    assert eval_closed(T.App(T.SUB, (T.num(3), T.num(1)))) == max(3 - 1, 0) == 2
    assert eval_closed(T.App("pred", (T.num(0),))) == 0
    xs = T.App("cons", (T.num(4), T.App("cons", (T.num(7), T.App("nil")))))
    assert eval_closed(xs) == [4, 7]
    assert eval_closed(T.App("length", (xs,))) == 2
    assert eval_closed(T.App("append", (xs, xs))) == [4, 7, 4, 7]
    assert eval_closed(T.App("next_season", (T.App("winter"),))) == "spring"


def test_eval_rejects_open_terms():
    with pytest.raises(Exception):
        eval_closed(T.Var("n"))


def test_stdlib_is_cached(stdlib):
    assert load_stdlib() == stdlib or load_stdlib()[0] is stdlib[0]


def test_append_nil_axiom_true_for_small_lists():
    def as_list(values):
        t = T.App("nil")
        for v in reversed(values):
            t = T.App("cons", (T.num(v), t))
        return t

    for n in range(7):
        xs = as_list(list(range(n)))
        assert eval_closed(T.App("append", (xs, T.App("nil")))) == eval_closed(xs)


def test_mirror_mirror_axiom_status(stdlib):
    _, db = stdlib
    assert db.lookup("mirror_mirror").status == AXIOMATIZED


def test_one_plus_n_is_definitional():
    # addition recurses on its first argument, so Suc n = 1 ⊕ n holds by
    # computation alone (the catalog's axiom is conservative)
    from fpf.kernel.checker import check_script
    from fpf.parser import parse_script

    check_script(
        parse_script(
            "Theorem one_add : ∀ n : ℕ, Suc n = 1 ⊕ n. prove_all n. reflexivity. Qed."
        )
    )
