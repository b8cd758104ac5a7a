import pytest

from app.core.exceptions import CaptureError, RuleApplicationError, TypeMismatchError
from app.models.proof import PathStep
from app.models.types import IOTA, OMICRON, Arrow
from app.models.wff import Abs, App, Const, Var
from app.services.abbrev import expand
from app.services.parser import parse_wff
from app.services.substitution import (
    binders_above,
    find_occurrences,
    free_vars,
    fresh_variable,
    is_free_for,
    replace_at,
    substitute,
    subtree_at,
    variable_names,
)

OI = Arrow(OMICRON, IOTA)
OII = Arrow(OI, IOTA)
x_i, y_i = Var("x", IOTA), Var("y", IOTA)
c = Const("c", IOTA)
p = Const("p", OI)
r = Const("r", OII)

FUN, ARG, BODY = PathStep.FUN, PathStep.ARG, PathStep.BODY


class TestFreeVars:
    def test_abstraction_binds(self):
        assert free_vars(Abs(x_i, App(App(r, x_i), y_i))) == {y_i}

    def test_folded_binders(self, signature):
        assert free_vars(parse_wff("forall x_i. r x_i y_i", signature)) == {y_i}

    def test_def_introduces_no_free_variable(self, signature):
        assert free_vars(expand(parse_wff("def(c)", signature))) == frozenset()


class TestFreshVariable:
    def test_enumeration_order(self):
        names = variable_names()
        assert [next(names) for _ in range(8)] == ["x", "y", "z", "f", "g", "h", "x^1", "y^1"]

    def test_first_unused(self):
        assert fresh_variable(IOTA, set()) == x_i
        assert fresh_variable(IOTA, {x_i}) == y_i

    def test_other_types_do_not_collide(self):
        assert fresh_variable(OMICRON, {x_i}) == Var("x", OMICRON)

    def test_wraps_to_superscripts(self):
        taken = {Var(name, OMICRON) for name in ("x", "y", "z", "f", "g", "h")}
        assert fresh_variable(OMICRON, taken) == Var("x^1", OMICRON)


class TestSubstitute:
    def test_replaces_free_occurrences(self):
        body = App(p, x_i)
        assert substitute(c, x_i, body) == App(p, c)

    def test_bound_occurrences_are_untouched(self):
        wff = Abs(x_i, App(p, x_i))
        assert substitute(c, x_i, wff) == wff

    def test_capture_is_reported(self):
        wff = Abs(y_i, App(App(r, x_i), y_i))
        assert not is_free_for(y_i, x_i, wff)
        with pytest.raises(CaptureError):
            substitute(y_i, x_i, wff)

    def test_vacuous_binder_does_not_capture(self):
        wff = Abs(y_i, App(p, y_i))
        assert is_free_for(y_i, x_i, wff)

    def test_type_mismatch(self):
        with pytest.raises(TypeMismatchError):
            substitute(Var("x", OMICRON), x_i, App(p, x_i))

    def test_folded_input_is_expanded(self, signature):
        quantified = parse_wff("forall y_i. r x_i y_i", signature)
        assert substitute(c, x_i, quantified) == expand(parse_wff("forall y_i. r c y_i", signature))
        assert not is_free_for(y_i, x_i, quantified)
        with pytest.raises(CaptureError):
            substitute(y_i, x_i, quantified)


class TestPaths:
    def test_subtree_and_replace(self):
        wff = App(App(r, c), x_i)
        assert subtree_at(wff, (FUN, ARG)) == c
        assert replace_at(wff, (ARG,), c) == App(App(r, c), c)
        assert replace_at(wff, (), c) == c

    def test_invalid_path(self):
        with pytest.raises(RuleApplicationError):
            subtree_at(App(p, c), (BODY,))

    def test_binders_above(self):
        wff = Abs(x_i, Abs(y_i, App(App(r, x_i), y_i)))
        assert binders_above(wff, (BODY, BODY, FUN, ARG)) == [x_i, y_i]
        assert binders_above(wff, ()) == []

    def test_find_occurrences_in_preorder(self):
        wff = App(App(r, c), c)
        assert find_occurrences(wff, c) == [(FUN, ARG), (ARG,)]

    def test_binder_is_not_an_occurrence(self):
        wff = Abs(x_i, App(p, x_i))
        assert find_occurrences(wff, x_i) == [(BODY, ARG)]
