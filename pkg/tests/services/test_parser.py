"""Type symbols and the surface wff grammar."""

import pytest

from app.core.exceptions import (
    TypeMismatchError,
    TypeSyntaxError,
    UnknownConstantError,
    WffSyntaxError,
)
from app.models.types import IOTA, OMICRON, Arrow
from app.models.wff import Abbrev, AbbrevName, Abs, App, Const, Var, apply, q_const
from app.services.abbrev import expand
from app.services.parser import parse_type, parse_wff
from app.services.syntax import print_wff

OI = Arrow(OMICRON, IOTA)


class TestParseType:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("i", IOTA),
            ("o", OMICRON),
            ("oi", OI),
            ("oii", Arrow(OI, IOTA)),
            ("o(oi)", Arrow(OMICRON, OI)),
            ("(oi)", OI),
        ],
    )
    def test_valid(self, text, expected):
        assert parse_type(text) == expected

    @pytest.mark.parametrize("text", ["", "q", "o(i", "oi)"])
    def test_invalid(self, text):
        with pytest.raises(TypeSyntaxError):
            parse_type(text)


class TestParseWff:
    def test_variable(self):
        assert parse_wff("x_i") == Var("x", IOTA)
        assert parse_wff("f_(oi)") == Var("f", OI)
        assert parse_wff("x^2_o") == Var("x^2", OMICRON)

    def test_bound_occurrence_takes_the_binder_type(self):
        x_i = Var("x", IOTA)
        assert parse_wff("\\x_i. x") == Abs(x_i, x_i)

    def test_equality_stays_folded(self, signature):
        c = Const("c", IOTA)
        wff = parse_wff("c = c", signature)
        assert wff == Abbrev(AbbrevName.EQUALS, (c, c))
        assert expand(wff) == apply(q_const(IOTA), c, c)

    def test_application_associates_left(self, signature):
        r, c, d = Const("r", Arrow(OI, IOTA)), Const("c", IOTA), Const("d", IOTA)
        assert parse_wff("r c d", signature) == App(App(r, c), d)

    def test_constant_annotation_must_match(self, signature):
        assert parse_wff("c_i", signature) == Const("c", IOTA)
        with pytest.raises(TypeMismatchError):
            parse_wff("c_o", signature)

    def test_unknown_constant(self):
        with pytest.raises(UnknownConstantError):
            parse_wff("c")

    def test_ill_typed_application(self, signature):
        with pytest.raises(TypeMismatchError):
            parse_wff("p x_o", signature)

    def test_equalities_do_not_chain(self):
        with pytest.raises(WffSyntaxError):
            parse_wff("x_o = y_o = z_o")

    def test_free_variable_needs_a_suffix(self):
        with pytest.raises(WffSyntaxError):
            parse_wff("x")

    def test_syntax_error_reports_position(self):
        with pytest.raises(WffSyntaxError) as info:
            parse_wff("x_o /\\ ")
        assert info.value.position == 7

    def test_connective_constants(self):
        assert parse_wff("(/\\)") == Abbrev(AbbrevName.AND_CONST)
        assert parse_wff("(~) x_o") == App(Abbrev(AbbrevName.NOT_CONST), Var("x", OMICRON))


class TestRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            "x_o => y_o => z_o",
            "[x_o => y_o] => z_o",
            "x_o /\\ y_o \\/ z_o",
            "~[x_o = y_o]",
            "forall x_i. p x_i => [exists y_i. r x_i y_i]",
            "I x_i. p x_i",
            "def(k c) \\/ undef(bot_i)",
            "c ~= k d",
            "[\\x_i. k x_i] c /= d",
            "Q_i c = r c",
            "iota_i p = c",
            "exists1 x_i. p x_i",
        ],
    )
    def test_print_parse(self, signature, text):
        wff = parse_wff(text, signature)
        assert parse_wff(print_wff(wff), signature) == wff
