from collections import Counter

import pytest

from app.models.wff import Abbrev, AbbrevName
from app.services.abbrev import expand
from app.services.catalog import propositional_formulas, w
from app.services.semantics import find_counter_model
from app.services.substitution import free_vars
from app.services.tautology import skeleton, tautologous, truth_table


class TestSkeleton:
    def test_repeated_atoms_are_shared(self):
        assert len(skeleton(w("p c /\\ p c")).atoms) == 1

    def test_atoms_are_compared_in_core_form(self):
        sk = skeleton(w("def(c) \\/ undef(c)"))
        assert len(sk.atoms) == 1

    def test_equality_at_type_o_is_flagged(self):
        assert skeleton(w("p c = p c")).uses_equivalence
        assert not skeleton(w("c = c")).uses_equivalence

    def test_truth_table_size(self):
        sk = skeleton(w("x_o => y_o \\/ z_o"))
        assert len(sk.atoms) == 3
        assert len(truth_table(sk)) == 8


class TestTautologous:
    @pytest.mark.parametrize(
        "text",
        [
            "x_o \\/ ~x_o",
            "T",
            "p c = p c",
            "def(c) \\/ undef(c)",
            "c ~= d => c ~= d",
            "c /= d \\/ c = d",
            "[exists x_i. p x_i] \\/ [forall x_i. ~p x_i]",
            "x_o /\\ y_o => y_o /\\ x_o",
        ],
    )
    def test_tautologies(self, text):
        assert tautologous(w(text))

    @pytest.mark.parametrize(
        "text",
        [
            "x_o => y_o",
            "F",
            "c = c",
            "[\\x_i. p x_i] c => p c",
        ],
    )
    def test_non_tautologies(self, text):
        assert not tautologous(w(text))

    def test_agrees_with_two_valued_semantics(self):
        # Propositional formulas are tautologies iff no one-individual model falsifies them
        for formula in propositional_formulas(120):
            assert tautologous(formula) == (find_counter_model(formula, 1) is None)


def connective_depth(wff) -> int:
    if isinstance(wff, Abbrev) and wff.args:
        return 1 + max(connective_depth(arg) for arg in wff.args)
    return 0


class TestPropositionalFormulas:
    def test_count_and_order_are_fixed(self):
        assert len(propositional_formulas(40)) == 40
        assert propositional_formulas(40) == propositional_formulas(40)
        assert propositional_formulas(10) == propositional_formulas(40)[:10]

    def test_depths_are_taken_in_turn(self):
        formulas = propositional_formulas(5)
        assert str(formulas[0]) == "x_o"
        assert [connective_depth(f) for f in formulas] == [0, 1, 2, 3, 4]

    def test_default_oracle_covers_every_depth(self):
        formulas = propositional_formulas(1000)
        depths = Counter(connective_depth(f) for f in formulas)
        assert depths[0] == 5
        assert depths[3] > 200 and depths[4] > 200
        assert len(set(formulas)) == 1000

    def test_max_depth(self):
        assert max(connective_depth(f) for f in propositional_formulas(300, max_depth=2)) == 2

    def test_all_connectives_occur(self):
        names = set()

        def collect(wff):
            if isinstance(wff, Abbrev):
                names.add(wff.name)
                for arg in wff.args:
                    collect(arg)

        for formula in propositional_formulas(200):
            collect(formula)
        assert names >= {
            AbbrevName.NOT,
            AbbrevName.AND,
            AbbrevName.OR,
            AbbrevName.IMPLIES,
            AbbrevName.EQUALS,
            AbbrevName.NOT_EQUALS,
        }

    def test_only_three_atoms(self):
        atoms = set()
        for formula in propositional_formulas(300):
            atoms |= free_vars(expand(formula))
        assert {str(v) for v in atoms} <= {"x_o", "y_o", "z_o"}
