"""Presentation container, text format, and the deficiency quantities."""

from fractions import Fraction

import pytest

from fpcert import (
    Presentation,
    PresentationError,
    deficiency,
    format_fraction,
    format_presentation,
    load_presentation,
    p_deficiency,
    parse_presentation,
    presentation,
    residual_deficiency,
)

DINF = presentation("a b", ("a^2", "b^2"))


class TestContainer:
    def test_builder(self):
        q = presentation("a b", ("abab^-1",))
        assert q.ngens == 2
        assert len(q.relators) == 1
        assert q.relators[0] * q.word("b a^-1") == q.word("ab")

    def test_rejects_empty_relator(self):
        with pytest.raises(PresentationError):
            presentation("a", ("a a^-1",))

    def test_rejects_foreign_word(self):
        other = presentation("x")
        with pytest.raises(PresentationError):
            Presentation(DINF.alphabet, (other.word("x"),))


class TestTextFormat:
    def test_roundtrip_with_comments(self):
        text = "# infinite dihedral\ngens: a b\nrel: a^2\nrel: b^2\n"
        q = parse_presentation(text)
        assert q == DINF
        assert q.comments == ("infinite dihedral",)
        assert format_presentation(q) == text

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "q.pres"
        path.write_text(format_presentation(DINF))
        assert load_presentation(path) == DINF

    def test_error_lines(self):
        cases = [
            ("gens: a\ngens: b\n", "line 2"),
            ("rel: a\n", "line 1"),
            ("gens: a\nrel: b\n", "line 2"),
            ("gens: a\nrel: a a^-1\n", "line 2"),
            ("gens: a\nwat\n", "line 2"),
            ("gens: a a\n", "line 1"),
        ]
        for text, where in cases:
            with pytest.raises(PresentationError, match=where):
                parse_presentation(text)
        with pytest.raises(PresentationError, match="missing gens"):
            parse_presentation("# nothing here\n")

    def test_comments_do_not_affect_equality(self):
        q = parse_presentation("# one\ngens: a b\nrel: a^2\nrel: b^2\n")
        assert q == DINF


class TestDeficiencies:
    def test_classical(self):
        assert deficiency(presentation("a b")) == 2
        assert deficiency(DINF) == 0
        assert deficiency(presentation("a b", ("a^2", "b^2", "abab"))) == -1

    def test_p_deficiency_free(self):
        free = presentation("x")
        for p in (2, 3, 5):
            assert p_deficiency(free, p) == 1

    def test_p_deficiency_dihedral(self):
        assert p_deficiency(DINF, 2) == 1
        assert p_deficiency(DINF, 3) == 0

    def test_p_deficiency_mixed_power(self):
        # (ab)^12 has 2-valuation 2 and 3-valuation 1
        q = presentation("a b", ("(ab)^12",))
        assert p_deficiency(q, 2) == 2 - Fraction(1, 4)
        assert p_deficiency(q, 3) == 2 - Fraction(1, 3)
        assert p_deficiency(q, 5) == 1

    def test_residual(self):
        assert residual_deficiency(DINF, (2, 2)) == 1
        assert residual_deficiency(DINF, (2, None)) == Fraction(3, 2)
        assert residual_deficiency(DINF, (None, None)) == 2

    def test_residual_validation(self):
        with pytest.raises(PresentationError):
            residual_deficiency(DINF, (2,))
        with pytest.raises(PresentationError):
            residual_deficiency(DINF, (2, 0))

    def test_format_fraction(self):
        assert format_fraction(Fraction(0)) == "0/1"
        assert format_fraction(Fraction(1)) == "1/1"
        assert format_fraction(Fraction(-1)) == "-1/1"
        assert format_fraction(Fraction(10, 6)) == "5/3"
