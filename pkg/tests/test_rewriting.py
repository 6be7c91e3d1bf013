"""Schreier rewriting: transversals, subgroup presentations, simplification.

Free-group subgroups pin down the generator count exactly (an index-k
subgroup of a rank-n free group is free of rank (n-1)k+1), and for groups
with relators the two rewriting modes must agree on the subgroup's
abelianization even though they emit different relator lists.
"""

import pytest

from fpcert import (
    EnumerationError,
    abelian_invariants,
    low_index,
    presentation,
    schreier_data,
    simplify,
    subgroup_presentation,
    todd_coxeter,
)

F2 = presentation("a b")
F3 = presentation("x y z")
DINF = presentation("a b", ("a^2", "b^2"))
S3 = presentation("a b", ("a^2", "b^2", "(ab)^3"))


class TestSchreierData:
    def test_transversal_reaches_each_coset(self):
        table = todd_coxeter(S3, (S3.word("a"),))
        data = schreier_data(table)
        assert len(data.transversal) == table.index
        for c, rep in enumerate(data.transversal):
            assert table.trace(0, rep) == c

    def test_generators_stabilize_base_coset(self):
        for rec in low_index(DINF, 4):
            data = schreier_data(rec.table)
            for gen in data.generators:
                assert rec.table.trace(0, gen) == 0

    def test_rewrite_rejects_outside_words(self):
        table = todd_coxeter(DINF, (DINF.word("ab"),))
        data = schreier_data(table)
        with pytest.raises(EnumerationError, match="stabilize"):
            data.rewrite(DINF.word("a"))

    def test_rewrite_of_generators_is_a_letter(self):
        table = todd_coxeter(DINF, (DINF.word("ab"),))
        data = schreier_data(table)
        for i, gen in enumerate(data.generators):
            image = data.rewrite(gen)
            assert image.letters == ((i, 1),)


class TestFreeSubgroups:
    def test_nielsen_schreier_rank(self):
        for q, rank, depth in ((F2, 2, 4), (F3, 3, 4)):
            for rec in low_index(q, depth):
                for mode in ("full", "orbit_reduced"):
                    sub = subgroup_presentation(rec.table, mode=mode)
                    assert sub.ngens == (rank - 1) * rec.index + 1
                    assert sub.relators == ()
                    simple = simplify(sub)
                    assert simple.relators == ()
                    torsion, betti = abelian_invariants(simple)
                    assert torsion == ()
                    assert betti == sub.ngens


class TestSubgroupPresentations:
    def test_index_two_of_s3_is_c3(self):
        table = todd_coxeter(S3, (S3.word("ab"),))
        sub = subgroup_presentation(table, mode="full")
        assert abelian_invariants(simplify(sub)) == ((3,), 0)

    def test_index_three_of_s3_is_c2(self):
        table = todd_coxeter(S3, (S3.word("a"),))
        for mode in ("full", "orbit_reduced"):
            sub = subgroup_presentation(table, mode=mode)
            assert abelian_invariants(simplify(sub)) == ((2,), 0)

    def test_translation_subgroup_of_dihedral(self):
        table = todd_coxeter(DINF, (DINF.word("ab"),))
        sub = subgroup_presentation(table, mode="orbit_reduced")
        assert abelian_invariants(simplify(sub)) == ((), 1)

    def test_modes_agree_on_abelianization(self):
        for q in (DINF, S3):
            for rec in low_index(q, 4):
                full = subgroup_presentation(rec.table, mode="full")
                orbit = subgroup_presentation(rec.table, mode="orbit_reduced")
                assert full.ngens == orbit.ngens
                assert len(orbit.relators) <= len(full.relators)
                assert len(full.relators) == len(q.relators) * rec.index
                assert abelian_invariants(full) == abelian_invariants(orbit)

    def test_mode_validation(self):
        table = todd_coxeter(S3, ())
        with pytest.raises(ValueError, match="mode"):
            subgroup_presentation(table, mode="fast")


class TestSimplify:
    def test_drops_duplicate_relators(self):
        q = presentation("a b", ("a^2", "a^2", "b^2", "a^-2"))
        assert len(simplify(q).relators) == 2

    def test_eliminates_single_use_generator(self):
        q = presentation("a b", ("a b^3",))
        simple = simplify(q)
        assert simple.ngens == 1
        assert simple.relators == ()

    def test_elimination_cascades(self):
        q = presentation("a b", ("a b^3", "b^5"))
        simple = simplify(q)
        assert simple.ngens == 1
        assert len(simple.relators) == 1
        assert abelian_invariants(simple) == ((5,), 0)

    def test_preserves_abelianization(self):
        q = presentation("a b c", ("a^2 b", "c^4", "c^4", "b^6"))
        assert abelian_invariants(simplify(q)) == abelian_invariants(q)

    def test_fixed_point(self):
        simple = simplify(DINF)
        assert simple == DINF
