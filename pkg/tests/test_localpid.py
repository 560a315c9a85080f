import pytest

from lenkrull.length_core import reduced_length
from lenkrull.localpid import (
    LocalPIDModule,
    adjusted_torsion_length,
    cb_rank_local_pid,
    length_vector_local_pid,
    lengths_local_pid,
    torsion_length,
    top_torsion_exponent,
)
from lenkrull.ordinal import Ordinal


def ordinal(text):
    return Ordinal.parse(text)


def mod(free, torsion=()):
    return LocalPIDModule.from_mapping(free, dict(torsion))


def _torsion_multisets(max_length):
    """All torsion multiplicity maps with total length <= max_length."""
    out = [{}]

    def parts(remaining, cap, prefix):
        if prefix:
            counts = {}
            for i in prefix:
                counts[i] = counts.get(i, 0) + 1
            out.append(counts)
        for part in range(min(remaining, cap), 0, -1):
            parts(remaining - part, part, prefix + (part,))

    for total in range(1, max_length + 1):
        parts(total, total, ())
    unique = {tuple(sorted(t.items())): t for t in out}
    return list(unique.values())


class TestTorsionLength:
    def test_examples(self):
        assert torsion_length({1: 2}) == 2
        assert torsion_length({2: 1, 1: 1}) == 3
        assert torsion_length({}) == 0


class TestAdjustedTorsionLength:
    def test_examples(self):
        assert adjusted_torsion_length({}) == 0
        assert adjusted_torsion_length({1: 2}) == 1
        assert adjusted_torsion_length({2: 1, 1: 1}) == 1

    def test_top_exponent(self):
        assert top_torsion_exponent({}) == 0
        assert top_torsion_exponent({3: 1, 1: 5}) == 3


class TestCBRank:
    def test_two_simple_summands(self):
        assert cb_rank_local_pid(mod(0, {1: 2})) == ordinal("1")

    def test_free_ranks(self):
        assert cb_rank_local_pid(mod(1)) == ordinal("1")
        assert cb_rank_local_pid(mod(2)) == ordinal("w")
        assert cb_rank_local_pid(mod(3)) == ordinal("w + 1")

    def test_odd_rank_with_torsion(self):
        assert cb_rank_local_pid(mod(1, {2: 1})) == ordinal("3")

    def test_parity_table(self):
        for n in range(5):
            assert cb_rank_local_pid(mod(2 * n)) == Ordinal.from_length_vector({1: n})
            assert cb_rank_local_pid(mod(2 * n + 1)) == Ordinal.from_length_vector(
                {1: n, 0: 1}
            )


class TestLengths:
    def test_examples(self):
        assert lengths_local_pid(mod(2)) == (ordinal("w*2"), Ordinal.zero())
        assert lengths_local_pid(mod(0, {1: 2})) == (ordinal("2"), ordinal("2"))
        assert lengths_local_pid(mod(0)) == (Ordinal.zero(), Ordinal.zero())

    def test_closed_form_reduced_length_differs_from_shifted_vector(self):
        # the two documented readings: closed form gives the torsion length,
        # the coheight shift of the actual length vector gives the free rank
        m = mod(0, {1: 2})
        _, closed_form = lengths_local_pid(m)
        assert closed_form == ordinal("2")
        assert reduced_length(length_vector_local_pid(m)) == Ordinal.zero()

    def test_shifted_vector_reduced_length_is_free_rank(self):
        for free in range(4):
            m = mod(free, {2: 1})
            assert reduced_length(length_vector_local_pid(m)) == Ordinal.from_int(free)


class TestSandwich:
    def test_bounds_for_small_ranks_and_torsions(self):
        torsions = _torsion_multisets(6)
        for free in range(6):
            for torsion in torsions:
                m = mod(free, torsion)
                cb = cb_rank_local_pid(m)
                ell, reduced_closed = lengths_local_pid(m)
                lower = min(reduced_closed, cb)
                assert lower <= cb <= ell
                if ell.is_successor:
                    assert cb <= ell.saturating_pred()

    def test_monotonicity_in_rank_fails_and_is_not_asserted(self):
        # adding one free summand can jump past the next value: the table is
        # the contract, not monotonicity
        t = {3: 1}
        assert cb_rank_local_pid(mod(0, t)) == ordinal("2")
        assert cb_rank_local_pid(mod(1, t)) == ordinal("4")


class TestValidation:
    def test_rejects_bad_torsion(self):
        with pytest.raises(ValueError):
            LocalPIDModule(0, ((0, 1),))
        with pytest.raises(ValueError):
            LocalPIDModule(-1)

    def test_mapping_drops_zero_counts(self):
        assert mod(0, {1: 0, 2: 1}).torsion == ((2, 1),)
