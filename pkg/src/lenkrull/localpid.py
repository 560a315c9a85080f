"""Closed-form invariants over a local principal domain with infinite residue field.

The ring is purely symbolic: everything depends only on the free rank r and
the multiset of torsion exponents (n_i copies of the cyclic piece killed by
the i-th power of the maximal ideal).  Writing L for the finite torsion
length (sum of i * n_i) and k for the largest occurring exponent:

* rank 2n:   CB-rank = w*n + (L - k)    (with L - k read as 0 for no torsion)
* rank 2n+1: CB-rank = w*n + L + 1

and the length is w*r + L.  These ranks are exact even though the
reduced-length theorem does not apply to such rings (the residue field is
infinite, so simple modules are infinite).

Two readings of "reduced length" collide for these modules.  The closed form
returned by ``lengths_local_pid`` is L, the torsion length.  Applying the
coheight-shift definition to the module's actual length vector {1: r, 0: L}
(exposed as ``length_vector_local_pid``) gives r instead; for rank 0 that is
the 0 appearing in the strict sandwich gap example (two copies of a simple
module have shifted reduced length 0 but CB-rank 1).  Both values are
available; the documented discrepancy is left as-is rather than silently
reconciled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .length_core import LengthVector
from .ordinal import Ordinal


@dataclass(frozen=True)
class LocalPIDModule:
    """Free rank plus torsion multiplicities (exponent -> number of summands)."""

    free_rank: int
    torsion: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        prev = None
        for i, n in self.torsion:
            if i < 1 or n < 1:
                raise ValueError("torsion entries must have positive exponent and count")
            if prev is not None and i <= prev:
                raise ValueError("torsion exponents must increase")
            prev = i

    @classmethod
    def from_mapping(cls, free_rank: int, torsion: Mapping[int, int]) -> "LocalPIDModule":
        return cls(free_rank, tuple(sorted((i, n) for i, n in torsion.items() if n)))

    def torsion_dict(self) -> dict[int, int]:
        return dict(self.torsion)


def torsion_length(torsion: Mapping[int, int]) -> int:
    """Finite length of the torsion part: sum of exponent * count."""
    return sum(i * n for i, n in torsion.items() if n)


def top_torsion_exponent(torsion: Mapping[int, int]) -> int:
    """Largest exponent with a summand; 0 for no torsion."""
    live = [i for i, n in torsion.items() if n]
    return max(live) if live else 0


def adjusted_torsion_length(torsion: Mapping[int, int]) -> int:
    """Torsion length minus the top exponent (0 for no torsion)."""
    return torsion_length(torsion) - top_torsion_exponent(torsion)


def cb_rank_local_pid(module: LocalPIDModule) -> Ordinal:
    """Exact Cantor-Bendixson rank; the free rank enters through its parity."""
    torsion = module.torsion_dict()
    half, odd = divmod(module.free_rank, 2)
    if odd:
        finite = torsion_length(torsion) + 1
    else:
        finite = adjusted_torsion_length(torsion)
    return Ordinal.from_length_vector({1: half, 0: finite})


def lengths_local_pid(module: LocalPIDModule) -> tuple[Ordinal, Ordinal]:
    """(length, reduced length) closed forms: (w*rank + L, L)."""
    L = torsion_length(module.torsion_dict())
    return (
        Ordinal.from_length_vector({1: module.free_rank, 0: L}),
        Ordinal.from_int(L),
    )


def length_vector_local_pid(module: LocalPIDModule) -> LengthVector:
    """Coheight bookkeeping of the module: rank at coheight 1, torsion length at 0."""
    return LengthVector.from_counts(
        {1: module.free_rank, 0: torsion_length(module.torsion_dict())}
    )
