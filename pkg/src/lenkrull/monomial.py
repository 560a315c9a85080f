"""Monomial-ideal engine: saturations, standard pairs, local multiplicities.

Monomials are exponent tuples; an ideal is its minimal generating set.  A
face is a set of variable indices, and a standard pair ``(root, face)`` is a
maximal admissible pair: the root has no support on the face, the root is not
in the ideal obtained by deleting the face variables from every generator,
and no pair with a larger face (and the root truncated accordingly) is still
admissible.  Pairs with face F count one unit of local multiplicity each at
the prime generated by the variables outside F, which is what
``local_multiplicity_oracle`` recomputes independently from saturations.

Both routines enumerate only exponents below the componentwise maximum d of
the minimal generators, which is complete: if m_i >= d_i then no generator's
i-th exponent is binding, so m lies in the ideal iff m * x_i does, and a
monomial outside the ideal stays outside after multiplying by any power of
x_i; hence it is outside the saturation by x_i as well.  Consequently every
saturation gap monomial, and the root of every maximal admissible pair, is
inside the box (a root with a_i >= d_i is strictly dominated by the pair with
x_i moved into the face, which the same argument shows to be admissible).

Enumeration order is fixed (faces by decreasing size then numeric bitmask
order, roots lexicographically) so outputs are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import SizeBoundError

Monomial = tuple[int, ...]

# hard cap on how many box monomials a single enumeration may visit
MAX_BOX_POINTS = 2_000_000


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal generators, canonically sorted; () is the zero ideal."""

    n_vars: int
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.n_vars or any(e < 0 for e in g):
                raise ValueError(f"bad exponent vector {g} for {self.n_vars} variables")
        if list(self.gens) != sorted(set(self.gens)):
            raise ValueError("generators must be sorted and duplicate-free")
        for g in self.gens:
            for h in self.gens:
                if g != h and _divides(g, h):
                    raise ValueError(f"generator {h} is dominated by {g}")

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def contains(self, monomial: Monomial) -> bool:
        return any(_divides(g, monomial) for g in self.gens)

    def max_exponents(self) -> tuple[int, ...]:
        if not self.gens:
            return (0,) * self.n_vars
        return tuple(max(g[i] for g in self.gens) for i in range(self.n_vars))


@dataclass(frozen=True)
class StandardPair:
    """One free cell root * k[x_i : i in face] of the standard monomials."""

    root: Monomial
    face: frozenset[int]


def _divides(g: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(g, m))


def minimalize(n_vars: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Drop every generator componentwise dominated by another."""
    unique = {tuple(int(e) for e in g) for g in gens}
    minimal = [g for g in unique if not any(h != g and _divides(h, g) for h in unique)]
    return MonomialIdeal(n_vars, tuple(sorted(minimal)))


def saturate_variable(ideal: MonomialIdeal, i: int) -> MonomialIdeal:
    """Colon by all powers of x_i: zero the i-th exponent of every generator."""
    if not 0 <= i < ideal.n_vars:
        raise ValueError(f"variable index {i} out of range")
    return strip_variables(ideal, (i,))


def strip_variables(ideal: MonomialIdeal, variables: Iterable[int]) -> MonomialIdeal:
    """Colon by all powers of the product of the given variables."""
    kill = set(variables)
    return minimalize(
        ideal.n_vars,
        [tuple(0 if i in kill else e for i, e in enumerate(g)) for g in ideal.gens],
    )


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Pairwise least common multiples, then minimalize."""
    if a.n_vars != b.n_vars:
        raise ValueError("intersection requires a common ambient ring")
    return minimalize(
        a.n_vars,
        [tuple(map(max, g, h)) for g in a.gens for h in b.gens],
    )


def face_saturation(ideal: MonomialIdeal, variables: Iterable[int]) -> MonomialIdeal:
    """Intersection of the single-variable saturations over ``variables``.

    This is the colon by any power of the ideal generated by those variables.
    An empty variable set returns the ideal unchanged.
    """
    out = ideal
    first = True
    for j in variables:
        sat = saturate_variable(ideal, j)
        out = sat if first else intersect(out, sat)
        first = False
    return out


def _gens_array(ideal: MonomialIdeal) -> np.ndarray:
    if ideal.gens:
        return np.array(ideal.gens, dtype=np.int64)
    return np.zeros((0, ideal.n_vars), dtype=np.int64)


def _contains_many(points: np.ndarray, ideal: MonomialIdeal) -> np.ndarray:
    """Membership of each row of ``points`` in ``ideal`` (vectorized divisor test)."""
    gens = _gens_array(ideal)
    if not len(gens):
        return np.zeros(len(points), dtype=bool)
    return (points[:, None, :] >= gens[None, :, :]).all(axis=2).any(axis=1)


def _box_points(ranges: Sequence[range]) -> np.ndarray:
    total = 1
    for r in ranges:
        total *= len(r)
        if total > MAX_BOX_POINTS:
            raise SizeBoundError(
                f"monomial box larger than {MAX_BOX_POINTS} points; "
                "exponents are too large for desk-scale enumeration"
            )
    pts = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    return pts.reshape(total, len(ranges))


def local_multiplicity_oracle(ideal: MonomialIdeal, face: Iterable[int]) -> int:
    """Local multiplicity at the prime spanned by the variables outside ``face``.

    Deleting the face variables localizes them away; the multiplicity is then
    the number of monomials (in the remaining variables) lying in the
    saturation by all remaining variables but not in the ideal itself.  With
    no remaining variables the saturation is by the zero ideal, i.e.
    everything, so the count is 1 exactly for the zero ideal.
    """
    face = frozenset(face)
    if not all(0 <= i < ideal.n_vars for i in face):
        raise ValueError("face contains an out-of-range variable index")
    outside = [j for j in range(ideal.n_vars) if j not in face]
    if not outside:
        return 1 if ideal.is_zero else 0
    stripped = strip_variables(ideal, face)
    if stripped.is_unit:
        return 0
    sat = face_saturation(stripped, outside)
    bounds = stripped.max_exponents()
    ranges = [range(bounds[i]) if i in outside else range(1) for i in range(ideal.n_vars)]
    points = _box_points(ranges)
    if not len(points):
        return 0
    gap = _contains_many(points, sat) & ~_contains_many(points, stripped)
    return int(gap.sum())


def _face_masks(n: int) -> list[int]:
    return sorted(range(1 << n), key=lambda m: (-bin(m).count("1"), m))


def standard_pairs(ideal: MonomialIdeal) -> tuple[StandardPair, ...]:
    """All maximal admissible pairs, canonically ordered.

    A candidate ``(root, F)`` with in-box root is maximal iff for every strict
    superface G the truncated root (G-coordinates zeroed) lies in the ideal
    with the G variables deleted; otherwise that truncation is an admissible
    strictly larger pair.
    """
    n = ideal.n_vars
    if ideal.is_unit:
        return ()
    bounds = ideal.max_exponents()
    strips = {mask: strip_variables(ideal, _mask_vars(mask)) for mask in range(1 << n)}
    pairs: list[StandardPair] = []
    for mask in _face_masks(n):
        face_vars = _mask_vars(mask)
        ranges = [
            range(1) if (mask >> i) & 1 else range(max(bounds[i], 1)) for i in range(n)
        ]
        roots = _box_points(ranges)
        keep = ~_contains_many(roots, strips[mask])
        if not keep.any():
            continue
        for sup in range(1 << n):
            if sup == mask or (sup & mask) != mask:
                continue
            truncated = roots.copy()
            truncated[:, list(_mask_vars(sup))] = 0
            keep &= _contains_many(truncated, strips[sup])
            if not keep.any():
                break
        for row in roots[keep]:
            pairs.append(StandardPair(tuple(int(e) for e in row), frozenset(face_vars)))
    return tuple(pairs)


def _mask_vars(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def face_count_vector(ideal: MonomialIdeal) -> dict[int, int]:
    """Number of standard pairs per face size; zero counts are omitted."""
    counts: dict[int, int] = {}
    for pair in standard_pairs(ideal):
        size = len(pair.face)
        counts[size] = counts.get(size, 0) + 1
    return counts


def format_monomial(monomial: Monomial, names: Sequence[str]) -> str:
    parts = []
    for i, e in enumerate(monomial):
        if e == 1:
            parts.append(names[i])
        elif e > 1:
            parts.append(f"{names[i]}^{e}")
    return "*".join(parts) if parts else "1"


def format_ideal(ideal: MonomialIdeal, names: Sequence[str]) -> str:
    if ideal.is_zero:
        return "0"
    return ", ".join(format_monomial(g, names) for g in ideal.gens)
