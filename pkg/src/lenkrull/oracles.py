"""Brute-force verifiers: subgroup lattices, recursive lengths, random exact sequences.

These deliberately recompute, by exhaustive enumeration or random sampling,
quantities the main engines obtain in closed form, and never share code paths
with them:

* finite abelian groups are materialized element by element and their full
  subgroup lattice is built by closing under cyclic extensions, giving an
  independent check that the composition length satisfies the recursion
  "length = 1 + max over proper quotients";
* random integer presentations with random submodules exercise rank
  additivity (always) and torsion additivity (finite kernels), as well as
  invariance of the free rank under quotients by finite submodules;
* random monomial ideals cross-check the standard-pair counts against the
  saturation oracle at every face.

Sampling is driven by an explicit seed, so every report is reproducible.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import SizeBoundError
from .monomial import (
    MonomialIdeal,
    local_multiplicity_oracle,
    minimalize,
    standard_pairs,
)
from .zmodule import (
    ZNormalForm,
    ZPresentation,
    count_prime_factors,
    factorize,
    quotient_z,
    smith_normal_form,
    submodule_normal_form,
    torsion_lattice_basis,
)

MAX_GROUP_ORDER = 10_000
_ADD_TABLE_LIMIT = 1_000  # build a full addition table only below this order


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Canonical primary decomposition: a sorted tuple of prime powers >= 2."""

    prime_power_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if list(self.prime_power_factors) != sorted(self.prime_power_factors):
            raise ValueError("prime power factors must be sorted")
        for q in self.prime_power_factors:
            if len(factorize(q)) != 1:
                raise ValueError(f"{q} is not a prime power")

    @classmethod
    def from_invariant_factors(cls, factors: Sequence[int]) -> "FiniteAbelianGroup":
        pieces = []
        for d in factors:
            for p, e in factorize(d).items():
                pieces.append(p**e)
        return cls(tuple(sorted(pieces)))

    @property
    def order(self) -> int:
        n = 1
        for q in self.prime_power_factors:
            n *= q
        return n

    def composition_length(self) -> int:
        return sum(count_prime_factors(q) for q in self.prime_power_factors)


@dataclass(frozen=True)
class SubgroupInfo:
    order: int
    generators: tuple[tuple[int, ...], ...]
    quotient_factors: tuple[int, ...]


def _element_ops(orders: Sequence[int]):
    size = 1
    strides = []
    for q in orders:
        strides.append(size)
        size *= q

    def decode(code: int) -> tuple[int, ...]:
        return tuple((code // s) % q for q, s in zip(orders, strides))

    def encode(vec: Sequence[int]) -> int:
        return sum((x % q) * s for x, q, s in zip(vec, orders, strides))

    return size, encode, decode


def enumerate_subgroups(group: FiniteAbelianGroup) -> tuple[SubgroupInfo, ...]:
    """Every subgroup, found by BFS over cyclic extensions of the trivial one.

    Each entry carries a generating set and the invariant-factor chain of the
    corresponding quotient.  Discovery order is deterministic.
    """
    orders = group.prime_power_factors
    size, encode, decode = _element_ops(orders)
    if size > MAX_GROUP_ORDER:
        raise SizeBoundError(f"group order {size} exceeds the bound {MAX_GROUP_ORDER}")
    s = len(orders)

    if size <= _ADD_TABLE_LIMIT:
        vecs = [decode(c) for c in range(size)]
        table = [
            [
                encode(tuple((x + y) % q for x, y, q in zip(vecs[a], vecs[b], orders)))
                for b in range(size)
            ]
            for a in range(size)
        ]

        def add(a: int, b: int) -> int:
            return table[a][b]

    else:

        def add(a: int, b: int) -> int:
            return encode(tuple(x + y for x, y in zip(decode(a), decode(b))))

    def closure(members: frozenset[int], e: int) -> frozenset[int]:
        multiples = []
        x = e
        while x not in members:
            multiples.append(x)
            x = add(x, e)
        grown = set(members)
        for m in multiples:
            grown.update(add(h, m) for h in members)
        return frozenset(grown)

    trivial = frozenset({0})
    found: dict[frozenset[int], tuple[int, ...]] = {trivial: ()}
    queue: deque[frozenset[int]] = deque([trivial])
    discovery = [trivial]
    while queue:
        current = queue.popleft()
        for e in range(1, size):
            if e in current:
                continue
            grown = closure(current, e)
            if grown not in found:
                found[grown] = found[current] + (e,)
                queue.append(grown)
                discovery.append(grown)

    diag_columns = tuple(
        tuple(orders[i] if j == i else 0 for j in range(s)) for i in range(s)
    )
    infos = []
    for members in discovery:
        gen_codes = found[members]
        gen_vecs = tuple(decode(g) for g in gen_codes)
        quotient = smith_normal_form(
            ZPresentation(s, diag_columns + gen_vecs)
        )
        infos.append(
            SubgroupInfo(
                order=len(members),
                generators=gen_vecs,
                quotient_factors=quotient.invariant_factors,
            )
        )
    return tuple(infos)


_length_cache: dict[tuple[int, ...], int] = {}


def recursive_length(group: FiniteAbelianGroup) -> int:
    """Length defined by recursion on proper quotients: 0 for the trivial group,
    otherwise 1 + the maximum over quotients by nonzero subgroups."""
    key = group.prime_power_factors
    if not key:
        return 0
    if key in _length_cache:
        return _length_cache[key]
    best = 0
    for sub in enumerate_subgroups(group):
        if sub.order == 1:
            continue
        quotient = FiniteAbelianGroup.from_invariant_factors(sub.quotient_factors)
        best = max(best, recursive_length(quotient))
    value = 1 + best
    _length_cache[key] = value
    return value


def check_length_recursion(group: FiniteAbelianGroup) -> bool:
    """Recursive length == composition length == coheight-0 multiplicity."""
    expected = group.composition_length()
    nf = smith_normal_form(
        ZPresentation(
            len(group.prime_power_factors),
            tuple(
                tuple(q if j == i else 0 for j in range(len(group.prime_power_factors)))
                for i, q in enumerate(group.prime_power_factors)
            ),
        )
    )
    torsion = sum(count_prime_factors(d) for d in nf.invariant_factors)
    return recursive_length(group) == expected == torsion


def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def grow(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, cap), 0, -1):
            grow(remaining - part, part, prefix + (part,))

    grow(n, n, ())
    return out


def abelian_group_types(order: int) -> list[FiniteAbelianGroup]:
    """All isomorphism types of abelian groups of the given order."""
    if order < 1:
        raise ValueError("order must be positive")
    per_prime = []
    for p, a in sorted(factorize(order).items()):
        per_prime.append([[p**part for part in parts] for parts in _partitions(a)])
    types = [FiniteAbelianGroup(())]
    for options in per_prime:
        types = [
            FiniteAbelianGroup(tuple(sorted(t.prime_power_factors + tuple(opt))))
            for t in types
            for opt in options
        ]
    return types


# ---------------------------------------------------------------------------
# randomized suites


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    trials: int
    seed: int | None
    checked: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "checked": self.checked,
            "failures": list(self.failures),
            "ok": self.ok,
        }

    def text_lines(self) -> list[str]:
        head = (
            f"suite {self.suite}: trials={self.trials} seed={self.seed} "
            f"checked={self.checked} failures={len(self.failures)} "
            f"{'ok' if self.ok else 'FAIL'}"
        )
        return [head] + [f"  FAIL {f}" for f in self.failures]


@dataclass(frozen=True)
class AdditivityTrial:
    index: int
    module_nf: ZNormalForm
    submodule_nf: ZNormalForm
    quotient_nf: ZNormalForm
    rank_ok: bool
    kernel_finite: bool
    torsion_ok: bool


def _torsion_count(nf: ZNormalForm) -> int:
    return sum(count_prime_factors(d) for d in nf.invariant_factors)


def _random_presentation(rng: random.Random) -> ZPresentation:
    k = rng.randint(1, 4)
    ncols = rng.randint(0, k + 2)
    return ZPresentation.from_columns(
        k, [[rng.randint(-20, 20) for _ in range(k)] for _ in range(ncols)]
    )


def _random_torsion_vectors(
    rng: random.Random, pres: ZPresentation, count: int
) -> list[tuple[int, ...]]:
    basis = torsion_lattice_basis(pres)
    out = []
    for _ in range(count):
        vec = [0] * pres.generators
        for b in basis:
            c = rng.randint(-3, 3)
            for i, bi in enumerate(b):
                vec[i] += c * bi
        out.append(tuple(vec))
    return out


def iter_additivity_trials(trials: int, seed: int) -> Iterator[AdditivityTrial]:
    rng = random.Random(seed)
    for index in range(trials):
        pres = _random_presentation(rng)
        count = rng.randint(1, 3)
        if rng.random() < 0.4:
            gens = _random_torsion_vectors(rng, pres, count)
        else:
            gens = [
                tuple(rng.randint(-6, 6) for _ in range(pres.generators))
                for _ in range(count)
            ]
        nf_m = smith_normal_form(pres)
        nf_k = submodule_normal_form(pres, gens)
        nf_n = smith_normal_form(quotient_z(pres, gens))
        rank_ok = nf_m.free_rank == nf_n.free_rank + nf_k.free_rank
        kernel_finite = nf_k.free_rank == 0
        torsion_ok = True
        if kernel_finite:
            torsion_ok = _torsion_count(nf_m) == _torsion_count(nf_n) + _torsion_count(
                nf_k
            )
        yield AdditivityTrial(
            index, nf_m, nf_k, nf_n, rank_ok, kernel_finite, torsion_ok
        )


def check_additivity_z(trials: int, seed: int) -> VerifyReport:
    failures = []
    checked = 0
    for trial in iter_additivity_trials(trials, seed):
        checked += 1
        if not trial.rank_ok:
            failures.append(
                f"trial {trial.index}: rank additivity broke: "
                f"{trial.module_nf} vs {trial.quotient_nf} + {trial.submodule_nf}"
            )
        if not trial.torsion_ok:
            failures.append(
                f"trial {trial.index}: torsion additivity broke with finite kernel: "
                f"{trial.module_nf} vs {trial.quotient_nf} + {trial.submodule_nf}"
            )
    return VerifyReport("additivity", trials, seed, checked, tuple(failures))


def iter_finite_kernel_trials(
    trials: int, seed: int
) -> Iterator[tuple[int, ZNormalForm, ZNormalForm, ZNormalForm]]:
    rng = random.Random(seed)
    for index in range(trials):
        free = rng.randint(0, 3)
        torsion = [rng.choice((2, 3, 4, 6, 8, 9)) for _ in range(rng.randint(0, 3))]
        k = free + len(torsion)
        columns = [
            tuple(m if j == free + i else 0 for j in range(k))
            for i, m in enumerate(torsion)
        ]
        pres = ZPresentation(k, tuple(columns))
        count = rng.randint(1, 3)
        gens = [
            tuple(
                0 if j < free else rng.randint(-10, 10) for j in range(k)
            )
            for _ in range(count)
        ]
        nf_m = smith_normal_form(pres)
        nf_k = submodule_normal_form(pres, gens)
        nf_n = smith_normal_form(quotient_z(pres, gens))
        yield index, nf_m, nf_k, nf_n


def check_sigmaprime_artinian_kernel(trials: int, seed: int) -> VerifyReport:
    """Quotients by finite submodules must preserve the free rank."""
    failures = []
    checked = 0
    for index, nf_m, nf_k, nf_n in iter_finite_kernel_trials(trials, seed):
        checked += 1
        if nf_k.free_rank != 0:
            failures.append(f"trial {index}: sampled kernel is not finite: {nf_k}")
        if nf_m.free_rank != nf_n.free_rank:
            failures.append(
                f"trial {index}: free rank changed under a finite kernel: "
                f"{nf_m.free_rank} -> {nf_n.free_rank}"
            )
    return VerifyReport("sigmaprime", trials, seed, checked, tuple(failures))


def sample_monomial_ideal(
    rng: random.Random, max_vars: int = 4, max_gens: int = 8, max_exp: int = 5
) -> MonomialIdeal:
    n = rng.randint(1, max_vars)
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        vec = tuple(rng.randint(0, max_exp) for _ in range(n))
        while not any(vec):
            vec = tuple(rng.randint(0, max_exp) for _ in range(n))
        gens.append(vec)
    return minimalize(n, gens)


def _all_faces(n: int) -> list[frozenset[int]]:
    return [
        frozenset(i for i in range(n) if (mask >> i) & 1) for mask in range(1 << n)
    ]


def check_oracle_equivalence(trials: int, seed: int) -> VerifyReport:
    """Standard-pair count per face == saturation-oracle count, for random ideals."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    for index in range(trials):
        ideal = sample_monomial_ideal(rng)
        checked += 1
        counts: dict[frozenset[int], int] = {}
        for pair in standard_pairs(ideal):
            counts[pair.face] = counts.get(pair.face, 0) + 1
        for face in _all_faces(ideal.n_vars):
            expected = local_multiplicity_oracle(ideal, face)
            if counts.get(face, 0) != expected:
                failures.append(
                    f"trial {index}: ideal {ideal.gens} face {sorted(face)}: "
                    f"pairs {counts.get(face, 0)} != oracle {expected}"
                )
    return VerifyReport("oracle-equivalence", trials, seed, checked, tuple(failures))


def run_length_recursion_suite(
    max_order: int = 100, prime_power_ranges: tuple[tuple[int, int], ...] = ((2, 4), (3, 4))
) -> VerifyReport:
    """Length recursion on every abelian group of order <= max_order and the
    named prime-power families."""
    groups: dict[tuple[int, ...], FiniteAbelianGroup] = {}
    for order in range(1, max_order + 1):
        for group in abelian_group_types(order):
            groups[group.prime_power_factors] = group
    for p, max_exp in prime_power_ranges:
        for a in range(1, max_exp + 1):
            for group in abelian_group_types(p**a):
                groups[group.prime_power_factors] = group
    failures = []
    for key in sorted(groups):
        if not check_length_recursion(groups[key]):
            failures.append(f"length recursion failed for {key}")
    return VerifyReport("caractl", len(groups), None, len(groups), tuple(failures))
