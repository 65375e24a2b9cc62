"""Permutation groups with a deterministic stabilizer chain.

The chain is built by the deterministic Schreier-Sims algorithm. Base points
are the smallest point moved by the generator that forces a new level, and
transversals are kept as Schreier vectors (one generator index per orbit
point), so coset representatives are words in the strong generators.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from sympy import primefactors

from ..errors import DomainError, MembershipError, ResourceError, ValidationError
from .permutation import Permutation, PermutationError

DEFAULT_SEED = 1729
MAX_DEGREE = 65536
# element tables hold |G| x degree small ints
ELEMENT_TABLE_BOUND = 400_000

_seed = DEFAULT_SEED


def set_default_seed(seed: int) -> None:
    global _seed
    _seed = int(seed)


def default_seed() -> int:
    return _seed


@dataclass
class ChainLevel:
    base_point: int
    gens: list[int]  # indices into StabChain.strong
    schreier: dict[int, int] = field(default_factory=dict)  # point -> gen index, -1 at base

    @property
    def orbit(self) -> list[int]:
        return list(self.schreier)


class StabChain:
    """Base, strong generators and basic orbits of a permutation group."""

    def __init__(self, degree: int, strong: list[Permutation], base: list[int]):
        self.degree = degree
        self.strong = strong
        self.strong_inv = [~s for s in strong]
        self.base = base
        self.levels: list[ChainLevel] = []
        for i in range(len(base)):
            self.levels.append(self._make_level(i))

    def _make_level(self, i: int) -> ChainLevel:
        prefix = self.base[:i]
        gens = [j for j, s in enumerate(self.strong) if all(s.images[b] == b for b in prefix)]
        lvl = ChainLevel(self.base[i], gens)
        self._fill_orbit(lvl)
        return lvl

    def _fill_orbit(self, lvl: ChainLevel) -> None:
        sv = {lvl.base_point: -1}
        queue = [lvl.base_point]
        for pt in queue:
            for j in lvl.gens:
                img = self.strong[j].images[pt]
                if img not in sv:
                    sv[img] = j
                    queue.append(img)
        lvl.schreier = sv

    def rebuild_from(self, i: int) -> None:
        while len(self.levels) < len(self.base):
            self.levels.append(None)  # type: ignore[arg-type]
        for l in range(i, len(self.base)):
            self.levels[l] = self._make_level(l)

    def add_strong(self, s: Permutation) -> None:
        self.strong.append(s)
        self.strong_inv.append(~s)

    def coset_rep(self, i: int, point: int) -> Permutation:
        """Transversal element mapping the i-th base point to ``point``."""
        lvl = self.levels[i]
        word = []
        while True:
            j = lvl.schreier[point]
            if j < 0:
                break
            word.append(j)
            point = self.strong_inv[j].images[point]
        u = Permutation.identity(self.degree)
        for j in reversed(word):
            u = u * self.strong[j]
        return u

    def strip(self, h: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for i in range(start, len(self.base)):
            beta = h.images[self.base[i]]
            if beta not in self.levels[i].schreier:
                return h, i
            h = h * ~self.coset_rep(i, beta)
        return h, len(self.base)

    @property
    def orbit_lengths(self) -> list[int]:
        return [len(l.schreier) for l in self.levels]

    def order(self) -> int:
        n = 1
        for k in self.orbit_lengths:
            n *= k
        return n


def _first_moved(p: Permutation) -> int:
    for i, j in enumerate(p.images):
        if i != j:
            return i
    raise ValueError("identity has no moved point")


def schreier_sims(degree: int, gens: Sequence[Permutation], base_prefix: Sequence[int] = ()) -> StabChain:
    strong: list[Permutation] = []
    seen = set()
    for g in gens:
        if not g.is_identity() and g not in seen:
            seen.add(g)
            strong.append(g)
    base = list(base_prefix)
    for s in strong:
        if all(s.images[b] == b for b in base):
            base.append(_first_moved(s))
    chain = StabChain(degree, strong, base)
    i = len(base) - 1
    while i >= 0:
        restart = False
        lvl = chain.levels[i]
        for beta in list(lvl.schreier):
            u_beta = chain.coset_rep(i, beta)
            for j in list(lvl.gens):
                s = chain.strong[j]
                img = s.images[beta]
                h = u_beta * s * ~chain.coset_rep(i, img)
                if h.is_identity():
                    continue
                h2, jlev = chain.strip(h, i + 1)
                if jlev < len(chain.base):
                    pass
                elif not h2.is_identity():
                    chain.base.append(_first_moved(h2))
                    jlev = len(chain.base) - 1
                else:
                    continue
                chain.add_strong(h2)
                chain.rebuild_from(i + 1)
                i = jlev
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return chain


def _check_degree(degree: int) -> None:
    if not 1 <= degree <= MAX_DEGREE:
        raise ValidationError(f"degree {degree} outside 1..{MAX_DEGREE}")


class PermGroup:
    """A permutation group given by generators on ``range(degree)``."""

    def __init__(self, degree: int, generators: Iterable, name: str | None = None):
        _check_degree(degree)
        gens = []
        for g in generators:
            try:
                p = g if isinstance(g, Permutation) else Permutation(g)
            except PermutationError as exc:
                raise ValidationError(str(exc)) from None
            if p.degree != degree:
                raise ValidationError(f"generator of degree {p.degree}, expected {degree}")
            gens.append(p)
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self.order}>"

    # --- stabilizer chain -------------------------------------------------

    @cached_property
    def chain(self) -> StabChain:
        return schreier_sims(self.degree, self.generators)

    @property
    def base(self) -> list[int]:
        return list(self.chain.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        return list(self.chain.strong)

    @property
    def basic_orbits(self) -> list[list[int]]:
        return [lvl.orbit for lvl in self.chain.levels]

    @cached_property
    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order

    @cached_property
    def primes(self) -> frozenset[int]:
        return frozenset(primefactors(self.order))

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, x: Permutation) -> bool:
        if x.degree != self.degree:
            return False
        h, lev = self.chain.strip(x)
        return lev == len(self.chain.base) and h.is_identity()

    __contains__ = contains

    def check_member(self, x: Permutation) -> None:
        if not self.contains(x):
            raise MembershipError(f"{x!r} is not an element of {self!r}")

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        g = self.generators
        return all(a * b == b * a for i, a in enumerate(g) for b in g[i + 1:])

    def random_element(self, rng: random.Random | None = None) -> Permutation:
        """Uniform random element: a random coset representative per level."""
        rng = rng or random.Random(default_seed())
        x = Permutation.identity(self.degree)
        for i in reversed(range(len(self.chain.base))):
            pts = self.chain.levels[i].orbit
            x = x * self.chain.coset_rep(i, pts[rng.randrange(len(pts))])
        return x

    # --- orbits and stabilizers ------------------------------------------

    def orbit(self, point: int) -> list[int]:
        self._check_point(point)
        seen = {point}
        queue = [point]
        for pt in queue:
            for g in self.generators:
                img = g.images[pt]
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return sorted(queue)

    def orbits(self) -> list[list[int]]:
        """Orbit partition of the domain, ordered by smallest point."""
        seen: set[int] = set()
        out = []
        for pt in range(self.degree):
            if pt not in seen:
                orb = self.orbit(pt)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_k_transitive(self, k: int) -> bool:
        """Transitivity on ordered k-tuples of distinct points."""
        grp: PermGroup = self
        fixed: list[int] = []
        for _ in range(k):
            remaining = [p for p in range(self.degree) if p not in fixed]
            if not remaining:
                return False
            if sorted(grp.orbit(remaining[0])) != remaining:
                return False
            fixed.append(remaining[0])
            grp = grp.stabilizer(remaining[0])
        return True

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.degree:
            raise DomainError(f"point {point} outside 0..{self.degree - 1}")

    def stabilizer(self, point: int) -> Subgroup:
        """Point stabilizer as a subgroup of ``self``."""
        self._check_point(point)
        chain = schreier_sims(self.degree, self.strong_generators, base_prefix=[point])
        gens = [chain.strong[j] for j in range(len(chain.strong)) if chain.strong[j].images[point] == point]
        return Subgroup(self, gens, check=False)

    # --- element tables ---------------------------------------------------

    @cached_property
    def table(self):
        from .elements import ElementTable

        if self.order > ELEMENT_TABLE_BOUND:
            raise ResourceError(f"|G| = {self.order} exceeds element-table bound {ELEMENT_TABLE_BOUND}")
        return ElementTable(self)

    def elements(self) -> list[Permutation]:
        return [Permutation(r, check=False) for r in self.table.perms.tolist()]

    def subgroup(self, generators: Iterable, check: bool = True) -> Subgroup:
        return Subgroup(self, generators, check=check)

    def as_subgroup(self) -> Subgroup:
        return Subgroup(self, self.generators, check=False)

    # --- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        d = {"degree": self.degree, "generators": [list(g.images) for g in self.generators]}
        if self.name is not None:
            d["name"] = self.name
        return d


class Subgroup(PermGroup):
    """A subgroup carrying a reference to its ambient group."""

    def __init__(self, ambient: PermGroup, generators: Iterable, check: bool = True, name: str | None = None,
                 mask=None):
        gens = list(generators)
        super().__init__(ambient.degree, gens or [Permutation.identity(ambient.degree)], name=name)
        self.ambient = ambient
        if check:
            for g in self.generators:
                if not ambient.contains(g):
                    raise MembershipError(f"generator {g!r} not in ambient group")
        self._mask = mask

    @property
    def mask(self):
        """Boolean membership array over the ambient element table."""
        if self._mask is None:
            self._mask = self.ambient.table.closure(self.ambient.table.index_of(self.generators))
        return self._mask

    @classmethod
    def from_mask(cls, ambient: PermGroup, mask, name: str | None = None) -> Subgroup:
        table = ambient.table
        gens = table.generators_of(mask)
        sub = cls(ambient, [table.perm(i) for i in gens], check=False, name=name, mask=mask)
        return sub

    def index(self) -> int:
        return self.ambient.order // self.order


def build_group(degree: int, generators: Iterable, name: str | None = None) -> PermGroup:
    """Validate generators and build a group with a verified stabilizer chain."""
    G = PermGroup(degree, generators, name=name)
    chain = G.chain
    for g in G.generators:
        if not G.contains(g):  # pragma: no cover - chain construction invariant
            raise ValidationError("stabilizer chain failed generator sift")
    assert chain.order() == G.order
    return G
