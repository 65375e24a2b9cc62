"""Conjugacy classes of subgroups and the table of marks.

Enumeration is the cyclic extension method seeded with perfect subgroups:

1. Every perfect subgroup of the groups handled here is 2-generated, so
   closures <x, y> over class representatives x and representatives y of
   the C_G(x)-conjugacy orbits find all perfect subgroups up to conjugacy.
2. Each subgroup H has a chain P = H_0 < H_1 < ... < H_m = H with P its
   perfect residuum, every step normal of prime index. Starting from the
   trivial group and the perfect seeds, repeatedly adjoin to a class
   representative K an element of N_G(K) whose image in N_G(K)/K has prime
   order.

Outside the 2-generation assumption the enumeration may be incomplete; each
result carries that assumption in ``SubgroupLattice.assumptions``.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime

from .core.group import PermGroup, Subgroup
from .errors import ResourceError, ValidationError
from .structure import commutator_mask, quotient_orders, structure_name, sub, trivial_mask

logger = logging.getLogger(__name__)

DEFAULT_ORDER_BOUND = 10_000
TWO_GENERATION_NOTE = "perfect subgroups assumed 2-generated"


@dataclass(eq=False)
class SubgroupClass:
    representative: Subgroup
    class_size: int
    normalizer_order: int
    mask: np.ndarray = field(repr=False)
    histogram: tuple[int, ...] = field(repr=False, default=())

    @property
    def order(self) -> int:
        return self.representative.order

    @property
    def degree(self) -> int:
        """Degree of the transitive action on the cosets of the representative."""
        return self.representative.ambient.order // self.order

    @cached_property
    def name(self) -> str:
        return structure_name(self.representative)


class _Registry:
    """Subgroups up to G-conjugacy, keyed by (order, class histogram)."""

    def __init__(self, T):
        self.T = T
        self.masks: list[np.ndarray] = []
        self.hists: list[np.ndarray] = []
        self.buckets: dict[tuple, list[int]] = {}

    def key(self, mask):
        hist = self.T.class_histogram(mask)
        return (int(mask.sum()), hist.tobytes()), hist

    def find_conjugate(self, mask, bucket) -> int | None:
        T = self.T
        gens = T.generators_of(mask)
        arrays = [T.conjugates_of(g) for g in gens]
        for j in bucket:
            target = self.masks[j]
            ok = np.ones(T.size, dtype=bool)
            for arr in arrays:
                ok &= target[arr]
                if not ok.any():
                    break
            if ok.any():
                return j
        return None

    def register(self, mask) -> tuple[int, bool]:
        key, hist = self.key(mask)
        bucket = self.buckets.setdefault(key, [])
        j = self.find_conjugate(mask, bucket) if bucket else None
        if j is not None:
            return j, False
        self.masks.append(mask)
        self.hists.append(hist)
        bucket.append(len(self.masks) - 1)
        return len(self.masks) - 1, True


def is_perfect_mask(T, mask) -> bool:
    return int(commutator_mask(T, mask, mask).sum()) == int(mask.sum())


def _perfect_candidates(T, x: int, seen: set) -> list[np.ndarray]:
    """Perfect subgroups <x, y> for y over C_G(x)-conjugacy orbit representatives."""
    cmask = T.centralizer_mask([x])
    cgens = T.generators_of(cmask)
    labels = T.orbits_under([T.conj_by(c) for c in cgens])
    first = np.full(labels.max() + 1, T.size, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(T.size))
    xmask = T.closure([x])
    found = []
    for y in np.sort(first):
        y = int(y)
        if xmask[y] or cmask[y]:
            continue
        K = T.closure([x, y])
        n = int(K.sum())
        if n < 60:
            continue
        key = np.packbits(K).tobytes()
        if key in seen:
            continue
        seen.add(key)
        if is_perfect_mask(T, K):
            found.append(K)
    return found


@dataclass
class SubgroupLattice:
    group: PermGroup
    classes: list[SubgroupClass]
    assumptions: list[str]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]


def _enumerate_masks(G: PermGroup, threads: int | None = None) -> list[np.ndarray]:
    T = G.table
    reg = _Registry(T)
    reg.register(trivial_mask(T))

    # perfect seeds
    xs = [int(x) for x in T.class_reps[1:]]
    seen: set = set()
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda x: _perfect_candidates(T, x, set()), xs))
    else:
        results = [_perfect_candidates(T, x, seen) for x in xs]
    for found in results:
        for K in found:
            reg.register(K)
    logger.debug("perfect seeds: %d classes", len(reg.masks))

    # cyclic extension sweep, processing classes in discovery order
    i = 0
    while i < len(reg.masks):
        K = reg.masks[i]
        i += 1
        ksize = int(K.sum())
        if ksize == T.size:
            continue
        N = T.normalizer_mask(K)
        if int(N.sum()) == ksize:
            continue
        qo = quotient_orders(T, K, N)
        primes = {int(v) for v in np.unique(qo[N & ~K]) if isprime(int(v))}
        cand = N & ~K & np.isin(qo, list(primes))
        covered = K.copy()
        ngens = T.generators_of(N)
        for x in np.nonzero(cand)[0]:
            if covered[x]:
                continue
            L = T.extend(K, [int(x)])
            frontier = np.nonzero(L & ~covered)[0]
            covered[frontier] = True
            while len(frontier):
                imgs = np.unique(np.concatenate([T.conj_elements(frontier, g) for g in ngens])) if ngens else frontier[:0]
                frontier = imgs[~covered[imgs]]
                covered[frontier] = True
            reg.register(L)
    return reg.masks


def _canonical_key(T, mask, hist, class_size):
    n = int(mask.sum())
    members = tuple(np.nonzero(mask)[0][:16].tolist())
    return (n, T.size // n, class_size, tuple(hist.tolist()), members)


def subgroup_classes(G: PermGroup, extended: bool = False, threads: int | None = None) -> SubgroupLattice:
    """All conjugacy classes of subgroups of G in canonical order.

    Canonical order: subgroup order, coset-action degree, class size, then
    the class-histogram fingerprint. Raises ResourceError for |G| above
    ``DEFAULT_ORDER_BOUND`` unless ``extended``.
    """
    if G.order > DEFAULT_ORDER_BOUND and not extended:
        raise ResourceError(f"|G| = {G.order} > {DEFAULT_ORDER_BOUND}: subgroup enumeration needs the extended bound")
    cached = getattr(G, "_subgroup_lattice", None)
    if cached is not None:
        return cached
    T = G.table
    masks = _enumerate_masks(G, threads=threads)
    entries = []
    for m in masks:
        norm = int(T.normalizer_mask(m).sum())
        size = T.size // norm
        hist = T.class_histogram(m)
        entries.append((_canonical_key(T, m, hist, size), m, norm, size, hist))
    entries.sort(key=lambda e: e[0])
    classes = [SubgroupClass(sub(G, m), size, norm, m, tuple(hist.tolist())) for _, m, norm, size, hist in entries]
    lattice = SubgroupLattice(G, classes, [TWO_GENERATION_NOTE])
    G._subgroup_lattice = lattice
    return lattice


class TableOfMarks:
    """Marks ``marks[g][i]``: fixed points of class-i representative on G / H_g.

    Built from a group (rows computed lazily and cached) or ingested from
    the JSON interchange format (``from_dict``).
    """

    def __init__(self, orders, class_sizes, names, marks=None, lattice: SubgroupLattice | None = None,
                 group_name: str | None = None):
        self.orders = list(orders)
        self.class_sizes = list(class_sizes)
        self.names = list(names)
        self.lattice = lattice
        self.group_name = group_name
        self._rows: dict[int, list[int]] = {}
        if marks is not None:
            for g, row in enumerate(marks):
                self._rows[g] = [int(v) for v in row]
        self._conj_arrays: dict[int, list[np.ndarray]] = {}

    def __len__(self) -> int:
        return len(self.orders)

    @property
    def group_order(self) -> int:
        return self.orders[-1]

    def _arrays(self, i: int):
        if i not in self._conj_arrays:
            T = self.lattice.group.table
            gens = T.generators_of(self.lattice.classes[i].mask)
            self._conj_arrays[i] = [T.conjugates_of(h) for h in gens]
        return self._conj_arrays[i]

    def mark(self, g: int, i: int) -> int:
        if g in self._rows:
            return self._rows[g][i]
        Hg = self.lattice.classes[g]
        Ki = self.lattice.classes[i]
        if Hg.order % Ki.order:
            return 0
        ok = np.ones(self.lattice.group.table.size, dtype=bool)
        for arr in self._arrays(i):
            ok &= Hg.mask[arr]
        return int(ok.sum()) // Hg.order

    def row(self, g: int) -> list[int]:
        if g not in self._rows:
            self._rows[g] = [self.mark(g, i) for i in range(len(self))]
        return self._rows[g]

    @property
    def marks(self) -> list[list[int]]:
        return [self.row(g) for g in range(len(self))]

    def contained_row(self, g: int) -> list[int]:
        """Row restricted to the classes with a conjugate inside H_g (the nonzero marks)."""
        return [v for v in self.row(g) if v]

    def to_dict(self) -> dict:
        return {
            "group": self.group_name,
            "classes": [{"order": o, "class_size": s, "name": n}
                        for o, s, n in zip(self.orders, self.class_sizes, self.names)],
            "marks": self.marks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> TableOfMarks:
        try:
            classes = d["classes"]
            marks = d["marks"]
            orders = [int(c["order"]) for c in classes]
            sizes = [int(c["class_size"]) for c in classes]
            names = [str(c.get("name", f"H{j}")) for j, c in enumerate(classes)]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed table of marks: {exc}") from None
        n = len(classes)
        if n == 0 or len(marks) != n or any(len(r) != n for r in marks):
            raise ValidationError("marks matrix must be square over the class list")
        if orders[0] != 1:
            raise ValidationError("first class must be the trivial subgroup")
        return cls(orders, sizes, names, marks=marks, group_name=d.get("group"))

    @classmethod
    def from_json(cls, text: str) -> TableOfMarks:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None


def table_of_marks(G: PermGroup, extended: bool = False, threads: int | None = None) -> TableOfMarks:
    lattice = subgroup_classes(G, extended=extended, threads=threads)
    cls_ = lattice.classes
    return TableOfMarks([c.order for c in cls_], [c.class_size for c in cls_], [c.name for c in cls_],
                        lattice=lattice, group_name=G.name)
