"""Enumerated element tables for desk-scale groups.

Every element of the group is stored once as a row of images. An element is
identified by its images of the base points, packed into one integer key, so
products, inverses and conjugates of whole batches of elements reduce to numpy
fancy indexing followed by a ``searchsorted`` lookup. Subgroups are boolean
masks over the table.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import MembershipError, ResourceError
from .permutation import Permutation


class ElementTable:
    def __init__(self, group):
        self.group = group
        self.degree = group.degree
        chain = group.chain
        self.base = np.array(chain.base if chain.base else [0], dtype=np.int64)
        radix = max(self.degree, 2)
        if radix ** len(self.base) >= 2 ** 62:
            raise ResourceError("base too long to pack element keys")
        self._weights = radix ** np.arange(len(self.base), dtype=np.int64)
        perms = self._enumerate(chain)
        keys = self._keys(perms[:, self.base])
        order = np.argsort(keys, kind="stable")
        self.perms = perms[order]
        self.keys = keys[order]
        if np.any(self.keys[1:] == self.keys[:-1]):  # pragma: no cover
            raise AssertionError("duplicate element keys; base is not a base")
        self.size = len(self.keys)
        self.identity = int(self.index_of_rows(np.arange(self.degree)[None, :])[0])

    def _enumerate(self, chain) -> np.ndarray:
        dtype = np.int16 if self.degree < 2 ** 15 else np.int32
        elems = np.arange(self.degree, dtype=dtype)[None, :]
        for i in reversed(range(len(chain.base))):
            reps = np.array([chain.coset_rep(i, pt).images for pt in chain.levels[i].orbit], dtype=dtype)
            # every element is v * u with v in the deeper stabilizer and u a level-i rep
            elems = reps[:, elems].transpose(1, 0, 2).reshape(-1, self.degree)
        return np.ascontiguousarray(elems)

    def _keys(self, base_images: np.ndarray) -> np.ndarray:
        return base_images.astype(np.int64) @ self._weights

    # --- lookup -----------------------------------------------------------

    def lookup_base_images(self, base_images: np.ndarray) -> np.ndarray:
        keys = self._keys(base_images)
        idx = np.searchsorted(self.keys, keys)
        idx = np.minimum(idx, self.size - 1)
        if np.any(self.keys[idx] != keys):
            raise MembershipError("element not in group")
        return idx

    def index_of_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows)
        idx = self.lookup_base_images(rows[:, self.base])
        if not np.array_equal(self.perms[idx], rows):
            raise MembershipError("element not in group")
        return idx

    def index_of(self, perms: Iterable[Permutation]) -> np.ndarray:
        rows = np.array([p.images for p in perms], dtype=np.int64).reshape(-1, self.degree)
        if len(rows) == 0:
            return np.zeros(0, dtype=np.int64)
        return self.index_of_rows(rows)

    def index(self, p: Permutation) -> int:
        return int(self.index_of([p])[0])

    def perm(self, i: int) -> Permutation:
        return Permutation(self.perms[int(i)].tolist(), check=False)

    # --- arithmetic on index arrays ---------------------------------------

    @cached_property
    def inv_perms(self) -> np.ndarray:
        inv = np.empty_like(self.perms)
        rows = np.arange(self.size)[:, None]
        inv[rows, self.perms] = np.arange(self.degree, dtype=self.perms.dtype)[None, :]
        return inv

    @cached_property
    def inverse(self) -> np.ndarray:
        return self.lookup_base_images(self.inv_perms[:, self.base])

    def mul(self, a, b) -> np.ndarray:
        """Indices of ``e_a * e_b`` (elementwise over broadcast index arrays)."""
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        a = a.ravel()
        b = b.ravel()
        return self.lookup_base_images(self.perms[b[:, None], self.perms[a][:, self.base]])

    def right_mult(self, j: int) -> np.ndarray:
        """Array R with R[i] = index of e_i * e_j."""
        return self.lookup_base_images(self.perms[j][self.perms[:, self.base]])

    def left_mult(self, j: int) -> np.ndarray:
        """Array L with L[i] = index of e_j * e_i."""
        return self.lookup_base_images(self.perms[:, self.perms[j][self.base]])

    def conj_by(self, g: int) -> np.ndarray:
        """Array C with C[i] = index of g^-1 e_i g."""
        gperm = self.perms[g]
        ginv = self.inv_perms[g]
        return self.lookup_base_images(gperm[self.perms[:, ginv[self.base]]])

    def conjugates_of(self, x: int) -> np.ndarray:
        """Array D with D[t] = index of t^-1 e_x t, for every element t."""
        xperm = self.perms[x]
        rows = np.arange(self.size)[:, None]
        return self.lookup_base_images(self.perms[rows, xperm[self.inv_perms[:, self.base]]])

    def conj_elements(self, xs, g: int) -> np.ndarray:
        """Indices of g^-1 e_x g for each x in ``xs``."""
        xs = np.asarray(xs, dtype=np.int64)
        gperm = self.perms[g]
        ginv = self.inv_perms[g]
        return self.lookup_base_images(gperm[self.perms[xs][:, ginv[self.base]]])

    def power(self, xs, e: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        result = np.full(xs.shape, self.identity, dtype=np.int64)
        base = xs.copy()
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.size, dtype=np.int64)
        allidx = np.arange(self.size)
        cur = allidx.copy()
        k = 1
        todo = np.ones(self.size, dtype=bool)
        while todo.any():
            hit = todo & (cur == self.identity)
            orders[hit] = k
            todo &= ~hit
            if not todo.any():
                break
            live = np.nonzero(todo)[0]
            cur[live] = self.mul(cur[live], live)
            k += 1
        return orders

    # --- subgroups as masks -----------------------------------------------

    def closure(self, gens: Sequence[int], start=None) -> np.ndarray:
        """Membership mask of the subgroup generated by ``gens`` (and ``start``)."""
        gens = [int(g) for g in np.atleast_1d(np.asarray(gens, dtype=np.int64)) if int(g) != self.identity]
        if start is None:
            mask = np.zeros(self.size, dtype=bool)
            mask[self.identity] = True
            frontier = np.array([self.identity], dtype=np.int64)
        else:
            mask = start.copy()
            frontier = np.nonzero(mask)[0]
        if not gens:
            return mask
        garr = np.array(gens, dtype=np.int64)
        while len(frontier):
            prod = self.mul(frontier[:, None], garr[None, :])
            prod = np.unique(prod)
            new = prod[~mask[prod]]
            mask[new] = True
            frontier = new
        return mask

    def extend(self, mask: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        """Subgroup generated by the subgroup ``mask`` and extra elements."""
        extra = [int(g) for g in gens if not mask[int(g)]]
        if not extra:
            return mask
        base_gens = self.generators_of(mask)
        allgens = np.array(list(base_gens) + extra, dtype=np.int64)
        newmask = mask.copy()
        frontier = np.nonzero(mask)[0]
        while len(frontier):
            prod = np.unique(self.mul(frontier[:, None], allgens[None, :]))
            new = prod[~newmask[prod]]
            newmask[new] = True
            frontier = new
        return newmask

    def generators_of(self, mask: np.ndarray) -> list[int]:
        """A small generating set of the subgroup ``mask``, preferring large element orders."""
        members = np.nonzero(mask)[0]
        if len(members) <= 1:
            return []
        orders = self.element_orders[members]
        cand = members[np.lexsort((members, -orders))]
        gens: list[int] = []
        cur = np.zeros(self.size, dtype=bool)
        cur[self.identity] = True
        total = len(members)
        count = 1
        for x in cand:
            if cur[x]:
                continue
            gens.append(int(x))
            cur = self._extend_raw(cur, gens)
            count = int(cur.sum())
            if count == total:
                break
        return gens

    def _extend_raw(self, mask, gens):
        garr = np.array(gens, dtype=np.int64)
        newmask = mask.copy()
        frontier = np.nonzero(mask)[0]
        while len(frontier):
            prod = np.unique(self.mul(frontier[:, None], garr[None, :]))
            new = prod[~newmask[prod]]
            newmask[new] = True
            frontier = new
        return newmask

    def normal_closure(self, mask_or_gens, within: np.ndarray | None = None) -> np.ndarray:
        """Normal closure of a subgroup (or element set) in ``within`` (default: whole group)."""
        if isinstance(mask_or_gens, np.ndarray) and mask_or_gens.dtype == bool:
            mask = mask_or_gens.copy()
        else:
            mask = self.closure(list(mask_or_gens))
        if within is None:
            conj_gens = self.group_generator_indices
        else:
            conj_gens = self.generators_of(within)
        while True:
            gens = self.generators_of(mask)
            new = []
            for g in conj_gens:
                imgs = self.conj_elements(gens, g) if gens else np.zeros(0, dtype=np.int64)
                new.extend(int(x) for x in imgs if not mask[x])
            if not new:
                return mask
            mask = self.extend(mask, new)

    @cached_property
    def group_generator_indices(self) -> list[int]:
        return [int(i) for i in self.index_of(self.group.generators) if int(i) != self.identity]

    def normalizer_mask(self, mask: np.ndarray, within: np.ndarray | None = None) -> np.ndarray:
        """{g : g^-1 H g = H}, optionally restricted to ``within``."""
        result = np.ones(self.size, dtype=bool) if within is None else within.copy()
        for h in self.generators_of(mask):
            result &= mask[self.conjugates_of(h)]
        return result

    def centralizer_mask(self, xs: Sequence[int], within: np.ndarray | None = None) -> np.ndarray:
        result = np.ones(self.size, dtype=bool) if within is None else within.copy()
        for x in xs:
            result &= self.conjugates_of(int(x)) == int(x)
        return result

    def conjugate_mask(self, mask: np.ndarray, g: int) -> np.ndarray:
        members = np.nonzero(mask)[0]
        out = np.zeros(self.size, dtype=bool)
        out[self.conj_elements(members, g)] = True
        return out

    def orbits_under(self, arrays: Sequence[np.ndarray]) -> np.ndarray:
        """Component labels of the graph i -> a[i] for the given index maps."""
        if not arrays:
            return np.arange(self.size)
        src = np.concatenate([np.arange(self.size)] * len(arrays))
        dst = np.concatenate(arrays)
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(self.size, self.size))
        _, labels = connected_components(graph, directed=True, connection="weak")
        return labels

    # --- conjugacy classes ------------------------------------------------

    @cached_property
    def class_labels(self) -> np.ndarray:
        """Conjugacy class id of every element; ids ordered by smallest member, identity class 0."""
        raw = self.orbits_under([self.conj_by(g) for g in self.group_generator_indices])
        first = np.full(raw.max() + 1, self.size, dtype=np.int64)
        np.minimum.at(first, raw, np.arange(self.size))
        # identity first, then by (element order, class size, smallest member)
        sizes = np.bincount(raw)
        reps = first
        orders = self.element_orders[reps]
        keyorder = np.lexsort((reps, sizes, orders))
        ident_cls = raw[self.identity]
        keyorder = [c for c in keyorder if c == ident_cls] + [c for c in keyorder if c != ident_cls]
        relabel = np.empty_like(keyorder)
        relabel[np.array(keyorder)] = np.arange(len(keyorder))
        return relabel[raw]

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.class_labels)

    @cached_property
    def class_reps(self) -> np.ndarray:
        n = len(self.class_sizes)
        reps = np.full(n, self.size, dtype=np.int64)
        np.minimum.at(reps, self.class_labels, np.arange(self.size))
        return reps

    def class_histogram(self, mask: np.ndarray) -> np.ndarray:
        return np.bincount(self.class_labels[mask], minlength=len(self.class_sizes))

    def coset_labels(self, mask: np.ndarray) -> np.ndarray:
        """Right-coset id of every element for the subgroup ``mask``.

        The coset H containing the identity gets id 0; other cosets are
        numbered by their smallest element index.
        """
        gens = self.generators_of(mask)
        if gens:
            raw = self.orbits_under([self.left_mult(h) for h in gens])
        else:
            raw = np.arange(self.size)
        first = np.full(raw.max() + 1, self.size, dtype=np.int64)
        np.minimum.at(first, raw, np.arange(self.size))
        present = np.unique(raw)
        ident = raw[self.identity]
        ordered = [ident] + [int(c) for c in present[np.argsort(first[present])] if c != ident]
        relabel = np.full(raw.max() + 1, -1, dtype=np.int64)
        relabel[np.array(ordered)] = np.arange(len(ordered))
        return relabel[raw]
