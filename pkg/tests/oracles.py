"""Brute-force reference computations, independent of the package internals.

Elements are image tuples, composed with the same right-action convention
(p * q sends i to q[p[i]]). Subgroups are Python int bitmasks over the
element list of a ``BruteGroup``.
"""
from __future__ import annotations

from collections import deque
from itertools import permutations


def compose(p, q):
    return tuple(q[i] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def closure(gens, degree):
    """All elements generated by ``gens`` (breadth-first over words)."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    gens = [tuple(g) for g in gens]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def fixed_count(p):
    return sum(1 for i, v in enumerate(p) if i == v)


def element_order(p):
    ident = tuple(range(len(p)))
    x, n = p, 1
    while x != ident:
        x = compose(x, p)
        n += 1
    return n


def all_permutations(n):
    return [tuple(p) for p in permutations(range(n))]


def orbit_partition(gens, degree):
    seen, parts = set(), []
    for s in range(degree):
        if s in seen:
            continue
        orb, stack = {s}, [s]
        while stack:
            a = stack.pop()
            for g in gens:
                b = g[a]
                if b not in orb:
                    orb.add(b)
                    stack.append(b)
        seen |= orb
        parts.append(sorted(orb))
    return parts


class BruteGroup:
    """Finite group given by its element list and a full multiplication table."""

    def __init__(self, gens, degree):
        self.degree = degree
        self.elements = sorted(closure(gens, degree))
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.n = n
        self.mul = [[self.index[compose(a, b)] for b in self.elements] for a in self.elements]
        self.inv = [self.index[inverse(a)] for a in self.elements]
        self.identity = self.index[tuple(range(degree))]
        self.full = (1 << n) - 1

    # --- masks ---------------------------------------------------------------

    def members(self, mask):
        out, i = [], 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def mask_of(self, idxs):
        m = 0
        for i in idxs:
            m |= 1 << i
        return m

    def mask_of_perms(self, perms):
        return self.mask_of(self.index[tuple(p)] for p in perms)

    def gen_closure(self, gens, start=None):
        """Subgroup generated by element indices ``gens`` together with subgroup ``start``."""
        elems = set(self.members(start)) if start else {self.identity}
        frontier = list(elems)
        gens = list(gens) + (self.members(start) if start else [])
        gens = list(dict.fromkeys(gens))
        while frontier:
            new = []
            for a in frontier:
                row = self.mul[a]
                for g in gens:
                    b = row[g]
                    if b not in elems:
                        elems.add(b)
                        new.append(b)
            frontier = new
        return self.mask_of(elems)

    def conj(self, x, g):
        """g^-1 x g."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def conj_mask(self, mask, g):
        return self.mask_of(self.conj(x, g) for x in self.members(mask))

    # --- structure ---------------------------------------------------------------

    def classes(self):
        seen, out = set(), []
        for x in range(self.n):
            if x in seen:
                continue
            cls = {self.conj(x, g) for g in range(self.n)}
            seen |= cls
            out.append(sorted(cls))
        return out

    def centralizer(self, x):
        return self.mask_of(g for g in range(self.n) if self.mul[g][x] == self.mul[x][g])

    def normalizer(self, mask):
        return self.mask_of(g for g in range(self.n) if self.conj_mask(mask, g) == mask)

    def center(self):
        return self.mask_of(z for z in range(self.n) if all(self.mul[z][g] == self.mul[g][z] for g in range(self.n)))

    def all_subgroups(self):
        """Every subgroup, as joins of cyclic subgroups."""
        cyclic = sorted({self.gen_closure([x]) for x in range(self.n)})
        subs = set(cyclic) | {1 << self.identity}
        frontier = list(subs)
        while frontier:
            new = []
            for H in frontier:
                for C in cyclic:
                    if C & ~H:
                        J = self._join(H, C)
                        if J not in subs:
                            subs.add(J)
                            new.append(J)
            frontier = new
        return subs

    def _join(self, A, B):
        return self.gen_closure(self.members(B), A)

    def subgroup_classes(self):
        """Conjugacy classes of subgroups: list of (representative mask, class size)."""
        subs = self.all_subgroups()
        seen, out = set(), []
        for H in sorted(subs, key=lambda m: (bin(m).count("1"), m)):
            if H in seen:
                continue
            cls = {self.conj_mask(H, g) for g in range(self.n)}
            seen |= cls
            out.append((H, len(cls)))
        return out, len(subs)

    def right_cosets(self, hmask):
        hs = self.members(hmask)
        seen, cosets = set(), []
        for x in range(self.n):
            if x in seen:
                continue
            c = frozenset(self.mul[h][x] for h in hs)
            seen |= c
            cosets.append(c)
        return cosets

    def coset_fixed(self, hmask, x):
        """Right cosets Hy with Hyx = Hy, counted directly."""
        count = 0
        for c in self.right_cosets(hmask):
            y = next(iter(c))
            if self.mul[y][x] in c:
                count += 1
        return count

    def mark(self, hmask, kmask):
        """Right cosets of H fixed by every element of K."""
        ks = self.members(kmask)
        count = 0
        for c in self.right_cosets(hmask):
            y = next(iter(c))
            if all(self.mul[y][k] in c for k in ks):
                count += 1
        return count

    def conjugate_into(self, kmask, hmask):
        return any(self.conj_mask(kmask, g) & ~hmask == 0 for g in range(self.n))

    def commutator_subgroup(self, amask, bmask):
        """[A, B], generated by all commutators a^-1 b^-1 a b."""
        gens = set()
        for a in self.members(amask):
            for b in self.members(bmask):
                gens.add(self.mul[self.mul[self.inv[a]][self.inv[b]]][self.mul[a][b]])
        return self.gen_closure(sorted(gens))

    def nilpotency_class(self):
        """Length of the lower central series, or None if it stalls above 1."""
        cur, c = self.full, 0
        while cur != 1 << self.identity:
            nxt = self.commutator_subgroup(cur, self.full)
            if nxt == cur:
                return None
            cur, c = nxt, c + 1
        return c
