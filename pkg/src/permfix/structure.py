"""Structural invariants: classes, centralizers, Sylow subgroups, radicals, 2-group shapes.

Everything here works on the element table of the group passed in, so a
``Subgroup`` argument is analysed as a group in its own right; results are
returned as subgroups of that argument.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

import numpy as np
from sympy import factorint, isprime

from .core.group import PermGroup, Subgroup, default_seed
from .core.permutation import Permutation
from .errors import MembershipError, PreconditionError, ResourceError

MAX_NORMAL_SUBGROUPS = 5000


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    size: int
    element_order: int


@dataclass(frozen=True)
class TwoGroupShape:
    tag: str  # cyclic | klein | dihedral | semidihedral | quaternion | other
    order: int
    involutions: int = 0
    nilpotency_class: int | None = None


@dataclass
class RadicalSet:
    center: Subgroup
    derived: Subgroup
    p_cores: dict[int, Subgroup]
    odd_core: Subgroup
    o2prime_residual: Subgroup


@dataclass
class SeriesReport:
    series: list[Subgroup]
    nilpotency_class: int | str  # "not nilpotent" when the series stalls

    @property
    def is_nilpotent(self) -> bool:
        return isinstance(self.nilpotency_class, int)


# --- mask helpers over an element table ----------------------------------


def sub(G: PermGroup, mask: np.ndarray, name: str | None = None) -> Subgroup:
    return Subgroup.from_mask(G, mask, name=name)


def full_mask(T) -> np.ndarray:
    return np.ones(T.size, dtype=bool)


def trivial_mask(T) -> np.ndarray:
    m = np.zeros(T.size, dtype=bool)
    m[T.identity] = True
    return m


def commutator(T, a, b):
    """Indices of [a, b] = a^-1 b^-1 a b."""
    inv = T.inverse
    return T.mul(T.mul(inv[a], inv[b]), T.mul(a, b))


def commutator_mask(T, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """[A, B] as the normal closure in <A, B> of commutators of generators."""
    ga = T.generators_of(A)
    gb = T.generators_of(B)
    if not ga or not gb:
        return trivial_mask(T)
    aa, bb = np.meshgrid(ga, gb, indexing="ij")
    comms = np.unique(commutator(T, aa.ravel(), bb.ravel()))
    within = T.closure(ga + gb)
    return T.normal_closure(T.closure(comms), within=within)


def center_mask(T, within: np.ndarray | None = None) -> np.ndarray:
    within = full_mask(T) if within is None else within
    return T.centralizer_mask(T.generators_of(within), within=within)


def p_power_orders(T, p: int) -> np.ndarray:
    o = T.element_orders
    ok = o == 1
    q = p
    while q <= o.max():
        ok |= o == q
        q *= p
    return ok


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def sylow_mask(T, p: int, within: np.ndarray | None = None, start: np.ndarray | None = None,
               rng: random.Random | None = None) -> np.ndarray:
    """Ascend from ``start`` (a p-subgroup) by normalizers to a Sylow p-subgroup of ``within``."""
    within = full_mask(T) if within is None else within
    rng = rng or random.Random(default_seed())
    target = p_part(int(within.sum()), p)
    ppow = p_power_orders(T, p) & within
    if start is None:
        P = trivial_mask(T)
        cands = np.nonzero(ppow & (T.element_orders > 1))[0]
        if len(cands) and target > 1:
            P = T.closure([int(cands[rng.randrange(len(cands))])])
    else:
        P = start.copy()
    while int(P.sum()) < target:
        N = T.normalizer_mask(P, within=within)
        cands = np.nonzero(N & ~P & ppow)[0]
        if not len(cands):  # pragma: no cover - contradicts Sylow's theorem
            raise AssertionError("no p-element in normalizer")
        P = T.extend(P, [int(cands[rng.randrange(len(cands))])])
    return P


def core_mask(T, mask: np.ndarray) -> np.ndarray:
    """Largest normal subgroup of the whole table group inside ``mask`` (union of full classes)."""
    hist = T.class_histogram(mask)
    full = hist == T.class_sizes
    return full[T.class_labels]


def is_p_group_order(n: int, p: int) -> bool:
    return p_part(n, p) == n


def lower_central_masks(T, within: np.ndarray | None = None) -> list[np.ndarray]:
    G = full_mask(T) if within is None else within
    series = [G]
    while True:
        nxt = commutator_mask(T, series[-1], G)
        if nxt.sum() == series[-1].sum():
            return series
        series.append(nxt)


def derived_series_masks(T, within: np.ndarray | None = None) -> list[np.ndarray]:
    G = full_mask(T) if within is None else within
    series = [G]
    while True:
        nxt = commutator_mask(T, series[-1], series[-1])
        if nxt.sum() == series[-1].sum():
            return series
        series.append(nxt)


def is_solvable_mask(T, within: np.ndarray | None = None) -> bool:
    return int(derived_series_masks(T, within)[-1].sum()) == 1


def is_nilpotent_mask(T, within: np.ndarray | None = None) -> bool:
    return int(lower_central_masks(T, within)[-1].sum()) == 1


# --- public operations ---------------------------------------------------


def conjugacy_classes(G: PermGroup) -> list[ConjugacyClass]:
    """Conjugacy classes, identity class first; raises ResourceError beyond the table bound."""
    T = G.table
    out = []
    for rep, size in zip(T.class_reps, T.class_sizes):
        out.append(ConjugacyClass(T.perm(rep), int(size), int(T.element_orders[rep])))
    return out


def centralizer(G: PermGroup, x: Permutation) -> Subgroup:
    G.check_member(x)
    T = G.table
    return sub(G, T.centralizer_mask([T.index(x)]))


def _mask_in(G: PermGroup, H: PermGroup) -> np.ndarray:
    if isinstance(H, Subgroup) and H.ambient is G:
        return H.mask
    for g in H.generators:
        if not G.contains(g):
            raise MembershipError("subgroup not contained in group")
    return G.table.closure(G.table.index_of(H.generators))


def normalizer(G: PermGroup, H: PermGroup) -> Subgroup:
    T = G.table
    return sub(G, T.normalizer_mask(_mask_in(G, H)))


def center(G: PermGroup) -> Subgroup:
    return sub(G, center_mask(G.table))


def derived_subgroup(G: PermGroup) -> Subgroup:
    T = G.table
    f = full_mask(T)
    return sub(G, commutator_mask(T, f, f))


def sylow(G: PermGroup, p: int, start: PermGroup | None = None, seed: int | None = None) -> Subgroup:
    """A Sylow p-subgroup, optionally containing the p-subgroup ``start``."""
    if not isprime(p) or G.order % p:
        raise ValueError(f"{p} is not a prime dividing |G| = {G.order}")
    T = G.table
    st = _mask_in(G, start) if start is not None else None
    rng = random.Random(default_seed() if seed is None else seed)
    return sub(G, sylow_mask(T, p, start=st, rng=rng))


def normal_subgroups(G: PermGroup) -> list[Subgroup]:
    """All normal subgroups, sorted by order: class closures closed under joins."""
    return [sub(G, m) for m in normal_subgroup_masks(G.table)]


def normal_subgroup_masks(T) -> list[np.ndarray]:
    seen: dict[bytes, np.ndarray] = {}

    def add(m):
        key = np.packbits(m).tobytes()
        if key not in seen:
            seen[key] = m
            return True
        return False

    add(trivial_mask(T))
    closures = []
    for rep in T.class_reps[1:]:
        m = T.normal_closure([int(rep)])
        if add(m):
            closures.append(m)
    frontier = list(seen.values())
    while frontier:
        new = []
        for a in frontier:
            for b in closures:
                if np.all(b <= a):
                    continue
                j = T.extend(a, T.generators_of(b))
                if add(j):
                    new.append(j)
                    if len(seen) > MAX_NORMAL_SUBGROUPS:
                        raise ResourceError("too many normal subgroups")
        frontier = new
    masks = list(seen.values())
    masks.sort(key=lambda m: (int(m.sum()), tuple(np.nonzero(m)[0][:8])))
    return masks


def odd_core_mask(T) -> np.ndarray:
    """O(G): join of the odd-order normal closures of classes of odd-order elements."""
    result = trivial_mask(T)
    for rep in T.class_reps[1:]:
        if T.element_orders[rep] % 2 == 0 or result[rep]:
            continue
        m = T.normal_closure([int(rep)])
        if int(m.sum()) % 2 == 1:
            result = T.extend(result, T.generators_of(m))
    return result


def radicals(G: PermGroup) -> RadicalSet:
    T = G.table
    f = full_mask(T)
    pcores = {}
    for p in sorted(G.primes):
        pcores[p] = sub(G, core_mask(T, sylow_mask(T, p)))
    if 2 in G.primes:
        o2p = T.normal_closure(sylow_mask(T, 2))
    else:
        o2p = trivial_mask(T)
    return RadicalSet(
        center=sub(G, center_mask(T)),
        derived=sub(G, commutator_mask(T, f, f)),
        p_cores=pcores,
        odd_core=sub(G, odd_core_mask(T)),
        o2prime_residual=sub(G, o2p),
    )


def fitting_subgroup(G: PermGroup) -> Subgroup:
    """F(G), the product of the O_p(G)."""
    T = G.table
    m = trivial_mask(T)
    for p in sorted(G.primes):
        m = T.extend(m, T.generators_of(core_mask(T, sylow_mask(T, p))))
    return sub(G, m)


def is_elementary_abelian(G: PermGroup) -> bool:
    if G.order == 1 or not G.is_abelian():
        return G.order == 1
    f = factorint(G.order)
    if len(f) != 1:
        return False
    (p,) = f
    return int(G.table.element_orders.max()) == p


def subgroups_of_index_at_most_2(G: PermGroup) -> list[Subgroup]:
    """G and its subgroups of index 2, the kernels of the maps G -> C2."""
    T = G.table
    f = full_mask(T)
    squares = np.unique(T.power(np.arange(T.size), 2))
    E = T.extend(commutator_mask(T, f, f), [int(s) for s in squares])
    # basis of G/E over the 2-element field
    basis, span = [], E
    while not span.all():
        x = int(np.argmin(span))
        basis.append(x)
        span = T.extend(span, [x])
    out = [sub(G, f)]
    d = len(basis)
    for c in range(1, 2 ** d):
        bits = [(c >> i) & 1 for i in range(d)]
        i0 = bits.index(1)
        gens = [basis[i] for i in range(d) if not bits[i]]
        gens += [int(T.mul(basis[i0], basis[j])[0]) for j in range(d) if bits[j] and j != i0]
        out.append(sub(G, T.extend(E, gens) if gens else E))
    return out


def nilpotency_class(P: PermGroup) -> SeriesReport:
    T = P.table
    masks = lower_central_masks(T)
    series = [sub(P, m) for m in masks]
    if int(masks[-1].sum()) == 1:
        return SeriesReport(series, len(masks) - 1)
    return SeriesReport(series, "not nilpotent")


def involution_count(G: PermGroup) -> int:
    return int(np.sum(G.table.element_orders == 2))


def classify_two_group(S: PermGroup) -> TwoGroupShape:
    n = S.order
    if n & (n - 1):
        raise ValueError(f"order {n} is not a power of 2")
    T = S.table
    inv = int(np.sum(T.element_orders == 2))
    if n == 1 or int(T.element_orders.max()) == n:
        return TwoGroupShape("cyclic", n, inv, 0 if n == 1 else 1)
    if n == 4:
        return TwoGroupShape("klein", n, inv, 1)
    e = n.bit_length() - 1
    cls = nilpotency_class(S).nilpotency_class
    if cls == e - 1:
        if inv == 1:
            tag = "quaternion"
        elif inv == 2 ** (e - 1) + 1:
            tag = "dihedral"
        elif e >= 4 and inv == 2 ** (e - 2) + 1:
            tag = "semidihedral"
        else:  # pragma: no cover - maximal-class 2-groups are one of the three
            tag = "other"
        return TwoGroupShape(tag, n, inv, cls)
    return TwoGroupShape("other", n, inv, cls if isinstance(cls, int) else None)


def _cyclic_subgroup_reps(T, within: np.ndarray) -> list[int]:
    """One generator per cyclic subgroup of ``within``."""
    members = np.nonzero(within)[0]
    covered = np.zeros(T.size, dtype=bool)
    reps = []
    orders = T.element_orders
    for x in members[np.argsort(-orders[members], kind="stable")]:
        if covered[x]:
            continue
        reps.append(int(x))
        o = int(orders[x])
        cur = x
        for k in range(1, o + 1):
            if gcd(k, o) == 1:
                covered[cur] = True
            cur = int(T.mul(cur, x)[0])
    return reps


def quotient_orders(T, mask: np.ndarray, within: np.ndarray) -> np.ndarray:
    """Order of each element of ``within`` modulo the normal subgroup ``mask`` (0 outside)."""
    idx = int(within.sum()) // int(mask.sum())
    members = np.nonzero(within)[0]
    out = np.zeros(T.size, dtype=np.int64)
    cur = members.copy()
    todo = np.ones(len(members), dtype=bool)
    for k in range(1, idx + 1):
        hit = todo & mask[cur]
        out[members[hit]] = k
        todo &= ~hit
        if not todo.any():
            break
        live = np.nonzero(todo)[0]
        cur[live] = T.mul(cur[live], members[live])
    return out


def is_metacyclic(H: PermGroup) -> tuple[bool, Subgroup | None]:
    """True with witness C when some cyclic normal C has cyclic quotient."""
    if H.order > 50_000:
        raise ResourceError("metacyclic search bound exceeded")
    T = H.table
    f = full_mask(T)
    gens = T.group_generator_indices
    for x in _cyclic_subgroup_reps(T, f):
        C = T.closure([x])
        if any(not C[int(T.conj_elements([x], g)[0])] for g in gens):
            continue
        idx = H.order // int(C.sum())
        if idx == 1 or int(quotient_orders(T, C, f).max()) == idx:
            return True, sub(H, C)
    return False, None


def abelian_invariants(G: PermGroup) -> list[int]:
    """Invariants of G/G' as prime powers, sorted."""
    T = G.table
    f = full_mask(T)
    D = commutator_mask(T, f, f)
    qo = quotient_orders(T, D, f)
    dsize = int(D.sum())
    q = G.order // dsize
    out = []
    for p, e in factorint(q).items():
        # c_i = #{a : a^(p^i) = 1} in the quotient determines the invariants
        counts = []
        i = 0
        while True:
            cnt = int(np.sum((p ** i) % qo[f] == 0)) // dsize if i else 1
            counts.append(cnt)
            if cnt == p_part(q, p):
                break
            i += 1
        logs = [round(np.log(c) / np.log(p)) for c in counts]
        ge = [logs[i] - logs[i - 1] for i in range(1, len(logs))]  # number of invariants >= i
        for i in range(len(ge)):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            out.extend([p ** (i + 1)] * (ge[i] - nxt))
    return sorted(out)


def fingerprint(G: PermGroup) -> tuple:
    """(order, abelian invariants, sorted class sizes) - the structure comparison key."""
    T = G.table
    return (G.order, tuple(abelian_invariants(G)), tuple(sorted(int(s) for s in T.class_sizes)))


def _order_hist(T) -> dict[int, int]:
    vals, counts = np.unique(T.element_orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def _is_dihedral(T, n: int) -> bool:
    if n < 6 or n % 2:
        return False
    orders = T.element_orders
    cyc = np.nonzero(orders == n // 2)[0]
    if not len(cyc):
        return False
    C = T.closure([int(cyc[0])])
    return bool(np.all(orders[~C] == 2))


def structure_name(H: PermGroup) -> str:
    """Readable name for small groups, else ``G<order>#<fingerprint>``."""
    n = H.order
    if n == 1:
        return "1"
    T = H.table
    hist = _order_hist(T)
    if H.is_abelian():
        inv = abelian_invariants(H)
        # merge coprime prime powers into the largest cyclic factors
        by_p: dict[int, list[int]] = {}
        for q in inv:
            by_p.setdefault(factorint(q).popitem()[0], []).append(q)
        cols = []
        while any(by_p.values()):
            c = 1
            for p in by_p:
                if by_p[p]:
                    c *= by_p[p].pop()
            cols.append(c)
        return " x ".join(f"C{c}" for c in sorted(cols))
    two_power = n & (n - 1) == 0
    sizes = sorted(int(s) for s in T.class_sizes)
    if n == 6:
        return "S3"
    if _is_dihedral(T, n):
        return f"D{n}"
    if two_power:
        shape = classify_two_group(H)
        if shape.tag == "quaternion":
            return f"Q{n}"
        if shape.tag == "semidihedral":
            return f"QD{n}"
    if n == 12 and hist.get(6, 0) == 0 and hist.get(2, 0) == 3:
        return "A4"
    if n == 12 and hist.get(2, 0) == 1:
        return "C3 : C4"
    if n == 24 and sizes == [1, 3, 6, 6, 8]:
        return "S4"
    if n == 24 and hist.get(2, 0) == 1 and hist.get(4, 0) == 6:
        return "SL(2,3)"
    f = factorint(n)
    if len(f) == 2 and all(e == 1 for e in f.values()):
        q, p = sorted(f)
        return f"C{p} : C{q}"
    perfect = int(commutator_mask(T, full_mask(T), full_mask(T)).sum()) == n
    if perfect and len(sizes) == 5 and n == 60:
        return "A5"
    if perfect and n == 168 and len(sizes) == 6:
        return "PSL(3,2)"
    if perfect and n == 360 and len(sizes) == 7:
        return "A6"
    if perfect and n == 120 and hist.get(2, 0) == 1:
        return "SL(2,5)"
    if perfect:
        # simple PSL(2,q): order q(q^2-1)/gcd(2,q-1), (q+5)/2 classes for odd q, q+1 for even q
        for q in range(4, round((2 * n) ** (1 / 3)) + 2):
            fq = factorint(q)
            if len(fq) == 1 and q * (q * q - 1) // gcd(2, q - 1) == n \
                    and len(sizes) == ((q + 5) // 2 if q % 2 else q + 1):
                return f"PSL(2,{q})"
    # abelian G' with cyclic G/G' of coprime order: G = G' : C_m
    full = full_mask(T)
    D = commutator_mask(T, full, full)
    d = int(D.sum())
    m = n // d
    if 1 < d and gcd(d, m) == 1 and int(quotient_orders(T, D, full).max()) == m:
        N = sub(H, D)
        if N.is_abelian():
            inner = structure_name(N)
            return f"({inner}) : C{m}" if " x " in inner else f"{inner} : C{m}"
    digest = hashlib.sha1(repr((fingerprint(H), sorted(hist.items()))).encode()).hexdigest()[:8]
    return f"G{n}#{digest}"
