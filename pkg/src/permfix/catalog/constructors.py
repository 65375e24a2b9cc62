"""Permutation realizations of the groups used throughout the package."""
from __future__ import annotations

from itertools import product
from math import gcd

from ..core.group import PermGroup, build_group
from ..core.permutation import Permutation
from .fields import GF, field, prime_power

Matrix = tuple[tuple[int, ...], ...]


def _vec_mat(F: GF, v, M) -> tuple[int, ...]:
    """Row vector times matrix over F."""
    n = len(M[0])
    out = []
    for j in range(n):
        s = 0
        for i, vi in enumerate(v):
            if vi:
                s = F.add(s, F.mul(vi, M[i][j]))
        out.append(s)
    return tuple(out)


def _normalize(F: GF, v) -> tuple[int, ...]:
    """Projective representative: first nonzero coordinate scaled to 1."""
    for c in v:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in v)
    raise ValueError("zero vector")


def projective_points(F: GF, dim: int) -> list[tuple[int, ...]]:
    pts = []
    for v in product(range(F.q), repeat=dim):
        if any(v) and _normalize(F, v) == v:
            pts.append(v)
    return sorted(pts)


def matrices_on_points(F: GF, mats, points, projective: bool) -> list[Permutation]:
    index = {p: i for i, p in enumerate(points)}
    perms = []
    for M in mats:
        imgs = []
        for p in points:
            w = _vec_mat(F, p, M)
            imgs.append(index[_normalize(F, w) if projective else w])
        perms.append(Permutation(imgs))
    return perms


def _sl2_generators(F: GF) -> list[Matrix]:
    w = F.primitive
    one = 1
    neg = F.neg(1)
    return [
        ((one, one), (0, one)),
        ((w, 0), (0, F.inv(w))),
        ((0, one), (neg, 0)),
    ]


def make_psl2(q: int) -> PermGroup:
    """PSL(2, q) on the q + 1 points of the projective line."""
    p, _ = prime_power(q)
    if not 4 <= q <= 64:
        raise ValueError(f"PSL2({q}) unsupported: need 4 <= q <= 64")
    F = field(q)
    pts = projective_points(F, 2)
    G = build_group(q + 1, matrices_on_points(F, _sl2_generators(F), pts, projective=True), name=f"L2({q})")
    expected = q * (q * q - 1) // gcd(2, q - 1)
    assert G.order == expected, (G.order, expected)
    return G


def make_sl2(q: int) -> PermGroup:
    """SL(2, q), q odd, on the q^2 - 1 nonzero vectors."""
    p, _ = prime_power(q)
    if p == 2 or q > 16:
        raise ValueError(f"SL2({q}) unsupported: need odd q <= 16")
    F = field(q)
    vecs = sorted(v for v in product(range(q), repeat=2) if any(v))
    G = build_group(len(vecs), matrices_on_points(F, _sl2_generators(F), vecs, projective=False), name=f"SL2({q})")
    assert G.order == q * (q * q - 1)
    return G


def make_psl3_4() -> PermGroup:
    """PSL(3, 4) on the 21 points of the projective plane of order 4."""
    F = field(4)
    w = F.primitive
    mats = []
    for i, j in [(0, 1), (1, 2), (2, 0), (1, 0)]:
        for a in (1, w):
            M = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
            M[i][j] = a
            mats.append(tuple(map(tuple, M)))
    pts = projective_points(F, 3)
    G = build_group(21, matrices_on_points(F, mats, pts, projective=True), name="L3(4)")
    assert G.order == 20160
    return G


def suzuki_ovoid(F: GF) -> list[tuple[int, ...]]:
    """Tits ovoid in PG(3, q), q = 8: (0,0,0,1) and (1, x, y, xy + x^(s+2) + y^s), s: t -> t^4."""
    s = 4
    pts = [(0, 0, 0, 1)]
    for x in range(F.q):
        for y in range(F.q):
            z = F.add(F.add(F.mul(x, y), F.pow(x, s + 2)), F.pow(y, s))
            pts.append((1, x, y, z))
    return pts


def suzuki_matrices(F: GF) -> list[Matrix]:
    """Generators of Sz(8) in 4 dimensions: unipotent T(a, b), torus, and the antidiagonal swap."""
    s = 4  # t -> t^4 squares to the Frobenius t -> t^2 on GF(8)

    def T(a, b):
        return (
            (1, a, b, F.add(F.add(F.mul(a, b), F.pow(a, s + 2)), F.pow(b, s))),
            (0, 1, F.pow(a, s), F.add(b, F.pow(a, s + 1))),
            (0, 0, 1, a),
            (0, 0, 0, 1),
        )

    w = F.primitive
    mats = [T(1, 0), T(w, 0), T(0, 1)]
    # torus element diag(1, k, k^(s+1), k^(s+2)) acting on (1, x, y, z) -> (1, kx, k^(s+1) y, k^(s+2) z)
    mats.append(((1, 0, 0, 0), (0, w, 0, 0), (0, 0, F.pow(w, s + 1), 0), (0, 0, 0, F.pow(w, s + 2))))
    mats.append(((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)))
    return mats


def make_sz8() -> PermGroup:
    """Sz(8) on the 65 points of the Tits ovoid."""
    F = field(8)
    pts = suzuki_ovoid(F)
    normed = [_normalize(F, p) for p in pts]
    index = {p: i for i, p in enumerate(normed)}
    perms = []
    for M in suzuki_matrices(F):
        imgs = [index[_normalize(F, _vec_mat(F, p, M))] for p in normed]
        perms.append(Permutation(imgs))
    G = build_group(65, perms, name="Sz(8)")
    assert G.order == 29120, G.order
    return G


def make_m11() -> PermGroup:
    """M11 from an 11-cycle and an element of order 4."""
    G = build_group(11, [
        Permutation.from_cycles(11, tuple(range(11))),
        Permutation.from_cycles(11, (2, 6, 10, 7), (3, 9, 4, 5)),
    ], name="M11")
    assert G.order == 7920
    return G


def affine_96_70() -> PermGroup:
    """F4^2 extended by <scalar w> x <transvection>, as affine maps on the 16 vectors of F4^2."""
    F = field(4)
    w = F.primitive
    vecs = sorted(product(range(4), repeat=2))
    index = {v: i for i, v in enumerate(vecs)}

    def lin(M):
        return Permutation([index[_vec_mat(F, v, M)] for v in vecs])

    def trans(t):
        return Permutation([index[(F.add(v[0], t[0]), F.add(v[1], t[1]))] for v in vecs])

    gens = [lin(((w, 0), (0, w))), lin(((1, 1), (0, 1))), trans((1, 0)), trans((0, 1)),
            trans((w, 0)), trans((0, w))]
    G = build_group(16, gens, name="F4^2:C6")
    assert G.order == 96
    return G


def make_g96_70() -> PermGroup:
    """Degree-32 action of the order-96 group on the cosets of its scalar C3."""
    from ..core.action import coset_action

    A = affine_96_70()
    F = field(4)
    vecs = sorted(product(range(4), repeat=2))
    index = {v: i for i, v in enumerate(vecs)}
    w = F.primitive
    scalar = Permutation([index[_vec_mat(F, v, ((w, 0), (0, w)))] for v in vecs])
    act = coset_action(A, A.subgroup([scalar]))
    G = build_group(32, act.generator_images(), name="g96_70")
    assert G.order == 96
    return G


# --- standard families ---------------------------------------------------


def _metacyclic_regular(N: int, r: int, b_square: int) -> PermGroup:
    """Group <a, b> of order N: a^(N/2) = 1, b^-1 a b = a^r, b^2 = a^b_square (regular rep)."""
    h = N // 2

    def code(i, j):
        return 2 * (i % h) + j

    def mul(x, y):
        i, j = divmod(x, 2)[0], x % 2
        k, l = divmod(y, 2)[0], y % 2
        # a^i b^j a^k b^l = a^(i + k r^j) b^(j + l)
        e = i + k * (r if j else 1)
        if j and l:
            return code(e + b_square, 0)
        return code(e, j + l)

    a, b = code(1, 0), code(0, 1)
    gens = [Permutation([mul(x, g) for x in range(N)]) for g in (a, b)]
    return build_group(N, gens)


def make_standard(kind: str, n: int = 0) -> PermGroup:
    """cyclic/dihedral/semidihedral/quaternion take the group order; symmetric/alternating the degree."""
    kind = kind.lower()
    if kind == "cyclic":
        if n < 1:
            raise ValueError("cyclic order must be positive")
        G = build_group(n, [Permutation.from_cycles(n, tuple(range(n)))] if n > 1 else [Permutation.identity(1)])
        G.name = f"C{n}"
        return G
    if kind == "klein":
        G = build_group(4, [Permutation.from_cycles(4, (0, 1), (2, 3)), Permutation.from_cycles(4, (0, 2), (1, 3))])
        G.name = "V4"
        return G
    if kind == "dihedral":
        if n < 4 or n % 2:
            raise ValueError("dihedral order must be even and >= 4")
        m = n // 2
        if m == 2:
            G = make_standard("klein")
        else:
            G = build_group(m, [Permutation.from_cycles(m, tuple(range(m))),
                                Permutation([(-i) % m for i in range(m)])])
        G.name = f"D{n}"
        return G
    if kind in ("semidihedral", "quaternion"):
        if n & (n - 1) or n < (16 if kind == "semidihedral" else 8):
            raise ValueError(f"{kind} order must be a power of 2, at least {16 if kind == 'semidihedral' else 8}")
        h = n // 2
        if kind == "quaternion":
            G = _metacyclic_regular(n, -1, h // 2)
            G.name = f"Q{n}"
        else:
            G = _metacyclic_regular(n, h // 2 - 1, 0)
            G.name = f"SD{n}"
        assert G.order == n
        return G
    if kind in ("symmetric", "alternating"):
        if n < 1:
            raise ValueError("degree must be positive")
        if kind == "symmetric":
            gens = [Permutation.from_cycles(n, tuple(range(n)))] + ([Permutation.from_cycles(n, (0, 1))] if n > 1 else [])
            G = build_group(n, gens, name=f"S{n}")
        else:
            if n < 3:
                G = build_group(max(n, 1), [Permutation.identity(max(n, 1))], name=f"A{n}")
            else:
                gens = [Permutation.from_cycles(n, (i, i + 1, i + 2)) for i in range(n - 2)]
                G = build_group(n, gens, name=f"A{n}")
        return G
    raise ValueError(f"unknown kind {kind!r}")
