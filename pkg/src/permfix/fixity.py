"""Fixity of transitive actions and the fixity-k action search.

The number of fixed points of x on the cosets of H is a class function,

    fix(x) = |C_G(x)| * |x^G ∩ H| / |H|,

so the fixity of G on G/H comes from the class histogram of H alone.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core.action import Action, action_kernel, coset_action, natural_action
from .core.group import PermGroup, Subgroup, build_group
from .core.permutation import Permutation
from .errors import KernelError, PreconditionError
from .structure import (
    TwoGroupShape,
    _mask_in,
    center_mask,
    classify_two_group,
    core_mask,
    normal_subgroup_masks,
    sub,
    sylow_mask,
)
from .subgroups import SubgroupClass, TableOfMarks, subgroup_classes, table_of_marks


@dataclass
class FixityReport:
    k: int
    witness: Permutation | None
    witness_fixed_set: list[int]
    degree: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "degree": self.degree,
            "witness": self.witness.cycle_string() if self.witness is not None else None,
            "witness_fixed_set": list(self.witness_fixed_set),
        }


@dataclass
class FixityActionRecord:
    degree: int
    stabilizer_order: int
    stabilizer_name: str
    marks_row: list[int]
    class_index: int
    stabilizer_class: SubgroupClass | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "stabilizer": self.stabilizer_name,
            "stabilizer_order": self.stabilizer_order,
            "degree": self.degree,
            "class_index": self.class_index,
            "marks_row": list(self.marks_row),
        }


# --- class-function fixed point counts ---------------------------------------


def class_fix_counts(G: PermGroup, hmask: np.ndarray) -> np.ndarray:
    """Fixed points on G/H of each conjugacy class of G (indexed by class label)."""
    T = G.table
    hist = T.class_histogram(hmask).astype(np.int64)
    cent = T.size // T.class_sizes.astype(np.int64)
    num = cent * hist
    h = int(hmask.sum())
    assert np.all(num % h == 0)
    return num // h


def _natural_fix_counts(G: PermGroup) -> np.ndarray:
    T = G.table
    reps = T.perms[T.class_reps]
    return (reps == np.arange(G.degree)).sum(axis=1).astype(np.int64)


def action_fix_counts(A: Action) -> np.ndarray:
    if A.kind == "natural":
        return _natural_fix_counts(A.group)
    return class_fix_counts(A.group, A.stabilizer_mask)


def coset_fixed_points(x: Permutation, H: PermGroup, G: PermGroup | None = None) -> int:
    """Fixed points of x on the right cosets of H in G (G defaults to H's ambient group)."""
    if G is None:
        if not isinstance(H, Subgroup):
            raise TypeError("pass the ambient group for a bare PermGroup")
        G = H.ambient
    G.check_member(x)
    hmask = _mask_in(G, H)
    T = G.table
    return int(class_fix_counts(G, hmask)[T.class_labels[T.index(x)]])


def stabilizer_mask(A: Action) -> np.ndarray:
    """Mask of the stabilizer of point 0."""
    if A.kind == "coset":
        return A.stabilizer_mask
    G = A.group
    return G.table.closure(G.table.index_of(G.stabilizer(0).generators))


def fixity(A: Action) -> FixityReport:
    """Maximum number of fixed points of a nontrivial element; KernelError if A is unfaithful."""
    G = A.group
    T = G.table
    fix = action_fix_counts(A)
    if A.kind == "coset" and np.any(fix[1:] == A.domain_size):
        raise KernelError("action is not faithful", kernel=action_kernel(A))
    if len(fix) == 1:
        return FixityReport(0, None, [], A.domain_size)
    c = 1 + int(np.argmax(fix[1:]))
    x = T.perm(int(T.class_reps[c]))
    return FixityReport(int(fix[c]), x, A.fixed_points(x), A.domain_size)


# --- the fixity-k action search ---------------------------------------------


def _semantic_match(G: PermGroup, cls_: SubgroupClass, k: int) -> bool:
    """Coset action on the class is faithful, has fixity exactly k and degree > k."""
    fix = class_fix_counts(G, cls_.mask)
    degree = cls_.degree
    if degree <= k or len(fix) == 1:
        return False
    nontrivial = fix[1:]
    if np.any(nontrivial == degree):
        return False
    return int(nontrivial.max()) == k


def fixity_k_actions(G: PermGroup, k: int, extended: bool = False, threads: int | None = None
                     ) -> list[FixityActionRecord]:
    """One record per subgroup class whose faithful coset action has fixity exactly k."""
    lattice = subgroup_classes(G, extended=extended, threads=threads)
    tom = table_of_marks(G, extended=extended, threads=threads)
    records = []
    for g, c in enumerate(lattice.classes):
        if _semantic_match(G, c, k):
            records.append(FixityActionRecord(c.degree, c.order, c.name, tom.contained_row(g), g, c))
    return records


def test_tom(tom: TableOfMarks, k: int) -> list[int]:
    """Row indices passing the literal marks filter.

    A row passes when every mark past the trivial column is at most k, k
    occurs in the row, and the degree (trivial column) exceeds k. A mark of
    a nontrivial subgroup is bounded by the marks of its cyclic subgroups,
    so this is the same as asking for a faithful action of fixity exactly k
    with more than k points: a kernel element would mark the full degree.
    """
    hits = []
    for g in range(len(tom)):
        row = tom.row(g)
        if all(v <= k for v in row[1:]) and k in row and row[0] > k:
            hits.append(g)
    return hits


def fixity_k_actions_from_tom(tom: TableOfMarks, k: int) -> list[FixityActionRecord]:
    out = []
    for g in test_tom(tom, k):
        out.append(FixityActionRecord(tom.row(g)[0], tom.orders[g], tom.names[g], tom.contained_row(g), g,
                                      tom.lattice.classes[g] if tom.lattice else None))
    return out


# --- Frobenius actions ---------------------------------------------------------


@dataclass
class FrobeniusResult:
    is_frobenius: bool
    kernel: Subgroup | None = None
    complement: Subgroup | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_frobenius


def frobenius_test(G: PermGroup, xmask: np.ndarray, ymask: np.ndarray, faithful: bool = True) -> FrobeniusResult:
    """Is X acting on the cosets of Y (both masks over G's table) a Frobenius action?

    With ``faithful`` false the induced permutation group is tested, i.e.
    the kernel of the action is factored out first.
    """
    T = G.table
    X = sub(G, xmask)
    XT = X.table
    yidx = XT.index_of_rows(T.perms[ymask])
    ym = np.zeros(XT.size, dtype=bool)
    ym[yidx] = True
    degree = XT.size // len(yidx)
    fix = class_fix_counts(X, ym)
    in_kernel = fix == degree
    if faithful and np.any(in_kernel[1:]):
        return FrobeniusResult(False, reason="action of X on the cosets of Y is not faithful")
    live = ~in_kernel
    if not live.any():
        return FrobeniusResult(False, reason="trivial action")
    if int(fix[live].max()) > 1:
        return FrobeniusResult(False, reason=f"an element fixes {int(fix[live].max())} points")
    if int(fix[live].max()) < 1 or degree < 3:
        return FrobeniusResult(False, reason="action is regular")
    kmask_x = (fix == 0)[XT.class_labels] | in_kernel[XT.class_labels]
    kclosure = XT.closure(XT.generators_of(kmask_x))
    if int(kclosure.sum()) != int(kmask_x.sum()):  # pragma: no cover - Frobenius theorem
        raise AssertionError("fixed-point-free elements do not form a subgroup")
    if faithful and int(kmask_x.sum()) != degree:  # pragma: no cover - Frobenius theorem
        raise AssertionError("Frobenius kernel order differs from the degree")
    kmask = np.zeros(T.size, dtype=bool)
    kmask[T.index_of_rows(XT.perms[kmask_x])] = True
    return FrobeniusResult(True, sub(G, kmask), sub(G, ymask))


def is_frobenius_action(A: Action) -> FrobeniusResult:
    """True when A is transitive, faithful, non-regular and no nontrivial element fixes two points."""
    G = A.group
    if A.kind == "natural" and not G.is_transitive():
        raise ValueError("action is not transitive")
    T = G.table
    full = np.ones(T.size, dtype=bool)
    return frobenius_test(G, full, stabilizer_mask(A))


def frobenius_complement_criterion(G: PermGroup, H: PermGroup) -> tuple[bool, dict | None]:
    """N_G(X) <= H for every 1 != X <= H; returns (result, failing witness)."""
    T = G.table
    hmask = _mask_in(G, H)
    h = int(hmask.sum())
    if h == 1 or h == T.size:
        raise PreconditionError("need 1 < H < G")
    Hg = sub(G, hmask)
    for c in subgroup_classes(Hg, extended=True).classes[1:]:
        xmask = np.zeros(T.size, dtype=bool)
        xmask[T.index_of_rows(Hg.table.perms[c.mask])] = True
        nmask = T.normalizer_mask(xmask)
        if np.any(nmask & ~hmask):
            return False, {"X_order": c.order, "X_name": c.name,
                           "X_generators": [g.cycle_string() for g in c.representative.generators],
                           "normalizer_order": int(nmask.sum())}
    res = frobenius_test(G, np.ones(T.size, dtype=bool), hmask)
    if not res:  # pragma: no cover - the criterion implies a Frobenius action
        raise AssertionError(f"criterion holds but the coset action is not Frobenius: {res.reason}")
    return True, None


# --- Sylow 2-subgroups of fixity-2 actions ----------------------------------------

CASE_TAGS = ("S_alpha_trivial", "dihedral_semidihedral", "unique_2_orbit", "sylow_in_stabilizer")


@dataclass
class Sylow2Classification:
    case_tag: str
    shape: TwoGroupShape
    s_order: int
    s_alpha_order: int
    overlap: list[str] = field(default_factory=list)
    orbit_lengths: list[int] = field(default_factory=list)
    frobenius_witness: dict | None = None

    @property
    def case_number(self) -> int:
        return {"S_alpha_trivial": 1, "dihedral_semidihedral": 2, "unique_2_orbit": 3,
                "sylow_in_stabilizer": 4}[self.case_tag]

    def to_dict(self) -> dict:
        return {
            "case": self.case_number,
            "case_tag": self.case_tag,
            "shape": self.shape.tag,
            "s_order": self.s_order,
            "s_alpha_order": self.s_alpha_order,
            "overlap": list(self.overlap),
            "orbit_lengths": list(self.orbit_lengths),
            "frobenius_witness": self.frobenius_witness,
        }


def _require_fixity(A: Action, k: int) -> FixityReport:
    rep = fixity(A)
    if rep.k != k:
        raise PreconditionError(f"action has fixity {rep.k}, need {k}")
    return rep


def sylow2_pair(A: Action) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(G_alpha, S, S_alpha) masks with S chosen to contain a Sylow 2-subgroup of G_alpha.

    With this choice S_alpha is a Sylow 2-subgroup of G_alpha, so S_alpha = 1
    exactly when G_alpha has odd order and S <= G_alpha exactly when G_alpha
    contains a Sylow 2-subgroup of G.
    """
    T = A.group.table
    ga = stabilizer_mask(A)
    sa = sylow_mask(T, 2, within=ga)
    s = sylow_mask(T, 2, start=sa)
    return ga, s, s & ga


def _orbit_lengths(A: Action, smask: np.ndarray) -> list[int]:
    S = sub(A.group, smask)
    return sorted(len(o) for o in A.orbits_of(S))


def _index2_or_s_frobenius(A: Action, s_order: int) -> dict | None:
    """A normal subgroup of index 2 or |S| acting as a Frobenius group on its orbits."""
    G = A.group
    T = G.table
    ga = stabilizer_mask(A)
    for m in normal_subgroup_masks(T):
        idx = T.size // int(m.sum())
        if idx not in (2, s_order):
            continue
        res = frobenius_test(G, m, m & ga, faithful=False)
        if res:
            return {"normal_subgroup_order": int(m.sum()), "index": idx,
                    "frobenius_kernel_order": res.kernel.order}
    return None


def classify_sylow2(A: Action) -> Sylow2Classification:
    """Assign the case of the 2-structure dichotomy for a fixity-2 action.

    Decision order: S_alpha = 1; S <= G_alpha; dihedral/semidihedral (Klein
    counted here) with |S_alpha| = 2 or |S:S_alpha| = 2; otherwise the
    unique-2-orbit case, whose consequences are verified.
    """
    _require_fixity(A, 2)
    G = A.group
    ga, s, sa = sylow2_pair(A)
    s_order, sa_order = int(s.sum()), int(sa.sum())
    shape = classify_two_group(sub(G, s))
    lengths = _orbit_lengths(A, s)
    overlap = []
    if sa_order == 1:
        tag = "S_alpha_trivial"
    elif sa_order == s_order:
        tag = "sylow_in_stabilizer"
    elif shape.tag in ("dihedral", "semidihedral", "klein") and (sa_order == 2 or s_order == 2 * sa_order):
        tag = "dihedral_semidihedral"
        if shape.tag == "klein" and lengths.count(2) == 1 and all(n in (2, s_order) for n in lengths):
            overlap.append("unique_2_orbit")
    else:
        tag = "unique_2_orbit"
    result = Sylow2Classification(tag, shape, s_order, sa_order, overlap, lengths)
    if tag == "unique_2_orbit":
        if s_order < 4 or lengths.count(2) != 1 or any(n not in (2, s_order) for n in lengths):
            raise PreconditionError(f"no case of the 2-structure dichotomy matches: orbit lengths {lengths}")
        wit = _index2_or_s_frobenius(A, s_order)
        if wit is None:
            raise PreconditionError("unique 2-orbit case without a Frobenius normal subgroup of index 2 or |S|")
        result.frobenius_witness = wit
    return result


def sylow2_orbit_lengths(A: Action) -> tuple[int, list[int]]:
    _require_fixity(A, 2)
    _, s, _ = sylow2_pair(A)
    return int(s.sum()), _orbit_lengths(A, s)


# --- central quotients ---------------------------------------------------------


@dataclass
class QuotientReport:
    action: Action
    degree: int
    transitive: bool
    non_regular: bool
    fixity_before: int
    fixity_after: int
    stabilizer_order_before: int
    stabilizer_order_after: int
    quotient_order: int

    @property
    def ok(self) -> bool:
        return (self.transitive and self.non_regular and self.fixity_after <= self.fixity_before
                and self.stabilizer_order_before == self.stabilizer_order_after)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "quotient_order": self.quotient_order,
            "transitive": self.transitive,
            "non_regular": self.non_regular,
            "fixity_before": self.fixity_before,
            "fixity_after": self.fixity_after,
            "stabilizer_order_before": self.stabilizer_order_before,
            "stabilizer_order_after": self.stabilizer_order_after,
        }


def quotient_by_central(A: Action, Z: PermGroup) -> QuotientReport:
    """Action of G/Z on the Z-orbits, for central Z with |domain| > k |Z|."""
    G = A.group
    T = G.table
    zmask = _mask_in(G, Z)
    cmask = center_mask(T)
    if np.any(zmask & ~cmask):
        raise PreconditionError("Z is not central")
    rep = fixity(A)
    z = int(zmask.sum())
    if A.domain_size <= rep.k * z:
        raise PreconditionError(f"|domain| = {A.domain_size} <= k|Z| = {rep.k * z}")
    stab_before = A.group.order // A.domain_size
    if z == 1:
        return QuotientReport(A, A.domain_size, True, stab_before > 1, rep.k, rep.k, stab_before, stab_before,
                              G.order)
    zgens = [A.image(T.perm(i)) for i in T.generators_of(zmask)]
    blocks = build_group(A.domain_size, zgens).orbits()
    label = np.empty(A.domain_size, dtype=np.int64)
    for j, b in enumerate(blocks):
        label[b] = j
    gens = []
    for g in A.point_images:
        imgs = label[np.asarray(g.images)[[b[0] for b in blocks]]]
        gens.append(Permutation(imgs.tolist()))
    Q = build_group(len(blocks), gens, name=f"{G.name or 'G'}/Z")
    QA = natural_action(Q)
    qrep = fixity(QA)
    stab_after = Q.order // len(blocks)
    return QuotientReport(QA, len(blocks), Q.is_transitive(), stab_after > 1, rep.k, qrep.k, stab_before,
                          stab_after, Q.order)


def is_faithful_coset(G: PermGroup, hmask: np.ndarray) -> bool:
    return int(core_mask(G.table, hmask).sum()) == 1


__all__ = [
    "FixityReport", "FixityActionRecord", "FrobeniusResult", "Sylow2Classification", "QuotientReport",
    "fixity", "coset_fixed_points", "fixity_k_actions", "fixity_k_actions_from_tom", "test_tom",
    "is_frobenius_action", "frobenius_complement_criterion", "frobenius_test", "classify_sylow2",
    "sylow2_orbit_lengths", "quotient_by_central", "class_fix_counts", "coset_action",
]
