"""Auditors: check structural statements about fixity actions on concrete instances.

Every report is a list of (claim, status, witness) entries with status one
of "pass", "fail" or "unverified". A fail always carries a witness.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from sympy import factorint

from .core.action import Action
from .core.group import PermGroup
from .errors import PreconditionError
from .fixity import (
    _require_fixity,
    classify_sylow2,
    fixity,
    frobenius_test,
    quotient_by_central,
    stabilizer_mask,
    sylow2_orbit_lengths,
)
from .structure import (
    _cyclic_subgroup_reps,
    center_mask,
    classify_two_group,
    commutator_mask,
    core_mask,
    is_metacyclic,
    is_nilpotent_mask,
    is_solvable_mask,
    normal_subgroup_masks,
    odd_core_mask,
    p_part,
    sub,
    sylow_mask,
)

PASS, FAIL, UNVERIFIED = "pass", "fail", "unverified"


@dataclass
class Check:
    claim: str
    status: str
    witness: object = None

    def to_dict(self) -> dict:
        return {"claim": self.claim, "status": self.status, "witness": self.witness}


@dataclass
class AuditReport:
    subject: str
    lemma: str
    checks: list[Check] = field(default_factory=list)

    def add(self, claim: str, ok: bool | None, witness=None) -> Check:
        status = UNVERIFIED if ok is None else (PASS if ok else FAIL)
        c = Check(claim, status, witness)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def statuses(self) -> list[str]:
        return [c.status for c in self.checks]

    def to_dict(self) -> dict:
        return {"subject": self.subject, "lemma": self.lemma, "checks": [c.to_dict() for c in self.checks]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def subject_of(A: Action) -> str:
    return f"{A.group.name or 'G'} {A.descriptor}"


def _gens(G: PermGroup, mask: np.ndarray) -> list[str]:
    T = G.table
    return [T.perm(i).cycle_string() for i in T.generators_of(mask)]


def _quotient_shape(G: PermGroup, xmask: np.ndarray, nmask: np.ndarray):
    """X/N as a permutation group on the cosets of N (N normal in X)."""
    if int(nmask.sum()) == 1:
        return sub(G, xmask)
    X = sub(G, xmask)
    XT = X.table
    nm = np.zeros(XT.size, dtype=bool)
    nm[XT.index_of_rows(G.table.perms[nmask])] = True
    from .core.action import coset_action

    return coset_action(X, sub(X, nm)).image_group()


# --- normaliser lemma ------------------------------------------------------------


def audit_normaliser_lemma(A: Action) -> AuditReport:
    """Normalizer/centralizer index bounds, parity, centre order and Sylow containment."""
    G = A.group
    T = G.table
    k = fixity(A).k
    ga = stabilizer_mask(A)
    report = AuditReport(subject_of(A), "normaliser")

    worst_n, bad_n = 0, None
    worst_c, bad_c = 0, None
    for x in _cyclic_subgroup_reps(T, ga):
        if x == T.identity:
            continue
        X = T.closure([x])
        N = T.normalizer_mask(X)
        idx = int(N.sum()) // int((N & ga).sum())
        if idx > worst_n:
            worst_n = idx
        if idx > k and bad_n is None:
            bad_n = {"X": _gens(G, X), "index": idx}
        C = T.centralizer_mask([x])
        cidx = int(C.sum()) // int((C & ga).sum())
        worst_c = max(worst_c, cidx)
        if cidx > k and bad_c is None:
            bad_c = {"x": T.perm(x).cycle_string(), "index": cidx}
    report.add("(i) |N_G(X) : N_{G_a}(X)| <= k for every cyclic 1 != X <= G_a", bad_n is None,
               bad_n or {"max_index": worst_n, "k": k})
    report.add("(ii) |C_G(x) : C_{G_a}(x)| <= k for every x in G_a^#", bad_c is None,
               bad_c or {"max_index": worst_c, "k": k})
    if k == 2:
        report.add("(iii) k = 2 implies |G| even", G.order % 2 == 0, {"order": G.order})
    else:
        report.add("(iii) k = 2 implies |G| even", True, {"k": k, "vacuous": True})
    z = int(center_mask(T).sum())
    report.add("(iv) |Z(G)| divides k", k % z == 0 if k else z == 1, {"center_order": z, "k": k})
    bad_p = []
    checked = []
    gao = int(ga.sum())
    for p in sorted(G.primes):
        if p <= k:
            continue
        part = p_part(gao, p)
        checked.append(p)
        if part not in (1, p_part(G.order, p)):
            bad_p.append({"p": p, "stabilizer_p_part": part, "sylow_order": p_part(G.order, p)})
    report.add("(v) for p > k, G_a is a p'-group or contains a Sylow p-subgroup", not bad_p,
               bad_p or {"primes": checked})
    return report


# --- 2-structure ------------------------------------------------------------------


def audit_sylow2(A: Action) -> AuditReport:
    report = AuditReport(subject_of(A), "sylow2")
    try:
        c = classify_sylow2(A)
    except PreconditionError as exc:
        if "fixity" in str(exc):
            raise
        report.add("some case of the 2-structure dichotomy holds", False, {"error": str(exc)})
        return report
    report.add(f"case ({c.case_number}) {c.case_tag} holds", True, c.to_dict())
    if c.case_tag == "S_alpha_trivial":
        ga = A.group.order // A.domain_size
        report.add("|G_a| is odd", ga % 2 == 1, {"stabilizer_order": ga})
    if c.case_tag == "sylow_in_stabilizer":
        report.add("|domain| is odd", A.domain_size % 2 == 1, {"degree": A.domain_size})
    if c.case_tag == "dihedral_semidihedral":
        idx2 = c.s_order == 2 * c.s_alpha_order
        report.add("S dihedral or semidihedral (Klein counted as dihedral)",
                   c.shape.tag in ("dihedral", "semidihedral", "klein"), {"shape": c.shape.tag})
        report.add("|S_a| = 2 or |S:S_a| = 2", c.s_alpha_order == 2 or idx2,
                   {"s_alpha_order": c.s_alpha_order, "index_two_branch": idx2})
    if c.case_tag == "unique_2_orbit":
        lengths = c.orbit_lengths
        report.add("|S| >= 4, one S-orbit of length 2, all others regular",
                   c.s_order >= 4 and lengths.count(2) == 1 and all(n in (2, c.s_order) for n in lengths),
                   {"orbit_lengths": lengths})
        report.add("normal subgroup of index 2 or |S| acts as a Frobenius group on its orbits",
                   c.frobenius_witness is not None, c.frobenius_witness)
    return report


def audit_orbit_lengths(A: Action) -> AuditReport:
    s, lengths = sylow2_orbit_lengths(A)
    allowed = {1, 2, s // 2, s}
    report = AuditReport(subject_of(A), "orbits")
    bad = sorted(set(lengths) - allowed)
    report.add("every Sylow 2-orbit has length 1, 2, |S|/2 or |S|", not bad,
               {"s_order": s, "lengths": sorted(set(lengths)), "bad": bad})
    return report


def check_orbit_lengths_sylow2(A: Action) -> AuditReport:
    return audit_orbit_lengths(A)


# --- central quotient ------------------------------------------------------------


def audit_centre(A: Action) -> AuditReport:
    G = A.group
    report = AuditReport(subject_of(A), "centre")
    Z = sub(G, center_mask(G.table))
    q = quotient_by_central(A, Z)
    w = q.to_dict()
    report.add("G/Z acts transitively on the Z-orbits", q.transitive, w)
    report.add("G/Z acts non-regularly", q.non_regular, w)
    report.add("fixity on Z-orbits is at most k", q.fixity_after <= q.fixity_before, w)
    report.add("point stabilizers keep their order", q.stabilizer_order_after == q.stabilizer_order_before, w)
    return report


# --- corrected O_p lemma -----------------------------------------------------------


def _two_point_stabilizers(A: Action, ga: np.ndarray) -> list[np.ndarray]:
    """Distinct intersections G_a ∩ G_b over points b != a."""
    G = A.group
    T = G.table
    out, seen = [], set()
    if A.kind == "coset":
        reps = A.coset_reps[1:]
        stabs = (T.conjugate_mask(ga, int(t)) for t in reps)
    else:
        stabs = (T.closure(T.index_of(G.stabilizer(b).generators)) for b in range(1, G.degree))
    for gb in stabs:
        m = ga & gb
        key = np.packbits(m).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out


def audit_lemma_2_16(A: Action) -> AuditReport:
    """Odd stabilizers with O_p(G) != 1: metacyclic stabilizer and the Frobenius consequences."""
    G = A.group
    T = G.table
    _require_fixity(A, 2)
    ga = stabilizer_mask(A)
    gao = int(ga.sum())
    if gao % 2 == 0:
        raise PreconditionError("point stabilizer has even order")
    cores = {}
    for p in sorted(G.primes):
        m = core_mask(T, sylow_mask(T, p))
        if int(m.sum()) > 1:
            cores[p] = m
    if not cores:
        raise PreconditionError("O_p(G) = 1 for every prime p")
    report = AuditReport(subject_of(A), "l216")
    ok, C = is_metacyclic(sub(G, ga))
    report.add("G_a is metacyclic", ok, {"stabilizer_order": gao, "cyclic_normal": C.order if C else None})
    report.add("O_p(G) != 1", True, {str(p): int(m.sum()) for p, m in cores.items()})

    for p, P in cores.items():
        X = T.extend(P, T.generators_of(ga))
        if p != 2:
            res = frobenius_test(G, X, ga)
            report.add(f"O_{p}(G)G_a is a Frobenius group with complement G_a", bool(res),
                       {"order": int(X.sum()), "reason": res.reason} if not res else
                       {"order": int(X.sum()), "kernel_order": res.kernel.order})
            continue
        Z = center_mask(T, within=X)
        z = int(Z.sum())
        holds = []
        # (1) Z != 1 and G/Z Frobenius, complement the image of G_a
        if z > 1:
            gz = T.extend(Z, T.generators_of(ga))
            res = frobenius_test(G, np.ones(T.size, dtype=bool), gz, faithful=False)
            kernel_is_z = int(core_mask(T, gz).sum()) == z
            c1 = bool(res) and kernel_is_z
            report.add("case (1): Z(PG_a) != 1 and G/Z is a Frobenius group", c1 if c1 else None,
                       {"Z_order": z})
            holds.append(c1)
        # (2) Z = 1 and PG_a Frobenius
        if z == 1:
            res = frobenius_test(G, X, ga)
            report.add("case (2): Z(PG_a) = 1 and PG_a is a Frobenius group", True if res else None,
                       {"PG_a_order": int(X.sum()), "reason": res.reason})
            holds.append(bool(res))
        # (3) a proper nontrivial two-point stabilizer that is a Frobenius complement in G_a
        c3 = None
        for I in _two_point_stabilizers(A, ga):
            io = int(I.sum())
            if 1 < io < gao:
                res = frobenius_test(G, ga, I)
                if res:
                    c3 = {"two_point_stabilizer_order": io}
                    break
        report.add("case (3): G_a is a Frobenius group with complement a two-point stabilizer",
                   True if c3 else None, c3)
        holds.append(c3 is not None)
        # (4) G_a fixes two points: P = Z(G) of order 2 or [P, G_a]G_a Frobenius
        fixed = [I for I in _two_point_stabilizers(A, ga) if int(I.sum()) == gao]
        if fixed:
            zg = center_mask(T)
            p_is_z2 = int(P.sum()) == 2 and bool(np.all(P == zg))
            comm = commutator_mask(T, P, ga)
            Y = T.extend(comm, T.generators_of(ga))
            res = frobenius_test(G, Y, ga)
            wit = {"P_order": int(P.sum()), "center_order": int(zg.sum()),
                   "commutator_order": int(comm.sum()), "frobenius_order": int(Y.sum())}
            if res:
                wit["frobenius_kernel_order"] = res.kernel.order
                wit["frobenius_index"] = T.size // int(Y.sum())
                wit["frobenius_normal"] = bool(np.all(core_mask(T, Y) == Y))
                wit["frobenius_generators"] = _gens(G, Y)
            c4 = p_is_z2 or bool(res)
            report.add("case (4): G_a fixes two points and P = Z(G) has order 2 or [P,G_a]G_a is Frobenius",
                       c4, wit)
            holds.append(c4)
        report.add("one of cases (1)-(4) holds for p = 2", any(holds), {"Z_order": z})
    return report


# --- five-case statement ----------------------------------------------------------


def _prime_powers_upto(n: int):
    q = 2
    while q <= n:
        f = factorint(q)
        if len(f) == 1:
            (p, e), = f.items()
            yield q, p, e
        q += 1


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def almost_simple_psl2_orders(n: int) -> list[dict]:
    """Prime powers q with n = |PSL2(q)| * d, d dividing |PΓL2(q) : PSL2(q)|."""
    out = []
    for q, p, e in _prime_powers_upto(int(round((2 * n) ** (1 / 3))) + 2):
        base = psl2_order(q)
        if n % base == 0 and (gcd(2, q - 1) * e) % (n // base) == 0:
            out.append({"family": "PSL2", "q": q, "outer": n // base})
    return out


def suzuki_orders(n: int) -> list[int]:
    out = []
    q = 8
    while q * q * (q * q + 1) * (q - 1) <= n:
        if q * q * (q * q + 1) * (q - 1) == n:
            out.append(q)
        q *= 4
    return out


def audit_main_theorem(A: Action) -> AuditReport:
    """Best-effort check that one of the five cases describing fixity-2 groups holds.

    A case is "pass" when all its mechanically checkable clauses hold. A case
    that cannot be confirmed is "unverified", never "fail".
    """
    G = A.group
    T = G.table
    _require_fixity(A, 2)
    ga = stabilizer_mask(A)
    gao = int(ga.sum())
    full = np.ones(T.size, dtype=bool)
    report = AuditReport(subject_of(A), "main2")
    report.add("|G| is even", G.order % 2 == 0, {"order": G.order})
    normals = normal_subgroup_masks(T)
    cases = {}

    # (1) a subgroup of 2-power index acting as a Frobenius group on its orbits
    w1 = None
    for m in normals:
        idx = T.size // int(m.sum())
        if idx & (idx - 1):
            continue
        res = frobenius_test(G, m, m & ga)
        if res:
            w1 = {"subgroup_order": int(m.sum()), "index": idx, "kernel_order": res.kernel.order}
            break
    cases[1] = w1 is not None
    report.add("case (1): a normal subgroup of 2-power index is a Frobenius group", True if w1 else None, w1)

    # (2) |Z(G)| = 2 and G/Z Frobenius
    zm = center_mask(T)
    w2 = None
    if int(zm.sum()) == 2:
        gz = T.extend(zm, T.generators_of(ga))
        res = frobenius_test(G, full, gz, faithful=False)
        if res and int(core_mask(T, gz).sum()) == 2:
            w2 = {"center_order": 2, "quotient_kernel_order": res.kernel.order // 2}
    cases[2] = w2 is not None
    report.add("case (2): |Z(G)| = 2 and G/Z(G) is a Frobenius group", True if w2 else None,
               w2 or {"center_order": int(zm.sum())})

    odd_meta = gao % 2 == 1 and is_metacyclic(sub(G, ga))[0]
    # (3) odd metacyclic stabilizers, |N_G(H):H| = 2, solvable, nilpotent normal complement
    w3 = None
    if odd_meta:
        twos = [I for I in _two_point_stabilizers(A, ga) if int(I.sum()) > 1]
        if twos:
            H = twos[0]
            ho = int(H.sum())
            N = T.normalizer_mask(H)
            solvable = is_solvable_mask(T)
            comp = None
            for cand in (H, N):
                co = int(cand.sum())
                for K in normals:
                    ko = int(K.sum())
                    if ko * co == T.size and int((K & cand).sum()) == 1 and is_nilpotent_mask(T, K) \
                            and gcd(ko, ho) == 1:
                        comp = {"complement_of_order": co, "K_order": ko}
                        break
                if comp:
                    break
            if int(N.sum()) == 2 * ho and solvable and comp:
                w3 = {"H_order": ho, **comp}
    cases[3] = w3 is not None
    report.add("case (3): odd metacyclic stabilizers, |N_G(H):H| = 2, nilpotent normal complement",
               True if w3 else None, w3)

    # (4) odd metacyclic stabilizers, N nilpotent, M/N simple of PSL2/Sz/PSL3(4) order,
    # G/M metacyclic of odd order (M = G allowed: the trivial group is such a quotient)
    w4 = None
    if odd_meta:
        for N in normals:
            if not is_nilpotent_mask(T, N):
                continue
            for M in normals:
                mo, no = int(M.sum()), int(N.sum())
                if mo <= no or np.any(N & ~M) or (T.size // mo) % 2 == 0:
                    continue
                q = mo // no
                fam = [d for d in almost_simple_psl2_orders(q) if d["outer"] == 1] + \
                      [{"family": "Sz", "q": s} for s in suzuki_orders(q)] + \
                      ([{"family": "PSL3(4)"}] if q == 20160 else [])
                if not fam:
                    continue
                if len(normal_subgroup_masks(_quotient_shape(G, M, N).table)) != 2:
                    continue
                if mo < T.size and not is_metacyclic(_quotient_shape(G, np.ones(T.size, dtype=bool), M))[0]:
                    continue
                w4 = {"N_order": no, "M_order": mo, "matches": fam}
                break
            if w4:
                break
    cases[4] = w4 is not None
    report.add("case (4): odd metacyclic stabilizers; N < M normal, N nilpotent, M/N simple of "
               "PSL2(q), Sz(q) or PSL3(4) order, G/M metacyclic of odd order", True if w4 else None,
               w4 or {"odd_metacyclic_stabilizer": odd_meta})
    if w4:
        report.add("case (4): M/N is isomorphic to the matched simple group", None,
                   {"reason": "isomorphism type is not checked, only order and simplicity"})

    # (5) even stabilizers, odd normal N, O^{2'}(G)/N dihedral/semidihedral or of almost simple order
    w5 = None
    if gao % 2 == 0:
        o2p = T.normal_closure(sylow_mask(T, 2))
        N = odd_core_mask(T)
        no = int(N.sum())
        q = int(o2p.sum()) // no
        if q & (q - 1) == 0:
            Q = _quotient_shape(G, o2p, N)
            tag = classify_two_group(Q).tag
            if tag in ("dihedral", "semidihedral", "klein"):
                w5 = {"N_order": no, "quotient_order": q, "shape": tag}
        else:
            fam = almost_simple_psl2_orders(q) + [{"family": "Sz", "q": s, "outer": 1} for s in suzuki_orders(q)]
            if fam:
                w5 = {"N_order": no, "quotient_order": q, "matches": fam}
    cases[5] = w5 is not None
    report.add("case (5): even stabilizers and O^{2'}(G)/O(G) dihedral, semidihedral or of PΓL2/Sz order",
               True if w5 else None, w5 or {"stabilizer_order": gao})
    if w5 and "matches" in w5:
        report.add("case (5): the quotient is isomorphic to Sz(q) or lies between PSL2(q) and PΓL2(q)", None,
                   {"reason": "isomorphism type is not checked, only the order"})

    some = any(cases.values())
    report.add("at least one case (1)-(5) verified", True if some else None,
               {"verified_cases": [i for i, v in cases.items() if v]})
    return report


LEMMAS = {
    "normaliser": audit_normaliser_lemma,
    "sylow2": audit_sylow2,
    "orbits": audit_orbit_lengths,
    "centre": audit_centre,
    "l216": audit_lemma_2_16,
    "main2": audit_main_theorem,
}


def run_audit(A: Action, lemma: str) -> AuditReport:
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma id {lemma!r}; choose from {sorted(LEMMAS)}")
    return LEMMAS[lemma](A)


__all__ = ["AuditReport", "Check", "run_audit", "LEMMAS", "audit_normaliser_lemma", "audit_sylow2",
           "audit_orbit_lengths", "check_orbit_lengths_sylow2", "audit_centre", "audit_lemma_2_16",
           "audit_main_theorem"]
