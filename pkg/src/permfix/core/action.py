"""Transitive actions: the natural action on points and actions on right cosets."""
from __future__ import annotations

from functools import cached_property

import numpy as np

from ..errors import MembershipError
from .group import PermGroup, Subgroup, build_group
from .permutation import Permutation


class Action:
    """A group acting on ``range(domain_size)``.

    ``kind == "natural"``: the permutation action of ``group`` itself.
    ``kind == "coset"``: right multiplication on the right cosets of
    ``stabilizer``; the coset containing the identity is point 0 and the rest
    are numbered by their smallest element in the group's element table.
    """

    def __init__(self, group: PermGroup, kind: str = "natural", stabilizer: Subgroup | None = None):
        if kind not in ("natural", "coset"):
            raise ValueError(f"unknown action kind {kind!r}")
        self.group = group
        self.kind = kind
        self.stabilizer = stabilizer
        if kind == "natural":
            self.domain_size = group.degree
        else:
            if stabilizer is None:
                raise ValueError("coset action needs a stabilizer")
            self.domain_size = group.order // stabilizer.order

    def __repr__(self) -> str:
        if self.kind == "natural":
            return f"<Action natural of {self.group.name or 'G'} on {self.domain_size} points>"
        return f"<Action on cosets of order-{self.stabilizer.order} subgroup, degree {self.domain_size}>"

    @property
    def descriptor(self) -> str:
        if self.kind == "natural":
            return "natural"
        return f"coset(order={self.stabilizer.order}, degree={self.domain_size})"

    # --- coset bookkeeping ------------------------------------------------

    @cached_property
    def stabilizer_mask(self) -> np.ndarray:
        return self.stabilizer.mask

    @cached_property
    def coset_labels(self) -> np.ndarray:
        return self.group.table.coset_labels(self.stabilizer_mask)

    @cached_property
    def coset_reps(self) -> np.ndarray:
        labels = self.coset_labels
        reps = np.full(self.domain_size, self.group.table.size, dtype=np.int64)
        np.minimum.at(reps, labels, np.arange(len(labels)))
        return reps

    def image(self, x: Permutation) -> Permutation:
        """The permutation induced by ``x`` on the domain."""
        if self.kind == "natural":
            return x
        T = self.group.table
        xi = T.index(x)
        imgs = self.coset_labels[T.mul(self.coset_reps, xi)]
        return Permutation(imgs.tolist(), check=False)

    def generator_images(self) -> list[Permutation]:
        return [self.image(g) for g in self.group.generators]

    @cached_property
    def point_images(self) -> list[Permutation]:
        return self.generator_images()

    def image_group(self) -> PermGroup:
        """The permutation group induced on the domain."""
        if self.kind == "natural":
            return self.group
        return build_group(self.domain_size, self.point_images)

    def fixed_points(self, x: Permutation) -> list[int]:
        if self.kind == "natural":
            return x.fixed_points()
        T = self.group.table
        R = T.right_mult(T.index(x))
        labels = self.coset_labels
        fixed = labels == labels[R]
        return sorted(set(labels[fixed].tolist()))

    def point_stabilizer(self, point: int) -> Subgroup:
        if self.kind == "natural":
            return self.group.stabilizer(point)
        from ..structure import sub

        T = self.group.table
        t = int(self.coset_reps[point])
        # stabilizer of Ht is t^-1 H t
        return sub(self.group, T.conjugate_mask(self.stabilizer_mask, t))

    def orbits_of(self, H: PermGroup) -> list[list[int]]:
        """Orbits of a subgroup of ``group`` on the domain."""
        if self.kind == "natural":
            return build_group(self.group.degree, H.generators).orbits()
        imgs = [self.image(h) for h in H.generators]
        return build_group(self.domain_size, imgs).orbits()


def fixed_point_set(x: Permutation, A: Action) -> set[int]:
    A.group.check_member(x)
    return set(A.fixed_points(x))


def orbits(G: PermGroup) -> list[list[int]]:
    return G.orbits()


def point_stabilizer(G: PermGroup, alpha: int) -> Subgroup:
    return G.stabilizer(alpha)


def coset_action(G: PermGroup, H: PermGroup) -> Action:
    """Action of G on the right cosets of H (degree |G:H|, point 0 = H)."""
    if isinstance(H, Subgroup) and H.ambient is G:
        S = H
    else:
        for h in H.generators:
            if not G.contains(h):
                raise MembershipError("stabilizer is not a subgroup of the group")
        S = Subgroup(G, H.generators, check=False)
    return Action(G, "coset", S)


def natural_action(G: PermGroup) -> Action:
    return Action(G, "natural")


def action_kernel(A: Action) -> Subgroup:
    G = A.group
    if A.kind == "natural":
        return Subgroup(G, [], check=False)
    from ..structure import core_mask, sub

    return sub(G, core_mask(G.table, A.stabilizer_mask))


def is_faithful(A: Action) -> bool:
    return A.kind == "natural" or action_kernel(A).order == 1
