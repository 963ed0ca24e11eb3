"""Subgroup machinery for maximal subgroups extracted from Rees coordinates.

Groups are abstract multiplication tables over positions 0..m-1 with the
identity at position 0.  No permutation-group algorithms are used; sizes in
scope are small (S_6 with 56 subgroup classes is the intended ceiling).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ReesCoordinatization, check_associativity, closure_mask
from .errors import GroupTooLarge, NotSubgroup

SUBGROUP_ENUM_CAP = 720


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a multiplication table with identity at index 0."""

    table: np.ndarray
    inv: np.ndarray

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @staticmethod
    def from_table(table: np.ndarray | list, validate: bool = True) -> "GroupTable":
        arr = np.array(table, dtype=np.int32)
        m = arr.shape[0]
        if validate:
            check_associativity(arr)
            if not (np.array_equal(arr[0], np.arange(m)) and np.array_equal(arr[:, 0], np.arange(m))):
                raise NotSubgroup("identity must sit at index 0")
        inv = np.empty(m, dtype=np.int32)
        for i in range(m):
            hits = np.flatnonzero(arr[i] == 0)
            if len(hits) != 1:
                raise NotSubgroup(f"element {i} has no unique inverse")
            inv[i] = hits[0]
        return GroupTable(table=arr, inv=inv)

    @staticmethod
    def of_rees(r: ReesCoordinatization) -> "GroupTable":
        return GroupTable(table=r.group_mul, inv=r.group_inv)

    def conjugate_set(self, members: np.ndarray, x: int) -> np.ndarray:
        """x^-1 H x as a sorted array of positions."""
        return np.sort(self.table[self.table[self.inv[x], members], x])


@dataclass(frozen=True)
class SubgroupClass:
    rep: tuple[int, ...]  # canonical representative, sorted positions
    index: int  # [G : H]
    core: tuple[int, ...]  # largest normal subgroup of G inside H


@dataclass(frozen=True)
class SubgroupLattice:
    group: GroupTable
    classes: tuple[SubgroupClass, ...]  # sorted by (order, canonical tuple)

    def class_of_whole_group(self) -> int:
        return len(self.classes) - 1

    def trivial_class(self) -> int:
        return 0


def _canonical_rep(g: GroupTable, members: np.ndarray) -> tuple[int, ...]:
    best: tuple[int, ...] | None = None
    for x in range(g.order):
        cand = tuple(int(v) for v in g.conjugate_set(members, x))
        if best is None or cand < best:
            best = cand
    return best  # type: ignore[return-value]


def _core_of(g: GroupTable, members: np.ndarray) -> tuple[int, ...]:
    mask = np.zeros(g.order, dtype=bool)
    mask[members] = True
    core = mask.copy()
    for x in range(g.order):
        conj = np.zeros(g.order, dtype=bool)
        conj[g.conjugate_set(members, x)] = True
        core &= conj
        if core.sum() == 1:
            break
    return tuple(int(v) for v in np.flatnonzero(core))


def subgroup_classes(g: GroupTable, cap: int = SUBGROUP_ENUM_CAP) -> SubgroupLattice:
    """All subgroups up to conjugacy, by cyclic seeding and one-element extension.

    Every subgroup arises from a chain of single-generator extensions starting
    at a cyclic subgroup, and extending a class representative H by double
    coset representatives of H covers all extensions of the class up to
    conjugacy.
    """
    m = g.order
    if m > cap:
        raise GroupTooLarge(f"group order {m} exceeds cap {cap}")
    t = g.table

    found: dict[tuple[int, ...], np.ndarray] = {}
    queue: list[np.ndarray] = []

    def register(members: np.ndarray) -> None:
        canon = _canonical_rep(g, members)
        if canon not in found:
            arr = np.array(canon, dtype=np.int64)
            found[canon] = arr
            queue.append(arr)

    for x in range(m):
        members = np.flatnonzero(closure_mask(t, [x]))
        register(members)

    qi = 0
    while qi < len(queue):
        h = queue[qi]
        qi += 1
        if len(h) == m:
            continue
        in_h = np.zeros(m, dtype=bool)
        in_h[h] = True
        used = in_h.copy()
        for x in range(m):
            if used[x]:
                continue
            k = np.flatnonzero(closure_mask(t, list(h) + [x]))
            register(k)
            hx = t[h, x]  # H x
            used[t[np.ix_(hx, h)].ravel()] = True  # mark the double coset H x H
            used[hx] = True

    classes = []
    for canon in sorted(found, key=lambda c: (len(c), c)):
        members = found[canon]
        classes.append(
            SubgroupClass(rep=canon, index=m // len(canon), core=_core_of(g, members))
        )
    return SubgroupLattice(group=g, classes=tuple(classes))


# ---------------------------------------------------------------------------
# Coset actions


@dataclass(frozen=True)
class GroupAction:
    """A total right action of a group on points 0..npoints-1."""

    group: GroupTable
    npoints: int
    act: np.ndarray  # npoints x |G|

    def orbit_reps(self) -> list[int]:
        seen = np.zeros(self.npoints, dtype=bool)
        reps = []
        for p in range(self.npoints):
            if not seen[p]:
                reps.append(p)
                seen[np.unique(self.act[p])] = True
        return reps

    def stabilizer(self, p: int) -> np.ndarray:
        return np.flatnonzero(self.act[p] == p)

    def kernel_mask(self) -> np.ndarray:
        return (self.act == np.arange(self.npoints)[:, None]).all(axis=0)

    def fixed_points(self, gpos: int) -> int:
        return int((self.act[:, gpos] == np.arange(self.npoints)).sum())


def _validate_subgroup(g: GroupTable, members: np.ndarray) -> None:
    mask = np.zeros(g.order, dtype=bool)
    mask[members] = True
    if not mask[0]:
        raise NotSubgroup("subset does not contain the identity")
    if not mask[g.table[np.ix_(members, members)]].all():
        raise NotSubgroup("subset is not closed under multiplication")
    if not mask[g.inv[members]].all():
        raise NotSubgroup("subset is not closed under inversion")


def coset_action(g: GroupTable, subgroup: tuple[int, ...] | np.ndarray) -> GroupAction:
    """Right multiplication on the right cosets Hg; the kernel is the core of H."""
    members = np.asarray(sorted(int(x) for x in subgroup), dtype=np.int64)
    _validate_subgroup(g, members)
    keys = g.table[members, :].min(axis=0)  # g -> min element of Hg
    points = np.unique(keys)
    act = np.empty((len(points), g.order), dtype=np.int32)
    for p, rep in enumerate(points):
        act[p] = np.searchsorted(points, keys[g.table[rep, :]])
    return GroupAction(group=g, npoints=len(points), act=act)


def coproduct_group_actions(actions: list[GroupAction]) -> GroupAction:
    if not actions:
        raise ValueError("need at least one action")
    grp = actions[0].group
    offs = 0
    rows = []
    for a in actions:
        rows.append(a.act + offs)
        offs += a.npoints
    return GroupAction(group=grp, npoints=offs, act=np.concatenate(rows, axis=0))


# ---------------------------------------------------------------------------
# Minimal degree of a permutation representation faithful on a normal subgroup


def min_degree_faithful_on(
    g: GroupTable,
    normal: tuple[int, ...] | np.ndarray,
    lattice: SubgroupLattice,
) -> tuple[int, tuple[int, ...]]:
    """Minimize sum of [G:H_i] over sets of pairwise non-conjugate subgroup
    classes whose cores intersect the given normal subgroup trivially.

    Returns (degree, class positions in the lattice).  A trivial normal
    subgroup gives degree 0 with the empty witness; callers decide whether an
    empty collection is admissible.
    """
    m = g.order
    n_mask = np.zeros(m, dtype=bool)
    n_mask[np.asarray(list(normal), dtype=np.int64)] = True
    if not n_mask[0]:
        raise NotSubgroup("normal subgroup must contain the identity")
    members = np.flatnonzero(n_mask)
    for x in range(m):
        conj = np.zeros(m, dtype=bool)
        conj[g.conjugate_set(members, x)] = True
        if not np.array_equal(conj, n_mask):
            raise NotSubgroup("subgroup is not normal")
    if n_mask.sum() == 1:
        return 0, ()

    costs = []
    cores = []
    ids = []
    for ci, cl in enumerate(lattice.classes):
        core_mask = np.zeros(m, dtype=bool)
        core_mask[np.asarray(cl.core, dtype=np.int64)] = True
        if (core_mask & n_mask).sum() == n_mask.sum():
            continue  # core contains N: can never shrink the residual
        costs.append(cl.index)
        cores.append(core_mask)
        ids.append(ci)
    order = sorted(range(len(ids)), key=lambda i: (costs[i], ids[i]))
    costs = [costs[i] for i in order]
    cores = [cores[i] for i in order]
    ids = [ids[i] for i in order]

    k = len(ids)
    suffix = [None] * (k + 1)
    suffix[k] = np.ones(m, dtype=bool)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] & cores[i]

    best_cost = [sum(costs) + 1]
    best_set: list[tuple[int, ...] | None] = [None]

    def rec(i: int, residual: np.ndarray, cost: int, chosen: tuple[int, ...]) -> None:
        if residual.sum() == 1:
            if cost < best_cost[0]:
                best_cost[0] = cost
                best_set[0] = chosen
            return
        if i == k:
            return
        if cost + costs[i] >= best_cost[0]:
            return  # at least one more class is needed; costs are sorted
        if (residual & suffix[i]).sum() > 1:
            return  # remaining cores cannot finish the job
        shrunk = residual & cores[i]
        if shrunk.sum() < residual.sum():
            rec(i + 1, shrunk, cost + costs[i], chosen + (ids[i],))
        rec(i + 1, residual, cost, chosen)

    rec(0, n_mask.copy(), 0, ())
    assert best_set[0] is not None, "no faithful collection found"
    return best_cost[0], tuple(sorted(best_set[0]))
