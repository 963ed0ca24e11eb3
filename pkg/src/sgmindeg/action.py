"""Partial right actions of a finite semigroup on a finite point set.

An action is stored as an |S| x degree array of point indices with -1 for
undefined.  Compatibility means p(st) = (ps)t with both sides simultaneously
undefined or equal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .core import (
    FiniteSemigroup,
    GreensStructure,
    ReesCoordinatization,
    _partition_from_keys,
    greens,
    small_generating_set,
)
from .errors import NotIdempotent, NotRhodesSemisimple, NotSemisimpleAction
from .grouptheory import GroupAction

UNDEF = -1


@dataclass(frozen=True)
class PartialAction:
    degree: int
    maps: np.ndarray  # |S| x degree, entries in {-1} u {0..degree-1}
    labels: tuple | None = None

    def apply(self, p: int, s: int) -> int:
        return int(self.maps[s, p])

    def is_total(self) -> bool:
        return bool((self.maps >= 0).all())

    def restriction_is_injective(self) -> bool:
        """Every element acts by a partial bijection."""
        for row in self.maps:
            vals = row[row >= 0]
            if len(np.unique(vals)) != len(vals):
                return False
        return True


def compose_rows(first: np.ndarray, then: np.ndarray) -> np.ndarray:
    out = np.where(first >= 0, then[first], UNDEF)
    out[first < 0] = UNDEF
    return out


def check_compatibility(
    s: FiniteSemigroup,
    omega: PartialAction,
    exhaustive: bool | None = None,
    samples: int = 2000,
    seed: int = 0,
) -> bool:
    """p(st) = (ps)t for all pairs; exhaustive for small sizes, sampled otherwise."""
    n = s.size
    if exhaustive is None:
        exhaustive = n * n <= 40_000
    t = s.table
    m = omega.maps
    if exhaustive:
        pairs = ((a, b) for a in range(n) for b in range(n))
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(samples))
    for a, b in pairs:
        if not np.array_equal(m[t[a, b]], compose_rows(m[a], m[b])):
            return False
    return True


def acts_monoidally(s: FiniteSemigroup, omega: PartialAction) -> bool:
    if s.identity is None:
        return False
    return bool(np.array_equal(omega.maps[s.identity], np.arange(omega.degree)))


def coproduct_actions(parts: list[PartialAction]) -> PartialAction:
    if not parts:
        raise ValueError("need at least one action")
    nelem = parts[0].maps.shape[0]
    offs = 0
    cols = []
    labels: list | None = [] if all(p.labels is not None for p in parts) else None
    for p in parts:
        shifted = np.where(p.maps >= 0, p.maps + offs, UNDEF)
        cols.append(shifted)
        offs += p.degree
        if labels is not None:
            labels.extend(p.labels)  # type: ignore[arg-type]
    maps = np.concatenate(cols, axis=1) if cols else np.empty((nelem, 0), dtype=np.int32)
    return PartialAction(degree=offs, maps=maps, labels=tuple(labels) if labels is not None else None)


# ---------------------------------------------------------------------------
# Schutzenberger representation


def schutzenberger_right(s: FiniteSemigroup, r: ReesCoordinatization) -> PartialAction:
    """Action of S on the R-class of e_J by right multiplication, undefined
    when the product leaves the R-class.  Point labels are element indices."""
    points = np.asarray(r.r_class_of_e(), dtype=np.int64)
    pos = np.full(s.size, UNDEF, dtype=np.int32)
    pos[points] = np.arange(len(points))
    prods = s.table[points, :]  # (point, s) -> point_elem * s
    maps = np.where(r.in_r_e[prods], pos[prods], UNDEF).T.astype(np.int32)
    return PartialAction(degree=len(points), maps=maps, labels=tuple(int(x) for x in points))


# ---------------------------------------------------------------------------
# Strong orbits, apexes, semisimplification


@dataclass(frozen=True)
class Orbit:
    points: tuple[int, ...]
    kind: str  # "transitive" | "null"
    apex: int | None  # J-class id, transitive orbits only
    invariant: bool


@dataclass(frozen=True)
class OrbitDecomposition:
    orbit_of: np.ndarray
    orbits: tuple[Orbit, ...]

    def is_semisimple(self) -> bool:
        return all(o.kind == "transitive" and o.invariant for o in self.orbits)


def orbits(
    s: FiniteSemigroup, omega: PartialAction, g: GreensStructure | None = None
) -> OrbitDecomposition:
    """Strong orbits (equal forward-reachability sets under S^1), their kinds,
    invariance flags, and the apex of each transitive orbit.

    The apex is the unique minimal J-class acting nonemptily on the orbit
    (with the action restricted to the orbit); uniqueness and regularity are
    asserted, a violation indicates a bug."""
    if g is None:
        g = greens(s)
    d = omega.degree
    n = s.size
    if d == 0:
        return OrbitDecomposition(orbit_of=np.empty(0, dtype=np.int64), orbits=())

    adj = np.zeros((d, d), dtype=bool)
    pts = np.tile(np.arange(d), n)
    vals = omega.maps.ravel()
    ok = vals >= 0
    adj[pts[ok], vals[ok]] = True
    adj[np.arange(d), np.arange(d)] = True

    reach = adj
    while True:
        nxt = ((reach.astype(np.float32) @ reach.astype(np.float32)) > 0.5) | reach
        if np.array_equal(nxt, reach):
            break
        reach = nxt

    orbit_of, classes = _partition_from_keys(np.packbits(reach, axis=1))

    out: list[Orbit] = []
    for pts_tuple in classes:
        opts = np.asarray(pts_tuple)
        member = np.zeros(d + 1, dtype=bool)
        member[opts] = True
        sub = omega.maps[:, opts]  # n x |O|
        inside = (sub >= 0) & member[sub]
        invariant = bool(((sub < 0) | member[sub]).all())
        if len(opts) == 1 and not inside.any():
            out.append(Orbit(points=pts_tuple, kind="null", apex=None, invariant=invariant))
            continue
        acting = np.flatnonzero(inside.any(axis=1))
        jset = sorted(set(int(j) for j in g.jclass_of[acting]))
        minimal = [j for j in jset if not any(g.jorder_lt[j2, j] for j2 in jset if j2 != j)]
        assert len(minimal) == 1, f"orbit has {len(minimal)} minimal acting J-classes"
        apex = minimal[0]
        assert g.regular[apex], "apex J-class must be regular"
        out.append(Orbit(points=pts_tuple, kind="transitive", apex=apex, invariant=invariant))
    return OrbitDecomposition(orbit_of=orbit_of, orbits=tuple(out))


def semisimplify(
    s: FiniteSemigroup, omega: PartialAction, g: GreensStructure | None = None
) -> PartialAction:
    """Keep the points lying in transitive strong orbits and restrict the
    action within each orbit; images leaving the orbit become undefined."""
    dec = orbits(s, omega, g)
    keep: list[int] = []
    for o in dec.orbits:
        if o.kind == "transitive":
            keep.extend(o.points)
    keep.sort()
    keep_arr = np.asarray(keep, dtype=np.int64)
    newpos = np.full(omega.degree + 1, UNDEF, dtype=np.int32)
    newpos[keep_arr] = np.arange(len(keep))
    sub = omega.maps[:, keep_arr]
    same_orbit = np.zeros_like(sub, dtype=bool)
    valid = sub >= 0
    same_orbit[valid] = dec.orbit_of[sub[valid]] == dec.orbit_of[keep_arr][
        np.broadcast_to(np.arange(len(keep)), sub.shape)[valid]
    ]
    maps = np.where(valid & same_orbit, newpos[sub], UNDEF).astype(np.int32)
    labels = None
    if omega.labels is not None:
        labels = tuple(omega.labels[p] for p in keep)
    else:
        labels = tuple(keep)
    return PartialAction(degree=len(keep), maps=maps, labels=labels)


# ---------------------------------------------------------------------------
# Faithfulness


def is_faithful(
    s: FiniteSemigroup, omega: PartialAction
) -> tuple[bool, tuple[int, int] | None]:
    """True iff distinct elements induce distinct partial maps; the witness is
    the lowest pair of elements acting identically."""
    n = s.size
    _, first, inv = np.unique(omega.maps, axis=0, return_index=True, return_inverse=True)
    if len(first) == n:
        return True, None
    seen: dict[int, int] = {}
    for x in range(n):
        c = int(inv[x])
        if c in seen:
            return False, (seen[c], x)
        seen[c] = x
    raise AssertionError("unreachable")


def faithful_by_criterion(
    s: FiniteSemigroup,
    omega: PartialAction,
    g: GreensStructure,
    report,
    check_preconditions: bool = True,
) -> bool:
    """Faithfulness of a semisimple action of a Rhodes semisimple semigroup,
    decided per irreducible J-class: the points with apex J are nonempty and
    their e_J-image is moved by every nontrivial element of M_J."""
    from .congruence import is_rhodes_semisimple, min_idempotent_of

    if check_preconditions:
        ok, cong = is_rhodes_semisimple(s, g)
        if not ok:
            raise NotRhodesSemisimple([list(c) for c in cong.classes])
    dec = orbits(s, omega, g)
    if not dec.is_semisimple():
        raise NotSemisimpleAction("action has a null or non-invariant strong orbit")

    for j in report.irreducible_ids():
        row = report.per_class[j]
        pts: list[int] = []
        for o in dec.orbits:
            if o.apex == j:
                pts.extend(o.points)
        if not pts:
            return False
        e = min_idempotent_of(g, j)
        imgs = omega.maps[e, pts]
        fixed = np.unique(imgs[imgs >= 0])
        for m in row.mj:
            if m == e:
                continue
            moved = omega.maps[m, fixed]
            assert (moved >= 0).all(), "group element must act totally on the e_J-image"
            if (moved == fixed).all():
                return False
    return True


# ---------------------------------------------------------------------------
# Tensor with the Schutzenberger representation, in Rees coordinates


def tensor_action(x: GroupAction, r: ReesCoordinatization) -> PartialAction:
    """The partial S-set on X x B induced by a right G_J-set X.

    Point (p, b) moved by s: write t_b s in coordinates (a0, h, b') when it
    stays in the R-class of e (t_b the b-th H-class representative); the image
    is (p.h, b').  Degree is |X| * b_count."""
    s = r.semigroup
    n = s.size
    nb = r.b_count
    npts = x.npoints * nb
    g_of = np.full(n, UNDEF, dtype=np.int32)
    b_of = np.full(n, UNDEF, dtype=np.int32)
    for el, (_, gi, bi) in r.elem_to_triple.items():
        g_of[el] = gi
        b_of[el] = bi

    maps = np.full((n, npts), UNDEF, dtype=np.int32)
    for b in range(nb):
        t_b = int(r.triple_to_elem[0, 0, b])
        u = s.table[t_b, :]  # per element s: t_b s
        valid = r.in_r_e[u]
        h = g_of[u[valid]]
        b2 = b_of[u[valid]]
        for p in range(x.npoints):
            dest = x.act[p, h] * nb + b2
            maps[valid, p * nb + b] = dest
    return PartialAction(degree=npts, maps=maps)


# ---------------------------------------------------------------------------
# Green's congruence and quotient


def _relabel_by_first_occurrence(class_of: np.ndarray, num: int) -> np.ndarray:
    relabel = np.full(num, -1, dtype=np.int64)
    nxt = 0
    for c in class_of:
        if c >= 0 and relabel[c] < 0:
            relabel[c] = nxt
            nxt += 1
    out = np.where(class_of >= 0, relabel[class_of], -1)
    return out


def greens_congruence_classes(
    s: FiniteSemigroup, omega: PartialAction, e: int, method: str = "scan"
) -> np.ndarray:
    """Per-point class ids of the largest congruence restricting to equality
    on the e-image, or -1 for points equivalent to the undefined sink.

    A point all of whose se-translates are undefined is identified with the
    sink (the quotient deletes it); such points never occur in tensor actions.
    """
    if not s.is_idempotent(e):
        raise NotIdempotent(f"element {e} is not idempotent")
    d = omega.degree
    if method == "scan":
        translators = np.unique(np.concatenate([s.table[:, e], [e]]))
        sig = omega.maps[translators, :].T  # point rows over t in S^1 e
        sink = (sig < 0).all(axis=1)
        class_of, _ = _partition_from_keys(sig)
        class_of = class_of.copy()
        class_of[sink] = -1
        return _relabel_by_first_occurrence(class_of, d + 1)
    if method == "fixpoint":
        return _greens_congruence_fixpoint(s, omega, e)
    raise ValueError(f"unknown method {method!r}")


def _greens_congruence_fixpoint(s: FiniteSemigroup, omega: PartialAction, e: int) -> np.ndarray:
    """Moore-style refinement over a generating set, with an explicit sink.

    Start from the partition by the value of p.e and refine until stable under
    every generator; the class containing the sink maps to -1."""
    d = omega.degree
    gens = small_generating_set(s.table)
    ext = np.empty((len(gens), d + 1), dtype=np.int64)  # sink = point d
    for i, ge in enumerate(gens):
        row = omega.maps[ge]
        ext[i, :d] = np.where(row >= 0, row, d)
        ext[i, d] = d

    init = np.empty(d + 1, dtype=np.int64)
    row_e = omega.maps[e]
    init[:d] = np.where(row_e >= 0, row_e, d)
    init[d] = d
    class_of, _ = _partition_from_keys(init.reshape(-1, 1))
    while True:
        keys = np.concatenate([class_of.reshape(-1, 1), class_of[ext].T], axis=1)
        new_class, _ = _partition_from_keys(keys)
        if len(np.unique(new_class)) == len(np.unique(class_of)):
            break
        class_of = new_class
    sink_class = class_of[d]
    out = class_of[:d].copy()
    out[out == sink_class] = -1
    keep = out >= 0
    if keep.any():
        out[keep] = _relabel_by_first_occurrence(out[keep], d + 1)
    return out


def greens_quotient(
    s: FiniteSemigroup, omega: PartialAction, e: int, method: str = "scan"
) -> tuple[PartialAction, np.ndarray]:
    """Quotient of the action by the Green's congruence at the idempotent e.

    Returns the quotient action and the point -> class map (-1 for points
    collapsed into the sink).  The restriction to the e-image embeds
    injectively into the quotient."""
    class_of = greens_congruence_classes(s, omega, e, method=method)
    k = int(class_of.max()) + 1 if len(class_of) else 0
    reps = np.full(k, -1, dtype=np.int64)
    for p in range(omega.degree):
        c = class_of[p]
        if c >= 0 and reps[c] < 0:
            reps[c] = p

    n = s.size
    ext = np.append(class_of, UNDEF)  # index -1 lands on the appended sink slot
    qmaps = np.full((n, k), UNDEF, dtype=np.int32)
    if k:
        qmaps = ext[omega.maps[:, reps]].astype(np.int32)
    # well-definedness: every point of a class must track its representative
    mapped = ext[omega.maps]  # treats -1 action values as the sink
    for p in range(omega.degree):
        c = class_of[p]
        expected = qmaps[:, c] if c >= 0 else np.full(n, UNDEF, dtype=np.int32)
        if not np.array_equal(mapped[:, p], expected):
            raise AssertionError("Green's congruence is not an action congruence")
    return PartialAction(degree=k, maps=qmaps), class_of


def dump_action(omega: PartialAction) -> str:
    """Serialize in the .act format: degree line, then one row per element."""
    lines = [str(omega.degree)]
    for row in omega.maps:
        lines.append(" ".join("-" if v < 0 else str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_action(text: str) -> PartialAction:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    degree = int(rows[0])
    maps = []
    for ln in rows[1:]:
        toks = ln.split()
        if len(toks) != degree:
            raise ValueError(f"expected {degree} tokens, got {len(toks)}")
        maps.append([UNDEF if tk == "-" else int(tk) for tk in toks])
    arr = np.asarray(maps, dtype=np.int32).reshape(len(maps), degree)
    if arr.size and (arr.max() >= degree or arr.min() < -1):
        raise ValueError("action values out of range")
    return PartialAction(degree=degree, maps=arr)
