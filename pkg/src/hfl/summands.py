"""Model summands of filtered complexes and the decomposition algorithm.

Five shapes of two-coordinate complex occur as direct summands of the
complexes this package produces: the acyclic square B, the staircase
pairs V and H (acyclic, one arrow per step in a single coordinate
direction plus a linking arrow in the other), and the zigzags X and Y
(homology rank one).  In one coordinate the only shape needed is the
two-step pair E.  Each shape has a standard position; an instance
carries a Maslov offset and a filtration shift placing its cells at
standard-position-plus-shift.

``decompose`` inverts ``build_summand`` + direct sum: given a complex
whose every arrow drops exactly one coordinate by exactly one step, it
returns the multiset of summands, in two phases.  Free squares are
split off first by explicit change of basis wherever the two-step
composite of the differential is nonzero.  What remains is, per Maslov
level and anti-diagonal of the filtration lattice, a zigzag of spaces
and maps; its interval decomposition is read off from the dimensions of
section spaces (vectors extendable to compatible families over a
subinterval), which is the standard barcode computation for a quiver of
type A.  The result is verified by rebuilding.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .filtered import (
    FilteredComplex,
    component_homology,
    direct_sum,
    total_homology,
    validate,
)

__all__ = [
    "Summand",
    "build_summand",
    "build_sum",
    "decompose",
    "e_decomposition",
]

_KINDS = ("B", "V", "H", "X", "Y", "E")


@dataclass(frozen=True, order=True)
class Summand:
    """One model summand: shape, Maslov offset, size, doubled shift.

    ``lparam`` is the size parameter (arrow count for V/H/E, zigzag
    width for X/Y) and is meaningless for B, where it is pinned to 0.
    A width-zero X is a single cell, the same complex as a width-zero
    Y, and is normalized to the Y spelling so equal summands compare
    equal.
    """

    kind: str
    d: int
    lparam: int
    shift2: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown summand kind {self.kind!r}")
        object.__setattr__(self, "shift2", tuple(int(x) for x in self.shift2))
        nv = 1 if self.kind == "E" else 2
        if len(self.shift2) != nv:
            raise ValueError(f"kind {self.kind} needs a {nv}-coordinate shift")
        if self.kind == "B" and self.lparam != 0:
            raise ValueError("B has no size parameter; pass 0")
        if self.kind in ("V", "H", "E") and self.lparam < 1:
            raise ValueError(f"{self.kind} needs lparam >= 1")
        if self.kind in ("X", "Y") and self.lparam < 0:
            raise ValueError("negative lparam")
        if self.kind == "X" and self.lparam == 0:
            object.__setattr__(self, "kind", "Y")

    def __str__(self) -> str:
        shift = ",".join(str(x // 2) if x % 2 == 0 else f"{x}/2" for x in self.shift2)
        size = "" if self.kind == "B" else f"^{self.lparam}"
        return f"{self.kind}{size}({self.d})[{shift}]"


def build_summand(s: Summand) -> FilteredComplex:
    """Realize a summand as a complex, cells at standard position + shift."""
    d, lam = s.d, s.lparam
    cells: list[tuple[str, int, tuple[int, ...]]] = []
    arrows: list[tuple[str, str]] = []
    if s.kind == "B":
        cells = [
            ("c00", d, (0, 0)),
            ("c10", d + 1, (2, 0)),
            ("c01", d + 1, (0, 2)),
            ("c11", d + 2, (2, 2)),
        ]
        arrows = [("c11", "c10"), ("c11", "c01"), ("c10", "c00"), ("c01", "c00")]
    elif s.kind == "V":
        for j in range(lam):
            cells.append((f"t{j}", d, (-2 * j, 2 * j)))
            cells.append((f"u{j}", d - 1, (-2 * j - 2, 2 * j)))
            arrows.append((f"t{j}", f"u{j}"))
            if j:
                arrows.append((f"t{j}", f"u{j - 1}"))
    elif s.kind == "H":
        for i in range(lam):
            cells.append((f"t{i}", d, (2 * i, -2 * i)))
            cells.append((f"u{i}", d - 1, (2 * i, -2 * i - 2)))
            arrows.append((f"t{i}", f"u{i}"))
            if i:
                arrows.append((f"t{i}", f"u{i - 1}"))
    elif s.kind == "X":
        for i in range(lam + 1):
            cells.append((f"l{i}", d, (2 * i, 2 * (lam - i))))
        for i in range(1, lam + 1):
            cells.append((f"u{i}", d + 1, (2 * i, 2 * (lam + 1 - i))))
            arrows.append((f"u{i}", f"l{i - 1}"))
            arrows.append((f"u{i}", f"l{i}"))
    elif s.kind == "Y":
        for i in range(lam + 1):
            cells.append((f"t{i}", d, (2 * i, 2 * (lam - i))))
        for i in range(lam):
            cells.append((f"l{i}", d - 1, (2 * i, 2 * (lam - 1 - i))))
        for i in range(lam + 1):
            if i:
                arrows.append((f"t{i}", f"l{i - 1}"))
            if i < lam:
                arrows.append((f"t{i}", f"l{i}"))
    else:  # E
        cells = [("t", d, (0,)), ("b", d - 1, (-2 * lam,))]
        arrows = [("t", "b")]
    parity = tuple(x % 2 for x in s.shift2)
    gens = [
        (gid, dd, tuple(a + b for a, b in zip(h2, s.shift2))) for gid, dd, h2 in cells
    ]
    return FilteredComplex(len(s.shift2), parity, gens, arrows)


def build_sum(summands) -> FilteredComplex:
    return direct_sum([build_summand(s) for s in summands])


# ----------------------------------------------------------------------
# One-coordinate decomposition (persistence pairing)

def e_decomposition(cx: FilteredComplex):
    """Split a one-coordinate complex into E-pairs and free generators.

    Returns (pairs, frees): ``pairs`` counts triples (lparam, maslov of
    the arrow source, doubled filtration of the source); ``frees``
    counts (maslov, doubled filtration) of the unpaired generators.
    The pairing is the standard boundary-matrix reduction over the
    filtration order, whose output multiset is basis-independent.
    """
    if cx.nvars != 1:
        raise ValueError("e_decomposition expects a one-coordinate complex")
    rep = validate(cx)
    if not rep:
        raise ValueError(f"not a legal filtered complex: {rep.detail}")
    order = sorted(cx.gen_ids, key=lambda g: (cx.filt2(g)[0], g))
    index = {g: i for i, g in enumerate(order)}
    out: dict[str, set[str]] = {g: set() for g in cx.gen_ids}
    for a, b in cx.arrows:
        out[a].add(b)
    pivot_mask: dict[int, int] = {}
    pivot_owner: dict[int, str] = {}
    pairs: Counter = Counter()
    paired: set[str] = set()
    for g in order:
        m = 0
        for t in out[g]:
            m |= 1 << index[t]
        while m:
            low = m.bit_length() - 1
            if low in pivot_mask:
                m ^= pivot_mask[low]
            else:
                break
        if m:
            low = m.bit_length() - 1
            pivot_mask[low] = m
            pivot_owner[low] = g
            bottom = order[low]
            lam = (cx.filt2(g)[0] - cx.filt2(bottom)[0]) // 2
            pairs[(lam, cx.maslov(g), cx.filt2(g)[0])] += 1
            paired.add(g)
            paired.add(bottom)
    frees: Counter = Counter()
    for g in cx.gen_ids:
        if g not in paired:
            frees[(cx.maslov(g), cx.filt2(g)[0])] += 1
    return pairs, frees


# ----------------------------------------------------------------------
# Two-coordinate decomposition

class _Basis:
    """Mutable basis presentation of a complex whose arrows drop one
    coordinate by one step.  Basis elements are ids grouped by class
    (Maslov level and filtration); ``xout[g]``/``yout[g]`` hold the
    arrow targets dropping the first/second coordinate."""

    def __init__(self, cx: FilteredComplex):
        self.info: dict[str, tuple[int, tuple[int, ...]]] = {}
        self.xout: dict[str, set[str]] = {}
        self.yout: dict[str, set[str]] = {}
        for g in cx.gen_ids:
            self.info[g] = (cx.maslov(g), cx.filt2(g))
            self.xout[g] = set()
            self.yout[g] = set()
        for a, b in cx.arrows:
            fa, fb = cx.filt2(a), cx.filt2(b)
            if fa[0] - fb[0] == 2:
                self.xout[a].add(b)
            else:
                self.yout[a].add(b)

    def cls(self, g: str):
        return self.info[g]

    def classes(self) -> dict:
        by: dict = {}
        for g in sorted(self.info):
            by.setdefault(self.info[g], []).append(g)
        return by

    def add_into(self, p: str, m: str):
        """Basis change p := p + m for two ids of the same class."""
        assert self.info[p] == self.info[m] and p != m
        self.xout[p] ^= self.xout[m]
        self.yout[p] ^= self.yout[m]
        for adj in (self.xout, self.yout):
            for a, targets in adj.items():
                if p in targets:
                    targets.symmetric_difference_update({m})

    def composite(self, g: str) -> set[str]:
        z: set[str] = set()
        for w in self.xout[g]:
            z ^= self.yout[w]
        return z

    def remove(self, ids):
        for g in ids:
            del self.info[g], self.xout[g], self.yout[g]
        for adj in (self.xout, self.yout):
            for targets in adj.values():
                targets.difference_update(ids)


def _extract_squares(basis: _Basis) -> list[Summand]:
    """Phase one: split off a free square wherever x-then-y is nonzero."""
    found = []
    while True:
        g = next((v for v in sorted(basis.info) if basis.composite(v)), None)
        if g is None:
            return found
        for adj in (basis.xout, basis.yout):
            row = sorted(adj[g])
            piv = row[0]
            for m in row[1:]:
                basis.add_into(piv, m)
            assert adj[g] == {piv}
        px = next(iter(basis.xout[g]))
        py = next(iter(basis.yout[g]))
        zs = sorted(basis.yout[px])
        z = zs[0]
        for m in zs[1:]:
            basis.add_into(z, m)
        assert basis.yout[px] == {z} and basis.xout[py] == {z}
        for u in list(basis.info):
            if u not in (px, g) and basis.cls(u) == basis.cls(px) and z in basis.yout[u]:
                basis.add_into(u, px)
            if u not in (py, g) and basis.cls(u) == basis.cls(py) and z in basis.xout[u]:
                basis.add_into(u, py)
        for v in list(basis.info):
            if v != g and basis.cls(v) == basis.cls(g) and px in basis.xout[v]:
                basis.add_into(v, g)
        orbit = {g, px, py, z}
        for a in basis.info:
            if a in orbit:
                continue
            if (basis.xout[a] | basis.yout[a]) & orbit:
                raise AssertionError("square extraction left a dangling arrow")
        dz, hz = basis.cls(z)
        found.append(Summand("B", dz, 0, hz))
        basis.remove(orbit)


# -- GF(2) subspace helpers on bitmasks ---------------------------------

def _echelon(vectors) -> list[int]:
    piv: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v.bit_length() - 1
            if low in piv:
                v ^= piv[low]
            else:
                piv[low] = v
                break
    return [piv[k] for k in sorted(piv, reverse=True)]


def _reduce(v: int, basis: list[int]) -> int:
    """Reduce v modulo an echelon basis (distinct leading bits, descending)."""
    for b in basis:
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    return v


def _image(basis_vs: list[int], apply) -> list[int]:
    return _echelon([apply(v) for v in basis_vs])


def _preimage(domain: list[int], apply, target: list[int]) -> list[int]:
    """Vectors of the span of ``domain`` whose image lies in ``target``.

    The kernel of ``apply`` is part of the answer.  Computed as the
    kernel of the composite domain -> codomain / target, tracking which
    combination of domain vectors reduces to zero.
    """
    reduced = [_reduce(apply(v), target) for v in domain]
    kernel_combos: list[int] = []
    piv: dict[int, tuple[int, int]] = {}
    for i, w in enumerate(reduced):
        combo = 1 << i
        while w:
            low = w.bit_length() - 1
            if low in piv:
                pw, pc = piv[low]
                w ^= pw
                combo ^= pc
            else:
                break
        if w:
            piv[w.bit_length() - 1] = (w, combo)
        else:
            kernel_combos.append(combo)
    out = []
    for combo in kernel_combos:
        v = 0
        for i, dv in enumerate(domain):
            if (combo >> i) & 1:
                v ^= dv
        out.append(v)
    return _echelon(out)


@dataclass
class _Vertex:
    pos: int
    is_top: bool
    cls: tuple
    space: list[int] = field(default_factory=list)
    width: int = 0


def _string_decomposition(basis: _Basis) -> list[Summand]:
    """Phase two: interval decomposition of the residual zigzag module."""
    classes = basis.classes()
    local: dict[tuple, dict[str, int]] = {
        c: {g: i for i, g in enumerate(ids)} for c, ids in classes.items()
    }

    def mask(c, ids) -> int:
        m = 0
        for g in ids:
            m |= 1 << local[c][g]
        return m

    incoming: dict[tuple, list[int]] = {c: [] for c in classes}
    for g in basis.info:
        for adj in (basis.xout, basis.yout):
            if adj[g]:
                c = basis.cls(next(iter(adj[g])))
                incoming[c].append(mask(c, adj[g]))
    bottom_space = {c: _echelon(v) for c, v in incoming.items()}
    top_space: dict[tuple, list[int]] = {}
    for c, ids in classes.items():
        pivots = {b.bit_length() - 1 for b in bottom_space[c]}
        top_space[c] = [1 << i for i in range(len(ids)) if i not in pivots]

    paths: dict[tuple, dict[int, _Vertex]] = {}
    for c, ids in classes.items():
        (m, h2) = c
        if top_space[c]:
            key, pos = (m, h2[0] + h2[1]), h2[0]
            paths.setdefault(key, {})[pos] = _Vertex(pos, True, c, top_space[c], len(ids))
        if bottom_space[c]:
            key, pos = (m + 1, h2[0] + h2[1] + 2), h2[0] + 1
            paths.setdefault(key, {})[pos] = _Vertex(
                pos, False, c, bottom_space[c], len(ids)
            )

    def apply_map(src: _Vertex, dst: _Vertex, use_x: bool):
        adj = basis.xout if use_x else basis.yout
        ids = classes[src.cls]

        def go(v: int) -> int:
            img: set[str] = set()
            for i, g in enumerate(ids):
                if (v >> i) & 1:
                    img ^= adj[g]
            return mask(dst.cls, img)

        return go

    out: list[Summand] = []
    for (d_top, ssum), verts in paths.items():
        positions = sorted(verts)
        runs: list[list[_Vertex]] = []
        for p in positions:
            if runs and runs[-1][-1].pos == p - 1:
                runs[-1].append(verts[p])
            else:
                runs.append([verts[p]])
        for run in runs:
            out.extend(_run_intervals(run, d_top, ssum, apply_map))
    return out


def _run_intervals(run, d_top, ssum, apply_map) -> list[Summand]:
    """Interval multiplicities over one run of consecutive vertices.

    For every window [a, b] of the run, ``grank(a, b)`` counts the
    interval summands whose support contains the window: it is the rank
    of the canonical map from compatible families over the window to
    the colimit of the window diagram.  A summand supported inside the
    whole window contributes one; a summand missing either end
    evaluates that map to zero.  Inclusion-exclusion over the four
    windows [a or a-1, b or b+1] then isolates the summands supported
    exactly on [a, b].
    """
    m = len(run)
    rmap = [None] * m
    lmap = [None] * m
    for k in range(m):
        if run[k].is_top:
            if k + 1 < m:
                rmap[k] = apply_map(run[k], run[k + 1], use_x=False)
            if k:
                lmap[k] = apply_map(run[k], run[k - 1], use_x=True)

    # right[k][r]: values at vertex k extendable to a family over [k, r]
    right: list[list] = [[None] * m for _ in range(m)]
    for k in range(m - 1, -1, -1):
        right[k][k] = run[k].space
        for r in range(k + 1, m):
            if run[k].is_top:
                right[k][r] = _preimage(run[k].space, rmap[k], right[k + 1][r])
            else:
                right[k][r] = _image(right[k + 1][r], lmap[k + 1])

    # In the window colimit every source slot is identified with its
    # images, leaving the sink slots modulo, per interior source, the
    # sum of its two images.
    def grank(a, b) -> int:
        if a < 0 or b >= m:
            return 0
        if a == b:
            return len(run[a].space)
        offs = {}
        tot = 0
        for k in range(a, b + 1):
            if not run[k].is_top:
                offs[k] = tot
                tot += run[k].width
        rel = []
        for k in range(a + 1, b):
            if run[k].is_top:
                for v in run[k].space:
                    rel.append((lmap[k](v) << offs[k - 1]) ^ (rmap[k](v) << offs[k + 1]))
        flag = right[a][b]
        if run[a].is_top:
            xs = [rmap[a](v) << offs[a + 1] for v in flag]
        else:
            xs = [v << offs[a] for v in flag]
        return len(_echelon(rel + xs)) - len(_echelon(rel))

    table = {}
    for a in range(m):
        for b in range(a, m):
            table[(a, b)] = grank(a, b)

    def tget(a, b) -> int:
        return table.get((a, b), 0)

    found = []
    check = [0] * m
    for l in range(m):
        for r in range(l, m):
            cnt = tget(l, r) - tget(l - 1, r) - tget(l, r + 1) + tget(l - 1, r + 1)
            if cnt < 0:
                raise AssertionError("negative interval multiplicity")
            if cnt == 0:
                continue
            for k in range(l, r + 1):
                check[k] += cnt
            found.extend([_interval_summand(run, l, r, d_top, ssum)] * cnt)
    for k in range(m):
        if check[k] != len(run[k].space):
            raise AssertionError("interval multiplicities do not tile the run")
    return found


def _interval_summand(run, l, r, d_top, ssum) -> Summand:
    a, b = run[l], run[r]
    width = r - l
    if a.is_top and b.is_top:
        lam = width // 2
        return Summand("Y", d_top, lam, (a.pos, ssum - a.pos - 2 * lam))
    if not a.is_top and not b.is_top:
        lam = width // 2
        first = a.pos - 1
        return Summand("X", d_top - 1, lam, (first, ssum - 2 - first - 2 * lam))
    lam = (width + 1) // 2
    if a.is_top:
        return Summand("H", d_top, lam, (a.pos, ssum - a.pos))
    return Summand("V", d_top, lam, (b.pos, ssum - b.pos))


def decompose(cx: FilteredComplex) -> list[Summand]:
    """Split a complex into model summands, or refuse.

    The complex must be a legal filtered complex whose every arrow
    drops a single coordinate by a single step; otherwise the second
    page of the spectral sequence still carries a differential and no
    decomposition into the model shapes exists.
    """
    if cx.nvars != 2:
        raise ValueError("decompose handles two-coordinate complexes")
    rep = validate(cx)
    if not rep:
        raise ValueError(f"not a legal filtered complex: {rep.detail}")
    for a, b in sorted(cx.arrows):
        drop = tuple(p - q for p, q in zip(cx.filt2(a), cx.filt2(b)))
        if drop not in ((2, 0), (0, 2)):
            raise ValueError(
                f"complex is not E₂-collapsed: arrow {a}->{b} moves the filtration "
                f"by ({drop[0]}/2, {drop[1]}/2)"
            )
    basis = _Basis(cx)
    summands = _extract_squares(basis)
    summands += _string_decomposition(basis)
    summands.sort()
    _verify_rebuild(cx, summands)
    return summands


def _verify_rebuild(cx: FilteredComplex, summands) -> None:
    rebuilt = build_sum(summands) if summands else None
    if rebuilt is None:
        if len(cx) == 0:
            return
        raise AssertionError("decomposition lost all generators")
    if rebuilt.counts() != cx.counts():
        raise AssertionError("decomposition does not match the generator counts")
    if total_homology(rebuilt) != total_homology(cx):
        raise AssertionError("decomposition does not match total homology")
    for i in (1, 2):
        a = component_homology(cx, i)
        b = component_homology(rebuilt, i)
        if a.counts() != b.counts() or e_decomposition(a) != e_decomposition(b):
            raise AssertionError(
                f"decomposition does not match the coordinate-{i} homology"
            )
