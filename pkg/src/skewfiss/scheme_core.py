"""Association schemes as concrete relation matrices.

A scheme on n points is stored as an n x n matrix of relation indices in
0..d.  Everything here is verified by counting: the regularity axiom is
checked over all ordered point pairs, never a sample, and the intersection
tensor is the by-product of that count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_POINTS = 65535
MAX_CLASSES = 255


class SchemeError(ValueError):
    pass


class SchemeParseError(SchemeError):
    """Scheme file rejected; carries 1-based line and column of the offence."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class FusionError(SchemeError):
    pass


class AssociationScheme:
    """Relation-index matrix with d nontrivial classes.

    Construction checks only shape and index range; the scheme axioms are
    established by ``verify_axioms``.  The matrix is frozen after
    construction so schemes can be shared across scan workers.
    """

    def __init__(self, rel, d: int | None = None):
        mat = np.asarray(rel, dtype=np.int16)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise SchemeError(f"relation matrix must be square, got shape {mat.shape}")
        n = mat.shape[0]
        if n < 1 or n > MAX_POINTS:
            raise SchemeError(f"point count {n} outside 1..{MAX_POINTS}")
        if d is None:
            d = int(mat.max(initial=0))
        if d < 0 or d > MAX_CLASSES:
            raise SchemeError(f"class count {d} outside 0..{MAX_CLASSES}")
        if mat.min(initial=0) < 0 or int(mat.max(initial=0)) > d:
            raise SchemeError("relation index out of range 0..d")
        mat.setflags(write=False)
        self.n = n
        self.d = d
        self.rel = mat

    def __eq__(self, other) -> bool:
        if not isinstance(other, AssociationScheme):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.rel, other.rel)

    def __repr__(self) -> str:
        return f"AssociationScheme(n={self.n}, d={self.d})"

    def relation_sizes(self) -> list[int]:
        counts = np.bincount(self.rel.ravel(), minlength=self.d + 1)
        return [int(c) for c in counts]

    def transpose_map(self) -> list[int] | None:
        """i -> i' with R_i^T = R_{i'}, or None if transposes are not classes."""
        relT = self.rel.T
        out = [0] * (self.d + 1)
        for i in range(self.d + 1):
            cells = relT[self.rel == i]
            if cells.size == 0:
                return None
            j = int(cells[0])
            if not (cells == j).all():
                return None
            out[i] = j
        if sorted(out) != list(range(self.d + 1)):
            return None
        return out

    def save(self, path: str) -> None:
        save_scheme(self, path)


@dataclass(frozen=True)
class IntersectionTensor:
    """p[i][j][k] together with the valencies k_0..k_d."""

    p: tuple
    valencies: tuple

    @property
    def d(self) -> int:
        return len(self.valencies) - 1

    def __getitem__(self, idx):
        i, j, k = idx
        return self.p[i][j][k]

    def matrix(self, i: int) -> list[list[int]]:
        """The i-th intersection matrix: (j, k) entry p^k_{ij}."""
        m = len(self.valencies)
        return [[self.p[i][j][k] for k in range(m)] for j in range(m)]


@dataclass
class AxiomReport:
    n: int
    d: int
    diagonal_ok: bool = True
    partition_ok: bool = True
    transpose_ok: bool = True
    regular_ok: bool = True
    failures: list = field(default_factory=list)
    transpose_map: list | None = None
    tensor: IntersectionTensor | None = None

    @property
    def ok(self) -> bool:
        return self.diagonal_ok and self.partition_ok and self.transpose_ok and self.regular_ok

    def summary(self) -> str:
        mark = lambda b: "pass" if b else "FAIL"
        lines = [
            f"points n = {self.n}, classes d = {self.d}",
            f"axiom (i)   diagonal relation:        {mark(self.diagonal_ok)}",
            f"axiom (ii)  partition, all nonempty:  {mark(self.partition_ok)}",
            f"axiom (iii) transposes are classes:   {mark(self.transpose_ok)}",
            f"axiom (iv)  constant path counts:     {mark(self.regular_ok)}",
        ]
        lines.extend(f"  - {f}" for f in self.failures)
        return "\n".join(lines)


def _class_masks(s: AssociationScheme) -> list[np.ndarray]:
    return [s.rel == i for i in range(s.d + 1)]


def verify_axioms(s: AssociationScheme) -> AxiomReport:
    """Check all four scheme axioms by counting; O(n^3) via matrix products.

    All axioms are evaluated independently so a perturbed scheme reports
    every violation, not just the first.  On a full pass the report carries
    the intersection tensor computed during the regularity check.
    """
    rep = AxiomReport(n=s.n, d=s.d)
    rel = s.rel
    n, d = s.n, s.d

    diag = np.diagonal(rel)
    if not (diag == 0).all():
        rep.diagonal_ok = False
        x = int(np.nonzero(diag)[0][0])
        rep.failures.append(f"diagonal entry rel[{x}][{x}] = {int(diag[x])} != 0")
    off_diag_zero = (rel == 0) & ~np.eye(n, dtype=bool)
    if off_diag_zero.any():
        rep.diagonal_ok = False
        x, y = (int(v[0]) for v in np.nonzero(off_diag_zero))
        rep.failures.append(f"off-diagonal entry rel[{x}][{y}] = 0")

    sizes = np.bincount(rel.ravel(), minlength=d + 1)
    for i in range(d + 1):
        if sizes[i] == 0:
            rep.partition_ok = False
            rep.failures.append(f"relation {i} is empty")

    tmap = s.transpose_map()
    if tmap is None:
        rep.transpose_ok = False
        rep.failures.append("some relation's transpose is not a relation")
    rep.transpose_map = tmap

    masks = _class_masks(s)
    floats = [m.astype(np.float64) for m in masks]
    p = [[[0] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    regular = True
    for i in range(d + 1):
        for j in range(d + 1):
            counts = floats[i] @ floats[j]
            for k in range(d + 1):
                cells = counts[masks[k]]
                if cells.size == 0:
                    continue
                lo, hi = cells.min(), cells.max()
                if lo != hi:
                    regular = False
                    rep.failures.append(
                        f"count of (R_{i}, R_{j}) paths over R_{k} pairs varies: "
                        f"{int(lo)} .. {int(hi)}"
                    )
                else:
                    p[i][j][k] = int(lo)
    rep.regular_ok = regular

    if rep.ok:
        valencies = tuple(int(p[i][tmap[i]][0]) for i in range(d + 1))
        frozen = tuple(tuple(tuple(row) for row in plane) for plane in p)
        rep.tensor = IntersectionTensor(p=frozen, valencies=valencies)
    return rep


def intersection_tensor(s: AssociationScheme) -> IntersectionTensor:
    rep = verify_axioms(s)
    if not rep.ok:
        raise SchemeError("not an association scheme:\n" + rep.summary())
    return rep.tensor


def is_skew_symmetric(s: AssociationScheme) -> bool:
    """True iff no nontrivial relation equals its own transpose."""
    tmap = s.transpose_map()
    if tmap is None:
        raise SchemeError("transposes of relations are not relations")
    return all(tmap[i] != i for i in range(1, s.d + 1))


def _orbit_partition(tmap: list[int]) -> list[list[int]]:
    """Orbits of the transpose involution, ordered by smallest member."""
    seen = set()
    blocks = []
    for i in range(len(tmap)):
        if i in seen:
            continue
        block = sorted({i, tmap[i]})
        seen.update(block)
        blocks.append(block)
    return blocks


def symmetrize(s: AssociationScheme) -> AssociationScheme:
    """Merge every relation with its transpose; verified before returning."""
    tmap = s.transpose_map()
    if tmap is None:
        raise SchemeError("transposes of relations are not relations")
    blocks = _orbit_partition(tmap)
    return fuse(s, blocks)


def check_partition(s: AssociationScheme, blocks: list[list[int]]) -> list[int]:
    """Validate an admissible partition; return the index -> block-id map."""
    flat = [i for b in blocks for i in b]
    if sorted(flat) != list(range(s.d + 1)):
        raise FusionError(f"blocks {blocks} do not partition 0..{s.d}")
    if sorted(blocks[0]) != [0]:
        raise FusionError("block 0 must be the singleton {0}")
    tmap = s.transpose_map()
    if tmap is None:
        raise SchemeError("transposes of relations are not relations")
    block_sets = [frozenset(b) for b in blocks]
    for b in block_sets:
        image = frozenset(tmap[i] for i in b)
        if image not in block_sets:
            raise FusionError(f"partition not admissible: transpose of block {sorted(b)} "
                              f"is {sorted(image)}, not a block")
    owner = [0] * (s.d + 1)
    for bid, b in enumerate(blocks):
        for i in b:
            owner[i] = bid
    return owner


def fuse(s: AssociationScheme, blocks: list[list[int]]) -> AssociationScheme:
    """Merge relations along an admissible partition; the result is re-verified.

    Admissibility does not guarantee a scheme, so a failed regularity check
    raises FusionError rather than returning a broken object.
    """
    owner = check_partition(s, blocks)
    lut = np.array(owner, dtype=np.int16)
    fused = AssociationScheme(lut[s.rel], d=len(blocks) - 1)
    rep = verify_axioms(fused)
    if not rep.ok:
        raise FusionError("admissible partition does not yield a scheme:\n" + rep.summary())
    return fused


def imprimitive_blocks(s: AssociationScheme) -> list[list[int]]:
    """All proper nontrivial unions of classes (with the diagonal) that are
    equivalence relations; empty list means the scheme is primitive."""
    tmap = s.transpose_map()
    if tmap is None:
        raise SchemeError("transposes of relations are not relations")
    orbits = [b for b in _orbit_partition(tmap) if 0 not in b]
    masks = _class_masks(s)
    found = []
    for pick in range(1, (1 << len(orbits)) - 1):
        idx = sorted({0} | {i for bit, orb in enumerate(orbits) if pick >> bit & 1 for i in orb})
        union = np.zeros((s.n, s.n), dtype=bool)
        for i in idx:
            union |= masks[i]
        # union is reflexive and symmetric by construction; transitivity:
        # the support of union @ union must not leave union
        reach = union.astype(np.float64) @ union.astype(np.float64) > 0
        if (reach == union).all():
            found.append(idx)
    return found


# -- scheme file format (.ascm) ---------------------------------------------
#
# UTF-8 text.  Line 1: "n d".  Lines 2..n+1: n space-separated relation
# indices in 0..d.  Relation 0 must be the diagonal.


def save_scheme(s: AssociationScheme, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{s.n} {s.d}\n")
        for row in s.rel:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def load_scheme(path: str) -> AssociationScheme:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise SchemeParseError("empty file", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise SchemeParseError(f"header must be 'n d', got {lines[0]!r}", 1)
    try:
        n, d = int(head[0]), int(head[1])
    except ValueError:
        raise SchemeParseError(f"header must be two integers, got {lines[0]!r}", 1) from None
    if not (1 <= n <= MAX_POINTS):
        raise SchemeParseError(f"n = {n} outside 1..{MAX_POINTS}", 1)
    if not (0 <= d <= MAX_CLASSES):
        raise SchemeParseError(f"d = {d} outside 0..{MAX_CLASSES}", 1)
    if len(lines) < n + 1:
        raise SchemeParseError(f"expected {n} matrix rows, file has {len(lines) - 1}", len(lines))
    rel = np.zeros((n, n), dtype=np.int16)
    for r in range(n):
        fields = lines[r + 1].split()
        if len(fields) != n:
            raise SchemeParseError(f"expected {n} entries, got {len(fields)}", r + 2)
        for c, tok in enumerate(fields):
            try:
                v = int(tok)
            except ValueError:
                raise SchemeParseError(f"not an integer: {tok!r}", r + 2, c + 1) from None
            if not (0 <= v <= d):
                raise SchemeParseError(f"relation index {v} outside 0..{d}", r + 2, c + 1)
            if (v == 0) != (r == c):
                raise SchemeParseError("relation 0 must be exactly the diagonal", r + 2, c + 1)
            rel[r, c] = v
    return AssociationScheme(rel, d=d)
