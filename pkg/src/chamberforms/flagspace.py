"""Independent oracle: exterior-algebra vectors attached to bounded topes.

Each bounded tope A yields a vector phi(A) supported on the bases of the
central matroid whose feasible cocircuit is a face of A; the Gram matrix of
these vectors under the monomial pairing must reproduce the intersection
matrix S, each phi(A) must lie in the kernel of the simplicial boundary, and
together they must form a Z-basis of that kernel (unit Smith divisors).

For realizable inputs the module also builds the square sign matrix y (and
its q-version) indexed by generic-functional-bounded regions and bases.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .arrangement import Arrangement
from .matroid import top_mu_plus
from .oriented_matroid import AffineOrientedMatroid, SignVector, conforms, separation
from .polyring import IntPoly, PolyMatrix, ZERO, int_det, poly_det, poly_eval


@dataclass(frozen=True)
class FlagVector:
    """Coordinates in the sorted-monomial basis, indexed by matroid bases."""

    coords: dict

    def support(self) -> set:
        return {b for b, c in self.coords.items() if c}


def phi(om: AffineOrientedMatroid, tope: SignVector) -> FlagVector:
    """Signed sum over bases whose feasible cocircuit conforms to the tope.

    Coefficient at basis b is prod_{i in b} tope(i) times the chirotope sign
    of b sorted in ground order.
    """
    ground = om.ground
    order = {e: i for i, e in enumerate(ground)}
    tsigns = dict(zip(ground, tope.signs()))
    coords = {}
    for b in om.matroid().bases:
        y = om.basis_to_cocircuit(b)
        if not conforms(y, tope):
            continue
        coeff = om.central.sign(sorted(b, key=order.__getitem__))
        for e in b:
            coeff *= tsigns[e]
        coords[b] = coeff
    return FlagVector(coords)


def pairing(u: FlagVector, v: FlagVector) -> int:
    small, large = (u.coords, v.coords) if len(u.coords) <= len(v.coords) \
        else (v.coords, u.coords)
    return sum(c * large.get(b, 0) for b, c in small.items())


def boundary(om: AffineOrientedMatroid, v: FlagVector) -> dict:
    """Simplicial boundary into (r-1)-subset coordinates."""
    order = {e: i for i, e in enumerate(om.ground)}
    out: dict = {}
    for b, c in v.coords.items():
        if not c:
            continue
        elems = sorted(b, key=order.__getitem__)
        for k, e in enumerate(elems):
            key = b - {e}
            out[key] = out.get(key, 0) + (c if k % 2 == 0 else -c)
    return {k: c for k, c in out.items() if c}


def smith_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors of an integer matrix, divisibility chain."""
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    divisors = []
    t = 0
    while t < min(n_rows, n_cols):
        pos = min(((i, j) for i in range(t, n_rows) for j in range(t, n_cols)
                   if m[i][j] != 0),
                  key=lambda ij: abs(m[ij[0]][ij[1]]), default=None)
        if pos is None:
            break
        i0, j0 = pos
        m[t], m[i0] = m[i0], m[t]
        for row in m:
            row[t], row[j0] = row[j0], row[t]
        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, n_rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        dirty = True
            # clear the pivot row
            for j in range(t + 1, n_cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the submatrix
            bad = next(((i, j) for i in range(t + 1, n_rows)
                        for j in range(t + 1, n_cols)
                        if m[i][j] % m[t][t] != 0), None)
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        divisors.append(abs(m[t][t]))
        t += 1
    return divisors


@dataclass(frozen=True)
class KernelReport:
    n_topes: int
    n_bases: int
    kernel_flags: tuple[bool, ...]
    phi_divisors: tuple[int, ...]
    phi_rank: int
    mu_plus_dual: int
    boundary_kernel_dim: int
    failures: tuple[str, ...]

    def ok(self) -> bool:
        return not self.failures


def check_basis_of_kernel(om: AffineOrientedMatroid,
                          max_bases: int = 500) -> KernelReport:
    """Verify the three kernel-basis clauses, with witnesses on failure."""
    m = om.matroid()
    bases = sorted(m.bases, key=lambda b: sorted(m.ground.index(e) for e in b))
    if len(bases) > max_bases:
        raise ValueError(f"kernel check guarded at {max_bases} bases")
    topes = om.bounded_topes()
    failures = []

    vectors = [phi(om, t) for t in topes]
    flags = tuple(not boundary(om, v) for v in vectors)
    for t, good in zip(topes, flags):
        if not good:
            failures.append(f"boundary of phi({t.key()}) is nonzero")

    matrix = [[v.coords.get(b, 0) for b in bases] for v in vectors]
    divisors = tuple(smith_divisors(matrix)) if matrix else ()
    rank = len(divisors)
    mu_dual = top_mu_plus(m.dual())
    if rank != len(topes):
        failures.append(f"phi matrix rank {rank} != {len(topes)} bounded topes")
    if mu_dual != len(topes):
        failures.append(
            f"mu+ of the dual matroid is {mu_dual} != {len(topes)} bounded topes")
    if any(d != 1 for d in divisors):
        failures.append(f"phi matrix divisors {divisors} are not all 1")

    r = om.central.rank
    subsets = list(combinations(m.ground, r - 1))
    col = {frozenset(s): j for j, s in enumerate(subsets)}
    bmatrix = []
    order = {e: i for i, e in enumerate(m.ground)}
    for b in bases:
        row = [0] * len(subsets)
        elems = sorted(b, key=order.__getitem__)
        for k, e in enumerate(elems):
            row[col[b - {e}]] = 1 if k % 2 == 0 else -1
        bmatrix.append(row)
    kernel_dim = len(bases) - len(smith_divisors(bmatrix)) if bmatrix else 0
    if kernel_dim != len(topes):
        failures.append(
            f"boundary kernel dimension {kernel_dim} != {len(topes)} bounded topes")

    return KernelReport(len(topes), len(bases), flags, divisors, rank,
                        mu_dual, kernel_dim, tuple(failures))


@dataclass(frozen=True)
class YMatrixReport:
    xi: tuple[int, ...]
    bases: tuple[tuple, ...]
    regions: tuple[SignVector, ...]
    y: tuple[tuple[int, ...], ...]
    yq: PolyMatrix
    det_y: int
    seed: int
    draws: int
    region_of_basis: dict = field(repr=False, default_factory=dict)


def _region_of_basis(arr: Arrangement, xi: Sequence[int],
                     b: frozenset) -> SignVector:
    """Sign vector of the xi-bounded region whose optimum sits at vertex b."""
    ground = arr.ground
    idx = {e: i for i, e in enumerate(ground)}
    signs = [0] * len(ground)
    p = arr.vertices()[b]
    for j, (row, c) in enumerate(zip(arr.int_normals, arr.scaled_offsets)):
        v = sum(a * x for a, x in zip(row, p)) - c
        signs[j] = (v > 0) - (v < 0)
    for e in b:
        j = idx[e]
        others = sorted(idx[f] for f in b if f != e)
        v = arr.kernel_direction(others)
        pairing_xi = sum(a * x for a, x in zip(xi, v))
        if pairing_xi == 0:
            raise ValueError("functional not generic on an edge direction")
        if pairing_xi > 0:
            v = tuple(-x for x in v)
        s = sum(a * x for a, x in zip(arr.int_normals[j], v))
        assert s != 0, "edge direction cannot be parallel to its own hyperplane"
        signs[j] = 1 if s > 0 else -1
    return SignVector.from_signs(ground, signs)


def build_y_matrix(arr: Arrangement, seed: int,
                   max_draws: int = 64) -> YMatrixReport:
    """Square sign matrix between functional-bounded regions and bases.

    Draws a generic integer linear functional from the seed (rejecting any
    draw vanishing on an edge direction), builds the optimum bijection from
    bases to bounded regions, and certifies det y = +-1.
    """
    om = arr.compile()
    m = om.matroid()
    order = {e: i for i, e in enumerate(arr.ground)}
    bases = sorted(m.bases, key=lambda b: sorted(order[e] for e in b))

    directions = []
    for sub in combinations(range(len(arr.ground)), arr.dim - 1):
        try:
            directions.append(arr.kernel_direction(sub))
        except ValueError:
            continue  # rank-deficient subset spans no line

    rng = random.Random(seed)
    xi = None
    draws = 0
    while draws < max_draws:
        draws += 1
        cand = tuple(rng.randint(-10 ** 4, 10 ** 4) for _ in range(arr.dim))
        if all(sum(a * x for a, x in zip(cand, v)) != 0 for v in directions) \
                and any(cand):
            xi = cand
            break
    if xi is None:
        raise ValueError(
            f"no generic functional found in {max_draws} draws; try another seed")

    region_of = {b: _region_of_basis(arr, xi, b) for b in bases}
    regions = sorted(region_of.values(), key=SignVector.key)
    if len({t.bits for t in regions}) != len(bases):
        raise ValueError("optimum map is not injective: functional not generic")
    bounded = set(t.bits for t in om.bounded_topes())
    if not bounded <= {t.bits for t in regions}:
        raise ValueError("a bounded tope is missing from the functional-bounded set")

    y_rows = []
    q_rows = []
    for t in regions:
        y_row = []
        q_row = []
        for b in bases:
            y_b = om.basis_to_cocircuit(b)
            if conforms(y_b, t):
                d = separation(t, region_of[b])
                y_row.append((-1) ** d)
                q_row.append(IntPoly((0,) * d + ((-1) ** d,)))
            else:
                y_row.append(0)
                q_row.append(ZERO)
        y_rows.append(tuple(y_row))
        q_rows.append(q_row)

    det_y = int_det(y_rows)
    if det_y not in (1, -1):
        raise ValueError(f"det y = {det_y}, expected +-1")
    labels = tuple(t.key() for t in regions)
    yq = PolyMatrix(labels, q_rows)
    basis_tuples = tuple(tuple(sorted(b, key=order.__getitem__)) for b in bases)
    return YMatrixReport(xi, basis_tuples, tuple(regions), tuple(y_rows), yq,
                         det_y, seed, draws, dict(region_of))


def expansion_matches_y(om: AffineOrientedMatroid, rep: YMatrixReport) -> list[str]:
    """Check phi(A) rows against y rows on bounded topes, in adapted coordinates.

    In the basis e'_b = (prod_{i in b} region(b)(i)) e_b the coefficient of
    phi(A) at b must be (-1)^d(A, region(b)) exactly when the cocircuit of b
    is a face of A.
    """
    failures = []
    m = om.matroid()
    order = {e: i for i, e in enumerate(om.ground)}
    bounded = {t.bits for t in om.bounded_topes()}
    pos_of = {t.bits: i for i, t in enumerate(rep.regions)}
    for t in om.bounded_topes():
        v = phi(om, t)
        row = rep.y[pos_of[t.bits]]
        for jb, bt in enumerate(rep.bases):
            b = frozenset(bt)
            coeff = v.coords.get(b, 0)
            if coeff:
                chi = om.central.sign(sorted(b, key=order.__getitem__))
                unit = chi
                rsigns = dict(zip(om.ground, rep.region_of_basis[b].signs()))
                for e in b:
                    unit *= rsigns[e]
                coeff *= unit  # change to the adapted unit basis
            if coeff != row[jb]:
                failures.append(
                    f"phi({t.key()}) coefficient at {bt} is {coeff}, y row has {row[jb]}")
    assert bounded <= set(pos_of), "bounded topes must be functional-bounded"
    return failures
