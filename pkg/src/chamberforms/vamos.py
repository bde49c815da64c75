"""The affine Vamos oriented matroid fixture.

The fixture is specified by its 65 feasible cocircuits (the published lift
of the Vamos oriented matroid by the cobasis {3,6,7,8}).  Each cocircuit
lists its four nonzero elements; the zero set is the complementary
4-subset and must be a basis, so the 65 zero sets determine the underlying
rank-4 matroid (the five missing 4-subsets are its circuits).

The central chirotope is not given explicitly; it is recovered here from
the cocircuit signs.  For a basis b and j outside b, the feasible cocircuit
with zero set b satisfies Y_b(j) = chi(b) * chi~(b, j) where chi~ is the
rank-5 chirotope of the lift and chi(b) = chi~(b, g).  Running j over a
5-subset s containing two bases couples their chi values, so a spanning
propagation fixes chi up to a global sign and the remaining equations
(heavily overdetermined) certify consistency of the data and conventions.
"""

from __future__ import annotations

from itertools import combinations

from .oriented_matroid import AffineOrientedMatroid, Chirotope, SignVector

GROUND = tuple(str(i) for i in range(1, 9))

# Feasible cocircuits, four nonzero entries each ("-" marks negative).
COCIRCUITS = (
    "5 6 -7 -8", "4 6 -7 8", "4 -5 7 8", "4 -5 6 8", "4 5 6 -7",
    "-3 -6 -7 -8", "-3 5 -7 -8", "-3 -5 -6 8", "-3 -5 -6 -7", "-3 4 -7 8",
    "-3 -4 -6 -8", "-3 4 -6 -7", "-3 4 -5 8", "-3 4 5 -7", "-3 -4 -5 -6",
    "-2 6 -7 8", "-2 -5 -7 8", "-2 -5 -6 8", "-2 5 6 -7", "2 4 6 8",
    "-2 -4 6 -7", "-2 4 -5 8", "-2 -4 -5 -7", "-2 -3 -7 8", "2 -3 -6 -8",
    "-2 -3 -6 -7", "2 -3 5 -8", "-2 -3 5 -7", "2 -3 -5 -6", "2 -3 4 8",
    "-2 -3 -4 -7", "2 -3 4 -6", "2 -3 4 5", "1 -6 7 8", "1 5 7 8",
    "1 5 6 8", "1 5 6 -7", "1 4 7 8", "1 4 6 8", "1 -4 -6 7",
    "-1 4 -5 8", "1 -4 5 7", "1 -4 5 6", "1 -3 -6 8", "1 -3 -6 -7",
    "1 -3 5 8", "1 -3 5 -7", "1 -3 4 8", "-1 -3 4 -7", "1 -3 -4 -6",
    "1 -3 -4 5", "1 -2 7 8", "1 -2 6 8", "-1 -2 6 -7", "1 -2 -5 8",
    "1 2 5 7", "1 2 5 6", "1 -2 -4 8", "1 -2 -4 -7", "1 -2 -4 -6",
    "1 -2 -4 5", "1 -2 -3 8", "-1 -2 -3 -7", "1 2 -3 -6", "1 2 -3 5",
)

# Bounded topes of the lift, published alongside the cocircuits.
BOUNDED_TOPES = (
    "1 2 -3 -4 -5 -6 -7 -8", "1 -2 -3 4 -5 -6 -7 -8", "1 2 -3 4 -5 -6 -7 -8",
    "1 -2 -3 4 5 -6 -7 -8", "1 2 -3 4 5 -6 -7 -8", "1 -2 -3 4 5 6 -7 -8",
    "1 2 -3 -4 -5 -6 -7 8", "1 -2 -3 4 -5 -6 -7 8", "1 2 -3 4 -5 -6 -7 8",
    "-1 -2 -3 -4 5 -6 -7 8", "1 -2 -3 -4 5 -6 -7 8", "1 2 -3 -4 5 -6 -7 8",
    "-1 -2 -3 4 5 -6 -7 8", "1 -2 -3 4 5 -6 -7 8", "1 2 -3 4 5 -6 -7 8",
    "1 -2 -3 -4 -5 6 -7 8", "1 -2 -3 4 -5 6 -7 8", "1 2 -3 4 -5 6 -7 8",
    "-1 -2 -3 -4 5 6 -7 8", "1 -2 -3 -4 5 6 -7 8", "1 2 -3 -4 5 6 -7 8",
    "1 -2 -3 4 5 6 -7 8", "1 -2 -3 -4 5 -6 7 8", "1 -2 -3 4 5 -6 7 8",
    "1 -2 -3 -4 -5 6 7 8", "-1 -2 -3 4 -5 6 7 8", "1 -2 -3 4 -5 6 7 8",
    "1 -2 -3 -4 5 6 7 8", "1 2 -3 -4 5 6 7 8", "1 -2 -3 4 5 6 7 8",
)


def feasible_cocircuits() -> list[SignVector]:
    return [SignVector.from_text(GROUND, t) for t in COCIRCUITS]


def derive_chirotope() -> Chirotope:
    """Recover the central chirotope from the cocircuit signs."""
    cocs = feasible_cocircuits()
    by_zero = {}
    for y in cocs:
        z = tuple(sorted(GROUND.index(e) for e in y.zero_set()))
        if len(z) != 4 or z in by_zero:
            raise ValueError("cocircuit zero sets must be 65 distinct 4-subsets")
        by_zero[z] = y.signs()

    # c(b, j): the chi-independent part of the equation chi~(s) = c * chi(b)
    def coupling(b: tuple, j: int) -> int:
        pos = sum(1 for x in b if x < j)
        parity = -1 if (4 - pos) % 2 else 1
        return parity * by_zero[b][j]

    chi: dict[tuple, int] = {}
    start = min(by_zero)
    chi[start] = 1
    frontier = [start]
    while frontier:
        nxt = []
        for b in frontier:
            for j in range(8):
                if j in b:
                    continue
                s = tuple(sorted(b + (j,)))
                for jp in s:
                    bp = tuple(x for x in s if x != jp)
                    if bp not in by_zero or bp in chi:
                        continue
                    # chi(b) c(b,j) = chi(bp) c(bp,jp); couplings are units
                    chi[bp] = chi[b] * coupling(b, j) * coupling(bp, jp)
                    nxt.append(bp)
        frontier = nxt
    if len(chi) != len(by_zero):
        raise ValueError("basis exchange graph is disconnected; cannot propagate")

    # every 5-subset must now give one consistent lift value
    for s in combinations(range(8), 5):
        vals = {chi[b] * coupling(b, j)
                for j in s
                for b in (tuple(x for x in s if x != j),)
                if b in by_zero}
        if len(vals) > 1:
            raise ValueError(f"inconsistent chirotope data on 5-subset {s}")

    signs = {sub: chi.get(sub, 0) for sub in combinations(range(8), 4)}
    return Chirotope(4, GROUND, signs)


def affine_vamos() -> AffineOrientedMatroid:
    return AffineOrientedMatroid(derive_chirotope(), feasible_cocircuits())


def fixture_json() -> dict:
    return {
        "rank": 4,
        "elements": list(GROUND),
        "chirotope": derive_chirotope().text(),
        "lift": {"g": "g", "feasible_cocircuits": list(COCIRCUITS)},
    }
