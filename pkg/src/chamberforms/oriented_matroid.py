"""Sign-vector combinatorics: chirotopes, cocircuits, topes and face counts.

Sign vectors are packed two bits per element into a single int (00 zero,
01 plus, 10 minus), so composition, conformity and separation are a few
machine-word operations even for long ground sets.  The affine structure
keeps the lift element implicit: feasible cocircuits and topes carry lift
sign +, infinite cocircuits carry lift sign 0.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

from .matroid import Matroid

PLUS, ZERO_SIGN, MINUS = 1, 0, -1

_CODE = {0: 0, 1: 1, -1: 2}
_SIGN = {0: 0, 1: 1, 2: -1}
_CHAR = {0: "0", 1: "+", 2: "-"}


class ClosureCapExceeded(RuntimeError):
    """Composition closure grew past the configured covector cap."""


def _odd_mask(n: int) -> int:
    # 0b0101...01 with n slots
    return ((1 << (2 * n)) - 1) // 3


class SignVector:
    """Total sign assignment on an ordered ground set, packed into one int."""

    __slots__ = ("ground", "bits")

    def __init__(self, ground: tuple, bits: int):
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *_):
        raise AttributeError("SignVector is immutable")

    @classmethod
    def from_signs(cls, ground: Sequence, signs: Iterable[int]) -> "SignVector":
        ground = tuple(ground)
        bits = 0
        shift = 0
        count = 0
        for s in signs:
            bits |= _CODE[s] << shift
            shift += 2
            count += 1
        if count != len(ground):
            raise ValueError("sign count does not match ground size")
        return cls(ground, bits)

    @classmethod
    def from_text(cls, ground: Sequence, text: str) -> "SignVector":
        """Parse the support token form, e.g. "5 6 -7 -8"."""
        ground = tuple(ground)
        idx = {str(e): i for i, e in enumerate(ground)}
        signs = [0] * len(ground)
        for tok in text.split():
            neg = tok.startswith("-")
            name = tok[1:] if neg else tok
            if name not in idx:
                raise ValueError(f"unknown element {name!r} in sign vector text")
            if signs[idx[name]] != 0:
                raise ValueError(f"element {name!r} listed twice")
            signs[idx[name]] = -1 if neg else 1
        return cls.from_signs(ground, signs)

    # -- views -----------------------------------------------------------------

    def sign(self, e) -> int:
        i = self.ground.index(e)
        return _SIGN[(self.bits >> (2 * i)) & 3]

    def signs(self) -> tuple[int, ...]:
        b = self.bits
        out = []
        for _ in self.ground:
            out.append(_SIGN[b & 3])
            b >>= 2
        return tuple(out)

    def support(self) -> tuple:
        return tuple(e for e, s in zip(self.ground, self.signs()) if s != 0)

    def zero_set(self) -> frozenset:
        return frozenset(e for e, s in zip(self.ground, self.signs()) if s == 0)

    def is_full_support(self) -> bool:
        n = len(self.ground)
        odd = _odd_mask(n)
        return ((self.bits | self.bits >> 1) & odd) == odd

    def key(self) -> str:
        """Canonical sort key: '+' < '-' < '0' in ground order."""
        return "".join(_CHAR[(self.bits >> (2 * i)) & 3]
                       for i in range(len(self.ground)))

    def text(self) -> str:
        toks = [("-" if s < 0 else "") + str(e)
                for e, s in zip(self.ground, self.signs()) if s != 0]
        return " ".join(toks)

    def __neg__(self) -> "SignVector":
        n = len(self.ground)
        odd = _odd_mask(n)
        b = self.bits
        return SignVector(self.ground, ((b & odd) << 1) | ((b >> 1) & odd))

    def __eq__(self, other):
        return (isinstance(other, SignVector)
                and self.ground == other.ground and self.bits == other.bits)

    def __hash__(self):
        return hash((self.ground, self.bits))

    def __repr__(self):
        return f"SignVector({self.key()})"


def _nz2(bits: int, odd: int) -> int:
    nz = (bits | bits >> 1) & odd
    return nz | (nz << 1)


def compose(x: SignVector, y: SignVector) -> SignVector:
    """(x o y)(e) = x(e) if x(e) != 0 else y(e)."""
    if x.ground != y.ground:
        raise ValueError("sign vectors live on different ground sets")
    odd = _odd_mask(len(x.ground))
    return SignVector(x.ground, x.bits | (y.bits & ~_nz2(x.bits, odd)))


def conforms(x: SignVector, t: SignVector) -> bool:
    """True iff x(e) in {0, t(e)} for every e (x is a face candidate of t)."""
    if x.ground != t.ground:
        raise ValueError("sign vectors live on different ground sets")
    odd = _odd_mask(len(x.ground))
    return (t.bits & _nz2(x.bits, odd)) == x.bits


def separation(a: SignVector, b: SignVector) -> int:
    """Number of ground elements where the signs differ."""
    if a.ground != b.ground:
        raise ValueError("sign vectors live on different ground sets")
    v = a.bits ^ b.bits
    odd = _odd_mask(len(a.ground))
    return bin((v | v >> 1) & odd).count("1")


def _perm_parity(seq: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
              if seq[i] > seq[j])
    return -1 if inv % 2 else 1


class Chirotope:
    """Basis orientation: alternating sign map on r-tuples of the ground."""

    __slots__ = ("rank", "ground", "_signs", "_index")

    def __init__(self, rank: int, ground: Sequence, signs: dict):
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "ground", tuple(ground))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(ground)})
        object.__setattr__(self, "_signs", dict(signs))
        if all(v == 0 for v in self._signs.values()):
            raise ValueError("chirotope must not be identically zero")
        expected = set(combinations(range(len(self.ground)), rank))
        if set(self._signs) != expected:
            raise ValueError("chirotope must assign a sign to every lex r-subset")

    def __setattr__(self, *_):
        raise AttributeError("Chirotope is immutable")

    @classmethod
    def from_text(cls, rank: int, ground: Sequence, text: str) -> "Chirotope":
        subs = list(combinations(range(len(ground)), rank))
        if len(text) != len(subs):
            raise ValueError(
                f"chirotope text needs {len(subs)} characters, got {len(text)}")
        decode = {"+": 1, "-": -1, "0": 0}
        try:
            signs = {s: decode[ch] for s, ch in zip(subs, text)}
        except KeyError as exc:
            raise ValueError(f"invalid chirotope character {exc.args[0]!r}") from None
        return cls(rank, ground, signs)

    def text(self) -> str:
        subs = combinations(range(len(self.ground)), self.rank)
        encode = {1: "+", -1: "-", 0: "0"}
        return "".join(encode[self._signs[s]] for s in subs)

    def sign(self, elements: Sequence) -> int:
        """Alternating extension: stored sign times permutation parity."""
        idx = [self._index[e] for e in elements]
        if len(idx) != self.rank:
            raise ValueError(f"chirotope takes {self.rank}-tuples")
        if len(set(idx)) != len(idx):
            return 0
        base = self._signs[tuple(sorted(idx))]
        return base * _perm_parity(idx) if base else 0

    def bases(self) -> list[frozenset]:
        return [frozenset(self.ground[i] for i in s)
                for s, v in sorted(self._signs.items()) if v != 0]

    def to_matroid(self) -> Matroid:
        return Matroid(self.ground, self.bases())


def chirotope_sign(c: Chirotope, ordered_tuple: Sequence) -> int:
    return c.sign(ordered_tuple)


def cocircuits_from_chirotope(c: Chirotope) -> list[SignVector]:
    """One canonical representative per +/- cocircuit pair.

    For each (r-1)-subset s of full rank the candidate Y(j) = chi(s, j);
    rank-deficient subsets produce the zero vector and are skipped.
    """
    ground = c.ground
    n = len(ground)
    seen = set()
    out = []
    for s in combinations(range(n), c.rank - 1):
        signs = [0] * n
        selem = [ground[i] for i in s]
        for j in range(n):
            if j in s:
                continue
            signs[j] = c.sign(selem + [ground[j]])
        sv = SignVector.from_signs(ground, signs)
        if sv.bits == 0:
            continue
        canon = sv if _first_nonzero_positive(sv) else -sv
        if canon.bits not in seen:
            seen.add(canon.bits)
            out.append(canon)
    _check_support_minimality(out)
    return sorted(out, key=SignVector.key)


def _first_nonzero_positive(sv: SignVector) -> bool:
    b = sv.bits
    while b:
        code = b & 3
        if code:
            return code == 1
        b >>= 2
    return True


def _check_support_minimality(cocircuits: Sequence[SignVector]) -> None:
    supports = [frozenset(sv.support()) for sv in cocircuits]
    for i, si in enumerate(supports):
        for j, sj in enumerate(supports):
            if i != j and sj < si:
                raise ValueError(
                    f"support of {cocircuits[i].key()} strictly contains "
                    f"{cocircuits[j].key()}: not cocircuits")


class FVector(NamedTuple):
    """Face counts f_0..f_dim of a bounded meet, by face dimension."""

    dim: int
    f: tuple[int, ...]

    def euler_ok(self) -> bool:
        return sum((-1) ** i * fi for i, fi in enumerate(self.f)) == 1


class AffineOrientedMatroid:
    """Central chirotope plus cocircuits split by their sign at the lift.

    feasible carries the cocircuits with lift sign +; infinite pairs (lift
    sign 0) are the cocircuits of the central oriented matroid, stored as
    one canonical representative each.
    """

    DEFAULT_CAP = 10 ** 6

    def __init__(self, chirotope: Chirotope, feasible: Sequence[SignVector],
                 g="g", cap: int = DEFAULT_CAP):
        self.central = chirotope
        self.ground = chirotope.ground
        self.g = g
        if g in self.ground:
            raise ValueError("lift element must be distinct from the ground set")
        self.feasible = tuple(sorted(feasible, key=SignVector.key))
        self.infinite = tuple(cocircuits_from_chirotope(chirotope))
        self.cap = cap
        self._matroid: Optional[Matroid] = None
        self._bounded: Optional[tuple[SignVector, ...]] = None
        self._by_zero_set: dict[frozenset, SignVector] = {}
        self._rank_memo: dict[int, int] = {}
        self._validate()

    def _validate(self):
        bases = set(self.matroid().bases)
        zero_sets = []
        for y in self.feasible:
            if y.ground != self.ground:
                raise ValueError("feasible cocircuit on wrong ground set")
            z = y.zero_set()
            if z not in bases:
                raise ValueError(
                    f"genericity violated: zero set {set(z)} of feasible "
                    f"cocircuit {y.text()!r} is not a basis")
            zero_sets.append(z)
            self._by_zero_set[z] = y
        if len(set(zero_sets)) != len(zero_sets):
            raise ValueError("two feasible cocircuits share a zero set")
        if len(zero_sets) != len(bases):
            raise ValueError(
                f"bijectivity violated: {len(zero_sets)} feasible cocircuits "
                f"vs {len(bases)} bases")

    def matroid(self) -> Matroid:
        if self._matroid is None:
            self._matroid = self.central.to_matroid()
        return self._matroid

    def basis_to_cocircuit(self, b: Iterable) -> SignVector:
        y = self._by_zero_set.get(frozenset(b))
        if y is None:
            raise ValueError(f"no feasible cocircuit with zero set {set(b)}")
        return y

    def cocircuit_pool(self) -> list[SignVector]:
        """All cocircuits of the lift: feasible plus both infinite signs."""
        out = list(self.feasible)
        for y in self.infinite:
            out.append(y)
            out.append(-y)
        return out

    def _zero_rank(self, bits: int) -> int:
        r = self._rank_memo.get(bits)
        if r is None:
            sv = SignVector(self.ground, bits)
            r = self.matroid().rank(sv.zero_set())
            self._rank_memo[bits] = r
        return r

    # -- tope enumeration --------------------------------------------------------

    def _closure_bits(self) -> set[int]:
        """Composition closure of the feasible cocircuits (the affine faces)."""
        n = len(self.ground)
        odd = _odd_mask(n)
        gen = [y.bits for y in self.feasible]
        states = set(gen)
        frontier = list(gen)
        while frontier:
            nxt = []
            for x in frontier:
                x_keep = ~_nz2(x, odd)
                for y in gen:
                    z = x | (y & x_keep)
                    if z not in states:
                        states.add(z)
                        nxt.append(z)
                if len(states) > self.cap:
                    raise ClosureCapExceeded(
                        f"covector closure exceeded cap {self.cap}")
            frontier = nxt
        return states

    def affine_covectors(self) -> list[SignVector]:
        """All faces of the affine part, as sign vectors on the ground set.

        Computed as the composition closure of every cocircuit of the lift,
        keeping the covectors whose lift sign is +; the lift sign is tracked
        explicitly, so central covectors (lift sign 0) are not conflated with
        affine ones that restrict to the same signs.
        """
        n = len(self.ground)
        odd = _odd_mask(n + 1)
        g_plus = 1 << (2 * n)
        gen = [y.bits | g_plus for y in self.feasible]
        for y in self.infinite:
            gen.append(y.bits)
            gen.append((-y).bits)
        states = set(gen)
        frontier = list(gen)
        while frontier:
            nxt = []
            for x in frontier:
                x_keep = ~_nz2(x, odd)
                for y in gen:
                    z = x | (y & x_keep)
                    if z not in states:
                        states.add(z)
                        nxt.append(z)
                if len(states) > self.cap:
                    raise ClosureCapExceeded(
                        f"covector closure exceeded cap {self.cap}")
            frontier = nxt
        mask = g_plus - 1
        return sorted((SignVector(self.ground, b & mask) for b in states
                       if b & g_plus), key=SignVector.key)

    def bounded_topes(self) -> list[SignVector]:
        if self._bounded is None:
            n = len(self.ground)
            odd = _odd_mask(n)
            inf_bits = [y.bits for y in self.infinite]
            inf_bits += [(-y).bits for y in self.infinite]
            topes = []
            for x in self._closure_bits():
                if ((x | x >> 1) & odd) != odd:
                    continue  # not full support
                if any((x & _nz2(y, odd)) == y for y in inf_bits):
                    continue  # an infinite cocircuit is a face: unbounded
                topes.append(SignVector(self.ground, x))
            self._bounded = tuple(sorted(topes, key=SignVector.key))
        return list(self._bounded)

    def cocircuit_faces(self, t: SignVector) -> list[SignVector]:
        return [y for y in self.cocircuit_pool() if conforms(y, t)]

    # -- serialization -----------------------------------------------------------

    @classmethod
    def from_json(cls, doc: dict, cap: int = DEFAULT_CAP) -> "AffineOrientedMatroid":
        try:
            rank = int(doc["rank"])
            elements = tuple(str(e) for e in doc["elements"])
            chi = Chirotope.from_text(rank, elements, doc["chirotope"])
            lift = doc["lift"]
            g = str(lift.get("g", "g"))
            feasible = [SignVector.from_text(elements, t)
                        for t in lift["feasible_cocircuits"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed oriented-matroid JSON: missing {exc}") from None
        return cls(chi, feasible, g=g, cap=cap)

    def to_json(self) -> dict:
        return {
            "rank": self.central.rank,
            "elements": list(self.ground),
            "chirotope": self.central.text(),
            "lift": {"g": self.g,
                     "feasible_cocircuits": [y.text() for y in self.feasible]},
        }

    def meet_faces(self, a: SignVector, b: SignVector) -> Optional[FVector]:
        """F-vector of the common face of bounded topes a and b, or None.

        Faces are all compositions of cocircuits conforming to both topes;
        the dimension of a face is r minus the central rank of its zero set.
        """
        odd = _odd_mask(len(self.ground))
        ta, tb = a.bits, b.bits
        common = [y.bits for y in self.feasible
                  if (ta & _nz2(y.bits, odd)) == y.bits
                  and (tb & _nz2(y.bits, odd)) == y.bits]
        if not common:
            return None
        faces = set(common)
        frontier = list(common)
        while frontier:
            nxt = []
            for x in frontier:
                x_keep = ~_nz2(x, odd)
                for y in common:
                    z = x | (y & x_keep)
                    if z not in faces:
                        faces.add(z)
                        nxt.append(z)
            frontier = nxt
        r = self.central.rank
        top = 0
        for y in common:
            top |= y
        dim_top = r - self._zero_rank(top)
        counts = [0] * (dim_top + 1)
        for x in faces:
            counts[r - self._zero_rank(x)] += 1
        fv = FVector(dim_top, tuple(counts))
        assert fv.f[dim_top] == 1, "meet must be the unique top face"
        return fv
