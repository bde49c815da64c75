"""Exact arithmetic over Z and Z[q]: q-integers and fraction-free determinants.

Polynomials are dense integer-coefficient vectors in the single variable q.
All arithmetic is exact; products are computed by Kronecker substitution
(packing coefficients into one Python bignum) so that the heavy lifting runs
at C speed, and exact divisions are verified by a guaranteed re-multiply.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence


class ExactDivisionError(ArithmeticError):
    """A polynomial division expected to be exact was not.

    This always indicates an internal arithmetic bug, never bad user input.
    """


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPoly:
    """Immutable polynomial over Z, coeffs[k] = coefficient of q**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("IntPoly is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self):
        """Degree, or None for the zero polynomial (never a valid index)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return IntPoly(out)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        if len(a) == 1:
            return IntPoly(tuple(a[0] * c for c in b))
        if len(b) == 1:
            return IntPoly(tuple(b[0] * c for c in a))
        n = len(a) + len(b) - 1
        if min(len(a), len(b)) <= 4 or len(a) * len(b) <= 256:
            # short operands: convolution beats packing overhead
            out = [0] * n
            if len(a) > len(b):
                a, b = b, a
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return IntPoly(out)
        bits = _pack_bits(a, b)
        prod = _pack(a, bits) * _pack(b, bits)
        return IntPoly(_unpack(prod, bits, n))

    def scaled(self, c: int) -> "IntPoly":
        return IntPoly(tuple(c * x for x in self.coeffs))

    def shifted(self, k: int) -> "IntPoly":
        """Multiply by q**k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __call__(self, x: int) -> int:
        return poly_eval(self, x)

    # -- presentation --------------------------------------------------------

    def coeff_strings(self) -> list[str]:
        """Report form: decimal coefficient strings, constant term first."""
        return [str(c) for c in self.coeffs] if self.coeffs else ["0"]

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}q" if k == 1 else f"{mag}q^{k}"
                parts.append(term if c > 0 else "-" + term)
        s = " + ".join(parts).replace("+ -", "- ")
        return s


ZERO = IntPoly()
ONE = IntPoly((1,))


def const(c: int) -> IntPoly:
    return IntPoly((c,))


# -- Kronecker packing -------------------------------------------------------

def _pack_bits(a: Sequence[int], b: Sequence[int]) -> int:
    """Slot width so product coefficients unpack without collision."""
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(len(a), len(b))
    return bound.bit_length() + 2


def _pack(coeffs: Sequence[int], bits: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = (v << bits) + c
    return v


def _unpack(v: int, bits: int, n: int) -> list[int]:
    half = 1 << (bits - 1)
    full = 1 << bits
    mask = full - 1
    out = []
    for _ in range(n):
        d = v & mask
        if d >= half:
            d -= full
        out.append(d)
        v = (v - d) >> bits
    if v:
        raise ExactDivisionError("Kronecker unpack left a nonzero tail")
    return out


def _long_division(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact schoolbook division over Z; O(len(quotient) * len(divisor))."""
    rem = list(a)
    lb = len(b)
    lead = b[-1]
    nq = len(a) - lb + 1
    q = [0] * nq
    for i in range(nq - 1, -1, -1):
        c = rem[i + lb - 1]
        if c:
            qi, r = divmod(c, lead)
            if r:
                raise ExactDivisionError("inexact polynomial division")
            q[i] = qi
            for j in range(lb):
                rem[i + j] -= qi * b[j]
    if any(rem):
        raise ExactDivisionError("inexact polynomial division")
    return q


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a/b when b divides a in Z[q]; ExactDivisionError otherwise."""
    if b.is_zero():
        raise ExactDivisionError("division by zero polynomial")
    if a.is_zero():
        return ZERO
    la, lb = len(a.coeffs), len(b.coeffs)
    if la < lb:
        raise ExactDivisionError("degree of dividend below divisor")
    nq = la - lb + 1
    if nq <= 16 or la <= 16:
        # short quotient: long division is cheaper and self-verifying
        return IntPoly(_long_division(a.coeffs, b.coeffs))
    ma = max(abs(c) for c in a.coeffs)
    mb = max(abs(c) for c in b.coeffs)
    bits = max(ma, mb).bit_length() + 4
    # The packed map Z[q] -> Z is a ring hom, so when b | a the integer
    # quotient is the packed image of a/b; only the unpacking width needs
    # guessing.  Verify by re-multiplying (itself exact) and widen on failure.
    for _ in range(8):
        try:
            digits = _unpack(_pack(a.coeffs, bits) // _pack(b.coeffs, bits), bits, nq)
            q = IntPoly(digits)
        except ExactDivisionError:
            bits *= 2
            continue
        if q * b == a:
            return q
        bits *= 2
    raise ExactDivisionError("inexact polynomial division")


# -- spec operations ---------------------------------------------------------

def q_integer(n: int) -> IntPoly:
    """[n] in the q**2 variable: 1 + q^2 + ... + q^(2n-2)."""
    if n < 1:
        raise ValueError(f"q_integer requires n >= 1, got {n}")
    coeffs = [0] * (2 * n - 1)
    coeffs[::2] = [1] * n
    return IntPoly(coeffs)


def poly_eval(p: IntPoly, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_pow(p: IntPoly, e: int) -> IntPoly:
    if e < 0:
        raise ValueError("negative exponent")
    out = ONE
    for _ in range(e):
        out = out * p
    return out


class PolyMatrix:
    """Square matrix over Z[q] with distinct, ordered row/column labels."""

    __slots__ = ("labels", "entries")

    def __init__(self, labels: Sequence, entries: Sequence[Sequence[IntPoly]]):
        labels = tuple(labels)
        entries = tuple(tuple(row) for row in entries)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct")
        if len(entries) != len(labels) or any(len(r) != len(labels) for r in entries):
            raise ValueError("matrix must be square with one row per label")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *_):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def evaluated(self, x: int) -> list[list[int]]:
        return [[poly_eval(e, x) for e in row] for row in self.entries]


def _bareiss(rows, one, zero, is_zero, mul, sub, div):
    """Generic fraction-free elimination; returns the determinant."""
    n = len(rows)
    if n == 0:
        return one
    m = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not is_zero(m[i][k])), None)
        if piv is None:
            return zero  # all-zero column short-circuits
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = div(sub(mul(pivot, row_i[j]), mul(mik, row_k[j])), prev)
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign == 1 else sub(zero, d)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("int_det requires a square grid")

    def div(a, b):
        q, r = divmod(a, b)
        if r:
            raise ExactDivisionError("Bareiss integer division was inexact")
        return q

    return _bareiss(rows, 1, 0, lambda a: a == 0,
                    lambda a, b: a * b, lambda a, b: a - b, div)


def poly_det(m) -> IntPoly:
    """Exact determinant over Z[q], cross-checked at q in {1, 2, 3}.

    Accepts a PolyMatrix or a plain square grid of IntPoly.
    """
    rows = m.entries if isinstance(m, PolyMatrix) else tuple(tuple(r) for r in m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("poly_det requires a square matrix")
    if all(len(e.coeffs) <= 1 for row in rows for e in row):
        return const(int_det([[e[0] for e in row] for row in rows]))
    det = _bareiss(rows, ONE, ZERO, IntPoly.is_zero,
                   IntPoly.__mul__, IntPoly.__sub__, exact_div)
    for t in (1, 2, 3):
        pointwise = int_det([[poly_eval(e, t) for e in row] for row in rows])
        if pointwise != poly_eval(det, t):
            raise ExactDivisionError(
                f"determinant cross-check failed at q={t}: "
                f"{pointwise} != {poly_eval(det, t)}")
    return det


def det_by_expansion(rows: Sequence[Sequence[IntPoly]]) -> IntPoly:
    """Signed permutation-sum determinant; independent oracle for small n."""
    n = len(rows)
    total = ZERO
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n)
                  if perm[i] > perm[j])
        term = ONE
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + (term if inv % 2 == 0 else -term)
    return total
