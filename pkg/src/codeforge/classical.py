"""Classical linear codes over GF(2): parameters, transpose codes, stock
constructions, and the direct product of two codes.

A code is the kernel of its parity-check matrix h; parameters are
[n, k, d] with n = cols(h), k = n - rank(h), d the minimum weight of a
nonzero kernel element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import f2


class _Undefined:
    """Tagged sentinel for the distance of a k = 0 code."""

    def __repr__(self):
        return "undefined"


UNDEFINED = _Undefined()


@dataclass(frozen=True)
class LowerBound:
    """Distance search outcome 'd > value' when the weight cap was hit."""

    value: int

    def __repr__(self):
        return f"> {self.value}"


def kernel_supports_of_weight(m, w: int):
    """Yield every support (sorted column tuple) of a weight-w kernel vector.

    Uses packed column bitmasks with a meet-in-the-middle pair table for
    w <= 4; falls back to plain combinations for larger w (small n only).

    Args:
        m: Check matrix.
        w: Exact Hamming weight to search, w >= 1.
    """
    m = f2.as_f2(m)
    n = m.shape[1]
    if w > n:
        return
    cols = f2.columns_as_ints(m)
    if w == 1:
        for j in range(n):
            if cols[j] == 0:
                yield (j,)
    elif w == 2:
        by_val: dict[int, list[int]] = {}
        for j, c in enumerate(cols):
            by_val.setdefault(c, []).append(j)
        for group in by_val.values():
            for i, j in itertools.combinations(group, 2):
                yield (i, j)
    elif w == 3:
        by_val = {}
        for j, c in enumerate(cols):
            by_val.setdefault(c, []).append(j)
        for i, j in itertools.combinations(range(n), 2):
            for k in by_val.get(cols[i] ^ cols[j], ()):
                if k > j:
                    yield (i, j, k)
    elif w == 4:
        pair_val: dict[int, list[tuple[int, int]]] = {}
        for i, j in itertools.combinations(range(n), 2):
            pair_val.setdefault(cols[i] ^ cols[j], []).append((i, j))
        for k, l in itertools.combinations(range(n), 2):
            for i, j in pair_val.get(cols[k] ^ cols[l], ()):
                if j < k:
                    yield (i, j, k, l)
    else:
        for supp in itertools.combinations(range(n), w):
            acc = 0
            for j in supp:
                acc ^= cols[j]
            if acc == 0:
                yield supp


def min_kernel_weight(m, max_weight: int | None = None,
                      enum_limit: int = 20) -> int | LowerBound | _Undefined:
    """Minimum weight of a nonzero kernel element of m.

    Strategy: when the kernel dimension is small enough, enumerate all
    2^k - 1 codewords from the RREF basis (gray-code order, one XOR per
    step); otherwise search supports by increasing weight up to max_weight
    and report a lower bound if nothing is found.

    Returns:
        The exact distance, a LowerBound, or UNDEFINED when the kernel is
        trivial.
    """
    m = f2.as_f2(m)
    basis = f2.kernel_basis(m)
    k = basis.shape[0]
    if k == 0:
        return UNDEFINED
    if k <= enum_limit:
        best = None
        cur = np.zeros(m.shape[1], dtype=np.uint8)
        for idx in range(1, 2 ** k):
            # gray code: flip the basis row at the lowest set bit of idx
            cur = cur ^ basis[(idx & -idx).bit_length() - 1]
            wt = f2.weight(cur)
            if best is None or wt < best:
                best = wt
        return int(best)
    cap = max_weight if max_weight is not None else m.shape[1]
    for w in range(1, cap + 1):
        for _ in kernel_supports_of_weight(m, w):
            return w
    return LowerBound(cap)


class ClassicalCode:
    """A parity-check matrix plus lazily cached parameters.

    Attributes:
        h: Check matrix, shape (m, n).
        name: Optional human-readable tag used in manifests.
    """

    def __init__(self, h, name: str = ""):
        self.h = f2.as_f2(h)
        self.name = name
        self._rank: int | None = None

    @property
    def n(self) -> int:
        return self.h.shape[1]

    @property
    def k(self) -> int:
        if self._rank is None:
            self._rank = f2.rank(self.h)
        return self.n - self._rank

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<ClassicalCode{label} n={self.n} k={self.k}>"


def params(c: ClassicalCode, max_weight: int | None = None):
    """Exact (n, k, d-or-flag) for a classical code.

    Args:
        c: The code.
        max_weight: Weight cap for the support search fallback; ignored when
            full codeword enumeration is feasible.

    Returns:
        (n, k, d) with d an int when exact, LowerBound when capped, or
        UNDEFINED for k = 0.
    """
    if max_weight is not None and max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    return c.n, c.k, min_kernel_weight(c.h, max_weight)


def transpose_code(c: ClassicalCode) -> ClassicalCode:
    """The code checked by h transposed; length = rows(h)."""
    return ClassicalCode(c.h.T.copy(), name=f"{c.name}^T" if c.name else "")


def repetition_closed_loop(n: int) -> ClassicalCode:
    """Ring-arranged repetition code: n x n circulant with rows e_i + e_{i+1}.

    Rank n - 1; both the kernel and the transpose kernel are {0, all-ones},
    which is the premise the syndrome-encoded families rely on.

    Raises:
        ValueError: if n < 2.
    """
    if n < 2:
        raise ValueError("repetition ring needs n >= 2")
    h = f2.zeros(n, n)
    for i in range(n):
        h[i, i] = 1
        h[i, (i + 1) % n] = 1
    return ClassicalCode(h, name=f"rep{n}")


def repetition_open(n: int) -> ClassicalCode:
    """Full-rank (n-1) x n repetition check with rows e_i + e_{i+1}."""
    if n < 2:
        raise ValueError("repetition code needs n >= 2")
    h = f2.zeros(n - 1, n)
    for i in range(n - 1):
        h[i, i] = 1
        h[i, i + 1] = 1
    return ClassicalCode(h, name=f"rep{n}open")


def hamming_7_4() -> ClassicalCode:
    """The [7,4,3] Hamming code with columns 1..7 in binary."""
    h = f2.as_f2([
        [0, 0, 0, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [1, 0, 1, 0, 1, 0, 1],
    ])
    return ClassicalCode(h, name="hamming74")


def direct_product(c1: ClassicalCode, c2: ClassicalCode) -> ClassicalCode:
    """Code of n1 x n2 matrices with columns in c1 and rows in c2.

    The check matrix is the stack [h1 (x) I_{n2} ; I_{n1} (x) h2]; a kernel
    vector reshaped row-major to (n1, n2) has every column in c1 and every
    row in c2, and conversely.  Parameters multiply: [n1 n2, k1 k2, d1 d2].
    """
    upper = f2.kron(c1.h, f2.identity(c2.n))
    lower = f2.kron(f2.identity(c1.n), c2.h)
    h = f2.block_compose([[upper], [lower]])
    name = f"{c1.name}x{c2.name}" if (c1.name or c2.name) else ""
    return ClassicalCode(h, name=name)
