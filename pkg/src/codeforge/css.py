"""CSS stabilizer codes as paired GF(2) blocks.

A code is (hx, hz) with hx hz^T = 0; hx rows detect Z errors, hz rows
detect X errors.  Optional syndrome-check matrices hsx/hsz protect the
measured syndromes themselves (hsx annihilates hx, hsz annihilates hz).
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from . import classical, f2, matio
from .classical import UNDEFINED, LowerBound


class CssValidationError(ValueError):
    """Raised for anticommuting stabilizers or broken syndrome checks."""


class NoLogicalsError(ValueError):
    """Raised when a distance is requested for a k = 0 code."""


@dataclass
class PauliError:
    """Binary-pair representation of a Pauli operator.

    Y on qubit i sets both ex[i] and ez[i]; weight counts qubits where
    either bit is set.
    """

    ex: np.ndarray
    ez: np.ndarray

    def __post_init__(self):
        self.ex = f2.as_f2_vector(self.ex)
        self.ez = f2.as_f2_vector(self.ez)
        if self.ex.shape != self.ez.shape:
            raise ValueError("ex and ez lengths differ")

    @classmethod
    def identity(cls, n: int) -> "PauliError":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def single(cls, n: int, qubit: int, pauli: str) -> "PauliError":
        """Weight-1 error: pauli in {'X', 'Y', 'Z'} on the given qubit."""
        e = cls.identity(n)
        if pauli in ("X", "Y"):
            e.ex[qubit] = 1
        if pauli in ("Z", "Y"):
            e.ez[qubit] = 1
        if pauli not in ("X", "Y", "Z"):
            raise ValueError(f"unknown Pauli {pauli!r}")
        return e

    def __mul__(self, other: "PauliError") -> "PauliError":
        """Group product (phases dropped): bitwise XOR of both sectors."""
        return PauliError(self.ex ^ other.ex, self.ez ^ other.ez)

    @property
    def n(self) -> int:
        return self.ex.shape[0]

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.ex | self.ez))


@dataclass
class Syndrome:
    """Measured check outcomes: sx from Z-error bits, sz from X-error bits."""

    sx: np.ndarray
    sz: np.ndarray

    def __add__(self, other: "Syndrome") -> "Syndrome":
        return Syndrome(self.sx ^ other.sx, self.sz ^ other.sz)

    @property
    def weight(self) -> int:
        return f2.weight(self.sx) + f2.weight(self.sz)


class CssCode:
    """Paired check blocks plus optional syndrome checks and metadata.

    Attributes:
        hx: X-type checks (detect Z errors).
        hz: Z-type checks (detect X errors).
        hsx: Optional checks on the hx syndrome (hsx @ hx = 0).
        hsz: Optional checks on the hz syndrome (hsz @ hz = 0).
        metadata: Free-form dict (family name, premise flags, d_s, ...).
    """

    def __init__(self, hx, hz, hsx=None, hsz=None, metadata=None):
        self.hx = f2.as_f2(hx)
        self.hz = f2.as_f2(hz)
        self.hsx = None if hsx is None else f2.as_f2(hsx)
        self.hsz = None if hsz is None else f2.as_f2(hsz)
        self.metadata = dict(metadata or {})

    @property
    def n(self) -> int:
        return self.hx.shape[1]

    def check_counts(self) -> tuple[int, int]:
        return self.hx.shape[0], self.hz.shape[0]

    def stabilizer_weight(self) -> int:
        """Max row weight across both blocks (reported, never enforced)."""
        weights = [int(r.sum()) for r in self.hx] + [int(r.sum()) for r in self.hz]
        return max(weights, default=0)

    def __repr__(self):
        fam = self.metadata.get("family", "css")
        return f"<CssCode {fam} n={self.n} checks={self.check_counts()}>"


def validate_css(c: CssCode) -> None:
    """Check commutation and (when exact) syndrome-check annihilation.

    Raises:
        CssValidationError: naming the first offending row pair, or the
            failing syndrome-check block.
    """
    if c.hx.shape[1] != c.hz.shape[1]:
        raise CssValidationError(
            f"qubit count mismatch: hx has {c.hx.shape[1]} cols, hz {c.hz.shape[1]}")
    if c.metadata.get("paired_rows"):
        # rotated code: row i of hx and row i of hz are one stabilizer;
        # commutation is the symplectic condition m + m^T = 0, m = hx hz^T
        m = f2.mat_mul(c.hx, c.hz.T)
        comm = m ^ m.T
    else:
        comm = f2.mat_mul(c.hx, c.hz.T)
    if comm.any():
        i, j = map(int, np.argwhere(comm)[0])
        raise CssValidationError(f"anticommuting stabilizers: hx row {i}, hz row {j}")
    if c.metadata.get("syndrome_checks_exact", True):
        if c.hsx is not None and f2.mat_mul(c.hsx, c.hx).any():
            raise CssValidationError("hsx does not annihilate hx")
        if c.hsz is not None and f2.mat_mul(c.hsz, c.hz).any():
            raise CssValidationError("hsz does not annihilate hz")


def logical_count(c: CssCode) -> int:
    """k = n - rank(hz) - rank(hx); for rotated paired-row codes the two
    blocks are halves of one generator set and the joint rank is used."""
    validate_css(c)
    if c.metadata.get("paired_rows"):
        return c.n - f2.rank(np.concatenate([c.hx, c.hz], axis=1))
    return c.n - f2.rank(c.hz) - f2.rank(c.hx)


def syndrome(c: CssCode, e: PauliError) -> Syndrome:
    """sx = hx @ ez, sz = hz @ ex."""
    if e.n != c.n:
        raise ValueError(f"error length {e.n} != qubit count {c.n}")
    return Syndrome(f2.mat_vec(c.hx, e.ez), f2.mat_vec(c.hz, e.ex))


def distance(c: CssCode, kind: str, max_weight: int):
    """Minimum weight of a kernel element outside the opposite row space.

    Args:
        c: The code (must validate, k >= 1).
        kind: 'X' scans ker hx minus rowspace(hz); 'Z' the mirror.
        max_weight: Search cap; supports are enumerated by increasing
            weight, each kernel hit tested for stabilizer-coset exclusion.

    Returns:
        Exact distance if found within the cap, else LowerBound(max_weight).
    """
    if kind not in ("X", "Z"):
        raise ValueError("kind must be 'X' or 'Z'")
    if logical_count(c) < 1:
        raise NoLogicalsError("code has no logical qubits")
    ker_of = c.hx if kind == "X" else c.hz
    excl = f2.RowSpaceTester(c.hz if kind == "X" else c.hx)
    n = c.n
    for w in range(1, max_weight + 1):
        hits = []
        for supp in classical.kernel_supports_of_weight(ker_of, w):
            v = np.zeros(n, dtype=np.uint8)
            v[list(supp)] = 1
            hits.append(v)
        if hits:
            member = excl.contains_batch(np.array(hits, dtype=np.uint8))
            if not member.all():
                return w
    return LowerBound(max_weight)


def tanner_components(c: CssCode, kind: str) -> list[tuple[set, set]]:
    """Connected components of the check/qubit bipartite graph of one block.

    Args:
        c: The code.
        kind: 'X' for hx, 'Z' for hz.

    Returns:
        List of (qubit-index set, check-index set) pairs; isolated qubits
        and empty checks form singleton components.
    """
    m = c.hx if kind == "X" else c.hz
    rows, cols = m.shape
    # union-find over rows [0, rows) and qubits [rows, rows + cols)
    parent = list(range(rows + cols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in np.argwhere(m):
        ra, rb = find(int(i)), find(rows + int(j))
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, tuple[set, set]] = {}
    for i in range(rows):
        groups.setdefault(find(i), (set(), set()))[1].add(i)
    for j in range(cols):
        groups.setdefault(find(rows + j), (set(), set()))[0].add(j)
    return sorted(groups.values(), key=lambda qc: (min(qc[0] | {cols}), min(qc[1] | {rows})))


def export_bundle(c: CssCode, outdir, extra: dict | None = None) -> None:
    """Write the code as a four-file alist bundle plus a JSON manifest."""
    os.makedirs(outdir, exist_ok=True)
    files = {"hx": c.hx, "hz": c.hz}
    if c.hsx is not None:
        files["hsx"] = c.hsx
    if c.hsz is not None:
        files["hsz"] = c.hsz
    for name, m in files.items():
        matio.write_alist(m, os.path.join(outdir, f"{name}.alist"))
    manifest = {
        "qubits": c.n,
        "checks_x": c.hx.shape[0],
        "checks_z": c.hz.shape[0],
        "stabilizer_weight": c.stabilizer_weight(),
        "files": sorted(f"{name}.alist" for name in files),
        "metadata": _jsonable(c.metadata),
    }
    manifest.update(_jsonable(extra or {}))
    with open(os.path.join(outdir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_bundle(indir) -> CssCode:
    """Read a bundle written by export_bundle."""
    with open(os.path.join(indir, "manifest.json")) as fh:
        manifest = json.load(fh)

    def opt(name):
        path = os.path.join(indir, f"{name}.alist")
        return matio.read_alist(path) if os.path.exists(path) else None

    return CssCode(matio.read_alist(os.path.join(indir, "hx.alist")),
                   matio.read_alist(os.path.join(indir, "hz.alist")),
                   hsx=opt("hsx"), hsz=opt("hsz"),
                   metadata=manifest.get("metadata", {}))


def _jsonable(obj):
    """Best-effort conversion of metadata values to JSON-safe types."""
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, LowerBound):
        return {"lower_bound": obj.value}
    if obj is UNDEFINED:
        return "undefined"
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj
