"""Soundness certification for syndrome maps and single-shot decoding.

A map d is (t, f)-sound when every achievable syndrome s with |s| <= t has
a preimage of weight at most f(|s|).  This module scans finite instances
exhaustively, reduces Pauli errors over their stabilizer coset, and runs
the two-stage decoder (syndrome repair, then data decode) used by the
single-shot experiments.

Bounds are compared in exact rational arithmetic; no floats.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import f2
from .classical import LowerBound
from .css import CssCode, PauliError


def quarter_square(x: int) -> Fraction:
    """f(x) = x^2 / 4."""
    return Fraction(x * x, 4)


def quarter_cube(x: int) -> Fraction:
    """g(x) = x^3 / 4."""
    return Fraction(x ** 3, 4)


quarter_square.fname = "quarter_square"
quarter_cube.fname = "quarter_cube"

# CLI spellings
F_BY_NAME = {
    "x2over4": quarter_square,
    "x3over4": quarter_cube,
    "quarter_square": quarter_square,
    "quarter_cube": quarter_cube,
}


class LemmaContradictionError(AssertionError):
    """A scan that is guaranteed clean by an inherited bound found a
    violation; this signals an implementation bug, not a bad code."""


def _pack_vec(v: np.ndarray) -> int:
    """Pack a binary vector into an int, consistent with columns_as_ints."""
    return f2.columns_as_ints(f2.as_f2_vector(v).reshape(-1, 1))[0]


class SupportMatcher:
    """Weight-ordered search for entry subsets whose values XOR to a target.

    Entries are (group, tag, packed-int) triples; a valid support uses
    strictly increasing group ids, so at most one entry per group.  Plain
    column searches use group = column index; Pauli searches put the X, Z
    and Y columns of one qubit in the same group.
    """

    def __init__(self, entries: list[tuple[int, object, int]]):
        self.entries = sorted(entries)
        self._singles: dict[int, list[tuple[int, object]]] | None = None

    def _single_table(self):
        if self._singles is None:
            self._singles = {}
            for g, tag, v in self.entries:
                self._singles.setdefault(v, []).append((g, tag))
        return self._singles

    def find(self, target: int, weight: int, min_group: int = -1):
        """One support of exactly the given weight, or None.

        Cost grows as n^(weight-1) dictionary probes; intended for small
        weights (the scans cap at 4 or 5).
        """
        if weight == 0:
            return [] if target == 0 else None
        if weight == 1:
            for g, tag in self._single_table().get(target, ()):
                if g > min_group:
                    return [(g, tag)]
            return None
        for g, tag, v in self.entries:
            if g <= min_group:
                continue
            rest = self.find(target ^ v, weight - 1, g)
            if rest is not None:
                return [(g, tag)] + rest
        return None

    def find_min(self, target: int, cap: int):
        """(weight, support) of a minimum-weight match, or (None, None)."""
        for w in range(cap + 1):
            got = self.find(target, w)
            if got is not None:
                return w, got
        return None, None


class StabilizerModel:
    """Uniform symplectic view of a stabilizer code for decoding.

    Each measured check i has an X part and a Z part (one of them zero for
    ordinary CSS rows); its outcome on error (ex, ez) is
    xpart_i . ez + zpart_i . ex.  Lazily cached:

      * coset membership matrix (annihilator of the generator rows), used
        for reduced weights and logical detection;
      * the syndrome map and its Pauli column matcher, for data decoding;
      * the valid-syndrome annihilator, the numeric stand-in for the
        syndrome-check matrices, for syndrome repair.
    """

    def __init__(self, xpart, zpart):
        self.xpart = f2.as_f2(xpart)
        self.zpart = f2.as_f2(zpart)
        if self.xpart.shape != self.zpart.shape:
            raise ValueError("X and Z parts must have identical shape")
        self.m, self.n = self.xpart.shape
        self._coset = None
        self._decode = None
        self._meta = None

    @classmethod
    def from_code(cls, code) -> "StabilizerModel":
        """Build from a CssCode or any object with stab_x/stab_z sides."""
        if isinstance(code, CssCode):
            if code.metadata.get("paired_rows"):
                return cls(code.hx, code.hz)
            mx, mz = code.hx.shape[0], code.hz.shape[0]
            n = code.n
            xpart = np.concatenate([code.hx, f2.zeros(mz, n)])
            zpart = np.concatenate([f2.zeros(mx, n), code.hz])
            return cls(xpart, zpart)
        return cls(code.stab_x, code.stab_z)

    def syndrome(self, e: PauliError) -> np.ndarray:
        return f2.mat_vec(self.xpart, e.ez) ^ f2.mat_vec(self.zpart, e.ex)

    # generator rows in (ex | ez) coordinates: multiplying a stabilizer
    # into an error XORs its X part into ex and its Z part into ez
    def _gens(self) -> np.ndarray:
        return np.concatenate([self.xpart, self.zpart], axis=1)

    def _coset_tools(self):
        if self._coset is None:
            member = f2.kernel_basis(self._gens())
            cols = f2.columns_as_ints(member)
            entries = []
            for q in range(self.n):
                cx, cz = cols[q], cols[self.n + q]
                entries += [(q, "X", cx), (q, "Z", cz), (q, "Y", cx ^ cz)]
            self._coset = (member, SupportMatcher(entries))
        return self._coset

    def _decode_tools(self):
        if self._decode is None:
            smap = np.concatenate([self.zpart, self.xpart], axis=1)
            cols = f2.columns_as_ints(smap)
            entries = []
            for q in range(self.n):
                cx, cz = cols[q], cols[self.n + q]
                entries += [(q, "X", cx), (q, "Z", cz), (q, "Y", cx ^ cz)]
            self._decode = SupportMatcher(entries)
        return self._decode

    def _meta_tools(self):
        """(annihilator K of the valid-syndrome space, column matcher).

        A syndrome s is achievable exactly when K s = 0; repairing a noisy
        readout means matching K s with few flipped outcome bits.
        """
        if self._meta is None:
            smap = np.concatenate([self.zpart, self.xpart], axis=1)
            ann = f2.kernel_basis(smap.T)
            cols = f2.columns_as_ints(ann)
            self._meta = (ann, SupportMatcher(
                [(i, i, cols[i]) for i in range(self.m)]))
        return self._meta

    def is_stabilizer(self, e: PauliError) -> bool:
        member, _ = self._coset_tools()
        vec = np.concatenate([e.ex, e.ez])
        return not f2.mat_vec(member, vec).any()

    def reduced_weight(self, e: PauliError, budget: int = 4):
        """Minimum Pauli weight over the stabilizer coset of e.

        Weight-ordered search: a coset element of weight w exists iff some
        w qubits carry Paulis whose membership columns XOR to the class
        label of e.  Exact when found within budget, else a lower bound.
        """
        member, matcher = self._coset_tools()
        target = _pack_vec(f2.mat_vec(member, np.concatenate([e.ex, e.ez])))
        w, _ = matcher.find_min(target, budget)
        return LowerBound(budget) if w is None else w

    def min_weight_decode(self, s: np.ndarray, budget: int = 4):
        """Minimum-weight Pauli error with the given syndrome, or None."""
        matcher = self._decode_tools()
        w, supp = matcher.find_min(_pack_vec(s), budget)
        if w is None:
            return None
        e = PauliError.identity(self.n)
        for q, p in supp:
            e = e * PauliError.single(self.n, q, p)
        return e

    def repair_syndrome(self, s: np.ndarray, budget: int = 4):
        """Minimum outcome flips making s achievable: (repaired, u_hat)."""
        ann, matcher = self._meta_tools()
        resid = f2.mat_vec(ann, s)
        u_hat = np.zeros(self.m, dtype=np.uint8)
        if resid.any():
            w, supp = matcher.find_min(_pack_vec(resid), budget)
            if w is None:
                return None, None
            for i, _ in supp:
                u_hat[i] = 1
        return s ^ u_hat, u_hat


@dataclass
class SoundnessReport:
    """Outcome of a bounded soundness scan.

    Attributes:
        t_scanned: Largest syndrome weight enumerated.
        f_name: Name of the bounding function.
        violations: (preimage-or-syndrome support, syndrome weight,
            reduced weight) for every scanned failure of the bound.
        max_ratio: max over scanned nonzero syndromes of
            reduced-weight / f(weight).
        partial: True when some achievable syndrome exhausted the preimage
            search cap, so its entry is only a lower bound.
        per_weight: syndrome weight -> worst min-preimage weight seen.
    """

    t_scanned: int
    f_name: str
    violations: list = field(default_factory=list)
    max_ratio: Fraction = Fraction(0)
    partial: bool = False
    per_weight: dict = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.violations and not self.partial


def direct_sum(a, b) -> np.ndarray:
    """Block-diagonal stack of two maps (independent error sectors)."""
    return f2.block_compose([[f2.as_f2(a), None], [None, f2.as_f2(b)]])


def soundness_scan(syndrome_map, t: int, f=quarter_square,
                   cap: int | None = None) -> SoundnessReport:
    """Exhaustive (t, f) soundness check of one binary map.

    Enumerates every achievable syndrome of weight <= t (achievability is
    a packed-int annihilator test, so the full weight shell is cheap) and
    compares its minimum preimage weight against f.

    Args:
        syndrome_map: The map d; errors live on its columns.
        t: Syndrome weight ceiling to scan.
        f: Bounding function returning exact rationals.
        cap: Preimage search ceiling; defaults to floor(f(t)) + 2.

    Returns:
        SoundnessReport; clean means every scanned syndrome met the bound
        with an exact witness.
    """
    d = f2.as_f2(syndrome_map)
    m = d.shape[0]
    if cap is None:
        cap = int(f(t)) + 2
    # s is achievable iff ach @ s = 0
    ach = f2.columns_as_ints(f2.kernel_basis(d.T))
    unit = f2.columns_as_ints(f2.identity(m))
    matcher = SupportMatcher(
        [(j, j, v) for j, v in enumerate(f2.columns_as_ints(d))])
    report = SoundnessReport(t_scanned=t, f_name=getattr(f, "fname", "custom"))
    report.per_weight[0] = 0

    def consider(supp):
        target = 0
        for i in supp:
            target ^= unit[i]
        ws = len(supp)
        w, pre = matcher.find_min(target, cap)
        bound = f(ws)
        if w is None:
            report.partial = True
            report.violations.append((tuple(supp), ws, LowerBound(cap)))
            return
        report.per_weight[ws] = max(report.per_weight.get(ws, 0), w)
        report.max_ratio = max(report.max_ratio,
                               Fraction(w) / bound if bound else Fraction(0))
        if w > bound:
            report.violations.append(
                (tuple(tag for _, tag in pre), ws, w))

    for ws in range(1, t + 1):
        for supp in itertools.combinations(range(m), ws):
            acc = 0
            for i in supp:
                acc ^= ach[i]
            if acc == 0:
                consider(supp)
    return report


def inheritance_check(d, n: int, t: int, f=quarter_square) -> SoundnessReport:
    """Scan d (x) I_n and I_n (x) d at the same (t, f).

    Soundness transfers to both identity paddings, so a violation here
    can only come from a bug; it raises instead of reporting.

    Raises:
        LemmaContradictionError: if either padded scan is not clean.
    """
    d = f2.as_f2(d)
    eye = f2.identity(n)
    merged = SoundnessReport(t_scanned=t, f_name=getattr(f, "fname", "custom"))
    for padded in (f2.kron(d, eye), f2.kron(eye, d)):
        rep = soundness_scan(padded, t, f)
        if rep.violations:
            raise LemmaContradictionError(
                f"identity padding broke a clean ({t}, {rep.f_name}) scan")
        merged.max_ratio = max(merged.max_ratio, rep.max_ratio)
        merged.partial = merged.partial or rep.partial
        for ws, w in rep.per_weight.items():
            merged.per_weight[ws] = max(merged.per_weight.get(ws, 0), w)
    return merged


def decode_residual(model: StabilizerModel, e: PauliError, u: np.ndarray,
                    budget: int = 4):
    """Residual error e * e_hat of the two-stage decoder, or None when a
    repair or decode search exhausts its budget."""
    observed = model.syndrome(e) ^ f2.as_f2_vector(u)
    repaired, _ = model.repair_syndrome(observed, budget)
    if repaired is None:
        return None
    e_hat = model.min_weight_decode(repaired, budget)
    if e_hat is None:
        return None
    return e * e_hat


def single_shot_trial(code, e: PauliError, u: np.ndarray,
                      decoder: str = "two_stage", f=quarter_square,
                      budget: int = 4, model: StabilizerModel | None = None):
    """One noisy-readout decode: (residual reduced weight, bound met).

    Stage 1 flips a minimum number of outcome bits to make the observed
    syndrome achievable; stage 2 applies a minimum-weight error matching
    the repaired syndrome.  The residual is reduced over the stabilizer
    coset and compared against f(2 |u|).

    Args:
        code: CssCode or banded code with stab_x/stab_z.
        e: Injected data error.
        u: Outcome flip vector, one bit per measured check.
        decoder: Only "two_stage" is implemented.
        f: Single-shot bound function.
        budget: Weight cap for all three searches.
        model: Optional prebuilt StabilizerModel (reuse across trials).
    """
    if decoder != "two_stage":
        raise ValueError(f"unknown decoder {decoder!r}")
    model = model or StabilizerModel.from_code(code)
    u = f2.as_f2_vector(u)
    if u.shape[0] != model.m:
        raise ValueError(f"u has {u.shape[0]} bits, code measures {model.m}")
    residual = decode_residual(model, e, u, budget)
    if residual is None:
        return LowerBound(budget), False
    rw = model.reduced_weight(residual, budget)
    bound = f(2 * int(f2.weight(u)))
    passed = (not isinstance(rw, LowerBound)) and Fraction(rw) <= bound
    return rw, passed


def reduced_weight(code, e: PauliError, budget: int = 4):
    """Module-level convenience for StabilizerModel.reduced_weight."""
    return StabilizerModel.from_code(code).reduced_weight(e, budget)
