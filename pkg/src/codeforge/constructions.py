"""Block-matrix builders for every code family in the hierarchy:
HGP, SEHGP, CPHR rotations, BSH, SSH/BSSH, RSH/BRSH, and the 3D XZZX code.

Stabilizers are kept in a banded, block-tagged form: each row band carries
an X-part and a Z-part over the full qubit register, and the qubit register
is split into tagged column blocks.  Commutation-preserving Hadamard
rotations (CPHR) swap the X- and Z-parts of one column block within chosen
bands; after a swap a band may mix X and Z support, in which case the code
is XZZX-like rather than CSS and the symplectic commutation condition and
rank formula are used.

Label notation: '@' is the Kronecker product, 'I' an identity block,
'dk[J]' the degree-k boundary of complex J, a trailing 'T' its transpose.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import classical, css, f2
from .classical import ClassicalCode, LowerBound
from .complexes import ChainComplex, tensor
from .css import CssCode


class CommutationBrokenError(ValueError):
    """Raised when a block swap would break stabilizer commutation."""


@dataclass
class Band:
    """One stabilizer row band: paired X- and Z-parts plus block labels."""

    x: np.ndarray
    z: np.ndarray
    x_labels: list[str]
    z_labels: list[str]

    @property
    def rows(self) -> int:
        return self.x.shape[0]

    @property
    def mixed(self) -> bool:
        return bool(self.x.any()) and bool(self.z.any())

    def copy(self) -> "Band":
        return Band(self.x.copy(), self.z.copy(),
                    list(self.x_labels), list(self.z_labels))


class BlockTaggedCss:
    """A code family instance with explicit band/block structure.

    Attributes:
        family: One of HGP, SEHGP, BSH, SSH, BSSH, RSH1, RSH2, BRSH1,
            BRSH2, XZZX3D.
        bands: Ordered stabilizer row bands.
        col_sizes: Qubit column-block sizes (sums to n).
        hsx, hsz: Optional syndrome-check matrices over the stacked band
            rows of the X side / Z side.
        metadata: Premise flags, d_s, swap history, exactness flags.
    """

    def __init__(self, family: str, bands: list[Band], col_sizes: list[int],
                 hsx=None, hsz=None, metadata=None):
        self.family = family
        self.bands = bands
        self.col_sizes = list(col_sizes)
        self.hsx = None if hsx is None else f2.as_f2(hsx)
        self.hsz = None if hsz is None else f2.as_f2(hsz)
        self.metadata = dict(metadata or {})
        n = sum(col_sizes)
        for b in bands:
            if b.x.shape[1] != n or b.z.shape[1] != n:
                raise ValueError("band width does not match qubit count")

    @property
    def n(self) -> int:
        return sum(self.col_sizes)

    @property
    def col_offsets(self) -> list[int]:
        out = [0]
        for s in self.col_sizes:
            out.append(out[-1] + s)
        return out

    @property
    def paired(self) -> bool:
        """True when some band mixes X and Z support (post-rotation)."""
        return any(b.mixed for b in self.bands)

    @property
    def stab_x(self) -> np.ndarray:
        return f2.block_compose([[b.x] for b in self.bands])

    @property
    def stab_z(self) -> np.ndarray:
        return f2.block_compose([[b.z] for b in self.bands])

    @property
    def css(self) -> CssCode:
        """CssCode view: pure bands are split by type; mixed codes keep the
        full paired X/Z sides with a paired_rows marker."""
        meta = dict(self.metadata)
        meta["family"] = self.family
        meta["block_map"] = self.block_map()
        if self.paired:
            meta["paired_rows"] = True
            return CssCode(self.stab_x, self.stab_z,
                           hsx=self.hsx, hsz=self.hsz, metadata=meta)
        hx_rows = [b.x for b in self.bands if b.x.any()]
        hz_rows = [b.z for b in self.bands if b.z.any()]
        hx = f2.block_compose([[m] for m in hx_rows]) if hx_rows else f2.zeros(0, self.n)
        hz = f2.block_compose([[m] for m in hz_rows]) if hz_rows else f2.zeros(0, self.n)
        return CssCode(hx, hz, hsx=self.hsx, hsz=self.hsz, metadata=meta)

    def block_map(self) -> list[dict]:
        """Band-by-band label grid for manifests."""
        return [{"rows": b.rows, "x": list(b.x_labels), "z": list(b.z_labels)}
                for b in self.bands]

    def check_count(self) -> int:
        """Number of measured stabilizers (band rows for paired codes)."""
        if self.paired:
            return sum(b.rows for b in self.bands)
        c = self.css
        return c.hx.shape[0] + c.hz.shape[0]

    def validate(self) -> None:
        """Commutation check: CSS condition, or symplectic when paired."""
        if not self.paired:
            css.validate_css(self.css)
            return
        x, z = self.stab_x, self.stab_z
        m = f2.mat_mul(x, z.T)
        comm = m ^ m.T
        if comm.any():
            i, j = map(int, np.argwhere(comm)[0])
            raise CommutationBrokenError(
                f"stabilizer rows {i} and {j} anticommute after rotation")

    def logical_count(self) -> int:
        """k = n - rank(hz) - rank(hx); symplectic rank for paired rows."""
        if self.paired:
            return self.n - f2.rank(np.concatenate([self.stab_x, self.stab_z], axis=1))
        c = self.css
        return self.n - f2.rank(c.hx) - f2.rank(c.hz)

    def distance(self, max_weight: int):
        """Minimum logical Pauli weight, searched up to max_weight.

        Pure CSS codes take the cheaper per-sector kernel/coset search;
        paired codes run the symplectic search over all Pauli patterns.
        """
        if self.paired:
            return pauli_distance(self.stab_x, self.stab_z, max_weight)
        c = self.css
        dx = css.distance(c, "X", max_weight)
        dz = css.distance(c, "Z", max_weight)
        vals = [d for d in (dx, dz) if not isinstance(d, LowerBound)]
        return min(vals) if vals else LowerBound(max_weight)

    def params(self, max_weight: int):
        """(n, k, d-or-flag) by the appropriate rank and search rules."""
        return self.n, self.logical_count(), self.distance(max_weight)

    def copy(self) -> "BlockTaggedCss":
        return BlockTaggedCss(self.family, [b.copy() for b in self.bands],
                              self.col_sizes, hsx=self.hsx, hsz=self.hsz,
                              metadata=dict(self.metadata))

    def equals(self, other: "BlockTaggedCss") -> bool:
        """Bit-exact equality of all band matrices and syndrome checks."""
        if len(self.bands) != len(other.bands) or self.col_sizes != other.col_sizes:
            return False
        for a, b in zip(self.bands, other.bands):
            if a.x.shape != b.x.shape or (a.x != b.x).any() or (a.z != b.z).any():
                return False
        for m, o in ((self.hsx, other.hsx), (self.hsz, other.hsz)):
            if (m is None) != (o is None):
                return False
            if m is not None and (m.shape != o.shape or (m != o).any()):
                return False
        return True

    def __repr__(self):
        return (f"<BlockTaggedCss {self.family} n={self.n} "
                f"bands={[b.rows for b in self.bands]} cols={self.col_sizes}>")


@dataclass
class SehgpBundle:
    """A product complex together with its tagged stabilizer code.

    Attributes:
        q: The underlying chain complex (length 4 for SEHGP, 2 for SSH).
        tagged: Banded stabilizer view.
        base: Input classical codes.
        j, k: The two length-2 factor complexes (SEHGP only).
    """

    q: ChainComplex
    tagged: BlockTaggedCss
    base: tuple
    j: ChainComplex | None = None
    k: ChainComplex | None = None

    @property
    def css(self) -> CssCode:
        return self.tagged.css


def length1(code: ClassicalCode) -> ChainComplex:
    """The one-map complex bits -> checks of a classical code."""
    return ChainComplex([code.h])


def j_complex(c1: ClassicalCode, c2: ClassicalCode) -> ChainComplex:
    """Length-2 product complex of two classical codes."""
    return tensor(length1(c1), length1(c2))


def identical_code_premise(code: ClassicalCode) -> bool:
    """ker H = ker H^T, the premise behind the identical-code parameter
    formulas (closed-loop repetition rings satisfy it)."""
    kh = f2.kernel_basis(code.h)
    kht = f2.kernel_basis(code.h.T)
    if kh.shape != kht.shape:
        return False
    if kh.shape[0] == 0:
        return True
    t = f2.RowSpaceTester(kh)
    return bool(t.contains_batch(kht).all())


def hgp(h1, h2, legacy_order: bool = False) -> BlockTaggedCss:
    """Hypergraph product of two check matrices.

    hx = [H1 (x) I | I (x) H2^T], hz = [I (x) H2 | H1^T (x) I] over qubit
    blocks (bit-bit, check-check).  Parameters follow the product formulas
    n' = n1 n2 + m1 m2, k' = k1 k2 + k1T k2T.

    Args:
        h1: First check matrix (m1 x n1).
        h2: Second check matrix (m2 x n2).
        legacy_order: Emit the alternative summand order (check-check block
            first), the convention used by the earlier product-code
            literature.
    """
    h1 = f2.as_f2(h1)
    h2 = f2.as_f2(h2)
    m1, n1 = h1.shape
    m2, n2 = h2.shape
    blocks = {
        "x": [f2.kron(h1, f2.identity(n2)), f2.kron(f2.identity(m1), h2.T)],
        "z": [f2.kron(f2.identity(n1), h2), f2.kron(h1.T, f2.identity(m2))],
    }
    x_labels = ["H1@I", "I@H2T"]
    z_labels = ["I@H2", "H1T@I"]
    col_sizes = [n1 * n2, m1 * m2]
    if legacy_order:
        blocks = {k: v[::-1] for k, v in blocks.items()}
        x_labels, z_labels = x_labels[::-1], z_labels[::-1]
        col_sizes = col_sizes[::-1]
    hx = f2.block_compose([blocks["x"]])
    hz = f2.block_compose([blocks["z"]])
    n = sum(col_sizes)
    bands = [
        Band(f2.zeros(hz.shape[0], n), hz, ["0", "0"], z_labels),
        Band(hx, f2.zeros(hx.shape[0], n), x_labels, ["0", "0"]),
    ]
    return BlockTaggedCss("HGP", bands, col_sizes,
                          metadata={"inputs": [list(h1.shape), list(h2.shape)]})


def _bands_from_boundaries(q: ChainComplex, deg_hi: int, deg_mid: int,
                           deg_lo: int, jname: str, kname: str):
    """Split d_{deg_hi}^T (Z bands) and d_{deg_lo+1} (X bands) of a product
    complex by its component bookkeeping, with labels."""
    col_comps = q.components[deg_mid]
    col_sizes = [s for _, _, s in col_comps]
    n = sum(col_sizes)
    offs = np.cumsum([0] + col_sizes)

    def block_label(src, dst, transposed):
        (i, j), (a, b) = src, dst
        if (a, b) == (i - 1, j):
            return f"d{i}T[{jname}]@I" if transposed else f"d{i}[{jname}]@I"
        if (a, b) == (i, j - 1):
            return f"I@d{j}T[{kname}]" if transposed else f"I@d{j}[{kname}]"
        return "0"

    z_bands = []
    dhi_t = q.boundary(deg_hi).T
    r0 = 0
    for (i, j, size) in q.components[deg_hi]:
        m = dhi_t[r0:r0 + size]
        labels = [block_label((i, j), (a, b), True) for a, b, _ in col_comps]
        z_bands.append((m, labels))
        r0 += size
    x_bands = []
    dlo = q.boundary(deg_mid)
    r0 = 0
    for (i, j, size) in q.components[deg_lo]:
        m = dlo[r0:r0 + size]
        # x band rows are degree deg_lo components; the block into column
        # (a, b) is the boundary component mapping (a, b) down to (i, j)
        labels = []
        for a, b, _ in col_comps:
            if (a - 1, b) == (i, j):
                labels.append(f"d{a}[{jname}]@I")
            elif (a, b - 1) == (i, j):
                labels.append(f"I@d{b}[{kname}]")
            else:
                labels.append("0")
        x_bands.append((m, labels))
        r0 += size
    zero_labels = ["0"] * len(col_comps)
    bands = [Band(f2.zeros(m.shape[0], n), m, list(zero_labels), labels)
             for m, labels in z_bands]
    bands += [Band(m, f2.zeros(m.shape[0], n), labels, list(zero_labels))
              for m, labels in x_bands]
    return bands, col_sizes


def sehgp(x: ClassicalCode, y: ClassicalCode, z: ClassicalCode,
          w: ClassicalCode) -> SehgpBundle:
    """Four classical codes -> length-4 product complex -> stabilizer code.

    Qubits sit at degree 2; hz rows come from d3^T (two bands), hx rows
    from d2 (two bands).  With four identical closed-loop repetition
    inputs the counts are 6n^4 qubits, 8n^4 checks, 6k^4 logicals.
    """
    jc = j_complex(x, y)
    kc = j_complex(z, w)
    q = tensor(jc, kc)
    q.validate()
    bands, col_sizes = _bands_from_boundaries(q, 3, 2, 1, "J", "K")
    premise = all(identical_code_premise(c) for c in (x, y, z, w))
    meta = {
        "base": [c.name or f"code{idx}" for idx, c in enumerate((x, y, z, w))],
        "identical_code_premise": premise,
    }
    if not premise:
        meta["warning"] = "identical-code premise violated; closed-form parameter identities not guaranteed"
    tagged = BlockTaggedCss("SEHGP", bands, col_sizes, metadata=meta)
    return SehgpBundle(q=q, tagged=tagged, base=(x, y, z, w), j=jc, k=kc)


def cphr(c: BlockTaggedCss, kind: str, row_bands: tuple[int, int],
         col_band: int, validate: bool = True) -> BlockTaggedCss:
    """Swap the X- and Z-parts of one column block in the named row bands.

    The swap is a Hadamard rotation of the column block's qubits only when
    every band with support there is rotated together.  A swap touching a
    strict subset of those bands generally anticommutes with the untouched
    bands and is rejected; callers composing complementary swaps (as bsh
    does) can defer the check to the composite with validate=False.

    Args:
        c: Input tagged code.
        kind: 'T1' or 'T2' (recorded in the swap history; the mechanics
            are identical, the names refer to the two standard band pairs).
        row_bands: 1-based band indices to rotate.
        col_band: 1-based qubit column block.
        validate: Re-verify commutation of the result (default True).

    Returns:
        A new tagged code; the input is untouched.  Applying the same swap
        twice restores the input bit-exactly.

    Raises:
        CommutationBrokenError: if the rotated stabilizers anticommute.
    """
    if kind not in ("T1", "T2"):
        raise ValueError("kind must be 'T1' or 'T2'")
    out = c.copy()
    offs = out.col_offsets
    j = col_band - 1
    if not 0 <= j < len(out.col_sizes):
        raise IndexError(f"no column block {col_band}")
    sl = slice(offs[j], offs[j + 1])
    for bi in row_bands:
        band = out.bands[bi - 1]
        band.x[:, sl], band.z[:, sl] = band.z[:, sl].copy(), band.x[:, sl].copy()
        band.x_labels[j], band.z_labels[j] = band.z_labels[j], band.x_labels[j]
    if validate:
        out.validate()
    history = list(out.metadata.get("swaps", []))
    history.append({"kind": kind, "row_bands": list(row_bands), "col_band": col_band})
    out.metadata["swaps"] = history
    return out


def _syndrome_distance(h_s, cap: int = 4):
    """d(h_s): min weight of a nonzero kernel element of a syndrome-check
    matrix, by support search up to cap."""
    for wgt in range(1, cap + 1):
        for _ in classical.kernel_supports_of_weight(h_s, wgt):
            return wgt
    return LowerBound(cap)


def bsh(bundle: SehgpBundle) -> BlockTaggedCss:
    """Bias-tailored code: both CPHR swaps on the middle qubit block, plus
    the three-band disjoint syndrome-check matrices.

    The T2 swap rotates bands 2 and 3, the T1 swap bands 1 and 4, all in
    the big middle column block.  Each syndrome-check band is the next
    boundary map of the product complex whose image the corresponding
    syndrome band lies in, so the annihilation identities hold exactly.
    """
    # the two swaps jointly rotate every band's middle block; only the
    # composite is a qubit-local basis change, so validation waits for it
    c = cphr(bundle.tagged, "T2", (2, 3), 2, validate=False)
    c = cphr(c, "T1", (1, 4), 2)
    c.family = "BSH"
    jc, kc = bundle.j, bundle.k
    d1j, d2j = jc.boundary(1), jc.boundary(2)
    d1k, d2k = kc.boundary(1), kc.boundary(2)
    ij0, ij1, ij2 = (f2.identity(jc.dim(0)), f2.identity(jc.dim(1)),
                     f2.identity(jc.dim(2)))
    ik0, ik2 = f2.identity(kc.dim(0)), f2.identity(kc.dim(2))
    # X-side syndromes: bands 1+2 are the image of one product-complex
    # boundary (checked jointly), bands 3 and 4 are single-factor images.
    hsx = f2.block_compose([
        [f2.kron(ij2, d2k.T), f2.kron(d2j.T, ik2), None, None],
        [None, None, f2.kron(ij0, d1k), None],
        [None, None, None, f2.kron(d1j, ik0)],
    ])
    hsz = f2.block_compose([
        [f2.kron(ij2, d2k.T), None, None, None],
        [None, f2.kron(d2j.T, ik2), None, None],
        [None, None, f2.kron(ij0, d1k), f2.kron(d1j, ik0)],
    ])
    assert not f2.mat_mul(hsx, c.stab_x).any(), "hsx must annihilate the X side"
    assert not f2.mat_mul(hsz, c.stab_z).any(), "hsz must annihilate the Z side"
    c.hsx, c.hsz = hsx, hsz
    c.metadata["syndrome_checks_exact"] = True
    c.metadata["hsx_labels"] = [
        ["I@d2T[K]", "d2T[J]@I", "0", "0"],
        ["0", "0", "I@d1[K]", "0"],
        ["0", "0", "0", "d1[J]@I"],
    ]
    c.metadata["hsz_labels"] = [
        ["I@d2T[K]", "0", "0", "0"],
        ["0", "d2T[J]@I", "0", "0"],
        ["0", "0", "I@d1[K]", "d1[J]@I"],
    ]
    ds_x = _syndrome_distance(hsx)
    ds_z = _syndrome_distance(hsz)
    vals = [d for d in (ds_x, ds_z) if not isinstance(d, LowerBound)]
    c.metadata["d_s"] = min(vals) if vals else ds_x
    return c


def ssh(base: ClassicalCode) -> SehgpBundle:
    """Slimmed product code on 5n^4 qubits from a single base code.

    Forms the length-2 product complex J of the base with itself, then the
    hypergraph product of the two derived check matrices d2[J] and d1^T[J].
    Column blocks are ordered (check-check 4n^4, bit-bit n^4) to match the
    printed two-band layout.
    """
    jc = j_complex(base, base)
    h1 = jc.boundary(2)        # 2n^2 x n^2
    h2 = jc.boundary(1).T      # 2n^2 x n^2
    m1, n1 = h1.shape
    m2, n2 = h2.shape
    n = m1 * m2 + n1 * n2
    col_sizes = [m1 * m2, n1 * n2]
    hz_blocks = [f2.kron(h1.T, f2.identity(m2)), f2.kron(f2.identity(n1), h2)]
    hx_blocks = [f2.kron(f2.identity(m1), h2.T), f2.kron(h1, f2.identity(n2))]
    bands = [
        Band(f2.zeros(n1 * m2, n), f2.block_compose([hz_blocks]),
             ["0", "0"], ["d2T[J]@I", "I@d1T[J]"]),
        Band(f2.block_compose([hx_blocks]), f2.zeros(m1 * n2, n),
             ["I@d1[J]", "d2[J]@I"], ["0", "0"]),
    ]
    premise = identical_code_premise(base)
    meta = {"base": [base.name or "base"], "identical_code_premise": premise}
    if not premise:
        meta["warning"] = "identical-code premise violated; closed-form parameter identities not guaranteed"
    tagged = BlockTaggedCss("SSH", bands, col_sizes, metadata=meta)
    hx = tagged.css.hx
    hz = tagged.css.hz
    q = ChainComplex([hz.T.copy(), hx])
    q.validate()
    return SehgpBundle(q=q, tagged=tagged, base=(base,), j=jc, k=None)


def bssh(base: ClassicalCode) -> BlockTaggedCss:
    """T2-rotated slim product code with the two-copy syndrome checks.

    The attached hsx/hsz follow the printed diag / anti-diag two-block
    patterns.  The underlying length-2 complex has no higher boundary, so
    only one block of each pattern annihilates its band exactly; the
    per-block outcome is recorded in metadata and validation relaxes the
    annihilation requirement accordingly.
    """
    bundle = ssh(base)
    c = cphr(bundle.tagged, "T2", (1, 2), 2)
    c.family = "BSSH"
    jc = bundle.j
    d1j, d2j = jc.boundary(1), jc.boundary(2)
    i_n = f2.identity(jc.dim(2))
    hs_block = f2.kron(i_n, d2j.T)
    band_rows = [b.rows for b in c.bands]
    c.hsx = f2.block_compose([
        [f2.zeros(hs_block.shape[0], band_rows[0]), hs_block],
        [hs_block, f2.zeros(hs_block.shape[0], band_rows[1])],
    ])
    hsz_block = f2.kron(d1j, i_n)
    c.hsz = f2.block_compose([
        [hsz_block, f2.zeros(hsz_block.shape[0], band_rows[1])],
        [f2.zeros(hsz_block.shape[0], band_rows[0]), hsz_block],
    ])
    exact_x = not f2.mat_mul(c.hsx, c.stab_x).any()
    exact_z = not f2.mat_mul(c.hsz, c.stab_z).any()
    c.metadata["syndrome_checks_exact"] = bool(exact_x and exact_z)
    c.metadata["syndrome_check_annihilation"] = {"hsx": bool(exact_x), "hsz": bool(exact_z)}
    c.metadata["hsx_labels"] = [["0", "I@d2T[J]"], ["I@d2T[J]", "0"]]
    c.metadata["hsz_labels"] = [["d1[J]@I", "0"], ["0", "d1[J]@I"]]
    ds = _syndrome_distance(c.hsz)
    c.metadata["d_s"] = ds
    return c


def rsh(bundle: SehgpBundle, which: int) -> BlockTaggedCss:
    """Two-band truncation of the four-band code to 5n^4 qubits.

    which=1 keeps the (bit-bit, middle) qubit blocks with the X band
    [I@d2[K], d1[J]@I] and Z band [d1T[J]@I, I@d2T[K]]; which=2 keeps the
    (middle, check-check) blocks with the mirrored bands.  Syndrome checks
    have no closed form; they are the canonical row-space complements of
    the column spaces, so H_RS @ H_RSH = 0 with the rank identity
    rank(H_RSH) + rows(H_RS) = band rows.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    src = bundle.tagged
    offs = src.col_offsets
    if which == 1:
        cols = slice(offs[0], offs[2])
        col_sizes = src.col_sizes[:2]
        zband, xband = src.bands[1], src.bands[2]
        zlabels, xlabels = zband.z_labels[:2], xband.x_labels[:2]
    else:
        cols = slice(offs[1], offs[3])
        col_sizes = src.col_sizes[1:]
        zband, xband = src.bands[0], src.bands[3]
        zlabels, xlabels = zband.z_labels[1:], xband.x_labels[1:]
    hz = zband.z[:, cols].copy()
    hx = xband.x[:, cols].copy()
    n = sum(col_sizes)
    bands = [
        Band(f2.zeros(hz.shape[0], n), hz, ["0", "0"], list(zlabels)),
        Band(hx, f2.zeros(hx.shape[0], n), list(xlabels), ["0", "0"]),
    ]
    hsx = f2.row_space_complement(hx.T)
    hsz = f2.row_space_complement(hz.T)
    meta = dict(src.metadata)
    meta.pop("swaps", None)
    meta["syndrome_checks_exact"] = True
    meta["syndrome_checks_numeric"] = True
    tagged = BlockTaggedCss(f"RSH{which}", bands, col_sizes,
                            hsx=hsx, hsz=hsz, metadata=meta)
    tagged.validate()
    return tagged


def brsh(bundle: SehgpBundle, which: int) -> BlockTaggedCss:
    """T2 rotation of the truncated code on its big middle column block."""
    c = rsh(bundle, which)
    big = 2 if which == 1 else 1
    out = cphr(c, "T2", (1, 2), big)
    out.family = f"BRSH{which}"
    out.hsx = f2.row_space_complement(out.stab_x.T)
    out.hsz = f2.row_space_complement(out.stab_z.T)
    out.metadata["syndrome_checks_numeric"] = True
    return out


def xzzx3d(n: int) -> BlockTaggedCss:
    """Three-dimensional XZZX-type code: the rotated slim product of a
    closed-loop repetition ring, relabeled.  Bit-exactly equal to
    bssh(repetition_closed_loop(n)).

    Raises:
        ValueError: if n < 2.
    """
    if n < 2:
        raise ValueError("xzzx3d needs n >= 2")
    c = bssh(classical.repetition_closed_loop(n))
    c.family = "XZZX3D"
    return c


def pauli_distance(stab_x, stab_z, max_weight: int):
    """Minimum Pauli weight of an undetected non-stabilizer error.

    Works on paired-row stabilizers: a candidate (ex, ez) is undetected iff
    stab_x @ ez + stab_z @ ex = 0, and logical iff (ex|ez) lies outside the
    row space of [stab_x | stab_z].  Candidates are enumerated by support
    with all 3^w Pauli patterns and tested in batches.

    Returns:
        Exact distance if found, else LowerBound(max_weight).
    """
    import itertools

    stab_x = f2.as_f2(stab_x)
    stab_z = f2.as_f2(stab_z)
    n = stab_x.shape[1]
    tester = f2.RowSpaceTester(np.concatenate([stab_x, stab_z], axis=1))
    # per-qubit syndrome columns as packed ints: an X error on q triggers
    # stab_z column q, a Z error stab_x column q, Y the XOR of both
    col_x = f2.columns_as_ints(stab_z)
    col_z = f2.columns_as_ints(stab_x)
    cols = [[(q, "X", col_x[q]), (q, "Z", col_z[q]), (q, "Y", col_x[q] ^ col_z[q])]
            for q in range(n)]
    flat = [entry for group in cols for entry in group]

    def quiet_supports(wgt):
        """Yield [(qubit, pauli), ...] lists whose syndrome columns XOR to 0,
        over strictly increasing qubit indices."""
        if wgt == 1:
            for q, p, v in flat:
                if v == 0:
                    yield [(q, p)]
        elif wgt == 2:
            by_val: dict[int, list] = {}
            for q, p, v in flat:
                by_val.setdefault(v, []).append((q, p))
            for group in by_val.values():
                for (q1, p1), (q2, p2) in itertools.combinations(group, 2):
                    if q1 != q2:
                        yield [(q1, p1), (q2, p2)]
        elif wgt == 3:
            by_val = {}
            for q, p, v in flat:
                by_val.setdefault(v, []).append((q, p))
            for (q1, p1, v1), (q2, p2, v2) in itertools.combinations(flat, 2):
                if q1 == q2:
                    continue
                for q3, p3 in by_val.get(v1 ^ v2, ()):
                    if q3 > max(q1, q2):
                        yield [(q1, p1), (q2, p2), (q3, p3)]
        elif wgt == 4:
            pair_val: dict[int, list] = {}
            for (q1, p1, v1), (q2, p2, v2) in itertools.combinations(flat, 2):
                if q1 < q2:
                    pair_val.setdefault(v1 ^ v2, []).append((q1, p1, q2, p2))
            for (q3, p3, v3), (q4, p4, v4) in itertools.combinations(flat, 2):
                if q3 >= q4:
                    continue
                for q1, p1, q2, p2 in pair_val.get(v3 ^ v4, ()):
                    if q2 < q3:
                        yield [(q1, p1), (q2, p2), (q3, p3), (q4, p4)]
        else:
            raise ValueError("pauli_distance search supports weight <= 4")

    for wgt in range(1, max_weight + 1):
        hits = []
        for support in quiet_supports(wgt):
            v = np.zeros(2 * n, dtype=np.uint8)
            for q, p in support:
                if p in ("X", "Y"):
                    v[q] = 1
                if p in ("Z", "Y"):
                    v[n + q] = 1
            hits.append(v)
        if hits:
            member = tester.contains_batch(np.array(hits, dtype=np.uint8))
            if not member.all():
                return wgt
    return LowerBound(max_weight)
