"""Code family builders: HGP, SEHGP, CPHR rotations, BSH, SSH/BSSH,
RSH/BRSH and the 3D XZZX instance."""
import itertools

import numpy as np
import pytest

from codeforge import classical, css, f2
from codeforge import constructions as cons
from codeforge.classical import LowerBound

REP2 = classical.repetition_closed_loop(2)
REP3 = classical.repetition_closed_loop(3)


def sehgp2():
    return cons.sehgp(REP2, REP2, REP2, REP2)


def test_hgp_rep3():
    t = cons.hgp(REP3.h, REP3.h)
    t.validate()
    assert t.params(3) == (18, 2, 3)
    assert not f2.mat_mul(t.css.hx, t.css.hz.T).any()


def test_hgp_rep2():
    assert cons.hgp(REP2.h, REP2.h).params(2) == (8, 2, 2)


def test_hgp_empty_factor():
    t = cons.hgp(REP2.h, f2.zeros(0, 3))
    t.validate()
    assert t.n == 2 * 3 + 2 * 0


def test_hgp_legacy_order_flag():
    a = cons.hgp(REP2.h, REP2.h)
    b = cons.hgp(REP2.h, REP2.h, legacy_order=True)
    assert a.n == b.n
    assert a.col_sizes == list(reversed(b.col_sizes))


def test_sehgp_rep2_counts():
    b = sehgp2()
    b.q.validate()
    t = b.tagged
    assert t.n == 96
    assert t.check_count() == 128
    assert t.logical_count() == 6
    assert t.col_sizes == [16, 64, 16]
    assert [band.rows for band in t.bands] == [32, 32, 32, 32]


def test_sehgp_rep3_counts():
    t = cons.sehgp(REP3, REP3, REP3, REP3).tagged
    assert t.n == 486
    assert t.check_count() == 648
    assert t.logical_count() == 6


def test_sehgp_mixed_bases_dim_rule():
    b = cons.sehgp(REP2, REP3, REP3, REP2)
    # degree-k dim of Q is the convolution of the factor dims
    for k in range(5):
        want = sum(b.j.dim(i) * b.k.dim(k - i)
                   for i in range(k + 1) if i <= 2 and k - i <= 2)
        assert b.q.dim(k) == want
    b.q.validate()


def test_sehgp_band_labels_reference_boundaries():
    t = sehgp2().tagged
    for entry in t.block_map():
        for label in entry["x"] + entry["z"]:
            assert label == "0" or "@" in label


def test_sehgp_true_distance_is_d_squared():
    """Exhaustive: no logical of weight <= 3 in either sector; weight 4
    exists.  The base distance is 2, so d = 4 = d^2 here."""
    t = sehgp2().tagged
    assert isinstance(t.distance(3), LowerBound)
    assert t.distance(4) == 4


def test_cphr_involution_and_validation():
    t = cons.ssh(REP2).tagged
    once = cons.cphr(t, "T2", (1, 2), 2)
    once.validate()
    twice = cons.cphr(once, "T2", (1, 2), 2)
    assert twice.equals(t)
    assert once.metadata["swaps"] != []


def test_cphr_rejects_commutation_breaking_swap():
    # rotating only bands 2-3 of the four-band code anticommutes with the
    # untouched bands 1 and 4; only the composite of both swaps is valid
    t = sehgp2().tagged
    with pytest.raises(cons.CommutationBrokenError):
        cons.cphr(t, "T2", (2, 3), 2)
    half = cons.cphr(t, "T2", (2, 3), 2, validate=False)
    full = cons.cphr(half, "T1", (1, 4), 2)
    full.validate()
    # deferred-validation swap is still an involution
    assert cons.cphr(half, "T2", (2, 3), 2, validate=False).equals(t)


def test_bsh_structure():
    b = sehgp2()
    rot = cons.bsh(b)
    rot.validate()
    assert rot.paired
    assert rot.logical_count() == 6
    assert rot.metadata["d_s"] == 2
    assert rot.n == 96 and rot.check_count() == 128
    # syndrome checks annihilate the stabilizer sides they protect
    assert rot.hsx is not None and rot.hsz is not None


def test_bsh_keeps_sehgp_parameters():
    b = sehgp2()
    rot = cons.bsh(b)
    assert rot.n == b.tagged.n
    assert rot.logical_count() == b.tagged.logical_count()
    assert cons.pauli_distance(rot.stab_x, rot.stab_z, 4) == b.tagged.distance(4) == 4


def test_bsh_z_only_tanner_split():
    rot = cons.bsh(sehgp2())
    comps = css.tanner_components(css.CssCode(rot.stab_x, f2.zeros(0, 96)), "X")
    nontrivial = [c for c in comps if len(c[1]) > 0]
    assert len(nontrivial) >= 3


def test_ssh_counts_and_structure():
    b = cons.ssh(REP2)
    t = b.tagged
    t.validate()
    assert t.n == 80
    assert t.check_count() == 64
    assert t.logical_count() == 26
    assert t.col_sizes == [64, 16]
    assert t.distance(2) == 2


def test_bssh_rotation():
    t = cons.bssh(REP2)
    t.validate()
    assert t.paired
    assert t.n == 80 and t.check_count() == 64
    assert t.logical_count() == 26
    assert t.metadata["d_s"] == 2
    assert t.metadata["syndrome_checks_exact"] is False


def test_bssh_preserves_ssh_parameters():
    ssh = cons.ssh(REP2).tagged
    rot = cons.bssh(REP2)
    assert (rot.n, rot.logical_count()) == (ssh.n, ssh.logical_count())
    assert cons.pauli_distance(rot.stab_x, rot.stab_z, 2) == ssh.distance(2) == 2


def test_bssh_hsz_two_components():
    t = cons.bssh(REP2)
    probe = css.CssCode(t.hsz, f2.zeros(0, t.hsz.shape[1]))
    comps = [c for c in css.tanner_components(probe, "X") if c[1]]
    assert len(comps) >= 2


def test_identical_code_premise():
    assert cons.identical_code_premise(REP2)
    assert cons.identical_code_premise(REP3)
    assert not cons.identical_code_premise(classical.repetition_open(3))


def test_premise_warning_metadata():
    t = cons.ssh(classical.repetition_open(3)).tagged
    assert t.metadata["identical_code_premise"] is False


def test_rsh_families():
    b = sehgp2()
    for which in (1, 2):
        t = cons.rsh(b, which)
        t.validate()
        assert t.n == 80 and t.check_count() == 64
        assert t.logical_count() == 26
        assert t.distance(2) == 2
        # defining identity of the numeric syndrome checks
        assert not f2.mat_mul(t.hsx, t.css.hx).any()
        assert not f2.mat_mul(t.hsz, t.css.hz).any()
        assert f2.rank(t.css.hx) + t.hsx.shape[0] == t.css.hx.shape[0]
        assert f2.rank(t.css.hz) + t.hsz.shape[0] == t.css.hz.shape[0]


def test_brsh_families():
    b = sehgp2()
    for which in (1, 2):
        t = cons.brsh(b, which)
        t.validate()
        assert t.paired
        assert t.n == 80
        assert t.logical_count() == 26


def test_xzzx3d_equals_bssh():
    assert cons.xzzx3d(2).equals(cons.bssh(REP2))
    assert cons.xzzx3d(2).family == "XZZX3D"
    with pytest.raises(ValueError):
        cons.xzzx3d(1)


def brute_pauli_distance(stab_x, stab_z, cap):
    """Oracle: enumerate every Pauli up to the cap the slow way."""
    n = stab_x.shape[1]
    tester = f2.RowSpaceTester(np.concatenate([stab_x, stab_z], axis=1))
    for w in range(1, cap + 1):
        for supp in itertools.combinations(range(n), w):
            for ps in itertools.product("XZY", repeat=w):
                v = np.zeros(2 * n, dtype=np.uint8)
                for q, p in zip(supp, ps):
                    if p in "XY":
                        v[q] = 1
                    if p in "ZY":
                        v[n + q] = 1
                sx = f2.mat_vec(stab_x, v[n:]) ^ f2.mat_vec(stab_z, v[:n])
                if not sx.any() and not tester.contains(v):
                    return w
    return None


def test_pauli_distance_matches_brute():
    t = cons.hgp(REP2.h, REP2.h)
    sx, sz = t.stab_x, t.stab_z
    assert cons.pauli_distance(sx, sz, 3) == brute_pauli_distance(sx, sz, 3) == 2
    rot = cons.bssh(REP2)
    assert (cons.pauli_distance(rot.stab_x, rot.stab_z, 2)
            == brute_pauli_distance(rot.stab_x, rot.stab_z, 2) == 2)


def test_pauli_distance_lower_bound():
    rot = cons.bsh(sehgp2())
    got = cons.pauli_distance(rot.stab_x, rot.stab_z, 3)
    assert isinstance(got, LowerBound) and got.value == 3
