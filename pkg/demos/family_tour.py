"""Build every code family from a rep(2) ring base and print a parameter
table: qubits, measured checks, logicals, and a bounded distance search.

Run from the repo root after `pip install -e .`:

    python3 demos/family_tour.py
"""
from codeforge import classical
from codeforge import constructions as cons

BASE = classical.repetition_closed_loop(2)


def build_all():
    bundle = cons.sehgp(BASE, BASE, BASE, BASE)
    yield "hgp", cons.hgp(BASE.h, BASE.h), 2
    yield "sehgp", bundle.tagged, 4
    yield "bsh", cons.bsh(bundle), 4
    yield "ssh", cons.ssh(BASE).tagged, 2
    yield "bssh", cons.bssh(BASE), 2
    yield "rsh1", cons.rsh(bundle, 1), 2
    yield "rsh2", cons.rsh(bundle, 2), 2
    yield "brsh1", cons.brsh(bundle, 1), 2
    yield "xzzx3d", cons.xzzx3d(2), 2


def main():
    print(f"{'family':8} {'n':>4} {'checks':>6} {'k':>4} {'d':>4}  notes")
    for name, tagged, cap in build_all():
        tagged.validate()
        n, k, d = tagged.params(cap)
        notes = []
        if tagged.paired:
            notes.append("XZZX-like rows")
        if "d_s" in tagged.metadata:
            notes.append(f"d_s={tagged.metadata['d_s']}")
        print(f"{name:8} {n:>4} {tagged.check_count():>6} {k:>4} {d!r:>4}"
              f"  {', '.join(notes)}")
    print()
    print("d values are exhaustive searches up to the shown cap; '> w'")
    print("means no logical representative of weight <= w exists.")


if __name__ == "__main__":
    main()
