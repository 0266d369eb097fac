"""Walk through the soundness machinery on small instances.

Three stops: a product-complex boundary that meets the quadratic bound
exhaustively, a 1D matching chain that violates it (distant syndrome
pairs need long repair strings), and the identity-padding check that a
clean scan survives tensoring with I_n.

    python3 demos/soundness_tour.py
"""
from codeforge import classical, complexes, soundness
from codeforge.complexes import ChainComplex


def show(label, report):
    state = "clean" if report.clean else f"{len(report.violations)} violations"
    print(f"  {label}: {state}, max ratio {report.max_ratio}")
    for ws in sorted(report.per_weight):
        if ws:
            print(f"    |s|={ws}: worst preimage weight {report.per_weight[ws]}")


def main():
    rep3 = classical.repetition_closed_loop(3).h
    j = complexes.tensor(ChainComplex([rep3]), ChainComplex([rep3]))

    print("product boundary d2[J], J = rep(3) x rep(3), t=3, f=x^2/4")
    show("d2[J]", soundness.soundness_scan(j.boundary(2), t=3))

    print()
    print("1D matching chain (open 9-ring), t=2, f=x^2/4")
    d = classical.repetition_open(9).h.T.copy()
    rep = soundness.soundness_scan(d, t=2)
    show("chain", rep)
    if rep.violations:
        supp, ws, w = rep.violations[0]
        print(f"    e.g. syndrome support {supp} (weight {ws}) needs "
              f"preimage weight {w!r} > {soundness.quarter_square(ws)}")

    print()
    print("identity padding of a clean scan stays clean")
    merged = soundness.inheritance_check(rep3, n=2, t=3)
    show("rep(3) (x) I_2 and I_2 (x) rep(3)", merged)


if __name__ == "__main__":
    main()
