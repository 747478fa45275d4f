#!/usr/bin/env python3
"""Walk through the bundled fixed-point computations and print the numbers.

Covers the three hexagon self-maps (rotation, reflection, doubling), the
identity on the 2-sphere, the cycle table of the doubling map, flag model
characteristics, and the traced example of three fixed spheres against
the big-cell divisor.
"""

from fractions import Fraction

import lefscalc.fixtures as fx
from lefscalc.euler import chi_c
from lefscalc.fixedpoint import localization_report
from lefscalc.flags import example_3_9, fixed_locus_cellspace, flag_cellspace
from lefscalc.homology import lefschetz_number
from lefscalc.morse import VertexFunctional, lefschetz_cycle_table


def show_localization(name, problem):
    rep = localization_report(problem)
    terms = " + ".join(
        str(c["signed_contribution"]) for c in rep["components"]
    )
    ok = "ok" if rep["equal"] else "MISMATCH"
    print(f"  {name}: trace {rep['global_trace']} = {terms}  [{ok}]")


def main() -> None:
    print("hexagon self-maps")
    hexagon = fx.hexagon()
    print(f"  rotation: trace {lefschetz_number(fx.rotation_spec())}, "
          "no fixed points")
    show_localization("reflection", fx.reflection_problem())
    show_localization("doubling", fx.doubling_problem())
    show_localization("identity on the 2-sphere",
                      fx.identity_problem(fx.sphere2()))

    print("\ncycle table of the doubling map at its fixed vertex")
    heights = VertexFunctional.of(hexagon, {f"v{i}": i for i in range(6)})
    table = lefschetz_cycle_table(fx.doubling_problem(), 0, heights)
    print(f"  regime {table.regime}, sign {table.sign}")
    for vertex, value in table.table.sorted_entries():
        print(f"    m({vertex}) = {value}")
    print(f"  total {table.total()}")

    print("\nflag models")
    for n in range(1, 5):
        print(f"  flag({n}): chi {chi_c(flag_cellspace(n).space)}")
    locus = fixed_locus_cellspace(3, (2, 1))
    print(f"  fixed locus of blocks (2,1) in flag(3): chi {chi_c(locus)}")

    print("\nthree fixed spheres against the big-cell divisor")
    for ratio in (Fraction(2), Fraction(5, 3)):
        example = example_3_9(ratio)
        rows = ", ".join(
            f"{family} {value}"
            for _, family, value in example.contributions()
        )
        print(f"  ratio {ratio}: {rows}; total {example.total()}")


if __name__ == "__main__":
    main()
