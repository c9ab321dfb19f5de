"""Write the standard set of parameter sweeps as CSV files.

    python scripts/sweeps.py [OUTDIR]

Every file uses the same CSV dialect as the command-line tool.  Couplings are
in units of x, so detunings and rates are in units of x^2.
"""

import math
import sys
from pathlib import Path

from chiralwg.sweep import Axis, run_sweep

PI = math.pi
T_ALL = ["T_left", "T_right", "R_left"]

TWO_POINT_SETS = {
    # (x1, y1, x2, y2), phi12
    "antilorentz_pi": ((1.0, 0.5, 3.0, 2.5), PI),
    "even_x_pi": ((1.0, 0.5, 1.0, 2.5), PI),
    "chiral_zero": ((1.0, 2.0, 1.0, 2.0), 0.0),
}

RETARDED_SETS = {
    "bec": (1.0, 0.5, 1.0, 0.5),
    "uuec": (1.0, 0.5, 1.0, 1.5),
    "buec": (1.0, 0.5, 0.5, 1.0),
}


def two_point(out: Path) -> None:
    for name, ((x1, y1, x2, y2), phi) in TWO_POINT_SETS.items():
        g = run_sweep({"xs": (x1, x2), "ys": (y1, y2), "phi12": phi}, Axis("delta", -50, 50, 2001), T_ALL)
        g.to_csv((out / f"two_point_{name}.csv").open("w", newline="\n"))


def coupling_maps(out: Path) -> None:
    # transmission at resonance over the disordered last point, in-phase and router phase
    for n, phi, tag in ((2, 0.0, "n2_phase0"), (5, 0.0, "n5_phase0"), (5, 2 * PI / 5, "n5_router")):
        base = {"n": n, "x": 1.0, "y": 2.0, "phi12": phi}
        g = run_sweep(base, Axis("xi", 0, 4, 161), ["T_left", "T_right"], axis2=Axis("yi", 0, 4, 161), relative=True)
        g.to_csv((out / f"coupling_map_{tag}.csv").open("w", newline="\n"))


def phase_maps(out: Path) -> None:
    # T over (delta, phi12): dark phases, and one reflection window per router phase
    cases = {
        "bec_n5": {"n": 5, "x": 1.0, "y": 2.0},
        "uuec_n5": {"n": 5, "x": 1.0, "y": 2.0, "yi": 3.0},
        "buec_n6": {"n": 6, "x": 1.0, "y": 2.0, "xi": 0.5, "yi": 2.5},
    }
    for tag, base in cases.items():
        g = run_sweep(base, Axis("delta", -50, 50, 401), ["T_left"], axis2=Axis("phi12", 0, 2 * PI, 241))
        g.to_csv((out / f"phase_map_{tag}.csv").open("w", newline="\n"))


def contrast_maps(out: Path) -> None:
    for n, phi, tag in ((5, 0.0, "phase0"), (5, 2 * PI / 5, "router"), (5, PI, "phase_pi")):
        base = {"n": n, "x": 1.0, "y": 2.0, "gamma": 0.2, "phi12": phi}
        g = run_sweep(base, Axis("xi", 0, 4, 161), ["contrast", "T_left", "T_right"], axis2=Axis("yi", 0, 4, 161), relative=True)
        g.to_csv((out / f"contrast_map_{tag}.csv").open("w", newline="\n"))


def retarded_spectra(out: Path) -> None:
    for tag, (x1, y1, x2, y2) in RETARDED_SETS.items():
        base = {"xs": (x1, x2), "ys": (y1, y2), "phi12": 0.0, "markovian": False}
        g = run_sweep(base, Axis("delta", -30, 30, 3001), ["T_left", "T_right"], axis2=Axis("tau12", 0.5, 2.5, 5))
        g.to_csv((out / f"retarded_{tag}.csv").open("w", newline="\n"))


def main(argv: list[str]) -> int:
    out = Path(argv[1] if len(argv) > 1 else "results")
    out.mkdir(parents=True, exist_ok=True)
    for step in (two_point, coupling_maps, phase_maps, contrast_maps, retarded_spectra):
        step(out)
        print(f"{step.__name__}: done")
    print(f"CSV files in {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
