#!/usr/bin/env python3
"""Render the energy / heat / apparent-temperature panels from a
trajectory CSV produced by `qcascade run`.

Usage: plot_trajectory.py out/fig3c.csv [figure.png]
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"

    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    spins = sorted(int(k[2:]) for k in rows[0] if k.startswith("E_"))

    steps = [float(r["step"]) for r in rows]
    fig, (ax_e, ax_q, ax_at) = plt.subplots(1, 3, figsize=(12, 3.2))

    for k in spins:
        e0 = float(rows[0][f"E_{k}"])
        ax_e.plot(steps, [float(r[f"E_{k}"]) - e0 for r in rows],
                  label=f"spin {k}")
    ax_e.set_xlabel("sub-interaction")
    ax_e.set_ylabel(r"$\Delta E_k$  [$\delta$]")
    ax_e.axhline(0.0, color="gray", lw=0.5)
    ax_e.legend(frameon=False)

    ax_q.plot(steps, [float(r["Q_bath"]) for r in rows], color="tab:red",
              label="heat to bath")
    ax_q.plot(steps, [float(r["F"]) - float(rows[0]["F"]) for r in rows],
              color="tab:purple", label=r"$\Delta F$")
    ax_q.set_xlabel("sub-interaction")
    ax_q.axhline(0.0, color="gray", lw=0.5)
    ax_q.legend(frameon=False)

    for k in spins:
        pts = [(s, float(r[f"AT_{k}"]))
               for s, r in zip(steps, rows) if r[f"AT_{k}_status"] == "ok"]
        if pts:
            ax_at.plot(*zip(*pts), label=f"AT spin {k}")
    ax_at.set_xlabel("sub-interaction")
    ax_at.set_ylabel(r"apparent temperature  [$\delta$]")
    ax_at.legend(frameon=False)

    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
