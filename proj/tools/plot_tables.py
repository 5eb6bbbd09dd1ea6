"""Quick plots of scenario tables written by the spinsinglet CLI.

    python tools/plot_tables.py fig2_delta_g_sweep.csv -o fig2.png

The first column is the x axis; every other numeric column becomes a curve.
fig1a_landscape tables (kappa1, kappa2, qs) are drawn as a log-scale map.
"""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def read_table(path):
    meta, rows, header = {}, [], None
    with open(path, newline="") as f:
        for line in f:
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
                continue
            if header is None:
                header = next(csv.reader([line]))
                continue
            rows.append(next(csv.reader([line])))
    return meta, header, rows


def as_float(s):
    try:
        return float(s)
    except ValueError:
        return np.nan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("table")
    ap.add_argument("-o", "--out", default=None)
    args = ap.parse_args()

    meta, header, rows = read_table(args.table)
    numeric = [i for i, h in enumerate(header) if h != "status"]
    data = np.array([[as_float(r[i]) for i in numeric] for r in rows])
    names = [header[i] for i in numeric]

    fig, ax = plt.subplots(figsize=(6, 4))
    if names[:3] == ["kappa1", "kappa2", "qs"]:
        k1, k2 = np.unique(data[:, 0]), np.unique(data[:, 1])
        q = data[:, 2].reshape(len(k1), len(k2))
        im = ax.pcolormesh(k1, k2, np.log10(q.T + 1e-12), shading="auto")
        fig.colorbar(im, ax=ax, label="log10 Q_s")
        ax.set_xlabel("kappa1")
        ax.set_ylabel("kappa2")
    else:
        for j in range(1, len(names)):
            ax.plot(data[:, 0], data[:, j], label=names[j])
        ax.set_xlabel(names[0])
        ax.legend()
    ax.set_title(meta.get("scenario", args.table))
    fig.tight_layout()
    fig.savefig(args.out or args.table.rsplit(".", 1)[0] + ".png", dpi=120)


if __name__ == "__main__":
    main()
