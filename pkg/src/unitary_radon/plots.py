"""Figure rendering for the report path.

matplotlib is imported lazily with the Agg backend so library users never pay
for it; every function writes a file and returns its path.
"""

from __future__ import annotations


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def plot_kernel_grid(rows, path, title="kernel magnitude"):
    """Heatmap of |K| over the (a, b) scan grid emitted by kernel-eval.

    rows are (a, b, re, im) tuples on a full rectangular grid.
    """
    import numpy as np
    plt = _plt()
    avals = sorted({r[0] for r in rows})
    bvals = sorted({r[1] for r in rows})
    grid = np.zeros((len(bvals), len(avals)))
    a_index = {a: i for i, a in enumerate(avals)}
    b_index = {b: i for i, b in enumerate(bvals)}
    for a, b, re, im in rows:
        grid[b_index[b], a_index[a]] = abs(complex(re, im))
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    im_ = ax.imshow(grid, origin="lower", aspect="auto",
                    extent=[avals[0], avals[-1], bvals[0], bvals[-1]], cmap="viridis")
    fig.colorbar(im_, ax=ax, label="|K|")
    ax.set_xlabel("first-argument scale a")
    ax.set_ylabel("second-argument scale b")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_coefficients(coeff_rows, path, title="projection coefficients"):
    """Bar chart of coefficient magnitudes from a report table."""
    plt = _plt()
    labels, mags = [], []
    for row in coeff_rows:
        if "degree" in row:
            labels.append(str(row["degree"]))
        else:
            labels.append(f"({row['p']},{row['q']})")
        if "value" in row:
            mags.append(abs(complex(row["value"]["re"], row["value"]["im"])))
        else:
            mags.append(max((abs(complex(b["re"], b["im"]))
                             for b in row["clifford"]["blades"]), default=0.0))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(labels) + 1.5), 3.4))
    ax.bar(range(len(labels)), mags, color="#3b6ea5")
    ax.set_xticks(range(len(labels)), labels, rotation=45, ha="right")
    ax.set_ylabel("|coefficient|")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_verify(checks, path, title="verification checks"):
    """Horizontal pass/fail strip with measured-value annotations."""
    plt = _plt()
    names = [c["name"] for c in checks]
    measured = [c["measured"] for c in checks]
    colors = ["#2e7d32" if c["passed"] else "#c62828" for c in checks]
    fig, ax = plt.subplots(figsize=(7.0, 0.34 * len(names) + 1.2))
    ax.barh(range(len(names)), [max(m, 1e-18) for m in measured], color=colors, log=True)
    ax.set_yticks(range(len(names)), names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("measured deviation (log)")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
