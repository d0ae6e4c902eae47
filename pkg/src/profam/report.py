"""Delimited and rendered outputs for report-producing commands.

Whenever a command writes a JSON report, the same data is also written
as a CSV next to it, plus a rendered PNG figure (matplotlib, Agg).
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .family import Fingerprint


def fingerprint_csv(
    path: Path, labels: Sequence[tuple[int, int]], fingerprints: Sequence[Fingerprint]
) -> None:
    targets = [name for name, _, _ in fingerprints[0].entries]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["target"]
        for a, b in labels:
            header += [f"hom_{a}_{b}", f"epi_{a}_{b}"]
        writer.writerow(header)
        for row_idx, target in enumerate(targets):
            row: list = [target]
            for fp in fingerprints:
                _, hom, epi = fp.entries[row_idx]
                row += [hom, epi]
            writer.writerow(row)


def fingerprint_figure(
    path: Path, labels: Sequence[tuple[int, int]], fingerprints: Sequence[Fingerprint]
) -> None:
    targets = [name for name, _, _ in fingerprints[0].entries]
    homs = np.array([[fp.entries[i][1] for i in range(len(targets))] for fp in fingerprints])
    epis = np.array([[fp.entries[i][2] for i in range(len(targets))] for fp in fingerprints])

    fig, axes = plt.subplots(
        2, 1, figsize=(max(6.0, 0.45 * len(targets)), 1.1 * len(labels) + 2.4), sharex=True
    )
    for ax, data, title in ((axes[0], homs, "hom counts"), (axes[1], epis, "epi counts")):
        shown = np.log10(np.maximum(data, 1))
        ax.imshow(shown, aspect="auto", cmap="viridis")
        ax.set_yticks(range(len(labels)), [f"({a},{b})" for a, b in labels])
        ax.set_title(title, fontsize=9)
        for i in range(data.shape[0]):
            for j in range(data.shape[1]):
                ax.text(j, i, str(data[i, j]), ha="center", va="center", fontsize=5, color="w")
    axes[1].set_xticks(range(len(targets)), targets, rotation=90, fontsize=6)
    fig.suptitle("finite-quotient fingerprints per family member")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def invariant_csv(path: Path, report) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["member", "modulus", "generates", "nielsen_orbit", "tsystem_orbit"])
        for r in report.rows:
            writer.writerow(
                [f"({r.member[0]},{r.member[1]})", r.modulus, r.generates, r.nielsen_orbit, r.tsystem_orbit]
            )


def invariant_figure(path: Path, report) -> None:
    moduli = sorted({r.modulus for r in report.rows})
    labels = []
    for r in report.rows:
        if r.member not in labels:
            labels.append(r.member)
    grid = np.full((len(labels), len(moduli)), -1.0)
    text = {}
    for r in report.rows:
        i, j = labels.index(r.member), moduli.index(r.modulus)
        if r.nielsen_orbit is not None:
            grid[i, j] = r.nielsen_orbit
            text[i, j] = f"{r.nielsen_orbit}/{r.tsystem_orbit}"
        else:
            text[i, j] = "x"
    fig, ax = plt.subplots(figsize=(1.2 * len(moduli) + 2.0, 0.6 * len(labels) + 1.8))
    ax.imshow(grid, aspect="auto", cmap="tab20", vmin=-1)
    ax.set_xticks(range(len(moduli)), [f"mod {m}" for m in moduli])
    ax.set_yticks(range(len(labels)), [f"({a},{b})" for a, b in labels])
    for (i, j), s in text.items():
        ax.text(j, i, s, ha="center", va="center", fontsize=8)
    ax.set_title("nielsen/tsystem orbit of the induced pair per congruence image")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def sibling(path: Path, suffix: str) -> Path:
    return path.with_suffix(suffix)
