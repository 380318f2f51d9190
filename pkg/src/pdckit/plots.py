"""Figure rendering for report outputs.

Each function writes one PNG next to the delimited output it accompanies.
All figures use the Agg backend so nothing here needs a display.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .champions import ChampionRecord
from .counting import GapHistogram
from .hardy_littlewood import Prediction

DPI = 150


def plot_gap_histogram(hist: GapHistogram, path: str | os.PathLike) -> None:
    gaps = sorted(hist.counts)
    counts = [hist.counts[g] for g in gaps]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(gaps, counts, width=0.8, color="#35618f")
    champ = hist.argmax[0]
    ax.bar([champ], [hist.counts[champ]], width=0.8, color="#c44e52",
           label=f"champion d = {champ}")
    ax.set_xlabel("gap between consecutive primes")
    ax.set_ylabel("occurrences")
    ax.set_title(f"prime gaps up to {hist.x}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_pair_histogram(counts: np.ndarray, x: int, path: str | os.PathLike) -> None:
    d = np.arange(len(counts))
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(d[1:], counts[1:], lw=0.8, color="#35618f")
    top = int(np.argmax(counts))
    ax.plot([top], [counts[top]], "o", color="#c44e52", ms=5,
            label=f"peak d = {top}")
    ax.set_xlabel("difference d")
    ax.set_ylabel("pairs (p, p + d) with both prime, p + d <= x")
    ax.set_title(f"prime pair differences up to {x}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_champion_scan(records: Sequence[ChampionRecord],
                       path: str | os.PathLike) -> None:
    xs = [r.x for r in records]
    ds = [r.d_star for r in records]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(xs, ds, "o-", color="#35618f")
    for r in records:
        ax.annotate(str(r.d_star), (r.x, r.d_star),
                    textcoords="offset points", xytext=(0, 6), fontsize=8)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("x")
    ax.set_ylabel("d* of the champion")
    k = records[0].k if records else 0
    ax.set_title(f"champion gcd growth, k = {k}")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_predictions(preds: Sequence[Prediction], path: str | os.PathLike) -> None:
    xs = [p.x for p in preds]
    ratios = [p.ratio for p in preds]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    if any(r is not None for r in ratios):
        kept = [(x, r) for x, r in zip(xs, ratios) if r is not None]
        ax.plot([x for x, _ in kept], [r for _, r in kept], "o-", color="#35618f",
                label="actual / predicted")
        ax.axhline(1.0, color="#c44e52", lw=0.8, ls="--")
        ax.set_ylabel("count ratio")
    else:
        ax.plot(xs, [p.exact for p in preds], "o-", color="#35618f",
                label="exact count (prediction is zero)")
        ax.set_ylabel("count")
    ax.set_xscale("log")
    ax.set_xlabel("x")
    els = preds[0].elements if preds else ()
    ax.set_title(f"prediction quality for differences {list(els)}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
