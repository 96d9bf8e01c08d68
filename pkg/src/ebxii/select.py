"""Information criteria and ranked model comparison tables."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence


def aic(w: int, neg_loglik: float) -> float:
    """Akaike criterion 2w + 2(-l)."""
    if w < 0:
        raise ValueError("w must be >= 0")
    return 2.0 * w + 2.0 * neg_loglik


def bic(w: int, neg_loglik: float, n: int) -> float:
    """Schwarz criterion w log n + 2(-l)."""
    if w < 0:
        raise ValueError("w must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    return w * math.log(n) + 2.0 * neg_loglik


@dataclass(frozen=True)
class ModelFitSummary:
    """One row of a comparison table.

    ``w`` counts free parameters after fixing and tying. Rows with
    ``source="published"`` carry their criteria verbatim and are never
    recomputed; ``n`` may then be unknown (None).
    """

    label: str
    w: int
    neg_loglik: float
    n: int | None
    aic: float
    bic: float
    source: str = "fitted"

    @classmethod
    def from_fit(cls, label: str, w: int, neg_loglik: float, n: int) -> "ModelFitSummary":
        return cls(label, int(w), float(neg_loglik), int(n), aic(w, neg_loglik), bic(w, neg_loglik, n))

    @classmethod
    def published(cls, label, w, neg_loglik, aic_value, bic_value, n=None) -> "ModelFitSummary":
        return cls(label, int(w), float(neg_loglik), n, float(aic_value), float(bic_value), "published")


@dataclass(frozen=True)
class RankedRow:
    rank: int
    summary: ModelFitSummary
    value: float
    best: bool


_CRITERIA = ("aic", "bic")


def compare(summaries: Sequence[ModelFitSummary], by: str = "aic") -> list[RankedRow]:
    """Rank rows by ascending criterion; ties keep label order.

    Every row sharing the minimum value is marked best.
    """
    if by not in _CRITERIA:
        raise ValueError(f"by must be one of {_CRITERIA}")
    rows = list(summaries)
    if not rows:
        raise ValueError("nothing to compare")
    ordered = sorted(rows, key=lambda s: (getattr(s, by), s.label))
    low = getattr(ordered[0], by)
    return [RankedRow(i + 1, s, getattr(s, by), getattr(s, by) == low) for i, s in enumerate(ordered)]


def best(summaries: Sequence[ModelFitSummary], by: str = "aic") -> ModelFitSummary:
    return compare(summaries, by)[0].summary


def read_summaries_csv(text: str) -> list[ModelFitSummary]:
    """Parse rows with columns label,w,neg_loglik,aic,bic[,n[,source]].

    Lines starting with '#' are ignored. Missing aic/bic are computed (which
    needs n for bic); a missing source defaults to "published".
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    out = []
    for rec in csv.DictReader(lines):
        w = int(rec["w"])
        nll = float(rec["neg_loglik"])
        n = int(rec["n"]) if rec.get("n") not in (None, "") else None
        a = float(rec["aic"]) if rec.get("aic") not in (None, "") else aic(w, nll)
        if rec.get("bic") not in (None, ""):
            b = float(rec["bic"])
        elif n is not None:
            b = bic(w, nll, n)
        else:
            raise ValueError(f"row {rec['label']!r} has neither bic nor n")
        out.append(ModelFitSummary(rec["label"], w, nll, n, a, b, rec.get("source") or "published"))
    return out


def format_table_csv(rows: Iterable[RankedRow], by: str) -> str:
    """Ranked table as CSV with 6 significant digits and a best marker."""
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["rank", "label", "w", "neg_loglik", "aic", "bic", "n", "source", "best_" + by])
    for r in rows:
        s = r.summary
        wr.writerow([
            r.rank, s.label, s.w, f"{s.neg_loglik:.6g}", f"{s.aic:.6g}", f"{s.bic:.6g}",
            "" if s.n is None else s.n, s.source, "*" if r.best else "",
        ])
    return buf.getvalue()


def relabel(summary: ModelFitSummary, label: str) -> ModelFitSummary:
    return replace(summary, label=label)
