from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from records.base_record import BaseRecord
from records.features import ContextSpan, FeatureKind


@dataclass(frozen=True)
class CorrelationEntry(BaseRecord):
    """
    Correlation of one feature column with frame reduction labels

    Attributes:
        kind    feature kind
        span    context span
        r       Pearson r, None when undefined
        n       labeled frames entering the correlation
    """
    kind: FeatureKind
    span: ContextSpan
    r: Optional[float]
    n: int

    @property
    def defined(self) -> bool:
        return self.r is not None

    def get_dict(self) -> dict:
        return {"kind": self.kind.value, "span": self.span.value, "r": self.r, "n": self.n}


@dataclass(frozen=True)
class CorrelationTable(BaseRecord):
    """
    Correlations of every (kind, span) column, kind-major, span-minor

    Attributes:
        language    language tag
        entries     one entry per column
    """
    language: str
    entries: List[CorrelationEntry]

    def entry(self, kind: FeatureKind, span: ContextSpan) -> CorrelationEntry:
        for entry in self.entries:
            if entry.kind == kind and entry.span == span:
                return entry
        raise KeyError((kind, span))

    def strong(self, threshold: float) -> List[CorrelationEntry]:
        """
        Entries whose correlation magnitude exceeds a threshold

        :param threshold:   strictly exceeded magnitude
        :return:            defined entries with |r| > threshold
        """
        return [entry for entry in self.entries if entry.defined and abs(entry.r) > threshold]

    def best_span(self, kind: FeatureKind) -> Optional[CorrelationEntry]:
        """
        The span of a kind with the largest correlation magnitude
        Ties keep the earlier span

        :param kind:    feature kind
        :return:        entry, None when no span is defined
        """
        best = None
        for entry in self.entries:
            if entry.kind != kind or not entry.defined:
                continue
            if best is None or abs(entry.r) > abs(best.r):
                best = entry
        return best

    def get_dict(self) -> dict:
        return {
            "language": self.language,
            "entries": len(self.entries),
            "undefined": sum(1 for entry in self.entries if not entry.defined),
        }


@dataclass(frozen=True, eq=False)
class ReductionDistribution(BaseRecord):
    """
    Distribution of labeled frame levels

    Attributes:
        percentages     percent of labeled frames per level 0..3
        mean            mean level
        sd              standard deviation of levels
        n               labeled frames
    """
    percentages: np.ndarray
    mean: float
    sd: float
    n: int

    def get_dict(self) -> dict:
        return {"percentages": self.percentages.tolist(), "mean": self.mean, "sd": self.sd, "n": self.n}


@dataclass(frozen=True, eq=False)
class FunctionStat(BaseRecord):
    """
    Reduction statistics of one pragmatic function tag

    Attributes:
        tag             function tag, or "all" for the reference row
        mean            mean of per-region mean levels
        n               regions overlapping at least one labeled frame
        t               t statistic against the global mean, None when unavailable
        p               one-sided p, None when unavailable
        survives        Bonferroni survival flag
        percentages     percent of labeled frames per level 0..3 inside the tag's regions
        effect_size     (mean - global mean) / global sd, None when unavailable
    """
    tag: str
    mean: Optional[float]
    n: int
    t: Optional[float]
    p: Optional[float]
    survives: bool
    percentages: np.ndarray
    effect_size: Optional[float] = None

    @property
    def available(self) -> bool:
        return self.p is not None

    def get_dict(self) -> dict:
        return {
            "tag": self.tag,
            "mean": self.mean,
            "n": self.n,
            "t": self.t,
            "p": self.p,
            "bonferroni": self.survives,
            "pct0": float(self.percentages[0]),
            "pct1": float(self.percentages[1]),
            "pct2": float(self.percentages[2]),
            "pct3": float(self.percentages[3]),
        }


@dataclass(frozen=True)
class FunctionStats(BaseRecord):
    """
    Statistics of every function tag against a global mean

    Attributes:
        overall         the "all" reference row over every labeled frame
        rows            per-tag rows, ordered by p with unavailable tags last
        global_mean     reference mean for the t-tests
        alpha           raw significance level
        family_size     Bonferroni family size
    """
    overall: FunctionStat
    rows: List[FunctionStat]
    global_mean: float
    alpha: float
    family_size: int

    def row(self, tag: str) -> FunctionStat:
        for row in self.rows:
            if row.tag == tag:
                return row
        raise KeyError(tag)

    def get_dict(self) -> dict:
        return {
            "global_mean": self.global_mean,
            "tags": len(self.rows),
            "significant": sum(1 for row in self.rows if row.available and row.p < self.alpha),
            "survivors": sum(1 for row in self.rows if row.survives),
        }


@dataclass(frozen=True)
class EvalReport(BaseRecord):
    """
    Held-out evaluation of a predictor

    Attributes:
        r               Pearson r between predictions and labels, None when undefined
        n               evaluated frames
        holdout         evaluated conversation ids
        model           model kind
        train_language  language the model was trained on
        language        language evaluated on
    """
    r: Optional[float]
    n: int
    holdout: List[str]
    model: str = ""
    train_language: str = ""
    language: str = ""

    @property
    def defined(self) -> bool:
        return self.r is not None

    @property
    def cross_language(self) -> bool:
        return bool(self.train_language and self.language and self.train_language != self.language)

    def get_dict(self) -> dict:
        return {
            "model": self.model,
            "train_language": self.train_language,
            "language": self.language,
            "holdout": ";".join(self.holdout),
            "n": self.n,
            "r": self.r,
        }
