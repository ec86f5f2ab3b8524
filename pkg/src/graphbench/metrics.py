"""Evaluation metrics for classification and clustering, plus the paired
statistical comparison used by the benchmark harness.

Clustering agreement uses natural logarithms and sqrt-normalized NMI.  The
paired t-test computes its p-value through the regularized incomplete beta
function implemented here (continued fraction), so the library has no
runtime dependency on a stats package; tests cross-check it against an
independent reference.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._validation import as_label_array, check_same_length

__all__ = [
    "ClassificationMetrics",
    "ClusteringMetrics",
    "ComparisonResult",
    "RunSummary",
    "classification_metrics",
    "clustering_metrics",
    "compare_methods",
    "regularized_incomplete_beta",
    "student_t_two_sided_p",
]


@dataclass(frozen=True)
class ClassificationMetrics:
    accuracy: float
    f1_macro: float
    f1_micro: float
    confusion: np.ndarray


@dataclass(frozen=True)
class ClusteringMetrics:
    nmi: float
    ari: float
    homogeneity: float
    completeness: float


def classification_metrics(y_true, y_pred, n_classes):
    """Accuracy, macro/micro F1, and the confusion matrix.

    ``confusion[i, j]`` counts nodes with true class i predicted as j.
    Per-class F1 treats 0/0 as 0; micro-F1 equals accuracy for single-label
    classification.
    """
    y_true = as_label_array(y_true, "y_true")
    y_pred = as_label_array(y_pred, "y_pred")
    check_same_length(y_true, y_pred)
    if len(y_true) == 0:
        raise ValueError("empty label arrays")
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(confusion, (y_true, y_pred), 1)

    diag = np.diagonal(confusion).astype(np.float64)
    true_per_class = confusion.sum(axis=1)
    pred_per_class = confusion.sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        precision = np.where(pred_per_class > 0, diag / pred_per_class, 0.0)
        recall = np.where(true_per_class > 0, diag / true_per_class, 0.0)
        denom = precision + recall
        f1 = np.where(denom > 0, 2 * precision * recall / denom, 0.0)

    accuracy = float(diag.sum() / len(y_true))
    return ClassificationMetrics(
        accuracy=accuracy,
        f1_macro=float(f1.mean()) if n_classes else 0.0,
        f1_micro=accuracy,
        confusion=confusion,
    )


def _contingency(a, b):
    table = {}
    for x, y in zip(a.tolist(), b.tolist()):
        table[(x, y)] = table.get((x, y), 0) + 1
    rows = sorted({x for x, _ in table})
    cols = sorted({y for _, y in table})
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    ri = {x: i for i, x in enumerate(rows)}
    ci = {y: j for j, y in enumerate(cols)}
    for (x, y), c in table.items():
        mat[ri[x], ci[y]] = c
    return mat


def _entropy(counts, n):
    counts = counts[counts > 0].astype(np.float64)
    p = counts / n
    return float(-(p * np.log(p)).sum())


def clustering_metrics(true_labels, pred_labels):
    """NMI (sqrt-normalized), ARI, homogeneity, and completeness.

    All four are invariant to relabeling of either partition.  When one
    partition carries zero entropy, NMI is 1 if the partitions are
    identical up to relabeling and 0 otherwise; homogeneity/completeness
    are 1 whenever their conditioning entropy vanishes.
    """
    a = as_label_array(true_labels, "true_labels")
    b = as_label_array(pred_labels, "pred_labels")
    check_same_length(a, b, "true_labels", "pred_labels")
    n = len(a)
    if n < 2:
        raise ValueError("clustering metrics need at least 2 points")

    cont = _contingency(a, b)
    row_sums = cont.sum(axis=1)
    col_sums = cont.sum(axis=0)
    h_true = _entropy(row_sums, n)
    h_pred = _entropy(col_sums, n)

    # mutual information
    mi = 0.0
    nz = np.nonzero(cont)
    for i, j in zip(*nz):
        nij = cont[i, j]
        mi += (nij / n) * math.log(n * nij / (row_sums[i] * col_sums[j]))
    mi = max(mi, 0.0)

    identical = cont.shape[0] == cont.shape[1] and np.count_nonzero(cont) == cont.shape[0]
    if h_true <= 0.0 or h_pred <= 0.0:
        nmi = 1.0 if identical else 0.0
    else:
        nmi = mi / math.sqrt(h_true * h_pred)

    # adjusted Rand index (permutation-model adjustment)
    def comb2(x):
        return x * (x - 1) / 2.0

    sum_ij = float(sum(comb2(v) for v in cont.ravel().tolist()))
    sum_a = float(sum(comb2(v) for v in row_sums.tolist()))
    sum_b = float(sum(comb2(v) for v in col_sums.tolist()))
    total = comb2(n)
    expected = sum_a * sum_b / total
    maximum = (sum_a + sum_b) / 2.0
    ari = 1.0 if maximum == expected else (sum_ij - expected) / (maximum - expected)

    # conditional entropies for homogeneity/completeness
    h_true_given_pred = 0.0
    h_pred_given_true = 0.0
    for i, j in zip(*nz):
        nij = cont[i, j]
        h_true_given_pred -= (nij / n) * math.log(nij / col_sums[j])
        h_pred_given_true -= (nij / n) * math.log(nij / row_sums[i])
    homogeneity = 1.0 if h_true_given_pred <= 1e-15 else 1.0 - h_true_given_pred / h_true
    completeness = 1.0 if h_pred_given_true <= 1e-15 else 1.0 - h_pred_given_true / h_pred

    return ClusteringMetrics(
        nmi=float(nmi), ari=float(ari),
        homogeneity=float(homogeneity), completeness=float(completeness),
    )


# ---------------------------------------------------------------------------
# paired comparison statistics


def _beta_continued_fraction(a, b, x, max_iter=300, eps=3e-16):
    """Lentz continued fraction for the incomplete beta integral."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise RuntimeError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a, b, x):
    """I_x(a, b) via the symmetric continued-fraction expansion."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log(1.0 - x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_two_sided_p(t, df):
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if math.isinf(t):
        return 0.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


def _t_critical(df, alpha=0.05):
    """Two-sided critical value by bisection on the CDF (monotone in t)."""
    lo, hi = 0.0, 1.0
    while student_t_two_sided_p(hi, df) > alpha:
        hi *= 2.0
        if hi > 1e8:
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if student_t_two_sided_p(mid, df) > alpha:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _ci95(values):
    values = np.asarray(values, dtype=np.float64)
    mean = float(values.mean())
    if len(values) < 2:
        return (mean, mean)
    sd = float(values.std(ddof=1))
    if sd == 0.0:
        return (mean, mean)
    half = _t_critical(len(values) - 1) * sd / math.sqrt(len(values))
    return (mean - half, mean + half)


@dataclass(frozen=True)
class ComparisonResult:
    """Paired t-test between two per-seed metric series (a minus b)."""

    t: float
    p_value: float
    cohens_d: float
    ci95_a: tuple
    ci95_b: tuple
    degenerate: bool


def compare_methods(a, b):
    """Paired t-test, Cohen's d on the paired differences, and per-method 95%
    confidence intervals.

    Degenerate cases follow fixed rules: identical series give (t=0, p=1,
    d=0); zero-variance non-zero differences give infinite t/d sentinels
    with p=0 and the ``degenerate`` flag set.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    check_same_length(a, b, "a", "b")
    if len(a) < 2:
        raise ValueError("paired comparison needs at least 2 values")

    diff = a - b
    mean = float(diff.mean())
    sd = float(diff.std(ddof=1))
    n = len(diff)
    if sd == 0.0:
        if mean == 0.0:
            return ComparisonResult(0.0, 1.0, 0.0, _ci95(a), _ci95(b), False)
        sign = math.copysign(1.0, mean)
        return ComparisonResult(sign * math.inf, 0.0, sign * math.inf,
                                _ci95(a), _ci95(b), True)
    t = mean / (sd / math.sqrt(n))
    p = student_t_two_sided_p(t, n - 1)
    d = mean / sd
    return ComparisonResult(float(t), float(p), float(d), _ci95(a), _ci95(b), False)


@dataclass(frozen=True)
class RunSummary:
    """Per-seed metric values for one (method, dataset) cell."""

    method: str
    dataset: str
    values: tuple
    metric: str = "accuracy"

    @property
    def mean(self):
        return float(np.mean(self.values))

    @property
    def std(self):
        return float(np.std(self.values, ddof=1)) if len(self.values) > 1 else 0.0

    def formatted(self, scale=1.0, digits=3):
        return f"{self.mean * scale:.{digits}f} ± {self.std * scale:.{digits}f}"
