"""Soft-margin kernel SVM trained by deterministic two-variable updates.

Each one-vs-one binary machine solves the dual
    min 1/2 sum_ij a_i a_j y_i y_j K_ij - sum_i a_i,  0 <= a_i <= C,
    sum_i a_i y_i = 0
with analytic two-variable steps on the maximal violating pair, ties
broken by lower index, so training is bit-reproducible. Convergence means
every training point satisfies the KKT conditions within tol; otherwise
ConvergenceError reports the worst residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..canonjson import read_json, write_canonical
from ..errors import ConvergenceError, DataError, DegenerateInputError
from .kernels import KernelSpec, gram_matrix

DEFAULT_C = 10.0
DEFAULT_TOL = 1e-3
DEFAULT_MAX_PASSES = 10

_STEP_EPS = 1e-14  # times C: smaller alpha updates are treated as no-ops
_BOUND_SNAP = 1e-13  # times C: above arithmetic residue, below any real step
_SWEEP_CAP_FACTOR = 200
_SUBSAMPLE = 2000


@dataclass(frozen=True)
class PairMachine:
    """Binary machine for one class pair; class_a maps to y=-1, class_b to +1."""

    class_a: str
    class_b: str
    support_x: np.ndarray
    coef: np.ndarray  # alpha_i * y_i for each support vector
    bias: float


@dataclass(frozen=True)
class TrainedSvm:
    class_set: list[str]
    kernel: KernelSpec
    C: float
    machines: tuple[PairMachine, ...]


def _decision_values(machine: PairMachine, queries: np.ndarray, spec: KernelSpec) -> np.ndarray:
    if machine.support_x.size == 0:
        return np.full(len(queries), machine.bias)
    k = gram_matrix(machine.support_x, queries, spec)
    return machine.coef @ k + machine.bias


def _kkt_residuals(alpha: np.ndarray, yf: np.ndarray, C: float) -> np.ndarray:
    snap = _BOUND_SNAP * C
    res = np.empty_like(alpha)
    at_zero = alpha <= snap
    at_c = alpha >= C - snap
    interior = ~(at_zero | at_c)
    res[at_zero] = np.maximum(0.0, 1.0 - yf[at_zero])
    res[at_c] = np.maximum(0.0, yf[at_c] - 1.0)
    res[interior] = np.abs(yf[interior] - 1.0)
    return res


def _bound_sets(alpha: np.ndarray, y: np.ndarray, C: float) -> tuple[np.ndarray, np.ndarray]:
    """Index sets whose points bound the bias from below (up) and above (low)."""
    snap = _BOUND_SNAP * C
    up = ((y > 0) & (alpha < C - snap)) | ((y < 0) & (alpha > snap))
    low = ((y < 0) & (alpha < C - snap)) | ((y > 0) & (alpha > snap))
    return up, low


def _bias(alpha: np.ndarray, u: np.ndarray, y: np.ndarray, C: float) -> float:
    """Midpoint of the KKT-feasible bias interval [max up, min low]."""
    up, low = _bound_sets(alpha, y, C)
    vals = y - u  # point k demands b >= vals[k] (up) or b <= vals[k] (low)
    if up.any() and low.any():
        return 0.5 * float(vals[up].max() + vals[low].min())
    if up.any():
        return float(vals[up].max())
    if low.any():
        return float(vals[low].min())
    return 0.0


def _smo_binary(
    K: np.ndarray, y: np.ndarray, C: float, tol: float, max_passes: int
) -> tuple[np.ndarray, float]:
    """Maximal-violating-pair coordinate ascent on the two-variable dual.

    Each step jointly optimizes the pair whose bias demands conflict most;
    ties pick the lower index, so training is bit-reproducible. The bias
    is the midpoint of the feasible interval left at termination.
    """
    n = len(y)
    alpha = np.zeros(n)
    u = np.zeros(n)  # u_k = sum_i alpha_i y_i K[k, i], decision minus bias
    snap = _BOUND_SNAP * C
    step_eps = _STEP_EPS * C

    def try_step(i: int, j: int) -> bool:
        nonlocal u
        s = y[i] * y[j]
        if y[i] != y[j]:
            lo = max(0.0, alpha[j] - alpha[i])
            hi = min(C, C + alpha[j] - alpha[i])
        else:
            lo = max(0.0, alpha[i] + alpha[j] - C)
            hi = min(C, alpha[i] + alpha[j])
        if lo >= hi:
            return False
        d_err = (u[i] - y[i]) - (u[j] - y[j])  # error difference; bias cancels
        eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if eta > 0.0:
            aj = alpha[j] + y[j] * d_err / eta
            aj = min(hi, max(lo, aj))
        else:
            # flat or concave direction: compare the dual objective at both ends
            v_i = u[i] - alpha[i] * y[i] * K[i, i] - alpha[j] * y[j] * K[i, j]
            v_j = u[j] - alpha[i] * y[i] * K[i, j] - alpha[j] * y[j] * K[j, j]

            def restricted(a1: float, a2: float) -> float:
                quad = 0.5 * K[i, i] * a1 * a1 + 0.5 * K[j, j] * a2 * a2 + s * K[i, j] * a1 * a2
                return quad + y[i] * a1 * v_i + y[j] * a2 * v_j - a1 - a2

            a1_lo = alpha[i] + s * (alpha[j] - lo)
            a1_hi = alpha[i] + s * (alpha[j] - hi)
            psi_lo = restricted(a1_lo, lo)
            psi_hi = restricted(a1_hi, hi)
            tie = _STEP_EPS * max(1.0, abs(psi_lo), abs(psi_hi))
            if psi_lo < psi_hi - tie:
                aj = lo
            elif psi_hi < psi_lo - tie:
                aj = hi
            else:
                return False
        if abs(aj - alpha[j]) < step_eps:
            return False
        ai = alpha[i] + s * (alpha[j] - aj)
        # snap box-edge residue so bound classification stays exact
        if aj < snap:
            aj = 0.0
        elif aj > C - snap:
            aj = C
        if ai < snap:
            ai = 0.0
        elif ai > C - snap:
            ai = C
        d_i = ai - alpha[i]
        d_j = aj - alpha[j]
        if d_i == 0.0 and d_j == 0.0:
            return False
        u += (d_i * y[i]) * K[:, i] + (d_j * y[j]) * K[:, j]
        alpha[i] = ai
        alpha[j] = aj
        return True

    quiet_sweeps = 0
    for _ in range(_SWEEP_CAP_FACTOR * max_passes * n):
        up, low = _bound_sets(alpha, y, C)
        if not up.any() or not low.any():
            break
        vals = y - u
        i = int(np.flatnonzero(up)[np.argmax(vals[up])])
        j = int(np.flatnonzero(low)[np.argmin(vals[low])])
        if vals[i] - vals[j] <= 2.0 * tol:
            # no pair violates KKT by more than tol; stay quiet long enough
            quiet_sweeps += 1
            if quiet_sweeps >= max_passes:
                break
            continue
        quiet_sweeps = 0
        if not try_step(i, j):
            # extreme pair numerically stuck: scan partners in index order
            if not any(try_step(i, k) for k in range(n) if k != i):
                break

    b = _bias(alpha, u, y, C)
    worst = float(_kkt_residuals(alpha, y * (u + b), C).max())
    if worst > tol:
        raise ConvergenceError(
            f"SMO did not reach KKT tolerance {tol} (worst residual {worst:.3e})", worst
        )
    return alpha, b


def svm_train(
    train_x,
    train_y: list[str],
    spec: KernelSpec,
    C: float = DEFAULT_C,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
    class_set: list[str] | None = None,
) -> TrainedSvm:
    """Train one-vs-one machines for every class pair in class_set order."""
    X = np.asarray(train_x, dtype=np.float64)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("training vectors must form a nonempty 2-D array")
    if len(train_y) != len(X):
        raise ValueError("labels must parallel training vectors")
    if not np.all(np.isfinite(X)):
        raise DataError("training features contain non-finite values")
    if C <= 0 or tol <= 0 or max_passes < 1:
        raise ValueError("C, tol must be positive and max_passes >= 1")
    if class_set is None:
        class_set = sorted(set(train_y))
    present = set(train_y)
    if len(present) < 2:
        raise DataError("SVM training needs at least 2 classes")
    missing = [c for c in class_set if c not in present]
    if missing:
        raise DataError(f"class_set entries without training samples: {missing}")
    if sorted(set(class_set)) != sorted(class_set) or not present <= set(class_set):
        raise ValueError("class_set must be duplicate-free and cover the training labels")

    labels = np.array(train_y)
    machines = []
    for ai in range(len(class_set)):
        for bi in range(ai + 1, len(class_set)):
            ca, cb = class_set[ai], class_set[bi]
            mask = (labels == ca) | (labels == cb)
            Xp = X[mask]
            y = np.where(labels[mask] == cb, 1.0, -1.0)
            K = gram_matrix(Xp, Xp, spec)
            try:
                alpha, bias = _smo_binary(K, y, C, tol, max_passes)
            except ConvergenceError as exc:
                raise ConvergenceError(
                    f"pair ({ca}, {cb}): {exc}", exc.worst_residual
                ) from exc
            sv = alpha > 0.0
            machines.append(
                PairMachine(ca, cb, Xp[sv].copy(), (alpha[sv] * y[sv]).copy(), float(bias))
            )
    return TrainedSvm(list(class_set), spec, float(C), tuple(machines))


def svm_predict_batch(model: TrainedSvm, queries) -> list[str]:
    Q = np.asarray(queries, dtype=np.float64)
    if Q.ndim == 1:
        Q = Q[None, :]
    votes = {c: np.zeros(len(Q), dtype=int) for c in model.class_set}
    strength = {c: np.zeros(len(Q)) for c in model.class_set}
    for machine in model.machines:
        f = _decision_values(machine, Q, model.kernel)
        wins_b = f > 0.0
        votes[machine.class_b] += wins_b
        votes[machine.class_a] += ~wins_b
        strength[machine.class_a] += np.abs(f)
        strength[machine.class_b] += np.abs(f)
    out = []
    for qi in range(len(Q)):
        best = max(votes[c][qi] for c in model.class_set)
        tied = [c for c in model.class_set if votes[c][qi] == best]
        if len(tied) > 1:
            top = max(strength[c][qi] for c in tied)
            tied = [c for c in tied if strength[c][qi] == top]
        out.append(tied[0])  # class_set order breaks any remaining tie
    return out


def svm_predict(model: TrainedSvm, query) -> str:
    query = np.asarray(query, dtype=np.float64)
    if query.ndim != 1:
        raise ValueError("query must be a 1-D vector")
    return svm_predict_batch(model, query[None, :])[0]


def sigma_median_heuristic(train_x, seed: int = 0) -> float:
    """Median pairwise Euclidean distance, excluding identical-vector pairs.

    Exact for n <= 2000; larger sets use a seeded subsample of 2000 rows.
    """
    X = np.asarray(train_x, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("expected a 2-D array of vectors")
    if len(X) < 2:
        raise DegenerateInputError("need at least 2 vectors for the median heuristic")
    if len(X) > _SUBSAMPLE:
        rows = np.random.default_rng(seed).choice(len(X), _SUBSAMPLE, replace=False)
        X = X[np.sort(rows)]
    # group exactly-equal rows so duplicate pairs are excluded exactly
    _, groups = np.unique(X, axis=0, return_inverse=True)
    if groups.max() == 0:
        raise DegenerateInputError("all vectors identical; median distance undefined")
    sq_norms = (X**2).sum(axis=1)
    sq = sq_norms[:, None] + sq_norms[None, :] - 2.0 * (X @ X.T)
    dists = np.sqrt(np.maximum(sq, 0.0))
    iu, ju = np.triu_indices(len(X), k=1)
    keep = groups[iu] != groups[ju]
    return float(np.median(dists[iu[keep], ju[keep]]))


# ---------------------------------------------------------------------------
# model persistence


def save_svm(model: TrainedSvm, path) -> None:
    doc = {
        "class_set": model.class_set,
        "kernel": _kernel_doc(model.kernel),
        "C": model.C,
        "machines": [
            {
                "class_a": m.class_a,
                "class_b": m.class_b,
                "support": [[float(v) for v in row] for row in m.support_x],
                "coef": [float(v) for v in m.coef],
                "bias": m.bias,
            }
            for m in model.machines
        ],
    }
    write_canonical(path, doc)


def _kernel_doc(spec: KernelSpec) -> dict:
    if spec.kind == "rbf":
        return {"kind": "rbf", "sigma": float(spec.sigma)}
    return {"kind": "polynomial", "degree": int(spec.degree), "coef": float(spec.coef)}


def kernel_from_doc(doc: dict) -> KernelSpec:
    if doc.get("kind") == "rbf":
        return KernelSpec("rbf", sigma=float(doc["sigma"]))
    if doc.get("kind") == "polynomial":
        return KernelSpec("polynomial", degree=int(doc["degree"]), coef=float(doc["coef"]))
    raise ValueError(f"unknown kernel doc {doc!r}")


def load_svm(path) -> TrainedSvm:
    doc = read_json(path)
    machines = []
    for m in doc["machines"]:
        support = (
            np.array(m["support"], dtype=np.float64) if m["coef"] else np.zeros((0, 0))
        )
        machines.append(
            PairMachine(
                m["class_a"],
                m["class_b"],
                support,
                np.array(m["coef"], dtype=np.float64),
                float(m["bias"]),
            )
        )
    return TrainedSvm(
        list(doc["class_set"]), kernel_from_doc(doc["kernel"]), float(doc["C"]), tuple(machines)
    )
