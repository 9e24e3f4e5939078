"""
Seeded Monte Carlo random walks on the colored-heap representation.

Each step multiplies the current element by a uniformly chosen letter:
2n choices f_i^{+-1} in group mode, n positive choices in semigroup
mode. The heap makes a step O(1): push into column i, or in group mode
cancel against a removable opposite-color top cell, then refresh roof
membership of columns i-1, i, i+1 (the only columns whose neighborhood
changed). The semigroup walk is exactly ballistic deposition: cells
only pile up, the word length equals the step count, and the heap's
height and density are surface-growth observables.

Measured quantities, per trial and over a stationary window that
discards the first burn_in steps (default 10 n, the roof's O(n)
relaxation scale):

  drift         final reduced length / steps (identically 1 in
                semigroup mode);
  roof density  time average of #T_j / n, where #T_j is the roof size
                after step j; approaches 1/3 for large n;
  entropy       semigroup: -(1/W) sum_j log(#T_j / n) over the window,
                approaching log 3; group: the plug-in log(3 - alpha),
                since the 2n-letter walk admits no direct trajectory
                estimator of this form;
  alpha         half the difference of the conditional probabilities
                that a reduction step grows vs shrinks the roof;
  heap geometry semigroup: height coefficient H n / N and cell density
                N / (n H) of the deposit.

Determinism: the letter stream of trial t is Philox counter-based
random bits keyed by (seed, t), reduced modulo the letter count (bias
below 2^-53 for n <= 2^10, since 2n divides into 2^64 that evenly).
Identical (params, trial_index) give bit-identical WalkStats on every
platform: the step kernels manipulate integers only, and every floating
point statistic is derived afterwards from those integers in a fixed
order. The same kernel source runs either compiled by numba (default)
or as plain Python; the two paths execute the same statements and are
cross-checked bit-for-bit in the tests.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from locfree.core import GROUP, SEMIGROUP, MODES

try:
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

OPEN = "open"
PERIODIC = "periodic"


@dataclass(frozen=True)
class WalkParams:
    """
    Fully explicit run description; the engine reads only this record.

    burn_in=None resolves to 10 * n at construction (clamped below
    steps for very short runs), so the stored record always shows the
    value actually used.
    """

    n: int
    steps: int
    trials: int
    seed: int
    mode: str
    snapshot_every: int = 0
    burn_in: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.snapshot_every < 0:
            raise ValueError("snapshot_every must be >= 0")
        if self.burn_in is None:
            object.__setattr__(self, "burn_in", min(10 * self.n, self.steps - 1))
        if not 0 <= self.burn_in < self.steps:
            raise ValueError("need 0 <= burn_in < steps")


@dataclass(frozen=True)
class WalkStats:
    """Integer-exact outcome of one trial plus derived per-trial reals."""

    n: int
    mode: str
    steps: int
    trial_index: int
    burn_in: int
    window_steps: int
    final_length: int
    height: int  # max occupied level
    reductions: int  # cancellation steps, whole run
    reductions_window: int
    roof_delta_plus_given_reduction: int  # window reductions that grew the roof
    roof_delta_minus_given_reduction: int
    roof_hist: tuple[int, ...]  # roof_hist[k] = window steps with roof size k
    snapshots: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]

    @property
    def roof_size_sum(self) -> int:
        return sum(k * c for k, c in enumerate(self.roof_hist))

    @property
    def roof_size_sq_sum(self) -> int:
        return sum(k * k * c for k, c in enumerate(self.roof_hist))

    @property
    def log_roof_sum(self) -> float:
        """sum over the window of log(#T_j / n)."""
        logn = math.log(self.n)
        return sum(
            c * (math.log(k) - logn) for k, c in enumerate(self.roof_hist) if c
        )

    @property
    def drift(self) -> float:
        return self.final_length / self.steps


def letter_stream(params: WalkParams, trial_index: int) -> np.ndarray:
    """
    The deterministic letter codes of one trial: values in [0, 2n) for
    the group (column = code // 2 + 1, sign = + for even codes), in
    [0, n) for the semigroup (column = code + 1).
    """
    bitgen = np.random.Philox(key=[params.seed, trial_index])
    raw = np.random.Generator(bitgen).integers(
        0, 2**64, size=params.steps, dtype=np.uint64
    )
    base = 2 * params.n if params.mode == GROUP else params.n
    return (raw % base).astype(np.int64)


# ---------------------------------------------------------------------------
# Step kernels. Plain functions over preallocated arrays, integer state
# only; compiled verbatim by numba when available. Do not add floating
# point here: bit-identical results across the compiled and interpreted
# paths depend on every operation being integral.


def _semigroup_steps(n, letters, burn_in, snap_every, tops, in_roof, hist, snap_tops, snap_roof):
    height = 0
    roof_size = 0
    snap_row = 0
    for step in range(letters.shape[0]):
        i = letters[step] + 1  # 1-based column; tops has sentinels at 0, n+1
        t = tops[i - 1]
        if tops[i] > t:
            t = tops[i]
        if tops[i + 1] > t:
            t = tops[i + 1]
        tops[i] = t + 1
        if t + 1 > height:
            height = t + 1
        lo = i - 1 if i > 1 else 1
        hi = i + 1 if i < n else n
        for j in range(lo, hi + 1):
            m = 0
            if tops[j] > 0 and tops[j] >= tops[j - 1] and tops[j] >= tops[j + 1]:
                m = 1
            roof_size += m - in_roof[j]
            in_roof[j] = m
        if step >= burn_in:
            hist[roof_size] += 1
        if snap_every > 0 and (step + 1) % snap_every == 0 and snap_row < snap_tops.shape[0]:
            for j in range(1, n + 1):
                snap_tops[snap_row, j - 1] = tops[j]
                snap_roof[snap_row, j - 1] = in_roof[j]
            snap_row += 1
    return height, snap_row


def _group_steps(n, letters, burn_in, snap_every, levels, colors, depth, tops, top_colors, in_roof, hist, snap_tops, snap_roof):
    height = 0
    roof_size = 0
    snap_row = 0
    length = 0
    reductions = 0
    red_window = 0
    plus_window = 0
    minus_window = 0
    cap = levels.shape[1]
    for step in range(letters.shape[0]):
        code = letters[step]
        i = (code >> 1) + 1
        s = 1 if (code & 1) == 0 else -1
        ci = i - 1
        t = tops[i - 1]
        if tops[i] > t:
            t = tops[i]
        if tops[i + 1] > t:
            t = tops[i + 1]
        old_roof = roof_size
        reduced = False
        if depth[ci] > 0 and tops[i] == t and top_colors[i] == -s:
            # the top cell of column i is removable and cancels the letter
            depth[ci] -= 1
            d = depth[ci]
            if d > 0:
                tops[i] = levels[ci, d - 1]
                top_colors[i] = colors[ci, d - 1]
            else:
                tops[i] = 0
                top_colors[i] = 0
            length -= 1
            reductions += 1
            reduced = True
        else:
            d = depth[ci]
            if d >= cap:
                return -1, height, length, reductions, red_window, plus_window, minus_window, snap_row
            levels[ci, d] = t + 1
            colors[ci, d] = s
            depth[ci] = d + 1
            tops[i] = t + 1
            top_colors[i] = s
            length += 1
            if t + 1 > height:
                height = t + 1
        lo = i - 1 if i > 1 else 1
        hi = i + 1 if i < n else n
        for j in range(lo, hi + 1):
            m = 0
            if tops[j] > 0 and tops[j] >= tops[j - 1] and tops[j] >= tops[j + 1]:
                m = 1
            roof_size += m - in_roof[j]
            in_roof[j] = m
        if step >= burn_in:
            hist[roof_size] += 1
            if reduced:
                red_window += 1
                if roof_size > old_roof:
                    plus_window += 1
                elif roof_size < old_roof:
                    minus_window += 1
        if snap_every > 0 and (step + 1) % snap_every == 0 and snap_row < snap_tops.shape[0]:
            for j in range(1, n + 1):
                snap_tops[snap_row, j - 1] = tops[j]
                snap_roof[snap_row, j - 1] = in_roof[j]
            snap_row += 1
    return 0, height, length, reductions, red_window, plus_window, minus_window, snap_row


if _HAVE_NUMBA:
    _semigroup_steps_jit = _njit(cache=True)(_semigroup_steps)
    _group_steps_jit = _njit(cache=True)(_group_steps)


def run_trial(
    params: WalkParams,
    trial_index: int,
    engine: str = "auto",
    column_capacity: int | None = None,
) -> WalkStats:
    """
    Execute one trial deterministically.

    engine: "numba" (compiled kernel), "python" (same kernel source
    interpreted), or "auto". Both produce identical WalkStats.
    column_capacity bounds the per-column cell storage in group mode;
    the default 64 + 8 * steps / n is far above the stationary load,
    and overflowing it raises rather than truncates.
    """
    if engine not in ("auto", "numba", "python"):
        raise ValueError("engine must be auto, numba, or python")
    if engine == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("numba requested but not importable")
    use_numba = engine == "numba" or (engine == "auto" and _HAVE_NUMBA)

    n = params.n
    letters = letter_stream(params, trial_index)
    tops = np.zeros(n + 2, dtype=np.int64)
    in_roof = np.zeros(n + 2, dtype=np.int64)
    hist = np.zeros(n + 1, dtype=np.int64)
    snaps = params.steps // params.snapshot_every if params.snapshot_every else 0
    snap_tops = np.zeros((snaps, n), dtype=np.int64)
    snap_roof = np.zeros((snaps, n), dtype=np.int64)

    if params.mode == SEMIGROUP:
        fn = _semigroup_steps_jit if use_numba else _semigroup_steps
        height, snap_rows = fn(
            n, letters, params.burn_in, params.snapshot_every,
            tops, in_roof, hist, snap_tops, snap_roof,
        )
        final_length = params.steps
        reductions = red_window = plus_window = minus_window = 0
    else:
        cap = column_capacity or 64 + 8 * params.steps // n
        levels = np.zeros((n, cap), dtype=np.int32)
        colors = np.zeros((n, cap), dtype=np.int8)
        depth = np.zeros(n, dtype=np.int64)
        top_colors = np.zeros(n + 2, dtype=np.int64)
        fn = _group_steps_jit if use_numba else _group_steps
        status, height, final_length, reductions, red_window, plus_window, minus_window, snap_rows = fn(
            n, letters, params.burn_in, params.snapshot_every,
            levels, colors, depth, tops, top_colors, in_roof,
            hist, snap_tops, snap_roof,
        )
        if status != 0:
            raise RuntimeError(
                f"column storage overflow (capacity {cap}); "
                "pass a larger column_capacity"
            )

    snap_list = []
    for row in range(snap_rows):
        step = (row + 1) * params.snapshot_every
        snap_list.append(
            (step, tuple(int(x) for x in snap_tops[row]), tuple(int(x) for x in snap_roof[row]))
        )
    return WalkStats(
        n=n,
        mode=params.mode,
        steps=params.steps,
        trial_index=trial_index,
        burn_in=params.burn_in,
        window_steps=params.steps - params.burn_in,
        final_length=int(final_length),
        height=int(height),
        reductions=int(reductions),
        reductions_window=int(red_window),
        roof_delta_plus_given_reduction=int(plus_window),
        roof_delta_minus_given_reduction=int(minus_window),
        roof_hist=tuple(int(c) for c in hist),
        snapshots=tuple(snap_list),
    )


def _as_list(stats) -> list[WalkStats]:
    return [stats] if isinstance(stats, WalkStats) else list(stats)


def drift_estimate(stats) -> tuple[float, float]:
    """Mean of final_length/steps across trials, with its standard error."""
    runs = _as_list(stats)
    if not runs:
        raise ValueError("no trials")
    drifts = [t.drift for t in runs]
    mean = sum(drifts) / len(drifts)
    if len(drifts) == 1:
        return mean, 0.0
    var = sum((d - mean) ** 2 for d in drifts) / (len(drifts) - 1)
    return mean, math.sqrt(var / len(drifts))


def roof_density_estimate(stats) -> float:
    """Window average of #T_j / n, pooled over trials."""
    runs = _as_list(stats)
    total = sum(t.roof_size_sum for t in runs)
    steps = sum(t.window_steps for t in runs)
    if steps == 0:
        raise ValueError("empty stationary window")
    return total / (steps * runs[0].n)


def entropy_estimate(stats, mode: str) -> float:
    """
    Entropy rate estimate: the trajectory average -(1/W) sum log(#T/n)
    in semigroup mode; the plug-in log(3 - alpha) in group mode, where
    this functional has no single-trajectory form over 2n letters.
    """
    runs = _as_list(stats)
    if mode == SEMIGROUP:
        total = sum(t.log_roof_sum for t in runs)
        steps = sum(t.window_steps for t in runs)
        return -total / steps
    if mode == GROUP:
        alpha, _ = alpha_estimate(runs)
        return math.log(3.0 - alpha)
    raise ValueError(f"mode must be one of {MODES}")


def alpha_estimate(stats) -> tuple[float, float]:
    """
    alpha = (p+ - p-)/2, the conditional probabilities that a reduction
    step grows / shrinks the roof, pooled over trials; second value is
    the binomial standard error. Requires at least one reduction, so it
    is undefined in semigroup mode.
    """
    runs = _as_list(stats)
    red = sum(t.reductions_window for t in runs)
    if red == 0:
        raise ValueError("alpha is conditioned on reductions and none occurred")
    plus = sum(t.roof_delta_plus_given_reduction for t in runs)
    minus = sum(t.roof_delta_minus_given_reduction for t in runs)
    p_plus = plus / red
    p_minus = minus / red
    alpha = 0.5 * (p_plus - p_minus)
    var = (p_plus + p_minus - (p_plus - p_minus) ** 2) / (4.0 * red)
    return alpha, math.sqrt(max(var, 0.0))


def heap_profile_stats(stats) -> dict:
    """
    Deposit geometry of semigroup trials: height_coeff = H n / N,
    density = N / (n H), and the retained roof snapshots as CSV-ready
    (step, column, top_level, in_roof) rows.
    """
    runs = _as_list(stats)
    if any(t.mode != SEMIGROUP for t in runs):
        raise ValueError("heap profile applies to semigroup (deposition) runs")
    sample = runs[0]
    if sample.steps < 100 * sample.n:
        warnings.warn("fewer than 100 n steps; height statistics not stationary")
    coeffs = [t.height * t.n / t.steps for t in runs]
    densities = [t.steps / (t.n * t.height) for t in runs]
    rows = []
    for t in runs:
        for step, tops, roof in t.snapshots:
            for col in range(t.n):
                rows.append((step, col + 1, tops[col], roof[col]))
    return {
        "height_coeff": sum(coeffs) / len(coeffs),
        "density": sum(densities) / len(densities),
        "roof_snapshots": rows,
    }


def run_walk(params: WalkParams, engine: str = "auto") -> tuple[dict, list[WalkStats]]:
    """
    Run all trials in index order; returns (report, per-trial stats).

    The report is the flat record used by the command line: keys mode,
    n, steps, trials, seed, drift_mean, drift_se, roof_density,
    entropy_estimate, alpha_hat, alpha_se, height_coeff, heap_density.
    Inapplicable entries (alpha in semigroup mode, deposit geometry in
    group mode) are None.
    """
    runs = [run_trial(params, t, engine) for t in range(params.trials)]
    drift_mean, drift_se = drift_estimate(runs)
    report = {
        "mode": params.mode,
        "n": params.n,
        "steps": params.steps,
        "trials": params.trials,
        "seed": params.seed,
        "drift_mean": drift_mean,
        "drift_se": drift_se,
        "roof_density": roof_density_estimate(runs),
        "entropy_estimate": entropy_estimate(runs, params.mode),
        "alpha_hat": None,
        "alpha_se": None,
        "height_coeff": None,
        "heap_density": None,
    }
    if params.mode == GROUP:
        report["alpha_hat"], report["alpha_se"] = alpha_estimate(runs)
    else:
        profile = heap_profile_stats(runs)
        report["height_coeff"] = profile["height_coeff"]
        report["heap_density"] = profile["density"]
    return report, runs


# ---------------------------------------------------------------------------
# The roof indicator Markov chain, abstracted away from cell levels.


def roof_chain_step(eps, r: int, mode: str = SEMIGROUP, boundary: str = OPEN) -> tuple[int, ...]:
    """
    One update of the roof indicator vector at column r (1-based).

    Growth (column not in the roof): the new top cell of column r joins
    the roof and evicts both neighbors, whatever the surrounding
    pattern. Column already in the roof: a semigroup letter stacks onto
    the same syllable and changes nothing; a group reduction removes
    the roof cell and clears the mark. The caller decides whether a
    group letter hitting the roof reduces (opposite sign, probability
    1/2) or stacks (same sign: no change); this function applies the
    reduction when mode is "group".

    boundary "periodic" joins columns n and 1 as neighbors; the open
    chain is what heap dynamics induce, the periodic one is the
    translation-invariant variant whose stationary ones-density is
    exactly 1/3.
    """
    n = len(eps)
    if not 1 <= r <= n:
        raise ValueError(f"column {r} out of range 1..{n}")
    if boundary not in (OPEN, PERIODIC):
        raise ValueError("boundary must be open or periodic")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    out = list(eps)
    if any(x not in (0, 1) for x in out):
        raise ValueError("indicator entries must be 0 or 1")

    def nbrs(j0):  # 0-based neighbor indices
        if boundary == PERIODIC:
            return ((j0 - 1) % n, (j0 + 1) % n) if n > 1 else ()
        return tuple(k for k in (j0 - 1, j0 + 1) if 0 <= k < n)

    for j0 in range(n):
        if out[j0] == 1 and any(out[k] for k in nbrs(j0)):
            raise ValueError("adjacent columns cannot both be in the roof")

    j = r - 1
    if out[j] == 1:
        if mode == GROUP:
            out[j] = 0
        return tuple(out)
    out[j] = 1
    for k in nbrs(j):
        out[k] = 0
    return tuple(out)


@dataclass(frozen=True)
class RoofChainResult:
    n: int
    steps: int
    seed: int
    mode: str
    boundary: str
    burn_in: int
    ones_density: float  # window mean of #ones / n
    final: tuple[int, ...]
    series: tuple[tuple[int, int], ...] = field(default=(), repr=False)


def roof_chain_run(
    n: int,
    steps: int,
    seed: int,
    mode: str = SEMIGROUP,
    boundary: str = OPEN,
    burn_in: int | None = None,
    sample_every: int = 0,
) -> RoofChainResult:
    """
    Drive the indicator chain with uniform columns (and, in group mode,
    a fair sign coin deciding whether a letter aimed at a roof column
    reduces or stacks) and measure the stationary ones-density.
    """
    if burn_in is None:
        burn_in = min(10 * n, steps - 1)
    if not 0 <= burn_in < steps:
        raise ValueError("need 0 <= burn_in < steps")
    bitgen = np.random.Philox(key=[seed, 0])
    raw = np.random.Generator(bitgen).integers(0, 2**64, size=steps, dtype=np.uint64)
    base = 2 * n if mode == GROUP else n
    codes = (raw % base).astype(np.int64)

    eps = [0] * n
    ones = 0
    acc = 0
    series = []
    left = [-1] * n
    right = [-1] * n
    for j in range(n):
        if boundary == PERIODIC and n > 1:
            left[j] = (j - 1) % n
            right[j] = (j + 1) % n
        else:
            left[j] = j - 1
            right[j] = j + 1 if j + 1 < n else -1
    for step in range(steps):
        code = int(codes[step])
        if mode == GROUP:
            j = code >> 1
            reduce_coin = code & 1
            if eps[j] == 1:
                if reduce_coin:
                    eps[j] = 0
                    ones -= 1
            else:
                eps[j] = 1
                ones += 1
                for k in (left[j], right[j]):
                    if k >= 0 and eps[k]:
                        eps[k] = 0
                        ones -= 1
        else:
            j = code
            if eps[j] == 0:
                eps[j] = 1
                ones += 1
                for k in (left[j], right[j]):
                    if k >= 0 and eps[k]:
                        eps[k] = 0
                        ones -= 1
        if step >= burn_in:
            acc += ones
        if sample_every > 0 and (step + 1) % sample_every == 0:
            series.append((step + 1, ones))
    density = acc / ((steps - burn_in) * n)
    return RoofChainResult(
        n=n,
        steps=steps,
        seed=seed,
        mode=mode,
        boundary=boundary,
        burn_in=burn_in,
        ones_density=density,
        final=tuple(eps),
        series=tuple(series),
    )


@dataclass(frozen=True)
class RoofSupportCount:
    """Count of admissible roof supports, with the growth ratio to n-1."""

    n: int
    colored: bool
    count: int
    ratio: float | None


def roof_support_enumerate(n: int, colored: bool = False) -> RoofSupportCount:
    """
    Number of indicator vectors on n columns with no two adjacent ones,
    the empty vector included; colored counts each marked column with
    either sign. Satisfies a(n) = a(n-1) + w a(n-2) with w = 1 (plain,
    Fibonacci growth to the golden mean) or w = 2 (colored, growth 2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 30:
        raise ValueError("supported up to n = 30")
    w = 2 if colored else 1
    prev, cur = 1, 1 + w  # a(0), a(1)
    for _ in range(n - 1):
        prev, cur = cur, cur + w * prev
    ratio = cur / prev if n >= 2 else None
    return RoofSupportCount(n, colored, cur, ratio)
