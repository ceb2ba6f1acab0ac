"""Randomized sparse-regime extractor with min degree Omega(log d / log log d).

The method: on a vertex-minimal min-degree-d subgraph (hence d-degenerate),
sample X with i.i.d. probability p = 1/d and Y from non-X vertices with at
least ell = floor(ln d / ln ln d) neighbors in X, each passing a calibrated
coin p_y chosen so Pr[y in Y] is exactly p.  A trial is accepted when the
exact integer inequality

    3*ell*|Y| - ell*|X| - ell*e(Y) - 21*|Z| > 0

holds, where Z collects X-Y edges whose X endpoint has 4 or more right
neighbors inside X.  Acceptance forces the four structural properties
(every y has >= ell X-neighbors; 7|Z| <= ell|Y|; |X| < 3|Y|; e(Y) < 3|Y|),
and the X0/Y0/Turán/color-class pipeline then yields an induced bipartite
certificate whose average degree at the class-selection stage is at least
(8/343)*ell, so half-average peeling guarantees min degree
max(1, ceil((4/343)*ell)).

Calibrated regime is d >= 16 (so p <= 1/16 and ell >= 2).  For 2 <= d < 16
the extractor still runs with ell = 1 and the trace flags small_d=1; the
certificate floor is then 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath
import numpy as np

from . import rng
from .certificates import BipartiteCert, ExtractionTrace, verify_bipartite_cert
from .graphs import Graph, find_triangle
from .peeling import (
    DegeneracyOrder,
    degeneracy_order,
    greedy_color,
    half_avg_subgraph,
    minimal_min_degree_subgraph,
    turan_independent_set,
)


class TriangleFoundError(ValueError):
    """Input to a triangle-free-only extractor contains a triangle."""

    def __init__(self, triangle: tuple[int, int, int]):
        self.triangle = triangle
        super().__init__(f"graph contains triangle {triangle[0]}-{triangle[1]}-{triangle[2]}")


class RetryBudgetExceeded(RuntimeError):
    """No accepted sample within the retry budget; carries the best deficit."""

    def __init__(self, budget: int, best_margin: Fraction, best_seed: int):
        self.budget = budget
        self.best_margin = best_margin
        self.best_seed = best_seed
        super().__init__(
            f"no accepted sample in {budget} trials; "
            f"best margin {float(best_margin):.4f} at seed {best_seed}"
        )


def ell_of(d: int) -> int:
    """floor(ln d / ln ln d) with an integer-boundary guard.

    Doubles decide unless the ratio lands within 1e-9 of an integer; the
    boundary case is resolved by comparing ln d against k*ln ln d at
    escalating mpmath precision until the sign is certain.
    """
    if d < 16:
        raise ValueError(f"ell_of requires d >= 16, got {d}")
    ratio = math.log(d) / math.log(math.log(d))
    k = round(ratio)
    if abs(ratio - k) > 1e-9:
        return math.floor(ratio)
    for dps in (50, 100, 200, 400):
        with mpmath.workdps(dps):
            diff = mpmath.log(d) - k * mpmath.log(mpmath.log(d))
            if abs(diff) > mpmath.mpf(10) ** (-dps + 10):
                return k if diff >= 0 else k - 1
    raise ArithmeticError(f"ell_of({d}) sits on an integer boundary beyond 400 digits")


def binom_tail(n: int, p: float, l: int) -> float:
    """Pr[Bin(n, p) >= l] with relative error well below 1e-12.

    Sums the shorter side of the distribution in extended precision
    (mpmath, 40 significant digits): the lower tail (complemented) when l-1
    sits below the mean, the upper tail directly otherwise, with a geometric
    remainder bound for early stopping.
    """
    if not 0 <= l <= n + 1:
        raise ValueError(f"threshold {l} outside [0, {n + 1}]")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    if l <= 0:
        return 1.0
    if l > n:
        return 0.0
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    with mpmath.workdps(40):
        mp_p = mpmath.mpf(p)
        mp_q = 1 - mp_p
        ratio = mp_p / mp_q
        if l - 1 < n * p:
            # complement of the l lower terms; they total at most ~1/2 here,
            # so no cancellation
            term = mp_q**n
            acc = term
            for j in range(l - 1):
                term *= ratio * (n - j) / (j + 1)
                acc += term
            return float(1 - acc)
        term = mpmath.binomial(n, l) * mp_p**l * mp_q ** (n - l)
        acc = term
        cutoff = mpmath.mpf(10) ** -36
        for j in range(l, n):
            r = ratio * (n - j) / (j + 1)
            term *= r
            acc += term
            if r < 1 and term * r / (1 - r) < acc * cutoff:
                break
        return float(acc)


@dataclass(frozen=True)
class SparseParams:
    """Sampler calibration: inclusion probability p = 1/d and ell threshold."""

    d: int
    p: float
    ell: int
    retry_budget: int = 1000

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"degree parameter must be >= 2, got {self.d}")
        if not 0 < self.p <= 0.5:
            raise ValueError(f"p = {self.p} outside (0, 1/2]")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.retry_budget < 1:
            raise ValueError("retry budget must be >= 1")

    @property
    def small_d(self) -> bool:
        return self.d < 16

    @classmethod
    def for_degree(cls, d: int, retry_budget: int = 1000) -> "SparseParams":
        ell = ell_of(d) if d >= 16 else 1
        return cls(d=d, p=1.0 / d, ell=ell, retry_budget=retry_budget)


def p_u(deg: int, params: SparseParams) -> tuple[float, bool]:
    """Calibration coin probability for a degree-deg vertex.

    Solves (1-p) * Pr[Bin(deg, p) >= ell] * p_u = p; returns (value, clamped)
    where the value is clamped to 1 when the defining quotient exceeds 1.
    """
    tail = binom_tail(deg, params.p, params.ell)
    if tail == 0.0:
        raise ValueError(
            f"binomial tail vanishes at deg={deg}, ell={params.ell}; "
            "cannot calibrate (requires deg >= ell)"
        )
    val = params.p / ((1.0 - params.p) * tail)
    if val > 1.0:
        return 1.0, True
    return val, False


@dataclass(frozen=True)
class XYZSample:
    """One sampler outcome: disjoint X, Y and the heavy cross edges Z."""

    X: tuple[int, ...]
    Y: tuple[int, ...]
    Z: tuple[tuple[int, int], ...]
    coin_log: dict[int, float] = field(repr=False, default_factory=dict)


class _Sampler:
    """Vectorized per-trial kernels over the order's domain (original ids)."""

    def __init__(self, g: Graph, order: DegeneracyOrder, params: SparseParams):
        self.g = g
        self.params = params
        self.verts = np.array(sorted(order.order), dtype=np.int64)
        k = len(self.verts)
        member = np.zeros(g.n, dtype=bool)
        member[self.verts] = True
        loc = np.full(g.n, -1, dtype=np.int64)
        loc[self.verts] = np.arange(k)
        indptr = np.zeros(k + 1, dtype=np.int64)
        indices: list[int] = []
        pos = order.pos
        dag_indptr = np.zeros(k + 1, dtype=np.int64)
        dag_indices: list[int] = []
        for i, v in enumerate(self.verts.tolist()):
            pv = pos[v]
            row = [int(loc[w]) for w in g.adj[v] if member[w]]
            indices.extend(row)
            indptr[i + 1] = len(indices)
            dag_indices.extend(int(loc[w]) for w in g.adj[v] if member[w] and pos[w] > pv)
            dag_indptr[i + 1] = len(dag_indices)
        self.indptr = indptr
        self.indices = np.array(indices, dtype=np.int64)
        self.dag_indptr = dag_indptr
        self.dag_indices = np.array(dag_indices, dtype=np.int64)
        self.au = np.repeat(np.arange(k), np.diff(indptr))
        self.av = self.indices
        und = self.au < self.av
        self.eu = self.au[und]
        self.ev = self.av[und]
        self.degs = np.diff(indptr)
        pu_by_deg: dict[int, tuple[float, bool]] = {}
        pu = np.empty(k, dtype=np.float64)
        clamped = 0
        for i, deg in enumerate(self.degs.tolist()):
            if deg < params.ell:
                pu[i] = 0.0  # y-condition unsatisfiable; coin never consulted
                continue
            if deg not in pu_by_deg:
                pu_by_deg[deg] = p_u(deg, params)
            val, cl = pu_by_deg[deg]
            pu[i] = val
            clamped += int(cl)
        self.pu = pu
        self.clamped_vertices = clamped

    def _count_rows(self, indptr, indices, mask: np.ndarray) -> np.ndarray:
        hits = mask[indices].astype(np.int64)
        csum = np.concatenate([np.zeros(1, dtype=np.int64), np.cumsum(hits)])
        return csum[indptr[1:]] - csum[indptr[:-1]]

    def trial(self, trial_seed: int) -> dict[str, int | np.ndarray]:
        p, ell = self.params.p, self.params.ell
        base_x = rng.substream(trial_seed, rng.TAG_X_COINS)
        base_y = rng.substream(trial_seed, rng.TAG_Y_COINS)
        xu = rng._vec_mix64(
            np.uint64(base_x)
            + (self.verts.astype(np.uint64) + np.uint64(1)) * np.uint64(rng._GAMMA)
        )
        yu = rng._vec_mix64(
            np.uint64(base_y)
            + (self.verts.astype(np.uint64) + np.uint64(1)) * np.uint64(rng._GAMMA)
        )
        x_mask = (xu >> np.uint64(11)) * 2.0**-53 < p
        y_coin = (yu >> np.uint64(11)) * 2.0**-53
        cnt_x = self._count_rows(self.indptr, self.indices, x_mask)
        eligible = (~x_mask) & (cnt_x >= ell)
        y_mask = eligible & (y_coin < self.pu)
        right_x = self._count_rows(self.dag_indptr, self.dag_indices, x_mask)
        e_y = int((y_mask[self.eu] & y_mask[self.ev]).sum())
        z_mask = x_mask[self.au] & y_mask[self.av] & (right_x[self.au] >= 4)
        n_x = int(x_mask.sum())
        n_y = int(y_mask.sum())
        n_z = int(z_mask.sum())
        margin3l = 3 * ell * n_y - ell * n_x - ell * e_y - 21 * n_z
        return {
            "x_mask": x_mask,
            "y_mask": y_mask,
            "z_mask": z_mask,
            "eligible": eligible,
            "right_x": right_x,
            "X": n_x,
            "Y": n_y,
            "Z": n_z,
            "eY": e_y,
            "margin3l": margin3l,
        }

    def materialize(self, t: dict) -> XYZSample:
        X = tuple(self.verts[t["x_mask"]].tolist())
        Y = tuple(self.verts[t["y_mask"]].tolist())
        zu = self.verts[self.au[t["z_mask"]]]
        zv = self.verts[self.av[t["z_mask"]]]
        Z = tuple(sorted((int(x), int(y)) for x, y in zip(zu, zv)))
        coin_log = {
            int(self.verts[i]): float(self.pu[i])
            for i in np.flatnonzero(t["eligible"]).tolist()
        }
        return XYZSample(X=X, Y=Y, Z=Z, coin_log=coin_log)


def sample_xyz(
    g: Graph, order: DegeneracyOrder, params: SparseParams, seed: int
) -> XYZSample:
    """One draw of (X, Y, Z) over the order's domain.

    Membership of v in X depends only on (seed, v): coins are keyed by the
    original vertex id, so restricting the domain never reshuffles them.
    """
    smp = _Sampler(g, order, params)
    return smp.materialize(smp.trial(seed))


def check_claim_properties(
    g: Graph, sample: XYZSample, ell: int
) -> dict[str, int]:
    """Assert the four structural properties of an accepted sample, literally.

    (i) every y in Y has >= ell neighbors in X; (ii) 7|Z| <= ell|Y|;
    (iii) |X| < 3|Y|; (iv) e(Y) < 3|Y|.  Returns the counted quantities.
    """
    xs, ys = set(sample.X), set(sample.Y)
    assert not (xs & ys), "X and Y intersect"
    for y in sample.Y:
        cnt = sum(1 for w in g.adj[y] if w in xs)
        assert cnt >= ell, f"vertex {y} has {cnt} < ell={ell} neighbors in X"
    e_y = sum(1 for v in ys for w in g.adj[v] if w > v and w in ys)
    assert 7 * len(sample.Z) <= ell * len(sample.Y), "property (ii) fails"
    assert len(sample.X) < 3 * len(sample.Y), "property (iii) fails"
    assert e_y < 3 * len(sample.Y), "property (iv) fails"
    return {"X": len(sample.X), "Y": len(sample.Y), "Z": len(sample.Z), "eY": e_y}


def find_good_xyz(
    g: Graph, order: DegeneracyOrder, params: SparseParams, seed: int
) -> tuple[XYZSample, dict[str, int], int]:
    """First accepted sample along trial seeds seed, seed+1, ...

    Acceptance is the exact integer inequality (see module docstring); the
    returned sample provably satisfies the four structural properties, which
    are re-checked literally.  Raises :class:`RetryBudgetExceeded` carrying
    the best deficit seen.
    """
    smp = _Sampler(g, order, params)
    best_margin: Fraction | None = None
    best_seed = seed
    for t_idx in range(params.retry_budget):
        trial_seed = seed + t_idx
        t = smp.trial(trial_seed)
        margin = Fraction(int(t["margin3l"]), 3 * params.ell)
        if t["margin3l"] > 0:
            sample = smp.materialize(t)
            counted = check_claim_properties(g, sample, params.ell)
            assert counted["eY"] == t["eY"]
            stats = {
                "X": int(t["X"]),
                "Y": int(t["Y"]),
                "Z": int(t["Z"]),
                "eY": int(t["eY"]),
                "margin3l": int(t["margin3l"]),
                "trial": t_idx,
                "clamped_vertices": smp.clamped_vertices,
            }
            return sample, stats, trial_seed
        if best_margin is None or margin > best_margin:
            best_margin = margin
            best_seed = trial_seed
    raise RetryBudgetExceeded(params.retry_budget, best_margin or Fraction(0), best_seed)


def margins_over_trials(
    g: Graph, order: DegeneracyOrder, params: SparseParams, seed: int, trials: int
) -> np.ndarray:
    """Float margins |Y| - |X|/3 - e(Y)/3 - (7/ell)|Z| for Monte Carlo use."""
    smp = _Sampler(g, order, params)
    out = np.empty(trials, dtype=np.float64)
    for i in range(trials):
        t = smp.trial(seed + i)
        out[i] = t["margin3l"] / (3.0 * params.ell)
    return out


def y_membership_rate(
    g: Graph, order: DegeneracyOrder, params: SparseParams, seed: int, trials: int, v: int
) -> float:
    """Empirical Pr[v in Y] over trial seeds seed..seed+trials-1."""
    smp = _Sampler(g, order, params)
    where = int(np.searchsorted(smp.verts, v))
    if where >= len(smp.verts) or smp.verts[where] != v:
        raise ValueError(f"vertex {v} not in the sampler domain")
    hits = 0
    for i in range(trials):
        t = smp.trial(seed + i)
        hits += bool(t["y_mask"][where])
    return hits / trials


def extract_sparse(
    g: Graph,
    d: int,
    seed: int,
    retry_budget: int = 1000,
    within: Iterable[int] | None = None,
) -> BipartiteCert:
    """Full sparse-regime pipeline; see the module docstring for the stages.

    Requires a triangle-free graph with a nonempty d-core and d >= 2.
    """
    tri = find_triangle(g, restrict=within)
    if tri is not None:
        raise TriangleFoundError(tri)
    if d < 2:
        raise ValueError(f"degree parameter d={d} too small; need d >= 2")
    params = SparseParams.for_degree(d, retry_budget)
    sub = minimal_min_degree_subgraph(g, d, within=within)
    order = degeneracy_order(g, within=sub)
    sample, stats, accepted_seed = find_good_xyz(g, order, params, seed)
    ell = params.ell

    xs = set(sample.X)
    pos = order.pos
    x0 = set()
    for x in sample.X:
        nplus_in_x = sum(1 for w in g.adj[x] if w in xs and pos.get(w, -1) > pos[x])
        if nplus_in_x >= 4:
            x0.add(x)
    xr = sorted(xs - x0)

    colors = greedy_color(g, order, within=xr)
    n_classes = 1 + max(colors.values()) if colors else 0
    assert n_classes <= 4, "X minus X0 must be 3-degenerate, hence 4-colorable"
    classes: list[list[int]] = [[] for _ in range(max(n_classes, 1))]
    for v, c in colors.items():
        classes[c].append(v)

    y0 = {
        y
        for y in sample.Y
        if 7 * sum(1 for w in g.adj[y] if w in x0) >= 3 * ell
    }
    yr = sorted(set(sample.Y) - y0)
    y_prime = turan_independent_set(g, within=yr)
    assert y_prime, "independent set stage emptied Y"

    ratios: list[Fraction] = []
    yset = set(y_prime)
    for cls in classes:
        cross = sum(1 for v in cls for w in g.adj[v] if w in yset)
        ratios.append(Fraction(2 * cross, len(cls) + len(y_prime)))
    best_i = max(range(len(ratios)), key=lambda i: (ratios[i], -i))
    best_ratio = ratios[best_i]
    assert best_ratio > 0, "selected class sends no edges into Y'"
    if len(xr) <= 3 * len(sample.Y) and 15 * len(y_prime) >= len(sample.Y):
        assert best_ratio >= Fraction(8 * ell, 343), (
            f"class-selection average degree {best_ratio} below (8/343)ell"
        )

    chosen = sorted(classes[best_i])
    peeled = half_avg_subgraph(g, within=chosen + list(y_prime))
    pset = set(peeled)
    side_a = tuple(v for v in chosen if v in pset)
    side_b = tuple(v for v in y_prime if v in pset)
    bset = set(side_b)
    achieved = min(
        min(sum(1 for w in g.adj[v] if w in bset) for v in side_a),
        min(sum(1 for w in g.adj[v] if w in set(side_a)) for v in side_b),
    )
    claimed = max(1, -(-4 * ell // 343))
    stats.update(
        {
            "X0": len(x0),
            "Y0": len(y0),
            "Yprime": len(y_prime),
            "chosen_class": best_i,
            "ratio_num": best_ratio.numerator,
            "ratio_den": best_ratio.denominator,
            "subgraph": len(sub),
            "small_d": int(params.small_d),
            "ell": ell,
            "achieved": achieved,
            "accepted_seed": accepted_seed,
        }
    )
    cert = BipartiteCert(
        side_a=side_a,
        side_b=side_b,
        claimed_min_degree=claimed,
        algorithm="sparse",
        trace=ExtractionTrace(
            seed=seed, retries=stats["trial"], stage_stats=stats
        ),
    )
    report = verify_bipartite_cert(g, cert)
    assert report.ok, f"internal verification failed: {report.failures[:3]}"
    return cert
