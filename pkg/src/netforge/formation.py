"""Network generators: meritocracy, Matthew-effect, their probabilistic hybrid, and directed ER.

All generators are deterministic given (config, seed) and single-threaded.
Quality is represented purely by node id order: id 1 is the highest-quality node.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DirectedGraph

MODELS = ("meritocracy", "matthew", "hybrid", "er_directed")


class ConfigError(ValueError):
    """Invalid FormationConfig."""


@dataclass(frozen=True)
class FormationConfig:
    model: str
    n: int
    m_cap: int = 5
    p: float | None = None          # hybrid mixing probability
    density: float | None = None    # er_directed edge probability
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.m_cap, (int, np.integer)) or self.m_cap < 1:
            raise ConfigError(f"m_cap must be a positive integer, got {self.m_cap!r}")
        if self.m_cap > self.n - 1:
            raise ConfigError(f"m_cap={self.m_cap} exceeds n-1={self.n - 1}")
        if self.model == "hybrid":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ConfigError(f"hybrid requires p in [0,1], got {self.p!r}")
        if self.model == "er_directed":
            if self.density is None or not 0.0 <= self.density <= 1.0:
                raise ConfigError(f"er_directed requires density in [0,1], got {self.density!r}")


def _rng_for(config: FormationConfig, rng) -> np.random.Generator:
    return np.random.default_rng(config.seed) if rng is None else rng


class _Uniforms:
    """Buffered uniform(0,1) draws; avoids per-call Generator overhead in hot loops."""

    __slots__ = ("rng", "buf", "pos")

    def __init__(self, rng: np.random.Generator, size: int = 1 << 15):
        self.rng = rng
        self.buf = rng.random(size)
        self.pos = 0

    def next(self) -> float:
        if self.pos >= len(self.buf):
            self.buf = self.rng.random(len(self.buf))
            self.pos = 0
        u = self.buf[self.pos]
        self.pos += 1
        return u


# -- meritocracy -------------------------------------------------------------


def merit_followee_matrix(n: int, m_cap: int, rng: np.random.Generator,
                          copies: int = 1) -> np.ndarray:
    """Sample followee sets for `copies` independent populations of n nodes.

    Returns an int array of shape (copies * n, m_cap): row k holds the followees
    of node (k mod n) + 1 in population k // n, in link-creation order, padded
    with 0. Followee ids along a row are strictly decreasing (each accepted
    candidate beats all previous ones in quality).

    The sampler draws each node's quality-record sequence directly: the first
    accepted candidate is uniform over the other n-1 nodes, and each subsequent
    one is uniform over the strictly-better candidates. A node stops once it
    follows the best available node or accumulates m_cap followees. This is
    distribution-identical to scanning a uniform random permutation of the
    candidates for records.
    """
    ids = np.tile(np.arange(1, n + 1, dtype=np.int64), copies)
    total = len(ids)
    best = np.where(ids == 1, 2, 1)
    out = np.zeros((total, m_cap), dtype=np.int64)

    r = rng.integers(1, n, size=total)      # uniform over n-1 candidates
    r = r + (r >= ids)                      # skip self
    out[:, 0] = r
    active = r != best
    for k in range(1, m_cap):
        if not active.any():
            break
        idx = ids[active]
        cur = r[active]
        size = cur - 1 - (idx < cur)        # candidates strictly better than cur
        draw = rng.integers(1, size + 1)
        draw = draw + ((idx < cur) & (draw >= idx))
        r[active] = draw
        out[active, k] = draw
        nxt = active.copy()
        nxt[active] = draw != best[active]
        active = nxt
    return out


def generate_meritocracy(config: FormationConfig, rng=None,
                         method: str = "records") -> DirectedGraph:
    """Quality-driven formation: a node follows a candidate only if it beats
    every current followee; stops at the best node or at m_cap followees.

    method="records" samples each node's record sequence directly (default);
    method="event_loop" runs the literal uniform-pair event process for
    validation. Both produce the same equilibrium distribution.
    """
    rng = _rng_for(config, rng)
    n, m = config.n, config.m_cap
    if method == "event_loop":
        return _event_loop(n, m, 1.0, rng)
    if method != "records":
        raise ValueError(f"unknown method {method!r}")
    mat = merit_followee_matrix(n, m, rng)
    out_adj = [row[row > 0].tolist() for row in mat]
    return DirectedGraph._from_out_adj(n, out_adj)


# -- Matthew effect ----------------------------------------------------------


def generate_matthew(config: FormationConfig, rng=None) -> DirectedGraph:
    """Capped preferential attachment: target weight = in-degree + 1 (the
    virtual self-link); source uniform among nodes with out-degree < m_cap;
    illegal targets (self, already-followed) are rejected and redrawn.
    Terminates with exactly m_cap * n edges.

    Weighted target sampling uses a repeated-endpoint pool (one entry per unit
    of weight), giving O(1) draws with exact proportionality.
    """
    rng = _rng_for(config, rng)
    n, m = config.n, config.m_cap
    pool = list(range(1, n + 1))            # virtual self-links
    out_adj: list[list[int]] = [[] for _ in range(n)]
    out_sets: list[set[int]] = [set() for _ in range(n)]
    unfilled = list(range(1, n + 1))
    u = _Uniforms(rng).next
    while unfilled:
        k = int(u() * len(unfilled))
        i = unfilled[k]
        mine = out_sets[i - 1]
        while True:
            j = pool[int(u() * len(pool))]
            if j != i and j not in mine:
                break
        out_adj[i - 1].append(j)
        mine.add(j)
        pool.append(j)
        if len(mine) == m:
            unfilled[k] = unfilled[-1]
            unfilled.pop()
    return DirectedGraph._from_out_adj(n, out_adj)


# -- hybrid ------------------------------------------------------------------


def _event_loop(n: int, m: int, p: float, rng: np.random.Generator) -> DirectedGraph:
    """Shared event loop: each event picks an active node i uniformly, then with
    probability p attempts one meritocracy step (uniform candidate, accepted only
    if it beats all current followees) and otherwise performs one Matthew draw
    (always adds a legal edge).

    For p < 1 a node stays active until its out-degree reaches m; for p == 1
    it also retires once it follows the best available node (meritocracy
    equilibrium), since no further event can ever succeed for it.
    """
    out_adj: list[list[int]] = [[] for _ in range(n)]
    out_sets: list[set[int]] = [set() for _ in range(n)]
    best_follow = [n + 2] * (n + 1)         # min followee id per node, sentinel
    pool = list(range(1, n + 1))
    active = list(range(1, n + 1))
    pos = {i: k for k, i in enumerate(active)}
    u = _Uniforms(rng).next
    pure_merit = p == 1.0

    def retire(i: int) -> None:
        k = pos.pop(i)
        last = active[-1]
        active[k] = last
        if last != i:
            pos[last] = k
        active.pop()

    while active:
        i = active[int(u() * len(active))]
        if u() < p:
            j = int(u() * (n - 1)) + 1
            if j >= i:
                j += 1
            if j >= best_follow[i]:
                continue                    # no-op event
        else:
            mine = out_sets[i - 1]
            while True:
                j = pool[int(u() * len(pool))]
                if j != i and j not in mine:
                    break
        out_adj[i - 1].append(j)
        out_sets[i - 1].add(j)
        if j < best_follow[i]:
            best_follow[i] = j
        pool.append(j)
        if len(out_adj[i - 1]) == m:
            retire(i)
        elif pure_merit and best_follow[i] == (2 if i == 1 else 1):
            retire(i)
    return DirectedGraph._from_out_adj(n, out_adj)


def generate_hybrid(config: FormationConfig, rng=None) -> DirectedGraph:
    """Per-event probabilistic mixture: meritocracy step with probability p,
    Matthew step with 1-p. p=1 reduces to the meritocracy model, p=0 to the
    Matthew model (distributionally)."""
    rng = _rng_for(config, rng)
    return _event_loop(config.n, config.m_cap, float(config.p), rng)


# -- directed Erdos-Renyi ----------------------------------------------------


def generate_er_directed(config: FormationConfig, rng=None) -> DirectedGraph:
    """Each ordered pair (i, j), i != j, carries an edge independently with
    probability `density`. Sparse densities use geometric gap-skipping over the
    n*(n-1) pair index space."""
    rng = _rng_for(config, rng)
    n = config.n
    q = float(config.density)
    out_adj: list[list[int]] = [[] for _ in range(n)]
    total = n * (n - 1)
    if q >= 1.0:
        for i0 in range(n):
            out_adj[i0] = [j for j in range(1, n + 1) if j != i0 + 1]
        return DirectedGraph._from_out_adj(n, out_adj)
    if q > 0.0:
        positions = []
        pos = -1
        batch = max(64, int(1.2 * total * q) + 16)
        while True:
            gaps = rng.geometric(q, size=batch)
            steps = np.cumsum(gaps) + pos
            take = steps[steps < total]
            positions.append(take)
            if len(take) < len(steps):
                break
            pos = int(steps[-1])
        hit = np.concatenate(positions)
        src = hit // (n - 1)
        rem = hit % (n - 1)
        dst = rem + (rem >= src)
        for i0, j0 in zip(src.tolist(), dst.tolist()):
            out_adj[i0].append(j0 + 1)
    return DirectedGraph._from_out_adj(n, out_adj)


_GENERATORS = {
    "meritocracy": generate_meritocracy,
    "matthew": generate_matthew,
    "hybrid": generate_hybrid,
    "er_directed": generate_er_directed,
}


def generate(config: FormationConfig, rng=None) -> DirectedGraph:
    """Dispatch on config.model."""
    return _GENERATORS[config.model](config, rng)


def matched_er_density(n: int, m_cap: int) -> float:
    """ER edge probability giving the same expected density as a Matthew graph
    with out-degree m_cap: m_cap * n edges over n*(n-1) ordered pairs."""
    return m_cap / (n - 1)
