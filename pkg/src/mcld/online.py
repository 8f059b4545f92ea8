"""Online learners and exhaustive adversaries for the mistake-bound model.

All learners share a small interface:

* ``predict_proba(x)`` returns ``{label: probability}``;
* ``update(x, y)`` reveals the true label;
* ``clone()`` copies the state (shared read-only tables are not copied);
* ``state_key()`` is hashable and determines every future prediction.

For randomized learners the state never depends on the learner's own coin
flips, so expected mistakes against a fixed sequence are just sums of
``1 - p(y)`` and the adversary search below is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .caps import DEFAULT_CAPS, Caps, CapExceeded
from .dimensions import solver_for
from .hypothesis import ClassError, HypothesisClass, bin2dec, binary_restriction, label_bit


class UnrealizableError(ValueError):
    """Feedback inconsistent with every function in the version space."""


class SOA:
    """Multiclass Standard Optimal Algorithm.

    Predicts the label whose restriction keeps the largest multiclass
    Littlestone dimension, lowest label on ties; makes at most ``mld(H)``
    mistakes on any realizable sequence.
    """

    deterministic = True

    def __init__(self, H: HypothesisClass, caps: Caps = DEFAULT_CAPS, _solver=None):
        self.H = H
        self.solver = _solver if _solver is not None else solver_for(H, None, caps=caps)
        self.version = H.full_mask

    def predict(self, x: int) -> int:
        masks = self.H.label_masks[x]
        best, best_y = -2, 0
        for y, m in enumerate(masks):
            S = self.version & m
            score = self.solver.dim(S) if S else -1
            if score > best:
                best, best_y = score, y
        return best_y

    def predict_proba(self, x: int) -> dict[int, float]:
        return {self.predict(x): 1.0}

    def update(self, x: int, y: int) -> None:
        if not 0 <= y <= self.H.k:
            raise ClassError(f"label {y} outside 0..{self.H.k}")
        S = self.version & self.H.label_masks[x][y]
        if not S:
            raise UnrealizableError(f"no function in the version space labels {x} as {y}")
        self.version = S

    def version_space(self) -> HypothesisClass:
        return self.H.subclass(self.version)

    def clone(self) -> "SOA":
        c = SOA.__new__(SOA)
        c.H, c.solver, c.version = self.H, self.solver, self.version
        return c

    def state_key(self):
        return self.version


class BitwiseLearner:
    """One binary SOA per label bit; the prediction is the decoded bit vector."""

    deterministic = True

    def __init__(self, H: HypothesisClass, caps: Caps = DEFAULT_CAPS):
        self.H = H
        self.width = H.bits
        self.parts = [SOA(binary_restriction(H, i), caps) for i in range(1, self.width + 1)]

    def predict(self, x: int) -> int:
        return bin2dec([p.predict(x) for p in self.parts], self.H.k)

    def predict_proba(self, x: int) -> dict[int, float]:
        return {self.predict(x): 1.0}

    def update(self, x: int, y: int) -> None:
        if not 0 <= y <= self.H.k:
            raise ClassError(f"label {y} outside 0..{self.H.k}")
        for i, p in enumerate(self.parts, start=1):
            p.update(x, label_bit(y, i, self.width))

    def clone(self) -> "BitwiseLearner":
        c = BitwiseLearner.__new__(BitwiseLearner)
        c.H, c.width = self.H, self.width
        c.parts = [p.clone() for p in self.parts]
        return c

    def state_key(self):
        return tuple(p.version for p in self.parts)


def default_eta(n_experts: int, horizon: int) -> float:
    """Rate ``sqrt(8 ln N / T)``, which minimizes ``ln N / eta + eta T / 8``."""
    if n_experts <= 1:
        return 1.0
    return math.sqrt(8.0 * math.log(n_experts) / horizon)


class WeightedMajority:
    """Randomized weighted majority over a finite set of expert functions.

    Expert ``i`` has weight ``exp(-eta * m_i)`` where ``m_i`` counts its
    mistakes so far; label ``y`` is predicted with the normalized weight of
    the experts voting ``y``.
    """

    deterministic = False

    def __init__(self, experts: Sequence[Sequence[int]], k: int, horizon: int,
                 eta: float | None = None):
        if not experts:
            raise ClassError("weighted majority needs at least one expert")
        if horizon < 1:
            raise ValueError("horizon must be >= 1")
        self.experts = [tuple(e) for e in experts]
        self.k = k
        self.horizon = horizon
        self.eta = default_eta(len(self.experts), horizon) if eta is None else float(eta)
        if self.eta <= 0:
            raise ValueError("learning rate must be positive")
        self.mistakes = [0] * len(self.experts)

    def weights(self) -> list[float]:
        low = min(self.mistakes)
        return [math.exp(-self.eta * (m - low)) for m in self.mistakes]

    def predict_proba(self, x: int) -> dict[int, float]:
        w = self.weights()
        total = sum(w)
        out: dict[int, float] = {}
        for wi, e in zip(w, self.experts):
            out[e[x]] = out.get(e[x], 0.0) + wi / total
        return dict(sorted(out.items()))

    def update(self, x: int, y: int) -> None:
        for i, e in enumerate(self.experts):
            if e[x] != y:
                self.mistakes[i] += 1

    def clone(self) -> "WeightedMajority":
        c = WeightedMajority.__new__(WeightedMajority)
        c.experts, c.k, c.horizon, c.eta = self.experts, self.k, self.horizon, self.eta
        c.mistakes = list(self.mistakes)
        return c

    def state_key(self):
        return tuple(self.mistakes)


def sample_label(dist: dict[int, float], rng) -> int:
    labels = list(dist)
    u = rng.random()
    acc = 0.0
    for y in labels:
        acc += dist[y]
        if u < acc:
            return y
    return labels[-1]


@dataclass
class Round:
    x: int
    prediction: object
    y: int
    loss: float


@dataclass
class OnlineTrace:
    rounds: list[Round] = field(default_factory=list)

    @property
    def mistakes(self) -> float:
        return sum(r.loss for r in self.rounds)

    def to_json(self) -> dict:
        return {"rounds": [{"x": r.x, "prediction": r.prediction, "y": r.y, "loss": r.loss}
                           for r in self.rounds],
                "mistakes": self.mistakes}


def run_sequence(learner, sequence: Sequence[tuple[int, int]], rng=None) -> OnlineTrace:
    """Play ``sequence`` against ``learner``.

    Deterministic learners record their label and a 0/1 loss.  Randomized
    learners record the full distribution and the expected loss ``1 - p(y)``;
    with ``rng`` a label is also sampled and stored alongside.
    """
    trace = OnlineTrace()
    for x, y in sequence:
        dist = learner.predict_proba(x)
        if learner.deterministic:
            (pred,) = dist
            trace.rounds.append(Round(x, pred, y, float(pred != y)))
        else:
            pred = {"distribution": {str(k): v for k, v in dist.items()}}
            if rng is not None:
                pred["sampled"] = sample_label(dist, rng)
            trace.rounds.append(Round(x, pred, y, 1.0 - dist.get(y, 0.0)))
        learner.update(x, y)
    return trace


@dataclass
class AdversaryResult:
    sequence: list[tuple[int, int]]
    mistakes: float
    states: int


def adversary_search(H: HypothesisClass, make_learner: Callable[[], object], horizon: int,
                     caps: Caps = DEFAULT_CAPS) -> AdversaryResult:
    """Worst realizable sequence of length ``horizon`` for the learner.

    Exhaustive max search over (x, y) with y restricted to labels that keep
    the version space non-empty.  The adversary sees the learner's prediction
    distribution before choosing y; the value is the exact (expected) number
    of mistakes.  Memoized on (version space, learner state, rounds left).
    A result certifies a lower bound for this learner only, not for every learner.
    """
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    masks = H.label_masks
    memo: dict = {}

    def value(V: int, learner, left: int) -> float:
        if left == 0:
            return 0.0
        key = (V, learner.state_key(), left)
        got = memo.get(key)
        if got is not None:
            return got[0]
        if len(memo) >= caps.max_adversary_states:
            raise CapExceeded("max_adversary_states", len(memo) + 1, caps.max_adversary_states)
        best, move = -1.0, None
        for x in range(H.domain_size):
            dist = learner.predict_proba(x)
            for y in range(H.k + 1):
                V2 = V & masks[x][y]
                if not V2:
                    continue
                nxt = learner.clone()
                nxt.update(x, y)
                v = (1.0 - dist.get(y, 0.0)) + value(V2, nxt, left - 1)
                if v > best + 1e-15:
                    best, move = v, (x, y, V2, nxt)
        memo[key] = (best, move)
        return best

    root = make_learner()
    total = value(H.full_mask, root, horizon)
    seq = []
    V, learner, left = H.full_mask, root, horizon
    while left > 0:
        _, move = memo[(V, learner.state_key(), left)]
        x, y, V, learner = move
        seq.append((x, y))
        left -= 1
    return AdversaryResult(seq, total if horizon else 0.0, len(memo))


def wm_regret_bound(n_experts: int, horizon: int) -> float:
    return math.sqrt(0.5 * math.log(n_experts) * horizon)


def wm_worst_regret(n_experts: int, horizon: int, eta: float | None = None,
                    loss_vectors: Sequence[Sequence[int]] | None = None) -> float:
    """Exact worst-case expected regret of weighted majority.

    The learner's expected loss in a round is ``sum_i w_i l_i / sum_i w_i``
    for the experts' 0/1 loss vector ``l``, and its state is the vector of
    mistake counts, so a dynamic program over mistake vectors gives the
    maximum over all sequences.  With ``loss_vectors=None`` every vector in
    ``{0,1}^N`` is allowed, which dominates every concrete expert set.
    """
    if eta is None:
        eta = default_eta(n_experts, horizon)
    vecs = ([tuple(v) for v in loss_vectors] if loss_vectors is not None
            else list(itertools.product((0, 1), repeat=n_experts)))
    memo: dict = {}

    def go(m: tuple[int, ...], left: int) -> float:
        if left == 0:
            return -min(m)
        got = memo.get((m, left))
        if got is not None:
            return got
        low = min(m)
        w = [math.exp(-eta * (mi - low)) for mi in m]
        W = sum(w)
        best = -math.inf
        for vec in vecs:
            loss = sum(wi for wi, li in zip(w, vec) if li) / W
            best = max(best, loss + go(tuple(mi + li for mi, li in zip(m, vec)), left - 1))
        memo[(m, left)] = best
        return best

    return go((0,) * n_experts, horizon)


def expert_loss_vectors(experts: Sequence[Sequence[int]], k: int) -> list[tuple[int, ...]]:
    """Distinct 0/1 loss vectors the experts can incur over all (x, y) pairs."""
    out = set()
    for x in range(len(experts[0])):
        for y in range(k + 1):
            out.add(tuple(int(e[x] != y) for e in experts))
    return sorted(out)


def wm_regret_bruteforce(experts: Sequence[Sequence[int]], k: int, horizon: int,
                         eta: float | None = None) -> float:
    """Worst expected regret by replaying every (x, y) sequence through the learner."""
    experts = [tuple(e) for e in experts]
    pairs = [(x, y) for x in range(len(experts[0])) for y in range(k + 1)]
    worst = -math.inf
    for seq in itertools.product(pairs, repeat=horizon):
        wm = WeightedMajority(experts, k, horizon, eta)
        loss = run_sequence(wm, seq).mistakes
        best_expert = min(sum(e[x] != y for x, y in seq) for e in experts)
        worst = max(worst, loss - best_expert)
    return worst
