"""Exhaustive search for limit linear series on flag curves.

The flag curve has a backbone Z_1 - ... - Z_g of rational curves; from each
Z_j a chain W_{j,1}, ..., W_{j,L_j} of rational curves leads to an elliptic
tail E_j.  A state assigns to every component a vanishing sequence (largest
first) at each of its nodes, plus the sequence alpha >= m at the moving
point Q.  Sequences on the two sides of a node are tied by
m_i(Y) + m_{r-i}(Z) = d, so only one side is chosen freely.

Constraints imposed on a component Y with special points p, p', ...:

rational Y
    * m_i(p) + m_{r-i}(p') <= d for every pair of points;
    * total weight <= (r+1)(d-r);
    * at a node facing a chain that ends in a tail, a_i >= 1 for i < r (cusp);
    * if Y has such a node, any two other points have equality in the pair
      inequality for at most one index.

elliptic E with node P (sequence beta)
    * beta_0 <= d and beta_1 <= d - 2;
    * with Q on E: alpha_i + beta_{r-i} <= d, and the indices S where equality
      holds must have gcd of pairwise alpha-differences >= 2 (Q - P is then
      torsion of an order dividing that gcd).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .calculator import common_factor_k, rho_moving
from .errors import BNError, BudgetExceededError, NotApplicableError
from .problem import RamificationProblem

Seq = Tuple[int, ...]
MAX_R, MAX_D, MAX_G, MAX_CHAIN = 3, 8, 4, 3


def weight(seq: Sequence[int]) -> int:
    """Sum of a_i = m_i - (r - i) for a sequence listed largest first."""
    r = len(seq) - 1
    return sum(x - (r - i) for i, x in enumerate(seq))


def complementary(seq: Seq, d: int) -> Seq:
    """The sequence on the other side of a node."""
    r = len(seq) - 1
    return tuple(d - seq[r - i] for i in range(r + 1))


@dataclass(frozen=True)
class FlagCurveConfig:
    g: int
    chain_lengths: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.g < 1:
            raise ValueError("need at least one elliptic tail")
        lengths = tuple(self.chain_lengths) or (1,) * self.g
        if len(lengths) != self.g or any(x < 0 for x in lengths):
            raise ValueError("one nonnegative chain length per tail")
        object.__setattr__(self, "chain_lengths", lengths)

    def components(self) -> List[str]:
        out = [f"Z{j}" for j in range(1, self.g + 1)]
        for j, length in enumerate(self.chain_lengths, start=1):
            out += [f"W{j}.{k}" for k in range(1, length + 1)]
        out += [f"E{j}" for j in range(1, self.g + 1)]
        return out

    def edges(self) -> List[Tuple[str, str, str, bool]]:
        """(node label, component, neighbour, node faces a tail from the component's side)."""
        out = []
        for j in range(1, self.g):
            out.append((f"R{j}", f"Z{j}", f"Z{j + 1}", False))
        for j, length in enumerate(self.chain_lengths, start=1):
            chain = [f"Z{j}"] + [f"W{j}.{k}" for k in range(1, length + 1)] + [f"E{j}"]
            for k in range(len(chain) - 1):
                out.append((f"P{j}.{k}", chain[k], chain[k + 1], True))
        return out

    def adjacency(self) -> Dict[str, List[Tuple[str, str, bool]]]:
        adj: Dict[str, List[Tuple[str, str, bool]]] = {c: [] for c in self.components()}
        for label, a, b, faces_tail in self.edges():
            adj[a].append((label, b, faces_tail))
            adj[b].append((label, a, False))
        return adj


def is_elliptic(component: str) -> bool:
    return component.startswith("E")


@dataclass(frozen=True)
class LimitSeriesState:
    """Aspect data: ``aspects[component][node]`` is that component's sequence at the node."""

    aspects: Mapping[str, Mapping[str, Seq]]
    q_component: str
    q_sequence: Seq
    r: int
    d: int

    def weights(self) -> Dict[str, int]:
        out = {}
        for comp, pts in self.aspects.items():
            total = sum(weight(s) for s in pts.values())
            if comp == self.q_component:
                total += weight(self.q_sequence)
            out[comp] = total
        return out

    @property
    def on_tail(self) -> bool:
        return is_elliptic(self.q_component)

    def tail_node_sequence(self) -> Seq:
        """Sequence of the Q-bearing tail at its node."""
        if not self.on_tail:
            raise NotApplicableError("Q is not on an elliptic tail")
        (seq,) = self.aspects[self.q_component].values()
        return seq

    def tail_weight(self) -> int:
        return weight(self.tail_node_sequence())

    def maximal_positions(self) -> List[int]:
        """Indices i where alpha_i + beta_{r-i} = d on the Q-bearing tail."""
        beta = self.tail_node_sequence()
        return [i for i in range(self.r + 1) if self.q_sequence[i] + beta[self.r - i] == self.d]

    def torsion_orders(self) -> List[int]:
        pos = self.maximal_positions()
        return sorted({self.q_sequence[i] - self.q_sequence[j] for i, j in combinations(pos, 2)})


def torsion_order(state: LimitSeriesState, pair: Tuple[int, int]) -> int:
    """m_i - m_j when both positions are maximal; Q - P is then torsion of that order."""
    i, j = pair
    pos = state.maximal_positions()
    if i not in pos or j not in pos or i == j:
        raise NotApplicableError(f"positions {pair} are not both maximal (maximal: {pos})")
    return abs(state.q_sequence[i] - state.q_sequence[j])


@dataclass(frozen=True)
class WeightWindow:
    lower: int
    upper: int
    upper_alt: int


def weight_window(p: RamificationProblem) -> WeightWindow:
    """Bounds on the tail weight at P: [r(g-1), r(g-1)+rho+r-1]; ``upper_alt`` uses r(g+1)."""
    rho = rho_moving(p)
    base = p.r * (p.g - 1)
    return WeightWindow(base, base + rho + p.r - 1, p.r * (p.g + 1) + rho + p.r - 1)


def weight_window_check(state: LimitSeriesState, p: RamificationProblem) -> bool:
    w = state.tail_weight()
    win = weight_window(p)
    return win.lower <= w <= win.upper


def check_budget(cfg: FlagCurveConfig, r: int, d: int) -> None:
    problems = []
    if r > MAX_R:
        problems.append(f"r={r} > {MAX_R}")
    if d > MAX_D:
        problems.append(f"d={d} > {MAX_D}")
    if cfg.g > MAX_G:
        problems.append(f"g={cfg.g} > {MAX_G}")
    if max(cfg.chain_lengths) > MAX_CHAIN:
        problems.append(f"chain length {max(cfg.chain_lengths)} > {MAX_CHAIN}")
    if problems:
        raise BudgetExceededError("search budget exceeded: " + ", ".join(problems))


class LimitSeriesSearch:
    """Search engine for one (flag curve, r, d); feasibility of Q-free subtrees is cached."""

    def __init__(self, cfg: FlagCurveConfig, r: int, d: int) -> None:
        check_budget(cfg, r, d)
        self.cfg, self.r, self.d = cfg, r, d
        self.adj = cfg.adjacency()
        self.seqs: List[Seq] = [tuple(c) for c in combinations(range(d, -1, -1), r + 1)]
        self.budget = (r + 1) * (d - r)
        self._feasible: Dict[Tuple[str, str, Seq], bool] = {}

    # -- local constraints ---------------------------------------------

    def _pair_ok(self, s: Seq, t: Seq) -> bool:
        r, d = self.r, self.d
        return all(s[i] + t[r - i] <= d for i in range(r + 1))

    def _equalities(self, s: Seq, t: Seq) -> int:
        r, d = self.r, self.d
        return sum(1 for i in range(r + 1) if s[i] + t[r - i] == d)

    def _cusp(self, s: Seq) -> bool:
        r = self.r
        return all(s[i] - (r - i) >= 1 for i in range(r))

    def _rational_assignments(
        self, fixed: List[Tuple[Seq, bool]], free: List[bool], q_choices: Optional[List[Seq]]
    ) -> Iterator[Tuple[List[Seq], Optional[Seq]]]:
        """Sequences for the free nodes (and Q) compatible with the fixed ones.

        ``fixed`` and ``free`` carry a flag marking nodes that face a tail.
        """
        faces = [f for _, f in fixed] + list(free)
        has_tail_node = any(faces)
        points: List[Seq] = [s for s, _ in fixed]
        for s, f in fixed:
            if f and not self._cusp(s):
                return
        used = sum(weight(s) for s in points)
        if used > self.budget:
            return
        for a, b in combinations(range(len(points)), 2):
            if not self._pair_ok(points[a], points[b]):
                return
        slots = len(free) + (1 if q_choices is not None else 0)

        def extend(idx: int, chosen: List[Seq], used: int) -> Iterator[List[Seq]]:
            if idx == slots:
                yield list(chosen)
                return
            is_q = q_choices is not None and idx == len(free)
            candidates = q_choices if is_q else self.seqs
            faces_tail = False if is_q else free[idx]
            for s in candidates:
                w = weight(s)
                if used + w > self.budget:
                    continue
                if faces_tail and not self._cusp(s):
                    continue
                if all(self._pair_ok(s, t) for t in points + chosen):
                    chosen.append(s)
                    yield from extend(idx + 1, chosen, used + w)
                    chosen.pop()

        for chosen in extend(0, [], used):
            allpts = points + chosen
            allfaces = faces + ([False] if q_choices is not None else [])
            if has_tail_node:
                others = [s for s, f in zip(allpts, allfaces) if not f]
                if any(self._equalities(s, t) > 1 for s, t in combinations(others, 2)):
                    continue
            node_seqs = chosen[: len(free)]
            q_seq = chosen[len(free)] if q_choices is not None else None
            yield node_seqs, q_seq

    def _tail_ok(self, beta: Seq) -> bool:
        return beta[0] <= self.d and (self.r < 1 or beta[1] <= self.d - 2)

    def _tail_with_q_ok(self, alpha: Seq, beta: Seq) -> bool:
        r, d = self.r, self.d
        if not self._tail_ok(beta) or not self._pair_ok(alpha, beta):
            return False
        S = [i for i in range(r + 1) if alpha[i] + beta[r - i] == d]
        if len(S) >= 2:
            common = reduce(gcd, (alpha[S[0]] - alpha[i] for i in S[1:]))
            if common < 2:
                return False
        return True

    # -- subtree search -------------------------------------------------

    def _children(self, comp: str, parent: Optional[str]) -> List[Tuple[str, str, bool]]:
        return [(label, nb, f) for label, nb, f in self.adj[comp] if nb != parent]

    def _parent_faces(self, comp: str, parent: str) -> bool:
        for label, nb, f in self.adj[comp]:
            if nb == parent:
                return f
        raise KeyError(parent)

    def _local(
        self, comp: str, parent: Optional[str], parent_seq: Optional[Seq], q_choices: Optional[List[Seq]]
    ) -> Iterator[Tuple[List[Seq], Optional[Seq]]]:
        kids = self._children(comp, parent)
        if is_elliptic(comp):
            if parent is not None:
                if q_choices is None:
                    if self._tail_ok(parent_seq):
                        yield [], None
                else:
                    for alpha in q_choices:
                        if self._tail_with_q_ok(alpha, parent_seq):
                            yield [], alpha
                return
            for beta in self.seqs:
                if q_choices is None:
                    if self._tail_ok(beta):
                        yield [beta], None
                else:
                    for alpha in q_choices:
                        if self._tail_with_q_ok(alpha, beta):
                            yield [beta], alpha
            return
        fixed = [] if parent is None else [(parent_seq, self._parent_faces(comp, parent))]
        yield from self._rational_assignments(fixed, [f for _, _, f in kids], q_choices)

    def feasible(self, comp: str, parent: str, seq: Seq) -> bool:
        """Can the Q-free subtree at ``comp`` (entered from ``parent``) be completed?"""
        key = (comp, parent, seq)
        if key not in self._feasible:
            kids = self._children(comp, parent)
            ok = False
            for node_seqs, _ in self._local(comp, parent, seq, None):
                if all(self.feasible(nb, comp, complementary(s, self.d)) for (_, nb, _), s in zip(kids, node_seqs)):
                    ok = True
                    break
            self._feasible[key] = ok
        return self._feasible[key]

    def _expand(self, comp: str, parent: Optional[str], parent_label: Optional[str], seq: Optional[Seq],
                q_choices: Optional[List[Seq]]) -> Iterator[Tuple[Dict[str, Dict[str, Seq]], Optional[Seq]]]:
        kids = self._children(comp, parent)
        for node_seqs, q_seq in self._local(comp, parent, seq, q_choices):
            if not all(self.feasible(nb, comp, complementary(s, self.d)) for (_, nb, _), s in zip(kids, node_seqs)):
                continue
            own: Dict[str, Seq] = {}
            if parent_label is not None:
                own[parent_label] = seq
            for (label, _, _), s in zip(kids, node_seqs):
                own[label] = s
            base = {comp: own}
            yield from self._combine(base, comp, kids, node_seqs, 0, q_seq)

    def _combine(self, acc, comp, kids, node_seqs, idx, q_seq):
        if idx == len(kids):
            yield {k: dict(v) for k, v in acc.items()}, q_seq
            return
        label, nb, _ = kids[idx]
        for sub, _ in self._expand(nb, comp, label, complementary(node_seqs[idx], self.d), None):
            merged = dict(acc)
            merged.update(sub)
            yield from self._combine(merged, comp, kids, node_seqs, idx + 1, q_seq)

    def states(self, p: RamificationProblem, q_component: str, limit: Optional[int] = None) -> List[LimitSeriesState]:
        """All states with Q on ``q_component``."""
        if (p.r, p.d) != (self.r, self.d) or p.g != self.cfg.g:
            raise ValueError("problem does not match this search")
        q_choices = [s for s in self.seqs if all(s[i] >= p.m[i] for i in range(self.r + 1))]
        out = []
        for aspects, q_seq in self._expand(q_component, None, None, None, q_choices):
            out.append(LimitSeriesState(aspects, q_component, q_seq, self.r, self.d))
            if limit is not None and len(out) >= limit:
                break
        return out


def q_components(cfg: FlagCurveConfig, placement: str) -> List[str]:
    comps = cfg.components()
    if placement == "tails":
        return [c for c in comps if is_elliptic(c)]
    if placement == "rational":
        return [c for c in comps if not is_elliptic(c)]
    if placement == "all":
        return comps
    raise ValueError(f"unknown Q placement {placement!r}")


def enumerate_states(
    cfg: FlagCurveConfig,
    p: RamificationProblem,
    placement: str = "all",
    search: Optional[LimitSeriesSearch] = None,
    limit: Optional[int] = None,
) -> List[LimitSeriesState]:
    """All limit-series states with Q on a component of the chosen kind."""
    if cfg.g != p.g:
        raise ValueError("flag curve genus must match the problem")
    search = search or LimitSeriesSearch(cfg, p.r, p.d)
    out: List[LimitSeriesState] = []
    for comp in q_components(cfg, placement):
        remaining = None if limit is None else limit - len(out)
        if remaining is not None and remaining <= 0:
            break
        out.extend(search.states(p, comp, remaining))
    return out


def backbone_increments(state: LimitSeriesState) -> List[int]:
    """sum_i [m_i(Z_{l+1}, R_l) - m_i(Z_l, R_{l-1})] along the backbone."""
    left = []
    l = 2
    while f"Z{l}" in state.aspects and f"R{l - 1}" in state.aspects[f"Z{l}"]:
        left.append(state.aspects[f"Z{l}"][f"R{l - 1}"])
        l += 1
    return [sum(b) - sum(a) for a, b in zip(left, left[1:])]


@dataclass(frozen=True)
class AspectSplit:
    t: int
    tail_parameters: int
    rest_parameters: int
    maximal_positions: Tuple[int, ...]
    dropped_positions: Tuple[int, ...]
    first_drop: int
    extra_divisor_degree: int


@dataclass(frozen=True)
class AspectFamilyReport:
    total: int
    splits: Tuple[AspectSplit, ...]
    capped: bool
    finite: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "finite", self.total <= 0)


def aspect_family_dimension(p: RamificationProblem, k: Optional[int] = None) -> AspectFamilyReport:
    """Dimension count for tail aspects keeping k+1 positions at maximal vanishing.

    For a split t, the tail aspect carries t parameters and the rest of the
    curve rho + k - 1 - t; one position drops by 1 + t, the others by 1, and
    extra divisors of total degree t + r - k appear.  When every difference
    shares a factor (k = r) one point is determined by the others and the
    total is rho + r - 2.
    """
    if k is None:
        k = common_factor_k(p.m)
    rho = rho_moving(p)
    total = rho + k - 1
    capped = k >= p.r
    if capped:
        total = rho + p.r - 2
    if total < 0:
        raise BNError(f"rho + k - 1 = {total} < 0: no such linear series")
    subset = _common_factor_subset(p.m, k)
    dropped = tuple(i for i in range(p.r + 1) if i not in subset)
    splits = tuple(
        AspectSplit(t, t, total - t, subset, dropped, 1 + t, t + p.r - k) for t in range(total + 1)
    )
    return AspectFamilyReport(total, splits, capped)


def _common_factor_subset(m: Sequence[int], k: int) -> Tuple[int, ...]:
    idx = range(len(m))
    for subset in combinations(idx, k + 1):
        if k == 0:
            return subset
        g = reduce(gcd, (m[subset[0]] - m[i] for i in subset[1:]))
        if g >= 2:
            return subset
    return tuple(range(k + 1))
