"""Given-clause saturation with resolution, factoring, paramodulation, and
equality resolution.

The rule set (unordered binary resolution + factoring + paramodulation into
non-variable positions + equality resolution) is sound and refutationally
complete; paramodulation into variables can be enabled as a fallback.
Demodulation with a simplified Knuth-Bendix ordering is available behind a
flag and is off by default.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from heapq import heapify, heappop, heappush
from typing import Optional

from .clauses import Clause, Literal, rename_apart, subst_clause, subst_literal, subsumes
from .formulas import Atom
from .skolem import SkolemTable
from .terms import (
    App,
    Subst,
    Symbol,
    Term,
    Var,
    match_term,
    subst_term,
    term_vars,
    unify,
    unify_tuples,
)

REFUTED = "refuted"
SATURATED = "saturated"
LIMIT = "limit"


@dataclass
class Limits:
    max_generated: int = 100_000
    max_iterations: int = 1_000_000
    wall_clock: float = 60.0

    def __post_init__(self):
        if self.max_generated <= 0 or self.max_iterations <= 0 or self.wall_clock <= 0:
            raise ValueError("limits must be positive")


@dataclass
class SaturationConfig:
    paramod_into_vars: bool = False
    # paramodulating from a bare variable side of an equality rewrites every
    # position of every clause; excluded by default, as in practical provers
    paramod_from_vars: bool = False
    # unit rewriting is what keeps equational search spaces bounded here;
    # without it the arithmetic problems drown in +0 / p(0) insertion families
    demodulation: bool = True
    # Knuth-Bendix ordering constraints (maximal literals only, rewrite the
    # larger equality side, never from the smaller side); the approximation is
    # permissive where the ordering is silent, so no required inference is lost
    ordered: bool = False
    # how often to pick the oldest passive clause instead of the lightest;
    # 0 disables age picks (pure lightest-first)
    age_pick_every: int = 0


@dataclass
class ProofStep:
    clause_id: int
    clause: Clause
    rule: str
    parents: tuple[int, ...] = ()
    unifier: Subst = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    kept: bool = True


@dataclass
class SaturationResult:
    verdict: str
    steps: list[ProofStep]
    stats: dict
    state: "ProverState"

    @property
    def empty_clause_id(self) -> Optional[int]:
        for st in reversed(self.steps):
            if st.clause.is_empty:
                return st.clause_id
        return None


# --- inference rules --------------------------------------------------------


def _resolvents(c_lits, d_lits, c_elig=None, d_elig=None):
    """All binary resolvents between two renamed-apart literal sequences."""
    for i, l in enumerate(c_lits):
        if c_elig is not None and not c_elig[i]:
            continue
        for j, m in enumerate(d_lits):
            if d_elig is not None and not d_elig[j]:
                continue
            if l.positive == m.positive or l.atom.pred != m.atom.pred:
                continue
            mu = unify_tuples(l.atom.args, m.atom.args)
            if mu is None:
                continue
            rest = [subst_literal(k, mu) for k in c_lits if k is not l]
            rest += [subst_literal(k, mu) for k in d_lits if k is not m]
            yield Clause.make(rest), i, j, mu


def resolve(c: Clause, d: Clause) -> list[Clause]:
    """Binary resolvents of c and d (d is renamed apart internally)."""
    return [r for r, _, _, _ in _resolvents(c.literals, rename_apart(d))]


def _factors(c: Clause, elig=None):
    lits = c.literals
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            if elig is not None and not (elig[i] or elig[j]):
                continue
            l, m = lits[i], lits[j]
            if l.positive != m.positive or l.atom.pred != m.atom.pred:
                continue
            mu = unify_tuples(l.atom.args, m.atom.args)
            if mu is None:
                continue
            yield subst_clause(c, mu), i, j, mu


def factor(c: Clause) -> list[Clause]:
    """Instances of c merging one unifiable same-polarity literal pair."""
    return [r for r, _, _, _ in _factors(c)]


def _term_positions(t: Term, prefix: tuple[int, ...], include_vars: bool):
    if isinstance(t, Var):
        if include_vars:
            yield prefix, t
        return
    yield prefix, t
    for i, a in enumerate(t.args):
        yield from _term_positions(a, prefix + (i,), include_vars)


def _replace_at(t: Term, pos: tuple[int, ...], new: Term) -> Term:
    if not pos:
        return new
    args = list(t.args)
    args[pos[0]] = _replace_at(args[pos[0]], pos[1:], new)
    return App(t.fn, tuple(args))


def _literal_positions(lits, include_vars: bool, elig=None, ordered: bool = False):
    """Rewrite positions: (literal_index, (arg_index, *path), subterm).

    With ``ordered``, only eligible literals are rewritten and, in equality
    literals, only inside the side that is not strictly smaller.
    """
    out = []
    for li, m in enumerate(lits):
        if elig is not None and not elig[li]:
            continue
        skip_arg = -1
        if ordered and m.is_equality:
            s, t = m.atom.args
            if kbo_greater(s, t):
                skip_arg = 1
            elif kbo_greater(t, s):
                skip_arg = 0
        for ai, arg in enumerate(m.atom.args):
            if ai == skip_arg:
                continue
            for path, sub in _term_positions(arg, (ai,), include_vars):
                out.append((li, path, sub))
    return out


def _paramodulants(from_lits, into_lits, include_vars: bool, from_vars: bool = False,
                   into_positions=None, from_elig=None, ordered: bool = False):
    """Rewrites of into_lits by positive equalities of from_lits.

    Yields (clause, eq_index, orientation, target_literal_index, position, mgu)
    where position = (arg_index, *term_path) inside the target literal.
    """
    if into_positions is None:
        into_positions = _literal_positions(into_lits, include_vars)
    for ei, l in enumerate(from_lits):
        if not l.positive or not l.is_equality:
            continue
        if from_elig is not None and not from_elig[ei]:
            continue
        s0, t0 = l.atom.args
        for orient, (s, t) in enumerate(((s0, t0), (t0, s0))):
            if s == t and orient == 1:
                continue
            if isinstance(s, Var) and not from_vars:
                continue
            if ordered and kbo_greater(t, s):
                continue
            s_is_var = isinstance(s, Var)
            for li, pos, sub in into_positions:
                if not s_is_var and isinstance(sub, App) and sub.fn != s.fn:
                    continue
                mu = unify(s, sub)
                if mu is None:
                    continue
                m = into_lits[li]
                ai = pos[0]
                new_args = list(m.atom.args)
                new_args[ai] = _replace_at(new_args[ai], pos[1:], t)
                new_lit = Literal(m.positive, Atom(m.atom.pred, tuple(new_args)))
                rest = [subst_literal(k, mu) for k in from_lits if k is not l]
                rest += [
                    subst_literal(new_lit if k is m else k, mu)
                    for k in into_lits
                ]
                yield Clause.make(rest), ei, orient, li, pos, mu


def paramodulate(frm: Clause, into: Clause, include_vars: bool = False,
                 from_vars: bool = True) -> list[Clause]:
    """Paramodulants from positive equalities of ``frm`` into ``into``
    (renamed apart internally); both orientations are tried."""
    return [r for r, *_ in _paramodulants(frm.literals, rename_apart(into), include_vars, from_vars)]


def _eq_resolvents(c: Clause, elig=None):
    for i, l in enumerate(c.literals):
        if elig is not None and not elig[i]:
            continue
        if l.positive or not l.is_equality:
            continue
        mu = unify(l.atom.args[0], l.atom.args[1])
        if mu is None:
            continue
        rest = [subst_literal(k, mu) for k in c.literals if k is not l]
        yield Clause.make(rest), i, mu


def equality_resolution(c: Clause) -> list[Clause]:
    """Resolutions of negative equalities s ≠ t against reflexivity."""
    return [r for r, _, _ in _eq_resolvents(c)]


# --- simplified Knuth-Bendix ordering and demodulation ----------------------


def _kbo_weight(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(_kbo_weight(a) for a in t.args)


def _var_counts(t: Term, acc: dict) -> dict:
    if isinstance(t, Var):
        acc[t.name] = acc.get(t.name, 0) + 1
    else:
        for a in t.args:
            _var_counts(a, acc)
    return acc


def _prec(sym: Symbol) -> tuple:
    return (sym.arity, sym.stage, sym.name)


def kbo_greater(s: Term, t: Term) -> bool:
    """Conservative Knuth-Bendix comparison (unit weights); used only to
    orient demodulators, so returning False when in doubt is safe."""
    sv = _var_counts(s, {})
    tv = _var_counts(t, {})
    for v, n in tv.items():
        if sv.get(v, 0) < n:
            return False
    ws, wt = _kbo_weight(s), _kbo_weight(t)
    if ws > wt:
        return True
    if ws < wt:
        return False
    if isinstance(s, Var) or isinstance(t, Var):
        return False
    if _prec(s.fn) > _prec(t.fn):
        return True
    if s.fn != t.fn:
        return False
    for a, b in zip(s.args, t.args):
        if a == b:
            continue
        return kbo_greater(a, b)
    return False


def _pred_term(atom: Atom) -> Term:
    if atom.pred.name == "=":
        raise ValueError("equality handled separately")
    return App(Symbol("@" + atom.pred.name, atom.pred.arity, "fun"), atom.args)


def _literal_multiset(lit: Literal) -> list[Term]:
    # standard encoding: s=t -> {s,t}; s≠t -> {s,s,t,t}; P(..) likewise
    if lit.is_equality:
        s, t = lit.atom.args
        return [s, t] if lit.positive else [s, s, t, t]
    enc = _pred_term(lit.atom)
    return [enc] if lit.positive else [enc, enc]


def _multiset_greater(ms1: list[Term], ms2: list[Term]) -> bool:
    """Multiset extension of the (partial) term ordering."""
    m1, m2 = list(ms1), list(ms2)
    for t in list(m1):
        if t in m2:
            m1.remove(t)
            m2.remove(t)
    if not m2:
        return bool(m1)
    if not m1:
        return False
    return all(any(kbo_greater(m, n) for m in m1) for n in m2)


def literal_greater(l1: Literal, l2: Literal) -> bool:
    return _multiset_greater(_literal_multiset(l1), _literal_multiset(l2))


def eligible_literals(c: Clause) -> tuple[bool, ...]:
    """Maximal (not strictly dominated) literals; the ordering is stable under
    substitution, so dominated literals stay dominated in every instance."""
    lits = c.literals
    out = []
    for i, l in enumerate(lits):
        out.append(not any(j != i and literal_greater(lits[j], l) for j in range(len(lits))))
    return tuple(out)


def _rewrite_once(t: Term, lhs: Term, rhs: Term) -> Optional[Term]:
    sigma = match_term(lhs, t)
    if sigma is not None:
        return subst_term(rhs, sigma)
    if isinstance(t, Var):
        return None
    for i, a in enumerate(t.args):
        r = _rewrite_once(a, lhs, rhs)
        if r is not None:
            args = list(t.args)
            args[i] = r
            return App(t.fn, tuple(args))
    return None


def demodulate(c: Clause, demodulators: list[tuple[int, Term, Term]], limit: int = 200):
    """Normalize c with oriented unit equalities; returns (clause, used_ids)."""
    used: list[int] = []
    lits = list(c.literals)
    changed = True
    rounds = 0
    while changed and rounds < limit:
        changed = False
        rounds += 1
        for i, lit in enumerate(lits):
            for cid, lhs, rhs in demodulators:
                for ai, arg in enumerate(lit.atom.args):
                    r = _rewrite_once(arg, lhs, rhs)
                    if r is not None:
                        args = list(lit.atom.args)
                        args[ai] = r
                        lits[i] = Literal(lit.positive, Atom(lit.atom.pred, tuple(args)))
                        used.append(cid)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    if not used:
        return c, used
    return Clause.make(lits), used


# --- prover state and the main loop ----------------------------------------


class _Stop(Exception):
    def __init__(self, verdict: str):
        self.verdict = verdict


class ProverState:
    """Mutable state of one saturation run (single-threaded)."""

    def __init__(self, signature=None, table: Optional[SkolemTable] = None,
                 limits: Optional[Limits] = None, config: Optional[SaturationConfig] = None):
        self.signature: dict[str, Symbol] = {}
        for sym in signature or ():
            self.signature[sym.name] = sym
        self.table = table if table is not None else SkolemTable()
        self.limits = limits if limits is not None else Limits()
        self.config = config if config is not None else SaturationConfig()
        self.steps: list[ProofStep] = []
        self.active: list[tuple[int, Clause]] = []
        self.passive: list = []  # heap of (weight, age, id, clause)
        self.seen: set[Clause] = set()
        self.generated = 0
        self.iterations = 0
        self.age = 0
        self.rule_counts: dict[str, int] = {}
        self.demodulators: list[tuple[int, Term, Term]] = []
        self.start_time = time.monotonic()
        self._features: dict[int, tuple[int, frozenset]] = {}
        self._renamed: dict[int, tuple[Literal, ...]] = {}
        self._positions: dict[int, list] = {}
        self._elig: dict[int, Optional[tuple[bool, ...]]] = {}

    def renamed(self, cid: int, c: Clause) -> tuple[Literal, ...]:
        lits = self._renamed.get(cid)
        if lits is None:
            lits = rename_apart(c)
            self._renamed[cid] = lits
        return lits

    def eligibility(self, cid: int, c: Clause) -> Optional[tuple[bool, ...]]:
        if not self.config.ordered:
            return None
        elig = self._elig.get(cid)
        if elig is None:
            elig = eligible_literals(c)
            self._elig[cid] = elig
        return elig

    def positions(self, cid: int, c: Clause, lits) -> list:
        pos = self._positions.get(cid)
        if pos is None:
            pos = _literal_positions(lits, self.config.paramod_into_vars,
                                     self.eligibility(cid, c), self.config.ordered)
            self._positions[cid] = pos
        return pos

    # language bookkeeping: all symbols ever seen, base and Skolem
    def note_clause_symbols(self, c: Clause) -> None:
        for sym in c.symbols():
            self.signature.setdefault(sym.name, sym)

    def known_symbols(self) -> set[Symbol]:
        return set(self.signature.values())

    def elapsed(self) -> float:
        return time.monotonic() - self.start_time

    def _check_limits(self) -> None:
        if self.generated >= self.limits.max_generated:
            raise _Stop(LIMIT)
        if self.iterations >= self.limits.max_iterations:
            raise _Stop(LIMIT)
        if self.elapsed() > self.limits.wall_clock:
            raise _Stop(LIMIT)

    def _clause_features(self, cid: int, c: Clause) -> tuple[int, frozenset]:
        feat = self._features.get(cid)
        if feat is None:
            feat = (len(c), frozenset((l.atom.pred.name, l.positive) for l in c))
            self._features[cid] = feat
        return feat

    def _subsumed_by_active(self, c: Clause) -> bool:
        n = len(c)
        preds = frozenset((l.atom.pred.name, l.positive) for l in c)
        for cid, a in self.active:
            ln, ap = self._clause_features(cid, a)
            if ln <= n and ap <= preds and subsumes(a, c):
                return True
        return False

    def add_step(self, clause: Clause, rule: str, parents=(), unifier=None,
                 details=None, kept=True) -> ProofStep:
        step = ProofStep(len(self.steps), clause, rule, tuple(parents),
                         unifier or {}, details or {}, kept)
        self.steps.append(step)
        self.rule_counts[rule] = self.rule_counts.get(rule, 0) + 1
        return step

    def ingest(self, clause: Clause, rule: str, parents=(), unifier=None, details=None) -> None:
        """Record a generated clause; keep it unless redundant.  Raises _Stop
        on the empty clause or when a limit is hit."""
        self.generated += 1
        if self.generated > self.limits.max_generated:
            raise _Stop(LIMIT)
        if clause in self.seen and rule != "input":
            self.rule_counts[rule] = self.rule_counts.get(rule, 0) + 1
            return
        step = self.add_step(clause, rule, parents, unifier, details, kept=False)
        if clause.is_empty:
            step.kept = True
            raise _Stop(REFUTED)
        if self.config.demodulation and self.demodulators and rule != "demod":
            simplified, used = demodulate(clause, self.demodulators)
            if used:
                self.ingest(simplified, "demod", (step.clause_id, *used), {},
                            {"original": str(clause)})
                return
        if clause in self.seen:
            return
        if clause.is_tautology() or self._subsumed_by_active(clause):
            self.seen.add(clause)
            return
        step.kept = True
        self.seen.add(clause)
        self.note_clause_symbols(clause)
        self.age += 1
        heappush(self.passive, (clause.weight(), self.age, step.clause_id, clause))
        if self.config.demodulation and len(clause) == 1:
            lit = clause.literals[0]
            if lit.positive and lit.is_equality:
                l, r = lit.atom.args
                if kbo_greater(l, r):
                    self.demodulators.append((step.clause_id, l, r))
                elif kbo_greater(r, l):
                    self.demodulators.append((step.clause_id, r, l))


class ClauseSource:
    """Extra inference rules feeding clause sets into the search.

    ``initial`` runs once before the loop (hints); ``next_batch`` is polled
    once per iteration until it returns None (bounded instance pools);
    ``on_given`` reacts to the clause under consideration (analytic rules).
    """

    name = "source"

    def initial(self, state: ProverState) -> list:
        return []

    def next_batch(self, state: ProverState):
        return None

    def on_given(self, state: ProverState, given_id: int, given: Clause) -> list:
        return []


def _core_inferences(state: ProverState, given_id: int, given: Clause):
    cfg = state.config
    given_elig = state.eligibility(given_id, given)
    given_positions = _literal_positions(given.literals, cfg.paramod_into_vars,
                                         given_elig, cfg.ordered)
    pairs = list(state.active) + [(given_id, given)]
    for cid, other in pairs:
        other_lits = state.renamed(cid, other)
        other_elig = state.eligibility(cid, other)
        for cl, i, j, mu in _resolvents(given.literals, other_lits, given_elig, other_elig):
            state.ingest(cl, "resolve", (given_id, cid), mu, {"i": i, "j": j})
        for cl, ei, orient, li, pos, mu in _paramodulants(
                given.literals, other_lits, cfg.paramod_into_vars, cfg.paramod_from_vars,
                into_positions=state.positions(cid, other, other_lits),
                from_elig=given_elig, ordered=cfg.ordered):
            state.ingest(cl, "paramod", (given_id, cid), mu,
                         {"eq": ei, "orient": orient, "lit": li, "pos": list(pos)})
        if cid != given_id:
            for cl, ei, orient, li, pos, mu in _paramodulants(
                    other_lits, given.literals, cfg.paramod_into_vars, cfg.paramod_from_vars,
                    into_positions=given_positions, from_elig=other_elig, ordered=cfg.ordered):
                state.ingest(cl, "paramod", (cid, given_id), mu,
                             {"eq": ei, "orient": orient, "lit": li, "pos": list(pos),
                              "from_renamed": True})
    for cl, i, j, mu in _factors(given, given_elig):
        state.ingest(cl, "factor", (given_id,), mu, {"i": i, "j": j})
    for cl, i, mu in _eq_resolvents(given, given_elig):
        state.ingest(cl, "eqres", (given_id,), mu, {"i": i})


def saturate(initial, rules=(), limits: Optional[Limits] = None,
             signature=None, table: Optional[SkolemTable] = None,
             config: Optional[SaturationConfig] = None,
             state: Optional[ProverState] = None) -> SaturationResult:
    """Run the given-clause loop on ``initial`` with optional extra rules.

    Deterministic: identical inputs, configuration, and limits produce an
    identical trace.  Returns a refutation the moment the empty clause is
    derived, Saturated when the passive queue and all sources dry up, and
    LimitReached otherwise.
    """
    if state is None:
        state = ProverState(signature=signature, table=table, limits=limits, config=config)
    rules = list(rules)
    pool: list[ClauseSource] = []
    verdict = None
    try:
        for c in initial:
            state.ingest(c, "input")
        for src in rules:
            for clause, rule_name, parents, unifier, details in src.initial(state):
                state.ingest(clause, rule_name, parents, unifier, details)
        pool = [src for src in rules]
        while True:
            state._check_limits()
            if not state.passive:
                fed = False
                for src in pool:
                    batch = src.next_batch(state)
                    if batch is not None:
                        fed = True
                        for clause, rule_name, parents, unifier, details in batch:
                            state.ingest(clause, rule_name, parents, unifier, details)
                        break
                if not fed and not state.passive:
                    raise _Stop(SATURATED)
                continue
            state.iterations += 1
            # fairness: feed bounded instance pools gradually, one batch per
            # iteration, even while passive is non-empty
            for src in pool:
                batch = src.next_batch(state)
                if batch:
                    for clause, rule_name, parents, unifier, details in batch:
                        state.ingest(clause, rule_name, parents, unifier, details)
            if state.config.age_pick_every and state.iterations % state.config.age_pick_every == 0:
                entry = min(state.passive, key=lambda e: (e[1], e[0]))
                state.passive.remove(entry)
                heapify(state.passive)
                _, _, gid, given = entry
            else:
                _, _, gid, given = heappop(state.passive)
            if state._subsumed_by_active(given):
                continue
            for src in rules:
                for clause, rule_name, parents, unifier, details in src.on_given(state, gid, given):
                    state.ingest(clause, rule_name, parents, unifier, details)
            _core_inferences(state, gid, given)
            state.active.append((gid, given))
    except _Stop as stop:
        verdict = stop.verdict
    stats = {
        "generated": state.generated,
        "kept": sum(1 for s in state.steps if s.kept),
        "iterations": state.iterations,
        "active": len(state.active),
        "passive": len(state.passive),
        "by_rule": dict(sorted(state.rule_counts.items())),
        "seconds": round(state.elapsed(), 3),
    }
    return SaturationResult(verdict, state.steps, stats, state)
