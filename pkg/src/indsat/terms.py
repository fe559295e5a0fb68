"""First-order terms: symbols, variables, applications, substitution, unification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional


@dataclass(frozen=True)
class Symbol:
    """A function or predicate symbol.

    ``stage`` is 0 for symbols of the base signature and >= 1 for Skolem
    symbols (1 + the maximal stage occurring in the naming formula).
    """

    name: str
    arity: int
    kind: str  # 'fun' | 'pred'
    stage: int = 0

    @property
    def is_skolem(self) -> bool:
        return self.stage > 0

    def __str__(self) -> str:
        return self.name


# Equality is a distinguished logical predicate, present in every signature.
EQ = Symbol("=", 2, "pred")


class Term:
    """Base class for terms; instances are immutable and shareable."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App(Term):
    fn: Symbol
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if self.fn.kind != "fun":
            raise ValueError(f"term head must be a function symbol: {self.fn.name}")
        if len(self.args) != self.fn.arity:
            raise ValueError(
                f"arity mismatch: {self.fn.name}/{self.fn.arity} applied to {len(self.args)} args"
            )

    def __str__(self) -> str:
        if not self.args:
            return self.fn.name
        if self.fn.name == "+" and len(self.args) == 2:
            return f"({self.args[0]} + {self.args[1]})"
        return f"{self.fn.name}({', '.join(str(a) for a in self.args)})"


def term_vars(t: Term, acc: Optional[list[str]] = None) -> list[str]:
    """Variables of ``t`` in first-occurrence order."""
    if acc is None:
        acc = []
    if isinstance(t, Var):
        if t.name not in acc:
            acc.append(t.name)
    else:
        for a in t.args:
            term_vars(a, acc)
    return acc


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    return all(is_ground(a) for a in t.args)


def term_symbols(t: Term, acc: Optional[set[Symbol]] = None) -> set[Symbol]:
    if acc is None:
        acc = set()
    if isinstance(t, App):
        acc.add(t.fn)
        for a in t.args:
            term_symbols(a, acc)
    return acc


def term_size(t: Term) -> int:
    """Number of symbol occurrences, variables included."""
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def term_depth(t: Term) -> int:
    """Constants and variables have depth 0."""
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def term_key(t: Term) -> tuple:
    """Total structural order on terms; variables sort before applications."""
    if isinstance(t, Var):
        return (0, t.name)
    return (1, t.fn.name, t.fn.arity, tuple(term_key(a) for a in t.args))


def blind_key(t: Term) -> tuple:
    """Like term_key but with all variables identified (for canonical sorting)."""
    if isinstance(t, Var):
        return (0, "*")
    return (1, t.fn.name, t.fn.arity, tuple(blind_key(a) for a in t.args))


# --- substitutions ---------------------------------------------------------
#
# A substitution is a plain dict mapping variable names to terms.  Normalized
# substitutions contain no identity bindings and are idempotent.

Subst = dict[str, Term]


def subst_term(t: Term, s: Subst) -> Term:
    if isinstance(t, Var):
        return s.get(t.name, t)
    if not t.args:
        return t
    return App(t.fn, tuple(subst_term(a, s) for a in t.args))


def normalize_subst(s: Subst) -> Subst:
    return {x: t for x, t in s.items() if not (isinstance(t, Var) and t.name == x)}


def compose(s1: Subst, s2: Subst) -> Subst:
    """Composition: applying the result equals applying s1 then s2."""
    out = {x: subst_term(t, s2) for x, t in s1.items()}
    for y, t in s2.items():
        if y not in s1:
            out[y] = t
    return normalize_subst(out)


def occurs_in(name: str, t: Term) -> bool:
    if isinstance(t, Var):
        return t.name == name
    return any(occurs_in(name, a) for a in t.args)


def unify(l: Term, r: Term, s: Optional[Subst] = None) -> Optional[Subst]:
    """Most general unifier of two terms, or None on clash or occurs-check.

    The result is idempotent: every binding is fully resolved.
    """
    s = dict(s) if s else {}
    stack = [(l, r)]
    while stack:
        a, b = stack.pop()
        a = subst_term(a, s)
        b = subst_term(b, s)
        if a == b:
            continue
        if isinstance(a, Var):
            if occurs_in(a.name, b):
                return None
            bind = {a.name: b}
            s = {x: subst_term(t, bind) for x, t in s.items()}
            s[a.name] = b
        elif isinstance(b, Var):
            stack.append((b, a))
        else:
            if a.fn != b.fn:
                return None
            stack.extend(zip(a.args, b.args))
    return normalize_subst(s)


def unify_tuples(ls: tuple[Term, ...], rs: tuple[Term, ...]) -> Optional[Subst]:
    if len(ls) != len(rs):
        return None
    s: Optional[Subst] = {}
    for a, b in zip(ls, rs):
        s = unify(a, b, s)
        if s is None:
            return None
    return s


def match_term(pattern: Term, target: Term, s: Optional[Subst] = None) -> Optional[Subst]:
    """One-way matching: find s with pattern[s] == target, binding only
    pattern variables.  Target variables are treated as constants."""
    s = dict(s) if s else {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            if p.name in s:
                if s[p.name] != t:
                    return None
            else:
                s[p.name] = t
        elif isinstance(t, Var):
            return None
        else:
            if p.fn != t.fn:
                return None
            stack.extend(zip(p.args, t.args))
    return s


# --- ground term enumeration ----------------------------------------------


def enumerate_ground_terms(funs: list[Symbol], max_depth: int) -> list[Term]:
    """All ground terms of depth <= max_depth over the given function symbols.

    Deterministic order: by depth, then by declaration order of the head
    symbol, then recursively by arguments.  The listing for a smaller depth is
    a prefix of the listing for a larger one.  Empty when there is no
    constant.
    """
    funs = [f for f in funs if f.kind == "fun"]
    by_depth: list[list[Term]] = []
    out: list[Term] = []
    for d in range(max_depth + 1):
        level: list[Term] = []
        if d == 0:
            for f in funs:
                if f.arity == 0:
                    level.append(App(f))
        else:
            shallower = [t for lvl in by_depth for t in lvl]
            prev = by_depth[d - 1]
            for f in funs:
                if f.arity == 0:
                    continue
                for args in _arg_tuples(f.arity, shallower, prev):
                    level.append(App(f, args))
        by_depth.append(level)
        out.extend(level)
    return out


def _arg_tuples(arity: int, pool: list[Term], must_use: list[Term]) -> Iterator[tuple[Term, ...]]:
    # Tuples over pool where at least one argument comes from must_use, so the
    # resulting term has exactly the target depth.  Declaration/recursive order.
    must = set(map(id, must_use))

    def rec(i: int, used: bool, acc: list[Term]) -> Iterator[tuple[Term, ...]]:
        if i == arity:
            if used:
                yield tuple(acc)
            return
        for t in pool:
            acc.append(t)
            yield from rec(i + 1, used or id(t) in must, acc)
            acc.pop()

    yield from rec(0, False, [])


def iterate_fn(f: Symbol, m: int, t: Term) -> Term:
    """m-fold application f(f(...f(t)...)); m = 0 gives t itself."""
    if f.arity != 1:
        raise ValueError("iterate_fn needs a unary function symbol")
    for _ in range(m):
        t = App(f, (t,))
    return t
