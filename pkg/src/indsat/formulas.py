"""First-order formulas over the term kernel.

Connectives are binary; quantifiers bind one variable at a time.  Alpha
normalization renames bound variables to canonical names so that formula
identity is invariant under bound-variable renaming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .terms import EQ, App, Subst, Symbol, Term, Var, subst_term, term_symbols, term_vars


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    pred: Symbol
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if self.pred.kind != "pred":
            raise ValueError(f"atom head must be a predicate symbol: {self.pred.name}")
        if len(self.args) != self.pred.arity:
            raise ValueError(f"arity mismatch in atom {self.pred.name}")

    def __str__(self) -> str:
        if self.pred == EQ:
            return f"{self.args[0]} = {self.args[1]}"
        if not self.args:
            return self.pred.name
        return f"{self.pred.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    def __str__(self) -> str:
        return f"¬{_paren(self.sub)}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"{_paren(self.left)} ∧ {_paren(self.right)}"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"{_paren(self.left)} ∨ {_paren(self.right)}"


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return f"{_paren(self.left)} → {_paren(self.right)}"


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula

    def __str__(self) -> str:
        return f"∀{self.var} {_paren(self.body)}"


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula

    def __str__(self) -> str:
        return f"∃{self.var} {_paren(self.body)}"


def _paren(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return str(phi)
    return f"({phi})"


def eq(l: Term, r: Term) -> Atom:
    return Atom(EQ, (l, r))


def conj(parts: list[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def free_vars(phi: Formula, bound: Optional[frozenset[str]] = None, acc: Optional[list[str]] = None) -> list[str]:
    """Free variables in first-occurrence order."""
    if bound is None:
        bound = frozenset()
    if acc is None:
        acc = []
    if isinstance(phi, Atom):
        for t in phi.args:
            for v in term_vars(t):
                if v not in bound and v not in acc:
                    acc.append(v)
    elif isinstance(phi, Not):
        free_vars(phi.sub, bound, acc)
    elif isinstance(phi, (And, Or, Implies)):
        free_vars(phi.left, bound, acc)
        free_vars(phi.right, bound, acc)
    elif isinstance(phi, (Forall, Exists)):
        free_vars(phi.body, bound | {phi.var}, acc)
    return acc


def formula_symbols(phi: Formula, acc: Optional[set[Symbol]] = None) -> set[Symbol]:
    if acc is None:
        acc = set()
    if isinstance(phi, Atom):
        acc.add(phi.pred)
        for t in phi.args:
            term_symbols(t, acc)
    elif isinstance(phi, Not):
        formula_symbols(phi.sub, acc)
    elif isinstance(phi, (And, Or, Implies)):
        formula_symbols(phi.left, acc)
        formula_symbols(phi.right, acc)
    elif isinstance(phi, (Forall, Exists)):
        formula_symbols(phi.body, acc)
    return acc


def formula_size(phi: Formula) -> int:
    """Non-variable nodes: connectives, quantifiers, predicate and function symbols."""
    if isinstance(phi, Atom):
        return 1 + sum(_term_nonvar_nodes(t) for t in phi.args)
    if isinstance(phi, Not):
        return 1 + formula_size(phi.sub)
    if isinstance(phi, (And, Or, Implies)):
        return 1 + formula_size(phi.left) + formula_size(phi.right)
    return 1 + formula_size(phi.body)


def _term_nonvar_nodes(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + sum(_term_nonvar_nodes(a) for a in t.args)


def is_quantifier_free(phi: Formula) -> bool:
    if isinstance(phi, Atom):
        return True
    if isinstance(phi, Not):
        return is_quantifier_free(phi.sub)
    if isinstance(phi, (And, Or, Implies)):
        return is_quantifier_free(phi.left) and is_quantifier_free(phi.right)
    return False


def fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def substitute(phi: Formula, s: Subst) -> Formula:
    """Capture-avoiding substitution of free variables."""
    s = {x: t for x, t in s.items() if not (isinstance(t, Var) and t.name == x)}
    if not s:
        return phi
    return _subst(phi, s)


def _subst(phi: Formula, s: Subst) -> Formula:
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(subst_term(t, s) for t in phi.args))
    if isinstance(phi, Not):
        return Not(_subst(phi.sub, s))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(_subst(phi.left, s), _subst(phi.right, s))
    if isinstance(phi, (Forall, Exists)):
        inner = {x: t for x, t in s.items() if x != phi.var}
        if not inner:
            return phi
        relevant = [x for x in free_vars(phi.body) if x in inner]
        inner = {x: inner[x] for x in inner if x in relevant}
        if not inner:
            return phi
        range_vars = set()
        for t in inner.values():
            range_vars.update(term_vars(t))
        var = phi.var
        body = phi.body
        if var in range_vars:
            taken = range_vars | set(free_vars(body)) | set(inner)
            var = fresh_name(phi.var, taken)
            body = _subst(body, {phi.var: Var(var)})
        return type(phi)(var, _subst(body, inner))
    raise TypeError(f"not a formula: {phi!r}")


def alpha_normalize(phi: Formula) -> Formula:
    """Rename bound variables to _b0, _b1, ... in preorder traversal order.

    Idempotent, and invariant under any renaming of the input's bound
    variables; free variables are left untouched.
    """
    counter = [0]

    def walk(phi: Formula, env: dict[str, str]) -> Formula:
        if isinstance(phi, Atom):
            s = {x: Var(n) for x, n in env.items()}
            return Atom(phi.pred, tuple(subst_term(t, s) for t in phi.args))
        if isinstance(phi, Not):
            return Not(walk(phi.sub, env))
        if isinstance(phi, (And, Or, Implies)):
            return type(phi)(walk(phi.left, env), walk(phi.right, env))
        if isinstance(phi, (Forall, Exists)):
            name = f"_b{counter[0]}"
            counter[0] += 1
            env2 = dict(env)
            env2[phi.var] = name
            return type(phi)(name, walk(phi.body, env2))
        raise TypeError(f"not a formula: {phi!r}")

    return walk(phi, {})


def nnf(phi: Formula) -> Formula:
    """Negation normal form; eliminates implications."""
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Implies):
        return nnf(Or(Not(phi.left), phi.right))
    if isinstance(phi, And):
        return And(nnf(phi.left), nnf(phi.right))
    if isinstance(phi, Or):
        return Or(nnf(phi.left), nnf(phi.right))
    if isinstance(phi, Forall):
        return Forall(phi.var, nnf(phi.body))
    if isinstance(phi, Exists):
        return Exists(phi.var, nnf(phi.body))
    sub = phi.sub
    if isinstance(sub, Atom):
        return phi
    if isinstance(sub, Not):
        return nnf(sub.sub)
    if isinstance(sub, And):
        return Or(nnf(Not(sub.left)), nnf(Not(sub.right)))
    if isinstance(sub, Or):
        return And(nnf(Not(sub.left)), nnf(Not(sub.right)))
    if isinstance(sub, Implies):
        return And(nnf(sub.left), nnf(Not(sub.right)))
    if isinstance(sub, Forall):
        return Exists(sub.var, nnf(Not(sub.body)))
    if isinstance(sub, Exists):
        return Forall(sub.var, nnf(Not(sub.body)))
    raise TypeError(f"not a formula: {sub!r}")
