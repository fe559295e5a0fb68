"""Literals and clauses with a canonical syntactic form.

A clause is a duplicate-free disjunction of literals whose variables are
implicitly universally quantified.  Clauses are stored with literals in a
fixed structural order and variables renamed to v0, v1, ... so that equality
of clauses is equality up to variable renaming.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .formulas import Atom
from .terms import (
    EQ,
    App,
    Subst,
    Symbol,
    Term,
    Var,
    blind_key,
    is_ground,
    match_term,
    subst_term,
    term_key,
    term_size,
    term_symbols,
    term_vars,
)


@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Atom

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    @property
    def is_equality(self) -> bool:
        return self.atom.pred == EQ

    def key(self) -> tuple:
        return _literal_key(self)

    def blind(self) -> tuple:
        return _literal_blind(self)

    def vars(self) -> list[str]:
        out: list[str] = []
        for t in self.atom.args:
            term_vars(t, out)
        return out

    def __str__(self) -> str:
        if self.is_equality and not self.positive:
            return f"{self.atom.args[0]} ≠ {self.atom.args[1]}"
        return str(self.atom) if self.positive else f"¬{self.atom}"


@lru_cache(maxsize=100_000)
def _literal_key(lit: Literal) -> tuple:
    return (lit.atom.pred.name, lit.atom.pred.arity, not lit.positive,
            tuple(term_key(t) for t in lit.atom.args))


@lru_cache(maxsize=100_000)
def _literal_blind(lit: Literal) -> tuple:
    return (lit.atom.pred.name, lit.atom.pred.arity, not lit.positive,
            tuple(blind_key(t) for t in lit.atom.args))


def subst_literal(lit: Literal, s: Subst) -> Literal:
    return Literal(lit.positive, Atom(lit.atom.pred, tuple(subst_term(t, s) for t in lit.atom.args)))


def literal_size(lit: Literal) -> int:
    return sum(term_size(t) for t in lit.atom.args) + 1


class Clause:
    """Canonical clause.  Build with ``Clause.make``; instances are immutable."""

    __slots__ = ("literals", "_hash")

    def __init__(self, literals: tuple[Literal, ...], _token=None):
        if _token is not _MAKE:
            raise TypeError("use Clause.make()")
        self.literals = literals
        self._hash = hash(literals)

    @staticmethod
    def make(literals) -> "Clause":
        lits = list(dict.fromkeys(literals))
        lits.sort(key=lambda l: (l.blind(), l.key()))
        renaming: Subst = {}
        for lit in lits:
            for v in lit.vars():
                if v not in renaming:
                    renaming[v] = Var(f"v{len(renaming)}")
        lits = [subst_literal(l, renaming) for l in lits]
        lits = list(dict.fromkeys(lits))
        lits.sort(key=Literal.key)
        return Clause(tuple(lits), _token=_MAKE)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Clause) and self.literals == other.literals

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def is_tautology(self) -> bool:
        seen = set(self.literals)
        for lit in self.literals:
            if lit.negated() in seen:
                return True
            if lit.positive and lit.is_equality and lit.atom.args[0] == lit.atom.args[1]:
                return True
        return False

    def is_ground(self) -> bool:
        return all(is_ground(t) for lit in self.literals for t in lit.atom.args)

    def vars(self) -> list[str]:
        out: list[str] = []
        for lit in self.literals:
            for v in lit.vars():
                if v not in out:
                    out.append(v)
        return out

    def symbols(self) -> set[Symbol]:
        acc: set[Symbol] = set()
        for lit in self.literals:
            acc.add(lit.atom.pred)
            for t in lit.atom.args:
                term_symbols(t, acc)
        return acc

    def weight(self) -> int:
        return sum(literal_size(l) for l in self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "□"
        return "{" + ", ".join(str(l) for l in self.literals) + "}"

    def __repr__(self) -> str:
        return f"Clause({self})"


_MAKE = object()


EMPTY_CLAUSE = Clause.make([])


def subst_clause(c: Clause, s: Subst) -> Clause:
    return Clause.make([subst_literal(l, s) for l in c])


def rename_apart(c: Clause) -> tuple[Literal, ...]:
    """Literals of ``c`` with variables renamed v_i -> u_i, preserving order.

    Canonical clauses only use v-variables, so the result shares no variables
    with any canonical clause.
    """
    s = {v: Var("u" + v[1:]) for v in c.vars()}
    return tuple(subst_literal(l, s) for l in c.literals)


def _match_literal(pat: Literal, target: Literal, s: Subst) -> Optional[Subst]:
    if pat.positive != target.positive or pat.atom.pred != target.atom.pred:
        return None
    for p, t in zip(pat.atom.args, target.atom.args):
        s = match_term(p, t, s)
        if s is None:
            return None
    return s


def subsumes(c: Clause, d: Clause) -> bool:
    """True iff some substitution maps every literal of c onto a literal of d.

    The |c| <= |d| guard keeps a clause from subsuming its own factors.
    """
    if len(c) > len(d):
        return False
    if len(c) == 0:
        return True

    d_lits = d.literals

    def extend(i: int, s: Subst) -> bool:
        if i == len(c.literals):
            return True
        for t in d_lits:
            s2 = _match_literal(c.literals[i], t, s)
            if s2 is not None and extend(i + 1, s2):
                return True
        return False

    return extend(0, {})
