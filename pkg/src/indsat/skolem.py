"""Inner Skolemization with canonical names and stages.

Every Skolemized quantifier is named by its quantified subformula: the table
maps the alpha-normalized formula (plus its free-variable order) to one
function symbol, so requesting the same formula twice always yields the same
symbol.  A symbol's stage is 1 + the maximal stage of the symbols occurring in
its naming formula; base symbols have stage 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    alpha_normalize,
    formula_symbols,
    free_vars,
    substitute,
)
from .terms import App, Symbol, Term, Var

EXISTS = "exists"
FORALL = "forall"


def _dual(q: str) -> str:
    return FORALL if q == EXISTS else EXISTS


@dataclass(frozen=True)
class SkolemKey:
    """Identity of a Skolem symbol: the quantified formula it witnesses.

    ``body`` is the alpha-normalized quantified formula; ``free`` lists its
    free variables in first-occurrence order (these become the symbol's
    arguments, so the arity is ``len(free)``).
    """

    quantifier: str
    body: Formula
    free: tuple[str, ...]

    @staticmethod
    def of(quantified: Formula) -> "SkolemKey":
        if isinstance(quantified, Forall):
            q = FORALL
        elif isinstance(quantified, Exists):
            q = EXISTS
        else:
            raise ValueError("Skolem keys name quantified formulas")
        norm = alpha_normalize(quantified)
        return SkolemKey(q, norm, tuple(free_vars(norm)))


class SkolemTable:
    """Append-only bijection between Skolem keys and symbols."""

    def __init__(self):
        self._by_key: dict[SkolemKey, Symbol] = {}
        self._by_symbol: dict[Symbol, SkolemKey] = {}
        self._counter = 0

    def __len__(self) -> int:
        return len(self._by_key)

    def symbols(self) -> list[Symbol]:
        return list(self._by_symbol)

    def key_of(self, sym: Symbol) -> SkolemKey:
        return self._by_symbol[sym]

    def symbol_for(self, key: SkolemKey) -> Symbol:
        """The unique symbol for this key, created on first request."""
        sym = self._by_key.get(key)
        if sym is not None:
            return sym
        stage = 1 + max((s.stage for s in formula_symbols(key.body)), default=0)
        self._counter += 1
        sym = Symbol(f"sk{stage}_{self._counter}", len(key.free), "fun", stage)
        self._by_key[key] = sym
        self._by_symbol[sym] = key
        return sym

    def preload(self, key: SkolemKey, sym: Symbol) -> None:
        """Install an existing key/symbol pair (trace replay)."""
        if key in self._by_key and self._by_key[key] != sym:
            raise ValueError(f"conflicting Skolem symbol for {key.body}")
        self._by_key[key] = sym
        self._by_symbol[sym] = key
        self._counter = max(self._counter, len(self._by_key))


def stage_of(sym: Symbol, table: SkolemTable) -> int:
    if sym.stage == 0:
        return 0
    if sym not in table._by_symbol:
        raise KeyError(f"unknown Skolem symbol {sym.name}")
    return sym.stage


def skolem_term(quantified: Formula, table: SkolemTable) -> Term:
    """The Skolem term s(y...) witnessing ``quantified``, arguments being
    exactly its free variables in first-occurrence order."""
    key = SkolemKey.of(quantified)
    sym = table.symbol_for(key)
    args = tuple(Var(v) for v in free_vars(quantified))
    return App(sym, args)


def sk_transform(phi: Formula, q: str, table: SkolemTable) -> Formula:
    """Skolem form of ``phi``: for q = 'exists' removes positive existential
    and negative universal quantifiers; dually for q = 'forall'.

    Implications flip the polarity of their antecedent.  The free variables
    of the transformed formula are those of the input.
    """
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return Not(sk_transform(phi.sub, _dual(q), table))
    if isinstance(phi, (And, Or)):
        return type(phi)(sk_transform(phi.left, q, table), sk_transform(phi.right, q, table))
    if isinstance(phi, Implies):
        return Implies(sk_transform(phi.left, _dual(q), table), sk_transform(phi.right, q, table))
    if isinstance(phi, (Forall, Exists)):
        here = FORALL if isinstance(phi, Forall) else EXISTS
        if here == q:
            witness = skolem_term(phi, table)
            return sk_transform(substitute(phi.body, {phi.var: witness}), q, table)
        return type(phi)(phi.var, sk_transform(phi.body, q, table))
    raise TypeError(f"not a formula: {phi!r}")


def sk_exists(phi: Formula, table: SkolemTable) -> Formula:
    return sk_transform(phi, EXISTS, table)


def sk_forall(phi: Formula, table: SkolemTable) -> Formula:
    return sk_transform(phi, FORALL, table)


def skolem_axiom(q: str, phi: Formula, x: str, table: SkolemTable) -> Formula:
    """Witness axiom for Qx phi.

    For q = 'exists':  (∃x phi) → phi[x := s(y...)]
    For q = 'forall':  phi[x := s(y...)] → (∀x phi)
    """
    if q == EXISTS:
        quantified: Formula = Exists(x, phi)
        witness = skolem_term(quantified, table)
        return Implies(quantified, substitute(phi, {x: witness}))
    if q == FORALL:
        quantified = Forall(x, phi)
        witness = skolem_term(quantified, table)
        return Implies(substitute(phi, {x: witness}), quantified)
    raise ValueError(f"quantifier must be {EXISTS!r} or {FORALL!r}")
