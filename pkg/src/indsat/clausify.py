"""Clause normal form for universal sentences and full sentences via Skolemization."""

from __future__ import annotations

from .clauses import Clause, Literal
from .formulas import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    eq,
    free_vars,
    fresh_name,
    nnf,
    substitute,
)
from .skolem import SkolemTable, sk_exists
from .terms import EQ, App, Symbol, Term, Var


class ClausifyError(ValueError):
    pass


def _strip_universals(phi: Formula, taken: set[str]) -> Formula:
    """Drop universal quantifiers from an NNF formula, renaming bound
    variables apart; rejects existential quantifiers."""
    if isinstance(phi, Atom) or (isinstance(phi, Not) and isinstance(phi.sub, Atom)):
        return phi
    if isinstance(phi, (And, Or)):
        return type(phi)(_strip_universals(phi.left, taken), _strip_universals(phi.right, taken))
    if isinstance(phi, Forall):
        var, body = phi.var, phi.body
        if var in taken:
            var = fresh_name(var, taken)
            body = substitute(body, {phi.var: Var(var)})
        taken.add(var)
        return _strip_universals(body, taken)
    if isinstance(phi, Exists):
        raise ClausifyError("existential quantifier in universal sentence")
    raise ClausifyError(f"unexpected connective after NNF: {phi}")


def _distribute(phi: Formula) -> list[list[Literal]]:
    if isinstance(phi, Atom):
        return [[Literal(True, phi)]]
    if isinstance(phi, Not):
        return [[Literal(False, phi.sub)]]
    if isinstance(phi, And):
        return _distribute(phi.left) + _distribute(phi.right)
    if isinstance(phi, Or):
        left = _distribute(phi.left)
        right = _distribute(phi.right)
        return [l + r for l in left for r in right]
    raise ClausifyError(f"matrix is not quantifier-free: {phi}")


def clausify_universal(phi: Formula) -> list[Clause]:
    """Clause set of a universal sentence: drop quantifiers, distribute to CNF.

    Tautological clauses are removed; duplicate clauses collapse.  Rejects
    input that is not universal-prenexable.
    """
    matrix = _strip_universals(nnf(phi), set(free_vars(phi)))
    out: list[Clause] = []
    seen = set()
    for lits in _distribute(matrix):
        c = Clause.make(lits)
        if c.is_tautology() or c in seen:
            continue
        seen.add(c)
        out.append(c)
    return out


def clausify_sentence(phi: Formula, table: SkolemTable) -> list[Clause]:
    """CNF of the existential Skolem form of a sentence."""
    return clausify_universal(sk_exists(phi, table))


def clausify_all(sentences, table: SkolemTable) -> list[Clause]:
    out: list[Clause] = []
    seen = set()
    for phi in sentences:
        for c in clausify_sentence(phi, table):
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


# --- isolating a function symbol -------------------------------------------


def _innermost_occurrence(t: Term, f: Symbol) -> Term | None:
    """A subterm f(args) of t whose arguments are free of f."""
    if isinstance(t, Var):
        return None
    for a in t.args:
        hit = _innermost_occurrence(a, f)
        if hit is not None:
            return hit
    if t.fn == f:
        return t
    return None


def _contains_fn(t: Term, f: Symbol) -> bool:
    if isinstance(t, Var):
        return False
    return t.fn == f or any(_contains_fn(a, f) for a in t.args)


def _replace_term(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, Var) or not t.args:
        return t
    return App(t.fn, tuple(_replace_term(a, old, new) for a in t.args))


def _is_isolated(atom: Atom, f: Symbol) -> bool:
    if not any(_contains_fn(t, f) for t in atom.args):
        return True
    if atom.pred != EQ:
        return False
    l, r = atom.args
    for var_side, fn_side in ((l, r), (r, l)):
        if (
            isinstance(var_side, Var)
            and isinstance(fn_side, App)
            and fn_side.fn == f
            and not any(_contains_fn(a, f) for a in fn_side.args)
        ):
            return True
    return False


def isolate_function_symbol(phi: Formula, f: Symbol) -> Formula:
    """Equivalent formula in which f only occurs in atoms x = f(args) with
    f-free args.

    Rewrites innermost occurrences first; each step removes one nesting
    level, so the rewriting terminates.
    """

    def walk(phi: Formula, taken: set[str]) -> Formula:
        if isinstance(phi, Atom):
            if _is_isolated(phi, f):
                return phi
            occ = None
            for t in phi.args:
                occ = _innermost_occurrence(t, f)
                if occ is not None:
                    break
            x = fresh_name("x", taken)
            inner = Atom(phi.pred, tuple(_replace_term(t, occ, Var(x)) for t in phi.args))
            return Forall(x, Implies(eq(Var(x), occ), walk(inner, taken | {x})))
        if isinstance(phi, Not):
            return Not(walk(phi.sub, taken))
        if isinstance(phi, (And, Or, Implies)):
            return type(phi)(walk(phi.left, taken), walk(phi.right, taken))
        if isinstance(phi, (Forall, Exists)):
            return type(phi)(phi.var, walk(phi.body, taken | {phi.var}))
        raise TypeError(f"not a formula: {phi!r}")

    return walk(phi, _all_var_names(phi))


def _all_var_names(phi: Formula) -> set[str]:
    names: set[str] = set()

    def walk_t(t: Term):
        if isinstance(t, Var):
            names.add(t.name)
        else:
            for a in t.args:
                walk_t(a)

    def walk(phi: Formula):
        if isinstance(phi, Atom):
            for t in phi.args:
                walk_t(t)
        elif isinstance(phi, Not):
            walk(phi.sub)
        elif isinstance(phi, (And, Or, Implies)):
            walk(phi.left)
            walk(phi.right)
        else:
            names.add(phi.var)
            walk(phi.body)

    walk(phi)
    return names
