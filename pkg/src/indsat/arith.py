"""Linear arithmetic over 0, s, p, + : built-in theories, goals, and clause sets.

Theory "T" axiomatizes zero/successor/predecessor/addition; "Tprime" extends
it with predecessor decomposition, commutativity, associativity, and
cancellation, which together are as strong as T with quantifier-free
induction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clauses import Clause
from .clausify import clausify_all
from .formulas import Atom, Forall, Formula, Implies, Not, eq
from .skolem import SkolemTable
from .terms import App, Symbol, Term, Var, iterate_fn

ZERO_SYM = Symbol("0", 0, "fun")
S = Symbol("s", 1, "fun")
P = Symbol("p", 1, "fun")
PLUS = Symbol("+", 2, "fun")

ARITH_FUNS = [ZERO_SYM, S, P, PLUS]

ZERO = App(ZERO_SYM)


def s(t: Term) -> Term:
    return App(S, (t,))


def p(t: Term) -> Term:
    return App(P, (t,))


def plus(l: Term, r: Term) -> Term:
    return App(PLUS, (l, r))


def numeral(m: int) -> Term:
    """s^m(0)."""
    if m < 0:
        raise ValueError("numerals are non-negative")
    return iterate_fn(S, m, ZERO)


def mul_term(m: int, t: Term) -> Term:
    """m-fold sum t + (t + ... + (t + t)...), right-associated; 0·t is 0."""
    if m < 0:
        raise ValueError("multiplier must be non-negative")
    if m == 0:
        return ZERO
    out = t
    for _ in range(m - 1):
        out = plus(t, out)
    return out


x, y, z = Var("x"), Var("y"), Var("z")

AXIOMS_T: list[tuple[str, Formula]] = [
    ("A1", Forall("x", Not(eq(ZERO, s(x))))),
    ("A2", eq(p(ZERO), ZERO)),
    ("A3", Forall("x", eq(p(s(x)), x))),
    ("A4", Forall("x", eq(plus(x, ZERO), x))),
    ("A5", Forall("x", Forall("y", eq(plus(x, s(y)), s(plus(x, y)))))),
]

AXIOMS_B: list[tuple[str, Formula]] = [
    ("B1", Forall("x", Implies(Not(eq(x, ZERO)), eq(x, s(p(x)))))),
    ("B2", Forall("x", Forall("y", eq(plus(x, y), plus(y, x))))),
    ("B3", Forall("x", Forall("y", Forall("z", eq(plus(plus(x, y), z), plus(x, plus(y, z))))))),
    ("B4", Forall("x", Forall("y", Forall("z", Implies(eq(plus(x, y), plus(x, z)), eq(y, z)))))),
]


@dataclass(frozen=True)
class TheoryPreset:
    name: str
    axioms: tuple[tuple[str, Formula], ...]

    def formulas(self) -> list[Formula]:
        return [phi for _, phi in self.axioms]


@dataclass(frozen=True)
class GoalPreset:
    name: str
    sentence: Formula
    aliases: tuple[str, ...]  # report names for the goal's Skolem constants
    m: int | None = None
    n: int | None = None


def build_preset(name: str) -> TheoryPreset:
    if name == "T":
        return TheoryPreset("T", tuple(AXIOMS_T))
    if name == "Tprime":
        return TheoryPreset("Tprime", tuple(AXIOMS_T + AXIOMS_B))
    raise ValueError(f"unknown theory preset: {name}")


def build_goal(name: str, m: int | None = None, n: int | None = None) -> GoalPreset:
    if name == "comm":
        sentence = Forall("x", Forall("y", eq(plus(x, y), plus(y, x))))
        return GoalPreset("comm", sentence, ("n", "m"))
    if name == "theta":
        # absorption forces zero: x + x = x -> x = 0
        sentence = Forall("x", Implies(eq(plus(x, x), x), eq(x, ZERO)))
        return GoalPreset("theta", sentence, ("c",))
    if name == "C":
        if not m or m <= 0:
            raise ValueError("goal C needs m > 0")
        body = Implies(eq(mul_term(m, x), mul_term(m, y)), eq(x, y))
        return GoalPreset("C", Forall("x", Forall("y", body)), ("a", "b"), m=m)
    if name == "D":
        if not m or m <= 0 or n is None or not (0 < n < m):
            raise ValueError("goal D needs 0 < n < m")
        body = Not(eq(iterate_fn(S, n, mul_term(m, x)), mul_term(m, y)))
        return GoalPreset("D", Forall("x", Forall("y", body)), ("a", "b"), m=m, n=n)
    raise ValueError(f"unknown goal preset: {name}")


def build_clause_set(kind: str, m: int | None = None, n: int | None = None,
                     table: SkolemTable | None = None) -> list[Clause]:
    """Initial clause set: theory plus negated goal, Skolemized and clausified.

    X (cancellation) and Y (non-divisibility) run over Tprime; the theta and
    comm goals run over the base theory T.
    """
    if table is None:
        table = SkolemTable()
    if kind == "X":
        theory, goal = build_preset("Tprime"), build_goal("C", m)
    elif kind == "Y":
        theory, goal = build_preset("Tprime"), build_goal("D", m, n)
    elif kind == "theta":
        theory, goal = build_preset("T"), build_goal("theta")
    elif kind == "comm":
        theory, goal = build_preset("T"), build_goal("comm")
    else:
        raise ValueError(f"unknown clause set kind: {kind}")
    return clausify_all(theory.formulas() + [Not(goal.sentence)], table)
