"""Abstract syntax for positive bounded formulas over many-sorted signatures.

The distinguished real sort is named "R"; it is never enumerated and always
carries add, sub, mul, abs, min, max, the rational literals, and the
polymorphic metric symbol d (on reals, d(x, y) = |x - y|).  Every non-real
sort has a metric and an anchor constant.

Formula trees use exact rational bounds and radii throughout.  Connectives
are binary; the conj/disj helpers fold finite families right-associatively
so that printed text round-trips to an identical tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Tuple, Union

from ..errors import NonpositiveRadius, SortMismatch, UnknownSymbol
from ..rationals import format_rational, parse_rational

REAL = "R"

#: built-in function symbols on the real sort: name -> arity
REAL_BUILTINS = {
    "add": 2, "sub": 2, "mul": 2, "abs": 1, "min": 2, "max": 2,
}

METRIC = "d"


@dataclass(frozen=True)
class FunctionDecl:
    name: str
    domain: Tuple[str, ...]
    range: str

    @property
    def is_constant(self) -> bool:
        return len(self.domain) == 0


class Signature:
    """Sorts plus declared function/constant symbols.

    `sorts` lists the non-real sorts; REAL is implicit.  `functions` maps a
    name to (domain tuple, range sort); constants are the nullary case and
    may be passed separately as name -> sort.  `anchors` names the constant
    designating each sort's anchor point (declared automatically when not
    among the constants); structures check that those constants really are
    interpreted by the anchors.
    """

    def __init__(self, sorts=(), functions: Optional[Mapping] = None,
                 constants: Optional[Mapping] = None,
                 anchors: Optional[Mapping] = None):
        self.sorts: Tuple[str, ...] = tuple(sorts)
        if REAL in self.sorts:
            raise SortMismatch(f"{REAL!r} is reserved for the real sort")
        if len(set(self.sorts)) != len(self.sorts):
            raise SortMismatch("duplicate sort names")
        decls = {}
        for name, (domain, rng) in (functions or {}).items():
            decls[name] = FunctionDecl(name, tuple(domain), rng)
        for name, sort in (constants or {}).items():
            if name in decls:
                raise SortMismatch(f"symbol {name!r} declared twice")
            decls[name] = FunctionDecl(name, (), sort)
        self.anchors: dict = {}
        for sort, name in (anchors or {}).items():
            existing = decls.get(name)
            if existing is not None and (existing.domain or existing.range != sort):
                raise SortMismatch(
                    f"anchor constant {name!r} clashes with another declaration"
                )
            decls.setdefault(name, FunctionDecl(name, (), sort))
            self.anchors[sort] = name
        for decl in decls.values():
            for s in decl.domain + (decl.range,):
                if s != REAL and s not in self.sorts:
                    raise SortMismatch(
                        f"function {decl.name!r} uses undeclared sort {s!r}"
                    )
            if decl.name in REAL_BUILTINS or decl.name == METRIC:
                raise SortMismatch(f"{decl.name!r} shadows a built-in")
        self.functions: dict = decls

    def all_sorts(self) -> Tuple[str, ...]:
        return self.sorts + (REAL,)

    def declared(self, name: str) -> Optional[FunctionDecl]:
        return self.functions.get(name)

    def constant_sort(self, name: str) -> Optional[str]:
        decl = self.functions.get(name)
        if decl is not None and decl.is_constant:
            return decl.range
        return None

    def default_sort(self) -> Optional[str]:
        """The unique non-real sort, if there is exactly one."""
        return self.sorts[0] if len(self.sorts) == 1 else None


# -- terms ---------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str
    sort: str


@dataclass(frozen=True)
class Const:
    name: str
    sort: str


@dataclass(frozen=True)
class Lit:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", parse_rational(self.value))

    @property
    def sort(self) -> str:
        return REAL


@dataclass(frozen=True)
class App:
    func: str
    args: tuple
    sort: str


Term = Union[Var, Const, Lit, App]


def apply(signature: Signature, func: str, *args: Term) -> App:
    """Sort-checked application of a declared or built-in function symbol."""
    if func == METRIC:
        if len(args) != 2:
            raise SortMismatch("d takes two arguments")
        a, b = args
        if a.sort != b.sort:
            raise SortMismatch(f"d applied across sorts {a.sort!r}, {b.sort!r}")
        return App(METRIC, args, REAL)
    if func in REAL_BUILTINS:
        if len(args) != REAL_BUILTINS[func]:
            raise SortMismatch(f"{func} takes {REAL_BUILTINS[func]} arguments")
        for t in args:
            if t.sort != REAL:
                raise SortMismatch(f"{func} needs real arguments, got {t.sort!r}")
        return App(func, args, REAL)
    decl = signature.declared(func)
    if decl is None:
        raise UnknownSymbol(f"function {func!r} not in the signature")
    if len(args) != len(decl.domain):
        raise SortMismatch(
            f"{func} takes {len(decl.domain)} arguments, got {len(args)}"
        )
    for t, expected in zip(args, decl.domain):
        if t.sort != expected:
            raise SortMismatch(
                f"{func} expects {expected!r}, got {t.sort!r}"
            )
    return App(func, args, decl.range)


# -- formulas --------------------------------------------------------------------


@dataclass(frozen=True)
class AtomLe:
    term: Term
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", parse_rational(self.bound))
        if self.term.sort != REAL:
            raise SortMismatch("atoms need a real-valued term")


@dataclass(frozen=True)
class AtomGe:
    term: Term
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", parse_rational(self.bound))
        if self.term.sort != REAL:
            raise SortMismatch("atoms need a real-valued term")


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


def _check_radius(r: Fraction) -> Fraction:
    r = parse_rational(r)
    if r <= 0:
        raise NonpositiveRadius(f"radius must be > 0, got {r}")
    return r


@dataclass(frozen=True)
class Exists:
    """exists_r x: body, with x ranging over the closed ball B[r]."""

    radius: Fraction
    var: Var
    body: "Formula"

    def __post_init__(self):
        object.__setattr__(self, "radius", _check_radius(self.radius))


@dataclass(frozen=True)
class Forall:
    """forall_r x: body, with x ranging over the open ball B(r)."""

    radius: Fraction
    var: Var
    body: "Formula"

    def __post_init__(self):
        object.__setattr__(self, "radius", _check_radius(self.radius))


Formula = Union[AtomLe, AtomGe, And, Or, Exists, Forall]


def conj(formulas) -> Formula:
    """Right-associated conjunction of a nonempty list."""
    formulas = list(formulas)
    if not formulas:
        raise ValueError("empty conjunction")
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


def disj(formulas) -> Formula:
    """Right-associated disjunction of a nonempty list."""
    formulas = list(formulas)
    if not formulas:
        raise ValueError("empty disjunction")
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = Or(f, out)
    return out


def free_vars(phi: Formula) -> frozenset:
    """Free variables as (name, sort) pairs."""

    def term_vars(t: Term) -> set:
        if isinstance(t, Var):
            return {(t.name, t.sort)}
        if isinstance(t, App):
            out: set = set()
            for a in t.args:
                out |= term_vars(a)
            return out
        return set()

    if isinstance(phi, (AtomLe, AtomGe)):
        return frozenset(term_vars(phi.term))
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return frozenset(
            v for v in free_vars(phi.body)
            if v != (phi.var.name, phi.var.sort)
        )
    raise TypeError(f"not a formula: {phi!r}")


# -- printing ----------------------------------------------------------------------


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Lit):
        return format_rational(t.value)
    if isinstance(t, App):
        return f"{t.func}({', '.join(format_term(a) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def format_formula(phi: Formula) -> str:
    """Concrete syntax that parse_formula maps back to an equal tree."""
    if isinstance(phi, AtomLe):
        return f"{format_term(phi.term)} <= {format_rational(phi.bound)}"
    if isinstance(phi, AtomGe):
        return f"{format_term(phi.term)} >= {format_rational(phi.bound)}"
    if isinstance(phi, And):
        return f"({format_formula(phi.left)} & {format_formula(phi.right)})"
    if isinstance(phi, Or):
        return f"({format_formula(phi.left)} | {format_formula(phi.right)})"
    if isinstance(phi, Exists):
        return (f"E {format_rational(phi.radius)} {phi.var.name}. "
                f"{format_formula(phi.body)}")
    if isinstance(phi, Forall):
        return (f"A {format_rational(phi.radius)} {phi.var.name}. "
                f"{format_formula(phi.body)}")
    raise TypeError(f"not a formula: {phi!r}")
