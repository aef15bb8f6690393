"""Signatures, terms over the absolutely free term algebra, and the term grammar.

Terms are either variables from a declared finite variable set or symbol
applications.  Printing is canonical: ``parse(print_term(t)) == t`` for every
term, and parsing a printed term never needs more parentheses than the
printer emits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SignatureError, TermSyntaxError

__all__ = [
    "OpSymbol",
    "Signature",
    "Var",
    "App",
    "Term",
    "Equation",
    "EquationSystem",
    "parse_term",
    "parse_equation",
    "print_term",
    "term_depth",
    "term_size",
    "free_vars",
    "substitute",
    "enumerate_terms",
    "equation_pairs",
]


@dataclass(frozen=True)
class OpSymbol:
    name: str
    arity: int
    infix_prec: int | None = None  # binary symbols only; left-associative

    def __post_init__(self):
        if self.arity < 0:
            raise SignatureError(f"negative arity for {self.name!r}")
        if self.infix_prec is not None:
            if self.arity != 2:
                raise SignatureError(f"infix symbol {self.name!r} must be binary")
            if self.infix_prec <= 0:
                raise SignatureError(f"infix precedence for {self.name!r} must be positive")


@dataclass(frozen=True)
class Signature:
    symbols: tuple[OpSymbol, ...]

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise SignatureError("duplicate symbol names")
        object.__setattr__(self, "_by_name", {s.name: s for s in self.symbols})

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> OpSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise SignatureError(f"unknown symbol {name!r}") from None

    @property
    def constants(self) -> tuple[OpSymbol, ...]:
        return tuple(s for s in self.symbols if s.arity == 0)

    def arity(self, name: str) -> int:
        return self[name].arity


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()


Term = Var | App


def term_depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def term_size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: frozenset[str] = frozenset()
    for a in t.args:
        out |= free_vars(a)
    return out


def validate_term(t: Term, sig: Signature, vars: tuple[str, ...]) -> None:
    """Check the symbol/arity/variable invariants; raise SignatureError."""
    if isinstance(t, Var):
        if t.name not in vars:
            raise SignatureError(f"variable {t.name!r} not in declared set {vars}")
        return
    sym = sig[t.op]
    if len(t.args) != sym.arity:
        raise SignatureError(f"{t.op!r} expects {sym.arity} arguments, got {len(t.args)}")
    for a in t.args:
        validate_term(a, sig, vars)


def substitute(t: Term, mapping: dict[str, Term]) -> Term:
    """Replace variables by terms; variables absent from `mapping` stay fixed."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return App(t.op, tuple(substitute(a, mapping) for a in t.args))


# ---------------------------------------------------------------------------
# printing

def print_term(t: Term, sig: Signature) -> str:
    return _render(t, sig, 0, False)


def _render(t: Term, sig: Signature, parent_prec: int, right_side: bool) -> str:
    if isinstance(t, Var):
        return t.name
    sym = sig[t.op]
    if sym.arity == 0:
        return sym.name
    if sym.infix_prec is None:
        inner = ",".join(_render(a, sig, 0, False) for a in t.args)
        return f"{sym.name}({inner})"
    prec = sym.infix_prec
    left = _render(t.args[0], sig, prec, False)
    right = _render(t.args[1], sig, prec, True)
    s = f"{left}{sym.name}{right}"
    if prec < parent_prec or (prec == parent_prec and right_side):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# parsing

_NAME_CHARS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    """Yield (kind, text, column) with 1-based columns; kind in name/punct/op."""
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        col = i + 1
        if c in _NAME_CHARS:
            j = i
            while j < n and src[j] in _NAME_CHARS:
                j += 1
            toks.append(("name", src[i:j], col))
            i = j
        elif c in "(),":
            toks.append(("punct", c, col))
            i += 1
        else:
            toks.append(("op", c, col))
            i += 1
    return toks


class _Parser:
    def __init__(self, src: str, sig: Signature, vars: tuple[str, ...]):
        self.src = src
        self.sig = sig
        self.vars = vars
        self.toks = _tokenize(src)
        self.pos = 0

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _next(self):
        tok = self._peek()
        if tok is not None:
            self.pos += 1
        return tok

    def _end_column(self) -> int:
        return len(self.src) + 1

    def _fail(self, message: str, tok=None):
        col = tok[2] if tok is not None else self._end_column()
        raise TermSyntaxError(message, col)

    def _expect(self, text: str):
        tok = self._next()
        if tok is None or tok[1] != text:
            self._fail(f"expected {text!r}", tok)

    def parse(self) -> Term:
        t = self.parse_expr(0)
        tok = self._peek()
        if tok is not None:
            self._fail(f"unexpected {tok[1]!r}", tok)
        return t

    def parse_expr(self, min_prec: int) -> Term:
        left = self.parse_primary()
        while True:
            tok = self._peek()
            if tok is None or tok[0] == "punct":
                return left
            name = tok[1]
            if name not in self.sig:
                if tok[0] == "op":
                    self._fail(f"unknown symbol {name!r}", tok)
                return left
            sym = self.sig[name]
            if sym.infix_prec is None or sym.infix_prec < min_prec:
                if tok[0] == "op" and sym.infix_prec is None:
                    self._fail(f"symbol {name!r} is not infix", tok)
                return left
            self._next()
            right = self.parse_expr(sym.infix_prec + 1)
            left = App(name, (left, right))

    def parse_primary(self) -> Term:
        tok = self._next()
        if tok is None:
            self._fail("unexpected end of input")
        kind, text, col = tok
        if text == "(":
            inner = self.parse_expr(0)
            self._expect(")")
            return inner
        if kind == "punct":
            self._fail(f"unexpected {text!r}", tok)
        if text in self.vars:
            return Var(text)
        if text not in self.sig:
            if kind == "name":
                self._fail(f"unknown variable or symbol {text!r}", tok)
            self._fail(f"unknown symbol {text!r}", tok)
        sym = self.sig[text]
        if sym.arity == 0:
            return App(text, ())
        nxt = self._peek()
        if nxt is None or nxt[1] != "(":
            self._fail(f"symbol {text!r} needs {sym.arity} argument(s)", nxt)
        self._next()
        args = [self.parse_expr(0)]
        while True:
            nxt = self._next()
            if nxt is None:
                self._fail("expected ',' or ')'")
            if nxt[1] == ")":
                break
            if nxt[1] != ",":
                self._fail("expected ',' or ')'", nxt)
            args.append(self.parse_expr(0))
        if len(args) != sym.arity:
            self._fail(f"{text!r} expects {sym.arity} arguments, got {len(args)}", tok)
        return App(text, tuple(args))


def parse_term(src: str, sig: Signature, vars: tuple[str, ...]) -> Term:
    return _Parser(src, sig, vars).parse()


# ---------------------------------------------------------------------------
# equations and systems

@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class EquationSystem:
    """An ordered, duplicate-free finite set of equations over variables X."""

    vars: tuple[str, ...]
    equations: tuple[Equation, ...]

    def __post_init__(self):
        seen, out = set(), []
        for e in self.equations:
            if e not in seen:
                seen.add(e)
                out.append(e)
        object.__setattr__(self, "equations", tuple(out))
        if len(set(self.vars)) != len(self.vars):
            raise SignatureError("duplicate variable names")

    def validate(self, sig: Signature) -> None:
        for e in self.equations:
            validate_term(e.lhs, sig, self.vars)
            validate_term(e.rhs, sig, self.vars)

    def restricted_to(self, equations) -> "EquationSystem":
        return EquationSystem(self.vars, tuple(equations))

    def union(self, other: "EquationSystem") -> "EquationSystem":
        if other.vars != self.vars:
            raise SignatureError("variable sets differ")
        return EquationSystem(self.vars, self.equations + other.equations)


def parse_equation(src: str, sig: Signature, vars: tuple[str, ...]) -> Equation:
    depth = 0
    split = None
    for i, c in enumerate(src):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "=" and depth == 0:
            if split is not None:
                raise TermSyntaxError("multiple '=' in equation", i + 1)
            split = i
    if split is None:
        raise TermSyntaxError("expected '='", len(src) + 1)
    lhs = parse_term(src[:split], sig, vars)
    try:
        rhs = _Parser(src[split + 1 :], sig, vars).parse()
    except TermSyntaxError as err:
        raise TermSyntaxError(str(err).rsplit(" at column", 1)[0], err.column + split + 1) from None
    return Equation(lhs, rhs)


# ---------------------------------------------------------------------------
# bounded term universes

def enumerate_terms(sig: Signature, vars: tuple[str, ...], max_depth: int) -> list[Term]:
    """All terms of depth <= max_depth, ordered by depth then printed form.

    Duplicates under any identities of a coefficient algebra are *not*
    collapsed: this is the raw term algebra.
    """
    layer: list[Term] = sorted(
        [Var(v) for v in vars] + [App(s.name, ()) for s in sig.constants],
        key=lambda t: print_term(t, sig),
    )
    out = list(layer)
    pool = list(layer)
    for _ in range(max_depth):
        fresh: list[Term] = []
        for sym in sig.symbols:
            if sym.arity == 0:
                continue
            stack = [()]
            for _ in range(sym.arity):
                stack = [args + (a,) for args in stack for a in pool]
            for args in stack:
                t = App(sym.name, args)
                fresh.append(t)
        fresh = [t for t in fresh if t not in set(pool)]
        fresh.sort(key=lambda t: print_term(t, sig))
        out.extend(fresh)
        pool = pool + fresh
    return out


def equation_pairs(terms: list[Term], max_pairs: int | None = None):
    """Equations (terms[i], terms[j]) with i < j, ordered by (j, i).

    The order makes every prefix the complete pair set of a prefix of
    `terms`, so windows grow monotonically.
    """
    out: list[Equation] = []
    for j in range(1, len(terms)):
        for i in range(j):
            out.append(Equation(terms[i], terms[j]))
            if max_pairs is not None and len(out) >= max_pairs:
                return out
    return out
