"""Vocabularies, the expression AST, a recursive-descent parser and a canonical renderer.

Surface syntax::

    id                      identity
    M(x1,...,xk; y1,...,ym) atomic module (inputs before ';', outputs after)
    a + b   a \\ b          union, difference        (loosest, left-assoc)
    a & b                   intersection
    a ; b                   composition              (tightest binary)
    conv(a)                 converse
    cyl_l{x,y}(a)           left / right cylindrification (also cyl_r)
    sel_l{x=y}(a)           left / right / left-to-right selection (sel_r, sel_lr)
    sel_lr{(x1,x2)=(y1,y2)}(a)   tuple sugar for nested single selections
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union as TUnion

from .errors import ArityError, LIFSyntaxError, UniverseError, UnknownModuleError, VocabularyError

FRESH_MARK = "#"
KEYWORDS = frozenset({"id", "conv", "cyl_l", "cyl_r", "sel_l", "sel_r", "sel_lr"})


# ---------------------------------------------------------------------------
# vocabulary and variable universe


@dataclass(frozen=True)
class Vocabulary:
    entries: Mapping[str, tuple[int, int]]

    def __post_init__(self):
        if not self.entries:
            raise VocabularyError("vocabulary must contain at least one module name")
        for name, (ar, iar) in self.entries.items():
            if not _IDENT.fullmatch(name) or name in KEYWORDS:
                raise VocabularyError(f"invalid module name {name!r}")
            if ar < 0 or iar < 0:
                raise VocabularyError(f"{name}: arities must be non-negative")
            if iar > ar:
                raise ArityError(f"{name}: input arity {iar} exceeds arity {ar}")
        object.__setattr__(self, "entries", dict(self.entries))

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.entries.items())))

    def arity(self, name: str) -> int:
        return self._lookup(name)[0]

    def input_arity(self, name: str) -> int:
        return self._lookup(name)[1]

    def _lookup(self, name: str) -> tuple[int, int]:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownModuleError(f"unknown module name {name!r}") from None

    def render(self) -> str:
        return "\n".join(f"{n}/{ar} in {iar}" for n, (ar, iar) in self.entries.items()) + "\n"


@dataclass(frozen=True)
class Universe:
    """Ordered, duplicate-free, nonempty set of variable names."""

    vars: tuple[str, ...]

    def __post_init__(self):
        vs = tuple(self.vars)
        if not vs:
            raise UniverseError("variable universe must be nonempty")
        if len(set(vs)) != len(vs):
            raise UniverseError(f"duplicate variables in universe {vs}")
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vs)})

    def __iter__(self) -> Iterator[str]:
        return iter(self.vars)

    def __len__(self) -> int:
        return len(self.vars)

    def __contains__(self, v: str) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UniverseError(f"variable {v!r} is not in the universe {list(self.vars)}") from None

    def ordered(self, vs: Iterable[str]) -> tuple[str, ...]:
        """Return ``vs`` sorted by universe position."""
        return tuple(sorted(set(vs), key=self.index))

    def extend(self, extra: Iterable[str]) -> "Universe":
        return Universe(self.vars + tuple(v for v in extra if v not in self))


def as_universe(u: "Universe | Sequence[str]") -> Universe:
    return u if isinstance(u, Universe) else Universe(tuple(u))


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Id:
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Atom:
    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Union:
    left: "Expression"
    right: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Intersect:
    left: "Expression"
    right: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Difference:
    left: "Expression"
    right: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Compose:
    left: "Expression"
    right: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Converse:
    child: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CylL:
    vars: frozenset[str]
    child: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CylR:
    vars: frozenset[str]
    child: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SelL:
    x: str
    y: str
    child: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SelR:
    x: str
    y: str
    child: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SelLR:
    x: str
    y: str
    child: "Expression"
    pos: int | None = field(default=None, compare=False, repr=False)


Expression = TUnion[Id, Atom, Union, Intersect, Difference, Compose, Converse, CylL, CylR, SelL, SelR, SelLR]
BINARY = (Union, Intersect, Difference, Compose)
CYL = (CylL, CylR)
SEL = (SelL, SelR, SelLR)


def cyl_l(vs: Iterable[str], child: Expression) -> CylL:
    return CylL(frozenset(vs), child)


def cyl_r(vs: Iterable[str], child: Expression) -> CylR:
    return CylR(frozenset(vs), child)


def children(e: Expression) -> tuple[Expression, ...]:
    if isinstance(e, BINARY):
        return (e.left, e.right)
    if isinstance(e, (Id, Atom)):
        return ()
    return (e.child,)


def subexpressions(e: Expression) -> Iterator[Expression]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def variables(e: Expression) -> frozenset[str]:
    """Every variable occurring anywhere in ``e``."""
    out: set[str] = set()
    for node in subexpressions(e):
        match node:
            case Atom(inputs=xs, outputs=ys):
                out.update(xs)
                out.update(ys)
            case CylL(vars=z) | CylR(vars=z):
                out.update(z)
            case SelL(x=x, y=y) | SelR(x=x, y=y) | SelLR(x=x, y=y):
                out.update((x, y))
    return frozenset(out)


def module_names(e: Expression) -> frozenset[str]:
    return frozenset(n.name for n in subexpressions(e) if isinstance(n, Atom))


def size(e: Expression) -> int:
    return sum(1 for _ in subexpressions(e))


def depth(e: Expression) -> int:
    cs = children(e)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


def has_compose(e: Expression) -> bool:
    return any(isinstance(n, Compose) for n in subexpressions(e))


def check_expression(e: Expression, vocab: Vocabulary, universe: Universe | None = None) -> None:
    """Raise if ``e`` does not fit ``vocab`` (and ``universe`` when given)."""
    for node in subexpressions(e):
        if isinstance(node, Atom):
            ar, iar = vocab.arity(node.name), vocab.input_arity(node.name)
            if len(node.inputs) != iar or len(node.inputs) + len(node.outputs) != ar:
                raise ArityError(
                    f"{node.name} expects {iar} input(s) and {ar - iar} output(s), "
                    f"got {len(node.inputs)} and {len(node.outputs)}"
                )
    if universe is not None:
        for v in sorted(variables(e)):
            universe.index(v)


# ---------------------------------------------------------------------------
# vocabulary parser

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VOCAB_LINE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)\s+in\s+(\d+)\s*")


def parse_vocabulary(text: str) -> Vocabulary:
    entries: dict[str, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _VOCAB_LINE.fullmatch(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise LIFSyntaxError("expected 'NAME/ARITY in IAR'", lineno, col)
        name, ar, iar = m.group(1), int(m.group(2)), int(m.group(3))
        if name in entries:
            raise VocabularyError(f"duplicate module name {name!r} on line {lineno}")
        if iar > ar:
            raise ArityError(f"{name}: input arity {iar} exceeds arity {ar} (line {lineno})")
        entries[name] = (ar, iar)
    return Vocabulary(entries)


# ---------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\#[0-9]+)?)
  | (?P<punct>[()\{\};,=+&\\])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str, allow_fresh: bool) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            line, col = _linecol(text, i)
            raise LIFSyntaxError(f"unexpected character {text[i]!r}", line, col)
        if m.lastgroup == "name":
            if FRESH_MARK in m.group() and not allow_fresh:
                line, col = _linecol(text, i)
                raise LIFSyntaxError(f"'{FRESH_MARK}' is reserved for generated variables", line, col)
            toks.append(_Tok("name", m.group(), i))
        elif m.lastgroup == "punct":
            toks.append(_Tok(m.group(), m.group(), i))
        i = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary, universe: Universe | None, allow_fresh: bool):
        self.text = text
        self.vocab = vocab
        self.universe = universe
        self.toks = _tokenize(text, allow_fresh)
        self.i = 0

    # helpers
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None, exc=LIFSyntaxError):
        tok = tok or self.peek()
        line, col = _linecol(self.text, tok.pos)
        if exc is LIFSyntaxError:
            raise LIFSyntaxError(msg, line, col)
        raise exc(f"{msg} at line {line}, column {col}")

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            found = t.text or "end of input"
            self.error(f"expected {kind!r}, found {found!r}")
        return self.advance()

    def variable(self) -> str:
        t = self.peek()
        if t.kind != "name" or t.text in KEYWORDS:
            self.error(f"expected a variable, found {t.text or 'end of input'!r}")
        self.advance()
        if self.universe is not None and t.text not in self.universe:
            self.error(f"variable {t.text!r} is outside the universe", t, UniverseError)
        return t.text

    def var_list(self, closers: tuple[str, ...]) -> list[str]:
        out: list[str] = []
        if self.peek().kind in closers:
            return out
        out.append(self.variable())
        while self.peek().kind == ",":
            self.advance()
            out.append(self.variable())
        return out

    # grammar
    def parse(self) -> Expression:
        e = self.union_level()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().text!r}")
        return e

    def union_level(self) -> Expression:
        left = self.inter_level()
        while self.peek().kind in ("+", "\\"):
            op = self.advance()
            right = self.inter_level()
            left = (Union if op.kind == "+" else Difference)(left, right, pos=op.pos)
        return left

    def inter_level(self) -> Expression:
        left = self.comp_level()
        while self.peek().kind == "&":
            op = self.advance()
            left = Intersect(left, self.comp_level(), pos=op.pos)
        return left

    def comp_level(self) -> Expression:
        left = self.unary()
        while self.peek().kind == ";":
            op = self.advance()
            left = Compose(left, self.unary(), pos=op.pos)
        return left

    def unary(self) -> Expression:
        t = self.peek()
        if t.kind == "(":
            self.advance()
            e = self.union_level()
            self.expect(")")
            return e
        if t.kind != "name":
            self.error(f"expected an expression, found {t.text or 'end of input'!r}")
        self.advance()
        match t.text:
            case "id":
                return Id(pos=t.pos)
            case "conv":
                self.expect("(")
                e = self.union_level()
                self.expect(")")
                return Converse(e, pos=t.pos)
            case "cyl_l" | "cyl_r":
                self.expect("{")
                vs = self.var_list(("}",))
                self.expect("}")
                child = self.unary()
                cls = CylL if t.text == "cyl_l" else CylR
                return cls(frozenset(vs), child, pos=t.pos)
            case "sel_l" | "sel_r" | "sel_lr":
                self.expect("{")
                pairs = self.selection_pairs()
                self.expect("}")
                child = self.unary()
                cls = {"sel_l": SelL, "sel_r": SelR, "sel_lr": SelLR}[t.text]
                for x, y in reversed(pairs):
                    child = cls(x, y, child, pos=t.pos)
                return child
            case _:
                return self.atom(t)

    def selection_pairs(self) -> list[tuple[str, str]]:
        if self.peek().kind == "(":
            self.advance()
            xs = self.var_list((")",))
            self.expect(")")
            self.expect("=")
            self.expect("(")
            ys = self.var_list((")",))
            self.expect(")")
            if len(xs) != len(ys) or not xs:
                self.error("tuple selection needs two nonempty tuples of equal length")
            return list(zip(xs, ys))
        x = self.variable()
        self.expect("=")
        y = self.variable()
        return [(x, y)]

    def atom(self, name_tok: _Tok) -> Atom:
        name = name_tok.text
        if FRESH_MARK in name or name not in self.vocab:
            self.error(f"unknown module name {name!r}", name_tok, UnknownModuleError)
        ar, iar = self.vocab.arity(name), self.vocab.input_arity(name)
        self.expect("(")
        first = self.var_list((";", ")"))
        if self.peek().kind == ";":
            self.advance()
            second = self.var_list((")",))
            inputs, outputs = first, second
        else:
            # no ';' given: split by the declared input arity
            inputs, outputs = first[:iar], first[iar:]
        self.expect(")")
        if len(inputs) != iar or len(inputs) + len(outputs) != ar:
            self.error(
                f"{name} expects {iar} input(s) and {ar - iar} output(s), "
                f"got {len(inputs)} and {len(outputs)}",
                name_tok,
                ArityError,
            )
        return Atom(name, tuple(inputs), tuple(outputs), pos=name_tok.pos)


def parse_expression(
    text: str,
    vocab: Vocabulary,
    universe: Universe | Sequence[str] | None = None,
    allow_fresh: bool = False,
) -> Expression:
    """Parse ``text`` into an AST.

    ``allow_fresh`` admits generated variable names (``x#0``) that the
    composition eliminator emits; user input should leave it off.
    """
    u = as_universe(universe) if universe is not None else None
    return _Parser(text, vocab, u, allow_fresh).parse()


# ---------------------------------------------------------------------------
# renderer

_PREC = {Union: 1, Difference: 1, Intersect: 2, Compose: 3}
_SYM = {Union: "+", Difference: "\\", Intersect: "&", Compose: ";"}


def _prec(e: Expression) -> int:
    return _PREC.get(type(e), 4)


def _sorted_vars(vs: Iterable[str]) -> list[str]:
    return sorted(vs)


def render(e: Expression) -> str:
    match e:
        case Id():
            return "id"
        case Atom(name=n, inputs=xs, outputs=ys):
            if not xs and not ys:
                return f"{n}()"
            return f"{n}({','.join(xs)};{','.join(ys)})"
        case Union() | Intersect() | Difference() | Compose():
            p = _PREC[type(e)]
            left, right = render(e.left), render(e.right)
            if _prec(e.left) < p:
                left = f"({left})"
            if _prec(e.right) <= p:
                right = f"({right})"
            return f"{left} {_SYM[type(e)]} {right}"
        case Converse(child=c):
            return f"conv({render(c)})"
        case CylL(vars=z, child=c):
            return f"cyl_l{{{','.join(_sorted_vars(z))}}}({render(c)})"
        case CylR(vars=z, child=c):
            return f"cyl_r{{{','.join(_sorted_vars(z))}}}({render(c)})"
        case SelL(x=x, y=y, child=c):
            return f"sel_l{{{x}={y}}}({render(c)})"
        case SelR(x=x, y=y, child=c):
            return f"sel_r{{{x}={y}}}({render(c)})"
        case SelLR(x=x, y=y, child=c):
            return f"sel_lr{{{x}={y}}}({render(c)})"
    raise TypeError(f"not an expression: {e!r}")


def to_json(e: Expression) -> dict:
    """Nested-dict view of the AST (CLI ``parse``)."""
    match e:
        case Id():
            return {"op": "id"}
        case Atom(name=n, inputs=xs, outputs=ys):
            return {"op": "atom", "name": n, "inputs": list(xs), "outputs": list(ys)}
        case Union() | Intersect() | Difference() | Compose():
            op = type(e).__name__.lower()
            return {"op": op, "left": to_json(e.left), "right": to_json(e.right)}
        case Converse(child=c):
            return {"op": "conv", "child": to_json(c)}
        case CylL(vars=z, child=c) | CylR(vars=z, child=c):
            op = "cyl_l" if isinstance(e, CylL) else "cyl_r"
            return {"op": op, "vars": sorted(z), "child": to_json(c)}
        case SelL(x=x, y=y, child=c) | SelR(x=x, y=y, child=c) | SelLR(x=x, y=y, child=c):
            op = {SelL: "sel_l", SelR: "sel_r", SelLR: "sel_lr"}[type(e)]
            return {"op": op, "x": x, "y": y, "child": to_json(c)}
    raise TypeError(f"not an expression: {e!r}")
