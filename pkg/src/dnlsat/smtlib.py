"""SMT-LIB v2.6 frontend for the QF_NRA fragment.

``parse`` turns text into a :class:`Script` of command records holding an
immutable term AST; ``print_script`` renders it back (re-parsing gives an
equal AST); ``internalize`` expands lets and macros, builds canonical atoms
and emits CNF with plain Tseitin definitions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .algebra import Polynomial
from .formula import ClauseDB, negate


class SmtlibError(Exception):
    """Base class for frontend errors; carries an optional source position."""

    kind = "error"

    def __init__(self, msg: str, line: Optional[int] = None, col: Optional[int] = None):
        self.msg = msg
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self) -> str:
        if self.line is None:
            return f"{self.kind}: {self.msg}"
        return f"{self.kind} at line {self.line}, column {self.col}: {self.msg}"


class ParseError(SmtlibError):
    kind = "parse error"


class SortError(SmtlibError):
    kind = "sort error"


class UnsupportedError(SmtlibError):
    kind = "unsupported"


# ----------------------------------------------------------------------
# lexer and s-expressions
# ----------------------------------------------------------------------
@dataclass
class Tok:
    kind: str  # "(", ")", "num", "dec", "sym", "kw", "str"
    text: str
    line: int
    col: int


_SIMPLE = re.compile(r"[A-Za-z~!@$%^&*_\-+=<>.?/][A-Za-z0-9~!@$%^&*_\-+=<>.?/]*\Z")


def tokenize(text: str) -> Iterator[Tok]:
    i, n = 0, len(text)
    line, col = 1, 1

    def adv(k: int) -> None:
        nonlocal i, line, col
        for ch in text[i:i + k]:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        i += k

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            adv(1)
        elif ch == ";":
            j = text.find("\n", i)
            adv((n if j < 0 else j) - i)
        elif ch in "()":
            yield Tok(ch, ch, line, col)
            adv(1)
        elif ch == '"':
            j = i + 1
            while True:
                if j >= n:
                    raise ParseError("unterminated string literal", line, col)
                if text[j] == '"':
                    if j + 1 < n and text[j + 1] == '"':
                        j += 2
                        continue
                    break
                j += 1
            yield Tok("str", text[i:j + 1], line, col)
            adv(j + 1 - i)
        elif ch == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise ParseError("unterminated quoted symbol", line, col)
            yield Tok("sym", text[i + 1:j], line, col)
            adv(j + 1 - i)
        else:
            j = i
            while j < n and text[j] not in ' \t\r\n();"|':
                j += 1
            word = text[i:j]
            if re.fullmatch(r"[0-9]+", word):
                if len(word) > 1 and word[0] == "0":
                    raise ParseError(f"malformed numeral '{word}'", line, col)
                kind = "num"
            elif re.fullmatch(r"[0-9]+\.[0-9]+", word):
                kind = "dec"
            elif word[0] == ":":
                kind = "kw"
            elif word[0].isdigit() or word[0] == "#":
                raise ParseError(f"unsupported literal '{word}'", line, col)
            else:
                kind = "sym"
            yield Tok(kind, word, line, col)
            adv(j - i)


@dataclass
class SList:
    items: list
    line: int
    col: int


def read_sexprs(text: str) -> List[Union[Tok, SList]]:
    out: list = []
    stack: List[SList] = []
    for tok in tokenize(text):
        if tok.kind == "(":
            stack.append(SList([], tok.line, tok.col))
        elif tok.kind == ")":
            if not stack:
                raise ParseError("unexpected ')'", tok.line, tok.col)
            done = stack.pop()
            (stack[-1].items if stack else out).append(done)
        else:
            (stack[-1].items if stack else out).append(tok)
    if stack:
        raise ParseError("unbalanced '(' (missing ')')", stack[-1].line, stack[-1].col)
    return out


def _pos(x) -> Tuple[int, int]:
    return x.line, x.col


def _sexpr_text(x) -> str:
    if isinstance(x, Tok):
        return _symbol_text(x.text) if x.kind == "sym" else x.text
    return "(" + " ".join(_sexpr_text(y) for y in x.items) + ")"


def _symbol_text(name: str) -> str:
    return name if _SIMPLE.match(name) else f"|{name}|"


# ----------------------------------------------------------------------
# AST
# ----------------------------------------------------------------------
REAL, BOOL = "Real", "Bool"


@dataclass(frozen=True)
class Num:
    value: Fraction
    text: str


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class App:
    op: str
    args: tuple


@dataclass(frozen=True)
class Let:
    bindings: tuple  # ((name, term), ...)
    body: object


Term = Union[Num, Sym, App, Let]


@dataclass(frozen=True)
class SetLogic:
    logic: str


@dataclass(frozen=True)
class SetInfo:
    keyword: str
    value: Optional[str]


@dataclass(frozen=True)
class DeclareFun:
    name: str
    sort: str


@dataclass(frozen=True)
class DefineFun:
    name: str
    sort: str
    body: Term


@dataclass(frozen=True)
class Assert:
    term: Term


@dataclass(frozen=True)
class CheckSat:
    pass


@dataclass(frozen=True)
class GetModel:
    pass


@dataclass(frozen=True)
class Exit:
    pass


Command = Union[SetLogic, SetInfo, DeclareFun, DefineFun, Assert, CheckSat, GetModel, Exit]


@dataclass
class Script:
    commands: List[Command] = field(default_factory=list)

    @property
    def assertions(self) -> List[Term]:
        return [c.term for c in self.commands if isinstance(c, Assert)]

    @property
    def status(self) -> Optional[str]:
        for c in self.commands:
            if isinstance(c, SetInfo) and c.keyword == ":status":
                return c.value
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, Script) and self.commands == other.commands


ARITH_OPS = {"+", "-", "*", "/"}
REL_OPS = {"<", "<=", ">", ">=", "="}
BOOL_OPS = {"and", "or", "not", "=>", "xor", "ite", "distinct"}
_UNSUPPORTED_OPS = {"^", "exp", "sin", "cos", "abs", "to_real", "to_int", "is_int",
                    "div", "mod", "forall", "exists", "!", "sqrt", "pow"}
_SUPPORTED_CMDS = {"set-logic", "set-info", "set-option", "declare-fun", "declare-const",
                   "define-fun", "assert", "check-sat", "get-model", "exit"}


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------
def _fold(op: str, vals: List[Fraction]) -> Fraction:
    if op == "-" and len(vals) == 1:
        return -vals[0]
    acc = vals[0]
    for v in vals[1:]:
        if op == "+":
            acc += v
        elif op == "-":
            acc -= v
        elif op == "*":
            acc *= v
        else:
            acc /= v
    return acc


class _Parser:
    def __init__(self):
        self.globals: Dict[str, str] = {}
        self.consts: Dict[str, Optional[Fraction]] = {}
        self.scopes: List[Dict[str, Tuple[str, Optional[Fraction]]]] = []
        self.saw_logic = False

    # -- helpers -------------------------------------------------------
    def lookup(self, name: str, at) -> Tuple[str, Optional[Fraction]]:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        if name in self.globals:
            return self.globals[name], self.consts.get(name)
        raise SortError(f"unknown symbol '{name}'", *_pos(at))

    def sort_of(self, x) -> str:
        if isinstance(x, Tok) and x.kind == "sym" and x.text in (REAL, BOOL):
            return x.text
        if isinstance(x, Tok) and x.kind == "sym" and x.text == "Int":
            raise UnsupportedError("sort Int is not supported (QF_NRA/QF_LRA only)", *_pos(x))
        raise UnsupportedError(f"unsupported sort {_sexpr_text(x)}", *_pos(x))

    def symbol(self, x, what: str) -> str:
        if not isinstance(x, Tok) or x.kind != "sym":
            raise ParseError(f"expected {what}", *_pos(x))
        return x.text

    # -- terms ---------------------------------------------------------
    def term(self, x) -> Tuple[Term, str, Optional[Fraction]]:
        """Parse a term, returning ``(ast, sort, constant value or None)``."""
        if isinstance(x, Tok):
            if x.kind in ("num", "dec"):
                v = Fraction(x.text)
                return Num(v, x.text), REAL, v
            if x.kind == "sym":
                if x.text in ("true", "false"):
                    return Sym(x.text), BOOL, None
                if x.text in _UNSUPPORTED_OPS:
                    raise UnsupportedError(f"operator '{x.text}' is not supported", *_pos(x))
                sort, val = self.lookup(x.text, x)
                return Sym(x.text), sort, val
            raise ParseError(f"unexpected token '{x.text}'", *_pos(x))
        if not x.items:
            raise ParseError("empty term", *_pos(x))
        head = x.items[0]
        if isinstance(head, SList):
            raise UnsupportedError("indexed or higher-order application", *_pos(head))
        if head.kind != "sym":
            raise ParseError(f"expected operator, found '{head.text}'", *_pos(head))
        op = head.text
        if op == "let":
            return self.let(x)
        if op in _UNSUPPORTED_OPS:
            raise UnsupportedError(f"operator '{op}' is not supported", *_pos(head))
        if op not in ARITH_OPS | REL_OPS | BOOL_OPS:
            if op in self.globals or any(op in s for s in self.scopes):
                raise UnsupportedError(f"'{op}' is not a function", *_pos(head))
            raise UnsupportedError(f"unknown operator '{op}'", *_pos(head))
        parsed = [self.term(a) for a in x.items[1:]]
        args = tuple(p[0] for p in parsed)
        sorts = [p[1] for p in parsed]
        vals = [p[2] for p in parsed]
        if not args:
            raise ParseError(f"'{op}' needs arguments", *_pos(x))

        def need(sort: str) -> None:
            for a, s in zip(x.items[1:], sorts):
                if s != sort:
                    raise SortError(f"'{op}' expects {sort} arguments, got {s}", *_pos(a))

        if op in ARITH_OPS:
            need(REAL)
            if op == "/":
                if len(args) < 2:
                    raise ParseError("'/' needs at least two arguments", *_pos(x))
                for a, v in zip(x.items[2:], vals[1:]):
                    if v is None:
                        raise UnsupportedError("division by a non-constant term", *_pos(a))
                    if v == 0:
                        raise ParseError("division by zero", *_pos(a))
            val = _fold(op, vals) if all(v is not None for v in vals) else None
            return App(op, args), REAL, val
        if op in REL_OPS or op == "distinct":
            if len(args) < 2:
                raise ParseError(f"'{op}' needs at least two arguments", *_pos(x))
            if op in ("=", "distinct"):
                if len(set(sorts)) != 1:
                    raise SortError(f"'{op}' over mixed sorts", *_pos(x))
            else:
                need(REAL)
            return App(op, args), BOOL, None
        # boolean connectives
        if op == "ite":
            if len(args) != 3:
                raise ParseError("'ite' needs three arguments", *_pos(x))
            if sorts[0] != BOOL:
                raise SortError("'ite' condition must be Bool", *_pos(x.items[1]))
            if sorts[1] != sorts[2]:
                raise SortError("'ite' branches differ in sort", *_pos(x))
            if sorts[1] == REAL:
                raise UnsupportedError("'ite' over Real terms is not supported", *_pos(x))
            return App(op, args), BOOL, None
        need(BOOL)
        if op == "not" and len(args) != 1:
            raise ParseError("'not' takes one argument", *_pos(x))
        if op in ("=>", "xor") and len(args) < 2:
            raise ParseError(f"'{op}' needs at least two arguments", *_pos(x))
        return App(op, args), BOOL, None

    def let(self, x) -> Tuple[Term, str, Optional[Fraction]]:
        if len(x.items) != 3 or not isinstance(x.items[1], SList):
            raise ParseError("malformed let", *_pos(x))
        binds = []
        scope: Dict[str, Tuple[str, Optional[Fraction]]] = {}
        for b in x.items[1].items:
            if not isinstance(b, SList) or len(b.items) != 2:
                raise ParseError("malformed let binding", *_pos(b))
            name = self.symbol(b.items[0], "binding name")
            if name in scope:
                raise ParseError(f"duplicate let binding '{name}'", *_pos(b))
            t, s, v = self.term(b.items[1])
            binds.append((name, t))
            scope[name] = (s, v)
        if not binds:
            raise ParseError("let without bindings", *_pos(x))
        self.scopes.append(scope)
        try:
            body, sort, val = self.term(x.items[2])
        finally:
            self.scopes.pop()
        return Let(tuple(binds), body), sort, val

    # -- commands ------------------------------------------------------
    def command(self, x) -> Optional[Command]:
        if not isinstance(x, SList) or not x.items:
            raise ParseError("expected a command", *_pos(x))
        head = x.items[0]
        if not isinstance(head, Tok) or head.kind != "sym":
            raise ParseError("expected a command name", *_pos(x))
        name = head.text
        args = x.items[1:]
        if name not in _SUPPORTED_CMDS:
            raise UnsupportedError(f"command '{name}' is not supported", *_pos(head))

        def arity(k: int) -> None:
            if len(args) != k:
                raise ParseError(f"'{name}' expects {k} argument(s)", *_pos(x))

        if name == "set-logic":
            arity(1)
            logic = self.symbol(args[0], "logic name")
            if self.saw_logic:
                raise ParseError("set-logic given twice", *_pos(x))
            if logic not in ("QF_NRA", "QF_LRA"):
                raise UnsupportedError(f"logic {logic} is not supported", *_pos(args[0]))
            self.saw_logic = True
            return SetLogic(logic)
        if name == "set-info":
            if not args or not isinstance(args[0], Tok) or args[0].kind != "kw":
                raise ParseError("set-info expects a keyword", *_pos(x))
            if len(args) > 2:
                raise ParseError("set-info expects one attribute", *_pos(x))
            return SetInfo(args[0].text, _sexpr_text(args[1]) if len(args) == 2 else None)
        if name == "set-option":
            return None
        if name in ("declare-fun", "declare-const"):
            arity(3 if name == "declare-fun" else 2)
            sym = self.symbol(args[0], "symbol")
            if name == "declare-fun":
                if not isinstance(args[1], SList):
                    raise ParseError("expected parameter list", *_pos(args[1]))
                if args[1].items:
                    raise UnsupportedError("uninterpreted functions are not supported", *_pos(args[1]))
            sort = self.sort_of(args[-1])
            self._declare(sym, sort, x)
            return DeclareFun(sym, sort)
        if name == "define-fun":
            arity(4)
            sym = self.symbol(args[0], "symbol")
            if not isinstance(args[1], SList):
                raise ParseError("expected parameter list", *_pos(args[1]))
            if args[1].items:
                raise UnsupportedError("define-fun with parameters is not supported", *_pos(args[1]))
            sort = self.sort_of(args[2])
            body, bsort, val = self.term(args[3])
            if bsort != sort:
                raise SortError(f"body of '{sym}' has sort {bsort}, declared {sort}", *_pos(args[3]))
            self._declare(sym, sort, x)
            self.consts[sym] = val
            return DefineFun(sym, sort, body)
        if name == "assert":
            arity(1)
            t, sort, _ = self.term(args[0])
            if sort != BOOL:
                raise SortError("assertion is not Bool", *_pos(args[0]))
            return Assert(t)
        arity(0)
        return {"check-sat": CheckSat, "get-model": GetModel, "exit": Exit}[name]()

    def _declare(self, sym: str, sort: str, at) -> None:
        if sym in self.globals or sym in ("true", "false") or sym in ARITH_OPS | REL_OPS | BOOL_OPS:
            raise ParseError(f"symbol '{sym}' already declared", *_pos(at))
        self.globals[sym] = sort


def parse(text: Union[str, bytes]) -> Script:
    """Parse SMT-LIB text into a :class:`Script`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8 ({e.reason})") from None
    p = _Parser()
    script = Script()
    for x in read_sexprs(text):
        cmd = p.command(x)
        if cmd is not None:
            script.commands.append(cmd)
    return script


def parse_file(path: str) -> Script:
    with open(path, "rb") as fh:
        return parse(fh.read())


# ----------------------------------------------------------------------
# printer
# ----------------------------------------------------------------------
def term_to_str(t: Term) -> str:
    if isinstance(t, Num):
        return t.text
    if isinstance(t, Sym):
        return _symbol_text(t.name)
    if isinstance(t, App):
        return f"({t.op} {' '.join(term_to_str(a) for a in t.args)})"
    binds = " ".join(f"({_symbol_text(n)} {term_to_str(v)})" for n, v in t.bindings)
    return f"(let ({binds}) {term_to_str(t.body)})"


def command_to_str(c: Command) -> str:
    if isinstance(c, SetLogic):
        return f"(set-logic {c.logic})"
    if isinstance(c, SetInfo):
        return f"(set-info {c.keyword})" if c.value is None else f"(set-info {c.keyword} {c.value})"
    if isinstance(c, DeclareFun):
        return f"(declare-fun {_symbol_text(c.name)} () {c.sort})"
    if isinstance(c, DefineFun):
        return f"(define-fun {_symbol_text(c.name)} () {c.sort} {term_to_str(c.body)})"
    if isinstance(c, Assert):
        return f"(assert {term_to_str(c.term)})"
    return {CheckSat: "(check-sat)", GetModel: "(get-model)", Exit: "(exit)"}[type(c)]


def print_script(s: Script) -> str:
    return "".join(command_to_str(c) + "\n" for c in s.commands)


# ----------------------------------------------------------------------
# internalization
# ----------------------------------------------------------------------
Value = Union[Polynomial, int, bool]  # Real terms -> Polynomial; Bool terms -> literal or constant


class Internalizer:
    """Expand lets and macros; map relations to atoms and formulas to CNF."""

    def __init__(self, db: Optional[ClauseDB] = None):
        self.db = db if db is not None else ClauseDB()
        self.names: Dict[str, Tuple[str, int]] = {}  # name -> (sort, var id)
        self.macros: Dict[str, Value] = {}
        self._defs: Dict[tuple, int] = {}
        self._seen_clauses = set()
        self.fresh = 0

    # -- declarations --------------------------------------------------
    def declare(self, name: str, sort: str) -> None:
        if sort == REAL:
            self.names[name] = (REAL, self.db.new_arith_var(name))
        else:
            self.names[name] = (BOOL, self.db.new_bool_var(name))

    # -- clauses -------------------------------------------------------
    def add_clause(self, lits) -> None:
        out = []
        for l in lits:
            if l is True:
                return
            if l is False:
                continue
            out.append(l)
        key = tuple(sorted(set(out)))
        if any(negate(l) in key for l in key):
            return
        if key in self._seen_clauses:
            return
        self._seen_clauses.add(key)
        self.db.add_clause(out)

    # -- terms ---------------------------------------------------------
    def real(self, t: Term, env) -> Polynomial:
        v = self.value(t, env)
        assert isinstance(v, Polynomial)
        return v

    def value(self, t: Term, env: Dict[str, Value]) -> Value:
        if isinstance(t, Num):
            return Polynomial.const(t.value)
        if isinstance(t, Sym):
            if t.name == "true":
                return True
            if t.name == "false":
                return False
            if t.name in env:
                return env[t.name]
            if t.name in self.macros:
                return self.macros[t.name]
            sort, idx = self.names[t.name]
            return Polynomial.var(idx) if sort == REAL else 2 * idx
        if isinstance(t, Let):
            inner = dict(env)
            for name, sub in t.bindings:
                inner[name] = self.value(sub, env)
            return self.value(t.body, inner)
        op, args = t.op, t.args
        if op in ARITH_OPS:
            ps = [self.real(a, env) for a in args]
            if op == "-" and len(ps) == 1:
                return -ps[0]
            acc = ps[0]
            for p in ps[1:]:
                if op == "+":
                    acc = acc + p
                elif op == "-":
                    acc = acc - p
                elif op == "*":
                    acc = acc * p
                else:
                    acc = acc * (Fraction(1) / Fraction(p.constant_value()))
            return acc
        vals = [self.value(a, env) for a in args]
        if op in REL_OPS and isinstance(vals[0], Polynomial):
            rel = "=" if op == "=" else op
            return self.mk_and([self.db.mk_poly_lit(a - b, rel) for a, b in zip(vals, vals[1:])])
        if op == "distinct":
            pairs = [(vals[i], vals[j]) for i in range(len(vals)) for j in range(i + 1, len(vals))]
            if isinstance(vals[0], Polynomial):
                return self.mk_and([self.db.mk_poly_lit(a - b, "!=") for a, b in pairs])
            return self.mk_and([self.mk_xor(a, b) for a, b in pairs])
        if op == "=":
            return self.mk_and([self.mk_not(self.mk_xor(a, b)) for a, b in zip(vals, vals[1:])])
        if op == "not":
            return self.mk_not(vals[0])
        if op == "and":
            return self.mk_and(vals)
        if op == "or":
            return self.mk_or(vals)
        if op == "=>":
            # right associative: a => (b => c)
            acc = vals[-1]
            for a in reversed(vals[:-1]):
                acc = self.mk_or([self.mk_not(a), acc])
            return acc
        if op == "xor":
            acc = vals[0]
            for b in vals[1:]:
                acc = self.mk_xor(acc, b)
            return acc
        if op == "ite":
            return self.mk_ite(*vals)
        raise UnsupportedError(f"operator '{op}'")

    # -- Tseitin gates -------------------------------------------------
    @staticmethod
    def mk_not(a):
        return (not a) if isinstance(a, bool) else negate(a)

    def _fresh(self, key: tuple) -> Tuple[int, bool]:
        t = self._defs.get(key)
        if t is not None:
            return t, False
        self.fresh += 1
        t = 2 * self.db.new_bool_var(f"!t{self.fresh}")
        self._defs[key] = t
        return t, True

    def mk_and(self, xs):
        lits = []
        for x in xs:
            if x is False:
                return False
            if x is not True and x not in lits:
                lits.append(x)
        if not lits:
            return True
        if len(lits) == 1:
            return lits[0]
        t, new = self._fresh(("and",) + tuple(sorted(lits)))
        if new:
            for l in lits:
                self.add_clause([negate(t), l])
            self.add_clause([t] + [negate(l) for l in lits])
        return t

    def mk_or(self, xs):
        return self.mk_not(self.mk_and([self.mk_not(x) for x in xs]))

    def mk_xor(self, a, b):
        if isinstance(a, bool) or isinstance(b, bool):
            if isinstance(a, bool) and isinstance(b, bool):
                return a != b
            c, l = (a, b) if isinstance(a, bool) else (b, a)
            return negate(l) if c else l
        if a == b:
            return False
        if a == negate(b):
            return True
        t, new = self._fresh(("xor",) + tuple(sorted((a, b))))
        if new:
            self.add_clause([negate(t), a, b])
            self.add_clause([negate(t), negate(a), negate(b)])
            self.add_clause([t, negate(a), b])
            self.add_clause([t, a, negate(b)])
        return t

    def mk_ite(self, c, a, b):
        if isinstance(c, bool):
            return a if c else b
        if isinstance(a, bool) and isinstance(b, bool):
            return (c if a else self.mk_not(c)) if a != b else a
        if isinstance(a, bool) or isinstance(b, bool):
            return self.mk_or([self.mk_and([c, a]), self.mk_and([self.mk_not(c), b])])
        if a == b:
            return a
        t, new = self._fresh(("ite", c, a, b))
        if new:
            self.add_clause([negate(t), negate(c), a])
            self.add_clause([negate(t), c, b])
            self.add_clause([t, negate(c), negate(a)])
            self.add_clause([t, c, negate(b)])
        return t

    # -- assertions ----------------------------------------------------
    def assert_term(self, t: Term, env=None) -> None:
        env = {} if env is None else env
        while isinstance(t, Let):
            inner = dict(env)
            for name, sub in t.bindings:
                inner[name] = self.value(sub, env)
            t, env = t.body, inner
        if isinstance(t, App) and t.op == "and":
            for a in t.args:
                self.assert_term(a, env)
            return
        if isinstance(t, App) and t.op in REL_OPS and len(t.args) > 2:
            vals = [self.value(a, env) for a in t.args]
            if isinstance(vals[0], Polynomial):
                for a, b in zip(vals, vals[1:]):
                    self.add_clause([self.db.mk_poly_lit(a - b, t.op)])
                return
        if isinstance(t, App) and t.op == "or":
            self.add_clause([self.value(a, env) for a in t.args])
            return
        if isinstance(t, App) and t.op == "=>" and len(t.args) == 2:
            self.add_clause([self.mk_not(self.value(t.args[0], env)), self.value(t.args[1], env)])
            return
        self.add_clause([self.value(t, env)])


@dataclass
class Problem:
    """Result of internalization."""

    db: ClauseDB
    real_vars: Dict[str, int]
    bool_vars: Dict[str, int]
    status: Optional[str] = None


def internalize(script: Script, db: Optional[ClauseDB] = None) -> Problem:
    it = Internalizer(db)
    for c in script.commands:
        if isinstance(c, DeclareFun):
            it.declare(c.name, c.sort)
        elif isinstance(c, DefineFun):
            it.macros[c.name] = it.value(c.body, {})
        elif isinstance(c, Assert):
            it.assert_term(c.term)
    reals = {n: i for n, (s, i) in it.names.items() if s == REAL}
    bools = {n: i for n, (s, i) in it.names.items() if s == BOOL}
    return Problem(it.db, reals, bools, script.status)
