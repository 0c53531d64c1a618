"""Scenario DSL: lexer, recursive-descent parser and canonical serializer.

A scenario is line oriented.  Newlines inside brackets are ignored, ``#``
starts a comment, and full-line comments and blank lines are kept so that
canonical text round-trips byte for byte::

    set seed = 7
    operator A = diag seq mod 2 { strand 0: 1 + 1*j^-1; strand 1: 0; except 3 -> 1/2 }
    operator K = diag seq mod 1 { strand 0: 1*j^-1 } block 2 [[0, 1+i], [1-i, 0]]
    matrix M = [[1, 0], [0, 2]]
    group G = A K
    check closedness A
    check lemma41 A K delta=1/10 eps=1/2
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DuplicateLabel, ParseError, SumSpecError, UnknownDirective, UnknownLabel
from .linalg import HermitianMatrix, QComplex
from .operators import ModelOperator
from .sequences import J_BASE, StrandExpr, SymbolicSequence

KEYWORDS = {"operator", "diag", "seq", "mod", "strand", "except", "block", "matrix",
            "check", "set", "group"}

MAX_MODULUS = 720
MAX_MATRIX = 512
MAX_NUMBER_LEN = 64
MAX_DECIMAL_EXP = 40
MAX_EXPONENT = 64  # strand exponents j^-e with e <= 64 and denominator <= 12

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)
  | (?P<arrow>->)
  | (?P<punct>[{}\[\]();:,=*^+\-])
""", re.VERBOSE)

_OPEN, _CLOSE = "([{", ")]}"


@dataclass(frozen=True)
class Token:
    kind: str  # number, ident, punct, arrow, nl, comment, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    """Tokens with positions; newlines inside brackets are dropped."""
    out, depth, pos, line, line_start = [], [], 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            if not depth:
                out.append(Token("nl", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind == "comment":
            out.append(Token("comment", tok, line, col))
        elif kind != "ws":
            if tok in _OPEN:
                depth.append(tok)
            elif tok in _CLOSE:
                if not depth or _OPEN.index(depth[-1]) != _CLOSE.index(tok):
                    raise ParseError(f"unbalanced {tok!r}", line, col)
                depth.pop()
            out.append(Token(kind, tok, line, col))
        pos = m.end()
    if depth:
        raise ParseError(f"unclosed {depth[-1]!r}", line, pos - line_start + 1,
                         {_CLOSE[_OPEN.index(depth[-1])]})
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# -- checks --------------------------------------------------------------------
@dataclass(frozen=True)
class CheckSpec:
    kind: str  # label kind: operator | matrix | group
    min_args: int
    max_args: Optional[int]
    params: dict  # name -> "rational" | "int" | "list"
    required: tuple = ()


CHECKS = {
    "hypotheses": CheckSpec("operator", 1, None, {}),
    "theorem-a": CheckSpec("operator", 1, None, {}),
    "main": CheckSpec("operator", 1, None, {}),
    "schedule": CheckSpec("operator", 1, None, {"length": "int"}),
    "closedness": CheckSpec("operator", 1, None, {}),
    "single-range": CheckSpec("operator", 1, 1, {}),
    "coercivity": CheckSpec("matrix", 1, None, {"samples": "int"}),
    "cor23": CheckSpec("matrix", 1, None, {}),
    "lemma41": CheckSpec("operator", 2, 2, {"eps": "rational", "delta": "rational"},
                         ("eps", "delta")),
    "gram-gap": CheckSpec("matrix", 1, None, {}),
    "ineq41": CheckSpec("operator", 1, None, {"eps": "rational", "trunc": "int"}, ("eps",)),
    "grouped": CheckSpec("group", 1, None, {}),
    "transfer": CheckSpec("operator", 2, 2, {"lambda": "rational", "length": "int", "n": "int"},
                          ("lambda",)),
    "truncate": CheckSpec("operator", 1, None, {"n": "int", "eps": "rational"}),
    "converge": CheckSpec("operator", 1, 1, {"sizes": "list"}),
    "weyl": CheckSpec("operator", 1, 1, {"rank": "int", "n": "int"}),
}

TOLERANCE_SETTINGS = ("orth", "eig", "offdiag", "sweeps", "gap", "rank", "projection",
                      "zero", "unit", "match", "subspace")
SETTINGS = {"seed": "int", "trunc-size": "int", "cluster-gap": "rational",
            **{f"tol-{k}": ("int" if k == "sweeps" else "rational") for k in TOLERANCE_SETTINGS}}


# -- statements ----------------------------------------------------------------
@dataclass(frozen=True)
class Comment:
    text: str  # "" for a blank line


@dataclass(frozen=True)
class Setting:
    key: str
    value: object


@dataclass(frozen=True)
class OperatorDef:
    label: str
    op: ModelOperator


@dataclass(frozen=True)
class MatrixDef:
    label: str
    matrix: HermitianMatrix


@dataclass(frozen=True)
class GroupDef:
    label: str
    members: tuple


@dataclass(frozen=True)
class Directive:
    check: str
    labels: tuple
    params: tuple  # sorted (key, value) pairs
    line: int = field(default=0, compare=False)

    @property
    def param_map(self) -> dict:
        return dict(self.params)


Statement = Union[Comment, Setting, OperatorDef, MatrixDef, GroupDef, Directive]


@dataclass(frozen=True)
class ScenarioSpec:
    statements: tuple

    @property
    def operators(self) -> dict:
        return {s.label: s.op for s in self.statements if isinstance(s, OperatorDef)}

    @property
    def matrices(self) -> dict:
        return {s.label: s.matrix for s in self.statements if isinstance(s, MatrixDef)}

    @property
    def groups(self) -> dict:
        return {s.label: s.members for s in self.statements if isinstance(s, GroupDef)}

    @property
    def directives(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, Directive))

    @property
    def settings(self) -> dict:
        return {s.key: s.value for s in self.statements if isinstance(s, Setting)}


# -- parser --------------------------------------------------------------------
class _Parser:
    def __init__(self, tokens: list):
        self.toks = tokens
        self.i = 0
        self.labels: dict = {}  # label -> kind

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, expected=(), tok: Optional[Token] = None, cls=ParseError):
        t = tok or self.tok
        return cls(message, t.line, t.col, expected)

    def _describe(self, t: Token) -> str:
        return {"eof": "end of input", "nl": "end of line"}.get(t.kind, repr(t.text))

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("punct", "arrow", "ident") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.tok
        if not self.accept(text):
            raise self.error(f"unexpected {self._describe(t)}", {text})
        return t

    def expect_kind(self, kind: str, what: str) -> Token:
        t = self.tok
        if t.kind != kind:
            raise self.error(f"unexpected {self._describe(t)}", {what})
        self.i += 1
        return t

    # values ---------------------------------------------------------------
    def number(self, what: str = "number") -> Fraction:
        t = self.expect_kind("number", what)
        if len(t.text) > MAX_NUMBER_LEN:
            raise self.error(f"number literal longer than {MAX_NUMBER_LEN} characters", tok=t)
        m = re.search(r"[eE]([+-]?\d+)", t.text)
        if m and abs(int(m.group(1))) > MAX_DECIMAL_EXP:
            raise self.error(f"decimal exponent beyond {MAX_DECIMAL_EXP}", tok=t)
        try:
            return Fraction(t.text)
        except (ZeroDivisionError, ValueError):
            raise self.error(f"invalid number {t.text!r}", tok=t) from None

    def integer(self, what: str = "integer") -> int:
        t = self.tok
        v = self.number(what)
        if v.denominator != 1:
            raise self.error(f"expected an integer, got {t.text!r}", {what}, tok=t)
        return int(v)

    def signed_number(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        return sign * self.number()

    def new_label(self, kind: str) -> str:
        t = self.expect_kind("ident", "label")
        if t.text in KEYWORDS or t.text == "j":
            raise self.error(f"{t.text!r} is reserved", {"label"}, tok=t)
        if t.text in self.labels:
            raise self.error(f"label {t.text!r} is already defined", tok=t, cls=DuplicateLabel)
        self.labels[t.text] = kind
        return t.text

    def use_label(self, kind: str) -> str:
        t = self.expect_kind("ident", f"{kind} label")
        if t.text not in self.labels:
            raise self.error(f"unknown label {t.text!r}", tok=t, cls=UnknownLabel)
        if self.labels[t.text] != kind:
            raise self.error(f"{t.text!r} is a {self.labels[t.text]}, not a {kind}",
                             {f"{kind} label"}, tok=t)
        return t.text

    # strands ------------------------------------------------------------------
    def strand_expr(self) -> StrandExpr:
        terms = []
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        while True:
            coeff, mono = self.term()
            terms.append((mono, sign * coeff))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        return StrandExpr(terms)

    def term(self):
        coeff, mono = Fraction(1), []
        while True:
            t = self.tok
            if t.kind == "number":
                coeff *= self.number()
            elif t.kind == "ident" and t.text == "j":
                self.i += 1
                mono.append((J_BASE, self.exponent()))
            elif t.kind == "punct" and t.text == "(":
                mono.append(self.shifted_base())
            else:
                raise self.error(f"unexpected {self._describe(t)}", {"number", "j", "("})
            if not self.accept("*"):
                return coeff, tuple(mono)

    def exponent(self) -> Fraction:
        self.expect("^")
        t = self.tok
        neg = self.accept("-")
        e = self.number("exponent")
        if e and not neg:
            raise self.error("strand exponents are written j^-e with e >= 0", {"-"}, tok=t)
        if e > MAX_EXPONENT or e.denominator > 12:
            raise self.error(f"exponent {e} out of range (at most {MAX_EXPONENT}, "
                             "denominator at most 12)", tok=t)
        return e

    def shifted_base(self):
        t = self.expect("(")
        a = self.integer("coefficient of j")
        self.expect("j")
        d = self.integer() if self.accept("-") else 0
        self.expect(")")
        e = self.exponent()
        if a < 1 or a > MAX_MODULUS or not 0 <= d < a or math.gcd(a, d) != 1:
            raise self.error(f"base ({a}j-{d}) must satisfy 0 <= d < a with gcd 1", tok=t)
        return (a, d), e

    def sequence(self) -> SymbolicSequence:
        self.expect("seq")
        self.expect("mod")
        t = self.tok
        m = self.integer("modulus")
        if not 1 <= m <= MAX_MODULUS:
            raise self.error(f"modulus must lie in 1..{MAX_MODULUS}", tok=t)
        self.expect("{")
        strands: dict = {}
        exceptions: dict = {}
        while not self.accept("}"):
            t = self.tok
            if self.accept("strand"):
                r = self.integer("strand index")
                if not 0 <= r < m:
                    raise self.error(f"strand index must lie in 0..{m - 1}", tok=t)
                if r in strands:
                    raise self.error(f"strand {r} given twice", tok=t)
                self.expect(":")
                strands[r] = self.strand_expr()
            elif self.accept("except"):
                k = self.integer("index")
                if k < 1 or k in exceptions:
                    raise self.error("exception indices must be distinct and positive", tok=t)
                self.expect("->")
                exceptions[k] = self.signed_number()
            else:
                raise self.error(f"unexpected {self._describe(t)}", {"strand", "except", "}"})
            if not self.accept(";"):
                self.expect("}")
                break
        return SymbolicSequence(m, tuple(strands.get(r, StrandExpr.zero()) for r in range(m)),
                                tuple(sorted(exceptions.items())))

    # matrices -------------------------------------------------------------------
    def entry(self) -> QComplex:
        re_part = im_part = None
        first = True
        while True:
            t = self.tok
            if first:
                sign = -1 if self.accept("-") else 1
                if sign == 1:
                    self.accept("+")
            elif self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
            if self.tok.kind == "number":
                v = self.number()
                imaginary = self.accept("i")
            elif self.accept("i"):
                v, imaginary = Fraction(1), True
            else:
                raise self.error(f"unexpected {self._describe(self.tok)}", {"number", "i"})
            if imaginary:
                if im_part is not None:
                    raise self.error("two imaginary parts in one entry", tok=t)
                im_part = sign * v
            else:
                if re_part is not None:
                    raise self.error("two real parts in one entry", tok=t)
                re_part = sign * v
            first = False
        return QComplex(re_part or 0, im_part or 0)

    def matrix(self) -> HermitianMatrix:
        t = self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.entry()]
            while self.accept(","):
                row.append(self.entry())
            self.expect("]")
            rows.append(row)
            if len(rows) > MAX_MATRIX:
                raise self.error(f"matrices are limited to {MAX_MATRIX} rows", tok=t)
            if not self.accept(","):
                break
        self.expect("]")
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise self.error("matrix must be square", tok=t)
        for i in range(n):
            if rows[i][i].im:
                raise self.error("diagonal entries must be real", tok=t)
            for j in range(i + 1, n):
                if rows[j][i] != rows[i][j].conj():
                    raise self.error(f"entry ({i + 1},{j + 1}) is not the conjugate of "
                                     f"({j + 1},{i + 1})", tok=t)
        return HermitianMatrix(rows)

    # statements ---------------------------------------------------------------------
    def param_value(self, kind: str):
        if kind == "list":
            items = [self.signed_number()]
            while self.accept(","):
                items.append(self.signed_number())
            return tuple(items)
        t = self.tok
        v = self.signed_number()
        if kind == "int" and v.denominator != 1:
            raise self.error(f"expected an integer, got {v}", {"integer"}, tok=t)
        return int(v) if kind == "int" else v

    def statement(self) -> Statement:
        t = self.tok
        if self.accept("set"):
            kt = self.expect_kind("ident", "setting name")
            if kt.text not in SETTINGS:
                raise self.error(f"unknown setting {kt.text!r}", set(SETTINGS), tok=kt)
            self.expect("=")
            return Setting(kt.text, self.param_value(SETTINGS[kt.text]))
        if self.accept("operator"):
            label = self.new_label("operator")
            self.expect("=")
            self.expect("diag")
            seq = self.sequence()
            block = None
            if self.accept("block"):
                bt = self.tok
                n = self.integer("block size")
                block = self.matrix()
                if block.n != n:
                    raise self.error(f"block declared {n}x{n} but has {block.n} rows", tok=bt)
            return OperatorDef(label, ModelOperator(seq, block, label))
        if self.accept("matrix"):
            label = self.new_label("matrix")
            self.expect("=")
            return MatrixDef(label, self.matrix())
        if self.accept("group"):
            label = self.new_label("group")
            self.expect("=")
            members = [self.use_label("operator")]
            while self.tok.kind == "ident":
                members.append(self.use_label("operator"))
            return GroupDef(label, tuple(members))
        if self.accept("check"):
            ct = self.expect_kind("ident", "check id")
            spec = CHECKS.get(ct.text)
            if spec is None:
                raise self.error(f"unknown check {ct.text!r}", set(CHECKS), tok=ct,
                                 cls=UnknownDirective)
            labels, params = [], {}
            while self.tok.kind == "ident":
                if self.toks[self.i + 1].text == "=":
                    pt = self.tok
                    if pt.text not in spec.params:
                        raise self.error(f"check {ct.text} takes no parameter {pt.text!r}",
                                         set(spec.params), tok=pt)
                    if pt.text in params:
                        raise self.error(f"parameter {pt.text!r} given twice", tok=pt)
                    self.i += 2
                    params[pt.text] = self.param_value(spec.params[pt.text])
                elif params:
                    raise self.error("labels must precede parameters", tok=self.tok)
                else:
                    labels.append(self.use_label(spec.kind))
            if len(labels) < spec.min_args or (spec.max_args is not None
                                               and len(labels) > spec.max_args):
                want = (f"{spec.min_args}" if spec.max_args == spec.min_args else
                        f"at least {spec.min_args}" if spec.max_args is None else
                        f"{spec.min_args}..{spec.max_args}")
                raise self.error(f"check {ct.text} takes {want} {spec.kind} labels", tok=ct)
            missing = [p for p in spec.required if p not in params]
            if missing:
                raise self.error(f"check {ct.text} needs {', '.join(missing)}",
                                 set(missing), tok=ct)
            return Directive(ct.text, tuple(labels), tuple(sorted(params.items())), ct.line)
        raise self.error(f"unexpected {self._describe(t)}",
                         {"set", "operator", "matrix", "group", "check"})

    def scenario(self) -> ScenarioSpec:
        out = []
        at_line_start = True
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind == "nl":
                if at_line_start:
                    out.append(Comment(""))
                self.i += 1
                at_line_start = True
                continue
            if t.kind == "comment":
                if at_line_start:
                    out.append(Comment(t.text))
                self.i += 1
                at_line_start = False
                continue
            out.append(self.statement())
            at_line_start = False
            if self.tok.kind == "comment":
                self.i += 1
            if self.tok.kind not in ("nl", "eof"):
                raise self.error(f"unexpected {self._describe(self.tok)}", {"end of line"})
        return ScenarioSpec(tuple(out))


def parse_scenario(text: Union[str, bytes]) -> ScenarioSpec:
    """Parse scenario text; raises ParseError (or a subclass) with a position."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 (byte {exc.start})") from None
    if text.startswith("﻿"):
        text = text[1:]
    text = text.replace("\r\n", "\n")
    try:
        return _Parser(tokenize(text)).scenario()
    except ParseError:
        raise
    except (SumSpecError, ValueError, TypeError, ArithmeticError) as exc:
        raise ParseError(f"invalid scenario: {exc}") from None


# -- canonical serialization ----------------------------------------------------------
def format_value(v) -> str:
    if isinstance(v, tuple):
        return ",".join(format_value(x) for x in v)
    return str(v)


def format_sequence(s: SymbolicSequence) -> str:
    items = [f"strand {r}: {st}" for r, st in enumerate(s.strands)]
    items += [f"except {k} -> {v}" for k, v in s.exceptions]
    return f"seq mod {s.modulus} {{ {'; '.join(items)} }}"


def format_matrix(m: HermitianMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(row) + "]" for row in m.rows_text()) + "]"


def format_statement(s: Statement) -> str:
    if isinstance(s, Comment):
        return s.text
    if isinstance(s, Setting):
        return f"set {s.key} = {format_value(s.value)}"
    if isinstance(s, OperatorDef):
        text = f"operator {s.label} = diag {format_sequence(s.op.diag)}"
        if s.op.block is not None:
            text += f" block {s.op.block.n} {format_matrix(s.op.block)}"
        return text
    if isinstance(s, MatrixDef):
        return f"matrix {s.label} = {format_matrix(s.matrix)}"
    if isinstance(s, GroupDef):
        return f"group {s.label} = {' '.join(s.members)}"
    parts = ["check", s.check, *s.labels] + [f"{k}={format_value(v)}" for k, v in s.params]
    return " ".join(parts)


def serialize_scenario(spec: ScenarioSpec) -> str:
    return "".join(format_statement(s) + "\n" for s in spec.statements)
