"""Model-definition DSL and causal-formula query language.

Model files are line oriented::

    model Fire
    exo U_F: {0, 1}
    var F: {0, 1} = U_F
    var S: {0, 1} = F
    var B: {0, 1} = F & !S          # comments run to end of line
    var T: auto + {7} = F + S       # domain = image of the equation plus extras

Formulas look like ``[X2<-45001](Y=1)`` or ``!(X4=1) | Y=1``.

``p/q`` written without spaces is a rational literal; ``p / q`` is division.
Decimal literals are converted exactly.
"""

from __future__ import annotations

import re
from importlib import resources
from dataclasses import dataclass
from fractions import Fraction

from .errors import Diagnostic, DomainError, ModelError, ParseError
from .expr import COMPARE, Binary, Expr, Ite, Lit, Ref, Unary, format_expr, references
from .model import AutoDomain, CausalFormula, CausalModel
from .values import format_value

KEYWORDS = {"model", "exo", "var", "auto", "ite"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>\d+/\d+|\d+\.\d*|\.\d+|\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><-|<=|>=|!=|[=<>+\-*/&|!(){},:\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "nl", "eof"
    text: str
    line: int
    col: int


class _Syntax(Exception):
    def __init__(self, msg: str, tok: Token):
        super().__init__(msg)
        self.msg = msg
        self.tok = tok


def tokenize(text: str, first_line: int = 1) -> list[Token]:
    toks: list[Token] = []
    line, line_start, pos = first_line, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise _Syntax(f"unexpected character {text[pos]!r}",
                          Token("op", text[pos], line, pos - line_start + 1))
        kind = m.lastgroup
        if kind == "nl":
            toks.append(Token("nl", "\n", line, pos - line_start + 1))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(Token("eof", "", line, pos - line_start + 1))
    return toks


def _num(text: str) -> Fraction:
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise ZeroDivisionError
        return Fraction(int(p), int(q))
    return Fraction(text)


class _Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "ident") and t.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _Syntax(f"expected {text!r}, found {self._show(self.tok)}", self.tok)
        return self.next()

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            raise _Syntax(f"expected a variable name, found {self._show(t)}", t)
        return self.next()

    @staticmethod
    def _show(t: Token) -> str:
        return {"eof": "end of input", "nl": "end of line"}.get(t.kind, repr(t.text))

    def value(self) -> Fraction:
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        t = self.tok
        if t.kind != "num":
            raise _Syntax(f"expected a number, found {self._show(t)}", t)
        self.next()
        try:
            v = _num(t.text)
        except ZeroDivisionError:
            raise _Syntax("zero denominator in rational literal", t) from None
        return -v if neg else v

    def domain(self) -> list[Fraction]:
        self.expect("{")
        vals = [self.value()]
        while self.at(","):
            self.next()
            vals.append(self.value())
        self.expect("}")
        return vals

    # expressions -------------------------------------------------------
    def expr(self) -> Expr:
        e = self.and_()
        while self.at("|"):
            self.next()
            e = Binary("|", e, self.and_())
        return e

    def and_(self) -> Expr:
        e = self.not_()
        while self.at("&"):
            self.next()
            e = Binary("&", e, self.not_())
        return e

    def not_(self) -> Expr:
        if self.at("!"):
            self.next()
            return Unary("!", self.cmp())
        return self.cmp()

    def cmp(self) -> Expr:
        e = self.add()
        if self.tok.kind == "op" and self.tok.text in COMPARE:
            op = self.next().text
            e = Binary(op, e, self.add())
            if self.tok.kind == "op" and self.tok.text in COMPARE:
                raise _Syntax("comparisons do not chain; add parentheses", self.tok)
        return e

    def add(self) -> Expr:
        e = self.mul()
        while self.at("+") or self.at("-"):
            op = self.next().text
            e = Binary(op, e, self.mul())
        return e

    def mul(self) -> Expr:
        e = self.unary()
        while self.at("*") or self.at("/"):
            op = self.next().text
            e = Binary(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.at("-"):
            self.next()
            if self.tok.kind == "num":
                return Lit(-self.value())
            return Unary("-", self.atom())
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            return Lit(self.value())
        if t.kind == "ident" and t.text == "ite":
            self.next()
            self.expect("(")
            c = self.expr()
            self.expect(",")
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(")")
            return Ite(c, a, b)
        if t.kind == "ident":
            return Ref(self.ident().text)
        if self.at("("):
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        raise _Syntax(f"expected an expression, found {self._show(t)}", t)


def _diag(msg: str, tok: Token) -> Diagnostic:
    return Diagnostic("error", msg, tok.line, tok.col, len(tok.text))


# ----------------------------------------------------------------------
# models

@dataclass
class _Decl:
    kind: str
    name: Token
    domain: list | AutoDomain
    body: Expr | None


def parse_model(text: str, budget=None) -> CausalModel:
    """Parse and validate a model; raises ParseError or ModelError with diagnostics."""
    diags: list[Diagnostic] = []
    lines = text.split("\n")
    name: str | None = None
    decls: list[_Decl] = []
    for lineno, src in enumerate(lines, start=1):
        try:
            toks = tokenize(src, lineno)
        except _Syntax as e:
            diags.append(_diag(e.msg, e.tok))
            continue
        toks = [t for t in toks if t.kind != "nl"]
        if toks[0].kind == "eof":
            continue
        p = _Parser(toks)
        try:
            if name is None and not p.at("model"):
                diags.append(_diag("missing 'model NAME' header", toks[0]))
                name = ""
            if p.at("model"):
                if name is not None:
                    raise _Syntax("duplicate model header", p.tok)
                p.next()
                name = p.ident().text
            elif p.at("exo"):
                p.next()
                nm = p.ident()
                p.expect(":")
                decls.append(_Decl("exo", nm, p.domain(), None))
            elif p.at("var"):
                p.next()
                nm = p.ident()
                p.expect(":")
                if p.at("auto"):
                    p.next()
                    extras = []
                    if p.at("+"):
                        p.next()
                        extras = p.domain()
                    dom = AutoDomain(tuple(extras))
                else:
                    dom = p.domain()
                p.expect("=")
                decls.append(_Decl("var", nm, dom, p.expr()))
            else:
                raise _Syntax(f"expected 'exo' or 'var', found {p._show(p.tok)}", p.tok)
            if p.tok.kind != "eof":
                raise _Syntax(f"unexpected {p._show(p.tok)} after declaration", p.tok)
        except _Syntax as e:
            if name is None:
                name = ""  # header failed; keep scanning declarations
            diags.append(_diag(e.msg, e.tok))
    if name is None:
        diags.append(Diagnostic("error", "empty model: expected 'model NAME'", 1, 1, 0))

    seen: dict[str, _Decl] = {}
    for d in decls:
        if d.name.text in seen:
            first = seen[d.name.text].name
            diags.append(_diag(f"duplicate definition of {d.name.text} "
                               f"(first defined on line {first.line})", d.name))
        else:
            seen[d.name.text] = d
    for d in decls:
        if d.kind == "var" and seen.get(d.name.text) is d:
            for r in references(d.body):
                if r == d.name.text:
                    diags.append(_diag(f"equation for {r} refers to {r} itself (cycle)", d.name))
                elif r not in seen:
                    diags.append(_diag(f"unknown variable {r} in equation for {d.name.text}",
                                       d.name))
        if d.kind == "exo" or not isinstance(d.domain, AutoDomain):
            if len(set(d.domain)) != len(d.domain):
                diags.append(_diag(f"duplicate values in the domain of {d.name.text}", d.name))
    if not any(d.kind == "var" for d in decls):
        diags.append(Diagnostic("error", "a model needs at least one 'var' declaration",
                                1, 1, 0))
    if diags:
        raise ParseError(diags)

    exo = {d.name.text: d.domain for d in decls if d.kind == "exo"}
    endo = {d.name.text: d.domain for d in decls if d.kind == "var"}
    eqs = {d.name.text: d.body for d in decls if d.kind == "var"}
    try:
        return CausalModel(exo, endo, eqs, name=name, budget=budget)
    except ModelError as e:
        positioned = []
        for dg in e.diagnostics:
            d = seen.get(dg.subject) if dg.subject else None
            if d is not None:
                positioned.append(Diagnostic(dg.severity, dg.message, d.name.line,
                                             d.name.col, len(d.name.text), dg.subject))
            else:
                positioned.append(Diagnostic(dg.severity, dg.message, 1, 1, 0, dg.subject))
        raise ModelError(positioned) from None


def _fmt_domain(dom) -> str:
    return "{" + ", ".join(format_value(v) for v in dom) + "}"


def serialize_model(model: CausalModel) -> str:
    """Canonical DSL text; domains are always written out explicitly."""
    out = [f"model {model.name}"]
    for u, dom in model.exogenous.items():
        out.append(f"exo {u}: {_fmt_domain(dom)}")
    for v, dom in model.endogenous.items():
        out.append(f"var {v}: {_fmt_domain(dom)} = {format_expr(model.equations[v])}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# formulas

def parse_formula(text: str, model: CausalModel | None = None) -> CausalFormula:
    """Parse ``[X <- x, ...] body``; with ``model``, resolve names and domains."""
    try:
        toks = tokenize(text)
    except _Syntax as e:
        raise ParseError([_diag(e.msg, e.tok)]) from None
    toks = [t for t in toks if t.kind != "nl"]
    p = _Parser(toks)
    diags: list[Diagnostic] = []
    interventions: dict[str, Fraction] = {}
    try:
        if p.at("["):
            p.next()
            while True:
                nm = p.ident()
                p.expect("<-")
                vt = p.tok
                val = p.value()
                if nm.text in interventions:
                    diags.append(_diag(f"{nm.text} is intervened on more than once", nm))
                else:
                    interventions[nm.text] = val
                    diags.extend(_resolve(model, nm, val, vt, "intervention"))
                if p.at(","):
                    p.next()
                    continue
                p.expect("]")
                break
        body = _FormulaBody(p, model, diags).or_()
        if p.tok.kind != "eof":
            raise _Syntax(f"unexpected {p._show(p.tok)}", p.tok)
    except _Syntax as e:
        diags.append(_diag(e.msg, e.tok))
    if diags:
        raise ParseError(diags)
    return CausalFormula(interventions, body)


def _resolve(model, nm: Token, val: Fraction, vt: Token, what: str) -> list[Diagnostic]:
    if model is None:
        return []
    if nm.text not in model.index:
        return [_diag(f"unknown variable {nm.text}", nm)]
    if nm.text not in model.endogenous:
        return [_diag(f"{nm.text} is exogenous; {what}s use endogenous variables", nm)]
    try:
        model.value_index(nm.text, val)
    except DomainError as e:
        return [_diag(str(e), vt)]
    return []


class _FormulaBody:
    """Boolean combination of ``X = v`` / ``X != v`` atoms."""

    def __init__(self, p: _Parser, model, diags):
        self.p, self.model, self.diags = p, model, diags

    def or_(self):
        e = self.and_()
        while self.p.at("|"):
            self.p.next()
            e = Binary("|", e, self.and_())
        return e

    def and_(self):
        e = self.not_()
        while self.p.at("&"):
            self.p.next()
            e = Binary("&", e, self.not_())
        return e

    def not_(self):
        if self.p.at("!"):
            self.p.next()
            return Unary("!", self.atom())
        return self.atom()

    def atom(self):
        p = self.p
        if p.at("("):
            p.next()
            e = self.or_()
            p.expect(")")
            return e
        nm = p.ident()
        if not (p.at("=") or p.at("!=")):
            raise _Syntax(f"expected '=' or '!=', found {p._show(p.tok)}", p.tok)
        op = p.next().text
        vt = p.tok
        val = p.value()
        self.diags.extend(_resolve(self.model, nm, val, vt, "atom"))
        return Binary(op, Ref(nm.text), Lit(val))


def format_formula(f: CausalFormula) -> str:
    body = format_expr(f.body)
    if not f.interventions:
        return body
    iv = ", ".join(f"{v}<-{format_value(x)}" for v, x in f.interventions.items())
    return f"[{iv}]({body})"


def parse_assignment(text: str) -> dict[str, Fraction]:
    """Parse ``"U1=75000,U3=2500"`` (the CLI context / setting syntax)."""
    out: dict[str, Fraction] = {}
    if not text.strip():
        return out
    diags = []
    try:
        p = _Parser([t for t in tokenize(text) if t.kind != "nl"])
        while True:
            nm = p.ident()
            p.expect("=")
            val = p.value()
            if nm.text in out:
                diags.append(_diag(f"{nm.text} assigned more than once", nm))
            out[nm.text] = val
            if p.at(","):
                p.next()
                continue
            if p.tok.kind != "eof":
                raise _Syntax(f"unexpected {p._show(p.tok)}", p.tok)
            break
    except _Syntax as e:
        diags.append(_diag(e.msg, e.tok))
    if diags:
        raise ParseError(diags)
    return out


FIXTURES = ("loan", "fire", "hiring", "footnote9")


def fixture_text(name: str) -> str:
    """Source of a bundled example model (``loan``, ``fire``, ``hiring``, ``footnote9``)."""
    name = name.removesuffix(".scm")
    if name not in FIXTURES:
        raise KeyError(f"no bundled model named {name!r}")
    return (resources.files("scmexplain") / "fixtures" / f"{name}.scm").read_text()


def load_fixture(name: str) -> CausalModel:
    return parse_model(fixture_text(name))
