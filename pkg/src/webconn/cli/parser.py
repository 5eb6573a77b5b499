"""Expression and web-file parsing.

Expressions use integers, the variables x, y, p, the operators + - * / ^
and parentheses.  Values are polynomials in p whose coefficients are
rational functions of x and y, so division is only allowed by p-free
expressions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import AmbiguityError, ParseError, VariableError
from ..kernel import Form1, Form2, RatFunc, X, Y
from ..kernel import ppoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(dx\^dy|dx|dy|[A-Za-z_]\w*)|(\*\*|[-+*/^()\[\],]))")


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    column: int  # 1-based


def tokenize(text: str, line: int = 1, column0: int = 1):
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text[pos:]) - len(text[pos:].lstrip()) + pos
            raise ParseError(f"unexpected character {text[bad]!r}", line, column0 + bad)
        start = m.start(m.lastindex)
        kind = {1: "num", 2: "name", 3: "op"}[m.lastindex]
        tok = m.group(m.lastindex)
        out.append(Token(kind, "^" if tok == "**" else tok, column0 + start))
        pos = m.end()
    out.append(Token("end", "", column0 + len(text)))
    return out


_VARS = {"x": [RatFunc(X)], "y": [RatFunc(Y)], "p": [RatFunc(), RatFunc(1)]}


class _Parser:
    def __init__(self, tokens, line, allow_p=True, stop=()):
        self.toks = tokens
        self.i = 0
        self.line = line
        self.allow_p = allow_p
        self.stop = set(stop)

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        return ParseError(msg, self.line, tok.column)

    def eat(self, text):
        if self.cur.text != text:
            found = self.cur.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        self.i += 1

    def at_end(self):
        return self.cur.kind == "end" or (self.cur.kind == "name" and self.cur.text in self.stop)

    def parse(self):
        if self.at_end():
            raise self.error("empty expression")
        v = self.expr()
        if not self.at_end():
            raise self.error(f"unexpected {self.cur.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.cur.text in ("+", "-"):
            op = self.cur.text
            self.i += 1
            w = self.term()
            v = ppoly.add(v, w) if op == "+" else ppoly.sub(v, w)
        return v

    def term(self):
        v = self.unary()
        while self.cur.text in ("*", "/"):
            op = self.cur
            self.i += 1
            w = self.unary()
            if op.text == "*":
                v = ppoly.mul(v, w)
            else:
                if len(w) > 1:
                    raise self.error("division by an expression containing p", op)
                if not w:
                    raise self.error("division by zero", op)
                v = ppoly.scale(v, w[0].inv())
        return v

    def unary(self):
        if self.cur.text == "-":
            self.i += 1
            return ppoly.scale(self.unary(), -1)
        if self.cur.text == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.cur.text == "^":
            op = self.cur
            self.i += 1
            neg = False
            if self.cur.text == "-":
                neg = True
                self.i += 1
            if self.cur.kind != "num":
                raise self.error("exponent must be an integer literal")
            n = int(self.cur.text)
            self.i += 1
            if neg:
                if len(base) != 1:
                    raise self.error("negative power of an expression containing p or of zero", op)
                return [base[0].inv() ** n]
            out = [RatFunc(1)]
            for _ in range(n):
                out = ppoly.mul(out, base)
            return out
        return base

    def atom(self):
        tok = self.cur
        if tok.kind == "num":
            self.i += 1
            return ppoly.trim([RatFunc(int(tok.text))])
        if tok.kind == "name":
            if tok.text not in _VARS:
                raise self.error(f"unknown name {tok.text!r}")
            if tok.text == "p" and not self.allow_p:
                raise VariableError("slope expressions may not contain p", self.line, tok.column)
            self.i += 1
            return list(_VARS[tok.text])
        if tok.text == "(":
            self.i += 1
            v = self.expr()
            self.eat(")")
            return v
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")


def parse_expression(text: str, allow_p: bool = True, line: int = 1, column: int = 1):
    """Parse to a p-polynomial (list of RatFunc, lowest power first)."""
    return _Parser(tokenize(text, line, column), line, allow_p).parse()


def parse_ratfunc(text: str, line: int = 1, column: int = 1) -> RatFunc:
    v = parse_expression(text, allow_p=False, line=line, column=column)
    return v[0] if v else RatFunc()


def _form_terms(text: str):
    toks = tokenize(text)
    terms, cur, depth = [], [], 0
    for t in toks:
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
        if depth == 0 and t.kind == "name" and t.text in ("dx", "dy", "dx^dy"):
            if cur and cur[0].text == "+":
                cur = cur[1:]
            if not cur:
                raise ParseError(f"missing coefficient before {t.text}", 1, t.column)
            terms.append((t.text, cur + [Token("end", "", t.column)]))
            cur = []
        elif t.kind != "end":
            cur.append(t)
    if cur:
        raise ParseError("trailing text after the last differential", 1, cur[0].column)
    return terms


def parse_form1(text: str) -> Form1:
    """Inverse of ``str(Form1)``."""
    if text.strip() == "0":
        return Form1()
    c = {"dx": RatFunc(), "dy": RatFunc()}
    for name, toks in _form_terms(text):
        if name not in c:
            raise ParseError(f"unexpected {name} in a 1-form", 1)
        v = _Parser(toks, 1, allow_p=False).parse()
        c[name] = c[name] + (v[0] if v else RatFunc())
    return Form1(c["dx"], c["dy"])


def parse_form2(text: str) -> Form2:
    if text.strip() == "0":
        return Form2()
    acc = RatFunc()
    for name, toks in _form_terms(text):
        if name != "dx^dy":
            raise ParseError(f"unexpected {name} in a 2-form", 1)
        v = _Parser(toks, 1, allow_p=False).parse()
        acc = acc + (v[0] if v else RatFunc())
    return Form2(acc)


# -- web description files -------------------------------------------------------

_KEYS = ("degree", "F", "slopes", "base_point", "experimental")


@dataclass(frozen=True)
class WebSpecFile:
    degree: int
    F: tuple | None = None  # p-polynomial, lowest power first
    slopes: tuple | None = None
    base_point: tuple = (Fraction(0), Fraction(0))
    options: dict = field(default_factory=dict, compare=False, hash=False)

    def echo(self) -> str:
        """Canonical file text; parsing it gives back an equal spec."""
        lines = [f"degree = {self.degree}"]
        if self.F is not None:
            lines.append(f"F = {ppoly.to_string(list(self.F))}")
        else:
            lines.append("slopes = [" + ", ".join(f"({s})" for s in self.slopes) + "]")
        lines.append(f"base_point = {self.base_point[0]} {self.base_point[1]}")
        for k in sorted(self.options):
            lines.append(f"{k} = {str(self.options[k]).lower()}")
        return "\n".join(lines) + "\n"


def _split_list(body: str, line: int, col: int):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((body[start:i], col + start))
            start = i + 1
    parts.append((body[start:], col + start))
    if len(parts) == 1 and parts[0][0].strip() == "":
        return []
    for text, c in parts:
        if text.strip() == "":
            raise ParseError("empty slope entry", line, c)
    return parts


def _rational(text: str, line: int, col: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", line, col) from None


def parse_spec(text: str) -> WebSpecFile:
    seen = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", ln, len(body) - len(body.lstrip()) + 1)
        key, value = body.split("=", 1)
        vcol = len(key) + 2 + (len(value) - len(value.lstrip()))
        key = key.strip()
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", ln, 1)
        if key in seen:
            raise ParseError(f"duplicate key {key!r}", ln, 1)
        seen[key] = (value.strip(), ln, vcol)
    if "F" in seen and "slopes" in seen:
        raise AmbiguityError("give either F or slopes, not both", seen["slopes"][1], 1)
    if "F" not in seen and "slopes" not in seen:
        raise ParseError("missing F or slopes")
    if "degree" not in seen:
        raise ParseError("missing degree")
    dv, dl, dc = seen["degree"]
    if not re.fullmatch(r"\d+", dv):
        raise ParseError(f"degree must be a positive integer, got {dv!r}", dl, dc)
    degree = int(dv)
    F = slopes = None
    if "F" in seen:
        v, l, c = seen["F"]
        F = tuple(parse_expression(v, True, l, c))
    else:
        v, l, c = seen["slopes"]
        if not (v.startswith("[") and v.endswith("]")):
            raise ParseError("slopes must be a bracketed list", l, c)
        slopes = tuple(_slope(t, l, off) for t, off in _split_list(v[1:-1], l, c + 1))
    bp = (Fraction(0), Fraction(0))
    if "base_point" in seen:
        v, l, c = seen["base_point"]
        parts = v.replace(",", " ").split()
        if len(parts) != 2:
            raise ParseError("base_point needs two rational numbers", l, c)
        bp = (_rational(parts[0], l, c), _rational(parts[1], l, c))
    options = {}
    if "experimental" in seen:
        v, l, c = seen["experimental"]
        if v.lower() not in ("true", "false"):
            raise ParseError("experimental must be true or false", l, c)
        options["experimental"] = v.lower() == "true"
    return WebSpecFile(degree, F, slopes, bp, options)


def _slope(text: str, line: int, col: int) -> RatFunc:
    lead = len(text) - len(text.lstrip())
    return parse_ratfunc(text.strip(), line, col + lead)
