"""
Recursive-descent parser for field elements, rational functions and plane
maps written as pairs "(e1, e2)".

    map    := '(' expr ',' expr ')'
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' '-'? INT)?
    atom   := INT | NAME | '(' expr ')'

Names are the coordinates (x, y) or (z, t), and ``zeta`` for the generator
of a cyclotomic field. With (x, y) the pair is (image of x, image of y);
with (z, t) it is (image of z, image of t), z being the fibre coordinate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from cremona.birmap import PlaneMap
from cremona.errors import ParseError, ShapeError
from cremona.exactfield import FieldKind, FunctionField
from cremona.moebius import MoebiusElt

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")

COORDS = {"xy": ("x", "y"), "zt": ("t", "z")}  # (base, fibre)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append(Token("op", ch, start))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


# AST nodes are plain tuples: ("num", int) ("var", name) ("neg", e)
# ("add"|"sub"|"mul"|"div", a, b) ("pow", e, n) ("pair", a, b)


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.i]

    def eat(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.cur
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text else kind
            got = repr(t.text) if t.kind != "end" else "end of input"
            raise ParseError(f"expected {want}, found {got}", t.pos)
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.cur.kind == "op" and self.cur.text == text

    def parse_expr_only(self):
        e = self.expr()
        self.eat(kind="end")
        return e

    def parse_map(self):
        self.eat("(")
        a = self.expr()
        self.eat(",")
        b = self.expr()
        self.eat(")")
        self.eat(kind="end")
        return ("pair", a, b)

    def expr(self):
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.eat().text
            e = ("add" if op == "+" else "sub", e, self.term())
        return e

    def term(self):
        e = self.unary()
        while self.at("*") or self.at("/"):
            op = self.eat().text
            e = ("mul" if op == "*" else "div", e, self.unary())
        return e

    def unary(self):
        if self.at("-"):
            self.eat()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.eat()
            sign = 1
            if self.at("-"):
                self.eat()
                sign = -1
            n = int(self.eat(kind="int").text)
            return ("pow", base, sign * n)
        return base

    def atom(self):
        t = self.cur
        if t.kind == "int":
            self.eat()
            return ("num", int(t.text))
        if t.kind == "name":
            self.eat()
            return ("var", t.text, t.pos)
        if self.at("("):
            self.eat()
            e = self.expr()
            if self.at(","):
                raise ParseError("a pair is only allowed at the top level", self.cur.pos)
            self.eat(")")
            return e
        got = repr(t.text) if t.kind != "end" else "end of input"
        raise ParseError(f"unexpected {got}", t.pos)


def _names(node, acc: set) -> set:
    if node[0] == "var":
        acc.add(node[1])
    else:
        for child in node[1:]:
            if isinstance(child, tuple):
                _names(child, acc)
    return acc


def evaluate(node, env: dict):
    tag = node[0]
    if tag == "num":
        return env["__one__"] * node[1]
    if tag == "var":
        if node[1] not in env:
            raise ParseError(f"unknown name {node[1]!r}", node[2])
        return env[node[1]]
    if tag == "neg":
        return -evaluate(node[1], env)
    if tag == "pow":
        base = evaluate(node[1], env)
        if node[2] < 0 and not base:
            raise ParseError("zero raised to a negative power")
        return base ** node[2]
    a, b = evaluate(node[1], env), evaluate(node[2], env)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        if not b:
            raise ParseError("division by zero")
        return a / b
    raise ParseError(f"unexpected node {tag}")


def _constants(kind: FieldKind) -> dict:
    if kind.tag == "cyclo":
        return {"zeta": kind.gen()}
    return {}


def parse_element(src: str, kind: FieldKind):
    """A constant expression such as "3/4", "-2" or "zeta^2 + 1"."""
    node = Parser(src).parse_expr_only()
    env = {"__one__": kind.one(), **_constants(kind)}
    return evaluate(node, env)


def parse_ratfunc(src: str, kind: FieldKind, var: str = "x"):
    F = FunctionField(kind, var)
    node = Parser(src).parse_expr_only()
    env = {"__one__": F.one(), var: F.gen()}
    env.update({k: F(v) for k, v in _constants(kind).items()})
    return evaluate(node, env)


def detect_style(node) -> str:
    names = _names(node, set()) - {"zeta"}
    xy = names & {"x", "y"}
    zt = names & {"z", "t"}
    if xy and zt:
        raise ParseError("mix of (x, y) and (z, t) coordinates")
    return "zt" if zt else "xy"


def parse_map(src: str, kind: FieldKind, style: str | None = None) -> PlaneMap:
    """A de Jonquieres map written as a coordinate pair."""
    node = Parser(src).parse_map()
    style = style or detect_style(node)
    base_var, fib_var = COORDS[style]
    F1 = FunctionField(kind, base_var)
    F2 = FunctionField(F1, fib_var)
    env = {"__one__": F2.one(), base_var: F2(F1.gen()), fib_var: F2.gen()}
    env.update({k: F2(F1(v)) for k, v in _constants(kind).items()})
    first, second = evaluate(node[1], env), evaluate(node[2], env)
    base_img, fib_img = (first, second) if style == "xy" else (second, first)

    # base component: a homography of the base coordinate alone
    if base_img.num.degree > 0 or base_img.den.degree > 0:
        raise ShapeError(f"the {base_var}-component must not involve {fib_var}")
    g = base_img.num.lc() / base_img.den.lc()  # element of k(base)
    if g.num.degree > 1 or g.den.degree > 1:
        raise ShapeError(f"the {base_var}-component must be a homography of {base_var}")
    a, b = g.num.coeff(1), g.num.coeff(0)
    c, d = g.den.coeff(1), g.den.coeff(0)
    if not (a * d - b * c):
        raise ShapeError(f"the {base_var}-component is constant")
    gamma = MoebiusElt(a, b, c, d, kind)

    # fibre component: (A y + B)/(C y + D) with A D - B C != 0 in k(base)
    n, dn = fib_img.num, fib_img.den
    if n.degree > 1 or dn.degree > 1:
        raise ShapeError(f"the {fib_var}-component must be a homography of {fib_var}")
    A, B, C, D = n.coeff(1), n.coeff(0), dn.coeff(1), dn.coeff(0)
    if not (A * D - B * C):
        raise ShapeError(f"the {fib_var}-component does not depend on {fib_var}")
    M = MoebiusElt(A, B, C, D, F1)
    return PlaneMap(gamma, M)


def format_map(f: PlaneMap, style: str = "xy") -> str:
    base_var, fib_var = COORDS[style]
    F1 = f.field.renamed(base_var)
    gamma_s = f.gamma.to_str(base_var)
    M_s = MoebiusElt(*f.M.matrix(), F1).to_str(fib_var)
    return f"({gamma_s}, {M_s})" if style == "xy" else f"({M_s}, {gamma_s})"


def parse_element_list(src: str, kind: FieldKind) -> list:
    """Comma-separated constants; the empty string gives []."""
    src = src.strip()
    if src in ("", "{}"):
        return []
    src = src.strip("{}")
    return [parse_element(part, kind) for part in _split_top(src)]


def _split_top(src: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in src:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return parts
