"""A small text syntax for morphisms built with o (composition) and * (tensor).

    expr := term { "o" term }
    term := atom { "*" atom }
    atom := NAME | "id[" names "]" | "c[" NAME "," NAME "]" | "(" expr ")"

`*` binds tighter than `o`; both associate to the left.  Names refer to
generators (morphisms) in an `Env`; the names inside id[...] and c[...] refer
to objects.

>>> parse("mu o (mu * id[H])")
Comp(left=Gen(name='mu'), right=Tens(left=Gen(name='mu'), right=Id(names=('H',))))
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce

from .errors import DslSyntaxError, TypeMismatch, UnboundName
from .linalg import FieldSpec
from .moncat import Mor, compose, ident, swap, tensor


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Id:
    names: tuple


@dataclass(frozen=True)
class Sym:
    a: str
    b: str


@dataclass(frozen=True)
class Comp:
    left: object  # applied second
    right: object


@dataclass(frozen=True)
class Tens:
    left: object
    right: object


@dataclass
class Env:
    field: FieldSpec
    objects: dict = field(default_factory=dict)
    gens: dict = field(default_factory=dict)

    def dim(self, name):
        if name == "K":
            return self.objects.get("K", 1)
        if name not in self.objects:
            raise UnboundName(name)
        return self.objects[name]

    def gen(self, name):
        if name not in self.gens:
            raise UnboundName(name)
        return self.gens[name]

    @classmethod
    def from_json(cls, obj, field=None):
        f = field or FieldSpec.from_json(obj["field"])
        env = cls(f, dict(obj.get("objects", {})))
        for name, g in obj.get("gens", {}).items():
            dom, cod = (_sig_dim(env, g[k]) for k in ("dom", "cod"))
            env.gens[name] = Mor.from_json({"dom": dom, "cod": cod, "mat": g["mat"]}, field=f)
        return env


def _sig_dim(env, sig):
    if isinstance(sig, int):
        return sig
    return reduce(lambda x, y: x * y, (env.dim(n) for n in sig), 1)


# parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only whitespace left
            break
        start = m.start(1) if m.group(1) else m.start(2)
        tok = m.group(1) or m.group(2)
        if m.group(2) and tok not in "*()[],":
            raise DslSyntaxError(f"unexpected character {tok!r}", _byte(text, start))
        out.append((tok, _byte(text, start)))
        pos = m.end()
    out.append(("", _byte(text, len(text))))
    return out


def _byte(text, i):
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)][0]

    def take(self, want=None):
        tok, off = self.toks[self.i]
        if want is not None and tok != want:
            raise DslSyntaxError(f"expected {want!r}, found {tok or 'end of input'!r}", off)
        self.i += 1
        return tok

    def name(self):
        tok, off = self.toks[self.i]
        if not (tok[:1].isalpha() or tok[:1] == "_") or tok == "o":
            raise DslSyntaxError(f"expected a name, found {tok or 'end of input'!r}", off)
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == "o":
            self.take()
            node = Comp(node, self.term())
        return node

    def term(self):
        node = self.atom()
        while self.peek() == "*":
            self.take()
            node = Tens(node, self.atom())
        return node

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok == "id" and self.peek(1) == "[":
            self.take()
            self.take("[")
            names = [self.name()]
            while self.peek() == ",":
                self.take()
                names.append(self.name())
            self.take("]")
            return Id(tuple(names))
        if tok == "c" and self.peek(1) == "[":
            self.take()
            self.take("[")
            a = self.name()
            self.take(",")
            b = self.name()
            self.take("]")
            return Sym(a, b)
        return Gen(self.name())


def parse(text):
    p = _Parser(text)
    node = p.expr()
    tok, off = p.toks[p.i]
    if tok:
        raise DslSyntaxError(f"trailing input {tok!r}", off)
    return node


# checking and evaluation

def typecheck(node, env):
    """Return (dom, cod) dimensions, raising TypeMismatch on bad composites."""
    if isinstance(node, Gen):
        g = env.gen(node.name)
        return g.dom, g.cod
    if isinstance(node, Id):
        d = _sig_dim(env, node.names)
        return d, d
    if isinstance(node, Sym):
        d = env.dim(node.a) * env.dim(node.b)
        return d, d
    ld, lc = typecheck(node.left, env)
    rd, rc = typecheck(node.right, env)
    if isinstance(node, Comp):
        if ld != rc:
            raise TypeMismatch(ld, rc, "composition")
        return rd, lc
    return ld * rd, lc * rc


def evaluate(node, env):
    typecheck(node, env)
    return _eval(node, env)


def _eval(node, env):
    if isinstance(node, Gen):
        return env.gen(node.name)
    if isinstance(node, Id):
        return ident(_sig_dim(env, node.names), env.field)
    if isinstance(node, Sym):
        return swap(env.dim(node.a), env.dim(node.b), env.field)
    left, right = _eval(node.left, env), _eval(node.right, env)
    return compose(left, right) if isinstance(node, Comp) else tensor(left, right)


def eval_text(text, env):
    return evaluate(parse(text), env)


# printing

def to_text(node):
    """Canonical text; parse(to_text(n)) == n."""
    return _show(node, 0)


def _show(node, prec):
    # prec 0: any expression, 1: inside a tensor, 2: right operand
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Id):
        return "id[" + ",".join(node.names) + "]"
    if isinstance(node, Sym):
        return f"c[{node.a},{node.b}]"
    if isinstance(node, Comp):
        s = f"{_show(node.left, 0)} o {_show(node.right, 1)}"
        return f"({s})" if prec >= 1 else s
    s = f"{_show(node.left, 1)} * {_show(node.right, 2)}"
    return f"({s})" if prec >= 2 else s
