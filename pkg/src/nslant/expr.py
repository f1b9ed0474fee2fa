"""Arithmetic expressions for scene files.

Grammar (``^`` is right-associative and binds tighter than unary minus, so
``-t^2`` is ``-(t^2)``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' unary)?
    atom    := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Names are the caller's variables plus the constants ``pi`` and ``e``.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, UnknownFunction

FUNCTIONS = {
    "sin": np.sin, "cos": np.cos, "tan": np.tan,
    "sinh": np.sinh, "cosh": np.cosh, "tanh": np.tanh,
    "exp": np.exp, "log": np.log, "sqrt": np.sqrt, "abs": np.abs,
    "asin": np.arcsin, "acos": np.arccos, "atan": np.arctan,
    "asinh": np.arcsinh, "acosh": np.arccosh, "atanh": np.arctanh,
}
CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN = re.compile(r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = set(variables)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            what = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {op!r}, found {what}", pos)

    def parse(self):
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = Bin(op, node, self.unary())
        return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            arg = self.unary()
            return Neg(arg) if val == "-" else arg
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return Bin("^", base, self.unary())
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if self.peek()[0] == "op" and self.peek()[1] == "(":
                if val not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {val!r}", pos)
                self.take()
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            if val in FUNCTIONS:
                raise ParseError(f"function {val!r} needs an argument", pos + len(val))
            if val in self.variables:
                return Var(val)
            if val in CONSTANTS:
                return Var(val)
            raise ParseError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos)


class Expression:
    """Parsed expression over named variables; evaluation broadcasts with numpy."""

    def __init__(self, text, variables=("t",)):
        if not isinstance(text, str) or not text.strip():
            raise ParseError("empty expression", 0)
        self.text = text
        self.variables = tuple(variables)
        self.tree = _Parser(text, self.variables).parse()

    @classmethod
    def from_tree(cls, tree, variables):
        obj = cls.__new__(cls)
        obj.tree = tree
        obj.variables = tuple(variables)
        obj.text = to_string(tree)
        return obj

    def __call__(self, *args, **kwargs):
        env = dict(zip(self.variables, args))
        env.update(kwargs)
        missing = set(self.variables) - set(env)
        if missing:
            raise TypeError(f"missing values for {sorted(missing)}")
        shape = np.broadcast(*[np.asarray(v) for v in env.values()]).shape if env else ()
        with np.errstate(all="ignore"):
            out = _eval(self.tree, env)
        return np.broadcast_to(np.asarray(out, dtype=float), shape).copy() if shape else float(out)

    def diff(self, var):
        return Expression.from_tree(simplify(_diff(self.tree, var)), self.variables)

    def __str__(self):
        return to_string(self.tree)

    def __repr__(self):
        return f"Expression({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, Expression) and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)


def parse_expression(text, variables=("t",)):
    return Expression(text, variables)


def _eval(node, env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return env[node.name] if node.name in env else CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -_eval(node.arg, env)
    if isinstance(node, Call):
        return FUNCTIONS[node.fn](_eval(node.arg, env))
    a, b = _eval(node.left, env), _eval(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return np.divide(a, b)
    return np.power(a, b)


# ---------------------------------------------------------------------------
# printing: minimal parentheses, re-parses to the same tree

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _fmt_num(v):
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def to_string(node):
    return _show(node)


def _prec(node):
    if isinstance(node, Bin):
        return _PREC[node.op]
    if isinstance(node, Neg) or (isinstance(node, Num) and node.value < 0):
        return _PREC["neg"]
    return 5


def _show(node):
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({_show(node.arg)})"
    if isinstance(node, Neg):
        inner = _show(node.arg)
        # -(a^b) prints as -a^b
        return "-" + (inner if _prec(node.arg) >= _PREC["neg"] else f"({inner})")
    p = _PREC[node.op]
    left, right = _show(node.left), _show(node.right)
    if node.op == "^":
        # left operand must be an atom; right may be a unary or power chain
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < _PREC["neg"]:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    # left-associative: equal precedence on the right needs parentheses
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# ---------------------------------------------------------------------------
# symbolic differentiation


def _diff(node, var):
    if isinstance(node, Num):
        return Num(0.0)
    if isinstance(node, Var):
        return Num(1.0 if node.name == var else 0.0)
    if isinstance(node, Neg):
        return Neg(_diff(node.arg, var))
    if isinstance(node, Call):
        u = node.arg
        du = _diff(u, var)
        return Bin("*", _dcall(node.fn, u), du)
    f, g = node.left, node.right
    df, dg = _diff(f, var), _diff(g, var)
    if node.op in "+-":
        return Bin(node.op, df, dg)
    if node.op == "*":
        return Bin("+", Bin("*", df, g), Bin("*", f, dg))
    if node.op == "/":
        return Bin("/", Bin("-", Bin("*", df, g), Bin("*", f, dg)), Bin("^", g, Num(2.0)))
    # f^g
    if _is_const(g, var):
        return Bin("*", Bin("*", g, Bin("^", f, Bin("-", g, Num(1.0)))), df)
    return Bin("*", node, Bin("+", Bin("*", dg, Call("log", f)), Bin("/", Bin("*", g, df), f)))


def _dcall(fn, u):
    one = Num(1.0)
    table = {
        "sin": lambda: Call("cos", u),
        "cos": lambda: Neg(Call("sin", u)),
        "tan": lambda: Bin("+", one, Bin("^", Call("tan", u), Num(2.0))),
        "sinh": lambda: Call("cosh", u),
        "cosh": lambda: Call("sinh", u),
        "tanh": lambda: Bin("-", one, Bin("^", Call("tanh", u), Num(2.0))),
        "exp": lambda: Call("exp", u),
        "log": lambda: Bin("/", one, u),
        "sqrt": lambda: Bin("/", one, Bin("*", Num(2.0), Call("sqrt", u))),
        "abs": lambda: Bin("/", u, Call("abs", u)),
        "asin": lambda: Bin("/", one, Call("sqrt", Bin("-", one, Bin("^", u, Num(2.0))))),
        "acos": lambda: Neg(Bin("/", one, Call("sqrt", Bin("-", one, Bin("^", u, Num(2.0)))))),
        "atan": lambda: Bin("/", one, Bin("+", one, Bin("^", u, Num(2.0)))),
        "asinh": lambda: Bin("/", one, Call("sqrt", Bin("+", Bin("^", u, Num(2.0)), one))),
        "acosh": lambda: Bin("/", one, Call("sqrt", Bin("-", Bin("^", u, Num(2.0)), one))),
        "atanh": lambda: Bin("/", one, Bin("-", one, Bin("^", u, Num(2.0)))),
    }
    return table[fn]()


def _is_const(node, var):
    if isinstance(node, Num):
        return True
    if isinstance(node, Var):
        return node.name != var
    if isinstance(node, Neg):
        return _is_const(node.arg, var)
    if isinstance(node, Call):
        return _is_const(node.arg, var)
    return _is_const(node.left, var) and _is_const(node.right, var)


def _zero(n):
    return isinstance(n, Num) and n.value == 0.0


def _one(n):
    return isinstance(n, Num) and n.value == 1.0


def simplify(node):
    """Fold constants and drop trivial terms (0 +, 1 *, ^1)."""
    if isinstance(node, Neg):
        a = simplify(node.arg)
        if isinstance(a, Num):
            return Num(-a.value) if a.value != 0 else Num(0.0)
        if isinstance(a, Neg):
            return a.arg
        return Neg(a)
    if isinstance(node, Call):
        return Call(node.fn, simplify(node.arg))
    if not isinstance(node, Bin):
        return node
    a, b = simplify(node.left), simplify(node.right)
    if isinstance(a, Num) and isinstance(b, Num) and a.value >= 0 and b.value >= 0:
        with np.errstate(all="ignore"):
            v = float(_eval(Bin(node.op, a, b), {}))
        if np.isfinite(v) and v >= 0:
            return Num(v)
    op = node.op
    if op == "+":
        if _zero(a):
            return b
        if _zero(b):
            return a
    if op == "-":
        if _zero(b):
            return a
        if _zero(a):
            return simplify(Neg(b))
    if op == "*":
        if _zero(a) or _zero(b):
            return Num(0.0)
        if _one(a):
            return b
        if _one(b):
            return a
    if op == "/":
        if _zero(a):
            return Num(0.0)
        if _one(b):
            return a
    if op == "^":
        if _one(b):
            return a
        if _zero(b):
            return Num(1.0)
    return Bin(op, a, b)
