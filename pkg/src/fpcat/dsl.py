"""Line-oriented script language for defining objects and running commands.

Grammar (one statement per line, ``#`` starts a comment)::

    ring NAME = zmod INT | table FILE | builtin NAME
    module NAME = coker RING (left|right) MATRIX [gens INT]
    module NAME = free RING (left|right) INT
    morphism NAME : MODULE -> MODULE images [e, ...]      e = INT | (INT, ...) | [INT, ...]
    functor NAME = fp MORPHISM | yoneda MODULE | tensor MODULE
                 | dual FUNCTOR | dr FUNCTOR | dl FUNCTOR
    eval F at M | hom M N | tensor M N | nat F G | defect F
    dual F | dr F | dl F | gamma F | delta F | fourterm F | purity I P
    check (adjunction|duality|yoneda) [NAME ...] [key=value ...]
    suite [key=value ...]

Names, rings and sides are checked while parsing, so a script that parses
only fails at run time on size or search bounds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import FpcatError

COMMANDS = ("eval", "hom", "tensor", "nat", "defect", "dual", "dr", "dl", "gamma", "delta",
            "fourterm", "purity", "check", "suite")
CHECKS = ("adjunction", "duality", "yoneda")
FUNCTOR_FORMS = ("fp", "yoneda", "tensor", "dual", "dr", "dl")


class ScriptError(FpcatError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.span = (line, column)
        self.line = line
        self.column = column
        self.bare = message


_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<arrow>->)
  | (?P<string>"[^"]*")
  | (?P<int>-?\d+)
  | (?P<word>[A-Za-z_.~/][\w.~/^]*)
  | (?P<sym>[=:\[\](),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize_line(text, lineno):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ScriptError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tok = m.group(kind)
            if kind == "string":
                tok = tok[1:-1]
            out.append(Token(kind, tok, lineno, pos + 1))
        pos = m.end()
    return out


@dataclass(frozen=True)
class Statement:
    kind: str
    name: str = ""
    args: tuple = ()
    options: tuple = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def to_source(self):
        opts = " ".join(f"{k}={v}" for k, v in self.options)
        a = self.args
        if self.kind == "ring":
            src = f"ring {self.name} = {a[0]} {_quote(a[1])}"
        elif self.kind == "module":
            if a[0] == "free":
                src = f"module {self.name} = free {a[1]} {a[2]} {a[3]}"
            else:
                src = f"module {self.name} = coker {a[1]} {a[2]} {_matrix(a[3])}"
                if a[4] is not None:
                    src += f" gens {a[4]}"
        elif self.kind == "morphism":
            src = f"morphism {self.name} : {a[0]} -> {a[1]} images [{', '.join(_vec(v) for v in a[2])}]"
        elif self.kind == "functor":
            src = f"functor {self.name} = {a[0]} {a[1]}"
        elif self.kind == "eval":
            src = f"eval {a[0]} at {a[1]}"
        elif self.kind == "check":
            src = " ".join(["check", *a])
        else:
            src = " ".join([self.kind, *a])
        return f"{src} {opts}".rstrip() if opts else src


def _quote(text):
    return f'"{text}"' if re.fullmatch(r"[\w.~/^]+", text) is None else text


def _matrix(rows):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"


def _vec(v):
    return str(v[0]) if len(v) == 1 else "(" + ", ".join(str(x) for x in v) + ")"


@dataclass
class Program:
    statements: list

    def __len__(self):
        return len(self.statements)

    def __eq__(self, other):
        return isinstance(other, Program) and self.statements == other.statements

    def to_source(self):
        return "".join(s.to_source() + "\n" for s in self.statements)


# ----------------------------------------------------------------------------
# parser


@dataclass
class _Sym:
    kind: str
    ring: str = ""
    side: str = ""


class _Parser:
    def __init__(self, tokens, lineno, symbols):
        self.toks = tokens
        self.i = 0
        self.line = lineno
        self.symbols = symbols
        self.option_tokens = {}

    def error(self, message, tok=None):
        tok = tok or (self.toks[self.i] if self.i < len(self.toks) else None)
        col = tok.column if tok else (self.toks[-1].column + len(self.toks[-1].text) if self.toks else 1)
        raise ScriptError(message, self.line, col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, what="token"):
        tok = self.peek()
        if tok is None:
            self.error(f"expected {what} at end of line")
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.next(repr(text))
        if tok.text != text:
            self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def word(self, what="name"):
        tok = self.next(what)
        if tok.kind != "word":
            self.error(f"expected {what}, found {tok.text!r}", tok)
        return tok

    def integer(self, what="integer"):
        tok = self.next(what)
        if tok.kind != "int":
            self.error(f"expected {what}, found {tok.text!r}", tok)
        return int(tok.text)

    def done(self):
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")

    # name handling
    def new_name(self):
        tok = self.word("name")
        if tok.text in self.symbols:
            self.error(f"name {tok.text} is already defined", tok)
        return tok

    def ref(self, kind):
        tok = self.word(f"{kind} name")
        sym = self.symbols.get(tok.text)
        if sym is None:
            self.error(f"undefined name {tok.text}", tok)
        if kind and sym.kind != kind:
            self.error(f"{tok.text} is a {sym.kind}, expected a {kind}", tok)
        return tok.text, sym, tok

    def options(self):
        opts = []
        while self.peek() is not None:
            key = self.word("option name")
            self.expect("=")
            val = self.next("option value")
            if val.kind not in ("word", "int", "string"):
                self.error(f"bad option value {val.text!r}", val)
            opts.append((key.text, val.text))
            self.option_tokens[key.text] = (key, val)
        return tuple(opts)

    # rows and vectors
    def ring_vector(self, close):
        out = []
        while True:
            out.append(self.integer("ring element"))
            tok = self.next(f"',' or {close!r}")
            if tok.text == close:
                return tuple(out)
            if tok.text != ",":
                self.error(f"expected ',' or {close!r}", tok)

    def matrix(self):
        self.expect("[")
        rows = []
        if self.peek() is not None and self.peek().text == "]":
            self.next()
            return ()
        while True:
            self.expect("[")
            if self.peek() is not None and self.peek().text == "]":
                self.next()
                rows.append(())
            else:
                rows.append(self.ring_vector("]"))
            tok = self.next("',' or ']'")
            if tok.text == "]":
                return tuple(rows)
            if tok.text != ",":
                self.error("expected ',' or ']'", tok)

    def images(self):
        self.expect("[")
        out = []
        if self.peek() is not None and self.peek().text == "]":
            self.next()
            return ()
        while True:
            tok = self.next("image")
            if tok.kind == "int":
                out.append((int(tok.text),))
            elif tok.text in ("(", "["):
                out.append(self.ring_vector(")" if tok.text == "(" else "]"))
            else:
                self.error(f"expected an image, found {tok.text!r}", tok)
            tok = self.next("',' or ']'")
            if tok.text == "]":
                return tuple(out)
            if tok.text != ",":
                self.error("expected ',' or ']'", tok)

    # statements
    def statement(self):
        head = self.word("statement")
        start = (head.line, head.column)
        kw = head.text
        if kw == "ring":
            name = self.new_name()
            self.expect("=")
            form = self.word("ring form")
            if form.text == "zmod":
                arg = str(self.integer("modulus"))
            elif form.text in ("table", "builtin"):
                tok = self.next("file or ring name")
                if tok.kind not in ("word", "string"):
                    self.error("expected a file path or ring name", tok)
                arg = tok.text
            else:
                self.error(f"unknown ring form {form.text!r}", form)
            self.done()
            self.symbols[name.text] = _Sym("ring", name.text)
            return Statement("ring", name.text, (form.text, arg), (), *start)
        if kw == "module":
            name = self.new_name()
            self.expect("=")
            form = self.word("module form")
            if form.text not in ("coker", "free"):
                self.error(f"unknown module form {form.text!r}", form)
            ring, _, _ = self.ref("ring")
            side = self.word("side")
            if side.text not in ("left", "right"):
                self.error(f"side must be left or right, found {side.text!r}", side)
            if form.text == "free":
                args = ("free", ring, side.text, self.integer("rank"))
            else:
                rows = self.matrix()
                gens = None
                if self.peek() is not None:
                    kwt = self.word("'gens'")
                    if kwt.text != "gens":
                        self.error(f"expected 'gens', found {kwt.text!r}", kwt)
                    gens = self.integer("generator count")
                elif not rows or not rows[0]:
                    self.error("a relation matrix without columns needs 'gens N'")
                args = ("coker", ring, side.text, rows, gens)
            self.done()
            self.symbols[name.text] = _Sym("module", ring, side.text)
            return Statement("module", name.text, args, (), *start)
        if kw == "morphism":
            name = self.new_name()
            self.expect(":")
            src, s1, _ = self.ref("module")
            self.expect("->")
            dst, s2, tok = self.ref("module")
            if (s1.ring, s1.side) != (s2.ring, s2.side):
                self.error(f"{src} and {dst} are not modules on the same side of one ring", tok)
            kwt = self.word("'images'")
            if kwt.text != "images":
                self.error(f"expected 'images', found {kwt.text!r}", kwt)
            imgs = self.images()
            self.done()
            self.symbols[name.text] = _Sym("morphism", s1.ring, s1.side)
            return Statement("morphism", name.text, (src, dst, imgs), (), *start)
        if kw == "functor":
            name = self.new_name()
            self.expect("=")
            form = self.word("functor form")
            if form.text not in FUNCTOR_FORMS:
                self.error(f"unknown functor form {form.text!r}", form)
            want = {"fp": "morphism", "yoneda": "module", "tensor": "module"}.get(form.text, "functor")
            ref, sym, _ = self.ref(want)
            side = sym.side if form.text in ("fp", "yoneda") else _flip(sym.side)
            self.done()
            self.symbols[name.text] = _Sym("functor", sym.ring, side)
            return Statement("functor", name.text, (form.text, ref), (), *start)
        if kw not in COMMANDS:
            self.error(f"unknown statement {kw!r}", head)
        return self.command(kw, start)

    def command(self, kw, start):
        if kw == "eval":
            f, fs, _ = self.ref("functor")
            self.expect("at")
            m, ms, tok = self.ref("module")
            self._same(fs, ms, tok, f"{f} does not take {ms.side} modules over {ms.ring}")
            self.done()
            return Statement("eval", "", (f, m), (), *start)
        if kw in ("hom", "tensor"):
            a, sa, _ = self.ref("module")
            b, sb, tok = self.ref("module")
            if sa.ring != sb.ring:
                self.error(f"{a} and {b} are over different rings", tok)
            if kw == "hom" and sa.side != sb.side:
                self.error("Hom needs two modules on the same side", tok)
            if kw == "tensor" and not (sa.side == "right" and sb.side == "left"):
                self.error("tensor needs a right module and a left module", tok)
            self.done()
            return Statement(kw, "", (a, b), (), *start)
        if kw == "nat":
            f, fs, _ = self.ref("functor")
            g, gs, tok = self.ref("functor")
            self._same(fs, gs, tok, f"{f} and {g} have different variable sides")
            self.done()
            return Statement(kw, "", (f, g), (), *start)
        if kw in ("defect", "dual", "dr", "dl", "gamma", "delta", "fourterm"):
            f, _, _ = self.ref("functor")
            self.done()
            return Statement(kw, "", (f,), (), *start)
        if kw == "purity":
            i, si, _ = self.ref("morphism")
            p, sp, tok = self.ref("morphism")
            self._same(si, sp, tok, f"{i} and {p} are not composable")
            self.done()
            return Statement(kw, "", (i, p), (), *start)
        if kw == "check":
            what = self.word("check name")
            if what.text not in CHECKS:
                self.error(f"unknown check {what.text!r}", what)
            names = []
            while self.peek() is not None and self.peek().kind == "word" and (
                    self.i + 1 >= len(self.toks) or self.toks[self.i + 1].text != "="):
                n, _, _ = self.ref("functor")
                names.append(n)
            opts = self.options()
            self._check_opts(opts, ("ring", "maxgens", "samples"))
            return Statement("check", "", (what.text, *names), opts, *start)
        # suite
        opts = self.options()
        self._check_opts(opts, ("ring", "maxgens", "samples"))
        return Statement("suite", "", (), opts, *start)

    def _same(self, a, b, tok, message):
        if (a.ring, a.side) != (b.ring, b.side):
            self.error(message, tok)

    def _check_opts(self, opts, allowed):
        for k, v in opts:
            key, val = self.option_tokens[k]
            if k not in allowed:
                self.error(f"unknown option {k!r}", key)
            if k == "ring":
                sym = self.symbols.get(v)
                if sym is None:
                    self.error(f"undefined name {v}", val)
                if sym.kind != "ring":
                    self.error(f"{v} is a {sym.kind}, expected a ring", val)
            elif not v.lstrip("-").isdigit():
                self.error(f"option {k} needs an integer", val)


def _flip(side):
    return "left" if side == "right" else "right"


def parse_script(text):
    symbols = {}
    statements = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(line, lineno)
        if not toks:
            continue
        statements.append(_Parser(toks, lineno, symbols).statement())
    return Program(statements)
