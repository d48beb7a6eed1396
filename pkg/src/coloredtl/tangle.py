"""A small expression language for tangles on coloured strands.

::

    expr := term (term)*
    term := 's' INT ('^-1')? | 'e(' INT ')' | 'jw(' INT ')' | 'twist(' INT ')' | '(' expr ')'

Juxtaposition is composition, written in algebra order: ``s1 e(2)`` has
``s1`` on top.  Terms are separated by whitespace; ``^-1`` must follow its
generator directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .recoupling import color_embed, jones_wenzl
from .skein import PlanarDiagram, SkeinElement, StrandMismatchError, braid_to_skein, compose

__all__ = [
    "TangleSyntaxError",
    "Gen",
    "Cup",
    "Projector",
    "Twist",
    "Product",
    "parse_tangle",
]


class TangleSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Gen:
    index: int
    inverse: bool = False


@dataclass(frozen=True)
class Cup:
    index: int


@dataclass(frozen=True)
class Projector:
    n: int


@dataclass(frozen=True)
class Twist:
    m: int


@dataclass(frozen=True)
class Product:
    factors: tuple["Term", ...]

    def braid_word(self) -> list[int] | None:
        """The expression as a braid word on ``k`` strands, or ``None`` if it has other pieces."""
        out: list[int] = []
        for f in self.factors:
            if isinstance(f, Gen):
                out.append(-f.index if f.inverse else f.index)
            elif isinstance(f, Product):
                sub = f.braid_word()
                if sub is None:
                    return None
                out.extend(sub)
            else:
                return None
        return out

    def max_index(self) -> int:
        m = 0
        for f in self.factors:
            if isinstance(f, (Gen, Cup)):
                m = max(m, f.index)
            elif isinstance(f, Product):
                m = max(m, f.max_index())
        return m

    def to_skein(self, k: int, i: int = 1) -> SkeinElement:
        """Evaluate on ``k`` strands, each a cable of ``i``, then project each cable."""
        n = k * i
        out = SkeinElement.identity(n)
        for f in self.factors:
            out = compose(out, _term_skein(f, k, i))
        return color_embed(out, k, i)

    def writhe(self) -> int | None:
        """Exponent sum of the braid word, or ``None`` if any factor is not a braid generator."""
        word = self.braid_word()
        return None if word is None else sum(1 if g > 0 else -1 for g in word)


Term = Union[Gen, Cup, Projector, Twist, Product]


def _term_skein(f: Term, k: int, i: int) -> SkeinElement:
    from .twist import cabled_word, full_twist_word

    n = k * i
    if isinstance(f, Gen):
        if not 1 <= f.index < k:
            raise StrandMismatchError(f"s{f.index} needs strands {f.index} and {f.index + 1} of {k}")
        return braid_to_skein(cabled_word([-f.index if f.inverse else f.index], i), n)
    if isinstance(f, Cup):
        if not 1 <= f.index < k:
            raise StrandMismatchError(f"e({f.index}) needs strands {f.index} and {f.index + 1} of {k}")
        lo = (f.index - 1) * i
        pairs = []
        for r in range(i):
            pairs.append((lo + i - 1 - r, lo + i + r))
            pairs.append((n + lo + i - 1 - r, n + lo + i + r))
        used = {p for pr in pairs for p in pr}
        pairs += [(p, n + p) for p in range(n) if p not in used]
        return SkeinElement.from_diagram(PlanarDiagram.from_pairs(n, n, pairs))
    if isinstance(f, Projector):
        if not 0 <= f.n <= n:
            raise StrandMismatchError(f"jw({f.n}) does not fit on {n} strands")
        return jones_wenzl(f.n).tensor(SkeinElement.identity(n - f.n))
    if isinstance(f, Twist):
        if f.m < 0:
            raise StrandMismatchError("twist count must be nonnegative")
        return braid_to_skein(cabled_word(full_twist_word(k) * f.m, i), n)
    out = SkeinElement.identity(n)
    for g in f.factors:
        out = compose(out, _term_skein(g, k, i))
    return out


_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<gen>s(?P<gi>\d+)(?P<inv>\^-1)?)"
    r"|(?P<call>(?P<fn>e|jw|twist)\((?P<arg>\d+)\))"
    r"|(?P<lp>\()"
    r"|(?P<rp>\))"
)


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_tangle(text: str) -> Product:
    stack: list[list[Term]] = [[]]
    opens: list[int] = []
    pos = 0
    prev_end = -1  # terms must be separated by whitespace or parentheses
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TangleSyntaxError(f"unexpected {text[pos]!r}", *_position(text, pos))
        kind = m.lastgroup
        if kind in ("gen", "call") and prev_end == pos:
            raise TangleSyntaxError("terms must be separated by whitespace", *_position(text, pos))
        if m.group("gen"):
            stack[-1].append(Gen(int(m.group("gi")), bool(m.group("inv"))))
            prev_end = m.end()
        elif m.group("call"):
            fn, arg = m.group("fn"), int(m.group("arg"))
            stack[-1].append({"e": Cup, "jw": Projector, "twist": Twist}[fn](arg))
            prev_end = m.end()
        elif m.group("lp"):
            stack.append([])
            opens.append(pos)
            prev_end = -1
        elif m.group("rp"):
            if not opens:
                raise TangleSyntaxError("unmatched ')'", *_position(text, pos))
            start = opens.pop()
            body = stack.pop()
            if not body:
                raise TangleSyntaxError("empty parentheses", *_position(text, start))
            stack[-1].append(Product(tuple(body)))
            prev_end = -1
        else:
            prev_end = -1
        pos = m.end()
    if opens:
        raise TangleSyntaxError("unclosed '('", *_position(text, opens[-1]))
    if not stack[0]:
        raise TangleSyntaxError("empty expression", *_position(text, len(text)))
    return Product(tuple(stack[0]))
