"""Free-group words, free-Lie bracket terms and the builtin sequence catalog.

Conventions (fixed once, used everywhere):

* commutator ``[a, b] = a b a^-1 b^-1``;
* the ``s-bww`` conjugate ``a^y`` is ``y^-1 a y`` (``right``, default) or
  ``y a y^-1`` (``left``); only :func:`conjugate` looks at the flag.

Every sequence is given by a seed and a step rule ``u_{n+1} = rule(u_n, x, y)``
written against a tiny "ops" protocol (``mul``, ``inv``, ``one``), so the same
rule evaluates free words, exponent sums, the cyclic images used by
:func:`check_correct`, and batched elements of a finite group.

Autocorrectness: a reduced word lies in the smallest subgroup containing all
``y^k x y^-k`` iff its y-exponent sum is zero.  That subgroup is the normal
closure of ``x``, i.e. the kernel of ``F(x, y) -> Z`` sending ``x -> 0``,
``y -> 1``; a word in the kernel is rewritten letter by letter as a product of
``y^h x^e y^-h`` where ``h`` is the running y-height.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import NotSatisfiedWithinBound, WordSyntaxError, WordTooLarge
from .report import Report, Timer

SYMBOLS = ("x", "y", "z")
DEFAULT_WORD_CAP = 10 ** 6
CONVENTIONS = ("right", "left")


class GroupWord:
    """Freely reduced word: tuple of ``(symbol, nonzero exponent)``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Tuple[str, int]] = ()):
        object.__setattr__(self, "letters", _freely_reduce(letters))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    @classmethod
    def letter(cls, symbol: str, exponent: int = 1) -> "GroupWord":
        return cls(((symbol, exponent),))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((s, -e) for s, e in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def symbols(self) -> set:
        return {s for s, _ in self.letters}

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.letters)

    def __repr__(self):
        return f"GroupWord({str(self)!r})"


def _freely_reduce(letters: Iterable[Tuple[str, int]]) -> tuple:
    stack: List[list] = []
    for s, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == s:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([s, e])
    return tuple((s, e) for s, e in stack)


IDENTITY = GroupWord()


def reduce(w) -> GroupWord:
    """Freely reduce ``w`` (a GroupWord or any iterable of (symbol, exponent))."""
    if isinstance(w, GroupWord):
        return w
    return GroupWord(w)


def commutator(a: GroupWord, b: GroupWord) -> GroupWord:
    return a * b * a.inverse() * b.inverse()


def substitute(w: GroupWord, assignment: Mapping[str, GroupWord]) -> GroupWord:
    missing = w.symbols() - set(assignment)
    if missing:
        raise KeyError(f"assignment misses {sorted(missing)}")
    out: list = []
    for s, e in w.letters:
        image = assignment[s]
        if e < 0:
            image = image.inverse()
        out.extend(image.letters * abs(e))
    return GroupWord(out)


def exponent_sum(w: GroupWord, symbol: str) -> int:
    return sum(e for s, e in w.letters if s == symbol)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\^)\s*([+-]?\d+)|([A-Za-z_]\w*)|(\d+)|([\[\](),]))")


def _tokens(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("^", int(m.group(2))))
        elif m.group(3):
            out.append(("name", m.group(3)))
        elif m.group(4):
            out.append(("int", int(m.group(4))))
        else:
            out.append((m.group(5), None))
    return out


class _WordParser:
    def __init__(self, text: str, bindings: Mapping[str, GroupWord]):
        self.toks = _tokens(text)
        self.i = 0
        self.bindings = bindings

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            raise WordSyntaxError(f"expected {kind!r}, got {self.peek()!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self) -> GroupWord:
        out = IDENTITY
        while self.peek() in ("name", "int", "[", "("):
            out = out * self.factor()
        return out

    def factor(self) -> GroupWord:
        kind = self.peek()
        if kind == "name":
            name = self.take("name")[1]
            if name in self.bindings:
                atom = self.bindings[name]
            elif name in SYMBOLS:
                atom = GroupWord.letter(name)
            else:
                raise WordSyntaxError(f"unknown symbol {name!r}")
        elif kind == "int":
            if self.take("int")[1] != 1:
                raise WordSyntaxError("only the literal 1 may appear as a number")
            atom = IDENTITY
        elif kind == "[":
            self.take("[")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            atom = commutator(a, b)
        else:
            self.take("(")
            atom = self.expr()
            self.take(")")
        while self.peek() == "^":
            atom = atom ** self.take("^")[1]
        return atom


def parse_word(text: str, bindings: Optional[Mapping[str, GroupWord]] = None) -> GroupWord:
    """Parse juxtaposition/``^``/``[a,b]`` syntax, e.g. ``"x^-2 y^-1 x"``."""
    p = _WordParser(text, bindings or {})
    w = p.expr()
    if p.peek() is not None:
        raise WordSyntaxError(f"trailing input in {text!r}")
    return w


# ---------------------------------------------------------------- Lie terms

class LieTerm:
    """Binary bracket tree over the symbols x, y, z."""

    __slots__ = ("symbol", "left", "right", "_str")

    def __init__(self, symbol: Optional[str] = None, left=None, right=None):
        if (symbol is None) == (left is None or right is None):
            raise ValueError("a LieTerm is either a symbol or a bracket of two terms")
        self.symbol, self.left, self.right = symbol, left, right
        self._str = None

    @classmethod
    def bracket(cls, a: "LieTerm", b: "LieTerm") -> "LieTerm":
        return cls(left=a, right=b)

    def is_leaf(self) -> bool:
        return self.symbol is not None

    def degree(self) -> int:
        return 1 if self.is_leaf() else self.left.degree() + self.right.degree()

    def evaluate(self, assignment: Mapping[str, object], bracket: Callable, _memo=None):
        memo = {} if _memo is None else _memo
        key = id(self)
        if key in memo:
            return memo[key]
        if self.is_leaf():
            val = assignment[self.symbol]
        else:
            val = bracket(self.left.evaluate(assignment, bracket, memo),
                          self.right.evaluate(assignment, bracket, memo))
        memo[key] = val
        return val

    def __str__(self):
        if self._str is None:
            self._str = self.symbol if self.is_leaf() else f"[{self.left},{self.right}]"
        return self._str

    def __eq__(self, other):
        return isinstance(other, LieTerm) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    def __repr__(self):
        return f"LieTerm({str(self)!r})"


def parse_lie_term(text: str) -> LieTerm:
    toks = _tokens(text)
    pos = 0

    def term():
        nonlocal pos
        if pos >= len(toks):
            raise WordSyntaxError("unexpected end of Lie term")
        kind, val = toks[pos]
        pos += 1
        if kind == "name":
            if val not in SYMBOLS:
                raise WordSyntaxError(f"unknown symbol {val!r}")
            return LieTerm(val)
        if kind != "[":
            raise WordSyntaxError(f"unexpected token {kind!r}")
        a = term()
        if pos >= len(toks) or toks[pos][0] != ",":
            raise WordSyntaxError("expected ','")
        pos += 1
        b = term()
        if pos >= len(toks) or toks[pos][0] != "]":
            raise WordSyntaxError("expected ']'")
        pos += 1
        return LieTerm.bracket(a, b)

    t = term()
    if pos != len(toks):
        raise WordSyntaxError(f"trailing input in {text!r}")
    return t


# ---------------------------------------------------------------- ops

class FreeOps:
    one = IDENTITY

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return a.inverse()


class CyclicOps:
    """Free group on one generator, written additively (it is Z)."""

    one = 0

    @staticmethod
    def mul(a, b):
        return a + b

    @staticmethod
    def inv(a):
        return -a


class AbelianOps:
    """Abelianization Z^2: tuples (x-sum, y-sum)."""

    one = (0, 0)

    @staticmethod
    def mul(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @staticmethod
    def inv(a):
        return (-a[0], -a[1])


def comm(a, b, ops):
    return ops.mul(ops.mul(a, b), ops.mul(ops.inv(a), ops.inv(b)))


def conjugate(a, y, ops, convention: str = "right"):
    """``a^y``: ``y^-1 a y`` for ``right``, ``y a y^-1`` for ``left``."""
    if convention == "right":
        return ops.mul(ops.mul(ops.inv(y), a), y)
    if convention == "left":
        return ops.mul(ops.mul(y, a), ops.inv(y))
    raise ValueError(f"unknown conjugation convention {convention!r}")


# ---------------------------------------------------------------- catalog

@dataclass(frozen=True)
class SequenceSpec:
    id: str
    kind: str            # "group" | "lie"
    arity: int
    seed_text: str
    rule_text: str       # c stands for the previous term
    seed: Callable
    step: Callable

    def __str__(self):
        return self.id


def _g_seed_comm(x, y, ops, conv):
    return comm(x, y, ops)


def _g_seed_u(x, y, ops, conv):
    xi = ops.inv(x)
    return ops.mul(ops.mul(ops.mul(xi, xi), ops.inv(y)), x)


def _g_seed_x(x, y, ops, conv):
    return x


def _g_step_e(c, x, y, ops, conv):
    return comm(c, y, ops)


def _g_step_u(c, x, y, ops, conv):
    a = ops.mul(ops.mul(x, c), ops.inv(x))
    b = ops.mul(ops.mul(y, c), ops.inv(y))
    return comm(a, b, ops)


def _g_step_s(c, x, y, ops, conv):
    return comm(conjugate(ops.inv(c), y, ops, conv), c, ops)


def _g_step_w(c, x, y, ops, conv):
    return comm(comm(c, x, ops), comm(c, y, ops), ops)


def _l_seed_comm(x, y, z, br):
    return br(x, y)


def _l_seed_x(x, y, z, br):
    return x


def _l_seed_r(x, y, z, br):
    return br(z, br(x, y))


def _l_step_e(c, x, y, z, br):
    return br(c, y)


def _l_step_v(c, x, y, z, br):
    return br(c, br(x, y))


def _l_step_w(c, x, y, z, br):
    return br(br(c, x), br(c, y))


SEQUENCES: Dict[str, SequenceSpec] = {
    s.id: s
    for s in [
        SequenceSpec("e-group", "group", 2, "[x,y]", "[c,y]", _g_seed_comm, _g_step_e),
        SequenceSpec("u-bggkpp", "group", 2, "x^-2 y^-1 x", "[x c x^-1, y c y^-1]", _g_seed_u, _g_step_u),
        SequenceSpec("s-bww", "group", 2, "x", "[(c^-1)^y, c]", _g_seed_x, _g_step_s),
        SequenceSpec("w-group", "group", 2, "[x,y]", "[[c,x],[c,y]]", _g_seed_comm, _g_step_w),
        SequenceSpec("e-lie", "lie", 2, "[x,y]", "[c,y]", _l_seed_comm, _l_step_e),
        SequenceSpec("v-lie", "lie", 2, "x", "[c,[x,y]]", _l_seed_x, _l_step_v),
        SequenceSpec("w-lie", "lie", 2, "[x,y]", "[[c,x],[c,y]]", _l_seed_comm, _l_step_w),
        SequenceSpec("r-lie", "lie", 3, "[z,[x,y]]", "[c,[x,y]]", _l_seed_r, _l_step_v),
    ]
}

_ALIASES = {
    "group": {"e": "e-group", "u": "u-bggkpp", "s": "s-bww", "w": "w-group"},
    "lie": {"e": "e-lie", "v": "v-lie", "w": "w-lie", "r": "r-lie"},
}


def get_sequence(name, kind: Optional[str] = None) -> SequenceSpec:
    """Look up a sequence by id, or by short alias (``e``, ``s``, ``v``...) within ``kind``."""
    if isinstance(name, SequenceSpec):
        return name
    if name in SEQUENCES:
        seq = SEQUENCES[name]
    elif kind in _ALIASES and name in _ALIASES[kind]:
        seq = SEQUENCES[_ALIASES[kind][name]]
    else:
        raise KeyError(f"unknown sequence {name!r}")
    if kind is not None and seq.kind != kind:
        raise ValueError(f"sequence {seq.id} is not a {kind} sequence")
    return seq


def iterate_group_sequence(seq: SequenceSpec, x, y, ops, n: int, convention: str = "right"):
    """Yield ``u_1(x, y), ..., u_n(x, y)`` computed with ``ops``."""
    cur = seq.seed(x, y, ops, convention)
    yield cur
    for _ in range(n - 1):
        cur = seq.step(cur, x, y, ops, convention)
        yield cur


_X, _Y, _Z = GroupWord.letter("x"), GroupWord.letter("y"), GroupWord.letter("z")
_LX, _LY, _LZ = LieTerm("x"), LieTerm("y"), LieTerm("z")


def generate(seq, n: int, cap: int = DEFAULT_WORD_CAP, convention: str = "right"):
    """n-th term of a builtin sequence: reduced GroupWord or LieTerm."""
    seq = get_sequence(seq)
    if n < 1:
        raise ValueError("n must be >= 1")
    if seq.kind == "lie":
        cur = seq.seed(_LX, _LY, _LZ, LieTerm.bracket)
        for _ in range(n - 1):
            cur = seq.step(cur, _LX, _LY, _LZ, LieTerm.bracket)
        return cur
    cur = None
    for i, cur in enumerate(iterate_group_sequence(seq, _X, _Y, FreeOps, n, convention), start=1):
        if len(cur) > cap:
            raise WordTooLarge(f"{seq.id} term {i} has reduced length {len(cur)} > cap {cap}")
    return cur


def apply_rule(seq, c: GroupWord, convention: str = "right") -> GroupWord:
    seq = get_sequence(seq, "group")
    return seq.step(c, _X, _Y, FreeOps, convention)


# ---------------------------------------------------------------- correctness checks

def _thresholds(flags: Sequence[bool]) -> Optional[int]:
    """Least n0 (1-based) with flags[n-1] true for all n0 <= n <= len(flags)."""
    n0 = None
    for n in range(len(flags), 0, -1):
        if not flags[n - 1]:
            break
        n0 = n
    return n0


def check_correct(seq, n_max: int = 10, convention: str = "right") -> Report:
    """Least thresholds where ``x -> 1`` and ``y -> 1`` kill the sequence, plus ``rule(1, x, y) = 1``.

    Substituting a generator by 1 lands in a free group on one letter, i.e. Z,
    so both images are computed exactly in :class:`CyclicOps` without ever
    materializing the (exponentially long) words.
    """
    seq = get_sequence(seq, "group")
    timer = Timer()
    x_to_1 = [v == 0 for v in iterate_group_sequence(seq, 0, 1, CyclicOps, n_max, convention)]
    y_to_1 = [v == 0 for v in iterate_group_sequence(seq, 1, 0, CyclicOps, n_max, convention)]
    rule_at_one = seq.step(IDENTITY, _X, _Y, FreeOps, convention)
    n0_x, n0_y = _thresholds(x_to_1), _thresholds(y_to_1)
    details = {
        "n0_x_to_1": n0_x,
        "n0_y_to_1": n0_y,
        "rule_at_identity": str(rule_at_one),
    }
    if n0_x is None or n0_y is None or not rule_at_one.is_identity():
        raise NotSatisfiedWithinBound(
            f"{seq.id}: correctness not observed within n <= {n_max} ({details})")
    return Report(
        claim="word.correct",
        inputs={"seq": seq.id, "n_max": n_max},
        verdict="holds",
        iterations=n_max,
        millis=timer.millis(),
        config={"conj_convention": convention},
        details=details,
    )


def conjugate_rewrite(w: GroupWord) -> List[Tuple[int, int]]:
    """Rewrite a y-balanced word as factors ``(h, e)`` meaning ``y^h x^e y^-h``."""
    if exponent_sum(w, "y") != 0:
        raise ValueError("word is not in the normal closure of x")
    out: List[Tuple[int, int]] = []
    height = 0
    for s, e in w.letters:
        if s == "y":
            height += e
        elif s == "x":
            if out and out[-1][0] == height:
                out[-1] = (height, out[-1][1] + e)
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append((height, e))
        else:
            raise ValueError(f"unexpected symbol {s!r}")
    return out


def multiply_rewrite(factors: Sequence[Tuple[int, int]]) -> GroupWord:
    out = IDENTITY
    for h, e in factors:
        out = out * GroupWord([("y", h), ("x", e), ("y", -h)])
    return out


def format_rewrite(factors: Sequence[Tuple[int, int]]) -> str:
    if not factors:
        return "1"
    return " ".join(f"(y^{h} x^{e} y^{-h})" for h, e in factors)


def check_autocorrect(seq, n_max: int = 10, convention: str = "right",
                      materialize_cap: int = 100_000, display_cap: int = 2000) -> Report:
    """Per-n y-exponent-sum test; rewrites into conjugates of x when the word is small enough.

    Exponent sums are propagated through the abelianization, so the verdict
    is exact for every n even after the words outgrow ``materialize_cap``.
    """
    seq = get_sequence(seq, "group")
    timer = Timer()
    per_n = []
    failing = None
    word = None
    words_ok = True
    for n, (xs, ys) in enumerate(
            iterate_group_sequence(seq, (1, 0), (0, 1), AbelianOps, n_max, convention), start=1):
        entry = {"n": n, "y_sum": ys, "autocorrect": ys == 0}
        if words_ok:
            word = seq.seed(_X, _Y, FreeOps, convention) if n == 1 else seq.step(word, _X, _Y, FreeOps, convention)
            if len(word) > materialize_cap:
                words_ok, word = False, None
        if ys == 0:
            if word is not None:
                factors = conjugate_rewrite(word)
                entry["rewrite_factors"] = len(factors)
                if len(factors) <= display_cap:
                    entry["rewrite"] = format_rewrite(factors)
            else:
                entry["rewrite_factors"] = None
        elif failing is None:
            failing = n
        per_n.append(entry)
    return Report(
        claim="word.autocorrect",
        inputs={"seq": seq.id, "n_max": n_max},
        verdict="holds" if failing is None else "fails",
        witness=None if failing is None else {"n": failing, "y_sum": per_n[failing - 1]["y_sum"]},
        iterations=n_max,
        millis=timer.millis(),
        config={"conj_convention": convention, "materialize_cap": materialize_cap},
        details={"per_n": per_n},
    )


def is_autocorrect(seq, n_max: int = 10, convention: str = "right") -> bool:
    seq = get_sequence(seq, "group")
    return all(ys == 0 for _, ys in iterate_group_sequence(seq, (1, 0), (0, 1), AbelianOps, n_max, convention))
