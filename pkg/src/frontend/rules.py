"""Structured transition rules.

The input side is linear: u0 x0 u1 x1 ... uk, every variable exactly once.
The output side mentions the same variables in non-decreasing order; a variable
may be dropped or repeated (copied), as in Mx -> Mxx.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Sequence, Tuple, Union


@dataclass(frozen=True)
class Var:
    """Rule variable, alpha-renamed to its position in the input pattern"""
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Const:
    word: str

    def __str__(self) -> str:
        return '"' + self.word.replace('"', '""') + '"'


Segment = Union[Var, Const]


@dataclass(frozen=True)
class NotInFragment:
    """Returned (not raised) when a transition clause has no structured rule form"""
    reason: str


class RuleShapeError(ValueError):
    pass


def normalize_segments(segments: Sequence[Segment]) -> Tuple[Segment, ...]:
    """Fuse adjacent constants and drop empty ones"""
    out: List[Segment] = []
    for seg in segments:
        if isinstance(seg, Const):
            if not seg.word:
                continue
            if out and isinstance(out[-1], Const):
                out[-1] = Const(out[-1].word + seg.word)
                continue
        out.append(seg)
    return tuple(out)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Tuple[Segment, ...]
    rhs: Tuple[Segment, ...]

    def __post_init__(self):
        for side in (self.lhs, self.rhs):
            if normalize_segments(side) != tuple(side):
                raise RuleShapeError("Rule sides must be normalized (no empty or adjacent constants)")
        lhs_vars = [s.index for s in self.lhs if isinstance(s, Var)]
        rhs_vars = [s.index for s in self.rhs if isinstance(s, Var)]
        if lhs_vars != list(range(len(lhs_vars))):
            raise RuleShapeError("Input variables must be numbered 0..k-1 and occur once each")
        if any(v not in lhs_vars for v in rhs_vars):
            raise RuleShapeError("Output pattern uses a variable the input does not bind")
        if rhs_vars != sorted(rhs_vars):
            raise RuleShapeError("Output pattern reorders variables")
        if not self.lhs and not self.rhs:
            raise RuleShapeError("Both sides of the rule are empty")

    @classmethod
    def of(cls, lhs: Sequence[Segment], rhs: Sequence[Segment]) -> "RewriteRule":
        return cls(normalize_segments(lhs), normalize_segments(rhs))

    @property
    def num_vars(self) -> int:
        return sum(1 for s in self.lhs if isinstance(s, Var))

    @cached_property
    def lhs_blocks(self) -> Tuple[str, ...]:
        """Constant words u0..uk around the input variables"""
        blocks = [""]
        for seg in self.lhs:
            if isinstance(seg, Var):
                blocks.append("")
            else:
                blocks[-1] = seg.word
        return tuple(blocks)

    @cached_property
    def rhs_layout(self) -> Tuple[str, Tuple[Tuple[str, ...], ...]]:
        """(prefix, per-variable tuple of constants following each copy of the variable)"""
        prefix = ""
        copies: List[List[str]] = [[] for _ in range(self.num_vars)]
        current = None
        for seg in self.rhs:
            if isinstance(seg, Var):
                copies[seg.index].append("")
                current = seg.index
            elif current is None:
                prefix = seg.word
            else:
                copies[current][-1] = seg.word
        return prefix, tuple(tuple(c) for c in copies)

    @property
    def copy_counts(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.rhs_layout[1])

    @property
    def is_copy_free(self) -> bool:
        return all(c <= 1 for c in self.copy_counts)

    @property
    def is_linear(self) -> bool:
        return all(c == 1 for c in self.copy_counts)

    @cached_property
    def rhs_blocks(self) -> Tuple[str, ...]:
        """Constants v0..vk emitted after each variable (copy-free rules)"""
        prefix, copies = self.rhs_layout
        return (prefix,) + tuple(c[0] if c else "" for c in copies)

    def symbols(self) -> frozenset:
        words = [s.word for s in self.lhs + self.rhs if isinstance(s, Const)]
        return frozenset("".join(words))

    def is_length_preserving(self) -> bool:
        return self.is_linear and sum(map(len, self.lhs_blocks)) == sum(map(len, self.rhs_blocks))

    def matches(self, word: str) -> Iterator[Tuple[str, ...]]:
        """All assignments of the variables under which the input pattern spells `word`"""
        blocks = self.lhs_blocks
        k = len(blocks) - 1
        if not word.startswith(blocks[0]):
            return
        if k == 0:
            if word == blocks[0]:
                yield ()
            return

        def extend(pos: int, j: int, values: Tuple[str, ...]) -> Iterator[Tuple[str, ...]]:
            # values holds the first j-1 variables; choose the j-th, then block u_j
            block = blocks[j]
            if j == k:
                if word.endswith(block) and len(word) - len(block) >= pos:
                    yield values + (word[pos:len(word) - len(block)],)
                return
            start = word.find(block, pos)
            while start != -1:
                yield from extend(start + len(block), j + 1, values + (word[pos:start],))
                start = word.find(block, start + 1)

        yield from extend(len(blocks[0]), 1, ())

    def instantiate(self, values: Sequence[str]) -> str:
        return "".join(values[s.index] if isinstance(s, Var) else s.word for s in self.rhs)

    def apply(self, word: str) -> List[str]:
        """Distinct successors of `word`, ordered by length then lexicographically"""
        return sorted({self.instantiate(vals) for vals in self.matches(word)},
                      key=lambda w: (len(w), w))

    def relates(self, w_in: str, w_out: str) -> bool:
        return any(self.instantiate(vals) == w_out for vals in self.matches(w_in))

    def __str__(self) -> str:
        def side(segs):
            return "·".join(str(s) for s in segs) or '""'
        return f"{side(self.lhs)} -> {side(self.rhs)}"


def build_rule(lhs_terms: Sequence[Tuple[str, str]],
               rhs_terms: Sequence[Tuple[str, str]]) -> Union[RewriteRule, NotInFragment]:
    """Build a rule from flattened concatenations of ("var", name) / ("lit", word) items.

    Variables are alpha-renamed to 0..k-1 by position in the input pattern.
    """
    renaming: Dict[str, int] = {}
    lhs: List[Segment] = []
    for kind, value in lhs_terms:
        if kind == "lit":
            lhs.append(Const(value))
        elif value in renaming:
            return NotInFragment(f"variable {value} occurs twice in the input pattern")
        else:
            renaming[value] = len(renaming)
            lhs.append(Var(renaming[value]))

    rhs: List[Segment] = []
    for kind, value in rhs_terms:
        if kind == "lit":
            rhs.append(Const(value))
        elif value not in renaming:
            return NotInFragment(f"variable {value} of the output pattern is unbound")
        else:
            rhs.append(Var(renaming[value]))

    order = [s.index for s in rhs if isinstance(s, Var)]
    if order != sorted(order):
        return NotInFragment("variables are reordered by the rule")
    if not lhs and not rhs:
        return NotInFragment("both sides are empty")
    return RewriteRule.of(lhs, rhs)
