"""Regular expression AST shared by the frontend, the automata core and the SMT-LIB printer"""

from dataclasses import dataclass
from typing import FrozenSet, Tuple


class Regex:
    """Base class for regex nodes. Nodes are immutable and hashable."""

    def symbols(self) -> FrozenSet[str]:
        """Literal symbols mentioned by this regex (ranges expanded)"""
        return frozenset()

    def uses_allchar(self) -> bool:
        return False

    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class EmptySet(Regex):
    def __str__(self) -> str:
        return "∅"


@dataclass(frozen=True)
class Epsilon(Regex):
    def __str__(self) -> str:
        return "ε"


@dataclass(frozen=True)
class Sym(Regex):
    char: str

    def symbols(self) -> FrozenSet[str]:
        return frozenset((self.char,))

    def __str__(self) -> str:
        return self.char if self.char not in "()|*+?[]\\.ε∅" else "\\" + self.char


@dataclass(frozen=True)
class Range(Regex):
    lo: str
    hi: str

    def chars(self) -> Tuple[str, ...]:
        return tuple(chr(c) for c in range(ord(self.lo), ord(self.hi) + 1))

    def symbols(self) -> FrozenSet[str]:
        return frozenset(self.chars())

    def __str__(self) -> str:
        return f"[{self.lo}-{self.hi}]"


@dataclass(frozen=True)
class AllChar(Regex):
    """Any single symbol of the system alphabet"""

    def uses_allchar(self) -> bool:
        return True

    def __str__(self) -> str:
        return "."


@dataclass(frozen=True)
class Concat(Regex):
    parts: Tuple[Regex, ...]

    def symbols(self) -> FrozenSet[str]:
        return frozenset().union(*(p.symbols() for p in self.parts))

    def uses_allchar(self) -> bool:
        return any(p.uses_allchar() for p in self.parts)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.parts)

    def __str__(self) -> str:
        return "".join(f"({p})" if isinstance(p, Union) else str(p) for p in self.parts)


@dataclass(frozen=True)
class Union(Regex):
    parts: Tuple[Regex, ...]

    def symbols(self) -> FrozenSet[str]:
        return frozenset().union(*(p.symbols() for p in self.parts))

    def uses_allchar(self) -> bool:
        return any(p.uses_allchar() for p in self.parts)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.parts)

    def __str__(self) -> str:
        return "|".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class _Unary(Regex):
    child: Regex

    def symbols(self) -> FrozenSet[str]:
        return self.child.symbols()

    def uses_allchar(self) -> bool:
        return self.child.uses_allchar()

    def size(self) -> int:
        return 1 + self.child.size()

    def _wrapped(self) -> str:
        if isinstance(self.child, (Sym, Range, AllChar, EmptySet, Epsilon)):
            return str(self.child)
        return f"({self.child})"


@dataclass(frozen=True)
class Star(_Unary):
    def __str__(self) -> str:
        return self._wrapped() + "*"


@dataclass(frozen=True)
class Plus(_Unary):
    def __str__(self) -> str:
        return self._wrapped() + "+"


@dataclass(frozen=True)
class Opt(_Unary):
    def __str__(self) -> str:
        return self._wrapped() + "?"


# Smart constructors: flatten nested lists and keep Concat/Union with >= 2 children


def concat(*parts: Regex) -> Regex:
    flat = []
    for part in parts:
        if isinstance(part, Concat):
            flat.extend(part.parts)
        elif isinstance(part, EmptySet):
            return EmptySet()
        elif not isinstance(part, Epsilon):
            flat.append(part)
    if not flat:
        return Epsilon()
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def union(*parts: Regex) -> Regex:
    flat = []
    for part in parts:
        children = part.parts if isinstance(part, Union) else (part,)
        for child in children:
            if isinstance(child, EmptySet) or child in flat:
                continue
            flat.append(child)
    if not flat:
        return EmptySet()
    if len(flat) == 1:
        return flat[0]
    return Union(tuple(flat))


def star(child: Regex) -> Regex:
    if isinstance(child, (EmptySet, Epsilon)):
        return Epsilon()
    if isinstance(child, Star):
        return child
    return Star(child)


def literal(word: str) -> Regex:
    """Regex matching exactly `word`"""
    return concat(*(Sym(c) for c in word))
