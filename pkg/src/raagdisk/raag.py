"""Right-angled Artin group words, normal forms, and homomorphism checks.

Generators are the vertices of a simplicial graph and two generators
commute exactly when they are adjacent.  The word problem is solved by a
left-to-right pile reduction (cancel a letter against the nearest
reachable inverse, where reachable means everything in between commutes
with it) followed by a canonical linearization: among all words obtained
from a fully reduced word by swapping adjacent commuting letters, take
the lexicographically least, using the graph's vertex order with the
positive letter before the negative one.

Internally letters are small integers (2 * vertex_index + sign_bit), so
commutation is a table lookup and the canonical order is integer order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .errors import BudgetExceededError, InputError
from .graphs import SimplicialGraph, graph_from_json, standard_graph

Letter = tuple[str, int]  # (generator label, sign in {+1, -1})


@dataclass(frozen=True)
class RaagWord:
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "RaagWord":
        return RaagWord(tuple((g, -s) for g, s in reversed(self.letters)))

    def __mul__(self, other: "RaagWord") -> "RaagWord":
        return RaagWord(self.letters + other.letters)

    def __str__(self) -> str:
        return word_to_str(self)


@dataclass(frozen=True)
class NormalForm:
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def as_word(self) -> RaagWord:
        return RaagWord(self.letters)

    def __str__(self) -> str:
        return word_to_str(RaagWord(self.letters))


def word_from_str(text: str) -> RaagWord:
    """Parse whitespace-separated tokens: "a" positive, "a^-1" negative."""
    letters = []
    for token in text.split():
        if token.endswith("^-1"):
            label = token[:-3]
            sign = -1
        else:
            label = token
            sign = 1
        if not label:
            raise InputError(f"malformed word token: {token!r}")
        letters.append((label, sign))
    return RaagWord(tuple(letters))


def word_to_str(w: RaagWord) -> str:
    return " ".join(g if s > 0 else f"{g}^-1" for g, s in w.letters)


@dataclass(frozen=True)
class RaagPresentation:
    """A right-angled Artin group presented by its defining graph."""

    graph: SimplicialGraph
    _index: dict = field(default_factory=dict, compare=False, repr=False)
    _commute: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.graph.vertices)}
        n = 2 * len(index)
        table = [[False] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                gx, gy = self.graph.vertices[x >> 1], self.graph.vertices[y >> 1]
                table[x][y] = gx != gy and self.graph.has_edge(gx, gy)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_commute", tuple(tuple(r) for r in table))

    @property
    def generators(self) -> tuple[str, ...]:
        return self.graph.vertices

    def encode(self, w: RaagWord) -> list[int]:
        out = []
        for g, s in w.letters:
            if g not in self._index:
                raise InputError(f"unknown generator: {g!r}")
            if s not in (1, -1):
                raise InputError(f"letter sign must be +1 or -1, got {s!r}")
            out.append(2 * self._index[g] + (0 if s > 0 else 1))
        return out

    def decode(self, ints: Iterable[int]) -> tuple[Letter, ...]:
        verts = self.graph.vertices
        return tuple((verts[x >> 1], 1 if (x & 1) == 0 else -1) for x in ints)


# ------------------------------------------------------------ reduction

def _pile_push(pile: list[int], s: int, commute) -> tuple:
    """Push one letter; cancel against the nearest reachable inverse.

    Returns an undo record: ("cancel", index, letter) or ("append",).
    The pile stays fully reduced (no x^e ... x^-e with everything in
    between commuting with x).
    """
    i = len(pile) - 1
    while i >= 0:
        t = pile[i]
        if (t >> 1) == (s >> 1):
            if t != s:
                del pile[i]
                return ("cancel", i, t)
            break
        if not commute[t][s]:
            break
        i -= 1
    pile.append(s)
    return ("append",)


def _pile_undo(pile: list[int], record: tuple) -> None:
    if record[0] == "append":
        pile.pop()
    else:
        _, i, t = record
        pile.insert(i, t)


def _reduce(ints: Iterable[int], commute) -> list[int]:
    pile: list[int] = []
    for s in ints:
        _pile_push(pile, s, commute)
    return pile


def _canonicalize(reduced: list[int], commute) -> list[int]:
    """Lexicographically least word obtainable by commuting swaps."""
    remaining = list(reduced)
    out: list[int] = []
    while remaining:
        best = None
        for i, t in enumerate(remaining):
            if best is not None and t >= remaining[best]:
                continue
            if all(commute[remaining[j]][t] for j in range(i)):
                best = i
        out.append(remaining.pop(best))
    return out


def normal_form(p: RaagPresentation, w: RaagWord) -> NormalForm:
    """The canonical representative; equal iff the group elements are."""
    commute = p._commute
    return NormalForm(p.decode(_canonicalize(_reduce(p.encode(w), commute), commute)))


def is_identity(p: RaagPresentation, w: RaagWord) -> bool:
    return not _reduce(p.encode(w), p._commute)


def commutator(u: RaagWord, v: RaagWord) -> RaagWord:
    return u * v * u.inverse() * v.inverse()


# -------------------------------------------------------- homomorphisms

@dataclass(frozen=True)
class RaagHom:
    """A checked homomorphism; build through verify_hom only."""

    source: RaagPresentation
    target: RaagPresentation
    images: tuple[tuple[str, RaagWord], ...]

    def image_of(self, generator: str) -> RaagWord:
        for g, w in self.images:
            if g == generator:
                return w
        raise InputError(f"unknown generator: {generator!r}")


@dataclass(frozen=True)
class HomVerification:
    ok: bool
    hom: Optional[RaagHom]
    failed_edge: Optional[tuple[str, str]]
    failed_commutator: Optional[RaagWord]

    def describe(self) -> str:
        if self.ok:
            return "homomorphism verified: all defining relators map to the identity"
        u, v = self.failed_edge
        return (
            f"not a homomorphism: relator [{u},{v}] maps to the nontrivial "
            f"word '{self.failed_commutator}'"
        )


def _coerce_images(
    source: RaagPresentation, images: Mapping[str, Union[RaagWord, str]]
) -> dict[str, RaagWord]:
    out: dict[str, RaagWord] = {}
    for g in source.generators:
        if g not in images:
            raise InputError(f"no image given for generator {g!r}")
        img = images[g]
        out[g] = word_from_str(img) if isinstance(img, str) else img
    return out


def verify_hom(
    source: RaagPresentation,
    target: RaagPresentation,
    images: Mapping[str, Union[RaagWord, str]],
) -> HomVerification:
    """Check every defining relator of the source maps to the identity.

    Edges are checked in sorted order and the first failure is reported.
    """
    imgs = _coerce_images(source, images)
    for g, w in imgs.items():
        target.encode(w)  # validates letters
    for u, v in source.graph.edges:
        word = commutator(imgs[u], imgs[v])
        if not is_identity(target, word):
            return HomVerification(False, None, (u, v), word)
    hom = RaagHom(source, target, tuple((g, imgs[g]) for g in source.generators))
    return HomVerification(True, hom, None, None)


def apply_hom(h: RaagHom, w: RaagWord) -> RaagWord:
    """Substitute images letter by letter; the result is not reduced."""
    images = dict(h.images)
    out: list[Letter] = []
    for g, s in w.letters:
        if g not in images:
            raise InputError(f"unknown generator: {g!r}")
        img = images[g] if s > 0 else images[g].inverse()
        out.extend(img.letters)
    return RaagWord(tuple(out))


def hom_from_json(data) -> HomVerification:
    """Build and verify a homomorphism from its JSON description.

    {"source": <graph or name>, "target": <graph or name>,
     "images": {"q": "e f", ...}}
    """
    if not isinstance(data, dict):
        raise InputError("homomorphism JSON must be an object")
    for key in ("source", "target", "images"):
        if key not in data:
            raise InputError(f"homomorphism JSON missing {key!r}")

    def to_graph(spec):
        if isinstance(spec, str):
            return standard_graph(spec)
        return graph_from_json(spec)

    source = RaagPresentation(to_graph(data["source"]))
    target = RaagPresentation(to_graph(data["target"]))
    images = data["images"]
    if not isinstance(images, dict):
        raise InputError("'images' must be an object")
    return verify_hom(source, target, images)


def load_hom(path: str) -> HomVerification:
    with open(path, "r", encoding="utf-8") as fh:
        return hom_from_json(json.load(fh))


# ----------------------------------------------------- kernel ball search

def _extends_canonically(word: list[int], s: int, commute) -> bool:
    """Is word + [s] still a canonical normal form?

    Scan backward over letters commuting with s: cancellation or a
    strictly larger letter that s could be swapped past both disqualify.
    """
    for i in range(len(word) - 1, -1, -1):
        t = word[i]
        if (t >> 1) == (s >> 1):
            return t == s
        if not commute[t][s]:
            return True
        if s < t:
            return False
    return True


def kernel_ball_search(
    h: RaagHom, max_len: int, budget: int | None = None
) -> Optional[RaagWord]:
    """First nontrivial source element of normal-form length <= max_len
    whose image is the identity, in (length, lex) enumeration order.

    Enumerates canonical normal forms only, one per group element, via
    their prefix-closed extension property, and maintains the reduced
    image incrementally.  Subtrees whose image pile is too long to cancel
    within the remaining letters are skipped.  A budget bounds the total
    number of normal forms visited; exceeding it raises
    BudgetExceededError with a progress report.
    """
    if max_len < 1:
        raise InputError(f"max_len must be >= 1, got {max_len}")
    src, tgt = h.source, h.target
    scommute, tcommute = src._commute, tgt._commute
    letters = list(range(2 * len(src.generators)))
    images = {}
    max_image_len = 1
    for g, w in h.images:
        enc = tgt.encode(w)
        images[2 * src._index[g]] = enc
        images[2 * src._index[g] + 1] = [x ^ 1 for x in reversed(enc)]
        max_image_len = max(max_image_len, len(enc))

    visited = 0
    word: list[int] = []
    pile: list[int] = []

    def dfs(depth_left: int, target_len: int) -> Optional[list[int]]:
        nonlocal visited
        if depth_left == 0:
            return list(word) if not pile else None
        # a pushed letter shortens the image pile by at most its length
        if len(pile) > depth_left * max_image_len:
            return None
        for s in letters:
            if not _extends_canonically(word, s, scommute):
                continue
            visited += 1
            if budget is not None and visited > budget:
                raise BudgetExceededError(
                    "kernel ball search exceeded budget",
                    {
                        "normal_forms_visited": visited,
                        "current_target_length": target_len,
                        "max_len": max_len,
                    },
                )
            word.append(s)
            records = [_pile_push(pile, x, tcommute) for x in images[s]]
            found = dfs(depth_left - 1, target_len)
            for record in reversed(records):
                _pile_undo(pile, record)
            word.pop()
            if found is not None:
                return found
        return None

    for target_len in range(1, max_len + 1):
        found = dfs(target_len, target_len)
        if found is not None:
            return RaagWord(src.decode(found))
    return None
