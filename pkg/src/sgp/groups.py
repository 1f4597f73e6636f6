"""Cayley-table models of the cyclic, dihedral, dicyclic and product families.

Elements are integers 0..order-1 with display labels in normal form:
rotations ``a^i`` come first, then ``b a^i`` for the families with a second
generator.  In the dicyclic group of order 4n the rotation a has order 2n
and b^2 = a^n, so labels like ``b^2`` or ``b^3a^i`` never appear; they
reduce to the ``a^i`` / ``ba^i`` forms.

Every constructed table is self-checked: Latin-square, identity, inverse
laws always, associativity exhaustively up to order 64 and by seeded
random sampling of 10^5 triples above that.  Groups and subgroups are
immutable after construction and all functions are pure, so enumeration
over different groups can run in parallel with no shared state.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import (
    InternalConsistencyError,
    InvalidParameterError,
    SizeLimitError,
    UnsupportedFamilyError,
)

__all__ = [
    "FiniteGroup",
    "ConjugacyClasses",
    "Subgroup",
    "cyclic_group",
    "dihedral_group",
    "dicyclic_group",
    "product_group",
    "build_group",
    "conjugacy_classes",
    "generated_subgroup",
    "trivial_subgroup",
    "full_subgroup",
    "all_subgroups",
    "describe_subgroup",
    "subgroup_structure",
    "are_conjugate_subgroups",
    "DEFAULT_MAX_ORDER",
]

DEFAULT_MAX_ORDER = 256

_ASSOC_EXHAUSTIVE_LIMIT = 64
_ASSOC_SAMPLES = 100_000

_WORD_TOKEN = re.compile(r"([a-z])(?:\^(-?\d+))?")
_PRODUCT_LETTERS = "abcdefgh"


def _verify_table(mul: tuple[tuple[int, ...], ...], identity: int) -> tuple[int, ...]:
    order = len(mul)
    everything = frozenset(range(order))
    for i, row in enumerate(mul):
        if len(row) != order or set(row) != everything:
            raise InvalidParameterError(f"row {i} of the multiplication table is not a permutation")
    for j in range(order):
        if {mul[i][j] for i in range(order)} != everything:
            raise InvalidParameterError(f"column {j} of the multiplication table is not a permutation")
    for i in range(order):
        if mul[identity][i] != i or mul[i][identity] != i:
            raise InvalidParameterError("identity law fails")
    inv = []
    for i in range(order):
        j = mul[i].index(identity)
        if mul[j][i] != identity:
            raise InvalidParameterError(f"element {i} has no two-sided inverse")
        inv.append(j)
    if order <= _ASSOC_EXHAUSTIVE_LIMIT:
        # Exhaustive check over all triples: rows as bytes so that
        # z -> x(yz) is a C-level translate of row y through row x.
        rows = [bytes(row) for row in mul]
        pad = bytes(256 - order)
        for x in range(order):
            bx = rows[x] + pad
            mx = mul[x]
            for y in range(order):
                if rows[mx[y]] != rows[y].translate(bx):
                    raise InvalidParameterError(f"associativity fails at x={x}, y={y}")
    else:
        rnd = random.Random(0xC0FFEE)
        draws = rnd.choices(range(order), k=3 * _ASSOC_SAMPLES)
        it = iter(draws)
        for x, y, z in zip(it, it, it):
            if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                raise InvalidParameterError(f"associativity fails at ({x}, {y}, {z})")
    return tuple(inv)


class FiniteGroup:
    """An immutable finite group given by its full multiplication table."""

    __slots__ = ("order", "mul", "identity", "inv", "labels", "family", "n",
                 "factors", "gens", "name", "_cache")

    def __init__(self, mul, labels, family, n=None, factors=(), gens=None, name=""):
        mul = tuple(tuple(row) for row in mul)
        object.__setattr__(self, "order", len(mul))
        object.__setattr__(self, "identity", 0)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", _verify_table(mul, 0))
        labels = tuple(labels)
        if len(labels) != len(mul) or len(set(labels)) != len(labels):
            raise InvalidParameterError("element labels must be unique, one per element")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "gens", dict(gens or {}))
        object.__setattr__(self, "name", name or f"G{len(mul)}")
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"

    @property
    def family_tag(self) -> str:
        """Descriptor such as 'dihedral 10' (the numeral is the group order)."""
        if self.family == "product":
            return "product"
        return f"{self.family} {self.order}"

    def multiply(self, i: int, j: int) -> int:
        return self.mul[i][j]

    def inverse(self, i: int) -> int:
        return self.inv[i]

    def conjugate(self, g: int, x: int) -> int:
        """x g x^-1."""
        return self.mul[self.mul[x][g]][self.inv[x]]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv[i], -k
        acc = self.identity
        for _ in range(k):
            acc = self.mul[acc][i]
        return acc

    def element_order(self, i: int) -> int:
        orders = self._cache.get("element_orders")
        if orders is None:
            orders = []
            for g in range(self.order):
                k, acc = 1, g
                while acc != self.identity:
                    acc = self.mul[acc][g]
                    k += 1
                orders.append(k)
            orders = tuple(orders)
            self._cache["element_orders"] = orders
        return orders[i]

    def is_abelian(self) -> bool:
        flag = self._cache.get("abelian")
        if flag is None:
            flag = all(
                self.mul[i][j] == self.mul[j][i]
                for i in range(self.order)
                for j in range(i + 1, self.order)
            )
            self._cache["abelian"] = flag
        return flag

    def element(self, word: str) -> int:
        """Parse a normal-form word such as '1', 'a^3', 'ba^2' or 'b^2'."""
        w = word.strip()
        if w == "1":
            return self.identity
        acc = self.identity
        pos = 0
        for m in _WORD_TOKEN.finditer(w):
            if m.start() != pos:
                break
            pos = m.end()
            gen = self.gens.get(m.group(1))
            if gen is None:
                raise InvalidParameterError(f"unknown generator {m.group(1)!r} in {word!r}")
            acc = self.mul[acc][self.power(gen, int(m.group(2) or 1))]
        if pos != len(w) or pos == 0:
            raise InvalidParameterError(f"cannot parse element {word!r}")
        return acc


def _rotation_label(i: int) -> str:
    return "1" if i == 0 else ("a" if i == 1 else f"a^{i}")


def _reflection_label(i: int) -> str:
    return "b" if i == 0 else ("ba" if i == 1 else f"ba^{i}")


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group of order n generated by a."""
    if n < 1:
        raise InvalidParameterError(f"cyclic group needs n >= 1, got {n}")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = [_rotation_label(i) for i in range(n)]
    return FiniteGroup(mul, labels, "cyclic", n=n, gens={"a": 1 % n}, name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """The dihedral group of order 2n: a^n = b^2 = 1 and bab = a^-1.

    Element j*n + i is b^j a^i with 0 <= i < n and j in {0, 1}.
    """
    if n < 1:
        raise InvalidParameterError(f"dihedral group needs n >= 1, got {n}")
    order = 2 * n

    def mul_pair(j1, i1, j2, i2):
        i = (i2 - i1 if j2 else i1 + i2) % n
        return ((j1 + j2) % 2) * n + i

    mul = [
        [mul_pair(e1 // n, e1 % n, e2 // n, e2 % n) for e2 in range(order)]
        for e1 in range(order)
    ]
    labels = [_rotation_label(i) for i in range(n)] + [_reflection_label(i) for i in range(n)]
    return FiniteGroup(mul, labels, "dihedral", n=n,
                       gens={"a": 1 % n, "b": n}, name=f"D{order}")


def dicyclic_group(n: int) -> FiniteGroup:
    """The dicyclic group of order 4n: a^n = b^2, b^4 = 1, bab^-1 = a^-1.

    The rotation a has order 2n; element j*2n + i is b^j a^i with
    0 <= i < 2n and j in {0, 1}.  n = 1 yields the cyclic group of
    order 4 (generated by b) carrying the dicyclic family tag.
    """
    if n < 1:
        raise InvalidParameterError(f"dicyclic group needs n >= 1, got {n}")
    m = 2 * n
    order = 4 * n

    def mul_pair(j1, i1, j2, i2):
        i = (i2 - i1 if j2 else i1 + i2) % m
        if j1 and j2:
            i = (i + n) % m
        return ((j1 + j2) % 2) * m + i

    mul = [
        [mul_pair(e1 // m, e1 % m, e2 // m, e2 % m) for e2 in range(order)]
        for e1 in range(order)
    ]
    labels = [_rotation_label(i) for i in range(m)] + [_reflection_label(i) for i in range(m)]
    return FiniteGroup(mul, labels, "dicyclic", n=n,
                       gens={"a": 1, "b": m}, name=f"Dic{order}")


def _flat_cyclic_orders(g: FiniteGroup) -> list[int]:
    if g.family == "cyclic":
        return [g.order]
    if g.family == "product":
        return [k for f in g.factors for k in _flat_cyclic_orders(f)]
    raise UnsupportedFamilyError(
        "product factors must be cyclic groups (or products of cyclic groups)"
    )


def product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """The direct product of two (products of) cyclic groups.

    Element encoding is i1 * |g2| + i2; generators are lettered a, b, c, ...
    across the flattened cyclic factors, so C2 x C2 = {1, a, b, ab}.
    """
    parts = _flat_cyclic_orders(g1) + _flat_cyclic_orders(g2)
    if len(parts) > len(_PRODUCT_LETTERS):
        raise InvalidParameterError("too many cyclic factors in product")
    order = 1
    for k in parts:
        order *= k

    strides = []
    acc = order
    for k in parts:
        acc //= k
        strides.append(acc)

    def exps(e: int) -> list[int]:
        out = []
        for k, s in zip(parts, strides):
            out.append((e // s) % k)
        return out

    def label(e: int) -> str:
        chunks = []
        for t, x in enumerate(exps(e)):
            if x == 0:
                continue
            letter = _PRODUCT_LETTERS[t]
            chunks.append(letter if x == 1 else f"{letter}^{x}")
        return "".join(chunks) or "1"

    mul = []
    for e1 in range(order):
        x1 = exps(e1)
        row = []
        for e2 in range(order):
            x2 = exps(e2)
            row.append(sum(((u + v) % k) * s for u, v, k, s in zip(x1, x2, parts, strides)))
        mul.append(row)

    gens = {
        _PRODUCT_LETTERS[t]: strides[t] % order if parts[t] > 1 else 0
        for t in range(len(parts))
    }
    name = "x".join(f"C{k}" for k in parts)
    return FiniteGroup(mul, [label(e) for e in range(order)], "product",
                       factors=(g1, g2), gens=gens, name=name)


def build_group(family: str, n: int) -> FiniteGroup:
    if family == "cyclic":
        return cyclic_group(n)
    if family == "dihedral":
        return dihedral_group(n)
    if family == "dicyclic":
        return dicyclic_group(n)
    raise UnsupportedFamilyError(f"unknown family {family!r}")


@dataclass(frozen=True)
class ConjugacyClasses:
    """Partition of a group under conjugation, ordered by minimal element."""

    class_of: tuple[int, ...]
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]


def conjugacy_classes(g: FiniteGroup) -> ConjugacyClasses:
    """Conjugacy classes of g, deterministically ordered by minimal element."""
    cached = g._cache.get("classes")
    if cached is not None:
        return cached
    class_of = [-1] * g.order
    classes: list[tuple[int, ...]] = []
    for e in range(g.order):
        if class_of[e] >= 0:
            continue
        orbit = tuple(sorted({g.conjugate(e, x) for x in range(g.order)}))
        idx = len(classes)
        for h in orbit:
            class_of[h] = idx
        classes.append(orbit)
    result = ConjugacyClasses(
        class_of=tuple(class_of),
        reps=tuple(c[0] for c in classes),
        sizes=tuple(len(c) for c in classes),
        classes=tuple(classes),
    )
    if result.reps[0] != g.identity or result.sizes[0] != 1:
        raise InternalConsistencyError("identity class is not the leading singleton")
    g._cache["classes"] = result
    return result


@dataclass(frozen=True)
class Subgroup:
    """A closed subset of a parent group, validated at construction."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        mem = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", mem)
        p = self.parent
        ms = frozenset(mem)
        if p.identity not in ms:
            raise InvalidParameterError("subgroup must contain the identity")
        for x in mem:
            if not 0 <= x < p.order:
                raise InvalidParameterError(f"element index {x} out of range")
            if p.inv[x] not in ms:
                raise InvalidParameterError("subgroup is not closed under inverses")
            row = p.mul[x]
            for y in mem:
                if row[y] not in ms:
                    raise InvalidParameterError("subgroup is not closed under multiplication")
        if p.order % len(mem):
            raise InvalidParameterError("subgroup order must divide the group order")

    def __repr__(self):
        return f"<Subgroup of {self.parent.name} order={self.order}>"

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.members)

    def is_full(self) -> bool:
        return len(self.members) == self.parent.order

    def local_index(self) -> dict[int, int]:
        """Map parent element index -> position inside `members`."""
        key = ("subgroup_local", self.members)
        loc = self.parent._cache.get(key)
        if loc is None:
            loc = {p: i for i, p in enumerate(self.members)}
            self.parent._cache[key] = loc
        return loc

    @property
    def group(self) -> FiniteGroup:
        """The subgroup as a standalone group (the parent itself when full)."""
        if self.is_full():
            return self.parent
        key = ("subgroup_group", self.members)
        g = self.parent._cache.get(key)
        if g is None:
            loc = self.local_index()
            p = self.parent
            mul = [[loc[p.mul[x][y]] for y in self.members] for x in self.members]
            labels = [p.labels[x] for x in self.members]
            kind, _ = subgroup_structure(self)
            names = {"trivial": "C1", "cyclic": f"C{self.order}",
                     "dihedral": f"D{self.order}", "dicyclic": f"Dic{self.order}"}
            g = FiniteGroup(mul, labels, "subgroup",
                            name=names.get(kind, f"H{self.order}"))
            self.parent._cache[key] = g
        return g


def _closure(g: FiniteGroup, seed) -> set[int]:
    mul = g.mul
    members = {g.identity}
    work: list[int] = []

    def add(x: int) -> None:
        if x not in members:
            members.add(x)
            work.append(x)

    for s in seed:
        add(s)
    while work:
        x = work.pop()
        for y in tuple(members):
            add(mul[x][y])
            add(mul[y][x])
    return members


def generated_subgroup(g: FiniteGroup, gens) -> Subgroup:
    """Smallest subgroup containing the generators (indices or words)."""
    idxs = {g.element(x) if isinstance(x, str) else int(x) for x in gens}
    if not idxs:
        raise InvalidParameterError("generator set must be nonempty")
    return Subgroup(g, tuple(sorted(_closure(g, idxs))))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,))


def full_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)))


def all_subgroups(g: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> list[Subgroup]:
    """Every subgroup of g, each exactly once, sorted by (order, members).

    Seeds with all cyclic subgroups <x> and closes under pairwise joins
    <H union K> to a fixed point; every subgroup is the join of its cyclic
    subgroups, so the closure is complete.
    """
    if g.order > max_order:
        raise SizeLimitError(f"group order {g.order} exceeds the bound {max_order}")
    subs = {frozenset(_closure(g, (x,))) for x in range(g.order)}
    work = list(subs)
    while work:
        h = work.pop()
        for k in tuple(subs):
            if h <= k or k <= h:
                continue
            j = frozenset(_closure(g, h | k))
            if j not in subs:
                subs.add(j)
                work.append(j)
    ordered = sorted(subs, key=lambda s: (len(s), tuple(sorted(s))))
    return [Subgroup(g, tuple(sorted(s))) for s in ordered]


def _rotation_bound(g: FiniteGroup) -> int | None:
    if g.family == "dihedral":
        return g.n
    if g.family == "dicyclic":
        return 2 * g.n
    return None


def subgroup_structure(h: Subgroup):
    """Classify a subgroup structurally.

    Returns one of
      ("trivial", None)
      ("cyclic", generator_parent_index)
      ("dihedral", (rotation_generator, reflection)) for dihedral parents
      ("dicyclic", (rotation_generator, outside_element)) for dicyclic parents
      ("unclassified", None)
    """
    p = h.parent
    d = h.order
    if d == 1:
        return ("trivial", None)
    gen = min((x for x in h.members if p.element_order(x) == d), default=None)
    if gen is not None:
        return ("cyclic", gen)
    bound = _rotation_bound(p)
    if bound is not None:
        rotations = [x for x in h.members if x < bound]
        m = len(rotations)
        if 2 * m != d:
            raise InternalConsistencyError("rotation part of subgroup has unexpected size")
        a1 = min((x for x in rotations if p.element_order(x) == m), default=None)
        b1 = min(x for x in h.members if x >= bound)
        if a1 is None:
            raise InternalConsistencyError("rotation part of subgroup is not cyclic")
        return (p.family, (a1, b1))
    return ("unclassified", None)


def describe_subgroup(h: Subgroup) -> str:
    """Structural descriptor: trivial, C<d>, <ba^i>, D<2m>, Dic<4k>, unclassified.

    `<ba^i>` is a literal category string covering every cyclic subgroup
    generated by an element outside the rotation subgroup (reflection
    subgroups of dihedral groups, the order-4 subgroups of dicyclic
    groups), so conjugate subgroups always share one descriptor.
    """
    kind, data = subgroup_structure(h)
    if kind == "trivial":
        return "trivial"
    if kind == "dihedral":
        return f"D{h.order}"
    if kind == "dicyclic":
        return f"Dic{h.order}"
    if kind == "unclassified":
        return "unclassified"
    bound = _rotation_bound(h.parent)
    if bound is None or all(x < bound for x in h.members):
        return f"C{h.order}"
    return "<ba^i>"


def are_conjugate_subgroups(g: FiniteGroup, h1: Subgroup, h2: Subgroup) -> bool:
    """Whether some x in g satisfies x h1 x^-1 = h2."""
    if h1.parent is not g or h2.parent is not g:
        raise InvalidParameterError("both subgroups must live in the given group")
    if h1.order != h2.order:
        return False
    target = set(h2.members)
    for x in range(g.order):
        if {g.conjugate(e, x) for e in h1.members} == target:
            return True
    return False
