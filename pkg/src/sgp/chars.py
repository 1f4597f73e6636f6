"""Class functions, family character tables, and the induction calculus.

Character values are exact `Cyclotomic` elements indexed by conjugacy
class.  The closed-form family tables follow the printed conventions of
the families: cyclic rows mu_k, dihedral rows chi_1..chi_4 / psi_j,
dicyclic rows theta_1..theta_4 / pi_j / gamma_k for odd n and the
dihedral-shaped chi/psi rows for even n.  An independent constructive
route (`constructive_family_table`) rebuilds the nonabelian tables from
brute-forced linear characters plus inductions from the maximal rotation
subgroup and is used as an oracle against the closed forms.

Induction uses the raw Frobenius sum over the whole parent group; at the
orders this package targets (<= 256) the quadratic sum is cheap and
avoids coset-transversal bookkeeping.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import Cyclotomic, rational, weighted_product_sum, zeta
from .errors import (
    DomainMismatchError,
    IntegralityError,
    InternalConsistencyError,
    OracleFailureError,
    UnsupportedFamilyError,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    conjugacy_classes,
    generated_subgroup,
    dihedral_group,
    dicyclic_group,
    product_group,
    subgroup_structure,
)

__all__ = [
    "ClassFunction",
    "CharacterTable",
    "TableValidation",
    "inner_product",
    "restrict",
    "induce",
    "family_table",
    "subgroup_table",
    "tensor_table",
    "validate_table",
    "decompose",
    "linear_characters_bruteforce",
    "constructive_family_table",
    "trivial_character",
    "regular_character",
    "table_to_json",
    "table_to_text",
]

_ONE = rational(1)
_ZERO = rational(0)


def _sign(k: int) -> Cyclotomic:
    return rational(1 if k % 2 == 0 else -1)


@dataclass(frozen=True)
class ClassFunction:
    """A function on a group constant on conjugacy classes."""

    group: FiniteGroup
    values: tuple[Cyclotomic, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        k = len(conjugacy_classes(self.group).reps)
        if len(self.values) != k:
            raise DomainMismatchError(
                f"{len(self.values)} values supplied for {k} conjugacy classes"
            )

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def value_on_element(self, i: int) -> Cyclotomic:
        return self.values[conjugacy_classes(self.group).class_of[i]]

    def renamed(self, name: str) -> "ClassFunction":
        return ClassFunction(self.group, self.values, name)

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"<ClassFunction {self.name or '?'} on {self.group.name}: [{vals}]>"


@dataclass(frozen=True)
class CharacterTable:
    """An ordered list of irreducible characters of one group."""

    group: FiniteGroup
    irreducibles: tuple[ClassFunction, ...]
    provenance: str = "closed-form"

    def __post_init__(self):
        object.__setattr__(self, "irreducibles", tuple(self.irreducibles))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.irreducibles)

    def row(self, name: str) -> ClassFunction:
        for f in self.irreducibles:
            if f.name == name:
                return f
        raise KeyError(f"no row named {name!r} in table of {self.group.name}")


def trivial_character(g: FiniteGroup, name: str = "1") -> ClassFunction:
    k = len(conjugacy_classes(g).reps)
    return ClassFunction(g, (_ONE,) * k, name)


def regular_character(g: FiniteGroup) -> ClassFunction:
    k = len(conjugacy_classes(g).reps)
    values = [rational(g.order)] + [_ZERO] * (k - 1)
    return ClassFunction(g, tuple(values), "regular")


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """(1/|G|) * sum over classes of size * f * conj(g), exactly."""
    if f.group is not g.group:
        raise DomainMismatchError("inner product requires class functions on the same group")
    cls = conjugacy_classes(f.group)
    total = _ZERO
    for size, fv, gv in zip(cls.sizes, f.values, g.values):
        total = total + fv * gv.conj() * size
    return total * Fraction(1, f.group.order)


def restrict(f: ClassFunction, h: Subgroup) -> ClassFunction:
    """Restriction of f to the subgroup h, as a class function on h."""
    if f.group is not h.parent:
        raise DomainMismatchError("can only restrict to a subgroup of the function's group")
    hg = h.group
    cls_h = conjugacy_classes(hg)
    values = tuple(f.value_on_element(h.members[rep]) for rep in cls_h.reps)
    name = f"{f.name}↓{hg.name}" if f.name else ""
    return ClassFunction(hg, values, name)


def induce(f: ClassFunction, h: Subgroup) -> ClassFunction:
    """Frobenius induction of f from the subgroup h to its parent.

    (f^G)(g) = (1/|H|) * sum over x in G of f0(x g x^-1), with f0 zero
    outside H; the sum is grouped by the H-class each conjugate lands in.
    """
    hg = h.group
    if f.group is not hg:
        raise DomainMismatchError("function must live on the subgroup being induced from")
    g = h.parent
    cls_g = conjugacy_classes(g)
    cls_h = conjugacy_classes(hg)
    loc = h.local_index()
    mul, inv = g.mul, g.inv
    values = []
    for rep in cls_g.reps:
        counts = [0] * len(cls_h.reps)
        for x in range(g.order):
            y = mul[mul[x][rep]][inv[x]]
            li = loc.get(y)
            if li is not None:
                counts[cls_h.class_of[li]] += 1
        acc = _ZERO
        for c, v in zip(counts, f.values):
            if c:
                acc = acc + v * c
        values.append(acc * Fraction(1, h.order))
    name = f"{f.name}↑{g.name}" if f.name else ""
    return ClassFunction(g, tuple(values), name)


# -- closed-form family tables ---------------------------------------------


def _cyclic_rows(g: FiniteGroup, gen: int, letter: str = "μ") -> list[ClassFunction]:
    """Rows mu_k(gen^r) = zeta_d^(k*r) for a cyclic group of order d."""
    d = g.order
    dlog = [0] * d
    seen = {g.identity}
    acc = g.identity
    for r in range(1, d):
        acc = g.mul[acc][gen]
        dlog[acc] = r
        seen.add(acc)
    if len(seen) != d or g.mul[acc][gen] != g.identity:
        raise InternalConsistencyError("chosen generator does not generate the cyclic group")
    cls = conjugacy_classes(g)
    rows = []
    for k in range(d):
        values = tuple(zeta(d, k * dlog[rep]) for rep in cls.reps)
        rows.append(ClassFunction(g, values, f"{letter}_{k}"))
    return rows


def _dihedral_rows(g: FiniteGroup) -> list[ClassFunction]:
    n = g.n
    cls = conjugacy_classes(g)
    reps = cls.reps

    def row(fn, name):
        return ClassFunction(g, tuple(fn(e) for e in reps), name)

    def psi(j):
        return row(lambda e: (zeta(n, j * e) + zeta(n, -j * e)) if e < n else _ZERO, f"ψ_{j}")

    rows = [
        row(lambda e: _ONE, "χ_1"),
        row(lambda e: _ONE if e < n else -_ONE, "χ_2"),
    ]
    if n % 2 == 0:
        rows.append(row(lambda e: _sign(e) if e < n else _sign(e - n), "χ_3"))
        rows.append(row(lambda e: _sign(e) if e < n else -_sign(e - n), "χ_4"))
        rows.extend(psi(j) for j in range(1, n // 2))
    else:
        rows.extend(psi(j) for j in range(1, (n - 1) // 2 + 1))
    return rows


def _dicyclic_rows(g: FiniteGroup) -> list[ClassFunction]:
    n = g.n
    m = 2 * n
    cls = conjugacy_classes(g)
    reps = cls.reps
    z4 = zeta(4, 1)

    def row(fn, name):
        return ClassFunction(g, tuple(fn(e) for e in reps), name)

    if n % 2:
        # 1 <= j, k <= (n-1)/2; pi_j comes from even rotation exponents 2j,
        # gamma_k from odd exponents 2k-1 (the central value -2 forces odd).
        rows = [
            row(lambda e: _ONE, "θ_1"),
            row(lambda e: _ONE if e < m else -_ONE, "θ_2"),
            row(lambda e: _sign(e) if e < m else z4 * _sign(e - m), "θ_3"),
            row(lambda e: _sign(e) if e < m else -z4 * _sign(e - m), "θ_4"),
        ]
        for j in range(1, (n - 1) // 2 + 1):
            rows.append(row(
                lambda e, j=j: (zeta(n, j * e) + zeta(n, -j * e)) if e < m else _ZERO,
                f"π_{j}"))
        for k in range(1, (n - 1) // 2 + 1):
            s = 2 * k - 1
            rows.append(row(
                lambda e, s=s: (zeta(m, s * e) + zeta(m, -s * e)) if e < m else _ZERO,
                f"γ_{k}"))
        return rows

    # n even: dihedral-shaped table with rotation order 2n; the class of
    # b^2 = a^n plays the central column.
    rows = [
        row(lambda e: _ONE, "χ_1"),
        row(lambda e: _ONE if e < m else -_ONE, "χ_2"),
        row(lambda e: _sign(e) if e < m else _sign(e - m), "χ_3"),
        row(lambda e: _sign(e) if e < m else -_sign(e - m), "χ_4"),
    ]
    for j in range(1, n):
        rows.append(row(
            lambda e, j=j: (zeta(m, j * e) + zeta(m, -j * e)) if e < m else _ZERO,
            f"ψ_{j}"))
    return rows


def family_table(g: FiniteGroup) -> CharacterTable:
    """The closed-form character table of a family-constructed group."""
    cached = g._cache.get("family_table")
    if cached is not None:
        return cached
    if g.family == "cyclic":
        rows = _cyclic_rows(g, g.gens["a"])
    elif g.family == "dihedral":
        rows = _dihedral_rows(g)
    elif g.family == "dicyclic":
        if g.n == 1:
            rows = _cyclic_rows(g, g.gens["b"])
        else:
            rows = _dicyclic_rows(g)
    elif g.family == "product":
        g1, g2 = g.factors
        table = tensor_table(family_table(g1), family_table(g2), g)
        g._cache["family_table"] = table
        return table
    else:
        raise UnsupportedFamilyError(f"no closed-form table for family {g.family!r}")
    table = CharacterTable(g, tuple(rows), "closed-form")
    g._cache["family_table"] = table
    return table


def tensor_table(t1: CharacterTable, t2: CharacterTable,
                 product: FiniteGroup | None = None) -> CharacterTable:
    """Character table of a direct product as the tensor of factor tables."""
    if product is None:
        product = product_group(t1.group, t2.group)
    if len(product.factors) != 2 or product.factors[0] is not t1.group \
            or product.factors[1] is not t2.group:
        raise DomainMismatchError("tables must belong to the factors of the product group")
    o2 = t2.group.order
    cls = conjugacy_classes(product)
    rows = []
    for r1 in t1.irreducibles:
        for r2 in t2.irreducibles:
            values = []
            for rep in cls.reps:
                i1, i2 = divmod(rep, o2)
                values.append(r1.value_on_element(i1) * r2.value_on_element(i2))
            rows.append(ClassFunction(product, tuple(values), f"{r1.name}⊗{r2.name}"))
    return CharacterTable(product, tuple(rows), "closed-form")


def subgroup_table(h: Subgroup) -> CharacterTable:
    """Irreducible characters of a subgroup, on the subgroup's own classes.

    Cyclic subgroups get the mu_k rows directly; nonabelian subgroups of
    dihedral/dicyclic parents are matched to the isomorphic family group
    through the generators (rotation part, outside element) and the family
    table is transported along that isomorphism.
    """
    if h.is_full():
        return family_table(h.parent)
    key = ("subgroup_table", h.members)
    cached = h.parent._cache.get(key)
    if cached is not None:
        return cached
    hg = h.group
    kind, data = subgroup_structure(h)
    if kind == "trivial":
        rows = [ClassFunction(hg, (_ONE,), "μ_0")]
    elif kind == "cyclic":
        rows = _cyclic_rows(hg, h.local_index()[data])
    elif kind in ("dihedral", "dicyclic"):
        a1, b1 = data
        p = h.parent
        model = dihedral_group(h.order // 2) if kind == "dihedral" \
            else dicyclic_group(h.order // 4)
        rot = model.order // 2
        # model element j*rot + i corresponds to b1^j * a1^i in the parent
        model_of_local: dict[int, int] = {}
        loc = h.local_index()
        for e in range(model.order):
            j, i = divmod(e, rot)
            parent_elt = p.mul[p.power(b1, j)][p.power(a1, i)]
            model_of_local[loc[parent_elt]] = e
        if len(model_of_local) != h.order:
            raise InternalConsistencyError("subgroup correspondence is not a bijection")
        cls_h = conjugacy_classes(hg)
        rows = []
        for r in family_table(model).irreducibles:
            values = tuple(r.value_on_element(model_of_local[rep]) for rep in cls_h.reps)
            rows.append(ClassFunction(hg, values, r.name))
    else:
        raise UnsupportedFamilyError(
            f"no character table construction for subgroup kind {kind!r}"
        )
    table = CharacterTable(hg, tuple(rows), "closed-form")
    h.parent._cache[key] = table
    return table


# -- validation and decomposition --------------------------------------------


@dataclass(frozen=True)
class TableValidation:
    passed: bool
    failures: tuple[str, ...]


def validate_table(t: CharacterTable) -> TableValidation:
    """Check row count, degree sum, and both orthogonality relations exactly."""
    failures: list[str] = []
    g = t.group
    cls = conjugacy_classes(g)
    k = len(cls.reps)
    rows = t.irreducibles
    if len(rows) != k:
        failures.append(f"row count {len(rows)} != class count {k}")
    deg_sum = 0
    for r in rows:
        d = r.degree.as_rational_integer()
        if d is None or d < 1:
            failures.append(f"row {r.name}: degree {r.degree} is not a positive integer")
        else:
            deg_sum += d * d
    if deg_sum != g.order:
        failures.append(f"sum of squared degrees {deg_sum} != group order {g.order}")
    # conjugates are shared by every pair below, so compute them once
    conj_rows = [tuple(v.conj() for v in r.values) for r in rows]
    sizes = cls.sizes
    order = g.order
    for i, ri in enumerate(rows):
        vi = ri.values
        for j in range(i, len(rows)):
            total = weighted_product_sum(vi, conj_rows[j], sizes)
            want = order if i == j else 0
            if total != want:
                failures.append(
                    f"row orthogonality <{ri.name},{rows[j].name}> = "
                    f"{total * Fraction(1, order)}, expected {1 if i == j else 0}"
                )
    columns = [tuple(r.values[c] for r in rows) for c in range(k)]
    conj_columns = [tuple(cr[c] for cr in conj_rows) for c in range(k)]
    for c in range(k):
        for cp in range(c, k):
            total = weighted_product_sum(columns[c], conj_columns[cp])
            want = Fraction(order, sizes[c]) if c == cp else Fraction(0)
            if total != want:
                failures.append(
                    f"column orthogonality at classes {c},{cp} = {total}, expected {want}"
                )
    return TableValidation(not failures, tuple(failures))


def decompose(f: ClassFunction, t: CharacterTable) -> tuple[int, ...]:
    """Multiplicities <f, chi> for each row chi, certified nonnegative integers."""
    if f.group is not t.group:
        raise DomainMismatchError("function and table must live on the same group")
    mults = []
    for r in t.irreducibles:
        q = inner_product(f, r).as_rational_integer()
        if q is None or q < 0:
            raise IntegralityError(
                f"<{f.name or 'f'}, {r.name}> is not a nonnegative integer"
            )
        mults.append(q)
    deg_f = f.degree.as_rational_integer()
    if deg_f is not None:
        total = sum(m * r.degree.as_rational_integer() for m, r in zip(mults, t.irreducibles))
        if total != deg_f:
            raise IntegralityError(
                f"decomposition of {f.name or 'f'} accounts for degree {total}, not {deg_f}"
            )
    return tuple(mults)


# -- independent constructive route ------------------------------------------


_LABEL_TOKEN = re.compile(r"([a-z])(?:\^(\d+))?")


def _tokenize_label(label: str) -> list[tuple[str, int]]:
    if label == "1":
        return []
    out = []
    pos = 0
    for m in _LABEL_TOKEN.finditer(label):
        if m.start() != pos:
            raise InternalConsistencyError(f"unparseable label {label!r}")
        pos = m.end()
        out.append((m.group(1), int(m.group(2) or 1)))
    if pos != len(label):
        raise InternalConsistencyError(f"unparseable label {label!r}")
    return out


def linear_characters_bruteforce(g: FiniteGroup) -> list[ClassFunction]:
    """All homomorphisms g -> roots of unity, found by exhaustive assignment.

    Each labeled generator is assigned a root of unity of order dividing
    the generator's order; the assignment extends to every element along
    its normal-form label, and survives only if multiplication by each
    generator is respected everywhere (which forces a homomorphism).
    """
    gen_items = sorted(g.gens.items())
    gen_idx = [i for _, i in gen_items]
    gen_ord = [g.element_order(i) for i in gen_idx]
    tokenized = [_tokenize_label(label) for label in g.labels]
    cls = conjugacy_classes(g)
    found: list[ClassFunction] = []
    for assignment in itertools.product(*(range(o) for o in gen_ord)):
        images = {
            letter: zeta(order, exp)
            for (letter, _), order, exp in zip(gen_items, gen_ord, assignment)
        }
        values = []
        for toks in tokenized:
            v = _ONE
            for letter, e in toks:
                v = v * images[letter] ** e
            values.append(v)
        ok = True
        for gi in gen_idx:
            vg = values[gi]
            row = g.mul[gi]
            for e in range(g.order):
                if values[row[e]] != vg * values[e]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            row_values = tuple(values[rep] for rep in cls.reps)
            found.append(ClassFunction(g, row_values, f"λ_{len(found)}"))
    return found


def constructive_family_table(g: FiniteGroup) -> CharacterTable:
    """Independent table reconstruction used as an oracle for family_table.

    Linear rows come from the brute-force homomorphism search; the
    remaining irreducibles are inductions of the rotation subgroup's
    characters filtered by self-inner-product exactly 1, deduplicated.
    """
    if g.family not in ("cyclic", "dihedral", "dicyclic"):
        raise UnsupportedFamilyError(f"no constructive table for family {g.family!r}")
    cls = conjugacy_classes(g)
    rows = list(linear_characters_bruteforce(g))
    if len(rows) < len(cls.reps):
        rotation = generated_subgroup(g, [g.gens["a"]])
        seen = [r.values for r in rows]
        for mu in subgroup_table(rotation).irreducibles:
            f = induce(mu, rotation)
            if inner_product(f, f) == 1 and f.values not in seen:
                rows.append(f)
                seen.append(f.values)
    if len(rows) != len(cls.reps):
        raise OracleFailureError(
            f"constructive reconstruction found {len(rows)} of {len(cls.reps)} rows"
        )
    table = CharacterTable(g, tuple(rows), "constructive")
    check = validate_table(table)
    if not check.passed:
        raise OracleFailureError(
            "constructive table failed validation: " + "; ".join(check.failures)
        )
    return table


# -- rendering ----------------------------------------------------------------


def table_to_json(t: CharacterTable) -> dict:
    cls = conjugacy_classes(t.group)
    return {
        "group": t.group.name,
        "classes": [t.group.labels[rep] for rep in cls.reps],
        "rows": [
            {"name": r.name, "values": [str(v) for v in r.values]}
            for r in t.irreducibles
        ],
    }


def _grid(header: list[str], body: list[list[str]], title: str | None = None) -> str:
    widths = [max(len(row[c]) for row in [header] + body) for c in range(len(header))]
    lines = [] if title is None else [title]
    for row in [header] + body:
        first = row[0].ljust(widths[0])
        rest = [v.rjust(w) for v, w in zip(row[1:], widths[1:])]
        lines.append("  ".join([first] + rest).rstrip())
    return "\n".join(lines)


def table_to_text(t: CharacterTable) -> str:
    cls = conjugacy_classes(t.group)
    header = [""] + [t.group.labels[rep] for rep in cls.reps]
    body = [[r.name] + [str(v) for v in r.values] for r in t.irreducibles]
    return _grid(header, body, title=f"Character table of {t.group.name}")
