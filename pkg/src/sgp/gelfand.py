"""Multiplicity matrices, (strong) Gelfand decisions, and classification audits.

The multiplicity matrix of a pair (G, H) holds <psi induced to G, chi>
over Irr(H) x Irr(G).  Every matrix is computed twice, once through
induction and once through restriction; the two paths must agree exactly
(this is Frobenius reciprocity used as a runtime self-check) and any
disagreement raises `InternalConsistencyError`.

`predict` encodes the closed-form classification rules for which
subgroups of the dihedral and dicyclic families are strong Gelfand;
`audit` diffs the brute-force classification against those rules and
reports discrepancies as data, each carrying a dual-verified witness.
The audit asserts nothing about which side is right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chars import (
    decompose,
    induce,
    inner_product,
    family_table,
    restrict,
    subgroup_table,
)
from .errors import (
    DomainMismatchError,
    IntegralityError,
    InternalConsistencyError,
    InvalidParameterError,
    UnsupportedFamilyError,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    build_group,
    describe_subgroup,
)

__all__ = [
    "Witness",
    "MultiplicityMatrix",
    "SubgroupRecord",
    "ClassificationReport",
    "ClassificationRule",
    "AuditEntry",
    "Discrepancy",
    "GroupAudit",
    "AuditReport",
    "multiplicity_by_induction",
    "multiplicity_by_restriction",
    "multiplicity_matrix",
    "is_gelfand",
    "is_strong_gelfand",
    "classify_subgroups",
    "predict",
    "audit",
    "classification_to_json",
    "group_audit_to_json",
]


@dataclass(frozen=True)
class Witness:
    """A pair with multiplicity >= 2 certifying failure of the strong property."""

    psi: str
    chi: str
    mult: int


@dataclass(frozen=True)
class MultiplicityMatrix:
    group: FiniteGroup
    subgroup: Subgroup
    row_names: tuple[str, ...]
    col_names: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def max_entry(self) -> int:
        return max(max(row) for row in self.entries)

    def first_witness(self) -> Witness | None:
        """Lexicographically first entry >= 2 in (row, col) order."""
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e >= 2:
                    return Witness(self.row_names[i], self.col_names[j], e)
        return None


def _check_pair(g: FiniteGroup, h: Subgroup) -> None:
    if h.parent is not g:
        raise DomainMismatchError("subgroup does not belong to the given group")


def multiplicity_by_induction(g: FiniteGroup, h: Subgroup) -> tuple[tuple[int, ...], ...]:
    """Rows <psi induced to G, chi> computed by decomposing each induction."""
    _check_pair(g, h)
    tg = family_table(g)
    th = subgroup_table(h)
    return tuple(decompose(induce(psi, h), tg) for psi in th.irreducibles)


def multiplicity_by_restriction(g: FiniteGroup, h: Subgroup) -> tuple[tuple[int, ...], ...]:
    """The same matrix computed as <psi, chi restricted to H>."""
    _check_pair(g, h)
    tg = family_table(g)
    th = subgroup_table(h)
    restricted = [restrict(chi, h) for chi in tg.irreducibles]
    rows = []
    for psi in th.irreducibles:
        row = []
        for chi_down, chi in zip(restricted, tg.irreducibles):
            q = inner_product(psi, chi_down).as_rational_integer()
            if q is None or q < 0:
                raise IntegralityError(
                    f"<{psi.name}, {chi.name} restricted> is not a nonnegative integer"
                )
            row.append(q)
        rows.append(tuple(row))
    return tuple(rows)


def multiplicity_matrix(g: FiniteGroup, h: Subgroup) -> MultiplicityMatrix:
    """Dual-path multiplicity matrix for the pair (g, h), cached per pair."""
    _check_pair(g, h)
    key = ("multiplicity_matrix", h.members)
    cached = g._cache.get(key)
    if cached is not None:
        return cached
    via_induction = multiplicity_by_induction(g, h)
    via_restriction = multiplicity_by_restriction(g, h)
    if via_induction != via_restriction:
        raise InternalConsistencyError(
            f"induce-path and restrict-path matrices disagree for "
            f"({g.name}, subgroup of order {h.order})"
        )
    matrix = MultiplicityMatrix(
        group=g,
        subgroup=h,
        row_names=subgroup_table(h).names,
        col_names=family_table(g).names,
        entries=via_induction,
    )
    g._cache[key] = matrix
    return matrix


def _trivial_row_index(h: Subgroup) -> int:
    for i, r in enumerate(subgroup_table(h).irreducibles):
        if all(v == 1 for v in r.values):
            return i
    raise InternalConsistencyError("subgroup table is missing the trivial character")


def is_gelfand(g: FiniteGroup, h: Subgroup) -> bool:
    """Whether inducing the trivial character of h is multiplicity-free."""
    matrix = multiplicity_matrix(g, h)
    return all(e <= 1 for e in matrix.entries[_trivial_row_index(h)])


def is_strong_gelfand(g: FiniteGroup, h: Subgroup) -> tuple[bool, Witness | None]:
    """Whether every induced irreducible is multiplicity-free, with witness."""
    witness = multiplicity_matrix(g, h).first_witness()
    return (witness is None, witness)


@dataclass(frozen=True)
class SubgroupRecord:
    descriptor: str
    order: int
    index: int
    members: tuple[int, ...]
    gelfand: bool
    strong_gelfand: bool
    witness: Witness | None


@dataclass(frozen=True)
class ClassificationReport:
    group: FiniteGroup
    records: tuple[SubgroupRecord, ...]


def classify_subgroups(g: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> ClassificationReport:
    """One record per subgroup, in the deterministic all_subgroups order."""
    records = []
    for h in all_subgroups(g, max_order):
        strong, witness = is_strong_gelfand(g, h)
        records.append(SubgroupRecord(
            descriptor=describe_subgroup(h),
            order=h.order,
            index=h.index,
            members=h.members,
            gelfand=is_gelfand(g, h),
            strong_gelfand=strong,
            witness=witness,
        ))
    return ClassificationReport(g, tuple(records))


@dataclass(frozen=True)
class ClassificationRule:
    """Closed-form prediction of the strong Gelfand subgroups of a family."""

    family: str
    n: int
    source: str

    def predicate(self, descriptor: str) -> bool:
        n = self.n
        if self.family == "dihedral":
            if n <= 2:
                return True
            return (descriptor.startswith("<")
                    or descriptor.startswith("D")
                    or descriptor == f"C{n}"
                    or (n % 2 == 0 and descriptor == f"C{n // 2}"))
        if self.family == "dicyclic":
            if n == 1:
                return True
            return (descriptor.startswith("<")
                    or descriptor.startswith("Dic")
                    or descriptor in (f"C{n}", f"C{2 * n}"))
        # abelian families: every subgroup is strong Gelfand
        return True


def predict(family: str, n: int) -> ClassificationRule:
    """Prediction for a dihedral or dicyclic group of parameter n.

    Dihedral: strong Gelfand subgroups are those containing a reflection
    (reflection and dihedral subgroups), the maximal rotation subgroup,
    and for even n the index-four rotation subgroup.  Dicyclic (n >= 2):
    the <ba^i>-type subgroups, the dicyclic subgroups, and the rotation
    subgroups of order n and 2n.  Degenerate abelian cases (dihedral
    n <= 2, dicyclic n = 1) predict every subgroup.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if family == "dihedral":
        return ClassificationRule(family, n, "dihedral classification rule")
    if family == "dicyclic":
        return ClassificationRule(family, n, "dicyclic classification rule")
    raise UnsupportedFamilyError(f"no classification rule for family {family!r}")


def _prediction_for(family: str, n: int) -> ClassificationRule:
    if family == "cyclic":
        return ClassificationRule(family, n, "abelian rule")
    return predict(family, n)


@dataclass(frozen=True)
class AuditEntry:
    record: SubgroupRecord
    predicted: bool

    @property
    def agrees(self) -> bool:
        return self.record.strong_gelfand == self.predicted


@dataclass(frozen=True)
class Discrepancy:
    descriptor: str
    order: int
    predicted: bool
    computed: bool
    witness: Witness | None


@dataclass(frozen=True)
class GroupAudit:
    family: str
    n: int
    group_name: str
    entries: tuple[AuditEntry, ...]
    discrepancies: tuple[Discrepancy, ...]

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def disagree(self) -> int:
        return len(self.discrepancies)

    @property
    def agree(self) -> int:
        return self.total - self.disagree


@dataclass(frozen=True)
class AuditReport:
    family: str
    audits: tuple[GroupAudit, ...]

    @property
    def total_discrepancies(self) -> int:
        return sum(a.disagree for a in self.audits)


def _reverify_witness(g: FiniteGroup, h: Subgroup, witness: Witness) -> None:
    """Recompute one matrix entry through both paths, fresh, and compare."""
    tg = family_table(g)
    th = subgroup_table(h)
    psi = th.row(witness.psi)
    chi = tg.row(witness.chi)
    via_induction = inner_product(induce(psi, h), chi).as_rational_integer()
    via_restriction = inner_product(psi, restrict(chi, h)).as_rational_integer()
    if not (via_induction == via_restriction == witness.mult and witness.mult >= 2):
        raise InternalConsistencyError(
            f"witness <{witness.psi}, {witness.chi}> = {witness.mult} failed "
            f"re-verification ({via_induction} vs {via_restriction})"
        )


def audit_group(family: str, n: int, max_order: int = DEFAULT_MAX_ORDER) -> GroupAudit:
    """Diff the brute-force classification of one group against the rules."""
    g = build_group(family, n)
    prediction = _prediction_for(family, n)
    report = classify_subgroups(g, max_order)
    entries = []
    discrepancies = []
    for record in report.records:
        predicted = prediction.predicate(record.descriptor)
        entries.append(AuditEntry(record, predicted))
        if record.witness is not None:
            _reverify_witness(g, Subgroup(g, record.members), record.witness)
        if predicted != record.strong_gelfand:
            discrepancies.append(Discrepancy(
                descriptor=record.descriptor,
                order=record.order,
                predicted=predicted,
                computed=record.strong_gelfand,
                witness=record.witness,
            ))
    return GroupAudit(family, n, g.name, tuple(entries), tuple(discrepancies))


def audit(family: str, ns, max_order: int = DEFAULT_MAX_ORDER) -> AuditReport:
    """Audit a family over a range of n values; discrepancies are data."""
    audits = tuple(audit_group(family, n, max_order) for n in ns)
    return AuditReport(family, audits)


# -- JSON renderings -----------------------------------------------------------


def _witness_json(w: Witness | None):
    if w is None:
        return None
    return {"psi": w.psi, "chi": w.chi, "mult": w.mult}


def _record_json(record: SubgroupRecord, predicted: bool | None = None) -> dict:
    out = {
        "desc": record.descriptor,
        "order": record.order,
        "index": record.index,
        "gelfand": record.gelfand,
        "strong_gelfand": record.strong_gelfand,
    }
    w = _witness_json(record.witness)
    if w is not None:
        out["witness"] = w
    if predicted is not None:
        out["predicted_strong_gelfand"] = predicted
    return out


def classification_to_json(report: ClassificationReport) -> dict:
    g = report.group
    out = {"group": g.name, "order": g.order,
           "subgroups": [_record_json(r) for r in report.records]}
    if g.family in ("cyclic", "dihedral", "dicyclic"):
        out["family"] = g.family
        out["n"] = g.n
    return out


def group_audit_to_json(ga: GroupAudit) -> dict:
    subgroups = [_record_json(e.record, e.predicted) for e in ga.entries]
    discrepancies = []
    for d in ga.discrepancies:
        entry = {
            "desc": d.descriptor,
            "order": d.order,
            "predicted": d.predicted,
            "computed": d.computed,
        }
        w = _witness_json(d.witness)
        if w is not None:
            entry["witness"] = w
        discrepancies.append(entry)
    return {
        "family": ga.family,
        "n": ga.n,
        "group": ga.group_name,
        "subgroups": subgroups,
        "discrepancies": discrepancies,
        "summary": {"total": ga.total, "agree": ga.agree, "disagree": ga.disagree},
    }
