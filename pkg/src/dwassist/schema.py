"""Warehouse schema drafts and the rules that govern them.

A draft is an immutable value: applying a design action returns a new
draft and never mutates the input. Structural rules (name uniqueness,
contexts that exist and have the right kind, link keys that match) are
enforced at apply time; model-family rules (what makes a star a star)
are checked by :func:`validate`, which reports violations instead of
raising so half-built drafts can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .canonical import canonical_json
from .errors import ActionError, ParseError
from .events import DesignAction, parse_link_label
from .kinds import ModelKind, ProcessKind


@dataclass(frozen=True)
class FactTable:
    name: str
    keys: tuple[str, ...] = ()
    attributes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"name": self.name, "keys": list(self.keys), "attributes": list(self.attributes)}


@dataclass(frozen=True)
class DimensionTable:
    name: str
    keys: tuple[str, ...] = ()
    attributes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"name": self.name, "keys": list(self.keys), "attributes": list(self.attributes)}


@dataclass(frozen=True)
class Link:
    """A join between a source table's key and a dimension's key.

    ``dimension_to_dimension`` marks links whose source is itself a
    dimension table; they only make sense in snowflake drafts.
    """

    fact_table: str
    fact_key: str
    dimension_table: str
    dimension_to_dimension: bool = False

    def to_dict(self) -> dict:
        return {
            "fact_table": self.fact_table,
            "fact_key": self.fact_key,
            "dimension_table": self.dimension_table,
            "dimension_to_dimension": self.dimension_to_dimension,
        }


@dataclass(frozen=True)
class SchemaDraft:
    """The schema under construction. Tables keep creation order."""

    domain: str = ""
    model: ModelKind | None = None
    fact_tables: tuple[FactTable, ...] = ()
    dimension_tables: tuple[DimensionTable, ...] = ()
    links: tuple[Link, ...] = ()

    def fact_table(self, name: str) -> FactTable | None:
        for table in self.fact_tables:
            if table.name == name:
                return table
        return None

    def dimension_table(self, name: str) -> DimensionTable | None:
        for table in self.dimension_tables:
            if table.name == name:
                return table
        return None

    def table_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.fact_tables) + tuple(
            t.name for t in self.dimension_tables
        )

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "model": self.model.value if self.model else None,
            "fact_tables": [t.to_dict() for t in self.fact_tables],
            "dimension_tables": [t.to_dict() for t in self.dimension_tables],
            "links": [l.to_dict() for l in self.links],
        }


EMPTY_DRAFT = SchemaDraft()


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: str

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "subject": self.subject}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def new_draft(domain: str, model: ModelKind) -> SchemaDraft:
    """Start an empty draft for a chosen domain and model family."""
    cleaned = domain.strip()
    if not cleaned:
        raise ActionError("EmptyName", "domain name must be nonempty")
    return SchemaDraft(domain=cleaned, model=model)


def _parse_model(label: str) -> ModelKind:
    try:
        return ModelKind(label.strip().lower())
    except ValueError:
        raise ActionError(
            "UnknownModel",
            f"model must be one of {[m.value for m in ModelKind]}, got {label!r}",
            subject=label,
        ) from None


def _require_model(draft: SchemaDraft, action: DesignAction) -> None:
    if not draft.domain or draft.model is None:
        raise ActionError(
            "MissingContext",
            f"{action.process.value} requires a selected domain and model",
            subject=action.label,
        )


def _require_fresh_table_name(draft: SchemaDraft, name: str) -> None:
    if name in draft.table_names():
        raise ActionError("DuplicateName", f"table {name!r} already exists", subject=name)


def _with_field(
    table: FactTable | DimensionTable, label: str, *, key: bool
) -> FactTable | DimensionTable:
    if label in table.keys or label in table.attributes:
        raise ActionError(
            "DuplicateName",
            f"{label!r} already declared on table {table.name!r}",
            subject=label,
        )
    if key:
        return replace(table, keys=table.keys + (label,))
    return replace(table, attributes=table.attributes + (label,))


def _fact_context(draft: SchemaDraft, action: DesignAction) -> FactTable:
    if action.context is None:
        raise ActionError(
            "MissingContext",
            f"{action.process.value} requires a fact table context",
            subject=action.label,
        )
    table = draft.fact_table(action.context)
    if table is None:
        if draft.dimension_table(action.context) is not None:
            raise ActionError(
                "WrongKindContext",
                f"{action.context!r} is a dimension table, not a fact table",
                subject=action.context,
            )
        raise ActionError(
            "MissingContext", f"no fact table named {action.context!r}", subject=action.context
        )
    return table


def _dimension_context(draft: SchemaDraft, action: DesignAction) -> DimensionTable:
    if action.context is None:
        raise ActionError(
            "MissingContext",
            f"{action.process.value} requires a dimension table context",
            subject=action.label,
        )
    table = draft.dimension_table(action.context)
    if table is None:
        if draft.fact_table(action.context) is not None:
            raise ActionError(
                "WrongKindContext",
                f"{action.context!r} is a fact table, not a dimension table",
                subject=action.context,
            )
        raise ActionError(
            "MissingContext",
            f"no dimension table named {action.context!r}",
            subject=action.context,
        )
    return table


def _replace_fact(draft: SchemaDraft, table: FactTable) -> SchemaDraft:
    tables = tuple(table if t.name == table.name else t for t in draft.fact_tables)
    return replace(draft, fact_tables=tables)


def _replace_dimension(draft: SchemaDraft, table: DimensionTable) -> SchemaDraft:
    tables = tuple(table if t.name == table.name else t for t in draft.dimension_tables)
    return replace(draft, dimension_tables=tables)


def _apply_link(draft: SchemaDraft, action: DesignAction) -> SchemaDraft:
    source_name, key, dimension_name = parse_link_label(action.label)
    source: FactTable | DimensionTable | None = draft.fact_table(source_name)
    dimension_to_dimension = False
    if source is None:
        source = draft.dimension_table(source_name)
        dimension_to_dimension = source is not None
    if source is None:
        raise ActionError(
            "MissingContext", f"no table named {source_name!r}", subject=source_name
        )
    dimension = draft.dimension_table(dimension_name)
    if dimension is None:
        if draft.fact_table(dimension_name) is not None:
            raise ActionError(
                "WrongKindContext",
                f"link target {dimension_name!r} must be a dimension table",
                subject=dimension_name,
            )
        raise ActionError(
            "MissingContext",
            f"no dimension table named {dimension_name!r}",
            subject=dimension_name,
        )
    if key not in source.keys:
        raise ActionError(
            "KeyMismatch",
            f"table {source_name!r} declares no key {key!r}",
            subject=key,
        )
    if key not in dimension.keys:
        raise ActionError(
            "KeyMismatch",
            f"dimension {dimension_name!r} declares no key {key!r}",
            subject=key,
        )
    link = Link(source_name, key, dimension_name, dimension_to_dimension)
    if any(
        (l.fact_table, l.fact_key, l.dimension_table) == (source_name, key, dimension_name)
        for l in draft.links
    ):
        raise ActionError("DuplicateName", f"link {action.label!r} already exists", subject=action.label)
    return replace(draft, links=draft.links + (link,))


def apply_action(draft: SchemaDraft, action: DesignAction) -> SchemaDraft:
    """Apply one design action, returning the next draft.

    Raises ActionError and leaves ``draft`` untouched when the action
    violates a structural rule.
    """
    process = action.process
    if process is ProcessKind.SELECT_DOMAIN:
        if draft.domain:
            raise ActionError(
                "AlreadySelected", f"domain already selected: {draft.domain!r}", subject=action.label
            )
        return replace(draft, domain=action.label)
    if process is ProcessKind.SELECT_MODEL:
        if not draft.domain:
            raise ActionError(
                "MissingContext", "select a domain before the model", subject=action.label
            )
        if draft.model is not None:
            raise ActionError(
                "AlreadySelected",
                f"model already selected: {draft.model.value}",
                subject=action.label,
            )
        return replace(draft, model=_parse_model(action.label))
    _require_model(draft, action)
    if process is ProcessKind.CREATE_FACT_TABLE:
        _require_fresh_table_name(draft, action.label)
        return replace(draft, fact_tables=draft.fact_tables + (FactTable(action.label),))
    if process is ProcessKind.CREATE_DIMENSION_TABLE:
        _require_fresh_table_name(draft, action.label)
        return replace(
            draft, dimension_tables=draft.dimension_tables + (DimensionTable(action.label),)
        )
    if process is ProcessKind.ADD_FACT_KEY:
        table = _fact_context(draft, action)
        return _replace_fact(draft, _with_field(table, action.label, key=True))
    if process is ProcessKind.ADD_FACT_ATTRIBUTE:
        table = _fact_context(draft, action)
        return _replace_fact(draft, _with_field(table, action.label, key=False))
    if process is ProcessKind.ADD_DIMENSION_KEY:
        table = _dimension_context(draft, action)
        return _replace_dimension(draft, _with_field(table, action.label, key=True))
    if process is ProcessKind.ADD_DIMENSION_ATTRIBUTE:
        table = _dimension_context(draft, action)
        return _replace_dimension(draft, _with_field(table, action.label, key=False))
    if process is ProcessKind.ADD_LINK:
        return _apply_link(draft, action)
    raise AssertionError(f"unhandled process kind {process}")


def _uniqueness_violations(draft: SchemaDraft) -> list[Violation]:
    found: list[Violation] = []
    seen: set[str] = set()
    for name in draft.table_names():
        if name in seen:
            found.append(Violation("DuplicateName", f"table name {name!r} reused", name))
        seen.add(name)
    for table in (*draft.fact_tables, *draft.dimension_tables):
        fields: set[str] = set()
        for label in (*table.keys, *table.attributes):
            if label in fields:
                found.append(
                    Violation(
                        "DuplicateName",
                        f"field {label!r} reused on table {table.name!r}",
                        label,
                    )
                )
            fields.add(label)
    return found


def _link_violations(draft: SchemaDraft) -> list[Violation]:
    found: list[Violation] = []
    for link in draft.links:
        label = f"{link.fact_table}.{link.fact_key}->{link.dimension_table}"
        source: FactTable | DimensionTable | None
        if link.dimension_to_dimension:
            source = draft.dimension_table(link.fact_table)
            if source is None and draft.fact_table(link.fact_table) is not None:
                found.append(
                    Violation(
                        "WrongKindContext",
                        f"link {label!r} is flagged dimension-to-dimension but starts at a fact table",
                        label,
                    )
                )
                continue
        else:
            source = draft.fact_table(link.fact_table)
            if source is None and draft.dimension_table(link.fact_table) is not None:
                found.append(
                    Violation(
                        "WrongKindContext",
                        f"link {label!r} starts at a dimension table but is not flagged",
                        label,
                    )
                )
                continue
        if source is None:
            found.append(Violation("UnknownTable", f"link source {link.fact_table!r} missing", label))
            continue
        dimension = draft.dimension_table(link.dimension_table)
        if dimension is None:
            found.append(
                Violation("UnknownTable", f"link target {link.dimension_table!r} missing", label)
            )
            continue
        if link.fact_key not in source.keys:
            found.append(
                Violation(
                    "KeyMismatch",
                    f"table {link.fact_table!r} declares no key {link.fact_key!r}",
                    label,
                )
            )
        if link.fact_key not in dimension.keys:
            found.append(
                Violation(
                    "KeyMismatch",
                    f"dimension {link.dimension_table!r} declares no key {link.fact_key!r}",
                    label,
                )
            )
    return found


def _star_violations(draft: SchemaDraft) -> list[Violation]:
    found: list[Violation] = []
    if len(draft.fact_tables) != 1:
        names = ", ".join(t.name for t in draft.fact_tables) or "none"
        found.append(
            Violation(
                "StarSingleFact",
                f"a star draft needs exactly one fact table, found {len(draft.fact_tables)} ({names})",
                names,
            )
        )
    fact_name = draft.fact_tables[0].name if len(draft.fact_tables) == 1 else None
    linked: set[str] = set()
    for link in draft.links:
        label = f"{link.fact_table}.{link.fact_key}->{link.dimension_table}"
        if link.dimension_to_dimension or (fact_name is not None and link.fact_table != fact_name):
            found.append(
                Violation(
                    "StarIndirectLink",
                    f"star links must run from the fact table straight to a dimension: {label!r}",
                    label,
                )
            )
            continue
        linked.add(link.dimension_table)
    for table in draft.dimension_tables:
        if table.name not in linked:
            found.append(
                Violation(
                    "StarUnlinkedDimension",
                    f"dimension {table.name!r} is not linked to the fact table",
                    table.name,
                )
            )
    return found


def _snowflake_violations(draft: SchemaDraft) -> list[Violation]:
    found: list[Violation] = []
    if len(draft.fact_tables) != 1:
        names = ", ".join(t.name for t in draft.fact_tables) or "none"
        found.append(
            Violation(
                "SnowflakeSingleFact",
                f"a snowflake draft needs exactly one fact table, found {len(draft.fact_tables)}",
                names,
            )
        )
        return found
    # Dimension-to-dimension links are allowed; every dimension must still
    # be reachable from the fact table by following links outward.
    reachable: set[str] = set()
    frontier = [draft.fact_tables[0].name]
    edges: dict[str, list[str]] = {}
    for link in draft.links:
        edges.setdefault(link.fact_table, []).append(link.dimension_table)
    while frontier:
        current = frontier.pop()
        for target in edges.get(current, ()):
            if target not in reachable:
                reachable.add(target)
                frontier.append(target)
    for table in draft.dimension_tables:
        if table.name not in reachable:
            found.append(
                Violation(
                    "SnowflakeUnreachableDimension",
                    f"dimension {table.name!r} is not reachable from the fact table",
                    table.name,
                )
            )
    return found


def _constellation_violations(draft: SchemaDraft) -> list[Violation]:
    found: list[Violation] = []
    if len(draft.fact_tables) < 2:
        found.append(
            Violation(
                "ConstellationFactCount",
                f"a constellation draft needs at least two fact tables, found {len(draft.fact_tables)}",
                str(len(draft.fact_tables)),
            )
        )
    fact_names = {t.name for t in draft.fact_tables}
    facts_per_dimension: dict[str, set[str]] = {}
    for link in draft.links:
        if link.fact_table in fact_names:
            facts_per_dimension.setdefault(link.dimension_table, set()).add(link.fact_table)
    if not any(len(facts) >= 2 for facts in facts_per_dimension.values()):
        found.append(
            Violation(
                "ConstellationNoSharedDimension",
                "no dimension table is linked to two or more fact tables",
                draft.domain,
            )
        )
    return found


def validate(draft: SchemaDraft) -> ValidationReport:
    """Check the draft against its model family's rules.

    The report lists every violation found; an empty list means the
    draft is complete and well formed for its model kind.
    """
    violations: list[Violation] = []
    if not draft.domain:
        violations.append(Violation("MissingDomain", "no domain selected", ""))
    if draft.model is None:
        violations.append(Violation("MissingModel", "no model selected", draft.domain))
        return ValidationReport(tuple(violations))
    violations.extend(_uniqueness_violations(draft))
    violations.extend(_link_violations(draft))
    if draft.model is ModelKind.STAR:
        violations.extend(_star_violations(draft))
    elif draft.model is ModelKind.SNOWFLAKE:
        violations.extend(_snowflake_violations(draft))
    else:
        violations.extend(_constellation_violations(draft))
    return ValidationReport(tuple(violations))


def draft_to_document(draft: SchemaDraft) -> str:
    """Serialize a draft to canonical text (stable bytes for equal drafts)."""
    return canonical_json(draft.to_dict())


def _table_from_dict(value: dict, cls, where: str):
    try:
        return cls(
            name=value["name"],
            keys=tuple(value.get("keys", ())),
            attributes=tuple(value.get("attributes", ())),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad table entry: {exc}", location=where) from None


def draft_from_dict(value: dict) -> SchemaDraft:
    if not isinstance(value, dict):
        raise ParseError("draft document must be an object", location="$")
    model_token = value.get("model")
    model = None
    if model_token is not None:
        try:
            model = ModelKind(model_token)
        except ValueError:
            raise ParseError(f"unknown model token {model_token!r}", location="model") from None
    facts = tuple(
        _table_from_dict(t, FactTable, f"fact_tables[{i}]")
        for i, t in enumerate(value.get("fact_tables", ()))
    )
    dimensions = tuple(
        _table_from_dict(t, DimensionTable, f"dimension_tables[{i}]")
        for i, t in enumerate(value.get("dimension_tables", ()))
    )
    links = []
    for i, entry in enumerate(value.get("links", ())):
        try:
            links.append(
                Link(
                    fact_table=entry["fact_table"],
                    fact_key=entry["fact_key"],
                    dimension_table=entry["dimension_table"],
                    dimension_to_dimension=bool(entry.get("dimension_to_dimension", False)),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad link entry: {exc}", location=f"links[{i}]") from None
    return SchemaDraft(
        domain=value.get("domain", ""),
        model=model,
        fact_tables=facts,
        dimension_tables=dimensions,
        links=tuple(links),
    )
