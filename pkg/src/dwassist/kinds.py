"""Closed taxonomies shared by every layer of the assistant.

The design vocabulary is fixed: nine process kinds, nine object kinds,
three schema model kinds. Each process kind manipulates exactly one
object kind, so the two enumerations are paired one-to-one. Serialized
tokens are the lowercase member names.
"""

from __future__ import annotations

import enum


class NodeKind(str, enum.Enum):
    """The three kinds of node a trace graph can contain."""

    USER = "user"
    PROCESS = "process"
    OBJECT = "object"


class EdgeKind(str, enum.Enum):
    """Typed relations between trace graph nodes."""

    CONTEXTUALIZATION = "contextualization"
    COMPOSITION = "composition"
    INSTANTIATION = "instantiation"
    MANIPULATION = "manipulation"
    TEMPORAL_NEXT = "temporal_next"


class ProcessKind(str, enum.Enum):
    """Design steps a user can perform, in canonical stage order."""

    SELECT_DOMAIN = "select_domain"
    SELECT_MODEL = "select_model"
    CREATE_FACT_TABLE = "create_fact_table"
    ADD_FACT_KEY = "add_fact_key"
    ADD_FACT_ATTRIBUTE = "add_fact_attribute"
    CREATE_DIMENSION_TABLE = "create_dimension_table"
    ADD_DIMENSION_KEY = "add_dimension_key"
    ADD_DIMENSION_ATTRIBUTE = "add_dimension_attribute"
    ADD_LINK = "add_link"


class ObjectKind(str, enum.Enum):
    """Schema elements a design step can produce or select.

    Declaration order is the canonical total order used wherever ties
    between object kinds must be broken deterministically.
    """

    DOMAIN = "domain"
    MODEL = "model"
    FACT_TABLE = "fact_table"
    DIMENSION_TABLE = "dimension_table"
    FACT_KEY = "fact_key"
    FACT_ATTRIBUTE = "fact_attribute"
    DIMENSION_KEY = "dimension_key"
    DIMENSION_ATTRIBUTE = "dimension_attribute"
    LINK = "link"


class ModelKind(str, enum.Enum):
    """Supported warehouse model families."""

    STAR = "star"
    SNOWFLAKE = "snowflake"
    CONSTELLATION = "constellation"


# Every process kind manipulates exactly one object kind.
PROCESS_TO_OBJECT: dict[ProcessKind, ObjectKind] = {
    ProcessKind.SELECT_DOMAIN: ObjectKind.DOMAIN,
    ProcessKind.SELECT_MODEL: ObjectKind.MODEL,
    ProcessKind.CREATE_FACT_TABLE: ObjectKind.FACT_TABLE,
    ProcessKind.ADD_FACT_KEY: ObjectKind.FACT_KEY,
    ProcessKind.ADD_FACT_ATTRIBUTE: ObjectKind.FACT_ATTRIBUTE,
    ProcessKind.CREATE_DIMENSION_TABLE: ObjectKind.DIMENSION_TABLE,
    ProcessKind.ADD_DIMENSION_KEY: ObjectKind.DIMENSION_KEY,
    ProcessKind.ADD_DIMENSION_ATTRIBUTE: ObjectKind.DIMENSION_ATTRIBUTE,
    ProcessKind.ADD_LINK: ObjectKind.LINK,
}

OBJECT_TO_PROCESS: dict[ObjectKind, ProcessKind] = {
    o: p for p, o in PROCESS_TO_OBJECT.items()
}

OBJECT_KIND_ORDER: dict[ObjectKind, int] = {
    kind: index for index, kind in enumerate(ObjectKind)
}


def object_order(kind: ObjectKind) -> int:
    """Position of ``kind`` in the canonical object-kind order."""
    return OBJECT_KIND_ORDER[kind]
