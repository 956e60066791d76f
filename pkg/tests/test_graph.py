import pytest

import helpers
from dwassist import EdgeKind, NodeKind, ObjectKind, ProcessKind
from dwassist.errors import GraphError
from dwassist.events import DesignAction, DesignEvent
from dwassist.graph import (
    ABSTRACT_USER,
    AbstractNode,
    ConcreteNode,
    DEFAULT_TASK_MODEL,
    abstract_object,
    abstract_process,
    build_observation_model,
    build_use_model,
    context_parent_index,
    object_node_id,
    prior_steps,
    process_node_id,
    task_decompositions,
)


def events_of(steps) -> list[DesignEvent]:
    return [
        DesignEvent.from_action("s-1", seq, DesignAction.of(ProcessKind(p), label, ctx))
        for seq, (p, label, ctx) in enumerate(steps)
    ]


SALE_EVENTS = events_of(helpers.SALE_SESSION)


class TestNodes:
    def test_abstract_node_invariants(self):
        assert ABSTRACT_USER.kind is NodeKind.USER
        with pytest.raises(ValueError):
            AbstractNode(NodeKind.PROCESS)
        with pytest.raises(ValueError):
            AbstractNode(NodeKind.OBJECT)
        with pytest.raises(ValueError):
            AbstractNode(NodeKind.USER, process=ProcessKind.SELECT_DOMAIN)

    def test_concrete_object_needs_label(self):
        with pytest.raises(ValueError):
            ConcreteNode("o0", abstract_object(ObjectKind.DOMAIN), "", 2, "s-1")


class TestUseModel:
    def test_one_object_node_per_event(self):
        model = build_use_model(SALE_EVENTS)
        assert len(model.nodes) == len(SALE_EVENTS)
        assert [n.id for n in model.nodes] == [object_node_id(i) for i in range(15)]
        assert all(n.timestamp == 2 * i + 2 for i, n in enumerate(model.nodes))

    def test_every_object_but_the_domain_has_a_parent(self):
        model = build_use_model(SALE_EVENTS)
        assert len(model.edges) == len(SALE_EVENTS) - 1
        assert all(e.kind is EdgeKind.CONTEXTUALIZATION for e in model.edges)
        assert model.parent_of(object_node_id(0)) is None

    def test_parents_follow_declared_contexts(self):
        model = build_use_model(SALE_EVENTS)
        assert model.parent_of(object_node_id(1)) == object_node_id(0)  # model under domain
        assert model.parent_of(object_node_id(2)) == object_node_id(1)  # fact under model
        assert model.parent_of(object_node_id(3)) == object_node_id(2)  # key under fact
        assert model.parent_of(object_node_id(7)) == object_node_id(6)  # dim key under Seller
        assert model.parent_of(object_node_id(11)) == object_node_id(9)  # attr under Product
        assert model.parent_of(object_node_id(13)) == object_node_id(1)  # link under model

    def test_context_resolves_to_latest_matching_object(self):
        # Raw events may reuse a table label; the nearest earlier match wins.
        events = events_of(
            [
                ("select_domain", "A", None),
                ("select_model", "star", None),
                ("create_dimension_table", "D", None),
                ("create_dimension_table", "D", None),
                ("add_dimension_key", "K", "D"),
            ]
        )
        assert context_parent_index(events, 4) == 3

    def test_field_without_context_is_orphaned(self):
        events = events_of(
            [
                ("select_domain", "A", None),
                ("select_model", "star", None),
                ("create_fact_table", "F", None),
                ("add_fact_key", "K", None),
            ]
        )
        with pytest.raises(GraphError) as err:
            build_use_model(events)
        assert err.value.code == "OrphanObject"

    def test_context_naming_missing_table_is_orphaned(self):
        events = events_of(
            [
                ("select_domain", "A", None),
                ("select_model", "star", None),
                ("create_fact_table", "F", None),
                ("add_fact_key", "K", "Ghost"),
            ]
        )
        with pytest.raises(GraphError) as err:
            build_use_model(events)
        assert err.value.code == "OrphanObject"

    def test_model_before_domain_is_orphaned(self):
        events = [
            DesignEvent.from_action(
                "s-1", 0, DesignAction.of(ProcessKind.SELECT_MODEL, "star")
            )
        ]
        with pytest.raises(GraphError):
            build_use_model(events)


class TestObservationModel:
    def test_process_chain_in_order(self):
        model = build_observation_model(SALE_EVENTS)
        assert len(model.nodes) == 15
        assert len(model.edges) == 14
        assert all(e.kind is EdgeKind.TEMPORAL_NEXT for e in model.edges)
        assert [n.timestamp for n in model.nodes] == [2 * i + 1 for i in range(15)]
        assert model.edges[0].source == process_node_id(0)
        assert model.edges[0].target == process_node_id(1)
        assert model.nodes[0].abstract == abstract_process(ProcessKind.SELECT_DOMAIN)


class TestTaskModel:
    def test_every_process_has_an_entry(self):
        assert set(DEFAULT_TASK_MODEL) == set(ProcessKind)

    def test_prior_steps_for_links(self):
        assert prior_steps(ProcessKind.ADD_LINK) == (
            ProcessKind.SELECT_DOMAIN,
            ProcessKind.SELECT_MODEL,
            ProcessKind.CREATE_FACT_TABLE,
            ProcessKind.CREATE_DIMENSION_TABLE,
        )

    def test_prior_steps_for_fields_and_roots(self):
        assert prior_steps(ProcessKind.ADD_DIMENSION_ATTRIBUTE) == (
            ProcessKind.SELECT_DOMAIN,
            ProcessKind.SELECT_MODEL,
            ProcessKind.CREATE_DIMENSION_TABLE,
        )
        assert prior_steps(ProcessKind.SELECT_DOMAIN) == ()

    def test_table_processes_offer_an_alternate_decomposition(self):
        flat = task_decompositions(ProcessKind.CREATE_FACT_TABLE)
        assert flat.canonical.children == (
            ProcessKind.ADD_FACT_KEY,
            ProcessKind.ADD_FACT_ATTRIBUTE,
        )
        assert flat.alternate is not None
        assert task_decompositions(ProcessKind.ADD_LINK).alternate is None
