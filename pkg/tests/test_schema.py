import json

import pytest
from hypothesis import given, strategies as st

import helpers
from dwassist import ModelKind, ProcessKind
from dwassist.errors import ActionError
from dwassist.events import DesignAction
from dwassist.schema import (
    EMPTY_DRAFT,
    DimensionTable,
    FactTable,
    Link,
    SchemaDraft,
    apply_action,
    draft_from_dict,
    draft_to_document,
    new_draft,
    validate,
)


def act(process: str, label: str, context: str | None = None) -> DesignAction:
    return DesignAction.of(ProcessKind(process), label, context)


def build(steps) -> SchemaDraft:
    draft = EMPTY_DRAFT
    for process, label, context in steps:
        draft = apply_action(draft, act(process, label, context))
    return draft


def codes(report) -> set[str]:
    return {v.code for v in report.violations}


class TestApply:
    def test_full_star_session_builds_expected_draft(self):
        draft = build(helpers.SALE_SESSION)
        assert draft.domain == "Commerce"
        assert draft.model is ModelKind.STAR
        assert draft.fact_tables == (
            FactTable("Sale", ("ID-Seller", "ID-Product"), ("Sale-Price",)),
        )
        assert draft.dimension_table("Product") == DimensionTable(
            "Product", ("ID-Product",), ("Name-Product", "Unit-Price")
        )
        assert draft.links == (
            Link("Sale", "ID-Seller", "Seller"),
            Link("Sale", "ID-Product", "Product"),
        )
        assert validate(draft).ok

    def test_apply_returns_new_draft_and_keeps_input(self):
        before = new_draft("Commerce", ModelKind.STAR)
        after = apply_action(before, act("create_fact_table", "Sale"))
        assert before.fact_tables == ()
        assert after.fact_tables[0].name == "Sale"

    def test_labels_and_contexts_are_trimmed(self):
        draft = build(
            [
                ("select_domain", "  Commerce  ", None),
                ("select_model", "star", None),
                ("create_fact_table", " Sale ", None),
                ("add_fact_key", "ID", "  Sale  "),
            ]
        )
        assert draft.domain == "Commerce"
        assert draft.fact_tables[0] == FactTable("Sale", ("ID",))

    def test_model_token_is_case_insensitive(self):
        for token in ("Star", "STAR", "star"):
            draft = build([("select_domain", "D", None), ("select_model", token, None)])
            assert draft.model is ModelKind.STAR

    @pytest.mark.parametrize(
        "steps, code",
        [
            ([("select_domain", "A", None), ("select_domain", "B", None)], "AlreadySelected"),
            ([("select_model", "star", None)], "MissingContext"),
            (
                [
                    ("select_domain", "A", None),
                    ("select_model", "star", None),
                    ("select_model", "snowflake", None),
                ],
                "AlreadySelected",
            ),
            ([("select_domain", "A", None), ("select_model", "pyramid", None)], "UnknownModel"),
            ([("select_domain", "A", None), ("create_fact_table", "F", None)], "MissingContext"),
            ([("create_fact_table", "F", None)], "MissingContext"),
        ],
    )
    def test_ordering_rules(self, steps, code):
        with pytest.raises(ActionError) as err:
            build(steps)
        assert err.value.code == code

    def test_table_names_unique_across_kinds(self):
        base = [
            ("select_domain", "A", None),
            ("select_model", "star", None),
            ("create_fact_table", "Sale", None),
        ]
        with pytest.raises(ActionError) as err:
            build(base + [("create_dimension_table", "Sale", None)])
        assert err.value.code == "DuplicateName"

    def test_field_names_unique_within_table(self):
        base = [
            ("select_domain", "A", None),
            ("select_model", "star", None),
            ("create_fact_table", "Sale", None),
            ("add_fact_key", "ID", "Sale"),
        ]
        for process in ("add_fact_key", "add_fact_attribute"):
            with pytest.raises(ActionError) as err:
                build(base + [(process, "ID", "Sale")])
            assert err.value.code == "DuplicateName"

    def test_same_field_name_allowed_on_different_tables(self):
        draft = build(
            [
                ("select_domain", "A", None),
                ("select_model", "star", None),
                ("create_fact_table", "Sale", None),
                ("add_fact_key", "ID", "Sale"),
                ("create_dimension_table", "Seller", None),
                ("add_dimension_key", "ID", "Seller"),
            ]
        )
        assert draft.fact_tables[0].keys == ("ID",)
        assert draft.dimension_tables[0].keys == ("ID",)

    def test_field_without_context_rejected(self):
        base = [("select_domain", "A", None), ("select_model", "star", None)]
        with pytest.raises(ActionError) as err:
            build(base + [("add_fact_key", "ID", None)])
        assert err.value.code == "MissingContext"

    def test_field_on_wrong_table_kind_rejected(self):
        base = [
            ("select_domain", "A", None),
            ("select_model", "star", None),
            ("create_fact_table", "Sale", None),
            ("create_dimension_table", "Seller", None),
        ]
        with pytest.raises(ActionError) as err:
            build(base + [("add_fact_key", "ID", "Seller")])
        assert err.value.code == "WrongKindContext"
        with pytest.raises(ActionError) as err:
            build(base + [("add_dimension_attribute", "Name", "Sale")])
        assert err.value.code == "WrongKindContext"

    def test_field_on_unknown_table_rejected(self):
        base = [("select_domain", "A", None), ("select_model", "star", None)]
        with pytest.raises(ActionError) as err:
            build(base + [("add_fact_key", "ID", "Ghost")])
        assert err.value.code == "MissingContext"


LINK_BASE = [
    ("select_domain", "A", None),
    ("select_model", "star", None),
    ("create_fact_table", "Sale", None),
    ("add_fact_key", "ID", "Sale"),
    ("create_dimension_table", "Seller", None),
    ("add_dimension_key", "ID", "Seller"),
]


class TestLinks:
    def test_link_applies_when_key_on_both_endpoints(self):
        draft = build(LINK_BASE + [("add_link", "Sale.ID->Seller", None)])
        assert draft.links == (Link("Sale", "ID", "Seller", False),)

    def test_malformed_link_label_rejected(self):
        for label in ("Sale->Seller", "Sale.ID", "noarrows", ".ID->Seller", "Sale.->Seller"):
            with pytest.raises(ActionError) as err:
                build(LINK_BASE + [("add_link", label, None)])
            assert err.value.code == "BadLinkLabel", label

    def test_link_key_missing_on_source_rejected(self):
        with pytest.raises(ActionError) as err:
            build(LINK_BASE + [("add_link", "Sale.Other->Seller", None)])
        assert err.value.code == "KeyMismatch"

    def test_link_key_missing_on_dimension_rejected(self):
        steps = LINK_BASE + [
            ("create_dimension_table", "Product", None),
            ("add_link", "Sale.ID->Product", None),
        ]
        with pytest.raises(ActionError) as err:
            build(steps)
        assert err.value.code == "KeyMismatch"

    def test_link_to_fact_table_rejected(self):
        steps = LINK_BASE + [
            ("create_fact_table", "Order", None),
            ("add_fact_key", "ID", "Order"),
            ("add_link", "Sale.ID->Order", None),
        ]
        with pytest.raises(ActionError) as err:
            build(steps)
        assert err.value.code == "WrongKindContext"

    def test_duplicate_link_rejected(self):
        steps = LINK_BASE + [
            ("add_link", "Sale.ID->Seller", None),
            ("add_link", "Sale.ID->Seller", None),
        ]
        with pytest.raises(ActionError) as err:
            build(steps)
        assert err.value.code == "DuplicateName"

    def test_dimension_source_is_flagged(self):
        steps = [
            ("select_domain", "A", None),
            ("select_model", "snowflake", None),
            ("create_fact_table", "Sale", None),
            ("add_fact_key", "ID", "Sale"),
            ("create_dimension_table", "Seller", None),
            ("add_dimension_key", "ID", "Seller"),
            ("add_dimension_key", "Region", "Seller"),
            ("create_dimension_table", "Region", None),
            ("add_dimension_key", "Region", "Region"),
            ("add_link", "Sale.ID->Seller", None),
            ("add_link", "Seller.Region->Region", None),
        ]
        draft = build(steps)
        assert draft.links[0].dimension_to_dimension is False
        assert draft.links[1].dimension_to_dimension is True
        assert validate(draft).ok


class TestValidate:
    def test_empty_draft_missing_domain_and_model(self):
        report = validate(EMPTY_DRAFT)
        assert not report.ok
        assert codes(report) == {"MissingDomain", "MissingModel"}

    def test_star_requires_exactly_one_fact(self):
        draft = new_draft("A", ModelKind.STAR)
        assert "StarSingleFact" in codes(validate(draft))
        two = SchemaDraft(
            domain="A",
            model=ModelKind.STAR,
            fact_tables=(FactTable("F1"), FactTable("F2")),
        )
        assert "StarSingleFact" in codes(validate(two))

    def test_star_flags_unlinked_dimension(self):
        draft = build(LINK_BASE)
        report = validate(draft)
        assert codes(report) == {"StarUnlinkedDimension"}
        assert report.violations[0].subject == "Seller"
        assert validate(build(LINK_BASE + [("add_link", "Sale.ID->Seller", None)])).ok

    def test_star_rejects_dimension_to_dimension_link(self):
        draft = SchemaDraft(
            domain="A",
            model=ModelKind.STAR,
            fact_tables=(FactTable("F", ("ID",)),),
            dimension_tables=(
                DimensionTable("D1", ("ID", "X")),
                DimensionTable("D2", ("X",)),
            ),
            links=(Link("F", "ID", "D1"), Link("D1", "X", "D2", True)),
        )
        assert "StarIndirectLink" in codes(validate(draft))

    def test_snowflake_allows_chains_but_not_islands(self):
        chained = SchemaDraft(
            domain="A",
            model=ModelKind.SNOWFLAKE,
            fact_tables=(FactTable("F", ("ID",)),),
            dimension_tables=(
                DimensionTable("D1", ("ID", "X")),
                DimensionTable("D2", ("X",)),
            ),
            links=(Link("F", "ID", "D1"), Link("D1", "X", "D2", True)),
        )
        assert validate(chained).ok
        island = SchemaDraft(
            domain="A",
            model=ModelKind.SNOWFLAKE,
            fact_tables=(FactTable("F", ("ID",)),),
            dimension_tables=(DimensionTable("D1", ("ID",)), DimensionTable("D2", ("X",))),
            links=(Link("F", "ID", "D1"),),
        )
        assert codes(validate(island)) == {"SnowflakeUnreachableDimension"}

    def test_constellation_needs_two_facts_sharing_a_dimension(self):
        good = build(helpers.constellation_session("c"))
        assert validate(good).ok
        lone = SchemaDraft(domain="A", model=ModelKind.CONSTELLATION, fact_tables=(FactTable("F"),))
        assert "ConstellationFactCount" in codes(validate(lone))
        unshared = SchemaDraft(
            domain="A",
            model=ModelKind.CONSTELLATION,
            fact_tables=(FactTable("F1", ("ID",)), FactTable("F2", ("ID",))),
            dimension_tables=(DimensionTable("D1", ("ID",)), DimensionTable("D2", ("ID",))),
            links=(Link("F1", "ID", "D1"), Link("F2", "ID", "D2")),
        )
        assert "ConstellationNoSharedDimension" in codes(validate(unshared))

    def test_hand_built_draft_with_dangling_link_reported(self):
        draft = SchemaDraft(
            domain="A",
            model=ModelKind.STAR,
            fact_tables=(FactTable("F", ("ID",)),),
            links=(Link("F", "ID", "Ghost"),),
        )
        assert "UnknownTable" in codes(validate(draft))

    def test_hand_built_draft_with_key_mismatch_reported(self):
        draft = SchemaDraft(
            domain="A",
            model=ModelKind.STAR,
            fact_tables=(FactTable("F", ("ID",)),),
            dimension_tables=(DimensionTable("D", ("Other",)),),
            links=(Link("F", "ID", "D"),),
        )
        assert "KeyMismatch" in codes(validate(draft))


class TestDocuments:
    def test_round_trip_preserves_draft_and_bytes(self):
        draft = build(helpers.SALE_SESSION)
        doc = draft_to_document(draft)
        again = draft_from_dict(json.loads(doc))
        assert again == draft
        assert draft_to_document(again) == doc

    def test_document_is_canonical(self):
        doc = draft_to_document(build(helpers.SALE_SESSION))
        assert ": " not in doc and ", " not in doc
        keys = list(json.loads(doc))
        assert keys == sorted(keys)


@st.composite
def star_params(draw):
    keys = draw(st.integers(min_value=1, max_value=3))
    return {
        "key_count": keys,
        "fact_attrs": draw(st.integers(min_value=0, max_value=2)),
        "dim_attrs": draw(
            st.lists(st.integers(min_value=0, max_value=2), min_size=keys, max_size=keys)
        ),
    }


class TestStarProperties:
    @given(params=star_params())
    def test_complete_star_sessions_validate_clean(self, params):
        draft = build(helpers.star_session("h", **params))
        assert validate(draft).ok

    @given(params=star_params(), data=st.data())
    def test_dropping_any_link_breaks_the_star(self, params, data):
        steps = helpers.star_session("h", **params)
        link_positions = [i for i, s in enumerate(steps) if s[0] == "add_link"]
        drop = data.draw(st.sampled_from(link_positions))
        draft = build(steps[:drop] + steps[drop + 1 :])
        report = validate(draft)
        assert not report.ok
        assert codes(report) == {"StarUnlinkedDimension"}
