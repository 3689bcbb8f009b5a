"""Document parsing, canonical serialization, and round trips."""
import pathlib

import pytest

from permcat.documents import (
    DocumentError,
    dumps,
    loads,
    parse_document,
    serialize,
)
from permcat.fixtures import sign_permcat
from permcat.multicat import validate_multicat
from permcat.permcats import validate_permcat
from permcat.rings import validate_en_monoidal
from permcat.shipped import SHIPPED, render

DOCS = pathlib.Path(__file__).resolve().parent.parent / "documents"


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(SHIPPED))
    def test_parse_serialize_is_identity(self, name):
        text = (DOCS / name).read_text(encoding="utf-8")
        kind, structure = parse_document(text)
        assert kind == SHIPPED[name][0]
        assert serialize(kind, structure) == text

    @pytest.mark.parametrize("name", sorted(SHIPPED))
    def test_shipped_bytes_match_fixtures(self, name):
        assert (DOCS / name).read_text(encoding="utf-8") == render(name)


class TestParsedStructuresValidate:
    def test_mterm_parses_and_validates(self):
        kind, M = parse_document((DOCS / "mterm3.json").read_text())
        assert validate_multicat(M).passed

    def test_sign_permcat_parses_and_validates(self):
        kind, C = parse_document((DOCS / "sign.json").read_text())
        assert validate_permcat(C).passed
        assert C.objects == sign_permcat().objects

    def test_en_fixture_parses_and_validates(self):
        kind, E = parse_document((DOCS / "sign-e2.json").read_text())
        report = validate_en_monoidal(E)
        assert report.passed, report.summary()

    def test_mutant_parses_but_fails_validation(self):
        kind, E = parse_document((DOCS / "mutant-en-zero-exchange.json").read_text())
        report = validate_en_monoidal(E)
        assert "zero-exchange" in report.violated_axioms()


class TestErrors:
    def test_syntax_error_reports_position(self):
        with pytest.raises(DocumentError, match="line"):
            loads("{\n  broken\n}")

    def test_unknown_kind(self):
        with pytest.raises(DocumentError, match="unknown kind"):
            loads('{"kind": "octopus"}')

    def test_unresolved_reference(self):
        text = (DOCS / "mutant-unresolved.json").read_text()
        with pytest.raises(DocumentError, match="unknown operation 'ghost'"):
            parse_document(text)

    def test_non_total_sigma_rejected(self):
        text = (DOCS / "swap-operad.json").read_text()
        import json
        payload = json.loads(text)
        payload["sigma"] = payload["sigma"][:-1]
        with pytest.raises(DocumentError, match="sigma table not total"):
            parse_document(dumps(payload))

    def test_non_total_gamma_rejected(self):
        text = (DOCS / "mterm3.json").read_text()
        import json
        payload = json.loads(text)
        payload["gamma"] = payload["gamma"][:-1]
        with pytest.raises(DocumentError, match="gamma table not total"):
            parse_document(dumps(payload))

    def test_non_total_composition_rejected(self):
        text = (DOCS / "sign.json").read_text()
        import json
        payload = json.loads(text)
        payload["composition"] = payload["composition"][:-1]
        with pytest.raises(DocumentError, match="composition table not total"):
            parse_document(dumps(payload))


class TestDeterminism:
    def test_render_is_stable_across_calls(self):
        for name in ("mterm3.json", "sign-e2.json", "identity-multinat.json"):
            assert render(name) == render(name)

    def test_parse_then_serialize_twice_identical(self):
        text = (DOCS / "sign-ring.json").read_text()
        kind, structure = parse_document(text)
        once = serialize(kind, structure)
        kind2, again = parse_document(once)
        assert serialize(kind2, again) == once
