import functools
import json
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from towercert.cubic import class_number
from towercert.elliptic import furuta_n, sl2_perfect
from towercert.errors import DomainError
from towercert.hlsearch import (
    CONDUCTOR_POLY,
    empirical_prime_count,
    hl_constant,
    search_shanks_candidates,
)
from towercert.modforms import certify_eigenform, verify_residue_claim
from towercert.records import (
    RECORD_KINDS,
    SCHEMA_VERSION,
    canonical_json,
    format_float,
    make_record,
    parse_record,
    record_for,
    rejection_record,
    to_json_line,
    tower_certificate_from_payload,
)
from towercert.tower import KnownInfiniteRegistry, certify_cyclotomic

TS_A = "2026-01-01T00:00:00Z"
TS_B = "2027-06-15T12:34:56Z"


@functools.lru_cache(maxsize=1)
def sample_objects():
    """One real result object per record kind, built from the library."""
    registry = KnownInfiniteRegistry()
    tower = certify_cyclotomic(50, registry=registry)
    return {
        "cyclotomic_tower": tower,
        "eigenform": certify_eigenform(12, 877),
        "furuta": furuta_n(5, 30),
        "group_report": sl2_perfect(7),
        "hl_constant": hl_constant(100),
        "prime_count": empirical_prime_count(CONDUCTOR_POLY, 1000, hl_constant(100).constant),
        "residue_claim": verify_residue_claim(16),
        "shanks_candidate": search_shanks_candidates(12)[0],
    }


class TestFormatFloat:
    def test_seventeen_digit_constant(self):
        assert format_float(0.28015118850435017) == "0.28015118850435017"

    def test_integral_values_keep_point(self):
        assert format_float(4.0) == "4.0"
        assert format_float(-4.0) == "-4.0"
        assert format_float(0.0) == "0.0"

    def test_exponent_lowercase(self):
        assert format_float(1e22) == "1e+22"
        assert format_float(5e-324) == "4.9406564584124654e-324"

    def test_tenth(self):
        assert format_float(0.1) == "0.10000000000000001"

    def test_non_finite_rejected(self):
        for bad in (float("inf"), float("-inf"), float("nan")):
            with pytest.raises(DomainError):
                format_float(bad)

    @given(st.floats(allow_nan=False, allow_infinity=False))
    @settings(max_examples=300)
    def test_value_roundtrip(self, x):
        text = format_float(x)
        assert float(text) == x
        assert json.loads(text) == x


class TestCanonicalJson:
    def test_insertion_order_preserved(self):
        assert canonical_json({"b": 1, "a": 2}) == '{"b":1,"a":2}'

    def test_tuples_render_as_arrays(self):
        assert canonical_json((1, 2, 3)) == "[1,2,3]"

    def test_strings_escape_to_ascii(self):
        assert canonical_json({"note": "π"}) == '{"note":"\\u03c0"}'

    def test_booleans_are_not_integers(self):
        assert canonical_json({"flag": True, "count": 1}) == '{"flag":true,"count":1}'
        assert canonical_json(False) == "false"
        assert canonical_json(None) == "null"

    def test_non_string_key_rejected(self):
        with pytest.raises(DomainError):
            canonical_json({1: "x"})

    def test_unsupported_type_rejected(self):
        with pytest.raises(DomainError):
            canonical_json({"bad": {1, 2}})


class TestMakeRecord:
    def test_unknown_kind_rejected(self):
        with pytest.raises(DomainError):
            make_record("mystery", {"a": 1})

    def test_tuples_normalized_to_lists(self):
        record = make_record("rejection", {"reasons": ("composite",)}, timestamp=TS_A)
        assert record.payload["reasons"] == ["composite"]

    def test_non_finite_payload_rejected(self):
        with pytest.raises(DomainError):
            make_record("rejection", {"x": float("nan")})

    def test_non_string_key_rejected(self):
        with pytest.raises(DomainError):
            make_record("rejection", {3: "x"})

    def test_hash_is_sha256_hex(self):
        record = make_record("rejection", {"command": "t", "reasons": []}, timestamp=TS_A)
        assert re.fullmatch(r"[0-9a-f]{64}", record.content_hash)

    def test_default_timestamp_shape(self):
        record = make_record("rejection", {"command": "t", "reasons": []})
        assert re.fullmatch(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z", record.timestamp)

    def test_timestamp_excluded_from_hash(self):
        payload = {"command": "t", "reasons": ["composite"]}
        a = make_record("rejection", payload, timestamp=TS_A)
        b = make_record("rejection", payload, timestamp=TS_B)
        assert a.content_hash == b.content_hash
        assert to_json_line(a) != to_json_line(b)


class TestRoundTrip:
    def test_known_kinds_cover_samples(self):
        assert set(sample_objects()) | {"rejection"} == RECORD_KINDS

    @pytest.mark.parametrize("kind", sorted(RECORD_KINDS - {"rejection"}))
    def test_every_kind_roundtrips(self, kind):
        record = record_for(sample_objects()[kind], timestamp=TS_A)
        assert record.kind == kind
        assert record.schema_version == SCHEMA_VERSION
        line = to_json_line(record)
        assert "\n" not in line
        parsed = parse_record(line)
        assert parsed == record
        assert to_json_line(parsed) == line

    def test_rejection_roundtrips(self):
        record = rejection_record(
            "certify cyclotomic", ("composite", "residue"), {"m": 3, "ell": 27}, timestamp=TS_A
        )
        assert record.payload["command"] == "certify cyclotomic"
        assert record.payload["m"] == 3
        parsed = parse_record(to_json_line(record))
        assert parsed == record

    def test_hash_independent_of_build_time(self):
        obj = sample_objects()["furuta"]
        assert record_for(obj, timestamp=TS_A).content_hash == record_for(obj, timestamp=TS_B).content_hash

    def test_lines_are_deterministic(self):
        obj = sample_objects()["hl_constant"]
        assert to_json_line(record_for(obj, timestamp=TS_A)) == to_json_line(
            record_for(obj, timestamp=TS_A)
        )

    def test_tower_payload_rebuilds_certificate(self):
        cert = sample_objects()["cyclotomic_tower"]
        parsed = parse_record(to_json_line(record_for(cert, timestamp=TS_A)))
        assert tower_certificate_from_payload(parsed.payload) == cert

    def test_line_is_plain_json(self):
        record = record_for(sample_objects()["group_report"], timestamp=TS_A)
        raw = json.loads(to_json_line(record))
        assert raw["kind"] == "group_report"
        assert raw["payload"]["perfect"] is True


class TestParseErrors:
    def test_invalid_json(self):
        with pytest.raises(DomainError, match="not valid JSON"):
            parse_record("{nope")

    def test_non_object(self):
        with pytest.raises(DomainError):
            parse_record("[1,2]")

    def test_missing_field(self):
        record = record_for(sample_objects()["furuta"], timestamp=TS_A)
        raw = json.loads(to_json_line(record))
        del raw["timestamp"]
        with pytest.raises(DomainError, match="timestamp"):
            parse_record(json.dumps(raw))

    def test_tampered_payload_fails_hash(self):
        line = to_json_line(record_for(sample_objects()["furuta"], timestamp=TS_A))
        assert '"ell":5' in line
        with pytest.raises(DomainError, match="hash mismatch"):
            parse_record(line.replace('"ell":5', '"ell":7', 1))

    def test_wrong_schema_version(self):
        line = to_json_line(record_for(sample_objects()["furuta"], timestamp=TS_A))
        with pytest.raises(DomainError, match="schema version"):
            parse_record(line.replace('"schema_version":"1"', '"schema_version":"2"', 1))

    def test_unknown_kind(self):
        line = to_json_line(record_for(sample_objects()["furuta"], timestamp=TS_A))
        with pytest.raises(DomainError, match="kind"):
            parse_record(line.replace('"kind":"furuta"', '"kind":"mystery"', 1))


class TestRecordFor:
    def test_unregistered_type_rejected(self):
        with pytest.raises(DomainError):
            record_for(object())

    def test_cubic_field_is_internal(self):
        field = class_number(2)
        with pytest.raises(DomainError, match="internal"):
            record_for(field)
