"""Line-delimited certificate records with byte-stable serialization.

Every CLI emission is one JSON object per line.  The serialization is
canonical: keys keep their builder-defined insertion order, floats print
with 17 significant digits (lowercase exponent, trailing ".0" when the
mantissa would otherwise look integral), strings escape to ASCII.  The
content hash is sha256 over the canonical bytes of (schema_version, kind,
payload); the timestamp is excluded so reruns are byte-identical modulo
that one field.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .cubic import SimplestCubicField
from .elliptic import FurutaWitness, GroupReport
from .errors import DomainError
from .hlsearch import HLConstantResult, PrimeCountReport, ShanksCandidate
from .modforms import EigenformCertificate, ResidueClaimReport
from .tower import CyclotomicTowerCertificate, TowerProvenance

__all__ = [
    "SCHEMA_VERSION",
    "RECORD_KINDS",
    "CertificateRecord",
    "format_float",
    "canonical_json",
    "make_record",
    "record_for",
    "rejection_record",
    "to_json_line",
    "parse_record",
    "tower_certificate_from_payload",
]

SCHEMA_VERSION = "1"

RECORD_KINDS = frozenset(
    {
        "cyclotomic_tower",
        "eigenform",
        "furuta",
        "group_report",
        "hl_constant",
        "residue_claim",
        # artifact additions beyond the core six:
        "shanks_candidate",
        "prime_count",
        "rejection",
    }
)


def format_float(x: float) -> str:
    """17 significant digits, lowercase exponent, always visibly a real."""
    if not math.isfinite(x):
        raise DomainError(f"non-finite float {x!r} cannot be serialized")
    text = format(x, ".17g").lower()
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def _canonical(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return repr(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canonical(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for key, value in obj.items():
            if not isinstance(key, str):
                raise DomainError(f"record keys must be strings, got {key!r}")
            parts.append(json.dumps(key, ensure_ascii=True) + ":" + _canonical(value))
        return "{" + ",".join(parts) + "}"
    raise DomainError(f"unsupported record value of type {type(obj).__name__}")


def canonical_json(obj) -> str:
    return _canonical(obj)


def _normalize(obj):
    """JSON-shape the payload: tuples become lists, scalars are validated."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise DomainError(f"non-finite float {obj!r} cannot be serialized")
        return obj
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, dict):
        out = {}
        for key, value in obj.items():
            if not isinstance(key, str):
                raise DomainError(f"record keys must be strings, got {key!r}")
            out[key] = _normalize(value)
        return out
    raise DomainError(f"unsupported record value of type {type(obj).__name__}")


@dataclass(frozen=True)
class CertificateRecord:
    schema_version: str
    kind: str
    payload: dict = field(hash=False)
    content_hash: str
    timestamp: str

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise DomainError(f"unsupported schema version {self.schema_version!r}")
        if self.kind not in RECORD_KINDS:
            raise DomainError(f"unknown record kind {self.kind!r}")


def _hash_body(kind: str, payload: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}
    return hashlib.sha256(_canonical(body).encode("ascii")).hexdigest()


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def make_record(kind: str, payload: dict, timestamp: str | None = None) -> CertificateRecord:
    normalized = _normalize(payload)
    return CertificateRecord(
        schema_version=SCHEMA_VERSION,
        kind=kind,
        payload=normalized,
        content_hash=_hash_body(kind, normalized),
        timestamp=timestamp if timestamp is not None else _now(),
    )


def _tower_payload(cert: CyclotomicTowerCertificate) -> dict:
    p = cert.provenance
    return {
        "ell": cert.ell,
        "m": cert.m,
        "h": cert.h,
        "rho": cert.rho,
        "rhs": cert.rhs,
        "certified": cert.certified,
        "assumptions": list(cert.assumptions),
        "provenance": {
            "m_mod_12": p.m_mod_12,
            "ell_mod_12": p.ell_mod_12,
            "primality_method": p.primality_method,
            "primality_witnesses": list(p.primality_witnesses),
            "class_number_float": p.class_number_float,
            "integrality_gap": p.integrality_gap,
            "ramified_infinite_places": p.ramified_infinite_places,
            "ramified_finite_primes": p.ramified_finite_primes,
        },
    }


def _eigenform_payload(cert: EigenformCertificate) -> dict:
    return {
        "k": cert.k,
        "ell": cert.ell,
        "not_exceptional": cert.not_exceptional,
        "det_index": cert.det_index,
        "galois_group_full": cert.galois_group_full,
        "tower_evidence": cert.tower_evidence,
        "certified": cert.certified,
        "rejection_reasons": list(cert.rejection_reasons),
    }


def _furuta_payload(witness: FurutaWitness) -> dict:
    return {
        "ell": witness.ell,
        "m_e": witness.m_e,
        "primes": list(witness.primes),
        "n": witness.n,
    }


def _group_payload(report: GroupReport) -> dict:
    return {
        "n": report.n,
        "group_order": report.group_order,
        "abelianization_order": report.abelianization_order,
        "perfect": report.perfect,
    }


def _hl_constant_payload(result: HLConstantResult) -> dict:
    return {
        "prime_bound": result.prime_bound,
        "partial_product": result.partial_product,
        "constant": result.constant,
        "terms_used": result.terms_used,
    }


def _prime_count_payload(report: PrimeCountReport) -> dict:
    return {
        "x": report.x,
        "count": report.count,
        "estimate": report.estimate,
        "ratio": report.ratio,
    }


def _residue_claim_payload(report: ResidueClaimReport) -> dict:
    return {
        "k": report.k,
        "prime_divisors": list(report.prime_divisors),
        "verdicts": [
            {
                "q": v.q,
                "witnesses": list(v.witnesses),
                "zero_classes": list(v.zero_classes),
                "never_one": v.never_one,
                "forced": v.forced,
            }
            for v in report.verdicts
        ],
        "claim_holds": report.claim_holds,
    }


def _shanks_payload(candidate: ShanksCandidate) -> dict:
    return {
        "m": candidate.m,
        "ell": candidate.ell,
        "residue": candidate.residue,
        "is_prime_ell": candidate.is_prime_ell,
    }


_BUILDERS = (
    (CyclotomicTowerCertificate, "cyclotomic_tower", _tower_payload),
    (EigenformCertificate, "eigenform", _eigenform_payload),
    (FurutaWitness, "furuta", _furuta_payload),
    (GroupReport, "group_report", _group_payload),
    (HLConstantResult, "hl_constant", _hl_constant_payload),
    (PrimeCountReport, "prime_count", _prime_count_payload),
    (ResidueClaimReport, "residue_claim", _residue_claim_payload),
    (ShanksCandidate, "shanks_candidate", _shanks_payload),
)


def record_for(obj, timestamp: str | None = None) -> CertificateRecord:
    """Wrap a module result object in its CertificateRecord."""
    for cls, kind, builder in _BUILDERS:
        if isinstance(obj, cls):
            return make_record(kind, builder(obj), timestamp)
    if isinstance(obj, SimplestCubicField):
        raise DomainError("SimplestCubicField is internal; emit the tower certificate")
    raise DomainError(f"no record kind for {type(obj).__name__}")


def rejection_record(
    command: str, reasons, context: dict | None = None, timestamp: str | None = None
) -> CertificateRecord:
    payload = {"command": command, "reasons": list(reasons)}
    if context:
        payload.update(context)
    return make_record("rejection", payload, timestamp)


def to_json_line(record: CertificateRecord) -> str:
    body = {
        "schema_version": record.schema_version,
        "kind": record.kind,
        "payload": record.payload,
        "content_hash": record.content_hash,
        "timestamp": record.timestamp,
    }
    return _canonical(body)


def parse_record(line: str) -> CertificateRecord:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DomainError(f"record line is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DomainError("record line must be a JSON object")
    missing = {"schema_version", "kind", "payload", "content_hash", "timestamp"} - set(raw)
    if missing:
        raise DomainError(f"record line missing fields {sorted(missing)}")
    record = CertificateRecord(
        schema_version=raw["schema_version"],
        kind=raw["kind"],
        payload=_normalize(raw["payload"]),
        content_hash=raw["content_hash"],
        timestamp=raw["timestamp"],
    )
    expected = _hash_body(record.kind, record.payload)
    if record.content_hash != expected:
        raise DomainError(
            f"content hash mismatch: stored {record.content_hash}, recomputed {expected}"
        )
    return record


def tower_certificate_from_payload(payload: dict) -> CyclotomicTowerCertificate:
    """Rebuild a tower certificate from a parsed record payload."""
    p = payload["provenance"]
    return CyclotomicTowerCertificate(
        ell=payload["ell"],
        m=payload["m"],
        h=payload["h"],
        rho=payload["rho"],
        rhs=payload["rhs"],
        certified=payload["certified"],
        assumptions=tuple(payload["assumptions"]),
        provenance=TowerProvenance(
            m_mod_12=p["m_mod_12"],
            ell_mod_12=p["ell_mod_12"],
            primality_method=p["primality_method"],
            primality_witnesses=tuple(p["primality_witnesses"]),
            class_number_float=p["class_number_float"],
            integrality_gap=p["integrality_gap"],
            ramified_infinite_places=p["ramified_infinite_places"],
            ramified_finite_primes=p["ramified_finite_primes"],
        ),
    )
