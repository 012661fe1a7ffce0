"""Append-only JSONL catalog of verified certificates.

Each line is one record; the record id is the SHA-256 of the certificate's
canonical JSON, so tampering with any stored byte of the certificate is
caught on verification.
"""
from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
from pathlib import Path
from typing import Iterator, Optional

import jsonschema

from . import __version__

SCHEMA_VERSION = 1

RECORD_SCHEMA = {
    "type": "object",
    "required": ["id", "kind", "goal", "host", "timestamp", "engine_version", "budget",
                 "certificate", "schema_version"],
    "properties": {
        "id": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "kind": {"enum": ["sender", "minimal", "cyclic-minimal"]},
        "goal": {
            "type": "object",
            "required": ["g", "h", "mode"],
            "properties": {"g": {"type": "string"}, "h": {"type": "string"},
                           "mode": {"enum": ["plain", "strong"]}},
        },
        "host": {"type": "string"},
        "timestamp": {"type": ["string", "null"]},
        "engine_version": {"type": "string"},
        "budget": {"type": ["integer", "null"]},
        "schema_version": {"const": SCHEMA_VERSION},
        "certificate": {"type": "object", "required": ["kind"]},
    },
}


class CatalogError(Exception):
    pass


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def certificate_id(certificate: dict) -> str:
    return hashlib.sha256(canonical_json(certificate).encode()).hexdigest()


def _summary(certificate: dict) -> tuple[dict, str]:
    kind = certificate.get("kind")
    if kind == "sender":
        claim = certificate["claim"]
        return claim["goal"], claim["host"]
    if kind == "minimal":
        return certificate["goal"], certificate["host"]
    if kind == "cyclic-minimal":
        return certificate["source"]["claim"]["goal"], certificate["result"]
    raise CatalogError(f"cannot catalog certificate of kind {kind!r}")


def make_record(certificate: dict, budget: Optional[int] = None,
                deterministic: bool = False) -> dict:
    goal, host = _summary(certificate)
    stamp = None if deterministic else _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    record = {
        "id": certificate_id(certificate),
        "kind": certificate["kind"],
        "goal": goal,
        "host": host,
        "timestamp": stamp,
        "engine_version": __version__,
        "budget": budget,
        "schema_version": SCHEMA_VERSION,
        "certificate": certificate,
    }
    jsonschema.validate(record, RECORD_SCHEMA)
    return record


class Catalog:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)

    def records(self) -> Iterator[dict]:
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    yield json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CatalogError(f"{self.path}:{lineno}: corrupt record ({exc})") from None

    def find(self, record_id: str) -> dict:
        """Record whose id equals or starts with ``record_id``."""
        matches = [r for r in self.records() if str(r.get("id", "")).startswith(record_id)]
        if not matches:
            raise CatalogError(f"no record with id {record_id!r}")
        if len({r["id"] for r in matches}) > 1:
            raise CatalogError(f"id prefix {record_id!r} is ambiguous")
        return matches[0]

    def append(self, record: dict) -> str:
        """Write ``record`` unless a record with its id already exists; returns the id."""
        jsonschema.validate(record, RECORD_SCHEMA)
        if record["id"] != certificate_id(record["certificate"]):
            raise CatalogError("record id does not match its certificate")
        if any(r.get("id") == record["id"] for r in self.records()):
            return record["id"]
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = canonical_json(record) + "\n"
        with self.path.open("a") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())
        return record["id"]

    def add(self, certificate: dict, budget: Optional[int] = None,
            deterministic: bool = False) -> str:
        return self.append(make_record(certificate, budget, deterministic))

    def verify(self, record_id: str, max_nodes: Optional[int] = None) -> list[str]:
        """Problems with a stored record (empty = verified from stored data alone)."""
        record = self.find(record_id)
        return verify_record(record, max_nodes)


def verify_record(record: dict, max_nodes: Optional[int] = None) -> list[str]:
    from .pipeline import (
        MinimalityCertificate, verify_cyclic_result, verify_minimality_certificate,
    )
    from .sender import SenderCertificate, verify_sender_certificate

    try:
        jsonschema.validate(record, RECORD_SCHEMA)
    except jsonschema.ValidationError as exc:
        return [f"schema violation: {exc.message}"]
    cert = record["certificate"]
    if certificate_id(cert) != record["id"]:
        return ["hash mismatch: certificate bytes do not match the record id"]
    try:
        kind = cert["kind"]
        if kind == "sender":
            return verify_sender_certificate(SenderCertificate.from_json(cert), max_nodes)
        if kind == "minimal":
            return verify_minimality_certificate(MinimalityCertificate.from_json(cert), max_nodes)
        if kind == "cyclic-minimal":
            return verify_cyclic_result(cert, max_nodes)
    except (KeyError, ValueError, TypeError) as exc:
        return [f"malformed certificate: {exc}"]
    return [f"unknown certificate kind {cert.get('kind')!r}"]
