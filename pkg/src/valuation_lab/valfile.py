"""Parsing and serialization of valuation files.

A file is a JSON object ``{"valuations": [entry, ...], "aligned_mu": int?}``.
Each entry carries an optional ``name`` and exactly one encoding:

* ``{"proximity": [[...], ...], "tangent_count": int?}``
* ``{"maximal_contact": [int, ...], "trailing_free": int?}``
* ``{"tono": {"a": int, "e": int}}``
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .bounds import tono_family
from .configurations import Configuration, build_configuration
from .errors import FileFormatError, ValuationError
from .invariants import from_maximal_contact

_ENCODINGS = ("proximity", "maximal_contact", "tono")


@dataclass(frozen=True)
class ValuationEntry:
    name: str | None
    kind: str
    payload: dict[str, Any]
    configuration: Configuration


@dataclass(frozen=True)
class ValuationFile:
    entries: tuple[ValuationEntry, ...]
    aligned_mu: int | None


def _require_int(value: Any, where: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FileFormatError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise FileFormatError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _parse_entry(raw: Any, where: str) -> ValuationEntry:
    if not isinstance(raw, dict):
        raise FileFormatError(f"{where}: expected an object")
    unknown = set(raw) - {"name", "tangent_count", "trailing_free", *_ENCODINGS}
    if unknown:
        raise FileFormatError(f"{where}: unknown keys {sorted(unknown)}")

    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise FileFormatError(f"{where}.name: expected a string")

    present = [k for k in _ENCODINGS if k in raw]
    if len(present) != 1:
        raise FileFormatError(
            f"{where}: exactly one of {_ENCODINGS} is required, found {present}"
        )
    kind = present[0]
    extras = {"proximity": {"tangent_count"}, "maximal_contact": {"trailing_free"}}
    allowed = {"name", kind} | extras.get(kind, set())
    misplaced = set(raw) - allowed
    if misplaced:
        raise FileFormatError(
            f"{where}: keys {sorted(misplaced)} do not apply to a {kind} entry"
        )

    try:
        if kind == "proximity":
            lists = raw["proximity"]
            if not isinstance(lists, list) or not all(
                isinstance(entry, list) for entry in lists
            ):
                raise FileFormatError(
                    f"{where}.proximity: expected a list of lists of integers"
                )
            for i, entry in enumerate(lists):
                for t in entry:
                    _require_int(t, f"{where}.proximity[{i}]", minimum=1)
            tangent = raw.get("tangent_count")
            if tangent is not None:
                tangent = _require_int(tangent, f"{where}.tangent_count", minimum=1)
            cfg = build_configuration(lists, tangent_count=tangent, name=name)
            payload: dict[str, Any] = {"proximity": lists}
            if tangent is not None:
                payload["tangent_count"] = tangent
        elif kind == "maximal_contact":
            seq = raw["maximal_contact"]
            if not isinstance(seq, list):
                raise FileFormatError(
                    f"{where}.maximal_contact: expected a list of integers"
                )
            seq = [
                _require_int(x, f"{where}.maximal_contact[{i}]", minimum=1)
                for i, x in enumerate(seq)
            ]
            trailing = raw.get("trailing_free", 0)
            trailing = _require_int(trailing, f"{where}.trailing_free", minimum=0)
            cfg = from_maximal_contact(seq, trailing_free=trailing, name=name)
            payload = {"maximal_contact": seq}
            if trailing:
                payload["trailing_free"] = trailing
        else:
            params = raw["tono"]
            if not isinstance(params, dict) or set(params) != {"a", "e"}:
                raise FileFormatError(
                    f'{where}.tono: expected an object with keys "a" and "e"'
                )
            a = _require_int(params["a"], f"{where}.tono.a", minimum=3)
            e = _require_int(params["e"], f"{where}.tono.e", minimum=0)
            family = tono_family(a, e)
            cfg = family.bundle.cfg
            if name is not None:
                cfg = Configuration(points=cfg.points, name=name)
            payload = {"tono": {"a": a, "e": e}}
    except FileFormatError:
        raise
    except ValuationError as exc:
        raise FileFormatError(f"{where}: {exc}") from exc

    return ValuationEntry(name=name, kind=kind, payload=payload, configuration=cfg)


def parse(text: str) -> ValuationFile:
    """Parse and fully validate a valuation file."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise FileFormatError("top level: expected an object")
    unknown = set(data) - {"valuations", "aligned_mu"}
    if unknown:
        raise FileFormatError(f"top level: unknown keys {sorted(unknown)}")
    raw_entries = data.get("valuations")
    if not isinstance(raw_entries, list) or not raw_entries:
        raise FileFormatError('top level: "valuations" must be a non-empty list')
    entries = tuple(
        _parse_entry(raw, f"valuations[{i}]") for i, raw in enumerate(raw_entries)
    )
    aligned_mu = data.get("aligned_mu")
    if aligned_mu is not None:
        aligned_mu = _require_int(aligned_mu, "aligned_mu", minimum=1)
    return ValuationFile(entries=entries, aligned_mu=aligned_mu)


def parse_path(path: str | Path) -> ValuationFile:
    return parse(Path(path).read_text(encoding="utf-8"))


def serialize(vf: ValuationFile) -> str:
    """Canonical JSON for a valuation file; ``parse`` inverts it exactly."""
    entries = []
    for entry in vf.entries:
        obj: dict[str, Any] = {}
        if entry.name is not None:
            obj["name"] = entry.name
        obj.update(entry.payload)
        entries.append(obj)
    data: dict[str, Any] = {"valuations": entries}
    if vf.aligned_mu is not None:
        data["aligned_mu"] = vf.aligned_mu
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


__all__ = ["ValuationEntry", "ValuationFile", "parse", "parse_path", "serialize"]
