"""JSON forms for certificates and Bohr specs.

Every real number is written as a decimal string with 17 significant digits,
which round-trips IEEE doubles exactly and keeps the files byte-stable across
platforms.  Field order is fixed by construction (insertion order).
"""

from __future__ import annotations

import json

from .bohr import BohrSpec
from .errors import DomainError
from .extractor import BoundCheck, Certificate
from .groups import Char, Elem, GroupSpec, parse_group

CERT_SCHEMA = "bohrlab-cert/1"


def fmt_real(x: float) -> str:
    return format(float(x), ".17g")


def parse_real(value) -> float:
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError as exc:
            raise DomainError(f"not a real number: {value!r}") from exc
    raise DomainError(f"not a real number: {value!r}")


def _coords_list(value, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise DomainError(f"{what} must be a list of integers, got {value!r}")
    return tuple(value)


def bohr_spec_to_dict(b: BohrSpec) -> dict:
    return {
        "form": b.form,
        "freqs": [list(t.freq) for t in b.freqs],
        "radius": fmt_real(b.radius),
        "center": list(b.center.coords) if b.center is not None else None,
    }


def bohr_spec_from_dict(d: dict, g: GroupSpec) -> BohrSpec:
    try:
        form = d["form"]
        freqs = d["freqs"]
        radius = d["radius"]
        center = d.get("center")
    except (KeyError, TypeError, AttributeError) as exc:
        raise DomainError(f"malformed Bohr spec object: {d!r}") from exc
    if not isinstance(freqs, list):
        raise DomainError(f"freqs must be a list, got {freqs!r}")
    chars = tuple(Char(_coords_list(t, "frequency")) for t in freqs)
    elem = Elem(_coords_list(center, "center")) if center is not None else None
    return BohrSpec(g, chars, parse_real(radius), form, center=elem)


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "schema": CERT_SCHEMA,
        "group": str(cert.group),
        "delta": fmt_real(cert.delta),
        "a0": list(cert.a0.coords),
        "s1": [list(t.freq) for t in cert.s1],
        "c": fmt_real(cert.c),
        "k": cert.k,
        "h_at_a0": fmt_real(cert.h_at_a0),
        "bohr_char_form": bohr_spec_to_dict(cert.bohr_char_form),
        "bohr_torus_form": bohr_spec_to_dict(cert.bohr_torus_form),
        "bounds": {
            name: {
                "value": fmt_real(check.value),
                "limit": fmt_real(check.limit),
                "ok": check.ok,
            }
            for name, check in cert.bounds.items()
        },
    }


def certificate_from_dict(d: dict) -> Certificate:
    if not isinstance(d, dict):
        raise DomainError("certificate must be a JSON object")
    schema = d.get("schema")
    if schema != CERT_SCHEMA:
        raise DomainError(f"unsupported certificate schema {schema!r}")
    try:
        g = parse_group(d["group"])
        a0 = Elem(_coords_list(d["a0"], "a0"))
        s1 = tuple(Char(_coords_list(t, "S1 entry")) for t in d["s1"])
        bounds_raw = d["bounds"]
        cert = Certificate(
            group=g,
            delta=parse_real(d["delta"]),
            a0=a0,
            s1=s1,
            c=parse_real(d["c"]),
            k=int(d["k"]),
            h_at_a0=parse_real(d["h_at_a0"]),
            bohr_char_form=bohr_spec_from_dict(d["bohr_char_form"], g),
            bohr_torus_form=bohr_spec_from_dict(d["bohr_torus_form"], g),
            bounds={
                name: BoundCheck(
                    value=parse_real(entry["value"]),
                    limit=parse_real(entry["limit"]),
                    ok=bool(entry["ok"]),
                )
                for name, entry in bounds_raw.items()
            },
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed certificate: {exc}") from exc
    return cert


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def certificate_from_json(text: str) -> Certificate:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid certificate JSON: {exc}") from exc
    return certificate_from_dict(payload)


def report_to_json(report) -> str:
    """Serialize any report object exposing to_dict() with stable field order."""
    return json.dumps(report.to_dict(), indent=2) + "\n"
